//! Instances, delays, paths, flows and delay classes.

mod classify;
mod flow;
pub mod json;
mod network;
mod paths;
mod polynomial;

pub use classify::{classify_delay, Classification, DelayClass, DelayClassStats};
pub(crate) use flow::edge_cost;
pub use flow::{social_cost, FlowAssignment};
pub use network::{Commodity, Edge, Instance, InstanceBuilder, Network};
pub use paths::{enumerate_paths, Path, Routing};
pub use polynomial::{eval_delay, EdgeDelaySpec, Monomial, PolynomialDelay};
