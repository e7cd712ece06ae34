//! Multi-commodity selfish routing with heterogeneous polynomial delays.
//!
//! Every commodity on an edge may face its own polynomial delay in the full
//! per-commodity flow vector. The crate provides:
//!
//! * [`model`]: instances, delay polynomials, path enumeration, flows and
//!   social cost, plus delay-class detection;
//! * [`nonatomic`]: Wardrop equilibria, social optima and the non-atomic
//!   price of anarchy;
//! * [`atomic`]: unsplittable games, pure Nash search, best-response
//!   dynamics and the uniform-affine potential;
//! * [`bounds`]: analytic price-of-anarchy bounds, numeric Pigou/Gamma
//!   estimates, the root recursion, the mediant check and the lower-bound
//!   instance generators.

// `!(x > 0.0)` is how parameter checks reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atomic;
pub mod bounds;
pub mod error;
pub mod model;
pub mod nonatomic;
mod poa;
pub mod tolerance;

pub use error::{Error, Result};
pub use model::{
    classify_delay, enumerate_paths, eval_delay, social_cost, Classification, Commodity,
    DelayClass, DelayClassStats, EdgeDelaySpec, FlowAssignment, Instance, Monomial, Network, Path,
    PolynomialDelay, Routing,
};
pub use poa::Poa;
