//! Wardrop equilibria, social optima and the non-atomic price of anarchy.

mod equilibrium;
mod optimum;
mod poa;
mod verify;

pub use equilibrium::{solve_ne_nonatomic, NeConfig};
pub(crate) use optimum::for_each_profile;
pub use optimum::{project_onto_simplex, solve_so, OptimumReport, SoConfig};
pub use poa::{poa_nonatomic, NonatomicPoa, PoaConfig};
pub use verify::{verify_wardrop, FlowSummary, WardropReport};
