//! Unsplittable games: every commodity routes its whole demand on one path.
//!
//! Games are accessed through [`AtomicGame`], implemented by [`Routing`]
//! (the network game) and by [`MatrixGame`] (explicit delay tables).

mod dynamics;
mod game;
mod potential;
mod search;

pub use dynamics::{best_response_dynamics, DynamicsStep, DynamicsTrace, Order, Outcome};
pub use game::{AtomicGame, MatrixGame, Profile, ProfileView};
pub use potential::potential_uniform_affine;
pub use search::{best_response, find_pne, find_pne_with_cap, is_pne, poa_atomic, AtomicPoa};

#[cfg(doc)]
use crate::Routing;
