//! Price-of-anarchy outcome shared by the non-atomic and atomic solvers.

use serde::{Serialize, Serializer};

/// Outcome of a price-of-anarchy measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Poa {
    Finite(f64),
    /// The optimum costs (numerically) zero while some equilibrium does not.
    Unbounded,
    /// No equilibrium was found (non-atomic) or none exists (atomic).
    NoEquilibrium,
}

impl Poa {
    /// Ratio of equilibrium to optimum cost, with `0/0 := 1`.
    pub fn from_costs(ne_cost: f64, so_cost: f64, zero: f64) -> Self {
        if so_cost <= zero {
            if ne_cost <= zero {
                Poa::Finite(1.0)
            } else {
                Poa::Unbounded
            }
        } else {
            Poa::Finite(ne_cost / so_cost)
        }
    }

    /// Numeric value; `+inf` when unbounded, `None` without an equilibrium.
    pub fn value(&self) -> Option<f64> {
        match *self {
            Poa::Finite(x) => Some(x),
            Poa::Unbounded => Some(f64::INFINITY),
            Poa::NoEquilibrium => None,
        }
    }
}

impl Serialize for Poa {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match *self {
            Poa::Finite(x) => serializer.serialize_f64(x),
            Poa::Unbounded => serializer.serialize_str("inf"),
            Poa::NoEquilibrium => serializer.serialize_none(),
        }
    }
}
