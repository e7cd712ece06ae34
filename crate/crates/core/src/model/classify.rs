use serde::{Deserialize, Serialize};

use super::network::{Instance, Network};
use super::polynomial::PolynomialDelay;

/// Most specific delay class an instance belongs to.
///
/// Every instance is heterogeneous; decomposable instances give all
/// commodities on an edge the same delay; uniform instances additionally
/// share the variable part across edges; aggregate instances are
/// decomposable with delays that depend on the total edge flow only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DelayClass {
    Heterogeneous,
    Decomposable,
    Uniform,
    Aggregate,
}

/// Parameters consumed by the analytic bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelayClassStats {
    /// Largest over smallest strictly positive monomial coefficient.
    pub a_max: f64,
    /// Largest monomial coefficient.
    pub max_coeff: f64,
    /// Smallest strictly positive monomial coefficient.
    pub min_coeff: f64,
    /// Maximum total degree, at least 1.
    pub theta: u32,
    /// Maximum number of monomials in any single delay, at least 1.
    pub n_phi: usize,
    pub k: usize,
    /// Some positive coefficient is below 1; several bounds are stated for
    /// coefficients of at least 1 and rely on rescaling.
    pub coeff_below_one: bool,
}

impl DelayClassStats {
    /// Stats given directly, e.g. to evaluate a bound formula.
    pub fn new(a_max: f64, theta: u32, n_phi: usize, k: usize) -> Self {
        Self {
            a_max,
            max_coeff: a_max,
            min_coeff: 1.0,
            theta,
            n_phi,
            k,
            coeff_below_one: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub class: DelayClass,
    pub decomposable: bool,
    pub uniform: bool,
    pub aggregate: bool,
    /// All delays are theta-complete polynomials of one common degree.
    pub theta_complete: bool,
    /// No term has degree above one.
    pub affine: bool,
    pub stats: DelayClassStats,
}

impl Classification {
    /// Always true; kept for symmetry with the other class predicates.
    pub fn is_heterogeneous(&self) -> bool {
        true
    }

    pub(crate) fn of(network: &Network, k: usize) -> Self {
        let edges = network.edges();
        let decomposable = edges.iter().all(|e| e.delay().is_decomposable());
        let uniform = decomposable
            && edges
                .windows(2)
                .all(|w| w[0].delay().delay(0).terms() == w[1].delay().delay(0).terms());
        let aggregate = decomposable
            && edges
                .iter()
                .all(|e| e.delay().delay(0).is_function_of_total());
        let class = if aggregate {
            DelayClass::Aggregate
        } else if uniform {
            DelayClass::Uniform
        } else if decomposable {
            DelayClass::Decomposable
        } else {
            DelayClass::Heterogeneous
        };

        let polys = || edges.iter().flat_map(|e| e.delay().per_commodity());
        let theta_complete = {
            let mut thetas = polys().map(PolynomialDelay::theta_complete);
            match thetas.next() {
                Some(Some(first)) => thetas.all(|t| t == Some(first)),
                _ => false,
            }
        };
        let max_degree = polys().map(PolynomialDelay::degree).max().unwrap_or(0);

        let coeffs = || polys().flat_map(|p| p.terms().iter().map(|t| t.coeff()));
        let max_coeff = coeffs().fold(0.0_f64, f64::max);
        let min_coeff = coeffs().filter(|&c| c > 0.0).fold(f64::INFINITY, f64::min);
        let (a_max, min_coeff) = if min_coeff.is_finite() {
            (max_coeff / min_coeff, min_coeff)
        } else {
            (1.0, 0.0)
        };
        let n_phi = polys().map(|p| p.terms().len()).max().unwrap_or(0).max(1);

        Self {
            class,
            decomposable,
            uniform,
            aggregate,
            theta_complete,
            affine: max_degree <= 1,
            stats: DelayClassStats {
                a_max,
                max_coeff,
                min_coeff,
                theta: max_degree.max(1),
                n_phi,
                k,
                coeff_below_one: min_coeff > 0.0 && min_coeff < 1.0,
            },
        }
    }
}

/// Delay class, theta-completeness and bound parameters of an instance.
pub fn classify_delay(instance: &Instance) -> Classification {
    instance.classification().clone()
}
