//! The positive root of `F(x) = x^(theta+1) - t x^theta - 1` by fixed-point
//! iteration.

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 1_000_000;

/// `F(x) = x^(theta+1) - t x^theta - 1`.
pub fn root_polynomial(x: f64, t: f64, theta: u32) -> f64 {
    x.powi(theta as i32 + 1) - t * x.powi(theta as i32) - 1.0
}

/// The iterates `x_1 = t`, `x_(n+1) = t ((x_n / t)^theta + t^-(theta+1))^(1/(theta+1))`.
///
/// For `t >= 1` the sequence increases strictly towards the root of `F`
/// and stays within `[t, 2t]`.
pub fn poa_root_iterates(t: f64, theta: u32) -> impl Iterator<Item = f64> {
    let p = theta as f64 + 1.0;
    std::iter::successors(Some(t), move |&x| {
        Some(t * ((x / t).powi(theta as i32) + t.powf(-p)).powf(1.0 / p))
    })
}

/// Root of `F` for `t >= 1`, `theta >= 1`.
///
/// Stops once consecutive iterates differ by less than `tol` and
/// `|F(x)| <= 10 tol`.
pub fn poa_root(t: f64, theta: u32, tol: f64) -> Result<f64> {
    if !(t >= 1.0) || !t.is_finite() {
        return Err(Error::BadParameter(format!(
            "t must be at least 1, got {t}"
        )));
    }
    if theta < 1 {
        return Err(Error::BadParameter("theta must be at least 1".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::BadParameter(format!(
            "tol must be positive, got {tol}"
        )));
    }
    let mut previous = t;
    for x in poa_root_iterates(t, theta).skip(1).take(MAX_ITERATIONS) {
        if (x - previous).abs() < tol && root_polynomial(x, t, theta).abs() <= 10.0 * tol {
            return Ok(x);
        }
        previous = x;
    }
    Err(Error::NonConvergence(MAX_ITERATIONS))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_for_the_linear_case() {
        let x = poa_root(1.0, 1, 1e-12).unwrap();
        assert!((x - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-10);
    }

    #[test]
    fn cubic_case() {
        let x = poa_root(3.0, 2, 1e-12).unwrap();
        assert!((x - 3.1038).abs() < 1e-4);
        assert!(root_polynomial(x, 3.0, 2).abs() <= 1e-11);
    }

    #[test]
    fn iterates_increase_within_bounds() {
        let xs: Vec<f64> = poa_root_iterates(2.5, 3).take(50).collect();
        assert!(xs.windows(2).all(|w| w[1] >= w[0]));
        assert!(xs.iter().all(|&x| (2.5..=5.0).contains(&x)));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(poa_root(0.5, 1, 1e-9).is_err());
        assert!(poa_root(2.0, 0, 1e-9).is_err());
        assert!(poa_root(2.0, 1, 0.0).is_err());
    }
}
