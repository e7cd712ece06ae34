use crate::error::{Error, Result};

/// `coeff * f_1^{e_1} * ... * f_k^{e_k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    coeff: f64,
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(coeff: f64, exponents: Vec<u32>) -> Result<Self> {
        if !coeff.is_finite() || coeff < 0.0 {
            return Err(Error::InvalidInstance(format!(
                "monomial coefficient must be finite and nonnegative, got {coeff}"
            )));
        }
        Ok(Self { coeff, exponents })
    }

    /// `coeff * f_j^power` in `arity` variables.
    pub fn pure(arity: usize, j: usize, coeff: f64, power: u32) -> Result<Self> {
        if j >= arity {
            return Err(Error::InvalidInstance(format!(
                "variable index {j} out of range for {arity} commodities"
            )));
        }
        let mut exponents = vec![0; arity];
        exponents[j] = power;
        Self::new(coeff, exponents)
    }

    pub fn coeff(&self) -> f64 {
        self.coeff
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// The single variable this monomial depends on, if any.
    pub fn pure_variable(&self) -> Option<usize> {
        let mut nonzero = self.exponents.iter().enumerate().filter(|(_, &e)| e > 0);
        match (nonzero.next(), nonzero.next()) {
            (Some((j, _)), None) => Some(j),
            _ => None,
        }
    }

    pub fn eval(&self, flows: &[f64]) -> f64 {
        let mut value = self.coeff;
        for (&f, &e) in flows.iter().zip(&self.exponents) {
            if e > 0 {
                value *= f.powi(e as i32);
            }
        }
        value
    }
}

/// A delay polynomial `sum_l g_l * prod_j f_j^{theta_jl} + c` over the
/// per-commodity flows on one edge.
///
/// Terms are kept in canonical form: like terms are merged, zero
/// coefficients dropped, degree-zero terms folded into the constant and the
/// rest sorted by exponent vector. Two delays describing the same polynomial
/// therefore compare equal.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialDelay {
    arity: usize,
    terms: Vec<Monomial>,
    constant: f64,
}

impl PolynomialDelay {
    pub fn new(arity: usize, terms: Vec<Monomial>, constant: f64) -> Result<Self> {
        if !constant.is_finite() || constant < 0.0 {
            return Err(Error::InvalidInstance(format!(
                "delay constant must be finite and nonnegative, got {constant}"
            )));
        }
        let mut constant = constant;
        let mut merged: Vec<Monomial> = Vec::with_capacity(terms.len());
        for term in terms {
            if term.exponents.len() != arity {
                return Err(Error::InvalidInstance(format!(
                    "monomial has {} exponents, expected {arity}",
                    term.exponents.len()
                )));
            }
            if term.coeff == 0.0 {
                continue;
            }
            if term.degree() == 0 {
                constant += term.coeff;
                continue;
            }
            match merged.iter_mut().find(|m| m.exponents == term.exponents) {
                Some(existing) => existing.coeff += term.coeff,
                None => merged.push(term),
            }
        }
        merged.sort_by(|a, b| b.exponents.cmp(&a.exponents));
        Ok(Self {
            arity,
            terms: merged,
            constant,
        })
    }

    pub fn constant_only(arity: usize, constant: f64) -> Result<Self> {
        Self::new(arity, Vec::new(), constant)
    }

    /// `sum_j coeffs[j] * f_j + constant`.
    pub fn affine(coeffs: &[f64], constant: f64) -> Result<Self> {
        let arity = coeffs.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| Monomial::pure(arity, j, c, 1))
            .collect::<Result<Vec<_>>>()?;
        Self::new(arity, terms, constant)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// Same polynomial with the constant replaced.
    pub fn with_constant(&self, constant: f64) -> Result<Self> {
        Self::new(self.arity, self.terms.clone(), constant)
    }

    /// Maximum total degree of the variable part (0 for a constant).
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, flows: &[f64]) -> f64 {
        self.terms.iter().map(|t| t.eval(flows)).sum::<f64>() + self.constant
    }

    pub fn try_eval(&self, flows: &[f64]) -> Result<f64> {
        if flows.len() != self.arity {
            return Err(Error::DimensionMismatch {
                expected: self.arity,
                got: flows.len(),
            });
        }
        Ok(self.eval(flows))
    }

    /// Returns `Some(theta)` when every term has total degree `theta` and
    /// each variable has its own pure term `a_j f_j^theta` with `a_j > 0`.
    pub fn theta_complete(&self) -> Option<u32> {
        let theta = self.terms.first()?.degree();
        if self.terms.iter().any(|t| t.degree() != theta) {
            return None;
        }
        let has_pure = |j: usize| {
            self.terms
                .iter()
                .any(|t| t.pure_variable() == Some(j) && t.coeff > 0.0)
        };
        (0..self.arity).all(has_pure).then_some(theta)
    }

    /// Coefficient of the pure term `f_j^power` (zero when absent).
    pub fn pure_coeff(&self, j: usize, power: u32) -> f64 {
        self.terms
            .iter()
            .find(|t| t.pure_variable() == Some(j) && t.exponents[j] == power)
            .map_or(0.0, |t| t.coeff)
    }

    /// True when the variable part depends on the flows only through their
    /// sum, i.e. every homogeneous part of degree `d` is `c_d (f_1+...+f_k)^d`.
    pub fn is_function_of_total(&self) -> bool {
        if self.arity <= 1 {
            return true;
        }
        let mut degrees: Vec<u32> = self.terms.iter().map(Monomial::degree).collect();
        degrees.sort_unstable();
        degrees.dedup();
        degrees.into_iter().all(|d| {
            let base = self.pure_coeff(0, d);
            if base <= 0.0 {
                return false;
            }
            let part: Vec<&Monomial> = self.terms.iter().filter(|t| t.degree() == d).collect();
            if part.len() as u128
                != binomial(d as u64 + self.arity as u64 - 1, self.arity as u64 - 1)
            {
                return false;
            }
            part.iter().all(|t| {
                let expected = base * multinomial(&t.exponents);
                (t.coeff - expected).abs() <= 1e-12 * expected.max(1.0)
            })
        })
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn multinomial(exponents: &[u32]) -> f64 {
    let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
    let total: u32 = exponents.iter().sum();
    fact(total) / exponents.iter().map(|&e| fact(e)).product::<f64>()
}

/// Per-commodity delays on one edge: entry `i` is the delay commodity `i`
/// experiences as a function of the edge's flow vector.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeDelaySpec {
    per_commodity: Vec<PolynomialDelay>,
}

impl EdgeDelaySpec {
    pub fn new(per_commodity: Vec<PolynomialDelay>) -> Result<Self> {
        let k = per_commodity.len();
        if k == 0 {
            return Err(Error::InvalidInstance(
                "edge delay has no commodities".into(),
            ));
        }
        if let Some(p) = per_commodity.iter().find(|p| p.arity() != k) {
            return Err(Error::InvalidInstance(format!(
                "delay polynomial has arity {}, expected {k}",
                p.arity()
            )));
        }
        Ok(Self { per_commodity })
    }

    /// Every commodity faces the same delay.
    pub fn shared(delay: PolynomialDelay) -> Self {
        let k = delay.arity();
        Self {
            per_commodity: vec![delay; k],
        }
    }

    pub fn k(&self) -> usize {
        self.per_commodity.len()
    }

    pub fn delay(&self, commodity: usize) -> &PolynomialDelay {
        &self.per_commodity[commodity]
    }

    pub fn per_commodity(&self) -> &[PolynomialDelay] {
        &self.per_commodity
    }

    pub fn is_decomposable(&self) -> bool {
        self.per_commodity.windows(2).all(|w| w[0] == w[1])
    }
}

/// Delay of `commodity` on an edge carrying `flows`.
pub fn eval_delay(spec: &EdgeDelaySpec, commodity: usize, flows: &[f64]) -> Result<f64> {
    if commodity >= spec.k() {
        return Err(Error::DimensionMismatch {
            expected: spec.k(),
            got: commodity + 1,
        });
    }
    spec.delay(commodity).try_eval(flows)
}
