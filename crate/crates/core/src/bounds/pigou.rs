//! Numeric estimates of the Gamma bound `gamma` and the generalized Pigou
//! bound `alpha` of a class of delay polynomials.
//!
//! Every delay has nonnegative coefficients, so it is nondecreasing in each
//! flow. Hence the sup defining `gamma` is attained with `|x|_1 = |r|_1`, and
//! for fixed norms `s = |r|_1 > t = |x|_1` the Pigou ratio grows with `Phi(r)`
//! and shrinks with `Phi(x)`. Both estimates therefore reduce to the level
//! extremes `M(s) = max Phi` and `m(s) = min Phi` over `{|v|_1 = s}` inside
//! the box `[0, upper]^k`: first on grid levels, then refined by local
//! search. The results are lower estimates of the true sups.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{EdgeDelaySpec, Instance, PolynomialDelay};

/// Search box `[0, upper]^k` with `resolution` points per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub upper: f64,
    pub resolution: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            upper: 10.0,
            resolution: 64,
        }
    }
}

/// Largest number of grid points searched per function.
const MAX_GRID_POINTS: usize = 1 << 24;

impl Grid {
    fn validate(&self, k: usize) -> Result<()> {
        if !(self.upper > 0.0) || !self.upper.is_finite() {
            return Err(Error::BadParameter(format!(
                "grid upper bound must be positive, got {}",
                self.upper
            )));
        }
        if self.resolution < 2 {
            return Err(Error::BadParameter(
                "grid needs at least 2 points per axis".into(),
            ));
        }
        let points = (self.resolution as u128).checked_pow(k as u32);
        if points.is_none_or(|p| p > MAX_GRID_POINTS as u128) {
            return Err(Error::BadParameter(format!(
                "{}^{k} grid points exceed the limit of {MAX_GRID_POINTS}",
                self.resolution
            )));
        }
        Ok(())
    }

    fn spacing(&self) -> f64 {
        self.upper / (self.resolution - 1) as f64
    }
}

/// Arguments attaining an estimate: the ratio re-evaluated at `(x, r)` for
/// class member `function` equals the reported value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub function: usize,
    pub x: Vec<f64>,
    pub r: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaEstimate {
    pub value: f64,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaEstimate {
    pub value: f64,
    /// The `gamma` the estimate was computed with.
    pub gamma: f64,
    pub witness: Witness,
}

/// Both estimates for one class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PigouEstimate {
    pub alpha: f64,
    pub gamma: f64,
    pub alpha_witness: Witness,
    pub gamma_witness: Witness,
    pub grid: Grid,
}

impl PigouEstimate {
    pub fn compute(class: &[PolynomialDelay], grid: &Grid) -> Result<Self> {
        let gamma = gamma_bound_numeric(class, grid)?;
        let alpha = pigou_bound_numeric(class, gamma.value, grid)?;
        Ok(Self {
            alpha: alpha.value,
            gamma: gamma.value,
            alpha_witness: alpha.witness,
            gamma_witness: gamma.witness,
            grid: *grid,
        })
    }
}

/// The distinct delay functions of a list of edge delays.
pub fn class_functions(specs: &[EdgeDelaySpec]) -> Vec<PolynomialDelay> {
    let mut out: Vec<PolynomialDelay> = Vec::new();
    for spec in specs {
        for f in spec.per_commodity() {
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
    }
    out
}

/// The distinct delay functions used anywhere in an instance.
pub fn instance_class(instance: &Instance) -> Vec<PolynomialDelay> {
    let specs: Vec<EdgeDelaySpec> = instance
        .network()
        .edges()
        .iter()
        .map(|e| e.delay().clone())
        .collect();
    class_functions(&specs)
}

/// `Phi(r) / Phi(x)` with `0/0 := 1`.
pub fn gamma_ratio(phi: &PolynomialDelay, x: &[f64], r: &[f64]) -> f64 {
    ratio(phi.eval(r), phi.eval(x))
}

/// `gamma |r| Phi(r) / (gamma |x| Phi(x) + (|r| - |x|) Phi(r))` with
/// `0/0 := 1`.
pub fn alpha_ratio(phi: &PolynomialDelay, gamma: f64, x: &[f64], r: &[f64]) -> f64 {
    let s: f64 = r.iter().sum();
    let t: f64 = x.iter().sum();
    let pr = phi.eval(r);
    let px = phi.eval(x);
    ratio(gamma * s * pr, gamma * t * px + (s - t) * pr)
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num > 0.0 {
        f64::INFINITY
    } else {
        1.0
    }
}

/// Estimate of `gamma = sup Phi(r) / Phi(x)` over `|x|_1 >= |r|_1`.
pub fn gamma_bound_numeric(class: &[PolynomialDelay], grid: &Grid) -> Result<GammaEstimate> {
    let k = check_class(class)?;
    grid.validate(k)?;
    let mut best: Option<GammaEstimate> = None;
    for (index, phi) in class.iter().enumerate() {
        let levels = Levels::scan(phi, grid, k);
        let mut top: Option<(f64, usize)> = None;
        for n in 0..levels.count() {
            let value = ratio(levels.max[n].0, levels.min[n].0);
            if top.is_none_or(|(v, _)| value > v) {
                top = Some((value, n));
            }
        }
        let (_, n) = top.expect("at least one level");
        let mut r = levels.argmax(n, grid, k);
        let mut x = levels.argmin(n, grid, k);
        let searcher = LevelSearch {
            phi,
            upper: grid.upper,
        };
        searcher.polish(&mut r, 1.0, grid.spacing());
        searcher.polish(&mut x, -1.0, grid.spacing());
        let s = n as f64 * grid.spacing();
        let eval = |s: f64, r: &mut Vec<f64>, x: &mut Vec<f64>| -> f64 {
            searcher.move_to(r, s, 1.0, grid.spacing());
            searcher.move_to(x, s, -1.0, grid.spacing());
            gamma_ratio(phi, x, r)
        };
        let (r, x) = refine_norms(&[s], (r, x), grid, k, |p, r, x| eval(p[0], r, x));
        let value = gamma_ratio(phi, &x, &r);
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(GammaEstimate {
                value,
                witness: Witness {
                    function: index,
                    x,
                    r,
                },
            });
        }
    }
    Ok(best.expect("class is not empty"))
}

/// Estimate of the generalized Pigou bound for a given `gamma >= 1`, over
/// `|x|_1 < |r|_1` with `Phi(x) <= Phi(r)`.
pub fn pigou_bound_numeric(
    class: &[PolynomialDelay],
    gamma: f64,
    grid: &Grid,
) -> Result<AlphaEstimate> {
    let k = check_class(class)?;
    grid.validate(k)?;
    if !(gamma >= 1.0) || !gamma.is_finite() {
        return Err(Error::BadParameter(format!(
            "gamma must be finite and at least 1, got {gamma}"
        )));
    }
    let h = grid.spacing();
    let mut best: Option<AlphaEstimate> = None;
    for (index, phi) in class.iter().enumerate() {
        let levels = Levels::scan(phi, grid, k);
        // 0/0 := 1 whenever nothing better is found.
        let mut top = (1.0, 0, 0);
        for ns in 1..levels.count() {
            let (pr, _) = levels.max[ns];
            let s = ns as f64 * h;
            for nt in 0..ns {
                let (px, _) = levels.min[nt];
                if px > pr {
                    continue;
                }
                let t = nt as f64 * h;
                let value = ratio(gamma * s * pr, gamma * t * px + (s - t) * pr);
                if value > top.0 {
                    top = (value, ns, nt);
                }
            }
        }
        let (_, ns, nt) = top;
        let mut r = levels.argmax(ns, grid, k);
        let mut x = levels.argmin(nt, grid, k);
        let searcher = LevelSearch {
            phi,
            upper: grid.upper,
        };
        searcher.polish(&mut r, 1.0, h);
        searcher.polish(&mut x, -1.0, h);
        let eval = |p: &[f64], r: &mut Vec<f64>, x: &mut Vec<f64>| -> f64 {
            let (s, t) = (p[0], p[1]);
            if !(t >= 0.0 && t < s) {
                return f64::NEG_INFINITY;
            }
            searcher.move_to(r, s, 1.0, h);
            searcher.move_to(x, t, -1.0, h);
            if phi.eval(x) > phi.eval(r) {
                return f64::NEG_INFINITY;
            }
            alpha_ratio(phi, gamma, x, r)
        };
        let start = [ns as f64 * h, nt as f64 * h];
        let (r, x) = if ns > 0 {
            refine_norms(&start, (r, x), grid, k, eval)
        } else {
            (r, x)
        };
        let value = alpha_ratio(phi, gamma, &x, &r);
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(AlphaEstimate {
                value,
                gamma,
                witness: Witness {
                    function: index,
                    x,
                    r,
                },
            });
        }
    }
    Ok(best.expect("class is not empty"))
}

fn check_class(class: &[PolynomialDelay]) -> Result<usize> {
    let first = class.first().ok_or(Error::EmptyClass)?;
    let k = first.arity();
    if let Some(bad) = class.iter().find(|f| f.arity() != k) {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: bad.arity(),
        });
    }
    Ok(k)
}

/// Grid extremes per level `n`, i.e. over grid points whose indices sum
/// to `n`; each entry is `(value, flat grid index)`.
struct Levels {
    max: Vec<(f64, usize)>,
    min: Vec<(f64, usize)>,
}

impl Levels {
    fn scan(phi: &PolynomialDelay, grid: &Grid, k: usize) -> Self {
        let res = grid.resolution;
        let h = grid.spacing();
        let count = k * (res - 1) + 1;
        let mut max = vec![(f64::NEG_INFINITY, 0); count];
        let mut min = vec![(f64::INFINITY, 0); count];
        let total = res.pow(k as u32);
        let mut idx = vec![0usize; k];
        let mut point = vec![0.0; k];
        for flat in 0..total {
            let mut rest = flat;
            for j in (0..k).rev() {
                idx[j] = rest % res;
                rest /= res;
                point[j] = idx[j] as f64 * h;
            }
            let n: usize = idx.iter().sum();
            let v = phi.eval(&point);
            if v > max[n].0 {
                max[n] = (v, flat);
            }
            if v < min[n].0 {
                min[n] = (v, flat);
            }
        }
        Self { max, min }
    }

    fn count(&self) -> usize {
        self.max.len()
    }

    fn point(flat: usize, grid: &Grid, k: usize) -> Vec<f64> {
        let res = grid.resolution;
        let mut out = vec![0.0; k];
        let mut rest = flat;
        for j in (0..k).rev() {
            out[j] = (rest % res) as f64 * grid.spacing();
            rest /= res;
        }
        out
    }

    fn argmax(&self, n: usize, grid: &Grid, k: usize) -> Vec<f64> {
        Self::point(self.max[n].1, grid, k)
    }

    fn argmin(&self, n: usize, grid: &Grid, k: usize) -> Vec<f64> {
        Self::point(self.min[n].1, grid, k)
    }
}

/// Local search for level extremes by pairwise mass transfers, which keep
/// `|v|_1` fixed and `v` inside the box.
struct LevelSearch<'a> {
    phi: &'a PolynomialDelay,
    upper: f64,
}

impl LevelSearch<'_> {
    /// Improves `v` in direction `sign` (`1` maximizes, `-1` minimizes).
    fn polish(&self, v: &mut [f64], sign: f64, initial_step: f64) {
        let k = v.len();
        if k < 2 {
            return;
        }
        let mut best = sign * self.phi.eval(v);
        let mut step = initial_step;
        let floor = 1e-13 * self.upper;
        let mut budget = 20_000;
        while step > floor && budget > 0 {
            let mut improved = false;
            for i in 0..k {
                for j in 0..k {
                    if i == j {
                        continue;
                    }
                    let d = step.min(v[i]).min(self.upper - v[j]);
                    if d <= 0.0 {
                        continue;
                    }
                    let (vi, vj) = (v[i], v[j]);
                    v[i] = vi - d;
                    v[j] = vj + d;
                    budget -= 1;
                    let value = sign * self.phi.eval(v);
                    if value > best {
                        best = value;
                        improved = true;
                    } else {
                        v[i] = vi;
                        v[j] = vj;
                    }
                }
            }
            if !improved {
                step /= 2.0;
            }
        }
    }

    /// Moves `v` onto the level `|v|_1 = s` by rescaling, then polishes.
    fn move_to(&self, v: &mut Vec<f64>, s: f64, sign: f64, step: f64) {
        *v = rescale(v, s, self.upper);
        self.polish(v, sign, step);
    }
}

/// `v` scaled to `|v|_1 = s` and clipped to the box, the clipped excess
/// spread over coordinates with room. Requires `s <= k * upper`.
fn rescale(v: &[f64], s: f64, upper: f64) -> Vec<f64> {
    let k = v.len();
    let sum: f64 = v.iter().sum();
    let mut out: Vec<f64> = if sum > 0.0 {
        v.iter().map(|x| x * s / sum).collect()
    } else {
        vec![s / k as f64; k]
    };
    for _ in 0..k {
        let excess: f64 = out.iter().map(|&x| (x - upper).max(0.0)).sum();
        if excess <= 0.0 {
            break;
        }
        out.iter_mut().for_each(|x| *x = x.min(upper));
        let free = out.iter().filter(|&&x| x < upper).count();
        if free == 0 {
            break;
        }
        let share = excess / free as f64;
        out.iter_mut()
            .filter(|x| **x < upper)
            .for_each(|x| *x += share);
    }
    out.iter_mut().for_each(|x| *x = x.clamp(0.0, upper));
    out
}

/// Pattern search over the norms `params` (each within `[0, k * upper]`),
/// carrying the witnesses along. Returns the best witnesses.
fn refine_norms(
    params: &[f64],
    witnesses: (Vec<f64>, Vec<f64>),
    grid: &Grid,
    k: usize,
    mut eval: impl FnMut(&[f64], &mut Vec<f64>, &mut Vec<f64>) -> f64,
) -> (Vec<f64>, Vec<f64>) {
    let limit = k as f64 * grid.upper;
    let mut p = params.to_vec();
    let (mut r, mut x) = witnesses;
    let mut best = eval(&p, &mut r, &mut x);
    let mut step = grid.spacing();
    let floor = 1e-12 * grid.upper;
    let mut budget = 2_000;
    while step > floor && budget > 0 {
        let mut improved = false;
        for d in 0..p.len() {
            for dir in [1.0, -1.0] {
                let mut q = p.clone();
                q[d] = (q[d] + dir * step).clamp(0.0, limit);
                if q[d] == p[d] {
                    continue;
                }
                let (mut r2, mut x2) = (r.clone(), x.clone());
                budget -= 1;
                let value = eval(&q, &mut r2, &mut x2);
                if value > best {
                    best = value;
                    p = q;
                    r = r2;
                    x = x2;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    (r, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Monomial;

    fn poly(k: usize, terms: &[(f64, &[u32])], c: f64) -> PolynomialDelay {
        let terms = terms
            .iter()
            .map(|(g, e)| Monomial::new(*g, e.to_vec()).unwrap())
            .collect();
        PolynomialDelay::new(k, terms, c).unwrap()
    }

    #[test]
    fn aggregate_class_has_unit_gamma() {
        let class = [poly(2, &[(1.0, &[1, 0]), (1.0, &[0, 1])], 0.0)];
        let g = gamma_bound_numeric(&class, &Grid::default()).unwrap();
        assert!((g.value - 1.0).abs() < 1e-12, "{}", g.value);
    }

    #[test]
    fn gamma_sees_the_coefficient_spread() {
        // Phi(1, 0) / Phi(0, 1) = 4 for 4 f1^2 + f2^2.
        let class = [poly(2, &[(4.0, &[2, 0]), (1.0, &[0, 2])], 0.0)];
        let g = gamma_bound_numeric(&class, &Grid::default()).unwrap();
        assert!(g.value >= 4.0 - 1e-9);
        assert!(g.value <= 4.0 * 2.0 + 0.02);
        let w = &g.witness;
        assert!((gamma_ratio(&class[w.function], &w.x, &w.r) - g.value).abs() < 1e-9);
    }

    #[test]
    fn classic_pigou_value() {
        let class = [poly(1, &[(1.0, &[1])], 0.0)];
        let a = pigou_bound_numeric(&class, 1.0, &Grid::default()).unwrap();
        assert!((a.value - 4.0 / 3.0).abs() < 1e-6, "{}", a.value);
        let w = &a.witness;
        assert!((w.x[0] - w.r[0] / 2.0).abs() < 1e-6);
        assert!((alpha_ratio(&class[0], 1.0, &w.x, &w.r) - a.value).abs() < 1e-12);
    }

    #[test]
    fn constant_class_gives_one() {
        let class = [PolynomialDelay::constant_only(2, 3.0).unwrap()];
        let est = PigouEstimate::compute(
            &class,
            &Grid {
                upper: 5.0,
                resolution: 8,
            },
        )
        .unwrap();
        assert_eq!(est.gamma, 1.0);
        assert!((est.alpha - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_delays_make_gamma_infinite() {
        // f1 f2 + f2^2 vanishes on the f1 axis.
        let class = [poly(2, &[(1.0, &[1, 1]), (1.0, &[0, 2])], 0.0)];
        let g = gamma_bound_numeric(
            &class,
            &Grid {
                upper: 2.0,
                resolution: 5,
            },
        )
        .unwrap();
        assert!(g.value.is_infinite());
        assert!(pigou_bound_numeric(&class, g.value, &Grid::default()).is_err());
    }

    #[test]
    fn empty_class_is_an_error() {
        assert!(matches!(
            gamma_bound_numeric(&[], &Grid::default()),
            Err(Error::EmptyClass)
        ));
    }

    #[test]
    fn rescale_respects_the_box() {
        let v = rescale(&[3.0, 1.0], 8.0, 5.0);
        assert!((v.iter().sum::<f64>() - 8.0).abs() < 1e-12);
        assert_eq!(v, vec![5.0, 3.0]);
    }
}
