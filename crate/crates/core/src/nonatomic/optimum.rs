use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{edge_cost, FlowAssignment, Instance, Routing};

#[derive(Debug, Clone, PartialEq)]
pub struct SoConfig {
    /// Random interior starts on top of the uniform split and the corners.
    pub restarts: usize,
    /// Projected-gradient iterations per start.
    pub max_iter: usize,
    pub seed: u64,
    /// Corner starts are skipped when there are more single-path profiles
    /// than this.
    pub corner_cap: usize,
}

impl Default for SoConfig {
    fn default() -> Self {
        Self {
            restarts: 20,
            max_iter: 2_000,
            seed: 0,
            corner_cap: 4_096,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimumReport {
    pub flow: FlowAssignment,
    pub cost: f64,
    pub restarts_used: usize,
    /// Cost of the local optimum reached from each start, in start order.
    pub best_of: Vec<f64>,
}

/// Social optimum by multistart projected gradient descent over the
/// per-commodity path-flow simplices.
///
/// Starts are every single-path corner (up to `corner_cap` of them), the
/// uniform split and `restarts` random interior points. Gradients come
/// from central differences of the per-edge cost; steps use a
/// Barzilai-Borwein trial length with halving until the cost decreases.
/// The objective need not be convex, so the result is the best local
/// optimum found. Identical configs give identical reports.
pub fn solve_so(routing: &Routing, config: &SoConfig) -> Result<OptimumReport> {
    let instance = routing.instance();
    let layout = Layout::new(routing);
    let mut starts: Vec<Vec<f64>> = Vec::new();

    let counts = routing.path_counts();
    let corners: u128 = counts.iter().map(|&c| c as u128).product();
    if corners <= config.corner_cap as u128 {
        for_each_profile(&counts, |choice| {
            starts.push(layout.flatten(routing.corner_flow(choice).all_path_flows()));
        });
    }
    starts.push(layout.flatten(routing.uniform_flow().all_path_flows()));
    for r in 0..config.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(r as u64);
        starts.push(layout.random_point(&mut rng));
    }

    let objective = Objective {
        routing,
        instance,
        layout: &layout,
    };
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut best_of = Vec::with_capacity(starts.len());
    for start in starts {
        let (x, cost) = objective.descend(start, config.max_iter);
        best_of.push(cost);
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, x));
        }
    }
    let (cost, x) = best.ok_or_else(|| Error::BadParameter("no starting points".into()))?;
    let flow = routing.flow(layout.unflatten(&x))?;
    Ok(OptimumReport {
        flow,
        cost,
        restarts_used: best_of.len(),
        best_of,
    })
}

/// Calls `f` with every mixed-radix choice vector in lexicographic order.
pub(crate) fn for_each_profile(counts: &[usize], mut f: impl FnMut(&[usize])) {
    if counts.contains(&0) {
        return;
    }
    let mut choice = vec![0; counts.len()];
    loop {
        f(&choice);
        let mut pos = counts.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < counts[pos] {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Euclidean projection of `v` onto `{x >= 0, sum x = total}`.
pub fn project_onto_simplex(v: &[f64], total: f64) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut tau = 0.0;
    for (j, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let candidate = (cumulative - total) / (j as f64 + 1.0);
        if u - candidate > 0.0 {
            tau = candidate;
        }
    }
    v.iter().map(|&x| (x - tau).max(0.0)).collect()
}

/// Flat indexing of all path flows.
struct Layout {
    offsets: Vec<usize>,
    demands: Vec<f64>,
}

impl Layout {
    fn new(routing: &Routing) -> Self {
        let mut offsets = vec![0];
        for n in routing.path_counts() {
            offsets.push(offsets.last().unwrap() + n);
        }
        Self {
            offsets,
            demands: routing.instance().demands(),
        }
    }

    fn block(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    fn flatten(&self, flows: &[Vec<f64>]) -> Vec<f64> {
        flows.concat()
    }

    fn unflatten(&self, x: &[f64]) -> Vec<Vec<f64>> {
        (0..self.demands.len())
            .map(|i| x[self.block(i)].to_vec())
            .collect()
    }

    fn project(&self, x: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(x.len());
        for (i, &r) in self.demands.iter().enumerate() {
            out.extend(project_onto_simplex(&x[self.block(i)], r));
        }
        out
    }

    fn random_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let mut out = Vec::with_capacity(*self.offsets.last().unwrap());
        for (i, &r) in self.demands.iter().enumerate() {
            let weights: Vec<f64> = self
                .block(i)
                .map(|_| -(1.0 - rng.random::<f64>()).ln())
                .collect();
            let sum: f64 = weights.iter().sum();
            out.extend(weights.iter().map(|w| r * w / sum));
        }
        out
    }
}

struct Objective<'a> {
    routing: &'a Routing,
    instance: &'a Instance,
    layout: &'a Layout,
}

impl Objective<'_> {
    fn flow(&self, x: &[f64]) -> FlowAssignment {
        self.routing
            .flow(self.layout.unflatten(x))
            .expect("projected flows are nonnegative")
    }

    fn cost(&self, x: &[f64]) -> f64 {
        edge_cost(self.instance, &self.flow(x))
    }

    /// Central-difference gradient of the social cost in path coordinates.
    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let flow = self.flow(x);
        let k = self.routing.k();
        let edges = self.instance.network().edges();
        let mut edge_grad = vec![0.0; edges.len() * k];
        let mut probe = vec![0.0; k];
        for (e, edge) in edges.iter().enumerate() {
            let base = flow.edge_vector(e);
            let local =
                |v: &[f64]| -> f64 { (0..k).map(|j| v[j] * edge.delay().delay(j).eval(v)).sum() };
            for i in 0..k {
                let h = 1e-6 * base[i].abs().max(1.0);
                probe.copy_from_slice(base);
                probe[i] = base[i] + h;
                let up = local(&probe);
                probe[i] = base[i] - h;
                let down = local(&probe);
                edge_grad[e * k + i] = (up - down) / (2.0 * h);
            }
        }
        let mut grad = Vec::with_capacity(x.len());
        for i in 0..k {
            for path in self.routing.paths(i) {
                grad.push(path.edges().iter().map(|&e| edge_grad[e * k + i]).sum());
            }
        }
        grad
    }

    fn descend(&self, start: Vec<f64>, max_iter: usize) -> (Vec<f64>, f64) {
        let mut x = self.layout.project(&start);
        let mut fx = self.cost(&x);
        let mut g = self.gradient(&x);
        let mut step = {
            let probe = self.layout.project(&sub_scaled(&x, &g, 1.0));
            let norm = inf_norm_diff(&probe, &x);
            if norm > 0.0 {
                (1.0 / norm).clamp(1e-10, 1e10)
            } else {
                1.0
            }
        };

        for _ in 0..max_iter {
            let trial = self.layout.project(&sub_scaled(&x, &g, step));
            let d: Vec<f64> = trial.iter().zip(&x).map(|(t, xi)| t - xi).collect();
            let scale = 1.0 + x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            if d.iter().all(|v| v.abs() <= 1e-13 * scale) {
                break;
            }
            let slope: f64 = g.iter().zip(&d).map(|(a, b)| a * b).sum();
            if slope >= 0.0 {
                break;
            }
            let mut alpha = 1.0;
            let mut accepted = None;
            while alpha > 1e-20 {
                let cand: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + alpha * di).collect();
                let cand = self.layout.project(&cand);
                let fc = self.cost(&cand);
                if fc <= fx + 1e-4 * alpha * slope {
                    accepted = Some((cand, fc));
                    break;
                }
                alpha *= 0.5;
            }
            let Some((x_new, f_new)) = accepted else {
                break;
            };
            let g_new = self.gradient(&x_new);
            let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
            let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
            let sy: f64 = s.iter().zip(&y).map(|(a, b)| a * b).sum();
            let ss: f64 = s.iter().map(|v| v * v).sum();
            step = if sy > 0.0 {
                (ss / sy).clamp(1e-10, 1e10)
            } else {
                1e10_f64.min(step * 10.0)
            };
            let improvement = fx - f_new;
            x = x_new;
            fx = f_new;
            g = g_new;
            if improvement <= 1e-16 * fx.abs().max(1e-300) && ss.sqrt() <= 1e-13 * scale {
                break;
            }
        }
        (x, fx)
    }
}

fn sub_scaled(x: &[f64], g: &[f64], s: f64) -> Vec<f64> {
    x.iter().zip(g).map(|(a, b)| a - s * b).collect()
}

fn inf_norm_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_projection() {
        let p = project_onto_simplex(&[0.5, 0.5], 1.0);
        assert_eq!(p, vec![0.5, 0.5]);
        let p = project_onto_simplex(&[3.0, 0.0, -1.0], 2.0);
        assert!((p[0] - 2.0).abs() < 1e-15 && p[1] == 0.0 && p[2] == 0.0);
        let p = project_onto_simplex(&[1.0, 1.0, 1.0], 1.5);
        for v in p {
            assert!((v - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn profiles_in_lexicographic_order() {
        let mut seen = Vec::new();
        for_each_profile(&[2, 3], |c| seen.push(c.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 0]);
        assert_eq!(seen[1], vec![0, 1]);
        assert_eq!(seen[5], vec![1, 2]);
    }
}
