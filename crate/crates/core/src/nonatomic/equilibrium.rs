use super::verify::{assess, WardropReport};
use crate::error::{Error, Result};
use crate::model::{FlowAssignment, Routing};
use crate::tolerance;

#[derive(Debug, Clone, PartialEq)]
pub struct NeConfig {
    /// Relative equilibrium tolerance.
    pub eps: f64,
    /// Maximum number of all-or-nothing assignments.
    pub max_iter: usize,
    /// Scale of the step `damping / (t + 1)`, in `(0, 1]`.
    pub damping: f64,
}

impl Default for NeConfig {
    fn default() -> Self {
        Self {
            eps: tolerance::EQUILIBRIUM,
            max_iter: 20_000,
            damping: 1.0,
        }
    }
}

impl NeConfig {
    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0) {
            return Err(Error::BadParameter(format!(
                "eps must be positive, got {}",
                self.eps
            )));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::BadParameter(format!(
                "damping must lie in (0, 1], got {}",
                self.damping
            )));
        }
        Ok(())
    }
}

/// Damped all-or-nothing iteration towards a Wardrop equilibrium.
///
/// Each step sends every commodity's demand to its currently cheapest path
/// (lowest index on ties) and blends `f <- (1 - l_t) f + l_t f_aon` with
/// `l_t = damping / (t + 1)`, `t = 1, 2, ...`. Without a start flow the
/// first all-or-nothing assignment against the empty network is the
/// starting point. `iterations` counts all-or-nothing assignments.
///
/// Hitting `max_iter` is reported through `converged == false`.
pub fn solve_ne_nonatomic(
    routing: &Routing,
    start: Option<&FlowAssignment>,
    config: &NeConfig,
) -> Result<WardropReport> {
    config.validate()?;
    let instance = routing.instance();
    let mut kernel = Kernel::new(routing);

    let mut iterations = match start {
        Some(flow) => {
            flow.check_feasible(instance)?;
            kernel.x = flow.all_path_flows().concat();
            0
        }
        None => {
            kernel.refresh();
            kernel.blend(1.0);
            1
        }
    };

    let threshold = config.eps * instance.total_demand();
    let mut t = 1usize;
    loop {
        let gap = kernel.refresh();
        if gap <= threshold || iterations >= config.max_iter {
            let report = assess(
                routing,
                routing.flow(kernel.unflatten())?,
                config.eps,
                iterations,
            );
            if report.converged || iterations >= config.max_iter {
                return Ok(report);
            }
        }
        kernel.blend(config.damping / (t as f64 + 1.0));
        iterations += 1;
        t += 1;
    }
}

/// Flat working state of the iteration: path flows, per-edge flows and
/// delays, and each commodity's cheapest path under the current flow.
struct Kernel<'a> {
    routing: &'a Routing,
    k: usize,
    offsets: Vec<usize>,
    demands: Vec<f64>,
    x: Vec<f64>,
    edge_flows: Vec<f64>,
    delays: Vec<f64>,
    best: Vec<usize>,
}

impl<'a> Kernel<'a> {
    fn new(routing: &'a Routing) -> Self {
        let k = routing.k();
        let mut offsets = vec![0];
        for n in routing.path_counts() {
            offsets.push(offsets.last().unwrap() + n);
        }
        let m = routing.instance().num_edges();
        Self {
            routing,
            k,
            x: vec![0.0; *offsets.last().unwrap()],
            offsets,
            demands: routing.instance().demands(),
            edge_flows: vec![0.0; m * k],
            delays: vec![0.0; m * k],
            best: vec![0; k],
        }
    }

    fn unflatten(&self) -> Vec<Vec<f64>> {
        (0..self.k)
            .map(|i| self.x[self.offsets[i]..self.offsets[i + 1]].to_vec())
            .collect()
    }

    /// Recomputes delays and cheapest paths; returns the VI gap.
    fn refresh(&mut self) -> f64 {
        let k = self.k;
        self.edge_flows.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..k {
            for (p, path) in self.routing.paths(i).iter().enumerate() {
                let f = self.x[self.offsets[i] + p];
                for &e in path.edges() {
                    self.edge_flows[e * k + i] += f;
                }
            }
        }
        for (e, edge) in self.routing.instance().network().edges().iter().enumerate() {
            let v = &self.edge_flows[e * k..(e + 1) * k];
            for i in 0..k {
                self.delays[e * k + i] = edge.delay().delay(i).eval(v);
            }
        }
        let mut gap = 0.0;
        for i in 0..k {
            let paths = self.routing.paths(i);
            let mut best = 0;
            let mut min = f64::INFINITY;
            let mut weighted = 0.0;
            for (p, path) in paths.iter().enumerate() {
                let c: f64 = path.edges().iter().map(|&e| self.delays[e * k + i]).sum();
                if c < min {
                    min = c;
                    best = p;
                }
                weighted += self.x[self.offsets[i] + p] * c;
            }
            let total: f64 = self.x[self.offsets[i]..self.offsets[i + 1]].iter().sum();
            gap += weighted - total * min;
            self.best[i] = best;
        }
        gap
    }

    /// `x <- (1 - step) x + step * aon` against the last refresh.
    fn blend(&mut self, step: f64) {
        for i in 0..self.k {
            let block = &mut self.x[self.offsets[i]..self.offsets[i + 1]];
            block.iter_mut().for_each(|v| *v *= 1.0 - step);
            block[self.best[i]] += step * self.demands[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::generators::{gen_fig1, gen_fig2};
    use crate::model::{EdgeDelaySpec, Instance, PolynomialDelay};

    #[test]
    fn single_edge_converges_in_one_iteration() {
        let instance = Instance::builder()
            .nodes(["s", "t"])
            .edge(
                "e",
                "s",
                "t",
                EdgeDelaySpec::shared(PolynomialDelay::affine(&[1.0], 1.0).unwrap()),
            )
            .commodity("s", "t", 3.0)
            .build()
            .unwrap();
        let routing = Routing::new(instance).unwrap();
        let report = solve_ne_nonatomic(&routing, None, &NeConfig::default()).unwrap();
        assert!(report.converged);
        assert_eq!(report.iterations, 1);
        assert_eq!(report.cost, 12.0);
    }

    #[test]
    fn two_link_instance_reaches_a_verified_equilibrium() {
        let routing = Routing::new(gen_fig1(2.0, 2, 1.0).unwrap()).unwrap();
        let report = solve_ne_nonatomic(&routing, None, &NeConfig::default()).unwrap();
        assert!(report.converged);
        assert!(report.vi_gap <= 1e-6 * 2.0);
        // Either the aligned equilibrium (cost 2a = 4) or the crossed one (cost 2).
        assert!(
            (report.cost - 4.0).abs() < 1e-3 || (report.cost - 2.0).abs() < 1e-3,
            "{}",
            report.cost
        );
    }

    #[test]
    fn equilibrium_seed_is_a_fixed_point() {
        let routing = Routing::new(gen_fig2(3, 2, 2.0).unwrap()).unwrap();
        let seed = routing.corner_flow(&[0, 1, 2]);
        let report = solve_ne_nonatomic(&routing, Some(&seed), &NeConfig::default()).unwrap();
        assert!(report.converged);
        assert_eq!(report.iterations, 0);
        assert_eq!(report.cost, 6.0);
    }

    #[test]
    fn unconverged_runs_are_reported_not_errors() {
        let routing = Routing::new(gen_fig2(3, 2, 2.0).unwrap()).unwrap();
        let config = NeConfig {
            max_iter: 3,
            ..NeConfig::default()
        };
        let seed = routing.corner_flow(&[0, 0, 1]);
        let report = solve_ne_nonatomic(&routing, Some(&seed), &config).unwrap();
        assert_eq!(report.iterations, 3);
        assert!(!report.converged);
    }

    #[test]
    fn bad_damping_is_rejected() {
        let routing = Routing::new(gen_fig1(1.0, 1, 1.0).unwrap()).unwrap();
        for damping in [0.0, 1.5, f64::NAN] {
            let config = NeConfig {
                damping,
                ..NeConfig::default()
            };
            assert!(matches!(
                solve_ne_nonatomic(&routing, None, &config),
                Err(Error::BadParameter(_))
            ));
        }
    }
}
