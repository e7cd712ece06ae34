use super::network::Instance;
use super::paths::Path;
use crate::error::{Error, Result};
use crate::tolerance;

/// Path flows together with the edge flows they induce.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowAssignment {
    path_flows: Vec<Vec<f64>>,
    /// Row-major `[edge][commodity]`.
    edge_flows: Vec<f64>,
    k: usize,
}

impl FlowAssignment {
    pub(crate) fn from_paths(
        paths: &[Vec<Path>],
        num_edges: usize,
        path_flows: Vec<Vec<f64>>,
    ) -> Self {
        let k = paths.len();
        let mut edge_flows = vec![0.0; num_edges * k];
        for (i, (paths, flows)) in paths.iter().zip(&path_flows).enumerate() {
            for (path, &f) in paths.iter().zip(flows) {
                if f == 0.0 {
                    continue;
                }
                for &e in path.edges() {
                    edge_flows[e * k + i] += f;
                }
            }
        }
        Self {
            path_flows,
            edge_flows,
            k,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_edges(&self) -> usize {
        self.edge_flows.len().checked_div(self.k).unwrap_or(0)
    }

    pub fn path_flows(&self, commodity: usize) -> &[f64] {
        &self.path_flows[commodity]
    }

    pub fn all_path_flows(&self) -> &[Vec<f64>] {
        &self.path_flows
    }

    /// `f_i(e)`.
    pub fn edge_flow(&self, commodity: usize, e: usize) -> f64 {
        self.edge_flows[e * self.k + commodity]
    }

    /// The flow vector `f(e)` over all commodities.
    pub fn edge_vector(&self, e: usize) -> &[f64] {
        &self.edge_flows[e * self.k..(e + 1) * self.k]
    }

    /// Aggregate flow `||f(e)||_1`.
    pub fn edge_total(&self, e: usize) -> f64 {
        self.edge_vector(e).iter().sum()
    }

    /// Checks `sum_P f_P == r_i` for every commodity.
    pub fn check_feasible(&self, instance: &Instance) -> Result<()> {
        if self.path_flows.len() != instance.k() || self.num_edges() != instance.num_edges() {
            return Err(Error::DimensionMismatch {
                expected: instance.k(),
                got: self.path_flows.len(),
            });
        }
        for (i, flows) in self.path_flows.iter().enumerate() {
            let demand = instance.commodity(i).demand();
            let routed: f64 = flows.iter().sum();
            if (routed - demand).abs() > tolerance::FEASIBILITY * demand.max(1.0) {
                return Err(Error::InfeasibleFlow {
                    commodity: i,
                    routed,
                    demand,
                });
            }
        }
        Ok(())
    }
}

/// `C(f) = sum_e sum_i f_i(e) * Phi_e^i(f(e))`.
pub fn social_cost(instance: &Instance, flow: &FlowAssignment) -> Result<f64> {
    flow.check_feasible(instance)?;
    Ok(edge_cost(instance, flow))
}

pub(crate) fn edge_cost(instance: &Instance, flow: &FlowAssignment) -> f64 {
    let mut cost = 0.0;
    for (e, edge) in instance.network().edges().iter().enumerate() {
        let x = flow.edge_vector(e);
        for (i, &fi) in x.iter().enumerate() {
            cost += fi * edge.delay().delay(i).eval(x);
        }
    }
    cost
}
