use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::model::{edge_cost, FlowAssignment, Routing};
use crate::tolerance;

/// Equilibrium diagnostics for one flow.
#[derive(Debug, Clone, PartialEq)]
pub struct WardropReport {
    pub flow: FlowAssignment,
    pub cost: f64,
    /// Cheapest path cost of each commodity under the frozen delays.
    pub min_path_cost: Vec<f64>,
    /// Most expensive path still carrying flow, per commodity.
    pub max_used_path_cost: Vec<f64>,
    /// `sum_i sum_P f_P (cost(P) - min_i)`: the left-hand side of the
    /// variational inequality minus its minimum over feasible flows.
    pub vi_gap: f64,
    pub converged: bool,
    pub iterations: usize,
}

impl WardropReport {
    /// Largest spread between a used path and the cheapest one.
    pub fn max_spread(&self) -> f64 {
        self.max_used_path_cost
            .iter()
            .zip(&self.min_path_cost)
            .map(|(hi, lo)| hi - lo)
            .fold(0.0, f64::max)
    }

    pub fn summary(&self, routing: &Routing) -> FlowSummary {
        FlowSummary::new(
            routing,
            &self.flow,
            self.cost,
            Some(self.vi_gap),
            Some(self.converged),
            Some(self.iterations),
        )
    }
}

/// Serialized form of a solver report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowSummary {
    pub flow: BTreeMap<String, f64>,
    pub cost: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vi_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
}

impl FlowSummary {
    pub fn new(
        routing: &Routing,
        flow: &FlowAssignment,
        cost: f64,
        vi_gap: Option<f64>,
        converged: Option<bool>,
        iterations: Option<usize>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for i in 0..routing.k() {
            for (p, &f) in flow.path_flows(i).iter().enumerate() {
                if f > 0.0 {
                    map.insert(routing.path_id(i, p), f);
                }
            }
        }
        Self {
            flow: map,
            cost,
            vi_gap,
            converged,
            iterations,
        }
    }
}

/// Checks the Wardrop conditions of `flow`.
///
/// The variational inequality is linear in the comparison flow, so it holds
/// exactly when every commodity routes only on its cheapest paths under the
/// frozen delays. The flow is accepted when the aggregate excess cost
/// `vi_gap` is at most `eps * total demand`.
pub fn verify_wardrop(routing: &Routing, flow: &FlowAssignment, eps: f64) -> Result<WardropReport> {
    let instance = routing.instance();
    flow.check_feasible(instance)?;
    Ok(assess(routing, flow.clone(), eps, 0))
}

pub(crate) fn assess(
    routing: &Routing,
    flow: FlowAssignment,
    eps: f64,
    iterations: usize,
) -> WardropReport {
    let instance = routing.instance();
    let costs = routing.path_costs(&flow);
    let mut vi_gap = 0.0;
    let mut min_path_cost = Vec::with_capacity(costs.len());
    let mut max_used_path_cost = Vec::with_capacity(costs.len());
    for (i, costs) in costs.iter().enumerate() {
        let used_floor = tolerance::USED_FLOW * instance.commodity(i).demand();
        let min = costs.iter().copied().fold(f64::INFINITY, f64::min);
        let mut max_used = min;
        for (&c, &f) in costs.iter().zip(flow.path_flows(i)) {
            vi_gap += f * (c - min);
            if f > used_floor {
                max_used = max_used.max(c);
            }
        }
        min_path_cost.push(min);
        max_used_path_cost.push(max_used);
    }
    let cost = edge_cost(instance, &flow);
    WardropReport {
        converged: vi_gap <= eps * instance.total_demand(),
        flow,
        cost,
        min_path_cost,
        max_used_path_cost,
        vi_gap,
        iterations,
    }
}
