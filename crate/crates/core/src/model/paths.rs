use super::flow::FlowAssignment;
use super::network::{Commodity, Instance, Network};
use crate::error::{Error, Result};
use crate::tolerance;

/// A simple directed path, stored as edge indices in travel order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    edges: Vec<usize>,
}

impl Path {
    pub fn new(edges: Vec<usize>) -> Self {
        Self { edges }
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.contains(&e)
    }

    /// Edge ids joined by `,`.
    pub fn label(&self, network: &Network) -> String {
        self.edges
            .iter()
            .map(|&e| network.edge(e).id())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// All simple `source -> sink` paths of `commodity`, ordered
/// lexicographically by edge-id sequence.
pub fn enumerate_paths(network: &Network, commodity: &Commodity, cap: usize) -> Result<Vec<Path>> {
    enumerate_for(network, commodity, cap)
}

fn enumerate_for(network: &Network, commodity: &Commodity, cap: usize) -> Result<Vec<Path>> {
    let out = network.out_edges_sorted();
    let mut paths = Vec::new();
    let mut on_path = vec![false; network.nodes().len()];
    let mut stack: Vec<usize> = Vec::new();
    // each frame: (node, next outgoing slot)
    let mut frames: Vec<(usize, usize)> = vec![(commodity.source(), 0)];
    on_path[commodity.source()] = true;

    while let Some(frame) = frames.last_mut() {
        let (v, slot) = *frame;
        if slot == out[v].len() {
            frames.pop();
            on_path[v] = false;
            stack.pop();
            continue;
        }
        frame.1 += 1;
        let e = out[v][slot];
        let w = network.edge(e).head();
        if on_path[w] {
            continue;
        }
        if w == commodity.sink() {
            let mut edges = stack.clone();
            edges.push(e);
            paths.push(Path::new(edges));
            if paths.len() > cap {
                return Err(Error::PathExplosion { commodity: 0, cap });
            }
            continue;
        }
        on_path[w] = true;
        stack.push(e);
        frames.push((w, 0));
    }

    if paths.is_empty() {
        return Err(Error::NoPath {
            commodity: 0,
            from: network.node_name(commodity.source()).to_string(),
            to: network.node_name(commodity.sink()).to_string(),
        });
    }
    Ok(paths)
}

/// An instance together with the enumerated path sets of its commodities.
#[derive(Debug, Clone)]
pub struct Routing {
    instance: Instance,
    paths: Vec<Vec<Path>>,
}

impl Routing {
    pub fn new(instance: Instance) -> Result<Self> {
        Self::with_cap(instance, tolerance::DEFAULT_PATH_CAP)
    }

    pub fn with_cap(instance: Instance, cap: usize) -> Result<Self> {
        let paths = instance
            .commodities()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                enumerate_for(instance.network(), c, cap).map_err(|err| match err {
                    Error::PathExplosion { cap, .. } => Error::PathExplosion { commodity: i, cap },
                    Error::NoPath { from, to, .. } => Error::NoPath {
                        commodity: i,
                        from,
                        to,
                    },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { instance, paths })
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn k(&self) -> usize {
        self.instance.k()
    }

    pub fn paths(&self, commodity: usize) -> &[Path] {
        &self.paths[commodity]
    }

    pub fn path_counts(&self) -> Vec<usize> {
        self.paths.iter().map(Vec::len).collect()
    }

    /// `"<commodity>:<edge ids>"`, used as the path key in reports.
    pub fn path_id(&self, commodity: usize, path: usize) -> String {
        format!(
            "{commodity}:{}",
            self.paths[commodity][path].label(self.instance.network())
        )
    }

    /// Builds a flow from per-commodity path flows, aligned with
    /// [`Routing::paths`]. Feasibility is not checked here.
    pub fn flow(&self, path_flows: Vec<Vec<f64>>) -> Result<FlowAssignment> {
        if path_flows.len() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                got: path_flows.len(),
            });
        }
        for (i, flows) in path_flows.iter().enumerate() {
            if flows.len() != self.paths[i].len() {
                return Err(Error::DimensionMismatch {
                    expected: self.paths[i].len(),
                    got: flows.len(),
                });
            }
            if let Some(&bad) = flows.iter().find(|f| !f.is_finite() || **f < 0.0) {
                return Err(Error::InvalidInstance(format!(
                    "commodity {i} has invalid path flow {bad}"
                )));
            }
        }
        Ok(FlowAssignment::from_paths(
            &self.paths,
            self.instance.num_edges(),
            path_flows,
        ))
    }

    /// Each commodity routes its whole demand on path `choices[i]`.
    pub fn corner_flow(&self, choices: &[usize]) -> FlowAssignment {
        let path_flows = self
            .paths
            .iter()
            .zip(choices)
            .enumerate()
            .map(|(i, (paths, &c))| {
                let mut flows = vec![0.0; paths.len()];
                flows[c] = self.instance.commodity(i).demand();
                flows
            })
            .collect();
        FlowAssignment::from_paths(&self.paths, self.instance.num_edges(), path_flows)
    }

    /// Each commodity splits its demand evenly over its paths.
    pub fn uniform_flow(&self) -> FlowAssignment {
        let path_flows = self
            .paths
            .iter()
            .enumerate()
            .map(|(i, paths)| {
                let share = self.instance.commodity(i).demand() / paths.len() as f64;
                vec![share; paths.len()]
            })
            .collect();
        FlowAssignment::from_paths(&self.paths, self.instance.num_edges(), path_flows)
    }

    /// `delays[e * k + i]` is the delay commodity `i` sees on edge `e`.
    pub fn edge_delays(&self, flow: &FlowAssignment) -> Vec<f64> {
        let k = self.k();
        let mut delays = Vec::with_capacity(self.instance.num_edges() * k);
        for (e, edge) in self.instance.network().edges().iter().enumerate() {
            let x = flow.edge_vector(e);
            for i in 0..k {
                delays.push(edge.delay().delay(i).eval(x));
            }
        }
        delays
    }

    /// Path delays of every commodity under `flow`.
    pub fn path_costs(&self, flow: &FlowAssignment) -> Vec<Vec<f64>> {
        let delays = self.edge_delays(flow);
        self.path_costs_from(&delays)
    }

    pub(crate) fn path_costs_from(&self, delays: &[f64]) -> Vec<Vec<f64>> {
        let k = self.k();
        self.paths
            .iter()
            .enumerate()
            .map(|(i, paths)| {
                paths
                    .iter()
                    .map(|p| p.edges().iter().map(|&e| delays[e * k + i]).sum())
                    .collect()
            })
            .collect()
    }

    /// Social cost accumulated over paths: `sum_i sum_P f_P * cost(P)`.
    pub fn path_accounted_cost(&self, flow: &FlowAssignment) -> f64 {
        self.path_costs(flow)
            .iter()
            .enumerate()
            .map(|(i, costs)| {
                costs
                    .iter()
                    .zip(flow.path_flows(i))
                    .map(|(c, f)| c * f)
                    .sum::<f64>()
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::polynomial::{EdgeDelaySpec, PolynomialDelay};

    fn lin() -> EdgeDelaySpec {
        EdgeDelaySpec::shared(PolynomialDelay::affine(&[1.0], 0.0).unwrap())
    }

    fn labels(routing: &Routing) -> Vec<String> {
        routing
            .paths(0)
            .iter()
            .map(|p| p.label(routing.instance().network()))
            .collect()
    }

    #[test]
    fn parallel_links() {
        let inst = Instance::builder()
            .nodes(["s", "t"])
            .edge("a", "s", "t", lin())
            .edge("b", "s", "t", lin())
            .commodity("s", "t", 1.0)
            .build()
            .unwrap();
        let routing = Routing::new(inst).unwrap();
        assert_eq!(labels(&routing), ["a", "b"]);
    }

    #[test]
    fn diamond_with_shortcut() {
        let inst = Instance::builder()
            .nodes(["s", "u", "v", "t"])
            .edge("su", "s", "u", lin())
            .edge("ut", "u", "t", lin())
            .edge("sv", "s", "v", lin())
            .edge("vt", "v", "t", lin())
            .edge("st", "s", "t", lin())
            .commodity("s", "t", 1.0)
            .build()
            .unwrap();
        let routing = Routing::new(inst).unwrap();
        assert_eq!(labels(&routing), ["st", "su,ut", "sv,vt"]);
    }

    #[test]
    fn path_cap_and_no_path() {
        let inst = Instance::builder()
            .nodes(["s", "t"])
            .edge("a", "s", "t", lin())
            .edge("b", "s", "t", lin())
            .edge("c", "s", "t", lin())
            .commodity("s", "t", 1.0)
            .build()
            .unwrap();
        assert_eq!(
            Routing::with_cap(inst.clone(), 2).unwrap_err(),
            Error::PathExplosion {
                commodity: 0,
                cap: 2
            }
        );
        assert!(Routing::with_cap(inst, 3).is_ok());

        let err = Instance::builder()
            .nodes(["s", "t"])
            .edge("a", "t", "s", lin())
            .commodity("s", "t", 1.0)
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::NoPath { commodity: 0, .. }));
    }

    #[test]
    fn cycles_are_not_followed() {
        let inst = Instance::builder()
            .nodes(["s", "u", "t"])
            .edge("a", "s", "u", lin())
            .edge("b", "u", "s", lin())
            .edge("c", "u", "t", lin())
            .commodity("s", "t", 1.0)
            .build()
            .unwrap();
        let routing = Routing::new(inst).unwrap();
        assert_eq!(labels(&routing), ["a,c"]);
    }
}
