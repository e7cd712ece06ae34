use std::collections::{HashMap, HashSet, VecDeque};

use super::classify::Classification;
use super::polynomial::EdgeDelaySpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    id: String,
    tail: usize,
    head: usize,
    delay: EdgeDelaySpec,
}

impl Edge {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn tail(&self) -> usize {
        self.tail
    }

    pub fn head(&self) -> usize {
        self.head
    }

    pub fn delay(&self) -> &EdgeDelaySpec {
        &self.delay
    }
}

/// Directed multigraph. Parallel edges are told apart by id only.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    nodes: Vec<String>,
    edges: Vec<Edge>,
}

impl Network {
    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn node_name(&self, v: usize) -> &str {
        &self.nodes[v]
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    /// Outgoing edge indices of `v`, sorted by edge id.
    pub(crate) fn out_edges_sorted(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            out[edge.tail].push(e);
        }
        for list in &mut out {
            list.sort_by(|&a, &b| self.edges[a].id.cmp(&self.edges[b].id));
        }
        out
    }

    fn reachable(&self, from: usize, to: usize) -> bool {
        let out = self.out_edges_sorted();
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(v) = queue.pop_front() {
            if v == to {
                return true;
            }
            for &e in &out[v] {
                let w = self.edges[e].head;
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }
}

/// Source, sink and demand of one commodity.
#[derive(Debug, Clone, PartialEq)]
pub struct Commodity {
    source: usize,
    sink: usize,
    demand: f64,
}

impl Commodity {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn demand(&self) -> f64 {
        self.demand
    }
}

/// A routing game `(G, R, Phi)` with its cached delay classification.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    network: Network,
    commodities: Vec<Commodity>,
    classification: Classification,
}

impl Instance {
    pub fn builder() -> InstanceBuilder {
        InstanceBuilder::default()
    }

    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn commodities(&self) -> &[Commodity] {
        &self.commodities
    }

    pub fn commodity(&self, i: usize) -> &Commodity {
        &self.commodities[i]
    }

    /// Number of commodities.
    pub fn k(&self) -> usize {
        self.commodities.len()
    }

    pub fn num_edges(&self) -> usize {
        self.network.edges.len()
    }

    pub fn demands(&self) -> Vec<f64> {
        self.commodities.iter().map(|c| c.demand).collect()
    }

    pub fn total_demand(&self) -> f64 {
        self.commodities.iter().map(|c| c.demand).sum()
    }

    pub fn classification(&self) -> &Classification {
        &self.classification
    }
}

#[derive(Debug, Clone, Default)]
pub struct InstanceBuilder {
    nodes: Vec<String>,
    edges: Vec<(String, String, String, EdgeDelaySpec)>,
    commodities: Vec<(String, String, f64)>,
}

impl InstanceBuilder {
    pub fn node(mut self, name: impl Into<String>) -> Self {
        self.nodes.push(name.into());
        self
    }

    pub fn nodes<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.nodes.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn edge(
        mut self,
        id: impl Into<String>,
        tail: impl Into<String>,
        head: impl Into<String>,
        delay: EdgeDelaySpec,
    ) -> Self {
        self.edges
            .push((id.into(), tail.into(), head.into(), delay));
        self
    }

    pub fn commodity(
        mut self,
        source: impl Into<String>,
        sink: impl Into<String>,
        demand: f64,
    ) -> Self {
        self.commodities.push((source.into(), sink.into(), demand));
        self
    }

    pub fn build(self) -> Result<Instance> {
        let invalid = |msg: String| Error::InvalidInstance(msg);
        let mut index = HashMap::new();
        for (v, name) in self.nodes.iter().enumerate() {
            if index.insert(name.clone(), v).is_some() {
                return Err(invalid(format!("duplicate node `{name}`")));
            }
        }
        let lookup = |name: &str, what: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| invalid(format!("{what} `{name}` is not a declared node")))
        };
        let k = self.commodities.len();
        if k == 0 {
            return Err(invalid("instance has no commodities".into()));
        }

        let mut ids = HashSet::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        for (id, tail, head, delay) in self.edges {
            if !ids.insert(id.clone()) {
                return Err(invalid(format!("duplicate edge id `{id}`")));
            }
            let tail = lookup(&tail, &format!("edge `{id}` tail"))?;
            let head = lookup(&head, &format!("edge `{id}` head"))?;
            if tail == head {
                return Err(invalid(format!("edge `{id}` is a self-loop")));
            }
            if delay.k() != k {
                return Err(invalid(format!(
                    "edge `{id}` has {} delay functions for {k} commodities",
                    delay.k()
                )));
            }
            edges.push(Edge {
                id,
                tail,
                head,
                delay,
            });
        }
        let network = Network {
            nodes: self.nodes,
            edges,
        };

        let mut commodities = Vec::with_capacity(k);
        for (i, (source, sink, demand)) in self.commodities.into_iter().enumerate() {
            if !demand.is_finite() || demand <= 0.0 {
                return Err(invalid(format!(
                    "commodity {i} demand must be positive, got {demand}"
                )));
            }
            let s = lookup(&source, &format!("commodity {i} source"))?;
            let t = lookup(&sink, &format!("commodity {i} sink"))?;
            if s == t || !network.reachable(s, t) {
                return Err(Error::NoPath {
                    commodity: i,
                    from: source,
                    to: sink,
                });
            }
            commodities.push(Commodity {
                source: s,
                sink: t,
                demand,
            });
        }

        let classification = Classification::of(&network, k);
        Ok(Instance {
            network,
            commodities,
            classification,
        })
    }
}
