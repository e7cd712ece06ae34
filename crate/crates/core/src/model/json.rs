//! JSON instance files.
//!
//! ```json
//! {
//!   "nodes": ["s", "t"],
//!   "edges": [{"id": "e1", "tail": "s", "head": "t",
//!              "delays": [{"terms": [{"coeff": 1.0, "exp": [1]}], "const": 0.0}]}],
//!   "commodities": [{"source": "s", "sink": "t", "demand": 1.0}]
//! }
//! ```
//!
//! `delays` holds one polynomial per commodity. Unknown fields are rejected.

use serde::{Deserialize, Serialize};

use super::network::Instance;
use super::polynomial::{EdgeDelaySpec, Monomial, PolynomialDelay};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeFile>,
    pub commodities: Vec<CommodityFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub id: String,
    pub tail: String,
    pub head: String,
    pub delays: Vec<PolynomialFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialFile {
    pub terms: Vec<TermFile>,
    #[serde(rename = "const")]
    pub constant: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub coeff: f64,
    pub exp: Vec<u32>,
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<Instance> {
        let k = self.commodities.len();
        let mut builder = Instance::builder().nodes(self.nodes);
        for (ei, edge) in self.edges.into_iter().enumerate() {
            if edge.delays.len() != k {
                return Err(Error::InvalidInstance(format!(
                    "edges[{ei}].delays: expected {k} polynomials, got {}",
                    edge.delays.len()
                )));
            }
            let mut per_commodity = Vec::with_capacity(k);
            for (pi, poly) in edge.delays.into_iter().enumerate() {
                let field = format!("edges[{ei}].delays[{pi}]");
                let mut terms = Vec::with_capacity(poly.terms.len());
                for (ti, term) in poly.terms.into_iter().enumerate() {
                    if term.exp.len() != k {
                        return Err(Error::InvalidInstance(format!(
                            "{field}.terms[{ti}].exp: expected {k} exponents, got {}",
                            term.exp.len()
                        )));
                    }
                    let m = Monomial::new(term.coeff, term.exp)
                        .map_err(|e| at(format!("{field}.terms[{ti}].coeff"), e))?;
                    terms.push(m);
                }
                let p = PolynomialDelay::new(k, terms, poly.constant)
                    .map_err(|e| at(format!("{field}.const"), e))?;
                per_commodity.push(p);
            }
            builder = builder.edge(
                edge.id,
                edge.tail,
                edge.head,
                EdgeDelaySpec::new(per_commodity)?,
            );
        }
        for c in self.commodities {
            builder = builder.commodity(c.source, c.sink, c.demand);
        }
        builder.build()
    }

    pub fn from_instance(instance: &Instance) -> Self {
        let network = instance.network();
        let edges = network
            .edges()
            .iter()
            .map(|edge| EdgeFile {
                id: edge.id().to_string(),
                tail: network.node_name(edge.tail()).to_string(),
                head: network.node_name(edge.head()).to_string(),
                delays: edge
                    .delay()
                    .per_commodity()
                    .iter()
                    .map(|p| PolynomialFile {
                        terms: p
                            .terms()
                            .iter()
                            .map(|t| TermFile {
                                coeff: t.coeff(),
                                exp: t.exponents().to_vec(),
                            })
                            .collect(),
                        constant: p.constant(),
                    })
                    .collect(),
            })
            .collect();
        let commodities = instance
            .commodities()
            .iter()
            .map(|c| CommodityFile {
                source: network.node_name(c.source()).to_string(),
                sink: network.node_name(c.sink()).to_string(),
                demand: c.demand(),
            })
            .collect();
        Self {
            nodes: network.nodes().to_vec(),
            edges,
            commodities,
        }
    }
}

/// Prefixes a validation error with the offending field path.
fn at(field: String, err: Error) -> Error {
    match err {
        Error::InvalidInstance(msg) => Error::InvalidInstance(format!("{field}: {msg}")),
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommodityFile {
    pub source: String,
    pub sink: String,
    pub demand: f64,
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidInstance(e.to_string()))?;
        file.into_instance()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&InstanceFile::from_instance(self))
            .expect("instance serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PARALLEL: &str = r#"{
        "nodes": ["s", "t"],
        "edges": [
            {"id": "top", "tail": "s", "head": "t",
             "delays": [{"terms": [{"coeff": 1.0, "exp": [1]}], "const": 0.0}]},
            {"id": "bottom", "tail": "s", "head": "t",
             "delays": [{"terms": [], "const": 1.0}]}
        ],
        "commodities": [{"source": "s", "sink": "t", "demand": 1.0}]
    }"#;

    #[test]
    fn parses_pigou_network() {
        let inst = Instance::from_json(PARALLEL).unwrap();
        assert_eq!(inst.num_edges(), 2);
        assert_eq!(inst.k(), 1);
        let again = Instance::from_json(&inst.to_json()).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn unknown_field_is_named() {
        let text = PARALLEL.replace("\"demand\": 1.0", "\"demand\": 1.0, \"weight\": 2");
        let err = Instance::from_json(&text).unwrap_err().to_string();
        assert!(err.contains("weight"), "{err}");
    }

    #[test]
    fn exponent_length_is_checked() {
        let text = PARALLEL.replace("\"exp\": [1]", "\"exp\": [1, 0]");
        let err = Instance::from_json(&text).unwrap_err().to_string();
        assert!(err.contains("edges[0].delays[0].terms[0].exp"), "{err}");
    }

    #[test]
    fn missing_field_is_named() {
        let text = PARALLEL.replace(", \"const\": 1.0", "");
        let err = Instance::from_json(&text).unwrap_err().to_string();
        assert!(err.contains("const"), "{err}");
    }
}
