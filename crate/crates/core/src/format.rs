//! JSON and CSV file formats.
//!
//! * graph: `{"nodes":[{"id":str,"layer":int}...], "edges":[[str,str]...]}`
//! * chain: `{"B":[...], "J":[...]}`
//! * hamiltonian: `{"graph":<graph>, "entries":[["x","y",value]...]}`; layer
//!   weights are recomputed on load
//! * fidelity trace: CSV with header `t,fidelity`, floats to 17 significant
//!   digits

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::chain::{JacobiChain, PstReport};
use crate::error::{Error, Result};
use crate::evolve::FidelityTrace;
use crate::graph::{validate_layered, LayeredGraph, NodeId};
use crate::layered::LayeredHamiltonian;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeRecord {
    pub id: String,
    pub layer: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<[String; 2]>,
}

impl GraphFile {
    pub fn from_graph(g: &LayeredGraph) -> Self {
        let (nodes, edges) = g.to_raw();
        GraphFile {
            nodes: nodes
                .into_iter()
                .map(|(id, layer)| NodeRecord {
                    id: id.as_str().to_owned(),
                    layer,
                })
                .collect(),
            edges: edges
                .into_iter()
                .map(|(a, b)| [a.as_str().to_owned(), b.as_str().to_owned()])
                .collect(),
        }
    }

    pub fn into_graph(self) -> Result<LayeredGraph> {
        let nodes = self
            .nodes
            .into_iter()
            .map(|r| (NodeId::new(r.id), r.layer))
            .collect();
        let edges = self
            .edges
            .into_iter()
            .map(|[a, b]| (NodeId::new(a), NodeId::new(b)))
            .collect();
        validate_layered(nodes, edges)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    #[serde(rename = "B")]
    pub diagonal: Vec<f64>,
    #[serde(rename = "J")]
    pub couplings: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianFile {
    pub graph: GraphFile,
    pub entries: Vec<(String, String, f64)>,
}

pub fn graph_to_json(g: &LayeredGraph) -> String {
    serde_json::to_string_pretty(&GraphFile::from_graph(g)).expect("graph serializes")
}

pub fn graph_from_json(text: &str) -> Result<LayeredGraph> {
    serde_json::from_str::<GraphFile>(text)?.into_graph()
}

pub fn chain_to_json(c: &JacobiChain) -> String {
    let file = ChainFile {
        diagonal: c.diagonal().to_vec(),
        couplings: c.couplings().to_vec(),
    };
    serde_json::to_string_pretty(&file).expect("chain serializes")
}

pub fn chain_from_json(text: &str) -> Result<JacobiChain> {
    let file: ChainFile = serde_json::from_str(text)?;
    JacobiChain::new(file.diagonal, file.couplings)
}

pub fn hamiltonian_to_json(h: &LayeredHamiltonian) -> String {
    let g = h.graph();
    let file = HamiltonianFile {
        graph: GraphFile::from_graph(g),
        entries: h
            .entries()
            .map(|(x, y, v)| (g.id(x).as_str().to_owned(), g.id(y).as_str().to_owned(), v))
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("hamiltonian serializes")
}

pub fn hamiltonian_from_json(text: &str) -> Result<LayeredHamiltonian> {
    let file: HamiltonianFile = serde_json::from_str(text)?;
    let graph = Arc::new(file.graph.into_graph()?);
    let lookup = |id: String| {
        let id = NodeId::new(id);
        graph.index_of(&id).ok_or(Error::UnknownNode(id))
    };
    let entries = file
        .entries
        .into_iter()
        .map(|(x, y, v)| Ok((lookup(x)?, lookup(y)?, v)))
        .collect::<Result<Vec<_>>>()?;
    LayeredHamiltonian::from_entries(graph.clone(), entries)
}

pub fn report_to_json(r: &PstReport) -> String {
    serde_json::to_string_pretty(r).expect("report serializes")
}

/// `x` in scientific notation with 17 significant digits.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// A JSON number written with 17 significant digits (`null` if non-finite).
pub fn sig17_value(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(Number::from_str(&sig17(x)).expect("formatted float parses"))
}

pub fn trace_to_csv(trace: &FidelityTrace) -> String {
    let mut out = String::from("t,fidelity\n");
    for (t, f) in trace.times.iter().zip(&trace.fidelities) {
        writeln!(out, "{},{}", sig17(*t), sig17(*f)).expect("writing to a string");
    }
    out
}
