//! JSON form of graphs and partial labelings.
//!
//! `{"schema":1,"nodes":[{"id":0,"ports":{"Up":3}}],"edges":[[0,1]],"labels":{"0":"1","1":null}}`
//! where `null` is a hole. A missing `labels` key means every node is a hole.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Port};
use crate::lcl::{LclProblem, PartialLabeling};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct NodeJson {
    id: NodeId,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    ports: BTreeMap<String, NodeId>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct InstanceJson {
    #[serde(default = "default_schema")]
    schema: u32,
    nodes: Vec<NodeJson>,
    edges: Vec<[NodeId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<BTreeMap<NodeId, Option<String>>>,
}

fn default_schema() -> u32 {
    SCHEMA
}

/// A parsed instance with labels still as names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub labels: Vec<Option<String>>,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), column: e.column(), msg: e.to_string() }
}

pub fn to_json(g: &Graph, labels: Option<&[Option<String>]>) -> String {
    let nodes = (0..g.n())
        .map(|v| NodeJson {
            id: v,
            ports: g
                .adj(v)
                .iter()
                .filter_map(|a| a.port.map(|p| (p.to_string(), a.to)))
                .collect(),
        })
        .collect();
    let doc = InstanceJson {
        schema: SCHEMA,
        nodes,
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        labels: labels.map(|ls| ls.iter().cloned().enumerate().collect()),
    };
    serde_json::to_string(&doc).expect("instance serialization cannot fail")
}

pub fn from_json(text: &str) -> Result<Instance> {
    let doc: InstanceJson = serde_json::from_str(text).map_err(parse_error)?;
    if doc.schema != SCHEMA {
        return Err(Error::InvalidGraph(format!("unsupported schema {}", doc.schema)));
    }
    let n = doc.nodes.len();
    let mut ports: Vec<BTreeMap<NodeId, Port>> = vec![BTreeMap::new(); n];
    let mut seen = vec![false; n];
    for node in &doc.nodes {
        if node.id >= n || std::mem::replace(&mut seen[node.id], true) {
            return Err(Error::InvalidGraph(format!("node ids must be 0..{n} without repeats")));
        }
        for (name, &to) in &node.ports {
            let p: Port = name.parse()?;
            if ports[node.id].insert(to, p).is_some() {
                return Err(Error::InvalidGraph(format!("two ports of node {} name {to}", node.id)));
            }
        }
    }
    let mut g = Graph::new(n);
    for &[u, v] in &doc.edges {
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!("edge ({u},{v}) out of range")));
        }
        g.add_edge_ports(u, v, ports[u].get(&v).copied(), ports[v].get(&u).copied())?;
    }
    for (v, ps) in ports.iter().enumerate() {
        if let Some(&to) = ps.keys().find(|&&to| !g.has_edge(v, to)) {
            return Err(Error::InvalidGraph(format!("port at node {v} names non-neighbor {to}")));
        }
    }
    let mut labels = vec![None; n];
    for (v, l) in doc.labels.unwrap_or_default() {
        if v >= n {
            return Err(Error::InvalidLabeling(format!("label for unknown node {v}")));
        }
        labels[v] = l;
    }
    Ok(Instance { graph: g.canonical(), labels })
}

pub fn write_labeled(problem: &LclProblem, g: &Graph, lab: &PartialLabeling) -> String {
    to_json(g, Some(&problem.decode(lab)))
}

pub fn read_labeled(problem: &LclProblem, text: &str) -> Result<(Graph, PartialLabeling)> {
    let inst = from_json(text)?;
    let lab = problem.encode(&inst.labels)?;
    Ok((inst.graph, lab))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_labels_mean_all_holes() {
        let inst = from_json(r#"{"nodes":[{"id":0},{"id":1}],"edges":[[0,1]]}"#).unwrap();
        assert_eq!(inst.labels, vec![None, None]);
    }

    #[test]
    fn parse_errors_carry_position() {
        match from_json("{\n  \"nodes\": [,]\n}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_port_to_non_neighbor() {
        let r = from_json(r#"{"nodes":[{"id":0,"ports":{"Up":2}},{"id":1},{"id":2}],"edges":[[0,1]]}"#);
        assert!(matches!(r, Err(Error::InvalidGraph(_))));
    }
}
