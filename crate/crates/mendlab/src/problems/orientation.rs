//! {1,3,4}-orientation on grids, encoded as per-node outgoing-port masks.

use crate::graph::{Graph, NodeId, Port};
use crate::lcl::{Label, LclProblem, View};

/// Bit order of the outgoing mask.
pub const PORTS: [Port; 4] = [Port::Up, Port::Down, Port::Left, Port::Right];
const LETTERS: [char; 4] = ['U', 'D', 'L', 'R'];

pub fn bit(p: Port) -> Option<Label> {
    PORTS.iter().position(|&q| q == p).map(|i| 1 << i)
}

pub fn mask_name(mask: Label) -> String {
    let s: String = (0..4).filter(|i| mask & (1 << i) != 0).map(|i| LETTERS[i]).collect();
    if s.is_empty() {
        ".".into()
    } else {
        s
    }
}

pub fn outgoing(mask: Label, p: Port) -> bool {
    bit(p).is_some_and(|b| mask & b != 0)
}

/// Exactly one endpoint of the edge claims it as outgoing.
fn edge_consistent(g: &Graph, u: NodeId, lu: Label, w: NodeId, lw: Label) -> bool {
    match (g.port_towards(u, w), g.port_towards(w, u)) {
        (Some(pu), Some(pw)) => outgoing(lu, pu) != outgoing(lw, pw),
        _ => false,
    }
}

pub fn indegree(g: &Graph, u: NodeId, mask: Label) -> usize {
    g.adj(u).iter().filter(|a| a.port.is_some_and(|p| !outgoing(mask, p))).count()
}

pub fn problem() -> LclProblem {
    let names = (0..16).map(mask_name).collect();
    LclProblem::new_local("orientation134", names, 1, |view: &View| {
        let g = view.graph;
        let u = view.center;
        let m = view.center_label();
        let present: Label = g.adj(u).iter().filter_map(|a| a.port.and_then(bit)).fold(0, |a, b| a | b);
        if m & !present != 0 {
            return false;
        }
        if !g.neighbors(u).all(|w| edge_consistent(g, u, m, w, view.label(w))) {
            return false;
        }
        g.degree(u) != 4 || matches!(indegree(g, u, m), 1 | 3 | 4)
    })
    .with_pair_filter(edge_consistent)
}
