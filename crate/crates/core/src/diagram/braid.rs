//! Closed braids: a planar source of random diagrams.

use alloc::vec::Vec;

use super::{ArcId, Diagram, Node, NodeKind};

/// Braid generator acting on positions `i` and `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// Positive crossing.
    Sigma(usize),
    /// Negative crossing.
    SigmaInv(usize),
    /// Singular crossing.
    Tau(usize),
}

impl Generator {
    pub fn position(self) -> usize {
        match self {
            Generator::Sigma(i) | Generator::SigmaInv(i) | Generator::Tau(i) => i,
        }
    }

    fn kind(self) -> NodeKind {
        match self {
            Generator::Sigma(_) => NodeKind::Positive,
            Generator::SigmaInv(_) => NodeKind::Negative,
            Generator::Tau(_) => NodeKind::Singular,
        }
    }
}

/// Trace closure of a braid on `strands` strands. Untouched strands close to
/// free loops.
pub fn braid_closure(strands: usize, word: &[Generator]) -> Diagram {
    let mut cur: Vec<ArcId> = (0..strands as ArcId).collect();
    let mut next = strands as ArcId;
    let mut nodes = Vec::with_capacity(word.len());
    for g in word {
        let i = g.position();
        assert!(i + 1 < strands, "generator outside the braid");
        let (ne, nw) = (next, next + 1);
        next += 2;
        nodes.push(Node::new(g.kind(), [cur[i], cur[i + 1], ne, nw]));
        cur[i + 1] = ne;
        cur[i] = nw;
    }
    let rename = |a: ArcId| cur.iter().position(|&c| c == a).map_or(a, |p| p as ArcId);
    let nodes: Vec<Node> = nodes
        .into_iter()
        .map(|n| Node::new(n.kind, n.arcs.map(|a| if a >= strands as ArcId { rename(a) } else { a })))
        .collect();
    let loops = (0..strands).filter(|&p| cur[p] == p as ArcId).map(|p| p as ArcId).collect();
    let (d, _) = Diagram::new_unchecked(nodes, loops).compact();
    d
}
