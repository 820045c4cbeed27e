//! Oriented diagrams of classical and singular links.
//!
//! A node stores its four arcs counterclockwise as `[in0, in1, out2, out3]`:
//! slot 0 is the incoming arc whose counterclockwise neighbour is the other
//! incoming arc. Strands run `0 -> 2` and `1 -> 3`. For a positive crossing
//! strand 0 is over, for a negative one strand 1 is over.

pub mod braid;
pub mod canon;
pub mod color;
pub mod faces;
pub mod moves;
pub(crate) mod surgery;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub use color::{ColorPartition, ColoredDiagram, Coloration, Label};
pub use faces::Faces;
pub use moves::{Move, Side};

pub type ArcId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    Positive,
    Negative,
    Singular,
}

impl NodeKind {
    pub fn is_classical(self) -> bool {
        self != NodeKind::Singular
    }

    pub fn switched(self) -> NodeKind {
        match self {
            NodeKind::Positive => NodeKind::Negative,
            NodeKind::Negative => NodeKind::Positive,
            NodeKind::Singular => NodeKind::Singular,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    pub kind: NodeKind,
    pub arcs: [ArcId; 4],
}

impl Node {
    pub fn new(kind: NodeKind, arcs: [ArcId; 4]) -> Self {
        Node { kind, arcs }
    }

    /// From a PD tuple. Classical tuples start at the incoming under-strand and run
    /// counterclockwise; `V` tuples list `in, in, out, out` counterclockwise.
    pub fn from_pd(kind: NodeKind, [a, b, c, d]: [ArcId; 4]) -> Self {
        match kind {
            NodeKind::Positive => Node::new(kind, [d, a, b, c]),
            NodeKind::Negative | NodeKind::Singular => Node::new(kind, [a, b, c, d]),
        }
    }

    pub fn pd(&self) -> [ArcId; 4] {
        let [p, q, r, s] = self.arcs;
        match self.kind {
            NodeKind::Positive => [q, r, s, p],
            _ => [p, q, r, s],
        }
    }

    /// Strand (0 or 1) passing over; `None` for a vertex.
    pub fn over_strand(&self) -> Option<usize> {
        match self.kind {
            NodeKind::Positive => Some(0),
            NodeKind::Negative => Some(1),
            NodeKind::Singular => None,
        }
    }

    /// Strand index (0 or 1) of a slot.
    pub fn strand_of_slot(slot: usize) -> usize {
        slot % 2
    }
}

/// A slot of a node: one end of an arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Half {
    pub node: usize,
    pub slot: usize,
}

impl Half {
    pub fn new(node: usize, slot: usize) -> Self {
        Half { node, slot }
    }

    /// Next slot counterclockwise at the same node.
    pub fn ccw(self) -> Half {
        Half::new(self.node, (self.slot + 1) % 4)
    }

    pub fn cw(self) -> Half {
        Half::new(self.node, (self.slot + 3) % 4)
    }

    pub fn is_out(self) -> bool {
        self.slot >= 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArcEnds {
    pub tail: Half,
    pub head: Half,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Diagram {
    nodes: Vec<Node>,
    loops: Vec<ArcId>,
}

/// A closed strand: its arcs in traversal order starting from the smallest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub arcs: Vec<ArcId>,
    pub free_loop: bool,
}

impl Component {
    pub fn min_arc(&self) -> ArcId {
        self.arcs[0]
    }
}

impl Diagram {
    pub fn new(nodes: Vec<Node>, mut loops: Vec<ArcId>) -> Result<Self> {
        loops.sort_unstable();
        let d = Diagram { nodes, loops };
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn new_unchecked(nodes: Vec<Node>, mut loops: Vec<ArcId>) -> Self {
        loops.sort_unstable();
        Diagram { nodes, loops }
    }

    pub fn unknot() -> Self {
        Diagram::new_unchecked(Vec::new(), alloc::vec![0])
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, n: usize) -> Result<&Node> {
        self.nodes.get(n).ok_or(Error::NoSuchNode(n))
    }

    pub fn free_loops(&self) -> &[ArcId] {
        &self.loops
    }

    pub fn arc_at(&self, h: Half) -> ArcId {
        self.nodes[h.node].arcs[h.slot]
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.loops.is_empty()
    }

    pub fn classical_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.kind.is_classical()).count()
    }

    pub fn singular_count(&self) -> usize {
        self.nodes.len() - self.classical_count()
    }

    fn validate(&self) -> Result<()> {
        let mut tails: BTreeMap<ArcId, usize> = BTreeMap::new();
        let mut heads: BTreeMap<ArcId, usize> = BTreeMap::new();
        for n in &self.nodes {
            for (slot, &a) in n.arcs.iter().enumerate() {
                let tally = if slot >= 2 { &mut tails } else { &mut heads };
                *tally.entry(a).or_default() += 1;
            }
        }
        for (&a, &k) in &tails {
            if k != 1 {
                return Err(Error::InvalidDiagram(format!("arc {a} leaves {k} nodes")));
            }
            if !heads.contains_key(&a) {
                return Err(Error::InvalidDiagram(format!(
                    "arc {a} is used once or is oriented inconsistently"
                )));
            }
        }
        for (&a, &k) in &heads {
            if k != 1 {
                return Err(Error::InvalidDiagram(format!("arc {a} enters {k} nodes")));
            }
            if !tails.contains_key(&a) {
                return Err(Error::InvalidDiagram(format!(
                    "arc {a} is used once or is oriented inconsistently"
                )));
            }
        }
        for w in self.loops.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidDiagram(format!("loop {} repeated", w[0])));
            }
        }
        for l in &self.loops {
            if tails.contains_key(l) {
                return Err(Error::InvalidDiagram(format!("loop {l} also used by a node")));
            }
        }
        Ok(())
    }

    pub fn arc_ends(&self) -> BTreeMap<ArcId, ArcEnds> {
        let mut tails = BTreeMap::new();
        let mut heads = BTreeMap::new();
        for (v, n) in self.nodes.iter().enumerate() {
            for (slot, &a) in n.arcs.iter().enumerate() {
                if slot >= 2 {
                    tails.insert(a, Half::new(v, slot));
                } else {
                    heads.insert(a, Half::new(v, slot));
                }
            }
        }
        tails
            .into_iter()
            .map(|(a, tail)| (a, ArcEnds { tail, head: heads[&a] }))
            .collect()
    }

    /// Every arc id in use, including free loops.
    pub fn arcs(&self) -> Vec<ArcId> {
        let mut v: Vec<ArcId> = self
            .nodes
            .iter()
            .flat_map(|n| n.arcs[2..].iter().copied())
            .chain(self.loops.iter().copied())
            .collect();
        v.sort_unstable();
        v
    }

    pub fn max_arc(&self) -> Option<ArcId> {
        self.arcs().last().copied()
    }

    /// Arc following `a` along its strand.
    pub fn next_arc(&self, ends: &BTreeMap<ArcId, ArcEnds>, a: ArcId) -> ArcId {
        match ends.get(&a) {
            None => a,
            Some(e) => self.nodes[e.head.node].arcs[e.head.slot + 2],
        }
    }

    /// Components ordered by smallest contained arc; arcs listed from that arc
    /// along the orientation.
    pub fn components(&self) -> Vec<Component> {
        let ends = self.arc_ends();
        let mut seen: BTreeMap<ArcId, ()> = BTreeMap::new();
        let mut out = Vec::new();
        for a in self.arcs() {
            if seen.contains_key(&a) {
                continue;
            }
            if self.loops.binary_search(&a).is_ok() {
                seen.insert(a, ());
                out.push(Component { arcs: alloc::vec![a], free_loop: true });
                continue;
            }
            let mut arcs = Vec::new();
            let mut cur = a;
            loop {
                seen.insert(cur, ());
                arcs.push(cur);
                cur = self.next_arc(&ends, cur);
                if cur == a {
                    break;
                }
            }
            out.push(Component { arcs, free_loop: false });
        }
        out
    }

    /// Component index of every arc.
    pub fn component_of_arcs(&self) -> BTreeMap<ArcId, usize> {
        let mut m = BTreeMap::new();
        for (i, c) in self.components().iter().enumerate() {
            for &a in &c.arcs {
                m.insert(a, i);
            }
        }
        m
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub(crate) fn with_kind(&self, n: usize, kind: NodeKind) -> Diagram {
        let mut d = self.clone();
        d.nodes[n].kind = kind;
        d
    }

    pub fn switch_crossing(&self, n: usize) -> Result<Diagram> {
        let node = self.node(n)?;
        if !node.kind.is_classical() {
            return Err(Error::SingularNode(n));
        }
        Ok(self.with_kind(n, node.kind.switched()))
    }

    pub fn make_singular(&self, n: usize) -> Result<Diagram> {
        let node = self.node(n)?;
        if !node.kind.is_classical() {
            return Err(Error::SingularNode(n));
        }
        Ok(self.with_kind(n, NodeKind::Singular))
    }

    /// Relabels arcs `0..` in order of first appearance and sorts nothing else.
    pub fn compact(&self) -> (Diagram, BTreeMap<ArcId, ArcId>) {
        let map: BTreeMap<ArcId, ArcId> = self
            .arcs()
            .into_iter()
            .enumerate()
            .map(|(i, a)| (a, i as ArcId))
            .collect();
        let nodes = self
            .nodes
            .iter()
            .map(|n| Node::new(n.kind, n.arcs.map(|a| map[&a])))
            .collect();
        let loops = self.loops.iter().map(|a| map[a]).collect();
        (Diagram::new_unchecked(nodes, loops), map)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::vec;

    pub(crate) fn hopf_pos() -> Diagram {
        Diagram::new(
            vec![
                Node::from_pd(NodeKind::Positive, [1, 3, 2, 0]),
                Node::from_pd(NodeKind::Positive, [3, 1, 0, 2]),
            ],
            vec![],
        )
        .unwrap()
    }

    pub(crate) fn trefoil() -> Diagram {
        Diagram::new(
            vec![
                Node::from_pd(NodeKind::Positive, [0, 4, 1, 3]),
                Node::from_pd(NodeKind::Positive, [4, 2, 5, 1]),
                Node::from_pd(NodeKind::Positive, [2, 0, 3, 5]),
            ],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn pd_round_trip() {
        for kind in [NodeKind::Positive, NodeKind::Negative, NodeKind::Singular] {
            let n = Node::from_pd(kind, [5, 6, 7, 8]);
            assert_eq!(n.pd(), [5, 6, 7, 8]);
        }
    }

    #[test]
    fn component_counts() {
        assert_eq!(Diagram::unknot().component_count(), 1);
        assert_eq!(hopf_pos().component_count(), 2);
        assert_eq!(trefoil().component_count(), 1);
    }

    #[test]
    fn arc_used_once_is_rejected() {
        let r = Diagram::new(vec![Node::from_pd(NodeKind::Positive, [0, 1, 2, 3])], vec![]);
        assert!(r.is_err());
    }

    #[test]
    fn switch_is_involution() {
        let d = hopf_pos();
        let back = d.switch_crossing(0).unwrap().switch_crossing(0).unwrap();
        assert_eq!(back, d);
        let s = d.make_singular(1).unwrap();
        assert!(s.switch_crossing(1).is_err());
        assert!(d.make_singular(7).is_err());
    }
}
