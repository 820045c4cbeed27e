//! Extended Reidemeister moves addressed by explicit sites.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::color::ColoredDiagram;
use super::faces::{node_components, Faces};
use super::surgery::Rewire;
use super::{ArcEnds, ArcId, Diagram, Half, Node, NodeKind};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    /// Insert a curl on `arc`.
    R1Add { arc: ArcId, side: Side, kind: NodeKind },
    /// Remove the curl closed by `arc`.
    R1Remove { arc: ArcId },
    /// Push a finger of `a` across `b` through the face on the given sides.
    R2Add { a: ArcId, a_side: Side, b: ArcId, b_side: Side, a_over: bool },
    /// Undo a bigon whose sides are `arcs`.
    R2Remove { arcs: [ArcId; 2] },
    /// Flip a classical triangle.
    R3 { arcs: [ArcId; 3] },
    /// Pass a strand over or under a vertex.
    R4 { arcs: [ArcId; 3] },
    /// Slide a vertex through an adjacent crossing of the same two strands.
    R5 { arcs: [ArcId; 2] },
}

impl Move {
    pub fn family(&self) -> &'static str {
        match self {
            Move::R1Add { .. } | Move::R1Remove { .. } => "R1",
            Move::R2Add { .. } | Move::R2Remove { .. } => "R2",
            Move::R3 { .. } => "R3",
            Move::R4 { .. } => "R4",
            Move::R5 { .. } => "R5",
        }
    }
}

/// A face with two distinct nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bigon {
    pub arcs: [ArcId; 2],
    pub nodes: [usize; 2],
}

/// A face with three distinct nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub arcs: [ArcId; 3],
    pub nodes: [usize; 3],
}

impl Bigon {
    /// Both sides run from the same node to the other.
    pub fn is_parallel(&self, ends: &BTreeMap<ArcId, ArcEnds>) -> bool {
        ends[&self.arcs[0]].tail.node == ends[&self.arcs[1]].tail.node
    }
}

fn sorted<const N: usize>(mut a: [ArcId; N]) -> [ArcId; N] {
    a.sort_unstable();
    a
}

/// Faces with `k` distinct nodes and `k` sides.
fn faces_of_size<const K: usize>(d: &Diagram, faces: &Faces) -> Vec<([ArcId; K], [usize; K])> {
    let mut out = Vec::new();
    for f in &faces.faces {
        if f.len() != K {
            continue;
        }
        let mut nodes = [0usize; K];
        let mut arcs = [0 as ArcId; K];
        for (i, h) in f.iter().enumerate() {
            nodes[i] = h.node;
            arcs[i] = d.arc_at(*h);
        }
        let mut ns = nodes;
        ns.sort_unstable();
        if ns.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        out.push((sorted(arcs), ns));
    }
    out.sort_unstable();
    out
}

pub fn bigons(d: &Diagram, faces: &Faces) -> Vec<Bigon> {
    faces_of_size::<2>(d, faces)
        .into_iter()
        .map(|(arcs, nodes)| Bigon { arcs, nodes })
        .collect()
}

pub fn triangles(d: &Diagram, faces: &Faces) -> Vec<Triangle> {
    faces_of_size::<3>(d, faces)
        .into_iter()
        .map(|(arcs, nodes)| Triangle { arcs, nodes })
        .collect()
}

/// Arcs closing a curl: tail and head at adjacent slots of one node.
pub fn curl_arcs(d: &Diagram) -> Vec<(ArcId, usize)> {
    let mut out = Vec::new();
    for (v, n) in d.nodes().iter().enumerate() {
        if n.arcs[3] == n.arcs[0] {
            out.push((n.arcs[3], v));
        }
        if n.arcs[2] == n.arcs[1] {
            out.push((n.arcs[2], v));
        }
    }
    out.sort_unstable();
    out
}

/// One strand pass through a triangle: entering arc, first node, inner arc,
/// second node, leaving arc, with the strand index at each node.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Pass {
    pub(crate) inward: ArcId,
    pub(crate) first: (usize, usize),
    pub(crate) inner: ArcId,
    pub(crate) second: (usize, usize),
    pub(crate) outward: ArcId,
}

pub(crate) fn passes(d: &Diagram, ends: &BTreeMap<ArcId, ArcEnds>, arcs: [ArcId; 3]) -> [Pass; 3] {
    arcs.map(|e| {
        let ArcEnds { tail, head } = ends[&e];
        let p = tail.slot - 2;
        let q = head.slot;
        Pass {
            inward: d.nodes()[tail.node].arcs[p],
            first: (tail.node, p),
            inner: e,
            second: (head.node, q),
            outward: d.nodes()[head.node].arcs[q + 2],
        }
    })
}

/// Which pass (index into `passes`) runs over at `node`; `None` for a vertex.
fn over_pass(d: &Diagram, ps: &[Pass; 3], node: usize) -> Option<usize> {
    let over = d.nodes()[node].over_strand()?;
    ps.iter().position(|p| p.first == (node, over) || p.second == (node, over))
}

/// Reverses the order in which each of the three strands meets the other two.
/// Node kinds and the strand-to-slot assignment at each node are kept.
pub fn flip_triangle(cd: &ColoredDiagram, arcs: [ArcId; 3]) -> ColoredDiagram {
    let d = cd.diagram();
    let ends = d.arc_ends();
    let ps = passes(d, &ends, arcs);
    let mut nodes: Vec<Node> = d.nodes().to_vec();
    for p in &ps {
        // the old second node is met first now
        let (n2, j2) = p.second;
        nodes[n2].arcs[j2] = p.inward;
        nodes[n2].arcs[j2 + 2] = p.inner;
        let (n1, j1) = p.first;
        nodes[n1].arcs[j1] = p.inner;
        nodes[n1].arcs[j1 + 2] = p.outward;
    }
    let diagram = Diagram::new_unchecked(nodes, d.free_loops().to_vec());
    ColoredDiagram::from_parts(diagram, cd.labels.clone(), cd.partition.clone())
}

/// Sides of the triangle run around it rather than out of one node.
pub fn triangle_is_cyclic(d: &Diagram, arcs: [ArcId; 3]) -> bool {
    let ps = passes(d, &d.arc_ends(), arcs);
    let mut firsts: Vec<usize> = ps.iter().map(|p| p.first.0).collect();
    firsts.sort_unstable();
    firsts.dedup();
    firsts.len() == 3
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Left => "left",
        Side::Right => "right",
    }
}

impl ColoredDiagram {
    /// Family and orientation variant of `m` on this diagram, e.g. `R2 add left/right over`.
    pub fn move_variant(&self, m: &Move) -> alloc::string::String {
        let d = self.diagram();
        let shape = |arcs: [ArcId; 3]| if triangle_is_cyclic(d, arcs) { "cyclic" } else { "braid" };
        match *m {
            Move::R1Add { side, kind, .. } => format!("R1 add {} {:?}", side_name(side), kind),
            Move::R1Remove { .. } => "R1 remove".into(),
            Move::R2Add { a_side, b_side, a_over, .. } => format!(
                "R2 add {}/{} {}",
                side_name(a_side),
                side_name(b_side),
                if a_over { "over" } else { "under" }
            ),
            Move::R2Remove { arcs } => {
                let ends = d.arc_ends();
                let parallel = ends.get(&arcs[0]).zip(ends.get(&arcs[1])).is_some_and(|(x, y)| x.tail.node == y.tail.node);
                format!("R2 remove {}", if parallel { "parallel" } else { "antiparallel" })
            }
            Move::R3 { arcs } => format!("R3 {}", shape(arcs)),
            Move::R4 { arcs } => {
                let ends = d.arc_ends();
                let ps = passes(d, &ends, arcs);
                let vertex = ps.iter().flat_map(|p| [p.first.0, p.second.0]).find(|&n| d.nodes()[n].kind == NodeKind::Singular);
                let third = vertex.and_then(|v| ps.iter().position(|p| p.first.0 != v && p.second.0 != v));
                let over = third.is_some_and(|k| {
                    let n = ps[k].first.0;
                    over_pass(d, &ps, n) == Some(k)
                });
                format!("R4 {} {}", shape(arcs), if over { "over" } else { "under" })
            }
            Move::R5 { .. } => "R5".into(),
        }
    }
}

fn face_on(faces: &Faces, a: ArcId, side: Side) -> Option<usize> {
    match side {
        Side::Left => faces.left_face(a),
        Side::Right => faces.right_face(a),
    }
}

impl ColoredDiagram {
    pub fn apply_move(&self, m: &Move) -> Result<ColoredDiagram> {
        let d = self.diagram();
        let not_here = || Error::MoveNotApplicable(format!("{m:?}"));
        match *m {
            Move::R1Add { arc, side, kind } => {
                if !kind.is_classical() || !self.labels.contains_key(&arc) {
                    return Err(not_here());
                }
                let ends = d.arc_ends();
                let mut r = Rewire::new(self);
                let (a1, a2) = split(&mut r, &ends, arc);
                let mid = r.fresh(r.label(arc));
                let arcs = match side {
                    Side::Left => [mid, a1, a2, mid],
                    Side::Right => [a1, mid, mid, a2],
                };
                r.add_node(Node::new(kind, arcs));
                Ok(r.finish())
            }
            Move::R1Remove { arc } => {
                let (_, v) = curl_arcs(d)
                    .into_iter()
                    .find(|&(a, _)| a == arc)
                    .ok_or_else(not_here)?;
                if !d.nodes()[v].kind.is_classical() {
                    return Err(not_here());
                }
                self.pass_through(v)
            }
            Move::R2Add { a, a_side, b, b_side, a_over } => self.r2_add(a, a_side, b, b_side, a_over),
            Move::R2Remove { arcs } => {
                let faces = Faces::new(d);
                let bg = bigons(d, &faces)
                    .into_iter()
                    .find(|b| b.arcs == sorted(arcs))
                    .ok_or_else(not_here)?;
                let ends = faces.ends();
                let e = ends[&bg.arcs[0]];
                let over_at = |h: Half| d.nodes()[h.node].over_strand() == Some(Node::strand_of_slot(h.slot));
                let classical = bg.nodes.iter().all(|&n| d.nodes()[n].kind.is_classical());
                if !classical || over_at(e.tail) != over_at(e.head) {
                    return Err(not_here());
                }
                let mut r = Rewire::new(self);
                r.remove_straight(bg.nodes[0]);
                r.remove_straight(bg.nodes[1]);
                Ok(r.finish())
            }
            Move::R3 { arcs } | Move::R4 { arcs } => {
                let faces = Faces::new(d);
                let tri = triangles(d, &faces)
                    .into_iter()
                    .find(|t| t.arcs == sorted(arcs))
                    .ok_or_else(not_here)?;
                let ps = passes(d, faces.ends(), tri.arcs);
                let singular: Vec<usize> = tri
                    .nodes
                    .iter()
                    .copied()
                    .filter(|&n| !d.nodes()[n].kind.is_classical())
                    .collect();
                let ok = match (m, singular.len()) {
                    (Move::R3 { .. }, 0) => {
                        let overs: Vec<usize> =
                            tri.nodes.iter().map(|&n| over_pass(d, &ps, n).expect("classical")).collect();
                        (0..3).any(|k| overs.iter().filter(|&&o| o == k).count() == 2)
                    }
                    (Move::R4 { .. }, 1) => {
                        let sv = singular[0];
                        let on_vertex = |p: &Pass| p.first.0 == sv || p.second.0 == sv;
                        let third = ps.iter().position(|p| !on_vertex(p)).expect("third strand");
                        let others: Vec<usize> = tri.nodes.iter().copied().filter(|&n| n != sv).collect();
                        let o0 = over_pass(d, &ps, others[0]) == Some(third);
                        let o1 = over_pass(d, &ps, others[1]) == Some(third);
                        o0 == o1
                    }
                    _ => false,
                };
                if !ok {
                    return Err(not_here());
                }
                Ok(flip_triangle(self, tri.arcs))
            }
            Move::R5 { arcs } => {
                let faces = Faces::new(d);
                let bg = bigons(d, &faces)
                    .into_iter()
                    .find(|b| b.arcs == sorted(arcs))
                    .ok_or_else(not_here)?;
                let [u, v] = bg.nodes;
                let (ku, kv) = (d.nodes()[u].kind, d.nodes()[v].kind);
                if ku.is_classical() == kv.is_classical() || !bg.is_parallel(faces.ends()) {
                    return Err(not_here());
                }
                Ok(self.with_kind(u, kv).with_kind(v, ku))
            }
        }
    }

    fn r2_add(&self, a: ArcId, a_side: Side, b: ArcId, b_side: Side, a_over: bool) -> Result<ColoredDiagram> {
        let d = self.diagram();
        let not_here = || {
            Error::MoveNotApplicable(format!("R2 {a}/{a_side:?} across {b}/{b_side:?}"))
        };
        if a == b || !self.labels.contains_key(&a) || !self.labels.contains_key(&b) {
            return Err(not_here());
        }
        let faces = Faces::new(d);
        let ends = faces.ends();
        if let (Some(ea), Some(eb)) = (ends.get(&a), ends.get(&b)) {
            let comps = node_components(d);
            let same = comps
                .iter()
                .any(|c| c.binary_search(&ea.tail.node).is_ok() && c.binary_search(&eb.tail.node).is_ok());
            if same && face_on(&faces, a, a_side) != face_on(&faces, b, b_side) {
                return Err(not_here());
            }
        }
        let mut r = Rewire::new(self);
        let (a1, a2) = split(&mut r, ends, a);
        let (b1, b2) = split(&mut r, ends, b);
        let am = r.fresh(r.label(a));
        let bm = r.fresh(r.label(b));
        let (n1, n2) = match (a_side, b_side) {
            (Side::Left, Side::Left) => ([a1, bm, am, b2], [b1, am, bm, a2]),
            (Side::Left, Side::Right) => ([b1, a1, bm, am], [am, bm, a2, b2]),
            (Side::Right, Side::Left) => ([a1, b1, am, bm], [bm, am, b2, a2]),
            (Side::Right, Side::Right) => ([bm, a1, b2, am], [am, b1, a2, bm]),
        };
        let kind = |arcs: [ArcId; 4]| {
            let strand0_is_a = arcs[0] == a1 || arcs[0] == am;
            if strand0_is_a == a_over {
                NodeKind::Positive
            } else {
                NodeKind::Negative
            }
        };
        r.add_node(Node::new(kind(n1), n1));
        r.add_node(Node::new(kind(n2), n2));
        Ok(r.finish())
    }

    /// Every move applicable to this diagram.
    pub fn enumerate_moves(&self) -> Vec<Move> {
        let d = self.diagram();
        let faces = Faces::new(d);
        let ends = faces.ends();
        let mut out = Vec::new();
        let arcs = d.arcs();
        for &arc in &arcs {
            for side in [Side::Left, Side::Right] {
                for kind in [NodeKind::Positive, NodeKind::Negative] {
                    out.push(Move::R1Add { arc, side, kind });
                }
            }
        }
        for (arc, v) in curl_arcs(d) {
            if d.nodes()[v].kind.is_classical() {
                out.push(Move::R1Remove { arc });
            }
        }
        // R2 insertions: pairs sharing a face, or lying in different pieces
        let comps = node_components(d);
        let piece = |a: ArcId| -> Option<usize> {
            ends.get(&a).map(|e| comps.iter().position(|c| c.binary_search(&e.tail.node).is_ok()).expect("node"))
        };
        for &a in &arcs {
            for &b in &arcs {
                if a == b {
                    continue;
                }
                for a_side in [Side::Left, Side::Right] {
                    for b_side in [Side::Left, Side::Right] {
                        let ok = match (piece(a), piece(b)) {
                            (Some(pa), Some(pb)) if pa == pb => {
                                face_on(&faces, a, a_side) == face_on(&faces, b, b_side)
                            }
                            _ => true,
                        };
                        if ok {
                            for a_over in [true, false] {
                                out.push(Move::R2Add { a, a_side, b, b_side, a_over });
                            }
                        }
                    }
                }
            }
        }
        for bg in bigons(d, &faces) {
            for m in [Move::R2Remove { arcs: bg.arcs }, Move::R5 { arcs: bg.arcs }] {
                if self.apply_move(&m).is_ok() {
                    out.push(m);
                }
            }
        }
        for t in triangles(d, &faces) {
            for m in [Move::R3 { arcs: t.arcs }, Move::R4 { arcs: t.arcs }] {
                if self.apply_move(&m).is_ok() {
                    out.push(m);
                }
            }
        }
        out
    }
}

/// Cuts `a` so that `a1` keeps its tail and `a2` its head. A free loop is
/// opened with `a1 = a2 = a`.
fn split(r: &mut Rewire<'_>, ends: &BTreeMap<ArcId, ArcEnds>, a: ArcId) -> (ArcId, ArcId) {
    match ends.get(&a) {
        None => {
            r.drop_loop(a);
            (a, a)
        }
        Some(e) => {
            let a2 = r.fresh(r.label(a));
            r.set_slot(e.head.node, e.head.slot, a2);
            (a, a2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::faces::is_planar;
    use crate::diagram::tests::{hopf_pos, trefoil};
    use crate::diagram::Coloration;

    fn check(cd: &ColoredDiagram, out: &ColoredDiagram) {
        assert!(is_planar(out.diagram()), "{:?}", out.diagram());
        assert_eq!(out.diagram().component_count(), cd.diagram().component_count());
        assert_eq!(
            Coloration(out.component_classes()).shape(),
            Coloration(cd.component_classes()).shape()
        );
    }

    #[test]
    fn r1_on_unknot() {
        let cd = ColoredDiagram::uniform(Diagram::unknot());
        for side in [Side::Left, Side::Right] {
            let out = cd.apply_move(&Move::R1Add { arc: 0, side, kind: NodeKind::Positive }).unwrap();
            check(&cd, &out);
            assert_eq!(out.diagram().nodes().len(), 1);
            let back = out.apply_move(&Move::R1Remove { arc: curl_arcs(out.diagram())[0].0 }).unwrap();
            assert_eq!(back.diagram().nodes().len(), 0);
            assert_eq!(back.diagram().free_loops().len(), 1);
        }
    }

    #[test]
    fn every_enumerated_move_keeps_planarity() {
        for d in [hopf_pos(), trefoil(), hopf_pos().make_singular(0).unwrap()] {
            let n = d.component_count();
            let cd = ColoredDiagram::new(d, &Coloration::distinct(n)).unwrap();
            let moves = cd.enumerate_moves();
            assert!(!moves.is_empty());
            for m in moves {
                let out = cd.apply_move(&m).unwrap();
                check(&cd, &out);
            }
        }
    }

    #[test]
    fn r2_round_trip() {
        let cd = ColoredDiagram::uniform(trefoil());
        let m = cd
            .enumerate_moves()
            .into_iter()
            .find(|m| matches!(m, Move::R2Add { .. }))
            .unwrap();
        let out = cd.apply_move(&m).unwrap();
        assert_eq!(out.diagram().nodes().len(), 5);
        let removals: Vec<Move> = out
            .enumerate_moves()
            .into_iter()
            .filter(|m| matches!(m, Move::R2Remove { .. }))
            .collect();
        assert!(!removals.is_empty());
    }

    #[test]
    fn r2_remove_without_bigon_fails() {
        let cd = ColoredDiagram::uniform(Diagram::unknot());
        assert!(cd.apply_move(&Move::R2Remove { arcs: [0, 1] }).is_err());
    }

    #[test]
    fn trefoil_has_no_r3() {
        let cd = ColoredDiagram::uniform(trefoil());
        assert!(!cd.enumerate_moves().iter().any(|m| matches!(m, Move::R3 { .. })));
    }
}
