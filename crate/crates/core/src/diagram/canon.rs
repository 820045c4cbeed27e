//! Relabeling-invariant keys for colored diagrams.
//!
//! Each connected piece is encoded by a breadth-first walk from its best start
//! node. Color classes are numbered by first appearance. Pieces with identical
//! shapes are permuted to find the least global class numbering; past a cap we
//! keep the sorted order, which can only cost memo hits, never merge distinct
//! diagrams.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use super::color::{ColoredDiagram, Label};
use super::faces::{node_components, opposite};
use super::{ArcEnds, ArcId, Diagram, Half, NodeKind};

pub type CanonKey = Vec<u32>;

const ARRANGEMENT_CAP: usize = 5040;

struct Piece {
    code: Vec<u32>,
    /// Class label of each local class id, one vector per minimal start.
    class_maps: Vec<Vec<Label>>,
}

fn kind_code(k: NodeKind) -> u32 {
    match k {
        NodeKind::Positive => 0,
        NodeKind::Negative => 1,
        NodeKind::Singular => 2,
    }
}

fn walk(
    cd: &ColoredDiagram,
    ends: &BTreeMap<ArcId, ArcEnds>,
    start: usize,
    size: usize,
) -> (Vec<u32>, Vec<Label>) {
    let d = cd.diagram();
    let mut index: BTreeMap<usize, u32> = BTreeMap::new();
    let mut order = Vec::with_capacity(size);
    let mut queue = VecDeque::new();
    index.insert(start, 0);
    queue.push_back(start);
    let mut code = Vec::with_capacity(size * 9 + size * 2);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        code.push(kind_code(d.nodes()[v].kind));
        for slot in 0..4 {
            let o = opposite(d, ends, Half::new(v, slot));
            let next = index.len() as u32;
            let id = *index.entry(o.node).or_insert_with(|| {
                queue.push_back(o.node);
                next
            });
            code.push(id);
            code.push(o.slot as u32);
        }
    }
    let mut classes: Vec<Label> = Vec::new();
    for &v in &order {
        for slot in 2..4 {
            let c = cd.class(d.nodes()[v].arcs[slot]);
            let local = match classes.iter().position(|&x| x == c) {
                Some(i) => i,
                None => {
                    classes.push(c);
                    classes.len() - 1
                }
            };
            code.push(local as u32);
        }
    }
    (code, classes)
}

fn piece(cd: &ColoredDiagram, ends: &BTreeMap<ArcId, ArcEnds>, nodes: &[usize]) -> Piece {
    let mut best: Option<Vec<u32>> = None;
    let mut maps: Vec<Vec<Label>> = Vec::new();
    for &s in nodes {
        let (code, classes) = walk(cd, ends, s, nodes.len());
        match &best {
            Some(b) if code > *b => {}
            Some(b) if code == *b => {
                if !maps.contains(&classes) {
                    maps.push(classes);
                }
            }
            _ => {
                best = Some(code);
                maps = alloc::vec![classes];
            }
        }
    }
    Piece { code: best.unwrap_or_default(), class_maps: maps }
}

/// Global class numbering for pieces in the given order with chosen maps.
fn signature(pieces: &[(&Piece, &Vec<Label>)], loops: &BTreeMap<Label, u32>) -> Vec<u32> {
    let mut global: Vec<Label> = Vec::new();
    let mut sig = Vec::new();
    for (_, map) in pieces {
        for &c in map.iter() {
            let g = match global.iter().position(|&x| x == c) {
                Some(i) => i,
                None => {
                    global.push(c);
                    global.len() - 1
                }
            };
            sig.push(g as u32);
        }
    }
    sig.push(global.len() as u32);
    for c in &global {
        sig.push(loops.get(c).copied().unwrap_or(0));
    }
    let mut anon: Vec<u32> = loops
        .iter()
        .filter(|(c, _)| !global.contains(c))
        .map(|(_, &n)| n)
        .collect();
    anon.sort_unstable();
    sig.push(anon.len() as u32);
    sig.extend(anon);
    sig
}

/// Visits every arrangement of tied pieces and class maps, up to the cap.
fn best_signature(sorted: &[Piece], loops: &BTreeMap<Label, u32>) -> Vec<u32> {
    // group boundaries of equal codes
    let mut groups: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j].code == sorted[i].code {
            j += 1;
        }
        groups.push((i, j));
        i = j;
    }
    let mut total: usize = 1;
    for &(a, b) in &groups {
        for k in 1..=(b - a) {
            total = total.saturating_mul(k);
        }
    }
    for p in sorted {
        total = total.saturating_mul(p.class_maps.len());
    }
    let default: Vec<(&Piece, &Vec<Label>)> = sorted.iter().map(|p| (p, &p.class_maps[0])).collect();
    if total <= 1 || total > ARRANGEMENT_CAP {
        return signature(&default, loops);
    }
    let mut best: Option<Vec<u32>> = None;
    let mut perm: Vec<usize> = (0..sorted.len()).collect();
    let each = |order: &[usize], best: &mut Option<Vec<u32>>| {
        let mut choice = alloc::vec![0usize; order.len()];
        loop {
            let arrangement: Vec<(&Piece, &Vec<Label>)> = order
                .iter()
                .zip(&choice)
                .map(|(&p, &c)| (&sorted[p], &sorted[p].class_maps[c]))
                .collect();
            let sig = signature(&arrangement, loops);
            if best.as_ref().is_none_or(|b| sig < *b) {
                *best = Some(sig);
            }
            // odometer over class-map choices
            let mut k = 0;
            loop {
                if k == order.len() {
                    return;
                }
                choice[k] += 1;
                if choice[k] < sorted[order[k]].class_maps.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    };
    permute_groups(&groups, 0, &mut perm, &mut |order| each(order, &mut best));
    best.expect("at least one arrangement")
}

fn permute_groups<F: FnMut(&[usize])>(groups: &[(usize, usize)], g: usize, perm: &mut Vec<usize>, f: &mut F) {
    if g == groups.len() {
        f(perm);
        return;
    }
    let (a, b) = groups[g];
    heap_permute(perm, a, b - a, &mut |p| permute_groups(groups, g + 1, &mut p.to_vec(), f));
}

fn heap_permute<F: FnMut(&mut Vec<usize>)>(v: &mut Vec<usize>, a: usize, k: usize, f: &mut F) {
    if k <= 1 {
        f(v);
        return;
    }
    for i in 0..k - 1 {
        heap_permute(v, a, k - 1, f);
        if k.is_multiple_of(2) {
            v.swap(a + i, a + k - 1);
        } else {
            v.swap(a, a + k - 1);
        }
    }
    heap_permute(v, a, k - 1, f);
}

pub fn canonical_form(cd: &ColoredDiagram) -> CanonKey {
    let d: &Diagram = cd.diagram();
    let ends = d.arc_ends();
    let mut pieces: Vec<Piece> = node_components(d).iter().map(|c| piece(cd, &ends, c)).collect();
    pieces.sort_by(|a, b| a.code.cmp(&b.code));
    let mut loops: BTreeMap<Label, u32> = BTreeMap::new();
    for &l in d.free_loops() {
        *loops.entry(cd.class(l)).or_default() += 1;
    }
    let mut key = Vec::new();
    key.push(pieces.len() as u32);
    for p in &pieces {
        key.push(p.code.len() as u32);
        key.extend_from_slice(&p.code);
    }
    key.extend(best_signature(&pieces, &loops));
    key
}

/// Byte form of the key.
pub fn canonical_bytes(cd: &ColoredDiagram) -> Vec<u8> {
    canonical_form(cd).iter().flat_map(|x| x.to_le_bytes()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::braid::{braid_closure, Generator::*};
    use crate::diagram::{Coloration, Node};
    use alloc::vec;

    fn relabel(d: &Diagram, shift: ArcId, rotate_nodes: usize) -> Diagram {
        let mut nodes: Vec<Node> =
            d.nodes().iter().map(|n| Node::new(n.kind, n.arcs.map(|a| a * 3 + shift))).collect();
        let k = rotate_nodes % nodes.len().max(1);
        nodes.rotate_left(k);
        Diagram::new(nodes, d.free_loops().iter().map(|a| a * 3 + shift).collect()).unwrap()
    }

    #[test]
    fn invariant_under_relabeling() {
        let d = braid_closure(3, &[Tau(0), Tau(1), Tau(0), Sigma(1)]);
        let n = d.component_count();
        let a = ColoredDiagram::new(d.clone(), &Coloration::distinct(n)).unwrap();
        let e = relabel(&d, 7, 2);
        let b = ColoredDiagram::new(e.clone(), &Coloration((0..n as u32).map(|c| 10 + c).collect())).unwrap();
        // component order may differ after relabeling; color by matching arcs
        let mut cb = b.clone();
        for comp in e.components() {
            let orig = (comp.min_arc() - 7) / 3;
            let l = a.class(orig) + 10;
            for &x in &comp.arcs {
                cb.labels.insert(x, l);
            }
        }
        assert_eq!(canonical_form(&a), canonical_form(&cb));
    }

    #[test]
    fn colors_up_to_bijection() {
        let d = braid_closure(2, &[Tau(0), Tau(0)]);
        let a = ColoredDiagram::new(d.clone(), &Coloration(vec![0, 1])).unwrap();
        let b = ColoredDiagram::new(d.clone(), &Coloration(vec![5, 2])).unwrap();
        let c = ColoredDiagram::new(d, &Coloration(vec![3, 3])).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(canonical_form(&a), canonical_form(&c));
    }

    #[test]
    fn kinds_and_shapes_are_distinguished() {
        let keys: Vec<CanonKey> = [
            braid_closure(2, &[Tau(0), Tau(0)]),
            braid_closure(2, &[Sigma(0), Sigma(0)]),
            braid_closure(2, &[SigmaInv(0), SigmaInv(0)]),
            braid_closure(2, &[Sigma(0), Tau(0)]),
            braid_closure(3, &[Tau(0), Tau(1), Tau(0)]),
            braid_closure(3, &[Tau(0), Tau(1)]),
        ]
        .into_iter()
        .map(|d| canonical_form(&ColoredDiagram::uniform(d)))
        .collect();
        for i in 0..keys.len() {
            for j in 0..i {
                assert_ne!(keys[i], keys[j], "{i} vs {j}");
            }
        }
    }

    #[test]
    fn two_circle_graphs_coincide() {
        use crate::diagram::{Move, Side};
        let unlink = ColoredDiagram::uniform(Diagram::new(vec![], vec![0, 1]).unwrap());
        let closed = canonical_form(&ColoredDiagram::uniform(braid_closure(2, &[Tau(0), Tau(0)])));
        for b_side in [Side::Left, Side::Right] {
            let m = Move::R2Add { a: 0, a_side: Side::Left, b: 1, b_side, a_over: true };
            let g = unlink.apply_move(&m).unwrap().make_singular(0).unwrap().make_singular(1).unwrap();
            assert_eq!(canonical_form(&g), closed);
        }
    }

    #[test]
    fn split_pieces_commute() {
        let d1 = braid_closure(4, &[Tau(0), Tau(2), Tau(0)]);
        let d2 = braid_closure(4, &[Tau(2), Tau(0), Tau(2)]);
        let a = ColoredDiagram::new(d1.clone(), &Coloration::distinct(d1.component_count())).unwrap();
        let b = ColoredDiagram::new(d2.clone(), &Coloration::distinct(d2.component_count())).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }
}
