//! Faces of the combinatorial map carried by a diagram.
//!
//! Each half-edge `h` starts a walk along its arc; the walk turns to the next
//! slot counterclockwise at the far node. The orbit of `h` is the face on the
//! right of that walk, so the tail half of an arc sees the arc's right face and
//! the head half sees its left face.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{ArcEnds, ArcId, Diagram, Half};

#[derive(Clone, Debug)]
pub struct Faces {
    /// Boundary of each face as the half-edges of its walk.
    pub faces: Vec<Vec<Half>>,
    face_of: BTreeMap<Half, usize>,
    ends: BTreeMap<ArcId, ArcEnds>,
}

impl Faces {
    pub fn new(d: &Diagram) -> Self {
        let ends = d.arc_ends();
        let mut face_of = BTreeMap::new();
        let mut faces = Vec::new();
        for (v, _) in d.nodes().iter().enumerate() {
            for slot in 0..4 {
                let start = Half::new(v, slot);
                if face_of.contains_key(&start) {
                    continue;
                }
                let idx = faces.len();
                let mut walk = Vec::new();
                let mut h = start;
                loop {
                    face_of.insert(h, idx);
                    walk.push(h);
                    h = opposite(d, &ends, h).ccw();
                    if h == start {
                        break;
                    }
                }
                faces.push(walk);
            }
        }
        Faces { faces, face_of, ends }
    }

    pub fn face_of(&self, h: Half) -> usize {
        self.face_of[&h]
    }

    pub fn right_face(&self, a: ArcId) -> Option<usize> {
        self.ends.get(&a).map(|e| self.face_of[&e.tail])
    }

    pub fn left_face(&self, a: ArcId) -> Option<usize> {
        self.ends.get(&a).map(|e| self.face_of[&e.head])
    }

    pub fn ends(&self) -> &BTreeMap<ArcId, ArcEnds> {
        &self.ends
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

/// The other end of the arc at `h`.
pub fn opposite(d: &Diagram, ends: &BTreeMap<ArcId, ArcEnds>, h: Half) -> Half {
    let e = ends[&d.arc_at(h)];
    if h.is_out() {
        e.head
    } else {
        e.tail
    }
}

/// Connected components of the node graph, as sorted node lists.
pub fn node_components(d: &Diagram) -> Vec<Vec<usize>> {
    let ends = d.arc_ends();
    let n = d.nodes().len();
    let mut comp = alloc::vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let idx = out.len();
        let mut stack = alloc::vec![s];
        let mut members = Vec::new();
        comp[s] = idx;
        while let Some(v) = stack.pop() {
            members.push(v);
            for slot in 0..4 {
                let u = opposite(d, &ends, Half::new(v, slot)).node;
                if comp[u] == usize::MAX {
                    comp[u] = idx;
                    stack.push(u);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Euler check `F = V + 2` on every connected piece of the node graph.
pub fn is_planar(d: &Diagram) -> bool {
    let faces = Faces::new(d);
    let comps = node_components(d);
    let mut comp_of = alloc::vec![0; d.nodes().len()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut face_count = alloc::vec![0usize; comps.len()];
    for f in &faces.faces {
        face_count[comp_of[f[0].node]] += 1;
    }
    comps.iter().zip(face_count).all(|(c, f)| f == c.len() + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::tests::{hopf_pos, trefoil};

    #[test]
    fn small_diagrams_are_planar() {
        assert!(is_planar(&hopf_pos()));
        assert!(is_planar(&trefoil()));
        let t = trefoil();
        let f = Faces::new(&t);
        assert_eq!(f.len(), 5);
        let mut sizes: Vec<usize> = f.faces.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, alloc::vec![2, 2, 2, 3, 3]);
    }

    #[test]
    fn left_and_right_faces_differ_on_trefoil() {
        let t = trefoil();
        let f = Faces::new(&t);
        for a in t.arcs() {
            assert_ne!(f.left_face(a), f.right_face(a));
        }
    }
}
