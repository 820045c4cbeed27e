//! Local rewiring: delete nodes, splice their arcs, add new nodes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::color::{ColorPartition, ColoredDiagram, Label};
use super::{ArcId, Diagram, Node};

pub(crate) struct Rewire<'a> {
    src: &'a ColoredDiagram,
    removed: BTreeSet<usize>,
    parent: BTreeMap<ArcId, ArcId>,
    closed: Vec<ArcId>,
    dropped_loops: BTreeSet<ArcId>,
    added: Vec<Node>,
    slot_override: BTreeMap<(usize, usize), ArcId>,
    labels: BTreeMap<ArcId, Label>,
    partition: ColorPartition,
    next: ArcId,
}

impl<'a> Rewire<'a> {
    pub(crate) fn new(src: &'a ColoredDiagram) -> Self {
        Rewire {
            src,
            removed: BTreeSet::new(),
            parent: BTreeMap::new(),
            closed: Vec::new(),
            dropped_loops: BTreeSet::new(),
            added: Vec::new(),
            slot_override: BTreeMap::new(),
            labels: src.labels.clone(),
            partition: src.partition.clone(),
            next: src.diagram.max_arc().map_or(0, |m| m + 1),
        }
    }

    fn find(&self, mut a: ArcId) -> ArcId {
        while let Some(&p) = self.parent.get(&a) {
            a = p;
        }
        a
    }

    /// Arc `into` (ending at a removed node) continues as `out_of`.
    pub(crate) fn join(&mut self, into: ArcId, out_of: ArcId) {
        let (ra, rb) = (self.find(into), self.find(out_of));
        if ra == rb {
            self.closed.push(ra);
            return;
        }
        let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent.insert(drop, keep);
        let (la, lb) = (self.labels[&keep], self.labels[&drop]);
        self.partition.union(la, lb);
    }

    /// Removes node `v`, splicing each `(in_slot, out_slot)` pair.
    pub(crate) fn remove_node(&mut self, v: usize, pairs: [(usize, usize); 2]) {
        self.removed.insert(v);
        let arcs = self.src.diagram.nodes()[v].arcs;
        for (i, o) in pairs {
            self.join(arcs[i], arcs[o]);
        }
    }

    /// Strand-following removal.
    pub(crate) fn remove_straight(&mut self, v: usize) {
        self.remove_node(v, [(0, 2), (1, 3)]);
    }

    /// Oriented smoothing removal.
    pub(crate) fn remove_smoothed(&mut self, v: usize) {
        self.remove_node(v, [(0, 3), (1, 2)]);
    }

    pub(crate) fn fresh(&mut self, label: Label) -> ArcId {
        let a = self.next;
        self.next += 1;
        self.labels.insert(a, label);
        a
    }

    pub(crate) fn label(&self, a: ArcId) -> Label {
        self.labels[&a]
    }

    pub(crate) fn set_slot(&mut self, v: usize, slot: usize, a: ArcId) {
        self.slot_override.insert((v, slot), a);
    }

    pub(crate) fn drop_loop(&mut self, a: ArcId) {
        self.dropped_loops.insert(a);
    }

    pub(crate) fn add_node(&mut self, n: Node) {
        self.added.push(n);
    }

    pub(crate) fn finish(self) -> ColoredDiagram {
        let mut nodes = Vec::new();
        for (v, n) in self.src.diagram.nodes().iter().enumerate() {
            if self.removed.contains(&v) {
                continue;
            }
            let mut arcs = n.arcs;
            for (slot, a) in arcs.iter_mut().enumerate() {
                if let Some(&o) = self.slot_override.get(&(v, slot)) {
                    *a = o;
                }
                *a = self.find(*a);
            }
            nodes.push(Node::new(n.kind, arcs));
        }
        for n in &self.added {
            nodes.push(Node::new(n.kind, n.arcs.map(|a| self.find(a))));
        }
        let mut loops: Vec<ArcId> = self
            .src
            .diagram
            .free_loops()
            .iter()
            .filter(|a| !self.dropped_loops.contains(a))
            .map(|&a| self.find(a))
            .collect();
        loops.extend(self.closed.iter().map(|&a| self.find(a)));
        let diagram = Diagram::new_unchecked(nodes, loops);
        debug_assert!(diagram.validate().is_ok(), "rewire produced {diagram:?}");
        let used: BTreeSet<ArcId> = diagram.arcs().into_iter().collect();
        let labels = self.labels.into_iter().filter(|(a, _)| used.contains(a)).collect();
        ColoredDiagram::from_parts(diagram, labels, self.partition)
    }
}

impl ColoredDiagram {
    /// Removes node `n` by the oriented smoothing. Returns the result and the change
    /// in component count (always +1 or -1).
    pub fn oriented_smoothing(&self, n: usize) -> crate::Result<(ColoredDiagram, i32)> {
        self.diagram.node(n)?;
        let mut r = Rewire::new(self);
        r.remove_smoothed(n);
        let out = r.finish();
        let delta = out.diagram.component_count() as i32 - self.diagram.component_count() as i32;
        Ok((out, delta))
    }

    /// Removes node `n` letting both strands pass straight through.
    pub fn pass_through(&self, n: usize) -> crate::Result<ColoredDiagram> {
        self.diagram.node(n)?;
        let mut r = Rewire::new(self);
        r.remove_straight(n);
        Ok(r.finish())
    }

    /// Unites the classes of the two strands at node `n`.
    pub fn merge_at(&self, n: usize) -> ColoredDiagram {
        let arcs = self.diagram.nodes()[n].arcs;
        let mut out = self.clone();
        out.merge_classes(arcs[0], arcs[1]);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::tests::{hopf_pos, trefoil};
    use alloc::vec;

    #[test]
    fn smoothing_hopf_merges() {
        let d = ColoredDiagram::new(hopf_pos(), &super::super::Coloration(vec![0, 1])).unwrap();
        let (s, delta) = d.oriented_smoothing(0).unwrap();
        assert_eq!(delta, -1);
        assert_eq!(s.diagram.component_count(), 1);
        assert_eq!(s.class_sizes(), vec![1]);
    }

    #[test]
    fn smoothing_a_curl_splits() {
        // one-crossing unknot: left curl on arc 0
        let d = Diagram::new(vec![Node::new(super::super::NodeKind::Positive, [1, 0, 0, 1])], vec![]).unwrap();
        let cd = ColoredDiagram::uniform(d);
        let (s, delta) = cd.oriented_smoothing(0).unwrap();
        assert_eq!(delta, 1);
        assert!(s.diagram.nodes().is_empty());
        assert_eq!(s.diagram.free_loops().len(), 2);
    }

    #[test]
    fn smoothing_trefoil_changes_components_by_one() {
        let cd = ColoredDiagram::uniform(trefoil());
        for n in 0..3 {
            let (_, delta) = cd.oriented_smoothing(n).unwrap();
            assert_eq!(delta.abs(), 1);
        }
    }
}
