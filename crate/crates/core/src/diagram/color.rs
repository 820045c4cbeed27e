use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{ArcId, Diagram, NodeKind};
use crate::error::{Error, Result};

pub type Label = u32;

/// Color label per component, in `Diagram::components` order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Coloration(pub Vec<Label>);

impl Coloration {
    pub fn uniform(components: usize) -> Self {
        Coloration(alloc::vec![0; components])
    }

    pub fn distinct(components: usize) -> Self {
        Coloration((0..components as Label).collect())
    }

    /// Class index of each component, numbered by first appearance.
    pub fn shape(&self) -> Vec<usize> {
        let mut seen: Vec<Label> = Vec::new();
        self.0
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(i) => i,
                None => {
                    seen.push(*l);
                    seen.len() - 1
                }
            })
            .collect()
    }
}

/// Union-find over labels. Each label maps to the smallest label of its class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ColorPartition {
    rep: BTreeMap<Label, Label>,
}

impl ColorPartition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn find(&self, l: Label) -> Label {
        self.rep.get(&l).copied().unwrap_or(l)
    }

    pub fn union(&mut self, a: Label, b: Label) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
        for v in self.rep.values_mut() {
            if *v == drop {
                *v = keep;
            }
        }
        self.rep.insert(drop, keep);
    }

    pub fn same(&self, a: Label, b: Label) -> bool {
        self.find(a) == self.find(b)
    }
}

/// A diagram with a label on every arc and a partition of the labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredDiagram {
    pub(crate) diagram: Diagram,
    pub(crate) labels: BTreeMap<ArcId, Label>,
    pub(crate) partition: ColorPartition,
}

impl ColoredDiagram {
    pub fn new(diagram: Diagram, coloration: &Coloration) -> Result<Self> {
        let comps = diagram.components();
        if coloration.0.len() != comps.len() {
            return Err(Error::InvalidDiagram(format!(
                "{} components but {} colors",
                comps.len(),
                coloration.0.len()
            )));
        }
        let mut labels = BTreeMap::new();
        for (c, &l) in comps.iter().zip(&coloration.0) {
            for &a in &c.arcs {
                labels.insert(a, l);
            }
        }
        Ok(ColoredDiagram { diagram, labels, partition: ColorPartition::new() })
    }

    pub fn uniform(diagram: Diagram) -> Self {
        let n = diagram.component_count();
        Self::new(diagram, &Coloration::uniform(n)).expect("sized")
    }

    pub(crate) fn from_parts(
        diagram: Diagram,
        labels: BTreeMap<ArcId, Label>,
        partition: ColorPartition,
    ) -> Self {
        ColoredDiagram { diagram, labels, partition }
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn partition(&self) -> &ColorPartition {
        &self.partition
    }

    pub fn label(&self, a: ArcId) -> Label {
        self.labels[&a]
    }

    /// Representative label of the class containing arc `a`.
    pub fn class(&self, a: ArcId) -> Label {
        self.partition.find(self.labels[&a])
    }

    pub fn same_class(&self, a: ArcId, b: ArcId) -> bool {
        self.class(a) == self.class(b)
    }

    /// Class representative of each component.
    pub fn component_classes(&self) -> Vec<Label> {
        self.diagram
            .components()
            .iter()
            .map(|c| self.class(c.min_arc()))
            .collect()
    }

    /// Coloration induced by the current classes.
    pub fn coloration(&self) -> Coloration {
        Coloration(self.component_classes())
    }

    /// Number of circles in each color class, sorted; the shape of an unlink.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut counts: BTreeMap<Label, usize> = BTreeMap::new();
        for l in self.component_classes() {
            *counts.entry(l).or_default() += 1;
        }
        let mut v: Vec<usize> = counts.into_values().collect();
        v.sort_unstable();
        v
    }

    pub fn merge_classes(&mut self, a: ArcId, b: ArcId) {
        let (la, lb) = (self.labels[&a], self.labels[&b]);
        self.partition.union(la, lb);
    }

    pub fn with_kind(&self, n: usize, kind: NodeKind) -> ColoredDiagram {
        ColoredDiagram {
            diagram: self.diagram.with_kind(n, kind),
            labels: self.labels.clone(),
            partition: self.partition.clone(),
        }
    }

    pub fn switch_crossing(&self, n: usize) -> Result<ColoredDiagram> {
        Ok(ColoredDiagram {
            diagram: self.diagram.switch_crossing(n)?,
            labels: self.labels.clone(),
            partition: self.partition.clone(),
        })
    }

    pub fn make_singular(&self, n: usize) -> Result<ColoredDiagram> {
        Ok(ColoredDiagram {
            diagram: self.diagram.make_singular(n)?,
            labels: self.labels.clone(),
            partition: self.partition.clone(),
        })
    }

    /// Adds a crossingless circle with the given label.
    pub fn with_circle(&self, label: Label) -> ColoredDiagram {
        let id = self.diagram.max_arc().map_or(0, |m| m + 1);
        let mut loops = self.diagram.free_loops().to_vec();
        loops.push(id);
        let mut labels = self.labels.clone();
        labels.insert(id, label);
        ColoredDiagram {
            diagram: Diagram::new_unchecked(self.diagram.nodes().to_vec(), loops),
            labels,
            partition: self.partition.clone(),
        }
    }

    /// Applies `f` to every label (classes follow).
    pub fn relabel<F: Fn(Label) -> Label>(&self, f: F) -> ColoredDiagram {
        let labels = self.labels.iter().map(|(&a, &l)| (a, f(self.partition.find(l)))).collect();
        ColoredDiagram { diagram: self.diagram.clone(), labels, partition: ColorPartition::new() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_laws() {
        let mut p = ColorPartition::new();
        p.union(3, 1);
        p.union(1, 3);
        assert_eq!(p.find(3), 1);
        p.union(5, 7);
        p.union(7, 3);
        for l in [1, 3, 5, 7] {
            assert_eq!(p.find(l), 1);
        }
        assert_eq!(p.find(2), 2);
        let mut q = ColorPartition::new();
        q.union(7, 3);
        q.union(5, 7);
        q.union(3, 1);
        assert_eq!(p, q);
    }

    #[test]
    fn shape_ignores_label_names() {
        assert_eq!(Coloration(alloc::vec![9, 4, 9]).shape(), Coloration(alloc::vec![0, 1, 0]).shape());
    }
}
