//! The invariant of colored classical and singular links.
//!
//! Two engines: the state sum expands every classical crossing into graphs and
//! evaluates those, the recursion switches crossings until the diagram is
//! descending and reads off an unlink.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{NamedConstant, RationalFunction};
use crate::diagram::canon::{canonical_form, CanonKey};
use crate::diagram::{Coloration, ColoredDiagram, Diagram, NodeKind};
use crate::error::{Error, Result};
use crate::graph::{unlink_value, GraphEvaluator, LinearCombination, SiteChooser};

/// One weighted diagram of a skein expansion.
pub type SkeinTerm = (RationalFunction, ColoredDiagram);

/// Relation used to remove a singular vertex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SingularRelation {
    /// Through the positive crossing.
    #[default]
    Positive,
    /// Through the negative crossing.
    Negative,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    #[default]
    StateSum,
    Recursive,
    /// Both engines; an error if they disagree.
    Both,
}

fn rf(n: i64) -> RationalFunction {
    RationalFunction::from_int(n)
}

/// Writes a classical crossing as vertex, merged vertex and merged smoothing.
pub fn expand_crossing(cd: &ColoredDiagram, n: usize) -> Result<Vec<SkeinTerm>> {
    let kind = cd.diagram().node(n)?.kind;
    let (kept, merged) = match kind {
        NodeKind::Positive => (NamedConstant::PosKept.value(), NamedConstant::PosMerged.value()),
        NodeKind::Negative => (NamedConstant::NegKept.value(), NamedConstant::NegMerged.value()),
        NodeKind::Singular => return Err(Error::SingularNode(n)),
    };
    let vertex = cd.with_kind(n, NodeKind::Singular);
    let (smooth, _) = cd.merge_at(n).oriented_smoothing(n)?;
    Ok(alloc::vec![(kept, vertex.clone()), (merged.clone(), vertex.merge_at(n)), (merged, smooth)])
}

/// Replaces a singular vertex by crossings and a merged smoothing.
pub fn resolve_singular(cd: &ColoredDiagram, n: usize, rel: SingularRelation) -> Result<Vec<SkeinTerm>> {
    if cd.diagram().node(n)?.kind != NodeKind::Singular {
        return Err(Error::ClassicalNode(n));
    }
    let t = RationalFunction::t();
    let w = RationalFunction::w();
    let (kind, a, b, c) = match rel {
        SingularRelation::Positive => {
            (NodeKind::Positive, w.inv()?, t.inv()?, t.mul(&w).inv()?)
        }
        SingularRelation::Negative => (NodeKind::Negative, w.clone(), t.clone(), t.mul(&w)),
    };
    let crossing = cd.with_kind(n, kind);
    let (smooth, _) = cd.merge_at(n).oriented_smoothing(n)?;
    Ok(alloc::vec![(a, crossing.clone()), (b, smooth), (c, crossing.merge_at(n))])
}

/// First crossing met on its under-strand when every component is walked from
/// its smallest arc, components taken in order of their smallest arcs.
pub fn first_bad_crossing(cd: &ColoredDiagram) -> Option<usize> {
    let d = cd.diagram();
    let ends = d.arc_ends();
    let mut seen = alloc::vec![false; d.nodes().len()];
    for comp in d.components() {
        for a in &comp.arcs {
            let Some(e) = ends.get(a) else { continue };
            let h = e.head;
            if seen[h.node] {
                continue;
            }
            seen[h.node] = true;
            let node = &d.nodes()[h.node];
            if let Some(over) = node.over_strand() {
                if over != h.slot % 2 {
                    return Some(h.node);
                }
            }
        }
    }
    None
}

/// Switching relation at classical crossing `n`: returns terms whose sum is the
/// value at `n`, the first being the switched diagram.
pub fn switch_relation(cd: &ColoredDiagram, n: usize) -> Result<Vec<SkeinTerm>> {
    let node = *cd.diagram().node(n)?;
    let kind = node.kind;
    if !kind.is_classical() {
        return Err(Error::SingularNode(n));
    }
    let t = RationalFunction::t();
    let w = RationalFunction::w();
    let t_inv = t.inv()?;
    let w_inv = w.inv()?;
    let switched = cd.switch_crossing(n)?;
    let (smooth, _) = cd.merge_at(n).oriented_smoothing(n)?;
    let same = cd.same_class(node.arcs[0], node.arcs[1]);
    let terms = match (kind, same) {
        (NodeKind::Positive, true) => alloc::vec![
            (t.mul(&w).mul(&w), switched),
            (w.mul(&t.sub(&rf(1))), smooth),
        ],
        (NodeKind::Negative, true) => alloc::vec![
            (t.mul(&w).mul(&w).inv()?, switched),
            (rf(1).sub(&t).div(&t.mul(&w))?, smooth),
        ],
        (NodeKind::Positive, false) => alloc::vec![
            (w.mul(&w), switched.clone()),
            (w.mul(&t.sub(&t_inv)), smooth),
            (t.mul(&w).mul(&w), switched.merge_at(n)),
            (t_inv.neg(), cd.merge_at(n)),
        ],
        (NodeKind::Negative, false) => alloc::vec![
            (w_inv.mul(&w_inv), switched.clone()),
            (t.sub(&t_inv).mul(&w_inv).neg(), smooth),
            (t.neg(), cd.merge_at(n)),
            (t.mul(&w).mul(&w).inv()?, switched.merge_at(n)),
        ],
        (NodeKind::Singular, _) => unreachable!(),
    };
    Ok(terms)
}

/// Descending-diagram recursion with memoization on canonical forms.
#[derive(Debug, Default)]
pub struct SkeinRecursion {
    memo: BTreeMap<CanonKey, RationalFunction>,
    relation: SingularRelation,
}

impl SkeinRecursion {
    pub fn new(relation: SingularRelation) -> Self {
        SkeinRecursion { memo: BTreeMap::new(), relation }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn evaluate(&mut self, cd: &ColoredDiagram) -> Result<RationalFunction> {
        if cd.diagram().nodes().is_empty() {
            return unlink_value(&cd.class_sizes());
        }
        let key = canonical_form(cd);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let singular = cd.diagram().nodes().iter().position(|n| n.kind == NodeKind::Singular);
        let terms = match singular {
            Some(n) => resolve_singular(cd, n, self.relation)?,
            None => match first_bad_crossing(cd) {
                None => {
                    let v = unlink_value(&cd.class_sizes())?;
                    self.memo.insert(key, v.clone());
                    return Ok(v);
                }
                Some(n) => {
                    // the `cd` term is the merged copy of the crossing itself
                    switch_relation(cd, n)?
                }
            },
        };
        let mut acc = RationalFunction::zero();
        for (w, d) in terms {
            acc = acc.add(&w.mul(&self.evaluate(&d)?));
        }
        self.memo.insert(key, acc.clone());
        Ok(acc)
    }
}

pub fn skein_recursive(cd: &ColoredDiagram) -> Result<RationalFunction> {
    SkeinRecursion::default().evaluate(cd)
}

/// All classical crossings expanded; like graphs collected.
pub fn state_graphs(cd: &ColoredDiagram) -> Result<LinearCombination> {
    let mut lc = LinearCombination::new();
    lc.add(RationalFunction::one(), cd.clone());
    loop {
        let mut next = LinearCombination::new();
        let mut changed = false;
        for (w, g) in lc.into_terms() {
            match g.diagram().nodes().iter().position(|n| n.kind.is_classical()) {
                None => next.add(w, g),
                Some(n) => {
                    changed = true;
                    for (c, h) in expand_crossing(&g, n)? {
                        next.add(w.mul(&c), h);
                    }
                }
            }
        }
        lc = next;
        if !changed {
            return Ok(lc);
        }
    }
}

/// State sum with a caller-provided graph evaluator.
pub fn state_sum_with<C: SiteChooser>(cd: &ColoredDiagram, eval: &mut GraphEvaluator<C>) -> Result<RationalFunction> {
    let mut acc = RationalFunction::zero();
    for (_, w, g) in state_graphs(cd)?.iter() {
        acc = acc.add(&w.mul(&eval.evaluate(g)?));
    }
    Ok(acc)
}

pub fn state_sum(cd: &ColoredDiagram) -> Result<RationalFunction> {
    state_sum_with(cd, &mut GraphEvaluator::new())
}

pub fn invariant(d: &Diagram, coloration: &Coloration, engine: Engine) -> Result<RationalFunction> {
    invariant_of(&ColoredDiagram::new(d.clone(), coloration)?, engine)
}

pub fn invariant_of(cd: &ColoredDiagram, engine: Engine) -> Result<RationalFunction> {
    match engine {
        Engine::StateSum => state_sum(cd),
        Engine::Recursive => skein_recursive(cd),
        Engine::Both => {
            let a = state_sum(cd)?;
            let b = skein_recursive(cd)?;
            if a.rf_equals(&b) {
                Ok(a)
            } else {
                Err(Error::EngineDisagreement { state_sum: format!("{a}"), recursive: format!("{b}") })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_rational;
    use crate::diagram::braid::{braid_closure, Generator::*};
    use crate::diagram::tests::{hopf_pos, trefoil};
    use alloc::vec;

    fn uniform(d: Diagram) -> ColoredDiagram {
        ColoredDiagram::uniform(d)
    }

    #[test]
    fn unknot_is_one() {
        assert!(skein_recursive(&uniform(Diagram::unknot())).unwrap().is_one());
        let curl = uniform(braid_closure(1, &[])).with_circle(0);
        assert!(skein_recursive(&curl).unwrap().rf_equals(&NamedConstant::DeltaSame.value()));
    }

    #[test]
    fn hopf_single_color() {
        let v = skein_recursive(&uniform(hopf_pos())).unwrap();
        let expect = parse_rational("w*(t^2*w^2 + t - 1 - t^2)/(1 - t)").unwrap();
        assert!(v.rf_equals(&expect), "{v}");
    }

    #[test]
    fn engines_agree_on_small_links() {
        let cases = [
            (uniform(hopf_pos()), "hopf"),
            (ColoredDiagram::new(hopf_pos(), &Coloration(vec![0, 1])).unwrap(), "hopf 2"),
            (uniform(trefoil()), "trefoil"),
            (uniform(braid_closure(2, &[Sigma(0), SigmaInv(0)])), "r2"),
            (uniform(braid_closure(2, &[Sigma(0), Tau(0)])), "mixed"),
        ];
        for (cd, name) in cases {
            let a = state_sum(&cd).unwrap();
            let b = skein_recursive(&cd).unwrap();
            assert!(a.rf_equals(&b), "{name}: {a} vs {b}");
        }
    }

    #[test]
    fn singular_relations_agree() {
        let cd = uniform(braid_closure(2, &[Tau(0), Sigma(0), Sigma(0)]));
        let a = SkeinRecursion::new(SingularRelation::Positive).evaluate(&cd).unwrap();
        let b = SkeinRecursion::new(SingularRelation::Negative).evaluate(&cd).unwrap();
        assert!(a.rf_equals(&b), "{a} vs {b}");
    }
}
