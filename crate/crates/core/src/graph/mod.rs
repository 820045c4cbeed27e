//! Evaluation of colored 4-valent planar graphs by local rewriting.
//!
//! Curls, bigons and triangles are removed in that order. When a graph has no
//! curl or bigon, a breadth-first search over triangle flips finds the nearest
//! graph that has one, and the first flip on that path is applied together with
//! its correction terms.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{NamedConstant, RationalFunction};
use crate::diagram::canon::{canonical_form, CanonKey};
use crate::diagram::faces::Faces;
use crate::diagram::moves::{bigons, curl_arcs, flip_triangle, passes, triangles, Pass};
use crate::diagram::surgery::Rewire;
use crate::diagram::{ArcId, ColoredDiagram};
use crate::error::{Error, Result};

/// `(1/(wx))^(c-1) * DELTA_SAME^(n-c)` for `c` classes holding `n` circles.
pub fn unlink_value(circles_per_class: &[usize]) -> Result<RationalFunction> {
    if circles_per_class.is_empty() || circles_per_class.contains(&0) {
        return Err(Error::EmptyUnlink);
    }
    let c = circles_per_class.len() as i32;
    let n: usize = circles_per_class.iter().sum();
    let diff = NamedConstant::DeltaDiff.value().pow(c - 1)?;
    let same = NamedConstant::DeltaSame.value().pow(n as i32 - c)?;
    Ok(diff.mul(&same))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TriangleShape {
    /// One vertex is the source of two sides.
    BraidLike,
    /// Sides run around the face.
    Cyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Site {
    Loop { arc: ArcId },
    BigonParallel { arcs: [ArcId; 2] },
    BigonAntiparallel { arcs: [ArcId; 2] },
    Triangle { arcs: [ArcId; 3], shape: TriangleShape },
}

impl Site {
    pub fn rule(&self) -> &'static str {
        match self {
            Site::Loop { .. } => "loop",
            Site::BigonParallel { .. } => "bigon-parallel",
            Site::BigonAntiparallel { .. } => "bigon-antiparallel",
            Site::Triangle { shape: TriangleShape::BraidLike, .. } => "triangle-braid",
            Site::Triangle { shape: TriangleShape::Cyclic, .. } => "triangle-cyclic",
        }
    }
}

/// Picks one of `n > 0` candidates.
pub trait SiteChooser {
    fn choose(&mut self, n: usize) -> usize;
}

/// Always the first candidate in sorted order.
#[derive(Clone, Copy, Debug, Default)]
pub struct FirstSite;

impl SiteChooser for FirstSite {
    fn choose(&mut self, _n: usize) -> usize {
        0
    }
}

impl<F: FnMut(usize) -> usize> SiteChooser for F {
    fn choose(&mut self, n: usize) -> usize {
        self(n) % n
    }
}

/// Weighted sum of graphs with like terms collected by canonical form.
#[derive(Clone, Debug, Default)]
pub struct LinearCombination {
    terms: BTreeMap<CanonKey, (RationalFunction, ColoredDiagram)>,
}

impl LinearCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, weight: RationalFunction, g: ColoredDiagram) {
        if weight.is_zero() {
            return;
        }
        let key = canonical_form(&g);
        match self.terms.get_mut(&key) {
            Some((w, _)) => {
                *w = w.add(&weight);
                if w.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, (weight, g));
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonKey, &RationalFunction, &ColoredDiagram)> {
        self.terms.iter().map(|(k, (w, g))| (k, w, g))
    }

    pub fn into_terms(self) -> Vec<(RationalFunction, ColoredDiagram)> {
        self.terms.into_values().collect()
    }
}

fn is_graph(g: &ColoredDiagram) -> bool {
    g.diagram().nodes().iter().all(|n| !n.kind.is_classical())
}

fn triangle_shape(ps: &[Pass; 3]) -> TriangleShape {
    let firsts: BTreeSet<usize> = ps.iter().map(|p| p.first.0).collect();
    if firsts.len() == 3 {
        TriangleShape::Cyclic
    } else {
        TriangleShape::BraidLike
    }
}

/// Curl and bigon sites, sorted.
fn direct_sites(g: &ColoredDiagram, faces: &Faces) -> Vec<Site> {
    let d = g.diagram();
    let mut out: Vec<Site> = curl_arcs(d).into_iter().map(|(arc, _)| Site::Loop { arc }).collect();
    if !out.is_empty() {
        return out;
    }
    for b in bigons(d, faces) {
        out.push(if b.is_parallel(faces.ends()) {
            Site::BigonParallel { arcs: b.arcs }
        } else {
            Site::BigonAntiparallel { arcs: b.arcs }
        });
    }
    out
}

fn triangle_sites(g: &ColoredDiagram, faces: &Faces) -> Vec<Site> {
    let d = g.diagram();
    triangles(d, faces)
        .into_iter()
        .map(|t| Site::Triangle { arcs: t.arcs, shape: triangle_shape(&passes(d, faces.ends(), t.arcs)) })
        .collect()
}

/// Next reduction site; `None` for a graph without vertices.
pub fn find_reducible<C: SiteChooser + ?Sized>(g: &ColoredDiagram, chooser: &mut C) -> Result<Option<Site>> {
    let d = g.diagram();
    if d.nodes().is_empty() {
        return Ok(None);
    }
    let faces = Faces::new(d);
    let direct = direct_sites(g, &faces);
    if !direct.is_empty() {
        return Ok(Some(direct[chooser.choose(direct.len())]));
    }
    let bound = 4 * (d.nodes().len() + faces.len());
    let start = triangle_sites(g, &faces);
    if start.is_empty() {
        return Err(Error::SearchBound(format!("{:?}", d)));
    }
    // each state carries the indices of the first flips that reach it
    let mut seen: BTreeSet<CanonKey> = BTreeSet::new();
    seen.insert(canonical_form(g));
    let mut layer: BTreeMap<CanonKey, (ColoredDiagram, BTreeSet<usize>)> = BTreeMap::new();
    for (i, s) in start.iter().enumerate() {
        if let Site::Triangle { arcs, .. } = s {
            let h = flip_triangle(g, *arcs);
            let key = canonical_form(&h);
            if !seen.contains(&key) {
                layer.entry(key).or_insert_with(|| (h, BTreeSet::new())).1.insert(i);
            }
        }
    }
    for _depth in 0..bound {
        let mut hits: BTreeSet<usize> = BTreeSet::new();
        let mut next: BTreeMap<CanonKey, (ColoredDiagram, BTreeSet<usize>)> = BTreeMap::new();
        for (h, firsts) in layer.values() {
            let hf = Faces::new(h.diagram());
            if !direct_sites(h, &hf).is_empty() {
                hits.extend(firsts);
            }
        }
        if !hits.is_empty() {
            let hits: Vec<usize> = hits.into_iter().collect();
            return Ok(Some(start[hits[chooser.choose(hits.len())]]));
        }
        seen.extend(layer.keys().cloned());
        for (h, firsts) in layer.values() {
            let hf = Faces::new(h.diagram());
            for s in triangle_sites(h, &hf) {
                if let Site::Triangle { arcs, .. } = s {
                    let f = flip_triangle(h, arcs);
                    let key = canonical_form(&f);
                    if !seen.contains(&key) {
                        next.entry(key).or_insert_with(|| (f, BTreeSet::new())).1.extend(firsts);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    Err(Error::SearchBound(format!("{:?}", d)))
}

/// Shared coefficients, built once.
#[derive(Clone, Debug)]
struct Coefficients {
    c_loop: RationalFunction,
    t_plus_inv: RationalFunction,
    t_plus_one_plus_inv: RationalFunction,
    c_bigon_antipar: RationalFunction,
    c_triangle: RationalFunction,
}

impl Coefficients {
    fn new() -> Self {
        let t = RationalFunction::t();
        let t_inv = t.inv().expect("t");
        let t_plus_inv = t.add(&t_inv);
        Coefficients {
            c_loop: NamedConstant::CLoop.value(),
            t_plus_one_plus_inv: t_plus_inv.add(&RationalFunction::one()),
            t_plus_inv,
            c_bigon_antipar: NamedConstant::CBigonAntipar.value(),
            c_triangle: NamedConstant::CTriangleDown.value(),
        }
    }
}

fn merged(g: &ColoredDiagram, arcs: &[ArcId]) -> ColoredDiagram {
    let mut out = g.clone();
    for w in arcs.windows(2) {
        out.merge_classes(w[0], w[1]);
    }
    out
}

/// Braid-like triangle: smooth the source and the middle vertex, merging all
/// three strands.
fn triangle_braid_correction(g: &ColoredDiagram, arcs: [ArcId; 3]) -> ColoredDiagram {
    let d = g.diagram();
    let ends = d.arc_ends();
    let ps = passes(d, &ends, arcs);
    let mut out_degree: BTreeMap<usize, usize> = BTreeMap::new();
    for p in &ps {
        *out_degree.entry(p.first.0).or_default() += 1;
        out_degree.entry(p.second.0).or_default();
    }
    let source = *out_degree.iter().find(|(_, &k)| k == 2).expect("source").0;
    let sink = ps.iter().map(|p| p.second.0).find(|n| !ps.iter().any(|p| p.first.0 == *n)).expect("sink");
    let middle = *out_degree.keys().find(|&&n| n != source && n != sink).expect("middle");
    let all = merged(g, &[ps[0].inner, ps[1].inner, ps[2].inner]);
    let mut r = Rewire::new(&all);
    r.remove_smoothed(source);
    r.remove_smoothed(middle);
    r.finish()
}

/// Cyclic triangle: smooth one vertex, then resolve the antiparallel bigon
/// left behind by a turnback, merging all three strands.
fn triangle_cyclic_correction(g: &ColoredDiagram, arcs: [ArcId; 3]) -> ColoredDiagram {
    cyclic_correction_at(g, arcs, 0)
}

/// Smooths the tail of side `k` (sides sorted by arc), turns back at its head.
fn cyclic_correction_at(g: &ColoredDiagram, arcs: [ArcId; 3], k: usize) -> ColoredDiagram {
    let d = g.diagram();
    let ends = d.arc_ends();
    let mut ps = passes(d, &ends, arcs);
    ps.sort_by_key(|p| p.inner);
    let p = &ps[k];
    let smooth = p.first.0;
    let turn = p.second.0;
    let straight = ps.iter().map(|q| q.first.0).find(|&n| n != smooth && n != turn).expect("third vertex");
    let all = merged(g, &[ps[0].inner, ps[1].inner, ps[2].inner]);
    let mut r = Rewire::new(&all);
    r.remove_smoothed(smooth);
    r.remove_smoothed(turn);
    r.remove_straight(straight);
    r.finish()
}

/// One rewriting step at `site`.
pub fn reduce_once(g: &ColoredDiagram, site: Site) -> Result<Vec<(RationalFunction, ColoredDiagram)>> {
    reduce_with(g, site, &Coefficients::new())
}

fn reduce_with(g: &ColoredDiagram, site: Site, k: &Coefficients) -> Result<Vec<(RationalFunction, ColoredDiagram)>> {
    let d = g.diagram();
    if d.nodes().is_empty() {
        return Err(Error::StaleSite);
    }
    let faces = Faces::new(d);
    let ends = faces.ends();
    let one = RationalFunction::one();
    match site {
        Site::Loop { arc } => {
            let (_, v) = curl_arcs(d).into_iter().find(|&(a, _)| a == arc).ok_or(Error::StaleSite)?;
            Ok(alloc::vec![(k.c_loop.clone(), g.pass_through(v)?)])
        }
        Site::BigonParallel { arcs } | Site::BigonAntiparallel { arcs } => {
            let b = bigons(d, &faces).into_iter().find(|b| b.arcs == arcs).ok_or(Error::StaleSite)?;
            let parallel = b.is_parallel(ends);
            if parallel != matches!(site, Site::BigonParallel { .. }) {
                return Err(Error::StaleSite);
            }
            let u = ends[&arcs[0]].tail.node;
            let v = if b.nodes[0] == u { b.nodes[1] } else { b.nodes[0] };
            let both_straight = |h: &ColoredDiagram| {
                let mut r = Rewire::new(h);
                r.remove_straight(u);
                r.remove_straight(v);
                r.finish()
            };
            let strands = merged(g, &arcs);
            let kept = both_straight(g);
            let joined = both_straight(&strands);
            if parallel {
                // figure-derived: the single-vertex term smooths the lower vertex
                let mut r = Rewire::new(&strands);
                r.remove_smoothed(u);
                let single = r.finish();
                Ok(alloc::vec![
                    (one, kept),
                    (k.t_plus_inv.clone(), joined),
                    (k.t_plus_inv.clone(), single),
                ])
            } else {
                // figure-derived: turnback smooths one vertex and passes through the other
                let mut r = Rewire::new(&strands);
                r.remove_smoothed(u);
                r.remove_straight(v);
                let turnback = r.finish();
                Ok(alloc::vec![
                    (one, kept),
                    (k.t_plus_one_plus_inv.clone(), joined),
                    (k.c_bigon_antipar.clone(), turnback),
                ])
            }
        }
        Site::Triangle { arcs, shape } => {
            let t = triangles(d, &faces).into_iter().find(|t| t.arcs == arcs).ok_or(Error::StaleSite)?;
            if triangle_shape(&passes(d, ends, t.arcs)) != shape {
                return Err(Error::StaleSite);
            }
            let flipped = flip_triangle(g, arcs);
            match shape {
                TriangleShape::BraidLike => Ok(alloc::vec![
                    (one.clone(), triangle_braid_correction(g, arcs)),
                    (one.neg(), triangle_braid_correction(&flipped, arcs)),
                    (one, flipped),
                ]),
                TriangleShape::Cyclic => Ok(alloc::vec![
                    (k.c_triangle.clone(), triangle_cyclic_correction(g, arcs)),
                    (k.c_triangle.neg(), triangle_cyclic_correction(&flipped, arcs)),
                    (one, flipped),
                ]),
            }
        }
    }
}

/// Memoizing evaluator of state graphs.
pub struct GraphEvaluator<C: SiteChooser = FirstSite> {
    memo: BTreeMap<CanonKey, RationalFunction>,
    in_progress: BTreeSet<CanonKey>,
    chooser: C,
    coefficients: Coefficients,
    trace: Option<Vec<String>>,
    use_memo: bool,
}

impl GraphEvaluator<FirstSite> {
    pub fn new() -> Self {
        Self::with_chooser(FirstSite)
    }
}

impl Default for GraphEvaluator<FirstSite> {
    fn default() -> Self {
        Self::new()
    }
}

fn fnv(key: &[u32]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for x in key {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

impl<C: SiteChooser> GraphEvaluator<C> {
    pub fn with_chooser(chooser: C) -> Self {
        GraphEvaluator {
            memo: BTreeMap::new(),
            in_progress: BTreeSet::new(),
            chooser,
            coefficients: Coefficients::new(),
            trace: None,
            use_memo: true,
        }
    }

    /// Turns memoization off, so every subgraph is reduced afresh.
    pub fn without_memo(mut self) -> Self {
        self.use_memo = false;
        self
    }

    /// Records one line per reduction: key hash, rule, coefficients.
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn take_trace(&mut self) -> Vec<String> {
        self.trace.as_mut().map(core::mem::take).unwrap_or_default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn evaluate(&mut self, g: &ColoredDiagram) -> Result<RationalFunction> {
        if !is_graph(g) {
            return Err(Error::InvalidDiagram(String::from("state graph has a classical crossing")));
        }
        self.eval(g)
    }

    fn eval(&mut self, g: &ColoredDiagram) -> Result<RationalFunction> {
        if g.diagram().nodes().is_empty() {
            return unlink_value(&g.class_sizes());
        }
        let key = canonical_form(g);
        if self.use_memo {
            if let Some(v) = self.memo.get(&key) {
                return Ok(v.clone());
            }
        }
        if !self.in_progress.insert(key.clone()) {
            return Err(Error::SearchBound(format!("cycle at {:?}", g.diagram())));
        }
        let result = self.reduce_and_sum(g, &key);
        self.in_progress.remove(&key);
        let value = result?;
        if self.use_memo {
            self.memo.insert(key, value.clone());
        }
        Ok(value)
    }

    fn reduce_and_sum(&mut self, g: &ColoredDiagram, key: &CanonKey) -> Result<RationalFunction> {
        let site = find_reducible(g, &mut self.chooser)?.ok_or(Error::StaleSite)?;
        let terms = reduce_with(g, site, &self.coefficients)?;
        if let Some(trace) = self.trace.as_mut() {
            let coeffs: Vec<String> = terms.iter().map(|(w, _)| format!("{w}")).collect();
            trace.push(format!("{:016x} {} [{}]", fnv(key), site.rule(), coeffs.join(", ")));
        }
        let mut acc = RationalFunction::zero();
        for (w, h) in terms {
            acc = acc.add(&w.mul(&self.eval(&h)?));
        }
        Ok(acc)
    }
}

/// Evaluates a state graph with the default strategy.
pub fn evaluate_graph(g: &ColoredDiagram) -> Result<RationalFunction> {
    GraphEvaluator::new().evaluate(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::braid::{braid_closure, Generator::*};
    use crate::diagram::{Coloration, Diagram, Move, NodeKind, Side};
    use alloc::vec::Vec;
    use alloc::vec;

    fn c(n: NamedConstant) -> RationalFunction {
        n.value()
    }

    #[test]
    fn unlink_values() {
        assert!(unlink_value(&[1]).unwrap().is_one());
        assert!(unlink_value(&[1, 1, 1]).unwrap().rf_equals(&c(NamedConstant::DeltaDiff).pow(2).unwrap()));
        assert!(unlink_value(&[2]).unwrap().rf_equals(&c(NamedConstant::DeltaSame)));
        assert_eq!(unlink_value(&[]), Err(Error::EmptyUnlink));
    }

    #[test]
    fn curl_graph() {
        let unknot = ColoredDiagram::uniform(Diagram::unknot());
        let curl = unknot
            .apply_move(&Move::R1Add { arc: 0, side: Side::Left, kind: NodeKind::Positive })
            .unwrap()
            .make_singular(0)
            .unwrap();
        let site = find_reducible(&curl, &mut FirstSite).unwrap();
        assert!(matches!(site, Some(Site::Loop { .. })));
        assert!(evaluate_graph(&curl).unwrap().rf_equals(&c(NamedConstant::CLoop)));
    }

    #[test]
    fn closed_parallel_bigon() {
        let g = braid_closure(2, &[Tau(0), Tau(0)]);
        let g = ColoredDiagram::new(g, &Coloration(vec![0, 1])).unwrap();
        let t = RationalFunction::t();
        let tt = t.add(&t.inv().unwrap());
        let expect = c(NamedConstant::DeltaDiff)
            .add(&tt.mul(&c(NamedConstant::DeltaSame)))
            .add(&tt.mul(&c(NamedConstant::CLoop)));
        let site = find_reducible(&g, &mut FirstSite).unwrap().unwrap();
        assert!(matches!(site, Site::BigonParallel { .. } | Site::BigonAntiparallel { .. }));
        let v = GraphEvaluator::with_chooser(|_n: usize| 0).evaluate(&g).unwrap();
        // both bigon kinds are present on this graph; the values must agree
        let mut pick_last = |n: usize| n - 1;
        let v2 = GraphEvaluator::with_chooser(&mut pick_last).evaluate(&g).unwrap();
        assert!(v.rf_equals(&v2), "{v} vs {v2}");
        assert!(v.rf_equals(&expect), "{v}");
    }

    /// Small graphs with cyclic triangle faces, from scrambled braid closures.
    pub(crate) fn cyclic_samples(count: usize, seed: u64) -> Vec<(ColoredDiagram, [ArcId; 3])> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        let mut tries = 0;
        while out.len() < count && tries < 20 * count {
            tries += 1;
            let strands = rng.gen_range(2..=3);
            let word: Vec<_> = (0..rng.gen_range(1..=4))
                .map(|_| {
                    let i = rng.gen_range(0..strands - 1);
                    if rng.gen_bool(0.5) { Tau(i) } else { Sigma(i) }
                })
                .collect();
            let d = braid_closure(strands, &word);
            let n = d.component_count();
            let col = Coloration((0..n as u32).map(|_| rng.gen_range(0..2)).collect());
            let mut g = ColoredDiagram::new(d, &col).unwrap();
            for _ in 0..rng.gen_range(1..=3) {
                let ms: Vec<Move> = g
                    .enumerate_moves()
                    .into_iter()
                    .filter(|m| matches!(m, Move::R2Add { .. } | Move::R3 { .. } | Move::R4 { .. }))
                    .collect();
                if ms.is_empty() {
                    break;
                }
                g = g.apply_move(&ms[rng.gen_range(0..ms.len())]).unwrap();
            }
            if g.diagram().nodes().len() > 6 {
                continue;
            }
            for v in 0..g.diagram().nodes().len() {
                if g.diagram().nodes()[v].kind.is_classical() {
                    g = g.make_singular(v).unwrap();
                }
            }
            let faces = Faces::new(g.diagram());
            let found = triangles(g.diagram(), &faces)
                .into_iter()
                .find(|t| triangle_shape(&passes(g.diagram(), faces.ends(), t.arcs)) == TriangleShape::Cyclic);
            if let Some(t) = found {
                out.push((g, t.arcs));
            }
        }
        out
    }

    #[test]
    fn cyclic_triangle_relation_matches_recursion() {
        use crate::skein::skein_recursive;
        let k = c(NamedConstant::CTriangleDown);
        let samples = cyclic_samples(25, 3);
        assert!(samples.len() >= 20);
        for (g, arcs) in &samples {
            let f = flip_triangle(g, *arcs);
            let lhs = skein_recursive(g).unwrap().sub(&skein_recursive(&f).unwrap());
            for side in 0..3 {
                let na = skein_recursive(&cyclic_correction_at(g, *arcs, side)).unwrap();
                let nb = skein_recursive(&cyclic_correction_at(&f, *arcs, side)).unwrap();
                assert!(lhs.rf_equals(&k.mul(&na.sub(&nb))), "{:?}", g.diagram());
            }
        }
    }

    #[test]
    fn empty_graph_has_no_site() {
        let g = ColoredDiagram::uniform(Diagram::unknot());
        assert_eq!(find_reducible(&g, &mut FirstSite).unwrap(), None);
    }
}
