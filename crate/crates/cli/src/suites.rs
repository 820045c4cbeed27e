//! Verification suites over the corpus and seeded random diagrams.
//!
//! Every check compares exact values with `rf_equals`.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use tangle_core::algebra::{NamedConstant, RationalFunction};
use tangle_core::diagram::{Coloration, ColoredDiagram, Diagram, Move, NodeKind};
use tangle_core::graph::{find_reducible, reduce_once, GraphEvaluator, Site};
use tangle_core::homfly::{homfly_polynomial, HomflyValue};
use tangle_core::skein::{state_graphs, state_sum_with, SingularRelation, SkeinRecursion};

use crate::corpus::{self, closure};
use crate::format::{to_text, LinkFile};
use crate::generate::{random_link, rng, Rng64, Shape};

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Failure {
    pub case: String,
    pub detail: String,
    /// Replayable text form of the offending diagram.
    pub diagram: String,
}

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Failure>,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        SuiteResult { name: name.into(), ..Default::default() }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }

    fn record(&mut self, case: impl Into<String>, outcome: Result<(), String>, file: Option<&LinkFile>) {
        match outcome {
            Ok(()) => self.passed += 1,
            Err(detail) => {
                self.failed += 1;
                self.failures.push(Failure {
                    case: case.into(),
                    detail,
                    diagram: file.map(to_text).unwrap_or_default(),
                });
            }
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    pub max_crossings: usize,
    pub relation_sites: usize,
    pub move_triples: usize,
    pub strategies: usize,
    pub random_cases: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            max_crossings: 6,
            relation_sites: 200,
            move_triples: 500,
            strategies: 3,
            random_cases: 30,
        }
    }
}

/// Both engines with memo tables shared across calls.
pub struct Evaluator {
    graphs: GraphEvaluator,
    rel1: SkeinRecursion,
    rel2: SkeinRecursion,
}

impl Default for Evaluator {
    fn default() -> Self {
        Self::new()
    }
}

impl Evaluator {
    pub fn new() -> Self {
        Evaluator {
            graphs: GraphEvaluator::new(),
            rel1: SkeinRecursion::new(SingularRelation::Positive),
            rel2: SkeinRecursion::new(SingularRelation::Negative),
        }
    }

    pub fn state_sum(&mut self, cd: &ColoredDiagram) -> Result<RationalFunction, String> {
        state_sum_with(cd, &mut self.graphs).map_err(|e| e.to_string())
    }

    pub fn recursive(&mut self, cd: &ColoredDiagram, rel: SingularRelation) -> Result<RationalFunction, String> {
        match rel {
            SingularRelation::Positive => self.rel1.evaluate(cd),
            SingularRelation::Negative => self.rel2.evaluate(cd),
        }
        .map_err(|e| e.to_string())
    }
}

fn rf(n: i64) -> RationalFunction {
    RationalFunction::from_int(n)
}

fn equal(what: &str, a: &RationalFunction, b: &RationalFunction) -> Result<(), String> {
    if a.rf_equals(b) {
        Ok(())
    } else {
        Err(format!("{what}: {a} != {b}"))
    }
}

/// Unknot, distinct-color unlinks, and circle multiplication on the corpus.
pub fn axioms(_cfg: &SuiteConfig) -> SuiteResult {
    let mut r = SuiteResult::new("axioms");
    let mut ev = Evaluator::new();
    let unknot = ColoredDiagram::uniform(Diagram::unknot());
    for (engine, v) in [("state sum", ev.state_sum(&unknot)), ("recursion", ev.recursive(&unknot, SingularRelation::Positive))] {
        r.record(format!("unknot by {engine}"), v.and_then(|v| equal("value", &v, &rf(1))), None);
    }
    let delta_diff = NamedConstant::DeltaDiff.value();
    let delta_same = NamedConstant::DeltaSame.value();
    for n in 1..=5usize {
        let d = Diagram::new(vec![], (0..n as u32).collect()).expect("loops");
        let file = LinkFile::new(d, &Coloration::distinct(n));
        let want = delta_diff.pow(n as i32 - 1).expect("nonzero");
        let out = ev.state_sum(&file.colored()).and_then(|v| equal("value", &v, &want));
        r.record(format!("{n}-component unlink, distinct colors"), out, Some(&file));
        let same = LinkFile::uniform(file.diagram.clone());
        let want = delta_same.pow(n as i32 - 1).expect("nonzero");
        let out = ev.state_sum(&same.colored()).and_then(|v| equal("value", &v, &want));
        r.record(format!("{n}-component unlink, one color"), out, Some(&same));
    }
    for e in corpus::all().iter().filter(|e| e.crossings() <= 4) {
        let cd = e.file.colored();
        let Ok(base) = ev.state_sum(&cd) else {
            r.record(&e.name, Err("evaluation failed".into()), Some(&e.file));
            continue;
        };
        let first = cd.diagram().components()[0].arcs[0];
        let same = cd.with_circle(cd.class(first));
        let out = ev.state_sum(&same).and_then(|v| equal("same-color circle", &v, &base.mul(&delta_same)));
        r.record(format!("{} plus a same-color circle", e.name), out, Some(&e.file));
        let fresh = cd.with_circle(u32::MAX);
        let out = ev.state_sum(&fresh).and_then(|v| equal("fresh-color circle", &v, &base.mul(&delta_diff)));
        r.record(format!("{} plus a fresh-color circle", e.name), out, Some(&e.file));
    }
    r
}

struct SiteValues {
    pos: RationalFunction,
    neg: RationalFunction,
    smooth: RationalFunction,
    pos_m: RationalFunction,
    neg_m: RationalFunction,
    vertex: RationalFunction,
}

fn site_values(
    cd: &ColoredDiagram,
    n: usize,
    eval: &mut dyn FnMut(&ColoredDiagram) -> Result<RationalFunction, String>,
) -> Result<SiteValues, String> {
    let pos = cd.with_kind(n, NodeKind::Positive);
    let neg = cd.with_kind(n, NodeKind::Negative);
    let (smooth, _) = cd.merge_at(n).oriented_smoothing(n).map_err(|e| e.to_string())?;
    Ok(SiteValues {
        pos: eval(&pos)?,
        neg: eval(&neg)?,
        smooth: eval(&smooth)?,
        pos_m: eval(&pos.merge_at(n))?,
        neg_m: eval(&neg.merge_at(n))?,
        vertex: eval(&cd.with_kind(n, NodeKind::Singular))?,
    })
}

/// The six local identities at one crossing site.
fn site_identities(v: &SiteValues, relation3: bool) -> Vec<(&'static str, RationalFunction, RationalFunction)> {
    let t = RationalFunction::t();
    let w = RationalFunction::w();
    let ti = t.inv().expect("t");
    let wi = w.inv().expect("w");
    let tw = t.mul(&w);
    let twi = tw.inv().expect("tw");
    let one = rf(1);
    let lhs = wi.mul(&v.pos).sub(&w.mul(&v.neg));
    let star_rhs = t.sub(&ti).mul(&v.smooth).add(&tw.mul(&v.neg_m)).sub(&twi.mul(&v.pos_m));
    if relation3 {
        return vec![("switch with merge, recursion values", lhs, star_rhs)];
    }
    vec![
        ("crossing switch", lhs.clone(), one.sub(&ti).mul(&v.smooth).add(&wi.sub(&twi).mul(&v.pos_m))),
        ("merged switch", twi.mul(&v.pos_m).sub(&w.mul(&v.neg_m)), one.sub(&ti).mul(&v.smooth)),
        ("switch with merge", lhs, star_rhs),
        ("vertex by positive crossing", v.vertex.clone(), wi.mul(&v.pos).add(&ti.mul(&v.smooth)).add(&twi.mul(&v.pos_m))),
        ("vertex by negative crossing", v.vertex.clone(), w.mul(&v.neg).add(&t.mul(&v.smooth)).add(&tw.mul(&v.neg_m))),
    ]
}

/// Skein identities at random crossing sites, on state-sum values and once
/// more on recursion values.
pub fn relations(cfg: &SuiteConfig) -> SuiteResult {
    let mut r = SuiteResult::new("relations");
    let mut rng = rng(cfg.seed ^ 0x5e1a);
    let mut ev = Evaluator::new();
    let shape = Shape { max_strands: 4, max_crossings: cfg.max_crossings.min(6), max_vertices: 2 };
    let mut sites = 0;
    let mut guard = 0;
    while sites < cfg.relation_sites && guard < 50 * cfg.relation_sites {
        guard += 1;
        let file = random_link(&mut rng, shape);
        let d = &file.diagram;
        let classical: Vec<usize> = (0..d.nodes().len()).filter(|&i| d.nodes()[i].kind.is_classical()).collect();
        let Some(&n) = classical.choose(&mut rng) else { continue };
        sites += 1;
        let cd = file.colored();
        let case = format!("site {sites} at node {n}");
        let by_sum = site_values(&cd, n, &mut |g| ev.state_sum(g));
        let by_rec = site_values(&cd, n, &mut |g| ev.recursive(g, SingularRelation::Positive));
        let outcome = by_sum.and_then(|a| by_rec.map(|b| (a, b))).and_then(|(a, b)| {
            let mut checks = site_identities(&a, false);
            checks.extend(site_identities(&b, true));
            checks.into_iter().try_for_each(|(name, x, y)| equal(name, &x, &y))
        });
        r.record(case, outcome, Some(&file));
    }
    r.note(format!("{sites} sites, six identities each"));
    r
}

fn expected_variants() -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for side in ["left", "right"] {
        for kind in ["Positive", "Negative"] {
            out.insert(format!("R1 add {side} {kind}"));
        }
        for other in ["left", "right"] {
            for over in ["over", "under"] {
                out.insert(format!("R2 add {side}/{other} {over}"));
            }
        }
    }
    for v in [
        "R1 remove",
        "R2 remove antiparallel",
        "R2 remove parallel",
        "R3 braid",
        "R3 cyclic",
        "R4 braid over",
        "R4 braid under",
        "R4 cyclic over",
        "R4 cyclic under",
        "R5",
    ] {
        out.insert(v.to_string());
    }
    out
}

/// Random (diagram, move, site) triples; the invariant must not change.
pub fn moves(cfg: &SuiteConfig) -> SuiteResult {
    let mut r = SuiteResult::new("moves");
    let mut rng = rng(cfg.seed ^ 0x30e5);
    let mut ev = Evaluator::new();
    let shape = Shape { max_strands: 4, max_crossings: cfg.max_crossings.min(5), max_vertices: 2 };
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut by_family: BTreeMap<&'static str, usize> = BTreeMap::new();
    let families = ["R1", "R2", "R3", "R4", "R5"];
    let mut triples = 0;
    let mut guard = 0;
    while triples < cfg.move_triples && guard < 100 * cfg.move_triples {
        guard += 1;
        let file = random_link(&mut rng, shape);
        let cd = file.colored();
        let all = cd.enumerate_moves();
        // least-used family first so every family is exercised
        let mut order: Vec<&str> = families.to_vec();
        order.sort_by_key(|f| by_family.get(f).copied().unwrap_or(0));
        let Some(pool) = order
            .iter()
            .map(|f| all.iter().filter(|m| m.family() == *f).copied().collect::<Vec<Move>>())
            .find(|p| !p.is_empty())
        else {
            continue;
        };
        // prefer variants not yet seen
        let fresh: Vec<Move> = pool.iter().copied().filter(|m| !seen.contains_key(&cd.move_variant(m))).collect();
        let m = *fresh.choose(&mut rng).or_else(|| pool.choose(&mut rng)).expect("non-empty");
        let variant = cd.move_variant(&m);
        let after = match cd.apply_move(&m) {
            Ok(a) => a,
            Err(e) => {
                r.record(format!("{variant} {m:?}"), Err(e.to_string()), Some(&file));
                continue;
            }
        };
        triples += 1;
        *seen.entry(variant.clone()).or_default() += 1;
        *by_family.entry(m.family()).or_default() += 1;
        let outcome = ev
            .state_sum(&cd)
            .and_then(|a| ev.state_sum(&after).map(|b| (a, b)))
            .and_then(|(a, b)| equal("invariant", &a, &b));
        r.record(format!("{variant} {m:?}"), outcome, Some(&file));
    }
    for (v, n) in &seen {
        r.note(format!("{v}: {n}"));
    }
    let missing: Vec<String> = expected_variants().into_iter().filter(|v| !seen.contains_key(v)).collect();
    let coverage = if missing.is_empty() { Ok(()) } else { Err(format!("variants never exercised: {missing:?}")) };
    r.record("variant coverage", coverage, None);
    r
}

/// State sum and recursion agree on classical corpus diagrams and random ones.
pub fn engine_agreement(cfg: &SuiteConfig) -> SuiteResult {
    let mut r = SuiteResult::new("engine agreement");
    let mut ev = Evaluator::new();
    let mut cases: Vec<(String, LinkFile)> = corpus::classical()
        .into_iter()
        .filter(|e| e.crossings() <= cfg.max_crossings)
        .map(|e| (e.name, e.file))
        .collect();
    let mut rng = rng(cfg.seed ^ 0xa9e);
    let shape = Shape { max_strands: 4, max_crossings: cfg.max_crossings.min(6), max_vertices: 0 };
    cases.extend((0..cfg.random_cases).map(|i| (format!("random classical {i}"), random_link(&mut rng, shape))));
    for (name, file) in cases {
        let cd = file.colored();
        let outcome = ev
            .state_sum(&cd)
            .and_then(|a| ev.recursive(&cd, SingularRelation::Positive).map(|b| (a, b)))
            .and_then(|(a, b)| equal("state sum vs recursion", &a, &b));
        r.record(name, outcome, Some(&file));
    }
    r
}

/// A site chooser driven by its own seeded generator.
fn chooser(mut rng: Rng64) -> impl FnMut(usize) -> usize {
    move |n| rng.gen_range(0..n)
}

fn sites_of(g: &ColoredDiagram) -> Vec<Site> {
    let mut out = Vec::new();
    for k in 0..16 {
        if let Ok(Some(s)) = find_reducible(g, &mut |n: usize| k % n) {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

fn closed_forms(r: &mut SuiteResult) {
    let t = RationalFunction::t();
    let tt = t.add(&t.inv().expect("t"));
    let c_loop = NamedConstant::CLoop.value();
    let same = NamedConstant::DeltaSame.value();
    let diff = NamedConstant::DeltaDiff.value();
    let curl = ColoredDiagram::uniform(closure(2, "t1"));
    let out = GraphEvaluator::new().evaluate(&curl).map_err(|e| e.to_string()).and_then(|v| equal("loop", &v, &c_loop));
    r.record("closed loop relation", out, None);
    let bigon = closure(2, "t1 t1");
    for (tag, coloring, kept) in [("distinct", Coloration::distinct(2), diff.clone()), ("one color", Coloration::uniform(2), same.clone())] {
        let g = ColoredDiagram::new(bigon.clone(), &coloring).expect("two components");
        let parallel = kept.add(&tt.mul(&same)).add(&tt.mul(&c_loop));
        let antiparallel = kept
            .add(&tt.add(&rf(1)).mul(&same))
            .add(&NamedConstant::CBigonAntipar.value());
        for site in sites_of(&g) {
            let want = match site {
                Site::BigonParallel { .. } => &parallel,
                Site::BigonAntiparallel { .. } => &antiparallel,
                _ => continue,
            };
            let out = reduce_once(&g, site).map_err(|e| e.to_string()).and_then(|terms| {
                let mut ev = GraphEvaluator::new();
                let mut acc = rf(0);
                for (w, h) in terms {
                    acc = acc.add(&w.mul(&ev.evaluate(&h).map_err(|e| e.to_string())?));
                }
                equal(site.rule(), &acc, want)
            });
            r.record(format!("closed {} ({tag})", site.rule()), out, None);
        }
    }
}

/// Corpus state graphs with at most five vertices evaluate identically under
/// the default and several randomized strategies.
pub fn confluence(cfg: &SuiteConfig) -> SuiteResult {
    let mut r = SuiteResult::new("confluence");
    closed_forms(&mut r);
    let mut graphs: BTreeMap<Vec<u32>, (String, ColoredDiagram)> = BTreeMap::new();
    for e in corpus::all() {
        if e.crossings() > cfg.max_crossings {
            continue;
        }
        let Ok(lc) = state_graphs(&e.file.colored()) else { continue };
        for (key, _, g) in lc.iter() {
            if g.diagram().nodes().len() <= 5 && !g.diagram().nodes().is_empty() {
                graphs.entry(key.clone()).or_insert_with(|| (e.name.clone(), g.clone()));
            }
        }
    }
    let mut reference = GraphEvaluator::new();
    let mut strategies: Vec<GraphEvaluator<_>> = (0..cfg.strategies.max(3))
        .map(|k| GraphEvaluator::with_chooser(chooser(rng(cfg.seed.wrapping_add(1000 + k as u64)))))
        .collect();
    for (i, (_, (name, g))) in graphs.iter().enumerate() {
        let file = LinkFile::new(g.diagram().clone(), &g.coloration());
        let outcome = reference.evaluate(g).map_err(|e| e.to_string()).and_then(|base| {
            strategies.iter_mut().enumerate().try_for_each(|(k, s)| {
                let v = s.evaluate(g).map_err(|e| e.to_string())?;
                equal(&format!("strategy {k}"), &v, &base)
            })
        });
        r.record(format!("state graph {i} of {name}"), outcome, Some(&file));
    }
    r.note(format!("{} distinct state graphs, {} randomized strategies", graphs.len(), strategies.len()));
    r
}

fn hand_homfly() -> Vec<(&'static str, Diagram, HomflyValue)> {
    let l = HomflyValue::l();
    let m = HomflyValue::m();
    let li = |k: i32| l.pow(-k).expect("l");
    let hopf = li(1).add(&li(3)).div(&m).expect("m").sub(&li(1).mul(&m));
    let two = HomflyValue::one().add(&HomflyValue::one());
    let trefoil = two.mul(&li(2)).add(&li(4)).neg().add(&li(2).mul(&m).mul(&m));
    vec![("positive Hopf", closure(2, "s1 s1"), hopf), ("right trefoil", closure(2, "s1 s1 s1"), trefoil)]
}

/// HOMFLY-PT specialization on single-colored links up to seven crossings.
pub fn homfly(cfg: &SuiteConfig) -> SuiteResult {
    let mut r = SuiteResult::new("homfly");
    let mut ev = Evaluator::new();
    for (name, d, want) in hand_homfly() {
        let out = homfly_polynomial(&d).map_err(|e| e.to_string()).and_then(|p| {
            if p.rf_equals(&want) {
                Ok(())
            } else {
                Err(format!("{p} != {want}"))
            }
        });
        r.record(format!("{name} hand value"), out, Some(&LinkFile::uniform(d)));
    }
    let mut cases: Vec<(String, LinkFile)> = corpus::classical()
        .into_iter()
        .filter(|e| e.file.is_single_colored() && e.crossings() <= 7)
        .map(|e| (e.name, e.file))
        .collect();
    let mut rng = rng(cfg.seed ^ 0x40f);
    let shape = Shape { max_strands: 4, max_crossings: 7, max_vertices: 0 };
    cases.extend((0..cfg.random_cases).map(|i| {
        let f = random_link(&mut rng, shape);
        (format!("random one-color {i}"), LinkFile::uniform(f.diagram))
    }));
    for (name, file) in cases {
        let cd = file.colored();
        let out = homfly_polynomial(&file.diagram)
            .and_then(|p| p.specialize())
            .map_err(|e| e.to_string())
            .and_then(|p| {
                let a = ev.state_sum(&cd)?;
                let b = ev.recursive(&cd, SingularRelation::Positive)?;
                equal("specialized HOMFLY vs state sum", &p, &a)?;
                equal("specialized HOMFLY vs recursion", &p, &b)
            });
        r.record(name, out, Some(&file));
    }
    r
}

/// Positive and negative vertex resolutions agree on singular corpus diagrams (and with the
/// state sum, which keeps vertices as graph vertices).
pub fn singular_paths(cfg: &SuiteConfig) -> SuiteResult {
    let mut r = SuiteResult::new("singular path independence");
    let mut ev = Evaluator::new();
    let mut cases: Vec<(String, LinkFile)> = corpus::singular().into_iter().map(|e| (e.name, e.file)).collect();
    let mut rng = rng(cfg.seed ^ 0x516);
    let shape = Shape { max_strands: 4, max_crossings: 5, max_vertices: 3 };
    let mut i = 0;
    while cases.len() < 30 + cfg.random_cases && i < 100 * cfg.random_cases.max(1) {
        i += 1;
        let f = random_link(&mut rng, shape);
        if f.diagram.singular_count() > 0 {
            cases.push((format!("random singular {i}"), f));
        }
    }
    for (name, file) in cases {
        let cd = file.colored();
        let out = ev.recursive(&cd, SingularRelation::Positive).and_then(|a| {
            let b = ev.recursive(&cd, SingularRelation::Negative)?;
            let c = ev.state_sum(&cd)?;
            equal("positive vs negative resolution", &a, &b)?;
            equal("positive resolution vs state sum", &a, &c)
        });
        r.record(name, out, Some(&file));
    }
    r
}

/// Every computed value lies in Q(x, t, w).
pub fn t_range(cfg: &SuiteConfig) -> SuiteResult {
    let mut r = SuiteResult::new("t-range");
    let mut ev = Evaluator::new();
    let mut cases: Vec<(String, LinkFile)> = corpus::all().into_iter().map(|e| (e.name, e.file)).collect();
    let mut rng = rng(cfg.seed ^ 0x7e);
    cases.extend((0..cfg.random_cases).map(|i| (format!("random {i}"), random_link(&mut rng, Shape::default()))));
    for (name, file) in cases {
        let out = ev.state_sum(&file.colored()).and_then(|v| {
            if v.is_t_expressible() {
                Ok(())
            } else {
                Err(format!("{v} uses odd powers of s or imaginary coefficients"))
            }
        });
        r.record(name, out, Some(&file));
    }
    r
}

/// Engine agreement, HOMFLY, singular path independence and confluence.
pub fn oracles(cfg: &SuiteConfig) -> Vec<SuiteResult> {
    vec![engine_agreement(cfg), homfly(cfg), singular_paths(cfg), confluence(cfg)]
}

pub fn all(cfg: &SuiteConfig) -> Vec<SuiteResult> {
    let mut out = vec![axioms(cfg), relations(cfg), moves(cfg)];
    out.extend(oracles(cfg));
    out.push(t_range(cfg));
    out
}
