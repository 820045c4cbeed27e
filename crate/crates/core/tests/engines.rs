use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tangle_core::diagram::braid::{braid_closure, Generator};
use tangle_core::algebra::RationalFunction;
use tangle_core::diagram::moves::{triangle_is_cyclic, triangles};
use tangle_core::diagram::{Coloration, ColoredDiagram, Faces, Move};
use tangle_core::graph::{reduce_once, GraphEvaluator, Site, TriangleShape};
use tangle_core::skein::{invariant_of, skein_recursive, state_sum_with, Engine};

fn random_diagram(rng: &mut ChaCha8Rng) -> ColoredDiagram {
    let strands = rng.gen_range(2..=4);
    let len = rng.gen_range(1..=4);
    let word: Vec<Generator> = (0..len)
        .map(|_| {
            let i = rng.gen_range(0..strands - 1);
            match rng.gen_range(0..3) {
                0 => Generator::Sigma(i),
                1 => Generator::SigmaInv(i),
                _ => Generator::Tau(i),
            }
        })
        .collect();
    let d = braid_closure(strands, &word);
    let col = Coloration((0..d.component_count()).map(|_| rng.gen_range(0..2)).collect());
    ColoredDiagram::new(d, &col).unwrap()
}

/// Scrambling by moves produces graphs that are not braid closures, so every
/// reduction rule gets exercised.
#[test]
fn state_sum_matches_recursion_on_scrambled_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut rules = BTreeSet::new();
    let mut checked = 0;
    for _ in 0..200 {
        let mut cd = random_diagram(&mut rng);
        for _ in 0..rng.gen_range(0..=2) {
            let ms: Vec<Move> = cd.enumerate_moves().into_iter().filter(|m| !matches!(m, Move::R1Add { .. })).collect();
            if ms.is_empty() {
                break;
            }
            cd = cd.apply_move(&ms[rng.gen_range(0..ms.len())]).unwrap();
        }
        if cd.diagram().nodes().len() > 7 {
            continue;
        }
        let mut ev = GraphEvaluator::new().with_trace();
        let a = state_sum_with(&cd, &mut ev).unwrap();
        rules.extend(ev.take_trace().iter().map(|l| l.split(' ').nth(1).unwrap().to_string()));
        let b = skein_recursive(&cd).unwrap();
        assert!(a.rf_equals(&b), "{:?}: {a} vs {b}", cd.diagram());
        checked += 1;
        // the same graph with every crossing made a vertex, under random site choice
        let mut g = cd.clone();
        for v in 0..g.diagram().nodes().len() {
            if g.diagram().nodes()[v].kind.is_classical() {
                g = g.make_singular(v).unwrap();
            }
        }
        let mut pick = ChaCha8Rng::seed_from_u64(checked);
        let mut ev = GraphEvaluator::with_chooser(move |n: usize| pick.gen_range(0..n)).with_trace();
        let a = ev.evaluate(&g).unwrap();
        rules.extend(ev.take_trace().iter().map(|l| l.split(' ').nth(1).unwrap().to_string()));
        let want = skein_recursive(&g).unwrap();
        assert!(a.rf_equals(&want), "{:?}", g.diagram());
        // cyclic triangles rarely survive until no loop or bigon is left, so reduce them directly
        for t in triangles(g.diagram(), &Faces::new(g.diagram())) {
            if !triangle_is_cyclic(g.diagram(), t.arcs) {
                continue;
            }
            let site = Site::Triangle { arcs: t.arcs, shape: TriangleShape::Cyclic };
            let mut total = RationalFunction::zero();
            for (w, h) in reduce_once(&g, site).unwrap() {
                total = total.add(&w.mul(&skein_recursive(&h).unwrap()));
            }
            assert!(total.rf_equals(&want), "{:?} at {:?}", g.diagram(), t.arcs);
            rules.insert(site.rule().to_string());
        }
    }
    // the octahedral closure has no loop or bigon faces
    let oct = braid_closure(3, &[Generator::Tau(0), Generator::Tau(1)].repeat(3));
    for labels in [vec![0, 0, 0], vec![0, 1, 2], vec![0, 0, 1]] {
        let cd = ColoredDiagram::new(oct.clone(), &Coloration(labels[..oct.component_count()].to_vec())).unwrap();
        let mut ev = GraphEvaluator::new().with_trace();
        let a = state_sum_with(&cd, &mut ev).unwrap();
        rules.extend(ev.take_trace().iter().map(|l| l.split(' ').nth(1).unwrap().to_string()));
        assert!(a.rf_equals(&skein_recursive(&cd).unwrap()));
    }
    assert!(checked >= 100, "{checked}");
    for r in ["loop", "bigon-parallel", "bigon-antiparallel", "triangle-braid", "triangle-cyclic"] {
        assert!(rules.contains(r), "rule {r} never used: {rules:?}");
    }
}

#[test]
fn both_engines_mode_agrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let cd = random_diagram(&mut rng);
        let both = invariant_of(&cd, Engine::Both).unwrap();
        assert!(both.rf_equals(&invariant_of(&cd, Engine::StateSum).unwrap()));
    }
}
