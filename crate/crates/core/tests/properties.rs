use proptest::prelude::*;
use tangle_core::algebra::gcd::gcd;
use tangle_core::algebra::{parse_rational, RationalFunction, Var};
use tangle_core::diagram::braid::{braid_closure, Generator};
use tangle_core::diagram::{Coloration, ColoredDiagram};
use tangle_core::skein::state_sum;

fn poly() -> impl Strategy<Value = RationalFunction> {
    prop::collection::vec((-3i64..=3, 0i32..3, 0i32..3, 0i32..2, any::<bool>()), 1..4).prop_map(|terms| {
        terms.into_iter().fold(RationalFunction::zero(), |acc, (c, es, ew, ex, imag)| {
            let mut m = RationalFunction::from_int(c)
                .mul(&RationalFunction::s().pow(es).unwrap())
                .mul(&RationalFunction::w().pow(ew).unwrap())
                .mul(&RationalFunction::x().pow(ex).unwrap());
            if imag {
                m = m.mul(&RationalFunction::i());
            }
            acc.add(&m)
        })
    })
}

fn rf() -> impl Strategy<Value = RationalFunction> {
    (poly(), poly().prop_filter("nonzero", |p| !p.is_zero())).prop_map(|(n, d)| n.div(&d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(a in rf(), b in rf(), c in rf()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn substitution_is_a_homomorphism(
        a in rf(),
        b in rf(),
        images in prop::collection::vec((1i64..4, -3i64..=3, 0usize..3), 3),
    ) {
        let vars = [RationalFunction::s(), RationalFunction::w(), RationalFunction::x()];
        let map = |v: Var| {
            let (c, d, u) = images[v as usize];
            vars[u].mul(&RationalFunction::from_int(c)).add(&RationalFunction::from_int(d))
        };
        let (Ok(sa), Ok(sb)) = (a.substitute(map), b.substitute(map)) else { return Ok(()) };
        if let Ok(sum) = a.add(&b).substitute(map) {
            prop_assert!(sum.rf_equals(&sa.add(&sb)));
        }
        if let Ok(prod) = a.mul(&b).substitute(map) {
            prop_assert!(prod.rf_equals(&sa.mul(&sb)));
        }
    }

    #[test]
    fn gcd_finds_planted_factor(a in poly(), b in poly(), c in poly()) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let (pa, pb, pc) = (a.num().clone(), b.num().clone(), c.num().clone());
        let g = gcd(&pa.mul(&pc), &pb.mul(&pc));
        prop_assert!(g.div_exact(&pc).is_some(), "{:?} does not contain {:?}", g, pc);
        prop_assert!(pa.mul(&pc).div_exact(&g).is_some());
        prop_assert!(pb.mul(&pc).div_exact(&g).is_some());
    }

    #[test]
    fn normal_form_is_idempotent(a in rf()) {
        let printed = a.to_string();
        let back = parse_rational(&printed).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), printed);
    }
}

fn word() -> impl Strategy<Value = (usize, Vec<Generator>)> {
    (2usize..=3).prop_flat_map(|n| {
        let g = (0..n - 1, 0u8..3).prop_map(|(i, k)| match k {
            0 => Generator::Sigma(i),
            1 => Generator::SigmaInv(i),
            _ => Generator::Tau(i),
        });
        (Just(n), prop::collection::vec(g, 0..4))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Only the partition matters, so renaming colors bijectively changes nothing.
    #[test]
    fn coloring_bijection_invariance((n, w) in word(), seed in any::<u32>()) {
        let d = braid_closure(n, &w);
        let k = d.component_count();
        let labels: Vec<u32> = (0..k).map(|i| (seed >> i) % 2).collect();
        let cd = ColoredDiagram::new(d.clone(), &Coloration(labels.clone())).unwrap();
        let renamed = ColoredDiagram::new(d, &Coloration(labels.iter().map(|l| 100 + 7 * (1 - l)).collect())).unwrap();
        prop_assert!(state_sum(&cd).unwrap().rf_equals(&state_sum(&renamed).unwrap()));
    }
}
