use degen_core::central_fiber::{design_f, singular_locus, Hyperplane};
use degen_core::curve_graph::validate;
use degen_core::fixtures::{self, symmetric_prescription};
use degen_core::graft::{GraftKind, GraftSetup};
use degen_core::obstruction::{dual_obstruction_dim, first_order_obstruction};
use degen_core::poly::{quartic_exponents, QuarticForm};
use degen_core::Scalar;
use proptest::prelude::*;

fn quartic() -> impl Strategy<Value = QuarticForm> {
    proptest::collection::vec((-9i64..=9, 1i64..=5), 35).prop_map(|c| {
        QuarticForm::from_terms(quartic_exponents().into_iter().zip(c).map(|(e, (n, d))| (e, Scalar::ratio(n, d)))).unwrap()
    })
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-9i64..=-1, 1i64..=9]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn first_order_total_vanishes(f in quartic(), h in proptest::array::uniform4(nonzero())) {
        let r = first_order_obstruction(&f, &Hyperplane::from_ints(h)).unwrap();
        prop_assert!(r.total.is_zero());
        for m in r.per_monomial.values() {
            prop_assert!(m.total.is_zero());
        }
    }

    #[test]
    fn section_dual_is_a_line(h in proptest::array::uniform4(nonzero())) {
        let g = degen_core::curve_graph::hyperplane_section_unmarked(&Hyperplane::from_ints(h)).unwrap();
        prop_assert_eq!(g.genus().unwrap(), 3);
        prop_assert_eq!(dual_obstruction_dim(&g).unwrap().dimension, 1);
    }

    #[test]
    fn designs_reproduce_their_prescription(seed in 0u64..10_000) {
        let (p, f) = fixtures::designed(seed).unwrap();
        let s = singular_locus(&f).unwrap();
        prop_assert_eq!(s.count(), 24);
        for q in &p {
            prop_assert!(s.points().contains(&q.point().unwrap()));
        }
    }

    #[test]
    fn quartic_json_round_trip(f in quartic()) {
        let back: QuarticForm = serde_json::from_value(serde_json::to_value(&f).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn relabeling_a_graft_keeps_its_invariants(r in 1usize..=4, shift in 0usize..64) {
        let f = design_f(&symmetric_prescription()).unwrap().f;
        let g = GraftSetup::find(&f, GraftKind::Rational).unwrap().graft(r).unwrap();
        let n = g.components.len();
        let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
        let p = g.permute_components(&perm).unwrap();
        prop_assert_eq!(p.genus().unwrap(), 0);
        prop_assert_eq!(dual_obstruction_dim(&p).unwrap().dimension, 1);
        prop_assert!(validate(&p, &f).simply_pre_smoothable);
    }
}
