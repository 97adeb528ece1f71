mod common;

use degen_core::central_fiber::Hyperplane;
use degen_core::curve_graph::hyperplane_section_unmarked;
use degen_core::error::Error;
use degen_core::fixtures;
use degen_core::obstruction::{
    dual_obstruction_dim, first_order_obstruction, local_lift_in, local_model_equation, local_model_lift,
    local_model_lift_with, obstruction_at_node, parse_node_name, PlaneResidueFrame, ResidueSystem,
};
use degen_core::poly::{quartic_exponents, QuarticForm};
use degen_core::series::series_collect;
use degen_core::Scalar;
use rand::Rng;

fn h() -> Hyperplane {
    Hyperplane::symbolic()
}

#[test]
fn x3w_node_values() {
    let f = QuarticForm::monomial([3, 0, 0, 1], Scalar::one());
    let r = first_order_obstruction(&f, &h()).unwrap();
    let (a, b, g) = (Scalar::alpha(), Scalar::beta(), Scalar::gamma());
    let v = &(&b * &g) / &(&a * &a);
    assert_eq!(r.node("n^l").unwrap().value, v);
    assert_eq!(r.node("k^l").unwrap().value, -&v);
    for name in ["m^n", "m^k", "n^k", "m^l"] {
        assert!(r.node(name).unwrap().value.is_zero(), "{name}");
    }
    assert!(r.total.is_zero());
    assert_eq!(r.nodes.len(), 6);
}

#[test]
fn xy2z_cancels_between_two_nodes() {
    let f = QuarticForm::monomial([1, 2, 1, 0], Scalar::one());
    let r = first_order_obstruction(&f, &h()).unwrap();
    let nonzero: Vec<&str> = r.nodes.iter().filter(|n| !n.value.is_zero()).map(|n| n.name.as_str()).collect();
    assert_eq!(nonzero.len(), 2);
    let lk = &r.node("l^k").unwrap().value;
    let lm = &r.node("l^m").unwrap().value;
    assert!(!lk.is_zero() && !lm.is_zero());
    assert_eq!(lk, &-lm);
    let inv_b = Scalar::one().checked_div(&Scalar::beta()).unwrap();
    assert_eq!(lk, &inv_b);
}

#[test]
fn node_values_match_closed_forms() {
    let mut rng = fixtures::rng(5);
    for _ in 0..10 {
        let f = QuarticForm::from_terms(quartic_exponents().into_iter().map(|e| (e, fixtures::random_rational(&mut rng, 7)))).unwrap();
        for (name, want) in common::l_node_oracle(&f) {
            assert_eq!(obstruction_at_node(&f, &h(), name).unwrap().value, want, "{name}");
        }
    }
}

#[test]
fn random_totals_vanish_for_numeric_sections() {
    let mut rng = fixtures::rng(6);
    for _ in 0..20 {
        let f = fixtures::random_quartic(&mut rng, 20);
        let hh = Hyperplane(std::array::from_fn(|_| fixtures::random_nonzero_rational(&mut rng, 9)));
        let r = first_order_obstruction(&f, &hh).unwrap();
        assert!(r.total.is_zero());
        let per: Scalar = r.per_monomial.values().map(|m| m.total.clone()).sum();
        assert!(per.is_zero());
        assert!(r.per_monomial.values().all(|m| m.total.is_zero()));
    }
}

#[test]
fn first_order_lift_of_a_symbolic_quartic() {
    let f = QuarticForm::symbolic();
    let p = h().restrict(3).edge_point(2).unwrap();
    let bl = local_lift_in(&f, &h(), 3, &p, 1).unwrap();
    let (a, b, g) = (Scalar::alpha(), Scalar::beta(), Scalar::gamma());
    let y0 = -&(&a / &b);
    assert_eq!(bl.y0, y0);
    let c0 = f.eval(&[Scalar::one(), y0.clone(), Scalar::zero(), Scalar::zero()]);
    // g1(Y0): y-derivative of the x-y part; g2(Y0, 0): z-linear, w-free part
    let mut g1 = Scalar::zero();
    let mut g2 = Scalar::zero();
    for e in quartic_exponents() {
        let c = f.coeff(e);
        if e[2] == 0 && e[3] == 0 && e[1] > 0 {
            g1 = &g1 + &(&(&c * &Scalar::int(e[1] as i64)) * &y0.pow(e[1] as i32 - 1).unwrap());
        }
        if e[2] == 1 && e[3] == 0 {
            g2 = &g2 + &(&c * &y0.pow(e[1] as i32).unwrap());
        }
    }
    assert_eq!(bl.epsilon(), -&(&c0 / &a));
    let want = &(&(&(&g / &(&a * &a)) * &c0) + &(&(&g / &(&a * &b)) * &g1)) - &(&g2 / &a);
    assert_eq!(bl.a1(), want);
}

#[test]
fn higher_order_lifts_solve_the_chart_equation() {
    let mut rng = fixtures::rng(8);
    for _ in 0..3 {
        let f = fixtures::random_quartic(&mut rng, 4);
        let hh = Hyperplane::from_ints([3, -1, 2, 5]);
        for plane in 0..4 {
            for (_, p) in hh.restrict(plane).boundary_points().unwrap() {
                let bl = local_lift_in(&f, &hh, plane, &p, 3).unwrap();
                assert!(bl.residual(&f).unwrap().iter().all(|e| e.value.is_zero()));
            }
        }
    }
}

#[test]
fn local_model_satisfies_its_equation() {
    let mut rng = fixtures::rng(9);
    let eq = local_model_equation();
    for _ in 0..20 {
        let mut draw = |n| -> Vec<Scalar> { (0..n).map(|_| fixtures::random_nonzero_rational(&mut rng, 9)).collect() };
        let (p, q, rt, st) = (draw(3), draw(2), draw(2), draw(3));
        let r0 = if rng.gen_bool(0.3) { Scalar::zero() } else { fixtures::random_rational(&mut rng, 9) };
        let m = local_model_lift_with(&p, &q, &r0, &rt, &st, 4).unwrap();
        assert_eq!(m.smoothes_node, !r0.is_zero());
        for b in &m.branches {
            assert!(series_collect(&eq, b, 4).unwrap().iter().all(|e| e.value.is_zero()));
        }
    }
    assert!(local_model_lift(&[Scalar::one()], &[Scalar::one()], &Scalar::one(), 0).is_err());
}

#[test]
fn generic_section_has_a_one_dimensional_dual() {
    let c = hyperplane_section_unmarked(&Hyperplane::from_ints([1, 2, 3, 4])).unwrap();
    let d = dual_obstruction_dim(&c).unwrap();
    assert_eq!(d.dimension, 1);
    let g = d.generator().unwrap();
    assert!(g.iter().all(|x| x == &g[0]));
    assert_eq!(ResidueSystem::new(&c).unwrap().matrix.kernel().len(), 1);
    for p in 0..4 {
        let fr = PlaneResidueFrame::new(p).unwrap();
        assert!(fr.is_consistent());
        assert_eq!(fr.orientation(), if p % 2 == 0 { 1 } else { -1 });
    }
}

#[test]
fn input_errors() {
    let f = QuarticForm::monomial([4, 0, 0, 0], Scalar::one());
    assert!(matches!(
        first_order_obstruction(&f, &Hyperplane::from_ints([1, 0, 2, 3])),
        Err(Error::Degenerate(_))
    ));
    assert!(matches!(obstruction_at_node(&f, &h(), "l^q"), Err(Error::Parse { .. })));
    assert!(parse_node_name("k^k").is_err());
    assert_eq!(parse_node_name("k^l").unwrap(), parse_node_name("l^k").unwrap());
}

#[test]
fn report_json_shape() {
    let f = QuarticForm::monomial([3, 0, 0, 1], Scalar::one());
    let j = first_order_obstruction(&f, &h()).unwrap().to_json();
    assert_eq!(j["nodes"].as_array().unwrap().len(), 6);
    assert_eq!(j["nodes"][0]["lines"].as_array().unwrap().len(), 2);
    assert_eq!(j["total"], "0");
    assert!(j["per_monomial"]["x^3w"]["total"].is_string());
}
