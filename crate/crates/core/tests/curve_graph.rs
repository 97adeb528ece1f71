mod common;

use degen_core::central_fiber::{design_f, Hyperplane};
use degen_core::curve_graph::{genus, hyperplane_section, hyperplane_section_unmarked, validate, CurveGraph};
use degen_core::error::Error;
use degen_core::fixtures::symmetric_prescription;
use degen_core::graft::{GraftKind, GraftSetup};

fn kind_of(v: &degen_core::curve_graph::Violation) -> String {
    serde_json::to_value(v).unwrap()["kind"].as_str().unwrap().to_string()
}

#[test]
fn generic_section_has_genus_three() {
    let g = hyperplane_section_unmarked(&Hyperplane::from_ints([1, 3, 7, 11])).unwrap();
    assert_eq!(g.components.len(), 4);
    assert_eq!(g.nodes.len(), 6);
    assert_eq!(genus(&g).unwrap(), 3);
    assert_eq!(g.degree(), 4);
    let labels: Vec<&str> = g.components.iter().map(|c| c.label.as_str()).collect();
    assert_eq!(labels, ["m", "n", "k", "l"]);
    let r = validate(&g, &design_f(&symmetric_prescription()).unwrap().f);
    assert!(r.pre_log && r.simply_pre_smoothable, "{:?}", r.violations);
}

#[test]
fn section_through_the_singular_locus_gets_marks() {
    let f = design_f(&symmetric_prescription()).unwrap().f;
    let recipe = GraftSetup::find(&f, GraftKind::Rational).unwrap();
    let g = recipe.base().unwrap();
    assert_eq!(g.nodes.len(), 3);
    assert_eq!(g.marks.len(), 6);
    assert_eq!(g.genus().unwrap(), 0);
    for (i, m) in g.marks.iter().enumerate() {
        let j = m.partner.unwrap();
        assert_eq!(g.marks[j].partner, Some(i));
        assert_ne!(g.marks[j].component, m.component);
    }
    let again = hyperplane_section(&g.image[0].hyperplane, &f).unwrap();
    assert_eq!(again, g);
    let r = validate(&g, &f);
    assert!(!r.pre_log && r.pre_log_away_from_s && r.simply_pre_smoothable);
}

#[test]
fn vertex_hyperplanes_are_rejected() {
    assert!(matches!(
        hyperplane_section_unmarked(&Hyperplane::from_ints([0, 1, 1, 1])),
        Err(Error::Degenerate(_))
    ));
}

#[test]
fn json_and_dot() {
    let f = design_f(&symmetric_prescription()).unwrap().f;
    let g = GraftSetup::find(&f, GraftKind::Rational).unwrap().base().unwrap();
    let back = CurveGraph::from_json(&g.to_json()).unwrap();
    assert_eq!(back, g);
    let dot = g.to_dot();
    assert!(dot.starts_with("graph curve {"));
    assert_eq!(dot.matches('×').count(), 6);
    assert_eq!(dot.matches("style=dotted").count(), 3);
    let mut bad = g.to_json();
    bad["nodes"][0]["ends"] = serde_json::json!([0, 9]);
    assert!(matches!(CurveGraph::from_json(&bad), Err(Error::Malformed(_))));
}

#[test]
fn permutation_preserves_invariants() {
    let f = design_f(&symmetric_prescription()).unwrap().f;
    let g = GraftSetup::find(&f, GraftKind::Rational).unwrap().graft(3).unwrap();
    let n = g.components.len();
    let perm: Vec<usize> = (0..n).map(|i| (i * 5 + 3) % n).collect();
    let p = g.permute_components(&perm).unwrap();
    p.check_structure().unwrap();
    assert_eq!(p.genus().unwrap(), g.genus().unwrap());
    assert_eq!(validate(&p, &f), validate(&g, &f));
    assert!(g.permute_components(&[0, 0]).is_err());
}

#[test]
fn disconnected_curves_have_no_genus() {
    let g = hyperplane_section_unmarked(&Hyperplane::from_ints([1, 2, 3, 4])).unwrap();
    let mut d = g.clone();
    d.nodes.retain(|e| !e.ends.contains(&0));
    assert!(matches!(d.genus(), Err(Error::Disconnected)));
}

#[test]
fn mutation_catalog_is_caught() {
    let f = design_f(&symmetric_prescription()).unwrap().f;
    let g = GraftSetup::find(&f, GraftKind::Rational).unwrap().base().unwrap();
    assert!(validate(&g, &f).violations.is_empty());
    let cases = common::mutations(&g, &f);
    assert_eq!(cases.len(), 9);
    for (name, c, ff) in cases {
        let r = validate(&c, &ff);
        assert!(r.violations.iter().any(|v| kind_of(v) == name), "{name}: {:?}", r.violations);
        assert!(!r.simply_pre_smoothable, "{name}");
    }
}
