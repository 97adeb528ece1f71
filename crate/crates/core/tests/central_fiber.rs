use degen_core::central_fiber::{
    check_edge_genericity, check_torically_transverse, design_f, hyperplane_through, restriction_matches, singular_locus,
    BinaryQuartic, CentralFiber, Edge, Hyperplane, LineInPlane, PrescribedPoint, ProjPoint,
};
use degen_core::error::Error;
use degen_core::fixtures;
use degen_core::poly::QuarticForm;
use degen_core::Scalar;

fn counting_prescription() -> Vec<PrescribedPoint> {
    // Vertex values (24, 1, 1, 1): ratios 1..4 wherever x survives, the
    // symmetric set elsewhere.
    let mut out = Vec::new();
    for e in Edge::all() {
        let roots: [(i64, i64); 4] = if e.surviving().0 == 0 {
            [(1, 1), (1, 2), (1, 3), (1, 4)]
        } else {
            [(1, 2), (2, 1), (1, -2), (-2, 1)]
        };
        out.extend(roots.iter().map(|&(a, b)| PrescribedPoint::new(e, a, b)));
    }
    out
}

#[test]
fn fiber_combinatorics() {
    let c = CentralFiber::new();
    // dual complex is the boundary of a tetrahedron
    assert_eq!(c.euler_characteristic(), 2);
    for p in 0..4 {
        assert_eq!(c.edges_of_component(p).len(), 3);
        assert_eq!(c.vertices_of_component(p).len(), 3);
    }
}

#[test]
fn designed_quartic_has_prescribed_roots() {
    let p = counting_prescription();
    let d = design_f(&p).unwrap();
    assert!(restriction_matches(&d.f, &p));
    for q in &p {
        assert!(d.f.eval(q.point().unwrap().coords()).is_zero());
    }
    let zw = Edge::new(2, 3).unwrap();
    let form = BinaryQuartic::restrict(&d.f, zw);
    let want = BinaryQuartic::from_roots(zw, &[1, 2, 3, 4].map(|b| (Scalar::one(), Scalar::int(b))));
    assert!(form.is_proportional(&want));
    let s = singular_locus(&d.f).unwrap();
    assert!(s.complete());
    assert_eq!(s.count(), 24);
    let mut got: Vec<String> = s.on_edge(zw).points().iter().map(|x| x.to_string()).collect();
    let mut exp: Vec<String> = (1..=4).map(|b| ProjPoint::from_ints([1, b, 0, 0]).unwrap().to_string()).collect();
    got.sort();
    exp.sort();
    assert_eq!(got, exp);
}

#[test]
fn inconsistent_prescription_has_no_solution() {
    let p: Vec<PrescribedPoint> = Edge::all()
        .into_iter()
        .flat_map(|e| [(1, 1), (1, -1), (1, 2), (1, -2)].map(|(a, b)| PrescribedPoint::new(e, a, b)))
        .collect();
    assert!(matches!(design_f(&p), Err(Error::NoSolution(_))));
}

#[test]
fn designer_rejects_bad_input() {
    let mut p = counting_prescription();
    p[0] = PrescribedPoint::new(p[0].edge, 1, 0);
    assert!(matches!(design_f(&p), Err(Error::Genericity { .. })));
    let mut p = counting_prescription();
    p.pop();
    assert!(matches!(design_f(&p), Err(Error::Precondition(_))));
    let mut p = counting_prescription();
    p[1] = p[0].clone();
    assert!(design_f(&p).is_err());
}

#[test]
fn random_designs_round_trip() {
    for seed in 0..5 {
        let (p, f) = fixtures::designed(seed).unwrap();
        let s = singular_locus(&f).unwrap();
        assert!(s.complete());
        assert_eq!(s.count(), 24);
        for q in &p {
            let pt = q.point().unwrap();
            assert!(s.points().contains(&pt), "seed {seed}: missing {pt}");
        }
    }
}

#[test]
fn fermat_quartic_has_no_rational_singular_points() {
    let f = QuarticForm::from_terms((0..4).map(|i| {
        let mut e = [0u32; 4];
        e[i] = 4;
        (e, Scalar::one())
    }))
    .unwrap();
    let s = singular_locus(&f).unwrap();
    assert_eq!(s.count(), 0);
    assert!(!s.complete());
    assert!(s.edges.iter().all(|e| e.roots.is_empty()));
}

#[test]
fn genericity_failures() {
    let f = QuarticForm::monomial([1, 1, 1, 1], Scalar::one());
    assert!(matches!(check_edge_genericity(&f, Edge::new(0, 1).unwrap()), Err(Error::Genericity { .. })));
    let f = QuarticForm::from_terms([([4, 0, 0, 0], Scalar::one()), ([3, 1, 0, 0], Scalar::one())]).unwrap();
    assert!(check_edge_genericity(&f, Edge::new(2, 3).unwrap()).is_err());
    assert!(singular_locus(&QuarticForm::symbolic()).is_err());
}

#[test]
fn lines_and_boundary_points() {
    let h = Hyperplane::from_ints([1, 2, 3, 4]);
    let l = h.restrict(3);
    assert_eq!(LineInPlane::plane_label(3), "l");
    let b = l.boundary_points().unwrap();
    assert_eq!(b.len(), 3);
    for (e, p) in &b {
        assert!(h.contains(p));
        assert_eq!(p.edge(), Some(*e));
        assert!(e.contains_plane(3));
    }
    assert!(check_torically_transverse(&l));
    assert!(!check_torically_transverse(&LineInPlane::from_ints(3, [1, 0, 2, 1]).unwrap()));
    assert!(LineInPlane::from_ints(3, [0, 0, 0, 1]).is_err());
}

#[test]
fn hyperplane_through_three_points() {
    let pts = [
        ProjPoint::from_ints([1, 2, 0, 0]).unwrap(),
        ProjPoint::from_ints([0, 1, 0, 3]).unwrap(),
        ProjPoint::from_ints([0, 0, 1, -1]).unwrap(),
    ];
    let sp = hyperplane_through(&pts).unwrap();
    let h = sp.unique().unwrap();
    assert!(pts.iter().all(|p| h.contains(p)));
    assert_eq!(sp.meets_several_components, Some(true));
    assert!(hyperplane_through(&[pts[0].clone(), pts[0].clone()]).is_err());
    assert!(hyperplane_through(&[ProjPoint::from_ints([1, 0, 0, 0]).unwrap()]).is_err());
    assert_eq!(hyperplane_through(&pts[..2]).unwrap().dimension(), 2);
}
