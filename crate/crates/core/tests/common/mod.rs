#![allow(dead_code)]

use degen_core::central_fiber::{LineInPlane, ProjPoint};
use degen_core::curve_graph::{Component, CurveGraph, NodeEdge, SMark};
use degen_core::poly::{quartic_exponents, QuarticForm};
use degen_core::Scalar;

/// Sum of `coeff · r^(exponent of coordinate `ratio`)` over the monomials of
/// `f` with degree 1 in `lin`, degree 0 in `absent`.
fn slice(f: &QuarticForm, lin: usize, absent: usize, ratio: usize, r: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for e in quartic_exponents() {
        if e[lin] == 1 && e[absent] == 0 {
            let c = f.coeff(e);
            if !c.is_zero() {
                acc = &acc + &(&c * &r.pow(e[ratio] as i32).unwrap());
            }
        }
    }
    acc
}

/// Closed forms of the three node values on the line `l` of the section
/// `αx + βy + γz + w`, keyed by node name.
pub fn l_node_oracle(f: &QuarticForm) -> [(&'static str, Scalar); 3] {
    let (a, b, g) = (Scalar::alpha(), Scalar::beta(), Scalar::gamma());
    let a2 = &a * &a;
    let b2 = &b * &b;
    // l ∩ k at [β : -α : 0 : 0], chart x, Y = y/x
    let y0 = -&(&a / &b);
    let g2 = slice(f, 2, 3, 1, &y0);
    let g3 = slice(f, 3, 2, 1, &y0);
    let lk = &(&(&b / &a2) * &g2) - &(&(&(&b * &g) / &a2) * &g3);
    // l ∩ n at [γ : 0 : -α : 0], chart x, Z = z/x
    let z0 = -&(&a / &g);
    let h2 = slice(f, 1, 3, 2, &z0);
    let h3 = slice(f, 3, 1, 2, &z0);
    let ln = &(&(&(&b * &g) / &a2) * &h3) - &(&(&g / &a2) * &h2);
    // l ∩ m at [0 : γ : -β : 0], chart y, Z = z/y
    let z0 = -&(&b / &g);
    let i2 = slice(f, 0, 3, 2, &z0);
    let i3 = slice(f, 3, 0, 2, &z0);
    let lm = &(&(&g / &b2) * &i2) - &(&(&(&a * &g) / &b2) * &i3);
    [("l^k", lk), ("l^n", ln), ("l^m", lm)]
}

/// Mutations of a curve with marks and nodes, each paired with the name of
/// the violation it must trigger and the quartic to validate against.
pub fn mutations(g: &CurveGraph, f: &QuarticForm) -> Vec<(&'static str, CurveGraph, QuarticForm)> {
    assert!(!g.nodes.is_empty() && !g.marks.is_empty());
    let mut out = Vec::new();
    let keep = |c: CurveGraph| (c, f.clone());

    let mut c = g.clone();
    let line = &c.components[0].line;
    let mut k = line.coeffs.clone();
    let zero_at = (0..4).find(|&i| i != line.plane).unwrap();
    k[zero_at] = Scalar::zero();
    c.components[0].line = LineInPlane::new(line.plane, k).unwrap();
    out.push(("not_transverse", keep(c)));

    let mut c = g.clone();
    let copy = Component::new("copy", c.components[0].line.clone());
    c.components.push(copy);
    let p = c.nodes.iter().find(|e| e.ends.contains(&0)).unwrap().point.clone();
    c.nodes.push(NodeEdge::new(0, c.components.len() - 1, p));
    out.push(("same_plane_node", keep(c)));

    let mut c = g.clone();
    c.nodes[0].weights = [1, 2];
    out.push(("weight_mismatch", keep(c)));

    // a perturbation changing the restriction to the first mark's edge
    let m = &g.marks[0];
    let (s0, _) = m.point.edge().unwrap().surviving();
    let mut e = [0u32; 4];
    e[s0] = 4;
    let f2 = f.add(&QuarticForm::monomial(e, Scalar::one()));
    out.push(("mark_not_on_singular_locus", (g.clone(), f2)));

    let mut c = g.clone();
    c.marks.push(SMark::new(m.component, m.point.clone()));
    out.push(("duplicate_mark", keep(c)));

    let mut c = g.clone();
    let n = &c.nodes[0];
    c.marks.push(SMark::new(n.ends[0], n.point.clone()));
    out.push(("mark_at_node", keep(c)));

    // turn the first partnered pair of marks into a node
    let mut c = g.clone();
    let i = g.marks.iter().position(|x| x.partner.is_some()).expect("a partnered mark");
    let j = g.marks[i].partner.unwrap();
    let (a, b) = (c.marks[i].component, c.marks[j].component);
    c.nodes.push(NodeEdge::new(a, b, g.marks[i].point.clone()));
    let drop = [i, j];
    c.marks = c
        .marks
        .iter()
        .enumerate()
        .filter(|(i, _)| !drop.contains(i))
        .map(|(_, x)| SMark {
            partner: None,
            ..x.clone()
        })
        .collect();
    out.push(("node_on_singular_locus", keep(c)));

    let mut c = g.clone();
    c.nodes.remove(0);
    out.push(("unmatched_boundary_point", keep(c)));

    let mut c = g.clone();
    c.components[0].multiplicity = 2;
    out.push(("higher_degree", keep(c)));

    out.into_iter().map(|(n, (c, f))| (n, c, f)).collect()
}

pub fn point(c: [i64; 4]) -> ProjPoint {
    ProjPoint::from_ints(c).unwrap()
}
