//! Dual obstruction space, first-order obstructions at nodes, and local
//! lifting of branches over `C[t]/t^(k+1)`.
//!
//! Sign conventions. On the plane where coordinate `a` vanishes, with
//! surviving coordinates `j0 < j1 < j2`, the residue covectors at the three
//! boundary points are `f_j0 = χ_j1 - χ_j2`, `f_j1 = χ_j2 - χ_j0`,
//! `f_j2 = χ_j0 - χ_j1`, written in the characters `χ_i` of the ambient
//! torus, so that `f_j0 + f_j1 + f_j2 = 0`. A plane's frame enters the
//! residue matching with the orientation sign `(-1)^a`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::central_fiber::{check_torically_transverse, Edge, Hyperplane, LineInPlane, ProjPoint};
use crate::chart::Chart;
use crate::curve_graph::{hyperplane_section_unmarked, validate, CurveGraph, Violation};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{monomial_name, quartic_exponents, Poly, QuarticForm};
use crate::scalar::Scalar;
use crate::series::{self, BiSeries, Laurent, LiftSeries};

/// Ray generators and residue covectors of one coordinate plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneResidueFrame {
    pub plane: usize,
    pub coords: [usize; 3],
    /// `rays[i]` is the ray of the boundary line `X_coords[i] = 0`, as a
    /// vector of the ambient lattice modulo `(1, 1, 1, 1)`.
    pub rays: [[i64; 4]; 3],
    /// `covectors[i]` annihilates `rays[i]`.
    pub covectors: [[i64; 4]; 3],
}

impl PlaneResidueFrame {
    pub fn new(plane: usize) -> Result<PlaneResidueFrame> {
        if plane > 3 {
            return Err(Error::Precondition(format!("no plane {plane}")));
        }
        let mut it = (0..4).filter(|&i| i != plane);
        let coords = [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()];
        let unit = |i: usize| {
            let mut v = [0i64; 4];
            v[i] = 1;
            v
        };
        let diff = |i: usize, j: usize| {
            let mut v = [0i64; 4];
            v[i] = 1;
            v[j] = -1;
            v
        };
        Ok(PlaneResidueFrame {
            plane,
            coords,
            rays: coords.map(unit),
            covectors: [
                diff(coords[1], coords[2]),
                diff(coords[2], coords[0]),
                diff(coords[0], coords[1]),
            ],
        })
    }

    pub fn orientation(&self) -> i64 {
        if self.plane.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// The covector at the boundary point where coordinate `vanishing` is 0.
    pub fn covector_at(&self, vanishing: usize) -> Result<[i64; 4]> {
        let i = self
            .coords
            .iter()
            .position(|&c| c == vanishing)
            .ok_or_else(|| Error::Precondition(format!("coordinate {vanishing} is not a boundary of plane {}", self.plane)))?;
        Ok(self.covectors[i])
    }

    pub fn is_consistent(&self) -> bool {
        let sum = (0..4).all(|k| self.covectors.iter().map(|v| v[k]).sum::<i64>() == 0);
        let annihilates = (0..3).all(|i| {
            let dot: i64 = (0..4).map(|k| self.covectors[i][k] * self.rays[i][k]).sum();
            dot == 0
        });
        sum && annihilates
    }
}

/// The matching conditions at nodes for the scalars `c_v`, one per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSystem {
    pub matrix: Matrix,
}

impl ResidueSystem {
    /// One row per node-edge: the oriented residues of the two branches,
    /// both multiples of `χ_k - χ_l` on the common edge, must cancel. The
    /// entries are the multiples.
    pub fn new(curve: &CurveGraph) -> Result<ResidueSystem> {
        let n = curve.components.len();
        let mut rows = Vec::with_capacity(curve.nodes.len());
        for (i, e) in curve.nodes.iter().enumerate() {
            let [a, b] = e.ends;
            let (pa, pb) = (curve.components[a].plane(), curve.components[b].plane());
            if pa == pb {
                return Err(Error::Precondition(format!("node {i} joins components in the same plane")));
            }
            let (k, _) = Edge::new(pa, pb)?.surviving();
            let mut row = vec![Scalar::zero(); n];
            for (c, p, q) in [(a, pa, pb), (b, pb, pa)] {
                let fr = PlaneResidueFrame::new(p)?;
                let v = fr.orientation() * fr.covector_at(q)?[k];
                row[c] = &row[c] + &Scalar::int(v);
            }
            rows.push(row);
        }
        let matrix = if rows.is_empty() {
            Matrix::zeros(0, n)
        } else {
            Matrix::from_rows(rows)
        };
        Ok(ResidueSystem { matrix })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualObstruction {
    pub dimension: usize,
    /// Kernel basis; each vector is scaled so its first nonzero entry is 1.
    pub basis: Vec<Vec<Scalar>>,
}

impl DualObstruction {
    /// The generator when the space is one-dimensional.
    pub fn generator(&self) -> Option<&[Scalar]> {
        (self.dimension == 1).then(|| self.basis[0].as_slice())
    }
}

/// Dimension and basis of the dual obstruction space of a connected curve.
///
/// Only the conditions that do not involve the quartic are checked here
/// (transversality, node conditions, marks, boundary points); membership
/// of marks in 𝒮 is checked by [`dual_obstruction_dim_for`].
pub fn dual_obstruction_dim(curve: &CurveGraph) -> Result<DualObstruction> {
    curve.check_structure()?;
    if !curve.is_connected() {
        return Err(Error::Disconnected);
    }
    let report = validate(curve, &QuarticForm::zero());
    let bad: Vec<&Violation> = report
        .violations
        .iter()
        .filter(|v| !matches!(v, Violation::NodeOnSingularLocus { .. } | Violation::MarkNotOnSingularLocus { .. }))
        .collect();
    if let Some(v) = bad.first() {
        return Err(Error::Precondition(format!("curve fails validation: {} ({v:?})", v.name())));
    }
    residue_kernel(curve)
}

/// As [`dual_obstruction_dim`], requiring the curve to be pre-smoothable
/// for `f`.
pub fn dual_obstruction_dim_for(curve: &CurveGraph, f: &QuarticForm) -> Result<DualObstruction> {
    let report = validate(curve, f);
    if !report.pre_smoothable {
        let what = report.violations.first().map(|v| v.name()).unwrap_or("unknown");
        return Err(Error::Precondition(format!("curve is not pre-smoothable: {what}")));
    }
    dual_obstruction_dim(curve)
}

fn residue_kernel(curve: &CurveGraph) -> Result<DualObstruction> {
    let sys = ResidueSystem::new(curve)?;
    let basis: Vec<Vec<Scalar>> = sys
        .matrix
        .kernel()
        .into_iter()
        .map(|v| {
            let lead = v.iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(Scalar::one);
            v.iter().map(|x| x / &lead).collect()
        })
        .collect();
    Ok(DualObstruction {
        dimension: basis.len(),
        basis,
    })
}

/// A solved lift of one branch of a line at a point of an edge, in the
/// chart whose pivot is the lower-index nonzero coordinate.
///
/// With `P` the pivot, `F` the other nonzero coordinate, `B` the branch
/// coordinate (the plane on the other side of the edge) and `a` the plane
/// of the line, the lift is
/// `X_F/X_P = Y0 + Y1 u + sum t^j φ_j(u)`, `X_B/X_P = u`,
/// `X_a/X_P = κ sum t^j φ_j(u)`, where `Y0 + Y1 u` parametrizes the line
/// and `κ` moves the lift inside the hyperplane with coefficient
/// `lift_coeff` on `X_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchLift {
    pub chart: Chart,
    pub plane: usize,
    pub branch_coord: usize,
    pub y0: Scalar,
    pub y1: Scalar,
    pub kappa: Scalar,
    /// `phi[j - 1]` is `φ_j`.
    pub phi: Vec<Laurent>,
    pub lift: LiftSeries,
}

impl BranchLift {
    pub fn order(&self) -> u32 {
        self.phi.len() as u32
    }

    pub fn phi(&self, j: u32) -> &Laurent {
        &self.phi[j as usize - 1]
    }

    /// Residue `ε₁` of `φ_1`.
    pub fn epsilon(&self) -> Scalar {
        self.phi[0].coeff(-1)
    }

    /// Constant term `a₁` of `φ_1`.
    pub fn a1(&self) -> Scalar {
        self.phi[0].coeff(0)
    }

    /// Coefficient equations of the lift substituted into the chart
    /// equation; all vanish for a correct lift.
    pub fn residual(&self, f: &QuarticForm) -> Result<Vec<series::CoefficientEquation>> {
        series::series_collect(&chart_equation(&self.chart, f), &self.lift, self.order())
    }
}

/// `(X_1 X_2 X_3 + t f) / X_pivot^4` in the affine chart coordinates and `t`.
pub fn chart_equation(chart: &Chart, f: &QuarticForm) -> Poly {
    let mut eq = Poly::monomial(vec![1, 1, 1, 0], Scalar::one());
    for (e, c) in chart.dehomogenize(f).terms() {
        eq.add_term(vec![e[0], e[1], e[2], 1], c.clone());
    }
    eq
}

/// Solves the lift of the branch of `line` at `point` to order `order` in
/// `t`, with each `φ_j` known through `u^order`.
pub fn local_lift_solve(
    f: &QuarticForm,
    line: &LineInPlane,
    lift_coeff: &Scalar,
    point: &ProjPoint,
    order: u32,
) -> Result<BranchLift> {
    local_lift_solve_to(f, line, lift_coeff, point, order, order as i32 + 1)
}

/// As [`local_lift_solve`] with the lift staying inside `h`.
pub fn local_lift_in(f: &QuarticForm, h: &Hyperplane, plane: usize, point: &ProjPoint, order: u32) -> Result<BranchLift> {
    local_lift_solve(f, &h.restrict(plane), h.coeff(plane), point, order)
}

/// As [`local_lift_solve`], with each `φ_j` known below `u^u_prec`.
pub fn local_lift_solve_to(
    f: &QuarticForm,
    line: &LineInPlane,
    lift_coeff: &Scalar,
    point: &ProjPoint,
    order: u32,
    u_prec: i32,
) -> Result<BranchLift> {
    if order == 0 {
        return Err(Error::Precondition("lift order must be at least 1".into()));
    }
    if !check_torically_transverse(line) {
        return Err(Error::Precondition(format!("line {line} is not torically transverse")));
    }
    if !line.contains(point) {
        return Err(Error::Precondition(format!("{point} is not on the line {line}")));
    }
    let Some(edge) = point.edge() else {
        return Err(Error::Precondition(format!("{point} is not in the interior of an edge")));
    };
    let plane = line.plane;
    let Some(b) = edge.other_plane(plane) else {
        return Err(Error::Precondition(format!("{point} is not on an edge of plane {plane}")));
    };
    if lift_coeff.is_zero() {
        return Err(Error::Precondition("lift direction leaves the plane trivially".into()));
    }
    let chart = Chart::at(point)?;
    let (p, fc) = (chart.pivot, chart.first);
    let h = &line.coeffs;
    let y0 = point.coord(fc).checked_div(point.coord(p))?;
    let y1 = -&h[b].checked_div(&h[fc])?;
    let kappa = -&h[fc].checked_div(lift_coeff)?;
    if y0.is_zero() {
        return Err(Error::NoSolution("branch passes through a vertex".into()));
    }
    let eq = chart_equation(&chart, f);
    let mut margin = 2 * order as i32;
    loop {
        let lift = solve_with_margin(&eq, &chart, plane, b, &y0, &y1, &kappa, order, u_prec + margin)?;
        if lift.phi.iter().all(|x| !x.precision().is_some_and(|q| q < u_prec)) {
            let phi: Vec<Laurent> = lift.phi.iter().map(|x| x.truncate(u_prec)).collect();
            let lift_series = assemble(&chart, plane, b, &y0, &y1, &kappa, &phi, order);
            return Ok(BranchLift {
                phi,
                lift: lift_series,
                ..lift
            });
        }
        margin *= 2;
    }
}

#[allow(clippy::too_many_arguments)]
fn solve_with_margin(
    eq: &Poly,
    chart: &Chart,
    plane: usize,
    b: usize,
    y0: &Scalar,
    y1: &Scalar,
    kappa: &Scalar,
    order: u32,
    cap: i32,
) -> Result<BranchLift> {
    let mut phi: Vec<Laurent> = Vec::new();
    for j in 1..=order {
        let mut trial = phi.clone();
        trial.push(Laurent::zero());
        let lift = assemble(chart, plane, b, y0, y1, kappa, &trial, j);
        let total = series::substitute(eq, &lift, j)?;
        let r = total.t_coeff(j);
        let jj = j as i32;
        if let Some(v) = r.valuation() {
            if v <= -jj {
                return Err(Error::NoSolution(format!(
                    "pole of order {} at t^{j} cannot be absorbed",
                    1 - v
                )));
            }
        }
        // κ u (Y0 + Y1 u) φ_j + R = 0, solved from the lowest power of u.
        let known = r.precision().map_or(cap, |q| q.min(cap + 1));
        let mut coeffs: Vec<Scalar> = Vec::new();
        let mut prev = Scalar::zero();
        for n in -jj..known - 1 {
            let rhs = &r.coeff(n + 1).checked_div(kappa)? + &(y1 * &prev);
            let cur = -&rhs.checked_div(y0)?;
            coeffs.push(cur.clone());
            prev = cur;
        }
        phi.push(Laurent::new(-jj, coeffs, Some(known - 1)));
    }
    let lift = assemble(chart, plane, b, y0, y1, kappa, &phi, order);
    Ok(BranchLift {
        chart: *chart,
        plane,
        branch_coord: b,
        y0: y0.clone(),
        y1: y1.clone(),
        kappa: kappa.clone(),
        phi,
        lift,
    })
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    chart: &Chart,
    plane: usize,
    b: usize,
    y0: &Scalar,
    y1: &Scalar,
    kappa: &Scalar,
    phi: &[Laurent],
    order: u32,
) -> LiftSeries {
    let names = crate::poly::COORD_NAMES;
    let affine = chart.affine();
    let mut coords = vec![BiSeries::zero(order); 3];
    for (slot, &c) in affine.iter().enumerate() {
        let s = &mut coords[slot];
        if c == chart.first {
            s.set_t_coeff(0, Laurent::new(0, vec![y0.clone(), y1.clone()], None));
            for (j, x) in phi.iter().enumerate().take(order as usize) {
                s.set_t_coeff(j as u32 + 1, x.clone());
            }
        } else if c == b {
            s.set_t_coeff(0, Laurent::monomial(Scalar::one(), 1));
        } else if c == plane {
            for (j, x) in phi.iter().enumerate().take(order as usize) {
                s.set_t_coeff(j as u32 + 1, x.scale(kappa));
            }
        }
    }
    let labels = affine
        .iter()
        .map(|&c| format!("{}/{}", names[c], names[chart.pivot]))
        .collect();
    LiftSeries::new(order, labels, coords).expect("consistent lift data")
}

/// One branch's share of a node contribution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineContribution {
    pub component: usize,
    pub line: String,
    pub a1: Scalar,
    pub value: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeContribution {
    pub node: usize,
    pub name: String,
    pub point: ProjPoint,
    pub lines: Vec<LineContribution>,
    pub value: Scalar,
}

/// Pairing of the first-order lift at `node` with the dual generator `c`:
/// each branch contributes `c_v · (-1)^a · σ · a₁ / Y0`, where `σ` is the
/// sign of its residue covector against `χ_F - χ_P`. Lifts move inside
/// the hyperplane `lift`.
pub fn node_contribution(
    f: &QuarticForm,
    curve: &CurveGraph,
    node: usize,
    lift: &Hyperplane,
    c: &[Scalar],
) -> Result<NodeContribution> {
    let e = curve
        .nodes
        .get(node)
        .ok_or_else(|| Error::Precondition(format!("no node {node}")))?;
    let mut lines = Vec::with_capacity(2);
    for &v in &e.ends {
        let comp = &curve.components[v];
        let a = comp.plane();
        if !lift.restrict(a).same_line(&comp.line) {
            return Err(Error::Precondition(format!(
                "component {} is not cut out by {lift}",
                comp.label
            )));
        }
        let bl = local_lift_solve_to(f, &comp.line, lift.coeff(a), &e.point, 1, 1)?;
        let frame = PlaneResidueFrame::new(a)?;
        let sigma = frame.covector_at(bl.branch_coord)?[bl.chart.first];
        let a1 = bl.a1();
        let value = &(&c[v] * &Scalar::int(frame.orientation() * sigma)) * &a1.checked_div(&bl.y0)?;
        lines.push(LineContribution {
            component: v,
            line: comp.label.clone(),
            a1,
            value,
        });
    }
    let value = lines.iter().map(|l| l.value.clone()).sum();
    Ok(NodeContribution {
        node,
        name: format!("{}^{}", curve.components[e.ends[0]].label, curve.components[e.ends[1]].label),
        point: e.point.clone(),
        lines,
        value,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialContribution {
    /// Contribution at each node, in node order.
    pub nodes: Vec<Scalar>,
    pub total: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub nodes: Vec<NodeContribution>,
    /// Keyed by monomial name, for the monomials present in `f`.
    pub per_monomial: BTreeMap<String, MonomialContribution>,
    pub total: Scalar,
}

impl ObstructionReport {
    pub fn node(&self, name: &str) -> Option<&NodeContribution> {
        let (a, b) = name.split_once('^')?;
        self.nodes.iter().find(|n| {
            let (x, y) = n.name.split_once('^').unwrap();
            (x == a && y == b) || (x == b && y == a)
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "nodes": self.nodes.iter().map(|n| serde_json::json!({
                "name": n.name,
                "point": n.point,
                "lines": n.lines.iter().map(|l| serde_json::json!({
                    "line": l.line,
                    "value": l.value,
                })).collect::<Vec<_>>(),
                "value": n.value,
            })).collect::<Vec<_>>(),
            "per_monomial": self.per_monomial.iter().map(|(k, m)| (k.clone(), serde_json::json!({
                "nodes": m.nodes,
                "total": m.total,
            }))).collect::<serde_json::Map<_, _>>(),
            "total": self.total,
        })
    }
}

fn check_section_hyperplane(h: &Hyperplane) -> Result<()> {
    if h.0.iter().any(|c| c.is_zero()) {
        return Err(Error::Degenerate(format!("hyperplane {h} has a zero coefficient")));
    }
    Ok(())
}

/// First-order obstruction of the hyperplane section of `h` (all six
/// intersections nodes) against the perturbation `f`, with every node
/// computed by the lift-solving recipe and the result paired with the dual
/// generator.
pub fn first_order_obstruction(f: &QuarticForm, h: &Hyperplane) -> Result<ObstructionReport> {
    check_section_hyperplane(h)?;
    let curve = hyperplane_section_unmarked(h)?;
    let dual = dual_obstruction_dim(&curve)?;
    let c = dual
        .generator()
        .ok_or_else(|| Error::Construction(format!("dual obstruction space has dimension {}", dual.dimension)))?
        .to_vec();
    let nodes = (0..curve.nodes.len())
        .map(|i| node_contribution(f, &curve, i, h, &c))
        .collect::<Result<Vec<_>>>()?;
    let total = nodes.iter().map(|n| n.value.clone()).sum();
    let mut per_monomial = BTreeMap::new();
    for e in quartic_exponents() {
        let coeff = f.coeff(e);
        if coeff.is_zero() {
            continue;
        }
        let unit = QuarticForm::monomial(e, Scalar::one());
        let vals = (0..curve.nodes.len())
            .map(|i| Ok(&node_contribution(&unit, &curve, i, h, &c)?.value * &coeff))
            .collect::<Result<Vec<_>>>()?;
        let total = vals.iter().cloned().sum();
        per_monomial.insert(monomial_name(e), MonomialContribution { nodes: vals, total });
    }
    Ok(ObstructionReport {
        nodes,
        per_monomial,
        total,
    })
}

/// The contribution of the single node `name` (such as `"l^k"`) of the
/// hyperplane section of `h`.
pub fn obstruction_at_node(f: &QuarticForm, h: &Hyperplane, name: &str) -> Result<NodeContribution> {
    check_section_hyperplane(h)?;
    let curve = hyperplane_section_unmarked(h)?;
    let edge = parse_node_name(name)?;
    let idx = curve
        .nodes
        .iter()
        .position(|e| e.point.edge() == Some(edge))
        .ok_or_else(|| Error::Precondition(format!("no node {name}")))?;
    let dual = dual_obstruction_dim(&curve)?;
    let c = dual
        .generator()
        .ok_or_else(|| Error::Construction("dual obstruction space is not a line".into()))?
        .to_vec();
    node_contribution(f, &curve, idx, h, &c)
}

/// The edge carrying the node named by two line labels, `"l^k"`.
pub fn parse_node_name(name: &str) -> Result<Edge> {
    let plane = |s: &str| match s.trim() {
        "m" => Ok(0),
        "n" => Ok(1),
        "k" => Ok(2),
        "l" => Ok(3),
        other => Err(Error::Parse {
            pos: 0,
            msg: format!("unknown line {other:?}"),
        }),
    };
    let (a, b) = name.split_once('^').ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!("expected two line names joined by '^', got {name:?}"),
    })?;
    let (a, b) = (plane(a)?, plane(b)?);
    if a == b {
        return Err(Error::Parse {
            pos: 0,
            msg: "a node needs two distinct lines".into(),
        });
    }
    Edge::new(a, b)
}

/// Both branches of the local model `XY + tZ = 0` at the origin, lifted:
/// `(u, -tP - t²R/u, uP + tR)` and `(-tQ - t²S/v, v, vQ + tS)`, with
/// `P = p₁ + p₂u + …`, `Q = q₁ + q₂v + …`, and `R, S` sharing the
/// constant `r₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalModelLift {
    pub branches: [LiftSeries; 2],
    pub smoothes_node: bool,
}

pub fn local_model_lift(p: &[Scalar], q: &[Scalar], r0: &Scalar, order: u32) -> Result<LocalModelLift> {
    local_model_lift_with(p, q, r0, &[], &[], order)
}

/// As [`local_model_lift`], with the higher terms `r₁, r₂, …` of `R` and
/// `s₁, s₂, …` of `S` given.
pub fn local_model_lift_with(
    p: &[Scalar],
    q: &[Scalar],
    r0: &Scalar,
    r_tail: &[Scalar],
    s_tail: &[Scalar],
    order: u32,
) -> Result<LocalModelLift> {
    if p.first().is_none_or(|x| x.is_zero()) || q.first().is_none_or(|x| x.is_zero()) {
        return Err(Error::Precondition("the local model needs p1 q1 != 0".into()));
    }
    if order == 0 {
        return Err(Error::Precondition("lift order must be at least 1".into()));
    }
    let poly = |c0: &Scalar, tail: &[Scalar]| {
        let mut v = vec![c0.clone()];
        v.extend_from_slice(tail);
        Laurent::new(0, v, None)
    };
    let branch = |lead: &[Scalar], tail: &[Scalar], along: usize| {
        let pp = Laurent::new(0, lead.to_vec(), None);
        let rr = poly(r0, tail);
        let mut coords = vec![BiSeries::zero(order); 3];
        let (own, other) = if along == 0 { (0, 1) } else { (1, 0) };
        coords[own].set_t_coeff(0, Laurent::monomial(Scalar::one(), 1));
        coords[other].set_t_coeff(1, pp.neg());
        if order >= 2 {
            coords[other].set_t_coeff(2, rr.shift(-1).neg());
        }
        coords[2].set_t_coeff(0, pp.shift(1));
        coords[2].set_t_coeff(1, rr);
        LiftSeries::new(order, vec!["X".into(), "Y".into(), "Z".into()], coords)
    };
    Ok(LocalModelLift {
        branches: [branch(p, r_tail, 0)?, branch(q, s_tail, 1)?],
        smoothes_node: !r0.is_zero(),
    })
}

/// `XY + tZ` in the variables `X, Y, Z, t`.
pub fn local_model_equation() -> Poly {
    let mut eq = Poly::monomial(vec![1, 1, 0, 0], Scalar::one());
    eq.add_term(vec![0, 0, 1, 1], Scalar::one());
    eq
}

/// Whether the dual generators of two curves agree, after normalizing both
/// at the first pair, on every paired component. Paired components must
/// lie in the same plane on the same line.
pub fn generator_restriction_compare(a: &CurveGraph, b: &CurveGraph, pairing: &[(usize, usize)]) -> Result<bool> {
    let Some(&(p0, q0)) = pairing.first() else {
        return Err(Error::Precondition("empty pairing".into()));
    };
    for &(i, j) in pairing {
        let (Some(ca), Some(cb)) = (a.components.get(i), b.components.get(j)) else {
            return Err(Error::Precondition(format!("pair ({i}, {j}) out of range")));
        };
        if !ca.line.same_line(&cb.line) {
            return Err(Error::Precondition(format!(
                "paired components {} and {} lie on different lines",
                ca.label, cb.label
            )));
        }
    }
    let (da, db) = (dual_obstruction_dim(a)?, dual_obstruction_dim(b)?);
    let (Some(ga), Some(gb)) = (da.generator(), db.generator()) else {
        return Err(Error::Construction(format!(
            "dual obstruction dimensions {} and {}, expected 1",
            da.dimension, db.dimension
        )));
    };
    if ga[p0].is_zero() || gb[q0].is_zero() {
        return Ok(false);
    }
    let (na, nb) = (ga[p0].clone(), gb[q0].clone());
    Ok(pairing.iter().all(|&(i, j)| &ga[i] / &na == &gb[j] / &nb))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frames_are_consistent() {
        for p in 0..4 {
            assert!(PlaneResidueFrame::new(p).unwrap().is_consistent());
        }
    }

    #[test]
    fn node_names() {
        assert_eq!(parse_node_name("l^k").unwrap(), Edge::from_names("z", "w").unwrap());
        assert!(parse_node_name("l^l").is_err());
        assert!(parse_node_name("lk").is_err());
    }

    #[test]
    fn zero_perturbation_lifts_trivially() {
        let h = Hyperplane::symbolic();
        let p = h.restrict(3).edge_point(2).unwrap();
        let bl = local_lift_in(&QuarticForm::zero(), &h, 3, &p, 2).unwrap();
        assert!(bl.phi.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn x4_relations() {
        let h = Hyperplane::symbolic();
        let p = h.restrict(3).edge_point(2).unwrap();
        let f = QuarticForm::monomial([4, 0, 0, 0], Scalar::one());
        let bl = local_lift_in(&f, &h, 3, &p, 1).unwrap();
        let (a, g) = (Scalar::alpha(), Scalar::gamma());
        assert_eq!(bl.epsilon(), -&Scalar::one() / &a);
        assert_eq!(bl.a1(), &g / &(&a * &a));
    }

    #[test]
    fn lift_satisfies_the_equation_to_order_three() {
        let h = Hyperplane::from_ints([2, -3, 5, 1]);
        let f = QuarticForm::from_terms([
            ([4, 0, 0, 0], Scalar::int(1)),
            ([1, 2, 1, 0], Scalar::int(-2)),
            ([0, 1, 0, 3], Scalar::int(3)),
            ([2, 0, 1, 1], Scalar::int(7)),
        ])
        .unwrap();
        for plane in 0..4 {
            for (_, p) in h.restrict(plane).boundary_points().unwrap() {
                let bl = local_lift_in(&f, &h, plane, &p, 3).unwrap();
                let res = bl.residual(&f).unwrap();
                assert!(!res.is_empty());
                assert!(res.iter().all(|e| e.value.is_zero()), "plane {plane} at {p}");
            }
        }
    }

    #[test]
    fn local_model_identity() {
        let one = [Scalar::one()];
        let m = local_model_lift(&one, &one, &Scalar::zero(), 3).unwrap();
        assert!(!m.smoothes_node);
        for b in &m.branches {
            let eqs = series::series_collect(&local_model_equation(), b, 3).unwrap();
            assert!(eqs.iter().all(|e| e.value.is_zero()));
        }
        assert!(local_model_lift(&one, &one, &Scalar::one(), 1).unwrap().smoothes_node);
        assert!(local_model_lift(&[Scalar::zero()], &one, &Scalar::one(), 1).is_err());
    }
}
