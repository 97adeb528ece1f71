//! Degree-4 building blocks through points of 𝒮, cyclic covers, and the
//! cut-and-graft constructions of rational curves of degree `4r` and of
//! curves of genus `r`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::central_fiber::{hyperplane_through, BinaryQuartic, Edge, Hyperplane, PrescribedPoint, ProjPoint};
use crate::curve_graph::{hyperplane_section, validate, CurveGraph, ImageFactor, NodeEdge, SMark};
use crate::error::{Error, Result};
use crate::poly::QuarticForm;
use crate::scalar::Scalar;

fn on_s(f: &QuarticForm, p: &ProjPoint) -> bool {
    p.edge()
        .is_some_and(|e| BinaryQuartic::restrict(f, e).eval_point(p).is_zero())
}

fn require_on_s(f: &QuarticForm, points: &[ProjPoint]) -> Result<()> {
    for p in points {
        if p.edge().is_none() {
            return Err(Error::Precondition(format!("{p} is not in the interior of an edge")));
        }
        if !on_s(f, p) {
            return Err(Error::Precondition(format!("{p} is not a point of the singular locus")));
        }
    }
    Ok(())
}

fn expect_shape(g: &CurveGraph, nodes: usize, marks: usize, what: &str) -> Result<()> {
    if g.nodes.len() != nodes || g.marks.len() != marks {
        return Err(Error::Degenerate(format!(
            "{what}: expected {nodes} nodes and {marks} marks, got {} and {}",
            g.nodes.len(),
            g.marks.len()
        )));
    }
    Ok(())
}

/// The hyperplane section through three points of 𝒮 not all in one plane:
/// four lines, three nodes, three partnered pairs of marks, genus 0.
pub fn degree4_rational(f: &QuarticForm, points: &[ProjPoint]) -> Result<CurveGraph> {
    if points.len() != 3 {
        return Err(Error::Precondition(format!("need exactly 3 points of 𝒮, got {}", points.len())));
    }
    require_on_s(f, points)?;
    let space = hyperplane_through(points)?;
    if space.meets_several_components == Some(false) {
        return Err(Error::Precondition("the three points lie in a single component".into()));
    }
    let h = space.unique().expect("three independent points").clone();
    let g = hyperplane_section(&h, f)?;
    expect_shape(&g, 3, 6, "degree-4 rational curve")?;
    Ok(g)
}

/// The hyperplane section through two points of 𝒮 and an edge point
/// `through_node` off 𝒮: four nodes, two pairs of marks, genus 1.
pub fn degree4_elliptic(f: &QuarticForm, points: &[ProjPoint], through_node: &ProjPoint) -> Result<CurveGraph> {
    if points.len() != 2 {
        return Err(Error::Precondition(format!("need exactly 2 points of 𝒮, got {}", points.len())));
    }
    require_on_s(f, points)?;
    check_node_point(f, through_node)?;
    let mut all = points.to_vec();
    all.push(through_node.clone());
    let space = hyperplane_through(&all)?;
    let h = space.unique().expect("three independent points").clone();
    let g = hyperplane_section(&h, f)?;
    expect_shape(&g, 4, 4, "degree-4 elliptic curve")?;
    if !g.nodes.iter().any(|e| &e.point == through_node) {
        return Err(Error::Degenerate(format!("{through_node} is not a node of the section")));
    }
    Ok(g)
}

/// A hyperplane section through one point of 𝒮 and an edge point
/// `through_node` off 𝒮: five nodes, one pair of marks, genus 2. Among the
/// pencil of such hyperplanes, the first member with this shape in a fixed
/// enumeration is taken.
pub fn degree4_genus2(f: &QuarticForm, point: &ProjPoint, through_node: &ProjPoint) -> Result<CurveGraph> {
    require_on_s(f, std::slice::from_ref(point))?;
    check_node_point(f, through_node)?;
    let space = hyperplane_through(&[point.clone(), through_node.clone()])?;
    let [b0, b1] = [&space.basis[0], &space.basis[1]];
    for n in 1..=12i64 {
        for (s, t) in [(1, n), (n, 1), (1, -n), (-n, 1)] {
            let h = Hyperplane(std::array::from_fn(|i| {
                &(&Scalar::int(s) * b0.coeff(i)) + &(&Scalar::int(t) * b1.coeff(i))
            }));
            let Ok(g) = hyperplane_section(&h, f) else { continue };
            if g.nodes.len() == 5 && g.marks.len() == 2 && validate(&g, f).simply_pre_smoothable {
                return Ok(g);
            }
        }
    }
    Err(Error::Degenerate("no hyperplane of the pencil gives a genus 2 section".into()))
}

fn check_node_point(f: &QuarticForm, p: &ProjPoint) -> Result<()> {
    if p.edge().is_none() {
        return Err(Error::Precondition(format!("{p} is not in the interior of an edge")));
    }
    if on_s(f, p) {
        return Err(Error::Precondition(format!("{p} lies on the singular locus")));
    }
    Ok(())
}

/// Cyclic `r`-fold cover of a genus 1 curve together with its sheet layout:
/// the copy of component `v` in sheet `s` has index `s * n + v`, the copy
/// of node `e` in sheet `s` has index `s * m + e`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub curve: CurveGraph,
    pub sheets: usize,
    /// The node of the base whose copies change sheet.
    pub voltage_node: usize,
}

/// The cyclic `r`-fold cover of a genus 1 curve: the copies of one node
/// outside a spanning tree join sheet `s` to sheet `s + 1 mod r`; all
/// other data is replicated.
pub fn cover(curve: &CurveGraph, r: usize) -> Result<CurveGraph> {
    Ok(cover_layout(curve, r)?.curve)
}

pub fn cover_layout(curve: &CurveGraph, r: usize) -> Result<Cover> {
    if r == 0 {
        return Err(Error::Precondition("covering degree must be at least 1".into()));
    }
    if curve.genus()? != 1 {
        return Err(Error::Precondition(format!("cover needs a genus 1 curve, got genus {}", curve.genus()?)));
    }
    let n = curve.components.len();
    let m = curve.nodes.len();
    // Spanning tree by breadth-first search; the leftover node carries the voltage.
    let adj = curve.adjacency();
    let mut seen = vec![false; n];
    let mut tree = BTreeSet::new();
    let mut queue = std::collections::VecDeque::from([0]);
    seen[0] = true;
    while let Some(c) = queue.pop_front() {
        for &(d, e) in &adj[c] {
            if !seen[d] {
                seen[d] = true;
                tree.insert(e);
                queue.push_back(d);
            }
        }
    }
    let voltage_node = (0..m).find(|e| !tree.contains(e)).expect("genus 1 has one non-tree node");
    let mut components = Vec::with_capacity(n * r);
    let mut nodes = Vec::with_capacity(m * r);
    let mut marks = Vec::with_capacity(curve.marks.len() * r);
    for s in 0..r {
        for c in &curve.components {
            let mut c = c.clone();
            if r > 1 {
                c.label = format!("{}{}", c.label, s);
            }
            components.push(c);
        }
    }
    for s in 0..r {
        for (i, e) in curve.nodes.iter().enumerate() {
            let [a, b] = e.ends;
            let sb = if i == voltage_node { (s + 1) % r } else { s };
            nodes.push(NodeEdge {
                ends: [s * n + a, sb * n + b],
                ..e.clone()
            });
        }
    }
    let k = curve.marks.len();
    for s in 0..r {
        for mk in &curve.marks {
            marks.push(SMark {
                component: s * n + mk.component,
                partner: mk.partner.map(|j| s * k + j),
                ..mk.clone()
            });
        }
    }
    let g = CurveGraph::new(components, nodes, marks)?.with_image(curve.image.clone());
    Ok(Cover {
        curve: g,
        sheets: r,
        voltage_node,
    })
}

/// Which connected piece of the cut cover is grafted in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceChoice {
    /// The piece with more components; on a tie, the one not containing
    /// the first component of sheet 0.
    #[default]
    Larger,
    Smaller,
}

/// Data for grafting a covered auxiliary curve into the base rational curve
/// at their common node.
#[derive(Clone, Debug)]
pub struct GraftRecipe {
    pub f: QuarticForm,
    pub base: CurveGraph,
    pub auxiliary: CurveGraph,
    /// The edge carrying the node shared by base and auxiliary curve.
    pub shared_node: Edge,
    pub r: usize,
    /// Sheets of the cover at whose copies of the shared node it is cut.
    pub cut_sheets: [usize; 2],
    pub keep: PieceChoice,
}

impl GraftRecipe {
    pub fn new(f: QuarticForm, base: CurveGraph, auxiliary: CurveGraph, shared_node: Edge, r: usize) -> GraftRecipe {
        GraftRecipe {
            f,
            base,
            auxiliary,
            shared_node,
            r,
            cut_sheets: [0, 1],
            keep: PieceChoice::Larger,
        }
    }

    fn shared_point(&self) -> Result<(usize, ProjPoint)> {
        let i = self
            .base
            .nodes
            .iter()
            .position(|e| e.point.edge() == Some(self.shared_node))
            .ok_or_else(|| Error::Precondition(format!("base curve has no node on {}", self.shared_node)))?;
        let p = self.base.nodes[i].point.clone();
        if on_s(&self.f, &p) {
            return Err(Error::Precondition(format!("shared node {p} lies on the singular locus")));
        }
        Ok((i, p))
    }

    fn aux_node(&self, p: &ProjPoint) -> Result<usize> {
        self.auxiliary
            .nodes
            .iter()
            .position(|e| &e.point == p)
            .ok_or_else(|| Error::Precondition(format!("auxiliary curve has no node at {p}")))
    }
}

/// A graph piece with dangling ends left by cutting at the shared node:
/// `ends[0]` is in the lower-index plane of the shared edge, `ends[1]` in
/// the other.
struct Piece {
    curve: CurveGraph,
    ends: [usize; 2],
}

/// Restriction of `g` to `keep` (sorted indices), dropping nodes leaving
/// it and partners outside it.
fn restrict(g: &CurveGraph, keep: &[usize], drop_nodes: &BTreeSet<usize>) -> (CurveGraph, Vec<Option<usize>>) {
    let mut map = vec![None; g.components.len()];
    for (i, &c) in keep.iter().enumerate() {
        map[c] = Some(i);
    }
    let components = keep.iter().map(|&c| g.components[c].clone()).collect();
    let nodes = g
        .nodes
        .iter()
        .enumerate()
        .filter(|(i, e)| !drop_nodes.contains(i) && e.ends.iter().all(|&c| map[c].is_some()))
        .map(|(_, e)| NodeEdge {
            ends: e.ends.map(|c| map[c].unwrap()),
            ..e.clone()
        })
        .collect();
    let kept_marks: Vec<usize> = (0..g.marks.len()).filter(|&i| map[g.marks[i].component].is_some()).collect();
    let mut mark_map = vec![None; g.marks.len()];
    for (i, &m) in kept_marks.iter().enumerate() {
        mark_map[m] = Some(i);
    }
    let marks = kept_marks
        .iter()
        .map(|&m| {
            let mk = &g.marks[m];
            SMark {
                component: map[mk.component].unwrap(),
                partner: mk.partner.and_then(|j| mark_map[j]),
                ..mk.clone()
            }
        })
        .collect();
    (
        CurveGraph {
            components,
            nodes,
            marks,
            image: Vec::new(),
        },
        map,
    )
}

/// Connected components of `g` with the nodes in `cut` removed.
fn pieces(g: &CurveGraph, cut: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let n = g.components.len();
    let mut label = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![start];
        label[start] = id;
        let mut members = vec![start];
        while let Some(c) = stack.pop() {
            for (d, e) in g.adjacency()[c].iter().copied() {
                if !cut.contains(&e) && label[d] == usize::MAX {
                    label[d] = id;
                    members.push(d);
                    stack.push(d);
                }
            }
        }
        members.sort();
        out.push(members);
    }
    out
}

/// Splits the base curve at its node `node`; returns the piece holding the
/// end in the lower-index plane of the shared edge and the other piece.
fn split_base(base: &CurveGraph, node: usize) -> Result<[Piece; 2]> {
    let e = &base.nodes[node];
    let [a, b] = sorted_ends(base, e);
    let cut = BTreeSet::from([node]);
    let parts = pieces(base, &cut);
    if parts.len() != 2 {
        return Err(Error::Precondition("the shared node does not disconnect the base curve".into()));
    }
    let mk = |end: usize| -> Piece {
        let members = parts.iter().find(|p| p.contains(&end)).unwrap();
        let (curve, map) = restrict(base, members, &cut);
        let e = map[end].unwrap();
        Piece { curve, ends: [e, e] }
    };
    Ok([mk(a), mk(b)])
}

/// Ends of a node ordered by plane index.
fn sorted_ends(g: &CurveGraph, e: &NodeEdge) -> [usize; 2] {
    let [a, b] = e.ends;
    if g.components[a].plane() < g.components[b].plane() {
        [a, b]
    } else {
        [b, a]
    }
}

/// Disjoint union of pieces with extra nodes between them;
/// `glue` refers to (piece, component) pairs.
fn assemble(pieces: &[&CurveGraph], glue: &[((usize, usize), (usize, usize))], point: &ProjPoint) -> Result<CurveGraph> {
    let mut offs = Vec::new();
    let mut moffs = Vec::new();
    let (mut nc, mut nm) = (0, 0);
    for p in pieces {
        offs.push(nc);
        moffs.push(nm);
        nc += p.components.len();
        nm += p.marks.len();
    }
    let mut components = Vec::new();
    let mut nodes = Vec::new();
    let mut marks = Vec::new();
    for (i, p) in pieces.iter().enumerate() {
        components.extend(p.components.iter().cloned());
        nodes.extend(p.nodes.iter().map(|e| NodeEdge {
            ends: e.ends.map(|c| c + offs[i]),
            ..e.clone()
        }));
        marks.extend(p.marks.iter().map(|m| SMark {
            component: m.component + offs[i],
            partner: m.partner.map(|j| j + moffs[i]),
            ..m.clone()
        }));
    }
    for &((pa, ca), (pb, cb)) in glue {
        nodes.push(NodeEdge::new(offs[pa] + ca, offs[pb] + cb, point.clone()));
    }
    CurveGraph::new(components, nodes, marks)
}

fn image_factor(g: &CurveGraph, what: &str) -> Result<Hyperplane> {
    g.image
        .first()
        .map(|f| f.hyperplane.clone())
        .ok_or_else(|| Error::Precondition(format!("{what} carries no image hyperplane")))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Construction(msg()))
    }
}

/// Covers the genus 1 auxiliary curve `r` times, cuts the cover at the
/// copies of the shared node in the two cut sheets, keeps one piece, and
/// glues it into the base curve cut open at the shared node. The result is
/// a rational curve of degree `4r` with `4r + 2` marks, cut out by
/// `H_base · H_aux^(r-1)`.
pub fn graft_rational(recipe: &GraftRecipe) -> Result<CurveGraph> {
    let r = recipe.r;
    if r == 0 {
        return Err(Error::Precondition("covering degree must be at least 1".into()));
    }
    check_inputs(recipe, 0, 1)?;
    let (base_node, p) = recipe.shared_point()?;
    let aux_node = recipe.aux_node(&p)?;
    let [lower, upper] = split_base(&recipe.base, base_node)?;
    let grafted = if r == 1 {
        assemble(&[&lower.curve, &upper.curve], &[((0, lower.ends[0]), (1, upper.ends[0]))], &p)?
    } else {
        let cov = cover_layout(&recipe.auxiliary, r)?;
        let m = recipe.auxiliary.nodes.len();
        let [s0, s1] = recipe.cut_sheets;
        check(s0 < r && s1 < r && s0 != s1, || format!("cut sheets {s0}, {s1} invalid for r = {r}"))?;
        let cut = BTreeSet::from([s0 * m + aux_node, s1 * m + aux_node]);
        let mut parts = pieces(&cov.curve, &cut);
        check(parts.len() == 2, || format!("cutting the cover gave {} pieces", parts.len()))?;
        parts.sort_by_key(|p| (p.len(), p.contains(&0)));
        let chosen = match recipe.keep {
            PieceChoice::Larger => &parts[1],
            PieceChoice::Smaller => &parts[0],
        };
        let (piece, map) = restrict(&cov.curve, chosen, &cut);
        let mut ends = [None, None];
        for &i in &cut {
            let e = &cov.curve.nodes[i];
            for (slot, &c) in sorted_ends(&cov.curve, e).iter().enumerate() {
                if let Some(j) = map[c] {
                    ends[slot] = Some(j);
                }
            }
        }
        let (Some(ea), Some(eb)) = (ends[0], ends[1]) else {
            return Err(Error::Construction("cut piece lacks an end in each plane".into()));
        };
        assemble(
            &[&lower.curve, &upper.curve, &piece],
            &[((2, ea), (1, upper.ends[0])), ((2, eb), (0, lower.ends[0]))],
            &p,
        )?
    };
    let mut image = vec![ImageFactor {
        hyperplane: image_factor(&recipe.base, "base curve")?,
        power: 1,
    }];
    if r > 1 {
        image.push(ImageFactor {
            hyperplane: image_factor(&recipe.auxiliary, "auxiliary curve")?,
            power: r as u32 - 1,
        });
    }
    let g = grafted.with_image(image);
    let r64 = r as i64;
    check(g.is_connected(), || "grafted curve is disconnected".into())?;
    check(g.genus()? == 0, || format!("grafted curve has genus {}", g.genus().unwrap_or(-1)))?;
    check(g.components.len() == 4 * r, || format!("{} components, expected {}", g.components.len(), 4 * r))?;
    check(g.marks.len() == 4 * r + 2, || format!("{} marks, expected {}", g.marks.len(), 4 * r64 + 2))?;
    check(g.degree() == 4 * r as u32, || format!("degree {}, expected {}", g.degree(), 4 * r))?;
    let report = validate(&g, &recipe.f);
    check(report.simply_pre_smoothable, || {
        format!("grafted curve is not simply pre-smoothable: {:?}", report.violations)
    })?;
    Ok(g)
}

/// Cuts the genus 2 auxiliary curve at the shared node, chains `r` copies
/// of the resulting genus 1 piece end to end, and closes the chain with
/// the two pieces of the base curve cut at the shared node. The result has
/// genus `r`, `4 + 4r` components and `6 + 2r` marks.
pub fn graft_genus(recipe: &GraftRecipe) -> Result<CurveGraph> {
    let r = recipe.r;
    if r == 0 {
        return Err(Error::Precondition("number of copies must be at least 1".into()));
    }
    check_inputs(recipe, 0, 2)?;
    let (base_node, p) = recipe.shared_point()?;
    let aux_node = recipe.aux_node(&p)?;
    let [lower, upper] = split_base(&recipe.base, base_node)?;
    let aux = &recipe.auxiliary;
    let cut = BTreeSet::from([aux_node]);
    let all: Vec<usize> = (0..aux.components.len()).collect();
    let (piece, _) = restrict(aux, &all, &cut);
    let [ea, eb] = sorted_ends(aux, &aux.nodes[aux_node]);
    let mut parts: Vec<&CurveGraph> = vec![&lower.curve, &upper.curve];
    for _ in 0..r {
        parts.push(&piece);
    }
    let mut glue = vec![((0, lower.ends[0]), (2, eb))];
    for i in 0..r - 1 {
        glue.push(((2 + i, ea), (3 + i, eb)));
    }
    glue.push(((1 + r, ea), (1, upper.ends[0])));
    let g = assemble(&parts, &glue, &p)?.with_image(vec![
        ImageFactor {
            hyperplane: image_factor(&recipe.base, "base curve")?,
            power: 1,
        },
        ImageFactor {
            hyperplane: image_factor(aux, "auxiliary curve")?,
            power: r as u32,
        },
    ]);
    check(g.is_connected(), || "grafted curve is disconnected".into())?;
    check(g.genus()? == r as i64, || format!("grafted curve has genus {}, expected {r}", g.genus().unwrap_or(-1)))?;
    check(g.components.len() == 4 + 4 * r, || format!("{} components", g.components.len()))?;
    check(g.marks.len() == 6 + 2 * r, || format!("{} marks", g.marks.len()))?;
    let report = validate(&g, &recipe.f);
    check(report.pre_smoothable, || format!("grafted curve is not pre-smoothable: {:?}", report.violations))?;
    Ok(g)
}

fn check_inputs(recipe: &GraftRecipe, base_genus: i64, aux_genus: i64) -> Result<()> {
    let bg = recipe.base.genus()?;
    let ag = recipe.auxiliary.genus()?;
    if bg != base_genus || ag != aux_genus {
        return Err(Error::Precondition(format!(
            "base of genus {bg} and auxiliary of genus {ag}, expected {base_genus} and {aux_genus}"
        )));
    }
    for (g, what) in [(&recipe.base, "base"), (&recipe.auxiliary, "auxiliary")] {
        let rep = validate(g, &recipe.f);
        if !rep.pre_smoothable {
            return Err(Error::Precondition(format!("{what} curve is not pre-smoothable: {:?}", rep.violations)));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraftKind {
    /// Genus 1 auxiliary through two points of 𝒮; rational output.
    Rational,
    /// Genus 2 auxiliary through one point of 𝒮; output of genus `r`.
    Genus,
}

/// Serializable description of a graft: the quartic, the three points of 𝒮
/// for the base curve, the points of 𝒮 for the auxiliary curve, and the
/// edge of the shared node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraftSetup {
    pub f: QuarticForm,
    pub rational_points: Vec<PrescribedPoint>,
    pub auxiliary_points: Vec<PrescribedPoint>,
    pub shared_node: Edge,
    pub kind: GraftKind,
}

impl GraftSetup {
    pub fn base(&self) -> Result<CurveGraph> {
        let pts = points(&self.rational_points)?;
        degree4_rational(&self.f, &pts)
    }

    pub fn recipe(&self, r: usize) -> Result<GraftRecipe> {
        let base = self.base()?;
        let p = base
            .nodes
            .iter()
            .find(|e| e.point.edge() == Some(self.shared_node))
            .ok_or_else(|| Error::Precondition(format!("base curve has no node on {}", self.shared_node)))?
            .point
            .clone();
        let aux_pts = points(&self.auxiliary_points)?;
        let auxiliary = match self.kind {
            GraftKind::Rational => degree4_elliptic(&self.f, &aux_pts, &p)?,
            GraftKind::Genus => {
                if aux_pts.len() != 1 {
                    return Err(Error::Precondition("genus graft needs exactly one auxiliary point".into()));
                }
                degree4_genus2(&self.f, &aux_pts[0], &p)?
            }
        };
        Ok(GraftRecipe::new(self.f.clone(), base, auxiliary, self.shared_node, r))
    }

    pub fn graft(&self, r: usize) -> Result<CurveGraph> {
        let recipe = self.recipe(r)?;
        match self.kind {
            GraftKind::Rational => graft_rational(&recipe),
            GraftKind::Genus => graft_genus(&recipe),
        }
    }

    /// Searches the rational points of 𝒮 of `f` for a configuration of the
    /// given kind: base points on the edges `{z=w=0}`, `{x=w=0}`,
    /// `{x=y=0}`, a shared node on one of the other edges, and auxiliary
    /// points on an opposite pair of edges avoiding the shared one (or on
    /// one edge other than the shared one).
    pub fn find(f: &QuarticForm, kind: GraftKind) -> Result<GraftSetup> {
        let locus = crate::central_fiber::singular_locus(f)?;
        let roots = |a: &str, b: &str| -> Result<Vec<PrescribedPoint>> {
            let e = Edge::from_names(a, b)?;
            Ok(locus
                .on_edge(e)
                .roots
                .iter()
                .map(|r| PrescribedPoint { edge: e, root: r.clone() })
                .collect())
        };
        let (zw, xw, xy) = (roots("z", "w")?, roots("x", "w")?, roots("x", "y")?);
        for p1 in &zw {
            for p2 in &xw {
                for p3 in &xy {
                    let base_pts = vec![p1.clone(), p2.clone(), p3.clone()];
                    let Ok(base) = degree4_rational(f, &points(&base_pts)?) else { continue };
                    if !validate(&base, f).simply_pre_smoothable {
                        continue;
                    }
                    for node in &base.nodes {
                        let shared = node.point.edge().unwrap();
                        for aux in auxiliary_candidates(&locus, shared, kind, &base_pts)? {
                            let recipe = GraftSetup {
                                f: f.clone(),
                                rational_points: base_pts.clone(),
                                auxiliary_points: aux,
                                shared_node: shared,
                                kind,
                            };
                            if recipe.graft(2).is_ok() {
                                return Ok(recipe);
                            }
                        }
                    }
                }
            }
        }
        Err(Error::NoSolution("no graft configuration among the rational points of 𝒮".into()))
    }
}

fn points(p: &[PrescribedPoint]) -> Result<Vec<ProjPoint>> {
    p.iter().map(|x| x.point()).collect()
}

fn auxiliary_candidates(
    locus: &crate::central_fiber::SingularLocus,
    shared: Edge,
    kind: GraftKind,
    used: &[PrescribedPoint],
) -> Result<Vec<Vec<PrescribedPoint>>> {
    let on = |e: Edge| -> Vec<PrescribedPoint> {
        locus
            .on_edge(e)
            .roots
            .iter()
            .map(|r| PrescribedPoint { edge: e, root: r.clone() })
            .filter(|p| !used.contains(p))
            .collect()
    };
    let mut out = Vec::new();
    match kind {
        GraftKind::Rational => {
            for e in Edge::all() {
                let (a, b) = e.vanishing();
                let opp = Edge::new(
                    (0..4).find(|&i| i != a && i != b).unwrap(),
                    (0..4).rev().find(|&i| i != a && i != b).unwrap(),
                )?;
                if e.index() > opp.index() || e == shared || opp == shared {
                    continue;
                }
                for p in on(e) {
                    for q in on(opp) {
                        out.push(vec![p.clone(), q]);
                    }
                }
            }
        }
        GraftKind::Genus => {
            for e in Edge::all() {
                if e != shared {
                    out.extend(on(e).into_iter().map(|p| vec![p]));
                }
            }
        }
    }
    Ok(out)
}
