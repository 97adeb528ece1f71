//! Degenerate curves on the central fiber as decorated dual graphs.
//!
//! A vertex is a component mapping isomorphically onto a line in one of the
//! coordinate planes. A node-edge glues two components at a point of the
//! common edge of their planes. Points where a component meets the singular
//! locus 𝒮 are not nodes: they are recorded as S-marks, and the two marks
//! lying over one point of 𝒮 may be declared partners.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::central_fiber::{check_torically_transverse, BinaryQuartic, Edge, Hyperplane, LineInPlane, ProjPoint};
use crate::error::{Error, Result};
use crate::poly::QuarticForm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub label: String,
    pub line: LineInPlane,
    pub multiplicity: u32,
}

impl Component {
    pub fn new(label: impl Into<String>, line: LineInPlane) -> Component {
        Component {
            label: label.into(),
            line,
            multiplicity: 1,
        }
    }

    pub fn plane(&self) -> usize {
        self.line.plane
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeEdge {
    pub ends: [usize; 2],
    pub point: ProjPoint,
    /// Intersection weights of the two branches with the edge, `w'` and `w''`.
    pub weights: [u32; 2],
}

impl NodeEdge {
    pub fn new(a: usize, b: usize, point: ProjPoint) -> NodeEdge {
        NodeEdge {
            ends: [a, b],
            point,
            weights: [1, 1],
        }
    }

    pub fn other(&self, c: usize) -> Option<usize> {
        if self.ends[0] == c {
            Some(self.ends[1])
        } else if self.ends[1] == c {
            Some(self.ends[0])
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SMark {
    pub component: usize,
    pub point: ProjPoint,
    pub weight: u32,
    pub partner: Option<usize>,
}

impl SMark {
    pub fn new(component: usize, point: ProjPoint) -> SMark {
        SMark {
            component,
            point,
            weight: 1,
            partner: None,
        }
    }
}

/// A hyperplane factor of the image's defining equation, with exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageFactor {
    pub hyperplane: Hyperplane,
    pub power: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveGraph {
    pub components: Vec<Component>,
    pub nodes: Vec<NodeEdge>,
    pub marks: Vec<SMark>,
    /// The image is cut out on the central fiber by the product of these.
    #[serde(default)]
    pub image: Vec<ImageFactor>,
}

impl CurveGraph {
    /// Checks the incidence data: indices in range, every node point on both
    /// lines (and on the common edge when the planes differ), every mark on
    /// its line and in an edge interior, partners symmetric and coincident.
    pub fn new(components: Vec<Component>, nodes: Vec<NodeEdge>, marks: Vec<SMark>) -> Result<CurveGraph> {
        let g = CurveGraph {
            components,
            nodes,
            marks,
            image: Vec::new(),
        };
        g.check_structure()?;
        Ok(g)
    }

    pub fn with_image(mut self, image: Vec<ImageFactor>) -> CurveGraph {
        self.image = image;
        self
    }

    pub fn check_structure(&self) -> Result<()> {
        let n = self.components.len();
        for (i, c) in self.components.iter().enumerate() {
            if c.line.plane > 3 || !c.line.coeffs[c.line.plane].is_zero() {
                return Err(Error::Malformed(format!("component {i}: bad line data")));
            }
            if c.multiplicity == 0 {
                return Err(Error::Malformed(format!("component {i}: multiplicity 0")));
            }
        }
        for (i, e) in self.nodes.iter().enumerate() {
            let [a, b] = e.ends;
            if a >= n || b >= n {
                return Err(Error::Malformed(format!("node {i}: component index out of range")));
            }
            if a == b {
                return Err(Error::Malformed(format!("node {i}: loop at component {a}")));
            }
            let (la, lb) = (&self.components[a].line, &self.components[b].line);
            if !la.contains(&e.point) || !lb.contains(&e.point) {
                return Err(Error::Malformed(format!("node {i}: {} is not on both lines", e.point)));
            }
            if la.plane != lb.plane {
                let edge = Edge::new(la.plane, lb.plane)?;
                if e.point.edge() != Some(edge) {
                    return Err(Error::Malformed(format!(
                        "node {i}: {} is not in the interior of {edge}",
                        e.point
                    )));
                }
            }
        }
        for (i, m) in self.marks.iter().enumerate() {
            if m.component >= n {
                return Err(Error::Malformed(format!("mark {i}: component index out of range")));
            }
            if !self.components[m.component].line.contains(&m.point) {
                return Err(Error::Malformed(format!("mark {i}: {} is not on its line", m.point)));
            }
            if m.point.edge().is_none() {
                return Err(Error::Malformed(format!("mark {i}: {} is not in an edge interior", m.point)));
            }
            if let Some(j) = m.partner {
                let Some(p) = self.marks.get(j) else {
                    return Err(Error::Malformed(format!("mark {i}: partner out of range")));
                };
                if j == i || p.partner != Some(i) || p.point != m.point {
                    return Err(Error::Malformed(format!("mark {i}: inconsistent partner {j}")));
                }
            }
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.components.len();
        if n == 0 {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for &(d, _) in &adj[c] {
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// For each component, its neighbours with the connecting node index.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.components.len()];
        for (i, e) in self.nodes.iter().enumerate() {
            adj[e.ends[0]].push((e.ends[1], i));
            adj[e.ends[1]].push((e.ends[0], i));
        }
        adj
    }

    /// First Betti number of the dual graph.
    pub fn genus(&self) -> Result<i64> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.nodes.len() as i64 - self.components.len() as i64 + 1)
    }

    /// Total degree of the image.
    pub fn degree(&self) -> u32 {
        self.components.iter().map(|c| c.multiplicity).sum()
    }

    pub fn marks_on(&self, c: usize) -> impl Iterator<Item = (usize, &SMark)> {
        self.marks.iter().enumerate().filter(move |(_, m)| m.component == c)
    }

    /// Applies a relabeling `component i -> perm[i]`.
    pub fn permute_components(&self, perm: &[usize]) -> Result<CurveGraph> {
        let n = self.components.len();
        let set: BTreeSet<usize> = perm.iter().copied().collect();
        if perm.len() != n || set.len() != n || set.iter().any(|&p| p >= n) {
            return Err(Error::Precondition("not a permutation".into()));
        }
        let mut comps = self.components.clone();
        for (i, c) in self.components.iter().enumerate() {
            comps[perm[i]] = c.clone();
        }
        let nodes = self
            .nodes
            .iter()
            .map(|e| NodeEdge {
                ends: e.ends.map(|c| perm[c]),
                ..e.clone()
            })
            .collect();
        let marks = self
            .marks
            .iter()
            .map(|m| SMark {
                component: perm[m.component],
                ..m.clone()
            })
            .collect();
        Ok(CurveGraph {
            components: comps,
            nodes,
            marks,
            image: self.image.clone(),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<CurveGraph> {
        let g: CurveGraph =
            serde_json::from_value(v.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
        g.check_structure()?;
        Ok(g)
    }

    /// Graphviz rendering: components as circles, node-edges as solid edges,
    /// S-marks as leaves drawn with a cross, partners joined by dotted edges.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph curve {\n  node [shape=circle];\n");
        for (i, c) in self.components.iter().enumerate() {
            let _ = writeln!(s, "  c{i} [label=\"{}\"];", c.label);
        }
        for e in &self.nodes {
            let _ = writeln!(s, "  c{} -- c{} [label=\"{}\"];", e.ends[0], e.ends[1], e.point);
        }
        for (i, m) in self.marks.iter().enumerate() {
            let _ = writeln!(s, "  s{i} [shape=plaintext, label=\"×\"];");
            let _ = writeln!(s, "  c{} -- s{i} [label=\"{}\"];", m.component, m.point);
        }
        for (i, m) in self.marks.iter().enumerate() {
            if let Some(j) = m.partner {
                if i < j {
                    let _ = writeln!(s, "  s{i} -- s{j} [style=dotted];");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotTransverse { component: usize },
    SamePlaneNode { node: usize },
    WeightMismatch { node: usize },
    MarkNotOnSingularLocus { mark: usize },
    DuplicateMark { mark: usize },
    MarkAtNode { mark: usize },
    NodeOnSingularLocus { node: usize },
    UnmatchedBoundaryPoint { component: usize, edge: Edge },
    HigherDegree { component: usize },
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::NotTransverse { .. } => "not torically transverse",
            Violation::SamePlaneNode { .. } => "node between components in the same plane",
            Violation::WeightMismatch { .. } => "weight mismatch",
            Violation::MarkNotOnSingularLocus { .. } => "mark not on the singular locus",
            Violation::DuplicateMark { .. } => "duplicate mark",
            Violation::MarkAtNode { .. } => "mark at a node",
            Violation::NodeOnSingularLocus { .. } => "node on the singular locus",
            Violation::UnmatchedBoundaryPoint { .. } => "unmatched boundary point",
            Violation::HigherDegree { .. } => "component of degree > 1",
        }
    }

    /// Whether the condition is part of the pre-log conditions away from 𝒮.
    fn breaks_pre_log_away_from_s(&self) -> bool {
        matches!(
            self,
            Violation::NotTransverse { .. }
                | Violation::SamePlaneNode { .. }
                | Violation::WeightMismatch { .. }
                | Violation::UnmatchedBoundaryPoint { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub torically_transverse: bool,
    pub pre_log: bool,
    pub pre_log_away_from_s: bool,
    pub pre_smoothable: bool,
    pub simply_pre_smoothable: bool,
    pub violations: Vec<Violation>,
}

/// Runs the validity hierarchy against `f`: transversality of components,
/// node conditions (different planes, equal weights), marks at distinct
/// regular points of 𝒮, nodes away from 𝒮, every boundary point of every
/// component accounted for, and degree 1 components.
pub fn validate(curve: &CurveGraph, f: &QuarticForm) -> ValidityReport {
    let on_s = |p: &ProjPoint| match p.edge() {
        Some(e) => BinaryQuartic::restrict(f, e).eval_point(p).is_zero(),
        None => false,
    };
    let mut v = Vec::new();
    for (i, c) in curve.components.iter().enumerate() {
        if !check_torically_transverse(&c.line) {
            v.push(Violation::NotTransverse { component: i });
        }
    }
    for (i, e) in curve.nodes.iter().enumerate() {
        let [a, b] = e.ends;
        if curve.components[a].plane() == curve.components[b].plane() {
            v.push(Violation::SamePlaneNode { node: i });
        }
        if e.weights[0] != e.weights[1] {
            v.push(Violation::WeightMismatch { node: i });
        }
    }
    let mut seen: Vec<(usize, &ProjPoint)> = Vec::new();
    for (i, m) in curve.marks.iter().enumerate() {
        if !on_s(&m.point) {
            v.push(Violation::MarkNotOnSingularLocus { mark: i });
        }
        if seen.contains(&(m.component, &m.point)) {
            v.push(Violation::DuplicateMark { mark: i });
        }
        seen.push((m.component, &m.point));
        if curve
            .nodes
            .iter()
            .any(|e| e.ends.contains(&m.component) && e.point == m.point)
        {
            v.push(Violation::MarkAtNode { mark: i });
        }
    }
    for (i, e) in curve.nodes.iter().enumerate() {
        if on_s(&e.point) {
            v.push(Violation::NodeOnSingularLocus { node: i });
        }
    }
    for (i, c) in curve.components.iter().enumerate() {
        for q in (0..4).filter(|&q| q != c.plane()) {
            let Ok(edge) = Edge::new(c.plane(), q) else { continue };
            let Ok(p) = c.line.edge_point(q) else {
                // The line contains the edge; already reported as non-transverse.
                continue;
            };
            let by_node = curve
                .nodes
                .iter()
                .filter(|e| e.ends.contains(&i) && e.point == p)
                .count();
            let by_mark = curve
                .marks
                .iter()
                .filter(|m| m.component == i && m.point == p)
                .count();
            if by_node + by_mark != 1 {
                v.push(Violation::UnmatchedBoundaryPoint { component: i, edge });
            }
        }
    }
    for (i, c) in curve.components.iter().enumerate() {
        if c.multiplicity != 1 {
            v.push(Violation::HigherDegree { component: i });
        }
    }
    let torically_transverse = !v.iter().any(|x| matches!(x, Violation::NotTransverse { .. }));
    let pre_log_away_from_s = !v.iter().any(|x| x.breaks_pre_log_away_from_s());
    let pre_log = pre_log_away_from_s && curve.marks.is_empty();
    let pre_smoothable = pre_log_away_from_s
        && !v.iter().any(|x| {
            matches!(
                x,
                Violation::MarkNotOnSingularLocus { .. }
                    | Violation::DuplicateMark { .. }
                    | Violation::MarkAtNode { .. }
                    | Violation::NodeOnSingularLocus { .. }
            )
        });
    let simply_pre_smoothable =
        pre_smoothable && !v.iter().any(|x| matches!(x, Violation::HigherDegree { .. }));
    ValidityReport {
        torically_transverse,
        pre_log,
        pre_log_away_from_s,
        pre_smoothable,
        simply_pre_smoothable,
        violations: v,
    }
}

/// `genus` as a free function.
pub fn genus(curve: &CurveGraph) -> Result<i64> {
    curve.genus()
}

/// The four lines cut out by `h`, one per plane, with each pairwise
/// intersection either a node or, when it lies on 𝒮 for `f`, a partnered
/// pair of S-marks. Components are ordered by plane.
pub fn hyperplane_section(h: &Hyperplane, f: &QuarticForm) -> Result<CurveGraph> {
    hyperplane_section_by(h, |p| match p.edge() {
        Some(e) => BinaryQuartic::restrict(f, e).eval_point(p).is_zero(),
        None => false,
    })
}

/// The hyperplane section with all six intersections treated as nodes.
pub fn hyperplane_section_unmarked(h: &Hyperplane) -> Result<CurveGraph> {
    hyperplane_section_by(h, |_| false)
}

fn hyperplane_section_by(h: &Hyperplane, on_s: impl Fn(&ProjPoint) -> bool) -> Result<CurveGraph> {
    if h.0.iter().any(|c| c.is_zero()) {
        return Err(Error::Degenerate(format!(
            "hyperplane {h} passes through a vertex of the tetrahedron"
        )));
    }
    let components: Vec<Component> = (0..4)
        .map(|p| Component::new(LineInPlane::plane_label(p), h.restrict(p)))
        .collect();
    let mut nodes = Vec::new();
    let mut marks = Vec::new();
    for edge in Edge::all() {
        let [a, b] = edge.planes();
        let p = components[a].line.edge_point(b)?;
        if on_s(&p) {
            let i = marks.len();
            marks.push(SMark {
                partner: Some(i + 1),
                ..SMark::new(a, p.clone())
            });
            marks.push(SMark {
                partner: Some(i),
                ..SMark::new(b, p)
            });
        } else {
            nodes.push(NodeEdge::new(a, b, p));
        }
    }
    Ok(CurveGraph::new(components, nodes, marks)?.with_image(vec![ImageFactor {
        hyperplane: h.clone(),
        power: 1,
    }]))
}
