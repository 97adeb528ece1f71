//! The central fiber: four coordinate planes of `P^3` glued along six lines,
//! with the singular points of the total space on those lines.
//!
//! Coordinates are indexed `0..4` for `x y z w`. Component `i` is the plane
//! where coordinate `i` vanishes. An [`Edge`] is named by its two vanishing
//! coordinates; a vertex `k` is the coordinate point where only `k` survives.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{quartic_exponents, QuarticForm, COORD_NAMES};
use crate::scalar::Scalar;

/// Point of `P^3`, normalized so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint([Scalar; 4]);

impl ProjPoint {
    pub fn new(coords: [Scalar; 4]) -> Result<ProjPoint> {
        let Some(first) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::Precondition("all coordinates vanish".into()));
        };
        let inv = first.inv()?;
        Ok(ProjPoint(coords.map(|c| &c * &inv)))
    }

    pub fn from_ints(c: [i64; 4]) -> Result<ProjPoint> {
        ProjPoint::new(c.map(Scalar::int))
    }

    pub fn coords(&self) -> &[Scalar; 4] {
        &self.0
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.0[i]
    }

    pub fn zero_coords(&self) -> Vec<usize> {
        (0..4).filter(|&i| self.0[i].is_zero()).collect()
    }

    /// The edge whose interior contains the point, if any.
    pub fn edge(&self) -> Option<Edge> {
        match self.zero_coords().as_slice() {
            &[a, b] => Some(Edge { a, b }),
            _ => None,
        }
    }

    pub fn is_vertex(&self) -> bool {
        self.zero_coords().len() == 3
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let c = <[Scalar; 4]>::deserialize(d)?;
        ProjPoint::new(c).map_err(serde::de::Error::custom)
    }
}

/// A line of the central fiber, named by its two vanishing coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Edge {
    a: usize,
    b: usize,
}

impl Edge {
    pub fn new(i: usize, j: usize) -> Result<Edge> {
        if i > 3 || j > 3 || i == j {
            return Err(Error::Precondition(format!("no edge with vanishing coordinates {i}, {j}")));
        }
        Ok(Edge {
            a: i.min(j),
            b: i.max(j),
        })
    }

    /// The six edges in canonical order.
    pub fn all() -> [Edge; 6] {
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)].map(|(a, b)| Edge { a, b })
    }

    pub fn index(self) -> usize {
        Edge::all().iter().position(|&e| e == self).unwrap()
    }

    pub fn vanishing(self) -> (usize, usize) {
        (self.a, self.b)
    }

    /// The two coordinates that survive on the edge, in increasing order.
    pub fn surviving(self) -> (usize, usize) {
        let mut it = (0..4).filter(|&i| i != self.a && i != self.b);
        (it.next().unwrap(), it.next().unwrap())
    }

    /// The components (planes) meeting along this edge.
    pub fn planes(self) -> [usize; 2] {
        [self.a, self.b]
    }

    /// The two vertices on the edge.
    pub fn vertices(self) -> [usize; 2] {
        let (k, l) = self.surviving();
        [k, l]
    }

    pub fn contains_plane(self, p: usize) -> bool {
        self.a == p || self.b == p
    }

    pub fn other_plane(self, p: usize) -> Option<usize> {
        if self.a == p {
            Some(self.b)
        } else if self.b == p {
            Some(self.a)
        } else {
            None
        }
    }

    pub fn between(p: usize, q: usize) -> Result<Edge> {
        Edge::new(p, q)
    }

    /// The point `[a:b]` in the surviving coordinates.
    pub fn point(self, root: &(Scalar, Scalar)) -> Result<ProjPoint> {
        let (k, l) = self.surviving();
        let mut c: [Scalar; 4] = Default::default();
        c[k] = root.0.clone();
        c[l] = root.1.clone();
        ProjPoint::new(c)
    }

    pub fn names(self) -> [String; 2] {
        [COORD_NAMES[self.a].to_string(), COORD_NAMES[self.b].to_string()]
    }

    pub fn from_names(a: &str, b: &str) -> Result<Edge> {
        let find = |n: &str| {
            COORD_NAMES
                .iter()
                .position(|&c| c == n)
                .ok_or_else(|| Error::Precondition(format!("unknown coordinate '{n}'")))
        };
        Edge::new(find(a)?, find(b)?)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}={}=0}}", COORD_NAMES[self.a], COORD_NAMES[self.b])
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.names().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        Edge::from_names(&a, &b).map_err(serde::de::Error::custom)
    }
}

/// Incidence data of the central fiber: the boundary of a tetrahedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralFiber {
    pub components: [usize; 4],
    pub edges: [Edge; 6],
    pub vertices: [usize; 4],
}

impl Default for CentralFiber {
    fn default() -> Self {
        CentralFiber::new()
    }
}

impl CentralFiber {
    pub fn new() -> CentralFiber {
        let cf = CentralFiber {
            components: [0, 1, 2, 3],
            edges: Edge::all(),
            vertices: [0, 1, 2, 3],
        };
        cf.check().expect("tetrahedron incidence");
        cf
    }

    pub fn edges_of_component(&self, c: usize) -> Vec<Edge> {
        self.edges
            .iter()
            .copied()
            .filter(|e| e.contains_plane(c))
            .collect()
    }

    /// Vertices lying on component `c`: every coordinate point except `e_c`.
    pub fn vertices_of_component(&self, c: usize) -> Vec<usize> {
        self.vertices.iter().copied().filter(|&v| v != c).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.components.len() as i64 - self.edges.len() as i64 + self.vertices.len() as i64
    }

    fn check(&self) -> Result<()> {
        for &c in &self.components {
            let edges = self.edges_of_component(c);
            let verts = self.vertices_of_component(c);
            if edges.len() != 3 || verts.len() != 3 {
                return Err(Error::Construction(format!("component {c} is not a triangle")));
            }
            for e in edges {
                if !e.vertices().iter().all(|v| verts.contains(v)) {
                    return Err(Error::Construction(format!("edge {e} leaves component {c}")));
                }
            }
        }
        if self.euler_characteristic() != 2 {
            return Err(Error::Construction("Euler characteristic is not 2".into()));
        }
        Ok(())
    }
}

/// Restriction of a quartic to an edge: `sum_m coeffs[m] X_k^(4-m) X_l^m`
/// in the surviving coordinates `k < l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinaryQuartic {
    pub edge: Edge,
    pub coeffs: [Scalar; 5],
}

impl BinaryQuartic {
    pub fn restrict(f: &QuarticForm, edge: Edge) -> BinaryQuartic {
        let (k, l) = edge.surviving();
        let coeffs = std::array::from_fn(|m| {
            let mut e = [0u32; 4];
            e[k] = 4 - m as u32;
            e[l] = m as u32;
            f.coeff(e)
        });
        BinaryQuartic { edge, coeffs }
    }

    /// The form `prod (b_i X_k - a_i X_l)` vanishing at the given roots.
    pub fn from_roots(edge: Edge, roots: &[(Scalar, Scalar)]) -> BinaryQuartic {
        let mut c: Vec<Scalar> = vec![Scalar::one()];
        for (a, b) in roots {
            let mut next = vec![Scalar::zero(); c.len() + 1];
            for (m, v) in c.iter().enumerate() {
                next[m] = &next[m] + &(v * b);
                next[m + 1] = &next[m + 1] - &(v * a);
            }
            c = next;
        }
        c.resize(5, Scalar::zero());
        BinaryQuartic {
            edge,
            coeffs: std::array::from_fn(|m| c[m].clone()),
        }
    }

    pub fn eval(&self, a: &Scalar, b: &Scalar) -> Scalar {
        (0..5)
            .map(|m| {
                &self.coeffs[m]
                    * &(&a.pow(4 - m as i32).unwrap() * &b.pow(m as i32).unwrap())
            })
            .sum()
    }

    pub fn eval_point(&self, p: &ProjPoint) -> Scalar {
        let (k, l) = self.edge.surviving();
        self.eval(p.coord(k), p.coord(l))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when `self = c * other` for some nonzero scalar `c`.
    pub fn is_proportional(&self, other: &BinaryQuartic) -> bool {
        let Some(m) = (0..5).find(|&m| !other.coeffs[m].is_zero()) else {
            return false;
        };
        if self.coeffs[m].is_zero() {
            return false;
        }
        let c = &self.coeffs[m] / &other.coeffs[m];
        (0..5).all(|i| self.coeffs[i] == &c * &other.coeffs[i])
    }
}

impl fmt::Display for BinaryQuartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, l) = self.edge.surviving();
        let mut p = crate::poly::Poly::zero(2);
        for m in 0..5 {
            p.add_term(vec![4 - m as u32, m as u32], self.coeffs[m].clone());
        }
        write!(f, "{}", p.fmt_with(&[COORD_NAMES[k], COORD_NAMES[l]]))
    }
}

/// A root `[a:b]` in the surviving coordinates of an edge, normalized like a
/// projective point.
pub type EdgeRoot = (Scalar, Scalar);

fn normalize_root(r: &EdgeRoot) -> Result<EdgeRoot> {
    if !r.0.is_zero() {
        Ok((Scalar::one(), r.1.checked_div(&r.0)?))
    } else if !r.1.is_zero() {
        Ok((Scalar::zero(), Scalar::one()))
    } else {
        Err(Error::Precondition("root [0:0]".into()))
    }
}

/// Singular data of one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLocus {
    pub edge: Edge,
    pub form: BinaryQuartic,
    pub roots: Vec<EdgeRoot>,
    pub complete: bool,
}

impl EdgeLocus {
    pub fn points(&self) -> Vec<ProjPoint> {
        self.roots
            .iter()
            .map(|r| self.edge.point(r).expect("nonzero root"))
            .collect()
    }
}

/// The singular points of the total space on the six edges, as far as they
/// are rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLocus {
    pub edges: Vec<EdgeLocus>,
}

impl SingularLocus {
    pub fn complete(&self) -> bool {
        self.edges.iter().all(|e| e.complete)
    }

    pub fn count(&self) -> usize {
        self.edges.iter().map(|e| e.roots.len()).sum()
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        self.edges.iter().flat_map(|e| e.points()).collect()
    }

    pub fn on_edge(&self, e: Edge) -> &EdgeLocus {
        &self.edges[e.index()]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.edges
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "edge": e.edge.names(),
                        "form": e.form.to_string(),
                        "roots": e.roots.iter()
                            .map(|(a, b)| [a.to_string(), b.to_string()])
                            .collect::<Vec<_>>(),
                        "complete": e.complete,
                    })
                })
                .collect(),
        )
    }
}

/// Checks that the restriction of `f` to `edge` has degree 4 and no root at
/// a vertex, i.e. both extreme coefficients are nonzero.
pub fn check_edge_genericity(f: &QuarticForm, edge: Edge) -> Result<BinaryQuartic> {
    let form = BinaryQuartic::restrict(f, edge);
    if form.is_zero() {
        return Err(Error::Genericity {
            edge: edge.to_string(),
            msg: "restriction vanishes identically".into(),
        });
    }
    let (k, l) = edge.surviving();
    for (m, vertex) in [(0usize, k), (4, l)] {
        if form.coeffs[m].is_zero() {
            return Err(Error::Genericity {
                edge: edge.to_string(),
                msg: format!(
                    "restriction vanishes at the vertex where only {} survives",
                    COORD_NAMES[vertex]
                ),
            });
        }
    }
    Ok(form)
}

/// Computes the restricted quartics on all edges and their rational roots.
pub fn singular_locus(f: &QuarticForm) -> Result<SingularLocus> {
    if !f.is_rational() {
        return Err(Error::Precondition(
            "singular locus extraction needs rational coefficients".into(),
        ));
    }
    let mut edges = Vec::with_capacity(6);
    for edge in Edge::all() {
        let form = check_edge_genericity(f, edge)?;
        let (roots, exhaustive) = rational_roots(&form.coeffs);
        let roots: Vec<EdgeRoot> = roots.into_iter().map(|r| (Scalar::one(), r)).collect();
        let complete = exhaustive && roots.len() == 4;
        edges.push(EdgeLocus {
            edge,
            form,
            roots,
            complete,
        });
    }
    Ok(SingularLocus { edges })
}

/// Distinct rational roots `r` of `sum c[m] r^m`, in increasing order, and
/// whether the divisor search was exhaustive.
fn rational_roots(c: &[Scalar; 5]) -> (Vec<Scalar>, bool) {
    let mut ints = primitive_integer_coeffs(c);
    let mut roots: Vec<Scalar> = Vec::new();
    let mut exhaustive = true;
    // Strip zero roots (excluded by genericity, kept for robustness).
    while ints.len() > 1 && ints[0].is_zero() {
        ints.remove(0);
        if !roots.iter().any(|r| r.is_zero()) {
            roots.push(Scalar::zero());
        }
    }
    loop {
        if ints.len() <= 1 {
            break;
        }
        let (Some(ps), ex_p) = divisors(&ints[0]) else {
            exhaustive = false;
            break;
        };
        let (Some(qs), ex_q) = divisors(ints.last().unwrap()) else {
            exhaustive = false;
            break;
        };
        exhaustive &= ex_p && ex_q;
        let mut found = None;
        'search: for q in &qs {
            for p in &ps {
                for sign in [1, -1] {
                    let p: BigInt = p * BigInt::from(sign);
                    if p.gcd(q).is_one() && eval_int(&ints, &p, q).is_zero() {
                        found = Some((p, q.clone()));
                        break 'search;
                    }
                }
            }
        }
        let Some((p, q)) = found else { break };
        ints = deflate(&ints, &p, &q);
        let r = Scalar::big(p).checked_div(&Scalar::big(q)).expect("nonzero denominator");
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    roots.sort_by(|a, b| {
        let (an, ad) = a.as_rational().unwrap();
        let (bn, bd) = b.as_rational().unwrap();
        (an * bd).cmp(&(bn * ad))
    });
    (roots, exhaustive)
}

fn primitive_integer_coeffs(c: &[Scalar]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for v in c {
        let (_, d) = v.as_rational().expect("rational coefficient");
        lcm = lcm.lcm(&d);
    }
    let mut ints: Vec<BigInt> = c
        .iter()
        .map(|v| {
            let (n, d) = v.as_rational().unwrap();
            n * (&lcm / d)
        })
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() {
        for x in ints.iter_mut() {
            *x /= &g;
        }
    }
    while ints.len() > 1 && ints.last().is_some_and(|x| x.is_zero()) {
        ints.pop();
    }
    ints
}

fn eval_int(c: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    // q^deg * poly(p/q)
    let deg = c.len() - 1;
    let mut acc = BigInt::zero();
    for (m, a) in c.iter().enumerate() {
        acc += a * p.pow(m as u32) * q.pow((deg - m) as u32);
    }
    acc
}

/// Exact division of `sum c[m] r^m` by `(q r - p)`.
fn deflate(c: &[BigInt], p: &BigInt, q: &BigInt) -> Vec<BigInt> {
    let n = c.len() - 1;
    let mut out = vec![BigInt::zero(); n];
    let mut rem = c.to_vec();
    for m in (1..=n).rev() {
        let coef = &rem[m] / q;
        rem[m - 1] += &coef * p;
        out[m - 1] = coef;
    }
    let g = out.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in out.iter_mut() {
            *x /= &g;
        }
    }
    out
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Positive divisors of `n`, and whether factoring was certainly complete.
fn divisors(n: &BigInt) -> (Option<Vec<BigInt>>, bool) {
    let mut n = n.abs();
    if n.is_zero() {
        return (None, false);
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d: u64 = 2;
    while d <= TRIAL_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            factors.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    // A cofactor below the square of the trial bound is prime; a larger one
    // is treated as a single factor and the search flagged non-exhaustive.
    let limit = BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT);
    let exhaustive = n <= limit;
    if !n.is_one() {
        factors.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in &factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for dv in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=*e {
                next.push(dv * &pk);
                pk *= p;
            }
        }
        divs = next;
        if divs.len() > 1 << 20 {
            return (None, false);
        }
    }
    divs.sort();
    (Some(divs), exhaustive)
}

/// One prescribed singular point: an edge and a root `[a:b]` in its
/// surviving coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrescribedPoint {
    pub edge: Edge,
    pub root: (Scalar, Scalar),
}

impl PrescribedPoint {
    pub fn new(edge: Edge, a: i64, b: i64) -> PrescribedPoint {
        PrescribedPoint {
            edge,
            root: (Scalar::int(a), Scalar::int(b)),
        }
    }

    pub fn point(&self) -> Result<ProjPoint> {
        self.edge.point(&self.root)
    }
}

/// Output of [`design_f`].
#[derive(Clone, Debug)]
pub struct DesignedQuartic {
    pub f: QuarticForm,
    /// Dimension of the solution space of the linear system in the 35
    /// coefficients and 6 edge scales.
    pub solution_dim: usize,
    pub edge_scales: [Scalar; 6],
}

/// Builds a quartic whose restriction to every edge is a nonzero multiple of
/// the quartic with the prescribed roots.
pub fn design_f(prescribed: &[PrescribedPoint]) -> Result<DesignedQuartic> {
    let mut per_edge: Vec<Vec<EdgeRoot>> = vec![Vec::new(); 6];
    for p in prescribed {
        let r = normalize_root(&p.root)?;
        if r.0.is_zero() || r.1.is_zero() {
            return Err(Error::Genericity {
                edge: p.edge.to_string(),
                msg: format!("prescribed root [{}:{}] is a vertex", p.root.0, p.root.1),
            });
        }
        let list = &mut per_edge[p.edge.index()];
        if list.contains(&r) {
            return Err(Error::Genericity {
                edge: p.edge.to_string(),
                msg: "prescribed roots are not distinct".into(),
            });
        }
        list.push(r);
    }
    for (i, list) in per_edge.iter().enumerate() {
        if list.len() != 4 {
            return Err(Error::Precondition(format!(
                "edge {} has {} prescribed points, expected 4",
                Edge::all()[i],
                list.len()
            )));
        }
    }
    let exps = quartic_exponents();
    let ncols = exps.len() + 6;
    let mut rows = Vec::with_capacity(30);
    for (ei, edge) in Edge::all().into_iter().enumerate() {
        let target = BinaryQuartic::from_roots(edge, &per_edge[ei]);
        let (k, l) = edge.surviving();
        for m in 0..5u32 {
            let mut e = [0u32; 4];
            e[k] = 4 - m;
            e[l] = m;
            let mut row = vec![Scalar::zero(); ncols];
            row[exps.iter().position(|&x| x == e).unwrap()] = Scalar::one();
            row[exps.len() + ei] = -&target.coeffs[m as usize];
            rows.push(row);
        }
    }
    let system = Matrix::from_rows(rows);
    let kernel = system.kernel();
    let dim = kernel.len();
    for ei in 0..6 {
        if kernel.iter().all(|v| v[exps.len() + ei].is_zero()) {
            return Err(Error::NoSolution(format!(
                "every solution has zero scale on edge {}; the prescription violates the vertex consistency conditions",
                Edge::all()[ei]
            )));
        }
    }
    // A generic combination avoids the finitely many zero loci of the scales.
    for s in 1..=(6 * dim as i64 + 1) {
        let mut v = vec![Scalar::zero(); ncols];
        let mut w = Scalar::one();
        for b in &kernel {
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = &*x + &(&w * y);
                }
            }
            w = &w * &Scalar::int(s);
        }
        let scales: [Scalar; 6] = std::array::from_fn(|i| v[exps.len() + i].clone());
        if scales.iter().all(|x| !x.is_zero()) {
            let f = QuarticForm::from_terms(
                exps.iter().enumerate().map(|(i, &e)| (e, v[i].clone())),
            )?;
            return Ok(DesignedQuartic {
                f,
                solution_dim: dim,
                edge_scales: scales,
            });
        }
    }
    Err(Error::NoSolution("no solution with all edge scales nonzero".into()))
}

/// `f` restricted to each edge is proportional to the prescribed quartic.
pub fn restriction_matches(f: &QuarticForm, prescribed: &[PrescribedPoint]) -> bool {
    Edge::all().into_iter().all(|edge| {
        let roots: Vec<EdgeRoot> = prescribed
            .iter()
            .filter(|p| p.edge == edge)
            .map(|p| p.root.clone())
            .collect();
        BinaryQuartic::restrict(f, edge).is_proportional(&BinaryQuartic::from_roots(edge, &roots))
    })
}

/// Hyperplane `h0 x + h1 y + h2 z + h3 w = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hyperplane(pub [Scalar; 4]);

impl Hyperplane {
    /// `α x + β y + γ z + w = 0` with symbolic parameters.
    pub fn symbolic() -> Hyperplane {
        Hyperplane([Scalar::alpha(), Scalar::beta(), Scalar::gamma(), Scalar::one()])
    }

    pub fn from_ints(h: [i64; 4]) -> Hyperplane {
        Hyperplane(h.map(Scalar::int))
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.0[i]
    }

    pub fn eval(&self, p: &ProjPoint) -> Scalar {
        (0..4).map(|i| &self.0[i] * p.coord(i)).sum()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.eval(p).is_zero()
    }

    /// The line cut out on component `plane`.
    pub fn restrict(&self, plane: usize) -> LineInPlane {
        let mut c = self.0.clone();
        c[plane] = Scalar::zero();
        LineInPlane {
            plane,
            coeffs: c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// Equality up to a nonzero scalar.
    pub fn same_as(&self, other: &Hyperplane) -> bool {
        proportional(&self.0, &other.0)
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p = crate::poly::Poly::zero(4);
        for i in 0..4 {
            let mut e = vec![0; 4];
            e[i] = 1;
            p.add_term(e, self.0[i].clone());
        }
        write!(f, "{}", p.fmt_with(&COORD_NAMES))
    }
}

fn proportional(a: &[Scalar; 4], b: &[Scalar; 4]) -> bool {
    let Some(i) = (0..4).find(|&i| !b[i].is_zero()) else {
        return false;
    };
    if a[i].is_zero() {
        return false;
    }
    let c = &a[i] / &b[i];
    (0..4).all(|j| a[j] == &c * &b[j])
}

/// A line in component `plane`, given by a linear form in the three
/// surviving coordinates (the entry at `plane` is always zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LineInPlane {
    pub plane: usize,
    pub coeffs: [Scalar; 4],
}

impl LineInPlane {
    pub fn new(plane: usize, mut coeffs: [Scalar; 4]) -> Result<LineInPlane> {
        if plane > 3 {
            return Err(Error::Precondition(format!("no plane {plane}")));
        }
        coeffs[plane] = Scalar::zero();
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::Precondition("linear form vanishes identically".into()));
        }
        Ok(LineInPlane { plane, coeffs })
    }

    pub fn from_ints(plane: usize, c: [i64; 4]) -> Result<LineInPlane> {
        LineInPlane::new(plane, c.map(Scalar::int))
    }

    pub fn eval(&self, p: &ProjPoint) -> Scalar {
        (0..4)
            .filter(|&i| i != self.plane)
            .map(|i| &self.coeffs[i] * p.coord(i))
            .sum()
    }

    /// The point lies in the plane and on the line.
    pub fn contains(&self, p: &ProjPoint) -> bool {
        p.coord(self.plane).is_zero() && self.eval(p).is_zero()
    }

    pub fn same_line(&self, other: &LineInPlane) -> bool {
        self.plane == other.plane && proportional(&self.coeffs, &other.coeffs)
    }

    /// Intersection with the edge shared with plane `other`, if it is a
    /// single point.
    pub fn edge_point(&self, other_plane: usize) -> Result<ProjPoint> {
        let edge = Edge::new(self.plane, other_plane)?;
        let (k, l) = edge.surviving();
        let mut c: [Scalar; 4] = Default::default();
        c[k] = self.coeffs[l].clone();
        c[l] = -&self.coeffs[k];
        ProjPoint::new(c).map_err(|_| {
            Error::Degenerate(format!("line contains the edge {edge}"))
        })
    }

    /// The three points where the line meets the boundary of its plane.
    pub fn boundary_points(&self) -> Result<Vec<(Edge, ProjPoint)>> {
        (0..4)
            .filter(|&q| q != self.plane)
            .map(|q| Ok((Edge::new(self.plane, q)?, self.edge_point(q)?)))
            .collect()
    }

    /// Conventional display name of a hyperplane line on each plane.
    pub fn plane_label(plane: usize) -> &'static str {
        ["m", "n", "k", "l"][plane]
    }
}

impl fmt::Display for LineInPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = Hyperplane(self.coeffs.clone());
        write!(f, "{h} = 0, {} = 0", COORD_NAMES[self.plane])
    }
}

/// A line in a plane is torically transverse when it avoids the three
/// coordinate points of the plane, i.e. all three coefficients are nonzero.
pub fn check_torically_transverse(line: &LineInPlane) -> bool {
    (0..4)
        .filter(|&i| i != line.plane)
        .all(|i| !line.coeffs[i].is_zero())
}

/// Solution space of hyperplanes through a set of points.
#[derive(Clone, Debug)]
pub struct HyperplaneSpace {
    pub basis: Vec<Hyperplane>,
    /// For three points: whether they are not all contained in one component.
    pub meets_several_components: Option<bool>,
}

impl HyperplaneSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn unique(&self) -> Option<&Hyperplane> {
        (self.basis.len() == 1).then(|| &self.basis[0])
    }
}

/// Hyperplanes through up to three points lying on edge interiors.
pub fn hyperplane_through(points: &[ProjPoint]) -> Result<HyperplaneSpace> {
    if points.len() > 3 {
        return Err(Error::Precondition(format!(
            "at most 3 points, got {}",
            points.len()
        )));
    }
    for p in points {
        if p.edge().is_none() {
            return Err(Error::Precondition(format!(
                "{p} is not in the interior of an edge"
            )));
        }
    }
    let distinct: BTreeSet<String> = points.iter().map(|p| p.to_string()).collect();
    if distinct.len() != points.len() {
        return Err(Error::Degenerate("repeated point".into()));
    }
    let basis: Vec<Hyperplane> = if points.is_empty() {
        (0..4)
            .map(|i| {
                let mut c: [Scalar; 4] = Default::default();
                c[i] = Scalar::one();
                Hyperplane(c)
            })
            .collect()
    } else {
        Matrix::from_rows(points.iter().map(|p| p.coords().to_vec()).collect())
            .kernel()
            .into_iter()
            .map(|v| Hyperplane(std::array::from_fn(|i| v[i].clone())))
            .collect()
    };
    if basis.len() != 4 - points.len() {
        return Err(Error::Degenerate(
            "points impose dependent conditions (collinear configuration)".into(),
        ));
    }
    let meets_several_components = (points.len() == 3).then(|| {
        !(0..4).any(|i| points.iter().all(|p| p.coord(i).is_zero()))
    });
    Ok(HyperplaneSpace {
        basis,
        meets_several_components,
    })
}
