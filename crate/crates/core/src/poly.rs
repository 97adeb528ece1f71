//! Sparse polynomials over [`Scalar`] in a fixed number of variables, and
//! quartic forms in the homogeneous coordinates `x y z w`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Var};

pub const COORD_NAMES: [&str; 4] = ["x", "y", "z", "w"];

/// Polynomial in `nvars` variables with exponent-vector keys.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Poly {
        Poly::monomial(vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(e, Scalar::one())
    }

    pub fn monomial(exp: Vec<u32>, c: Scalar) -> Poly {
        let mut p = Poly::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> Scalar {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: Scalar) {
        assert_eq!(exp.len(), self.nvars, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, Scalar::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k as i32).expect("nonnegative power");
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Composes with polynomials `subs[i]` (all in a common ring) for each variable.
    pub fn compose(&self, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.nvars);
        let target = subs.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: BTreeMap<(usize, u32), Poly> = BTreeMap::new();
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = cache
                    .entry((i, k))
                    .or_insert_with(|| subs[i].pow(k))
                    .clone();
                t = t.mul(&p);
            }
            out = out.add(&t);
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, c * &Scalar::int(e[i] as i64));
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar>) -> Result<Poly> {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn subst_param(&self, v: Var, value: &Scalar) -> Result<Poly> {
        self.map_coeffs(|c| c.subst(v, value))
    }

    pub fn fmt_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].to_string()
                    } else {
                        format!("{}^{}", names[i], k)
                    }
                })
                .collect();
            let coef = if c.numer().len() > 1 || c.denom().as_constant().is_none() {
                format!("({c})")
            } else {
                c.to_string()
            };
            parts.push(match (mono.is_empty(), coef.as_str()) {
                (true, _) => coef,
                (false, "1") => mono.join("*"),
                (false, "-1") => format!("-{}", mono.join("*")),
                (false, _) => format!("{coef}*{}", mono.join("*")),
            });
        }
        let mut out = String::new();
        for (i, t) in parts.iter().enumerate() {
            match (i, t.strip_prefix('-')) {
                (0, _) => out.push_str(t),
                (_, Some(rest)) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                (_, None) => {
                    out.push_str(" + ");
                    out.push_str(t);
                }
            }
        }
        out
    }
}

/// All exponent vectors of quartic monomials in `x y z w`, from `x^4` down
/// in lexicographic order.
pub fn quartic_exponents() -> Vec<[u32; 4]> {
    let mut out = Vec::with_capacity(35);
    for a in (0..=4u32).rev() {
        for b in (0..=4 - a).rev() {
            for c in (0..=4 - a - b).rev() {
                out.push([a, b, c, 4 - a - b - c]);
            }
        }
    }
    out
}

pub fn monomial_name(exp: [u32; 4]) -> String {
    let mut s = String::new();
    for (i, &k) in exp.iter().enumerate() {
        match k {
            0 => {}
            1 => s.push_str(COORD_NAMES[i]),
            _ => s.push_str(&format!("{}^{}", COORD_NAMES[i], k)),
        }
    }
    s
}

/// Homogeneous quartic in `x y z w` over [`Scalar`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuarticForm {
    poly: Poly,
}

impl QuarticForm {
    pub fn zero() -> Self {
        QuarticForm {
            poly: Poly::zero(4),
        }
    }

    pub fn from_poly(poly: Poly) -> Result<Self> {
        if poly.nvars() != 4 {
            return Err(Error::Precondition("quartic forms have 4 variables".into()));
        }
        if poly.terms().any(|(e, _)| e.iter().sum::<u32>() != 4) {
            return Err(Error::Precondition("form is not homogeneous of degree 4".into()));
        }
        Ok(QuarticForm { poly })
    }

    pub fn from_terms<I: IntoIterator<Item = ([u32; 4], Scalar)>>(terms: I) -> Result<Self> {
        let mut p = Poly::zero(4);
        for (e, c) in terms {
            p.add_term(e.to_vec(), c);
        }
        QuarticForm::from_poly(p)
    }

    pub fn monomial(exp: [u32; 4], c: Scalar) -> Self {
        QuarticForm::from_terms([(exp, c)]).expect("quartic monomial")
    }

    /// The form whose 35 coefficients are independent symbols.
    pub fn symbolic() -> Self {
        QuarticForm::from_terms(
            quartic_exponents()
                .into_iter()
                .map(|e| (e, Scalar::var(Var::coeff(e)))),
        )
        .expect("symbolic quartic")
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn coeff(&self, exp: [u32; 4]) -> Scalar {
        self.poly.coeff(&exp)
    }

    pub fn terms(&self) -> impl Iterator<Item = ([u32; 4], &Scalar)> {
        self.poly
            .terms()
            .map(|(e, c)| ([e[0], e[1], e[2], e[3]], c))
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, other: &QuarticForm) -> QuarticForm {
        QuarticForm {
            poly: self.poly.add(&other.poly),
        }
    }

    pub fn scale(&self, c: &Scalar) -> QuarticForm {
        QuarticForm {
            poly: self.poly.scale(c),
        }
    }

    pub fn eval(&self, point: &[Scalar; 4]) -> Scalar {
        self.poly.eval(point)
    }

    /// True when every coefficient is a plain rational.
    pub fn is_rational(&self) -> bool {
        self.poly.terms().all(|(_, c)| c.is_rational())
    }

    /// Permutes coordinates: the result at `p` equals `self` at `q` with
    /// `q[perm[i]] = p[i]`.
    pub fn permute(&self, perm: [usize; 4]) -> QuarticForm {
        let mut p = Poly::zero(4);
        for (e, c) in self.terms() {
            let mut ne = vec![0; 4];
            for i in 0..4 {
                ne[i] = e[perm[i]];
            }
            p.add_term(ne, c.clone());
        }
        QuarticForm { poly: p }
    }

    pub fn to_json(&self) -> QuarticJson {
        QuarticJson {
            coeffs: quartic_exponents()
                .into_iter()
                .filter_map(|e| {
                    let c = self.coeff(e);
                    (!c.is_zero()).then(|| CoeffJson {
                        exp: e,
                        num: c.numer().to_string(),
                        den: c.denom().to_string(),
                    })
                })
                .collect(),
        }
    }

    pub fn from_json(j: &QuarticJson) -> Result<Self> {
        let mut p = Poly::zero(4);
        for t in &j.coeffs {
            if t.exp.iter().sum::<u32>() != 4 {
                return Err(Error::Precondition(format!(
                    "exponent {:?} does not have degree 4",
                    t.exp
                )));
            }
            let num = Scalar::parse(&t.num)?;
            let den = Scalar::parse(&t.den)?;
            p.add_term(t.exp.to_vec(), num.checked_div(&den)?);
        }
        QuarticForm::from_poly(p)
    }
}

impl fmt::Display for QuarticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.fmt_with(&COORD_NAMES))
    }
}

/// Serialized form of a [`QuarticForm`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct QuarticJson {
    pub coeffs: Vec<CoeffJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CoeffJson {
    pub exp: [u32; 4],
    pub num: String,
    pub den: String,
}

impl Serialize for QuarticForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuarticForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = QuarticJson::deserialize(d)?;
        QuarticForm::from_json(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        Scalar::parse(x).unwrap()
    }

    #[test]
    fn thirty_five_monomials() {
        let e = quartic_exponents();
        assert_eq!(e.len(), 35);
        assert_eq!(e[0], [4, 0, 0, 0]);
        assert_eq!(e[34], [0, 0, 0, 4]);
    }

    #[test]
    fn evaluation_examples() {
        let f = QuarticForm::monomial([1, 1, 1, 1], Scalar::one());
        assert!(f.eval(&[1, 1, 1, 1].map(Scalar::int)).is_one());
        let g = QuarticForm::from_terms([
            ([3, 0, 0, 1], Scalar::one()),
            ([0, 4, 0, 0], Scalar::int(2)),
        ])
        .unwrap();
        assert_eq!(g.eval(&[1, 0, 0, 3].map(Scalar::int)), Scalar::int(3));
    }

    #[test]
    fn json_round_trip() {
        let f = QuarticForm::from_terms([
            ([2, 1, 1, 0], s("α/β")),
            ([0, 0, 0, 4], s("-3/5")),
        ])
        .unwrap();
        let text = serde_json::to_string(&f).unwrap();
        let g: QuarticForm = serde_json::from_str(&text).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn rejects_wrong_degree() {
        let mut p = Poly::zero(4);
        p.add_term(vec![1, 0, 0, 0], Scalar::one());
        assert!(QuarticForm::from_poly(p).is_err());
    }

    #[test]
    fn compose_and_derivative() {
        // (x + y)^2 with x -> t, y -> 2t equals 9 t^2
        let p = Poly::var(2, 0).add(&Poly::var(2, 1)).pow(2);
        let t = Poly::var(1, 0);
        let q = p.compose(&[t.clone(), t.scale(&Scalar::int(2))]);
        assert_eq!(q, Poly::monomial(vec![2], Scalar::int(9)));
        assert_eq!(
            p.derivative(0),
            Poly::var(2, 0)
                .add(&Poly::var(2, 1))
                .scale(&Scalar::int(2))
        );
    }
}
