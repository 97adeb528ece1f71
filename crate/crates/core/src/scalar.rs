//! Exact scalars.
//!
//! A [`Scalar`] is a reduced fraction of two integer polynomials in a symbol
//! alphabet ([`Var`]). The alphabet always contains the hyperplane parameters
//! `α β γ δ` and the family parameter `s`; it is extended with one symbol per
//! quartic monomial coefficient (for fully symbolic `f`), with the unknown
//! coefficients of lift ansätze, and with free test symbols.
//!
//! Fractions are kept canonical: numerator and denominator are coprime
//! (including integer content) and the leading coefficient of the
//! denominator, in lexicographic order, is positive. Two scalars are equal
//! exactly when their representations are equal.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A symbol of the coefficient field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(pub u32);

const COEFF_BASE: u32 = 100;
const LIFT_BASE: u32 = 10_000;
const LIFT_U_OFFSET: i32 = 256;
const SYMBOL_BASE: u32 = 1_000_000;

impl Var {
    pub const ALPHA: Var = Var(0);
    pub const BETA: Var = Var(1);
    pub const GAMMA: Var = Var(2);
    pub const DELTA: Var = Var(3);
    pub const S: Var = Var(4);

    /// Symbol standing for the coefficient of `x^e0 y^e1 z^e2 w^e3` in `f`.
    pub fn coeff(exp: [u32; 4]) -> Var {
        debug_assert!(exp.iter().all(|&e| e <= 4));
        Var(COEFF_BASE + exp[0] * 125 + exp[1] * 25 + exp[2] * 5 + exp[3])
    }

    /// Unknown coefficient of `t^t_power u^u_power` in a lift ansatz.
    pub fn lift_unknown(t_power: u32, u_power: i32) -> Var {
        assert!((-LIFT_U_OFFSET..LIFT_U_OFFSET).contains(&u_power));
        Var(LIFT_BASE + t_power * 512 + (u_power + LIFT_U_OFFSET) as u32)
    }

    /// Free symbol, used by tests and by random symbolic fixtures.
    pub fn symbol(n: u32) -> Var {
        Var(SYMBOL_BASE + n)
    }

    pub fn coeff_exponent(self) -> Option<[u32; 4]> {
        if (COEFF_BASE..COEFF_BASE + 625).contains(&self.0) {
            let k = self.0 - COEFF_BASE;
            Some([k / 125, (k / 25) % 5, (k / 5) % 5, k % 5])
        } else {
            None
        }
    }

    pub fn lift_index(self) -> Option<(u32, i32)> {
        if (LIFT_BASE..SYMBOL_BASE).contains(&self.0) {
            let k = self.0 - LIFT_BASE;
            Some((k / 512, (k % 512) as i32 - LIFT_U_OFFSET))
        } else {
            None
        }
    }

    pub fn name(self) -> String {
        match self.0 {
            0 => "α".into(),
            1 => "β".into(),
            2 => "γ".into(),
            3 => "δ".into(),
            4 => "s".into(),
            _ => {
                if let Some(e) = self.coeff_exponent() {
                    format!("c{}{}{}{}", e[0], e[1], e[2], e[3])
                } else if let Some((t, u)) = self.lift_index() {
                    if u < 0 {
                        format!("phi{}_m{}", t, -u)
                    } else {
                        format!("phi{}_{}", t, u)
                    }
                } else if self.0 >= SYMBOL_BASE {
                    format!("sym{}", self.0 - SYMBOL_BASE)
                } else {
                    format!("v{}", self.0)
                }
            }
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "α" | "alpha" => return Some(Var::ALPHA),
            "β" | "beta" => return Some(Var::BETA),
            "γ" | "gamma" => return Some(Var::GAMMA),
            "δ" | "delta" => return Some(Var::DELTA),
            "s" => return Some(Var::S),
            _ => {}
        }
        if let Some(rest) = name.strip_prefix('c') {
            let digits: Vec<u32> = rest.chars().filter_map(|c| c.to_digit(10)).collect();
            if rest.len() == 4 && digits.len() == 4 && digits.iter().sum::<u32>() == 4 {
                return Some(Var::coeff([digits[0], digits[1], digits[2], digits[3]]));
            }
        }
        if let Some(rest) = name.strip_prefix("phi") {
            let (t, u) = rest.split_once('_')?;
            let t: u32 = t.parse().ok()?;
            let u: i32 = match u.strip_prefix('m') {
                Some(neg) => -neg.parse::<i32>().ok()?,
                None => u.parse().ok()?,
            };
            if (-LIFT_U_OFFSET..LIFT_U_OFFSET).contains(&u) {
                return Some(Var::lift_unknown(t, u));
            }
        }
        if let Some(rest) = name.strip_prefix("sym") {
            return rest.parse().ok().map(Var::symbol);
        }
        None
    }
}

/// A power product of symbols, stored sparsely and sorted by symbol.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(SmallVec<[(Var, u32); 4]>);

impl Mono {
    pub fn one() -> Mono {
        Mono(SmallVec::new())
    }

    pub fn var(v: Var) -> Mono {
        let mut s = SmallVec::new();
        s.push((v, 1));
        Mono(s)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        Mono(out)
    }

    /// `self / other` if `other` divides `self`.
    fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Mono(out))
    }

    fn without(&self, v: Var) -> Mono {
        Mono(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }

    fn with_power(&self, v: Var, e: u32) -> Mono {
        if e == 0 {
            return self.clone();
        }
        self.mul(&Mono(std::iter::once((v, e)).collect()))
    }
}

impl Ord for Mono {
    /// Lexicographic order with lower symbol ids more significant.
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va < vb {
                        return Ordering::Greater;
                    }
                    if va > vb {
                        return Ordering::Less;
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with integer coefficients in [`Var`] symbols.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    terms: BTreeMap<Mono, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = IntPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Mono::one(), c);
        }
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = IntPoly::zero();
        p.terms.insert(Mono::var(v), BigInt::one());
        p
    }

    pub fn from_term(m: Mono, c: BigInt) -> Self {
        let mut p = IntPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    /// The integer value if the polynomial is constant (zero included).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn single_term(&self) -> Option<(&Mono, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn lead(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Mono, c: &BigInt) -> IntPoly {
        IntPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Positive gcd of the integer coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Coefficients with respect to `v`, as polynomials in the other symbols.
    pub fn coeffs_in(&self, v: Var) -> BTreeMap<u32, IntPoly> {
        let mut out: BTreeMap<u32, IntPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exponent(v))
                .or_default()
                .add_term(m.without(v), c.clone());
        }
        out
    }

    fn from_coeffs_in(v: Var, coeffs: &[IntPoly]) -> IntPoly {
        let mut out = IntPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                out.add_term(m.with_power(v, e as u32), a.clone());
            }
        }
        out
    }

    fn with_positive_lead(self) -> IntPoly {
        match self.lead() {
            Some((_, c)) if c.is_negative() => -&self,
            _ => self,
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if let Some((dm, dc)) = d.single_term() {
            let mut out = BTreeMap::new();
            for (m, c) in &self.terms {
                let q = m.div(dm)?;
                let (qc, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                out.insert(q, qc);
            }
            return Some(IntPoly { terms: out });
        }
        let (dm, dc) = d.lead().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = IntPoly::zero();
        while let Some((rm, rc)) = rem.lead() {
            let qm = rm.div(&dm)?;
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            rem = &rem - &d.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Greatest common divisor, normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.clone().with_positive_lead();
        }
        if other.is_zero() {
            return self.clone().with_positive_lead();
        }
        if let Some(c) = self.as_constant() {
            return IntPoly::constant(c.gcd(&other.content()));
        }
        if let Some(c) = other.as_constant() {
            return IntPoly::constant(c.gcd(&self.content()));
        }
        if self.terms.len() == 1 {
            return monomial_gcd(self, other);
        }
        if other.terms.len() == 1 {
            return monomial_gcd(other, self);
        }
        if self == other || *self == -other {
            return self.clone().with_positive_lead();
        }
        let va = self.vars();
        let vb = other.vars();
        let Some(&x) = va.intersection(&vb).next() else {
            return IntPoly::constant(self.content().gcd(&other.content()));
        };
        let ca = content_in(self, x);
        let cb = content_in(other, x);
        let g = ca.gcd(&cb);
        let pa = self.div_exact(&ca).expect("content divides");
        let pb = other.div_exact(&cb).expect("content divides");
        let h = primitive_prs(pa, pb, x);
        (&g * &h).with_positive_lead()
    }
}

fn monomial_gcd(mono: &IntPoly, p: &IntPoly) -> IntPoly {
    let (m, c) = mono.single_term().unwrap();
    let g = c.gcd(&p.content());
    let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::new();
    for &(v, e) in &m.0 {
        let low = p.terms.keys().map(|k| k.exponent(v)).min().unwrap_or(0);
        let e = e.min(low);
        if e > 0 {
            out.push((v, e));
        }
    }
    IntPoly::from_term(Mono(out), g)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x`.
fn content_in(p: &IntPoly, x: Var) -> IntPoly {
    let mut g = IntPoly::zero();
    for c in p.coeffs_in(x).into_values() {
        g = g.gcd(&c);
        if g.as_constant().is_some_and(|k| k.is_one()) {
            break;
        }
    }
    g
}

fn primitive_part_in(p: &IntPoly, x: Var) -> IntPoly {
    if p.is_zero() {
        return IntPoly::zero();
    }
    let c = content_in(p, x);
    p.div_exact(&c).expect("content divides").with_positive_lead()
}

fn dense_in(p: &IntPoly, x: Var) -> Vec<IntPoly> {
    let map = p.coeffs_in(x);
    let deg = map.keys().next_back().copied().unwrap_or(0) as usize;
    let mut v = vec![IntPoly::zero(); deg + 1];
    for (e, c) in map {
        v[e as usize] = c;
    }
    v
}

fn trim(v: &mut Vec<IntPoly>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Pseudo-remainder of `a` by `b` in the variable `x`.
fn prem(a: &IntPoly, b: &IntPoly, x: Var) -> IntPoly {
    let bd = dense_in(b, x);
    let db = bd.len() - 1;
    let lcb = bd[db].clone();
    let mut r = dense_in(a, x);
    trim(&mut r);
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * &lcb;
        }
        let shift = dr - db;
        for (i, bc) in bd.iter().enumerate() {
            let t = bc * &lcr;
            r[i + shift] = &r[i + shift] - &t;
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            r.push(IntPoly::zero());
        }
    }
    IntPoly::from_coeffs_in(x, &r)
}

fn primitive_prs(a: IntPoly, b: IntPoly, x: Var) -> IntPoly {
    let (mut p, mut q) = if a.degree_in(x) >= b.degree_in(x) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if q.is_zero() {
            return primitive_part_in(&p, x);
        }
        if q.degree_in(x) == 0 {
            // Both operands are primitive in x, so an x-free divisor is a unit.
            return IntPoly::one();
        }
        let r = prem(&p, &q, x);
        p = q;
        q = primitive_part_in(&r, x);
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = IntPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut first = true;
            if !abs.is_one() || m.is_one() {
                write!(f, "{abs}")?;
                first = false;
            }
            for &(v, e) in &m.0 {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "{}", v.name())?;
                } else {
                    write!(f, "{}^{}", v.name(), e)?;
                }
            }
        }
        Ok(())
    }
}

/// Exact element of the coefficient field: a reduced fraction of
/// [`IntPoly`]s.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: IntPoly,
    den: IntPoly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    pub fn int(n: i64) -> Self {
        Scalar::from_poly(IntPoly::constant(BigInt::from(n)))
    }

    pub fn big(n: BigInt) -> Self {
        Scalar::from_poly(IntPoly::constant(n))
    }

    /// `n / d` for plain integers; `d` must be nonzero.
    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::new(
            IntPoly::constant(BigInt::from(n)),
            IntPoly::constant(BigInt::from(d)),
        )
        .expect("nonzero denominator")
    }

    pub fn var(v: Var) -> Self {
        Scalar::from_poly(IntPoly::var(v))
    }

    pub fn alpha() -> Self {
        Scalar::var(Var::ALPHA)
    }

    pub fn beta() -> Self {
        Scalar::var(Var::BETA)
    }

    pub fn gamma() -> Self {
        Scalar::var(Var::GAMMA)
    }

    pub fn from_poly(p: IntPoly) -> Self {
        Scalar {
            num: p,
            den: IntPoly::one(),
        }
    }

    /// Builds `num / den` in canonical form.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::reduce(num, den))
    }

    fn reduce(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.as_constant().is_some_and(|c| c.is_one()) {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        if den.lead().is_some_and(|(_, c)| c.is_negative()) {
            num = -&num;
            den = -&den;
        }
        Scalar { num, den }
    }

    pub fn numer(&self) -> &IntPoly {
        &self.num
    }

    pub fn denom(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The value as a plain rational `(n, d)` with `d > 0`, if it has no symbols.
    pub fn as_rational(&self) -> Option<(BigInt, BigInt)> {
        Some((self.num.as_constant()?, self.den.as_constant()?))
    }

    pub fn is_rational(&self) -> bool {
        self.num.as_constant().is_some() && self.den.as_constant().is_some()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.inv_unchecked())
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_unchecked())
    }

    fn inv_unchecked(&self) -> Scalar {
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.lead().is_some_and(|(_, c)| c.is_negative()) {
            num = -&num;
            den = -&den;
        }
        Scalar { num, den }
    }

    pub fn pow(&self, e: i32) -> Result<Scalar> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        Ok(Scalar {
            num: self.num.pow(e as u32),
            den: self.den.pow(e as u32),
        })
    }

    /// Replaces every occurrence of `v` by `value`.
    pub fn subst(&self, v: Var, value: &Scalar) -> Result<Scalar> {
        let n = subst_poly(&self.num, v, value);
        let d = subst_poly(&self.den, v, value);
        n.checked_div(&d)
    }

    /// Replaces every listed symbol simultaneously.
    pub fn subst_all(&self, values: &BTreeMap<Var, Scalar>) -> Result<Scalar> {
        let n = eval_poly(&self.num, values);
        let d = eval_poly(&self.den, values);
        n.checked_div(&d)
    }

    /// Solves `self = 0` for `v`, provided `self` is affine-linear in `v`.
    pub fn solve_linear(&self, v: Var) -> Result<Scalar> {
        let coeffs = self.num.coeffs_in(v);
        if coeffs.keys().any(|&e| e > 1) || self.den.degree_in(v) > 0 {
            return Err(Error::Precondition(format!(
                "equation is not linear in {}",
                v.name()
            )));
        }
        let a = coeffs.get(&1).cloned().unwrap_or_default();
        let b = coeffs.get(&0).cloned().unwrap_or_default();
        if a.is_zero() {
            return Err(Error::Precondition(format!(
                "equation does not involve {}",
                v.name()
            )));
        }
        Scalar::new(-&b, a)
    }

    /// Parses the text grammar: integers, symbol names, `+ - * / ^` and
    /// parentheses.
    pub fn parse(s: &str) -> Result<Scalar> {
        crate::parse::parse_scalar(s)
    }
}

fn subst_poly(p: &IntPoly, v: Var, value: &Scalar) -> Scalar {
    let coeffs = p.coeffs_in(v);
    let Some(&top) = coeffs.keys().next_back() else {
        return Scalar::zero();
    };
    let mut acc = Scalar::zero();
    for e in (0..=top).rev() {
        acc = &acc * value;
        if let Some(c) = coeffs.get(&e) {
            acc = &acc + &Scalar::from_poly(c.clone());
        }
    }
    acc
}

fn eval_poly(p: &IntPoly, values: &BTreeMap<Var, Scalar>) -> Scalar {
    let mut acc = Scalar::zero();
    for (m, c) in p.terms() {
        let mut rest = Mono::one();
        let mut term = Scalar::big(c.clone());
        for (v, e) in m.factors() {
            match values.get(&v) {
                Some(x) => term = &term * &x.pow(e as i32).expect("nonnegative power"),
                None => rest = rest.with_power(v, e),
            }
        }
        if !rest.is_one() {
            term = &term * &Scalar::from_poly(IntPoly::from_term(rest, BigInt::one()));
        }
        acc = &acc + &term;
    }
    acc
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.as_constant().is_some_and(|c| c.is_one()) {
                return Scalar::from_poly(num);
            }
            return Scalar::reduce(num, self.den.clone());
        }
        // With g = gcd(b, d): a/b + c/d = (a d' + c b') / (b' d' g), and only
        // g can share factors with the new numerator.
        let g = self.den.gcd(&rhs.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return Scalar::zero();
        }
        let h = num.gcd(&g);
        let (num, g) = if h.as_constant().is_some_and(|c| c.is_one()) {
            (num, g)
        } else {
            (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        let den = &(&b1 * &d1) * &g;
        let mut out = Scalar { num, den };
        if out.den.lead().is_some_and(|(_, c)| c.is_negative()) {
            out.num = -&out.num;
            out.den = -&out.den;
        }
        out
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        // Cross-cancel; both inputs are already reduced.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = rhs.den.div_exact(&g1).unwrap();
        let c = rhs.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        let mut out = Scalar {
            num: &a * &c,
            den: &b * &d,
        };
        if out.den.lead().is_some_and(|(_, c)| c.is_negative()) {
            out.num = -&out.num;
            out.den = -&out.den;
        }
        out
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on a zero divisor; use [`Scalar::checked_div`] for fallible division.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| &a + &b)
    }
}

fn is_atomic(p: &IntPoly) -> bool {
    match p.single_term() {
        None => p.is_zero(),
        Some((m, c)) => {
            (m.is_one() && !c.is_negative()) || (c.is_one() && m.0.len() == 1 && m.0[0].1 == 1)
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            return write!(f, "{}", self.num);
        }
        if self.num.len() == 1 {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        if is_atomic(&self.den) {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Scalar::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Converts a small integer scalar to `i64`, when it is one.
pub fn scalar_to_i64(s: &Scalar) -> Option<i64> {
    let (n, d) = s.as_rational()?;
    if d.is_one() {
        n.to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Scalar {
        Scalar::parse(s).unwrap()
    }

    #[test]
    fn inverse_pair_is_one() {
        let a = &Scalar::alpha() / &Scalar::beta();
        let b = &Scalar::beta() / &Scalar::alpha();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn reduction_cancels_common_factors() {
        let x = p("(α^2 - β^2)/(α + β)");
        assert_eq!(x, p("α - β"));
        let y = p("(2*α*β + 4*β)/(6*β^2)");
        assert_eq!(y, p("(α + 2)/(3*β)"));
    }

    #[test]
    fn denominators_have_positive_lead() {
        let x = p("1/(-α)");
        assert_eq!(x.to_string(), "-1/α");
        assert_eq!(x.denom().to_string(), "α");
    }

    #[test]
    fn multivariate_gcd() {
        let a = IntPoly::var(Var::ALPHA);
        let b = IntPoly::var(Var::BETA);
        let g = IntPoly::var(Var::GAMMA);
        let f1 = &(&a + &b) * &(&(&a * &g) - &b);
        let f2 = &(&a + &b) * &(&g + &IntPoly::one());
        let gcd = f1.gcd(&f2);
        assert_eq!(gcd, &a + &b);
        let c1 = &f1 * &f1;
        assert_eq!(c1.gcd(&f1), f1.clone().with_positive_lead());
    }

    #[test]
    fn addition_with_different_denominators() {
        let x = &p("1/(α + β)") + &p("1/(α - β)");
        assert_eq!(x, p("2*α/(α^2 - β^2)"));
        let z = &p("1/(α*β)") - &p("1/(β*α)");
        assert!(z.is_zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(
            Scalar::one().checked_div(&Scalar::zero()),
            Err(Error::DivisionByZero)
        ));
        assert!(Scalar::parse("α/(β - β)").is_err());
    }

    #[test]
    fn substitution_and_linear_solve() {
        let e = p("α*phi1_m1 + c4000");
        let v = Var::from_name("phi1_m1").unwrap();
        assert_eq!(e.solve_linear(v).unwrap(), p("-c4000/α"));
        let q = p("α^2 + β").subst(Var::ALPHA, &p("β/γ")).unwrap();
        assert_eq!(q, p("(β^2 + β*γ^2)/γ^2"));
    }

    #[test]
    fn display_parse_round_trip() {
        for s in ["0", "-3/7", "α", "(α*β - 2)/(γ^2 + 1)", "-β*γ/α^2", "c3001*α/β"] {
            let x = p(s);
            assert_eq!(Scalar::parse(&x.to_string()).unwrap(), x, "{s}");
        }
    }

    #[test]
    fn var_names_round_trip() {
        for v in [
            Var::ALPHA,
            Var::S,
            Var::coeff([1, 2, 0, 1]),
            Var::lift_unknown(2, -1),
            Var::lift_unknown(1, 3),
            Var::symbol(7),
        ] {
            assert_eq!(Var::from_name(&v.name()), Some(v));
        }
    }
}
