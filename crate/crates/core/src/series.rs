//! Truncated Laurent series in a branch coordinate `u`, series in the
//! deformation parameter `t` with such coefficients, and lifts of branches.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// `sum_i coeffs[i] u^(start + i)`, known exactly below `u^prec`
/// (`prec = None` means the series is a Laurent polynomial).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    start: i32,
    coeffs: Vec<Scalar>,
    prec: Option<i32>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent {
            start: 0,
            coeffs: Vec::new(),
            prec: None,
        }
    }

    pub fn zero_to(prec: i32) -> Laurent {
        Laurent {
            start: 0,
            coeffs: Vec::new(),
            prec: Some(prec),
        }
    }

    pub fn constant(c: Scalar) -> Laurent {
        Laurent::monomial(c, 0)
    }

    pub fn monomial(c: Scalar, e: i32) -> Laurent {
        Laurent::new(e, vec![c], None)
    }

    pub fn new(start: i32, coeffs: Vec<Scalar>, prec: Option<i32>) -> Laurent {
        let mut s = Laurent {
            start,
            coeffs,
            prec,
        };
        s.normalize();
        s
    }

    /// From a polynomial in one variable.
    pub fn from_poly(p: &Poly) -> Laurent {
        assert_eq!(p.nvars(), 1);
        let deg = p.degree_in(0) as usize;
        let mut c = vec![Scalar::zero(); deg + 1];
        for (e, v) in p.terms() {
            c[e[0] as usize] = v.clone();
        }
        Laurent::new(0, c, None)
    }

    fn normalize(&mut self) {
        if let Some(p) = self.prec {
            let keep = (p - self.start).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.start = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i32;
        }
    }

    pub fn precision(&self) -> Option<i32> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// All known coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    fn low(&self) -> i32 {
        match (self.valuation(), self.prec) {
            (Some(v), _) => v,
            (None, Some(p)) => p,
            (None, None) => i32::MAX / 4,
        }
    }

    /// Highest exponent with a stored coefficient.
    pub fn top(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then(|| self.start + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> Scalar {
        if e < self.start {
            return Scalar::zero();
        }
        self.coeffs
            .get((e - self.start) as usize)
            .cloned()
            .unwrap_or_default()
    }

    /// Whether the coefficient of `u^e` is determined.
    pub fn knows(&self, e: i32) -> bool {
        self.prec.is_none_or(|p| e < p)
    }

    /// The negative-exponent part, as an exact Laurent polynomial.
    pub fn principal_part(&self) -> Laurent {
        let terms: Vec<(i32, Scalar)> = self.iter().filter(|(e, _)| *e < 0).collect();
        Laurent::from_terms(terms, None)
    }

    pub fn from_terms(terms: Vec<(i32, Scalar)>, prec: Option<i32>) -> Laurent {
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Laurent {
                start: 0,
                coeffs: Vec::new(),
                prec,
            };
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![Scalar::zero(); (hi - lo + 1) as usize];
        for (e, v) in terms {
            let i = (e - lo) as usize;
            c[i] = &c[i] + &v;
        }
        Laurent::new(lo, c, prec)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, Scalar)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.start + i as i32, c.clone()))
    }

    pub fn truncate(&self, prec: i32) -> Laurent {
        let p = self.prec.map_or(prec, |q| q.min(prec));
        Laurent::new(self.start, self.coeffs.clone(), Some(p))
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let prec = match (self.prec, other.prec) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if self.is_zero() {
            return Laurent::new(other.start, other.coeffs.clone(), prec);
        }
        if other.is_zero() {
            return Laurent::new(self.start, self.coeffs.clone(), prec);
        }
        let lo = self.start.min(other.start);
        let hi = self.top().unwrap().max(other.top().unwrap());
        let c = (lo..=hi)
            .map(|e| &self.coeff(e) + &other.coeff(e))
            .collect();
        Laurent::new(lo, c, prec)
    }

    pub fn neg(&self) -> Laurent {
        self.scale(&Scalar::int(-1))
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Laurent {
        Laurent::new(
            self.start,
            self.coeffs.iter().map(|x| x * c).collect(),
            self.prec,
        )
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i32) -> Laurent {
        Laurent::new(self.start + k, self.coeffs.clone(), self.prec.map(|p| p + k))
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        if (self.is_zero() && self.is_exact()) || (other.is_zero() && other.is_exact()) {
            return Laurent::zero();
        }
        let prec = match (self.prec, other.prec) {
            (None, None) => None,
            (Some(p), None) => Some(p + other.low()),
            (None, Some(q)) => Some(q + self.low()),
            (Some(p), Some(q)) => Some((p + other.low()).min(q + self.low())),
        };
        if self.is_zero() || other.is_zero() {
            return Laurent {
                start: 0,
                coeffs: Vec::new(),
                prec,
            };
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut c = vec![Scalar::zero(); n];
        let limit = prec.map(|p| p - self.start - other.start);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if limit.is_some_and(|l| (i + j) as i32 >= l) {
                    break;
                }
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + &(a * b);
                }
            }
        }
        Laurent::new(self.start + other.start, c, prec)
    }

    pub fn pow(&self, n: u32) -> Laurent {
        let mut acc = Laurent::constant(Scalar::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar>) -> Result<Laurent> {
        let c = self.coeffs.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(Laurent::new(self.start, c, self.prec))
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .iter()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                1 => format!("({c})*u"),
                _ => format!("({c})*u^{e}"),
            })
            .collect();
        if parts.is_empty() {
            parts.push("0".into());
        }
        if let Some(p) = self.prec {
            parts.push(format!("O(u^{p})"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Series in `t` truncated after `t^order`, with [`Laurent`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    coeffs: Vec<Laurent>,
}

impl BiSeries {
    pub fn zero(order: u32) -> BiSeries {
        BiSeries {
            coeffs: vec![Laurent::zero(); order as usize + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Laurent>) -> BiSeries {
        assert!(!coeffs.is_empty());
        BiSeries { coeffs }
    }

    /// The `t^0` coefficient `c`, no higher terms.
    pub fn constant(order: u32, c: Laurent) -> BiSeries {
        let mut s = BiSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn t_coeff(&self, j: u32) -> &Laurent {
        &self.coeffs[j as usize]
    }

    pub fn set_t_coeff(&mut self, j: u32, c: Laurent) {
        self.coeffs[j as usize] = c;
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        let n = self.coeffs.len().min(other.coeffs.len());
        BiSeries {
            coeffs: (0..n).map(|j| self.coeffs[j].add(&other.coeffs[j])).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> BiSeries {
        BiSeries {
            coeffs: self.coeffs.iter().map(|l| l.scale(c)).collect(),
        }
    }

    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![Laurent::zero(); n];
        for i in 0..n {
            for j in 0..n - i {
                let a = &self.coeffs[i];
                let b = &other.coeffs[j];
                if (a.is_zero() && a.is_exact()) || (b.is_zero() && b.is_exact()) {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BiSeries { coeffs: out }
    }

    /// Multiplies by `t^k`, dropping terms past the order.
    pub fn shift_t(&self, k: u32) -> BiSeries {
        let n = self.coeffs.len();
        let mut out = vec![Laurent::zero(); n];
        for j in 0..n.saturating_sub(k as usize) {
            out[j + k as usize] = self.coeffs[j].clone();
        }
        BiSeries { coeffs: out }
    }
}

/// A lift of a branch over `C[t]/t^(order+1)`: one [`BiSeries`] per
/// coordinate of the ambient chart, in the variable order of the equations
/// it is substituted into. The `t^0` coefficients are the unperturbed
/// branch; poles in `u` are explicit negative exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftSeries {
    pub order: u32,
    pub labels: Vec<String>,
    pub coords: Vec<BiSeries>,
}

impl LiftSeries {
    pub fn new(order: u32, labels: Vec<String>, coords: Vec<BiSeries>) -> Result<LiftSeries> {
        if labels.len() != coords.len() {
            return Err(Error::Precondition("one label per coordinate".into()));
        }
        if coords.iter().any(|c| c.order() != order) {
            return Err(Error::Precondition("coordinate series truncated at a different order".into()));
        }
        Ok(LiftSeries {
            order,
            labels,
            coords,
        })
    }

    /// The `t^0` parametrization of the branch.
    pub fn branch(&self) -> Vec<Laurent> {
        self.coords.iter().map(|c| c.t_coeff(0).clone()).collect()
    }

    /// Coefficient of `t^j` in coordinate `i`.
    pub fn term(&self, i: usize, j: u32) -> &Laurent {
        self.coords[i].t_coeff(j)
    }

    /// Principal part of the `t^j` coefficient of coordinate `i`.
    pub fn principal_part(&self, i: usize, j: u32) -> Laurent {
        self.term(i, j).principal_part()
    }
}

/// Coefficient of `t^t_power u^u_power` in a substituted equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientEquation {
    pub t_power: u32,
    pub u_power: i32,
    pub value: Scalar,
}

/// Substitutes `lift` into `equation` (variables: the lift's coordinates
/// followed by `t`) and returns the coefficient equations `t^a u^b` for
/// `a <= order`, over the range of `u` exponents that are determined.
pub fn series_collect(equation: &Poly, lift: &LiftSeries, order: u32) -> Result<Vec<CoefficientEquation>> {
    if lift.order < order {
        return Err(Error::Precondition(format!(
            "lift truncated at order {} but order {order} requested",
            lift.order
        )));
    }
    let total = substitute(equation, lift, order)?;
    let mut out = Vec::new();
    for a in 0..=order {
        let c = total.t_coeff(a);
        let lo = c.valuation().unwrap_or(0).min(0);
        let hi = match c.precision() {
            Some(p) => p - 1,
            None => c.top().unwrap_or(0).max(0),
        };
        for b in lo..=hi {
            out.push(CoefficientEquation {
                t_power: a,
                u_power: b,
                value: c.coeff(b),
            });
        }
    }
    Ok(out)
}

/// The substituted equation as a [`BiSeries`] truncated at `order`.
pub fn substitute(equation: &Poly, lift: &LiftSeries, order: u32) -> Result<BiSeries> {
    let n = lift.coords.len();
    if equation.nvars() != n + 1 {
        return Err(Error::Precondition(format!(
            "equation has {} variables, lift provides {} coordinates and t",
            equation.nvars(),
            n
        )));
    }
    let trunc: Vec<BiSeries> = lift
        .coords
        .iter()
        .map(|c| BiSeries::from_coeffs((0..=order).map(|j| c.t_coeff(j).clone()).collect()))
        .collect();
    let mut powers: Vec<Vec<BiSeries>> = trunc
        .iter()
        .map(|c| vec![BiSeries::constant(order, Laurent::constant(Scalar::one())), c.clone()])
        .collect();
    let mut total = BiSeries::zero(order);
    for (e, coef) in equation.terms() {
        if e[n] > order {
            continue;
        }
        let mut term = BiSeries::constant(order, Laurent::constant(coef.clone()));
        for i in 0..n {
            let k = e[i] as usize;
            while powers[i].len() <= k {
                let next = powers[i].last().unwrap().mul(&trunc[i]);
                powers[i].push(next);
            }
            if k > 0 {
                term = term.mul(&powers[i][k]);
            }
        }
        total = total.add(&term.shift_t(e[n]));
    }
    Ok(total)
}
