//! Affine charts at points of the edges and the splitting of a quartic into
//! a constant plus parts along the chart coordinates.

use crate::central_fiber::ProjPoint;
use crate::error::{Error, Result};
use crate::poly::{Poly, QuarticForm};
use crate::scalar::Scalar;

/// Roles of the homogeneous coordinates at a point `p` in an edge interior.
///
/// `pivot` and `first` are the two coordinates nonzero at `p`; `middle` and
/// `last` are the vanishing ones, `middle < last`. Affine chart coordinates
/// are the ratios `X_i / X_pivot` for the three non-pivot `i`, in increasing
/// coordinate order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chart {
    pub pivot: usize,
    pub first: usize,
    pub middle: usize,
    pub last: usize,
}

impl Chart {
    /// The chart at `base` whose pivot is the lower-index nonzero coordinate.
    pub fn at(base: &ProjPoint) -> Result<Chart> {
        let nz: Vec<usize> = (0..4).filter(|&i| !base.coord(i).is_zero()).collect();
        if nz.len() != 2 {
            return Err(Error::Precondition(format!("{base} is not in the interior of an edge")));
        }
        Chart::with_pivot(nz[0], base)
    }

    pub fn with_pivot(pivot: usize, base: &ProjPoint) -> Result<Chart> {
        let Some(edge) = base.edge() else {
            return Err(Error::Precondition(format!("{base} is not in the interior of an edge")));
        };
        if pivot > 3 || base.coord(pivot).is_zero() {
            return Err(Error::Precondition(format!("pivot coordinate vanishes at {base}")));
        }
        let (middle, last) = edge.vanishing();
        let first = (0..4)
            .find(|&i| i != pivot && i != middle && i != last)
            .unwrap();
        Ok(Chart {
            pivot,
            first,
            middle,
            last,
        })
    }

    pub fn affine(&self) -> [usize; 3] {
        let mut a = [self.first, self.middle, self.last];
        a.sort();
        a
    }

    /// Position of homogeneous coordinate `coord` among the affine ones.
    pub fn slot(&self, coord: usize) -> usize {
        self.affine()
            .iter()
            .position(|&c| c == coord)
            .expect("non-pivot coordinate")
    }

    pub fn affine_point(&self, p: &ProjPoint) -> Result<[Scalar; 3]> {
        let d = p.coord(self.pivot);
        let a = self.affine();
        Ok([
            p.coord(a[0]).checked_div(d)?,
            p.coord(a[1]).checked_div(d)?,
            p.coord(a[2]).checked_div(d)?,
        ])
    }

    /// `f / X_pivot^4` as a polynomial in the affine coordinates.
    pub fn dehomogenize(&self, f: &QuarticForm) -> Poly {
        let a = self.affine();
        let mut out = Poly::zero(3);
        for (e, c) in f.terms() {
            out.add_term(vec![e[a[0]], e[a[1]], e[a[2]]], c.clone());
        }
        out
    }
}

/// `f / X_pivot^4 = c0 + (F - F0) g1(F) + M g2(F, M) + L g3(F, M, L)`,
/// with `F, M, L` the affine `first, middle, last` coordinates and `F0` the
/// value of `F` at the base point. `g3` takes every monomial containing `L`;
/// `g2` takes the remaining monomials containing `M`.
///
/// All parts are stored as polynomials in the three affine coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartDecomposition {
    pub chart: Chart,
    pub base: ProjPoint,
    pub base_affine: [Scalar; 3],
    pub c0: Scalar,
    pub g1: Poly,
    pub g2: Poly,
    pub g3: Poly,
}

pub fn chart_decompose(f: &QuarticForm, pivot: usize, base: &ProjPoint) -> Result<ChartDecomposition> {
    let chart = Chart::with_pivot(pivot, base)?;
    let base_affine = chart.affine_point(base)?;
    let (sf, sm, sl) = (chart.slot(chart.first), chart.slot(chart.middle), chart.slot(chart.last));
    let g = chart.dehomogenize(f);
    let mut g2 = Poly::zero(3);
    let mut g3 = Poly::zero(3);
    let mut rest: Vec<Scalar> = vec![Scalar::zero(); 5];
    for (e, c) in g.terms() {
        if e[sl] > 0 {
            let mut d = e.clone();
            d[sl] -= 1;
            g3.add_term(d, c.clone());
        } else if e[sm] > 0 {
            let mut d = e.clone();
            d[sm] -= 1;
            g2.add_term(d, c.clone());
        } else {
            let k = e[sf] as usize;
            rest[k] = &rest[k] + c;
        }
    }
    let f0 = &base_affine[sf];
    // Synthetic division of the F-only part by (F - F0).
    let mut c0 = Scalar::zero();
    for r in rest.iter().rev() {
        c0 = &(&c0 * f0) + r;
    }
    let mut g1 = Poly::zero(3);
    let mut q = Scalar::zero();
    for i in (1..rest.len()).rev() {
        q = &(&q * f0) + &rest[i];
        let mut e = vec![0; 3];
        e[sf] = (i - 1) as u32;
        g1.add_term(e, q.clone());
    }
    Ok(ChartDecomposition {
        chart,
        base: base.clone(),
        base_affine,
        c0,
        g1,
        g2,
        g3,
    })
}

impl ChartDecomposition {
    /// `c0 + (F - F0) g1 + M g2 + L g3`.
    pub fn reassemble(&self) -> Poly {
        let ch = &self.chart;
        let v = |c: usize| Poly::var(3, ch.slot(c));
        let f_minus = v(ch.first).sub(&Poly::constant(3, self.base_affine[ch.slot(ch.first)].clone()));
        Poly::constant(3, self.c0.clone())
            .add(&f_minus.mul(&self.g1))
            .add(&v(ch.middle).mul(&self.g2))
            .add(&v(ch.last).mul(&self.g3))
    }

    /// The values of `g1, g2, g3` at the base point.
    pub fn parts_at_base(&self) -> [Scalar; 3] {
        [
            self.g1.eval(&self.base_affine),
            self.g2.eval(&self.base_affine),
            self.g3.eval(&self.base_affine),
        ]
    }

    /// Evaluates a part at an arbitrary affine point, given in homogeneous
    /// coordinate order of the affine slots.
    pub fn eval_part(&self, part: usize, at: &[Scalar; 3]) -> Scalar {
        [&self.g1, &self.g2, &self.g3][part - 1].eval(at)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> ProjPoint {
        ProjPoint::new([Scalar::beta(), -Scalar::alpha(), Scalar::zero(), Scalar::zero()]).unwrap()
    }

    #[test]
    fn constant_after_dehomogenization() {
        let d = chart_decompose(&QuarticForm::monomial([4, 0, 0, 0], Scalar::one()), 0, &base()).unwrap();
        assert!(d.c0.is_one());
        assert!(d.g1.is_zero() && d.g2.is_zero() && d.g3.is_zero());
    }

    #[test]
    fn single_w_monomial() {
        let d = chart_decompose(&QuarticForm::monomial([3, 0, 0, 1], Scalar::one()), 0, &base()).unwrap();
        assert!(d.c0.is_zero());
        assert_eq!(d.g3, Poly::constant(3, Scalar::one()));
        assert!(d.g1.is_zero() && d.g2.is_zero());
    }

    #[test]
    fn greedy_routing_of_a_mixed_monomial() {
        let d = chart_decompose(&QuarticForm::monomial([2, 1, 1, 0], Scalar::one()), 0, &base()).unwrap();
        assert!(d.c0.is_zero());
        assert_eq!(d.g2, Poly::var(3, 0));
        assert!(d.g1.is_zero() && d.g3.is_zero());
    }

    #[test]
    fn c0_is_the_value_at_the_base() {
        let f = QuarticForm::from_terms([
            ([4, 0, 0, 0], Scalar::int(2)),
            ([2, 2, 0, 0], Scalar::int(-3)),
            ([0, 3, 0, 1], Scalar::int(5)),
        ])
        .unwrap();
        let b = ProjPoint::from_ints([1, 2, 0, 0]).unwrap();
        let d = chart_decompose(&f, 0, &b).unwrap();
        assert_eq!(d.c0, f.eval(b.coords()));
        assert_eq!(d.reassemble(), d.chart.dehomogenize(&f));
    }

    #[test]
    fn rejects_bad_charts() {
        let f = QuarticForm::monomial([4, 0, 0, 0], Scalar::one());
        assert!(chart_decompose(&f, 2, &base()).is_err());
        let v = ProjPoint::from_ints([1, 0, 0, 0]).unwrap();
        assert!(chart_decompose(&f, 0, &v).is_err());
    }
}
