//! Seeded generators of prescriptions and quartics, shared by tests and
//! the command-line verification.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::central_fiber::{design_f, Edge, PrescribedPoint};
use crate::error::Result;
use crate::poly::{quartic_exponents, QuarticForm};
use crate::scalar::Scalar;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Roots `[1:2], [2:1], [1:-2], [-2:1]` on every edge. The product of the
/// ratios is 1 on each edge, so the vertex conditions hold with equal
/// vertex values.
pub fn symmetric_prescription() -> Vec<PrescribedPoint> {
    Edge::all()
        .into_iter()
        .flat_map(|e| {
            [(1, 2), (2, 1), (1, -2), (-2, 1)]
                .into_iter()
                .map(move |(a, b)| PrescribedPoint::new(e, a, b))
        })
        .collect()
}

fn nonzero(rng: &mut impl Rng, bound: i64) -> i64 {
    let v = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// Four distinct roots per edge, away from the vertices, satisfying the
/// vertex conditions: on an edge with surviving coordinates `k < l`, the
/// product of the ratios `b/a` of its roots `[a:b]` equals `v_k / v_l` for
/// random vertex values `v`.
pub fn random_prescription(rng: &mut impl Rng) -> Vec<PrescribedPoint> {
    let v: [i64; 4] = std::array::from_fn(|_| nonzero(rng, 5));
    let mut out = Vec::with_capacity(24);
    for e in Edge::all() {
        let (k, l) = e.surviving();
        let target = Scalar::ratio(v[k], v[l]);
        loop {
            let roots: Vec<(i64, i64)> = (0..3).map(|_| (rng.gen_range(1..=6), nonzero(rng, 6))).collect();
            let mut prod = Scalar::one();
            let mut ratios = Vec::new();
            for &(a, b) in &roots {
                let r = Scalar::ratio(b, a);
                prod = &prod * &r;
                ratios.push(r);
            }
            let last = &target / &prod;
            if ratios.contains(&last) || ratios[0] == ratios[1] || ratios[0] == ratios[2] || ratios[1] == ratios[2] {
                continue;
            }
            let (n, d) = last.as_rational().expect("rational");
            for &(a, b) in &roots {
                out.push(PrescribedPoint::new(e, a, b));
            }
            out.push(PrescribedPoint {
                edge: e,
                root: (Scalar::big(d), Scalar::big(n)),
            });
            break;
        }
    }
    out
}

/// A designed quartic for a random prescription drawn from `seed`.
pub fn designed(seed: u64) -> Result<(Vec<PrescribedPoint>, QuarticForm)> {
    let mut r = rng(seed);
    let p = random_prescription(&mut r);
    let d = design_f(&p)?;
    Ok((p, d.f))
}

/// A quartic with independent integer coefficients in `[-bound, bound]`.
pub fn random_quartic(rng: &mut impl Rng, bound: i64) -> QuarticForm {
    QuarticForm::from_terms(
        quartic_exponents()
            .into_iter()
            .map(|e| (e, Scalar::int(rng.gen_range(-bound..=bound)))),
    )
    .expect("quartic exponents")
}

/// Random rational values, numerators in `[-bound, bound]`, denominators
/// in `[1, bound]`.
pub fn random_rational(rng: &mut impl Rng, bound: i64) -> Scalar {
    Scalar::ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

/// A random nonzero rational.
pub fn random_nonzero_rational(rng: &mut impl Rng, bound: i64) -> Scalar {
    Scalar::ratio(nonzero(rng, bound), rng.gen_range(1..=bound))
}
