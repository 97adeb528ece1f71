//! The table of checkable claims run by `degen verify`: each claim records
//! the computed value, the expected value and whether they agree.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::central_fiber::{design_f, singular_locus, Edge, Hyperplane};
use crate::curve_graph::{hyperplane_section_unmarked, validate, CurveGraph};
use crate::error::Result;
use crate::fixtures;
use crate::graft::{GraftKind, GraftSetup};
use crate::obstruction::{
    dual_obstruction_dim, first_order_obstruction, generator_restriction_compare, local_lift_in,
    local_model_equation, local_model_lift_with, obstruction_at_node,
};
use crate::poly::{quartic_exponents, QuarticForm};
use crate::scalar::Scalar;
use crate::series::series_collect;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    /// Truncation order for the local model lifts.
    pub order: u32,
    /// Quartic supplied by the user; its singular locus must be generic.
    pub f: Option<QuarticForm>,
    pub symbolic: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            trials: 10,
            order: 3,
            f: None,
            symbolic: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub computed: String,
    pub expected: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub order: u32,
    /// Where the grafting constructions took their quartic from.
    pub construction_quartic: String,
    pub claims: Vec<Claim>,
    /// Per-monomial totals of the symbolic cancellation, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cancellation_table: Option<BTreeMap<String, String>>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

struct Claims(Vec<Claim>);

impl Claims {
    fn push(&mut self, id: impl Into<String>, statement: &str, computed: impl ToString, expected: impl ToString) {
        let (computed, expected) = (computed.to_string(), expected.to_string());
        self.0.push(Claim {
            id: id.into(),
            statement: statement.into(),
            pass: computed == expected,
            computed,
            expected,
        });
    }
}

/// Closed forms of the node values on `l` of the section `αx + βy + γz + w`,
/// read off from the monomials of `f`.
fn closed_forms(f: &QuarticForm) -> [(&'static str, Scalar); 3] {
    let slice = |lin: usize, absent: usize, ratio: usize, r: &Scalar| -> Scalar {
        quartic_exponents()
            .into_iter()
            .filter(|e| e[lin] == 1 && e[absent] == 0)
            .map(|e| &f.coeff(e) * &r.pow(e[ratio] as i32).expect("nonzero base"))
            .sum()
    };
    let (a, b, g) = (Scalar::alpha(), Scalar::beta(), Scalar::gamma());
    let (a2, b2) = (&a * &a, &b * &b);
    let bg = &b * &g;
    let y = -&(&a / &b);
    let lk = &(&(&b / &a2) * &slice(2, 3, 1, &y)) - &(&(&bg / &a2) * &slice(3, 2, 1, &y));
    let z = -&(&a / &g);
    let ln = &(&(&bg / &a2) * &slice(3, 1, 2, &z)) - &(&(&g / &a2) * &slice(1, 3, 2, &z));
    let z = -&(&b / &g);
    let lm = &(&(&g / &b2) * &slice(0, 3, 2, &z)) - &(&(&(&a * &g) / &b2) * &slice(3, 0, 2, &z));
    [("l^k", lk), ("l^n", ln), ("l^m", lm)]
}

fn random_rational_quartic(rng: &mut impl Rng) -> QuarticForm {
    QuarticForm::from_terms(
        quartic_exponents()
            .into_iter()
            .map(|e| (e, fixtures::random_rational(rng, 12))),
    )
    .expect("quartic exponents")
}

/// Runs every claim. Fails early only when the supplied quartic violates
/// the genericity conditions.
pub fn verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if let Some(f) = &cfg.f {
        singular_locus(f)?;
    }
    let mut rng = fixtures::rng(cfg.seed);
    let mut c = Claims(Vec::new());
    let trials = cfg.trials.max(1);

    // singular locus
    let mut matched = 0;
    for i in 0..trials {
        let (p, f) = fixtures::designed(cfg.seed.wrapping_add(i as u64))?;
        let s = singular_locus(&f)?;
        let ok = s.complete()
            && s.count() == 24
            && p.iter().all(|q| q.point().is_ok_and(|x| s.points().contains(&x)));
        matched += ok as usize;
    }
    c.push(
        "singular_locus.designed",
        "designed quartics have exactly the 24 prescribed singular points, 4 per edge",
        format!("{matched}/{trials}"),
        format!("{trials}/{trials}"),
    );
    if let Some(f) = &cfg.f {
        let s = singular_locus(f)?;
        let per_edge: Vec<usize> = Edge::all().iter().map(|&e| s.on_edge(e).roots.len()).collect();
        c.push(
            "singular_locus.input",
            "rational singular points of the input quartic per edge",
            format!("{per_edge:?}"),
            "[4, 4, 4, 4, 4, 4]",
        );
    }

    // first-order cancellation
    let h = Hyperplane::symbolic();
    let sym = first_order_obstruction(&QuarticForm::symbolic(), &h)?;
    c.push(
        "cancellation.symbolic",
        "first-order obstruction of the section αx + βy + γz + w vanishes for symbolic f",
        &sym.total,
        "0",
    );
    if let Some(f) = &cfg.f {
        c.push(
            "cancellation.input",
            "first-order obstruction vanishes for the input quartic",
            &first_order_obstruction(f, &h)?.total,
            "0",
        );
    }
    let mut vanished = 0;
    for _ in 0..trials {
        let f = random_rational_quartic(&mut rng);
        let hh = Hyperplane(std::array::from_fn(|_| fixtures::random_nonzero_rational(&mut rng, 9)));
        vanished += first_order_obstruction(&f, &hh)?.total.is_zero() as usize;
    }
    c.push(
        "cancellation.random",
        "first-order obstruction vanishes for random quartics and sections",
        format!("{vanished}/{trials}"),
        format!("{trials}/{trials}"),
    );

    // node formulas
    let mut inputs: Vec<QuarticForm> = (0..trials).map(|_| random_rational_quartic(&mut rng)).collect();
    inputs.extend(cfg.f.iter().cloned());
    let mut agree = 0;
    for f in &inputs {
        let mut ok = true;
        for (name, want) in closed_forms(f) {
            ok &= obstruction_at_node(f, &h, name)?.value == want;
        }
        agree += ok as usize;
    }
    c.push(
        "node_formulas",
        "contributions at l∩k, l∩n, l∩m equal their closed forms",
        format!("{agree}/{}", inputs.len()),
        format!("{}/{}", inputs.len(), inputs.len()),
    );

    // per-monomial table
    let name_of = |i: usize| sym.nodes[i].name.clone();
    let coeff = QuarticForm::symbolic().coeff([3, 0, 0, 1]);
    let row = |m: &str| -> Vec<String> {
        sym.per_monomial[m]
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| format!("{}: {}", name_of(i), v))
            .collect()
    };
    let unit = &(&(&Scalar::beta() * &Scalar::gamma()) / &(&Scalar::alpha() * &Scalar::alpha())) * &coeff;
    let mut want_x3w = Vec::new();
    for (i, n) in sym.nodes.iter().enumerate() {
        if n.point.edge() == Edge::from_names("z", "w").ok() {
            want_x3w.push((i, format!("{}: {}", name_of(i), -&unit)));
        } else if n.point.edge() == Edge::from_names("y", "w").ok() {
            want_x3w.push((i, format!("{}: {}", name_of(i), unit)));
        }
    }
    want_x3w.sort();
    c.push(
        "monomial_table.x3w",
        "x³w contributes ∓βγ/α² times its coefficient at l∩k and l∩n only",
        row("x^3w").join(", "),
        want_x3w.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join(", "),
    );
    let xy2z = &sym.per_monomial["xy^2z"];
    let mut support: Vec<String> = (0..xy2z.nodes.len())
        .filter(|&i| !xy2z.nodes[i].is_zero())
        .map(|i| sym.nodes[i].point.edge().map(|e| e.to_string()).unwrap_or_default())
        .collect();
    support.sort();
    let mut expected = [Edge::from_names("z", "w")?.to_string(), Edge::from_names("x", "w")?.to_string()];
    expected.sort();
    c.push(
        "monomial_table.xy2z",
        "xy²z contributes at l∩k and l∩m only, and the two cancel",
        format!("{} at {}", xy2z.total, support.join(" ")),
        format!("0 at {}", expected.join(" ")),
    );

    // lift relations
    let f = QuarticForm::symbolic();
    let p = h.restrict(3).edge_point(2)?;
    let bl = local_lift_in(&f, &h, 3, &p, 1)?;
    let (a, b, g) = (Scalar::alpha(), Scalar::beta(), Scalar::gamma());
    let y0 = -&(&a / &b);
    let c0 = f.eval(&[Scalar::one(), y0.clone(), Scalar::zero(), Scalar::zero()]);
    let mut g1 = Scalar::zero();
    let mut g2 = Scalar::zero();
    for e in quartic_exponents() {
        let k = f.coeff(e);
        if e[2] == 0 && e[3] == 0 && e[1] > 0 {
            g1 = &g1 + &(&(&k * &Scalar::int(e[1] as i64)) * &y0.pow(e[1] as i32 - 1)?);
        }
        if e[2] == 1 && e[3] == 0 {
            g2 = &g2 + &(&k * &y0.pow(e[1] as i32)?);
        }
    }
    c.push("lift.epsilon", "ε₁ = −c₀/α", bl.epsilon(), -&(&c0 / &a));
    c.push(
        "lift.a1",
        "a₁ = γ/α²·c₀ + γ/(αβ)·g₁(−α/β) − g₂(−α/β, 0)/α",
        bl.a1(),
        &(&(&(&g / &(&a * &a)) * &c0) + &(&(&g / &(&a * &b)) * &g1)) - &(&g2 / &a),
    );

    // local model
    let order = cfg.order.max(1);
    let eq = local_model_equation();
    let (mut solved, mut criterion) = (0, 0);
    for i in 0..trials {
        let mut draw = |n: usize| -> Vec<Scalar> {
            (0..n).map(|_| fixtures::random_nonzero_rational(&mut rng, 9)).collect()
        };
        let (p, q, rt, st) = (draw(3), draw(3), draw(2), draw(2));
        let r0 = if i % 3 == 0 {
            Scalar::zero()
        } else {
            fixtures::random_nonzero_rational(&mut rng, 9)
        };
        let m = local_model_lift_with(&p, &q, &r0, &rt, &st, order)?;
        let mut ok = true;
        for br in &m.branches {
            ok &= series_collect(&eq, br, order)?.iter().all(|e| e.value.is_zero());
        }
        solved += ok as usize;
        criterion += (m.smoothes_node == !r0.is_zero()) as usize;
    }
    c.push(
        "local_model.equation",
        "lifted branches satisfy XY + tZ = 0 to the truncation order",
        format!("{solved}/{trials}"),
        format!("{trials}/{trials}"),
    );
    c.push(
        "local_model.smoothing",
        "a lift smooths the node exactly when r₀ ≠ 0",
        format!("{criterion}/{trials}"),
        format!("{trials}/{trials}"),
    );

    // constructions
    let recipes = |f: &QuarticForm| -> Result<(GraftSetup, GraftSetup)> {
        Ok((GraftSetup::find(f, GraftKind::Rational)?, GraftSetup::find(f, GraftKind::Genus)?))
    };
    let input_specs = cfg.f.as_ref().and_then(|f| recipes(f).ok());
    let (source, (rs, gs)) = match input_specs {
        Some(s) => ("input".to_string(), s),
        None => ("symmetric design".to_string(), recipes(&design_f(&fixtures::symmetric_prescription())?.f)?),
    };
    let f = rs.f.clone();
    let base = rs.base()?;
    let section = hyperplane_section_unmarked(&Hyperplane::from_ints([1, 3, 7, 11]))?;
    let mut curves: Vec<(String, CurveGraph, bool)> = vec![("ψ₀".into(), base.clone(), true)];
    for r in 1..=5usize {
        let g = rs.graft(r)?;
        c.push(
            format!("graft.rational.{r}"),
            "rational graft: (genus, components, marks, degree) = (0, 4r, 4r+2, 4r)",
            format!("({}, {}, {}, {})", g.genus()?, g.components.len(), g.marks.len(), g.degree()),
            format!("(0, {}, {}, {})", 4 * r, 4 * r + 2, 4 * r),
        );
        curves.push((format!("D₀,{r}"), g, true));
    }
    for r in 1..=3usize {
        let g = gs.graft(r)?;
        c.push(format!("graft.genus.{r}"), "genus graft has genus r", g.genus()?, r);
        curves.push((format!("genus {r} graft"), g, false));
    }
    let mut dims = vec![("generic section".to_string(), &section)];
    dims.extend(curves.iter().map(|(n, g, _)| (n.clone(), g)));
    for (name, g) in dims {
        c.push(
            format!("dual_dimension.{name}"),
            "dual obstruction space has dimension 1",
            dual_obstruction_dim(g)?.dimension,
            1,
        );
    }
    let nodal = hyperplane_section_unmarked(&base.image[0].hyperplane)?;
    let pairing: Vec<(usize, usize)> = (0..4).map(|i| (i, i)).collect();
    c.push(
        "generator_identification",
        "dual generators of ψ₀ and of the nodal section through its points agree",
        generator_restriction_compare(&base, &nodal, &pairing)?,
        true,
    );
    let mut valid = 0;
    for (_, g, simply) in &curves {
        let r = validate(g, &f);
        valid += (if *simply { r.simply_pre_smoothable } else { r.pre_smoothable }) as usize;
    }
    c.push(
        "validity",
        "constructed curves pass the validity checks at their level",
        format!("{valid}/{}", curves.len()),
        format!("{}/{}", curves.len(), curves.len()),
    );

    let cancellation_table = cfg.symbolic.then(|| {
        sym.per_monomial
            .iter()
            .map(|(k, m)| (k.clone(), m.total.to_string()))
            .collect()
    });
    Ok(VerifyReport {
        seed: cfg.seed,
        trials,
        order,
        construction_quartic: source,
        claims: c.0,
        cancellation_table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_run_passes() {
        let r = verify(&VerifyConfig {
            trials: 2,
            ..Default::default()
        })
        .unwrap();
        let failed: Vec<&Claim> = r.failures().collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(r.construction_quartic, "symmetric design");
    }
}
