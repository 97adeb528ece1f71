mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use degen_core::central_fiber::{design_f, singular_locus, Edge, Hyperplane};
use degen_core::curve_graph::{hyperplane_section_unmarked, validate, CurveGraph};
use degen_core::fixtures::{self, symmetric_prescription};
use degen_core::graft::{GraftKind, GraftSetup};
use degen_core::obstruction::{
    dual_obstruction_dim, first_order_obstruction, generator_restriction_compare, local_lift_in,
    local_model_equation, local_model_lift_with, obstruction_at_node,
};
use degen_core::poly::{quartic_exponents, QuarticForm};
use degen_core::series::series_collect;
use degen_core::Scalar;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let mut worst = 0f64;
    for seed in 0..20 {
        let (p, f) = fixtures::designed(seed).map_err(|e| e.to_string())?;
        let t = Instant::now();
        let s = singular_locus(&f).map_err(|e| e.to_string())?;
        worst = worst.max(t.elapsed().as_secs_f64());
        ensure(s.complete() && s.count() == 24, || format!("seed {seed}: {} points", s.count()))?;
        for e in Edge::all() {
            let mut got: Vec<String> = s.on_edge(e).points().iter().map(|x| x.to_string()).collect();
            let mut want: Vec<String> =
                p.iter().filter(|q| q.edge == e).map(|q| q.point().unwrap().to_string()).collect();
            got.sort();
            want.sort();
            ensure(got == want, || format!("seed {seed}, edge {e}: {got:?} vs {want:?}"))?;
        }
        for q in &p {
            ensure(f.eval(q.point().unwrap().coords()).is_zero(), || format!("seed {seed}: f nonzero at prescribed point"))?;
        }
    }
    ensure(worst < 1.0, || format!("slowest extraction {worst:.3}s"))?;
    Ok(format!("20 designs, 24 points each, slowest {worst:.3}s"))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let r = first_order_obstruction(&QuarticForm::symbolic(), &Hyperplane::symbolic()).map_err(|e| e.to_string())?;
    let secs = t.elapsed().as_secs_f64();
    ensure(r.total.is_zero(), || format!("total = {}", r.total))?;
    ensure(r.per_monomial.len() == 35, || format!("{} monomials", r.per_monomial.len()))?;
    ensure(secs < 60.0, || format!("{secs:.1}s"))?;
    Ok(format!("total 0 over 35 symbolic coefficients in {secs:.2}s"))
}

fn criterion_3() -> Outcome {
    let mut rng = fixtures::rng(2024);
    let h = Hyperplane::symbolic();
    for trial in 0..100 {
        let f = QuarticForm::from_terms(
            quartic_exponents()
                .into_iter()
                .map(|e| (e, fixtures::random_rational(&mut rng, 12))),
        )
        .unwrap();
        for (name, want) in common::l_node_oracle(&f) {
            let got = obstruction_at_node(&f, &h, name).map_err(|e| e.to_string())?.value;
            ensure(got == want, || format!("trial {trial}, {name}: {got} vs {want}"))?;
        }
    }
    Ok("100 random quartics, l∩k, l∩n, l∩m equal their closed forms".into())
}

fn criterion_4() -> Outcome {
    let r = first_order_obstruction(&QuarticForm::symbolic(), &Hyperplane::symbolic()).map_err(|e| e.to_string())?;
    let name_of = |i: usize| r.nodes[i].name.clone();
    let is = |i: usize, a: &str, b: &str| {
        let n = name_of(i);
        n == format!("{a}^{b}") || n == format!("{b}^{a}")
    };
    let sym = QuarticForm::symbolic();
    let (a, b, g) = (Scalar::alpha(), Scalar::beta(), Scalar::gamma());
    let unit = &(&b * &g) / &(&a * &a);
    let c = sym.coeff([3, 0, 0, 1]);
    let row = r.per_monomial.get("x^3w").ok_or("no x^3w row")?;
    for (i, v) in row.nodes.iter().enumerate() {
        let want = if is(i, "l", "k") {
            -&(&unit * &c)
        } else if is(i, "l", "n") {
            &unit * &c
        } else {
            Scalar::zero()
        };
        ensure(v == &want, || format!("x^3w at {}: {v}", name_of(i)))?;
    }
    let row = r.per_monomial.get("xy^2z").ok_or("no xy^2z row")?;
    let nz: Vec<usize> = (0..row.nodes.len()).filter(|&i| !row.nodes[i].is_zero()).collect();
    ensure(nz.len() == 2 && nz.iter().all(|&i| is(i, "l", "k") || is(i, "l", "m")), || {
        format!("xy^2z nonzero at {:?}", nz.iter().map(|&i| name_of(i)).collect::<Vec<_>>())
    })?;
    ensure((&row.nodes[nz[0]] + &row.nodes[nz[1]]).is_zero(), || "xy^2z does not cancel".into())?;
    Ok(format!("x^3w: ∓{unit}·c at l∩k, l∩n; xy^2z cancels between l∩k and l∩m"))
}

fn criterion_5() -> Outcome {
    let f = QuarticForm::symbolic();
    let h = Hyperplane::symbolic();
    let p = h.restrict(3).edge_point(2).map_err(|e| e.to_string())?;
    let bl = local_lift_in(&f, &h, 3, &p, 1).map_err(|e| e.to_string())?;
    let (a, b, g) = (Scalar::alpha(), Scalar::beta(), Scalar::gamma());
    let y0 = -&(&a / &b);
    let c0 = f.eval(&[Scalar::one(), y0.clone(), Scalar::zero(), Scalar::zero()]);
    let mut g1 = Scalar::zero();
    let mut g2 = Scalar::zero();
    for e in quartic_exponents() {
        let c = f.coeff(e);
        if e[2] == 0 && e[3] == 0 && e[1] > 0 {
            g1 = &g1 + &(&(&c * &Scalar::int(e[1] as i64)) * &y0.pow(e[1] as i32 - 1).unwrap());
        }
        if e[2] == 1 && e[3] == 0 {
            g2 = &g2 + &(&c * &y0.pow(e[1] as i32).unwrap());
        }
    }
    let eps = -&(&c0 / &a);
    let a1 = &(&(&(&g / &(&a * &a)) * &c0) + &(&(&g / &(&a * &b)) * &g1)) - &(&g2 / &a);
    ensure(bl.epsilon() == eps, || format!("ε = {}", bl.epsilon()))?;
    ensure(bl.a1() == a1, || format!("a1 = {}", bl.a1()))?;
    Ok("ε₁ and a₁ match symbolically".into())
}

fn criterion_6() -> Outcome {
    let mut rng = fixtures::rng(6);
    let eq = local_model_equation();
    let (mut smooth, mut rigid) = (0, 0);
    for trial in 0..40 {
        let mut draw = |n: usize| -> Vec<Scalar> { (0..n).map(|_| fixtures::random_nonzero_rational(&mut rng, 9)).collect() };
        let (p, q, rt, st) = (draw(3), draw(3), draw(2), draw(2));
        let r0 = if trial % 3 == 0 { Scalar::zero() } else { fixtures::random_nonzero_rational(&mut rng, 9) };
        let m = local_model_lift_with(&p, &q, &r0, &rt, &st, 3).map_err(|e| e.to_string())?;
        for br in &m.branches {
            let eqs = series_collect(&eq, br, 3).map_err(|e| e.to_string())?;
            ensure(eqs.iter().all(|e| e.value.is_zero()), || format!("trial {trial}: residual"))?;
            // independent check: at a sample u, each coordinate is a polynomial
            // in t; XY + tZ must have no terms below t^4
            let u = Scalar::ratio(rng.gen_range(2..9), 7);
            let at_u = |i: usize| -> Vec<Scalar> {
                (0..=3u32)
                    .map(|j| br.term(i, j).iter().map(|(e, c)| &c * &u.pow(e).unwrap()).sum())
                    .collect()
            };
            let (x, y, z) = (at_u(0), at_u(1), at_u(2));
            for k in 0..=3usize {
                let mut acc: Scalar = (0..=k).map(|i| &x[i] * &y[k - i]).sum();
                if k > 0 {
                    acc = &acc + &z[k - 1];
                }
                ensure(acc.is_zero(), || format!("trial {trial}: t^{k} coefficient {acc} at u = {u}"))?;
            }
        }
        ensure(m.smoothes_node == !r0.is_zero(), || format!("trial {trial}: criterion mismatch"))?;
        if m.smoothes_node {
            smooth += 1;
        } else {
            rigid += 1;
        }
    }
    Ok(format!("40 random lifts satisfy XY + tZ to order 3; {smooth} smoothing, {rigid} with r₀ = 0"))
}

struct Constructions {
    f: QuarticForm,
    section: CurveGraph,
    base: CurveGraph,
    rational: Vec<CurveGraph>,
    genus: Vec<CurveGraph>,
    auxiliaries: Vec<CurveGraph>,
    graft_secs: f64,
}

fn constructions() -> Result<Constructions, String> {
    let f = design_f(&symmetric_prescription()).map_err(|e| e.to_string())?.f;
    let rs = GraftSetup::find(&f, GraftKind::Rational).map_err(|e| e.to_string())?;
    let gs = GraftSetup::find(&f, GraftKind::Genus).map_err(|e| e.to_string())?;
    let base = rs.base().map_err(|e| e.to_string())?;
    let t = Instant::now();
    let rational = (1..=5).map(|r| rs.graft(r)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let genus = (1..=3).map(|r| gs.graft(r)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let graft_secs = t.elapsed().as_secs_f64();
    let auxiliaries = vec![
        rs.recipe(2).map_err(|e| e.to_string())?.auxiliary,
        gs.recipe(2).map_err(|e| e.to_string())?.auxiliary,
    ];
    let section = hyperplane_section_unmarked(&Hyperplane::from_ints([1, 3, 7, 11])).map_err(|e| e.to_string())?;
    Ok(Constructions {
        f,
        section,
        base,
        rational,
        genus,
        auxiliaries,
        graft_secs,
    })
}

fn criterion_7() -> Outcome {
    let c = constructions()?;
    let mut all: Vec<(String, &CurveGraph)> = vec![("generic section".into(), &c.section), ("ψ₀".into(), &c.base)];
    all.extend(c.rational.iter().enumerate().map(|(i, g)| (format!("D₀,{}", i + 1), g)));
    all.extend(c.genus.iter().enumerate().map(|(i, g)| (format!("genus {} graft", i + 1), g)));
    for (name, g) in &all {
        let d = dual_obstruction_dim(g).map_err(|e| format!("{name}: {e}"))?.dimension;
        ensure(d == 1, || format!("{name}: dimension {d}"))?;
    }
    Ok(format!("dimension 1 for {} curves", all.len()))
}

fn criterion_8() -> Outcome {
    let c = constructions()?;
    for (i, g) in c.rational.iter().enumerate() {
        let r = i + 1;
        let got = (g.genus().map_err(|e| e.to_string())?, g.components.len(), g.marks.len());
        ensure(got == (0, 4 * r, 4 * r + 2), || format!("r = {r}: (genus, components, marks) = {got:?}"))?;
    }
    for (i, g) in c.genus.iter().enumerate() {
        let gg = g.genus().map_err(|e| e.to_string())?;
        ensure(gg == i as i64 + 1, || format!("genus graft {}: genus {gg}", i + 1))?;
    }
    ensure(c.graft_secs < 1.0, || format!("{:.3}s", c.graft_secs))?;
    Ok(format!("D₀,ᵣ r = 1..5 and genus r = 1..3 counts exact, built in {:.3}s", c.graft_secs))
}

fn criterion_9() -> Outcome {
    let c = constructions()?;
    let h1 = c.base.image[0].hyperplane.clone();
    let nodal = hyperplane_section_unmarked(&h1).map_err(|e| e.to_string())?;
    let pairing: Vec<(usize, usize)> = (0..4).map(|i| (i, i)).collect();
    let same = generator_restriction_compare(&c.base, &nodal, &pairing).map_err(|e| e.to_string())?;
    ensure(same, || "generators differ".into())?;
    Ok("generators of ψ₀ and of the nodal section through its points agree".into())
}

fn criterion_10() -> Outcome {
    let c = constructions()?;
    let mut count = 0;
    let mut check = |name: String, g: &CurveGraph, simply: bool| -> Result<(), String> {
        let r = validate(g, &c.f);
        let ok = r.torically_transverse && if simply { r.simply_pre_smoothable } else { r.pre_smoothable };
        count += 1;
        ensure(ok, || format!("{name}: {:?}", r.violations))
    };
    check("ψ₀".into(), &c.base, true)?;
    for (i, g) in c.rational.iter().enumerate() {
        check(format!("D₀,{}", i + 1), g, true)?;
    }
    for (i, g) in c.genus.iter().enumerate() {
        check(format!("genus {} graft", i + 1), g, false)?;
    }
    for g in &c.auxiliaries {
        check("auxiliary".into(), g, true)?;
    }
    let r = validate(&c.section, &c.f);
    ensure(r.pre_log, || format!("generic section: {:?}", r.violations))?;
    let mut caught = Vec::new();
    for g in [&c.base, &c.rational[2], &c.auxiliaries[0]] {
        for (name, m, ff) in common::mutations(g, &c.f) {
            let r = validate(&m, &ff);
            let hit = r
                .violations
                .iter()
                .any(|v| serde_json::to_value(v).unwrap()["kind"] == name);
            ensure(hit && !r.simply_pre_smoothable, || format!("mutation {name} not caught: {:?}", r.violations))?;
            if !caught.contains(&name) {
                caught.push(name);
            }
        }
    }
    ensure(caught.len() == 9, || format!("catalog covers {} kinds", caught.len()))?;
    Ok(format!("{count} constructed curves valid; {} violation kinds caught on 3 curves", caught.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("singular locus of designed quartics", criterion_1),
        ("symbolic first-order cancellation", criterion_2),
        ("node formulas on the line l", criterion_3),
        ("per-monomial table", criterion_4),
        ("first-order lift relations", criterion_5),
        ("local model and node smoothing", criterion_6),
        ("dual obstruction dimension", criterion_7),
        ("graft invariants", criterion_8),
        ("generator identification", criterion_9),
        ("validity hierarchy and mutations", criterion_10),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("criterion {:>2} PASS  {name} ({secs:.2}s): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
