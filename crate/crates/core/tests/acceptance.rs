//! Acceptance suite: one PASS/FAIL line per criterion, with indented detail lines.
//! Exits nonzero if any criterion fails.

use rayon::prelude::*;
use rq_core::characters::{
    multiplicative_invariance_violations, tau_relation_scan, verify_tau_relation, RQSpec, TauTable,
};
use rq_core::modeq::linalg::rank_integer;
use rq_core::modeq::{catalogue, mine, verify_relation, BivariatePolynomial, Route, SeriesRecipe, Verdict};
use rq_core::numerics::{
    check_continued_fractions, check_cubic_derivative, check_derivative_examples, check_modulus_relations,
    check_rgg_closed_form, check_rgg_derivative, check_rgg_radical, check_theta_forms, decimal, eval_rq, nome,
    recognize_algebraic, singular_modulus, CheckReport, PrecisionContext,
};
use rq_core::quantities::registry::{self, Standing};
use rq_core::quantities::{m_series, product_over_x, rq_series};
use rq_core::rug::{Float, Integer, Rational};
use rq_core::Result;
use std::time::{Duration, Instant};

struct Outcome {
    pass: bool,
    details: Vec<String>,
}

fn run(n: u32, title: &str, f: impl FnOnce(&mut Vec<String>) -> Result<bool>) -> bool {
    let start = Instant::now();
    let mut details = Vec::new();
    let outcome = match f(&mut details) {
        Ok(pass) => Outcome { pass, details },
        Err(e) => {
            details.push(format!("error: {e}"));
            Outcome { pass: false, details }
        }
    };
    let verdict = if outcome.pass { "PASS" } else { "FAIL" };
    println!("[{verdict}] {n:>2}. {title} ({:.1}s)", start.elapsed().as_secs_f64());
    for d in &outcome.details {
        println!("         {d}");
    }
    outcome.pass
}

fn spec(a: i64, b: i64, p: i64) -> RQSpec {
    RQSpec::ints(a, b, p).expect("valid spec")
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok  "
    } else {
        "FAIL"
    }
}

fn pow10(ctx: &PrecisionContext, e: i64) -> Float {
    ctx.pow10(e)
}

fn mining(d: &mut Vec<String>) -> Result<bool> {
    let ids = [
        "r124-degree-2",
        "r124-degree-3",
        "r124-degree-5",
        "r124-degree-7",
        "r126-degree-2",
        "cubic-degree-5",
        "cubic-degree-7",
        "s12-degree-2",
        "s12-degree-3",
        "s13-degree-2",
        "s13-degree-3",
        "r1310-vs-rr",
    ];
    let mut all = true;
    for id in ids {
        let k = catalogue::find(id).expect("catalogued job");
        let start = Instant::now();
        let report = mine(&k.job)?;
        let took = start.elapsed();
        let want: BivariatePolynomial = k.expected.parse()?;
        let exact = report.polynomials.len() == 1 && report.polynomials[0].polynomial == want.canonical();
        let limits = k.job.order <= 400 && box_size(&k.job.shape) <= 8;
        let ok = exact && report.dropped_candidates.is_empty() && limits && took < Duration::from_secs(120);
        all &= ok;
        d.push(format!(
            "{} {id}: {} at {} order {} ({} relation(s), {:.2}s)",
            mark(ok),
            k.expected,
            k.job.shape,
            k.job.order,
            report.polynomials.len(),
            took.as_secs_f64()
        ));
    }
    Ok(all)
}

fn box_size(s: &rq_core::modeq::Shape) -> u32 {
    match s {
        rq_core::modeq::Shape::Box(n) => *n,
        rq_core::modeq::Shape::Total(n) => *n,
    }
}

fn ints(v: &[(usize, i64)], j_max: usize) -> Vec<Integer> {
    let mut out = vec![Integer::new(); j_max];
    for &(j, c) in v {
        out[j - 1] = Integer::from(c);
    }
    out
}

fn tau_scan_case(
    s: &RQSpec,
    j_max: usize,
    n_max: usize,
    expected: &[(&str, Vec<Integer>)],
    d: &mut Vec<String>,
) -> Result<bool> {
    let start = Instant::now();
    let basis = tau_relation_scan(s, j_max, n_max)?;
    let took = start.elapsed();
    let rows: Vec<Vec<Integer>> = basis.iter().map(|r| r.coeffs.clone()).collect();
    let rank = rank_integer(rows.clone(), j_max);
    let table = TauTable::new(s)?;
    d.push(format!(
        "spec ({s}), J = {j_max}, n_max = {n_max}: {} basis relation(s) in {:.2}s",
        basis.len(),
        took.as_secs_f64()
    ));
    for r in &basis {
        d.push(format!("       basis: {}", r.to_text()));
    }
    let mut all = took < Duration::from_secs(30);
    for (label, v) in expected {
        let mut with = rows.clone();
        with.push(v.clone());
        let in_span = rank_integer(with, j_max) == rank;
        let direct = verify_tau_relation(&table, v, 1, 4 * n_max);
        let ok = in_span && direct.is_none();
        all &= ok;
        let how = match direct {
            None => format!("holds for n <= {}", 4 * n_max),
            Some(n) => format!("fails first at n = {n}"),
        };
        d.push(format!("{} {label}: in scanned span: {in_span}; {how}", mark(ok)));
    }
    Ok(all)
}

fn tau_scans(d: &mut Vec<String>) -> Result<bool> {
    let a = tau_scan_case(
        &spec(1, 4, 17),
        17,
        289,
        &[
            ("-4 tau(n) + 3 tau(4n) + tau(16n)", ints(&[(1, -4), (4, 3), (16, 1)], 17)),
            ("-4 tau(n) + 4 tau(2n) - tau(4n) + tau(8n)", ints(&[(1, -4), (2, 4), (4, -1), (8, 1)], 17)),
        ],
        d,
    )?;
    let b = tau_scan_case(
        &spec(1, 5, 26),
        25,
        676,
        &[
            ("-tau(n) + tau(3n) - tau(5n) + tau(15n)", ints(&[(1, -1), (3, 1), (5, -1), (15, 1)], 25)),
            (
                "-26/77 tau(n) - 17/7 tau(3n) + 17/7 tau(7n) - 51/77 tau(11n) + tau(17n)",
                ints(&[(1, -26), (3, -187), (7, 187), (11, -51), (17, 77)], 25),
            ),
            (
                "-134/77 tau(n) + 19/7 tau(3n) - 19/7 tau(7n) + 57/77 tau(11n) + tau(19n)",
                ints(&[(1, -134), (3, 209), (7, -209), (11, 57), (19, 77)], 25),
            ),
            ("-34/11 tau(n) + 23/11 tau(11n) + tau(23n)", ints(&[(1, -34), (11, 23), (23, 11)], 25)),
            ("-5 tau(n) + 4 tau(5n) + tau(25n)", ints(&[(1, -5), (5, 4), (25, 1)], 25)),
        ],
        d,
    )?;
    Ok(a && b)
}

fn product_identity(d: &mut Vec<String>) -> Result<bool> {
    let order = Rational::from(300);
    let mut specs = Vec::new();
    let mut skipped = 0;
    for p in 2..=12i64 {
        for a in 1..p {
            for b in 1..p {
                if a == b {
                    continue;
                }
                if (a + b) % p == 0 {
                    skipped += 1;
                    continue;
                }
                specs.push(spec(a, b, p));
            }
        }
    }
    let bad: Vec<String> = specs
        .par_iter()
        .filter_map(|s| {
            let ok = match (rq_series(s, &order), product_over_x(s, &order)) {
                (Ok(x), Ok(y)) => x == y && x.order() == order,
                _ => false,
            };
            (!ok).then(|| s.to_string())
        })
        .collect();
    d.push(format!(
        "{} specs with p <= 12 compared exactly to order {order}; {skipped} skipped with a + b = p (the quotient is q^Q)",
        specs.len()
    ));
    if !bad.is_empty() {
        d.push(format!("mismatches: {}", bad.join("; ")));
    }
    Ok(bad.is_empty())
}

fn prime_invariance(d: &mut Vec<String>) -> Result<bool> {
    let mut all = true;
    for (a, b, p) in [(1, 2, 5), (1, 3, 7), (1, 4, 17), (2, 3, 11)] {
        let v = multiplicative_invariance_violations(&spec(a, b, p), p as usize, 5000)?;
        all &= v.is_empty();
        d.push(format!(
            "{} ({a},{b},{p}): tau({p}n) = tau(n) for n <= 5000; {} violation(s)",
            mark(v.is_empty()),
            v.len()
        ));
    }
    Ok(all)
}

fn m_doubling(d: &mut Vec<String>) -> Result<bool> {
    let s = spec(1, 3, 8);
    let m = m_series(&s, 200)?;
    let m2 = m_series(&s, 100)?.substitute_power(&Rational::from(2))?;
    let res = &(&m2.scale(&Rational::from(2)) - &m) - &m.alternate()?;
    let ok = res.is_zero() && res.order() >= 200;
    d.push(format!(
        "2M(q^2) - M(q) - M(-q) for (1,3,8): zero to order {} (confirms the conjectured relation)",
        res.order()
    ));
    Ok(ok)
}

fn n_modular(d: &mut Vec<String>) -> Result<bool> {
    let s = spec(1, 2, 5);
    let mut all = true;
    for (power, order, text) in [
        (2i64, 80i64, "5*u^6 - u^2*v^2 - 125*u^4*v^4 + 5*v^6"),
        (3, 120, "125*u^12 + u^3*v^3 + 1125*u^9*v^3 + 1125*u^3*v^9 + 1953125*u^9*v^9 - 125*v^12"),
    ] {
        let poly: BivariatePolynomial = text.parse()?;
        let order = Rational::from(order);
        let deg = Rational::from(poly.total_degree());
        let margin = Rational::from((1 + power, 6)) * deg;
        let u = SeriesRecipe::n(s.clone(), Rational::from(1)).build_with_margin(&order, &margin, Route::Primary)?;
        let v = SeriesRecipe::n(s.clone(), Rational::from(power)).build_with_margin(&order, &margin, Route::Primary)?;
        let verdict = verify_relation(&poly, &u, &v, &order)?;
        let ok = verdict.holds();
        all &= ok;
        let how = match verdict {
            Verdict::HoldsToOrder(o) => format!("residual vanishes to order {o}"),
            Verdict::FailsAt(e) => format!("residual nonzero at q^{e}"),
        };
        d.push(format!("{} u = N(q), v = N(q^{power}): {text}: {how}", mark(ok)));
    }
    Ok(all)
}

fn abs_within(r: &CheckReport, tol: &Float) -> bool {
    r.abs_err_value < *tol
}

fn rel_within(r: &CheckReport, tol: &Float) -> bool {
    r.rel_err_value < *tol
}

fn line(r: &CheckReport, ok: bool, what: &str) -> String {
    let at =
        r.r.as_deref()
            .map(|r| format!("r = {r}"))
            .or_else(|| r.q.as_ref().map(|q| format!("q = {}", short(q))))
            .unwrap_or_default();
    format!("{} {} {at}: {what} {} (lhs {}, rhs {})", mark(ok), r.check_id, r.abs_err, short(&r.lhs), short(&r.rhs))
}

fn short(s: &str) -> String {
    match s.split_once('e') {
        Some((m, e)) => format!("{}e{e}", m.chars().take(22).collect::<String>()),
        None => s.chars().take(22).collect(),
    }
}

fn numeric_coherence(d: &mut Vec<String>) -> Result<bool> {
    let ctx = PrecisionContext::new(60);
    let tol = pow10(&ctx, -45);
    let mut all = true;
    for (a, b, p) in [(1, 2, 5), (1, 3, 8)] {
        for r in [1, 2] {
            for rep in check_theta_forms(&spec(a, b, p), &Rational::from(r), &ctx)? {
                let ok = abs_within(&rep, &tol);
                all &= ok;
                d.push(line(&rep, ok, &format!("({a},{b},{p}) |diff| =")));
            }
        }
    }
    let q = Float::with_val(ctx.bits(), Float::parse("0.2").expect("decimal"));
    let tol = pow10(&ctx, -25);
    for rep in check_continued_fractions(&Rational::from(1), &Rational::from(2), &q, &ctx)? {
        let ok = abs_within(&rep, &tol);
        all &= ok;
        d.push(line(&rep, ok, "|diff| ="));
    }
    Ok(all)
}

fn elliptic(d: &mut Vec<String>) -> Result<bool> {
    let ctx = PrecisionContext::new(60);
    let mut all = true;

    let e = singular_modulus(&Rational::from(1), &ctx)?;
    let half = ctx.float(2).sqrt().recip();
    let err = Float::with_val(ctx.bits(), &e.k - &half).abs();
    let ok = err < pow10(&ctx, -40);
    all &= ok;
    d.push(format!("{} k_1 = 2^(-1/2): |diff| = {}", mark(ok), decimal(&err, 5)));

    for rep in check_rgg_closed_form(&Rational::from(1), &ctx)? {
        let ok = abs_within(&rep, &pow10(&ctx, -30));
        all &= ok;
        d.push(line(&rep, ok, "H = -t + sqrt(t^2+1), |diff| ="));
    }

    let tol = pow10(&ctx, -25);
    for r in [1, 2, 3] {
        for rep in check_modulus_relations(&Rational::from(r), &ctx)? {
            let ok = abs_within(&rep, &tol);
            let what = match rep.check_id.as_str() {
                "modulus-from-rgg-printed" => "k^2 = 16H^2((1-H^2)/(1+H^2))^2 as printed, |diff| =",
                "modulus-from-rgg-corrected" => "k^2 = 16H^2(1-H^2)^2/(1+H^2)^4, |diff| =",
                _ => "k^2 = (1-T)(3+T)^3/((1+T)(3-T)^3), |diff| =",
            };
            // The corrected reading is reported alongside but does not stand in for the printed one.
            if !rep.check_id.ends_with("-corrected") {
                all &= ok;
            }
            d.push(line(&rep, ok, what));
        }
    }

    let tol = pow10(&ctx, -20);
    for r in [1, 2] {
        let r = Rational::from(r);
        for rep in check_rgg_derivative(&r, &ctx)?.into_iter().chain(check_cubic_derivative(&r, &ctx)?) {
            let ok = rel_within(&rep, &tol);
            if !rep.check_id.ends_with("-corrected") {
                all &= ok;
            }
            d.push(line(&rep, ok, &format!("relative error {}, |diff| =", rep.rel_err)));
        }
    }
    d.push("printed forms are the criterion; the -corrected lines are informational".into());
    Ok(all)
}

fn recognition(d: &mut Vec<String>) -> Result<bool> {
    let ctx = PrecisionContext::new(60);
    let mut all = true;
    let mut expect = |label: &str, x: &Float, degree: usize, want: &str, d: &mut Vec<String>| -> Result<()> {
        let rec = recognize_algebraic(x, degree, &ctx)?;
        let got = rec.as_ref().map(|r| r.polynomial.clone()).unwrap_or_else(|| "none".into());
        let ok = got == want;
        all &= ok;
        let res = rec.as_ref().map(|r| r.residual.clone()).unwrap_or_default();
        d.push(format!("{} {label}: {got} (residual {res})", mark(ok)));
        Ok(())
    };
    expect("0.5", &Float::with_val(ctx.bits(), 0.5), 2, "2*x - 1", d)?;
    expect("sqrt 2 - 1", &(ctx.float(2).sqrt() - 1u32), 2, "x^2 + 2*x - 1", d)?;
    let h = eval_rq(&spec(1, 3, 8), &nome(&Rational::from(1), &ctx), &ctx)?;
    expect("H(e^(-pi))", &h, 4, "x^4 + 4*x^3 - 6*x^2 - 4*x + 1", d)?;

    let radical = check_rgg_radical(&ctx)?;
    for rep in &radical {
        d.push(line(rep, rep.passed(), &format!("{} {}, |diff| =", rep.note.as_deref().unwrap_or(""), verdict(rep))));
    }
    let adjudicated = !radical[0].passed() && radical[1].passed();
    all &= adjudicated;
    d.push(format!("{} radical adjudicated: printed form fails, sign-corrected form passes", mark(adjudicated)));

    let ex = check_derivative_examples(&ctx)?;
    let r124 = ex.iter().find(|r| r.check_id == "derivative-example-r124").expect("r124 example");
    d.push(format!(
        "ok   dR(1,2,4)/dq at q = e^(-pi) = {} vs e^pi Gamma(1/4)^4/(64 2^(5/8) pi^3): {}, relative residual {}",
        short(&r124.lhs),
        if r124.passed() { "confirmed" } else { "refuted" },
        r124.rel_err
    ));
    Ok(all)
}

fn verdict(r: &CheckReport) -> &'static str {
    if r.passed() {
        "matches"
    } else {
        "does not match"
    }
}

fn registry_check(d: &mut Vec<String>) -> Result<bool> {
    let order = Rational::from(200);
    let outcomes = registry::verify_all(&order)?;
    let mut all = true;
    for o in &outcomes {
        let ok = match o.standing {
            Standing::Proved => o.verified,
            Standing::Conjectured => o.verified || o.first_failure.is_some(),
        };
        all &= ok;
        let how = match (&o.verified_to, &o.first_failure) {
            (_, Some(f)) => format!("first failure at q^{f}"),
            (Some(v), None) => format!("verified to order {v}"),
            _ => "not verified".into(),
        };
        let standing = match o.standing {
            Standing::Proved => "proved",
            Standing::Conjectured => "conjectured",
        };
        d.push(format!("{} {} [{standing}]: {how}", mark(ok), o.id));
    }
    Ok(all)
}

fn main() {
    let results = [
        run(1, "modular equations mined exactly (box <= 8, order <= 400, < 2 min each)", mining),
        run(2, "tau relations for (1,4,17) and (1,5,26) lie in the scanned span", tau_scans),
        run(3, "R = q^Q prod (1-q^n)^X(n) exactly to order 300 for integer specs with p <= 12", product_identity),
        run(4, "tau(pn) = tau(n) for n <= 5000", prime_invariance),
        run(5, "2M(q^2) = M(q) + M(-q) for (1,3,8) to order 200", m_doubling),
        run(6, "N(q) modular equations of degrees 2 and 3 (orders 80 and 120)", n_modular),
        run(7, "theta, cosh-sum and continued-fraction forms agree with products", numeric_coherence),
        run(8, "elliptic checks: k_1, H closed form, k^2 from H and T, printed derivative formulas", elliptic),
        run(9, "recognition, H(e^(-pi)) radical, dR(1,2,4)/dq example", recognition),
        run(10, "identity registry at order 200", registry_check),
    ];
    let failed = results.iter().filter(|p| !**p).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
