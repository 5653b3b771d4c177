//! Named numeric checks: each compares two independently computed values.

use super::cf::{eval_cf, CfKind};
use super::elliptic::{singular_modulus, singular_modulus_theta, EllipticData};
use super::products::{
    eval_agile, eval_euler_f, eval_normalized_agile, eval_rq, eval_rq_derivative, eval_rq_exp_sum, eval_rq_theta,
    eval_series, nome, order_for,
};
use super::pslq::{real_roots, recognize_algebraic, Recognition};
use super::{decimal, rational_float, PrecisionContext};
use crate::characters::RQSpec;
use crate::error::{Error, Result};
use crate::quantities::n_series;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One comparison `lhs` against `rhs`, serialised with decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    pub digits: u32,
    pub lhs: String,
    pub rhs: String,
    pub abs_err: String,
    pub rel_err: String,
    pub tolerance: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub abs_err_value: Float,
    #[serde(skip)]
    pub rel_err_value: Float,
}

impl CheckReport {
    /// Verdict is `Pass` when the relative error is below `tol`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        id: &str,
        r: Option<&Rational>,
        q: Option<&Float>,
        ctx: &PrecisionContext,
        lhs: &Float,
        rhs: &Float,
        abs_err: Float,
        tol: &Float,
    ) -> CheckReport {
        let scale = Float::with_val(ctx.bits(), lhs.abs_ref()).max(&Float::with_val(ctx.bits(), rhs.abs_ref()));
        let rel = if scale == 0 { abs_err.clone() } else { Float::with_val(ctx.bits(), &abs_err / &scale) };
        CheckReport {
            check_id: id.to_string(),
            r: r.map(Rational::to_string),
            q: q.map(|v| decimal(v, ctx.digits)),
            digits: ctx.digits,
            lhs: decimal(lhs, ctx.digits),
            rhs: decimal(rhs, ctx.digits),
            abs_err: decimal(&abs_err, 5),
            rel_err: decimal(&rel, 5),
            tolerance: decimal(tol, 3),
            verdict: if rel < *tol { Verdict::Pass } else { Verdict::Fail },
            note: None,
            abs_err_value: abs_err,
            rel_err_value: rel,
        }
    }

    fn compare(
        id: &str,
        r: Option<&Rational>,
        q: Option<&Float>,
        ctx: &PrecisionContext,
        lhs: &Float,
        rhs: &Float,
    ) -> CheckReport {
        let err = Float::with_val(ctx.bits(), lhs - rhs).abs();
        CheckReport::new(id, r, q, ctx, lhs, rhs, err, &default_tolerance(ctx))
    }

    pub fn with_note(mut self, note: String) -> CheckReport {
        self.note = Some(note);
        self
    }

    pub fn with_verdict(mut self, v: Verdict) -> CheckReport {
        self.verdict = v;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// `10^(-(digits - 10))`, the error every reported value is meant to respect.
pub fn default_tolerance(ctx: &PrecisionContext) -> Float {
    ctx.pow10(-(i64::from(ctx.digits) - 10))
}

fn spec(a: i64, b: i64, p: i64) -> RQSpec {
    RQSpec::ints(a, b, p).expect("valid fixed spec")
}

fn sqrt(ctx: &PrecisionContext, v: u32) -> Float {
    ctx.float(v).sqrt()
}

/// `k` from the AGM-Newton solver against `theta_2^2/theta_3^2`.
pub fn check_singular_modulus(r: &Rational, ctx: &PrecisionContext) -> Result<Vec<CheckReport>> {
    let e = singular_modulus(r, ctx)?;
    let k = singular_modulus_theta(r, ctx);
    let kk = Float::with_val(ctx.bits(), e.k.square_ref()) + Float::with_val(ctx.bits(), e.kp.square_ref());
    let defining = Float::with_val(ctx.bits(), &e.big_kp / &e.big_k);
    Ok(vec![
        CheckReport::compare("singular-modulus", Some(r), Some(&e.q), ctx, &e.k, &k)
            .with_note(format!("Newton steps: {}", e.newton_steps)),
        CheckReport::compare("singular-modulus-complement", Some(r), Some(&e.q), ctx, &kk, &ctx.float(1)),
        CheckReport::compare(
            "singular-modulus-ratio",
            Some(r),
            Some(&e.q),
            ctx,
            &defining,
            &rational_float(ctx, r).sqrt(),
        ),
    ])
}

/// `t = k/(1-k')`, so that the closed form reads `-t + sqrt(t^2+1)`.
fn rgg_t(e: &EllipticData, ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.bits(), &e.k / Float::with_val(ctx.bits(), 1 - &e.kp))
}

fn rgg_closed(e: &EllipticData, ctx: &PrecisionContext) -> Float {
    let t = rgg_t(e, ctx);
    let s = (Float::with_val(ctx.bits(), t.square_ref()) + 1u32).sqrt();
    s - t
}

/// `H(q) = R(1,3,8;q)` from the products against `-t + sqrt(t^2+1)`.
pub fn check_rgg_closed_form(r: &Rational, ctx: &PrecisionContext) -> Result<Vec<CheckReport>> {
    let e = singular_modulus(r, ctx)?;
    let h = eval_rq(&spec(1, 3, 8), &e.q, ctx)?;
    Ok(vec![CheckReport::compare("rgg-closed-form", Some(r), Some(&e.q), ctx, &h, &rgg_closed(&e, ctx))])
}

/// `dq/dk = q pi^2 / (2 k k'^2 K^2)`.
fn dq_dk(e: &EllipticData, ctx: &PrecisionContext) -> Float {
    let kp2 = Float::with_val(ctx.bits(), e.kp.square_ref());
    let den = Float::with_val(ctx.bits(), &e.k * &kp2) * Float::with_val(ctx.bits(), e.big_k.square_ref()) * 2u32;
    Float::with_val(ctx.bits(), &e.q * ctx.pi().square()) / den
}

/// `dH/dk = sqrt(1-k') / (k' (k sqrt 2 + 2 sqrt(1-k')))`.
fn dh_dk(e: &EllipticData, ctx: &PrecisionContext) -> Float {
    let s = Float::with_val(ctx.bits(), 1 - &e.kp).sqrt();
    let den = Float::with_val(ctx.bits(), &e.k * sqrt(ctx, 2)) + Float::with_val(ctx.bits(), &s * 2u32);
    s / (Float::with_val(ctx.bits(), &e.kp * den))
}

/// `dH/dq` from the differentiated series against the elliptic formula, both as printed
/// (the product of `-dq/dk` and `dH/dk`) and as the chain rule gives it (`dH/dk / dq/dk`).
pub fn check_rgg_derivative(r: &Rational, ctx: &PrecisionContext) -> Result<Vec<CheckReport>> {
    let e = singular_modulus(r, ctx)?;
    let lhs = eval_rq_derivative(&spec(1, 3, 8), &e.q, ctx)?;
    let printed = -dq_dk(&e, ctx) * dh_dk(&e, ctx);
    let corrected = dh_dk(&e, ctx) / dq_dk(&e, ctx);
    Ok(vec![
        CheckReport::compare("rgg-derivative-printed", Some(r), Some(&e.q), ctx, &lhs, &printed)
            .with_note("dH/dq = -q pi^2/(2k(1-k^2)K^2) * dH/dk".into()),
        CheckReport::compare("rgg-derivative-corrected", Some(r), Some(&e.q), ctx, &lhs, &corrected)
            .with_note("dH/dq = dH/dk * 2k k'^2 K^2/(q pi^2)".into()),
    ])
}

/// `V = R(1,3,6;q)`: `V' = 4K^2 k'^2 (V+V^4) / (3 q pi^2 sqrt(1-8V^3))`, with and without
/// the extra `1/sqrt(r)` factor.
pub fn check_cubic_derivative(r: &Rational, ctx: &PrecisionContext) -> Result<Vec<CheckReport>> {
    let e = singular_modulus(r, ctx)?;
    let s = spec(1, 3, 6);
    let lhs = eval_rq_derivative(&s, &e.q, ctx)?;
    let v = eval_rq(&s, &e.q, ctx)?;
    let v3 = Float::with_val(ctx.bits(), (&v).pow(3u32));
    let v4 = Float::with_val(ctx.bits(), &v3 * &v);
    let root = Float::with_val(ctx.bits(), 1 - Float::with_val(ctx.bits(), &v3 * 8u32)).sqrt();
    let num = Float::with_val(ctx.bits(), e.big_k.square_ref())
        * Float::with_val(ctx.bits(), e.kp.square_ref())
        * (v + v4)
        * 4u32;
    let den = Float::with_val(ctx.bits(), &e.q * ctx.pi().square()) * root * 3u32;
    let corrected = num / den;
    let printed = Float::with_val(ctx.bits(), &corrected / rational_float(ctx, r).sqrt());
    Ok(vec![
        CheckReport::compare("cubic-derivative-printed", Some(r), Some(&e.q), ctx, &lhs, &printed)
            .with_note("denominator carries sqrt(r)".into()),
        CheckReport::compare("cubic-derivative-corrected", Some(r), Some(&e.q), ctx, &lhs, &corrected)
            .with_note("denominator without sqrt(r)".into()),
    ])
}

/// `f(-q)^4 = 2^(4/3) pi^(-2) q^(-1/6) k^(1/3) k'^(4/3) K^2`.
fn euler_f4_elliptic(e: &EllipticData, ctx: &PrecisionContext) -> Float {
    let third = |x: &Float, n: u32| (Float::with_val(ctx.bits(), x.ln_ref()) * n / 3u32).exp();
    let two = ctx.float(2);
    let q16 = third(&e.q, 1).sqrt();
    third(&two, 4) / ctx.pi().square() / q16
        * third(&e.k, 1)
        * third(&e.kp, 4)
        * Float::with_val(ctx.bits(), e.big_k.square_ref())
}

/// The elliptic form of `f(-q)^4` against the product.
pub fn check_euler_f_elliptic(r: &Rational, ctx: &PrecisionContext) -> Result<Vec<CheckReport>> {
    let e = singular_modulus(r, ctx)?;
    let lhs = eval_euler_f(&e.q, ctx)?.pow(4u32);
    Ok(vec![CheckReport::compare("euler-f-elliptic", Some(r), Some(&e.q), ctx, &lhs, &euler_f4_elliptic(&e, ctx))])
}

/// `N(q)` summed from its series against `q^(5/6) R'/R / f(-q)^4` with `f(-q)^4` in elliptic form.
pub fn check_n_derivative(s: &RQSpec, r: &Rational, ctx: &PrecisionContext) -> Result<Vec<CheckReport>> {
    let e = singular_modulus(r, ctx)?;
    let order = order_for(&e.q, ctx)?;
    let n = n_series(s, &Rational::from(order))?;
    let lhs = eval_series(&n, &e.q, ctx);
    let d = eval_rq_derivative(s, &e.q, ctx)?;
    let rv = eval_rq(s, &e.q, ctx)?;
    let q56 = (Float::with_val(ctx.bits(), e.q.ln_ref()) * 5u32 / 6u32).exp();
    let rhs = q56 * d / rv / euler_f4_elliptic(&e, ctx);
    Ok(vec![CheckReport::compare("n-derivative", Some(r), Some(&e.q), ctx, &lhs, &rhs)])
}

/// `Gamma(1/4)^4 = 16 pi K(1/sqrt 2)^2`.
fn gamma_quarter_4(ctx: &PrecisionContext) -> Result<Float> {
    let k = super::elliptic_k(&(ctx.float(2).sqrt().recip()), ctx)?;
    Ok(ctx.pi() * k.square() * 16u32)
}

/// Third root in ascending real order of an integer polynomial (ascending coefficients).
fn third_real_root(coeffs: &[i64], ctx: &PrecisionContext) -> Result<Float> {
    let c: Vec<Integer> = coeffs.iter().map(|&v| Integer::from(v)).collect();
    let roots = real_roots(&c, ctx);
    roots.get(2).cloned().ok_or_else(|| Error::InvalidArgument("polynomial has fewer than three real roots".into()))
}

const P1: [i64; 9] = [16, 0, -240, 800, -2900, -6000, -6500, 17500, 625];
const P2: [i64; 9] = [16384, 0, -1720320, -6684672, 143104, -18432, -1664, 0, 1];

/// Closed-form derivative values of `R(1,2,4)`, `R(1,2,5)` and `R(1,3,8)` at singular nomes.
pub fn check_derivative_examples(ctx: &PrecisionContext) -> Result<Vec<CheckReport>> {
    let pi = ctx.pi();
    let g4 = gamma_quarter_4(ctx)?;
    let pi3 = Float::with_val(ctx.bits(), (&pi).pow(3u32));
    let one = Rational::from(1);
    let four = Rational::from(4);
    let q1 = nome(&one, ctx);
    let q4 = nome(&four, ctx);
    let e_pi = pi.clone().exp();
    let e_2pi = Float::with_val(ctx.bits(), &pi * 2u32).exp();
    let mut out = Vec::new();

    let lhs = eval_rq_derivative(&spec(1, 2, 4), &q1, ctx)?;
    let two58 = (ctx.float(2).ln() * 5u32 / 8u32).exp();
    let rhs = Float::with_val(ctx.bits(), &e_pi * &g4) / (two58 * &pi3 * 64u32);
    out.push(CheckReport::compare("derivative-example-r124", Some(&one), Some(&q1), ctx, &lhs, &rhs));

    let lhs = eval_rq_derivative(&spec(1, 2, 5), &q1, ctx)?;
    let p1 = third_real_root(&P1, ctx)?;
    let rhs = Float::with_val(ctx.bits(), &e_pi * &g4) / Float::with_val(ctx.bits(), &pi3 * 16u32) * &p1;
    out.push(
        CheckReport::compare("derivative-example-rr", Some(&one), Some(&q1), ctx, &lhs, &rhs)
            .with_note(format!("third real root {}", decimal(&p1, 20))),
    );

    // Gamma(-1/4)^4 = 256 Gamma(3/4)^4 = 1024 pi^4 / Gamma(1/4)^4.
    let lhs = eval_rq_derivative(&spec(1, 3, 8), &q1, ctx)?;
    let gm4 = Float::with_val(ctx.bits(), (&pi).pow(4u32)) * 1024u32 / &g4;
    let s2 = sqrt(ctx, 2);
    let inner = (ctx.float(5) - Float::with_val(ctx.bits(), &s2 * 7u32) / 2u32).sqrt();
    let alg = Float::with_val(ctx.bits(), &s2 + 2u32) - inner;
    let rhs = alg * &e_pi * &pi * 64u32 / gm4;
    out.push(CheckReport::compare("derivative-example-rgg-r1", Some(&one), Some(&q1), ctx, &lhs, &rhs));

    // Gamma(5/4)^4 = Gamma(1/4)^4 / 256.
    let lhs = eval_rq_derivative(&spec(1, 3, 8), &q4, ctx)?;
    let p2 = third_real_root(&P2, ctx)?;
    let alg = Float::with_val(ctx.bits(), &s2 * 4u32) + 6u32;
    let rhs = alg * &e_2pi * (Float::with_val(ctx.bits(), &g4 / 256u32)) / &pi3 * &p2;
    out.push(
        CheckReport::compare("derivative-example-rgg-r4", Some(&four), Some(&q4), ctx, &lhs, &rhs)
            .with_note(format!("third real root {}", decimal(&p2, 20))),
    );
    Ok(out)
}

/// `H(e^(-pi))` from the products against `sqrt(4 -+ 2 sqrt 2) - 1 - sqrt 2`.
pub fn check_rgg_radical(ctx: &PrecisionContext) -> Result<Vec<CheckReport>> {
    let one = Rational::from(1);
    let q = nome(&one, ctx);
    let h = eval_rq(&spec(1, 3, 8), &q, ctx)?;
    let s2 = sqrt(ctx, 2);
    let base = Float::with_val(ctx.bits(), &s2 + 1u32);
    let printed = (ctx.float(4) - Float::with_val(ctx.bits(), &s2 * 2u32)).sqrt() - &base;
    let corrected = (ctx.float(4) + Float::with_val(ctx.bits(), &s2 * 2u32)).sqrt() - &base;
    Ok(vec![
        CheckReport::compare("rgg-radical-printed", Some(&one), Some(&q), ctx, &h, &printed)
            .with_note("sqrt(4 - 2 sqrt 2) - 1 - sqrt 2".into()),
        CheckReport::compare("rgg-radical-corrected", Some(&one), Some(&q), ctx, &h, &corrected)
            .with_note("sqrt(4 + 2 sqrt 2) - 1 - sqrt 2".into()),
    ])
}

/// `k^2` from the solver against `H` and `V` expressions:
/// `16 H^2 ((1-H^2)/(1+H^2))^2` as printed, `16 H^2 (1-H^2)^2/(1+H^2)^4`, and
/// `(1-T)(3+T)^3/((1+T)(3-T)^3)` with `T = sqrt(1 - 8V^3)`.
pub fn check_modulus_relations(r: &Rational, ctx: &PrecisionContext) -> Result<Vec<CheckReport>> {
    let e = singular_modulus(r, ctx)?;
    let k2 = Float::with_val(ctx.bits(), e.k.square_ref());
    let h = eval_rq(&spec(1, 3, 8), &e.q, ctx)?;
    let v = eval_rq(&spec(1, 3, 6), &e.q, ctx)?;
    let h2 = Float::with_val(ctx.bits(), h.square_ref());
    let minus = Float::with_val(ctx.bits(), 1 - &h2);
    let plus = Float::with_val(ctx.bits(), 1 + &h2);
    let printed = Float::with_val(ctx.bits(), &h2 * 16u32) * Float::with_val(ctx.bits(), &minus / &plus).square();
    let corrected = Float::with_val(ctx.bits(), &h2 * 16u32) * minus.square() / plus.pow(4u32);
    let t = Float::with_val(ctx.bits(), 1 - Float::with_val(ctx.bits(), (&v).pow(3u32)) * 8u32).sqrt();
    let cubic = Float::with_val(ctx.bits(), 1 - &t) * Float::with_val(ctx.bits(), 3 + &t).pow(3u32)
        / (Float::with_val(ctx.bits(), 1 + &t) * Float::with_val(ctx.bits(), 3 - &t).pow(3u32));
    Ok(vec![
        CheckReport::compare("modulus-from-rgg-printed", Some(r), Some(&e.q), ctx, &k2, &printed),
        CheckReport::compare("modulus-from-rgg-corrected", Some(r), Some(&e.q), ctx, &k2, &corrected),
        CheckReport::compare("modulus-from-cubic", Some(r), Some(&e.q), ctx, &k2, &cubic),
    ])
}

/// `R(1,2,4;q^4)` against `sqrt((1 - k'^2 + 2(sqrt(1+k') - sqrt 2) t1) / (2(1-k')^2))`,
/// `t1 = sqrt(3k' + k'^2 + 2 sqrt 2 k' sqrt(1+k'))`.
pub fn check_r124_closed_form(r: &Rational, ctx: &PrecisionContext) -> Result<Vec<CheckReport>> {
    let e = singular_modulus(r, ctx)?;
    let q4 = Float::with_val(ctx.bits(), (&e.q).pow(4u32));
    let lhs = eval_rq(&spec(1, 2, 4), &q4, ctx)?;
    let kp = &e.kp;
    let kp2 = Float::with_val(ctx.bits(), kp.square_ref());
    let s2 = sqrt(ctx, 2);
    let s1k = Float::with_val(ctx.bits(), 1 + kp).sqrt();
    let t1 =
        (Float::with_val(ctx.bits(), kp * 3u32) + &kp2 + Float::with_val(ctx.bits(), &s2 * 2u32) * kp * &s1k).sqrt();
    let num = Float::with_val(ctx.bits(), 1 - &kp2) + (s1k - &s2) * t1 * 2u32;
    let den = Float::with_val(ctx.bits(), 1 - kp).square() * 2u32;
    let rhs = (num / den).sqrt();
    Ok(vec![CheckReport::compare("r124-closed-form", Some(r), Some(&q4), ctx, &lhs, &rhs)])
}

/// Theta-quotient and cosh-sum forms of `R(a,b,p;e^(-x))` against the products, at `x = pi sqrt(r)`.
pub fn check_theta_forms(s: &RQSpec, r: &Rational, ctx: &PrecisionContext) -> Result<Vec<CheckReport>> {
    let x = ctx.pi() * rational_float(ctx, r).sqrt();
    let q = (-x.clone()).exp();
    let prod = eval_rq(s, &q, ctx)?;
    let theta = eval_rq_theta(s, &x, ctx)?;
    let cosh = eval_rq_exp_sum(s, &x, ctx)?;
    Ok(vec![
        CheckReport::compare("theta-form", Some(r), Some(&q), ctx, &theta, &prod).with_note(format!("spec {s}")),
        CheckReport::compare("cosh-sum-form", Some(r), Some(&q), ctx, &cosh, &prod).with_note(format!("spec {s}")),
    ])
}

/// Continued fractions against products at real `q`.
pub fn check_continued_fractions(
    big_a: &Rational,
    big_b: &Rational,
    q: &Float,
    ctx: &PrecisionContext,
) -> Result<Vec<CheckReport>> {
    let p = Rational::from(big_a + big_b) * 4u32;
    let a = Rational::from(big_a * 2u32) + Rational::from(&p * 3u32) / 4u32;
    let b = Rational::from(big_b * 2u32) + Rational::from(&p / 4u32);
    let quotient = eval_cf(&CfKind::Quotient { big_a: big_a.clone(), big_b: big_b.clone() }, q, ctx)?;
    let star = eval_agile(&a, &p, q, ctx)? / eval_agile(&b, &p, q, ctx)?;
    let mut out = vec![CheckReport::compare("cf-quotient", None, Some(q), ctx, &quotient, &star)
        .with_note(format!("A = {big_a}, B = {big_b}; a = {a}, b = {b}, p = {p}"))];
    for (id, kind, s) in [
        ("cf-rr", CfKind::Rr, spec(1, 2, 5)),
        ("cf-rgg", CfKind::Rgg, spec(1, 3, 8)),
        ("cf-cubic", CfKind::Cubic, spec(1, 3, 6)),
    ] {
        let cf = eval_cf(&kind, q, ctx)?;
        out.push(CheckReport::compare(id, None, Some(q), ctx, &cf, &eval_rq(&s, q, ctx)?));
    }
    Ok(out)
}

/// Integer-relation search on the normalised agile value at `q = e^(-pi sqrt r)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub check_id: String,
    pub a: String,
    pub p: String,
    pub r: String,
    pub digits: u32,
    pub max_degree: usize,
    pub value: String,
    pub recognition: Option<Recognition>,
}

/// Looks for a polynomial of degree at most `max_degree` annihilating `q^w [a,p;q]`.
pub fn agile_algebraicity_probe(
    a: &Rational,
    p: &Rational,
    r: &Rational,
    max_degree: usize,
    ctx: &PrecisionContext,
) -> Result<ProbeReport> {
    let q = nome(r, ctx);
    let x = eval_normalized_agile(a, p, &q, ctx)?;
    let recognition = recognize_algebraic(&x, max_degree, ctx)?;
    Ok(ProbeReport {
        check_id: "agile-algebraicity".into(),
        a: a.to_string(),
        p: p.to_string(),
        r: r.to_string(),
        digits: ctx.digits,
        max_degree,
        value: decimal(&x, ctx.digits),
        recognition,
    })
}

/// Check identifiers accepted by [`run_check`].
pub const CHECK_IDS: &[&str] = &[
    "singular-modulus",
    "rgg-closed-form",
    "rgg-derivative",
    "cubic-derivative",
    "euler-f-elliptic",
    "n-derivative",
    "derivative-examples",
    "rgg-radical",
    "modulus-relations",
    "r124-closed-form",
    "theta-forms",
    "continued-fractions",
    "root-of-unity-product",
];

/// Dispatches a named check. `spec` defaults to `(1,2,5)` where one is needed; `q` is used by
/// the checks that run at a plain nome rather than at `e^(-pi sqrt r)`.
pub fn run_check(
    id: &str,
    r: &Rational,
    s: Option<&RQSpec>,
    q: &Float,
    ctx: &PrecisionContext,
) -> Result<Vec<CheckReport>> {
    let default = spec(1, 2, 5);
    let s = s.unwrap_or(&default);
    match id {
        "singular-modulus" => check_singular_modulus(r, ctx),
        "rgg-closed-form" => check_rgg_closed_form(r, ctx),
        "rgg-derivative" => check_rgg_derivative(r, ctx),
        "cubic-derivative" => check_cubic_derivative(r, ctx),
        "euler-f-elliptic" => check_euler_f_elliptic(r, ctx),
        "n-derivative" => check_n_derivative(s, r, ctx),
        "derivative-examples" => check_derivative_examples(ctx),
        "rgg-radical" => check_rgg_radical(ctx),
        "modulus-relations" => check_modulus_relations(r, ctx),
        "r124-closed-form" => check_r124_closed_form(r, ctx),
        "theta-forms" => check_theta_forms(s, r, ctx),
        "continued-fractions" => check_continued_fractions(&Rational::from(1), &Rational::from(2), q, ctx),
        "root-of-unity-product" => Ok(vec![super::complex::check_root_of_unity_product(s, q, ctx)?]),
        _ => Err(Error::InvalidArgument(format!("unknown check '{id}'; known: {}", CHECK_IDS.join(", ")))),
    }
}
