use super::*;
use crate::characters::RQSpec;
use crate::quantities::{agile_series, rq_series};
use proptest::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d)
}

fn close(a: &Float, b: &Float, digits: i32) -> bool {
    let err = Float::with_val(a.prec(), a - b).abs();
    let scale = Float::with_val(a.prec(), a.abs_ref()).max(&Float::with_val(a.prec(), 1));
    err < scale * Float::with_val(a.prec(), 10).pow(-digits)
}

fn spec(a: i64, b: i64, p: i64) -> RQSpec {
    RQSpec::ints(a, b, p).unwrap()
}

fn r(n: i64) -> Rational {
    Rational::from(n)
}

#[test]
fn elliptic_k_values() {
    let c = ctx(40);
    let k0 = elliptic_k(&c.float(0), &c).unwrap();
    assert!(close(&k0, &(c.pi() / 2u32), 40));
    let s = c.float(2).sqrt().recip();
    let k = elliptic_k(&s, &c).unwrap();
    // MPFR's own AGM and Gamma(1/4)^2 / (4 sqrt pi) as independent oracles.
    let kp = Float::with_val(c.bits(), 1 - Float::with_val(c.bits(), s.square_ref())).sqrt();
    let via_mpfr = c.pi() / (c.float(1).agm(&kp) * 2u32);
    assert!(close(&k, &via_mpfr, 40));
    let g = Float::with_val(c.bits(), 0.25).gamma().square() / (c.pi().sqrt() * 4u32);
    assert!(close(&k, &g, 40));
    assert!(k.to_string_radix(10, Some(16)).starts_with("1.854074677301372"));
    assert!(elliptic_k(&c.float(1), &c).is_err());
}

#[test]
fn agm_converges_quadratically() {
    for d in [20u32, 50, 100, 200] {
        let c = ctx(d);
        let (_, n) = agm(&c.float(1), &c.float(0.5).sqrt(), &c);
        let bound = f64::from(d + c.guard).log2() + 4.0;
        assert!(f64::from(n) <= bound, "{d} digits took {n} steps");
    }
}

#[test]
fn singular_modulus_known_values() {
    let c = ctx(45);
    let e1 = singular_modulus(&r(1), &c).unwrap();
    assert!(close(&e1.k, &c.float(0.5).sqrt(), 42));
    let e4 = singular_modulus(&r(4), &c).unwrap();
    let expected = 3 - c.float(8).sqrt();
    assert!(close(&e4.k, &expected, 42));
    for rr in [Rational::from((1, 10)), r(1), r(3), Rational::from((7, 2)), r(100)] {
        let e = singular_modulus(&rr, &c).unwrap();
        assert!(close(&e.k, &singular_modulus_theta(&rr, &c), 40), "r = {rr}");
        let sum = Float::with_val(c.bits(), e.k.square_ref()) + Float::with_val(c.bits(), e.kp.square_ref());
        assert!(close(&sum, &c.float(1), 40));
        let ratio = Float::with_val(c.bits(), &e.big_kp / &e.big_k);
        assert!(close(&ratio, &Float::with_val(c.bits(), &rr).sqrt(), 40));
    }
    assert!(singular_modulus(&r(0), &c).is_err());
}

#[test]
fn singular_modulus_decreases() {
    let c = ctx(25);
    let mut prev = c.float(1);
    for n in 1..=12 {
        let k = singular_modulus(&Rational::from((n, 3)), &c).unwrap().k;
        assert!(k < prev);
        prev = k;
    }
}

#[test]
fn agile_products() {
    let c = ctx(40);
    let q = c.float(0.1);
    assert!(close(&eval_agile(&r(1), &r(2), &c.float(1e-30), &c).unwrap(), &c.float(1), 28));
    let lhs = eval_agile(&r(1), &r(5), &q, &c).unwrap() * eval_agile(&r(2), &r(5), &q, &c).unwrap();
    let q5 = Float::with_val(c.bits(), (&q).pow(5u32));
    let rhs = eval_euler_f(&q, &c).unwrap() / eval_euler_f(&q5, &c).unwrap();
    assert!(close(&lhs, &rhs, 25));
    // Exact series, evaluated.
    let q = c.float(0.3);
    let s = agile_series(&Rational::from((1, 3)), &Rational::from((5, 2)), &r(250)).unwrap();
    let series = eval_series(&s, &q, &c);
    let direct = eval_agile(&Rational::from((1, 3)), &Rational::from((5, 2)), &q, &c).unwrap();
    assert!(close(&series, &direct, 20));
    assert!(eval_agile(&r(1), &r(2), &c.float(1), &c).is_err());
}

#[test]
fn series_and_products_agree() {
    let c = ctx(30);
    for qv in [0.1, 0.2, 0.3] {
        let q = c.float(qv);
        for (a, b, p) in [(1, 2, 5), (1, 3, 6), (1, 3, 8), (1, 2, 4)] {
            let s = spec(a, b, p);
            let series = eval_series(&rq_series(&s, &r(200)).unwrap(), &q, &c);
            let prod = eval_rq(&s, &q, &c).unwrap();
            assert!(close(&series, &prod, 20), "({a},{b},{p}) at {qv}");
        }
    }
}

#[test]
fn theta_series_matches_product() {
    let c = ctx(40);
    assert_eq!(eval_theta4(&c.float(0), &c.float(0), &c).unwrap(), 1);
    let (y, q) = (c.float(0.3), c.float(0.2));
    let s = eval_theta4(&y, &q, &c).unwrap();
    let p = eval_theta4_product(&y, &q, &c).unwrap();
    assert!(close(&s, &p, 35));
}

#[test]
fn theta_and_cosh_forms_match_products() {
    let c = ctx(40);
    let x = c.float(1);
    let q = (-x.clone()).exp();
    let s = spec(1, 2, 5);
    let prod = eval_rq(&s, &q, &c).unwrap();
    assert!(close(&eval_rq_theta(&s, &x, &c).unwrap(), &prod, 25));
    assert!(close(&eval_rq_exp_sum(&s, &x, &c).unwrap(), &prod, 25));
    let s = RQSpec::new(Rational::from((1, 2)), Rational::from((3, 2)), Rational::from((7, 2))).unwrap();
    let prod = eval_rq(&s, &q, &c).unwrap();
    assert!(close(&eval_rq_theta(&s, &x, &c).unwrap(), &prod, 25));
}

fn pochhammer(a: &Float, step: &Float, c: &PrecisionContext) -> Float {
    let mut acc = c.float(1);
    let mut x = a.clone();
    for _ in 0..2000 {
        acc *= Float::with_val(c.bits(), 1 - &x);
        x *= step;
    }
    acc
}

#[test]
fn continued_fractions_match_products() {
    let c = ctx(40);
    let q = c.float(0.1);
    let rr = eval_cf(&CfKind::Rr, &q, &c).unwrap();
    assert!(close(&rr, &eval_rq(&spec(1, 2, 5), &q, &c).unwrap(), 25));
    let h = eval_cf(&CfKind::Rgg, &q, &c).unwrap();
    assert!(close(&h, &eval_rq(&spec(1, 3, 8), &q, &c).unwrap(), 25));
    let v = eval_cf(&CfKind::Cubic, &q, &c).unwrap();
    assert!(close(&v, &eval_rq(&spec(1, 3, 6), &q, &c).unwrap(), 25));
    // P(a,b,q) against its product definition.
    let (a, b, qq) = (c.float(0.3), c.float(0.2), c.float(0.4));
    let cf = eval_cf(&CfKind::GeneralP { a: a.clone(), b: b.clone() }, &qq, &c).unwrap();
    let q4 = Float::with_val(c.bits(), (&qq).pow(4u32));
    let q3 = Float::with_val(c.bits(), (&qq).pow(3u32));
    let a2 = Float::with_val(c.bits(), a.square_ref());
    let b2 = Float::with_val(c.bits(), b.square_ref());
    let num = pochhammer(&Float::with_val(c.bits(), &a2 * &q3), &q4, &c)
        * pochhammer(&Float::with_val(c.bits(), &b2 * &q3), &q4, &c);
    let den = pochhammer(&Float::with_val(c.bits(), &a2 * &qq), &q4, &c)
        * pochhammer(&Float::with_val(c.bits(), &b2 * &qq), &q4, &c);
    assert!(close(&cf, &(num / den), 30));
    let reports = check_continued_fractions(&r(1), &r(2), &c.float(0.2), &c).unwrap();
    assert!(reports.iter().all(CheckReport::passed), "{reports:?}");
}

#[test]
fn root_of_unity_product() {
    let c = ctx(30);
    let rep = check_root_of_unity_product(&spec(1, 2, 5), &c.float(0.15), &c).unwrap();
    assert!(rep.passed(), "{rep:?}");
    let rep = check_root_of_unity_product(&spec(2, 3, 7), &c.float(0.3), &c).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert!(check_root_of_unity_product(&spec(1, 3, 8), &c.float(0.15), &c).is_err());
}

#[test]
fn recognition() {
    let c = ctx(40);
    let got = recognize_algebraic(&c.float(0.5), 3, &c).unwrap().unwrap();
    assert_eq!(got.polynomial, "2*x - 1");
    let x = c.float(2).sqrt() - 1u32;
    let got = recognize_algebraic(&x, 3, &c).unwrap().unwrap();
    assert_eq!(got.polynomial, "x^2 + 2*x - 1");
    let pi = Float::with_val(c.bits(), Constant::Pi);
    assert!(recognize_algebraic(&pi, 3, &c).unwrap().is_none());
    assert!(matches!(recognize_algebraic(&pi, 5, &c), Err(crate::Error::InsufficientPrecision(_))));
    // H(e^(-pi)) = -t + sqrt(t^2+1) with t = 1 + sqrt 2 has minimal polynomial x^4 + 4x^3 - 6x^2 - 4x + 1.
    let c = ctx(60);
    let h = eval_rq(&spec(1, 3, 8), &nome(&r(1), &c), &c).unwrap();
    let got = recognize_algebraic(&h, 4, &c).unwrap().unwrap();
    assert_eq!(got.integer_coeffs(), [1, -4, -6, 4, 1].map(Integer::from));
}

#[test]
fn real_roots_of_integer_polynomials() {
    let c = ctx(30);
    let roots = real_roots(&[-2, 0, 1].map(Integer::from), &c);
    assert_eq!(roots.len(), 2);
    assert!(close(&roots[1], &c.float(2).sqrt(), 28));
    let roots = real_roots(&[6, -5, 1].map(Integer::from), &c);
    assert!(close(&roots[0], &c.float(2), 28) && close(&roots[1], &c.float(3), 28));
    assert!(real_roots(&[1, 0, 1].map(Integer::from), &c).is_empty());
}

fn by_id<'a>(reps: &'a [CheckReport], id: &str) -> &'a CheckReport {
    reps.iter().find(|x| x.check_id == id).unwrap()
}

#[test]
fn rgg_and_cubic_derivatives() {
    let c = ctx(35);
    for rr in [r(1), r(2)] {
        let reps = check_rgg_derivative(&rr, &c).unwrap();
        assert!(by_id(&reps, "rgg-derivative-corrected").passed(), "{reps:?}");
        assert!(!by_id(&reps, "rgg-derivative-printed").passed());
        assert!(check_rgg_closed_form(&rr, &c).unwrap()[0].passed());
        let reps = check_cubic_derivative(&rr, &c).unwrap();
        assert!(by_id(&reps, "cubic-derivative-corrected").passed(), "{reps:?}");
    }
    // The sqrt(r) factor is invisible at r = 1 and wrong elsewhere.
    assert!(by_id(&check_cubic_derivative(&r(1), &c).unwrap(), "cubic-derivative-printed").passed());
    assert!(!by_id(&check_cubic_derivative(&r(2), &c).unwrap(), "cubic-derivative-printed").passed());
}

#[test]
fn euler_f_and_n_derivative() {
    let c = ctx(35);
    for rr in [r(1), r(2), Rational::from((1, 3))] {
        assert!(check_euler_f_elliptic(&rr, &c).unwrap()[0].passed());
    }
    let reps = check_n_derivative(&spec(1, 2, 5), &r(1), &c).unwrap();
    assert!(reps[0].passed(), "{reps:?}");
}

#[test]
fn derivative_examples() {
    let c = ctx(35);
    let reps = check_derivative_examples(&c).unwrap();
    assert!(by_id(&reps, "derivative-example-r124").passed());
    assert!(by_id(&reps, "derivative-example-rr").passed());
    assert!(by_id(&reps, "derivative-example-rgg-r4").passed());
    assert!(!by_id(&reps, "derivative-example-rgg-r1").passed());
}

#[test]
fn radical_and_modulus_relations() {
    let c = ctx(40);
    let reps = check_rgg_radical(&c).unwrap();
    assert!(!by_id(&reps, "rgg-radical-printed").passed());
    assert!(by_id(&reps, "rgg-radical-corrected").passed());
    for n in 1..=3 {
        let reps = check_modulus_relations(&r(n), &c).unwrap();
        assert!(by_id(&reps, "modulus-from-cubic").passed());
        assert!(by_id(&reps, "modulus-from-rgg-corrected").passed());
        assert!(!by_id(&reps, "modulus-from-rgg-printed").passed());
    }
    assert!(check_r124_closed_form(&r(1), &c).unwrap()[0].passed());
}

#[test]
fn agile_probe_finds_weber_values() {
    let c = ctx(130);
    let rep = agile_algebraicity_probe(&r(1), &r(2), &r(1), 12, &c).unwrap();
    assert_eq!(rep.recognition.unwrap().polynomial, "x^4 - 2");
}

#[test]
fn doubling_digits_keeps_leading_digits() {
    let c = ctx(30);
    let d = c.doubled();
    let a = singular_modulus(&r(2), &c).unwrap().k;
    let b = singular_modulus(&r(2), &d).unwrap().k;
    assert_eq!(decimal(&a, 20), decimal(&b, 20));
    let qa = nome(&r(2), &c);
    let qb = nome(&r(2), &d);
    let x = eval_rq_derivative(&spec(1, 3, 8), &qa, &c).unwrap();
    let y = eval_rq_derivative(&spec(1, 3, 8), &qb, &d).unwrap();
    assert_eq!(decimal(&x, 20), decimal(&y, 20));
}

#[test]
fn reports_serialise_as_decimal_strings() {
    let c = ctx(30);
    let rep = &check_rgg_closed_form(&r(1), &c).unwrap()[0];
    let v = serde_json::to_value(rep).unwrap();
    assert_eq!(v["check_id"], "rgg-closed-form");
    assert_eq!(v["verdict"], "pass");
    assert!(v["lhs"].as_str().unwrap().starts_with("1.98912367379658"));
    assert!(v.get("abs_err_value").is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theta_forms_agree(y in 0.0f64..1.5, q in 0.02f64..0.6) {
        let c = ctx(30);
        let s = eval_theta4(&c.float(y), &c.float(q), &c).unwrap();
        let p = eval_theta4_product(&c.float(y), &c.float(q), &c).unwrap();
        prop_assert!(close(&s, &p, 25));
    }

    #[test]
    fn modulus_identity(n in 1i64..40, d in 1i64..8) {
        let c = ctx(25);
        let e = singular_modulus(&Rational::from((n, d)), &c).unwrap();
        let sum = Float::with_val(c.bits(), e.k.square_ref()) + Float::with_val(c.bits(), e.kp.square_ref());
        prop_assert!(close(&sum, &c.float(1), 24));
    }
}
