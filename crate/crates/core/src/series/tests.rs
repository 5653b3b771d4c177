use super::*;
use proptest::prelude::*;

fn r(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn ri(n: i64) -> Rational {
    Rational::from(n)
}

/// Geometric series 1/(1-q) written out term by term.
fn geometric(order: i64) -> FormalSeries {
    let terms: Vec<_> = (0..order).map(|k| (ri(1), ri(k))).collect();
    FormalSeries::make_series(&terms, &ri(order)).unwrap()
}

#[test]
fn make_series_basic_lattice() {
    let s = FormalSeries::make_series(&[(ri(1), ri(0)), (ri(-1), ri(1))], &ri(10)).unwrap();
    assert_eq!(s.denom(), 1);
    assert_eq!(s.order(), 10);
    assert_eq!(s.coeff_int(1).unwrap(), -1);
    assert_eq!(s.coeff_int(9).unwrap(), 0);
    assert!(matches!(s.coeff_int(10), Err(Error::BeyondTruncation { .. })));
}

#[test]
fn make_series_rejects_bad_input() {
    let dup = FormalSeries::make_series(&[(ri(1), ri(1)), (ri(2), ri(1))], &ri(5));
    assert!(matches!(dup, Err(Error::DuplicateExponent(_))));
    let beyond = FormalSeries::make_series(&[(ri(1), ri(5))], &ri(5));
    assert!(matches!(beyond, Err(Error::TermBeyondOrder { .. })));
}

#[test]
fn product_with_geometric_series_is_one() {
    let a = FormalSeries::make_series(&[(ri(1), ri(0)), (ri(-1), ri(1))], &ri(10)).unwrap();
    let p = a.mul(&geometric(10));
    assert_eq!(p, FormalSeries::one(&ri(10)).unwrap());
}

#[test]
fn product_truncation_rule_on_mixed_lattices() {
    let a = FormalSeries::monomial(ri(1), r(1, 2), &r(11, 2)).unwrap();
    let b = FormalSeries::monomial(ri(1), r(1, 3), &r(13, 3)).unwrap();
    let p = a.mul(&b);
    assert_eq!(p.valuation().unwrap(), r(5, 6));
    assert_eq!(p.order(), r(29, 6));
    assert_eq!(p.denom(), 6);
}

#[test]
fn sum_truncates_to_smaller_order() {
    let a = FormalSeries::one(&ri(10)).unwrap();
    let b = FormalSeries::monomial(ri(1), r(1, 2), &ri(3)).unwrap();
    let s = a.add(&b);
    assert_eq!(s.order(), 3);
    assert_eq!(s.coeff(&r(1, 2)).unwrap(), 1);
}

#[test]
fn substitute_power_examples() {
    let a = FormalSeries::make_series(&[(ri(1), ri(0)), (ri(-1), ri(1))], &ri(10)).unwrap();
    let b = a.substitute_power(&ri(2)).unwrap();
    let want = FormalSeries::make_series(&[(ri(1), ri(0)), (ri(-1), ri(2))], &ri(20)).unwrap();
    assert_eq!(b, want);

    let c = FormalSeries::make_series(&[(ri(1), r(1, 5)), (ri(-1), r(6, 5))], &r(31, 5)).unwrap();
    let d = c.substitute_power(&r(1, 2)).unwrap();
    assert_eq!(d.denom(), 10);
    assert_eq!(d.coeff(&r(1, 10)).unwrap(), 1);
    assert_eq!(d.coeff(&r(6, 10)).unwrap(), -1);
    assert_eq!(d.order(), r(31, 10));
}

#[test]
fn q_derivative_scales_by_exponent() {
    let a = FormalSeries::monomial(ri(1), r(1, 5), &ri(3)).unwrap();
    let d = a.q_derivative();
    assert_eq!(d.coeff(&r(1, 5)).unwrap(), r(1, 5));
    let z = FormalSeries::one(&ri(7)).unwrap().q_derivative();
    assert!(z.is_zero());
    assert_eq!(z.order(), 7);
}

#[test]
fn division_by_zero_series_fails() {
    let a = FormalSeries::one(&ri(5)).unwrap();
    let z = FormalSeries::zero(&ri(5)).unwrap();
    assert!(matches!(a.div(&z), Err(Error::NotInvertible(_))));
    assert!(z.pow_int(-1).is_err());
}

#[test]
fn pentagonal_matches_product() {
    assert_eq!(euler_f(300), euler_f_product(300));
}

#[test]
fn euler_f_prefix() {
    let f = euler_f(16);
    let want = [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1];
    for (n, w) in want.iter().enumerate() {
        assert_eq!(f.coeff_int(n as i64).unwrap(), *w, "n={n}");
    }
}

#[test]
fn sigma_prefix() {
    let s = sigma1_series(8);
    let want = [0, 1, 3, 4, 7, 6, 12, 8];
    for (n, w) in want.iter().enumerate() {
        assert_eq!(s.coeff_int(n as i64).unwrap(), *w);
    }
}

#[test]
fn exp_log_round_trip() {
    let f = euler_f(60);
    let l = f.log().unwrap();
    assert_eq!(l.exp().unwrap(), f);
    // log f(-q) = -sum sigma(n)/n q^n
    for n in 1..60 {
        let want = Rational::from((-(sigma_naive(n) as i64), n as i64));
        assert_eq!(l.coeff_int(n as i64).unwrap(), want);
    }
}

fn sigma_naive(n: u64) -> u64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).sum()
}

#[test]
fn alternate_and_section() {
    let g = geometric(12);
    let alt = g.alternate().unwrap();
    assert_eq!(alt.coeff_int(3).unwrap(), -1);
    let even = g.add(&alt).scale(&r(1, 2));
    assert_eq!(even, g.section(2).unwrap());
    let frac = FormalSeries::monomial(ri(1), r(1, 2), &ri(3)).unwrap();
    assert!(frac.alternate().is_err());
}

#[test]
fn text_form_golden() {
    assert_eq!(euler_f(8).to_string(), "1 - q - q^2 + q^5 + q^7 + O(q^8)");
    let c = FormalSeries::make_series(&[(ri(1), r(1, 5)), (ri(-3), r(6, 5)), (r(1, 2), r(8, 5))], &r(11, 5)).unwrap();
    assert_eq!(c.to_string(), "q^(1/5) * (1 - 3*q + 1/2*q^(7/5)) + O(q^(11/5))");
    assert_eq!(FormalSeries::zero(&ri(4)).unwrap().to_string(), "O(q^4)");
}

fn arb_series() -> impl Strategy<Value = FormalSeries> {
    (1u64..4, -3i64..3, prop::collection::vec(-5i64..6, 1..12)).prop_map(|(d, lead, cs)| {
        let n = cs.len() as i64;
        let coeffs = cs.into_iter().map(Rational::from).collect();
        FormalSeries::from_parts(d, lead, coeffs, lead + n)
    })
}

fn arb_unit() -> impl Strategy<Value = FormalSeries> {
    (1u64..4, -2i64..3, prop::collection::vec(-4i64..5, 1..10), prop_oneof![Just(1i64), Just(-1), Just(2), Just(3)])
        .prop_map(|(d, lead, cs, c0)| {
            let n = cs.len() as i64 + 1;
            let mut coeffs = vec![Rational::from(c0)];
            coeffs.extend(cs.into_iter().map(Rational::from));
            FormalSeries::from_parts(d, lead, coeffs, lead + n)
        })
}

proptest! {
    #[test]
    fn ring_laws(a in arb_series(), b in arb_series(), c in arb_series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.mul(&b).mul(&c).agrees_with(&a.mul(&b.mul(&c))));
        prop_assert!(a.mul(&b.add(&c)).agrees_with(&a.mul(&b).add(&a.mul(&c))));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn substitute_round_trip(a in arb_series(), m in 1u64..5) {
        let up = a.substitute_power(&Rational::from(m)).unwrap();
        let back = up.substitute_power(&Rational::from((1u64, m))).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn div_then_mul_round_trip(a in arb_series(), b in arb_unit()) {
        let q = a.div(&b).unwrap();
        prop_assert!(q.mul(&b).agrees_with(&a));
    }

    #[test]
    fn substitution_is_a_ring_map(a in arb_series(), b in arb_series(), m in 1u64..4) {
        let m = Rational::from(m);
        let lhs = a.mul(&b).substitute_power(&m).unwrap();
        let rhs = a.substitute_power(&m).unwrap().mul(&b.substitute_power(&m).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pow_matches_repeated_product(a in arb_unit(), n in 0i64..5) {
        let mut acc = a.pow_int(0).unwrap();
        for _ in 0..n {
            acc = acc.mul(&a);
        }
        prop_assert!(a.pow_int(n).unwrap().agrees_with(&acc));
        let inv = a.pow_int(-n).unwrap();
        prop_assert!(inv.mul(&acc).agrees_with(&a.pow_int(0).unwrap()));
    }
}
