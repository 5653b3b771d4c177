use super::*;
use crate::series::sigma1_series;
use proptest::prelude::*;

fn spec(a: i64, b: i64, p: i64) -> RQSpec {
    RQSpec::ints(a, b, p).unwrap()
}

fn r(n: i64) -> Rational {
    Rational::from(n)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

#[test]
fn rogers_ramanujan_leading_terms() {
    let s = rq_star_series(&spec(1, 2, 5), &r(8)).unwrap();
    let got: Vec<i64> = (0..8).map(|n| s.coeff_int(n).unwrap().numer().to_i64().unwrap()).collect();
    assert_eq!(got, vec![1, -1, 1, 0, -1, 1, -1, 1]);
    let full = rq_series(&spec(1, 2, 5), &r(3)).unwrap();
    assert_eq!(full.valuation(), Some(q(1, 5)));
    assert_eq!(full.order(), r(3));
}

#[test]
fn product_route_matches_quotient_for_small_levels() {
    for p in 3..=12i64 {
        for a in 1..p {
            for b in 1..p {
                if a == b || a + b == p {
                    continue;
                }
                let sp = spec(a, b, p);
                let x = rq_series(&sp, &r(40)).unwrap();
                let y = product_over_x(&sp, &r(40)).unwrap();
                assert!(x.agrees_with(&y), "({a},{b},{p})");
            }
        }
    }
}

#[test]
fn log_route_matches_product() {
    for (a, b, p) in [(1, 2, 5), (1, 3, 8), (2, 5, 12)] {
        let sp = spec(a, b, p);
        let e = log_rq_series(&sp, 60).unwrap().exp().unwrap();
        assert!(e.agrees_with(&rq_star_series(&sp, &r(60)).unwrap()), "({a},{b},{p})");
    }
}

#[test]
fn m_is_logarithmic_derivative() {
    for (a, b, p) in [(1, 2, 5), (1, 3, 8), (1, 2, 4)] {
        let sp = spec(a, b, p);
        let rs = rq_star_series(&sp, &r(50)).unwrap();
        let via = rs.q_derivative().div(&rs).unwrap().add(&FormalSeries::constant(sp.q_exponent(), &r(50)).unwrap());
        assert!(m_series(&sp, 50).unwrap().agrees_with(&via), "({a},{b},{p})");
    }
}

#[test]
fn n_series_routes_agree() {
    for (a, b, p) in [(1, 2, 5), (1, 3, 8), (1, 3, 6)] {
        let sp = spec(a, b, p);
        let x = n_series(&sp, &r(40)).unwrap();
        let y = n_series_via_derivative(&sp, &r(40)).unwrap();
        assert!(x.agrees_with(&y));
        assert_eq!(x.order(), r(40));
    }
}

#[test]
fn swapping_inverts() {
    for (a, b, p) in [(1, 2, 5), (2, 3, 7), (1, 4, 9)] {
        let x = rq_series(&spec(a, b, p), &r(30)).unwrap();
        let y = rq_series(&spec(b, a, p), &r(30)).unwrap();
        let one = FormalSeries::one(&r(30)).unwrap();
        assert!(x.mul(&y).agrees_with(&one));
    }
}

#[test]
fn normalization_examples() {
    let n = normalize_rational_spec(&"1,1/2,2".parse().unwrap()).unwrap();
    assert_eq!(n.w.to_string(), "2,1,4");
    assert_eq!(n.spec.to_string(), "1,2,4");
    assert!(n.inverted);
    assert_eq!(n.scale, q(1, 2));

    let n = normalize_rational_spec(&"1/2,3/2,5/2".parse().unwrap()).unwrap();
    assert_eq!(n.spec.to_string(), "4,12,20");
    assert_eq!(n.scale, q(1, 8));
    assert!(!n.inverted);
}

#[test]
fn normalization_route_matches_direct_quotient() {
    for s in ["1,1/2,2", "1/2,3/2,5/2", "1/3,2/3,5/3"] {
        let sp: RQSpec = s.parse().unwrap();
        let x = rq_series(&sp, &r(12)).unwrap();
        let y = rq_series_via_normalization(&sp, &r(12)).unwrap();
        assert!(x.agrees_with(&y), "{s}");
    }
}

#[test]
fn eta_kinds() {
    assert!(eta_series(EtaKind::F, 50).agrees_with(&crate::series::euler_f_product(50)));
    assert!(eta_series(EtaKind::L1, 30).agrees_with(&sigma1_series(30)));
    let l = eta_series(EtaKind::L, 5);
    assert_eq!(l.coeff_int(0).unwrap(), 1);
    assert_eq!(l.coeff_int(1).unwrap(), -24);
    assert_eq!(l.coeff_int(2).unwrap(), -72);
}

#[test]
fn eta_quotient_matches_quantity() {
    // R(1,2,6) = q^(1/4) f(-q) f(-q^6)^2 / (f(-q^2)^2 f(-q^3)).
    let eq = EtaQuotient::new(q(1, 4), &[(1, 1), (6, 2), (2, -2), (3, -1)]);
    let x = eta_quotient_series(&eq, &r(40)).unwrap();
    assert!(x.agrees_with(&rq_series(&spec(1, 2, 6), &r(40)).unwrap()));
}

#[test]
fn continued_fraction_series_matches_quantity() {
    for (a, b) in [(q(1, 1), q(2, 1)), (q(1, 1), q(3, 1)), (q(1, 2), q(3, 2)), (q(2, 1), q(3, 1))] {
        let s = Rational::from(&a + &b);
        let sp = RQSpec::new(
            Rational::from(&a * 5u32) + Rational::from(&b * 3u32),
            &a + Rational::from(&b * 3u32),
            s * 4u32,
        )
        .unwrap();
        let lhs = rq_star_series(&sp, &r(40)).unwrap();
        let fac = FormalSeries::one(&r(50))
            .unwrap()
            .sub(&FormalSeries::monomial(r(1), Rational::from(&b - &a), &r(50)).unwrap());
        let rhs = fac.mul(&general_p_series(&a, &b, &r(40)).unwrap());
        assert!(lhs.agrees_with(&rhs), "A={a} B={b}");
    }
}

#[test]
fn agile_normaliser_weight() {
    assert_eq!(agile_normalizer(&r(1), &r(5)), q(1, 60));
    assert_eq!(agile_normalizer(&r(3), &r(6)), q(-1, 4));
}

#[test]
fn registry_identities_hold_to_low_order() {
    for out in registry::verify_all(&r(30)).unwrap() {
        eprintln!("{} {} {:?}", out.id, out.verified, out.first_failure);
        if out.standing == registry::Standing::Proved {
            assert!(out.verified, "{} failed at {:?}", out.id, out.first_failure);
        }
    }
}

proptest! {
    #[test]
    fn product_route_matches_quotient(p in 5i64..30, a in 1i64..30, b in 1i64..30) {
        prop_assume!(a < p && b < p && a != b && a + b != p);
        let sp = spec(a, b, p);
        let x = rq_series(&sp, &r(25)).unwrap();
        let y = product_over_x(&sp, &r(25)).unwrap();
        prop_assert!(x.agrees_with(&y));
    }
}
