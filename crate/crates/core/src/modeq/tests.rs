use super::*;
use crate::characters::RQSpec;
use crate::quantities::{rq_series, rq_series_via_normalization};
use proptest::prelude::*;
use rug::{Integer, Rational};

fn r(n: i64) -> Rational {
    Rational::from(n)
}

fn poly(s: &str) -> BivariatePolynomial {
    s.parse().unwrap()
}

fn rr124(m: i64, order: i64) -> crate::series::FormalSeries {
    SeriesRecipe::r("1,2,4".parse().unwrap(), r(m)).build(&r(order), Route::Primary).unwrap()
}

#[test]
fn text_round_trip() {
    for s in ["u^4 - v^2 + 4*u^4*v^4", "-u^2 + v - 2*u*v + u^2*v - v^2", "4 - u^4*v^2 + v^4", "u + u^3*v - v^3"] {
        assert_eq!(poly(s).to_string(), s);
    }
    assert_eq!(poly("4u^4v^4 + u^4 - v^2 = 0").to_string(), "u^4 - v^2 + 4*u^4*v^4");
    assert!("u^ + 1".parse::<BivariatePolynomial>().is_err());
    assert!("".parse::<BivariatePolynomial>().is_err());
    assert!("u v w".parse::<BivariatePolynomial>().is_err());
}

#[test]
fn canonical_form() {
    let p = poly("-2*u^4 + 2*v^2 - 8*u^4*v^4").canonical();
    assert_eq!(p.to_string(), "u^4 - v^2 + 4*u^4*v^4");
    assert_eq!(p.leading().unwrap().0, (4, 4));
}

#[test]
fn shapes() {
    assert_eq!(Shape::Box(2).monomials().len(), 9);
    assert_eq!(Shape::Total(3).monomials().len(), 10);
    assert_eq!(Shape::Total(1).monomials(), vec![(0, 0), (0, 1), (1, 0)]);
}

#[test]
fn nullspace_examples() {
    let m =
        |rows: &[&[i64]]| -> Vec<Vec<Rational>> { rows.iter().map(|r| r.iter().map(|&x| r_(x)).collect()).collect() };
    fn r_(x: i64) -> Rational {
        Rational::from(x)
    }
    let ints = |v: &[i64]| -> Vec<Integer> { v.iter().map(|&x| Integer::from(x)).collect() };
    assert_eq!(nullspace_rational(&m(&[&[1, 2], &[2, 4]])), vec![ints(&[2, -1])]);
    assert!(nullspace_rational(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).is_empty());
    assert_eq!(nullspace_rational(&m(&[&[1, 1, 1], &[0, 1, 2]])), vec![ints(&[1, -2, 1])]);
}

#[test]
fn verify_known_and_perturbed() {
    let u = rr124(1, 130);
    let v = rr124(2, 130);
    let good = poly("u^4 - v^2 + 4*u^4*v^4");
    assert_eq!(verify_relation(&good, &u, &v, &r(120)).unwrap(), Verdict::HoldsToOrder(r(120)));
    let bad = poly("u^4 - v^2 + 5*u^4*v^4");
    assert!(matches!(verify_relation(&bad, &u, &v, &r(120)).unwrap(), Verdict::FailsAt(_)));
    assert!(verify_relation(&good, &u, &v, &r(200)).is_err());
}

#[test]
fn derivative_relation_holds() {
    let n = |m| SeriesRecipe::n("1,2,5".parse().unwrap(), r(m));
    let u = n(1).build(&r(90), Route::Independent).unwrap();
    let v = n(2).build(&r(90), Route::Independent).unwrap();
    let p = poly("5*u^6 - u^2*v^2 - 125*u^4*v^4 + 5*v^6");
    assert!(verify_relation(&p, &u, &v, &r(80)).unwrap().holds());
}

#[test]
fn mining_recovers_small_equations() {
    for name in ["r124-degree-2", "r124-degree-3", "r126-degree-2", "s12-degree-2", "r1310-vs-rr", "r137-vs-r237"] {
        let k = catalogue::find(name).unwrap();
        let rep = mine(&k.job).unwrap();
        assert_eq!(rep.polynomials.len(), 1, "{name}");
        assert_eq!(rep.polynomials[0].polynomial, poly(k.expected).canonical(), "{name}");
        assert!(rep.dropped_candidates.is_empty());
    }
}

#[test]
fn mining_is_deterministic() {
    let k = catalogue::find("r124-degree-3").unwrap();
    assert_eq!(mine(&k.job).unwrap(), mine(&k.job).unwrap());
}

#[test]
fn too_low_order_is_rejected() {
    let mut job = catalogue::find("r124-degree-7").unwrap().job;
    job.order = r(2);
    assert!(matches!(mine(&job), Err(crate::Error::ShapeTooSmall { .. })));
}

#[test]
fn oversized_box_gives_multiples() {
    let mut job = catalogue::find("r137-vs-r237").unwrap().job;
    job.shape = Shape::Total(5);
    let rep = mine(&job).unwrap();
    assert_eq!(rep.polynomials.len(), 3);
    let base = poly("u + u^3*v - v^3");
    for p in &rep.polynomials {
        let u = rq_series(&RQSpec::ints(1, 3, 7).unwrap(), &r(40)).unwrap();
        let v = rq_series(&RQSpec::ints(2, 3, 7).unwrap(), &r(40)).unwrap();
        assert!(verify_relation(&p.polynomial, &u, &v, &r(30)).unwrap().holds());
        assert!(p.polynomial.total_degree() >= base.total_degree());
    }
}

#[test]
fn half_level_uses_normalisation() {
    let sp: RQSpec = "1,1/2,2".parse().unwrap();
    let a = rq_series(&sp, &r(20)).unwrap();
    let b = rq_series_via_normalization(&sp, &r(20)).unwrap();
    assert!(a.agrees_with(&b));
}

#[test]
fn job_serialises() {
    let job = catalogue::find("half-level-degree-2").unwrap().job;
    let text = serde_json::to_string(&job).unwrap();
    let back: MiningJob = serde_json::from_str(&text).unwrap();
    assert_eq!(job, back);
}

proptest! {
    #[test]
    fn display_parse_round_trip(terms in proptest::collection::vec(((0u32..6, 0u32..6), -50i64..50), 1..8)) {
        let p = BivariatePolynomial::from_terms(terms.into_iter().map(|(k, c)| (k, Integer::from(c))));
        prop_assume!(!p.is_zero());
        let back: BivariatePolynomial = p.to_string().parse().unwrap();
        prop_assert_eq!(&back, &p);
        let c = p.canonical();
        prop_assert_eq!(c.canonical(), c.clone());
        prop_assert!(*c.leading().unwrap().1 > 0);
    }

    #[test]
    fn kernel_vectors_annihilate(rows in proptest::collection::vec(proptest::collection::vec(-5i64..5, 5), 1..5)) {
        let m: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect();
        let ns = nullspace_rational(&m);
        let rank = linalg::rank_integer(rows.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect(), 5);
        prop_assert_eq!(ns.len(), 5 - rank);
        for v in &ns {
            for row in &rows {
                let s: Integer = row.iter().zip(v).map(|(a, b)| Integer::from(a * b)).sum();
                prop_assert_eq!(s, 0);
            }
        }
    }
}
