//! Known modular equations with the mining shapes and orders that recover them.

use super::{MiningJob, SeriesRecipe, Shape};
use crate::characters::RQSpec;
use rug::Rational;

/// A job together with the relation it is expected to produce.
pub struct KnownEquation {
    pub job: MiningJob,
    pub expected: &'static str,
}

fn r(spec: &str, power: i64) -> SeriesRecipe {
    SeriesRecipe::r(spec.parse::<RQSpec>().expect("valid spec"), Rational::from(power))
}

fn n(spec: &str, power: i64) -> SeriesRecipe {
    SeriesRecipe::n(spec.parse::<RQSpec>().expect("valid spec"), Rational::from(power))
}

fn known(
    name: &str,
    u: SeriesRecipe,
    v: SeriesRecipe,
    shape: Shape,
    order: i64,
    expected: &'static str,
) -> KnownEquation {
    KnownEquation { job: MiningJob::new(name, u, v, shape, Rational::from(order)), expected }
}

/// Every catalogued equation, in a fixed order.
pub fn known_equations() -> Vec<KnownEquation> {
    vec![
        known("r124-degree-2", r("1,2,4", 1), r("1,2,4", 2), Shape::Box(4), 40, "u^4 - v^2 + 4*u^4*v^4"),
        known("r124-degree-3", r("1,2,4", 1), r("1,2,4", 3), Shape::Box(4), 40, "u^4 - u*v + 4*u^3*v^3 - v^4"),
        known(
            "r124-degree-5",
            r("1,2,4", 1),
            r("1,2,4", 5),
            Shape::Box(6),
            60,
            "u^6 - u*v + 5*u^4*v^2 - 5*u^2*v^4 + 16*u^5*v^5 - v^6",
        ),
        known(
            "r124-degree-7",
            r("1,2,4", 1),
            r("1,2,4", 7),
            Shape::Box(8),
            80,
            "u^8 - u*v + 7*u^2*v^2 - 28*u^3*v^3 + 70*u^4*v^4 - 112*u^5*v^5 + 112*u^6*v^6 - 64*u^7*v^7 + v^8",
        ),
        known("r126-degree-2", r("1,2,6", 1), r("1,2,6", 2), Shape::Box(4), 40, "u^4 - v^2 + 3*u^4*v^2 + v^4"),
        known(
            "cubic-degree-5",
            r("1,3,6", 1),
            r("1,3,6", 5),
            Shape::Box(6),
            90,
            "u^6 - u*v + 5*u^4*v + 5*u^2*v^2 - 10*u^5*v^2 - 20*u^3*v^3 + 5*u*v^4 + 20*u^4*v^4 - 10*u^2*v^5 - 16*u^5*v^5 + v^6",
        ),
        known(
            "cubic-degree-7",
            r("1,3,6", 1),
            r("1,3,6", 7),
            Shape::Box(8),
            130,
            "u^8 - u*v + 7*u^4*v + 28*u^6*v^2 - 56*u^5*v^3 + 7*u*v^4 + 21*u^4*v^4 - 56*u^7*v^4 - 56*u^3*v^5 + 28*u^2*v^6 - 56*u^4*v^7 - 64*u^7*v^7 + v^8",
        ),
        known(
            "half-level-degree-2",
            SeriesRecipe::r("1,1/2,2".parse().expect("valid spec"), Rational::from(1)),
            SeriesRecipe::r("1,1/2,2".parse().expect("valid spec"), Rational::from(2)),
            Shape::Box(4),
            40,
            "4 + v^4 - u^4*v^2",
        ),
        known("rr-derivative-degree-2", n("1,2,5", 1), n("1,2,5", 2), Shape::Box(6), 80, "5*u^6 - u^2*v^2 - 125*u^4*v^4 + 5*v^6"),
        known(
            "rr-derivative-degree-3",
            n("1,2,5", 1),
            n("1,2,5", 3),
            Shape::Box(12),
            120,
            "125*u^12 + u^3*v^3 + 1125*u^9*v^3 + 1125*u^3*v^9 + 1953125*u^9*v^9 - 125*v^12",
        ),
        known("s12-degree-2", r("11,7,12", 1), r("11,7,12", 2), Shape::Box(2), 40, "-u^2 + v - 2*u*v + u^2*v - v^2"),
        known(
            "s12-degree-3",
            r("11,7,12", 1),
            r("11,7,12", 3),
            Shape::Box(3),
            50,
            "u^3 - v + 3*u*v - u^3*v + v^2 - 3*u^2*v^2 + u^3*v^2 - v^3",
        ),
        known(
            "s12-degree-5",
            r("11,7,12", 1),
            r("11,7,12", 5),
            Shape::Box(6),
            150,
            "-u^5 + v - 5*u*v + 5*u^2*v + 5*u^5*v - 10*u^3*v^2 - 5*u^5*v^2 + 10*u^2*v^3 + 10*u^4*v^3 - 5*u*v^4 - 10*u^3*v^4 + 5*u*v^5 + 5*u^4*v^5 - 5*u^5*v^5 + u^6*v^5 - u*v^6",
        ),
        known(
            "s12-degree-7",
            r("11,7,12", 1),
            r("11,7,12", 7),
            Shape::Box(8),
            250,
            "-u^7 + v - 7*u*v + 14*u^2*v - 7*u^3*v + 7*u^5*v - 7*u^6*v + 7*u^7*v + 7*u*v^2 - 28*u^2*v^2 + 7*u^3*v^2 - 28*u^5*v^2 + 28*u^6*v^2 - 14*u^7*v^2 - 7*u*v^3 + 28*u^2*v^3 - 7*u^3*v^3 + 35*u^4*v^3 + 7*u^5*v^3 - 7*u^6*v^3 + 7*u^7*v^3 - 35*u^3*v^4 - 35*u^5*v^4 + 7*u*v^5 - 7*u^2*v^5 + 7*u^3*v^5 + 35*u^4*v^5 - 7*u^5*v^5 + 28*u^6*v^5 - 7*u^7*v^5 - 14*u*v^6 + 28*u^2*v^6 - 28*u^3*v^6 + 7*u^5*v^6 - 28*u^6*v^6 + 7*u^7*v^6 + 7*u*v^7 - 7*u^2*v^7 + 7*u^3*v^7 - 7*u^5*v^7 + 14*u^6*v^7 - 7*u^7*v^7 + u^8*v^7 - u*v^8",
        ),
        known("s13-degree-2", r("14,10,16", 1), r("14,10,16", 2), Shape::Box(2), 80, "u^2 - v + u^2*v + v^2"),
        known(
            "s13-degree-3",
            r("14,10,16", 1),
            r("14,10,16", 3),
            Shape::Box(4),
            100,
            "u^3 - v + 3*u^2*v + 3*u*v^2 - 3*u^3*v^2 - 3*u^2*v^3 + u^4*v^3 - u*v^4",
        ),
        known(
            "s13-degree-5",
            r("14,10,16", 1),
            r("14,10,16", 5),
            Shape::Box(6),
            150,
            "u^5 - v + 5*u^2*v + 10*u^3*v^2 - 5*u^5*v^2 - 10*u^2*v^3 + 10*u^4*v^3 + 5*u*v^4 - 10*u^3*v^4 - 5*u^4*v^5 + u^6*v^5 - u*v^6",
        ),
        known(
            "s13-degree-7",
            r("14,10,16", 1),
            r("14,10,16", 7),
            Shape::Box(8),
            250,
            "u^8 - u*v + 7*u^3*v - 7*u^5*v - 7*u^7*v + 28*u^6*v^2 + 7*u*v^3 - 49*u^3*v^3 - 7*u^5*v^3 - 7*u^7*v^3 + 70*u^4*v^4 - 7*u*v^5 - 7*u^3*v^5 - 49*u^5*v^5 + 7*u^7*v^5 + 28*u^2*v^6 - 7*u*v^7 - 7*u^3*v^7 + 7*u^5*v^7 - u^7*v^7 + v^8",
        ),
        known("r1310-vs-rr", r("1,3,10", 1), r("1,2,5", 1), Shape::Total(5), 60, "u^3 - u*v + u^2*v^3 + v^4"),
        known("cubic-vs-r1312", r("1,3,6", 3), r("1,3,12", 3), Shape::Total(5), 120, "u^3 - u*v + v^3 + u*v^4"),
        known("r137-vs-r237", r("1,3,7", 1), r("2,3,7", 1), Shape::Total(4), 60, "u + u^3*v - v^3"),
    ]
}

/// Looks up a catalogued equation by job name.
pub fn find(name: &str) -> Option<KnownEquation> {
    known_equations().into_iter().find(|k| k.job.name == name)
}
