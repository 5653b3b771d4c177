use super::{CharConvention, IntSpec, RQSpec};
use crate::error::{Error, Result};
use crate::modeq::linalg::nullspace_integer;
use rug::{Integer, Rational};
use std::collections::BTreeMap;

/// Coefficients `b_d` with `f(n) = sum_{d | G} b_d [d | n]`.
pub type Decomposition = BTreeMap<u64, Rational>;

fn divisors(g: u64) -> Vec<u64> {
    (1..=g).filter(|d| g.is_multiple_of(*d)).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    crate::series::gcd_u64(a, b)
}

/// Writes a `G`-periodic function (given on `n = 1..=G`) as a combination of
/// divisibility indicators `[d | n]`, `d | G`. Returns `None` if it is not one.
pub fn decompose_periodic(values: &[i64]) -> Option<Decomposition> {
    let g = values.len() as u64;
    if g == 0 {
        return None;
    }
    let divs = divisors(g);
    let rows: Vec<Vec<Integer>> = (1..=g)
        .map(|n| {
            let mut row: Vec<Integer> = divs.iter().map(|d| Integer::from(u8::from(n % d == 0))).collect();
            row.push(Integer::from(-values[(n - 1) as usize]));
            row
        })
        .collect();
    let ns = nullspace_integer(rows, divs.len() + 1);
    if ns.len() != 1 || ns[0][divs.len()] == 0 {
        return None;
    }
    let v = &ns[0];
    let last = v[divs.len()].clone();
    let mut out = BTreeMap::new();
    for (d, c) in divs.iter().zip(v) {
        if *c != 0 {
            out.insert(*d, Rational::from((c.clone(), last.clone())));
        }
    }
    Some(out)
}

/// Decomposes `X(a,b,p;n)` over period `G`, then re-checks two full periods
/// of `lcm(G, p)`. `None` when no such decomposition exists.
pub fn decompose_character(spec: &RQSpec, g: u64, conv: CharConvention) -> Result<Option<Decomposition>> {
    if g == 0 {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    let s = spec.to_int()?;
    s.check_collisions()?;
    let values: Vec<i64> = (1..=g as i64).map(|n| s.chi_with(n, conv)).collect();
    let Some(dec) = decompose_periodic(&values) else { return Ok(None) };
    let span = 2 * g / gcd(g, s.p as u64) * s.p as u64;
    for n in 1..=span {
        let v: Rational = dec.iter().filter(|(d, _)| n % **d == 0).map(|(_, c)| c.clone()).sum();
        if v != s.chi_with(n as i64, conv) {
            return Ok(None);
        }
    }
    Ok(Some(dec))
}

fn mobius(mut n: u64) -> i64 {
    let mut m = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// Exponents `e_d` with `prod_{gcd(n,G)=1} (1 - q^n) = prod_{d | G} f(-q^d)^{e_d}`.
pub fn coprime_indicator_exponents(g: u64) -> BTreeMap<u64, i64> {
    divisors(g).into_iter().map(|d| (d, mobius(d))).filter(|(_, m)| *m != 0).collect()
}

/// Checks `[g does not divide n] = sum_{j=1}^{(g-1)/2} X(j,0,g;n) + (g-1)/2 [g | n]`
/// over one period, for odd `g`, under the given convention.
pub fn odd_indicator_sum_holds(g: i64, conv: CharConvention) -> Result<bool> {
    if g < 3 || g % 2 == 0 {
        return Err(Error::InvalidArgument("g must be odd and at least 3".into()));
    }
    let h = (g - 1) / 2;
    Ok((1..=g).all(|n| {
        let lhs = i64::from(n % g != 0);
        let sum: i64 = (1..=h).map(|j| IntSpec { a: j, b: 0, p: g }.chi_with(n, conv)).sum();
        lhs == sum + h * i64::from(n % g == 0)
    }))
}
