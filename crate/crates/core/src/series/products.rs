use super::{lcm_u64, FormalSeries};
use crate::error::{Error, Result};
use rug::{Integer, Rational};

/// Multiplies a dense integer series by `(1 - t^e)^power` in place.
pub(crate) fn mul_one_minus_pow(c: &mut [Integer], e: usize, power: i64) {
    if e == 0 || e >= c.len() {
        return;
    }
    if power >= 0 {
        for _ in 0..power {
            for i in (e..c.len()).rev() {
                let (lo, hi) = c.split_at_mut(i);
                if lo[i - e] != 0 {
                    hi[0] -= &lo[i - e];
                }
            }
        }
    } else {
        for _ in 0..(-power) {
            for i in e..c.len() {
                let (lo, hi) = c.split_at_mut(i);
                if lo[i - e] != 0 {
                    hi[0] += &lo[i - e];
                }
            }
        }
    }
}

fn lattice_for(parts: &[&Rational]) -> Result<u64> {
    let mut d = 1u64;
    for p in parts {
        let pd = p.denom().to_u64().ok_or_else(|| Error::InvalidArgument("lattice denominator too large".into()))?;
        d = lcm_u64(d, pd);
    }
    Ok(d)
}

fn lattice_units(r: &Rational, d: u64) -> Result<i64> {
    let v = Rational::from(r * d);
    v.numer().to_i64().ok_or_else(|| Error::InvalidArgument("exponent too large for the lattice".into()))
}

/// `(q^a; q^d)_inf = prod_{k>=0} (1 - q^(a+k d)) + O(q^order)` for rational `a, d > 0`.
pub fn pochhammer_inf(a: &Rational, d: &Rational, order: &Rational) -> Result<FormalSeries> {
    if *a <= 0 || *d <= 0 {
        return Err(Error::InvalidArgument(format!("pochhammer needs positive base and step, got a={a}, d={d}")));
    }
    let den = lattice_for(&[a, d, order])?;
    let start = lattice_units(a, den)?;
    let step = lattice_units(d, den)?;
    let prec = lattice_units(order, den)?.max(0);
    let mut c = vec![Integer::new(); prec as usize];
    if prec > 0 {
        c[0] = Integer::from(1);
    }
    let mut e = start;
    while e < prec {
        mul_one_minus_pow(&mut c, e as usize, 1);
        e += step;
    }
    Ok(FormalSeries::from_parts(den, 0, c.into_iter().map(Rational::from).collect(), prec))
}

/// Euler's `f(-q) = (q;q)_inf + O(q^order)` via the pentagonal number theorem.
pub fn euler_f(order: usize) -> FormalSeries {
    let mut c = vec![Rational::new(); order];
    if order > 0 {
        c[0] = Rational::from(1);
    }
    for k in 1usize.. {
        let e1 = k * (3 * k - 1) / 2;
        if e1 >= order {
            break;
        }
        let sign = Rational::from(if k % 2 == 0 { 1 } else { -1 });
        let e2 = k * (3 * k + 1) / 2;
        if e2 < order {
            c[e2] = sign.clone();
        }
        c[e1] = sign;
    }
    FormalSeries::from_parts(1, 0, c, order as i64)
}

/// `f(-q)` as a product, an independent route to [`euler_f`].
pub fn euler_f_product(order: usize) -> FormalSeries {
    pochhammer_inf(&Rational::from(1), &Rational::from(1), &Rational::from(order as u64)).expect("positive arguments")
}

/// `sum_{n>=1} sigma_1(n) q^n + O(q^order)`.
pub fn sigma1_series(order: usize) -> FormalSeries {
    let mut c = vec![Integer::new(); order];
    for d in 1..order {
        let mut m = d;
        while m < order {
            c[m] += d as u64;
            m += d;
        }
    }
    FormalSeries::from_integer_coeffs(c)
}
