//! Agile products, Ramanujan quantities and the derived series `M`, `N`, `log R*`.

pub mod registry;

use crate::characters::{RQSpec, TauTable};
use crate::error::{Error, Result};
use crate::series::{self, ceil_rational, euler_f, pochhammer_inf, FormalSeries};
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

fn int_order(order: &Rational) -> Result<usize> {
    let n = ceil_rational(order);
    if n < 0 {
        return Ok(0);
    }
    n.to_usize().ok_or_else(|| Error::InvalidArgument("order too large".into()))
}

fn check_agile(a: &Rational, p: &Rational) -> Result<()> {
    if *a <= 0 || a >= p {
        return Err(Error::InvalidSpec(format!("agile needs 0 < a < p, got a={a}, p={p}")));
    }
    Ok(())
}

/// `[a,p;q] = (q^(p-a); q^p)_inf (q^a; q^p)_inf + O(q^order)`.
pub fn agile_series(a: &Rational, p: &Rational, order: &Rational) -> Result<FormalSeries> {
    check_agile(a, p)?;
    let pa = Rational::from(p - a);
    let x = pochhammer_inf(a, p, order)?;
    let y = pochhammer_inf(&pa, p, order)?;
    Ok(x.mul(&y))
}

/// Weight of the normalising power in `q^w [a,p;q]`: `p/12 - a/2 + a^2/(2p)`.
pub fn agile_normalizer(a: &Rational, p: &Rational) -> Rational {
    Rational::from(p / 12u32) - Rational::from(a / 2u32) + Rational::from(a.square_ref()) / Rational::from(p * 2u32)
}

/// `q^(p/12 - a/2 + a^2/(2p)) [a,p;q] + O(q^order)`.
pub fn normalized_agile_series(a: &Rational, p: &Rational, order: &Rational) -> Result<FormalSeries> {
    let w = agile_normalizer(a, p);
    let inner = agile_series(a, p, &Rational::from(order - &w))?;
    inner.shift(&w)
}

/// Agile quotient `R* = [a,p;q] / [b,p;q] + O(q^order)`.
pub fn rq_star_series(spec: &RQSpec, order: &Rational) -> Result<FormalSeries> {
    let num = agile_series(&spec.a, &spec.p, order)?;
    let den = agile_series(&spec.b, &spec.p, order)?;
    num.div(&den)
}

/// `R(a,b,p;q) = q^Q [a,p;q]/[b,p;q] + O(q^order)`.
pub fn rq_series(spec: &RQSpec, order: &Rational) -> Result<FormalSeries> {
    let qe = spec.q_exponent();
    let star = rq_star_series(spec, &Rational::from(order - &qe))?;
    Ok(star.shift(&qe)?.truncated(order))
}

/// `R(a,b,p;q^m) + O(q^order)`.
pub fn rq_series_at_power(spec: &RQSpec, m: &Rational, order: &Rational) -> Result<FormalSeries> {
    let inner = Rational::from(order / m);
    rq_series(spec, &inner)?.substitute_power(m)
}

/// `q^Q prod_{n>=1} (1 - q^n)^X(n)`, an independent route to [`rq_series`].
pub fn product_over_x(spec: &RQSpec, order: &Rational) -> Result<FormalSeries> {
    let table = TauTable::new(spec)?;
    let s = table.int_spec();
    let qe = spec.q_exponent();
    let n = int_order(&Rational::from(order - &qe))?;
    let mut c = vec![Integer::new(); n];
    if n > 0 {
        c[0] = Integer::from(1);
    }
    for k in 1..n {
        let x = s.chi(k as i64);
        if x != 0 {
            series::mul_one_minus_pow(&mut c, k, x);
        }
    }
    Ok(FormalSeries::from_integer_coeffs(c).shift(&qe)?.truncated(order))
}

/// `log R* = -sum tau(n)/n q^n + O(q^order)`.
pub fn log_rq_series(spec: &RQSpec, order: usize) -> Result<FormalSeries> {
    let table = TauTable::new(spec)?;
    let t = table.prefix(order.max(1));
    let coeffs = (0..order).map(|n| if n == 0 { Rational::new() } else { Rational::from((-t[n], n as i64)) }).collect();
    Ok(FormalSeries::from_parts(1, 0, coeffs, order as i64))
}

/// `M(q) = Q - sum tau(n) q^n + O(q^order)`, which equals `q R'/R`.
pub fn m_series(spec: &RQSpec, order: usize) -> Result<FormalSeries> {
    let table = TauTable::new(spec)?;
    let t = table.prefix(order.max(1));
    let qe = spec.q_exponent();
    let coeffs = (0..order).map(|n| if n == 0 { qe.clone() } else { Rational::from(-t[n]) }).collect();
    Ok(FormalSeries::from_parts(1, 0, coeffs, order as i64))
}

/// `N(q) = q^(-1/6) f(-q)^(-4) M(q) + O(q^order)`.
pub fn n_series(spec: &RQSpec, order: &Rational) -> Result<FormalSeries> {
    let shift = Rational::from((1, 6));
    let inner = int_order(&Rational::from(order + &shift))?;
    let m = m_series(spec, inner)?;
    let f4 = euler_f(inner).pow_int(4)?;
    Ok(m.div(&f4)?.shift(&Rational::from(-&shift))?.truncated(order))
}

/// `N(q)` built from `q R'/R` and the product form of `f(-q)`, independent of [`n_series`].
pub fn n_series_via_derivative(spec: &RQSpec, order: &Rational) -> Result<FormalSeries> {
    let shift = Rational::from((1, 6));
    let k = int_order(&Rational::from(order + &shift))?;
    let inner = Rational::from(k as u64);
    let qe = spec.q_exponent();
    let r = rq_star_series(spec, &inner)?;
    let m = r.q_derivative().div(&r)?.add(&FormalSeries::constant(qe, &inner)?);
    let f4 = series::euler_f_product(k).pow_int(4)?;
    Ok(m.div(&f4)?.shift(&Rational::from(-&shift))?.truncated(order))
}

/// Which Eisenstein-type series [`eta_series`] returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EtaKind {
    /// `f(-q) = (q;q)_inf`.
    F,
    /// `L1(q) = sum sigma_1(n) q^n`.
    L1,
    /// `L(q) = 1 - 24 L1(q)`.
    L,
}

pub fn eta_series(kind: EtaKind, order: usize) -> FormalSeries {
    match kind {
        EtaKind::F => euler_f(order),
        EtaKind::L1 => series::sigma1_series(order),
        EtaKind::L => {
            let one = FormalSeries::one(&Rational::from(order as u64)).expect("valid order");
            one.sub(&series::sigma1_series(order).scale(&Rational::from(24)))
        }
    }
}

/// `q^prefactor prod_m f(-q^m)^(e_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    pub prefactor: Rational,
    pub exponents: BTreeMap<u64, i64>,
}

impl EtaQuotient {
    pub fn new(prefactor: Rational, exponents: &[(u64, i64)]) -> EtaQuotient {
        EtaQuotient { prefactor, exponents: exponents.iter().copied().filter(|e| e.1 != 0).collect() }
    }
}

/// Expands an eta quotient through the pentagonal series of each `f(-q^m)`.
pub fn eta_quotient_series(eq: &EtaQuotient, order: &Rational) -> Result<FormalSeries> {
    let inner = int_order(&Rational::from(order - &eq.prefactor))?;
    let ord = Rational::from(inner as u64);
    let mut num = FormalSeries::one(&ord)?;
    let mut den = FormalSeries::one(&ord)?;
    for (&m, &e) in &eq.exponents {
        if m == 0 {
            return Err(Error::InvalidArgument("eta quotient index must be positive".into()));
        }
        let f = euler_f(inner.div_ceil(m as usize)).substitute_power(&Rational::from(m))?.truncated(&ord);
        let fp = f.pow_int(e.abs())?;
        if e > 0 {
            num = num.mul(&fp);
        } else {
            den = den.mul(&fp);
        }
    }
    Ok(num.div(&den)?.shift(&eq.prefactor)?.truncated(order))
}

/// Reduction of a rational spec to an integral one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizedSpec {
    /// `(a1 b2 p2, b1 a2 p2, p1 a2 b2)` before any inversion.
    pub w: RQSpec,
    /// Integral spec with first entry below the second.
    pub spec: RQSpec,
    /// `R(original; q) = R(spec; q^scale)^(+-1)`.
    #[serde(with = "crate::characters::rational_str")]
    pub scale: Rational,
    /// Whether `R(a,b,p) = 1/R(b,a,p)` was applied.
    pub inverted: bool,
}

/// Maps `(a1/a2, b1/b2, p1/p2)` to an integral spec on `q^(1/(a2 b2 p2))`.
pub fn normalize_rational_spec(spec: &RQSpec) -> Result<NormalizedSpec> {
    let (a1, a2) = (spec.a.numer().clone(), spec.a.denom().clone());
    let (b1, b2) = (spec.b.numer().clone(), spec.b.denom().clone());
    let (p1, p2) = (spec.p.numer().clone(), spec.p.denom().clone());
    let l = Integer::from(&a2 * &b2) * &p2;
    let w = RQSpec::new(
        Rational::from(Integer::from(&a1 * &b2) * &p2),
        Rational::from(Integer::from(&b1 * &a2) * &p2),
        Rational::from(Integer::from(&p1 * &a2) * &b2),
    )?;
    let inverted = w.a > w.b;
    let out = if inverted { w.swapped() } else { w.clone() };
    Ok(NormalizedSpec { w, spec: out, scale: Rational::from((Integer::from(1), l)), inverted })
}

/// `R(spec; q)` rebuilt through [`normalize_rational_spec`] and the character product.
pub fn rq_series_via_normalization(spec: &RQSpec, order: &Rational) -> Result<FormalSeries> {
    let n = normalize_rational_spec(spec)?;
    let inner_order = Rational::from(order / &n.scale);
    let base = product_over_x(&n.spec, &inner_order)?;
    let base = if n.inverted { base.inverse()? } else { base };
    Ok(base.substitute_power(&n.scale)?.truncated(order))
}

/// Continued fraction `P(q^A, q^B, q^(A+B))` expanded as a series, by backward recurrence.
///
/// `P(a,b,q) = 1/((1-ab) + (a-bq)(b-aq)/((1-ab)(q^2+1) + (a-bq^3)(b-aq^3)/((1-ab)(q^4+1) + ...)))`.
pub fn general_p_series(big_a: &Rational, big_b: &Rational, order: &Rational) -> Result<FormalSeries> {
    if *big_a <= 0 || *big_b <= 0 {
        return Err(Error::InvalidArgument("A and B must be positive".into()));
    }
    let s = Rational::from(big_a + big_b);
    let work = Rational::from(order + &s) + 2u32;
    let mono = |c: i64, e: Rational| {
        if e >= work {
            FormalSeries::zero(&work)
        } else {
            FormalSeries::monomial(Rational::from(c), e, &work)
        }
    };
    let one = FormalSeries::one(&work)?;
    let one_minus_ab = one.sub(&mono(1, s.clone())?);
    let depth = int_order(&Rational::from(&work / &s))? + 3;
    // b_1 = 1-ab, b_n = (1-ab)(q^(2n-2) + 1), numerators a_n = (a - b q^(2n-3))(b - a q^(2n-3)).
    let b_n = |n: usize| -> Result<FormalSeries> {
        if n == 1 {
            return Ok(one_minus_ab.clone());
        }
        let e = Rational::from(&s * (2 * n as i64 - 2));
        Ok(one_minus_ab.mul(&one.add(&mono(1, e)?)))
    };
    let a_n = |n: usize| -> Result<FormalSeries> {
        let e = Rational::from(&s * (2 * n as i64 - 3));
        let x = mono(1, big_a.clone())?.sub(&mono(1, Rational::from(big_b + &e))?);
        let y = mono(1, big_b.clone())?.sub(&mono(1, Rational::from(big_a + &e))?);
        Ok(x.mul(&y))
    };
    let mut t = b_n(depth)?;
    for n in (1..depth).rev() {
        t = b_n(n)?.add(&a_n(n + 1)?.div(&t)?);
    }
    Ok(t.inverse()?.truncated(order))
}

#[cfg(test)]
mod tests;
