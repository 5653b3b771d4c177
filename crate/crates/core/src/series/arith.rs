use super::{gcd_u64, FormalSeries};
use crate::error::{Error, Result};
use rug::{Integer, Rational};
use std::ops::{Add, Mul, Neg, Sub};

/// Scales rationals to integers: returns `(ints, L)` with `values[i] = ints[i] / L`.
fn scale_to_integers(values: &[Rational]) -> (Vec<Integer>, Integer) {
    let mut l = Integer::from(1);
    for v in values {
        if *v.denom() != 1 {
            l.lcm_mut(v.denom());
        }
    }
    let ints = values
        .iter()
        .map(|v| if l == 1 { v.numer().clone() } else { v.numer() * Integer::from(&l / v.denom()) })
        .collect();
    (ints, l)
}

fn sampled(values: &[Integer], stride: usize) -> Vec<Integer> {
    values.iter().step_by(stride).cloned().collect()
}

/// First `n` terms of the product of two dense integer sequences.
fn convolve(a: &[Integer], b: &[Integer], n: usize) -> Vec<Integer> {
    let mut out = vec![Integer::new(); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if *ai == 0 {
            continue;
        }
        let lim = (n - i).min(b.len());
        for (j, bj) in b[..lim].iter().enumerate() {
            if *bj != 0 {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Spreads `values` onto positions `0, s, 2s, ...` of a dense vector of length `len`.
fn spread(values: Vec<Rational>, s: usize, len: usize) -> Vec<Rational> {
    if s == 1 {
        let mut v = values;
        v.truncate(len);
        return v;
    }
    let mut out = vec![Rational::new(); len];
    for (k, v) in values.into_iter().enumerate() {
        if k * s < len {
            out[k * s] = v;
        }
    }
    out
}

fn common_stride(a: &FormalSeries, b: &FormalSeries) -> usize {
    let g = gcd_u64(a.stride(), b.stride());
    if g == 0 {
        1
    } else {
        g as usize
    }
}

impl FormalSeries {
    /// Sum; the result is truncated at the smaller big-O.
    pub fn add(&self, other: &FormalSeries) -> FormalSeries {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &FormalSeries) -> FormalSeries {
        self.combine(other, true)
    }

    fn combine(&self, other: &FormalSeries, negate: bool) -> FormalSeries {
        let d = self.common_denom(other);
        let a = self.rebased(d);
        let b = other.rebased(d);
        let prec = a.prec.min(b.prec);
        let lead = a.lead.min(b.lead).min(prec);
        let mut coeffs = vec![Rational::new(); (prec - lead) as usize];
        for (k, c) in a.coeffs.iter().enumerate() {
            let e = a.lead + k as i64;
            if e >= prec {
                break;
            }
            coeffs[(e - lead) as usize] = c.clone();
        }
        for (k, c) in b.coeffs.iter().enumerate() {
            let e = b.lead + k as i64;
            if e >= prec {
                break;
            }
            if *c == 0 {
                continue;
            }
            let slot = &mut coeffs[(e - lead) as usize];
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        FormalSeries::from_parts(d, lead, coeffs, prec)
    }

    pub fn neg(&self) -> FormalSeries {
        let mut s = self.clone();
        for c in s.coeffs.iter_mut() {
            *c = Rational::from(-&*c);
        }
        s
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Rational) -> FormalSeries {
        if *c == 0 {
            let mut z = self.clone();
            z.coeffs.clear();
            z.lead = z.prec;
            return z;
        }
        let mut s = self.clone();
        for v in s.coeffs.iter_mut() {
            *v *= c;
        }
        s
    }

    /// Multiplies by the monomial `q^e`, shifting the truncation with it.
    pub fn shift(&self, e: &Rational) -> Result<FormalSeries> {
        let ed = e.denom().to_u64().ok_or_else(|| Error::InvalidArgument("shift denominator".into()))?;
        let d = super::lcm_u64(self.denom, ed);
        let mut s = self.rebased(d);
        let k = Rational::from(e * d);
        let k = k.numer().to_i64().ok_or_else(|| Error::InvalidArgument("shift too large".into()))?;
        s.lead += k;
        s.prec += k;
        Ok(s)
    }

    /// Product with truncation `min(val_a + O_b, val_b + O_a)`.
    pub fn mul(&self, other: &FormalSeries) -> FormalSeries {
        let d = self.common_denom(other);
        let a = self.rebased(d);
        let b = other.rebased(d);
        let prec = (a.lead + b.prec).min(b.lead + a.prec);
        let lead = a.lead + b.lead;
        if a.is_zero() || b.is_zero() {
            return FormalSeries::from_parts(d, prec, Vec::new(), prec);
        }
        let n = (prec - lead) as usize;
        let s = common_stride(&a, &b);
        let (ia, la) = scale_to_integers(&a.coeffs);
        let (ib, lb) = scale_to_integers(&b.coeffs);
        let nc = n.div_ceil(s);
        let prod = convolve(&sampled(&ia, s), &sampled(&ib, s), nc);
        let l = la * lb;
        let vals: Vec<Rational> =
            prod.into_iter().map(|v| if l == 1 { Rational::from(v) } else { Rational::from((v, l.clone())) }).collect();
        FormalSeries::from_parts(d, lead, spread(vals, s, n), prec)
    }

    /// Quotient; the relative precision is the smaller of the two operands'.
    pub fn div(&self, other: &FormalSeries) -> Result<FormalSeries> {
        if other.is_zero() {
            return Err(Error::NotInvertible("division by a series that is zero to its truncation".into()));
        }
        let d = self.common_denom(other);
        let a = self.rebased(d);
        let b = other.rebased(d);
        let lead = a.lead - b.lead;
        let rel = b.relative_precision().min(if a.is_zero() { i64::MAX } else { a.relative_precision() });
        if a.is_zero() {
            let prec = a.prec - b.lead;
            let prec = prec.min(lead + b.relative_precision());
            return Ok(FormalSeries::from_parts(d, prec, Vec::new(), prec));
        }
        let n = rel as usize;
        let s = common_stride(&a, &b);
        let (ia, la) = scale_to_integers(&a.coeffs);
        let (ib, lb) = scale_to_integers(&b.coeffs);
        let ia = sampled(&ia, s);
        let ib = sampled(&ib, s);
        let nc = n.div_ceil(s);
        let factor = Rational::from((lb, la));
        let vals: Vec<Rational> = if ib[0] == 1 || ib[0] == -1 {
            let neg = ib[0] == -1;
            let mut c: Vec<Integer> = Vec::with_capacity(nc);
            for k in 0..nc {
                let mut acc = if k < ia.len() { ia[k].clone() } else { Integer::new() };
                for j in 1..=k.min(ib.len() - 1) {
                    if ib[j] != 0 && c[k - j] != 0 {
                        acc -= &ib[j] * &c[k - j];
                    }
                }
                if neg {
                    acc = -acc;
                }
                c.push(acc);
            }
            c.into_iter().map(|v| Rational::from(v) * &factor).collect()
        } else {
            let b0 = Rational::from(ib[0].clone());
            let mut c: Vec<Rational> = Vec::with_capacity(nc);
            for k in 0..nc {
                let mut acc = if k < ia.len() { Rational::from(ia[k].clone()) } else { Rational::new() };
                for j in 1..=k.min(ib.len() - 1) {
                    if ib[j] != 0 && c[k - j] != 0 {
                        acc -= &c[k - j] * Rational::from(ib[j].clone());
                    }
                }
                acc /= &b0;
                c.push(acc);
            }
            c.into_iter().map(|v| v * &factor).collect()
        };
        let prec = lead + rel;
        Ok(FormalSeries::from_parts(d, lead, spread(vals, s, n), prec))
    }

    /// Multiplicative inverse.
    pub fn inverse(&self) -> Result<FormalSeries> {
        self.unit_like().div(self)
    }

    /// `1 + O(q^r)` where `r` is this series' relative precision.
    fn unit_like(&self) -> FormalSeries {
        let rel = self.relative_precision().max(0);
        FormalSeries::from_parts(
            self.denom,
            0,
            (0..rel).map(|k| if k == 0 { Rational::from(1) } else { Rational::new() }).collect(),
            rel,
        )
    }

    /// Integer power; negative powers require an invertible series.
    pub fn pow_int(&self, n: i64) -> Result<FormalSeries> {
        if n < 0 {
            return self.inverse()?.pow_int(-n);
        }
        let mut result = self.unit_like();
        if n == 0 {
            return Ok(result);
        }
        let mut base = self.clone();
        let mut e = n as u64;
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                result = if first { base.clone() } else { result.mul(&base) };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Substitutes `q -> q^m` for a positive rational `m`.
    pub fn substitute_power(&self, m: &Rational) -> Result<FormalSeries> {
        if *m <= 0 {
            return Err(Error::InvalidArgument(format!("substitution power must be positive, got {m}")));
        }
        let a = m.numer().to_u64().ok_or_else(|| Error::InvalidArgument("substitution power too large".into()))?;
        let b = m.denom().to_u64().ok_or_else(|| Error::InvalidArgument("substitution power too large".into()))?;
        let db = self.denom.checked_mul(b).ok_or_else(|| Error::InvalidArgument("lattice overflow".into()))?;
        let g = gcd_u64(a, db);
        let new_denom = db / g;
        let s = (a / g) as i64;
        let len = (self.prec - self.lead) * s;
        let coeffs = spread(self.coeffs.clone(), s as usize, len as usize);
        Ok(FormalSeries::from_parts(new_denom, self.lead * s, coeffs, self.prec * s))
    }

    /// Applies `q d/dq`.
    pub fn q_derivative(&self) -> FormalSeries {
        let d = self.denom;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if *c == 0 { Rational::new() } else { c * Rational::from((self.lead + k as i64, d)) })
            .collect();
        FormalSeries::from_parts(d, self.lead, coeffs, self.prec)
    }

    /// Substitutes `q -> -q`; every nonzero exponent must be an integer.
    pub fn alternate(&self) -> Result<FormalSeries> {
        let d = self.denom as i64;
        let mut s = self.clone();
        for (k, c) in s.coeffs.iter_mut().enumerate() {
            if *c == 0 {
                continue;
            }
            let e = self.lead + k as i64;
            if e % d != 0 {
                return Err(Error::InvalidArgument("q -> -q needs integer exponents".into()));
            }
            if (e / d) % 2 != 0 {
                *c = Rational::from(-&*c);
            }
        }
        Ok(s)
    }

    /// Keeps only terms `q^n` with `m | n`; every nonzero exponent must be an integer.
    pub fn section(&self, m: u64) -> Result<FormalSeries> {
        let d = self.denom as i64;
        let m = m as i64;
        let mut s = self.clone();
        for (k, c) in s.coeffs.iter_mut().enumerate() {
            if *c == 0 {
                continue;
            }
            let e = self.lead + k as i64;
            if e % d != 0 {
                return Err(Error::InvalidArgument("section needs integer exponents".into()));
            }
            if (e / d) % m != 0 {
                *c = Rational::new();
            }
        }
        s.strip_leading_zeros();
        Ok(s)
    }

    /// Formal exponential of a series with positive valuation.
    pub fn exp(&self) -> Result<FormalSeries> {
        if !self.is_zero() && self.lead <= 0 {
            return Err(Error::InvalidArgument("exp needs a series with positive valuation".into()));
        }
        let n = self.prec.max(0) as usize;
        let mut a = vec![Rational::new(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            let i = (self.lead + k as i64) as usize;
            if i < n {
                a[i] = c.clone();
            }
        }
        let mut e: Vec<Rational> = Vec::with_capacity(n);
        if n > 0 {
            e.push(Rational::from(1));
        }
        for m in 1..n {
            let mut acc = Rational::new();
            for k in 1..=m {
                if a[k] != 0 && e[m - k] != 0 {
                    acc += Rational::from(&a[k] * &e[m - k]) * k as u64;
                }
            }
            acc /= m as u64;
            e.push(acc);
        }
        Ok(FormalSeries::from_parts(self.denom, 0, e, n as i64))
    }

    /// Formal logarithm of a series `1 + (positive valuation terms)`.
    pub fn log(&self) -> Result<FormalSeries> {
        if self.lead != 0 || self.coeffs.first().map(|c| *c != 1).unwrap_or(true) {
            return Err(Error::InvalidArgument("log needs constant term 1".into()));
        }
        let a = &self.coeffs;
        let n = a.len();
        let mut l: Vec<Rational> = vec![Rational::new(); n];
        for m in 1..n {
            let mut acc = Rational::from(&a[m] * m as u64);
            for k in 1..m {
                if l[k] != 0 && a[m - k] != 0 {
                    acc -= Rational::from(&l[k] * &a[m - k]) * k as u64;
                }
            }
            l[m] = acc / m as u64;
        }
        Ok(FormalSeries::from_parts(self.denom, 0, l, n as i64))
    }
}

impl<'a> Add<&'a FormalSeries> for &'a FormalSeries {
    type Output = FormalSeries;
    fn add(self, rhs: &FormalSeries) -> FormalSeries {
        FormalSeries::add(self, rhs)
    }
}

impl<'a> Sub<&'a FormalSeries> for &'a FormalSeries {
    type Output = FormalSeries;
    fn sub(self, rhs: &FormalSeries) -> FormalSeries {
        FormalSeries::sub(self, rhs)
    }
}

impl<'a> Mul<&'a FormalSeries> for &'a FormalSeries {
    type Output = FormalSeries;
    fn mul(self, rhs: &FormalSeries) -> FormalSeries {
        FormalSeries::mul(self, rhs)
    }
}

impl Neg for &FormalSeries {
    type Output = FormalSeries;
    fn neg(self) -> FormalSeries {
        FormalSeries::neg(self)
    }
}
