//! Exact truncated series in fractional powers of `q`.
//!
//! A [`FormalSeries`] lives on the lattice `q^(k/D)`. It stores every known
//! coefficient from its leading exponent up to, but excluding, its big-O
//! exponent. Everything at or beyond the big-O exponent is unknown.

mod arith;
mod products;
mod text;

pub(crate) use products::mul_one_minus_pow;
pub use products::{euler_f, euler_f_product, pochhammer_inf, sigma1_series};

use crate::error::{Error, Result};
use rug::{Integer, Rational};
use std::collections::BTreeSet;

/// Truncated series `sum c_k q^((lead+k)/D) + O(q^(prec/D))`.
#[derive(Clone, Debug)]
pub struct FormalSeries {
    denom: u64,
    lead: i64,
    coeffs: Vec<Rational>,
    prec: i64,
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd_u64(a, b) * b
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Smallest integer `>= r`.
pub(crate) fn ceil_rational(r: &Rational) -> Integer {
    let (num, den) = (r.numer(), r.denom());
    let (q, rem) = num.clone().div_rem_floor(den.clone());
    if rem == 0 {
        q
    } else {
        q + 1
    }
}

fn to_i64(v: &Integer, what: &str) -> Result<i64> {
    v.to_i64().ok_or_else(|| Error::InvalidArgument(format!("{what} does not fit the exponent lattice")))
}

impl FormalSeries {
    /// Builds a series from `(coefficient, exponent)` pairs with big-O at `order`.
    ///
    /// The lattice denominator is the lcm of all exponent denominators and of
    /// the order's denominator. Zero coefficients are dropped.
    pub fn make_series(terms: &[(Rational, Rational)], order: &Rational) -> Result<FormalSeries> {
        let mut seen = BTreeSet::new();
        let mut denom = order.denom().to_u64().unwrap_or(0);
        for (_, e) in terms {
            if !seen.insert(e.clone()) {
                return Err(Error::DuplicateExponent(e.to_string()));
            }
            if e >= order {
                return Err(Error::TermBeyondOrder { exponent: e.to_string(), order: order.to_string() });
            }
            let d =
                e.denom().to_u64().ok_or_else(|| Error::InvalidArgument("exponent denominator too large".into()))?;
            denom = lcm_u64(denom, d);
        }
        if denom == 0 {
            return Err(Error::InvalidArgument("exponent denominator too large".into()));
        }
        let scaled = |e: &Rational| -> Result<i64> {
            let v = Rational::from(e * denom);
            to_i64(v.numer(), "exponent")
        };
        let prec = scaled(order)?;
        let mut nonzero: Vec<(i64, &Rational)> = Vec::new();
        for (c, e) in terms {
            if *c != 0 {
                nonzero.push((scaled(e)?, c));
            }
        }
        let lead = nonzero.iter().map(|t| t.0).min().unwrap_or(prec);
        let len = usize::try_from(prec - lead).map_err(|_| Error::InvalidArgument("bad order".into()))?;
        let mut coeffs = vec![Rational::new(); len];
        for (k, c) in nonzero {
            coeffs[(k - lead) as usize] = c.clone();
        }
        Ok(FormalSeries::from_parts(denom, lead, coeffs, prec))
    }

    /// Builds a series on lattice `D` from dense coefficients starting at `lead/D`.
    ///
    /// The big-O exponent is `(lead + coeffs.len())/D`.
    pub fn from_parts(denom: u64, lead: i64, coeffs: Vec<Rational>, prec: i64) -> FormalSeries {
        assert!(denom > 0, "lattice denominator must be positive");
        assert_eq!(prec - lead, coeffs.len() as i64, "coefficient vector must fill the known range");
        let mut s = FormalSeries { denom, lead, coeffs, prec };
        s.strip_leading_zeros();
        s
    }

    /// Dense integer-exponent series `sum c_k q^k + O(q^n)` with `n = coeffs.len()`.
    pub fn from_integer_coeffs(coeffs: Vec<Integer>) -> FormalSeries {
        let n = coeffs.len() as i64;
        FormalSeries::from_parts(1, 0, coeffs.into_iter().map(Rational::from).collect(), n)
    }

    /// The zero series `O(q^order)`.
    pub fn zero(order: &Rational) -> Result<FormalSeries> {
        FormalSeries::make_series(&[], order)
    }

    /// The constant `c + O(q^order)`.
    pub fn constant(c: Rational, order: &Rational) -> Result<FormalSeries> {
        FormalSeries::make_series(&[(c, Rational::new())], order)
    }

    /// The constant one `1 + O(q^order)`.
    pub fn one(order: &Rational) -> Result<FormalSeries> {
        FormalSeries::constant(Rational::from(1), order)
    }

    /// The monomial `c q^e + O(q^order)`.
    pub fn monomial(c: Rational, e: Rational, order: &Rational) -> Result<FormalSeries> {
        FormalSeries::make_series(&[(c, e)], order)
    }

    fn strip_leading_zeros(&mut self) {
        let nz = self.coeffs.iter().position(|c| *c != 0);
        match nz {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.lead += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.lead = self.prec;
            }
        }
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    /// Leading lattice numerator. Equals the precision numerator for zero series.
    pub fn lead_numer(&self) -> i64 {
        self.lead
    }

    /// Big-O lattice numerator.
    pub fn prec_numer(&self) -> i64 {
        self.prec
    }

    /// Dense coefficients starting at the leading exponent.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the first nonzero coefficient, `None` for zero series.
    pub fn valuation(&self) -> Option<Rational> {
        if self.is_zero() {
            None
        } else {
            Some(Rational::from((self.lead, self.denom)))
        }
    }

    /// Big-O exponent.
    pub fn order(&self) -> Rational {
        Rational::from((self.prec, self.denom))
    }

    /// Number of known lattice positions after the leading term.
    pub fn relative_precision(&self) -> i64 {
        self.prec - self.lead
    }

    /// Coefficient of `q^e`. Off-lattice exponents have coefficient zero.
    pub fn coeff(&self, e: &Rational) -> Result<Rational> {
        if e >= &self.order() {
            return Err(Error::BeyondTruncation { requested: e.to_string(), order: self.order().to_string() });
        }
        let scaled = Rational::from(e * self.denom);
        if *scaled.denom() != 1 {
            return Ok(Rational::new());
        }
        let k = match scaled.numer().to_i64() {
            Some(k) => k,
            None => return Ok(Rational::new()),
        };
        if k < self.lead {
            return Ok(Rational::new());
        }
        Ok(self.coeffs[(k - self.lead) as usize].clone())
    }

    /// Coefficient of `q^n` for integer `n`.
    pub fn coeff_int(&self, n: i64) -> Result<Rational> {
        self.coeff(&Rational::from(n))
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &Rational)> + '_ {
        let d = self.denom;
        let lead = self.lead;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(move |(k, c)| (Rational::from((lead + k as i64, d)), c))
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| *c.denom() == 1)
    }

    /// Same series on the finer lattice `q^(1/new_denom)`.
    pub fn rebased(&self, new_denom: u64) -> FormalSeries {
        assert!(new_denom.is_multiple_of(self.denom), "lattice must be refined by a multiple");
        let s = (new_denom / self.denom) as i64;
        if s == 1 {
            return self.clone();
        }
        let len = (self.prec - self.lead) * s;
        let mut coeffs = vec![Rational::new(); len as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c != 0 {
                coeffs[k * s as usize] = c.clone();
            }
        }
        FormalSeries { denom: new_denom, lead: self.lead * s, coeffs, prec: self.prec * s }
    }

    /// Lowers the big-O exponent to `order` when it is below the current one.
    pub fn truncated(&self, order: &Rational) -> FormalSeries {
        if order >= &self.order() {
            return self.clone();
        }
        let d = lcm_u64(self.denom, order.denom().to_u64().expect("order denominator"));
        let mut s = self.rebased(d);
        let p = Rational::from(order * d);
        let p = p.numer().to_i64().expect("order fits");
        s.prec = p;
        if p <= s.lead {
            s.coeffs.clear();
            s.lead = p;
        } else {
            s.coeffs.truncate((p - s.lead) as usize);
            s.strip_leading_zeros();
        }
        s
    }

    /// Smallest common lattice denominator for the two series.
    pub(crate) fn common_denom(&self, other: &FormalSeries) -> u64 {
        lcm_u64(self.denom, other.denom)
    }

    /// Gcd of the offsets of nonzero coefficients from the leading term (0 when only one term).
    pub(crate) fn stride(&self) -> u64 {
        let mut g = 0u64;
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            if *c != 0 {
                g = gcd_u64(g, k as u64);
                if g == 1 {
                    break;
                }
            }
        }
        g
    }

    /// Difference is zero to within the smaller of the two truncations.
    pub fn agrees_with(&self, other: &FormalSeries) -> bool {
        (self - other).is_zero()
    }
}

impl PartialEq for FormalSeries {
    fn eq(&self, other: &FormalSeries) -> bool {
        let d = self.common_denom(other);
        let a = self.rebased(d);
        let b = other.rebased(d);
        a.prec == b.prec && a.lead == b.lead && a.coeffs == b.coeffs
    }
}

impl Eq for FormalSeries {}

#[cfg(test)]
mod tests;
