//! Specs `(a, b, p)`, the character `X(n)` and the divisor sums `tau(n)`.

mod decompose;
mod scan;

pub use decompose::{
    coprime_indicator_exponents, decompose_character, decompose_periodic, odd_indicator_sum_holds, Decomposition,
};
pub use scan::{
    invariance_predicted, multiplicative_invariance_violations, tau_relation_scan, verify_tau_relation, RelationStatus,
    TauRelation,
};

use crate::error::{Error, Result};
use rug::Rational;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

/// Parameters `(a, b, p)` of `R(a,b,p;q)`.
///
/// All three are positive rationals with `a != b`, `a < p` and `b < p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RQSpec {
    #[serde(with = "rational_str")]
    pub a: Rational,
    #[serde(with = "rational_str")]
    pub b: Rational,
    #[serde(with = "rational_str")]
    pub p: Rational,
}

pub(crate) mod rational_str {
    use rug::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<Rational>().map_err(serde::de::Error::custom)
    }
}

/// Integer form of a spec, used where residues mod `p` are needed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntSpec {
    pub a: i64,
    pub b: i64,
    pub p: i64,
}

/// How half-period residues are counted.
///
/// `Multiplicity` counts `n = a` and `n = p - a` separately, so a residue with
/// `a = p/2` gets weight 2. This is the reading under which
/// `R* = prod (1 - q^n)^X(n)` matches the agile quotient. `CaseList` gives
/// every matching residue weight 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum CharConvention {
    #[default]
    Multiplicity,
    CaseList,
}

impl RQSpec {
    pub fn new(a: Rational, b: Rational, p: Rational) -> Result<RQSpec> {
        if a <= 0 || b <= 0 || p <= 0 {
            return Err(Error::InvalidSpec(format!("entries must be positive: ({a}, {b}, {p})")));
        }
        if a == b {
            return Err(Error::InvalidSpec(format!("degenerate spec with a = b = {a}")));
        }
        if a >= p || b >= p {
            return Err(Error::InvalidSpec(format!("need a < p and b < p: ({a}, {b}, {p})")));
        }
        Ok(RQSpec { a, b, p })
    }

    pub fn ints(a: i64, b: i64, p: i64) -> Result<RQSpec> {
        RQSpec::new(Rational::from(a), Rational::from(b), Rational::from(p))
    }

    /// Exponent of the prefactor: `-(a-b)/2 + (a^2-b^2)/(2p)`.
    pub fn q_exponent(&self) -> Rational {
        let diff = Rational::from(&self.a - &self.b);
        let sq = Rational::from(self.a.square_ref()) - Rational::from(self.b.square_ref());
        -diff / 2u32 + sq / (Rational::from(&self.p * 2u32))
    }

    pub fn is_integral(&self) -> bool {
        *self.a.denom() == 1 && *self.b.denom() == 1 && *self.p.denom() == 1
    }

    pub fn to_int(&self) -> Result<IntSpec> {
        if !self.is_integral() {
            return Err(Error::InvalidSpec(format!("spec {self} is not integral")));
        }
        let f = |r: &Rational| r.numer().to_i64().ok_or_else(|| Error::InvalidSpec("entry too large".into()));
        Ok(IntSpec { a: f(&self.a)?, b: f(&self.b)?, p: f(&self.p)? })
    }

    /// The spec with `a` and `b` exchanged, so `R(swapped) = 1/R(self)`.
    pub fn swapped(&self) -> RQSpec {
        RQSpec { a: self.b.clone(), b: self.a.clone(), p: self.p.clone() }
    }
}

impl fmt::Display for RQSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.p)
    }
}

impl FromStr for RQSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<RQSpec> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("spec must be a,b,p; got {s:?}")));
        }
        let mut v = Vec::new();
        for part in parts {
            v.push(part.parse::<Rational>().map_err(|e| Error::Parse(format!("{part:?}: {e}")))?);
        }
        let p = v.pop().unwrap();
        let b = v.pop().unwrap();
        let a = v.pop().unwrap();
        RQSpec::new(a, b, p)
    }
}

impl IntSpec {
    fn residue(&self, n: i64) -> i64 {
        n.rem_euclid(self.p)
    }

    /// Rejects the collisions `a = b` and `a + b = p`, which make the character vanish.
    pub fn check_collisions(&self) -> Result<()> {
        let (a, b, p) = (self.a.rem_euclid(self.p), self.b.rem_euclid(self.p), self.p);
        if a == b {
            return Err(Error::ResidueCollision(format!("a = b = {a} (mod {p})")));
        }
        if (a + b) % p == 0 {
            return Err(Error::ResidueCollision(format!("a = {a} and p - b = {} coincide (mod {p})", p - b)));
        }
        Ok(())
    }

    /// The character value, under either counting convention.
    pub fn chi_with(&self, n: i64, conv: CharConvention) -> i64 {
        let r = self.residue(n);
        let ra = [self.residue(self.a), self.residue(self.p - self.a)];
        let rb = [self.residue(self.b), self.residue(self.p - self.b)];
        match conv {
            CharConvention::Multiplicity => {
                ra.iter().filter(|&&x| x == r).count() as i64 - rb.iter().filter(|&&x| x == r).count() as i64
            }
            CharConvention::CaseList => {
                if ra.contains(&r) {
                    1
                } else if rb.contains(&r) {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn chi(&self, n: i64) -> i64 {
        self.chi_with(n, CharConvention::Multiplicity)
    }
}

/// `X(a,b,p;n)`: `+1` on `n = a, p-a`, `-1` on `n = b, p-b` (mod `p`), else 0.
///
/// A half-period residue (`a = p/2` or `b = p/2`) is hit twice and gets weight 2.
pub fn chi(spec: &RQSpec, n: i64) -> Result<i64> {
    let s = spec.to_int()?;
    s.check_collisions()?;
    Ok(s.chi(n))
}

/// Memoised `tau(n) = sum_{d | n} X(d) d`, filled by a divisor sieve.
///
/// Concurrent readers share the table; growth takes the write lock.
pub struct TauTable {
    spec: IntSpec,
    values: RwLock<Vec<i64>>,
}

impl TauTable {
    pub fn new(spec: &RQSpec) -> Result<TauTable> {
        let s = spec.to_int()?;
        s.check_collisions()?;
        Ok(TauTable { spec: s, values: RwLock::new(vec![0]) })
    }

    pub fn int_spec(&self) -> IntSpec {
        self.spec
    }

    fn sieve(spec: IntSpec, n_max: usize) -> Vec<i64> {
        let mut t = vec![0i64; n_max + 1];
        for d in 1..=n_max {
            let x = spec.chi(d as i64);
            if x == 0 {
                continue;
            }
            let w = x * d as i64;
            let mut m = d;
            while m <= n_max {
                t[m] += w;
                m += d;
            }
        }
        t
    }

    /// Makes sure `tau(1..=n)` is available.
    pub fn ensure(&self, n: usize) {
        if self.values.read().expect("tau table lock").len() > n {
            return;
        }
        let mut w = self.values.write().expect("tau table lock");
        if w.len() > n {
            return;
        }
        let target = n.max(2 * w.len()).max(64);
        *w = TauTable::sieve(self.spec, target);
    }

    pub fn tau(&self, n: usize) -> i64 {
        assert!(n >= 1, "tau is defined for n >= 1");
        self.ensure(n);
        self.values.read().expect("tau table lock")[n]
    }

    /// `tau(0..=n_max)` with `tau(0) = 0`.
    pub fn prefix(&self, n_max: usize) -> Vec<i64> {
        self.ensure(n_max);
        self.values.read().expect("tau table lock")[..=n_max].to_vec()
    }
}

/// `tau(n)` for a single `n`, computed directly from the divisors.
pub fn tau(spec: &RQSpec, n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::InvalidArgument("tau needs n >= 1".into()));
    }
    let s = spec.to_int()?;
    s.check_collisions()?;
    let mut total = 0i64;
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += s.chi(d as i64) * d as i64;
            let e = n / d;
            if e != d {
                total += s.chi(e as i64) * e as i64;
            }
        }
        d += 1;
    }
    Ok(total)
}
