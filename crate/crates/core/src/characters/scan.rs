use super::{RQSpec, TauTable};
use crate::error::{Error, Result};
use crate::modeq::linalg::nullspace_integer;
use rug::{Integer, Rational};
use serde::Serialize;

/// Outcome of re-checking a relation past the scanned range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RelationStatus {
    /// Holds on the scanned range and on the re-verification range up to `up_to`.
    ReVerified { up_to: usize },
    /// Holds on the scanned range only; fails first at `first_failure`.
    Empirical { first_failure: usize },
}

/// `sum_j c_j tau(j n) = 0`, with `coeffs[j-1] = c_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauRelation {
    #[serde(serialize_with = "ser_ints")]
    pub coeffs: Vec<Integer>,
    #[serde(flatten)]
    pub status: RelationStatus,
}

fn ser_ints<S: serde::Serializer>(v: &[Integer], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

impl TauRelation {
    /// Nonzero `(j, c_j)` scaled so the largest `j` has coefficient 1.
    pub fn monic_terms(&self) -> Vec<(usize, Rational)> {
        let last = self.coeffs.iter().rposition(|c| *c != 0).expect("nonzero relation");
        let lc = self.coeffs[last].clone();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(j, c)| (j + 1, Rational::from((c.clone(), lc.clone()))))
            .collect()
    }

    /// Text like `-4*tau(n) + 3*tau(4n) + tau(16n)` in the monic normalisation.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, (j, c)) in self.monic_terms().into_iter().enumerate() {
            let neg = c < 0;
            let abs = Rational::from(c.abs_ref());
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if abs != 1 {
                out.push_str(&format!("{abs}*"));
            }
            if j == 1 {
                out.push_str("tau(n)");
            } else {
                out.push_str(&format!("tau({j}n)"));
            }
        }
        out + " = 0"
    }
}

/// First `n` in `from..=to` where the relation fails, if any.
pub fn verify_tau_relation(table: &TauTable, coeffs: &[Integer], from: usize, to: usize) -> Option<usize> {
    let j_max = coeffs.len();
    let t = table.prefix(j_max * to);
    (from..=to).find(|&n| {
        let mut s = Integer::new();
        for (j, c) in coeffs.iter().enumerate() {
            if *c != 0 {
                s += c * Integer::from(t[(j + 1) * n]);
            }
        }
        s != 0
    })
}

/// Basis of all relations `sum_{j<=J} c_j tau(j n) = 0` holding for `n <= n_max`.
///
/// The basis comes from the reduced row echelon form: one vector per free
/// column, scaled to primitive integers whose last nonzero entry is positive,
/// so the vector and [`TauRelation::to_text`] agree in sign. Each vector is
/// then re-checked on `(n_max, 4 n_max]`.
pub fn tau_relation_scan(spec: &RQSpec, j_max: usize, n_max: usize) -> Result<Vec<TauRelation>> {
    if j_max == 0 {
        return Err(Error::InvalidArgument("J must be positive".into()));
    }
    if n_max < j_max * j_max {
        return Err(Error::InvalidArgument(format!("n_max = {n_max} must be at least J^2 = {}", j_max * j_max)));
    }
    let table = TauTable::new(spec)?;
    let t = table.prefix(j_max * n_max);
    let rows: Vec<Vec<Integer>> = (1..=n_max).map(|n| (1..=j_max).map(|j| Integer::from(t[j * n])).collect()).collect();
    let basis = nullspace_integer(rows, j_max);
    let up_to = 4 * n_max;
    Ok(basis
        .into_iter()
        .map(|mut coeffs| {
            if coeffs.iter().rev().find(|c| **c != 0).is_some_and(|c| *c < 0) {
                coeffs.iter_mut().for_each(|c| *c = -c.clone());
            }
            let status = match verify_tau_relation(&table, &coeffs, n_max + 1, up_to) {
                None => RelationStatus::ReVerified { up_to },
                Some(n) => RelationStatus::Empirical { first_failure: n },
            };
            TauRelation { coeffs, status }
        })
        .collect())
}

/// All `n <= n_limit` where `tau(p0 n) != tau(n)`.
pub fn multiplicative_invariance_violations(spec: &RQSpec, p0: usize, n_limit: usize) -> Result<Vec<usize>> {
    let table = TauTable::new(spec)?;
    let t = table.prefix(p0 * n_limit);
    Ok((1..=n_limit).filter(|&n| t[p0 * n] != t[n]).collect())
}

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Whether the conjectured invariance `tau(p0 n) = tau(n)` is predicted for this spec:
/// `p0` prime, dividing `p`, and dividing neither `a` nor `b`.
pub fn invariance_predicted(spec: &RQSpec, p0: i64) -> Result<bool> {
    let s = spec.to_int()?;
    Ok(is_prime(p0) && s.p % p0 == 0 && s.a % p0 != 0 && s.b % p0 != 0)
}
