//! Modular-equation mining: monomial coefficient matrices and their exact kernels.

use super::linalg::nullspace_integer;
use super::poly::{BivariatePolynomial, Shape};
use crate::characters::RQSpec;
use crate::error::{Error, Result};
use crate::quantities::{n_series, n_series_via_derivative, rq_series, rq_series_via_normalization};
use crate::series::{lcm_u64, FormalSeries};
use rayon::prelude::*;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Extra coefficient equations demanded beyond the number of unknowns.
pub const GUARD_ROWS: usize = 30;

/// The quantity a recipe expands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    /// `R(a,b,p; q)`.
    R,
    /// `N(q) = q^(-1/6) f(-q)^(-4) M(q)`.
    N,
}

/// Which construction to use; the two must agree, so one checks the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Agile quotients, or `M` from the divisor sums.
    Primary,
    /// Character products, or `M` from the logarithmic derivative.
    Independent,
}

/// `quantity(spec; q^power)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecipe {
    pub quantity: Quantity,
    pub spec: RQSpec,
    #[serde(with = "crate::characters::rational_str")]
    pub power: Rational,
}

impl SeriesRecipe {
    pub fn r(spec: RQSpec, power: Rational) -> SeriesRecipe {
        SeriesRecipe { quantity: Quantity::R, spec, power }
    }

    pub fn n(spec: RQSpec, power: Rational) -> SeriesRecipe {
        SeriesRecipe { quantity: Quantity::N, spec, power }
    }

    /// Expands to `O(q^order)`.
    pub fn build(&self, order: &Rational, route: Route) -> Result<FormalSeries> {
        if self.power <= 0 {
            return Err(Error::InvalidArgument("substitution power must be positive".into()));
        }
        let inner = Rational::from(order / &self.power);
        let base = match (self.quantity, route) {
            (Quantity::R, Route::Primary) => rq_series(&self.spec, &inner)?,
            (Quantity::R, Route::Independent) => rq_series_via_normalization(&self.spec, &inner)?,
            (Quantity::N, Route::Primary) => n_series(&self.spec, &inner)?,
            (Quantity::N, Route::Independent) => n_series_via_derivative(&self.spec, &inner)?,
        };
        base.substitute_power(&self.power).map(|s| s.truncated(order))
    }

    /// Exponent of the first term: `Q * power` for `R`, `-power/6` for `N`.
    pub fn lead_exponent(&self) -> Rational {
        match self.quantity {
            Quantity::R => self.spec.q_exponent() * &self.power,
            Quantity::N => Rational::from(-&self.power) / 6u32,
        }
    }

    /// Expands to `O(q^(order + margin))`, failing if the result vanishes.
    pub fn build_with_margin(&self, order: &Rational, margin: &Rational, route: Route) -> Result<FormalSeries> {
        let s = self.build(&(Rational::from(order + margin) + 1u32), route)?;
        if s.is_zero() {
            return Err(Error::NotInvertible(format!("{self} vanishes to its order")));
        }
        Ok(s)
    }
}

/// Extra order needed so that products `u^i v^j` with `i, j <= s` stay exact below the target.
fn power_margin(u: &SeriesRecipe, v: &SeriesRecipe, s: u32) -> Rational {
    let neg = |r: Rational| if r < 0 { -r } else { Rational::new() };
    (neg(u.lead_exponent()) + neg(v.lead_exponent())) * s
}

impl std::fmt::Display for SeriesRecipe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self.quantity {
            Quantity::R => "R",
            Quantity::N => "N",
        };
        if self.power == 1 {
            write!(f, "{name}({};q)", self.spec)
        } else {
            write!(f, "{name}({};q^{})", self.spec, self.power)
        }
    }
}

/// A mining task: find integer `P` with `P(u, v) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiningJob {
    pub name: String,
    pub u: SeriesRecipe,
    pub v: SeriesRecipe,
    pub shape: Shape,
    /// Coefficient equations are taken at exponents below this order.
    #[serde(with = "crate::characters::rational_str")]
    pub order: Rational,
    /// Order of the independent re-check; 3/2 of `order` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub verify_order: Option<Rational>,
}

mod opt_rational {
    use rug::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| s.parse::<Rational>().map_err(serde::de::Error::custom)).transpose()
    }
}

impl MiningJob {
    pub fn new(name: &str, u: SeriesRecipe, v: SeriesRecipe, shape: Shape, order: Rational) -> MiningJob {
        MiningJob { name: name.to_string(), u, v, shape, order, verify_order: None }
    }

    pub fn effective_verify_order(&self) -> Rational {
        self.verify_order.clone().unwrap_or_else(|| Rational::from(&self.order * 3u32) / 2u32)
    }
}

/// Outcome of substituting series into a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    HoldsToOrder(Rational),
    FailsAt(Rational),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::HoldsToOrder(_))
    }
}

/// Checks `P(u, v) = O(q^order)`.
pub fn verify_relation(
    p: &BivariatePolynomial,
    u: &FormalSeries,
    v: &FormalSeries,
    order: &Rational,
) -> Result<Verdict> {
    let res = p.evaluate(u, v)?;
    if let Some(e) = res.valuation() {
        if e < *order && e < res.order() {
            return Ok(Verdict::FailsAt(e));
        }
    }
    if res.order() < *order {
        return Err(Error::BeyondTruncation { requested: order.to_string(), order: res.order().to_string() });
    }
    Ok(Verdict::HoldsToOrder(order.clone()))
}

/// A kernel vector that passed the independent re-check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinedPolynomial {
    pub polynomial: BivariatePolynomial,
    pub degree: u32,
    pub terms: usize,
    #[serde(with = "crate::characters::rational_str")]
    pub verified_order: Rational,
}

/// A kernel vector that failed the independent re-check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DroppedCandidate {
    pub polynomial: BivariatePolynomial,
    #[serde(with = "crate::characters::rational_str")]
    pub first_failure: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MiningReport {
    pub job: MiningJob,
    /// Nonzero coefficient equations used.
    pub rows: usize,
    pub unknowns: usize,
    pub polynomials: Vec<MinedPolynomial>,
    pub dropped_candidates: Vec<DroppedCandidate>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Integer coefficient rows of the monomial columns, from the smallest exponent up to `order`.
fn coefficient_rows(cols: &[FormalSeries], order: &Rational) -> Result<Vec<Vec<Integer>>> {
    let d = cols.iter().fold(1u64, |acc, c| lcm_u64(acc, c.denom()));
    let rebased: Vec<FormalSeries> = cols.iter().map(|c| c.rebased(d)).collect();
    let lo = rebased.iter().filter(|c| !c.is_zero()).map(|c| c.lead_numer()).min().unwrap_or(0);
    let hi = crate::series::ceil_rational(&Rational::from(order * d)).to_i64().unwrap_or(i64::MAX);
    for c in &rebased {
        if c.prec_numer() < hi {
            return Err(Error::BeyondTruncation { requested: order.to_string(), order: c.order().to_string() });
        }
    }
    let zero = Rational::new();
    let rows: Vec<Vec<Integer>> = (lo..hi)
        .into_par_iter()
        .map(|k| {
            let vals: Vec<&Rational> = rebased
                .iter()
                .map(|c| {
                    let idx = k - c.lead_numer();
                    if idx < 0 || c.is_zero() {
                        &zero
                    } else {
                        &c.coeffs()[idx as usize]
                    }
                })
                .collect();
            let mut l = Integer::from(1);
            for v in &vals {
                if **v != 0 {
                    l.lcm_mut(v.denom());
                }
            }
            vals.iter()
                .map(|v| if **v == 0 { Integer::new() } else { v.numer() * Integer::from(&l / v.denom()) })
                .collect()
        })
        .filter(|r: &Vec<Integer>| r.iter().any(|x| *x != 0))
        .collect();
    Ok(rows)
}

/// Kernel of the monomial matrix, split into blocks of columns that share no equation.
fn kernel_by_blocks(rows: &[Vec<Integer>], ncols: usize) -> Result<Vec<Vec<Integer>>> {
    let mut dsu = Dsu((0..ncols).collect());
    for r in rows {
        let mut first: Option<usize> = None;
        for (c, x) in r.iter().enumerate() {
            if *x != 0 {
                match first {
                    None => first = Some(c),
                    Some(f) => dsu.union(f, c),
                }
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in 0..ncols {
        let root = dsu.find(c);
        blocks.entry(root).or_default().push(c);
    }
    let blocks: Vec<Vec<usize>> = blocks.into_values().collect();
    let mut block_rows: Vec<Vec<Vec<Integer>>> = vec![Vec::new(); blocks.len()];
    let mut col_block = vec![0usize; ncols];
    for (b, cols) in blocks.iter().enumerate() {
        for &c in cols {
            col_block[c] = b;
        }
    }
    for r in rows {
        if let Some(c) = r.iter().position(|x| *x != 0) {
            let b = col_block[c];
            block_rows[b].push(blocks[b].iter().map(|&k| r[k].clone()).collect());
        }
    }
    let counts: Vec<usize> = block_rows.iter().map(Vec::len).collect();
    let kernels: Vec<Vec<Vec<Integer>>> =
        blocks.iter().zip(block_rows).map(|(cols, rs)| nullspace_integer(rs, cols.len())).collect();
    let mut out = Vec::new();
    for ((cols, ks), n) in blocks.iter().zip(kernels).zip(counts) {
        // A kernel found with too few equations cannot be trusted.
        if !ks.is_empty() && n < cols.len() + GUARD_ROWS {
            return Err(Error::ShapeTooSmall { rows: n, unknowns: cols.len(), needed: cols.len() + GUARD_ROWS });
        }
        for k in ks {
            let mut full = vec![Integer::new(); ncols];
            for (&c, x) in cols.iter().zip(k) {
                full[c] = x;
            }
            out.push(full);
        }
    }
    Ok(out)
}

/// `u^i v^j` where a zeroth power counts as the exact constant 1.
pub(crate) fn exact_product(
    ui: &FormalSeries,
    i: u32,
    vj: &FormalSeries,
    j: u32,
    order: &Rational,
) -> Result<FormalSeries> {
    Ok(match (i, j) {
        (0, 0) => FormalSeries::one(order)?,
        (0, _) => vj.truncated(order),
        (_, 0) => ui.truncated(order),
        _ => ui.mul(vj).truncated(order),
    })
}

/// All monomial series `u^i v^j` of the shape, computed in parallel.
fn monomial_columns(
    u: &FormalSeries,
    v: &FormalSeries,
    mons: &[(u32, u32)],
    order: &Rational,
) -> Result<Vec<FormalSeries>> {
    let s = mons.iter().map(|&(i, j)| i.max(j)).max().unwrap_or(0);
    let upow: Vec<FormalSeries> = (0..=s).map(|k| u.pow_int(i64::from(k))).collect::<Result<_>>()?;
    let vpow: Vec<FormalSeries> = (0..=s).map(|k| v.pow_int(i64::from(k))).collect::<Result<_>>()?;
    mons.par_iter()
        .map(|&(i, j)| exact_product(&upow[i as usize], i, &vpow[j as usize], j, order))
        .collect::<Result<_>>()
}

/// Mines relations between two series; kernel vectors come back canonical and sorted.
pub fn mine_series(
    u: &FormalSeries,
    v: &FormalSeries,
    shape: Shape,
    order: &Rational,
) -> Result<Vec<BivariatePolynomial>> {
    mine_counted(u, v, shape, order).map(|(p, _)| p)
}

fn mine_counted(
    u: &FormalSeries,
    v: &FormalSeries,
    shape: Shape,
    order: &Rational,
) -> Result<(Vec<BivariatePolynomial>, usize)> {
    let mons = shape.monomials();
    let cols = monomial_columns(u, v, &mons, order)?;
    let d = cols.iter().fold(1u64, |acc, c| lcm_u64(acc, c.denom()));
    let lo = cols.iter().filter_map(|c| c.valuation()).min().unwrap_or_default();
    let span = Rational::from(order - &lo) * d;
    let available = crate::series::ceil_rational(&span).to_usize().unwrap_or(0);
    if available < mons.len() + GUARD_ROWS {
        return Err(Error::ShapeTooSmall { rows: available, unknowns: mons.len(), needed: mons.len() + GUARD_ROWS });
    }
    let rows = coefficient_rows(&cols, order)?;
    let kernel = kernel_by_blocks(&rows, mons.len())?;
    let mut polys: Vec<BivariatePolynomial> =
        kernel.into_iter().map(|k| BivariatePolynomial::from_terms(mons.iter().copied().zip(k)).canonical()).collect();
    polys.sort_by(|a, b| {
        (a.total_degree(), a.term_count())
            .cmp(&(b.total_degree(), b.term_count()))
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    Ok((polys, rows.len()))
}

/// Runs a job: mine on the primary construction, re-check on the independent one.
pub fn mine(job: &MiningJob) -> Result<MiningReport> {
    let margin = power_margin(&job.u, &job.v, job.shape.max_degree());
    let u = job.u.build_with_margin(&job.order, &margin, Route::Primary)?;
    let v = job.v.build_with_margin(&job.order, &margin, Route::Primary)?;
    let mons = job.shape.monomials();
    let (polys, rows) = mine_counted(&u, &v, job.shape, &job.order)?;
    let vo = job.effective_verify_order();
    let u2 = job.u.build_with_margin(&vo, &margin, Route::Independent)?;
    let v2 = job.v.build_with_margin(&vo, &margin, Route::Independent)?;
    let mut polynomials = Vec::new();
    let mut dropped_candidates = Vec::new();
    for p in polys {
        match verify_relation(&p, &u2, &v2, &vo)? {
            Verdict::HoldsToOrder(o) => polynomials.push(MinedPolynomial {
                degree: p.total_degree(),
                terms: p.term_count(),
                polynomial: p,
                verified_order: o,
            }),
            Verdict::FailsAt(e) => dropped_candidates.push(DroppedCandidate { polynomial: p, first_failure: e }),
        }
    }
    Ok(MiningReport { job: job.clone(), rows, unknowns: mons.len(), polynomials, dropped_candidates })
}

/// Mining between quantities of different specs; identical to [`mine`] with a generated name.
pub fn mine_cross(u: SeriesRecipe, v: SeriesRecipe, shape: Shape, order: Rational) -> Result<MiningReport> {
    let name = format!("{u} vs {v}");
    mine(&MiningJob::new(&name, u, v, shape, order))
}
