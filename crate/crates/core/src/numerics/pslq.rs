use super::PrecisionContext;
use crate::error::{Error, Result};
use rug::ops::DivRounding;
use rug::{Float, Integer, Rational};
use serde::Serialize;
use std::fmt;

fn to_fixed(x: &Float, prec: u32) -> Integer {
    let scaled = Float::with_val(x.prec() + prec + 8, x << prec);
    scaled.to_integer().expect("finite input")
}

fn sqrt_fixed(x: &Integer, prec: u32) -> Integer {
    Integer::from(x << prec).sqrt()
}

/// Rounds a fixed-point value to the nearest integer, still in fixed point.
fn round_fixed(x: &Integer, prec: u32) -> Integer {
    let half = Integer::from(1) << (prec - 1);
    ((x + half) >> prec) << prec
}

fn div_fixed(a: &Integer, b: &Integer, prec: u32) -> Integer {
    Integer::from(a << prec).div_floor(b.clone())
}

fn mul_fixed(a: &Integer, b: &Integer, prec: u32) -> Integer {
    Integer::from(a * b) >> prec
}

/// Integer relation `sum c_i x_i = 0` by PSLQ in fixed-point arithmetic.
///
/// `x` is read at the precision of `ctx`; `tol` bounds the residual and
/// `max_coeff` the coefficient height. Returns `None` when no relation below the
/// height bound is found within `max_steps`.
#[allow(clippy::needless_range_loop)]
pub fn pslq(
    x: &[Float],
    tol: &Float,
    max_coeff: &Integer,
    max_steps: usize,
    ctx: &PrecisionContext,
) -> Result<Option<Vec<Integer>>> {
    let n = x.len();
    if n < 2 {
        return Err(Error::InvalidArgument("PSLQ needs at least two numbers".into()));
    }
    let prec = ctx.bits() + 60;
    let tol = to_fixed(tol, prec);
    let xs: Vec<Integer> = x.iter().map(|v| to_fixed(v, prec)).collect();
    let min_x = xs.iter().map(|v| Integer::from(v.abs_ref())).min().expect("n >= 2");
    if min_x == 0 {
        return Err(Error::InvalidArgument("PSLQ needs nonzero inputs".into()));
    }
    if min_x < Integer::from(&tol / 100u32) {
        return Ok(None);
    }
    let one = Integer::from(1) << prec;
    let g = sqrt_fixed(&((Integer::from(4) << prec) / 3u32), prec);
    let mut a = vec![vec![Integer::new(); n]; n];
    let mut b = vec![vec![Integer::new(); n]; n];
    let mut h = vec![vec![Integer::new(); n]; n];
    for i in 0..n {
        a[i][i] = one.clone();
        b[i][i] = one.clone();
    }
    let mut s = vec![Integer::new(); n];
    for k in 0..n {
        let mut t = Integer::new();
        for v in &xs[k..] {
            t += Integer::from(v * v) >> prec;
        }
        s[k] = sqrt_fixed(&t, prec);
    }
    let t0 = s[0].clone();
    let mut y: Vec<Integer> = xs.iter().map(|v| div_fixed(v, &t0, prec)).collect();
    for v in s.iter_mut() {
        *v = div_fixed(v, &t0, prec);
    }
    for i in 0..n {
        if i + 1 < n && s[i] != 0 {
            h[i][i] = div_fixed(&s[i + 1], &s[i], prec);
        }
        for j in 0..i {
            let sjj = Integer::from(&s[j] * &s[j + 1]);
            if sjj != 0 {
                let num = -Integer::from(&y[i] * &y[j]);
                h[i][j] = div_fixed(&num, &sjj, prec);
            }
        }
    }
    let reduce = |i: usize,
                  j: usize,
                  h: &mut Vec<Vec<Integer>>,
                  a: &mut Vec<Vec<Integer>>,
                  b: &mut Vec<Vec<Integer>>,
                  y: &mut Vec<Integer>|
     -> bool {
        if h[j][j] == 0 {
            return false;
        }
        let t = round_fixed(&div_fixed(&h[i][j], &h[j][j], prec), prec);
        let dy = mul_fixed(&t, &y[i], prec);
        y[j] += dy;
        for k in 0..=j {
            let d = mul_fixed(&t, &h[j][k], prec);
            h[i][k] -= d;
        }
        for k in 0..n {
            let d = mul_fixed(&t, &a[j][k], prec);
            a[i][k] -= d;
            let d = mul_fixed(&t, &b[k][i], prec);
            b[k][j] += d;
        }
        true
    };
    for i in 1..n {
        for j in (0..i).rev() {
            reduce(i, j, &mut h, &mut a, &mut b, &mut y);
        }
    }
    let max_fixed = Integer::from(max_coeff << prec);
    for _ in 0..max_steps {
        let mut m = 0;
        let mut best = Integer::from(-1);
        let mut gp = g.clone();
        for i in 0..n - 1 {
            // g^(i+1) |H_ii|, compared in fixed point.
            let sz = (&gp * Integer::from(h[i][i].abs_ref())) >> (prec * (i as u32 + 1));
            if sz > best {
                best = sz;
                m = i;
            }
            gp *= &g;
        }
        y.swap(m, m + 1);
        h.swap(m, m + 1);
        a.swap(m, m + 1);
        for row in b.iter_mut() {
            row.swap(m, m + 1);
        }
        if m + 2 < n {
            let sq = Integer::from(h[m][m].square_ref()) + Integer::from(h[m][m + 1].square_ref());
            let t0 = sqrt_fixed(&(sq >> prec), prec);
            if t0 == 0 {
                break;
            }
            let t1 = div_fixed(&h[m][m], &t0, prec);
            let t2 = div_fixed(&h[m][m + 1], &t0, prec);
            for row in h.iter_mut().skip(m) {
                let t3 = row[m].clone();
                let t4 = row[m + 1].clone();
                row[m] = (Integer::from(&t1 * &t3) + Integer::from(&t2 * &t4)) >> prec;
                row[m + 1] = (Integer::from(&t1 * &t4) - Integer::from(&t2 * &t3)) >> prec;
            }
        }
        for i in m + 1..n {
            for j in (0..=(i - 1).min(m + 1)).rev() {
                // A zero pivot means the precision is exhausted for this row.
                if !reduce(i, j, &mut h, &mut a, &mut b, &mut y) {
                    break;
                }
            }
        }
        for i in 0..n {
            if Integer::from(y[i].abs_ref()) < tol {
                let vec: Vec<Integer> = (0..n).map(|j| round_fixed(&b[j][i], prec) >> prec).collect();
                if vec.iter().all(|v| Integer::from(v.abs_ref()) < *max_coeff) {
                    return Ok(Some(vec));
                }
            }
        }
        let rec = h.iter().flatten().map(|v| Integer::from(v.abs_ref())).max().unwrap_or_default();
        if rec != 0 {
            // Lower bound on the norm of any relation not yet excluded.
            let norm = (Integer::from(1) << (2 * prec)).div_floor(rec) / 100u32;
            if norm >= max_fixed {
                break;
            }
        }
    }
    Ok(None)
}

/// Integer polynomial found by [`recognize_algebraic`], coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Recognition {
    pub coeffs: Vec<String>,
    pub degree: usize,
    pub residual: String,
    pub polynomial: String,
}

impl Recognition {
    pub fn integer_coeffs(&self) -> Vec<Integer> {
        self.coeffs.iter().map(|c| c.parse().expect("integer text")).collect()
    }
}

struct PolyText<'a>(&'a [Integer]);

impl fmt::Display for PolyText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.0.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let abs = Integer::from(c.abs_ref());
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match d {
                0 => write!(f, "{abs}")?,
                _ => {
                    if abs != 1 {
                        write!(f, "{abs}*")?;
                    }
                    if d == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{d}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub(crate) fn poly_text(c: &[Integer]) -> String {
    PolyText(c).to_string()
}

/// `sum c_i x^i` by Horner's rule.
pub(crate) fn eval_poly(c: &[Integer], x: &Float, bits: u32) -> Float {
    let mut acc = Float::new(bits);
    for k in c.iter().rev() {
        acc *= x;
        acc += k;
    }
    acc
}

/// Lowest-degree primitive integer polynomial vanishing at `x`, if one exists below the
/// height bound `10^(digits/4)` with residual under `10^(-digits/2)`.
///
/// A candidate of degree `d` and height `H` is also rejected unless
/// `(d+1) log10 H <= digits - 20`.
pub fn recognize_algebraic(x: &Float, max_degree: usize, ctx: &PrecisionContext) -> Result<Option<Recognition>> {
    if max_degree == 0 {
        return Err(Error::InvalidArgument("max_degree must be at least 1".into()));
    }
    let max_coeff = Integer::from(Integer::u_pow_u(10, ctx.digits / 4));
    let residual_bound = ctx.pow10(-(i64::from(ctx.digits) / 2));
    let tol = ctx.pow10(-(i64::from(ctx.digits) * 3 / 4));
    for d in 1..=max_degree {
        if (ctx.digits as usize) < 10 * d {
            return Err(Error::InsufficientPrecision(format!(
                "degree {d} needs at least {} digits, have {}",
                10 * d,
                ctx.digits
            )));
        }
        let mut powers = Vec::with_capacity(d + 1);
        let mut p = ctx.float(1);
        for _ in 0..=d {
            powers.push(p.clone());
            p *= x;
        }
        if let Some(mut c) = pslq(&powers, &tol, &max_coeff, 2000 * (d + 1), ctx)? {
            while c.last().is_some_and(|v| *v == 0) {
                c.pop();
            }
            if c.len() < 2 {
                continue;
            }
            let mut g = Integer::new();
            for v in &c {
                g.gcd_mut(v);
            }
            if c.last().expect("nonempty") < &0 {
                g = -g;
            }
            for v in c.iter_mut() {
                v.div_exact_mut(&g);
            }
            let res = eval_poly(&c, x, ctx.bits()).abs();
            // A relation among d+1 numbers with height H is expected by chance at
            // residual near H^(-d), so the coefficients must use clearly fewer digits
            // than the input carries.
            let height = c.iter().map(|v| Integer::from(v.abs_ref())).max().expect("nonempty");
            let spent = c.len() as f64 * height.to_f64().log10();
            if res < residual_bound && spent <= f64::from(ctx.digits) - 20.0 {
                return Ok(Some(Recognition {
                    degree: c.len() - 1,
                    residual: super::decimal(&res, 5),
                    polynomial: poly_text(&c),
                    coeffs: c.iter().map(Integer::to_string).collect(),
                }));
            }
        }
    }
    Ok(None)
}

fn sturm_sign_changes(seq: &[Vec<Rational>], x: &Rational) -> usize {
    let mut last = 0i32;
    let mut changes = 0;
    for p in seq {
        let mut acc = Rational::new();
        for c in p.iter().rev() {
            acc *= x;
            acc += c;
        }
        let s = acc.cmp0() as i32;
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let lead = Rational::from(r.last().expect("nonempty") / b.last().expect("nonempty"));
        let shift = r.len() - 1 - db;
        for (k, c) in b.iter().enumerate() {
            r[shift + k] -= Rational::from(&lead * c);
        }
        r.pop();
        while r.last().is_some_and(|v| *v == 0) {
            r.pop();
        }
    }
    r
}

/// Real roots of an integer polynomial (ascending coefficients), sorted ascending.
///
/// Roots are isolated exactly with a Sturm sequence and then refined by bisection.
pub fn real_roots(coeffs: &[Integer], ctx: &PrecisionContext) -> Vec<Float> {
    let p: Vec<Rational> = coeffs.iter().map(Rational::from).collect();
    let mut dp: Vec<Rational> = p.iter().enumerate().skip(1).map(|(k, c)| Rational::from(c * k as u32)).collect();
    while dp.last().is_some_and(|v| *v == 0) {
        dp.pop();
    }
    let mut seq = vec![p.clone(), dp];
    while seq.last().is_some_and(|v| v.len() > 1) {
        let n = seq.len();
        let r: Vec<Rational> = poly_rem(&seq[n - 2], &seq[n - 1]).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            break;
        }
        seq.push(r);
    }
    let lead = p.last().expect("nonzero polynomial").clone().abs();
    let bound = Rational::from(1)
        + p.iter().map(|c| Rational::from(c.abs_ref()) / &lead).fold(Rational::new(), |m, v| m.max(v));
    let mut stack = vec![(-bound.clone(), bound)];
    let mut isolated = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        let count = sturm_sign_changes(&seq, &lo) - sturm_sign_changes(&seq, &hi);
        match count {
            0 => {}
            1 => isolated.push((lo, hi)),
            _ => {
                let mid = Rational::from(&lo + &hi) / 2u32;
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    let bits = ctx.bits();
    let mut roots: Vec<Float> = isolated
        .into_iter()
        .map(|(lo, hi)| {
            let mut lo = Float::with_val(bits, &lo);
            let mut hi = Float::with_val(bits, &hi);
            let slo = eval_poly(coeffs, &lo, bits).cmp0();
            for _ in 0..bits + 64 {
                let mid = Float::with_val(bits, &lo + &hi) / 2u32;
                let s = eval_poly(coeffs, &mid, bits).cmp0();
                if s == Some(std::cmp::Ordering::Equal) {
                    return mid;
                }
                if s == slo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Float::with_val(bits, &lo + &hi) / 2u32
        })
        .collect();
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    roots
}
