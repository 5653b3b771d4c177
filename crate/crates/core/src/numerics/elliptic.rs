use super::{rational_float, PrecisionContext};
use crate::error::{Error, Result};
use rug::ops::Pow;
use rug::{Float, Rational};
use serde::Serialize;

/// Arithmetic-geometric mean and the number of iterations it took.
pub fn agm(a: &Float, b: &Float, ctx: &PrecisionContext) -> (Float, u32) {
    let mut a = Float::with_val(ctx.bits(), a);
    let mut b = Float::with_val(ctx.bits(), b);
    let tol = ctx.tail_tolerance();
    let mut n = 0;
    while n < 200 {
        let diff = Float::with_val(ctx.bits(), &a - &b).abs();
        if diff <= Float::with_val(ctx.bits(), &a * &tol) {
            break;
        }
        let next_a = Float::with_val(ctx.bits(), &a + &b) / 2u32;
        let next_b = Float::with_val(ctx.bits(), &a * &b).sqrt();
        a = next_a;
        b = next_b;
        n += 1;
    }
    (a, n)
}

/// `K(k) = pi / (2 agm(1, k'))` for `0 <= k < 1`.
pub fn elliptic_k(k: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *k < 0 || *k >= 1 {
        return Err(Error::InvalidArgument(format!("elliptic modulus must lie in [0, 1), got {}", k.to_f64())));
    }
    let kp = Float::with_val(ctx.bits(), 1 - Float::with_val(ctx.bits(), k.square_ref())).sqrt();
    let one = ctx.float(1);
    let (m, _) = agm(&one, &kp, ctx);
    Ok(ctx.pi() / (m * 2u32))
}

fn complement(k: &Float, ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.bits(), 1 - Float::with_val(ctx.bits(), k.square_ref())).sqrt()
}

/// Singular modulus data at `q = exp(-pi sqrt(r))`.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticData {
    pub r: Rational,
    pub k: Float,
    pub kp: Float,
    /// `K(k)`.
    pub big_k: Float,
    /// `K(k')`.
    pub big_kp: Float,
    pub q: Float,
    /// Newton steps after bracketing.
    pub newton_steps: u32,
}

#[derive(Serialize)]
struct EllipticJson {
    r: String,
    k: String,
    kp: String,
    big_k: String,
    q: String,
}

impl EllipticData {
    pub fn to_json(&self, digits: u32) -> serde_json::Value {
        serde_json::to_value(EllipticJson {
            r: self.r.to_string(),
            k: super::decimal(&self.k, digits),
            kp: super::decimal(&self.kp, digits),
            big_k: super::decimal(&self.big_k, digits),
            q: super::decimal(&self.q, digits),
        })
        .expect("plain strings serialise")
    }
}

/// `K(k')/K(k)`, decreasing from infinity to zero on `(0, 1)`.
fn ratio(k: &Float, ctx: &PrecisionContext) -> Result<(Float, Float, Float)> {
    let kp = complement(k, ctx);
    let big_k = elliptic_k(k, ctx)?;
    let big_kp = elliptic_k(&kp, ctx)?;
    Ok((Float::with_val(ctx.bits(), &big_kp / &big_k), big_k, big_kp))
}

/// Solves `K(k')/K(k) = sqrt(r)`: bisection to about ten digits, then Newton with
/// `d/dk (K'/K) = -pi / (2 k k'^2 K^2)`.
pub fn singular_modulus(r: &Rational, ctx: &PrecisionContext) -> Result<EllipticData> {
    if *r <= 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let target = rational_float(ctx, r).sqrt();
    let mut lo = ctx.float(0);
    let mut hi = ctx.float(1);
    let mut mid = ctx.float(0.5);
    let coarse = ctx.pow10(-10);
    let mut iters = 0u32;
    // Bisection on k where the ratio is monotone; stop once the bracket is relatively narrow.
    while iters < 200 {
        mid = Float::with_val(ctx.bits(), &lo + &hi) / 2u32;
        let (rho, _, _) = ratio(&mid, ctx)?;
        if rho > target {
            lo = mid.clone();
        } else {
            hi = mid.clone();
        }
        iters += 1;
        let width = Float::with_val(ctx.bits(), &hi - &lo);
        if width < Float::with_val(ctx.bits(), &mid * &coarse) {
            break;
        }
    }
    let mut k = mid;
    // The ratio itself is only good to about the tail tolerance.
    let tol = ctx.pow10(-(i64::from(ctx.digits + ctx.guard / 2)));
    let mut steps = 0u32;
    loop {
        if iters >= 200 {
            return Err(Error::NonConvergence(format!("singular modulus for r = {r}")));
        }
        let (rho, big_k, _) = ratio(&k, ctx)?;
        let kp2 = 1 - Float::with_val(ctx.bits(), k.square_ref());
        let deriv = -ctx.pi() / (Float::with_val(ctx.bits(), &k * &kp2) * big_k.square() * 2u32);
        let step = (rho - &target) / deriv;
        k -= &step;
        steps += 1;
        iters += 1;
        if step.abs() <= Float::with_val(ctx.bits(), &k * &tol) {
            break;
        }
    }
    let kp = complement(&k, ctx);
    let (_, big_k, big_kp) = ratio(&k, ctx)?;
    let q = super::products::nome(r, ctx);
    Ok(EllipticData { r: r.clone(), k, kp, big_k, big_kp, q, newton_steps: steps })
}

/// Independent route: `k = theta_2(q)^2 / theta_3(q)^2` from the theta series.
pub fn singular_modulus_theta(r: &Rational, ctx: &PrecisionContext) -> Float {
    let q = super::products::nome(r, ctx);
    let tol = ctx.tail_tolerance();
    let mut t2 = ctx.float(0);
    let mut t3 = ctx.float(1);
    let mut n: u32 = 0;
    loop {
        // theta_2 = 2 sum q^((n+1/2)^2), theta_3 = 1 + 2 sum q^(n^2)
        let e2 = Float::with_val(ctx.bits(), f64::from(2 * n + 1).powi(2) / 4.0);
        let a = Float::with_val(ctx.bits(), (&q).pow(&e2));
        t2 += Float::with_val(ctx.bits(), &a * 2u32);
        if n > 0 {
            let b = Float::with_val(ctx.bits(), (&q).pow(n * n));
            t3 += b * 2u32;
        }
        if a < tol {
            break;
        }
        n += 1;
    }
    (t2 / t3).square()
}
