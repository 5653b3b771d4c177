use super::{rational_float, PrecisionContext};
use crate::characters::RQSpec;
use crate::error::{Error, Result};
use crate::quantities::rq_series;
use crate::series::FormalSeries;
use rug::{Float, Rational};

const MAX_FACTORS: u64 = 10_000_000;

/// `exp(-pi sqrt(r))`.
pub fn nome(r: &Rational, ctx: &PrecisionContext) -> Float {
    let s = rational_float(ctx, r).sqrt();
    (-(ctx.pi() * s)).exp()
}

fn check_q(q: &Float) -> Result<()> {
    if *q <= 0 || *q >= 1 {
        return Err(Error::InvalidArgument(format!("q must lie in (0, 1), got {}", q.to_f64())));
    }
    Ok(())
}

fn qpow(q: &Float, e: &Rational, ctx: &PrecisionContext) -> Float {
    let ln = Float::with_val(ctx.bits(), q.ln_ref());
    (ln * rational_float(ctx, e)).exp()
}

/// Multiplies `prod_{n>=0} (1 - x q_step^n)` for each starting value `x`.
///
/// Stops once every running power is below `tol (1 - q_step)`, which bounds the
/// log of the remaining tail by `tol` up to a constant.
fn geometric_product(mut xs: Vec<Float>, step: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let tol = ctx.tail_tolerance() * Float::with_val(ctx.bits(), 1 - step);
    let mut acc = ctx.float(1);
    for n in 0..MAX_FACTORS {
        let mut done = true;
        for x in xs.iter_mut() {
            acc *= Float::with_val(ctx.bits(), 1 - &*x);
            *x *= step;
            if Float::with_val(ctx.bits(), x.abs_ref()) >= tol {
                done = false;
            }
        }
        // A factor bigger than one (negative exponent) keeps the loop alive.
        if done && n > 0 {
            return Ok(acc);
        }
    }
    Err(Error::NonConvergence("infinite product did not reach the tail tolerance".into()))
}

/// `[a,p;q] = prod_{n>=0} (1 - q^(a+np))(1 - q^(p-a+np))`.
pub fn eval_agile(a: &Rational, p: &Rational, q: &Float, ctx: &PrecisionContext) -> Result<Float> {
    check_q(q)?;
    if *p <= 0 {
        return Err(Error::InvalidArgument("p must be positive".into()));
    }
    let step = qpow(q, p, ctx);
    let pa = Rational::from(p - a);
    geometric_product(vec![qpow(q, a, ctx), qpow(q, &pa, ctx)], &step, ctx)
}

/// `q^(p/12 - a/2 + a^2/(2p)) [a,p;q]`.
pub fn eval_normalized_agile(a: &Rational, p: &Rational, q: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let w = crate::quantities::agile_normalizer(a, p);
    Ok(qpow(q, &w, ctx) * eval_agile(a, p, q, ctx)?)
}

/// `f(-q) = prod_{n>=1} (1 - q^n)`.
pub fn eval_euler_f(q: &Float, ctx: &PrecisionContext) -> Result<Float> {
    check_q(q)?;
    geometric_product(vec![Float::with_val(ctx.bits(), q)], q, ctx)
}

/// `R(a,b,p;q) = q^Q [a,p;q] / [b,p;q]` from the products.
pub fn eval_rq(spec: &RQSpec, q: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let num = eval_agile(&spec.a, &spec.p, q, ctx)?;
    let den = eval_agile(&spec.b, &spec.p, q, ctx)?;
    if den == 0 {
        return Err(Error::InvalidArgument("denominator product vanishes".into()));
    }
    Ok(qpow(q, &spec.q_exponent(), ctx) * num / den)
}

fn require_strip(spec: &RQSpec) -> Result<()> {
    for c in [&spec.a, &spec.b] {
        if *c <= 0 || *c >= spec.p {
            return Err(Error::InvalidArgument("the theta and cosh forms need 0 < a, b < p".into()));
        }
    }
    Ok(())
}

/// Prefactor `exp(x (a-b)/2 - x (a^2-b^2)/(2p))` shared by the theta and cosh forms.
fn theta_prefactor(spec: &RQSpec, x: &Float, ctx: &PrecisionContext) -> Float {
    let e = Float::with_val(ctx.bits(), x * rational_float(ctx, &spec.q_exponent()));
    (-e).exp()
}

/// `R(a,b,p;e^(-x))` from the sum of `cosh(n x (p-2c)/2) / (n sinh(p n x/2))` over `c = b` minus `c = a`.
pub fn eval_rq_exp_sum(spec: &RQSpec, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    require_strip(spec)?;
    if *x <= 0 {
        return Err(Error::InvalidArgument("x must be positive".into()));
    }
    let half = |c: &Rational| rational_float(ctx, &(&spec.p - Rational::from(2 * c))) / 2u32;
    let ca = half(&spec.a);
    let cb = half(&spec.b);
    let hp = rational_float(ctx, &spec.p) / 2u32;
    let tol = ctx.tail_tolerance();
    let mut sum = ctx.float(0);
    for n in 1..MAX_FACTORS {
        let nx = Float::with_val(ctx.bits(), x * n);
        let s = Float::with_val(ctx.bits(), &hp * &nx).sinh() * n;
        let tb = Float::with_val(ctx.bits(), &cb * &nx).cosh();
        let ta = Float::with_val(ctx.bits(), &ca * &nx).cosh();
        let term = (tb - ta) / s;
        let big = Float::with_val(ctx.bits(), &cb * &nx).abs().max(&Float::with_val(ctx.bits(), &ca * &nx).abs());
        // Each cosh/sinh ratio is below 2 exp(-(p/2 - max|c|) n x) / n.
        let bound = Float::with_val(ctx.bits(), &big - Float::with_val(ctx.bits(), &hp * &nx)).exp() * 4u32;
        sum += term;
        if bound < tol {
            return Ok(theta_prefactor(spec, x, ctx) * sum.exp());
        }
    }
    Err(Error::NonConvergence("cosh series".into()))
}

/// `theta_4(iy, q) = 1 + 2 sum (-1)^n q^(n^2) cosh(2ny)`.
pub fn eval_theta4(y: &Float, q: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *q < 0 || *q >= 1 {
        return Err(Error::InvalidArgument("theta_4 needs 0 <= q < 1".into()));
    }
    if *q == 0 {
        return Ok(ctx.float(1));
    }
    let lnq = Float::with_val(ctx.bits(), q.ln_ref());
    // Terms decrease once n > |y| / (-ln q).
    let peak = (Float::with_val(ctx.bits(), y.abs_ref()) / Float::with_val(ctx.bits(), -&lnq)).to_f64().ceil();
    let tol = ctx.tail_tolerance();
    let mut sum = ctx.float(1);
    let mut max_term = ctx.float(1);
    for n in 1..MAX_FACTORS {
        let nf = ctx.float(n);
        let mag = (Float::with_val(ctx.bits(), &nf * &nf) * &lnq).exp()
            * Float::with_val(ctx.bits(), y * Float::with_val(ctx.bits(), &nf * 2u32)).cosh()
            * 2u32;
        if mag > max_term {
            max_term = mag.clone();
        }
        if n % 2 == 1 {
            sum -= &mag;
        } else {
            sum += &mag;
        }
        if (n as f64) > peak && mag < Float::with_val(ctx.bits(), &tol * &max_term) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence("theta_4 series".into()))
}

/// Triple-product form `prod_{n>=1} (1-q^(2n))(1-q^(2n-1) e^(-2y))(1-q^(2n-1) e^(2y))`.
pub fn eval_theta4_product(y: &Float, q: &Float, ctx: &PrecisionContext) -> Result<Float> {
    check_q(q)?;
    let q2 = Float::with_val(ctx.bits(), q.square_ref());
    let ey = Float::with_val(ctx.bits(), y * 2u32).exp();
    let xs = vec![q2.clone(), Float::with_val(ctx.bits(), q / &ey), Float::with_val(ctx.bits(), q * &ey)];
    geometric_product(xs, &q2, ctx)
}

/// `R(a,b,p;e^(-x))` as a prefactor times a quotient of two `theta_4` values at nome `e^(-px/2)`.
pub fn eval_rq_theta(spec: &RQSpec, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    require_strip(spec)?;
    let p = rational_float(ctx, &spec.p);
    let nome = (-(Float::with_val(ctx.bits(), &p * x) / 2u32)).exp();
    let y = |c: &Rational| rational_float(ctx, &(&spec.p - Rational::from(2 * c))) * x / 4u32;
    let num = eval_theta4(&y(&spec.a), &nome, ctx)?;
    let den = eval_theta4(&y(&spec.b), &nome, ctx)?;
    Ok(theta_prefactor(spec, x, ctx) * num / den)
}

/// Sums the terms of a truncated series at `q`.
pub fn eval_series(s: &FormalSeries, q: &Float, ctx: &PrecisionContext) -> Float {
    let lnq = Float::with_val(ctx.bits(), q.ln_ref());
    let mut acc = ctx.float(0);
    for (e, c) in s.terms() {
        let t = (Float::with_val(ctx.bits(), &lnq * rational_float(ctx, &e))).exp() * rational_float(ctx, c);
        acc += t;
    }
    acc
}

/// Series order whose first omitted power is negligible at `q`.
pub(crate) fn order_for(q: &Float, ctx: &PrecisionContext) -> Result<u64> {
    check_q(q)?;
    let lnq = -Float::with_val(ctx.bits(), q.ln_ref()).to_f64();
    let need = f64::from(ctx.digits + ctx.guard + 15) * std::f64::consts::LN_10;
    Ok((need / lnq).ceil() as u64 + 20)
}

/// `dR/dq` by differentiating the exact series termwise and evaluating the result.
pub fn eval_rq_derivative(spec: &RQSpec, q: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let order = order_for(q, ctx)?;
    let s = rq_series(spec, &Rational::from(order))?;
    Ok(eval_series(&s.q_derivative(), q, ctx) / q)
}
