use super::{rational_float, PrecisionContext};
use crate::error::{Error, Result};
use rug::ops::Pow;
use rug::{Float, Rational};

/// Continued fractions with known closed forms.
#[derive(Clone, Debug, PartialEq)]
pub enum CfKind {
    /// `1/((1-ab)+) (a-bq)(b-aq)/((1-ab)(q^2+1)+) (a-bq^3)(b-aq^3)/((1-ab)(q^4+1)+) ...`
    GeneralP { a: Float, b: Float },
    /// `q^(1/5)/(1+) q/(1+) q^2/(1+) ...`
    Rr,
    /// `q^(1/2)/((1+q)+) q^2/((1+q^3)+) q^4/((1+q^5)+) ...`
    Rgg,
    /// `q^(1/3)/(1+) (q+q^2)/(1+) (q^2+q^4)/(1+) ...`
    Cubic,
    /// `(1 - q^(B-A)) P(q^A, q^B, q^(A+B))`, equal to the normalised quotient with
    /// `a = 2A + 3p/4`, `b = 2B + p/4`, `p = 4(A+B)`.
    Quotient { big_a: Rational, big_b: Rational },
}

const MAX_DEPTH: usize = 1 << 20;

/// `a_1/(b_1 + a_2/(b_2 + ...))` truncated at `depth`, evaluated backwards.
fn backward<A, B>(a: &A, b: &B, depth: usize, ctx: &PrecisionContext) -> Result<Float>
where
    A: Fn(usize) -> Float,
    B: Fn(usize) -> Float,
{
    let mut t = b(depth);
    for n in (1..depth).rev() {
        if t == 0 {
            return Err(Error::InvalidArgument(format!("zero denominator at depth {}", n + 1)));
        }
        t = b(n) + a(n + 1) / t;
    }
    if t == 0 {
        return Err(Error::InvalidArgument("zero denominator at depth 1".into()));
    }
    Ok(Float::with_val(ctx.bits(), a(1) / t))
}

/// Doubles the depth until the value moves by less than the tail tolerance.
fn converge<A, B>(a: A, b: B, ctx: &PrecisionContext) -> Result<Float>
where
    A: Fn(usize) -> Float,
    B: Fn(usize) -> Float,
{
    let tol = ctx.tail_tolerance();
    let mut depth = 8;
    let mut prev = backward(&a, &b, depth, ctx)?;
    while depth < MAX_DEPTH {
        depth *= 2;
        let next = backward(&a, &b, depth, ctx)?;
        let diff = Float::with_val(ctx.bits(), &next - &prev).abs();
        let scale = Float::with_val(ctx.bits(), next.abs_ref()).max(&ctx.float(1));
        if diff <= Float::with_val(ctx.bits(), &tol * &scale) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NonConvergence(format!("continued fraction did not settle by depth {MAX_DEPTH}")))
}

fn general_p(a: &Float, b: &Float, q: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let ab1 = Float::with_val(ctx.bits(), 1 - Float::with_val(ctx.bits(), a * b));
    let qq = Float::with_val(ctx.bits(), q.square_ref());
    let num = |n: usize| {
        if n == 1 {
            return ctx.float(1);
        }
        let e = Float::with_val(ctx.bits(), q.pow(2 * n as u32 - 3));
        let x = Float::with_val(ctx.bits(), a - Float::with_val(ctx.bits(), b * &e));
        let y = Float::with_val(ctx.bits(), b - Float::with_val(ctx.bits(), a * &e));
        x * y
    };
    let den = |n: usize| {
        if n == 1 {
            return ab1.clone();
        }
        let e = Float::with_val(ctx.bits(), (&qq).pow(n as u32 - 1));
        Float::with_val(ctx.bits(), &ab1 * (e + 1u32))
    };
    converge(num, den, ctx)
}

fn qpow(q: &Float, e: &Rational, ctx: &PrecisionContext) -> Float {
    (Float::with_val(ctx.bits(), q.ln_ref()) * rational_float(ctx, e)).exp()
}

/// Evaluates the continued fraction at real `q` in `(0, 1)`.
pub fn eval_cf(kind: &CfKind, q: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *q <= 0 || *q >= 1 {
        return Err(Error::InvalidArgument("continued fractions need 0 < q < 1".into()));
    }
    let one = || ctx.float(1);
    let pw = |k: usize| Float::with_val(ctx.bits(), q.pow(k as u32));
    match kind {
        CfKind::GeneralP { a, b } => general_p(a, b, q, ctx),
        CfKind::Rr => {
            let lead = qpow(q, &Rational::from((1, 5)), ctx);
            converge(|n| if n == 1 { lead.clone() } else { pw(n - 1) }, |_| one(), ctx)
        }
        CfKind::Rgg => {
            let lead = qpow(q, &Rational::from((1, 2)), ctx);
            converge(|n| if n == 1 { lead.clone() } else { pw(2 * n - 2) }, |n| pw(2 * n - 1) + 1u32, ctx)
        }
        CfKind::Cubic => {
            let lead = qpow(q, &Rational::from((1, 3)), ctx);
            converge(|n| if n == 1 { lead.clone() } else { pw(n - 1) + pw(2 * n - 2) }, |_| one(), ctx)
        }
        CfKind::Quotient { big_a, big_b } => {
            if *big_a <= 0 || *big_b <= 0 {
                return Err(Error::InvalidArgument("A and B must be positive".into()));
            }
            let a = qpow(q, big_a, ctx);
            let b = qpow(q, big_b, ctx);
            let s = qpow(q, &Rational::from(big_a + big_b), ctx);
            let lead = 1 - qpow(q, &Rational::from(big_b - big_a), ctx);
            Ok(lead * general_p(&a, &b, &s, ctx)?)
        }
    }
}
