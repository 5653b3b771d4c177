use super::checks::{CheckReport, Verdict};
use super::{rational_float, PrecisionContext};
use crate::characters::RQSpec;
use crate::error::{Error, Result};
use rug::ops::Pow;
use rug::{Float, Rational};

/// Minimal complex arithmetic on pairs of floats.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Complex {
        Complex { re, im }
    }

    pub fn real(x: Float) -> Complex {
        let im = Float::new(x.prec());
        Complex { re: x, im }
    }

    /// `r e^(i theta)`.
    pub fn polar(r: &Float, theta: &Float) -> Complex {
        let (s, c) = Float::with_val(theta.prec(), theta).sin_cos(Float::new(theta.prec()));
        Complex { re: Float::with_val(r.prec(), r * c), im: Float::with_val(r.prec(), r * s) }
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        let p = self.re.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        Complex { re, im }
    }

    pub fn div(&self, o: &Complex) -> Complex {
        let p = self.re.prec();
        let d = Float::with_val(p, o.re.square_ref()) + Float::with_val(p, o.im.square_ref());
        let re = (Float::with_val(p, &self.re * &o.re) + Float::with_val(p, &self.im * &o.im)) / &d;
        let im = (Float::with_val(p, &self.im * &o.re) - Float::with_val(p, &self.re * &o.im)) / &d;
        Complex { re, im }
    }

    pub fn one_minus(&self) -> Complex {
        Complex { re: Float::with_val(self.re.prec(), 1 - &self.re), im: Float::with_val(self.im.prec(), -&self.im) }
    }

    pub fn abs(&self) -> Float {
        let p = self.re.prec();
        (Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())).sqrt()
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        let p = self.re.prec();
        Complex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

/// `z^e` for `z = rho e^(i theta)` with `theta` taken as given (principal when in `(-pi, pi]`).
fn cpow(rho: &Float, theta: &Float, e: &Rational, ctx: &PrecisionContext) -> Complex {
    let ef = rational_float(ctx, e);
    let r = (Float::with_val(ctx.bits(), rho.ln_ref()) * &ef).exp();
    Complex::polar(&r, &Float::with_val(ctx.bits(), theta * &ef))
}

/// `[a,p;z]` at complex `z = rho e^(i theta)` for integer `a`, `p`.
fn agile_complex(a: i64, p: i64, rho: &Float, theta: &Float, ctx: &PrecisionContext) -> Result<Complex> {
    let step = cpow(rho, theta, &Rational::from(p), ctx);
    let mut xs = [cpow(rho, theta, &Rational::from(a), ctx), cpow(rho, theta, &Rational::from(p - a), ctx)];
    let tol = ctx.tail_tolerance() * Float::with_val(ctx.bits(), 1 - step.abs());
    let mut acc = Complex::real(ctx.float(1));
    for _ in 0..10_000_000u64 {
        for x in xs.iter_mut() {
            acc = acc.mul(&x.one_minus());
            *x = x.mul(&step);
        }
        if xs.iter().all(|x| x.abs() < tol) {
            return Ok(acc);
        }
    }
    Err(Error::NonConvergence("complex product".into()))
}

fn rq_complex(
    spec: (i64, i64, i64),
    q_exp: &Rational,
    rho: &Float,
    theta: &Float,
    ctx: &PrecisionContext,
) -> Result<Complex> {
    let (a, b, p) = spec;
    let num = agile_complex(a, p, rho, theta, ctx)?;
    let den = agile_complex(b, p, rho, theta, ctx)?;
    Ok(cpow(rho, theta, q_exp, ctx).mul(&num.div(&den)))
}

/// Compares `R(a,b,p;q^p)` with the product of `R(a,b,p; w q)` over the `p`-th roots of
/// unity `w = (-1)^m e^(-i pi m/p)`, using principal-branch powers for the prefactor.
pub fn check_root_of_unity_product(spec: &RQSpec, q: &Float, ctx: &PrecisionContext) -> Result<CheckReport> {
    let s = spec.to_int()?;
    let (a, b, p) = (s.a, s.b, s.p);
    if p < 3 || p % 2 == 0 {
        return Err(Error::InvalidArgument("the root-of-unity product needs an odd p".into()));
    }
    if *q <= 0 || *q >= 1 {
        return Err(Error::InvalidArgument("q must lie in (0, 1)".into()));
    }
    let q_exp = spec.q_exponent();
    let zero = ctx.float(0);
    let qp = Float::with_val(ctx.bits(), q.pow(p as u32));
    let lhs = rq_complex((a, b, p), &q_exp, &qp, &zero, ctx)?;
    let pi = ctx.pi();
    let mut rhs = Complex::real(ctx.float(1));
    for m in 0..p {
        // Argument pi m (p-1)/p reduced to (-pi, pi].
        let mut num = m * (p - 1) % (2 * p);
        if num > p {
            num -= 2 * p;
        }
        let theta = Float::with_val(ctx.bits(), &pi * num) / p as u32;
        rhs = rhs.mul(&rq_complex((a, b, p), &q_exp, q, &theta, ctx)?);
    }
    let err = lhs.sub(&rhs).abs();
    let tol = ctx.pow10(-(i64::from(ctx.digits) - 8));
    Ok(CheckReport::new("root-of-unity-product", None, Some(q), ctx, &lhs.re, &rhs.re, err.clone(), &tol)
        .with_note(format!("imaginary part of the product: {}", super::decimal(&rhs.im, 10)))
        .with_verdict(if err < tol { Verdict::Pass } else { Verdict::Fail }))
}
