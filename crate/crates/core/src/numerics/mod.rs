//! High-precision evaluation: products, theta series, continued fractions,
//! elliptic integrals, singular moduli and integer-relation recognition.

mod cf;
mod checks;
mod complex;
mod elliptic;
mod products;
mod pslq;

pub use cf::{eval_cf, CfKind};
pub use checks::*;
pub use complex::{check_root_of_unity_product, Complex};
pub use elliptic::{agm, elliptic_k, singular_modulus, singular_modulus_theta, EllipticData};
pub use products::{
    eval_agile, eval_euler_f, eval_normalized_agile, eval_rq, eval_rq_derivative, eval_rq_exp_sum, eval_rq_theta,
    eval_series, eval_theta4, eval_theta4_product, nome,
};
pub use pslq::{pslq, real_roots, recognize_algebraic, Recognition};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

/// Working precision shared by every evaluation; never global.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrecisionContext {
    /// Decimal digits the caller wants to trust.
    pub digits: u32,
    /// Extra decimal digits carried internally.
    pub guard: u32,
}

impl PrecisionContext {
    pub fn new(digits: u32) -> PrecisionContext {
        PrecisionContext { digits, guard: 20 }
    }

    /// Binary precision of intermediate values.
    pub fn bits(&self) -> u32 {
        ((f64::from(self.digits + self.guard)) * std::f64::consts::LOG2_10).ceil() as u32 + 8
    }

    /// Truncation threshold for tails of products and series.
    pub fn tail_tolerance(&self) -> Float {
        self.pow10(-(i64::from(self.digits + self.guard)))
    }

    pub fn float<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        let mut f = Float::new(self.bits());
        rug::Assign::assign(&mut f, v);
        f
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits(), Constant::Pi)
    }

    pub fn pow10(&self, e: i64) -> Float {
        let ten = Float::with_val(self.bits(), 10);
        ten.pow(e as i32)
    }

    /// Same guard, twice the digits.
    pub fn doubled(&self) -> PrecisionContext {
        PrecisionContext { digits: self.digits * 2, guard: self.guard }
    }
}

/// Decimal rendering with `digits` significant digits.
pub fn decimal(x: &Float, digits: u32) -> String {
    x.to_string_radix(10, Some(digits as usize))
}

pub(crate) fn rational_float(ctx: &PrecisionContext, r: &rug::Rational) -> Float {
    Float::with_val(ctx.bits(), r)
}

#[cfg(test)]
mod tests;
