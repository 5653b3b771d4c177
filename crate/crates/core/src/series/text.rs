use super::FormalSeries;
use rug::Rational;
use std::fmt;

/// `q`, `q^2`, `q^(-1)`, `q^(1/5)`; empty for the zeroth power.
pub(crate) fn format_power(var: &str, e: &Rational) -> String {
    if *e == 0 {
        String::new()
    } else if *e == 1 {
        var.to_string()
    } else if *e.denom() == 1 && *e > 0 {
        format!("{var}^{e}")
    } else {
        format!("{var}^({e})")
    }
}

/// Joins `(coefficient, exponent)` terms as `c0 + c1*q^(1/5) - q^2`.
pub(crate) fn format_sum(terms: &[(Rational, Rational)]) -> String {
    let mut out = String::new();
    for (i, (c, e)) in terms.iter().enumerate() {
        let neg = *c < 0;
        let abs = Rational::from(c.abs_ref());
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let power = format_power("q", e);
        if power.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs == 1 {
            out.push_str(&power);
        } else {
            out.push_str(&format!("{abs}*{power}"));
        }
    }
    out
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let big_o = {
            let p = format_power("q", &self.order());
            if p.is_empty() {
                "O(1)".to_string()
            } else {
                format!("O({p})")
            }
        };
        if self.is_zero() {
            return write!(f, "{big_o}");
        }
        let d = self.denom;
        let rel: Vec<(Rational, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(k, c)| (c.clone(), Rational::from((k as i64, d))))
            .collect();
        let inner = format_sum(&rel);
        if self.lead == 0 {
            write!(f, "{inner} + {big_o}")
        } else {
            let pre = format_power("q", &Rational::from((self.lead, d)));
            write!(f, "{pre} * ({inner}) + {big_o}")
        }
    }
}
