//! Integer polynomials in `u` and `v`.

use crate::error::{Error, Result};
use crate::series::FormalSeries;
use rug::{Integer, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Monomial set searched by the miner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    /// `0 <= i, j <= s`.
    Box(u32),
    /// `i + j <= d`.
    Total(u32),
}

impl Shape {
    /// Exponent pairs `(i, j)` in the shape, ordered by total degree then `i`.
    pub fn monomials(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = match *self {
            Shape::Box(s) => (0..=s).flat_map(|i| (0..=s).map(move |j| (i, j))).collect(),
            Shape::Total(d) => (0..=d).flat_map(|i| (0..=d - i).map(move |j| (i, j))).collect(),
        };
        out.sort_by_key(|&(i, j)| (i + j, i));
        out
    }

    /// Largest exponent of either variable.
    pub fn max_degree(&self) -> u32 {
        match *self {
            Shape::Box(s) | Shape::Total(s) => s,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Box(s) => write!(f, "box({s})"),
            Shape::Total(d) => write!(f, "total({d})"),
        }
    }
}

/// `sum a_ij u^i v^j` with integer coefficients; zero terms are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Integer>,
}

impl BivariatePolynomial {
    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Integer)>>(terms: I) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::default();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: (u32, u32), c: Integer) {
        let e = self.terms.entry(k).or_default();
        *e += c;
        if *e == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Integer> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Largest `i + j` over the terms.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    /// Term that is largest in graded-lex order (total degree, then `u` degree).
    pub fn leading(&self) -> Option<((u32, u32), &Integer)> {
        self.terms.iter().max_by_key(|((i, j), _)| (i + j, *i)).map(|(k, c)| (*k, c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn canonical(&self) -> BivariatePolynomial {
        let mut g = Integer::new();
        for c in self.terms.values() {
            g.gcd_mut(c);
        }
        if g == 0 {
            return self.clone();
        }
        if self.leading().map(|(_, c)| *c < 0).unwrap_or(false) {
            g = -g;
        }
        let terms = self.terms.iter().map(|(k, c)| (*k, Integer::from(c.div_exact_ref(&g)))).collect();
        BivariatePolynomial { terms }
    }

    /// Substitutes series for `u` and `v`.
    pub fn evaluate(&self, u: &FormalSeries, v: &FormalSeries) -> Result<FormalSeries> {
        let mut upow: BTreeMap<u32, FormalSeries> = BTreeMap::new();
        let mut vpow: BTreeMap<u32, FormalSeries> = BTreeMap::new();
        let mut acc: Option<FormalSeries> = None;
        for (&(i, j), c) in &self.terms {
            if let std::collections::btree_map::Entry::Vacant(e) = upow.entry(i) {
                e.insert(u.pow_int(i64::from(i))?);
            }
            if let std::collections::btree_map::Entry::Vacant(e) = vpow.entry(j) {
                e.insert(v.pow_int(i64::from(j))?);
            }
            let cap = u.order().max(v.order()) + upow[&i].order().max(vpow[&j].order());
            let t = super::mine::exact_product(&upow[&i], i, &vpow[&j], j, &cap)?.scale(&Rational::from(c));
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t),
            });
        }
        match acc {
            Some(a) => Ok(a),
            None => FormalSeries::zero(&u.order().min(v.order())),
        }
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, var: char, e: u32) -> fmt::Result {
    match e {
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{e}"),
    }
}

impl fmt::Display for BivariatePolynomial {
    /// Terms ordered by `v` degree, then `u` degree: `u^4 - v^2 + 4*u^4*v^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|(i, j)| (*j, *i));
        for (n, k) in keys.into_iter().enumerate() {
            let c = &self.terms[k];
            let neg = *c < 0;
            let a = Integer::from(c.abs_ref());
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let (i, j) = *k;
            let mut need_star = false;
            if a != 1 || (i == 0 && j == 0) {
                write!(f, "{a}")?;
                need_star = true;
            }
            if i > 0 {
                if need_star {
                    write!(f, "*")?;
                }
                write_power(f, 'u', i)?;
                need_star = true;
            }
            if j > 0 {
                if need_star {
                    write!(f, "*")?;
                }
                write_power(f, 'v', j)?;
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits"))
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }
}

impl FromStr for BivariatePolynomial {
    type Err = Error;

    /// Accepts `u^4 - v^2 + 4*u^4*v^4`; the `*` may be omitted and `= 0` may trail.
    fn from_str(text: &str) -> Result<BivariatePolynomial> {
        let text = text.trim();
        let text = text.strip_suffix("= 0").or_else(|| text.strip_suffix("=0")).unwrap_or(text);
        let mut lx = Lexer { s: text.as_bytes(), pos: 0 };
        let mut out = BivariatePolynomial::default();
        let mut first = true;
        while lx.peek().is_some() {
            let mut sign = 1;
            match lx.peek() {
                Some(b'+') => lx.pos += 1,
                Some(b'-') => {
                    sign = -1;
                    lx.pos += 1
                }
                _ if first => {}
                _ => return Err(lx.err("expected + or -")),
            }
            first = false;
            let mut coeff = Integer::from(sign);
            let (mut i, mut j) = (0u32, 0u32);
            loop {
                match lx.peek() {
                    Some(c) if c.is_ascii_digit() => {
                        let digits = lx.number().expect("digit").to_string();
                        let n: Integer = digits.parse().map_err(|_| lx.err("bad integer"))?;
                        coeff *= n;
                    }
                    Some(c @ (b'u' | b'v')) => {
                        lx.pos += 1;
                        let mut e = 1u32;
                        if lx.peek() == Some(b'^') {
                            lx.pos += 1;
                            let digits = lx.number().map(str::to_string);
                            let Some(digits) = digits else { return Err(lx.err("expected exponent")) };
                            e = digits.parse().map_err(|_| lx.err("exponent too large"))?;
                        }
                        if c == b'u' {
                            i += e;
                        } else {
                            j += e;
                        }
                    }
                    _ => return Err(lx.err("expected a factor")),
                }
                match lx.peek() {
                    Some(b'*') => lx.pos += 1,
                    Some(c) if c.is_ascii_digit() || c == b'u' || c == b'v' => {}
                    _ => break,
                }
            }
            out.add_term((i, j), coeff);
        }
        if first {
            return Err(Error::Parse("empty polynomial".into()));
        }
        Ok(out)
    }
}

impl Serialize for BivariatePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BivariatePolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
