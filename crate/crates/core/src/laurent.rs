//! Exact Laurent polynomials over the integers.
//!
//! [`LPoly`] is univariate, the variable name carried as a const parameter
//! (`LPoly<'t'>`, `LPoly<'z'>`). [`LaurentPoly2`] is bivariate in `t` and `z`
//! and is the value type of the HOMFLYPT polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Univariate Laurent polynomial in the variable `X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LPoly<const X: char> {
    terms: BTreeMap<i32, BigInt>,
}

impl<const X: char> LPoly<X> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `X^e`, zero when absent.
    pub fn coeff(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Formal derivative; negative exponents included.
    pub fn derivative(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, c)| (e - 1, c * e)))
    }

    /// `m`-th derivative evaluated at `X = 1`: sum of `c_e * e (e-1) ... (e-m+1)`.
    pub fn derivative_at_one(&self, m: u32) -> BigInt {
        self.terms
            .iter()
            .map(|(&e, c)| {
                let falling: BigInt = (0..m as i64).map(|k| BigInt::from(e as i64 - k)).product();
                c * falling
            })
            .sum()
    }

    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Drops every term of degree above `cap`.
    pub fn truncate_above(&mut self, cap: i32) {
        self.terms.retain(|&e, _| e <= cap);
    }

    pub fn shift(&self, by: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + by, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl<const X: char> fmt::Display for LPoly<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(&e, c)| (c, vec![(X, e)]));
        write_terms(f, terms)
    }
}

impl<const X: char> FromStr for LPoly<X> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = Self::zero();
        for (c, exps) in parse_terms(s, &[X])? {
            p.add_term(exps[0], c);
        }
        Ok(p)
    }
}

macro_rules! impl_ring_ops {
    ($ty:ty, $add:ident) => {
        impl<'a> Add<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                for (k, c) in rhs.terms.iter() {
                    out.$add(*k, c.clone());
                }
                out
            }
        }
        impl<'a> Sub<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                for (k, c) in rhs.terms.iter() {
                    out.$add(*k, -c);
                }
                out
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                let mut out = self.clone();
                for c in out.terms.values_mut() {
                    *c = -&*c;
                }
                out
            }
        }
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}

impl<const X: char> Add<&LPoly<X>> for &LPoly<X> {
    type Output = LPoly<X>;
    fn add(self, rhs: &LPoly<X>) -> LPoly<X> {
        let mut out = self.clone();
        for (&e, c) in rhs.terms.iter() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<const X: char> Sub<&LPoly<X>> for &LPoly<X> {
    type Output = LPoly<X>;
    fn sub(self, rhs: &LPoly<X>) -> LPoly<X> {
        let mut out = self.clone();
        for (&e, c) in rhs.terms.iter() {
            out.add_term(e, -c);
        }
        out
    }
}

impl<const X: char> Mul<&LPoly<X>> for &LPoly<X> {
    type Output = LPoly<X>;
    fn mul(self, rhs: &LPoly<X>) -> LPoly<X> {
        let mut out = LPoly::zero();
        for (&e1, c1) in self.terms.iter() {
            for (&e2, c2) in rhs.terms.iter() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl<const X: char> Neg for &LPoly<X> {
    type Output = LPoly<X>;
    fn neg(self) -> LPoly<X> {
        LPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl<const X: char> Add for LPoly<X> {
    type Output = LPoly<X>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<const X: char> Sub for LPoly<X> {
    type Output = LPoly<X>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<const X: char> Mul for LPoly<X> {
    type Output = LPoly<X>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<const X: char> Neg for LPoly<X> {
    type Output = LPoly<X>;
    fn neg(self) -> Self {
        -&self
    }
}

/// Exponent pair of a monomial `t^t * z^z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exp {
    pub t: i32,
    pub z: i32,
}

impl Exp {
    pub fn new(t: i32, z: i32) -> Self {
        Self { t, z }
    }
}

// Canonical order: ascending in z, then descending in t.
impl Ord for Exp {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.z.cmp(&other.z).then(other.t.cmp(&self.t))
    }
}

impl PartialOrd for Exp {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Bivariate Laurent polynomial in `t` and `z` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<Exp, BigInt>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn z() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `c * t^et * z^ez`.
    pub fn monomial(c: impl Into<BigInt>, et: i32, ez: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(Exp::new(et, ez), c.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = ((i32, i32), C)>) -> Self {
        let mut p = Self::zero();
        for ((et, ez), c) in terms {
            p.add_term(Exp::new(et, ez), c.into());
        }
        p
    }

    fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Exp::new(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, et: i32, ez: i32) -> BigInt {
        self.terms
            .get(&Exp::new(et, ez))
            .cloned()
            .unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exp, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies by the monomial `t^et * z^ez`.
    pub fn shift(&self, et: i32, ez: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exp::new(e.t + et, e.z + ez), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut p = Self::zero();
        for (e, c) in self.terms.iter() {
            p.add_term(*e, c * k);
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Formal partial derivative in `t`.
    pub fn derivative_t(&self) -> Self {
        let mut p = Self::zero();
        for (e, c) in self.terms.iter() {
            p.add_term(Exp::new(e.t - 1, e.z), c * e.t);
        }
        p
    }

    /// Substitutes `t = 1`.
    pub fn eval_t1(&self) -> LPoly<'z'> {
        LPoly::from_terms(self.terms.iter().map(|(e, c)| (e.z, c.clone())))
    }

    /// The coefficient of `z^k`, a Laurent polynomial in `t`.
    pub fn coeff_z(&self, k: i32) -> LPoly<'t'> {
        LPoly::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.z == k)
                .map(|(e, c)| (e.t, c.clone())),
        )
    }

    pub fn min_z(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.z).min()
    }

    pub fn max_z(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.z).max()
    }

    /// Drops every term with `z`-degree above `cap`.
    pub fn truncate_z(&mut self, cap: i32) {
        self.terms.retain(|e, _| e.z <= cap);
    }
}

impl_ring_ops!(LaurentPoly2, add_term);

impl<'a> Mul<&'a LaurentPoly2> for &'a LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in rhs.terms.iter() {
                out.add_term(Exp::new(e1.t + e2.t, e1.z + e2.z), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (c, vec![('t', e.t), ('z', e.z)]));
        write_terms(f, terms)
    }
}

impl FromStr for LaurentPoly2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = Self::zero();
        for (c, exps) in parse_terms(s, &['t', 'z'])? {
            p.add_term(Exp::new(exps[0], exps[1]), c);
        }
        Ok(p)
    }
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a BigInt, Vec<(char, i32)>)>,
) -> fmt::Result {
    let mut first = true;
    for (c, vars) in terms {
        let abs = c.abs();
        if first {
            write!(f, "{}{}", if c.is_negative() { "-" } else { "" }, abs)?;
        } else {
            write!(f, " {} {}", if c.is_negative() { "-" } else { "+" }, abs)?;
        }
        for (v, e) in vars {
            match e {
                0 => {}
                1 => write!(f, "*{v}")?,
                _ => write!(f, "*{v}^{e}")?,
            }
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Parses a sum of terms `c*v^e*w^f` separated by `+`/`-`. A bare monomial
/// (`t^2`) has coefficient one.
fn parse_terms(s: &str, vars: &[char]) -> Result<Vec<(BigInt, Vec<i32>)>, Error> {
    let bad = |msg: &str| Error::Parse {
        line: 1,
        column: 1,
        message: format!("polynomial `{s}`: {msg}"),
    };
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty input"));
    }

    // split on top-level signs that are not part of an exponent
    let mut chunks = Vec::new();
    let mut cur = String::new();
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
            chunks.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    chunks.push(cur);

    let mut out = Vec::new();
    for chunk in chunks {
        let (sign, body) = match chunk.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, chunk.strip_prefix('+').unwrap_or(&chunk)),
        };
        if body.is_empty() {
            return Err(bad("dangling sign"));
        }
        let mut coeff = BigInt::from(sign);
        let mut exps = vec![0i32; vars.len()];
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(bad("empty factor"));
            }
            let head = factor.chars().next().unwrap();
            if let Some(idx) = vars.iter().position(|&v| v == head) {
                let e = match factor[head.len_utf8()..].strip_prefix('^') {
                    Some(num) => num.parse::<i32>().map_err(|_| bad("bad exponent"))?,
                    None if factor.len() == head.len_utf8() => 1,
                    None => return Err(bad("bad factor")),
                };
                exps[idx] += e;
            } else {
                let c: BigInt = factor.parse().map_err(|_| bad("bad coefficient"))?;
                coeff *= c;
            }
        }
        out.push((coeff, exps));
    }
    Ok(out)
}
