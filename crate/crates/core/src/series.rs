//! Noncommutative power series in `X_1, ..., X_n`, truncated above a fixed
//! total degree. This is the target of the Magnus expansion.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A word in the generators; letters are 0-based (`0` is `X_1`).
pub type Word = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    n: usize,
    q: usize,
    terms: BTreeMap<Word, BigInt>,
}

impl TruncatedSeries {
    pub fn zero(n: usize, q: usize) -> Self {
        assert!(n <= u8::MAX as usize, "alphabet too large");
        Self {
            n,
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, q: usize) -> Self {
        Self::monomial(n, q, vec![], BigInt::one())
    }

    /// `X_i` for a 1-based generator index.
    pub fn x(n: usize, q: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i));
        Self::monomial(n, q, vec![(i - 1) as u8], BigInt::one())
    }

    /// The Magnus image `1 + X_i` of the `i`-th free generator (1-based).
    pub fn generator(n: usize, q: usize, i: usize) -> Self {
        &Self::one(n, q) + &Self::x(n, q, i)
    }

    pub fn monomial(n: usize, q: usize, word: Word, c: BigInt) -> Self {
        let mut s = Self::zero(n, q);
        s.add_term(word, c);
        s
    }

    fn add_term(&mut self, word: Word, c: BigInt) {
        if c.is_zero() || word.len() > self.q {
            return;
        }
        debug_assert!(word.iter().all(|&l| (l as usize) < self.n));
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn alphabet(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.q
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&[])
    }

    /// Coefficient of a word given by 0-based letters.
    pub fn coeff(&self, word: &[u8]) -> BigInt {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    /// Coefficient of `X_{i_1} ... X_{i_k}` for 1-based indices.
    pub fn coeff_of(&self, indices: &[usize]) -> BigInt {
        let word: Word = indices.iter().map(|&i| (i - 1) as u8).collect();
        self.coeff(&word)
    }

    /// Multiplicative inverse of a series with constant term 1, as
    /// `sum_k (-v)^k` for `u = 1 + v`.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        if !c.is_one() {
            return Err(Error::NotInvertible(c.to_string()));
        }
        let v = self - &Self::one(self.n, self.q);
        let neg_v = -&v;
        let mut out = Self::one(self.n, self.q);
        let mut power = Self::one(self.n, self.q);
        for _ in 0..self.q {
            power = &power * &neg_v;
            if power.terms.is_empty() {
                break;
            }
            out = &out + &power;
        }
        Ok(out)
    }

    /// Integer power; negative exponents require constant term 1.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one(self.n, self.q);
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// `w^{-1} * self * w`.
    pub fn conjugate(&self, w: &Self) -> Result<Self> {
        Ok(&(&w.inverse()? * self) * w)
    }

    pub fn is_group_like_unit(&self) -> bool {
        self.constant_term().is_one()
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(
            (self.n, self.q),
            (other.n, other.q),
            "series over different algebras"
        );
    }
}

impl Add<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (w, c) in rhs.terms.iter() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (w, c) in rhs.terms.iter() {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Mul<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_compatible(rhs);
        let mut acc: BTreeMap<Word, BigInt> = BTreeMap::new();
        for (w1, c1) in self.terms.iter() {
            for (w2, c2) in rhs.terms.iter() {
                if w1.len() + w2.len() > self.q {
                    continue;
                }
                let mut w = Vec::with_capacity(w1.len() + w2.len());
                w.extend_from_slice(w1);
                w.extend_from_slice(w2);
                *acc.entry(w).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        TruncatedSeries {
            n: self.n,
            q: self.q,
            terms: acc,
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            n: self.n,
            q: self.q,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // shortlex: by length, then lexicographic
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(b.0)));
        for (k, (w, c)) in entries.into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                write!(f, "{}{}", if c.is_negative() { "-" } else { "" }, c.abs())?;
            } else {
                write!(f, " {sign} {}", c.abs())?;
            }
            for l in w {
                write!(f, "*X{}", l + 1)?;
            }
        }
        Ok(())
    }
}
