//! Both sides of the two μ/HOMFLYPT identities, corpus generators and
//! verification reports.
//!
//! For an `n`-string link `σ`, a permutation `I` of `1..n` and a
//! subsequence `J < I`, the knot `σ̄_{I,J}` is the closure of `b_I · σ_J`.
//! The length-3 identity reads
//! `μ(I) = -Σ_J (-1)^{|J|} a_2(σ̄_{I,J}) - lk(i1 i2) lk(i2 i3) + A_I`; under
//! vanishing of all μ of length `<= n-2` the general one reads
//! `μ(I) = (-1)^{n-1} / (2^{n-1} (n-1)!) Σ_J (-1)^{|J|} P_0^{(n-1)}(σ̄_{I,J}; 1)`.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::milnor::{linking_number, Milnor};
use crate::skein::SkeinEngine;
use crate::tangle::{sigma_ij_knot, MorseEvent, MultiIndex, Over, TangleDiagram};

/// One summand of an alternating sum over subsequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub sub: MultiIndex,
    pub crossings: usize,
    pub value: BigInt,
}

fn sign_of(sub: &MultiIndex) -> i32 {
    if sub.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn alternating_sum(terms: &[Term]) -> BigInt {
    terms.iter().map(|t| &t.value * sign_of(&t.sub)).sum()
}

fn check_full_index(sigma: &TangleDiagram, index: &MultiIndex) -> Result<()> {
    sigma.require_string_link()?;
    if index.is_permutation_of(sigma.strand_count()) {
        Ok(())
    } else {
        Err(Error::InvalidIndex(
            index.to_string(),
            format!("not a permutation of 1..{}", sigma.strand_count()),
        ))
    }
}

/// Evaluates `f` on `σ̄_{I,J}` for every subsequence `J` of `I`.
fn subsequence_terms<F>(sigma: &TangleDiagram, index: &MultiIndex, f: F) -> Result<Vec<Term>>
where
    F: Fn(&crate::diagram::ClosedDiagram) -> Result<BigInt> + Sync,
{
    index
        .subsequences()
        .into_par_iter()
        .map(|sub| {
            let knot = sigma_ij_knot(sigma, index, &sub)?;
            let value = f(&knot)?;
            Ok(Term {
                crossings: knot.crossing_count(),
                sub,
                value,
            })
        })
        .collect()
}

/// `A_I` for a permutation `I` of `123`, given `lk(i1 i2)`.
pub fn thm2_a_term(index: &MultiIndex, lk12: i64) -> Result<i64> {
    if !index.is_permutation_of(3) {
        return Err(Error::InvalidIndex(
            index.to_string(),
            "not a permutation of 123".into(),
        ));
    }
    Ok(match index.entries() {
        [3, 1, 2] => lk12,
        [1, 3, 2] => -lk12,
        _ => 0,
    })
}

/// `a_2(σ̄_{I,J})` for every `J < I`.
pub fn thm2_terms(
    engine: &SkeinEngine,
    sigma: &TangleDiagram,
    index: &MultiIndex,
) -> Result<Vec<Term>> {
    if sigma.strand_count() != 3 {
        return Err(Error::StrandCountMismatch(3, sigma.strand_count()));
    }
    check_full_index(sigma, index)?;
    subsequence_terms(sigma, index, |k| engine.a2(k))
}

/// `-lk(i1 i2) lk(i2 i3) + A_I`.
pub fn thm2_correction(sigma: &TangleDiagram, index: &MultiIndex) -> Result<i64> {
    let i = index.entries();
    let lk12 = linking_number(sigma, i[0], i[1])?;
    let lk23 = linking_number(sigma, i[1], i[2])?;
    Ok(-lk12 * lk23 + thm2_a_term(index, lk12)?)
}

pub fn thm2_rhs(engine: &SkeinEngine, sigma: &TangleDiagram, index: &MultiIndex) -> Result<BigInt> {
    let terms = thm2_terms(engine, sigma, index)?;
    Ok(-alternating_sum(&terms) + thm2_correction(sigma, index)?)
}

/// `2^{n-1} (n-1)!`
pub fn thm1_divisor(n: usize) -> BigInt {
    let mut d = BigInt::from(1);
    for k in 1..n {
        d *= 2 * k;
    }
    d
}

/// `P_0^{(n-1)}(σ̄_{I,J}; 1)` for every `J < I`.
pub fn thm1_terms(
    engine: &SkeinEngine,
    sigma: &TangleDiagram,
    index: &MultiIndex,
) -> Result<Vec<Term>> {
    check_full_index(sigma, index)?;
    let m = sigma.strand_count() as u32 - 1;
    subsequence_terms(sigma, index, |k| engine.p0_deriv(k, m))
}

/// Divides `(-1)^{n-1} Σ_J (-1)^{|J|} value_J` by `2^{n-1} (n-1)!`,
/// failing if the division is not exact.
pub fn thm1_quotient(n: usize, terms: &[Term]) -> Result<BigInt> {
    let mut sum = alternating_sum(terms);
    if n.is_multiple_of(2) {
        sum = -sum;
    }
    let divisor = thm1_divisor(n);
    if !(&sum % &divisor).is_zero() {
        return Err(Error::Divisibility {
            sum: sum.to_string(),
            divisor: divisor.to_string(),
        });
    }
    Ok(sum / divisor)
}

pub fn thm1_rhs(engine: &SkeinEngine, sigma: &TangleDiagram, index: &MultiIndex) -> Result<BigInt> {
    let terms = thm1_terms(engine, sigma, index)?;
    thm1_quotient(sigma.strand_count(), &terms)
}

/// All sequences of distinct strands of length `len` (ordered).
pub fn arrangements(n: usize, len: usize) -> Vec<MultiIndex> {
    fn extend(n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if cur.len() == len {
            out.push(MultiIndex::new(cur.clone()).unwrap());
            return;
        }
        for i in 1..=n {
            if !cur.contains(&i) {
                cur.push(i);
                extend(n, len, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(n, len, &mut Vec::new(), &mut out);
    out
}

/// Whether `μ(I') = 0` for every distinct-index `I'` with
/// `2 <= |I'| <= maxlen`.
pub fn check_vanishing(sigma: &TangleDiagram, maxlen: usize) -> Result<bool> {
    let n = sigma.strand_count();
    let maxlen = maxlen.min(n);
    if maxlen < 2 {
        return Ok(true);
    }
    let milnor = Milnor::new(sigma, maxlen - 1)?;
    for len in 2..=maxlen {
        for index in arrangements(n, len) {
            if !milnor.mu(&index)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Restricts `σ` to the strands named in `I` and renumbers both, so that
/// `I` becomes a permutation of `1..|I|`.
pub fn restrict_to_index(
    sigma: &TangleDiagram,
    index: &MultiIndex,
) -> Result<(TangleDiagram, MultiIndex)> {
    let n = sigma.strand_count();
    if let Some(&i) = index.entries().iter().find(|&&i| i == 0 || i > n) {
        return Err(Error::StrandIndex { index: i, n });
    }
    if index.len() == n {
        return Ok((sigma.clone(), index.clone()));
    }
    let mut keep = index.entries().to_vec();
    keep.sort_unstable();
    let sub = sigma.sub_string_link(&keep)?;
    let renumbered = index
        .entries()
        .iter()
        .map(|i| keep.binary_search(i).unwrap() + 1)
        .collect();
    Ok((sub, MultiIndex::new(renumbered)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    HypothesisViolated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermEntry {
    #[serde(rename = "J")]
    pub sub: String,
    #[serde(serialize_with = "as_string")]
    pub crossings: usize,
    pub value: String,
}

/// Outcome of checking one identity on one string link. Integers are
/// decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    #[serde(serialize_with = "as_string")]
    pub theorem: u8,
    pub sigma: String,
    #[serde(rename = "I")]
    pub index: String,
    pub status: Status,
    pub pass: bool,
    pub left: Option<String>,
    pub right: Option<String>,
    pub terms: Vec<TermEntry>,
    /// `-lk(i1 i2) lk(i2 i3) + A_I` for the length-3 identity
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "opt_as_string"
    )]
    pub timing_ms: Option<u128>,
}

fn as_string<T: std::fmt::Display, S: Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn opt_as_string<T: std::fmt::Display, S: Serializer>(
    v: &Option<T>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    /// `μ(I)` from `P_0^{(n-1)}`, under vanishing of shorter invariants
    General,
    /// length-3 `μ(I)` from `a_2` and linking numbers
    Length3,
}

impl Theorem {
    pub fn id(self) -> u8 {
        match self {
            Theorem::General => 1,
            Theorem::Length3 => 2,
        }
    }
}

/// Computes both sides of the identity for `(σ, I)`. An `I` shorter than
/// `n` is handled on the sub-string-link of its strands. Timing is recorded
/// only when `timed` is set, so that untimed reports are reproducible.
pub fn verify(
    engine: &SkeinEngine,
    sigma: &TangleDiagram,
    index: &MultiIndex,
    theorem: Theorem,
    timed: bool,
) -> Result<VerificationReport> {
    let start = Instant::now();
    sigma.require_string_link()?;
    let (sub, local) = restrict_to_index(sigma, index)?;
    let mut report = VerificationReport {
        theorem: theorem.id(),
        sigma: sigma.to_string(),
        index: index.to_string(),
        status: Status::HypothesisViolated,
        pass: false,
        left: None,
        right: None,
        terms: vec![],
        correction: None,
        detail: None,
        timing_ms: None,
    };
    let n = sub.strand_count();
    let hypothesis = match theorem {
        Theorem::Length3 if n != 3 => Err(format!("needs |I| = 3, got {n}")),
        Theorem::General if n < 4 => Err(format!("needs |I| >= 4, got {n}")),
        Theorem::General if !check_vanishing(&sub, n - 2)? => {
            Err(format!("some μ of length <= {} is nonzero", n - 2))
        }
        _ => Ok(()),
    };
    if let Err(why) = hypothesis {
        report.detail = Some(why);
    } else {
        let left = Milnor::new(&sub, n - 1)?.mu(&local)?;
        let (terms, right) = match theorem {
            Theorem::Length3 => {
                let terms = thm2_terms(engine, &sub, &local)?;
                let correction = thm2_correction(&sub, &local)?;
                report.correction = Some(correction.to_string());
                let right = -alternating_sum(&terms) + correction;
                (terms, Ok(right))
            }
            Theorem::General => {
                let terms = thm1_terms(engine, &sub, &local)?;
                let right = thm1_quotient(n, &terms);
                (terms, right)
            }
        };
        report.terms = terms
            .iter()
            .map(|t| TermEntry {
                sub: relabel(&t.sub, index, &local),
                crossings: t.crossings,
                value: t.value.to_string(),
            })
            .collect();
        report.left = Some(left.to_string());
        match right {
            Ok(right) => {
                report.pass = right == left;
                report.right = Some(right.to_string());
            }
            Err(e) => report.detail = Some(e.to_string()),
        }
        report.status = if report.pass {
            Status::Pass
        } else {
            Status::Fail
        };
    }
    if timed {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    Ok(report)
}

/// Maps a subsequence of the renumbered index back to original strands.
fn relabel(sub: &MultiIndex, original: &MultiIndex, local: &MultiIndex) -> String {
    let entries = sub
        .entries()
        .iter()
        .map(|i| original.entries()[local.entries().iter().position(|j| j == i).unwrap()])
        .collect();
    MultiIndex::new(entries).unwrap().to_string()
}

/// Band generator `A_ij` (`i < j`, 1-based) as an `n`-braid word: strand
/// `j` reaches across to strand `i`, clasps it and returns.
pub fn band_generator(i: usize, j: usize) -> Vec<i32> {
    assert!(1 <= i && i < j, "band generator needs i < j");
    let down: Vec<i32> = (i + 1..j).rev().map(|k| k as i32).collect();
    let mut word = down.clone();
    word.extend([i as i32, i as i32]);
    word.extend(down.iter().rev().map(|k| -k));
    word
}

/// Clasp between strands `i < j` (1-based) in which strand `j` passes in
/// front of the strands between them, both ways. It differs from
/// [`band_generator`] only for `j > i + 1`.
pub fn clasp_generator(i: usize, j: usize) -> Vec<i32> {
    assert!(1 <= i && i < j, "clasp generator needs i < j");
    let down: Vec<i32> = (i + 1..j).rev().map(|k| -(k as i32)).collect();
    let mut word = down.clone();
    word.extend([i as i32, i as i32]);
    word.extend(down.iter().rev().map(|k| -k));
    word
}

pub fn inverse_word(word: &[i32]) -> Vec<i32> {
    word.iter().rev().map(|g| -g).collect()
}

/// `x y x^-1 y^-1`
pub fn commutator(x: &[i32], y: &[i32]) -> Vec<i32> {
    [x, y, &inverse_word(x), &inverse_word(y)].concat()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    None,
    ZeroLinking,
    CommutatorBuilt,
}

impl std::str::FromStr for Constraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Constraint::None),
            "zero-linking" => Ok(Constraint::ZeroLinking),
            "commutator-built" => Ok(Constraint::CommutatorBuilt),
            _ => Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!("unknown constraint `{s}`"),
            }),
        }
    }
}

/// A piece of a string link: a pure braid word, or a local knot tied into
/// one strand.
#[derive(Clone, Debug)]
enum Piece {
    Braid(Vec<i32>),
    Trefoil { strand: usize, over: Over },
}

impl Piece {
    fn crossings(&self) -> usize {
        match self {
            Piece::Braid(w) => w.len(),
            Piece::Trefoil { .. } => 3,
        }
    }

    fn events(&self) -> Vec<MorseEvent> {
        match self {
            Piece::Braid(w) => w
                .iter()
                .map(|&g| {
                    MorseEvent::cross(
                        g.unsigned_abs() as usize - 1,
                        if g > 0 { Over::Lower } else { Over::Higher },
                    )
                })
                .collect(),
            Piece::Trefoil { strand, over } => {
                let p = strand - 1;
                vec![
                    MorseEvent::Cup(p + 1),
                    MorseEvent::cross(p, *over),
                    MorseEvent::cross(p, *over),
                    MorseEvent::cross(p, *over),
                    MorseEvent::Cap(p + 1),
                ]
            }
        }
    }
}

fn random_pair(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    let i = rng.gen_range(1..n);
    let j = rng.gen_range(i + 1..=n);
    (i, j)
}

/// `A_ij^{±1}`, possibly conjugated by a short braid word.
fn random_pure(rng: &mut ChaCha8Rng, n: usize, conjugate: bool) -> Vec<i32> {
    let (i, j) = random_pair(rng, n);
    let mut a = band_generator(i, j);
    if rng.gen_bool(0.5) {
        a = inverse_word(&a);
    }
    if conjugate && n > 2 && rng.gen_bool(0.4) {
        let g: Vec<i32> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let k = rng.gen_range(1..n as i32);
                if rng.gen_bool(0.5) {
                    k
                } else {
                    -k
                }
            })
            .collect();
        a = [&g[..], &a[..], &inverse_word(&g)].concat();
    }
    a
}

fn assemble(n: usize, pieces: &[Piece]) -> TangleDiagram {
    let events = pieces.iter().flat_map(|p| p.events()).collect();
    TangleDiagram::new(n, events).expect("generated pieces form a string link")
}

/// `(i, j, lk(i, j))` for every pair `i < j`.
fn linking_numbers(n: usize, pieces: &[Piece]) -> Vec<(usize, usize, i64)> {
    let t = assemble(n, pieces);
    (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, linking_number(&t, i, j).expect("string link")))
        .collect()
}

/// A deterministic pseudo-random `n`-string link with at most `length`
/// crossings (a few more for `zero-linking`, whose balancing tail is not
/// counted against the budget if it would not fit).
pub fn gen_string_link(
    n: usize,
    length: usize,
    seed: u64,
    constraint: Constraint,
) -> TangleDiagram {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n == 1 {
        return TangleDiagram::identity(1);
    }
    let mut pieces: Vec<Piece> = Vec::new();
    let mut used = 0;
    match constraint {
        Constraint::None => {
            for _ in 0..4 * length {
                let piece = match rng.gen_range(0..6) {
                    0 => Piece::Trefoil {
                        strand: rng.gen_range(1..=n),
                        over: *[Over::Lower, Over::Higher].choose(&mut rng).unwrap(),
                    },
                    _ => Piece::Braid(random_pure(&mut rng, n, true)),
                };
                if used + piece.crossings() <= length {
                    used += piece.crossings();
                    pieces.push(piece);
                }
            }
        }
        Constraint::ZeroLinking => {
            for _ in 0..4 * length {
                let piece = Piece::Braid(random_pure(&mut rng, n, true));
                if used + piece.crossings() <= length {
                    used += piece.crossings();
                    pieces.push(piece);
                }
            }
            for (i, j, lk) in linking_numbers(n, &pieces) {
                let a = if lk > 0 {
                    inverse_word(&band_generator(i, j))
                } else {
                    band_generator(i, j)
                };
                for _ in 0..lk.abs() {
                    pieces.push(Piece::Braid(a.clone()));
                }
            }
        }
        Constraint::CommutatorBuilt => {
            for _ in 0..4 * length {
                let x = random_pure(&mut rng, n, true);
                let y = random_pure(&mut rng, n, true);
                let mut word = commutator(&x, &y);
                if rng.gen_bool(0.5) {
                    let z = random_pure(&mut rng, n, false);
                    word = commutator(&word, &z);
                }
                if used + word.len() <= length {
                    used += word.len();
                    pieces.push(Piece::Braid(word));
                }
            }
        }
    }
    assemble(n, &pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milnor::mu;

    fn idx(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    fn braid(n: usize, w: &[i32]) -> TangleDiagram {
        TangleDiagram::from_braid(n, w).unwrap()
    }

    #[test]
    fn a_term_cases() {
        assert_eq!(thm2_a_term(&idx("123"), 7).unwrap(), 0);
        assert_eq!(thm2_a_term(&idx("312"), 5).unwrap(), 5);
        assert_eq!(thm2_a_term(&idx("132"), 5).unwrap(), -5);
        assert!(thm2_a_term(&idx("12"), 1).is_err());
    }

    #[test]
    fn band_generators() {
        assert_eq!(band_generator(1, 2), vec![1, 1]);
        assert_eq!(band_generator(1, 3), vec![2, 1, 1, -2]);
        assert_eq!(band_generator(2, 4), vec![3, 2, 2, -3]);
        assert_eq!(clasp_generator(1, 3), vec![-2, 1, 1, 2]);
        assert_eq!(clasp_generator(1, 2), vec![1, 1]);
        for (i, j) in [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4)] {
            let t = braid(4, &band_generator(i, j));
            for (a, b) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
                let expect = if (a, b) == (i, j) { 1 } else { 0 };
                assert_eq!(
                    linking_number(&t, a, b).unwrap(),
                    expect,
                    "A{i}{j} lk{a}{b}"
                );
            }
        }
    }

    #[test]
    fn divisor() {
        assert_eq!(thm1_divisor(4), BigInt::from(48));
        assert_eq!(thm1_divisor(5), BigInt::from(384));
    }

    #[test]
    fn trivial_string_link() {
        let e = SkeinEngine::default();
        for i in MultiIndex::permutations(3) {
            assert_eq!(
                thm2_rhs(&e, &TangleDiagram::identity(3), &i).unwrap(),
                BigInt::from(0)
            );
        }
        assert_eq!(
            thm1_rhs(&e, &TangleDiagram::identity(4), &idx("1234")).unwrap(),
            BigInt::from(0)
        );
        let r = verify(
            &e,
            &TangleDiagram::identity(3),
            &idx("123"),
            Theorem::Length3,
            false,
        )
        .unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.left.as_deref(), Some("0"));
        assert_eq!(r.terms.len(), 8);
    }

    #[test]
    fn clasp_on_two_strands() {
        let e = SkeinEngine::default();
        let clasp = braid(3, &[1, 1]);
        for i in MultiIndex::permutations(3) {
            assert_eq!(
                thm2_rhs(&e, &clasp, &i).unwrap(),
                mu(&clasp, &i).unwrap(),
                "I = {i}"
            );
        }
    }

    #[test]
    fn short_and_single_subsequences_give_unknots() {
        let e = SkeinEngine::default();
        let s = gen_string_link(3, 14, 11, Constraint::ZeroLinking);
        for i in MultiIndex::permutations(3) {
            for t in thm2_terms(&e, &s, &i)
                .unwrap()
                .iter()
                .filter(|t| t.sub.len() <= 1)
            {
                assert!(t.value.is_zero());
                let knot = sigma_ij_knot(&s, &i, &t.sub).unwrap();
                assert!(e.homfly(&knot).unwrap().is_one());
            }
        }
    }

    #[test]
    fn vanishing_checks() {
        assert!(check_vanishing(&TangleDiagram::identity(4), 3).unwrap());
        assert!(!check_vanishing(&braid(2, &[1, 1]), 2).unwrap());
        let c = commutator(&band_generator(1, 2), &band_generator(3, 4));
        assert!(check_vanishing(&braid(4, &c), 2).unwrap());
        let borromean = commutator(&band_generator(1, 3), &band_generator(2, 3));
        assert!(check_vanishing(&braid(3, &borromean), 2).unwrap());
        assert!(!check_vanishing(&braid(3, &borromean), 3).unwrap());
    }

    #[test]
    fn generators_are_deterministic_and_constrained() {
        for seed in 0..20 {
            for c in [
                Constraint::None,
                Constraint::ZeroLinking,
                Constraint::CommutatorBuilt,
            ] {
                let a = gen_string_link(3, 12, seed, c);
                assert_eq!(a, gen_string_link(3, 12, seed, c));
                assert!(a.is_string_link());
                if c != Constraint::None {
                    assert!(check_vanishing(&a, 2).unwrap());
                }
                if c != Constraint::ZeroLinking {
                    assert!(a.crossing_count() <= 12);
                }
            }
        }
    }

    #[test]
    fn general_identity_needs_length_three_vanishing() {
        // strand 3 passes under everything, so σ_J and σ_{J+3} have
        // isotopic closures and every alternating sum cancels; yet the
        // length-4 invariants do not all vanish
        let e = SkeinEngine::default();
        let s = braid(
            4,
            &commutator(&clasp_generator(1, 4), &clasp_generator(2, 4)),
        );
        assert!(check_vanishing(&s, 2).unwrap());
        assert!(!check_vanishing(&s, 3).unwrap());
        for i in MultiIndex::permutations(4) {
            assert_eq!(thm1_rhs(&e, &s, &i).unwrap(), BigInt::from(0), "I = {i}");
        }
        assert_eq!(mu(&s, &idx("1243")).unwrap(), BigInt::from(-1));
        assert_eq!(mu(&s, &idx("4123")).unwrap(), BigInt::from(1));
        let r = verify(&e, &s, &idx("1243"), Theorem::General, false).unwrap();
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn report_integers_are_strings() {
        let e = SkeinEngine::default();
        let r = verify(
            &e,
            &TangleDiagram::identity(3),
            &idx("312"),
            Theorem::Length3,
            true,
        )
        .unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["theorem"], "2");
        assert_eq!(v["I"], "312");
        assert_eq!(v["status"], "pass");
        assert_eq!(v["terms"][0]["crossings"], "2");
        assert!(v["timing_ms"].is_string());
        let untimed = serde_json::to_value(
            verify(
                &e,
                &TangleDiagram::identity(3),
                &idx("312"),
                Theorem::Length3,
                false,
            )
            .unwrap(),
        )
        .unwrap();
        assert!(untimed.get("timing_ms").is_none());
    }

    #[test]
    fn restriction_renumbers() {
        let s = braid(4, &band_generator(2, 4));
        let (sub, local) = restrict_to_index(&s, &idx("42")).unwrap();
        assert_eq!(sub.strand_count(), 2);
        assert_eq!(local, idx("21"));
        assert_eq!(linking_number(&sub, 1, 2).unwrap(), 1);
    }

    #[test]
    fn clasp_bookkeeping_identity() {
        // front-passing clasps stacked in the order (i1 i2), (i1 i3),
        // (i2 i3) of I:
        // μ(I) = lk12 lk13 + lk13 lk23 - lk12 lk23 + A_I, lk taken along I
        for (a, b, c) in [
            (1, 0, 0),
            (1, 1, 0),
            (0, 1, 1),
            (1, 0, 1),
            (1, 1, 1),
            (2, -1, 1),
            (-1, 1, 2),
        ] {
            for index in MultiIndex::permutations(3) {
                let v = index.entries();
                let mut w = Vec::new();
                for (k, (x, y)) in [(a, (0, 1)), (b, (0, 2)), (c, (1, 2))] {
                    let (i, j) = (v[x].min(v[y]), v[x].max(v[y]));
                    let g = if k > 0 {
                        clasp_generator(i, j)
                    } else {
                        inverse_word(&clasp_generator(i, j))
                    };
                    for _ in 0..(k as i32).abs() {
                        w.extend(g.iter().copied());
                    }
                }
                let s = braid(3, &w);
                let lk = |x: usize, y: usize| linking_number(&s, v[x], v[y]).unwrap();
                assert_eq!((lk(0, 1), lk(0, 2), lk(1, 2)), (a, b, c));
                let expect = lk(0, 1) * lk(0, 2) + lk(0, 2) * lk(1, 2) - lk(0, 1) * lk(1, 2)
                    + thm2_a_term(&index, lk(0, 1)).unwrap();
                assert_eq!(
                    mu(&s, &index).unwrap(),
                    BigInt::from(expect),
                    "lk ({a},{b},{c}) I = {index}"
                );
            }
        }
    }
}
