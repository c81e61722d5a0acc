//! Linking numbers and Milnor invariants of string links.
//!
//! The bottom arc of strand `i` is sent to `1 + X_i`; the Wirtinger
//! relations then determine the Magnus image of every arc modulo degree
//! `q + 1`. The longitude of strand `j` is the product of the over-arc
//! meridians met at its undercrossings, corrected by its self-writhe.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;
use crate::tangle::{MultiIndex, TangleDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Undercrossing {
    /// crossing index in the tangle
    pub crossing: usize,
    /// 0-based under-strand
    pub strand: usize,
    /// arc of the under-strand before and after the crossing
    pub before: usize,
    pub after: usize,
    /// arc passing over
    pub over: usize,
    pub sign: i8,
}

/// Arcs of a string link and the relations between them.
#[derive(Clone, Debug)]
pub struct WirtingerData {
    n: usize,
    /// arc ids of each strand, bottom to top
    strand_arcs: Vec<Vec<usize>>,
    arc_strand: Vec<usize>,
    /// sorted by strand, then position along it
    undercrossings: Vec<Undercrossing>,
    self_writhe: Vec<i64>,
}

impl WirtingerData {
    pub fn new(sigma: &TangleDiagram) -> Result<Self> {
        sigma.require_string_link()?;
        let n = sigma.strand_count();
        let crossings = sigma.crossings();
        let paths: Vec<Vec<(usize, bool)>> = (0..n).map(|s| sigma.path_crossings(s)).collect();

        let mut strand_arcs = Vec::with_capacity(n);
        let mut arc_strand = Vec::new();
        let mut over_arc = vec![usize::MAX; crossings.len()];
        let mut under_arcs = vec![(usize::MAX, usize::MAX); crossings.len()];
        for (s, path) in paths.iter().enumerate() {
            let mut arcs = vec![arc_strand.len()];
            arc_strand.push(s);
            for &(c, is_over) in path {
                let current = *arcs.last().unwrap();
                if is_over {
                    over_arc[c] = current;
                } else {
                    let next = arc_strand.len();
                    arc_strand.push(s);
                    arcs.push(next);
                    under_arcs[c] = (current, next);
                }
            }
            strand_arcs.push(arcs);
        }

        let mut undercrossings = Vec::new();
        for (s, path) in paths.iter().enumerate() {
            for &(c, is_over) in path {
                if !is_over {
                    let (before, after) = under_arcs[c];
                    undercrossings.push(Undercrossing {
                        crossing: c,
                        strand: s,
                        before,
                        after,
                        over: over_arc[c],
                        sign: crossings[c].sign,
                    });
                }
            }
        }
        let mut self_writhe = vec![0; n];
        for x in crossings {
            if x.over_strand == x.under_strand {
                self_writhe[x.over_strand] += x.sign as i64;
            }
        }
        Ok(Self {
            n,
            strand_arcs,
            arc_strand,
            undercrossings,
            self_writhe,
        })
    }

    pub fn strand_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arc_strand.len()
    }

    /// 0-based strand owning an arc.
    pub fn arc_strand(&self, arc: usize) -> usize {
        self.arc_strand[arc]
    }

    /// Arcs of a 0-based strand, bottom to top.
    pub fn strand_arcs(&self, s: usize) -> &[usize] {
        &self.strand_arcs[s]
    }

    pub fn undercrossings(&self) -> &[Undercrossing] {
        &self.undercrossings
    }

    /// Signed count of the crossings of a 0-based strand with itself.
    pub fn self_writhe(&self, s: usize) -> i64 {
        self.self_writhe[s]
    }
}

/// Magnus images of all arcs, modulo degree `q + 1`.
#[derive(Clone, Debug)]
pub struct MeridianAssignment {
    q: usize,
    series: Vec<TruncatedSeries>,
}

impl MeridianAssignment {
    pub fn degree(&self) -> usize {
        self.q
    }

    pub fn get(&self, arc: usize) -> &TruncatedSeries {
        &self.series[arc]
    }

    /// `M(a')` as forced by the relation at an undercrossing.
    fn relation_image(&self, u: &Undercrossing) -> Result<TruncatedSeries> {
        let w = self.series[u.over].pow(u.sign as i64)?;
        self.series[u.before].conjugate(&w)
    }

    /// Whether every relation holds exactly in the truncated algebra.
    pub fn satisfies(&self, data: &WirtingerData) -> bool {
        data.undercrossings.iter().all(|u| {
            self.relation_image(u)
                .is_ok_and(|s| s == self.series[u.after])
        })
    }
}

/// Solves the Wirtinger relations by sweeping them in order until a sweep
/// changes nothing.
pub fn meridian_fixpoint(data: &WirtingerData, q: usize) -> Result<MeridianAssignment> {
    if q == 0 {
        return Err(Error::InvalidIndex(
            "0".into(),
            "truncation degree must be at least 1".into(),
        ));
    }
    let n = data.n;
    let series = data
        .arc_strand
        .iter()
        .map(|&s| TruncatedSeries::generator(n, q, s + 1))
        .collect();
    let mut m = MeridianAssignment { q, series };
    for _ in 0..=q {
        let mut changed = false;
        for u in &data.undercrossings {
            let image = m.relation_image(u)?;
            if image != m.series[u.after] {
                m.series[u.after] = image;
                changed = true;
            }
        }
        if !changed {
            return Ok(m);
        }
    }
    Err(Error::NonConvergence(q + 1))
}

/// Wirtinger data with a solved meridian assignment; answers longitude and
/// μ queries at one truncation degree.
#[derive(Clone, Debug)]
pub struct Milnor {
    data: WirtingerData,
    meridians: MeridianAssignment,
}

impl Milnor {
    pub fn new(sigma: &TangleDiagram, q: usize) -> Result<Self> {
        let data = WirtingerData::new(sigma)?;
        let meridians = meridian_fixpoint(&data, q)?;
        Ok(Self { data, meridians })
    }

    pub fn data(&self) -> &WirtingerData {
        &self.data
    }

    pub fn meridians(&self) -> &MeridianAssignment {
        &self.meridians
    }

    fn check_strand(&self, j: usize) -> Result<()> {
        if (1..=self.data.n).contains(&j) {
            Ok(())
        } else {
            Err(Error::StrandIndex {
                index: j,
                n: self.data.n,
            })
        }
    }

    /// Product of `M(w)^ε` over the undercrossings of strand `j` (1-based),
    /// without framing correction.
    pub fn overpass_word(&self, j: usize) -> Result<TruncatedSeries> {
        self.check_strand(j)?;
        let (n, q) = (self.data.n, self.meridians.q);
        let mut acc = TruncatedSeries::one(n, q);
        for u in self
            .data
            .undercrossings
            .iter()
            .filter(|u| u.strand == j - 1)
        {
            acc = &acc * &self.meridians.get(u.over).pow(u.sign as i64)?;
        }
        Ok(acc)
    }

    /// Zero-framed longitude of strand `j` (1-based).
    pub fn longitude(&self, j: usize) -> Result<TruncatedSeries> {
        let word = self.overpass_word(j)?;
        let (n, q) = (self.data.n, self.meridians.q);
        let correction = TruncatedSeries::generator(n, q, j).pow(-self.data.self_writhe[j - 1])?;
        Ok(&word * &correction)
    }

    /// `μ(i_1 ... i_k j)`: the coefficient of `X_{i_1} ... X_{i_k}` in the
    /// longitude of strand `j`.
    pub fn mu(&self, index: &MultiIndex) -> Result<BigInt> {
        validate_mu_index(index, self.data.n)?;
        if index.len() - 1 > self.meridians.q {
            return Err(Error::InvalidIndex(
                index.to_string(),
                format!(
                    "length exceeds truncation degree {} plus one",
                    self.meridians.q
                ),
            ));
        }
        let (prefix, j) = index.entries().split_at(index.len() - 1);
        Ok(self.longitude(j[0])?.coeff_of(prefix))
    }
}

fn validate_mu_index(index: &MultiIndex, n: usize) -> Result<()> {
    if index.len() < 2 {
        return Err(Error::InvalidIndex(
            index.to_string(),
            "length must be at least 2".into(),
        ));
    }
    if let Some(&i) = index.entries().iter().find(|&&i| i > n) {
        return Err(Error::StrandIndex { index: i, n });
    }
    Ok(())
}

/// Half the signed count of crossings between strands `i` and `j`
/// (1-based).
pub fn linking_number(sigma: &TangleDiagram, i: usize, j: usize) -> Result<i64> {
    sigma.require_string_link()?;
    let n = sigma.strand_count();
    for k in [i, j] {
        if !(1..=n).contains(&k) {
            return Err(Error::StrandIndex { index: k, n });
        }
    }
    if i == j {
        return Err(Error::InvalidIndex(
            format!("{i}{j}"),
            "linking number needs two distinct strands".into(),
        ));
    }
    let pair = (i - 1, j - 1);
    let sum: i64 = sigma
        .crossings()
        .iter()
        .filter(|x| {
            (x.over_strand, x.under_strand) == pair || (x.under_strand, x.over_strand) == pair
        })
        .map(|x| x.sign as i64)
        .sum();
    if sum % 2 != 0 {
        return Err(Error::InvalidDiagram(format!(
            "odd signed crossing count {sum} between strands {i} and {j}"
        )));
    }
    Ok(sum / 2)
}

pub fn longitude(sigma: &TangleDiagram, j: usize, q: usize) -> Result<TruncatedSeries> {
    Milnor::new(sigma, q)?.longitude(j)
}

/// `μ(I)` computed at truncation degree `|I| - 1`.
pub fn mu(sigma: &TangleDiagram, index: &MultiIndex) -> Result<BigInt> {
    validate_mu_index(index, sigma.strand_count())?;
    Milnor::new(sigma, index.len() - 1)?.mu(index)
}

/// `μ(I)` at an explicit truncation degree `q >= |I| - 1`.
pub fn mu_with_truncation(sigma: &TangleDiagram, index: &MultiIndex, q: usize) -> Result<BigInt> {
    validate_mu_index(index, sigma.strand_count())?;
    Milnor::new(sigma, q)?.mu(index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::MorseEvent;

    fn idx(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    fn braid(n: usize, w: &[i32]) -> TangleDiagram {
        TangleDiagram::from_braid(n, w).unwrap()
    }

    type S = TruncatedSeries;

    #[test]
    fn trivial_string_link() {
        let t = TangleDiagram::identity(3);
        let m = Milnor::new(&t, 2).unwrap();
        for s in 0..3 {
            for &a in m.data().strand_arcs(s) {
                assert_eq!(m.meridians().get(a), &S::generator(3, 2, s + 1));
            }
            assert_eq!(m.longitude(s + 1).unwrap(), S::one(3, 2));
        }
        for i in MultiIndex::permutations(3) {
            assert_eq!(mu(&t, &i).unwrap(), BigInt::from(0));
        }
        assert_eq!(linking_number(&t, 1, 3).unwrap(), 0);
    }

    #[test]
    fn positive_clasp() {
        let clasp = braid(2, &[1, 1]);
        assert_eq!(linking_number(&clasp, 1, 2).unwrap(), 1);
        assert_eq!(linking_number(&clasp, 2, 1).unwrap(), 1);
        assert_eq!(mu(&clasp, &idx("12")).unwrap(), BigInt::from(1));
        assert_eq!(mu(&clasp, &idx("21")).unwrap(), BigInt::from(1));

        let q = 3;
        let m = Milnor::new(&clasp, q).unwrap();
        assert!(m.meridians().satisfies(m.data()));
        assert_eq!(m.longitude(2).unwrap(), S::generator(2, q, 1));
        let top = *m.data().strand_arcs(1).last().unwrap();
        let x1 = S::generator(2, q, 1);
        let expect = &(&x1.inverse().unwrap() * &S::generator(2, q, 2)) * &x1;
        assert_eq!(m.meridians().get(top), &expect);
    }

    #[test]
    fn borromean_commutator() {
        // A13 A23 A13^-1 A23^-1, band generators A13 = s2 s1 s1 s2^-1 and
        // A23 = s2 s2; the longitude of strand 3 is the commutator of the
        // meridians of strands 1 and 2
        let a13 = [2, 1, 1, -2];
        let a23 = [2, 2];
        let inv = |w: &[i32]| w.iter().rev().map(|g| -g).collect::<Vec<_>>();
        let word: Vec<i32> = [&a13[..], &a23[..], &inv(&a13), &inv(&a23)].concat();
        let b = braid(3, &word);
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert_eq!(linking_number(&b, i, j).unwrap(), 0);
        }
        assert_eq!(mu(&b, &idx("123")).unwrap(), BigInt::from(1));
        assert_eq!(mu(&b, &idx("213")).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn index_validation() {
        let t = braid(3, &[1, 1]);
        assert!(mu(&t, &idx("1")).is_err());
        assert!(mu(&t, &idx("14")).is_err());
        assert!(mu_with_truncation(&t, &idx("123"), 1).is_err());
        assert!("112".parse::<MultiIndex>().is_err());
        assert!(linking_number(&t, 2, 2).is_err());
        assert!(linking_number(&t, 2, 5).is_err());
        assert!(Milnor::new(&t, 0).is_err());
        assert!(linking_number(&braid(2, &[1]), 1, 2).is_err());
    }

    #[test]
    fn self_crossings_and_framing() {
        // a curl on strand 1 then a clasp with strand 2
        let mut events = vec![
            MorseEvent::Cup(1),
            MorseEvent::cross(0, crate::tangle::Over::Lower),
            MorseEvent::Cap(1),
        ];
        events.extend(braid(2, &[1, 1]).events().iter().copied());
        let t = TangleDiagram::new(2, events).unwrap();
        let w = WirtingerData::new(&t).unwrap();
        assert_eq!(w.self_writhe(0).abs(), 1);
        assert_eq!(mu(&t, &idx("21")).unwrap(), BigInt::from(1));
        let m = Milnor::new(&t, 2).unwrap();
        let lon = m.longitude(1).unwrap();
        assert_eq!(lon.coeff_of(&[1]), BigInt::from(0));
        assert_eq!(lon.coeff_of(&[2]), BigInt::from(1));
        assert_eq!(m.overpass_word(1).unwrap().coeff_of(&[2]), BigInt::from(1));
    }

    #[test]
    fn higher_truncation_agrees() {
        let b = braid(3, &[1, 1, 2, 1, 1, -2, 2, 2, -1, -1, 2, 2]);
        for i in MultiIndex::permutations(3) {
            assert_eq!(mu(&b, &i).unwrap(), mu_with_truncation(&b, &i, 4).unwrap());
        }
    }
}
