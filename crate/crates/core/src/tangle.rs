//! Tangle diagrams encoded as Morse words.
//!
//! A diagram is a row of `n` endpoints at the bottom and `n` at the top,
//! connected through a sequence of slices. Each slice is a cup (local
//! minimum, adds two positions), a cap (local maximum, removes two) or a
//! crossing of two adjacent positions. Paths are oriented from their bottom
//! endpoint to their top endpoint.
//!
//! Positions inside [`MorseEvent`] are 0-based. Strand labels exposed by
//! the public API (strand indices, [`MultiIndex`] entries) are 1-based.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::diagram::{ClosedDiagram, Crossing, CrossingTag};
use crate::error::{Error, Result};

/// Which of the two strands entering a crossing slice passes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Over {
    /// the strand entering at the lower position `p`
    Lower,
    /// the strand entering at position `p + 1`
    Higher,
}

impl Over {
    pub fn flip(self) -> Self {
        match self {
            Over::Lower => Over::Higher,
            Over::Higher => Over::Lower,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MorseEvent {
    /// new arc occupying positions `p` and `p + 1`
    Cup(usize),
    /// joins positions `p` and `p + 1`
    Cap(usize),
    /// swaps the strands at `p` and `p + 1`
    Cross { pos: usize, over: Over },
}

impl MorseEvent {
    pub fn cross(pos: usize, over: Over) -> Self {
        MorseEvent::Cross { pos, over }
    }

    fn shifted(self, by: usize) -> Self {
        match self {
            MorseEvent::Cup(p) => MorseEvent::Cup(p + by),
            MorseEvent::Cap(p) => MorseEvent::Cap(p + by),
            MorseEvent::Cross { pos, over } => MorseEvent::Cross {
                pos: pos + by,
                over,
            },
        }
    }

    /// Mirror image: the same slice with the opposite strand on top.
    pub fn mirrored(self) -> Self {
        match self {
            MorseEvent::Cross { pos, over } => MorseEvent::Cross {
                pos,
                over: over.flip(),
            },
            e => e,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Link {
    Endpoint(usize),
    Cross(usize, usize),
    Turn(usize),
}

/// A vertical segment at a fixed position between two events.
#[derive(Clone, Debug)]
struct Piece {
    below: Link,
    above: Link,
    strand: usize,
    up: bool,
}

/// A crossing of the diagram, recorded with the traversal orientation of
/// both strands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TangleCrossing {
    pub event: usize,
    /// 0-based strand (bottom endpoint) of the over-strand
    pub over_strand: usize,
    pub under_strand: usize,
    pub sign: i8,
    over_in: usize,
    over_out: usize,
    under_in: usize,
    under_out: usize,
}

#[derive(Clone, Debug)]
struct Layout {
    pieces: Vec<Piece>,
    /// pieces at each level; level `k` lies between events `k-1` and `k`
    rows: Vec<Vec<usize>>,
    /// pieces of each path in traversal order
    paths: Vec<Vec<usize>>,
    crossings: Vec<TangleCrossing>,
    /// crossing index of each event, `usize::MAX` for cups and caps
    event_crossing: Vec<usize>,
    /// bottom endpoint `i` is joined to top endpoint `perm[i]`
    perm: Vec<usize>,
}

/// A tangle with `n` bottom and `n` top endpoints, every path running from
/// the bottom to the top. String links are the tangles whose endpoint
/// permutation is the identity.
#[derive(Clone, Debug)]
pub struct TangleDiagram {
    n: usize,
    events: Vec<MorseEvent>,
    layout: Layout,
}

impl PartialEq for TangleDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.events == other.events
    }
}

impl Eq for TangleDiagram {}

impl TangleDiagram {
    pub fn new(n: usize, events: Vec<MorseEvent>) -> Result<Self> {
        let layout = Layout::trace(n, &events)?;
        Ok(Self { n, events, layout })
    }

    /// The trivial string link on `n` strands.
    pub fn identity(n: usize) -> Self {
        Self::new(n, vec![]).expect("empty word is valid")
    }

    /// Braid word with Artin generators: `k > 0` crosses positions `k`, `k+1`
    /// (1-based) with the lower strand over, `k < 0` with it under.
    pub fn from_braid(n: usize, word: &[i32]) -> Result<Self> {
        let events = word
            .iter()
            .map(|&k| {
                let pos = k.unsigned_abs() as usize;
                if k == 0 || pos >= n {
                    return Err(Error::InvalidDiagram(format!(
                        "braid generator {k} out of range for {n} strands"
                    )));
                }
                let over = if k > 0 { Over::Lower } else { Over::Higher };
                Ok(MorseEvent::cross(pos - 1, over))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, events)
    }

    pub fn strand_count(&self) -> usize {
        self.n
    }

    pub fn events(&self) -> &[MorseEvent] {
        &self.events
    }

    pub fn crossing_count(&self) -> usize {
        self.layout.crossings.len()
    }

    pub fn crossings(&self) -> &[TangleCrossing] {
        &self.layout.crossings
    }

    /// Endpoint permutation, 0-based: bottom `i` ends at top `perm[i]`.
    pub fn permutation(&self) -> &[usize] {
        &self.layout.perm
    }

    pub fn is_string_link(&self) -> bool {
        self.layout.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn require_string_link(&self) -> Result<()> {
        if self.is_string_link() {
            Ok(())
        } else {
            Err(Error::NotStringLink(format!(
                "endpoint permutation {:?}",
                self.layout.perm
            )))
        }
    }

    fn check_strand(&self, i: usize) -> Result<usize> {
        if (1..=self.n).contains(&i) {
            Ok(i - 1)
        } else {
            Err(Error::StrandIndex {
                index: i,
                n: self.n,
            })
        }
    }

    /// `self · other`: `other` stacked on top of `self`.
    pub fn stack(&self, other: &TangleDiagram) -> Result<TangleDiagram> {
        if self.n != other.n {
            return Err(Error::StrandCountMismatch(self.n, other.n));
        }
        let events = self
            .events
            .iter()
            .chain(other.events.iter())
            .copied()
            .collect();
        TangleDiagram::new(self.n, events)
    }

    pub fn mirror(&self) -> TangleDiagram {
        let events = self.events.iter().map(|e| e.mirrored()).collect();
        TangleDiagram::new(self.n, events).expect("mirror preserves validity")
    }

    /// Sub-string-link on the strands not listed; positions are compacted and
    /// the surviving strands keep their relative order.
    pub fn delete_strands(&self, strands: &[usize]) -> Result<TangleDiagram> {
        self.require_string_link()?;
        let mut gone = vec![false; self.n];
        for &i in strands {
            gone[self.check_strand(i)?] = true;
        }
        let layout = &self.layout;
        let kept = |level: usize, pos: usize| !gone[layout.pieces[layout.rows[level][pos]].strand];
        let rank = |level: usize, pos: usize| (0..pos).filter(|&p| kept(level, p)).count();

        let mut events = Vec::new();
        for (k, ev) in self.events.iter().enumerate() {
            match *ev {
                MorseEvent::Cross { pos, over } => {
                    if kept(k, pos) && kept(k, pos + 1) {
                        events.push(MorseEvent::cross(rank(k, pos), over));
                    }
                }
                MorseEvent::Cup(p) => {
                    if kept(k + 1, p) {
                        events.push(MorseEvent::Cup(rank(k + 1, p)));
                    }
                }
                MorseEvent::Cap(p) => {
                    if kept(k, p) {
                        events.push(MorseEvent::Cap(rank(k, p)));
                    }
                }
            }
        }
        let n = gone.iter().filter(|g| !**g).count();
        TangleDiagram::new(n, events)
    }

    pub fn delete_strand(&self, i: usize) -> Result<TangleDiagram> {
        self.delete_strands(&[i])
    }

    /// The string link formed by the listed strands alone, relabelled
    /// `1..=k` in increasing order of their original labels.
    pub fn sub_string_link(&self, keep: &[usize]) -> Result<TangleDiagram> {
        for &i in keep {
            self.check_strand(i)?;
        }
        let drop: Vec<usize> = (1..=self.n).filter(|i| !keep.contains(i)).collect();
        self.delete_strands(&drop)
    }

    /// `σ_J`: strands in `keep` retain their diagram, every other strand is
    /// replaced by a trivial strand passing under everything. The trivial
    /// strands detour through reserved lanes on the left.
    pub fn trivialize(&self, keep: &[usize]) -> Result<TangleDiagram> {
        self.require_string_link()?;
        let mut keep_set = BTreeSet::new();
        for &i in keep {
            keep_set.insert(self.check_strand(i)? + 1);
        }
        let trivial: Vec<usize> = (1..=self.n).filter(|i| !keep_set.contains(i)).collect();
        if trivial.is_empty() {
            return Ok(self.clone());
        }
        let core = self.delete_strands(&trivial)?;

        let mut arrangement: Vec<usize> = (1..=self.n).collect();
        let mut descent = Vec::new();
        for (lane, &t) in trivial.iter().enumerate() {
            let mut pos = arrangement.iter().position(|&s| s == t).unwrap();
            while pos > lane {
                // the detouring strand enters at pos and goes under
                descent.push(MorseEvent::cross(pos - 1, Over::Lower));
                arrangement.swap(pos - 1, pos);
                pos -= 1;
            }
        }
        let shift = trivial.len();
        let mut events = descent.clone();
        events.extend(core.events.iter().map(|e| e.shifted(shift)));
        events.extend(descent.iter().rev().map(|e| e.mirrored()));
        TangleDiagram::new(self.n, events)
    }

    /// Connects top endpoint `k` to bottom endpoint `k` by crossing-free arcs.
    pub fn close(&self) -> ClosedDiagram {
        let layout = &self.layout;
        let mut seen = vec![false; self.n];
        // (event, is_over) encounters per component
        let mut components: Vec<Vec<(usize, bool)>> = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut encounters = Vec::new();
            let mut s = start;
            while !seen[s] {
                seen[s] = true;
                let path = &layout.paths[s];
                for w in path.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    let piece = &layout.pieces[a];
                    let link = if piece.up { piece.above } else { piece.below };
                    if let Link::Cross(ev, next) = link {
                        debug_assert_eq!(next, b);
                        let x = layout.crossing_of_event(ev);
                        encounters.push((ev, x.over_in == a));
                    }
                }
                s = layout.perm[s];
            }
            components.push(encounters);
        }

        let crossing_index = &layout.event_crossing;
        let mut ports = vec![[usize::MAX; 4]; layout.crossings.len()];
        let mut edge_base = 0;
        let mut free_loops = 0;
        for encounters in &components {
            let m = encounters.len();
            if m == 0 {
                free_loops += 1;
                continue;
            }
            // edge `edge_base + j` arrives at encounter j
            for (j, &(ev, is_over)) in encounters.iter().enumerate() {
                let slot = &mut ports[crossing_index[ev]];
                let incoming = edge_base + j;
                let outgoing = edge_base + (j + 1) % m;
                if is_over {
                    slot[2] = incoming;
                    slot[3] = outgoing;
                } else {
                    slot[0] = incoming;
                    slot[1] = outgoing;
                }
            }
            edge_base += m;
        }
        let crossings = layout
            .crossings
            .iter()
            .zip(ports)
            .map(|(x, [ui, uo, oi, oo])| Crossing {
                under_in: ui,
                under_out: uo,
                over_in: oi,
                over_out: oo,
                sign: x.sign,
                tag: CrossingTag {
                    over_strand: x.over_strand + 1,
                    under_strand: x.under_strand + 1,
                },
            })
            .collect();
        ClosedDiagram::from_parts(crossings, edge_base, free_loops)
            .expect("closure of a valid tangle")
    }

    /// Per-strand crossing sequence in traversal order: `(crossing index,
    /// is_over)` for every crossing met along 0-based path `s`.
    pub fn path_crossings(&self, s: usize) -> Vec<(usize, bool)> {
        let layout = &self.layout;
        let mut out = Vec::new();
        for w in layout.paths[s].windows(2) {
            let piece = &layout.pieces[w[0]];
            let link = if piece.up { piece.above } else { piece.below };
            if let Link::Cross(ev, _) = link {
                let idx = layout.event_crossing[ev];
                out.push((idx, layout.crossings[idx].over_in == w[0]));
            }
        }
        out
    }
}

impl Layout {
    fn crossing_of_event(&self, ev: usize) -> &TangleCrossing {
        &self.crossings[self.event_crossing[ev]]
    }

    fn trace(n: usize, events: &[MorseEvent]) -> Result<Layout> {
        let invalid =
            |k: usize, msg: String| Error::InvalidDiagram(format!("event {}: {msg}", k + 1));
        let mut pieces: Vec<Piece> = Vec::new();
        let new_piece = |pieces: &mut Vec<Piece>, below: Link| {
            pieces.push(Piece {
                below,
                above: Link::Endpoint(usize::MAX),
                strand: usize::MAX,
                up: true,
            });
            pieces.len() - 1
        };

        let mut row: Vec<usize> = (0..n)
            .map(|p| new_piece(&mut pieces, Link::Endpoint(p)))
            .collect();
        let mut rows = vec![row.clone()];
        for (k, ev) in events.iter().enumerate() {
            let width = row.len();
            match *ev {
                MorseEvent::Cross { pos, .. } => {
                    if pos + 1 >= width {
                        return Err(invalid(
                            k,
                            format!("crossing at {} exceeds width {width}", pos + 1),
                        ));
                    }
                    let (a, b) = (row[pos], row[pos + 1]);
                    let a2 = new_piece(&mut pieces, Link::Cross(k, a));
                    let b2 = new_piece(&mut pieces, Link::Cross(k, b));
                    pieces[a].above = Link::Cross(k, a2);
                    pieces[b].above = Link::Cross(k, b2);
                    row[pos] = b2;
                    row[pos + 1] = a2;
                }
                MorseEvent::Cup(p) => {
                    if p > width {
                        return Err(invalid(
                            k,
                            format!("cup at {} exceeds width {width}", p + 1),
                        ));
                    }
                    let left = new_piece(&mut pieces, Link::Endpoint(usize::MAX));
                    let right = new_piece(&mut pieces, Link::Turn(left));
                    pieces[left].below = Link::Turn(right);
                    row.splice(p..p, [left, right]);
                }
                MorseEvent::Cap(p) => {
                    if p + 1 >= width {
                        return Err(invalid(
                            k,
                            format!("cap at {} exceeds width {width}", p + 1),
                        ));
                    }
                    let (a, b) = (row[p], row[p + 1]);
                    pieces[a].above = Link::Turn(b);
                    pieces[b].above = Link::Turn(a);
                    row.drain(p..p + 2);
                }
            }
            rows.push(row.clone());
        }
        if row.len() != n {
            return Err(Error::InvalidDiagram(format!(
                "top width {} differs from {n}",
                row.len()
            )));
        }
        for (p, &piece) in row.iter().enumerate() {
            pieces[piece].above = Link::Endpoint(p);
        }

        let mut visited = vec![false; pieces.len()];
        let mut paths = Vec::with_capacity(n);
        let mut perm = Vec::with_capacity(n);
        for (s, &first) in rows[0].iter().enumerate() {
            let mut cur = first;
            let mut up = true;
            let mut path = Vec::new();
            loop {
                if visited[cur] {
                    return Err(Error::InvalidDiagram(format!(
                        "path from bottom {} revisits a segment",
                        s + 1
                    )));
                }
                visited[cur] = true;
                pieces[cur].strand = s;
                pieces[cur].up = up;
                path.push(cur);
                let link = if up {
                    pieces[cur].above
                } else {
                    pieces[cur].below
                };
                match link {
                    Link::Endpoint(p) => {
                        if !up {
                            return Err(Error::InvalidDiagram(format!(
                                "path from bottom {} returns to the bottom at {}",
                                s + 1,
                                p + 1
                            )));
                        }
                        perm.push(p);
                        break;
                    }
                    Link::Cross(_, next) => cur = next,
                    Link::Turn(next) => {
                        cur = next;
                        up = !up;
                    }
                }
            }
            paths.push(path);
        }
        if visited.iter().any(|v| !v) {
            return Err(Error::InvalidDiagram(
                "diagram contains a closed component".into(),
            ));
        }

        let mut crossings = Vec::new();
        for (k, ev) in events.iter().enumerate() {
            if let MorseEvent::Cross { pos, over } = *ev {
                let (a, b) = (rows[k][pos], rows[k][pos + 1]);
                let (a2, b2) = (rows[k + 1][pos + 1], rows[k + 1][pos]);
                let (pa, pb) = (&pieces[a], &pieces[b]);
                let dir = |up: bool| if up { 1i8 } else { -1 };
                let orient = |lo: usize, hi: usize, up: bool| if up { (lo, hi) } else { (hi, lo) };
                let (a_in, a_out) = orient(a, a2, pa.up);
                let (b_in, b_out) = orient(b, b2, pb.up);
                let handed = match over {
                    Over::Lower => 1,
                    Over::Higher => -1,
                };
                let sign = dir(pa.up) * dir(pb.up) * handed;
                let x = match over {
                    Over::Lower => TangleCrossing {
                        event: k,
                        over_strand: pa.strand,
                        under_strand: pb.strand,
                        sign,
                        over_in: a_in,
                        over_out: a_out,
                        under_in: b_in,
                        under_out: b_out,
                    },
                    Over::Higher => TangleCrossing {
                        event: k,
                        over_strand: pb.strand,
                        under_strand: pa.strand,
                        sign,
                        over_in: b_in,
                        over_out: b_out,
                        under_in: a_in,
                        under_out: a_out,
                    },
                };
                crossings.push(x);
            }
        }
        let mut event_crossing = vec![usize::MAX; events.len()];
        for (idx, x) in crossings.iter().enumerate() {
            event_crossing[x.event] = idx;
        }
        Ok(Layout {
            pieces,
            rows,
            paths,
            crossings,
            event_crossing,
            perm,
        })
    }
}

/// A sequence of distinct 1-based strand labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &e in &entries {
            if e == 0 {
                return Err(Error::InvalidIndex(
                    fmt_seq(&entries),
                    "labels start at 1".into(),
                ));
            }
            if !seen.insert(e) {
                return Err(Error::InvalidIndex(
                    fmt_seq(&entries),
                    format!("label {e} repeats"),
                ));
            }
        }
        Ok(Self(entries))
    }

    pub fn empty() -> Self {
        Self(vec![])
    }

    /// `1 2 ... n`.
    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when the entries are exactly `1..=n` in some order.
    pub fn is_permutation_of(&self, n: usize) -> bool {
        self.0.len() == n && self.0.iter().all(|&e| e <= n)
    }

    pub fn is_subsequence_of(&self, other: &MultiIndex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|e| it.any(|x| x == e))
    }

    /// All `2^k` subsequences, in order of the bitmask over positions
    /// (bit `b` selects entry `b`).
    pub fn subsequences(&self) -> Vec<MultiIndex> {
        let k = self.0.len();
        (0u32..(1 << k))
            .map(|mask| {
                MultiIndex(
                    (0..k)
                        .filter(|b| mask & (1 << b) != 0)
                        .map(|b| self.0[b])
                        .collect(),
                )
            })
            .collect()
    }

    /// All permutations of `1..=n` in lexicographic order.
    pub fn permutations(n: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(MultiIndex(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| cur[i] < cur[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

fn fmt_seq(entries: &[usize]) -> String {
    if entries.iter().all(|&e| e < 10) {
        entries.iter().map(|e| e.to_string()).collect()
    } else {
        entries
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{}", fmt_seq(&self.0))
        }
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    /// Digits (`312`) or comma-separated labels (`3,1,12`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::InvalidIndex(s.to_string(), msg.to_string());
        if s.is_empty() || s == "∅" || s == "-" {
            return Ok(Self::empty());
        }
        let entries: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| bad("expected integers"))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| bad("expected digits"))
                })
                .collect::<Result<_>>()?
        };
        MultiIndex::new(entries)
    }
}

/// `b_I`: the layered `n`-braid in which string `m` runs from bottom point
/// `i_m` to top point `i_{m+1}` (string `n` to `i_1`), and string `m`
/// passes under every string `m' > m`.
pub fn braid_b(index: &MultiIndex) -> Result<TangleDiagram> {
    let n = index.len();
    if n == 0 || !index.is_permutation_of(n) {
        return Err(Error::InvalidIndex(
            index.to_string(),
            "not a permutation of 1..n".into(),
        ));
    }
    let seq = index.entries();
    // string m (0-based) starts at slot seq[m]-1, ends at slot seq[m+1]-1
    let mut at_slot = vec![0usize; n];
    let mut target = vec![0usize; n];
    for m in 0..n {
        at_slot[seq[m] - 1] = m;
        target[m] = seq[(m + 1) % n] - 1;
    }
    let mut events = Vec::new();
    loop {
        let mut swapped = false;
        for p in 0..n - 1 {
            let (lo, hi) = (at_slot[p], at_slot[p + 1]);
            if target[lo] > target[hi] {
                let over = if lo > hi { Over::Lower } else { Over::Higher };
                events.push(MorseEvent::cross(p, over));
                at_slot.swap(p, p + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    TangleDiagram::new(n, events)
}

/// The knot `closure(b_I · σ_J)`.
pub fn sigma_ij_knot(
    sigma: &TangleDiagram,
    index: &MultiIndex,
    sub: &MultiIndex,
) -> Result<ClosedDiagram> {
    sigma_ij_tangle(sigma, index, sub).map(|t| t.close())
}

/// The tangle `b_I · σ_J` whose closure is the knot of [`sigma_ij_knot`].
pub fn sigma_ij_tangle(
    sigma: &TangleDiagram,
    index: &MultiIndex,
    sub: &MultiIndex,
) -> Result<TangleDiagram> {
    sigma.require_string_link()?;
    if !index.is_permutation_of(sigma.strand_count()) {
        return Err(Error::InvalidIndex(
            index.to_string(),
            format!("not a permutation of 1..{}", sigma.strand_count()),
        ));
    }
    if !sub.is_subsequence_of(index) {
        return Err(Error::NotSubsequence(sub.to_string(), index.to_string()));
    }
    braid_b(index)?.stack(&sigma.trivialize(sub.entries())?)
}

impl fmt::Display for TangleDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "strands {}", self.n)?;
        for ev in &self.events {
            match *ev {
                MorseEvent::Cross {
                    pos,
                    over: Over::Lower,
                } => writeln!(f, "O {}", pos + 1)?,
                MorseEvent::Cross {
                    pos,
                    over: Over::Higher,
                } => writeln!(f, "U {}", pos + 1)?,
                MorseEvent::Cup(p) => writeln!(f, "cup {}", p + 1)?,
                MorseEvent::Cap(p) => writeln!(f, "cap {}", p + 1)?,
            }
        }
        Ok(())
    }
}

impl FromStr for TangleDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_tangle(s)
    }
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokens(s: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    for (ln, line) in s.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut offset = 0;
        for piece in line.split_whitespace() {
            let column = line[offset..].find(piece).unwrap() + offset;
            offset = column + piece.len();
            out.push(Token {
                text: piece,
                line: ln + 1,
                column: column + 1,
            });
        }
    }
    out
}

/// Parses the `.tangle` grammar (`strands n` followed by `O p`, `U p`,
/// `cup p`, `cap p`) or the braid shorthand `braid n: w1 w2 ...`.
pub fn parse_tangle(s: &str) -> Result<TangleDiagram> {
    let toks = tokens(s);
    let err = |t: Option<&Token>, msg: String| match t {
        Some(t) => Error::Parse {
            line: t.line,
            column: t.column,
            message: msg,
        },
        None => Error::Parse {
            line: s.lines().count().max(1),
            column: 1,
            message: msg,
        },
    };
    let mut it = toks.iter().peekable();
    let head = it.next().ok_or_else(|| err(None, "empty input".into()))?;
    let int = |t: Option<&Token>, what: &str| -> Result<i64> {
        let t = t.ok_or_else(|| err(None, format!("expected {what}")))?;
        t.text
            .parse::<i64>()
            .map_err(|_| err(Some(t), format!("expected {what}, found `{}`", t.text)))
    };
    let position = |t: Option<&Token>| -> Result<usize> {
        let v = int(t, "a position")?;
        if v < 1 {
            return Err(err(t, format!("position {v} must be at least 1")));
        }
        Ok(v as usize - 1)
    };

    match head.text {
        "braid" => {
            // `braid n:` or `braid n :`
            let nt = it.next();
            let raw = nt.ok_or_else(|| err(None, "expected strand count".into()))?;
            let count = raw.text.trim_end_matches(':');
            let n: usize = count
                .parse()
                .map_err(|_| err(nt, format!("expected strand count, found `{}`", raw.text)))?;
            if !raw.text.ends_with(':') {
                match it.next() {
                    Some(t) if t.text == ":" => {}
                    t => return Err(err(t, "expected `:`".into())),
                }
            }
            let mut word = Vec::new();
            for t in it {
                let k: i32 = t
                    .text
                    .parse()
                    .map_err(|_| err(Some(t), format!("expected generator, found `{}`", t.text)))?;
                if k == 0 || k.unsigned_abs() as usize >= n {
                    return Err(err(
                        Some(t),
                        format!("generator {k} out of range for {n} strands"),
                    ));
                }
                word.push(k);
            }
            TangleDiagram::from_braid(n, &word)
        }
        "strands" => {
            let nt = it.next();
            let n = int(nt, "strand count")?;
            if n < 0 {
                return Err(err(nt, "negative strand count".into()));
            }
            let n = n as usize;
            let mut events = Vec::new();
            let mut width = n;
            while let Some(t) = it.next() {
                let arg = it.next();
                let p = position(arg)?;
                let ev = match t.text {
                    "O" | "o" => MorseEvent::cross(p, Over::Lower),
                    "U" | "u" => MorseEvent::cross(p, Over::Higher),
                    "cup" => MorseEvent::Cup(p),
                    "cap" => MorseEvent::Cap(p),
                    other => return Err(err(Some(t), format!("unknown event `{other}`"))),
                };
                let ok = match ev {
                    MorseEvent::Cup(p) => p <= width,
                    MorseEvent::Cap(p) | MorseEvent::Cross { pos: p, .. } => p + 1 < width,
                };
                if !ok {
                    return Err(err(
                        arg,
                        format!("position {} out of range for width {width}", p + 1),
                    ));
                }
                match ev {
                    MorseEvent::Cup(_) => width += 2,
                    MorseEvent::Cap(_) => width -= 2,
                    _ => {}
                }
                events.push(ev);
            }
            if width != n {
                return Err(err(
                    None,
                    format!("diagram ends with width {width}, expected {n}"),
                ));
            }
            TangleDiagram::new(n, events).map_err(|e| err(Some(head), e.to_string()))
        }
        other => Err(err(
            Some(head),
            format!("expected `strands` or `braid`, found `{other}`"),
        )),
    }
}
