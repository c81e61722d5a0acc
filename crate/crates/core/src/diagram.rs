//! Closed link diagrams as crossings joined by oriented edges.
//!
//! Each crossing has four ports: the incoming and outgoing edges of its
//! under-strand and of its over-strand. An edge runs from the out-port of
//! one crossing to the in-port of the next. Components with no crossings
//! are kept only as a count of free loops.

use crate::error::{Error, Result};

/// Which source strands met at a crossing (1-based labels of the tangle
/// the diagram was closed from).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct CrossingTag {
    pub over_strand: usize,
    pub under_strand: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub under_in: usize,
    pub under_out: usize,
    pub over_in: usize,
    pub over_out: usize,
    /// `+1` when the over-strand, rotated a quarter turn counterclockwise,
    /// points along the under-strand
    pub sign: i8,
    pub tag: CrossingTag,
}

impl Crossing {
    pub fn ports(&self) -> [usize; 4] {
        [self.under_in, self.under_out, self.over_in, self.over_out]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedDiagram {
    crossings: Vec<Crossing>,
    edge_count: usize,
    free_loops: usize,
}

impl ClosedDiagram {
    pub fn from_parts(
        crossings: Vec<Crossing>,
        edge_count: usize,
        free_loops: usize,
    ) -> Result<Self> {
        let mut incoming = vec![0u8; edge_count];
        let mut outgoing = vec![0u8; edge_count];
        for (k, x) in crossings.iter().enumerate() {
            if x.sign != 1 && x.sign != -1 {
                return Err(Error::InvalidDiagram(format!(
                    "crossing {k} has sign {}",
                    x.sign
                )));
            }
            let out_of_range = |e: usize| Error::InvalidDiagram(format!("edge {e} out of range"));
            for e in [x.under_in, x.over_in] {
                *incoming.get_mut(e).ok_or_else(|| out_of_range(e))? += 1;
            }
            for e in [x.under_out, x.over_out] {
                *outgoing.get_mut(e).ok_or_else(|| out_of_range(e))? += 1;
            }
        }
        if let Some(e) = (0..edge_count).find(|&e| incoming[e] != 1 || outgoing[e] != 1) {
            return Err(Error::InvalidDiagram(format!(
                "edge {e} is not paired exactly once at each end"
            )));
        }
        Ok(Self {
            crossings,
            edge_count,
            free_loops,
        })
    }

    /// Disjoint union of `k` crossing-free circles.
    pub fn unlink(k: usize) -> Self {
        Self {
            crossings: vec![],
            edge_count: 0,
            free_loops: k,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|x| x.sign as i64).sum()
    }

    /// Successor of every edge along its component.
    pub fn successors(&self) -> Vec<usize> {
        let mut next = vec![usize::MAX; self.edge_count];
        for x in &self.crossings {
            next[x.under_in] = x.under_out;
            next[x.over_in] = x.over_out;
        }
        next
    }

    /// Edges of each component with at least one crossing, each list starting
    /// at the lowest edge id; components ordered by that id.
    pub fn edge_cycles(&self) -> Vec<Vec<usize>> {
        let next = self.successors();
        let mut seen = vec![false; self.edge_count];
        let mut out = Vec::new();
        for start in 0..self.edge_count {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                cycle.push(e);
                e = next[e];
            }
            out.push(cycle);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.edge_cycles().len() + self.free_loops
    }

    /// Component index of every edge, in the order of [`Self::edge_cycles`].
    pub fn edge_components(&self) -> Vec<usize> {
        let mut comp = vec![0; self.edge_count];
        for (c, cycle) in self.edge_cycles().iter().enumerate() {
            for &e in cycle {
                comp[e] = c;
            }
        }
        comp
    }

    fn check_crossing(&self, c: usize) -> Result<()> {
        if c < self.crossings.len() {
            Ok(())
        } else {
            Err(Error::InvalidCrossing(c))
        }
    }

    /// Exchanges over and under at crossing `c`; the sign flips.
    pub fn switch_crossing(&self, c: usize) -> Result<Self> {
        self.check_crossing(c)?;
        let mut out = self.clone();
        let x = &mut out.crossings[c];
        *x = Crossing {
            under_in: x.over_in,
            under_out: x.over_out,
            over_in: x.under_in,
            over_out: x.under_out,
            sign: -x.sign,
            tag: CrossingTag {
                over_strand: x.tag.under_strand,
                under_strand: x.tag.over_strand,
            },
        };
        Ok(out)
    }

    /// Oriented smoothing of crossing `c`: the incoming under-edge continues
    /// into the outgoing over-edge and vice versa.
    pub fn smooth_crossing(&self, c: usize) -> Result<Self> {
        self.check_crossing(c)?;
        let x = self.crossings[c];
        Ok(self.remove_crossings(&[c], &[(x.under_in, x.over_out), (x.over_in, x.under_out)]))
    }

    /// Changes every crossing; the mirror image.
    pub fn mirror(&self) -> Self {
        (0..self.crossings.len()).fold(self.clone(), |d, c| d.switch_crossing(c).unwrap())
    }

    /// Drops the listed crossings, identifying the given edge pairs, then
    /// relabels edges compactly in order of their smallest old id.
    fn remove_crossings(&self, removed: &[usize], merges: &[(usize, usize)]) -> Self {
        let mut parent: Vec<usize> = (0..self.edge_count).collect();
        fn find(parent: &mut [usize], mut e: usize) -> usize {
            while parent[e] != e {
                parent[e] = parent[parent[e]];
                e = parent[e];
            }
            e
        }
        for &(a, b) in merges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let kept: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(k, _)| !removed.contains(k))
            .map(|(_, x)| *x)
            .collect();

        let mut touched = vec![false; self.edge_count];
        for x in &kept {
            for e in x.ports() {
                let r = find(&mut parent, e);
                touched[r] = true;
            }
        }
        let mut label = vec![usize::MAX; self.edge_count];
        let mut next_label = 0;
        let mut free_loops = self.free_loops;
        for e in 0..self.edge_count {
            if find(&mut parent, e) == e {
                if touched[e] {
                    label[e] = next_label;
                    next_label += 1;
                } else {
                    free_loops += 1;
                }
            }
        }
        let crossings = kept
            .into_iter()
            .map(|x| {
                let mut relabel = |e: usize| label[find(&mut parent, e)];
                Crossing {
                    under_in: relabel(x.under_in),
                    under_out: relabel(x.under_out),
                    over_in: relabel(x.over_in),
                    over_out: relabel(x.over_out),
                    sign: x.sign,
                    tag: x.tag,
                }
            })
            .collect();
        Self::from_parts(crossings, next_label, free_loops).expect("smoothing preserves pairing")
    }

    /// Removes a nugatory kink at crossing `c` (an edge leaving `c` and
    /// returning to it with no crossing in between), if there is one.
    pub fn remove_kink(&self, c: usize) -> Result<Option<Self>> {
        self.check_crossing(c)?;
        let x = self.crossings[c];
        if x.under_in != x.over_out && x.over_in != x.under_out {
            return Ok(None);
        }
        let mut out =
            self.remove_crossings(&[c], &[(x.under_in, x.over_out), (x.over_in, x.under_out)]);
        // smoothing a kink splits off one extra circle
        out.free_loops -= 1;
        Ok(Some(out))
    }
}
