//! HOMFLYPT and Conway polynomials by skein recursion.
//!
//! Normalization: `P(unknot) = 1` and
//! `t^{-1} P(L+) - t P(L-) = z P(L0)`; the Conway polynomial is the same
//! recursion at `t = 1`.
//!
//! Each node of the recursion is a diagram with a basepoint on every
//! component. Edges are relabelled along the traversal (components in order
//! of their lowest edge, each from that edge), so traversal order is edge
//! order. A diagram whose crossings are all first met on the over-strand is
//! an unlink. Otherwise the first crossing met from below is resolved: the
//! switched diagram keeps the labelling and is one crossing closer to
//! descending, the smoothed one has a crossing fewer.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::diagram::ClosedDiagram;
use crate::error::{Error, Result};
use crate::laurent::{LPoly, LaurentPoly2};

pub const DEFAULT_BUDGET: u64 = 1 << 24;
pub const DEFAULT_MEMO_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug)]
struct X {
    ui: u32,
    uo: u32,
    oi: u32,
    oo: u32,
    sign: i8,
}

#[derive(Clone, Debug)]
struct Pd {
    xs: Vec<X>,
    edges: u32,
    loops: u32,
}

impl Pd {
    fn from_diagram(d: &ClosedDiagram) -> Pd {
        let xs = d
            .crossings()
            .iter()
            .map(|x| X {
                ui: x.under_in as u32,
                uo: x.under_out as u32,
                oi: x.over_in as u32,
                oo: x.over_out as u32,
                sign: x.sign,
            })
            .collect();
        Pd {
            xs,
            edges: d.edge_count() as u32,
            loops: d.free_loops() as u32,
        }
    }

    /// Removes crossing `k` identifying `ui~oo` and `oi~uo` (the oriented
    /// smoothing), then compacts edge labels.
    fn smooth(&self, k: usize) -> Pd {
        let n = self.edges as usize;
        let mut parent: Vec<u32> = (0..self.edges).collect();
        fn find(parent: &mut [u32], mut e: u32) -> u32 {
            while parent[e as usize] != e {
                let p = parent[parent[e as usize] as usize];
                parent[e as usize] = p;
                e = p;
            }
            e
        }
        let x = self.xs[k];
        for (a, b) in [(x.ui, x.oo), (x.oi, x.uo)] {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb) as usize] = ra.min(rb);
            }
        }
        let mut touched = vec![false; n];
        for (j, y) in self.xs.iter().enumerate() {
            if j != k {
                for e in [y.ui, y.uo, y.oi, y.oo] {
                    let r = find(&mut parent, e);
                    touched[r as usize] = true;
                }
            }
        }
        let mut label = vec![u32::MAX; n];
        let mut next = 0;
        let mut loops = self.loops;
        for e in 0..self.edges {
            if find(&mut parent, e) == e {
                if touched[e as usize] {
                    label[e as usize] = next;
                    next += 1;
                } else {
                    loops += 1;
                }
            }
        }
        let xs = self
            .xs
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, y)| {
                let mut l = |e: u32| label[find(&mut parent, e) as usize];
                X {
                    ui: l(y.ui),
                    uo: l(y.uo),
                    oi: l(y.oi),
                    oo: l(y.oo),
                    sign: y.sign,
                }
            })
            .collect();
        Pd {
            xs,
            edges: next,
            loops,
        }
    }

    fn switch(&self, k: usize) -> Pd {
        let mut out = self.clone();
        let x = &mut out.xs[k];
        *x = X {
            ui: x.oi,
            uo: x.oo,
            oi: x.ui,
            oo: x.uo,
            sign: -x.sign,
        };
        out
    }

    /// Repeatedly removes kinks (an edge from a crossing back to itself).
    fn strip_kinks(mut self) -> Pd {
        while let Some(k) = self.xs.iter().position(|x| x.ui == x.oo || x.oi == x.uo) {
            self = self.smooth(k);
            self.loops -= 1;
        }
        self
    }

    fn successors(&self) -> Vec<u32> {
        let mut next = vec![u32::MAX; self.edges as usize];
        for x in &self.xs {
            next[x.ui as usize] = x.uo;
            next[x.oi as usize] = x.oo;
        }
        next
    }

    /// Relabels edges in traversal order from each component's lowest edge;
    /// returns the component sizes in order.
    fn canonicalize(&self) -> (Pd, Vec<u32>) {
        let next = self.successors();
        let mut label = vec![u32::MAX; self.edges as usize];
        let mut sizes = Vec::new();
        let mut fresh = 0u32;
        for start in 0..self.edges {
            if label[start as usize] != u32::MAX {
                continue;
            }
            let begin = fresh;
            let mut e = start;
            while label[e as usize] == u32::MAX {
                label[e as usize] = fresh;
                fresh += 1;
                e = next[e as usize];
            }
            sizes.push(fresh - begin);
        }
        let l = |e: u32| label[e as usize];
        let mut xs: Vec<X> = self
            .xs
            .iter()
            .map(|x| X {
                ui: l(x.ui),
                uo: l(x.uo),
                oi: l(x.oi),
                oo: l(x.oo),
                sign: x.sign,
            })
            .collect();
        xs.sort_by_key(|x| x.ui);
        (
            Pd {
                xs,
                edges: self.edges,
                loops: self.loops,
            },
            sizes,
        )
    }

    /// Groups of components that share crossings, as sub-diagrams (without
    /// free loops), with their component counts.
    fn split(&self, sizes: &[u32]) -> Vec<(Pd, u32)> {
        let mut comp_of = vec![0u32; self.edges as usize];
        let mut offset = 0;
        for (c, &s) in sizes.iter().enumerate() {
            for e in offset..offset + s {
                comp_of[e as usize] = c as u32;
            }
            offset += s;
        }
        let mut parent: Vec<u32> = (0..sizes.len() as u32).collect();
        fn find(parent: &mut [u32], mut c: u32) -> u32 {
            while parent[c as usize] != c {
                c = parent[c as usize];
            }
            c
        }
        for x in &self.xs {
            let (a, b) = (
                find(&mut parent, comp_of[x.ui as usize]),
                find(&mut parent, comp_of[x.oi as usize]),
            );
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
        let roots: Vec<u32> = (0..sizes.len() as u32)
            .filter(|&c| find(&mut parent, c) == c)
            .collect();
        if roots.len() == 1 {
            return vec![(
                Pd {
                    xs: self.xs.clone(),
                    edges: self.edges,
                    loops: 0,
                },
                sizes.len() as u32,
            )];
        }
        roots
            .iter()
            .map(|&r| {
                let mut label = vec![u32::MAX; self.edges as usize];
                let mut fresh = 0;
                let mut comps = 0;
                let mut offset = 0;
                for (c, &s) in sizes.iter().enumerate() {
                    if find(&mut parent, c as u32) == r {
                        comps += 1;
                        for e in offset..offset + s {
                            label[e as usize] = fresh;
                            fresh += 1;
                        }
                    }
                    offset += s;
                }
                let l = |e: u32| label[e as usize];
                let xs = self
                    .xs
                    .iter()
                    .filter(|x| label[x.ui as usize] != u32::MAX)
                    .map(|x| X {
                        ui: l(x.ui),
                        uo: l(x.uo),
                        oi: l(x.oi),
                        oo: l(x.oo),
                        sign: x.sign,
                    })
                    .collect();
                (
                    Pd {
                        xs,
                        edges: fresh,
                        loops: 0,
                    },
                    comps,
                )
            })
            .collect()
    }

    fn key(&self, sizes: &[u32], cap: i32) -> Vec<u32> {
        let mut key = Vec::with_capacity(3 + sizes.len() + 3 * self.xs.len());
        key.push(cap as u32);
        key.push(sizes.len() as u32);
        key.extend_from_slice(sizes);
        for x in &self.xs {
            key.push(x.ui);
            key.push(x.oi);
            key.push(x.sign as u32);
        }
        key
    }
}

/// A specialization of the skein recursion: the coefficient ring and the
/// relation solved for the resolved crossing.
pub(crate) trait SkeinRing {
    type V: Clone;
    fn zero() -> Self::V;
    /// Value of the `k+1`-component unlink divided by that of the unknot.
    fn delta_pow(k: u32) -> Self::V;
    fn mul(a: &Self::V, b: &Self::V) -> Self::V;
    /// Value at a crossing of sign `sign`, given the diagram with that
    /// crossing switched and the one with it smoothed.
    fn resolve(sign: i8, switched: &Self::V, smoothed: &Self::V) -> Self::V;
    fn truncate(v: &mut Self::V, cap: i32);
}

pub(crate) struct Homfly;

impl SkeinRing for Homfly {
    type V = LaurentPoly2;

    fn zero() -> LaurentPoly2 {
        LaurentPoly2::zero()
    }

    fn delta_pow(k: u32) -> LaurentPoly2 {
        // ((t^-1 - t) z^-1)^k
        let delta = LaurentPoly2::from_terms([((-1, -1), 1), ((1, -1), -1)]);
        delta.pow(k)
    }

    fn mul(a: &LaurentPoly2, b: &LaurentPoly2) -> LaurentPoly2 {
        a * b
    }

    fn resolve(sign: i8, switched: &LaurentPoly2, smoothed: &LaurentPoly2) -> LaurentPoly2 {
        if sign > 0 {
            // P(L+) = t^2 P(L-) + t z P(L0)
            &switched.shift(2, 0) + &smoothed.shift(1, 1)
        } else {
            // P(L-) = t^-2 P(L+) - t^-1 z P(L0)
            &switched.shift(-2, 0) - &smoothed.shift(-1, 1)
        }
    }

    fn truncate(v: &mut LaurentPoly2, cap: i32) {
        v.truncate_z(cap);
    }
}

pub(crate) struct Conway;

impl SkeinRing for Conway {
    type V = LPoly<'z'>;

    fn zero() -> LPoly<'z'> {
        LPoly::zero()
    }

    fn delta_pow(k: u32) -> LPoly<'z'> {
        if k == 0 {
            LPoly::one()
        } else {
            LPoly::zero()
        }
    }

    fn mul(a: &LPoly<'z'>, b: &LPoly<'z'>) -> LPoly<'z'> {
        a * b
    }

    fn resolve(sign: i8, switched: &LPoly<'z'>, smoothed: &LPoly<'z'>) -> LPoly<'z'> {
        if sign > 0 {
            switched + &smoothed.shift(1)
        } else {
            switched - &smoothed.shift(1)
        }
    }

    fn truncate(v: &mut LPoly<'z'>, cap: i32) {
        v.truncate_above(cap);
    }
}

const NO_CAP: i32 = i32::MAX / 2;

struct Evaluator<R: SkeinRing> {
    budget: u64,
    memo_cap: usize,
    nodes: u64,
    memo: HashMap<Vec<u32>, R::V>,
}

impl<R: SkeinRing> Evaluator<R> {
    fn new(budget: u64, memo_cap: usize) -> Self {
        Self {
            budget,
            memo_cap,
            nodes: 0,
            memo: HashMap::new(),
        }
    }

    /// Value of `pd`, with all terms of `z`-degree above `cap` dropped. A
    /// `c`-component link has no terms below `z^{1-c}`.
    fn eval(&mut self, pd: Pd, cap: i32) -> Result<R::V> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let pd = pd.strip_kinks();
        let (pd, sizes) = pd.canonicalize();
        let loops = pd.loops;
        let total = sizes.len() as u32 + loops;
        if cap < 1 - total as i32 {
            return Ok(R::zero());
        }
        if pd.xs.is_empty() {
            return Ok(self.truncated(R::delta_pow(total - 1), cap));
        }
        if loops > 0 {
            let inner = self.eval_linked(Pd { loops: 0, ..pd }, &sizes, cap + loops as i32)?;
            return Ok(self.truncated(R::mul(&R::delta_pow(loops), &inner), cap));
        }
        self.eval_linked(pd, &sizes, cap)
    }

    /// `pd` is canonical, loop-free and has at least one crossing.
    fn eval_linked(&mut self, pd: Pd, sizes: &[u32], cap: i32) -> Result<R::V> {
        let groups = pd.split(sizes);
        if groups.len() > 1 {
            let g = groups.len() as u32;
            let floors: Vec<i32> = groups.iter().map(|(_, c)| 1 - *c as i32).collect();
            let floor_sum: i32 = floors.iter().sum();
            let mut acc = R::delta_pow(g - 1);
            for (i, (sub, _)) in groups.into_iter().enumerate() {
                let sub_cap = cap.saturating_add((g - 1) as i32 - (floor_sum - floors[i]));
                let v = self.eval(sub, sub_cap)?;
                acc = R::mul(&acc, &v);
            }
            return Ok(self.truncated(acc, cap));
        }

        let key = pd.key(sizes, cap);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }

        // first crossing reached from below
        let bad = pd
            .xs
            .iter()
            .enumerate()
            .filter(|(_, x)| x.ui < x.oi)
            .min_by_key(|(_, x)| x.ui)
            .map(|(k, _)| k);
        let value = match bad {
            None => self.truncated(R::delta_pow(sizes.len() as u32 - 1), cap),
            Some(k) => {
                let sign = pd.xs[k].sign;
                let switched = self.eval(pd.switch(k), cap)?;
                let smoothed = self.eval(pd.smooth(k), cap - 1)?;
                self.truncated(R::resolve(sign, &switched, &smoothed), cap)
            }
        };
        if self.memo.len() < self.memo_cap {
            self.memo.insert(key, value.clone());
        }
        Ok(value)
    }

    fn truncated(&self, mut v: R::V, cap: i32) -> R::V {
        if cap < NO_CAP / 2 {
            R::truncate(&mut v, cap);
        }
        v
    }
}

/// Skein evaluator configuration.
#[derive(Clone, Copy, Debug)]
pub struct SkeinEngine {
    /// maximum number of recursion nodes per evaluation
    pub budget: u64,
    /// maximum number of memoized subdiagrams per evaluation
    pub memo_cap: usize,
}

impl Default for SkeinEngine {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            memo_cap: DEFAULT_MEMO_CAP,
        }
    }
}

impl SkeinEngine {
    pub fn with_budget(budget: u64) -> Self {
        Self {
            budget,
            ..Self::default()
        }
    }

    fn run<R: SkeinRing>(&self, d: &ClosedDiagram, cap: i32) -> Result<R::V> {
        Evaluator::<R>::new(self.budget, self.memo_cap).eval(Pd::from_diagram(d), cap)
    }

    pub fn homfly(&self, d: &ClosedDiagram) -> Result<LaurentPoly2> {
        self.run::<Homfly>(d, NO_CAP)
    }

    /// HOMFLYPT polynomial with terms of `z`-degree above `cap` dropped.
    pub fn homfly_truncated(&self, d: &ClosedDiagram, cap: i32) -> Result<LaurentPoly2> {
        self.run::<Homfly>(d, cap)
    }

    pub fn conway(&self, d: &ClosedDiagram) -> Result<LPoly<'z'>> {
        self.run::<Conway>(d, NO_CAP)
    }

    pub fn conway_truncated(&self, d: &ClosedDiagram, cap: i32) -> Result<LPoly<'z'>> {
        self.run::<Conway>(d, cap)
    }

    /// Coefficient of `z^2` in the Conway polynomial of a knot.
    pub fn a2(&self, d: &ClosedDiagram) -> Result<BigInt> {
        require_knot(d)?;
        Ok(self.conway_truncated(d, 2)?.coeff(2))
    }

    /// The 0-th coefficient polynomial `P_0(K; t)` of a knot.
    pub fn p0(&self, d: &ClosedDiagram) -> Result<LPoly<'t'>> {
        require_knot(d)?;
        Ok(self.homfly_truncated(d, 0)?.coeff_z(0))
    }

    /// `d^m/dt^m P_0(K; t)` at `t = 1`.
    pub fn p0_deriv(&self, d: &ClosedDiagram, m: u32) -> Result<BigInt> {
        Ok(self.p0(d)?.derivative_at_one(m))
    }
}

fn require_knot(d: &ClosedDiagram) -> Result<()> {
    match d.component_count() {
        1 => Ok(()),
        c => Err(Error::NotAKnot(c)),
    }
}

pub fn homfly(d: &ClosedDiagram) -> Result<LaurentPoly2> {
    SkeinEngine::default().homfly(d)
}

pub fn conway(d: &ClosedDiagram) -> Result<LPoly<'z'>> {
    SkeinEngine::default().conway(d)
}

pub fn a2(d: &ClosedDiagram) -> Result<BigInt> {
    SkeinEngine::default().a2(d)
}

pub fn p0_deriv(d: &ClosedDiagram, m: u32) -> Result<BigInt> {
    SkeinEngine::default().p0_deriv(d, m)
}
