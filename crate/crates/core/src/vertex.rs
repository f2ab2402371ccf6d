//! Brute-force topological vertex.
//!
//! A 3D partition with legs `(μ1, μ2, μ3)` is a downward-closed subset of
//! `Z³≥0` containing three infinite cylinders:
//!
//! * leg 1 runs along the first axis: `{(i, j, k) : (j, k) ∈ μ1}`
//! * leg 2 runs along the second axis: `{(i, j, k) : (k, i) ∈ μ2}`
//! * leg 3 runs along the third axis: `{(i, j, k) : (i, j) ∈ μ3}`
//!
//! with the Ferrers convention of [`crate::partitions`]. The vertex series
//! counts the finite sets of boxes that can be added to the union of the legs,
//! graded by the number of added boxes, so its constant term is always 1.
//!
//! With this orientation the vertex is invariant under the cyclic rotation
//! `(μ1, μ2, μ3) -> (μ2, μ3, μ1)`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};
use crate::series::{pl_mul, pl_recip, qs_add, rat, PLaurent, QSeries};

/// Default cap on the number of enumerated configurations per vertex.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

type Cell = [u32; 3];

/// Asymptotic cross-sections of the three legs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LegTriple(pub [Partition; 3]);

impl LegTriple {
    pub fn new(leg1: Partition, leg2: Partition, leg3: Partition) -> Self {
        LegTriple([leg1, leg2, leg3])
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn legs(&self) -> &[Partition; 3] {
        &self.0
    }

    /// Membership in the union of the leg cylinders.
    pub fn contains(&self, [i, j, k]: Cell) -> bool {
        let [l1, l2, l3] = &self.0;
        l1.contains(j, k) || l2.contains(k, i) || l3.contains(i, j)
    }

    /// Cyclic rotation `(μ1, μ2, μ3) -> (μ2, μ3, μ1)`, induced by the
    /// coordinate map `(i, j, k) -> (j, k, i)`.
    pub fn rotate(&self) -> Self {
        let [a, b, c] = self.0.clone();
        LegTriple([b, c, a])
    }

    pub fn total_size(&self) -> u32 {
        self.0.iter().map(Partition::size).sum()
    }

    fn extent(&self) -> u32 {
        self.0.iter().map(Partition::extent).max().unwrap_or(0)
    }

    /// Number of boxes of the third leg's cylinder that also lie in the first
    /// or second leg.
    ///
    /// This is the length of the scheme-theoretic intersection of the
    /// thickened third-axis curve with the curve formed by the other two legs,
    /// i.e. the correction between "boxes added" and the holomorphic Euler
    /// characteristic when the third leg is a global curve.
    pub fn thickening_overlap(&self) -> u32 {
        let [l1, l2, l3] = &self.0;
        let bound = l1.row(0).max(l2.len() as u32);
        l3.cells()
            .map(|(i, j)| {
                (0..bound)
                    .filter(|&k| l1.contains(j, k) || l2.contains(k, i))
                    .count() as u32
            })
            .sum()
    }
}

impl fmt::Display for LegTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.0;
        write!(f, "[{a}, {b}, {c}]")
    }
}

/// Total order on boxes extending the product order: a box comes after all
/// boxes below it, so listing a downset in this order adds one addable box
/// at a time.
fn order_key(c: &Cell) -> (u32, u32, u32, u32) {
    (c[0] + c[1] + c[2], c[0], c[1], c[2])
}

struct Dfs<'a> {
    legs: &'a LegTriple,
    dim: u32,
    added: Vec<bool>,
    counts: Vec<u64>,
    states: u64,
    budget: u64,
    max_boxes: usize,
}

impl Dfs<'_> {
    fn index(&self, [i, j, k]: Cell) -> usize {
        debug_assert!(i < self.dim && j < self.dim && k < self.dim);
        ((i * self.dim + j) * self.dim + k) as usize
    }

    fn present(&self, c: Cell) -> bool {
        self.legs.contains(c) || self.added[self.index(c)]
    }

    fn addable(&self, c: Cell) -> bool {
        !self.present(c)
            && (0..3).all(|ax| {
                if c[ax] == 0 {
                    return true;
                }
                let mut below = c;
                below[ax] -= 1;
                self.present(below)
            })
    }

    fn run(&mut self, depth: usize, candidates: &[Cell]) -> bool {
        self.counts[depth] += 1;
        self.states += 1;
        if self.states > self.budget {
            return false;
        }
        if depth == self.max_boxes {
            return true;
        }
        for (idx, &cell) in candidates.iter().enumerate() {
            let slot = self.index(cell);
            self.added[slot] = true;
            let mut next: Vec<Cell> = candidates[idx + 1..].to_vec();
            for ax in 0..3 {
                let mut up = cell;
                up[ax] += 1;
                if self.addable(up) {
                    next.push(up);
                }
            }
            next.sort_by_key(order_key);
            let ok = self.run(depth + 1, &next);
            self.added[slot] = false;
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Counts of 3D partitions with legs `legs` and `n` added boxes, `n = 0..=k`.
///
/// Depth-first search adding boxes in increasing [`order_key`] order, so every
/// downward-closed extension is produced exactly once.
pub fn enumerate_counts(legs: &LegTriple, k: usize, budget: u64) -> Result<Vec<u64>> {
    let extent = legs.extent();
    let dim = extent + k as u32 + 2;
    let mut dfs = Dfs {
        legs,
        dim,
        added: vec![false; (dim as usize).pow(3)],
        counts: vec![0; k + 1],
        states: 0,
        budget,
        max_boxes: k,
    };
    let mut initial = Vec::new();
    for i in 0..=extent {
        for j in 0..=extent {
            for l in 0..=extent {
                if dfs.addable([i, j, l]) {
                    initial.push([i, j, l]);
                }
            }
        }
    }
    initial.sort_by_key(order_key);
    if !dfs.run(0, &initial) {
        return Err(Error::BudgetExceeded {
            budget,
            legs: legs.to_string(),
            k,
        });
    }
    Ok(dfs.counts)
}

/// Independent reference enumerator: level-by-level closure with explicit
/// sets and hash deduplication. Leg cylinders are materialized inside a
/// bounding cube. Exponential in memory; meant for small instances.
pub fn enumerate_counts_bfs(legs: &LegTriple, k: usize) -> Vec<u64> {
    let [l1, l2, l3] = legs.legs();
    let extent = [l1, l2, l3]
        .iter()
        .flat_map(|l| [l.len() as u32, l.parts().first().copied().unwrap_or(0)])
        .max()
        .unwrap_or(0);
    let dim = extent + k as u32 + 2;
    let mut cylinders: HashSet<Cell> = HashSet::new();
    for t in 0..dim {
        for (a, b) in l1.cells() {
            cylinders.insert([t, a, b]);
        }
        for (a, b) in l2.cells() {
            cylinders.insert([b, t, a]);
        }
        for (a, b) in l3.cells() {
            cylinders.insert([a, b, t]);
        }
    }
    let can_add = |set: &BTreeSet<Cell>, c: Cell| -> bool {
        if cylinders.contains(&c) || set.contains(&c) {
            return false;
        }
        let below = [
            c[0].checked_sub(1).map(|x| [x, c[1], c[2]]),
            c[1].checked_sub(1).map(|x| [c[0], x, c[2]]),
            c[2].checked_sub(1).map(|x| [c[0], c[1], x]),
        ];
        below
            .into_iter()
            .flatten()
            .all(|b| cylinders.contains(&b) || set.contains(&b))
    };
    // Boxes addable to the bare legs; everything else is reachable from
    // the upper neighbours of added boxes.
    let mut seeds = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for l in 0..dim {
                if can_add(&BTreeSet::new(), [i, j, l]) {
                    seeds.push([i, j, l]);
                }
            }
        }
    }
    let mut level: HashSet<BTreeSet<Cell>> = HashSet::from([BTreeSet::new()]);
    let mut counts = vec![1u64];
    for _ in 0..k {
        let mut next = HashSet::new();
        for set in &level {
            let mut candidates: BTreeSet<Cell> = seeds.iter().copied().collect();
            for c in set {
                candidates.extend([
                    [c[0] + 1, c[1], c[2]],
                    [c[0], c[1] + 1, c[2]],
                    [c[0], c[1], c[2] + 1],
                ]);
            }
            for c in candidates {
                if can_add(set, c) {
                    let mut bigger = set.clone();
                    bigger.insert(c);
                    next.insert(bigger);
                }
            }
        }
        counts.push(next.len() as u64);
        level = next;
    }
    counts
}

/// Memoizing front end for vertex computations.
///
/// The cache is keyed by the leg triple and keeps the longest count vector
/// computed so far; it is safe to share between threads.
#[derive(Debug)]
pub struct VertexEngine {
    budget: u64,
    cache: Mutex<HashMap<LegTriple, Arc<Vec<u64>>>>,
}

impl Default for VertexEngine {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET)
    }
}

impl VertexEngine {
    pub fn new(budget: u64) -> Self {
        VertexEngine {
            budget,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Configuration counts by number of added boxes, `0..=k`.
    pub fn counts(&self, legs: &LegTriple, k: usize) -> Result<Vec<u64>> {
        if let Some(hit) = self.cache.lock().unwrap().get(legs) {
            if hit.len() > k {
                return Ok(hit[..=k].to_vec());
            }
        }
        let counts = enumerate_counts(legs, k, self.budget)?;
        let mut cache = self.cache.lock().unwrap();
        let entry = cache
            .entry(legs.clone())
            .or_insert_with(|| Arc::new(Vec::new()));
        if entry.len() < counts.len() {
            *entry = Arc::new(counts.clone());
        }
        Ok(counts)
    }

    /// `V_{μ1 μ2 μ3}(p)` graded by added boxes, exact on `[0, k]`.
    pub fn vertex_series(&self, legs: &LegTriple, k: usize) -> Result<PLaurent> {
        let counts = self.counts(legs, k)?;
        Ok(PLaurent::from_terms(
            counts
                .iter()
                .enumerate()
                .map(|(n, &c)| (n as i64, rat(c as i64))),
            Some(k as i64),
        ))
    }

    /// `V_num / V_den`, exact on `[0, k]`.
    pub fn vertex_ratio(&self, num: &LegTriple, den: &LegTriple, k: usize) -> Result<PLaurent> {
        let n = self.vertex_series(num, k)?;
        let d = self.vertex_series(den, k)?;
        Ok(pl_mul(&n, &pl_recip(&d)?))
    }

    /// Local contribution of a thickened curve `Z_β × E` meeting the fixed
    /// curve described by the first two legs of `num`: the vertex ratio
    /// against the bare thickening, shifted by `p^{-overlap}` so that the
    /// grading is by Euler characteristic rather than by added boxes.
    pub fn thickening_ratio(&self, num: &LegTriple, k: usize) -> Result<PLaurent> {
        let den = LegTriple::new(Partition::empty(), Partition::empty(), num.0[2].clone());
        let shift = num.thickening_overlap() as i64 - den.thickening_overlap() as i64;
        Ok(self.vertex_ratio(num, &den, k)?.shift(-shift))
    }

    /// `Σ_{a ≤ a_max} F(a) q^a` with
    /// `F(a) = (1 - p) Σ_{α ⊢ a} p^{-α_1} V_{∅(1)α} / V_{∅∅α}`.
    pub fn f_series(&self, a_max: u32, k: usize) -> Result<QSeries> {
        let one_minus_p = PLaurent::from_ints(0, &[1, -1], None);
        let leg = Partition::new(vec![1]);
        self.thickening_sum(a_max, k, |alpha| {
            LegTriple::new(Partition::empty(), leg.clone(), alpha)
        })
        .map(|s| s.map_terms(|t| pl_mul(t, &one_minus_p)))
    }

    /// `Σ_{b ≤ b_max} N(b) q^b` with
    /// `N(b) = Σ_{β ⊢ b} p^{-(β_1 + ℓ(β) - 1)} V_{(1)(1)β} / V_{∅∅β}`.
    pub fn n_series(&self, b_max: u32, k: usize) -> Result<QSeries> {
        let leg = Partition::new(vec![1]);
        self.thickening_sum(b_max, k, |beta| {
            LegTriple::new(leg.clone(), leg.clone(), beta)
        })
    }

    fn thickening_sum(
        &self,
        max: u32,
        k: usize,
        legs_for: impl Fn(Partition) -> LegTriple,
    ) -> Result<QSeries> {
        let mut terms = Vec::with_capacity(max as usize + 1);
        for size in 0..=max {
            let mut acc = PLaurent::zero();
            for part in partitions_of(size) {
                acc = acc.add(&self.thickening_ratio(&legs_for(part), k)?);
            }
            terms.push(acc);
        }
        Ok(QSeries::new(0, terms, Some(max as i64)))
    }
}

/// Sum over all partitions of `n` of a per-partition series; helper for the
/// conjugation-symmetry property.
pub fn sum_over_partitions(n: u32, f: impl Fn(&Partition) -> Result<PLaurent>) -> Result<PLaurent> {
    partitions_of(n)
        .iter()
        .try_fold(PLaurent::zero(), |acc, p| Ok(acc.add(&f(p)?)))
}

/// `Π_{m ≥ 1} (1 - p^m)^{-m}` truncated at `p^k`, by direct power-series
/// multiplication of geometric factors.
pub fn macmahon_product(k: usize) -> Vec<u64> {
    let mut coeffs = vec![0u64; k + 1];
    coeffs[0] = 1;
    for m in 1..=k {
        // multiply by 1/(1 - p^m), m times
        for _ in 0..m {
            for n in m..=k {
                coeffs[n] += coeffs[n - m];
            }
        }
    }
    coeffs
}

/// Convenience: `qs_add` over a list.
pub fn sum_series(items: &[QSeries]) -> QSeries {
    items.iter().fold(QSeries::zero(), |acc, s| qs_add(&acc, s))
}
