//! Eulerian transversals of a partitioned graph and their parity.
//!
//! A transversal picks one vertex per part; it is Eulerian when every picked
//! vertex has an even number of picked neighbours. For graphs satisfying the
//! partition hypotheses the number of Eulerian transversals is always odd.
//! The independent check counts special sequences `(x, y)` where `x` is a
//! transversal and each `y_i` is `x_i` itself or a picked neighbour of `x_i`;
//! for fixed `x` there are `prod (1 + deg x_i)` of them, which is odd exactly
//! when `x` is Eulerian.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{PartitionedGraph, Transversal};

pub const DEFAULT_TRANSVERSAL_BUDGET: u64 = 100_000_000;

/// `(x, y)` with `x` a transversal and `y_i in {x_i} ∪ (N(x_i) ∩ x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpecialSequence {
    pub x: Transversal,
    pub y: Vec<usize>,
}

impl SpecialSequence {
    pub fn is_valid(&self, g: &PartitionedGraph) -> bool {
        let xs = &self.x.selection;
        self.x.validate(g).is_ok()
            && self.y.len() == xs.len()
            && xs
                .iter()
                .zip(&self.y)
                .all(|(&x, &y)| xs.contains(&y) && (y == x || g.has_edge(x, y)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityReport {
    pub transversal_count: BigUint,
    pub special_sequence_count: BigUint,
    pub is_odd: bool,
}

/// Dense adjacency over `(part, local index)` pairs.
struct Dense {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    adj: Vec<bool>,
    total: usize,
}

impl Dense {
    fn new(g: &PartitionedGraph) -> Self {
        let sizes: Vec<usize> = g.parts().iter().map(Vec::len).collect();
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut index = std::collections::BTreeMap::new();
        let mut total = 0;
        for part in g.parts() {
            offsets.push(total);
            for &v in part {
                index.insert(v, total);
                total += 1;
            }
        }
        let mut adj = vec![false; total * total];
        for (u, v) in g.edges() {
            let (a, b) = (index[&u], index[&v]);
            adj[a * total + b] = true;
            adj[b * total + a] = true;
        }
        Dense {
            sizes,
            offsets,
            adj,
            total,
        }
    }

    fn transversal_count(&self) -> BigUint {
        self.sizes.iter().map(|&s| BigUint::from(s)).product()
    }

    /// Visits the degree vector of every transversal whose flat index lies
    /// in `range`, enumerating parts as an odometer with part 0 slowest.
    fn scan<F: FnMut(&[usize])>(&self, range: std::ops::Range<u64>, mut visit: F) {
        let k = self.sizes.len();
        let mut digits = vec![0usize; k];
        let mut rest = range.start;
        for i in (0..k).rev() {
            digits[i] = (rest % self.sizes[i] as u64) as usize;
            rest /= self.sizes[i] as u64;
        }
        let mut picked = vec![0usize; k];
        let mut deg = vec![0usize; k];
        for _ in range {
            for i in 0..k {
                picked[i] = self.offsets[i] + digits[i];
            }
            for i in 0..k {
                let row = picked[i] * self.total;
                deg[i] = picked.iter().filter(|&&p| self.adj[row + p]).count();
            }
            visit(&deg);
            for i in (0..k).rev() {
                digits[i] += 1;
                if digits[i] < self.sizes[i] {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
}

#[derive(Default)]
struct Tally {
    eulerian: u64,
    special: BigUint,
    special_small: u128,
}

impl Tally {
    fn add(&mut self, deg: &[usize]) {
        if deg.iter().all(|d| d % 2 == 0) {
            self.eulerian += 1;
        }
        let small = deg
            .iter()
            .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128 + 1));
        match small.and_then(|p| self.special_small.checked_add(p)) {
            Some(s) => self.special_small = s,
            None => {
                let product: BigUint = deg.iter().map(|&d| BigUint::from(d + 1)).product();
                self.special += product;
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.eulerian += other.eulerian;
        self.special += other.special + BigUint::from(other.special_small);
        self
    }

    fn finish(self) -> (BigUint, BigUint) {
        (
            BigUint::from(self.eulerian),
            self.special + BigUint::from(self.special_small),
        )
    }
}

fn tally(g: &PartitionedGraph, budget: u64) -> Result<(BigUint, BigUint)> {
    let dense = Dense::new(g);
    let count = dense.transversal_count();
    if count > BigUint::from(budget) {
        return Err(Error::size("transversal enumeration", count, budget));
    }
    let total: u64 = count.try_into().expect("bounded by budget");
    let chunks = (rayon::current_num_threads() as u64 * 8).clamp(1, total.max(1));
    let step = total.div_ceil(chunks);
    let result = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = (c * step).min(total);
            let end = ((c + 1) * step).min(total);
            let mut t = Tally::default();
            dense.scan(start..end, |deg| t.add(deg));
            t
        })
        .reduce(Tally::default, Tally::merge);
    Ok(result.finish())
}

/// Both counts from a single enumeration pass:
/// `(eulerian transversals, special sequences)`.
pub fn counts_within(g: &PartitionedGraph, budget: u64) -> Result<(BigUint, BigUint)> {
    tally(g, budget)
}

pub fn is_eulerian_transversal(g: &PartitionedGraph, t: &Transversal) -> Result<bool> {
    t.validate(g)?;
    let xs = &t.selection;
    Ok(xs
        .iter()
        .all(|&x| xs.iter().filter(|&&y| g.has_edge(x, y)).count() % 2 == 0))
}

pub fn count_eulerian_transversals(g: &PartitionedGraph) -> Result<BigUint> {
    count_eulerian_transversals_within(g, DEFAULT_TRANSVERSAL_BUDGET)
}

pub fn count_eulerian_transversals_within(g: &PartitionedGraph, budget: u64) -> Result<BigUint> {
    Ok(tally(g, budget)?.0)
}

pub fn count_special_sequences(g: &PartitionedGraph) -> Result<BigUint> {
    count_special_sequences_within(g, DEFAULT_TRANSVERSAL_BUDGET)
}

pub fn count_special_sequences_within(g: &PartitionedGraph, budget: u64) -> Result<BigUint> {
    Ok(tally(g, budget)?.1)
}

pub fn verify_theorem1(g: &PartitionedGraph) -> Result<ParityReport> {
    verify_theorem1_within(g, DEFAULT_TRANSVERSAL_BUDGET)
}

pub fn verify_theorem1_within(g: &PartitionedGraph, budget: u64) -> Result<ParityReport> {
    let (transversal_count, special_sequence_count) = tally(g, budget)?;
    let is_odd = transversal_count.bit(0);
    if !is_odd {
        return Err(Error::violation(format!(
            "even number {transversal_count} of Eulerian transversals"
        )));
    }
    if special_sequence_count.bit(0) != is_odd {
        return Err(Error::violation(format!(
            "special-sequence count {special_sequence_count} disagrees in parity with {transversal_count}"
        )));
    }
    Ok(ParityReport {
        transversal_count,
        special_sequence_count,
        is_odd,
    })
}

/// Every transversal of `g`, part 0 varying slowest.
pub fn transversals(g: &PartitionedGraph) -> impl Iterator<Item = Transversal> + '_ {
    let parts = g.parts();
    let total: usize = parts.iter().map(Vec::len).product();
    (0..total).map(move |mut flat| {
        let mut selection = vec![0; parts.len()];
        for (i, part) in parts.iter().enumerate().rev() {
            selection[i] = part[flat % part.len()];
            flat /= part.len();
        }
        Transversal::new(selection)
    })
}

/// Materializes every special sequence by trying all `y` in `x^n` and
/// keeping the valid ones. Exponential; meant for small cases only.
pub fn enumerate_special_sequences(g: &PartitionedGraph) -> Vec<SpecialSequence> {
    let k = g.parts().len();
    let mut out = Vec::new();
    for x in transversals(g) {
        let combos = k.pow(k as u32);
        for mut flat in 0..combos {
            let mut y = Vec::with_capacity(k);
            for _ in 0..k {
                y.push(x.selection[flat % k]);
                flat /= k;
            }
            let seq = SpecialSequence { x: x.clone(), y };
            if seq.is_valid(g) {
                out.push(seq);
            }
        }
    }
    out
}
