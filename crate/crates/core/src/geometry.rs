//! Chords of inscribed polygons and the even-crossing selection count.
//!
//! Only the circular order of the points matters. Choosing one edge per
//! polygon so that every chosen edge crosses an even number of the others is
//! the same as choosing an Eulerian transversal of the crossing graph, whose
//! parts are the polygons' edge sets.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::model::{ChordSystem, CycleTrianglesInstance, PartitionedGraph};
use crate::parity;

/// Unordered pair of distinct circle positions, stored smaller first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chord(usize, usize);

impl Chord {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::SharedEndpoint(a));
        }
        Ok(Chord(a.min(b), a.max(b)))
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.0, self.1)
    }
}

/// True iff the endpoints of `c2` lie on different arcs cut out by `c1`.
pub fn chords_cross(c1: Chord, c2: Chord, m: usize) -> Result<bool> {
    let (a, b) = c1.endpoints();
    let (c, d) = c2.endpoints();
    for p in [a, b, c, d] {
        if p >= m {
            return Err(Error::ChordSystem(format!("point {p} out of range 0..{m}")));
        }
    }
    for p in [c, d] {
        if p == a || p == b {
            return Err(Error::SharedEndpoint(p));
        }
    }
    let inside = |p: usize| a < p && p < b;
    Ok(inside(c) != inside(d))
}

/// Polygon edges in order: edge `k` joins vertex `k` and vertex `k+1`.
pub fn polygon_chords(polygon: &[usize]) -> Vec<Chord> {
    let len = polygon.len();
    (0..len)
        .map(|k| Chord::new(polygon[k], polygon[(k + 1) % len]).expect("polygon vertices are distinct"))
        .collect()
}

/// All chords of `cs`, polygon by polygon; the index of a chord in this list
/// is its vertex id in [`crossing_graph`].
pub fn chords(cs: &ChordSystem) -> Vec<Chord> {
    cs.polygons().iter().flat_map(|p| polygon_chords(p)).collect()
}

pub fn crossing_graph(cs: &ChordSystem) -> Result<PartitionedGraph> {
    let mut parts = Vec::with_capacity(cs.polygons().len());
    let mut owner = Vec::new();
    for (i, p) in cs.polygons().iter().enumerate() {
        let start = owner.len();
        owner.extend(std::iter::repeat_n(i, p.len()));
        parts.push((start..owner.len()).collect());
    }
    let all = chords(cs);
    let mut edges = Vec::new();
    for u in 0..all.len() {
        for v in u + 1..all.len() {
            if owner[u] != owner[v] && chords_cross(all[u], all[v], cs.points())? {
                edges.push((u, v));
            }
        }
    }
    PartitionedGraph::new(parts, edges)
        .map_err(|e| Error::violation(format!("crossing graph fails the partition hypotheses: {e}")))
}

pub fn count_even_crossing_selections(cs: &ChordSystem) -> Result<BigUint> {
    count_even_crossing_selections_within(cs, parity::DEFAULT_TRANSVERSAL_BUDGET)
}

pub fn count_even_crossing_selections_within(cs: &ChordSystem, budget: u64) -> Result<BigUint> {
    parity::count_eulerian_transversals_within(&crossing_graph(cs)?, budget)
}

/// The triangles of `inst` as polygons inscribed in the `3n`-gon.
pub fn chords_from_triangles(inst: &CycleTrianglesInstance) -> ChordSystem {
    ChordSystem::new(
        inst.vertex_count(),
        inst.triangles().iter().map(|t| t.to_vec()).collect(),
    )
    .expect("triangle partition gives disjoint polygons")
}
