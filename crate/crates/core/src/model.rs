//! Instance types: cycle-plus-triangles graphs, partitioned graphs with
//! odd parts, and chord systems of inscribed polygons.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Hamiltonian cycle `0 - 1 - ... - 3n-1 - 0` plus `n` vertex-disjoint
/// triangles covering all `3n` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleTrianglesInstance {
    n: usize,
    triangles: Vec<[usize; 3]>,
}

impl CycleTrianglesInstance {
    pub fn new(n: usize, triangles: Vec<[usize; 3]>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Partition("n must be positive".into()));
        }
        if triangles.len() != n {
            return Err(Error::Partition(format!(
                "expected {n} triangles, got {}",
                triangles.len()
            )));
        }
        let vertices = 3 * n;
        let mut seen = vec![false; vertices];
        for t in &triangles {
            for &v in t {
                if v >= vertices {
                    return Err(Error::Partition(format!(
                        "vertex {v} out of range 0..{vertices}"
                    )));
                }
                if seen[v] {
                    return Err(Error::Partition(format!("vertex {v} repeated")));
                }
                seen[v] = true;
            }
        }
        // With 3n slots and no repeats every vertex is covered.
        debug_assert!(seen.iter().all(|&s| s));
        Ok(CycleTrianglesInstance { n, triangles })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        3 * self.n
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Cycle edges `(i, i+1 mod 3n)` in vertex order.
    pub fn cycle_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.vertex_count();
        (0..m).map(move |i| (i, (i + 1) % m))
    }

    /// Triangle edges `(a,b), (b,c), (c,a)` for each triangle in stored order.
    pub fn triangle_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.triangles
            .iter()
            .flat_map(|&[a, b, c]| [(a, b), (b, c), (c, a)])
    }

    /// All `6n` multigraph edges, parallel edges repeated.
    pub fn multi_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cycle_edges().chain(self.triangle_edges())
    }

    /// Degree of every vertex counting multiplicity.
    pub fn multi_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for (u, v) in self.multi_edges() {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Simple adjacency lists (parallel edges collapsed), sorted.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut sets = vec![BTreeSet::new(); self.vertex_count()];
        for (u, v) in self.multi_edges() {
            sets[u].insert(v);
            sets[v].insert(u);
        }
        sets.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// The same instance with every vertex index shifted by `k` mod 3n.
    pub fn rotated(&self, k: usize) -> Self {
        let m = self.vertex_count();
        let triangles = self
            .triangles
            .iter()
            .map(|t| t.map(|v| (v + k) % m))
            .collect();
        CycleTrianglesInstance {
            n: self.n,
            triangles,
        }
    }

    /// Uniformly random partition of `0..3n` into triples. Triples are
    /// sorted internally and ordered by their smallest member.
    pub fn random(n: usize, seed: u64) -> Self {
        assert!(n >= 1, "n must be positive");
        let mut rng = SeededRng::new(seed);
        let mut perm: Vec<usize> = (0..3 * n).collect();
        rng.shuffle(&mut perm);
        let mut triangles: Vec<[usize; 3]> = perm
            .chunks_exact(3)
            .map(|c| {
                let mut t = [c[0], c[1], c[2]];
                t.sort_unstable();
                t
            })
            .collect();
        triangles.sort_unstable();
        CycleTrianglesInstance { n, triangles }
    }
}

/// Graph on a vertex set split into odd, independent parts such that the
/// bipartite graph between any two parts has only even degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedGraph {
    parts: Vec<Vec<usize>>,
    edges: BTreeSet<(usize, usize)>,
    part_of: BTreeMap<usize, usize>,
}

impl PartitionedGraph {
    pub fn new(parts: Vec<Vec<usize>>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut part_of = BTreeMap::new();
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::Graph(format!("part {i} is empty")));
            }
            if part.len() % 2 == 0 {
                return Err(Error::OddSize {
                    part: i,
                    size: part.len(),
                });
            }
            for &v in part {
                if part_of.insert(v, i).is_some() {
                    return Err(Error::Graph(format!("vertex {v} appears twice")));
                }
            }
        }

        let mut edge_set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Graph(format!("loop at vertex {u}")));
            }
            let (pu, pv) = match (part_of.get(&u), part_of.get(&v)) {
                (Some(&a), Some(&b)) => (a, b),
                _ => {
                    return Err(Error::Graph(format!(
                        "edge ({u}, {v}) uses a vertex outside every part"
                    )))
                }
            };
            if pu == pv {
                return Err(Error::Independence(u.min(v), u.max(v)));
            }
            if !edge_set.insert((u.min(v), u.max(v))) {
                return Err(Error::Graph(format!("duplicate edge ({u}, {v})")));
            }
        }

        // degree[v][j] = neighbours of v inside part j
        let mut degree: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &(u, v) in &edge_set {
            *degree.entry((u, part_of[&v])).or_default() += 1;
            *degree.entry((v, part_of[&u])).or_default() += 1;
        }
        if let Some((&(vertex, other_part), &degree)) = degree.iter().find(|(_, &d)| d % 2 == 1) {
            return Err(Error::Eulerian {
                vertex,
                other_part,
                degree,
            });
        }

        Ok(PartitionedGraph {
            parts,
            edges: edge_set,
            part_of,
        })
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// Edges with the smaller endpoint first, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.part_of.get(&v).copied()
    }

    /// Random graph whose parts get consecutive vertex ids in order. For
    /// each pair of parts a random subset of the 4-cycle basis
    /// `a0 - b0 - as - bt` is XOR-ed together, which draws uniformly from
    /// the even-degree edge sets of the complete bipartite graph.
    pub fn random(part_sizes: &[usize], seed: u64) -> Self {
        assert!(
            part_sizes.iter().all(|&s| s % 2 == 1),
            "part sizes must be odd"
        );
        let mut rng = SeededRng::new(seed);
        let mut parts = Vec::with_capacity(part_sizes.len());
        let mut next = 0;
        for &size in part_sizes {
            parts.push((next..next + size).collect::<Vec<_>>());
            next += size;
        }
        let mut edges = BTreeSet::new();
        let mut toggle = |u: usize, v: usize| {
            let e = (u.min(v), u.max(v));
            if !edges.remove(&e) {
                edges.insert(e);
            }
        };
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let (a, b) = (&parts[i], &parts[j]);
                for s in 1..a.len() {
                    for t in 1..b.len() {
                        if rng.coin() {
                            toggle(a[0], b[0]);
                            toggle(b[0], a[s]);
                            toggle(a[s], b[t]);
                            toggle(b[t], a[0]);
                        }
                    }
                }
            }
        }
        PartitionedGraph::new(parts, edges).expect("cycle-space combination is always valid")
    }
}

/// One chosen vertex per part, in part order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transversal {
    pub selection: Vec<usize>,
}

impl Transversal {
    pub fn new(selection: Vec<usize>) -> Self {
        Transversal { selection }
    }

    pub fn validate(&self, g: &PartitionedGraph) -> Result<()> {
        if self.selection.len() != g.parts().len() {
            return Err(Error::Selection(format!(
                "{} vertices selected for {} parts",
                self.selection.len(),
                g.parts().len()
            )));
        }
        for (i, &v) in self.selection.iter().enumerate() {
            if g.part_of(v) != Some(i) {
                return Err(Error::Selection(format!("vertex {v} is not in part {i}")));
            }
        }
        Ok(())
    }
}

/// Points `0..m` in circular order and vertex-disjoint closed polygonal
/// lines with an odd number of edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordSystem {
    points: usize,
    polygons: Vec<Vec<usize>>,
}

impl ChordSystem {
    pub fn new(points: usize, polygons: Vec<Vec<usize>>) -> Result<Self> {
        let mut used = BTreeSet::new();
        for (i, poly) in polygons.iter().enumerate() {
            if poly.len() < 3 || poly.len() % 2 == 0 {
                return Err(Error::ChordSystem(format!(
                    "polygon {i} has {} vertices, need an odd number >= 3",
                    poly.len()
                )));
            }
            for &p in poly {
                if p >= points {
                    return Err(Error::ChordSystem(format!(
                        "point {p} out of range 0..{points}"
                    )));
                }
                if !used.insert(p) {
                    return Err(Error::ChordSystem(format!("point {p} used twice")));
                }
            }
        }
        Ok(ChordSystem { points, polygons })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn polygons(&self) -> &[Vec<usize>] {
        &self.polygons
    }

    pub fn rotated(&self, k: usize) -> Self {
        let m = self.points;
        ChordSystem {
            points: m,
            polygons: self
                .polygons
                .iter()
                .map(|p| p.iter().map(|&v| (v + k) % m).collect())
                .collect(),
        }
    }

    /// `count` polygons with sizes drawn from {3, 5}, placed on a shuffled
    /// subset of `total + extra` points where `extra` is drawn from
    /// `0..=total`.
    pub fn random(count: usize, seed: u64) -> Self {
        let mut rng = SeededRng::new(seed);
        let sizes: Vec<usize> = (0..count).map(|_| *rng.pick(&[3, 5])).collect();
        let total: usize = sizes.iter().sum();
        let points = total + rng.below(total as u64 + 1) as usize;
        let mut perm: Vec<usize> = (0..points).collect();
        rng.shuffle(&mut perm);
        let mut polygons = Vec::with_capacity(count);
        let mut at = 0;
        for s in sizes {
            polygons.push(perm[at..at + s].to_vec());
            at += s;
        }
        ChordSystem::new(points, polygons).expect("generated polygons are disjoint")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_triangle_is_a_multigraph() {
        let inst = CycleTrianglesInstance::new(1, vec![[0, 1, 2]]).unwrap();
        assert_eq!(inst.multi_degrees(), vec![4, 4, 4]);
        assert_eq!(inst.neighbors(), vec![vec![1, 2], vec![0, 2], vec![0, 1]]);
    }

    #[test]
    fn two_triangles_valid() {
        let inst = CycleTrianglesInstance::new(2, vec![[0, 2, 4], [1, 3, 5]]).unwrap();
        assert_eq!(inst.vertex_count(), 6);
        assert!(inst.multi_degrees().iter().all(|&d| d == 4));
    }

    #[test]
    fn overlapping_triples_rejected() {
        let err = CycleTrianglesInstance::new(2, vec![[0, 1, 2], [2, 3, 4]]).unwrap_err();
        assert!(matches!(err, Error::Partition(_)), "{err}");
        let err = CycleTrianglesInstance::new(1, vec![[0, 1, 3]]).unwrap_err();
        assert!(matches!(err, Error::Partition(_)));
        assert!(CycleTrianglesInstance::new(2, vec![[0, 1, 2]]).is_err());
        assert!(CycleTrianglesInstance::new(0, vec![]).is_err());
    }

    #[test]
    fn random_n1_is_forced() {
        for seed in 0..5 {
            assert_eq!(CycleTrianglesInstance::random(1, seed).triangles(), &[[0, 1, 2]]);
        }
    }

    #[test]
    fn random_n2_hits_all_ten_partitions() {
        let found: BTreeSet<Vec<[usize; 3]>> = (0..400)
            .map(|s| CycleTrianglesInstance::random(2, s).triangles().to_vec())
            .collect();
        assert_eq!(found.len(), 10);
    }

    #[test]
    fn partitioned_examples() {
        assert!(PartitionedGraph::new(vec![vec![0], vec![1]], []).is_ok());
        assert!(matches!(
            PartitionedGraph::new(vec![vec![0], vec![1]], [(0, 1)]),
            Err(Error::Eulerian { .. })
        ));
        let g = PartitionedGraph::new(
            vec![vec![0, 1, 2], vec![3, 4, 5]],
            [(0, 3), (3, 1), (1, 4), (4, 0)],
        )
        .unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(g.has_edge(4, 1));
    }

    #[test]
    fn partitioned_errors() {
        assert!(matches!(
            PartitionedGraph::new(vec![vec![0, 1]], []),
            Err(Error::OddSize { part: 0, size: 2 })
        ));
        assert!(matches!(
            PartitionedGraph::new(vec![vec![0, 1, 2]], [(0, 1)]),
            Err(Error::Independence(0, 1))
        ));
        assert!(PartitionedGraph::new(vec![vec![0], vec![0]], []).is_err());
        assert!(PartitionedGraph::new(vec![vec![0], vec![1]], [(0, 7)]).is_err());
    }

    #[test]
    fn random_partitioned_single_vertices_edgeless() {
        for seed in 0..10 {
            assert_eq!(PartitionedGraph::random(&[1, 1], seed).edge_count(), 0);
        }
    }

    #[test]
    fn transversal_validation() {
        let g = PartitionedGraph::random(&[3, 3], 0);
        assert!(Transversal::new(vec![0, 3]).validate(&g).is_ok());
        assert!(Transversal::new(vec![3, 0]).validate(&g).is_err());
        assert!(Transversal::new(vec![0]).validate(&g).is_err());
    }

    #[test]
    fn chord_system_validation() {
        assert!(ChordSystem::new(6, vec![vec![0, 2, 4], vec![1, 3, 5]]).is_ok());
        assert!(ChordSystem::new(6, vec![vec![0, 2, 4, 1]]).is_err());
        assert!(ChordSystem::new(6, vec![vec![0, 2, 4], vec![4, 3, 5]]).is_err());
        assert!(ChordSystem::new(6, vec![vec![0, 2, 6]]).is_err());
        assert!(ChordSystem::new(6, vec![vec![0, 2, 2]]).is_err());
    }

    #[test]
    fn random_chord_systems_valid() {
        for seed in 0..50 {
            let cs = ChordSystem::random(1 + (seed % 4) as usize, seed);
            assert!(cs.polygons().iter().all(|p| p.len() == 3 || p.len() == 5));
        }
    }
}
