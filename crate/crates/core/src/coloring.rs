//! Proper 3-colourings of cycle-plus-triangles graphs, their orbit count,
//! the connected red-blue colouring, and explicit list colourings.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::laurent::{ct_by_grid_within, GridSpec, DEFAULT_GRID_BUDGET};
use crate::model::CycleTrianglesInstance;
use crate::rng::SeededRng;

pub const DEFAULT_MAX_COLORING_N: usize = 6;

pub const WHITE: u8 = 0;
pub const BLUE: u8 = 1;
pub const RED: u8 = 2;

/// Colour index in {0, 1, 2} per vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coloring(Vec<u8>);

impl Coloring {
    pub fn new(inst: &CycleTrianglesInstance, colors: Vec<u8>) -> Result<Self> {
        check_proper(inst, &colors)?;
        Ok(Coloring(colors))
    }

    pub fn colors(&self) -> &[u8] {
        &self.0
    }

    /// Applies `perm[old] = new` to every vertex.
    pub fn permuted(&self, perm: [u8; 3]) -> Coloring {
        Coloring(self.0.iter().map(|&c| perm[c as usize]).collect())
    }
}

pub fn check_proper(inst: &CycleTrianglesInstance, colors: &[u8]) -> Result<()> {
    if colors.len() != inst.vertex_count() {
        return Err(Error::Dimension {
            expected: inst.vertex_count(),
            got: colors.len(),
        });
    }
    if let Some(v) = colors.iter().position(|&c| c > 2) {
        return Err(Error::Graph(format!("vertex {v} has colour {} outside 0..3", colors[v])));
    }
    match inst.multi_edges().find(|&(u, v)| colors[u] == colors[v]) {
        Some((u, v)) => Err(Error::ImproperColoring(u.min(v), u.max(v))),
        None => Ok(()),
    }
}

fn check_budget(inst: &CycleTrianglesInstance, max_n: usize) -> Result<()> {
    if inst.n() > max_n {
        return Err(Error::size("colouring enumeration (n)", inst.n(), max_n));
    }
    Ok(())
}

/// Neighbours of each vertex with smaller index.
fn earlier_neighbors(inst: &CycleTrianglesInstance) -> Vec<Vec<usize>> {
    inst.neighbors()
        .into_iter()
        .enumerate()
        .map(|(v, ns)| ns.into_iter().filter(|&u| u < v).collect())
        .collect()
}

/// Backtracking stream of proper colourings in lexicographic order.
pub struct Colorings {
    earlier: Vec<Vec<usize>>,
    assign: Vec<u8>,
    next_try: Vec<u8>,
    depth: usize,
    floor: usize,
    exhausted: bool,
}

impl Colorings {
    fn with_prefix(inst: &CycleTrianglesInstance, prefix: &[u8]) -> Self {
        let m = inst.vertex_count();
        let earlier = earlier_neighbors(inst);
        let mut assign = vec![0; m];
        assign[..prefix.len()].copy_from_slice(prefix);
        let exhausted = (0..prefix.len()).any(|v| earlier[v].iter().any(|&u| assign[u] == assign[v]));
        Colorings {
            earlier,
            assign,
            next_try: vec![0; m],
            depth: prefix.len(),
            floor: prefix.len(),
            exhausted,
        }
    }
}

impl Iterator for Colorings {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        let m = self.assign.len();
        if self.exhausted {
            return None;
        }
        if self.floor == m {
            self.exhausted = true;
            return Some(Coloring(self.assign.clone()));
        }
        loop {
            let v = self.depth;
            let found = (self.next_try[v]..3).find(|&c| self.earlier[v].iter().all(|&u| self.assign[u] != c));
            match found {
                Some(c) => {
                    self.assign[v] = c;
                    self.next_try[v] = c + 1;
                    if v + 1 == m {
                        return Some(Coloring(self.assign.clone()));
                    }
                    self.depth += 1;
                    self.next_try[self.depth] = 0;
                }
                None => {
                    if v == self.floor {
                        self.exhausted = true;
                        return None;
                    }
                    self.depth -= 1;
                }
            }
        }
    }
}

pub fn enumerate_colorings(inst: &CycleTrianglesInstance) -> Result<Colorings> {
    enumerate_colorings_within(inst, DEFAULT_MAX_COLORING_N)
}

pub fn enumerate_colorings_within(inst: &CycleTrianglesInstance, max_n: usize) -> Result<Colorings> {
    check_budget(inst, max_n)?;
    Ok(Colorings::with_prefix(inst, &[]))
}

pub fn count_colorings(inst: &CycleTrianglesInstance) -> Result<BigUint> {
    count_colorings_within(inst, DEFAULT_MAX_COLORING_N)
}

/// Total proper colourings, split across threads by the colour of vertex 0.
pub fn count_colorings_within(inst: &CycleTrianglesInstance, max_n: usize) -> Result<BigUint> {
    check_budget(inst, max_n)?;
    let counts: Vec<u64> = (0..3u8)
        .into_par_iter()
        .map(|c| Colorings::with_prefix(inst, &[c]).count() as u64)
        .collect();
    Ok(counts.into_iter().map(BigUint::from).sum())
}

pub fn count_essentially_different(inst: &CycleTrianglesInstance) -> Result<BigUint> {
    count_essentially_different_within(inst, DEFAULT_MAX_COLORING_N)
}

/// Orbits under the six colour permutations. The action is free because
/// every triangle is rainbow, so the division is exact.
pub fn count_essentially_different_within(inst: &CycleTrianglesInstance, max_n: usize) -> Result<BigUint> {
    let total = count_colorings_within(inst, max_n)?;
    let six = BigUint::from(6u32);
    if !(&total % &six).is_zero() {
        return Err(Error::violation(format!("{total} proper colourings is not a multiple of 6")));
    }
    Ok(total / six)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitParityReport {
    pub proper_colorings: BigUint,
    pub essentially_different: BigUint,
    pub is_odd: bool,
}

pub fn verify_orbit_parity(inst: &CycleTrianglesInstance, max_n: usize) -> Result<OrbitParityReport> {
    let proper_colorings = count_colorings_within(inst, max_n)?;
    let essentially_different = count_essentially_different_within(inst, max_n)?;
    let is_odd = essentially_different.bit(0);
    if !is_odd {
        return Err(Error::violation(format!(
            "even number {essentially_different} of essentially different colourings"
        )));
    }
    Ok(OrbitParityReport {
        proper_colorings,
        essentially_different,
        is_odd,
    })
}

/// Colour class sizes and, for each colour `k`, the number of cycle edges
/// whose two endpoint colours are the other two colours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorStats {
    pub class_sizes: [usize; 3],
    pub cycle_pair_counts: [usize; 3],
}

pub fn color_stats(inst: &CycleTrianglesInstance, c: &Coloring) -> Result<ColorStats> {
    check_proper(inst, c.colors())?;
    let colors = c.colors();
    let mut class_sizes = [0; 3];
    for &x in colors {
        class_sizes[x as usize] += 1;
    }
    let mut cycle_pair_counts = [0; 3];
    for (u, v) in inst.cycle_edges() {
        let missing = 3 - colors[u] - colors[v];
        cycle_pair_counts[missing as usize] += 1;
    }
    let n = inst.n();
    if class_sizes != [n; 3] || cycle_pair_counts != [n; 3] {
        return Err(Error::violation(format!(
            "unbalanced colouring: classes {class_sizes:?}, cycle pairs {cycle_pair_counts:?}"
        )));
    }
    Ok(ColorStats {
        class_sizes,
        cycle_pair_counts,
    })
}

/// Connected components of the subgraph induced on non-white vertices.
pub fn red_blue_components(inst: &CycleTrianglesInstance, c: &Coloring) -> Vec<Vec<usize>> {
    let colors = c.colors();
    let adj = inst.neighbors();
    let mut seen = vec![false; colors.len()];
    let mut comps = Vec::new();
    for start in 0..colors.len() {
        if colors[start] == WHITE || seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &u in &adj[v] {
                if colors[u] != WHITE && !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// All `2^r` colourings obtained by swapping blue and red on any subset of
/// the `r` red-blue components.
pub fn component_flips(inst: &CycleTrianglesInstance, c: &Coloring) -> Vec<Coloring> {
    let comps = red_blue_components(inst, c);
    (0u64..1 << comps.len())
        .map(|mask| {
            let mut colors = c.colors().to_vec();
            for (k, comp) in comps.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    for &v in comp {
                        colors[v] = 3 - colors[v];
                    }
                }
            }
            Coloring(colors)
        })
        .collect()
}

pub fn find_connected_red_blue(inst: &CycleTrianglesInstance) -> Result<Coloring> {
    find_connected_red_blue_within(inst, DEFAULT_MAX_COLORING_N)
}

/// First proper colouring, in enumeration order, with some colour playing
/// white such that blue ∪ red is connected. The result is relabelled so
/// that white is 0 and the remaining colours keep their relative order.
pub fn find_connected_red_blue_within(inst: &CycleTrianglesInstance, max_n: usize) -> Result<Coloring> {
    for c in enumerate_colorings_within(inst, max_n)? {
        for white in 0..3u8 {
            let mut perm = [0u8; 3];
            let mut next = 1;
            for old in 0..3u8 {
                if old == white {
                    perm[old as usize] = WHITE;
                } else {
                    perm[old as usize] = next;
                    next += 1;
                }
            }
            let candidate = c.permuted(perm);
            if red_blue_components(inst, &candidate).len() == 1 {
                return Ok(candidate);
            }
        }
    }
    Err(Error::violation("no proper colouring has a connected blue-red part"))
}

/// Three distinct nonzero rational colours per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment(GridSpec);

impl ListAssignment {
    pub fn new(lists: Vec<[BigRational; 3]>) -> Result<Self> {
        Ok(ListAssignment(GridSpec::new(lists)?))
    }

    pub fn random(vertices: usize, rng: &mut SeededRng) -> Self {
        ListAssignment(GridSpec::random_per_vertex(vertices, rng))
    }

    pub fn lists(&self) -> &[[BigRational; 3]] {
        self.0.sets()
    }

    pub fn as_grid(&self) -> &GridSpec {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoosabilityCertificate {
    /// The grid sum over the lists, equal to the constant term of Φ.
    pub certificate: BigRational,
    pub coloring: Vec<BigRational>,
}

/// Backtracking search for a proper colouring drawing each vertex's value
/// from its own list.
pub fn find_list_coloring(inst: &CycleTrianglesInstance, lists: &ListAssignment) -> Option<Vec<BigRational>> {
    let earlier = earlier_neighbors(inst);
    let m = inst.vertex_count();
    let mut choice = vec![0usize; m];
    let mut depth = 0usize;
    let l = lists.lists();
    let ok = |choice: &[usize], v: usize, k: usize| {
        earlier[v].iter().all(|&u| l[u][choice[u]] != l[v][k])
    };
    loop {
        let found = (choice[depth]..3).find(|&k| ok(&choice, depth, k));
        match found {
            Some(k) => {
                choice[depth] = k;
                if depth + 1 == m {
                    return Some((0..m).map(|v| l[v][choice[v]].clone()).collect());
                }
                depth += 1;
                choice[depth] = 0;
            }
            None => {
                if depth == 0 {
                    return None;
                }
                depth -= 1;
                choice[depth] += 1;
            }
        }
    }
}

pub fn certify_choosability(inst: &CycleTrianglesInstance, lists: &ListAssignment) -> Result<ChoosabilityCertificate> {
    certify_choosability_within(inst, lists, DEFAULT_GRID_BUDGET)
}

pub fn certify_choosability_within(
    inst: &CycleTrianglesInstance,
    lists: &ListAssignment,
    grid_budget: u64,
) -> Result<ChoosabilityCertificate> {
    let certificate = ct_by_grid_within(inst, lists.as_grid(), grid_budget)?;
    if certificate.is_zero() {
        return Err(Error::violation("grid certificate vanished"));
    }
    let coloring = find_list_coloring(inst, lists)
        .ok_or_else(|| Error::violation("nonzero certificate but no list colouring found"))?;
    for (u, v) in inst.multi_edges() {
        if coloring[u] == coloring[v] {
            return Err(Error::violation(format!("list colouring improper at ({u}, {v})")));
        }
    }
    Ok(ChoosabilityCertificate {
        certificate,
        coloring,
    })
}
