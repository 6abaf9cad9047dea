//! Constant term from values on a product grid.
//!
//! For a 3-element set `{u, v, w}` of nonzero values the weights
//! `φ(u) = vw / ((u - v)(u - w))` (and cyclically) satisfy
//! `Σ φ(x) x^d = 1, 0, 0` for `d = 0, 1, 2`. Every non-constant monomial of
//! Φ has some exponent in {1, 2}, so summing `Φ · Π φ_i` over the grid
//! annihilates it and leaves exactly the constant term.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::CycleTrianglesInstance;
use crate::rng::SeededRng;

use super::{build_phi, FactoredPhi};

pub const DEFAULT_GRID_BUDGET: u64 = 14_348_907; // 3^15

pub fn default_grid_values() -> [BigRational; 3] {
    [1, 2, 3].map(|v| BigRational::from_integer(v.into()))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    BigRational::from_str(text.trim())
        .map_err(|_| Error::DegenerateGrid(format!("cannot parse `{text}` as a rational")))
}

pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn check_triple(values: &[BigRational; 3]) -> Result<()> {
    if let Some(x) = values.iter().find(|x| x.is_zero()) {
        return Err(Error::DegenerateGrid(format!("value {x} is zero")));
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if values[i] == values[j] {
                return Err(Error::DegenerateGrid(format!(
                    "value {} repeated",
                    format_rational(&values[i])
                )));
            }
        }
    }
    Ok(())
}

/// One 3-element set per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    sets: Vec<[BigRational; 3]>,
}

impl GridSpec {
    pub fn new(sets: Vec<[BigRational; 3]>) -> Result<Self> {
        for s in &sets {
            check_triple(s)?;
        }
        Ok(GridSpec { sets })
    }

    pub fn uniform(values: [BigRational; 3], vertices: usize) -> Result<Self> {
        GridSpec::new(vec![values; vertices])
    }

    pub fn random_uniform(vertices: usize, rng: &mut SeededRng) -> Self {
        GridSpec::uniform(rng.rational_triple(), vertices).expect("distinct nonzero triple")
    }

    pub fn random_per_vertex(vertices: usize, rng: &mut SeededRng) -> Self {
        GridSpec::new((0..vertices).map(|_| rng.rational_triple()).collect())
            .expect("distinct nonzero triples")
    }

    pub fn sets(&self) -> &[[BigRational; 3]] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// The values of one set and their weights, index-aligned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSet {
    pub values: [BigRational; 3],
    pub weights: [BigRational; 3],
}

impl WeightSet {
    /// `Σ φ(x) x^d`; `d` may be negative.
    pub fn moment(&self, d: i32) -> BigRational {
        self.values
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * Pow::pow(x, d))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn weight_of(&self, x: &BigRational) -> Option<&BigRational> {
        self.values.iter().position(|v| v == x).map(|i| &self.weights[i])
    }
}

pub fn grid_weights(values: &[BigRational; 3]) -> Result<WeightSet> {
    check_triple(values)?;
    let weights = std::array::from_fn(|i| {
        let u = &values[i];
        let v = &values[(i + 1) % 3];
        let w = &values[(i + 2) % 3];
        (v * w) / ((u - v) * (u - w))
    });
    let set = WeightSet {
        values: values.clone(),
        weights,
    };
    for (d, expected) in [(0, BigRational::one()), (1, BigRational::zero()), (2, BigRational::zero())] {
        let got = set.moment(d);
        if got != expected {
            return Err(Error::violation(format!("weight moment {d} is {got}, expected {expected}")));
        }
    }
    Ok(set)
}

/// Weights for every vertex of a grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridWeights {
    pub sets: Vec<WeightSet>,
}

impl GridWeights {
    pub fn new(grid: &GridSpec) -> Result<Self> {
        Ok(GridWeights {
            sets: grid.sets().iter().map(grid_weights).collect::<Result<_>>()?,
        })
    }
}

/// `1 - x_up / x_down` at the given values.
pub(crate) fn binomial_value(up: &BigRational, down: &BigRational) -> BigRational {
    BigRational::one() - up / down
}

/// `(up, down, numerator by (up choice, down choice))` for one factor.
type ClosingFactor = (usize, usize, [[BigInt; 3]; 3]);

/// Depth-first walk over grid points in exact integer arithmetic.
///
/// With `x = p/q` each factor is `1 - x_u/x_d = (p_d q_u - p_u q_d) / (q_u p_d)`.
/// The integer numerators are applied at the later of the factor's two
/// vertices, while every denominator and weight is folded into a per-vertex
/// rational `φ_i(x) / (q^ups p^downs)`, scaled to an integer by a common
/// per-vertex denominator. One division at the end restores the value. A
/// subtree is skipped once the running product is zero.
struct Walker {
    closing: Vec<Vec<ClosingFactor>>,
    scaled_weights: Vec<[BigInt; 3]>,
    denominator: BigInt,
}

impl Walker {
    fn new(phi: &FactoredPhi, weights: &GridWeights) -> Walker {
        let vars = phi.vars;
        let mut ups = vec![0i32; vars];
        let mut downs = vec![0i32; vars];
        let mut closing = vec![Vec::new(); vars];
        let parts = |v: usize, c: usize| {
            let x = &weights.sets[v].values[c];
            (x.numer().clone(), x.denom().clone())
        };
        for f in phi.factors() {
            ups[f.up] += 1;
            downs[f.down] += 1;
            let diffs = std::array::from_fn(|cu| {
                std::array::from_fn(|cd| {
                    let (pu, qu) = parts(f.up, cu);
                    let (pd, qd) = parts(f.down, cd);
                    pd * qu - pu * qd
                })
            });
            closing[f.up.max(f.down)].push((f.up, f.down, diffs));
        }

        let mut denominator = BigInt::one();
        let scaled_weights = (0..vars)
            .map(|v| {
                let set = &weights.sets[v];
                let psi: [BigRational; 3] = std::array::from_fn(|c| {
                    let x = &set.values[c];
                    let scale = Pow::pow(BigRational::from_integer(x.denom().clone()), ups[v])
                        * Pow::pow(BigRational::from_integer(x.numer().clone()), downs[v]);
                    &set.weights[c] / scale
                });
                let lcm = psi.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
                denominator *= &lcm;
                psi.map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer())
            })
            .collect();
        Walker {
            closing,
            scaled_weights,
            denominator,
        }
    }

    fn step(&self, depth: usize, choice: usize, point: &mut [usize], product: &BigInt) -> BigInt {
        point[depth] = choice;
        let mut p = product * &self.scaled_weights[depth][choice];
        for (up, down, diffs) in &self.closing[depth] {
            if p.is_zero() {
                break;
            }
            p *= &diffs[point[*up]][point[*down]];
        }
        p
    }

    fn sum_from(&self, depth: usize, point: &mut [usize], product: BigInt) -> BigInt {
        if product.is_zero() || depth == point.len() {
            return product;
        }
        let mut total = BigInt::zero();
        for choice in 0..3 {
            let p = self.step(depth, choice, point, &product);
            total += self.sum_from(depth + 1, point, p);
        }
        total
    }
}

pub fn ct_by_grid(inst: &CycleTrianglesInstance, grid: &GridSpec) -> Result<BigRational> {
    ct_by_grid_within(inst, grid, DEFAULT_GRID_BUDGET)
}

pub fn ct_by_grid_within(inst: &CycleTrianglesInstance, grid: &GridSpec, budget: u64) -> Result<BigRational> {
    let vars = inst.vertex_count();
    if grid.len() != vars {
        return Err(Error::Dimension {
            expected: vars,
            got: grid.len(),
        });
    }
    let points = 3u64.checked_pow(vars as u32);
    match points {
        Some(p) if p <= budget => {}
        _ => {
            return Err(Error::size(
                "grid points",
                format!("3^{vars}"),
                budget,
            ))
        }
    }
    let weights = GridWeights::new(grid)?;
    let phi = build_phi(inst);
    let walker = Walker::new(&phi, &weights);

    // Fan out over the first two coordinates; 3n >= 3 so both exist.
    let prefixes: Vec<(usize, usize)> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
    let partials: Vec<BigInt> = prefixes
        .into_par_iter()
        .map(|(a, b)| {
            let mut point = vec![0; vars];
            let p = walker.step(0, a, &mut point, &BigInt::one());
            let p = walker.step(1, b, &mut point, &p);
            walker.sum_from(2, &mut point, p)
        })
        .collect();
    let numerator = partials.into_iter().fold(BigInt::zero(), |a, b| a + b);
    Ok(BigRational::new(numerator, walker.denominator))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn weights_for_one_two_three() {
        let s = grid_weights(&[q(1), q(2), q(3)]).unwrap();
        assert_eq!(s.weights, [q(3), q(-3), q(1)]);
        assert_eq!(s.moment(0), q(1));
        assert_eq!(s.moment(1), q(0));
        assert_eq!(s.moment(2), q(0));
    }

    #[test]
    fn weights_with_negative_value() {
        let s = grid_weights(&[q(1), q(-1), q(2)]).unwrap();
        assert_eq!((s.moment(0), s.moment(1), s.moment(2)), (q(1), q(0), q(0)));
    }

    #[test]
    fn degenerate_sets_rejected() {
        assert!(matches!(grid_weights(&[q(1), q(1), q(2)]), Err(Error::DegenerateGrid(_))));
        assert!(matches!(grid_weights(&[q(0), q(1), q(2)]), Err(Error::DegenerateGrid(_))));
        assert!(GridSpec::uniform([q(1), q(2), q(2)], 3).is_err());
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("-3/6").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(parse_rational(" 4 ").unwrap(), q(4));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&BigRational::new(6.into(), (-4).into())), "-3/2");
        assert_eq!(format_rational(&q(7)), "7");
    }

    #[test]
    fn single_triangle_grid() {
        let inst = CycleTrianglesInstance::new(1, vec![[0, 1, 2]]).unwrap();
        let grid = GridSpec::uniform(default_grid_values(), 3).unwrap();
        assert_eq!(ct_by_grid(&inst, &grid).unwrap(), q(6));
    }

    #[test]
    fn grid_budget_and_dimension() {
        let inst = CycleTrianglesInstance::new(2, vec![[0, 2, 4], [1, 3, 5]]).unwrap();
        let grid = GridSpec::uniform(default_grid_values(), 6).unwrap();
        assert!(ct_by_grid_within(&inst, &grid, 728).unwrap_err().is_budget());
        assert_eq!(ct_by_grid_within(&inst, &grid, 729).unwrap(), q(6));
        let short = GridSpec::uniform(default_grid_values(), 5).unwrap();
        assert!(matches!(ct_by_grid(&inst, &short), Err(Error::Dimension { .. })));
    }
}
