//! The Laurent polynomial Φ of a cycle-plus-triangles graph:
//!
//! ```text
//! Φ = Π_i (1 - x_{i+1}/x_i) · Π_triangles (1 - a/b)(1 - b/c)(1 - c/a)
//! ```
//!
//! with indices mod 3n. Its constant term is computed two independent ways,
//! by sparse expansion and by the weighted grid sum in [`grid`].

pub mod grid;
pub mod poly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::CycleTrianglesInstance;

pub use grid::{
    ct_by_grid, ct_by_grid_within, default_grid_values, format_rational, grid_weights, parse_rational,
    GridSpec, GridWeights, WeightSet, DEFAULT_GRID_BUDGET,
};
pub use poly::{LaurentPoly, Monomial};

pub const DEFAULT_TERM_CAP: usize = 10_000_000;

/// The factor `1 - x_up / x_down`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Binomial {
    pub up: usize,
    pub down: usize,
}

impl Binomial {
    fn new(up: usize, down: usize) -> Self {
        Binomial { up, down }
    }
}

/// Φ as a product of `3n` cycle factors and `n` triangle brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPhi {
    pub vars: usize,
    pub cycle: Vec<Binomial>,
    pub triangles: Vec<[Binomial; 3]>,
}

impl FactoredPhi {
    pub fn factors(&self) -> impl Iterator<Item = Binomial> + '_ {
        self.cycle
            .iter()
            .copied()
            .chain(self.triangles.iter().flatten().copied())
    }

    pub fn factor_count(&self) -> usize {
        self.cycle.len() + 3 * self.triangles.len()
    }
}

pub fn build_phi(inst: &CycleTrianglesInstance) -> FactoredPhi {
    let m = inst.vertex_count();
    FactoredPhi {
        vars: m,
        cycle: (0..m).map(|i| Binomial::new((i + 1) % m, i)).collect(),
        triangles: inst
            .triangles()
            .iter()
            .map(|&[a, b, c]| [Binomial::new(a, b), Binomial::new(b, c), Binomial::new(c, a)])
            .collect(),
    }
}

/// Expands a triangle bracket on its own; the two constant terms cancel,
/// leaving `a/c + c/b + b/a - c/a - b/c - a/b`.
pub fn expand_bracket(vars: usize, bracket: &[Binomial; 3]) -> LaurentPoly {
    let mut p = LaurentPoly::one(vars);
    for f in bracket {
        p.mul_binomial(f.up, f.down);
    }
    debug_assert_eq!(p.len(), 6);
    p
}

pub fn expand(phi: &FactoredPhi) -> Result<LaurentPoly> {
    expand_within(phi, DEFAULT_TERM_CAP)
}

pub fn expand_within(phi: &FactoredPhi, cap: usize) -> Result<LaurentPoly> {
    if phi.vars > poly::MAX_VARS {
        return Err(Error::size("expansion variables", phi.vars, poly::MAX_VARS));
    }
    let mut p = LaurentPoly::one(phi.vars);
    for bracket in &phi.triangles {
        p = p.mul(&expand_bracket(phi.vars, bracket));
        p.check_cap(cap)?;
    }
    for f in &phi.cycle {
        p.mul_binomial(f.up, f.down);
        p.check_cap(cap)?;
    }
    Ok(p)
}

pub fn ct_by_expansion(inst: &CycleTrianglesInstance) -> Result<BigInt> {
    ct_by_expansion_within(inst, DEFAULT_TERM_CAP)
}

pub fn ct_by_expansion_within(inst: &CycleTrianglesInstance, cap: usize) -> Result<BigInt> {
    Ok(expand_within(&build_phi(inst), cap)?.constant_term())
}

fn check_point(inst: &CycleTrianglesInstance, point: &[BigRational]) -> Result<()> {
    if point.len() != inst.vertex_count() {
        return Err(Error::Dimension {
            expected: inst.vertex_count(),
            got: point.len(),
        });
    }
    if let Some(i) = point.iter().position(Zero::is_zero) {
        return Err(Error::ZeroCoordinate(i));
    }
    Ok(())
}

/// Φ at a point, multiplied out factor by factor.
pub fn evaluate_phi(inst: &CycleTrianglesInstance, point: &[BigRational]) -> Result<BigRational> {
    check_point(inst, point)?;
    let mut value = BigRational::one();
    for f in build_phi(inst).factors() {
        value *= grid::binomial_value(&point[f.up], &point[f.down]);
        if value.is_zero() {
            break;
        }
    }
    Ok(value)
}

/// One term `Φ(x) · Π φ(x_i)` of the grid sum on the uniform grid `values`.
pub fn summand(
    inst: &CycleTrianglesInstance,
    values: &[BigRational; 3],
    point: &[BigRational],
) -> Result<BigRational> {
    check_point(inst, point)?;
    let weights = grid_weights(values)?;
    let mut w = BigRational::one();
    for (i, x) in point.iter().enumerate() {
        w *= weights.weight_of(x).ok_or(Error::NotOnGrid(i))?;
    }
    Ok(evaluate_phi(inst, point)? * w)
}

/// Tally of all summands on a uniform grid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SummandProfile {
    pub plus_one: u64,
    pub minus_one: u64,
    pub zero: u64,
    /// Summands outside {-1, 0, 1}.
    pub other: u64,
}

impl SummandProfile {
    pub fn nonzero(&self) -> u64 {
        self.plus_one + self.minus_one + self.other
    }
}

/// Evaluates every summand of the uniform grid sum one point at a time.
pub fn summand_profile(
    inst: &CycleTrianglesInstance,
    values: &[BigRational; 3],
    budget: u64,
) -> Result<SummandProfile> {
    let m = inst.vertex_count();
    let points = 3u64
        .checked_pow(m as u32)
        .filter(|&p| p <= budget)
        .ok_or_else(|| Error::size("grid points", format!("3^{m}"), budget))?;
    let one = BigRational::one();
    let mut profile = SummandProfile::default();
    for mut flat in 0..points {
        let mut point = vec![BigRational::zero(); m];
        for x in point.iter_mut().rev() {
            *x = values[(flat % 3) as usize].clone();
            flat /= 3;
        }
        let s = summand(inst, values, &point)?;
        if s.is_zero() {
            profile.zero += 1;
        } else if s == one {
            profile.plus_one += 1;
        } else if s == -one.clone() {
            profile.minus_one += 1;
        } else {
            profile.other += 1;
        }
    }
    Ok(profile)
}
