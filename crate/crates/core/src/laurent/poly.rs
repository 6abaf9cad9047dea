//! Sparse Laurent polynomials with exponents in [-7, 7] over at most 32
//! variables, which is all the expansion of Φ ever needs.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 32;
const BIAS: u128 = 8;

/// Exponent vector packed four bits per variable, biased by 8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(u128);

impl Monomial {
    pub fn one(vars: usize) -> Self {
        debug_assert!(vars <= MAX_VARS);
        let mut packed = 0u128;
        for i in 0..vars {
            packed |= BIAS << (4 * i);
        }
        Monomial(packed)
    }

    pub fn from_exponents(exps: &[i8]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut packed = 0u128;
        for (i, &e) in exps.iter().enumerate() {
            assert!((-7..=7).contains(&e), "exponent {e} out of range");
            packed |= ((e as i32 + BIAS as i32) as u128) << (4 * i);
        }
        Monomial(packed)
    }

    pub fn exponent(self, var: usize) -> i8 {
        (((self.0 >> (4 * var)) & 0xF) as i32 - BIAS as i32) as i8
    }

    pub fn exponents(self, vars: usize) -> Vec<i8> {
        (0..vars).map(|i| self.exponent(i)).collect()
    }

    /// Multiplies by `x_up / x_down`.
    fn shifted(self, up: usize, down: usize) -> Self {
        Monomial(
            self.0
                .wrapping_add(1 << (4 * up))
                .wrapping_sub(1 << (4 * down)),
        )
    }

    fn times(self, other: Monomial, vars: usize) -> Self {
        Monomial(
            self.0
                .wrapping_add(other.0)
                .wrapping_sub(Monomial::one(vars).0),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: usize,
    terms: HashMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn one(vars: usize) -> Self {
        assert!(vars <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut terms = HashMap::new();
        terms.insert(Monomial::one(vars), BigInt::one());
        LaurentPoly { vars, terms }
    }

    pub fn from_terms(vars: usize, terms: impl IntoIterator<Item = (Vec<i8>, BigInt)>) -> Self {
        assert!(vars <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut p = LaurentPoly {
            vars,
            terms: HashMap::new(),
        };
        for (e, c) in terms {
            assert_eq!(e.len(), vars);
            p.add_term(Monomial::from_exponents(&e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[i8]) -> BigInt {
        self.terms
            .get(&Monomial::from_exponents(exps))
            .cloned()
            .unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&Monomial::one(self.vars))
            .cloned()
            .unwrap_or_default()
    }

    /// Terms as `(exponents, coefficient)` sorted by exponent vector.
    pub fn terms(&self) -> Vec<(Vec<i8>, BigInt)> {
        let mut out: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (m.exponents(self.vars), c.clone()))
            .collect();
        out.sort();
        out
    }

    /// `self * (1 - x_up / x_down)`.
    pub fn mul_binomial(&mut self, up: usize, down: usize) {
        let old = std::mem::take(&mut self.terms);
        self.terms.reserve(old.len() * 2);
        for (m, c) in old {
            self.add_term(m.shifted(up, down), -c.clone());
            self.add_term(m, c);
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.vars, other.vars);
        let mut out = LaurentPoly {
            vars: self.vars,
            terms: HashMap::with_capacity(self.len() * other.len()),
        };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.times(*m2, self.vars), c1 * c2);
            }
        }
        out
    }

    pub fn check_cap(&self, cap: usize) -> Result<()> {
        if self.len() > cap {
            return Err(Error::size("Laurent expansion terms", self.len(), cap));
        }
        Ok(())
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.vars {
            return Err(Error::Dimension {
                expected: self.vars,
                got: point.len(),
            });
        }
        if let Some(i) = point.iter().position(Zero::is_zero) {
            return Err(Error::ZeroCoordinate(i));
        }
        let mut sum = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (i, x) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e != 0 {
                    t *= Pow::pow(x, e as i32);
                }
            }
            sum += t;
        }
        Ok(sum)
    }
}
