//! Seeded randomness shared by every generator.
//!
//! The stream is ChaCha8 keyed by `seed_from_u64`, and all derived draws
//! (bounded integers, coins, shuffles) are defined here in terms of raw
//! `next_u64` outputs so that instances reproduce bit-for-bit regardless of
//! the `rand` distribution implementations.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Clone, Debug)]
pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream `stream` derived from one user seed.
    pub fn derived(seed: u64, stream: u64) -> Self {
        SeededRng::new(seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform integer in `0..bound` by rejection sampling.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    /// Uniform integer in `lo..=hi`.
    pub fn range_inclusive(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo) as u64 + 1) as i64
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }

    /// Fisher-Yates, drawing from the back.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }

    /// A nonzero rational p/q with 1 <= |p| <= 30 and 1 <= q <= 12.
    pub fn nonzero_rational(&mut self) -> BigRational {
        let mut p = self.range_inclusive(1, 30);
        if self.coin() {
            p = -p;
        }
        let q = self.range_inclusive(1, 12);
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    /// Three distinct nonzero rationals.
    pub fn rational_triple(&mut self) -> [BigRational; 3] {
        loop {
            let t = [
                self.nonzero_rational(),
                self.nonzero_rational(),
                self.nonzero_rational(),
            ];
            if t[0] != t[1] && t[1] != t[2] && t[0] != t[2] {
                return t;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = SeededRng::new(42);
        let mut b = SeededRng::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn below_stays_in_range() {
        let mut r = SeededRng::new(1);
        let mut seen = [false; 7];
        for _ in 0..1000 {
            seen[r.below(7) as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn shuffle_is_permutation() {
        let mut r = SeededRng::new(3);
        let mut v: Vec<u32> = (0..50).collect();
        r.shuffle(&mut v);
        let mut s = v.clone();
        s.sort();
        assert_eq!(s, (0..50).collect::<Vec<_>>());
    }

    #[test]
    fn triples_are_distinct_and_nonzero() {
        let mut r = SeededRng::new(9);
        for _ in 0..200 {
            let t = r.rational_triple();
            assert!(t.iter().all(|x| *x != BigRational::from_integer(0.into())));
            assert!(t[0] != t[1] && t[1] != t[2] && t[0] != t[2]);
        }
    }
}
