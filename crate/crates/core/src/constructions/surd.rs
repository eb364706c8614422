//! Certified arithmetic over rational combinations of square roots of primes.
//!
//! The cluster construction needs three facts about numbers of the form
//! `sum c_i * sqrt(p_i)` with distinct primes `p_i`: the minimum gap within a
//! finite set, the smallest power-of-two multiplier pushing two such gaps
//! above 10, and the integer nearest to a scaled value. All three are decided
//! with scaled-integer square root intervals: `sqrt(p)` is bracketed by
//! `[isqrt(p * 4^t), isqrt(p * 4^t) + 1] / 2^t` and `t` grows until every
//! comparison is strict. Nonzero combinations of distinct prime square roots
//! are irrational, so every refinement loop here terminates.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A value `sum (coeffs[i] / 4) * sqrt(primes[i])` over the context's primes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Surd {
    /// Coefficients in quarter units, one per context prime.
    pub quarters: Vec<i64>,
}

impl Surd {
    /// `sqrt(p_idx)` itself.
    pub fn basis(dim: usize, idx: usize) -> Self {
        let mut quarters = vec![0; dim];
        quarters[idx] = 4;
        Surd { quarters }
    }

    pub fn add(&self, other: &Surd) -> Surd {
        Surd {
            quarters: self.quarters.iter().zip(&other.quarters).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Surd) -> Surd {
        Surd {
            quarters: self.quarters.iter().zip(&other.quarters).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, by: i64) -> Surd {
        Surd { quarters: self.quarters.iter().map(|a| a * by).collect() }
    }

    /// Halves the value; all our uses keep the quarters even.
    pub fn half(&self) -> Surd {
        debug_assert!(self.quarters.iter().all(|a| a % 2 == 0));
        Surd { quarters: self.quarters.iter().map(|a| a / 2).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.quarters.iter().all(|&a| a == 0)
    }
}

/// Shared interval state for one prime basis.
pub struct SurdContext {
    primes: Vec<u64>,
    /// Interval exponent: `sqrt(p_i)` lies in `[lo[i], lo[i] + 1] / 2^prec`.
    prec: u32,
    lo: Vec<BigInt>,
}

impl SurdContext {
    pub fn new(primes: Vec<u64>) -> Self {
        let mut ctx = SurdContext { primes, prec: 0, lo: Vec::new() };
        ctx.set_precision(32);
        ctx
    }

    fn set_precision(&mut self, prec: u32) {
        self.prec = prec;
        self.lo = self
            .primes
            .iter()
            .map(|&p| (BigInt::from(p) << (2 * prec)).sqrt())
            .collect();
    }

    pub fn refine(&mut self) {
        self.set_precision(self.prec + 32);
    }

    /// Encloses `s` in `[lo, hi] / 2^(prec + 2)` (quarter coefficients add two
    /// fractional bits).
    pub fn eval(&self, s: &Surd) -> (BigInt, BigInt) {
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (&c, root_lo) in s.quarters.iter().zip(&self.lo) {
            if c == 0 {
                continue;
            }
            let a = root_lo * c;
            let b = (root_lo + 1u32) * c;
            if c > 0 {
                lo += &a;
                hi += &b;
            } else {
                lo += &b;
                hi += &a;
            }
        }
        (lo, hi)
    }

    /// Sign of a nonzero surd, refining until certain.
    pub fn sign(&mut self, s: &Surd) -> i32 {
        assert!(!s.is_zero(), "sign of the zero surd is not defined here");
        loop {
            let (lo, hi) = self.eval(s);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            self.refine();
        }
    }

    /// Absolute value, in place.
    pub fn abs(&mut self, s: &Surd) -> Surd {
        if self.sign(s) < 0 {
            s.scale(-1)
        } else {
            s.clone()
        }
    }

    /// True when `2^e * |s| > threshold`, refining until the comparison is
    /// strict either way. `s` must be nonzero so equality cannot occur.
    pub fn scaled_exceeds(&mut self, s: &Surd, e: u32, threshold: u64) -> bool {
        let a = self.abs(s);
        loop {
            let (lo, hi) = self.eval(&a);
            // compare (lo or hi) * 2^e against threshold * 2^(prec + 2)
            let bound = BigInt::from(threshold) << (self.prec + 2);
            if (&lo << e) > bound {
                return true;
            }
            if (&hi << e) < bound {
                return false;
            }
            self.refine();
        }
    }

    /// The integer nearest to `2^e * s`, certified within distance 1/2.
    pub fn nearest_scaled_int(&mut self, s: &Surd, e: u32) -> BigInt {
        loop {
            let (lo, hi) = self.eval(s);
            // value * 2^e lies in [lo, hi] * 2^e / 2^(prec + 2)
            let denom_bits = self.prec + 2;
            let two_lo = &lo << (e + 1); // 2 * value_lo * 2^e * 2^denom
            let two_hi = &hi << (e + 1);
            let denom = BigInt::one() << (denom_bits + 1);
            // center estimate: two_lo / denom is close to value * 2^e
            let z_center: BigInt = &two_lo / &denom;
            // brute check candidates around it; the interval is tiny
            let mut candidates = Vec::new();
            for d in -3i32..=3 {
                candidates.push(&z_center + BigInt::from(d));
            }
            let half_denom = &denom >> 1;
            let fits = |z: &BigInt| {
                // |value * 2^e - z| < 1/2  <=>  both interval ends of
                // 2 * value * 2^e, centered at 2z, stay within one denom half
                let centered_lo = &two_lo - (z << (denom_bits + 1));
                let centered_hi = &two_hi - (z << (denom_bits + 1));
                centered_lo.abs() < half_denom && centered_hi.abs() < half_denom
            };
            if let Some(z) = candidates.into_iter().find(|z| fits(z)) {
                return z;
            }
            self.refine();
        }
    }

    /// Smallest `e` with `2^e * min_gap(values) > 10`, where the gap minimum
    /// runs over all pairs. Values must be pairwise distinct as surds.
    pub fn gap_exponent(&mut self, values: &[Surd]) -> u32 {
        let mut diffs = Vec::new();
        for i in 0..values.len() {
            for j in (i + 1)..values.len() {
                let d = values[i].sub(&values[j]);
                assert!(!d.is_zero(), "duplicate surds have no gap");
                diffs.push(d);
            }
        }
        let mut e = 0u32;
        'outer: loop {
            for d in &diffs {
                if !self.scaled_exceeds(d, e, 10) {
                    e += 1;
                    continue 'outer;
                }
            }
            return e;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_and_evaluation() {
        let mut ctx = SurdContext::new(vec![2, 3]);
        let root2 = Surd::basis(2, 0);
        let root3 = Surd::basis(2, 1);
        assert_eq!(ctx.sign(&root3.sub(&root2)), 1);
        assert_eq!(ctx.sign(&root2.sub(&root3)), -1);
        // 7*sqrt(2) - 5*sqrt(3) is tiny (~0.2394) but positive
        let tight = root2.scale(7).sub(&root3.scale(5));
        assert_eq!(ctx.sign(&tight), 1);
    }

    #[test]
    fn nearest_ints() {
        let mut ctx = SurdContext::new(vec![2]);
        let root2 = Surd::basis(1, 0);
        // sqrt(2) * 2^10 = 1448.15...
        assert_eq!(ctx.nearest_scaled_int(&root2, 10), BigInt::from(1448));
        assert_eq!(ctx.nearest_scaled_int(&root2.scale(-1), 10), BigInt::from(-1448));
        // (sqrt(2)/2) * 2^4 = 11.31...
        assert_eq!(ctx.nearest_scaled_int(&root2.half(), 4), BigInt::from(11));
    }

    #[test]
    fn gap_exponent_certifies_both_sides() {
        let mut ctx = SurdContext::new(vec![2, 3]);
        let values = [Surd::basis(2, 0), Surd::basis(2, 1)];
        // gap = sqrt(3) - sqrt(2) = 0.3178...; need 2^e * gap > 10 => e = 5
        let e = ctx.gap_exponent(&values);
        assert_eq!(e, 5);
        assert!(ctx.scaled_exceeds(&values[1].sub(&values[0]), e, 10));
        assert!(!ctx.scaled_exceeds(&values[1].sub(&values[0]), e - 1, 10));
    }
}
