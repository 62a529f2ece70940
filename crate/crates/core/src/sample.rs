//! Deterministic pseudo-random rational inputs for identity checks.
//!
//! Coefficients have numerators in `-3..=3` and denominators in `{1, 2}`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;

use crate::cd::CDElement;
use crate::config::DEFAULT_SEED;
use crate::linalg::{cayley_orthogonal, RatMatrix};
use crate::rational::{rat, Rational};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Default for Sampler {
    fn default() -> Self {
        Self::new(DEFAULT_SEED)
    }
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rational(&mut self) -> Rational {
        let num = self.rng.gen_range(-3i64..=3);
        let den = self.rng.gen_range(1i64..=2);
        rat(num, den)
    }

    pub fn vector(&mut self, dim: usize) -> Vec<Rational> {
        (0..dim).map(|_| self.rational()).collect()
    }

    /// A vector that is not identically zero.
    pub fn nonzero_vector(&mut self, dim: usize) -> Vec<Rational> {
        loop {
            let v = self.vector(dim);
            if v.iter().any(|x| !x.is_zero()) {
                return v;
            }
        }
    }

    pub fn element(&mut self, level: u32) -> CDElement {
        CDElement::from_coeffs(level, self.vector(1 << level)).expect("length matches level")
    }

    pub fn octonion(&mut self) -> CDElement {
        self.element(3)
    }

    /// Skew-symmetric matrix; each upper entry is nonzero with probability
    /// `density`.
    pub fn skew_matrix(&mut self, n: usize, density: f64) -> RatMatrix {
        let mut m = RatMatrix::zeros(n, n);
        for r in 0..n {
            for c in r + 1..n {
                if self.rng.gen_bool(density) {
                    let v = self.rational();
                    m.set(c, r, -v.clone());
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    /// Exactly orthogonal `P C(S)`: a random signed permutation times the
    /// Cayley transform of a sparse skew matrix with about two entries per
    /// row, which keeps the coefficients short.
    pub fn orthogonal_matrix(&mut self, n: usize) -> RatMatrix {
        let density = if n > 3 { 2.0 / (n - 1) as f64 } else { 1.0 };
        let q = cayley_orthogonal(&self.skew_matrix(n, density)).expect("I + S is invertible for skew S");
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut self.rng);
        let signs: Vec<bool> = (0..n).map(|_| self.rng.gen_bool(0.5)).collect();
        RatMatrix::from_fn(n, n, |r, c| {
            let v = q.get(perm[r], c).clone();
            if signs[r] {
                -v
            } else {
                v
            }
        })
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_equal_seeds() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        assert_eq!(a.vector(20), b.vector(20));
        assert_eq!(a.skew_matrix(5, 0.5), b.skew_matrix(5, 0.5));
    }

    #[test]
    fn coefficients_in_range() {
        let mut s = Sampler::default();
        for _ in 0..200 {
            let r = s.rational();
            assert!(r.denom() <= &2.into());
            assert!(r.numer() >= &(-3).into() && r.numer() <= &3.into());
        }
    }

    #[test]
    fn skew_matrices_are_skew() {
        let mut s = Sampler::default();
        assert!(s.skew_matrix(6, 0.7).is_skew_symmetric());
    }

    #[test]
    fn orthogonal_matrices_are_orthogonal() {
        let mut s = Sampler::default();
        for n in [1, 2, 5, 16] {
            let q = s.orthogonal_matrix(n);
            assert_eq!(q.transpose().mul(&q), RatMatrix::identity(n));
        }
    }
}
