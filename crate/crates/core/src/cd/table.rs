//! The octonion multiplication table `e_i e_j = eps_ijk e_k - delta_ij`.

use std::sync::OnceLock;

use num_traits::Zero;

use super::CDElement;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Index triples `(i, j, k)` with `eps_ijk = 1`.
pub const TRIPLES: [(usize, usize, usize); 7] =
    [(1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5)];

/// Signed product of every ordered pair of octonion basis units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonTable {
    entries: [[(i8, usize); 8]; 8],
}

impl EpsilonTable {
    pub fn new() -> Self {
        let mut entries = [[(0i8, 0usize); 8]; 8];
        for (i, row) in entries.iter_mut().enumerate() {
            row[0] = (1, i);
        }
        for j in 0..8 {
            entries[0][j] = (1, j);
        }
        for i in 1..8 {
            entries[i][i] = (-1, 0);
        }
        for &(i, j, k) in &TRIPLES {
            // eps is totally skew: cyclic shifts keep the sign, swaps flip it.
            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                entries[a][b] = (1, c);
                entries[b][a] = (-1, c);
            }
        }
        EpsilonTable { entries }
    }

    /// Shared instance, built on first use.
    pub fn global() -> &'static EpsilonTable {
        static TABLE: OnceLock<EpsilonTable> = OnceLock::new();
        TABLE.get_or_init(EpsilonTable::new)
    }

    /// `e_i e_j = sign * e_k`.
    pub fn product(&self, i: usize, j: usize) -> (i8, usize) {
        self.entries[i][j]
    }
}

impl Default for EpsilonTable {
    fn default() -> Self {
        Self::new()
    }
}

/// Octonion product by bilinear extension of the epsilon table.
pub fn octonion_multiply_table(x: &CDElement, y: &CDElement) -> Result<CDElement> {
    for v in [x, y] {
        if v.level() != 3 {
            return Err(Error::LevelMismatch { left: v.level(), right: 3 });
        }
    }
    let table = EpsilonTable::global();
    let mut out = vec![Rational::zero(); 8];
    for (i, a) in x.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.coeffs().iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let (s, k) = table.product(i, j);
            let term = a * b;
            if s > 0 {
                out[k] += term;
            } else {
                out[k] -= term;
            }
        }
    }
    CDElement::from_coeffs(3, out)
}
