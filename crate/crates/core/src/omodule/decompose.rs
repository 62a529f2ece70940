//! Nucleus computation and the decomposition `M ≅ O^a ⊕ Obar^b`.

use num_traits::Zero;

use super::{CanonicalModule, OModule};
use crate::cd::CDElement;
use crate::error::{Error, Result};
use crate::linalg::{nullspace_of_blocks, RatMatrix};
use crate::rational::Rational;

/// Result of [`OModule::decompose`].
///
/// `to_canonical` maps module coordinates to canonical `O^a ⊕ Obar^b`
/// coordinates and intertwines the actions. It preserves the inner product
/// up to the per-summand weights in `summand_scales`:
/// `<x, y> = sum_k t_k <(Tx)_k, (Ty)_k>`. The Hilbert isomorphism is
/// therefore `diag(sqrt(t_k)) T`, which stays exact as a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub regular: usize,
    pub conjugate: usize,
    pub to_canonical: RatMatrix,
    pub from_canonical: RatMatrix,
    pub summand_scales: Vec<Rational>,
}

impl Decomposition {
    pub fn canonical(&self) -> CanonicalModule {
        CanonicalModule::new(self.regular, self.conjugate)
    }

    /// True when every weight is 1, i.e. `to_canonical` is itself an isometry.
    pub fn is_isometric(&self) -> bool {
        self.summand_scales.iter().all(|t| t == &Rational::from_integer(1.into()))
    }
}

/// Orthogonalizes without normalizing; returns the vectors with their squared
/// norms under `inner`.
pub fn gram_schmidt(
    vectors: &[Vec<Rational>],
    inner: impl Fn(&[Rational], &[Rational]) -> Rational,
) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let mut out: Vec<Vec<Rational>> = Vec::new();
    let mut norms: Vec<Rational> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for (u, n) in out.iter().zip(&norms) {
            let f = inner(v, u) / n;
            if f.is_zero() {
                continue;
            }
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi -= &f * ui;
            }
        }
        let n = inner(&w, &w);
        if n.is_zero() {
            continue;
        }
        out.push(w);
        norms.push(n);
    }
    (out, norms)
}

impl OModule {
    fn constraint_blocks(&self, conjugate: bool) -> Vec<RatMatrix> {
        let mut blocks = Vec::with_capacity(21);
        for i in 1..8 {
            for j in i + 1..8 {
                let li = self.basis_action(i);
                let lj = self.basis_action(j);
                // A:  (e_i e_j) x - e_i (e_j x)
                // A-: (e_i e_j) x - e_j (e_i x)
                let composite = if conjugate { lj.mul(&li) } else { li.mul(&lj) };
                blocks.push(self.product_action(i, j).sub(&composite));
            }
        }
        blocks
    }

    /// Basis of the nucleus `A(M) = {m : (pq)m = p(qm)}`.
    pub fn nucleus(&self) -> Vec<Vec<Rational>> {
        nullspace_of_blocks(self.dim, &self.constraint_blocks(false)).expect("blocks share the module dimension")
    }

    /// Basis of the conjugate nucleus `A-(M) = {m : (pq)m = q(pm)}`.
    pub fn conj_nucleus(&self) -> Vec<Vec<Rational>> {
        nullspace_of_blocks(self.dim, &self.constraint_blocks(true)).expect("blocks share the module dimension")
    }

    /// Real basis `{e_i a_k} ∪ {conj(e_i) b_k}` built from nucleus bases,
    /// as the columns of a square matrix.
    fn canonical_frame(&self, regular: &[Vec<Rational>], conjugate: &[Vec<Rational>]) -> Result<RatMatrix> {
        let mut columns = Vec::with_capacity(self.dim);
        for a in regular {
            for i in 0..8 {
                columns.push(self.act(&CDElement::basis(3, i), a)?);
            }
        }
        for b in conjugate {
            for i in 0..8 {
                columns.push(self.act(&CDElement::basis(3, i).conjugate(), b)?);
            }
        }
        RatMatrix::from_columns(self.dim, &columns)
    }

    /// Decomposes a Hilbert module as `O ⊗ A(M) ⊕ Obar ⊗ A-(M)`.
    ///
    /// The nucleus bases are orthogonalized (not normalized) under
    /// `Re <., .>`; the resulting squared norms become the summand weights.
    pub fn decompose(&self) -> Result<Decomposition> {
        if self.gram.is_none() {
            return Err(Error::MissingGram);
        }
        let real = |x: &[Rational], y: &[Rational]| {
            self.real_inner(x, y).expect("vectors come from this module")
        };
        let (regular, reg_scales) = gram_schmidt(&self.nucleus(), real);
        let (conjugate, conj_scales) = gram_schmidt(&self.conj_nucleus(), real);
        let (a, b) = (regular.len(), conjugate.len());
        if 8 * (a + b) != self.dim {
            return Err(Error::AxiomViolation {
                identity: "M = O A(M) ⊕ O A-(M)".into(),
                witness: format!("8 * ({a} + {b}) != {}", self.dim),
            });
        }
        let from_canonical = self.canonical_frame(&regular, &conjugate)?;
        let mut summand_scales = reg_scales;
        summand_scales.extend(conj_scales);
        // The frame is Re-orthogonal with column norms t_k, so its inverse is
        // diag(1/t) F^T B_0 whenever that product really is a left inverse.
        let gram0 = &self.gram.as_ref().expect("checked above")[0];
        let weighted = from_canonical.transpose().mul(gram0);
        let candidate = RatMatrix::from_fn(self.dim, self.dim, |r, c| {
            weighted.get(r, c) / &summand_scales[r / 8]
        });
        let to_canonical = if candidate.mul(&from_canonical) == RatMatrix::identity(self.dim) {
            candidate
        } else {
            from_canonical
                .inverse()
                .map_err(|_| Error::Internal("nucleus frame is singular".into()))?
        };
        Ok(Decomposition { regular: a, conjugate: b, to_canonical, from_canonical, summand_scales })
    }

    /// Checks that a decomposition intertwines all seven generator actions
    /// and carries the weighted canonical inner product onto this one.
    pub fn verify_isomorphism(&self, dec: &Decomposition) -> Result<()> {
        let gram = self.gram.as_ref().ok_or(Error::MissingGram)?;
        let canonical = dec.canonical().module();
        if canonical.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: canonical.dim });
        }
        let t = &dec.to_canonical;
        for i in 1..8 {
            if t.mul(self.action(i)) != canonical.action(i).mul(t) {
                return Err(Error::AxiomViolation {
                    identity: "T L_p = L_p' T".into(),
                    witness: format!("p = e{i}"),
                });
            }
        }
        let weights = RatMatrix::from_fn(self.dim, self.dim, |r, c| {
            if r == c {
                dec.summand_scales[r / 8].clone()
            } else {
                Rational::zero()
            }
        });
        let canonical_gram = canonical.gram().expect("canonical modules carry a gram");
        for (k, b) in gram.iter().enumerate() {
            let pulled = t.transpose().mul(&weights).mul(&canonical_gram[k]).mul(t);
            if &pulled != b {
                return Err(Error::AxiomViolation {
                    identity: "<Tx, Ty> = <x, y>".into(),
                    witness: format!("component e{k}"),
                });
            }
        }
        Ok(())
    }

    /// The conjugation map `C(sum e_i x_i + sum e_i y_i) = sum conj(e_i) x_i - sum e_i y_i`
    /// for `x_i` in `A(M)`, `y_i` in `A-(M)`.
    pub fn conjugation(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        self.check_vec(x)?;
        let regular = self.nucleus();
        let conjugate = self.conj_nucleus();
        let mut columns = Vec::with_capacity(self.dim);
        let mut images = Vec::with_capacity(self.dim);
        for a in &regular {
            for i in 0..8 {
                let e = CDElement::basis(3, i);
                columns.push(self.act(&e, a)?);
                images.push(self.act(&e.conjugate(), a)?);
            }
        }
        for b in &conjugate {
            for i in 0..8 {
                let e = CDElement::basis(3, i);
                let col = self.act(&e, b)?;
                images.push(col.iter().map(|v| -v.clone()).collect());
                columns.push(col);
            }
        }
        if columns.len() != self.dim {
            return Err(Error::Internal("nucleus frame does not span the module".into()));
        }
        let frame = RatMatrix::from_columns(self.dim, &columns)?;
        let coeffs = frame
            .solve(x)?
            .ok_or_else(|| Error::Internal("nucleus frame does not span the module".into()))?;
        let image = RatMatrix::from_columns(self.dim, &images)?;
        Ok(image.mul_vec(&coeffs))
    }
}
