//! Finite-dimensional left O-modules with octonion-valued inner products.
//!
//! A module of real dimension `d` is stored as seven `d x d` action matrices
//! `L_1..L_7` (the action of `e_1..e_7`, with `L_0 = I` implicit) and,
//! optionally, eight bilinear forms `B_0..B_7` encoding
//! `<x, y> = sum_k (x^T B_k y) e_k`.
//!
//! Every "for all p, q in O" condition is checked on the generators
//! `e_1..e_7` only; each associator expression is real-bilinear in `p, q`,
//! so generator checks are sufficient.

mod decompose;
mod identities;

use num_traits::{One, Signed, Zero};

use crate::cd::{associator, cd_multiply, CDElement, EpsilonTable};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::{dot, exact_sqrt, to_f64, Rational};

pub use decompose::{gram_schmidt, Decomposition};
pub use identities::{verify_inner_identities, IdentityReport, IdentityResidual};

/// `O^regular ⊕ Obar^conjugate` with the standard structure on each summand.
///
/// Summand `k` occupies coordinates `8k..8k+8`; regular summands come first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CanonicalModule {
    pub regular: usize,
    pub conjugate: usize,
}

impl CanonicalModule {
    pub fn new(regular: usize, conjugate: usize) -> Self {
        CanonicalModule { regular, conjugate }
    }

    pub fn dim(&self) -> usize {
        8 * (self.regular + self.conjugate)
    }

    /// Action and gram matrices of the canonical structure.
    pub fn module(&self) -> OModule {
        let d = self.dim();
        let blocks = self.regular + self.conjugate;
        let mut action: Vec<RatMatrix> = (0..7).map(|_| RatMatrix::zeros(d, d)).collect();
        let mut gram: Vec<RatMatrix> = (0..8).map(|_| RatMatrix::zeros(d, d)).collect();
        let table = EpsilonTable::global();
        for block in 0..blocks {
            let conj = block >= self.regular;
            let off = 8 * block;
            for i in 1..8 {
                for b in 0..8 {
                    // e_i e_b = s e_k; on Obar the action is by conj(e_i) = -e_i.
                    let (s, k) = table.product(i, b);
                    let s = if conj { -s } else { s };
                    action[i - 1].set(off + k, off + b, signed_one(s));
                }
            }
            for a in 0..8 {
                for b in 0..8 {
                    // O: <e_a, e_b> = e_a conj(e_b); Obar: <e_a, e_b> = e_b conj(e_a).
                    let (x, y) = if conj { (b, a) } else { (a, b) };
                    let (s, k) = table.product(x, y);
                    let s = if y == 0 { s } else { -s };
                    gram[k].set(off + a, off + b, signed_one(s));
                }
            }
        }
        OModule { dim: d, action, gram: Some(gram) }
    }
}

fn signed_one(s: i8) -> Rational {
    if s < 0 {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// A module vector `coords / sqrt(scale)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledVector {
    pub coords: Vec<Rational>,
    pub scale: Rational,
}

impl ScaledVector {
    /// Panics unless `scale > 0`.
    pub fn new(coords: Vec<Rational>, scale: Rational) -> Self {
        assert!(scale.is_positive(), "scale must be positive");
        ScaledVector { coords, scale }
    }

    pub fn unit(coords: Vec<Rational>) -> Self {
        ScaledVector { coords, scale: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Lossy floating-point coordinates.
    pub fn approx(&self) -> Vec<f64> {
        let s = to_f64(&self.scale).sqrt();
        self.coords.iter().map(|c| to_f64(c) / s).collect()
    }
}

/// An octonion `value / sqrt(scale)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledOctonion {
    pub value: CDElement,
    pub scale: Rational,
}

impl ScaledOctonion {
    pub fn norm_sq(&self) -> Rational {
        self.value.norm_sq() / &self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// The exact octonion when `scale` is a perfect square.
    pub fn exact(&self) -> Option<CDElement> {
        exact_sqrt(&self.scale).map(|r| self.value.scale(&(Rational::one() / r)))
    }

    /// Lossy floating-point coefficients.
    pub fn approx(&self) -> Vec<f64> {
        let s = to_f64(&self.scale).sqrt();
        self.value.coeffs().iter().map(|c| to_f64(c) / s).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OModule {
    dim: usize,
    action: Vec<RatMatrix>,
    gram: Option<Vec<RatMatrix>>,
}

impl OModule {
    /// Builds a module, checking left alternativity and, when present, the
    /// inner-product axioms (hermiticity, positivity, para-linearity).
    pub fn new(dim: usize, action: Vec<RatMatrix>, gram: Option<Vec<RatMatrix>>) -> Result<Self> {
        let m = Self::unchecked(dim, action, gram)?;
        m.check_left_alternative()?;
        if m.gram.is_some() {
            m.check_inner_product()?;
        }
        Ok(m)
    }

    /// Shape-checked construction without axiom checks, for structures that
    /// satisfy the axioms by construction.
    pub(crate) fn unchecked(
        dim: usize,
        action: Vec<RatMatrix>,
        gram: Option<Vec<RatMatrix>>,
    ) -> Result<Self> {
        if action.len() != 7 {
            return Err(Error::DimensionMismatch { expected: 7, actual: action.len() });
        }
        if let Some(g) = &gram {
            if g.len() != 8 {
                return Err(Error::DimensionMismatch { expected: 8, actual: g.len() });
            }
        }
        for m in action.iter().chain(gram.iter().flatten()) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, actual: m.rows().max(m.cols()) });
            }
        }
        Ok(OModule { dim, action, gram })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `L_i` for `i` in `1..=7`.
    pub fn action(&self, i: usize) -> &RatMatrix {
        &self.action[i - 1]
    }

    pub fn actions(&self) -> &[RatMatrix] {
        &self.action
    }

    pub fn gram(&self) -> Option<&[RatMatrix]> {
        self.gram.as_deref()
    }

    fn gram_or_err(&self) -> Result<&[RatMatrix]> {
        self.gram.as_deref().ok_or(Error::MissingGram)
    }

    /// The same module without inner-product data.
    pub fn without_gram(&self) -> OModule {
        OModule { dim: self.dim, action: self.action.clone(), gram: None }
    }

    /// `L_{e_i}` for `i` in `0..8`, with `L_0 = I`.
    fn basis_action(&self, i: usize) -> RatMatrix {
        if i == 0 {
            RatMatrix::identity(self.dim)
        } else {
            self.action[i - 1].clone()
        }
    }

    /// `L_{e_i e_j}` via the octonion table.
    fn product_action(&self, i: usize, j: usize) -> RatMatrix {
        let (s, k) = EpsilonTable::global().product(i, j);
        let m = self.basis_action(k);
        if s < 0 {
            m.neg()
        } else {
            m
        }
    }

    /// The matrix of `x -> p x`.
    pub fn action_matrix(&self, p: &CDElement) -> Result<RatMatrix> {
        check_octonion(p)?;
        let mut m = RatMatrix::identity(self.dim).scale(p.coeff(0));
        for i in 1..8 {
            if !p.coeff(i).is_zero() {
                m = m.add(&self.action[i - 1].scale(p.coeff(i)));
            }
        }
        Ok(m)
    }

    fn check_vec(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.dim {
            Err(Error::DimensionMismatch { expected: self.dim, actual: x.len() })
        } else {
            Ok(())
        }
    }

    /// `p x`.
    pub fn act(&self, p: &CDElement, x: &[Rational]) -> Result<Vec<Rational>> {
        check_octonion(p)?;
        self.check_vec(x)?;
        let mut out: Vec<Rational> = x.iter().map(|v| v * p.coeff(0)).collect();
        for i in 1..8 {
            let c = p.coeff(i);
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(self.action[i - 1].mul_vec(x)) {
                *o += c * v;
            }
        }
        Ok(out)
    }

    /// `<x, y>` for plain coordinate vectors.
    pub fn inner_raw(&self, x: &[Rational], y: &[Rational]) -> Result<CDElement> {
        let gram = self.gram_or_err()?;
        self.check_vec(x)?;
        self.check_vec(y)?;
        let coeffs = gram.iter().map(|b| dot(x, &b.mul_vec(y))).collect();
        CDElement::from_coeffs(3, coeffs)
    }

    /// `Re <x, y>`.
    pub fn real_inner(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        let gram = self.gram_or_err()?;
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(dot(x, &gram[0].mul_vec(y)))
    }

    /// `<x, y>` for scaled vectors, returned as `c / sqrt(s t)`.
    pub fn inner(&self, x: &ScaledVector, y: &ScaledVector) -> Result<ScaledOctonion> {
        Ok(ScaledOctonion {
            value: self.inner_raw(&x.coords, &y.coords)?,
            scale: &x.scale * &y.scale,
        })
    }

    /// `[p, u, v] = <p u, v> - p <u, v>`.
    pub fn second_associator(&self, p: &CDElement, u: &[Rational], v: &[Rational]) -> Result<CDElement> {
        let pu = self.act(p, u)?;
        let left = self.inner_raw(&pu, v)?;
        let right = cd_multiply(p, &self.inner_raw(u, v)?)?;
        Ok(&left - &right)
    }

    /// `[p, q, x] = (p q) x - p (q x)`.
    pub fn module_associator(&self, p: &CDElement, q: &CDElement, x: &[Rational]) -> Result<Vec<Rational>> {
        let pq = cd_multiply(p, q)?;
        let left = self.act(&pq, x)?;
        let right = self.act(p, &self.act(q, x)?)?;
        Ok(left.iter().zip(right).map(|(a, b)| a - b).collect())
    }

    /// `(p q) x - q (p x)`, the defect of conjugate associativity.
    pub fn conj_associator(&self, p: &CDElement, q: &CDElement, x: &[Rational]) -> Result<Vec<Rational>> {
        let pq = cd_multiply(p, q)?;
        let left = self.act(&pq, x)?;
        let right = self.act(q, &self.act(p, x)?)?;
        Ok(left.iter().zip(right).map(|(a, b)| a - b).collect())
    }

    fn check_left_alternative(&self) -> Result<()> {
        for i in 1..8 {
            for j in i..8 {
                // [e_i, e_j, x] + [e_j, e_i, x] = 0
                let li = self.basis_action(i);
                let lj = self.basis_action(j);
                let sum = self
                    .product_action(i, j)
                    .add(&self.product_action(j, i))
                    .sub(&li.mul(&lj))
                    .sub(&lj.mul(&li));
                if !sum.is_zero() {
                    return Err(Error::AxiomViolation {
                        identity: "left alternativity [p,q,x] = -[q,p,x]".into(),
                        witness: format!("p = e{i}, q = e{j}"),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_inner_product(&self) -> Result<()> {
        let gram = self.gram_or_err()?;
        if !gram[0].is_symmetric() {
            return Err(Error::AxiomViolation {
                identity: "hermiticity".into(),
                witness: "B_0 is not symmetric".into(),
            });
        }
        for (k, b) in gram.iter().enumerate().skip(1) {
            if !b.is_skew_symmetric() {
                return Err(Error::AxiomViolation {
                    identity: "hermiticity".into(),
                    witness: format!("B_{k} is not skew-symmetric"),
                });
            }
        }
        if !is_positive_definite(&gram[0]) {
            return Err(Error::AxiomViolation {
                identity: "positivity".into(),
                witness: "B_0 is not positive definite".into(),
            });
        }
        // Re <e_k u, v> = Re(e_k <u, v>)  <=>  L_k^T B_0 = -B_k
        for k in 1..8 {
            let lhs = self.action[k - 1].transpose().mul(&gram[0]);
            if lhs != gram[k].neg() {
                return Err(Error::AxiomViolation {
                    identity: "para-linearity Re[p,x,f] = 0".into(),
                    witness: format!("p = e{k}"),
                });
            }
        }
        Ok(())
    }

    /// The module in new coordinates `x' = Q x` for invertible `Q`.
    pub fn transform(&self, q: &RatMatrix) -> Result<OModule> {
        if q.rows() != self.dim || q.cols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: q.rows() });
        }
        let q_inv = q.inverse()?;
        let action = self.action.iter().map(|l| q.mul(l).mul(&q_inv)).collect();
        let gram = self.gram.as_ref().map(|g| {
            let q_inv_t = q_inv.transpose();
            g.iter().map(|b| q_inv_t.mul(b).mul(&q_inv)).collect()
        });
        Ok(OModule { dim: self.dim, action, gram })
    }

    /// The module `H^-`: action `p . x = conj(p) x`, inner product `<y, x>`.
    ///
    /// Its second associator is `[p, x, y] + [<y, x>, p]` in terms of `self`.
    pub fn dual_module(&self) -> Result<OModule> {
        let gram = self.gram_or_err()?;
        let action = self.action.iter().map(RatMatrix::neg).collect();
        let mut dual_gram = vec![gram[0].clone()];
        dual_gram.extend(gram[1..].iter().map(RatMatrix::neg));
        Ok(OModule { dim: self.dim, action, gram: Some(dual_gram) })
    }
}

/// Exact test by symmetric elimination: all pivots must be positive.
pub fn is_positive_definite(m: &RatMatrix) -> bool {
    if !m.is_symmetric() {
        return false;
    }
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        let pivot_row = a[k].clone();
        for row in a.iter_mut().skip(k + 1) {
            if row[k].is_zero() {
                continue;
            }
            let f = &row[k] / &pivot_row[k];
            for j in k..n {
                if !pivot_row[j].is_zero() {
                    row[j] -= &f * &pivot_row[j];
                }
            }
        }
    }
    true
}

pub(crate) fn check_octonion(p: &CDElement) -> Result<()> {
    if p.level() != 3 {
        Err(Error::LevelMismatch { left: p.level(), right: 3 })
    } else {
        Ok(())
    }
}

/// `[p, q, r]` in O.
pub(crate) fn octonion_associator(p: &CDElement, q: &CDElement, r: &CDElement) -> Result<CDElement> {
    associator(p, q, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cd::octonion_multiply_table;
    use crate::rational::int;
    use crate::sample::Sampler;

    fn e(i: usize) -> CDElement {
        CDElement::basis(3, i)
    }

    fn unit(dim: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dim];
        v[i] = Rational::one();
        v
    }

    #[test]
    fn canonical_modules_pass_axiom_checks() {
        for (a, b) in [(1, 0), (0, 1), (1, 1), (2, 1), (0, 2)] {
            let m = CanonicalModule::new(a, b).module();
            OModule::new(m.dim, m.action.clone(), m.gram.clone()).unwrap();
        }
    }

    #[test]
    fn regular_and_conjugate_actions() {
        let o = CanonicalModule::new(1, 0).module();
        assert_eq!(o.act(&e(1), &unit(8, 2)).unwrap(), unit(8, 3));
        let obar = CanonicalModule::new(0, 1).module();
        let minus_e3: Vec<Rational> = unit(8, 3).iter().map(|x| -x.clone()).collect();
        assert_eq!(obar.act(&e(1), &unit(8, 2)).unwrap(), minus_e3);
        let mut s = Sampler::default();
        let x = s.vector(16);
        let m = CanonicalModule::new(1, 1).module();
        assert_eq!(m.act(&CDElement::one(3), &x).unwrap(), x);
    }

    #[test]
    fn left_alternativity_on_samples() {
        let mut s = Sampler::default();
        let m = CanonicalModule::new(1, 2).module();
        for _ in 0..100 {
            let r = s.octonion();
            let x = s.vector(m.dim());
            let rr = cd_multiply(&r, &r).unwrap();
            assert_eq!(m.act(&r, &m.act(&r, &x).unwrap()).unwrap(), m.act(&rr, &x).unwrap());
        }
    }

    #[test]
    fn inner_examples() {
        let o2 = CanonicalModule::new(2, 0).module();
        let y = ScaledVector::unit(unit(16, 0));
        let mut x1 = unit(16, 1);
        x1[8 + 2] = int(1);
        let x1 = ScaledVector::new(x1, int(2));
        let ip = o2.inner(&y, &x1).unwrap();
        assert_eq!(ip.value, e(1).conjugate());
        assert_eq!(ip.scale, int(2));

        let o = CanonicalModule::new(1, 0).module();
        let u = ScaledVector::unit(unit(8, 5));
        let uu = o.inner(&u, &u).unwrap();
        assert_eq!((uu.value, uu.scale), (CDElement::one(3), int(1)));

        // e2 conj(e3) from the table oracle
        let got = o.inner_raw(&unit(8, 2), &unit(8, 3)).unwrap();
        assert_eq!(got, octonion_multiply_table(&e(2), &e(3).conjugate()).unwrap());
    }

    #[test]
    fn hermitian_and_positive() {
        let mut s = Sampler::default();
        let m = CanonicalModule::new(1, 1).module();
        for _ in 0..50 {
            let x = s.nonzero_vector(16);
            let y = s.vector(16);
            assert_eq!(m.inner_raw(&x, &y).unwrap(), m.inner_raw(&y, &x).unwrap().conjugate());
            let xx = m.inner_raw(&x, &x).unwrap();
            assert!(xx.is_real() && xx.real_part().is_positive());
        }
    }

    #[test]
    fn second_associator_examples() {
        let o = CanonicalModule::new(1, 0).module();
        let mut s = Sampler::default();
        let (u, v) = (s.vector(8), s.vector(8));
        let real = CDElement::real(3, int(5));
        assert!(o.second_associator(&real, &u, &v).unwrap().is_zero());
        // u = 1 lies in the nucleus of O
        assert!(o.second_associator(&s.octonion(), &unit(8, 0), &v).unwrap().is_zero());
        // <e1 e2, e4> - e1 <e2, e4>, both sides from the table
        let t = |a: &CDElement, b: &CDElement| octonion_multiply_table(a, b).unwrap();
        let expected = &t(&t(&e(1), &e(2)), &e(4).conjugate()) - &t(&e(1), &t(&e(2), &e(4).conjugate()));
        assert_eq!(o.second_associator(&e(1), &unit(8, 2), &unit(8, 4)).unwrap(), expected);
        assert!(!expected.is_zero());
        assert!(expected.real_part().is_zero());
    }

    #[test]
    fn module_associator_examples() {
        let mut s = Sampler::default();
        let m = CanonicalModule::new(1, 1).module();
        let p = s.octonion();
        let x = s.vector(16);
        assert!(m.module_associator(&p, &p, &x).unwrap().iter().all(Zero::is_zero));

        // Obar: (e1 e2)^ 1 - e1^ (e2^ 1) = conj(e1 e2) - conj(e1) conj(e2)
        let obar = CanonicalModule::new(0, 1).module();
        let t = |a: &CDElement, b: &CDElement| octonion_multiply_table(a, b).unwrap();
        let expected = &t(&e(1), &e(2)).conjugate() - &t(&e(1).conjugate(), &e(2).conjugate());
        let got = obar.module_associator(&e(1), &e(2), &unit(8, 0)).unwrap();
        assert_eq!(got, expected.coeffs());
    }

    #[test]
    fn corrupted_entry_breaks_left_alternativity() {
        let m = CanonicalModule::new(1, 0).module();
        let mut action = m.actions().to_vec();
        let v = action[0].get(1, 0).clone();
        action[0].set(1, 0, -v);
        let err = OModule::new(8, action, m.gram().map(<[_]>::to_vec)).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { ref identity, .. } if identity.contains("alternativity")));
    }

    #[test]
    fn flipped_generator_breaks_para_linearity() {
        // -L_1 still anticommutes with the other generators, so only the
        // inner-product compatibility can catch it.
        let m = CanonicalModule::new(1, 0).module();
        let mut action = m.actions().to_vec();
        action[0] = action[0].neg();
        assert!(OModule::new(8, action.clone(), None).is_ok());
        let err = OModule::new(8, action, m.gram().map(<[_]>::to_vec)).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { ref identity, .. } if identity.contains("para-linearity")));
    }

    #[test]
    fn dimension_errors() {
        let m = CanonicalModule::new(1, 0).module();
        assert!(m.act(&e(1), &[int(1)]).is_err());
        assert!(m.act(&CDElement::basis(2, 1), &unit(8, 0)).is_err());
        assert!(OModule::new(8, vec![RatMatrix::identity(8)], None).is_err());
    }

    #[test]
    fn scaled_values() {
        let v = ScaledOctonion { value: e(1).scale(&int(3)), scale: int(4) };
        assert_eq!(v.exact(), Some(e(1).scale(&crate::rational::rat(3, 2))));
        assert_eq!(v.norm_sq(), crate::rational::rat(9, 4));
        let w = ScaledVector::new(vec![int(1), int(1)], int(2));
        let a = w.approx();
        assert!((a[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }
}
