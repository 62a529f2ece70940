//! `A_n` (n >= 4) as a Hilbert left O-module.
//!
//! O acts by left multiplication through the index-preserving embedding of
//! `e_0..e_7`, and the inner product is `<s, w> = pi_O(s conj(w))`, the
//! octonion part of `s conj(w)`.


use crate::cd::{basis_product, cd_multiply, CDElement};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::omodule::{OModule, ScaledVector};
use crate::rational::Rational;

pub const MIN_MODULE_LEVEL: u32 = 4;

/// `pi_O`: the coefficients of `e_0..e_7`.
pub fn pi_o(x: &CDElement) -> Result<CDElement> {
    if x.level() < 3 {
        return Err(Error::LevelOutOfRange { level: x.level(), min: 3, max: u32::MAX });
    }
    x.truncate(3)
}

fn check_level(level: u32, limits: &Limits) -> Result<()> {
    if level < MIN_MODULE_LEVEL {
        return Err(Error::LevelOutOfRange { level, min: MIN_MODULE_LEVEL, max: limits.max_level });
    }
    limits.check_level(level)
}

fn check_module_element(x: &CDElement) -> Result<()> {
    if x.level() < MIN_MODULE_LEVEL {
        Err(Error::LevelOutOfRange { level: x.level(), min: MIN_MODULE_LEVEL, max: u32::MAX })
    } else {
        Ok(())
    }
}

/// `<s, w>_n = pi_O(s conj(w))`.
pub fn an_inner(x: &CDElement, y: &CDElement) -> Result<CDElement> {
    check_module_element(x)?;
    if x.level() != y.level() {
        return Err(Error::LevelMismatch { left: x.level(), right: y.level() });
    }
    pi_o(&cd_multiply(x, &y.conjugate())?)
}

/// `p x` for an octonion `p` embedded in `A_n`.
pub fn left_act(p: &CDElement, x: &CDElement) -> Result<CDElement> {
    crate::omodule::check_octonion(p)?;
    check_module_element(x)?;
    cd_multiply(&p.embed(x.level())?, x)
}

/// `x p`; agrees with `conj(conj(p) conj(x))`.
pub fn right_act(x: &CDElement, p: &CDElement) -> Result<CDElement> {
    crate::omodule::check_octonion(p)?;
    check_module_element(x)?;
    cd_multiply(x, &p.embed(x.level())?)
}

/// Bases of `A(A_n)` and `A-(A_n)` by the doubling recursion
/// `A(A_{n+1}) = A(A_n) ⊕ A-(A_n) e_{2^n}`,
/// `A-(A_{n+1}) = A-(A_n) ⊕ A(A_n) e_{2^n}`, starting from `{e_0}` / `{e_8}`
/// in the sedenions.
pub fn an_nucleus_bases(level: u32) -> Result<(Vec<CDElement>, Vec<CDElement>)> {
    if level < MIN_MODULE_LEVEL {
        return Err(Error::LevelOutOfRange { level, min: MIN_MODULE_LEVEL, max: u32::MAX });
    }
    let mut regular = vec![CDElement::basis(4, 0)];
    let mut conjugate = vec![CDElement::basis(4, 8)];
    for n in 4..level {
        let unit = CDElement::basis(n + 1, 1 << n);
        let lift = |xs: &[CDElement]| -> Result<Vec<CDElement>> {
            xs.iter().map(|x| x.embed(n + 1)).collect()
        };
        let times_unit = |xs: &[CDElement]| -> Result<Vec<CDElement>> {
            xs.iter().map(|x| cd_multiply(&x.embed(n + 1)?, &unit)).collect()
        };
        let mut next_regular = lift(&regular)?;
        next_regular.extend(times_unit(&conjugate)?);
        let mut next_conjugate = lift(&conjugate)?;
        next_conjugate.extend(times_unit(&regular)?);
        regular = next_regular;
        conjugate = next_conjugate;
    }
    Ok((regular, conjugate))
}

/// `{e_{8i} : i = 0..2^(n-3)}`, each of unit norm.
pub fn weak_associative_basis(level: u32) -> Result<Vec<ScaledVector>> {
    if level < MIN_MODULE_LEVEL {
        return Err(Error::LevelOutOfRange { level, min: MIN_MODULE_LEVEL, max: u32::MAX });
    }
    let dim = 1usize << level;
    Ok((0..dim / 8)
        .map(|i| ScaledVector::unit(CDElement::basis(level, 8 * i).into_coeffs()))
        .collect())
}

/// Octonion coefficients `c_i = pi_O(x conj(e_{8i}))`, in ascending basis
/// index order, so that `x = sum c_i e_{8i}`.
pub fn an_expand(x: &CDElement) -> Result<Vec<(CDElement, usize)>> {
    check_module_element(x)?;
    (0..x.dim() / 8)
        .map(|i| {
            let e = CDElement::basis(x.level(), 8 * i);
            Ok((pi_o(&cd_multiply(x, &e.conjugate())?)?, 8 * i))
        })
        .collect()
}

/// `sum c_i e_{k_i}` with each octonion coefficient left-multiplying its
/// basis element inside `A_n`.
pub fn an_reconstruct(level: u32, terms: &[(CDElement, usize)]) -> Result<CDElement> {
    let mut acc = CDElement::zero(level);
    for (c, k) in terms {
        acc = &acc + &left_act(c, &CDElement::basis(level, *k))?;
    }
    Ok(acc)
}

/// `A_n` with its materialized module structure.
#[derive(Clone, Debug)]
pub struct AnModule {
    level: u32,
    module: Option<OModule>,
}

impl AnModule {
    pub fn new(level: u32) -> Result<Self> {
        Self::with_limits(level, &Limits::default())
    }

    /// Materializes action and gram matrices up to `limits.materialize_level`;
    /// above that only the element-level operations are available.
    pub fn with_limits(level: u32, limits: &Limits) -> Result<Self> {
        check_level(level, limits)?;
        let module = if level <= limits.materialize_level {
            let (action, gram) = an_matrices(level);
            Some(OModule::new(1 << level, action, Some(gram))?)
        } else {
            None
        };
        Ok(AnModule { level, module })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        1 << self.level
    }

    pub fn module(&self) -> Result<&OModule> {
        self.module.as_ref().ok_or_else(|| {
            Error::Precondition(format!("A{} is above the materialization limit", self.level))
        })
    }

    /// Conjugation `C` of the weak bimodule structure, computed from the
    /// recursive nucleus bases.
    ///
    /// On the sedenions this is the algebra conjugate. From `A_5` on the
    /// nucleus contains imaginary units such as `e24 = e8 e16`, which `C`
    /// fixes while the algebra conjugate negates them; elsewhere the two agree.
    pub fn bimodule_conjugate(&self, x: &CDElement) -> Result<CDElement> {
        if x.level() != self.level {
            return Err(Error::LevelMismatch { left: x.level(), right: self.level });
        }
        let (regular, conjugate) = an_nucleus_bases(self.level)?;
        let mut columns = Vec::with_capacity(self.dim());
        let mut images = Vec::with_capacity(self.dim());
        for a in &regular {
            for i in 0..8 {
                let e = CDElement::basis(3, i);
                columns.push(left_act(&e, a)?.into_coeffs());
                images.push(left_act(&e.conjugate(), a)?.into_coeffs());
            }
        }
        for b in &conjugate {
            for i in 0..8 {
                let col = left_act(&CDElement::basis(3, i), b)?;
                images.push((-&col).into_coeffs());
                columns.push(col.into_coeffs());
            }
        }
        let frame = RatMatrix::from_columns(self.dim(), &columns)?;
        let coeffs = frame
            .solve(x.coeffs())?
            .ok_or_else(|| Error::Internal("nucleus frame does not span A_n".into()))?;
        let image = RatMatrix::from_columns(self.dim(), &images)?;
        CDElement::from_coeffs(self.level, image.mul_vec(&coeffs))
    }
}

/// Left-multiplication matrices of `e_1..e_7` and the forms
/// `B_k[a][b] = coeff_k(e_a conj(e_b))`, built from signed basis products.
fn an_matrices(level: u32) -> (Vec<RatMatrix>, Vec<RatMatrix>) {
    let d = 1usize << level;
    let one = Rational::from_integer(1.into());
    let signed = |s: i8| if s < 0 { -one.clone() } else { one.clone() };
    let mut action: Vec<RatMatrix> = (0..7).map(|_| RatMatrix::zeros(d, d)).collect();
    for (i, l) in action.iter_mut().enumerate() {
        for b in 0..d {
            let (s, k) = basis_product(level, i + 1, b);
            l.set(k, b, signed(s));
        }
    }
    let mut gram: Vec<RatMatrix> = (0..8).map(|_| RatMatrix::zeros(d, d)).collect();
    for a in 0..d {
        for b in 0..d {
            let (s, k) = basis_product(level, a, b);
            if k < 8 {
                let s = if b == 0 { s } else { -s };
                gram[k].set(a, b, signed(s));
            }
        }
    }
    (action, gram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cd::parse_element;
    use crate::rational::int;
    use crate::sample::Sampler;
    use num_traits::Zero;

    fn e(level: u32, i: usize) -> CDElement {
        CDElement::basis(level, i)
    }

    #[test]
    fn projection_examples() {
        let x = parse_element("e3 + 2e8", Some(4)).unwrap();
        assert_eq!(pi_o(&x).unwrap(), e(3, 3));
        let mut s = Sampler::default();
        let o = s.octonion();
        assert_eq!(pi_o(&o).unwrap(), o);
        let p = cd_multiply(&e(4, 8), &e(4, 8).conjugate()).unwrap();
        assert_eq!(pi_o(&p).unwrap(), CDElement::one(3));
        assert!(pi_o(&e(2, 1)).is_err());
    }

    #[test]
    fn inner_examples() {
        let x = &CDElement::one(4) + &e(4, 8);
        assert_eq!(an_inner(&x, &x).unwrap(), CDElement::real(3, int(2)));
        assert_eq!(an_inner(&e(4, 8), &e(4, 8)).unwrap(), CDElement::one(3));
        assert!(an_inner(&e(4, 1), &e(5, 1)).is_err());
    }

    #[test]
    fn sedenion_inner_formula() {
        let mut s = Sampler::default();
        for _ in 0..100 {
            let (a, b, c, d) = (s.octonion(), s.octonion(), s.octonion(), s.octonion());
            let x = CDElement::join(&a, &b).unwrap();
            let y = CDElement::join(&c, &d).unwrap();
            let expected = &cd_multiply(&a, &c.conjugate()).unwrap()
                + &cd_multiply(&d.conjugate(), &b).unwrap();
            assert_eq!(an_inner(&x, &y).unwrap(), expected);
        }
    }

    #[test]
    fn inner_recursion_law() {
        let mut s = Sampler::new(3);
        for level in 5..=6 {
            for _ in 0..20 {
                let (x, y) = (s.element(level), s.element(level));
                let (a, b) = x.split();
                let (c, d) = y.split();
                let expected =
                    &an_inner(&a, &c).unwrap() + &an_inner(&d.conjugate(), &b.conjugate()).unwrap();
                assert_eq!(an_inner(&x, &y).unwrap(), expected);
            }
        }
    }

    #[test]
    fn nucleus_table() {
        let (a, c) = an_nucleus_bases(4).unwrap();
        assert_eq!((a, c), (vec![e(4, 0)], vec![e(4, 8)]));
        let (a, c) = an_nucleus_bases(5).unwrap();
        assert_eq!(a, vec![e(5, 0), e(5, 24)]);
        assert_eq!(a[1], cd_multiply(&e(5, 8), &e(5, 16)).unwrap());
        assert_eq!(c, vec![e(5, 8), e(5, 16)]);
    }

    #[test]
    fn weak_basis_shapes() {
        assert_eq!(weak_associative_basis(4).unwrap().len(), 2);
        let b5 = weak_associative_basis(5).unwrap();
        let idx: Vec<usize> = b5.iter().map(|v| v.coords.iter().position(|c| !c.is_zero()).unwrap()).collect();
        assert_eq!(idx, vec![0, 8, 16, 24]);
        assert_eq!(weak_associative_basis(6).unwrap().len(), 8);
        assert!(weak_associative_basis(3).is_err());
    }

    #[test]
    fn expand_examples() {
        let x = e(4, 3);
        let terms = an_expand(&x).unwrap();
        assert_eq!(terms, vec![(e(3, 3), 0), (CDElement::zero(3), 8)]);

        // e11 = e3 e8
        let x = e(4, 11);
        let terms = an_expand(&x).unwrap();
        let c8 = pi_o(&cd_multiply(&x, &e(4, 8).conjugate()).unwrap()).unwrap();
        assert_eq!(terms[1], (c8.clone(), 8));
        assert_eq!(c8, e(3, 3));
        assert_eq!(an_reconstruct(4, &terms).unwrap(), x);
    }

    #[test]
    fn right_action_and_compatibility() {
        let expected = cd_multiply(&e(4, 8), &e(4, 1)).unwrap();
        assert_eq!(right_act(&e(4, 8), &e(3, 1)).unwrap(), expected);
        let mut s = Sampler::default();
        for _ in 0..100 {
            let p = s.octonion();
            let x = s.element(4);
            let lhs = left_act(&p, &x).unwrap().conjugate();
            let rhs = right_act(&x.conjugate(), &p.conjugate()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bimodule_conjugate_on_sedenions_is_algebra_conjugate() {
        let m = AnModule::new(4).unwrap();
        let mut s = Sampler::default();
        for _ in 0..100 {
            let x = s.element(4);
            assert_eq!(m.bimodule_conjugate(&x).unwrap(), x.conjugate());
        }
    }

    #[test]
    fn bimodule_conjugate_fixes_imaginary_nucleus_units() {
        for level in [5, 6] {
            let m = AnModule::new(level).unwrap();
            let (regular, _) = an_nucleus_bases(level).unwrap();
            let mut s = Sampler::new(level as u64);
            for _ in 0..50 {
                let x = s.element(level);
                // C(x) - conj(x) = 2 * (component of x along imaginary nucleus units)
                let mut expected = x.conjugate();
                for a in &regular[1..] {
                    let k = (0..a.dim()).find(|&k| !a.coeff(k).is_zero()).unwrap();
                    let part = CDElement::basis(level, k).scale(&(x.coeff(k) * Rational::from_integer(2.into())));
                    expected = &expected + &part;
                }
                assert_eq!(m.bimodule_conjugate(&x).unwrap(), expected);
            }
        }
        let m = AnModule::new(5).unwrap();
        assert_eq!(m.bimodule_conjugate(&e(5, 24)).unwrap(), e(5, 24));
        assert_eq!(e(5, 24).conjugate(), -&e(5, 24));
    }

    #[test]
    fn level_limits() {
        assert!(AnModule::new(3).is_err());
        assert!(AnModule::new(13).is_err());
        let lim = Limits::new(10, 5).unwrap();
        let high = AnModule::with_limits(6, &lim).unwrap();
        assert!(high.module().is_err());
    }
}
