//! Orthonormal systems, the octonionic Bessel identity and Parseval expansion.
//!
//! Vectors of a system are [`ScaledVector`]s `u / sqrt(s)`. Every reported
//! quantity pairs each `sqrt(s)` with itself, so all results are rational:
//! with `x = u_x / sqrt(s_x)` and `<u_x, u_n> = c_n`,
//!
//! * `|<x, x_n>|^2 = |c_n|^2 / (s_x s_n)`
//! * `x - sum <x, x_n> x_n = (u_x - sum (c_n u_n) / s_n) / sqrt(s_x)`
//! * the correction term `<[p_n, p_m, x_m], x_n>_R` equals
//!   `Re <[c_n, c_m, u_m], u_n> / (s_x s_n s_m)`.
//!
//! The bracket in the correction term is the left module associator
//! `(pq)x - p(qx)`, not the second associator.

use num_traits::{One, Zero};

use crate::cd::CDElement;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, RatMatrix};
use crate::omodule::{OModule, ScaledOctonion, ScaledVector};
use crate::rational::Rational;
use crate::sample::Sampler;

/// Outcome of a boolean check with the first counterexample found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    fn pass() -> Self {
        Verdict { holds: true, witness: None }
    }

    fn fail(w: W) -> Self {
        Verdict { holds: false, witness: Some(w) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BesselReport {
    pub norm_sq_x: Rational,
    pub coeff_sum: Rational,
    pub residual_norm_sq: Rational,
    pub correction: Rational,
    pub balanced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsevalExpansion {
    /// `<x, x_n>` in system order.
    pub coefficients: Vec<ScaledOctonion>,
    pub residual: ScaledVector,
    pub norm_sq: Rational,
    pub coeff_sum: Rational,
    pub parseval_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasisReport {
    pub weak_associative: bool,
    pub hilbert_basis: bool,
    pub samples_checked: usize,
    pub probes_checked: usize,
    /// First input on which Parseval failed, if any.
    pub parseval_witness: Option<String>,
    /// First `(i, n, m)` with `[e_i, x_n, x_m] != 0`, if any.
    pub associator_witness: Option<(usize, usize, usize)>,
}

fn check_dims(module: &OModule, vectors: &[ScaledVector]) -> Result<()> {
    for v in vectors {
        if v.coords.len() != module.dim() {
            return Err(Error::DimensionMismatch { expected: module.dim(), actual: v.coords.len() });
        }
    }
    Ok(())
}

/// `<x_a, x_b> = delta_ab`; the witness is the first offending pair.
pub fn is_orthonormal_system(module: &OModule, vectors: &[ScaledVector]) -> Result<Verdict<(usize, usize)>> {
    if vectors.is_empty() {
        return Err(Error::Precondition("empty system".into()));
    }
    check_dims(module, vectors)?;
    for (a, x) in vectors.iter().enumerate() {
        for (b, y) in vectors.iter().enumerate() {
            let ip = module.inner_raw(&x.coords, &y.coords)?;
            let ok = if a == b {
                ip == CDElement::real(3, x.scale.clone())
            } else {
                ip.is_zero()
            };
            if !ok {
                return Ok(Verdict::fail((a, b)));
            }
        }
    }
    Ok(Verdict::pass())
}

fn require_orthonormal(module: &OModule, system: &[ScaledVector]) -> Result<()> {
    let v = is_orthonormal_system(module, system)?;
    match v.witness {
        None => Ok(()),
        Some((a, b)) => Err(Error::Precondition(format!("system is not orthonormal at pair ({a}, {b})"))),
    }
}

/// No nonzero vector is orthogonal to every member of the system.
pub fn is_maximal(module: &OModule, system: &[ScaledVector]) -> Result<bool> {
    Ok(orthogonal_complement(module, system)?.is_empty())
}

/// Basis of `{x : <x, x_a> = 0 for all a}` (eight real equations per member).
pub fn orthogonal_complement(module: &OModule, system: &[ScaledVector]) -> Result<Vec<Vec<Rational>>> {
    check_dims(module, system)?;
    let gram = module.gram().ok_or(Error::MissingGram)?;
    let mut rows = Vec::with_capacity(8 * system.len());
    for x in system {
        for b in gram {
            rows.push(b.mul_vec(&x.coords));
        }
    }
    if rows.is_empty() {
        return Ok(nullspace(&RatMatrix::zeros(0, module.dim())));
    }
    Ok(nullspace(&RatMatrix::from_rows(rows)?))
}

/// `[e_i, x_n, x_m] = 0` for `i = 1..7` and all ordered pairs; the witness
/// is the first violating `(i, n, m)` in pair-lexicographic order. The
/// condition is homogeneous, so scales are ignored.
pub fn is_weak_associative(module: &OModule, system: &[ScaledVector]) -> Result<Verdict<(usize, usize, usize)>> {
    check_dims(module, system)?;
    for (n, x) in system.iter().enumerate() {
        for (m, y) in system.iter().enumerate() {
            for i in 1..8 {
                let a = module.second_associator(&CDElement::basis(3, i), &x.coords, &y.coords)?;
                if !a.is_zero() {
                    return Ok(Verdict::fail((i, n, m)));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

struct Projection {
    coefficients: Vec<ScaledOctonion>,
    residual: ScaledVector,
    norm_sq: Rational,
    coeff_sum: Rational,
}

fn project(module: &OModule, x: &ScaledVector, system: &[ScaledVector]) -> Result<Projection> {
    check_dims(module, std::slice::from_ref(x))?;
    let mut coefficients = Vec::with_capacity(system.len());
    let mut residual = x.coords.clone();
    let mut coeff_sum = Rational::zero();
    for xn in system {
        let c = module.inner_raw(&x.coords, &xn.coords)?;
        coeff_sum += c.norm_sq() / (&x.scale * &xn.scale);
        let cu = module.act(&c, &xn.coords)?;
        for (r, v) in residual.iter_mut().zip(cu) {
            *r -= v / &xn.scale;
        }
        coefficients.push(ScaledOctonion { value: c, scale: &x.scale * &xn.scale });
    }
    let norm_sq = module.real_inner(&x.coords, &x.coords)? / &x.scale;
    Ok(Projection {
        coefficients,
        residual: ScaledVector { coords: residual, scale: x.scale.clone() },
        norm_sq,
        coeff_sum,
    })
}

/// All four terms of
/// `|x|^2 = sum |<x,x_n>|^2 + |x - sum <x,x_n> x_n|^2 - sum_{m,n} <[<x,x_n>, <x,x_m>, x_m], x_n>_R`.
pub fn bessel_report(module: &OModule, x: &ScaledVector, system: &[ScaledVector]) -> Result<BesselReport> {
    require_orthonormal(module, system)?;
    let proj = project(module, x, system)?;
    let residual_norm_sq =
        module.real_inner(&proj.residual.coords, &proj.residual.coords)? / &proj.residual.scale;

    let mut correction = Rational::zero();
    for (n, xn) in system.iter().enumerate() {
        for (m, xm) in system.iter().enumerate() {
            let cn = &proj.coefficients[n].value;
            let cm = &proj.coefficients[m].value;
            if cn.is_zero() || cm.is_zero() {
                continue;
            }
            let assoc = module.module_associator(cn, cm, &xm.coords)?;
            let re = module.real_inner(&assoc, &xn.coords)?;
            correction += re / (&x.scale * &xn.scale * &xm.scale);
        }
    }

    let balanced = proj.norm_sq == &proj.coeff_sum + &residual_norm_sq - &correction;
    if !balanced {
        return Err(Error::Internal(format!(
            "Bessel identity violated: {} != {} + {} - {}",
            proj.norm_sq, proj.coeff_sum, residual_norm_sq, correction
        )));
    }
    if &proj.coeff_sum - &correction > proj.norm_sq {
        return Err(Error::Internal("Bessel inequality violated".into()));
    }
    Ok(BesselReport {
        norm_sq_x: proj.norm_sq,
        coeff_sum: proj.coeff_sum,
        residual_norm_sq,
        correction,
        balanced,
    })
}

/// `x = sum <x, x_a> x_a` with `|x|^2 = sum |<x, x_a>|^2`, reported honestly:
/// for weak-associative systems both hold; otherwise they may fail.
pub fn parseval_expand(module: &OModule, x: &ScaledVector, system: &[ScaledVector]) -> Result<ParsevalExpansion> {
    require_orthonormal(module, system)?;
    if !is_maximal(module, system)? {
        return Err(Error::Precondition("system is not maximal".into()));
    }
    expand_checked(module, x, system)
}

fn expand_checked(module: &OModule, x: &ScaledVector, system: &[ScaledVector]) -> Result<ParsevalExpansion> {
    let proj = project(module, x, system)?;
    let parseval_holds = proj.residual.is_zero() && proj.norm_sq == proj.coeff_sum;
    Ok(ParsevalExpansion {
        coefficients: proj.coefficients,
        residual: proj.residual,
        norm_sq: proj.norm_sq,
        coeff_sum: proj.coeff_sum,
        parseval_holds,
    })
}

/// `{e_i x_a}`, checked to be real-orthonormal; when the system is maximal
/// its size is `dim / 8`.
pub fn real_basis_expansion(module: &OModule, system: &[ScaledVector]) -> Result<Vec<ScaledVector>> {
    require_orthonormal(module, system)?;
    if let Some((i, n, m)) = is_weak_associative(module, system)?.witness {
        return Err(Error::Precondition(format!(
            "system is not weak associative: [e{i}, x{n}, x{m}] != 0"
        )));
    }
    let mut out = Vec::with_capacity(8 * system.len());
    for x in system {
        for i in 0..8 {
            let coords = module.act(&CDElement::basis(3, i), &x.coords)?;
            out.push(ScaledVector { coords, scale: x.scale.clone() });
        }
    }
    for (a, x) in out.iter().enumerate() {
        for (b, y) in out.iter().enumerate() {
            let re = module.real_inner(&x.coords, &y.coords)?;
            let expected = if a == b { x.scale.clone() } else { Rational::zero() };
            if re != expected {
                return Err(Error::Internal(format!("real basis not orthonormal at ({a}, {b})")));
            }
        }
    }
    if is_maximal(module, system)? && out.len() != module.dim() {
        return Err(Error::Internal(format!(
            "maximal weak-associative system gives {} real vectors in dimension {}",
            out.len(),
            module.dim()
        )));
    }
    Ok(out)
}

/// Compares "Parseval holds on every probe" with "weak associative".
///
/// Probes are `sample_count` random vectors plus `p x_b` for every
/// `p = e_1..e_7` and every member `x_b`. A disagreement would contradict
/// the equivalence and is reported as an internal error.
pub fn hilbert_basis_iff_weak_associative_check(
    module: &OModule,
    system: &[ScaledVector],
    sample_count: usize,
    seed: u64,
) -> Result<HilbertBasisReport> {
    require_orthonormal(module, system)?;
    if !is_maximal(module, system)? {
        return Err(Error::Precondition("system is not maximal".into()));
    }
    let weak = is_weak_associative(module, system)?;

    let mut sampler = Sampler::new(seed);
    let mut inputs: Vec<(String, ScaledVector)> = (0..sample_count)
        .map(|k| (format!("sample {k}"), ScaledVector::unit(sampler.vector(module.dim()))))
        .collect();
    let probes_start = inputs.len();
    for (b, xb) in system.iter().enumerate() {
        for i in 1..8 {
            let coords = module.act(&CDElement::basis(3, i), &xb.coords)?;
            inputs.push((format!("e{i} x{b}"), ScaledVector { coords, scale: xb.scale.clone() }));
        }
    }

    let mut parseval_witness = None;
    for (label, x) in &inputs {
        if !expand_checked(module, x, system)?.parseval_holds {
            parseval_witness = Some(label.clone());
            break;
        }
    }
    let hilbert_basis = parseval_witness.is_none();
    if hilbert_basis != weak.holds {
        return Err(Error::Internal(format!(
            "Hilbert basis = {hilbert_basis} but weak associative = {}",
            weak.holds
        )));
    }
    Ok(HilbertBasisReport {
        weak_associative: weak.holds,
        hilbert_basis,
        samples_checked: probes_start,
        probes_checked: inputs.len() - probes_start,
        parseval_witness,
        associator_witness: weak.witness,
    })
}

/// The two orthonormal bases of `O^2` used throughout the tests and CLI:
/// `x_1..x_4 = (e1,e2), (e4,e7), (e6,e5), (1,e3)` and
/// `x_4, x_5 = (1,e3), (1,-e3)`, all scaled by `1/sqrt(2)`.
pub mod o2 {
    use super::*;

    fn pair(a: usize, b: usize, sign_b: i64) -> ScaledVector {
        let mut coords = vec![Rational::zero(); 16];
        coords[a] = Rational::one();
        coords[8 + b] = Rational::from_integer(sign_b.into());
        ScaledVector::new(coords, Rational::from_integer(2.into()))
    }

    pub fn x1() -> ScaledVector {
        pair(1, 2, 1)
    }
    pub fn x2() -> ScaledVector {
        pair(4, 7, 1)
    }
    pub fn x3() -> ScaledVector {
        pair(6, 5, 1)
    }
    pub fn x4() -> ScaledVector {
        pair(0, 3, 1)
    }
    pub fn x5() -> ScaledVector {
        pair(0, 3, -1)
    }

    /// `{x_1, x_2, x_3, x_4}`: orthonormal and maximal, not weak associative.
    pub fn four_vector_basis() -> Vec<ScaledVector> {
        vec![x1(), x2(), x3(), x4()]
    }

    /// `{x_4, x_5}`: weak associative.
    pub fn two_vector_basis() -> Vec<ScaledVector> {
        vec![x4(), x5()]
    }

    /// `{(1, 0), (0, 1)}`.
    pub fn standard_basis() -> Vec<ScaledVector> {
        let unit = |i: usize| {
            let mut c = vec![Rational::zero(); 16];
            c[i] = Rational::one();
            ScaledVector::unit(c)
        };
        vec![unit(0), unit(8)]
    }

    /// `y = (1, 0)`.
    pub fn y() -> ScaledVector {
        standard_basis().remove(0)
    }
}
