//! Sampled verification of the inner-product identity suite.

use num_traits::Zero;

use super::{octonion_associator, OModule};
use crate::cd::{cd_multiply, CDElement};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sample::Sampler;

/// Largest squared residual seen for one identity (must be zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityResidual {
    pub name: &'static str,
    pub formula: &'static str,
    pub checks: usize,
    pub max_residual: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub seed: u64,
    pub samples: usize,
    /// The five second-associator identities.
    pub identities: Vec<IdentityResidual>,
    /// Inner-product axioms and the derived `<pu, u> = p<u, u>`.
    pub axioms: Vec<IdentityResidual>,
}

impl IdentityReport {
    pub fn all_zero(&self) -> bool {
        self.identities.iter().chain(&self.axioms).all(|r| r.max_residual.is_zero())
    }

    pub fn total_checks(&self) -> usize {
        self.identities.iter().map(|r| r.checks).sum()
    }
}

const IDENTITIES: [(&str, &str); 5] = [
    ("real-skew", "<[p,q,u],v>_R = -<u,[p,q,v]>_R"),
    ("antisymmetry", "[p,v,u] = -[p,u,v]"),
    ("product-rule", "[pq,v,u] = <[p,q,v],u> - [p,q,<v,u>] + p[q,v,u] + [p,qv,u]"),
    ("right-slot", "<u,pv> = <u,v>conj(p) + [p,u,v]"),
    ("two-sided", "<pu,qv> = (p<u,v>)conj(q) + [pq,u,v] + <[p,q,v],u>"),
];

const AXIOMS: [(&str, &str); 4] = [
    ("para-linearity", "Re[p,u,v] = 0"),
    ("hermiticity", "<u,v> = conj(<v,u>)"),
    ("positivity", "<u,u> real and > 0 for u != 0"),
    ("self-linearity", "<pu,u> = p<u,u>"),
];

/// Evaluates every identity on `samples` pseudo-random inputs `(p, q, u, v)`.
/// The first nonzero residual aborts with the identity name and its witness.
pub fn verify_inner_identities(module: &OModule, samples: usize, seed: u64) -> Result<IdentityReport> {
    let gram_present = module.gram().is_some();
    if !gram_present {
        return Err(Error::MissingGram);
    }
    let mut sampler = Sampler::new(seed);
    let inputs: Vec<_> = (0..samples)
        .map(|_| {
            let p = sampler.octonion();
            let q = sampler.octonion();
            let u = sampler.nonzero_vector(module.dim());
            let v = sampler.vector(module.dim());
            (p, q, u, v)
        })
        .collect();

    let mut identities: Vec<IdentityResidual> = IDENTITIES
        .iter()
        .map(|&(name, formula)| IdentityResidual { name, formula, checks: 0, max_residual: Rational::zero() })
        .collect();
    let mut axioms: Vec<IdentityResidual> = AXIOMS
        .iter()
        .map(|&(name, formula)| IdentityResidual { name, formula, checks: 0, max_residual: Rational::zero() })
        .collect();

    for (index, (p, q, u, v)) in inputs.iter().enumerate() {
        let m = module;
        let ip = |x: &[Rational], y: &[Rational]| m.inner_raw(x, y);
        let sa = |p: &CDElement, x: &[Rational], y: &[Rational]| m.second_associator(p, x, y);
        let mul = cd_multiply;

        let pq = mul(p, q)?;
        let assoc_u = m.module_associator(p, q, u)?;
        let assoc_v = m.module_associator(p, q, v)?;
        let qv = m.act(q, v)?;
        let pu = m.act(p, u)?;
        let uv = ip(u, v)?;
        let vu = ip(v, u)?;

        let r1 = ip(&assoc_u, v)?.real_part() + ip(u, &assoc_v)?.real_part();
        let r2 = &sa(p, v, u)? + &sa(p, u, v)?;
        let rhs3 = &(&(&ip(&assoc_v, u)? - &octonion_associator(p, q, &vu)?) + &mul(p, &sa(q, v, u)?)?)
            + &sa(p, &qv, u)?;
        let r3 = &sa(&pq, v, u)? - &rhs3;
        let pv = m.act(p, v)?;
        let r4 = &ip(u, &pv)? - &(&mul(&uv, &p.conjugate())? + &sa(p, u, v)?);
        let rhs5 = &(&mul(&mul(p, &uv)?, &q.conjugate())? + &sa(&pq, u, v)?) + &ip(&assoc_v, u)?;
        let r5 = &ip(&pu, &qv)? - &rhs5;

        let residuals = [r1.clone() * r1, r2.norm_sq(), r3.norm_sq(), r4.norm_sq(), r5.norm_sq()];
        for (slot, residual) in identities.iter_mut().zip(residuals) {
            slot.checks += 1;
            if !residual.is_zero() {
                return Err(Error::AxiomViolation {
                    identity: format!("{}: {}", slot.name, slot.formula),
                    witness: witness(index, p, q, u, v),
                });
            }
        }

        let para = sa(p, u, v)?.real_part();
        let herm = (&uv - &vu.conjugate()).norm_sq();
        let uu = ip(u, u)?;
        let positive = uu.is_real() && uu.real_part() > Rational::zero();
        let selfl = (&ip(&pu, u)? - &mul(p, &uu)?).norm_sq();
        let checks = [para.clone() * para, herm, Rational::from_integer((!positive as i64).into()), selfl];
        for (slot, residual) in axioms.iter_mut().zip(checks) {
            slot.checks += 1;
            if !residual.is_zero() {
                return Err(Error::AxiomViolation {
                    identity: format!("{}: {}", slot.name, slot.formula),
                    witness: witness(index, p, q, u, v),
                });
            }
        }
    }
    Ok(IdentityReport { seed, samples, identities, axioms })
}

fn witness(index: usize, p: &CDElement, q: &CDElement, u: &[Rational], v: &[Rational]) -> String {
    let fmt = |x: &[Rational]| x.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
    format!("sample {index}: p = {p}, q = {q}, u = [{}], v = [{}]", fmt(u), fmt(v))
}
