//! JSON interchange formats. Rationals are written as strings (`"3/4"`).

use serde::{Deserialize, Serialize};

use crate::cd::CDElement;
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::omodule::{CanonicalModule, OModule};
use crate::parseval::BesselReport;
use crate::rational::{parse_rational, Rational};

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

fn rationals(values: &[String]) -> Result<Vec<Rational>> {
    values.iter().map(|s| parse_rational(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub level: u32,
    pub coeffs: Vec<String>,
}

impl From<&CDElement> for ElementJson {
    fn from(x: &CDElement) -> Self {
        ElementJson { level: x.level(), coeffs: strings(x.coeffs()) }
    }
}

impl ElementJson {
    pub fn to_element(&self) -> Result<CDElement> {
        CDElement::from_coeffs(self.level, rationals(&self.coeffs)?)
    }
}

/// A module as seven row-major action matrices and an optional list of
/// eight gram matrices `B_0..B_7`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub dim: usize,
    pub action: Vec<Vec<String>>,
    #[serde(default)]
    pub gram: Option<Vec<Vec<String>>>,
}

fn matrix(dim: usize, flat: &[String]) -> Result<RatMatrix> {
    if flat.len() != dim * dim {
        return Err(Error::DimensionMismatch { expected: dim * dim, actual: flat.len() });
    }
    RatMatrix::from_vec(dim, dim, rationals(flat)?)
}

impl From<&OModule> for ModuleJson {
    fn from(m: &OModule) -> Self {
        ModuleJson {
            dim: m.dim(),
            action: m.actions().iter().map(|a| strings(a.entries())).collect(),
            gram: m.gram().map(|g| g.iter().map(|b| strings(b.entries())).collect()),
        }
    }
}

impl ModuleJson {
    /// Parses and runs the full axiom check.
    pub fn to_module(&self) -> Result<OModule> {
        if self.action.len() != 7 {
            return Err(Error::Parse(format!("expected 7 action matrices, found {}", self.action.len())));
        }
        let action = self.action.iter().map(|a| matrix(self.dim, a)).collect::<Result<Vec<_>>>()?;
        let gram = match &self.gram {
            None => None,
            Some(g) if g.len() != 8 => {
                return Err(Error::Parse(format!("expected 8 gram matrices, found {}", g.len())))
            }
            Some(g) => Some(g.iter().map(|b| matrix(self.dim, b)).collect::<Result<Vec<_>>>()?),
        };
        OModule::new(self.dim, action, gram)
    }

    pub fn from_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalJson {
    pub regular: usize,
    pub conjugate: usize,
}

impl From<CanonicalModule> for CanonicalJson {
    fn from(c: CanonicalModule) -> Self {
        CanonicalJson { regular: c.regular, conjugate: c.conjugate }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BesselJson {
    pub norm_sq: String,
    pub coeff_sum: String,
    pub residual_norm_sq: String,
    pub correction: String,
    pub identity_holds: bool,
}

impl From<&BesselReport> for BesselJson {
    fn from(r: &BesselReport) -> Self {
        BesselJson {
            norm_sq: r.norm_sq_x.to_string(),
            coeff_sum: r.coeff_sum.to_string(),
            residual_norm_sq: r.residual_norm_sq.to_string(),
            correction: r.correction.to_string(),
            identity_holds: r.balanced,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cd::parse_element;

    #[test]
    fn element_round_trip() {
        let x = parse_element("1/2 - 3e5", Some(3)).unwrap();
        let j = ElementJson::from(&x);
        assert_eq!(j.coeffs[0], "1/2");
        assert_eq!(j.coeffs[5], "-3");
        let text = serde_json::to_string(&j).unwrap();
        let back: ElementJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_element().unwrap(), x);
    }

    #[test]
    fn module_round_trip() {
        let m = CanonicalModule::new(1, 1).module();
        let j = ModuleJson::from(&m);
        assert_eq!(j.action.len(), 7);
        assert_eq!(j.gram.as_ref().unwrap().len(), 8);
        let text = serde_json::to_string(&j).unwrap();
        let back = ModuleJson::from_str(&text).unwrap().to_module().unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn module_without_gram() {
        let m = CanonicalModule::new(1, 0).module();
        let mut j = ModuleJson::from(&m);
        j.gram = None;
        let back = j.to_module().unwrap();
        assert!(back.gram().is_none());
    }

    #[test]
    fn malformed_modules_are_rejected() {
        let m = CanonicalModule::new(1, 0).module();
        let mut j = ModuleJson::from(&m);
        j.action.pop();
        assert!(matches!(j.to_module(), Err(Error::Parse(_))));
        let mut j = ModuleJson::from(&m);
        j.action[0].pop();
        assert!(matches!(j.to_module(), Err(Error::DimensionMismatch { .. })));
        assert!(ModuleJson::from_str("{").is_err());
    }
}
