//! Builtin names and literals accepted on the command line.

use std::path::Path;

use cdhilbert::anmodule::{weak_associative_basis, AnModule};
use cdhilbert::cd::parse_element;
use cdhilbert::json::ModuleJson;
use cdhilbert::parseval::o2;
use cdhilbert::sample::Sampler;
use cdhilbert::rational::int;
use cdhilbert::{CanonicalModule, Error, OModule, Result, ScaledVector};

/// A module named on the command line.
pub enum Target {
    Canonical(CanonicalModule, OModule),
    An(AnModule),
    File(OModule),
}

impl Target {
    pub fn module(&self) -> Result<&OModule> {
        match self {
            Target::Canonical(_, m) | Target::File(m) => Ok(m),
            Target::An(a) => a.module(),
        }
    }
}

/// `O`, `Obar`, `O^a+Obar^b`, `sedenion`, `A4`..`A8`, or a path to a module JSON file.
pub fn parse_target(name: &str) -> Result<Target> {
    if name == "sedenion" {
        return Ok(Target::An(AnModule::new(4)?));
    }
    if let Some(level) = name.strip_prefix('A').and_then(|n| n.parse::<u32>().ok()) {
        return Ok(Target::An(AnModule::new(level)?));
    }
    if let Some(c) = parse_canonical(name) {
        return Ok(Target::Canonical(c, c.module()));
    }
    let path = Path::new(name);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{name}: {e}")))?;
        return Ok(Target::File(ModuleJson::from_str(&text)?.to_module()?));
    }
    Err(Error::Parse(format!("unknown module {name:?}")))
}

fn parse_canonical(name: &str) -> Option<CanonicalModule> {
    let (mut regular, mut conjugate) = (0, 0);
    for term in name.split('+') {
        let (base, power) = match term.split_once('^') {
            Some((b, p)) => (b, p.parse::<usize>().ok()?),
            None => (term, 1),
        };
        match base {
            "O" => regular += power,
            "Obar" => conjugate += power,
            _ => return None,
        }
    }
    (regular + conjugate > 0).then(|| CanonicalModule::new(regular, conjugate))
}

/// `example-4.3`, `x4x5` and `standard` live in `O^2`; `canonical` is the
/// summand basis of `O^a+Obar^b` or the weak-associative basis of `A_n`.
pub fn parse_basis(name: &str, target: &Target) -> Result<Vec<ScaledVector>> {
    let need_o2 = |basis: Vec<ScaledVector>| {
        let dim = target.module()?.dim();
        if dim != 16 {
            return Err(Error::Precondition(format!("basis {name:?} needs a 16-dimensional module, got {dim}")));
        }
        Ok(basis)
    };
    match name {
        "example-4.3" => need_o2(o2::four_vector_basis()),
        "x4x5" => need_o2(o2::two_vector_basis()),
        "standard" => need_o2(o2::standard_basis()),
        "canonical" => match target {
            Target::Canonical(c, _) => Ok((0..c.regular + c.conjugate)
                .map(|k| {
                    let mut coords = vec![int(0); c.dim()];
                    coords[8 * k] = int(1);
                    ScaledVector::unit(coords)
                })
                .collect()),
            Target::An(a) => weak_associative_basis(a.level()),
            Target::File(_) => Err(Error::Precondition("basis \"canonical\" needs a builtin module".into())),
        },
        _ => Err(Error::Parse(format!("unknown basis {name:?}"))),
    }
}

/// `random`, a tuple of octonions `(1, e3, ...)` with one entry per summand,
/// or a single element literal filling the whole module.
pub fn parse_vector(text: &str, dim: usize, seed: u64) -> Result<ScaledVector> {
    let text = text.trim();
    if text == "random" {
        return Ok(ScaledVector::unit(Sampler::new(seed).vector(dim)));
    }
    if let Some(inner) = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() * 8 != dim {
            return Err(Error::Parse(format!(
                "tuple has {} entries, module needs {}",
                parts.len(),
                dim / 8
            )));
        }
        let mut coords = Vec::with_capacity(dim);
        for part in parts {
            coords.extend(parse_element(part, Some(3))?.into_coeffs());
        }
        return Ok(ScaledVector::unit(coords));
    }
    if !dim.is_power_of_two() {
        return Err(Error::Parse(format!("element literal cannot fill a module of dimension {dim}")));
    }
    let level = dim.trailing_zeros();
    Ok(ScaledVector::unit(parse_element(text, Some(level))?.into_coeffs()))
}
