//! One function per subcommand. Each returns text, JSON and an exit code.

use std::fmt::Write as _;

use cdhilbert::anmodule::an_nucleus_bases;
use cdhilbert::cd::table::EpsilonTable;
use cdhilbert::cd::{basis_product, find_zero_divisor, CDElement};
use cdhilbert::config::Limits;
use cdhilbert::json::{BesselJson, CanonicalJson, ElementJson};
use cdhilbert::omodule::verify_inner_identities;
use cdhilbert::rational::int;
use cdhilbert::parseval::{bessel_report, is_maximal, is_orthonormal_system, is_weak_associative, parseval_expand};
use cdhilbert::{Error, Rational, Result, ScaledOctonion};
use serde_json::{json, Value};

use crate::inputs::{parse_basis, parse_target, parse_vector, Target};

pub const HOLDS: u8 = 0;
pub const FAILS: u8 = 1;

pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

fn symbol((sign, k): (i8, usize)) -> String {
    let unit = if k == 0 { "1".to_string() } else { format!("e{k}") };
    if sign < 0 {
        format!("-{unit}")
    } else {
        unit
    }
}

pub fn mult_table(level: u32, range: Option<(usize, usize)>) -> Result<Outcome> {
    Limits::default().check_level(level)?;
    let n = 1usize << level;
    let (start, end) = range.unwrap_or((0, n));
    if start >= end || end > n {
        return Err(Error::Precondition(format!("range {start}..{end} is not inside 0..{n}")));
    }
    let rows: Vec<Vec<String>> =
        (start..end).map(|i| (start..end).map(|j| symbol(basis_product(level, i, j))).collect()).collect();
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut text = String::new();
    for row in &rows {
        let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        writeln!(text, "{}", cells.join(" ")).unwrap();
    }
    let mut agreement = Value::Null;
    if level == 3 {
        let table = EpsilonTable::global();
        let pairs = (end - start) * (end - start);
        for i in start..end {
            for j in start..end {
                if table.product(i, j) != basis_product(3, i, j) {
                    return Err(Error::Internal(format!("e{i} e{j}: epsilon table and doubling disagree")));
                }
            }
        }
        writeln!(text, "agreement: epsilon table and doubling match on {pairs}/{pairs} pairs").unwrap();
        agreement = json!(true);
    }
    let json = json!({
        "level": level,
        "indices": (start..end).collect::<Vec<_>>(),
        "rows": rows,
        "agreement": agreement,
    });
    Ok(Outcome { text, json, code: HOLDS })
}

pub fn verify(name: &str, samples: usize, seed: u64) -> Result<Outcome> {
    let loaded = parse_target(name);
    let report = match loaded {
        Ok(ref target) => verify_inner_identities(target.module()?, samples, seed),
        Err(e) => Err(e),
    };
    match report {
        Ok(report) => {
            let rows = |list: &[cdhilbert::omodule::IdentityResidual]| -> Vec<Value> {
                list.iter()
                    .map(|r| {
                        json!({
                            "name": r.name,
                            "formula": r.formula,
                            "checks": r.checks,
                            "max_residual": r.max_residual.to_string(),
                        })
                    })
                    .collect()
            };
            let mut text = format!("module {name}: {samples} samples, seed {seed:#x}\n");
            for r in report.identities.iter().chain(&report.axioms) {
                writeln!(text, "PASS {:<15} {:>5} checks  residual {}  {}", r.name, r.checks, r.max_residual, r.formula)
                    .unwrap();
            }
            writeln!(text, "all {} identity checks vanish exactly", report.total_checks()).unwrap();
            let json = json!({
                "module": name,
                "seed": seed,
                "samples": samples,
                "holds": true,
                "identities": rows(&report.identities),
                "axioms": rows(&report.axioms),
                "failure": Value::Null,
            });
            Ok(Outcome { text, json, code: HOLDS })
        }
        Err(Error::AxiomViolation { identity, witness }) => {
            let text = format!("module {name}\nFAIL {identity}\nwitness: {witness}\n");
            let json = json!({
                "module": name,
                "seed": seed,
                "samples": samples,
                "holds": false,
                "failure": { "identity": identity, "witness": witness },
            });
            Ok(Outcome { text, json, code: FAILS })
        }
        Err(e) => Err(e),
    }
}

pub fn decompose(name: &str) -> Result<Outcome> {
    let target = parse_target(name)?;
    let module = target.module()?;
    let dec = module.decompose()?;
    module.verify_isomorphism(&dec)?;
    let mut text = format!("module {name}: dimension {}\n", module.dim());
    writeln!(text, "regular summands   {}", dec.regular).unwrap();
    writeln!(text, "conjugate summands {}", dec.conjugate).unwrap();
    writeln!(text, "summand weights    {}", strings(&dec.summand_scales).join(" ")).unwrap();
    writeln!(text, "isomorphism intertwines all seven actions and carries the inner product: verified").unwrap();
    let mut json = serde_json::to_value(CanonicalJson::from(dec.canonical())).expect("plain struct");
    json["summand_scales"] = json!(strings(&dec.summand_scales));
    json["to_canonical"] = json!(strings(dec.to_canonical.entries()));
    json["from_canonical"] = json!(strings(dec.from_canonical.entries()));
    Ok(Outcome { text, json, code: HOLDS })
}

fn render_coefficient(c: &ScaledOctonion) -> String {
    match c.exact() {
        Some(v) => v.to_string(),
        None if c.is_zero() => "0".to_string(),
        None => format!("({}) sqrt({})", c.value.scale(&c.scale.recip()), c.scale),
    }
}

fn coefficient_json(c: &ScaledOctonion) -> Value {
    json!({ "value": ElementJson::from(&c.value), "scale": c.scale.to_string() })
}

pub fn parseval(name: &str, x: &str, basis: &str, seed: u64) -> Result<Outcome> {
    let target = parse_target(name)?;
    let module = target.module()?;
    let system = parse_basis(basis, &target)?;
    let x = parse_vector(x, module.dim(), seed)?;
    let orthonormal = is_orthonormal_system(module, &system)?;
    if let Some((a, b)) = orthonormal.witness {
        return Err(Error::Precondition(format!("basis {basis:?} is not orthonormal at pair ({a}, {b})")));
    }
    let maximal = is_maximal(module, &system)?;
    let weak = is_weak_associative(module, &system)?;
    let report = bessel_report(module, &x, &system)?;
    let holds = maximal && report.residual_norm_sq == int(0) && report.coeff_sum == report.norm_sq_x;

    let mut text = format!("module {name}, basis {basis} ({} vectors)\n", system.len());
    writeln!(text, "orthonormal        yes").unwrap();
    writeln!(text, "maximal            {}", if maximal { "yes" } else { "no" }).unwrap();
    match weak.witness {
        None => writeln!(text, "weak associative   yes").unwrap(),
        Some((i, n, m)) => {
            writeln!(text, "weak associative   no, [e{i}, x{}, x{}] != 0", n + 1, m + 1).unwrap()
        }
    }
    writeln!(text, "norm_sq            {}", report.norm_sq_x).unwrap();
    writeln!(text, "coeff_sum          {}", report.coeff_sum).unwrap();
    writeln!(text, "residual_norm_sq   {}", report.residual_norm_sq).unwrap();
    writeln!(text, "correction         {}", report.correction).unwrap();
    writeln!(
        text,
        "bessel identity    {} = {} + {} - {} holds",
        report.norm_sq_x, report.coeff_sum, report.residual_norm_sq, report.correction
    )
    .unwrap();
    writeln!(text, "parseval           {}", if holds { "holds" } else { "fails" }).unwrap();

    let mut json = serde_json::to_value(BesselJson::from(&report)).expect("plain struct");
    json["maximal"] = json!(maximal);
    json["weak_associative"] = json!(weak.holds);
    json["parseval_holds"] = json!(holds);
    Ok(Outcome { text, json, code: if holds { HOLDS } else { FAILS } })
}

pub fn expand(name: &str, x: &str, basis: &str, seed: u64) -> Result<Outcome> {
    let target = parse_target(name)?;
    let module = target.module()?;
    let system = parse_basis(basis, &target)?;
    let x = parse_vector(x, module.dim(), seed)?;
    let exp = parseval_expand(module, &x, &system)?;
    let mut text = format!("module {name}, basis {basis}\n");
    for (k, c) in exp.coefficients.iter().enumerate() {
        writeln!(text, "<x, x{}> = {}", k + 1, render_coefficient(c)).unwrap();
    }
    let residual = if exp.residual.is_zero() { "0".to_string() } else { strings(&exp.residual.coords).join(" ") };
    writeln!(text, "residual           {residual}").unwrap();
    writeln!(text, "norm_sq            {}", exp.norm_sq).unwrap();
    writeln!(text, "coeff_sum          {}", exp.coeff_sum).unwrap();
    writeln!(text, "parseval           {}", if exp.parseval_holds { "holds" } else { "fails" }).unwrap();
    let json = json!({
        "coefficients": exp.coefficients.iter().map(coefficient_json).collect::<Vec<_>>(),
        "residual": { "coords": strings(&exp.residual.coords), "scale": exp.residual.scale.to_string() },
        "norm_sq": exp.norm_sq.to_string(),
        "coeff_sum": exp.coeff_sum.to_string(),
        "parseval_holds": exp.parseval_holds,
    });
    Ok(Outcome { text, json, code: if exp.parseval_holds { HOLDS } else { FAILS } })
}

pub fn nucleus(name: &str) -> Result<Outcome> {
    let target = parse_target(name)?;
    let (regular, conjugate): (Vec<Vec<Rational>>, Vec<Vec<Rational>>) = match &target {
        Target::An(a) => {
            let (r, c) = an_nucleus_bases(a.level())?;
            (r.into_iter().map(CDElement::into_coeffs).collect(), c.into_iter().map(CDElement::into_coeffs).collect())
        }
        _ => {
            let m = target.module()?;
            (m.nucleus(), m.conj_nucleus())
        }
    };
    let render = |v: &Vec<Rational>| match CDElement::from_vec(v.clone()) {
        Ok(x) => x.to_string(),
        Err(_) => format!("[{}]", strings(v).join(", ")),
    };
    let mut text = format!("module {name}\n");
    let regular_list: Vec<String> = regular.iter().map(render).collect();
    let conjugate_list: Vec<String> = conjugate.iter().map(render).collect();
    writeln!(text, "nucleus ({}): {}", regular.len(), regular_list.join(" | ")).unwrap();
    writeln!(text, "conjugate nucleus ({}): {}", conjugate.len(), conjugate_list.join(" | ")).unwrap();
    let json = json!({
        "nucleus": regular.iter().map(|v| strings(v)).collect::<Vec<_>>(),
        "conj_nucleus": conjugate.iter().map(|v| strings(v)).collect::<Vec<_>>(),
    });
    Ok(Outcome { text, json, code: HOLDS })
}

pub fn zero_divisor(level: u32) -> Result<Outcome> {
    Limits::default().check_level(level)?;
    Ok(match find_zero_divisor(level) {
        Some((x, y)) => Outcome {
            text: format!("level {level}\nx = {x}\ny = {y}\nx y = 0\n"),
            json: json!({ "level": level, "found": true, "x": ElementJson::from(&x), "y": ElementJson::from(&y) }),
            code: HOLDS,
        },
        None => Outcome {
            text: format!("level {level}: no zero divisor, the algebra is a division algebra\n"),
            json: json!({ "level": level, "found": false }),
            code: FAILS,
        },
    })
}
