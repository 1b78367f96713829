//! Report shapes shared by the command line tool and the C interface.
//!
//! Every struct here serializes with stable key order, and every builder
//! walks its inputs in a fixed order, so identical invocations render
//! byte-identical output. Counts are u128 to match the enumeration caps;
//! augmentation numbers are rendered as exact rational strings.

use crate::algebra::fq::Fq;
use crate::algebra::laurent::LaurentPoly;
use crate::aug::{aug_number, brute_count, ruling_count, variety_dim};
use crate::dga::Dga;
use crate::error::{Error, Result};
use crate::front::{FrontDiagram, FrontEvent};
use crate::maslov::{grading_moduli, MaslovPotential};
use crate::mcs::aform::{count_a_forms, AForm};
use crate::mcs::srform::SrForm;
use crate::rulings::{ruling_polynomial, ruling_stats, NormalRuling};
use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct EventReport {
    pub tag: &'static str,
    pub pos: usize,
}

#[derive(Serialize)]
pub struct ParseReport {
    pub events: Vec<EventReport>,
    pub components: usize,
    pub rotations: Vec<i64>,
    pub rotation_gcd: i64,
    pub offsets: Vec<i64>,
    pub marked_cusps: Vec<usize>,
    pub gradings: Vec<i64>,
}

pub fn parse_report(d: &FrontDiagram) -> ParseReport {
    let events = d
        .events()
        .iter()
        .map(|&e| EventReport {
            tag: match e {
                FrontEvent::LeftCusp(_) => "L",
                FrontEvent::Crossing(_) => "X",
                FrontEvent::RightCusp(_) => "R",
            },
            pos: e.pos(),
        })
        .collect();
    ParseReport {
        events,
        components: d.n_components(),
        rotations: d.rotations().to_vec(),
        rotation_gcd: d.rotation_gcd(),
        offsets: d.offsets().to_vec(),
        marked_cusps: d.marked().to_vec(),
        gradings: grading_moduli(d),
    }
}

#[derive(Serialize)]
pub struct RulingReport {
    pub mask: u64,
    pub switches: Vec<usize>,
    pub j: i64,
    pub r: i64,
    pub graded_returns: usize,
    pub graded_departures: usize,
}

#[derive(Serialize)]
pub struct RulingsReport {
    pub m: i64,
    pub count: usize,
    pub rulings: Vec<RulingReport>,
    pub polynomial: LaurentPoly,
}

pub fn rulings_report(d: &FrontDiagram, mu: &MaslovPotential, m: i64) -> Result<RulingsReport> {
    let rulings = crate::rulings::enumerate_rulings(d, mu, m)?;
    let rows = rulings
        .iter()
        .map(|r| {
            let st = ruling_stats(d, r, m);
            RulingReport {
                mask: r.mask,
                switches: r.switches.clone(),
                j: st.j,
                r: st.r,
                graded_returns: st.graded_returns,
                graded_departures: st.graded_departures,
            }
        })
        .collect();
    Ok(RulingsReport {
        m,
        count: rulings.len(),
        rulings: rows,
        polynomial: ruling_polynomial(d, mu, m)?,
    })
}

#[derive(Serialize)]
pub struct GenReport {
    pub name: String,
    pub kind: String,
    pub degree: i64,
    pub differential: String,
}

#[derive(Serialize)]
pub struct DgaReport {
    pub components: usize,
    pub modulus: i64,
    pub generators: Vec<GenReport>,
}

pub fn dga_report(dga: &Dga) -> DgaReport {
    let generators = dga
        .gens
        .iter()
        .enumerate()
        .map(|(g, info)| GenReport {
            name: info.name.clone(),
            kind: info.kind.to_string(),
            degree: info.degree,
            differential: dga.render(dga.differential(g)),
        })
        .collect();
    DgaReport {
        components: dga.front.n_components(),
        modulus: dga.mu.modulus(),
        generators,
    }
}

/// None (empty variety) renders as the string "Empty".
pub fn dim_value(dim: Option<i64>) -> Value {
    match dim {
        Some(v) => v.into(),
        None => "Empty".into(),
    }
}

#[derive(Serialize)]
pub struct AugRow {
    pub m: i64,
    pub q: u64,
    pub method: String,
    pub count: u128,
    pub dim: Value,
    pub aug_number: String,
}

pub fn aug_row(
    d: &FrontDiagram,
    dga: &Dga,
    mu: &MaslovPotential,
    m: i64,
    q: u64,
    method: &str,
    cap: u128,
) -> Result<AugRow> {
    let count = match method {
        "brute" => brute_count(dga, m, q, cap)?,
        "mcs" => count_a_forms(d, mu, m, q, cap)?,
        "ruling" => ruling_count(d, mu, m, q)?,
        other => return Err(Error::MethodUnavailable(other.into())),
    };
    let dim = variety_dim(d, mu, m)?;
    let number = aug_number(count, dim, q)
        .ok_or_else(|| Error::MethodUnavailable("normalization of a nonzero count with no rulings".into()))?;
    Ok(AugRow {
        m,
        q,
        method: method.into(),
        count,
        dim: dim_value(dim),
        aug_number: number.to_string(),
    })
}

#[derive(Serialize)]
pub struct VerifyCounts {
    pub brute: u128,
    pub mcs: u128,
    pub ruling: u128,
}

#[derive(Serialize)]
pub struct VerifyRow {
    pub m: i64,
    pub q: u64,
    pub counts: VerifyCounts,
    pub dim: Value,
    pub aug_number: String,
    pub rhs: String,
    pub equal: bool,
}

pub fn verify_row(
    d: &FrontDiagram,
    dga: &Dga,
    mu: &MaslovPotential,
    m: i64,
    q: u64,
    cap: u128,
) -> Result<VerifyRow> {
    let brute = brute_count(dga, m, q, cap)?;
    let mcs = count_a_forms(d, mu, m, q, cap)?;
    let ruling = ruling_count(d, mu, m, q)?;
    let dim = variety_dim(d, mu, m)?;
    let number = aug_number(brute, dim, q)
        .ok_or_else(|| Error::MethodUnavailable("normalization of a nonzero count with no rulings".into()))?;
    let rp = ruling_polynomial(d, mu, m)?;
    let rhs = crate::algebra::rhs::rhs_exact(&rp, d.n_components() as i64, q)?;
    let equal = brute == mcs && mcs == ruling && number == rhs;
    Ok(VerifyRow {
        m,
        q,
        counts: VerifyCounts { brute, mcs, ruling },
        dim: dim_value(dim),
        aug_number: number.to_string(),
        rhs: rhs.to_string(),
        equal,
    })
}

#[derive(Serialize)]
pub struct CountRow {
    pub m: i64,
    pub q: u64,
    pub count: u128,
}

#[derive(Serialize)]
pub struct MarkReport {
    pub slot: usize,
    pub top: usize,
    pub bottom: usize,
    pub coeff: u32,
}

#[derive(Serialize)]
pub struct McsDump {
    pub form: &'static str,
    pub marks: Vec<MarkReport>,
    pub marked_values: Vec<u32>,
}

fn marks_from(d: &FrontDiagram, maps: &[&std::collections::BTreeMap<usize, crate::algebra::fq::FqElem>]) -> Vec<MarkReport> {
    let mut out: Vec<MarkReport> = maps
        .iter()
        .flat_map(|m| m.iter())
        .filter(|(_, v)| !v.is_zero())
        .map(|(&ev, v)| {
            let k = d.events()[ev].pos();
            MarkReport { slot: ev, top: k, bottom: k + 1, coeff: v.0 }
        })
        .collect();
    out.sort_by_key(|m| m.slot);
    out
}

pub fn sr_dump(d: &FrontDiagram, sr: &SrForm, t_values: &[crate::algebra::fq::FqElem]) -> McsDump {
    McsDump {
        form: "sr",
        marks: marks_from(d, &[&sr.switch_coeffs, &sr.return_coeffs, &sr.cusp_coeffs]),
        marked_values: t_values.iter().map(|t| t.0).collect(),
    }
}

pub fn a_dump(d: &FrontDiagram, a: &AForm) -> McsDump {
    McsDump {
        form: "a",
        marks: marks_from(d, &[&a.lambda, &a.cusp_lambda]),
        marked_values: a.t_values.iter().map(|t| t.0).collect(),
    }
}

#[derive(Serialize)]
pub struct MoveReport {
    #[serde(rename = "move")]
    pub kind: &'static str,
    pub tangle: String,
}

fn mv(kind: &'static str, tangle: &str) -> MoveReport {
    MoveReport { kind, tangle: tangle.into() }
}

/// Audit trace of one sweep of the SR-to-A rewrite: the slide bookkeeping
/// performed at each crossing, in event order, plus the terminal cleanup.
pub fn phi_trace(d: &FrontDiagram, ruling: &NormalRuling, m: i64) -> Vec<MoveReport> {
    use crate::rulings::CrossingClass;
    let mut out = Vec::new();
    for (ci, &ev) in d.crossings().iter().enumerate() {
        let k = d.events()[ev].pos();
        let tangle = format!("X {k} @{ev}");
        let graded = match ruling.classes[ci] {
            CrossingClass::Switch(_) => true,
            CrossingClass::Return { graded, .. } | CrossingClass::Departure { graded } => graded,
            CrossingClass::Pass => false,
        };
        if !graded {
            out.push(mv("slide-past-crossing", &tangle));
            continue;
        }
        out.push(mv("absorb-leading-slide", &tangle));
        out.push(mv("factor-collection", &tangle));
        out.push(mv("record-pair-coefficient", &tangle));
        out.push(mv("remove-pair-slide", &tangle));
        out.push(mv("slide-past-crossing", &tangle));
        match ruling.classes[ci] {
            CrossingClass::Switch(_) => out.push(mv("absorb-switch-slides", &tangle)),
            CrossingClass::Return { graded: true, .. } => {
                out.push(mv("absorb-return-slides", &tangle))
            }
            _ => {}
        }
    }
    terminal_moves(d, m, &mut out);
    out
}

/// Audit trace of one sweep of the A-to-SR rewrite; the crossing roles come
/// from the ruling the sweep lands on.
pub fn psi_trace(d: &FrontDiagram, ruling: &NormalRuling, m: i64) -> Vec<MoveReport> {
    use crate::rulings::CrossingClass;
    let mut out = Vec::new();
    for (ci, &ev) in d.crossings().iter().enumerate() {
        let k = d.events()[ev].pos();
        let tangle = format!("X {k} @{ev}");
        let graded = match ruling.classes[ci] {
            CrossingClass::Switch(_) => true,
            CrossingClass::Return { graded, .. } | CrossingClass::Departure { graded } => graded,
            CrossingClass::Pass => false,
        };
        if !graded {
            out.push(mv("slide-past-crossing", &tangle));
            continue;
        }
        out.push(mv("absorb-leading-slide", &tangle));
        out.push(mv("factor-collection", &tangle));
        out.push(mv("remove-pair-slide", &tangle));
        out.push(mv("slide-past-crossing", &tangle));
        match ruling.classes[ci] {
            CrossingClass::Switch(_) => out.push(mv("install-switch-slides", &tangle)),
            CrossingClass::Return { graded: true, .. } => out.push(mv("record-return-slide", &tangle)),
            CrossingClass::Departure { graded: true } => out.push(mv("record-departure", &tangle)),
            _ => {}
        }
    }
    terminal_moves(d, m, &mut out);
    out
}

fn terminal_moves(d: &FrontDiagram, m: i64, out: &mut Vec<MoveReport>) {
    let tangle = format!("right cusps @{}..", d.right_cusps().first().copied().unwrap_or(0));
    if m == 1 {
        out.push(mv("merge-cusp-slides", &tangle));
        out.push(mv("record-cusp-coefficients", &tangle));
    } else {
        out.push(mv("erase-terminal-slides", &tangle));
    }
}

#[derive(Serialize)]
pub struct TransformReport {
    pub m: i64,
    pub q: u64,
    pub ruling: u64,
    pub before: McsDump,
    pub after: McsDump,
    pub moves: Vec<MoveReport>,
}

#[derive(Serialize)]
pub struct PartitionClass {
    pub mask: u64,
    pub j: i64,
    pub r: i64,
    pub size: usize,
    pub expected: u128,
}

#[derive(Serialize)]
pub struct PartitionRow {
    pub m: i64,
    pub q: u64,
    pub classes: Vec<PartitionClass>,
    pub union_size: usize,
    pub brute: u128,
    pub disjoint: bool,
    pub covers: bool,
    pub equal: bool,
}

/// Structured error payload; the kind is a stable machine-readable slug.
pub fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::Syntax { .. } => "syntax",
        Error::Shape(_) => "shape",
        Error::Mark(_) => "mark",
        Error::NotPrime(_) => "not-prime",
        Error::DegreeZero => "degree-zero",
        Error::DivByZero => "div-by-zero",
        Error::Parity { .. } => "parity",
        Error::NegativeExponent(_) => "negative-exponent",
        Error::Grading { .. } => "grading",
        Error::Scale { .. } => "scale",
        Error::MethodUnavailable(_) => "method-unavailable",
        Error::ObstructionAt(_) => "obstruction",
        Error::NotAForm(_) => "not-a-form",
        Error::NotSRForm(_) => "not-sr-form",
        Error::NotAugmentation => "not-augmentation",
        Error::NotASolution => "not-a-solution",
        Error::LoopEdge => "loop-edge",
    };
    serde_json::json!({ "error": { "kind": kind, "message": e.to_string() } })
}

/// Aligned-text rendering of any report value, for human eyes. Arrays of
/// flat objects become column tables; everything else becomes an indented
/// key/value listing.
pub fn render_table(v: &Value) -> String {
    let mut out = String::new();
    render_value(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(" ")))
        }
        Value::Array(a)
            if a.iter().all(|x| {
                x.as_array().is_some_and(|p| p.iter().all(|y| !y.is_object() && !y.is_array()))
            }) =>
        {
            Some(
                a.iter()
                    .filter_map(|x| scalar(x))
                    .collect::<Vec<_>>()
                    .join(" "),
            )
        }
        _ => None,
    }
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                if let Some(s) = scalar(val) {
                    out.push_str(&format!("{pad}{k}: {s}\n"));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_value(val, indent + 2, out);
                }
            }
        }
        Value::Array(items) if items.iter().all(|x| x.is_object()) && !items.is_empty() => {
            let flat = items.iter().all(|x| {
                x.as_object().is_some_and(|o| o.values().all(|val| scalar(val).is_some()))
            });
            if flat {
                render_columns(items, indent, out);
            } else {
                for (i, item) in items.iter().enumerate() {
                    out.push_str(&format!("{pad}[{i}]\n"));
                    render_value(item, indent + 2, out);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if let Some(s) = scalar(item) {
                    out.push_str(&format!("{pad}{s}\n"));
                } else {
                    render_value(item, indent, out);
                }
            }
        }
        other => {
            if let Some(s) = scalar(other) {
                out.push_str(&format!("{pad}{s}\n"));
            }
        }
    }
}

fn render_columns(items: &[Value], indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    let keys: Vec<String> = items[0]
        .as_object()
        .map(|o| o.keys().cloned().collect())
        .unwrap_or_default();
    let mut rows: Vec<Vec<String>> = vec![keys.clone()];
    for item in items {
        let o = item.as_object().expect("flat table rows are objects");
        rows.push(
            keys.iter()
                .map(|k| o.get(k).and_then(|v| scalar(v)).unwrap_or_else(|| "-".into()))
                .collect(),
        );
    }
    let widths: Vec<usize> = (0..keys.len())
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    for row in rows {
        let line: Vec<String> =
            row.iter().zip(&widths).map(|(cell, w)| format!("{cell:<w$}")).collect();
        out.push_str(&format!("{pad}{}\n", line.join("  ").trim_end()));
    }
}

/// The per-ruling class size (q-1)^(j+c) q^r.
pub fn class_size(field: &Fq, j_plus_c: u32, r: u32) -> u128 {
    let q = field.q() as u128;
    (q - 1).pow(j_plus_c) * q.pow(r)
}
