//! SR-form Morse complex sequences.
//!
//! An SR-form sequence compatible with a normal ruling keeps its handleslides
//! clustered at the switches and graded returns of the ruling (plus one per
//! right cusp when m = 1). A switch carries a slide on the crossing strands on
//! each side, coefficients r and -r^-1; a nested switch adds a slide on the
//! two companion strands with coefficient a r^-1 b^-1. A graded return
//! carries a slide on the crossing strands before the crossing, coefficient r
//! (possibly zero); an interlaced return adds a companion slide after it with
//! coefficient a r b^-1 or a^-1 r b, depending on which side the companions
//! sit. Here a and b are the unit entries of the running complex joining the
//! boundary strands of the two disks meeting at the crossing, read before the
//! cluster: a for the disk whose top strand is highest, b for the other.
//!
//! Away from the clusters every complex in the sequence is standard for the
//! ruling: the entry (i, j) is nonzero exactly when the ruling pairs i with j.
//! Validity reduces to one equation per right cusp. The pivot closing an
//! unmarked cusp must be -1; a marked cusp accepts any unit and assigns the
//! component's t value.

use std::collections::BTreeMap;

use crate::algebra::fq::{Fq, FqElem};
use crate::error::{Error, Result};
use crate::front::{FrontDiagram, FrontEvent};
use crate::mcs::complex::TriComplex;
use crate::rulings::{CrossingClass, NormalRuling, ReturnKind, SwitchKind};

/// Free coefficients of an SR-form sequence, keyed by event index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrForm {
    /// Unit coefficient of the leading slide at each switch.
    pub switch_coeffs: BTreeMap<usize, FqElem>,
    /// Coefficient of the slide before each m-graded return; zero if absent.
    pub return_coeffs: BTreeMap<usize, FqElem>,
    /// Coefficient of the slide before each right cusp, m = 1 only.
    pub cusp_coeffs: BTreeMap<usize, FqElem>,
}

/// Result of propagating an SR-form across the diagram.
pub struct SrRun {
    /// Complex entering each gap, 0 (empty) through n_events (empty).
    pub complexes: Vec<TriComplex>,
    /// Marked-point values, one per component.
    pub t_values: Vec<FqElem>,
}

/// The two companion strands at a nested or interlaced crossing, with the
/// coefficients a, b of the running complex joining each disk's boundary.
pub(crate) fn companions(
    cx: &TriComplex,
    pairing: &[usize],
    k: usize,
) -> (usize, usize, FqElem, FqElem) {
    let (a0, b0) = (pairing[k], pairing[k + 1]);
    let rho = |p: usize| match p {
        _ if p == k => a0,
        _ if p == k + 1 => b0,
        _ if p == a0 => k,
        _ => k + 1,
    };
    let mut quad = [k, k + 1, a0, b0];
    quad.sort_unstable();
    let alpha = quad[0];
    let beta = *quad.iter().find(|&&p| p != alpha && p != rho(alpha)).unwrap();
    let a = cx.get(alpha, rho(alpha));
    let b = cx.get(beta, rho(beta));
    (a0.min(b0), a0.max(b0), a, b)
}

/// Propagate the sequence. Fails with `NotASolution` when an unmarked cusp
/// pivot is not -1, and with `NotSRForm` on missing or zero switch
/// coefficients.
pub fn run_sr_form(
    d: &FrontDiagram,
    ruling: &NormalRuling,
    field: &Fq,
    m: i64,
    form: &SrForm,
) -> Result<SrRun> {
    let mut cx = TriComplex::empty();
    let mut complexes = Vec::with_capacity(d.n_events() + 1);
    complexes.push(cx.clone());
    let mut t_values = vec![FqElem::ZERO; d.n_components()];
    let mut ci = 0;
    for (e, &ev) in d.events().iter().enumerate() {
        match ev {
            FrontEvent::LeftCusp(k) => cx.left_cusp(k),
            FrontEvent::Crossing(k) => {
                let class = ruling.classes[ci];
                ci += 1;
                match class {
                    CrossingClass::Switch(kind) => {
                        let r = form
                            .switch_coeffs
                            .get(&e)
                            .copied()
                            .filter(|r| !r.is_zero())
                            .ok_or_else(|| {
                                Error::NotSRForm(format!(
                                    "switch at event {e} needs a unit coefficient"
                                ))
                            })?;
                        let r_inv = field.inv(r)?;
                        let companion = (kind != SwitchKind::S1).then(|| {
                            let (top, bottom, a, b) = companions(&cx, &ruling.pairing(e), k);
                            let b_inv = field.inv(b).expect("standard entries are units");
                            (top, bottom, field.mul(field.mul(a, r_inv), b_inv))
                        });
                        cx.handleslide(field, k, k + 1, r);
                        cx.crossing(k)?;
                        cx.handleslide(field, k, k + 1, field.neg(r_inv));
                        if let Some((top, bottom, coeff)) = companion {
                            cx.handleslide(field, top, bottom, coeff);
                        }
                    }
                    CrossingClass::Return { kind, graded: true } => {
                        let r = form.return_coeffs.get(&e).copied().unwrap_or(FqElem::ZERO);
                        let companion = (kind != ReturnKind::R1).then(|| {
                            let (top, bottom, a, b) = companions(&cx, &ruling.pairing(e), k);
                            let coeff = match kind {
                                ReturnKind::R2 => {
                                    let b_inv = field.inv(b).expect("standard entries are units");
                                    field.mul(field.mul(a, r), b_inv)
                                }
                                ReturnKind::R3 => {
                                    let a_inv = field.inv(a).expect("standard entries are units");
                                    field.mul(field.mul(a_inv, r), b)
                                }
                                ReturnKind::R1 => unreachable!(),
                            };
                            (top, bottom, coeff)
                        });
                        cx.handleslide(field, k, k + 1, r);
                        cx.crossing(k)?;
                        if let Some((top, bottom, coeff)) = companion {
                            cx.handleslide(field, top, bottom, coeff);
                        }
                    }
                    _ => cx.crossing(k)?,
                }
            }
            FrontEvent::RightCusp(k) => {
                if m == 1 {
                    let z = form.cusp_coeffs.get(&e).copied().unwrap_or(FqElem::ZERO);
                    cx.handleslide(field, k, k + 1, z);
                }
                let pivot = cx.right_cusp(field, k)?;
                if let Some(comp) = d.marked().iter().position(|&mk| mk == e) {
                    t_values[comp] = field.pow(field.neg(pivot), d.cusp_ell(e))?;
                } else if pivot != field.minus_one() {
                    return Err(Error::NotASolution);
                }
            }
        }
        complexes.push(cx.clone());
    }
    Ok(SrRun { complexes, t_values })
}

/// Events carrying free coefficients for this ruling, in odometer order:
/// switches (unit range), then graded returns, then cusps when m = 1.
fn free_slots(d: &FrontDiagram, ruling: &NormalRuling, m: i64) -> (Vec<usize>, Vec<usize>) {
    let mut switch_events = Vec::new();
    let mut wide_events = Vec::new();
    let mut ci = 0;
    for (e, &ev) in d.events().iter().enumerate() {
        match ev {
            FrontEvent::Crossing(_) => {
                match ruling.classes[ci] {
                    CrossingClass::Switch(_) => switch_events.push(e),
                    CrossingClass::Return { graded: true, .. } => wide_events.push(e),
                    _ => {}
                }
                ci += 1;
            }
            FrontEvent::RightCusp(_) if m == 1 => wide_events.push(e),
            _ => {}
        }
    }
    (switch_events, wide_events)
}

/// All valid SR-forms for one ruling, by direct search over coefficients.
pub fn enumerate_sr_forms(
    d: &FrontDiagram,
    ruling: &NormalRuling,
    field: &Fq,
    m: i64,
    cap: u128,
) -> Result<Vec<SrForm>> {
    let (switch_events, wide_events) = free_slots(d, ruling, m);
    let q = field.q() as u128;
    let space = (q - 1)
        .checked_pow(switch_events.len() as u32)
        .and_then(|s| s.checked_mul(q.pow(wide_events.len() as u32)))
        .ok_or(Error::Scale { space: u128::MAX, cap })?;
    if space > cap {
        return Err(Error::Scale { space, cap });
    }
    let units: Vec<FqElem> = field.units().collect();
    let elements: Vec<FqElem> = field.elements().collect();
    let mut digits = vec![0usize; switch_events.len() + wide_events.len()];
    let mut out = Vec::new();
    loop {
        let mut form = SrForm {
            switch_coeffs: BTreeMap::new(),
            return_coeffs: BTreeMap::new(),
            cusp_coeffs: BTreeMap::new(),
        };
        for (i, &e) in switch_events.iter().enumerate() {
            form.switch_coeffs.insert(e, units[digits[i]]);
        }
        for (i, &e) in wide_events.iter().enumerate() {
            let v = elements[digits[switch_events.len() + i]];
            if matches!(d.events()[e], FrontEvent::RightCusp(_)) {
                form.cusp_coeffs.insert(e, v);
            } else {
                form.return_coeffs.insert(e, v);
            }
        }
        match run_sr_form(d, ruling, field, m, &form) {
            Ok(_) => out.push(form),
            Err(Error::NotASolution) => {}
            Err(other) => return Err(other),
        }
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Ok(out);
            }
            digits[pos] += 1;
            let limit = if pos < switch_events.len() { units.len() } else { elements.len() };
            if digits[pos] < limit {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Coordinates of a form in the solution set of the ruling's disk equations:
/// t values from the marked pivots, one unit per switch in crossing order
/// (negated at S3 switches), and the free return and cusp coefficients.
pub fn lambda_point(
    d: &FrontDiagram,
    ruling: &NormalRuling,
    field: &Fq,
    m: i64,
    form: &SrForm,
) -> Result<(Vec<FqElem>, Vec<FqElem>, Vec<FqElem>)> {
    let run = run_sr_form(d, ruling, field, m, form)?;
    let mut xvals = Vec::new();
    let mut ci = 0;
    for (e, &ev) in d.events().iter().enumerate() {
        if matches!(ev, FrontEvent::Crossing(_)) {
            if let CrossingClass::Switch(kind) = ruling.classes[ci] {
                let r = form.switch_coeffs[&e];
                xvals.push(if kind == SwitchKind::S3 { field.neg(r) } else { r });
            }
            ci += 1;
        }
    }
    let (_, wide_events) = free_slots(d, ruling, m);
    let zvals = wide_events
        .iter()
        .map(|e| {
            form.return_coeffs
                .get(e)
                .or_else(|| form.cusp_coeffs.get(e))
                .copied()
                .unwrap_or(FqElem::ZERO)
        })
        .collect();
    Ok((run.t_values, xvals, zvals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aug::{brute_count, DEFAULT_CAP};
    use crate::dga::Dga;
    use crate::front::parse_front;
    use crate::maslov::{grading_moduli, MaslovPotential};
    use crate::mcs::graph::ruling_graph;
    use crate::rulings::{enumerate_rulings, ruling_stats};
    use std::collections::BTreeSet;

    const CAP: u128 = DEFAULT_CAP as u128;

    fn load(name: &str) -> FrontDiagram {
        let path = format!("{}/../../fronts/{name}.front", env!("CARGO_MANIFEST_DIR"));
        parse_front(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    #[test]
    fn per_ruling_counts_hit_the_closed_form() {
        for name in ["unknot", "hopf", "hopf_swap", "chain3", "trefoil"] {
            let d = load(name);
            let mu = MaslovPotential::compute(&d);
            let c = d.n_components() as i64;
            for m in grading_moduli(&d).into_iter().filter(|&m| m <= 2) {
                for q in [2u64, 3, 5] {
                    let field = Fq::from_order(q).unwrap();
                    for r in enumerate_rulings(&d, &mu, m).unwrap() {
                        let st = ruling_stats(&d, &r, m);
                        let forms = enumerate_sr_forms(&d, &r, &field, m, CAP).unwrap();
                        let expect = (q as u128 - 1).pow(u32::try_from(st.j + c).unwrap())
                            * (q as u128).pow(u32::try_from(st.r).unwrap());
                        assert_eq!(
                            forms.len() as u128,
                            expect,
                            "{name} m = {m} q = {q} mask {:b}",
                            r.mask
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn totals_match_augmentation_counts() {
        for name in ["unknot", "hopf", "chain3", "trefoil", "stab_unknot"] {
            let d = load(name);
            let dga = Dga::new(&d);
            let mu = MaslovPotential::compute(&d);
            for m in grading_moduli(&d).into_iter().filter(|&m| m <= 2) {
                for q in [2u64, 3] {
                    let field = Fq::from_order(q).unwrap();
                    let total: u128 = enumerate_rulings(&d, &mu, m)
                        .unwrap()
                        .iter()
                        .map(|r| enumerate_sr_forms(&d, r, &field, m, CAP).unwrap().len() as u128)
                        .sum();
                    let brute = brute_count(&dga, m, q, DEFAULT_CAP).unwrap();
                    assert_eq!(total, brute, "{name} m = {m} q = {q}");
                }
            }
        }
    }

    #[test]
    fn complexes_are_standard_for_the_ruling() {
        for (name, m, q) in [("trefoil", 0, 3u64), ("hopf", 0, 4), ("chain3", 0, 2), ("trefoil", 1, 2)]
        {
            let d = load(name);
            let mu = MaslovPotential::compute(&d);
            let field = Fq::from_order(q).unwrap();
            for r in enumerate_rulings(&d, &mu, m).unwrap() {
                for form in enumerate_sr_forms(&d, &r, &field, m, CAP).unwrap() {
                    let run = run_sr_form(&d, &r, &field, m, &form).unwrap();
                    for (gap, cx) in run.complexes.iter().enumerate() {
                        assert!(cx.d_squared_is_zero(&field));
                        let pairing = r.pairing(gap);
                        for i in 1..=cx.n() {
                            for j in (i + 1)..=cx.n() {
                                assert_eq!(
                                    !cx.get(i, j).is_zero(),
                                    pairing[i] == j,
                                    "{name} mask {:b} gap {gap} entry ({i}, {j})",
                                    r.mask
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_lands_in_the_disk_equation_solutions() {
        for (name, m, q) in [("trefoil", 0, 3u64), ("trefoil", 1, 2), ("hopf", 0, 5), ("chain3", 0, 3)]
        {
            let d = load(name);
            let mu = MaslovPotential::compute(&d);
            let field = Fq::from_order(q).unwrap();
            for r in enumerate_rulings(&d, &mu, m).unwrap() {
                let st = ruling_stats(&d, &r, m);
                let g = ruling_graph(&d, &r, &field);
                let forms = enumerate_sr_forms(&d, &r, &field, m, CAP).unwrap();
                let mut seen = BTreeSet::new();
                for form in &forms {
                    let (tvals, xvals, zvals) =
                        lambda_point(&d, &r, &field, m, form).unwrap();
                    assert!(
                        g.satisfied(&field, &tvals, &xvals),
                        "{name} mask {:b}: image point misses the equations",
                        r.mask
                    );
                    assert_eq!(zvals.len() as i64, st.r);
                    assert!(seen.insert((tvals, xvals, zvals)), "{name}: image collided");
                }
                // Injectivity plus the counts from the graph side makes the
                // map onto: its image fills the whole solution set.
                let z_size = g.brute_count(&field, CAP).unwrap()
                    * (q as u128).pow(u32::try_from(st.r).unwrap());
                assert_eq!(forms.len() as u128, z_size, "{name} mask {:b}", r.mask);
            }
        }
    }

    #[test]
    fn unit_switch_coefficients_pass_only_in_characteristic_two() {
        let d = load("trefoil");
        let mu = MaslovPotential::compute(&d);
        let rulings = enumerate_rulings(&d, &mu, 0).unwrap();
        let full = rulings.iter().find(|r| r.mask == 0b111).unwrap();
        let events: Vec<usize> = d.crossings().to_vec();
        for (q, ok) in [(2u64, true), (3, false)] {
            let field = Fq::from_order(q).unwrap();
            let form = SrForm {
                switch_coeffs: events.iter().map(|&e| (e, FqElem::ONE)).collect(),
                return_coeffs: BTreeMap::new(),
                cusp_coeffs: BTreeMap::new(),
            };
            let run = run_sr_form(&d, full, &field, 0, &form);
            assert_eq!(run.is_ok(), ok, "q = {q}");
            if let Ok(run) = run {
                // The marked cusp fixes t = -1 here.
                assert_eq!(run.t_values, vec![field.minus_one()]);
            }
        }
    }

    #[test]
    fn missing_switch_coefficient_is_rejected() {
        let d = load("trefoil");
        let mu = MaslovPotential::compute(&d);
        let rulings = enumerate_rulings(&d, &mu, 0).unwrap();
        let full = rulings.iter().find(|r| r.mask == 0b111).unwrap();
        let field = Fq::from_order(3).unwrap();
        let form = SrForm {
            switch_coeffs: BTreeMap::new(),
            return_coeffs: BTreeMap::new(),
            cusp_coeffs: BTreeMap::new(),
        };
        assert!(matches!(
            run_sr_form(&d, full, &field, 0, &form),
            Err(Error::NotSRForm(_))
        ));
    }
}
