//! Sweeps converting between A-form and SR-form sequences.
//!
//! Both directions push a collection of handleslides rightward across the
//! crossings, held as a unipotent matrix (see `moves`). At a graded crossing
//! the incoming slide on the crossing strands is absorbed into the
//! collection, the collection's own coefficient r' on those strands is peeled
//! off and left behind, the rest passes the crossing, and the slides the
//! target form wants on the far side are introduced as cancelling pairs with
//! one member absorbed. Ungraded crossings just conjugate the collection.
//!
//! `phi` starts from an SR-form compatible with a ruling and leaves behind
//! the A-form coefficient at each graded crossing. `psi` starts from an
//! A-form and builds the ruling as it goes: at a graded crossing whose
//! entering pairs are disjoint or nested, r' = 0 extends the ruling by a
//! departure and r' != 0 by a switch with leading coefficient r'; crossed or
//! interlaced pairs extend it by a return with coefficient r'. Past the last
//! crossing the leftover collection is erased, except that for m = 1 a slide
//! on consecutive strands that die at the same right cusp merges into that
//! cusp's slide.

use std::collections::BTreeMap;

use crate::algebra::fq::{Fq, FqElem};
use crate::error::{Error, Result};
use crate::front::{FrontDiagram, FrontEvent};
use crate::maslov::MaslovPotential;
use crate::mcs::aform::AForm;
use crate::mcs::complex::TriComplex;
use crate::mcs::moves::{
    conj_crossing, factor, graded_pairs, identity, mat_mul, proper_sequence, reverse_sequence,
    slide_matrix, Mat, Slide,
};
use crate::mcs::srform::{companions, run_sr_form, SrForm};
use crate::rulings::{
    classify_pair_config, ruling_from_mask, CrossingClass, NormalRuling, PairConfig, ReturnKind,
    SwitchKind,
};

fn coeff_of(slides: &[Slide], top: usize, bottom: usize) -> FqElem {
    slides
        .iter()
        .find(|h| h.top == top && h.bottom == bottom)
        .map(|h| h.coeff)
        .unwrap_or(FqElem::ZERO)
}

/// Terminal-gap position of the top strand of each consecutive pair that
/// dies at one right cusp, mapped to that cusp's event.
fn consecutive_dying_pairs(d: &FrontDiagram, s: usize) -> BTreeMap<usize, usize> {
    let mut alive: Vec<usize> = (1..=s).collect();
    let mut out = BTreeMap::new();
    for &ev in d.right_cusps() {
        let FrontEvent::RightCusp(k) = d.events()[ev] else { unreachable!() };
        let (a0, b0) = (alive[k - 1], alive[k]);
        if b0 == a0 + 1 {
            out.insert(a0, ev);
        }
        alive.drain(k - 1..=k);
    }
    out
}

/// Fold the leftover collection into the cusp slides: keep only members on
/// consecutive strands dying together, added to the base cusp coefficients.
fn terminal_cusp_coeffs(
    d: &FrontDiagram,
    field: &Fq,
    mu: &MaslovPotential,
    m: i64,
    s: usize,
    p: &Mat,
    reverse: bool,
    base: &BTreeMap<usize, FqElem>,
) -> Result<BTreeMap<usize, FqElem>> {
    let mut out = BTreeMap::new();
    if m != 1 {
        return Ok(out);
    }
    for &ev in d.right_cusps() {
        out.insert(ev, base.get(&ev).copied().unwrap_or(FqElem::ZERO));
    }
    let gap = d.right_cusps()[0];
    let pairs = graded_pairs(mu, gap, m, s);
    let seq = if reverse { reverse_sequence(&pairs) } else { proper_sequence(&pairs) };
    let dying = consecutive_dying_pairs(d, s);
    for h in factor(field, p, &seq)? {
        if h.coeff.is_zero() || h.bottom != h.top + 1 {
            continue;
        }
        if let Some(&ev) = dying.get(&h.top) {
            let slot = out.get_mut(&ev).expect("every cusp is keyed");
            *slot = field.add(*slot, h.coeff);
        }
    }
    Ok(out)
}

/// Convert an SR-form sequence to the A-form sequence with the same
/// complexes outside the crossing region.
pub fn phi(
    d: &FrontDiagram,
    ruling: &NormalRuling,
    field: &Fq,
    m: i64,
    sr: &SrForm,
) -> Result<AForm> {
    let mu = MaslovPotential::compute(d);
    let run = run_sr_form(d, ruling, field, m, sr)?;
    let s = 2 * d.left_cusps().len();
    let mut p = identity(s);
    let mut lambda = BTreeMap::new();
    let mut ci = 0;
    for (e, &ev) in d.events().iter().enumerate() {
        let FrontEvent::Crossing(k) = ev else { continue };
        let class = ruling.classes[ci];
        ci += 1;
        if !mu.is_graded(mu.crossing_degree(d, e), m) {
            p = conj_crossing(&p, k);
            continue;
        }
        let r_pre = match class {
            CrossingClass::Switch(_) => *sr.switch_coeffs.get(&e).ok_or_else(|| {
                Error::NotSRForm(format!("switch at event {e} needs a unit coefficient"))
            })?,
            CrossingClass::Return { .. } => {
                sr.return_coeffs.get(&e).copied().unwrap_or(FqElem::ZERO)
            }
            _ => FqElem::ZERO,
        };
        p = mat_mul(field, &slide_matrix(s, Slide { top: k, bottom: k + 1, coeff: r_pre }), &p);
        let slides = factor(field, &p, &reverse_sequence(&graded_pairs(&mu, e, m, s)))?;
        let rp = coeff_of(&slides, k, k + 1);
        lambda.insert(e, rp);
        p = mat_mul(
            field,
            &p,
            &slide_matrix(s, Slide { top: k, bottom: k + 1, coeff: field.neg(rp) }),
        );
        p = conj_crossing(&p, k);
        match class {
            CrossingClass::Switch(kind) => {
                let r_inv = field.inv(r_pre)?;
                p = mat_mul(
                    field,
                    &slide_matrix(s, Slide { top: k, bottom: k + 1, coeff: field.neg(r_inv) }),
                    &p,
                );
                if kind != SwitchKind::S1 {
                    let (top, bottom, a, b) = companions(&run.complexes[e], &ruling.pairing(e), k);
                    let coeff =
                        field.mul(field.mul(a, r_inv), field.inv(b).expect("standard entry"));
                    p = mat_mul(field, &slide_matrix(s, Slide { top, bottom, coeff }), &p);
                }
            }
            CrossingClass::Return { kind, graded: true } if kind != ReturnKind::R1 => {
                let (top, bottom, a, b) = companions(&run.complexes[e], &ruling.pairing(e), k);
                let coeff = match kind {
                    ReturnKind::R2 => {
                        field.mul(field.mul(a, r_pre), field.inv(b).expect("standard entry"))
                    }
                    _ => field.mul(field.mul(field.inv(a).expect("standard entry"), r_pre), b),
                };
                p = mat_mul(field, &slide_matrix(s, Slide { top, bottom, coeff }), &p);
            }
            _ => {}
        }
    }
    let cusp_lambda =
        terminal_cusp_coeffs(d, field, &mu, m, s, &p, true, &sr.cusp_coeffs)?;
    Ok(AForm { m, lambda, cusp_lambda, t_values: run.t_values })
}

fn conjugated(pairing: &[usize], k: usize) -> Vec<usize> {
    let swap = |p: usize| match p {
        _ if p == k => k + 1,
        _ if p == k + 1 => k,
        _ => p,
    };
    let mut next = vec![0; pairing.len()];
    for p in 1..pairing.len() {
        next[swap(p)] = swap(pairing[p]);
    }
    next
}

/// Convert an A-form sequence to an SR-form one, building the normal ruling
/// it is compatible with along the way.
pub fn psi(
    d: &FrontDiagram,
    field: &Fq,
    m: i64,
    a: &AForm,
) -> Result<(NormalRuling, SrForm)> {
    let mu = MaslovPotential::compute(d);
    let s = 2 * d.left_cusps().len();
    let mut cx = TriComplex::empty();
    let mut pairing: Vec<usize> = vec![0];
    let mut p = identity(s);
    let mut switch_coeffs = BTreeMap::new();
    let mut return_coeffs = BTreeMap::new();
    let mut mask: u64 = 0;
    let mut ci = 0;
    for (e, &ev) in d.events().iter().enumerate() {
        match ev {
            FrontEvent::LeftCusp(k) => {
                cx.left_cusp(k);
                let old = pairing.len() - 1;
                let shift = |x: usize| if x >= k { x + 2 } else { x };
                let mut next = vec![0; old + 3];
                for q in 1..=old {
                    next[shift(q)] = shift(pairing[q]);
                }
                next[k] = k + 1;
                next[k + 1] = k;
                pairing = next;
            }
            FrontEvent::RightCusp(_) => break,
            FrontEvent::Crossing(k) => {
                let bit = ci;
                ci += 1;
                if pairing[k] == k + 1 {
                    return Err(Error::ObstructionAt(e));
                }
                if !mu.is_graded(mu.crossing_degree(d, e), m) {
                    cx.crossing(k).map_err(|_| Error::ObstructionAt(e))?;
                    pairing = conjugated(&pairing, k);
                    p = conj_crossing(&p, k);
                    continue;
                }
                let lam = a.lambda.get(&e).copied().unwrap_or(FqElem::ZERO);
                p = mat_mul(
                    field,
                    &slide_matrix(s, Slide { top: k, bottom: k + 1, coeff: lam }),
                    &p,
                );
                let slides = factor(field, &p, &proper_sequence(&graded_pairs(&mu, e, m, s)))?;
                let rp = coeff_of(&slides, k, k + 1);
                p = mat_mul(
                    field,
                    &p,
                    &slide_matrix(s, Slide { top: k, bottom: k + 1, coeff: field.neg(rp) }),
                );
                p = conj_crossing(&p, k);
                let config = classify_pair_config(&pairing, k);
                match config {
                    PairConfig::Disjoint | PairConfig::NestedAbove | PairConfig::NestedBelow
                        if !rp.is_zero() =>
                    {
                        mask |= 1 << bit;
                        switch_coeffs.insert(e, rp);
                        let r_inv = field.inv(rp)?;
                        let companion = (config != PairConfig::Disjoint).then(|| {
                            let (top, bottom, ca, cb) = companions(&cx, &pairing, k);
                            let coeff = field
                                .mul(field.mul(ca, r_inv), field.inv(cb).expect("standard entry"));
                            (top, bottom, coeff)
                        });
                        cx.handleslide(field, k, k + 1, rp);
                        cx.crossing(k).map_err(|_| Error::ObstructionAt(e))?;
                        cx.handleslide(field, k, k + 1, field.neg(r_inv));
                        p = mat_mul(
                            field,
                            &p,
                            &slide_matrix(s, Slide { top: k, bottom: k + 1, coeff: r_inv }),
                        );
                        if let Some((top, bottom, coeff)) = companion {
                            cx.handleslide(field, top, bottom, coeff);
                            p = mat_mul(
                                field,
                                &p,
                                &slide_matrix(s, Slide { top, bottom, coeff: field.neg(coeff) }),
                            );
                        }
                    }
                    PairConfig::Disjoint | PairConfig::NestedAbove | PairConfig::NestedBelow => {
                        cx.crossing(k).map_err(|_| Error::ObstructionAt(e))?;
                        pairing = conjugated(&pairing, k);
                    }
                    PairConfig::Crossed => {
                        return_coeffs.insert(e, rp);
                        cx.handleslide(field, k, k + 1, rp);
                        cx.crossing(k).map_err(|_| Error::ObstructionAt(e))?;
                        pairing = conjugated(&pairing, k);
                    }
                    PairConfig::InterlacedAbove | PairConfig::InterlacedBelow => {
                        return_coeffs.insert(e, rp);
                        let (top, bottom, ca, cb) = companions(&cx, &pairing, k);
                        let coeff = if config == PairConfig::InterlacedAbove {
                            field.mul(field.mul(ca, rp), field.inv(cb).expect("standard entry"))
                        } else {
                            field.mul(field.mul(field.inv(ca).expect("standard entry"), rp), cb)
                        };
                        cx.handleslide(field, k, k + 1, rp);
                        cx.crossing(k).map_err(|_| Error::ObstructionAt(e))?;
                        cx.handleslide(field, top, bottom, coeff);
                        p = mat_mul(
                            field,
                            &p,
                            &slide_matrix(s, Slide { top, bottom, coeff: field.neg(coeff) }),
                        );
                        pairing = conjugated(&pairing, k);
                    }
                }
            }
        }
    }
    let cusp_coeffs = terminal_cusp_coeffs(d, field, &mu, m, s, &p, false, &a.cusp_lambda)?;
    let ruling = ruling_from_mask(d, &mu, m, mask)?;
    Ok((ruling, SrForm { switch_coeffs, return_coeffs, cusp_coeffs }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aug::DEFAULT_CAP;
    use crate::front::parse_front;
    use crate::maslov::grading_moduli;
    use crate::mcs::aform::{enumerate_a_forms, run_a_form};
    use crate::mcs::srform::enumerate_sr_forms;
    use crate::rulings::{enumerate_rulings, ruling_stats};

    const CAP: u128 = DEFAULT_CAP as u128;

    fn load(name: &str) -> FrontDiagram {
        let path = format!("{}/../../fronts/{name}.front", env!("CARGO_MANIFEST_DIR"));
        parse_front(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    fn cases() -> Vec<(&'static str, i64, u64)> {
        vec![
            ("unknot", 0, 3),
            ("unknot", 1, 2),
            ("hopf", 0, 3),
            ("hopf", 1, 2),
            ("hopf", 2, 2),
            ("hopf_swap", 0, 2),
            ("chain3", 0, 2),
            ("chain3", 1, 2),
            ("trefoil", 0, 3),
            ("trefoil", 0, 4),
            ("trefoil", 1, 2),
            ("trefoil", 1, 3),
            ("trefoil", 2, 2),
        ]
    }

    #[test]
    fn phi_lands_in_a_forms_and_psi_inverts_it() {
        for (name, m, q) in cases() {
            let d = load(name);
            let mu = MaslovPotential::compute(&d);
            if !grading_moduli(&d).contains(&m) {
                continue;
            }
            let field = Fq::from_order(q).unwrap();
            for r in enumerate_rulings(&d, &mu, m).unwrap() {
                for sr in enumerate_sr_forms(&d, &r, &field, m, CAP).unwrap() {
                    let a = phi(&d, &r, &field, m, &sr).unwrap();
                    run_a_form(&d, &field, &a)
                        .unwrap_or_else(|_| panic!("{name} m = {m} q = {q}: phi output invalid"));
                    let (r2, sr2) = psi(&d, &field, m, &a).unwrap();
                    assert_eq!(r2.mask, r.mask, "{name} m = {m} q = {q}: ruling changed");
                    assert_eq!(sr2, sr, "{name} m = {m} q = {q}: psi(phi) drifted");
                }
            }
        }
    }

    #[test]
    fn psi_partitions_a_forms_by_ruling() {
        for (name, m, q) in cases() {
            let d = load(name);
            let mu = MaslovPotential::compute(&d);
            if !grading_moduli(&d).contains(&m) {
                continue;
            }
            let field = Fq::from_order(q).unwrap();
            let c = d.n_components() as i64;
            let mut sizes: BTreeMap<u64, u128> = BTreeMap::new();
            for a in enumerate_a_forms(&d, &mu, m, q, CAP).unwrap() {
                let (r, sr) = psi(&d, &field, m, &a).unwrap();
                *sizes.entry(r.mask).or_default() += 1;
                let back = phi(&d, &r, &field, m, &sr).unwrap();
                assert_eq!(back, a, "{name} m = {m} q = {q}: phi(psi) drifted");
                let run = run_sr_form(&d, &r, &field, m, &sr).unwrap();
                assert_eq!(run.t_values, a.t_values, "{name} m = {m} q = {q}");
            }
            for r in enumerate_rulings(&d, &mu, m).unwrap() {
                let st = ruling_stats(&d, &r, m);
                let expect = (q as u128 - 1).pow(u32::try_from(st.j + c).unwrap())
                    * (q as u128).pow(u32::try_from(st.r).unwrap());
                assert_eq!(
                    sizes.get(&r.mask).copied().unwrap_or(0),
                    expect,
                    "{name} m = {m} q = {q} mask {:b}",
                    r.mask
                );
            }
        }
    }
}
