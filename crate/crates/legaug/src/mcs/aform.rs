//! A-form Morse complex sequences: one handleslide immediately left of each
//! graded crossing, plus one left of each right cusp when m = 1, and
//! nothing else. Valid coefficient assignments biject with points of the
//! augmentation variety, so counting them is an independent route to the
//! augmentation count.

use crate::algebra::fq::{Fq, FqElem};
use crate::dga::{sweep_half_disks, Dga, GenKind};
use crate::error::{Error, Result};
use crate::front::{FrontDiagram, FrontEvent};
use crate::maslov::{check_grading, MaslovPotential};
use crate::mcs::complex::TriComplex;
use std::collections::BTreeMap;

/// Coefficient data of one A-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AForm {
    pub m: i64,
    /// Handleslide coefficient at each graded crossing, keyed by event.
    pub lambda: BTreeMap<usize, FqElem>,
    /// Handleslide coefficient at each right cusp, keyed by event; present
    /// only when m = 1 (the only grading where the cusp strands agree).
    pub cusp_lambda: BTreeMap<usize, FqElem>,
    /// epsilon(t_i) per component, read off the marked cusp pivots.
    pub t_values: Vec<FqElem>,
}

struct Sweep<'a> {
    d: &'a FrontDiagram,
    field: &'a Fq,
    m: i64,
    /// Whether each event is a graded crossing.
    graded: Vec<bool>,
    minus_one: FqElem,
}

impl<'a> Sweep<'a> {
    fn new(d: &'a FrontDiagram, mu: &MaslovPotential, field: &'a Fq, m: i64) -> Sweep<'a> {
        let graded = d
            .events()
            .iter()
            .enumerate()
            .map(|(ev, e)| {
                matches!(e, FrontEvent::Crossing(_))
                    && mu.is_graded(mu.crossing_degree(d, ev), m)
            })
            .collect();
        Sweep { d, field, m, graded, minus_one: field.minus_one() }
    }

    /// Walk all coefficient assignments; `branch_cusps` controls whether the
    /// m = 1 cusp slides are explored (they never affect validity, so the
    /// count shortcut multiplies by q per cusp instead).
    fn dfs(
        &self,
        ev: usize,
        cx: TriComplex,
        lambda: &mut Vec<(usize, FqElem)>,
        cusp_lambda: &mut Vec<(usize, FqElem)>,
        tvals: &mut Vec<FqElem>,
        branch_cusps: bool,
        leaf: &mut dyn FnMut(&[(usize, FqElem)], &[(usize, FqElem)], &[FqElem]),
    ) {
        if ev == self.d.n_events() {
            debug_assert_eq!(cx.n(), 0);
            leaf(lambda, cusp_lambda, tvals);
            return;
        }
        match self.d.events()[ev] {
            FrontEvent::LeftCusp(k) => {
                let mut cx = cx;
                cx.left_cusp(k);
                self.dfs(ev + 1, cx, lambda, cusp_lambda, tvals, branch_cusps, leaf);
            }
            FrontEvent::Crossing(k) => {
                if self.graded[ev] {
                    for r in self.field.elements() {
                        let mut cx2 = cx.clone();
                        cx2.handleslide(self.field, k, k + 1, r);
                        if cx2.crossing(k).is_err() {
                            continue;
                        }
                        lambda.push((ev, r));
                        self.dfs(ev + 1, cx2, lambda, cusp_lambda, tvals, branch_cusps, leaf);
                        lambda.pop();
                    }
                } else {
                    let mut cx = cx;
                    if cx.crossing(k).is_err() {
                        return;
                    }
                    self.dfs(ev + 1, cx, lambda, cusp_lambda, tvals, branch_cusps, leaf);
                }
            }
            FrontEvent::RightCusp(k) => {
                let slides: Vec<FqElem> = if self.m == 1 && branch_cusps {
                    self.field.elements().collect()
                } else {
                    vec![FqElem::ZERO]
                };
                for z in slides {
                    let mut cx2 = cx.clone();
                    if self.m == 1 {
                        cx2.handleslide(self.field, k, k + 1, z);
                    }
                    let pivot = match cx2.right_cusp(self.field, k) {
                        Ok(p) => p,
                        Err(_) => return, // independent of z, every branch dies
                    };
                    let marked = self.d.marked().contains(&ev);
                    if marked {
                        let comp = self.d.cusp_component(ev);
                        let ell = self.d.cusp_ell(ev);
                        let s = self
                            .field
                            .pow(self.field.neg(pivot), ell)
                            .expect("pivot is invertible");
                        tvals[comp] = s;
                    } else if pivot != self.minus_one {
                        return; // pivot is independent of z as well
                    }
                    if self.m == 1 && branch_cusps {
                        cusp_lambda.push((ev, z));
                    }
                    self.dfs(ev + 1, cx2, lambda, cusp_lambda, tvals, branch_cusps, leaf);
                    if self.m == 1 && branch_cusps {
                        cusp_lambda.pop();
                    }
                }
            }
        }
    }
}

fn space_guard(d: &FrontDiagram, graded: &[bool], q: u64, with_cusps: bool, cap: u128) -> Result<()> {
    let mut exp = graded.iter().filter(|&&g| g).count() as u32;
    if with_cusps {
        exp += d.right_cusps().len() as u32;
    }
    let space = (q as u128)
        .checked_pow(exp)
        .ok_or(Error::Scale { space: u128::MAX, cap })?;
    if space > cap {
        return Err(Error::Scale { space, cap });
    }
    Ok(())
}

/// Number of valid A-forms, which equals the augmentation variety count.
pub fn count_a_forms(
    d: &FrontDiagram,
    mu: &MaslovPotential,
    m: i64,
    q: u64,
    cap: u128,
) -> Result<u128> {
    check_grading(d, m)?;
    let field = Fq::from_order(q)?;
    let sweep = Sweep::new(d, mu, &field, m);
    space_guard(d, &sweep.graded, q, false, cap)?;
    let mut leaves: u128 = 0;
    let mut tvals = vec![FqElem::ONE; d.n_components()];
    sweep.dfs(
        0,
        TriComplex::empty(),
        &mut Vec::new(),
        &mut Vec::new(),
        &mut tvals,
        false,
        &mut |_, _, _| leaves += 1,
    );
    // Each right cusp slide at m = 1 takes any of q values without
    // affecting validity.
    let cusp_factor = if m == 1 {
        (q as u128)
            .checked_pow(d.right_cusps().len() as u32)
            .ok_or(Error::Scale { space: u128::MAX, cap })?
    } else {
        1
    };
    leaves.checked_mul(cusp_factor).ok_or(Error::Scale { space: u128::MAX, cap })
}

/// All valid A-forms, cusp slides included.
pub fn enumerate_a_forms(
    d: &FrontDiagram,
    mu: &MaslovPotential,
    m: i64,
    q: u64,
    cap: u128,
) -> Result<Vec<AForm>> {
    check_grading(d, m)?;
    let field = Fq::from_order(q)?;
    let sweep = Sweep::new(d, mu, &field, m);
    space_guard(d, &sweep.graded, q, m == 1, cap)?;
    let mut out = Vec::new();
    let mut tvals = vec![FqElem::ONE; d.n_components()];
    sweep.dfs(
        0,
        TriComplex::empty(),
        &mut Vec::new(),
        &mut Vec::new(),
        &mut tvals,
        true,
        &mut |lambda, cusp_lambda, tv| {
            out.push(AForm {
                m,
                lambda: lambda.iter().copied().collect(),
                cusp_lambda: cusp_lambda.iter().copied().collect(),
                t_values: tv.to_vec(),
            });
        },
    );
    Ok(out)
}

/// Materialize the complexes of an A-form: entry g of the result is the
/// complex entering gap g, before the slides of gap g. Fails where a pivot
/// condition does.
pub fn run_a_form(d: &FrontDiagram, field: &Fq, a: &AForm) -> Result<Vec<TriComplex>> {
    let mut out = vec![TriComplex::empty()];
    let mut cx = TriComplex::empty();
    for (ev, &e) in d.events().iter().enumerate() {
        match e {
            FrontEvent::LeftCusp(k) => cx.left_cusp(k),
            FrontEvent::Crossing(k) => {
                if let Some(&r) = a.lambda.get(&ev) {
                    cx.handleslide(field, k, k + 1, r);
                }
                cx.crossing(k).map_err(|_| Error::ObstructionAt(ev))?;
            }
            FrontEvent::RightCusp(k) => {
                if let Some(&z) = a.cusp_lambda.get(&ev) {
                    cx.handleslide(field, k, k + 1, z);
                }
                let pivot = cx.right_cusp(field, k).map_err(|_| Error::ObstructionAt(ev))?;
                if !d.marked().contains(&ev) && pivot != field.minus_one() {
                    return Err(Error::ObstructionAt(ev));
                }
            }
        }
        out.push(cx.clone());
    }
    Ok(out)
}

/// The half-disk formula for an A-form complex entry: sum over leftward
/// disk sweeps from (i, j) in the gap, weighting an upper-path turn by the
/// crossing's slide coefficient and a lower-path turn by its negative.
/// Crossings without a slide prune every turn.
pub fn half_disk_entry(
    d: &FrontDiagram,
    field: &Fq,
    lambda: &BTreeMap<usize, FqElem>,
    gap: usize,
    i: usize,
    j: usize,
) -> FqElem {
    let mut acc = FqElem::ZERO;
    sweep_half_disks(d, gap, i, j, &mut |corners| {
        let mut w = FqElem::ONE;
        for c in corners {
            let lam = lambda.get(&c.event).copied().unwrap_or(FqElem::ZERO);
            w = field.mul(w, if c.upper { lam } else { field.neg(lam) });
            if w.is_zero() {
                return;
            }
        }
        acc = field.add(acc, w);
    });
    acc
}

/// The augmentation associated to an A-form: alpha-corrected slide
/// coefficients on crossings, cusp slides on cusp generators, and the
/// recorded t values.
pub fn theta_point(
    d: &FrontDiagram,
    dga: &Dga,
    field: &Fq,
    a: &AForm,
) -> (Vec<FqElem>, Vec<FqElem>) {
    let mut vals = vec![FqElem::ZERO; dga.n_gens()];
    for (g, info) in dga.gens.iter().enumerate() {
        match info.kind {
            GenKind::Crossing => {
                if let Some(&lam) = a.lambda.get(&info.event) {
                    vals[g] = if d.alpha(info.event) < 0 { field.neg(lam) } else { lam };
                }
            }
            GenKind::RightCusp => {
                if let Some(&z) = a.cusp_lambda.get(&info.event) {
                    vals[g] = z;
                }
            }
            GenKind::Stabilizer => {}
        }
    }
    (vals, a.t_values.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aug::{brute_count, eval_poly, DEFAULT_CAP};
    use crate::front::parse_front;
    use crate::maslov::grading_moduli;
    use std::collections::BTreeSet;

    fn load(name: &str) -> FrontDiagram {
        let path = format!("{}/../../fronts/{name}.front", env!("CARGO_MANIFEST_DIR"));
        parse_front(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    const CORPUS: [&str; 7] =
        ["unknot", "hopf", "hopf_swap", "chain3", "trefoil", "stab_unknot", "stab_trefoil"];

    #[test]
    fn counts_match_brute_force() {
        for name in CORPUS {
            let d = load(name);
            let dga = Dga::new(&d);
            let mu = MaslovPotential::compute(&d);
            for m in grading_moduli(&d).into_iter().filter(|&m| m <= 2) {
                for q in [2u64, 3, 4, 5] {
                    let mcs = count_a_forms(&d, &mu, m, q, DEFAULT_CAP).unwrap();
                    let brute = brute_count(&dga, m, q, DEFAULT_CAP).unwrap();
                    assert_eq!(mcs, brute, "{name} m = {m} q = {q}");
                }
            }
        }
    }

    #[test]
    fn cusp_order_does_not_change_counts() {
        // hopf and hopf_swap present the same link; only the order in which
        // the two right cusps close differs.
        let d = load("hopf_swap");
        let mu = MaslovPotential::compute(&d);
        for (q, expect) in [(2u64, 3u128), (3, 7), (5, 21)] {
            assert_eq!(count_a_forms(&d, &mu, 0, q, DEFAULT_CAP).unwrap(), expect);
        }
    }

    #[test]
    fn theta_lands_in_the_variety() {
        for (name, m, q) in [
            ("unknot", 1, 3u64),
            ("hopf", 0, 3),
            ("hopf", 1, 2),
            ("hopf_swap", 0, 3),
            ("chain3", 0, 2),
            ("chain3", 0, 3),
            ("trefoil", 0, 3),
            ("trefoil", 1, 2),
            ("trefoil", 2, 3),
        ] {
            let d = load(name);
            let dga = Dga::new(&d);
            let mu = MaslovPotential::compute(&d);
            let field = Fq::from_order(q).unwrap();
            let forms = enumerate_a_forms(&d, &mu, m, q, DEFAULT_CAP).unwrap();
            let brute = brute_count(&dga, m, q, DEFAULT_CAP).unwrap();
            assert_eq!(forms.len() as u128, brute, "{name} m = {m} q = {q}");
            let mut seen = BTreeSet::new();
            for a in &forms {
                let (vals, tvals) = theta_point(&d, &dga, &field, &a);
                for g in 0..dga.n_gens() {
                    if mu.is_graded(dga.gens[g].degree - 1, m) {
                        let v = eval_poly(&field, &dga.diffs[g], &vals, &tvals);
                        assert!(
                            v.is_zero(),
                            "{name} m = {m} q = {q}: theta image misses the variety at {}",
                            dga.gens[g].name
                        );
                    }
                }
                assert!(seen.insert((vals, tvals)), "{name}: theta image collided");
            }
        }
    }

    #[test]
    fn complexes_match_half_disks_left_of_the_cusps() {
        // The half-disk formula describes complexes in the region before any
        // contraction; compare every entry of every valid A-form there.
        for (name, m, q) in [
            ("trefoil", 0, 3u64),
            ("hopf", 0, 2),
            ("hopf", 2, 3),
            ("chain3", 0, 3),
            ("unknot", 0, 5),
        ] {
            let d = load(name);
            let mu = MaslovPotential::compute(&d);
            let field = Fq::from_order(q).unwrap();
            let first_cusp = d
                .events()
                .iter()
                .position(|e| matches!(e, FrontEvent::RightCusp(_)))
                .unwrap();
            let forms = enumerate_a_forms(&d, &mu, m, q, DEFAULT_CAP).unwrap();
            assert!(!forms.is_empty(), "{name} should admit A-forms");
            for a in &forms {
                let cxs = run_a_form(&d, &field, &a).unwrap();
                for gap in 0..=first_cusp {
                    let cx = &cxs[gap];
                    assert!(cx.d_squared_is_zero(&field), "{name} gap {gap}");
                    for i in 1..=cx.n() {
                        for j in (i + 1)..=cx.n() {
                            let want = half_disk_entry(&d, &field, &a.lambda, gap, i, j);
                            assert_eq!(
                                cx.get(i, j),
                                want,
                                "{name} m = {m} q = {q} gap {gap} entry ({i}, {j})"
                            );
                        }
                    }
                }
                for cx in &cxs {
                    assert!(cx.d_squared_is_zero(&field), "{name}: d^2 != 0");
                }
            }
        }
    }

    #[test]
    fn stabilized_fronts_admit_no_forms() {
        for name in ["stab_unknot", "stab_trefoil"] {
            let d = load(name);
            let mu = MaslovPotential::compute(&d);
            for m in [1, 2] {
                assert_eq!(count_a_forms(&d, &mu, m, 3, DEFAULT_CAP).unwrap(), 0, "{name}");
                assert!(enumerate_a_forms(&d, &mu, m, 3, DEFAULT_CAP).unwrap().is_empty());
            }
        }
    }
}
