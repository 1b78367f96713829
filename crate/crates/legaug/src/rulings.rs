//! Graded normal rulings of a plat front.
//!
//! A ruling is a fixed-point-free involution of the strands in every gap,
//! pairing the two new strands at each left cusp and the two dying strands at
//! each right cusp. At a crossing the two paired partners of the crossing
//! strands either trade (the generic move, conjugation by the transposition)
//! or, when the crossing has degree zero mod m and the two pairs sit in a
//! normal position, the ruling may switch and keep the pairing. Crossings the
//! ruling does not switch split into departures (normal before the crossing)
//! and returns (interlaced before the crossing).

use serde::Serialize;

use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};
use crate::front::{FrontDiagram, FrontEvent};
use crate::maslov::{check_grading, MaslovPotential};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SwitchKind {
    S1,
    S2,
    S3,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ReturnKind {
    R1,
    R2,
    R3,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CrossingClass {
    Switch(SwitchKind),
    Return { kind: ReturnKind, graded: bool },
    Departure { graded: bool },
    /// Unused by plat sweeps: every non-switched crossing is a departure or a
    /// return there. Kept so downstream vocabularies stay total.
    Pass,
}

/// Relative position of the two ruling pairs entering a crossing at k, k+1.
/// The first three are the normal configurations.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PairConfig {
    Disjoint,
    NestedAbove,
    NestedBelow,
    Crossed,
    InterlacedAbove,
    InterlacedBelow,
}

impl PairConfig {
    pub fn is_normal(self) -> bool {
        matches!(self, PairConfig::Disjoint | PairConfig::NestedAbove | PairConfig::NestedBelow)
    }

    pub fn switch_kind(self) -> SwitchKind {
        match self {
            PairConfig::Disjoint => SwitchKind::S1,
            PairConfig::NestedAbove => SwitchKind::S2,
            PairConfig::NestedBelow => SwitchKind::S3,
            _ => panic!("not a normal configuration"),
        }
    }

    pub fn return_kind(self) -> ReturnKind {
        match self {
            PairConfig::Crossed => ReturnKind::R1,
            PairConfig::InterlacedAbove => ReturnKind::R2,
            PairConfig::InterlacedBelow => ReturnKind::R3,
            _ => panic!("not an interlaced configuration"),
        }
    }
}

/// Classify the pairs at a crossing of strands k, k+1. The pairing is 1-based
/// with slot 0 unused; the partner of k must not be k+1.
pub fn classify_pair_config(pairing: &[usize], k: usize) -> PairConfig {
    let a = pairing[k];
    let b = pairing[k + 1];
    debug_assert!(a != k + 1 && b != k);
    if a < k && b > k + 1 {
        PairConfig::Disjoint
    } else if b < a && a < k {
        PairConfig::NestedAbove
    } else if k + 1 < b && b < a {
        PairConfig::NestedBelow
    } else if b < k && a > k + 1 {
        PairConfig::Crossed
    } else if a < b && b < k {
        PairConfig::InterlacedAbove
    } else {
        debug_assert!(k + 1 < a && a < b);
        PairConfig::InterlacedBelow
    }
}

fn conjugated(pairing: &[usize], k: usize) -> Vec<usize> {
    let sigma = |p: usize| {
        if p == k {
            k + 1
        } else if p == k + 1 {
            k
        } else {
            p
        }
    };
    let mut out = vec![0; pairing.len()];
    for p in 1..pairing.len() {
        out[sigma(p)] = sigma(pairing[p]);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalRuling {
    /// Switch set as a bitmask over crossing indices, bit 0 = first crossing.
    pub mask: u64,
    /// Indices into the diagram's crossing list, ascending.
    pub switches: Vec<usize>,
    /// Pairing per gap: pairings[gap][pos - 1] is the partner of pos.
    pub pairings: Vec<Vec<usize>>,
    /// Classification of every crossing.
    pub classes: Vec<CrossingClass>,
}

impl NormalRuling {
    /// Pairing of a gap as a 1-based slice with slot 0 unused.
    pub fn pairing(&self, gap: usize) -> Vec<usize> {
        let mut v = vec![0];
        v.extend_from_slice(&self.pairings[gap]);
        v
    }
}

struct Search<'a> {
    d: &'a FrontDiagram,
    graded: Vec<bool>,
    out: Vec<NormalRuling>,
}

impl Search<'_> {
    fn run(
        &mut self,
        e: usize,
        pairing: Vec<usize>,
        mut gaps: Vec<Vec<usize>>,
        classes: Vec<CrossingClass>,
        mask: u64,
        next_crossing: usize,
    ) {
        gaps.push(pairing[1..].to_vec());
        if e == self.d.n_events() {
            let switches: Vec<usize> =
                (0..self.d.crossings().len()).filter(|i| mask >> i & 1 == 1).collect();
            self.out.push(NormalRuling { mask, switches, pairings: gaps, classes });
            return;
        }
        match self.d.events()[e] {
            FrontEvent::LeftCusp(k) => {
                let s = pairing.len() - 1;
                let mut next = vec![0; s + 3];
                let shift = |p: usize| if p >= k { p + 2 } else { p };
                for p in 1..=s {
                    next[shift(p)] = shift(pairing[p]);
                }
                next[k] = k + 1;
                next[k + 1] = k;
                self.run(e + 1, next, gaps, classes, mask, next_crossing);
            }
            FrontEvent::RightCusp(k) => {
                if pairing[k] != k + 1 {
                    return;
                }
                let s = pairing.len() - 1;
                let mut next = vec![0; s - 1];
                for p in 1..=s {
                    if p == k || p == k + 1 {
                        continue;
                    }
                    let q = pairing[p];
                    let shift = |x: usize| if x > k + 1 { x - 2 } else { x };
                    next[shift(p)] = shift(q);
                }
                self.run(e + 1, next, gaps, classes, mask, next_crossing);
            }
            FrontEvent::Crossing(k) => {
                if pairing[k] == k + 1 {
                    return;
                }
                let config = classify_pair_config(&pairing, k);
                let graded = self.graded[next_crossing];
                let generic_class = if config.is_normal() {
                    CrossingClass::Departure { graded }
                } else {
                    CrossingClass::Return { kind: config.return_kind(), graded }
                };
                let mut cl = classes.clone();
                cl.push(generic_class);
                self.run(e + 1, conjugated(&pairing, k), gaps.clone(), cl, mask, next_crossing + 1);
                if graded && config.is_normal() {
                    let mut cl = classes;
                    cl.push(CrossingClass::Switch(config.switch_kind()));
                    self.run(
                        e + 1,
                        pairing,
                        gaps,
                        cl,
                        mask | 1 << next_crossing,
                        next_crossing + 1,
                    );
                }
            }
        }
    }
}

/// All m-graded normal rulings, ordered by ascending switch mask.
pub fn enumerate_rulings(
    d: &FrontDiagram,
    mu: &MaslovPotential,
    m: i64,
) -> Result<Vec<NormalRuling>> {
    check_grading(d, m)?;
    assert!(d.crossings().len() <= 64, "switch masks are u64");
    let graded: Vec<bool> =
        d.crossings().iter().map(|&e| mu.is_graded(mu.crossing_degree(d, e), m)).collect();
    let mut search = Search { d, graded, out: Vec::new() };
    search.run(0, vec![0], Vec::new(), Vec::new(), 0, 0);
    let mut out = search.out;
    out.sort_by_key(|r| r.mask);
    Ok(out)
}

/// Rebuild the ruling with the given switch mask, checking validity.
pub fn ruling_from_mask(
    d: &FrontDiagram,
    mu: &MaslovPotential,
    m: i64,
    mask: u64,
) -> Result<NormalRuling> {
    check_grading(d, m)?;
    let mut pairing = vec![0usize];
    let mut gaps: Vec<Vec<usize>> = Vec::new();
    let mut classes = Vec::new();
    let mut next_crossing = 0usize;
    let fail = |msg: String| Error::NotSRForm(msg);
    for (e, &ev) in d.events().iter().enumerate() {
        gaps.push(pairing[1..].to_vec());
        match ev {
            FrontEvent::LeftCusp(k) => {
                let s = pairing.len() - 1;
                let mut next = vec![0; s + 3];
                let shift = |p: usize| if p >= k { p + 2 } else { p };
                for p in 1..=s {
                    next[shift(p)] = shift(pairing[p]);
                }
                next[k] = k + 1;
                next[k + 1] = k;
                pairing = next;
            }
            FrontEvent::RightCusp(k) => {
                if pairing[k] != k + 1 {
                    return Err(fail(format!("pairs do not close at the cusp at event {e}")));
                }
                let s = pairing.len() - 1;
                let mut next = vec![0; s - 1];
                for p in 1..=s {
                    if p == k || p == k + 1 {
                        continue;
                    }
                    let shift = |x: usize| if x > k + 1 { x - 2 } else { x };
                    next[shift(p)] = shift(pairing[p]);
                }
                pairing = next;
            }
            FrontEvent::Crossing(k) => {
                if pairing[k] == k + 1 {
                    return Err(fail(format!("crossing strands are partners at event {e}")));
                }
                let config = classify_pair_config(&pairing, k);
                let graded = mu.is_graded(mu.crossing_degree(d, e), m);
                if mask >> next_crossing & 1 == 1 {
                    if !graded {
                        return Err(fail(format!("switch at ungraded crossing {next_crossing}")));
                    }
                    if !config.is_normal() {
                        return Err(fail(format!(
                            "switch at interlaced crossing {next_crossing}"
                        )));
                    }
                    classes.push(CrossingClass::Switch(config.switch_kind()));
                } else {
                    classes.push(if config.is_normal() {
                        CrossingClass::Departure { graded }
                    } else {
                        CrossingClass::Return { kind: config.return_kind(), graded }
                    });
                    pairing = conjugated(&pairing, k);
                }
                next_crossing += 1;
            }
        }
    }
    gaps.push(pairing[1..].to_vec());
    let switches: Vec<usize> =
        (0..d.crossings().len()).filter(|i| mask >> i & 1 == 1).collect();
    Ok(NormalRuling { mask, switches, pairings: gaps, classes })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RulingStats {
    pub switches: usize,
    pub graded_returns: usize,
    pub graded_departures: usize,
    /// Exponent of z: switches minus right cusps.
    pub j: i64,
    /// Free coordinate count: graded returns, plus all right cusps when m = 1.
    pub r: i64,
}

pub fn ruling_stats(d: &FrontDiagram, ruling: &NormalRuling, m: i64) -> RulingStats {
    let c = d.right_cusps().len();
    let switches = ruling.switches.len();
    let graded_returns = ruling
        .classes
        .iter()
        .filter(|cl| matches!(cl, CrossingClass::Return { graded: true, .. }))
        .count();
    let graded_departures = ruling
        .classes
        .iter()
        .filter(|cl| matches!(cl, CrossingClass::Departure { graded: true }))
        .count();
    RulingStats {
        switches,
        graded_returns,
        graded_departures,
        j: switches as i64 - c as i64,
        r: graded_returns as i64 + if m == 1 { c as i64 } else { 0 },
    }
}

/// The m-graded ruling polynomial, sum of z^j over rulings.
pub fn ruling_polynomial(d: &FrontDiagram, mu: &MaslovPotential, m: i64) -> Result<LaurentPoly> {
    let rulings = enumerate_rulings(d, mu, m)?;
    let mut poly = LaurentPoly::zero();
    for r in &rulings {
        poly.add_term(ruling_stats(d, r, m).j, 1);
    }
    Ok(poly)
}

/// Count of ordered pair interactions of the disks of a gap pairing, used by
/// the degree bookkeeping checks. For disjoint disks the upper one must sit
/// one above in potential; nested disks must agree.
pub fn pairing_profile(pairing_1b: &[usize], mu_at: &dyn Fn(usize) -> i64, m: i64) -> i64 {
    let s = pairing_1b.len() - 1;
    let mut disks: Vec<(usize, usize)> = Vec::new();
    for p in 1..=s {
        let q = pairing_1b[p];
        if p < q {
            disks.push((p, q));
        }
    }
    let cong = |x: i64, y: i64| if m == 0 { x == y } else { (x - y).rem_euclid(m) == 0 };
    let mut total = 0i64;
    for (idx, &(i1, j1)) in disks.iter().enumerate() {
        for &(i2, j2) in disks.iter().skip(idx + 1) {
            let m1 = mu_at(i1);
            let m2 = mu_at(i2);
            if j1 < i2 {
                // First disk above.
                if cong(m1, m2 + 1) {
                    total += 1;
                }
            } else if j2 < i1 {
                if cong(m2, m1 + 1) {
                    total += 1;
                }
            } else if (i1 < i2 && j2 < j1) || (i2 < i1 && j1 < j2) {
                if cong(m1, m2) {
                    total += 1;
                }
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::parse_front;

    fn setup(text: &str) -> (FrontDiagram, MaslovPotential) {
        let d = parse_front(text).unwrap();
        let mu = MaslovPotential::compute(&d);
        (d, mu)
    }

    #[test]
    fn unknot_single_ruling() {
        let (d, mu) = setup("L 1\nR 1\n");
        let rulings = enumerate_rulings(&d, &mu, 0).unwrap();
        assert_eq!(rulings.len(), 1);
        assert_eq!(rulings[0].mask, 0);
        assert_eq!(ruling_stats(&d, &rulings[0], 0).j, -1);
        assert_eq!(ruling_polynomial(&d, &mu, 0).unwrap(), LaurentPoly::monomial(-1, 1));
    }

    #[test]
    fn trefoil_rulings_and_polynomial() {
        let (d, mu) = setup("L 1\nL 3\nX 2\nX 2\nX 2\nR 1\nR 1\n");
        let rulings = enumerate_rulings(&d, &mu, 0).unwrap();
        let masks: Vec<u64> = rulings.iter().map(|r| r.mask).collect();
        assert_eq!(masks, vec![0b001, 0b100, 0b111]);
        let js: Vec<i64> = rulings.iter().map(|r| ruling_stats(&d, r, 0).j).collect();
        assert_eq!(js, vec![-1, -1, 1]);
        // Switch only at the first crossing: the second departs, the third
        // returns in crossed position.
        assert_eq!(
            rulings[0].classes,
            vec![
                CrossingClass::Switch(SwitchKind::S1),
                CrossingClass::Departure { graded: true },
                CrossingClass::Return { kind: ReturnKind::R1, graded: true },
            ]
        );
        assert_eq!(
            rulings[1].classes,
            vec![
                CrossingClass::Departure { graded: true },
                CrossingClass::Return { kind: ReturnKind::R1, graded: true },
                CrossingClass::Switch(SwitchKind::S1),
            ]
        );
        let mut expect = LaurentPoly::monomial(1, 1);
        expect.add_term(-1, 2);
        assert_eq!(ruling_polynomial(&d, &mu, 0).unwrap(), expect);
        // 2-graded rulings agree here: all degrees are zero.
        assert_eq!(ruling_polynomial(&d, &mu, 2).unwrap(), expect);
    }

    #[test]
    fn hopf_rulings_with_zero_degree_offsets() {
        let (d, mu) = {
            let d = parse_front("L 1\nL 3\nX 2\nX 2\nR 1\nR 1\noffsets: 0 -1\n").unwrap();
            let mu = MaslovPotential::compute(&d);
            (d, mu)
        };
        let rulings = enumerate_rulings(&d, &mu, 0).unwrap();
        let masks: Vec<u64> = rulings.iter().map(|r| r.mask).collect();
        assert_eq!(masks, vec![0b00, 0b11]);
        let stats: Vec<RulingStats> = rulings.iter().map(|r| ruling_stats(&d, r, 0)).collect();
        assert_eq!((stats[0].j, stats[0].graded_returns), (-2, 1));
        assert_eq!((stats[1].j, stats[1].graded_returns), (0, 0));
        let mut expect = LaurentPoly::monomial(0, 1);
        expect.add_term(-2, 1);
        assert_eq!(ruling_polynomial(&d, &mu, 0).unwrap(), expect);
    }

    #[test]
    fn hopf_rulings_with_default_offsets() {
        let (d, mu) = setup("L 1\nL 3\nX 2\nX 2\nR 1\nR 1\n");
        // Degrees are -1 and +1: no switches available, one ruling survives.
        let rulings = enumerate_rulings(&d, &mu, 0).unwrap();
        assert_eq!(rulings.len(), 1);
        assert_eq!(rulings[0].mask, 0);
        let st = ruling_stats(&d, &rulings[0], 0);
        assert_eq!((st.j, st.graded_returns), (-2, 0));
    }

    #[test]
    fn stabilized_diagrams_have_no_rulings() {
        let (d, mu) = setup("L 1\nL 3\nX 2\nX 3\nR 1\nR 1\n");
        for m in [1, 2] {
            assert!(enumerate_rulings(&d, &mu, m).unwrap().is_empty());
        }
        let (d, mu) = setup("L 1\nL 3\nL 5\nX 2\nX 2\nX 2\nX 4\nX 5\nR 1\nR 1\nR 1\n");
        for m in [1, 2] {
            assert!(enumerate_rulings(&d, &mu, m).unwrap().is_empty());
        }
    }

    #[test]
    fn m_one_adds_cusps_to_r() {
        let (d, mu) = setup("L 1\nL 3\nX 2\nX 2\nX 2\nR 1\nR 1\n");
        let rulings = enumerate_rulings(&d, &mu, 1).unwrap();
        assert_eq!(rulings.len(), 3);
        for r in &rulings {
            let s0 = ruling_stats(&d, r, 0);
            let s1 = ruling_stats(&d, r, 1);
            assert_eq!(s1.r, s0.r + 2);
        }
    }

    #[test]
    fn mask_reconstruction_round_trip() {
        let (d, mu) = setup("L 1\nL 3\nX 2\nX 2\nX 2\nR 1\nR 1\n");
        for r in enumerate_rulings(&d, &mu, 0).unwrap() {
            let again = ruling_from_mask(&d, &mu, 0, r.mask).unwrap();
            assert_eq!(again.pairings, r.pairings);
            assert_eq!(again.classes, r.classes);
        }
        assert!(ruling_from_mask(&d, &mu, 0, 0b010).is_err());
        assert!(ruling_from_mask(&d, &mu, 0, 0b011).is_err());
    }

    #[test]
    fn grading_checked() {
        let (d, mu) = setup("L 1\nL 3\nX 2\nX 3\nR 1\nR 1\n");
        assert!(matches!(enumerate_rulings(&d, &mu, 0), Err(Error::Grading { .. })));
    }

    #[test]
    fn profile_counts_disjoint_and_nested() {
        // Pairing {(1,4),(2,3)} nested, {(1,2),(3,4)} disjoint.
        let nested = vec![0, 4, 3, 2, 1];
        let disjoint = vec![0, 2, 1, 4, 3];
        let mu0 = |_: usize| 0i64;
        assert_eq!(pairing_profile(&nested, &mu0, 0), 1);
        assert_eq!(pairing_profile(&disjoint, &mu0, 0), 0);
        let mu_step = move |p: usize| if p == 1 { 1i64 } else { 0 };
        assert_eq!(pairing_profile(&disjoint, &mu_step, 0), 1);
        assert_eq!(pairing_profile(&nested, &mu_step, 0), 0);
    }
}
