//! The Chekanov-Eliashberg algebra of a plat front, with coefficients in
//! Z[t_1^{±1}, ..., t_c^{±1}].
//!
//! Generators are the crossings (degree from the Maslov potential) and the
//! right cusps (degree 1). The differential counts immersed disks; for plat
//! fronts every disk is found by sweeping a pair of boundary paths leftward
//! from the generator, so no Lagrangian resolution is materialized.

use crate::front::{FrontDiagram, FrontEvent};
use crate::maslov::MaslovPotential;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    Crossing,
    RightCusp,
    /// Added by an algebra stabilization, not tied to a front event.
    Stabilizer,
}

pub type GenId = usize;

#[derive(Clone, Debug, Serialize)]
pub struct GenInfo {
    pub name: String,
    pub kind: GenKind,
    /// Event index in the front.
    pub event: usize,
    /// Degree, reduced mod 2r when r(L) != 0.
    pub degree: i64,
}

/// A sum of words coeff * t^e * g_1 ... g_n. Letters do not commute;
/// the t variables are central. Keys are (letters, t exponent vector).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    pub terms: BTreeMap<(Vec<GenId>, Vec<i64>), i64>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, letters: Vec<GenId>, t_exp: Vec<i64>, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry((letters, t_exp)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }
}

/// One concave corner of a swept disk. `upper` means the turn happened on the
/// upper boundary path, so the disk covers the south quadrant of the crossing.
#[derive(Clone, Copy, Debug)]
pub(crate) struct DiskCorner {
    pub event: usize,
    pub upper: bool,
}

/// Enumerate the disks whose two boundary paths start at positions (u, l)
/// in `gap` and run leftward, closing at a left cusp. Corners are reported
/// in sweep order (right to left). Used both for the differential and as an
/// independent oracle for Morse complex entries.
pub(crate) fn sweep_half_disks(
    d: &FrontDiagram,
    gap: usize,
    u: usize,
    l: usize,
    visit: &mut dyn FnMut(&[DiskCorner]),
) {
    assert!(u < l, "path positions must be ordered");
    let mut stack = Vec::new();
    descend(d, gap, u, l, &mut stack, visit);
}

fn descend(
    d: &FrontDiagram,
    gap: usize,
    u: usize,
    l: usize,
    stack: &mut Vec<DiskCorner>,
    visit: &mut dyn FnMut(&[DiskCorner]),
) {
    if gap == 0 {
        // Paths ran off the left edge without closing; impossible on a
        // closed plat, so the caller handed us inconsistent positions.
        unreachable!("disk sweep escaped the diagram");
    }
    let ev = gap - 1;
    match d.events()[ev] {
        FrontEvent::LeftCusp(k) => {
            if u == k && l == k + 1 {
                visit(stack);
                return;
            }
            if u == k || u == k + 1 || l == k || l == k + 1 {
                return;
            }
            let shift = |p: usize| if p > k + 1 { p - 2 } else { p };
            descend(d, ev, shift(u), shift(l), stack, visit);
        }
        FrontEvent::RightCusp(k) => {
            let shift = |p: usize| if p >= k { p + 2 } else { p };
            descend(d, ev, shift(u), shift(l), stack, visit);
        }
        FrontEvent::Crossing(k) => {
            if u == k && l == k + 1 {
                // Paths meeting at a crossing would need a second convex
                // corner there; no such disk exists.
                return;
            }
            // Each path either passes through the crossing or turns at it.
            // Upper path: a turn covers the south quadrant, only possible
            // arriving on the lower strand. Lower path: mirror image.
            let u_opts: &[(usize, bool)] = if u == k {
                &[(k + 1, false)]
            } else if u == k + 1 {
                &[(k + 1, true), (k, false)]
            } else {
                &[(u, false)]
            };
            for &(u2, u_turn) in u_opts {
                let l_opts: &[(usize, bool)] = if l == k {
                    &[(k, true), (k + 1, false)]
                } else if l == k + 1 {
                    &[(k, false)]
                } else {
                    &[(l, false)]
                };
                for &(l2, l_turn) in l_opts {
                    if u_turn {
                        stack.push(DiskCorner { event: ev, upper: true });
                    }
                    if l_turn {
                        stack.push(DiskCorner { event: ev, upper: false });
                    }
                    descend(d, ev, u2, l2, stack, visit);
                    if l_turn {
                        stack.pop();
                    }
                    if u_turn {
                        stack.pop();
                    }
                }
            }
        }
    }
}

#[derive(Clone)]
pub struct Dga {
    pub front: FrontDiagram,
    pub mu: MaslovPotential,
    pub gens: Vec<GenInfo>,
    /// Event index -> generator id.
    pub by_event: BTreeMap<usize, GenId>,
    pub diffs: Vec<Poly>,
}

impl Dga {
    pub fn new(front: &FrontDiagram) -> Dga {
        let mu = MaslovPotential::compute(front);
        let mut gens = Vec::new();
        let mut by_event = BTreeMap::new();
        let mut n_q = 0;
        let mut n_b = 0;
        for (ev, &e) in front.events().iter().enumerate() {
            match e {
                FrontEvent::Crossing(_) => {
                    n_q += 1;
                    by_event.insert(ev, gens.len());
                    gens.push(GenInfo {
                        name: format!("q{n_q}"),
                        kind: GenKind::Crossing,
                        event: ev,
                        degree: mu.crossing_degree(front, ev),
                    });
                }
                FrontEvent::RightCusp(_) => {
                    n_b += 1;
                    by_event.insert(ev, gens.len());
                    gens.push(GenInfo {
                        name: format!("b{n_b}"),
                        kind: GenKind::RightCusp,
                        event: ev,
                        degree: 1,
                    });
                }
                FrontEvent::LeftCusp(_) => {}
            }
        }
        let mut dga = Dga {
            front: front.clone(),
            mu,
            gens,
            by_event,
            diffs: Vec::new(),
        };
        dga.diffs = (0..dga.gens.len()).map(|g| dga.boundary(g)).collect();
        dga
    }

    pub fn n_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_by_name(&self, name: &str) -> Option<GenId> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// The differential of a single generator, computed from the disk sweep.
    fn boundary(&self, g: GenId) -> Poly {
        let info = &self.gens[g];
        let ev = info.event;
        let k = self.front.events()[ev].pos();
        let c = self.front.n_components();
        let mut out = Poly::zero();

        if info.kind == GenKind::RightCusp {
            // The disk to the right of the cusp: weight t_i^{l} at a marked
            // cusp, 1 otherwise.
            let mut t_exp = vec![0i64; c];
            if self.front.marked().contains(&ev) {
                t_exp[self.front.cusp_component(ev)] = self.front.cusp_ell(ev);
            }
            out.add_term(Vec::new(), t_exp, 1);
        }

        // Every swept word carries a constant sign: for a crossing generator
        // the product of the sign of its initial arc and the orientation sign
        // of the west quadrant; for a right cusp the constant is +1.
        let base = match info.kind {
            GenKind::Crossing => self.front.crossing_sign0(ev),
            GenKind::RightCusp => 1,
            GenKind::Stabilizer => unreachable!("stabilizers carry explicit differentials"),
        };

        let front = &self.front;
        sweep_half_disks(front, ev, k, k + 1, &mut |corners| {
            let mut sign = base;
            let mut uppers = Vec::new();
            let mut lowers = Vec::new();
            for corner in corners {
                let a = front.alpha(corner.event);
                // south quadrant carries the orientation sign alpha,
                // north carries -alpha
                sign *= if corner.upper { a } else { -a };
                let id = self.by_event[&corner.event];
                if corner.upper {
                    uppers.push(id);
                } else {
                    lowers.push(id);
                }
            }
            // Counterclockwise from the positive corner: upper boundary
            // right-to-left, then lower boundary left-to-right.
            lowers.reverse();
            uppers.extend(lowers);
            out.add_term(uppers, vec![0i64; c], sign);
        });
        out
    }

    pub fn differential(&self, g: GenId) -> &Poly {
        &self.diffs[g]
    }

    /// Algebra stabilization: adjoin a pair x (the given degree) and y (one
    /// lower) with dx = y, dy = 0. The front is untouched, so the new
    /// generators sit past the last event and never enter a disk sweep.
    pub fn stabilized(&self, degree: i64) -> Dga {
        let mut out = self.clone();
        let modulus = out.mu.modulus();
        let reduce = |d: i64| if modulus > 0 { d.rem_euclid(modulus) } else { d };
        let k = 1 + out.gens.iter().filter(|g| g.kind == GenKind::Stabilizer).count() / 2;
        let x = out.gens.len();
        let y = x + 1;
        out.gens.push(GenInfo {
            name: format!("x{k}"),
            kind: GenKind::Stabilizer,
            event: out.front.n_events() + 2 * k - 2,
            degree: reduce(degree),
        });
        out.gens.push(GenInfo {
            name: format!("y{k}"),
            kind: GenKind::Stabilizer,
            event: out.front.n_events() + 2 * k - 1,
            degree: reduce(degree - 1),
        });
        let c = out.front.n_components();
        let mut dx = Poly::zero();
        dx.add_term(vec![y], vec![0; c], 1);
        out.diffs.push(dx);
        out.diffs.push(Poly::zero());
        out
    }

    /// Extend the differential to an arbitrary word by the Leibniz rule
    /// d(xy) = (dx) y + (-1)^{|x|} x (dy).
    pub fn boundary_word(&self, letters: &[GenId], t_exp: &[i64], coeff: i64) -> Poly {
        let mut out = Poly::zero();
        let mut prefix_deg = 0i64;
        for (i, &g) in letters.iter().enumerate() {
            let sign = if prefix_deg.rem_euclid(2) == 1 { -1 } else { 1 };
            for ((mid, mid_t), &mc) in &self.diffs[g].terms {
                let mut word = letters[..i].to_vec();
                word.extend_from_slice(mid);
                word.extend_from_slice(&letters[i + 1..]);
                let t: Vec<i64> = t_exp.iter().zip(mid_t).map(|(a, b)| a + b).collect();
                out.add_term(word, t, coeff * sign * mc);
            }
            prefix_deg += self.gens[g].degree;
        }
        out
    }

    pub fn boundary_poly(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for ((letters, t_exp), &coeff) in &p.terms {
            let d = self.boundary_word(letters, t_exp, coeff);
            for ((w, t), &cc) in &d.terms {
                out.add_term(w.clone(), t.clone(), cc);
            }
        }
        out
    }

    /// Degree of a word (t variables have degree 0), reduced like the
    /// generator degrees.
    pub fn word_degree(&self, letters: &[GenId]) -> i64 {
        let total: i64 = letters.iter().map(|&g| self.gens[g].degree).sum();
        let modulus = self.mu.modulus();
        if modulus > 0 {
            total.rem_euclid(modulus)
        } else {
            total
        }
    }

    /// Generators that occur as a letter in some differential.
    pub fn support(&self) -> BTreeSet<GenId> {
        let mut s = BTreeSet::new();
        for p in &self.diffs {
            for (letters, _) in p.terms.keys() {
                s.extend(letters.iter().copied());
            }
        }
        s
    }

    /// Render a polynomial with generator names, e.g. "t^-1 + q1 + q1q2q3".
    pub fn render(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let c = self.front.n_components();
        let mut parts = Vec::new();
        for ((letters, t_exp), &coeff) in &p.terms {
            let mut body = String::new();
            for (i, &e) in t_exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let var = if c == 1 {
                    "t".to_string()
                } else {
                    format!("t{}", i + 1)
                };
                if e == 1 {
                    body.push_str(&var);
                } else {
                    body.push_str(&format!("{var}^{e}"));
                }
            }
            for &g in letters {
                body.push_str(&self.gens[g].name);
            }
            let (sign, mag) = if coeff < 0 {
                ("-", -coeff)
            } else {
                ("+", coeff)
            };
            let mag_str = if mag == 1 && !body.is_empty() {
                String::new()
            } else {
                mag.to_string()
            };
            let term = format!("{mag_str}{body}");
            let term = if term.is_empty() { "1".into() } else { term };
            parts.push((sign, term));
        }
        let mut out = String::new();
        for (i, (sign, term)) in parts.iter().enumerate() {
            if i == 0 {
                if *sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if *sign == "-" { " - " } else { " + " });
            }
            out.push_str(term);
        }
        out
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenKind::Crossing => write!(f, "crossing"),
            GenKind::RightCusp => write!(f, "right_cusp"),
            GenKind::Stabilizer => write!(f, "stabilizer"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::parse_front;

    fn load(name: &str) -> FrontDiagram {
        let path = format!("{}/../../fronts/{name}.front", env!("CARGO_MANIFEST_DIR"));
        parse_front(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    #[test]
    fn unknot_differential() {
        let dga = Dga::new(&load("unknot"));
        assert_eq!(dga.gens.len(), 1);
        assert_eq!(dga.gens[0].name, "b1");
        assert_eq!(dga.render(&dga.diffs[0]), "t^-1 + 1");
    }

    #[test]
    fn trefoil_differential() {
        let dga = Dga::new(&load("trefoil"));
        let names: Vec<_> = dga.gens.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["q1", "q2", "q3", "b1", "b2"]);
        for q in 0..3 {
            assert!(dga.diffs[q].is_zero());
            assert_eq!(dga.gens[q].degree, 0);
        }
        assert_eq!(dga.render(&dga.diffs[3]), "t^-1 + q1 + q1q2q3 + q3");
        assert_eq!(dga.render(&dga.diffs[4]), "1 - q1 - q3 - q3q2q1");
    }

    #[test]
    fn hopf_differential() {
        let dga = Dga::new(&load("hopf"));
        assert!(dga.diffs[0].is_zero());
        assert!(dga.diffs[1].is_zero());
        assert_eq!(dga.render(&dga.diffs[2]), "t1^-1 + 1 - q1q2");
        assert_eq!(dga.render(&dga.diffs[3]), "t2^-1 + 1 - q2q1");
    }

    #[test]
    fn kink_differential() {
        let d = parse_front("L 1\nX 1\nR 1\n").unwrap();
        let dga = Dga::new(&d);
        assert_eq!(dga.render(&dga.diffs[0]), "1");
        assert_eq!(dga.gens[0].degree, 1);
        assert_eq!(dga.render(&dga.diffs[1]), "t");
    }

    #[test]
    fn differential_drops_degree_by_one() {
        for name in ["unknot", "hopf", "trefoil", "stab_unknot", "stab_trefoil"] {
            let dga = Dga::new(&load(name));
            let modulus = dga.mu.modulus();
            for (g, poly) in dga.diffs.iter().enumerate() {
                let expect = dga.gens[g].degree - 1;
                for (letters, _) in poly.terms.keys() {
                    let got = dga.word_degree(letters);
                    if modulus > 0 {
                        assert_eq!(got, expect.rem_euclid(modulus), "{name} gen {g}");
                    } else {
                        assert_eq!(got, expect, "{name} gen {g}");
                    }
                }
            }
        }
    }

    #[test]
    fn differential_squares_to_zero() {
        for name in ["unknot", "hopf", "trefoil", "stab_unknot", "stab_trefoil"] {
            let dga = Dga::new(&load(name));
            for g in 0..dga.n_gens() {
                let dd = dga.boundary_poly(&dga.diffs[g]);
                assert!(
                    dd.is_zero(),
                    "{name}: d^2({}) = {}",
                    dga.gens[g].name,
                    dga.render(&dd)
                );
            }
        }
    }

    #[test]
    fn support_excludes_cusps() {
        for name in ["unknot", "hopf", "trefoil", "stab_unknot", "stab_trefoil"] {
            let dga = Dga::new(&load(name));
            for g in dga.support() {
                assert_eq!(dga.gens[g].kind, GenKind::Crossing, "{name}");
            }
        }
    }
}
