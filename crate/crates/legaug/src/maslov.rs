//! Maslov potentials and crossing degrees.
//!
//! The potential lives on strand segments, jumps by one across every cusp
//! (upper strand = lower strand + 1) and is constant along strands through
//! crossings. It is valued in Z when every rotation number vanishes and in
//! Z / 2r(L) otherwise. Each component is anchored at the lower strand of its
//! first left cusp, which gets the component's offset.

use crate::error::{Error, Result};
use crate::front::{FrontDiagram, FrontEvent};

#[derive(Clone, Debug)]
pub struct MaslovPotential {
    /// 2 r(L); zero means Z-valued.
    modulus: i64,
    /// Potential per segment, indexed [gap][pos - 1], normalized to
    /// 0..modulus when the modulus is positive.
    mu: Vec<Vec<i64>>,
}

impl MaslovPotential {
    pub fn compute(d: &FrontDiagram) -> MaslovPotential {
        let modulus = 2 * d.rotation_gcd();
        let n = d.n_events();
        let mut mu: Vec<Vec<Option<i64>>> =
            (0..=n).map(|g| vec![None; d.strand_count(g)]).collect();

        // Seed the anchors, then propagate along the segment adjacency.
        let mut queue: Vec<(usize, usize, i64)> = Vec::new();
        for c in 0..d.n_components() {
            let e0 = d.first_left_cusp(c);
            let k0 = d.events()[e0].pos();
            queue.push((e0 + 1, k0 + 1, d.offsets()[c]));
        }
        while let Some((g, p, v)) = queue.pop() {
            match &mut mu[g][p - 1] {
                Some(old) => {
                    let diff = *old - v;
                    let ok = if modulus == 0 { diff == 0 } else { diff.rem_euclid(modulus) == 0 };
                    assert!(ok, "inconsistent Maslov potential at gap {g} pos {p}");
                    continue;
                }
                slot => *slot = Some(v),
            }
            // Neighbours with their relative potential.
            for (g2, p2, v2) in neighbours(d, g, p, v) {
                if mu[g2][p2 - 1].is_none() {
                    queue.push((g2, p2, v2));
                } else {
                    let old = mu[g2][p2 - 1].unwrap();
                    let diff = old - v2;
                    let ok = if modulus == 0 { diff == 0 } else { diff.rem_euclid(modulus) == 0 };
                    assert!(ok, "inconsistent Maslov potential at gap {g2} pos {p2}");
                }
            }
        }

        let mu = mu
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        let v = v.expect("potential reaches every segment");
                        if modulus > 0 {
                            v.rem_euclid(modulus)
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        MaslovPotential { modulus, mu }
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn mu(&self, gap: usize, pos: usize) -> i64 {
        self.mu[gap][pos - 1]
    }

    /// Degree of a crossing generator: potential of the overstrand minus the
    /// understrand, read in the gap left of the event.
    pub fn crossing_degree(&self, d: &FrontDiagram, event: usize) -> i64 {
        let k = d.events()[event].pos();
        let raw = self.mu(event, k) - self.mu(event, k + 1);
        if self.modulus > 0 {
            raw.rem_euclid(self.modulus)
        } else {
            raw
        }
    }

    /// Is a degree zero mod m (equal to zero when m = 0)?
    pub fn is_graded(&self, degree: i64, m: i64) -> bool {
        if m == 0 {
            degree == 0
        } else {
            degree.rem_euclid(m) == 0
        }
    }
}

fn neighbours(d: &FrontDiagram, g: usize, p: usize, v: i64) -> Vec<(usize, usize, i64)> {
    let mut out = Vec::new();
    let n = d.n_events();
    // Rightward across event g.
    if g < n {
        match d.events()[g] {
            FrontEvent::Crossing(k) => {
                let p2 = if p == k {
                    k + 1
                } else if p == k + 1 {
                    k
                } else {
                    p
                };
                out.push((g + 1, p2, v));
            }
            FrontEvent::LeftCusp(k) => {
                let p2 = if p >= k { p + 2 } else { p };
                out.push((g + 1, p2, v));
            }
            FrontEvent::RightCusp(k) => {
                if p == k {
                    out.push((g, k + 1, v - 1));
                } else if p == k + 1 {
                    out.push((g, k, v + 1));
                } else {
                    let p2 = if p > k + 1 { p - 2 } else { p };
                    out.push((g + 1, p2, v));
                }
            }
        }
    }
    // Leftward across event g - 1.
    if g > 0 {
        match d.events()[g - 1] {
            FrontEvent::Crossing(k) => {
                let p2 = if p == k {
                    k + 1
                } else if p == k + 1 {
                    k
                } else {
                    p
                };
                out.push((g - 1, p2, v));
            }
            FrontEvent::RightCusp(k) => {
                let p2 = if p >= k { p + 2 } else { p };
                out.push((g - 1, p2, v));
            }
            FrontEvent::LeftCusp(k) => {
                if p == k {
                    out.push((g, k + 1, v - 1));
                } else if p == k + 1 {
                    out.push((g, k, v + 1));
                } else if p > k + 1 {
                    out.push((g - 1, p - 2, v));
                } else {
                    out.push((g - 1, p, v));
                }
            }
        }
    }
    out
}

/// A grading modulus is valid when it is nonnegative, divides 2 r(L), and is
/// only zero when r(L) is zero.
pub fn check_grading(d: &FrontDiagram, m: i64) -> Result<()> {
    let r = d.rotation_gcd();
    let ok = if m == 0 {
        r == 0
    } else {
        m > 0 && (2 * r) % m == 0
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Grading { m, r })
    }
}

/// Grading moduli worth enumerating for a diagram: divisors of 2 r(L), with
/// 0, 1, 2 standing in when the rotation number vanishes.
pub fn grading_moduli(d: &FrontDiagram) -> Vec<i64> {
    let r = d.rotation_gcd();
    if r == 0 {
        vec![0, 1, 2]
    } else {
        let two_r = 2 * r;
        (1..=two_r).filter(|m| two_r % m == 0).collect()
    }
}
