//! Plat front diagrams: events, strands, components, orientation.
//!
//! A diagram is a word of events read left to right. Strand positions count
//! from the top, starting at 1, inside the gap where the event sits.
//!
//! ```text
//!   L k   left cusp inserting strands at positions k, k+1
//!   X k   crossing of the strands at positions k, k+1
//!   R k   right cusp closing the strands at positions k, k+1
//! ```
//!
//! Events must come in phases: all left cusps, then all crossings, then all
//! right cusps, and every cusp must sit at an odd position. Together these say
//! the diagram is a small perturbation of a plat: sliding all left cusps back
//! onto one vertical line (and all right cusps onto another) pairs the strands
//! there as (1,2), (3,4), ..., and a cusp at an even position would split one
//! of those pairs. Gap g is the region just left of event g, so gaps run from
//! 0 (left of everything, empty) to n (right of everything, empty).
//!
//! The text format also accepts `# comment`, `offsets: o1 o2 ...` (one Maslov
//! offset per component) and `mark <comp> <ordinal>` (pick the ordinal-th
//! right cusp of a component as its marked one). Components are numbered 1, 2,
//! ... in order of their first left cusp.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrontEvent {
    LeftCusp(usize),
    Crossing(usize),
    RightCusp(usize),
}

impl FrontEvent {
    pub fn pos(self) -> usize {
        match self {
            FrontEvent::LeftCusp(k) | FrontEvent::Crossing(k) | FrontEvent::RightCusp(k) => k,
        }
    }
}

/// Traversal direction of an oriented strand segment.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Dir {
    Right,
    Left,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller id as root so component numbering follows
            // first appearance.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[derive(Clone, Debug)]
pub struct FrontDiagram {
    events: Vec<FrontEvent>,
    strand_counts: Vec<usize>,
    /// Component id (0-based) of each segment, indexed [gap][pos - 1].
    comp: Vec<Vec<usize>>,
    /// Traversal direction of each segment.
    dir: Vec<Vec<Dir>>,
    /// Rotation number of each component under the chosen orientation.
    rotations: Vec<i64>,
    /// Event index of each component's first left cusp.
    first_left_cusp: Vec<usize>,
    /// Event index of each component's marked right cusp.
    marked: Vec<usize>,
    /// Default marked cusps (first right cusp per component).
    marked_default: Vec<usize>,
    /// Maslov offset per component.
    offsets: Vec<i64>,
    /// Orientation reversal flag per component.
    flips: Vec<bool>,
    /// For each right cusp event: +1 if the traversal passes it upper to
    /// lower, -1 otherwise. None for other events.
    ell: Vec<Option<i8>>,
    crossings: Vec<usize>,
    left_cusps: Vec<usize>,
    right_cusps: Vec<usize>,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl FrontDiagram {
    pub fn new(
        events: Vec<FrontEvent>,
        offsets: Option<Vec<i64>>,
        mark_overrides: &[(usize, usize)],
        flips: Option<Vec<bool>>,
    ) -> Result<Self> {
        if events.is_empty() {
            return Err(Error::Shape("diagram has no events".into()));
        }
        let n = events.len();

        // Phase order and strand counts.
        let mut counts = Vec::with_capacity(n + 1);
        counts.push(0usize);
        let mut phase = 0u8;
        for (i, ev) in events.iter().enumerate() {
            let s = counts[i];
            let ev_phase = match ev {
                FrontEvent::LeftCusp(_) => 0,
                FrontEvent::Crossing(_) => 1,
                FrontEvent::RightCusp(_) => 2,
            };
            if ev_phase < phase {
                return Err(Error::Shape(format!(
                    "event {} breaks the left cusps, crossings, right cusps order",
                    i + 1
                )));
            }
            phase = ev_phase;
            let k = ev.pos();
            let next = match ev {
                FrontEvent::LeftCusp(_) => {
                    if k < 1 || k > s + 1 {
                        return Err(Error::Shape(format!("left cusp at {k} with {s} strands")));
                    }
                    if k % 2 == 0 {
                        return Err(Error::Shape(format!(
                            "left cusp at even position {k} splits a plat cusp pair"
                        )));
                    }
                    s + 2
                }
                FrontEvent::Crossing(_) => {
                    if k < 1 || k + 1 > s {
                        return Err(Error::Shape(format!("crossing at {k} with {s} strands")));
                    }
                    s
                }
                FrontEvent::RightCusp(_) => {
                    if k < 1 || k + 1 > s {
                        return Err(Error::Shape(format!("right cusp at {k} with {s} strands")));
                    }
                    if k % 2 == 0 {
                        return Err(Error::Shape(format!(
                            "right cusp at even position {k} splits a plat cusp pair"
                        )));
                    }
                    s - 2
                }
            };
            counts.push(next);
        }
        if counts[n] != 0 {
            return Err(Error::Shape(format!("{} strands remain open on the right", counts[n])));
        }

        // Global segment ids.
        let seg_base: Vec<usize> = {
            let mut base = Vec::with_capacity(n + 1);
            let mut acc = 0;
            for g in 0..=n {
                base.push(acc);
                acc += counts[g];
            }
            base
        };
        let total_segs = seg_base[n] + counts[n];
        let seg = |g: usize, p: usize| seg_base[g] + (p - 1);

        // Components.
        let mut uf = UnionFind::new(total_segs);
        for (e, ev) in events.iter().enumerate() {
            let g = e;
            let k = ev.pos();
            match *ev {
                FrontEvent::Crossing(_) => {
                    for p in 1..=counts[g] {
                        let p2 = if p == k {
                            k + 1
                        } else if p == k + 1 {
                            k
                        } else {
                            p
                        };
                        uf.union(seg(g, p), seg(g + 1, p2));
                    }
                }
                FrontEvent::LeftCusp(_) => {
                    for p in 1..=counts[g] {
                        let p2 = if p >= k { p + 2 } else { p };
                        uf.union(seg(g, p), seg(g + 1, p2));
                    }
                    uf.union(seg(g + 1, k), seg(g + 1, k + 1));
                }
                FrontEvent::RightCusp(_) => {
                    uf.union(seg(g, k), seg(g, k + 1));
                    for p in 1..=counts[g] {
                        if p == k || p == k + 1 {
                            continue;
                        }
                        let p2 = if p > k + 1 { p - 2 } else { p };
                        uf.union(seg(g, p), seg(g + 1, p2));
                    }
                }
            }
        }
        let mut comp_of_root: Vec<Option<usize>> = vec![None; total_segs];
        let mut n_comps = 0usize;
        let mut comp = Vec::with_capacity(n + 1);
        for g in 0..=n {
            let mut row = Vec::with_capacity(counts[g]);
            for p in 1..=counts[g] {
                let root = uf.find(seg(g, p));
                let c = *comp_of_root[root].get_or_insert_with(|| {
                    let c = n_comps;
                    n_comps += 1;
                    c
                });
                row.push(c);
            }
            comp.push(row);
        }

        let flips = flips.unwrap_or_else(|| vec![false; n_comps]);
        if flips.len() != n_comps {
            return Err(Error::Shape(format!(
                "{} orientation flags for {} components",
                flips.len(),
                n_comps
            )));
        }

        // First left cusp per component.
        let mut first_left_cusp = vec![usize::MAX; n_comps];
        for (e, ev) in events.iter().enumerate() {
            if let FrontEvent::LeftCusp(k) = ev {
                let c = comp[e + 1][k - 1];
                if first_left_cusp[c] == usize::MAX {
                    first_left_cusp[c] = e;
                }
            }
        }

        // Orientation walk per component.
        let mut dir: Vec<Vec<Option<Dir>>> = counts.iter().map(|&s| vec![None; s]).collect();
        let mut rotations = vec![0i64; n_comps];
        let mut ell: Vec<Option<i8>> = vec![None; n];
        for c in 0..n_comps {
            let e0 = first_left_cusp[c];
            let k0 = events[e0].pos();
            let (mut g, mut p, mut d) = if flips[c] {
                (e0 + 1, k0 + 1, Dir::Left)
            } else {
                (e0 + 1, k0 + 1, Dir::Right)
            };
            let start = (g, p, d);
            let mut wrap_sum = 0i64;
            loop {
                assert!(dir[g][p - 1].is_none(), "segment visited twice");
                dir[g][p - 1] = Some(d);
                let (ng, np, nd, wrap) = step(&events, g, p, d);
                if let Some((ev_idx, updown)) = wrap {
                    wrap_sum += updown as i64;
                    if matches!(events[ev_idx], FrontEvent::RightCusp(_)) {
                        ell[ev_idx] = Some(updown);
                    }
                }
                (g, p, d) = (ng, np, nd);
                if (g, p, d) == start {
                    break;
                }
            }
            rotations[c] = wrap_sum / 2;
        }
        let dir: Vec<Vec<Dir>> =
            dir.into_iter().map(|row| row.into_iter().map(|d| d.expect("all segments traversed")).collect()).collect();

        let crossings: Vec<usize> = events
            .iter()
            .enumerate()
            .filter(|(_, e)| matches!(e, FrontEvent::Crossing(_)))
            .map(|(i, _)| i)
            .collect();
        let left_cusps: Vec<usize> = events
            .iter()
            .enumerate()
            .filter(|(_, e)| matches!(e, FrontEvent::LeftCusp(_)))
            .map(|(i, _)| i)
            .collect();
        let right_cusps: Vec<usize> = events
            .iter()
            .enumerate()
            .filter(|(_, e)| matches!(e, FrontEvent::RightCusp(_)))
            .map(|(i, _)| i)
            .collect();

        // Marked right cusps: default is the first right cusp per component.
        let mut marked_default = vec![usize::MAX; n_comps];
        for &e in &right_cusps {
            let k = events[e].pos();
            let c = comp[e][k - 1];
            if marked_default[c] == usize::MAX {
                marked_default[c] = e;
            }
        }
        debug_assert!(marked_default.iter().all(|&m| m != usize::MAX));
        let mut marked = marked_default.clone();
        for &(comp_1b, ordinal) in mark_overrides {
            if comp_1b == 0 || comp_1b > n_comps {
                return Err(Error::Mark(format!("component {comp_1b} of {n_comps}")));
            }
            let c = comp_1b - 1;
            let cusps: Vec<usize> =
                right_cusps.iter().copied().filter(|&e| comp[e][events[e].pos() - 1] == c).collect();
            if ordinal == 0 || ordinal > cusps.len() {
                return Err(Error::Mark(format!(
                    "component {comp_1b} has {} right cusps, asked for cusp {ordinal}",
                    cusps.len()
                )));
            }
            marked[c] = cusps[ordinal - 1];
        }

        let offsets = offsets.unwrap_or_else(|| vec![0; n_comps]);
        if offsets.len() != n_comps {
            return Err(Error::Shape(format!(
                "{} offsets for {} components",
                offsets.len(),
                n_comps
            )));
        }

        Ok(FrontDiagram {
            events,
            strand_counts: counts,
            comp,
            dir,
            rotations,
            first_left_cusp,
            marked,
            marked_default,
            offsets,
            flips,
            ell,
            crossings,
            left_cusps,
            right_cusps,
        })
    }

    pub fn events(&self) -> &[FrontEvent] {
        &self.events
    }
    pub fn n_events(&self) -> usize {
        self.events.len()
    }
    pub fn strand_count(&self, gap: usize) -> usize {
        self.strand_counts[gap]
    }
    pub fn n_components(&self) -> usize {
        self.rotations.len()
    }
    pub fn rotations(&self) -> &[i64] {
        &self.rotations
    }
    /// gcd of the component rotation numbers, 0 when all vanish.
    pub fn rotation_gcd(&self) -> i64 {
        self.rotations.iter().fold(0, |acc, &r| gcd(acc, r))
    }
    pub fn component(&self, gap: usize, pos: usize) -> usize {
        self.comp[gap][pos - 1]
    }
    pub fn direction(&self, gap: usize, pos: usize) -> Dir {
        self.dir[gap][pos - 1]
    }
    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }
    pub fn flips(&self) -> &[bool] {
        &self.flips
    }
    pub fn crossings(&self) -> &[usize] {
        &self.crossings
    }
    pub fn left_cusps(&self) -> &[usize] {
        &self.left_cusps
    }
    pub fn right_cusps(&self) -> &[usize] {
        &self.right_cusps
    }
    pub fn first_left_cusp(&self, c: usize) -> usize {
        self.first_left_cusp[c]
    }
    pub fn marked(&self) -> &[usize] {
        &self.marked
    }
    /// Component owning a right cusp event.
    pub fn cusp_component(&self, event: usize) -> usize {
        let k = self.events[event].pos();
        self.comp[event][k - 1]
    }
    /// +1 if the traversal passes this right cusp upper to lower, -1 if not.
    pub fn cusp_ell(&self, event: usize) -> i64 {
        self.ell[event].expect("right cusp event") as i64
    }
    pub fn component_right_cusps(&self, c: usize) -> Vec<usize> {
        self.right_cusps.iter().copied().filter(|&e| self.cusp_component(e) == c).collect()
    }

    /// Sign data of a crossing event: the strand entering at position k passes
    /// over; alpha is +1 when the understrand points left.
    pub fn alpha(&self, event: usize) -> i64 {
        let k = self.events[event].pos();
        match self.direction(event, k + 1) {
            Dir::Left => 1,
            Dir::Right => -1,
        }
    }

    /// Orientation constant multiplying every disk of a crossing generator.
    pub fn crossing_sign0(&self, event: usize) -> i64 {
        let k = self.events[event].pos();
        let over_left = matches!(self.direction(event, k), Dir::Left);
        let under_right = matches!(self.direction(event, k + 1), Dir::Right);
        (if over_left { 1 } else { -1 }) * (if under_right { 1 } else { -1 })
    }

    /// Same events with some components reversed (true = reverse).
    pub fn with_orientation(&self, flips: Vec<bool>) -> Result<FrontDiagram> {
        FrontDiagram::new(self.events.clone(), Some(self.offsets.clone()), &self.mark_directives(), Some(flips))
    }

    pub fn with_offsets(&self, offsets: Vec<i64>) -> Result<FrontDiagram> {
        FrontDiagram::new(self.events.clone(), Some(offsets), &self.mark_directives(), Some(self.flips.clone()))
    }

    fn mark_directives(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for c in 0..self.n_components() {
            if self.marked[c] != self.marked_default[c] {
                let cusps = self.component_right_cusps(c);
                let ordinal = cusps.iter().position(|&e| e == self.marked[c]).unwrap() + 1;
                out.push((c + 1, ordinal));
            }
        }
        out
    }

    /// Text form that `parse_front` reads back; orientation flips are not
    /// part of the format and are dropped.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for ev in &self.events {
            let (tag, k) = match ev {
                FrontEvent::LeftCusp(k) => ("L", k),
                FrontEvent::Crossing(k) => ("X", k),
                FrontEvent::RightCusp(k) => ("R", k),
            };
            out.push_str(&format!("{tag} {k}\n"));
        }
        if self.offsets.iter().any(|&o| o != 0) {
            let list: Vec<String> = self.offsets.iter().map(|o| o.to_string()).collect();
            out.push_str(&format!("offsets: {}\n", list.join(" ")));
        }
        for (comp, ordinal) in self.mark_directives() {
            out.push_str(&format!("mark {comp} {ordinal}\n"));
        }
        out
    }
}

/// One traversal step. Returns the next (gap, pos, dir) and, when the step
/// wraps around a cusp, the cusp event with +1 for an upper-to-lower pass.
fn step(events: &[FrontEvent], g: usize, p: usize, d: Dir) -> (usize, usize, Dir, Option<(usize, i8)>) {
    match d {
        Dir::Right => {
            let e = g;
            match events[e] {
                FrontEvent::Crossing(k) => {
                    let p2 = if p == k {
                        k + 1
                    } else if p == k + 1 {
                        k
                    } else {
                        p
                    };
                    (g + 1, p2, Dir::Right, None)
                }
                FrontEvent::LeftCusp(k) => {
                    let p2 = if p >= k { p + 2 } else { p };
                    (g + 1, p2, Dir::Right, None)
                }
                FrontEvent::RightCusp(k) => {
                    if p == k {
                        (g, k + 1, Dir::Left, Some((e, 1)))
                    } else if p == k + 1 {
                        (g, k, Dir::Left, Some((e, -1)))
                    } else {
                        let p2 = if p > k + 1 { p - 2 } else { p };
                        (g + 1, p2, Dir::Right, None)
                    }
                }
            }
        }
        Dir::Left => {
            let e = g - 1;
            match events[e] {
                FrontEvent::Crossing(k) => {
                    let p2 = if p == k {
                        k + 1
                    } else if p == k + 1 {
                        k
                    } else {
                        p
                    };
                    (g - 1, p2, Dir::Left, None)
                }
                FrontEvent::RightCusp(k) => {
                    let p2 = if p >= k { p + 2 } else { p };
                    (g - 1, p2, Dir::Left, None)
                }
                FrontEvent::LeftCusp(k) => {
                    if p == k {
                        (g, k + 1, Dir::Right, Some((e, 1)))
                    } else if p == k + 1 {
                        (g, k, Dir::Right, Some((e, -1)))
                    } else {
                        let p2 = if p > k + 1 { p - 2 } else { p };
                        (g - 1, p2, Dir::Left, None)
                    }
                }
            }
        }
    }
}

/// Raw content of a front file before diagram construction.
#[derive(Clone, Debug, Default)]
pub struct FrontSource {
    pub events: Vec<FrontEvent>,
    pub offsets: Option<Vec<i64>>,
    pub marks: Vec<(usize, usize)>,
}

pub fn parse_front_source(text: &str) -> Result<FrontSource> {
    let mut src = FrontSource::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |msg: &str| Error::Syntax { line: line_no, msg: msg.into() };
        if let Some(rest) = line.strip_prefix("offsets:") {
            let vals: std::result::Result<Vec<i64>, _> =
                rest.split_whitespace().map(|t| t.parse::<i64>()).collect();
            src.offsets = Some(vals.map_err(|_| syntax("offsets must be integers"))?);
            continue;
        }
        if let Some(rest) = line.strip_prefix("mark ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(syntax("mark takes a component and a cusp ordinal"));
            }
            let comp = parts[0].parse::<usize>().map_err(|_| syntax("bad component number"))?;
            let ord = parts[1].parse::<usize>().map_err(|_| syntax("bad cusp ordinal"))?;
            src.marks.push((comp, ord));
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(syntax("expected an event like 'L 1', 'X 2' or 'R 1'"));
        }
        let k = parts[1].parse::<usize>().map_err(|_| syntax("bad strand position"))?;
        let ev = match parts[0] {
            "L" => FrontEvent::LeftCusp(k),
            "X" => FrontEvent::Crossing(k),
            "R" => FrontEvent::RightCusp(k),
            other => return Err(syntax(&format!("unknown event tag '{other}'"))),
        };
        src.events.push(ev);
    }
    Ok(src)
}

pub fn parse_front(text: &str) -> Result<FrontDiagram> {
    let src = parse_front_source(text)?;
    FrontDiagram::new(src.events, src.offsets, &src.marks, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn events(spec: &[(&str, usize)]) -> Vec<FrontEvent> {
        spec.iter()
            .map(|&(t, k)| match t {
                "L" => FrontEvent::LeftCusp(k),
                "X" => FrontEvent::Crossing(k),
                "R" => FrontEvent::RightCusp(k),
                _ => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn unknot_basics() {
        let d = parse_front("L 1\nR 1\n").unwrap();
        assert_eq!(d.n_components(), 1);
        assert_eq!(d.rotations(), &[0]);
        assert_eq!(d.rotation_gcd(), 0);
        assert_eq!(d.strand_count(1), 2);
        assert_eq!(d.right_cusps(), &[1]);
        // Start on the lower strand moving right, so the upper strand of the
        // sole right cusp is reached first: upper to lower pass.
        assert_eq!(d.cusp_ell(1), -1);
        assert_eq!(d.direction(1, 2), Dir::Right);
        assert_eq!(d.direction(1, 1), Dir::Left);
    }

    #[test]
    fn unknot_reversed_orientation() {
        let d = parse_front("L 1\nR 1\n").unwrap().with_orientation(vec![true]).unwrap();
        assert_eq!(d.rotations(), &[0]);
        assert_eq!(d.cusp_ell(1), 1);
        assert_eq!(d.direction(1, 2), Dir::Left);
    }

    #[test]
    fn hopf_two_components() {
        let d = parse_front("L 1\nL 3\nX 2\nX 2\nR 1\nR 1\n").unwrap();
        assert_eq!(d.n_components(), 2);
        assert_eq!(d.rotations(), &[0, 0]);
        assert_eq!(d.component(2, 1), 0);
        assert_eq!(d.component(2, 3), 1);
        assert_eq!(d.crossings(), &[2, 3]);
        // Component 1 owns the first right cusp, component 2 the second.
        assert_eq!(d.cusp_component(4), 0);
        assert_eq!(d.cusp_component(5), 1);
        assert_eq!(d.marked(), &[4, 5]);
    }

    #[test]
    fn trefoil_one_component() {
        let d = parse_front("L 1\nL 3\nX 2\nX 2\nX 2\nR 1\nR 1\n").unwrap();
        assert_eq!(d.n_components(), 1);
        assert_eq!(d.rotations(), &[0]);
        assert_eq!(d.crossings().len(), 3);
        assert_eq!(d.marked(), &[5]);
    }

    #[test]
    fn stabilized_unknot_rotation() {
        let d = parse_front("L 1\nL 3\nX 2\nX 3\nR 1\nR 1\n").unwrap();
        assert_eq!(d.n_components(), 1);
        assert_eq!(d.rotation_gcd(), 1);
        assert_eq!(d.rotations(), &[-1]);
    }

    #[test]
    fn stabilized_trefoil_rotation() {
        let d =
            parse_front("L 1\nL 3\nL 5\nX 2\nX 2\nX 2\nX 4\nX 5\nR 1\nR 1\nR 1\n").unwrap();
        assert_eq!(d.n_components(), 1);
        assert_eq!(d.rotations(), &[1]);
        assert_eq!(d.right_cusps().len(), 3);
    }

    #[test]
    fn shape_violations() {
        assert!(matches!(FrontDiagram::new(vec![], None, &[], None), Err(Error::Shape(_))));
        // Crossing before any strands exist.
        assert!(parse_front("X 1\n").is_err());
        // Cusp order violated.
        assert!(parse_front("L 1\nR 1\nL 1\nR 1\n").is_err());
        // Position out of range.
        assert!(parse_front("L 4\nR 1\n").is_err());
        // Strands left open.
        assert!(FrontDiagram::new(events(&[("L", 1)]), None, &[], None).is_err());
    }

    #[test]
    fn even_cusp_positions_rejected() {
        // Nested cusps cannot be slid back onto a single vertical line, so
        // they are not plats. A valid diagram keeps every cusp at an odd spot.
        assert!(parse_front("L 1\nL 2\nX 1\nX 3\nR 2\nR 1\n").is_err());
        assert!(parse_front("L 1\nL 3\nX 2\nX 2\nR 2\nR 1\n").is_err());
        assert!(parse_front("L 1\nL 3\nX 2\nX 2\nR 3\nR 1\n").is_ok());
    }

    #[test]
    fn offsets_and_marks_validated() {
        let evs = events(&[("L", 1), ("L", 3), ("X", 2), ("X", 2), ("R", 1), ("R", 1)]);
        assert!(FrontDiagram::new(evs.clone(), Some(vec![0]), &[], None).is_err());
        assert!(FrontDiagram::new(evs.clone(), None, &[(3, 1)], None).is_err());
        assert!(FrontDiagram::new(evs.clone(), None, &[(1, 2)], None).is_err());
        let d = FrontDiagram::new(evs, Some(vec![0, -1]), &[(2, 1)], None).unwrap();
        assert_eq!(d.offsets(), &[0, -1]);
    }

    #[test]
    fn serialize_round_trip() {
        let text = "L 1\nL 3\nX 2\nX 2\nR 1\nR 1\noffsets: 0 -1\n";
        let d = parse_front(text).unwrap();
        assert_eq!(d.serialize(), text);
        let d2 = parse_front(&d.serialize()).unwrap();
        assert_eq!(d2.events(), d.events());
        assert_eq!(d2.offsets(), d.offsets());
    }

    #[test]
    fn mark_directive_round_trip() {
        let text = "L 1\nL 3\nX 2\nX 2\nX 2\nR 1\nR 1\nmark 1 2\n";
        let d = parse_front(text).unwrap();
        assert_eq!(d.marked(), &[6]);
        assert_eq!(d.serialize(), text);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let d = parse_front("# a diagram\n\nL 1 # top cusp\nR 1\n").unwrap();
        assert_eq!(d.n_components(), 1);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        match parse_front("L 1\nQ 7\n") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn trefoil_crossing_signs() {
        let d = parse_front("L 1\nL 3\nX 2\nX 2\nX 2\nR 1\nR 1\n").unwrap();
        // All three crossings join the two middle strands; orientations there
        // determine alpha and the per-generator constant.
        for &e in d.crossings() {
            assert!(d.alpha(e) == 1 || d.alpha(e) == -1);
            assert!(d.crossing_sign0(e) == 1 || d.crossing_sign0(e) == -1);
        }
    }
}
