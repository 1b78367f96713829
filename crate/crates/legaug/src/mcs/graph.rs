//! Ruling graphs and their disk equations.
//!
//! A normal ruling tiles the front with disks, one per right cusp. The ruling
//! graph has a vertex for each disk, labeled -1, or -t_k^l when the disk's
//! right cusp carries the component k marked point and is traversed with sign
//! l, and an edge for each switch joining the two disks that trade partners
//! there. Edges are typed by the
//! relative position of the pairs at the switch (disjoint or nested) and
//! oriented upper-to-lower, respectively inner-to-outer.
//!
//! Each vertex imposes one equation on the edge variables x_j in F^x: the
//! product over incident edges of
//!
//! ```text
//!   -x_j       edge leaving the vertex
//!    x_j       edge arriving, disjoint type
//!    x_j^-1    edge arriving, nested type
//!   -x_j^2     loop at the vertex, either type
//! ```
//!
//! must equal the vertex label. Solutions over (F^x)^c x (F^x)^E are counted
//! three ways below: directly, by contracting edges (each contraction trades s
//! parallel same-type edges for a factor (q-1)^{s-1}), and in closed form
//! (q-1)^{|E| - |V| + c}, valid for graphs built from rulings.

use crate::algebra::fq::{Fq, FqElem};
use crate::error::{Error, Result};
use crate::front::{FrontDiagram, FrontEvent};
use crate::rulings::{classify_pair_config, CrossingClass, NormalRuling, PairConfig};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Disjoint,
    Nested,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub tail: usize,
    pub head: usize,
    pub kind: EdgeKind,
}

/// Invertible monomial unit * t_1^e_1 ... t_c^e_c labeling a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphLabel {
    pub unit: FqElem,
    pub exps: Vec<i64>,
}

impl GraphLabel {
    pub fn constant(unit: FqElem, n_t: usize) -> Self {
        GraphLabel { unit, exps: vec![0; n_t] }
    }

    fn mul(&self, field: &Fq, other: &GraphLabel) -> GraphLabel {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        GraphLabel { unit: field.mul(self.unit, other.unit), exps }
    }

    fn inv(&self, field: &Fq) -> GraphLabel {
        let unit = field.inv(self.unit).expect("vertex labels are invertible");
        GraphLabel { unit, exps: self.exps.iter().map(|e| -e).collect() }
    }

    pub fn eval(&self, field: &Fq, tvals: &[FqElem]) -> FqElem {
        let mut acc = self.unit;
        for (i, &e) in self.exps.iter().enumerate() {
            let p = field.pow(tvals[i], e).expect("t values are units");
            acc = field.mul(acc, p);
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct RulingGraph {
    /// Number of t variables; labels carry exponent vectors of this length.
    pub n_t: usize,
    pub labels: Vec<GraphLabel>,
    pub edges: Vec<GraphEdge>,
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Build the ruling graph of a ruling, labels taken over the given field.
pub fn ruling_graph(d: &FrontDiagram, ruling: &NormalRuling, field: &Fq) -> RulingGraph {
    let n = d.n_events();
    // Disk identity, as a union-find over (gap, position) slots. Partners in a
    // gap bound the same disk. Across a crossing the disk follows the strand,
    // except at a switch where both disks keep their positions.
    let offsets: Vec<usize> = {
        let mut acc = 0;
        let mut v = Vec::with_capacity(n + 1);
        for g in 0..=n {
            v.push(acc);
            acc += ruling.pairings[g].len();
        }
        v
    };
    let node = |g: usize, p: usize| offsets[g] + (p - 1);
    let total = offsets[n];
    let mut dsu = Dsu::new(total);
    for g in 0..=n {
        for p in 1..=ruling.pairings[g].len() {
            let q = ruling.pairings[g][p - 1];
            if p < q {
                dsu.union(node(g, p), node(g, q));
            }
        }
    }
    let mut crossing_idx = 0;
    for (e, &ev) in d.events().iter().enumerate() {
        let s = ruling.pairings[e].len();
        match ev {
            FrontEvent::LeftCusp(k) => {
                for p in 1..=s {
                    let p2 = if p >= k { p + 2 } else { p };
                    dsu.union(node(e, p), node(e + 1, p2));
                }
            }
            FrontEvent::RightCusp(k) => {
                for p in (1..=s).filter(|&p| p != k && p != k + 1) {
                    let p2 = if p > k + 1 { p - 2 } else { p };
                    dsu.union(node(e, p), node(e + 1, p2));
                }
            }
            FrontEvent::Crossing(k) => {
                let switched =
                    matches!(ruling.classes[crossing_idx], CrossingClass::Switch(_));
                crossing_idx += 1;
                for p in 1..=s {
                    let p2 = if switched || (p != k && p != k + 1) {
                        p
                    } else if p == k {
                        k + 1
                    } else {
                        k
                    };
                    dsu.union(node(e, p), node(e + 1, p2));
                }
            }
        }
    }

    // One vertex per right cusp, in event order.
    let n_t = d.n_components();
    let mut vertex_of_root: std::collections::BTreeMap<usize, usize> =
        std::collections::BTreeMap::new();
    let mut labels = Vec::new();
    for (e, &ev) in d.events().iter().enumerate() {
        if let FrontEvent::RightCusp(k) = ev {
            let root = dsu.find(node(e, k));
            let v = labels.len();
            vertex_of_root.insert(root, v);
            let mut label = GraphLabel::constant(field.minus_one(), n_t);
            if let Some(comp) = d.marked().iter().position(|&m| m == e) {
                // Matches the cusp equation of a Morse complex sequence,
                // pivot = -t^l with l the cusp's traversal sign.
                label.exps[comp] = d.cusp_ell(e);
            }
            labels.push(label);
        }
    }

    let mut edges = Vec::new();
    let mut crossing_idx = 0;
    for (e, &ev) in d.events().iter().enumerate() {
        if let FrontEvent::Crossing(k) = ev {
            if matches!(ruling.classes[crossing_idx], CrossingClass::Switch(_)) {
                let pairing = ruling.pairing(e);
                let disk =
                    |p: usize, dsu: &mut Dsu| vertex_of_root[&dsu.find(node(e, p))];
                let (tail, head, kind) = match classify_pair_config(&pairing, k) {
                    // Upper to lower.
                    PairConfig::Disjoint => {
                        (disk(k, &mut dsu), disk(k + 1, &mut dsu), EdgeKind::Disjoint)
                    }
                    // Inner to outer; the pair of k is inner when its partner
                    // sits strictly inside the other pair's span.
                    PairConfig::NestedAbove => {
                        (disk(k, &mut dsu), disk(k + 1, &mut dsu), EdgeKind::Nested)
                    }
                    PairConfig::NestedBelow => {
                        (disk(k + 1, &mut dsu), disk(k, &mut dsu), EdgeKind::Nested)
                    }
                    _ => unreachable!("switches sit at normal configurations"),
                };
                edges.push(GraphEdge { tail, head, kind });
            }
            crossing_idx += 1;
        }
    }
    RulingGraph { n_t, labels, edges }
}

impl RulingGraph {
    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    /// Check the disk equations at a point (t values and one unit per edge).
    pub fn satisfied(&self, field: &Fq, tvals: &[FqElem], xvals: &[FqElem]) -> bool {
        let mut prod = vec![FqElem::ONE; self.n_vertices()];
        for (j, e) in self.edges.iter().enumerate() {
            let x = xvals[j];
            if e.tail == e.head {
                let sq = field.neg(field.mul(x, x));
                prod[e.tail] = field.mul(prod[e.tail], sq);
            } else {
                prod[e.tail] = field.mul(prod[e.tail], field.neg(x));
                let at_head = match e.kind {
                    EdgeKind::Disjoint => x,
                    EdgeKind::Nested => field.inv(x).expect("edge variables are units"),
                };
                prod[e.head] = field.mul(prod[e.head], at_head);
            }
        }
        prod.iter()
            .zip(&self.labels)
            .all(|(&p, w)| p == w.eval(field, tvals))
    }

    /// Count solutions by running over every point of (F^x)^{c + E}.
    pub fn brute_count(&self, field: &Fq, cap: u128) -> Result<u128> {
        let units: Vec<FqElem> = field.units().collect();
        let vars = self.n_t + self.edges.len();
        let space = (units.len() as u128)
            .checked_pow(vars as u32)
            .filter(|&s| s <= cap)
            .ok_or(Error::Scale { space: u128::MAX, cap })?;
        if space > cap {
            return Err(Error::Scale { space, cap });
        }
        let mut digits = vec![0usize; vars];
        let mut count = 0u128;
        loop {
            let tvals: Vec<FqElem> = digits[..self.n_t].iter().map(|&i| units[i]).collect();
            let xvals: Vec<FqElem> = digits[self.n_t..].iter().map(|&i| units[i]).collect();
            if self.satisfied(field, &tvals, &xvals) {
                count += 1;
            }
            let mut pos = 0;
            loop {
                if pos == vars {
                    return Ok(count);
                }
                digits[pos] += 1;
                if digits[pos] < units.len() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Contract along a non-loop edge. Returns the smaller graph and the
    /// number s of parallel same-type edges removed with it; solution counts
    /// shrink exactly by (q-1)^{s-1}.
    pub fn contract(&self, field: &Fq, edge: usize) -> Result<(RulingGraph, usize)> {
        let e = self.edges[edge];
        if e.tail == e.head {
            return Err(Error::LoopEdge);
        }
        let (i, j) = (e.tail, e.head);
        let between = |f: &GraphEdge| {
            (f.tail == i && f.head == j) || (f.tail == j && f.head == i)
        };
        let s = self.edges.iter().filter(|f| between(f) && f.kind == e.kind).count();
        let merged = {
            let sign = field.pow(field.minus_one(), s as i64).unwrap();
            let sign = GraphLabel::constant(sign, self.n_t);
            let tail_label = match e.kind {
                EdgeKind::Nested => self.labels[i].clone(),
                EdgeKind::Disjoint => self.labels[i].inv(field),
            };
            sign.mul(field, &tail_label).mul(field, &self.labels[j])
        };
        let (lo, hi) = (i.min(j), i.max(j));
        let remap = |v: usize| {
            if v == i || v == j {
                lo
            } else if v > hi {
                v - 1
            } else {
                v
            }
        };
        let mut labels: Vec<GraphLabel> = Vec::with_capacity(self.labels.len() - 1);
        for (v, w) in self.labels.iter().enumerate() {
            if v == hi {
                continue;
            }
            labels.push(if v == lo { merged.clone() } else { w.clone() });
        }
        let mut edges = Vec::with_capacity(self.edges.len() - s);
        for f in &self.edges {
            if between(f) && f.kind == e.kind {
                continue;
            }
            let mut kind = f.kind;
            // A disjoint-type contraction inverts the tail label, which turns
            // the incident edge factors into their other-type counterparts.
            if e.kind == EdgeKind::Disjoint && (f.tail == i) != (f.head == i) {
                kind = match kind {
                    EdgeKind::Disjoint => EdgeKind::Nested,
                    EdgeKind::Nested => EdgeKind::Disjoint,
                };
            }
            edges.push(GraphEdge { tail: remap(f.tail), head: remap(f.head), kind });
        }
        Ok((RulingGraph { n_t: self.n_t, labels, edges }, s))
    }

    /// Count solutions by contracting non-loop edges down to isolated
    /// vertices, then solving the remaining loop equations directly.
    pub fn contracted_count(&self, field: &Fq, cap: u128) -> Result<u128> {
        let q1 = field.q() as u128 - 1;
        let mut g = self.clone();
        let mut factor = 1u128;
        while let Some(idx) = g.edges.iter().position(|f| f.tail != f.head) {
            let (next, s) = g.contract(field, idx)?;
            factor *= q1.pow(s as u32 - 1);
            g = next;
        }
        let space = q1.pow(g.n_t as u32);
        if space > cap {
            return Err(Error::Scale { space, cap });
        }
        let units: Vec<FqElem> = field.units().collect();
        let mut loops = vec![0u32; g.n_vertices()];
        for f in &g.edges {
            loops[f.tail] += 1;
        }
        let sqrt_units = |target: FqElem| {
            field.units().filter(|&u| field.mul(u, u) == target).count() as u128
        };
        let mut digits = vec![0usize; g.n_t];
        let mut count = 0u128;
        loop {
            let tvals: Vec<FqElem> = digits.iter().map(|&i| units[i]).collect();
            let mut here = 1u128;
            for (v, w) in g.labels.iter().enumerate() {
                let target = w.eval(field, &tvals);
                let k = loops[v];
                here *= if k == 0 {
                    u128::from(target == FqElem::ONE)
                } else {
                    // The k loop factors multiply to (-1)^k P^2 with P the
                    // product of the loop variables, each P value reached
                    // (q-1)^{k-1} ways.
                    let signed = field.mul(field.pow(field.minus_one(), k as i64).unwrap(), target);
                    q1.pow(k - 1) * sqrt_units(signed)
                };
                if here == 0 {
                    break;
                }
            }
            count += here;
            let mut pos = 0;
            loop {
                if pos == g.n_t {
                    return Ok(factor * count);
                }
                digits[pos] += 1;
                if digits[pos] < units.len() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Closed-form count (q-1)^{|E| - |V| + c}. Valid when every connected
    /// piece of the graph carries labels multiplying to a monomial of the
    /// form (+/-) t_a t_b ... with each of its t variables appearing once,
    /// which holds for every graph built by `ruling_graph`.
    pub fn closed_count(&self, field: &Fq) -> u128 {
        let exp = self.edges.len() as i64 - self.n_vertices() as i64 + self.n_t as i64;
        debug_assert!(exp >= 0, "ruling graph components each carry a marked disk");
        (field.q() as u128 - 1).pow(exp as u32)
    }

    /// Reverse one edge in place; solution sets correspond one to one under
    /// x -> -x (disjoint) or x -> -x^{-1} (nested), so all counts agree.
    pub fn reverse_edge(&mut self, edge: usize) {
        let e = &mut self.edges[edge];
        std::mem::swap(&mut e.tail, &mut e.head);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aug::DEFAULT_CAP;
    use crate::front::parse_front;
    use crate::maslov::{grading_moduli, MaslovPotential};
    use crate::rulings::{enumerate_rulings, ruling_stats};

    const CAP: u128 = DEFAULT_CAP as u128;

    fn load(name: &str) -> FrontDiagram {
        let path = format!("{}/../../fronts/{name}.front", env!("CARGO_MANIFEST_DIR"));
        parse_front(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    #[test]
    fn unknot_graph_is_one_marked_vertex() {
        let d = load("unknot");
        let mu = MaslovPotential::compute(&d);
        let field = Fq::from_order(5).unwrap();
        let rulings = enumerate_rulings(&d, &mu, 0).unwrap();
        let g = ruling_graph(&d, &rulings[0], &field);
        assert_eq!(g.n_vertices(), 1);
        assert!(g.edges.is_empty());
        assert_eq!(g.labels[0].exps, vec![d.cusp_ell(d.right_cusps()[0])]);
        // The single equation 1 = -t^l pins t = -1.
        assert_eq!(g.brute_count(&field, CAP).unwrap(), 1);
        assert_eq!(g.contracted_count(&field, CAP).unwrap(), 1);
        assert_eq!(g.closed_count(&field), 1);
    }

    #[test]
    fn trefoil_full_switch_graph_contracts() {
        let d = load("trefoil");
        let mu = MaslovPotential::compute(&d);
        let field = Fq::from_order(3).unwrap();
        let rulings = enumerate_rulings(&d, &mu, 0).unwrap();
        let full = rulings.iter().find(|r| r.mask == 0b111).unwrap();
        let g = ruling_graph(&d, full, &field);
        assert_eq!(g.n_vertices(), 2);
        assert_eq!(g.edges.len(), 3);
        assert!(g.edges.iter().all(|e| e.kind == EdgeKind::Disjoint));
        // Two disks joined by three parallel switch edges: one contraction
        // removes all three and pays (q-1)^2.
        let (g2, s) = g.contract(&field, 0).unwrap();
        assert_eq!(s, 3);
        assert_eq!(g2.n_vertices(), 1);
        assert!(g2.edges.is_empty());
        assert_eq!(g.brute_count(&field, CAP).unwrap(), 4);
        assert_eq!(g.contracted_count(&field, CAP).unwrap(), 4);
        assert_eq!(g.closed_count(&field), 4);
    }

    #[test]
    fn hopf_graph_counts() {
        let d = load("hopf");
        let mu = MaslovPotential::compute(&d);
        let field = Fq::from_order(4).unwrap();
        let rulings = enumerate_rulings(&d, &mu, 0).unwrap();
        for r in &rulings {
            let g = ruling_graph(&d, r, &field);
            assert_eq!(g.n_vertices(), 2);
            let brute = g.brute_count(&field, CAP).unwrap();
            assert_eq!(brute, g.contracted_count(&field, CAP).unwrap());
            assert_eq!(brute, g.closed_count(&field));
        }
        // The no-switch ruling has one disk per component and no edges; the
        // full-switch ruling joins them with two disjoint-type edges.
        assert_eq!(ruling_graph(&d, &rulings[0], &field).edges.len(), 0);
        assert_eq!(ruling_graph(&d, &rulings[1], &field).edges.len(), 2);
    }

    #[test]
    fn counts_agree_across_corpus() {
        for name in ["unknot", "hopf", "hopf_swap", "chain3", "trefoil"] {
            let d = load(name);
            let mu = MaslovPotential::compute(&d);
            for m in grading_moduli(&d).into_iter().filter(|&m| m <= 2) {
                for q in [2u64, 3, 5] {
                    let field = Fq::from_order(q).unwrap();
                    for r in enumerate_rulings(&d, &mu, m).unwrap() {
                        let st = ruling_stats(&d, &r, m);
                        let g = ruling_graph(&d, &r, &field);
                        let brute = g.brute_count(&field, CAP).unwrap();
                        assert_eq!(
                            brute,
                            g.contracted_count(&field, CAP).unwrap(),
                            "{name} m = {m} q = {q} mask {:b}",
                            r.mask
                        );
                        assert_eq!(brute, g.closed_count(&field), "{name} mask {:b}", r.mask);
                        let expect = (q as u128 - 1)
                            .pow(u32::try_from(st.j + d.n_components() as i64).unwrap());
                        assert_eq!(brute, expect, "{name} mask {:b}", r.mask);
                    }
                }
            }
        }
    }

    #[test]
    fn edge_reversal_preserves_counts() {
        let d = load("chain3");
        let mu = MaslovPotential::compute(&d);
        let field = Fq::from_order(3).unwrap();
        for r in enumerate_rulings(&d, &mu, 0).unwrap() {
            let g = ruling_graph(&d, &r, &field);
            let want = g.brute_count(&field, CAP).unwrap();
            for j in 0..g.edges.len() {
                let mut h = g.clone();
                h.reverse_edge(j);
                assert_eq!(h.brute_count(&field, CAP).unwrap(), want);
                assert_eq!(h.contracted_count(&field, CAP).unwrap(), want);
            }
        }
    }

    #[test]
    fn loops_contract_to_square_counts() {
        // One unmarked vertex with a single loop: -x^2 = -1, so x^2 = 1.
        let field = Fq::from_order(5).unwrap();
        let g = RulingGraph {
            n_t: 0,
            labels: vec![GraphLabel::constant(field.minus_one(), 0)],
            edges: vec![GraphEdge { tail: 0, head: 0, kind: EdgeKind::Nested }],
        };
        assert_eq!(g.brute_count(&field, CAP).unwrap(), 2);
        assert_eq!(g.contracted_count(&field, CAP).unwrap(), 2);
        assert!(matches!(g.contract(&field, 0), Err(Error::LoopEdge)));
        // Over characteristic two, squaring is a bijection on units.
        let f2 = Fq::from_order(2).unwrap();
        let g2 = RulingGraph {
            n_t: 0,
            labels: vec![GraphLabel::constant(FqElem::ONE, 0)],
            edges: vec![GraphEdge { tail: 0, head: 0, kind: EdgeKind::Disjoint }],
        };
        assert_eq!(g2.brute_count(&f2, CAP).unwrap(), 1);
        assert_eq!(g2.contracted_count(&f2, CAP).unwrap(), 1);
    }

    #[test]
    fn mixed_type_contraction_spawns_loops() {
        // Two vertices joined by a disjoint and a nested edge. Contracting
        // the disjoint edge leaves the nested one as a loop.
        let field = Fq::from_order(7).unwrap();
        let g = RulingGraph {
            n_t: 1,
            labels: vec![
                GraphLabel { unit: field.minus_one(), exps: vec![1] },
                GraphLabel::constant(field.minus_one(), 1),
            ],
            edges: vec![
                GraphEdge { tail: 0, head: 1, kind: EdgeKind::Disjoint },
                GraphEdge { tail: 0, head: 1, kind: EdgeKind::Nested },
            ],
        };
        let (g2, s) = g.contract(&field, 0).unwrap();
        assert_eq!(s, 1);
        assert_eq!(g2.n_vertices(), 1);
        assert_eq!(g2.edges.len(), 1);
        assert_eq!(g2.edges[0].tail, g2.edges[0].head);
        let want = g.brute_count(&field, CAP).unwrap();
        assert_eq!(g.contracted_count(&field, CAP).unwrap(), want);
    }
}
