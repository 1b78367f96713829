//! Handleslide collections as unipotent matrices.
//!
//! A handleslide on strands t < b with coefficient r acts on complexes by the
//! elementary matrix I + r E_{tb}. A collection of slides in a crossing-free
//! strip composes, left to right, to a single unipotent matrix supported on
//! graded strand pairs. Rearranging a collection (interchanging neighbors,
//! merging duplicates, introducing or cancelling pairs) never changes that
//! matrix, and a collection in a fixed total order of its pairs is determined
//! by the matrix: coefficients can be peeled off by increasing endpoint span,
//! since chains of shorter slides are the only other contributions to an
//! entry. So incorporating a slide, removing one, or pushing a collection
//! past a crossing is matrix arithmetic followed by one refactorization.
//!
//! Two orders matter. Sweeps that keep a properly ordered collection list
//! pairs by descending top strand, then ascending bottom; mirrored sweeps use
//! the reverse.

use crate::algebra::fq::{Fq, FqElem};
use crate::error::{Error, Result};
use crate::maslov::MaslovPotential;

/// One handleslide: strands `top < bottom`, coefficient `coeff`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Slide {
    pub top: usize,
    pub bottom: usize,
    pub coeff: FqElem,
}

/// Square matrix, 1-based, row-major; slot 0 unused.
pub type Mat = Vec<Vec<FqElem>>;

pub fn identity(s: usize) -> Mat {
    let mut m = vec![vec![FqElem::ZERO; s + 1]; s + 1];
    for i in 1..=s {
        m[i][i] = FqElem::ONE;
    }
    m
}

pub fn slide_matrix(s: usize, slide: Slide) -> Mat {
    let mut m = identity(s);
    m[slide.top][slide.bottom] = slide.coeff;
    m
}

pub fn mat_mul(field: &Fq, a: &Mat, b: &Mat) -> Mat {
    let s = a.len() - 1;
    let mut out = vec![vec![FqElem::ZERO; s + 1]; s + 1];
    for i in 1..=s {
        for l in 1..=s {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 1..=s {
                out[i][j] = field.add(out[i][j], field.mul(a[i][l], b[l][j]));
            }
        }
    }
    out
}

/// Total matrix of a collection read left to right: later slides multiply on
/// the left, matching composition of the complex isomorphisms.
pub fn collection_matrix(field: &Fq, s: usize, slides: &[Slide]) -> Mat {
    let mut p = identity(s);
    for &h in slides {
        p = mat_mul(field, &slide_matrix(s, h), &p);
    }
    p
}

/// Conjugate by the transposition of k, k+1: the matrix of the collection
/// after every slide passes the crossing.
pub fn conj_crossing(p: &Mat, k: usize) -> Mat {
    let mut out = p.clone();
    out.swap(k, k + 1);
    for row in out.iter_mut().skip(1) {
        row.swap(k, k + 1);
    }
    out
}

/// Strand pairs able to carry a handleslide in a gap: equal Maslov potential
/// modulo m.
pub fn graded_pairs(mu: &MaslovPotential, gap: usize, m: i64, s: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for t in 1..=s {
        for b in (t + 1)..=s {
            if mu.is_graded(mu.mu(gap, t) - mu.mu(gap, b), m) {
                out.push((t, b));
            }
        }
    }
    out
}

/// Left-to-right pair sequence of a properly ordered collection: top strand
/// descending, bottom ascending within a top.
pub fn proper_sequence(pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut v = pairs.to_vec();
    v.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    v
}

/// Left-to-right pair sequence of a collection whose reflection is properly
/// ordered.
pub fn reverse_sequence(pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut v = proper_sequence(pairs);
    v.reverse();
    v
}

/// Factor a unipotent matrix into one slide per pair of `sequence`, in that
/// left-to-right order. Fails if the matrix is not a product of slides on
/// the given pairs.
pub fn factor(field: &Fq, p: &Mat, sequence: &[(usize, usize)]) -> Result<Vec<Slide>> {
    let s = p.len() - 1;
    let mut slides: Vec<Slide> =
        sequence.iter().map(|&(top, bottom)| Slide { top, bottom, coeff: FqElem::ZERO }).collect();
    let mut spans: Vec<usize> = (0..slides.len()).collect();
    spans.sort_by_key(|&i| slides[i].bottom - slides[i].top);
    for idx in spans {
        let current = collection_matrix(field, s, &slides);
        let (t, b) = (slides[idx].top, slides[idx].bottom);
        slides[idx].coeff = field.add(slides[idx].coeff, field.sub(p[t][b], current[t][b]));
    }
    if collection_matrix(field, s, &slides) != *p {
        return Err(Error::NotSRForm(
            "handleslide matrix is not supported on the graded pairs".into(),
        ));
    }
    Ok(slides)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(x: i64, field: &Fq) -> FqElem {
        field.from_int(x)
    }

    #[test]
    fn factor_round_trips_in_both_orders() {
        let field = Fq::from_order(5).unwrap();
        let s = 4;
        let e = |t, b, c: i64| Slide { top: t, bottom: b, coeff: f(c, &field) };
        let slides =
            vec![e(1, 2, 3), e(2, 4, 1), e(1, 3, 4), e(3, 4, 2), e(1, 4, 2), e(2, 3, 1)];
        let p = collection_matrix(&field, s, &slides);
        let all: Vec<(usize, usize)> =
            (1..=s).flat_map(|t| ((t + 1)..=s).map(move |b| (t, b))).collect();
        for sequence in [proper_sequence(&all), reverse_sequence(&all)] {
            let got = factor(&field, &p, &sequence).unwrap();
            assert_eq!(collection_matrix(&field, s, &got), p);
            let order: Vec<(usize, usize)> = got.iter().map(|h| (h.top, h.bottom)).collect();
            assert_eq!(order, sequence);
        }
    }

    #[test]
    fn chained_neighbors_interchange_with_a_spawn() {
        // Interchanging slides (1,2) r1 and (2,3) r2 spawns (1,3) with
        // coefficient -r1 r2 on the left; matrices agree.
        let field = Fq::from_order(7).unwrap();
        let s = 3;
        let h1 = Slide { top: 1, bottom: 2, coeff: f(3, &field) };
        let h2 = Slide { top: 2, bottom: 3, coeff: f(2, &field) };
        let spawn = Slide { top: 1, bottom: 3, coeff: field.neg(f(6, &field)) };
        let p = collection_matrix(&field, s, &[h1, h2]);
        let q = collection_matrix(&field, s, &[spawn, h2, h1]);
        assert_eq!(p, q);
    }

    #[test]
    fn factor_rejects_off_pair_support() {
        let field = Fq::from_order(3).unwrap();
        let p = collection_matrix(
            &field,
            3,
            &[Slide { top: 1, bottom: 3, coeff: FqElem::ONE }],
        );
        let err = factor(&field, &p, &[(1, 2), (2, 3)]);
        assert!(matches!(err, Err(Error::NotSRForm(_))));
    }

    #[test]
    fn conjugation_moves_endpoints_past_a_crossing() {
        let field = Fq::from_order(5).unwrap();
        let s = 4;
        let h = Slide { top: 2, bottom: 4, coeff: f(3, &field) };
        let p = slide_matrix(s, h);
        let q = conj_crossing(&p, 2);
        assert_eq!(q, slide_matrix(s, Slide { top: 3, bottom: 4, coeff: f(3, &field) }));
        assert_eq!(conj_crossing(&q, 2), p);
    }
}
