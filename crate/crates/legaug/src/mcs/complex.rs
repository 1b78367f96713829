//! Strictly upper triangular chain complexes on ordered strands and the
//! elementary transitions between them: handleslides, crossings, cusps.
//!
//! Entry (i, j) with i < j, both 1-based from the top strand, is the
//! coefficient of e_j in d e_i.

use crate::algebra::fq::{Fq, FqElem};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriComplex {
    n: usize,
    /// (n+1) x (n+1), row and column 0 unused.
    d: Vec<Vec<FqElem>>,
}

impl TriComplex {
    pub fn empty() -> TriComplex {
        TriComplex { n: 0, d: vec![vec![FqElem::ZERO]] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> FqElem {
        debug_assert!(1 <= i && i < j && j <= self.n);
        self.d[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FqElem) {
        debug_assert!(1 <= i && i < j && j <= self.n);
        self.d[i][j] = v;
    }

    /// d e_top gains r times d e_bottom; on the dual side column `bottom`
    /// loses r times column `top`. This is conjugation by the elementary
    /// automorphism sending e_top to e_top - r e_bottom.
    pub fn handleslide(&mut self, field: &Fq, top: usize, bottom: usize, r: FqElem) {
        assert!(1 <= top && top < bottom && bottom <= self.n);
        if r.is_zero() {
            return;
        }
        for m in 1..=self.n {
            let add = field.mul(r, self.d[bottom][m]);
            self.d[top][m] = field.add(self.d[top][m], add);
        }
        for i in 1..=self.n {
            let sub = field.mul(r, self.d[i][top]);
            self.d[i][bottom] = field.sub(self.d[i][bottom], sub);
        }
        debug_assert!(self.strictly_upper());
    }

    /// Swap strands k and k+1. Requires the (k, k+1) entry to vanish, else
    /// the swapped matrix would not be triangular.
    pub fn crossing(&mut self, k: usize) -> Result<()> {
        assert!(1 <= k && k + 1 <= self.n);
        if !self.d[k][k + 1].is_zero() {
            return Err(Error::ObstructionAt(k));
        }
        self.d.swap(k, k + 1);
        for row in &mut self.d {
            row.swap(k, k + 1);
        }
        debug_assert!(self.strictly_upper());
        Ok(())
    }

    /// Insert two new strands at positions k, k+1 joined by a unit pair:
    /// d e_k = e_{k+1} and nothing else changes.
    pub fn left_cusp(&mut self, k: usize) {
        assert!(1 <= k && k <= self.n + 1);
        let new_n = self.n + 2;
        let mut nd = vec![vec![FqElem::ZERO; new_n + 1]; new_n + 1];
        let map = |p: usize| if p >= k { p + 2 } else { p };
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                nd[map(i)][map(j)] = self.d[i][j];
            }
        }
        nd[k][k + 1] = FqElem::ONE;
        self.n = new_n;
        self.d = nd;
    }

    /// Contract the pair (k, k+1) against its pivot d[k][k+1], which must be
    /// invertible; returns the pivot. The surviving strands close up and
    /// indices above k+1 drop by two.
    pub fn right_cusp(&mut self, field: &Fq, k: usize) -> Result<FqElem> {
        assert!(1 <= k && k + 1 <= self.n);
        let c = self.d[k][k + 1];
        if c.is_zero() {
            return Err(Error::ObstructionAt(k));
        }
        let cinv = field.inv(c)?;
        let new_n = self.n - 2;
        let mut nd = vec![vec![FqElem::ZERO; new_n + 1]; new_n + 1];
        let map = |p: usize| if p > k + 1 { p - 2 } else { p };
        for i in (1..=self.n).filter(|&i| i != k && i != k + 1) {
            for j in ((i + 1)..=self.n).filter(|&j| j != k && j != k + 1) {
                let correction = field.mul(self.d[i][k + 1], field.mul(cinv, self.d[k][j]));
                nd[map(i)][map(j)] = field.sub(self.d[i][j], correction);
            }
        }
        self.n = new_n;
        self.d = nd;
        debug_assert!(self.strictly_upper());
        Ok(c)
    }

    pub fn d_squared_is_zero(&self, field: &Fq) -> bool {
        for i in 1..=self.n {
            for j in 1..=self.n {
                let mut acc = FqElem::ZERO;
                for l in 1..=self.n {
                    acc = field.add(acc, field.mul(self.d[i][l], self.d[l][j]));
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    fn strictly_upper(&self) -> bool {
        for i in 1..=self.n {
            for j in 1..=i {
                if !self.d[i][j].is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fq {
        Fq::from_order(3).unwrap()
    }

    #[test]
    fn cusp_insert_and_contract_are_inverse() {
        let field = f3();
        let mut c = TriComplex::empty();
        c.left_cusp(1);
        c.left_cusp(3);
        assert_eq!(c.n(), 4);
        assert_eq!(c.get(1, 2), FqElem::ONE);
        assert_eq!(c.get(3, 4), FqElem::ONE);
        assert_eq!(c.get(1, 3), FqElem::ZERO);
        let pivot = c.right_cusp(&field, 1).unwrap();
        assert_eq!(pivot, FqElem::ONE);
        assert_eq!(c.n(), 2);
        assert_eq!(c.get(1, 2), FqElem::ONE);
    }

    #[test]
    fn handleslide_moves_unit_pairs() {
        let field = f3();
        let mut c = TriComplex::empty();
        c.left_cusp(1);
        c.left_cusp(3);
        let r = field.from_int(2);
        c.handleslide(&field, 2, 3, r);
        // row 2 gains r row 3; column 3 loses r column 2
        assert_eq!(c.get(2, 4), r);
        assert_eq!(c.get(1, 3), field.neg(r));
        assert!(c.d_squared_is_zero(&field));
    }

    #[test]
    fn crossing_requires_zero_pivot() {
        let field = f3();
        let mut c = TriComplex::empty();
        c.left_cusp(1);
        assert!(matches!(c.crossing(1), Err(Error::ObstructionAt(1))));
        c.left_cusp(3);
        c.crossing(2).unwrap();
        assert_eq!(c.get(1, 3), FqElem::ONE);
        assert_eq!(c.get(2, 4), FqElem::ONE);
        assert!(c.d_squared_is_zero(&field));
    }

    #[test]
    fn contraction_corrects_through_the_pivot() {
        let field = f3();
        // Strands 1..4 with d e_1 = e_2 + e_3, d e_2 = e_4 - ... build by
        // hand: pivot at (2,3), spectators 1 and 4.
        let mut c = TriComplex::empty();
        c.left_cusp(1);
        c.left_cusp(1);
        c.left_cusp(5);
        let _ = c.right_cusp(&field, 5);
        assert_eq!(c.n(), 4);
        // now d e_1 = e_2, d e_3 = e_4; add entries through (2,3)
        c.set(1, 3, field.from_int(2));
        c.set(2, 4, field.from_int(1));
        // force a valid complex: d^2 e_1 = d(e_2) + 2 d(e_3) = e_4 + 2 e_4 = 0
        assert!(c.d_squared_is_zero(&field));
        let pivot = c.right_cusp(&field, 2);
        // pivot (2,3) is zero here, so contraction must refuse
        assert!(matches!(pivot, Err(Error::ObstructionAt(2))));
        c.set(2, 3, field.from_int(1));
        let pivot = c.right_cusp(&field, 2).unwrap();
        assert_eq!(pivot, FqElem::ONE);
        assert_eq!(c.n(), 2);
        // d e_1 = old d[1][4] - d[1][3] pivot^-1 d[2][4] = 0 - 2*1*1 = -2 = 1
        assert_eq!(c.get(1, 2), field.from_int(1));
        assert!(c.d_squared_is_zero(&field));
    }
}
