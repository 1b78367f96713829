//! Exact evaluation of q^(-(d+c)/2) z^c R(z) at z = sqrt(q) - 1/sqrt(q).
//!
//! Expanding each power of z binomially makes every surviving exponent of
//! sqrt(q) even, so the value is a rational number in q and no floating
//! point is needed. The parity check below is exactly the condition for
//! that cancellation.

use num::{BigInt, BigRational, One, Zero};

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// q^e as an exact rational, e allowed negative.
pub fn q_power(q: u64, e: i64) -> BigRational {
    let base = BigInt::from(q);
    if e >= 0 {
        BigRational::from_integer(base.pow(e as u32))
    } else {
        BigRational::new(BigInt::one(), base.pow((-e) as u32))
    }
}

fn binomial(n: i64, k: i64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The right hand side of the count identity: substitute
/// z = sqrt(q) - 1/sqrt(q) into q^(-(d+c)/2) z^c R(z), where d = deg R and
/// c is the number of link components. The zero polynomial evaluates to zero.
pub fn rhs_exact(r: &LaurentPoly, c: i64, q: u64) -> Result<BigRational> {
    if r.is_zero() {
        return Ok(BigRational::zero());
    }
    let d = r.degree().expect("nonzero");
    let shifted = r.shifted(c);
    if let Some(low) = shifted.low_degree() {
        if low < 0 {
            return Err(Error::NegativeExponent(low));
        }
    }
    let dc = d + c;
    let mut total = BigRational::zero();
    for (e, n) in shifted.terms() {
        if (e - dc).rem_euclid(2) != 0 {
            return Err(Error::Parity { exp: e, dc });
        }
        let mut term = BigRational::zero();
        for k in 0..=e {
            let mut piece = BigRational::from_integer(binomial(e, k)) * q_power(q, (e - 2 * k - dc) / 2);
            if k % 2 == 1 {
                piece = -piece;
            }
            term += piece;
        }
        total += BigRational::from_integer(BigInt::from(n)) * term;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn unknot_value_is_one() {
        // R = z^-1, c = 1: z^c R = 1, d + c = 0.
        let r = LaurentPoly::monomial(-1, 1);
        for q in [2u64, 3, 4, 5, 8, 9] {
            assert_eq!(rhs_exact(&r, 1, q).unwrap(), rat(1, 1));
        }
    }

    #[test]
    fn trefoil_value() {
        // R = z + 2 z^-1 and one component: value is (q^2 + 1) / q^2.
        let mut r = LaurentPoly::monomial(1, 1);
        r.add_term(-1, 2);
        assert_eq!(rhs_exact(&r, 1, 2).unwrap(), rat(5, 4));
        assert_eq!(rhs_exact(&r, 1, 3).unwrap(), rat(10, 9));
        assert_eq!(rhs_exact(&r, 1, 4).unwrap(), rat(17, 16));
        assert_eq!(rhs_exact(&r, 1, 9).unwrap(), rat(82, 81));
    }

    #[test]
    fn hopf_value() {
        // R = 1 + z^-2, c = 2: value is (q^2 - q + 1) / q^2.
        let mut r = LaurentPoly::monomial(0, 1);
        r.add_term(-2, 1);
        assert_eq!(rhs_exact(&r, 2, 2).unwrap(), rat(3, 4));
        assert_eq!(rhs_exact(&r, 2, 3).unwrap(), rat(7, 9));
        assert_eq!(rhs_exact(&r, 2, 5).unwrap(), rat(21, 25));
    }

    #[test]
    fn zero_polynomial() {
        assert_eq!(rhs_exact(&LaurentPoly::zero(), 1, 2).unwrap(), BigRational::zero());
    }

    #[test]
    fn parity_violation_detected() {
        // R = z + 1 has terms of both parities, so d + c cannot match both.
        let mut r = LaurentPoly::monomial(1, 1);
        r.add_term(0, 1);
        assert!(matches!(rhs_exact(&r, 0, 2), Err(Error::Parity { .. })));
    }

    #[test]
    fn uncleared_negative_exponent_detected() {
        let r = LaurentPoly::monomial(-3, 1);
        assert!(matches!(rhs_exact(&r, 1, 2), Err(Error::NegativeExponent(-2))));
    }
}
