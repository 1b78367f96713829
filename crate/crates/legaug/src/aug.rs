//! Counting m-graded augmentations to GF(q).
//!
//! An augmentation sends graded generators to field elements, ungraded ones
//! to zero, and each t_i to a unit, subject to vanishing on every
//! differential. The brute count enumerates the solution set directly; the
//! ruling count evaluates the closed form sum((q-1)^(j+c) q^r) over normal
//! rulings. Both are normalized by q^dim to the augmentation number.

use crate::algebra::fq::{Fq, FqElem};
use crate::algebra::rhs::q_power;
use crate::dga::{Dga, Poly};
use crate::error::{Error, Result};
use crate::front::FrontDiagram;
use crate::maslov::{check_grading, MaslovPotential};
use crate::rulings::{enumerate_rulings, ruling_stats};
use num::{BigInt, BigRational, Zero};
use rayon::prelude::*;
use std::collections::BTreeSet;

/// Default ceiling on the brute-force search space.
pub const DEFAULT_CAP: u128 = 100_000_000;

/// Evaluate a differential polynomial at a point: `vals` assigns a field
/// element to every generator id, `tvals` a unit to every component.
pub(crate) fn eval_poly(field: &Fq, p: &Poly, vals: &[FqElem], tvals: &[FqElem]) -> FqElem {
    let mut acc = FqElem::ZERO;
    'terms: for ((letters, t_exp), &coeff) in &p.terms {
        let mut prod = field.from_int(coeff);
        if prod.is_zero() {
            continue;
        }
        for (i, &e) in t_exp.iter().enumerate() {
            if e != 0 {
                prod = field.mul(prod, field.pow(tvals[i], e).expect("t values are units"));
            }
        }
        for &g in letters {
            if vals[g].is_zero() {
                continue 'terms;
            }
            prod = field.mul(prod, vals[g]);
        }
        acc = field.add(acc, prod);
    }
    acc
}

fn pow_u128(base: u128, exp: u32, cap: u128) -> Result<u128> {
    base.checked_pow(exp).ok_or(Error::Scale { space: u128::MAX, cap })
}

/// Point count of the m-graded augmentation variety over GF(q), by direct
/// enumeration. Fails with a scale error if the search space exceeds `cap`.
pub fn brute_count(dga: &Dga, m: i64, q: u64, cap: u128) -> Result<u128> {
    check_grading(&dga.front, m)?;
    let field = Fq::from_order(q)?;
    let n = dga.n_gens();
    let c = dga.front.n_components();
    let graded: Vec<bool> =
        dga.gens.iter().map(|g| dga.mu.is_graded(g.degree, m)).collect();

    // Only differentials landing in degree 0 mod m can evaluate nonzero:
    // every word of any other differential keeps a letter outside degree 0,
    // which the augmentation kills.
    let relevant: Vec<usize> =
        (0..n).filter(|&g| dga.mu.is_graded(dga.gens[g].degree - 1, m)).collect();
    let mut active: BTreeSet<usize> = BTreeSet::new();
    for &g in &relevant {
        for (letters, _) in dga.diffs[g].terms.keys() {
            active.extend(letters.iter().copied().filter(|&x| graded[x]));
        }
    }
    // Graded generators outside every live equation take any of q values.
    let free = (0..n).filter(|&g| graded[g] && !active.contains(&g)).count();
    let active: Vec<usize> = active.into_iter().collect();

    let space = pow_u128(q as u128, active.len() as u32, cap)?
        .checked_mul(pow_u128((q - 1) as u128, c as u32, cap)?)
        .ok_or(Error::Scale { space: u128::MAX, cap })?;
    if space > cap {
        return Err(Error::Scale { space, cap });
    }

    let equations: Vec<&Poly> = relevant.iter().map(|&g| &dga.diffs[g]).collect();
    let points = usize::try_from(space).map_err(|_| Error::Scale { space, cap })?;
    let radix = q as usize;
    let solutions: u128 = (0..points)
        .into_par_iter()
        .map_init(
            || (vec![FqElem::ZERO; n], vec![FqElem::ONE; c]),
            |(vals, tvals), idx| {
                let mut rest = idx;
                for &g in &active {
                    vals[g] = FqElem((rest % radix) as u32);
                    rest /= radix;
                }
                for t in tvals.iter_mut() {
                    *t = FqElem(1 + (rest % (radix - 1)) as u32);
                    rest /= radix - 1;
                }
                u128::from(equations.iter().all(|p| eval_poly(&field, p, vals, tvals).is_zero()))
            },
        )
        .sum();

    solutions
        .checked_mul(pow_u128(q as u128, free as u32, cap)?)
        .ok_or(Error::Scale { space: u128::MAX, cap })
}

/// Every point of the m-graded augmentation variety over GF(q), in a fixed
/// order: a value per generator (zero at the non-graded ones) together with
/// the unit assigned to each component's t variable. Unlike the count, the
/// free generators are enumerated too, so the space bound is larger.
pub fn brute_solutions(
    dga: &Dga,
    m: i64,
    q: u64,
    cap: u128,
) -> Result<Vec<(Vec<FqElem>, Vec<FqElem>)>> {
    check_grading(&dga.front, m)?;
    let field = Fq::from_order(q)?;
    let n = dga.n_gens();
    let c = dga.front.n_components();
    let graded: Vec<usize> =
        (0..n).filter(|&g| dga.mu.is_graded(dga.gens[g].degree, m)).collect();
    let relevant: Vec<usize> =
        (0..n).filter(|&g| dga.mu.is_graded(dga.gens[g].degree - 1, m)).collect();
    let equations: Vec<&Poly> = relevant.iter().map(|&g| &dga.diffs[g]).collect();

    let space = pow_u128(q as u128, graded.len() as u32, cap)?
        .checked_mul(pow_u128((q - 1) as u128, c as u32, cap)?)
        .ok_or(Error::Scale { space: u128::MAX, cap })?;
    if space > cap {
        return Err(Error::Scale { space, cap });
    }
    let points = usize::try_from(space).map_err(|_| Error::Scale { space, cap })?;

    let radix = q as usize;
    let mut vals = vec![FqElem::ZERO; n];
    let mut tvals = vec![FqElem::ONE; c];
    let mut out = Vec::new();
    for idx in 0..points {
        let mut rest = idx;
        for &g in &graded {
            vals[g] = FqElem((rest % radix) as u32);
            rest /= radix;
        }
        for t in tvals.iter_mut() {
            *t = FqElem(1 + (rest % (radix - 1)) as u32);
            rest /= radix - 1;
        }
        if equations.iter().all(|p| eval_poly(&field, p, &vals, &tvals).is_zero()) {
            out.push((vals.clone(), tvals.clone()));
        }
    }
    Ok(out)
}

/// The same count from the ruling side: sum over m-graded normal rulings of
/// (q-1)^(j+c) q^r, with c the number of link components.
pub fn ruling_count(d: &FrontDiagram, mu: &MaslovPotential, m: i64, q: u64) -> Result<u128> {
    let rulings = enumerate_rulings(d, mu, m)?;
    let comps = d.n_components() as i64;
    let mut total: u128 = 0;
    for r in &rulings {
        let st = ruling_stats(d, r, m);
        // j + c >= 0: each ruling disk must meet another along a switch
        // somewhere in its component of the link.
        let e1 = u32::try_from(st.j + comps).expect("switches at least cusps minus components");
        let e2 = u32::try_from(st.r).expect("free coordinate count is nonnegative");
        let size = pow_u128(q as u128 - 1, e1, u128::MAX)?
            .checked_mul(pow_u128(q as u128, e2, u128::MAX)?)
            .ok_or(Error::Scale { space: u128::MAX, cap: u128::MAX })?;
        total = total.checked_add(size).ok_or(Error::Scale {
            space: u128::MAX,
            cap: u128::MAX,
        })?;
    }
    Ok(total)
}

/// Dimension of the augmentation variety: the largest j + c + r over rulings.
/// None when there are no rulings (the variety is empty).
pub fn variety_dim(d: &FrontDiagram, mu: &MaslovPotential, m: i64) -> Result<Option<i64>> {
    let rulings = enumerate_rulings(d, mu, m)?;
    let comps = d.n_components() as i64;
    Ok(rulings
        .iter()
        .map(|r| {
            let st = ruling_stats(d, r, m);
            st.j + comps + st.r
        })
        .max())
}

/// The augmentation number count / q^dim. A zero count gives zero outright;
/// a nonzero count with no rulings has no sensible normalization, so None.
pub fn aug_number(count: u128, dim: Option<i64>, q: u64) -> Option<BigRational> {
    if count == 0 {
        return Some(BigRational::zero());
    }
    let dim = dim?;
    Some(BigRational::from_integer(BigInt::from(count)) * q_power(q, -dim))
}
