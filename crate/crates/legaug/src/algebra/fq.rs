//! Finite field arithmetic for GF(p^k), exact and table-backed.
//!
//! Elements are canonical indices: the element with polynomial digits
//! c_0 + c_1 x + ... + c_{k-1} x^{k-1} over GF(p) has index
//! sum c_i p^i, so 0 is zero, 1 is one, and iteration order is index order.
//! The modulus is the lexicographically least monic irreducible of degree k,
//! scanning constant coefficient first.

use serde::Serialize;

use crate::error::{Error, Result};

/// One element of a fixed GF(p^k), stored as its canonical index.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct FqElem(pub u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A finite field context: all arithmetic goes through one of these.
#[derive(Clone, Debug, Serialize)]
pub struct Fq {
    p: u64,
    k: u32,
    q: u64,
    /// Coefficients of the modulus, constant first, length k + 1, monic.
    modulus: Vec<u64>,
    #[serde(skip)]
    inv_table: Vec<u32>,
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}
impl Eq for Fq {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits q into (p, k) with p prime, or reports the failure.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrime(q));
    }
    let mut p = 2u64;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut k = 0u32;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            if rest != 1 {
                return Err(Error::NotPrime(q));
            }
            return Ok((p, k));
        }
        p += 1;
    }
    Ok((q, 1))
}

// Dense polynomials over GF(p), constant coefficient first, no trailing zeros.

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inv_prime(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = (r[dr] * lead_inv) % p;
        for i in 0..=db {
            let idx = dr - db + i;
            r[idx] = (r[idx] + p - (c * b[i]) % p) % p;
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut out);
    out
}

fn mod_inv_prime(a: u64, p: u64) -> u64 {
    // Extended Euclid on integers; p is prime and a != 0 mod p.
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (s0, s1) = (s1, s0 - qt * s1);
    }
    debug_assert_eq!(r0, 1);
    (((s0 % p as i64) + p as i64) % p as i64) as u64
}

/// Monic polynomials of the given degree in index order, used by the
/// irreducibility scan.
fn monic_polys(deg: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    let count = (p as u128).pow(deg as u32);
    (0..count).map(move |mut idx| {
        let mut v = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            v.push((idx % p as u128) as u64);
            idx /= p as u128;
        }
        v.push(1);
        v
    })
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        for g in monic_polys(d, p) {
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Fq {
    /// Builds GF(p^k). The modulus is found by scanning coefficient vectors
    /// (c_0, c_1, ...) in ascending order and taking the first irreducible.
    pub fn new(p: u64, k: u32) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::DegreeZero);
        }
        let q = p.checked_pow(k).filter(|&q| q <= 1 << 20).ok_or_else(|| Error::Scale {
            space: (p as u128).pow(k),
            cap: 1 << 20,
        })?;
        let modulus = monic_polys(k as usize, p)
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible of every degree exists");
        let mut fq = Fq { p, k, q, modulus, inv_table: Vec::new() };
        let mut table = vec![0u32; q as usize];
        for i in 1..q {
            table[i as usize] = fq.inv_uncached(FqElem(i as u32)).0;
        }
        fq.inv_table = table;
        Ok(fq)
    }

    pub fn from_order(q: u64) -> Result<Fq> {
        let (p, k) = prime_power(q)?;
        Fq::new(p, k)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q as u32).map(FqElem)
    }

    pub fn units(&self) -> impl Iterator<Item = FqElem> {
        (1..self.q as u32).map(FqElem)
    }

    fn digits(&self, e: FqElem) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.k as usize);
        let mut idx = e.0 as u64;
        for _ in 0..self.k {
            v.push(idx % self.p);
            idx /= self.p;
        }
        v
    }

    fn from_digits(&self, d: &[u64]) -> FqElem {
        let mut idx = 0u64;
        for &c in d.iter().rev() {
            idx = idx * self.p + c % self.p;
        }
        FqElem(idx as u32)
    }

    /// The image of an integer under the ring map Z -> GF(p^k).
    pub fn from_int(&self, n: i64) -> FqElem {
        let c = n.rem_euclid(self.p as i64) as u64;
        FqElem(c as u32)
    }

    pub fn minus_one(&self) -> FqElem {
        self.from_int(-1)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&sum)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        let d: Vec<u64> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.from_digits(&d)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        let prod = poly_mul(&self.digits(a), &self.digits(b), self.p);
        let rem = poly_rem(&prod, &self.modulus, self.p);
        let mut digits = rem;
        digits.resize(self.k as usize, 0);
        self.from_digits(&digits)
    }

    fn inv_uncached(&self, a: FqElem) -> FqElem {
        // Extended Euclid on polynomial representatives modulo the modulus.
        let mut r0 = self.modulus.clone();
        let mut r1 = self.digits(a);
        poly_trim(&mut r1);
        assert!(!r1.is_empty(), "inverse of zero");
        let mut s0: Vec<u64> = Vec::new();
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() && r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1, self.p);
            let qs1 = poly_mul(&q, &s1, self.p);
            let s2 = poly_sub(&s0, &qs1, self.p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is now a nonzero constant; scale s1 by its inverse.
        let c = mod_inv_prime(r1[0], self.p);
        let mut digits: Vec<u64> = s1.iter().map(|&x| (x * c) % self.p).collect();
        digits.resize(self.k as usize, 0);
        self.from_digits(&digits)
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::DivByZero);
        }
        Ok(FqElem(self.inv_table[a.0 as usize]))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e with e allowed negative; a must be a unit when e < 0.
    pub fn pow(&self, a: FqElem, e: i64) -> Result<FqElem> {
        let base = if e < 0 { self.inv(a)? } else { a };
        let mut n = e.unsigned_abs();
        let mut acc = FqElem::ONE;
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            n >>= 1;
        }
        Ok(acc)
    }
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y % p) % p;
    }
    poly_trim(&mut out);
    out
}

fn poly_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inv_prime(b[db], p);
    let mut q = vec![0u64; r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = (r[dr] * lead_inv) % p;
        q[dr - db] = c;
        for i in 0..=db {
            let idx = dr - db + i;
            r[idx] = (r[idx] + p - (c * b[i]) % p) % p;
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    poly_trim(&mut q);
    (q, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_gf4_is_x2_x_1() {
        let f = Fq::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn modulus_gf9_is_x2_1() {
        let f = Fq::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn modulus_prime_field_is_x() {
        let f = Fq::new(5, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn gf4_multiplication_table_spot_checks() {
        let f = Fq::new(2, 2).unwrap();
        // index 2 = x, index 3 = x + 1; x * (x + 1) = x^2 + x = 1.
        assert_eq!(f.mul(FqElem(2), FqElem(3)), FqElem::ONE);
        assert_eq!(f.mul(FqElem(2), FqElem(2)), FqElem(3));
    }

    #[test]
    fn gf5_inverse_of_two_is_three() {
        let f = Fq::new(5, 1).unwrap();
        assert_eq!(f.inv(FqElem(2)).unwrap(), FqElem(3));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2u64, 3, 4, 5, 8, 9] {
            let f = Fq::from_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, FqElem::ZERO), a);
                assert_eq!(f.mul(a, FqElem::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FqElem::ONE);
                    // Lagrange: a^(q-1) = 1.
                    assert_eq!(f.pow(a, q as i64 - 1).unwrap(), FqElem::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn negative_powers() {
        let f = Fq::new(3, 2).unwrap();
        for a in f.units() {
            let inv = f.inv(a).unwrap();
            assert_eq!(f.pow(a, -1).unwrap(), inv);
            assert_eq!(f.pow(a, -3).unwrap(), f.mul(inv, f.mul(inv, inv)));
        }
        assert_eq!(f.pow(FqElem::ZERO, 0).unwrap(), FqElem::ONE);
        assert!(f.pow(FqElem::ZERO, -1).is_err());
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8).unwrap(), (2, 3));
        assert_eq!(prime_power(9).unwrap(), (3, 2));
        assert_eq!(prime_power(7).unwrap(), (7, 1));
        assert!(prime_power(6).is_err());
        assert!(prime_power(1).is_err());
        assert!(prime_power(12).is_err());
    }

    #[test]
    fn char_map_wraps() {
        let f = Fq::new(3, 1).unwrap();
        assert_eq!(f.from_int(-1), FqElem(2));
        assert_eq!(f.from_int(4), FqElem(1));
        let g = Fq::new(2, 2).unwrap();
        assert_eq!(g.minus_one(), FqElem::ONE);
    }
}
