//! Dense univariate polynomials over a prime field `F_p`.
//!
//! Coefficients are stored low degree first with no trailing zeros, so the
//! zero polynomial is the empty vector. The modulus is passed to every
//! operation rather than stored in each value.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "inverse of zero in F_p");
    // Fermat; p is prime.
    let mut base = a as u64 % p as u64;
    let mut exp = p as u64 - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<u32>,
}

impl Ord for Poly {
    /// Degree first, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    /// Builds a polynomial from low-first coefficients, reducing them mod `p`.
    pub fn new(coeffs: impl IntoIterator<Item = u64>, p: u32) -> Poly {
        let mut coeffs: Vec<u32> = coeffs.into_iter().map(|c| (c % p as u64) as u32).collect();
        trim(&mut coeffs);
        Poly { coeffs }
    }

    pub(crate) fn from_reduced(mut coeffs: Vec<u32>) -> Poly {
        trim(&mut coeffs);
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }

    pub fn constant(c: u32, p: u32) -> Poly {
        Poly::new([c as u64], p)
    }

    /// `c·t^k`
    pub fn monomial(c: u32, k: usize, p: u32) -> Poly {
        let c = c % p;
        if c == 0 {
            return Poly::zero();
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The indeterminate `t`.
    pub fn t() -> Poly {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.as_slice() == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Order of vanishing at `t = 0`; `None` for zero.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn add(&self, other: &Poly, p: u32) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| add_mod(self.coeff(i), other.coeff(i), p)).collect();
        Poly::from_reduced(coeffs)
    }

    pub fn sub(&self, other: &Poly, p: u32) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| sub_mod(self.coeff(i), other.coeff(i), p)).collect();
        Poly::from_reduced(coeffs)
    }

    pub fn neg(&self, p: u32) -> Poly {
        Poly::from_reduced(self.coeffs.iter().map(|&c| sub_mod(0, c, p)).collect())
    }

    pub fn scale(&self, c: u32, p: u32) -> Poly {
        Poly::from_reduced(self.coeffs.iter().map(|&a| mul_mod(a, c, p)).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &Poly, p: u32) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let pp = p as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % pp;
            }
        }
        Poly::from_reduced(acc.into_iter().map(|c| c as u32).collect())
    }

    pub fn pow(&self, mut e: u32, p: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, p);
            }
            base = base.mul(&base, p);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division; panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly, p: u32) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let inv_lead = inv_mod(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = mul_mod(rem[k + dd], inv_lead, p);
            quot[k] = c;
            if c != 0 {
                for (j, &d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = sub_mod(rem[k + j], mul_mod(c, d, p), p);
                }
            }
        }
        rem.truncate(dd);
        (Poly::from_reduced(quot), Poly::from_reduced(rem))
    }

    pub fn rem(&self, divisor: &Poly, p: u32) -> Poly {
        self.div_rem(divisor, p).1
    }

    /// Splits off the leading coefficient: returns `(lc, self / lc)`.
    pub fn monic_parts(&self, p: u32) -> (u32, Poly) {
        match self.leading() {
            0 => (0, Poly::zero()),
            1 => (1, self.clone()),
            lc => (lc, self.scale(inv_mod(lc, p), p)),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly, p: u32) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.monic_parts(p).1
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Poly, p: u32) -> Option<Poly> {
        // Extended Euclid tracking only the coefficient of `self`.
        let (mut r0, mut r1) = (m.clone(), self.rem(m, p));
        let (mut s0, mut s1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1, p);
            let s = s0.sub(&q.mul(&s1, p), p);
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = inv_mod(r0.leading(), p);
        Some(s0.scale(c, p).rem(m, p))
    }

    /// Divides out the largest power of `s` dividing `self`; returns the
    /// exponent and the cofactor. `self` must be nonzero.
    pub fn strip_factor(&self, s: &Poly, p: u32) -> (u32, Poly) {
        debug_assert!(!self.is_zero());
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(s, p);
            if !r.is_zero() {
                return (k, cur);
            }
            cur = q;
            k += 1;
        }
    }

    /// Coefficient vector reversed over `deg` slots: `t^deg · self(1/t)`.
    pub fn reversed(&self, deg: usize) -> Poly {
        let mut coeffs = vec![0u32; deg + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[deg - i] = c;
        }
        Poly::from_reduced(coeffs)
    }

    /// Truncation modulo `t^k`.
    pub fn truncate(&self, k: usize) -> Poly {
        Poly::from_reduced(self.coeffs.iter().take(k).copied().collect())
    }

    pub fn eval(&self, x: u32, p: u32) -> u32 {
        self.coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
    }

    /// Irreducibility by trial division by every monic polynomial of degree
    /// at most `deg/2`.
    pub fn is_irreducible(&self, p: u32) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        for k in 1..=d / 2 {
            for f in monics_of_degree(k, p) {
                if self.rem(&f, p).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// The `index`-th polynomial of degree `< n` in base-`p` digit order:
    /// coefficient `j` is digit `j` of `index`.
    pub fn from_index(mut index: u64, p: u32) -> Poly {
        let mut coeffs = Vec::new();
        while index > 0 {
            coeffs.push((index % p as u64) as u32);
            index /= p as u64;
        }
        Poly::from_reduced(coeffs)
    }
}

fn trim(coeffs: &mut Vec<u32>) {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
}

/// All monic polynomials of exact degree `k`.
pub fn monics_of_degree(k: usize, p: u32) -> impl Iterator<Item = Poly> {
    let count = (p as u64).pow(k as u32);
    (0..count).map(move |i| {
        let mut coeffs = Poly::from_index(i, p).coeffs;
        coeffs.resize(k, 0);
        coeffs.push(1);
        Poly { coeffs }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P2: u32 = 2;

    #[test]
    fn product_over_f2() {
        // (1+t)(1-t) = 1 - t^2 = 1 + t^2 over F_2
        let a = Poly::new([1, 1], P2);
        let b = Poly::new([1, 1], P2);
        assert_eq!(a.mul(&b, P2), Poly::new([1, 0, 1], P2));
    }

    #[test]
    fn division_identity() {
        let p = 7;
        let a = Poly::new([3, 0, 5, 1, 6], p);
        let b = Poly::new([2, 1, 4], p);
        let (q, r) = a.div_rem(&b, p);
        assert_eq!(q.mul(&b, p).add(&r, p), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_is_monic() {
        let p = 5;
        let f = Poly::new([1, 1], p); // t+1
        let a = f.mul(&Poly::new([2, 3], p), p);
        let b = f.mul(&Poly::new([2, 0, 1], p), p).scale(3, p); // t^2+2 has no root mod 5
        assert_eq!(a.gcd(&b, p), f);
    }

    #[test]
    fn inverse_modulo_irreducible() {
        let p = 2;
        let s = Poly::new([1, 1, 1], p);
        for i in 1..4 {
            let a = Poly::from_index(i, p);
            let inv = a.inv_mod(&s, p).unwrap();
            assert!(a.mul(&inv, p).rem(&s, p).is_one());
        }
        assert!(Poly::new([1, 0, 1], p).inv_mod(&Poly::new([1, 1], p), p).is_none());
    }

    #[test]
    fn irreducibility_small_cases() {
        assert!(Poly::new([1, 1, 1], 2).is_irreducible(2));
        assert!(!Poly::new([1, 0, 1], 2).is_irreducible(2));
        assert!(Poly::new([1, 0, 1], 3).is_irreducible(3));
        assert!(Poly::t().is_irreducible(5));
        assert!(!Poly::constant(3, 5).is_irreducible(5));
    }

    #[test]
    fn index_enumeration_order() {
        let got: Vec<Poly> = (0..4).map(|i| Poly::from_index(i, 2)).collect();
        assert_eq!(got, [Poly::zero(), Poly::one(), Poly::t(), Poly::new([1, 1], 2)]);
    }
}
