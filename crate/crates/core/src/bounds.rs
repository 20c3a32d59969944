//! Incidence-bound exponents and values in exact rational arithmetic.
//!
//! For a `K_{d,s}`-free relation admitting distal cell decompositions with
//! exponent `t`, the incidence count on `A₀ × B₀` is at most
//! `C·|A₀|^α·|B₀|^β + |A₀| + |B₀|` with `α = (t−1)d/(td−1)` and
//! `β = (td−t)/(td−1)`.

use alloc::string::String;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("d and s must be at least 1")]
    ZeroArity,
    #[error("the cell exponent t must exceed 1, got {0}")]
    ExponentTooSmall(BigRational),
    #[error("the constant C must be positive, got {0}")]
    NonPositiveConstant(BigRational),
    #[error("the residue field size q must be at least 2")]
    BadResidueSize,
}

/// `(d, s, t, q, C)`; construct through [`BoundParams::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundParams {
    d: u64,
    s: u64,
    t: BigRational,
    q: u64,
    c: BigRational,
}

impl BoundParams {
    pub fn new(d: u64, s: u64, t: BigRational, q: u64, c: BigRational) -> Result<Self, BoundsError> {
        if d == 0 || s == 0 {
            return Err(BoundsError::ZeroArity);
        }
        if t <= BigRational::one() {
            return Err(BoundsError::ExponentTooSmall(t));
        }
        if !c.is_positive() {
            return Err(BoundsError::NonPositiveConstant(c));
        }
        if q < 2 {
            return Err(BoundsError::BadResidueSize);
        }
        Ok(BoundParams { d, s, t, q, c })
    }

    /// The exponent `t = 4(q+1)` available for the point-line relation over a
    /// field with residue field of size `q`.
    pub fn point_line(q: u64, c: BigRational) -> Result<Self, BoundsError> {
        Self::new(2, 2, BigRational::from_integer(BigInt::from(4 * (q + 1))), q, c)
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn t(&self) -> &BigRational {
        &self.t
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exponents {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub epsilon: BigRational,
    /// Symmetric point-line exponent `3/2 − 1/(16(q+1)−2)`.
    pub sym: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn sym_exponent(q: u64) -> BigRational {
    let q = BigInt::from(q);
    BigRational::new(BigInt::from(3), BigInt::from(2))
        - BigRational::new(BigInt::one(), BigInt::from(16) * (q + 1u32) - 2u32)
}

pub fn bound_exponents(bp: &BoundParams) -> Exponents {
    let t = &bp.t;
    let d = rat(bp.d as i64);
    // td > 1 because t > 1 and d ≥ 1
    let td1 = t * &d - rat(1);
    Exponents {
        alpha: (t - rat(1)) * &d / &td1,
        beta: (t * &d - t) / &td1,
        epsilon: rat(1) / &td1,
        sym: sym_exponent(bp.q),
    }
}

/// A rational value that is exact or a certified upper bound within `2⁻⁶⁴`
/// relative to the integer part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    pub value: BigRational,
    pub exact: bool,
}

const GUARD_BITS: usize = 64;

/// `a^α·b^β` for nonnegative rational exponents, exact when the result is
/// rational with the obvious denominator, else rounded up.
pub fn power_product(a: u64, alpha: &BigRational, b: u64, beta: &BigRational) -> BoundValue {
    assert!(!alpha.is_negative() && !beta.is_negative(), "exponents must be nonnegative");
    let den = alpha.denom().lcm(beta.denom());
    let na = (alpha * BigRational::from_integer(den.clone())).to_integer();
    let nb = (beta * BigRational::from_integer(den.clone())).to_integer();
    let den = den.to_u32().expect("exponent denominator fits in u32");
    let x = BigUint::from(a).pow(na.to_u32().expect("small exponent"))
        * BigUint::from(b).pow(nb.to_u32().expect("small exponent"));
    let r = x.nth_root(den);
    if r.pow(den) == x {
        return BoundValue { value: BigRational::from_integer(BigInt::from(r)), exact: true };
    }
    // floor((x·2^{kD})^{1/D}) + 1 over 2^k bounds x^{1/D} from above
    let scaled = (x << (GUARD_BITS * den as usize)).nth_root(den) + 1u32;
    BoundValue {
        value: BigRational::new(BigInt::from(scaled), BigInt::one() << GUARD_BITS),
        exact: false,
    }
}

/// `C·a^α·b^β + a + b`.
pub fn bound_value(bp: &BoundParams, a: u64, b: u64) -> BoundValue {
    let e = bound_exponents(bp);
    let main = power_product(a, &e.alpha, b, &e.beta);
    BoundValue {
        value: &bp.c * main.value + rat(a as i64) + rat(b as i64),
        exact: main.exact,
    }
}

/// `(num/den)^{1/k}` truncated to `digits` decimal places, as text.
pub fn root_decimal(num: &BigUint, den: &BigUint, k: u32, digits: u32) -> String {
    let scale = BigUint::from(10u32).pow(digits * k);
    let v = (num * scale / den).nth_root(k);
    let unit = BigUint::from(10u32).pow(digits);
    let (int, frac) = v.div_rem(&unit);
    if digits == 0 {
        return alloc::format!("{int}");
    }
    alloc::format!("{int}.{frac:0>width$}", width = digits as usize)
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        alloc::format!("{}", r.numer())
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn bp(d: u64, t: BigRational, q: u64, c: i64) -> BoundParams {
        BoundParams::new(d, 2, t, q, rat(c)).unwrap()
    }

    #[test]
    fn classical_exponents() {
        let e = bound_exponents(&bp(2, rat(2), 2, 1));
        assert_eq!(e.alpha, r(2, 3));
        assert_eq!(e.beta, r(2, 3));
        assert_eq!(e.epsilon, r(1, 3));
    }

    #[test]
    fn epsilon_at_point_line_exponent() {
        // t = 4(q+1) = 12, so dt − 1 = 23
        let p = BoundParams::point_line(2, rat(1)).unwrap();
        assert_eq!(p.t(), &rat(12));
        assert_eq!(bound_exponents(&p).epsilon, r(1, 23));
    }

    #[test]
    fn symmetric_exponent_matches_closed_form() {
        for p in [2i64, 3, 5, 7] {
            assert_eq!(sym_exponent(p as u64), r(3, 2) - r(1, 16 * p + 14));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(BoundParams::new(0, 2, rat(2), 2, rat(1)), Err(BoundsError::ZeroArity));
        assert!(matches!(BoundParams::new(2, 2, rat(1), 2, rat(1)), Err(BoundsError::ExponentTooSmall(_))));
        assert!(matches!(BoundParams::new(2, 2, rat(2), 2, rat(0)), Err(BoundsError::NonPositiveConstant(_))));
    }

    #[test]
    fn bound_value_examples() {
        let p = bp(2, rat(2), 2, 4);
        assert_eq!(bound_value(&p, 1, 1), BoundValue { value: rat(6), exact: true });
        // 64^{2/3} = 16, so 4·16·16 + 64 + 64
        assert_eq!(bound_value(&p, 64, 64), BoundValue { value: rat(1152), exact: true });
        assert_eq!(bound_value(&p, 0, 9).value, rat(9));
    }

    #[test]
    fn inexact_values_are_tight_upper_bounds() {
        // 2^{2/3}·2^{2/3} = 2^{4/3} ≈ 2.5198
        let v = power_product(2, &r(2, 3), 2, &r(2, 3));
        assert!(!v.exact);
        let cube = &v.value * &v.value * &v.value;
        assert!(cube > rat(16));
        let lower = &v.value - r(1, 1 << 20);
        assert!(&lower * &lower * &lower < rat(16));
    }

    #[test]
    fn decimal_roots() {
        assert_eq!(root_decimal(&BigUint::from(2u32), &BigUint::from(1u32), 2, 4), "1.4142");
        assert_eq!(root_decimal(&BigUint::from(1u32), &BigUint::from(2u32), 2, 3), "0.707");
        assert_eq!(root_decimal(&BigUint::from(27u32), &BigUint::from(1u32), 3, 0), "3");
    }

    proptest! {
        #[test]
        fn exponent_sum_identity(tn in 2i64..40, td in 1i64..5, d in 1u64..6) {
            prop_assume!(tn > td);
            let t = r(tn, td);
            let e = bound_exponents(&bp(d, t.clone(), 3, 1));
            let dd = rat(d as i64);
            let expected = (rat(2) * &t * &dd - &t - &dd) / (&t * &dd - rat(1));
            prop_assert_eq!(&e.alpha + &e.beta, expected);
            if d >= 2 && t >= rat(2) {
                prop_assert!(e.alpha > rat(0) && e.alpha < rat(1));
                prop_assert!(e.beta > rat(0) && e.beta < rat(1));
            }
        }

        #[test]
        fn bound_value_is_monotone(a in 0u64..200, b in 0u64..200, da in 0u64..20, db in 0u64..20, c in 1i64..6) {
            let p = bp(2, rat(2), 2, c);
            let q = bp(2, rat(2), 2, c + 1);
            let base = bound_value(&p, a, b).value;
            prop_assert!(bound_value(&p, a + da, b + db).value >= base.clone());
            prop_assert!(bound_value(&q, a, b).value >= base);
        }
    }
}
