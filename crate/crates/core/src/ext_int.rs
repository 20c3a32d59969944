//! Integers extended by `-inf` and `+inf`, the value set of a discrete valuation.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};
use core::str::FromStr;

/// An element of `Z ∪ {−∞, +∞}`.
///
/// The derived ordering puts `NegInf` below every finite value and `PosInf`
/// above, which is exactly the order of the extended value group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
    PosInf,
}

impl ExtInt {
    pub const ZERO: ExtInt = ExtInt::Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Fin(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Fin(n) => Some(n),
            _ => None,
        }
    }

    /// Sum with infinities absorbing. Returns `None` for `−∞ + +∞`.
    pub fn checked_add(self, other: ExtInt) -> Option<ExtInt> {
        use ExtInt::*;
        match (self, other) {
            (NegInf, PosInf) | (PosInf, NegInf) => None,
            (NegInf, _) | (_, NegInf) => Some(NegInf),
            (PosInf, _) | (_, PosInf) => Some(PosInf),
            (Fin(a), Fin(b)) => Some(Fin(a.checked_add(b).expect("valuation overflow"))),
        }
    }

    /// Integer multiple. A zero multiplier yields zero even for infinite values,
    /// matching the convention that a term with multiplicity zero is absent.
    pub fn scale(self, n: i64) -> ExtInt {
        use ExtInt::*;
        match (self, n.cmp(&0)) {
            (_, Ordering::Equal) => Fin(0),
            (Fin(a), _) => Fin(a.checked_mul(n).expect("valuation overflow")),
            (PosInf, Ordering::Greater) | (NegInf, Ordering::Less) => PosInf,
            (PosInf, Ordering::Less) | (NegInf, Ordering::Greater) => NegInf,
        }
    }
}

impl From<i64> for ExtInt {
    fn from(n: i64) -> Self {
        ExtInt::Fin(n)
    }
}

impl Add for ExtInt {
    type Output = ExtInt;

    /// Panics on `−∞ + +∞`; use [`ExtInt::checked_add`] where that can arise.
    fn add(self, rhs: ExtInt) -> ExtInt {
        self.checked_add(rhs).expect("undefined sum -inf + +inf")
    }
}

impl Neg for ExtInt {
    type Output = ExtInt;

    fn neg(self) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::PosInf,
            ExtInt::PosInf => ExtInt::NegInf,
            ExtInt::Fin(n) => ExtInt::Fin(-n),
        }
    }
}

impl Sub for ExtInt {
    type Output = ExtInt;

    fn sub(self, rhs: ExtInt) -> ExtInt {
        self + (-rhs)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => f.write_str("-inf"),
            ExtInt::PosInf => f.write_str("+inf"),
            ExtInt::Fin(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid extended integer {0:?}")]
pub struct ParseExtIntError(pub alloc::string::String);

impl FromStr for ExtInt {
    type Err = ParseExtIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-inf" => Ok(ExtInt::NegInf),
            "+inf" | "inf" => Ok(ExtInt::PosInf),
            other => other
                .parse::<i64>()
                .map(ExtInt::Fin)
                .map_err(|_| ParseExtIntError(other.into())),
        }
    }
}
