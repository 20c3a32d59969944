//! Ultrametric balls with `K`-centres and radii in `Z ∪ {±∞}`.
//!
//! Balls are compared as balls of the algebraic closure `L` (value group
//! `Q`), not as sets of `K`-points: `open(a, γ)` and `closed(a, γ+1)` have the
//! same `K`-points but are different balls, the first strictly containing the
//! second.

use core::fmt;

use crate::ext_int::ExtInt;
use crate::field::{FieldContext, FieldElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BallKind {
    Closed,
    Open,
}

impl BallKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BallKind::Closed => "closed",
            BallKind::Open => "open",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BallError {
    #[error("join of the empty ball is undefined")]
    EmptyJoin,
}

/// `{x : v(x − center) ≥ radius}` or `{x : v(x − center) > radius}`.
///
/// Always stored normalized, with the centre replaced by the canonical
/// representative of its class modulo the radius, so that derived equality,
/// ordering and hashing are ball identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ball {
    kind: BallKind,
    radius: ExtInt,
    center: FieldElement,
}

impl Ball {
    pub fn new(ctx: &FieldContext, kind: BallKind, center: &FieldElement, radius: ExtInt) -> Ball {
        use ExtInt::*;
        match (kind, radius) {
            (_, NegInf) => Ball::whole(ctx),
            (BallKind::Open, PosInf) => Ball::empty(ctx),
            (BallKind::Closed, PosInf) => Ball::point(center),
            (BallKind::Closed, Fin(r)) => Ball { kind, radius, center: ctx.truncate(center, r) },
            (BallKind::Open, Fin(r)) => Ball { kind, radius, center: ctx.truncate(center, r + 1) },
        }
    }

    pub fn closed(ctx: &FieldContext, center: &FieldElement, radius: impl Into<ExtInt>) -> Ball {
        Ball::new(ctx, BallKind::Closed, center, radius.into())
    }

    pub fn open(ctx: &FieldContext, center: &FieldElement, radius: impl Into<ExtInt>) -> Ball {
        Ball::new(ctx, BallKind::Open, center, radius.into())
    }

    /// The whole line `L`: closed of radius `−∞`.
    pub fn whole(ctx: &FieldContext) -> Ball {
        Ball { kind: BallKind::Closed, radius: ExtInt::NegInf, center: ctx.zero() }
    }

    /// The empty ball: open of radius `+∞`.
    pub fn empty(ctx: &FieldContext) -> Ball {
        Ball { kind: BallKind::Open, radius: ExtInt::PosInf, center: ctx.zero() }
    }

    /// `{a}`: closed of radius `+∞`.
    pub fn point(a: &FieldElement) -> Ball {
        Ball { kind: BallKind::Closed, radius: ExtInt::PosInf, center: a.clone() }
    }

    pub fn kind(&self) -> BallKind {
        self.kind
    }

    pub fn radius(&self) -> ExtInt {
        self.radius
    }

    pub fn center(&self) -> &FieldElement {
        &self.center
    }

    pub fn is_whole(&self) -> bool {
        self.radius == ExtInt::NegInf
    }

    pub fn is_empty(&self) -> bool {
        self.kind == BallKind::Open && self.radius == ExtInt::PosInf
    }

    pub fn is_point(&self) -> bool {
        self.kind == BallKind::Closed && self.radius == ExtInt::PosInf
    }

    /// Whether `v(x − a)` satisfies the radius condition of this ball,
    /// given the valuation of the difference to the centre.
    fn admits(&self, dist: ExtInt) -> bool {
        match self.kind {
            BallKind::Closed => dist >= self.radius,
            BallKind::Open => dist > self.radius,
        }
    }

    pub fn contains_point(&self, ctx: &FieldContext, x: &FieldElement) -> bool {
        if self.is_whole() {
            return true;
        }
        self.admits(ctx.valuation(&ctx.sub(x, &self.center)))
    }

    /// `self ⊆ other` as balls of `L`.
    pub fn subset(&self, ctx: &FieldContext, other: &Ball) -> bool {
        if self.is_empty() || other.is_whole() {
            return true;
        }
        if other.is_empty() || self.is_whole() {
            return false;
        }
        // The centre must lie in `other`, and `self` may not reach out further.
        let radius_ok = match (self.kind, other.kind) {
            (BallKind::Closed, BallKind::Open) => self.radius > other.radius,
            _ => self.radius >= other.radius,
        };
        radius_ok && other.contains_point(ctx, &self.center)
    }

    pub fn strict_subset(&self, ctx: &FieldContext, other: &Ball) -> bool {
        self != other && self.subset(ctx, other)
    }

    /// For nonempty balls this is the negation of nestedness, by laminarity.
    pub fn disjoint(&self, ctx: &FieldContext, other: &Ball) -> bool {
        if self.is_empty() || other.is_empty() {
            return true;
        }
        !self.subset(ctx, other) && !other.subset(ctx, self)
    }

    /// The smallest ball containing both.
    pub fn join(&self, ctx: &FieldContext, other: &Ball) -> Result<Ball, BallError> {
        if self.is_empty() || other.is_empty() {
            return Err(BallError::EmptyJoin);
        }
        if self.subset(ctx, other) {
            return Ok(other.clone());
        }
        if other.subset(ctx, self) {
            return Ok(self.clone());
        }
        let dist = ctx.valuation(&ctx.sub(&self.center, &other.center));
        Ok(Ball::closed(ctx, &self.center, dist))
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.kind.as_str(), self.center, self.radius)
    }
}
