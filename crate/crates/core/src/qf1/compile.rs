//! Affine valuation constraints to ball formulas.
//!
//! Induction on the number of centres. Put `ε = v(x − γ₁)` and let the cut
//! values be `v(γ₁ − γᵢ)` for `i > 1`. Off the cut values every other term is
//! determined by `ε` (it equals `ε` below its cut and the cut above it), so
//! the constraint is linear in `ε` there and becomes a threshold on `ε`, i.e.
//! a difference of balls around `γ₁`. On the sphere `ε = c` for a cut value
//! `c`, the centres with that cut stay free and the rest are constants, which
//! leaves a constraint on fewer centres.

use alloc::vec;
use alloc::vec::Vec;

use super::{AffineValuationConstraint, Relation};
use crate::ball::Ball;
use crate::cheese::BallFormula;
use crate::ext_int::ExtInt;
use crate::field::{FieldContext, FieldElement};

type Term<'a> = (i64, &'a FieldElement);

/// A ball formula equivalent to the constraint at every `K`-point, built
/// only from balls centred at the constraint's centres.
///
/// Thresholds on `ε` that fall strictly between two integers are rounded to
/// the integer lattice, where all `K`-valuations live; integral thresholds
/// keep the exact open/closed distinction.
pub fn constraint_to_balls(ctx: &FieldContext, c: &AffineValuationConstraint) -> BallFormula {
    let terms: Vec<Term<'_>> = c.terms().iter().filter(|(n, _)| *n != 0).map(|(n, g)| (*n, g)).collect();
    sweep(ctx, &terms, c.relation(), c.threshold())
}

fn sweep(ctx: &FieldContext, terms: &[Term<'_>], rel: Relation, nu: ExtInt) -> BallFormula {
    let Some((&(n1, g1), rest)) = terms.split_first() else {
        return BallFormula::Const(rel.holds(ExtInt::ZERO, nu));
    };
    let cuts: Vec<i64> = rest
        .iter()
        .map(|(_, g)| ctx.valuation(&ctx.sub(g1, g)).finite().expect("distinct centres"))
        .collect();
    let mut levels = cuts.clone();
    levels.sort_unstable();
    levels.dedup();

    let mut pieces = Vec::new();

    // x = γ₁
    let at_center = rest
        .iter()
        .zip(&cuts)
        .fold(ExtInt::PosInf.scale(n1), |acc, ((n, _), &c)| acc + ExtInt::Fin(n * c));
    if rel.holds(at_center, nu) {
        pieces.push(BallFormula::In(Ball::point(g1)));
    }

    // ε strictly between consecutive levels
    for j in 0..=levels.len() {
        let lo = j.checked_sub(1).map(|i| levels[i]);
        let hi = levels.get(j).copied();
        let mut slope = n1;
        let mut offset = 0i64;
        for ((n, _), &c) in rest.iter().zip(&cuts) {
            if hi.is_some_and(|h| c >= h) {
                slope += n;
            } else {
                offset += n * c;
            }
        }
        let mut parts = vec![threshold(ctx, g1, slope, offset, rel, nu)];
        if let Some(lo) = lo {
            parts.push(BallFormula::In(Ball::open(ctx, g1, lo)));
        }
        parts.push(BallFormula::not(BallFormula::In(match hi {
            Some(h) => Ball::closed(ctx, g1, h),
            None => Ball::point(g1),
        })));
        pieces.push(BallFormula::and(parts));
    }

    // ε equal to a level: recurse on the centres cut there
    for &d in &levels {
        let mut offset = n1 * d;
        let mut sub: Vec<Term<'_>> = Vec::new();
        for (&(n, g), &c) in rest.iter().zip(&cuts) {
            match c.cmp(&d) {
                core::cmp::Ordering::Equal => sub.push((n, g)),
                core::cmp::Ordering::Greater => offset += n * d,
                core::cmp::Ordering::Less => offset += n * c,
            }
        }
        let inner = sweep(ctx, &sub, rel, nu - ExtInt::Fin(offset));
        pieces.push(BallFormula::and([sphere(ctx, g1, d), inner]));
    }

    BallFormula::or(pieces)
}

/// `{x : v(x − g) = d}`
fn sphere(ctx: &FieldContext, g: &FieldElement, d: i64) -> BallFormula {
    BallFormula::and([
        BallFormula::In(Ball::closed(ctx, g, d)),
        BallFormula::not(BallFormula::In(Ball::open(ctx, g, d))),
    ])
}

/// `slope·ε + offset ⋈ ν` for finite `ε = v(x − g)`.
fn threshold(
    ctx: &FieldContext,
    g: &FieldElement,
    slope: i64,
    offset: i64,
    rel: Relation,
    nu: ExtInt,
) -> BallFormula {
    let ExtInt::Fin(nu) = nu else {
        // a finite left side against ±∞
        return BallFormula::Const(rel.holds(ExtInt::ZERO, nu));
    };
    if slope == 0 {
        return BallFormula::Const(rel.holds(ExtInt::Fin(offset), ExtInt::Fin(nu)));
    }
    let (mut num, mut den, mut rel) = (nu - offset, slope, rel);
    if den < 0 {
        num = -num;
        den = -den;
        rel = rel.flipped();
    }
    // ε ⋈ num/den
    let exact = num.rem_euclid(den) == 0;
    let floor = num.div_euclid(den);
    let ceil = if exact { floor } else { floor + 1 };
    let at_least = || BallFormula::In(Ball::closed(ctx, g, ceil));
    let above = || {
        if exact {
            BallFormula::In(Ball::open(ctx, g, floor))
        } else {
            BallFormula::In(Ball::closed(ctx, g, ceil))
        }
    };
    match rel {
        Relation::Ge => at_least(),
        Relation::Gt => above(),
        Relation::Lt => BallFormula::not(at_least()),
        Relation::Le => BallFormula::not(above()),
        Relation::Eq if exact => sphere(ctx, g, floor),
        Relation::Eq => BallFormula::Const(false),
    }
}

/// Upper bound on the number of ball atoms [`constraint_to_balls`] emits for
/// a constraint with `s` nonzero terms, whatever the centres are.
pub fn compiled_atom_bound(s: usize) -> usize {
    // bound[s] for single constraints, parts[m] = best total over the ways of
    // splitting m centres into groups sharing a cut value
    let mut bound = vec![0usize; s + 1];
    let mut parts = vec![0usize; s + 1];
    for k in 1..=s {
        // point, first interval (threshold ≤ 2 atoms, ≤ 2 delimiters)
        bound[k] = 1 + 4 + parts[k - 1];
        if k < s {
            // each further group adds an interval, a sphere and its recursion
            parts[k] = (1..=k).map(|a| 4 + 2 + bound[a] + parts[k - a]).max().unwrap();
        }
    }
    bound[s]
}
