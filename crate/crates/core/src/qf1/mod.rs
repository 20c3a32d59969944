//! One-variable quantifier-free valued-field formulas.
//!
//! Atoms are affine valuation constraints `Σ nᵢ·v(x − γᵢ) ⋈ ν`, divisibility
//! `f(x) | g(x)` between polynomials given by their roots in `K`, and point
//! equations `x = γ`. [`formula_to_cheese`] compiles a formula into its
//! canonical Swiss cheese.

mod compile;
mod parse;
mod print;

pub use compile::{compiled_atom_bound, constraint_to_balls};
pub use parse::{parse, parse_element, parse_template, FormulaTemplate};

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::ball::Ball;
use crate::cheese::{normalize, BallFormula, SwissCheese};
use crate::ext_int::ExtInt;
use crate::field::{FieldContext, FieldElement, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QfError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(
        "polynomial at {pos} is not in factored form; write it as a product of \
         linear factors such as (x-a)^2*(x-b) with roots in K"
    )]
    NotFactored { pos: usize },
    #[error("unknown parameter {0:?}")]
    UnknownParameter(String),
    #[error("expected {expected} parameter values, got {got}")]
    ParameterCount { expected: usize, got: usize },
    #[error("the leading constant of a divisibility atom must be nonzero")]
    ZeroConstant,
    #[error("an affine constraint needs at least one term")]
    NoTerms,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Relation {
    pub fn holds(self, lhs: ExtInt, rhs: ExtInt) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        }
    }

    /// The relation obtained by multiplying both sides by a negative number.
    pub fn flipped(self) -> Relation {
        match self {
            Relation::Lt => Relation::Gt,
            Relation::Le => Relation::Ge,
            Relation::Eq => Relation::Eq,
            Relation::Ge => Relation::Le,
            Relation::Gt => Relation::Lt,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }
}

/// `Σ nᵢ·v(x − γᵢ) ⋈ ν` with pairwise distinct centres `γᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineValuationConstraint {
    terms: Vec<(i64, FieldElement)>,
    relation: Relation,
    threshold: ExtInt,
}

impl AffineValuationConstraint {
    /// Repeated centres are merged by adding multiplicities, keeping the
    /// position of the first occurrence.
    pub fn new(
        terms: impl IntoIterator<Item = (i64, FieldElement)>,
        relation: Relation,
        threshold: ExtInt,
    ) -> Result<Self, QfError> {
        let mut merged: Vec<(i64, FieldElement)> = Vec::new();
        for (n, c) in terms {
            match merged.iter_mut().find(|(_, d)| *d == c) {
                Some(slot) => slot.0 += n,
                None => merged.push((n, c)),
            }
        }
        if merged.is_empty() {
            return Err(QfError::NoTerms);
        }
        Ok(AffineValuationConstraint { terms: merged, relation, threshold })
    }

    pub fn terms(&self) -> &[(i64, FieldElement)] {
        &self.terms
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn threshold(&self) -> ExtInt {
        self.threshold
    }

    pub fn centers(&self) -> impl Iterator<Item = &FieldElement> {
        self.terms.iter().map(|(_, c)| c)
    }

    /// `Σ nᵢ·v(x − γᵢ)`; `x` equals at most one centre, so no `∞ − ∞` arises.
    pub fn lhs(&self, ctx: &FieldContext, x: &FieldElement) -> ExtInt {
        self.terms
            .iter()
            .map(|(n, c)| ctx.valuation(&ctx.sub(x, c)).scale(*n))
            .fold(ExtInt::ZERO, |acc, v| acc + v)
    }

    /// Direct truth at a `K`-point.
    pub fn eval(&self, ctx: &FieldContext, x: &FieldElement) -> bool {
        self.relation.holds(self.lhs(ctx, x), self.threshold)
    }
}

/// `unit · Π (x − rootᵢ)^{mᵢ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factored {
    pub unit: FieldElement,
    pub roots: Vec<(FieldElement, u32)>,
}

impl Factored {
    /// Evaluates the polynomial at `x`.
    pub fn value_at(&self, ctx: &FieldContext, x: &FieldElement) -> FieldElement {
        self.roots.iter().fold(self.unit.clone(), |acc, (r, m)| {
            let factor = ctx.pow(&ctx.sub(x, r), *m as i64).expect("nonnegative exponent");
            ctx.mul(&acc, &factor)
        })
    }
}

/// `f(x) | g(x)`, i.e. `v(f(x)) ≤ v(g(x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divides {
    pub f: Factored,
    pub g: Factored,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Affine(AffineValuationConstraint),
    Divides(Divides),
    Equals(FieldElement),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QfFormula {
    Const(bool),
    Atom(Atom),
    Not(Box<QfFormula>),
    And(Vec<QfFormula>),
    Or(Vec<QfFormula>),
}

impl QfFormula {
    /// Direct truth at a `K`-point from valuation arithmetic alone, without
    /// going through balls.
    pub fn eval(&self, ctx: &FieldContext, x: &FieldElement) -> bool {
        match self {
            QfFormula::Const(c) => *c,
            QfFormula::Atom(Atom::Affine(c)) => c.eval(ctx, x),
            QfFormula::Atom(Atom::Divides(d)) => {
                ctx.valuation(&d.f.value_at(ctx, x)) <= ctx.valuation(&d.g.value_at(ctx, x))
            }
            QfFormula::Atom(Atom::Equals(g)) => x == g,
            QfFormula::Not(f) => !f.eval(ctx, x),
            QfFormula::And(fs) => fs.iter().all(|f| f.eval(ctx, x)),
            QfFormula::Or(fs) => fs.iter().any(|f| f.eval(ctx, x)),
        }
    }
}

/// Rewrites `v(c_f) + Σ mⱼ·v(x − αⱼ) ≤ v(c_g) + Σ m′ⱼ·v(x − βⱼ)` as a single
/// constraint `Σ mⱼ·v(x − αⱼ) − Σ m′ⱼ·v(x − βⱼ) ≤ v(c_g) − v(c_f)`.
///
/// The two agree everywhere except at roots shared by `f` and `g`, where
/// the divisibility holds trivially; [`formula_to_balls`] adds those points.
pub fn divides_to_constraint(
    ctx: &FieldContext,
    d: &Divides,
) -> Result<AffineValuationConstraint, QfError> {
    if d.f.unit.is_zero() || d.g.unit.is_zero() {
        return Err(QfError::ZeroConstant);
    }
    let nu = ctx.valuation(&d.g.unit) - ctx.valuation(&d.f.unit);
    let mut terms: Vec<(i64, FieldElement)> = Vec::new();
    terms.extend(d.f.roots.iter().map(|(r, m)| (*m as i64, r.clone())));
    terms.extend(d.g.roots.iter().map(|(r, m)| (-(*m as i64), r.clone())));
    if terms.is_empty() {
        // constant divisibility: 0 ≤ ν
        terms.push((0, ctx.zero()));
    }
    AffineValuationConstraint::new(terms, Relation::Le, nu)
}

/// Ball formula equivalent to `f`, with every ball centred at a root, centre
/// or point named in `f`.
pub fn formula_to_balls(ctx: &FieldContext, f: &QfFormula) -> Result<BallFormula, QfError> {
    Ok(match f {
        QfFormula::Const(c) => BallFormula::Const(*c),
        QfFormula::Atom(Atom::Affine(c)) => constraint_to_balls(ctx, c),
        QfFormula::Atom(Atom::Divides(d)) => {
            // At a common root both sides are infinite and the divisibility
            // holds, whatever the merged multiplicity says.
            let merged = constraint_to_balls(ctx, &divides_to_constraint(ctx, d)?);
            let common = d
                .f
                .roots
                .iter()
                .filter(|(r, _)| d.g.roots.iter().any(|(s, _)| s == r))
                .map(|(r, _)| BallFormula::In(Ball::point(r)));
            BallFormula::or(core::iter::once(merged).chain(common))
        }
        QfFormula::Atom(Atom::Equals(g)) => BallFormula::In(Ball::point(g)),
        QfFormula::Not(g) => BallFormula::not(formula_to_balls(ctx, g)?),
        QfFormula::And(fs) => {
            BallFormula::and(fs.iter().map(|g| formula_to_balls(ctx, g)).collect::<Result<Vec<_>, _>>()?)
        }
        QfFormula::Or(fs) => {
            BallFormula::or(fs.iter().map(|g| formula_to_balls(ctx, g)).collect::<Result<Vec<_>, _>>()?)
        }
    })
}

pub fn formula_to_cheese(ctx: &FieldContext, f: &QfFormula) -> Result<SwissCheese, QfError> {
    Ok(normalize(ctx, &formula_to_balls(ctx, f)?))
}
