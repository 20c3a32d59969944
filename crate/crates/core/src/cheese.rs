//! Canonical Swiss cheese decompositions.
//!
//! Every boolean combination of balls is a disjoint union of "cheeses", each
//! a ball (the round) minus finitely many pairwise disjoint proper subballs
//! (the holes), with no round equal to any hole; the representation is unique
//! up to order. [`normalize`] computes it and fixes the order, so two
//! [`SwissCheese`] values denote the same subset of `L` iff they are equal.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ball::Ball;
use crate::field::{FieldContext, FieldElement};

/// Quantifier-free boolean combination of ball-membership atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BallFormula {
    Const(bool),
    In(Ball),
    Not(Box<BallFormula>),
    And(Vec<BallFormula>),
    Or(Vec<BallFormula>),
}

impl BallFormula {
    pub fn in_ball(b: Ball) -> Self {
        BallFormula::In(b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: BallFormula) -> Self {
        match f {
            BallFormula::Const(c) => BallFormula::Const(!c),
            BallFormula::Not(inner) => *inner,
            other => BallFormula::Not(Box::new(other)),
        }
    }

    pub fn and(parts: impl IntoIterator<Item = BallFormula>) -> Self {
        let mut out = Vec::new();
        for p in parts {
            match p {
                BallFormula::Const(true) => {}
                BallFormula::Const(false) => return BallFormula::Const(false),
                BallFormula::And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => BallFormula::Const(true),
            1 => out.pop().unwrap(),
            _ => BallFormula::And(out),
        }
    }

    pub fn or(parts: impl IntoIterator<Item = BallFormula>) -> Self {
        let mut out = Vec::new();
        for p in parts {
            match p {
                BallFormula::Const(false) => {}
                BallFormula::Const(true) => return BallFormula::Const(true),
                BallFormula::Or(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => BallFormula::Const(false),
            1 => out.pop().unwrap(),
            _ => BallFormula::Or(out),
        }
    }

    /// Evaluates under an assignment of truth values to atoms.
    pub fn eval_with(&self, atom: &mut impl FnMut(&Ball) -> bool) -> bool {
        match self {
            BallFormula::Const(c) => *c,
            BallFormula::In(b) => atom(b),
            BallFormula::Not(f) => !f.eval_with(atom),
            BallFormula::And(fs) => fs.iter().all(|f| f.eval_with(atom)),
            BallFormula::Or(fs) => fs.iter().any(|f| f.eval_with(atom)),
        }
    }

    /// Truth at a `K`-point.
    pub fn eval_point(&self, ctx: &FieldContext, x: &FieldElement) -> bool {
        self.eval_with(&mut |b| b.contains_point(ctx, x))
    }

    pub fn atoms(&self) -> BTreeSet<Ball> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Ball>) {
        match self {
            BallFormula::Const(_) => {}
            BallFormula::In(b) => {
                out.insert(b.clone());
            }
            BallFormula::Not(f) => f.collect_atoms(out),
            BallFormula::And(fs) | BallFormula::Or(fs) => {
                fs.iter().for_each(|f| f.collect_atoms(out));
            }
        }
    }

    pub fn atom_count(&self) -> usize {
        match self {
            BallFormula::Const(_) => 0,
            BallFormula::In(_) => 1,
            BallFormula::Not(f) => f.atom_count(),
            BallFormula::And(fs) | BallFormula::Or(fs) => fs.iter().map(Self::atom_count).sum(),
        }
    }
}

/// One round minus its holes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cheese {
    pub round: Ball,
    pub holes: Vec<Ball>,
}

impl Cheese {
    pub fn contains(&self, ctx: &FieldContext, x: &FieldElement) -> bool {
        self.round.contains_point(ctx, x) && !self.holes.iter().any(|h| h.contains_point(ctx, x))
    }

    pub fn to_formula(&self) -> BallFormula {
        BallFormula::and(
            core::iter::once(BallFormula::In(self.round.clone()))
                .chain(self.holes.iter().map(|h| BallFormula::not(BallFormula::In(h.clone())))),
        )
    }
}

/// A canonical Swiss cheese decomposition. Construct it through [`normalize`]
/// or the set operations; the fields are only read.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SwissCheese {
    cheeses: Vec<Cheese>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Complexity {
    pub rounds: usize,
    pub max_holes: usize,
}

impl Complexity {
    pub fn at_most(&self, n: usize) -> bool {
        self.rounds <= n && self.max_holes <= n
    }
}

/// Containment forest of a laminar ball family, rooted at `L`.
pub(crate) struct Forest {
    pub nodes: Vec<Ball>,
    pub children: Vec<Vec<usize>>,
}

impl Forest {
    /// Node 0 is always `L`. Empty balls are ignored.
    pub fn build(ctx: &FieldContext, balls: impl IntoIterator<Item = Ball>) -> Forest {
        let whole = Ball::whole(ctx);
        let mut set: BTreeSet<Ball> = balls.into_iter().filter(|b| !b.is_empty()).collect();
        set.remove(&whole);
        let nodes: Vec<Ball> = core::iter::once(whole).chain(set).collect();
        let n = nodes.len();
        // above[i] = indices of nodes strictly containing node i
        let above: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| j != i && nodes[i].subset(ctx, &nodes[j])).collect())
            .collect();
        let mut children = vec![Vec::new(); n];
        for i in 1..n {
            // ancestors form a chain; the parent is the deepest of them
            let p = *above[i].iter().max_by_key(|&&j| above[j].len()).expect("L contains all");
            children[p].push(i);
        }
        Forest { nodes, children }
    }

    /// Atom truth on the region of node `i` (the node minus its children):
    /// an atom holds there iff it contains the node.
    pub fn region_truth(&self, ctx: &FieldContext, i: usize, atom: &Ball) -> bool {
        !atom.is_empty() && self.nodes[i].subset(ctx, atom)
    }
}

/// Canonical Swiss cheese of a ball formula.
pub fn normalize(ctx: &FieldContext, f: &BallFormula) -> SwissCheese {
    let forest = Forest::build(ctx, f.atoms());
    let included: Vec<bool> = (0..forest.nodes.len())
        .map(|i| f.eval_with(&mut |b| forest.region_truth(ctx, i, b)))
        .collect();
    from_regions(&forest, &included)
}

/// Emits rounds top-down: a node whose region is in the set while its
/// parent's is not opens a cheese; its holes are the first excluded nodes
/// below it, inside which the search for rounds restarts.
pub(crate) fn from_regions(forest: &Forest, included: &[bool]) -> SwissCheese {
    fn fill(forest: &Forest, inc: &[bool], node: usize, holes: &mut Vec<Ball>, out: &mut Vec<Cheese>) {
        for &c in &forest.children[node] {
            if inc[c] {
                fill(forest, inc, c, holes, out);
            } else {
                holes.push(forest.nodes[c].clone());
                rounds_under(forest, inc, c, out);
            }
        }
    }

    fn rounds_under(forest: &Forest, inc: &[bool], node: usize, out: &mut Vec<Cheese>) {
        for &c in &forest.children[node] {
            if inc[c] {
                open_round(forest, inc, c, out);
            } else {
                rounds_under(forest, inc, c, out);
            }
        }
    }

    fn open_round(forest: &Forest, inc: &[bool], node: usize, out: &mut Vec<Cheese>) {
        let mut holes = Vec::new();
        fill(forest, inc, node, &mut holes, out);
        holes.sort();
        out.push(Cheese { round: forest.nodes[node].clone(), holes });
    }

    let mut out = Vec::new();
    if included[0] {
        open_round(forest, included, 0, &mut out);
    } else {
        rounds_under(forest, included, 0, &mut out);
    }
    out.sort();
    SwissCheese { cheeses: out }
}

impl SwissCheese {
    pub fn empty() -> Self {
        SwissCheese { cheeses: Vec::new() }
    }

    pub fn whole(ctx: &FieldContext) -> Self {
        SwissCheese { cheeses: vec![Cheese { round: Ball::whole(ctx), holes: Vec::new() }] }
    }

    pub fn from_ball(ctx: &FieldContext, b: &Ball) -> Self {
        normalize(ctx, &BallFormula::In(b.clone()))
    }

    pub fn cheeses(&self) -> &[Cheese] {
        &self.cheeses
    }

    pub fn to_formula(&self) -> BallFormula {
        BallFormula::or(self.cheeses.iter().map(Cheese::to_formula))
    }

    /// All rounds and holes.
    pub fn balls(&self) -> impl Iterator<Item = &Ball> {
        self.cheeses.iter().flat_map(|c| core::iter::once(&c.round).chain(&c.holes))
    }

    pub fn member(&self, ctx: &FieldContext, x: &FieldElement) -> bool {
        self.cheeses.iter().any(|c| c.contains(ctx, x))
    }

    /// Emptiness in `L`: a round minus proper holes is never empty there.
    pub fn is_empty(&self) -> bool {
        self.cheeses.is_empty()
    }

    pub fn complexity(&self) -> Complexity {
        Complexity {
            rounds: self.cheeses.len(),
            max_holes: self.cheeses.iter().map(|c| c.holes.len()).max().unwrap_or(0),
        }
    }

    pub fn complement(&self, ctx: &FieldContext) -> Self {
        normalize(ctx, &BallFormula::not(self.to_formula()))
    }

    pub fn union(&self, ctx: &FieldContext, other: &Self) -> Self {
        normalize(ctx, &BallFormula::or([self.to_formula(), other.to_formula()]))
    }

    pub fn intersection(&self, ctx: &FieldContext, other: &Self) -> Self {
        normalize(ctx, &BallFormula::and([self.to_formula(), other.to_formula()]))
    }

    pub fn difference(&self, ctx: &FieldContext, other: &Self) -> Self {
        normalize(
            ctx,
            &BallFormula::and([self.to_formula(), BallFormula::not(other.to_formula())]),
        )
    }

    pub fn subset_of(&self, ctx: &FieldContext, other: &Self) -> bool {
        self.difference(ctx, other).is_empty()
    }

    pub fn disjoint_from(&self, ctx: &FieldContext, other: &Self) -> bool {
        self.intersection(ctx, other).is_empty()
    }

    /// Checks the structural invariants of a canonical decomposition.
    pub fn check_invariants(&self, ctx: &FieldContext) -> bool {
        let rounds: BTreeSet<&Ball> = self.cheeses.iter().map(|c| &c.round).collect();
        let sorted = self.cheeses.windows(2).all(|w| w[0] < w[1]);
        sorted
            && self.cheeses.iter().all(|c| {
                !c.round.is_empty()
                    && c.holes.windows(2).all(|w| w[0] < w[1])
                    && c.holes.iter().all(|h| {
                        !h.is_empty() && h.strict_subset(ctx, &c.round) && !rounds.contains(h)
                    })
                    && c.holes.iter().enumerate().all(|(i, h)| {
                        c.holes[i + 1..].iter().all(|g| h.disjoint(ctx, g))
                    })
            })
            && self.cheeses.iter().enumerate().all(|(i, a)| {
                self.cheeses[i + 1..].iter().all(|b| {
                    let sa = SwissCheese { cheeses: vec![a.clone()] };
                    let sb = SwissCheese { cheeses: vec![b.clone()] };
                    disjoint_by_regions(ctx, &sa, &sb)
                })
            })
    }
}

/// Disjointness without going through [`normalize`], used by the invariant
/// check: evaluate both sets on every region of their joint forest.
fn disjoint_by_regions(ctx: &FieldContext, a: &SwissCheese, b: &SwissCheese) -> bool {
    let fa = a.to_formula();
    let fb = b.to_formula();
    let forest = Forest::build(ctx, a.balls().chain(b.balls()).cloned());
    (0..forest.nodes.len()).all(|i| {
        let mut truth = |x: &Ball| forest.region_truth(ctx, i, x);
        !(fa.eval_with(&mut truth) && fb.eval_with(&mut truth))
    })
}

impl fmt::Display for SwissCheese {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cheeses.is_empty() {
            return f.write_str("∅");
        }
        for (i, c) in self.cheeses.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∪ ")?;
            }
            write!(f, "({}", c.round)?;
            for h in &c.holes {
                write!(f, " \\ {h}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
