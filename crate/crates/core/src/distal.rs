//! Distal cell decompositions of finite ball families.
//!
//! Close a family `B₀` under pairwise joins to get `B₀′`. Every member `b` of
//! `B₀′ ∪ {L}` gives one cell: `b` minus its maximal proper subballs in
//! `B₀′`. The cells partition `L`, no ball of `B₀` cuts a cell, and since the
//! holes of a round pairwise join to the round itself, their centres lie in
//! distinct residue classes, so a cell has at most `q` holes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::ball::Ball;
use crate::cheese::{normalize, BallFormula, Forest, SwissCheese};
use crate::field::{FieldContext, FieldElement};
use crate::qf1::{formula_to_cheese, FormulaTemplate, QfError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DistalError {
    #[error("cut-freeness needs at least two parameter tuples, got {0}")]
    TooFewParams(usize),
    #[error(transparent)]
    Qf(#[from] QfError),
}

/// A finite set of nonempty balls, kept sorted and deduplicated.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BallFamily {
    balls: Vec<Ball>,
}

impl BallFamily {
    /// Drops empty balls and duplicates.
    pub fn new(balls: impl IntoIterator<Item = Ball>) -> Self {
        let mut balls: Vec<Ball> = balls.into_iter().filter(|b| !b.is_empty()).collect();
        balls.sort();
        balls.dedup();
        BallFamily { balls }
    }

    pub fn balls(&self) -> &[Ball] {
        &self.balls
    }

    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }
}

/// Where a round or hole came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    /// The whole line `L`.
    Top,
    /// The join of the members of `B₀` at these indices (equal indices for a
    /// member of `B₀` itself).
    Join(usize, usize),
}

/// `B₀′` with the first pair of `B₀` members producing each ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinClosure {
    members: BTreeMap<Ball, Source>,
}

impl JoinClosure {
    pub fn balls(&self) -> impl Iterator<Item = &Ball> {
        self.members.keys()
    }

    pub fn source(&self, b: &Ball) -> Option<Source> {
        if let Some(s) = self.members.get(b) {
            Some(*s)
        } else if b.is_whole() {
            Some(Source::Top)
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, b: &Ball) -> bool {
        self.members.contains_key(b)
    }

    /// Whether the join of any two members is again a member.
    pub fn is_closed(&self, ctx: &FieldContext) -> bool {
        let v: Vec<&Ball> = self.members.keys().collect();
        v.iter().enumerate().all(|(i, a)| {
            v[i..].iter().all(|b| a.join(ctx, b).map(|j| self.contains(&j)).unwrap_or(false))
        })
    }
}

pub fn join_closure(ctx: &FieldContext, b0: &BallFamily) -> JoinClosure {
    let mut members = BTreeMap::new();
    let balls = b0.balls();
    for i in 0..balls.len() {
        for j in i..balls.len() {
            let joined = balls[i].join(ctx, &balls[j]).expect("family balls are nonempty");
            members.entry(joined).or_insert(Source::Join(i, j));
        }
    }
    JoinClosure { members }
}

/// A round minus all of its maximal proper subballs in `B₀′`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub round: Ball,
    pub holes: Vec<Ball>,
    pub round_source: Source,
    pub hole_sources: Vec<Source>,
}

impl Cell {
    pub fn contains(&self, ctx: &FieldContext, x: &FieldElement) -> bool {
        self.round.contains_point(ctx, x) && !self.holes.iter().any(|h| h.contains_point(ctx, x))
    }

    pub fn to_formula(&self) -> BallFormula {
        BallFormula::and(
            core::iter::once(BallFormula::In(self.round.clone()))
                .chain(self.holes.iter().map(|h| BallFormula::not(BallFormula::In(h.clone())))),
        )
    }

    /// The one-round cheese with the same points.
    pub fn as_cheese(&self, ctx: &FieldContext) -> SwissCheese {
        normalize(ctx, &self.to_formula())
    }
}

/// All cells of a family, indexed like the nodes of the containment forest
/// of `B₀′ ∪ {L}` (cell 0 has round `L`).
pub struct CellDecomposition {
    family: BallFamily,
    closure: JoinClosure,
    forest: Forest,
    cells: Vec<Cell>,
}

impl CellDecomposition {
    pub fn new(ctx: &FieldContext, family: BallFamily) -> Self {
        let closure = join_closure(ctx, &family);
        let forest = Forest::build(ctx, closure.balls().cloned());
        let source = |b: &Ball| closure.source(b).expect("forest nodes come from the closure");
        let cells = (0..forest.nodes.len())
            .map(|i| {
                let mut holes: Vec<Ball> = forest.children[i].iter().map(|&c| forest.nodes[c].clone()).collect();
                holes.sort();
                Cell {
                    round: forest.nodes[i].clone(),
                    hole_sources: holes.iter().map(source).collect(),
                    round_source: source(&forest.nodes[i]),
                    holes,
                }
            })
            .collect();
        CellDecomposition { family, closure, forest, cells }
    }

    pub fn family(&self) -> &BallFamily {
        &self.family
    }

    pub fn closure(&self) -> &JoinClosure {
        &self.closure
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn max_holes(&self) -> usize {
        self.cells.iter().map(|c| c.holes.len()).max().unwrap_or(0)
    }

    /// Index of the cell containing `x`: descend from `L` into the child
    /// ball containing `x` while there is one. Laminarity makes it unique.
    pub fn cell_index_of(&self, ctx: &FieldContext, x: &FieldElement) -> usize {
        let mut node = 0;
        while let Some(&c) = self.forest.children[node].iter().find(|&&c| self.forest.nodes[c].contains_point(ctx, x)) {
            node = c;
        }
        node
    }

    pub fn cell_of_point(&self, ctx: &FieldContext, x: &FieldElement) -> &Cell {
        &self.cells[self.cell_index_of(ctx, x)]
    }

    /// Whether the cells are pairwise disjoint and cover `L`, decided by
    /// cheese set algebra.
    pub fn is_partition(&self, ctx: &FieldContext) -> bool {
        let cheeses: Vec<SwissCheese> = self.cells.iter().map(|c| c.as_cheese(ctx)).collect();
        let covers = normalize(ctx, &BallFormula::or(self.cells.iter().map(Cell::to_formula))) == SwissCheese::whole(ctx);
        covers
            && cheeses
                .iter()
                .enumerate()
                .all(|(i, a)| cheeses[i + 1..].iter().all(|b| a.disjoint_from(ctx, b)))
    }
}

pub fn enumerate_cells(ctx: &FieldContext, family: &BallFamily) -> Vec<Cell> {
    CellDecomposition::new(ctx, family.clone()).cells
}

pub fn max_holes(ctx: &FieldContext, family: &BallFamily) -> usize {
    CellDecomposition::new(ctx, family.clone()).max_holes()
}

/// How a cell sits relative to one parameter's definable set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Inside,
    Outside,
    Cut,
}

pub fn classify(ctx: &FieldContext, cell: &SwissCheese, set: &SwissCheese) -> Verdict {
    if cell.subset_of(ctx, set) {
        Verdict::Inside
    } else if cell.disjoint_from(ctx, set) {
        Verdict::Outside
    } else {
        Verdict::Cut
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UshdReport {
    pub cell_count: usize,
    pub max_holes: usize,
    /// `verdicts[cell][param]`.
    pub verdicts: Vec<Vec<Verdict>>,
    /// `(cell, param)` pairs whose verdict is [`Verdict::Cut`].
    pub cuts: Vec<(usize, usize)>,
    /// `(sample, param)` pairs where the sample's cell decides the formula
    /// differently from direct evaluation.
    pub sample_mismatches: Vec<(usize, usize)>,
}

impl UshdReport {
    pub fn is_clean(&self) -> bool {
        self.cuts.is_empty() && self.sample_mismatches.is_empty()
    }
}

/// Checks that no cell of the decomposition generated by the balls of all
/// instances `φ(x, b)` is cut by any instance, and that each sample point's
/// cell predicts `φ(a, b)` correctly.
pub fn verify_ushd(
    ctx: &FieldContext,
    phi: &FormulaTemplate,
    params: &[Vec<FieldElement>],
    samples: &[FieldElement],
) -> Result<UshdReport, DistalError> {
    if params.len() < 2 {
        return Err(DistalError::TooFewParams(params.len()));
    }
    // one compilation per distinct parameter tuple
    let mut cache: BTreeMap<&[FieldElement], (crate::qf1::QfFormula, SwissCheese)> = BTreeMap::new();
    for b in params {
        if !cache.contains_key(b.as_slice()) {
            let f = phi.instantiate(ctx, b)?;
            let cheese = formula_to_cheese(ctx, &f)?;
            cache.insert(b.as_slice(), (f, cheese));
        }
    }
    let instance = |b: &Vec<FieldElement>| &cache[b.as_slice()];

    let family = BallFamily::new(cache.values().flat_map(|(_, c)| c.balls().cloned()));
    let dec = CellDecomposition::new(ctx, family);

    let row = |cell: &Cell| -> Vec<Verdict> {
        let cc = cell.as_cheese(ctx);
        params.iter().map(|b| classify(ctx, &cc, &instance(b).1)).collect()
    };
    #[cfg(feature = "parallel")]
    let verdicts: Vec<Vec<Verdict>> = dec.cells.par_iter().map(row).collect();
    #[cfg(not(feature = "parallel"))]
    let verdicts: Vec<Vec<Verdict>> = dec.cells.iter().map(row).collect();

    let cuts = verdicts
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.iter().enumerate().filter(|(_, v)| **v == Verdict::Cut).map(move |(j, _)| (i, j)))
        .collect();

    let mut sample_mismatches = Vec::new();
    for (si, a) in samples.iter().enumerate() {
        let ci = dec.cell_index_of(ctx, a);
        for (pj, b) in params.iter().enumerate() {
            let predicted = match verdicts[ci][pj] {
                Verdict::Inside => Some(true),
                Verdict::Outside => Some(false),
                Verdict::Cut => None,
            };
            if predicted != Some(instance(b).0.eval(ctx, a)) {
                sample_mismatches.push((si, pj));
            }
        }
    }

    Ok(UshdReport {
        cell_count: dec.cells.len(),
        max_holes: dec.max_holes(),
        verdicts,
        cuts,
        sample_mismatches,
    })
}

#[cfg(test)]
mod tests;
