//! Incidence counting, forbidden complete bipartite subgraphs, and the
//! Elekes grid.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigUint;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::bounds::{bound_value, root_decimal, BoundParams, BoundValue};
use crate::field::{FieldContext, FieldElement, FieldError, Poly};
use crate::qf1::{FormulaTemplate, QfError, QfFormula};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IncidenceError {
    #[error("tuple of length {got} where {expected} coordinates were expected")]
    Arity { expected: usize, got: usize },
    #[error("grid of {needed} points exceeds the budget of {limit}")]
    Budget { needed: u128, limit: u128 },
    #[error("identity check failed for p = {p}, m = {m}: {what}")]
    IdentityFailed { p: u32, m: u32, what: &'static str },
    #[error(transparent)]
    Qf(#[from] QfError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A relation `E ⊆ K^n × K^m` with exactly decidable membership.
#[derive(Debug, Clone)]
pub enum Relation {
    /// `((x, y), (a, b))` with `y = a·x + b`.
    PointLine,
    /// `(x, b̄)` with `φ(x, b̄)`; the template's parameters are `b̄`.
    Formula(FormulaTemplate),
}

impl Relation {
    /// `(n, m)`.
    pub fn arity(&self) -> (usize, usize) {
        match self {
            Relation::PointLine => (2, 2),
            Relation::Formula(t) => (1, t.params().len()),
        }
    }

    fn check(&self, a0: &[Vec<FieldElement>], b0: &[Vec<FieldElement>]) -> Result<(), IncidenceError> {
        let (n, m) = self.arity();
        for (want, set) in [(n, a0), (m, b0)] {
            if let Some(bad) = set.iter().find(|v| v.len() != want) {
                return Err(IncidenceError::Arity { expected: want, got: bad.len() });
            }
        }
        Ok(())
    }

    /// Per-`b` membership tests, built once per column.
    fn columns<'a>(
        &'a self,
        ctx: &'a FieldContext,
        b0: &'a [Vec<FieldElement>],
    ) -> Result<Vec<Column<'a>>, IncidenceError> {
        b0.iter()
            .map(|b| {
                Ok(match self {
                    Relation::PointLine => Column::Line(&b[0], &b[1]),
                    Relation::Formula(t) => Column::Formula(t.instantiate(ctx, b)?),
                })
            })
            .collect()
    }

    pub fn holds(&self, ctx: &FieldContext, a: &[FieldElement], b: &[FieldElement]) -> Result<bool, IncidenceError> {
        let a = [a.to_vec()];
        let b = [b.to_vec()];
        self.check(&a, &b)?;
        Ok(self.columns(ctx, &b)?[0].holds(ctx, &a[0]))
    }
}

enum Column<'a> {
    Line(&'a FieldElement, &'a FieldElement),
    Formula(QfFormula),
}

impl Column<'_> {
    fn holds(&self, ctx: &FieldContext, a: &[FieldElement]) -> bool {
        match self {
            Column::Line(slope, offset) => a[1] == ctx.add(&ctx.mul(slope, &a[0]), offset),
            Column::Formula(f) => f.eval(ctx, &a[0]),
        }
    }
}

/// `incidence[i]` = indices of the `b ∈ B₀` related to `A₀[i]`.
pub fn incidence_rows(
    ctx: &FieldContext,
    rel: &Relation,
    a0: &[Vec<FieldElement>],
    b0: &[Vec<FieldElement>],
) -> Result<Vec<Vec<usize>>, IncidenceError> {
    rel.check(a0, b0)?;
    let cols = rel.columns(ctx, b0)?;
    let row = |a: &Vec<FieldElement>| -> Vec<usize> { (0..cols.len()).filter(|&j| cols[j].holds(ctx, a)).collect() };
    #[cfg(feature = "parallel")]
    let rows = a0.par_iter().map(row).collect();
    #[cfg(not(feature = "parallel"))]
    let rows = a0.iter().map(row).collect();
    Ok(rows)
}

/// `|E ∩ (A₀ × B₀)|` by evaluating every pair.
pub fn count_incidences(
    ctx: &FieldContext,
    rel: &Relation,
    a0: &[Vec<FieldElement>],
    b0: &[Vec<FieldElement>],
) -> Result<u64, IncidenceError> {
    rel.check(a0, b0)?;
    let cols = rel.columns(ctx, b0)?;
    let row = |a: &Vec<FieldElement>| -> u64 { cols.iter().filter(|c| c.holds(ctx, a)).count() as u64 };
    #[cfg(feature = "parallel")]
    let total = a0.par_iter().map(row).sum();
    #[cfg(not(feature = "parallel"))]
    let total = a0.iter().map(row).sum();
    Ok(total)
}

/// Point-line incidences by lookup: each line is evaluated once per
/// distinct `x`-coordinate and the resulting point searched for. Agrees with
/// [`count_incidences`] on `Relation::PointLine`; duplicate points or lines
/// are counted with multiplicity, as there.
pub fn count_point_line_fast(
    ctx: &FieldContext,
    points: &[Vec<FieldElement>],
    lines: &[Vec<FieldElement>],
) -> Result<u64, IncidenceError> {
    Relation::PointLine.check(points, lines)?;
    let mut by_x: BTreeMap<&FieldElement, BTreeMap<&FieldElement, u64>> = BTreeMap::new();
    for pt in points {
        *by_x.entry(&pt[0]).or_default().entry(&pt[1]).or_default() += 1;
    }
    let xs: Vec<(&FieldElement, &BTreeMap<&FieldElement, u64>)> = by_x.iter().map(|(x, ys)| (*x, ys)).collect();
    let per_line = |line: &Vec<FieldElement>| -> u64 {
        xs.iter()
            .map(|(x, ys)| {
                let y = ctx.add(&ctx.mul(&line[0], x), &line[1]);
                ys.get(&y).copied().unwrap_or(0)
            })
            .sum()
    };
    #[cfg(feature = "parallel")]
    let total = lines.par_iter().map(per_line).sum();
    #[cfg(not(feature = "parallel"))]
    let total = lines.iter().map(per_line).sum();
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KdsVerdict {
    Free,
    /// Indices into `A₀` and `B₀` spanning a complete `d × s` rectangle.
    Witness { a: Vec<usize>, b: Vec<usize> },
}

/// Searches for `A ⊆ A₀`, `|A| = d`, and `B ⊆ B₀`, `|B| = s`, with
/// `A × B ⊆ E`. Rows are tried in order of decreasing degree and a branch is
/// dropped as soon as the running intersection has fewer than `s` columns.
pub fn check_kds_free(
    ctx: &FieldContext,
    rel: &Relation,
    a0: &[Vec<FieldElement>],
    b0: &[Vec<FieldElement>],
    d: usize,
    s: usize,
) -> Result<KdsVerdict, IncidenceError> {
    let rows = incidence_rows(ctx, rel, a0, b0)?;
    Ok(kds_search(&rows, b0.len(), d, s))
}

/// The search of [`check_kds_free`] on a precomputed incidence table.
pub fn kds_search(rows: &[Vec<usize>], columns: usize, d: usize, s: usize) -> KdsVerdict {
    let mut order: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].len() >= s).collect();
    order.sort_by(|&i, &j| rows[j].len().cmp(&rows[i].len()).then(i.cmp(&j)));
    let sets: Vec<BTreeSet<usize>> = rows.iter().map(|r| r.iter().copied().collect()).collect();

    fn dfs(
        sets: &[BTreeSet<usize>],
        order: &[usize],
        start: usize,
        need: usize,
        s: usize,
        chosen: &mut Vec<usize>,
        common: &BTreeSet<usize>,
    ) -> Option<Vec<usize>> {
        if need == 0 {
            return Some(common.iter().take(s).copied().collect());
        }
        for k in start..order.len() {
            if order.len() - k < need {
                break;
            }
            let row = order[k];
            let next: BTreeSet<usize> = common.intersection(&sets[row]).copied().collect();
            if next.len() < s {
                continue;
            }
            chosen.push(row);
            if let Some(b) = dfs(sets, order, k + 1, need - 1, s, chosen, &next) {
                return Some(b);
            }
            chosen.pop();
        }
        None
    }

    let all: BTreeSet<usize> = (0..columns).collect();
    if all.len() < s {
        return KdsVerdict::Free;
    }
    let mut chosen = Vec::new();
    match dfs(&sets, &order, 0, d, s, &mut chosen, &all) {
        Some(b) => {
            chosen.sort_unstable();
            KdsVerdict::Witness { a: chosen, b }
        }
        None => KdsVerdict::Free,
    }
}

/// Points `F_p[t]_{<m} × F_p[t]_{<2m}` and lines `y = a·x + b` with
/// `a ∈ F_p[t]_{<m}`, `b ∈ F_p[t]_{<2m}`, in the `t`-adic field `F_p(t)`.
#[derive(Debug, Clone)]
pub struct ElekesGrid {
    pub ctx: FieldContext,
    pub points: Vec<Vec<FieldElement>>,
    pub lines: Vec<Vec<FieldElement>>,
}

/// `p^{3m}`, or `None` on overflow.
pub fn elekes_size(p: u32, m: u32) -> Option<u128> {
    (p as u128).checked_pow(3 * m)
}

pub fn elekes_grid(p: u32, m: u32) -> Result<ElekesGrid, IncidenceError> {
    let ctx = FieldContext::t_adic(p as u64)?;
    let low = |deg: u32| -> Result<Vec<FieldElement>, FieldError> {
        let count = (p as u64).pow(deg);
        (0..count).map(|i| ctx.from_poly(Poly::from_index(i, p))).collect()
    };
    let short = low(m)?;
    let long = low(2 * m)?;
    let pairs = |xs: &[FieldElement], ys: &[FieldElement]| -> Vec<Vec<FieldElement>> {
        xs.iter().flat_map(|x| ys.iter().map(move |y| alloc::vec![x.clone(), y.clone()])).collect()
    };
    let points = pairs(&short, &long);
    let lines = pairs(&short, &long);
    Ok(ElekesGrid { ctx, points, lines })
}

/// One row of the exponent sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub p: u32,
    pub m: u32,
    /// `|points| = |lines|`.
    pub n: u64,
    pub incidences: u64,
    /// `I / N^{4/3}`, exact: `I³ = N⁴` is checked.
    pub ratio_four_thirds: BigUint,
    /// `I / N^{3/2}` truncated to the configured number of decimals.
    pub ratio_three_halves: alloc::string::String,
    pub bound: BoundValue,
}

/// Counts incidences on Elekes grids for each `m`, checking `I³ = N⁴` and,
/// for `N > 1`, `I² < N³` with integer arithmetic. Grids with more than
/// `max_points` points are refused.
pub fn exponent_sweep(
    p: u32,
    ms: impl IntoIterator<Item = u32>,
    bp: &BoundParams,
    max_points: u128,
    digits: u32,
) -> Result<Vec<SweepRow>, IncidenceError> {
    let ms: Vec<u32> = ms.into_iter().collect();
    for &m in &ms {
        let needed = elekes_size(p, m).unwrap_or(u128::MAX);
        if needed > max_points {
            return Err(IncidenceError::Budget { needed, limit: max_points });
        }
    }
    ms.into_iter()
        .map(|m| {
            let grid = elekes_grid(p, m)?;
            let i = count_point_line_fast(&grid.ctx, &grid.points, &grid.lines)?;
            let n = grid.points.len() as u64;
            let (bi, bn) = (BigUint::from(i), BigUint::from(n));
            if bi.pow(3) != bn.pow(4) {
                return Err(IncidenceError::IdentityFailed { p, m, what: "I^3 = N^4" });
            }
            if n > 1 && bi.pow(2) >= bn.pow(3) {
                return Err(IncidenceError::IdentityFailed { p, m, what: "I^2 < N^3" });
            }
            // I / N^{4/3} = (I³ / N⁴)^{1/3} = 1 here; kept general for the record
            let ratio_four_thirds = (bi.pow(3) / bn.pow(4)).nth_root(3);
            let ratio_three_halves = root_decimal(&bi.pow(2), &bn.pow(3), 2, digits);
            Ok(SweepRow { p, m, n, incidences: i, ratio_four_thirds, ratio_three_halves, bound: bound_value(bp, n, n) })
        })
        .collect()
}

#[cfg(test)]
mod tests;
