//! Randomized and exhaustive experiments behind the CLI.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Signed;
use rand::Rng;
use rayon::prelude::*;

use vdistal_core::bounds::{root_decimal, BoundValue};
use vdistal_core::distal::{BallFamily, CellDecomposition};
use vdistal_core::field::FieldContext;

use crate::error::CliError;
use crate::gen;

/// Wall-clock guard; the budget never influences results, only whether a
/// run is allowed to finish.
#[derive(Debug, Clone, Copy)]
pub struct Deadline {
    start: Instant,
    budget_ms: Option<u64>,
}

impl Deadline {
    pub fn new(budget_ms: Option<u64>) -> Self {
        Deadline { start: Instant::now(), budget_ms }
    }

    pub fn check(&self, what: &str) -> Result<(), CliError> {
        match self.budget_ms {
            Some(ms) if self.start.elapsed().as_millis() > ms as u128 => {
                Err(CliError::Budget(format!("time budget of {ms} ms exceeded during {what}")))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthRow {
    pub size: usize,
    pub trial: usize,
    /// Distinct nonempty balls actually drawn.
    pub family: usize,
    pub closure: usize,
    pub cells: usize,
    pub max_holes: usize,
}

impl GrowthRow {
    pub fn quadratic_bound(&self) -> usize {
        self.family * (self.family + 1) / 2 + 1
    }
}

pub const GROWTH_HEADER: &str = "size,trial,family,closure,cells,max_holes,quadratic_bound,q";

/// Cell counts of random families; every row is checked against the
/// quadratic cell bound and the hole bound `q`.
pub fn cell_growth<R: Rng>(
    ctx: &FieldContext,
    rng: &mut R,
    sizes: &[usize],
    trials: usize,
    deadline: Deadline,
) -> Result<Vec<GrowthRow>, CliError> {
    let mut rows = Vec::new();
    for &size in sizes {
        for trial in 0..trials {
            deadline.check("the growth experiment")?;
            let fam = BallFamily::new(gen::family(ctx, rng, size));
            let dec = CellDecomposition::new(ctx, fam);
            let row = GrowthRow {
                size,
                trial,
                family: dec.family().len(),
                closure: dec.closure().len(),
                cells: dec.cells().len(),
                max_holes: dec.max_holes(),
            };
            if row.cells > row.quadratic_bound() {
                return Err(CliError::Math(format!("{} cells exceed the quadratic bound {}", row.cells, row.quadratic_bound())));
            }
            if row.max_holes as u64 > ctx.q() {
                return Err(CliError::Math(format!("{} holes exceed q = {}", row.max_holes, ctx.q())));
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Smallest multiple of `10^{-digits}` that is `≥ r`, as text.
pub fn decimal_ceil(r: &BigRational, digits: u32) -> String {
    assert!(!r.is_negative());
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (r * BigRational::from_integer(scale.clone())).ceil().to_integer();
    let int = &scaled / &scale;
    let frac = &scaled % &scale;
    if digits == 0 {
        int.to_string()
    } else {
        format!("{int}.{:0>width$}", frac.to_string(), width = digits as usize)
    }
}

pub fn rational_text(r: &BigRational) -> String {
    vdistal_core::bounds::format_rational(r)
}

/// Exact text for an exact bound, else its upward decimal rounding.
pub fn bound_text(b: &BoundValue, digits: u32) -> String {
    if b.exact && b.value.is_integer() {
        rational_text(&b.value)
    } else {
        decimal_ceil(&b.value, digits)
    }
}

/// `I/N^{4/3}` and `I/N^{3/2}` as truncated decimals.
pub fn ratios(i: u64, n: u64, digits: u32) -> (String, String) {
    if n == 0 {
        return ("0".into(), "0".into());
    }
    let (bi, bn) = (BigUint::from(i), BigUint::from(n));
    (root_decimal(&bi.pow(3), &bn.pow(4), 3, digits), root_decimal(&bi.pow(2), &bn.pow(3), 2, digits))
}

/// `N^{4/3}` truncated.
pub fn four_thirds(n: u64, digits: u32) -> String {
    root_decimal(&BigUint::from(n).pow(4), &BigUint::from(1u32), 3, digits)
}

/// Runs `f` over `items` in parallel and returns the first error in input
/// order, if any.
pub fn par_try<T: Sync, E: Send>(items: &[T], f: impl Fn(&T) -> Result<(), E> + Sync + Send) -> Result<(), E> {
    let errs: Vec<E> = items.par_iter().filter_map(|x| f(x).err()).collect();
    match errs.into_iter().next() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}
