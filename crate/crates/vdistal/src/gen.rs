//! Seeded random generators for balls, formulas, constraints, relation
//! families and grids.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use vdistal_core::ball::{Ball, BallKind};
use vdistal_core::cheese::BallFormula;
use vdistal_core::field::{FieldContext, FieldElement, Poly};
use vdistal_core::qf1::{AffineValuationConstraint, Relation};
use vdistal_core::ExtInt;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Candidate centres: the sample points of height 2, which share leading
/// digits often enough to make joins and cut values interesting.
pub fn centres(ctx: &FieldContext) -> Vec<FieldElement> {
    ctx.sample_points(2)
}

pub fn ball<R: Rng>(ctx: &FieldContext, rng: &mut R, pool: &[FieldElement]) -> Ball {
    let c = pool.choose(rng).expect("nonempty pool");
    if rng.gen_ratio(1, 8) {
        return Ball::point(c);
    }
    let kind = if rng.gen_bool(0.5) { BallKind::Closed } else { BallKind::Open };
    Ball::new(ctx, kind, c, ExtInt::Fin(rng.gen_range(-2..=4)))
}

pub fn family<R: Rng>(ctx: &FieldContext, rng: &mut R, n: usize) -> Vec<Ball> {
    let pool = centres(ctx);
    (0..n).map(|_| ball(ctx, rng, &pool)).collect()
}

/// Random boolean combination of at most `max_atoms` atoms.
pub fn ball_formula<R: Rng>(ctx: &FieldContext, rng: &mut R, max_atoms: usize) -> BallFormula {
    let pool = centres(ctx);
    let atoms: Vec<Ball> = (0..rng.gen_range(1..=max_atoms)).map(|_| ball(ctx, rng, &pool)).collect();
    let mut leaves: Vec<BallFormula> = atoms.into_iter().map(BallFormula::In).collect();
    // reuse an atom now and then so that formulas contain repeated balls
    if leaves.len() > 1 && rng.gen_bool(0.3) {
        let i = rng.gen_range(0..leaves.len());
        let j = rng.gen_range(0..leaves.len());
        leaves[j] = leaves[i].clone();
    }
    while leaves.len() > 1 {
        let i = rng.gen_range(0..leaves.len());
        let a = leaves.swap_remove(i);
        let j = rng.gen_range(0..leaves.len());
        let b = leaves.swap_remove(j);
        let maybe_not = |f: BallFormula, rng: &mut R| if rng.gen_bool(0.3) { BallFormula::not(f) } else { f };
        let (a, b) = (maybe_not(a, rng), maybe_not(b, rng));
        leaves.push(if rng.gen_bool(0.5) { BallFormula::and([a, b]) } else { BallFormula::or([a, b]) });
    }
    let f = leaves.pop().unwrap();
    if rng.gen_bool(0.2) {
        BallFormula::not(f)
    } else {
        f
    }
}

pub const RELATIONS: [Relation; 5] = [Relation::Lt, Relation::Le, Relation::Eq, Relation::Ge, Relation::Gt];

/// At most four distinct centres, multiplicities in `[−3, 3]`, threshold in
/// `[−5, 5]`.
pub fn constraint<R: Rng>(ctx: &FieldContext, rng: &mut R) -> AffineValuationConstraint {
    let pool = centres(ctx);
    let k = rng.gen_range(1..=4);
    let cs: Vec<&FieldElement> = pool.choose_multiple(rng, k).collect();
    let terms: Vec<(i64, FieldElement)> = cs.into_iter().map(|c| (rng.gen_range(-3..=3), c.clone())).collect();
    let rel = *RELATIONS.choose(rng).unwrap();
    AffineValuationConstraint::new(terms, rel, ExtInt::Fin(rng.gen_range(-5..=5))).expect("nonempty terms")
}

/// A parameterized relation `φ(x; ȳ)` in the formula syntax together with
/// its parameter names, built from a few atom shapes over the parameters.
pub fn relation_text<R: Rng>(rng: &mut R) -> (String, Vec<String>) {
    let arity = rng.gen_range(1..=3);
    let names: Vec<String> = (0..arity).map(|i| format!("y{i}")).collect();
    let atoms = rng.gen_range(1..=3);
    let mut parts = Vec::new();
    for _ in 0..atoms {
        let a = names.choose(rng).unwrap();
        let b = names.choose(rng).unwrap();
        let op = ["<", "<=", "=", ">=", ">"].choose(rng).unwrap();
        let n = rng.gen_range(-3..=3);
        let atom = match rng.gen_range(0..5) {
            0 => format!("v(x-{a}) {op} {n}"),
            1 => format!("v(x-{a}) {op} v({b})"),
            2 if a != b => {
                let (m1, m2) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
                let (pm, m2) = if m2 < 0 { ('-', -m2) } else { ('+', m2) };
                format!("affine{{{m1}*v(x-{a}) {pm} {m2}*v(x-{b}) {op} {n}}}")
            }
            3 => format!("x = {a}"),
            _ if a != b => format!("div((x-{a})^{} | (x-{b}))", rng.gen_range(1..=2)),
            _ => format!("v(x-{a}) {op} {n}"),
        };
        parts.push(if rng.gen_bool(0.25) { format!("!({atom})") } else { atom });
    }
    let sep = if rng.gen_bool(0.5) { " & " } else { " | " };
    let text = parts.join(sep);
    // keep only names that occur, in first-appearance order
    let mut used: Vec<(usize, String)> =
        names.into_iter().filter_map(|n| text.find(n.as_str()).map(|i| (i, n))).collect();
    used.sort();
    (text, used.into_iter().map(|(_, n)| n).collect())
}

pub fn params<R: Rng>(ctx: &FieldContext, rng: &mut R, arity: usize, count: usize) -> Vec<Vec<FieldElement>> {
    let pool = centres(ctx);
    (0..count).map(|_| (0..arity).map(|_| pool.choose(rng).unwrap().clone()).collect()).collect()
}

/// The `q` balls `closed(c, 1)` for the residue lifts `c`: their joins are
/// all `closed(0, 0)`, which then has exactly `q` holes.
pub fn tight_family(ctx: &FieldContext) -> Vec<Ball> {
    ctx.residue_lifts().iter().map(|c| Ball::closed(ctx, c, 1)).collect()
}

/// Distinct pairs of polynomials of degree `< deg` over `F_p`.
pub fn grid_pairs<R: Rng>(ctx: &FieldContext, rng: &mut R, deg: u32, count: usize) -> Vec<Vec<FieldElement>> {
    let p = ctx.p();
    let size = (p as u64).pow(deg);
    let mut seen = std::collections::BTreeSet::new();
    while seen.len() < count.min((size * size) as usize) {
        seen.insert((rng.gen_range(0..size), rng.gen_range(0..size)));
    }
    let mut pairs: Vec<(u64, u64)> = seen.into_iter().collect();
    pairs.shuffle(rng);
    pairs
        .into_iter()
        .map(|(a, b)| {
            vec![
                ctx.from_poly(Poly::from_index(a, p)).expect("function field"),
                ctx.from_poly(Poly::from_index(b, p)).expect("function field"),
            ]
        })
        .collect()
}

/// `count` sample points drawn without replacement from height `h`.
pub fn sample<R: Rng>(ctx: &FieldContext, rng: &mut R, h: u32, count: usize) -> Vec<FieldElement> {
    let pts = ctx.sample_points(h);
    pts.choose_multiple(rng, count.min(pts.len())).cloned().collect()
}
