//! Acceptance checks. Runs without the libtest harness so that every check
//! prints exactly one PASS/FAIL line, even when it passes.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;

use vdistal::gen;
use vdistal_core::ball::Ball;
use vdistal_core::bounds::{bound_exponents, sym_exponent, BoundParams};
use vdistal_core::cheese::{normalize, BallFormula, SwissCheese};
use vdistal_core::distal::{verify_ushd, BallFamily, CellDecomposition};
use vdistal_core::field::{FieldContext, FieldElement};
use vdistal_core::incidence::{check_kds_free, count_incidences, count_point_line_fast, elekes_grid, KdsVerdict, Relation};
use vdistal_core::qf1::{compiled_atom_bound, formula_to_cheese, parse_template, QfFormula};
use vdistal_core::qf1::Atom;

const BACKENDS: [&str; 4] = ["ff:2:t", "ff:3:t", "ff:2:1+t+t^2", "q:5"];

fn contexts() -> Vec<FieldContext> {
    BACKENDS.iter().map(|s| FieldContext::from_spec(s).expect("backend spec")).collect()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Equivalence in the algebraic closure: the atoms of both formulas together
/// with the whole line form a laminar family, and each of its regions is
/// nonempty, so it suffices to compare truth values region by region. The
/// region below node `n` lies inside an atom exactly when `n` does.
fn region_equivalent(ctx: &FieldContext, f: &BallFormula, g: &BallFormula) -> bool {
    let mut nodes: Vec<Ball> = f.atoms().into_iter().chain(g.atoms()).filter(|b| !b.is_empty()).collect();
    nodes.push(Ball::whole(ctx));
    nodes.iter().all(|n| {
        let mut truth = |a: &Ball| !a.is_empty() && n.subset(ctx, a);
        f.eval_with(&mut truth) == g.eval_with(&mut truth)
    })
}

/// Smallest sample height giving at least `n` points.
fn points_at_least(ctx: &FieldContext, n: usize) -> Vec<FieldElement> {
    (1..).map(|h| ctx.sample_points(h)).find(|p| p.len() >= n).unwrap()
}

type Check = fn() -> Result<String, String>;

fn criterion_1() -> Result<String, String> {
    let start = Instant::now();
    let mut detail = Vec::new();
    for (i, ctx) in contexts().iter().enumerate() {
        let pts = points_at_least(ctx, 200);
        let mut rng = gen::rng(1000 + i as u64);
        let formulas: Vec<BallFormula> = (0..1000).map(|_| gen::ball_formula(ctx, &mut rng, 6)).collect();
        let bad = formulas
            .par_iter()
            .filter(|f| {
                let s = normalize(ctx, f);
                !region_equivalent(ctx, f, &s.to_formula())
                    || !s.check_invariants(ctx)
                    || pts.iter().any(|x| s.member(ctx, x) != f.eval_point(ctx, x))
            })
            .count();
        if bad > 0 {
            return Err(format!("{}: {bad} of 1000 formulas disagree", BACKENDS[i]));
        }
        detail.push(format!("{} {} pts", BACKENDS[i], pts.len()));
    }
    let took = start.elapsed();
    if took >= Duration::from_secs(60) {
        return Err(format!("took {took:.1?}"));
    }
    Ok(format!("4000 formulas, 0 discrepancies ({}), {took:.1?}", detail.join(", ")))
}

fn criterion_2() -> Result<String, String> {
    let mut detail = Vec::new();
    for (i, ctx) in contexts().iter().enumerate() {
        let pts = ctx.sample_points(4);
        let mut rng = gen::rng(2000 + i as u64);
        let cs: Vec<_> = (0..500).map(|_| gen::constraint(ctx, &mut rng)).collect();
        let bad = cs
            .par_iter()
            .filter(|c| {
                let f = QfFormula::Atom(Atom::Affine((*c).clone()));
                let s = formula_to_cheese(ctx, &f).expect("compiles");
                let atoms = vdistal_core::qf1::constraint_to_balls(ctx, c).atom_count();
                atoms > compiled_atom_bound(c.terms().len()) || pts.iter().any(|x| s.member(ctx, x) != c.eval(ctx, x))
            })
            .count();
        if bad > 0 {
            return Err(format!("{}: {bad} of 500 constraints disagree", BACKENDS[i]));
        }
        detail.push(format!("{} {} pts", BACKENDS[i], pts.len()));
    }
    Ok(format!("2000 constraints, 0 discrepancies ({})", detail.join(", ")))
}

fn criterion_3() -> Result<String, String> {
    let mut cells = 0usize;
    let mut pairs = 0usize;
    for (i, ctx) in contexts().iter().enumerate() {
        let mut rng = gen::rng(3000 + i as u64);
        for _ in 0..100 {
            let (text, names) = gen::relation_text(&mut rng);
            let tpl = parse_template(&text).and_then(|t| t.with_param_order(&names)).map_err(|e| format!("{text}: {e}"))?;
            let n = rng.gen_range(2..=12);
            let params = gen::params(ctx, &mut rng, names.len(), n);
            let samples = gen::sample(ctx, &mut rng, 3, 40);
            let r = verify_ushd(ctx, &tpl, &params, &samples).map_err(|e| format!("{text}: {e}"))?;
            if !r.is_clean() {
                return Err(format!(
                    "{}: {text} has {} cuts, {} sample mismatches",
                    BACKENDS[i],
                    r.cuts.len(),
                    r.sample_mismatches.len()
                ));
            }
            cells += r.cell_count;
            pairs += r.cell_count * params.len();
        }
    }
    Ok(format!("400 relation families, {cells} cells, {pairs} cell/parameter pairs, 0 cuts"))
}

/// 200 random families per backend, shared by criteria 4 and 5.
fn families(ctx: &FieldContext, seed: u64) -> Vec<Vec<Ball>> {
    let mut rng = gen::rng(seed);
    (0..200).map(|_| {
        let n = rng.gen_range(1..=12);
        gen::family(ctx, &mut rng, n)
    }).collect()
}

fn criterion_4() -> Result<String, String> {
    let mut detail = Vec::new();
    for (i, ctx) in contexts().iter().enumerate() {
        let q = ctx.q() as usize;
        let mut worst = 0;
        for fam in families(ctx, 4000 + i as u64) {
            let h = CellDecomposition::new(ctx, BallFamily::new(fam)).max_holes();
            if h > q {
                return Err(format!("{}: {h} holes > q = {q}", BACKENDS[i]));
            }
            worst = worst.max(h);
        }
        let tight = CellDecomposition::new(ctx, BallFamily::new(gen::tight_family(ctx))).max_holes();
        if tight != q {
            return Err(format!("{}: residue-class family has {tight} holes, expected {q}", BACKENDS[i]));
        }
        detail.push(format!("{} q={q} random max {worst}", BACKENDS[i]));
    }
    Ok(format!("max_holes <= q on 800 families, q attained by residue classes ({})", detail.join(", ")))
}

fn check_partition(ctx: &FieldContext, fam: Vec<Ball>, pts: &[FieldElement]) -> Result<(), String> {
    let dec = CellDecomposition::new(ctx, BallFamily::new(fam));
    let whole = Ball::whole(ctx);
    let expected = dec.closure().len() + usize::from(!dec.closure().contains(&whole));
    let cells: Vec<SwissCheese> = dec.cells().iter().map(|c| c.as_cheese(ctx)).collect();
    if cells.len() != expected {
        return Err(format!("{} cells, expected {expected}", cells.len()));
    }
    let mut union = SwissCheese::empty();
    for (a, ca) in cells.iter().enumerate() {
        if ca.is_empty() {
            return Err(format!("cell {a} is empty"));
        }
        for cb in &cells[a + 1..] {
            if !ca.disjoint_from(ctx, cb) {
                return Err(format!("cell {a} overlaps a later cell"));
            }
        }
        union = union.union(ctx, ca);
    }
    if union != SwissCheese::whole(ctx) {
        return Err("cells do not cover the line".into());
    }
    for x in pts {
        let inside: Vec<usize> = (0..cells.len()).filter(|&j| dec.cells()[j].contains(ctx, x)).collect();
        if inside != [dec.cell_index_of(ctx, x)] {
            return Err(format!("point {x} lies in cells {inside:?}"));
        }
    }
    Ok(())
}

fn criterion_5() -> Result<String, String> {
    let mut checked = 0;
    for (i, ctx) in contexts().iter().enumerate() {
        let pts = ctx.sample_points(3);
        let fams = families(ctx, 4000 + i as u64);
        fams.into_par_iter()
            .try_for_each(|fam| check_partition(ctx, fam, &pts))
            .map_err(|e| format!("{}: {e}", BACKENDS[i]))?;
        checked += 200;
    }
    Ok(format!("{checked} families partition the line into |B0'|+1 disjoint cells, cell_of_point consistent"))
}

fn criterion_6() -> Result<String, String> {
    let e = bound_exponents(&BoundParams::new(2, 2, rat(2, 1), 2, rat(1, 1)).unwrap());
    if (e.alpha.clone(), e.beta.clone()) != (rat(2, 3), rat(2, 3)) {
        return Err(format!("t=2, d=2 gives ({}, {})", e.alpha, e.beta));
    }
    let e = bound_exponents(&BoundParams::new(2, 2, rat(12, 1), 2, rat(1, 1)).unwrap());
    if e.epsilon != rat(1, 23) {
        return Err(format!("t=12, d=2 gives epsilon {}", e.epsilon));
    }
    for p in [2i64, 3, 5] {
        let want = rat(3, 2) - rat(1, 16 * p + 14);
        if sym_exponent(p as u64) != want {
            return Err(format!("sym(q={p}) = {}", sym_exponent(p as u64)));
        }
    }
    Ok("(2/3, 2/3), 1/23 and 3/2 - 1/(16p+14) for p in {2,3,5}, exact".into())
}

fn criterion_7() -> Result<String, String> {
    let mut detail = Vec::new();
    for (p, m) in [(2u32, 1u32), (3, 1), (2, 2)] {
        let start = Instant::now();
        let g = elekes_grid(p, m).map_err(|e| e.to_string())?;
        let brute = count_incidences(&g.ctx, &Relation::PointLine, &g.points, &g.lines).map_err(|e| e.to_string())?;
        let fast = count_point_line_fast(&g.ctx, &g.points, &g.lines).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        let want = (p as u64).pow(4 * m);
        let n = BigUint::from(g.points.len());
        if brute != want || fast != brute || BigUint::from(brute).pow(3) != n.pow(4) {
            return Err(format!("(p,m)=({p},{m}): brute {brute}, fast {fast}, N {n}"));
        }
        if (p, m) == (2, 2) && took >= Duration::from_secs(1) {
            return Err(format!("(2,2) took {took:.1?}"));
        }
        detail.push(format!("({p},{m}) I={brute} N={n} in {took:.1?}"));
    }
    Ok(format!("I = p^(4m), I^3 = N^4, fast = brute: {}", detail.join("; ")))
}

fn criterion_8() -> Result<String, String> {
    for (p, m) in [(2u32, 1u32), (3, 1), (2, 2)] {
        let g = elekes_grid(p, m).map_err(|e| e.to_string())?;
        let v = check_kds_free(&g.ctx, &Relation::PointLine, &g.points, &g.lines, 2, 2).map_err(|e| e.to_string())?;
        if v != KdsVerdict::Free {
            return Err(format!("Elekes grid ({p},{m}): {v:?}"));
        }
    }
    let mut rng = gen::rng(8000);
    for trial in 0..50 {
        let ctx = FieldContext::t_adic(if trial % 2 == 0 { 2 } else { 3 }).unwrap();
        let n = rng.gen_range(5..=40);
        let pts = gen::grid_pairs(&ctx, &mut rng, 3, n);
        let lines = gen::grid_pairs(&ctx, &mut rng, 3, n);
        let v = check_kds_free(&ctx, &Relation::PointLine, &pts, &lines, 2, 2).map_err(|e| e.to_string())?;
        if v != KdsVerdict::Free {
            return Err(format!("random grid {trial}: {v:?}"));
        }
    }
    Ok("3 Elekes grids and 50 random grids are K_{2,2}-free".into())
}

fn criterion_9() -> Result<String, String> {
    let dir = std::env::temp_dir().join(format!("vdistal-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let out = dir.join("out.txt");
    let out_arg = out.to_str().unwrap().to_string();
    let runs: Vec<Vec<&str>> = vec![
        vec!["--seed", "7", "distal", "growth", "--sizes", "2,4,8", "--trials", "3"],
        vec!["--ctx", "q:5", "--seed", "11", "distal", "verify-ushd", "--phi", "v(x-a) >= v(b)", "--params", "[[\"0\",\"5\"],[\"1\",\"25\"],[\"1/5\",\"1\"]]", "--samples", "30"],
        vec!["incidence", "sweep", "--p", "2", "--m", "1..2"],
        vec!["--ctx", "ff:3:t", "cheese", "normalize", "--formula", "v(x) >= 1 & !(v(x-t) > 2)"],
        vec!["--seed", "3", "distal", "growth", "--sizes", "5", "--trials", "2", "--out", &out_arg],
    ];
    let bin = env!("CARGO_BIN_EXE_vdistal");
    for args in &runs {
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let o = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
            if !o.status.success() {
                return Err(format!("{args:?} exited with {}: {}", o.status, String::from_utf8_lossy(&o.stderr)));
            }
            let bytes = if args.contains(&"--out") { std::fs::read(&out).map_err(|e| e.to_string())? } else { o.stdout };
            outputs.push(bytes);
        }
        if outputs[0] != outputs[1] || outputs[0].is_empty() {
            return Err(format!("{args:?} is not reproducible"));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} commands byte-identical across repeated runs", runs.len()))
}

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("Swiss cheese canonical form soundness", criterion_1),
        ("constraint compilation soundness", criterion_2),
        ("cut-freeness of compiled relation families", criterion_3),
        ("hole bound and its tightness", criterion_4),
        ("cell partition", criterion_5),
        ("exact exponent formulas", criterion_6),
        ("Elekes identity", criterion_7),
        ("point-line K_{2,2}-freeness", criterion_8),
        ("CLI determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(msg) => println!("PASS criterion {}: {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
