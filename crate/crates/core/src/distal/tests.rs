use super::*;
use crate::field::tests::contexts;
use crate::qf1::{parse_element, parse_template};
use alloc::vec;
use proptest::prelude::*;

fn f2() -> FieldContext {
    FieldContext::t_adic(2).unwrap()
}

fn el(ctx: &FieldContext, s: &str) -> FieldElement {
    parse_element(ctx, s).unwrap()
}

fn closed(ctx: &FieldContext, c: &str, r: i64) -> Ball {
    Ball::closed(ctx, &el(ctx, c), r)
}

/// All pairwise joins, recomputed directly.
fn closure_oracle(ctx: &FieldContext, b0: &[Ball]) -> BTreeSet<Ball> {
    b0.iter().flat_map(|a| b0.iter().map(move |b| a.join(ctx, b).unwrap())).collect()
}

use alloc::collections::BTreeSet;

#[test]
fn closure_of_a_singleton() {
    let k = f2();
    let fam = BallFamily::new([closed(&k, "0", 1)]);
    let cl = join_closure(&k, &fam);
    assert_eq!(cl.balls().cloned().collect::<Vec<_>>(), vec![closed(&k, "0", 1)]);
    assert_eq!(cl.source(&closed(&k, "0", 1)), Some(Source::Join(0, 0)));
}

#[test]
fn closure_adds_the_join() {
    let k = f2();
    let b0 = [closed(&k, "0", 1), closed(&k, "1", 1)];
    let cl = join_closure(&k, &BallFamily::new(b0.clone()));
    assert_eq!(cl.balls().cloned().collect::<BTreeSet<_>>(), closure_oracle(&k, &b0));
    assert!(cl.contains(&closed(&k, "0", 0)));
    assert_eq!(cl.len(), 3);
    assert!(cl.is_closed(&k));
}

#[test]
fn closure_of_three_points() {
    let k = f2();
    let b0 = [Ball::point(&k.zero()), Ball::point(&k.one()), Ball::point(&el(&k, "t"))];
    let cl = join_closure(&k, &BallFamily::new(b0.clone()));
    assert!(cl.contains(&closed(&k, "0", 0)));
    assert!(cl.contains(&closed(&k, "0", 1)));
    assert_eq!(cl.len(), 5);
    assert_eq!(cl.balls().cloned().collect::<BTreeSet<_>>(), closure_oracle(&k, &b0));
}

fn example_family(k: &FieldContext) -> BallFamily {
    BallFamily::new([closed(k, "0", 1), closed(k, "1", 1)])
}

#[test]
fn cells_of_points() {
    let k = f2();
    let dec = CellDecomposition::new(&k, example_family(&k));
    let c = dec.cell_of_point(&k, &el(&k, "t"));
    assert_eq!((&c.round, c.holes.len()), (&closed(&k, "0", 1), 0));
    let c = dec.cell_of_point(&k, &el(&k, "1/t"));
    assert!(c.round.is_whole());
    assert_eq!(c.holes, vec![closed(&k, "0", 0)]);
    assert_eq!(c.round_source, Source::Top);
}

#[test]
fn cell_between_two_holes_over_f3() {
    let k = FieldContext::t_adic(3).unwrap();
    let dec = CellDecomposition::new(&k, example_family(&k));
    // 1+t lies in closed(1,1); 2+t has residue 2 and avoids both holes
    let c = dec.cell_of_point(&k, &el(&k, "1+t"));
    assert_eq!(c.round, closed(&k, "1", 1));
    let c = dec.cell_of_point(&k, &el(&k, "2+t"));
    assert_eq!(c.round, closed(&k, "0", 0));
    let mut holes = vec![closed(&k, "0", 1), closed(&k, "1", 1)];
    holes.sort();
    assert_eq!(c.holes, holes);
    assert!(c.contains(&k, &el(&k, "2+t")));
}

#[test]
fn enumeration_examples() {
    let k = f2();
    let cells = enumerate_cells(&k, &BallFamily::default());
    assert_eq!(cells.len(), 1);
    assert!(cells[0].round.is_whole() && cells[0].holes.is_empty());

    let cells = enumerate_cells(&k, &BallFamily::new([closed(&k, "0", 1)]));
    assert_eq!(cells.len(), 2);
    assert!(cells.iter().any(|c| c.round == closed(&k, "0", 1) && c.holes.is_empty()));
    assert!(cells.iter().any(|c| c.round.is_whole() && c.holes == vec![closed(&k, "0", 1)]));

    let dec = CellDecomposition::new(&k, example_family(&k));
    assert_eq!(dec.cells().len(), 4);
    assert!(dec.cells().iter().any(|c| c.round == closed(&k, "0", 0) && c.holes.len() == 2));
    assert!(dec.is_partition(&k));
}

#[test]
fn hole_bound_examples() {
    let k = f2();
    assert_eq!(max_holes(&k, &example_family(&k)), 2);
    assert_eq!(max_holes(&k, &BallFamily::new([closed(&k, "0", 1)])), 1);
}

#[test]
fn nested_chain_adds_no_joins() {
    let k = FieldContext::t_adic(3).unwrap();
    let chain: Vec<Ball> = (0..6).map(|r| closed(&k, "1+t^3", r)).collect();
    let dec = CellDecomposition::new(&k, BallFamily::new(chain));
    assert_eq!(dec.cells().len(), 7);
    assert_eq!(dec.max_holes(), 1);
}

#[test]
fn whole_line_in_the_family_is_one_cell() {
    let k = f2();
    let dec = CellDecomposition::new(&k, BallFamily::new([Ball::whole(&k), closed(&k, "0", 1)]));
    assert_eq!(dec.closure().len(), 2);
    assert_eq!(dec.cells().len(), 2);
}

#[test]
fn ushd_for_ball_membership() {
    let k = f2();
    let phi = parse_template("v(x-c) >= 1").unwrap();
    let params = vec![vec![k.zero()], vec![k.one()]];
    let report = verify_ushd(&k, &phi, &params, &k.sample_points(2)).unwrap();
    assert!(report.is_clean());
    assert_eq!(report.cell_count, 4);
    assert_eq!(report.max_holes, 2);
}

#[test]
fn ushd_for_points() {
    let k = FieldContext::p_adic(5).unwrap();
    let phi = parse_template("x = c").unwrap();
    let params = vec![vec![k.from_int(3)], vec![k.rational(1, 5).unwrap()]];
    let report = verify_ushd(&k, &phi, &params, &k.sample_points(2)).unwrap();
    assert!(report.is_clean());
}

#[test]
fn ushd_needs_two_parameters() {
    let k = f2();
    let phi = parse_template("v(x-c) >= 1").unwrap();
    assert_eq!(verify_ushd(&k, &phi, &[vec![k.zero()]], &[]).unwrap_err(), DistalError::TooFewParams(1));
}

#[test]
fn classify_detects_cuts() {
    let k = f2();
    let whole = SwissCheese::whole(&k);
    let ball = SwissCheese::from_ball(&k, &closed(&k, "0", 1));
    assert_eq!(classify(&k, &whole, &ball), Verdict::Cut);
    assert_eq!(classify(&k, &ball, &whole), Verdict::Inside);
    assert_eq!(classify(&k, &ball, &ball.complement(&k)), Verdict::Outside);
}

fn family() -> impl Strategy<Value = (FieldContext, BallFamily)> {
    (0..contexts().len(), prop::collection::vec((0usize..200, -2i64..4, any::<bool>(), any::<bool>()), 0..8)).prop_map(
        |(i, specs)| {
            let k = contexts().swap_remove(i);
            let pts = k.sample_points(2);
            let balls = specs.into_iter().map(|(c, r, open, point)| {
                let centre = &pts[c % pts.len()];
                if point {
                    Ball::point(centre)
                } else if open {
                    Ball::open(&k, centre, r)
                } else {
                    Ball::closed(&k, centre, r)
                }
            });
            let fam = BallFamily::new(balls);
            (k, fam)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_properties((k, fam) in family()) {
        let dec = CellDecomposition::new(&k, fam.clone());
        let n = fam.len();
        prop_assert_eq!(
            dec.closure().balls().cloned().collect::<BTreeSet<_>>(),
            closure_oracle(&k, fam.balls())
        );
        prop_assert!(dec.closure().is_closed(&k));
        prop_assert!(dec.closure().len() <= n * (n + 1) / 2);
        let with_top = dec.closure().len() + usize::from(!dec.closure().balls().any(Ball::is_whole));
        prop_assert_eq!(dec.cells().len(), with_top);
        prop_assert!(dec.max_holes() as u64 <= k.q());
        prop_assert!(dec.is_partition(&k));
        for cell in dec.cells() {
            let cc = cell.as_cheese(&k);
            prop_assert_eq!(cc.cheeses().len(), 1);
            for b in fam.balls() {
                let v = classify(&k, &cc, &SwissCheese::from_ball(&k, b));
                prop_assert_ne!(v, Verdict::Cut);
            }
        }
        for x in k.sample_points(1) {
            let i = dec.cell_index_of(&k, &x);
            prop_assert!(dec.cells()[i].contains(&k, &x));
            let holders = dec.cells().iter().filter(|c| c.contains(&k, &x)).count();
            prop_assert_eq!(holders, 1);
        }
    }

    #[test]
    fn ushd_holds_for_random_ball_relations(
        i in 0..contexts().len(),
        raw in prop::collection::vec((0usize..200, 0usize..200), 2..6),
    ) {
        let k = contexts().swap_remove(i);
        let pts = k.sample_points(2);
        let phi = parse_template("v(x-a) >= v(b)").unwrap();
        let params: Vec<Vec<FieldElement>> = raw
            .iter()
            .map(|(a, b)| vec![pts[a % pts.len()].clone(), pts[b % pts.len()].clone()])
            .filter(|v| !v[1].is_zero())
            .collect();
        prop_assume!(params.len() >= 2);
        let report = verify_ushd(&k, &phi, &params, &k.sample_points(1)).unwrap();
        prop_assert!(report.is_clean(), "{:?}", report);
    }
}
