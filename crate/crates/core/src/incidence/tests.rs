use super::*;
use crate::bounds::BoundParams;
use crate::qf1::{parse_element, parse_template};
use alloc::vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn f2() -> FieldContext {
    FieldContext::t_adic(2).unwrap()
}

fn el(ctx: &FieldContext, s: &str) -> FieldElement {
    parse_element(ctx, s).unwrap()
}

fn pair(ctx: &FieldContext, a: &str, b: &str) -> Vec<FieldElement> {
    vec![el(ctx, a), el(ctx, b)]
}

#[test]
fn origin_lies_on_the_zero_line() {
    let k = f2();
    let rel = Relation::PointLine;
    assert_eq!(count_incidences(&k, &rel, &[pair(&k, "0", "0")], &[pair(&k, "0", "0")]).unwrap(), 1);
    assert_eq!(count_incidences(&k, &rel, &[pair(&k, "0", "1")], &[pair(&k, "0", "0")]).unwrap(), 0);
    assert!(rel.holds(&k, &pair(&k, "t", "1+t^2"), &pair(&k, "t", "1")).unwrap());
}

#[test]
fn arity_mismatch_is_an_error() {
    let k = f2();
    let err = count_incidences(&k, &Relation::PointLine, &[vec![k.zero()]], &[]).unwrap_err();
    assert_eq!(err, IncidenceError::Arity { expected: 2, got: 1 });
}

/// `p^m` points on each line, counted by brute force over the full grid.
fn elekes_oracle(p: u32, m: u32) -> u64 {
    (p as u64).pow(4 * m)
}

#[test]
fn elekes_grids() {
    for (p, m, n) in [(2u32, 1u32, 8usize), (3, 1, 27), (2, 2, 64)] {
        let g = elekes_grid(p, m).unwrap();
        assert_eq!((g.points.len(), g.lines.len()), (n, n));
        let brute = count_incidences(&g.ctx, &Relation::PointLine, &g.points, &g.lines).unwrap();
        let fast = count_point_line_fast(&g.ctx, &g.points, &g.lines).unwrap();
        assert_eq!(brute, elekes_oracle(p, m));
        assert_eq!(fast, brute);
        let (i, n) = (BigUint::from(brute), BigUint::from(n));
        assert_eq!(i.pow(3), n.pow(4));
    }
}

#[test]
fn every_elekes_line_meets_p_to_the_m_points() {
    let g = elekes_grid(3, 1).unwrap();
    let by_point = incidence_rows(&g.ctx, &Relation::PointLine, &g.points, &g.lines).unwrap();
    let mut per_line = vec![0u32; g.lines.len()];
    for row in &by_point {
        for &j in row {
            per_line[j] += 1;
        }
    }
    assert!(per_line.iter().all(|&c| c == 3));
}

#[test]
fn point_line_grids_are_k22_free() {
    let g = elekes_grid(2, 1).unwrap();
    assert_eq!(check_kds_free(&g.ctx, &Relation::PointLine, &g.points, &g.lines, 2, 2).unwrap(), KdsVerdict::Free);
}

#[test]
fn complete_relation_has_a_witness() {
    let rows = vec![vec![0, 1, 2], vec![0, 1, 2], vec![1]];
    match kds_search(&rows, 3, 2, 2) {
        KdsVerdict::Witness { a, b } => {
            assert_eq!(a, vec![0, 1]);
            assert_eq!(b.len(), 2);
        }
        KdsVerdict::Free => panic!("witness expected"),
    }
    assert_eq!(kds_search(&rows, 3, 3, 2), KdsVerdict::Free);
    assert_eq!(kds_search(&[], 0, 1, 1), KdsVerdict::Free);
}

#[test]
fn ball_relation_witness() {
    let k = f2();
    let rel = Relation::Formula(parse_template("v(x-a) >= 1").unwrap());
    let a0 = vec![vec![k.zero()], vec![el(&k, "t")]];
    let b0 = vec![vec![k.zero()], vec![el(&k, "t^2")]];
    let verdict = check_kds_free(&k, &rel, &a0, &b0, 2, 2).unwrap();
    assert_eq!(verdict, KdsVerdict::Witness { a: vec![0, 1], b: vec![0, 1] });
    assert_eq!(count_incidences(&k, &rel, &a0, &b0).unwrap(), 4);
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn sweep_rows() {
    let bp = BoundParams::new(2, 2, rat(2), 2, rat(1)).unwrap();
    let rows = exponent_sweep(2, [1, 2], &bp, 1 << 20, 6).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0].n, rows[0].incidences), (8, 16));
    assert!(rows.iter().all(|r| r.ratio_four_thirds == BigUint::from(1u32)));
    // 16 / 8^{3/2} = 1/√2
    assert_eq!(rows[0].ratio_three_halves, "0.707106");
    // 8^{2/3}·8^{2/3} + 16 = 32
    assert_eq!(rows[0].bound.value, rat(32));
    assert!(exponent_sweep(2, [], &bp, 1, 6).unwrap().is_empty());
    assert_eq!(
        exponent_sweep(2, [3], &bp, 100, 6).unwrap_err(),
        IncidenceError::Budget { needed: 512, limit: 100 }
    );
}

/// Random distinct points and lines over a small field.
type Pairs = Vec<(u64, u64)>;

fn grid() -> impl Strategy<Value = (Pairs, Pairs)> {
    (
        prop::collection::btree_set((0u64..16, 0u64..16), 1..20),
        prop::collection::btree_set((0u64..16, 0u64..16), 1..20),
    )
        .prop_map(|(a, b)| (a.into_iter().collect(), b.into_iter().collect()))
}

fn embed(k: &FieldContext, v: &[(u64, u64)]) -> Vec<Vec<FieldElement>> {
    v.iter()
        .map(|&(x, y)| vec![k.from_poly(Poly::from_index(x, 2)).unwrap(), k.from_poly(Poly::from_index(y, 2)).unwrap()])
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fast_and_brute_force_agree((pts, lines) in grid()) {
        let k = f2();
        let (a0, b0) = (embed(&k, &pts), embed(&k, &lines));
        let brute = count_incidences(&k, &Relation::PointLine, &a0, &b0).unwrap();
        prop_assert_eq!(count_point_line_fast(&k, &a0, &b0).unwrap(), brute);
        prop_assert!(brute <= (a0.len() * b0.len()) as u64);
        prop_assert_eq!(check_kds_free(&k, &Relation::PointLine, &a0, &b0, 2, 2).unwrap(), KdsVerdict::Free);
    }

    #[test]
    fn witnesses_are_complete_rectangles(rows in prop::collection::vec(prop::collection::btree_set(0usize..6, 0..6), 0..7), d in 1usize..4, s in 1usize..4) {
        let rows: Vec<Vec<usize>> = rows.into_iter().map(|r| r.into_iter().collect()).collect();
        let verdict = kds_search(&rows, 6, d, s);
        // exhaustive oracle over all d-subsets of rows
        let n = rows.len();
        let mut exists = false;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != d {
                continue;
            }
            let common = (0..6).filter(|c| (0..n).filter(|i| mask >> i & 1 == 1).all(|i| rows[i].contains(c))).count();
            exists |= common >= s;
        }
        match verdict {
            KdsVerdict::Free => prop_assert!(!exists),
            KdsVerdict::Witness { a, b } => {
                prop_assert!(exists);
                prop_assert_eq!((a.len(), b.len()), (d, s));
                for i in &a {
                    for j in &b {
                        prop_assert!(rows[*i].contains(j));
                    }
                }
            }
        }
    }
}
