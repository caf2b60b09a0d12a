//! Exact-recurrence gates: frozen sequence values, histogram chain vs the
//! BFS oracle, the overcount sum under both pair conventions, negative
//! controls, and the assembled metrics table cross-validated against
//! brute force.

use num_bigint::BigInt;
use num_rational::BigRational;
use penta_core::decimal::ratio_to_f64;
use penta_core::engine::{
    self, DeltaConvention, CSV_HEADER, MAX_APL_T, MAX_ASSEMBLE_T, MAX_CHAIN_T,
};
use penta_core::graph::{build, decompose, BranchDecomposition};
use penta_core::oracle;
use penta_core::PentaError;
use std::collections::BTreeMap;

const D12: [u64; 21] = [
    1, 4, 10, 28, 76, 208, 568, 1552, 4240, 11584, 31648, 86464, 236224, 645376, 1763200, 4817152,
    13160704, 35955712, 98232832, 268377088, 733219840,
];
const D13: [u64; 21] = [
    2, 5, 14, 38, 104, 284, 776, 2120, 5792, 15824, 43232, 118112, 322688, 881600, 2408576,
    6580352, 17977856, 49116416, 134188544, 366609920, 1001596928,
];
const S: [u64; 5] = [6, 66, 849, 11355, 154233];
const F: [u64; 5] = [4, 51, 662, 8908, 120822];
const DELTA: [&str; 16] = [
    "4",
    "30",
    "1002",
    "56540",
    "3697330",
    "251032868",
    "17114050130",
    "1168705606692",
    "79817184975658",
    "5451596410940652",
    "372349327328072322",
    "25431934935477332756",
    "1737033038020692029242",
    "118641565545553203302108",
    "8103369506168797692491186",
    "553470431302847900908421988",
];
const D_TOTAL: [u64; 6] = [15, 555, 33910, 2189750, 147794630, 10036391670];
const A_CROSS: [u64; 4] = [480, 31135, 2020200, 136845880];
const A12: [u64; 4] = [48, 2508, 159612, 10650990];
const D1C: [u64; 4] = [14, 211, 2562, 35228];
const LAMBDA13: [u64; 4] = [60, 3922, 246970, 16753358];

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

#[test]
fn corner_distance_sequences() {
    let d12 = engine::d12_seq(20);
    let d13 = engine::d13_seq(20);
    for t in 0..=20 {
        assert_eq!(d12[t], big(D12[t]), "d12 at t={t}");
        assert_eq!(d13[t], big(D13[t]), "d13 at t={t}");
    }
    // the coupled one-step form and the shared second-order recurrence
    for t in 1..=20 {
        assert_eq!(d12[t], 2 * &d13[t - 1]);
        assert_eq!(d13[t], 2 * &d13[t - 1] + &d12[t - 1]);
        if t >= 2 {
            assert_eq!(d12[t], 2 * &d12[t - 1] + 2 * &d12[t - 2]);
            assert_eq!(d13[t], 2 * &d13[t - 1] + 2 * &d13[t - 2]);
        }
    }
}

#[test]
fn node_and_edge_counts() {
    for t in 0..=6 {
        let g = build(t).unwrap();
        assert_eq!(engine::node_count(t), BigInt::from(g.node_count()));
        assert_eq!(engine::edge_count(t), BigInt::from(g.edge_count()));
    }
    assert_eq!(engine::node_count(0), big(5));
    assert_eq!(engine::node_count(1), big(20));
    // closed form (3 * 5^(t+1) + 5) / 4 at a depth brute force cannot reach
    assert_eq!(
        engine::node_count(20),
        (BigInt::from(3) * BigInt::from(5).pow(21) + 5) / 4
    );
}

#[test]
fn row_sum_recurrences_match_bfs() {
    let s = engine::s_seq(4);
    let f = engine::f_seq(4);
    for t in 0..=4u32 {
        assert_eq!(s[t as usize], big(S[t as usize]));
        assert_eq!(f[t as usize], big(F[t as usize]));

        let g = build(t).unwrap();
        // S is a corner's distance row sum
        assert_eq!(
            oracle::corner_row_sum(&g, 0),
            S[t as usize],
            "S via BFS at t={t}"
        );
        // F sums, per node, the nearer of the two role-3/role-4 corners
        let c = g.corners();
        let d3 = oracle::bfs(&g, c[2]);
        let d4 = oracle::bfs(&g, c[3]);
        let f_bfs: u64 = d3.iter().zip(&d4).map(|(&x, &y)| x.min(y) as u64).sum();
        assert_eq!(f_bfs, F[t as usize], "F via BFS at t={t}");
    }
}

#[test]
fn level_zero_joint_is_frozen() {
    let joint = oracle::omega_direct(&build(0).unwrap());
    let want: BTreeMap<(i64, i64), u64> = [
        ((0, 1), 1),
        ((-1, -1), 1),
        ((-1, -2), 1),
        ((1, 0), 1),
        ((1, 2), 1),
    ]
    .into_iter()
    .collect();
    assert_eq!(joint.pairs, want);

    let w = engine::omega_init();
    assert_eq!(joint.a_marginal(), w.a);
    assert_eq!(joint.b_marginal(), w.b);
}

#[test]
fn level_one_histograms_are_frozen() {
    let w = engine::omega_chain(1).unwrap();
    assert_eq!(w.a.half_counts(), &[2, 6, 1, 1, 1]);
    assert_eq!(w.b.half_counts(), &[4, 3, 2, 1, 1, 1]);
}

#[test]
fn chain_matches_bfs_marginals_through_t5() {
    for t in 0..=5 {
        let w = engine::omega_chain(t).unwrap();
        let joint = oracle::omega_direct(&build(t).unwrap());
        assert_eq!(w.a, joint.a_marginal(), "a marginal at t={t}");
        assert_eq!(w.b, joint.b_marginal(), "b marginal at t={t}");
    }
}

#[test]
fn chain_shape_invariants() {
    for t in 0..=8 {
        let w = engine::omega_chain(t).unwrap();
        assert_eq!(w.t, t);
        assert_eq!(w.a.range() as u64, D12[t as usize], "a range is d12");
        assert_eq!(w.b.range() as u64, D13[t as usize], "b range is d13");
        let n = match engine::node_count(t).to_string().parse::<u128>() {
            Ok(v) => v,
            Err(e) => panic!("node count must fit u128: {e}"),
        };
        assert_eq!(w.a.mass(), n, "a mass at t={t}");
        assert_eq!(w.b.mass(), n, "b mass at t={t}");
        assert!(w.a.is_dense() && w.b.is_dense(), "dense support at t={t}");
    }
}

#[test]
fn delta_series_matches_frozen_table() {
    let got = engine::delta_series(15, DeltaConvention::Auto).unwrap();
    assert_eq!(got.len(), 16);
    for (t, want) in DELTA.iter().enumerate() {
        assert_eq!(got[t], want.parse::<BigInt>().unwrap(), "delta at t={t}");
    }
}

#[test]
fn pair_conventions_agree_everywhere() {
    let mut w = engine::omega_init();
    for t in 0..=10 {
        let incl = engine::delta_from_hist(&w.a, DeltaConvention::Inclusive);
        let excl = engine::delta_from_hist(&w.a, DeltaConvention::Exclusive);
        let auto = engine::delta_from_hist(&w.a, DeltaConvention::Auto);
        assert_eq!(incl, excl, "conventions diverge at t={t}");
        assert_eq!(incl, auto);
        if t < 10 {
            w = engine::omega_step(&w).unwrap();
        }
    }
    assert_eq!(DeltaConvention::Auto.canonical(), "inclusive");
    assert_eq!(DeltaConvention::Exclusive.canonical(), "exclusive");
}

#[test]
fn far_hub_misread_is_rejected_by_the_table() {
    // the broken reading differs at level 0 already (1 vs 4) and at every
    // level after
    let mut w = engine::omega_init();
    assert_eq!(engine::delta_far_hub_misread(&w.a), BigInt::from(1));
    for (t, want) in DELTA.iter().enumerate().take(9) {
        let broken = engine::delta_far_hub_misread(&w.a);
        assert_ne!(
            broken,
            want.parse::<BigInt>().unwrap(),
            "misread must disagree at t={t}"
        );
        if t < 8 {
            w = engine::omega_step(&w).unwrap();
        }
    }
}

#[test]
fn streamed_level_matches_materialized() {
    for t in 0..=6 {
        let w = engine::omega_chain(t).unwrap();
        let next = engine::omega_step(&w).unwrap();
        assert_eq!(
            engine::delta_virtual_next(&w),
            engine::delta_from_hist(&next.a, DeltaConvention::Auto),
            "virtual level t+1={} disagrees",
            t + 1
        );
    }
}

#[test]
fn assembled_table_is_frozen() {
    let rows = engine::assemble(5).unwrap();
    for t in 0..=5usize {
        assert_eq!(rows[t].d_total, big(D_TOTAL[t]), "D at t={t}");
    }
    for t in 0..=3usize {
        assert_eq!(rows[t].a12, big(A12[t]), "a12 at t={t}");
        assert_eq!(rows[t].d1c, big(D1C[t]), "d1c at t={t}");
        assert_eq!(rows[t].lambda13, big(LAMBDA13[t]), "lambda13 at t={t}");
        assert_eq!(rows[t].a_cross, big(A_CROSS[t]), "a_cross at t={t}");
    }
    assert_eq!(
        rows[1].apl,
        BigRational::new(big(111), big(38)),
        "average path length at t=1"
    );
    // D(t+1) = 5 D(t) + a_cross(t)
    for t in 0..5usize {
        assert_eq!(rows[t + 1].d_total, 5 * &rows[t].d_total + &rows[t].a_cross);
    }
}

#[test]
fn totals_match_brute_force() {
    for t in 0..=4 {
        let g = build(t).unwrap();
        let rows = engine::assemble(t).unwrap();
        assert_eq!(
            oracle::total_distance(&g),
            rows[t as usize].d_total,
            "D vs BFS at t={t}"
        );
        assert_eq!(
            oracle::average_path_length(&g),
            rows[t as usize].apl,
            "APL vs BFS at t={t}"
        );
    }
}

#[test]
fn aggregates_match_brute_force_pair_sums() {
    // every intermediate of the assembly step, measured directly on G(t+1)
    let rows = engine::assemble(3).unwrap();
    for (t, row) in rows.iter().enumerate() {
        let g = build(t as u32 + 1).unwrap();
        let dec = decompose(&g).unwrap();

        // adjacent branches 0 and 1 share junction 0; drop it on both sides
        let (l, r) = BranchDecomposition::adjacent_pair(0);
        let hub = dec.junctions[0];
        let left: Vec<u32> = dec.branches[l]
            .iter()
            .copied()
            .filter(|&v| v != hub)
            .collect();
        let right: Vec<u32> = dec.branches[r]
            .iter()
            .copied()
            .filter(|&v| v != hub)
            .collect();
        assert_eq!(
            BigInt::from(oracle::pair_sum(&g, &left, &right)),
            row.a12,
            "a12 vs BFS at t={t}"
        );

        // next-nearest branches 0 and 2; drop the hub each extends toward
        // the middle branch 1
        let left: Vec<u32> = dec.branches[0]
            .iter()
            .copied()
            .filter(|&v| v != dec.junctions[0])
            .collect();
        let right: Vec<u32> = dec.branches[2]
            .iter()
            .copied()
            .filter(|&v| v != dec.junctions[1])
            .collect();
        assert_eq!(
            BigInt::from(oracle::pair_sum(&g, &left, &right)),
            row.lambda13,
            "lambda13 vs BFS at t={t}"
        );

        // junction 0 to the branch facing it
        let far = BranchDecomposition::far_branch(0);
        let d = oracle::bfs(&g, dec.junctions[0]);
        let d1c: u64 = dec.branches[far]
            .iter()
            .map(|&v| d[v as usize] as u64)
            .sum();
        assert_eq!(BigInt::from(d1c), row.d1c, "d1c vs BFS at t={t}");

        // the within/cross split of the full total
        let (within, cross) = oracle::branch_split_totals(&g, &dec);
        assert_eq!(within, 5 * &row.d_total, "within-branch total at t={t}");
        assert_eq!(cross, row.a_cross, "cross-branch total at t={t}");
    }
}

#[test]
fn overcount_stays_small_against_its_aggregate() {
    let rows = engine::assemble(12).unwrap();
    let ratios = engine::delta_lambda_ratios(&rows);
    assert_eq!(ratios.first().map(|&(t, _)| t), Some(2));
    for &(t, ratio) in &ratios {
        assert!(ratio.is_finite() && ratio > 0.0);
        assert!(ratio < 0.1, "delta/lambda13 = {ratio} at t={t}");
    }
    // the level-2 ratio is the largest and sits near 0.004
    let first = ratios[0].1;
    assert!((0.003..0.005).contains(&first), "got {first}");
}

#[test]
fn csv_rendering_is_frozen() {
    let rows = engine::assemble(1).unwrap();
    let csv = engine::to_csv(&rows, false);
    let want = format!(
        "{CSV_HEADER}\n0,5,5,1,2,6,4,4,48,14,60,480,15,3,2\n1,20,25,4,5,66,51,30,2508,211,3922,31135,555,111,38\n"
    );
    assert_eq!(csv, want);

    let with_dec = engine::to_csv(&rows, true);
    assert!(with_dec.starts_with(&format!("{CSV_HEADER},apl_decimal\n")));
    assert!(with_dec.contains(",15,3,2,1.50000000000000\n"));
    assert!(with_dec.contains(",555,111,38,2.92105263157895\n"));
}

#[test]
fn series_reach_their_documented_ceilings() {
    // one full-depth run; the memory peak sits in the 17 -> 18 chain step
    let apl = engine::apl_series(MAX_APL_T).unwrap();
    assert_eq!(apl.len(), 21);
    for t in 0..=5usize {
        let n = engine::node_count(t as u32);
        let pairs = &n * (&n - 1) / 2;
        assert_eq!(apl[t], BigRational::new(big(D_TOTAL[t]), pairs), "t={t}");
    }
    // APL is strictly increasing and still tiny against the node count
    for t in 1..=20usize {
        assert!(apl[t] > apl[t - 1], "APL must grow, t={t}");
    }

    // at the deep end the per-level growth factor has converged to
    // 1 + sqrt(3): ln of the t=19 -> 20 ratio agrees to below 1e-3
    let gap = ratio_to_f64(&apl[20]).ln() - ratio_to_f64(&apl[19]).ln();
    assert!(
        (gap - 1.005052538742381).abs() < 1e-3,
        "APL growth gap at t=20 is {gap}"
    );

    let d = engine::d_series(5).unwrap();
    assert_eq!(d.len(), 6);
    assert_eq!(d[5], big(D_TOTAL[5]));

    assert!(matches!(
        engine::assemble(MAX_ASSEMBLE_T + 1),
        Err(PentaError::Resource { max: 19, .. })
    ));
    assert!(matches!(
        engine::d_series(MAX_APL_T + 1),
        Err(PentaError::Resource { max: 20, .. })
    ));
    assert!(matches!(
        engine::omega_chain(MAX_CHAIN_T + 1),
        Err(PentaError::Resource { max: 18, .. })
    ));
}
