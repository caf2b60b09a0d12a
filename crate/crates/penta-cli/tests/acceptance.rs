//! The repository's acceptance run: nine numbered criteria, one verdict
//! line each, covering construction counts, the brute-force cross-checks,
//! the published-table reproduction, closed forms, the fit floor, the
//! scaling law, and the structural property suite.
//!
//! Criterion 7 is recorded honestly: the eight-term model fitted on rows
//! 0..=7 cannot reach a relative error below 1e-7 on rows 8..=11. The
//! measured floor is ~2.65e-7, reproducible and precision-independent, so
//! the criterion fails by a factor of ~2.6 and this test target fails with
//! it. The surrounding lines show the floor is a property of the model
//! class, not of this implementation: the same solver reproduces the
//! reference coefficients to ~1e-7 and reaches 4.7e-8 once the dropped
//! 5^(2t) term is restored.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use penta_core::decimal::ratio_to_f64;
use penta_core::engine::{self, DeltaConvention};
use penta_core::fit::{self, FitBasis, Objective};
use penta_core::graph::{self, build, decompose, BranchDecomposition};
use penta_core::oracle;
use penta_core::rad3;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

const REF_COEFFS: [f64; 8] = [
    0.168524328052979,
    -0.0396624946437528,
    0.935344610079585,
    0.951717329999713,
    -4.00947432595951,
    -1.49385494978489,
    2.71082171547275,
    4.7765837996533,
];

fn criterion_1_counts() -> Verdict {
    for t in 0..=8 {
        let g = build(t).map_err(|e| format!("build({t}): {e}"))?;
        if g.node_count() as u64 != graph::expected_nodes(t) {
            return Err(format!("t = {t}: N = {}", g.node_count()));
        }
        if g.edge_count() as u64 != graph::expected_edges(t) {
            return Err(format!("t = {t}: E = {}", g.edge_count()));
        }
    }
    Ok("N = (3*5^(t+1)+5)/4 and E = 5^(t+1) hold exactly for t = 0..8".into())
}

fn criterion_2_diameter() -> Verdict {
    let expected: [u32; 6] = [2, 5, 14, 38, 104, 284];
    let d13 = engine::d13_seq(5);
    for t in 0..=5u32 {
        let g = build(t).unwrap();
        let diam = oracle::diameter(&g);
        if diam != expected[t as usize] {
            return Err(format!("t = {t}: BFS diameter {diam}"));
        }
        if BigInt::from(diam) != d13[t as usize] {
            return Err(format!("t = {t}: recurrence d13 = {}", d13[t as usize]));
        }
    }
    Ok("BFS diameter equals d13 = (2, 5, 14, 38, 104, 284) for t = 0..5".into())
}

fn criterion_3_total_distance() -> Verdict {
    let rows = engine::assemble(4).unwrap();
    for (t, row) in rows.iter().enumerate() {
        let g = build(t as u32).unwrap();
        let d = oracle::total_distance(&g);
        if d != row.d_total {
            return Err(format!(
                "t = {t}: BFS D = {d}, recurrence D = {}",
                row.d_total
            ));
        }
    }
    if rows[0].d_total != BigInt::from(15) {
        return Err(format!("D_0 = {}", rows[0].d_total));
    }
    Ok(format!(
        "oracle equals recurrence for t = 0..4, D_0 = 15; both routes give D_1 = {} \
         (the occasionally quoted 545 propagates the cross-term misprint and matches neither route)",
        rows[1].d_total
    ))
}

/// Round a positive integer to a nine-digit mantissa, half away from zero.
fn mantissa9(x: &BigInt) -> (u64, u32) {
    let digits = x.to_string();
    let exp = digits.len() as u32 - 1;
    let mut mant: u64 = digits[..9.min(digits.len())].parse().unwrap();
    if digits.len() > 9 && digits.as_bytes()[9] >= b'5' {
        mant += 1;
        if mant == 1_000_000_000 {
            return (100_000_000, exp + 1);
        }
    }
    (mant, exp)
}

fn criterion_4_delta_table() -> Verdict {
    let published_exact: [&str; 9] = [
        "4",
        "30",
        "1002",
        "56540",
        "3697330",
        "251032868",
        "171140501308",
        "1168705606692",
        "79817184975658",
    ];
    let published_mantissa: [(u64, u32); 3] = [(545159641, 15), (372349326, 17), (254319349, 19)];
    let deltas = engine::delta_series(11, DeltaConvention::Auto).unwrap();
    let mut notes = Vec::new();
    for (t, printed) in published_exact.iter().enumerate() {
        let printed: BigInt = printed.parse().unwrap();
        if deltas[t] == printed {
            continue;
        }
        if t == 6 && &deltas[t] * 10 + 8 == printed {
            notes.push("t=6 printed with a spurious trailing 8".to_string());
            continue;
        }
        return Err(format!(
            "t = {t}: computed {}, printed {printed}",
            deltas[t]
        ));
    }
    for (i, (pm, pe)) in published_mantissa.iter().enumerate() {
        let t = 9 + i;
        let (mant, exp) = mantissa9(&deltas[t]);
        if exp != *pe || mant.abs_diff(*pm) > 1 {
            return Err(format!("t = {t}: computed {mant}e{exp}, printed {pm}e{pe}"));
        }
        if mant != *pm {
            notes.push(format!("t={t} printed mantissa one ulp low"));
        }
    }
    Ok(format!(
        "chain reproduces the published values, exact for t = 0..8 and to printed digits for t = 9..11 ({})",
        notes.join("; ")
    ))
}

fn criterion_5_lambda13() -> Verdict {
    let rows = engine::assemble(3).unwrap();
    for (t, row) in rows.iter().enumerate() {
        let g = build(t as u32 + 1).unwrap();
        let dec = decompose(&g).unwrap();
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
        let bfs = BigInt::from(oracle::pair_sum(&g, &left, &right));
        if bfs != row.lambda13 {
            return Err(format!(
                "t = {t}: BFS cross sum {bfs}, assembled lambda13 = {}",
                row.lambda13
            ));
        }
    }
    Ok(
        "assembled lambda13 equals the BFS cross sum over non-adjacent branches for t = 0..3, \
        pinning the index and hub-exclusion conventions"
            .into(),
    )
}

fn criterion_6_closed_forms() -> Verdict {
    let d12 = engine::d12_seq(30);
    let d13 = engine::d13_seq(30);
    let s = engine::s_seq(30);
    let f = engine::f_seq(30);
    for t in 0..=30u32 {
        let checks = [
            ("d12", rad3::d12_closed(t), &d12[t as usize]),
            ("d13", rad3::d13_closed(t), &d13[t as usize]),
            ("S", rad3::s_closed(t), &s[t as usize]),
            ("F", rad3::f_closed(t), &f[t as usize]),
        ];
        for (name, got, want) in checks {
            match got {
                Ok(v) if v == *want => {}
                Ok(v) => return Err(format!("t = {t}: {name} = {v}, expected {want}")),
                Err(e) => return Err(format!("t = {t}: {name} irrational remainder: {e}")),
            }
        }
    }
    Ok("conjugate-pair closed forms have zero sqrt(3) component and equal the recurrences for t = 0..30".into())
}

fn criterion_7_fit() -> Verdict {
    let table: Vec<(u32, BigInt)> = engine::delta_series(11, DeltaConvention::Auto)
        .unwrap()
        .into_iter()
        .enumerate()
        .map(|(t, d)| (t as u32, d))
        .collect();
    let res = fit::fit(&table[..8], FitBasis::eight_term(), Objective::Relative, 60).unwrap();
    let val = fit::validate(&res, &table);

    println!("  coefficients (this fit vs reference):");
    let mut max_coeff_diff = 0f64;
    for (i, name) in res.basis.names().iter().enumerate() {
        let ours = ratio_to_f64(&res.coefficients[i]);
        let diff = (ours - REF_COEFFS[i]).abs();
        max_coeff_diff = max_coeff_diff.max(diff);
        println!(
            "    {name:<22} {ours:>20.15}  ref {:>20.15}  diff {diff:.2e}",
            REF_COEFFS[i]
        );
    }
    println!(
        "  (max coefficient difference {max_coeff_diff:.2e}; reported for comparison, not gated)"
    );
    println!("  relative errors against rows 0..11:");
    for row in &val.rows {
        let e = ratio_to_f64(&row.relative_error);
        let mark = if row.in_window { "train" } else { "test " };
        println!("    t = {:>2} [{mark}]  {e:.4e}", row.t);
    }

    let max = ratio_to_f64(&val.max_relative_error);
    if !val
        .rows
        .iter()
        .filter(|r| r.in_window)
        .all(|r| r.relative_error.is_zero())
    {
        return Err("training rows not interpolated exactly".into());
    }

    // context: restoring the 5^(2t) term clears the 1e-7 bar
    let nine = fit::fit(&table, FitBasis::nine_term(), Objective::Relative, 60).unwrap();
    let nine_max = ratio_to_f64(&fit::validate(&nine, &table).max_relative_error);
    println!("  nine-term comparison fit on rows 0..11 reaches max relative error {nine_max:.4e}");

    if max < 1e-7 {
        Ok(format!("max relative error {max:.4e} < 1e-7"))
    } else {
        Err(format!(
            "max relative error over rows 0..11 is {max:.4e} at t = {} (bar: 1e-7). \
             The eight-point window determines the eight coefficients uniquely (residual 0), \
             so no solver can do better: the published sub-1e-7 claim is unattainable for \
             this model class; the nine-term variant reaches {nine_max:.4e}",
            val.max_at
        ))
    }
}

fn criterion_8_scaling() -> Verdict {
    let apl = engine::apl_series(20).unwrap();
    let d13 = engine::d13_seq(20);
    let reference = rad3::exponent();

    let ols = |ys: &[f64], xs: &[f64]| -> f64 {
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        sxy / sxx
    };
    let window: Vec<usize> = (10..=20).collect();
    let xs: Vec<f64> = window
        .iter()
        .map(|&t| ratio_to_f64(&BigRational::from(engine::node_count(t as u32))).ln())
        .collect();
    let ya: Vec<f64> = window.iter().map(|&t| ratio_to_f64(&apl[t]).ln()).collect();
    let yd: Vec<f64> = window
        .iter()
        .map(|&t| ratio_to_f64(&BigRational::from(d13[t].clone())).ln())
        .collect();
    let slope_apl = ols(&ya, &xs);
    let slope_diam = ols(&yd, &xs);

    if (slope_apl - reference).abs() >= 1e-2 {
        return Err(format!("APL slope {slope_apl:.6} vs {reference:.6}"));
    }
    if (slope_diam - reference).abs() >= 1e-3 {
        return Err(format!("diameter slope {slope_diam:.6} vs {reference:.6}"));
    }
    Ok(format!(
        "log-log slopes over t = 10..20: APL {slope_apl:.6} (within 1e-2), diameter {slope_diam:.6} (within 1e-3) of ln(1+sqrt3)/ln5 = {reference:.6}"
    ))
}

fn criterion_9_properties() -> Verdict {
    // structural invariants of the histogram chain
    for t in 0..=6u32 {
        let w = engine::omega_chain(t).unwrap();
        let n = engine::node_count(t);
        if BigInt::from(w.a.mass()) != n || BigInt::from(w.b.mass()) != n {
            return Err(format!("t = {t}: marginal mass != N"));
        }
        let d12 = engine::d12_seq(t);
        let d13 = engine::d13_seq(t);
        if BigInt::from(w.a.range()) != d12[t as usize]
            || BigInt::from(w.b.range()) != d13[t as usize]
        {
            return Err(format!("t = {t}: marginal range off"));
        }
        if !w.a.is_dense() || !w.b.is_dense() {
            return Err(format!("t = {t}: support has holes"));
        }
        for v in 0..=w.a.range() {
            if w.a.count(v) != w.a.count(-v) {
                return Err(format!("t = {t}: asymmetric at {v}"));
            }
        }
    }
    // degree histogram of the built family
    for t in 0..=5u32 {
        let g = build(t).unwrap();
        let mut deg4 = 0u64;
        for v in 0..g.node_count() {
            match g.degree(v) {
                2 => {}
                4 => deg4 += 1,
                d => return Err(format!("t = {t}: degree {d} node")),
            }
        }
        if deg4 != graph::expected_degree4(t) {
            return Err(format!("t = {t}: {deg4} degree-4 nodes"));
        }
    }
    // serialization round trip, byte stable
    for t in 0..=3u32 {
        let g = build(t).unwrap();
        let doc = graph::to_json(&g);
        let back = graph::from_json(&doc).map_err(|e| format!("t = {t}: {e}"))?;
        if graph::to_json(&back) != doc {
            return Err(format!("t = {t}: round trip not byte stable"));
        }
    }
    // branch arithmetic consistency
    let g = build(3).unwrap();
    let dec = decompose(&g).unwrap();
    for k in 0..5 {
        let (a, b) = BranchDecomposition::adjacent_pair(k);
        if dec.corner_map[a][2] != dec.junctions[k] || dec.corner_map[b][3] != dec.junctions[k] {
            return Err(format!("junction {k} role mismatch"));
        }
    }
    Ok(
        "mass, symmetry, range, density, degree histogram, serialization round trip and \
        junction roles all hold (the randomized suite lives with the library tests)"
            .into(),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        ("construction counts", criterion_1_counts),
        ("diameter vs oracle", criterion_2_diameter),
        ("total distance vs oracle", criterion_3_total_distance),
        ("published overcount table", criterion_4_delta_table),
        ("cross-sum exactness", criterion_5_lambda13),
        ("closed forms", criterion_6_closed_forms),
        ("eight-term fit floor", criterion_7_fit),
        ("scaling law", criterion_8_scaling),
        ("structural properties", criterion_9_properties),
    ];
    let mut failures = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} ({name}): PASS - {detail}", i + 1),
            Err(detail) => {
                println!("criterion {} ({name}): FAIL - {detail}", i + 1);
                failures.push((i + 1, *name, detail));
            }
        }
    }
    if !failures.is_empty() {
        let list: Vec<String> = failures
            .iter()
            .map(|(i, name, _)| format!("{i} ({name})"))
            .collect();
        panic!(
            "{} of 9 acceptance criteria failed: {}. Details: {}",
            failures.len(),
            list.join(", "),
            failures
                .iter()
                .map(|(i, _, d)| format!("[{i}] {d}"))
                .collect::<Vec<_>>()
                .join(" | ")
        );
    }
}
