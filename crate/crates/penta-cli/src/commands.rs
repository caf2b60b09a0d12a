//! Subcommand implementations.

use crate::svg;
use crate::{ConventionArg, Format, NegativeControl, ObjectiveArg};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use penta_core::decimal::{decimal_string, ratio_to_f64};
use penta_core::engine::{self, DeltaConvention};
use penta_core::fit::{self, FitBasis, FitReport, Objective};
use penta_core::graph::{self, build, build_with, decompose, BranchDecomposition, Gluing};
use penta_core::oracle;
use penta_core::rad3;
use penta_core::{PentaError, Result};
use std::fs;
use std::path::Path;

/// Printed reference values of the overcount table, verbatim. The t = 6
/// entry carries a spurious trailing digit (the exact value is its first
/// eleven digits) and the t = 10 mantissa is one final-digit ulp low; both
/// are disclosed by the table gate rather than silently patched.
const PUBLISHED_DELTA_EXACT: [&str; 9] = [
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
/// Printed nine-digit mantissas and exponents for t = 9..=11.
const PUBLISHED_DELTA_MANTISSA: [(u64, u32); 3] =
    [(545159641, 15), (372349326, 17), (254319349, 19)];

fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

pub fn generate(t: u32, out: Option<&Path>) -> Result<()> {
    let g = build(t)?;
    let doc = graph::to_json(&g);
    eprintln!(
        "generated G({t}): N = {}, E = {}",
        g.node_count(),
        g.edge_count()
    );
    emit(out, &format!("{doc}\n"))
}

pub fn table(t_max: u32, format: Format, out: Option<&Path>) -> Result<()> {
    let rows = engine::assemble(t_max)?;
    let content = match format {
        Format::Csv => engine::to_csv(&rows, true),
        Format::Json => {
            let mut docs = Vec::with_capacity(rows.len());
            for r in &rows {
                docs.push(RowDoc {
                    t: r.t,
                    n: r.n.to_string(),
                    e: r.e.to_string(),
                    d12: r.d12.to_string(),
                    d13: r.d13.to_string(),
                    s: r.s.to_string(),
                    f: r.f.to_string(),
                    delta: r.delta.to_string(),
                    a12: r.a12.to_string(),
                    d1c: r.d1c.to_string(),
                    lambda13: r.lambda13.to_string(),
                    a_cross: r.a_cross.to_string(),
                    d_total: r.d_total.to_string(),
                    apl_num: r.apl.numer().to_string(),
                    apl_den: r.apl.denom().to_string(),
                    apl_decimal: decimal_string(&r.apl, 15),
                });
            }
            let mut s = serde_json::to_string_pretty(&docs)
                .expect("table document serialization cannot fail");
            s.push('\n');
            s
        }
    };
    emit(out, &content)
}

#[derive(serde::Serialize)]
struct RowDoc {
    t: u32,
    n: String,
    e: String,
    d12: String,
    d13: String,
    s: String,
    f: String,
    delta: String,
    a12: String,
    d1c: String,
    lambda13: String,
    a_cross: String,
    d_total: String,
    apl_num: String,
    apl_den: String,
    apl_decimal: String,
}

// ---------------------------------------------------------------------------
// verify

struct GateRunner {
    failed: Vec<&'static str>,
}

impl GateRunner {
    fn report(&mut self, gate: &'static str, outcome: std::result::Result<String, String>) {
        match outcome {
            Ok(detail) => println!("gate {gate}: ok ({detail})"),
            Err(detail) => {
                println!("gate {gate}: FAIL ({detail})");
                self.failed.push(gate);
            }
        }
    }
}

pub fn verify(
    oracle_max: u32,
    t_max: u32,
    conv_arg: ConventionArg,
    control: Option<NegativeControl>,
) -> Result<()> {
    if oracle_max > 6 {
        return Err(PentaError::Usage(format!(
            "--oracle-max {oracle_max} would run all-pairs BFS past generation 6; use 6 or less"
        )));
    }
    if t_max > engine::MAX_ASSEMBLE_T {
        return Err(PentaError::Resource {
            what: "verification table",
            max: engine::MAX_ASSEMBLE_T,
            got: t_max,
            hint: "the overcount series ends at t = 19",
        });
    }
    let conv = match conv_arg {
        ConventionArg::Auto => DeltaConvention::Auto,
        ConventionArg::Inclusive => DeltaConvention::Inclusive,
        ConventionArg::Exclusive => DeltaConvention::Exclusive,
    };
    let precision = fit::default_precision_from_env()?;
    let gluing = match control {
        Some(NegativeControl::MisalignedGluing) => Gluing::Misaligned,
        _ => Gluing::Aligned,
    };

    println!(
        "convention: gluing = {}",
        match gluing {
            Gluing::Aligned =>
                "aligned (copy k role-3 merges with copy k+1 role-4, lowest id kept)",
            Gluing::Misaligned =>
                "MISALIGNED (negative control: copy k role-3 merges with copy k+1 role-5)",
        }
    );
    println!(
        "convention: delta pair domain = {} (hub values sit at -d12 and cannot contribute; inclusive and exclusive agree identically)",
        conv.canonical()
    );
    println!("convention: junction dedup removes {{0, +-q, +-q}} from a' and {{0, +-q, +-2q}} from b' per level");
    println!(
        "convention: overcount reading = {}",
        match control {
            Some(NegativeControl::FarHubMisread) =>
                "FAR-HUB MISREAD (negative control: fixed d12 shift dropped)",
            _ => "canonical (far-hub routes keep the fixed d12 shift)",
        }
    );
    println!("precision: {precision} decimal digits for sqrt(3)");

    let mut runner = GateRunner { failed: Vec::new() };

    gate_counts(&mut runner, gluing);
    gate_corner_distances(&mut runner, oracle_max, gluing);
    gate_totals(&mut runner, oracle_max, gluing);
    gate_omega(&mut runner, oracle_max, gluing);
    gate_branch_aggregates(&mut runner, oracle_max, gluing);
    gate_delta_table(&mut runner, t_max, conv, control);
    gate_closed_forms(&mut runner);
    gate_fit_floor(&mut runner, precision);
    gate_growth(&mut runner);

    if runner.failed.is_empty() {
        println!("verify: all gates passed");
        Ok(())
    } else {
        Err(PentaError::Gate {
            gate: runner.failed[0],
            detail: format!(
                "{} gate(s) failed: {}",
                runner.failed.len(),
                runner.failed.join(", ")
            ),
        })
    }
}

fn gate_counts(runner: &mut GateRunner, gluing: Gluing) {
    let mut outcome = Ok("N, E, degree histogram for t <= 8".to_string());
    'outer: for t in 0..=8 {
        let g = match build_with(t, gluing, 8) {
            Ok(g) => g,
            Err(e) => {
                outcome = Err(format!("build failed at t = {t}: {e}"));
                break;
            }
        };
        if g.node_count() as u64 != graph::expected_nodes(t)
            || g.edge_count() as u64 != graph::expected_edges(t)
        {
            outcome = Err(format!(
                "t = {t}: N = {}, E = {}, expected N = {}, E = {}",
                g.node_count(),
                g.edge_count(),
                graph::expected_nodes(t),
                graph::expected_edges(t)
            ));
            break;
        }
        let mut deg4 = 0u64;
        for v in 0..g.node_count() {
            match g.degree(v) {
                2 => {}
                4 => deg4 += 1,
                d => {
                    outcome = Err(format!("t = {t}: node {v} has degree {d}"));
                    break 'outer;
                }
            }
        }
        if deg4 != graph::expected_degree4(t) {
            outcome = Err(format!(
                "t = {t}: {deg4} degree-4 nodes, expected {}",
                graph::expected_degree4(t)
            ));
            break;
        }
    }
    runner.report("counts", outcome);
}

fn gate_corner_distances(runner: &mut GateRunner, oracle_max: u32, gluing: Gluing) {
    let d12 = engine::d12_seq(oracle_max);
    let d13 = engine::d13_seq(oracle_max);
    let mut outcome = Ok(format!(
        "BFS corner distances and diameter equal d12/d13 for t <= {oracle_max}"
    ));
    'outer: for t in 0..=oracle_max {
        let g = match build_with(t, gluing, 8) {
            Ok(g) => g,
            Err(e) => {
                outcome = Err(format!("build failed at t = {t}: {e}"));
                break;
            }
        };
        for k in 0..5 {
            let adj = BigInt::from(oracle::corner_distance(&g, k, (k + 1) % 5));
            if adj != d12[t as usize] {
                outcome = Err(format!(
                    "t = {t}: adjacent corner distance {adj} != d12 = {}",
                    d12[t as usize]
                ));
                break 'outer;
            }
            let far = BigInt::from(oracle::corner_distance(&g, k, (k + 2) % 5));
            if far != d13[t as usize] {
                outcome = Err(format!(
                    "t = {t}: non-adjacent corner distance {far} != d13 = {}",
                    d13[t as usize]
                ));
                break 'outer;
            }
        }
        let diam = BigInt::from(oracle::diameter(&g));
        if diam != d13[t as usize] {
            outcome = Err(format!(
                "t = {t}: diameter {diam} != d13 = {}",
                d13[t as usize]
            ));
            break;
        }
    }
    runner.report("corner-distances", outcome);
}

fn gate_totals(runner: &mut GateRunner, oracle_max: u32, gluing: Gluing) {
    let rows = match engine::assemble(oracle_max) {
        Ok(r) => r,
        Err(e) => {
            runner.report("totals", Err(format!("assembly failed: {e}")));
            return;
        }
    };
    let mut outcome = Ok(format!(
        "BFS total distance and APL equal the recurrence for t <= {oracle_max}"
    ));
    for (t, row) in rows.iter().enumerate() {
        let g = match build_with(t as u32, gluing, 8) {
            Ok(g) => g,
            Err(e) => {
                outcome = Err(format!("build failed at t = {t}: {e}"));
                break;
            }
        };
        let d = oracle::total_distance(&g);
        if d != row.d_total {
            outcome = Err(format!(
                "t = {t}: BFS D = {d}, recurrence D = {}",
                row.d_total
            ));
            break;
        }
        if oracle::average_path_length(&g) != row.apl {
            outcome = Err(format!("t = {t}: APL mismatch"));
            break;
        }
    }
    runner.report("totals", outcome);
}

fn gate_omega(runner: &mut GateRunner, oracle_max: u32, gluing: Gluing) {
    let top = (oracle_max + 1).min(5);
    let mut outcome = Ok(format!(
        "histogram chain equals BFS difference marginals for t <= {top}"
    ));
    for t in 0..=top {
        let w = match engine::omega_chain(t) {
            Ok(w) => w,
            Err(e) => {
                outcome = Err(format!("chain failed at t = {t}: {e}"));
                break;
            }
        };
        let g = match build_with(t, gluing, 8) {
            Ok(g) => g,
            Err(e) => {
                outcome = Err(format!("build failed at t = {t}: {e}"));
                break;
            }
        };
        let joint = oracle::omega_direct(&g);
        // compare through the raw count view so an asymmetric measurement
        // (possible under the misaligned control) fails instead of panicking
        if joint.a_counts() != expand(&w.a) || joint.b_counts() != expand(&w.b) {
            outcome = Err(format!("t = {t}: chain marginals disagree with BFS"));
            break;
        }
    }
    runner.report("omega-marginals", outcome);
}

fn expand(h: &penta_core::engine::SymHist) -> std::collections::BTreeMap<i64, u64> {
    let mut out = std::collections::BTreeMap::new();
    for v in -h.range()..=h.range() {
        let c = h.count(v);
        if c > 0 {
            out.insert(v, c);
        }
    }
    out
}

fn gate_branch_aggregates(runner: &mut GateRunner, oracle_max: u32, gluing: Gluing) {
    let top = oracle_max.saturating_sub(1).min(3);
    let rows = match engine::assemble(top) {
        Ok(r) => r,
        Err(e) => {
            runner.report("branch-aggregates", Err(format!("assembly failed: {e}")));
            return;
        }
    };
    let mut outcome = Ok(format!(
        "decomposition plus a12, lambda13, d1c and the cross/within split equal BFS pair sums for t <= {top}"
    ));
    'outer: for (t, row) in rows.iter().enumerate() {
        let g = match build_with(t as u32 + 1, gluing, 8) {
            Ok(g) => g,
            Err(e) => {
                outcome = Err(format!("build failed at t = {}: {e}", t + 1));
                break;
            }
        };
        let dec = match decompose(&g) {
            Ok(d) => d,
            Err(e) => {
                outcome = Err(format!("decompose rejected G({}): {e}", t + 1));
                break;
            }
        };
        let hub = dec.junctions[0];
        let side = |branch: usize, drop: u32| -> Vec<u32> {
            dec.branches[branch]
                .iter()
                .copied()
                .filter(|&v| v != drop)
                .collect()
        };
        let d1c_bfs = {
            let d = oracle::bfs(&g, hub);
            let far = BranchDecomposition::far_branch(0);
            BigInt::from(
                dec.branches[far]
                    .iter()
                    .map(|&v| d[v as usize] as u64)
                    .sum::<u64>(),
            )
        };
        let checks: [(&str, BigInt, &BigInt); 3] = [
            (
                "a12",
                BigInt::from(oracle::pair_sum(&g, &side(0, hub), &side(1, hub))),
                &row.a12,
            ),
            (
                "lambda13",
                BigInt::from(oracle::pair_sum(
                    &g,
                    &side(0, dec.junctions[0]),
                    &side(2, dec.junctions[1]),
                )),
                &row.lambda13,
            ),
            ("d1c", d1c_bfs, &row.d1c),
        ];
        for (name, got, want) in checks {
            if got != *want {
                outcome = Err(format!("t = {t}: {name} BFS = {got}, recurrence = {want}"));
                break 'outer;
            }
        }
        let (within, cross) = oracle::branch_split_totals(&g, &dec);
        if within != 5 * &row.d_total || cross != row.a_cross {
            outcome = Err(format!("t = {t}: within/cross split disagrees with BFS"));
            break;
        }
    }
    runner.report("branch-aggregates", outcome);
}

/// Round a positive integer to a nine-digit mantissa, half away from zero.
/// Returns (mantissa, exponent) with value ~ mantissa * 10^(exponent - 8).
fn mantissa9(x: &BigInt) -> (u64, u32) {
    let digits = x.to_string();
    let exp = digits.len() as u32 - 1;
    let mut mant: u64 = digits[..9.min(digits.len())].parse().expect("digit prefix");
    if digits.len() > 9 && digits.as_bytes()[9] >= b'5' {
        mant += 1;
        if mant == 1_000_000_000 {
            return (100_000_000, exp + 1);
        }
    }
    (mant, exp)
}

fn gate_delta_table(
    runner: &mut GateRunner,
    t_max: u32,
    conv: DeltaConvention,
    control: Option<NegativeControl>,
) {
    let deltas = match engine::delta_series(t_max, conv) {
        Ok(d) => d,
        Err(e) => {
            runner.report("delta-table", Err(format!("series failed: {e}")));
            return;
        }
    };
    let deltas: Vec<BigInt> = if matches!(control, Some(NegativeControl::FarHubMisread)) {
        // recompute every materialized level under the broken reading
        let mut broken = Vec::with_capacity(deltas.len());
        let mut w = engine::omega_init();
        loop {
            broken.push(engine::delta_far_hub_misread(&w.a));
            if w.t >= t_max.min(engine::MAX_CHAIN_T) {
                break;
            }
            w = match engine::omega_step(&w) {
                Ok(next) => next,
                Err(e) => {
                    runner.report("delta-table", Err(format!("chain failed: {e}")));
                    return;
                }
            };
        }
        broken
    } else {
        deltas
    };

    let mut notes: Vec<String> = Vec::new();
    let mut outcome: std::result::Result<(), String> = Ok(());
    for (t, printed) in PUBLISHED_DELTA_EXACT.iter().enumerate() {
        if t as u32 > t_max || t >= deltas.len() {
            break;
        }
        let printed: BigInt = printed.parse().expect("published table literal");
        if deltas[t] == printed {
            continue;
        }
        // the single disclosed misprint: the printed t = 6 value is the
        // exact value with one digit appended
        if t == 6 && &deltas[t] * 10 + 8 == printed {
            notes.push(format!(
                "t=6 printed value {printed} carries a spurious trailing 8 (exact {})",
                deltas[t]
            ));
            continue;
        }
        outcome = Err(format!(
            "t = {t}: computed {} but the published table prints {printed}",
            deltas[t]
        ));
        break;
    }
    if outcome.is_ok() {
        for (i, (printed_mant, printed_exp)) in PUBLISHED_DELTA_MANTISSA.iter().enumerate() {
            let t = 9 + i;
            if t as u32 > t_max || t >= deltas.len() {
                break;
            }
            let (mant, exp) = mantissa9(&deltas[t]);
            // the printed t = 10 mantissa ends one ulp low; anything beyond
            // one ulp is a real disagreement
            let ok = exp == *printed_exp && mant.abs_diff(*printed_mant) <= 1;
            if !ok {
                outcome = Err(format!(
                    "t = {t}: computed mantissa {mant}e{exp}, published {printed_mant}e{printed_exp}"
                ));
                break;
            }
            if mant != *printed_mant {
                notes.push(format!(
                    "t={t} printed mantissa {printed_mant} is one ulp below the rounded exact value {mant}"
                ));
            }
        }
    }
    let top = (t_max as usize).min(deltas.len().saturating_sub(1));
    runner.report(
        "delta-table",
        outcome.map(|()| {
            let mut detail = format!(
                "published overcount table reproduced for t <= {}",
                top.min(11)
            );
            if !notes.is_empty() {
                detail.push_str("; ");
                detail.push_str(&notes.join("; "));
            }
            detail
        }),
    );
}

fn gate_closed_forms(runner: &mut GateRunner) {
    let d12 = engine::d12_seq(30);
    let d13 = engine::d13_seq(30);
    let s = engine::s_seq(30);
    let f = engine::f_seq(30);
    let mut outcome = Ok("conjugate-pair closed forms equal the recurrences for t <= 30".into());
    for t in 0..=30u32 {
        let checks = [
            ("d12", rad3::d12_closed(t), &d12[t as usize]),
            ("d13", rad3::d13_closed(t), &d13[t as usize]),
            ("S", rad3::s_closed(t), &s[t as usize]),
            ("F", rad3::f_closed(t), &f[t as usize]),
        ];
        let mut broke = false;
        for (name, got, want) in checks {
            match got {
                Ok(v) if v == *want => {}
                Ok(v) => {
                    outcome = Err(format!("t = {t}: {name} closed form {v} != {want}"));
                    broke = true;
                    break;
                }
                Err(e) => {
                    outcome = Err(format!("t = {t}: {name} closed form not rational: {e}"));
                    broke = true;
                    break;
                }
            }
        }
        if broke {
            break;
        }
    }
    runner.report("closed-forms", outcome);
}

fn gate_fit_floor(runner: &mut GateRunner, precision: u32) {
    let outcome = (|| -> std::result::Result<String, String> {
        let table: Vec<(u32, BigInt)> = engine::delta_series(11, DeltaConvention::Auto)
            .map_err(|e| e.to_string())?
            .into_iter()
            .enumerate()
            .map(|(t, d)| (t as u32, d))
            .collect();
        let eight = fit::fit(
            &table[..8],
            FitBasis::eight_term(),
            Objective::Relative,
            precision,
        )
        .map_err(|e| e.to_string())?;
        let val8 = fit::validate(&eight, &table);
        for row in &val8.rows {
            if row.in_window && !row.relative_error.is_zero() {
                return Err(format!("t = {} trained but not reproduced", row.t));
            }
        }
        let max8 = ratio_to_f64(&val8.max_relative_error);
        if !(2.6e-7..2.7e-7).contains(&max8) {
            return Err(format!(
                "eight-term extrapolation maximum {max8:.4e} left its measured band [2.6e-7, 2.7e-7)"
            ));
        }
        Ok(format!(
            "eight-term window 0..7 interpolates exactly and extrapolates to {max8:.4e} at t = {}",
            val8.max_at
        ))
    })();
    runner.report("fit-floor", outcome);
}

fn gate_growth(runner: &mut GateRunner) {
    let outcome = (|| -> std::result::Result<String, String> {
        let top = 15u32;
        let apl = engine::apl_series(top).map_err(|e| e.to_string())?;
        let d13 = engine::d13_seq(top);
        let reference = rad3::exponent();

        let window: Vec<u32> = (10..=top).collect();
        let xs: Vec<f64> = window
            .iter()
            .map(|&t| ratio_to_f64(&BigRational::from(engine::node_count(t))).ln())
            .collect();
        let ya: Vec<f64> = window
            .iter()
            .map(|&t| ratio_to_f64(&apl[t as usize]).ln())
            .collect();
        let yd: Vec<f64> = window
            .iter()
            .map(|&t| ratio_to_f64(&BigRational::from(d13[t as usize].clone())).ln())
            .collect();
        let slope_apl = crate::svg::ols_slope(&xs, &ya);
        let slope_diam = crate::svg::ols_slope(&xs, &yd);
        if (slope_apl - reference).abs() >= 1e-2 {
            return Err(format!(
                "APL log-log slope {slope_apl:.6} vs exponent {reference:.6}"
            ));
        }
        if (slope_diam - reference).abs() >= 1e-3 {
            return Err(format!(
                "diameter log-log slope {slope_diam:.6} vs exponent {reference:.6}"
            ));
        }

        let gap = ratio_to_f64(&apl[top as usize]).ln() - ratio_to_f64(&apl[top as usize - 1]).ln();
        let ln_l1 = ratio_to_f64(&rad3::ln_lambda1(40));
        if (gap - ln_l1).abs() >= 1e-3 {
            return Err(format!(
                "APL growth gap {gap:.6} at t = {top} vs ln(1+sqrt3) = {ln_l1:.6}"
            ));
        }
        Ok(format!(
            "slopes over t = 10..{top}: APL {slope_apl:.6}, diameter {slope_diam:.6}, exponent {reference:.6}; per-level APL gap {gap:.6}"
        ))
    })();
    runner.report("growth", outcome);
}

// ---------------------------------------------------------------------------
// fit

fn parse_window(s: &str) -> Result<(u32, u32)> {
    let parts: Vec<&str> = s.split("..").collect();
    let err = || {
        PentaError::Usage(format!(
            "--fit-window must look like LO..HI (inclusive), got {s:?}"
        ))
    };
    if parts.len() != 2 {
        return Err(err());
    }
    let lo: u32 = parts[0].trim().parse().map_err(|_| err())?;
    let hi: u32 = parts[1].trim().parse().map_err(|_| err())?;
    if lo > hi {
        return Err(PentaError::Usage(format!(
            "--fit-window {s:?} is empty (LO > HI)"
        )));
    }
    Ok((lo, hi))
}

pub fn fit_cmd(
    window: &str,
    with_a7: bool,
    validate_max: u32,
    objective: ObjectiveArg,
    out: Option<&Path>,
) -> Result<()> {
    let (lo, hi) = parse_window(window)?;
    let top = hi.max(validate_max);
    if top > engine::MAX_ASSEMBLE_T {
        return Err(PentaError::Resource {
            what: "overcount series for fitting",
            max: engine::MAX_ASSEMBLE_T,
            got: top,
            hint: "the overcount series ends at t = 19",
        });
    }
    let precision = fit::default_precision_from_env()?;
    let objective = match objective {
        ObjectiveArg::Relative => Objective::Relative,
        ObjectiveArg::Absolute => Objective::Absolute,
    };
    let series = engine::delta_series(top, DeltaConvention::Auto)?;
    let data: Vec<(u32, BigInt)> = (lo..=hi).map(|t| (t, series[t as usize].clone())).collect();
    let basis = if with_a7 {
        FitBasis::nine_term()
    } else {
        FitBasis::eight_term()
    };
    let res = fit::fit(&data, basis, objective, precision)?;
    let table: Vec<(u32, BigInt)> = (0..=validate_max)
        .map(|t| (t, series[t as usize].clone()))
        .collect();
    let val = fit::validate(&res, &table);
    let report = FitReport::new(&res, &val);
    let mut doc =
        serde_json::to_string_pretty(&report).expect("fit report serialization cannot fail");
    doc.push('\n');
    emit(out, &doc)
}

pub fn plot(t_max: u32, out: &Path) -> Result<()> {
    let doc = svg_document(t_max)?;
    fs::write(out, doc)?;
    eprintln!("wrote {}", out.display());
    Ok(())
}

fn svg_document(t_max: u32) -> Result<String> {
    if t_max < 1 {
        return Err(PentaError::Usage(
            "--t-max must be at least 1 to plot anything".into(),
        ));
    }
    let apl = engine::apl_series(t_max)?;
    let d13 = engine::d13_seq(t_max);
    let n: Vec<f64> = (0..=t_max)
        .map(|t| ratio_to_f64(&BigRational::from(engine::node_count(t))))
        .collect();
    let apl_f: Vec<f64> = apl.iter().map(ratio_to_f64).collect();
    let d13_f: Vec<f64> = d13
        .iter()
        .map(|v| ratio_to_f64(&BigRational::from(v.clone())))
        .collect();
    Ok(svg::render(t_max, &n, &apl_f, &d13_f))
}
