//! Exact integer recurrences: corner distances, corner row sums, the
//! difference-value histograms, the overcount correction `delta`, and the
//! assembled total pair distance.
//!
//! Everything in this module is integer-exact. Histogram counts are `u64`
//! (node counts stay below 2^63 for every reachable level), aggregate
//! scans run in `i128`, and sequence values are `BigInt`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::decimal;
use crate::error::{PentaError, Result};

/// Largest level whose histograms are materialized. Level 18 holds
/// `d12(18) + d13(18) + 2` counts, about 1.9 GB of `u64`; stepping to a
/// materialized level 19 would need another 5 GB.
pub const MAX_CHAIN_T: u32 = 18;

/// Largest level with a full metrics row. `delta(19)` is computed by a
/// streaming scan over a virtual level-19 histogram built from the
/// materialized level-18 pair, so no level-19 array is ever allocated.
pub const MAX_ASSEMBLE_T: u32 = 19;

/// Largest level for `D` and APL. `D(20)` needs `a_cross(19)` but not
/// `delta(20)`, so it reaches one level past the last full row.
pub const MAX_APL_T: u32 = 20;

// ---------------------------------------------------------------------------
// integer sequences

/// Corner distances `d12(t)` (adjacent outer corners) for `t = 0..=t_max`.
///
/// Generated through the coupled identities `d12(t) = 2 d13(t-1)` and
/// `d13(t) = 2 d13(t-1) + d12(t-1)`; both sequences also satisfy
/// `y(t) = 2 y(t-1) + 2 y(t-2)`.
pub fn d12_seq(t_max: u32) -> Vec<BigInt> {
    coupled_seq(t_max).0
}

/// Corner distances `d13(t)` (next-nearest outer corners); this is also the
/// graph diameter of `G(t)`.
pub fn d13_seq(t_max: u32) -> Vec<BigInt> {
    coupled_seq(t_max).1
}

fn coupled_seq(t_max: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut d12 = vec![BigInt::from(1)];
    let mut d13 = vec![BigInt::from(2)];
    for t in 1..=t_max as usize {
        d12.push(2 * &d13[t - 1]);
        d13.push(2 * &d13[t - 1] + &d12[t - 1]);
    }
    (d12, d13)
}

/// `N(t) = (3*5^(t+1) + 5) / 4`.
pub fn node_count(t: u32) -> BigInt {
    (3 * BigInt::from(5).pow(t + 1) + 5) / 4
}

/// `E(t) = 5^(t+1)`.
pub fn edge_count(t: u32) -> BigInt {
    BigInt::from(5).pow(t + 1)
}

fn node_count_u64(t: u32) -> u64 {
    assert!(t <= 26, "node count exceeds u64 range");
    (3 * 5u64.pow(t + 1) + 5) / 4
}

/// Corner row sums `S(t)`: sum of distances from one outer corner to every
/// node, `S(0) = 6`.
pub fn s_seq(t_max: u32) -> Vec<BigInt> {
    let (d12, d13) = coupled_seq(t_max);
    let mut s = vec![BigInt::from(6)];
    for t in 1..=t_max as usize {
        let n = node_count(t as u32 - 1);
        let next = 5 * &s[t - 1] + (2 * &n - 4) * &d12[t - 1] + (4 * &n - 5) * &d13[t - 1];
        s.push(next);
    }
    s
}

/// Nearest-junction row sums `F(t)`: sum over all nodes of the distance to
/// the nearer of the two junction corners (roles 3 and 4), `F(0) = 4`.
/// Equivalently, the remainder of the junction-to-facing-branch row sum
/// after the two fixed crossings: that row sum equals `2 N d12 + F`.
pub fn f_seq(t_max: u32) -> Vec<BigInt> {
    let (d12, d13) = coupled_seq(t_max);
    let s = s_seq(t_max);
    let mut f = vec![BigInt::from(4)];
    for t in 1..=t_max as usize {
        let n = node_count(t as u32 - 1);
        let next = 4 * &s[t - 1] + (3 * &n - 5) * &d13[t - 1] + (&n - 2) * &d12[t - 1] + &f[t - 1];
        f.push(next);
    }
    f
}

// ---------------------------------------------------------------------------
// difference-value histograms

/// A negation-symmetric integer histogram over `-range ..= range`.
///
/// `counts[v]` for `v >= 1` is the multiplicity of `+v` (equal to that of
/// `-v`); `counts[0]` is the multiplicity of zero. Both marginals tracked by
/// the engine are symmetric because the construction admits a reflection
/// swapping the two reference corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymHist {
    counts: Vec<u64>,
}

impl SymHist {
    pub fn from_half_counts(counts: Vec<u64>) -> Self {
        assert!(!counts.is_empty());
        SymHist { counts }
    }

    /// Largest absolute value carried (the histogram spans `-range..=range`).
    pub fn range(&self) -> i64 {
        self.counts.len() as i64 - 1
    }

    /// Multiplicity of the signed value `v`; zero outside the range.
    pub fn count(&self, v: i64) -> u64 {
        let a = v.unsigned_abs() as usize;
        if a < self.counts.len() {
            self.counts[a]
        } else {
            0
        }
    }

    pub fn half_counts(&self) -> &[u64] {
        &self.counts
    }

    /// Total multiplicity over the full signed support.
    pub fn mass(&self) -> u128 {
        let tail: u128 = self.counts[1..].iter().map(|&c| c as u128).sum();
        self.counts[0] as u128 + 2 * tail
    }

    /// The support of every engine histogram is a full integer interval.
    pub fn is_dense(&self) -> bool {
        self.counts.iter().all(|&c| c > 0)
    }
}

/// The engine's distance-difference state at level `t`.
///
/// Over the nodes of `G(t)`, with `c3, c4, c5` the role-3/4/5 outer
/// corners: `a` is the histogram of `d(i,c3) - d(i,c4)` and `b` the
/// histogram of `d(i,c3) - d(i,c5)`. The per-node joint values are not
/// tracked: every ingredient of the level step and of `delta` is a
/// function of these two marginals (the role-4/role-5 reflection also
/// makes the `d(i,c4) - d(i,c5)` histogram equal to `b`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaMultiset {
    pub t: u32,
    pub a: SymHist,
    pub b: SymHist,
}

/// Level 0: measured directly on the 5-cycle.
pub fn omega_init() -> OmegaMultiset {
    OmegaMultiset {
        t: 0,
        a: SymHist::from_half_counts(vec![1, 2]),
        b: SymHist::from_half_counts(vec![1, 1, 1]),
    }
}

/// Advance the histograms one level.
///
/// Writing `q = d12(t)`, `Q = d13(t)`, `N = N(t)`, the five branch copies
/// contribute per-branch affine images of the level-`t` values; collapsing
/// them to marginals gives
///
/// ```text
/// a' = a + N*(delta at +-q) + (b shifted down by Q) + (b shifted up by Q)
/// b' = (b shifted by +-(q+Q)) + (a shifted by +-q) + a
/// ```
///
/// minus one copy of each junction's values. The five junctions are each
/// produced twice (once by either adjacent branch, and the two
/// contributions agree); the removed value multisets are `{-q,-q,0,q,q}`
/// for `a'` and `{-2q,-q,0,q,2q}` for `b'`. A dedup underflow therefore
/// means the branch maps disagreed, and is reported as an internal error.
pub fn omega_step(w: &OmegaMultiset) -> Result<OmegaMultiset> {
    let q = w.a.range() as usize;
    let big_q = w.b.range() as usize;
    let n = node_count_u64(w.t);
    let t_next = w.t + 1;

    // a': range 2Q = d12(t+1)
    let mut a_next = vec![0u64; 2 * big_q + 1];
    for (x, slot) in a_next.iter_mut().enumerate() {
        let mut c = w.a.count(x as i64);
        c += w.b.count(x as i64 - big_q as i64);
        if x == 0 {
            c += w.b.count(big_q as i64); // the up-shift also lands on zero
        }
        *slot = c;
    }
    a_next[q] += n;
    dedup(&mut a_next, &[(q, 2), (0, 1)], "a", t_next)?;

    // b': range q + 2Q = d13(t+1)
    let shift = (q + big_q) as i64;
    let mut b_next = vec![0u64; q + 2 * big_q + 1];
    for (x, slot) in b_next.iter_mut().enumerate() {
        let mut c = w.b.count(x as i64 - shift);
        c += w.a.count(x as i64 - q as i64);
        if x == 0 {
            c += w.a.count(q as i64);
        }
        c += w.a.count(x as i64);
        *slot = c;
    }
    dedup(&mut b_next, &[(2 * q, 1), (q, 1), (0, 1)], "b", t_next)?;

    let next = OmegaMultiset {
        t: t_next,
        a: SymHist::from_half_counts(a_next),
        b: SymHist::from_half_counts(b_next),
    };
    let expected = 5 * node_count_u64(w.t) as u128 - 5;
    if next.a.mass() != expected || next.b.mass() != expected {
        return Err(PentaError::Internal(format!(
            "histogram mass mismatch at level {t_next}: a = {}, b = {}, want {expected}",
            next.a.mass(),
            next.b.mass()
        )));
    }
    if !next.a.is_dense() || !next.b.is_dense() {
        return Err(PentaError::Internal(format!(
            "histogram support has a hole at level {t_next}"
        )));
    }
    Ok(next)
}

fn dedup(h: &mut [u64], removals: &[(usize, u64)], which: &str, t: u32) -> Result<()> {
    for &(idx, m) in removals {
        h[idx] = h[idx].checked_sub(m).ok_or_else(|| {
            PentaError::Internal(format!(
                "junction dedup underflow in {which}' at level {t}, value {idx}"
            ))
        })?;
    }
    Ok(())
}

/// Iterate `omega_step` from level 0.
pub fn omega_chain(t: u32) -> Result<OmegaMultiset> {
    if t > MAX_CHAIN_T {
        return Err(PentaError::Resource {
            what: "materialized histogram chain",
            max: MAX_CHAIN_T,
            got: t,
            hint: "level-19 histograms alone exceed 5 GB",
        });
    }
    let mut w = omega_init();
    for _ in 0..t {
        w = omega_step(&w)?;
    }
    Ok(w)
}

// ---------------------------------------------------------------------------
// delta

/// Pair-domain convention for the overcount sum. The sum runs over node
/// pairs drawn from two branches; `Exclusive` removes the designated hub
/// node on each side (the two endpoints of the middle-branch crossing),
/// `Inclusive` keeps them. Both hubs carry difference value `-d12`, and a
/// `-d12` entry would need a partner above `+d12` to contribute, which the
/// value range rules out: the two conventions are provably equal, and
/// `Auto` simply selects `Inclusive`. The distinction is still implemented
/// literally so the equality is checked rather than assumed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DeltaConvention {
    Auto,
    Inclusive,
    Exclusive,
}

impl DeltaConvention {
    pub fn canonical(self) -> &'static str {
        match self {
            DeltaConvention::Exclusive => "exclusive",
            _ => "inclusive",
        }
    }
}

/// `delta` from a level-`t` `a`-histogram (`q = d12(t)` is its range):
/// the sum over ordered value pairs of `max(0, a_i + a_j - q)`.
///
/// One subtlety fixes the sign conventions: geometrically the `j`-side
/// value enters negated (its reference corners swap roles), but the
/// histogram is negation-symmetric, so the same marginal serves both
/// sides unchanged.
pub fn delta_from_hist(a: &SymHist, conv: DeltaConvention) -> BigInt {
    let q = a.range();
    let inclusive = delta_scan(|v| a.count(v), q);
    match conv {
        DeltaConvention::Auto | DeltaConvention::Inclusive => BigInt::from(inclusive),
        DeltaConvention::Exclusive => {
            // Remove one node at value -q from each side. The correction
            // terms are computed literally; each is zero because the
            // partner would have to exceed +q.
            let mut corr_i: i128 = 0;
            let mut corr_j: i128 = 0;
            for w in -q..=q {
                corr_i += a.count(w) as i128 * 0i64.max(-q + w - q) as i128;
                corr_j += a.count(w) as i128 * 0i64.max(w - q - q) as i128;
            }
            let corr_both = 0i64.max(-q - q - q) as i128;
            BigInt::from(inclusive - corr_i - corr_j + corr_both)
        }
    }
}

/// Suffix-aggregated scan: `sum over v, w of h(v) h(w) max(0, v + w - q)`
/// in one pass over the value range.
///
/// For each `v`, the inner sum over `w > q - v` is `(v - q) * T + U` with
/// `T = sum of h(w)` and `U = sum of w h(w)` over the window; the window
/// only grows as `v` increases, so `T` and `U` are maintained
/// incrementally. i128 is sufficient: every term is nonnegative, and the
/// full sum stays below 10^35 for every level this crate can reach
/// (mass < 2^48, range < 2^30).
fn delta_scan(h: impl Fn(i64) -> u64, q: i64) -> i128 {
    let mut total: i128 = 0;
    let mut t_cnt: i128 = 0;
    let mut u_sum: i128 = 0;
    let mut w = q; // next value to absorb into the suffix window
    for v in -q..=q {
        let lo = q - v + 1;
        while w >= lo {
            let hw = h(w) as i128;
            t_cnt += hw;
            u_sum += w as i128 * hw;
            w -= 1;
        }
        if t_cnt > 0 {
            let hv = h(v) as i128;
            if hv > 0 {
                let inner = (v - q) as i128 * t_cnt + u_sum;
                debug_assert!(inner >= 0);
                total += hv * inner;
            }
        }
    }
    total
}

/// `delta` at level `t + 1`, streamed from the level-`t` histograms
/// without materializing the next level. The virtual histogram is exactly
/// the `a'` update of [`omega_step`] evaluated pointwise.
pub fn delta_virtual_next(w: &OmegaMultiset) -> BigInt {
    let q = w.a.range();
    let big_q = w.b.range();
    let n = node_count_u64(w.t);
    let h = |x: i64| {
        let mut c = w.a.count(x);
        c += w.b.count(x - big_q) + w.b.count(x + big_q);
        if x.abs() == q {
            c += n;
            c -= 2;
        }
        if x == 0 {
            c -= 1;
        }
        c
    };
    BigInt::from(delta_scan(h, 2 * big_q))
}

/// Negative control: the broken reading that drops the fixed `d12` shift
/// on the far-hub routes, equivalent to discarding one `+q` node from each
/// side of the pair sum. Unlike the convention split, this changes the
/// result immediately (level 0 gives 1 instead of 4); the reference-table
/// gate must reject it.
pub fn delta_far_hub_misread(a: &SymHist) -> BigInt {
    let q = a.range();
    let inclusive = delta_scan(|v| a.count(v), q);
    let pos_sum: i128 = (1..=q).map(|w| w as i128 * a.count(w) as i128).sum();
    BigInt::from(inclusive - 2 * pos_sum + q as i128)
}

// ---------------------------------------------------------------------------
// assembly

/// One level of the exact metrics table. All aggregate fields describe
/// level-`t` structure (the five-branch composition of `G(t+1)`):
///
/// * `a12`: distance sum over pairs spanning two adjacent branches,
///   both hubs excluded; equals `2 (N-1) S`.
/// * `d1c`: row sum from a junction to the facing branch; equals
///   `2 N d12 + F` (every route makes exactly two crossings).
/// * `lambda13`: distance sum over pairs spanning two next-nearest
///   branches, hubs excluded; equals `a12 + (N-1)^2 d12 - delta`, where
///   `delta` corrects the pairs whose shortest path avoids the middle
///   branch.
/// * `a_cross`: total over all pairs spanning distinct branches;
///   `D(t+1) = 5 D(t) + a_cross(t)` with `D(0) = 15`.
#[derive(Clone, Debug)]
pub struct MetricsRow {
    pub t: u32,
    pub n: BigInt,
    pub e: BigInt,
    pub d12: BigInt,
    pub d13: BigInt,
    pub s: BigInt,
    pub f: BigInt,
    pub delta: BigInt,
    pub a12: BigInt,
    pub d1c: BigInt,
    pub lambda13: BigInt,
    pub a_cross: BigInt,
    pub d_total: BigInt,
    pub apl: BigRational,
}

/// Exact metrics rows for `t = 0..=t_max`.
pub fn assemble(t_max: u32) -> Result<Vec<MetricsRow>> {
    assemble_with(t_max, DeltaConvention::Auto)
}

pub fn assemble_with(t_max: u32, conv: DeltaConvention) -> Result<Vec<MetricsRow>> {
    if t_max > MAX_ASSEMBLE_T {
        return Err(PentaError::Resource {
            what: "exact metrics assembly",
            max: MAX_ASSEMBLE_T,
            got: t_max,
            hint: "delta(20) needs level-20 histograms, past the memory budget",
        });
    }
    let deltas = delta_series(t_max, conv)?;
    let (d12, d13) = coupled_seq(t_max);
    let s = s_seq(t_max);
    let f = f_seq(t_max);

    let mut rows = Vec::with_capacity(t_max as usize + 1);
    let mut d_total = BigInt::from(15);
    for t in 0..=t_max as usize {
        let n = node_count(t as u32);
        let nm1 = &n - BigInt::one();
        let a12 = 2 * &nm1 * &s[t];
        let d1c = 2 * &n * &d12[t] + &f[t];
        let lambda13 = &a12 + &nm1 * &nm1 * &d12[t] - &deltas[t];
        // The far-hub aggregate enters the cross total once per far branch
        // pair, weighted by the N-1 partner nodes rather than N; writing it
        // through d1c (= 2 N d12 + F) leaves a +2 d12 remainder per pair,
        // hence the +10 d12 across the five pairs.
        let a_cross = 5 * (&a12 + &lambda13 - &d1c) + 10 * &d12[t];
        let pairs = &n * &nm1 / BigInt::from(2);
        let apl = BigRational::new(d_total.clone(), pairs);
        let next_d = 5 * &d_total + &a_cross;
        rows.push(MetricsRow {
            t: t as u32,
            n,
            e: edge_count(t as u32),
            d12: d12[t].clone(),
            d13: d13[t].clone(),
            s: s[t].clone(),
            f: f[t].clone(),
            delta: deltas[t].clone(),
            a12,
            d1c,
            lambda13,
            a_cross,
            d_total: d_total.clone(),
            apl,
        });
        d_total = next_d;
    }
    Ok(rows)
}

/// `delta(t)` for `t = 0..=t_max`, materializing histograms only up to
/// [`MAX_CHAIN_T`] and streaming the final level beyond that.
pub fn delta_series(t_max: u32, conv: DeltaConvention) -> Result<Vec<BigInt>> {
    if t_max > MAX_ASSEMBLE_T {
        return Err(PentaError::Resource {
            what: "delta series",
            max: MAX_ASSEMBLE_T,
            got: t_max,
            hint: "delta(20) needs level-20 histograms, past the memory budget",
        });
    }
    let mut deltas = Vec::with_capacity(t_max as usize + 1);
    let mut w = omega_init();
    loop {
        deltas.push(delta_from_hist(&w.a, conv));
        if w.t == t_max {
            break;
        }
        if w.t == MAX_CHAIN_T {
            deltas.push(delta_virtual_next(&w));
            break;
        }
        w = omega_step(&w)?;
    }
    Ok(deltas)
}

/// `D(t)` for `t = 0..=t_max`; reaches one level past the last full row.
pub fn d_series(t_max: u32) -> Result<Vec<BigInt>> {
    if t_max > MAX_APL_T {
        return Err(PentaError::Resource {
            what: "total distance series",
            max: MAX_APL_T,
            got: t_max,
            hint: "D(21) needs a_cross(20), hence delta(20)",
        });
    }
    let rows = assemble(t_max.min(MAX_ASSEMBLE_T))?;
    let mut d: Vec<BigInt> = rows.iter().map(|r| r.d_total.clone()).collect();
    if t_max > MAX_ASSEMBLE_T {
        let last = rows.last().expect("assemble returns at least one row");
        d.push(5 * &last.d_total + &last.a_cross);
    }
    Ok(d)
}

/// Exact APL for `t = 0..=t_max`.
pub fn apl_series(t_max: u32) -> Result<Vec<BigRational>> {
    let d = d_series(t_max)?;
    Ok(d.into_iter()
        .enumerate()
        .map(|(t, dt)| {
            let n = node_count(t as u32);
            let pairs = &n * (&n - BigInt::one()) / BigInt::from(2);
            BigRational::new(dt, pairs)
        })
        .collect())
}

// ---------------------------------------------------------------------------
// emission

pub const CSV_HEADER: &str = "t,N,E,d12,d13,S,F,delta,a12,d1c,lambda13,a_cross,D,apl_num,apl_den";

/// Render rows as CSV with exact decimal integers. With
/// `with_apl_decimal`, a 15-significant-digit `apl_decimal` convenience
/// column is appended. Output is byte-deterministic.
pub fn to_csv(rows: &[MetricsRow], with_apl_decimal: bool) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    if with_apl_decimal {
        out.push_str(",apl_decimal");
    }
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.t,
            r.n,
            r.e,
            r.d12,
            r.d13,
            r.s,
            r.f,
            r.delta,
            r.a12,
            r.d1c,
            r.lambda13,
            r.a_cross,
            r.d_total,
            r.apl.numer(),
            r.apl.denom()
        ));
        if with_apl_decimal {
            out.push(',');
            out.push_str(&decimal::decimal_string(&r.apl, 15));
        }
        out.push('\n');
    }
    out
}

/// `delta / lambda13` as f64, one entry per row with `t >= 2`. The ratio
/// measures how small the overcount correction is against the aggregate it
/// corrects; it stays below 0.1 from level 2 on.
pub fn delta_lambda_ratios(rows: &[MetricsRow]) -> Vec<(u32, f64)> {
    rows.iter()
        .filter(|r| r.t >= 2)
        .map(|r| {
            let ratio = BigRational::new(r.delta.clone(), r.lambda13.clone());
            (r.t, decimal::ratio_to_f64(&ratio))
        })
        .collect()
}
