//! Brute-force BFS reference implementations.
//!
//! Everything here is exact by construction and deliberately unclever: one
//! BFS per source node, 32-bit distances, wide accumulators for totals. The
//! oracle exists so that every recurrence and closed form in the crate can
//! be checked against exhaustive search on small generations.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::engine::SymHist;
use crate::graph::{BranchDecomposition, PentagonGraph};

/// Distances from `src` to every node. The graph is connected, so every
/// entry is a real distance.
pub fn bfs(g: &PentagonGraph, src: u32) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.node_count() as usize];
    let mut queue = VecDeque::new();
    dist[src as usize] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        for &v in g.neighbors(u) {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = du + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn eccentricity(g: &PentagonGraph, src: u32) -> u32 {
    bfs(g, src).into_iter().max().unwrap_or(0)
}

/// Exact diameter by running BFS from every node.
pub fn diameter(g: &PentagonGraph) -> u32 {
    let mut best = 0;
    let mut dist = vec![u32::MAX; g.node_count() as usize];
    let mut queue = VecDeque::new();
    for src in 0..g.node_count() {
        dist.fill(u32::MAX);
        dist[src as usize] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            if du > best {
                best = du;
            }
            for &v in g.neighbors(u) {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    best
}

/// Sum of distances over unordered node pairs.
pub fn total_distance(g: &PentagonGraph) -> BigInt {
    let mut total: u128 = 0;
    for src in 0..g.node_count() {
        let row: u64 = bfs(g, src).into_iter().map(u64::from).sum();
        total += row as u128;
    }
    BigInt::from(total / 2)
}

/// Mean distance over unordered pairs, exact.
pub fn average_path_length(g: &PentagonGraph) -> BigRational {
    let n = BigInt::from(g.node_count());
    let pairs = &n * (&n - BigInt::from(1)) / BigInt::from(2);
    BigRational::new(total_distance(g), pairs)
}

/// Distance between outer corners `i` and `j` (indices into `corners()`).
pub fn corner_distance(g: &PentagonGraph, i: usize, j: usize) -> u32 {
    let c = g.corners();
    bfs(g, c[i])[c[j] as usize]
}

/// Row sum of one outer corner: sum of distances from `corners()[i]` to
/// every node.
pub fn corner_row_sum(g: &PentagonGraph, i: usize) -> u64 {
    bfs(g, g.corners()[i]).into_iter().map(u64::from).sum()
}

/// The sorted distance list from a node; corner lists must coincide for
/// all five corners (dihedral symmetry of the construction).
pub fn sorted_distance_list(g: &PentagonGraph, src: u32) -> Vec<u32> {
    let mut d = bfs(g, src);
    d.sort_unstable();
    d
}

/// Joint multiset of corner-distance differences, measured directly.
///
/// For every node `i`: `a = d(i, c3) - d(i, c4)` and `b = d(i, c3) - d(i, c5)`
/// where `c3, c4, c5` are the role-3/4/5 outer corners (`corners()[2..5]`).
/// Three BFS runs total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaJoint {
    pub pairs: BTreeMap<(i64, i64), u64>,
}

pub fn omega_direct(g: &PentagonGraph) -> OmegaJoint {
    let c = g.corners();
    let d3 = bfs(g, c[2]);
    let d4 = bfs(g, c[3]);
    let d5 = bfs(g, c[4]);
    let mut pairs = BTreeMap::new();
    for i in 0..g.node_count() as usize {
        let a = d3[i] as i64 - d4[i] as i64;
        let b = d3[i] as i64 - d5[i] as i64;
        *pairs.entry((a, b)).or_insert(0u64) += 1;
    }
    OmegaJoint { pairs }
}

impl OmegaJoint {
    pub fn a_marginal(&self) -> SymHist {
        marginal(self.pairs.iter().map(|(&(a, _), &m)| (a, m)))
    }

    pub fn b_marginal(&self) -> SymHist {
        marginal(self.pairs.iter().map(|(&(_, b), &m)| (b, m)))
    }

    /// Raw value-to-count view of the `a` coordinate. Unlike `a_marginal`
    /// this does not assume negation symmetry, so it stays usable on
    /// graphs outside the canonical family.
    pub fn a_counts(&self) -> BTreeMap<i64, u64> {
        raw_counts(self.pairs.iter().map(|(&(a, _), &m)| (a, m)))
    }

    /// Raw value-to-count view of the `b` coordinate.
    pub fn b_counts(&self) -> BTreeMap<i64, u64> {
        raw_counts(self.pairs.iter().map(|(&(_, b), &m)| (b, m)))
    }
}

fn raw_counts(values: impl Iterator<Item = (i64, u64)>) -> BTreeMap<i64, u64> {
    let mut out = BTreeMap::new();
    for (v, m) in values {
        *out.entry(v).or_insert(0) += m;
    }
    out
}

fn marginal(values: impl Iterator<Item = (i64, u64)> + Clone) -> SymHist {
    let range = values
        .clone()
        .map(|(v, _)| v.unsigned_abs())
        .max()
        .unwrap_or(0) as usize;
    let mut pos = vec![0u64; range + 1];
    let mut neg = vec![0u64; range + 1];
    for (v, m) in values {
        if v >= 0 {
            pos[v as usize] += m;
        }
        if v <= 0 {
            neg[(-v) as usize] += m;
        }
    }
    assert_eq!(pos, neg, "measured marginal is not negation-symmetric");
    SymHist::from_half_counts(pos)
}

/// Sum of `d(u, v)` over `u` in `left`, `v` in `right` (ordered pairs, one
/// BFS per left node).
pub fn pair_sum(g: &PentagonGraph, left: &[u32], right: &[u32]) -> u64 {
    let mut total = 0u64;
    for &u in left {
        let d = bfs(g, u);
        for &v in right {
            total += d[v as usize] as u64;
        }
    }
    total
}

/// Sums of distances split by branch membership: pairs sharing at least one
/// branch ("within") and pairs sharing none ("cross"). Junction nodes belong
/// to two branches. `within + cross == total_distance`.
pub fn branch_split_totals(g: &PentagonGraph, dec: &BranchDecomposition) -> (BigInt, BigInt) {
    let mut mask = vec![0u8; g.node_count() as usize];
    for (k, branch) in dec.branches.iter().enumerate() {
        for &v in branch {
            mask[v as usize] |= 1 << k;
        }
    }
    let mut within: u128 = 0;
    let mut cross: u128 = 0;
    for u in 0..g.node_count() {
        let d = bfs(g, u);
        let mu = mask[u as usize];
        for v in (u + 1)..g.node_count() {
            if mu & mask[v as usize] != 0 {
                within += d[v as usize] as u128;
            } else {
                cross += d[v as usize] as u128;
            }
        }
    }
    (BigInt::from(within), BigInt::from(cross))
}
