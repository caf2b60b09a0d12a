//! Explicit construction of the pentagon family, branch decomposition and
//! the canonical JSON document form.

use serde::{Deserialize, Serialize};

use crate::error::{PentaError, Result};

/// Largest generation `build` accepts by default. `G(8)` has 1 464 845
/// nodes and 1 953 125 edges; each further generation multiplies both by
/// five, so the explicit representation stops being useful well before the
/// recurrence engine does.
pub const DEFAULT_MAX_EXPLICIT_T: u32 = 8;

/// How the five copies are glued at each construction step.
///
/// `Aligned` is the canonical rule: copy `k` donates its role-3 corner,
/// copy `k+1` its role-4 corner, for all five `k`. `Misaligned` glues
/// role-3 to role-5 instead; the result is a perfectly valid 5-regular-ish
/// graph with the same node and edge counts but different metric structure
/// (already `d12(1) = 3` instead of `4`). It exists as a negative control:
/// every distance gate must catch it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gluing {
    Aligned,
    Misaligned,
}

/// An explicit generation of the family, with adjacency in CSR form.
///
/// Node ids are dense `0..n`. `corners` lists the five outer corners in
/// rotational order (role 1 of each of the five top-level branches).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PentagonGraph {
    generation: u32,
    n: u32,
    /// Each edge stored as `(min, max)`, sorted lexicographically.
    edges: Vec<(u32, u32)>,
    corners: [u32; 5],
    offsets: Vec<u32>,
    neighbors: Vec<u32>,
}

impl PentagonGraph {
    pub fn generation(&self) -> u32 {
        self.generation
    }

    pub fn node_count(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn corners(&self) -> [u32; 5] {
        self.corners
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        let lo = self.offsets[v as usize] as usize;
        let hi = self.offsets[v as usize + 1] as usize;
        &self.neighbors[lo..hi]
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    fn from_parts(generation: u32, n: u32, mut edges: Vec<(u32, u32)>, corners: [u32; 5]) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        let mut offsets = vec![0u32; n as usize + 1];
        for &(u, v) in &edges {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..n as usize {
            offsets[i + 1] += offsets[i];
        }
        let mut neighbors = vec![0u32; edges.len() * 2];
        let mut cursor = offsets.clone();
        for &(u, v) in &edges {
            neighbors[cursor[u as usize] as usize] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize] as usize] = u;
            cursor[v as usize] += 1;
        }
        PentagonGraph {
            generation,
            n,
            edges,
            corners,
            offsets,
            neighbors,
        }
    }
}

/// Expected node count `(3*5^(t+1) + 5) / 4` as u64 (valid for t <= 26).
pub fn expected_nodes(t: u32) -> u64 {
    (3 * 5u64.pow(t + 1) + 5) / 4
}

/// Expected edge count `5^(t+1)` as u64.
pub fn expected_edges(t: u32) -> u64 {
    5u64.pow(t + 1)
}

/// Number of degree-4 nodes, `(5^(t+1) - 5) / 4`; all others have degree 2.
pub fn expected_degree4(t: u32) -> u64 {
    (5u64.pow(t + 1) - 5) / 4
}

/// Build generation `t` with the canonical gluing and the default ceiling.
pub fn build(t: u32) -> Result<PentagonGraph> {
    build_with(t, Gluing::Aligned, DEFAULT_MAX_EXPLICIT_T)
}

/// Build generation `t`, choosing the gluing rule and the generation
/// ceiling explicitly.
pub fn build_with(t: u32, gluing: Gluing, max_t: u32) -> Result<PentagonGraph> {
    if t > max_t {
        return Err(PentaError::Resource {
            what: "explicit graph construction",
            max: max_t,
            got: t,
            hint: "node count grows as 5^t; use the recurrence engine instead",
        });
    }
    let mut g = pentagon();
    for _ in 0..t {
        g = expand(&g, gluing)?;
    }
    Ok(g)
}

fn pentagon() -> PentagonGraph {
    let edges = (0..5u32).map(|i| (i, (i + 1) % 5)).collect();
    PentagonGraph::from_parts(0, 5, edges, [0, 1, 2, 3, 4])
}

/// One construction step: five copies of `prev` glued in a ring.
///
/// Copy `k` occupies provisional ids `k*n0 .. (k+1)*n0`. For each `k`,
/// copy `k`'s role-3 corner is merged with copy `(k+1)%5`'s role-4 corner
/// (role-5 under `Misaligned`); the merged junction keeps the lower of the
/// two provisional ids, and ids are then compacted in ascending order.
/// The new graph's corner `k` is copy `k`'s role-1 corner.
fn expand(prev: &PentagonGraph, gluing: Gluing) -> Result<PentagonGraph> {
    let n0 = prev.n as usize;
    let c = prev.corners;
    let partner_role = match gluing {
        Gluing::Aligned => c[3],
        Gluing::Misaligned => c[4],
    };

    // redirect[id] = the id this provisional node collapses into
    let mut redirect: Vec<u32> = (0..5 * n0 as u32).collect();
    for k in 0..5usize {
        let a = (k * n0) as u32 + c[2];
        let b = (((k + 1) % 5) * n0) as u32 + partner_role;
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        redirect[drop as usize] = keep;
    }

    // compact surviving ids, preserving ascending order
    let mut dense = vec![u32::MAX; 5 * n0];
    let mut next = 0u32;
    for id in 0..5 * n0 {
        if redirect[id] == id as u32 {
            dense[id] = next;
            next += 1;
        }
    }
    let map = |provisional: u32| dense[redirect[provisional as usize] as usize];

    let mut edges = Vec::with_capacity(prev.edges.len() * 5);
    for k in 0..5u32 {
        let base = k * n0 as u32;
        for &(u, v) in &prev.edges {
            edges.push((map(base + u), map(base + v)));
        }
    }
    let corners = std::array::from_fn(|k| map((k * n0) as u32 + c[0]));
    let g = PentagonGraph::from_parts(prev.generation + 1, next, edges, corners);

    // The merge can never collapse two edges onto each other (edges stay
    // inside their copy; only inter-copy corners merge), so the counts are
    // exact invariants of the construction. Check them anyway.
    let t = g.generation;
    if t <= 26
        && (g.n as u64 != expected_nodes(t)
            || g.edges.len() as u64 != expected_edges(t)
            || g.edges.windows(2).any(|w| w[0] == w[1])
            || g.edges.iter().any(|&(u, v)| u == v))
    {
        return Err(PentaError::Internal(format!(
            "construction step produced inconsistent counts at t = {t}"
        )));
    }
    Ok(g)
}

/// The five branches of a generation `t >= 1` graph, i.e. the five embedded
/// copies of `G(t-1)` it was assembled from.
///
/// `junctions[k]` is the node shared by branch `k` and branch `(k+1)%5`.
/// `corner_map[k][r]` is the composed id of branch `k`'s role-`(r+1)`
/// corner, so `corner_map[k][2] == junctions[k]` and
/// `corner_map[(k+1)%5][3] == junctions[k]`.
/// `node_map[k][v]` maps node `v` of `G(t-1)` to its id inside branch `k`.
/// `branches[k]` lists branch `k`'s node ids sorted ascending; the two
/// junction nodes of a branch appear in both adjacent branches.
#[derive(Clone, Debug)]
pub struct BranchDecomposition {
    pub generation: u32,
    pub junctions: [u32; 5],
    pub corner_map: [[u32; 5]; 5],
    pub node_map: Vec<Vec<u32>>,
    pub branches: Vec<Vec<u32>>,
}

impl BranchDecomposition {
    /// Branch index pairs at ring distance 1 (adjacent) sharing the given
    /// junction: `(k, (k+1)%5)` share `junctions[k]`.
    pub fn adjacent_pair(k: usize) -> (usize, usize) {
        (k, (k + 1) % 5)
    }

    /// The branch facing junction `k`, i.e. the unique branch at ring
    /// distance 2 from both branches meeting at `junctions[k]`.
    pub fn far_branch(k: usize) -> usize {
        (k + 3) % 5
    }
}

/// Decompose an aligned graph of generation `>= 1` into its five branches.
///
/// This replays the construction arithmetic of the final step and verifies
/// that it reproduces `g` exactly; a graph not produced by the canonical
/// aligned construction is rejected.
pub fn decompose(g: &PentagonGraph) -> Result<BranchDecomposition> {
    if g.generation == 0 {
        return Err(PentaError::Usage(
            "decompose requires generation >= 1".into(),
        ));
    }
    let prev = build_with(g.generation - 1, Gluing::Aligned, g.generation - 1)?;
    let rebuilt = expand(&prev, Gluing::Aligned)?;
    if rebuilt != *g {
        return Err(PentaError::InvalidDocument(format!(
            "graph is not the canonical aligned construction of generation {}",
            g.generation
        )));
    }

    let n0 = prev.n as usize;
    let c = prev.corners;
    let mut redirect: Vec<u32> = (0..5 * n0 as u32).collect();
    for k in 0..5usize {
        let a = (k * n0) as u32 + c[2];
        let b = (((k + 1) % 5) * n0) as u32 + c[3];
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        redirect[drop as usize] = keep;
    }
    let mut dense = vec![u32::MAX; 5 * n0];
    let mut next = 0u32;
    for id in 0..5 * n0 {
        if redirect[id] == id as u32 {
            dense[id] = next;
            next += 1;
        }
    }
    let map = |provisional: u32| dense[redirect[provisional as usize] as usize];

    let node_map: Vec<Vec<u32>> = (0..5)
        .map(|k| (0..n0).map(|v| map((k * n0 + v) as u32)).collect())
        .collect();
    let corner_map = std::array::from_fn(|k| std::array::from_fn(|r| node_map[k][c[r] as usize]));
    let junctions = std::array::from_fn(|k| node_map[k][c[2] as usize]);
    let branches: Vec<Vec<u32>> = node_map
        .iter()
        .map(|m| {
            let mut b = m.clone();
            b.sort_unstable();
            b
        })
        .collect();

    Ok(BranchDecomposition {
        generation: g.generation,
        junctions,
        corner_map,
        node_map,
        branches,
    })
}

#[derive(Serialize, Deserialize)]
struct GraphDocument {
    generation: u32,
    n: u32,
    edges: Vec<(u32, u32)>,
    corners: [u32; 5],
}

/// Canonical JSON form: fixed key order, edges as `[u, v]` with `u < v`
/// sorted lexicographically. The output is byte-deterministic.
pub fn to_json(g: &PentagonGraph) -> String {
    let doc = GraphDocument {
        generation: g.generation,
        n: g.n,
        edges: g.edges.clone(),
        corners: g.corners,
    };
    serde_json::to_string(&doc).expect("graph document serialization cannot fail")
}

/// Parse and validate a graph document.
///
/// JSON-level failures report the byte offset into `input`. Structural
/// validation then checks the counts against the claimed generation, the
/// canonical edge order, the degree profile, and connectivity; it does not
/// prove isomorphism to the canonical construction (verify does that by
/// rebuilding).
pub fn from_json(input: &str) -> Result<PentagonGraph> {
    let doc: GraphDocument = serde_json::from_str(input).map_err(|e| PentaError::Parse {
        offset: byte_offset(input, e.line(), e.column()),
        msg: e.to_string(),
    })?;
    let g = validate_document(doc)?;
    Ok(g)
}

fn byte_offset(input: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let mut remaining = line - 1;
    let mut offset = 0usize;
    for (i, b) in input.bytes().enumerate() {
        if remaining == 0 {
            break;
        }
        if b == b'\n' {
            remaining -= 1;
            offset = i + 1;
        }
    }
    (offset + column.saturating_sub(1)).min(input.len())
}

fn validate_document(doc: GraphDocument) -> Result<PentagonGraph> {
    let fail = |msg: String| Err(PentaError::InvalidDocument(msg));
    let t = doc.generation;
    if t > DEFAULT_MAX_EXPLICIT_T {
        return Err(PentaError::Resource {
            what: "explicit graph document",
            max: DEFAULT_MAX_EXPLICIT_T,
            got: t,
            hint: "document claims a generation past the explicit ceiling",
        });
    }
    if doc.n as u64 != expected_nodes(t) {
        return fail(format!(
            "generation {} must have {} nodes, document has {}",
            t,
            expected_nodes(t),
            doc.n
        ));
    }
    if doc.edges.len() as u64 != expected_edges(t) {
        return fail(format!(
            "generation {} must have {} edges, document has {}",
            t,
            expected_edges(t),
            doc.edges.len()
        ));
    }
    for (i, &(u, v)) in doc.edges.iter().enumerate() {
        if u >= v {
            return fail(format!("edge {i} = [{u}, {v}] violates u < v"));
        }
        if v >= doc.n {
            return fail(format!("edge {i} = [{u}, {v}] references node >= n"));
        }
        if i > 0 && doc.edges[i - 1] >= (u, v) {
            return fail(format!("edge list not strictly sorted at index {i}"));
        }
    }
    for (i, &cv) in doc.corners.iter().enumerate() {
        if cv >= doc.n {
            return fail(format!("corner {i} references node {cv} >= n"));
        }
        for (j, &other) in doc.corners.iter().enumerate().take(i) {
            if cv == other {
                return fail(format!("corners {j} and {i} are both node {cv}"));
            }
        }
    }

    let g = PentagonGraph::from_parts(t, doc.n, doc.edges, doc.corners);

    let mut deg4 = 0u64;
    for v in 0..g.n {
        match g.degree(v) {
            2 => {}
            4 => deg4 += 1,
            d => return fail(format!("node {v} has degree {d}, expected 2 or 4")),
        }
    }
    if deg4 != expected_degree4(t) {
        return fail(format!(
            "degree-4 count {} does not match generation {} (expected {})",
            deg4,
            t,
            expected_degree4(t)
        ));
    }
    for &cv in &g.corners {
        if g.degree(cv) != 2 {
            return fail(format!("corner node {cv} must have degree 2"));
        }
    }

    // connectivity
    let mut visited = vec![false; g.n as usize];
    let mut queue = std::collections::VecDeque::new();
    visited[0] = true;
    queue.push_back(0u32);
    let mut reached = 1u32;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !visited[w as usize] {
                visited[w as usize] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    if reached != g.n {
        return fail(format!(
            "graph is disconnected ({reached} of {} reached)",
            g.n
        ));
    }
    Ok(g)
}
