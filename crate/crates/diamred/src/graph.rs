//! Directed unweighted graphs with exact and approximate distance engines.
//!
//! Arcs live in a CSR layout with sorted neighbor lists plus the transposed
//! adjacency, so forward and reverse BFS are both cheap. Undirected edges of
//! the reduction constructions are stored as two opposite arcs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

/// Distance sentinel for unreachable vertices; strictly greater than any hop
/// count a graph can realize.
pub const INF: u32 = u32::MAX;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex id {0} out of range (vertex count {1})")]
    BadVertex(u32, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(u32, u32),
    #[error("empty vertex set given for {0}")]
    EmptySet(&'static str),
}

/// The five edge families of the reduction, with direction baked in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Swap,
    VectorChange,
    CoordChange,
    BackA,
    BackB,
    BackBa,
    Fixed,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 7] = [
        EdgeKind::Swap,
        EdgeKind::VectorChange,
        EdgeKind::CoordChange,
        EdgeKind::BackA,
        EdgeKind::BackB,
        EdgeKind::BackBa,
        EdgeKind::Fixed,
    ];

    /// Back and fixed edges are directed; the rest are undirected and appear
    /// as two opposite arcs.
    pub fn is_directed(self) -> bool {
        matches!(self, EdgeKind::BackA | EdgeKind::BackB | EdgeKind::BackBa | EdgeKind::Fixed)
    }

    pub fn name(self) -> &'static str {
        match self {
            EdgeKind::Swap => "swap",
            EdgeKind::VectorChange => "vector_change",
            EdgeKind::CoordChange => "coord_change",
            EdgeKind::BackA => "back_a",
            EdgeKind::BackB => "back_b",
            EdgeKind::BackBa => "back_ba",
            EdgeKind::Fixed => "fixed",
        }
    }
}

impl std::str::FromStr for EdgeKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        EdgeKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown edge kind {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Reverse,
}

/// Immutable directed graph in CSR form.
#[derive(Debug, Clone)]
pub struct DiGraph {
    n: usize,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    kinds: Option<Vec<EdgeKind>>,
    r_offsets: Vec<usize>,
    r_targets: Vec<u32>,
}

impl DiGraph {
    /// Builds from an arc list. Arcs are sorted and checked against the
    /// no-self-loop / no-duplicate invariants.
    pub fn from_arcs(n: usize, mut arcs: Vec<(u32, u32)>) -> Result<Self, GraphError> {
        arcs.sort_unstable();
        for &(u, v) in &arcs {
            if u as usize >= n {
                return Err(GraphError::BadVertex(u, n));
            }
            if v as usize >= n {
                return Err(GraphError::BadVertex(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
        }
        if let Some(w) = arcs.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateArc(w[0].0, w[0].1));
        }
        let offsets = row_offsets(n, arcs.iter().map(|&(u, _)| u));
        let targets = arcs.iter().map(|&(_, v)| v).collect();
        let (r_offsets, r_targets) = transpose_of(n, &arcs);
        Ok(DiGraph {
            n,
            offsets,
            targets,
            kinds: None,
            r_offsets,
            r_targets,
        })
    }

    /// Builds from labeled arcs; used by the reduction builders.
    pub fn from_labeled_arcs(
        n: usize,
        mut arcs: Vec<(u32, u32, EdgeKind)>,
    ) -> Result<Self, GraphError> {
        arcs.sort_unstable();
        for &(u, v, _) in &arcs {
            if u as usize >= n {
                return Err(GraphError::BadVertex(u, n));
            }
            if v as usize >= n {
                return Err(GraphError::BadVertex(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
        }
        if let Some(w) = arcs
            .windows(2)
            .find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1))
        {
            return Err(GraphError::DuplicateArc(w[0].0, w[0].1));
        }
        let offsets = row_offsets(n, arcs.iter().map(|&(u, _, _)| u));
        let targets: Vec<u32> = arcs.iter().map(|&(_, v, _)| v).collect();
        let kinds: Vec<EdgeKind> = arcs.iter().map(|&(_, _, k)| k).collect();
        let plain: Vec<(u32, u32)> = arcs.iter().map(|&(u, v, _)| (u, v)).collect();
        let (r_offsets, r_targets) = transpose_of(n, &plain);
        Ok(DiGraph {
            n,
            offsets,
            targets,
            kinds: Some(kinds),
            r_offsets,
            r_targets,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    pub fn out(&self, u: u32) -> &[u32] {
        &self.targets[self.offsets[u as usize]..self.offsets[u as usize + 1]]
    }

    pub fn r_out(&self, u: u32) -> &[u32] {
        &self.r_targets[self.r_offsets[u as usize]..self.r_offsets[u as usize + 1]]
    }

    pub fn has_kinds(&self) -> bool {
        self.kinds.is_some()
    }

    /// Kind of the arc `u -> v`, `None` when the arc is absent or unlabeled.
    pub fn arc_kind(&self, u: u32, v: u32) -> Option<EdgeKind> {
        let row = self.out(u);
        let i = row.binary_search(&v).ok()?;
        self.kinds
            .as_ref()
            .map(|ks| ks[self.offsets[u as usize] + i])
    }

    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        self.out(u).binary_search(&v).is_ok()
    }

    /// Arcs in deterministic (source, target) order.
    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n as u32).flat_map(move |u| self.out(u).iter().map(move |&v| (u, v)))
    }

    pub fn labeled_arcs(&self) -> impl Iterator<Item = (u32, u32, Option<EdgeKind>)> + '_ {
        (0..self.n as u32).flat_map(move |u| {
            let base = self.offsets[u as usize];
            self.out(u).iter().enumerate().map(move |(i, &v)| {
                (u, v, self.kinds.as_ref().map(|ks| ks[base + i]))
            })
        })
    }

    pub fn transpose(&self) -> DiGraph {
        let arcs: Vec<(u32, u32)> = self.arcs().map(|(u, v)| (v, u)).collect();
        DiGraph::from_arcs(self.n, arcs).expect("transpose preserves invariants")
    }

    /// Arc count per edge kind, in `EdgeKind::ALL` order. Zero when unlabeled.
    pub fn family_counts(&self) -> Vec<(EdgeKind, u64)> {
        let mut counts = EdgeKind::ALL.map(|k| (k, 0u64));
        if let Some(kinds) = &self.kinds {
            for &k in kinds {
                counts[EdgeKind::ALL.iter().position(|&x| x == k).unwrap()].1 += 1;
            }
        }
        counts.to_vec()
    }
}

fn row_offsets(n: usize, sources: impl Iterator<Item = u32>) -> Vec<usize> {
    let mut offsets = vec![0usize; n + 1];
    for u in sources {
        offsets[u as usize + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    offsets
}

fn transpose_of(n: usize, arcs: &[(u32, u32)]) -> (Vec<usize>, Vec<u32>) {
    let mut rev: Vec<(u32, u32)> = arcs.iter().map(|&(u, v)| (v, u)).collect();
    rev.sort_unstable();
    let offsets = row_offsets(n, rev.iter().map(|&(u, _)| u));
    let targets = rev.into_iter().map(|(_, v)| v).collect();
    (offsets, targets)
}

/// Exact hop distances from (forward) or to (reverse) `source`.
pub fn bfs(g: &DiGraph, source: u32, direction: Direction) -> Result<Vec<u32>, GraphError> {
    if source as usize >= g.n {
        return Err(GraphError::BadVertex(source, g.n));
    }
    let mut dist = vec![INF; g.n];
    dist[source as usize] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        let row = match direction {
            Direction::Forward => g.out(u),
            Direction::Reverse => g.r_out(u),
        };
        for &v in row {
            if dist[v as usize] == INF {
                dist[v as usize] = du + 1;
                queue.push_back(v);
            }
        }
    }
    Ok(dist)
}

/// Result of an exact diameter computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterResult {
    /// Largest finite distance over ordered pairs.
    pub max_finite: u32,
    /// True when every ordered pair is reachable.
    pub strongly_connected: bool,
    /// Lexicographically smallest pair realizing `max_finite`.
    pub argmax_pair: (u32, u32),
}

fn ecc_of_row(source: u32, dist: &[u32]) -> (u32, u32, bool) {
    // (max finite, argmax target, all reachable); ties take the smallest target
    let mut best = 0u32;
    let mut arg = source;
    let mut all = true;
    for (v, &d) in dist.iter().enumerate() {
        if d == INF {
            all = false;
        } else if d > best {
            best = d;
            arg = v as u32;
        }
    }
    (best, arg, all)
}

fn combine(a: (u32, (u32, u32), bool), b: (u32, (u32, u32), bool)) -> (u32, (u32, u32), bool) {
    let all = a.2 && b.2;
    if a.0 > b.0 || (a.0 == b.0 && a.1 <= b.1) {
        (a.0, a.1, all)
    } else {
        (b.0, b.1, all)
    }
}

/// All-sources BFS diameter, parallel over sources. The reported pair is the
/// lexicographically smallest maximizer regardless of thread schedule.
pub fn exact_diameter(g: &DiGraph) -> DiameterResult {
    assert!(g.n >= 1, "diameter of an empty graph");
    let (max_finite, argmax_pair, strongly_connected) = (0..g.n as u32)
        .into_par_iter()
        .map(|s| {
            let dist = bfs(g, s, Direction::Forward).expect("source in range");
            let (ecc, arg, all) = ecc_of_row(s, &dist);
            (ecc, (s, arg), all)
        })
        .reduce(|| (0, (0, 0), true), combine);
    DiameterResult {
        max_finite,
        strongly_connected,
        argmax_pair,
    }
}

/// Exact ST-diameter: `max over s in S, t in T` of `d(s, t)`; `INF` when some
/// pair is unreachable.
pub fn st_diameter(g: &DiGraph, s_set: &[u32], t_set: &[u32]) -> Result<u32, GraphError> {
    if s_set.is_empty() {
        return Err(GraphError::EmptySet("S"));
    }
    if t_set.is_empty() {
        return Err(GraphError::EmptySet("T"));
    }
    for &v in s_set.iter().chain(t_set) {
        if v as usize >= g.n {
            return Err(GraphError::BadVertex(v, g.n));
        }
    }
    let best = s_set
        .par_iter()
        .map(|&s| {
            let dist = bfs(g, s, Direction::Forward).expect("checked");
            t_set
                .iter()
                .map(|&t| dist[t as usize])
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    Ok(best)
}

/// Outcome of the folklore 2-approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FolkloreEstimate {
    /// Largest distance found from/to the start vertex; `INF` when the start
    /// does not reach (or is not reached by) the whole graph.
    pub estimate: u32,
    /// True when both BFS trees span all vertices.
    pub all_reachable: bool,
}

/// Folklore 2-approximation: BFS from `start` in both directions and return
/// the largest distance found. On strongly connected graphs the estimate `E`
/// satisfies `ceil(D/2) <= E <= D`.
pub fn folklore_two_approx(g: &DiGraph, start: u32) -> Result<FolkloreEstimate, GraphError> {
    let fwd = bfs(g, start, Direction::Forward)?;
    let rev = bfs(g, start, Direction::Reverse)?;
    let mut estimate = 0u32;
    let mut all_reachable = true;
    for &d in fwd.iter().chain(rev.iter()) {
        if d == INF {
            all_reachable = false;
        } else if d > estimate {
            estimate = d;
        }
    }
    Ok(FolkloreEstimate {
        estimate: if all_reachable { estimate } else { INF },
        all_reachable,
    })
}

// ---------------------------------------------------------------------------
// Group-accelerated BFS
// ---------------------------------------------------------------------------

/// A set of vertices that is pairwise fully adjacent (clique, both arc
/// directions) or fully adjacent across two sides (biclique). Members are
/// contiguous id ranges, which is how the reduction lays out its
/// coordinate-change cliques.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Group {
    Clique(std::ops::Range<u32>),
    Biclique(std::ops::Range<u32>, std::ops::Range<u32>),
}

/// Distance engine that keeps dense edge families implicit.
///
/// `sparse` holds every arc except those covered by `groups`; a BFS then costs
/// `O(V + sparse arcs + total group size)` instead of scanning quadratic
/// clique adjacency. Groups are symmetric, so the same list serves forward and
/// reverse traversals.
#[derive(Debug, Clone)]
pub struct GroupedGraph {
    pub sparse: DiGraph,
    pub groups: Vec<Group>,
    /// groups_of[v] = indices into `groups` that contain v.
    membership_offsets: Vec<usize>,
    membership: Vec<u32>,
}

impl GroupedGraph {
    pub fn new(sparse: DiGraph, groups: Vec<Group>) -> Self {
        let n = sparse.vertex_count();
        let mut counts = vec![0usize; n + 1];
        let mut note = |r: &std::ops::Range<u32>| {
            for v in r.clone() {
                counts[v as usize + 1] += 1;
            }
        };
        for g in &groups {
            match g {
                Group::Clique(r) => note(r),
                Group::Biclique(a, b) => {
                    note(a);
                    note(b);
                }
            }
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let membership_offsets = counts.clone();
        let mut cursor = counts;
        let mut membership = vec![0u32; membership_offsets[n]];
        for (gi, g) in groups.iter().enumerate() {
            let mut put = |r: &std::ops::Range<u32>| {
                for v in r.clone() {
                    membership[cursor[v as usize]] = gi as u32;
                    cursor[v as usize] += 1;
                }
            };
            match g {
                Group::Clique(r) => put(r),
                Group::Biclique(a, b) => {
                    put(a);
                    put(b);
                }
            }
        }
        GroupedGraph {
            sparse,
            groups,
            membership_offsets,
            membership,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.sparse.vertex_count()
    }

    fn groups_of(&self, v: u32) -> &[u32] {
        &self.membership[self.membership_offsets[v as usize]..self.membership_offsets[v as usize + 1]]
    }

    /// BFS equivalent to running over the materialized graph. When the first
    /// member of a clique side is scanned, every still-unvisited vertex of the
    /// opposite side is assigned distance `+1` and the side is marked done, so
    /// each group costs linear work per traversal.
    pub fn bfs(&self, source: u32, direction: Direction) -> Result<Vec<u32>, GraphError> {
        let n = self.vertex_count();
        if source as usize >= n {
            return Err(GraphError::BadVertex(source, n));
        }
        // done[2*g], done[2*g+1]: lower/upper side of group g already expanded
        let mut done = vec![false; self.groups.len() * 2];
        let mut dist = vec![INF; n];
        dist[source as usize] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            let row = match direction {
                Direction::Forward => self.sparse.out(u),
                Direction::Reverse => self.sparse.r_out(u),
            };
            for &v in row {
                if dist[v as usize] == INF {
                    dist[v as usize] = du + 1;
                    queue.push_back(v);
                }
            }
            for &gi in self.groups_of(u) {
                let (sides, in_a): (&Group, bool) = match &self.groups[gi as usize] {
                    g @ Group::Clique(_) => (g, true),
                    g @ Group::Biclique(a, _) => (g, a.contains(&u)),
                };
                // scanning a vertex of one side settles the opposite side
                let (targets, flag) = match sides {
                    Group::Clique(r) => (r.clone(), gi as usize * 2),
                    Group::Biclique(a, b) => {
                        if in_a {
                            (b.clone(), gi as usize * 2 + 1)
                        } else {
                            (a.clone(), gi as usize * 2)
                        }
                    }
                };
                if done[flag] {
                    continue;
                }
                done[flag] = true;
                if matches!(sides, Group::Clique(_)) {
                    done[gi as usize * 2 + 1] = true;
                }
                for v in targets {
                    if dist[v as usize] == INF {
                        dist[v as usize] = du + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        Ok(dist)
    }

    /// All-sources diameter over the implicit graph; same contract as
    /// [`exact_diameter`].
    pub fn exact_diameter(&self) -> DiameterResult {
        let n = self.vertex_count();
        assert!(n >= 1);
        let (max_finite, argmax_pair, strongly_connected) = (0..n as u32)
            .into_par_iter()
            .map(|s| {
                let dist = self.bfs(s, Direction::Forward).expect("in range");
                let (ecc, arg, all) = ecc_of_row(s, &dist);
                (ecc, (s, arg), all)
            })
            .reduce(|| (0, (0, 0), true), combine);
        DiameterResult {
            max_finite,
            strongly_connected,
            argmax_pair,
        }
    }

    pub fn folklore_two_approx(&self, start: u32) -> Result<FolkloreEstimate, GraphError> {
        let fwd = self.bfs(start, Direction::Forward)?;
        let rev = self.bfs(start, Direction::Reverse)?;
        let mut estimate = 0u32;
        let mut all_reachable = true;
        for &d in fwd.iter().chain(rev.iter()) {
            if d == INF {
                all_reachable = false;
            } else if d > estimate {
                estimate = d;
            }
        }
        Ok(FolkloreEstimate {
            estimate: if all_reachable { estimate } else { INF },
            all_reachable,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle3() -> DiGraph {
        DiGraph::from_arcs(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn bfs_on_directed_cycle() {
        let g = cycle3();
        assert_eq!(bfs(&g, 0, Direction::Forward).unwrap(), vec![0, 1, 2]);
        assert_eq!(bfs(&g, 0, Direction::Reverse).unwrap(), vec![0, 2, 1]);
    }

    #[test]
    fn bfs_isolated_vertices() {
        let g = DiGraph::from_arcs(2, vec![]).unwrap();
        assert_eq!(bfs(&g, 0, Direction::Forward).unwrap(), vec![0, INF]);
    }

    #[test]
    fn bfs_rejects_bad_source() {
        let g = cycle3();
        assert!(bfs(&g, 7, Direction::Forward).is_err());
    }

    #[test]
    fn reverse_bfs_equals_forward_on_transpose() {
        let g = DiGraph::from_arcs(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 1)]).unwrap();
        let t = g.transpose();
        for s in 0..5 {
            assert_eq!(
                bfs(&g, s, Direction::Reverse).unwrap(),
                bfs(&t, s, Direction::Forward).unwrap()
            );
        }
    }

    #[test]
    fn diameter_trivia() {
        let single = DiGraph::from_arcs(1, vec![]).unwrap();
        let r = exact_diameter(&single);
        assert_eq!(r.max_finite, 0);
        assert!(r.strongly_connected);

        let r = exact_diameter(&cycle3());
        assert_eq!(r.max_finite, 2);
        assert!(r.strongly_connected);
    }

    #[test]
    fn diameter_reports_disconnection() {
        let g = DiGraph::from_arcs(3, vec![(0, 1), (1, 0), (1, 2)]).unwrap();
        let r = exact_diameter(&g);
        assert!(!r.strongly_connected);
        assert_eq!(r.max_finite, 2); // 0 -> 2
    }

    #[test]
    fn st_diameter_examples() {
        let path = DiGraph::from_arcs(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(st_diameter(&path, &[0], &[2]).unwrap(), 2);

        let g = cycle3();
        let all = [0, 1, 2];
        assert_eq!(st_diameter(&g, &all, &all).unwrap(), exact_diameter(&g).max_finite);

        assert!(st_diameter(&g, &[], &all).is_err());
    }

    #[test]
    fn folklore_on_cycle_and_star() {
        let g = cycle3();
        for s in 0..3 {
            let e = folklore_two_approx(&g, s).unwrap();
            assert_eq!(e.estimate, 2);
            assert!(e.all_reachable);
        }

        // bidirected star: center 0, leaves 1..=3
        let mut arcs = vec![];
        for v in 1..4u32 {
            arcs.push((0, v));
            arcs.push((v, 0));
        }
        let star = DiGraph::from_arcs(4, arcs).unwrap();
        let d = exact_diameter(&star);
        assert_eq!(d.max_finite, 2);
        let e = folklore_two_approx(&star, 0).unwrap();
        assert_eq!(e.estimate, 1);
        assert!(e.estimate >= d.max_finite.div_ceil(2) && e.estimate <= d.max_finite);
    }

    #[test]
    fn folklore_flags_unreachable() {
        let g = DiGraph::from_arcs(3, vec![(0, 1), (1, 0), (1, 2)]).unwrap();
        let e = folklore_two_approx(&g, 0).unwrap();
        assert_eq!(e.estimate, INF);
        assert!(!e.all_reachable);
    }

    #[test]
    fn invariants_rejected() {
        assert!(matches!(
            DiGraph::from_arcs(2, vec![(0, 0)]),
            Err(GraphError::SelfLoop(0))
        ));
        assert!(matches!(
            DiGraph::from_arcs(2, vec![(0, 1), (0, 1)]),
            Err(GraphError::DuplicateArc(0, 1))
        ));
        assert!(DiGraph::from_arcs(2, vec![(0, 5)]).is_err());
    }

    /// Independent Floyd-Warshall oracle, for cross-checking BFS diameters.
    pub(crate) fn floyd_warshall_diameter(g: &DiGraph) -> DiameterResult {
        let n = g.vertex_count();
        let mut d = vec![vec![INF; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 0;
        }
        for (u, v) in g.arcs() {
            d[u as usize][v as usize] = 1;
        }
        for m in 0..n {
            for i in 0..n {
                if d[i][m] == INF {
                    continue;
                }
                for j in 0..n {
                    if d[m][j] == INF {
                        continue;
                    }
                    let via = d[i][m] + d[m][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        let mut best = 0;
        let mut arg = (0u32, 0u32);
        let mut sc = true;
        for i in 0..n {
            for j in 0..n {
                if d[i][j] == INF {
                    sc = false;
                } else if d[i][j] > best {
                    best = d[i][j];
                    arg = (i as u32, j as u32);
                }
            }
        }
        DiameterResult {
            max_finite: best,
            strongly_connected: sc,
            argmax_pair: arg,
        }
    }

    #[test]
    fn diameter_matches_floyd_warshall_on_random_graphs() {
        use rand::Rng;
        use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};
        for seed in 0..25u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(2..40usize);
            let p = rng.gen_range(0.05..0.4);
            let mut arcs = vec![];
            for u in 0..n as u32 {
                for v in 0..n as u32 {
                    if u != v && rng.gen_bool(p) {
                        arcs.push((u, v));
                    }
                }
            }
            let g = DiGraph::from_arcs(n, arcs).unwrap();
            let fast = exact_diameter(&g);
            let slow = floyd_warshall_diameter(&g);
            assert_eq!(fast.max_finite, slow.max_finite, "seed {seed}");
            assert_eq!(fast.strongly_connected, slow.strongly_connected, "seed {seed}");
        }
    }

    #[test]
    fn grouped_bfs_matches_plain_bfs() {
        // two cliques {0..4}, {4..8} sharing vertex 4 via biclique plus a few
        // sparse arcs
        let mut arcs: Vec<(u32, u32)> = vec![(0, 8), (8, 5)];
        let mut full = arcs.clone();
        for a in 0..4u32 {
            for b in 0..4u32 {
                if a != b {
                    full.push((a, b));
                }
            }
        }
        for a in 4..7u32 {
            for b in 7..9u32 {
                full.push((a, b));
                full.push((b, a));
            }
        }
        full.sort_unstable();
        full.dedup();
        arcs.sort_unstable();
        arcs.dedup();
        // remove group-covered arcs from sparse (0,8) is cross; (8,5) covered by biclique
        let sparse: Vec<(u32, u32)> = arcs
            .into_iter()
            .filter(|&(u, v)| !(u == 8 && v == 5))
            .collect();
        let g_full = DiGraph::from_arcs(9, full).unwrap();
        let g_sparse = DiGraph::from_arcs(9, sparse).unwrap();
        let grouped = GroupedGraph::new(
            g_sparse,
            vec![Group::Clique(0..4), Group::Biclique(4..7, 7..9)],
        );
        for s in 0..9u32 {
            assert_eq!(
                grouped.bfs(s, Direction::Forward).unwrap(),
                bfs(&g_full, s, Direction::Forward).unwrap(),
                "forward from {s}"
            );
            assert_eq!(
                grouped.bfs(s, Direction::Reverse).unwrap(),
                bfs(&g_full, s, Direction::Reverse).unwrap(),
                "reverse from {s}"
            );
        }
        assert_eq!(grouped.exact_diameter(), exact_diameter(&g_full));
    }
}
