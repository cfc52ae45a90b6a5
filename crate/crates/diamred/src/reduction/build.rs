//! Edge emission and graph assembly for both constructions.
//!
//! All five families are emitted from the vertex table in deterministic id
//! order. Undirected families produce two opposite arcs. The result carries
//! both a fully materialized CSR (unless implicit mode is chosen) and a
//! [`GroupedGraph`] that keeps the quadratic coordinate-change cliques
//! implicit, which is what makes all-sources BFS affordable on these graphs.

use super::table::{layer_shape, LpRule, VertexTable};
use super::{BuildError, VertexKind};
use crate::graph::{DiGraph, EdgeKind, Group, GroupedGraph};
use crate::kov::OvInstance;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy)]
pub struct ResourceLimits {
    pub max_vertices: u64,
    pub max_arcs: u64,
}

impl Default for ResourceLimits {
    fn default() -> Self {
        ResourceLimits {
            max_vertices: 5_000_000,
            max_arcs: 80_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    /// Keep the full arc set in memory (needed for export and arc queries).
    /// With `false`, coordinate-change cliques exist only implicitly in the
    /// grouped engine; their counts are still reported exactly.
    pub materialize: bool,
    pub limits: ResourceLimits,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            materialize: true,
            limits: ResourceLimits::default(),
        }
    }
}

/// Size accounting of one built reduction graph.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CountsReport {
    pub k: usize,
    pub d: usize,
    /// Vector count after augmentation.
    pub n_vectors: usize,
    pub variant: String,
    pub vertices: Vec<(String, u64)>,
    pub vertex_total: u64,
    pub arcs: Vec<(String, u64)>,
    pub arc_total: u64,
}

/// A built reduction graph with its id table and distance engines.
pub struct ReductionGraph {
    pub table: VertexTable,
    /// Full labeled CSR; absent in implicit mode.
    pub graph: Option<DiGraph>,
    /// Sparse arcs plus implicit coordinate-change cliques.
    pub grouped: GroupedGraph,
    pub counts: CountsReport,
}

struct Emitter {
    arcs: Vec<(u32, u32, EdgeKind)>,
    family: [u64; 7],
    keep_coord_change: bool,
    sparse: Vec<(u32, u32, EdgeKind)>,
}

impl Emitter {
    fn new(keep_coord_change: bool) -> Self {
        Emitter {
            arcs: Vec::new(),
            family: [0; 7],
            keep_coord_change,
            sparse: Vec::new(),
        }
    }

    #[inline]
    fn arc(&mut self, u: u32, v: u32, kind: EdgeKind) {
        debug_assert_ne!(u, v);
        self.family[kind_index(kind)] += 1;
        if kind == EdgeKind::CoordChange {
            if self.keep_coord_change {
                self.arcs.push((u, v, kind));
            }
        } else {
            self.arcs.push((u, v, kind));
            self.sparse.push((u, v, kind));
        }
    }

    #[inline]
    fn undirected(&mut self, u: u32, v: u32, kind: EdgeKind) {
        self.arc(u, v, kind);
        self.arc(v, u, kind);
    }

    /// Count coordinate-change arcs without storing them (implicit mode).
    fn count_coord_change(&mut self, arcs: u64) {
        self.family[kind_index(EdgeKind::CoordChange)] += arcs;
    }
}

fn kind_index(kind: EdgeKind) -> usize {
    EdgeKind::ALL.iter().position(|&k| k == kind).unwrap()
}

/// Shared builder behind [`super::general::build`] and [`super::k4::build_k4`].
pub(super) fn build_impl(
    inst: &OvInstance,
    k: usize,
    lp_rule: LpRule,
    opts: &BuildOptions,
) -> Result<ReductionGraph, BuildError> {
    if !(4..=7).contains(&k) {
        return Err(BuildError::UnsupportedK(k));
    }
    inst.validate()?;
    check_limits(inst, k, &opts.limits)?;
    let table = VertexTable::build(inst, k, lp_rule)?;
    let n = table.n_vectors;
    let a_total = table.arrays_total();
    let t_total = table.tuples_total();
    let mut em = Emitter::new(opts.materialize);

    // --- swap edges ------------------------------------------------------
    // L1 -- L2: trade the last vector for a coordinate array. The traded
    // vector keeps its staircase condition, which for role S_{k-1} is the
    // single cell a_{k-1}[x_1] = 1; dropping it would let witness pairs
    // shortcut the outer layers.
    {
        let l2 = table.range_of(VertexKind::L(2));
        for id in l2.clone() {
            let v = table.label_of(id);
            let x1 = v.coord.as_ref().unwrap()[0];
            let t = super::table::tuple_code(n, &v.a_prefix);
            for a in 0..n as u64 {
                if !inst.vectors[a as usize].coord(x1) {
                    continue;
                }
                let l1 = table.plain_id(VertexKind::L(1), t * n as u64 + a);
                em.undirected(l1, id, EdgeKind::Swap);
            }
        }
    }
    // L_i -- L_{i+1} for i = 2..k-1: replace a_{k-i} by b_{k-i+2}; the slot
    // keeps its flat position, so only one mixed-radix digit changes.
    for i in 2..k as u8 {
        let shape = layer_shape(k, i);
        let digit_weight = (n as u64).pow((i as u32) - 2);
        let range = table.range_of(VertexKind::L(i));
        for id in range {
            let v = table.label_of(id);
            let flat = v.flat_tuple();
            let old = flat[shape.prefix_len - 1] as u64;
            let t = super::table::tuple_code(n, &flat);
            let x = super::table::array_code(table.d, v.coord.as_ref().unwrap());
            for b in 0..n as u64 {
                let t2 = apply_digit(t, old, b, digit_weight);
                if let Some(to) = table.middle_id_by_codes(VertexKind::L(i + 1), t2, x) {
                    em.undirected(id, to, EdgeKind::Swap);
                }
            }
        }
    }
    // L_k -- L_{k+1}: trade the coordinate array for a leading vector; the
    // mirrored boundary condition is b_2[x_{k-1}] = 1.
    {
        let lk = table.range_of(VertexKind::L(k as u8));
        let weight = (n as u64).pow((k - 2) as u32);
        for id in lk {
            let v = table.label_of(id);
            let xlast = v.coord.as_ref().unwrap()[k - 2];
            let t = super::table::tuple_code(n, &v.b_suffix);
            for b in 0..n as u64 {
                if !inst.vectors[b as usize].coord(xlast) {
                    continue;
                }
                let last = table.plain_id(VertexKind::L(k as u8 + 1), b * weight + t);
                em.undirected(id, last, EdgeKind::Swap);
            }
        }
    }

    // --- vector-change edges ---------------------------------------------
    // Between L_i and L'_i, changing at most one of a_{k-i} (flat slot
    // prefix_len-1) or b_{k-i+3} (flat slot prefix_len). The unchanged pair
    // is emitted once, from the a-branch.
    for i in 3..k as u8 {
        let shape = layer_shape(k, i);
        let wa = (n as u64).pow((k - 2 - shape.prefix_len) as u32);
        let wb = (n as u64).pow((k - 3 - shape.prefix_len) as u32);
        for lp_id in table.range_of(VertexKind::Lp(i)) {
            let v = table.label_of(lp_id);
            let flat = v.flat_tuple();
            let t = super::table::tuple_code(n, &flat);
            let x = super::table::array_code(table.d, v.coord.as_ref().unwrap());
            let olda = flat[shape.prefix_len - 1] as u64;
            let oldb = flat[shape.prefix_len] as u64;
            for a in 0..n as u64 {
                let t2 = apply_digit(t, olda, a, wa);
                if let Some(l_id) = table.middle_id_by_codes(VertexKind::L(i), t2, x) {
                    em.undirected(lp_id, l_id, EdgeKind::VectorChange);
                }
            }
            for b in 0..n as u64 {
                if b == oldb {
                    continue;
                }
                let t2 = apply_digit(t, oldb, b, wb);
                if let Some(l_id) = table.middle_id_by_codes(VertexKind::L(i), t2, x) {
                    em.undirected(lp_id, l_id, EdgeKind::VectorChange);
                }
            }
        }
    }

    // --- coordinate-change edges -------------------------------------------
    // Within each L'_i; between L'_i and L_i; within L_2 and within L_k.
    // These are the per-tuple cliques the grouped engine keeps implicit.
    let mut groups: Vec<Group> = Vec::new();
    for i in 3..k as u8 {
        for t in 0..t_total {
            let lp_range = table.tuple_range(VertexKind::Lp(i), t);
            let l_range = table.tuple_range(VertexKind::L(i), t);
            let lp_len = lp_range.len() as u64;
            let l_len = l_range.len() as u64;
            if lp_len >= 2 {
                groups.push(Group::Clique(lp_range.clone()));
            }
            if lp_len >= 1 && l_len >= 1 {
                groups.push(Group::Biclique(lp_range.clone(), l_range.clone()));
            }
            if opts.materialize {
                let lp_members = member_ids(&table, VertexKind::Lp(i), t, a_total);
                let l_members = member_ids(&table, VertexKind::L(i), t, a_total);
                for (ai, &(ida, _)) in lp_members.iter().enumerate() {
                    for &(idb, _) in &lp_members[ai + 1..] {
                        em.undirected(ida, idb, EdgeKind::CoordChange);
                    }
                }
                for &(l_id, l_arr) in &l_members {
                    for &(lp_id, lp_arr) in &lp_members {
                        if l_arr != lp_arr {
                            em.undirected(l_id, lp_id, EdgeKind::CoordChange);
                        }
                    }
                }
            } else {
                em.count_coord_change(lp_len * lp_len.saturating_sub(1));
                let common = common_member_count(&table, i, t);
                em.count_coord_change(2 * (l_len * lp_len - common));
            }
        }
    }
    for &i in &[2u8, k as u8] {
        for t in 0..t_total {
            let l_range = table.tuple_range(VertexKind::L(i), t);
            let len = l_range.len() as u64;
            if len >= 2 {
                groups.push(Group::Clique(l_range.clone()));
            }
            if opts.materialize {
                for ida in l_range.clone() {
                    for idb in ida + 1..l_range.end {
                        em.undirected(ida, idb, EdgeKind::CoordChange);
                    }
                }
            } else {
                em.count_coord_change(len * len.saturating_sub(1));
            }
        }
    }

    // --- back edges (k >= 5 only) ---------------------------------------
    if k >= 5 {
        // a-type: every level-i vertex drops suffix and coords onto A_i ...
        for i in 4..k as u8 {
            let suffix_weight = (n as u64).pow(i as u32 - 2);
            for kind in [VertexKind::L(i), VertexKind::Lp(i)] {
                for id in table.range_of(kind) {
                    let v = table.label_of(id);
                    let t = super::table::tuple_code(n, &v.flat_tuple());
                    let a_id = table.plain_id(VertexKind::A(i), t / suffix_weight);
                    em.arc(id, a_id, EdgeKind::BackA);
                }
            }
        }
        // ... and A_i re-enters L'_4 wherever the prefixes agree.
        {
            let lp4_suffix_weight = (n as u64).pow(2);
            for id in table.range_of(VertexKind::Lp(4)) {
                let v = table.label_of(id);
                let t = super::table::tuple_code(n, &v.flat_tuple());
                let prefix = t / lp4_suffix_weight; // k-4 digits
                for i in 4..k as u8 {
                    let cut = (n as u64).pow((k - 4) as u32 - (k as u32 - i as u32));
                    let a_id = table.plain_id(VertexKind::A(i), prefix / cut);
                    em.arc(a_id, id, EdgeKind::BackA);
                }
            }
        }
        // A_{k-1} fans out to deeper A_i with the same first entry.
        for i in 4..(k - 1) as u8 {
            let range = table.range_of(VertexKind::A(i));
            for id in range.clone() {
                let local = (id - range.start) as u64;
                // A_i tuples have k-i entries; the first digit carries n^(k-i-1)
                let first = local / (n as u64).pow((k - i as usize - 1) as u32);
                let src = table.plain_id(VertexKind::A(k as u8 - 1), first);
                em.arc(src, id, EdgeKind::BackA);
            }
        }
        // b-type: B_i re-enters every level-i vertex with its suffix ...
        for i in 3..=(k - 2) as u8 {
            let suffix_weight = (n as u64).pow(i as u32 - 2);
            for kind in [VertexKind::L(i), VertexKind::Lp(i)] {
                for id in table.range_of(kind) {
                    let v = table.label_of(id);
                    let t = super::table::tuple_code(n, &v.flat_tuple());
                    let b_id = table.plain_id(VertexKind::B(i), t % suffix_weight);
                    em.arc(b_id, id, EdgeKind::BackB);
                }
            }
        }
        // ... and L'_{k-2} drops onto each B_i matching suffix tails.
        {
            let km2 = (k - 2) as u8;
            for id in table.range_of(VertexKind::Lp(km2)) {
                let v = table.label_of(id);
                let t = super::table::tuple_code(n, &v.flat_tuple());
                let suffix = t % (n as u64).pow((k - 4) as u32);
                for i in 3..=(k - 2) as u8 {
                    let b_id = table
                        .plain_id(VertexKind::B(i), suffix % (n as u64).pow(i as u32 - 2));
                    em.arc(id, b_id, EdgeKind::BackB);
                }
            }
        }
        // B_i collapses onto B_3 by its last entry.
        for i in 4..=(k - 2) as u8 {
            let range = table.range_of(VertexKind::B(i));
            for id in range.clone() {
                let local = (id - range.start) as u64;
                let b3 = table.plain_id(VertexKind::B(3), local % n as u64);
                em.arc(id, b3, EdgeKind::BackB);
            }
        }
        // ba-type: complete B_i x A_i; empty for k = 5.
        for i in 4..=(k - 2) as u8 {
            for b_id in table.range_of(VertexKind::B(i)) {
                for a_id in table.range_of(VertexKind::A(i)) {
                    em.arc(b_id, a_id, EdgeKind::BackBa);
                }
            }
        }
    }

    // --- fixed edges -------------------------------------------------------
    let u_id = table.u_id();
    let v_id = table.v_id();
    if k >= 5 {
        for id in table.range_of(VertexKind::Lp((k - 2) as u8)) {
            em.arc(id, v_id, EdgeKind::Fixed);
        }
        for id in table.range_of(VertexKind::L(1)).chain(table.range_of(VertexKind::L(2))) {
            em.arc(v_id, id, EdgeKind::Fixed);
        }
        for id in table
            .range_of(VertexKind::L(k as u8))
            .chain(table.range_of(VertexKind::L(k as u8 + 1)))
        {
            em.arc(id, u_id, EdgeKind::Fixed);
        }
        for id in table.range_of(VertexKind::Lp(4)) {
            em.arc(u_id, id, EdgeKind::Fixed);
        }
    } else {
        for id in table.range_of(VertexKind::L(3)) {
            em.arc(id, v_id, EdgeKind::Fixed);
        }
        for id in table.range_of(VertexKind::L(1)).chain(table.range_of(VertexKind::L(2))) {
            em.arc(v_id, id, EdgeKind::Fixed);
        }
        for id in table
            .range_of(VertexKind::L(4))
            .chain(table.range_of(VertexKind::L(5)))
        {
            em.arc(id, u_id, EdgeKind::Fixed);
        }
        for id in table.range_of(VertexKind::L(3)) {
            em.arc(u_id, id, EdgeKind::Fixed);
        }
    }

    // --- assemble ----------------------------------------------------------
    let nv = table.vertex_count() as usize;
    let arc_total: u64 = em.family.iter().sum();
    if arc_total > opts.limits.max_arcs {
        return Err(BuildError::ResourceCap {
            what: "arcs",
            predicted: arc_total,
            cap: opts.limits.max_arcs,
        });
    }
    let sparse = DiGraph::from_labeled_arcs(nv, std::mem::take(&mut em.sparse))?;
    let grouped = GroupedGraph::new(sparse, groups);
    let graph = if opts.materialize {
        Some(DiGraph::from_labeled_arcs(nv, std::mem::take(&mut em.arcs))?)
    } else {
        None
    };

    let counts = CountsReport {
        k,
        d: table.d,
        n_vectors: n,
        variant: match lp_rule {
            LpRule::AllArrays => "all_arrays".into(),
            LpRule::FiveOfSix => "five_of_six".into(),
        },
        vertices: table.layer_counts(),
        vertex_total: table.vertex_count() as u64,
        arcs: EdgeKind::ALL
            .iter()
            .map(|&kd| (kd.name().to_string(), em.family[kind_index(kd)]))
            .collect(),
        arc_total,
    };

    Ok(ReductionGraph {
        table,
        graph,
        grouped,
        counts,
    })
}

#[inline]
fn apply_digit(code: u64, old: u64, new: u64, weight: u64) -> u64 {
    code - old * weight + new * weight
}

fn member_ids(table: &VertexTable, kind: VertexKind, tuple: u64, _a_total: u64) -> Vec<(u32, u64)> {
    let range = table.tuple_range(kind, tuple);
    let codes = table.member_array_codes(kind, tuple);
    range.zip(codes).collect()
}

/// Array codes present in both `L_i(t)` and `L'_i(t)`.
fn common_member_count(table: &VertexTable, i: u8, tuple: u64) -> u64 {
    let l = table.member_array_codes(VertexKind::L(i), tuple);
    let lp = table.member_array_codes(VertexKind::Lp(i), tuple);
    let mut li = 0;
    let mut pi = 0;
    let mut common = 0;
    while li < l.len() && pi < lp.len() {
        match l[li].cmp(&lp[pi]) {
            std::cmp::Ordering::Less => li += 1,
            std::cmp::Ordering::Greater => pi += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                li += 1;
                pi += 1;
            }
        }
    }
    common
}

/// Conservative size prediction, checked before any allocation.
fn check_limits(inst: &OvInstance, k: usize, limits: &ResourceLimits) -> Result<(), BuildError> {
    let n = inst.vectors.len() as u64 + 1; // augmentation may add one
    let d = inst.d as u64;
    let a = d.saturating_pow(k as u32 - 1);
    let middle = n.saturating_pow(k as u32 - 2).saturating_mul(a);
    let outer = n.saturating_pow(k as u32 - 1);
    let v_worst = 2 * outer
        + middle.saturating_mul(2 * k as u64)
        + n.saturating_pow(k as u32) // generous bound on all A_i, B_i
        + 2;
    if v_worst > limits.max_vertices {
        return Err(BuildError::ResourceCap {
            what: "vertices",
            predicted: v_worst,
            cap: limits.max_vertices,
        });
    }
    // coordinate-change cliques dominate: ~3 full cliques a^2 per tuple and
    // layer, plus swaps/vector-changes at ~n per vertex
    let cc = n
        .saturating_pow(k as u32 - 2)
        .saturating_mul(a.saturating_mul(a))
        .saturating_mul(3 * k as u64);
    let sparse = v_worst.saturating_mul(2 * (n + k as u64));
    let arcs_worst = cc.saturating_add(sparse).saturating_add(4 * (outer + middle));
    if arcs_worst > limits.max_arcs.saturating_mul(8) {
        // the worst case over-counts heavily; only refuse clearly hopeless asks
        return Err(BuildError::ResourceCap {
            what: "arcs",
            predicted: arcs_worst,
            cap: limits.max_arcs.saturating_mul(8),
        });
    }
    Ok(())
}
