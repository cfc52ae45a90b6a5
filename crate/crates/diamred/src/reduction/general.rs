//! The construction for fixed `k >= 5`.
//!
//! Given an augmented instance, the graph has layers `L_1..L_{k+1}` with
//! prime copies `L'_3..L'_{k-1}`, prefix sets `A_4..A_{k-1}`, suffix sets
//! `B_3..B_{k-2}`, and hubs `u`, `v`. On NO instances every ordered pair is
//! within distance `k`; on YES instances the witness pair sits at distance
//! at least `2k - 1`.

use super::build::{build_impl, BuildOptions, ReductionGraph};
use super::table::LpRule;
use super::BuildError;
use crate::kov::OvInstance;

pub use super::table::is_valid_l_vertex;

/// Builds the `k >= 5` reduction graph for an augmented instance.
pub fn build(inst: &OvInstance, k: usize, opts: &BuildOptions) -> Result<ReductionGraph, BuildError> {
    if !(5..=7).contains(&k) {
        return Err(BuildError::UnsupportedK(k));
    }
    build_impl(inst, k, LpRule::AllArrays, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeKind;
    use crate::kov::{augment_all_ones, decide, generate, BitVec, GenMode, KovAnswer, OvInstance};
    use crate::reduction::table::{array_decode, layer_shape, tuple_decode};
    use crate::reduction::{witness_pair, ReductionVertex, VertexKind};

    fn built(n: usize, d: usize, k: usize, seed: u64, mode: GenMode) -> (OvInstance, ReductionGraph) {
        let inst = augment_all_ones(&generate(mode, n, d, k, seed, 0.7).unwrap());
        let g = build(&inst, k, &BuildOptions::default()).unwrap();
        (inst, g)
    }

    #[test]
    fn k5_has_no_ba_back_edges() {
        let (_, g) = built(1, 2, 5, 0, GenMode::Random);
        let counts = g.counts.arcs.clone();
        let ba = counts.iter().find(|(n, _)| n == "back_ba").unwrap().1;
        assert_eq!(ba, 0);
    }

    #[test]
    fn k6_has_ba_back_edges() {
        let inst = augment_all_ones(&OvInstance::new(vec![BitVec::ones(2)], 6).unwrap());
        let g = build(&inst, 6, &BuildOptions::default()).unwrap();
        let ba = g
            .counts
            .arcs
            .iter()
            .find(|(n, _)| n == "back_ba")
            .unwrap()
            .1;
        // B_4 x A_4, one node each for N = 1
        assert_eq!(ba, 1);
    }

    #[test]
    fn coordinate_clique_is_exact_within_one_lp_tuple() {
        let (_, g) = built(2, 2, 5, 9, GenMode::PlantNo);
        let a_total = g.table.arrays_total(); // d^{k-1} = 16
        let range = g.table.tuple_range(VertexKind::Lp(3), 0);
        let graph = g.graph.as_ref().unwrap();
        let mut arcs = 0u64;
        for u in range.clone() {
            for v in graph.out(u) {
                if range.contains(v) && graph.arc_kind(u, *v) == Some(EdgeKind::CoordChange) {
                    arcs += 1;
                }
            }
        }
        assert_eq!(arcs, a_total * (a_total - 1)); // 2 * C(d^{k-1}, 2)
    }

    /// Independent per-family recount: classify every ordered id pair from
    /// labels alone, transcribing the edge-set definitions directly.
    fn recount_families(
        inst: &OvInstance,
        g: &ReductionGraph,
        k: usize,
    ) -> std::collections::BTreeMap<&'static str, u64> {
        use std::collections::BTreeMap;
        let t = &g.table;
        let n_ids = t.vertex_count();
        let labels: Vec<ReductionVertex> = (0..n_ids).map(|id| t.label_of(id)).collect();
        let mut counts: BTreeMap<&'static str, u64> = BTreeMap::new();
        for (ui, a) in labels.iter().enumerate() {
            for (vi, b) in labels.iter().enumerate() {
                if ui == vi {
                    continue;
                }
                for name in classify(inst, a, b, k) {
                    *counts.entry(name).or_default() += 1;
                }
            }
        }
        counts
    }

    /// Families of the arc `a -> b`, from the construction text.
    fn classify(
        inst: &OvInstance,
        a: &ReductionVertex,
        b: &ReductionVertex,
        k: usize,
    ) -> Vec<&'static str> {
        let ku8 = k as u8;
        let mut out = vec![];
        let same_coord = a.coord == b.coord;
        let same_tuple = a.a_prefix == b.a_prefix && a.b_suffix == b.b_suffix;
        match (a.kind, b.kind) {
            // swap edges; the traded outer vector keeps its single staircase
            // cell (a_{k-1} at x_1, b_2 at x_{k-1})
            (VertexKind::L(1), VertexKind::L(2)) | (VertexKind::L(2), VertexKind::L(1)) => {
                let (one, two) = if a.kind == VertexKind::L(1) { (a, b) } else { (b, a) };
                if one.a_prefix[..k - 2] == two.a_prefix[..]
                    && inst.vectors[one.a_prefix[k - 2] as usize]
                        .coord(two.coord.as_ref().unwrap()[0])
                {
                    out.push("swap");
                }
            }
            (VertexKind::L(i), VertexKind::L(j))
                if i as usize == k && j as usize == k + 1
                    || j as usize == k && i as usize == k + 1 =>
            {
                let (kk, last) = if a.kind == VertexKind::L(ku8) { (a, b) } else { (b, a) };
                if kk.b_suffix[..] == last.b_suffix[1..]
                    && inst.vectors[last.b_suffix[0] as usize]
                        .coord(kk.coord.as_ref().unwrap()[k - 2])
                {
                    out.push("swap");
                }
            }
            (VertexKind::L(i), VertexKind::L(j))
                if (2..=ku8 - 1).contains(&i.min(j)) && i.abs_diff(j) == 1 =>
            {
                let (lo, hi) = if i < j { (a, b) } else { (b, a) };
                // lo in L_i, hi in L_{i+1}: drop lo's last prefix entry,
                // hi gains a first suffix entry
                if same_coord
                    && lo.a_prefix[..lo.a_prefix.len() - 1] == hi.a_prefix[..]
                    && lo.b_suffix[..] == hi.b_suffix[1..]
                {
                    out.push("swap");
                }
            }
            _ => {}
        }
        // vector-change: L_i <-> L'_i, same coords, at most one change among
        // the last prefix or first suffix entry
        if let (VertexKind::L(i), VertexKind::Lp(j)) | (VertexKind::Lp(j), VertexKind::L(i)) =
            (a.kind, b.kind)
        {
            if i == j && same_coord {
                let pl = a.a_prefix.len();
                let pa = &a.a_prefix[..pl - 1];
                let pb = &b.a_prefix[..pl - 1];
                let sa = &a.b_suffix[1..];
                let sb = &b.b_suffix[1..];
                if pa == pb && sa == sb {
                    let a_diff = a.a_prefix[pl - 1] != b.a_prefix[pl - 1];
                    let b_diff = a.b_suffix[0] != b.b_suffix[0];
                    if !(a_diff && b_diff) {
                        out.push("vector_change");
                    }
                }
            }
        }
        // coordinate-change: same vectors, different coords
        if same_tuple && !same_coord && a.coord.is_some() && b.coord.is_some() {
            let cc = match (a.kind, b.kind) {
                (VertexKind::Lp(i), VertexKind::Lp(j)) => i == j,
                (VertexKind::L(i), VertexKind::Lp(j)) | (VertexKind::Lp(j), VertexKind::L(i)) => {
                    i == j
                }
                (VertexKind::L(i), VertexKind::L(j)) => i == j && (i == 2 || i == ku8),
                _ => false,
            };
            if cc {
                out.push("coord_change");
            }
        }
        // back edges
        match (a.kind, b.kind) {
            (VertexKind::L(i) | VertexKind::Lp(i), VertexKind::A(j)) if i == j => {
                if a.a_prefix == b.a_prefix {
                    out.push("back_a");
                }
            }
            (VertexKind::A(_), VertexKind::Lp(4)) => {
                if b.a_prefix[..a.a_prefix.len()] == a.a_prefix[..] {
                    out.push("back_a");
                }
            }
            (VertexKind::A(i), VertexKind::A(j)) if i as usize == k - 1 && (4..ku8 - 1).contains(&(j)) => {
                if b.a_prefix[0] == a.a_prefix[0] {
                    out.push("back_a");
                }
            }
            (VertexKind::B(i), VertexKind::L(j) | VertexKind::Lp(j)) if i == j => {
                if a.b_suffix == b.b_suffix {
                    out.push("back_b");
                }
            }
            (VertexKind::Lp(i), VertexKind::B(j)) if i as usize == k - 2 => {
                let take = j as usize - 2;
                if a.b_suffix[a.b_suffix.len() - take..] == b.b_suffix[..] {
                    out.push("back_b");
                }
            }
            (VertexKind::B(i), VertexKind::B(3)) if i > 3 => {
                if a.b_suffix[a.b_suffix.len() - 1] == b.b_suffix[0] {
                    out.push("back_b");
                }
            }
            (VertexKind::B(i), VertexKind::A(j)) if i == j && (4..=ku8 - 2).contains(&i) => {
                out.push("back_ba");
            }
            _ => {}
        }
        // fixed edges
        match (a.kind, b.kind) {
            (VertexKind::Lp(i), VertexKind::V) if i as usize == k - 2 => out.push("fixed"),
            (VertexKind::V, VertexKind::L(1) | VertexKind::L(2)) => out.push("fixed"),
            (VertexKind::L(i), VertexKind::U) if i as usize == k || i as usize == k + 1 => {
                out.push("fixed")
            }
            (VertexKind::U, VertexKind::Lp(4)) => out.push("fixed"),
            _ => {}
        }
        out
    }

    #[test]
    fn per_family_arc_counts_match_independent_recount() {
        // the oracle instance: N = 3, k = 5, d = 3, a NO instance with two
        // distinct non-trivial vectors
        let inst = augment_all_ones(
            &OvInstance::new(
                vec![BitVec::parse("110").unwrap(), BitVec::parse("011").unwrap()],
                5,
            )
            .unwrap(),
        );
        let g = build(&inst, 5, &BuildOptions::default()).unwrap();
        assert_eq!(g.table.n_vectors, 3);
        let recount = recount_families(&inst, &g, 5);
        for (name, got) in &g.counts.arcs {
            let want = recount.get(name.as_str()).copied().unwrap_or(0);
            assert_eq!(*got, want, "family {name}");
        }
        // every arc in the graph is classified identically
        let graph = g.graph.as_ref().unwrap();
        let labels: Vec<_> = (0..g.table.vertex_count()).map(|i| g.table.label_of(i)).collect();
        for (u, v, kind) in graph.labeled_arcs() {
            let names = classify(&inst, &labels[u as usize], &labels[v as usize], 5);
            assert!(
                names.contains(&kind.unwrap().name()),
                "arc {u}->{v} built as {:?} but classifies as {names:?}",
                kind
            );
        }
        // asymptotic sanity: m <= c * N^{k-1} d^{2k-2} with a small c
        let m = g.counts.arc_total as f64;
        let bound = (3f64).powi(4) * (3f64).powi(8);
        assert!(m / bound < 16.0, "c = {}", m / bound);
    }

    #[test]
    fn per_layer_counts_match_filter_enumeration_oracle() {
        let (inst, g) = built(2, 3, 5, 21, GenMode::PlantNo);
        let n = g.table.n_vectors;
        // brute-force filter count per middle layer
        for i in 2..=5u8 {
            let shape = layer_shape(5, i);
            let mut count = 0u64;
            for t in 0..(n as u64).pow(3) {
                let entries = tuple_decode(n, 3, t);
                for arr in 0..(inst.d as u64).pow(4) {
                    let x = array_decode(inst.d, 4, arr);
                    let (p, s) = entries.split_at(shape.prefix_len);
                    let v = ReductionVertex::l(i, p.to_vec(), s.to_vec(), x);
                    if is_valid_l_vertex(&inst, 5, &v).unwrap() {
                        count += 1;
                    }
                }
            }
            assert_eq!(g.table.count_of(VertexKind::L(i)), count, "L{i}");
        }
    }

    #[test]
    fn monotone_in_the_vector_set() {
        // adding a vector never removes a vertex or an edge (content-wise)
        let base = generate(GenMode::PlantNo, 2, 2, 5, 4, 0.7).unwrap();
        let mut bigger = base.clone();
        bigger.vectors.push(BitVec::parse("10").unwrap());
        let gi = build(&augment_all_ones(&base), 5, &BuildOptions::default()).unwrap();
        let gj = build(&augment_all_ones(&bigger), 5, &BuildOptions::default()).unwrap();
        assert!(gj.counts.vertex_total >= gi.counts.vertex_total);
        for ((name_i, c_i), (name_j, c_j)) in g_pairs(&gi, &gj) {
            assert_eq!(name_i, name_j);
            assert!(c_j >= c_i, "family {name_i}: {c_j} < {c_i}");
        }
    }

    fn g_pairs<'a>(
        gi: &'a ReductionGraph,
        gj: &'a ReductionGraph,
    ) -> impl Iterator<Item = (&'a (String, u64), &'a (String, u64))> {
        gi.counts.arcs.iter().zip(gj.counts.arcs.iter()).map(|(x, y)| {
            ((x, y))
        })
    }

    #[test]
    fn witness_pair_requires_orthogonality() {
        let inst = augment_all_ones(&generate(GenMode::PlantNo, 2, 3, 5, 21, 0.7).unwrap());
        let g = build(&inst, 5, &BuildOptions::default()).unwrap();
        match decide(&inst) {
            KovAnswer::No => {}
            other => panic!("expected NO, got {other:?}"),
        }
        assert!(witness_pair(&inst, &g.table, &[0, 0, 0, 0, 0]).is_err());
    }
}
