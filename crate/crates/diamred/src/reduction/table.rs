//! Dense vertex ids for the reduction layers.
//!
//! Ids are grouped in blocks, one per layer, in a fixed order:
//! `L1, L2, ..., L{k+1}, L'3, ..., L'{k-1}, A4, ..., A{k-1}, B3, ..., B{k-2},
//! u, v`. Within a block, vertices are ordered by mixed-radix code
//! (vector tuple big-endian base `N`, then coordinate array big-endian base
//! `d`), so the vertices of one tuple always form a contiguous id range.
//! Constrained layers keep a full-radix lookup table for O(1) id queries.

use super::{BuildError, ReductionVertex, VertexKind};
use crate::kov::{Coord, OvInstance, VecIdx};
use serde::{Deserialize, Serialize};

const ABSENT: u32 = u32::MAX;

/// Membership rule for a prime layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpRule {
    /// Every coordinate array (the `k >= 5` construction, and the relaxed
    /// `k = 4` variant).
    AllArrays,
    /// At least 5 of the 6 hit conditions on `(a_1, b_4, x)` hold
    /// (the stock `k = 4` construction).
    FiveOfSix,
}

#[derive(Debug, Clone)]
struct Filtered {
    /// Sorted full codes (`tuple_code * arrays_total + array_code`) of members.
    codes: Vec<u64>,
    /// Full-radix code -> local id, `ABSENT` for non-members.
    lookup: Vec<u32>,
    /// Per tuple code: index of the tuple's first member in `codes`.
    tuple_offsets: Vec<u32>,
}

#[derive(Debug, Clone)]
struct Block {
    kind: VertexKind,
    base: u32,
    len: u32,
    filt: Option<Filtered>,
}

/// Shapes of one middle layer `L_i` / `L'_i`.
#[derive(Debug, Clone, Copy)]
pub struct LayerShape {
    pub prefix_len: usize,
    pub suffix_len: usize,
}

pub fn layer_shape(k: usize, i: u8) -> LayerShape {
    let i = i as usize;
    debug_assert!((2..=k).contains(&i));
    LayerShape {
        prefix_len: k - i,
        suffix_len: i - 2,
    }
}

/// Id table for one built construction.
#[derive(Debug, Clone)]
pub struct VertexTable {
    pub k: usize,
    pub d: usize,
    /// Vector count N of the augmented instance.
    pub n_vectors: usize,
    pub all_ones: VecIdx,
    pub lp_rule: LpRule,
    arrays_total: u64,
    tuples_total: u64,
    blocks: Vec<Block>,
    total: u32,
}

fn pow(base: usize, exp: usize) -> u64 {
    (base as u64).pow(exp as u32)
}

pub fn tuple_code(n: usize, entries: &[VecIdx]) -> u64 {
    let mut c = 0u64;
    for &e in entries {
        debug_assert!((e as usize) < n);
        c = c * n as u64 + e as u64;
    }
    c
}

pub fn tuple_decode(n: usize, len: usize, mut code: u64) -> Vec<VecIdx> {
    let mut out = vec![0 as VecIdx; len];
    for slot in out.iter_mut().rev() {
        *slot = (code % n as u64) as VecIdx;
        code /= n as u64;
    }
    out
}

pub fn array_code(d: usize, x: &[Coord]) -> u64 {
    let mut c = 0u64;
    for &e in x {
        debug_assert!(e >= 1 && e as usize <= d);
        c = c * d as u64 + (e as u64 - 1);
    }
    c
}

pub fn array_decode(d: usize, len: usize, mut code: u64) -> Vec<Coord> {
    let mut out = vec![0 as Coord; len];
    for slot in out.iter_mut().rev() {
        *slot = (code % d as u64) as Coord + 1;
        code /= d as u64;
    }
    out
}

/// Direct transcription of the two layer-membership clauses: a vertex
/// `(a_1..a_{k-i}, b_{k-i+3}..b_k, x)` lies in `L_i` iff
/// (1) `a_j[x_l] = 1` for every `j <= k-i` and every `l <= k-j`, and
/// (2) `b_j[x_l] = 1` for every `j >= k-i+3` and every `l >= k-j+1`.
pub fn is_valid_l_vertex(
    inst: &OvInstance,
    k: usize,
    v: &ReductionVertex,
) -> Result<bool, BuildError> {
    let VertexKind::L(i) = v.kind else {
        return Err(BuildError::Instance(crate::kov::KovError::BadParams(
            format!("is_valid_l_vertex expects an L-layer vertex, got {}", v.kind.name()),
        )));
    };
    let i = i as usize;
    if !(2..=k).contains(&i) {
        return Err(BuildError::Instance(crate::kov::KovError::BadParams(
            format!("layer index {i} out of range 2..={k}"),
        )));
    }
    let shape = layer_shape(k, i as u8);
    let x = v.coord.as_ref().ok_or_else(|| {
        BuildError::Instance(crate::kov::KovError::BadParams(
            "middle-layer vertex needs a coordinate array".into(),
        ))
    })?;
    if v.a_prefix.len() != shape.prefix_len
        || v.b_suffix.len() != shape.suffix_len
        || x.len() != k - 1
    {
        return Err(BuildError::Instance(crate::kov::KovError::BadParams(
            "vertex payload shape does not match its layer".into(),
        )));
    }
    for (j0, &a) in v.a_prefix.iter().enumerate() {
        let j = j0 + 1; // role S_j
        for l in 1..=(k - j) {
            if !inst.vectors[a as usize].coord(x[l - 1]) {
                return Ok(false);
            }
        }
    }
    for (p, &b) in v.b_suffix.iter().enumerate() {
        let j = (k - i + 3) + p; // role S_j
        for l in (k - j + 1)..=(k - 1) {
            if !inst.vectors[b as usize].coord(x[l - 1]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Number of satisfied hit conditions among `a1[x_l] = 1` and `b4[x_l] = 1`
/// for the three array positions; `L'_3` membership at `k = 4` requires at
/// least 5.
pub fn l3p_condition_count(inst: &OvInstance, a1: VecIdx, b4: VecIdx, x: &[Coord]) -> u32 {
    debug_assert_eq!(x.len(), 3);
    let mut count = 0;
    for &c in x {
        if inst.vectors[a1 as usize].coord(c) {
            count += 1;
        }
        if inst.vectors[b4 as usize].coord(c) {
            count += 1;
        }
    }
    count
}

impl VertexTable {
    /// Enumerates every vertex of the construction for an augmented instance.
    pub fn build(inst: &OvInstance, k: usize, lp_rule: LpRule) -> Result<Self, BuildError> {
        let n = inst.vectors.len();
        let d = inst.d;
        let all_ones = inst.all_ones_index().ok_or(BuildError::NotAugmented)?;
        let arrays_total = pow(d, k - 1);
        let tuples_total = pow(n, k - 2);

        let mut blocks: Vec<Block> = Vec::new();
        let mut base = 0u32;
        let mut push = |kind: VertexKind, len: u64, filt: Option<Filtered>, base: &mut u32| {
            let len = u32::try_from(len).expect("layer size fits u32");
            blocks.push(Block {
                kind,
                base: *base,
                len,
                filt,
            });
            *base += len;
        };

        push(VertexKind::L(1), pow(n, k - 1), None, &mut base);
        for i in 2..=k as u8 {
            let filt = enumerate_l_layer(inst, k, i);
            push(VertexKind::L(i), filt.codes.len() as u64, Some(filt), &mut base);
        }
        push(VertexKind::L(k as u8 + 1), pow(n, k - 1), None, &mut base);
        for i in 3..=(k - 1) as u8 {
            match lp_rule {
                LpRule::AllArrays => {
                    push(VertexKind::Lp(i), tuples_total * arrays_total, None, &mut base)
                }
                LpRule::FiveOfSix => {
                    debug_assert_eq!(k, 4);
                    let filt = enumerate_l3p_five_of_six(inst);
                    push(VertexKind::Lp(i), filt.codes.len() as u64, Some(filt), &mut base);
                }
            }
        }
        if k >= 5 {
            for i in 4..=(k - 1) as u8 {
                push(VertexKind::A(i), pow(n, k - i as usize), None, &mut base);
            }
            for i in 3..=(k - 2) as u8 {
                push(VertexKind::B(i), pow(n, i as usize - 2), None, &mut base);
            }
        }
        push(VertexKind::U, 1, None, &mut base);
        push(VertexKind::V, 1, None, &mut base);

        Ok(VertexTable {
            k,
            d,
            n_vectors: n,
            all_ones,
            lp_rule,
            arrays_total,
            tuples_total,
            blocks,
            total: base,
        })
    }

    pub fn vertex_count(&self) -> u32 {
        self.total
    }

    pub fn arrays_total(&self) -> u64 {
        self.arrays_total
    }

    pub fn tuples_total(&self) -> u64 {
        self.tuples_total
    }

    fn block(&self, kind: VertexKind) -> Option<&Block> {
        self.blocks.iter().find(|b| b.kind == kind)
    }

    pub fn has_kind(&self, kind: VertexKind) -> bool {
        self.block(kind).is_some()
    }

    pub fn kinds(&self) -> impl Iterator<Item = (VertexKind, u32)> + '_ {
        self.blocks.iter().map(|b| (b.kind, b.len))
    }

    pub fn range_of(&self, kind: VertexKind) -> std::ops::Range<u32> {
        let b = self.block(kind).unwrap_or_else(|| panic!("no block {}", kind.name()));
        b.base..b.base + b.len
    }

    pub fn count_of(&self, kind: VertexKind) -> u64 {
        self.block(kind).map(|b| b.len as u64).unwrap_or(0)
    }

    pub fn u_id(&self) -> u32 {
        self.range_of(VertexKind::U).start
    }

    pub fn v_id(&self) -> u32 {
        self.range_of(VertexKind::V).start
    }

    /// Contiguous id range of one tuple inside a middle layer.
    pub fn tuple_range(&self, kind: VertexKind, tuple: u64) -> std::ops::Range<u32> {
        let b = self.block(kind).expect("layer exists");
        match &b.filt {
            None => {
                let start = b.base as u64 + tuple * self.arrays_total;
                (start as u32)..(start + self.arrays_total) as u32
            }
            Some(f) => {
                let lo = f.tuple_offsets[tuple as usize];
                let hi = f.tuple_offsets[tuple as usize + 1];
                b.base + lo..b.base + hi
            }
        }
    }

    /// Sorted member array codes of one tuple in a filtered layer; for
    /// unfiltered layers every array code is a member.
    pub fn member_array_codes(&self, kind: VertexKind, tuple: u64) -> Vec<u64> {
        let b = self.block(kind).expect("layer exists");
        match &b.filt {
            None => (0..self.arrays_total).collect(),
            Some(f) => {
                let lo = f.tuple_offsets[tuple as usize] as usize;
                let hi = f.tuple_offsets[tuple as usize + 1] as usize;
                f.codes[lo..hi]
                    .iter()
                    .map(|&c| c % self.arrays_total)
                    .collect()
            }
        }
    }

    /// Id of a middle-layer vertex given its tuple and array codes; avoids
    /// label churn in the edge-emission loops.
    pub fn middle_id_by_codes(&self, kind: VertexKind, tuple: u64, array: u64) -> Option<u32> {
        debug_assert!(matches!(kind, VertexKind::L(_) | VertexKind::Lp(_)));
        let b = self.block(kind)?;
        let code = tuple * self.arrays_total + array;
        match &b.filt {
            None => Some(b.base + code as u32),
            Some(f) => {
                let local = f.lookup[code as usize];
                (local != ABSENT).then(|| b.base + local)
            }
        }
    }

    /// Id of a vertex in an unfiltered block given its local code.
    pub fn plain_id(&self, kind: VertexKind, local: u64) -> u32 {
        let b = self.block(kind).expect("block exists");
        debug_assert!(b.filt.is_none() && local < b.len as u64);
        b.base + local as u32
    }

    /// Id of a labeled vertex; `None` when the label fails its layer's
    /// membership rule (or shapes are off).
    pub fn id_of(&self, v: &ReductionVertex) -> Option<u32> {
        let n = self.n_vectors;
        let b = self.block(v.kind)?;
        let local: u64 = match v.kind {
            VertexKind::U | VertexKind::V => 0,
            VertexKind::L(1) => {
                if v.a_prefix.len() != self.k - 1 || v.coord.is_some() {
                    return None;
                }
                tuple_code(n, &v.a_prefix)
            }
            VertexKind::L(i) if i as usize == self.k + 1 => {
                if v.b_suffix.len() != self.k - 1 || v.coord.is_some() {
                    return None;
                }
                tuple_code(n, &v.b_suffix)
            }
            VertexKind::L(i) | VertexKind::Lp(i) => {
                let shape = layer_shape(self.k, i);
                if v.a_prefix.len() != shape.prefix_len || v.b_suffix.len() != shape.suffix_len {
                    return None;
                }
                let x = v.coord.as_ref()?;
                if x.len() != self.k - 1
                    || x.iter().any(|&c| c < 1 || c as usize > self.d)
                {
                    return None;
                }
                let code = tuple_code(n, &v.flat_tuple()) * self.arrays_total
                    + array_code(self.d, x);
                match &b.filt {
                    None => code,
                    Some(f) => {
                        let local = f.lookup[code as usize];
                        if local == ABSENT {
                            return None;
                        }
                        local as u64
                    }
                }
            }
            VertexKind::A(i) => {
                if v.a_prefix.len() != self.k - i as usize {
                    return None;
                }
                tuple_code(n, &v.a_prefix)
            }
            VertexKind::B(i) => {
                if v.b_suffix.len() != i as usize - 2 {
                    return None;
                }
                tuple_code(n, &v.b_suffix)
            }
        };
        if local >= b.len as u64 {
            return None;
        }
        Some(b.base + local as u32)
    }

    pub fn kind_of(&self, id: u32) -> VertexKind {
        self.block_of(id).kind
    }

    fn block_of(&self, id: u32) -> &Block {
        debug_assert!(id < self.total);
        let pos = self
            .blocks
            .partition_point(|b| b.base + b.len <= id);
        &self.blocks[pos]
    }

    pub fn label_of(&self, id: u32) -> ReductionVertex {
        let b = self.block_of(id);
        let local = (id - b.base) as u64;
        let n = self.n_vectors;
        match b.kind {
            VertexKind::U => ReductionVertex::u(),
            VertexKind::V => ReductionVertex::v(),
            VertexKind::L(1) => ReductionVertex::l1(tuple_decode(n, self.k - 1, local)),
            VertexKind::L(i) if i as usize == self.k + 1 => {
                ReductionVertex::l_last(self.k, tuple_decode(n, self.k - 1, local))
            }
            VertexKind::L(i) | VertexKind::Lp(i) => {
                let code = match &b.filt {
                    None => local,
                    Some(f) => f.codes[local as usize],
                };
                let shape = layer_shape(self.k, i);
                let tuple = tuple_decode(n, self.k - 2, code / self.arrays_total);
                let x = array_decode(self.d, self.k - 1, code % self.arrays_total);
                let (p, s) = tuple.split_at(shape.prefix_len);
                if matches!(b.kind, VertexKind::L(_)) {
                    ReductionVertex::l(i, p.to_vec(), s.to_vec(), x)
                } else {
                    ReductionVertex::lp(i, p.to_vec(), s.to_vec(), x)
                }
            }
            VertexKind::A(i) => {
                ReductionVertex::a(i, tuple_decode(n, self.k - i as usize, local))
            }
            VertexKind::B(i) => {
                ReductionVertex::b(i, tuple_decode(n, i as usize - 2, local))
            }
        }
    }

    /// Per-layer vertex counts in block order.
    pub fn layer_counts(&self) -> Vec<(String, u64)> {
        self.blocks
            .iter()
            .map(|b| (b.kind.name(), b.len as u64))
            .collect()
    }
}

/// Valid coordinate arrays of one middle layer, tuple by tuple, via the
/// per-position hit masks: position `l` of the array must be a common
/// 1-coordinate of prefix roles `j <= min(k-i, k-l)` and suffix roles
/// `j >= max(k-i+3, k-l+1)`.
fn enumerate_l_layer(inst: &OvInstance, k: usize, i: u8) -> Filtered {
    let n = inst.vectors.len();
    let d = inst.d;
    let shape = layer_shape(k, i);
    let arrays_total = pow(d, k - 1);
    let tuples_total = pow(n, k - 2);

    let mut codes: Vec<u64> = Vec::new();
    let mut tuple_offsets: Vec<u32> = Vec::with_capacity(tuples_total as usize + 1);
    let mut lookup = vec![ABSENT; (tuples_total * arrays_total) as usize];

    let mut allowed: Vec<Vec<u64>> = vec![Vec::new(); k - 1];
    for tuple in 0..tuples_total {
        tuple_offsets.push(codes.len() as u32);
        let entries = tuple_decode(n, k - 2, tuple);
        let mut empty = false;
        for l in 1..=(k - 1) {
            let slot = &mut allowed[l - 1];
            slot.clear();
            'coords: for c in 1..=d {
                // prefix roles S_j for j = 1 ..= min(k-i, k-l)
                let pmax = shape.prefix_len.min(k - l);
                for &e in &entries[..pmax] {
                    if !inst.vectors[e as usize].get(c - 1) {
                        continue 'coords;
                    }
                }
                // suffix roles S_j for j = max(k-i+3, k-l+1) ..= k
                let jmin = (k - i as usize + 3).max(k - l + 1);
                for (p, &e) in entries[shape.prefix_len..].iter().enumerate() {
                    let j = (k - i as usize + 3) + p;
                    if j >= jmin && !inst.vectors[e as usize].get(c - 1) {
                        continue 'coords;
                    }
                }
                slot.push(c as u64 - 1);
            }
            if slot.is_empty() {
                empty = true;
                break;
            }
        }
        if empty {
            continue;
        }
        // odometer over allowed digits, big-endian so codes come out sorted
        let mut pick = vec![0usize; k - 1];
        'arrays: loop {
            let mut array = 0u64;
            for (l, &p) in pick.iter().enumerate() {
                array = array * d as u64 + allowed[l][p];
            }
            let code = tuple * arrays_total + array;
            lookup[code as usize] = codes.len() as u32;
            codes.push(code);
            let mut pos = k - 1;
            while pos > 0 {
                pos -= 1;
                pick[pos] += 1;
                if pick[pos] < allowed[pos].len() {
                    continue 'arrays;
                }
                pick[pos] = 0;
            }
            break;
        }
    }
    tuple_offsets.push(codes.len() as u32);
    Filtered {
        codes,
        lookup,
        tuple_offsets,
    }
}

/// `k = 4` five-of-six membership for `L'_3`.
fn enumerate_l3p_five_of_six(inst: &OvInstance) -> Filtered {
    let k = 4;
    let n = inst.vectors.len();
    let d = inst.d;
    let arrays_total = pow(d, k - 1);
    let tuples_total = pow(n, k - 2);
    let mut codes = Vec::new();
    let mut tuple_offsets = Vec::with_capacity(tuples_total as usize + 1);
    let mut lookup = vec![ABSENT; (tuples_total * arrays_total) as usize];
    for tuple in 0..tuples_total {
        tuple_offsets.push(codes.len() as u32);
        let entries = tuple_decode(n, k - 2, tuple);
        let (a1, b4) = (entries[0], entries[1]);
        for array in 0..arrays_total {
            let x = array_decode(d, k - 1, array);
            if l3p_condition_count(inst, a1, b4, &x) >= 5 {
                let code = tuple * arrays_total + array;
                lookup[code as usize] = codes.len() as u32;
                codes.push(code);
            }
        }
    }
    tuple_offsets.push(codes.len() as u32);
    Filtered {
        codes,
        lookup,
        tuple_offsets,
    }
}
