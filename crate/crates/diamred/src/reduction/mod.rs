//! Layered k-OV -> Diameter reduction graphs.
//!
//! [`general`] builds the construction for any fixed `k >= 5`; [`k4`] builds
//! the Bonnet-style `k = 4` variant. Both share the vertex table, edge
//! families, and builder in [`table`] and [`build`].
//!
//! Layers, for arity `k`:
//! * `L1` holds (k-1)-tuples `(a_1, ..., a_{k-1})`, `L{k+1}` holds
//!   `(b_2, ..., b_k)`.
//! * `L_i` for `2 <= i <= k` holds `(a_1..a_{k-i}, b_{k-i+3}..b_k, x)` where
//!   the coordinate array `x` of length `k-1` must hit 1-entries of the tuple
//!   vectors in a staircase pattern.
//! * `Lp_i` (written `L'_i`) for `3 <= i <= k-1` is the same shape with `x`
//!   unconstrained (for `k = 4`, `L'_3` instead keeps arrays satisfying at
//!   least 5 of 6 hit conditions unless the relaxed variant is chosen).
//! * `A_i` holds bare prefixes, `B_i` bare suffixes, plus two hub vertices
//!   `u` and `v`.

pub mod build;
pub mod general;
pub mod k4;
pub mod table;

use crate::graph::EdgeKind;
use crate::kov::{Coord, VecIdx};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use build::{BuildOptions, ReductionGraph, ResourceLimits};
pub use table::{LpRule, VertexTable};

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("unsupported k = {0}; supported range is 4..=7")]
    UnsupportedK(usize),
    #[error("instance is not augmented with the all-ones vector")]
    NotAugmented,
    #[error("instance error: {0}")]
    Instance(#[from] crate::kov::KovError),
    #[error("graph error: {0}")]
    Graph(#[from] crate::graph::GraphError),
    #[error("resource cap exceeded: predicted {what} {predicted} > cap {cap}")]
    ResourceCap {
        what: &'static str,
        predicted: u64,
        cap: u64,
    },
}

/// Which set a vertex belongs to. `L(1)` and `L(k+1)` are the outer layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexKind {
    L(u8),
    Lp(u8),
    A(u8),
    B(u8),
    U,
    V,
}

impl VertexKind {
    pub fn name(self) -> String {
        match self {
            VertexKind::L(i) => format!("L{i}"),
            VertexKind::Lp(i) => format!("L'{i}"),
            VertexKind::A(i) => format!("A{i}"),
            VertexKind::B(i) => format!("B{i}"),
            VertexKind::U => "u".into(),
            VertexKind::V => "v".into(),
        }
    }

    /// Level in the paper's sense: `L_i`, `L'_i`, `A_i`, `B_i` all sit at
    /// level `i`; `u`/`v` have none.
    pub fn level(self) -> Option<u8> {
        match self {
            VertexKind::L(i) | VertexKind::Lp(i) | VertexKind::A(i) | VertexKind::B(i) => Some(i),
            _ => None,
        }
    }
}

/// A fully described reduction vertex. Prefix entries play roles
/// `S_1..S_{k-i}`, suffix entries `S_{k-i+3}..S_k` (for `L(k+1)`:
/// `S_2..S_k`), all indexing one shared augmented vector list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReductionVertex {
    pub kind: VertexKind,
    pub a_prefix: Vec<VecIdx>,
    pub b_suffix: Vec<VecIdx>,
    pub coord: Option<Vec<Coord>>,
}

impl ReductionVertex {
    pub fn u() -> Self {
        ReductionVertex {
            kind: VertexKind::U,
            a_prefix: vec![],
            b_suffix: vec![],
            coord: None,
        }
    }

    pub fn v() -> Self {
        ReductionVertex {
            kind: VertexKind::V,
            a_prefix: vec![],
            b_suffix: vec![],
            coord: None,
        }
    }

    pub fn l1(prefix: Vec<VecIdx>) -> Self {
        ReductionVertex {
            kind: VertexKind::L(1),
            a_prefix: prefix,
            b_suffix: vec![],
            coord: None,
        }
    }

    pub fn l_last(k: usize, suffix: Vec<VecIdx>) -> Self {
        ReductionVertex {
            kind: VertexKind::L(k as u8 + 1),
            a_prefix: vec![],
            b_suffix: suffix,
            coord: None,
        }
    }

    pub fn l(i: u8, prefix: Vec<VecIdx>, suffix: Vec<VecIdx>, x: Vec<Coord>) -> Self {
        ReductionVertex {
            kind: VertexKind::L(i),
            a_prefix: prefix,
            b_suffix: suffix,
            coord: Some(x),
        }
    }

    pub fn lp(i: u8, prefix: Vec<VecIdx>, suffix: Vec<VecIdx>, x: Vec<Coord>) -> Self {
        ReductionVertex {
            kind: VertexKind::Lp(i),
            a_prefix: prefix,
            b_suffix: suffix,
            coord: Some(x),
        }
    }

    pub fn a(i: u8, prefix: Vec<VecIdx>) -> Self {
        ReductionVertex {
            kind: VertexKind::A(i),
            a_prefix: prefix,
            b_suffix: vec![],
            coord: None,
        }
    }

    pub fn b(i: u8, suffix: Vec<VecIdx>) -> Self {
        ReductionVertex {
            kind: VertexKind::B(i),
            a_prefix: vec![],
            b_suffix: suffix,
            coord: None,
        }
    }

    /// All tuple entries in canonical order (prefix then suffix).
    pub fn flat_tuple(&self) -> Vec<VecIdx> {
        let mut t = self.a_prefix.clone();
        t.extend_from_slice(&self.b_suffix);
        t
    }
}

impl std::fmt::Display for ReductionVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fn join<T: std::fmt::Display>(xs: &[T]) -> String {
            xs.iter()
                .map(T::to_string)
                .collect::<Vec<_>>()
                .join(",")
        }
        match self.kind {
            VertexKind::U => write!(f, "u"),
            VertexKind::V => write!(f, "v"),
            kind => {
                write!(f, "{}", kind.name())?;
                write!(f, " a=[{}]", join(&self.a_prefix))?;
                write!(f, " b=[{}]", join(&self.b_suffix))?;
                if let Some(x) = &self.coord {
                    write!(f, " x=[{}]", join(x))?;
                }
                Ok(())
            }
        }
    }
}

impl std::str::FromStr for ReductionVertex {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "u" {
            return Ok(ReductionVertex::u());
        }
        if s == "v" {
            return Ok(ReductionVertex::v());
        }
        let mut parts = s.split_whitespace();
        let head = parts.next().ok_or("empty vertex description")?;
        let kind = if let Some(rest) = head.strip_prefix("L'") {
            VertexKind::Lp(rest.parse().map_err(|e| format!("bad level: {e}"))?)
        } else if let Some(rest) = head.strip_prefix('L') {
            VertexKind::L(rest.parse().map_err(|e| format!("bad level: {e}"))?)
        } else if let Some(rest) = head.strip_prefix('A') {
            VertexKind::A(rest.parse().map_err(|e| format!("bad level: {e}"))?)
        } else if let Some(rest) = head.strip_prefix('B') {
            VertexKind::B(rest.parse().map_err(|e| format!("bad level: {e}"))?)
        } else {
            return Err(format!("unknown vertex kind in {s:?}"));
        };
        let mut a = vec![];
        let mut b = vec![];
        let mut x: Option<Vec<Coord>> = None;
        for part in parts {
            let (key, val) = part
                .split_once("=[")
                .ok_or_else(|| format!("malformed field {part:?}"))?;
            let val = val.strip_suffix(']').ok_or_else(|| format!("missing ] in {part:?}"))?;
            let nums: Result<Vec<u64>, _> = if val.is_empty() {
                Ok(vec![])
            } else {
                val.split(',').map(str::parse::<u64>).collect()
            };
            let nums = nums.map_err(|e| format!("bad number in {part:?}: {e}"))?;
            match key {
                "a" => a = nums.iter().map(|&n| n as VecIdx).collect(),
                "b" => b = nums.iter().map(|&n| n as VecIdx).collect(),
                "x" => x = Some(nums.iter().map(|&n| n as Coord).collect()),
                other => return Err(format!("unknown field {other:?}")),
            }
        }
        Ok(ReductionVertex {
            kind,
            a_prefix: a,
            b_suffix: b,
            coord: x,
        })
    }
}

/// The role-reversing anti-automorphism of the construction: reading the
/// graph backwards with prefix and suffix roles exchanged maps layer `i` to
/// layer `k + 2 - i`, `A_i` to `B_{k+2-i}`, `u` to `v`, and every arc
/// `p -> q` to the arc `sigma(q) -> sigma(p)` of the mirrored family.
pub fn sigma_vertex(k: usize, v: &ReductionVertex) -> ReductionVertex {
    let mirror_level = |i: u8| (k as u8 + 2) - i;
    let rev = |xs: &[VecIdx]| xs.iter().rev().copied().collect::<Vec<_>>();
    match v.kind {
        VertexKind::U => ReductionVertex::v(),
        VertexKind::V => ReductionVertex::u(),
        VertexKind::L(1) => ReductionVertex::l_last(k, rev(&v.a_prefix)),
        VertexKind::L(i) if i as usize == k + 1 => ReductionVertex::l1(rev(&v.b_suffix)),
        VertexKind::L(i) => ReductionVertex::l(
            mirror_level(i),
            rev(&v.b_suffix),
            rev(&v.a_prefix),
            v.coord
                .as_ref()
                .map(|x| x.iter().rev().copied().collect())
                .expect("middle layer has coords"),
        ),
        VertexKind::Lp(i) => ReductionVertex::lp(
            mirror_level(i),
            rev(&v.b_suffix),
            rev(&v.a_prefix),
            v.coord
                .as_ref()
                .map(|x| x.iter().rev().copied().collect())
                .expect("prime layer has coords"),
        ),
        VertexKind::A(i) => ReductionVertex::b(mirror_level(i), rev(&v.a_prefix)),
        VertexKind::B(i) => ReductionVertex::a(mirror_level(i), rev(&v.b_suffix)),
    }
}

/// Mirror image of an edge family under [`sigma_vertex`].
pub fn sigma_kind(kind: EdgeKind) -> EdgeKind {
    match kind {
        EdgeKind::BackA => EdgeKind::BackB,
        EdgeKind::BackB => EdgeKind::BackA,
        other => other,
    }
}

/// The witness pair of an orthogonal k-tuple `(w_1, ..., w_k)`:
/// `alpha = (w_1, ..., w_{k-1})` in `L1` and `beta = (w_2, ..., w_k)` in
/// `L{k+1}`. On YES instances their distance is at least `2k - 1`.
pub fn witness_pair(
    inst: &crate::kov::OvInstance,
    table: &VertexTable,
    witness: &[VecIdx],
) -> Result<(u32, u32), BuildError> {
    let k = table.k;
    if witness.len() != k {
        return Err(BuildError::Instance(crate::kov::KovError::BadParams(
            format!("witness must have exactly k = {k} entries"),
        )));
    }
    if crate::kov::common_one_of_indices(inst, witness).is_some() {
        return Err(BuildError::Instance(crate::kov::KovError::BadParams(
            "witness tuple is not orthogonal".into(),
        )));
    }
    let alpha = ReductionVertex::l1(witness[..k - 1].to_vec());
    let beta = ReductionVertex::l_last(k, witness[1..].to_vec());
    let a = table.id_of(&alpha).expect("L1 tuples always exist");
    let b = table.id_of(&beta).expect("L(k+1) tuples always exist");
    Ok((a, b))
}
