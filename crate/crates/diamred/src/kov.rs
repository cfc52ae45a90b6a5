//! k-Orthogonal-Vectors instances: representation, brute-force decision,
//! planted generation, and common-1 coordinates.
//!
//! An instance is a set `S` of 0/1 vectors of dimension `d` together with an
//! arity `k`. The instance is a YES instance when some `k` vectors
//! `v_1, ..., v_k` drawn from `S` (repetition allowed) have generalized inner
//! product zero, i.e. no coordinate is 1 in all of them.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// 1-based coordinate index into a bit-vector, in `1..=d`.
pub type Coord = u16;

/// Index of a vector within an instance's vector list.
pub type VecIdx = u16;

/// Default retry budget for planted generation.
pub const DEFAULT_RETRY_BUDGET: usize = 10_000;

/// Default one-bias for random bits.
pub const DEFAULT_ONES_BIAS: f64 = 0.7;

#[derive(Debug, Error)]
pub enum KovError {
    #[error("instance has no vectors")]
    Empty,
    #[error("vector {index} has length {got}, expected d = {expected}")]
    DimensionMismatch {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("generation budget of {budget} samples exhausted; unsatisfied predicate: {predicate}")]
    BudgetExhausted { budget: usize, predicate: String },
}

/// A packed 0/1 vector of fixed dimension.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    d: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(d: usize) -> Self {
        BitVec {
            d,
            words: vec![0; d.div_ceil(64)],
        }
    }

    pub fn ones(d: usize) -> Self {
        let mut v = Self::zeros(d);
        for i in 0..d {
            v.set(i, true);
        }
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Parses a string of `0`/`1` characters, leftmost character = coordinate 1.
    pub fn parse(s: &str) -> Result<Self, KovError> {
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(KovError::BadParams(format!(
                        "invalid character {other:?} in vector string"
                    )))
                }
            }
        }
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Bit at 0-based position `i`.
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.d);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.d);
        if b {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    /// Bit at 1-based coordinate `c`.
    pub fn coord(&self, c: Coord) -> bool {
        self.get(c as usize - 1)
    }

    pub fn is_all_ones(&self) -> bool {
        (0..self.d).all(|i| self.get(i))
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn and_assign(&mut self, other: &BitVec) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    /// Smallest 1-based coordinate that is set, if any.
    fn first_one(&self) -> Option<Coord> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                let c = wi * 64 + w.trailing_zeros() as usize;
                if c < self.d {
                    return Some((c + 1) as Coord);
                }
            }
        }
        None
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.d).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitVec({})", self.to_bit_string())
    }
}

/// The answer of a k-OV decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum KovAnswer {
    /// A witness tuple of vector indices (repetition allowed), lexicographically
    /// first among all orthogonal tuples.
    Yes(Vec<VecIdx>),
    No,
}

impl KovAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, KovAnswer::Yes(_))
    }
}

/// How `generate` picks its instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenMode {
    Random,
    PlantYes,
    PlantNo,
}

impl std::str::FromStr for GenMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "random" => Ok(GenMode::Random),
            "plant_yes" | "plant-yes" | "yes" => Ok(GenMode::PlantYes),
            "plant_no" | "plant-no" | "no" => Ok(GenMode::PlantNo),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// A k-OV instance: the vector set `S` plus the arity `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OvInstance {
    pub vectors: Vec<BitVec>,
    pub d: usize,
    pub k: usize,
    pub seed: Option<u64>,
}

impl OvInstance {
    pub fn new(vectors: Vec<BitVec>, k: usize) -> Result<Self, KovError> {
        let d = vectors.first().map(BitVec::dim).unwrap_or(0);
        let inst = OvInstance {
            vectors,
            d,
            k,
            seed: None,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), KovError> {
        if self.vectors.is_empty() {
            return Err(KovError::Empty);
        }
        if self.d < 1 {
            return Err(KovError::BadParams("d must be at least 1".into()));
        }
        if self.k < 2 {
            return Err(KovError::BadParams("k must be at least 2".into()));
        }
        for (i, v) in self.vectors.iter().enumerate() {
            if v.dim() != self.d {
                return Err(KovError::DimensionMismatch {
                    index: i,
                    got: v.dim(),
                    expected: self.d,
                });
            }
        }
        Ok(())
    }

    /// Number of vectors.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Index of the all-ones vector, if present.
    pub fn all_ones_index(&self) -> Option<VecIdx> {
        self.vectors
            .iter()
            .position(BitVec::is_all_ones)
            .map(|i| i as VecIdx)
    }
}

/// Decides the instance at its own arity `inst.k`. See [`decide_at`].
pub fn decide(inst: &OvInstance) -> KovAnswer {
    decide_at(inst, inst.k)
}

/// Brute-force k-OV decision at an explicit arity.
///
/// Scans index tuples `(i_1, ..., i_k)` in lexicographic order, maintaining the
/// running AND of the chosen vectors; the first tuple whose AND is empty is the
/// returned witness. When the AND dies at depth `j < k` the lexicographically
/// smallest completion pads with index 0.
pub fn decide_at(inst: &OvInstance, arity: usize) -> KovAnswer {
    let n = inst.vectors.len();
    debug_assert!(arity >= 1);
    // DFS over prefixes in lexicographic order.
    let mut idx = vec![0usize; arity];
    let mut masks: Vec<BitVec> = Vec::with_capacity(arity);
    let mut depth = 0usize;
    loop {
        if idx[depth] == n {
            // exhausted this level, backtrack
            if depth == 0 {
                return KovAnswer::No;
            }
            idx[depth] = 0;
            masks.truncate(depth.saturating_sub(1));
            depth -= 1;
            idx[depth] += 1;
            // restore masks length to depth (mask for current depth recomputed below)
            continue;
        }
        let mut m = if depth == 0 {
            inst.vectors[idx[0]].clone()
        } else {
            let mut m = masks[depth - 1].clone();
            m.and_assign(&inst.vectors[idx[depth]]);
            m
        };
        if m.is_zero() {
            // lexicographically smallest completion: all zeros
            let mut witness: Vec<VecIdx> = idx[..=depth].iter().map(|&i| i as VecIdx).collect();
            witness.resize(arity, 0);
            return KovAnswer::Yes(witness);
        }
        if depth + 1 == arity {
            idx[depth] += 1;
        } else {
            if masks.len() == depth {
                masks.push(BitVec::zeros(inst.d));
            }
            std::mem::swap(&mut masks[depth], &mut m);
            masks.truncate(depth + 1);
            depth += 1;
            idx[depth] = 0;
        }
    }
}

/// Smallest coordinate (1-based) that is 1 in every vector of `F`.
///
/// Returns `Some(1)` for empty `F` and `None` exactly when `F` is an
/// orthogonal tuple. This realizes the common-coordinate choice `C(F)`.
pub fn common_one_coordinate(d: usize, vectors: &[&BitVec]) -> Result<Option<Coord>, KovError> {
    if vectors.is_empty() {
        return Ok(Some(1));
    }
    for (i, v) in vectors.iter().enumerate() {
        if v.dim() != d {
            return Err(KovError::DimensionMismatch {
                index: i,
                got: v.dim(),
                expected: d,
            });
        }
    }
    let mut m = vectors[0].clone();
    for v in &vectors[1..] {
        m.and_assign(v);
    }
    Ok(m.first_one())
}

/// `C(F)` for a set of vector indices into an instance.
pub fn common_one_of_indices(inst: &OvInstance, idxs: &[VecIdx]) -> Option<Coord> {
    let refs: Vec<&BitVec> = idxs.iter().map(|&i| &inst.vectors[i as usize]).collect();
    common_one_coordinate(inst.d, &refs).expect("indices come from the same instance")
}

/// Ensures the all-ones vector appears exactly once.
///
/// Appends it when missing; removes extra copies when the input happens to
/// contain duplicates. Does not change the k-OV answer (the all-ones vector
/// can never participate meaningfully in an orthogonal tuple).
pub fn augment_all_ones(inst: &OvInstance) -> OvInstance {
    let mut out = inst.clone();
    let mut seen = false;
    out.vectors.retain(|v| {
        if v.is_all_ones() {
            if seen {
                return false;
            }
            seen = true;
        }
        true
    });
    if !seen {
        out.vectors.push(BitVec::ones(inst.d));
    }
    out
}

fn sample_instance(rng: &mut ChaCha8Rng, n: usize, d: usize, k: usize, ones_bias: f64) -> OvInstance {
    let vectors = (0..n)
        .map(|_| {
            let bits: Vec<bool> = (0..d).map(|_| rng.gen_bool(ones_bias)).collect();
            BitVec::from_bits(&bits)
        })
        .collect();
    OvInstance {
        vectors,
        d,
        k,
        seed: None,
    }
}

/// Seeded instance generation.
///
/// * `Random`: i.i.d. Bernoulli(`ones_bias`) bits.
/// * `PlantNo`: rejection-sample until the instance is a NO instance.
/// * `PlantYes`: rejection-sample until the instance is a YES instance and,
///   whenever that is satisfiable (`n >= k` and `d >= k`), additionally no
///   (k-1)-tuple is orthogonal, so common coordinates exist for every vertex
///   of the reduction. For `n < k` or `d < k` no instance can meet the extra
///   condition together with YES, so plain YES is accepted there.
pub fn generate(
    mode: GenMode,
    n: usize,
    d: usize,
    k: usize,
    seed: u64,
    ones_bias: f64,
) -> Result<OvInstance, KovError> {
    generate_with_budget(mode, n, d, k, seed, ones_bias, DEFAULT_RETRY_BUDGET)
}

pub fn generate_with_budget(
    mode: GenMode,
    n: usize,
    d: usize,
    k: usize,
    seed: u64,
    ones_bias: f64,
    budget: usize,
) -> Result<OvInstance, KovError> {
    if n < 1 || d < 1 || k < 2 {
        return Err(KovError::BadParams(format!(
            "need n >= 1, d >= 1, k >= 2 (got n={n}, d={d}, k={k})"
        )));
    }
    if !(ones_bias > 0.0 && ones_bias <= 1.0) {
        return Err(KovError::BadParams(format!(
            "ones_bias must lie in (0, 1], got {ones_bias}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // A clean YES (no orthogonal tuple of arity k-1) needs at least k distinct
    // vectors and at least k coordinates; below those thresholds the predicate
    // is unsatisfiable and plain YES is the best available planting.
    let clean_yes_possible = n >= k && d >= k;
    for _ in 0..budget {
        let mut inst = sample_instance(&mut rng, n, d, k, ones_bias);
        inst.seed = Some(seed);
        let ok = match mode {
            GenMode::Random => true,
            GenMode::PlantNo => !decide(&inst).is_yes(),
            GenMode::PlantYes => {
                decide(&inst).is_yes()
                    && (!clean_yes_possible || !decide_at(&inst, k - 1).is_yes())
            }
        };
        if ok {
            return Ok(inst);
        }
    }
    let predicate = match mode {
        GenMode::Random => "random".to_string(),
        GenMode::PlantNo => "decide_kov = NO".to_string(),
        GenMode::PlantYes => {
            if clean_yes_possible {
                "decide_kov = YES with no orthogonal (k-1)-tuple".to_string()
            } else {
                "decide_kov = YES".to_string()
            }
        }
    };
    Err(KovError::BudgetExhausted { budget, predicate })
}
