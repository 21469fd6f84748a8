//! Run ideals on a path or cycle of variables, general squarefree ideal
//! pairs, their count vectors, and the sequence/monomial correspondence.
//!
//! A squarefree monomial is identified with its support, a subset of
//! `{1, ..., n}`. The path ideal with parameters `(n, m)` is generated by
//! all windows of `m` consecutive indices; the cycle ideal adds the `m - 1`
//! wrap-around windows. For each module built from these ideals, `alpha_k`
//! counts the degree-`k` squarefree monomials it contains. Closed forms for
//! the counts live here next to [`enumerate_alpha`], the definition-level
//! oracle that scans all subsets, so the two can arbitrate each other.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::extbinom::{binom, ext_binom};

/// Default bound on the ambient size accepted by [`enumerate_alpha`].
pub const DEFAULT_ORACLE_CAP: u32 = 24;

/// Absolute bound on the ambient size for enumeration: subsets are scanned
/// as `u64` bitmasks.
pub const ORACLE_HARD_CAP: u32 = 63;

/// Support of a squarefree monomial: a strictly increasing set of 1-based
/// variable indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MonomialSet(Vec<u32>);

impl MonomialSet {
    /// Builds a support set; duplicates are collapsed and order normalized.
    pub fn new(mut support: Vec<u32>) -> Self {
        support.sort_unstable();
        support.dedup();
        MonomialSet(support)
    }

    pub fn support(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &MonomialSet) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// Bitmask with bit `v - 1` set per element; elements must lie in 1..=64.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &v| {
            assert!((1..=64).contains(&v), "mask element {v} outside 1..=64");
            acc | 1u64 << (v - 1)
        })
    }
}

impl fmt::Display for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl<'de> Deserialize<'de> for MonomialSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(MonomialSet::new(Vec::<u32>::deserialize(d)?))
    }
}

/// Path family parameters: `n` variables, generators are all runs of `m`
/// consecutive indices. Requires `n >= m >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathFamily {
    n: u32,
    m: u32,
}

impl PathFamily {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if m >= 1 && n >= m {
            Ok(PathFamily { n, m })
        } else {
            Err(Error::InvalidFamily {
                n,
                m,
                requirement: "n >= m >= 1",
            })
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }
}

/// Cycle family parameters: the path generators plus the `m - 1` windows
/// that wrap around `n`. Requires `n > m >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleFamily {
    n: u32,
    m: u32,
}

impl CycleFamily {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if m >= 2 && n > m {
            Ok(CycleFamily { n, m })
        } else {
            Err(Error::InvalidFamily {
                n,
                m,
                requirement: "n > m >= 2",
            })
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// The path family on the same parameters (always valid: n > m >= 2).
    pub fn path(&self) -> PathFamily {
        PathFamily {
            n: self.n,
            m: self.m,
        }
    }
}

/// The five named modules built from a path ideal I and a cycle ideal J on
/// the same parameters.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(rename_all = "kebab-case")]
pub enum QuotientId {
    /// S/I: monomials outside the path ideal.
    PathQuotient,
    /// I: monomials inside the path ideal.
    PathIdeal,
    /// S/J: monomials outside the cycle ideal.
    CycleQuotient,
    /// J: monomials inside the cycle ideal.
    CycleIdeal,
    /// J/I: monomials in the cycle ideal but not the path ideal.
    CycleRel,
}

impl QuotientId {
    pub const ALL: [QuotientId; 5] = [
        QuotientId::PathQuotient,
        QuotientId::PathIdeal,
        QuotientId::CycleQuotient,
        QuotientId::CycleIdeal,
        QuotientId::CycleRel,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            QuotientId::PathQuotient => "path-quotient",
            QuotientId::PathIdeal => "path-ideal",
            QuotientId::CycleQuotient => "cycle-quotient",
            QuotientId::CycleIdeal => "cycle-ideal",
            QuotientId::CycleRel => "cycle-rel",
        }
    }

    pub fn is_cycle(&self) -> bool {
        matches!(
            self,
            QuotientId::CycleQuotient | QuotientId::CycleIdeal | QuotientId::CycleRel
        )
    }
}

impl fmt::Display for QuotientId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for QuotientId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        QuotientId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                format!(
                    "unknown family `{s}` (expected path-quotient, path-ideal, \
                     cycle-quotient, cycle-ideal or cycle-rel)"
                )
            })
    }
}

/// Which reading of the relative-count closed form to evaluate.
///
/// `Printed` keeps the tail exponent `n - l - k + 1`, which couples the
/// wrap-weight index `l` into the middle-sequence count; `Corrected` uses
/// `n - k - 1`, the reading the enumeration oracle confirms. The two agree
/// for `m = 2` and differ for `m >= 3`; every mismatch is reported as a
/// discrepancy finding, never silently patched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Printed,
    Corrected,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Printed => "printed",
            Variant::Corrected => "corrected",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "printed" => Ok(Variant::Printed),
            "corrected" => Ok(Variant::Corrected),
            _ => Err(format!(
                "unknown variant `{s}` (expected printed or corrected)"
            )),
        }
    }
}

/// Run-length sequence `(a_1, ..., a_{n-k+1})` with `0 <= a_i <= m - 1` and
/// entry sum `k`: the combinatorial encoding of a degree-`k` squarefree
/// monomial outside the path ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunSequence {
    n: u32,
    m: u32,
    entries: Vec<u32>,
}

impl RunSequence {
    pub fn new(n: u32, m: u32, entries: Vec<u32>) -> Result<Self> {
        for (i, &a) in entries.iter().enumerate() {
            if a >= m {
                return Err(Error::SequenceEntryOutOfRange {
                    index: i + 1,
                    value: a,
                    bound: m - 1,
                });
            }
        }
        let k: u32 = entries.iter().sum();
        let expected = n as i64 - k as i64 + 1;
        if entries.len() as i64 != expected {
            return Err(Error::SequenceLengthMismatch {
                expected,
                got: entries.len(),
            });
        }
        Ok(RunSequence { n, m, entries })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Entry sum, the degree of the encoded monomial.
    pub fn k(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }
}

/// Monomial support encoded by a run sequence: a positive entry `a_i`
/// contributes a block of `a_i` consecutive indices starting at `i` plus
/// the number of elements placed by earlier entries, which leaves a gap of
/// at least one index between blocks.
pub fn seq_to_monomial(seq: &RunSequence) -> MonomialSet {
    let mut support = Vec::with_capacity(seq.k() as usize);
    let mut placed = 0u32;
    for (i, &a) in seq.entries.iter().enumerate() {
        let start = i as u32 + 1 + placed;
        for t in 0..a {
            support.push(start + t);
        }
        placed += a;
    }
    // Blocks are emitted left to right with gaps, so the vector is already
    // strictly increasing.
    MonomialSet(support)
}

fn maximal_runs(set: &MonomialSet) -> Vec<(u32, u32)> {
    let mut runs: Vec<(u32, u32)> = Vec::new();
    for &v in &set.0 {
        match runs.last_mut() {
            Some((start, len)) if *start + *len == v => *len += 1,
            _ => runs.push((v, 1)),
        }
    }
    runs
}

fn longest_run(set: &MonomialSet) -> u32 {
    maximal_runs(set).into_iter().map(|(_, l)| l).max().unwrap_or(0)
}

/// Whether the support contains `m` consecutive indices, i.e. whether the
/// monomial lies in the path ideal with run length `m`.
pub fn in_path_ideal(set: &MonomialSet, m: u32) -> bool {
    longest_run(set) >= m
}

/// Whether the support contains `m` cyclically consecutive indices mod `n`,
/// i.e. whether the monomial lies in the cycle ideal.
pub fn in_cycle_ideal(set: &MonomialSet, n: u32, m: u32) -> bool {
    if (set.len() as u32) < m {
        return false;
    }
    (1..=n).any(|s| (0..m).all(|t| set.contains((s - 1 + t) % n + 1)))
}

/// Run sequence of a support with no `m` consecutive indices. The `j`-th
/// maximal run, starting at `i_j` with length `b_j`, lands at sequence index
/// `i_j` minus the total length of the earlier runs; other entries are zero.
pub fn monomial_to_seq(set: &MonomialSet, n: u32, m: u32) -> Result<RunSequence> {
    if let Some(&v) = set.0.iter().find(|&&v| v < 1 || v > n) {
        return Err(Error::SupportOutOfRange { value: v, n });
    }
    if in_path_ideal(set, m) {
        return Err(Error::MonomialInIdeal {
            support: set.clone(),
        });
    }
    let k = set.len() as u32;
    let mut entries = vec![0u32; (n - k + 1) as usize];
    let mut placed = 0u32;
    for (start, len) in maximal_runs(set) {
        entries[(start - placed - 1) as usize] = len;
        placed += len;
    }
    RunSequence::new(n, m, entries)
}

/// Degree-`k` squarefree monomials avoiding `m` consecutive indices among
/// `n`: the coefficient of `t^k` in the `(n-k+1)`-st power of the unit
/// block. Zero for `k < 0` or `k > n`.
pub fn alpha_path_quotient(n: u32, m: u32, k: u32) -> BigInt {
    ext_binom(n as i64 - k as i64 + 1, m as i64, k as i64)
}

/// Degree-`k` squarefree monomials inside the path ideal.
pub fn alpha_path_ideal(n: u32, m: u32, k: u32) -> BigInt {
    binom(n as i64, k as i64) - alpha_path_quotient(n, m, k)
}

/// Degree-`k` squarefree monomials in the cycle ideal but not the path
/// ideal: a weighted sum over the combined size `l` of the two boundary
/// runs, `sum_{l=m}^{2m-2} (2m-1-l) * ext_binom(X, m, k-l)` with `X`
/// depending on the [`Variant`].
pub fn alpha_cycle_rel(n: u32, m: u32, k: u32, variant: Variant) -> BigInt {
    let (n, m, k) = (n as i64, m as i64, k as i64);
    let mut acc = BigInt::zero();
    for l in m..=2 * m - 2 {
        let exponent = match variant {
            Variant::Printed => n - l - k + 1,
            Variant::Corrected => n - k - 1,
        };
        acc += BigInt::from(2 * m - 1 - l) * ext_binom(exponent, m, k - l);
    }
    acc
}

/// Degree-`k` squarefree monomials outside the cycle ideal.
pub fn alpha_cycle_quotient(n: u32, m: u32, k: u32, variant: Variant) -> BigInt {
    alpha_path_quotient(n, m, k) - alpha_cycle_rel(n, m, k, variant)
}

/// Degree-`k` squarefree monomials inside the cycle ideal.
pub fn alpha_cycle_ideal(n: u32, m: u32, k: u32, variant: Variant) -> BigInt {
    binom(n as i64, k as i64) - alpha_cycle_quotient(n, m, k, variant)
}

/// Length-`n + 1` vector of exact counts, one per degree, validated against
/// `0 <= alpha_k <= binom(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaVector {
    n: u32,
    values: Vec<BigInt>,
}

impl AlphaVector {
    pub fn new(n: u32, values: Vec<BigInt>) -> Result<Self> {
        if values.len() != n as usize + 1 {
            return Err(Error::AlphaLength {
                expected: n as usize + 1,
                got: values.len(),
            });
        }
        for (k, v) in values.iter().enumerate() {
            if v < &BigInt::zero() || v > &binom(n as i64, k as i64) {
                return Err(Error::AlphaOutOfRange {
                    k,
                    value: v.clone(),
                });
            }
        }
        Ok(AlphaVector { n, values })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Count at degree `k`, zero beyond `n`.
    pub fn value(&self, k: u32) -> BigInt {
        self.values.get(k as usize).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for AlphaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Count vector of one of the named modules, assembled from the closed
/// forms. The variant only matters for the cycle modules.
pub fn alpha_vector(id: QuotientId, n: u32, m: u32, variant: Variant) -> Result<AlphaVector> {
    if id.is_cycle() {
        CycleFamily::new(n, m)?;
    } else {
        PathFamily::new(n, m)?;
    }
    let values = (0..=n)
        .map(|k| match id {
            QuotientId::PathQuotient => alpha_path_quotient(n, m, k),
            QuotientId::PathIdeal => alpha_path_ideal(n, m, k),
            QuotientId::CycleQuotient => alpha_cycle_quotient(n, m, k, variant),
            QuotientId::CycleIdeal => alpha_cycle_ideal(n, m, k, variant),
            QuotientId::CycleRel => alpha_cycle_rel(n, m, k, variant),
        })
        .collect();
    AlphaVector::new(n, values)
}

/// Generators of the path ideal: all windows of `m` consecutive indices.
pub fn path_generators(n: u32, m: u32) -> Vec<MonomialSet> {
    (1..=n + 1 - m)
        .map(|i| MonomialSet::new((i..i + m).collect()))
        .collect()
}

/// Generators of the cycle ideal: the path generators plus the windows
/// starting at `n - m + 2 ..= n`, wrapping past `n`.
pub fn cycle_generators(n: u32, m: u32) -> Vec<MonomialSet> {
    let mut gens = path_generators(n, m);
    for i in n - m + 2..=n {
        gens.push(MonomialSet::new(
            (0..m).map(|t| (i - 1 + t) % n + 1).collect(),
        ));
    }
    gens
}

/// A pair of squarefree monomial ideals `inner ⊆ outer` on `n` variables,
/// given by generator supports. Enumeration counts the monomials lying in
/// the outer ideal but not the inner one, so the pair encodes a module:
/// with `E` the whole-ring marker (the single empty generator) and `0` the
/// empty generator list, `(I, E)` encodes S/I, `(0, I)` encodes I itself,
/// and `(I, J)` encodes J/I.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralIdealSpec {
    n: u32,
    #[serde(rename = "gens_I")]
    gens_inner: Vec<MonomialSet>,
    #[serde(rename = "gens_J")]
    gens_outer: Vec<MonomialSet>,
}

#[derive(Deserialize)]
struct RawSpec {
    n: u32,
    #[serde(rename = "gens_I")]
    gens_inner: Vec<MonomialSet>,
    #[serde(rename = "gens_J")]
    gens_outer: Vec<MonomialSet>,
}

impl GeneralIdealSpec {
    pub fn new(
        n: u32,
        gens_inner: Vec<MonomialSet>,
        gens_outer: Vec<MonomialSet>,
    ) -> Result<Self> {
        if n < 1 {
            return Err(Error::SpecVariables { n });
        }
        for g in gens_inner.iter().chain(&gens_outer) {
            if let Some(&v) = g.support().iter().find(|&&v| v < 1 || v > n) {
                return Err(Error::SupportOutOfRange { value: v, n });
            }
        }
        // Containment of ideals: every inner generator must be divisible by
        // some outer generator.
        for gi in &gens_inner {
            if !gens_outer.iter().any(|gj| gj.is_subset_of(gi)) {
                return Err(Error::NotContained { gen: gi.clone() });
            }
        }
        Ok(GeneralIdealSpec {
            n,
            gens_inner,
            gens_outer,
        })
    }

    /// Parses `{"n": int, "gens_I": [[int]], "gens_J": [[int]]}` with
    /// 1-based variable indices.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawSpec = serde_json::from_str(text)?;
        GeneralIdealSpec::new(raw.n, raw.gens_inner, raw.gens_outer)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn gens_inner(&self) -> &[MonomialSet] {
        &self.gens_inner
    }

    pub fn gens_outer(&self) -> &[MonomialSet] {
        &self.gens_outer
    }
}

/// The generator-pair encoding of a named module on family `(n, m)`.
pub fn quotient_spec(id: QuotientId, n: u32, m: u32) -> Result<GeneralIdealSpec> {
    let whole_ring = vec![MonomialSet::new(Vec::new())];
    let (inner, outer) = match id {
        QuotientId::PathQuotient => {
            PathFamily::new(n, m)?;
            (path_generators(n, m), whole_ring)
        }
        QuotientId::PathIdeal => {
            PathFamily::new(n, m)?;
            (Vec::new(), path_generators(n, m))
        }
        QuotientId::CycleQuotient => {
            CycleFamily::new(n, m)?;
            (cycle_generators(n, m), whole_ring)
        }
        QuotientId::CycleIdeal => {
            CycleFamily::new(n, m)?;
            (Vec::new(), cycle_generators(n, m))
        }
        QuotientId::CycleRel => {
            CycleFamily::new(n, m)?;
            (path_generators(n, m), cycle_generators(n, m))
        }
    };
    GeneralIdealSpec::new(n, inner, outer)
}

/// Brute-force count vector: scans all `2^n` subsets as bitmasks and counts,
/// per degree, those whose monomial lies in the outer ideal but not the
/// inner one. This is the oracle every closed form is checked against.
pub fn enumerate_alpha(spec: &GeneralIdealSpec, cap: u32) -> Result<AlphaVector> {
    let cap = cap.min(ORACLE_HARD_CAP);
    if spec.n > cap {
        return Err(Error::EnumerationCapExceeded { n: spec.n, cap });
    }
    let outer: Vec<u64> = spec.gens_outer.iter().map(MonomialSet::mask).collect();
    let inner: Vec<u64> = spec.gens_inner.iter().map(MonomialSet::mask).collect();
    let mut counts = vec![0u64; spec.n as usize + 1];
    for mask in 0..1u64 << spec.n {
        if outer.iter().any(|g| mask & g == *g) && !inner.iter().any(|g| mask & g == *g) {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    AlphaVector::new(spec.n, counts.into_iter().map(BigInt::from).collect())
}
