//! Alternating binomial transform of count vectors, the depth-style
//! invariant it defines, and known depth bounds for the run-ideal modules.
//!
//! For a count vector `alpha` and a level `0 <= d <= n`, the transform is
//!
//! ```text
//! beta_k^d = sum_{j=0}^{k} (-1)^(k-j) * binom(d-j, k-j) * alpha_j,   k <= d
//! ```
//!
//! which inverts to `alpha_k = sum_j binom(d-j, k-j) * beta_j^d`. The
//! invariant [`qdepth`] is the largest level at which the whole transform
//! stays nonnegative.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extbinom::binom;
use crate::ideals::{alpha_vector, AlphaVector, CycleFamily, PathFamily, QuotientId, Variant};

/// Transform of a count vector at a fixed level `d`, entries `k = 0..=d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaVector {
    d: i64,
    values: Vec<BigInt>,
}

impl BetaVector {
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Entry at index `k`, zero beyond `d`.
    pub fn value(&self, k: u32) -> BigInt {
        self.values.get(k as usize).cloned().unwrap_or_default()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| v >= &BigInt::zero())
    }
}

impl fmt::Display for BetaVector {
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

fn check_level(alpha: &AlphaVector, d: i64) -> Result<()> {
    if d < 0 || d > alpha.n() as i64 {
        Err(Error::DepthOutOfRange { d, n: alpha.n() })
    } else {
        Ok(())
    }
}

/// Transform at level `d` by the alternating sum definition.
pub fn beta_from_alpha(alpha: &AlphaVector, d: i64) -> Result<BetaVector> {
    check_level(alpha, d)?;
    let values = (0..=d)
        .map(|k| {
            let mut acc = BigInt::zero();
            for j in 0..=k {
                let term = binom(d - j, k - j) * alpha.value(j as u32);
                if (k - j) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        })
        .collect();
    Ok(BetaVector { d, values })
}

/// Transform at level `d` by peeling already-computed entries off `alpha`:
/// `beta_k = alpha_k - sum_{i<k} binom(d-i, k-i) * beta_i`. Agrees with
/// [`beta_from_alpha`] entrywise and is what the level scan uses.
pub fn beta_incremental(alpha: &AlphaVector, d: i64) -> Result<BetaVector> {
    check_level(alpha, d)?;
    let mut values: Vec<BigInt> = Vec::with_capacity(d as usize + 1);
    for k in 0..=d {
        let mut acc = alpha.value(k as u32);
        for (i, beta) in values.iter().enumerate() {
            acc -= binom(d - i as i64, k - i as i64) * beta;
        }
        values.push(acc);
    }
    Ok(BetaVector { d, values })
}

/// Reconstructs the leading counts from a transform:
/// `alpha_k = sum_{j=0}^{k} binom(d-j, k-j) * beta_j` for `k = 0..=d`.
pub fn alpha_from_beta(beta: &BetaVector) -> Vec<BigInt> {
    (0..=beta.d)
        .map(|k| {
            let mut acc = BigInt::zero();
            for (j, b) in beta.values.iter().take(k as usize + 1).enumerate() {
                acc += binom(beta.d - j as i64, k - j as i64) * b;
            }
            acc
        })
        .collect()
}

fn transform_nonnegative_at(alpha: &AlphaVector, d: i64) -> bool {
    let mut values: Vec<BigInt> = Vec::with_capacity(d as usize + 1);
    for k in 0..=d {
        let mut acc = alpha.value(k as u32);
        for (i, beta) in values.iter().enumerate() {
            acc -= binom(d - i as i64, k - i as i64) * beta;
        }
        if acc < BigInt::zero() {
            return false;
        }
        values.push(acc);
    }
    true
}

/// Largest level `d <= n` at which the transform of `alpha` is nonnegative.
///
/// The zero vector is rejected: every level keeps it nonnegative, so no
/// largest meaningful level exists. For nonzero vectors the scan always
/// terminates because the level-0 transform is just `alpha_0 >= 0`.
pub fn qdepth(alpha: &AlphaVector) -> Result<i64> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlphaVector);
    }
    for d in (0..=alpha.n() as i64).rev() {
        if transform_nonnegative_at(alpha, d) {
            return Ok(d);
        }
    }
    unreachable!("level 0 transform of a validated count vector is nonnegative");
}

/// The depth formula for the path family: `n + 1` minus the floor and the
/// ceiling of `(n + 1) / (m + 1)`.
pub fn phi(n: i64, m: i64) -> i64 {
    assert!(n >= 0 && m >= 1, "phi requires n >= 0, m >= 1");
    let q = n + 1;
    let p = m + 1;
    q - q / p - (q + p - 1) / p
}

/// Both sides of the closed-form alternating sum over a plain binomial
/// row: lhs is the level-`d` transform of `binom(n, j)` at index `k`, rhs
/// is `binom(n - d + k - 1, k)`.
pub fn chu_vandermonde(n: i64, d: i64, k: i64) -> (BigInt, BigInt) {
    let mut lhs = BigInt::zero();
    for j in 0..=k {
        let term = binom(d - j, k - j) * binom(n, j);
        if (k - j) % 2 == 0 {
            lhs += term;
        } else {
            lhs -= term;
        }
    }
    (lhs, binom(n - d + k - 1, k))
}

/// A depth statement that is either pinned exactly or only bounded below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DepthValue {
    Exact(i64),
    AtLeast(i64),
}

impl fmt::Display for DepthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DepthValue::Exact(v) => write!(f, "{v}"),
            DepthValue::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

/// Known depth data for one module: the proved depth, the best proved
/// interval for the partition-wise depth, and the transform invariant
/// computed from the count vector. The fields are reported side by side;
/// no ordering between `sdepth_lower` and `qdepth` is assumed, and indeed
/// some cycle modules violate the plausible `qdepth >= sdepth_lower`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthBounds {
    pub module: QuotientId,
    pub n: u32,
    pub m: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    /// The path depth formula at the family parameters.
    pub phi: i64,
    pub depth: DepthValue,
    pub sdepth_lower: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sdepth_upper: Option<i64>,
    pub qdepth: i64,
}

/// Depth data for S/I and I over the path family.
pub fn depth_bounds_path(n: u32, m: u32) -> Result<Vec<DepthBounds>> {
    PathFamily::new(n, m)?;
    let f = phi(n as i64, m as i64);
    let quotient = alpha_vector(QuotientId::PathQuotient, n, m, Variant::Corrected)?;
    let ideal = alpha_vector(QuotientId::PathIdeal, n, m, Variant::Corrected)?;
    Ok(vec![
        DepthBounds {
            module: QuotientId::PathQuotient,
            n,
            m,
            variant: None,
            phi: f,
            depth: DepthValue::Exact(f),
            sdepth_lower: f,
            sdepth_upper: Some(f),
            qdepth: qdepth(&quotient)?,
        },
        DepthBounds {
            module: QuotientId::PathIdeal,
            n,
            m,
            variant: None,
            phi: f,
            depth: DepthValue::Exact(f + 1),
            sdepth_lower: f + 1,
            sdepth_upper: None,
            qdepth: qdepth(&ideal)?,
        },
    ])
}

/// Depth data for S/J, J/I and J over the cycle family. Fails with
/// [`Error::ZeroAlphaVector`] when the requested variant produces an
/// identically zero relative count vector (the printed reading does for
/// some families), since no transform level is distinguished then.
pub fn depth_bounds_cycle(n: u32, m: u32, variant: Variant) -> Result<Vec<DepthBounds>> {
    CycleFamily::new(n, m)?;
    let f_n = phi(n as i64, m as i64);
    let f_prev = phi(n as i64 - 1, m as i64);
    let quotient = alpha_vector(QuotientId::CycleQuotient, n, m, variant)?;
    let rel = alpha_vector(QuotientId::CycleRel, n, m, variant)?;
    let ideal = alpha_vector(QuotientId::CycleIdeal, n, m, variant)?;

    let rel_lower = f_prev + m as i64 - 1;
    let mut ideal_lower = (rel_lower).min(f_n + 1).max(f_prev + 1);
    if m >= 3 {
        ideal_lower = ideal_lower.max(f_n + 1);
    }

    Ok(vec![
        DepthBounds {
            module: QuotientId::CycleQuotient,
            n,
            m,
            variant: Some(variant),
            phi: f_n,
            depth: DepthValue::Exact(f_prev),
            sdepth_lower: f_prev,
            sdepth_upper: Some(f_n),
            qdepth: qdepth(&quotient)?,
        },
        DepthBounds {
            module: QuotientId::CycleRel,
            n,
            m,
            variant: Some(variant),
            phi: f_n,
            depth: DepthValue::AtLeast(rel_lower),
            sdepth_lower: rel_lower,
            sdepth_upper: None,
            qdepth: qdepth(&rel)?,
        },
        DepthBounds {
            module: QuotientId::CycleIdeal,
            n,
            m,
            variant: Some(variant),
            phi: f_n,
            depth: DepthValue::Exact(f_prev + 1),
            sdepth_lower: ideal_lower,
            sdepth_upper: None,
            qdepth: qdepth(&ideal)?,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{enumerate_alpha, quotient_spec, DEFAULT_ORACLE_CAP};

    fn alpha(n: u32, values: &[i64]) -> AlphaVector {
        AlphaVector::new(n, values.iter().map(|&v| BigInt::from(v)).collect()).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn transform_frozen_row() {
        let a = alpha_vector(QuotientId::PathQuotient, 7, 3, Variant::Corrected).unwrap();
        let b = beta_from_alpha(&a, 4).unwrap();
        assert_eq!(b.values(), &big(&[1, 3, 6, 5, 4])[..]);
        assert_eq!(b.to_string(), "1 3 6 5 4");
        assert_eq!(beta_incremental(&a, 4).unwrap(), b);
        assert_eq!(b.value(2), BigInt::from(6));
        assert_eq!(b.value(9), BigInt::from(0));
    }

    #[test]
    fn transform_edge_levels() {
        let a = alpha(4, &[1, 4, 6, 4, 1]);
        // Level 0 sees only the constant term.
        assert_eq!(beta_from_alpha(&a, 0).unwrap().values(), &big(&[1])[..]);
        // The full simplex collapses to a single 1 at the top level.
        assert_eq!(
            beta_from_alpha(&a, 4).unwrap().values(),
            &big(&[1, 0, 0, 0, 0])[..]
        );
        let top = alpha(4, &[0, 0, 0, 0, 1]);
        assert_eq!(
            beta_from_alpha(&top, 4).unwrap().values(),
            &big(&[0, 0, 0, 0, 1])[..]
        );
        assert!(matches!(
            beta_from_alpha(&a, 5).unwrap_err(),
            Error::DepthOutOfRange { d: 5, n: 4 }
        ));
        assert!(matches!(
            beta_from_alpha(&a, -1).unwrap_err(),
            Error::DepthOutOfRange { d: -1, n: 4 }
        ));
    }

    #[test]
    fn transform_routes_agree_and_invert() {
        for (n, m) in [(6u32, 2u32), (7, 3), (8, 4), (5, 5)] {
            for id in [QuotientId::PathQuotient, QuotientId::PathIdeal] {
                let a = alpha_vector(id, n, m, Variant::Corrected).unwrap();
                for d in 0..=n as i64 {
                    let b1 = beta_from_alpha(&a, d).unwrap();
                    let b2 = beta_incremental(&a, d).unwrap();
                    assert_eq!(b1, b2, "{id} n={n} m={m} d={d}");
                    let back = alpha_from_beta(&b1);
                    let expect: Vec<BigInt> = (0..=d).map(|k| a.value(k as u32)).collect();
                    assert_eq!(back, expect, "{id} n={n} m={m} d={d}");
                }
            }
        }
    }

    #[test]
    fn reconstruction_from_unit_transform() {
        let b = beta_from_alpha(&alpha(5, &[1, 0, 0, 0, 0, 0]), 5).unwrap();
        // A lone beta_0 = 1 reconstructs the binomial row of the level.
        let unit = BetaVector {
            d: 5,
            values: big(&[1, 0, 0, 0, 0, 0]),
        };
        assert_eq!(alpha_from_beta(&unit), big(&[1, 5, 10, 10, 5, 1]));
        // ... and the transform of (1,0,...,0) alternates accordingly.
        assert_eq!(b.values(), &big(&[1, -5, 10, -10, 5, -1])[..]);
    }

    #[test]
    fn qdepth_frozen_values() {
        let a = alpha_vector(QuotientId::PathQuotient, 7, 3, Variant::Corrected).unwrap();
        assert_eq!(qdepth(&a).unwrap(), 4);

        let simplex = alpha(4, &[1, 4, 6, 4, 1]);
        assert_eq!(qdepth(&simplex).unwrap(), 4);

        let point = alpha(6, &[1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(qdepth(&point).unwrap(), 0);

        let top = alpha(4, &[0, 0, 0, 0, 1]);
        assert_eq!(qdepth(&top).unwrap(), 4);

        let ideal = alpha_vector(QuotientId::PathIdeal, 4, 2, Variant::Corrected).unwrap();
        assert_eq!(ideal.values(), &big(&[0, 0, 3, 4, 1])[..]);
        assert_eq!(qdepth(&ideal).unwrap(), 3);

        let rel = alpha_vector(QuotientId::CycleRel, 5, 3, Variant::Corrected).unwrap();
        assert_eq!(qdepth(&rel).unwrap(), 3);

        assert!(matches!(
            qdepth(&alpha(3, &[0, 0, 0, 0])).unwrap_err(),
            Error::ZeroAlphaVector
        ));
    }

    #[test]
    fn qdepth_matches_exhaustive_level_scan() {
        for n in 2..=9u32 {
            for m in 1..=n {
                for id in QuotientId::ALL {
                    if id.is_cycle() && CycleFamily::new(n, m).is_err() {
                        continue;
                    }
                    let spec = quotient_spec(id, n, m).unwrap();
                    let a = enumerate_alpha(&spec, DEFAULT_ORACLE_CAP).unwrap();
                    if a.is_zero() {
                        continue;
                    }
                    let best = (0..=n as i64)
                        .filter(|&d| beta_from_alpha(&a, d).unwrap().is_nonnegative())
                        .max()
                        .unwrap();
                    assert_eq!(qdepth(&a).unwrap(), best, "{id} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(7, 3), 4);
        assert_eq!(phi(8, 3), 4);
        assert_eq!(phi(4, 3), 2);
        assert_eq!(phi(5, 3), 3);
        assert_eq!(phi(0, 4), 0);
        for n in 0..=50 {
            assert_eq!(phi(n, 1), 0, "n={n}");
            assert!(phi(n, 3) >= 0);
        }
        // For runs of length 2 the formula collapses to ceil(n / 3).
        for n in 1..=200i64 {
            assert_eq!(phi(n, 2), (n + 2) / 3, "n={n}");
        }
    }

    #[test]
    fn closed_form_alternating_binomial_sum() {
        let (lhs, rhs) = chu_vandermonde(5, 3, 2);
        assert_eq!(lhs, BigInt::from(3));
        assert_eq!(rhs, BigInt::from(3));
        for n in 0..=30i64 {
            for d in 0..=n {
                for k in 0..=d {
                    let (lhs, rhs) = chu_vandermonde(n, d, k);
                    assert_eq!(lhs, rhs, "n={n} d={d} k={k}");
                }
            }
        }
        // Index 0 always yields 1; the top level kills every positive index.
        assert_eq!(chu_vandermonde(9, 9, 4), (BigInt::zero(), BigInt::zero()));
    }

    #[test]
    fn depth_bounds_path_rows() {
        let rows = depth_bounds_path(7, 3).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].module, QuotientId::PathQuotient);
        assert_eq!(rows[0].depth, DepthValue::Exact(4));
        assert_eq!(rows[0].sdepth_upper, Some(4));
        assert_eq!(rows[0].qdepth, 4);
        assert_eq!(rows[1].module, QuotientId::PathIdeal);
        assert_eq!(rows[1].depth, DepthValue::Exact(5));
        assert_eq!(rows[1].sdepth_upper, None);

        let rows = depth_bounds_path(4, 2).unwrap();
        assert_eq!(rows[1].sdepth_lower, 3);
        assert_eq!(rows[1].qdepth, 3);

        assert!(depth_bounds_path(2, 3).is_err());
    }

    #[test]
    fn depth_bounds_cycle_rows() {
        let rows = depth_bounds_cycle(5, 3, Variant::Corrected).unwrap();
        assert_eq!(rows.len(), 3);
        let quotient = &rows[0];
        assert_eq!(quotient.module, QuotientId::CycleQuotient);
        assert_eq!(quotient.depth, DepthValue::Exact(2));
        assert_eq!(quotient.sdepth_upper, Some(3));
        let rel = &rows[1];
        assert_eq!(rel.module, QuotientId::CycleRel);
        assert_eq!(rel.depth, DepthValue::AtLeast(4));
        assert_eq!(rel.sdepth_lower, 4);
        // The transform invariant undercuts the proved lower bound here.
        assert_eq!(rel.qdepth, 3);
        let ideal = &rows[2];
        assert_eq!(ideal.module, QuotientId::CycleIdeal);
        assert_eq!(ideal.depth, DepthValue::Exact(3));
        assert_eq!(ideal.sdepth_lower, 4);

        // The printed reading of (4,3) has a zero relative vector.
        assert!(matches!(
            depth_bounds_cycle(4, 3, Variant::Printed).unwrap_err(),
            Error::ZeroAlphaVector
        ));
        assert!(depth_bounds_cycle(3, 3, Variant::Corrected).is_err());
    }

    #[test]
    fn depth_value_serialization() {
        assert_eq!(
            serde_json::to_string(&DepthValue::Exact(4)).unwrap(),
            r#"{"exact":4}"#
        );
        assert_eq!(
            serde_json::to_string(&DepthValue::AtLeast(5)).unwrap(),
            r#"{"at_least":5}"#
        );
        let rows = depth_bounds_path(4, 2).unwrap();
        let json = serde_json::to_string(&rows[0]).unwrap();
        assert!(json.contains(r#""module":"path-quotient""#), "{json}");
        assert!(!json.contains("variant"), "{json}");
    }
}
