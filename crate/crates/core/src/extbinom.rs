//! Extended binomial coefficients: the coefficient of `t^k` in
//! `(1 + t + ... + t^(m-1))^N`, exact over arbitrary-precision integers.
//!
//! Two independent evaluation routes are provided. [`ext_binom`] reads the
//! coefficient out of a memoized table of rows built by repeated
//! multiplication with the unit block `1 + t + ... + t^(m-1)`, while
//! [`ext_binom_ie`] expands `((1 - t^m)/(1 - t))^N` into an alternating sum
//! of ordinary binomials. The checks in this crate keep the two routes
//! separate on purpose.
//!
//! [`binom`] fixes the zero conventions every alternating sum here relies
//! on: `binom(a, 0) = 1` for every integer `a`, zero for `b < 0` or
//! `0 <= a < b`, and the falling-factorial product otherwise, so negative
//! upper arguments follow the generalized binomial.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Largest row kept in the shared Pascal triangle. Lookups above this fall
/// back to the falling-factorial product.
const PASCAL_CACHE_MAX: i64 = 2048;

fn pascal_rows() -> &'static RwLock<Vec<Vec<BigInt>>> {
    static ROWS: OnceLock<RwLock<Vec<Vec<BigInt>>>> = OnceLock::new();
    ROWS.get_or_init(|| RwLock::new(vec![vec![BigInt::one()]]))
}

fn pascal(a: usize, b: usize) -> BigInt {
    {
        let rows = pascal_rows().read().unwrap();
        if a < rows.len() {
            return rows[a][b].clone();
        }
    }
    let mut rows = pascal_rows().write().unwrap();
    while rows.len() <= a {
        let prev = rows.last().unwrap();
        let mut next = Vec::with_capacity(prev.len() + 1);
        next.push(BigInt::one());
        for w in prev.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        rows.push(next);
    }
    rows[a][b].clone()
}

fn falling_factorial_binom(a: i64, b: i64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= a - i;
        // Exact at every step: a prefix of consecutive factors is divisible
        // by the matching factorial prefix.
        acc /= i + 1;
    }
    acc
}

/// Ordinary binomial coefficient under the conventions used throughout:
/// `binom(a, 0) = 1` for every integer `a`, zero when `b < 0` or when
/// `0 <= a < b`, and `a(a-1)...(a-b+1)/b!` otherwise (generalized binomial
/// for negative `a`).
pub fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    if b == 0 {
        return BigInt::one();
    }
    if a >= 0 {
        if b > a {
            return BigInt::zero();
        }
        if a <= PASCAL_CACHE_MAX {
            return pascal(a as usize, b as usize);
        }
        return falling_factorial_binom(a, b);
    }
    // binom(a, b) = (-1)^b binom(b - a - 1, b) for a < 0.
    let v = binom(b - a - 1, b);
    if b % 2 == 0 {
        v
    } else {
        -v
    }
}

/// One coefficient row: all coefficients of `(1 + t + ... + t^(m-1))^N`,
/// indexed by degree `0..=N*(m-1)`. Rows are memoized per `(N, m)` and
/// shared between threads.
#[derive(Clone, Debug)]
pub struct CoeffRow {
    exponent: i64,
    m: i64,
    coeffs: Arc<Vec<BigInt>>,
}

impl CoeffRow {
    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero outside `0..=N*(m-1)`.
    pub fn coeff(&self, k: i64) -> BigInt {
        if k < 0 || k >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Degree of the row polynomial, `N*(m-1)`.
    pub fn degree(&self) -> i64 {
        self.exponent * (self.m - 1)
    }

    /// Sum of all coefficients, `m^N`.
    pub fn sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

type RowTable = RwLock<HashMap<(i64, i64), Arc<Vec<BigInt>>>>;

fn row_table() -> &'static RowTable {
    static TABLE: OnceLock<RowTable> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Multiply a coefficient row by `1 + t + ... + t^(m-1)` with a sliding
/// window sum.
fn convolve_unit_block(prev: &[BigInt], m: usize) -> Vec<BigInt> {
    let len = prev.len() + m - 1;
    let mut out = Vec::with_capacity(len);
    let mut window = BigInt::zero();
    for k in 0..len {
        if k < prev.len() {
            window += &prev[k];
        }
        if k >= m {
            window -= &prev[k - m];
        }
        out.push(window.clone());
    }
    out
}

fn row(exponent: i64, m: i64) -> Arc<Vec<BigInt>> {
    if let Some(r) = row_table().read().unwrap().get(&(m, exponent)) {
        return r.clone();
    }
    let fresh = if exponent == 0 {
        Arc::new(vec![BigInt::one()])
    } else {
        let prev = row(exponent - 1, m);
        Arc::new(convolve_unit_block(&prev, m as usize))
    };
    // Keep whichever row a racing thread inserted first; the values agree.
    row_table()
        .write()
        .unwrap()
        .entry((m, exponent))
        .or_insert(fresh)
        .clone()
}

/// Shared handle to the full coefficient row for `(N, m)`.
pub fn coeff_row(exponent: i64, m: i64) -> CoeffRow {
    assert!(exponent >= 0, "row exponent must be nonnegative");
    assert!(m >= 1, "block length m must be positive");
    CoeffRow {
        exponent,
        m,
        coeffs: row(exponent, m),
    }
}

/// Coefficient of `t^k` in `(1 + t + ... + t^(m-1))^N`.
///
/// Zero for `k < 0`, for `k > N*(m-1)`, and for `N < 0`: no sequence of
/// negative length exists, a convention the cycle counts rely on.
pub fn ext_binom(exponent: i64, m: i64, k: i64) -> BigInt {
    assert!(m >= 1, "block length m must be positive");
    if exponent < 0 || k < 0 || k > exponent * (m - 1) {
        return BigInt::zero();
    }
    row(exponent, m)[k as usize].clone()
}

/// The same coefficient via inclusion-exclusion over ordinary binomials:
/// `sum_{l=0}^{floor(k/m)} (-1)^l binom(N, l) binom(N + k - m*l - 1, k - m*l)`.
///
/// Kept free of any shared code with [`ext_binom`] beyond [`binom`] itself,
/// so the two routes can arbitrate each other.
pub fn ext_binom_ie(exponent: i64, m: i64, k: i64) -> BigInt {
    assert!(m >= 1, "block length m must be positive");
    if exponent < 0 || k < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::zero();
    let mut l = 0;
    while m * l <= k {
        let term = binom(exponent, l) * binom(exponent + k - m * l - 1, k - m * l);
        if l % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        l += 1;
    }
    acc
}
