//! Exact restricted partition counts p_k^s(n).
//!
//! p_k^s(n) is the number of ways to write n as a sum of s-th powers of
//! positive integers with each distinct power used at most k times. Counts
//! are the coefficients of
//!
//! ```text
//! ∏_{m≥1} (1 − x^{(k+1)m^s}) / (1 − x^{m^s})
//! ```
//!
//! The main path is [`count_table`], a bounded-multiplicity knapsack over the
//! parts 1, 2^s, 3^s, … in exact big-integer arithmetic. Three slower routes
//! exist purely for cross-checking: [`oracle_product`] (truncated power
//! series products), [`oracle_pentagonal`] (Euler's recurrence, unrestricted
//! s = 1 only) and [`oracle_enumerate`] (depth-first listing, small n).

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest n accepted by [`oracle_enumerate`].
pub const ENUMERATION_LIMIT: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("power s must be at least 1")]
    ZeroPower,
    #[error("multiplicity bound k must be at least 1")]
    ZeroMultiplicity,
    #[error("invalid multiplicity {0:?}: expected a positive integer or \"inf\"")]
    ParseMultiplicity(String),
    #[error("enumeration refused for n = {n} (limit {limit})")]
    TooLarge { n: usize, limit: usize },
    #[error("this oracle requires a finite multiplicity bound")]
    UnboundedNotSupported,
}

/// How many times a single part may repeat.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multiplicity {
    AtMost(u64),
    Unbounded,
}

impl Multiplicity {
    pub fn at_most(k: u64) -> Result<Self, ExactError> {
        if k == 0 {
            Err(ExactError::ZeroMultiplicity)
        } else {
            Ok(Multiplicity::AtMost(k))
        }
    }

    pub fn bound(self) -> Option<u64> {
        match self {
            Multiplicity::AtMost(k) => Some(k),
            Multiplicity::Unbounded => None,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, Multiplicity::Unbounded)
    }

    /// Whether `copies` repetitions of one part are allowed.
    pub fn allows(self, copies: u64) -> bool {
        self.bound().is_none_or(|k| copies <= k)
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::AtMost(k) => write!(f, "{k}"),
            Multiplicity::Unbounded => f.write_str("inf"),
        }
    }
}

impl FromStr for Multiplicity {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") {
            return Ok(Multiplicity::Unbounded);
        }
        let k: u64 = t
            .parse()
            .map_err(|_| ExactError::ParseMultiplicity(s.to_string()))?;
        Multiplicity::at_most(k)
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The counting problem p_k^s(n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartitionSpec {
    s: u32,
    k: Multiplicity,
    n: usize,
}

impl PartitionSpec {
    pub fn new(s: u32, k: Multiplicity, n: usize) -> Result<Self, ExactError> {
        if s == 0 {
            return Err(ExactError::ZeroPower);
        }
        if k == Multiplicity::AtMost(0) {
            return Err(ExactError::ZeroMultiplicity);
        }
        Ok(Self { s, k, n })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn k(&self) -> Multiplicity {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// An exact non-negative partition count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn new(value: BigUint) -> Self {
        Self(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Nearest `f64`; `inf` once the count exceeds f64 range.
    pub fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.0).unwrap_or(f64::INFINITY)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        Self(BigUint::from(v))
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Serialized as a decimal string so large counts survive JSON consumers.
impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

/// p_k^s(0..=n_max) for fixed (s, k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    s: u32,
    k: Multiplicity,
    counts: Vec<BigCount>,
}

impl CountTable {
    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn k(&self) -> Multiplicity {
        self.k
    }

    pub fn n_max(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&BigCount> {
        self.counts.get(n)
    }

    pub fn counts(&self) -> &[BigCount] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<BigCount> {
        self.counts
    }

    pub(crate) fn from_biguints(s: u32, k: Multiplicity, counts: Vec<BigUint>) -> Self {
        Self {
            s,
            k,
            counts: counts.into_iter().map(BigCount).collect(),
        }
    }
}

impl Index<usize> for CountTable {
    type Output = BigCount;

    fn index(&self, n: usize) -> &BigCount {
        &self.counts[n]
    }
}

/// Part sizes m^s for m = 1, 2, … up to `limit`.
pub fn power_parts(s: u32, limit: usize) -> impl Iterator<Item = usize> {
    (1_usize..)
        .map(move |m| m.checked_pow(s))
        .take_while(move |p| p.is_some_and(|p| p <= limit))
        .flatten()
}

/// p_k^s(n).
pub fn count(spec: PartitionSpec) -> BigCount {
    let table = count_table(spec.s, spec.k, spec.n);
    table
        .into_counts()
        .pop()
        .expect("table has n_max + 1 entries")
}

/// p_k^s(n) for every n in 0..=n_max, from one DP pass.
///
/// # Panics
///
/// Panics if `s == 0` or `k` is `AtMost(0)`; use [`PartitionSpec::new`] to
/// validate user input first.
pub fn count_table(s: u32, k: Multiplicity, n_max: usize) -> CountTable {
    assert!(s >= 1, "power s must be at least 1");
    assert_ne!(
        k,
        Multiplicity::AtMost(0),
        "multiplicity must be at least 1"
    );
    let counts = count_with_parts(power_parts(s, n_max), k, n_max);
    CountTable::from_biguints(s, k, counts)
}

/// Coefficients of ∏_{j ∈ parts} (1 + x^j + … + x^{kj}) up to x^n_max.
///
/// Parts are taken as given, so repeated values act as distinct kinds of
/// part. The product is commutative: part order does not affect the result.
pub fn count_with_parts(
    parts: impl IntoIterator<Item = usize>,
    k: Multiplicity,
    n_max: usize,
) -> Vec<BigUint> {
    let mut table = vec![BigUint::zero(); n_max + 1];
    table[0] = BigUint::one();
    let mut chain = Vec::new();
    for part in parts {
        if part == 0 || part > n_max {
            continue;
        }
        match k.bound() {
            // a cap of k copies is inactive once k·part exceeds n_max
            Some(cap) if (cap as u128 + 1) * (part as u128) <= n_max as u128 => {
                add_bounded_part(&mut table, part, cap as usize, &mut chain)
            }
            _ => add_unbounded_part(&mut table, part),
        }
    }
    table
}

fn add_unbounded_part(table: &mut [BigUint], part: usize) {
    for n in part..table.len() {
        let (lo, hi) = table.split_at_mut(n);
        hi[0] += &lo[n - part];
    }
}

/// new[n] = Σ_{i=0..=cap} old[n − i·part], as a running window sum along
/// each residue class mod `part`.
fn add_bounded_part(table: &mut [BigUint], part: usize, cap: usize, chain: &mut Vec<BigUint>) {
    for residue in 0..part.min(table.len()) {
        chain.clear();
        chain.extend(
            table[residue..]
                .iter_mut()
                .step_by(part)
                .map(std::mem::take),
        );
        let mut window = BigUint::zero();
        for (t, slot) in table[residue..].iter_mut().step_by(part).enumerate() {
            window += &chain[t];
            if t > cap {
                window -= &chain[t - cap - 1];
            }
            *slot = window.clone();
        }
    }
}

/// A truncated formal power series with signed big-integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Series {
    coeffs: Vec<BigInt>,
}

impl Series {
    fn one(n_max: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n_max + 1];
        coeffs[0] = BigInt::one();
        Self { coeffs }
    }

    /// Sparse series from (exponent, coefficient) pairs, truncated at n_max.
    fn sparse(n_max: usize, terms: impl IntoIterator<Item = (usize, i64)>) -> Vec<(usize, BigInt)> {
        terms
            .into_iter()
            .filter(|&(e, c)| e <= n_max && c != 0)
            .map(|(e, c)| (e, BigInt::from(c)))
            .collect()
    }

    fn mul_sparse(&self, factor: &[(usize, BigInt)]) -> Self {
        let n_max = self.coeffs.len() - 1;
        let mut out = vec![BigInt::zero(); n_max + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (e, c) in factor {
                if i + e > n_max {
                    continue;
                }
                out[i + e] += a * c;
            }
        }
        Self { coeffs: out }
    }
}

/// p_k^s(0..=n_max) by multiplying out the generating-function product.
///
/// Each numerator factor (1 − x^{(k+1)j}) is multiplied in directly and each
/// denominator 1/(1 − x^j) as the truncated geometric series Σᵢ x^{ij}.
pub fn oracle_product(s: u32, k: Multiplicity, n_max: usize) -> Result<CountTable, ExactError> {
    if s == 0 {
        return Err(ExactError::ZeroPower);
    }
    let cap = match k {
        Multiplicity::AtMost(0) => return Err(ExactError::ZeroMultiplicity),
        Multiplicity::AtMost(cap) => cap as usize,
        Multiplicity::Unbounded => return Err(ExactError::UnboundedNotSupported),
    };
    let mut series = Series::one(n_max);
    for j in power_parts(s, n_max) {
        let numerator = Series::sparse(n_max, [(0, 1), ((cap + 1).saturating_mul(j), -1)]);
        let geometric = Series::sparse(n_max, (0..=n_max / j).map(|i| (i * j, 1)));
        series = series.mul_sparse(&numerator).mul_sparse(&geometric);
    }
    let counts = series
        .coeffs
        .into_iter()
        .map(|c| match c.into_parts() {
            (Sign::Minus, _) => unreachable!("partition counts are non-negative"),
            (_, mag) => mag,
        })
        .collect();
    Ok(CountTable::from_biguints(s, k, counts))
}

/// Unrestricted p(n) for n in 0..=n_max by Euler's pentagonal recurrence
///
/// ```text
/// p(n) = Σ_{i≥1} (−1)^{i+1} [p(n − i(3i−1)/2) + p(n − i(3i+1)/2)]
/// ```
pub fn oracle_pentagonal(n_max: usize) -> CountTable {
    let mut p: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    p.push(BigInt::one());
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        for i in 1.. {
            let g1 = i * (3 * i - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = i * (3 * i + 1) / 2;
            let mut term = p[n - g1].clone();
            if g2 <= n {
                term += &p[n - g2];
            }
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    let counts = p
        .into_iter()
        .map(|v| v.to_biguint().expect("p(n) is non-negative"))
        .collect();
    CountTable::from_biguints(1, Multiplicity::Unbounded, counts)
}

/// Counts p_k^s(n) by listing every admissible multiset of parts.
pub fn oracle_enumerate(spec: PartitionSpec) -> Result<BigCount, ExactError> {
    if spec.n > ENUMERATION_LIMIT {
        return Err(ExactError::TooLarge {
            n: spec.n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let parts: Vec<usize> = power_parts(spec.s, spec.n).collect();
    let mut found = 0_u64;
    // parts are chosen in decreasing index order so each multiset is listed once
    fn descend(parts: &[usize], remaining: usize, k: Multiplicity, found: &mut u64) {
        if remaining == 0 {
            *found += 1;
            return;
        }
        for (idx, &part) in parts.iter().enumerate().rev() {
            let mut copies = 1_u64;
            while k.allows(copies) && part * copies as usize <= remaining {
                descend(&parts[..idx], remaining - part * copies as usize, k, found);
                copies += 1;
            }
        }
    }
    descend(&parts, spec.n, spec.k, &mut found);
    Ok(BigCount::from(found))
}
