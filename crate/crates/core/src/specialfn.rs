//! Scalar special functions on the positive real axis.
//!
//! - [`gamma`]: Lanczos approximation (g = 607/128, 15 coefficients)
//! - [`zeta`]: Riemann zeta for x > 1 by Euler–Maclaurin summation
//! - [`capital_c`]: the constant Γ(1+1/s)·ζ(1+1/s) that sets the small-β
//!   divergence of the log partition function for a spectrum m^s
//! - [`bernoulli_series_constant`]: regularized value s − (s/2)·ln(2π)
//!
//! All kernels work in `f64` and target ~1e−12 relative accuracy or better.

use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialFnError {
    #[error("{function}: argument {value} outside domain ({requirement})")]
    Domain {
        function: &'static str,
        value: f64,
        requirement: &'static str,
    },
    #[error("{function}: result overflows f64 at argument {value}")]
    Overflow { function: &'static str, value: f64 },
}

/// A finite, strictly positive real number.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RealPositive(f64);

impl RealPositive {
    pub fn new(value: f64) -> Option<Self> {
        (value.is_finite() && value > 0.0).then_some(Self(value))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl fmt::Display for RealPositive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn positive(function: &'static str, x: f64) -> Result<f64, SpecialFnError> {
    RealPositive::new(x)
        .map(RealPositive::get)
        .ok_or(SpecialFnError::Domain {
            function,
            value: x,
            requirement: "finite and > 0",
        })
}

const LANCZOS_G: f64 = 607.0 / 128.0;

#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

/// Γ(x) for real x > 0.
///
/// Uses the reflection formula below 0.5 and the Lanczos series above it.
/// Overflows (and reports it) just past x ≈ 171.6.
pub fn gamma(x: f64) -> Result<f64, SpecialFnError> {
    let x = positive("gamma", x)?;
    if x < 0.5 {
        let reflected = lanczos(1.0 - x);
        return Ok(PI / ((PI * x).sin() * reflected));
    }
    let value = lanczos(x);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(SpecialFnError::Overflow {
            function: "gamma",
            value: x,
        })
    }
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut series = LANCZOS_COEFFS[0];
    for (j, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + j as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    // split the power so t^(z+1/2) does not overflow before e^-t brings it back
    let half_power = t.powf((z + 0.5) / 2.0);
    (2.0 * PI).sqrt() * half_power * (half_power * (-t).exp()) * series
}

/// Even-index Bernoulli numbers B₂, B₄, …, B₂ₘ as exact rationals.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    /// Builds B₂..B₂ₘ from Σⱼ C(n+1, j)·Bⱼ = 0.
    pub fn new(max_even_index: usize) -> Self {
        let top = max_even_index.max(2);
        let mut all: Vec<BigRational> = Vec::with_capacity(top + 1);
        all.push(BigRational::one());
        for n in 1..=top {
            let mut binom = BigInt::one();
            let mut acc = BigRational::zero();
            for (j, b) in all.iter().enumerate() {
                acc += b * BigRational::from_integer(binom.clone());
                // C(n+1, j+1) = C(n+1, j)·(n+1−j)/(j+1)
                binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
            }
            all.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
        }
        let values = all.into_iter().skip(2).step_by(2).collect();
        Self { values }
    }

    /// The process-wide table up to B₂₀.
    pub fn shared() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(|| BernoulliTable::new(20))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// B₂ⱼ for j ≥ 1.
    pub fn even(&self, j: usize) -> Option<&BigRational> {
        j.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn even_f64(&self, j: usize) -> Option<f64> {
        self.even(j)
            .and_then(|b| Some(b.numer().to_f64()? / b.denom().to_f64()?))
    }
}

/// Target relative truncation error of [`zeta`].
pub const ZETA_TOLERANCE: f64 = 1e-12;

/// Riemann ζ(x) for real x > 1.
///
/// Sums the first N−1 terms directly and adds the Euler–Maclaurin tail
///
/// ```text
/// N^(1−x)/(x−1) + N^(−x)/2 + Σ_{j=1..10} B₂ⱼ/(2j)! · x(x+1)…(x+2j−2) · N^(−x−2j+1)
/// ```
///
/// N starts at 10 and doubles until the last correction term is below
/// [`ZETA_TOLERANCE`] (scaled down a further 1e4) relative to the result.
pub fn zeta(x: f64) -> Result<f64, SpecialFnError> {
    if !x.is_finite() || x <= 1.0 {
        return Err(SpecialFnError::Domain {
            function: "zeta",
            value: x,
            requirement: "finite and > 1",
        });
    }
    let mut cutoff = 10_u64;
    loop {
        let (value, last_term) = zeta_euler_maclaurin(x, cutoff);
        if last_term.abs() <= ZETA_TOLERANCE * 1e-4 * value || cutoff >= 1 << 20 {
            return Ok(value);
        }
        cutoff *= 2;
    }
}

fn zeta_euler_maclaurin(x: f64, cutoff: u64) -> (f64, f64) {
    let table = BernoulliTable::shared();
    let n = cutoff as f64;
    // direct part, smallest terms first
    let mut head = 0.0;
    for m in (1..cutoff).rev() {
        head += (m as f64).powf(-x);
    }
    let n_pow = n.powf(-x);
    let mut tail = n * n_pow / (x - 1.0) + 0.5 * n_pow;

    // running factor: x(x+1)…(x+2j−2) · N^(−x−2j+1) / (2j)!
    let mut factor = x * n_pow / n;
    let mut last = 0.0;
    for j in 1..=table.len() {
        if j > 1 {
            let a = x + (2 * j - 3) as f64;
            let b = x + (2 * j - 2) as f64;
            factor *= a * b / (n * n * ((2 * j - 1) * (2 * j)) as f64);
        } else {
            factor /= 2.0;
        }
        last = table.even_f64(j).expect("index within table") * factor;
        tail += last;
    }
    (head + tail, last)
}

/// C(s) = Γ(1+1/s)·ζ(1+1/s).
pub fn capital_c(s: f64) -> Result<f64, SpecialFnError> {
    let s = positive("capital_c", s)?;
    let arg = 1.0 + 1.0 / s;
    Ok(gamma(arg)? * zeta(arg)?)
}

/// Regularized value of s·Σₖ B₂ₖ/(2k(2k−1)), namely s − (s/2)·ln(2π).
///
/// The series itself diverges; this is the constant obtained by reading
/// Stirling's series for ln Γ(n+1) at n = 1.
pub fn bernoulli_series_constant(s: f64) -> Result<f64, SpecialFnError> {
    let s = positive("bernoulli_series_constant", s)?;
    Ok(s - 0.5 * s * (2.0 * PI).ln())
}
