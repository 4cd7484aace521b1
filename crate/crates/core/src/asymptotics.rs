//! Saddle-point asymptotics for Gentile statistics on the spectrum ε_m = m^s.
//!
//! With x = e^{−β} the generating function of p_k^s(n) is the partition
//! function Z(β) of particles that may occupy each level at most k times.
//! The smooth density of states follows from the entropy S(β) = βE + ln Z
//! expanded around its real stationary point β₀:
//!
//! ```text
//! ρ̄(E) = exp S(β₀) / √(2π S''(β₀))
//! ```
//!
//! At small β the log partition function behaves as αC(s)/β^{1/s}, with
//! α = 1 − (k+1)^{−1/s} (α = 1 for unbounded k) and C(s) from
//! [`capital_c`]. That gives the explicit saddle β₀ = κ·E^{−s/(s+1)} with
//! κ = (αC(s)/s)^{s/(s+1)}, and the three densities below differ only in how
//! the half-log corrections of S are approximated at β₀.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exact::Multiplicity;
use crate::specialfn::{bernoulli_series_constant, capital_c, SpecialFnError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticError {
    #[error("{what} = {value} is out of range ({requirement})")]
    Domain {
        what: &'static str,
        value: f64,
        requirement: &'static str,
    },
    #[error("{formula} does not apply to k = {k}")]
    WrongFormula { formula: Formula, k: Multiplicity },
    #[error(transparent)]
    Special(#[from] SpecialFnError),
}

fn require(
    what: &'static str,
    value: f64,
    ok: bool,
    requirement: &'static str,
) -> Result<f64, AsymptoticError> {
    if ok && value.is_finite() {
        Ok(value)
    } else {
        Err(AsymptoticError::Domain {
            what,
            value,
            requirement,
        })
    }
}

/// Spectrum exponent s and occupancy cap k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatWeight {
    s: f64,
    k: Multiplicity,
}

impl StatWeight {
    pub fn new(s: f64, k: Multiplicity) -> Result<Self, AsymptoticError> {
        require("s", s, s > 0.0, "finite and > 0")?;
        if k == Multiplicity::AtMost(0) {
            return Err(AsymptoticError::Domain {
                what: "k",
                value: 0.0,
                requirement: ">= 1",
            });
        }
        Ok(Self { s, k })
    }

    pub fn bosonic(s: f64) -> Result<Self, AsymptoticError> {
        Self::new(s, Multiplicity::Unbounded)
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn k(&self) -> Multiplicity {
        self.k
    }
}

/// Which density formula produced an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Formula {
    /// Keeps 1 − e^{−(k+1)β₀} under the root; finite k.
    FullGentile,
    /// Replaces 1 − e^{−(k+1)β₀} by (k+1)β₀; finite k.
    FiniteK,
    /// Unbounded k, including the −(s/2)ln(2π) constant.
    Bosonic,
    /// exp(π√(E/3)) / (4·3^{1/4}·E^{3/4}).
    ClosedFormDistinct,
    /// exp(π√(2E/3)) / (4√3·E).
    ClosedFormHR,
}

impl Formula {
    /// Short equation-style tag used on the command line.
    pub fn tag(self) -> &'static str {
        match self {
            Formula::FullGentile => "eq20",
            Formula::FiniteK => "eq21",
            Formula::Bosonic => "eq23",
            Formula::ClosedFormDistinct => "distinct-s1",
            Formula::ClosedFormHR => "hardy-ramanujan-s1",
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityEstimate {
    pub value: f64,
    /// ln of `value`, available even where `value` overflows.
    pub ln_value: f64,
    pub formula: Formula,
}

impl DensityEstimate {
    fn from_ln(ln_value: f64, formula: Formula) -> Self {
        Self {
            value: ln_value.exp(),
            ln_value,
            formula,
        }
    }
}

/// Everything the saddle-point evaluation needs for one (s, k, E).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SaddleData {
    pub alpha: f64,
    pub c_of_s: f64,
    pub kappa: f64,
    pub beta0: f64,
    pub energy: f64,
    /// S(β₀) including the half-log terms.
    pub entropy_at_saddle: f64,
    /// S''(β₀) of the leading term, ((s+1)/s)·κ⁻¹·E^{(2s+1)/(s+1)}.
    pub s_dd_at_saddle: f64,
}

impl SaddleData {
    /// β₀E + αC/β₀^{1/s}, which equals (s+1)κE^{1/(s+1)}.
    pub fn leading_entropy(&self, s: f64) -> f64 {
        self.beta0 * self.energy + self.alpha * self.c_of_s * self.beta0.powf(-1.0 / s)
    }
}

/// α = 1 − (k+1)^{−1/s}, or 1 for unbounded k.
pub fn alpha(w: StatWeight) -> f64 {
    match w.k {
        Multiplicity::AtMost(k) => 1.0 - (k as f64 + 1.0).powf(-1.0 / w.s),
        Multiplicity::Unbounded => 1.0,
    }
}

/// κ = (αC(s)/s)^{s/(1+s)}.
pub fn kappa(w: StatWeight) -> Result<f64, AsymptoticError> {
    Ok(kappa_from(w, alpha(w), capital_c(w.s)?))
}

fn kappa_from(w: StatWeight, alpha: f64, c_of_s: f64) -> f64 {
    (alpha * c_of_s / w.s).powf(w.s / (1.0 + w.s))
}

/// S(β) = βE + αC/β^{1/s} with the half-log terms.
///
/// For finite k the corrections are −½ln(1−e^{−(k+1)β}) + ½ln(1−e^{−β}).
/// For unbounded k only the denominator series contributes:
/// +½ln(1−e^{−β}) − (s/2)ln(2π). Terms of order β are dropped.
pub fn entropy(w: StatWeight, beta: f64, energy: f64) -> Result<f64, AsymptoticError> {
    let lead = leading_entropy(w, beta, energy)?;
    let denominator = 0.5 * (-(-beta).exp()).ln_1p();
    let correction = match w.k {
        Multiplicity::AtMost(k) => {
            let numerator = -0.5 * (-(-(k as f64 + 1.0) * beta).exp()).ln_1p();
            numerator + denominator
        }
        Multiplicity::Unbounded => {
            // s − (s/2)ln(2π) minus the s already absorbed by the integral term
            denominator + bernoulli_series_constant(w.s)? - w.s
        }
    };
    Ok(lead + correction)
}

/// βE + αC(s)/β^{1/s}, the part of S(β) that fixes the saddle point.
pub fn leading_entropy(w: StatWeight, beta: f64, energy: f64) -> Result<f64, AsymptoticError> {
    require("beta", beta, beta > 0.0, "finite and > 0")?;
    require("E", energy, energy >= 0.0, "finite and >= 0")?;
    Ok(beta * energy + alpha(w) * capital_c(w.s)? * beta.powf(-1.0 / w.s))
}

/// The real saddle point of the leading-order entropy at energy E.
pub fn saddle(w: StatWeight, energy: f64) -> Result<SaddleData, AsymptoticError> {
    require("E", energy, energy > 0.0, "finite and > 0")?;
    let alpha = alpha(w);
    let c_of_s = capital_c(w.s)?;
    let kappa = kappa_from(w, alpha, c_of_s);
    let s = w.s;
    let beta0 = kappa * energy.powf(-s / (s + 1.0));
    let s_dd_at_saddle = (s + 1.0) / s / kappa * energy.powf((2.0 * s + 1.0) / (s + 1.0));
    Ok(SaddleData {
        alpha,
        c_of_s,
        kappa,
        beta0,
        energy,
        entropy_at_saddle: entropy(w, beta0, energy)?,
        s_dd_at_saddle,
    })
}

fn density_energy(energy: f64) -> Result<f64, AsymptoticError> {
    require("E", energy, energy >= 1.0, "finite and >= 1")
}

fn finite_cap(w: StatWeight, formula: Formula) -> Result<f64, AsymptoticError> {
    w.k.bound()
        .map(|k| k as f64)
        .ok_or(AsymptoticError::WrongFormula { formula, k: w.k })
}

/// ln of exp(S_lead)/√(2πS''), shared by all three densities.
fn gaussian_ln(w: StatWeight, sd: &SaddleData) -> f64 {
    sd.leading_entropy(w.s) - 0.5 * (2.0 * PI * sd.s_dd_at_saddle).ln()
}

/// Density keeping the factor 1 − exp(−(k+1)β₀) under the square root:
///
/// ```text
/// κ√s · exp[κ(s+1)E^{1/(1+s)}] / √(2π(s+1)E^{(3s+1)/(s+1)} · [1 − exp(−(k+1)κE^{−s/(s+1)})])
/// ```
///
/// Never below [`density_finite_k`], since 1 − e^{−x} ≤ x.
pub fn density_full(w: StatWeight, energy: f64) -> Result<DensityEstimate, AsymptoticError> {
    let k = finite_cap(w, Formula::FullGentile)?;
    let sd = saddle(w, density_energy(energy)?)?;
    let bracket = -(-(k + 1.0) * sd.beta0).exp_m1();
    let ln = gaussian_ln(w, &sd) + 0.5 * (sd.beta0.ln() - bracket.ln());
    Ok(DensityEstimate::from_ln(ln, Formula::FullGentile))
}

/// Large-E density for finite k:
///
/// ```text
/// √(sκ) · exp[κ(s+1)E^{1/(1+s)}] / √(2π(s+1)(k+1)E^{(2s+1)/(s+1)})
/// ```
pub fn density_finite_k(w: StatWeight, energy: f64) -> Result<DensityEstimate, AsymptoticError> {
    let k = finite_cap(w, Formula::FiniteK)?;
    let sd = saddle(w, density_energy(energy)?)?;
    let ln = gaussian_ln(w, &sd) - 0.5 * (k + 1.0).ln();
    Ok(DensityEstimate::from_ln(ln, Formula::FiniteK))
}

/// Unbounded-k density, the Hardy–Ramanujan form for general s:
///
/// ```text
/// κ√s · exp[κ(s+1)E^{1/(1+s)}] / ((2π)^{(s+1)/2} · √((s+1)E^{(3s+1)/(s+1)}))
/// ```
pub fn density_bosonic(s: f64, energy: f64) -> Result<DensityEstimate, AsymptoticError> {
    let w = StatWeight::bosonic(s)?;
    let sd = saddle(w, density_energy(energy)?)?;
    // ½ln(1−e^{−β₀}) ≈ ½ln β₀, plus the constant that survives only for unbounded k
    let constant = bernoulli_series_constant(s)? - s;
    let ln = gaussian_ln(w, &sd) + 0.5 * sd.beta0.ln() + constant;
    Ok(DensityEstimate::from_ln(ln, Formula::Bosonic))
}

/// Asymptotic count of partitions of E into distinct parts.
pub fn closed_form_distinct(energy: f64) -> Result<DensityEstimate, AsymptoticError> {
    let e = density_energy(energy)?;
    let ln = PI * (e / 3.0).sqrt() - (4.0 * 3f64.powf(0.25)).ln() - 0.75 * e.ln();
    Ok(DensityEstimate::from_ln(ln, Formula::ClosedFormDistinct))
}

/// Hardy–Ramanujan asymptotic for unrestricted partitions of E.
pub fn closed_form_hr(energy: f64) -> Result<DensityEstimate, AsymptoticError> {
    let e = density_energy(energy)?;
    let ln = PI * (2.0 * e / 3.0).sqrt() - (4.0 * 3f64.sqrt()).ln() - e.ln();
    Ok(DensityEstimate::from_ln(ln, Formula::ClosedFormHR))
}
