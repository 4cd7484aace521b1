//! Built-in consistency suites behind `gentile selftest`.

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;

use crate::asymptotics::{
    closed_form_distinct, closed_form_hr, density_bosonic, density_finite_k, leading_entropy,
    saddle, StatWeight,
};
use crate::exact::{
    count_table, oracle_enumerate, oracle_pentagonal, oracle_product, CountTable, Multiplicity,
    PartitionSpec,
};
use crate::specialfn::{capital_c, zeta};

pub type CountFn = fn(u32, Multiplicity, usize) -> CountTable;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{}: {} ({})", self.name, verdict, self.detail)
    }
}

fn report(name: &'static str, failure: Option<String>, ok_detail: String) -> SuiteReport {
    match failure {
        None => SuiteReport {
            name,
            passed: true,
            detail: ok_detail,
        },
        Some(detail) => SuiteReport {
            name,
            passed: false,
            detail,
        },
    }
}

pub struct SelfTest {
    deep: bool,
    dp: CountFn,
}

impl SelfTest {
    pub fn new(deep: bool) -> Self {
        Self {
            deep,
            dp: count_table,
        }
    }

    /// Checks a different counting routine against the oracles.
    pub fn with_counter(deep: bool, dp: CountFn) -> Self {
        Self { deep, dp }
    }

    pub fn run(&self) -> Vec<SuiteReport> {
        vec![
            self.special_functions(),
            self.oracle_equivalence(),
            self.prefactor_identities(),
            self.saddle_validity(),
            self.desk_checks(),
        ]
    }

    fn special_functions(&self) -> SuiteReport {
        let mut failure = None;
        let pi2_6 = PI * PI / 6.0;
        for (label, got) in [("zeta(2)", zeta(2.0)), ("C(1)", capital_c(1.0))] {
            match got {
                Ok(v) if ((v - pi2_6) / pi2_6).abs() <= 1e-12 => {}
                other => failure = Some(format!("{label} = {other:?}")),
            }
        }
        for x in [1.2, 1.5, 2.0, 3.0, 4.0] {
            let direct = zeta_direct(x, 1_000_000);
            let em = zeta(x).unwrap_or(f64::NAN);
            if ((em - direct) / direct).abs() > 1e-10 {
                failure = Some(format!("zeta({x}) = {em}, direct sum {direct}"));
            }
        }
        report("special-functions", failure, "zeta, C(s)".into())
    }

    fn oracle_equivalence(&self) -> SuiteReport {
        let caps = [
            Multiplicity::AtMost(1),
            Multiplicity::AtMost(2),
            Multiplicity::AtMost(3),
            Multiplicity::AtMost(4),
            Multiplicity::Unbounded,
        ];
        let mut cases: Vec<(u32, Multiplicity, usize)> = Vec::new();
        for s in 1..=3 {
            for k in caps {
                let n_max = if self.deep && s == 1 { 2000 } else { 200 };
                cases.push((s, k, n_max));
            }
        }
        let failures: Vec<String> = cases
            .par_iter()
            .filter_map(|&(s, k, n_max)| self.check_case(s, k, n_max).err())
            .collect();
        let scope = if self.deep {
            "n≤2000 for s=1, n≤200"
        } else {
            "n≤200"
        };
        report(
            "oracle-equivalence",
            failures.into_iter().next(),
            scope.into(),
        )
    }

    fn check_case(&self, s: u32, k: Multiplicity, n_max: usize) -> Result<(), String> {
        let dp = (self.dp)(s, k, n_max);
        let reference = match k {
            Multiplicity::AtMost(_) => {
                Some(oracle_product(s, k, n_max).map_err(|e| e.to_string())?)
            }
            Multiplicity::Unbounded if s == 1 => Some(oracle_pentagonal(n_max)),
            Multiplicity::Unbounded => None,
        };
        if let Some(reference) = reference {
            if let Some(n) = (0..=n_max).find(|&n| dp.get(n) != reference.get(n)) {
                return Err(format!(
                    "s={s} k={k} n={n}: dp {:?} vs oracle {:?}",
                    dp.get(n),
                    reference.get(n)
                ));
            }
        }
        for n in 0..=n_max.min(40) {
            let spec = PartitionSpec::new(s, k, n).map_err(|e| e.to_string())?;
            let listed = oracle_enumerate(spec).map_err(|e| e.to_string())?;
            if dp.get(n) != Some(&listed) {
                return Err(format!(
                    "s={s} k={k} n={n}: dp {:?} vs enumeration {listed}",
                    dp.get(n)
                ));
            }
        }
        Ok(())
    }

    fn prefactor_identities(&self) -> SuiteReport {
        let fermi = StatWeight::new(1.0, Multiplicity::AtMost(1)).expect("valid weight");
        let mut failure = None;
        for i in 0..=400 {
            let e = 10f64.powf(4.0 * i as f64 / 400.0);
            let pairs = [
                (density_finite_k(fermi, e), closed_form_distinct(e)),
                (density_bosonic(1.0, e), closed_form_hr(e)),
            ];
            for (general, closed) in pairs {
                match (general, closed) {
                    (Ok(g), Ok(c)) if ((g.value - c.value) / c.value).abs() <= 1e-12 => {}
                    (g, c) => failure = Some(format!("E={e}: {g:?} vs {c:?}")),
                }
            }
        }
        report("prefactor-identities", failure, "E in [1, 1e4]".into())
    }

    fn saddle_validity(&self) -> SuiteReport {
        let mut failure = None;
        for s in [1.0, 2.0, 3.0] {
            for k in [
                Multiplicity::AtMost(1),
                Multiplicity::AtMost(4),
                Multiplicity::Unbounded,
            ] {
                for e in [1e2, 1e4] {
                    if let Err(msg) = grid_check(s, k, e) {
                        failure = Some(msg);
                    }
                }
            }
        }
        report("saddle-validity", failure, "leading-order grid scan".into())
    }

    fn desk_checks(&self) -> SuiteReport {
        let p = oracle_pentagonal(800);
        let d = (self.dp)(1, Multiplicity::AtMost(1), 300);
        let fermi = StatWeight::new(1.0, Multiplicity::AtMost(1)).expect("valid weight");
        let mut failure = None;
        let hr = density_bosonic(1.0, 100.0).map(|d| d.value / p[100].to_f64());
        if !matches!(hr, Ok(r) if (1.02..=1.07).contains(&r)) {
            failure = Some(format!("HR ratio at n=100: {hr:?}"));
        }
        for n in 50..=300 {
            let ratio = density_finite_k(fermi, n as f64).map(|e| e.value / d[n].to_f64());
            if !matches!(ratio, Ok(r) if (0.97..=1.03).contains(&r)) {
                failure = Some(format!("distinct ratio at n={n}: {ratio:?}"));
            }
        }
        report(
            "desk-checks",
            failure,
            "HR n=100, distinct n in [50, 300]".into(),
        )
    }
}

/// Kahan-summed Σ_{n<N} n^{−x} plus the integral and half-term tail.
pub fn zeta_direct(x: f64, terms: u64) -> f64 {
    let mut sum = 0.0_f64;
    let mut carry = 0.0_f64;
    for n in (1..terms).rev() {
        let y = (n as f64).powf(-x) - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    let big_n = terms as f64;
    sum + big_n.powf(1.0 - x) / (x - 1.0) + 0.5 * big_n.powf(-x)
}

/// Scans the leading-order entropy on a log grid around the closed-form β₀
/// and checks the discrete minimum sits within one grid step of it.
pub fn grid_check(s: f64, k: Multiplicity, energy: f64) -> Result<(), String> {
    let w = StatWeight::new(s, k).map_err(|e| e.to_string())?;
    let beta0 = saddle(w, energy).map_err(|e| e.to_string())?.beta0;
    const POINTS: usize = 2001;
    let lo = (beta0 / 10.0).ln();
    let hi = (beta0 * 10.0).ln();
    let grid: Vec<f64> = (0..POINTS)
        .map(|i| (lo + (hi - lo) * i as f64 / (POINTS - 1) as f64).exp())
        .collect();
    let mut best = 0;
    let mut best_val = f64::INFINITY;
    for (i, &b) in grid.iter().enumerate() {
        let v = leading_entropy(w, b, energy).map_err(|e| e.to_string())?;
        if v < best_val {
            best = i;
            best_val = v;
        }
    }
    let step = grid[(best + 1).min(POINTS - 1)] - grid[best.saturating_sub(1)];
    if (grid[best] - beta0).abs() <= step {
        Ok(())
    } else {
        Err(format!(
            "s={s} k={k} E={energy}: grid minimum {} vs beta0 {beta0}",
            grid[best]
        ))
    }
}
