//! The integral side: Wallis integrals, the binomial series for the quarter
//! period, and the log-kernel integrals that turn it into
//! `sum 1/(2k+1)^2 / sum (-1)^k/(2k+1)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_rational::Ratio;
use serde::Serialize;

use crate::config::{ACCELERATED_TERMS, CLOSED_FORM_TOL, SERIES_LEG_TOL, SERIES_S_BASE_TERMS};
use crate::error::{Error, Result};
use crate::lseries::{odd_power_sum, zeta_accelerated, zeta_hat_closed_form, ODD_SUM_TERMS};
use crate::quadrature::{gauss_kronrod, tanh_sinh, tanh_sinh_with, QuadratureResult};
use crate::report::{IdentityCheck, Method, SeriesEstimate};
use crate::summation::Compensated;

/// Target accuracy handed to the integrators.
const QUAD_TOL: f64 = 1e-13;

/// `int_0^{pi/2} cos^n x dx` by `I_n = (n-1)/n I_{n-2}` from `I_0 = pi/2`.
pub fn wallis(n: u32) -> Result<f64> {
    if n % 2 == 1 {
        return Err(Error::Unsupported(format!("odd exponent {n}")));
    }
    let mut value = FRAC_PI_2;
    for m in (2..=n).step_by(2) {
        value *= (m - 1) as f64 / m as f64;
    }
    Ok(value)
}

/// `int_0^{pi/2} cos^n x dx` by adaptive quadrature.
pub fn wallis_quadrature(n: u32) -> Result<QuadratureResult> {
    gauss_kronrod(|x| x.cos().powi(n as i32), 0.0, FRAC_PI_2, QUAD_TOL)
}

/// `(2k-1)!! / (2k)!!`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DoubleFactorialRatio {
    pub k: u32,
    pub value: f64,
}

impl DoubleFactorialRatio {
    pub fn new(k: u32) -> Self {
        let value = (1..=k).fold(1.0, |acc, j| acc * (2 * j - 1) as f64 / (2 * j) as f64);
        Self { k, value }
    }

    /// Exact value as a reduced fraction; `k <= 30`.
    pub fn exact(k: u32) -> Result<Ratio<u128>> {
        if k > 30 {
            return Err(Error::Unsupported(format!("exact ratio limited to k <= 30, got {k}")));
        }
        Ok((1..=k).fold(Ratio::from_integer(1u128), |acc, j| {
            acc * Ratio::new((2 * j - 1) as u128, (2 * j) as u128)
        }))
    }
}

/// `A = 2 sum (-1)^k/(2k+1)`, i.e. twice the accelerated mod-4 series at 1.
fn twice_beta_one() -> Result<SeriesEstimate> {
    let z = zeta_accelerated(1.0, ACCELERATED_TERMS)?;
    Ok(SeriesEstimate {
        value: 2.0 * z.value,
        error_proxy: 2.0 * z.error_proxy,
        ..z
    })
}

/// Wallis recurrence against `(2k-1)!!/(2k)!! * A`.
pub fn wallis_closed_form_check(k: u32, tol: f64) -> Result<IdentityCheck> {
    let lhs = SeriesEstimate::exact(wallis(2 * k)?, Method::Recurrence, 2 * k as u64);
    let a = twice_beta_one()?;
    let rhs = SeriesEstimate {
        value: DoubleFactorialRatio::new(k).value * a.value,
        ..a
    };
    Ok(IdentityCheck::new(format!("analysis.wallis_closed_form.k={k}"), lhs, rhs, tol))
}

/// Quadrature of `cos^{2k}` against the recurrence.
pub fn wallis_quadrature_check(k: u32, tol: f64) -> Result<IdentityCheck> {
    let quad = wallis_quadrature(2 * k)?;
    let lhs = SeriesEstimate {
        value: quad.value,
        s: None,
        method: Method::Quadrature,
        cutoff: quad.evaluations as u64,
        error_proxy: quad.abs_error_estimate,
    };
    let rhs = SeriesEstimate::exact(wallis(2 * k)?, Method::Recurrence, 2 * k as u64);
    Ok(IdentityCheck::new(format!("analysis.wallis_quadrature.k={k}"), lhs, rhs, tol))
}

/// Streams the binomial-series terms `(2k-1)!!/(2k)!! / (2k+1)`.
struct SeriesS {
    k: u64,
    ratio: f64,
}

impl Iterator for SeriesS {
    type Item = f64;
    fn next(&mut self) -> Option<f64> {
        if self.k > 0 {
            self.ratio *= (2 * self.k - 1) as f64 / (2 * self.k) as f64;
        }
        let term = self.ratio / (2 * self.k + 1) as f64;
        self.k += 1;
        Some(term)
    }
}

fn series_s_terms() -> SeriesS {
    SeriesS { k: 0, ratio: 1.0 }
}

/// Partial sums of `S = sum_{k>=0} (2k-1)!!/(2k)!! / (2k+1)` at each
/// requested cutoff (ascending).
fn series_s_at(cutoffs: &[u64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(cutoffs.len());
    let mut acc = Compensated::new();
    let mut terms = series_s_terms();
    let mut done = 0u64;
    for &n in cutoffs {
        while done < n {
            acc.add(terms.next().expect("infinite"));
            done += 1;
        }
        out.push(acc.value());
    }
    out
}

/// First `N` terms of the binomial series for `int_0^1 (1-x^2)^{-1/2} dx`.
pub fn series_s(terms: u64) -> Result<SeriesEstimate> {
    if terms == 0 {
        return Err(Error::InvalidInput("need at least one term".into()));
    }
    let sums = series_s_at(&[terms / 2, terms]);
    Ok(SeriesEstimate {
        value: sums[1],
        s: None,
        method: Method::PartialSum,
        cutoff: terms,
        error_proxy: sums[1] - sums[0],
    })
}

/// Richardson extrapolation of [`series_s`] from cutoffs N, 4N, 16N.
///
/// The tail behaves like `c1 N^-1/2 + c3 N^-3/2 + ...` (half-integer powers
/// only), so two elimination steps with factors 2 and 8 leave `O(N^-5/2)`.
pub fn series_s_extrapolated(base: u64) -> Result<SeriesEstimate> {
    if base == 0 {
        return Err(Error::InvalidInput("need at least one term".into()));
    }
    let s = series_s_at(&[base, 4 * base, 16 * base]);
    let r1 = 2.0 * s[1] - s[0];
    let r2 = 2.0 * s[2] - s[1];
    let value = (8.0 * r2 - r1) / 7.0;
    Ok(SeriesEstimate {
        value,
        s: None,
        method: Method::Extrapolated,
        cutoff: 16 * base,
        error_proxy: (value - r2).abs(),
    })
}

/// `sum t^{2k}/(2k+1)` against `atanh(t)/t = ln((1+t)/(1-t)) / (2t)`.
pub fn log_series_closed_form_check(t: f64, tol: f64) -> Result<IdentityCheck> {
    if !(t != 0.0 && t.abs() < 1.0) {
        return Err(Error::Domain(format!("need 0 < |t| < 1, got {t}")));
    }
    let t2 = t * t;
    let mut power = 1.0;
    let mut acc = Compensated::new();
    let mut k = 0u64;
    // stop once t^{2K} < tol / 10
    while power >= tol / 10.0 {
        acc.add(power / (2 * k + 1) as f64);
        power *= t2;
        k += 1;
    }
    let lhs = SeriesEstimate {
        value: acc.value(),
        s: None,
        method: Method::PartialSum,
        cutoff: k,
        error_proxy: power / (2 * k + 1) as f64 / (1.0 - t2),
    };
    let closed = (t.ln_1p() - (-t).ln_1p()) / (2.0 * t);
    let rhs = SeriesEstimate::closed_form(closed, None);
    Ok(IdentityCheck::new(format!("analysis.log_series.t={t}"), lhs, rhs, tol))
}

/// `int_0^1 (-ln u) u^{2k} du`, which equals `1/(2k+1)^2`.
pub fn log_kernel_integral(k: u32) -> Result<QuadratureResult> {
    tanh_sinh(|u| -u.ln() * u.powi(2 * k as i32), 0.0, 1.0, QUAD_TOL)
}

pub fn log_kernel_check(k: u32, tol: f64) -> Result<IdentityCheck> {
    let quad = log_kernel_integral(k)?;
    let lhs = SeriesEstimate {
        value: quad.value,
        s: None,
        method: Method::Quadrature,
        cutoff: quad.evaluations as u64,
        error_proxy: quad.abs_error_estimate,
    };
    let m = (2 * k + 1) as f64;
    let rhs = SeriesEstimate::closed_form(1.0 / (m * m), None);
    Ok(IdentityCheck::new(format!("analysis.log_kernel.k={k}"), lhs, rhs, tol))
}

/// `int_0^1 (1-x^2)^{-1/2} dx` by tanh-sinh on the raw integrand.
pub fn quarter_period_quadrature() -> Result<QuadratureResult> {
    tanh_sinh_with(|x, _, to_one| 1.0 / (to_one * (1.0 + x)).sqrt(), 0.0, 1.0, QUAD_TOL)
}

/// The same integral after `x = sin(theta)`, by Gauss-Kronrod.
pub fn quarter_period_substituted() -> Result<QuadratureResult> {
    gauss_kronrod(
        |theta| {
            let (s, c) = theta.sin_cos();
            c / ((1.0 - s) * (1.0 + s)).sqrt()
        },
        0.0,
        FRAC_PI_2,
        QUAD_TOL,
    )
}

/// One route to the quarter period.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodLeg {
    pub name: &'static str,
    pub estimate: SeriesEstimate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodChain {
    pub legs: Vec<PeriodLeg>,
    pub checks: Vec<IdentityCheck>,
}

impl PeriodChain {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodTolerances {
    /// Pairs that involve the extrapolated series leg.
    pub series: f64,
    /// All other pairs.
    pub exact: f64,
}

impl Default for PeriodTolerances {
    fn default() -> Self {
        Self {
            series: SERIES_LEG_TOL,
            exact: CLOSED_FORM_TOL,
        }
    }
}

fn quad_estimate(q: QuadratureResult) -> SeriesEstimate {
    SeriesEstimate {
        value: q.value,
        s: None,
        method: Method::Quadrature,
        cutoff: q.evaluations as u64,
        error_proxy: q.abs_error_estimate,
    }
}

/// Every route to `int_0^1 (1-x^2)^{-1/2} dx = zeta_hat(1)`, compared pairwise.
///
/// Legs: tanh-sinh on the raw integrand, Gauss-Kronrod after `x = sin(theta)`,
/// the extrapolated binomial series, `(2/A) sum_{odd} 1/n^2` with
/// `A = 2 sum (-1)^k/(2k+1)`, and the closed form of the twisted series.
pub fn period_chain_check(tol: PeriodTolerances, workers: usize) -> Result<PeriodChain> {
    let a = twice_beta_one()?;
    let odd_squares = odd_power_sum(2.0, ODD_SUM_TERMS, workers)?;
    let ratio = SeriesEstimate {
        value: 2.0 / a.value * odd_squares.value,
        s: Some(1.0),
        method: Method::Composite,
        cutoff: odd_squares.cutoff,
        error_proxy: odd_squares.error_proxy + a.error_proxy,
    };
    let legs = vec![
        PeriodLeg {
            name: "quadrature_raw",
            estimate: quad_estimate(quarter_period_quadrature()?),
        },
        PeriodLeg {
            name: "quadrature_substituted",
            estimate: quad_estimate(quarter_period_substituted()?),
        },
        PeriodLeg {
            name: "series_extrapolated",
            estimate: series_s_extrapolated(SERIES_S_BASE_TERMS)?,
        },
        PeriodLeg {
            name: "log_kernel_ratio",
            estimate: ratio,
        },
        PeriodLeg {
            name: "zeta_hat_closed_form",
            estimate: zeta_hat_closed_form(1.0)?,
        },
    ];
    let mut checks = Vec::new();
    for i in 0..legs.len() {
        for j in i + 1..legs.len() {
            let involves_series = legs[i].name == "series_extrapolated" || legs[j].name == "series_extrapolated";
            let t = if involves_series { tol.series } else { tol.exact };
            checks.push(IdentityCheck::new(
                format!("analysis.period_chain.{}~{}", legs[i].name, legs[j].name),
                legs[i].estimate,
                legs[j].estimate,
                t,
            ));
        }
    }
    Ok(PeriodChain { legs, checks })
}

/// `int_{-1}^{1} (1-x^2)^{-1/2} dx`, the full half-circumference `pi`.
pub fn half_period_quadrature() -> Result<QuadratureResult> {
    tanh_sinh_with(|_, from_lo, to_hi| 1.0 / (from_lo * to_hi).sqrt(), -1.0, 1.0, QUAD_TOL)
}

pub fn half_period_check(tol: f64) -> Result<IdentityCheck> {
    Ok(IdentityCheck::new(
        "analysis.half_period",
        quad_estimate(half_period_quadrature()?),
        SeriesEstimate::closed_form(PI, None),
        tol,
    ))
}
