//! The two L-type series of the conic.
//!
//! `zeta(s) = sum chi(n) n^-s` is the mod-4 series (Dirichlet beta) and
//! `zeta_hat(s) = sum chi_hat(n) n^-s` its Liouville twist. Their Euler
//! factors multiply to `1 / (1 - p^-2s)`, hence
//!
//! ```text
//! zeta(s) * zeta_hat(s) = sum_{n odd} n^-2s = (1 - 2^-2s) * riemann_zeta(2s)
//! ```
//!
//! which is what makes `zeta_hat(1) = pi/2` reachable numerically: the twisted
//! Dirichlet sum itself converges far too slowly.
//!
//! All sums run in ascending n and all products in ascending p.

use serde::Serialize;

use crate::arith::{a_p, primes_up_to, PrimeSieve};
use crate::config::{ACCELERATED_TERMS, CHUNK};
use crate::error::{Error, Result};
use crate::par;
use crate::report::{IdentityCheck, Method, SeriesEstimate};
use crate::summation::{sum_range, sum_range_acc, Compensated};

/// Terms summed directly before the tail correction in [`odd_power_sum`].
pub const ODD_SUM_TERMS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Series {
    Zeta,
    ZetaHat,
}

fn sign(p: u64) -> f64 {
    a_p(p).expect("odd prime").as_f64()
}

/// `1 / (1 - a_p p^-s)`.
pub fn euler_factor_zeta(p: u64, s: f64) -> f64 {
    1.0 / (1.0 - sign(p) * (p as f64).powf(-s))
}

/// `1 / (1 + a_p p^-s)`.
pub fn euler_factor_zeta_hat(p: u64, s: f64) -> f64 {
    1.0 / (1.0 + sign(p) * (p as f64).powf(-s))
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(msg()))
    }
}

/// `sum_{k=0}^{N-1} (-1)^k (2k+1)^-s`.
pub fn zeta_partial(s: f64, terms: u64, workers: usize) -> Result<SeriesEstimate> {
    require(s > 0.0, || format!("zeta partial sum needs s > 0, got {s}"))?;
    require(terms >= 1, || "need at least one term".into())?;
    let term = |k: u64| {
        let t = ((2 * k + 1) as f64).powf(-s);
        if k % 2 == 0 {
            t
        } else {
            -t
        }
    };
    Ok(SeriesEstimate {
        value: sum_range(0, terms, workers, term),
        s: Some(s),
        method: Method::PartialSum,
        cutoff: terms,
        error_proxy: ((2 * terms + 1) as f64).powf(-s),
    })
}

/// Euler transform of the alternating series by repeated averaging of its
/// first `terms` partial sums.
pub fn zeta_accelerated(s: f64, terms: usize) -> Result<SeriesEstimate> {
    require(s > 0.0, || format!("accelerated sum needs s > 0, got {s}"))?;
    require(terms >= 1, || "need at least one term".into())?;
    let mut partial = Vec::with_capacity(terms);
    let mut acc = Compensated::new();
    for k in 0..terms {
        let t = ((2 * k + 1) as f64).powf(-s);
        acc.add(if k % 2 == 0 { t } else { -t });
        partial.push(acc.value());
    }
    if terms == 1 {
        return Ok(SeriesEstimate {
            value: partial[0],
            s: Some(s),
            method: Method::AcceleratedSum,
            cutoff: 1,
            error_proxy: 3f64.powf(-s),
        });
    }
    while partial.len() > 2 {
        partial = partial.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    Ok(SeriesEstimate {
        value: 0.5 * (partial[0] + partial[1]),
        s: Some(s),
        method: Method::AcceleratedSum,
        cutoff: terms as u64,
        error_proxy: 0.5 * (partial[1] - partial[0]).abs(),
    })
}

const BERNOULLI_2J: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Riemann zeta for real `x > 1` by Euler-Maclaurin with 16 explicit terms.
pub fn riemann_zeta(x: f64) -> Result<f64> {
    require(x > 1.0, || format!("riemann zeta needs x > 1, got {x}"))?;
    const N: f64 = 16.0;
    let mut acc: Compensated = (1..16).map(|n| (n as f64).powf(-x)).collect();
    acc.add(N.powf(1.0 - x) / (x - 1.0));
    acc.add(0.5 * N.powf(-x));
    // B_2j/(2j)! * x(x+1)...(x+2j-2) * N^(-x-2j+1)
    let mut rising = x; // x(x+1)...(x+2j-2)
    let mut fact = 2.0; // (2j)!
    for (j, b) in BERNOULLI_2J.iter().enumerate() {
        let j = j + 1;
        acc.add(b / fact * rising * N.powf(-x - 2.0 * j as f64 + 1.0));
        let k = 2.0 * j as f64;
        rising *= (x + k - 1.0) * (x + k);
        fact *= (k + 1.0) * (k + 2.0);
    }
    Ok(acc.value())
}

/// `sum_{n odd} n^-x` as `(1 - 2^-x) riemann_zeta(x)`.
pub fn odd_zeta(x: f64) -> Result<f64> {
    Ok((1.0 - 2f64.powf(-x)) * riemann_zeta(x)?)
}

/// `sum_{n odd} n^-x` by direct ascending summation of `terms` odd
/// reciprocals plus an Euler-Maclaurin tail on the remainder.
pub fn odd_power_sum(x: f64, terms: u64, workers: usize) -> Result<SeriesEstimate> {
    require(x > 1.0, || format!("odd power sum needs x > 1, got {x}"))?;
    require(terms >= 1, || "need at least one term".into())?;
    let mut acc = sum_range_acc(0, terms, workers, |k| ((2 * k + 1) as f64).powf(-x));
    // f(t) = (2t+1)^-x; tail = int_N f + f(N)/2 - f'(N)/12 + f'''(N)/720
    let m = (2 * terms + 1) as f64;
    let last = 8.0 * x * (x + 1.0) * (x + 2.0) * m.powf(-x - 3.0) / 720.0;
    acc.add(m.powf(1.0 - x) / (2.0 * (x - 1.0)));
    acc.add(0.5 * m.powf(-x));
    acc.add(2.0 * x * m.powf(-x - 1.0) / 12.0);
    acc.add(-last);
    Ok(SeriesEstimate {
        value: acc.value(),
        s: Some(x / 2.0),
        method: Method::PartialSum,
        cutoff: terms,
        error_proxy: last,
    })
}

/// `sum_{k=0}^{N-1} chi_hat(2k+1) (2k+1)^-s`.
pub fn zeta_hat_partial(s: f64, terms: u64, workers: usize) -> Result<SeriesEstimate> {
    require(s > 0.5, || format!("twisted partial sum needs s > 1/2, got {s}"))?;
    require(terms >= 1, || "need at least one term".into())?;
    let sieve = PrimeSieve::new(2 * terms - 1)?;
    zeta_hat_partial_with(&sieve, s, terms, workers)
}

/// As [`zeta_hat_partial`] with a caller-provided sieve covering `2N - 1`.
pub fn zeta_hat_partial_with(sieve: &PrimeSieve, s: f64, terms: u64, workers: usize) -> Result<SeriesEstimate> {
    require(s > 0.5, || format!("twisted partial sum needs s > 1/2, got {s}"))?;
    require(terms >= 1, || "need at least one term".into())?;
    if sieve.limit() < 2 * terms - 1 {
        return Err(Error::InvalidInput(format!(
            "sieve limit {} does not cover {}",
            sieve.limit(),
            2 * terms - 1
        )));
    }
    let lambda = sieve.liouville_table();
    let term = |k: u64| {
        let n = 2 * k + 1;
        // chi_hat(n) = lambda(n) * (-1)^k for n = 2k + 1
        let sign = lambda[n as usize] as f64 * if k % 2 == 0 { 1.0 } else { -1.0 };
        sign * (n as f64).powf(-s)
    };
    let half = terms / 2;
    let first = sum_range_acc(0, half, workers, term);
    let second = sum_range_acc(half, terms, workers, term);
    let mut total = first;
    total.merge(&second);
    Ok(SeriesEstimate {
        value: total.value(),
        s: Some(s),
        method: Method::PartialSum,
        cutoff: terms,
        error_proxy: if half == 0 { 0.0 } else { second.value().abs() },
    })
}

/// `zeta_hat(s) = [(1 - 2^-2s) riemann_zeta(2s)] / zeta(s)`.
pub fn zeta_hat_closed_form(s: f64) -> Result<SeriesEstimate> {
    require(s > 0.5, || format!("closed form needs s > 1/2, got {s}"))?;
    let zeta = zeta_accelerated(s, ACCELERATED_TERMS)?;
    let numerator = odd_zeta(2.0 * s)?;
    let value = numerator / zeta.value;
    Ok(SeriesEstimate {
        value,
        s: Some(s),
        method: Method::ClosedForm,
        cutoff: 0,
        error_proxy: value * zeta.error_proxy / zeta.value,
    })
}

fn factor(series: Series, p: u64, s: f64) -> f64 {
    match series {
        Series::Zeta => euler_factor_zeta(p, s),
        Series::ZetaHat => euler_factor_zeta_hat(p, s),
    }
}

fn ordered_product(series: Series, primes: &[u64], s: f64, workers: usize) -> f64 {
    let chunks: Vec<&[u64]> = primes.chunks(CHUNK).collect();
    par::map_ordered(&chunks, workers, |chunk| {
        chunk.iter().fold(1.0, |acc, &p| acc * factor(series, p, s))
    })
    .into_iter()
    .fold(1.0, |acc, x| acc * x)
}

/// Product of Euler factors over odd primes `p <= bound`.
pub fn euler_product(series: Series, s: f64, bound: u64, workers: usize) -> Result<SeriesEstimate> {
    require(s >= 1.0, || format!("euler product needs s >= 1, got {s}"))?;
    require(bound >= 3, || format!("prime bound must be at least 3, got {bound}"))?;
    let primes = primes_up_to(bound, workers);
    euler_product_over(series, s, &primes, bound, workers)
}

/// As [`euler_product`] over an ascending prime list (2 is skipped).
pub fn euler_product_over(series: Series, s: f64, primes: &[u64], bound: u64, workers: usize) -> Result<SeriesEstimate> {
    require(s >= 1.0, || format!("euler product needs s >= 1, got {s}"))?;
    let odd: Vec<u64> = primes.iter().copied().filter(|&p| p > 2 && p <= bound).collect();
    let split = odd.partition_point(|&p| p <= bound / 2);
    let lower = ordered_product(series, &odd[..split], s, workers);
    let upper = ordered_product(series, &odd[split..], s, workers);
    let value = lower * upper;
    Ok(SeriesEstimate {
        value,
        s: Some(s),
        method: Method::EulerProduct,
        cutoff: bound,
        error_proxy: (value - lower).abs(),
    })
}

/// Where the twisted factor comes from in [`functional_equation_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZetaHatRoute {
    ClosedForm,
    EulerProduct(u64),
    PartialSum(u64),
}

/// `zeta(s) * zeta_hat(s)` against the directly summed `sum_{n odd} n^-2s`.
pub fn functional_equation_check(s: f64, tol: f64, route: ZetaHatRoute, workers: usize) -> Result<IdentityCheck> {
    require(s >= 1.0, || format!("functional equation check needs s >= 1, got {s}"))?;
    let zeta = zeta_accelerated(s, ACCELERATED_TERMS)?;
    let hat = match route {
        ZetaHatRoute::ClosedForm => zeta_hat_closed_form(s)?,
        ZetaHatRoute::EulerProduct(bound) => euler_product(Series::ZetaHat, s, bound, workers)?,
        ZetaHatRoute::PartialSum(terms) => zeta_hat_partial(s, terms, workers)?,
    };
    let lhs = SeriesEstimate {
        value: zeta.value * hat.value,
        s: Some(s),
        method: hat.method,
        cutoff: hat.cutoff,
        error_proxy: zeta.value * hat.error_proxy + hat.value * zeta.error_proxy,
    };
    let rhs = odd_power_sum(2.0 * s, ODD_SUM_TERMS, workers)?;
    let id = match route {
        ZetaHatRoute::ClosedForm => "lseries.functional_equation.closed_form",
        ZetaHatRoute::EulerProduct(_) => "lseries.functional_equation.euler_product",
        ZetaHatRoute::PartialSum(_) => "lseries.functional_equation.partial_sum",
    };
    Ok(IdentityCheck::new(format!("{id}.s={s}"), lhs, rhs, tol))
}
