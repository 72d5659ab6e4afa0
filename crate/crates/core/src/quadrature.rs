//! Numerical integration.
//!
//! Two rules: adaptive Gauss-Kronrod (7/15) for smooth integrands and the
//! double-exponential (tanh-sinh) rule for integrable endpoint
//! singularities. The tanh-sinh integrand can ask for the distance to each
//! endpoint, which is exact near the ends where `x` itself has already been
//! rounded to the endpoint.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    GaussKronrod,
    DoubleExponential,
}

const MAX_EVALUATIONS: usize = 200_000;

/// Integrates `f` over `[a, b]` to roughly `tol` absolute error.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64, rule: Rule) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    match rule {
        Rule::GaussKronrod => gauss_kronrod(f, a, b, tol),
        Rule::DoubleExponential => tanh_sinh(f, a, b, tol),
    }
}

fn check_interval(a: f64, b: f64, tol: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidInput(format!("bad interval [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// Tanh-sinh on `[a, b]`.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    tanh_sinh_with(|x, _, _| f(x), a, b, tol)
}

/// Tanh-sinh where the integrand receives `(x, x - a, b - x)` with both
/// distances computed without cancellation.
pub fn tanh_sinh_with<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64, f64, f64) -> f64,
{
    check_interval(a, b, tol)?;
    const T_MAX: f64 = 4.5;
    const MAX_LEVEL: u32 = 12;
    let width = b - a;
    let half = 0.5 * width;
    let mut evaluations = 0usize;

    // Contribution of the node pair at +-t (or the centre when t == 0).
    let mut node = |t: f64| -> f64 {
        let u = FRAC_PI_2 * t.sinh();
        let cu = u.cosh();
        let w = half * FRAC_PI_2 * t.cosh() / (cu * cu);
        // distance from the nearer endpoint: half * (1 - tanh|u|)
        let near = half * 2.0 / ((2.0 * u.abs()).exp() + 1.0);
        if t == 0.0 {
            evaluations += 1;
            let v = f(a + half, half, half);
            return if v.is_finite() { w * v } else { 0.0 };
        }
        if near <= 0.0 || w == 0.0 {
            return 0.0;
        }
        let far = width - near;
        evaluations += 2;
        let right = f(b - near, far, near);
        let left = f(a + near, near, far);
        let mut acc = 0.0;
        if right.is_finite() {
            acc += w * right;
        }
        if left.is_finite() {
            acc += w * left;
        }
        acc
    };

    let mut h = 1.0;
    let mut sum = node(0.0);
    let mut k = 1;
    while k as f64 * h <= T_MAX {
        sum += node(k as f64 * h);
        k += 1;
    }
    let mut estimate = h * sum;
    let mut error = f64::INFINITY;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut fresh = 0.0;
        let mut k = 1;
        while k as f64 * h <= T_MAX {
            fresh += node(k as f64 * h);
            k += 2;
        }
        sum += fresh;
        let next = h * sum;
        error = (next - estimate).abs();
        estimate = next;
        if level >= 3 && error <= tol {
            return Ok(QuadratureResult {
                value: estimate,
                abs_error_estimate: error,
                evaluations,
            });
        }
    }
    Err(Error::BudgetExceeded {
        estimate,
        error,
        evaluations,
    })
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One 15-point Kronrod panel: (kronrod estimate, |kronrod - gauss|).
fn kronrod_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Globally adaptive Gauss-Kronrod: repeatedly bisect the panel with the
/// largest error estimate.
pub fn gauss_kronrod<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    check_interval(a, b, tol)?;
    let mut panels = vec![(a, b, kronrod_panel(&f, a, b))];
    let mut evaluations = 15;
    loop {
        let (value, error) = panels
            .iter()
            .fold((0.0, 0.0), |(v, e), (_, _, (pv, pe))| (v + pv, e + pe));
        if error <= tol {
            return Ok(QuadratureResult {
                value,
                abs_error_estimate: error,
                evaluations,
            });
        }
        if evaluations + 30 > MAX_EVALUATIONS {
            return Err(Error::BudgetExceeded {
                estimate: value,
                error,
                evaluations,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2 .1.total_cmp(&y.1 .2 .1))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let (lo, hi, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        panels.push((lo, mid, kronrod_panel(&f, lo, mid)));
        panels.push((mid, hi, kronrod_panel(&f, mid, hi)));
        evaluations += 30;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn smooth_examples_both_rules() {
        for rule in [Rule::GaussKronrod, Rule::DoubleExponential] {
            let r = integrate(|x| x.cos().powi(2), 0.0, PI / 2.0, 1e-12, rule).unwrap();
            assert!((r.value - PI / 4.0).abs() < 1e-12, "{rule:?}");
            let r = integrate(|x| x, 0.0, 1.0, 1e-12, rule).unwrap();
            assert!((r.value - 0.5).abs() < 1e-14, "{rule:?}");
            assert!(r.abs_error_estimate >= 0.0);
        }
    }

    #[test]
    fn arcsine_kernel_over_full_interval() {
        let r = tanh_sinh_with(
            |_, da, db| 1.0 / (da * db).sqrt(),
            -1.0,
            1.0,
            1e-12,
        )
        .unwrap();
        assert!((r.value - PI).abs() < 1e-12, "{}", r.value - PI);
    }

    #[test]
    fn log_singularity() {
        let r = tanh_sinh(|u| -u.ln(), 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn budget_exceeded_carries_estimate() {
        // 1/x on (0, 1] diverges.
        match tanh_sinh(|x| 1.0 / x, 0.0, 1.0, 1e-12) {
            Err(Error::BudgetExceeded { evaluations, .. }) => assert!(evaluations > 0),
            other => panic!("expected budget error, got {other:?}"),
        }
        match gauss_kronrod(|x| (1.0 / x).sin() / x, 1e-9, 1.0, 1e-14) {
            Err(Error::BudgetExceeded { estimate, .. }) => assert!(estimate.is_finite()),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_intervals() {
        assert!(gauss_kronrod(|x| x, 1.0, 0.0, 1e-8).is_err());
        assert!(tanh_sinh(|x| x, 0.0, f64::INFINITY, 1e-8).is_err());
        assert!(tanh_sinh(|x| x, 0.0, 1.0, 0.0).is_err());
    }
}
