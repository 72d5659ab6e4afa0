//! Prints the convergence curve of the twisted Euler product at s = 1 as
//! JSON (the fixture under `tests/fixtures/`).
//!
//! cargo run --release -p conic-period --example euler_convergence

use conic_period::arith::primes_up_to;
use conic_period::lseries::{euler_product_over, Series};

fn main() {
    let primes = primes_up_to(10_000_000, 1);
    let target = std::f64::consts::FRAC_PI_2;
    let mut rows = Vec::new();
    for exp in 2..=7 {
        for mantissa in [1u64, 2, 5] {
            let bound = mantissa * 10u64.pow(exp);
            if bound > 10_000_000 {
                continue;
            }
            let est = euler_product_over(Series::ZetaHat, 1.0, &primes, bound, 1).unwrap();
            rows.push(serde_json::json!({
                "prime_bound": bound,
                "value": est.value,
                "abs_error": (est.value - target).abs(),
                "error_proxy": est.error_proxy,
            }));
        }
    }
    let doc = serde_json::json!({ "series": "zeta_hat", "s": 1.0, "target": target, "curve": rows });
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
}
