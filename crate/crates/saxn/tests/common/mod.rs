//! Shared test oracles, independent of the library's numeric paths.
//!
//! The quantile and tail-probability oracles integrate the densities with
//! adaptive Simpson quadrature and invert by safeguarded Newton; they share
//! no code with the implementations they check.

#![allow(dead_code)]

use saxn::synth::GaussianStream;
use saxn::TimeSeries;

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(a, fa, m, fm, flm);
        let right = simpson(m, fm, b, fb, frm);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            recurse(f, a, fa, m, fm, flm, left, tol / 2.0, depth - 1)
                + recurse(f, m, fm, b, fb, frm, right, tol / 2.0, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let (a, b, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    sign * recurse(f, a, fa, b, fb, fm, simpson(a, fa, b, fb, fm), tol, 48)
}

pub fn normal_pdf(x: f64) -> f64 {
    (-(x * x) / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Quadrature-based standard normal CDF, accurate to ~1e-12.
pub fn oracle_norm_cdf(x: f64) -> f64 {
    0.5 + adaptive_simpson(&normal_pdf, 0.0, x, 1e-13)
}

/// Quadrature-based standard normal quantile: safeguarded Newton on
/// [`oracle_norm_cdf`], bisection fallback on [-9, 9].
pub fn oracle_norm_quantile(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0);
    let (mut lo, mut hi) = (-9.0f64, 9.0f64);
    let mut x = 0.0f64;
    for _ in 0..200 {
        let err = oracle_norm_cdf(x) - p;
        if err.abs() < 1e-13 {
            return x;
        }
        if err > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let step = err / normal_pdf(x).max(1e-300);
        let newton = x - step;
        x = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo < 1e-14 {
            return x;
        }
    }
    x
}

/// Gamma(dof/2) for the degrees of freedom the oracle supports, from the
/// half-integer recurrence (no shared code with the library's ln_gamma).
fn gamma_half_integer(two_a: usize) -> f64 {
    // two_a = dof, so the argument is dof/2
    let sqrt_pi = std::f64::consts::PI.sqrt();
    match two_a % 2 {
        0 => {
            // integer argument: (dof/2 - 1)!
            let n = two_a / 2;
            (1..n).map(|i| i as f64).product::<f64>().max(1.0)
        }
        _ => {
            // half-integer: (a-1)(a-2)...(1/2) * sqrt(pi)
            let mut acc = sqrt_pi;
            let mut a = two_a as f64 / 2.0;
            while a > 1.0 {
                a -= 1.0;
                acc *= a;
            }
            acc
        }
    }
}

pub fn chi2_pdf(t: f64, dof: usize) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let a = dof as f64 / 2.0;
    t.powf(a - 1.0) * (-t / 2.0).exp() / (2f64.powf(a) * gamma_half_integer(dof))
}

/// Quadrature-based chi-squared upper tail, valid for x > 0. The density
/// below 1e-38 at the cutoff bounds the truncation error far under 1e-10.
pub fn oracle_chi2_upper(x: f64, dof: usize) -> f64 {
    assert!(x >= 0.0);
    if x == 0.0 {
        return 1.0;
    }
    let pdf = move |t: f64| chi2_pdf(t, dof);
    adaptive_simpson(&pdf, x, x + 160.0, 1e-12)
}

/// Zero-mean Gaussian random walk (cumulative sum of unit noise).
pub fn random_walk(seed: u64, n: usize) -> TimeSeries {
    let mut stream = GaussianStream::new(seed);
    let mut acc = 0.0;
    let values: Vec<f64> = (0..n)
        .map(|_| {
            acc += stream.next_standard();
            acc
        })
        .collect();
    TimeSeries::new(values, "walk", "test-walk").unwrap()
}

/// Seeded white noise as a plain series (test shorthand).
pub fn noise(seed: u64, n: usize) -> TimeSeries {
    saxn::white_noise(&saxn::NoiseParams::standard(seed, n)).unwrap()
}

/// Runs one acceptance criterion, printing a single pass/fail line.
pub fn criterion<F: FnOnce() -> Result<(), String>>(id: usize, name: &str, body: F) {
    match body() {
        Ok(()) => println!("criterion {id:2} PASS  {name}"),
        Err(message) => {
            println!("criterion {id:2} FAIL  {name}: {message}");
            panic!("criterion {id} failed: {message}");
        }
    }
}

/// `Err(msg)` unless `|actual - expected| <= tol`.
pub fn check_close(label: &str, actual: f64, expected: f64, tol: f64) -> Result<(), String> {
    if (actual - expected).abs() <= tol {
        Ok(())
    } else {
        Err(format!(
            "{label}: {actual} vs {expected} (tol {tol}, off by {})",
            (actual - expected).abs()
        ))
    }
}

pub fn check(label: &str, condition: bool) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(label.to_string())
    }
}
