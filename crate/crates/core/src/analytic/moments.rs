use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Signed;
use quadrature::double_exponential::integrate;

use super::NumericReport;
use crate::bernoulli::bernoulli;
use crate::error::{Error, Result};
use crate::rational::to_f64;

/// Smallest integer `X` with `X + ½ > slope` and `tail(X) ≤ target`.
fn cutoff(slope: f64, target: f64, tail: impl Fn(f64) -> f64) -> f64 {
    let mut x = slope.ceil().max(1.0);
    while tail(x) > target && x < 1e4 {
        x += 1.0;
    }
    x
}

/// Value, tail bound and quadrature error estimate.
fn sech2_parts(n: u32, tol: f64) -> (Complex64, f64, f64) {
    // |(π/2)(ix-½)^n sech²(πx)| ≤ 2π (x+½)^n e^{-2πx}, integrated beyond X on both sides.
    let nf = n as f64;
    let tail = |x: f64| {
        let rate = 2.0 * PI - nf / (x + 0.5);
        4.0 * PI * (x + 0.5).powf(nf) * (-2.0 * PI * x).exp() / rate
    };
    let x_max = cutoff(nf / (2.0 * PI), tol / 2.0, tail);
    let f = |x: f64| {
        let s = 1.0 / (PI * x).cosh();
        0.5 * PI * Complex64::new(-0.5, x).powu(n) * s * s
    };
    let target = tol / 8.0;
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for (a, b) in [(-x_max, 0.0), (0.0, x_max)] {
        let re = integrate(|x| f(x).re, a, b, target);
        let im = integrate(|x| f(x).im, a, b, target);
        value += Complex64::new(re.integral, im.integral);
        err += re.error_estimate + im.error_estimate;
    }
    (value, tail(x_max), err)
}

/// `(π/2) ∫ (ix - ½)^n sech²(πx) dx` over the real line.
///
/// `(π/2) sech²(πx)` is the normalized density; with the factor `π` the
/// moments come out as `2 B_n`.
pub fn sech2_moment(n: u32, tol: f64) -> Complex64 {
    sech2_parts(n, tol).0
}

/// The moment check with density `π sech²(πx)`.
pub fn verify_sech2_printed(n: u32, tol: f64) -> NumericReport {
    let (v, tail, err) = sech2_parts(n, tol);
    let b = to_f64(&bernoulli(n as usize)).expect("finite");
    let mut params = BTreeMap::new();
    params.insert("n".into(), n.to_string());
    params.insert("form".into(), "printed".into());
    NumericReport::new("sech2", params, (2.0 * v - b).norm(), 2.0 * (tail + err), tol)
        .detail("value", 2.0 * v.re)
        .erratum("density π sech²(πx) has total mass 2")
}

/// The sech² moments against `B_n` for `n ≤ nmax`.
pub fn verify_sech2(nmax: u32, tol: f64) -> Vec<NumericReport> {
    (0..=nmax)
        .map(|n| {
            let (v, tail, err) = sech2_parts(n, tol);
            let b = to_f64(&bernoulli(n as usize)).expect("finite");
            let mut params = BTreeMap::new();
            params.insert("n".into(), n.to_string());
            NumericReport::new("sech2", params, (v - b).norm(), tail + err, tol).detail("value", v.re)
        })
        .collect()
}

fn ramanujan_parts(n: u32, tol: f64) -> Result<(f64, f64, f64)> {
    if n == 0 {
        return Err(Error::Precondition("the integrand is not integrable at 0 for n = 0".into()));
    }
    let p = 2 * n as i32;
    // 1/(4 sinh²(πx)) ≤ e^{-2πx}/(1-e^{-2π})² for x ≥ 1
    let c = 1.0 / (1.0 - (-2.0 * PI).exp()).powi(2);
    let tail = |x: f64| {
        let rate = 2.0 * PI - p as f64 / x;
        c * x.powi(p) * (-2.0 * PI * x).exp() / rate
    };
    let x_max = cutoff(p as f64 / (2.0 * PI) + 1.0, tol / 2.0, tail);
    let f = |x: f64| {
        if x < 1e-6 {
            // x^{2n}/(4 sinh²πx) = x^{2n-2}/(4π²)·(1 - (πx)²/3 + …)
            x.powi(p - 2) / (4.0 * PI * PI) * (1.0 - (PI * x).powi(2) / 3.0)
        } else {
            let s = (PI * x).sinh();
            x.powi(p) / (4.0 * s * s)
        }
    };
    let out = integrate(f, 0.0, x_max, tol / 4.0);
    Ok((out.integral, tail(x_max), out.error_estimate))
}

/// `∫_0^∞ x^{2n}/(e^{πx} - e^{-πx})² dx`.
pub fn ramanujan_integral(n: u32, tol: f64) -> Result<f64> {
    ramanujan_parts(n, tol).map(|t| t.0)
}

/// The integral against `|B_{2n}|/(4π)`.
pub fn verify_ramanujan_integral(n: u32, tol: f64) -> Result<NumericReport> {
    let (v, tail, err) = ramanujan_parts(n, tol)?;
    let want = to_f64(&bernoulli(2 * n as usize).abs()).expect("finite") / (4.0 * PI);
    let mut params = BTreeMap::new();
    params.insert("n".into(), n.to_string());
    Ok(NumericReport::new("ramanujan_integral", params, (v - want).abs(), tail + err, tol).detail("value", v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sech2_examples() {
        assert!((sech2_moment(0, 1e-12) - 1.0).norm() < 1e-10);
        assert!((sech2_moment(2, 1e-12) - 1.0 / 6.0).norm() < 1e-10);
        assert!((sech2_moment(12, 1e-12) + 691.0 / 2730.0).norm() < 1e-10);
        for n in [3, 5, 7, 9] {
            assert!(sech2_moment(n, 1e-12).norm() < 1e-10);
        }
        assert!(verify_sech2(12, 1e-10).iter().all(|r| r.pass));
    }

    #[test]
    fn ramanujan_examples() {
        let v = ramanujan_integral(1, 1e-12).unwrap();
        assert!((v - 1.0 / (24.0 * PI)).abs() < 1e-10);
        assert!((v - 0.0132629).abs() < 1e-7);
        assert!((ramanujan_integral(2, 1e-12).unwrap() - 1.0 / (120.0 * PI)).abs() < 1e-10);
        assert!((ramanujan_integral(3, 1e-12).unwrap() - 1.0 / (168.0 * PI)).abs() < 1e-10);
        assert!(ramanujan_integral(0, 1e-12).is_err());
        for n in 1..=3 {
            assert!(verify_ramanujan_integral(n, 1e-10).unwrap().pass);
        }
    }
}
