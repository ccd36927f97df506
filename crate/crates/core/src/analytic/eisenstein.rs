use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::zeta::hurwitz_zeta;
use super::{fmt_complex, NumericReport};
use crate::alpha::alpha_series;
use crate::bernoulli::bell_complete;
use crate::error::{Error, Result};
use crate::series::TruncSeries;

fn check_tau(tau: Complex64) -> Result<()> {
    if tau.im > 0.0 && tau.re.is_finite() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("need Im(tau) > 0, got {}", fmt_complex(tau))))
    }
}

/// `Σ_{m ∈ Z} (m + c)^{-k}`: direct terms `|m| ≤ r` plus both Hurwitz tails.
fn full_row(c: Complex64, k: u32, r: u64) -> Result<Complex64> {
    let ki = k as i32;
    let mut s = Complex64::new(0.0, 0.0);
    for m in (1..=r).rev() {
        s += (c + m as f64).powi(-ki) + (c - m as f64).powi(-ki);
    }
    s += c.powi(-ki);
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let edge = r as f64 + 1.0;
    Ok(s + hurwitz_zeta(c + edge, k, 1e-18)? + sign * hurwitz_zeta(edge - c, k, 1e-18)?)
}

/// `G_k(τ) = Σ' (m + nτ)^{-k}` over rows `|n| ≤ r`, each row summed over all
/// `m`. For `k = 2` this is the conditionally convergent Eisenstein order
/// (inner sum over `m`).
pub fn eisenstein_g(tau: Complex64, k: u32, r: u64) -> Result<Complex64> {
    check_tau(tau)?;
    if k < 2 {
        return Err(Error::Precondition(format!("weight must be >= 2, got {k}")));
    }
    if k % 2 == 1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let zeta_k = hurwitz_zeta(Complex64::new(1.0, 0.0), k, 1e-18)?;
    let mut total = 2.0 * zeta_k;
    let row_r = r.max(8);
    for n in (1..=r).rev() {
        let c = tau * n as f64;
        total += full_row(c, k, row_r)? + full_row(-c, k, row_r)?;
    }
    Ok(total)
}

/// `G_k(τ)` with the row count doubled until successive values differ by
/// less than `tol/10`. Returns the value, the row count and that difference.
pub fn eisenstein_g_converged(tau: Complex64, k: u32, tol: f64) -> Result<(Complex64, u64, f64)> {
    let mut r = 4u64;
    let mut prev = eisenstein_g(tau, k, r)?;
    loop {
        let next = eisenstein_g(tau, k, 2 * r)?;
        let diff = (next - prev).norm();
        r *= 2;
        if diff < tol / 10.0 || r >= 1 << 12 {
            return Ok((next, r, diff));
        }
        prev = next;
    }
}

/// `G_4 … G_{2 kmax}` on the lattice `Z + τZ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EisensteinTable {
    pub tau: Complex64,
    /// `(weight, value, truncation estimate)`
    pub values: Vec<(u32, Complex64, f64)>,
    pub rows: u64,
    /// Set when `G_2` was requested; its value depends on summation order.
    pub weight2_conditional: bool,
}

pub fn eisenstein_table(tau: Complex64, kmin: u32, kmax: u32, tol: f64) -> Result<EisensteinTable> {
    let mut values = Vec::new();
    let mut rows = 0;
    for h in kmin.max(1)..=kmax {
        let (v, r, e) = eisenstein_g_converged(tau, 2 * h, tol)?;
        rows = rows.max(r);
        values.push((2 * h, v, e));
    }
    Ok(EisensteinTable { tau, values, rows, weight2_conditional: kmin <= 1 })
}

/// `a_{(2n+1)N}(Λ)` for `n ≤ nmax` by the exponential and by complete Bell
/// polynomials, with `f(z) = (i z^N/2N) exp(-½ Σ_m G_{2Nm} z^{2Nm}/m)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeierstrassCoeffs {
    pub tau: Complex64,
    #[serde(rename = "N")]
    pub n: u64,
    pub exp_route: Vec<Complex64>,
    pub bell_route: Vec<Complex64>,
    pub max_discrepancy: f64,
    /// `(weight, G)` values used.
    pub g: Vec<(u32, Complex64)>,
    pub g_budget: f64,
}

fn factorial_f(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn g_values(tau: Complex64, big_n: u64, nmax: usize, tol: f64) -> Result<(Vec<(u32, Complex64)>, f64)> {
    let mut out = Vec::new();
    let mut budget: f64 = 0.0;
    for m in 1..=nmax as u32 {
        let (v, _, e) = eisenstein_g_converged(tau, 2 * big_n as u32 * m, tol)?;
        out.push((2 * big_n as u32 * m, v, ));
        budget = budget.max(e);
    }
    Ok((out, budget))
}

/// Bell arguments `b_k = -N (k-1)! G_k` on the weights selected by `keep`.
fn bell_route(
    big_n: u64,
    nmax: usize,
    g: &dyn Fn(usize) -> Complex64,
    keep: &dyn Fn(usize) -> bool,
) -> Result<Vec<Complex64>> {
    let nn = big_n as usize;
    let len = 2 * nn * nmax;
    let xs: Vec<Complex64> = (1..=len.max(1))
        .map(|k| if keep(k) { -(nn as f64) * factorial_f(k - 1) * g(k) } else { Complex64::new(0.0, 0.0) })
        .collect();
    let pre = Complex64::new(0.0, 1.0 / (2.0 * nn as f64));
    (0..=nmax)
        .map(|n| {
            let b = if n == 0 { Complex64::new(1.0, 0.0) } else { bell_complete(2 * n * nn, &xs)? };
            Ok(pre * b * factorial_f((2 * n + 1) * nn) / factorial_f(2 * n * nn))
        })
        .collect()
}

pub fn weierstrass_f_coeffs(tau: Complex64, big_n: u64, nmax: usize, tol: f64) -> Result<WeierstrassCoeffs> {
    check_tau(tau)?;
    if big_n == 0 {
        return Err(Error::Precondition("N must be positive".into()));
    }
    let nn = big_n as usize;
    let (g, g_budget) = g_values(tau, big_n, nmax, tol)?;
    let order = 2 * nn * nmax;
    let zero = Complex64::new(0.0, 0.0);
    let mut expo = TruncSeries::zero(&zero, order);
    let mut coeffs = expo.coeffs().to_vec();
    for (m, (_, v)) in g.iter().enumerate() {
        coeffs[2 * nn * (m + 1)] = -0.5 * v / (m + 1) as f64;
    }
    expo = TruncSeries::new(coeffs);
    let e = expo.exp()?;
    let pre = Complex64::new(0.0, 1.0 / (2.0 * nn as f64));
    let exp_route: Vec<Complex64> =
        (0..=nmax).map(|n| pre * e.coeff(2 * n * nn) * factorial_f((2 * n + 1) * nn)).collect();
    let lookup = |k: usize| g.iter().find(|(w, _)| *w as usize == k).map(|(_, v)| *v).unwrap_or(zero);
    let bell = bell_route(big_n, nmax, &lookup, &|k| k % (2 * nn) == 0)?;
    let max_discrepancy = exp_route.iter().zip(&bell).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    Ok(WeierstrassCoeffs { tau, n: big_n, exp_route, bell_route: bell, max_discrepancy, g, g_budget })
}

fn tau_params(tau: Complex64, big_n: u64) -> BTreeMap<String, String> {
    let mut p = BTreeMap::new();
    p.insert("tau".into(), fmt_complex(tau));
    p.insert("N".into(), big_n.to_string());
    p
}

/// Agreement of the exponential and Bell routes.
pub fn verify_weierstrass_routes(tau: Complex64, big_n: u64, nmax: usize, tol: f64) -> Result<NumericReport> {
    let w = weierstrass_f_coeffs(tau, big_n, nmax, tol)?;
    let mut params = tau_params(tau, big_n);
    params.insert("nmax".into(), nmax.to_string());
    Ok(NumericReport::new("weierstrass_routes", params, w.max_discrepancy, w.g_budget, tol))
}

/// The same comparison with Bell arguments kept for every `N | k`, against
/// the `2N | k` form.
pub(crate) fn bell_divisibility_witness(
    tau: Complex64,
    big_n: u64,
    nmax: usize,
    tol: f64,
) -> Result<(NumericReport, NumericReport)> {
    let nn = big_n as usize;
    let w = weierstrass_f_coeffs(tau, big_n, nmax, tol)?;
    let mut g = Vec::new();
    for k in (nn..=2 * nn * nmax).step_by(nn) {
        g.push((k, eisenstein_g_converged(tau, k as u32, tol)?.0));
    }
    let lookup = |k: usize| g.iter().find(|(w, _)| *w == k).map(|(_, v)| *v).unwrap_or_default();
    let printed = bell_route(big_n, nmax, &lookup, &|k| k % nn == 0)?;
    let gap = w.exp_route.iter().zip(&printed).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let mut params = tau_params(tau, big_n);
    params.insert("nmax".into(), nmax.to_string());
    let mut pp = params.clone();
    pp.insert("form".into(), "printed".into());
    let printed = NumericReport::new("weierstrass_routes", pp, gap, w.g_budget, tol).erratum("b_k nonzero for N | k");
    let corrected = NumericReport::new("weierstrass_routes", params, w.max_discrepancy, w.g_budget, tol);
    Ok((printed, corrected))
}

/// Coefficients of `N Φ_N f - z f'` through `z^order`, `Φ_N = 1 - Σ_j G_{2Nj} z^{2Nj}`,
/// with `f` built from the Bell route. Residuals are on the EGF scale
/// (coefficient of `z^j` times `j!`).
pub fn verify_eisenstein_ode(tau: Complex64, big_n: u64, order: usize, tol: f64) -> Result<NumericReport> {
    check_tau(tau)?;
    if big_n == 0 || order < big_n as usize {
        return Err(Error::Precondition(format!("need N >= 1 and order >= N, got N={big_n}, order={order}")));
    }
    let nn = big_n as usize;
    let nmax = (order - nn) / (2 * nn);
    let w = weierstrass_f_coeffs(tau, big_n, nmax.max(1), tol)?;
    let zero = Complex64::new(0.0, 0.0);
    let f = TruncSeries::from_fn(&zero, order, |j| {
        if j >= nn && (j - nn).is_multiple_of(2 * nn) && (j - nn) / (2 * nn) <= nmax {
            w.bell_route[(j - nn) / (2 * nn)] / factorial_f(j)
        } else {
            zero
        }
    });
    let phi = TruncSeries::from_fn(&zero, order, |j| {
        if j == 0 {
            Complex64::new(1.0, 0.0)
        } else if j % (2 * nn) == 0 {
            w.g.iter().find(|(k, _)| *k as usize == j).map(|(_, v)| -v).unwrap_or(zero)
        } else {
            zero
        }
    });
    let lhs = phi.mul(&f)?.mul_scalar(&Complex64::new(nn as f64, 0.0));
    let diff = lhs.sub(&f.euler_derivative())?;
    let residual = diff.coeffs().iter().enumerate().map(|(j, c)| c.norm() * factorial_f(j)).fold(0.0, f64::max);
    let mut params = tau_params(tau, big_n);
    params.insert("order".into(), order.to_string());
    Ok(NumericReport::new("eisenstein_ode", params, residual, w.g_budget, tol))
}

/// `a_{(2k+1)N}(Λ_τ)` at `τ = i·tau_im` against the limit
/// `(-1)^{N+1}/(2N π^N) · (iπ)^{2kN+N} α_k`.
///
/// The residual is the relative modulus error; the full complex relative
/// error and the measured phase of `a/((iπ)^{2kN+N} α_k)` are recorded.
pub fn verify_eisenstein_limit(tau_im: f64, big_n: u64, k: usize, tol: f64) -> Result<NumericReport> {
    if !(tau_im >= 5.0) || big_n == 0 || big_n % 2 == 1 {
        return Err(Error::Precondition(format!("need tau_im >= 5 and even N, got {tau_im}, N={big_n}")));
    }
    let tau = Complex64::new(0.0, tau_im);
    let w = weierstrass_f_coeffs(tau, big_n, k.max(1), 1e-14)?;
    let alpha = alpha_series(big_n, k)?.values.swap_remove(k).embed()?;
    let nn = big_n as i32;
    let ipi = Complex64::new(0.0, PI).powi(2 * k as i32 * nn + nn);
    let sign = if big_n % 2 == 1 { 1.0 } else { -1.0 };
    let predicted = ipi * alpha * sign / (2.0 * big_n as f64 * PI.powi(nn));
    let got = w.bell_route[k];
    let modulus = (got.norm() - predicted.norm()).abs() / predicted.norm();
    let complex = (got - predicted).norm() / predicted.norm();
    let phase = (got / (ipi * alpha)).arg();
    let mut params = tau_params(tau, big_n);
    params.insert("k".into(), k.to_string());
    Ok(NumericReport::new("eisenstein_limit", params, modulus, w.g_budget, tol)
        .detail("complex_relative_error", complex)
        .detail("measured_phase", phase))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn g_examples() {
        let g6 = eisenstein_g(c(0.0, 1.0), 6, 20).unwrap();
        assert!(g6.norm() < 1e-8);
        let g4 = eisenstein_g(c(0.0, 10.0), 4, 4).unwrap();
        assert!((g4 - PI.powi(4) / 45.0).norm() < 1e-6);
        let a = eisenstein_g(c(0.0, 1.0), 4, 100).unwrap();
        let b = eisenstein_g(c(0.0, 1.0), 4, 200).unwrap();
        assert!((a - b).norm() < 1e-6);
        assert!(eisenstein_g(c(0.0, -1.0), 4, 4).is_err());
    }

    #[test]
    fn g_modularity() {
        for tau in [c(0.0, 1.0), c(0.0, 2.0), c(0.3, 1.2)] {
            for k in [4u32, 6, 8] {
                let g = eisenstein_g(tau, k, 30).unwrap();
                let shifted = eisenstein_g(tau + 1.0, k, 30).unwrap();
                assert!((g - shifted).norm() < 1e-6 * g.norm().max(1.0));
                let inv = eisenstein_g(-1.0 / tau, k, 60).unwrap();
                assert!((inv - tau.powi(k as i32) * g).norm() < 1e-6 * inv.norm().max(1.0));
            }
        }
    }

    #[test]
    fn routes_agree() {
        let w = weierstrass_f_coeffs(c(0.0, 1.0), 2, 1, 1e-12).unwrap();
        assert!(w.max_discrepancy < 1e-10);
        assert!((w.exp_route[0] - c(0.0, 2.0 / 4.0)).norm() < 1e-15);
        let w = weierstrass_f_coeffs(c(0.0, 2.0), 1, 2, 1e-12).unwrap();
        assert!(w.max_discrepancy < 1e-10);
        assert!((w.exp_route[0] - c(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn ode_cases() {
        for (tau, n, order) in [(c(0.0, 1.0), 1, 7), (c(0.0, 1.0), 1, 10), (c(0.0, 2.0), 2, 10), (c(0.3, 1.2), 2, 10)] {
            let r = verify_eisenstein_ode(tau, n, order, 1e-8).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn limit_cases() {
        for k in 0..=2 {
            let r = verify_eisenstein_limit(10.0, 2, k, 1e-3).unwrap();
            assert!(r.pass, "{r:?}");
            assert!(r.details["complex_relative_error"] < 1e-3);
        }
        assert!(verify_eisenstein_limit(1.0, 2, 0, 1e-3).is_err());
        assert!(verify_eisenstein_limit(10.0, 3, 0, 1e-3).is_err());
    }
}
