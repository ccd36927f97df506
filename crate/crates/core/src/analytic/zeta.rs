use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{fmt_complex, NumericReport};
use crate::alpha::mzv_closed;
use crate::bernoulli::bernoulli;
use crate::error::{Error, Result};
use crate::rational::{binomial_q, factorial_q, to_f64};

/// Number of Euler–Maclaurin correction terms.
const EM_TERMS: usize = 10;

/// `B_{2j}/(2j)!` for `j = 1..=EM_TERMS+1`.
fn em_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        (1..=EM_TERMS + 1)
            .map(|j| to_f64(&(bernoulli(2 * j) / factorial_q(2 * j))).expect("finite"))
            .collect()
    })
}

/// Rising factorial `s(s+1)…(s+n-1)` as a float.
fn rising(s: u32, n: usize) -> f64 {
    (0..n).map(|i| (s as f64) + i as f64).product()
}

fn is_pole(w: Complex64) -> bool {
    w.im == 0.0 && w.re <= 0.0 && w.re.fract() == 0.0
}

/// `ζ(w, s) = Σ_{m≥0} (w+m)^{-s}` with an error bound.
///
/// Direct sum up to a shift `M`, then Euler–Maclaurin with ten correction
/// terms. The shift grows until the remainder bound drops below `tol`.
pub fn hurwitz_zeta_with_budget(w: Complex64, s: u32, tol: f64) -> Result<(Complex64, f64)> {
    if s < 2 {
        return Err(Error::Precondition(format!("Hurwitz zeta needs s >= 2, got {s}")));
    }
    if !(tol > 0.0) || !w.re.is_finite() || !w.im.is_finite() {
        return Err(Error::Precondition("Hurwitz zeta needs finite w and tol > 0".into()));
    }
    if is_pole(w) {
        return Err(Error::Pole(format!("w = {} lies on the summation ray", fmt_complex(w))));
    }
    let c = em_coefficients();
    let mut shift = ((-w.re).max(0.0).ceil() as u64) + (s as u64) + 2 * EM_TERMS as u64;
    let (v, bound) = loop {
        let v = w + shift as f64;
        // remainder after EM_TERMS corrections, integrated once
        let bound = 4.0 * c[EM_TERMS].abs() * rising(s, 2 * EM_TERMS + 1) * v.norm().powi(-((s as i32) + 2 * EM_TERMS as i32));
        if bound <= tol {
            break (v, bound);
        }
        if shift > 1 << 24 {
            return Err(Error::Budget { what: "hurwitz shift", value: shift, limit: 1 << 24 });
        }
        shift *= 2;
    };
    let si = s as i32;
    let mut direct = Complex64::new(0.0, 0.0);
    for m in (0..shift).rev() {
        direct += (w + m as f64).powi(-si);
    }
    let mut tail = v.powi(1 - si) / (s as f64 - 1.0) + 0.5 * v.powi(-si);
    for j in 1..=EM_TERMS {
        tail += c[j - 1] * rising(s, 2 * j - 1) * v.powi(-si - 2 * j as i32 + 1);
    }
    Ok((direct + tail, bound))
}

pub fn hurwitz_zeta(w: Complex64, s: u32, tol: f64) -> Result<Complex64> {
    hurwitz_zeta_with_budget(w, s, tol).map(|(v, _)| v)
}

/// `ζ₂(w, s) = Σ_{m₁,m₂≥0} (w + m₁ + i m₂)^{-s}` with an error budget.
///
/// Each row in `m₁` is an exact Hurwitz value; rows `m₂ ≤ R` are summed and
/// the rest is replaced by its integral, whose size is the reported budget.
pub fn barnes_zeta2(w: Complex64, s: u32, r: u64) -> Result<(Complex64, f64)> {
    if s < 3 {
        return Err(Error::Precondition(format!("Barnes zeta needs s >= 3, got {s}")));
    }
    if !(w.re > 0.0) {
        return Err(Error::Precondition(format!("Barnes zeta needs Re(w) > 0, got {}", fmt_complex(w))));
    }
    let i = Complex64::new(0.0, 1.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut budget = 0.0;
    for m2 in (0..=r).rev() {
        let (h, b) = hurwitz_zeta_with_budget(w + i * m2 as f64, s, 1e-17)?;
        sum += h;
        budget += b;
    }
    let a = w + i * (r as f64 + 0.5);
    let sf = s as f64;
    let tail = a.powi(2 - s as i32) / (i * (sf - 1.0) * (sf - 2.0)) + 0.5 * a.powi(1 - s as i32) / (i * (sf - 1.0));
    Ok((sum + tail, budget + tail.norm()))
}

/// Both sides of the Barnes zeta lacunary identity, multiplied by `i^p`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarnesLacunary {
    pub report: NumericReport,
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// The Hurwitz combination `ζ(-iw,p) - (-1)^p ζ(iw,p) + ζ(-i(w-1),p) - (-1)^p ζ(i(w-1),p)`.
    pub printed_rhs: Complex64,
    /// `|t_k|` for each summand.
    pub term_moduli: Vec<f64>,
    pub rows: u64,
}

impl BarnesLacunary {
    pub fn printed_report(&self) -> NumericReport {
        let tol: f64 = self.report.params["tol"].parse().unwrap_or(0.0);
        let mut r = NumericReport::new(
            "barnes_lacunary",
            self.report.params.clone(),
            (self.lhs - self.printed_rhs).norm(),
            self.report.budget,
            tol,
        )
        .erratum("printed Hurwitz right side");
        r.params.insert("form".into(), "printed".into());
        r
    }
}

/// `i^p Σ_{k≤kmax} (-1)^k C(4k+p+1, p-1) 2^{2k+1} ζ₂(w, p+4k+2)`
/// against `(i^p/4i)[w^{-p} + (w-1)^{-p} + (w-i)^{-p} + (w-1-i)^{-p}]`.
///
/// The budget is the geometric tail of the omitted summands plus the
/// weighted `ζ₂` truncation budgets.
pub fn verify_barnes_lacunary(w: Complex64, p: u32, kmax: usize, tol: f64) -> Result<BarnesLacunary> {
    if p < 3 || kmax == 0 {
        return Err(Error::Precondition(format!("need p >= 3 and kmax >= 1, got p={p}, kmax={kmax}")));
    }
    if !(w.re > 1.0) {
        return Err(Error::Precondition(format!("need Re(w) > 1, got {}", fmt_complex(w))));
    }
    let weights: Vec<f64> = (0..=kmax as i64)
        .map(|k| {
            let c = binomial_q(4 * k + p as i64 + 1, p as i64 - 1);
            to_f64(&c).expect("finite") * 2f64.powi(2 * k as i32 + 1) * if k % 2 == 0 { 1.0 } else { -1.0 }
        })
        .collect();
    let mut rows = 64u64;
    let (terms, zeta_budget) = loop {
        let mut terms = Vec::with_capacity(weights.len());
        let mut budget = 0.0;
        for (k, c) in weights.iter().enumerate() {
            let (z, b) = barnes_zeta2(w, p + 4 * k as u32 + 2, rows)?;
            terms.push(z * c);
            budget += c.abs() * b;
        }
        if budget <= tol / 10.0 || rows >= 1 << 14 {
            break (terms, budget);
        }
        rows *= 2;
    };
    let moduli: Vec<f64> = terms.iter().map(|t| t.norm()).collect();
    let ratio = moduli[kmax] / moduli[kmax - 1];
    if !(ratio < 1.0) {
        return Err(Error::Precondition(format!("summands do not decay at w = {}", fmt_complex(w))));
    }
    let k_tail = moduli[kmax] * ratio / (1.0 - ratio);
    let i = Complex64::new(0.0, 1.0);
    let ip = i.powi(p as i32);
    let raw: Complex64 = terms.iter().rev().sum();
    let pi = p as i32;
    let one = Complex64::new(1.0, 0.0);
    let bracket = w.powi(-pi) + (w - one).powi(-pi) + (w - i).powi(-pi) + (w - one - i).powi(-pi);
    let lhs = ip * raw;
    let rhs = ip * bracket / (4.0 * i);
    let sgn = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
    let h = |x: Complex64| hurwitz_zeta(x, p, 1e-15);
    let printed_rhs = h(-i * w)? - sgn * h(i * w)? + h(-i * (w - one))? - sgn * h(i * (w - one))?;
    let mut params = BTreeMap::new();
    params.insert("w".into(), fmt_complex(w));
    params.insert("p".into(), p.to_string());
    params.insert("kmax".into(), kmax.to_string());
    let report = NumericReport::new("barnes_lacunary", params, (lhs - rhs).norm(), k_tail + zeta_budget, tol)
        .detail("lhs_re", lhs.re)
        .detail("lhs_im", lhs.im)
        .detail("rhs_re", rhs.re)
        .detail("rhs_im", rhs.im)
        .detail("last_term_ratio", ratio)
        .detail("k_tail", k_tail)
        .detail("zeta2_budget", zeta_budget)
        .detail("printed_rhs_residual", (lhs - printed_rhs).norm());
    Ok(BarnesLacunary { report, lhs, rhs, printed_rhs, term_moduli: moduli, rows })
}

/// Nested sum `ζ({2N}_k)` for `k ∈ {1, 2}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MzvNumeric {
    /// Plain truncation `n_1 ≤ M`.
    pub truncated: f64,
    /// Truncation plus the exact tail expressed through Hurwitz values.
    pub corrected: f64,
    pub closed: f64,
    pub budget: f64,
}

pub fn mzv_numeric(big_n: u64, k: u64, m: u64) -> Result<MzvNumeric> {
    if !(1..=2).contains(&k) || m == 0 || big_n == 0 {
        return Err(Error::Precondition(format!("mzv_numeric needs k in {{1,2}}, M >= 1, N >= 1; got N={big_n}, k={k}, M={m}")));
    }
    let s = 2 * big_n as i32;
    let closed = to_f64(&mzv_closed(big_n, k)?).expect("finite") * PI.powi(2 * k as i32 * big_n as i32);
    // partial[j] = Σ_{n ≤ j} n^{-s}
    let mut partial = vec![0.0f64; m as usize + 1];
    for n in 1..=m as usize {
        partial[n] = partial[n - 1] + (n as f64).powi(-s);
    }
    let (h, hb) = hurwitz_zeta_with_budget(Complex64::new(m as f64 + 1.0, 0.0), s as u32, 1e-18)?;
    let h = h.re;
    let s1 = partial[m as usize];
    let (truncated, corrected, budget) = if k == 1 {
        (s1, s1 + h, hb)
    } else {
        let mut s2 = 0.0;
        for n in (2..=m as usize).rev() {
            s2 += (n as f64).powi(-s) * partial[n - 1];
        }
        let (h2, hb2) = hurwitz_zeta_with_budget(Complex64::new(m as f64 + 1.0, 0.0), 2 * s as u32, 1e-18)?;
        let tail = s1 * h + (h * h - h2.re) / 2.0;
        (s2, s2 + tail, hb * (s1 + h) + hb2)
    };
    Ok(MzvNumeric { truncated, corrected, closed, budget })
}

pub fn verify_mzv(big_n: u64, k: u64, m: u64, tol: f64) -> Result<NumericReport> {
    let v = mzv_numeric(big_n, k, m)?;
    let mut params = BTreeMap::new();
    params.insert("N".into(), big_n.to_string());
    params.insert("k".into(), k.to_string());
    params.insert("M".into(), m.to_string());
    Ok(NumericReport::new("mzv", params, (v.corrected - v.closed).abs(), v.budget, tol)
        .detail("closed", v.closed)
        .detail("corrected", v.corrected)
        .detail("truncated_error", (v.truncated - v.closed).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hurwitz_examples() {
        let z = hurwitz_zeta(c(1.0, 0.0), 2, 1e-14).unwrap();
        assert!((z.re - PI * PI / 6.0).abs() < 1e-13);
        let z2 = hurwitz_zeta(c(2.0, 0.0), 2, 1e-14).unwrap();
        assert!((z2.re - (PI * PI / 6.0 - 1.0)).abs() < 1e-13);
        let w = c(2.5, 0.0);
        let d = hurwitz_zeta(w, 3, 1e-15).unwrap() - hurwitz_zeta(w + 1.0, 3, 1e-15).unwrap();
        assert!((d - w.powi(-3)).norm() < 1e-14);
        let w = c(-2.5, 1.5);
        let d = hurwitz_zeta(w, 4, 1e-15).unwrap() - hurwitz_zeta(w + 1.0, 4, 1e-15).unwrap();
        assert!((d - w.powi(-4)).norm() < 1e-13);
        assert!(matches!(hurwitz_zeta(c(-3.0, 0.0), 2, 1e-10), Err(Error::Pole(_))));
        assert!(hurwitz_zeta(c(1.0, 0.0), 1, 1e-10).is_err());
    }

    #[test]
    fn barnes_zeta2_properties() {
        let w = c(3.0, 0.0);
        let i = c(0.0, 1.0);
        let (a, ba) = barnes_zeta2(w, 5, 400).unwrap();
        let (b, bb) = barnes_zeta2(w + 1.0, 5, 400).unwrap();
        // removing the m₁ = 0 column leaves Σ_{m₂} (w + i m₂)^{-s}
        let col: Complex64 = (0..100_000).rev().map(|m| (w + i * m as f64).powi(-5)).sum();
        assert!((a - b - col).norm() < 1e-9 + ba + bb);
        let (d, _) = barnes_zeta2(w + i, 5, 400).unwrap();
        let h = hurwitz_zeta(w, 5, 1e-16).unwrap();
        assert!((a - d - h).norm() < 1e-8);
        let (cw, _) = barnes_zeta2(c(3.0, -0.5), 6, 200).unwrap();
        let (cc, _) = barnes_zeta2(c(3.0, 0.5), 6, 200).unwrap();
        assert!(cw.norm() > 0.0 && cc.norm() > 0.0);
        // the quadrant integral dominates, not the corner term w^{-s}
        let w = c(50.0, 0.0);
        let (big, _) = barnes_zeta2(w, 6, 2000).unwrap();
        let lead = w.powi(-4) / (i * 20.0);
        assert!((big / lead - 1.0).norm() < 0.1);
        assert!(big.norm() / 50f64.powi(-6) > 10.0);
        assert!(barnes_zeta2(c(-1.0, 0.0), 5, 10).is_err());
    }

    #[test]
    fn barnes_lacunary_cases() {
        let a = verify_barnes_lacunary(c(3.0, 0.0), 4, 6, 1e-6).unwrap();
        assert!(a.report.pass, "{:?}", a.report);
        assert!(a.term_moduli.windows(2).all(|t| t[1] < t[0]));
        let b = verify_barnes_lacunary(c(2.5, 0.0), 3, 8, 1e-5).unwrap();
        assert!(b.report.pass, "{:?}", b.report);
        assert!(!a.printed_report().pass);
        assert!(verify_barnes_lacunary(c(0.5, 0.0), 4, 6, 1e-6).is_err());
    }

    #[test]
    fn mzv_cases() {
        let a = mzv_numeric(1, 1, 10_000).unwrap();
        assert!((a.truncated - PI.powi(2) / 6.0).abs() < 1e-4);
        let b = mzv_numeric(1, 2, 2000).unwrap();
        assert!((b.corrected - PI.powi(4) / 120.0).abs() < 1e-6);
        // plain truncation stays near ζ(2)/M away
        assert!((b.truncated - PI.powi(4) / 120.0).abs() > 1e-4);
        let c3 = mzv_numeric(3, 1, 200).unwrap();
        assert!((c3.truncated - PI.powi(6) / 945.0).abs() < 1e-10);
        assert!(verify_mzv(2, 2, 100, 1e-10).unwrap().pass);
        assert!(mzv_numeric(1, 3, 10).is_err());
    }
}
