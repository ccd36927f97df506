//! Floating-point checks for the identities that involve infinite sums or
//! integrals. Each check reports a residual together with a truncation
//! budget, and passes only when both are below the tolerance.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

mod eisenstein;
mod moments;
mod zeta;

pub use eisenstein::{
    eisenstein_g, eisenstein_g_converged, eisenstein_table, verify_eisenstein_limit, verify_eisenstein_ode,
    verify_weierstrass_routes, weierstrass_f_coeffs, EisensteinTable, WeierstrassCoeffs,
};
pub use moments::{ramanujan_integral, sech2_moment, verify_ramanujan_integral, verify_sech2, verify_sech2_printed};
pub use zeta::{
    barnes_zeta2, hurwitz_zeta, hurwitz_zeta_with_budget, mzv_numeric, verify_barnes_lacunary, verify_mzv,
    BarnesLacunary, MzvNumeric,
};

pub use num_complex::Complex64 as ComplexD;

/// Default tolerances per identity family.
pub const TOL_DOUBLE_SUM: f64 = 1e-6;
pub const TOL_SERIES: f64 = 1e-8;
pub const TOL_QUADRATURE: f64 = 1e-10;

/// Outcome of one numeric check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericReport {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub residual: f64,
    pub budget: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub erratum: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, f64>,
}

impl NumericReport {
    pub(crate) fn new(identity: &str, params: BTreeMap<String, String>, residual: f64, budget: f64, tol: f64) -> Self {
        let mut params = params;
        params.insert("tol".into(), format!("{tol:e}"));
        NumericReport {
            identity: identity.to_string(),
            params,
            residual,
            budget,
            pass: residual.is_finite() && budget.is_finite() && residual < tol && budget < tol,
            erratum: None,
            details: BTreeMap::new(),
        }
    }

    pub(crate) fn detail(mut self, key: &str, value: f64) -> Self {
        self.details.insert(key.to_string(), value);
        self
    }

    pub(crate) fn erratum(mut self, note: &str) -> Self {
        self.erratum = Some(note.to_string());
        self
    }
}

pub(crate) fn fmt_complex(z: ComplexD) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

/// A printed numeric formula that fails where the corrected one passes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericErratum {
    pub id: String,
    pub description: String,
    pub printed: NumericReport,
    pub corrected: NumericReport,
}

impl NumericErratum {
    pub fn confirmed(&self) -> bool {
        !self.printed.pass && self.corrected.pass
    }
}

/// Numeric erratum witnesses: the Bell-polynomial divisibility condition, the
/// Hurwitz right side of the Barnes zeta identity and the sech² density.
pub fn numeric_errata() -> crate::Result<Vec<NumericErratum>> {
    let tau = ComplexD::new(0.0, 1.0);
    let (printed, corrected) = eisenstein::bell_divisibility_witness(tau, 2, 1, 1e-10)?;
    let bell = NumericErratum {
        id: "bell_divisibility".into(),
        description: "Bell arguments b_k nonzero for N | k in place of 2N | k".into(),
        printed,
        corrected,
    };
    let w = ComplexD::new(3.0, 0.0);
    let b = verify_barnes_lacunary(w, 4, 6, TOL_DOUBLE_SUM)?;
    let barnes = NumericErratum {
        id: "barnes_rhs".into(),
        description: "Hurwitz right side of the Barnes zeta lacunary identity".into(),
        printed: b.printed_report(),
        corrected: b.report,
    };
    let sech2 = NumericErratum {
        id: "sech2_density".into(),
        description: "moment representation with density π sech²(πx)".into(),
        printed: verify_sech2_printed(0, TOL_QUADRATURE),
        corrected: verify_sech2(0, TOL_QUADRATURE).swap_remove(0),
    };
    Ok(vec![bell, barnes, sech2])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errata_confirmed() {
        for e in numeric_errata().unwrap() {
            assert!(e.confirmed(), "{}: {:?} / {:?}", e.id, e.printed, e.corrected);
        }
    }

    #[test]
    fn report_schema() {
        let r = NumericReport::new("x", BTreeMap::new(), 0.5, 0.1, 1.0);
        assert!(r.pass);
        let v = serde_json::to_value(&r).unwrap();
        for key in ["identity", "params", "residual", "budget", "pass"] {
            assert!(v.get(key).is_some());
        }
        assert!(!NumericReport::new("x", BTreeMap::new(), 0.5, 2.0, 1.0).pass);
        assert!(!NumericReport::new("x", BTreeMap::new(), f64::NAN, 0.0, 1.0).pass);
    }
}
