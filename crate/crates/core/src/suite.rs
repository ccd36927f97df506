//! Registered verification suites and their default parameters.
//!
//! Parameters deserialize from any serde format with every field optional, so
//! a config file only needs to name what it changes.

use serde::{Deserialize, Serialize};

use crate::analytic::{self, ComplexD, NumericReport};
use crate::cyclotomic::parse_cyclotomic;
use crate::error::{Error, Result};
use crate::verify::{self, TwoIntervalVariant, VerificationReport};

pub const IDENTITIES: [&str; 17] = [
    "ramanujan12",
    "two_interval",
    "four_interval",
    "prop_main",
    "norlund",
    "poly_ext",
    "general_lacunary",
    "polynomial_identity",
    "moments",
    "b_sequence",
    "lehmer",
    "barnes_lacunary",
    "eisenstein_ode",
    "eisenstein_limit",
    "sech2",
    "mzv",
    "multisection",
];

/// Either kind of report, serialized without a tag.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    Exact(VerificationReport),
    Numeric(NumericReport),
}

impl Report {
    pub fn passed(&self) -> bool {
        match self {
            Report::Exact(r) => r.passed(),
            Report::Numeric(r) => r.pass,
        }
    }

    pub fn identity(&self) -> &str {
        match self {
            Report::Exact(r) => &r.identity,
            Report::Numeric(r) => &r.identity,
        }
    }

    pub fn params(&self) -> &std::collections::BTreeMap<String, String> {
        match self {
            Report::Exact(r) => &r.params,
            Report::Numeric(r) => &r.params,
        }
    }

    pub fn erratum(&self) -> Option<&str> {
        match self {
            Report::Exact(r) => r.erratum.as_deref(),
            Report::Numeric(r) => r.erratum.as_deref(),
        }
    }

    /// Residual as text: an exact field element or a float.
    pub fn residual_text(&self) -> String {
        match self {
            Report::Exact(r) => r.residual.to_string(),
            Report::Numeric(r) => format!("{:e}", r.residual),
        }
    }

    fn params_mut(&mut self) -> &mut std::collections::BTreeMap<String, String> {
        match self {
            Report::Exact(r) => &mut r.params,
            Report::Numeric(r) => &mut r.params,
        }
    }

    /// Canonical order: identity, then parameters compared as strings.
    pub fn sort_key(&self) -> (String, Vec<(String, String)>) {
        let params = self.params().iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        (self.identity().to_string(), params)
    }
}

pub fn sort_reports(reports: &mut [Report]) {
    reports.sort_by_cached_key(Report::sort_key);
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NmaxParams {
    pub nmax: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TwoIntervalParams {
    pub nmax: u64,
    pub variants: Vec<TwoIntervalVariant>,
    pub printed_sign: bool,
}

impl Default for TwoIntervalParams {
    fn default() -> Self {
        TwoIntervalParams { nmax: 10, variants: TwoIntervalVariant::ALL.to_vec(), printed_sign: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PropMainParams {
    /// Random cases drawn from the seed.
    pub cases: usize,
    /// Explicit cases `(n, p, q, z)` run in addition, with `z` a literal such as `"sqrt2"`.
    pub explicit: Vec<(u64, u64, u64, String)>,
}

impl Default for PropMainParams {
    fn default() -> Self {
        PropMainParams {
            cases: 50,
            explicit: vec![(0, 0, 2, "sqrt2".into()), (1, 0, 2, "sqrt2".into()), (2, 1, 3, "1+i".into())],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NorlundParams {
    pub nmax: u64,
    pub orders: Vec<i64>,
}

impl Default for NorlundParams {
    fn default() -> Self {
        NorlundParams { nmax: 4, orders: vec![-1, 0, 1, 2, 3] }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridParams {
    #[serde(rename = "N")]
    pub n_values: Vec<u64>,
    pub nmax: u64,
    pub pmax: u64,
    pub w: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneralLacunaryParams {
    #[serde(rename = "N")]
    pub n_values: Vec<u64>,
    pub order: usize,
}

impl Default for GeneralLacunaryParams {
    fn default() -> Self {
        GeneralLacunaryParams { n_values: (1..=6).collect(), order: 36 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OrderParams {
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CasesParams {
    pub cases: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarnesCase {
    /// `[re, im]`
    pub w: [f64; 2],
    pub p: u32,
    pub kmax: usize,
    pub tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BarnesParams {
    pub cases: Vec<BarnesCase>,
}

impl Default for BarnesParams {
    fn default() -> Self {
        BarnesParams {
            cases: vec![
                BarnesCase { w: [3.0, 0.0], p: 4, kmax: 6, tol: 1e-6 },
                BarnesCase { w: [2.5, 0.0], p: 3, kmax: 8, tol: 1e-5 },
            ],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OdeCase {
    pub tau: [f64; 2],
    #[serde(rename = "N")]
    pub n: u64,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OdeParams {
    pub cases: Vec<OdeCase>,
    pub tol: f64,
    /// Tolerance for the exponential against Bell agreement.
    pub route_tol: f64,
}

impl Default for OdeParams {
    fn default() -> Self {
        OdeParams {
            cases: vec![
                OdeCase { tau: [0.0, 1.0], n: 1, order: 10 },
                OdeCase { tau: [0.0, 2.0], n: 2, order: 10 },
                OdeCase { tau: [0.3, 1.2], n: 2, order: 10 },
            ],
            tol: analytic::TOL_SERIES,
            route_tol: 1e-10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LimitParams {
    pub tau_im: f64,
    #[serde(rename = "N")]
    pub n: u64,
    pub kmax: usize,
    pub tol: f64,
}

impl Default for LimitParams {
    fn default() -> Self {
        LimitParams { tau_im: 10.0, n: 2, kmax: 2, tol: 1e-3 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Sech2Params {
    pub nmax: u32,
    /// `n` values for the companion integral `∫ x^{2n}/(e^{πx}-e^{-πx})²`.
    pub integral_n: Vec<u32>,
    pub tol: f64,
}

impl Default for Sech2Params {
    fn default() -> Self {
        Sech2Params { nmax: 12, integral_n: vec![1, 2, 3], tol: analytic::TOL_QUADRATURE }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MzvCase {
    #[serde(rename = "N")]
    pub n: u64,
    pub k: u64,
    #[serde(rename = "M")]
    pub m: u64,
    pub tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MzvParams {
    pub cases: Vec<MzvCase>,
}

impl Default for MzvParams {
    fn default() -> Self {
        MzvParams {
            cases: vec![
                MzvCase { n: 1, k: 1, m: 10_000, tol: 1e-4 },
                MzvCase { n: 1, k: 2, m: 2000, tol: 1e-6 },
                MzvCase { n: 3, k: 1, m: 200, tol: 1e-10 },
            ],
        }
    }
}

/// Parameters for every registered suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteParams {
    pub seed: u64,
    /// Overrides every numeric tolerance when set.
    pub tol: Option<f64>,
    pub ramanujan12: NmaxParams,
    pub two_interval: TwoIntervalParams,
    pub four_interval: NmaxParams,
    pub prop_main: PropMainParams,
    pub norlund: NorlundParams,
    pub poly_ext: GridParams,
    pub general_lacunary: GeneralLacunaryParams,
    pub polynomial_identity: GridParams,
    pub moments: NmaxParams,
    pub b_sequence: OrderParams,
    pub lehmer: NmaxParams,
    pub barnes_lacunary: BarnesParams,
    pub eisenstein_ode: OdeParams,
    pub eisenstein_limit: LimitParams,
    pub sech2: Sech2Params,
    pub mzv: MzvParams,
    pub multisection: CasesParams,
}

impl Default for NmaxParams {
    fn default() -> Self {
        NmaxParams { nmax: 8 }
    }
}

impl Default for GridParams {
    fn default() -> Self {
        GridParams { n_values: (1..=6).collect(), nmax: 2, pmax: 2, w: vec!["0".into(), "1/3".into(), "zeta(24,1)".into()] }
    }
}

impl Default for OrderParams {
    fn default() -> Self {
        OrderParams { order: 36 }
    }
}

impl Default for CasesParams {
    fn default() -> Self {
        CasesParams { cases: 100 }
    }
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            seed: 20240601,
            tol: None,
            ramanujan12: NmaxParams { nmax: 8 },
            two_interval: TwoIntervalParams::default(),
            four_interval: NmaxParams { nmax: 10 },
            prop_main: PropMainParams::default(),
            norlund: NorlundParams::default(),
            poly_ext: GridParams::default(),
            general_lacunary: GeneralLacunaryParams::default(),
            polynomial_identity: GridParams {
                n_values: (1..=8).collect(),
                nmax: 2,
                pmax: 1,
                w: vec!["1/3".into(), "zeta(12,1)".into()],
            },
            moments: NmaxParams { nmax: 30 },
            b_sequence: OrderParams { order: 36 },
            lehmer: NmaxParams { nmax: 20 },
            barnes_lacunary: BarnesParams::default(),
            eisenstein_ode: OdeParams::default(),
            eisenstein_limit: LimitParams::default(),
            sech2: Sech2Params::default(),
            mzv: MzvParams::default(),
            multisection: CasesParams { cases: 100 },
        }
    }
}

fn complex(v: [f64; 2]) -> ComplexD {
    ComplexD::new(v[0], v[1])
}

fn exact(v: Vec<VerificationReport>) -> Vec<Report> {
    v.into_iter().map(Report::Exact).collect()
}

/// Run one registered suite. Every report records the seed.
pub fn run_identity(id: &str, p: &SuiteParams) -> Result<Vec<Report>> {
    let tol = |t: f64| p.tol.unwrap_or(t);
    let mut out: Vec<Report> = match id {
        "ramanujan12" => {
            let mut v = verify::verify_ramanujan12(p.ramanujan12.nmax)?;
            v.push(verify::verify_lacunary12_table(p.ramanujan12.nmax.max(2)));
            for n in 0..=p.ramanujan12.nmax.min(2) {
                v.push(verify::verify_six_interval_geometry(n)?);
            }
            exact(v)
        }
        "two_interval" => {
            let t = &p.two_interval;
            let mut v = Vec::new();
            for variant in &t.variants {
                for n in 0..=t.nmax {
                    v.push(verify::verify_two_interval(n, *variant, t.printed_sign));
                }
            }
            exact(v)
        }
        "four_interval" => exact((0..=p.four_interval.nmax).map(verify::verify_four_interval).collect::<Result<_>>()?),
        "prop_main" => {
            let mut v = verify::verify_prop_main_random(p.prop_main.cases, p.seed)?;
            for (n, pp, q, z) in &p.prop_main.explicit {
                v.push(verify::verify_prop_main(*n, *pp, *q, &parse_cyclotomic(z)?, verify::PropMainForm::Corrected)?);
            }
            exact(v)
        }
        "norlund" => {
            let mut v = Vec::new();
            for &a in &p.norlund.orders {
                for n in 0..=p.norlund.nmax {
                    v.push(verify::verify_norlund_two_interval(n, a));
                }
            }
            exact(v)
        }
        "poly_ext" | "polynomial_identity" => {
            let g = if id == "poly_ext" { &p.poly_ext } else { &p.polynomial_identity };
            let ws = g.w.iter().map(|w| parse_cyclotomic(w)).collect::<Result<Vec<_>>>()?;
            let mut v = Vec::new();
            for &big_n in &g.n_values {
                for n in 0..=g.nmax {
                    for pp in 0..=g.pmax {
                        for w in &ws {
                            v.push(if id == "poly_ext" {
                                verify::verify_bernoulli_poly_ext(n, big_n, pp, w)?
                            } else {
                                verify::verify_polynomial_identity(big_n, n, pp, w)?
                            });
                        }
                    }
                }
            }
            exact(v)
        }
        "general_lacunary" => {
            let g = &p.general_lacunary;
            exact(
                g.n_values
                    .iter()
                    .map(|&n| verify::verify_general_lacunary(n, g.order.max(3 * n as usize)))
                    .collect::<Result<_>>()?,
            )
        }
        "moments" => exact(verify::verify_moment_cancellation(p.moments.nmax)),
        "b_sequence" => exact(vec![verify::verify_b_sequence(p.b_sequence.order)?]),
        "lehmer" => exact(verify::verify_lehmer(p.lehmer.nmax)),
        "multisection" => exact(vec![verify::verify_multisection(p.multisection.cases, p.seed)?]),
        "barnes_lacunary" => p
            .barnes_lacunary
            .cases
            .iter()
            .map(|c| Ok(Report::Numeric(analytic::verify_barnes_lacunary(complex(c.w), c.p, c.kmax, tol(c.tol))?.report)))
            .collect::<Result<_>>()?,
        "eisenstein_ode" => {
            let e = &p.eisenstein_ode;
            let mut v = Vec::new();
            for c in &e.cases {
                let tau = complex(c.tau);
                v.push(Report::Numeric(analytic::verify_eisenstein_ode(tau, c.n, c.order, tol(e.tol))?));
                let nmax = (c.order.saturating_sub(c.n as usize) / (2 * c.n as usize)).max(1);
                v.push(Report::Numeric(analytic::verify_weierstrass_routes(tau, c.n, nmax, tol(e.route_tol))?));
            }
            v
        }
        "eisenstein_limit" => {
            let l = &p.eisenstein_limit;
            (0..=l.kmax)
                .map(|k| Ok(Report::Numeric(analytic::verify_eisenstein_limit(l.tau_im, l.n, k, tol(l.tol))?)))
                .collect::<Result<_>>()?
        }
        "sech2" => {
            let s = &p.sech2;
            let mut v: Vec<Report> = analytic::verify_sech2(s.nmax, tol(s.tol)).into_iter().map(Report::Numeric).collect();
            for &n in &s.integral_n {
                v.push(Report::Numeric(analytic::verify_ramanujan_integral(n, tol(s.tol))?));
            }
            v
        }
        "mzv" => p
            .mzv
            .cases
            .iter()
            .map(|c| Ok(Report::Numeric(analytic::verify_mzv(c.n, c.k, c.m, tol(c.tol))?)))
            .collect::<Result<_>>()?,
        other => return Err(Error::Parse(format!("unknown identity {other:?}; known: {}", IDENTITIES.join(", ")))),
    };
    for r in &mut out {
        r.params_mut().insert("seed".into(), p.seed.to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_roundtrip() {
        let p = SuiteParams::default();
        let v = serde_json::to_value(&p).unwrap();
        let back: SuiteParams = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
        let partial: SuiteParams = serde_json::from_str(r#"{"ramanujan12": {"nmax": 3}}"#).unwrap();
        assert_eq!(partial.ramanujan12.nmax, 3);
        assert_eq!(partial.lehmer.nmax, 20);
        assert!(serde_json::from_str::<SuiteParams>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn small_runs() {
        let mut p = SuiteParams::default();
        p.ramanujan12.nmax = 2;
        p.lehmer.nmax = 3;
        for id in ["ramanujan12", "lehmer", "mzv"] {
            let reports = run_identity(id, &p).unwrap();
            assert!(!reports.is_empty());
            assert!(reports.iter().all(Report::passed), "{id}");
            assert!(reports.iter().all(|r| r.params()["seed"] == p.seed.to_string()));
        }
        assert!(run_identity("nope", &p).is_err());
    }

    #[test]
    fn printed_sign_fails() {
        let mut p = SuiteParams::default();
        p.two_interval.variants = vec![TwoIntervalVariant::InvSqrt2];
        p.two_interval.printed_sign = true;
        p.two_interval.nmax = 2;
        let r = run_identity("two_interval", &p).unwrap();
        assert!(r.iter().all(|r| !r.passed() && r.erratum().is_some()));
    }
}
