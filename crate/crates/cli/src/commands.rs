use std::collections::BTreeMap;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use lacuna::alpha::{alpha_by_method, AlphaMethod};
use lacuna::analytic::{eisenstein_table, weierstrass_f_coeffs, ComplexD, TOL_QUADRATURE};
use lacuna::bernoulli::{bernoulli, lacunary_bernoulli12};
use lacuna::cyclotomic::lcm;
use lacuna::lattice::{
    export_figure_data, figure_data, orbit_representatives_min_arg, orbit_size_histogram,
    FigureData, FigureSelector, SignVector,
};
use lacuna::suite::{run_identity, sort_reports, Report, SuiteParams, IDENTITIES};
use lacuna::verify::TwoIntervalVariant;
use lacuna::CyclotomicNumber;
use rayon::prelude::*;
use serde_json::json;

use crate::args::{AlphaArgs, BernoulliArgs, BernoulliMethod, EisensteinArgs, ExportArgs, Format, LatticeArgs, VerifyArgs};
use crate::output::{fmt_complex, Output};

pub fn bernoulli_cmd(a: &BernoulliArgs) -> Result<Output> {
    let oracle = bernoulli(a.n);
    let (method, value, matches) = match a.method {
        BernoulliMethod::Oracle => ("oracle", oracle.clone(), None),
        BernoulliMethod::Lacunary12 => {
            if !a.n.is_multiple_of(12) {
                bail!("the lacunary12 method computes B_n for n divisible by 12, got n = {}", a.n);
            }
            let v = lacunary_bernoulli12(a.n / 12).swap_remove(a.n / 12);
            let m = v == oracle;
            ("lacunary12", v, Some(m))
        }
    };
    let mut json = json!({ "n": a.n, "method": method, "value": value.to_string() });
    let mut text = format!("{value}\n");
    let mut row = vec![a.n.to_string(), method.to_string(), value.to_string()];
    if let Some(m) = matches {
        json["matches_oracle"] = json!(m);
        text.push_str(&format!("matches_oracle: {m}\n"));
        row.push(m.to_string());
    }
    let header: &[&str] = if matches.is_some() { &["n", "method", "value", "matches_oracle"] } else { &["n", "method", "value"] };
    Ok(Output::new(json, text).table(header, vec![row]).verdict(matches.unwrap_or(true)))
}

fn same_value(a: &CyclotomicNumber, b: &CyclotomicNumber) -> Result<bool> {
    let m = lcm(a.conductor(), b.conductor());
    Ok(a.lift(m)? == b.lift(m)?)
}

fn alpha_entry(method: AlphaMethod, v: &CyclotomicNumber) -> serde_json::Value {
    let z = v.to_complex();
    json!({ "method": method.name(), "value": v, "embedding": { "re": z.re, "im": z.im } })
}

pub fn alpha_cmd(a: &AlphaArgs) -> Result<Output> {
    let methods: Vec<AlphaMethod> = if a.method == "all" {
        AlphaMethod::ALL.into_iter().filter(|m| m.applies(a.big_n)).collect()
    } else {
        let m = AlphaMethod::from_str(&a.method)?;
        if !m.applies(a.big_n) {
            bail!("method {m} does not apply to N = {}", a.big_n);
        }
        vec![m]
    };
    let values = methods
        .iter()
        .map(|&m| alpha_by_method(m, a.big_n, a.k).with_context(|| format!("method {m}")))
        .collect::<Result<Vec<_>>>()?;
    let mut agreement = true;
    for v in &values[1..] {
        agreement &= same_value(&values[0], v)?;
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    for (m, v) in methods.iter().zip(&values) {
        let z = v.to_complex();
        text.push_str(&format!("alpha_{}^({}) [{m}] = {v}  ~ {}\n", a.k, a.big_n, fmt_complex(z.re, z.im)));
        rows.push(vec![
            a.big_n.to_string(),
            a.k.to_string(),
            m.to_string(),
            v.conductor().to_string(),
            v.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
            z.re.to_string(),
            z.im.to_string(),
        ]);
    }
    let json = if methods.len() == 1 && a.method != "all" {
        let mut e = alpha_entry(methods[0], &values[0]);
        e["N"] = json!(a.big_n);
        e["k"] = json!(a.k);
        e
    } else {
        text.push_str(&format!("agreement: {agreement}\n"));
        json!({
            "N": a.big_n,
            "k": a.k,
            "values": methods.iter().zip(&values).map(|(m, v)| alpha_entry(*m, v)).collect::<Vec<_>>(),
            "agreement": agreement,
        })
    };
    Ok(Output::new(json, text)
        .table(&["N", "k", "method", "conductor", "coeffs", "re", "im"], rows)
        .verdict(agreement))
}

pub fn parse_complex(s: &str) -> Result<ComplexD> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let expanded = match t.as_str() {
        "i" | "+i" => "1i".to_string(),
        "-i" => "-1i".to_string(),
        _ => t.replace("+i", "+1i").replace("-i", "-1i"),
    };
    ComplexD::from_str(&expanded).map_err(|_| anyhow::anyhow!("cannot parse complex number {s:?}"))
}

/// Suites each override flag applies to.
const FLAG_TARGETS: &[(&str, &[&str])] = &[
    ("nmax", &["ramanujan12", "two_interval", "four_interval", "norlund", "poly_ext", "polynomial_identity", "moments", "lehmer", "sech2"]),
    ("n", &["prop_main"]),
    ("p", &["prop_main", "barnes_lacunary", "poly_ext", "polynomial_identity"]),
    ("q", &["prop_main"]),
    ("w", &["prop_main", "barnes_lacunary", "poly_ext", "polynomial_identity"]),
    ("k", &["mzv"]),
    ("kmax", &["barnes_lacunary", "eisenstein_limit"]),
    ("M", &["mzv"]),
    ("variant", &["two_interval"]),
    ("printed-sign", &["two_interval"]),
    ("N", &["poly_ext", "polynomial_identity", "general_lacunary", "eisenstein_ode", "eisenstein_limit", "mzv"]),
    ("order", &["general_lacunary", "b_sequence", "eisenstein_ode"]),
    ("tau", &["eisenstein_ode", "eisenstein_limit"]),
    ("cases", &["prop_main", "multisection"]),
    ("orders", &["norlund"]),
];

fn given_flags(a: &VerifyArgs) -> Vec<&'static str> {
    let set = [
        ("nmax", a.nmax.is_some()),
        ("n", a.n.is_some()),
        ("p", a.p.is_some()),
        ("q", a.q.is_some()),
        ("w", a.w.is_some()),
        ("k", a.k.is_some()),
        ("kmax", a.kmax.is_some()),
        ("M", a.big_m.is_some()),
        ("variant", !a.variant.is_empty()),
        ("printed-sign", a.printed_sign),
        ("N", !a.big_n.is_empty()),
        ("order", a.order.is_some()),
        ("tau", a.tau.is_some()),
        ("cases", a.cases.is_some()),
        ("orders", !a.orders.is_empty()),
    ];
    set.into_iter().filter(|(_, on)| *on).map(|(f, _)| f).collect()
}

fn single_n(a: &VerifyArgs) -> Result<Option<u64>> {
    match a.big_n.as_slice() {
        [] => Ok(None),
        [n] => Ok(Some(*n)),
        _ => bail!("--N takes a single value for this identity"),
    }
}

/// Fold the per-suite flags into `p` for identity `id`.
pub fn apply_overrides(id: &str, a: &VerifyArgs, p: &mut SuiteParams) -> Result<()> {
    let flags = given_flags(a);
    if id == "all" {
        if let Some(f) = flags.first() {
            bail!("--{f} needs a single identity; `verify all` takes only --seed and --tol");
        }
        return Ok(());
    }
    for f in &flags {
        let targets = FLAG_TARGETS.iter().find(|(name, _)| name == f).map(|(_, t)| *t).unwrap_or(&[]);
        if !targets.contains(&id) {
            bail!("--{f} does not apply to {id}");
        }
    }
    match id {
        "ramanujan12" => set(&mut p.ramanujan12.nmax, a.nmax),
        "four_interval" => set(&mut p.four_interval.nmax, a.nmax),
        "moments" => set(&mut p.moments.nmax, a.nmax),
        "lehmer" => set(&mut p.lehmer.nmax, a.nmax),
        "sech2" => set(&mut p.sech2.nmax, a.nmax.map(u32::try_from).transpose()?),
        "b_sequence" => set(&mut p.b_sequence.order, a.order),
        "multisection" => set(&mut p.multisection.cases, a.cases),
        "two_interval" => {
            set(&mut p.two_interval.nmax, a.nmax);
            if !a.variant.is_empty() {
                p.two_interval.variants =
                    a.variant.iter().map(|v| TwoIntervalVariant::from_str(v)).collect::<lacuna::Result<_>>()?;
            }
            p.two_interval.printed_sign |= a.printed_sign;
        }
        "norlund" => {
            set(&mut p.norlund.nmax, a.nmax);
            if !a.orders.is_empty() {
                p.norlund.orders = a.orders.clone();
            }
        }
        "prop_main" => {
            if a.n.is_some() || a.p.is_some() || a.q.is_some() || a.w.is_some() {
                let z = a.w.clone().unwrap_or_else(|| "sqrt2".into());
                p.prop_main.explicit = vec![(a.n.unwrap_or(0), a.p.unwrap_or(0), a.q.unwrap_or(1), z)];
                p.prop_main.cases = 0;
            }
            set(&mut p.prop_main.cases, a.cases);
        }
        "poly_ext" | "polynomial_identity" => {
            let g = if id == "poly_ext" { &mut p.poly_ext } else { &mut p.polynomial_identity };
            set(&mut g.nmax, a.nmax);
            set(&mut g.pmax, a.p);
            if let Some(w) = &a.w {
                g.w = vec![w.clone()];
            }
            if !a.big_n.is_empty() {
                g.n_values = a.big_n.clone();
            }
        }
        "general_lacunary" => {
            set(&mut p.general_lacunary.order, a.order);
            if !a.big_n.is_empty() {
                p.general_lacunary.n_values = a.big_n.clone();
            }
        }
        "barnes_lacunary" => {
            if a.w.is_some() || a.p.is_some() || a.kmax.is_some() {
                let mut c = p.barnes_lacunary.cases[0].clone();
                if let Some(w) = &a.w {
                    let z = parse_complex(w)?;
                    c.w = [z.re, z.im];
                }
                if let Some(v) = a.p {
                    c.p = u32::try_from(v)?;
                }
                set(&mut c.kmax, a.kmax);
                p.barnes_lacunary.cases = vec![c];
            }
        }
        "eisenstein_ode" => {
            let e = &mut p.eisenstein_ode;
            if a.tau.is_some() || !a.big_n.is_empty() {
                let mut taus: Vec<[f64; 2]> = Vec::new();
                let mut ns: Vec<u64> = Vec::new();
                for c in &e.cases {
                    if !taus.contains(&c.tau) {
                        taus.push(c.tau);
                    }
                    if !ns.contains(&c.n) {
                        ns.push(c.n);
                    }
                }
                if let Some(t) = &a.tau {
                    let z = parse_complex(t)?;
                    taus = vec![[z.re, z.im]];
                }
                if !a.big_n.is_empty() {
                    ns = a.big_n.clone();
                }
                let order = a.order.unwrap_or(e.cases[0].order);
                e.cases = taus
                    .iter()
                    .flat_map(|&tau| ns.iter().map(move |&n| lacuna::suite::OdeCase { tau, n, order }))
                    .collect();
            } else if let Some(order) = a.order {
                for c in &mut e.cases {
                    c.order = order;
                }
            }
        }
        "eisenstein_limit" => {
            let l = &mut p.eisenstein_limit;
            if let Some(t) = &a.tau {
                let z = parse_complex(t)?;
                if z.re != 0.0 {
                    bail!("the limit check runs on the imaginary axis; got tau = {t}");
                }
                l.tau_im = z.im;
            }
            set(&mut l.n, single_n(a)?);
            set(&mut l.kmax, a.kmax);
        }
        "mzv"
            if (a.k.is_some() || a.big_m.is_some() || !a.big_n.is_empty()) => {
                let base = p.mzv.cases[1].clone();
                p.mzv.cases = vec![lacuna::suite::MzvCase {
                    n: single_n(a)?.unwrap_or(base.n),
                    k: a.k.unwrap_or(base.k),
                    m: a.big_m.unwrap_or(base.m),
                    tol: base.tol,
                }];
            }
        _ => {}
    }
    Ok(())
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

fn params_text(params: &BTreeMap<String, String>) -> String {
    params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

pub fn verify_cmd(a: &VerifyArgs, params: &SuiteParams) -> Result<Output> {
    let ids: Vec<&str> = if a.identity == "all" { IDENTITIES.to_vec() } else { vec![a.identity.as_str()] };
    let batches = ids
        .par_iter()
        .map(|id| run_identity(id, params).with_context(|| format!("running {id}")))
        .collect::<Result<Vec<_>>>()?;
    let mut reports: Vec<Report> = batches.into_iter().flatten().collect();
    sort_reports(&mut reports);
    let passed = reports.iter().filter(|r| r.passed()).count();
    let ok = passed == reports.len();
    let mut text = String::new();
    let mut rows = Vec::new();
    for r in &reports {
        let status = if r.passed() { "pass" } else { "fail" };
        let budget = match r {
            Report::Numeric(n) => format!("{:e}", n.budget),
            Report::Exact(_) => String::new(),
        };
        text.push_str(&format!(
            "{} {} {} residual={}{}\n",
            status.to_uppercase(),
            r.identity(),
            params_text(r.params()),
            r.residual_text(),
            r.erratum().map(|e| format!(" erratum: {e}")).unwrap_or_default()
        ));
        rows.push(vec![
            r.identity().to_string(),
            status.to_string(),
            r.residual_text(),
            budget,
            params_text(r.params()),
            r.erratum().unwrap_or_default().to_string(),
        ]);
    }
    text.push_str(&format!("{passed} of {} checks passed (seed {})\n", reports.len(), params.seed));
    Ok(Output::new(serde_json::to_value(&reports)?, text)
        .table(&["identity", "status", "residual", "budget", "params", "erratum"], rows)
        .verdict(ok))
}

fn figure_output(selector: FigureSelector, data: &FigureData) -> Result<Output> {
    let mut gaps: BTreeMap<i64, usize> = BTreeMap::new();
    for e in &data.edges {
        *gaps.entry(e.gap).or_insert(0) += 1;
    }
    let mut text = format!("{selector}: {} points, {} edges", data.points.len(), data.edges.len());
    if !gaps.is_empty() {
        let g: Vec<String> = gaps.iter().map(|(g, c)| format!("{g}: {c}")).collect();
        text.push_str(&format!(" (gap counts {})", g.join(", ")));
    }
    text.push('\n');
    for e in &data.edges {
        text.push_str(&format!("  {} - {} = {}\n", e.a, e.b, e.gap));
    }
    let rows = data
        .points
        .iter()
        .map(|p| {
            vec![p.label.clone(), p.re.to_string(), p.im.to_string(), p.sign.to_string(), p.orbit.map(|o| o.to_string()).unwrap_or_default()]
        })
        .collect();
    Ok(Output::new(serde_json::to_value(data)?, text).table(&["label", "re", "im", "sign", "orbit"], rows))
}

fn signs(s: &SignVector) -> String {
    s.entries().iter().map(|&e| if e > 0 { '+' } else { '-' }).collect()
}

fn orbits_output(n: usize) -> Result<Output> {
    let hist = orbit_size_histogram(n)?;
    let rows = if lacuna::alpha::is_odd_prime(n as u64) { orbit_representatives_min_arg(n as u64)? } else { Vec::new() };
    let h: Vec<String> = hist.iter().map(|(s, c)| format!("{c} x size {s}")).collect();
    let mut text = format!("N = {n}: {}\n", h.join(", "));
    if !rows.is_empty() {
        text.push_str("representative  signature  radius     arg\n");
        for r in &rows {
            text.push_str(&format!("{:<15} {:>9}  {:.6}  {:.6}\n", signs(&r.representative), r.signature, r.radius, r.arg));
        }
    }
    let table = rows
        .iter()
        .map(|r| {
            vec![
                signs(&r.representative),
                r.signature.to_string(),
                r.size.to_string(),
                r.radius.to_string(),
                r.arg.to_string(),
            ]
        })
        .collect();
    let histogram: BTreeMap<String, usize> = hist.iter().map(|(s, c)| (s.to_string(), *c)).collect();
    let json = json!({ "N": n, "histogram": histogram, "rows": rows });
    Ok(Output::new(json, text).table(&["representative", "signature", "size", "radius", "arg"], table))
}

pub fn lattice_cmd(a: &LatticeArgs) -> Result<Output> {
    if let Some(n) = a.orbits {
        let out = orbits_output(n)?;
        if let Some(path) = &a.emit {
            let fmt = if path.extension().is_some_and(|e| e == "csv") { Format::Csv } else { Format::Json };
            out.emit(fmt, Some(path))?;
        }
        return Ok(out);
    }
    let selector = if a.six_interval {
        FigureSelector::SixInterval
    } else if a.two_interval {
        FigureSelector::TwoInterval
    } else if a.four_interval {
        FigureSelector::FourInterval
    } else if let Some(n) = a.sign_lattice {
        FigureSelector::SignLattice(n)
    } else {
        bail!("choose a lattice");
    };
    let data = match &a.emit {
        Some(path) => export_figure_data(selector, path).with_context(|| format!("writing {}", path.display()))?,
        None => figure_data(selector)?,
    };
    figure_output(selector, &data)
}

pub fn eisenstein_cmd(a: &EisensteinArgs, tol: Option<f64>) -> Result<Output> {
    let tau = parse_complex(&a.tau)?;
    let tol = tol.unwrap_or(TOL_QUADRATURE);
    if a.kmin > a.kmax {
        bail!("--kmin must not exceed --kmax");
    }
    let table = eisenstein_table(tau, a.kmin, a.kmax, tol)?;
    let mut text = format!("tau = {}\n", fmt_complex(tau.re, tau.im));
    let mut rows = Vec::new();
    for (k, v, e) in &table.values {
        text.push_str(&format!("G_{k} = {}  (estimate {e:.1e})\n", fmt_complex(v.re, v.im)));
        rows.push(vec![format!("G_{k}"), v.re.to_string(), v.im.to_string(), e.to_string()]);
    }
    if table.weight2_conditional {
        text.push_str("G_2 depends on the order of summation; rows are summed first\n");
    }
    let coeffs = match a.big_n {
        Some(n) => Some(weierstrass_f_coeffs(tau, n, a.nmax, tol)?),
        None => None,
    };
    if let Some(c) = &coeffs {
        for (j, v) in c.bell_route.iter().enumerate() {
            let idx = (2 * j as u64 + 1) * c.n;
            text.push_str(&format!("a_{idx} = {}\n", fmt_complex(v.re, v.im)));
            rows.push(vec![format!("a_{idx}"), v.re.to_string(), v.im.to_string(), c.max_discrepancy.to_string()]);
        }
        text.push_str(&format!("exp/Bell max discrepancy {:.2e}\n", c.max_discrepancy));
    }
    let json = json!({ "table": table, "coeffs": coeffs });
    Ok(Output::new(json, text).table(&["name", "re", "im", "error"], rows))
}

pub fn export_cmd(a: &ExportArgs, format: Format) -> Result<Option<Output>> {
    if a.figure == "all" {
        let dir = a.path.as_deref().context("`export all` needs a destination directory")?;
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let ext = if format == Format::Csv { "csv" } else { "json" };
        let mut text = String::new();
        for sel in [FigureSelector::TwoInterval, FigureSelector::FourInterval, FigureSelector::SixInterval] {
            let path = dir.join(format!("{sel}.{ext}"));
            let d = export_figure_data(sel, &path)?;
            text.push_str(&format!("{}: {} points, {} edges\n", path.display(), d.points.len(), d.edges.len()));
        }
        print!("{text}");
        return Ok(None);
    }
    let selector = FigureSelector::from_str(&a.figure)?;
    match &a.path {
        Some(path) => {
            let d = export_figure_data(selector, path)?;
            println!("{}: {} points, {} edges", path.display(), d.points.len(), d.edges.len());
            Ok(None)
        }
        None => Ok(Some(figure_output(selector, &figure_data(selector)?)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        for (s, re, im) in [("i", 0.0, 1.0), ("2i", 0.0, 2.0), ("0.3+1.2i", 0.3, 1.2), ("3", 3.0, 0.0), ("1-i", 1.0, -1.0)] {
            assert_eq!(parse_complex(s).unwrap(), ComplexD::new(re, im), "{s}");
        }
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn overrides_route_to_their_suite() {
        let mut p = SuiteParams::default();
        let a = VerifyArgs { identity: "eisenstein_ode".into(), tau: Some("2i".into()), order: Some(6), ..Default::default() };
        apply_overrides("eisenstein_ode", &a, &mut p).unwrap();
        assert_eq!(p.eisenstein_ode.cases.len(), 2);
        assert!(p.eisenstein_ode.cases.iter().all(|c| c.tau == [0.0, 2.0] && c.order == 6));

        let mut p = SuiteParams::default();
        let a = VerifyArgs { identity: "prop_main".into(), n: Some(1), q: Some(2), w: Some("sqrt2".into()), ..Default::default() };
        apply_overrides("prop_main", &a, &mut p).unwrap();
        assert_eq!(p.prop_main.cases, 0);
        assert_eq!(p.prop_main.explicit, vec![(1, 0, 2, "sqrt2".to_string())]);

        let mut p = SuiteParams::default();
        let a = VerifyArgs { identity: "eisenstein_limit".into(), tau: Some("0.5+10i".into()), ..Default::default() };
        assert!(apply_overrides("eisenstein_limit", &a, &mut p).is_err());
        let a = VerifyArgs { identity: "mzv".into(), big_n: vec![2, 3], ..Default::default() };
        assert!(apply_overrides("mzv", &a, &mut p).is_err());
    }
}
