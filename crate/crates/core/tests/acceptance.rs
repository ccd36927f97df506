//! Acceptance criteria. Prints one PASS/FAIL line per criterion, then fails
//! exits nonzero if any criterion failed.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lacuna::alpha::{
    alpha_closed, alpha_context, alpha_doubling, alpha_integral, alpha_orbit_prime, alpha_series, alpha_signsum,
};
use lacuna::analytic::{
    verify_barnes_lacunary, verify_eisenstein_limit, verify_eisenstein_ode, verify_ramanujan_integral, verify_sech2,
    verify_weierstrass_routes, ComplexD,
};
use lacuna::bernoulli::lacunary_bernoulli12;
use lacuna::lattice::{
    cyclic_orbits, find_integral_pairs, orbit_representatives_min_arg, six_interval_lattice, two_interval_lattice,
};
use lacuna::rational::{int, pow2, rat, sign};
use lacuna::suite::{run_identity, Report, SuiteParams, IDENTITIES};
use lacuna::verify::{self, TwoIntervalVariant, VerificationReport};
use lacuna::{CyclotomicNumber, Result};

const SEED: u64 = 20240601;
const TOL_BARNES_W3: f64 = 1e-6;
const TOL_BARNES_W25: f64 = 1e-5;
const TOL_ODE: f64 = 1e-8;
const TOL_ROUTES: f64 = 1e-10;
const TOL_LIMIT: f64 = 1e-3;
const TOL_SECH2: f64 = 1e-10;
const TOL_RADIUS: f64 = 1e-5;
const P7_RADII: [f64; 9] = [0.890084, 1.109916, 1.603875, 2.000000, 2.493959, 2.828427, 2.828427, 3.603875, 4.493959];

struct Outcome {
    pass: bool,
    line: String,
}

fn criterion(id: &str, title: &str, limit_s: u64, f: impl FnOnce() -> Result<(bool, String)>) -> Outcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(limit_s);
    let (ok, detail) = match result {
        Ok((ok, d)) => (ok, d),
        Err(e) => (false, format!("error: {e}")),
    };
    let pass = ok && in_time;
    let timing = format!("{:.2}s/{}s", elapsed.as_secs_f64(), limit_s);
    let line = format!(
        "{} [{id}] {title} ({timing}{}) {detail}",
        if pass { "PASS" } else { "FAIL" },
        if in_time { "" } else { ", over time" },
    );
    println!("{line}");
    Outcome { pass, line }
}

fn all_pass(reports: &[VerificationReport]) -> bool {
    !reports.is_empty() && reports.iter().all(VerificationReport::passed)
}

fn c1() -> Result<(bool, String)> {
    let reports = verify::verify_ramanujan12(8)?;
    let table = lacunary_bernoulli12(2);
    let ok = reports.len() == 9
        && all_pass(&reports)
        && table[1] == rat(-691, 2730)
        && table[2] == rat(-236_364_091, 2730);
    Ok((ok, format!("{} exact zero residuals, B_12 = {}, B_24 = {}", reports.iter().filter(|r| r.passed()).count(), table[1], table[2])))
}

fn c2() -> Result<(bool, String)> {
    let mut checks = 0;
    let mut bad = Vec::new();
    for n in 1..=6 {
        let series = alpha_series(n, 4)?;
        for k in 0..=4 {
            checks += 2;
            if alpha_signsum(n, k)? != series.values[k] {
                bad.push(format!("signsum N={n} k={k}"));
            }
            if alpha_closed(n, k)? != series.values[k] {
                bad.push(format!("closed N={n} k={k}"));
            }
        }
    }
    for n in 1..=3 {
        let doubled = alpha_doubling(&alpha_series(n, 6)?, 3)?;
        let target = alpha_series(2 * n, 3)?;
        checks += 1;
        if doubled.values != target.values {
            bad.push(format!("doubling N={n}"));
        }
    }
    for p in [3, 5, 7] {
        let series = alpha_series(p, 3)?;
        for k in 0..=3 {
            checks += 1;
            if alpha_orbit_prime(p, k)? != series.values[k] {
                bad.push(format!("orbit p={p} k={k}"));
            }
        }
    }
    for n in 1..=3 {
        let series = alpha_series(n, 2)?;
        for k in 0..=2 {
            checks += 1;
            if alpha_integral(n, k)? != series.values[k] {
                bad.push(format!("integral N={n} n={k}"));
            }
        }
    }
    let two = alpha_series(2, 5)?;
    let ctx = alpha_context(2);
    let i = CyclotomicNumber::imaginary_unit(&ctx)?;
    for k in 0..=5i64 {
        checks += 1;
        if two.values[k as usize] != i.scale(&(int(sign(k)) * pow2(2 * k + 1))) {
            bad.push(format!("spot N=2 k={k}"));
        }
    }
    let ctx6 = alpha_context(6);
    checks += 1;
    if alpha_series(6, 0)?.values[0] != CyclotomicNumber::imaginary_unit(&ctx6)?.scale(&int(720)) {
        bad.push("alpha_0^(6) = 720i".into());
    }
    Ok((bad.is_empty(), format!("{checks} exact comparisons, mismatches: {bad:?}")))
}

fn c3() -> Result<(bool, String)> {
    let six = six_interval_lattice();
    let report = find_integral_pairs(&six)?;
    let h = report.gap_histogram();
    let want: BTreeMap<i64, usize> = [(1, 12), (2, 6)].into_iter().collect();
    let two = find_integral_pairs(&two_interval_lattice())?;
    let want_two: BTreeMap<i64, usize> = [(2, 2)].into_iter().collect();
    let ok = six.len() == 36 && h == want && report.is_integral() && two.gap_histogram() == want_two && two.is_integral();
    Ok((ok, format!("six-interval gaps {h:?}, unpaired {}; {{±1±i}} gaps {:?}", report.unpaired.len(), two.gap_histogram())))
}

fn c4() -> Result<(bool, String)> {
    let mut sizes = BTreeMap::new();
    for o in cyclic_orbits(7)? {
        *sizes.entry(o.size).or_insert(0usize) += 1;
    }
    let rows = orbit_representatives_min_arg(7)?;
    let mut radii: Vec<f64> = rows.iter().map(|r| r.radius).collect();
    radii.sort_by(f64::total_cmp);
    let worst = radii.iter().zip(P7_RADII).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let want: BTreeMap<usize, usize> = [(2, 1), (14, 9)].into_iter().collect();
    let ok = sizes == want && rows.len() == 9 && worst < TOL_RADIUS;
    Ok((ok, format!("orbit sizes {sizes:?}, max radius deviation {worst:.2e} (tol {TOL_RADIUS:e})")))
}

fn c5() -> Result<(bool, String)> {
    let mut reports = Vec::new();
    for v in TwoIntervalVariant::ALL {
        for n in 0..=10 {
            reports.push(verify::verify_two_interval(n, v, false));
        }
    }
    for n in 0..=10 {
        reports.push(verify::verify_four_interval(n)?);
    }
    let random = verify::verify_prop_main_random(50, SEED)?;
    let ok = all_pass(&reports) && random.len() == 50 && all_pass(&random);
    let failed = reports.iter().chain(&random).filter(|r| !r.passed()).count();
    Ok((ok, format!("{} two/four-interval cases and {} random Prop_main cases (seed {SEED}), {failed} failures", reports.len(), random.len())))
}

fn c6() -> Result<(bool, String)> {
    let lehmer = verify::verify_lehmer(20);
    let moments = verify::verify_moment_cancellation(30);
    let b = verify::verify_b_sequence(36)?;
    let ok = lehmer.len() == 21 && all_pass(&lehmer) && moments.len() == 30 && all_pass(&moments) && b.passed();
    Ok((ok, "Lehmer n<=20, moments n<=30, b_n through z^36".to_string()))
}

fn c7() -> Result<(bool, String)> {
    let r = verify::verify_multisection(100, SEED)?;
    Ok((r.passed(), format!("100 random polynomials, seed {SEED}, residual {}", r.residual)))
}

fn c8() -> Result<(bool, String)> {
    let a = verify_barnes_lacunary(ComplexD::new(3.0, 0.0), 4, 6, TOL_BARNES_W3)?.report;
    let b = verify_barnes_lacunary(ComplexD::new(2.5, 0.0), 3, 8, TOL_BARNES_W25)?.report;
    Ok((
        a.pass && b.pass,
        format!(
            "w=3: residual {:.2e} budget {:.2e} (tol {TOL_BARNES_W3:e}); w=2.5: residual {:.2e} budget {:.2e} (tol {TOL_BARNES_W25:e})",
            a.residual, a.budget, b.residual, b.budget
        ),
    ))
}

fn c9() -> Result<(bool, String)> {
    let mut ok = true;
    let mut worst_ode: f64 = 0.0;
    for (tau, n) in [(ComplexD::new(0.0, 1.0), 1), (ComplexD::new(0.0, 2.0), 2), (ComplexD::new(0.3, 1.2), 2)] {
        let r = verify_eisenstein_ode(tau, n, 10, TOL_ODE)?;
        ok &= r.pass;
        worst_ode = worst_ode.max(r.residual);
    }
    let mut worst_route: f64 = 0.0;
    for (tau, n, nmax) in [
        (ComplexD::new(0.0, 1.0), 2, 1),
        (ComplexD::new(0.0, 2.0), 1, 2),
        (ComplexD::new(0.0, 1.0), 1, 4),
        (ComplexD::new(0.0, 2.0), 2, 2),
        (ComplexD::new(0.3, 1.2), 2, 2),
    ] {
        let r = verify_weierstrass_routes(tau, n, nmax, TOL_ROUTES)?;
        ok &= r.pass;
        worst_route = worst_route.max(r.residual);
    }
    let mut worst_limit: f64 = 0.0;
    for k in 0..=2 {
        let r = verify_eisenstein_limit(10.0, 2, k, TOL_LIMIT)?;
        ok &= r.pass;
        worst_limit = worst_limit.max(r.residual);
    }
    Ok((
        ok,
        format!(
            "ODE max {worst_ode:.2e} (tol {TOL_ODE:e}), exp/Bell max {worst_route:.2e} (tol {TOL_ROUTES:e}), limit max {worst_limit:.2e} (tol {TOL_LIMIT:e})"
        ),
    ))
}

fn c10() -> Result<(bool, String)> {
    let s = verify_sech2(12, TOL_SECH2);
    let mut ok = s.len() == 13 && s.iter().all(|r| r.pass);
    let mut worst = s.iter().map(|r| r.residual).fold(0.0, f64::max);
    for n in 1..=3 {
        let r = verify_ramanujan_integral(n, TOL_SECH2)?;
        ok &= r.pass;
        worst = worst.max(r.residual);
    }
    Ok((ok, format!("max residual {worst:.2e} (tol {TOL_SECH2:e})")))
}

fn c11() -> Result<(bool, String)> {
    let suite = verify::errata_suite()?;
    let required = ["doubling_factorial", "mzv_phase", "inv_sqrt2_sign", "prop_main_exponent"];
    let mut ok = true;
    let mut seen = Vec::new();
    for id in required {
        let case = suite.iter().find(|c| c.id == id);
        let confirmed = case.is_some_and(|c| c.confirmed());
        ok &= confirmed;
        seen.push(format!("{id}={}", if confirmed { "confirmed" } else { "NOT confirmed" }));
    }
    Ok((ok, seen.join(", ")))
}

fn verify_all() -> Result<(bool, String)> {
    let params = SuiteParams::default();
    let mut total = 0;
    let mut failed = Vec::new();
    for id in IDENTITIES {
        let reports: Vec<Report> = run_identity(id, &params)?;
        total += reports.len();
        if reports.is_empty() || !reports.iter().all(Report::passed) {
            failed.push(id);
        }
    }
    Ok((failed.is_empty(), format!("{} suites, {total} reports, failing suites {failed:?}", IDENTITIES.len())))
}

fn main() -> ExitCode {
    let outcomes = [
        criterion("1", "Ramanujan 12-gap identity", 5, c1),
        criterion("2", "cross-method alpha agreement", 60, c2),
        criterion("3", "lattice pairing", 1, c3),
        criterion("4", "p=7 orbit table", 5, c4),
        criterion("5", "2-/4-interval and Prop_main", 30, c5),
        criterion("6", "Lehmer, moments, b_n", 10, c6),
        criterion("7", "multisection", 10, c7),
        criterion("8", "Barnes zeta lacunary identity", 30, c8),
        criterion("9", "Eisenstein suite", 60, c9),
        criterion("10", "sech2 moments and Ramanujan integral", 10, c10),
        criterion("11", "erratum regression suite", 10, c11),
        criterion("all", "verify all at default parameters", 240, verify_all),
    ];
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.line.as_str()).collect();
    println!("{} of {} criteria pass", outcomes.len() - failed.len(), outcomes.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failing criteria:\n{}", failed.join("\n"));
        ExitCode::FAILURE
    }
}
