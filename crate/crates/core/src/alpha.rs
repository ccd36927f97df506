//! The coefficients `α_k^{(N)}` defined by
//! `Σ_k α_k z^{2kN+N}/(2kN+N)! = ∏_{j<N} sinh(ω^j z)`, `ω = e^{iπ/N}`,
//! computed along seven independent routes that must agree exactly.
//!
//! Values live in Q(ζ_M) with `M = 2N`, except that `N ≤ 2` uses `M = 4` so
//! that `i` is always available for the parity checks.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bernoulli::barnes_poly;
use crate::cyclotomic::{lcm, CyclotomicContext, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::lattice::{orbit_representatives_min_arg, SignVector};
use crate::rational::{big, factorial, factorial_q, int, pow2, rat, sign, Rational};
use crate::series::TruncSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaMethod {
    Series,
    Signsum,
    Doubling,
    Orbit,
    Closed,
    Integral,
    Barnes,
}

impl AlphaMethod {
    pub const ALL: [AlphaMethod; 7] = [
        AlphaMethod::Series,
        AlphaMethod::Signsum,
        AlphaMethod::Doubling,
        AlphaMethod::Orbit,
        AlphaMethod::Closed,
        AlphaMethod::Integral,
        AlphaMethod::Barnes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlphaMethod::Series => "series",
            AlphaMethod::Signsum => "signsum",
            AlphaMethod::Doubling => "doubling",
            AlphaMethod::Orbit => "orbit",
            AlphaMethod::Closed => "closed",
            AlphaMethod::Integral => "integral",
            AlphaMethod::Barnes => "barnes",
        }
    }

    /// Whether the route is defined for this N.
    pub fn applies(self, n: u64) -> bool {
        match self {
            AlphaMethod::Doubling => n.is_multiple_of(2),
            AlphaMethod::Orbit => is_odd_prime(n),
            AlphaMethod::Closed => (1..=6).contains(&n),
            _ => true,
        }
    }
}

impl fmt::Display for AlphaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlphaMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        AlphaMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown alpha method {s:?}")))
    }
}

/// `α_0..=α_kmax` for one N, tagged with the route that produced them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaTable {
    #[serde(rename = "N")]
    pub n: u64,
    pub method: AlphaMethod,
    pub values: Vec<CyclotomicNumber>,
}

impl AlphaTable {
    pub fn get(&self, k: usize) -> Option<&CyclotomicNumber> {
        self.values.get(k)
    }

    pub fn kmax(&self) -> usize {
        self.values.len() - 1
    }
}

pub fn is_odd_prime(p: u64) -> bool {
    p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn alpha_conductor(n: u64) -> u64 {
    if n <= 2 {
        4
    } else {
        2 * n
    }
}

pub fn alpha_context(n: u64) -> Arc<CyclotomicContext> {
    CyclotomicContext::get(alpha_conductor(n))
}

/// `ω^j` with `ω = ζ_{2N}` inside a context whose conductor is a multiple of 2N.
pub fn omega_power(ctx: &Arc<CyclotomicContext>, n: u64, j: i64) -> CyclotomicNumber {
    let m = ctx.conductor();
    assert!(m.is_multiple_of(2 * n), "conductor {m} lacks the 2N-th roots for N = {n}");
    CyclotomicNumber::root_of_unity(ctx, j * (m / (2 * n)) as i64)
}

/// `i^e`; odd exponents need `4 | M`.
pub fn i_power(ctx: &Arc<CyclotomicContext>, e: i64) -> Result<CyclotomicNumber> {
    if e.rem_euclid(2) == 0 {
        return Ok(CyclotomicNumber::from_int(ctx, sign(e / 2)));
    }
    let i = CyclotomicNumber::imaginary_unit(ctx)?;
    Ok(if e.rem_euclid(4) == 1 { i } else { -i })
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("N must be positive".into()));
    }
    Ok(())
}

/// Route 1: expand `∏ sinh(ω^j z)` as a truncated series.
pub fn alpha_series(n: u64, kmax: usize) -> Result<AlphaTable> {
    check_n(n)?;
    let ctx = alpha_context(n);
    let nn = n as usize;
    let order = 2 * nn * kmax + nn;
    let mut prod = TruncSeries::one(&CyclotomicNumber::zero(&ctx), order);
    for j in 0..n as i64 {
        prod = prod.mul(&TruncSeries::sinh_linear(&omega_power(&ctx, n, j), order))?;
    }
    let values = (0..=kmax)
        .map(|k| {
            let e = 2 * nn * k + nn;
            prod.coeff(e).scale(&factorial_q(e))
        })
        .collect();
    Ok(AlphaTable { n, method: AlphaMethod::Series, values })
}

pub const SIGNSUM_MAX_N: u64 = 22;

/// Route 2: `α_k = 2^{-N} Σ_{s ∈ S(N)} π(s) (ω·s)^{2kN+N}`.
///
/// `s` and `-s` give identical terms, so only `s_1 = +1` is enumerated.
pub fn alpha_signsum(n: u64, k: usize) -> Result<CyclotomicNumber> {
    check_n(n)?;
    if n > SIGNSUM_MAX_N {
        return Err(Error::Budget { what: "sign-vector length", value: n, limit: SIGNSUM_MAX_N });
    }
    let ctx = alpha_context(n);
    let e = (2 * n as usize * k + n as usize) as u64;
    let mut acc = CyclotomicNumber::zero(&ctx);
    for bits in 0..(1u64 << (n - 1)) {
        let s = SignVector::from_bits(n as usize, bits << 1);
        let term = s.position(&ctx).pow(e);
        acc = if s.signature() > 0 { &acc + &term } else { &acc - &term };
    }
    Ok(acc.scale(&pow2(1 - n as i64)))
}

fn doubling_impl(src: &AlphaTable, nmax: usize, with_factorial: bool) -> Result<AlphaTable> {
    let n = src.n;
    if src.values.len() < 2 * nmax + 1 {
        return Err(Error::InsufficientTable { needed: 2 * nmax, available: src.kmax() });
    }
    let ctx = alpha_context(2 * n);
    let m = ctx.conductor();
    let lifted: Vec<CyclotomicNumber> = src.values.iter().map(|v| v.lift(m)).collect::<Result<_>>()?;
    let i = CyclotomicNumber::imaginary_unit(&ctx)?;
    let nn = n as usize;
    let values = (0..=nmax)
        .map(|k| {
            let mut acc = CyclotomicNumber::zero(&ctx);
            for l in 0..=2 * k {
                let den = factorial_q(2 * nn * (2 * k - l) + nn) * factorial_q(2 * nn * l + nn);
                let term = (&lifted[2 * k - l] * &lifted[l]).scale(&(int(sign(l as i64)) / den));
                acc = &acc + &term;
            }
            if with_factorial {
                acc = acc.scale(&factorial_q(4 * nn * k + 2 * nn));
            }
            &i * &acc
        })
        .collect();
    Ok(AlphaTable { n: 2 * n, method: AlphaMethod::Doubling, values })
}

/// Route 3: the table for `2N` from the table for `N`,
/// `α_n^{(2N)} = i (4Nn+2N)! Σ_{l=0}^{2n} (-1)^l α_{2n-l} α_l / ((2N(2n-l)+N)! (2Nl+N)!)`.
pub fn alpha_doubling(src: &AlphaTable, nmax: usize) -> Result<AlphaTable> {
    doubling_impl(src, nmax, true)
}

/// The same recurrence without the `(4Nn+2N)!` factor.
pub fn alpha_doubling_printed(src: &AlphaTable, nmax: usize) -> Result<AlphaTable> {
    doubling_impl(src, nmax, false)
}

/// Route 4 (odd prime p): `α_k = p/2^{p-1} Σ_l π(a_l)(ω·a_l)^{2kp+p}` over
/// one representative per orbit of size 2p.
pub fn alpha_orbit_prime(p: u64, k: usize) -> Result<CyclotomicNumber> {
    if !is_odd_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let ctx = alpha_context(p);
    let e = (2 * p as usize * k + p as usize) as u64;
    let mut acc = CyclotomicNumber::zero(&ctx);
    for row in orbit_representatives_min_arg(p)? {
        let term = row.representative.position(&ctx).pow(e);
        acc = if row.signature > 0 { &acc + &term } else { &acc - &term };
    }
    Ok(acc.scale(&(int(p as i64) * pow2(1 - p as i64))))
}

/// Lucas numbers `L_0 = 2, L_1 = 1`.
pub fn lucas(n: u64) -> Rational {
    let (mut a, mut b) = (int(2), int(1));
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

/// The sequences attached to the 4-, 5- and 6-interval identities, by
/// integer or rational recurrence:
/// N=4: `(1+1/√2)^n + (1-1/√2)^n`; N=5: `L_n + 1`; N=6: `(2+√3)^n + (2-√3)^n + 2^n`.
pub fn a_sequence(n_param: u64, n: u64) -> Result<Rational> {
    let linear = |a0: Rational, a1: Rational, c1: Rational, c2: Rational| {
        let (mut a, mut b) = (a0, a1);
        for _ in 0..n {
            let c = &c1 * &b + &c2 * &a;
            a = std::mem::replace(&mut b, c);
        }
        a
    };
    match n_param {
        4 => Ok(linear(int(2), int(2), int(2), rat(-1, 2))),
        5 => Ok(lucas(n) + int(1)),
        6 => Ok(linear(int(2), int(4), int(4), int(-1)) + pow2(n as i64)),
        other => Err(Error::Precondition(format!("a_sequence is defined for N in {{4,5,6}}, got {other}"))),
    }
}

/// Exact `r` with `ζ({2N}_k) = r·π^{2kN}`, from the tabulated closed forms.
pub fn mzv_closed(n: u64, k: u64) -> Result<Rational> {
    let two_pow = |e: u64| pow2(e as i64);
    let f = |e: u64| factorial_q(e as usize);
    Ok(match n {
        1 => f(2 * k + 1).recip(),
        2 => two_pow(2 * k + 1) / f(4 * k + 2),
        3 => int(6) * two_pow(6 * k) / f(6 * k + 3),
        4 => int(8) * two_pow(8 * k) * a_sequence(4, 4 * k + 2)? / f(8 * k + 4),
        5 => int(10) * two_pow(10 * k) * a_sequence(5, 10 * k + 5)? / f(10 * k + 5),
        6 => int(12) * two_pow(12 * k) * a_sequence(6, 6 * k + 3)? / f(12 * k + 6),
        other => return Err(Error::OutOfTable(other)),
    })
}

/// Route 5: `α_k = i^{N-1} (-1)^{(N+1)k} (2kN+N)! ζ({2N}_k)/π^{2kN}`.
pub fn alpha_closed(n: u64, k: usize) -> Result<CyclotomicNumber> {
    let r = mzv_closed(n, k as u64)?;
    let ctx = alpha_context(n);
    let e = 2 * n as usize * k + n as usize;
    let scalar = int(sign(((n + 1) as i64) * k as i64)) * factorial_q(e) * r;
    Ok(i_power(&ctx, n as i64 - 1)?.scale(&scalar))
}

/// The closed form with the phase `i (-1)^{(N+1)(k+1)}`, in Q(ζ_{lcm(M,4)}).
pub fn alpha_closed_printed(n: u64, k: usize) -> Result<CyclotomicNumber> {
    let r = mzv_closed(n, k as u64)?;
    let ctx = CyclotomicContext::get(lcm(alpha_conductor(n), 4));
    let e = 2 * n as usize * k + n as usize;
    let scalar = int(sign(((n + 1) * (k as u64 + 1)) as i64)) * factorial_q(e) * r;
    Ok(CyclotomicNumber::imaginary_unit(&ctx)?.scale(&scalar))
}

pub const INTEGRAL_TERM_BUDGET: u64 = 5_000_000;

fn binomial_u(n: u64, k: u64) -> u64 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128).min(u64::MAX as u128) as u64
}

/// Route 6: `i^{N-1} 2^{-N} ((2nN+N)!/(2nN)!) ∫_{[-1,1]^N} (Σ_j ω^j u_j)^{2nN} du`,
/// expanded multinomially with `∫_{-1}^{1} u^e du = 2/(e+1)` for even e.
pub fn alpha_integral(n: u64, k: usize) -> Result<CyclotomicNumber> {
    check_n(n)?;
    let ctx = alpha_context(n);
    let big_e = 2 * n as usize * k;
    let half = big_e / 2;
    let terms = binomial_u((half + n as usize - 1) as u64, n - 1);
    if terms > INTEGRAL_TERM_BUDGET {
        return Err(Error::Budget { what: "multinomial terms", value: terms, limit: INTEGRAL_TERM_BUDGET });
    }
    let m = ctx.conductor() as i64;
    let step = m / (2 * n as i64);
    // Accumulate Σ_e c_e ζ^{step·Σ j e_j} as a dense polynomial, reduce once.
    let mut poly = vec![Rational::zero(); m as usize];
    let mut parts = vec![0usize; n as usize];
    let e_fact = factorial(big_e);
    fn walk(
        idx: usize,
        left: usize,
        parts: &mut [usize],
        f: &mut dyn FnMut(&[usize]),
    ) {
        if idx + 1 == parts.len() {
            parts[idx] = left;
            f(parts);
            return;
        }
        for h in 0..=left {
            parts[idx] = h;
            walk(idx + 1, left - h, parts, f);
        }
    }
    walk(0, half, &mut parts, &mut |halves: &[usize]| {
        let mut den = num_bigint::BigInt::one();
        let mut weight = Rational::one();
        let mut exponent = 0i64;
        for (j, &h) in halves.iter().enumerate() {
            let e = 2 * h;
            den *= factorial(e);
            weight *= rat(2, e as i64 + 1);
            exponent += j as i64 * e as i64;
        }
        let c = big(&e_fact / den) * weight;
        poly[(exponent * step).rem_euclid(m) as usize] += c;
    });
    let integral = CyclotomicNumber::from_poly(&ctx, poly);
    let scalar = pow2(-(n as i64)) * factorial_q(big_e + n as usize) / factorial_q(big_e);
    Ok((&i_power(&ctx, n as i64 - 1)? * &integral).scale(&scalar))
}

/// `2^{2kN} ((2kN+N)!/(2kN)!) B_{2kN}^{(-N)}(x; 1, ω, …, ω^{N-1})` with
/// `x = -½ Σ_j ω^j`.
pub fn barnes_core(n: u64, k: usize) -> Result<CyclotomicNumber> {
    check_n(n)?;
    let ctx = alpha_context(n);
    let alphas: Vec<CyclotomicNumber> = (0..n as i64).map(|j| omega_power(&ctx, n, j)).collect();
    let x = alphas
        .iter()
        .fold(CyclotomicNumber::zero(&ctx), |s, a| &s + a)
        .scale(&rat(-1, 2));
    let e = 2 * n as usize * k;
    let b = barnes_poly(e, &x, &alphas)?;
    Ok(b.scale(&(pow2(e as i64) * factorial_q(e + n as usize) / factorial_q(e))))
}

/// The scalar `c_N` with `α_k = c_N · barnes_core(N, k)`, pinned at `k = 0`
/// against the series route. `barnes_core(N, 0) = N!`, so no field division is needed.
pub fn barnes_constant(n: u64) -> Result<CyclotomicNumber> {
    let core0 = barnes_core(n, 0)?;
    let nfact = factorial_q(n as usize);
    if core0.to_rational() != Some(nfact.clone()) {
        return Err(Error::Precondition(format!("barnes core at k=0 is not {n}!")));
    }
    Ok(alpha_series(n, 0)?.values[0].scale(&nfact.recip()))
}

/// Route 7: Bernoulli–Barnes polynomials of order `-N`.
pub fn alpha_via_barnes(n: u64, k: usize) -> Result<CyclotomicNumber> {
    Ok(&barnes_constant(n)? * &barnes_core(n, k)?)
}

/// The constant `i^N/(2N)` as printed, at conductor `lcm(M,4)`.
pub fn barnes_constant_printed(n: u64) -> Result<CyclotomicNumber> {
    let ctx = CyclotomicContext::get(lcm(alpha_conductor(n), 4));
    Ok(i_power(&ctx, n as i64)?.scale(&rat(1, 2 * n as i64)))
}

/// `(-1)^k a_{Nk+N/2} = i^{1-N}/(2N) · 2^{-2kN} · α_k`, the normalization under
/// which the N-interval identities carry the sequences of [`a_sequence`].
pub fn a_normalized(n: u64, k: usize) -> Result<CyclotomicNumber> {
    let table = alpha_series(n, k)?;
    let ctx = alpha_context(n);
    let c = i_power(&ctx, 1 - n as i64)?;
    Ok((&c * &table.values[k]).scale(&(pow2(-2 * (n as i64) * k as i64) / int(2 * n as i64))))
}

/// One value by a named route.
pub fn alpha_by_method(method: AlphaMethod, n: u64, k: usize) -> Result<CyclotomicNumber> {
    match method {
        AlphaMethod::Series => Ok(alpha_series(n, k)?.values.swap_remove(k)),
        AlphaMethod::Signsum => alpha_signsum(n, k),
        AlphaMethod::Doubling => {
            if !n.is_multiple_of(2) {
                return Err(Error::Precondition(format!("doubling needs even N, got {n}")));
            }
            let src = alpha_series(n / 2, 2 * k)?;
            Ok(alpha_doubling(&src, k)?.values.swap_remove(k))
        }
        AlphaMethod::Orbit => alpha_orbit_prime(n, k),
        AlphaMethod::Closed => alpha_closed(n, k),
        AlphaMethod::Integral => alpha_integral(n, k),
        AlphaMethod::Barnes => alpha_via_barnes(n, k),
    }
}
