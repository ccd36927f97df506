//! Exact arithmetic in the cyclotomic fields Q(ζ_M).
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(M)-1}` reduced modulo
//! the M-th cyclotomic polynomial, so two elements are equal exactly when their
//! coefficient vectors are equal. Operations never change the conductor on
//! their own; mixing conductors is an error and callers lift explicitly with
//! [`CyclotomicNumber::lift`].

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{big, int, parse_rational, to_f64, Rational};

/// Integer polynomial with coefficients from the constant term upward.
pub type IntPoly = Vec<BigInt>;

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic integer polynomial. Panics on a nonzero remainder.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> IntPoly {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

/// The M-th cyclotomic polynomial Φ_M, obtained by dividing `x^M - 1` by
/// `Φ_d` for every proper divisor `d` of `M`.
pub fn cyclotomic_polynomial(m: u64) -> IntPoly {
    assert!(m >= 1, "conductor must be positive");
    static MEMO: OnceLock<Mutex<HashMap<u64, IntPoly>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = memo.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    let mut den: IntPoly = vec![BigInt::one()];
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        den = poly_mul(&den, &cyclotomic_polynomial(d));
    }
    let phi = poly_div_exact(&num, &den);
    memo.lock().unwrap().insert(m, phi.clone());
    phi
}

pub fn euler_phi(m: u64) -> u64 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u64
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Field data for Q(ζ_M): the minimal polynomial and reduced powers of ζ.
#[derive(Debug)]
pub struct CyclotomicContext {
    conductor: u64,
    phi: usize,
    minpoly: IntPoly,
    powers: Vec<Vec<Rational>>,
}

impl CyclotomicContext {
    fn build(m: u64) -> Self {
        let minpoly = cyclotomic_polynomial(m);
        let phi = minpoly.len() - 1;
        let mut ctx = CyclotomicContext {
            conductor: m,
            phi,
            minpoly,
            powers: Vec::new(),
        };
        let mut powers = Vec::with_capacity(2 * m as usize);
        for k in 0..2 * m as usize {
            let mut v = vec![Rational::zero(); k.max(phi) + 1];
            v[k] = Rational::one();
            powers.push(ctx.reduce(v));
        }
        ctx.powers = powers;
        ctx
    }

    /// Shared context for conductor `m`; built once per process.
    pub fn get(m: u64) -> Arc<CyclotomicContext> {
        assert!(m >= 1, "conductor must be positive");
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicContext>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(ctx) = cache.lock().unwrap().get(&m) {
            return Arc::clone(ctx);
        }
        let ctx = Arc::new(Self::build(m));
        cache.lock().unwrap().entry(m).or_insert(ctx).clone()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    /// Reduce a polynomial in ζ (any length) modulo Φ_M.
    fn reduce(&self, mut p: Vec<Rational>) -> Vec<Rational> {
        let phi = self.phi;
        for d in (phi..p.len()).rev() {
            if p[d].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut p[d], Rational::zero());
            for i in 0..phi {
                if !self.minpoly[i].is_zero() {
                    p[d - phi + i] -= &c * big(self.minpoly[i].clone());
                }
            }
        }
        p.resize(phi, Rational::zero());
        p
    }

    fn power(&self, k: i64) -> &[Rational] {
        &self.powers[k.rem_euclid(self.conductor as i64) as usize]
    }
}

/// An element of Q(ζ_M) in the reduced power basis.
#[derive(Clone)]
pub struct CyclotomicNumber {
    ctx: Arc<CyclotomicContext>,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(ctx: &Arc<CyclotomicContext>) -> Self {
        CyclotomicNumber {
            ctx: Arc::clone(ctx),
            coeffs: vec![Rational::zero(); ctx.phi],
        }
    }

    pub fn one(ctx: &Arc<CyclotomicContext>) -> Self {
        Self::from_rational(ctx, Rational::one())
    }

    pub fn from_rational(ctx: &Arc<CyclotomicContext>, r: Rational) -> Self {
        let mut z = Self::zero(ctx);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(ctx: &Arc<CyclotomicContext>, n: i64) -> Self {
        Self::from_rational(ctx, int(n))
    }

    /// Element `Σ poly[k] ζ^k` for a polynomial of any length, reduced.
    pub fn from_poly(ctx: &Arc<CyclotomicContext>, poly: Vec<Rational>) -> Self {
        let mut poly = poly;
        if poly.len() < ctx.phi {
            poly.resize(ctx.phi, Rational::zero());
        }
        CyclotomicNumber {
            ctx: Arc::clone(ctx),
            coeffs: ctx.reduce(poly),
        }
    }

    /// ζ_M^k with `k` taken modulo M (negative exponents invert the root).
    pub fn root_of_unity(ctx: &Arc<CyclotomicContext>, k: i64) -> Self {
        CyclotomicNumber {
            ctx: Arc::clone(ctx),
            coeffs: ctx.power(k).to_vec(),
        }
    }

    /// The imaginary unit, available when 4 divides the conductor.
    pub fn imaginary_unit(ctx: &Arc<CyclotomicContext>) -> Result<Self> {
        let m = ctx.conductor;
        if !m.is_multiple_of(4) {
            return Err(Error::MissingRootOfUnity { q: 4 });
        }
        Ok(Self::root_of_unity(ctx, (m / 4) as i64))
    }

    pub fn conductor(&self) -> u64 {
        self.ctx.conductor
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in Q.
    pub fn to_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx.conductor != other.ctx.conductor {
            return Err(Error::ConductorMismatch {
                left: self.ctx.conductor,
                right: other.ctx.conductor,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CyclotomicNumber { ctx: Arc::clone(&self.ctx), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CyclotomicNumber { ctx: Arc::clone(&self.ctx), coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let phi = self.ctx.phi;
        let mut prod = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(CyclotomicNumber {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.ctx.reduce(prod),
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CyclotomicNumber {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiply by ζ^k; cheaper than a general product.
    pub fn mul_root(&self, k: i64) -> Self {
        let mut poly = vec![Rational::zero(); 2 * self.ctx.conductor as usize];
        let m = self.ctx.conductor as i64;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[(i as i64 + k).rem_euclid(m) as usize] += c;
            }
        }
        Self::from_poly(&self.ctx, poly)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Complex conjugation, the automorphism ζ ↦ ζ^{M-1}.
    pub fn conjugate(&self) -> Self {
        let phi = self.ctx.phi;
        let mut out = vec![Rational::zero(); phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(self.ctx.power(-(k as i64))) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        CyclotomicNumber { ctx: Arc::clone(&self.ctx), coeffs: out }
    }

    /// Image under ζ_M ↦ ζ_{M2}^{M2/M}.
    pub fn lift(&self, m2: u64) -> Result<Self> {
        let m = self.ctx.conductor;
        if m2 == 0 || !m2.is_multiple_of(m) {
            return Err(Error::NotDivisible { from: m, to: m2 });
        }
        if m2 == m {
            return Ok(self.clone());
        }
        let target = CyclotomicContext::get(m2);
        let step = (m2 / m) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Ok(Self::from_poly(&target, poly))
    }

    /// Self is real iff it equals its conjugate.
    pub fn is_real(&self) -> bool {
        *self == self.conjugate()
    }

    /// Real part as an element of the same field, `(z + z̄)/2`.
    pub fn real_part(&self) -> Self {
        (self + &self.conjugate()).scale(&Rational::new(1.into(), 2.into()))
    }

    /// `(z - z̄)/2`, i.e. `i·Im(z)`.
    pub fn imaginary_component(&self) -> Self {
        (self - &self.conjugate()).scale(&Rational::new(1.into(), 2.into()))
    }

    /// `|z|^2 = z·z̄`, exact.
    pub fn norm_sqr(&self) -> Self {
        self * &self.conjugate()
    }

    pub fn embed(&self) -> Result<Complex64> {
        let m = self.ctx.conductor as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = to_f64(c).ok_or(Error::NonFinite { index: k })?;
            let theta = 2.0 * std::f64::consts::PI * k as f64 / m;
            acc += Complex64::new(theta.cos(), theta.sin()) * v;
        }
        Ok(acc)
    }

    /// Float embedding for display paths that cannot fail on modest values.
    pub fn to_complex(&self) -> Complex64 {
        self.embed().unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }
}

/// Nonzero integer `m` with `z = w + m`, if one exists.
///
/// Realness is tested as `d = conj(d)` for `d = z - w`; integrality by
/// requiring every non-constant coefficient of `d + conj(d)` to vanish and
/// the constant to be an even integer.
pub fn horizontal_integer_gap(z: &CyclotomicNumber, w: &CyclotomicNumber) -> Result<Option<BigInt>> {
    let d = z.try_sub(w)?;
    let conj = d.conjugate();
    if d != conj {
        return Ok(None);
    }
    let twice = &d + &conj;
    let Some(c) = twice.to_rational() else {
        return Ok(None);
    };
    if !c.denom().is_one() || c.numer().is_odd() || c.is_zero() {
        return Ok(None);
    }
    Ok(Some(c.numer() / 2))
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.conductor == other.ctx.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicNumber {}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.ctx.conductor;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z{m}")?;
                    } else {
                        write!(f, "z{m}^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z{})[{}]", self.ctx.conductor, self)
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    conductor: u64,
    coeffs: Vec<String>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicRepr {
            conductor: self.ctx.conductor,
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CyclotomicRepr::deserialize(d)?;
        if repr.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let ctx = CyclotomicContext::get(repr.conductor);
        if repr.coeffs.len() != ctx.phi {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for conductor {}, got {}",
                ctx.phi,
                repr.conductor,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(CyclotomicNumber { ctx, coeffs })
    }
}

/// `2cos(2πk/M) = ζ^k + ζ^{-k}`, a frequent building block for real radicals.
pub fn two_cos(ctx: &Arc<CyclotomicContext>, k: i64) -> CyclotomicNumber {
    &CyclotomicNumber::root_of_unity(ctx, k) + &CyclotomicNumber::root_of_unity(ctx, -k)
}

/// Parse a sum of products such as `1/3`, `zeta(24,1)`, `1+i`,
/// `3/2*sqrt2 - i`. Factors are rationals, `i`, `sqrt2` and `zeta(m,k)`;
/// the result lives in the smallest field holding every factor.
pub fn parse_cyclotomic(text: &str) -> Result<CyclotomicNumber> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty cyclotomic literal".into()));
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    let mut negative = false;
    for ch in compact.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            _ => {}
        }
        if depth == 0 && (ch == '+' || ch == '-') && !current.is_empty() && !current.ends_with('*') {
            terms.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
            continue;
        }
        if depth == 0 && current.is_empty() && (ch == '+' || ch == '-') {
            negative ^= ch == '-';
            continue;
        }
        current.push(ch);
    }
    terms.push((negative, current));
    let mut parts = Vec::new();
    for (neg, term) in terms {
        let mut factors = Vec::new();
        for f in term.split('*') {
            factors.push(parse_factor(f, &compact)?);
        }
        let m = factors.iter().fold(1, |m, f| lcm(m, f.conductor()));
        let ctx = CyclotomicContext::get(m);
        let mut prod = CyclotomicNumber::one(&ctx);
        for f in factors {
            prod = &prod * &f.lift(m)?;
        }
        parts.push(if neg { -&prod } else { prod });
    }
    let m = parts.iter().fold(1, |m, t| lcm(m, t.conductor()));
    let mut acc = CyclotomicNumber::zero(&CyclotomicContext::get(m));
    for t in parts {
        acc = &acc + &t.lift(m)?;
    }
    Ok(acc)
}

fn parse_factor(f: &str, whole: &str) -> Result<CyclotomicNumber> {
    let bad = || Error::Parse(format!("cannot parse {whole:?}"));
    match f {
        "" => Err(bad()),
        "i" => Ok(CyclotomicNumber::root_of_unity(&CyclotomicContext::get(4), 1)),
        "sqrt2" => {
            let ctx = CyclotomicContext::get(8);
            Ok(&CyclotomicNumber::root_of_unity(&ctx, 1) + &CyclotomicNumber::root_of_unity(&ctx, 7))
        }
        _ if f.starts_with("zeta(") && f.ends_with(')') => {
            let (m, k) = f[5..f.len() - 1].split_once(',').ok_or_else(bad)?;
            let m: u64 = m.parse().map_err(|_| bad())?;
            let k: i64 = k.parse().map_err(|_| bad())?;
            if m == 0 {
                return Err(bad());
            }
            Ok(CyclotomicNumber::root_of_unity(&CyclotomicContext::get(m), k))
        }
        _ => Ok(CyclotomicNumber::from_rational(&CyclotomicContext::get(1), parse_rational(f)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ints(v: &[i64]) -> IntPoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(7), ints(&[1; 7]));
        assert_eq!(cyclotomic_polynomial(14), ints(&[1, -1, 1, -1, 1, -1, 1]));
    }

    #[test]
    fn context_invariants() {
        for m in 1..=30 {
            let ctx = CyclotomicContext::get(m);
            assert_eq!(ctx.degree() as u64, euler_phi(m));
            // Φ_M | x^M - 1
            let mut xm = vec![BigInt::zero(); m as usize + 1];
            xm[0] = BigInt::from(-1);
            xm[m as usize] = BigInt::one();
            let _ = poly_div_exact(&xm, ctx.minpoly());
            assert!(CyclotomicNumber::root_of_unity(&ctx, m as i64).is_one());
        }
    }

    #[test]
    fn roots_of_unity() {
        let c4 = CyclotomicContext::get(4);
        let i = CyclotomicNumber::root_of_unity(&c4, 1);
        assert_eq!(i.coeffs(), &[int(0), int(1)]);
        let c12 = CyclotomicContext::get(12);
        assert_eq!(CyclotomicNumber::root_of_unity(&c12, 6), CyclotomicNumber::from_int(&c12, -1));
        let c8 = CyclotomicContext::get(8);
        let sqrt2 = two_cos(&c8, 1);
        let e = sqrt2.embed().unwrap();
        assert!((e.re - 2f64.sqrt()).abs() < 1e-14 && e.im.abs() < 1e-14);
    }

    #[test]
    fn field_operation_examples() {
        let c8 = CyclotomicContext::get(8);
        let z = CyclotomicNumber::root_of_unity(&c8, 1);
        assert_eq!(z.conjugate(), CyclotomicNumber::root_of_unity(&c8, 7));
        let c12 = CyclotomicContext::get(12);
        let s = two_cos(&c12, 1);
        assert_eq!(&s * &s, CyclotomicNumber::from_int(&c12, 3));
        let z7 = CyclotomicNumber::root_of_unity(&c12, 7);
        assert_eq!(&z7 * &z7, CyclotomicNumber::root_of_unity(&c12, 2));
        assert_eq!(z7.pow(12), CyclotomicNumber::one(&c12));
        assert_eq!(z7.mul_root(5), CyclotomicNumber::one(&c12));
    }

    #[test]
    fn conductor_mismatch_is_an_error() {
        let a = CyclotomicNumber::one(&CyclotomicContext::get(8));
        let b = CyclotomicNumber::one(&CyclotomicContext::get(12));
        assert!(matches!(a.try_add(&b), Err(Error::ConductorMismatch { left: 8, right: 12 })));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn lifting() {
        let c4 = CyclotomicContext::get(4);
        let i = CyclotomicNumber::root_of_unity(&c4, 1);
        let c12 = CyclotomicContext::get(12);
        assert_eq!(i.lift(12).unwrap(), CyclotomicNumber::root_of_unity(&c12, 3));
        let half = CyclotomicNumber::from_rational(&c4, rat(1, 2));
        assert_eq!(half.lift(20).unwrap().to_rational(), Some(rat(1, 2)));
        let sqrt2 = two_cos(&CyclotomicContext::get(8), 1);
        let c24 = CyclotomicContext::get(24);
        let want = &CyclotomicNumber::root_of_unity(&c24, 3) + &CyclotomicNumber::root_of_unity(&c24, 21);
        assert_eq!(sqrt2.lift(24).unwrap(), want);
        assert!(matches!(i.lift(6), Err(Error::NotDivisible { from: 4, to: 6 })));
    }

    #[test]
    fn integer_gaps() {
        let c4 = CyclotomicContext::get(4);
        let i = CyclotomicNumber::root_of_unity(&c4, 1);
        let one = CyclotomicNumber::one(&c4);
        let z = &one + &i;
        let w = &i - &one;
        assert_eq!(horizontal_integer_gap(&z, &w).unwrap(), Some(BigInt::from(2)));
        assert_eq!(horizontal_integer_gap(&z, &i).unwrap(), Some(BigInt::from(1)));
        assert_eq!(horizontal_integer_gap(&z, &z).unwrap(), None);
        let c8 = CyclotomicContext::get(8);
        let sqrt2 = two_cos(&c8, 1);
        assert_eq!(horizontal_integer_gap(&sqrt2, &CyclotomicNumber::zero(&c8)).unwrap(), None);
        let half = CyclotomicNumber::from_rational(&c4, rat(1, 2));
        assert_eq!(horizontal_integer_gap(&half, &CyclotomicNumber::zero(&c4)).unwrap(), None);
    }

    #[test]
    fn embeddings() {
        let c12 = CyclotomicContext::get(12);
        let e = CyclotomicNumber::root_of_unity(&c12, 1).embed().unwrap();
        assert!((e.re - 0.866_025_403_784_438_6).abs() < 1e-14);
        assert!((e.im - 0.5).abs() < 1e-14);
        let e = CyclotomicNumber::root_of_unity(&CyclotomicContext::get(4), 1).embed().unwrap();
        assert!(e.re.abs() < 1e-15 && (e.im - 1.0).abs() < 1e-15);
    }

    #[test]
    fn serde_round_trip() {
        let c12 = CyclotomicContext::get(12);
        let z = &CyclotomicNumber::root_of_unity(&c12, 5).scale(&rat(-3, 7)) + &CyclotomicNumber::from_int(&c12, 2);
        let s = serde_json::to_string(&z).unwrap();
        assert!(s.contains("\"conductor\":12"));
        let back: CyclotomicNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
        assert!(serde_json::from_str::<CyclotomicNumber>(r#"{"conductor":12,"coeffs":["1"]}"#).is_err());
    }

    #[test]
    fn display() {
        let c4 = CyclotomicContext::get(4);
        let z = &CyclotomicNumber::from_rational(&c4, rat(-5, 6)) - &CyclotomicNumber::root_of_unity(&c4, 1);
        assert_eq!(z.to_string(), "-5/6 - z4");
        assert_eq!(CyclotomicNumber::zero(&c4).to_string(), "0");
    }

    #[test]
    fn literal_parsing() {
        let ctx4 = CyclotomicContext::get(4);
        let i = CyclotomicNumber::root_of_unity(&ctx4, 1);
        assert_eq!(parse_cyclotomic("1+i").unwrap(), &CyclotomicNumber::one(&ctx4) + &i);
        assert_eq!(parse_cyclotomic("-1/3").unwrap().to_rational(), Some(crate::rational::rat(-1, 3)));
        let s = parse_cyclotomic("sqrt2").unwrap();
        assert_eq!(s.pow(2).to_rational(), Some(int(2)));
        let t = parse_cyclotomic("3/2*sqrt2 - zeta(8,2)").unwrap();
        assert_eq!(t.conductor(), 8);
        assert_eq!(parse_cyclotomic("zeta(3,-1)").unwrap().pow(3).to_rational(), Some(int(1)));
        for bad in ["", "zeta(0,1)", "1/0", "x", "2**i"] {
            assert!(parse_cyclotomic(bad).is_err(), "{bad}");
        }
    }
}
