//! Arbitrary-precision rationals and cached combinatorial constants.
//!
//! `Rational` is `num_rational::BigRational`: always reduced, positive
//! denominator, zero is `0/1`. The factorial cache is append-only and shared
//! across threads.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `n/d`, reduced. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^k` as a small integer.
pub fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn pow2(e: i64) -> Rational {
    let two = int(2);
    if e >= 0 {
        num_traits::pow(two, e as usize)
    } else {
        num_traits::pow(two, (-e) as usize).recip()
    }
}

fn factorial_cache() -> &'static RwLock<Vec<BigInt>> {
    static CACHE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

/// `n!` from the shared cache, extending it when needed.
pub fn factorial(n: usize) -> BigInt {
    {
        let cache = factorial_cache().read().expect("factorial cache poisoned");
        if let Some(v) = cache.get(n) {
            return v.clone();
        }
    }
    let mut cache = factorial_cache().write().expect("factorial cache poisoned");
    while cache.len() <= n {
        let next = cache.last().unwrap() * BigInt::from(cache.len());
        cache.push(next);
    }
    cache[n].clone()
}

pub fn factorial_q(n: usize) -> Rational {
    big(factorial(n))
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let (n, k) = (n as usize, k as usize);
    factorial(n) / (factorial(k) * factorial(n - k))
}

pub fn binomial_q(n: i64, k: i64) -> Rational {
    big(binomial(n, k))
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s}")));
            }
            Rational::new(n, d)
        }
        None => big(s.parse().map_err(|_| Error::Parse(s.to_string()))?),
    };
    Ok(parsed)
}

/// Lossy conversion; `None` when the value overflows a double.
pub fn to_f64(r: &Rational) -> Option<f64> {
    let v = r.to_f64()?;
    if v.is_finite() {
        return Some(v);
    }
    // num-rational overflows on large numerator/denominator pairs even when
    // the quotient is moderate; fall back to scaled integer division.
    let n = r.numer();
    let d = r.denom();
    let shift = n.bits().max(d.bits()).saturating_sub(1000) as usize;
    let v = (n.abs() >> shift).to_f64()? / (d >> shift).to_f64()?;
    let v = if n.is_negative() { -v } else { v };
    v.is_finite().then_some(v)
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}
