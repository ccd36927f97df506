//! Coefficient rings for truncated series.
//!
//! The trait uses value-producing methods on references so that big-number
//! coefficients are never moved or copied implicitly. Elements carry their own
//! ring data (a cyclotomic context), hence the `*_like` constructors.

use std::fmt::Debug;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::cyclotomic::{CyclotomicContext, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, r: &Rational) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn is_one_elem(&self) -> bool;
    /// `ζ_q^k` inside the ring of `self`, if the ring contains the q-th roots.
    fn root_of_unity_like(&self, q: u64, k: i64) -> Result<Self>;
    /// Error unless both elements live in the same ring.
    fn compatible(&self, other: &Self) -> Result<()>;

    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn is_one_elem(&self) -> bool {
        self.is_one()
    }
    fn root_of_unity_like(&self, q: u64, k: i64) -> Result<Self> {
        match q {
            1 => Ok(Rational::one()),
            2 => Ok(Rational::from_integer(if k.rem_euclid(2) == 0 { 1 } else { -1 }.into())),
            _ => Err(Error::MissingRootOfUnity { q }),
        }
    }
    fn compatible(&self, _: &Self) -> Result<()> {
        Ok(())
    }
}

impl Ring for CyclotomicNumber {
    fn zero_like(&self) -> Self {
        CyclotomicNumber::zero(self.context())
    }
    fn one_like(&self) -> Self {
        CyclotomicNumber::one(self.context())
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        CyclotomicNumber::from_rational(self.context(), r.clone())
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        CyclotomicNumber::scale(self, r)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn is_one_elem(&self) -> bool {
        self.is_one()
    }
    fn root_of_unity_like(&self, q: u64, k: i64) -> Result<Self> {
        let m = self.conductor();
        if q == 0 || !m.is_multiple_of(q) {
            return Err(Error::MissingRootOfUnity { q });
        }
        Ok(CyclotomicNumber::root_of_unity(self.context(), k * (m / q) as i64))
    }
    fn compatible(&self, other: &Self) -> Result<()> {
        if self.conductor() != other.conductor() {
            return Err(Error::ConductorMismatch {
                left: self.conductor(),
                right: other.conductor(),
            });
        }
        Ok(())
    }
}

impl Ring for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        Complex64::new(to_f64(r).unwrap_or(f64::NAN), 0.0)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * to_f64(r).unwrap_or(f64::NAN)
    }
    fn is_zero_elem(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn is_one_elem(&self) -> bool {
        self.re == 1.0 && self.im == 0.0
    }
    fn root_of_unity_like(&self, q: u64, k: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::MissingRootOfUnity { q });
        }
        let theta = 2.0 * std::f64::consts::PI * (k.rem_euclid(q as i64) as f64) / q as f64;
        Ok(Complex64::from_polar(1.0, theta))
    }
    fn compatible(&self, _: &Self) -> Result<()> {
        Ok(())
    }
}

/// Shared context helper used by callers that build cyclotomic series.
pub fn cyclotomic_one(m: u64) -> CyclotomicNumber {
    CyclotomicNumber::one(&CyclotomicContext::get(m))
}
