//! Truncated power series `c_0 + c_1 z + … + c_T z^T` over a [`Ring`].
//!
//! Coefficients are stored plainly (ordinary generating function view). Use
//! [`TruncSeries::to_egf`] / [`TruncSeries::from_egf`] to move between
//! `Σ c_n z^n` and `Σ c_n z^n / n!`.

use crate::error::{Error, Result};
use crate::rational::{factorial_q, int, rat, Rational};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncSeries<R> {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        TruncSeries { coeffs }
    }

    pub fn zero(proto: &R, order: usize) -> Self {
        TruncSeries { coeffs: vec![proto.zero_like(); order + 1] }
    }

    pub fn one(proto: &R, order: usize) -> Self {
        let mut s = Self::zero(proto, order);
        s.coeffs[0] = proto.one_like();
        s
    }

    /// `c·z^n` truncated at `order`.
    pub fn monomial(c: R, n: usize, order: usize) -> Self {
        let mut s = Self::zero(&c, order);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn from_fn(proto: &R, order: usize, f: impl Fn(usize) -> R) -> Self {
        let _ = proto;
        TruncSeries { coeffs: (0..=order).map(f).collect() }
    }

    /// Embed a rational series into the ring of `proto`.
    pub fn from_rational(proto: &R, s: &TruncSeries<Rational>) -> Self {
        TruncSeries { coeffs: s.coeffs.iter().map(|c| proto.from_rational_like(c)).collect() }
    }

    /// `exp(c·z)`.
    pub fn exp_linear(c: &R, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = c.one_like();
        for n in 0..=order {
            coeffs.push(p.scale(&factorial_q(n).recip()));
            p = p.mul_ref(c);
        }
        TruncSeries { coeffs }
    }

    /// `sinh(c·z)`.
    pub fn sinh_linear(c: &R, order: usize) -> Self {
        let mut s = Self::exp_linear(c, order);
        for (n, v) in s.coeffs.iter_mut().enumerate() {
            if n % 2 == 0 {
                *v = c.zero_like();
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> R {
        self.coeffs.get(n).cloned().unwrap_or_else(|| self.coeffs[0].zero_like())
    }

    fn proto(&self) -> &R {
        &self.coeffs[0]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<R> = self.coeffs.iter().take(order + 1).cloned().collect();
        while coeffs.len() < order + 1 {
            coeffs.push(self.proto().zero_like());
        }
        TruncSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.proto().compatible(other.proto())?;
        let t = self.order().min(other.order());
        Ok(TruncSeries {
            coeffs: (0..=t).map(|n| self.coeffs[n].add_ref(&other.coeffs[n])).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.proto().compatible(other.proto())?;
        let t = self.order().min(other.order());
        Ok(TruncSeries {
            coeffs: (0..=t).map(|n| self.coeffs[n].sub_ref(&other.coeffs[n])).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(Ring::neg_ref).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect() }
    }

    pub fn mul_scalar(&self, c: &R) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect() }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.proto().compatible(other.proto())?;
        let t = self.order().min(other.order());
        let mut out = vec![self.proto().zero_like(); t + 1];
        for (i, a) in self.coeffs.iter().take(t + 1).enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(t + 1 - i).enumerate() {
                if !b.is_zero_elem() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Ok(TruncSeries { coeffs: out })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.proto(), self.order());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiply by `z^m`, keeping the order.
    pub fn shift_up(&self, m: usize) -> Self {
        let t = self.order();
        TruncSeries {
            coeffs: (0..=t)
                .map(|n| if n >= m { self.coeffs[n - m].clone() } else { self.proto().zero_like() })
                .collect(),
        }
    }

    /// Termwise derivative; the order drops by one (a constant stays constant 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(self.proto(), 0);
        }
        TruncSeries {
            coeffs: (1..=self.order()).map(|n| self.coeffs[n].scale(&int(n as i64))).collect(),
        }
    }

    /// `z·f'(z)` at the same order.
    pub fn euler_derivative(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().enumerate().map(|(n, c)| c.scale(&int(n as i64))).collect(),
        }
    }

    /// `exp(a)` for `a_0 = 0`, from `n b_n = Σ_{k=1}^{n} k a_k b_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero_elem() {
            return Err(Error::ConstantTerm { expected: "0" });
        }
        let t = self.order();
        let mut b = Vec::with_capacity(t + 1);
        b.push(self.proto().one_like());
        for n in 1..=t {
            let mut acc = self.proto().zero_like();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero_elem() {
                    acc = acc.add_ref(&a.mul_ref(&b[n - k]).scale(&int(k as i64)));
                }
            }
            b.push(acc.scale(&rat(1, n as i64)));
        }
        Ok(TruncSeries { coeffs: b })
    }

    /// `log(a)` for `a_0 = 1`, from `n a_n = Σ_{k=1}^{n} k b_k a_{n-k}`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one_elem() {
            return Err(Error::ConstantTerm { expected: "1" });
        }
        let t = self.order();
        let mut b = Vec::with_capacity(t + 1);
        b.push(self.proto().zero_like());
        for n in 1..=t {
            let mut acc = self.coeffs[n].scale(&int(n as i64));
            for k in 1..n {
                let a = &self.coeffs[n - k];
                if !a.is_zero_elem() && !b[k].is_zero_elem() {
                    acc = acc.sub_ref(&b[k].mul_ref(a).scale(&int(k as i64)));
                }
            }
            b.push(acc.scale(&rat(1, n as i64)));
        }
        Ok(TruncSeries { coeffs: b })
    }

    /// Keep only the coefficients with index `≡ p (mod q)`.
    pub fn multisect(&self, q: usize, p: usize) -> Self {
        assert!(q > 0, "multisection stride must be positive");
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| if n % q == p % q { c.clone() } else { c.zero_like() })
                .collect(),
        }
    }

    /// `(1/q) Σ_k ω^{-kp} f(ω^k z)` with ω a primitive q-th root in the ring.
    pub fn roots_average(&self, q: u64, p: i64) -> Result<Self> {
        let proto = self.proto();
        let mut acc = Self::zero(proto, self.order());
        for k in 0..q as i64 {
            let w = proto.root_of_unity_like(q, k)?;
            let twist = proto.root_of_unity_like(q, -k * p)?;
            acc = acc.add(&self.compose_scale(&w).mul_scalar(&twist))?;
        }
        Ok(acc.scale(&rat(1, q as i64)))
    }

    /// `f(c·z)`: coefficient n multiplied by `c^n`.
    pub fn compose_scale(&self, c: &R) -> Self {
        let mut p = c.one_like();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            coeffs.push(x.mul_ref(&p));
            p = p.mul_ref(c);
        }
        TruncSeries { coeffs }
    }

    /// Coefficients `c_n` reinterpreted as EGF data: returns `Σ n!·c_n z^n`.
    pub fn to_egf(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().enumerate().map(|(n, c)| c.scale(&factorial_q(n))).collect(),
        }
    }

    /// Inverse of [`to_egf`](Self::to_egf): divides coefficient n by n!.
    pub fn from_egf(&self) -> Self {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c.scale(&factorial_q(n).recip()))
                .collect(),
        }
    }

    /// Evaluate the truncated polynomial at a ring element.
    pub fn eval(&self, x: &R) -> R {
        let mut acc = self.proto().zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }
}

/// `z/(e^z - 1)` as a rational series.
pub fn bernoulli_egf(order: usize) -> TruncSeries<Rational> {
    let table = crate::bernoulli::bernoulli_numbers(order);
    TruncSeries::new(
        (0..=order)
            .map(|n| &table.values()[n] / factorial_q(n))
            .collect(),
    )
}

/// `(e^z - 1)/z` as a rational series.
pub fn exp_minus_one_over_z(order: usize) -> TruncSeries<Rational> {
    TruncSeries::new((0..=order).map(|n| factorial_q(n + 1).recip()).collect())
}
