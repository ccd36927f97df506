//! Bernoulli numbers and their polynomial relatives.
//!
//! [`bernoulli_numbers`] is the ground truth: it uses only the recurrence
//! `Σ_{k=0}^{n} C(n+1,k) B_k = 0`. Every lacunary formula in this crate is
//! checked against that table and never against itself.

use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::alpha::a_sequence;
use crate::error::{Error, Result};
use crate::rational::{binomial_q, factorial_q, int, sign, Rational};
use crate::ring::Ring;
use crate::series::{exp_minus_one_over_z, TruncSeries};

/// Exact `B_0..=B_nmax` with `B_1 = -1/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    pub fn nmax(&self) -> usize {
        self.values.len() - 1
    }
}

fn shared_table() -> &'static RwLock<Vec<Rational>> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

fn extend(values: &mut Vec<Rational>, nmax: usize) {
    while values.len() <= nmax {
        let n = values.len();
        if n >= 3 && n % 2 == 1 {
            values.push(Rational::zero());
            continue;
        }
        let mut acc = Rational::zero();
        for (k, b) in values.iter().enumerate() {
            if !b.is_zero() {
                acc += binomial_q(n as i64 + 1, k as i64) * b;
            }
        }
        values.push(-acc / int(n as i64 + 1));
    }
}

/// Oracle table from the defining recurrence. Shares a process-wide cache.
pub fn bernoulli_numbers(nmax: usize) -> BernoulliTable {
    {
        let t = shared_table().read().expect("bernoulli cache poisoned");
        if t.len() > nmax {
            return BernoulliTable { values: t[..=nmax].to_vec() };
        }
    }
    let mut t = shared_table().write().expect("bernoulli cache poisoned");
    extend(&mut t, nmax);
    BernoulliTable { values: t[..=nmax].to_vec() }
}

/// Single oracle value `B_n`.
pub fn bernoulli(n: usize) -> Rational {
    {
        let t = shared_table().read().expect("bernoulli cache poisoned");
        if let Some(v) = t.get(n) {
            return v.clone();
        }
    }
    bernoulli_numbers(n).values[n].clone()
}

/// `B_n(x) = Σ C(n,k) B_k x^{n-k}`.
pub fn bernoulli_poly<R: Ring>(n: usize, x: &R) -> R {
    let table = bernoulli_numbers(n);
    // Horner from x^n down; the coefficient of x^{n-j} is C(n,j) B_j.
    let mut acc = x.zero_like();
    for j in 0..=n {
        let c = binomial_q(n as i64, j as i64) * &table.values[j];
        acc = acc.mul_ref(x).add_ref(&x.from_rational_like(&c));
    }
    acc
}

/// Rational series of `(t/(e^t-1))^a` through `t^order`.
fn norlund_kernel(a: i64, order: usize) -> TruncSeries<Rational> {
    let zero = Rational::zero();
    if a == 0 {
        return TruncSeries::one(&zero, order);
    }
    let base = if a > 0 {
        crate::series::bernoulli_egf(order)
    } else {
        exp_minus_one_over_z(order)
    };
    base.pow(a.unsigned_abs() as u32).expect("rational series never mismatch")
}

/// Nörlund polynomial `B_n^{(a)}(x) = n!·[t^n] (t/(e^t-1))^a e^{xt}` for any integer `a`.
pub fn norlund_poly<R: Ring>(n: usize, a: i64, x: &R) -> R {
    let kernel = norlund_kernel(a, n);
    // n! Σ_j kernel_j x^{n-j}/(n-j)!
    let mut acc = x.zero_like();
    for j in 0..=n {
        let c = kernel.coeff(j) * factorial_q(n) / factorial_q(n - j);
        acc = acc.mul_ref(x).add_ref(&x.from_rational_like(&c));
    }
    acc
}

/// Bernoulli–Barnes polynomial of negative order,
/// `n!·[z^n] e^{zx} ∏_k (e^{α_k z}-1)/(α_k z)`.
pub fn barnes_poly<R: Ring>(n: usize, x: &R, alphas: &[R]) -> Result<R> {
    if let Some(i) = alphas.iter().position(Ring::is_zero_elem) {
        return Err(Error::ZeroParameter(i));
    }
    for a in alphas {
        x.compatible(a)?;
    }
    let base = TruncSeries::from_rational(x, &exp_minus_one_over_z(n));
    let mut acc = TruncSeries::exp_linear(x, n);
    for a in alphas {
        acc = acc.mul(&base.compose_scale(a))?;
    }
    Ok(acc.coeff(n).scale(&factorial_q(n)))
}

/// Complete Bell polynomial `B_n(x_1..x_n)` via
/// `B_{m+1} = Σ_{k=0}^{m} C(m,k) B_{m-k} x_{k+1}`.
pub fn bell_complete<R: Ring>(n: usize, xs: &[R]) -> Result<R> {
    if xs.len() < n {
        return Err(Error::InsufficientTable { needed: n, available: xs.len() });
    }
    let Some(proto) = xs.first() else {
        // n == 0 with no data: B_0 = 1 in an unknown ring is not representable
        return Err(Error::InsufficientTable { needed: 1, available: 0 });
    };
    let mut b: Vec<R> = vec![proto.one_like()];
    for m in 0..n {
        let mut acc = proto.zero_like();
        for k in 0..=m {
            let term = b[m - k].mul_ref(&xs[k]).scale(&binomial_q(m as i64, k as i64));
            acc = acc.add_ref(&term);
        }
        b.push(acc);
    }
    Ok(b.swap_remove(n))
}

/// `B_0, B_12, …, B_{12·nmax}` from the 12-gap identity alone, seeded by `B_0 = 1`.
///
/// The identity at level n reads
/// `6 Σ_k (-1)^k a_{6k+3}/(12k+6)! · B_{12n-12k}/(12n-12k)! = (-1)^n a_{6n+3}/(12n+5)!`;
/// the `k = 0` term carries `B_{12n}` and the rest is already known.
pub fn lacunary_bernoulli12(nmax: usize) -> Vec<Rational> {
    let a: Vec<Rational> = (0..=nmax)
        .map(|k| a_sequence(6, 6 * k as u64 + 3).expect("N = 6 is tabulated"))
        .collect();
    let mut out = vec![Rational::one()];
    for n in 1..=nmax {
        let mut known = Rational::zero();
        for k in 1..=n {
            known += int(sign(k as i64)) * &a[k] / factorial_q(12 * k + 6) * &out[n - k]
                / factorial_q(12 * (n - k));
        }
        let rhs = int(sign(n as i64)) * &a[n] / factorial_q(12 * n + 5) / int(6);
        let lead = &a[0] / factorial_q(6);
        out.push((rhs - known) / lead * factorial_q(12 * n));
    }
    out
}

/// `Σ_{k=0}^{n} C(6n+3, 6k) B_{6k}`; equals `2n+1`.
pub fn lehmer_sum(n: usize) -> Rational {
    let table = bernoulli_numbers(6 * n);
    (0..=n)
        .map(|k| binomial_q(6 * n as i64 + 3, 6 * k as i64) * &table.values[6 * k])
        .fold(Rational::zero(), |s, t| s + t)
}
