//! Falling-factorial products, real and Gaussian binomials, and their
//! monotone inverses.
//!
//! Counting paths use exact big integers ([`binomial`], [`gaussian_binom_exact`]).
//! The real parameter `t` of a Lovász-style bound is inherently real, so the
//! inversions work in `f64` and bisect down to machine precision unless a
//! coarser tolerance is requested.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default absolute tolerance on `t` for the inversions.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Upper limit on bisection steps; f64 brackets stall long before this.
const MAX_BISECTION_STEPS: usize = 4096;

/// The nondecreasing sequence `c_1 <= ... <= c_{d-1}` of a forbidding system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CVector(Vec<u64>);

impl CVector {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::invalid(format!(
                "c-vector {entries:?} is not nondecreasing"
            )));
        }
        Ok(CVector(entries))
    }

    /// `(1, 2, ..., d-1)`, the c-vector of the repeated-element system.
    pub fn repeats(d: usize) -> Self {
        CVector((1..d as u64).collect())
    }

    /// `(q-1, q^2-1, ..., q^{d-1}-1)`, the c-vector of linear dependence over `F_q`.
    pub fn qlinear(q: u64, d: usize) -> Self {
        CVector((1..d as u32).map(|k| q.pow(k) - 1).collect())
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `c_{d-1}`, or 0 for the empty vector.
    pub fn last(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }

    /// `c_k` with the convention `c_0 = 0`.
    pub fn get(&self, k: usize) -> u64 {
        if k == 0 {
            0
        } else {
            self.0[k - 1]
        }
    }

    pub fn without_last(&self) -> CVector {
        let mut v = self.0.clone();
        v.pop();
        CVector(v)
    }
}

/// A solved real parameter together with the achieved bracket width.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealParam {
    pub t: f64,
    pub tolerance: f64,
}

/// `t (t - c_1) ... (t - c_{d-1})`.
pub fn product_falling(t: f64, c: &CVector) -> f64 {
    c.entries().iter().fold(t, |acc, &ci| acc * (t - ci as f64))
}

/// `t (t-1) ... (t-d+1) / d!` for real `t >= d - 1`.
pub fn binom_real(t: f64, d: usize) -> Result<f64> {
    if t < d as f64 - 1.0 {
        return Err(Error::domain(format!(
            "binom_real needs t >= d - 1, got t = {t}, d = {d}"
        )));
    }
    Ok((0..d).fold(1.0, |acc, i| acc * (t - i as f64) / (i as f64 + 1.0)))
}

/// The Gaussian binomial `[t, d]_q` with `q^t` taken as a real power.
///
/// Integer `t` is evaluated exactly and then converted.
pub fn gaussian_binom(t: f64, d: usize, q: u64) -> Result<f64> {
    if q < 2 {
        return Err(Error::domain(format!("gaussian_binom needs q >= 2, got {q}")));
    }
    if t < d as f64 {
        return Err(Error::domain(format!(
            "gaussian_binom needs t >= d, got t = {t}, d = {d}"
        )));
    }
    if t.fract() == 0.0 && t <= 4096.0 {
        let exact = gaussian_binom_exact(t as u64, d as u64, q);
        return Ok(exact.to_f64().unwrap_or(f64::INFINITY));
    }
    let qf = q as f64;
    let qt = qf.powf(t);
    let qd = qf.powi(d as i32);
    Ok((0..d).fold(1.0, |acc, i| {
        let qi = qf.powi(i as i32);
        acc * (qt - qi) / (qd - qi)
    }))
}

/// Solves `product_falling(t, c) = target` for `t >= c_{d-1}`.
pub fn invert_product(target: f64, c: &CVector, tol: f64) -> Result<RealParam> {
    if !(target >= 0.0) || !target.is_finite() {
        return Err(Error::domain(format!(
            "invert_product needs a finite target >= 0, got {target}"
        )));
    }
    let lo = c.last() as f64;
    let hi = lo + 1.0 + target;
    Ok(bisect_increasing(|t| product_falling(t, c), lo, hi, target, tol))
}

/// Solves `binom_real(t, d) = target` for `t >= d - 1`.
pub fn invert_binom(target: f64, d: usize, tol: f64) -> Result<RealParam> {
    if d == 0 {
        return Err(Error::domain("invert_binom needs d >= 1"));
    }
    let scale: f64 = (1..=d).map(|i| i as f64).product();
    let c = CVector::repeats(d);
    let target = target * scale;
    if !(target >= 0.0) || !target.is_finite() {
        return Err(Error::domain(format!(
            "invert_binom needs a finite target >= 0, got {target}"
        )));
    }
    let lo = c.last() as f64;
    Ok(bisect_increasing(
        |t| product_falling(t, &c),
        lo,
        lo + 1.0 + target,
        target,
        tol,
    ))
}

/// Solves `gaussian_binom(t, d, q) = target` for `t >= d`.
pub fn invert_gaussian(target: f64, d: usize, q: u64, tol: f64) -> Result<RealParam> {
    if d == 0 {
        return Err(Error::domain("invert_gaussian needs d >= 1"));
    }
    if q < 2 {
        return Err(Error::domain(format!("invert_gaussian needs q >= 2, got {q}")));
    }
    if !(target >= 1.0) || !target.is_finite() {
        return Err(Error::domain(format!(
            "invert_gaussian needs a finite target >= 1, got {target}"
        )));
    }
    let f = |t: f64| gaussian_binom(t, d, q).unwrap_or(f64::INFINITY);
    let lo = d as f64;
    let mut hi = lo + 1.0;
    while f(hi) < target {
        hi = lo + 2.0 * (hi - lo);
    }
    Ok(bisect_increasing(f, lo, hi, target, tol))
}

/// Bisection for an increasing `f` with `f(lo) <= target <= f(hi)`.
///
/// Stops when the bracket is narrower than `tol` or stops shrinking in f64.
/// A nearby integer that hits the target exactly is returned as is.
fn bisect_increasing(f: impl Fn(f64) -> f64, lo: f64, hi: f64, target: f64, tol: f64) -> RealParam {
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..MAX_BISECTION_STEPS {
        if hi - lo <= tol {
            break;
        }
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = lo + (hi - lo) / 2.0;
    let rounded = t.round();
    if rounded >= lo.floor() && (f(rounded) - target).abs() <= 1e-12 * target.abs().max(1.0) {
        return RealParam {
            t: rounded,
            tolerance: hi - lo,
        };
    }
    RealParam {
        t,
        tolerance: hi - lo,
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // Each partial product is itself a binomial, so the division is exact.
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Number of `d`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binom_exact(n: u64, d: u64, q: u64) -> BigUint {
    if d > n {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let qn = q.pow(n as u32);
    let qd = q.pow(d as u32);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..d as u32 {
        let qi = q.pow(i);
        num *= &qn - &qi;
        den *= &qd - &qi;
    }
    num / den
}
