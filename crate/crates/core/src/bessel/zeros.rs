use super::{bessel_j, bessel_j_prime, Order};
use crate::error::{Error, Result};
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Absolute residual every stored zero must satisfy.
pub const ZERO_RESIDUAL_TOL: f64 = 1e-10;

const BRACKET_HALF_WIDTH: f64 = 0.3;
const SCAN_STEP: f64 = 0.05;

/// The first positive zeros of J_α, with the cached normalisers |J_{α+1}(s_n)|.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ZeroTable {
    order: Order,
    zeros: Vec<f64>,
    normalizers: Vec<f64>,
    zeta: f64,
}

impl ZeroTable {
    pub fn order(&self) -> Order {
        self.order
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    /// s_n for 1-based `n`.
    pub fn zero(&self, n: usize) -> Result<f64> {
        self.check(n)?;
        Ok(self.zeros[n - 1])
    }

    /// |J_{α+1}(s_n)| for 1-based `n`.
    pub fn normalizer(&self, n: usize) -> Result<f64> {
        self.check(n)?;
        Ok(self.normalizers[n - 1])
    }

    pub fn normalizers(&self) -> &[f64] {
        &self.normalizers
    }

    /// Half the minimum gap over the whole table (+∞ for a single zero).
    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    /// Half the minimum gap among the first `m` zeros (+∞ when `m < 2`).
    pub fn zeta_upto(&self, m: usize) -> Result<f64> {
        if m > self.len() {
            return Err(Error::IndexOutOfRange { index: m, len: self.len() });
        }
        Ok(half_min_gap(&self.zeros[..m]))
    }

    /// |J_α(s_n)| for every stored zero.
    pub fn residuals(&self) -> Vec<f64> {
        let nu = self.order.alpha();
        self.zeros.iter().map(|&s| bessel_j(nu, s).abs()).collect()
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.zeros.len() {
            return Err(Error::IndexOutOfRange { index: n, len: self.zeros.len() });
        }
        Ok(())
    }
}

fn half_min_gap(zeros: &[f64]) -> f64 {
    0.5 * zeros
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}

/// McMahon expansion for the n-th zero, seeded by β = (n + α/2 − 1/4)π,
/// i.e. the leading term πn + π/2(α − 1/2).
pub fn mcmahon_guess(order: Order, n: usize) -> f64 {
    let nu = order.alpha();
    let beta = (n as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 * b8 * b8)
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * libm::pow(b8, 5.0))
}

/// Compute the first `count` positive zeros of J_α.
///
/// Each zero is polished by Newton's method inside a sign-change bracket,
/// falling back to bisection whenever a Newton step leaves the bracket.
pub fn find_zeros(order: Order, count: usize) -> Result<ZeroTable> {
    if count == 0 {
        return Err(Error::domain("find_zeros", "count must be >= 1"));
    }
    let nu = order.alpha();
    let f = |x: f64| bessel_j(nu, x);
    let mut zeros: Vec<f64> = Vec::with_capacity(count);
    for n in 1..=count {
        let floor = match zeros.last() {
            Some(&prev) => prev + 1.0,
            // j_{ν,1} > ν and j_{ν,1} > π/2 - small for ν ≥ -1/2
            None => 1e-3_f64.max(nu),
        };
        let guess = mcmahon_guess(order, n);
        let (a, b) = bracket(&f, guess, floor).ok_or(Error::ZeroBracket { order: nu, index: n })?;
        let s = polish(nu, a, b, guess);
        let residual = f(s).abs();
        if !(residual < ZERO_RESIDUAL_TOL) {
            return Err(Error::ZeroResidual { order: nu, index: n, residual });
        }
        zeros.push(s);
    }
    let normalizers = zeros.iter().map(|&s| bessel_j(nu + 1.0, s).abs()).collect();
    let zeta = half_min_gap(&zeros);
    Ok(ZeroTable { order, zeros, normalizers, zeta })
}

fn bracket(f: &impl Fn(f64) -> f64, guess: f64, floor: f64) -> Option<(f64, f64)> {
    let a = (guess - BRACKET_HALF_WIDTH).max(floor);
    let b = guess + BRACKET_HALF_WIDTH;
    if a < b && f(a) * f(b) < 0.0 && !sign_change_below(f, floor, a) {
        return Some((a, b));
    }
    // McMahon guess too far off (small n, larger α): scan upward from the floor.
    let mut lo = floor;
    let mut flo = f(lo);
    let limit = floor + 4.0 * PI + guess.abs();
    while lo < limit {
        let hi = lo + SCAN_STEP;
        let fhi = f(hi);
        if flo * fhi <= 0.0 {
            return Some((lo, hi));
        }
        lo = hi;
        flo = fhi;
    }
    None
}

// Consecutive zeros are more than 2.4 apart, so a 0.5 stride cannot step over one.
fn sign_change_below(f: &impl Fn(f64) -> f64, floor: f64, a: f64) -> bool {
    let mut x = floor;
    let mut fx = f(x);
    while x < a {
        let next = (x + 0.5).min(a);
        let fn_ = f(next);
        if fx * fn_ < 0.0 {
            return true;
        }
        x = next;
        fx = fn_;
    }
    false
}

fn polish(nu: f64, mut a: f64, mut b: f64, start: f64) -> f64 {
    let mut fa = bessel_j(nu, a);
    let mut x = if start > a && start < b { start } else { 0.5 * (a + b) };
    for _ in 0..200 {
        let fx = bessel_j(nu, x);
        if fx == 0.0 {
            return x;
        }
        if (fx < 0.0) == (fa < 0.0) {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        let d = bessel_j_prime(nu, x);
        let newton = x - fx / d;
        let next = if d != 0.0 && newton > a && newton < b { newton } else { 0.5 * (a + b) };
        if (next - x).abs() <= 4.0 * f64::EPSILON * x {
            return next;
        }
        x = next;
    }
    x
}
