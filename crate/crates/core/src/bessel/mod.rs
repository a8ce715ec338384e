//! Bessel functions of the first kind for real order α ≥ −1/2 and real x ≥ 0.
//!
//! Three evaluation regimes are used:
//!
//! * ascending power series for small arguments (`x ≤ 8`, or `x ≤ α`),
//! * Steed's continued-fraction method (ratio CF plus the complex CF for
//!   `p + iq`, normalised through the Wronskian) in the transition region,
//! * the Hankel asymptotic expansion with phase `γ_α = απ/2 + π/4` once
//!   `x ≥ 30 + α²`.
//!
//! The regimes overlap and the unit tests compare them on the overlap.

mod gamma;
mod zeros;

pub use gamma::{gamma, ln_gamma};
pub use zeros::{find_zeros, mcmahon_guess, ZeroTable};

use crate::error::{Error, Result};
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use libm::{cos, exp, log, sin, sqrt};

/// Order of a Bessel function, constrained to α ≥ −1/2.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Order(f64);

impl Order {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < -0.5 {
            return Err(Error::InvalidOrder(alpha));
        }
        Ok(Order(alpha))
    }

    #[inline]
    pub fn alpha(self) -> f64 {
        self.0
    }

    /// The order α + 1.
    pub fn succ(self) -> Order {
        Order(self.0 + 1.0)
    }

    /// Asymptotic phase γ_α = απ/2 + π/4.
    pub fn phase(self) -> f64 {
        self.0 * FRAC_PI_2 + FRAC_PI_4
    }
}

/// Evaluate J_α(x).
pub fn eval_j(order: Order, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain("eval_j", alloc::format!("x must be finite, got {x}")));
    }
    if x < 0.0 {
        return Err(Error::domain("eval_j", alloc::format!("x must be >= 0, got {x}")));
    }
    Ok(bessel_j(order.alpha(), x))
}

/// Evaluate J_α′(x) for x > 0.
///
/// Uses `(J_{α−1} − J_{α+1})/2` when α − 1 is itself an admissible order and
/// `(α/x)J_α − J_{α+1}` otherwise.
pub fn eval_j_prime(order: Order, x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain("eval_j_prime", alloc::format!("x must be > 0, got {x}")));
    }
    Ok(bessel_j_prime(order.alpha(), x))
}

pub(crate) fn bessel_j_prime(nu: f64, x: f64) -> f64 {
    if nu - 1.0 >= -0.5 {
        0.5 * (bessel_j(nu - 1.0, x) - bessel_j(nu + 1.0, x))
    } else {
        nu / x * bessel_j(nu, x) - bessel_j(nu + 1.0, x)
    }
}

/// Regime boundary between the power series and Steed's method.
const SERIES_LIMIT: f64 = 8.0;

fn asymptotic_limit(nu: f64) -> f64 {
    30.0 + nu * nu
}

/// Unchecked J_ν(x) for ν ≥ −1/2, x ≥ 0.
pub(crate) fn bessel_j(nu: f64, x: f64) -> f64 {
    if x <= SERIES_LIMIT || x <= nu {
        j_series(nu, x)
    } else if x >= asymptotic_limit(nu) {
        j_asymptotic(nu, x)
    } else {
        j_steed(nu, x)
    }
}

/// Ascending series Σ (−1)^k (x/2)^{2k+ν} / (k! Γ(ν+k+1)).
pub(crate) fn j_series(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    let half = 0.5 * x;
    let mut term = exp(nu * log(half) - ln_gamma(nu + 1.0));
    let q = -half * half;
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (nu + k));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || k > 300.0 {
            break;
        }
    }
    sum
}

/// Hankel expansion J_ν(x) ≈ √(2/(πx)) (P cos χ − Q sin χ), χ = x − γ_ν.
pub(crate) fn j_asymptotic(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let (mut p, mut q) = (0.0_f64, 0.0_f64);
    // term_k = a_k(ν)/x^k, accumulated with alternating signs into P (even k) and Q (odd k)
    let mut term = 1.0_f64;
    let mut prev_abs = f64::INFINITY;
    let mut k = 0usize;
    loop {
        let abs = term.abs();
        if abs > prev_abs {
            break;
        }
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if abs < 1e-17 * (p.abs() + q.abs()) || term == 0.0 {
            break;
        }
        prev_abs = abs;
        let odd = (2 * k + 1) as f64;
        term *= (mu - odd * odd) / ((k + 1) as f64 * 8.0 * x);
        k += 1;
        if k > 200 {
            break;
        }
    }
    let chi = x - (nu * FRAC_PI_2 + FRAC_PI_4);
    sqrt(2.0 / (PI * x)) * (p * cos(chi) - q * sin(chi))
}

const CF_EPS: f64 = 1e-16;
const CF_TINY: f64 = 1e-300;
const CF_MAXIT: usize = 100_000;

/// Steed's method for x ≥ 2: continued fraction for J′_ν/J_ν, downward
/// recurrence to ν − n_l, complex continued fraction for p + iq and the
/// Wronskian 2/(πx) to fix the normalisation.
pub(crate) fn j_steed(nu: f64, x: f64) -> f64 {
    debug_assert!(x >= 2.0);
    let nl = {
        let t = nu - x + 1.5;
        if t > 0.0 { t as usize } else { 0 }
    };
    let mu = nu - nl as f64;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_ν / J_ν by modified Lentz
    let mut isign = 1.0;
    let mut h = nu * xi;
    if h.abs() < CF_TINY {
        h = CF_TINY;
    }
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..CF_MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < CF_TINY {
            d = CF_TINY;
        }
        c = b - 1.0 / c;
        if c.abs() < CF_TINY {
            c = CF_TINY;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < CF_EPS {
            converged = true;
            break;
        }
    }
    debug_assert!(converged, "CF1 failed for nu={nu}, x={x}");

    let mut rjl = isign * CF_TINY;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = CF_EPS;
    }
    let f = rjpl / rjl;

    // CF2: p + iq = (J'_μ + i Y'_μ)/(J_μ + i Y_μ)
    let mut a = 0.25 - mu * mu;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let fct = a * xi / (p * p + q * q);
    let mut cr = br + q * fct;
    let mut ci = bi + p * fct;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for i in 2..CF_MAXIT {
        a += 2.0 * (i - 1) as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < CF_TINY {
            dr = CF_TINY;
        }
        let fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if cr.abs() + ci.abs() < CF_TINY {
            cr = CF_TINY;
        }
        den = dr * dr + di * di;
        dr /= den;
        di = -di / den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < CF_EPS {
            break;
        }
    }
    let gam = (p - f) / q;
    let mut rjmu = sqrt(w / ((p - f) * gam + q));
    if rjl < 0.0 {
        rjmu = -rjmu;
    }
    rjl1 * (rjmu / rjl)
}
