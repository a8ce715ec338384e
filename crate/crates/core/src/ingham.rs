//! Classical discrete prolate spectra over integer frequencies and the
//! resulting upper bound on Ingham's constant C(T).

use crate::error::{Error, Result};
use crate::spectra::{eigenvalues, Matrix, CLAMP_TOL};
use alloc::vec::Vec;
use core::f64::consts::{E, PI};
use libm::{ceil, cos, exp, floor, log, sin};

/// Largest size of the full consecutive-index problem that is solved for
/// comparison; beyond it the comparison eigenvalue is omitted.
pub const FULL_PROBLEM_MAX: usize = 1024;

/// π²/64, the limiting lower bound.
pub fn asymptotic_lower() -> f64 {
    PI * PI / 64.0
}

/// 2/e², the limiting upper bound.
pub fn asymptotic_upper() -> f64 {
    2.0 / (E * E)
}

/// T and the frequencies n_1 < … < n_N.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InghamConfig {
    #[cfg_attr(feature = "serde", serde(rename = "T"))]
    t: f64,
    frequencies: Vec<u64>,
}

impl InghamConfig {
    pub fn new(t: f64, frequencies: Vec<u64>) -> Result<Self> {
        if !(t > 1.0) || !t.is_finite() {
            return Err(Error::domain("ingham", alloc::format!("T must be > 1 (got {t})")));
        }
        check_indices(&frequencies)?;
        Ok(InghamConfig { t, frequencies })
    }

    /// Frequencies 1, 2, …, n.
    pub fn consecutive(t: f64, n: usize) -> Result<Self> {
        Self::new(t, (1..=n as u64).collect())
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn frequencies(&self) -> &[u64] {
        &self.frequencies
    }

    /// N(T) = ⌊T⌋ + 1.
    pub fn n_t(&self) -> u64 {
        n_of_t(self.t)
    }

    /// T/(2N(T)), always below 1/2.
    pub fn omega(&self) -> f64 {
        self.t / (2.0 * self.n_t() as f64)
    }

    /// Δ_N = {N(T)·n_1, …, N(T)·n_N}.
    pub fn dilated_indices(&self) -> Vec<u64> {
        let k = self.n_t();
        self.frequencies.iter().map(|&n| k * n).collect()
    }
}

fn n_of_t(t: f64) -> u64 {
    floor(t) as u64 + 1
}

fn check_indices(indices: &[u64]) -> Result<()> {
    if indices.is_empty() {
        return Err(Error::domain("ingham", "at least one frequency is required"));
    }
    if indices[0] == 0 {
        return Err(Error::domain("ingham", "frequencies must be positive integers"));
    }
    if indices.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("ingham", "frequencies must be strictly increasing"));
    }
    Ok(())
}

fn check_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0 && omega < 0.5) {
        return Err(Error::domain("ingham", alloc::format!("omega must lie in (0, 1/2), got {omega}")));
    }
    Ok(())
}

/// Entries sin(2π(n_i − n_j)ω)/(π(n_i − n_j)), with 2ω on the diagonal.
pub fn sinc_gram(indices: &[u64], omega: f64) -> Result<Matrix> {
    check_omega(omega)?;
    check_indices(indices)?;
    let n = indices.len();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = 2.0 * omega;
        for j in 0..i {
            let d = indices[i] as f64 - indices[j] as f64;
            let v = sin(2.0 * PI * d * omega) / (PI * d);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InghamResult {
    /// (N(T)/T)·eigenvalue_used
    pub upper_bound: f64,
    /// largest eigenvalue of the sinc Gram over Δ_N at ω = T/(2N(T))
    pub eigenvalue_used: f64,
    /// (N+1)-th eigenvalue of the full problem over 1..N(T)·n_N, when its
    /// size is at most [`FULL_PROBLEM_MAX`]
    pub full_problem_eigenvalue: Option<f64>,
    pub closed_form: f64,
    pub a_t: f64,
    pub n_t: u64,
    pub omega: f64,
    pub asymptotic_upper: f64,
    pub asymptotic_lower: f64,
}

/// Top eigenvalue of the restricted problem, the bound it gives on C(T),
/// and the closed form for comparison.
pub fn ingham_eigenvalue(config: &InghamConfig) -> Result<InghamResult> {
    let omega = config.omega();
    let indices = config.dilated_indices();
    let top = clamped(eigenvalues(&sinc_gram(&indices, omega)?)?[0], 0)?;
    let n = config.frequencies().len();
    let full_size = *indices.last().unwrap_or(&0) as usize;
    let full_problem_eigenvalue = if full_size <= FULL_PROBLEM_MAX {
        let all: Vec<u64> = (1..=full_size as u64).collect();
        match eigenvalues(&sinc_gram(&all, omega)?)?.get(n) {
            Some(&v) => Some(clamped(v, n)?),
            None => None,
        }
    } else {
        None
    };
    let n_t = config.n_t();
    Ok(InghamResult {
        upper_bound: n_t as f64 / config.t() * top,
        eigenvalue_used: top,
        full_problem_eigenvalue,
        closed_form: ingham_upper_closed(config.t())?,
        a_t: a_t(config.t())?,
        n_t,
        omega,
        asymptotic_upper: asymptotic_upper(),
        asymptotic_lower: asymptotic_lower(),
    })
}

// Concentration ratios lie in [0, 1]; rounding may push them just outside.
fn clamped(value: f64, index: usize) -> Result<f64> {
    if !(-CLAMP_TOL..=1.0 + CLAMP_TOL).contains(&value) {
        return Err(Error::EigenvalueRange { index, value });
    }
    Ok(value.clamp(0.0, 1.0))
}

fn check_t(t: f64) -> Result<f64> {
    if !(t > 1.0) || !t.is_finite() {
        return Err(Error::domain("ingham", alloc::format!("T must be > 1 (got {t})")));
    }
    let r = t / n_of_t(t) as f64;
    let q = (1.0 - r * r) / cos(PI / 2.0 * r);
    Ok(q * q)
}

/// A_T = (π²/8)·((1 − T²/N(T)²)/cos((π/2)·T/N(T)))².
pub fn a_t(t: f64) -> Result<f64> {
    Ok(PI * PI / 8.0 * check_t(t)?)
}

/// (π²/(8e²))·(N(T)/T)·((1 − T²/N(T)²)/cos((π/2)·T/N(T)))².
pub fn ingham_upper_closed(t: f64) -> Result<f64> {
    let q = check_t(t)?;
    Ok(PI * PI / (8.0 * E * E) * (n_of_t(t) as f64 / t) * q)
}

/// A_ω = 2π²((1/4 − ω²)/cos πω)².
pub fn a_omega(omega: f64) -> Result<f64> {
    check_omega(omega)?;
    let q = (0.25 - omega * omega) / cos(PI * omega);
    Ok(2.0 * PI * PI * q * q)
}

/// Inclusive window [⌈(eπ/2)Nω⌉, N − 1]; empty when start > end.
pub fn classical_window(n_size: usize, omega: f64) -> (usize, usize) {
    let start = ceil(E * PI / 2.0 * n_size as f64 * omega).max(0.0) as usize;
    (start, n_size.saturating_sub(1))
}

/// A_ω·exp(−(2n + 1)·ln(2(n + 1)/(eπNω))) and whether n lies in the window.
pub fn classical_decay_envelope(n_size: usize, omega: f64, n: usize) -> Result<(f64, bool)> {
    let a = a_omega(omega)?;
    if n_size == 0 {
        return Err(Error::domain("ingham", "N must be >= 1"));
    }
    let (start, end) = classical_window(n_size, omega);
    let arg = 2.0 * (n as f64 + 1.0) / (E * PI * n_size as f64 * omega);
    Ok((a * exp(-(2.0 * n as f64 + 1.0) * log(arg)), start <= n && n <= end))
}

/// The link between the eigenvalue bound and the closed form: the classical
/// envelope at index N of the problem of size N(T)·n_N, bandwidth T/(2N(T)),
/// scaled by N(T)/T.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChainLink {
    pub scaled_envelope: f64,
    pub closed_form: f64,
    pub in_window: bool,
}

pub fn chain_link(config: &InghamConfig) -> Result<ChainLink> {
    let size = (config.n_t() * config.frequencies().last().copied().unwrap_or(1)) as usize;
    let (env, in_window) = classical_decay_envelope(size, config.omega(), config.frequencies().len())?;
    Ok(ChainLink {
        scaled_envelope: config.n_t() as f64 / config.t() * env,
        closed_form: ingham_upper_closed(config.t())?,
        in_window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert_eq!(asymptotic_lower(), PI * PI / 64.0);
        assert_eq!(asymptotic_upper(), 2.0 * exp(-2.0));
    }

    #[test]
    fn sinc_gram_basics() {
        let m = sinc_gram(&[1, 2, 5], 0.2).unwrap();
        assert!((0..3).all(|i| m[(i, i)] == 0.4));
        assert_eq!(m.asymmetry(), 0.0);
        assert!(sinc_gram(&[1, 1], 0.2).is_err());
        assert!(sinc_gram(&[1], 0.5).is_err());
        let v = eigenvalues(&sinc_gram(&[7], 0.3).unwrap()).unwrap();
        assert!((v[0] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn single_frequency() {
        let c = InghamConfig::new(2.5, alloc::vec![1]).unwrap();
        let r = ingham_eigenvalue(&c).unwrap();
        assert!((r.eigenvalue_used - 2.5 / 3.0).abs() < 1e-15);
        assert!((r.upper_bound - 1.0).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        assert!(InghamConfig::new(1.0, alloc::vec![1]).is_err());
        assert!(InghamConfig::new(2.0, alloc::vec![2, 1]).is_err());
        assert!(InghamConfig::new(2.0, alloc::vec![0, 1]).is_err());
        assert!(ingham_upper_closed(0.5).is_err());
    }

    #[test]
    fn a_omega_small() {
        assert!((a_omega(1e-9).unwrap() - PI * PI / 8.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_factors() {
        let t = 1.5;
        let lhs = ingham_upper_closed(t).unwrap();
        assert!((lhs - a_t(t).unwrap() * 2.0 / t / (E * E)).abs() < 1e-15);
        // A_T is A_ω at ω = T/(2N(T))
        assert!((a_t(t).unwrap() - a_omega(t / 4.0).unwrap()).abs() < 1e-14);
    }
}
