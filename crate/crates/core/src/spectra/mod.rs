//! Gram and Nyström matrices, the symmetric eigensolver and spectra.

pub mod eigen;
pub mod matrix;
pub mod quadrature;

pub use eigen::{eigensystem, eigenvalues, Eigensystem};
pub use matrix::Matrix;
pub use quadrature::{composite_gauss_legendre, gauss_legendre, QuadratureRule};

use crate::bessel::ZeroTable;
use crate::error::{Error, Result};
use crate::kernels::{continuous_g, sqrt2r_j, ProblemConfig};
use alloc::vec::Vec;
use libm::sqrt;
use matrix::{dot, norm};
use quadrature::PANEL_POINTS;

/// Pre-clamp excursion of an eigenvalue outside [0, 1] treated as rounding.
pub const CLAMP_TOL: f64 = 1e-10;

/// Number of points r = i/64, i = 1..=64, used to fix eigenfunction signs.
pub const SIGN_PROBES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Method {
    GramClosedForm,
    GramQuadrature,
    Nystrom,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::GramClosedForm => "gram_closed_form",
            Method::GramQuadrature => "gram_quadrature",
            Method::Nystrom => "nystrom",
        }
    }
}

fn check_table(config: &ProblemConfig, zeros: &ZeroTable) -> Result<()> {
    if zeros.len() < config.n_basis() {
        return Err(Error::IndexOutOfRange { index: config.n_basis(), len: zeros.len() });
    }
    if zeros.order() != config.order() {
        return Err(Error::domain("zeros", "zero table order differs from the configuration"));
    }
    Ok(())
}

/// The composite Gauss–Legendre rule on (0, ω) prescribed by the configuration.
pub fn quadrature_rule(config: &ProblemConfig) -> Result<QuadratureRule> {
    composite_gauss_legendre(config.panels(), PANEL_POINTS, 0.0, config.omega())
}

/// ρ_jk = ∫₀^ω φ_j φ_k in closed form:
/// 2ω·G_α(ωs_j, ωs_k)/(√(s_j s_k)·|J_{α+1}(s_j)|·|J_{α+1}(s_k)|).
pub fn gram_matrix(config: &ProblemConfig, zeros: &ZeroTable) -> Result<Matrix> {
    check_table(config, zeros)?;
    let n = config.n_basis();
    let w = config.omega();
    let s = &zeros.zeros()[..n];
    let nrm = &zeros.normalizers()[..n];
    let mut rho = Matrix::zeros(n, n);
    for j in 0..n {
        for k in j..n {
            let g = continuous_g(config.order(), w * s[j], w * s[k]);
            let v = 2.0 * w * g / (sqrt(s[j] * s[k]) * nrm[j] * nrm[k]);
            rho[(j, k)] = v;
            rho[(k, j)] = v;
        }
    }
    Ok(rho)
}

/// Φ_ik = √w_i·φ_k(x_i) on the quadrature nodes x_i of `rule`.
pub fn sampled_basis(config: &ProblemConfig, zeros: &ZeroTable, rule: &QuadratureRule) -> Result<Matrix> {
    check_table(config, zeros)?;
    let nu = config.alpha();
    let n = config.n_basis();
    let s = zeros.zeros();
    let nrm = zeros.normalizers();
    let nodes = rule.nodes();
    let weights = rule.weights();
    Ok(Matrix::from_fn(rule.len(), n, |i, k| sqrt(weights[i]) * sqrt2r_j(nu, s[k], nodes[i]) / nrm[k]))
}

/// ρ by quadrature on (0, ω): ΦᵀΦ.
pub fn gram_matrix_quadrature(config: &ProblemConfig, zeros: &ZeroTable) -> Result<Matrix> {
    let rule = quadrature_rule(config)?;
    Ok(sampled_basis(config, zeros, &rule)?.gram_of_columns())
}

/// Symmetrised Nyström matrix √(w_i w_j)·K̃(x_i, x_j) = ΦΦᵀ.
pub fn nystrom_matrix(config: &ProblemConfig, zeros: &ZeroTable) -> Result<Matrix> {
    let rule = quadrature_rule(config)?;
    Ok(sampled_basis(config, zeros, &rule)?.gram_of_rows())
}

/// Descending eigenvalues in [0, 1] of one problem and the coefficient
/// vectors x_{·,n} of the corresponding eigenfunctions in the basis φ_k.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Spectrum {
    config: ProblemConfig,
    method: Method,
    eigenvalues: Vec<f64>,
    coeff_vectors: Vec<Vec<f64>>,
    clamped_by: f64,
}

impl Spectrum {
    pub fn compute(config: &ProblemConfig, zeros: &ZeroTable, method: Method) -> Result<Spectrum> {
        check_table(config, zeros)?;
        let n = config.n_basis();
        let (raw, mut vectors) = match method {
            Method::GramClosedForm | Method::GramQuadrature => {
                let rho = if method == Method::GramClosedForm {
                    gram_matrix(config, zeros)?
                } else {
                    gram_matrix_quadrature(config, zeros)?
                };
                let sys = eigensystem(&rho)?;
                let vecs = (0..n).map(|k| sys.vector(k)).collect::<Vec<_>>();
                (sys.values, vecs)
            }
            Method::Nystrom => {
                let rule = quadrature_rule(config)?;
                let phi = sampled_basis(config, zeros, &rule)?;
                let sys = eigensystem(&phi.gram_of_rows())?;
                let phi_t = phi.transpose();
                let vecs = (0..n).map(|k| phi_t.mul_vec(&sys.vector(k))).collect::<Vec<_>>();
                (sys.values[..n].to_vec(), vecs)
            }
        };
        orthonormalize(&mut vectors);
        let (eigenvalues, clamped_by) = clamp(&raw)?;
        for v in &mut vectors {
            fix_sign(zeros, v);
        }
        Ok(Spectrum { config: *config, method, eigenvalues, coeff_vectors: vectors, clamped_by })
    }

    pub fn config(&self) -> &ProblemConfig {
        &self.config
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// x_{·,n} for 0-based `n`.
    pub fn coeff_vector(&self, n: usize) -> Result<&[f64]> {
        self.coeff_vectors
            .get(n)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange { index: n, len: self.coeff_vectors.len() })
    }

    pub fn coeff_vectors(&self) -> &[Vec<f64>] {
        &self.coeff_vectors
    }

    /// Largest distance of a raw eigenvalue outside [0, 1] before clamping.
    pub fn clamped_by(&self) -> f64 {
        self.clamped_by
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Smallest gap λ̃_n − λ̃_{n+1}; +∞ for a single eigenvalue.
    pub fn min_gap(&self) -> f64 {
        self.eigenvalues.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min)
    }

    /// Whether every consecutive gap exceeds `tol`.
    pub fn strictly_decreasing(&self, tol: f64) -> bool {
        self.eigenvalues.windows(2).all(|w| w[0] - w[1] > tol)
    }
}

fn clamp(raw: &[f64]) -> Result<(Vec<f64>, f64)> {
    let mut out = Vec::with_capacity(raw.len());
    let mut worst = 0.0_f64;
    for (index, &value) in raw.iter().enumerate() {
        let excess = if value < 0.0 { -value } else { (value - 1.0).max(0.0) };
        if !(excess <= CLAMP_TOL) {
            return Err(Error::EigenvalueRange { index, value });
        }
        worst = worst.max(excess);
        out.push(value.clamp(0.0, 1.0));
    }
    Ok((out, worst))
}

// Modified Gram–Schmidt in place.
fn orthonormalize(vectors: &mut [Vec<f64>]) {
    for i in 0..vectors.len() {
        let (done, rest) = vectors.split_at_mut(i);
        let v = &mut rest[0];
        for u in done.iter() {
            let p = dot(u, v);
            for (vk, uk) in v.iter_mut().zip(u) {
                *vk -= p * uk;
            }
        }
        let nv = norm(v);
        if nv > 0.0 {
            for vk in v.iter_mut() {
                *vk /= nv;
            }
        }
    }
}

fn expand(zeros: &ZeroTable, coeffs: &[f64], r: f64) -> f64 {
    let nu = zeros.order().alpha();
    let s = zeros.zeros();
    let nrm = zeros.normalizers();
    coeffs.iter().enumerate().map(|(k, &x)| x * sqrt2r_j(nu, s[k], r) / nrm[k]).sum()
}

fn fix_sign(zeros: &ZeroTable, coeffs: &mut [f64]) {
    let probes: Vec<f64> = (1..=SIGN_PROBES).map(|i| expand(zeros, coeffs, i as f64 / SIGN_PROBES as f64)).collect();
    let peak = probes.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if let Some(first) = probes.iter().find(|v| v.abs() > 1e-12 * peak) {
        if *first < 0.0 {
            for c in coeffs.iter_mut() {
                *c = -*c;
            }
        }
    }
}

/// φ_{n,N}(r) = Σ_k x_{k,n}·φ_k(r) for 0-based `n`.
pub fn synthesize_eigenfunction(spectrum: &Spectrum, zeros: &ZeroTable, n: usize, r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::domain("synthesize_eigenfunction", alloc::format!("r must lie in [0, 1], got {r}")));
    }
    check_table(&spectrum.config, zeros)?;
    Ok(expand(zeros, spectrum.coeff_vector(n)?, r))
}
