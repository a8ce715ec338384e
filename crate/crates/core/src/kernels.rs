//! Fourier–Bessel basis functions and the kernels built from them.

use crate::bessel::{bessel_j, bessel_j_prime, Order, ZeroTable};
use crate::error::{Error, Result};
use crate::spectra::quadrature::{composite_gauss_legendre, PANEL_POINTS};
use core::f64::consts::{FRAC_2_PI, PI};
use alloc::vec::Vec;
use libm::{ceil, exp, sin, sqrt};

/// Band limit ω ∈ (0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Band(f64);

impl Band {
    pub fn new(omega: f64) -> Result<Self> {
        if !(omega > 0.0 && omega <= 1.0) {
            return Err(Error::domain("band", alloc::format!("omega must lie in (0, 1], got {omega}")));
        }
        Ok(Band(omega))
    }

    #[inline]
    pub fn omega(self) -> f64 {
        self.0
    }
}

/// One discrete concentration problem: order α, band ω, N basis functions
/// and the size of the composite quadrature rule on (0, ω).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProblemConfig {
    order: Order,
    band: Band,
    n_basis: usize,
    quad_points: usize,
}

impl ProblemConfig {
    /// Uses [`ProblemConfig::default_quad_points`].
    pub fn new(order: Order, band: Band, n_basis: usize) -> Result<Self> {
        if n_basis == 0 {
            return Err(Error::domain("config", "n must be >= 1"));
        }
        let quad_points = Self::default_quad_points(order, band, n_basis);
        Ok(ProblemConfig { order, band, n_basis, quad_points })
    }

    /// Override the quadrature size. The value is rounded up to a whole
    /// number of 16-point panels and must be at least 10·N.
    pub fn with_quad_points(mut self, points: usize) -> Result<Self> {
        if points < 10 * self.n_basis {
            return Err(Error::domain(
                "config",
                alloc::format!("quad_points must be >= 10*n = {} (got {points})", 10 * self.n_basis),
            ));
        }
        self.quad_points = points.div_ceil(PANEL_POINTS) * PANEL_POINTS;
        Ok(self)
    }

    /// One 16-point panel per half-oscillation of J_α(s_N r) on (0, ω), and
    /// never fewer than 10·N points in total.
    pub fn default_quad_points(order: Order, band: Band, n_basis: usize) -> usize {
        let half_periods = ceil((n_basis as f64 + 0.5 * order.alpha() + 0.25) * band.omega()) as usize;
        let floor = (10 * n_basis).div_ceil(PANEL_POINTS);
        half_periods.max(floor).max(1) * PANEL_POINTS
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn alpha(&self) -> f64 {
        self.order.alpha()
    }

    pub fn band(&self) -> Band {
        self.band
    }

    pub fn omega(&self) -> f64 {
        self.band.omega()
    }

    pub fn n_basis(&self) -> usize {
        self.n_basis
    }

    pub fn quad_points(&self) -> usize {
        self.quad_points
    }

    pub fn panels(&self) -> usize {
        self.quad_points / PANEL_POINTS
    }
}

/// A positive effective bandwidth.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BandwidthC(f64);

impl BandwidthC {
    pub fn new(c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::domain("bandwidth", alloc::format!("c must be positive, got {c}")));
        }
        Ok(BandwidthC(c))
    }

    /// c = (N + α/2 + 1/4)·π·ω.
    pub fn from_config(config: &ProblemConfig) -> Self {
        BandwidthC(Self::c_n(config.order, config.n_basis).0 * config.omega())
    }

    /// c_N = (N + α/2 + 1/4)·π = Nπ + γ_α.
    pub fn c_n(order: Order, n: usize) -> Self {
        BandwidthC((n as f64 + 0.5 * order.alpha() + 0.25) * PI)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

fn check_unit(what: &'static str, r: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::domain(what, alloc::format!("argument must lie in [0, 1], got {r}")));
    }
    Ok(())
}

/// √(2r)·J_α(s r) including its finite limit at r = 0 for α = −1/2.
pub(crate) fn sqrt2r_j(nu: f64, s: f64, r: f64) -> f64 {
    if r == 0.0 {
        // √(2r)·J_{−1/2}(sr) → 2/√(πs)
        return if nu == -0.5 { 2.0 / sqrt(PI * s) } else { 0.0 };
    }
    sqrt(2.0 * r) * bessel_j(nu, s * r)
}

/// φ_n(r) = √(2r)·J_α(s_n r)/|J_{α+1}(s_n)| for 1-based `n`.
pub fn basis_phi(zeros: &ZeroTable, n: usize, r: f64) -> Result<f64> {
    check_unit("basis_phi", r)?;
    let s = zeros.zero(n)?;
    Ok(sqrt2r_j(zeros.order().alpha(), s, r) / zeros.normalizer(n)?)
}

/// K̃(x, y) = Σ_{i ≤ N} φ_i(x)·φ_i(y).
pub fn discrete_kernel(config: &ProblemConfig, zeros: &ZeroTable, x: f64, y: f64) -> Result<f64> {
    check_unit("discrete_kernel", x)?;
    check_unit("discrete_kernel", y)?;
    let n = config.n_basis;
    if zeros.len() < n {
        return Err(Error::IndexOutOfRange { index: n, len: zeros.len() });
    }
    let mut sum = 0.0;
    for i in 1..=n {
        sum += basis_phi(zeros, i, x)? * basis_phi(zeros, i, y)?;
    }
    Ok(sum)
}

/// Relative distance below which G_α switches to its diagonal form.
pub const DIAGONAL_SWITCH: f64 = 1e-6;

/// Stand-in for a zero argument when α = −1/2, where G_α(x, 0) ≠ 0.
pub const ORIGIN_OFFSET: f64 = 1e-12;

/// The continuous kernel
/// G_α(x, y) = √(xy)·(xJ_{α+1}(x)J_α(y) − yJ_{α+1}(y)J_α(x))/(x² − y²),
/// with the limit ½((xJ_{α+1})′J_α − xJ_{α+1}J_α′) on the diagonal.
///
/// For α = −1/2 a zero argument is replaced by [`ORIGIN_OFFSET`]: the
/// limit there is finite and nonzero, so the value is extrapolated.
/// Arguments are expected to be non-negative.
pub fn continuous_g(order: Order, x: f64, y: f64) -> f64 {
    let nu = order.alpha();
    let (mut x, mut y) = (x, y);
    if x == 0.0 || y == 0.0 {
        if nu != -0.5 {
            return 0.0;
        }
        if x == 0.0 {
            x = ORIGIN_OFFSET;
        }
        if y == 0.0 {
            y = ORIGIN_OFFSET;
        }
    }
    let scale = x.max(y).max(1.0);
    if (x - y).abs() < DIAGONAL_SWITCH * scale {
        return g_diagonal(nu, 0.5 * (x + y));
    }
    let num = x * bessel_j(nu + 1.0, x) * bessel_j(nu, y) - y * bessel_j(nu + 1.0, y) * bessel_j(nu, x);
    sqrt(x * y) * num / ((x - y) * (x + y))
}

// (xJ_{α+1})′ = xJ_α − αJ_{α+1}
fn g_diagonal(nu: f64, x: f64) -> f64 {
    let ja = bessel_j(nu, x);
    let ja1 = bessel_j(nu + 1.0, x);
    let d = (x * ja - nu * ja1) * ja - x * ja1 * bessel_j_prime(nu, x);
    0.5 * d
}

/// K_c(x, y) = c·G_α(cx, cy).
pub fn continuous_k(c: BandwidthC, order: Order, x: f64, y: f64) -> f64 {
    let c = c.value();
    c * continuous_g(order, c * x, c * y)
}

/// F(x, y) = (2/π)·sin((x+y)c_N − 2γ_α)·V(x+y) + (2/π)·sin((x−y)c_N)·V(x−y).
pub fn correction_f(cn: BandwidthC, order: Order, x: f64, y: f64) -> Result<f64> {
    let c = cn.value();
    let gamma = order.phase();
    let s = x + y;
    let d = x - y;
    let a = sin(s * c - 2.0 * gamma) * v_integral(s)?;
    let b = sin(d * c) * v_integral(d)?;
    Ok(FRAC_2_PI * (a + b))
}

const V_TAIL_EFOLDS: f64 = 34.0;
const V_HEAD: f64 = 16.0;
const V_TAIL_PANELS: usize = 64;

/// V(r) = ∫₀^∞ sinh(rt)·e^{−2t}/(1 + e^{−2t}) dt for |r| < 2.
///
/// The integral is truncated at t = 34/(2 − |r|), where the tail is below
/// e^{−34}/(2 − |r|).
pub fn v_integral(r: f64) -> Result<f64> {
    if !(r.abs() < 2.0) {
        return Err(Error::domain("v_integral", alloc::format!("|r| must be < 2, got {r}")));
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    let a = r.abs();
    let t_max = V_TAIL_EFOLDS / (2.0 - a);
    let f = |t: f64| (exp((a - 2.0) * t) - exp(-(a + 2.0) * t)) / (2.0 * (1.0 + exp(-2.0 * t)));
    let head_end = t_max.min(V_HEAD);
    let head = composite_gauss_legendre(ceil(head_end) as usize, PANEL_POINTS, 0.0, head_end)?;
    let mut v = head.integrate(f);
    if t_max > head_end {
        let tail = composite_gauss_legendre(V_TAIL_PANELS, PANEL_POINTS, head_end, t_max)?;
        v += tail.integrate(f);
    }
    Ok(if r < 0.0 { -v } else { v })
}

/// The kernels that can be tabulated on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum KernelKind {
    /// K̃(x, y)
    Discrete,
    /// K_{c_N}(x, y)
    Continuous,
    /// F(x, y)
    Correction,
    /// K̃ − K_{c_N} − F
    Residual,
}

impl KernelKind {
    pub const ALL: [KernelKind; 4] = [KernelKind::Discrete, KernelKind::Continuous, KernelKind::Correction, KernelKind::Residual];

    pub fn name(self) -> &'static str {
        match self {
            KernelKind::Discrete => "discrete",
            KernelKind::Continuous => "continuous",
            KernelKind::Correction => "correction",
            KernelKind::Residual => "residual",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// `points` equispaced abscissae ω·i/points, i = 0..points, covering [0, ω).
pub fn grid_points(omega: f64, points: usize) -> Vec<f64> {
    (0..points).map(|i| omega * i as f64 / points as f64).collect()
}

/// `points` equispaced abscissae ω·(i + 1)/(points + 1), strictly inside (0, ω).
pub fn interior_grid_points(omega: f64, points: usize) -> Vec<f64> {
    (1..=points).map(|i| omega * i as f64 / (points + 1) as f64).collect()
}

/// Values of one kernel on the tensor grid `xs × xs`, row-major in x.
pub fn kernel_grid(config: &ProblemConfig, zeros: &ZeroTable, kind: KernelKind, xs: &[f64]) -> Result<Vec<f64>> {
    let n = config.n_basis;
    if zeros.len() < n {
        return Err(Error::IndexOutOfRange { index: n, len: zeros.len() });
    }
    for &x in xs {
        check_unit("kernel_grid", x)?;
    }
    let order = config.order;
    let cn = BandwidthC::c_n(order, n);
    // φ_i(x_j), tabulated once
    let phi: Vec<Vec<f64>> = xs
        .iter()
        .map(|&x| (1..=n).map(|i| basis_phi(zeros, i, x)).collect::<Result<Vec<f64>>>())
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(xs.len() * xs.len());
    for (a, &x) in xs.iter().enumerate() {
        for (b, &y) in xs.iter().enumerate() {
            let discrete = || phi[a].iter().zip(&phi[b]).map(|(u, v)| u * v).sum::<f64>();
            let v = match kind {
                KernelKind::Discrete => discrete(),
                KernelKind::Continuous => continuous_k(cn, order, x, y),
                KernelKind::Correction => correction_f(cn, order, x, y)?,
                KernelKind::Residual => discrete() - continuous_k(cn, order, x, y) - correction_f(cn, order, x, y)?,
            };
            out.push(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::find_zeros;

    fn table(a: f64, n: usize) -> ZeroTable {
        find_zeros(Order::new(a).unwrap(), n).unwrap()
    }

    fn v_closed(r: f64) -> f64 {
        0.25 * (PI / sin(0.5 * PI * r) - 2.0 / r)
    }

    #[test]
    fn band_and_config_validation() {
        assert!(Band::new(0.0).is_err());
        assert!(Band::new(1.5).is_err());
        assert!(Band::new(1.0).is_ok());
        let cfg = ProblemConfig::new(Order::new(0.0).unwrap(), Band::new(0.5).unwrap(), 8).unwrap();
        assert!(cfg.quad_points() >= 80 && cfg.quad_points().is_multiple_of(PANEL_POINTS));
        assert!(cfg.with_quad_points(79).is_err());
        assert_eq!(cfg.with_quad_points(81).unwrap().quad_points(), 96);
        assert!(ProblemConfig::new(Order::new(0.0).unwrap(), Band::new(0.5).unwrap(), 0).is_err());
    }

    #[test]
    fn bandwidths() {
        let cfg = ProblemConfig::new(Order::new(0.0).unwrap(), Band::new(0.5).unwrap(), 40).unwrap();
        assert!((BandwidthC::from_config(&cfg).value() / PI - 20.125).abs() < 1e-12);
        let o = Order::new(1.0).unwrap();
        assert!((BandwidthC::c_n(o, 3).value() - (3.0 * PI + o.phase())).abs() < 1e-12);
    }

    #[test]
    fn phi_half_integer_and_origin() {
        let t = table(0.5, 3);
        for i in 0..=20 {
            let r = i as f64 / 20.0;
            let want = core::f64::consts::SQRT_2 * sin(PI * r);
            assert!((basis_phi(&t, 1, r).unwrap().abs() - want.abs()).abs() < 1e-13);
        }
        assert_eq!(basis_phi(&table(0.0, 1), 1, 0.0).unwrap(), 0.0);
        assert!(basis_phi(&t, 4, 0.5).is_err());
        assert!(basis_phi(&t, 1, 1.5).is_err());
        // α = −1/2: φ_n(r) = √2 cos(s_n r)
        let t = table(-0.5, 2);
        assert!((basis_phi(&t, 2, 0.0).unwrap() - core::f64::consts::SQRT_2).abs() < 1e-13);
    }

    #[test]
    fn phi_is_normalized() {
        let q = composite_gauss_legendre(32, PANEL_POINTS, 0.0, 1.0).unwrap();
        for &a in &[0.0, 0.5, 1.0, 2.0] {
            let t = table(a, 10);
            for n in 1..=10 {
                let v = q.integrate(|r| basis_phi(&t, n, r).unwrap().powi(2));
                assert!((v - 1.0).abs() < 1e-10, "a={a} n={n} v={v}");
            }
        }
    }

    #[test]
    fn discrete_kernel_examples() {
        let t = table(0.0, 8);
        let cfg = ProblemConfig::new(Order::new(0.0).unwrap(), Band::new(0.5).unwrap(), 8).unwrap();
        let k = discrete_kernel(&cfg, &t, 0.3, 0.3).unwrap();
        let direct: f64 = (1..=8).map(|i| basis_phi(&t, i, 0.3).unwrap().powi(2)).sum();
        assert!(k > 0.0 && (k - direct).abs() < 1e-14);
        assert_eq!(discrete_kernel(&cfg, &t, 0.0, 0.7).unwrap(), 0.0);
        let a = discrete_kernel(&cfg, &t, 0.21, 0.77).unwrap();
        let b = discrete_kernel(&cfg, &t, 0.77, 0.21).unwrap();
        assert_eq!(a, b);
        assert!(discrete_kernel(&cfg, &table(0.0, 4), 0.1, 0.1).is_err());
    }

    #[test]
    fn g_examples() {
        let o = Order::new(1.0).unwrap();
        assert_eq!(continuous_g(o, 2.0, 0.0), 0.0);
        assert_eq!(continuous_g(o, 2.3, 5.1), continuous_g(o, 5.1, 2.3));
        let o0 = Order::new(0.0).unwrap();
        assert!((continuous_g(o0, 1.0, 1.0) - continuous_g(o0, 1.0, 1.0 + 1e-7)).abs() <= 1e-5);
        let k = continuous_k(BandwidthC::new(1.0).unwrap(), o, 0.4, 0.7);
        assert_eq!(k, continuous_g(o, 0.4, 0.7));
    }

    #[test]
    fn g_branches_meet() {
        for &a in &[-0.5, 0.0, 0.5, 1.0, 2.5] {
            let o = Order::new(a).unwrap();
            for i in 1..40 {
                let x = 0.5 * i as f64;
                let diag = continuous_g(o, x, x);
                let off = continuous_g(o, x, x + 1e-4 * x.max(1.0));
                assert!((diag - off).abs() < 1e-4, "a={a} x={x} {diag} {off}");
            }
        }
    }

    #[test]
    fn g_for_minus_half_at_origin() {
        // finite nonzero limit, approached continuously
        let o = Order::new(-0.5).unwrap();
        let at0 = continuous_g(o, 1.3, 0.0);
        let near = continuous_g(o, 1.3, 1e-9);
        assert!(at0 != 0.0 && (at0 - near).abs() < 1e-8);
    }

    #[test]
    fn lommel_identity() {
        let q = composite_gauss_legendre(40, PANEL_POINTS, 0.0, 0.6).unwrap();
        for &a in &[0.0, 0.5, 1.0, 2.0] {
            let o = Order::new(a).unwrap();
            let t = table(a, 12);
            for j in [1, 4, 12] {
                for k in [1, 7, 12] {
                    let (sj, sk) = (t.zero(j).unwrap(), t.zero(k).unwrap());
                    let lhs = q.integrate(|x| x * bessel_j(a, sj * x) * bessel_j(a, sk * x));
                    let rhs = 0.6 * continuous_g(o, 0.6 * sj, 0.6 * sk) / sqrt(sj * sk);
                    assert!((lhs - rhs).abs() < 1e-10, "a={a} j={j} k={k} {lhs} {rhs}");
                }
            }
        }
    }

    #[test]
    fn v_values() {
        assert_eq!(v_integral(0.0).unwrap(), 0.0);
        let v1 = v_integral(1.0).unwrap();
        assert!((1.0 / 6.0..=1.0 / 3.0).contains(&v1));
        for i in 1..=50 {
            let r = 1.9 * i as f64 / 50.0;
            let v = v_integral(r).unwrap();
            assert!((v - v_closed(r)).abs() < 1e-10, "r={r} {v} {}", v_closed(r));
            assert_eq!(v_integral(-r).unwrap(), -v);
        }
        assert!(v_integral(2.0).is_err());
        assert!(v_integral(-2.5).is_err());
        assert!(v_integral(f64::NAN).is_err());
    }

    #[test]
    fn v_oracle_by_independent_rule() {
        // one long plain Gauss rule with the truncation point taken much further out
        let r = 1.0;
        let q = composite_gauss_legendre(400, 20, 0.0, 60.0).unwrap();
        let want = q.integrate(|t| libm::sinh(r * t) * exp(-2.0 * t) / (1.0 + exp(-2.0 * t)));
        assert!((v_integral(r).unwrap() - want).abs() < 1e-13);
    }

    #[test]
    fn grids_are_symmetric_and_vanish_at_origin() {
        let o = Order::new(0.0).unwrap();
        let t = table(0.0, 10);
        let cfg = ProblemConfig::new(o, Band::new(0.5).unwrap(), 10).unwrap();
        let xs = grid_points(0.5, 12);
        assert_eq!(xs[0], 0.0);
        for kind in KernelKind::ALL {
            let g = kernel_grid(&cfg, &t, kind, &xs).unwrap();
            assert_eq!(g[0], 0.0, "{kind:?}");
            for i in 0..12 {
                for j in 0..12 {
                    assert!((g[i * 12 + j] - g[j * 12 + i]).abs() < 1e-13, "{kind:?}");
                }
            }
            assert_eq!(KernelKind::parse(kind.name()), Some(kind));
        }
        let d = kernel_grid(&cfg, &t, KernelKind::Discrete, &xs).unwrap();
        assert!((d[5 * 12 + 7] - discrete_kernel(&cfg, &t, xs[5], xs[7]).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn f_examples() {
        let o = Order::new(0.0).unwrap();
        let cn = BandwidthC::c_n(o, 10);
        assert_eq!(correction_f(cn, o, 0.0, 0.0).unwrap(), 0.0);
        for i in 0..10 {
            for j in 0..10 {
                let (x, y) = (0.05 * i as f64, 0.05 * j as f64);
                let f = correction_f(cn, o, x, y).unwrap();
                assert!((f - correction_f(cn, o, y, x).unwrap()).abs() < 1e-15);
                let (s, d) = (x + y, (x - y).abs());
                let bound = FRAC_2_PI * (s / (4.0 - s * s) + d / (4.0 - d * d));
                assert!(f.abs() <= bound + 1e-15);
            }
        }
        assert!(correction_f(cn, o, 1.0, 1.0).is_err());
    }
}
