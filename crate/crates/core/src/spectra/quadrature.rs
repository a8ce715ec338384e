//! Gauss–Legendre rules, single and composite.

use crate::error::{Error, Result};
use alloc::vec::Vec;
use core::f64::consts::PI;
use libm::cos;

/// Points per panel of the composite rules used throughout the crate.
pub const PANEL_POINTS: usize = 16;

const NEWTON_TOL: f64 = 1e-15;

/// Nodes and positive weights on `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    a: f64,
    b: f64,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Change of variables x = g(u): `map(u)` returns (g(u), g'(u)), with g
    /// increasing. Nodes become g(u_i) and weights w_i·g'(u_i).
    pub fn substituted(base: &QuadratureRule, map: impl Fn(f64) -> (f64, f64)) -> QuadratureRule {
        let (nodes, weights) = base
            .nodes
            .iter()
            .zip(&base.weights)
            .map(|(&u, &w)| {
                let (x, dx) = map(u);
                (x, w * dx)
            })
            .unzip();
        QuadratureRule { nodes, weights, a: map(base.a).0, b: map(base.b).0 }
    }
}

// Legendre P_n and P_n' at x by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn reference_rule(points: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0; points];
    let mut weights = alloc::vec![0.0; points];
    let m = points.div_ceil(2);
    for i in 0..m {
        let mut x = cos(PI * (i as f64 + 0.75) / (points as f64 + 0.5));
        for _ in 0..100 {
            let (p, d) = legendre(points, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() <= NEWTON_TOL {
                break;
            }
        }
        let (_, dp) = legendre(points, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[points - 1 - i] = x;
        weights[i] = w;
        weights[points - 1 - i] = w;
    }
    if points % 2 == 1 {
        nodes[m - 1] = 0.0;
    }
    (nodes, weights)
}

/// The `points`-node Gauss–Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre(points: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    composite_gauss_legendre(1, points, a, b)
}

/// `panels` equal sub-intervals of `[a, b]`, each carrying a `points`-node rule.
pub fn composite_gauss_legendre(panels: usize, points: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if points < 2 {
        return Err(Error::domain("gauss_legendre", alloc::format!("need at least 2 points, got {points}")));
    }
    if panels == 0 {
        return Err(Error::domain("gauss_legendre", "need at least one panel"));
    }
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::domain("gauss_legendre", alloc::format!("invalid interval [{a}, {b}]")));
    }
    let (rn, rw) = reference_rule(points);
    let h = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * points);
    let mut weights = Vec::with_capacity(panels * points);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        for (&x, &w) in rn.iter().zip(&rw) {
            nodes.push(mid + 0.5 * h * x);
            weights.push(0.5 * h * w);
        }
    }
    Ok(QuadratureRule { nodes, weights, a, b })
}
