//! Tensor-product Gauss–Legendre quadrature on boxes.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};

/// Successive refinements must agree to this relative tolerance.
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;

/// Upper bound on the total node count of one tensor grid.
const MAX_GRID_POINTS: usize = 1 << 22;

/// Nodes and weights of the `n`-point rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(x) and P_n'(x) by the three-term recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else if n == 1 { x } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let step = pn / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `∫_{[0,L_1]×…×[0,L_d]} f` with a fixed `n`-point rule per axis.
pub fn integrate_box_fixed<F: Fn(&[f64]) -> f64>(lengths: &[f64], n: usize, f: &F) -> f64 {
    let (nodes, weights) = gauss_legendre(n);
    let d = lengths.len();
    let mut idx = vec![0usize; d];
    let mut x = vec![0.0; d];
    let scale: f64 = lengths.iter().map(|l| l / 2.0).product();
    let mut total = 0.0;
    loop {
        let mut w = scale;
        for a in 0..d {
            x[a] = lengths[a] / 2.0 * (nodes[idx[a]] + 1.0);
            w *= weights[idx[a]];
        }
        total += w * f(&x);
        // odometer increment
        let mut a = 0;
        loop {
            if a == d {
                return total;
            }
            idx[a] += 1;
            if idx[a] < n {
                break;
            }
            idx[a] = 0;
            a += 1;
        }
    }
}

/// Doubles the rule size until two successive levels agree to
/// [`QUADRATURE_TOLERANCE`] relative (absolute below `1e-300`).
pub fn integrate_box<F: Fn(&[f64]) -> f64>(lengths: &[f64], f: F) -> Result<f64> {
    let d = lengths.len().max(1) as u32;
    let mut n = 4;
    let mut prev = integrate_box_fixed(lengths, n, &f);
    loop {
        let next_n = n * 2;
        if next_n.checked_pow(d).is_none_or(|p| p > MAX_GRID_POINTS) {
            return Err(Error::QuadratureNonConvergence { tolerance: QUADRATURE_TOLERANCE, max_nodes: n });
        }
        let cur = integrate_box_fixed(lengths, next_n, &f);
        if (cur - prev).abs() <= QUADRATURE_TOLERANCE * cur.abs().max(1e-300) {
            return Ok(cur);
        }
        prev = cur;
        n = next_n;
    }
}
