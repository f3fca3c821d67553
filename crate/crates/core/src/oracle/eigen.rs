//! Finite-difference cross-check of the radial spectrum.
//!
//! `-g'' + W(r; E) g = λ g` is discretized with second-order central
//! differences on `r_i = i h`, `h = R_max / N`, with `g = 0` at both ends.
//! A bound state at `E` requires the n-th eigenvalue to equal `E² - mu²`;
//! that self-consistency condition is solved by a secant iteration.

use crate::angular::solve_angular;
use crate::error::{Error, Result};
use crate::model::{channel_at, ModelParams, QuantumNumbers};
use crate::radial::{solve_bound_state, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenCrossCheck {
    pub e_analytic: f64,
    pub e_numeric: f64,
    pub gap: f64,
    pub grid_points: usize,
    pub r_max: f64,
    pub iterations: u32,
    pub converged: bool,
}

/// Secant tolerance on the energy, in units of `mu`.
pub const SECANT_TOLERANCE: f64 = 1e-8;
const MAX_SECANT_STEPS: u32 = 100;

/// Number of eigenvalues of the symmetric tridiagonal matrix below `x`
/// (Sturm count through the LDLᵀ pivots).
fn count_below(diag: &[f64], off: f64, x: f64) -> usize {
    let off2 = off * off;
    let mut count = 0;
    let mut q = 1.0;
    for (i, &a) in diag.iter().enumerate() {
        q = if i == 0 { a - x } else { a - x - off2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (a.abs() + off.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// `k`-th smallest eigenvalue (0-based) of the tridiagonal matrix with the
/// given diagonal and constant off-diagonal.
pub fn tridiagonal_eigenvalue(diag: &[f64], off: f64, k: usize) -> Result<f64> {
    if k >= diag.len() {
        return Err(Error::domain(format!("eigenvalue index {k} out of range {}", diag.len())));
    }
    let spread = 2.0 * off.abs();
    let mut lo = diag.iter().fold(f64::INFINITY, |m, &a| m.min(a - spread));
    let mut hi = diag.iter().fold(f64::NEG_INFINITY, |m, &a| m.max(a + spread));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Discrete `n`-th radial eigenvalue of `-d²/dr² + W(r; E)`.
pub fn discrete_eigenvalue(p: &ModelParams, qn: QuantumNumbers, e: f64, grid_points: usize, r_max: f64) -> Result<f64> {
    let ch = channel_at(p, e)?;
    let ang = solve_angular(qn, p.d(), p.c(), ch.alpha2_sq)?;
    let k = p.couplings();
    let m_big = p.d() as f64 + 2.0 * ang.j;
    let centrifugal = 0.25 * (m_big - 1.0) * (m_big - 3.0);
    let h = r_max / grid_points as f64;
    let inv_h2 = 1.0 / (h * h);
    let diag: Vec<f64> = (1..grid_points)
        .map(|i| {
            let r = i as f64 * h;
            2.0 * inv_h2 + centrifugal / (r * r) - ch.alpha2_sq * k.a / r + ch.alpha2_sq * k.b / (r * r)
        })
        .collect();
    tridiagonal_eigenvalue(&diag, -inv_h2, qn.n as usize)
}

/// Compare the analytic energy of `qn` with the self-consistent
/// finite-difference eigenvalue on `grid_points` intervals of `[0, r_max]`.
pub fn matrix_eigen_crosscheck(p: &ModelParams, qn: QuantumNumbers, grid_points: usize, r_max: f64) -> Result<EigenCrossCheck> {
    if grid_points < 200 {
        return Err(Error::invalid("grid", format!("need at least 200 grid intervals, got {grid_points}")));
    }
    if !(r_max >= 20.0 * p.length_scale()) {
        return Err(Error::invalid(
            "rmax",
            format!("must be >= 20 x length scale ({}), got {r_max}", 20.0 * p.length_scale()),
        ));
    }
    let mu = p.mu();
    let e_analytic = solve_bound_state(p, qn, &SolverConfig::default())?.energy;

    let limit = mu * (1.0 - 1e-12);
    let clamp = |e: f64| e.clamp(-limit, limit);
    let mismatch = |e: f64| -> Result<f64> {
        Ok(discrete_eigenvalue(p, qn, e, grid_points, r_max)? - (e * e - mu * mu))
    };

    let mut e0 = e_analytic;
    let mut e1 = clamp(e_analytic - 1e-3 * mu);
    let mut f0 = mismatch(e0)?;
    let mut f1 = mismatch(e1)?;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < MAX_SECANT_STEPS {
        iterations += 1;
        if f1 == f0 {
            break;
        }
        let e2 = clamp(e1 - f1 * (e1 - e0) / (f1 - f0));
        if !e2.is_finite() {
            return Err(Error::NonConvergence("secant step left the real line".into()));
        }
        let step = (e2 - e1).abs();
        e0 = e1;
        f0 = f1;
        e1 = e2;
        f1 = mismatch(e1)?;
        if step <= SECANT_TOLERANCE * mu {
            converged = true;
            break;
        }
    }

    Ok(EigenCrossCheck {
        e_analytic,
        e_numeric: e1,
        gap: (e1 - e_analytic).abs(),
        grid_points,
        r_max,
        iterations,
        converged,
    })
}
