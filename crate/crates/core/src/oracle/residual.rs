//! Pointwise residuals of the separated radial and polar equations, using
//! second derivatives obtained from the polynomial derivative identities.

use crate::angular::AngularSolution;
use crate::error::{Error, Result};
use crate::radial::BoundState;
use crate::specfun::{jacobi_sym, laguerre};

/// Sampling grid used for a residual check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// `max |residual| / max |second derivative|` over the grid.
    pub max_rel_residual: f64,
    pub max_abs_residual: f64,
    pub grid: GridSpec,
    pub tolerance: f64,
    pub pass: bool,
}

/// Default relative tolerance for both equations.
pub const ODE_TOLERANCE: f64 = 1e-7;

/// `points` equally spaced samples on `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

fn grid_spec(grid: &[f64]) -> GridSpec {
    GridSpec {
        lo: grid.first().copied().unwrap_or(f64::NAN),
        hi: grid.last().copied().unwrap_or(f64::NAN),
        points: grid.len(),
    }
}

fn check_sorted(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::domain("empty residual grid"));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("residual grid must be strictly increasing"));
    }
    Ok(())
}

fn report(residuals: &[f64], second: &[f64], terms: &[f64], grid: &[f64], tolerance: f64) -> ResidualReport {
    let max_abs = residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let mut scale = second.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        scale = terms.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    }
    let max_rel = if scale > 0.0 { max_abs / scale } else { max_abs };
    ResidualReport {
        max_rel_residual: max_rel,
        max_abs_residual: max_abs,
        grid: grid_spec(grid),
        tolerance,
        pass: max_rel <= tolerance,
    }
}

/// Residual of `g'' - [(M-1)(M-3)/(4r²) - α2²(A/r - B/r²) + α1²α2²] g = 0`
/// for the reduced radial function of `state`.
pub fn radial_ode_residual(state: &BoundState, grid: &[f64], tolerance: f64) -> Result<ResidualReport> {
    check_sorted(grid)?;
    if grid[0] <= 0.0 {
        return Err(Error::domain(format!("radial grid must be > 0, got {}", grid[0])));
    }
    let k = state.params.couplings();
    let ch = state.channel;
    let m_big = state.params.d() as f64 + 2.0 * state.angular.j;
    let zeta = state.intermediates.zeta;
    let eps = ch.eps;
    let n = state.qn.n;
    let s = 0.5 * (1.0 + zeta);

    let mut residuals = Vec::with_capacity(grid.len());
    let mut second = Vec::with_capacity(grid.len());
    let mut terms = Vec::with_capacity(grid.len());
    for &r in grid {
        let rho = 2.0 * eps * r;
        let lag = laguerre(n, zeta, rho)?;
        let lag2 = if n == 0 {
            0.0
        } else {
            -laguerre(n - 1, zeta + 1.0, rho)?.derivative
        };
        let h = (state.norm.ln() + s * r.ln() - eps * r).exp();
        let dh = h * (s / r - eps);
        let d2h = h * ((s / r - eps).powi(2) - s / (r * r));
        let g = h * lag.value;
        let g2 = d2h * lag.value + 4.0 * eps * dh * lag.derivative + 4.0 * eps * eps * h * lag2;
        let q = (m_big - 1.0) * (m_big - 3.0) / (4.0 * r * r) - ch.alpha2_sq * (k.a / r - k.b / (r * r))
            + ch.alpha1_sq * ch.alpha2_sq;
        residuals.push(g2 - q * g);
        second.push(g2);
        terms.push(q * g);
    }
    Ok(report(&residuals, &second, &terms, grid, tolerance))
}

/// Residual of `H'' + cot θ H' - [(m² + C α2² cos²θ)/sin²θ - j(j + D - 2)] H = 0`.
pub fn angular_ode_residual(
    ang: &AngularSolution,
    d: u32,
    c: f64,
    alpha2_sq: f64,
    grid: &[f64],
    tolerance: f64,
) -> Result<ResidualReport> {
    check_sorted(grid)?;
    let (first, last) = (grid[0], grid[grid.len() - 1]);
    if first <= 0.0 || last >= std::f64::consts::PI {
        return Err(Error::domain("polar grid must lie strictly inside (0, pi)"));
    }
    let a = ang.m_prime;
    let nt = ang.n_theta;
    let m = ang.m as f64;
    let sep = ang.j * (ang.j + d as f64 - 2.0);

    let mut residuals = Vec::with_capacity(grid.len());
    let mut second = Vec::with_capacity(grid.len());
    let mut terms = Vec::with_capacity(grid.len());
    for &th in grid {
        let (sin, cos) = th.sin_cos();
        let p = jacobi_sym(nt, a, cos)?;
        let p2 = if nt == 0 {
            0.0
        } else {
            0.5 * (nt as f64 + 2.0 * a + 1.0) * jacobi_sym(nt - 1, a + 1.0, cos)?.derivative
        };
        let u = sin.powf(a);
        let du = a * sin.powf(a - 1.0) * cos;
        let d2u = a * (a - 1.0) * sin.powf(a - 2.0) * cos * cos - a * u;
        let dp = -sin * p.derivative;
        let d2p = sin * sin * p2 - cos * p.derivative;

        let h = ang.norm * u * p.value;
        let dh = ang.norm * (du * p.value + u * dp);
        let d2h = ang.norm * (d2u * p.value + 2.0 * du * dp + u * d2p);
        let coef = (m * m + c * alpha2_sq * cos * cos) / (sin * sin) - sep;
        let friction = cos / sin * dh;
        residuals.push(d2h + friction - coef * h);
        second.push(d2h);
        terms.push(friction.abs().max((coef * h).abs()));
    }
    Ok(report(&residuals, &second, &terms, grid, tolerance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::solve_angular;
    use crate::model::{ModelParams, QuantumNumbers};
    use crate::radial::{solve_bound_state, SolverConfig};
    use std::f64::consts::PI;

    fn ground() -> BoundState {
        let p = ModelParams::kratzer(1.0, 0.25, 2.0, 0.0, 3).unwrap();
        solve_bound_state(&p, QuantumNumbers::new(0, 0, 0), &SolverConfig::default()).unwrap()
    }

    #[test]
    fn ground_state_radial_residual() {
        let s = ground();
        let grid = linear_grid(0.2, 20.0, 400);
        let rep = radial_ode_residual(&s, &grid, ODE_TOLERANCE).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.max_rel_residual <= 1e-7);
    }

    #[test]
    fn perturbed_energy_is_detected() {
        let s = ground();
        let off = BoundState::at_energy(&s.params, s.qn, s.energy + 1e-3).unwrap();
        let grid = linear_grid(0.2, 20.0, 400);
        let rep = radial_ode_residual(&off, &grid, ODE_TOLERANCE).unwrap();
        assert!(rep.max_rel_residual > 1e-3, "{rep:?}");
        assert!(!rep.pass);
    }

    #[test]
    fn radial_grid_must_be_positive() {
        let s = ground();
        assert!(radial_ode_residual(&s, &[0.0, 1.0], ODE_TOLERANCE).is_err());
        assert!(radial_ode_residual(&s, &[-1.0, 1.0], ODE_TOLERANCE).is_err());
        assert!(radial_ode_residual(&s, &[2.0, 1.0], ODE_TOLERANCE).is_err());
    }

    #[test]
    fn constant_polar_solution() {
        let ang = solve_angular(QuantumNumbers::new(0, 0, 0), 3, 0.0, 1.0).unwrap();
        let grid = linear_grid(0.1, PI - 0.1, 200);
        let rep = angular_ode_residual(&ang, 3, 0.0, 1.0, &grid, 1e-9).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn ringed_polar_solution() {
        let ang = solve_angular(QuantumNumbers::new(0, 2, 1), 3, 0.5, 1.4).unwrap();
        let grid = linear_grid(0.1, PI - 0.1, 200);
        let rep = angular_ode_residual(&ang, 3, 0.5, 1.4, &grid, ODE_TOLERANCE).unwrap();
        assert!(rep.pass, "{rep:?}");
        // wrong separation constant must show up
        let mut bad = ang;
        bad.j += 1e-3;
        let rep = angular_ode_residual(&bad, 3, 0.5, 1.4, &grid, ODE_TOLERANCE).unwrap();
        assert!(!rep.pass);
    }

    #[test]
    fn polar_grid_must_avoid_poles() {
        let ang = solve_angular(QuantumNumbers::new(0, 1, 1), 3, 0.0, 1.0).unwrap();
        assert!(angular_ode_residual(&ang, 3, 0.0, 1.0, &[0.0, 1.0], 1e-7).is_err());
        assert!(angular_ode_residual(&ang, 3, 0.0, 1.0, &[1.0, PI], 1e-7).is_err());
    }
}
