//! Aggregated per-state verification: energy residual, both ODE residuals,
//! the three normalization integrals and the nonrelativistic limit.

use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{ModelParams, QuantumNumbers};
use crate::oracle::{
    angular_ode_residual, linear_grid, quadrature_norm, radial_ode_residual, Domain, EigenCrossCheck, Measure,
    QuadConfig, ResidualReport,
};
use crate::radial::{nonrel_energy, nonrel_residual, solve_bound_state, BoundState, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub ode: f64,
    pub norm: f64,
    /// Energy-condition residual, in units of `mu`.
    pub residual: f64,
    pub nonrel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            ode: 1e-7,
            norm: 1e-8,
            residual: 1e-12,
            nonrel: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateCheck {
    pub params: ModelParams,
    pub qn: QuantumNumbers,
    pub energy: f64,
    pub energy_residual: f64,
    pub radial_ode: ResidualReport,
    pub angular_ode: ResidualReport,
    /// `∫ R² r^{D-1} dr`.
    pub radial_norm: f64,
    /// `∫ H(s)² ds` over `[-1, 1]`.
    pub polar_norm: f64,
    /// `∫ |Φ|² dφ` over `[0, 2π]`.
    pub azimuthal_norm: f64,
    pub e_nonrel: f64,
    pub nonrel_residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateFailure {
    pub params: ModelParams,
    pub qn: QuantumNumbers,
    pub error: Error,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyReport {
    pub checks: Vec<StateCheck>,
    pub failures: Vec<StateFailure>,
    pub crosschecks: Vec<EigenCrossCheck>,
    pub crosscheck_tolerance: f64,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
            && self.checks.iter().all(|c| c.pass)
            && self
                .crosschecks
                .iter()
                .all(|x| x.converged && x.gap <= self.crosscheck_tolerance)
    }
}

/// `∫ R² r^{D-1} dr` on `[0, ∞)`.
pub fn radial_norm_integral(state: &BoundState) -> Result<f64> {
    let eps = state.intermediates.eps;
    let scale = (state.qn.n as f64 + 0.5 * (1.0 + state.intermediates.zeta)) / eps;
    quadrature_norm(
        |r| {
            if r == 0.0 {
                return Ok(0.0);
            }
            let g = state.reduced_radial(r)?;
            Ok(g * g)
        },
        Measure::Flat,
        Domain::SemiInfinite { a: 0.0, scale },
        &QuadConfig::default(),
    )
}

/// `∫_{-1}^{1} H(s)² ds`.
pub fn polar_norm_integral(state: &BoundState) -> Result<f64> {
    quadrature_norm(
        |s| {
            let h = state.angular.polar_in_s(s)?;
            Ok(h * h)
        },
        Measure::Flat,
        Domain::Finite { a: -1.0, b: 1.0 },
        &QuadConfig::default(),
    )
}

/// `∫_0^{2π} |Φ_m|² dφ`.
pub fn azimuthal_norm_integral(m: i64) -> Result<f64> {
    quadrature_norm(
        |phi| Ok(crate::angular::azimuthal(m, phi).norm_sqr()),
        Measure::Flat,
        Domain::Finite { a: 0.0, b: 2.0 * PI },
        &QuadConfig::default(),
    )
}

/// Run every per-state check on an already solved state.
pub fn check_state(state: &BoundState, tol: &Tolerances) -> Result<StateCheck> {
    let p = &state.params;
    let len = p.length_scale();
    let r_grid = linear_grid(0.1 * len, 10.0 * len, 400);
    let t_grid = linear_grid(0.1, PI - 0.1, 200);
    let radial_ode = radial_ode_residual(state, &r_grid, tol.ode)?;
    let angular_ode = angular_ode_residual(&state.angular, p.d(), p.c(), state.channel.alpha2_sq, &t_grid, tol.ode)?;
    let radial_norm = radial_norm_integral(state)?;
    let polar_norm = polar_norm_integral(state)?;
    let azimuthal_norm = azimuthal_norm_integral(state.qn.m as i64)?;
    let energy_residual = state.residual()?;
    let e_nonrel = nonrel_energy(p, state.qn)?;
    let nonrel_res = nonrel_residual(p, state.qn, e_nonrel)?;

    let pass = radial_ode.pass
        && angular_ode.pass
        && (radial_norm - 1.0).abs() <= tol.norm
        && (polar_norm - 1.0).abs() <= tol.norm
        && (azimuthal_norm - 1.0).abs() <= tol.norm
        && energy_residual.abs() <= tol.residual * p.mu()
        && nonrel_res.abs() <= tol.nonrel
        && state.energy.abs() < p.mu();
    Ok(StateCheck {
        params: *p,
        qn: state.qn,
        energy: state.energy,
        energy_residual,
        radial_ode,
        angular_ode,
        radial_norm,
        polar_norm,
        azimuthal_norm,
        e_nonrel,
        nonrel_residual: nonrel_res,
        pass,
    })
}

/// Solve and check every `(params, qn)` pair. Work runs in parallel; the
/// report keeps the input order.
pub fn verify(params: &[ModelParams], states: &[QuantumNumbers], tol: &Tolerances) -> VerifyReport {
    let jobs: Vec<(ModelParams, QuantumNumbers)> = params
        .iter()
        .flat_map(|p| states.iter().map(move |qn| (*p, *qn)))
        .collect();
    let outcomes: Vec<std::result::Result<StateCheck, StateFailure>> = jobs
        .par_iter()
        .map(|(p, qn)| {
            solve_bound_state(p, *qn, &SolverConfig::default())
                .and_then(|s| check_state(&s, tol))
                .map_err(|error| StateFailure {
                    params: *p,
                    qn: *qn,
                    error,
                })
        })
        .collect();
    let mut report = VerifyReport {
        crosscheck_tolerance: 5e-4,
        ..Default::default()
    };
    for o in outcomes {
        match o {
            Ok(c) => report.checks.push(c),
            Err(f) => report.failures.push(f),
        }
    }
    report
}
