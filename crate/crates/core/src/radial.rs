//! Energy conditions, bound-state solver, closed-form limits and radial
//! wavefunctions.
//!
//! The reduced radial function `g(r) = r^{(D-1)/2} R(r)` obeys
//!
//! ```text
//! g'' - [ (M-1)(M-3)/(4r²) - α2² (A/r - B/r²) + α1² α2² ] g = 0,   M = D + 2j
//! ```
//!
//! whose regular, decaying solutions exist when
//!
//! ```text
//! [1 + 2n + sqrt((D + 2j - 2)² + 4B α2²)] sqrt(α1²) = A sqrt(α2²)
//! ```
//!
//! With the ring term `j` depends on the energy through `m'`, so the
//! condition is transcendental and solved by bracketing.

use num_complex::Complex64;

use crate::angular::{azimuthal, jprime_from_ntilde, m_prime, solve_angular, AngularSolution};
use crate::error::{Error, Result};
use crate::model::{channel_at, Couplings, EnergyChannel, ModelParams, QuantumNumbers};
use crate::specfun::{laguerre, log_gamma};

/// Root-search settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Number of points in the sign-change scan.
    pub grid_points: usize,
    /// Window half-gap as a fraction of `mu`: the scan covers `(-mu + δ, mu - δ)`.
    pub window_delta: f64,
    /// Relative bracket width at which bisection stops.
    pub rel_tol: f64,
    /// Residual tolerance, in units of `mu`.
    pub residual_tol: f64,
    pub max_iter: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            grid_points: 512,
            window_delta: 1e-9,
            rel_tol: 1e-12,
            residual_tol: 1e-12,
            max_iter: 200,
        }
    }
}

/// Radial shape parameters at a given energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialIntermediates {
    /// `M = D + 2j`.
    pub m_big: f64,
    /// `4γ² = (M-1)(M-3) + 4B α2²`.
    pub gamma4: f64,
    /// `β² = A α2²`.
    pub beta_sq: f64,
    /// Laguerre order `ζ = sqrt((D + 2j - 2)² + 4B α2²)`.
    pub zeta: f64,
    /// Decay rate `ε = sqrt(mu² - E²)`.
    pub eps: f64,
}

/// What the scan and bisection saw on the way to the root.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolveDiagnostics {
    /// Number of sign-change brackets found in the scan.
    pub brackets: usize,
    /// Roots of the other brackets, when there was more than one.
    pub other_roots: Vec<f64>,
    /// Scan points where the angular or radial solve was infeasible.
    pub infeasible_points: usize,
    /// Bisection steps spent on the returned root.
    pub iterations: u32,
    /// Energy-condition residual at the returned root.
    pub residual: f64,
}

impl SolveDiagnostics {
    pub fn multiple_roots(&self) -> bool {
        self.brackets > 1
    }
}

/// A state assembled at a definite energy: channel, angular numbers,
/// radial shape and normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundState {
    pub params: ModelParams,
    pub qn: QuantumNumbers,
    pub energy: f64,
    pub channel: EnergyChannel,
    pub angular: AngularSolution,
    pub intermediates: RadialIntermediates,
    /// Radial normalization `C_nj`.
    pub norm: f64,
    pub diagnostics: SolveDiagnostics,
}

fn sqrt_radicand(radicand: f64) -> Result<f64> {
    if radicand >= 0.0 {
        Ok(radicand.sqrt())
    } else {
        Err(Error::NegativeDiscriminant { radicand })
    }
}

/// Energy condition written with `j`, evaluated in channel `ch`.
pub fn energy_condition(k: Couplings, d: u32, n: u32, j: f64, ch: &EnergyChannel) -> Result<f64> {
    let x = d as f64 + 2.0 * j - 2.0;
    let root = sqrt_radicand(x * x + 4.0 * k.b * ch.alpha2_sq)?;
    Ok((1.0 + 2.0 * n as f64 + root) * ch.alpha1_sq.sqrt() - k.a * ch.alpha2_sq.sqrt())
}

/// Energy condition written with `j'` and the explicit ring coupling.
pub fn energy_condition_jprime(
    k: Couplings,
    c: f64,
    d: u32,
    n: u32,
    j_prime: f64,
    ch: &EnergyChannel,
) -> Result<f64> {
    let x = 2.0 * j_prime + d as f64 - 2.0;
    let root = sqrt_radicand(x * x + 4.0 * (k.b - c) * ch.alpha2_sq)?;
    Ok((1.0 + 2.0 * n as f64 + root) * ch.alpha1_sq.sqrt() - k.a * ch.alpha2_sq.sqrt())
}

/// Central-potential residual for a fixed angular momentum `j`.
pub fn energy_residual_kratzer(p: &ModelParams, n: u32, j: f64, e: f64) -> Result<f64> {
    let ch = channel_at(p, e)?;
    energy_condition(p.couplings(), p.d(), n, j, &ch)
}

/// Residual of the `j'` form with `j'` held fixed (not re-derived from `E`).
pub fn energy_residual_jprime(p: &ModelParams, n: u32, j_prime: f64, e: f64) -> Result<f64> {
    let ch = channel_at(p, e)?;
    energy_condition_jprime(p.couplings(), p.c(), p.d(), n, j_prime, &ch)
}

/// Self-consistent residual: `m'(E)` and `j'(E)` are re-derived at every `E`.
pub fn energy_residual_noncentral(p: &ModelParams, qn: QuantumNumbers, e: f64) -> Result<f64> {
    let ch = channel_at(p, e)?;
    let ang = solve_angular(qn, p.d(), p.c(), ch.alpha2_sq)?;
    energy_condition_jprime(p.couplings(), p.c(), p.d(), qn.n, ang.j_prime, &ch)
}

/// Same residual as [`energy_residual_noncentral`] but routed through `j(E)`
/// and the central form. The two must agree identically.
pub fn energy_residual_noncentral_jform(p: &ModelParams, qn: QuantumNumbers, e: f64) -> Result<f64> {
    let ch = channel_at(p, e)?;
    let ang = solve_angular(qn, p.d(), p.c(), ch.alpha2_sq)?;
    energy_condition(p.couplings(), p.d(), qn.n, ang.j, &ch)
}

fn is_infeasible(e: &Error) -> bool {
    matches!(
        e,
        Error::NoRealAngularMomentum { .. } | Error::NegativeDiscriminant { .. }
    )
}

struct Bisection {
    root: f64,
    residual: f64,
    iterations: u32,
}

fn bisect<F>(f: &F, mut a: f64, mut fa: f64, mut b: f64, mut fb: f64, mu: f64, cfg: &SolverConfig) -> Result<Bisection>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut iterations = 0;
    while iterations < cfg.max_iter {
        if fa == 0.0 || fb == 0.0 {
            break;
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        iterations += 1;
        let fm = f(mid)?;
        if fm == 0.0 {
            a = mid;
            fa = 0.0;
            break;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
        let width_ok = (b - a) <= cfg.rel_tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
        let resid_ok = fa.abs().min(fb.abs()) <= cfg.residual_tol * mu;
        if width_ok && resid_ok {
            break;
        }
    }
    let (root, residual) = if fa.abs() <= fb.abs() { (a, fa) } else { (b, fb) };
    Ok(Bisection {
        root,
        residual,
        iterations,
    })
}

/// Locate the bound state `qn` of model `p`.
///
/// Scans the window on a uniform grid, bisects every sign change and keeps
/// the largest root (the least bound); the others are kept in the
/// diagnostics.
pub fn solve_bound_state(p: &ModelParams, qn: QuantumNumbers, cfg: &SolverConfig) -> Result<BoundState> {
    if cfg.grid_points < 2 {
        return Err(Error::invalid("grid_points", "need at least 2 scan points"));
    }
    let mu = p.mu();
    let delta = cfg.window_delta * mu;
    let (lo, hi) = (-mu + delta, mu - delta);
    if !(delta > 0.0 && lo < hi) {
        return Err(Error::invalid("window_delta", format!("must lie in (0, 1), got {}", cfg.window_delta)));
    }

    let f = |e: f64| energy_residual_noncentral(p, qn, e);
    let last = cfg.grid_points - 1;
    let mut samples: Vec<Option<(f64, f64)>> = Vec::with_capacity(cfg.grid_points);
    let mut infeasible_points = 0;
    let mut infeasible_err = None;
    for i in 0..cfg.grid_points {
        let e = if i == last { hi } else { lo + (hi - lo) * i as f64 / last as f64 };
        match f(e) {
            Ok(v) => samples.push(Some((e, v))),
            Err(err) if is_infeasible(&err) => {
                infeasible_points += 1;
                infeasible_err.get_or_insert(err);
                samples.push(None);
            }
            Err(err) => return Err(err),
        }
    }

    let mut roots: Vec<(f64, Bisection)> = Vec::new();
    for w in samples.windows(2) {
        if let (Some((a, fa)), Some((b, fb))) = (w[0], w[1]) {
            if fa == 0.0 {
                roots.push((a, Bisection { root: a, residual: 0.0, iterations: 0 }));
            } else if fa.signum() != fb.signum() && fb != 0.0 {
                let r = bisect(&f, a, fa, b, fb, mu, cfg)?;
                roots.push((r.root, r));
            }
        }
    }
    if let Some(Some((e, 0.0))) = samples.last() {
        roots.push((*e, Bisection { root: *e, residual: 0.0, iterations: 0 }));
    }

    if roots.is_empty() {
        return Err(match infeasible_err {
            Some(err) if infeasible_points == cfg.grid_points => err,
            _ => Error::NoBoundState,
        });
    }
    roots.sort_by(|x, y| x.0.total_cmp(&y.0));
    let brackets = roots.len();
    let (_, best) = roots.pop().expect("nonempty");
    let diagnostics = SolveDiagnostics {
        brackets,
        other_roots: roots.iter().map(|(e, _)| *e).collect(),
        infeasible_points,
        iterations: best.iterations,
        residual: best.residual,
    };
    let mut state = BoundState::at_energy(p, qn, best.root)?;
    state.diagnostics = diagnostics;
    Ok(state)
}

impl BoundState {
    /// Assemble every derived quantity at energy `e` without checking the
    /// energy condition. Off-shell states are useful for sensitivity probes.
    pub fn at_energy(p: &ModelParams, qn: QuantumNumbers, e: f64) -> Result<Self> {
        let ch = channel_at(p, e)?;
        let k = p.couplings();
        let d = p.d() as f64;
        let angular = solve_angular(qn, p.d(), p.c(), ch.alpha2_sq)?;
        let m_big = d + 2.0 * angular.j;
        let x = m_big - 2.0;
        let zeta = sqrt_radicand(x * x + 4.0 * k.b * ch.alpha2_sq)?;
        let intermediates = RadialIntermediates {
            m_big,
            gamma4: (m_big - 1.0) * (m_big - 3.0) + 4.0 * k.b * ch.alpha2_sq,
            beta_sq: k.a * ch.alpha2_sq,
            zeta,
            eps: ch.eps,
        };
        let norm = radial_norm(qn.n, zeta, ch.eps)?;
        Ok(Self {
            params: *p,
            qn,
            energy: e,
            channel: ch,
            angular,
            intermediates,
            norm,
            diagnostics: SolveDiagnostics::default(),
        })
    }

    /// Residual of the energy condition at the stored energy.
    pub fn residual(&self) -> Result<f64> {
        energy_residual_noncentral(&self.params, self.qn, self.energy)
    }

    /// Binding energy `E - mu`.
    pub fn binding(&self) -> f64 {
        self.energy - self.params.mu()
    }

    /// `ln(C_nj r^{(1+ζ)/2} e^{-εr})`, the prefactor of the reduced function.
    fn ln_envelope(&self, r: f64) -> f64 {
        let RadialIntermediates { zeta, eps, .. } = self.intermediates;
        self.norm.ln() + 0.5 * (1.0 + zeta) * r.ln() - eps * r
    }

    /// Reduced radial function `g(r) = r^{(D-1)/2} R(r)`.
    pub fn reduced_radial(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        let RadialIntermediates { zeta, eps, .. } = self.intermediates;
        let lag = laguerre(self.qn.n, zeta, 2.0 * eps * r)?;
        Ok(self.ln_envelope(r).exp() * lag.value)
    }

    /// Normalized radial function `R(r)`.
    pub fn radial(&self, r: f64) -> Result<f64> {
        radial_wavefunction(self, r)
    }

    /// `R(r) H(θ) Φ(φ)` with the positive azimuthal phase.
    pub fn psi(&self, r: f64, theta: f64, phi: f64) -> Result<Complex64> {
        total_wavefunction(self, r, theta, phi)
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("radius must be > 0, got {r}")))
    }
}

/// `C_nj = (2ε)^{1+ζ/2} sqrt(n! / ((2n + ζ + 1) Γ(n + ζ + 1)))`, combined in log space.
pub fn radial_norm(n: u32, zeta: f64, eps: f64) -> Result<f64> {
    let nf = n as f64;
    let ln_c = (1.0 + 0.5 * zeta) * (2.0 * eps).ln()
        + 0.5 * (log_gamma(nf + 1.0)? - (2.0 * nf + zeta + 1.0).ln() - log_gamma(nf + zeta + 1.0)?);
    Ok(ln_c.exp())
}

/// `R(r) = C_nj r^{(ζ+2-D)/2} e^{-εr} L_n^ζ(2εr)`.
pub fn radial_wavefunction(state: &BoundState, r: f64) -> Result<f64> {
    check_radius(r)?;
    let RadialIntermediates { zeta, eps, .. } = state.intermediates;
    let d = state.params.d() as f64;
    let lag = laguerre(state.qn.n, zeta, 2.0 * eps * r)?;
    let ln_env = state.ln_envelope(r) - 0.5 * (d - 1.0) * r.ln();
    Ok(ln_env.exp() * lag.value)
}

/// `ψ = R(r) H(θ) Φ(φ)` with phase `exp(+imφ)`.
pub fn total_wavefunction(state: &BoundState, r: f64, theta: f64, phi: f64) -> Result<Complex64> {
    total_wavefunction_with_phase(state, r, theta, phi, state.qn.m as i64)
}

/// As [`total_wavefunction`], choosing the sign of the azimuthal phase via
/// `m_signed = ±m`.
pub fn total_wavefunction_with_phase(
    state: &BoundState,
    r: f64,
    theta: f64,
    phi: f64,
    m_signed: i64,
) -> Result<Complex64> {
    if m_signed.unsigned_abs() != state.qn.m as u64 {
        return Err(Error::domain(format!(
            "azimuthal label {m_signed} does not match |m| = {}",
            state.qn.m
        )));
    }
    let radial = radial_wavefunction(state, r)?;
    let polar = state.angular.polar(theta)?;
    Ok(azimuthal(m_signed, phi) * (radial * polar))
}

/// Closed-form Coulomb spectrum (`B = 0`, `C = 0`, `j = ell`):
/// `E = mu (1 - 2 q²e² / (q²e² + N²))`, `N = 2n + 2 ell + D - 1`, with `q²e² = A²`.
pub fn coulomb_energy(mu: f64, qe_sq: f64, n: u32, ell: f64, d: u32) -> f64 {
    let big_n = 2.0 * n as f64 + 2.0 * ell + d as f64 - 1.0;
    mu * (1.0 - 2.0 * qe_sq / (qe_sq + big_n * big_n))
}

/// Second-order expansion of [`coulomb_energy`] in `q²e²`.
pub fn coulomb_series(mu: f64, qe_sq: f64, n: u32, ell: f64, d: u32) -> f64 {
    let big_n = 2.0 * n as f64 + 2.0 * ell + d as f64 - 1.0;
    let x = qe_sq / (big_n * big_n);
    mu - 2.0 * mu * x + 2.0 * mu * x * x
}

/// `2l' + D - 2` in the nonrelativistic channel (`α2² → 2mu`).
fn nonrel_two_l_prime(p: &ModelParams, qn: QuantumNumbers) -> f64 {
    let mp = m_prime(qn.m, p.c(), 2.0 * p.mu());
    2.0 * jprime_from_ntilde(qn.n_theta, mp, p.d()) + p.d() as f64 - 2.0
}

/// Schrödinger energy of the same potential:
/// `E_NR = -2 mu A² / [2n + 1 + sqrt((2l' + D - 2)² + 8 mu (B - C))]²`.
pub fn nonrel_energy(p: &ModelParams, qn: QuantumNumbers) -> Result<f64> {
    let k = p.couplings();
    let x = nonrel_two_l_prime(p, qn);
    let root = sqrt_radicand(x * x + 8.0 * p.mu() * (k.b - p.c()))?;
    let denom = 2.0 * qn.n as f64 + 1.0 + root;
    Ok(-2.0 * p.mu() * k.a * k.a / (denom * denom))
}

/// The `j'`-form energy condition after the nonrelativistic substitution
/// `α1² → -E_NR`, `α2² → 2mu`, `j' → l'`.
pub fn nonrel_residual(p: &ModelParams, qn: QuantumNumbers, e_nr: f64) -> Result<f64> {
    if !(e_nr <= 0.0) {
        return Err(Error::domain(format!("nonrelativistic bound energy must be <= 0, got {e_nr}")));
    }
    let alpha2_sq = 2.0 * p.mu();
    let alpha1_sq = -e_nr;
    let ch = EnergyChannel {
        alpha1_sq,
        alpha2_sq,
        eps: (alpha1_sq * alpha2_sq).sqrt(),
    };
    let mp = m_prime(qn.m, p.c(), alpha2_sq);
    let l_prime = jprime_from_ntilde(qn.n_theta, mp, p.d());
    energy_condition_jprime(p.couplings(), p.c(), p.d(), qn.n, l_prime, &ch)
}
