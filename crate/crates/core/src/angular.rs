//! Polar and azimuthal parts of the separated equation.
//!
//! The ring term shifts the azimuthal order to `m' = sqrt(m² + C α2²)` and the
//! polar equation becomes an associated-Legendre problem of order `m'` and
//! degree `n_theta + m'`. The effective angular momentum `j` follows from
//!
//! ```text
//! j(j + D - 2) + C α2² = (n_theta + m')(n_theta + m' + 1)
//! ```
//!
//! taking the positive square-root branch.

use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::model::QuantumNumbers;
use crate::specfun::{jacobi_sym, log_gamma};

/// Angular quantum numbers evaluated in a given energy channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularSolution {
    pub n_theta: u32,
    pub m: u32,
    /// Effective (generally non-integer) azimuthal order.
    pub m_prime: f64,
    pub j: f64,
    pub j_prime: f64,
    /// Separation constant `j (j + D - 2)`.
    pub lambda_sep: f64,
    /// Polar normalization `N_ñ`.
    pub norm: f64,
}

/// `sqrt(m² + C alpha2_sq)`.
pub fn m_prime(m: u32, c: f64, alpha2_sq: f64) -> f64 {
    let m = m as f64;
    (m * m + c * alpha2_sq).sqrt()
}

fn two_l_plus_one_sq(ntilde: u32, m_prime: f64) -> f64 {
    let t = 2.0 * ntilde as f64 + 2.0 * m_prime + 1.0;
    t * t
}

/// Effective angular momentum `j` for polar index `ntilde`.
pub fn j_from_ntilde(ntilde: u32, m_prime: f64, d: u32, c: f64, alpha2_sq: f64) -> Result<f64> {
    let dm2 = d as f64 - 2.0;
    let disc = dm2 * dm2 + two_l_plus_one_sq(ntilde, m_prime) - 4.0 * c * alpha2_sq - 1.0;
    if !(disc >= 0.0) {
        return Err(Error::NoRealAngularMomentum { discriminant: disc });
    }
    Ok(-0.5 * dm2 + 0.5 * disc.sqrt())
}

/// Shifted angular momentum `j'`, defined by `j'(j' + D - 2) = j(j + D - 2) + C α2²`.
pub fn jprime_from_ntilde(ntilde: u32, m_prime: f64, d: u32) -> f64 {
    let dm2 = d as f64 - 2.0;
    let arg = dm2 * dm2 + two_l_plus_one_sq(ntilde, m_prime) - 1.0;
    -0.5 * dm2 + 0.5 * arg.max(0.0).sqrt()
}

/// Inverse of [`j_from_ntilde`]; returns a real number that is a
/// nonnegative integer for consistent inputs.
pub fn ntilde_from_j(j: f64, m_prime: f64, d: u32, c: f64, alpha2_sq: f64) -> Result<f64> {
    let arg = (2.0 * j + 1.0).powi(2) + 4.0 * j * (d as f64 - 3.0) + 4.0 * c * alpha2_sq;
    if !(arg >= 0.0) {
        return Err(Error::domain(format!("ntilde_from_j: negative root argument {arg}")));
    }
    Ok(-0.5 * (1.0 + 2.0 * m_prime) + 0.5 * arg.sqrt())
}

/// `ln N_ñ`, with every factorial taken as a gamma function.
fn ln_polar_norm(ntilde: u32, m_prime: f64) -> Result<f64> {
    let n = ntilde as f64;
    let ln_num = (2.0 * n + 2.0 * m_prime + 1.0).ln()
        + log_gamma(n + 2.0 * m_prime + 1.0)?
        + log_gamma(n + 1.0)?
        - LN_2;
    Ok(-m_prime * LN_2 - log_gamma(n + m_prime + 1.0)? + 0.5 * ln_num)
}

/// Normalization making `∫_{-1}^{1} H(s)² ds = 1`.
pub fn polar_norm(ntilde: u32, m_prime: f64) -> Result<f64> {
    if !(m_prime >= 0.0 && m_prime.is_finite()) {
        return Err(Error::domain(format!("m' must be >= 0, got {m_prime}")));
    }
    ln_polar_norm(ntilde, m_prime).map(f64::exp)
}

/// `H(s) = N (1 - s²)^{m'/2} P_ñ^(m',m')(s)` with `s = cos θ`.
pub fn polar_in_s(ntilde: u32, m_prime: f64, s: f64) -> Result<f64> {
    let norm = polar_norm(ntilde, m_prime)?;
    polar_unnormalized(ntilde, m_prime, s).map(|v| norm * v)
}

fn polar_unnormalized(ntilde: u32, m_prime: f64, s: f64) -> Result<f64> {
    let p = jacobi_sym(ntilde, m_prime, s)?;
    let w = (1.0 - s * s).max(0.0);
    let envelope = if m_prime == 0.0 { 1.0 } else { w.powf(0.5 * m_prime) };
    Ok(envelope * p.value)
}

/// Normalized polar wavefunction `H_ñ(θ)` for `θ ∈ [0, π]`; the endpoint
/// values are the continuous extension.
pub fn polar_wavefunction(ntilde: u32, m_prime: f64, theta: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::domain(format!("theta must lie in [0, pi], got {theta}")));
    }
    let norm = polar_norm(ntilde, m_prime)?;
    let (sin, cos) = theta.sin_cos();
    let p = jacobi_sym(ntilde, m_prime, cos.clamp(-1.0, 1.0))?;
    let envelope = if m_prime == 0.0 { 1.0 } else { sin.max(0.0).powf(m_prime) };
    Ok(norm * envelope * p.value)
}

/// `exp(i m φ) / sqrt(2π)`; `m` carries the sign of the azimuthal phase.
pub fn azimuthal(m: i64, phi: f64) -> Complex64 {
    Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), m as f64 * phi)
}

/// Full angular solution for state labels `qn` in a channel with `alpha2_sq = mu + E`.
pub fn solve_angular(qn: QuantumNumbers, d: u32, c: f64, alpha2_sq: f64) -> Result<AngularSolution> {
    let mp = m_prime(qn.m, c, alpha2_sq);
    let j = j_from_ntilde(qn.n_theta, mp, d, c, alpha2_sq)?;
    let j_prime = jprime_from_ntilde(qn.n_theta, mp, d);
    Ok(AngularSolution {
        n_theta: qn.n_theta,
        m: qn.m,
        m_prime: mp,
        j,
        j_prime,
        lambda_sep: j * (j + d as f64 - 2.0),
        norm: polar_norm(qn.n_theta, mp)?,
    })
}

impl AngularSolution {
    pub fn polar(&self, theta: f64) -> Result<f64> {
        polar_wavefunction(self.n_theta, self.m_prime, theta)
    }

    pub fn polar_in_s(&self, s: f64) -> Result<f64> {
        if !(-1.0..=1.0).contains(&s) {
            return Err(Error::domain(format!("s must lie in [-1, 1], got {s}")));
        }
        polar_unnormalized(self.n_theta, self.m_prime, s).map(|v| self.norm * v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn m_prime_examples() {
        assert_eq!(m_prime(3, 0.0, 7.7), 3.0);
        assert_eq!(m_prime(1, 2.0, 1.5), 2.0);
        assert!((m_prime(2, 0.7, 1.9) - 5.33f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn j_examples() {
        assert_eq!(j_from_ntilde(0, 0.0, 3, 0.0, 1.0).unwrap(), 0.0);
        assert_eq!(j_from_ntilde(1, 1.0, 3, 0.0, 1.0).unwrap(), 2.0);
        let j = j_from_ntilde(1, 2.0, 4, 0.3, 1.2).unwrap();
        let back = ntilde_from_j(j, 2.0, 4, 0.3, 1.2).unwrap();
        assert!((back - 1.0).abs() < 1e-12);
    }

    #[test]
    fn j_rejects_overstrong_ring() {
        // m' supplied independently of C alpha2²: 1 + 0 - 4*5 - 1 < 0
        let err = j_from_ntilde(0, 0.0, 2, 5.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::NoRealAngularMomentum { .. }));
    }

    #[test]
    fn jprime_examples() {
        assert_eq!(jprime_from_ntilde(0, 0.0, 3), 0.0);
        assert_eq!(jprime_from_ntilde(0, 0.0, 2), 0.0);
        // n_theta = 2, m' = 1.5, D = 5 with C alpha2² chosen so m' = sqrt(m² + C alpha2²), m = 1
        let (c, a2) = (0.625, 2.0);
        let mp = m_prime(1, c, a2);
        assert!((mp - 1.5).abs() < 1e-15);
        let j = j_from_ntilde(2, mp, 5, c, a2).unwrap();
        let jp = jprime_from_ntilde(2, mp, 5);
        let lhs = (2.0 * jp + 3.0).powi(2) - (2.0 * j + 3.0).powi(2);
        assert!((lhs - 4.0 * c * a2).abs() < 1e-12 * lhs.abs());
    }

    #[test]
    fn ntilde_examples() {
        assert_eq!(ntilde_from_j(0.0, 0.0, 3, 0.0, 1.0).unwrap(), 0.0);
        assert!((ntilde_from_j(2.0, 1.0, 3, 0.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(ntilde_from_j(-1.0, 0.0, 10, 0.0, 1.0).is_err());
    }

    #[test]
    fn polar_examples() {
        for &th in &[0.0, 0.3, 1.2, PI] {
            let h = polar_wavefunction(0, 0.0, th).unwrap();
            assert!((h - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        }
        let h = polar_wavefunction(0, 1.0, PI / 2.0).unwrap();
        assert!((h - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(polar_wavefunction(1, 1.0, 0.0).unwrap(), 0.0);
        assert!(polar_wavefunction(0, 0.0, -0.01).is_err());
        assert!(polar_wavefunction(0, 0.0, 3.2).is_err());
    }

    #[test]
    fn polar_parity() {
        for nt in 0..5 {
            for &th in &[0.2, 0.9, 1.4] {
                let a = polar_wavefunction(nt, 0.8, th).unwrap();
                let b = polar_wavefunction(nt, 0.8, PI - th).unwrap();
                let sign = if nt % 2 == 0 { 1.0 } else { -1.0 };
                assert!((a - sign * b).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn azimuthal_examples() {
        let inv = 1.0 / (2.0 * PI).sqrt();
        assert!((azimuthal(0, 1.234) - Complex64::new(inv, 0.0)).norm() < 1e-16);
        assert!((azimuthal(2, PI) - Complex64::new(inv, 0.0)).norm() < 1e-15);
        assert!((azimuthal(-3, 0.7).norm() - inv).abs() < 1e-16);
    }

    #[test]
    fn solve_angular_fields_are_consistent() {
        let qn = QuantumNumbers::new(0, 2, 1);
        let a = solve_angular(qn, 3, 0.5, 1.4).unwrap();
        assert!((a.m_prime - (1.0f64 + 0.7).sqrt()).abs() < 1e-15);
        assert_eq!(a.lambda_sep, a.j * (a.j + 1.0));
        assert!(a.m_prime >= 1.0);
    }

    proptest! {
        #[test]
        fn branch_identity(nt in 0u32..8, m in 0u32..6, d in 2u32..9, c in 0.0f64..3.0, a2 in 0.01f64..2.0) {
            let mp = m_prime(m, c, a2);
            let j = j_from_ntilde(nt, mp, d, c, a2).unwrap();
            let jp = jprime_from_ntilde(nt, mp, d);
            let dm2 = d as f64 - 2.0;
            let lhs = (2.0 * j + dm2).powi(2) + 4.0 * c * a2;
            let rhs = (2.0 * jp + dm2).powi(2);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }

        #[test]
        fn roundtrip_recovers_ntilde(nt in 0u32..6, m in 0u32..6, d in 2u32..9, c in 0.0f64..3.0, a2 in 0.01f64..2.0) {
            let mp = m_prime(m, c, a2);
            let j = j_from_ntilde(nt, mp, d, c, a2).unwrap();
            let back = ntilde_from_j(j, mp, d, c, a2).unwrap();
            prop_assert!((back - nt as f64).abs() <= 1e-9);
        }

        #[test]
        fn coulomb_free_three_dimensional_reduction(nt in 0u32..10, m in 0u32..10) {
            let j = j_from_ntilde(nt, m as f64, 3, 0.0, 1.0).unwrap();
            prop_assert!((j - (nt + m) as f64).abs() <= 1e-12);
        }
    }
}
