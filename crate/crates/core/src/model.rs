//! Physical parameters, state labels and the energy-channel algebra shared by
//! the angular and radial solvers.
//!
//! Natural units (ħ = c = 1) throughout. The central part of the potential is
//! `-A/r + B/r²`; the ring term is `C cot²θ / r²`.

use crate::error::{Error, Result};

/// Central part of the interaction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CentralPotential {
    /// Kratzer form with dissociation energy `a0` and equilibrium distance `r0`.
    Kratzer { a0: f64, r0: f64 },
    /// Pure Coulomb tail `-A/r` (the `B = 0` channel).
    Coulomb { a: f64 },
}

/// Strengths of the `-A/r` and `B/r²` terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Couplings {
    pub a: f64,
    pub b: f64,
}

/// Validated model inputs. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    mu: f64,
    potential: CentralPotential,
    c: f64,
    d: u32,
}

fn positive(field: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("must be finite and > 0, got {v}")))
    }
}

fn check_common(mu: f64, c: f64, d: u32) -> Result<()> {
    positive("mu", mu)?;
    if !(c.is_finite() && c >= 0.0) {
        return Err(Error::invalid("C", format!("must be finite and >= 0, got {c}")));
    }
    if d < 2 {
        return Err(Error::invalid("D", format!("must be >= 2, got {d}")));
    }
    Ok(())
}

impl ModelParams {
    /// Kratzer plus ring-shaped potential.
    pub fn kratzer(mu: f64, a0: f64, r0: f64, c: f64, d: u32) -> Result<Self> {
        check_common(mu, c, d)?;
        positive("a0", a0)?;
        positive("r0", r0)?;
        Ok(Self {
            mu,
            potential: CentralPotential::Kratzer { a0, r0 },
            c,
            d,
        })
    }

    /// Coulomb plus ring-shaped potential, `B = 0`.
    pub fn coulomb(mu: f64, a: f64, c: f64, d: u32) -> Result<Self> {
        check_common(mu, c, d)?;
        positive("A", a)?;
        Ok(Self {
            mu,
            potential: CentralPotential::Coulomb { a },
            c,
            d,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Ring-shape strength `C`.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Spatial dimension `D`.
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn potential(&self) -> CentralPotential {
        self.potential
    }

    pub fn couplings(&self) -> Couplings {
        derive_couplings(self)
    }

    /// Length scale used for default sampling windows: `r0` for Kratzer, the
    /// nonrelativistic Bohr-like radius `1/(mu A)` for Coulomb.
    pub fn length_scale(&self) -> f64 {
        match self.potential {
            CentralPotential::Kratzer { r0, .. } => r0,
            CentralPotential::Coulomb { a } => 1.0 / (self.mu * a),
        }
    }

    /// Same model with a different dimension.
    pub fn with_dimension(&self, d: u32) -> Result<Self> {
        check_common(self.mu, self.c, d)?;
        Ok(Self { d, ..*self })
    }
}

/// `A = 2 a0 r0`, `B = a0 r0²` for Kratzer; `(A, 0)` for Coulomb.
pub fn derive_couplings(p: &ModelParams) -> Couplings {
    match p.potential {
        CentralPotential::Kratzer { a0, r0 } => Couplings {
            a: 2.0 * a0 * r0,
            b: a0 * r0 * r0,
        },
        CentralPotential::Coulomb { a } => Couplings { a, b: 0.0 },
    }
}

/// Labels of a state: radial nodes `n`, polar index `n_theta` and azimuthal
/// magnitude `m` (the sign only lives in the phase `exp(±imφ)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuantumNumbers {
    pub n: u32,
    pub n_theta: u32,
    pub m: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, n_theta: u32, m: u32) -> Self {
        Self { n, n_theta, m }
    }
}

/// `alpha1_sq = mu - E`, `alpha2_sq = mu + E`, `eps = sqrt(mu² - E²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyChannel {
    pub alpha1_sq: f64,
    pub alpha2_sq: f64,
    pub eps: f64,
}

/// Energy channel at a candidate energy inside the bound-state window.
pub fn channel_at(p: &ModelParams, e: f64) -> Result<EnergyChannel> {
    if !(e.is_finite() && e.abs() < p.mu) {
        return Err(Error::OutOfBoundWindow { energy: e, mu: p.mu });
    }
    let alpha1_sq = p.mu - e;
    let alpha2_sq = p.mu + e;
    Ok(EnergyChannel {
        alpha1_sq,
        alpha2_sq,
        eps: (alpha1_sq * alpha2_sq).sqrt(),
    })
}

/// Substitution pair mapping relativistic formulas to the Schrödinger ones:
/// returns `(E_NR, 2mu) = (-alpha1_sq, alpha2_sq)`.
pub fn nonrel_transform(alpha1_sq: f64, alpha2_sq: f64) -> (f64, f64) {
    (-alpha1_sq, alpha2_sq)
}
