//! Verification machinery kept independent of the production evaluation
//! paths: explicit series instead of recurrences, analytic second
//! derivatives plugged back into the differential equations, adaptive
//! quadrature for normalizations, and a finite-difference eigenvalue problem
//! instead of the closed-form energy condition.

pub mod eigen;
pub mod quadrature;
pub mod residual;
pub mod series;

pub use eigen::{matrix_eigen_crosscheck, EigenCrossCheck};
pub use quadrature::{integrate, quadrature_norm, Domain, Measure, QuadConfig};
pub use residual::{angular_ode_residual, linear_grid, radial_ode_residual, GridSpec, ResidualReport, ODE_TOLERANCE};
pub use series::{jacobi_series, laguerre_series};
