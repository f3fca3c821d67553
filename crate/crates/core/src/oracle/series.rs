//! Explicit series for the orthogonal polynomials, used only to check the
//! production recurrences.

use crate::error::Result;
use crate::specfun::log_gamma;

/// `L_n^α(x) = Σ_{k=0}^{n} (-1)^k C(n+α, n-k) x^k / k!`, binomials via log-gamma.
pub fn laguerre_series(n: u32, alpha: f64, x: f64) -> Result<f64> {
    let nf = n as f64;
    let ln_top = log_gamma(nf + alpha + 1.0)?;
    let mut sum = 0.0;
    for k in 0..=n {
        let kf = k as f64;
        let ln_binom = ln_top - log_gamma(nf - kf + 1.0)? - log_gamma(alpha + kf + 1.0)?;
        let ln_kfact = log_gamma(kf + 1.0)?;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (ln_binom - ln_kfact).exp() * x.powi(k as i32);
    }
    Ok(sum)
}

/// `P_n^(a,b)(x) = (a+1)_n / n! · 2F1(-n, n+a+b+1; a+1; (1-x)/2)`, summed term by term.
pub fn jacobi_series(n: u32, a: f64, b: f64, x: f64) -> Result<f64> {
    let nf = n as f64;
    let z = 0.5 * (1.0 - x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (-nf + kf) * (nf + a + b + 1.0 + kf) / ((a + 1.0 + kf) * (kf + 1.0)) * z;
        sum += term;
    }
    let ln_prefactor = log_gamma(a + nf + 1.0)? - log_gamma(a + 1.0)? - log_gamma(nf + 1.0)?;
    Ok(ln_prefactor.exp() * sum)
}
