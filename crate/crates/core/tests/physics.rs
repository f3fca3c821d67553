use std::f64::consts::PI;

use proptest::prelude::*;

use kgring::model::{ModelParams, QuantumNumbers};
use kgring::oracle::{integrate, quadrature_norm, Domain, Measure, QuadConfig};
use kgring::radial::{coulomb_energy, solve_bound_state, total_wavefunction_with_phase, BoundState, SolverConfig};

fn solve(p: &ModelParams, n: u32, nt: u32, m: u32) -> BoundState {
    solve_bound_state(p, QuantumNumbers::new(n, nt, m), &SolverConfig::default()).unwrap()
}

/// `∫∫∫ |ψ|² r² sin θ dr dθ dφ` by nested adaptive quadrature.
fn total_norm(s: &BoundState, m_signed: i64) -> f64 {
    let cfg = QuadConfig { abs_tol: 1e-11, ..Default::default() };
    let scale = (s.qn.n as f64 + 0.5 * (1.0 + s.intermediates.zeta)) / s.intermediates.eps;
    quadrature_norm(
        |r| {
            if r == 0.0 {
                return Ok(0.0);
            }
            integrate(
                |th| {
                    let phi_part = integrate(
                        |phi| Ok(total_wavefunction_with_phase(s, r, th, phi, m_signed)?.norm_sqr()),
                        0.0,
                        2.0 * PI,
                        &cfg,
                    )?;
                    Ok(phi_part * th.sin())
                },
                0.0,
                PI,
                &cfg,
            )
        },
        Measure::Power(2.0),
        Domain::SemiInfinite { a: 0.0, scale },
        &cfg,
    )
    .unwrap()
}

#[test]
fn total_wavefunction_is_normalized_in_three_dimensions() {
    let p = ModelParams::kratzer(1.0, 0.25, 2.0, 0.3, 3).unwrap();
    for (n, nt, m) in [(0, 0, 0), (1, 1, 1), (0, 2, 1)] {
        let s = solve(&p, n, nt, m);
        for sign in [1i64, -1] {
            let v = total_norm(&s, sign * m as i64);
            assert!((v - 1.0).abs() <= 1e-7, "({n},{nt},{m}) sign {sign}: {v}");
        }
    }
}

#[test]
fn radial_equation_holds_under_finite_differences() {
    // independent of the analytic derivative identities used by the oracle
    let p = ModelParams::kratzer(1.0, 0.25, 2.0, 0.3, 4).unwrap();
    for (n, nt, m) in [(0, 0, 0), (2, 1, 2)] {
        let s = solve(&p, n, nt, m);
        let k = p.couplings();
        let ch = s.channel;
        let mb = s.intermediates.m_big;
        let h = 1e-3;
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for i in 1..=80 {
            let r = 0.25 * i as f64;
            let g = |x: f64| s.reduced_radial(x).unwrap();
            let g2 = (g(r + h) - 2.0 * g(r) + g(r - h)) / (h * h);
            let q = (mb - 1.0) * (mb - 3.0) / (4.0 * r * r) - ch.alpha2_sq * (k.a / r - k.b / (r * r))
                + ch.alpha1_sq * ch.alpha2_sq;
            worst = worst.max((g2 - q * g(r)).abs());
            scale = scale.max(g2.abs());
        }
        assert!(worst / scale < 1e-5, "({n},{nt},{m}): {}", worst / scale);
    }
}

#[test]
fn coulomb_levels_are_ordered() {
    let p = ModelParams::coulomb(1.0, 0.7, 0.0, 3).unwrap();
    let mut last = f64::NEG_INFINITY;
    for n in 0..5 {
        let e = solve(&p, n, 0, 0).energy;
        assert!(e > last);
        assert!((e - coulomb_energy(1.0, 0.49, n, 0.0, 3)).abs() < 1e-11);
        last = e;
    }
    // deeper binding with stronger coupling
    let weak = solve(&ModelParams::coulomb(1.0, 0.5, 0.0, 3).unwrap(), 0, 0, 0).energy;
    let strong = solve(&ModelParams::coulomb(1.0, 1.5, 0.0, 3).unwrap(), 0, 0, 0).energy;
    assert!(strong < weak);
}

#[test]
fn ring_free_degeneracy_in_three_dimensions() {
    // with C = 0 and D = 3 only ntilde + m enters
    let p = ModelParams::kratzer(1.0, 0.25, 2.0, 0.0, 3).unwrap();
    let a = solve(&p, 1, 2, 0).energy;
    let b = solve(&p, 1, 1, 1).energy;
    let c = solve(&p, 1, 0, 2).energy;
    assert!((a - b).abs() < 1e-12 && (b - c).abs() < 1e-12);
    // the ring term lifts it
    let p = ModelParams::kratzer(1.0, 0.25, 2.0, 0.5, 3).unwrap();
    assert!((solve(&p, 1, 2, 0).energy - solve(&p, 1, 0, 2).energy).abs() > 1e-6);
}

#[test]
fn binding_weakens_with_dimension_and_ring_strength() {
    let e = |c: f64, d: u32| solve(&ModelParams::kratzer(1.0, 0.25, 2.0, c, d).unwrap(), 0, 0, 1).energy;
    assert!(e(0.0, 3) < e(0.0, 4) && e(0.0, 4) < e(0.0, 5));
    assert!(e(0.0, 3) < e(0.5, 3) && e(0.5, 3) < e(1.0, 3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solved_states_are_on_shell(
        mu in 0.5f64..2.0,
        a0 in 0.05f64..1.0,
        r0 in 0.5f64..3.0,
        c in 0.0f64..1.5,
        d in 2u32..7,
        n in 0u32..4,
        nt in 0u32..4,
        m in 0u32..4,
    ) {
        let p = ModelParams::kratzer(mu, a0, r0, c, d).unwrap();
        let s = solve(&p, n, nt, m);
        prop_assert!(s.energy.abs() < mu);
        prop_assert!(s.residual().unwrap().abs() <= 1e-12 * mu);
        prop_assert!((s.intermediates.eps - (mu * mu - s.energy * s.energy).sqrt()).abs() < 1e-12);
    }
}
