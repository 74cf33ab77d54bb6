mod common;

use common::*;
use ensemble_core::continuous::*;
use ensemble_core::fields::*;
use ensemble_core::observables::*;
use proptest::prelude::*;
use rand::Rng;
use std::f64::consts::{E, TAU};

fn ho() -> PotentialSpec<f64> {
    PotentialSpec::harmonic(1.0, 1.0)
}

fn fine_ring_state(seed: u64, n: usize) -> Wavefunction<f64> {
    let mut r = rng(seed);
    let g = Grid1D::<f64>::periodic(0.0, TAU, n).unwrap();
    let (a1, a2, ph) = (r.gen_range(-0.8..0.8), r.gen_range(-0.5..0.5), r.gen_range(0.0..TAU));
    let (b1, b2, wind) = (r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-2i32..=2) as f64);
    let p = RealField::from_fn(g, |x| (a1 * x.cos() + a2 * (2.0 * x + ph).sin()).exp()).unwrap();
    let s = RealField::from_fn(g, |x| wind * x + b1 * x.sin() + b2 * (2.0 * x).cos()).unwrap();
    Ensemble::normalized(p, s, 1.0, 1.0).unwrap().to_wavefunction()
}

#[test]
fn momentum_examples() {
    let e = gaussian_ensemble(Grid1D::<f64>::reflecting(-8.0, 8.0, 256).unwrap(), 1.0, 0.5, |_| 4.0);
    assert_eq!(ensemble_momentum(&e), 0.0);
    for (hbar, k) in [(1.0, 3.0), (0.7, -5.0)] {
        let wave = states::plane_wave(Grid1D::<f64>::periodic(-3.0, 3.0, 300).unwrap(), hbar, 1.0, k * TAU / 6.0).unwrap();
        let pi = ensemble_momentum(&wave.to_ensemble().unwrap());
        assert!((pi - hbar * k * TAU / 6.0).abs() < 1e-6, "{pi}");
    }
}

#[test]
fn free_evolution_conserves_momentum() {
    let g = Grid1D::<f64>::periodic(-15.0, 15.0, 512).unwrap();
    let e0 = states::gaussian(g, 1.0, 1.0, 1.0, -2.0, 0.8).unwrap().to_ensemble().unwrap();
    let stepping = Stepping::covering(2.0, quantum_dt_bound(&e0)).with_stride(500);
    let traj = evolve_canonical(&ContinuousHamiltonian::quantum(PotentialSpec::Free), &e0, &stepping).unwrap();
    let p0 = ensemble_momentum(&e0);
    assert!((p0 - 0.8).abs() < 1e-3);
    for e in &traj.states {
        assert!((ensemble_momentum(e) - p0).abs() < 1e-6);
    }
}

#[test]
fn entropy_examples() {
    let l = 3.5;
    let g = Grid1D::<f64>::reflecting(0.0, l, 101).unwrap();
    let uniform = Ensemble::normalized(RealField::constant(g, 1.0), RealField::zeros(g), 1.0, 1.0).unwrap();
    assert!((entropy(&uniform).unwrap() - l.ln()).abs() < 1e-6);

    let g = Grid1D::<f64>::reflecting(-20.0, 20.0, 2001).unwrap();
    let h1 = entropy(&gaussian_ensemble(g, 1.0, 0.0, |_| 0.0)).unwrap();
    let h2 = entropy(&gaussian_ensemble(g, 2.0, 0.0, |_| 0.0)).unwrap();
    assert!((h1 - 0.5 * (TAU * E).ln()).abs() < 1e-4);
    assert!((h2 - h1 - 2f64.ln()).abs() < 1e-5);

    let ring = Grid1D::<f64>::periodic(0.0, TAU, 64).unwrap();
    let on_ring = Ensemble::normalized(RealField::constant(ring, 1.0), RealField::zeros(ring), 1.0, 1.0).unwrap();
    assert!(entropy(&on_ring).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn homogeneity_holds_with_degree_one(seed in any::<u64>()) {
        let e = smooth_line_ensemble(seed, 1.0, 1.0);
        let ring = smooth_ring_ensemble(seed, 1.0);
        for h in [ContinuousHamiltonian::classical(ho()), ContinuousHamiltonian::quantum(ho())] {
            let d = homogeneity_check(&h, &e, 1.0).unwrap();
            prop_assert!(d.scaling_defect < 1e-10 && d.identity_defect < 1e-10, "{d:?}");
        }
        let d = homogeneity_check(&ContinuousHamiltonian::phase_translation(1.7), &ring, 1.0).unwrap();
        prop_assert!(d.scaling_defect < 1e-10 && d.identity_defect < 1e-10, "{d:?}");
    }

    #[test]
    fn local_densities_integrate_to_energy_and_momentum(seed in any::<u64>()) {
        let e = smooth_line_ensemble(seed, 1.0, 1.0);
        for h in [ContinuousHamiltonian::classical(ho()), ContinuousHamiltonian::quantum(ho())] {
            let (energy, momentum) = local_densities(&h, &e).unwrap();
            prop_assert!((integrate(&energy) - h.evaluate(&e).unwrap()).abs() < 1e-8);
            prop_assert!((integrate(&momentum) - ensemble_momentum(&e)).abs() < 1e-8);
        }
    }

    #[test]
    fn momentum_agrees_across_representations(seed in any::<u64>()) {
        let psi = fine_ring_state(seed, 2048);
        let pi = ensemble_momentum(&psi.to_ensemble().unwrap());
        prop_assert!((pi - fft_momentum(&psi)).abs() < 1e-5, "{pi} vs {}", fft_momentum(&psi));
        // the finite-difference form carries its own O(k²dx²) error
        prop_assert!((pi - momentum_expectation(&psi)).abs() < 1e-4);
    }
}

#[test]
fn wrong_degree_is_detected() {
    let e = smooth_line_ensemble(9, 1.0, 1.0);
    let d = homogeneity_check(&ContinuousHamiltonian::quantum(ho()), &e, 2.0).unwrap();
    assert!(d.scaling_defect > 1e-2 && d.identity_defect > 1e-2);
    assert!(homogeneity_check(&ContinuousHamiltonian::quantum(ho()), &e, 0.0).is_err());
}

#[test]
fn eigenstates_satisfy_the_energy_identity() {
    // odd sample count puts the node of n = 1 on a sample
    let g = Grid1D::<f64>::reflecting(-10.0, 10.0, 1025).unwrap();
    for n in [0, 1] {
        let (psi, _) = states::ho_eigenstate(g, 1.0, 1.0, 1.0, n).unwrap();
        let e = psi.to_ensemble().unwrap();
        let h = ContinuousHamiltonian::quantum(ho());
        let exact = n as f64 + 0.5;
        let value = h.evaluate(&e).unwrap();
        let rates = h.eom_rhs(&e).unwrap();
        let mean_ds = integrate(&e.p().zip_map(&rates.ds, |p, d| p * d).unwrap());
        assert!((value - exact).abs() < 1e-4, "n = {n}: H = {value}");
        assert!((-mean_ds - exact).abs() < 1e-4, "n = {n}: −⟨∂S/∂t⟩ = {}", -mean_ds);
        let (energy, _) = local_densities(&h, &e).unwrap();
        assert!((integrate(&energy) - exact).abs() < 1e-4);
    }
}

#[test]
fn momentum_density_examples() {
    let real = states::ho_eigenstate_analytic(Grid1D::<f64>::reflecting(-8.0, 8.0, 256).unwrap(), 1.0, 1.0, 1.0, 2).unwrap();
    assert!(momentum_density(&real.to_ensemble().unwrap()).max_abs() < 1e-12);

    let (hbar, k, l) = (1.0, 2.0, TAU);
    let wave = states::plane_wave(Grid1D::<f64>::periodic(0.0, l, 128).unwrap(), hbar, 1.0, k).unwrap();
    let j = momentum_density(&wave.to_ensemble().unwrap());
    assert!(j.values().iter().all(|v| (v - hbar * k / l).abs() < 1e-10));
}

#[test]
fn diagnostics_record() {
    let e = gaussian_ensemble(Grid1D::<f64>::reflecting(-10.0, 10.0, 512).unwrap(), 1.0, 0.0, |x| 0.3 * x);
    let h = ContinuousHamiltonian::quantum(PotentialSpec::Free);
    let r = DiagnosticsRecord::collect(&h, &e, true).unwrap();
    assert!((r.norm - 1.0).abs() < 1e-12);
    assert!((r.momentum - 0.3).abs() < 1e-6);
    assert!((r.fisher - 1.0).abs() < 1e-3);
    assert!((r.energy - (0.045 + 0.125)).abs() < 1e-3);
    assert!(r.entropy.is_some() && r.local_energy_density.is_some());

    let ring = smooth_ring_ensemble(2, 1.0);
    let r = DiagnosticsRecord::collect(&ContinuousHamiltonian::phase_translation(1.0), &ring, false).unwrap();
    assert!(r.entropy.is_none() && r.momentum_density.is_none());
}
