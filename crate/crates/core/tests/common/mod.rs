//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use ensemble_core::discrete::CMatrix;
use ensemble_core::fields::{Ensemble, Grid1D, RealField, Wavefunction};
use num_complex::Complex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

pub type C = Complex<f64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_density(g: Grid1D<f64>, sigma: f64, x0: f64) -> RealField<f64> {
    RealField::from_fn(g, |x| (-(x - x0).powi(2) / (2.0 * sigma * sigma)).exp() / (TAU * sigma * sigma).sqrt()).unwrap()
}

pub fn gaussian_ensemble(g: Grid1D<f64>, sigma: f64, x0: f64, s: impl Fn(f64) -> f64) -> Ensemble<f64> {
    Ensemble::normalized(gaussian_density(g, sigma, x0), RealField::from_fn(g, s).unwrap(), 1.0, 1.0).unwrap()
}

/// Smooth ensemble on a line grid, bounded well away from zero: two bumps on
/// a broad background, and a low-order phase, parametrized by a seed.
pub fn smooth_line_ensemble(seed: u64, hbar: f64, mass: f64) -> Ensemble<f64> {
    let mut r = rng(seed);
    let g = Grid1D::<f64>::reflecting(-8.0, 8.0, 256).unwrap();
    let (c1, c2) = (r.gen_range(-1.5..1.5), r.gen_range(-1.5..1.5));
    let (w1, w2) = (r.gen_range(0.8..1.5), r.gen_range(0.8..1.5));
    let mix = r.gen_range(0.2..0.8);
    let (a, b, k) = (r.gen_range(-1.0..1.0), r.gen_range(-0.3..0.3), r.gen_range(0.5..1.5));
    let p = RealField::from_fn(g, |x| {
        mix * (-(x - c1).powi(2) / (2.0 * w1 * w1)).exp()
            + (1.0 - mix) * (-(x - c2).powi(2) / (2.0 * w2 * w2)).exp()
            + 0.02 * (-x * x / 64.0).exp()
    })
    .unwrap();
    let s = RealField::from_fn(g, |x| a * x + b * x * x + 0.3 * (k * x).sin()).unwrap();
    Ensemble::normalized(p, s, hbar, mass).unwrap()
}

/// Smooth positive ensemble on the ring `[0, 2π)`.
pub fn smooth_ring_ensemble(seed: u64, hbar: f64) -> Ensemble<f64> {
    let mut r = rng(seed);
    let g = Grid1D::<f64>::periodic(0.0, TAU, 256).unwrap();
    let (a1, a2, ph) = (r.gen_range(-0.8..0.8), r.gen_range(-0.5..0.5), r.gen_range(0.0..TAU));
    let (b1, b2, wind) = (r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-2i32..=2) as f64);
    let p = RealField::from_fn(g, |x| (a1 * x.cos() + a2 * (2.0 * x + ph).sin()).exp()).unwrap();
    let s = RealField::from_fn(g, |x| hbar * wind * x + b1 * x.sin() + b2 * (2.0 * x).cos()).unwrap();
    Ensemble::normalized(p, s, hbar, 1.0).unwrap()
}

pub fn random_hermitian(r: &mut impl Rng, d: usize) -> CMatrix<f64> {
    let mut m = CMatrix::zeros(d);
    for j in 0..d {
        m[(j, j)] = C::new(r.gen_range(-2.0..2.0), 0.0);
        for k in j + 1..d {
            let z = C::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
            m[(j, k)] = z;
            m[(k, j)] = z.conj();
        }
    }
    m
}

pub fn random_state(r: &mut impl Rng, d: usize) -> Vec<C> {
    let v: Vec<C> = (0..d).map(|_| C::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / n).collect()
}

/// `exp(A)` by scaling and squaring of a truncated Taylor series.
pub fn expm(a: &CMatrix<f64>) -> CMatrix<f64> {
    let norm = a.row_sum_norm();
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = a.scale(0.5f64.powi(squarings as i32));
    let d = a.dim();
    let mut term = CMatrix::identity(d);
    let mut sum = CMatrix::identity(d);
    for k in 1..30 {
        term = (&term * &scaled).scale(1.0 / k as f64);
        sum = sum + term.clone();
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `exp(−iHt/ħ) ψ`.
pub fn unitary_evolve(h: &CMatrix<f64>, psi: &[C], t: f64, hbar: f64) -> Vec<C> {
    let gen = CMatrix::new(h.dim(), h.data().iter().map(|z| z * C::new(0.0, -t / hbar)).collect()).unwrap();
    expm(&gen).mul_vec(psi).unwrap()
}

/// `⟨p⟩ = Σ_k ħk |ψ̂_k|² / Σ |ψ̂_k|²` from the discrete Fourier transform (periodic grids).
pub fn fft_momentum(psi: &Wavefunction<f64>) -> f64 {
    let n = psi.values().len();
    let mut buf = psi.values().to_vec();
    rustfft::FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let l = psi.grid().length();
    let (mut num, mut den) = (0.0, 0.0);
    for (j, z) in buf.iter().enumerate() {
        let m = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
        let k = TAU * m / l;
        num += psi.hbar() * k * z.norm_sqr();
        den += z.norm_sqr();
    }
    num / den
}

/// Isoperimetric gap `F − 2πe e^{−2H}` of the equal mixture of unit-variance
/// Gaussians at `±a·σ` (scaled by `σ`), by fine quadrature of the closed-form
/// density and score. Returns the gap in units of `1/σ²`.
pub fn bimodal_gap_oracle(a: f64) -> f64 {
    let n = 400_001;
    let (lo, hi) = (-a - 14.0, a + 14.0);
    let h = (hi - lo) / (n - 1) as f64;
    let (mut fisher, mut ent) = (0.0, 0.0);
    for i in 0..n {
        let x = lo + h * i as f64;
        let g1 = (-(x - a).powi(2) / 2.0).exp();
        let g2 = (-(x + a).powi(2) / 2.0).exp();
        let p = 0.5 * (g1 + g2) / (2.0 * PI).sqrt();
        let dp = 0.5 * (-(x - a) * g1 - (x + a) * g2) / (2.0 * PI).sqrt();
        let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        if p > 0.0 {
            fisher += w * h * dp * dp / p;
            ent -= w * h * p * p.ln();
        }
    }
    fisher - TAU * 1f64.exp() * (-2.0 * ent).exp()
}
