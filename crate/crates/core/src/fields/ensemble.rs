use num_complex::Complex;

use crate::error::{domain, numerical, structural, Result};
use crate::fields::ops::integrate_slice;
use crate::fields::{integrate, Grid1D, RealField};
use crate::Real;

/// Relative density (fraction of `max P`) below which `S` is treated as undefined.
pub const DEFAULT_SUPPORT_FLOOR: f64 = 1e-12;

/// Normalization slack accepted by the checked constructors.
pub const NORM_TOLERANCE: f64 = 1e-8;

/// Canonical state `(P, S)` of a continuous ensemble.
///
/// `S` only matters up to a global additive constant.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble<T> {
    p: RealField<T>,
    s: RealField<T>,
    hbar: T,
    mass: T,
}

impl<T: Real> Ensemble<T> {
    /// Checked constructor: `P ≥ 0` and `∫P dx = 1` within [`NORM_TOLERANCE`].
    pub fn new(p: RealField<T>, s: RealField<T>, hbar: T, mass: T) -> Result<Self> {
        let e = Self::from_raw(p, s, hbar, mass)?;
        if let Some(i) = e.p.values().iter().position(|v| *v < T::zero()) {
            return Err(domain!("negative density {} at index {i}", e.p[i]));
        }
        let norm = e.norm();
        if (norm - T::one()).abs() > T::lit(NORM_TOLERANCE) {
            return Err(domain!("density integrates to {norm}, expected 1"));
        }
        Ok(e)
    }

    /// Rescales a non-negative `P` to unit integral.
    pub fn normalized(p: RealField<T>, s: RealField<T>, hbar: T, mass: T) -> Result<Self> {
        let norm = integrate(&p);
        if norm <= T::zero() {
            return Err(domain!("density has non-positive integral {norm}"));
        }
        Self::new(p.scale(norm.recip())?, s, hbar, mass)
    }

    /// Constructor that only checks grids and constants.
    ///
    /// Used for intermediate integrator states and for homogeneity probes
    /// with scaled (unnormalized) densities.
    pub fn from_raw(p: RealField<T>, s: RealField<T>, hbar: T, mass: T) -> Result<Self> {
        p.check_same_grid(&s)?;
        if !(hbar > T::zero() && hbar.is_finite()) {
            return Err(domain!("hbar must be positive, got {hbar}"));
        }
        if !(mass > T::zero() && mass.is_finite()) {
            return Err(domain!("mass must be positive, got {mass}"));
        }
        Ok(Self { p, s, hbar, mass })
    }

    #[inline]
    pub fn p(&self) -> &RealField<T> {
        &self.p
    }

    #[inline]
    pub fn s(&self) -> &RealField<T> {
        &self.s
    }

    #[inline]
    pub fn hbar(&self) -> T {
        self.hbar
    }

    #[inline]
    pub fn mass(&self) -> T {
        self.mass
    }

    #[inline]
    pub fn grid(&self) -> &Grid1D<T> {
        self.p.grid()
    }

    pub fn norm(&self) -> T {
        integrate(&self.p)
    }

    pub fn with_fields(&self, p: RealField<T>, s: RealField<T>) -> Result<Self> {
        Self::from_raw(p, s, self.hbar, self.mass)
    }

    pub fn with_hbar(&self, hbar: T) -> Result<Self> {
        Self::from_raw(self.p.clone(), self.s.clone(), hbar, self.mass)
    }

    /// Same ensemble with `S → S + c`.
    pub fn shift_phase(&self, c: T) -> Result<Self> {
        self.with_fields(self.p.clone(), self.s.add_constant(c)?)
    }

    /// Support mask: `P > floor · max P`.
    pub fn support(&self, floor: T) -> Vec<bool> {
        support_mask(self.p.values(), floor)
    }

    pub fn to_wavefunction(&self) -> Wavefunction<T> {
        let values = self
            .p
            .values()
            .iter()
            .zip(self.s.values())
            .map(|(&p, &s)| Complex::from_polar(p.max(T::zero()).sqrt(), s / self.hbar))
            .collect();
        Wavefunction { grid: *self.grid(), values, hbar: self.hbar, mass: self.mass }
    }
}

pub(crate) fn support_mask<T: Real>(p: &[T], floor: T) -> Vec<bool> {
    let max = p.iter().copied().fold(T::zero(), T::max);
    let cut = floor * max;
    p.iter().map(|&v| v > cut && v > T::zero()).collect()
}

/// Complex amplitude `ψ = √P e^{iS/ħ}` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Wavefunction<T> {
    grid: Grid1D<T>,
    values: Vec<Complex<T>>,
    hbar: T,
    mass: T,
}

impl<T: Real> Wavefunction<T> {
    /// Checked constructor: finite entries and unit norm within [`NORM_TOLERANCE`].
    pub fn new(grid: Grid1D<T>, values: Vec<Complex<T>>, hbar: T, mass: T) -> Result<Self> {
        let psi = Self::from_raw(grid, values, hbar, mass)?;
        let norm = psi.norm();
        if (norm - T::one()).abs() > T::lit(NORM_TOLERANCE) {
            return Err(domain!("wavefunction norm is {norm}, expected 1"));
        }
        Ok(psi)
    }

    /// Rescales to unit norm. Fails on the zero vector.
    pub fn normalized(grid: Grid1D<T>, values: Vec<Complex<T>>, hbar: T, mass: T) -> Result<Self> {
        let psi = Self::from_raw(grid, values, hbar, mass)?;
        psi.into_normalized()
    }

    pub fn from_fn(grid: Grid1D<T>, hbar: T, mass: T, f: impl Fn(T) -> Complex<T>) -> Result<Self> {
        Self::normalized(grid, grid.coordinates().into_iter().map(f).collect(), hbar, mass)
    }

    pub fn from_raw(grid: Grid1D<T>, values: Vec<Complex<T>>, hbar: T, mass: T) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(structural!(
                "wavefunction has {} samples, grid has {}",
                values.len(),
                grid.len()
            ));
        }
        if let Some(i) = values.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(numerical!("non-finite amplitude at index {i}"));
        }
        if !(hbar > T::zero() && mass > T::zero()) {
            return Err(domain!("hbar and mass must be positive"));
        }
        Ok(Self { grid, values, hbar, mass })
    }

    pub fn into_normalized(mut self) -> Result<Self> {
        let norm = self.norm();
        if norm <= T::zero() {
            return Err(structural!("cannot normalize the zero wavefunction"));
        }
        let k = norm.sqrt().recip();
        for z in &mut self.values {
            *z = *z * k;
        }
        Ok(self)
    }

    #[inline]
    pub fn grid(&self) -> &Grid1D<T> {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    #[inline]
    pub fn hbar(&self) -> T {
        self.hbar
    }

    #[inline]
    pub fn mass(&self) -> T {
        self.mass
    }

    pub(crate) fn with_values(&self, values: Vec<Complex<T>>) -> Self {
        Self { grid: self.grid, values, hbar: self.hbar, mass: self.mass }
    }

    pub fn density(&self) -> RealField<T> {
        RealField::from_vec_unchecked(self.grid, self.values.iter().map(|z| z.norm_sqr()).collect())
    }

    pub fn norm(&self) -> T {
        let dens: Vec<T> = self.values.iter().map(|z| z.norm_sqr()).collect();
        integrate_slice(&self.grid, &dens)
    }

    /// `∫ ψ₁* ψ₂ dx` with the grid quadrature.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.grid != other.grid {
            return Err(structural!("wavefunctions live on different grids"));
        }
        let mut acc = Complex::new(T::zero(), T::zero());
        for (i, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            acc = acc + a.conj() * b * self.grid.weight(i);
        }
        Ok(acc)
    }

    /// Global phase factor `e^{iα} ψ`.
    pub fn with_global_phase(&self, alpha: T) -> Self {
        let f = Complex::from_polar(T::one(), alpha);
        self.with_values(self.values.iter().map(|z| z * f).collect())
    }

    /// Normalized `aψ₁ + bψ₂`.
    pub fn superpose(a: Complex<T>, psi1: &Self, b: Complex<T>, psi2: &Self) -> Result<Self> {
        if psi1.grid != psi2.grid {
            return Err(structural!("wavefunctions live on different grids"));
        }
        let values = psi1.values.iter().zip(&psi2.values).map(|(x, y)| a * x + b * y).collect();
        let raw = Self::from_raw(psi1.grid, values, psi1.hbar, psi1.mass)?;
        if raw.norm() <= T::epsilon() * T::epsilon() {
            return Err(domain!("superposition vanishes identically"));
        }
        raw.into_normalized()
    }

    /// Polar decomposition with the default support floor.
    pub fn to_ensemble(&self) -> Result<Ensemble<T>> {
        self.to_ensemble_with_floor(T::lit(DEFAULT_SUPPORT_FLOOR))
    }

    /// Polar decomposition `P = |ψ|²`, `S = ħ · unwrapped arg ψ`.
    ///
    /// The phase is pinned to zero at the most probable sample and unwrapped
    /// outwards so that neighbouring supported samples differ by at most π.
    /// Samples with `P ≤ floor · max P` copy the phase of the nearest supported
    /// sample.
    pub fn to_ensemble_with_floor(&self, floor: T) -> Result<Ensemble<T>> {
        let p: Vec<T> = self.values.iter().map(|z| z.norm_sqr()).collect();
        let support = support_mask(&p, floor);
        let Some(anchor) = argmax(&p) else {
            return Err(structural!("wavefunction vanishes identically"));
        };
        if !support[anchor] {
            return Err(structural!("wavefunction vanishes identically"));
        }
        let n = p.len();
        let tau = T::TAU();
        let mut phase = vec![T::zero(); n];
        let arg0 = self.values[anchor].arg();
        let sweep = |range: &mut dyn Iterator<Item = usize>, phase: &mut Vec<T>| {
            let mut prev_arg = arg0;
            let mut prev_phase = T::zero();
            for i in range {
                if !support[i] {
                    continue;
                }
                let a = self.values[i].arg();
                prev_phase += (a - prev_arg).wrap_centered(tau);
                prev_arg = a;
                phase[i] = prev_phase;
            }
        };
        sweep(&mut (anchor + 1..n), &mut phase);
        sweep(&mut (0..anchor).rev(), &mut phase);

        let supported: Vec<usize> = (0..n).filter(|&i| support[i]).collect();
        for i in 0..n {
            if !support[i] {
                phase[i] = phase[nearest_supported(&self.grid, &supported, i)];
            }
        }
        let s = phase.into_iter().map(|v| v * self.hbar).collect();
        Ensemble::from_raw(
            RealField::new(self.grid, p)?,
            RealField::new(self.grid, s)?,
            self.hbar,
            self.mass,
        )
    }
}

/// Nearest entry of the sorted, non-empty `supported` list to `i`; ties go to the lower index.
fn nearest_supported<T: Real>(grid: &Grid1D<T>, supported: &[usize], i: usize) -> usize {
    let pos = supported.partition_point(|&j| j < i);
    let mut candidates = Vec::with_capacity(4);
    if pos < supported.len() {
        candidates.push(supported[pos]);
    }
    if pos > 0 {
        candidates.push(supported[pos - 1]);
    }
    if grid.is_periodic() {
        candidates.push(supported[0]);
        candidates.push(supported[supported.len() - 1]);
    }
    candidates
        .into_iter()
        .min_by_key(|&j| (grid.index_distance(i, j), j))
        .expect("at least one supported sample")
}

fn argmax<T: Real>(v: &[T]) -> Option<usize> {
    let mut best: Option<(usize, T)> = None;
    for (i, &x) in v.iter().enumerate() {
        if x > T::zero() && best.map_or(true, |(_, b)| x > b) {
            best = Some((i, x));
        }
    }
    best.map(|(i, _)| i)
}
