use crate::error::{numerical, Result};
use crate::fields::{Ensemble, RealField};
use crate::Real;

/// Which canonical field a functional derivative is taken with respect to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conjugate {
    P,
    S,
}

/// Finite-difference estimate of `δF/δP` or `δF/δS`.
///
/// Each sample `i` is perturbed by `±ε` and the central difference is divided
/// by `2 ε w_i`, with `ε = 1e-6 · max(1, ‖f‖∞)` and `w_i` the quadrature
/// weight of the sample (`dx`, or `dx/2` at the ends of a reflecting grid). Perturbed ensembles are built
/// unchecked, so `F` sees slightly unnormalized densities.
pub fn numeric_functional_derivative<T, F>(
    functional: F,
    ensemble: &Ensemble<T>,
    which: Conjugate,
) -> Result<RealField<T>>
where
    T: Real,
    F: Fn(&Ensemble<T>) -> Result<T>,
{
    let field = match which {
        Conjugate::P => ensemble.p(),
        Conjugate::S => ensemble.s(),
    };
    let eps = T::lit(1e-6) * field.max_abs().max(T::one());
    let grid = *ensemble.grid();
    let mut work = field.values().to_vec();
    let mut out = Vec::with_capacity(work.len());

    let eval = |values: &[T]| -> Result<T> {
        let f = RealField::new(grid, values.to_vec())?;
        let probe = match which {
            Conjugate::P => ensemble.with_fields(f, ensemble.s().clone())?,
            Conjugate::S => ensemble.with_fields(ensemble.p().clone(), f)?,
        };
        let v = functional(&probe)?;
        if !v.is_finite() {
            return Err(numerical!("functional is not finite on a perturbed ensemble"));
        }
        Ok(v)
    };

    for i in 0..work.len() {
        let orig = work[i];
        work[i] = orig + eps;
        let plus = eval(&work)?;
        work[i] = orig - eps;
        let minus = eval(&work)?;
        work[i] = orig;
        out.push((plus - minus) / (T::lit(2.0) * eps * grid.weight(i)));
    }
    RealField::new(grid, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{integrate, Grid1D};

    #[test]
    fn linear_functional_has_unit_derivative() {
        let g = Grid1D::<f64>::periodic(0.0, 1.0, 32).unwrap();
        let p = RealField::constant(g, 1.0);
        let e = Ensemble::new(p, RealField::zeros(g), 1.0, 1.0).unwrap();
        let d = numeric_functional_derivative(|e| Ok(integrate(e.p())), &e, Conjugate::P).unwrap();
        for v in d.values() {
            assert!((v - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn non_finite_functional_is_numerical_error() {
        let g = Grid1D::<f64>::periodic(0.0, 1.0, 16).unwrap();
        let e = Ensemble::new(RealField::constant(g, 1.0), RealField::zeros(g), 1.0, 1.0).unwrap();
        let r = numeric_functional_derivative(|_| Ok(f64::NAN), &e, Conjugate::S);
        assert!(matches!(r, Err(crate::Error::Numerical(_))));
    }
}
