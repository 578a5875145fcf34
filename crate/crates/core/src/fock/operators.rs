//! Truncated single-mode displacement and squeeze unitaries.
//!
//! Both are exponentials of anti-Hermitian generators restricted to the
//! truncated space, so they are exactly unitary there (they differ from
//! the projections of the infinite-dimensional operators near the
//! cutoff). Conjugating a state by them preserves its spectrum exactly,
//! which the entropy-constrained searches rely on.

use super::C64;
use crate::error::{Error, Result};

use nalgebra::DMatrix;

fn exp_anti_hermitian(gen: &DMatrix<C64>) -> DMatrix<C64> {
    // gen is anti-Hermitian; -i*gen is Hermitian with real spectrum.
    let h = gen.map(|z| C64::new(z.im, -z.re));
    let eig = h.symmetric_eigen();
    let phases = eig.eigenvalues.map(|x| C64::from_polar(1.0, x));
    &eig.eigenvectors * DMatrix::from_diagonal(&phases) * eig.eigenvectors.adjoint()
}

/// `exp(alpha a^dag - alpha* a)` on the truncated space.
pub fn displacement_operator(alpha: C64, dim: usize) -> Result<DMatrix<C64>> {
    if dim < 2 {
        return Err(Error::Domain(format!("dim must be >= 2, got {dim}")));
    }
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(Error::Domain("displacement must be finite".into()));
    }
    let mut gen = DMatrix::zeros(dim, dim);
    for n in 0..dim - 1 {
        let root = ((n + 1) as f64).sqrt();
        gen[(n + 1, n)] += alpha * C64::new(root, 0.0);
        gen[(n, n + 1)] -= alpha.conj() * C64::new(root, 0.0);
    }
    Ok(exp_anti_hermitian(&gen))
}

/// `exp((xi* a^2 - xi (a^dag)^2) / 2)` on the truncated space.
pub fn squeeze_operator(xi: C64, dim: usize) -> Result<DMatrix<C64>> {
    if dim < 2 {
        return Err(Error::Domain(format!("dim must be >= 2, got {dim}")));
    }
    if !xi.re.is_finite() || !xi.im.is_finite() {
        return Err(Error::Domain("squeeze parameter must be finite".into()));
    }
    let mut gen = DMatrix::zeros(dim, dim);
    for n in 0..dim.saturating_sub(2) {
        let root = (((n + 1) * (n + 2)) as f64).sqrt();
        gen[(n + 2, n)] -= xi * C64::new(0.5 * root, 0.0);
        gen[(n, n + 2)] += xi.conj() * C64::new(0.5 * root, 0.0);
    }
    Ok(exp_anti_hermitian(&gen))
}
