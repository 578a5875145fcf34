//! Deterministic random generators for unitaries, symplectic matrices and
//! valid Gaussian states. Used by the entropy-minimization search and by
//! the property tests.

use super::{GaussianState, C64};
use crate::error::Result;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Haar-ish random unitary from the QR decomposition of a Ginibre matrix.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> DMatrix<C64> {
    let ginibre = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im)
    });
    let qr = ginibre.qr();
    let q = qr.q();
    let r = qr.r();
    // Fix the column phases so the distribution does not depend on the QR
    // sign conventions.
    let mut q = q;
    for j in 0..n {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Passive (photon-number conserving) symplectic `diag(W, conj(W))` from a
/// random unitary `W`.
pub fn random_passive<R: Rng>(n: usize, rng: &mut R) -> DMatrix<C64> {
    let w = random_unitary(n, rng);
    let mut s = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            s[(i, j)] = w[(i, j)];
            s[(n + i, n + j)] = w[(i, j)].conj();
        }
    }
    s
}

/// Per-mode squeezers embedded as a 2n x 2n symplectic matrix.
pub fn squeezer_symplectic(rs: &[f64], phases: &[f64]) -> DMatrix<C64> {
    let n = rs.len();
    assert_eq!(phases.len(), n);
    let mut s = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        let ch = rs[i].cosh();
        let sh = rs[i].sinh();
        s[(i, i)] = C64::new(ch, 0.0);
        s[(i, n + i)] = -C64::from_polar(sh, phases[i]);
        s[(n + i, i)] = -C64::from_polar(sh, -phases[i]);
        s[(n + i, n + i)] = C64::new(ch, 0.0);
    }
    s
}

/// Random symplectic matrix as passive * squeeze * passive (Euler form),
/// with per-mode squeeze magnitudes up to `r_max`.
pub fn random_symplectic<R: Rng>(n: usize, r_max: f64, rng: &mut R) -> DMatrix<C64> {
    let p1 = random_passive(n, rng);
    let rs: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..=r_max)).collect();
    let phases: Vec<f64> = (0..n)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect();
    let z = squeezer_symplectic(&rs, &phases);
    let p2 = random_passive(n, rng);
    p1 * z * p2
}

/// Random valid zero-mean Gaussian state built as `S L S^dag` from random
/// symplectic eigenvalues in `[0, lambda_max]`.
pub fn random_state<R: Rng>(
    n: usize,
    lambda_max: f64,
    r_max: f64,
    rng: &mut R,
) -> Result<GaussianState> {
    let lambdas: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..=lambda_max)).collect();
    let s = random_symplectic(n, r_max, rng);
    state_from_spectrum(&lambdas, &s)
}

/// Builds the state with correlation matrix `S diag(l+1, l) S^dag`.
pub fn state_from_spectrum(lambdas: &[f64], s: &DMatrix<C64>) -> Result<GaussianState> {
    let n = lambdas.len();
    let lambda = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if i != j {
            C64::new(0.0, 0.0)
        } else if i < n {
            C64::new(lambdas[i] + 1.0, 0.0)
        } else {
            C64::new(lambdas[i - n], 0.0)
        }
    });
    let corr = s * lambda * s.adjoint();
    GaussianState::from_corr(corr, DVector::zeros(n))
}
