//! Williamson symplectic diagonalization of annihilation-operator
//! correlation matrices.
//!
//! The factorization produced is `R = S L S^dag` with
//! `L = diag(l_1 + 1, ..., l_n + 1, l_1, ..., l_n)` and
//! `S^dag Q S = S Q S^dag = Q`, `Q = diag(I, -I)`.
//!
//! Route: convert `R` to the real symmetrized quadrature covariance `V`,
//! run Williamson there (symplectic eigenvalues are the moduli of the
//! eigenvalues of `i Omega V`), assemble the real symplectic basis from
//! the eigenvectors, and map back to annihilation coordinates. `S` is not
//! unique when symplectic eigenvalues are degenerate; only the
//! decomposition identities are guaranteed.

use super::{q_matrix, GaussianState, C64};
use crate::error::{Error, Result};

use nalgebra::{DMatrix, DVector};

/// Result of [`williamson`]: the symplectic matrix and the symplectic
/// eigenvalues, sorted descending.
#[derive(Debug, Clone)]
pub struct SymplecticDecomposition {
    s: DMatrix<C64>,
    lambdas: Vec<f64>,
}

impl SymplecticDecomposition {
    pub fn s(&self) -> &DMatrix<C64> {
        &self.s
    }

    /// Symplectic eigenvalues (mean thermal photon numbers of the normal
    /// modes), sorted descending.
    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn n_modes(&self) -> usize {
        self.lambdas.len()
    }

    /// `L = diag(l+1, ..., l)`.
    pub fn lambda_matrix(&self) -> DMatrix<C64> {
        let n = self.lambdas.len();
        DMatrix::from_fn(2 * n, 2 * n, |i, j| {
            if i != j {
                C64::new(0.0, 0.0)
            } else if i < n {
                C64::new(self.lambdas[i] + 1.0, 0.0)
            } else {
                C64::new(self.lambdas[i - n], 0.0)
            }
        })
    }

    /// `S L S^dag`, for residual checks against the original matrix.
    pub fn reconstruct(&self) -> DMatrix<C64> {
        &self.s * self.lambda_matrix() * self.s.adjoint()
    }

    /// Frobenius residual `||R - S L S^dag||`.
    pub fn reconstruction_residual(&self, state: &GaussianState) -> f64 {
        (state.corr() - self.reconstruct()).norm()
    }

    /// Frobenius residual of the symplectic condition, the worse of
    /// `||S^dag Q S - Q||` and `||S Q S^dag - Q||`.
    pub fn symplectic_residual(&self) -> f64 {
        let n = self.lambdas.len();
        let q = q_matrix(n);
        let r1 = (self.s.adjoint() * &q * &self.s - &q).norm();
        let r2 = (&self.s * &q * self.s.adjoint() - &q).norm();
        r1.max(r2)
    }
}

/// `[a; a^dag] = U [x; p]` block transformation, `U = [[I, iI], [I, -iI]]`.
fn u_matrix(n: usize) -> DMatrix<C64> {
    DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let (bi, bj) = (i / n, j / n);
        if i % n != j % n {
            C64::new(0.0, 0.0)
        } else {
            match (bi, bj) {
                (0, 0) | (1, 0) => C64::new(1.0, 0.0),
                (0, 1) => C64::new(0.0, 1.0),
                (1, 1) => C64::new(0.0, -1.0),
                _ => unreachable!(),
            }
        }
    })
}

/// Real symplectic form in xxpp ordering, `[[0, I], [-I, 0]]`.
fn omega_matrix(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if i < n && j == i + n {
            1.0
        } else if i >= n && j == i - n {
            -1.0
        } else {
            0.0
        }
    })
}

/// Quadrature covariance `V` from the annihilation correlation matrix:
/// `V = (1/4) U^dag (R - diag(I/2, -I/2)) U`, real for a valid `R`.
fn quadrature_covariance(state: &GaussianState) -> Result<DMatrix<f64>> {
    let n = state.n_modes();
    let u = u_matrix(n);
    let mut shifted = state.corr().clone();
    for i in 0..n {
        shifted[(i, i)] -= C64::new(0.5, 0.0);
        shifted[(n + i, n + i)] += C64::new(0.5, 0.0);
    }
    let v_c = u.adjoint() * shifted * &u * C64::new(0.25, 0.0);
    let imag_norm: f64 = v_c.iter().map(|z| z.im * z.im).sum::<f64>().sqrt();
    if imag_norm > 1e-9 * v_c.norm().max(1.0) {
        return Err(Error::InvalidState(format!(
            "quadrature covariance has imaginary residue {imag_norm:.3e}"
        )));
    }
    // Symmetrize to wash out rounding.
    let v = v_c.map(|z| z.re);
    Ok((&v + v.transpose()) * 0.5)
}

/// Williamson decomposition of a state's correlation matrix.
///
/// Fails with `InvalidState` if the matrix violates Hermiticity, the
/// block structure, or positivity beyond 1e-10 (relative), or if the
/// underlying covariance is singular.
pub fn williamson(state: &GaussianState) -> Result<SymplecticDecomposition> {
    state.validate()?;
    let n = state.n_modes();

    let v = quadrature_covariance(state)?;
    let scale = v.norm().max(1.0);

    // V^{1/2} via the real symmetric eigendecomposition.
    let eig_v = v.clone().symmetric_eigen();
    let min_ev = eig_v.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_ev <= 1e-12 * scale {
        return Err(Error::InvalidState(format!(
            "quadrature covariance is singular or indefinite: min eigenvalue {min_ev:.3e}"
        )));
    }
    let sqrt_vals = eig_v.eigenvalues.map(f64::sqrt);
    let v_half = &eig_v.eigenvectors
        * DMatrix::from_diagonal(&sqrt_vals)
        * eig_v.eigenvectors.transpose();

    // Antisymmetric core A = V^{1/2} Omega V^{1/2}; i*A is Hermitian with
    // eigenvalues +-nu_j.
    let omega = omega_matrix(n);
    let a = &v_half * &omega * &v_half;
    let h = DMatrix::from_fn(2 * n, 2 * n, |i, j| C64::new(0.0, a[(i, j)]));
    let eig_h = h.symmetric_eigen();

    // Take the n largest (positive) eigenvalues with their eigenvectors.
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&i, &j| {
        eig_h.eigenvalues[j]
            .partial_cmp(&eig_h.eigenvalues[i])
            .unwrap()
    });

    let mut nus = Vec::with_capacity(n);
    let mut o = DMatrix::<f64>::zeros(2 * n, 2 * n);
    let sqrt2 = std::f64::consts::SQRT_2;
    for (k, &idx) in order.iter().take(n).enumerate() {
        let nu = eig_h.eigenvalues[idx];
        if nu <= 1e-14 * scale {
            return Err(Error::InvalidState(format!(
                "non-positive symplectic spectrum: nu = {nu:.3e}"
            )));
        }
        nus.push(nu);
        let u_vec = eig_h.eigenvectors.column(idx);
        // u = (x + i y)/sqrt(2); columns [x_1..x_n, -y_1..-y_n] make
        // O^T A O = Omega D with D = diag(nu, nu).
        for row in 0..2 * n {
            o[(row, k)] = sqrt2 * u_vec[row].re;
            o[(row, n + k)] = -sqrt2 * u_vec[row].im;
        }
    }

    // S_q = V^{1/2} O D^{-1/2}; D = diag(nu_1..nu_n, nu_1..nu_n).
    let d_inv_sqrt = DVector::from_fn(2 * n, |i, _| 1.0 / nus[i % n].sqrt());
    let s_q = &v_half * &o * DMatrix::from_diagonal(&d_inv_sqrt);

    // Back to annihilation coordinates: S = U S_q U^dag / 2.
    let u = u_matrix(n);
    let s_q_c = s_q.map(|x| C64::new(x, 0.0));
    let s = &u * s_q_c * u.adjoint() * C64::new(0.5, 0.0);

    // nu = (2 lambda + 1)/4  =>  lambda = 2 nu - 1/2.
    let mut lambdas = Vec::with_capacity(n);
    for &nu in &nus {
        let lambda = 2.0 * nu - 0.5;
        if lambda < -1e-9 {
            return Err(Error::InvalidState(format!(
                "symplectic eigenvalue {lambda:.3e} below the physical range"
            )));
        }
        lambdas.push(lambda.max(0.0));
    }

    Ok(SymplecticDecomposition { s, lambdas })
}
