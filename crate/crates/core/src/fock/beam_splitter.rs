//! Exact beam-splitter evolution on the truncated two-mode Fock space.
//!
//! The unitary `exp(theta (a^dag b - a b^dag))`, `theta = arccos(sqrt(eta))`,
//! conserves total photon number, so it is built and applied block by
//! block in the total-photon sectors. Blocks whose total photon number
//! fits inside the truncation are exact; higher blocks are the unitary
//! generated by the truncated generator, which keeps the evolution
//! trace-preserving.

use super::{C64, FockDensityMatrix};
use crate::error::{Error, Result};

use nalgebra::DMatrix;

/// Two-mode beam-splitter unitary stored as total-photon-number blocks.
#[derive(Debug, Clone)]
pub struct BeamSplitter {
    dim: usize,
    eta: f64,
    /// `blocks[n]` acts on the span of `|n1, n - n1>`; the basis runs over
    /// `n1 = max(0, n - dim + 1) ..= min(n, dim - 1)`.
    blocks: Vec<DMatrix<C64>>,
}

impl BeamSplitter {
    pub fn new(eta: f64, dim: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) || !eta.is_finite() {
            return Err(Error::Domain(format!(
                "transmissivity must lie in [0, 1], got {eta}"
            )));
        }
        if dim < 2 {
            return Err(Error::Domain(format!(
                "beam splitter needs dim >= 2, got {dim}"
            )));
        }
        let theta = eta.sqrt().min(1.0).acos();
        let mut blocks = Vec::with_capacity(2 * dim - 1);
        for n_total in 0..=(2 * (dim - 1)) {
            blocks.push(block_unitary(n_total, dim, theta));
        }
        Ok(BeamSplitter { dim, eta, blocks })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Inclusive range of `n1` spanned by the total-photon block.
    pub fn block_range(&self, n_total: usize) -> (usize, usize) {
        let lo = n_total.saturating_sub(self.dim - 1);
        let hi = n_total.min(self.dim - 1);
        (lo, hi)
    }

    pub fn block(&self, n_total: usize) -> &DMatrix<C64> {
        &self.blocks[n_total]
    }

    /// Dense `dim^2 x dim^2` unitary in the `n1 * dim + n2` basis. Meant
    /// for verification at small dimensions.
    pub fn to_dense(&self) -> DMatrix<C64> {
        let d = self.dim;
        let mut u = DMatrix::zeros(d * d, d * d);
        for n_total in 0..=(2 * (d - 1)) {
            let (lo, hi) = self.block_range(n_total);
            let b = &self.blocks[n_total];
            for (r, n1) in (lo..=hi).enumerate() {
                for (c, m1) in (lo..=hi).enumerate() {
                    u[(n1 * d + (n_total - n1), m1 * d + (n_total - m1))] = b[(r, c)];
                }
            }
        }
        u
    }

    /// Applies `U rho U^dag` to a two-mode state.
    pub fn apply_joint(&self, rho: &FockDensityMatrix) -> Result<FockDensityMatrix> {
        if rho.n_modes() != 2 {
            return Err(Error::DimensionMismatch(
                "apply_joint needs a two-mode state".into(),
            ));
        }
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "state dim {} does not match beam splitter dim {}",
                rho.dim(),
                self.dim
            )));
        }
        let d = self.dim;
        let m = rho.matrix();
        let mut out = DMatrix::zeros(d * d, d * d);
        for bn in 0..=(2 * (d - 1)) {
            let (lo_n, hi_n) = self.block_range(bn);
            for bm in 0..=(2 * (d - 1)) {
                let (lo_m, hi_m) = self.block_range(bm);
                let sub = DMatrix::from_fn(hi_n - lo_n + 1, hi_m - lo_m + 1, |r, c| {
                    let n1 = lo_n + r;
                    let m1 = lo_m + c;
                    m[(n1 * d + (bn - n1), m1 * d + (bm - m1))]
                });
                let evolved = &self.blocks[bn] * sub * self.blocks[bm].adjoint();
                for (r, n1) in (lo_n..=hi_n).enumerate() {
                    for (c, m1) in (lo_m..=hi_m).enumerate() {
                        out[(n1 * d + (bn - n1), m1 * d + (bm - m1))] = evolved[(r, c)];
                    }
                }
            }
        }
        Ok(FockDensityMatrix::from_raw(out, d, 2, rho.tail_mass()))
    }

    /// Mixes two independent single-mode states and returns the reduced
    /// outputs `(rho_c, rho_d)` of the transmitted and reflected arms
    /// without materializing the joint matrix.
    pub fn propagate(
        &self,
        rho_a: &FockDensityMatrix,
        rho_b: &FockDensityMatrix,
    ) -> Result<(FockDensityMatrix, FockDensityMatrix)> {
        if rho_a.n_modes() != 1 || rho_b.n_modes() != 1 {
            return Err(Error::DimensionMismatch(
                "propagate takes single-mode inputs".into(),
            ));
        }
        if rho_a.dim() != self.dim || rho_b.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "input dims ({}, {}) do not match beam splitter dim {}",
                rho_a.dim(),
                rho_b.dim(),
                self.dim
            )));
        }
        if is_vacuum(rho_a) {
            return Ok(self.propagate_vacuum_a(rho_b));
        }
        let d = self.dim;
        let ma = rho_a.matrix();
        let mb = rho_b.matrix();
        let tail = rho_a.tail_mass() + rho_b.tail_mass();
        let mut rho_c = DMatrix::<C64>::zeros(d, d);
        let mut rho_d = DMatrix::<C64>::zeros(d, d);
        for bn in 0..=(2 * (d - 1)) {
            let (lo_n, hi_n) = self.block_range(bn);
            for bm in 0..=(2 * (d - 1)) {
                let (lo_m, hi_m) = self.block_range(bm);
                let sub = DMatrix::from_fn(hi_n - lo_n + 1, hi_m - lo_m + 1, |r, c| {
                    let n1 = lo_n + r;
                    let m1 = lo_m + c;
                    ma[(n1, m1)] * mb[(bn - n1, bm - m1)]
                });
                let evolved = &self.blocks[bn] * sub * self.blocks[bm].adjoint();
                // Trace over the shared photon number of the other arm.
                let k_max = bn.min(bm).min(d - 1);
                for k in 0..=k_max {
                    let (i, j) = (bn - k, bm - k);
                    if i < d && j < d {
                        rho_c[(i, j)] += evolved[(i - lo_n, j - lo_m)];
                    }
                }
                for t in lo_n.max(lo_m)..=k_max {
                    let (p, q) = (bn - t, bm - t);
                    if p < d && q < d {
                        rho_d[(p, q)] += evolved[(t - lo_n, t - lo_m)];
                    }
                }
            }
        }
        Ok((
            FockDensityMatrix::from_raw(rho_c, d, 1, tail),
            FockDensityMatrix::from_raw(rho_d, d, 1, tail),
        ))
    }

    /// Fast path for vacuum on the `a` port: the joint input touches only
    /// the first column of each block, so the outputs assemble directly
    /// from the `|0, n>` columns of the block unitaries.
    fn propagate_vacuum_a(
        &self,
        rho_b: &FockDensityMatrix,
    ) -> (FockDensityMatrix, FockDensityMatrix) {
        let d = self.dim;
        let mb = rho_b.matrix();
        let cols: Vec<_> = (0..d).map(|n| self.blocks[n].column(0)).collect();
        let tail = rho_b.tail_mass();
        let mut rho_c = DMatrix::<C64>::zeros(d, d);
        let mut rho_d = DMatrix::<C64>::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let mut acc_c = C64::new(0.0, 0.0);
                let mut acc_d = C64::new(0.0, 0.0);
                for k in 0..(d - i.max(j)) {
                    acc_c += mb[(i + k, j + k)] * cols[i + k][i] * cols[j + k][j].conj();
                    acc_d += mb[(k + i, k + j)] * cols[k + i][k] * cols[k + j][k].conj();
                }
                rho_c[(i, j)] = acc_c;
                rho_d[(i, j)] = acc_d;
            }
        }
        (
            FockDensityMatrix::from_raw(rho_c, d, 1, tail),
            FockDensityMatrix::from_raw(rho_d, d, 1, tail),
        )
    }
}

fn is_vacuum(rho: &FockDensityMatrix) -> bool {
    let m = rho.matrix();
    if (m[(0, 0)] - C64::new(1.0, 0.0)).norm() > 1e-15 {
        return false;
    }
    m.iter().map(|z| z.norm_sqr()).sum::<f64>() - m[(0, 0)].norm_sqr() < 1e-30
}

/// `exp(theta G)` on one total-photon sector, where `G = a^dag b - a b^dag`
/// restricted to the sector is a real antisymmetric tridiagonal matrix.
fn block_unitary(n_total: usize, dim: usize, theta: f64) -> DMatrix<C64> {
    let lo = n_total.saturating_sub(dim - 1);
    let hi = n_total.min(dim - 1);
    let size = hi - lo + 1;
    if size == 1 || theta == 0.0 {
        return DMatrix::identity(size, size);
    }
    // H = -iG is Hermitian; U = exp(i theta H).
    let mut h = DMatrix::<C64>::zeros(size, size);
    for (r, n1) in (lo..hi).enumerate() {
        let g = (((n1 + 1) * (n_total - n1)) as f64).sqrt();
        h[(r + 1, r)] = C64::new(0.0, -g);
        h[(r, r + 1)] = C64::new(0.0, g);
    }
    let eig = h.symmetric_eigen();
    let phases = eig.eigenvalues.map(|x| C64::from_polar(1.0, theta * x));
    &eig.eigenvectors * DMatrix::from_diagonal(&phases) * eig.eigenvectors.adjoint()
}

/// One-shot convenience wrapper around [`BeamSplitter::propagate`].
pub fn propagate(
    rho_a: &FockDensityMatrix,
    rho_b: &FockDensityMatrix,
    eta: f64,
) -> Result<(FockDensityMatrix, FockDensityMatrix)> {
    if rho_a.dim() != rho_b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "input dims must match, got {} and {}",
            rho_a.dim(),
            rho_b.dim()
        )));
    }
    let bs = BeamSplitter::new(eta, rho_a.dim())?;
    bs.propagate(rho_a, rho_b)
}
