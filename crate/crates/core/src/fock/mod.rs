//! Truncated-Fock-space density-matrix engine.
//!
//! States live in a photon-number basis cut off at `dim` levels per mode.
//! Every constructor records the probability weight the truncation
//! discarded (`tail_mass`) before renormalizing, and refuses to build
//! states whose tail exceeds the configured budget.

mod beam_splitter;
mod operators;
mod quadrature;
mod search;
mod wehrl;

pub use beam_splitter::{propagate, BeamSplitter};
pub use operators::{displacement_operator, squeeze_operator};
pub use quadrature::{coherent_region_quadrature, QuadratureConfig, QuadratureOutcome};
pub use search::{
    conjecture1_local_check, conjecture2_search, CandidateFamily, LocalCheckEntry,
    LocalCheckReport, SearchReport,
};
pub use wehrl::{wehrl_entropy_numeric, WehrlGrid};

use crate::entropy::EntropyValue;
use crate::error::{Error, Result};

use nalgebra::{Complex, DMatrix, DVector};

pub(crate) type C64 = Complex<f64>;

/// Default bound on the probability mass a truncation may discard.
pub const DEFAULT_TAIL_BUDGET: f64 = 1e-8;

/// Density matrix on a truncated Fock space of one or two modes.
///
/// Two-mode states use the row-major index `n1 * dim + n2`.
#[derive(Debug, Clone)]
pub struct FockDensityMatrix {
    dim: usize,
    n_modes: usize,
    matrix: DMatrix<C64>,
    tail_mass: f64,
}

impl FockDensityMatrix {
    /// Thermal state with mean photon number `k`, Bose-Einstein weights
    /// truncated at `dim` levels and renormalized. Uses the default tail
    /// budget.
    pub fn thermal(k: f64, dim: usize) -> Result<Self> {
        Self::thermal_with_budget(k, dim, DEFAULT_TAIL_BUDGET)
    }

    /// Thermal state with an explicit tail budget.
    pub fn thermal_with_budget(k: f64, dim: usize, budget: f64) -> Result<Self> {
        check_dim(dim)?;
        if !k.is_finite() || k < 0.0 {
            return Err(Error::Domain(format!(
                "thermal photon number must be finite and >= 0, got {k}"
            )));
        }
        let q = k / (k + 1.0);
        let tail = q.powi(dim as i32);
        if tail > budget {
            return Err(Error::Truncation(format!(
                "thermal(k = {k}) at dim {dim} discards {tail:.3e} > budget {budget:.3e}; \
                 use dim >= {}",
                suggested_thermal_dim(k, budget)
            )));
        }
        let mut probs = DVector::zeros(dim);
        let mut w = 1.0 / (k + 1.0);
        for n in 0..dim {
            probs[n] = w;
            w *= q;
        }
        let norm: f64 = probs.iter().sum();
        let matrix = DMatrix::from_fn(dim, dim, |i, j| {
            if i == j {
                C64::new(probs[i] / norm, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Ok(FockDensityMatrix { dim, n_modes: 1, matrix, tail_mass: tail })
    }

    /// Coherent state `|alpha>` as a rank-1 projector of truncated Poisson
    /// amplitudes, renormalized.
    pub fn coherent(alpha: C64, dim: usize) -> Result<Self> {
        Self::coherent_with_budget(alpha, dim, DEFAULT_TAIL_BUDGET)
    }

    pub fn coherent_with_budget(alpha: C64, dim: usize, budget: f64) -> Result<Self> {
        check_dim(dim)?;
        let (amps, tail) = coherent_amplitudes(alpha, dim);
        if tail > budget {
            return Err(Error::Truncation(format!(
                "coherent(|alpha|^2 = {:.4}) at dim {dim} discards {tail:.3e} > budget \
                 {budget:.3e}; use dim >= {}",
                alpha.norm_sqr(),
                suggested_coherent_dim(alpha)
            )));
        }
        Self::from_pure(&amps, tail)
    }

    /// Diagonal mixture with the given photon-number weights (length at
    /// most `dim`; excess weight counts toward the tail).
    pub fn diagonal(probs: &[f64], dim: usize) -> Result<Self> {
        check_dim(dim)?;
        if probs.is_empty() {
            return Err(Error::Argument("diagonal weights must be non-empty".into()));
        }
        for &p in probs {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::Domain(format!(
                    "diagonal weights must be finite and >= 0, got {p}"
                )));
            }
        }
        let total: f64 = probs.iter().sum();
        if total <= 0.0 {
            return Err(Error::Domain("diagonal weights must not all vanish".into()));
        }
        let kept: f64 = probs.iter().take(dim).sum();
        let tail = (total - kept) / total;
        if tail > DEFAULT_TAIL_BUDGET {
            return Err(Error::Truncation(format!(
                "diagonal weights place {tail:.3e} beyond level {dim}; increase dim"
            )));
        }
        let matrix = DMatrix::from_fn(dim, dim, |i, j| {
            if i == j && i < probs.len() {
                C64::new(probs[i] / kept, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Ok(FockDensityMatrix { dim, n_modes: 1, matrix, tail_mass: tail })
    }

    /// Vacuum `|0><0|`.
    pub fn vacuum(dim: usize) -> Result<Self> {
        Self::fock(0, dim)
    }

    /// Number state `|n><n|`.
    pub fn fock(n: usize, dim: usize) -> Result<Self> {
        check_dim(dim)?;
        if n >= dim {
            return Err(Error::Domain(format!(
                "Fock level {n} does not fit in dim {dim}"
            )));
        }
        let mut matrix = DMatrix::zeros(dim, dim);
        matrix[(n, n)] = C64::new(1.0, 0.0);
        Ok(FockDensityMatrix { dim, n_modes: 1, matrix, tail_mass: 0.0 })
    }

    /// Pure single-mode state from amplitudes, renormalized; `tail` is
    /// recorded as given.
    pub fn from_pure(amps: &DVector<C64>, tail: f64) -> Result<Self> {
        let dim = amps.len();
        check_dim(dim)?;
        let norm2: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if norm2 <= 0.0 {
            return Err(Error::Domain("pure-state amplitudes must not vanish".into()));
        }
        let matrix = DMatrix::from_fn(dim, dim, |i, j| amps[i] * amps[j].conj() / norm2);
        Ok(FockDensityMatrix { dim, n_modes: 1, matrix, tail_mass: tail })
    }

    /// Wraps an explicit matrix, validating Hermiticity, unit trace and
    /// positivity.
    pub fn from_matrix(matrix: DMatrix<C64>, n_modes: usize, tail_mass: f64) -> Result<Self> {
        if !(n_modes == 1 || n_modes == 2) {
            return Err(Error::Domain(format!(
                "only 1- or 2-mode states are supported, got {n_modes}"
            )));
        }
        let size = matrix.nrows();
        if matrix.ncols() != size {
            return Err(Error::DimensionMismatch("density matrix must be square".into()));
        }
        let dim = match n_modes {
            1 => size,
            _ => {
                let d = (size as f64).sqrt().round() as usize;
                if d * d != size {
                    return Err(Error::DimensionMismatch(format!(
                        "two-mode matrix size {size} is not a perfect square"
                    )));
                }
                d
            }
        };
        check_dim(dim)?;
        let herm = (&matrix - matrix.adjoint()).norm();
        if herm > 1e-12 * matrix.norm().max(1.0) {
            return Err(Error::InvalidState(format!(
                "density matrix is not Hermitian: residual {herm:.3e}"
            )));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > 1e-12 || trace.im.abs() > 1e-12 {
            return Err(Error::InvalidState(format!(
                "density matrix trace must be 1, got {trace}"
            )));
        }
        let state = FockDensityMatrix { dim, n_modes, matrix, tail_mass };
        let min = state
            .eigenvalues_raw()
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min < -1e-12 {
            return Err(Error::InvalidState(format!(
                "density matrix has eigenvalue {min:.3e} < -1e-12"
            )));
        }
        Ok(state)
    }

    pub(crate) fn from_raw(
        matrix: DMatrix<C64>,
        dim: usize,
        n_modes: usize,
        tail_mass: f64,
    ) -> Self {
        FockDensityMatrix { dim, n_modes, matrix, tail_mass }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Mean total photon number.
    pub fn mean_photon(&self) -> f64 {
        match self.n_modes {
            1 => (0..self.dim).map(|n| n as f64 * self.matrix[(n, n)].re).sum(),
            _ => {
                let d = self.dim;
                let mut total = 0.0;
                for n1 in 0..d {
                    for n2 in 0..d {
                        let idx = n1 * d + n2;
                        total += (n1 + n2) as f64 * self.matrix[(idx, idx)].re;
                    }
                }
                total
            }
        }
    }

    /// Tensor product with another single-mode state (self first).
    pub fn tensor(&self, other: &FockDensityMatrix) -> Result<FockDensityMatrix> {
        if self.n_modes != 1 || other.n_modes != 1 {
            return Err(Error::DimensionMismatch(
                "tensor products are built from single-mode states".into(),
            ));
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "tensor factors must share dim, got {} and {}",
                self.dim, other.dim
            )));
        }
        let d = self.dim;
        let matrix = DMatrix::from_fn(d * d, d * d, |r, c| {
            let (r1, r2) = (r / d, r % d);
            let (c1, c2) = (c / d, c % d);
            self.matrix[(r1, c1)] * other.matrix[(r2, c2)]
        });
        Ok(FockDensityMatrix {
            dim: d,
            n_modes: 2,
            matrix,
            tail_mass: self.tail_mass + other.tail_mass,
        })
    }

    /// Partial trace of a two-mode state; `keep = 0` keeps the first mode.
    pub fn partial_trace(&self, keep: usize) -> Result<FockDensityMatrix> {
        if self.n_modes != 2 {
            return Err(Error::DimensionMismatch(
                "partial trace needs a two-mode state".into(),
            ));
        }
        let d = self.dim;
        let mut out = DMatrix::zeros(d, d);
        match keep {
            0 => {
                for i in 0..d {
                    for j in 0..d {
                        let mut acc = C64::new(0.0, 0.0);
                        for k in 0..d {
                            acc += self.matrix[(i * d + k, j * d + k)];
                        }
                        out[(i, j)] = acc;
                    }
                }
            }
            1 => {
                for i in 0..d {
                    for j in 0..d {
                        let mut acc = C64::new(0.0, 0.0);
                        for k in 0..d {
                            acc += self.matrix[(k * d + i, k * d + j)];
                        }
                        out[(i, j)] = acc;
                    }
                }
            }
            _ => return Err(Error::Argument("keep must be 0 or 1".into())),
        }
        Ok(FockDensityMatrix {
            dim: d,
            n_modes: 1,
            matrix: out,
            tail_mass: self.tail_mass,
        })
    }

    /// Conjugates by a unitary: `rho -> U rho U^dag`.
    pub fn apply_unitary(&self, u: &DMatrix<C64>) -> Result<FockDensityMatrix> {
        let size = self.matrix.nrows();
        if u.nrows() != size || u.ncols() != size {
            return Err(Error::DimensionMismatch(format!(
                "unitary must be {size}x{size}, got {}x{}",
                u.nrows(),
                u.ncols()
            )));
        }
        let matrix = u * &self.matrix * u.adjoint();
        Ok(FockDensityMatrix {
            dim: self.dim,
            n_modes: self.n_modes,
            matrix,
            tail_mass: self.tail_mass,
        })
    }

    fn eigenvalues_raw(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// Eigenvalues clamped to the physical range. Errors if anything
    /// falls below -1e-9.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let mut vals = self.eigenvalues_raw();
        for v in vals.iter_mut() {
            if *v < -1e-9 {
                return Err(Error::InvalidState(format!(
                    "density matrix eigenvalue {v:.3e} below -1e-9"
                )));
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(vals)
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::Domain(format!(
            "Fock truncation needs dim >= 2, got {dim}"
        )));
    }
    Ok(())
}

/// Eigenvalues of a Hermitian matrix with the sub-resolution entries
/// zeroed first. Density matrices of near-pure states carry entries
/// spanning hundreds of orders of magnitude, and the tridiagonal
/// iteration can produce NaNs when their squared norms underflow; entries
/// below 1e-18 of the matrix scale cannot move any eigenvalue beyond
/// ~1e-16 of scale, so dropping them is free at the tolerances used here.
pub(crate) fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    let scale = m.iter().map(|z| z.norm()).fold(0.0_f64, f64::max);
    if scale == 0.0 {
        return vec![0.0; m.nrows()];
    }
    let floor = scale * 1e-18;
    let mut clean = m.clone();
    for z in clean.iter_mut() {
        if z.norm() < floor {
            *z = C64::new(0.0, 0.0);
        }
    }
    clean.symmetric_eigenvalues().iter().cloned().collect()
}

/// Truncated coherent-state amplitudes and the discarded Poisson tail.
pub fn coherent_amplitudes(alpha: C64, dim: usize) -> (DVector<C64>, f64) {
    let mut amps = DVector::zeros(dim);
    let mut c = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    let mut norm2 = 0.0;
    for n in 0..dim {
        amps[n] = c;
        norm2 += c.norm_sqr();
        c *= alpha / C64::new(((n + 1) as f64).sqrt(), 0.0);
    }
    (amps, (1.0 - norm2).max(0.0))
}

/// Truncation level that keeps the Poisson tail of `|alpha>` far below
/// the default budget: `|alpha|^2 + 10 sqrt(|alpha|^2) + 20`.
pub fn suggested_coherent_dim(alpha: C64) -> usize {
    let n = alpha.norm_sqr();
    (n + 10.0 * n.sqrt() + 20.0).ceil() as usize
}

/// Smallest `dim` with geometric tail `(k/(k+1))^dim <= budget`.
pub fn suggested_thermal_dim(k: f64, budget: f64) -> usize {
    if k <= 0.0 {
        return 2;
    }
    let q: f64 = k / (k + 1.0);
    (budget.ln() / q.ln()).ceil().max(2.0) as usize
}

/// Von Neumann entropy from the eigenvalue spectrum, in bits.
pub fn von_neumann_entropy_fock(rho: &FockDensityMatrix) -> Result<EntropyValue> {
    let vals = rho.eigenvalues()?;
    let mut s = 0.0;
    for p in vals {
        if p > 0.0 {
            s -= p * p.log2();
        }
    }
    Ok(EntropyValue::bits(s))
}

/// Holevo information `S(sum_j p_j rho_j) - sum_j p_j S(rho_j)` in bits.
pub fn holevo_chi(ensemble: &[(f64, FockDensityMatrix)]) -> Result<EntropyValue> {
    if ensemble.is_empty() {
        return Err(Error::Argument("ensemble must be non-empty".into()));
    }
    let psum: f64 = ensemble.iter().map(|(p, _)| p).sum();
    if (psum - 1.0).abs() > 1e-12 {
        return Err(Error::Argument(format!(
            "ensemble probabilities must sum to 1 within 1e-12, got {psum}"
        )));
    }
    let first = &ensemble[0].1;
    let size = first.matrix().nrows();
    let mut avg = DMatrix::<C64>::zeros(size, size);
    let mut cond = 0.0;
    for (p, rho) in ensemble {
        if *p < 0.0 {
            return Err(Error::Domain(format!("negative probability {p}")));
        }
        if rho.matrix().nrows() != size || rho.n_modes() != first.n_modes() {
            return Err(Error::DimensionMismatch(
                "ensemble members must share the same space".into(),
            ));
        }
        if *p == 0.0 {
            continue;
        }
        avg += rho.matrix() * C64::new(*p, 0.0);
        cond += *p * von_neumann_entropy_fock(rho)?.to_bits();
    }
    let avg_state = FockDensityMatrix::from_raw(avg, first.dim(), first.n_modes(), 0.0);
    let chi = von_neumann_entropy_fock(&avg_state)?.to_bits() - cond;
    Ok(EntropyValue::bits(chi.max(0.0)))
}

/// Trace distance `0.5 ||a - b||_1`.
pub fn trace_distance(a: &FockDensityMatrix, b: &FockDensityMatrix) -> Result<f64> {
    if a.matrix().nrows() != b.matrix().nrows() || a.n_modes() != b.n_modes() {
        return Err(Error::DimensionMismatch(
            "trace distance needs states on the same space".into(),
        ));
    }
    let diff = a.matrix() - b.matrix();
    let vals = hermitian_eigenvalues(&diff);
    Ok(0.5 * vals.iter().map(|v| v.abs()).sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::g_bits;
    use approx::assert_abs_diff_eq;

    #[test]
    fn thermal_zero_is_vacuum() {
        let t = FockDensityMatrix::thermal(0.0, 8).unwrap();
        assert_abs_diff_eq!(t.matrix()[(0, 0)].re, 1.0, epsilon = 1e-15);
        assert_eq!(t.tail_mass(), 0.0);
        assert_abs_diff_eq!(t.mean_photon(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn thermal_entropy_matches_g() {
        let t = FockDensityMatrix::thermal(1.0, 60).unwrap();
        let s = von_neumann_entropy_fock(&t).unwrap();
        assert_abs_diff_eq!(s.to_bits(), g_bits(1.0).unwrap(), epsilon = 1e-9);
        assert_abs_diff_eq!(s.to_bits(), 2.0, epsilon = 1e-9);
    }

    #[test]
    fn thermal_tail_budget_enforced() {
        // K = 1 at dim 10 discards ~1e-3.
        let err = FockDensityMatrix::thermal(1.0, 10);
        assert!(matches!(err, Err(Error::Truncation(_))));
        assert!(FockDensityMatrix::thermal_with_budget(1.0, 10, 1e-2).is_ok());
        assert!(suggested_thermal_dim(1.0, 1e-8) >= 27);
    }

    #[test]
    fn coherent_is_pure_with_right_photons() {
        let alpha = C64::new(2.0, 0.0);
        let c = FockDensityMatrix::coherent(alpha, 60).unwrap();
        assert_abs_diff_eq!(c.purity(), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(c.mean_photon(), 4.0, epsilon = 1e-8);
        let s = von_neumann_entropy_fock(&c).unwrap();
        assert_abs_diff_eq!(s.to_bits(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn coherent_truncation_error_advises_dim() {
        let err = FockDensityMatrix::coherent(C64::new(4.0, 0.0), 12);
        match err {
            Err(Error::Truncation(msg)) => assert!(msg.contains("dim")),
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn diagonal_weights_normalized() {
        let d = FockDensityMatrix::diagonal(&[0.25, 0.25, 0.5], 8).unwrap();
        assert_abs_diff_eq!(d.trace(), 1.0, epsilon = 1e-14);
        let s = von_neumann_entropy_fock(&d).unwrap();
        assert_abs_diff_eq!(s.to_bits(), 1.5, epsilon = 1e-12);
    }

    #[test]
    fn maximally_mixed_entropy_is_log_dim() {
        let d = 16;
        let probs = vec![1.0 / d as f64; d];
        let rho = FockDensityMatrix::diagonal(&probs, d).unwrap();
        let s = von_neumann_entropy_fock(&rho).unwrap();
        assert_abs_diff_eq!(s.to_bits(), 4.0, epsilon = 1e-12);
    }

    #[test]
    fn thermal_k2_dim80_matches_g2() {
        let t = FockDensityMatrix::thermal(2.0, 80).unwrap();
        let s = von_neumann_entropy_fock(&t).unwrap();
        assert_abs_diff_eq!(s.to_bits(), g_bits(2.0).unwrap(), epsilon = 1e-8);
    }

    #[test]
    fn holevo_trivial_and_orthogonal_cases() {
        let v = FockDensityMatrix::vacuum(8).unwrap();
        let chi = holevo_chi(&[(1.0, v.clone())]).unwrap();
        assert_abs_diff_eq!(chi.to_bits(), 0.0, epsilon = 1e-12);

        let one = FockDensityMatrix::fock(1, 8).unwrap();
        let chi = holevo_chi(&[(0.5, v), (0.5, one)]).unwrap();
        assert_abs_diff_eq!(chi.to_bits(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn holevo_rejects_bad_probabilities() {
        let v = FockDensityMatrix::vacuum(8).unwrap();
        assert!(holevo_chi(&[(0.7, v)]).is_err());
    }

    #[test]
    fn holevo_zero_iff_members_identical() {
        let c1 = FockDensityMatrix::coherent(C64::new(0.7, 0.1), 30).unwrap();
        let chi_same = holevo_chi(&[(0.5, c1.clone()), (0.5, c1.clone())]).unwrap();
        assert_abs_diff_eq!(chi_same.to_bits(), 0.0, epsilon = 1e-12);

        let c2 = FockDensityMatrix::coherent(C64::new(-0.7, 0.1), 30).unwrap();
        let chi_diff = holevo_chi(&[(0.5, c1), (0.5, c2)]).unwrap();
        assert!(chi_diff.to_bits() > 0.1);
    }

    #[test]
    fn holevo_of_isotropic_coherent_mixture_approaches_g() {
        // Discretized Gaussian ensemble with <|alpha|^2> = nbar.
        let nbar = 1.0_f64;
        let dim = 40;
        let (radii, wr) = crate::quad::gauss_legendre_on(40, 0.0, 6.0 * nbar.sqrt());
        let n_ang = 24;
        let mut ensemble = Vec::new();
        let mut total = 0.0;
        for (&r, &w) in radii.iter().zip(&wr) {
            let radial_weight = w * 2.0 * r / nbar * (-r * r / nbar).exp() / n_ang as f64;
            for m in 0..n_ang {
                let phi = std::f64::consts::TAU * m as f64 / n_ang as f64;
                let alpha = C64::from_polar(r, phi);
                ensemble.push((
                    radial_weight,
                    FockDensityMatrix::coherent_with_budget(alpha, dim, 1.0).unwrap(),
                ));
                total += radial_weight;
            }
        }
        // Renormalize the discretization so probabilities sum to one.
        for e in ensemble.iter_mut() {
            e.0 /= total;
        }
        let chi = holevo_chi(&ensemble).unwrap();
        assert_abs_diff_eq!(chi.to_bits(), g_bits(nbar).unwrap(), epsilon = 1e-3);
    }

    #[test]
    fn tensor_and_partial_trace_round_trip() {
        let a = FockDensityMatrix::thermal_with_budget(0.5, 10, 1e-4).unwrap();
        let b = FockDensityMatrix::coherent(C64::new(0.8, 0.2), 10).unwrap();
        let joint = a.tensor(&b).unwrap();
        assert_eq!(joint.n_modes(), 2);
        assert_abs_diff_eq!(joint.trace(), 1.0, epsilon = 1e-12);
        let ra = joint.partial_trace(0).unwrap();
        let rb = joint.partial_trace(1).unwrap();
        assert!((ra.matrix() - a.matrix()).norm() < 1e-12);
        assert!((rb.matrix() - b.matrix()).norm() < 1e-12);
    }

    #[test]
    fn trace_distance_basics() {
        let v = FockDensityMatrix::vacuum(6).unwrap();
        let one = FockDensityMatrix::fock(1, 6).unwrap();
        assert_abs_diff_eq!(trace_distance(&v, &v).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(trace_distance(&v, &one).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn from_matrix_validates() {
        let mut m = DMatrix::<C64>::zeros(4, 4);
        m[(0, 0)] = C64::new(0.9, 0.0);
        m[(1, 1)] = C64::new(0.1, 0.0);
        m[(0, 1)] = C64::new(0.0, 0.4);
        m[(1, 0)] = C64::new(0.0, -0.4);
        // Hermitian, trace 1, but indefinite: det = 0.09 - 0.16 < 0.
        assert!(FockDensityMatrix::from_matrix(m.clone(), 1, 0.0).is_err());
        m[(0, 1)] = C64::new(0.0, 0.05);
        m[(1, 0)] = C64::new(0.0, -0.05);
        assert!(FockDensityMatrix::from_matrix(m, 1, 0.0).is_ok());
    }
}
