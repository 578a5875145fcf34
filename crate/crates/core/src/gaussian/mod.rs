//! Gaussian states in the annihilation-operator correlation-matrix
//! representation, their symplectic analysis, and beam-splitter evolution.
//!
//! An `n`-mode Gaussian state is stored as a coherent displacement vector
//! plus the 2n x 2n correlation matrix
//!
//! ```text
//! R = [[ N^T + I,  A   ],
//!      [ A*,       N   ]]
//! ```
//!
//! where `N` is the Hermitian photon-number block `<a^dag a^T>` of the
//! centered operators and `A` the symmetric phase-sensitive block
//! `<a a^T>`. The transpose in the upper-left block is forced by the
//! commutation relations (`<a_j a_k^dag> = <a_k^dag a_j> + delta_jk`);
//! it is invisible whenever `N` is real. Entropy and symplectic
//! eigenvalues refer to this matrix; the displacement never affects them.

mod random;
mod search;
mod williamson;

pub use random::{
    random_passive, random_state, random_symplectic, random_unitary, squeezer_symplectic,
    state_from_spectrum,
};
pub use search::{
    min_output_entropy_gaussian, GaussianSearchConfig, GaussianSearchReport,
};
pub use williamson::{williamson, SymplecticDecomposition};

use crate::entropy::{g_bits, EntropyValue};
use crate::error::{Error, Result};

use nalgebra::{Complex, DMatrix, DVector};
use serde::{Deserialize, Serialize};

pub(crate) type C64 = Complex<f64>;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Symplectic eigenvalues below this are treated as exactly zero when
/// computing entropies; `g` is steep near 0 but `g(1e-9)` is ~3e-8 bits,
/// below every tolerance used here.
pub const PURE_STATE_LAMBDA_TOL: f64 = 1e-9;

/// Structural tolerance for Hermiticity / block structure / positivity.
pub(crate) const STRUCTURE_TOL: f64 = 1e-10;

/// Zero-mean-or-displaced Gaussian state of `n` modes.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    n_modes: usize,
    mean: DVector<C64>,
    corr: DMatrix<C64>,
}

impl GaussianState {
    /// Vacuum state: `N = 0`, `A = 0`.
    pub fn vacuum(n: usize) -> Result<Self> {
        Self::from_blocks_unchecked(
            n,
            DMatrix::zeros(n, n),
            DMatrix::zeros(n, n),
            DVector::zeros(n),
        )
    }

    /// Product of `n` thermal states with `k` photons per mode.
    pub fn thermal(n: usize, k: f64) -> Result<Self> {
        if !k.is_finite() || k < 0.0 {
            return Err(Error::Domain(format!(
                "thermal photon number must be finite and >= 0, got {k}"
            )));
        }
        Self::from_blocks_unchecked(
            n,
            DMatrix::from_diagonal_element(n, n, C64::new(k, 0.0)),
            DMatrix::zeros(n, n),
            DVector::zeros(n),
        )
    }

    /// Single-mode squeezed vacuum: `<a^dag a> = sinh^2 r`,
    /// `<a a> = -e^{i phase} sinh r cosh r`.
    pub fn squeezed_vacuum(r: f64, phase: f64) -> Result<Self> {
        if !r.is_finite() || !phase.is_finite() {
            return Err(Error::Domain(format!(
                "squeeze parameters must be finite, got r = {r}, phase = {phase}"
            )));
        }
        let sh = r.sinh();
        let ch = r.cosh();
        let pair = -C64::from_polar(sh * ch, phase);
        Self::from_blocks_unchecked(
            1,
            DMatrix::from_element(1, 1, C64::new(sh * sh, 0.0)),
            DMatrix::from_element(1, 1, pair),
            DVector::zeros(1),
        )
    }

    /// Single-mode coherent state `|alpha>`: vacuum correlations with a
    /// displacement.
    pub fn coherent(alpha: C64) -> Result<Self> {
        Self::from_blocks_unchecked(
            1,
            DMatrix::zeros(1, 1),
            DMatrix::zeros(1, 1),
            DVector::from_element(1, alpha),
        )
    }

    /// Builds a state from the number block `N`, pair block `A` and a
    /// displacement, validating the correlation-matrix invariants.
    pub fn from_blocks(
        number: DMatrix<C64>,
        pair: DMatrix<C64>,
        mean: DVector<C64>,
    ) -> Result<Self> {
        let n = number.nrows();
        if number.ncols() != n || pair.nrows() != n || pair.ncols() != n || mean.len() != n {
            return Err(Error::DimensionMismatch(
                "number block, pair block and mean must agree on the mode count".into(),
            ));
        }
        let state = Self::from_blocks_unchecked(n, number, pair, mean)?;
        state.validate()?;
        Ok(state)
    }

    fn from_blocks_unchecked(
        n: usize,
        number: DMatrix<C64>,
        pair: DMatrix<C64>,
        mean: DVector<C64>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a Gaussian state needs at least one mode".into()));
        }
        let mut corr = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                corr[(i, j)] = number[(j, i)] + if i == j { ONE } else { ZERO };
                corr[(i, n + j)] = pair[(i, j)];
                corr[(n + i, j)] = pair[(i, j)].conj();
                corr[(n + i, n + j)] = number[(i, j)];
            }
        }
        Ok(GaussianState { n_modes: n, mean, corr })
    }

    /// Builds a state from a full correlation matrix, validating all
    /// invariants. Used by the JSON interface.
    pub fn from_corr(corr: DMatrix<C64>, mean: DVector<C64>) -> Result<Self> {
        if corr.nrows() != corr.ncols() || !corr.nrows().is_multiple_of(2) || corr.nrows() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "correlation matrix must be square with even size, got {}x{}",
                corr.nrows(),
                corr.ncols()
            )));
        }
        let n = corr.nrows() / 2;
        if mean.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "mean vector length {} does not match {} modes",
                mean.len(),
                n
            )));
        }
        let state = GaussianState { n_modes: n, mean, corr };
        state.validate()?;
        Ok(state)
    }

    /// Checks Hermiticity, the block structure and positive
    /// semidefiniteness within [`STRUCTURE_TOL`] (scaled by the matrix
    /// magnitude).
    pub fn validate(&self) -> Result<()> {
        let n = self.n_modes;
        let r = &self.corr;
        let scale = r.iter().map(|z| z.norm()).fold(1.0_f64, f64::max);
        let tol = STRUCTURE_TOL * scale;

        let herm = (r - r.adjoint()).norm();
        if herm > tol {
            return Err(Error::InvalidState(format!(
                "correlation matrix is not Hermitian: residual {herm:.3e}"
            )));
        }
        for i in 0..n {
            for j in 0..n {
                // Commutators force upper-left = (lower-right)^T + I.
                let expect = r[(n + j, n + i)] + if i == j { ONE } else { ZERO };
                if (r[(i, j)] - expect).norm() > tol {
                    return Err(Error::InvalidState(
                        "upper-left block must equal the transposed lower-right block plus identity"
                            .into(),
                    ));
                }
                if (r[(i, n + j)] - r[(j, n + i)]).norm() > tol {
                    return Err(Error::InvalidState(
                        "pair block must be symmetric".into(),
                    ));
                }
                if (r[(n + i, j)] - r[(i, n + j)].conj()).norm() > tol {
                    return Err(Error::InvalidState(
                        "off-diagonal blocks must be mutual conjugates".into(),
                    ));
                }
            }
        }
        let eig = self.corr.clone().symmetric_eigen();
        let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -tol {
            return Err(Error::InvalidState(format!(
                "correlation matrix is not positive semidefinite: min eigenvalue {min:.3e}"
            )));
        }
        Ok(())
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn mean(&self) -> &DVector<C64> {
        &self.mean
    }

    pub fn corr(&self) -> &DMatrix<C64> {
        &self.corr
    }

    /// Photon-number block `N` of the centered operators.
    pub fn number_block(&self) -> DMatrix<C64> {
        let n = self.n_modes;
        self.corr.view((n, n), (n, n)).into_owned()
    }

    /// Phase-sensitive block `A`.
    pub fn pair_block(&self) -> DMatrix<C64> {
        let n = self.n_modes;
        self.corr.view((0, n), (n, n)).into_owned()
    }

    /// Total mean photon number including the displacement contribution.
    pub fn mean_photon_total(&self) -> f64 {
        let n = self.n_modes;
        let centered: f64 = (0..n).map(|i| self.corr[(n + i, n + i)].re).sum();
        centered + self.mean.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    /// Tensor product, modes of `self` first.
    pub fn tensor(&self, other: &GaussianState) -> GaussianState {
        let (na, nb) = (self.n_modes, other.n_modes);
        let n = na + nb;
        let mut number = DMatrix::zeros(n, n);
        let mut pair = DMatrix::zeros(n, n);
        number.view_mut((0, 0), (na, na)).copy_from(&self.number_block());
        number.view_mut((na, na), (nb, nb)).copy_from(&other.number_block());
        pair.view_mut((0, 0), (na, na)).copy_from(&self.pair_block());
        pair.view_mut((na, na), (nb, nb)).copy_from(&other.pair_block());
        let mut mean = DVector::zeros(n);
        mean.rows_mut(0, na).copy_from(&self.mean);
        mean.rows_mut(na, nb).copy_from(&other.mean);
        Self::from_blocks_unchecked(n, number, pair, mean).expect("blocks are consistent")
    }

    /// Reduced state of a contiguous range of modes.
    pub fn reduced(&self, start: usize, count: usize) -> Result<GaussianState> {
        let n = self.n_modes;
        if count == 0 || start + count > n {
            return Err(Error::DimensionMismatch(format!(
                "cannot reduce to modes [{start}, {}) of a {n}-mode state",
                start + count
            )));
        }
        let number = self
            .corr
            .view((n + start, n + start), (count, count))
            .into_owned();
        let pair = self.corr.view((start, n + start), (count, count)).into_owned();
        let mean = self.mean.rows(start, count).into_owned();
        Self::from_blocks_unchecked(count, number, pair, mean)
    }

    /// Applies a mode transformation `[b; b^dag] = S [a; a^dag]` with `S`
    /// symplectic: `corr -> S corr S^dag`, `mean -> S11 mean + S12 conj(mean)`.
    pub fn apply_symplectic(&self, s: &DMatrix<C64>) -> Result<GaussianState> {
        let n = self.n_modes;
        if s.nrows() != 2 * n || s.ncols() != 2 * n {
            return Err(Error::DimensionMismatch(format!(
                "symplectic matrix must be {0}x{0}, got {1}x{2}",
                2 * n,
                s.nrows(),
                s.ncols()
            )));
        }
        let q = q_matrix(n);
        let resid = (s.adjoint() * &q * s - &q).norm();
        if resid > 1e-8 * s.norm().max(1.0) {
            return Err(Error::Argument(format!(
                "matrix is not symplectic: residual {resid:.3e}"
            )));
        }
        // A mode transformation must also pair the dagger rows with the
        // conjugates of the mode rows.
        let mut bogoliubov = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                bogoliubov = bogoliubov
                    .max((s[(n + i, n + j)] - s[(i, j)].conj()).norm())
                    .max((s[(n + i, j)] - s[(i, n + j)].conj()).norm());
            }
        }
        if bogoliubov > 1e-8 * s.norm().max(1.0) {
            return Err(Error::Argument(
                "matrix does not have the conjugate-paired Bogoliubov block structure".into(),
            ));
        }
        let corr = s * &self.corr * s.adjoint();
        let s11 = s.view((0, 0), (n, n));
        let s12 = s.view((0, n), (n, n));
        let mean = s11 * &self.mean + s12 * self.mean.map(|z| z.conj());
        Ok(GaussianState { n_modes: n, mean, corr })
    }
}

/// `Q = diag(I, -I)`, the metric the complex symplectic condition uses.
pub(crate) fn q_matrix(n: usize) -> DMatrix<C64> {
    DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if i != j {
            ZERO
        } else if i < n {
            ONE
        } else {
            -ONE
        }
    })
}

/// Von Neumann entropy in bits: the sum of `g` over the symplectic
/// eigenvalues of the correlation matrix. Displacement-invariant.
pub fn von_neumann_entropy(state: &GaussianState) -> Result<EntropyValue> {
    let dec = williamson(state)?;
    let mut total = 0.0;
    for &l in dec.lambdas() {
        let l = if l < PURE_STATE_LAMBDA_TOL { 0.0 } else { l };
        total += g_bits(l)?;
    }
    Ok(EntropyValue::bits(total))
}

/// Output of a lossless beam splitter acting on two independent states.
#[derive(Debug, Clone)]
pub struct BeamSplitterOutput {
    /// Joint 2n-mode output state (c modes first, then d modes).
    pub joint: GaussianState,
    /// Reduced state of the transmitted arm `c = sqrt(eta) a + sqrt(1-eta) b`.
    pub out_c: GaussianState,
    /// Reduced state of the reflected arm `d = sqrt(1-eta) a - sqrt(eta) b`.
    pub out_d: GaussianState,
}

/// Mixes two independent `n`-mode states on a beam splitter of
/// transmissivity `eta`.
pub fn beam_splitter(
    a: &GaussianState,
    b: &GaussianState,
    eta: f64,
) -> Result<BeamSplitterOutput> {
    if a.n_modes() != b.n_modes() {
        return Err(Error::DimensionMismatch(format!(
            "beam splitter inputs must have equal mode counts, got {} and {}",
            a.n_modes(),
            b.n_modes()
        )));
    }
    if !(0.0..=1.0).contains(&eta) || !eta.is_finite() {
        return Err(Error::Domain(format!(
            "transmissivity must lie in [0, 1], got {eta}"
        )));
    }
    let n = a.n_modes();
    let joint_in = a.tensor(b);

    let root_t = eta.sqrt();
    let root_r = (1.0 - eta).sqrt();
    // Mode map [c; d] = T [a; b], doubled to M = diag(T, T) on [modes; daggers].
    let mut t = DMatrix::<C64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        t[(i, i)] = C64::new(root_t, 0.0);
        t[(i, n + i)] = C64::new(root_r, 0.0);
        t[(n + i, i)] = C64::new(root_r, 0.0);
        t[(n + i, n + i)] = C64::new(-root_t, 0.0);
    }
    let mut m = DMatrix::<C64>::zeros(4 * n, 4 * n);
    m.view_mut((0, 0), (2 * n, 2 * n)).copy_from(&t);
    m.view_mut((2 * n, 2 * n), (2 * n, 2 * n)).copy_from(&t);

    let corr = &m * joint_in.corr() * m.adjoint();
    let mean = &t * joint_in.mean();
    let joint = GaussianState { n_modes: 2 * n, mean, corr };
    let out_c = joint.reduced(0, n)?;
    let out_d = joint.reduced(n, n)?;
    Ok(BeamSplitterOutput { joint, out_c, out_d })
}

/// Closed-form Wehrl entropy of an `n`-mode product of thermal states
/// with `k` photons per mode: `n (1 + ln(k+1))` nats.
pub fn wehrl_entropy_gaussian_thermal(n: usize, k: f64) -> Result<EntropyValue> {
    if n == 0 {
        return Err(Error::Domain("need at least one mode".into()));
    }
    if !k.is_finite() || k < 0.0 {
        return Err(Error::Domain(format!(
            "thermal photon number must be finite and >= 0, got {k}"
        )));
    }
    Ok(EntropyValue::nats(n as f64 * (1.0 + (1.0 + k).ln())))
}

/// JSON document form of a [`GaussianState`]: re/im pairs, correlation
/// matrix in row-major order.
#[derive(Debug, Serialize, Deserialize)]
pub struct GaussianStateJson {
    pub n_modes: usize,
    pub mean: Vec<[f64; 2]>,
    pub corr: Vec<[f64; 2]>,
}

impl GaussianState {
    pub fn to_json(&self) -> GaussianStateJson {
        let n = self.n_modes;
        let mut corr = Vec::with_capacity(4 * n * n);
        for i in 0..2 * n {
            for j in 0..2 * n {
                let z = self.corr[(i, j)];
                corr.push([z.re, z.im]);
            }
        }
        GaussianStateJson {
            n_modes: n,
            mean: self.mean.iter().map(|z| [z.re, z.im]).collect(),
            corr,
        }
    }

    pub fn from_json(doc: &GaussianStateJson) -> Result<Self> {
        let n = doc.n_modes;
        if doc.mean.len() != n {
            return Err(Error::Argument(format!(
                "mean has {} entries, expected {}",
                doc.mean.len(),
                n
            )));
        }
        if doc.corr.len() != 4 * n * n {
            return Err(Error::Argument(format!(
                "corr has {} entries, expected {}",
                doc.corr.len(),
                4 * n * n
            )));
        }
        let mean = DVector::from_iterator(n, doc.mean.iter().map(|p| C64::new(p[0], p[1])));
        let corr = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
            let p = doc.corr[i * 2 * n + j];
            C64::new(p[0], p[1])
        });
        Self::from_corr(corr, mean)
    }
}
