//! Numerical Wehrl entropy via the Husimi function.
//!
//! `Q(mu) = <mu|rho|mu>/pi` is integrated on a polar grid, Gauss-Legendre
//! in radius and uniform in angle. The normalization `int Q = 1` doubles
//! as the under-resolution guard.

use super::{coherent_amplitudes, C64, FockDensityMatrix};
use crate::entropy::EntropyValue;
use crate::error::{Error, Result};
use crate::quad::gauss_legendre_on;

use rayon::prelude::*;

/// Polar integration grid for [`wehrl_entropy_numeric`].
#[derive(Debug, Clone)]
pub struct WehrlGrid {
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    /// Grid radius; defaults to `6 sqrt(<n> + 1)`.
    pub radius: Option<f64>,
    /// Allowed deviation of the Husimi normalization from 1.
    pub norm_tol: f64,
}

impl Default for WehrlGrid {
    fn default() -> Self {
        WehrlGrid {
            radial_nodes: 200,
            angular_nodes: 128,
            radius: None,
            norm_tol: 1e-4,
        }
    }
}

/// Wehrl entropy `-int Q ln(pi Q)` in nats, single-mode states only.
pub fn wehrl_entropy_numeric(rho: &FockDensityMatrix, grid: &WehrlGrid) -> Result<EntropyValue> {
    if rho.n_modes() != 1 {
        return Err(Error::DimensionMismatch(
            "numerical Wehrl entropy is implemented for single-mode states".into(),
        ));
    }
    if grid.radial_nodes < 2 || grid.angular_nodes < 4 {
        return Err(Error::Argument("Wehrl grid too small".into()));
    }
    let radius = grid
        .radius
        .unwrap_or_else(|| 6.0 * (rho.mean_photon() + 1.0).sqrt());
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::Argument(format!("bad grid radius {radius}")));
    }

    let dim = rho.dim();
    let (r_nodes, r_weights) = gauss_legendre_on(grid.radial_nodes, 0.0, radius);
    let n_ang = grid.angular_nodes;
    let d_phi = std::f64::consts::TAU / n_ang as f64;

    // Per-radius contributions are independent.
    let rows: Vec<(f64, f64)> = r_nodes
        .par_iter()
        .zip(r_weights.par_iter())
        .map(|(&r, &w)| {
            let mut norm = 0.0;
            let mut entropy = 0.0;
            for m in 0..n_ang {
                let mu = C64::from_polar(r, d_phi * m as f64);
                let (amps, _) = coherent_amplitudes(mu, dim);
                // <mu|rho|mu>
                let mut q = 0.0;
                for i in 0..dim {
                    let mut acc = C64::new(0.0, 0.0);
                    for j in 0..dim {
                        acc += rho.matrix()[(i, j)] * amps[j];
                    }
                    q += (amps[i].conj() * acc).re;
                }
                let q = (q / std::f64::consts::PI).max(0.0);
                let weight = w * r * d_phi;
                norm += weight * q;
                if q > 0.0 {
                    entropy -= weight * q * (std::f64::consts::PI * q).ln();
                }
            }
            (norm, entropy)
        })
        .collect();

    let norm: f64 = rows.iter().map(|x| x.0).sum();
    let entropy: f64 = rows.iter().map(|x| x.1).sum();
    if (norm - 1.0).abs() > grid.norm_tol {
        return Err(Error::Quadrature(format!(
            "Husimi normalization {norm:.6} deviates from 1 beyond {:.1e}; \
             enlarge the grid or the truncation",
            grid.norm_tol
        )));
    }
    Ok(EntropyValue::nats(entropy))
}
