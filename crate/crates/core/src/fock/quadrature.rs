//! Numerical validation of the coherent-state rate region.
//!
//! The encoding splits a mean photon budget between an outer Gaussian
//! (Charlie's message, variance `(1-beta) nbar`) and a conditional
//! Gaussian (Bob's message, variance `beta nbar`). This module rebuilds
//! the conditional and unconditional receiver states as discretized
//! Gaussian mixtures of coherent states in Fock space, measures the
//! entropies, and returns the resulting rate bounds so they can be
//! compared with the closed forms `g(eta beta nbar)` and
//! `g((1-eta) nbar) - g((1-eta) beta nbar)`.

use super::{coherent_amplitudes, C64, FockDensityMatrix};
use crate::error::{Error, Result};
use crate::fock::von_neumann_entropy_fock;
use crate::quad::gauss_legendre_on;
use crate::regions::ChannelParams;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Grid parameters for [`coherent_region_quadrature`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Fock truncation for every constructed state.
    pub dim: usize,
    /// Radial nodes for the average over the outer Gaussian.
    pub t_nodes: usize,
    /// Radial nodes for each coherent-state mixture.
    pub mix_radial: usize,
    /// Angular nodes for each coherent-state mixture.
    pub mix_angular: usize,
    /// Gaussian coverage in standard deviations.
    pub coverage: f64,
    /// Tolerated trace deficit of a discretized mixture before
    /// renormalization.
    pub tail_budget: f64,
    /// Run the refinement convergence monitor (doubled radial nodes).
    pub monitor: bool,
    /// Largest entropy shift the monitor accepts, bits.
    pub monitor_tol: f64,
}

impl QuadratureConfig {
    pub fn with_dim(dim: usize) -> Self {
        QuadratureConfig {
            dim,
            t_nodes: 24,
            mix_radial: 28,
            mix_angular: 64,
            coverage: 6.0,
            tail_budget: 1e-3,
            monitor: true,
            monitor_tol: 2e-4,
        }
    }
}

/// Numeric rate bounds plus diagnostics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadratureOutcome {
    pub r_b_numeric: f64,
    pub r_c_numeric: f64,
    pub r_b_closed_form: f64,
    pub r_c_closed_form: f64,
    /// Entropy shift observed by the refinement monitor (bits).
    pub refine_delta: f64,
}

/// Evaluates the coherent-state rate pair at one `beta` numerically.
pub fn coherent_region_quadrature(
    params: &ChannelParams,
    beta: f64,
    config: &QuadratureConfig,
) -> Result<QuadratureOutcome> {
    if params.eta() <= 0.5 {
        return Err(Error::UnsupportedRegime(format!(
            "quadrature validation targets the degraded regime eta > 1/2, got {}",
            params.eta()
        )));
    }
    if !(0.0..=1.0).contains(&beta) || !beta.is_finite() {
        return Err(Error::Domain(format!("beta must lie in [0, 1], got {beta}")));
    }
    if config.dim < 4 {
        return Err(Error::Argument("quadrature needs dim >= 4".into()));
    }
    if config.coverage < 6.0 {
        return Err(Error::Argument(
            "Gaussian coverage below 6 standard deviations is outside the contract".into(),
        ));
    }

    let (r_b, r_c) = evaluate(params, beta, config, 1.0)?;
    let mut refine_delta = 0.0;
    if config.monitor {
        let (r_b2, r_c2) = evaluate(params, beta, config, 2.0)?;
        refine_delta = (r_b - r_b2).abs().max((r_c - r_c2).abs());
        if refine_delta > config.monitor_tol {
            return Err(Error::Quadrature(format!(
                "grid too coarse: refinement moved the rates by {refine_delta:.3e} bits \
                 (tolerance {:.1e})",
                config.monitor_tol
            )));
        }
    }

    let eta = params.eta();
    let nbar = params.nbar();
    let r_b_closed = crate::entropy::g_bits(eta * beta * nbar)?;
    let r_c_closed = crate::entropy::g_bits((1.0 - eta) * nbar)?
        - crate::entropy::g_bits((1.0 - eta) * beta * nbar)?;
    Ok(QuadratureOutcome {
        r_b_numeric: r_b,
        r_c_numeric: r_c,
        r_b_closed_form: r_b_closed,
        r_c_closed_form: r_c_closed,
        refine_delta,
    })
}

fn evaluate(
    params: &ChannelParams,
    beta: f64,
    config: &QuadratureConfig,
    refine: f64,
) -> Result<(f64, f64)> {
    let eta = params.eta();
    let nbar = params.nbar();
    let mix_radial = (config.mix_radial as f64 * refine).ceil() as usize;
    let mix_angular = (config.mix_angular as f64 * refine).ceil() as usize;
    let t_nodes = (config.t_nodes as f64 * refine).ceil() as usize;

    // Outer Gaussian |t|^2 ~ Exp(nbar): radial density 2r/nbar e^{-r^2/nbar}.
    let var_t = (1.0 - beta) * nbar;
    let cond_var = beta * nbar;

    // Conditional entropies depend on |t| only (phase covariance), so a
    // radial average suffices.
    let (t_radii, t_weights): (Vec<f64>, Vec<f64>) = if var_t > 0.0 {
        let (r, w) = gauss_legendre_on(t_nodes, 0.0, config.coverage * var_t.sqrt());
        let w = r
            .iter()
            .zip(&w)
            .map(|(&ri, &wi)| wi * 2.0 * ri / var_t * (-ri * ri / var_t).exp())
            .collect();
        (r, w)
    } else {
        (vec![0.0], vec![1.0])
    };
    let t_total: f64 = t_weights.iter().sum();

    // Bob's conditional states: center sqrt(eta) * sqrt(1 - beta)-scaled t,
    // thermal part eta beta nbar. The sqrt(1-beta) scaling is already in
    // var_t, so the center seen at Bob is sqrt(eta) |t|.
    //
    // The truncation deficit of each mixture is weighted by its share of
    // the average before it is charged against the budget: far tail
    // centers are poorly represented at any fixed dim but contribute
    // nothing.
    let cond_entropy = |scale: f64, sigma2: f64| -> Result<f64> {
        let rows: Vec<(f64, f64)> = t_radii
            .par_iter()
            .map(|&t_r| -> Result<(f64, f64)> {
                let (rho, deficit) = gaussian_coherent_mixture(
                    scale * t_r,
                    sigma2,
                    config.dim,
                    mix_radial,
                    mix_angular,
                    config.coverage,
                )?;
                Ok((von_neumann_entropy_fock(&rho)?.to_bits(), deficit))
            })
            .collect::<Result<Vec<(f64, f64)>>>()?;
        let mut entropy = 0.0;
        let mut weighted_deficit = 0.0;
        for (i, (s, d)) in rows.iter().enumerate() {
            entropy += t_weights[i] * s;
            weighted_deficit += t_weights[i] * d;
        }
        if weighted_deficit / t_total > config.tail_budget {
            return Err(Error::Truncation(format!(
                "conditional mixtures lose {:.3e} probability on average \
                 (budget {:.1e}); increase dim",
                weighted_deficit / t_total,
                config.tail_budget
            )));
        }
        Ok(entropy / t_total)
    };

    let r_b = cond_entropy(eta.sqrt(), eta * cond_var)?;

    // Charlie: unconditional mixture is centered with variance
    // (1-eta) nbar; conditional ones carry (1-eta) beta nbar around the
    // scaled centers.
    let (rho_c_bar, bar_deficit) = gaussian_coherent_mixture(
        0.0,
        (1.0 - eta) * nbar,
        config.dim,
        mix_radial.max(t_nodes),
        mix_angular,
        config.coverage,
    )?;
    if bar_deficit > config.tail_budget {
        return Err(Error::Truncation(format!(
            "unconditional mixture loses {bar_deficit:.3e} probability \
             (budget {:.1e}); increase dim",
            config.tail_budget
        )));
    }
    let s_c_bar = von_neumann_entropy_fock(&rho_c_bar)?.to_bits();
    let s_c_cond = cond_entropy((1.0 - eta).sqrt(), (1.0 - eta) * cond_var)?;
    let r_c = (s_c_bar - s_c_cond).max(0.0);

    Ok((r_b, r_c))
}

/// Discretizes the isotropic Gaussian mixture of coherent states
/// `int (1/pi s2) exp(-|a - center|^2 / s2) |a><a| d^2a` on a polar grid
/// around the (real, by phase covariance) center. Returns the state and
/// the probability the truncation plus discretization lost.
pub fn gaussian_coherent_mixture(
    center: f64,
    sigma2: f64,
    dim: usize,
    radial: usize,
    angular: usize,
    coverage: f64,
) -> Result<(FockDensityMatrix, f64)> {
    if sigma2 <= 0.0 {
        // Degenerate mixture: a single coherent state. Centers far past
        // the truncation only ever occur at negligible weight, so they
        // degrade into a full deficit rather than an error.
        let (amps, tail) = coherent_amplitudes(C64::new(center, 0.0), dim);
        let norm2: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if norm2 < 1e-200 {
            return Ok((FockDensityMatrix::vacuum(dim)?, 1.0));
        }
        return Ok((FockDensityMatrix::from_pure(&amps, tail)?, tail));
    }
    let sigma = sigma2.sqrt();
    let (s_nodes, s_weights) = gauss_legendre_on(radial, 0.0, coverage * sigma);
    let d_phi = std::f64::consts::TAU / angular as f64;

    let mut rho = DMatrix::<C64>::zeros(dim, dim);
    let mut trace_total = 0.0;
    for (&s, &w) in s_nodes.iter().zip(&s_weights) {
        let radial_weight = w * 2.0 * s / sigma2 * (-s * s / sigma2).exp() / angular as f64;
        for m in 0..angular {
            let alpha = C64::new(center, 0.0) + C64::from_polar(s, d_phi * m as f64);
            let (amps, tail) = coherent_amplitudes(alpha, dim);
            trace_total += radial_weight * (1.0 - tail);
            for i in 0..dim {
                let ai = amps[i] * C64::new(radial_weight, 0.0);
                for j in 0..dim {
                    rho[(i, j)] += ai * amps[j].conj();
                }
            }
        }
    }
    let deficit = (1.0 - trace_total).max(0.0);
    let trace = rho.trace().re;
    if trace < 1e-12 {
        return Ok((FockDensityMatrix::vacuum(dim)?, 1.0));
    }
    rho /= C64::new(trace, 0.0);
    Ok((
        FockDensityMatrix::from_raw(rho, dim, 1, deficit),
        deficit,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::g_bits;
    use approx::assert_abs_diff_eq;

    #[test]
    fn centered_mixture_is_thermal() {
        let (rho, deficit) = gaussian_coherent_mixture(0.0, 1.0, 40, 32, 64, 6.0).unwrap();
        assert!(deficit < 1e-9);
        let thermal = FockDensityMatrix::thermal(1.0, 40).unwrap();
        let dist = crate::fock::trace_distance(&rho, &thermal).unwrap();
        assert!(dist < 1e-6, "trace distance {dist}");
    }

    #[test]
    fn displaced_mixture_entropy_is_displacement_invariant() {
        let (rho0, _) = gaussian_coherent_mixture(0.0, 0.8, 40, 32, 64, 6.0).unwrap();
        let (rho1, _) = gaussian_coherent_mixture(1.5, 0.8, 40, 32, 64, 6.0).unwrap();
        let s0 = von_neumann_entropy_fock(&rho0).unwrap().to_bits();
        let s1 = von_neumann_entropy_fock(&rho1).unwrap().to_bits();
        assert_abs_diff_eq!(s0, g_bits(0.8).unwrap(), epsilon = 1e-5);
        assert_abs_diff_eq!(s0, s1, epsilon = 1e-4);
    }

    #[test]
    fn beta_half_matches_closed_form() {
        let params = ChannelParams::new(0.8, 2.0).unwrap();
        let config = QuadratureConfig::with_dim(50);
        let out = coherent_region_quadrature(&params, 0.5, &config).unwrap();
        assert_abs_diff_eq!(out.r_b_numeric, g_bits(0.8).unwrap(), epsilon = 1e-3);
        assert_abs_diff_eq!(
            out.r_c_numeric,
            g_bits(0.4).unwrap() - g_bits(0.2).unwrap(),
            epsilon = 1e-3
        );
    }

    #[test]
    fn beta_endpoints() {
        let params = ChannelParams::new(0.8, 2.0).unwrap();
        let config = QuadratureConfig::with_dim(50);
        let zero = coherent_region_quadrature(&params, 0.0, &config).unwrap();
        assert!(zero.r_b_numeric.abs() < 1e-3);
        let one = coherent_region_quadrature(&params, 1.0, &config).unwrap();
        assert!(one.r_c_numeric.abs() < 1e-3);
    }

    #[test]
    fn charlie_rate_never_exceeds_the_degraded_bound() {
        // Data processing: the S-based bound from Charlie's arm stays at
        // or below g((1-eta) nbar) in every quadrature run.
        let params = ChannelParams::new(0.8, 2.0).unwrap();
        let cap = g_bits(0.2 * 2.0).unwrap();
        let config = QuadratureConfig::with_dim(50);
        for beta in [0.0, 0.3, 0.7, 1.0] {
            let out = coherent_region_quadrature(&params, beta, &config).unwrap();
            assert!(
                out.r_c_numeric <= cap + 1e-6,
                "beta {beta}: r_c {} above the degraded cap {cap}",
                out.r_c_numeric
            );
        }
    }

    #[test]
    fn rejects_non_degraded_and_bad_beta() {
        let config = QuadratureConfig::with_dim(20);
        let p = ChannelParams::new(0.4, 2.0).unwrap();
        assert!(coherent_region_quadrature(&p, 0.5, &config).is_err());
        let p = ChannelParams::new(0.8, 2.0).unwrap();
        assert!(coherent_region_quadrature(&p, 1.5, &config).is_err());
    }

    #[test]
    fn coarse_grid_is_caught_by_the_monitor() {
        let params = ChannelParams::new(0.8, 2.0).unwrap();
        let mut config = QuadratureConfig::with_dim(30);
        config.mix_radial = 3;
        config.t_nodes = 3;
        let out = coherent_region_quadrature(&params, 0.5, &config);
        assert!(
            matches!(out, Err(Error::Quadrature(_)) | Err(Error::Truncation(_))),
            "expected a convergence failure, got {out:?}"
        );
    }
}
