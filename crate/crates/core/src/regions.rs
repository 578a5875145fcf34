//! Closed-form capacity-region boundaries for the lossy bosonic broadcast
//! channel, plus the coherent-state multiple-access envelope used for the
//! broadcast/MAC comparison.
//!
//! All rates are in bits per channel use. The three broadcast boundaries
//! are parameterized by the power split `beta`: the fraction of the mean
//! photon budget spent on Bob's message, the rest going to Charlie's.

use crate::entropy::g_bits;
use crate::error::{Error, Result};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::Write;

/// Beam-splitter transmissivity and mean input photon budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    eta: f64,
    nbar: f64,
}

impl ChannelParams {
    /// Requires `0 < eta < 1` and `nbar >= 0`. The degraded-broadcast
    /// boundaries additionally require `eta > 1/2`, checked per operation.
    pub fn new(eta: f64, nbar: f64) -> Result<Self> {
        if !eta.is_finite() || eta <= 0.0 || eta >= 1.0 {
            return Err(Error::Domain(format!(
                "transmissivity eta must lie in (0, 1), got {eta}"
            )));
        }
        if !nbar.is_finite() || nbar < 0.0 {
            return Err(Error::Domain(format!(
                "mean photon budget nbar must be finite and >= 0, got {nbar}"
            )));
        }
        Ok(ChannelParams { eta, nbar })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn nbar(&self) -> f64 {
        self.nbar
    }

    fn require_degraded(&self) -> Result<()> {
        if self.eta <= 0.5 {
            return Err(Error::UnsupportedRegime(format!(
                "degraded broadcast boundaries require eta > 1/2, got eta = {}; \
                 swap the receiver roles instead of relabeling the channel",
                self.eta
            )));
        }
        Ok(())
    }
}

/// Which reception scheme a curve describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Optimum,
    Homodyne,
    Heterodyne,
    MacEnvelope,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Scheme::Optimum => "optimum",
            Scheme::Homodyne => "homodyne",
            Scheme::Heterodyne => "heterodyne",
            Scheme::MacEnvelope => "mac_envelope",
        };
        write!(f, "{s}")
    }
}

/// One sampled point of a rate-region boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePair {
    /// Bob's rate, bits/use.
    pub r_b: f64,
    /// Charlie's rate, bits/use.
    pub r_c: f64,
    /// Sweep parameter in [0, 1] that produced the point.
    pub beta: f64,
}

/// Sampled outer boundary of a two-user rate region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionCurve {
    pub points: Vec<RatePair>,
    pub scheme: Scheme,
    pub params: ChannelParams,
    /// Second user's photon budget; only set for the MAC envelope, where
    /// `params.nbar` holds the first user's budget.
    pub nbar_b: Option<f64>,
}

impl RegionCurve {
    /// CSV with a `# scheme=... eta=... nbar=...` comment line and the
    /// header `beta,r_b_bits,r_c_bits`. Values carry 12 significant
    /// digits with a '.' decimal separator, locale-independent.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        match self.nbar_b {
            Some(nb) => writeln!(
                w,
                "# scheme={} eta={} nbar={} nbar_b={}",
                self.scheme,
                self.params.eta(),
                self.params.nbar(),
                nb
            )?,
            None => writeln!(
                w,
                "# scheme={} eta={} nbar={}",
                self.scheme,
                self.params.eta(),
                self.params.nbar()
            )?,
        }
        writeln!(w, "beta,r_b_bits,r_c_bits")?;
        for p in &self.points {
            writeln!(
                w,
                "{},{},{}",
                fmt_sig(p.beta),
                fmt_sig(p.r_b),
                fmt_sig(p.r_c)
            )?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("write to Vec cannot fail");
        String::from_utf8(buf).expect("CSV is ASCII")
    }
}

/// 12 significant digits, scientific notation.
pub(crate) fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

/// Uniform grid of `n` beta values covering [0, 1] inclusive.
pub fn beta_grid(n: usize) -> Vec<f64> {
    assert!(n >= 2, "a beta grid needs at least the two endpoints");
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

/// Default grid resolution for boundary curves.
pub const DEFAULT_GRID_POINTS: usize = 257;

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Argument("beta grid must be non-empty".into()));
    }
    for &b in grid {
        if !b.is_finite() || !(0.0..=1.0).contains(&b) {
            return Err(Error::Domain(format!(
                "beta grid values must lie in [0, 1], got {b}"
            )));
        }
    }
    Ok(())
}

/// Capacity-region boundary under optimum reception:
/// `r_b = g(eta beta nbar)`, `r_c = g((1-eta) nbar) - g((1-eta) beta nbar)`.
///
/// Only valid in the degraded regime `eta > 1/2`.
pub fn ultimate_boundary(params: &ChannelParams, grid: &[f64]) -> Result<RegionCurve> {
    params.require_degraded()?;
    check_grid(grid)?;
    let (eta, nbar) = (params.eta(), params.nbar());
    let g_c_full = g_bits((1.0 - eta) * nbar)?;
    let points = grid
        .iter()
        .map(|&beta| {
            let r_b = g_bits(eta * beta * nbar)?;
            let r_c = (g_c_full - g_bits((1.0 - eta) * beta * nbar)?).max(0.0);
            Ok(RatePair { r_b, r_c, beta })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionCurve {
        points,
        scheme: Scheme::Optimum,
        params: *params,
        nbar_b: None,
    })
}

/// Boundary for coherent-state encoding with homodyne detection, i.e. the
/// classical degraded scalar-Gaussian broadcast channel with noise
/// variance 1/4 per use.
pub fn homodyne_boundary(params: &ChannelParams, grid: &[f64]) -> Result<RegionCurve> {
    params.require_degraded()?;
    check_grid(grid)?;
    let (eta, nbar) = (params.eta(), params.nbar());
    let points = grid
        .iter()
        .map(|&beta| {
            let r_b = 0.5 * (1.0 + 4.0 * eta * beta * nbar).log2();
            let r_c = 0.5
                * (1.0
                    + 4.0 * (1.0 - eta) * (1.0 - beta) * nbar
                        / (1.0 + 4.0 * (1.0 - eta) * beta * nbar))
                    .log2();
            RatePair { r_b, r_c, beta }
        })
        .collect();
    Ok(RegionCurve {
        points,
        scheme: Scheme::Homodyne,
        params: *params,
        nbar_b: None,
    })
}

/// Boundary for coherent-state encoding with heterodyne detection, i.e.
/// the classical degraded vector-Gaussian broadcast channel with noise
/// variance 1/2 per quadrature.
pub fn heterodyne_boundary(params: &ChannelParams, grid: &[f64]) -> Result<RegionCurve> {
    params.require_degraded()?;
    check_grid(grid)?;
    let (eta, nbar) = (params.eta(), params.nbar());
    let points = grid
        .iter()
        .map(|&beta| {
            let r_b = (1.0 + eta * beta * nbar).log2();
            let r_c = (1.0
                + (1.0 - eta) * (1.0 - beta) * nbar / (1.0 + (1.0 - eta) * beta * nbar))
                .log2();
            RatePair { r_b, r_c, beta }
        })
        .collect();
    Ok(RegionCurve {
        points,
        scheme: Scheme::Heterodyne,
        params: *params,
        nbar_b: None,
    })
}

/// Outer boundary of the coherent-state MAC Holevo region for fixed
/// per-user photon budgets:
///
/// ```text
/// R_A <= g(eta nbar_a),  R_B <= g((1-eta) nbar_b),
/// R_A + R_B <= g(eta nbar_a + (1-eta) nbar_b)
/// ```
///
/// The formulas are reconstructed from the multiple-access literature
/// this comparison is built on; they are the Holevo bounds of the
/// conditional and total coherent-state ensembles at the receiver. The
/// sweep holds both budgets fixed and traces the Pareto boundary of the
/// pentagon by splitting the sum rate: the envelope over sub-allocations
/// of either budget coincides with this pentagon because every bound is
/// monotone in the budgets.
pub fn mac_coherent_envelope(
    eta: f64,
    nbar_a: f64,
    nbar_b: f64,
    grid: &[f64],
) -> Result<RegionCurve> {
    if !eta.is_finite() || eta <= 0.0 || eta >= 1.0 {
        return Err(Error::Domain(format!(
            "transmissivity eta must lie in (0, 1), got {eta}"
        )));
    }
    for (name, v) in [("nbar_a", nbar_a), ("nbar_b", nbar_b)] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::Domain(format!(
                "photon budget {name} must be finite and >= 0, got {v}"
            )));
        }
    }
    check_grid(grid)?;

    let params = ChannelParams::new(eta, nbar_a)?;
    let cap_a = g_bits(eta * nbar_a)?;
    let cap_b = g_bits((1.0 - eta) * nbar_b)?;
    let cap_sum = g_bits(eta * nbar_a + (1.0 - eta) * nbar_b)?;

    if nbar_a == 0.0 && nbar_b == 0.0 {
        return Ok(RegionCurve {
            points: vec![RatePair { r_b: 0.0, r_c: 0.0, beta: 0.0 }],
            scheme: Scheme::MacEnvelope,
            params,
            nbar_b: Some(nbar_b),
        });
    }

    let points = grid
        .iter()
        .map(|&t| {
            let r_a = t * cap_a;
            let r_b2 = cap_b.min(cap_sum - r_a).max(0.0);
            RatePair { r_b: r_a, r_c: r_b2, beta: t }
        })
        .collect();
    Ok(RegionCurve {
        points,
        scheme: Scheme::MacEnvelope,
        params,
        nbar_b: Some(nbar_b),
    })
}

/// Pareto-dominance test: true iff every point of `inner` is matched or
/// beaten by the outer boundary in both coordinates.
///
/// The outer curve is interpolated linearly in `r_b`; for a concave
/// boundary the chord lies below the curve, so interpolation never
/// overstates the outer region.
pub fn region_dominates(outer: &RegionCurve, inner: &RegionCurve) -> Result<bool> {
    if outer.points.is_empty() || inner.points.is_empty() {
        return Err(Error::Argument(
            "region dominance needs non-empty curves".into(),
        ));
    }
    // Sort by r_b and keep the best r_c among near-duplicate abscissas.
    let mut pts: Vec<(f64, f64)> = outer.points.iter().map(|p| (p.r_b, p.r_c)).collect();
    pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut frontier: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for (rb, rc) in pts {
        match frontier.last_mut() {
            Some(last) if (rb - last.0).abs() <= 1e-15 => {
                last.1 = last.1.max(rc);
            }
            _ => frontier.push((rb, rc)),
        }
    }

    const SLACK: f64 = 1e-12;
    let max_rb = frontier.last().unwrap().0;
    for p in &inner.points {
        if p.r_b > max_rb + SLACK {
            return Ok(false);
        }
        let rc_outer = interp_rc(&frontier, p.r_b);
        if p.r_c > rc_outer + SLACK {
            return Ok(false);
        }
    }
    Ok(true)
}

fn interp_rc(frontier: &[(f64, f64)], rb: f64) -> f64 {
    if rb <= frontier[0].0 {
        return frontier[0].1;
    }
    let idx = frontier.partition_point(|&(x, _)| x < rb);
    if idx >= frontier.len() {
        return frontier.last().unwrap().1;
    }
    let (x1, y1) = frontier[idx - 1];
    let (x2, y2) = frontier[idx];
    if x2 - x1 <= f64::EPSILON * x2.abs().max(1.0) {
        return y1.max(y2);
    }
    y1 + (y2 - y1) * (rb - x1) / (x2 - x1)
}
