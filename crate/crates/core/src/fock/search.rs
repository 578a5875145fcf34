//! Counterexample searches for the minimum-output-entropy claims on
//! non-Gaussian states.
//!
//! The second-conjecture harness generates candidate `b`-port states,
//! projects each onto the entropy constraint `S(rho_b) = g(K)` by solving
//! a one-dimensional temperature-like parameter with bisection, sends
//! vacuum (x) candidate through the beam splitter, and records the output
//! entropies. The candidate families are this artifact's choice; nothing
//! here proves the conjecture, it only hunts for violations.

use super::operators::{displacement_operator, squeeze_operator};
use super::{BeamSplitter, C64, FockDensityMatrix};
use crate::entropy::g_bits;
use crate::error::{Error, Result};
use crate::fock::von_neumann_entropy_fock;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// How close each candidate must sit to the entropy constraint, bits.
const CONSTRAINT_TOL: f64 = 1e-9;

/// Candidate families for [`conjecture2_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateFamily {
    /// Random photon-number-diagonal mixtures with escort-temperature
    /// projection.
    DiagonalFock,
    /// Random low-rank mixtures of random pure states.
    RandomLowRank,
    /// Displaced and/or squeezed thermal states with the base temperature
    /// re-solved to meet the constraint.
    PerturbedThermal,
}

impl CandidateFamily {
    pub fn all() -> Vec<CandidateFamily> {
        vec![
            CandidateFamily::DiagonalFock,
            CandidateFamily::RandomLowRank,
            CandidateFamily::PerturbedThermal,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            CandidateFamily::DiagonalFock => "diagonal-fock",
            CandidateFamily::RandomLowRank => "random-low-rank",
            CandidateFamily::PerturbedThermal => "perturbed-thermal",
        }
    }

    pub fn parse(s: &str) -> Result<CandidateFamily> {
        match s {
            "diagonal-fock" => Ok(CandidateFamily::DiagonalFock),
            "random-low-rank" => Ok(CandidateFamily::RandomLowRank),
            "perturbed-thermal" => Ok(CandidateFamily::PerturbedThermal),
            other => Err(Error::Argument(format!(
                "unknown candidate family '{other}' \
                 (expected diagonal-fock, random-low-rank or perturbed-thermal)"
            ))),
        }
    }
}

/// Outcome of a conjecture-2 search run.
///
/// The harness probes the single-channel-use (weak) form of the
/// conjecture only; the multi-mode strong form with correlated inputs is
/// out of reach of a desk-scale Fock truncation, and `scope` records
/// that.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchReport {
    pub eta: f64,
    pub k: f64,
    pub dim: usize,
    pub seed: u64,
    pub families: Vec<String>,
    pub candidates_evaluated: usize,
    pub candidates_skipped: usize,
    pub best_entropy_bits: f64,
    pub target_entropy_bits: f64,
    pub gap: f64,
    pub constraint_residual: f64,
    pub best_state_descriptor: String,
    /// Output-entropy gap of the thermal candidate itself.
    pub thermal_gap: f64,
    pub scope: String,
}

struct CandidateSpec {
    id: usize,
    family: CandidateFamily,
    /// Raw draws; meaning depends on the family.
    energies: Vec<f64>,
    amplitudes: Vec<C64>,
    displacement: C64,
    squeeze: C64,
}

struct Evaluated {
    id: usize,
    entropy_bits: f64,
    residual: f64,
    descriptor: String,
}

/// Searches non-Gaussian `b`-port states of entropy `g(K)` for output
/// entropy below `g((1-eta) K)` at transmissivity `eta`, vacuum on the
/// other port. Candidate id 0 is always the thermal state itself.
pub fn conjecture2_search(
    eta: f64,
    k: f64,
    dim: usize,
    families: &[CandidateFamily],
    budget: usize,
    seed: u64,
) -> Result<SearchReport> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::Domain(format!(
            "transmissivity must lie in (0, 1), got {eta}"
        )));
    }
    if !k.is_finite() || k <= 0.0 {
        return Err(Error::Domain(format!(
            "constraint photon number must be positive, got {k}"
        )));
    }
    if dim < 4 {
        return Err(Error::Domain(format!("search needs dim >= 4, got {dim}")));
    }
    if families.is_empty() {
        return Err(Error::Argument("at least one candidate family".into()));
    }
    if budget == 0 {
        return Err(Error::Argument("budget must be positive".into()));
    }

    let target_bits = g_bits((1.0 - eta) * k)?;
    let entropy_target = g_bits(k)?;
    let bs = BeamSplitter::new(eta, dim)?;
    let vacuum = FockDensityMatrix::vacuum(dim)?;

    // Draw every candidate's raw parameters sequentially so the report is
    // reproducible no matter how the evaluation is scheduled.
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut specs = Vec::with_capacity(budget);
    for id in 0..budget {
        let family = if id == 0 {
            CandidateFamily::PerturbedThermal
        } else {
            families[id % families.len()]
        };
        specs.push(draw_spec(id, family, dim, &mut rng));
    }

    let results: Vec<Result<Option<Evaluated>>> = specs
        .par_iter()
        .map(|spec| evaluate_candidate(spec, k, entropy_target, dim, &bs, &vacuum))
        .collect();

    let mut evaluated = 0usize;
    let mut skipped = 0usize;
    let mut best: Option<Evaluated> = None;
    let mut thermal_gap = 0.0;
    for r in results {
        match r? {
            None => skipped += 1,
            Some(ev) => {
                evaluated += 1;
                if ev.id == 0 {
                    thermal_gap = ev.entropy_bits - target_bits;
                }
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ev.entropy_bits < b.entropy_bits
                            || (ev.entropy_bits == b.entropy_bits && ev.id < b.id)
                    }
                };
                if better {
                    best = Some(ev);
                }
            }
        }
    }
    let best = best.ok_or_else(|| {
        Error::Numeric("every candidate failed constraint projection".into())
    })?;

    Ok(SearchReport {
        eta,
        k,
        dim,
        seed,
        families: families.iter().map(|f| f.name().to_string()).collect(),
        candidates_evaluated: evaluated,
        candidates_skipped: skipped,
        best_entropy_bits: best.entropy_bits,
        target_entropy_bits: target_bits,
        gap: best.entropy_bits - target_bits,
        constraint_residual: best.residual,
        best_state_descriptor: best.descriptor,
        thermal_gap,
        scope: "single-channel-use (weak) conjecture 2; multi-mode correlated inputs untested"
            .into(),
    })
}

fn draw_spec<R: Rng>(
    id: usize,
    family: CandidateFamily,
    dim: usize,
    rng: &mut R,
) -> CandidateSpec {
    let mut spec = CandidateSpec {
        id,
        family,
        energies: Vec::new(),
        amplitudes: Vec::new(),
        displacement: C64::new(0.0, 0.0),
        squeeze: C64::new(0.0, 0.0),
    };
    if id == 0 {
        return spec; // exact thermal candidate
    }
    match family {
        CandidateFamily::DiagonalFock => {
            spec.energies = (0..dim).map(|_| rng.random_range(0.0..1.0)).collect();
        }
        CandidateFamily::RandomLowRank => {
            let rank = rng.random_range(2..=8usize);
            spec.energies = (0..rank).map(|_| rng.random_range(0.0..1.0)).collect();
            spec.amplitudes = (0..rank * dim)
                .map(|_| {
                    let re: f64 = StandardNormal.sample(rng);
                    let im: f64 = StandardNormal.sample(rng);
                    C64::new(re, im)
                })
                .collect();
        }
        CandidateFamily::PerturbedThermal => {
            let which = rng.random_range(0..3u8);
            if which != 1 {
                let mag = rng.random_range(0.05..1.2);
                let phase = rng.random_range(0.0..std::f64::consts::TAU);
                spec.displacement = C64::from_polar(mag, phase);
            }
            if which != 0 {
                let mag = rng.random_range(0.05..0.7);
                let phase = rng.random_range(0.0..std::f64::consts::TAU);
                spec.squeeze = C64::from_polar(mag, phase);
            }
        }
    }
    spec
}

fn evaluate_candidate(
    spec: &CandidateSpec,
    k: f64,
    entropy_target: f64,
    dim: usize,
    bs: &BeamSplitter,
    vacuum: &FockDensityMatrix,
) -> Result<Option<Evaluated>> {
    let built = build_candidate(spec, k, entropy_target, dim)?;
    let (rho_b, descriptor) = match built {
        None => return Ok(None),
        Some(x) => x,
    };
    let s_in = von_neumann_entropy_fock(&rho_b)?.to_bits();
    let residual = (s_in - entropy_target).abs();
    if residual > 10.0 * CONSTRAINT_TOL {
        return Ok(None);
    }
    let (rho_c, _) = bs.propagate(vacuum, &rho_b)?;
    let entropy_bits = von_neumann_entropy_fock(&rho_c)?.to_bits();
    Ok(Some(Evaluated { id: spec.id, entropy_bits, residual, descriptor }))
}

fn build_candidate(
    spec: &CandidateSpec,
    k: f64,
    entropy_target: f64,
    dim: usize,
) -> Result<Option<(FockDensityMatrix, String)>> {
    if spec.id == 0 {
        // Thermal candidate, base temperature bisected so the truncated
        // state meets the constraint exactly.
        let probs = match solve_thermal_weights(entropy_target, dim) {
            None => return Ok(None),
            Some(p) => p,
        };
        let rho = FockDensityMatrix::diagonal(&probs, dim)?;
        return Ok(Some((rho, format!("thermal, K = {k}"))));
    }
    match spec.family {
        CandidateFamily::DiagonalFock => {
            let probs = match escort_project(&spec.energies, entropy_target) {
                None => return Ok(None),
                Some(p) => p,
            };
            let rho = FockDensityMatrix::diagonal(&probs, dim)?;
            Ok(Some((rho, "diagonal Fock mixture".into())))
        }
        CandidateFamily::RandomLowRank => {
            let rank = spec.energies.len();
            let mut vectors = Vec::with_capacity(rank);
            for r in 0..rank {
                let v = DVector::from_iterator(
                    dim,
                    spec.amplitudes[r * dim..(r + 1) * dim].iter().cloned(),
                );
                let norm = v.norm();
                vectors.push(v / C64::new(norm, 0.0));
            }
            // Entropy of the mixture from the rank x rank Gram kernel.
            let entropy_of = |weights: &[f64]| -> f64 {
                let m = DMatrix::from_fn(rank, rank, |i, j| {
                    vectors[i].dotc(&vectors[j]) * C64::new((weights[i] * weights[j]).sqrt(), 0.0)
                });
                let vals = super::hermitian_eigenvalues(&m);
                vals.iter()
                    .filter(|&&p| p > 1e-300)
                    .map(|&p| -p * p.log2())
                    .sum()
            };
            let weights =
                match escort_project_with(&spec.energies, entropy_target, entropy_of) {
                    None => return Ok(None),
                    Some(w) => w,
                };
            let mut rho = DMatrix::<C64>::zeros(dim, dim);
            for (w, v) in weights.iter().zip(&vectors) {
                rho += v * v.adjoint() * C64::new(*w, 0.0);
            }
            let rho = FockDensityMatrix::from_raw(rho, dim, 1, 0.0);
            Ok(Some((rho, format!("rank-{rank} random mixture"))))
        }
        CandidateFamily::PerturbedThermal => {
            // Unitaries preserve the spectrum, so the constraint is solved
            // on the base thermal weights alone.
            let probs = match solve_thermal_weights(entropy_target, dim) {
                None => return Ok(None),
                Some(p) => p,
            };
            let mut rho = FockDensityMatrix::diagonal(&probs, dim)?;
            let mut parts = vec!["thermal".to_string()];
            if spec.squeeze.norm() > 0.0 {
                let s = squeeze_operator(spec.squeeze, dim)?;
                rho = rho.apply_unitary(&s)?;
                parts.push(format!("squeezed r = {:.3}", spec.squeeze.norm()));
            }
            if spec.displacement.norm() > 0.0 {
                let d = displacement_operator(spec.displacement, dim)?;
                rho = rho.apply_unitary(&d)?;
                parts.push(format!("displaced |a| = {:.3}", spec.displacement.norm()));
            }
            Ok(Some((rho, parts.join(", "))))
        }
    }
}

/// Renormalized geometric weights whose truncated entropy equals the
/// target, solved by bisection on the mean photon number.
fn solve_thermal_weights(entropy_target: f64, dim: usize) -> Option<Vec<f64>> {
    let weights = |kk: f64| -> Vec<f64> {
        let q = kk / (kk + 1.0);
        let mut p = Vec::with_capacity(dim);
        let mut w = 1.0;
        for _ in 0..dim {
            p.push(w);
            w *= q;
        }
        let total: f64 = p.iter().sum();
        p.iter().map(|x| x / total).collect()
    };
    let entropy_of = |p: &[f64]| -> f64 {
        p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
    };
    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    while entropy_of(&weights(hi)) < entropy_target {
        hi *= 2.0;
        if hi > 1e12 {
            return None;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if entropy_of(&weights(mid)) < entropy_target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    let p = weights(0.5 * (lo + hi));
    ((entropy_of(&p) - entropy_target).abs() <= CONSTRAINT_TOL).then_some(p)
}

/// Escort projection with Shannon entropy of the weights themselves.
fn escort_project(energies: &[f64], entropy_target: f64) -> Option<Vec<f64>> {
    escort_project_with(energies, entropy_target, |w| {
        w.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
    })
}

/// Solves `S(escort_beta(energies)) = target` for the inverse temperature
/// `beta`, where `escort_beta ~ exp(-beta E)`. The entropy functional is
/// pluggable so low-rank mixtures can use their Gram spectrum. Scans for
/// a bracket first, then bisects; returns None when the target is outside
/// the family's reach.
fn escort_project_with<F>(energies: &[f64], entropy_target: f64, entropy_of: F) -> Option<Vec<f64>>
where
    F: Fn(&[f64]) -> f64,
{
    let weights = |beta: f64| -> Vec<f64> {
        let min_e = energies.iter().cloned().fold(f64::INFINITY, f64::min);
        let mut w: Vec<f64> = energies.iter().map(|&e| (-beta * (e - min_e)).exp()).collect();
        let total: f64 = w.iter().sum();
        for x in w.iter_mut() {
            *x /= total;
        }
        w
    };
    // Entropy decreases from S(uniform-ish) at beta = 0 toward 0; scan a
    // geometric beta ladder for a sign change.
    let mut lo_beta = 0.0_f64;
    let s0 = entropy_of(&weights(0.0));
    if s0 < entropy_target {
        return None;
    }
    let mut hi_beta = 1.0_f64;
    let mut found = false;
    for _ in 0..60 {
        if entropy_of(&weights(hi_beta)) <= entropy_target {
            found = true;
            break;
        }
        lo_beta = hi_beta;
        hi_beta *= 2.0;
    }
    if !found {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo_beta + hi_beta);
        if entropy_of(&weights(mid)) > entropy_target {
            lo_beta = mid;
        } else {
            hi_beta = mid;
        }
        if hi_beta - lo_beta <= f64::EPSILON * hi_beta.max(1.0) {
            break;
        }
    }
    let w = weights(0.5 * (lo_beta + hi_beta));
    ((entropy_of(&w) - entropy_target).abs() <= CONSTRAINT_TOL).then_some(w)
}

/// One row of a conjecture-1 local scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LocalCheckEntry {
    pub family: String,
    pub magnitude: f64,
    pub output_entropy_bits: f64,
    /// Output entropy minus the vacuum baseline, bits.
    pub excess: f64,
}

/// Report of [`conjecture1_local_check`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LocalCheckReport {
    pub eta: f64,
    pub k: f64,
    pub dim: usize,
    pub seed: u64,
    pub baseline_entropy_bits: f64,
    pub target_entropy_bits: f64,
    pub entries: Vec<LocalCheckEntry>,
    /// True iff no perturbation fell below the vacuum baseline.
    pub holds: bool,
}

/// Probes whether vacuum on the `a` port is a local minimum of the output
/// entropy with `b` fixed thermal: sweeps coherent, squeezed-vacuum,
/// single-photon and vacuum/one-photon-mixture perturbations of the
/// stated magnitudes.
pub fn conjecture1_local_check(
    eta: f64,
    k: f64,
    dim: usize,
    magnitudes: &[f64],
    seed: u64,
) -> Result<LocalCheckReport> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::Domain(format!(
            "transmissivity must lie in (0, 1), got {eta}"
        )));
    }
    if !k.is_finite() || k <= 0.0 {
        return Err(Error::Domain(format!(
            "thermal photon number must be positive, got {k}"
        )));
    }
    if magnitudes.is_empty() {
        return Err(Error::Argument("need at least one perturbation magnitude".into()));
    }
    for &m in magnitudes {
        if !m.is_finite() || m <= 0.0 {
            return Err(Error::Domain(format!(
                "perturbation magnitudes must be positive, got {m}"
            )));
        }
    }

    let bs = BeamSplitter::new(eta, dim)?;
    let rho_b = FockDensityMatrix::thermal(k, dim)?;
    let vacuum = FockDensityMatrix::vacuum(dim)?;
    let (rho_c0, _) = bs.propagate(&vacuum, &rho_b)?;
    let baseline = von_neumann_entropy_fock(&rho_c0)?.to_bits();

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut entries = Vec::new();
    let mut run = |rho_a: FockDensityMatrix, family: &str, magnitude: f64| -> Result<()> {
        let (rho_c, _) = bs.propagate(&rho_a, &rho_b)?;
        let s = von_neumann_entropy_fock(&rho_c)?.to_bits();
        entries.push(LocalCheckEntry {
            family: family.into(),
            magnitude,
            output_entropy_bits: s,
            excess: s - baseline,
        });
        Ok(())
    };

    for &m in magnitudes {
        let phase = rng.random_range(0.0..std::f64::consts::TAU);
        run(
            FockDensityMatrix::coherent(C64::from_polar(m, phase), dim)?,
            "coherent",
            m,
        )?;
        let sq = squeeze_operator(C64::from_polar(m, phase), dim)?;
        run(
            FockDensityMatrix::vacuum(dim)?.apply_unitary(&sq)?,
            "squeezed-vacuum",
            m,
        )?;
        let p = m.min(1.0);
        let mut probs = vec![0.0; 2];
        probs[0] = 1.0 - p;
        probs[1] = p;
        run(
            FockDensityMatrix::diagonal(&probs, dim)?,
            "vacuum-one-photon-mixture",
            m,
        )?;
    }
    run(FockDensityMatrix::fock(1, dim)?, "single-photon", 1.0)?;

    let holds = entries.iter().all(|e| e.excess >= -1e-9);
    Ok(LocalCheckReport {
        eta,
        k,
        dim,
        seed,
        baseline_entropy_bits: baseline,
        target_entropy_bits: g_bits((1.0 - eta) * k)?,
        entries,
        holds,
    })
}
