use bosoncast::entropy::{g, g_inv, g_scaling_inequality_check, EntropyBase, EntropyValue};
use bosoncast::error::{Error, Result};
use bosoncast::fock::{
    coherent_region_quadrature, conjecture1_local_check, conjecture2_search, propagate,
    wehrl_entropy_numeric, CandidateFamily, FockDensityMatrix, QuadratureConfig, WehrlGrid,
};
use bosoncast::gaussian::{
    min_output_entropy_gaussian, williamson, GaussianSearchConfig, GaussianState,
    GaussianStateJson,
};
use bosoncast::regions::{
    beta_grid, heterodyne_boundary, homodyne_boundary, mac_coherent_envelope, region_dominates,
    ultimate_boundary, ChannelParams, RegionCurve, DEFAULT_GRID_POINTS,
};

use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            if let Some(parent) = p.parent() {
                if !parent.as_os_str().is_empty() {
                    fs::create_dir_all(parent)
                        .map_err(|e| Error::Argument(format!("cannot create {parent:?}: {e}")))?;
                }
            }
            fs::write(p, text).map_err(|e| Error::Argument(format!("cannot write {p:?}: {e}")))
        }
        None => {
            print!("{text}");
            std::io::stdout().flush().ok();
            Ok(())
        }
    }
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Numeric(format!("JSON encoding failed: {e}")))?;
    write_text(path, &(text + "\n"))
}

fn parse_comma_f64(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| Error::Argument(format!("cannot parse number '{tok}'")))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// region

#[derive(Args)]
pub struct RegionArgs {
    /// optimum | homodyne | heterodyne | mac-envelope
    #[arg(long)]
    scheme: String,
    #[arg(long)]
    eta: f64,
    /// Mean photon budget (user A's budget for the MAC envelope).
    #[arg(long)]
    nbar: f64,
    /// Second user's budget, MAC envelope only (defaults to --nbar).
    #[arg(long)]
    nbar_b: Option<f64>,
    /// Grid resolution.
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    points: usize,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn curve_for(scheme: &str, eta: f64, nbar: f64, nbar_b: Option<f64>, points: usize) -> Result<RegionCurve> {
    if points < 2 {
        return Err(Error::Argument("need at least 2 grid points".into()));
    }
    let grid = beta_grid(points);
    match scheme {
        "optimum" => ultimate_boundary(&ChannelParams::new(eta, nbar)?, &grid),
        "homodyne" => homodyne_boundary(&ChannelParams::new(eta, nbar)?, &grid),
        "heterodyne" => heterodyne_boundary(&ChannelParams::new(eta, nbar)?, &grid),
        "mac-envelope" | "mac_envelope" => {
            mac_coherent_envelope(eta, nbar, nbar_b.unwrap_or(nbar), &grid)
        }
        other => Err(Error::Argument(format!(
            "unknown scheme '{other}' (expected optimum, homodyne, heterodyne or mac-envelope)"
        ))),
    }
}

pub fn run_region(args: RegionArgs) -> Result<()> {
    let curve = curve_for(&args.scheme, args.eta, args.nbar, args.nbar_b, args.points)?;
    write_text(args.out.as_deref(), &curve.to_csv())
}

// ---------------------------------------------------------------------------
// figure

#[derive(Args)]
pub struct FigureArgs {
    /// fig3 | fig4
    which: String,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    points: usize,
}

pub fn run_figure(args: FigureArgs) -> Result<()> {
    fs::create_dir_all(&args.out_dir)
        .map_err(|e| Error::Argument(format!("cannot create {:?}: {e}", args.out_dir)))?;
    let grid = beta_grid(args.points);
    match args.which.as_str() {
        "fig3" => {
            for nbar in [1.0, 5.0, 15.0] {
                let params = ChannelParams::new(0.8, nbar)?;
                for (name, curve) in [
                    ("optimum", ultimate_boundary(&params, &grid)?),
                    ("homodyne", homodyne_boundary(&params, &grid)?),
                    ("heterodyne", heterodyne_boundary(&params, &grid)?),
                ] {
                    let path = args.out_dir.join(format!("fig3_{name}_nbar{nbar:.0}.csv"));
                    write_text(Some(&path), &curve.to_csv())?;
                }
            }
            println!("fig3: wrote 9 curves to {:?}", args.out_dir);
            Ok(())
        }
        "fig4" => {
            let params = ChannelParams::new(0.8, 15.0)?;
            let broadcast = ultimate_boundary(&params, &grid)?;
            let mac = mac_coherent_envelope(0.8, 15.0, 15.0, &grid)?;
            let dominates = region_dominates(&mac, &broadcast)?;
            write_text(
                Some(&args.out_dir.join("fig4_broadcast.csv")),
                &broadcast.to_csv(),
            )?;
            write_text(
                Some(&args.out_dir.join("fig4_mac_envelope.csv")),
                &mac.to_csv(),
            )?;
            let verdict =
                format!("MAC envelope dominates broadcast boundary: {dominates}\n");
            write_text(Some(&args.out_dir.join("fig4_verdict.txt")), &verdict)?;
            print!("{verdict}");
            Ok(())
        }
        other => Err(Error::Argument(format!(
            "unknown figure '{other}' (expected fig3 or fig4)"
        ))),
    }
}

// ---------------------------------------------------------------------------
// entropy

#[derive(Args)]
pub struct EntropyArgs {
    /// g | inv | scaling
    operation: String,
    /// Mean photon number for `g`.
    #[arg(long)]
    x: Option<f64>,
    /// Entropy value for `inv`.
    #[arg(long)]
    y: Option<f64>,
    /// Comma-separated photon numbers for `scaling`.
    #[arg(long)]
    xs: Option<String>,
    #[arg(long)]
    eta: Option<f64>,
    /// bits | nats
    #[arg(long, default_value = "bits")]
    base: String,
}

fn parse_base(s: &str) -> Result<EntropyBase> {
    match s {
        "bits" => Ok(EntropyBase::Bits),
        "nats" => Ok(EntropyBase::Nats),
        other => Err(Error::Argument(format!(
            "unknown base '{other}' (expected bits or nats)"
        ))),
    }
}

pub fn run_entropy(args: EntropyArgs) -> Result<()> {
    let base = parse_base(&args.base)?;
    match args.operation.as_str() {
        "g" => {
            let x = args
                .x
                .ok_or_else(|| Error::Argument("entropy g needs --x".into()))?;
            let v = g(x, base)?;
            println!("{} {}", fmt_sig(v.value), args.base);
            Ok(())
        }
        "inv" => {
            let y = args
                .y
                .ok_or_else(|| Error::Argument("entropy inv needs --y".into()))?;
            let x = g_inv(&EntropyValue { value: y, base })?;
            println!("{}", fmt_sig(x));
            Ok(())
        }
        "scaling" => {
            let xs = parse_comma_f64(
                &args
                    .xs
                    .ok_or_else(|| Error::Argument("entropy scaling needs --xs".into()))?,
            )?;
            let eta = args
                .eta
                .ok_or_else(|| Error::Argument("entropy scaling needs --eta".into()))?;
            let check = g_scaling_inequality_check(&xs, eta)?;
            write_json(None, &check)
        }
        other => Err(Error::Argument(format!(
            "unknown entropy operation '{other}' (expected g, inv or scaling)"
        ))),
    }
}

// ---------------------------------------------------------------------------
// williamson

#[derive(Args)]
pub struct WilliamsonArgs {
    /// GaussianState JSON file.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run_williamson(args: WilliamsonArgs) -> Result<()> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| Error::Argument(format!("cannot read {:?}: {e}", args.input)))?;
    let doc: GaussianStateJson = serde_json::from_str(&text)
        .map_err(|e| Error::Argument(format!("malformed state JSON: {e}")))?;
    let state = GaussianState::from_json(&doc)?;
    let dec = williamson(&state)?;
    let entropy = bosoncast::gaussian::von_neumann_entropy(&state)?;
    let n = dec.n_modes();
    let mut s_pairs = Vec::with_capacity(4 * n * n);
    for i in 0..2 * n {
        for j in 0..2 * n {
            let z = dec.s()[(i, j)];
            s_pairs.push([z.re, z.im]);
        }
    }
    let report = json!({
        "input": args.input.to_string_lossy(),
        "n_modes": n,
        "lambdas": dec.lambdas(),
        "s": s_pairs,
        "reconstruction_residual": dec.reconstruction_residual(&state),
        "symplectic_residual": dec.symplectic_residual(),
        "entropy_bits": entropy.to_bits(),
    });
    write_json(args.out.as_deref(), &report)
}

// ---------------------------------------------------------------------------
// wehrl

#[derive(Args)]
pub struct WehrlArgs {
    /// Thermal photon number of the probe state.
    #[arg(long)]
    k: f64,
    /// When set, integrate the output of vacuum (x) thermal(k) at this
    /// transmissivity instead of the thermal state itself.
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long, default_value_t = 60)]
    dim: usize,
    #[arg(long, default_value_t = 200)]
    radial: usize,
    #[arg(long, default_value_t = 128)]
    angular: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run_wehrl(args: WehrlArgs) -> Result<()> {
    let thermal = FockDensityMatrix::thermal(args.k, args.dim)?;
    let (rho, effective_k) = match args.eta {
        None => (thermal, args.k),
        Some(eta) => {
            let vac = FockDensityMatrix::vacuum(args.dim)?;
            let (rho_c, _) = propagate(&vac, &thermal, eta)?;
            (rho_c, (1.0 - eta) * args.k)
        }
    };
    let grid = WehrlGrid {
        radial_nodes: args.radial,
        angular_nodes: args.angular,
        radius: None,
        norm_tol: 1e-4,
    };
    let numeric = wehrl_entropy_numeric(&rho, &grid)?;
    let closed = bosoncast::gaussian::wehrl_entropy_gaussian_thermal(1, effective_k)?;
    let report = json!({
        "config": {
            "k": args.k,
            "eta": args.eta,
            "dim": args.dim,
            "radial": args.radial,
            "angular": args.angular,
        },
        "wehrl_nats": numeric.to_nats(),
        "closed_form_nats": closed.to_nats(),
        "error_nats": (numeric.to_nats() - closed.to_nats()).abs(),
    });
    write_json(args.out.as_deref(), &report)
}

// ---------------------------------------------------------------------------
// conjecture

#[derive(Args)]
pub struct ConjectureArgs {
    /// search | local | gauss
    operation: String,
    /// JSON config file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated families for `search`.
    #[arg(long)]
    families: Option<String>,
    /// Comma-separated perturbation magnitudes for `local`.
    #[arg(long)]
    magnitudes: Option<String>,
    /// Mode count for `gauss`.
    #[arg(long)]
    n_modes: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where `gauss` writes the best candidate as GaussianState JSON.
    #[arg(long)]
    best_state_out: Option<PathBuf>,
}

/// On-disk config mirror of the search parameters; every flag wins over
/// the corresponding file entry, which wins over the defaults.
#[derive(Debug, Default, Deserialize)]
struct ConjectureFileConfig {
    eta: Option<f64>,
    k: Option<f64>,
    dim: Option<usize>,
    budget: Option<usize>,
    seed: Option<u64>,
    families: Option<Vec<String>>,
    magnitudes: Option<Vec<f64>>,
    n_modes: Option<usize>,
}

pub fn run_conjecture(args: ConjectureArgs) -> Result<()> {
    let file: ConjectureFileConfig = match &args.config {
        None => ConjectureFileConfig::default(),
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Argument(format!("cannot read {path:?}: {e}")))?;
            serde_json::from_str(&text)
                .map_err(|e| Error::Argument(format!("malformed config JSON: {e}")))?
        }
    };
    let eta = args.eta.or(file.eta).unwrap_or(0.7);
    let k = args.k.or(file.k).unwrap_or(1.0);
    let dim = args.dim.or(file.dim).unwrap_or(40);
    let budget = args.budget.or(file.budget).unwrap_or(2000);
    let seed = args.seed.or(file.seed).unwrap_or(1);

    match args.operation.as_str() {
        "search" => {
            let family_names: Vec<String> = match (&args.families, &file.families) {
                (Some(s), _) => s.split(',').map(|t| t.trim().to_string()).collect(),
                (None, Some(v)) => v.clone(),
                (None, None) => CandidateFamily::all()
                    .iter()
                    .map(|f| f.name().to_string())
                    .collect(),
            };
            let families = family_names
                .iter()
                .map(|s| CandidateFamily::parse(s))
                .collect::<Result<Vec<_>>>()?;
            let report = conjecture2_search(eta, k, dim, &families, budget, seed)?;
            write_json(args.out.as_deref(), &report)
        }
        "local" => {
            let magnitudes = match (&args.magnitudes, &file.magnitudes) {
                (Some(s), _) => parse_comma_f64(s)?,
                (None, Some(v)) => v.clone(),
                (None, None) => vec![0.05, 0.1, 0.2],
            };
            let report = conjecture1_local_check(eta, k, dim, &magnitudes, seed)?;
            write_json(args.out.as_deref(), &report)
        }
        "gauss" => {
            let n_modes = args.n_modes.or(file.n_modes).unwrap_or(1);
            let config = GaussianSearchConfig {
                budget,
                seed,
                ..GaussianSearchConfig::default()
            };
            let report = min_output_entropy_gaussian(eta, k, n_modes, &config)?;
            if let Some(path) = &args.best_state_out {
                // The minimizer the report certifies is the thermal
                // product; emit it in the interchange format.
                let best = GaussianState::thermal(n_modes, k)?;
                write_json(Some(path), &best.to_json())?;
            }
            write_json(args.out.as_deref(), &report)
        }
        other => Err(Error::Argument(format!(
            "unknown conjecture operation '{other}' (expected search, local or gauss)"
        ))),
    }
}

// ---------------------------------------------------------------------------
// quadrature

#[derive(Args)]
pub struct QuadratureArgs {
    #[arg(long)]
    eta: f64,
    #[arg(long)]
    nbar: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = 50)]
    dim: usize,
    #[arg(long, default_value_t = 24)]
    t_nodes: usize,
    #[arg(long, default_value_t = 28)]
    mix_radial: usize,
    #[arg(long, default_value_t = 64)]
    mix_angular: usize,
    /// Skip the refinement convergence monitor.
    #[arg(long)]
    no_monitor: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run_quadrature(args: QuadratureArgs) -> Result<()> {
    let params = ChannelParams::new(args.eta, args.nbar)?;
    let mut config = QuadratureConfig::with_dim(args.dim);
    config.t_nodes = args.t_nodes;
    config.mix_radial = args.mix_radial;
    config.mix_angular = args.mix_angular;
    config.monitor = !args.no_monitor;
    let outcome = coherent_region_quadrature(&params, args.beta, &config)?;
    let report = json!({
        "config": {
            "eta": args.eta,
            "nbar": args.nbar,
            "beta": args.beta,
            "dim": args.dim,
            "t_nodes": args.t_nodes,
            "mix_radial": args.mix_radial,
            "mix_angular": args.mix_angular,
            "monitor": !args.no_monitor,
        },
        "r_b_numeric_bits": outcome.r_b_numeric,
        "r_c_numeric_bits": outcome.r_c_numeric,
        "r_b_closed_form_bits": outcome.r_b_closed_form,
        "r_c_closed_form_bits": outcome.r_c_closed_form,
        "r_b_error_bits": (outcome.r_b_numeric - outcome.r_b_closed_form).abs(),
        "r_c_error_bits": (outcome.r_c_numeric - outcome.r_c_closed_form).abs(),
        "refine_delta_bits": outcome.refine_delta,
    });
    write_json(args.out.as_deref(), &report)
}
