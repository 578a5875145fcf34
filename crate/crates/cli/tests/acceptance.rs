//! Acceptance suite: one test per shipping criterion, each printing a
//! PASS line (visible with `--nocapture`) and enforcing its runtime
//! budget.

use bosoncast::entropy::{g_bits, g_scaling_inequality_check};
use bosoncast::fock::{
    coherent_region_quadrature, conjecture2_search, propagate, trace_distance,
    von_neumann_entropy_fock, wehrl_entropy_numeric, CandidateFamily, FockDensityMatrix,
    QuadratureConfig, WehrlGrid,
};
use bosoncast::gaussian::{
    random_state, random_symplectic, von_neumann_entropy, williamson,
};
use bosoncast::regions::{
    beta_grid, heterodyne_boundary, homodyne_boundary, mac_coherent_envelope, region_dominates,
    ultimate_boundary, ChannelParams,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::process::Command;
use std::time::Instant;

fn assert_runtime(start: Instant, limit_s: f64, criterion: &str) {
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed < limit_s,
        "{criterion} exceeded its runtime budget: {elapsed:.2} s >= {limit_s} s"
    );
}

/// Entropy of the dim-level thermal (geometric) state whose truncated
/// mean photon number is exactly `mean`, from a numerical eigenvalue
/// decomposition. Independent of the closed-form `g`.
fn truncated_thermal_eigen_entropy(mean: f64, dim: usize) -> f64 {
    let mean_of = |q: f64| -> f64 {
        let mut w = 1.0;
        let (mut total, mut first) = (0.0, 0.0);
        for n in 0..dim {
            total += w;
            first += n as f64 * w;
            w *= q;
        }
        first / total
    };
    let (mut lo, mut hi) = (mean / (mean + 1.0), 1.0 - 1e-12);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mean_of(mid) < mean {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let q = 0.5 * (lo + hi);
    let mut weights = Vec::with_capacity(dim);
    let mut w = 1.0;
    for _ in 0..dim {
        weights.push(w);
        w *= q;
    }
    let total: f64 = weights.iter().sum();
    let rho = nalgebra::DMatrix::<f64>::from_fn(dim, dim, |i, j| {
        if i == j {
            weights[i] / total
        } else {
            0.0
        }
    });
    let eigs = rho.symmetric_eigenvalues();
    eigs.iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

#[test]
fn criterion_01_region_endpoints() {
    let start = Instant::now();
    let params = ChannelParams::new(0.8, 15.0).unwrap();
    let curve = ultimate_boundary(&params, &beta_grid(257)).unwrap();
    let last = curve.points.last().unwrap();
    assert_eq!(last.beta, 1.0);
    assert!((last.r_b - g_bits(12.0).unwrap()).abs() < 1e-12);
    assert!(last.r_c.abs() < 1e-12);

    let oracle = truncated_thermal_eigen_entropy(12.0, 200);
    let err = (last.r_b - oracle).abs();
    assert!(
        err < 1e-6,
        "r_b = {} vs truncated-thermal eigenvalue entropy {} (err {err:.3e})",
        last.r_b,
        oracle
    );
    assert_runtime(start, 1.0, "criterion 1");
    println!(
        "acceptance criterion 1 (region endpoints vs eigen-entropy oracle): PASS (err {err:.2e} bits)"
    );
}

#[test]
fn criterion_02_coherent_detection_formulas() {
    let start = Instant::now();
    let (eta, nbar) = (0.8, 15.0);
    let params = ChannelParams::new(eta, nbar).unwrap();
    for beta in [0.0, 0.5, 1.0] {
        let hom = homodyne_boundary(&params, &[beta]).unwrap().points[0];
        let het = heterodyne_boundary(&params, &[beta]).unwrap().points[0];

        // Independent derivation: single-quadrature channel with noise
        // variance 1/4 for homodyne, two quadratures with noise 1/2 each
        // and the power split between them for heterodyne.
        let hom_b = 0.5 * (1.0 + eta * beta * nbar / 0.25).log2();
        let hom_c =
            0.5 * (1.0 + (1.0 - eta) * (1.0 - beta) * nbar / (0.25 + (1.0 - eta) * beta * nbar))
                .log2();
        let het_b = 2.0 * 0.5 * (1.0 + (eta * beta * nbar / 2.0) / 0.5).log2();
        let het_c = 2.0
            * 0.5
            * (1.0
                + ((1.0 - eta) * (1.0 - beta) * nbar / 2.0)
                    / (0.5 + (1.0 - eta) * beta * nbar / 2.0))
                .log2();

        assert!((hom.r_b - hom_b).abs() < 1e-12, "homodyne r_b at beta {beta}");
        assert!((hom.r_c - hom_c).abs() < 1e-12, "homodyne r_c at beta {beta}");
        assert!((het.r_b - het_b).abs() < 1e-12, "heterodyne r_b at beta {beta}");
        assert!((het.r_c - het_c).abs() < 1e-12, "heterodyne r_c at beta {beta}");
    }
    assert_runtime(start, 1.0, "criterion 2");
    println!("acceptance criterion 2 (coherent-detection SNR re-derivation): PASS");
}

#[test]
fn criterion_03_figure3_qualitative_claims() {
    let start = Instant::now();
    let grid = beta_grid(257);

    // Photon-starved: homodyne beats heterodyne at beta = 1.
    let p1 = ChannelParams::new(0.8, 1.0).unwrap();
    let hom1 = homodyne_boundary(&p1, &grid).unwrap();
    let het1 = heterodyne_boundary(&p1, &grid).unwrap();
    assert!(hom1.points.last().unwrap().r_b > het1.points.last().unwrap().r_b);

    // Photon-rich: the order reverses.
    let p15 = ChannelParams::new(0.8, 15.0).unwrap();
    let hom15 = homodyne_boundary(&p15, &grid).unwrap();
    let het15 = heterodyne_boundary(&p15, &grid).unwrap();
    assert!(het15.points.last().unwrap().r_b > hom15.points.last().unwrap().r_b);

    // Optimum dominates both everywhere, exactly.
    for p in [p1, p15] {
        let opt = ultimate_boundary(&p, &grid).unwrap();
        let hom = homodyne_boundary(&p, &grid).unwrap();
        let het = heterodyne_boundary(&p, &grid).unwrap();
        for i in 0..grid.len() {
            assert!(opt.points[i].r_b >= hom.points[i].r_b);
            assert!(opt.points[i].r_b >= het.points[i].r_b);
        }
        assert!(region_dominates(&opt, &hom).unwrap());
        assert!(region_dominates(&opt, &het).unwrap());
    }
    assert_runtime(start, 1.0, "criterion 3");
    println!("acceptance criterion 3 (figure-3 detection orderings): PASS");
}

#[test]
fn criterion_04_figure4_mac_dominance() {
    let start = Instant::now();
    let grid = beta_grid(257);
    let broadcast = ultimate_boundary(&ChannelParams::new(0.8, 15.0).unwrap(), &grid).unwrap();
    let mac = mac_coherent_envelope(0.8, 15.0, 15.0, &grid).unwrap();
    assert!(region_dominates(&mac, &broadcast).unwrap());
    assert_runtime(start, 5.0, "criterion 4");
    println!("acceptance criterion 4 (figure-4 MAC envelope dominance): PASS");
}

#[test]
fn criterion_05_williamson_suite() {
    let start = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(505);
    let mut worst_recon = 0.0_f64;
    let mut worst_sympl = 0.0_f64;
    for _ in 0..100 {
        let n = rng.random_range(1..=4usize);
        let state = random_state(n, 3.0, 1.2, &mut rng).unwrap();
        let dec = williamson(&state).unwrap();
        worst_recon = worst_recon.max(dec.reconstruction_residual(&state));
        worst_sympl = worst_sympl.max(dec.symplectic_residual());
    }
    assert!(worst_recon < 1e-10, "reconstruction residual {worst_recon:.3e}");
    assert!(worst_sympl < 1e-10, "symplectic residual {worst_sympl:.3e}");

    let mut worst_drift = 0.0_f64;
    for _ in 0..100 {
        let n = rng.random_range(1..=4usize);
        let state = random_state(n, 2.0, 1.0, &mut rng).unwrap();
        let s0 = von_neumann_entropy(&state).unwrap().to_bits();
        let sym = random_symplectic(n, 1.0, &mut rng);
        let s1 = von_neumann_entropy(&state.apply_symplectic(&sym).unwrap())
            .unwrap()
            .to_bits();
        worst_drift = worst_drift.max((s0 - s1).abs());
    }
    assert!(worst_drift < 1e-9, "entropy drift {worst_drift:.3e}");
    assert_runtime(start, 30.0, "criterion 5");
    println!(
        "acceptance criterion 5 (Williamson suite): PASS (recon {worst_recon:.2e}, \
         symplectic {worst_sympl:.2e}, entropy drift {worst_drift:.2e})"
    );
}

#[test]
fn criterion_06_gaussian_fock_cross_oracle() {
    let start = Instant::now();
    let dim = 60;

    let vac = FockDensityMatrix::vacuum(dim).unwrap();
    let th1 = FockDensityMatrix::thermal(1.0, dim).unwrap();
    let (rho_c, _) = propagate(&vac, &th1, 0.8).unwrap();
    let s = von_neumann_entropy_fock(&rho_c).unwrap().to_bits();
    let err = (s - g_bits(0.2).unwrap()).abs();
    assert!(err < 1e-6, "output entropy off by {err:.3e} bits");

    let (rho_c2, rho_d2) = propagate(&th1, &th1, 0.5).unwrap();
    let closed = FockDensityMatrix::thermal(1.0, dim).unwrap();
    let dist_c = trace_distance(&rho_c2, &closed).unwrap();
    let dist_d = trace_distance(&rho_d2, &closed).unwrap();
    assert!(dist_c < 1e-8, "c arm trace distance {dist_c:.3e}");
    assert!(dist_d < 1e-8, "d arm trace distance {dist_d:.3e}");
    assert_runtime(start, 30.0, "criterion 6");
    println!(
        "acceptance criterion 6 (Gaussian/Fock cross-oracle): PASS \
         (entropy err {err:.2e}, trace distance {dist_c:.2e})"
    );
}

#[test]
fn criterion_07_wehrl_numerics() {
    let start = Instant::now();
    let grid = WehrlGrid::default();

    let vac = FockDensityMatrix::vacuum(40).unwrap();
    let w_vac = wehrl_entropy_numeric(&vac, &grid).unwrap().to_nats();
    assert!((w_vac - 1.0).abs() < 1e-3, "vacuum Wehrl {w_vac}");

    let th = FockDensityMatrix::thermal(1.0, 60).unwrap();
    let w_th = wehrl_entropy_numeric(&th, &grid).unwrap().to_nats();
    let expect_th = 1.0 + 2.0_f64.ln();
    assert!((w_th - expect_th).abs() < 1e-3, "thermal Wehrl {w_th}");

    let vac60 = FockDensityMatrix::vacuum(60).unwrap();
    let (rho_c, _) = propagate(&vac60, &th, 0.5).unwrap();
    let w_out = wehrl_entropy_numeric(&rho_c, &grid).unwrap().to_nats();
    let expect_out = 1.0 + 1.5_f64.ln();
    assert!((w_out - expect_out).abs() < 1e-3, "output Wehrl {w_out}");
    assert_runtime(start, 60.0, "criterion 7");
    println!(
        "acceptance criterion 7 (Wehrl integrals): PASS \
         (vacuum {:.2e}, thermal {:.2e}, output {:.2e})",
        (w_vac - 1.0).abs(),
        (w_th - expect_th).abs(),
        (w_out - expect_out).abs()
    );
}

#[test]
fn criterion_08_quadrature_validation() {
    let start = Instant::now();
    let params = ChannelParams::new(0.8, 2.0).unwrap();
    let config = QuadratureConfig::with_dim(50);
    let mut worst = 0.0_f64;
    for beta in [0.0, 0.5, 1.0] {
        let out = coherent_region_quadrature(&params, beta, &config).unwrap();
        let eb = (out.r_b_numeric - out.r_b_closed_form).abs();
        let ec = (out.r_c_numeric - out.r_c_closed_form).abs();
        assert!(eb < 1e-3, "beta {beta}: r_b err {eb:.3e}");
        assert!(ec < 1e-3, "beta {beta}: r_c err {ec:.3e}");
        worst = worst.max(eb).max(ec);
    }
    assert_runtime(start, 300.0, "criterion 8");
    println!("acceptance criterion 8 (rate-region quadrature): PASS (worst err {worst:.2e} bits)");
}

#[test]
fn criterion_09_conjecture2_harness() {
    let start = Instant::now();
    let report = conjecture2_search(0.7, 1.0, 40, &CandidateFamily::all(), 2000, 20260808).unwrap();
    let floor = g_bits(0.3).unwrap();
    assert!((report.target_entropy_bits - floor).abs() < 1e-12);
    assert!(
        report.best_entropy_bits >= floor - 1e-6,
        "search found entropy {} below the conjectured floor {floor}",
        report.best_entropy_bits
    );
    assert!(
        report.thermal_gap.abs() <= 1e-6,
        "thermal candidate missed the floor by {}",
        report.thermal_gap
    );
    assert!(report.candidates_evaluated + report.candidates_skipped == 2000);
    assert_runtime(start, 600.0, "criterion 9");
    println!(
        "acceptance criterion 9 (conjecture-2 falsification harness): PASS \
         (gap {:.2e}, {} evaluated / {} skipped)",
        report.gap, report.candidates_evaluated, report.candidates_skipped
    );
}

#[test]
fn criterion_10_scaling_inequality_sweep() {
    let start = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(1010);
    let mut worst_violation = 0.0_f64;
    for _ in 0..10_000 {
        let n = rng.random_range(1..=8usize);
        let xs: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..=20.0)).collect();
        let eta = rng.random_range(0.0..=1.0);
        let check = g_scaling_inequality_check(&xs, eta).unwrap();
        assert!(check.holds, "violated at xs = {xs:?}, eta = {eta}");
        worst_violation = worst_violation.max(check.rhs - check.lhs);
    }
    assert!(worst_violation <= 1e-12);
    assert_runtime(start, 10.0, "criterion 10");
    println!(
        "acceptance criterion 10 (averaging inequality, 10^4 draws): PASS \
         (worst rhs - lhs = {worst_violation:.2e})"
    );
}

#[test]
fn criterion_11_cli_reproducibility() {
    let bin = env!("CARGO_BIN_EXE_bosoncast");
    let dir = std::env::temp_dir().join(format!("bosoncast-accept-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let run = |args: &[&str]| -> Vec<u8> {
        let out = Command::new(bin)
            .args(args)
            .env("BOSONCAST_THREADS", "2")
            .output()
            .expect("CLI run failed");
        assert!(
            out.status.success(),
            "command {args:?} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };

    let cases: Vec<Vec<String>> = vec![
        vec![
            "region", "--scheme", "optimum", "--eta", "0.8", "--nbar", "15",
        ]
        .into_iter()
        .map(String::from)
        .collect(),
        vec![
            "entropy", "g", "--x", "1",
        ]
        .into_iter()
        .map(String::from)
        .collect(),
        vec![
            "conjecture", "search", "--eta", "0.7", "--k", "1", "--dim", "30", "--budget", "120",
            "--seed", "7",
        ]
        .into_iter()
        .map(String::from)
        .collect(),
        vec![
            "wehrl", "--k", "1", "--dim", "40", "--radial", "80", "--angular", "64",
        ]
        .into_iter()
        .map(String::from)
        .collect(),
        vec![
            "quadrature", "--eta", "0.8", "--nbar", "2", "--beta", "0.5", "--dim", "40",
            "--t-nodes", "12", "--mix-radial", "16", "--mix-angular", "48", "--no-monitor",
        ]
        .into_iter()
        .map(String::from)
        .collect(),
    ];
    for case in &cases {
        let args: Vec<&str> = case.iter().map(String::as_str).collect();
        let first = run(&args);
        let second = run(&args);
        assert_eq!(
            first, second,
            "output of {case:?} is not byte-identical across reruns"
        );
    }

    // File-writing paths must also reproduce byte-for-byte.
    let out_a = dir.join("a");
    let out_b = dir.join("b");
    for out in [&out_a, &out_b] {
        let t = Command::new(bin)
            .args([
                "figure",
                "fig4",
                "--out-dir",
                out.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(t.status.success());
    }
    for name in ["fig4_broadcast.csv", "fig4_mac_envelope.csv", "fig4_verdict.txt"] {
        let a = std::fs::read(out_a.join(name)).unwrap();
        let b = std::fs::read(out_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
    }
    std::fs::remove_dir_all(&dir).ok();
    println!("acceptance criterion 11 (CLI reproducibility): PASS");
}
