//! Cross-module oracle: inputs expressible both as Gaussian states and as
//! truncated Fock matrices must agree on beam-splitter output entropies.

use bosoncast::entropy::g_bits;
use bosoncast::fock::{propagate, von_neumann_entropy_fock, FockDensityMatrix};
use bosoncast::gaussian::{beam_splitter, von_neumann_entropy};
use bosoncast::GaussianState;

use num_complex::Complex64;

fn fock_output_entropy(
    a: &FockDensityMatrix,
    b: &FockDensityMatrix,
    eta: f64,
) -> (f64, f64) {
    let (c, d) = propagate(a, b, eta).unwrap();
    (
        von_neumann_entropy_fock(&c).unwrap().to_bits(),
        von_neumann_entropy_fock(&d).unwrap().to_bits(),
    )
}

fn gaussian_output_entropy(a: &GaussianState, b: &GaussianState, eta: f64) -> (f64, f64) {
    let out = beam_splitter(a, b, eta).unwrap();
    (
        von_neumann_entropy(&out.out_c).unwrap().to_bits(),
        von_neumann_entropy(&out.out_d).unwrap().to_bits(),
    )
}

#[test]
fn vacuum_thermal_agreement() {
    let dim = 60;
    for (k, eta) in [(1.0, 0.8), (0.5, 0.6), (2.0, 0.55)] {
        let (fc, fd) = fock_output_entropy(
            &FockDensityMatrix::vacuum(dim).unwrap(),
            &FockDensityMatrix::thermal(k, dim).unwrap(),
            eta,
        );
        let (gc, gd) = gaussian_output_entropy(
            &GaussianState::vacuum(1).unwrap(),
            &GaussianState::thermal(1, k).unwrap(),
            eta,
        );
        assert!((fc - gc).abs() < 1e-6, "c arm: fock {fc} vs gaussian {gc}");
        assert!((fd - gd).abs() < 1e-6, "d arm: fock {fd} vs gaussian {gd}");
        assert!((gc - g_bits((1.0 - eta) * k).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn thermal_thermal_agreement() {
    let dim = 50;
    let (fc, fd) = fock_output_entropy(
        &FockDensityMatrix::thermal(0.7, dim).unwrap(),
        &FockDensityMatrix::thermal(1.4, dim).unwrap(),
        0.65,
    );
    let (gc, gd) = gaussian_output_entropy(
        &GaussianState::thermal(1, 0.7).unwrap(),
        &GaussianState::thermal(1, 1.4).unwrap(),
        0.65,
    );
    assert!((fc - gc).abs() < 1e-6);
    assert!((fd - gd).abs() < 1e-6);
}

#[test]
fn coherent_thermal_agreement() {
    let dim = 50;
    let alpha = Complex64::new(1.1, -0.6);
    let (fc, fd) = fock_output_entropy(
        &FockDensityMatrix::coherent(alpha, dim).unwrap(),
        &FockDensityMatrix::thermal(0.8, dim).unwrap(),
        0.7,
    );
    let (gc, gd) = gaussian_output_entropy(
        &GaussianState::coherent(alpha).unwrap(),
        &GaussianState::thermal(1, 0.8).unwrap(),
        0.7,
    );
    assert!((fc - gc).abs() < 1e-6, "c arm: fock {fc} vs gaussian {gc}");
    assert!((fd - gd).abs() < 1e-6, "d arm: fock {fd} vs gaussian {gd}");
}

#[test]
fn squeezed_vacuum_thermal_agreement() {
    // Squeezed vacuum in Fock space via the truncated squeeze unitary.
    let dim = 60;
    let r = 0.5;
    let eta = 0.75;
    let sq_op = bosoncast::fock::squeeze_operator(Complex64::new(r, 0.0), dim).unwrap();
    let sq_fock = FockDensityMatrix::vacuum(dim)
        .unwrap()
        .apply_unitary(&sq_op)
        .unwrap();
    let (fc, _) = fock_output_entropy(
        &sq_fock,
        &FockDensityMatrix::thermal(1.0, dim).unwrap(),
        eta,
    );
    let (gc, _) = gaussian_output_entropy(
        &GaussianState::squeezed_vacuum(r, 0.0).unwrap(),
        &GaussianState::thermal(1, 1.0).unwrap(),
        eta,
    );
    assert!((fc - gc).abs() < 1e-6, "fock {fc} vs gaussian {gc}");
}

#[test]
fn truncation_convergence_for_thermal_inputs() {
    // Doubling the truncation moves the output entropy by less than 1e-7
    // once the recorded tails are below 1e-8.
    let k = 1.0;
    let eta = 0.8;
    let s_at = |dim: usize| {
        let a = FockDensityMatrix::vacuum(dim).unwrap();
        let b = FockDensityMatrix::thermal(k, dim).unwrap();
        assert!(b.tail_mass() < 1e-8);
        let (c, _) = propagate(&a, &b, eta).unwrap();
        von_neumann_entropy_fock(&c).unwrap().to_bits()
    };
    let s40 = s_at(40);
    let s80 = s_at(80);
    assert!((s40 - s80).abs() < 1e-7, "dim 40: {s40}, dim 80: {s80}");
}
