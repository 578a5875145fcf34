//! Numerics for two-user bosonic broadcast communication over a lossy
//! beam splitter: capacity-region boundaries under optimum and coherent
//! detection, Gaussian-state symplectic analysis, and truncated-Fock-space
//! stress tests of the minimum-output-entropy conjectures.
//!
//! Rates are in bits per channel use; Wehrl entropies are in nats.
//!
//! ```
//! use bosoncast::entropy::g_bits;
//! use bosoncast::regions::{beta_grid, ultimate_boundary, ChannelParams};
//!
//! let params = ChannelParams::new(0.8, 15.0)?;
//! let curve = ultimate_boundary(&params, &beta_grid(257))?;
//! let endpoint = curve.points.last().unwrap();
//! assert!((endpoint.r_b - g_bits(12.0)?).abs() < 1e-12);
//! assert_eq!(endpoint.r_c, 0.0);
//! # Ok::<(), bosoncast::Error>(())
//! ```

pub mod entropy;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod quad;
pub mod regions;

pub use entropy::{g, g_inv, EntropyBase, EntropyValue};
pub use error::{Error, Result};
pub use fock::FockDensityMatrix;
pub use gaussian::GaussianState;
pub use regions::{ChannelParams, RatePair, RegionCurve, Scheme};
