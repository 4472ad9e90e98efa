//! Casimir pressures, free energies and entropies between two metal plates,
//! with the low-frequency diagnostics that separate the plasma and Drude
//! descriptions of a metal.
//!
//! ```
//! use casimir_core::{lifshitz, Length, MaterialModel, QuadratureConfig};
//!
//! let sys = lifshitz::PlateSystem::symmetric(MaterialModel::PerfectConductor, Length::new(1e-6)?);
//! let p = lifshitz::pressure_zero_temperature(&sys, &QuadratureConfig::default())?;
//! assert!((p.total / -1.300e-3 - 1.0).abs() < 5e-3);
//! # Ok::<(), casimir_core::Error>(())
//! ```

pub mod error;
pub mod fresnel;
pub mod lifshitz;
pub mod materials;
pub mod quad;
pub mod relaxation;
pub mod scales;
pub mod spectral;

pub use error::{Error, Result};
pub use fresnel::Polarization;
pub use lifshitz::{Breakdown, MatsubaraLimit, PlateSystem, QuadratureConfig, Regime};
pub use materials::{MaterialModel, NamedMaterial};
pub use scales::{AngularFrequency, Length, Temperature};

/// Crate version, recorded in exported metadata.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
