//! SI constants and the characteristic thermal scales.
//!
//! Constants are the CODATA-2018 recommended values. The thermal frequency
//! `ω_T = k_B T / ħ` and the thermal wavelength `ƛ_T = c / (2 ω_T)` separate
//! the quantum (short distance) from the thermal (large distance) regime.

use serde::Serialize;

use crate::error::{Error, Result};

/// Label recorded in output documents.
pub const CONSTANTS_VERSION: &str = "CODATA-2018";

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380_649e-23;
/// Speed of light in vacuum, m/s.
pub const C: f64 = 299_792_458.0;
/// Vacuum permittivity, F/m.
pub const EPS0: f64 = 8.854_187_812_8e-12;
/// Vacuum permeability, H/m.
pub const MU0: f64 = 1.256_637_062_12e-6;
/// Elementary charge, C (also J per eV).
pub const EV: f64 = 1.602_176_634e-19;
/// Apéry's constant ζ(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub k_b: f64,
    pub c: f64,
    pub eps0: f64,
    pub mu0: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        hbar: HBAR,
        k_b: K_B,
        c: C,
        eps0: EPS0,
        mu0: MU0,
    };
}

/// Absolute temperature in kelvin.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Temperature(f64);

impl Temperature {
    pub fn new(kelvin: f64) -> Result<Self> {
        if kelvin.is_finite() && kelvin >= 0.0 {
            Ok(Temperature(kelvin))
        } else {
            Err(Error::Domain(format!("temperature must be finite and >= 0 K, got {kelvin}")))
        }
    }

    pub fn kelvin(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }
}

/// Real angular frequency in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct AngularFrequency(f64);

impl AngularFrequency {
    pub fn new(rad_per_s: f64) -> Result<Self> {
        if rad_per_s.is_finite() && rad_per_s >= 0.0 {
            Ok(AngularFrequency(rad_per_s))
        } else {
            Err(Error::Domain(format!("angular frequency must be finite and >= 0, got {rad_per_s}")))
        }
    }

    /// Angular frequency corresponding to a photon energy in joules, `E / ħ`.
    pub fn from_energy(joules: f64) -> Result<Self> {
        Self::new(joules / HBAR)
    }

    pub fn rad_per_s(self) -> f64 {
        self.0
    }

    /// Ordinary frequency `ω / 2π` in Hz.
    pub fn hertz(self) -> f64 {
        self.0 / (2.0 * std::f64::consts::PI)
    }
}

/// Length in metres. Strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Length(f64);

impl Length {
    pub fn new(metres: f64) -> Result<Self> {
        if metres.is_finite() && metres > 0.0 {
            Ok(Length(metres))
        } else {
            Err(Error::Domain(format!("length must be finite and > 0 m, got {metres}")))
        }
    }

    pub fn metres(self) -> f64 {
        self.0
    }
}

/// `ω_T = k_B T / ħ`.
pub fn thermal_frequency(t: Temperature) -> AngularFrequency {
    AngularFrequency(K_B * t.kelvin() / HBAR)
}

/// `ƛ_T = c / (2 ω_T)`; infinite at T = 0, hence a domain error there.
pub fn thermal_wavelength(t: Temperature) -> Result<Length> {
    if t.is_zero() {
        return Err(Error::Domain("thermal wavelength diverges at T = 0".into()));
    }
    Length::new(C / (2.0 * thermal_frequency(t).rad_per_s()))
}

/// Bose–Einstein occupation `1 / (exp(ħω/k_BT) − 1)`.
///
/// Zero at T = 0. At ω = 0 and T > 0 the occupation diverges and a domain
/// error is returned.
pub fn bose_occupation(omega: AngularFrequency, t: Temperature) -> Result<f64> {
    let w = omega.rad_per_s();
    if t.is_zero() {
        return Ok(0.0);
    }
    if w == 0.0 {
        return Err(Error::Domain("Bose occupation diverges at omega = 0 for T > 0".into()));
    }
    Ok(bose_raw(w, t.kelvin()))
}

/// Unchecked occupation for internal integrators (ω > 0, T ≥ 0).
pub(crate) fn bose_raw(omega: f64, kelvin: f64) -> f64 {
    if kelvin == 0.0 {
        return 0.0;
    }
    let x = HBAR * omega / (K_B * kelvin);
    if x > 700.0 {
        0.0
    } else {
        1.0 / x.exp_m1()
    }
}
