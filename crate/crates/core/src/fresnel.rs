//! Single-interface reflection amplitudes for TE (s) and TM (p) waves.
//!
//! Axial wavevectors follow one branch convention throughout: the vacuum
//! `k_z` is real and non-negative for propagating waves and `iκ` (κ > 0) for
//! evanescent ones, and inside the medium `Im k_zm ≥ 0` (with `Re k_zm ≥ 0`
//! when the imaginary part vanishes). Metals are non-magnetic.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::materials::{permittivity_imag_axis, MaterialModel};
use crate::scales::C;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Polarization {
    #[serde(rename = "TE")]
    Te,
    #[serde(rename = "TM")]
    Tm,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::Te, Polarization::Tm];

    pub fn label(self) -> &'static str {
        match self {
            Polarization::Te => "TE",
            Polarization::Tm => "TM",
        }
    }
}

/// Square root on the decaying branch: `Im ≥ 0`, and `Re ≥ 0` on the real axis.
pub fn decaying_sqrt(z: Complex64) -> Complex64 {
    let s = z.sqrt();
    if s.im < 0.0 || (s.im == 0.0 && s.re < 0.0) {
        -s
    } else {
        s
    }
}

/// Vacuum axial wavevector for real ω ≥ 0 and in-plane wavevector k_par ≥ 0.
pub fn axial_vacuum(omega: f64, k_par: f64) -> Complex64 {
    let k0 = omega / C;
    if k_par <= k0 {
        Complex64::new(((k0 - k_par) * (k0 + k_par)).sqrt(), 0.0)
    } else {
        Complex64::new(0.0, ((k_par - k0) * (k_par + k0)).sqrt())
    }
}

/// Medium term `iμ0ωσ(ω) = (ε(ω) − 1) ω²/c²`, written so that ω = 0 is regular.
fn medium_term(model: &MaterialModel, omega: Complex64) -> Result<Complex64> {
    match *model {
        MaterialModel::Vacuum => Ok(Complex64::new(0.0, 0.0)),
        MaterialModel::PerfectConductor => Err(Error::UnsupportedModel(
            "perfect conductor has no finite medium wavevector".into(),
        )),
        MaterialModel::Plasma { omega_p } => Ok(Complex64::new(-(omega_p / C).powi(2), 0.0)),
        MaterialModel::Drude { omega_p, tau } => {
            let den = omega + Complex64::i() / tau;
            Ok(-(omega_p / C).powi(2) * omega / den)
        }
    }
}

/// `1/ε(ω)`, regular at ω = 0 where it vanishes for conductors.
fn inverse_permittivity(model: &MaterialModel, omega: Complex64) -> Complex64 {
    let (den, wp2) = match *model {
        MaterialModel::Plasma { omega_p } => (omega * omega, omega_p * omega_p),
        MaterialModel::Drude { omega_p, tau } => (omega * (omega + Complex64::i() / tau), omega_p * omega_p),
        _ => return Complex64::new(1.0, 0.0),
    };
    den / (den - wp2)
}

fn medium_kz(model: &MaterialModel, omega: Complex64, kz: Complex64) -> Result<Complex64> {
    Ok(decaying_sqrt(kz * kz + medium_term(model, omega)?))
}

/// Medium axial wavevector `k_zm = sqrt(iμ0ωσ(ω) + k_z²)` at real ω.
pub fn axial_medium(model: &MaterialModel, omega: f64, k_par: f64) -> Result<Complex64> {
    medium_kz(model, Complex64::new(omega, 0.0), axial_vacuum(omega, k_par))
}

/// Reflection amplitude for given vacuum axial wavevector, at complex ω.
pub(crate) fn reflection_kz(
    model: &MaterialModel,
    omega: Complex64,
    kz: Complex64,
    pol: Polarization,
) -> Complex64 {
    match (model, pol) {
        (MaterialModel::PerfectConductor, Polarization::Te) => Complex64::new(-1.0, 0.0),
        (MaterialModel::PerfectConductor, Polarization::Tm) => Complex64::new(1.0, 0.0),
        (MaterialModel::Vacuum, _) => Complex64::new(0.0, 0.0),
        (_, Polarization::Te) => {
            // (k_z − k_zm)/(k_z + k_zm) = −M/(k_z + k_zm)², free of cancellation
            let m = medium_term(model, omega).expect("metal model");
            let kzm = decaying_sqrt(kz * kz + m);
            let s = kz + kzm;
            -m / (s * s)
        }
        (_, Polarization::Tm) => {
            let m = medium_term(model, omega).expect("metal model");
            let kzm = decaying_sqrt(kz * kz + m);
            let inv_eps = inverse_permittivity(model, omega);
            if !inv_eps.is_finite() {
                // ε = 0: (0·k_z − k_zm)/(0·k_z + k_zm)
                return Complex64::new(-1.0, 0.0);
            }
            let t = kzm * inv_eps;
            (kz - t) / (kz + t)
        }
    }
}

/// TE amplitude `r_s = (k_z − k_zm)/(k_z + k_zm)`; −1 for a perfect conductor.
pub fn reflection_te(model: &MaterialModel, omega: f64, k_par: f64) -> Complex64 {
    reflection(model, omega, k_par, Polarization::Te)
}

/// TM amplitude `r_p = (ε k_z − k_zm)/(ε k_z + k_zm)`; +1 for a perfect conductor.
pub fn reflection_tm(model: &MaterialModel, omega: f64, k_par: f64) -> Complex64 {
    reflection(model, omega, k_par, Polarization::Tm)
}

pub fn reflection(model: &MaterialModel, omega: f64, k_par: f64, pol: Polarization) -> Complex64 {
    reflection_kz(model, Complex64::new(omega, 0.0), axial_vacuum(omega, k_par), pol)
}

/// Same Fresnel forms analytically continued to complex ω.
pub fn reflection_complex(model: &MaterialModel, omega: Complex64, k_par: f64, pol: Polarization) -> Complex64 {
    let kz = decaying_sqrt(omega * omega / (C * C) - k_par * k_par);
    reflection_kz(model, omega, kz, pol)
}

/// Precomputed response of one plate at a fixed imaginary frequency ξ.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ImagAxisResponse {
    kind: ImagKind,
}

#[derive(Debug, Clone, Copy)]
enum ImagKind {
    Fixed([f64; 2]),
    /// `extra = (ε(iξ) − 1) ξ²/c²`, so that `κ_m² = q² + extra`.
    Metal { extra: f64, eps: f64 },
    /// ξ = 0 for metals: TM is +1, TE depends on `extra` (0 for Drude).
    Static { extra: f64 },
}

impl ImagAxisResponse {
    pub fn new(model: &MaterialModel, xi: f64) -> Self {
        let kind = match *model {
            MaterialModel::Vacuum => ImagKind::Fixed([0.0, 0.0]),
            MaterialModel::PerfectConductor => ImagKind::Fixed([-1.0, 1.0]),
            MaterialModel::Plasma { omega_p } => {
                let extra = (omega_p / C).powi(2);
                if xi == 0.0 {
                    ImagKind::Static { extra }
                } else {
                    ImagKind::Metal {
                        extra,
                        eps: permittivity_imag_axis(model, xi).expect("xi > 0"),
                    }
                }
            }
            MaterialModel::Drude { omega_p, tau } => {
                if xi == 0.0 {
                    ImagKind::Static { extra: 0.0 }
                } else {
                    ImagKind::Metal {
                        extra: (omega_p / C).powi(2) * (xi * tau) / (1.0 + xi * tau),
                        eps: permittivity_imag_axis(model, xi).expect("xi > 0"),
                    }
                }
            }
        };
        ImagAxisResponse { kind }
    }

    /// [TE, TM] amplitudes for vacuum decay constant `q = sqrt(ξ²/c² + k²)`.
    #[inline]
    pub fn amplitudes(&self, q: f64) -> [f64; 2] {
        match self.kind {
            ImagKind::Fixed(r) => r,
            ImagKind::Static { extra } => {
                let km = (q * q + extra).sqrt();
                let s = q + km;
                let te = if extra == 0.0 { 0.0 } else { -extra / (s * s) };
                [te, 1.0]
            }
            ImagKind::Metal { extra, eps } => {
                let km = (q * q + extra).sqrt();
                let s = q + km;
                let te = -extra / (s * s);
                let t = km / eps;
                [te, (q - t) / (q + t)]
            }
        }
    }
}

/// Reflection amplitude at imaginary frequency ω = iξ (real valued).
///
/// At ξ = 0 the static limits are used: Drude TE → 0, metal TM → +1,
/// plasma TE → `(k − sqrt(k² + 1/ƛ_p²))/(k + sqrt(k² + 1/ƛ_p²))`.
pub fn reflection_imag_axis(model: &MaterialModel, xi: f64, k_par: f64, pol: Polarization) -> Result<f64> {
    if !(xi >= 0.0) || !(k_par >= 0.0) {
        return Err(Error::Domain(format!(
            "need xi >= 0 and k_par >= 0, got xi={xi}, k_par={k_par}"
        )));
    }
    let q = ((xi / C).powi(2) + k_par * k_par).sqrt();
    let r = ImagAxisResponse::new(model, xi).amplitudes(q);
    Ok(match pol {
        Polarization::Te => r[0],
        Polarization::Tm => r[1],
    })
}

/// Surface-plasmon frequency of a lossless plasma half-space at in-plane
/// wavevector `k_par`: the real root of `ε(ω) q + κ_m = 0` below the light
/// line and below `ω_p/√2`, found by bisection.
pub fn surface_plasmon_frequency(model: &MaterialModel, k_par: f64) -> Result<f64> {
    let omega_p = match *model {
        MaterialModel::Plasma { omega_p } => omega_p,
        other => {
            return Err(Error::UnsupportedModel(format!(
                "surface plasmon root needs a lossless plasma model, got {}",
                other.kind()
            )))
        }
    };
    if !(k_par > 0.0) || !k_par.is_finite() {
        return Err(Error::Domain(format!("k_par must be > 0, got {k_par}")));
    }
    let pole = |w: f64| {
        let k0 = w / C;
        let q = ((k_par - k0) * (k_par + k0)).max(0.0).sqrt();
        let km = (k_par * k_par + (omega_p * omega_p - w * w) / (C * C)).sqrt();
        let eps = 1.0 - (omega_p / w).powi(2);
        eps * q + km
    };
    let mut hi = (C * k_par).min(omega_p / std::f64::consts::SQRT_2);
    let mut lo = hi * 1e-9;
    let (flo, fhi) = (pole(lo), pole(hi));
    if !(flo < 0.0 && fhi > 0.0) {
        return Err(Error::NoRoot(format!(
            "surface plasmon pole not bracketed at k_par = {k_par} (f(lo)={flo}, f(hi)={fhi})"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pole(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::plasma_wavelength;

    fn gold() -> MaterialModel {
        MaterialModel::gold()
    }
    fn plasma() -> MaterialModel {
        MaterialModel::gold_plasma()
    }

    #[test]
    fn vacuum_axial_examples() {
        let w = 1e15;
        assert_eq!(axial_vacuum(w, 0.0), Complex64::new(w / C, 0.0));
        assert_eq!(axial_vacuum(w, w / C), Complex64::new(0.0, 0.0));
        assert_eq!(axial_vacuum(0.0, 3e6), Complex64::new(0.0, 3e6));
    }

    #[test]
    fn medium_axial_static_limits() {
        let kappa = 5e6;
        let lp = plasma_wavelength(&plasma()).unwrap().metres();
        let k = axial_medium(&plasma(), 0.0, kappa).unwrap();
        assert!(k.re.abs() < 1e-9 * k.im);
        assert!((k.im / (kappa * kappa + 1.0 / (lp * lp)).sqrt() - 1.0).abs() < 1e-14);
        let k = axial_medium(&gold(), 1e-3, kappa).unwrap();
        assert!((k - Complex64::new(0.0, kappa)).norm() / kappa < 1e-9);
        let w = 1e15;
        assert_eq!(axial_medium(&MaterialModel::Vacuum, w, 1e6).unwrap(), axial_vacuum(w, 1e6));
        assert!(axial_medium(&MaterialModel::PerfectConductor, w, 1e6).is_err());
    }

    #[test]
    fn reflection_examples() {
        let pc = MaterialModel::PerfectConductor;
        assert_eq!(reflection_te(&pc, 1e14, 3e6), Complex64::new(-1.0, 0.0));
        assert_eq!(reflection_tm(&pc, 1e14, 3e6), Complex64::new(1.0, 0.0));
        assert_eq!(reflection_tm(&MaterialModel::Vacuum, 1e14, 3e6).norm(), 0.0);
        // Bohr–van Leeuwen: static magnetic fields pass through a Drude metal
        assert!(reflection_te(&gold(), 1e-6, 5e6).norm() < 1e-12);
        assert!(reflection_te(&gold(), 0.0, 5e6).norm() == 0.0);
        // Meissner-like screening in the plasma model
        assert!((reflection_te(&plasma(), 0.0, 1e-3) + 1.0).norm() < 1e-9);
        assert!((reflection_tm(&gold(), 1e-3, 5e6) - 1.0).norm() < 1e-9);
    }

    #[test]
    fn imag_axis_static_limits() {
        let k = 2e7;
        let lp = plasma_wavelength(&plasma()).unwrap().metres();
        let s = (k * k + 1.0 / (lp * lp)).sqrt();
        let te = reflection_imag_axis(&plasma(), 0.0, k, Polarization::Te).unwrap();
        assert!((te - (k - s) / (k + s)).abs() < 1e-14);
        // continuity of the hard-coded limit
        let te_small = reflection_imag_axis(&plasma(), 1.0, k, Polarization::Te).unwrap();
        assert!((te - te_small).abs() < 1e-12);
        assert_eq!(reflection_imag_axis(&gold(), 0.0, k, Polarization::Te).unwrap(), 0.0);
        assert_eq!(reflection_imag_axis(&gold(), 0.0, k, Polarization::Tm).unwrap(), 1.0);
        let pc = MaterialModel::PerfectConductor;
        for xi in [0.0, 1e10, 1e16] {
            assert_eq!(reflection_imag_axis(&pc, xi, k, Polarization::Te).unwrap(), -1.0);
            assert_eq!(reflection_imag_axis(&pc, xi, k, Polarization::Tm).unwrap(), 1.0);
        }
        assert!(reflection_imag_axis(&pc, -1.0, k, Polarization::Te).is_err());
    }

    #[test]
    fn continuation_matches_imag_axis() {
        for m in [gold(), plasma()] {
            for &(xi, k) in &[(1e13, 1e6), (2.4e14, 5e6), (1e16, 3e7), (5e11, 1e5)] {
                for pol in Polarization::BOTH {
                    let a = reflection_complex(&m, Complex64::new(0.0, xi), k, pol);
                    let b = reflection_imag_axis(&m, xi, k, pol).unwrap();
                    assert!(a.im.abs() <= 1e-10 * b.abs().max(1e-300), "{a} vs {b}");
                    assert!((a.re - b).abs() <= 1e-10 * b.abs(), "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn surface_plasmon_large_k_and_light_line() {
        let p = plasma();
        let wp = p.omega_p().unwrap();
        let lp = plasma_wavelength(&p).unwrap().metres();
        let w = surface_plasmon_frequency(&p, 20.0 / lp).unwrap();
        assert!((w / (wp / std::f64::consts::SQRT_2) - 1.0).abs() < 5e-3);
        let k = 1e-3 / lp;
        let w = surface_plasmon_frequency(&p, k).unwrap();
        assert!(w < C * k && w / (C * k) > 0.999);
        let mut last = 0.0;
        for i in 0..10 {
            let k = 10f64.powf(-2.0 + 0.4 * i as f64) / lp;
            let w = surface_plasmon_frequency(&p, k).unwrap();
            assert!(w > last);
            last = w;
        }
        assert!(surface_plasmon_frequency(&gold(), 1e7).is_err());
        assert!(surface_plasmon_frequency(&p, 0.0).is_err());
    }

    proptest::proptest! {
        #[test]
        fn medium_branch_decays(lw in 8.0f64..18.0, lk in 3.0f64..10.0) {
            let (w, k) = (10f64.powf(lw), 10f64.powf(lk));
            for m in [gold(), plasma()] {
                proptest::prop_assert!(axial_medium(&m, w, k).unwrap().im >= 0.0);
            }
        }

        #[test]
        fn propagating_energy_bound(lw in 10.0f64..17.0, frac in 0.0f64..1.0) {
            let w = 10f64.powf(lw);
            let k = frac * w / C;
            for pol in Polarization::BOTH {
                proptest::prop_assert!(reflection(&gold(), w, k, pol).norm_sqr() <= 1.0 + 1e-12);
            }
        }

        #[test]
        fn imag_axis_bounded_and_monotone(lx in 9.0f64..17.0, lk in 4.0f64..9.0) {
            let (xi, k) = (10f64.powf(lx), 10f64.powf(lk));
            for m in [gold(), plasma()] {
                for pol in Polarization::BOTH {
                    let a = reflection_imag_axis(&m, xi, k, pol).unwrap();
                    let b = reflection_imag_axis(&m, xi, k * 1.2, pol).unwrap();
                    proptest::prop_assert!(a.abs() < 1.0);
                    // both amplitudes increase with k at fixed ξ
                    proptest::prop_assert!(b >= a - 1e-12);
                }
            }
        }
    }
}
