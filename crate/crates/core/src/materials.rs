//! Metal response models: perfect conductor, lossless plasma and Drude.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scales::{AngularFrequency, Length, C, EPS0, EV, HBAR, MU0};

/// Dielectric response of one plate.
///
/// `Vacuum` is a test model with zero conductivity (no interface, `r ≡ 0`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum MaterialModel {
    Vacuum,
    PerfectConductor,
    Plasma { omega_p: f64 },
    Drude { omega_p: f64, tau: f64 },
}

impl MaterialModel {
    pub fn plasma(omega_p: f64) -> Result<Self> {
        check_positive("omega_p", omega_p)?;
        Ok(MaterialModel::Plasma { omega_p })
    }

    pub fn drude(omega_p: f64, tau: f64) -> Result<Self> {
        check_positive("omega_p", omega_p)?;
        check_positive("tau", tau)?;
        Ok(MaterialModel::Drude { omega_p, tau })
    }

    /// Gold with ħω_p = 9 eV and τ = 27 fs.
    pub fn gold() -> Self {
        MaterialModel::Drude {
            omega_p: 9.0 * EV / HBAR,
            tau: 27e-15,
        }
    }

    /// The lossless counterpart of [`MaterialModel::gold`].
    pub fn gold_plasma() -> Self {
        MaterialModel::Plasma {
            omega_p: 9.0 * EV / HBAR,
        }
    }

    pub fn omega_p(&self) -> Option<f64> {
        match *self {
            MaterialModel::Plasma { omega_p } | MaterialModel::Drude { omega_p, .. } => Some(omega_p),
            _ => None,
        }
    }

    pub fn tau(&self) -> Option<f64> {
        match *self {
            MaterialModel::Drude { tau, .. } => Some(tau),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MaterialModel::Vacuum => "vacuum",
            MaterialModel::PerfectConductor => "perfect",
            MaterialModel::Plasma { .. } => "plasma",
            MaterialModel::Drude { .. } => "drude",
        }
    }

    /// Same model with the relaxation time multiplied by `factor` (Drude only).
    pub fn with_tau_scaled(&self, factor: f64) -> Result<Self> {
        match *self {
            MaterialModel::Drude { omega_p, tau } => MaterialModel::drude(omega_p, tau * factor),
            other => Err(Error::UnsupportedModel(format!(
                "{} has no relaxation time",
                other.kind()
            ))),
        }
    }

    /// Lossless plasma model sharing this model's plasma frequency.
    pub fn plasma_counterpart(&self) -> Result<Self> {
        match self.omega_p() {
            Some(wp) => MaterialModel::plasma(wp),
            None => Err(Error::UnsupportedModel(format!(
                "{} carries no plasma frequency",
                self.kind()
            ))),
        }
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Material(format!("{name} must be finite and > 0, got {v}")))
    }
}

/// Conductivity σ(ω) in S/m at a (possibly complex) angular frequency.
///
/// Drude: `σ_DC / (1 − iωτ)`; plasma: `i ε0 ω_p² / ω`. The vacuum test model
/// returns zero.
pub fn conductivity(model: &MaterialModel, omega: Complex64) -> Result<Complex64> {
    match *model {
        MaterialModel::Vacuum => Ok(Complex64::new(0.0, 0.0)),
        MaterialModel::PerfectConductor => Err(Error::UnsupportedModel(
            "perfect conductor has no finite conductivity".into(),
        )),
        MaterialModel::Plasma { omega_p } => {
            if omega == Complex64::new(0.0, 0.0) {
                return Err(Error::DivisionByZero("plasma conductivity at omega = 0".into()));
            }
            Ok(Complex64::i() * EPS0 * omega_p * omega_p / omega)
        }
        MaterialModel::Drude { omega_p, tau } => {
            let sigma_dc = EPS0 * omega_p * omega_p * tau;
            Ok(sigma_dc / (Complex64::new(1.0, 0.0) - Complex64::i() * omega * tau))
        }
    }
}

/// Relative permittivity `ε(ω) = 1 + iσ(ω)/(ε0 ω)`.
pub fn permittivity(model: &MaterialModel, omega: Complex64) -> Result<Complex64> {
    if omega == Complex64::new(0.0, 0.0) {
        return Err(Error::DivisionByZero("permittivity at omega = 0".into()));
    }
    match *model {
        MaterialModel::Vacuum => Ok(Complex64::new(1.0, 0.0)),
        MaterialModel::PerfectConductor => Err(Error::UnsupportedModel(
            "perfect conductor has no finite permittivity".into(),
        )),
        MaterialModel::Plasma { omega_p } => Ok(1.0 - omega_p * omega_p / (omega * omega)),
        MaterialModel::Drude { omega_p, tau } => {
            Ok(1.0 - omega_p * omega_p / (omega * (omega + Complex64::i() / tau)))
        }
    }
}

/// Permittivity on the imaginary frequency axis, `ε(iξ)`, for ξ > 0. Real.
pub fn permittivity_imag_axis(model: &MaterialModel, xi: f64) -> Result<f64> {
    if xi <= 0.0 || xi.is_nan() {
        return Err(Error::Domain(format!(
            "imaginary-axis frequency must be > 0, got {xi}"
        )));
    }
    match *model {
        MaterialModel::Vacuum => Ok(1.0),
        MaterialModel::PerfectConductor => Err(Error::UnsupportedModel(
            "perfect conductor has no finite permittivity".into(),
        )),
        MaterialModel::Plasma { omega_p } => Ok(1.0 + omega_p * omega_p / (xi * xi)),
        MaterialModel::Drude { omega_p, tau } => {
            Ok(1.0 + omega_p * omega_p / (xi * (xi + 1.0 / tau)))
        }
    }
}

/// `σ_DC = ε0 ω_p² τ` in S/m.
pub fn dc_conductivity(model: &MaterialModel) -> Result<f64> {
    match *model {
        MaterialModel::Drude { omega_p, tau } => Ok(EPS0 * omega_p * omega_p * tau),
        other => Err(Error::UnsupportedModel(format!(
            "DC conductivity requires a Drude model, got {}",
            other.kind()
        ))),
    }
}

/// Plasma wavelength (penetration depth) `ƛ_p = c / ω_p`.
pub fn plasma_wavelength(model: &MaterialModel) -> Result<Length> {
    match model.omega_p() {
        Some(wp) => Length::new(C / wp),
        None => Err(Error::UnsupportedModel(format!(
            "{} carries no plasma frequency",
            model.kind()
        ))),
    }
}

/// Magnetic diffusivity `D = 1/(μ0 σ_DC)` in m²/s.
pub fn magnetic_diffusivity(model: &MaterialModel) -> Result<f64> {
    Ok(1.0 / (MU0 * dc_conductivity(model)?))
}

/// Material definition as stored in JSON files.
///
/// `{"name": "gold", "model": "drude", "omega_p_eV": 9, "tau_fs": 27}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialSpec {
    pub name: String,
    pub model: MaterialKind,
    #[serde(rename = "omega_p_eV", default, skip_serializing_if = "Option::is_none")]
    pub omega_p_ev: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_fs: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaterialKind {
    Perfect,
    Plasma,
    Drude,
}

/// A material model carrying a display name.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedMaterial {
    pub name: String,
    pub model: MaterialModel,
}

impl MaterialSpec {
    pub fn to_model(&self) -> Result<MaterialModel> {
        let omega_p = || {
            let e = self
                .omega_p_ev
                .ok_or_else(|| Error::Material(format!("{}: omega_p_eV is required", self.name)))?;
            check_positive("omega_p_eV", e)?;
            Ok(AngularFrequency::from_energy(e * EV)?.rad_per_s())
        };
        match self.model {
            MaterialKind::Perfect => {
                if self.omega_p_ev.is_some() || self.tau_fs.is_some() {
                    return Err(Error::Material(format!(
                        "{}: perfect conductor takes no parameters",
                        self.name
                    )));
                }
                Ok(MaterialModel::PerfectConductor)
            }
            MaterialKind::Plasma => {
                if self.tau_fs.is_some() {
                    return Err(Error::Material(format!(
                        "{}: plasma model takes no tau_fs",
                        self.name
                    )));
                }
                MaterialModel::plasma(omega_p()?)
            }
            MaterialKind::Drude => {
                let tau_fs = self
                    .tau_fs
                    .ok_or_else(|| Error::Material(format!("{}: tau_fs is required", self.name)))?;
                check_positive("tau_fs", tau_fs)?;
                MaterialModel::drude(omega_p()?, tau_fs / 1e15)
            }
        }
    }

    pub fn from_json(text: &str) -> Result<NamedMaterial> {
        let spec: MaterialSpec =
            serde_json::from_str(text).map_err(|e| Error::Material(e.to_string()))?;
        Ok(NamedMaterial {
            model: spec.to_model()?,
            name: spec.name,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn drude_conductivity_examples() {
        let m = MaterialModel::gold();
        let tau = m.tau().unwrap();
        let sdc = dc_conductivity(&m).unwrap();
        let s0 = conductivity(&m, c(0.0, 0.0)).unwrap();
        assert_eq!(s0.im, 0.0);
        assert!((s0.re / sdc - 1.0).abs() < 1e-15);
        // 1/(1 - i) = (1 + i)/2
        let s1 = conductivity(&m, c(1.0 / tau, 0.0)).unwrap();
        assert!((s1.re / (sdc / 2.0) - 1.0).abs() < 1e-12);
        assert!((s1.im / (sdc / 2.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn plasma_conductivity_is_imaginary() {
        let m = MaterialModel::gold_plasma();
        let wp = m.omega_p().unwrap();
        let s = conductivity(&m, c(1e14, 0.0)).unwrap();
        assert_eq!(s.re, 0.0);
        assert!((s.im / (EPS0 * wp * wp / 1e14) - 1.0).abs() < 1e-14);
        assert!(matches!(
            conductivity(&m, c(0.0, 0.0)),
            Err(Error::DivisionByZero(_))
        ));
        assert!(matches!(
            conductivity(&MaterialModel::PerfectConductor, c(1.0, 0.0)),
            Err(Error::UnsupportedModel(_))
        ));
    }

    #[test]
    fn permittivity_examples() {
        let p = MaterialModel::gold_plasma();
        let wp = p.omega_p().unwrap();
        assert!(permittivity(&p, c(wp, 0.0)).unwrap().norm() < 1e-14);
        let d = MaterialModel::gold();
        let tau = d.tau().unwrap();
        let e = permittivity_imag_axis(&d, 1.0 / tau).unwrap();
        assert!((e / (1.0 + wp * wp * tau * tau / 2.0) - 1.0).abs() < 1e-13);
        // the complex-argument route agrees with the imaginary-axis form
        let ec = permittivity(&d, c(0.0, 1.0 / tau)).unwrap();
        assert!((ec.re / e - 1.0).abs() < 1e-12 && ec.im.abs() < 1e-9 * e);
        // ξ = ω_T(300 K), brute-force evaluation of 1 + ω_p²/(ξ(ξ+1/τ))
        let xi = crate::scales::K_B * 300.0 / HBAR;
        let oracle = 1.0 + wp * wp / (xi * (xi + 1.0 / tau));
        let e = permittivity_imag_axis(&d, xi).unwrap();
        assert!((e / oracle - 1.0).abs() < 1e-14);
        assert!(e > 1e4);
        assert!(permittivity(&d, c(0.0, 0.0)).is_err());
        assert!(permittivity_imag_axis(&d, 0.0).is_err());
    }

    #[test]
    fn derived_scales_for_gold() {
        let g = MaterialModel::gold();
        let sdc = dc_conductivity(&g).unwrap();
        assert!((sdc / 4.5e7 - 1.0).abs() < 0.02);
        let t = EPS0 / sdc;
        assert!(t > 1e-19 / 3.0 && t < 3e-19);
        let lp = plasma_wavelength(&g).unwrap().metres();
        assert!((lp / 22e-9 - 1.0).abs() < 0.02);
        let dm = magnetic_diffusivity(&g).unwrap();
        assert!((dm / 0.018 - 1.0).abs() < 0.05);
        assert!((dm / (lp * lp / g.tau().unwrap()) - 1.0).abs() < 1e-12);

        let g2 = g.with_tau_scaled(2.0).unwrap();
        assert!((dc_conductivity(&g2).unwrap() / sdc - 2.0).abs() < 1e-14);
        assert!((magnetic_diffusivity(&g2).unwrap() / dm - 0.5).abs() < 1e-14);
        let wp = g.omega_p().unwrap();
        let g4 = MaterialModel::drude(2.0 * wp, g.tau().unwrap()).unwrap();
        assert!((dc_conductivity(&g4).unwrap() / sdc - 4.0).abs() < 1e-14);

        let half = MaterialModel::plasma(4.5 * EV / HBAR).unwrap();
        assert!((plasma_wavelength(&half).unwrap().metres() / 44e-9 - 1.0).abs() < 0.02);
        let huge = MaterialModel::plasma(1e30).unwrap();
        assert!(plasma_wavelength(&huge).unwrap().metres() < 1e-21);
        assert!(plasma_wavelength(&MaterialModel::PerfectConductor).is_err());
        assert!(magnetic_diffusivity(&MaterialModel::gold_plasma()).is_err());
        assert!(dc_conductivity(&MaterialModel::PerfectConductor).is_err());
    }

    #[test]
    fn json_material_definitions() {
        let m = MaterialSpec::from_json(
            r#"{"name":"gold","model":"drude","omega_p_eV":9,"tau_fs":27}"#,
        )
        .unwrap();
        assert_eq!(m.name, "gold");
        assert_eq!(m.model, MaterialModel::gold());
        let p = MaterialSpec::from_json(r#"{"name":"p","model":"plasma","omega_p_eV":9}"#).unwrap();
        assert_eq!(p.model, MaterialModel::gold_plasma());
        let i = MaterialSpec::from_json(r#"{"name":"i","model":"perfect"}"#).unwrap();
        assert_eq!(i.model, MaterialModel::PerfectConductor);

        for bad in [
            r#"{"name":"g","model":"drude","omega_p_eV":9,"tau_fs":27,"color":"gold"}"#,
            r#"{"name":"g","model":"drude","omega_p_eV":9}"#,
            r#"{"name":"g","model":"drude","omega_p_eV":-9,"tau_fs":27}"#,
            r#"{"name":"g","model":"plasma","omega_p_eV":9,"tau_fs":27}"#,
            r#"{"name":"g","model":"perfect","omega_p_eV":9}"#,
            r#"{"name":"g","model":"metal"}"#,
        ] {
            assert!(matches!(MaterialSpec::from_json(bad), Err(Error::Material(_))), "{bad}");
        }
    }

    #[test]
    fn drude_tends_to_plasma() {
        let wp = MaterialModel::gold().omega_p().unwrap();
        let w = 1e14;
        let d = MaterialModel::drude(wp, 1e6 / w).unwrap();
        let sd = conductivity(&d, c(w, 0.0)).unwrap();
        let sp = conductivity(&MaterialModel::plasma(wp).unwrap(), c(w, 0.0)).unwrap();
        assert!((sd - sp).norm() / sp.norm() < 2e-6);
    }

    proptest::proptest! {
        #[test]
        fn drude_is_passive(w in 1e8f64..1e18) {
            let s = conductivity(&MaterialModel::gold(), c(w, 0.0)).unwrap();
            proptest::prop_assert!(s.re > 0.0);
        }

        #[test]
        fn imaginary_axis_permittivity_decreasing(x in 1e9f64..1e17) {
            for m in [MaterialModel::gold(), MaterialModel::gold_plasma()] {
                let a = permittivity_imag_axis(&m, x).unwrap();
                let b = permittivity_imag_axis(&m, x * 1.1).unwrap();
                proptest::prop_assert!(a > 1.0 && b > 1.0 && b < a);
            }
        }
    }
}
