//! Charge and current relaxation in a Drude metal.
//!
//! Rates are reported as complex `s` for a time dependence `e^{st}`. The
//! equivalent eigenfrequency convention `e^{−iωt}` is `ω = i s`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::materials::{dc_conductivity, magnetic_diffusivity, MaterialModel};
use crate::scales::{thermal_frequency, Temperature, EPS0};

fn drude_params(model: &MaterialModel) -> Result<(f64, f64)> {
    match *model {
        MaterialModel::Drude { omega_p, tau } => Ok((omega_p, tau)),
        other => Err(Error::UnsupportedModel(format!(
            "relaxation diagnostics need a Drude model, got {}",
            other.kind()
        ))),
    }
}

/// Ohmic estimate `σ_DC / ε0` of the charge relaxation rate.
pub fn naive_relaxation_rate(model: &MaterialModel) -> Result<f64> {
    drude_params(model)?;
    Ok(dc_conductivity(model)? / EPS0)
}

/// Both roots of `s² + s/τ + ω_p² = 0`, slow root first.
///
/// In the underdamped case (ω_pτ > 1/2) the pair is complex conjugate with
/// `Re s = −1/(2τ)`; the root with positive imaginary part comes first.
pub fn telegraphist_eigenfrequencies(model: &MaterialModel) -> Result<[Complex64; 2]> {
    let (wp, tau) = drude_params(model)?;
    let b = 1.0 / tau;
    let c = wp * wp;
    let half = 0.5 * b;
    let disc = half * half - c;
    if disc < 0.0 {
        let im = (c - half * half).sqrt();
        return Ok([Complex64::new(-half, im), Complex64::new(-half, -im)]);
    }
    // real roots: q = −(b + √(b² − 4c))/2, s₁ = q, s₂ = c/q
    let q = -(half + disc.sqrt());
    if q == 0.0 {
        return Ok([Complex64::new(0.0, 0.0); 2]);
    }
    let fast = q;
    let slow = c / q;
    Ok([Complex64::new(slow, 0.0), Complex64::new(fast, 0.0)])
}

/// Overdamped magnetic-diffusion eigenfrequency `ω_k = −i D k²`.
pub fn diffusion_eigenfrequency(model: &MaterialModel, k: f64) -> Result<Complex64> {
    drude_params(model)?;
    if !(k >= 0.0) || !k.is_finite() {
        return Err(Error::Domain(format!("k must be finite and >= 0, got {k}")));
    }
    Ok(Complex64::new(0.0, -magnetic_diffusivity(model)? * k * k))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrequencyComparison {
    /// Hz
    pub inv_2pi_tau: f64,
    /// Hz
    pub omega_t_over_2pi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelaxationReport {
    /// 1/s
    pub naive_rate: f64,
    /// `s` convention, `e^{st}`
    pub telegraphist_roots: [Complex64; 2],
    /// Same roots as eigenfrequencies `ω = i s`.
    pub telegraphist_frequencies: [Complex64; 2],
    /// `−max Re s`
    pub decay_rate: f64,
    /// `|Im s|` when underdamped.
    pub oscillation: Option<f64>,
    /// m²/s
    pub diffusivity: f64,
    pub comparison: FrequencyComparison,
}

pub fn relaxation_report(model: &MaterialModel, t: Temperature) -> Result<RelaxationReport> {
    let (_, tau) = drude_params(model)?;
    if t.is_zero() {
        return Err(Error::Domain("relaxation report needs T > 0".into()));
    }
    let roots = telegraphist_eigenfrequencies(model)?;
    let decay_rate = -roots.iter().map(|s| s.re).fold(f64::NEG_INFINITY, f64::max);
    let oscillation = (roots[0].im != 0.0).then(|| roots[0].im.abs());
    let i = Complex64::new(0.0, 1.0);
    Ok(RelaxationReport {
        naive_rate: naive_relaxation_rate(model)?,
        telegraphist_roots: roots,
        telegraphist_frequencies: [i * roots[0], i * roots[1]],
        decay_rate,
        oscillation,
        diffusivity: magnetic_diffusivity(model)?,
        comparison: FrequencyComparison {
            inv_2pi_tau: 1.0 / (2.0 * std::f64::consts::PI * tau),
            omega_t_over_2pi: thermal_frequency(t).hertz(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gold() -> MaterialModel {
        MaterialModel::gold()
    }

    #[test]
    fn gold_roots_underdamped() {
        let tau = 27e-15;
        let roots = telegraphist_eigenfrequencies(&gold()).unwrap();
        for s in roots {
            assert!((s.re / (-0.5 / tau) - 1.0).abs() < 1e-10);
        }
        let wp = gold().omega_p().unwrap();
        assert!((roots[0].im / wp - 1.0).abs() < 1e-5);
        assert_eq!(roots[0].im, -roots[1].im);
    }

    #[test]
    fn overdamped_slow_root_is_ohmic() {
        let wp = 1e15;
        let m = MaterialModel::drude(wp, 0.01 / wp).unwrap();
        let slow = telegraphist_eigenfrequencies(&m).unwrap()[0];
        assert_eq!(slow.im, 0.0);
        let naive = naive_relaxation_rate(&m).unwrap();
        assert!((-slow.re / naive - 1.0).abs() < 1e-2);
        let m = MaterialModel::drude(wp, 0.1 / wp).unwrap();
        let r = telegraphist_eigenfrequencies(&m).unwrap();
        assert!(r[0].im == 0.0 && r[1].im == 0.0);
        assert!((-r[0].re / naive_relaxation_rate(&m).unwrap() - 1.0).abs() < 0.02);
    }

    #[test]
    fn critical_damping_double_root() {
        let tau = 1e-14;
        let m = MaterialModel::drude(0.5 / tau, tau).unwrap();
        let r = telegraphist_eigenfrequencies(&m).unwrap();
        for s in r {
            assert!((s.re / (-0.5 / tau) - 1.0).abs() < 1e-12);
            assert_eq!(s.im, 0.0);
        }
    }

    #[test]
    fn gold_rates() {
        let naive = naive_relaxation_rate(&gold()).unwrap();
        let t = EPS0 / dc_conductivity(&gold()).unwrap();
        assert!(t > 1e-19 / 3.0 && t < 3e-19);
        assert!((naive * t - 1.0).abs() < 1e-12);
        let halved = MaterialModel::drude(gold().omega_p().unwrap() / 2f64.sqrt(), 27e-15).unwrap();
        assert!((naive_relaxation_rate(&halved).unwrap() / naive - 0.5).abs() < 1e-12);
    }

    #[test]
    fn diffusion_branch() {
        let g = gold();
        assert_eq!(diffusion_eigenfrequency(&g, 0.0).unwrap(), Complex64::new(0.0, 0.0));
        let k = 1.0 / 150e-9;
        let w = diffusion_eigenfrequency(&g, k).unwrap();
        assert_eq!(w.re, 0.0);
        assert!((w.im / -8.0e11 - 1.0).abs() < 0.05, "{}", w.im);
        let w2 = diffusion_eigenfrequency(&g, 2.0 * k).unwrap();
        assert!((w2.im / w.im - 4.0).abs() < 1e-12);
        assert!(diffusion_eigenfrequency(&MaterialModel::gold_plasma(), k).is_err());
        assert!(diffusion_eigenfrequency(&g, -1.0).is_err());
    }

    #[test]
    fn report_for_gold() {
        let r = relaxation_report(&gold(), Temperature::new(300.0).unwrap()).unwrap();
        assert!((r.comparison.inv_2pi_tau / 5.9e12 - 1.0).abs() < 0.02);
        assert!((r.comparison.omega_t_over_2pi / 6.2e12 - 1.0).abs() < 0.02);
        assert!((r.decay_rate / 1.85e13 - 1.0).abs() < 0.01);
        assert!(r.oscillation.is_some());
        let r2 = relaxation_report(&gold(), Temperature::new(4.0).unwrap()).unwrap();
        assert_eq!(r.telegraphist_roots, r2.telegraphist_roots);
        assert!(relaxation_report(&MaterialModel::PerfectConductor, Temperature::new(300.0).unwrap()).is_err());
    }

    proptest! {
        #[test]
        fn vieta_relations(lwp in 10.0f64..16.0, lx in -3.0f64..3.0) {
            let wp = 10f64.powf(lwp);
            let tau = 10f64.powf(lx) / wp;
            let m = MaterialModel::drude(wp, tau).unwrap();
            let [a, b] = telegraphist_eigenfrequencies(&m).unwrap();
            let prod = a * b;
            let sum = a + b;
            prop_assert!((prod.re / (wp * wp) - 1.0).abs() < 1e-12);
            prop_assert!(prod.im.abs() <= 1e-12 * wp * wp);
            prop_assert!((sum.re * tau + 1.0).abs() < 1e-12);
            prop_assert!(sum.im.abs() <= 1e-12 / tau);
        }

        #[test]
        fn decay_never_beats_current(lwp in 10.0f64..16.0, lx in -3.0f64..3.0) {
            let wp = 10f64.powf(lwp);
            let tau = 10f64.powf(lx) / wp;
            let m = MaterialModel::drude(wp, tau).unwrap();
            let r = relaxation_report(&m, Temperature::new(300.0).unwrap()).unwrap();
            prop_assert!(r.decay_rate <= 0.5 / tau * (1.0 + 1e-12));
            if wp * tau > 0.5 {
                prop_assert!((r.decay_rate * 2.0 * tau - 1.0).abs() < 1e-12);
            }
        }
    }
}
