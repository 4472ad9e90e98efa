//! Real-frequency, mode-resolved view of the plate pressure.
//!
//! On the real axis the pressure reads
//!
//! ```text
//! P = (ħ/π²) ∫_0^∞ dω [1/2 + n̄(ω)] Re g(ω),   g(ω) = Σ_σ ∫ k dk k_z f_σ(ω, k),
//! f_σ = x/(1 − x),   x = r_{1σ} r_{2σ} e^{2 i k_z d}
//! ```
//!
//! with `k_z` running from `ω/c` down to 0 (propagating sector) and then
//! up the imaginary axis `k_z = iκ` (evanescent sector, `k dk = κ dκ`).
//! Rotating the ω contour onto the imaginary axis recovers the Matsubara
//! form used in [`crate::lifshitz`], which makes this module a validator.
//!
//! The zero-point part is only conditionally convergent on the real axis. It
//! is Abel-regularized with `e^{−ω/Λ}`; the real part of the regularized
//! integral is even in `1/Λ`, so a two-level Richardson extrapolation in
//! `1/Λ²` removes the regulator.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fresnel::{reflection_kz, Polarization};
use crate::lifshitz::{Breakdown, PlateSystem, QuadratureConfig};
use crate::materials::{magnetic_diffusivity, MaterialModel};
use crate::quad::{adaptive, AdaptiveOptions};
use crate::scales::{bose_raw, Temperature, C, HBAR, K_B};

/// Closer than this to `x = 1` counts as sitting on a cavity resonance.
pub const POLE_TOLERANCE: f64 = 1e-12;

fn roundtrip_raw(sys: &PlateSystem, omega: f64, kz: Complex64, pol: Polarization) -> (Complex64, Complex64) {
    let w = Complex64::new(omega, 0.0);
    let r1 = reflection_kz(&sys.material_1, w, kz, pol);
    let r2 = reflection_kz(&sys.material_2, w, kz, pol);
    let x = r1 * r2 * (Complex64::i() * 2.0 * kz * sys.d()).exp();
    (x, Complex64::new(1.0, 0.0) - x)
}

/// Round-trip factor `f = x/(1 − x)` per polarization, [TE, TM].
pub fn roundtrip_factor(sys: &PlateSystem, omega: f64, kz: Complex64) -> Result<[Complex64; 2]> {
    if !(omega >= 0.0) || !omega.is_finite() {
        return Err(Error::Domain(format!("omega must be finite and >= 0, got {omega}")));
    }
    if kz.re < 0.0 || kz.im < 0.0 {
        return Err(Error::Domain(format!("k_z must lie in the first quadrant, got {kz}")));
    }
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for (o, pol) in out.iter_mut().zip(Polarization::BOTH) {
        let (x, den) = roundtrip_raw(sys, omega, kz, pol);
        if den.norm() < POLE_TOLERANCE {
            return Err(Error::Pole(format!(
                "{} round trip at omega={omega:e}, k_z={kz} sits on a cavity resonance",
                pol.label()
            )));
        }
        *o = x / den;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralSample {
    /// rad/s
    pub omega: f64,
    /// 1/m
    pub kappa: f64,
    pub pol: Polarization,
    /// `κ·Re[2ħ(iκ) f(ω, iκ)]` in J·s/m²
    pub value: f64,
}

/// Evanescent mode density `κ·Re[2ħ(iκ) f(ω, iκ)]` for one polarization.
pub fn mode_density(sys: &PlateSystem, omega: f64, kappa: f64, pol: Polarization) -> Result<SpectralSample> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::Domain(format!("kappa must be finite and > 0, got {kappa}")));
    }
    let f = roundtrip_factor(sys, omega, Complex64::new(0.0, kappa))?;
    let f = match pol {
        Polarization::Te => f[0],
        Polarization::Tm => f[1],
    };
    let value = kappa * (2.0 * HBAR * Complex64::new(0.0, kappa) * f).re;
    Ok(SpectralSample {
        omega,
        kappa,
        pol,
        value,
    })
}

/// `n` log-spaced points from `a` to `b` inclusive.
pub fn log_grid(a: f64, b: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 || !(a > 0.0) || !(b > a) || !b.is_finite() {
        return Err(Error::Domain(format!("log grid needs n >= 2 and 0 < a < b, got n={n}, a={a}, b={b}")));
    }
    let (la, lb) = (a.ln(), b.ln());
    Ok((0..n)
        .map(|i| {
            if i == n - 1 {
                b
            } else {
                (la + (lb - la) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect())
}

fn first_drude(sys: &PlateSystem) -> Option<MaterialModel> {
    [sys.material_1, sys.material_2]
        .into_iter()
        .find(|m| matches!(m, MaterialModel::Drude { .. }))
}

/// Default map grids: ω over `[1e-3/τ, 1e2/τ]` and κ over `[1e-2/d, 1e2/d]`.
/// Without a Drude plate the ω range is centred on `c/d` instead.
pub fn default_grids(sys: &PlateSystem, n_omega: usize, n_kappa: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let d = sys.d();
    let w0 = match first_drude(sys).and_then(|m| m.tau()) {
        Some(tau) => 1.0 / tau,
        None => C / d,
    };
    Ok((log_grid(1e-3 * w0, 1e2 * w0, n_omega)?, log_grid(1e-2 / d, 1e2 / d, n_kappa)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellError {
    pub omega_index: usize,
    pub kappa_index: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Overlays {
    /// κ = 1/d
    pub cutoff_kappa: f64,
    /// D of the first Drude plate, if any.
    pub diffusivity: Option<f64>,
    /// (κ, ω = Dκ²) on the κ grid.
    pub diffusion_curve: Vec<(f64, f64)>,
}

/// Mode density on an (ω, κ) grid. Matrices are indexed `[i_omega][i_kappa]`;
/// cells that hit a resonance pole hold NaN and are listed in `errors`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralMap {
    pub omega_grid: Vec<f64>,
    pub kappa_grid: Vec<f64>,
    pub te: Vec<Vec<f64>>,
    pub tm: Vec<Vec<f64>>,
    pub total: Vec<Vec<f64>>,
    pub overlays: Overlays,
    pub errors: Vec<CellError>,
}

impl SpectralMap {
    /// Largest finite summed value and its (ω, κ).
    pub fn argmax(&self) -> Option<(f64, f64, f64)> {
        let mut best: Option<(f64, f64, f64)> = None;
        for (i, row) in self.total.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v.is_finite() && best.map_or(true, |b| v > b.2) {
                    best = Some((self.omega_grid[i], self.kappa_grid[j], v));
                }
            }
        }
        best
    }

    pub fn max_abs(&self) -> f64 {
        self.total
            .iter()
            .flatten()
            .filter(|v| v.is_finite())
            .fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn check_grid(name: &str, g: &[f64]) -> Result<()> {
    if g.len() < 2 {
        return Err(Error::Domain(format!("{name} grid needs at least 2 points")));
    }
    if g.iter().any(|v| !(v.is_finite() && *v > 0.0)) || g.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(format!("{name} grid must be positive and strictly increasing")));
    }
    Ok(())
}

pub fn spectral_map(sys: &PlateSystem, omega_grid: &[f64], kappa_grid: &[f64]) -> Result<SpectralMap> {
    check_grid("omega", omega_grid)?;
    check_grid("kappa", kappa_grid)?;
    let rows: Vec<Vec<std::result::Result<[f64; 2], String>>> = omega_grid
        .par_iter()
        .map(|&w| {
            kappa_grid
                .iter()
                .map(|&k| {
                    let te = mode_density(sys, w, k, Polarization::Te).map_err(|e| e.to_string())?;
                    let tm = mode_density(sys, w, k, Polarization::Tm).map_err(|e| e.to_string())?;
                    Ok([te.value, tm.value])
                })
                .collect()
        })
        .collect();
    let (nw, nk) = (omega_grid.len(), kappa_grid.len());
    let mut te = vec![vec![f64::NAN; nk]; nw];
    let mut tm = vec![vec![f64::NAN; nk]; nw];
    let mut total = vec![vec![f64::NAN; nk]; nw];
    let mut errors = Vec::new();
    for (i, row) in rows.into_iter().enumerate() {
        for (j, cell) in row.into_iter().enumerate() {
            match cell {
                Ok([a, b]) => {
                    te[i][j] = a;
                    tm[i][j] = b;
                    total[i][j] = a + b;
                }
                Err(message) => errors.push(CellError {
                    omega_index: i,
                    kappa_index: j,
                    message,
                }),
            }
        }
    }
    let diffusivity = first_drude(sys).map(|m| magnetic_diffusivity(&m)).transpose()?;
    let diffusion_curve = match diffusivity {
        Some(dm) => kappa_grid.iter().map(|&k| (k, dm * k * k)).collect(),
        None => Vec::new(),
    };
    Ok(SpectralMap {
        omega_grid: omega_grid.to_vec(),
        kappa_grid: kappa_grid.to_vec(),
        te,
        tm,
        total,
        overlays: Overlays {
            cutoff_kappa: 1.0 / sys.d(),
            diffusivity,
            diffusion_curve,
        },
        errors,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Sectors {
    pub propagating: f64,
    pub evanescent: f64,
}

impl Sectors {
    pub fn total(&self) -> f64 {
        self.propagating + self.evanescent
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct PolSectors {
    pub te: Sectors,
    pub tm: Sectors,
}

impl PolSectors {
    pub fn total(&self) -> f64 {
        self.te.total() + self.tm.total()
    }

    fn scaled(k: &KIntegrals, s: f64) -> Self {
        PolSectors {
            te: Sectors {
                propagating: s * k.prop[0],
                evanescent: s * k.evan[0],
            },
            tm: Sectors {
                propagating: s * k.prop[1],
                evanescent: s * k.evan[1],
            },
        }
    }
}

/// Pressure integrand at one real frequency, in Pa·s (integrate over ω for Pa).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumRecord {
    pub omega: f64,
    /// The 1/2 term of `[1/2 + n̄]`.
    pub zero_point: PolSectors,
    /// The `n̄` term.
    pub thermal: PolSectors,
    pub total: f64,
    pub estimated_error: f64,
    pub propagating_converged: bool,
    pub evanescent_converged: bool,
}

/// Sector integrals `Re ∫ k_z² f dk_z` (propagating) and `Re ∫ κ (iκ) f dκ`
/// (evanescent) per polarization, before the `ħ/π² · weight` factor.
#[derive(Debug, Clone, Copy)]
struct KIntegrals {
    prop: [f64; 2],
    evan: [f64; 2],
    error: f64,
    prop_ok: bool,
    evan_ok: bool,
}

fn is_ideal(m: &MaterialModel) -> bool {
    matches!(m, MaterialModel::PerfectConductor)
}

fn is_lossless(m: &MaterialModel) -> bool {
    matches!(m, MaterialModel::PerfectConductor | MaterialModel::Plasma { .. })
}

fn check_real_axis_support(sys: &PlateSystem) -> Result<()> {
    if sys.has_vacuum() || (is_ideal(&sys.material_1) && is_ideal(&sys.material_2)) {
        return Ok(());
    }
    if is_lossless(&sys.material_1) && is_lossless(&sys.material_2) {
        return Err(Error::UnsupportedModel(format!(
            "real-axis evaluation of a lossless {}/{} pair is a sum of delta resonances; use the Matsubara engine",
            sys.material_1.kind(),
            sys.material_2.kind()
        )));
    }
    Ok(())
}

/// Ideal mirrors: `Re f = −1/2 + π Σ_m δ(2k_z d − 2πm)`, so the propagating
/// integral is a staircase over cavity modes and the evanescent one vanishes.
fn ideal_staircase(omega: f64, d: f64) -> f64 {
    let k0 = omega / C;
    let q = k0 * d / PI;
    let m_max = q.floor() as u64;
    let mut stair = 0.0;
    for m in 1..=m_max {
        let w = if (m as f64 - q).abs() < 1e-14 * q { 0.5 } else { 1.0 };
        stair += w * (m as f64).powi(2);
    }
    -k0.powi(3) / 6.0 + PI.powi(3) / (2.0 * d.powi(3)) * stair
}

/// Panel offsets in `t = 2κd` for the evanescent sector.
const EVANESCENT_PANELS: [f64; 16] = [
    0.0, 1e-3, 3e-3, 0.01, 0.03, 0.1, 0.3, 0.6, 1.0, 2.0, 4.0, 8.0, 14.0, 22.0, 34.0, 60.0,
];

const INNER_TOL: f64 = 1e-9;
const INNER_MAX_INTERVALS: usize = 4000;

fn k_integrals(sys: &PlateSystem, omega: f64) -> KIntegrals {
    let d = sys.d();
    if sys.has_vacuum() {
        return KIntegrals {
            prop: [0.0; 2],
            evan: [0.0; 2],
            error: 0.0,
            prop_ok: true,
            evan_ok: true,
        };
    }
    if is_ideal(&sys.material_1) && is_ideal(&sys.material_2) {
        let s = ideal_staircase(omega, d);
        return KIntegrals {
            prop: [s, s],
            evan: [0.0; 2],
            error: 0.0,
            prop_ok: true,
            evan_ok: true,
        };
    }
    let k0 = omega / C;
    let scale = k0.max(1.0 / d).powi(3);

    // propagating: k_z ∈ [0, ω/c], split at the bare cavity modes
    let mut bp = vec![0.0];
    let n_modes = (k0 * d / PI).floor() as usize;
    for m in 1..=n_modes.min(4000) {
        bp.push(m as f64 * PI / d);
    }
    bp.push(k0);
    bp.dedup();
    let prop = adaptive::<2, _>(
        &bp,
        AdaptiveOptions {
            abs_tol: INNER_TOL * 1e-3 * scale,
            rel_tol: INNER_TOL,
            max_intervals: INNER_MAX_INTERVALS,
        },
        |pts| {
            let mut out = [[0.0; 2]; 21];
            for (o, &kz) in out.iter_mut().zip(pts) {
                let kz_c = Complex64::new(kz, 0.0);
                for (c, pol) in Polarization::BOTH.into_iter().enumerate() {
                    let (x, den) = roundtrip_raw(sys, omega, kz_c, pol);
                    o[c] = kz * kz * (x / den).re;
                }
            }
            out
        },
    );

    // evanescent in t = 2κd
    let evan = adaptive::<2, _>(
        &EVANESCENT_PANELS,
        AdaptiveOptions {
            abs_tol: INNER_TOL * 1e-3 * scale * 2.0 * d,
            rel_tol: INNER_TOL,
            max_intervals: INNER_MAX_INTERVALS,
        },
        |pts| {
            let mut out = [[0.0; 2]; 21];
            for (o, &t) in out.iter_mut().zip(pts) {
                let kappa = t / (2.0 * d);
                let kz = Complex64::new(0.0, kappa);
                for (c, pol) in Polarization::BOTH.into_iter().enumerate() {
                    let (x, den) = roundtrip_raw(sys, omega, kz, pol);
                    o[c] = -kappa * kappa * (x / den).im;
                }
            }
            out
        },
    );
    let j = 1.0 / (2.0 * d);
    KIntegrals {
        prop: prop.value,
        evan: [evan.value[0] * j, evan.value[1] * j],
        error: prop.error + evan.error * j,
        prop_ok: prop.converged,
        evan_ok: evan.converged,
    }
}

/// Pressure integrand at real frequency ω, split by weight, polarization
/// and sector.
pub fn pressure_spectrum(sys: &PlateSystem, t: Temperature, omega: f64) -> Result<SpectrumRecord> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Domain(format!("omega must be finite and > 0, got {omega}")));
    }
    check_real_axis_support(sys)?;
    let k = k_integrals(sys, omega);
    let pre = HBAR / (PI * PI);
    let nbar = bose_raw(omega, t.kelvin());
    let zero_point = PolSectors::scaled(&k, 0.5 * pre);
    let thermal = PolSectors::scaled(&k, nbar * pre);
    Ok(SpectrumRecord {
        omega,
        total: zero_point.total() + thermal.total(),
        zero_point,
        thermal,
        estimated_error: pre * (0.5 + nbar) * k.error,
        propagating_converged: k.prop_ok,
        evanescent_converged: k.evan_ok,
    })
}

/// Which part of the spectrum to integrate over ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectorSelector {
    pub pol: Option<Polarization>,
    pub propagating: bool,
    pub evanescent: bool,
}

impl SectorSelector {
    pub const ALL: SectorSelector = SectorSelector {
        pol: None,
        propagating: true,
        evanescent: true,
    };

    fn pick(&self, s: &PolSectors) -> f64 {
        let one = |x: &Sectors| {
            (if self.propagating { x.propagating } else { 0.0 }) + (if self.evanescent { x.evanescent } else { 0.0 })
        };
        match self.pol {
            Some(Polarization::Te) => one(&s.te),
            Some(Polarization::Tm) => one(&s.tm),
            None => one(&s.te) + one(&s.tm),
        }
    }
}

fn outer_breakpoints(sys: &PlateSystem, t: Temperature, omega_max: f64) -> Vec<f64> {
    let d = sys.d();
    let mut bp = vec![0.0, omega_max];
    let mode = PI * C / d;
    let mut m = 1.0;
    while m * mode < omega_max && m < 2000.0 {
        bp.push(m * mode);
        m += 1.0;
    }
    let wt = K_B * t.kelvin() / HBAR;
    for f in [0.1, 0.3, 1.0, 3.0, 10.0] {
        bp.push(f * wt);
    }
    for m in [sys.material_1, sys.material_2] {
        if let Some(tau) = m.tau() {
            for f in [1e-3, 1e-2, 0.1, 0.3, 1.0, 3.0, 10.0] {
                bp.push(f / tau);
            }
        }
        if let Some(wp) = m.omega_p() {
            for f in [0.5, std::f64::consts::FRAC_1_SQRT_2, 1.0, 2.0] {
                bp.push(f * wp);
            }
        }
    }
    bp.retain(|&w| w >= 0.0 && w <= omega_max && w.is_finite());
    bp.sort_by(f64::total_cmp);
    bp.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1e-300));
    bp
}

const OUTER_MAX_INTERVALS: usize = 6000;

struct OmegaIntegral {
    value: [f64; 2],
    error: f64,
    converged: bool,
}

/// `∫ w(ω) · [TE, TM] dω` of the selected sectors, with the weight applied
/// to the per-polarization `ħ/π² · Re g` integrand.
fn omega_integral<W>(sys: &PlateSystem, t: Temperature, omega_max: f64, sel: SectorSelector, rel_tol: f64, weight: W) -> OmegaIntegral
where
    W: Fn(f64) -> f64 + Sync,
{
    let bp = outer_breakpoints(sys, t, omega_max);
    let pre = HBAR / (PI * PI);
    let res = adaptive::<2, _>(
        &bp,
        AdaptiveOptions {
            abs_tol: 0.0,
            rel_tol,
            max_intervals: OUTER_MAX_INTERVALS,
        },
        |pts| {
            let vals: Vec<[f64; 2]> = pts
                .par_iter()
                .map(|&w| {
                    if w <= 0.0 {
                        return [0.0; 2];
                    }
                    let wt = weight(w);
                    if wt == 0.0 {
                        return [0.0; 2];
                    }
                    let k = k_integrals(sys, w);
                    let s = PolSectors::scaled(&k, pre * wt);
                    let te = SectorSelector {
                        pol: Some(Polarization::Te),
                        ..sel
                    };
                    let tm = SectorSelector {
                        pol: Some(Polarization::Tm),
                        ..sel
                    };
                    let pol_ok = |p: Polarization| sel.pol.map_or(true, |q| q == p);
                    [
                        if pol_ok(Polarization::Te) { te.pick(&s) } else { 0.0 },
                        if pol_ok(Polarization::Tm) { tm.pick(&s) } else { 0.0 },
                    ]
                })
                .collect();
            let mut out = [[0.0; 2]; 21];
            out.copy_from_slice(&vals);
            out
        },
    );
    OmegaIntegral {
        value: res.value,
        error: res.error,
        converged: res.converged,
    }
}

/// Thermal (`n̄`) contribution of the selected sectors, integrated over
/// `ω ∈ (0, omega_max]`. Returns (value, estimated error) in Pa.
pub fn thermal_sector_integral(sys: &PlateSystem, t: Temperature, sel: SectorSelector, omega_max: f64) -> Result<(f64, f64)> {
    check_real_axis_support(sys)?;
    if t.is_zero() {
        return Ok((0.0, 0.0));
    }
    if !(omega_max > 0.0) || !omega_max.is_finite() {
        return Err(Error::Domain(format!("omega_max must be finite and > 0, got {omega_max}")));
    }
    let kelvin = t.kelvin();
    let r = omega_integral(sys, t, omega_max, sel, 1e-6, |w| bose_raw(w, kelvin));
    if !r.converged {
        return Err(Error::NonConvergence(format!(
            "thermal sector integral: estimated error {:e}",
            r.error
        )));
    }
    Ok((r.value[0] + r.value[1], r.error))
}

/// Regulator scales `Λ_j = REGULATOR_BASE · 2^j · c/d`.
const REGULATOR_BASE: f64 = 2.0;
const REGULATOR_LEVELS: usize = 3;
/// Outer truncation in units of the regulator (or of k_BT/ħ).
const CUTOFF_FACTOR: f64 = 40.0;

/// Pressure from the real-frequency representation. Supported pairs are
/// ideal mirrors, and any pair with at least one lossy (Drude) plate.
pub fn pressure_real_axis(sys: &PlateSystem, t: Temperature, cfg: &QuadratureConfig) -> Result<Breakdown> {
    cfg.validate()?;
    check_real_axis_support(sys)?;
    if sys.has_vacuum() {
        return Ok(Breakdown {
            total: 0.0,
            te: 0.0,
            tm: 0.0,
            n0: None,
            estimated_error: 0.0,
            terms: 0,
        });
    }
    let d = sys.d();
    let kelvin = t.kelvin();
    let outer_tol = (cfg.rel_tol * 10.0).clamp(1e-7, 1e-4);
    let mut flags = Vec::new();

    // thermal part converges absolutely
    let thermal = if t.is_zero() {
        OmegaIntegral {
            value: [0.0; 2],
            error: 0.0,
            converged: true,
        }
    } else {
        let wmax = CUTOFF_FACTOR * K_B * kelvin / HBAR;
        omega_integral(sys, t, wmax, SectorSelector::ALL, outer_tol, |w| bose_raw(w, kelvin))
    };
    if !thermal.converged {
        flags.push(format!("thermal part (error {:e})", thermal.error));
    }

    // zero-point part at increasing regulator scales
    let mut levels = Vec::with_capacity(REGULATOR_LEVELS);
    for j in 0..REGULATOR_LEVELS {
        let lambda = REGULATOR_BASE * (1u32 << j) as f64 * C / d;
        let r = omega_integral(sys, t, CUTOFF_FACTOR * lambda, SectorSelector::ALL, outer_tol, |w| {
            0.5 * (-w / lambda).exp()
        });
        if !r.converged {
            flags.push(format!("zero-point part at regulator {lambda:e} (error {:e})", r.error));
        }
        levels.push(r);
    }
    if !flags.is_empty() {
        return Err(Error::NonConvergence(format!("real-axis integration: {}", flags.join("; "))));
    }
    let mut zp = [0.0; 2];
    let mut rich_err = 0.0;
    for c in 0..2 {
        let p: Vec<f64> = levels.iter().map(|l| l.value[c]).collect();
        let r1a = (4.0 * p[1] - p[0]) / 3.0;
        let r1b = (4.0 * p[2] - p[1]) / 3.0;
        let r2 = (16.0 * r1b - r1a) / 15.0;
        zp[c] = r2;
        rich_err += (r2 - r1b).abs();
    }
    let quad_err: f64 = levels.iter().map(|l| l.error).sum::<f64>() + thermal.error;
    let te = zp[0] + thermal.value[0];
    let tm = zp[1] + thermal.value[1];
    Ok(Breakdown {
        total: te + tm,
        te,
        tm,
        n0: None,
        estimated_error: rich_err + quad_err,
        terms: 0,
    })
}
