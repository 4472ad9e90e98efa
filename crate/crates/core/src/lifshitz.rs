//! Free energy, pressure and entropy of two parallel plates from the
//! imaginary-frequency (Matsubara) form of the Lifshitz formula.
//!
//! With `q_n = sqrt(ξ_n²/c² + k²)` and `ρ_σ = r_{1σ} r_{2σ}` evaluated at
//! `ω = iξ_n`,
//!
//! ```text
//! F = (k_B T / 2π) Σ'_n ∫ k dk Σ_σ ln(1 − ρ_σ e^{−2 q_n d})
//! P = −(k_B T / π) Σ'_n ∫ k dk q_n Σ_σ ρ_σ e^{−2 q_n d} / (1 − ρ_σ e^{−2 q_n d})
//! ```
//!
//! where the primed sum gives the n = 0 term half weight. The k-integral is
//! taken in `x = 2 q_n d ∈ [2 ξ_n d / c, 2 ξ_n d / c + 60]` on fixed
//! Gauss–Legendre panels, so results are smooth functions of `d` and `T`
//! (finite differences of them are meaningful). At T = 0 the sum becomes
//! `(ħ / 2π) ∫ dξ`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fresnel::ImagAxisResponse;
use crate::materials::MaterialModel;
use crate::quad::GaussLegendre;
use crate::scales::{Length, Temperature, C, HBAR, K_B, ZETA3};

/// Two half-spaces facing each other across a vacuum gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlateSystem {
    pub material_1: MaterialModel,
    pub material_2: MaterialModel,
    pub gap: Length,
}

impl PlateSystem {
    pub fn new(material_1: MaterialModel, material_2: MaterialModel, gap: Length) -> Self {
        PlateSystem {
            material_1,
            material_2,
            gap,
        }
    }

    pub fn symmetric(material: MaterialModel, gap: Length) -> Self {
        Self::new(material, material, gap)
    }

    pub fn with_gap(&self, gap: Length) -> Self {
        PlateSystem { gap, ..*self }
    }

    pub fn d(&self) -> f64 {
        self.gap.metres()
    }

    pub(crate) fn has_vacuum(&self) -> bool {
        matches!(self.material_1, MaterialModel::Vacuum) || matches!(self.material_2, MaterialModel::Vacuum)
    }
}

/// How many Matsubara terms to sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MatsubaraLimit {
    /// Sum until the terms are negligible, then add a geometric tail estimate.
    Auto,
    /// Sum n = 0..=max exactly.
    Fixed(usize),
}

/// Convergence knobs shared by all thermodynamic evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig {
    /// Gauss–Legendre nodes per k-panel (≥ 16).
    pub k_nodes: usize,
    pub matsubara_max: MatsubaraLimit,
    /// Target relative accuracy, in (0, 1e-2].
    pub rel_tol: f64,
    /// Temperature step for entropy differencing, as a fraction of T.
    pub temp_step_fraction: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            k_nodes: 32,
            matsubara_max: MatsubaraLimit::Auto,
            rel_tol: 1e-6,
            temp_step_fraction: 1e-2,
        }
    }
}

/// Hard cap on the number of Matsubara terms in auto mode.
pub const MATSUBARA_CAP: usize = 1_000_000;

/// Auto truncation stops once terms fall below `rel_tol · TAIL_FACTOR` of the
/// partial sum, keeping the truncation error smooth in T and d.
const TAIL_FACTOR: f64 = 1e-6;

/// Offsets `x − x_0` of the fixed k-panels.
const K_PANELS: [f64; 14] = [
    0.0, 1e-4, 1e-3, 1e-2, 0.05, 0.2, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 30.0, 60.0,
];

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k_nodes < 16 {
            return Err(Error::InvalidConfig(format!("k_nodes must be >= 16, got {}", self.k_nodes)));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return Err(Error::InvalidConfig(format!(
                "rel_tol must lie in (0, 1e-2], got {}",
                self.rel_tol
            )));
        }
        if !(self.temp_step_fraction > 0.0 && self.temp_step_fraction < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "temp_step_fraction must lie in (0, 0.5), got {}",
                self.temp_step_fraction
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolPair {
    pub te: f64,
    pub tm: f64,
}

impl PolPair {
    pub fn total(&self) -> f64 {
        self.te + self.tm
    }
}

/// A thermodynamic quantity split by polarization, with the n = 0 Matsubara
/// term reported separately (absent for zero-temperature and real-axis
/// evaluations).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Breakdown {
    pub total: f64,
    pub te: f64,
    pub tm: f64,
    pub n0: Option<PolPair>,
    pub estimated_error: f64,
    /// Matsubara terms summed (0 for integral evaluations).
    pub terms: usize,
}

/// Pressure in Pa; negative is attractive.
pub type PressureBreakdown = Breakdown;
/// Free energy per unit area in J/m².
pub type FreeEnergyResult = Breakdown;

impl Breakdown {
    fn zero() -> Self {
        Breakdown {
            total: 0.0,
            te: 0.0,
            tm: 0.0,
            n0: None,
            estimated_error: 0.0,
            terms: 0,
        }
    }

    pub fn n0_total(&self) -> Option<f64> {
        self.n0.map(|p| p.total())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quantity {
    Pressure,
    FreeEnergy,
}

/// Fixed composite rules on the k-panels: fine for the value, coarse for the
/// error estimate.
struct KRules {
    fine: Vec<(f64, f64)>,
    coarse: Vec<(f64, f64)>,
}

impl KRules {
    fn new(k_nodes: usize) -> Self {
        let build = |n: usize| {
            let gl = GaussLegendre::new(n);
            K_PANELS
                .windows(2)
                .flat_map(|w| gl.mapped(w[0], w[1]).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        KRules {
            fine: build(k_nodes),
            coarse: build(k_nodes / 2),
        }
    }
}

#[inline]
fn integrand(quantity: Quantity, d: f64, x: f64, rho: f64) -> f64 {
    if rho == 0.0 {
        return 0.0;
    }
    let em1 = (-x).exp_m1();
    let e = (-x).exp();
    // 1 − ρ e^{−x} without cancellation near ρ = 1, x → 0
    let denom = (1.0 - rho) - rho * em1;
    match quantity {
        Quantity::Pressure => x * x / (8.0 * d * d * d) * rho * e / denom,
        Quantity::FreeEnergy => {
            let l = if rho * e < 0.5 { (-rho * e).ln_1p() } else { denom.ln() };
            x / (4.0 * d * d) * l
        }
    }
}

/// `∫ w(x) f_σ(x) dx` for one imaginary frequency: returns ([TE, TM], error).
fn k_integral(quantity: Quantity, sys: &PlateSystem, xi: f64, rules: &KRules) -> ([f64; 2], f64) {
    let d = sys.d();
    let r1 = ImagAxisResponse::new(&sys.material_1, xi);
    let r2 = ImagAxisResponse::new(&sys.material_2, xi);
    let x0 = 2.0 * xi * d / C;
    let eval = |rule: &[(f64, f64)]| {
        let mut acc = [0.0; 2];
        for &(u, w) in rule {
            let x = x0 + u;
            let q = x / (2.0 * d);
            let a = r1.amplitudes(q);
            let b = r2.amplitudes(q);
            acc[0] += w * integrand(quantity, d, x, a[0] * b[0]);
            acc[1] += w * integrand(quantity, d, x, a[1] * b[1]);
        }
        acc
    };
    let fine = eval(&rules.fine);
    let coarse = eval(&rules.coarse);
    let err = (fine[0] - coarse[0]).abs() + (fine[1] - coarse[1]).abs();
    (fine, err)
}

/// Matsubara frequency `ξ_n = 2πn k_B T / ħ`.
pub fn matsubara_xi(t: Temperature, n: usize) -> f64 {
    2.0 * PI * n as f64 * K_B * t.kelvin() / HBAR
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
struct Compensated {
    sum: f64,
    c: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

fn matsubara_sum(quantity: Quantity, sys: &PlateSystem, t: Temperature, cfg: &QuadratureConfig) -> Result<Breakdown> {
    cfg.validate()?;
    if t.is_zero() {
        return Err(Error::Domain(
            "Matsubara summation needs T > 0; use the zero-temperature evaluation".into(),
        ));
    }
    if sys.has_vacuum() {
        return Ok(Breakdown {
            n0: Some(PolPair { te: 0.0, tm: 0.0 }),
            terms: 1,
            ..Breakdown::zero()
        });
    }
    let rules = KRules::new(cfg.k_nodes);
    let prefactor = match quantity {
        Quantity::Pressure => -K_B * t.kelvin() / PI,
        Quantity::FreeEnergy => K_B * t.kelvin() / (2.0 * PI),
    };
    let term = |n: usize| {
        let (v, e) = k_integral(quantity, sys, matsubara_xi(t, n), &rules);
        let w = if n == 0 { 0.5 * prefactor } else { prefactor };
        ([w * v[0], w * v[1]], (w * e).abs())
    };

    let (v0, e0) = term(0);
    let n0 = PolPair { te: v0[0], tm: v0[1] };
    let mut te = Compensated::default();
    let mut tm = Compensated::default();
    te.add(v0[0]);
    tm.add(v0[1]);
    let mut quad_err = e0;

    let (limit, auto) = match cfg.matsubara_max {
        MatsubaraLimit::Auto => (MATSUBARA_CAP, true),
        MatsubaraLimit::Fixed(m) => (m, false),
    };
    let threshold = cfg.rel_tol * TAIL_FACTOR;
    let mut small_run = 0;
    let mut last: Option<[f64; 2]> = None;
    let mut prev: Option<[f64; 2]> = None;
    let mut n_next = 1;
    let mut chunk = 64;
    let mut done = false;
    while !done && n_next <= limit {
        let end = (n_next + chunk).min(limit + 1);
        let terms: Vec<([f64; 2], f64)> = (n_next..end).into_par_iter().map(term).collect();
        for (v, e) in terms {
            te.add(v[0]);
            tm.add(v[1]);
            quad_err += e;
            prev = last;
            last = Some(v);
            if auto {
                let partial = (te.value() + tm.value()).abs();
                if (v[0] + v[1]).abs() <= threshold * partial {
                    small_run += 1;
                } else {
                    small_run = 0;
                }
                if small_run >= 3 {
                    done = true;
                    n_next += 1;
                    break;
                }
            }
            n_next += 1;
        }
        chunk = (chunk * 2).min(8192);
    }
    let terms = n_next;
    if auto && !done {
        return Err(Error::NonConvergence(format!(
            "Matsubara sum did not converge within {MATSUBARA_CAP} terms"
        )));
    }

    // geometric tail from the ratio of the last two terms
    let mut tail = [0.0; 2];
    if let (Some(a), Some(b)) = (prev, last) {
        for c in 0..2 {
            if a[c] != 0.0 {
                let ratio = b[c] / a[c];
                if ratio > 0.0 && ratio < 1.0 {
                    tail[c] = b[c] * ratio / (1.0 - ratio);
                } else {
                    tail[c] = b[c].abs();
                }
            }
        }
    }
    let tail_err = tail[0].abs() + tail[1].abs();
    if auto {
        te.add(tail[0]);
        tm.add(tail[1]);
    }
    let (te, tm) = (te.value(), tm.value());
    let total = te + tm;
    let estimated_error = quad_err + tail_err;
    if estimated_error > cfg.rel_tol * total.abs() {
        return Err(Error::NonConvergence(format!(
            "estimated error {estimated_error:e} exceeds rel_tol {} of |{total:e}| after {terms} Matsubara terms",
            cfg.rel_tol
        )));
    }
    Ok(Breakdown {
        total,
        te,
        tm,
        n0: Some(n0),
        estimated_error,
        terms,
    })
}

/// Offsets `x_0 = 2ξd/c` of the zero-temperature frequency panels: one
/// panel [0, 1e-8], then a geometric progression (ratio 4) up to 60.
fn xi_panels() -> Vec<f64> {
    let mut p: Vec<f64> = vec![0.0, 1e-8];
    while *p.last().unwrap() < 60.0 {
        let next = p.last().unwrap() * 4.0;
        p.push(next.min(60.0));
    }
    p
}

fn zero_temperature(quantity: Quantity, sys: &PlateSystem, cfg: &QuadratureConfig) -> Result<Breakdown> {
    cfg.validate()?;
    if sys.has_vacuum() {
        return Ok(Breakdown::zero());
    }
    let d = sys.d();
    let rules = KRules::new(cfg.k_nodes);
    let panels = xi_panels();
    let fine_gl = GaussLegendre::new(cfg.k_nodes / 2);
    let coarse_gl = GaussLegendre::new(cfg.k_nodes / 4);
    let prefactor = match quantity {
        Quantity::Pressure => -HBAR * C / (4.0 * PI * PI * d),
        Quantity::FreeEnergy => HBAR * C / (8.0 * PI * PI * d),
    };
    let nodes = |gl: &GaussLegendre| {
        panels
            .windows(2)
            .flat_map(|w| gl.mapped(w[0], w[1]).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    };
    let eval = |pts: Vec<(f64, f64)>| {
        let vals: Vec<([f64; 2], f64)> = pts
            .par_iter()
            .map(|&(x0, w)| {
                let xi = x0 * C / (2.0 * d);
                let (v, e) = k_integral(quantity, sys, xi, &rules);
                ([w * v[0], w * v[1]], w * e)
            })
            .collect();
        let mut acc = [Compensated::default(), Compensated::default()];
        let mut err = 0.0;
        for (v, e) in vals {
            acc[0].add(v[0]);
            acc[1].add(v[1]);
            err += e;
        }
        ([acc[0].value(), acc[1].value()], err)
    };
    let (fine, inner_err) = eval(nodes(&fine_gl));
    let (coarse, _) = eval(nodes(&coarse_gl));
    let te = prefactor * fine[0];
    let tm = prefactor * fine[1];
    let total = te + tm;
    let outer_err = prefactor.abs() * ((fine[0] - coarse[0]).abs() + (fine[1] - coarse[1]).abs());
    let estimated_error = outer_err + prefactor.abs() * inner_err;
    if estimated_error > cfg.rel_tol * total.abs() {
        return Err(Error::NonConvergence(format!(
            "zero-temperature frequency integral: estimated error {estimated_error:e} exceeds rel_tol {} of |{total:e}|",
            cfg.rel_tol
        )));
    }
    Ok(Breakdown {
        total,
        te,
        tm,
        n0: None,
        estimated_error,
        terms: 0,
    })
}

/// Free energy per unit area (J/m²) at T > 0.
pub fn free_energy_area(sys: &PlateSystem, t: Temperature, cfg: &QuadratureConfig) -> Result<FreeEnergyResult> {
    matsubara_sum(Quantity::FreeEnergy, sys, t, cfg)
}

/// Casimir pressure (Pa) at T > 0; negative values attract.
pub fn pressure(sys: &PlateSystem, t: Temperature, cfg: &QuadratureConfig) -> Result<PressureBreakdown> {
    matsubara_sum(Quantity::Pressure, sys, t, cfg)
}

/// Pressure at T = 0 from the continuous imaginary-frequency integral.
pub fn pressure_zero_temperature(sys: &PlateSystem, cfg: &QuadratureConfig) -> Result<PressureBreakdown> {
    zero_temperature(Quantity::Pressure, sys, cfg)
}

/// Free energy per unit area at T = 0.
pub fn free_energy_zero_temperature(sys: &PlateSystem, cfg: &QuadratureConfig) -> Result<FreeEnergyResult> {
    zero_temperature(Quantity::FreeEnergy, sys, cfg)
}

/// Dispatches to the Matsubara sum for T > 0 and to the integral at T = 0.
pub fn pressure_at(sys: &PlateSystem, t: Temperature, cfg: &QuadratureConfig) -> Result<PressureBreakdown> {
    if t.is_zero() {
        pressure_zero_temperature(sys, cfg)
    } else {
        pressure(sys, t, cfg)
    }
}

/// See [`pressure_at`].
pub fn free_energy_at(sys: &PlateSystem, t: Temperature, cfg: &QuadratureConfig) -> Result<FreeEnergyResult> {
    if t.is_zero() {
        free_energy_zero_temperature(sys, cfg)
    } else {
        free_energy_area(sys, t, cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyResult {
    /// J/(K·m²)
    pub value: f64,
    pub estimated_error: f64,
    /// Richardson-refined estimate with the coarser step ΔT.
    pub coarse_value: f64,
    pub step: f64,
}

/// Entropy per unit area `S = −∂F/∂T` by central differences, refined once by
/// Richardson extrapolation. Two refinement levels (steps ΔT and ΔT/2) are
/// compared; their disagreement is the error estimate and must stay within
/// `5·rel_tol·|S|` plus the floating-point floor of the differenced free
/// energies.
pub fn entropy_area(sys: &PlateSystem, t: Temperature, cfg: &QuadratureConfig) -> Result<EntropyResult> {
    cfg.validate()?;
    if t.is_zero() {
        return Err(Error::Domain("entropy differencing needs T > 0".into()));
    }
    let t0 = t.kelvin();
    let h = cfg.temp_step_fraction * t0;
    let steps = [h, h / 2.0, h / 4.0];
    let temps: Vec<f64> = steps.iter().flat_map(|&s| [t0 + s, t0 - s]).collect();
    let values = temps
        .iter()
        .map(|&tk| free_energy_area(sys, Temperature::new(tk)?, cfg))
        .collect::<Result<Vec<_>>>()?;
    let central = |i: usize| (values[2 * i].total - values[2 * i + 1].total) / (2.0 * steps[i]);
    let (c0, c1, c2) = (central(0), central(1), central(2));
    let coarse = -(4.0 * c1 - c0) / 3.0;
    let fine = -(4.0 * c2 - c1) / 3.0;
    let fmax = values.iter().map(|v| v.total.abs()).fold(0.0, f64::max);
    let floor = 1e3 * f64::EPSILON * fmax / steps[2];
    let diff = (fine - coarse).abs();
    if diff > 5.0 * cfg.rel_tol * fine.abs() + floor {
        return Err(Error::NonConvergence(format!(
            "entropy refinement levels disagree: {coarse:e} vs {fine:e}"
        )));
    }
    Ok(EntropyResult {
        value: fine,
        estimated_error: diff + floor,
        coarse_value: coarse,
        step: h,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermalCorrection {
    pub value: f64,
    pub estimated_error: f64,
    pub pressure: f64,
    pub pressure_zero_temperature: f64,
}

/// `P(d, T) − P(d, 0)`.
pub fn thermal_correction(sys: &PlateSystem, t: Temperature, cfg: &QuadratureConfig) -> Result<ThermalCorrection> {
    let p0 = pressure_zero_temperature(sys, cfg)?;
    let p = pressure_at(sys, t, cfg)?;
    Ok(ThermalCorrection {
        value: p.total - p0.total,
        estimated_error: p.estimated_error + p0.estimated_error,
        pressure: p.total,
        pressure_zero_temperature: p0.total,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Nonretarded,
    Retarded,
    Thermal,
}

impl Regime {
    pub const ALL: [Regime; 3] = [Regime::Nonretarded, Regime::Retarded, Regime::Thermal];

    pub fn label(self) -> &'static str {
        match self {
            Regime::Nonretarded => "nonretarded",
            Regime::Retarded => "retarded",
            Regime::Thermal => "thermal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Asymptote {
    pub regime: Regime,
    /// J/m²
    pub free_energy: f64,
    /// Pa
    pub pressure: f64,
    /// True when only the scaling is known (no calibrated prefactor).
    pub scale_only: bool,
}

/// Static (ξ → 0, k → 0) value of `r_1 r_2` per polarization, which fixes
/// the large-distance thermal limit.
fn static_products(sys: &PlateSystem) -> [f64; 2] {
    let one = |m: &MaterialModel| match m {
        MaterialModel::Vacuum => [0.0, 0.0],
        MaterialModel::PerfectConductor | MaterialModel::Plasma { .. } => [-1.0, 1.0],
        MaterialModel::Drude { .. } => [0.0, 1.0],
    };
    let (a, b) = (one(&sys.material_1), one(&sys.material_2));
    [a[0] * b[0], a[1] * b[1]]
}

/// Closed-form limiting laws for the three distance regimes.
///
/// - non-retarded (d ≪ ƛ_p): scale `−ħω_p/d²` only, pressure `−2ħω_p/d³`;
/// - retarded (ƛ_p ≪ d ≪ ƛ_T): `F = −π²ħc/(720 d³)`, `P = −π²ħc/(240 d⁴)`;
/// - thermal (d ≫ ƛ_T): `F = −ζ(3) k_B T/(8π d²) · w`, `P = −ζ(3) k_B T/(4π d³) · w`
///   where `w` is 1 for mirrors and plasma plates and 1/2 for Drude plates
///   (their static TE reflection vanishes).
pub fn asymptote(regime: Regime, sys: &PlateSystem, t: Temperature) -> Result<Asymptote> {
    let d = sys.d();
    match regime {
        Regime::Nonretarded => {
            let (a, b) = match (sys.material_1.omega_p(), sys.material_2.omega_p()) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    return Err(Error::InvalidRegime(
                        "non-retarded regime needs a plasma frequency on both plates".into(),
                    ))
                }
            };
            let wp = (a * b).sqrt();
            Ok(Asymptote {
                regime,
                free_energy: -HBAR * wp / (d * d),
                pressure: -2.0 * HBAR * wp / (d * d * d),
                scale_only: true,
            })
        }
        Regime::Retarded => {
            let on = if sys.has_vacuum() { 0.0 } else { 1.0 };
            Ok(Asymptote {
                regime,
                free_energy: -on * PI * PI * HBAR * C / (720.0 * d.powi(3)),
                pressure: -on * PI * PI * HBAR * C / (240.0 * d.powi(4)),
                scale_only: false,
            })
        }
        Regime::Thermal => {
            if t.is_zero() {
                return Err(Error::InvalidRegime("thermal regime needs T > 0".into()));
            }
            // Li3(ρ) for ρ ∈ {0, 1}
            let rho = static_products(sys);
            let li3: f64 = rho.iter().map(|&r| if r == 1.0 { ZETA3 } else { 0.0 }).sum();
            let kt = K_B * t.kelvin();
            Ok(Asymptote {
                regime,
                free_energy: -kt * li3 / (16.0 * PI * d * d),
                pressure: -kt * li3 / (8.0 * PI * d.powi(3)),
                scale_only: false,
            })
        }
    }
}

/// Drude plates against their lossless plasma counterparts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelComparison {
    pub pressure_drude: Breakdown,
    pub pressure_plasma: Breakdown,
    pub free_energy_drude: Breakdown,
    pub free_energy_plasma: Breakdown,
    /// `P_drude − P_plasma`
    pub difference: f64,
    /// TE part of the plasma system's n = 0 pressure term (None at T = 0).
    pub plasma_n0_te: Option<f64>,
}

pub fn compare_models(gap: Length, t: Temperature, drude: &MaterialModel, cfg: &QuadratureConfig) -> Result<ModelComparison> {
    if !matches!(drude, MaterialModel::Drude { .. }) {
        return Err(Error::UnsupportedModel(format!(
            "model comparison needs a Drude model, got {}",
            drude.kind()
        )));
    }
    let plasma = drude.plasma_counterpart()?;
    let sd = PlateSystem::symmetric(*drude, gap);
    let sp = PlateSystem::symmetric(plasma, gap);
    let pd = pressure_at(&sd, t, cfg)?;
    let pp = pressure_at(&sp, t, cfg)?;
    let fd = free_energy_at(&sd, t, cfg)?;
    let fp = free_energy_at(&sp, t, cfg)?;
    Ok(ModelComparison {
        difference: pd.total - pp.total,
        plasma_n0_te: pp.n0.map(|n| n.te),
        pressure_drude: pd,
        pressure_plasma: pp,
        free_energy_drude: fd,
        free_energy_plasma: fp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scales::thermal_wavelength;

    fn len(m: f64) -> Length {
        Length::new(m).unwrap()
    }
    fn temp(k: f64) -> Temperature {
        Temperature::new(k).unwrap()
    }
    fn ideal(d: f64) -> PlateSystem {
        PlateSystem::symmetric(MaterialModel::PerfectConductor, len(d))
    }

    #[test]
    fn matsubara_frequencies() {
        assert_eq!(matsubara_xi(temp(300.0), 0), 0.0);
        let x1 = matsubara_xi(temp(300.0), 1);
        assert!((x1 / 2.4678e14 - 1.0).abs() < 1e-4);
        assert!((matsubara_xi(temp(300.0), 7) / (7.0 * x1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn config_validation() {
        let mut cfg = QuadratureConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.k_nodes = 8;
        assert!(cfg.validate().is_err());
        let cfg = QuadratureConfig {
            rel_tol: 0.1,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn vacuum_plates_give_zero() {
        let cfg = QuadratureConfig::default();
        let s = PlateSystem::new(MaterialModel::Vacuum, MaterialModel::PerfectConductor, len(1e-6));
        assert_eq!(pressure(&s, temp(300.0), &cfg).unwrap().total, 0.0);
        assert_eq!(free_energy_area(&s, temp(300.0), &cfg).unwrap().total, 0.0);
        assert_eq!(pressure_zero_temperature(&s, &cfg).unwrap().total, 0.0);
    }

    #[test]
    fn n0_term_has_half_weight() {
        // For ideal mirrors the n = 0 term alone is −ζ(3) k_B T/(4π d³)·(1/2)
        // per polarization; the full-weight integral would be twice that.
        let d = 1e-6;
        let cfg = QuadratureConfig::default();
        let p = pressure(&ideal(d), temp(300.0), &cfg).unwrap();
        let n0 = p.n0.unwrap();
        let full = -ZETA3 * K_B * 300.0 / (4.0 * PI * d.powi(3));
        assert!((n0.te / (0.5 * full) - 1.0).abs() < 1e-10, "{}", n0.te / full);
        assert!((n0.tm / (0.5 * full) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn ideal_zero_temperature_closed_forms() {
        let cfg = QuadratureConfig::default();
        for d in [1e-7, 1e-6, 1e-5] {
            let p = pressure_zero_temperature(&ideal(d), &cfg).unwrap();
            let exact = -PI * PI * HBAR * C / (240.0 * d.powi(4));
            assert!((p.total / exact - 1.0).abs() < 1e-8, "{}", p.total / exact);
            let f = free_energy_zero_temperature(&ideal(d), &cfg).unwrap();
            let exact = -PI * PI * HBAR * C / (720.0 * d.powi(3));
            assert!((f.total / exact - 1.0).abs() < 1e-8, "{}", f.total / exact);
        }
    }

    #[test]
    fn ideal_large_distance_limit() {
        let cfg = QuadratureConfig::default();
        let t = temp(300.0);
        let d = 5.0 * thermal_wavelength(t).unwrap().metres();
        let f = free_energy_area(&ideal(d), t, &cfg).unwrap();
        let a = asymptote(Regime::Thermal, &ideal(d), t).unwrap();
        assert!((f.total / a.free_energy - 1.0).abs() < 0.01);
        let p = pressure(&ideal(d), t, &cfg).unwrap();
        assert!((p.total / a.pressure - 1.0).abs() < 0.01);
    }

    #[test]
    fn asymptote_examples() {
        let t = temp(300.0);
        let a = asymptote(Regime::Retarded, &ideal(1e-6), t).unwrap();
        assert!((a.pressure / -1.3e-3 - 1.0).abs() < 0.005);
        let g = PlateSystem::symmetric(MaterialModel::gold(), len(3e-5));
        let ai = asymptote(Regime::Thermal, &ideal(3e-5), t).unwrap();
        let ag = asymptote(Regime::Thermal, &g, t).unwrap();
        assert_eq!(ag.free_energy / ai.free_energy, 0.5);
        assert_eq!(ag.pressure / ai.pressure, 0.5);
        let n1 = asymptote(Regime::Nonretarded, &g, t).unwrap();
        let n2 = asymptote(Regime::Nonretarded, &g.with_gap(len(6e-5)), t).unwrap();
        assert!((n1.free_energy / n2.free_energy - 4.0).abs() < 1e-12);
        assert!(matches!(
            asymptote(Regime::Nonretarded, &ideal(1e-6), t),
            Err(Error::InvalidRegime(_))
        ));
        assert!(asymptote(Regime::Thermal, &ideal(1e-6), temp(0.0)).is_err());
    }

    #[test]
    fn drude_n0_te_vanishes_and_plasma_binds() {
        let cfg = QuadratureConfig::default();
        let t = temp(300.0);
        let d = len(1e-6);
        let pd = pressure(&PlateSystem::symmetric(MaterialModel::gold(), d), t, &cfg).unwrap();
        assert_eq!(pd.n0.unwrap().te, 0.0);
        let pp = pressure(&PlateSystem::symmetric(MaterialModel::gold_plasma(), d), t, &cfg).unwrap();
        assert!(pp.n0.unwrap().te < 0.0);
        let f = free_energy_area(&PlateSystem::symmetric(MaterialModel::gold(), d), t, &cfg).unwrap();
        assert_eq!(f.n0.unwrap().te, 0.0);
    }

    #[test]
    fn fixed_matsubara_limit_sums_exactly() {
        let t = temp(300.0);
        let sys = ideal(1e-6);
        let cfg = QuadratureConfig {
            matsubara_max: MatsubaraLimit::Fixed(0),
            rel_tol: 1e-2,
            ..Default::default()
        };
        let p0 = pressure(&sys, t, &cfg);
        // a single term misses most of the sum; the tail estimate flags it
        assert!(matches!(p0, Err(Error::NonConvergence(_))) || p0.unwrap().terms == 1);
        let cfg = QuadratureConfig {
            matsubara_max: MatsubaraLimit::Fixed(400),
            ..Default::default()
        };
        let p = pressure(&sys, t, &cfg).unwrap();
        let auto = pressure(&sys, t, &QuadratureConfig::default()).unwrap();
        assert_eq!(p.terms, 401);
        assert!((p.total / auto.total - 1.0).abs() < 1e-6);
    }
}
