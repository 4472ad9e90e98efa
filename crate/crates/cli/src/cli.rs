//! Argument definitions and subcommand execution.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use casimir_core::lifshitz::{self, Breakdown, MatsubaraLimit, PlateSystem, QuadratureConfig, Regime};
use casimir_core::materials::{
    dc_conductivity, magnetic_diffusivity, plasma_wavelength, MaterialModel, MaterialSpec,
};
use casimir_core::relaxation::relaxation_report;
use casimir_core::scales::{thermal_frequency, thermal_wavelength, CONSTANTS_VERSION, EPS0};
use casimir_core::spectral::{self, default_grids, spectral_map};
use casimir_core::{Error, Length, Temperature, ENGINE_VERSION};

use crate::output::{Cell, Document, Format};
use crate::units::{self, ParseError};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(ParseError),
    Engine(Error),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse(_) => "parse",
            CliError::Io(_) => "io",
            CliError::Engine(e) => match e {
                Error::Domain(_) => "domain",
                Error::UnsupportedModel(_) => "unsupported_model",
                Error::DivisionByZero(_) => "division_by_zero",
                Error::Pole(_) => "pole",
                Error::NoRoot(_) => "no_root",
                Error::InvalidRegime(_) => "invalid_regime",
                Error::InvalidConfig(_) => "invalid_config",
                Error::Material(_) => "material",
                Error::NonConvergence(_) => "non_convergence",
            },
        }
    }

    /// 3 for numerical failures, 2 for everything the caller can fix.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
            CliError::Parse(e) => e.to_string(),
            CliError::Engine(e) => e.to_string(),
        }
    }

    /// Single-line JSON for standard error.
    pub fn to_json_line(&self) -> String {
        json!({"code": self.code(), "message": self.message()}).to_string()
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "casimir", version, about = "Casimir pressures, free energies and entropies between metal plates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QuadArgs {
    /// Gauss-Legendre nodes per k-panel.
    #[arg(long, default_value_t = 32)]
    pub k_nodes: usize,
    /// `auto` or the highest Matsubara index to sum.
    #[arg(long, default_value = "auto")]
    pub matsubara_max: String,
    #[arg(long, default_value_t = 1e-6)]
    pub rel_tol: f64,
    /// Entropy temperature step as a fraction of T.
    #[arg(long, default_value_t = 1e-2)]
    pub temp_step: f64,
}

impl QuadArgs {
    fn config(&self) -> CliResult<QuadratureConfig> {
        let matsubara_max = match self.matsubara_max.as_str() {
            "auto" => MatsubaraLimit::Auto,
            n => MatsubaraLimit::Fixed(n.parse().map_err(|_| {
                CliError::Parse(ParseError {
                    token: n.to_string(),
                    reason: "expected 'auto' or a non-negative integer".into(),
                })
            })?),
        };
        let cfg = QuadratureConfig {
            k_nodes: self.k_nodes,
            matsubara_max,
            rel_tol: self.rel_tol,
            temp_step_fraction: self.temp_step,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Plate 1: ideal, vacuum, gold, gold-plasma, plasma:<E>, drude:<E>:<tau>, or a JSON file.
    #[arg(long)]
    pub m1: String,
    /// Plate 2, same syntax as --m1.
    #[arg(long)]
    pub m2: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Matsubara,
    RealAxis,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Thermal frequency and wavelength.
    Scales {
        /// Temperature(s): `300K`, `4K,300K` or `1K:300K:10`.
        #[arg(long)]
        temp: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Derived scales of one material.
    Material {
        #[arg(long)]
        material: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Casimir pressure.
    Pressure {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        gap: String,
        #[arg(long)]
        temp: String,
        #[arg(long, value_enum, default_value = "matsubara")]
        engine: Engine,
        #[command(flatten)]
        quad: QuadArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Free energy per unit area.
    FreeEnergy {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        gap: String,
        #[arg(long)]
        temp: String,
        #[command(flatten)]
        quad: QuadArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Entropy per unit area.
    Entropy {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        gap: String,
        #[arg(long)]
        temp: String,
        #[command(flatten)]
        quad: QuadArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Pressure over a grid of gaps and temperatures.
    Sweep {
        #[command(flatten)]
        pair: PairArgs,
        /// Gaps: `1um,2um` or log-spaced `0.5um:40um:60`.
        #[arg(long)]
        gaps: String,
        /// Temperatures, same syntax as --gaps.
        #[arg(long)]
        temps: String,
        /// Add the T = 0 pressure and the thermal correction P(T) - P(0).
        #[arg(long)]
        with_correction: bool,
        #[command(flatten)]
        quad: QuadArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Real-frequency pressure integrand on an ω grid.
    Spectrum {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        gap: String,
        #[arg(long)]
        temp: String,
        /// Frequencies (`THz`, `Hz`, `rad/s`): list or `start:stop:n`.
        #[arg(long)]
        omegas: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evanescent mode-density map over (ω, κ).
    Map {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        gap: String,
        #[arg(long, default_value_t = 200)]
        omega_points: usize,
        #[arg(long, default_value_t = 200)]
        kappa_points: usize,
        /// Explicit ω grid; overrides --omega-points.
        #[arg(long)]
        omegas: Option<String>,
        /// Explicit κ grid given as κ·d values, e.g. `0.01:100:200`.
        #[arg(long)]
        kappa_d: Option<String>,
        /// JSON sidecar with grids, overlays and material parameters.
        #[arg(long)]
        sidecar: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Drude against its plasma counterpart.
    Compare {
        #[arg(long)]
        material: String,
        #[arg(long)]
        gap: String,
        #[arg(long)]
        temp: String,
        /// Multiply the relaxation time by this factor first.
        #[arg(long, default_value_t = 1.0)]
        tau_scale: f64,
        #[command(flatten)]
        quad: QuadArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Relaxation rates and frequency scales of a Drude metal.
    Diagnose {
        #[arg(long)]
        material: String,
        #[arg(long)]
        temp: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Limiting laws for the three distance regimes.
    Asymptotes {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        gap: String,
        #[arg(long)]
        temp: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Resolves a material argument: built-in alias, inline model or JSON file.
pub fn resolve_material(text: &str) -> CliResult<(String, MaterialModel)> {
    let alias = match text {
        "ideal" | "perfect" => Some(MaterialModel::PerfectConductor),
        "vacuum" => Some(MaterialModel::Vacuum),
        "gold" => Some(MaterialModel::gold()),
        "gold-plasma" => Some(MaterialModel::gold_plasma()),
        _ => None,
    };
    if let Some(m) = alias {
        return Ok((text.to_string(), m));
    }
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        ["plasma", wp] => return Ok((text.to_string(), MaterialModel::plasma(units::plasma_frequency(wp)?)?)),
        ["drude", wp, tau] => {
            return Ok((
                text.to_string(),
                MaterialModel::drude(units::plasma_frequency(wp)?, units::time(tau)?)?,
            ))
        }
        _ => {}
    }
    let body = std::fs::read_to_string(text)
        .map_err(|e| CliError::Usage(format!("unknown material '{text}' (not an alias, inline model or readable file: {e})")))?;
    let named = MaterialSpec::from_json(&body)?;
    Ok((named.name, named.model))
}

fn describe(model: &MaterialModel) -> String {
    match *model {
        MaterialModel::Vacuum => "vacuum".into(),
        MaterialModel::PerfectConductor => "perfect".into(),
        MaterialModel::Plasma { omega_p } => format!("plasma(omega_p_rad_s={omega_p:e})"),
        MaterialModel::Drude { omega_p, tau } => format!("drude(omega_p_rad_s={omega_p:e};tau_s={tau:e})"),
    }
}

fn single<F>(text: &str, what: &str, parse: F) -> CliResult<f64>
where
    F: Fn(&str) -> std::result::Result<f64, ParseError>,
{
    let v = units::list(text, parse)?;
    if v.len() != 1 {
        return Err(CliError::Usage(format!("--{what} takes a single value, got {}", v.len())));
    }
    Ok(v[0])
}

fn gap(text: &str) -> CliResult<Length> {
    Ok(Length::new(single(text, "gap", units::length)?)?)
}

fn temp(text: &str) -> CliResult<Temperature> {
    Ok(Temperature::new(single(text, "temp", units::temperature)?)?)
}

struct Setup {
    sys: PlateSystem,
    doc_meta: Vec<(String, String)>,
}

fn pair_setup(pair: &PairArgs, gap_m: Length) -> CliResult<Setup> {
    let (n1, m1) = resolve_material(&pair.m1)?;
    let (n2, m2) = resolve_material(&pair.m2)?;
    Ok(Setup {
        sys: PlateSystem::new(m1, m2, gap_m),
        doc_meta: vec![
            ("m1".into(), format!("{n1}:{}", describe(&m1))),
            ("m2".into(), format!("{n2}:{}", describe(&m2))),
        ],
    })
}

fn base_doc(command: &str, columns: &[&str]) -> Document {
    let mut d = Document::new(columns);
    d.meta("command", command);
    d.meta("constants", CONSTANTS_VERSION);
    d.meta("engine_version", ENGINE_VERSION);
    d
}

fn quad_meta(d: &mut Document, cfg: &QuadratureConfig) {
    d.meta("k_nodes", cfg.k_nodes);
    d.meta(
        "matsubara_max",
        match cfg.matsubara_max {
            MatsubaraLimit::Auto => "auto".to_string(),
            MatsubaraLimit::Fixed(n) => n.to_string(),
        },
    );
    d.meta("rel_tol", format!("{:e}", cfg.rel_tol));
    d.meta("temp_step_fraction", format!("{:e}", cfg.temp_step_fraction));
}

const PRESSURE_COLUMNS: [&str; 7] = ["d_m", "T_K", "P_total_Pa", "P_TE_Pa", "P_TM_Pa", "P_n0_Pa", "err_Pa"];

fn pressure_row(d: f64, t: f64, p: &Breakdown) -> Vec<Cell> {
    vec![
        d.into(),
        t.into(),
        p.total.into(),
        p.te.into(),
        p.tm.into(),
        p.n0_total().into(),
        p.estimated_error.into(),
    ]
}

/// Executes one command and returns the rendered document.
pub fn execute(command: &Command) -> CliResult<(String, Option<PathBuf>)> {
    let (doc, output) = build(command)?;
    Ok((doc.render(output.format), output.out.clone()))
}

fn build(command: &Command) -> CliResult<(Document, &OutputArgs)> {
    match command {
        Command::Scales { temp: temps, output } => {
            let temps = units::list(temps, units::temperature)?;
            let mut d = base_doc("scales", &["T_K", "omega_T_rad_s", "omega_T_over_2pi_Hz", "lambda_T_m"]);
            for tk in temps {
                let t = Temperature::new(tk)?;
                let w = thermal_frequency(t);
                let lam = if t.is_zero() { None } else { Some(thermal_wavelength(t)?.metres()) };
                d.push(vec![tk.into(), w.rad_per_s().into(), w.hertz().into(), lam.into()]);
            }
            Ok((d, output))
        }
        Command::Material { material, output } => {
            let (name, m) = resolve_material(material)?;
            let mut d = base_doc(
                "material",
                &[
                    "omega_p_rad_s",
                    "tau_s",
                    "sigma_dc_S_per_m",
                    "lambdabar_p_m",
                    "D_m2_per_s",
                    "eps0_over_sigma_s",
                    "inv_2pi_tau_Hz",
                ],
            );
            d.meta("material", format!("{name}:{}", describe(&m)));
            let sigma = dc_conductivity(&m).ok();
            d.push(vec![
                m.omega_p().into(),
                m.tau().into(),
                sigma.into(),
                plasma_wavelength(&m).ok().map(|l| l.metres()).into(),
                magnetic_diffusivity(&m).ok().into(),
                sigma.map(|s| EPS0 / s).into(),
                m.tau().map(|tau| 1.0 / (2.0 * PI * tau)).into(),
            ]);
            Ok((d, output))
        }
        Command::Pressure {
            pair,
            gap: g,
            temp: t,
            engine,
            quad,
            output,
        } => {
            let cfg = quad.config()?;
            let (g, t) = (gap(g)?, temp(t)?);
            let s = pair_setup(pair, g)?;
            let p = match engine {
                Engine::Matsubara => lifshitz::pressure_at(&s.sys, t, &cfg)?,
                Engine::RealAxis => spectral::pressure_real_axis(&s.sys, t, &cfg)?,
            };
            let mut d = base_doc("pressure", &PRESSURE_COLUMNS);
            d.meta.extend(s.doc_meta);
            d.meta("engine", if *engine == Engine::Matsubara { "matsubara" } else { "real-axis" });
            quad_meta(&mut d, &cfg);
            d.push(pressure_row(g.metres(), t.kelvin(), &p));
            Ok((d, output))
        }
        Command::FreeEnergy {
            pair,
            gap: g,
            temp: t,
            quad,
            output,
        } => {
            let cfg = quad.config()?;
            let (g, t) = (gap(g)?, temp(t)?);
            let s = pair_setup(pair, g)?;
            let f = lifshitz::free_energy_at(&s.sys, t, &cfg)?;
            let mut d = base_doc(
                "free-energy",
                &[
                    "d_m",
                    "T_K",
                    "F_total_J_per_m2",
                    "F_TE_J_per_m2",
                    "F_TM_J_per_m2",
                    "F_n0_J_per_m2",
                    "err_J_per_m2",
                ],
            );
            d.meta.extend(s.doc_meta);
            quad_meta(&mut d, &cfg);
            d.push(pressure_row(g.metres(), t.kelvin(), &f));
            Ok((d, output))
        }
        Command::Entropy {
            pair,
            gap: g,
            temp: t,
            quad,
            output,
        } => {
            let cfg = quad.config()?;
            let (g, t) = (gap(g)?, temp(t)?);
            let s = pair_setup(pair, g)?;
            let e = lifshitz::entropy_area(&s.sys, t, &cfg)?;
            let mut d = base_doc("entropy", &["d_m", "T_K", "S_J_per_K_m2", "err_J_per_K_m2", "step_K"]);
            d.meta.extend(s.doc_meta);
            quad_meta(&mut d, &cfg);
            d.push(vec![
                g.metres().into(),
                t.kelvin().into(),
                e.value.into(),
                e.estimated_error.into(),
                e.step.into(),
            ]);
            Ok((d, output))
        }
        Command::Sweep {
            pair,
            gaps,
            temps,
            with_correction,
            quad,
            output,
        } => {
            let cfg = quad.config()?;
            let gaps = units::list(gaps, units::length)?;
            let temps = units::list(temps, units::temperature)?;
            let mut cols: Vec<&str> = PRESSURE_COLUMNS.to_vec();
            if *with_correction {
                cols.extend(["P_T0_Pa", "dP_thermal_Pa"]);
            }
            let mut d = base_doc("sweep", &cols);
            let first = pair_setup(pair, Length::new(gaps[0])?)?;
            d.meta.extend(first.doc_meta);
            d.meta("gaps_m", gaps.iter().map(|g| format!("{g:e}")).collect::<Vec<_>>().join(";"));
            d.meta("temps_K", temps.iter().map(|t| format!("{t:e}")).collect::<Vec<_>>().join(";"));
            quad_meta(&mut d, &cfg);
            for &gm in &gaps {
                let sys = first.sys.with_gap(Length::new(gm)?);
                let p0 = if *with_correction {
                    Some(lifshitz::pressure_zero_temperature(&sys, &cfg)?)
                } else {
                    None
                };
                for &tk in &temps {
                    let p = lifshitz::pressure_at(&sys, Temperature::new(tk)?, &cfg)?;
                    let mut row = pressure_row(gm, tk, &p);
                    if let Some(p0) = &p0 {
                        row.push(p0.total.into());
                        row.push((p.total - p0.total).into());
                    }
                    d.push(row);
                }
            }
            Ok((d, output))
        }
        Command::Spectrum {
            pair,
            gap: g,
            temp: t,
            omegas,
            output,
        } => {
            let (g, t) = (gap(g)?, temp(t)?);
            let s = pair_setup(pair, g)?;
            let omegas = units::list(omegas, units::angular_frequency)?;
            let mut d = base_doc(
                "spectrum",
                &[
                    "omega_rad_s",
                    "zp_TE_prop_Pa_s",
                    "zp_TE_evan_Pa_s",
                    "zp_TM_prop_Pa_s",
                    "zp_TM_evan_Pa_s",
                    "th_TE_prop_Pa_s",
                    "th_TE_evan_Pa_s",
                    "th_TM_prop_Pa_s",
                    "th_TM_evan_Pa_s",
                    "total_Pa_s",
                    "err_Pa_s",
                    "converged",
                ],
            );
            d.meta.extend(s.doc_meta);
            d.meta("d_m", format!("{:e}", g.metres()));
            d.meta("T_K", format!("{:e}", t.kelvin()));
            for w in omegas {
                let r = spectral::pressure_spectrum(&s.sys, t, w)?;
                let (z, th) = (r.zero_point, r.thermal);
                d.push(vec![
                    w.into(),
                    z.te.propagating.into(),
                    z.te.evanescent.into(),
                    z.tm.propagating.into(),
                    z.tm.evanescent.into(),
                    th.te.propagating.into(),
                    th.te.evanescent.into(),
                    th.tm.propagating.into(),
                    th.tm.evanescent.into(),
                    r.total.into(),
                    r.estimated_error.into(),
                    Cell::Text((r.propagating_converged && r.evanescent_converged).to_string()),
                ]);
            }
            Ok((d, output))
        }
        Command::Map {
            pair,
            gap: g,
            omega_points,
            kappa_points,
            omegas,
            kappa_d,
            sidecar,
            output,
        } => {
            let g = gap(g)?;
            let s = pair_setup(pair, g)?;
            let (mut wg, mut kg) = default_grids(&s.sys, *omega_points, *kappa_points)?;
            if let Some(text) = omegas {
                wg = units::list(text, units::angular_frequency)?;
            }
            if let Some(text) = kappa_d {
                let kd = units::list(text, |v| {
                    v.parse::<f64>().map_err(|_| ParseError {
                        token: v.to_string(),
                        reason: "kappa*d is dimensionless; expected a plain number".into(),
                    })
                })?;
                kg = kd.iter().map(|x| x / g.metres()).collect();
            }
            let map = spectral_map(&s.sys, &wg, &kg)?;
            let mut d = base_doc("map", &["omega_rad_s", "kappa_per_m", "pol", "value_si"]);
            d.meta.extend(s.doc_meta.clone());
            d.meta("d_m", format!("{:e}", g.metres()));
            d.meta("value_unit", "J*s/m^2");
            d.meta("cutoff_kappa_per_m", format!("{:e}", map.overlays.cutoff_kappa));
            if let Some(dm) = map.overlays.diffusivity {
                d.meta("diffusivity_m2_per_s", format!("{dm:e}"));
            }
            d.meta("cell_errors", map.errors.len());
            for (i, &w) in map.omega_grid.iter().enumerate() {
                for (j, &k) in map.kappa_grid.iter().enumerate() {
                    for (pol, m) in [("TE", &map.te), ("TM", &map.tm), ("sum", &map.total)] {
                        d.push(vec![w.into(), k.into(), pol.into(), m[i][j].into()]);
                    }
                }
            }
            if let Some(path) = sidecar {
                let side = json!({
                    "engine_version": ENGINE_VERSION,
                    "constants": CONSTANTS_VERSION,
                    "materials": [s.sys.material_1, s.sys.material_2],
                    "gap_m": g.metres(),
                    "omega_grid_rad_s": map.omega_grid,
                    "kappa_grid_per_m": map.kappa_grid,
                    "overlays": map.overlays,
                    "errors": map.errors,
                });
                let text = serde_json::to_string_pretty(&side).expect("serializable") + "\n";
                std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            Ok((d, output))
        }
        Command::Compare {
            material,
            gap: g,
            temp: t,
            tau_scale,
            quad,
            output,
        } => {
            let cfg = quad.config()?;
            let (g, t) = (gap(g)?, temp(t)?);
            let (name, m) = resolve_material(material)?;
            let m = if *tau_scale == 1.0 { m } else { m.with_tau_scaled(*tau_scale)? };
            let c = lifshitz::compare_models(g, t, &m, &cfg)?;
            let mut d = base_doc(
                "compare",
                &[
                    "d_m",
                    "T_K",
                    "P_drude_Pa",
                    "P_plasma_Pa",
                    "dP_Pa",
                    "P_plasma_n0_TE_Pa",
                    "F_drude_J_per_m2",
                    "F_plasma_J_per_m2",
                    "err_Pa",
                ],
            );
            d.meta("material", format!("{name}:{}", describe(&m)));
            d.meta("tau_scale", format!("{tau_scale:e}"));
            quad_meta(&mut d, &cfg);
            d.push(vec![
                g.metres().into(),
                t.kelvin().into(),
                c.pressure_drude.total.into(),
                c.pressure_plasma.total.into(),
                c.difference.into(),
                c.plasma_n0_te.into(),
                c.free_energy_drude.total.into(),
                c.free_energy_plasma.total.into(),
                (c.pressure_drude.estimated_error + c.pressure_plasma.estimated_error).into(),
            ]);
            Ok((d, output))
        }
        Command::Diagnose {
            material,
            temp: t,
            output,
        } => {
            let t = temp(t)?;
            let (name, m) = resolve_material(material)?;
            let r = relaxation_report(&m, t)?;
            let mut d = base_doc(
                "diagnose",
                &[
                    "T_K",
                    "naive_rate_per_s",
                    "root1_re_per_s",
                    "root1_im_per_s",
                    "root2_re_per_s",
                    "root2_im_per_s",
                    "decay_rate_per_s",
                    "oscillation_rad_s",
                    "diffusivity_m2_per_s",
                    "inv_2pi_tau_Hz",
                    "omega_T_over_2pi_Hz",
                ],
            );
            d.meta("material", format!("{name}:{}", describe(&m)));
            d.meta("root_convention", "s with time dependence exp(s*t); eigenfrequency omega = i*s");
            let [a, b] = r.telegraphist_roots;
            d.push(vec![
                t.kelvin().into(),
                r.naive_rate.into(),
                a.re.into(),
                a.im.into(),
                b.re.into(),
                b.im.into(),
                r.decay_rate.into(),
                r.oscillation.into(),
                r.diffusivity.into(),
                r.comparison.inv_2pi_tau.into(),
                r.comparison.omega_t_over_2pi.into(),
            ]);
            Ok((d, output))
        }
        Command::Asymptotes {
            pair,
            gap: g,
            temp: t,
            output,
        } => {
            let (g, t) = (gap(g)?, temp(t)?);
            let s = pair_setup(pair, g)?;
            let mut d = base_doc("asymptotes", &["regime", "F_J_per_m2", "P_Pa", "scale_only", "note"]);
            d.meta.extend(s.doc_meta);
            d.meta("d_m", format!("{:e}", g.metres()));
            d.meta("T_K", format!("{:e}", t.kelvin()));
            for regime in Regime::ALL {
                match lifshitz::asymptote(regime, &s.sys, t) {
                    Ok(a) => d.push(vec![
                        regime.label().into(),
                        a.free_energy.into(),
                        a.pressure.into(),
                        Cell::Text(a.scale_only.to_string()),
                        Cell::Empty,
                    ]),
                    Err(e @ (Error::InvalidRegime(_) | Error::UnsupportedModel(_))) => d.push(vec![
                        regime.label().into(),
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Text(e.to_string().replace(',', ";")),
                    ]),
                    Err(e) => return Err(e.into()),
                }
            }
            Ok((d, output))
        }
    }
}

/// Parses `args`, runs the command and writes the document. Returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let text: Vec<&str> = msg
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:"))
                .filter(|l| !l.is_empty())
                .collect();
            let err = CliError::Usage(text.join(" ").trim_start_matches("error: ").to_string());
            let _ = writeln!(stderr, "{}", err.to_json_line());
            return err.exit_code();
        }
    };
    let result = execute(&cli.command).and_then(|(text, out)| match out {
        Some(path) => std::fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.to_json_line());
            e.exit_code()
        }
    }
}
