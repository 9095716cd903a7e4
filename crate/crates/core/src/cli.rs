//! Command-line front end.
//!
//! ```text
//! qlaser <simulate|sweep|budget|compare> [--config <path>] [--out <path>]
//!        [--format csv|text] [--key value ...]
//! ```
//!
//! The config file is flat `key = value` text with `#` comments; `--key
//! value` pairs after the known options override it. Every SI quantity is
//! given in base units (m, s, W, C·m, V/m, rad/s) without suffixes.
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 numerical failure.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;

use crate::budget::{
    self, area_sweep, constraint_chain, energy_density_bound, kappa_from_beam, min_photon_constraint,
    raman_constraint, AtomModel, BeamGeometry, FieldSpec, PhotonBudget, RamanSpec,
    PI_PULSE_PHOTON_COEFFICIENT,
};
use crate::error::Error;
use crate::gates::{self, extract_coefficient, failure_probability, ratio_for_photons, GateExperiment};
use crate::jc::jc_gate_error;
use crate::lindblad::{evolve, DecayChannel, DecaySpec, IntegratorConfig, Method, PulseSpec};
use crate::qcore::{DensityMatrix, PureState, EXCITED, GROUND};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Integrate one pulse and write the trajectory.
    Simulate,
    /// Sweep κ/gα and fit the first-order error coefficient.
    Sweep,
    /// Photon and energy budget for an atom in a laser beam.
    Budget,
    /// Master-equation versus single-mode error on an n̄ grid.
    Compare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "qlaser", version, about = "Gate errors from the quantum nature of laser fields")]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Flat key = value config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// `--key value` overrides.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true, num_args = 0..)]
    overrides: Vec<String>,
}

/// Failure of a CLI run, carrying its exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Config(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "invalid configuration: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_config_text(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| config_err(format!("line {}: expected `key = value`", lineno + 1)))?;
        let key = k.trim();
        if key.is_empty() {
            return Err(config_err(format!("line {}: empty key", lineno + 1)));
        }
        map.insert(key.to_string(), v.trim().to_string());
    }
    Ok(map)
}

/// Parses `--key value` and `--key=value` overrides.
pub fn parse_overrides(args: &[String]) -> CliResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let key = arg
            .strip_prefix("--")
            .ok_or_else(|| config_err(format!("unexpected argument `{arg}`")))?;
        if let Some((k, v)) = key.split_once('=') {
            out.push((k.to_string(), v.to_string()));
        } else {
            let v = it
                .next()
                .ok_or_else(|| config_err(format!("missing value for `--{key}`")))?;
            out.push((key.to_string(), v.clone()));
        }
    }
    Ok(out)
}

/// Validated command plus its key-value parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub parameters: BTreeMap<String, String>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            parameters: BTreeMap::new(),
            output_path: None,
            format: Format::default(),
        }
    }

    pub fn set(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }
}

/// Typed, use-tracked view of the parameter map.
struct Params<'a> {
    map: &'a BTreeMap<String, String>,
    used: BTreeSet<&'static str>,
}

impl<'a> Params<'a> {
    fn new(map: &'a BTreeMap<String, String>) -> Self {
        Self {
            map,
            used: BTreeSet::new(),
        }
    }

    fn raw(&mut self, key: &'static str) -> Option<&'a str> {
        self.used.insert(key);
        self.map.get(key).map(String::as_str)
    }

    fn f64_opt(&mut self, key: &'static str) -> CliResult<Option<f64>> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<f64>()
                .map(Some)
                .map_err(|_| config_err(format!("`{key}`: `{v}` is not a number"))),
        }
    }

    fn f64_or(&mut self, key: &'static str, default: f64) -> CliResult<f64> {
        Ok(self.f64_opt(key)?.unwrap_or(default))
    }

    fn usize_or(&mut self, key: &'static str, default: usize) -> CliResult<usize> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| config_err(format!("`{key}`: `{v}` is not a non-negative integer"))),
        }
    }

    fn list_opt(&mut self, key: &'static str) -> CliResult<Option<Vec<f64>>> {
        let Some(v) = self.raw(key) else {
            return Ok(None);
        };
        v.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| config_err(format!("`{key}`: `{s}` is not a number")))
            })
            .collect::<CliResult<Vec<_>>>()
            .map(Some)
    }

    fn choice_or(&mut self, key: &'static str, allowed: &[&str], default: &'static str) -> CliResult<&'a str> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) if allowed.contains(&v) => Ok(v),
            Some(v) => Err(config_err(format!(
                "`{key}`: `{v}` is not one of {}",
                allowed.join(", ")
            ))),
        }
    }

    /// Rejects keys the command never read.
    fn finish(self) -> CliResult<()> {
        let unknown: Vec<&str> = self
            .map
            .keys()
            .map(String::as_str)
            .filter(|k| !self.used.contains(k))
            .collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(config_err(format!("unknown keys: {}", unknown.join(", "))))
        }
    }
}

/// Fixed float format: 12 significant digits, scientific.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.11e}")
}

fn start_state(p: &mut Params) -> CliResult<(PureState, &'static str)> {
    Ok(match p.choice_or("start", &["ground", "excited", "plus"], "ground")? {
        "excited" => (PureState::excited(), "excited"),
        "plus" => (PureState::plus(), "plus"),
        _ => (PureState::ground(), "ground"),
    })
}

fn pulse_area(p: &mut Params) -> CliResult<f64> {
    match (p.f64_opt("pulse_area")?, p.f64_opt("pulse_area_pi")?) {
        (Some(_), Some(_)) => Err(config_err("give only one of `pulse_area` and `pulse_area_pi`")),
        (Some(a), None) => Ok(a),
        (None, Some(m)) => Ok(m * PI),
        (None, None) => Ok(PI),
    }
}

fn gate_label(area: f64) -> String {
    if (area - PI).abs() < 1e-12 {
        "pi".into()
    } else if (area - PI / 2.0).abs() < 1e-12 {
        "pi/2".into()
    } else {
        format!("theta={}", fmt_num(area))
    }
}

fn channel(p: &mut Params) -> CliResult<DecayChannel> {
    Ok(match p.choice_or("channel", &["laser", "vacuum"], "laser")? {
        "vacuum" => DecayChannel::AllVacuum,
        _ => DecayChannel::LaserModes,
    })
}

fn integrator(p: &mut Params, default_rtol: f64) -> CliResult<IntegratorConfig> {
    let kind = p.choice_or("method", &["rk45", "rk4"], "rk45")?;
    let steps = p.usize_or("steps", 1000)?;
    let rtol = p.f64_or("rtol", default_rtol)?;
    let method = match kind {
        "rk4" => Method::Rk4Fixed { steps },
        _ => Method::Rk45Adaptive { rtol },
    };
    Ok(IntegratorConfig::new(method, None)?)
}

/// Runs one command and returns what it would write.
pub fn run(config: &RunConfig) -> CliResult<String> {
    match config.command {
        Command::Simulate => run_simulate(config),
        Command::Sweep => run_sweep(config),
        Command::Budget => run_budget(config),
        Command::Compare => run_compare(config),
    }
}

/// Trajectory CSV `t,rho_bb,rho_aa,re_rho_ab,im_rho_ab,purity`.
pub fn run_simulate(config: &RunConfig) -> CliResult<String> {
    let mut p = Params::new(&config.parameters);
    let coupling = p.f64_or("drive_coupling", 1.0)?;
    let area = pulse_area(&mut p)?;
    let kappa = p.f64_or("kappa", 0.0)?;
    let chan = channel(&mut p)?;
    let (start, _) = start_state(&mut p)?;
    let samples = p.usize_or("samples", 100)?;
    let integ = integrator(&mut p, crate::lindblad::DEFAULT_RTOL)?;
    p.finish()?;

    let pulse = PulseSpec::new(coupling, area)?;
    let decay = DecaySpec::new(kappa, chan)?;
    let integ = integ.with_trajectory(samples)?;
    let out = evolve(&DensityMatrix::from_pure(&start), &pulse, &decay, &integ)?;

    let mut csv = String::from("t,rho_bb,rho_aa,re_rho_ab,im_rho_ab,purity\n");
    for s in out.trajectory.unwrap_or_default() {
        let rho_ab = s.rho.get(EXCITED, GROUND);
        writeln!(
            csv,
            "{},{},{},{},{},{}",
            fmt_num(s.time),
            fmt_num(s.rho.ground_population()),
            fmt_num(s.rho.excited_population()),
            fmt_num(rho_ab.re),
            fmt_num(rho_ab.im),
            fmt_num(s.rho.purity())
        )
        .unwrap();
    }
    Ok(csv)
}

/// `ratio,p` rows and a `# c=… c_prime=… residual=…` footer.
pub fn run_sweep(config: &RunConfig) -> CliResult<String> {
    let mut p = Params::new(&config.parameters);
    let area = pulse_area(&mut p)?;
    let (start, _) = start_state(&mut p)?;
    let chan = channel(&mut p)?;
    let listed = p.list_opt("ratios")?;
    let lo = p.f64_or("ratio_min", 1e-5)?;
    let hi = p.f64_or("ratio_max", 1e-3)?;
    let count = p.usize_or("ratio_count", 8)?;
    let integ = integrator(&mut p, gates::SWEEP_RTOL)?;
    p.finish()?;

    let ratios = match listed {
        Some(r) => r,
        None => gates::log_spaced(lo, hi, count)?,
    };
    if ratios.is_empty() {
        return Err(config_err("ratio grid is empty"));
    }
    let exp = GateExperiment::new(area, start, chan)?;
    let sweep = extract_coefficient(&exp, &ratios, &integ)?;

    let mut csv = String::from("ratio,p\n");
    for (r, pr) in sweep.ratios.iter().zip(&sweep.probabilities) {
        writeln!(csv, "{},{}", fmt_num(*r), fmt_num(*pr)).unwrap();
    }
    let c = sweep.coefficient;
    writeln!(
        csv,
        "# c={} c_prime={} residual={}",
        fmt_num(c.coefficient_vs_ratio),
        fmt_num(c.coefficient_vs_photons),
        fmt_num(c.fit_residual)
    )
    .unwrap();
    if c.degraded {
        csv.push_str("# warning: fit residual above bound\n");
    }
    Ok(csv)
}

/// Parameters of the default budget: a 780 nm transition with a
/// 2.5×10⁻²⁹ C·m dipole in a 100 μm² beam.
pub const DEFAULT_WAVELENGTH: f64 = 780e-9;
pub const DEFAULT_DIPOLE: f64 = 2.5e-29;
pub const DEFAULT_MODE_AREA: f64 = 1e-10;
pub const DEFAULT_INTENSITY: f64 = 1e4;

/// Budget report plus the fixed-intensity area sweep.
pub fn run_budget(config: &RunConfig) -> CliResult<String> {
    let mut p = Params::new(&config.parameters);
    let wavelength = p.f64_or("wavelength", DEFAULT_WAVELENGTH)?;
    let dipole = p.f64_opt("dipole_moment")?;
    let gamma = p.f64_opt("gamma")?;
    let mode_area = p.f64_or("mode_area", DEFAULT_MODE_AREA)?;
    let amplitude = p.f64_opt("field_amplitude")?;
    let intensity = p.f64_opt("intensity")?;
    let epsilon = p.f64_or("epsilon", 1e-4)?;
    let duration = p.f64_opt("duration")?;
    let detuning = p.f64_opt("detuning")?;
    let area_min = p.f64_opt("area_min")?;
    let area_max = p.f64_opt("area_max")?;
    let area_count = p.usize_or("area_count", 7)?;
    p.finish()?;

    let beam = BeamGeometry::new(wavelength, mode_area)?;
    let atom = match (dipole, gamma) {
        (Some(_), Some(_)) => return Err(config_err("give only one of `dipole_moment` and `gamma`")),
        (None, Some(g)) => AtomModel::with_gamma(2.0 * PI * budget::SI.c / wavelength, g)?,
        (d, None) => AtomModel::resonant_with(wavelength, d.unwrap_or(DEFAULT_DIPOLE))?,
    };
    let field = match (amplitude, intensity) {
        (Some(_), Some(_)) => return Err(config_err("give only one of `field_amplitude` and `intensity`")),
        (Some(e), None) => FieldSpec::new(e)?,
        (None, i) => FieldSpec::from_intensity(i.unwrap_or(DEFAULT_INTENSITY))?,
    };
    let t = match duration {
        Some(t) if !(t > 0.0) => return Err(config_err("`duration` must be positive")),
        Some(t) => t,
        None => field.pi_pulse_duration(&atom),
    };
    if !(0.0 < epsilon && epsilon < 1.0) {
        return Err(config_err("`epsilon` must lie in (0, 1)"));
    }
    let sigma = beam.sigma_eff();
    let areas = gates::log_spaced(
        area_min.unwrap_or(sigma),
        area_max.unwrap_or(1e6 * sigma),
        area_count,
    )?;
    if areas.is_empty() {
        return Err(config_err("area sweep is empty"));
    }
    let raman = match detuning {
        Some(d) => Some(RamanSpec::new(d, field.rabi_frequency(&atom))?),
        None => None,
    };

    let kappa = kappa_from_beam(&atom, &beam)?;
    let photons = PhotonBudget::new(&atom, &field, &beam, t)?;
    let constraint = min_photon_constraint(&atom, &field, &beam, Some(t), epsilon)?;
    let chain = constraint_chain(&atom, &field, t, epsilon)?;
    let energy = energy_density_bound(t, epsilon, wavelength)?;
    let rows = area_sweep(&atom, &field, &areas)?;
    let raman_report = match raman {
        Some(r) => Some((r, raman_constraint(&r, atom.gamma(), r.pi_pulse_duration(), epsilon)?)),
        None => None,
    };

    let p_laser = budget::error_vs_photons(PI_PULSE_PHOTON_COEFFICIENT, photons.n_bar)?;
    let p_total = budget::error_vs_photons(PI_PULSE_PHOTON_COEFFICIENT, photons.n_bar_prime)?;
    let verdict = |ok: bool| if ok { "satisfied" } else { "violated" };

    let summary: Vec<(String, String)> = {
        let mut s = vec![
            ("wavelength_m".into(), fmt_num(wavelength)),
            ("omega_rad_per_s".into(), fmt_num(atom.transition_frequency())),
            ("dipole_moment_Cm".into(), fmt_num(atom.dipole_moment())),
            ("gamma_per_s".into(), fmt_num(atom.gamma())),
            ("sigma_eff_m2".into(), fmt_num(sigma)),
            ("mode_area_m2".into(), fmt_num(mode_area)),
            ("kappa_per_s".into(), fmt_num(kappa)),
            ("intensity_W_per_m2".into(), fmt_num(field.intensity())),
            ("power_W".into(), fmt_num(field.power(&beam))),
            ("rabi_rad_per_s".into(), fmt_num(field.rabi_frequency(&atom))),
            ("duration_s".into(), fmt_num(t)),
            ("n_bar".into(), fmt_num(photons.n_bar)),
            ("n_bar_prime".into(), fmt_num(photons.n_bar_prime)),
            ("p_laser_modes".into(), fmt_num(p_laser)),
            ("p_all_modes".into(), fmt_num(p_total)),
            ("epsilon".into(), fmt_num(epsilon)),
            ("required_n_bar_prime".into(), fmt_num(constraint.required_n_bar_prime)),
            (
                "min_energy_constraint".into(),
                format!("{} margin={}", verdict(constraint.verdict.satisfied), fmt_num(constraint.verdict.margin)),
            ),
            ("margin_gamma_t".into(), fmt_num(chain.a1)),
            ("margin_rabi_form".into(), fmt_num(chain.a2)),
            ("margin_explicit_form".into(), fmt_num(chain.a3)),
            ("margin_energy_form".into(), fmt_num(chain.a4)),
            ("energy_per_lambda3_J".into(), fmt_num(energy.energy_per_lambda_cubed)),
            ("energy_coefficient".into(), fmt_num(energy.coefficient)),
        ];
        if let Some((r, rep)) = raman_report {
            s.push(("raman_detuning_rad_per_s".into(), fmt_num(r.detuning())));
            s.push(("raman_duration_s".into(), fmt_num(r.pi_pulse_duration())));
            s.push((
                "raman_constraint".into(),
                format!("{} margin={}", verdict(rep.verdict.satisfied), fmt_num(rep.verdict.margin)),
            ));
            s.push(("raman_eliminated_constant".into(), fmt_num(rep.eliminated_constant)));
            s.push(("raman_pi_squared_form_margin".into(), fmt_num(rep.quoted_form_margin)));
            s.push(("raman_gap_factor".into(), fmt_num(rep.gap_factor)));
        }
        s
    };

    let mut out = String::new();
    let table_header = "area,kappa,kappa_times_area,n_bar,n_bar_prime,p_laser,p_total";
    match config.format {
        Format::Text => {
            out.push_str("photon budget\n");
            for (k, v) in &summary {
                writeln!(out, "  {k:<30} {v}").unwrap();
            }
            if beam.is_sub_diffraction() {
                out.push_str("  warning: mode area is below sigma_eff\n");
            }
            out.push_str("  note: energy_per_lambda3_J = energy_coefficient × ħ/(εT)\n");
            out.push_str("\nfixed-intensity area sweep\n");
            writeln!(out, "{table_header}").unwrap();
        }
        Format::Csv => {
            for (k, v) in &summary {
                writeln!(out, "# {k}={v}").unwrap();
            }
            if beam.is_sub_diffraction() {
                out.push_str("# warning: mode area is below sigma_eff\n");
            }
            writeln!(out, "{table_header}").unwrap();
        }
    }
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_num(r.area),
            fmt_num(r.kappa),
            fmt_num(r.kappa * r.area),
            fmt_num(r.n_bar),
            fmt_num(r.n_bar_prime),
            fmt_num(r.p_laser),
            fmt_num(r.p_total)
        )
        .unwrap();
    }
    Ok(out)
}

/// `model,gate,n_bar,p,p_times_n_bar` for both models on the same grid.
pub fn run_compare(config: &RunConfig) -> CliResult<String> {
    let mut p = Params::new(&config.parameters);
    let area = pulse_area(&mut p)?;
    let (start, _) = start_state(&mut p)?;
    let n_bars = p.list_opt("n_bars")?.unwrap_or_else(|| vec![100.0, 400.0, 1600.0]);
    let integ = integrator(&mut p, gates::SWEEP_RTOL)?;
    p.finish()?;

    if n_bars.is_empty() {
        return Err(config_err("n_bar grid is empty"));
    }
    let exp = GateExperiment::new(area, start.clone(), DecayChannel::LaserModes)?;
    // validate every point before computing any
    for &n in &n_bars {
        ratio_for_photons(area, n)?;
        if n < crate::jc::MIN_SEMICLASSICAL_PHOTONS {
            return Err(config_err(format!(
                "n_bar = {n} is below {}",
                crate::jc::MIN_SEMICLASSICAL_PHOTONS
            )));
        }
    }
    let rows = n_bars
        .par_iter()
        .map(|&n| -> CliResult<(f64, f64, f64)> {
            let markov = failure_probability(&exp, ratio_for_photons(area, n)?, &integ)?;
            let single = jc_gate_error(area, &start, n)?;
            Ok((n, markov, single))
        })
        .collect::<CliResult<Vec<_>>>()?;

    let label = gate_label(area);
    let mut csv = String::from("model,gate,n_bar,p,p_times_n_bar\n");
    for (model, pick) in [("markov", 1usize), ("jc", 2)] {
        for &(n, markov, single) in &rows {
            let pr = if pick == 1 { markov } else { single };
            writeln!(csv, "{model},{label},{},{},{}", fmt_num(n), fmt_num(pr), fmt_num(pr * n)).unwrap();
        }
    }
    Ok(csv)
}

/// Parses argv, runs, writes output and returns the process exit code.
pub fn main_entry<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(args) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("qlaser: {e}");
            e.exit_code()
        }
    }
}

fn execute(args: Args) -> CliResult<()> {
    let mut parameters = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
            parse_config_text(&text)?
        }
        None => BTreeMap::new(),
    };
    for (k, v) in parse_overrides(&args.overrides)? {
        parameters.insert(k, v);
    }
    let config = RunConfig {
        command: args.command,
        parameters,
        output_path: args.out,
        format: args.format.unwrap_or_default(),
    };
    let output = run(&config)?;
    match &config.output_path {
        Some(path) => std::fs::write(path, output)
            .map_err(|e| config_err(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{output}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_text_parsing() {
        let m = parse_config_text("# header\nkappa = 0.1  # trailing\n\n start=excited\n").unwrap();
        assert_eq!(m["kappa"], "0.1");
        assert_eq!(m["start"], "excited");
        assert!(parse_config_text("novalue\n").is_err());
        assert!(parse_config_text(" = 3\n").is_err());
    }

    #[test]
    fn override_parsing() {
        let args: Vec<String> = ["--kappa", "0.5", "--start=plus"].iter().map(|s| s.to_string()).collect();
        let o = parse_overrides(&args).unwrap();
        assert_eq!(o, vec![("kappa".into(), "0.5".into()), ("start".into(), "plus".into())]);
        assert!(parse_overrides(&["--kappa".to_string()]).is_err());
        assert!(parse_overrides(&["kappa".to_string()]).is_err());
    }

    #[test]
    fn number_format_is_fixed() {
        assert_eq!(fmt_num(1.0), "1.00000000000e0");
        assert_eq!(fmt_num(-2.5e-7), "-2.50000000000e-7");
    }

    #[test]
    fn unknown_keys_rejected() {
        let cfg = RunConfig::new(Command::Simulate).set("kapa", 0.1);
        assert!(matches!(run(&cfg), Err(CliError::Config(_))));
    }

    #[test]
    fn negative_kappa_is_config_error() {
        let cfg = RunConfig::new(Command::Simulate).set("kappa", -1.0);
        assert_eq!(run(&cfg).unwrap_err().exit_code(), EXIT_CONFIG);
    }

    #[test]
    fn integration_failure_maps_to_exit_3() {
        let e: CliError = Error::IntegrationFailure {
            last_good_time: 0.1,
            step: 1e-20,
        }
        .into();
        assert_eq!(e.exit_code(), EXIT_NUMERICAL);
    }
}
