//! Command-line frontend.
//!
//! Every subcommand writes one table, either CSV with a `#` preamble or JSON
//! with `meta` and `rows` keys. The preamble lists every resolved parameter
//! as `# key = value`, so an output file can be passed back through
//! `--config` to regenerate the same bytes. `--out` and `--workers` are left
//! out of the preamble because they do not affect the content.
//!
//! Exit status: 0 on success, 1 when `mc-validate` finds a check outside its
//! band, 2 on configuration errors, 3 on numerical-domain errors.

use std::collections::HashSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::parser::ValueSource;
use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

use crate::energy::{fom_mbl_fundamental_limit, FomStatus};
use crate::hybrid::{simulate_startup, HybridConfig, SwitchRule};
use crate::logic::{Logic, LogicFamily, MeasurementSetup, VblParams};
use crate::montecarlo::{validation_suite, DEFAULT_SEED};
use crate::sweep::{
    evaluate, find_transition_point, fom_surface, minimize_fom, snr_region_map, Axis, AxisSpec, CapacityFormula,
    ChannelPoint, SearchBox, Spacing, SweepGrid, ThresholdRange, ThresholdSpec, TransitionConfig,
};
use crate::{Error, Result};

const TOOL: &str = env!("CARGO_PKG_NAME");
const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "varlogic",
    version,
    about = "Energy-per-bit analysis of mean- and variance-based logic"
)]
struct Cli {
    /// Master seed for Monte Carlo commands.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// `physical` appends SI columns (volts, watts, bits/s, joules/bit).
    #[arg(long, global = true, value_enum, default_value = "normalized")]
    units: Units,
    /// Kelvin.
    #[arg(long, global = true, default_value = "300")]
    temperature: f64,
    /// Farads.
    #[arg(long, global = true, default_value = "1e-15")]
    cmeas: f64,
    /// Hertz.
    #[arg(long, global = true, default_value = "1e6")]
    fc: f64,
    /// key=value file, or a previous output file, supplying defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// FOM over a parameter grid.
    FomSweep(GridArgs),
    /// Capacity against average error, rows sorted by p_avg.
    CapacityCurve(GridArgs),
    /// Minimize FOM over a box.
    FomMin(FomMinArgs),
    /// MBL/VBL choice over a (mu, sigma) grid.
    SnrMap(SnrMapArgs),
    /// sigma1 where MBL and VBL reach the same average error, with the profile around it.
    TransitionPoint(TransitionArgs),
    /// VBL-to-MBL startup trace.
    HybridSim(HybridArgs),
    /// Monte Carlo against the analytic models.
    McValidate(McArgs),
    /// MBL energy-per-bit limit and the sub-KT VBL witness point.
    Limits(LimitsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Units {
    Normalized,
    Physical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilySel {
    Mbl,
    Vbl,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Mbl,
    Vbl,
}

impl From<FamilyArg> for LogicFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Mbl => LogicFamily::Mbl,
            FamilyArg::Vbl => LogicFamily::Vbl,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpacingArg {
    Linear,
    Log,
}

impl From<SpacingArg> for Spacing {
    fn from(s: SpacingArg) -> Self {
        match s {
            SpacingArg::Linear => Spacing::Linear,
            SpacingArg::Log => Spacing::Log,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MblThreshold {
    HalfMu,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormulaArg {
    Nominal,
    TrueMi,
}

impl From<FormulaArg> for CapacityFormula {
    fn from(f: FormulaArg) -> Self {
        match f {
            FormulaArg::Nominal => CapacityFormula::Nominal,
            FormulaArg::TrueMi => CapacityFormula::TrueMi,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct GridArgs {
    #[arg(long, value_enum, default_value = "both")]
    family: FamilySel,
    #[arg(long, default_value = "1")]
    sigma0: f64,
    #[arg(long, default_value = "0.01")]
    mu_min: f64,
    #[arg(long, default_value = "3")]
    mu_max: f64,
    #[arg(long, default_value = "100")]
    mu_count: usize,
    #[arg(long, value_enum, default_value = "linear")]
    mu_spacing: SpacingArg,
    /// MBL threshold: tied to mu/2, or swept over the v_th axis.
    #[arg(long, value_enum, default_value = "half-mu")]
    mbl_vth: MblThreshold,
    #[arg(long, default_value = "1.05")]
    sigma1_min: f64,
    #[arg(long, default_value = "2")]
    sigma1_max: f64,
    #[arg(long, default_value = "40")]
    sigma1_count: usize,
    #[arg(long, value_enum, default_value = "log")]
    sigma1_spacing: SpacingArg,
    #[arg(long, default_value = "2")]
    vth_min: f64,
    #[arg(long, default_value = "6")]
    vth_max: f64,
    #[arg(long, default_value = "41")]
    vth_count: usize,
    #[arg(long, value_enum, default_value = "linear")]
    vth_spacing: SpacingArg,
}

impl GridArgs {
    fn vth_axis(&self) -> Axis {
        Axis {
            min: self.vth_min,
            max: self.vth_max,
            count: self.vth_count,
            spacing: self.vth_spacing.into(),
        }
    }

    fn grids(&self) -> Vec<SweepGrid> {
        let mut grids = Vec::new();
        if matches!(self.family, FamilySel::Mbl | FamilySel::Both) {
            let mu = Axis {
                min: self.mu_min,
                max: self.mu_max,
                count: self.mu_count,
                spacing: self.mu_spacing.into(),
            };
            let mut g = SweepGrid::mbl_midpoint(mu);
            g.sigma0 = self.sigma0;
            g.sigma1 = AxisSpec::Fixed(self.sigma0);
            if self.mbl_vth == MblThreshold::Sweep {
                g.v_th = ThresholdSpec::Sweep(self.vth_axis());
            }
            grids.push(g);
        }
        if matches!(self.family, FamilySel::Vbl | FamilySel::Both) {
            let s1 = Axis {
                min: self.sigma1_min,
                max: self.sigma1_max,
                count: self.sigma1_count,
                spacing: self.sigma1_spacing.into(),
            };
            let mut g = SweepGrid::vbl(AxisSpec::Sweep(s1), ThresholdSpec::Sweep(self.vth_axis()));
            g.sigma0 = self.sigma0;
            grids.push(g);
        }
        grids
    }
}

#[derive(Args, Debug, Clone)]
struct FomMinArgs {
    #[arg(long, value_enum, default_value = "mbl")]
    family: FamilyArg,
    #[arg(long, default_value = "1")]
    sigma0: f64,
    /// Lower bound of mu (MBL) or sigma1 (VBL); default 0.01 or 1.05.
    #[arg(long)]
    lo: Option<f64>,
    /// Upper bound of mu (MBL) or sigma1 (VBL); default 3 or 2.
    #[arg(long)]
    hi: Option<f64>,
    /// Threshold bounds; MBL without them ties v_th to mu/2, VBL defaults to [2, 6].
    #[arg(long)]
    vth_min: Option<f64>,
    #[arg(long)]
    vth_max: Option<f64>,
    #[arg(long, value_enum, default_value = "nominal")]
    capacity: FormulaArg,
    #[arg(long, default_value = "1e-10")]
    tol: f64,
}

#[derive(Args, Debug, Clone)]
struct SnrMapArgs {
    #[arg(long, default_value = "0")]
    mu_min: f64,
    #[arg(long, default_value = "3")]
    mu_max: f64,
    #[arg(long, default_value = "0.1")]
    sigma_min: f64,
    #[arg(long, default_value = "3")]
    sigma_max: f64,
    /// Samples per estimate.
    #[arg(long, default_value = "11")]
    n: u64,
    /// Excess kurtosis of the noise.
    #[arg(long, default_value = "0", allow_negative_numbers = true)]
    kurtosis: f64,
    #[arg(long, default_value = "61")]
    resolution: usize,
}

#[derive(Args, Debug, Clone)]
struct TransitionArgs {
    #[arg(long, default_value = "2")]
    mu: f64,
    #[arg(long, default_value = "1")]
    sigma0: f64,
    #[arg(long, default_value = "1")]
    vth_mbl: f64,
    #[arg(long, default_value = "2")]
    vth_vbl: f64,
    #[arg(long, default_value = "1")]
    sigma1_min: f64,
    #[arg(long, default_value = "5")]
    sigma1_max: f64,
    /// Profile points across the sigma1 range.
    #[arg(long, default_value = "401")]
    profile_count: usize,
}

#[derive(Args, Debug, Clone)]
struct HybridArgs {
    #[arg(long, default_value = "2")]
    mu_target: f64,
    #[arg(long, default_value = "1e-3")]
    tau_mu: f64,
    #[arg(long, default_value = "4")]
    sigma_ambient: f64,
    #[arg(long, default_value = "1")]
    sigma_floor: f64,
    #[arg(long, default_value = "1e-3")]
    tau_sigma: f64,
    #[arg(long, default_value = "1e-5")]
    dt: f64,
    #[arg(long, default_value = "1e-2")]
    t_end: f64,
    #[arg(long, default_value = "11")]
    n_snr: u64,
    #[arg(long, default_value = "0", allow_negative_numbers = true)]
    kurtosis: f64,
    /// VBL threshold in multiples of sigma_floor.
    #[arg(long, default_value = "2")]
    vbl_threshold: f64,
    /// Switch to MBL once mu > factor * sigma1 instead of comparing SNRs.
    #[arg(long)]
    switch_factor: Option<f64>,
    /// Emit every k-th step (the last step is always emitted).
    #[arg(long, default_value = "1")]
    stride: usize,
}

#[derive(Args, Debug, Clone)]
struct McArgs {
    /// Draws per channel simulation.
    #[arg(long, default_value = "1000000")]
    samples: u64,
    /// Trials per estimator simulation.
    #[arg(long, default_value = "1000000")]
    trials: u64,
}

#[derive(Args, Debug, Clone)]
struct LimitsArgs {
    #[arg(long, default_value = "1")]
    sigma0: f64,
    #[arg(long, default_value = "1.2")]
    witness_sigma1: f64,
    #[arg(long, default_value = "4")]
    witness_vth: f64,
}

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    F(f64),
    U(u64),
    S(String),
    B(bool),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::F(x) => format_f64(*x),
            Cell::U(n) => n.to_string(),
            Cell::S(s) => s.clone(),
            Cell::B(b) => b.to_string(),
        }
    }

    fn json(&self) -> serde_json::Value {
        use serde_json::Value;
        match self {
            Cell::F(x) if x.is_finite() => match format_f64(*x).parse::<serde_json::Number>() {
                Ok(n) => Value::Number(n),
                Err(_) => Value::String(format_f64(*x)),
            },
            Cell::F(x) => Value::String(format_f64(*x)),
            Cell::U(n) => Value::Number((*n).into()),
            Cell::S(s) => Value::String(s.clone()),
            Cell::B(b) => Value::Bool(*b),
        }
    }
}

fn s(text: impl Into<String>) -> Cell {
    Cell::S(text.into())
}

/// 17 significant digits, enough to round-trip any `f64`.
fn format_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

struct Outcome {
    table: Table,
    /// Exit status once the table is written.
    status: i32,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Outcome { table, status: 0 }
    }
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let (cli, command_name, resolved) = match parse(&argv) {
        Ok(parsed) => parsed,
        Err(ParseExit::Clap(e)) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let msg = e.to_string();
            eprintln!("varlogic: {}", msg.lines().next().unwrap_or("invalid arguments"));
            return 2;
        }
        Err(ParseExit::Lib(e)) => return report(&Failure::Lib(e)),
    };

    let outcome = match cli.workers {
        Some(0) => Err(Failure::Lib(Error::config("--workers must be at least 1"))),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Failure::Io(format!("cannot start worker pool: {e}"))),
        },
        None => execute(&cli),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(f) => return report(&f),
    };

    let bytes = match cli.format {
        Format::Csv => render_csv(&command_name, &resolved, &outcome.table),
        Format::Json => render_json(&command_name, &resolved, &outcome.table),
    };
    let written = match (&cli.out, bytes) {
        (_, Err(e)) => Err(e),
        (Some(path), Ok(b)) => std::fs::write(path, b).map_err(|e| format!("cannot write {}: {e}", path.display())),
        (None, Ok(b)) => std::io::stdout()
            .write_all(&b)
            .map_err(|e| format!("cannot write stdout: {e}")),
    };
    match written {
        Ok(()) => outcome.status,
        Err(msg) => report(&Failure::Io(msg)),
    }
}

fn report(f: &Failure) -> i32 {
    match f {
        Failure::Lib(e) => {
            eprintln!("varlogic: {e}");
            match e {
                Error::Config(_) => 2,
                Error::Domain(_) | Error::NotFound(_) => 3,
            }
        }
        Failure::Io(msg) => {
            eprintln!("varlogic: {msg}");
            2
        }
    }
}

/// Parsed CLI, subcommand name and resolved `(key, raw value)` pairs.
type Parsed = (Cli, String, Vec<(String, String)>);

enum ParseExit {
    Clap(clap::Error),
    Lib(Error),
}

/// Parses the command line, folding in `--config` values for every flag
/// not given explicitly. Returns the parsed CLI, the subcommand name and
/// the resolved `(key, raw value)` list for the preamble.
fn parse(argv: &[OsString]) -> std::result::Result<Parsed, ParseExit> {
    let mut cmd = Cli::command();
    cmd.build();
    let mut matches = cmd.clone().try_get_matches_from(argv).map_err(ParseExit::Clap)?;

    if let Some(path) = matches.get_one::<PathBuf>("config").cloned() {
        let pairs = read_config_file(&path).map_err(ParseExit::Lib)?;
        let extra = config_overrides(&cmd, &matches, pairs).map_err(ParseExit::Lib)?;
        let mut full = argv.to_vec();
        full.extend(extra.into_iter().map(OsString::from));
        matches = cmd.clone().try_get_matches_from(full).map_err(ParseExit::Clap)?;
    }

    let cli = Cli::from_arg_matches(&matches).map_err(ParseExit::Clap)?;
    let (name, sub_m) = matches.subcommand().expect("subcommand is required");
    let sub_cmd = cmd.find_subcommand(name).expect("parsed subcommand exists");
    Ok((cli, name.to_string(), resolved_config(&cmd, sub_cmd, sub_m)))
}

const UNRECORDED: [&str; 5] = ["out", "workers", "config", "help", "version"];

fn resolved_config(cmd: &clap::Command, sub_cmd: &clap::Command, sub_m: &ArgMatches) -> Vec<(String, String)> {
    let globals = cmd.get_arguments().filter(|a| a.is_global_set());
    let locals = sub_cmd.get_arguments().filter(|a| !a.is_global_set());
    globals
        .chain(locals)
        .filter(|a| !UNRECORDED.contains(&a.get_id().as_str()))
        .filter_map(|a| {
            let long = a.get_long()?;
            let raw = sub_m.get_raw(a.get_id().as_str())?;
            let value: Vec<String> = raw.map(|v| v.to_string_lossy().into_owned()).collect();
            Some((long.to_string(), value.join(",")))
        })
        .collect()
}

/// `--key=value` arguments for config entries the command line does not set.
fn config_overrides(cmd: &clap::Command, matches: &ArgMatches, pairs: Vec<(String, String)>) -> Result<Vec<String>> {
    let (name, sub_m) = matches.subcommand().expect("subcommand is required");
    let sub_cmd = cmd.find_subcommand(name).expect("parsed subcommand exists");
    let mut seen = HashSet::new();
    let mut extra = Vec::new();
    for (key, value) in pairs {
        if !seen.insert(key.clone()) {
            return Err(Error::config(format!("config key `{key}` given twice")));
        }
        if key == "command" {
            if value != name {
                return Err(Error::config(format!("config is for `{value}`, not `{name}`")));
            }
            continue;
        }
        if key == "config" {
            return Err(Error::config("config files cannot include other config files"));
        }
        let arg = sub_cmd
            .get_arguments()
            .find(|a| a.get_long() == Some(key.as_str()) && !matches!(a.get_id().as_str(), "help" | "version"))
            .ok_or_else(|| Error::config(format!("unknown config key `{key}` for `{name}`")))?;
        if sub_m.value_source(arg.get_id().as_str()) != Some(ValueSource::CommandLine) {
            extra.push(format!("--{key}={value}"));
        }
    }
    Ok(extra)
}

/// Reads `key = value` lines. A leading `#` is allowed, so the preamble of
/// a CSV output works as a config file; JSON outputs are read from `meta`.
fn read_config_file(path: &Path) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config(format!("cannot read config {}: {e}", path.display())))?;
    let normalize = |k: &str| k.trim().replace('_', "-");

    if text.trim_start().starts_with('{') {
        let doc: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Error::config(format!("invalid JSON config: {e}")))?;
        let meta = doc
            .get("meta")
            .ok_or_else(|| Error::config("JSON config has no `meta` object"))?;
        let mut pairs = Vec::new();
        if let Some(c) = meta.get("command").and_then(|c| c.as_str()) {
            pairs.push(("command".to_string(), c.to_string()));
        }
        let config = meta
            .get("config")
            .and_then(|c| c.as_object())
            .ok_or_else(|| Error::config("JSON config has no `meta.config` object"))?;
        for (k, v) in config {
            let v = match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            pairs.push((normalize(k), v));
        }
        return Ok(pairs);
    }

    let is_output = text
        .lines()
        .next()
        .is_some_and(|l| l.starts_with(&format!("# {TOOL} ")));
    let mut pairs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (commented, body) = match line.strip_prefix('#') {
            Some(rest) => (true, rest.trim()),
            None => (false, line),
        };
        match body.split_once('=') {
            Some((k, v)) => pairs.push((normalize(k), v.trim().to_string())),
            None if commented => {}
            // Data section of an output file.
            None if is_output => break,
            None => {
                return Err(Error::config(format!(
                    "{}:{}: expected key = value",
                    path.display(),
                    lineno + 1
                )))
            }
        }
    }
    Ok(pairs)
}

fn preamble(command: &str, resolved: &[(String, String)]) -> Vec<String> {
    let mut lines = vec![format!("# {TOOL} {VERSION}"), format!("# command = {command}")];
    lines.extend(resolved.iter().map(|(k, v)| format!("# {k} = {v}")));
    lines
}

fn render_csv(command: &str, resolved: &[(String, String)], table: &Table) -> std::result::Result<Vec<u8>, String> {
    let mut buf = Vec::new();
    for line in preamble(command, resolved) {
        buf.extend_from_slice(line.as_bytes());
        buf.push(b'\n');
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(buf);
    let err = |e: csv::Error| format!("cannot encode CSV: {e}");
    w.write_record(&table.columns).map_err(err)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::text)).map_err(err)?;
    }
    w.into_inner().map_err(|e| format!("cannot encode CSV: {e}"))
}

fn render_json(command: &str, resolved: &[(String, String)], table: &Table) -> std::result::Result<Vec<u8>, String> {
    use serde_json::{Map, Value};
    let config: Map<String, Value> = resolved
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    let mut meta = Map::new();
    meta.insert("tool".into(), Value::String(TOOL.into()));
    meta.insert("version".into(), Value::String(VERSION.into()));
    meta.insert("command".into(), Value::String(command.into()));
    meta.insert(
        "columns".into(),
        Value::Array(table.columns.iter().map(|c| Value::String((*c).into())).collect()),
    );
    meta.insert("config".into(), Value::Object(config));
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            Value::Object(
                table
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| ((*c).to_string(), v.json()))
                    .collect(),
            )
        })
        .collect();
    let mut doc = Map::new();
    doc.insert("meta".into(), Value::Object(meta));
    doc.insert("rows".into(), Value::Array(rows));
    let mut bytes = serde_json::to_vec_pretty(&Value::Object(doc)).map_err(|e| format!("cannot encode JSON: {e}"))?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn execute(cli: &Cli) -> std::result::Result<Outcome, Failure> {
    let setup = MeasurementSetup::new(cli.temperature, cli.cmeas, cli.fc)?;
    let physical = cli.units == Units::Physical;
    Ok(match &cli.command {
        Command::FomSweep(g) => sweep_table(g, &setup, physical, false)?.into(),
        Command::CapacityCurve(g) => sweep_table(g, &setup, physical, true)?.into(),
        Command::FomMin(a) => fom_min_table(a, &setup, physical)?.into(),
        Command::SnrMap(a) => snr_map_table(a, &setup, physical)?.into(),
        Command::TransitionPoint(a) => transition_table(a, &setup, physical)?.into(),
        Command::HybridSim(a) => hybrid_table(a, &setup, physical)?.into(),
        Command::McValidate(a) => mc_outcome(a, cli.seed)?,
        Command::Limits(a) => limits_table(a, &setup, physical)?.into(),
    })
}

const CHANNEL_COLUMNS: [&str; 15] = [
    "family",
    "mu",
    "sigma0",
    "sigma1",
    "v_th",
    "p_1_given_0",
    "p_0_given_1",
    "p_avg",
    "capacity_nominal",
    "mi_true",
    "power",
    "fom_nominal",
    "fom_true",
    "fom_nominal_status",
    "fom_true_status",
];

const CHANNEL_PHYSICAL: [&str; 9] = [
    "mu_v",
    "sigma0_v",
    "sigma1_v",
    "v_th_v",
    "power_w",
    "capacity_nominal_bps",
    "mi_true_bps",
    "fom_nominal_j_per_bit",
    "fom_true_j_per_bit",
];

fn status_str(status: FomStatus) -> &'static str {
    match status {
        FomStatus::Finite => "finite",
        FomStatus::Infinite => "infinite",
        FomStatus::Undefined => "undefined",
    }
}

/// `(mu, sigma0, sigma1, v_th)`; VBL states are zero-mean.
fn logic_params(logic: &Logic) -> (f64, f64, f64, f64) {
    match logic {
        Logic::Mbl(p) => (p.mu(), p.sigma0(), p.sigma1(), p.v_th()),
        Logic::Vbl(p) => (0.0, p.sigma0(), p.sigma1(), p.v_th()),
    }
}

fn channel_columns(physical: bool) -> Vec<&'static str> {
    let mut cols = CHANNEL_COLUMNS.to_vec();
    if physical {
        cols.extend(CHANNEL_PHYSICAL);
    }
    cols
}

fn channel_row(p: &ChannelPoint, setup: &MeasurementSetup, physical: bool) -> Vec<Cell> {
    let (mu, s0, s1, v) = logic_params(&p.logic);
    let mut row = vec![
        s(p.logic.family().as_str()),
        Cell::F(mu),
        Cell::F(s0),
        Cell::F(s1),
        Cell::F(v),
        Cell::F(p.errors.p_1_given_0),
        Cell::F(p.errors.p_0_given_1),
        Cell::F(p.p_avg),
        Cell::F(p.capacity_nominal),
        Cell::F(p.mi_true),
        Cell::F(p.power.normalized),
        Cell::F(p.fom_nominal.fom_kt_per_bit),
        Cell::F(p.fom_true.fom_kt_per_bit),
        s(status_str(p.fom_nominal.status)),
        s(status_str(p.fom_true.status)),
    ];
    if physical {
        row.extend([
            Cell::F(setup.to_volts(mu)),
            Cell::F(setup.to_volts(s0)),
            Cell::F(setup.to_volts(s1)),
            Cell::F(setup.to_volts(v)),
            Cell::F(p.power.watts),
            Cell::F(p.capacity_nominal * setup.f_c()),
            Cell::F(p.mi_true * setup.f_c()),
            Cell::F(p.fom_nominal.fom_joules_per_bit),
            Cell::F(p.fom_true.fom_joules_per_bit),
        ]);
    }
    row
}

fn sweep_table(g: &GridArgs, setup: &MeasurementSetup, physical: bool, by_perror: bool) -> Result<Table> {
    let mut points = Vec::new();
    for grid in g.grids() {
        points.extend(fom_surface(&grid, setup)?.rows);
    }
    if by_perror {
        // Stable, so ties keep grid order (MBL before VBL).
        points.sort_by(|a, b| a.p_avg.total_cmp(&b.p_avg));
    }
    Ok(Table {
        columns: channel_columns(physical),
        rows: points.iter().map(|p| channel_row(p, setup, physical)).collect(),
    })
}

fn fom_min_table(a: &FomMinArgs, setup: &MeasurementSetup, physical: bool) -> Result<Table> {
    let family: LogicFamily = a.family.into();
    let (dlo, dhi) = match family {
        LogicFamily::Mbl => (0.01, 3.0),
        LogicFamily::Vbl => (1.05, 2.0),
    };
    let v_th = match (family, a.vth_min, a.vth_max) {
        (_, Some(lo), Some(hi)) => ThresholdRange::Range(lo, hi),
        (LogicFamily::Mbl, None, None) => ThresholdRange::HalfMu,
        (LogicFamily::Vbl, None, None) => ThresholdRange::Range(2.0, 6.0),
        _ => return Err(Error::config("give both --vth-min and --vth-max or neither")),
    };
    let bounds = SearchBox {
        family,
        sigma0: a.sigma0,
        primary: (a.lo.unwrap_or(dlo), a.hi.unwrap_or(dhi)),
        v_th,
    };
    let formula: CapacityFormula = a.capacity.into();
    let report = minimize_fom(&bounds, formula, a.tol, setup)?;

    let mut columns = vec!["formula"];
    columns.extend(channel_columns(physical));
    columns.extend([
        "best_fom",
        "iterations",
        "evaluations",
        "converged",
        "tolerance_achieved",
        "boundary",
    ]);
    let mut row = vec![s(formula.as_str())];
    row.extend(channel_row(&report.best, setup, physical));
    row.extend([
        Cell::F(report.best_fom),
        Cell::U(report.iterations as u64),
        Cell::U(report.evaluations as u64),
        Cell::B(report.converged),
        Cell::F(report.tolerance_achieved),
        s(if report.boundary.is_empty() {
            "none".to_string()
        } else {
            report.boundary.join(";")
        }),
    ]);
    Ok(Table {
        columns,
        rows: vec![row],
    })
}

fn snr_map_table(a: &SnrMapArgs, setup: &MeasurementSetup, physical: bool) -> Result<Table> {
    let cells = snr_region_map(
        (a.mu_min, a.mu_max),
        (a.sigma_min, a.sigma_max),
        a.n,
        a.kurtosis,
        a.resolution,
    )?;
    let mut columns = vec!["mu", "sigma", "snr_mbl", "snr_vbl", "choice", "crossover_mu"];
    if physical {
        columns.extend(["mu_v", "sigma_v", "crossover_mu_v"]);
    }
    let rows = cells
        .iter()
        .map(|c| {
            let mut row = vec![
                Cell::F(c.mu),
                Cell::F(c.sigma),
                Cell::F(c.snr_mbl),
                Cell::F(c.snr_vbl),
                s(c.choice.as_str()),
                Cell::F(c.crossover_mu),
            ];
            if physical {
                row.extend([
                    Cell::F(setup.to_volts(c.mu)),
                    Cell::F(setup.to_volts(c.sigma)),
                    Cell::F(setup.to_volts(c.crossover_mu)),
                ]);
            }
            row
        })
        .collect();
    Ok(Table { columns, rows })
}

fn transition_table(a: &TransitionArgs, setup: &MeasurementSetup, physical: bool) -> Result<Table> {
    let cfg = TransitionConfig {
        mu: a.mu,
        sigma0: a.sigma0,
        v_th_mbl: a.vth_mbl,
        v_th_vbl: a.vth_vbl,
        sigma1_range: (a.sigma1_min, a.sigma1_max),
    };
    let star = find_transition_point(&cfg)?;
    let axis = AxisSpec::Sweep(Axis::linear(a.sigma1_min, a.sigma1_max, a.profile_count));

    let mut columns = vec!["kind", "sigma1", "p_avg_mbl", "p_avg_vbl", "difference", "better"];
    if physical {
        columns.push("sigma1_v");
    }
    let row = |kind: &str, s1: f64, better: Option<LogicFamily>| -> Result<Vec<Cell>> {
        let (m, v) = (cfg.p_avg_mbl(s1)?, cfg.p_avg_vbl(s1)?);
        let mut row = vec![s(kind), Cell::F(s1), Cell::F(m), Cell::F(v), Cell::F(m - v)];
        row.push(s(better.map_or("tie", |b| b.as_str())));
        if physical {
            row.push(Cell::F(setup.to_volts(s1)));
        }
        Ok(row)
    };
    let mut rows = vec![row("transition", star, None)?];
    for s1 in axis.values("sigma1")? {
        let better = if cfg.p_avg_mbl(s1)? < cfg.p_avg_vbl(s1)? {
            LogicFamily::Mbl
        } else {
            LogicFamily::Vbl
        };
        rows.push(row("profile", s1, Some(better))?);
    }
    Ok(Table { columns, rows })
}

fn hybrid_table(a: &HybridArgs, setup: &MeasurementSetup, physical: bool) -> Result<Table> {
    if a.stride == 0 {
        return Err(Error::config("--stride must be at least 1"));
    }
    let config = HybridConfig {
        mu_target: a.mu_target,
        tau_mu: a.tau_mu,
        sigma_ambient: a.sigma_ambient,
        sigma_floor: a.sigma_floor,
        tau_sigma: a.tau_sigma,
        dt: a.dt,
        t_end: a.t_end,
        n_snr: a.n_snr,
        kurtosis: a.kurtosis,
        vbl_threshold: a.vbl_threshold,
        switch_rule: a.switch_factor.map_or(SwitchRule::Snr, SwitchRule::MeanOverSigma),
    };
    let trace = simulate_startup(&config)?;
    let mut columns = vec!["t", "mu", "sigma1", "snr_mbl", "snr_vbl", "choice", "p_avg"];
    if physical {
        columns.extend(["mu_v", "sigma1_v"]);
    }
    let last = trace.rows.len() - 1;
    let rows = trace
        .rows
        .iter()
        .enumerate()
        .filter(|(i, _)| i % a.stride == 0 || *i == last)
        .map(|(_, r)| {
            let mut row = vec![
                Cell::F(r.t),
                Cell::F(r.mu),
                Cell::F(r.sigma1),
                Cell::F(r.snr_mbl),
                Cell::F(r.snr_vbl),
                s(r.choice.as_str()),
                Cell::F(r.p_avg),
            ];
            if physical {
                row.extend([Cell::F(setup.to_volts(r.mu)), Cell::F(setup.to_volts(r.sigma1))]);
            }
            row
        })
        .collect();
    Ok(Table { columns, rows })
}

fn mc_outcome(a: &McArgs, seed: u64) -> Result<Outcome> {
    let checks = validation_suite(a.samples, a.trials, seed)?;
    let all_passed = checks.iter().all(|c| c.passed());
    let rows = checks
        .iter()
        .map(|c| {
            vec![
                s(c.name.clone()),
                Cell::F(c.analytic),
                Cell::F(c.estimate.mean),
                Cell::F(c.estimate.std_error),
                Cell::F(c.z()),
                Cell::F(c.z_limit),
                Cell::U(c.estimate.n_samples),
                Cell::U(c.estimate.seed),
                Cell::B(c.passed()),
            ]
        })
        .collect();
    let columns = vec![
        "check",
        "analytic",
        "estimate",
        "std_error",
        "z",
        "z_limit",
        "n",
        "seed",
        "passed",
    ];
    Ok(Outcome {
        table: Table { columns, rows },
        status: if all_passed { 0 } else { 1 },
    })
}

fn limits_table(a: &LimitsArgs, setup: &MeasurementSetup, physical: bool) -> Result<Table> {
    let limit = fom_mbl_fundamental_limit();
    let witness = VblParams::new(a.sigma0, a.witness_sigma1, a.witness_vth)?;
    let p = evaluate(&Logic::Vbl(witness), setup);

    let mut rows: Vec<(&str, f64)> = vec![
        ("fom_mbl_limit_kt_per_bit", limit),
        ("witness_sigma0", a.sigma0),
        ("witness_sigma1", a.witness_sigma1),
        ("witness_v_th", a.witness_vth),
        ("witness_p_1_given_0", p.errors.p_1_given_0),
        ("witness_p_0_given_1", p.errors.p_0_given_1),
        ("witness_p_avg", p.p_avg),
        ("witness_capacity_nominal", p.capacity_nominal),
        ("witness_mi_true", p.mi_true),
        ("witness_power", p.power.normalized),
        ("witness_fom_nominal_kt_per_bit", p.fom_nominal.fom_kt_per_bit),
        ("witness_fom_true_kt_per_bit", p.fom_true.fom_kt_per_bit),
    ];
    if physical {
        rows.extend([
            ("kt_joules", setup.kt()),
            ("fom_mbl_limit_j_per_bit", limit * setup.kt()),
            ("witness_power_w", p.power.watts),
            ("witness_fom_nominal_j_per_bit", p.fom_nominal.fom_joules_per_bit),
            ("witness_fom_true_j_per_bit", p.fom_true.fom_joules_per_bit),
        ]);
    }
    Ok(Table {
        columns: vec!["quantity", "value"],
        rows: rows.into_iter().map(|(k, v)| vec![s(k), Cell::F(v)]).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_round_trips() {
        for x in [
            4.355_172_180_607_204,
            1e-300,
            -0.1,
            0.0,
            123_456_789.0,
            f64::MIN_POSITIVE,
        ] {
            let t = format_f64(x);
            assert_eq!(t.parse::<f64>().unwrap(), x, "{t}");
        }
        assert_eq!(format_f64(f64::INFINITY), "inf");
        assert_eq!(format_f64(f64::NAN), "nan");
        assert_eq!(format_f64(2.0), "2.0000000000000000e0");
    }

    #[test]
    fn nonfinite_values_are_json_strings() {
        assert_eq!(Cell::F(f64::INFINITY).json(), serde_json::Value::String("inf".into()));
        assert!(Cell::F(0.5).json().is_number());
    }

    #[test]
    fn config_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.txt");
        std::fs::write(&path, "# comment\nmu_min = 0.5\n\n# seed = 7\n").unwrap();
        let pairs = read_config_file(&path).unwrap();
        assert_eq!(
            pairs,
            vec![("mu-min".into(), "0.5".into()), ("seed".into(), "7".into())]
        );
        std::fs::write(&path, "mu-min 0.5\n").unwrap();
        assert!(matches!(read_config_file(&path), Err(Error::Config(_))));
    }
}
