//! Command-line front end. `run` does all the work so that it can be driven
//! from tests without spawning a process.

use std::fmt::Write as _;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;

use crate::error::Error;
use crate::model::{CentralPotential, ModelParams, QuantumNumbers};
use crate::oracle::{linear_grid, matrix_eigen_crosscheck};
use crate::radial::{coulomb_energy, coulomb_series, nonrel_energy, nonrel_residual, solve_bound_state, BoundState, SolverConfig};
use crate::verify::{check_state, Tolerances};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

/// Gap allowed between the analytic and finite-difference energies, in units of `mu`.
pub const CROSSCHECK_TOLERANCE: f64 = 5e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Spectrum,
    Wavefunction,
    Verify,
    Limits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    Radial,
    Polar,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

/// Bound-state spectra and wavefunctions of the D-dimensional Klein-Gordon
/// equation with an equal scalar/vector ring-shaped Kratzer potential.
#[derive(Debug, Clone, Parser)]
#[command(name = "kgring", version, allow_negative_numbers = true)]
pub struct Cli {
    /// Rest mass.
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    /// Dissociation energy.
    #[arg(long, required_unless_present = "coulomb", conflicts_with = "coulomb")]
    pub a0: Option<f64>,
    /// Equilibrium distance.
    #[arg(long, required_unless_present = "coulomb", conflicts_with = "coulomb")]
    pub r0: Option<f64>,
    /// Ring-shaped coupling.
    #[arg(long = "C", default_value_t = 0.0)]
    pub c: f64,
    /// Spatial dimension, `D` or `lo..hi`.
    #[arg(long = "D", default_value = "3", value_parser = parse_range)]
    pub d: RangeInclusive<u32>,
    /// Radial quantum number, `n` or `lo..hi`.
    #[arg(long, default_value = "0", value_parser = parse_range)]
    pub n: RangeInclusive<u32>,
    /// Polar quantum number.
    #[arg(long, default_value = "0", value_parser = parse_range)]
    pub ntheta: RangeInclusive<u32>,
    /// Azimuthal quantum number |m|.
    #[arg(long, default_value = "0", value_parser = parse_range)]
    pub m: RangeInclusive<u32>,
    /// Pure Coulomb channel `-A/r` (B = 0) instead of Kratzer.
    #[arg(long)]
    pub coulomb: Option<f64>,
    #[arg(long, value_enum, default_value_t = Mode::Spectrum)]
    pub mode: Mode,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Finite-difference intervals for the matrix cross-check (verify mode).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Box size for the matrix cross-check; defaults to max(200, 20 x length scale).
    #[arg(long)]
    pub rmax: Option<f64>,
    /// Exit with status 3 if any state is infeasible.
    #[arg(long)]
    pub strict: bool,
    /// Wavefunction axis.
    #[arg(long, value_enum, default_value_t = Axis::Radial)]
    pub axis: Axis,
    /// Number of wavefunction samples.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Lower end of the sampling interval.
    #[arg(long)]
    pub from: Option<f64>,
    /// Upper end of the sampling interval.
    #[arg(long)]
    pub to: Option<f64>,
    /// Sample the radial axis linearly rather than logarithmically.
    #[arg(long)]
    pub linear: bool,
}

/// Validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// One model per requested dimension.
    pub params: Vec<ModelParams>,
    pub n: RangeInclusive<u32>,
    pub ntheta: RangeInclusive<u32>,
    pub m: RangeInclusive<u32>,
    pub mode: Mode,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub sampling: Sampling,
    pub grid: Option<usize>,
    pub rmax: Option<f64>,
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sampling {
    pub axis: Axis,
    pub points: usize,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub log: bool,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, Error> {
        let params = cli
            .d
            .clone()
            .map(|d| match cli.coulomb {
                Some(a) => ModelParams::coulomb(cli.mu, a, cli.c, d),
                None => ModelParams::kratzer(
                    cli.mu,
                    cli.a0.ok_or_else(|| Error::invalid("a0", "required without --coulomb"))?,
                    cli.r0.ok_or_else(|| Error::invalid("r0", "required without --coulomb"))?,
                    cli.c,
                    d,
                ),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if cli.samples < 2 {
            return Err(Error::invalid("samples", format!("need at least 2, got {}", cli.samples)));
        }
        if let (Some(a), Some(b)) = (cli.from, cli.to) {
            if !(a < b) {
                return Err(Error::invalid("from", format!("sampling interval [{a}, {b}] is empty")));
            }
        }
        if let Some(r) = cli.rmax {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::invalid("rmax", format!("must be > 0, got {r}")));
            }
        }
        Ok(Self {
            params,
            n: cli.n.clone(),
            ntheta: cli.ntheta.clone(),
            m: cli.m.clone(),
            mode: cli.mode,
            out: cli.out.clone(),
            format: cli.format,
            sampling: Sampling {
                axis: cli.axis,
                points: cli.samples,
                from: cli.from,
                to: cli.to,
                log: !cli.linear,
            },
            grid: cli.grid,
            rmax: cli.rmax,
            strict: cli.strict,
        })
    }

    /// Every `(params, qn)` job, sorted by `(D, n, ñ, m)`.
    pub fn jobs(&self) -> Vec<(ModelParams, QuantumNumbers)> {
        let mut out = Vec::new();
        for p in &self.params {
            for n in self.n.clone() {
                for nt in self.ntheta.clone() {
                    for m in self.m.clone() {
                        out.push((*p, QuantumNumbers::new(n, nt, m)));
                    }
                }
            }
        }
        out
    }
}

/// One output cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Bool(bool),
    Str(String),
    Empty,
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Str(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// 17 significant digits: enough to round-trip any f64.
pub fn format_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

impl Cell {
    fn csv_text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => format_num(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Str(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json_text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) if v.is_finite() => format_num(*v),
            Cell::Num(_) | Cell::Empty => "null".into(),
            Cell::Bool(v) => v.to_string(),
            Cell::Str(s) => serde_json::Value::from(s.as_str()).to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn to_csv(&self) -> std::io::Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text))?;
        }
        w.into_inner().map_err(|e| e.into_error())
    }

    pub fn to_json(&self) -> String {
        let mut s = String::from("[");
        for (i, row) in self.rows.iter().enumerate() {
            s.push_str(if i == 0 { "\n  {" } else { ",\n  {" });
            for (k, (col, cell)) in self.columns.iter().zip(row).enumerate() {
                if k > 0 {
                    s.push_str(", ");
                }
                let _ = write!(s, "{}: {}", serde_json::Value::from(*col), cell.json_text());
            }
            s.push('}');
        }
        s.push_str(if self.rows.is_empty() { "]\n" } else { "\n]\n" });
        s
    }

    pub fn render(&self, format: Format) -> std::io::Result<Vec<u8>> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => Ok(self.to_json().into_bytes()),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }
}

/// One solved (or failed) state of the spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRow {
    pub d: u32,
    pub qn: QuantumNumbers,
    pub state: Result<BoundState, Error>,
    pub e_nonrel: Option<f64>,
}

impl SpectrumRow {
    pub fn status(&self) -> &'static str {
        match &self.state {
            Ok(s) if s.diagnostics.multiple_roots() => "multiple_roots",
            Ok(_) => "ok",
            Err(e) => e.status(),
        }
    }

    pub fn infeasible(&self) -> bool {
        self.state.is_err()
    }
}

fn solve_rows(cfg: &RunConfig) -> Vec<SpectrumRow> {
    cfg.jobs()
        .par_iter()
        .map(|(p, qn)| SpectrumRow {
            d: p.d(),
            qn: *qn,
            state: solve_bound_state(p, *qn, &SolverConfig::default()),
            e_nonrel: nonrel_energy(p, *qn).ok(),
        })
        .collect()
}

fn labels(d: u32, qn: QuantumNumbers) -> Vec<Cell> {
    vec![qn.n.into(), qn.n_theta.into(), qn.m.into(), d.into()]
}

const LABELS: [&str; 4] = ["n", "ntheta", "m", "D"];

fn with_labels(rest: &[&'static str]) -> Vec<&'static str> {
    LABELS.iter().chain(rest).copied().collect()
}

pub fn cmd_spectrum(cfg: &RunConfig) -> (Table, Vec<SpectrumRow>) {
    let rows = solve_rows(cfg);
    let columns = with_labels(&[
        "j", "j_prime", "m_prime", "E_R", "binding", "E_NR", "zeta", "status", "brackets", "other_roots",
        "infeasible_points", "iterations", "residual", "error",
    ]);
    let cells = rows
        .iter()
        .map(|row| {
            let mut c = labels(row.d, row.qn);
            match &row.state {
                Ok(s) => {
                    let others: Vec<String> = s.diagnostics.other_roots.iter().map(|e| format_num(*e)).collect();
                    c.extend([
                        s.angular.j.into(),
                        s.angular.j_prime.into(),
                        s.angular.m_prime.into(),
                        s.energy.into(),
                        s.binding().into(),
                        row.e_nonrel.into(),
                        s.intermediates.zeta.into(),
                        row.status().into(),
                        s.diagnostics.brackets.into(),
                        others.join(";").into(),
                        s.diagnostics.infeasible_points.into(),
                        s.diagnostics.iterations.into(),
                        s.diagnostics.residual.into(),
                        Cell::Empty,
                    ]);
                }
                Err(e) => {
                    c.extend(std::iter::repeat_n(Cell::Empty, 5));
                    c.push(row.e_nonrel.into());
                    c.push(Cell::Empty);
                    c.push(row.status().into());
                    c.extend(std::iter::repeat_n(Cell::Empty, 5));
                    c.push(e.to_string().into());
                }
            }
            c
        })
        .collect();
    (Table { columns, rows: cells }, rows)
}

fn sample_points(s: &Sampling, len: f64) -> Vec<f64> {
    match s.axis {
        Axis::Polar => linear_grid(s.from.unwrap_or(0.0), s.to.unwrap_or(std::f64::consts::PI), s.points),
        Axis::Radial => {
            let lo = s.from.unwrap_or(1e-3 * len);
            let hi = s.to.unwrap_or(50.0 * len);
            if s.log && lo > 0.0 {
                linear_grid(lo.ln(), hi.ln(), s.points).into_iter().map(f64::exp).collect()
            } else {
                linear_grid(lo, hi, s.points)
            }
        }
    }
}

pub fn cmd_wavefunction(cfg: &RunConfig) -> (Table, Vec<SpectrumRow>) {
    let rows = solve_rows(cfg);
    let axis = match cfg.sampling.axis {
        Axis::Radial => "r",
        Axis::Polar => "theta",
    };
    let columns = with_labels(&["E_R", "axis", "x", "value", "status"]);
    let mut cells = Vec::new();
    for row in &rows {
        match &row.state {
            Ok(s) => {
                for x in sample_points(&cfg.sampling, s.params.length_scale()) {
                    let v = match cfg.sampling.axis {
                        Axis::Radial => s.radial(x),
                        Axis::Polar => s.angular.polar(x),
                    };
                    let (value, status) = match v {
                        Ok(v) => (Cell::Num(v), row.status()),
                        Err(e) => (Cell::Empty, e.status()),
                    };
                    let mut c = labels(row.d, row.qn);
                    c.extend([s.energy.into(), axis.into(), x.into(), value, status.into()]);
                    cells.push(c);
                }
            }
            Err(_) => {
                let mut c = labels(row.d, row.qn);
                c.extend([Cell::Empty, axis.into(), Cell::Empty, Cell::Empty, row.status().into()]);
                cells.push(c);
            }
        }
    }
    (Table { columns, rows: cells }, rows)
}

pub fn cmd_limits(cfg: &RunConfig) -> (Table, Vec<SpectrumRow>) {
    let rows = solve_rows(cfg);
    let columns = with_labels(&[
        "E_R", "E_coulomb", "E_series", "coulomb_rel_diff", "E_NR", "nonrel_residual", "status",
    ]);
    let params: Vec<ModelParams> = cfg.params.clone();
    let cells = rows
        .iter()
        .map(|row| {
            let p = params.iter().find(|p| p.d() == row.d).expect("row dimension comes from params");
            let mut c = labels(row.d, row.qn);
            let coulomb_a = match p.potential() {
                CentralPotential::Coulomb { a } if p.c() == 0.0 => Some(a),
                _ => None,
            };
            let e_r = row.state.as_ref().ok().map(|s| s.energy);
            // the closed form takes the angular momentum j of the converged state
            let closed = match (&row.state, coulomb_a) {
                (Ok(s), Some(a)) => Some((
                    coulomb_energy(p.mu(), a * a, row.qn.n, s.angular.j, row.d),
                    coulomb_series(p.mu(), a * a, row.qn.n, s.angular.j, row.d),
                )),
                _ => None,
            };
            let rel = match (e_r, closed) {
                (Some(e), Some((ec, _))) => Some((e - ec).abs() / ec.abs().max(p.mu())),
                _ => None,
            };
            let nr_res = row.e_nonrel.and_then(|e| nonrel_residual(p, row.qn, e).ok());
            c.extend([
                e_r.into(),
                closed.map(|x| x.0).into(),
                closed.map(|x| x.1).into(),
                rel.into(),
                row.e_nonrel.into(),
                nr_res.into(),
                row.status().into(),
            ]);
            c
        })
        .collect();
    (Table { columns, rows: cells }, rows)
}

/// Verification table plus overall pass flag.
pub fn cmd_verify(cfg: &RunConfig) -> (Table, bool) {
    let tol = Tolerances::default();
    let jobs = cfg.jobs();
    let results: Vec<Vec<Cell>> = jobs
        .par_iter()
        .map(|(p, qn)| {
            let mut c = labels(p.d(), *qn);
            let outcome = solve_bound_state(p, *qn, &SolverConfig::default()).and_then(|s| {
                let chk = check_state(&s, &tol)?;
                let xc = match cfg.grid {
                    Some(n) => {
                        let rmax = cfg.rmax.unwrap_or_else(|| (20.0 * p.length_scale()).max(200.0));
                        Some(matrix_eigen_crosscheck(p, *qn, n, rmax)?)
                    }
                    None => None,
                };
                Ok((chk, xc))
            });
            let pass = match &outcome {
                Ok((chk, xc)) => {
                    let xc_ok = xc.is_none_or(|x| x.converged && x.gap <= CROSSCHECK_TOLERANCE * p.mu());
                    let pass = chk.pass && xc_ok;
                    c.extend([
                        chk.energy.into(),
                        chk.energy_residual.into(),
                        chk.radial_ode.max_rel_residual.into(),
                        chk.angular_ode.max_rel_residual.into(),
                        chk.radial_norm.into(),
                        chk.polar_norm.into(),
                        chk.azimuthal_norm.into(),
                        chk.e_nonrel.into(),
                        chk.nonrel_residual.into(),
                        xc.map(|x| x.e_numeric).into(),
                        xc.map(|x| x.gap).into(),
                        xc.map(|x| x.converged).into(),
                        if pass { "pass" } else { "fail" }.into(),
                    ]);
                    pass
                }
                Err(e) => {
                    c.extend(std::iter::repeat_n(Cell::Empty, 12));
                    c.push(e.status().into());
                    false
                }
            };
            c.push(pass.into());
            c
        })
        .collect();
    let pass = results.iter().all(|r| matches!(r.last(), Some(Cell::Bool(true))));
    let columns = with_labels(&[
        "E_R", "energy_residual", "radial_ode_rel", "angular_ode_rel", "radial_norm", "polar_norm",
        "azimuthal_norm", "E_NR", "nonrel_residual", "xc_E_numeric", "xc_gap", "xc_converged", "status", "pass",
    ]);
    (Table { columns, rows: results }, pass)
}

fn emit(cfg: &RunConfig, table: &Table, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), i32> {
    let bytes = table.render(cfg.format).map_err(|e| {
        let _ = writeln!(stderr, "error: {e}");
        EXIT_CONFIG
    })?;
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, &bytes),
        None => stdout.write_all(&bytes),
    };
    written.map_err(|e| {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        EXIT_CONFIG
    })
}

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_CONFIG,
            };
            let out: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    let cfg = match RunConfig::from_cli(&cli) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_CONFIG;
        }
    };

    let (table, code) = match cfg.mode {
        Mode::Verify => {
            let (t, pass) = cmd_verify(&cfg);
            (t, if pass { EXIT_OK } else { EXIT_VERIFY })
        }
        mode => {
            let (t, rows) = match mode {
                Mode::Spectrum => cmd_spectrum(&cfg),
                Mode::Wavefunction => cmd_wavefunction(&cfg),
                _ => cmd_limits(&cfg),
            };
            let infeasible = rows.iter().filter(|r| r.infeasible()).count();
            let code = if cfg.strict && infeasible > 0 {
                let _ = writeln!(stderr, "error: {infeasible} state(s) infeasible");
                EXIT_INFEASIBLE
            } else {
                EXIT_OK
            };
            (t, code)
        }
    };
    match emit(&cfg, &table, stdout, stderr) {
        Ok(()) => code,
        Err(c) => c,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert_eq!(parse_range("0..2").unwrap(), 0..=2);
        assert_eq!(parse_range("0..=2").unwrap(), 0..=2);
        assert!(parse_range("2..1").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn number_format_round_trips() {
        for v in [0.877_639_391_374_930_8, -1e-300, 1.0 / 3.0, 5e-324, f64::MAX] {
            let s = format_num(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
    }

    #[test]
    fn json_escapes_strings() {
        let t = Table {
            columns: vec!["a", "b"],
            rows: vec![vec![Cell::Str("x\"y".into()), Cell::Num(f64::NAN)]],
        };
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v[0]["a"], "x\"y");
        assert!(v[0]["b"].is_null());
    }
}
