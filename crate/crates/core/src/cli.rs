//! Command-line front end.
//!
//! Exit codes: 0 success, 1 numeric or validation failure, 2 argument error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::factors::{FactorKind, SmoothnessOrder};
use crate::grid::{GridSpec, Indicator};
use crate::io::{
    format_sig12, read_descriptor, read_samples, write_descriptor, write_series, GridRequest,
    SampleFormat,
};
use crate::kernel::{Truncation, MAX_AUTO_BLOCKS};
use crate::poly::{periodic_cubic, periodic_linear, periodic_quadratic_midpoint};
use crate::spline::{max_deviation, sample_points, Evaluable, TrigSpline};
use crate::trig_poly::fit;
use crate::EXAMPLE_VALUES;

const DEFAULT_ORDER: u32 = 3;
const DEFAULT_COUNT: usize = 1024;

#[derive(Debug, Parser)]
#[command(
    name = "trigspline",
    version,
    about = "Interpolating trigonometric splines on uniform periodic grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the grid nodes, one per line.
    Nodes {
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value_t = 0)]
        indicator: u8,
    },
    /// Build a spline from samples and write its descriptor.
    Fit {
        #[command(flatten)]
        spline: SplineArgs,
        /// Descriptor path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a spline (or one of its derivatives) at the given points.
    Eval {
        #[command(flatten)]
        spline: SplineArgs,
        #[arg(long = "t", required = true, num_args = 1.., allow_negative_numbers = true)]
        points: Vec<f64>,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        deriv: i64,
    },
    /// Write a dense `t,value` curve.
    Sample {
        #[command(flatten)]
        spline: SplineArgs,
        #[arg(long, default_value_t = DEFAULT_COUNT)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximum deviation between the spline and another family or a reference curve.
    Compare {
        #[command(flatten)]
        spline: SplineArgs,
        /// v1, v2, v3, linear, quadratic, cubic or trigpoly.
        #[arg(long)]
        against: String,
        #[arg(long, default_value_t = DEFAULT_COUNT)]
        count: usize,
    },
    /// Write the nine-sample demonstration curves and deviation series as CSV files.
    PaperExample {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_COUNT)]
        count: usize,
        #[command(flatten)]
        truncation: TruncationArgs,
    },
}

#[derive(Debug, Args)]
struct TruncationArgs {
    /// Number of alias blocks M.
    #[arg(long, conflicts_with = "tolerance")]
    blocks: Option<u64>,
    /// Target tail bound; converted to M (default 1e-9).
    #[arg(long)]
    tolerance: Option<f64>,
}

impl TruncationArgs {
    fn resolve(&self) -> Truncation {
        match (self.blocks, self.tolerance) {
            (Some(m), _) => Truncation::Blocks(m),
            (None, Some(tol)) => Truncation::Tolerance(tol),
            (None, None) => Truncation::Auto,
        }
    }
}

#[derive(Debug, Args)]
struct SplineArgs {
    /// Load a spline descriptor written by `fit`.
    #[arg(long, conflicts_with_all = ["input", "example_data", "kind", "r", "nodes", "indicator", "blocks", "tolerance", "format"])]
    descriptor: Option<PathBuf>,
    /// Sample file (CSV or JSON).
    #[arg(long, conflicts_with = "example_data")]
    input: Option<PathBuf>,
    /// Use the built-in nine-sample data set.
    #[arg(long = "paper-data")]
    example_data: bool,
    /// Input format; inferred from the extension when omitted.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long)]
    indicator: Option<u8>,
    /// Factor family: v1, v2 or v3 (default v3).
    #[arg(long)]
    kind: Option<String>,
    /// Smoothness order r (default 3).
    #[arg(long)]
    r: Option<u32>,
    #[command(flatten)]
    truncation: TruncationArgs,
}

struct Source {
    values: Vec<f64>,
    grid: GridSpec,
    order: SmoothnessOrder,
    truncation: Truncation,
}

impl SplineArgs {
    fn source(&self) -> Result<Source> {
        let indicator = self.indicator.map(Indicator::try_from).transpose()?;
        let order = SmoothnessOrder::new(self.r.unwrap_or(DEFAULT_ORDER))?;
        let truncation = self.truncation.resolve();
        let (values, grid) = if self.example_data {
            let grid = GridSpec::new(
                self.nodes.unwrap_or(EXAMPLE_VALUES.len()),
                indicator.unwrap_or(Indicator::Aligned),
            )?;
            (EXAMPLE_VALUES.to_vec(), grid)
        } else if let Some(path) = &self.input {
            let format = match &self.format {
                Some(f) => f.parse()?,
                None if path.extension().is_some_and(|e| e == "json") => SampleFormat::Json,
                None => SampleFormat::Csv,
            };
            let file = fs::File::open(path)?;
            let set = read_samples(
                file,
                format,
                GridRequest {
                    nodes: self.nodes,
                    indicator,
                },
            )?;
            (set.values().to_vec(), set.grid())
        } else {
            return Err(Error::Input(
                "no data source: pass --descriptor, --input or --paper-data".into(),
            ));
        };
        Ok(Source {
            values,
            grid,
            order,
            truncation,
        })
    }

    fn kind(&self) -> Result<FactorKind> {
        self.kind.as_deref().unwrap_or("v3").parse()
    }

    fn spline(&self) -> Result<TrigSpline> {
        if let Some(path) = &self.descriptor {
            return read_descriptor(&fs::read_to_string(path)?);
        }
        let source = self.source()?;
        build_reported(
            &source.values,
            source.grid,
            self.kind()?,
            source.order,
            source.truncation,
        )
    }
}

/// Builds and reports the truncation on standard error.
fn build_reported(
    values: &[f64],
    grid: GridSpec,
    kind: FactorKind,
    order: SmoothnessOrder,
    truncation: Truncation,
) -> Result<TrigSpline> {
    let spline = TrigSpline::build(values, grid, kind, order, truncation)?;
    let policy = spline.policy();
    let capped =
        if policy.blocks == MAX_AUTO_BLOCKS && truncation != Truncation::Blocks(MAX_AUTO_BLOCKS) {
            " (block cap reached)"
        } else {
            ""
        };
    eprintln!(
        "{kind} r={order} N={} I={}: M = {}, tail bound = {:e}{capped}",
        grid.len(),
        grid.indicator(),
        policy.blocks,
        policy.tail_bound
    );
    Ok(spline)
}

/// Parses `args` (program name first), runs the command, prints errors, returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(command: Command) -> Result<()> {
    let stdout = io::stdout();
    match command {
        Command::Nodes { nodes, indicator } => {
            let grid = GridSpec::new(nodes, Indicator::try_from(indicator)?)?;
            let mut out = stdout.lock();
            for t in grid.nodes() {
                writeln!(out, "{}", format_sig12(t))?;
            }
        }
        Command::Fit { spline, out } => {
            let text = write_descriptor(&spline.spline()?) + "\n";
            match out {
                Some(path) => write_atomic(&path, text.as_bytes())?,
                None => stdout.lock().write_all(text.as_bytes())?,
            }
        }
        Command::Eval {
            spline,
            points,
            deriv,
        } => {
            if deriv < 0 {
                return Err(Error::Domain(format!(
                    "derivative order must be nonnegative, got {deriv}"
                )));
            }
            let deriv = u32::try_from(deriv)
                .map_err(|_| Error::Domain("derivative order too large".into()))?;
            let spline = spline.spline()?;
            let mut lines = String::new();
            let values = spline.eval_derivative_many(&points, deriv)?;
            for (t, v) in points.into_iter().zip(values) {
                lines.push_str(&format!("{},{}\n", format_sig12(t), format_sig12(v)));
            }
            stdout.lock().write_all(lines.as_bytes())?;
        }
        Command::Sample { spline, count, out } => {
            let spline = spline.spline()?;
            let rows: Vec<Vec<f64>> = spline
                .sample(count)?
                .into_iter()
                .map(|(t, v)| vec![t, v])
                .collect();
            let mut buf = Vec::new();
            write_series(&mut buf, &["t", "value"], &rows)?;
            match out {
                Some(path) => write_atomic(&path, &buf)?,
                None => stdout.lock().write_all(&buf)?,
            }
        }
        Command::Compare {
            spline,
            against,
            count,
        } => {
            let deviation = compare(&spline, &against, count)?;
            writeln!(stdout.lock(), "max_deviation,{}", format_sig12(deviation))?;
        }
        Command::PaperExample {
            out,
            count,
            truncation,
        } => {
            paper_example(&out, count, truncation.resolve())?;
        }
    }
    Ok(())
}

fn compare(args: &SplineArgs, against: &str, count: usize) -> Result<f64> {
    let spline = args.spline()?;
    let (values, grid) = (spline.values(), *spline.grid());
    let other: Box<dyn Evaluable> = match against.to_ascii_lowercase().as_str() {
        "linear" => Box::new(periodic_linear(values, &grid)?),
        "quadratic" => Box::new(periodic_quadratic_midpoint(values, &grid)?),
        "cubic" => Box::new(periodic_cubic(values, &grid)?),
        "trigpoly" => Box::new(fit(values, &grid)?),
        kind => {
            let kind: FactorKind = kind.parse().map_err(|_| {
                Error::Domain(format!(
                    "unknown comparison target {against:?}, expected v1, v2, v3, linear, quadratic, cubic or trigpoly"
                ))
            })?;
            let truncation = Truncation::Blocks(spline.policy().blocks);
            Box::new(build_reported(
                values,
                grid,
                kind,
                spline.order(),
                truncation,
            )?)
        }
    };
    max_deviation(&spline, other.as_ref(), count)
}

/// File name, column labels and rows of one output file.
pub type NamedSeries = (String, [&'static str; 2], Vec<Vec<f64>>);

/// The fourteen demonstration series, by file name.
pub fn paper_example_series(count: usize, truncation: Truncation) -> Result<Vec<NamedSeries>> {
    let ts = sample_points(count, 0.0)?;
    let curve = |f: &dyn Evaluable| -> Vec<Vec<f64>> {
        ts.iter()
            .zip(f.values_at(&ts))
            .map(|(&t, v)| vec![t, v])
            .collect()
    };
    let order = |r| SmoothnessOrder::new(r);

    let mut files = Vec::new();
    for indicator in [Indicator::Aligned, Indicator::HalfStep] {
        let grid = GridSpec::new(EXAMPLE_VALUES.len(), indicator)?;
        let poly = fit(&EXAMPLE_VALUES, &grid)?;
        files.push((
            format!("trigpoly_I{indicator}.csv"),
            ["t", "value"],
            curve(&poly),
        ));
    }
    for indicator in [Indicator::Aligned, Indicator::HalfStep] {
        let grid = GridSpec::new(EXAMPLE_VALUES.len(), indicator)?;
        for r in [1, 2, 3] {
            let spline =
                build_reported(&EXAMPLE_VALUES, grid, FactorKind::V1, order(r)?, truncation)?;
            files.push((
                format!("spline_v1_r{r}_I{indicator}.csv"),
                ["t", "value"],
                curve(&spline),
            ));
        }
    }
    for indicator in [Indicator::Aligned, Indicator::HalfStep] {
        let grid = GridSpec::new(EXAMPLE_VALUES.len(), indicator)?;
        for r in [2, 4, 6] {
            let v1 = build_reported(&EXAMPLE_VALUES, grid, FactorKind::V1, order(r)?, truncation)?;
            let v3 = build_reported(&EXAMPLE_VALUES, grid, FactorKind::V3, order(r)?, truncation)?;
            let rows = ts
                .iter()
                .zip(v1.eval_many(&ts).into_iter().zip(v3.eval_many(&ts)))
                .map(|(&t, (a, b))| vec![t, a - b])
                .collect();
            files.push((
                format!("deviation_E{indicator}_r{r}.csv"),
                ["t", "deviation"],
                rows,
            ));
        }
    }
    Ok(files)
}

fn paper_example(dir: &Path, count: usize, truncation: Truncation) -> Result<()> {
    // everything is computed before the first file is written
    let files = paper_example_series(count, truncation)?;
    let mut rendered = Vec::with_capacity(files.len());
    for (name, labels, rows) in &files {
        let mut buf = Vec::new();
        write_series(&mut buf, labels, rows)?;
        rendered.push((name, buf));
    }
    fs::create_dir_all(dir)?;
    for (name, buf) in rendered {
        write_atomic(&dir.join(name), &buf)?;
    }
    eprintln!("wrote {} files to {}", files.len(), dir.display());
    Ok(())
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}
