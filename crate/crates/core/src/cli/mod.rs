//! Command-line front end: `analyze`, `inscribe`, `table` and `witness`.
//!
//! Every command builds a [`RunReport`], which is written as JSON to `--out`
//! or stdout. Apart from `timing`, reports are byte-identical across runs
//! with the same flags.
//!
//! Exit codes: 0 success, 2 invalid input, 3 a theory precondition failed
//! (not obtuse, or the direction arc is wider than a right angle),
//! 4 numerical failure.

mod shape;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::{ConvexBody, Point2, Square, TruncatedSector};
use crate::obtuseness::{
    f_delta, is_obtuse, s_star_search, ObtusenessConfig, ObtusenessReport, SStarConfig, SStarResult,
};
use crate::peg::{
    inscribe_via_table, oracle_inscribed_squares, square_set_distance, verify_inscribed, InscribedCheck,
    InscribedSquareResult, OracleConfig, PipelineConfig,
};
use crate::table::{field_from_grid, solve_table, tabletop, FieldKind, GridFieldSpec, LevelSquare, TableSolverConfig};
use crate::triviality::{check_trivial_square, direction_arc, trivial_square_at, DirectionArc, TrivialityCheck};

pub use shape::{ShapeSpec, DEFAULT_SAMPLES};
use svg::Figure;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{error}{}", hint.as_ref().map(|h| format!(" (hint: {h})")).unwrap_or_default())]
    Lib { error: Error, hint: Option<String> },
}

impl From<Error> for CliError {
    fn from(error: Error) -> Self {
        CliError::Lib { error, hint: None }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io { .. } => 2,
            CliError::Lib { error, .. } => match error {
                Error::NotObtuse { .. } | Error::ArcTooWide { .. } => 3,
                Error::NoSolutionFound { .. } | Error::SolverFailed(_) | Error::DegenerateY { .. } => 4,
                _ => 2,
            },
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[derive(Parser, Debug)]
#[command(name = "squarepeg", version, about = "Obtuse convex bodies, level squares and inscribed squares")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ShapeArgs {
    #[arg(
        long,
        conflicts_with = "shape_json",
        help = "Inline shape: ngon:N[:R], disk[:R], ellipse:A,B, polygon:x,y;x,y;... or a JSON object"
    )]
    pub shape: Option<String>,
    /// JSON shape file
    #[arg(long, value_name = "PATH")]
    pub shape_json: Option<PathBuf>,
    /// Boundary samples for disks and ellipses given inline
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
}

impl ShapeArgs {
    fn spec(&self) -> Result<Option<ShapeSpec>, CliError> {
        match (&self.shape, &self.shape_json) {
            (Some(text), _) => ShapeSpec::parse_inline(text, self.samples).map(Some),
            (None, Some(path)) => ShapeSpec::from_json(&read_file(path)?)
                .map(Some)
                .map_err(|e| CliError::Parse(format!("{}: {e}", path.display()))),
            (None, None) => Ok(None),
        }
    }

    fn require(&self) -> Result<(ShapeSpec, ConvexBody), CliError> {
        let spec = self
            .spec()?
            .ok_or_else(|| CliError::Parse("a shape is required: pass --shape or --shape-json".into()))?;
        let body = spec.to_body()?;
        Ok((spec, body))
    }
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write the JSON report here instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Write an SVG figure
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Table,
    Oracle,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Obtuseness verdict, sector certificates and the threshold s*
    Analyze {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 1e-3)]
        delta: f64,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 256)]
        boundary_samples: usize,
        #[arg(long, default_value_t = 64)]
        dir_samples: usize,
        /// Write the boundary profile of f_delta as CSV
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Find an inscribed square via the tabletop pipeline and/or the oracle
    Inscribe {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Vertex-to-boundary tolerance for verification and the oracle
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        /// Boundary samples used by the oracle
        #[arg(long, default_value_t = 256)]
        boundary_samples: usize,
    },
    /// Solve for a level square of a height field
    Table {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Grid height field (JSON); without a shape its bounding box is the body
        #[arg(long, value_name = "PATH")]
        field: Option<PathBuf>,
        #[arg(long)]
        side: f64,
        #[arg(long, default_value_t = 5)]
        grid_starts: usize,
        #[arg(long, default_value_t = 8)]
        rotations: usize,
        #[arg(long, default_value_t = 1e-8)]
        level_tol: f64,
        /// Skip level squares at height zero with no interior vertex
        #[arg(long)]
        reject_trivial: bool,
    },
    /// Build a trivial square at a boundary point
    Witness {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Boundary point "x,y"
        #[arg(long, conflicts_with = "auto", allow_hyphen_values = true)]
        point: Option<String>,
        /// Use the vertex with the smallest interior angle
        #[arg(long)]
        auto: bool,
        #[arg(long, default_value_t = 1.0)]
        side: f64,
    },
}

impl Command {
    fn output(&self) -> &OutputArgs {
        match self {
            Command::Analyze { output, .. }
            | Command::Inscribe { output, .. }
            | Command::Table { output, .. }
            | Command::Witness { output, .. } => output,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldEcho {
    pub path: String,
    pub bbox: [f64; 4],
    pub nx: usize,
    pub ny: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub shape: Option<ShapeSpec>,
    pub field: Option<FieldEcho>,
    pub body: ConvexBody,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeConfig {
    pub obtuseness: ObtusenessConfig,
    pub s_star: SStarConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeResult {
    pub obtuse: bool,
    pub s_star: f64,
    pub diameter: f64,
    pub obtuseness: ObtusenessReport,
    pub s_star_search: SStarResult,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InscribeConfig {
    pub method: Method,
    pub eps: f64,
    pub pipeline: PipelineConfig,
    pub oracle: OracleConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckedSquare {
    pub square: Square,
    pub check: InscribedCheck,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InscribeResult {
    pub table: Option<InscribedSquareResult>,
    pub table_check: Option<InscribedCheck>,
    /// Set when `--method both` fell back to the oracle.
    pub table_error: Option<String>,
    pub oracle: Option<Vec<CheckedSquare>>,
    /// Vertex-set distance from the pipeline square to the nearest oracle
    /// square, divided by the diameter.
    pub relative_agreement: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableConfig {
    pub side: f64,
    pub solver: TableSolverConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableResult {
    pub field: FieldKind,
    pub level: LevelSquare,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessConfig {
    pub side: f64,
    pub auto: bool,
    pub angular_resolution: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessResult {
    pub point: Point2,
    pub vertex: Option<usize>,
    pub arc: DirectionArc,
    pub square: Square,
    pub check: TrivialityCheck,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum CommandOutput {
    Analyze { config: AnalyzeConfig, result: AnalyzeResult },
    Inscribe { config: InscribeConfig, result: InscribeResult },
    Table { config: TableConfig, result: TableResult },
    Witness { config: WitnessConfig, result: WitnessResult },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: String,
    pub input: InputEcho,
    pub run: CommandOutput,
    pub timing: Timing,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only serializable data")
    }
}

/// A report plus any side artifacts requested by flags.
pub struct Outcome {
    pub report: RunReport,
    pub svg: Option<String>,
    pub csv: Option<String>,
}

#[derive(Serialize)]
struct ProfileRow {
    index: usize,
    kind: &'static str,
    x: f64,
    y: f64,
    f_delta: f64,
}

fn analyze(
    shape: &ShapeArgs,
    delta: f64,
    grid: usize,
    boundary_samples: usize,
    dir_samples: usize,
    want_csv: bool,
) -> Result<(InputEcho, CommandOutput, Figure, Option<String>), CliError> {
    let (spec, body) = shape.require()?;
    let obtuseness = ObtusenessConfig {
        delta,
        dir_samples,
        boundary_samples,
        angle_margin: 0.0,
    };
    let s_cfg = SStarConfig {
        delta,
        dir_samples,
        grid,
        boundary_samples,
        ..SStarConfig::default()
    };
    let report = is_obtuse(&body, &obtuseness)?;
    let search = s_star_search(&body, &s_cfg)?;

    let mut fig = Figure::new(&body, "obtuseness analysis")
        .point(report.worst_point, "#b02020", format!("smallest boundary f_delta = {:.6}", report.worst_value));
    if let Some(cert) = report.per_point.iter().find(|bv| bv.point == report.worst_point).and_then(|bv| bv.certificate) {
        fig = fig.sector(&cert.sector(), "#d08020", "sector at that point");
    }
    if let Some(cert) = f_delta(&body, search.minimizer, delta, dir_samples)?.certificate {
        fig = fig.sector(&cert.sector(), "#2a8a3a", format!("s* = {:.6}", search.s_star));
    }

    let csv = if want_csv {
        let n = body.len();
        let mut w = csv::Writer::from_writer(Vec::new());
        for (index, bv) in report.per_point.iter().enumerate() {
            w.serialize(ProfileRow {
                index,
                kind: if index < n { "vertex" } else { "sample" },
                x: bv.point.x,
                y: bv.point.y,
                f_delta: bv.f_delta,
            })
            .map_err(|e| CliError::Parse(format!("csv: {e}")))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Parse(format!("csv: {e}")))?;
        Some(String::from_utf8(bytes).expect("csv output is UTF-8"))
    } else {
        None
    };

    let out = CommandOutput::Analyze {
        config: AnalyzeConfig {
            obtuseness,
            s_star: s_cfg,
        },
        result: AnalyzeResult {
            obtuse: report.obtuse,
            s_star: search.s_star,
            diameter: body.diameter(),
            obtuseness: report,
            s_star_search: search,
        },
    };
    let input = InputEcho {
        shape: Some(spec),
        field: None,
        body,
    };
    Ok((input, out, fig, csv))
}

fn inscribe(
    shape: &ShapeArgs,
    method: Method,
    eps: f64,
    boundary_samples: usize,
) -> Result<(InputEcho, CommandOutput, Figure), CliError> {
    let (spec, body) = shape.require()?;
    let pipeline = PipelineConfig::default();
    let oracle_cfg = OracleConfig {
        n_boundary: boundary_samples,
        eps,
    };
    let mut fig = Figure::new(&body, "inscribed square");

    let mut table = None;
    let mut table_error = None;
    if method != Method::Oracle {
        match inscribe_via_table(&body, &pipeline) {
            Ok(r) => table = Some(r),
            Err(e @ Error::NotObtuse { .. }) if method == Method::Both => table_error = Some(e.to_string()),
            Err(error @ Error::NotObtuse { .. }) => {
                return Err(CliError::Lib {
                    error,
                    hint: Some("the tabletop pipeline needs an obtuse body; use --method oracle".into()),
                })
            }
            Err(e) => return Err(e.into()),
        }
    }
    let oracle = if method != Method::Table {
        let squares = oracle_inscribed_squares(&body, &oracle_cfg)?;
        Some(
            squares
                .into_iter()
                .map(|square| CheckedSquare {
                    check: verify_inscribed(&body, &square, eps),
                    square,
                })
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };

    if let Some(r) = &table {
        if let Some(trace) = &r.trace {
            fig = fig
                .square(&trace.level_square, "#d08020", true, format!("level square b (y = {:.6})", trace.y))
                .point(trace.centroid, "#555555", "tabletop apex");
        }
        fig = fig.square(&r.square, "#b02020", false, format!("scaled square a, side {:.6}", r.square.side));
    }
    if let Some(list) = &oracle {
        for (i, cs) in list.iter().take(8).enumerate() {
            fig = fig.square(&cs.square, "#2a8a3a", true, format!("oracle square {i}, side {:.6}", cs.square.side));
        }
    }

    let diam = body.diameter();
    let relative_agreement = match (&table, &oracle) {
        (Some(r), Some(list)) if !list.is_empty() => Some(
            list.iter()
                .map(|cs| square_set_distance(&r.square, &cs.square))
                .fold(f64::INFINITY, f64::min)
                / diam,
        ),
        _ => None,
    };
    let out = CommandOutput::Inscribe {
        config: InscribeConfig {
            method,
            eps,
            pipeline,
            oracle: oracle_cfg,
        },
        result: InscribeResult {
            table_check: table.as_ref().map(|r| verify_inscribed(&body, &r.square, eps)),
            table,
            table_error,
            oracle,
            relative_agreement,
        },
    };
    let input = InputEcho {
        shape: Some(spec),
        field: None,
        body,
    };
    Ok((input, out, fig))
}

fn table(
    shape: &ShapeArgs,
    field_path: Option<&Path>,
    side: f64,
    solver: TableSolverConfig,
) -> Result<(InputEcho, CommandOutput, Figure), CliError> {
    let spec = shape.spec()?;
    let grid = match field_path {
        Some(path) => {
            let text = read_file(path)?;
            let grid: GridFieldSpec = serde_json::from_str(&text)
                .map_err(|e| CliError::Parse(format!("{}: field JSON: {e}", path.display())))?;
            Some((path.display().to_string(), grid))
        }
        None => None,
    };
    let body = match (&spec, &grid) {
        (Some(spec), _) => spec.to_body()?,
        (None, Some((_, g))) => {
            let [x0, y0, x1, y1] = g.bbox;
            ConvexBody::polygon(&[
                Point2::new(x0, y0),
                Point2::new(x1, y0),
                Point2::new(x1, y1),
                Point2::new(x0, y1),
            ])?
        }
        (None, None) => {
            return Err(CliError::Parse(
                "table needs --shape/--shape-json (tabletop field) or --field".into(),
            ))
        }
    };
    let (field, field_echo) = match grid {
        Some((path, g)) => {
            let echo = FieldEcho {
                path,
                bbox: g.bbox,
                nx: g.nx,
                ny: g.ny,
            };
            (field_from_grid(&body, g)?, Some(echo))
        }
        None => (tabletop(&body), None),
    };
    let level = solve_table(&field, side, &solver)?;

    let mut fig = Figure::new(&body, "level square").square(
        &level.square,
        "#b02020",
        false,
        format!("level square, y = {:.6}, residual = {:.1e}", level.y, level.residual),
    );
    if let Some(t) = field.as_tabletop() {
        fig = fig.point(t.origin(), "#555555", "tabletop apex");
    }
    let out = CommandOutput::Table {
        config: TableConfig { side, solver },
        result: TableResult {
            field: field.kind(),
            level,
        },
    };
    let input = InputEcho {
        shape: spec,
        field: field_echo,
        body,
    };
    Ok((input, out, fig))
}

/// Angular samples used to cross-check direction arcs.
const WITNESS_ARC_RESOLUTION: usize = 720;

fn parse_point(text: &str) -> Result<Point2, CliError> {
    let (x, y) = text
        .split_once(',')
        .ok_or_else(|| CliError::Parse(format!("--point: expected \"x,y\", got {text:?}")))?;
    let num = |field: &str, s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Parse(format!("--point {field}: expected a number, got {s:?}")))
    };
    Ok(Point2::new(num("x", x)?, num("y", y)?))
}

fn witness(
    shape: &ShapeArgs,
    point: Option<&str>,
    auto: bool,
    side: f64,
) -> Result<(InputEcho, CommandOutput, Figure), CliError> {
    let (spec, body) = shape.require()?;
    let (x, vertex) = match (point, auto) {
        (Some(p), _) => (parse_point(p)?, None),
        (None, true) => {
            let (i, _) = body.min_angle_vertex();
            (body.vertex(i), Some(i))
        }
        (None, false) => return Err(CliError::Parse("witness needs --point \"x,y\" or --auto".into())),
    };
    let arc = direction_arc(&body, x, WITNESS_ARC_RESOLUTION)?;
    let square = trivial_square_at(&body, x, side).map_err(|error| {
        let hint = matches!(error, Error::ArcTooWide { .. }).then(|| {
            if auto {
                "this is the smallest interior angle, so every boundary point admits an obtuse sector".to_string()
            } else {
                "this point admits an obtuse sector; trivial squares only exist at corners of at most a right angle"
                    .to_string()
            }
        });
        CliError::Lib { error, hint }
    })?;
    let check = check_trivial_square(&body, &square, side, body.default_tol());

    let mut fig = Figure::new(&body, "trivial square")
        .square(&square, "#b02020", false, format!("trivial square, side {side}"))
        .point(x, "#1f3b73", "base point");
    if let Ok(sec) = TruncatedSector::new(x, arc.phi.unit_vector() * side, arc.width().max(1e-9)) {
        fig = fig.sector(&sec, "#d08020", format!("direction arc, width {:.6} rad", arc.width()));
    }
    let verified = check.passes;
    let out = CommandOutput::Witness {
        config: WitnessConfig {
            side,
            auto,
            angular_resolution: WITNESS_ARC_RESOLUTION,
        },
        result: WitnessResult {
            point: x,
            vertex,
            arc,
            square,
            check,
            verified,
        },
    };
    let input = InputEcho {
        shape: Some(spec),
        field: None,
        body,
    };
    Ok((input, out, fig))
}

/// Runs a parsed command without touching the filesystem for output.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let mut csv = None;
    let (input, run, fig) = match &cli.command {
        Command::Analyze {
            shape,
            delta,
            grid,
            boundary_samples,
            dir_samples,
            csv: csv_path,
            ..
        } => {
            let (i, o, f, c) = analyze(shape, *delta, *grid, *boundary_samples, *dir_samples, csv_path.is_some())?;
            csv = c;
            (i, o, f)
        }
        Command::Inscribe {
            shape,
            method,
            eps,
            boundary_samples,
            ..
        } => inscribe(shape, *method, *eps, *boundary_samples)?,
        Command::Table {
            shape,
            field,
            side,
            grid_starts,
            rotations,
            level_tol,
            reject_trivial,
            ..
        } => {
            let solver = TableSolverConfig {
                grid_starts: *grid_starts,
                rotations: *rotations,
                level_tol: *level_tol,
                reject_trivial: *reject_trivial,
                ..TableSolverConfig::default()
            };
            table(shape, field.as_deref(), *side, solver)?
        }
        Command::Witness {
            shape,
            point,
            auto,
            side,
            ..
        } => witness(shape, point.as_deref(), *auto, *side)?,
    };
    let svg = cli.command.output().svg.as_ref().map(|_| fig.render());
    let report = RunReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        input,
        run,
        timing: Timing {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    };
    Ok(Outcome { report, svg, csv })
}

/// Parses `args`, runs the command, writes outputs, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli).and_then(|outcome| emit(&cli, &outcome)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), CliError> {
    let output = cli.command.output();
    let json = outcome.report.to_json();
    match &output.out {
        Some(path) => write_file(path, &json)?,
        None => println!("{json}"),
    }
    if let (Some(path), Some(svg)) = (&output.svg, &outcome.svg) {
        write_file(path, svg)?;
    }
    if let (Command::Analyze { csv: Some(path), .. }, Some(csv)) = (&cli.command, &outcome.csv) {
        write_file(path, csv)?;
    }
    Ok(())
}
