use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use coneval_core::arrangement::{gamma_cells, gamma_region};
use coneval_core::gamma::{gamma_prime_y_eval, gamma_y_eval, gamma_y_on_sum, Mutation};
use coneval_core::verify::{evaluate, run_suite, CheckReport, SuiteOptions, SUITES};
use coneval_core::{Cone, FaceId, QVector};
use serde_json::{json, Value};

use crate::format;
use crate::svg::{self, Palette, ViewBox};
use crate::CliError;

/// Exact computations with polyhedral cones and the valuations Γ_y.
///
/// CONE arguments are a path to a JSON file, inline JSON, or `-` for
/// standard input. Points are comma separated rationals such as `1,1/2`.
#[derive(Debug, Parser)]
#[command(name = "coneval", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Variant {
    Gamma,
    GammaPrime,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Face lattice: dimensions, active facets, rays and subfaces.
    Faces { cone: String },
    /// The dual cone.
    Dual { cone: String },
    /// The angle cone A(F, C) of the face with the given index.
    Angle {
        cone: String,
        #[arg(long)]
        face: usize,
    },
    /// Γ_y([C])(x), or Γ'_y([C])(x), as an exact rational.
    Eval {
        #[arg(required_unless_present = "sum", conflicts_with = "sum")]
        cone: Option<String>,
        /// Evaluate a formal indicator sum instead of a cone; without
        /// --y this prints the value of the sum itself at x.
        #[arg(long)]
        sum: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "sum")]
        y: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, default_value = "gamma")]
        variant: Variant,
    },
    /// Cells of the support of Γ_y([C]) with their values, as JSON.
    Region {
        cone: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Also render the region (dimension 2 only).
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Visible rectangle XMIN,XMAX,YMIN,YMAX of the SVG.
        #[arg(long = "box", allow_hyphen_values = true, default_value = "-4,4,-4,4")]
        view: String,
        /// Draw the ball over [0, y] that contains the support.
        #[arg(long)]
        circle: bool,
        /// List the cells where Γ_y vanishes as well.
        #[arg(long)]
        all: bool,
    },
    /// Run identity suites; exit status 1 if any check fails.
    Check {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, env = "CONEVAL_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        dim_min: usize,
        #[arg(long, default_value_t = 4)]
        dim_max: usize,
        /// Points (or point pairs) per cone.
        #[arg(long, default_value_t = 50)]
        points: usize,
        /// Skip the fixed catalog of degenerate cones.
        #[arg(long)]
        no_catalog: bool,
        /// Stop a suite after this many failures.
        #[arg(long, default_value_t = 20)]
        max_failures: usize,
        /// Report failures as found, without shrinking them.
        #[arg(long)]
        no_minimize: bool,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Re-evaluate the failures recorded in a report instead.
        #[arg(long, conflicts_with = "report")]
        replay: Option<PathBuf>,
        #[arg(long, hide = true, default_value = "none")]
        mutation: String,
    },
    /// Write the two planar pictures of Γ_y regions as SVG files into DIR.
    Figures { dir: PathBuf },
}

fn read_source(arg: &str) -> Result<String, CliError> {
    let t = arg.trim_start();
    if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(format!("reading standard input: {e}")))?;
        Ok(s)
    } else if t.starts_with('{') || t.starts_with('[') {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::Io(format!("reading {arg}: {e}")))
    }
}

fn read_json(arg: &str) -> Result<Value, CliError> {
    let text = read_source(arg)?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))
}

fn read_cone(arg: &str) -> Result<Cone, CliError> {
    format::parse_cone(&read_json(arg)?)
}

fn point(s: &str, dim: usize, name: &str) -> Result<QVector, CliError> {
    let p = format::parse_point(s)?;
    if p.dim() != dim {
        return Err(CliError::Input(format!("{name} has {} coordinates, expected {dim}", p.dim())));
    }
    Ok(p)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    format::to_text(v)
}

/// Runs one command, printing to stdout; returns the exit status.
pub fn run(cli: Cli, out: &mut impl io::Write) -> Result<u8, CliError> {
    let mut emit = |s: &str| out.write_all(s.as_bytes()).map_err(|e| CliError::Io(format!("writing output: {e}")));
    match cli.command {
        Command::Faces { cone } => emit(&pretty(&format::faces(&read_cone(&cone)?)))?,
        Command::Dual { cone } => emit(&pretty(&format::cone(&read_cone(&cone)?.dual())))?,
        Command::Angle { cone, face } => {
            let c = read_cone(&cone)?;
            let n = c.face_lattice().len();
            if face >= n {
                return Err(CliError::Input(format!("face index {face} out of range; this cone has {n} faces")));
            }
            emit(&pretty(&format::cone(&c.angle_cone(FaceId(face))?)))?;
        }
        Command::Eval { cone: Some(cone), y: Some(y), x, variant, .. } => {
            let c = read_cone(&cone)?;
            let (y, x) = (point(&y, c.dim(), "y")?, point(&x, c.dim(), "x")?);
            let v = match variant {
                Variant::Gamma => gamma_y_eval(&c, &y, &x)?,
                Variant::GammaPrime => gamma_prime_y_eval(&c, &y, &x)?,
            };
            emit(&format!("{v}\n"))?;
        }
        Command::Eval { sum: Some(sum), y, x, variant, .. } => {
            let s = format::parse_formal_sum(&read_json(&sum)?)?;
            let x = point(&x, s.dim(), "x")?;
            let v = match (y, variant) {
                (None, _) => s.evaluate(&x)?,
                (Some(y), Variant::Gamma) => gamma_y_on_sum(&s, &point(&y, s.dim(), "y")?, &x)?,
                (Some(_), Variant::GammaPrime) => {
                    return Err(CliError::Usage("--variant gamma-prime takes a cone, not a formal sum".into()))
                }
            };
            emit(&format!("{v}\n"))?;
        }
        Command::Eval { .. } => return Err(CliError::Usage("eval needs a cone and --y, or --sum".into())),
        Command::Region { cone, y, svg: svg_path, view, circle, all } => {
            let c = read_cone(&cone)?;
            let y = point(&y, c.dim(), "y")?;
            let view = ViewBox::parse(&view)?;
            if svg_path.is_some() && c.dim() != 2 {
                return Err(CliError::Input(format!("SVG output needs dimension 2, got {}", c.dim())));
            }
            let region = gamma_region(&c, &y)?;
            let listed = if all { gamma_cells(&c, &y)? } else { region.clone() };
            if let Some(path) = svg_path {
                let opts = svg::Options { view, circle, palette: Palette::default() };
                write_file(&path, &svg::render(&c, &y, &region, &opts)?)?;
            }
            emit(&pretty(&format::cells(&listed)))?;
        }
        Command::Check {
            suite,
            seed,
            trials,
            dim_min,
            dim_max,
            points,
            no_catalog,
            max_failures,
            no_minimize,
            report,
            replay,
            mutation,
        } => {
            let mutation = format::parse_mutation(&mutation)?;
            if let Some(path) = replay {
                return replay_report(&path, mutation, &mut emit);
            }
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let options = SuiteOptions {
                trials,
                seed,
                dim_min,
                dim_max,
                points,
                catalog: !no_catalog,
                max_failures: Some(max_failures.max(1)),
                minimize: !no_minimize,
                mutation,
                ..SuiteOptions::default()
            };
            let mut reports: Vec<CheckReport> = Vec::new();
            for name in names {
                let r = run_suite(name, &options)?;
                emit(&summary_line(&r))?;
                reports.push(r);
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            emit(&format!("{} of {} suites passed\n", reports.len() - failed, reports.len()))?;
            if let Some(path) = report {
                let v = json!({
                    "seed": seed.to_string(),
                    "trials": trials,
                    "dim_min": dim_min,
                    "dim_max": dim_max,
                    "points": points,
                    "mutation": format::mutation_name(mutation),
                    "passed": failed == 0,
                    "suites": reports.iter().map(format::report).collect::<Vec<_>>(),
                });
                write_file(&path, &pretty(&v))?;
            }
            return Ok(u8::from(failed > 0));
        }
        Command::Figures { dir } => {
            fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("creating {}: {e}", dir.display())))?;
            for fig in FIGURES {
                let (c, y) = fig.configuration();
                let region = gamma_region(&c, &y)?;
                let view = ViewBox::parse(fig.view).expect("figure boxes are well formed");
                let opts = svg::Options { view, circle: false, palette: Palette::default() };
                let path = dir.join(fig.file);
                write_file(&path, &svg::render(&c, &y, &region, &opts)?)?;
                emit(&format!("{}\n", path.display()))?;
            }
        }
    }
    Ok(0)
}

fn summary_line(r: &CheckReport) -> String {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    let mut line = format!(
        "{status} {:<16} {} cones, {} checks, {} skipped, {} failures",
        r.suite,
        r.trials,
        r.checks,
        r.skipped,
        r.failures.len()
    );
    if r.boundary_cases > 0 {
        line.push_str(&format!(", {} boundary cases", r.boundary_cases));
    }
    line.push('\n');
    line
}

fn replay_report(path: &Path, mutation: Mutation, emit: &mut impl FnMut(&str) -> Result<(), CliError>) -> Result<u8, CliError> {
    let v = read_json(&path.to_string_lossy())?;
    let instances = format::report_instances(&v)?;
    let mut failing = 0;
    for i in &instances {
        match evaluate(i, mutation)? {
            Some(o) => {
                let status = if o.passed() { "PASS" } else { "FAIL" };
                failing += usize::from(!o.passed());
                emit(&format!("{status} {} expected {} actual {}\n", i.check.name(), o.expected, o.actual))?;
            }
            None => emit(&format!("SKIP {} (precondition does not hold)\n", i.check.name()))?,
        }
    }
    emit(&format!("{} of {} recorded failures still fail\n", failing, instances.len()))?;
    Ok(u8::from(failing > 0))
}

pub struct Figure {
    pub file: &'static str,
    rays: [[i64; 2]; 2],
    y: [[i64; 2]; 2],
    view: &'static str,
}

impl Figure {
    /// The cone and the point `y` of the picture.
    pub fn configuration(&self) -> (Cone, QVector) {
        let rays: Vec<QVector> = self.rays.iter().map(|r| QVector::from_ints(r)).collect();
        let c = Cone::from_vrep(2, &rays, &[]).expect("figure cones are well formed");
        let y = QVector::new(self.y.iter().map(|&[p, q]| coneval_core::Rational::new(p, q)).collect());
        (c, y)
    }
}

/// (a) an acute cone with `y` inside `C ∩ C*`; (b) an obtuse cone, so that
/// `C*` is the narrower one, with `y` again inside both.
pub const FIGURES: [Figure; 2] = [
    Figure { file: "figure-a.svg", rays: [[1, 0], [1, 1]], y: [[3, 2], [1, 2]], view: "-1/2,5/2,-1/2,2" },
    Figure { file: "figure-b.svg", rays: [[1, 0], [-2, 3]], y: [[1, 4], [3, 4]], view: "-1,1,-1/4,5/4" },
];
