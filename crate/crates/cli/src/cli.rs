//! Argument definitions and subcommand handlers.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use incidence_core::census::{
    concentration, count_joints, intersecting_pairs, intersection_census, make_configuration, pk_census,
    planar_incidences, ConfigKind, QuadricStrategy,
};
use incidence_core::fit::{evaluation_rank, monomial_count, min_vanishing_degree, DegreeReduceParams, FitRequest, FitTargets};
use incidence_core::flecnode::{admissible_charts, flecnode_polynomial, ruled_certificate};
use incidence_core::geometry::line_on_surface;
use incidence_core::motion::{distance_set, motion_line, quadruple_incidence_check_capped, QUADRUPLE_CAP};
use incidence_core::partition::{partition, random_points};
use incidence_core::{Line3, MultiPoly, PlanarPoint, Point3, Rat};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::experiments::{self, partition_checks, ExperimentError, ExperimentParams, MAX_SURFACE_DEGREE};
use crate::formats::{Dataset, FormatError};
use crate::parse::{parse_poly, parse_rational, ParseError};
use crate::report::{ExperimentReport, Table};

pub const MAX_LINES: usize = 500;
pub const MAX_POINTS: usize = 2000;
pub const MAX_FIT_DEGREE: u32 = 8;

#[derive(Debug, Parser)]
#[command(name = "incidence", version, about = "Exact polynomial-method incidence experiments")]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also write an SVG plot of the report's sweep.
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
    /// Record wall time in the report (breaks byte-identical reruns).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct LineSource {
    /// Dataset file with space lines.
    #[arg(long)]
    pub lines: Option<PathBuf>,
    /// Generated configuration, e.g. grid_joints.
    #[arg(long, requires = "size")]
    pub config: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a vanishing polynomial to points or lines.
    Fit {
        #[arg(long, conflicts_with = "lines", required_unless_present = "lines")]
        points: Option<PathBuf>,
        #[arg(long)]
        lines: Option<PathBuf>,
        /// Degree to fit at; for points, defaults to the minimal vanishing degree.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Flecnode polynomial of a surface, per admissible chart.
    Flecnode {
        poly: String,
        #[arg(long)]
        chart: Option<usize>,
        /// Declare the surface irreducible for the verdict.
        #[arg(long)]
        irreducible: bool,
    },
    /// Ruledness verdict from lines on the surface or flecnode divisibility.
    RuledCert {
        poly: String,
        #[arg(long)]
        lines: Option<PathBuf>,
        #[arg(long)]
        irreducible: bool,
    },
    /// Count joints.
    Joints {
        #[arg(long, conflicts_with = "grid", required_unless_present = "grid")]
        lines: Option<PathBuf>,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Intersection census with multiplicities and concentration.
    Census {
        #[command(flatten)]
        source: LineSource,
        #[arg(long)]
        size: Option<usize>,
    },
    /// Planar point-line incidences against the Szemeredi-Trotter expression.
    Szt {
        #[arg(long, requires = "lines", conflicts_with = "grid", required_unless_present = "grid")]
        points: Option<PathBuf>,
        #[arg(long)]
        lines: Option<PathBuf>,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Motion lines of every ordered pair of planar points.
    MotionLines {
        #[arg(long)]
        points: PathBuf,
        /// Also write the lines as a dataset.
        #[arg(long)]
        lines_out: Option<PathBuf>,
    },
    /// Distance quadruples, counted directly and through motion lines.
    Quadruples {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value_t = QUADRUPLE_CAP)]
        cap: usize,
    },
    /// Sample, fit and verify (defaults: hyperboloid rulings of 60 and 40 lines).
    DegreeReduce {
        #[arg(long, requires = "l2")]
        l1: Option<PathBuf>,
        #[arg(long, requires = "l1")]
        l2: Option<PathBuf>,
        #[arg(long, default_value = "1/4")]
        probability: String,
        #[arg(long, default_value_t = 5)]
        retries: u32,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Polynomial partition of points into sign classes.
    Partition {
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        points: Option<PathBuf>,
        /// Seeded random integer points instead of a file.
        #[arg(long)]
        random: Option<usize>,
        /// Target number of cells, a power of 2.
        #[arg(long)]
        s: usize,
        /// Lines to test for crossings.
        #[arg(long)]
        lines: Option<PathBuf>,
    },
    /// Points where between k and 2k lines meet.
    Pk {
        #[command(flatten)]
        source: LineSource,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        k: usize,
    },
    /// Write a generated configuration as a dataset.
    Generate {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        size: usize,
    },
    /// Run a named experiment.
    Experiment {
        name: String,
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        targets: Option<Vec<usize>>,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        irreducible: bool,
        #[arg(long)]
        probability: Option<String>,
        #[arg(long)]
        retries: Option<u32>,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        test_lines: Option<usize>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
    #[error("{what} = {value} exceeds the cap {cap}")]
    Cap { what: &'static str, value: usize, cap: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn invalid<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Invalid(e.to_string())
}

fn cap(what: &'static str, value: usize, cap: usize) -> Result<(), CliError> {
    if value > cap {
        Err(CliError::Cap { what, value, cap })
    } else {
        Ok(())
    }
}

fn rv(r: &Rat) -> Value {
    Value::String(r.to_string())
}

fn point_value(p: &Point3) -> Value {
    Value::Array(p.coords().iter().map(rv).collect())
}

fn planar_value(p: &PlanarPoint) -> Value {
    Value::Array(p.0.iter().map(rv).collect())
}

fn load_lines(path: &Path) -> Result<Vec<Line3>, CliError> {
    let lines = Dataset::load(path)?.lines3()?;
    cap("lines", lines.len(), MAX_LINES)?;
    Ok(lines)
}

fn load_points3(path: &Path) -> Result<Vec<Point3>, CliError> {
    let points = Dataset::load(path)?.points3()?;
    cap("points", points.len(), MAX_POINTS)?;
    Ok(points)
}

fn load_points2(path: &Path) -> Result<Vec<PlanarPoint>, CliError> {
    let points = Dataset::load(path)?.points2()?;
    cap("points", points.len(), MAX_POINTS)?;
    Ok(points)
}

fn config_kind(name: &str) -> Result<ConfigKind, CliError> {
    ConfigKind::from_name(name).ok_or_else(|| {
        let known: Vec<&str> = ConfigKind::ALL.iter().map(|k| k.name()).collect();
        CliError::Invalid(format!("unknown configuration '{name}'; expected one of: {}", known.join(", ")))
    })
}

fn source_lines(source: &LineSource, size: Option<usize>, seed: u64) -> Result<Vec<Line3>, CliError> {
    match (&source.lines, &source.config) {
        (Some(path), _) => load_lines(path),
        (None, Some(name)) => {
            let cfg = make_configuration(config_kind(name)?, size.unwrap_or(0), seed).map_err(invalid)?;
            Ok(cfg.lines)
        }
        (None, None) => Err(CliError::Invalid("give --lines or --config".into())),
    }
}

fn surface(text: &str) -> Result<MultiPoly, CliError> {
    let p = parse_poly(text)?;
    cap("surface degree", p.degree().unwrap_or(0) as usize, MAX_SURFACE_DEGREE as usize)?;
    Ok(p)
}

/// Runs a parsed command line and returns the report. `generate` returns
/// `None` after writing its dataset.
pub fn execute(cli: &Cli) -> Result<Option<ExperimentReport>, CliError> {
    let seed = cli.output.seed;
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Generate { kind, size } => {
            let cfg = make_configuration(config_kind(kind)?, *size, seed).map_err(invalid)?;
            emit(&cli.output.out, &Dataset::from_configuration(&cfg).to_json())?;
            return Ok(None);
        }
        Command::Fit { points, lines, degree } => fit(points.as_deref(), lines.as_deref(), *degree, seed)?,
        Command::Flecnode { poly, chart, irreducible } => flecnode(poly, *chart, *irreducible, seed)?,
        Command::RuledCert { poly, lines, irreducible } => {
            let p = surface(poly)?;
            let lines = lines.as_deref().map(load_lines).transpose()?.unwrap_or_default();
            let v = ruled_certificate(&p, &lines, *irreducible).map_err(invalid)?;
            let mut r = ExperimentReport::new("ruled-cert", seed);
            r.input("poly", p.to_string()).input("lines", lines.len()).input("irreducible", *irreducible);
            r.measure("verdict", format!("{:?}", v.verdict))
                .measure("line_count", v.line_count)
                .measure("threshold", v.threshold)
                .measure("clamped_threshold", v.clamped_threshold());
            r.measure(
                "charts",
                v.charts.iter().map(|c| json!({"chart": c.chart, "divisible": c.divisible, "flec_degree": c.flec_degree})).collect::<Vec<_>>(),
            );
            r
        }
        Command::Joints { lines, grid } => {
            let (lines, label) = match (lines, grid) {
                (Some(path), _) => (load_lines(path)?, path.display().to_string()),
                (None, Some(k)) => (make_configuration(ConfigKind::GridJoints, *k, seed).map_err(invalid)?.lines, format!("grid_joints {k}")),
                _ => unreachable!("clap requires one source"),
            };
            let rep = count_joints(&lines).map_err(invalid)?;
            let mut r = ExperimentReport::new("joints", seed);
            r.input("lines", label);
            r.measure("lines", rep.lines).measure("joints", rep.count).measure("ratio", rep.ratio);
            r.measure(
                "joint_points",
                rep.joints.iter().map(|j| json!({"point": point_value(&j.point), "witness": j.witness})).collect::<Vec<_>>(),
            );
            r.check("joints <= lines^(3/2)", "joints^2 <= lines^3", rep.count, (rep.lines as f64).powf(1.5), experiments::joints_within(rep.count, rep.lines));
            r
        }
        Command::Census { source, size } => census(&source_lines(source, *size, seed)?, seed)?,
        Command::Szt { points, lines, grid } => {
            let (pts, ls) = match (points, lines, grid) {
                (Some(p), Some(l), _) => {
                    let ls = Dataset::load(l)?.planar_lines()?;
                    cap("lines", ls.len(), MAX_POINTS)?;
                    (load_points2(p)?, ls)
                }
                (_, _, Some(k)) => {
                    let cfg = make_configuration(ConfigKind::PlanarGrid, *k, seed).map_err(invalid)?;
                    (cfg.planar_points, cfg.planar_lines)
                }
                _ => unreachable!("clap requires one source"),
            };
            let rep = planar_incidences(&pts, &ls).map_err(invalid)?;
            let mut r = ExperimentReport::new("szt", seed);
            r.input("points", pts.len()).input("lines", ls.len());
            r.measure("incidences", rep.count).measure("expression", rep.bound).measure("ratio", rep.ratio);
            r.check(
                "I <= 3 (n^(2/3) m^(2/3) + n + m)",
                "I <= 3 (n^(2/3) m^(2/3) + n + m)",
                rep.count,
                3.0 * rep.bound,
                experiments::szt_within(rep.count, rep.points, rep.lines),
            );
            r
        }
        Command::MotionLines { points, lines_out } => {
            let pts = load_points2(points)?;
            cap("points", pts.len(), QUADRUPLE_CAP)?;
            let mut r = ExperimentReport::new("motion-lines", seed);
            r.input("points", pts.len());
            r.table = Table::new(&["a", "b", "base", "dir"]);
            let mut all = Vec::new();
            for a in &pts {
                for b in &pts {
                    let ml = motion_line(a, b);
                    r.table.push(vec![
                        planar_value(a),
                        planar_value(b),
                        point_value(ml.line.base()),
                        Value::Array(ml.line.dir().iter().map(rv).collect()),
                    ]);
                    all.push(ml.line);
                }
            }
            r.measure("lines", all.len());
            if let Some(path) = lines_out {
                write_file(path, &Dataset::from_points3(&[]).with_lines3(&all).to_json())?;
            }
            r
        }
        Command::Quadruples { points, cap: limit } => {
            let pts = load_points2(points)?;
            let q = quadruple_incidence_check_capped(&pts, *limit).map_err(invalid)?;
            let d = distance_set(&pts).map_err(invalid)?;
            let mut r = ExperimentReport::new("quadruples", seed);
            r.input("points", pts.len()).input("cap", *limit);
            r.measure("quadruples", q.total)
                .measure("rotational", q.rotational)
                .measure("translational", q.translational)
                .measure("distances", d.len())
                .measure("squared_distances", d.iter().map(rv).collect::<Vec<_>>());
            let ok = q.consistent == Some(true);
            r.check("dictionary", "intersecting motion-line pairs + translations = quadruples", ok, true, ok);
            r.check("Cauchy-Schwarz", "|Q| |D| >= (N^2 - N)^2", q.total, rv(&q.cs_bound), q.cauchy_schwarz_holds());
            r
        }
        Command::DegreeReduce { l1, l2, probability, retries, degree } => {
            let probability = parse_rational(probability)?;
            if let (Some(a), Some(b)) = (l1, l2) {
                let (la, lb) = (load_lines(a)?, load_lines(b)?);
                let params = DegreeReduceParams::new(probability.clone(), seed, *degree, *retries).map_err(invalid)?;
                cap("degree", *degree as usize, MAX_FIT_DEGREE as usize)?;
                let mut r = ExperimentReport::new("degree-reduce", seed);
                r.input("l1", la.len()).input("l2", lb.len()).input("probability", rv(&probability));
                let out = incidence_core::fit::degree_reduce(&la, &lb, &params);
                r.check("certified polynomial found", "a sample fit vanishes on every line of L2", out.is_some(), true, out.is_some());
                if let Some(red) = out {
                    r.measure("polynomial", red.poly.to_string()).measure("attempt", red.attempt).measure("sample_size", red.sample_size);
                }
                r
            } else {
                let params = ExperimentParams {
                    probability: Some(probability),
                    retries: Some(*retries),
                    degree: Some(*degree),
                    ..Default::default()
                };
                experiments::run_experiment("degree-reduce", &params, seed)?
            }
        }
        Command::Partition { points, random, s, lines } => {
            let pts = match (points, random) {
                (Some(p), _) => load_points3(p)?,
                (None, Some(m)) => {
                    cap("points", *m, experiments::MAX_PARTITION_POINTS)?;
                    random_points(*m, 20, seed)
                }
                _ => unreachable!("clap requires one source"),
            };
            cap("target", *s, experiments::MAX_PARTITION_TARGET)?;
            let ls = lines.as_deref().map(load_lines).transpose()?.unwrap_or_default();
            let res = partition(&pts, *s, seed).map_err(invalid)?;
            let mut r = ExperimentReport::new("partition", seed);
            r.input("points", pts.len()).input("s", *s).input("lines", ls.len());
            r.measure("factors", res.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>())
                .measure("total_degree", res.total_degree)
                .measure("boundary", res.boundary.clone())
                .measure("signs", incidence_core::partition::format_signs(&res));
            partition_checks(&mut r, "partition", pts.len(), &res, &ls);
            r
        }
        Command::Pk { source, size, k } => {
            let lines = source_lines(source, *size, seed)?;
            let c = intersection_census(&lines).map_err(invalid)?;
            let pk = pk_census(&c, *k).map_err(invalid)?;
            let mut r = ExperimentReport::new("pk", seed);
            r.input("lines", lines.len()).input("k", *k);
            r.measure("count", pk.len()).measure(
                "points",
                pk.iter().map(|p| json!({"point": point_value(p), "multiplicity": c.multiplicity(p)})).collect::<Vec<_>>(),
            );
            r
        }
        Command::Experiment { name, sizes, targets, poly, irreducible, probability, retries, degree, samples, test_lines } => {
            let params = ExperimentParams {
                sizes: sizes.clone(),
                targets: targets.clone(),
                poly: poly.clone(),
                irreducible: *irreducible,
                probability: probability.as_deref().map(parse_rational).transpose()?,
                retries: *retries,
                degree: *degree,
                samples: *samples,
                test_lines: *test_lines,
            };
            experiments::run_experiment(name, &params, seed)?
        }
    };
    if cli.output.timing {
        report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(Some(report))
}

fn fit(points: Option<&Path>, lines: Option<&Path>, degree: Option<u32>, seed: u64) -> Result<ExperimentReport, CliError> {
    if let Some(d) = degree {
        cap("degree", d as usize, MAX_FIT_DEGREE as usize)?;
    }
    let mut r = ExperimentReport::new("fit", seed);
    let (poly, d) = match (points, lines) {
        (Some(path), _) => {
            let pts = load_points3(path)?;
            r.input("points", pts.len());
            let (poly, d) = match degree {
                Some(d) => (FitRequest { targets: FitTargets::Points(pts.clone()), degree: d }.solve().map_err(invalid)?, d),
                None => {
                    let (d, p) = min_vanishing_degree(&pts).map_err(invalid)?;
                    (Some(p), d)
                }
            };
            r.measure("rank", evaluation_rank(&pts, d));
            if let Some(p) = &poly {
                let ok = pts.iter().all(|w| p.eval(w.coords()).map(|v| v.is_zero()).unwrap_or(false));
                r.check("vanishes on every point", "p(w) = 0 for all w", ok, true, ok);
            }
            (poly, d)
        }
        (None, Some(path)) => {
            let ls = load_lines(path)?;
            r.input("lines", ls.len());
            let d = degree.unwrap_or(2);
            let poly = FitRequest { targets: FitTargets::Lines(ls.clone()), degree: d }.solve().map_err(invalid)?;
            if let Some(p) = &poly {
                let ok = ls.iter().all(|l| line_on_surface(l, p));
                r.check("vanishes on every line", "p restricted to each line = 0", ok, true, ok);
            }
            (poly, d)
        }
        _ => unreachable!("clap requires one source"),
    };
    r.input("degree", d).measure("monomials", monomial_count(d));
    r.measure("polynomial", poly.as_ref().map(|p| p.to_string()));
    r.measure("found", poly.is_some());
    Ok(r)
}

fn flecnode(text: &str, chart: Option<usize>, irreducible: bool, seed: u64) -> Result<ExperimentReport, CliError> {
    let p = surface(text)?;
    let charts = match chart {
        Some(c) => vec![c],
        None => admissible_charts(&p),
    };
    let mut r = ExperimentReport::new("flecnode", seed);
    r.input("poly", p.to_string()).input("irreducible", irreducible);
    let mut per_chart = Vec::new();
    for c in charts {
        let f = flecnode_polynomial(&p, c).map_err(invalid)?;
        per_chart.push(json!({
            "chart": c,
            "flec": f.flec.to_string(),
            "degree": f.degree,
            "raw_degree": f.raw_degree,
            "removed_factors": f.removed_factors.iter().map(|x| json!({"factor": x.factor.to_string(), "multiplicity": x.multiplicity})).collect::<Vec<_>>(),
            "reduced": f.reduced.to_string(),
            "reduced_degree": f.reduced_degree,
            "bound": f.bound,
            "divisible": f.divisible_by(&p),
        }));
        r.check(format!("chart {c}: degree on the surface <= 11d - 24"), "deg(flec mod p) <= 11d - 24", json!(f.reduced_degree), f.bound.max(0), f.within_bound());
    }
    r.measure("charts", per_chart);
    let v = ruled_certificate(&p, &[], irreducible).map_err(invalid)?;
    r.measure("verdict", format!("{:?}", v.verdict));
    Ok(r)
}

fn census(lines: &[Line3], seed: u64) -> Result<ExperimentReport, CliError> {
    let c = intersection_census(lines).map_err(invalid)?;
    let brute = intersecting_pairs(lines);
    let conc = concentration(lines);
    let mut r = ExperimentReport::new("census", seed);
    r.input("lines", lines.len());
    r.measure("intersection_points", c.len())
        .measure("pair_total", c.pair_total())
        .measure("histogram", c.histogram().into_iter().map(|(m, n)| json!([m, n])).collect::<Vec<_>>())
        .measure(
            "points",
            c.multiplicities().map(|(p, m)| json!({"point": point_value(p), "multiplicity": m})).collect::<Vec<_>>(),
        )
        .measure("max_coplanar", conc.max_coplanar)
        .measure("max_coquadric", conc.max_coquadric)
        .measure("quadric", conc.quadric.as_ref().map(|q| q.to_string()))
        .measure(
            "quadric_strategy",
            match conc.strategy {
                QuadricStrategy::AllLines => "all_lines",
                QuadricStrategy::Triples => "triples",
                QuadricStrategy::Greedy => "greedy",
                QuadricStrategy::Empty => "empty",
            },
        );
    r.check("census identity", "sum C(mult, 2) = intersecting pairs", c.pair_total(), brute, c.pair_total() == brute);
    Ok(r)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "stdout".into(), source })
        }
    }
}

/// Renders and writes a report per the output flags.
pub fn write_report(output: &OutputArgs, report: &ExperimentReport) -> Result<(), CliError> {
    let text = match output.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    emit(&output.out, &text)?;
    if let Some(path) = &output.svg {
        let svg = report
            .to_svg()
            .ok_or_else(|| CliError::Invalid(format!("report '{}' has no sweep to plot", report.experiment)))?;
        write_file(path, &svg)?;
    }
    Ok(())
}
