//! Experiment drivers. Each one runs a desk-scale instance of a theorem,
//! evaluates the finite form of its bound exactly, and records one check
//! per evaluated inequality.

use incidence_core::algebra::{int, rat};
use incidence_core::census::{
    concentration, count_joints, cone, cone_family, hyperboloid, hyperboloid_family, intersecting_pairs,
    intersection_census, make_configuration, pk_census, planar_incidences, slope_grid, ConfigKind, RulingFamily,
};
use incidence_core::fit::{degree_reduce, DegreeReduceParams};
use incidence_core::flecnode::{flecnode_polynomial, ruled_certificate, Verdict};
use incidence_core::geometry::{line_intersection, line_on_surface, restrict_to_line};
use incidence_core::motion::{distance_set, quadruple_incidence_check, random_planar_points, QUADRUPLE_CAP};
use incidence_core::partition::{
    cell_census, cell_incidences, compounded_ceiling, crossing_report, partition, random_points, PartitionError,
    PartitionResult,
};
use incidence_core::{Line3, MultiPoly, PlanarPoint, Point3, Rat};
use serde_json::{json, Value};

use crate::parse::{parse_poly, ParseError};
use crate::report::{ExperimentReport, Table};

pub const EXPERIMENTS: [&str; 8] = ["joints", "szt", "gk4", "distances", "pk", "flecnode", "degree-reduce", "partition"];

/// Degree cap for surfaces handed to the flecnode experiment.
pub const MAX_SURFACE_DEGREE: u32 = 4;
pub const MAX_PARTITION_POINTS: usize = 512;
pub const MAX_PARTITION_TARGET: usize = 64;
pub const MAX_REDUCE_LINES: usize = 200;
pub const MAX_GK4_SIZE: usize = 5;
pub const MAX_PK_SIZE: usize = 4;
pub const MAX_DISTANCE_GRID: usize = 6;
pub const MAX_SAMPLES: usize = 50;
pub const MAX_TEST_LINES: usize = 200;

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("unknown experiment '{0}'; expected one of: {list}", list = EXPERIMENTS.join(", "))]
    Unknown(String),
    #[error("{param} = {value} exceeds the cap {cap}")]
    Cap { param: &'static str, value: usize, cap: usize },
    #[error("{param} = {value} is out of range: {why}")]
    Range { param: &'static str, value: String, why: &'static str },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(String),
}

/// Optional knobs; each experiment documents which ones it reads and
/// falls back to its own defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExperimentParams {
    pub sizes: Option<Vec<usize>>,
    pub targets: Option<Vec<usize>>,
    pub poly: Option<String>,
    pub irreducible: bool,
    pub probability: Option<Rat>,
    pub retries: Option<u32>,
    pub degree: Option<u32>,
    pub samples: Option<usize>,
    pub test_lines: Option<usize>,
}

fn core<E: std::fmt::Display>(e: E) -> ExperimentError {
    ExperimentError::Core(e.to_string())
}

fn cap(param: &'static str, value: usize, cap: usize) -> Result<(), ExperimentError> {
    if value > cap {
        Err(ExperimentError::Cap { param, value, cap })
    } else {
        Ok(())
    }
}

fn sizes_within(param: &'static str, sizes: &[usize], lo: usize, hi: usize) -> Result<(), ExperimentError> {
    for &s in sizes {
        cap(param, s, hi)?;
        if s < lo {
            return Err(ExperimentError::Range { param, value: s.to_string(), why: "below the minimum size" });
        }
    }
    Ok(())
}

fn rv(r: &Rat) -> Value {
    Value::String(r.to_string())
}

fn rounded(x: f64) -> Value {
    json!((x * 1e6).round() / 1e6)
}

pub fn run_experiment(name: &str, params: &ExperimentParams, seed: u64) -> Result<ExperimentReport, ExperimentError> {
    match name {
        "joints" => joints(params, seed),
        "szt" => szt(params, seed),
        "gk4" => gk4(params, seed),
        "distances" => distances(params, seed),
        "pk" => pk(params, seed),
        "flecnode" => flecnode(params, seed),
        "degree-reduce" => reduce(params, seed),
        "partition" => partition_experiment(params, seed),
        other => Err(ExperimentError::Unknown(other.into())),
    }
}

/// `count <= lines^(3/2)`, squared to stay in integers.
pub fn joints_within(count: usize, lines: usize) -> bool {
    (count as u128).pow(2) <= (lines as u128).pow(3)
}

/// Grid joints sweep. Reads `sizes` (grid sides, default 2,3,4).
fn joints(params: &ExperimentParams, seed: u64) -> Result<ExperimentReport, ExperimentError> {
    let sizes = params.sizes.clone().unwrap_or_else(|| vec![2, 3, 4]);
    let (lo, hi) = ConfigKind::GridJoints.size_range();
    sizes_within("grid size", &sizes, lo, hi)?;
    let mut r = ExperimentReport::new("joints", seed);
    r.input("configuration", "grid_joints").input("sizes", sizes.clone());
    r.table = Table::new(&["k", "lines", "joints", "ratio"]).plot("lines", "ratio");
    for k in sizes {
        let cfg = make_configuration(ConfigKind::GridJoints, k, seed).map_err(core)?;
        let rep = count_joints(&cfg.lines).map_err(core)?;
        r.table.push(vec![json!(k), json!(rep.lines), json!(rep.count), rounded(rep.ratio)]);
        r.check(format!("k={k}: joints = k^3"), "joints = k^3", rep.count, k.pow(3), rep.count == k.pow(3));
        r.check(format!("k={k}: lines = 3k^2"), "lines = 3k^2", rep.lines, 3 * k * k, rep.lines == 3 * k * k);
        r.check(
            format!("k={k}: joints <= lines^(3/2)"),
            "joints^2 <= lines^3",
            rep.count,
            rounded((rep.lines as f64).powf(1.5)),
            joints_within(rep.count, rep.lines),
        );
    }
    Ok(r)
}

/// `I <= 3 (n^(2/3) m^(2/3) + n + m)`, decided exactly: with
/// `t = I - 3(n + m)`, either `t <= 0` or `t^3 <= 27 n^2 m^2`.
pub fn szt_within(incidences: usize, n: usize, m: usize) -> bool {
    let t = incidences as i128 - 3 * (n + m) as i128;
    t <= 0 || t.pow(3) <= 27 * (n as i128 * m as i128).pow(2)
}

/// Planar grids with their axis lines and slope grids with the lines
/// `y = a x + b`. Reads `sizes` (grid sides, default 1..=10).
fn szt(params: &ExperimentParams, seed: u64) -> Result<ExperimentReport, ExperimentError> {
    let sizes = params.sizes.clone().unwrap_or_else(|| (1..=10).collect());
    let (lo, hi) = ConfigKind::PlanarGrid.size_range();
    sizes_within("grid size", &sizes, lo, hi)?;
    let mut r = ExperimentReport::new("szt", seed);
    r.input("families", json!(["planar_grid", "slope_grid"])).input("sizes", sizes.clone());
    r.table = Table::new(&["family", "k", "points", "lines", "incidences", "expression", "ratio"]).plot("points", "ratio");
    let mut worst: f64 = 0.0;
    for k in sizes {
        let cfg = make_configuration(ConfigKind::PlanarGrid, k, seed).map_err(core)?;
        let (sp, sl) = slope_grid(k);
        for (family, pts, lines) in [("planar_grid", &cfg.planar_points, &cfg.planar_lines), ("slope_grid", &sp, &sl)] {
            let rep = planar_incidences(pts, lines).map_err(core)?;
            worst = worst.max(rep.ratio);
            r.table.push(vec![
                json!(family),
                json!(k),
                json!(rep.points),
                json!(rep.lines),
                json!(rep.count),
                rounded(rep.bound),
                rounded(rep.ratio),
            ]);
            r.check(
                format!("{family} k={k}: I <= 3 (n^(2/3) m^(2/3) + n + m)"),
                "I <= 3 (n^(2/3) m^(2/3) + n + m)",
                rep.count,
                rounded(3.0 * rep.bound),
                szt_within(rep.count, rep.points, rep.lines),
            );
            if family == "planar_grid" && k == 2 {
                r.check("planar_grid k=2: exact count", "I = 8", rep.count, 8, rep.count == 8);
            }
        }
    }
    r.measure("max_ratio", rounded(worst));
    Ok(r)
}

/// Intersection censuses on families satisfying, or testing, the plane and
/// regulus hypotheses. Reads `sizes` (default 2,3,4): grid side `s`,
/// `3s` lines per hyperboloid ruling, `3s^2` random lines, GK2 side `s`.
fn gk4(params: &ExperimentParams, seed: u64) -> Result<ExperimentReport, ExperimentError> {
    let sizes = params.sizes.clone().unwrap_or_else(|| vec![2, 3, 4]);
    sizes_within("size", &sizes, 1, MAX_GK4_SIZE)?;
    let mut r = ExperimentReport::new("gk4", seed);
    r.input("sizes", sizes.clone());
    r.table = Table::new(&[
        "family",
        "size",
        "lines",
        "N",
        "intersection_points",
        "intersecting_pairs",
        "max_multiplicity",
        "max_coplanar",
        "max_coquadric",
        "ratio",
    ])
    .plot("lines", "ratio");
    for s in sizes {
        let families = [
            (ConfigKind::GridJoints, s),
            (ConfigKind::HyperboloidRulings, 3 * s),
            (ConfigKind::RandomLines, 3 * s * s),
        ];
        for (kind, size) in families {
            let lines = make_configuration(kind, size, seed).map_err(core)?.lines;
            let census = intersection_census(&lines).map_err(core)?;
            let brute = intersecting_pairs(&lines);
            let conc = concentration(&lines);
            let n = (lines.len() as f64).sqrt();
            let ratio = census.len() as f64 / n.powi(3);
            let max_mult = census.multiplicities().map(|(_, m)| m).max().unwrap_or(0);
            r.table.push(vec![
                json!(kind.name()),
                json!(size),
                json!(lines.len()),
                rounded(n),
                json!(census.len()),
                json!(census.pair_total()),
                json!(max_mult),
                json!(conc.max_coplanar),
                json!(conc.max_coquadric),
                rounded(ratio),
            ]);
            let tag = format!("{} {}", kind.name(), size);
            r.check(format!("{tag}: census identity"), "sum C(mult, 2) = intersecting pairs", census.pair_total(), brute, census.pair_total() == brute);
            if kind == ConfigKind::HyperboloidRulings {
                r.check(format!("{tag}: multiplicity 2"), "every intersection point has multiplicity 2", max_mult, 2, max_mult == 2);
                let half = lines.len() / 2;
                let ok = (0..lines.len()).all(|i| {
                    let meets: Vec<usize> = (0..lines.len())
                        .filter(|&j| j != i && matches!(line_intersection(&lines[i], &lines[j]), Ok(Some(_))))
                        .collect();
                    meets.len() == half && meets.iter().all(|&j| (j < half) != (i < half))
                });
                r.check(
                    format!("{tag}: generators meet only the other ruling"),
                    "each generator meets d - 2 = 0 of its own ruling and every line of the other",
                    ok,
                    true,
                    ok,
                );
            }
        }
        let cfg = make_configuration(ConfigKind::Gk2Config, s, seed).map_err(core)?;
        let n = s as f64;
        r.table.push(vec![
            json!("gk2_config"),
            json!(s),
            json!(cfg.lines.len()),
            rounded(n),
            json!(cfg.points.len()),
            Value::Null,
            Value::Null,
            json!(concentration(&cfg.lines).max_coplanar),
            Value::Null,
            rounded(cfg.points.len() as f64 / n.powi(3)),
        ]);
        let per_line = cfg.lines.iter().map(|l| cfg.points.iter().filter(|p| l.contains(p)).count()).min().unwrap_or(0);
        r.check(format!("gk2_config {s}: each line holds N points"), "min points per line >= N", per_line, s, per_line >= s);
    }
    Ok(r)
}

/// `(0,0), (1,0), (0,1), (1,1)`.
pub fn unit_square() -> Vec<PlanarPoint> {
    vec![PlanarPoint::from_ints(0, 0), PlanarPoint::from_ints(1, 0), PlanarPoint::from_ints(0, 1), PlanarPoint::from_ints(1, 1)]
}

/// `n` equally spaced points on a line of slope 1/2.
pub fn collinear(n: usize) -> Vec<PlanarPoint> {
    (0..n as i64).map(|i| PlanarPoint::new(int(i), rat(i, 2))).collect()
}

pub fn rational_grid(k: usize) -> Vec<PlanarPoint> {
    let k = k as i64;
    (0..k).flat_map(|x| (0..k).map(move |y| PlanarPoint::new(rat(x, 2), int(y)))).collect()
}

/// Distinct distances and distance quadruples. Reads `sizes` (grid sides,
/// default 2,3,4) and `samples` (random sets of 6..=12 points, default 5).
fn distances(params: &ExperimentParams, seed: u64) -> Result<ExperimentReport, ExperimentError> {
    let sizes = params.sizes.clone().unwrap_or_else(|| vec![2, 3, 4]);
    sizes_within("grid size", &sizes, 1, MAX_DISTANCE_GRID)?;
    let samples = params.samples.unwrap_or(5);
    cap("samples", samples, MAX_SAMPLES)?;
    let mut r = ExperimentReport::new("distances", seed);
    r.input("grid_sizes", sizes.clone()).input("samples", samples);
    r.table = Table::new(&[
        "set",
        "N",
        "distances",
        "N/log N",
        "quadruples",
        "rotational",
        "translational",
        "cs_bound",
        "ratio",
    ])
    .plot("N", "ratio");
    let mut sets: Vec<(String, Vec<PlanarPoint>)> = vec![
        ("unit_square".into(), unit_square()),
        ("collinear_6".into(), collinear(6)),
        ("triangle_3_4_5".into(), vec![PlanarPoint::from_ints(0, 0), PlanarPoint::from_ints(3, 0), PlanarPoint::from_ints(0, 4)]),
    ];
    sets.extend(sizes.iter().map(|&k| (format!("grid_{k}x{k}"), rational_grid(k))));
    sets.extend((0..samples).map(|i| {
        let n = 6 + (i % 7);
        (format!("random_{i}_n{n}"), random_planar_points(n, 3, seed.wrapping_add(i as u64)))
    }));
    for (name, pts) in &sets {
        cap("points", pts.len(), QUADRUPLE_CAP)?;
        let d = distance_set(pts).map_err(core)?;
        let q = quadruple_incidence_check(pts).map_err(core)?;
        let n = pts.len() as f64;
        let nlog = if pts.len() > 1 { n / n.ln() } else { 0.0 };
        r.table.push(vec![
            json!(name),
            json!(pts.len()),
            json!(d.len()),
            rounded(nlog),
            json!(q.total),
            json!(q.rotational),
            json!(q.translational),
            rv(&q.cs_bound),
            if nlog > 0.0 { rounded(d.len() as f64 / nlog) } else { Value::Null },
        ]);
        let consistent = q.consistent == Some(true);
        r.check(format!("{name}: dictionary"), "intersecting motion-line pairs + translations = quadruples", consistent, true, consistent);
        r.check(format!("{name}: Cauchy-Schwarz"), "|Q| |D| >= (N^2 - N)^2", q.total, rv(&q.cs_bound), q.cauchy_schwarz_holds());
        if name == "unit_square" {
            r.check("unit_square: |Q| = 80", "|Q| = 80", q.total, 80, q.total == 80);
            r.check("unit_square: |D| = 2", "|D| = 2", d.len(), 2, d.len() == 2);
        }
    }
    Ok(r)
}

/// Points of multiplicity at least two, partitioned; lines are tested for
/// incidences with the occupied cells. Reads `sizes` (default 2,3: grid
/// side `s` and `2s` lines per hyperboloid ruling) and `targets` (cell
/// targets, default 8).
fn pk(params: &ExperimentParams, seed: u64) -> Result<ExperimentReport, ExperimentError> {
    let sizes = params.sizes.clone().unwrap_or_else(|| vec![2, 3]);
    sizes_within("size", &sizes, 1, MAX_PK_SIZE)?;
    let targets = params.targets.clone().unwrap_or_else(|| vec![8]);
    check_targets(&targets)?;
    let mut r = ExperimentReport::new("pk", seed);
    r.input("sizes", sizes.clone()).input("targets", targets.clone());
    r.table = Table::new(&[
        "family",
        "size",
        "lines",
        "points",
        "k",
        "P_k",
        "s",
        "total_degree",
        "boundary",
        "incidences",
        "bound",
    ]);
    for s in &sizes {
        for (kind, size) in [(ConfigKind::GridJoints, *s), (ConfigKind::HyperboloidRulings, 2 * s)] {
            let lines = make_configuration(kind, size, seed).map_err(core)?.lines;
            let census = intersection_census(&lines).map_err(core)?;
            let points: Vec<Point3> = census.points();
            let max_mult = census.multiplicities().map(|(_, m)| m).max().unwrap_or(0);
            let mut ks = Vec::new();
            let mut k = 2;
            while k <= max_mult.max(2) {
                ks.push(k);
                k *= 2;
            }
            for &target in &targets {
                let tag = format!("{} {size} s={target}", kind.name());
                let result = match partition(&points, target, seed) {
                    Ok(res) => res,
                    Err(e) => {
                        r.check(format!("{tag}: partition"), "certified partition found", e.to_string(), "ok", false);
                        continue;
                    }
                };
                let inc = cell_incidences(&lines, &result);
                for &k in &ks {
                    let pk = pk_census(&census, k).map_err(core)?;
                    r.table.push(vec![
                        json!(kind.name()),
                        json!(size),
                        json!(lines.len()),
                        json!(points.len()),
                        json!(k),
                        json!(pk.len()),
                        json!(target),
                        json!(result.total_degree),
                        json!(result.boundary.len()),
                        json!(inc.incidences),
                        json!(inc.bound()),
                    ]);
                }
                r.check(
                    format!("{tag}: I <= (deg + 1) lines"),
                    "I <= (total_degree + 1) #lines",
                    inc.incidences,
                    inc.bound(),
                    inc.incidences <= inc.bound(),
                );
            }
        }
    }
    Ok(r)
}

struct SurfaceCase {
    name: String,
    poly: MultiPoly,
    lines: Vec<Line3>,
    irreducible: bool,
    expected: Option<Verdict>,
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::RuledCertified => "RuledCertified",
        Verdict::NotRuledCertified => "NotRuledCertified",
        Verdict::Inconclusive => "Inconclusive",
    }
}

fn default_surfaces() -> Vec<SurfaceCase> {
    let p = |s: &str| parse_poly(s).expect("fixture");
    vec![
        SurfaceCase { name: "sphere".into(), poly: p("x^2+y^2+z^2-1"), lines: vec![], irreducible: true, expected: Some(Verdict::RuledCertified) },
        SurfaceCase { name: "saddle".into(), poly: p("x*y-z"), lines: vec![], irreducible: true, expected: Some(Verdict::RuledCertified) },
        SurfaceCase {
            name: "hyperboloid".into(),
            poly: hyperboloid(),
            lines: hyperboloid_family(RulingFamily::First, 10),
            irreducible: true,
            expected: Some(Verdict::RuledCertified),
        },
        SurfaceCase { name: "cone".into(), poly: cone(), lines: cone_family(10), irreducible: true, expected: Some(Verdict::RuledCertified) },
        SurfaceCase {
            name: "fermat_cubic".into(),
            poly: p("x^3+y^3+z^3-1"),
            lines: vec![],
            irreducible: true,
            expected: Some(Verdict::NotRuledCertified),
        },
    ]
}

/// Flecnode polynomials per admissible chart and the ruledness verdict.
/// Reads `poly` and `irreducible`; without `poly`, runs the fixture set
/// (sphere, saddle, hyperboloid and cone with ten rulings, Fermat cubic).
fn flecnode(params: &ExperimentParams, seed: u64) -> Result<ExperimentReport, ExperimentError> {
    let cases = match &params.poly {
        Some(text) => {
            let poly = parse_poly(text)?;
            let d = poly.degree().unwrap_or(0);
            cap("surface degree", d as usize, MAX_SURFACE_DEGREE as usize)?;
            vec![SurfaceCase { name: text.clone(), poly, lines: vec![], irreducible: params.irreducible, expected: None }]
        }
        None => default_surfaces(),
    };
    let mut r = ExperimentReport::new("flecnode", seed);
    r.input("surfaces", cases.iter().map(|c| Value::String(c.name.clone())).collect::<Vec<_>>());
    r.table = Table::new(&["surface", "degree", "chart", "raw_degree", "flec_degree", "reduced_degree", "bound", "divisible"]);
    for case in &cases {
        let cert = ruled_certificate(&case.poly, &case.lines, case.irreducible).map_err(core)?;
        let d = case.poly.degree().unwrap_or(0);
        for chart in incidence_core::flecnode::admissible_charts(&case.poly) {
            let f = flecnode_polynomial(&case.poly, chart).map_err(core)?;
            r.table.push(vec![
                json!(case.name),
                json!(d),
                json!(chart),
                json!(f.raw_degree),
                json!(f.degree),
                json!(f.reduced_degree),
                json!(f.bound),
                json!(f.divisible_by(&case.poly)),
            ]);
            r.check(
                format!("{} chart {chart}: degree on the surface <= 11d - 24", case.name),
                "deg(flec mod p) <= 11d - 24",
                json!(f.reduced_degree),
                f.bound.max(0),
                f.within_bound(),
            );
            if !case.lines.is_empty() {
                let vanish = case.lines.iter().all(|l| restrict_to_line(&f.flec, l).map(|u| u.is_zero()).unwrap_or(false));
                r.check(
                    format!("{} chart {chart}: flec vanishes on {} rulings", case.name, case.lines.len()),
                    "flec restricted to each ruling = 0",
                    vanish,
                    true,
                    vanish,
                );
            }
        }
        r.measure(&format!("{}: verdict", case.name), verdict_name(cert.verdict));
        r.measure(&format!("{}: declared_irreducible", case.name), cert.declared_irreducible);
        if let Some(expected) = case.expected {
            r.check(
                format!("{}: verdict", case.name),
                "ruledness verdict matches the fixture",
                verdict_name(cert.verdict),
                verdict_name(expected),
                cert.verdict == expected,
            );
        }
    }
    Ok(r)
}

/// Sample, fit and verify on two hyperboloid rulings. Reads `sizes`
/// (`[n1, n2]`, default 60, 40), `probability` (1/4), `retries` (5) and
/// `degree` (2).
fn reduce(params: &ExperimentParams, seed: u64) -> Result<ExperimentReport, ExperimentError> {
    let sizes = params.sizes.clone().unwrap_or_else(|| vec![60, 40]);
    let [n1, n2] = sizes[..] else {
        return Err(ExperimentError::Range { param: "sizes", value: format!("{sizes:?}"), why: "expected two ruling sizes" });
    };
    cap("first ruling lines", n1, MAX_REDUCE_LINES)?;
    cap("second ruling lines", n2, MAX_REDUCE_LINES)?;
    let probability = params.probability.clone().unwrap_or_else(|| rat(1, 4));
    let retries = params.retries.unwrap_or(5);
    let degree = params.degree.unwrap_or(2);
    cap("degree", degree as usize, 6)?;
    cap("retries", retries as usize, 100)?;
    let dr = DegreeReduceParams::new(probability.clone(), seed, degree, retries).map_err(core)?;
    let l1 = hyperboloid_family(RulingFamily::First, n1);
    let l2 = hyperboloid_family(RulingFamily::Second, n2);
    let mut r = ExperimentReport::new("degree-reduce", seed);
    r.input("first_ruling", n1)
        .input("second_ruling", n2)
        .input("probability", rv(&probability))
        .input("retries", retries)
        .input("degree_cap", degree);
    let out = degree_reduce(&l1, &l2, &dr);
    let found = out.is_some();
    r.check("certified polynomial found", "a sample fit vanishes on every line of L2", found, true, found);
    if let Some(red) = out {
        let deg = red.poly.degree().unwrap_or(0);
        r.measure("polynomial", red.poly.to_string())
            .measure("degree", deg)
            .measure("attempt", red.attempt)
            .measure("sample_size", red.sample_size);
        let on_l2 = l2.iter().all(|l| line_on_surface(l, &red.poly));
        r.check("vanishes on L2", "every line of L2 lies on the zero set", on_l2, true, on_l2);
        r.check("degree within cap", "deg <= cap", deg, degree, deg <= degree);
        let same = red.poly.monic() == hyperboloid().monic();
        r.measure("equals_hyperboloid", same);
        let again = degree_reduce(&l1, &l2, &dr).as_ref() == Some(&red);
        r.check("reproducible", "same seed gives the same polynomial", again, true, again);
    }
    Ok(r)
}

fn check_targets(targets: &[usize]) -> Result<(), ExperimentError> {
    for &s in targets {
        cap("target", s, MAX_PARTITION_TARGET)?;
        if s < 2 || !s.is_power_of_two() {
            return Err(ExperimentError::Range { param: "target", value: s.to_string(), why: "must be a power of 2, at least 2" });
        }
    }
    Ok(())
}

/// `total_degree <= 8 s^(1/3) + 4`, decided exactly.
pub fn partition_degree_within(total_degree: u32, s: usize) -> bool {
    total_degree <= 4 || (u128::from(total_degree) - 4).pow(3) <= 512 * s as u128
}

/// The partition contract on one result, recorded as checks.
pub fn partition_checks(r: &mut ExperimentReport, tag: &str, points: usize, res: &PartitionResult, lines: &[Line3]) -> bool {
    let census = cell_census(res);
    let s = res.target;
    let bound = res.class_bound();
    let log = s.trailing_zeros() as usize;
    let mut ok = true;
    ok &= r.check(format!("{tag}: classes <= s"), "nonempty sign classes <= s", census.classes.len(), s, census.classes.len() <= s);
    ok &= r.check(format!("{tag}: class size"), "largest class <= compounded ceiling", census.largest(), bound, census.largest() <= bound);
    let loose = points.div_ceil(s) + log;
    ok &= r.check(format!("{tag}: ceiling vs M/s"), "compounded ceiling <= ceil(M/s) + log2 s", bound, loose, bound <= loose);
    let cap = 8.0 * (s as f64).cbrt() + 4.0;
    ok &= r.check(
        format!("{tag}: total degree"),
        "total_degree <= 8 s^(1/3) + 4",
        res.total_degree,
        rounded(cap),
        partition_degree_within(res.total_degree, s),
    );
    ok &= r.check(format!("{tag}: conservation"), "class sizes + boundary = M", census.total(), points, census.total() == points);
    let crossings = crossing_report(lines, res);
    let max = crossings.crossings.iter().filter_map(|c| c.count()).max().unwrap_or(0);
    ok &= r.check(format!("{tag}: crossings"), "crossings per line <= total_degree", max, res.total_degree, crossings.within_degree());
    let exact = res.signs.iter().zip(0..).all(|(sv, i)| sv.is_some() != res.boundary.contains(&i));
    ok &= r.check(format!("{tag}: boundary bookkeeping"), "boundary = points with no sign vector", exact, true, exact);
    ok
}

/// Seeded random points, partitioned for every target. Reads `sizes`
/// (point counts, default 64, 256), `targets` (default 2,4,8,16) and
/// `test_lines` (random lines for the crossing check, default 20).
fn partition_experiment(params: &ExperimentParams, seed: u64) -> Result<ExperimentReport, ExperimentError> {
    let sizes = params.sizes.clone().unwrap_or_else(|| vec![64, 256]);
    sizes_within("points", &sizes, 1, MAX_PARTITION_POINTS)?;
    let targets = params.targets.clone().unwrap_or_else(|| vec![2, 4, 8, 16]);
    check_targets(&targets)?;
    let nlines = params.test_lines.unwrap_or(20);
    cap("test lines", nlines, MAX_TEST_LINES)?;
    let lines = if nlines == 0 { Vec::new() } else { make_configuration(ConfigKind::RandomLines, nlines, seed).map_err(core)?.lines };
    let mut r = ExperimentReport::new("partition", seed);
    r.input("sizes", sizes.clone()).input("targets", targets.clone()).input("test_lines", nlines);
    r.table = Table::new(&["M", "s", "degrees", "total_degree", "classes", "largest", "bound", "boundary", "max_crossings"])
        .plot("s", "total_degree");
    for &m in &sizes {
        let points = random_points(m, 20, seed);
        for &s in &targets {
            let tag = format!("M={m} s={s}");
            let res = match partition(&points, s, seed) {
                Ok(res) => res,
                Err(PartitionError::BudgetExhausted { round, .. }) => {
                    r.check(format!("{tag}: partition"), "certified bisector in every round", format!("budget exhausted in round {round}"), "ok", false);
                    continue;
                }
                Err(e) => return Err(core(e)),
            };
            let census = cell_census(&res);
            let max = crossing_report(&lines, &res).crossings.iter().filter_map(|c| c.count()).max().unwrap_or(0);
            r.table.push(vec![
                json!(m),
                json!(s),
                json!(res.rounds.iter().map(|x| x.degree).collect::<Vec<_>>()),
                json!(res.total_degree),
                json!(census.classes.len()),
                json!(census.largest()),
                json!(compounded_ceiling(m, res.rounds.len())),
                json!(census.boundary),
                json!(max),
            ]);
            partition_checks(&mut r, &tag, m, &res, &lines);
        }
    }
    Ok(r)
}
