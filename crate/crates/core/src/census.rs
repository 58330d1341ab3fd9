//! Brute-force exact counting over line and point configurations.
//!
//! These counts are the reference every other module is measured against,
//! so they are plain all-pairs and all-triples loops over canonical keys.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::{Float, One, Zero};
use rand::Rng;

use crate::algebra::{MultiPoly, Rat};
use crate::fit::fit_on_lines;
use crate::geometry::{
    cross, line_intersection, line_on_surface, Line3, PlanarLine, PlanarPoint, Plane, Point3, Vec3,
};
use crate::rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CensusError {
    #[error("line {0} appears more than once")]
    DuplicateLine(usize),
    #[error("point {0} appears more than once")]
    DuplicatePoint(usize),
    #[error("P_k requires k >= 2, got {0}")]
    BadK(usize),
    #[error("size {size} unsupported for {kind:?} (allowed {min}..={max})")]
    UnsupportedSize { kind: ConfigKind, size: usize, min: usize, max: usize },
}

fn check_distinct<T: Ord>(items: &[T]) -> Option<usize> {
    let mut seen = BTreeSet::new();
    items.iter().position(|x| !seen.insert(x))
}

/// Points where at least two input lines meet, with the indices of every
/// line through each.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntersectionCensus {
    lines_through: BTreeMap<Point3, BTreeSet<usize>>,
}

impl IntersectionCensus {
    pub fn multiplicity(&self, p: &Point3) -> usize {
        self.lines_through.get(p).map_or(0, BTreeSet::len)
    }

    /// `(point, multiplicity)` in point order.
    pub fn multiplicities(&self) -> impl Iterator<Item = (&Point3, usize)> {
        self.lines_through.iter().map(|(p, s)| (p, s.len()))
    }

    pub fn lines_through(&self, p: &Point3) -> Option<&BTreeSet<usize>> {
        self.lines_through.get(p)
    }

    /// Every point of multiplicity at least two.
    pub fn points(&self) -> Vec<Point3> {
        self.lines_through.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.lines_through.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines_through.is_empty()
    }

    /// `Σ C(mult, 2)`, which equals the number of intersecting line pairs.
    pub fn pair_total(&self) -> usize {
        self.multiplicities().map(|(_, m)| m * (m - 1) / 2).sum()
    }

    /// Number of points with each multiplicity.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for (_, m) in self.multiplicities() {
            *h.entry(m).or_insert(0) += 1;
        }
        h
    }
}

pub fn intersection_census(lines: &[Line3]) -> Result<IntersectionCensus, CensusError> {
    if let Some(i) = check_distinct(lines) {
        return Err(CensusError::DuplicateLine(i));
    }
    let mut census = IntersectionCensus::default();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if let Some(p) = line_intersection(&lines[i], &lines[j]).expect("lines are distinct") {
                let set = census.lines_through.entry(p).or_default();
                set.insert(i);
                set.insert(j);
            }
        }
    }
    Ok(census)
}

/// Points where between `k` and `2k` lines meet.
pub fn pk_census(census: &IntersectionCensus, k: usize) -> Result<Vec<Point3>, CensusError> {
    if k < 2 {
        return Err(CensusError::BadK(k));
    }
    Ok(census
        .multiplicities()
        .filter(|(_, m)| (k..=2 * k).contains(m))
        .map(|(p, _)| p.clone())
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Joint {
    pub point: Point3,
    /// Indices of three lines through the point with independent directions.
    pub witness: [usize; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointsReport {
    pub joints: Vec<Joint>,
    pub count: usize,
    pub lines: usize,
    /// `count / lines^(3/2)`.
    pub ratio: f64,
}

fn independent_triple(lines: &[Line3], through: &[usize]) -> Option<[usize; 3]> {
    for (a, &i) in through.iter().enumerate() {
        for (b, &j) in through.iter().enumerate().skip(a + 1) {
            let n = cross(lines[i].dir(), lines[j].dir());
            if n.iter().all(Zero::is_zero) {
                continue;
            }
            for &k in &through[b + 1..] {
                if !crate::geometry::dot(&n, lines[k].dir()).is_zero() {
                    return Some([i, j, k]);
                }
            }
        }
    }
    None
}

pub fn count_joints(lines: &[Line3]) -> Result<JointsReport, CensusError> {
    let census = intersection_census(lines)?;
    let joints: Vec<Joint> = census
        .lines_through
        .iter()
        .filter(|(_, s)| s.len() >= 3)
        .filter_map(|(p, s)| {
            let through: Vec<usize> = s.iter().copied().collect();
            independent_triple(lines, &through).map(|witness| Joint { point: p.clone(), witness })
        })
        .collect();
    let count = joints.len();
    let n = lines.len();
    let ratio = if n == 0 { 0.0 } else { count as f64 / Float::powf(n as f64, 1.5) };
    Ok(JointsReport { joints, count, lines: n, ratio })
}

/// How the quadric witness in a [`ConcentrationReport`] was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadricStrategy {
    /// A single quadric contains every line.
    AllLines,
    /// Every triple of lines was fitted (small inputs).
    Triples,
    /// Greedy growth from each starting line (large inputs).
    Greedy,
    /// Fewer than one line; nothing to witness.
    Empty,
}

/// Largest number of lines found in a common plane and in a common
/// degree-2 surface.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationReport {
    pub max_coplanar: usize,
    pub plane: Option<Plane>,
    pub max_coquadric: usize,
    pub quadric: Option<MultiPoly>,
    pub strategy: QuadricStrategy,
}

/// Line count at or below which every triple is tried for the quadric search.
pub const EXHAUSTIVE_QUADRIC_LIMIT: usize = 20;

fn plane_containing(l: &Line3) -> Plane {
    let axes: [Vec3; 3] = core::array::from_fn(|i| {
        let mut e: Vec3 = core::array::from_fn(|_| Rat::zero());
        e[i] = Rat::one();
        e
    });
    let normal = axes
        .iter()
        .map(|e| cross(l.dir(), e))
        .find(|n| n.iter().any(|c| !c.is_zero()))
        .expect("nonzero direction is not parallel to every axis");
    let offset = crate::geometry::dot(&normal, l.base().coords());
    Plane::new(normal, offset).expect("nonzero normal")
}

pub fn concentration(lines: &[Line3]) -> ConcentrationReport {
    let (max_coplanar, plane) = max_coplanar(lines);
    let (max_coquadric, quadric, strategy) = max_coquadric(lines);
    ConcentrationReport { max_coplanar, plane, max_coquadric, quadric, strategy }
}

fn max_coplanar(lines: &[Line3]) -> (usize, Option<Plane>) {
    let Some(first) = lines.first() else {
        return (0, None);
    };
    let mut best = (1, Some(plane_containing(first)));
    let mut seen = BTreeSet::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let Some(plane) = Plane::through_lines(&lines[i], &lines[j]) else {
                continue;
            };
            if !seen.insert(plane.clone()) {
                continue;
            }
            let count = lines.iter().filter(|l| plane.contains_line(l)).count();
            if count > best.0 {
                best = (count, Some(plane));
            }
        }
    }
    best
}

fn max_coquadric(lines: &[Line3]) -> (usize, Option<MultiPoly>, QuadricStrategy) {
    if lines.is_empty() {
        return (0, None, QuadricStrategy::Empty);
    }
    if let Some(q) = fit_on_lines(lines, 2) {
        return (lines.len(), Some(q), QuadricStrategy::AllLines);
    }
    let count = |q: &MultiPoly| lines.iter().filter(|l| line_on_surface(l, q)).count();
    let mut best: (usize, Option<MultiPoly>) = (0, None);
    let mut consider = |q: MultiPoly| {
        let c = count(&q);
        if c > best.0 {
            best = (c, Some(q));
        }
    };
    let strategy = if lines.len() <= EXHAUSTIVE_QUADRIC_LIMIT {
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                for k in j + 1..lines.len() {
                    if let Some(q) = fit_on_lines(&[lines[i].clone(), lines[j].clone(), lines[k].clone()], 2) {
                        consider(q);
                    }
                }
            }
        }
        QuadricStrategy::Triples
    } else {
        for start in 0..lines.len() {
            let mut chosen = alloc::vec![lines[start].clone()];
            let mut fit = fit_on_lines(&chosen, 2);
            for (j, l) in lines.iter().enumerate() {
                if j == start || fit.as_ref().is_some_and(|q| line_on_surface(l, q)) {
                    continue;
                }
                chosen.push(l.clone());
                match fit_on_lines(&chosen, 2) {
                    Some(q) => fit = Some(q),
                    None => {
                        chosen.pop();
                    }
                }
            }
            if let Some(q) = fit {
                consider(q);
            }
        }
        QuadricStrategy::Greedy
    };
    (best.0, best.1, strategy)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanarIncidenceReport {
    pub count: usize,
    pub points: usize,
    pub lines: usize,
    /// `n^(2/3) m^(2/3) + n + m`.
    pub bound: f64,
    pub ratio: f64,
}

pub fn planar_incidences(points: &[PlanarPoint], lines: &[PlanarLine]) -> Result<PlanarIncidenceReport, CensusError> {
    if let Some(i) = check_distinct(points) {
        return Err(CensusError::DuplicatePoint(i));
    }
    if let Some(i) = check_distinct(lines) {
        return Err(CensusError::DuplicateLine(i));
    }
    let count = lines.iter().map(|l| points.iter().filter(|p| l.contains(p)).count()).sum();
    let (n, m) = (points.len() as f64, lines.len() as f64);
    let bound = Float::powf(n * m, 2.0 / 3.0) + n + m;
    let ratio = if bound > 0.0 { count as f64 / bound } else { 0.0 };
    Ok(PlanarIncidenceReport { count, points: points.len(), lines: lines.len(), bound, ratio })
}

/// Fixture families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConfigKind {
    /// Axis-parallel lines through the `k^3` grid: `3k^2` lines, `k^3` joints.
    GridJoints,
    /// `n` lines of each ruling of `x^2 + y^2 - z^2 = 1`.
    HyperboloidRulings,
    /// The `k x k` integer grid with its `k` rows and `k` columns.
    PlanarGrid,
    /// Seeded random lines with small integer data.
    RandomLines,
    /// `n` lines through the apex of `x^2 + y^2 - z^2 = 0`.
    ConeRulings,
    /// `N^2` parallel lines with at most `N` in any plane, and the `N^3`
    /// grid points they cover (`N` per line).
    Gk2Config,
}

impl ConfigKind {
    pub const ALL: [ConfigKind; 6] = [
        ConfigKind::GridJoints,
        ConfigKind::HyperboloidRulings,
        ConfigKind::PlanarGrid,
        ConfigKind::RandomLines,
        ConfigKind::ConeRulings,
        ConfigKind::Gk2Config,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConfigKind::GridJoints => "grid_joints",
            ConfigKind::HyperboloidRulings => "hyperboloid_rulings",
            ConfigKind::PlanarGrid => "planar_grid",
            ConfigKind::RandomLines => "random_lines",
            ConfigKind::ConeRulings => "cone_rulings",
            ConfigKind::Gk2Config => "gk2_config",
        }
    }

    pub fn from_name(name: &str) -> Option<ConfigKind> {
        ConfigKind::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Inclusive size range accepted by [`make_configuration`].
    pub fn size_range(self) -> (usize, usize) {
        match self {
            ConfigKind::GridJoints => (1, 8),
            ConfigKind::HyperboloidRulings => (1, 200),
            ConfigKind::PlanarGrid => (1, 30),
            ConfigKind::RandomLines => (1, 500),
            ConfigKind::ConeRulings => (1, 200),
            ConfigKind::Gk2Config => (1, 10),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Configuration {
    pub points: Vec<Point3>,
    pub lines: Vec<Line3>,
    pub planar_points: Vec<PlanarPoint>,
    pub planar_lines: Vec<PlanarLine>,
}

fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Rational point `((1 - t^2) / (1 + t^2), 2t / (1 + t^2))` of the unit circle.
pub fn circle_point(t: &Rat) -> (Rat, Rat) {
    let t2 = t * t;
    let den = Rat::one() + &t2;
    ((Rat::one() - &t2) / &den, (t * int(2)) / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RulingFamily {
    First,
    Second,
}

/// The ruling of `x^2 + y^2 - z^2 = 1` through the circle point of
/// parameter `t` at height 0: direction `(-s, c, 1)` for the first family
/// and `(s, -c, 1)` for the second.
pub fn hyperboloid_ruling(family: RulingFamily, t: &Rat) -> Line3 {
    let (c, s) = circle_point(t);
    let dir = match family {
        RulingFamily::First => [-s.clone(), c.clone(), Rat::one()],
        RulingFamily::Second => [s.clone(), -c.clone(), Rat::one()],
    };
    Line3::new(Point3::new(c, s, Rat::zero()), dir).expect("nonzero direction")
}

/// `n` lines of one ruling, at parameters `t = 0, 1, ..., n - 1`.
pub fn hyperboloid_family(family: RulingFamily, n: usize) -> Vec<Line3> {
    (0..n as i64).map(|t| hyperboloid_ruling(family, &int(t))).collect()
}

/// `x^2 + y^2 - z^2 - 1`.
pub fn hyperboloid() -> MultiPoly {
    let [x, y, z] = [0, 1, 2].map(|i| MultiPoly::var(3, i));
    &(&(&x * &x) + &(&y * &y)) - &(&(&z * &z) + &MultiPoly::one(3))
}

/// `x^2 + y^2 - z^2`.
pub fn cone() -> MultiPoly {
    let [x, y, z] = [0, 1, 2].map(|i| MultiPoly::var(3, i));
    &(&(&x * &x) + &(&y * &y)) - &(&z * &z)
}

/// Lines through the origin with directions `(c, s, 1)`, `(c, s)` on the
/// unit circle at `t = 0, 1, ..., n - 1`.
pub fn cone_family(n: usize) -> Vec<Line3> {
    (0..n as i64)
        .map(|t| {
            let (c, s) = circle_point(&int(t));
            Line3::new(Point3::from_ints(0, 0, 0), [c, s, Rat::one()]).expect("nonzero direction")
        })
        .collect()
}

/// Points `{1..k}^2` and the lines `y = a x + b`, `a, b in 1..=k`.
pub fn slope_grid(k: usize) -> (Vec<PlanarPoint>, Vec<PlanarLine>) {
    let k = k as i64;
    let points = (1..=k).flat_map(|x| (1..=k).map(move |y| PlanarPoint::from_ints(x, y))).collect();
    let lines = (1..=k).flat_map(|a| (1..=k).map(move |b| PlanarLine::graph(int(a), int(b)))).collect();
    (points, lines)
}

pub fn make_configuration(kind: ConfigKind, size: usize, seed: u64) -> Result<Configuration, CensusError> {
    let (min, max) = kind.size_range();
    if !(min..=max).contains(&size) {
        return Err(CensusError::UnsupportedSize { kind, size, min, max });
    }
    let k = size as i64;
    let mut cfg = Configuration::default();
    match kind {
        ConfigKind::GridJoints => {
            let axes: [Vec3; 3] = [[int(1), int(0), int(0)], [int(0), int(1), int(0)], [int(0), int(0), int(1)]];
            for (axis, dir) in axes.iter().enumerate() {
                for a in 0..k {
                    for b in 0..k {
                        let mut base = [int(0), int(0), int(0)];
                        base[(axis + 1) % 3] = int(a);
                        base[(axis + 2) % 3] = int(b);
                        cfg.lines.push(Line3::new(Point3(base), dir.clone()).expect("axis direction"));
                    }
                }
            }
            for x in 0..k {
                for y in 0..k {
                    for z in 0..k {
                        cfg.points.push(Point3::from_ints(x, y, z));
                    }
                }
            }
        }
        ConfigKind::HyperboloidRulings => {
            cfg.lines = hyperboloid_family(RulingFamily::First, size);
            cfg.lines.extend(hyperboloid_family(RulingFamily::Second, size));
        }
        ConfigKind::PlanarGrid => {
            for x in 0..k {
                for y in 0..k {
                    cfg.planar_points.push(PlanarPoint::from_ints(x, y));
                }
            }
            for i in 0..k {
                cfg.planar_lines.push(PlanarLine::new(int(1), int(0), int(i)).expect("x = i"));
            }
            for j in 0..k {
                cfg.planar_lines.push(PlanarLine::new(int(0), int(1), int(j)).expect("y = j"));
            }
        }
        ConfigKind::RandomLines => {
            let mut rng = rng::stream(seed, 0);
            let mut seen = BTreeSet::new();
            while cfg.lines.len() < size {
                let base = Point3::from_ints(rng.gen_range(-5..=5), rng.gen_range(-5..=5), rng.gen_range(-5..=5));
                let dir = [rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3)].map(int);
                if let Ok(l) = Line3::new(base, dir) {
                    if seen.insert(l.clone()) {
                        cfg.lines.push(l);
                    }
                }
            }
        }
        ConfigKind::ConeRulings => {
            cfg.lines = cone_family(size);
        }
        ConfigKind::Gk2Config => {
            for j in 0..k {
                for l in 0..k {
                    cfg.lines.push(Line3::new(Point3::from_ints(0, j, l), [int(1), int(0), int(0)]).expect("x axis"));
                }
            }
            for x in 0..k {
                for y in 0..k {
                    for z in 0..k {
                        cfg.points.push(Point3::from_ints(x, y, z));
                    }
                }
            }
        }
    }
    Ok(cfg)
}

/// Number of unordered line pairs that meet, by direct pairwise testing.
pub fn intersecting_pairs(lines: &[Line3]) -> usize {
    let mut n = 0;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if lines[i] != lines[j] && line_intersection(&lines[i], &lines[j]).expect("distinct").is_some() {
                n += 1;
            }
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::is_joint;

    fn line(b: [i64; 3], d: [i64; 3]) -> Line3 {
        Line3::new(Point3::from_ints(b[0], b[1], b[2]), d.map(int)).unwrap()
    }

    fn axes() -> Vec<Line3> {
        alloc::vec![line([0, 0, 0], [1, 0, 0]), line([0, 0, 0], [0, 1, 0]), line([0, 0, 0], [0, 0, 1])]
    }

    #[test]
    fn census_examples() {
        let c = intersection_census(&axes()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.multiplicity(&Point3::from_ints(0, 0, 0)), 3);
        let parallel = [line([0, 0, 0], [1, 0, 0]), line([0, 1, 0], [1, 0, 0])];
        assert!(intersection_census(&parallel).unwrap().is_empty());
        let grid = make_configuration(ConfigKind::GridJoints, 2, 0).unwrap();
        assert_eq!(grid.lines.len(), 12);
        let c = intersection_census(&grid.lines).unwrap();
        assert_eq!(c.len(), 8);
        assert!(c.multiplicities().all(|(_, m)| m == 3));
        assert_eq!(c.pair_total(), intersecting_pairs(&grid.lines));
        let dup = [axes()[0].clone(), axes()[0].clone()];
        assert_eq!(intersection_census(&dup), Err(CensusError::DuplicateLine(1)));
    }

    #[test]
    fn pk_examples() {
        let grid = make_configuration(ConfigKind::GridJoints, 2, 0).unwrap();
        let c = intersection_census(&grid.lines).unwrap();
        assert_eq!(pk_census(&c, 2).unwrap().len(), 8);
        assert!(pk_census(&c, 4).unwrap().is_empty());
        let pair = intersection_census(&axes()[..2]).unwrap();
        assert_eq!(pk_census(&pair, 2).unwrap(), alloc::vec![Point3::from_ints(0, 0, 0)]);
        assert_eq!(pk_census(&pair, 1), Err(CensusError::BadK(1)));
    }

    #[test]
    fn joints_examples() {
        assert_eq!(count_joints(&axes()).unwrap().count, 1);
        let grid = make_configuration(ConfigKind::GridJoints, 3, 0).unwrap();
        let r = count_joints(&grid.lines).unwrap();
        assert_eq!((r.lines, r.count), (27, 27));
        assert!((r.ratio - 27.0 / 27f64.powf(1.5)).abs() < 1e-12);
        for j in &r.joints {
            let [a, b, c] = j.witness;
            assert!(is_joint(&grid.lines[a], &grid.lines[b], &grid.lines[c], &j.point));
        }
        let fan: Vec<Line3> = (1..=5).map(|k| line([0, 0, 0], [1, k, 0])).collect();
        assert_eq!(count_joints(&fan).unwrap().count, 0);
    }

    #[test]
    fn concentration_examples() {
        let grid = make_configuration(ConfigKind::GridJoints, 2, 0).unwrap();
        let r = concentration(&grid.lines);
        assert_eq!(r.max_coplanar, 4);
        let plane = r.plane.unwrap();
        assert_eq!(grid.lines.iter().filter(|l| plane.contains_line(l)).count(), 4);

        let rulings = hyperboloid_family(RulingFamily::First, 10);
        let r = concentration(&rulings);
        assert_eq!(r.max_coquadric, 10);
        assert_eq!(r.strategy, QuadricStrategy::AllLines);
        assert_eq!(r.max_coplanar, 1);

        let skew = [line([0, 0, 0], [1, 0, 0]), line([0, 0, 1], [0, 1, 0]), line([0, 1, 2], [1, 0, 1])];
        assert_eq!(concentration(&skew).max_coplanar, 1);
    }

    #[test]
    fn quadric_search_strategies_find_the_regulus() {
        // 8 rulings of one family plus 4 random lines: no quadric holds all,
        // the best holds the 8 rulings.
        let mut lines = hyperboloid_family(RulingFamily::First, 8);
        lines.extend(make_configuration(ConfigKind::RandomLines, 4, 9).unwrap().lines);
        let (count, q, strategy) = max_coquadric(&lines);
        assert_eq!(strategy, QuadricStrategy::Triples);
        assert!(count >= 8);
        assert!(lines[..8].iter().all(|l| line_on_surface(l, q.as_ref().unwrap())));
    }

    #[test]
    fn planar_examples() {
        let pts = [(0, 0), (1, 0), (0, 1), (1, 1)].map(|(x, y)| PlanarPoint::from_ints(x, y));
        let lines = [
            PlanarLine::new(int(0), int(1), int(0)).unwrap(),
            PlanarLine::new(int(0), int(1), int(1)).unwrap(),
            PlanarLine::new(int(1), int(0), int(0)).unwrap(),
            PlanarLine::new(int(1), int(0), int(1)).unwrap(),
        ];
        assert_eq!(planar_incidences(&pts, &lines).unwrap().count, 8);
        let on_line: Vec<PlanarPoint> = (0..7).map(|x| PlanarPoint::from_ints(x, 2 * x)).collect();
        let r = planar_incidences(&on_line, &[PlanarLine::graph(int(2), int(0))]).unwrap();
        assert_eq!(r.count, 7);
        assert!(r.bound >= 7.0);
        let (p, l) = slope_grid(4);
        let r = planar_incidences(&p, &l).unwrap();
        assert_eq!(r.count, brute_incidences(&p, &l));
        assert!(r.count as f64 <= 3.0 * r.bound);
    }

    fn brute_incidences(p: &[PlanarPoint], l: &[PlanarLine]) -> usize {
        let mut n = 0;
        for pt in p {
            for ln in l {
                let [a, b, c] = ln.coeffs();
                if a * pt.x() + b * pt.y() == *c {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn configuration_examples() {
        assert_eq!(make_configuration(ConfigKind::GridJoints, 2, 0).unwrap().lines.len(), 12);
        let h = make_configuration(ConfigKind::HyperboloidRulings, 10, 0).unwrap();
        assert_eq!(h.lines.len(), 20);
        assert!(h.lines.iter().all(|l| line_on_surface(l, &hyperboloid())));
        let g = make_configuration(ConfigKind::PlanarGrid, 3, 0).unwrap();
        assert_eq!((g.planar_points.len(), g.planar_lines.len()), (9, 6));
        assert!(make_configuration(ConfigKind::GridJoints, 0, 0).is_err());
        assert!(make_configuration(ConfigKind::GridJoints, 9, 0).is_err());
        let c = make_configuration(ConfigKind::ConeRulings, 6, 0).unwrap();
        assert!(c.lines.iter().all(|l| line_on_surface(l, &cone())));
        let r1 = make_configuration(ConfigKind::RandomLines, 30, 5).unwrap();
        assert_eq!(r1, make_configuration(ConfigKind::RandomLines, 30, 5).unwrap());
        assert_eq!(r1.lines.len(), 30);
    }

    #[test]
    fn gk2_config_meets_hypotheses() {
        let n = 3;
        let cfg = make_configuration(ConfigKind::Gk2Config, n, 0).unwrap();
        assert_eq!(cfg.lines.len(), n * n);
        assert!(concentration(&cfg.lines).max_coplanar <= n);
        for l in &cfg.lines {
            assert_eq!(cfg.points.iter().filter(|p| l.contains(p)).count(), n);
        }
    }

    #[test]
    fn rulings_meet_in_pairs_only() {
        let h = make_configuration(ConfigKind::HyperboloidRulings, 6, 0).unwrap();
        let c = intersection_census(&h.lines).unwrap();
        assert!(c.multiplicities().all(|(_, m)| m == 2));
        // Each first-family line meets each second-family line (none are antipodal here).
        assert_eq!(c.len(), 36);
    }
}
