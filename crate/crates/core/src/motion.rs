//! Rigid motions of the plane as points of `R^3`, and the dictionary
//! between congruent point pairs and intersecting lines.
//!
//! A non-translation is recorded as `(x, y, z)`: its centre `(x, y)` and
//! `z = cot(θ/2)` for the counterclockwise angle `θ`. The motions taking
//! `a` to `b` then form the line `{(m + (z/2) rot90(b - a), z)}` with `m`
//! the midpoint of `a` and `b`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::Rat;
use crate::geometry::{line_intersection, Line3, PlanarPoint, Point3};
use crate::rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MotionError {
    #[error("point {0} appears more than once")]
    DuplicatePoint(usize),
    #[error("{got} points exceeds the cap of {cap}")]
    TooManyPoints { got: usize, cap: usize },
}

/// Default cap on the number of points for quadruple counting.
pub const QUADRUPLE_CAP: usize = 40;

/// The line of rotations taking `a` to `b`, tagged with `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotionLine {
    pub line: Line3,
    pub a: PlanarPoint,
    pub b: PlanarPoint,
}

fn half(r: &Rat) -> Rat {
    r / Rat::from_integer(2.into())
}

pub fn motion_line(a: &PlanarPoint, b: &PlanarPoint) -> MotionLine {
    let m = [half(&(a.x() + b.x())), half(&(a.y() + b.y()))];
    let dir = [-half(&(b.y() - a.y())), half(&(b.x() - a.x())), Rat::one()];
    let line = Line3::new(Point3::new(m[0].clone(), m[1].clone(), Rat::zero()), dir).expect("z component is 1");
    MotionLine { line, a: a.clone(), b: b.clone() }
}

/// Recover `(a, b)` from a motion line; `None` for horizontal lines,
/// which are not motion lines.
pub fn recover_tags(line: &Line3) -> Option<(PlanarPoint, PlanarPoint)> {
    let dir = line.dir();
    if dir[2].is_zero() {
        return None;
    }
    let unit: Vec<Rat> = dir.iter().map(|c| c / &dir[2]).collect();
    let t = -(&line.base().coords()[2] / &dir[2]);
    let at0 = line.point_at(&t);
    let [mx, my, _] = at0.coords().clone();
    // unit = (rot90(b - a) / 2, 1), so b - a = (2 unit_y, -2 unit_x).
    let (hx, hy) = (unit[1].clone(), -unit[0].clone());
    Some((PlanarPoint::new(&mx - &hx, &my - &hy), PlanarPoint::new(mx + hx, my + hy)))
}

/// Image of `w` under the counterclockwise rotation about `(x, y)` by
/// `θ = 2 arccot z`.
pub fn apply_motion(x: &Rat, y: &Rat, z: &Rat, w: &PlanarPoint) -> PlanarPoint {
    let z2 = z * z;
    let den = &z2 + Rat::one();
    let cos = (&z2 - Rat::one()) / &den;
    let sin = (z * Rat::from_integer(2.into())) / den;
    let (dx, dy) = (w.x() - x, w.y() - y);
    PlanarPoint::new(x + &(&cos * &dx - &sin * &dy), y + &(&sin * &dx + &cos * &dy))
}

fn check_distinct(points: &[PlanarPoint]) -> Result<(), MotionError> {
    let mut seen = BTreeSet::new();
    match points.iter().position(|p| !seen.insert(p)) {
        Some(i) => Err(MotionError::DuplicatePoint(i)),
        None => Ok(()),
    }
}

/// Squared distances over unordered pairs of distinct points.
pub fn distance_set(points: &[PlanarPoint]) -> Result<BTreeSet<Rat>, MotionError> {
    check_distinct(points)?;
    let mut out = BTreeSet::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            out.insert(points[i].dist2(&points[j]));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrupleReport {
    pub points: usize,
    /// Ordered `(e1, e2, e3, e4)` with `e1 != e2`, `e3 != e4` and
    /// `|e1 - e2| = |e3 - e4|`.
    pub total: u64,
    /// Pairs of motion lines that meet; filled by the incidence check.
    pub rotational: Option<u64>,
    /// Quadruples with `e3 - e1 = e4 - e2`; filled by the incidence check.
    pub translational: Option<u64>,
    pub distances: usize,
    /// `(N^2 - N)^2 / |D|`.
    pub cs_bound: Rat,
    /// `rotational + translational == total`; filled by the incidence check.
    pub consistent: Option<bool>,
}

impl QuadrupleReport {
    /// `total * |D| >= (N^2 - N)^2`, compared as integers.
    pub fn cauchy_schwarz_holds(&self) -> bool {
        let n = self.points as u128;
        u128::from(self.total) * self.distances as u128 >= (n * n - n).pow(2)
    }
}

fn check_cap(points: &[PlanarPoint], cap: usize) -> Result<(), MotionError> {
    if points.len() > cap {
        return Err(MotionError::TooManyPoints { got: points.len(), cap });
    }
    check_distinct(points)
}

pub fn quadruple_count(points: &[PlanarPoint]) -> Result<QuadrupleReport, MotionError> {
    quadruple_count_capped(points, QUADRUPLE_CAP)
}

pub fn quadruple_count_capped(points: &[PlanarPoint], cap: usize) -> Result<QuadrupleReport, MotionError> {
    check_cap(points, cap)?;
    let n = points.len();
    let d2: Vec<Vec<Rat>> = points.iter().map(|p| points.iter().map(|q| p.dist2(q)).collect()).collect();
    let mut total = 0u64;
    for e1 in 0..n {
        for e2 in (0..n).filter(|&e2| e2 != e1) {
            for e3 in 0..n {
                for e4 in (0..n).filter(|&e4| e4 != e3) {
                    if d2[e1][e2] == d2[e3][e4] {
                        total += 1;
                    }
                }
            }
        }
    }
    let distances = distance_set(points)?.len();
    let pairs = (n * n - n) as i64;
    let cs_bound = if distances == 0 {
        Rat::zero()
    } else {
        Rat::new((pairs * pairs).into(), (distances as i64).into())
    };
    Ok(QuadrupleReport {
        points: n,
        total,
        rotational: None,
        translational: None,
        distances,
        cs_bound,
        consistent: None,
    })
}

/// Counts quadruples a second way, through the motion lines, and compares.
///
/// `(e1, e2, e3, e4)` is a quadruple exactly when an orientation-preserving
/// motion takes `e1` to `e3` and `e2` to `e4`. A rotation does so exactly
/// when `l(e1, e3)` and `l(e2, e4)` meet; the remaining motions are
/// translations, found by comparing `e3 - e1` with `e4 - e2`.
pub fn quadruple_incidence_check(points: &[PlanarPoint]) -> Result<QuadrupleReport, MotionError> {
    quadruple_incidence_check_capped(points, QUADRUPLE_CAP)
}

pub fn quadruple_incidence_check_capped(points: &[PlanarPoint], cap: usize) -> Result<QuadrupleReport, MotionError> {
    let mut report = quadruple_count_capped(points, cap)?;
    let n = points.len();
    let lines: Vec<Line3> = points
        .iter()
        .flat_map(|a| points.iter().map(move |b| motion_line(a, b).line))
        .collect();
    let idx = |a: usize, b: usize| a * n + b;
    let mut rotational = 0u64;
    let mut translational = 0u64;
    for e1 in 0..n {
        for e2 in (0..n).filter(|&e2| e2 != e1) {
            for e3 in 0..n {
                for e4 in 0..n {
                    let (l13, l24) = (&lines[idx(e1, e3)], &lines[idx(e2, e4)]);
                    if line_intersection(l13, l24).expect("motion lines of distinct pairs are distinct").is_some() {
                        rotational += 1;
                    }
                    let (p1, p2, p3, p4) = (&points[e1], &points[e2], &points[e3], &points[e4]);
                    if p3.x() - p1.x() == p4.x() - p2.x() && p3.y() - p1.y() == p4.y() - p2.y() {
                        translational += 1;
                    }
                }
            }
        }
    }
    report.rotational = Some(rotational);
    report.translational = Some(translational);
    report.consistent = Some(rotational + translational == report.total);
    Ok(report)
}

/// `n` distinct seeded planar points with coordinates `p / q`,
/// `|p| <= range`, `q` in `1..=2`.
///
/// # Panics
/// If fewer than `n` such points exist.
pub fn random_planar_points(n: usize, range: i64, seed: u64) -> Vec<PlanarPoint> {
    let side = 4 * range as u128 + 1;
    assert!(side * side >= n as u128, "range too small for {n} distinct points");
    let mut rng = rng::stream(seed, 0);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let mut c = || Rat::new(rng.gen_range(-range..=range).into(), rng.gen_range(1..=2i64).into());
        let p = PlanarPoint::new(c(), c());
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out
}
