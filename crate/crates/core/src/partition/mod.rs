//! Iterated polynomial ham-sandwich partitioning.
//!
//! Each round lifts the points by all monomials of degree `1..=D` and looks
//! for an affine hyperplane in the lifted space, i.e. a polynomial of degree
//! at most `D`, that simultaneously bisects every current sign class. Cells
//! are sign vectors of the factors found so far; points on a factor's zero
//! set are set aside as boundary.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    isolate_real_roots, monomials_up_to, nullspace_vector, simplest_between, Matrix, Monomial, MultiPoly, Rat,
};
use crate::geometry::{restrict_to_line, Line3, Point3};
use crate::rng;

mod search;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("target must be a power of two at least 2, got {0}")]
    BadTarget(usize),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("{classes} classes need at least that many non-constant monomials; degree {degree} has {monomials}")]
    DimensionTooSmall { classes: usize, degree: u32, monomials: usize },
    #[error("no certified bisector found in round {round} within the search budget")]
    BudgetExhausted { round: usize, partial: Box<PartitionResult> },
}

/// Non-constant monomials of degree at most `degree` in three variables.
pub fn lifted_dimension(degree: u32) -> usize {
    let d = degree as usize;
    (d + 1) * (d + 2) * (d + 3) / 6 - 1
}

/// Smallest degree whose lifted dimension is at least `classes`.
pub fn degree_for_classes(classes: usize) -> u32 {
    (1..).find(|&d| lifted_dimension(d) >= classes).expect("dimension grows without bound")
}

fn lift_monomials(degree: u32) -> Vec<Monomial> {
    monomials_up_to(3, degree).into_iter().skip(1).collect()
}

fn monomial_value(m: &Monomial, w: &Point3) -> Rat {
    m.exponents()
        .iter()
        .zip(w.coords())
        .fold(Rat::one(), |acc, (&e, c)| (0..e).fold(acc, |a, _| a * c))
}

/// Values at `w` of every monomial of degree `1..=degree`, in graded order.
pub fn lift(w: &Point3, degree: u32) -> Vec<Rat> {
    lift_monomials(degree).iter().map(|m| monomial_value(m, w)).collect()
}

/// The polynomial `Σ coef_j m_j + coef_last` for lifted coefficients.
fn poly_from_lifted(coef: &[Rat], degree: u32) -> MultiPoly {
    let monos = lift_monomials(degree);
    let mut g = MultiPoly::constant(3, coef[monos.len()].clone());
    for (m, c) in monos.into_iter().zip(coef) {
        g.add_term(m, c.clone());
    }
    g
}

/// Whether `g` leaves at most `⌈|C|/2⌉` points of every class strictly on
/// each side.
pub fn bisects(g: &MultiPoly, classes: &[Vec<Point3>]) -> bool {
    classes.iter().all(|c| {
        let half = c.len().div_ceil(2);
        let (mut pos, mut neg) = (0, 0);
        for w in c {
            let v = g.eval(w.coords()).expect("arity 3");
            if v.is_positive() {
                pos += 1;
            } else if v.is_negative() {
                neg += 1;
            }
        }
        pos <= half && neg <= half
    })
}

/// How a bisector was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BisectStrategy {
    /// Seeded local search with exact line searches.
    Search,
    /// Enumeration of hyperplanes through subsets of lifted points.
    Exhaustive,
    /// Every class has at most one point; any nonzero polynomial works.
    Trivial,
}

/// Search effort per bisection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub restarts: usize,
    pub passes: usize,
    pub random_directions: usize,
    /// Largest number of point subsets the enumeration may visit.
    pub enumeration: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { restarts: 40, passes: 30, random_directions: 8, enumeration: 20_000 }
    }
}

impl SearchBudget {
    /// Budget for opportunistic attempts below the scheduled degree.
    pub fn probe() -> Self {
        SearchBudget { restarts: 4, passes: 12, random_directions: 4, enumeration: 0 }
    }
}

/// Finds `g` of degree at most `degree` bisecting every class.
///
/// `Ok(None)` means the search budget ran out; a bisector always exists
/// when the lifted dimension is at least the number of classes.
pub fn bisect_classes(classes: &[Vec<Point3>], degree: u32, seed: u64) -> Result<Option<MultiPoly>, PartitionError> {
    if degree == 0 {
        return Err(PartitionError::ZeroDegree);
    }
    let monomials = lifted_dimension(degree);
    if monomials < classes.len() {
        return Err(PartitionError::DimensionTooSmall { classes: classes.len(), degree, monomials });
    }
    let mut rng = rng::stream(seed, 0);
    Ok(find_bisector(classes, degree, &mut rng, &SearchBudget::default()).map(|(g, _)| g))
}

/// Lifted points with a trailing 1, grouped by class.
struct Lifted {
    dim: usize,
    class_of: Vec<usize>,
    vectors: Vec<Vec<Rat>>,
    halves: Vec<usize>,
}

impl Lifted {
    fn new(classes: &[Vec<Point3>], degree: u32) -> Self {
        let monos = lift_monomials(degree);
        let mut class_of = Vec::new();
        let mut vectors = Vec::new();
        for (c, pts) in classes.iter().enumerate() {
            for w in pts {
                let mut v: Vec<Rat> = monos.iter().map(|m| monomial_value(m, w)).collect();
                v.push(Rat::one());
                vectors.push(v);
                class_of.push(c);
            }
        }
        Lifted { dim: monos.len() + 1, class_of, vectors, halves: classes.iter().map(|c| c.len().div_ceil(2)).collect() }
    }

    fn values(&self, coef: &[Rat]) -> Vec<Rat> {
        self.vectors.iter().map(|v| dot(v, coef)).collect()
    }
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// `(excess over the half bounds, boundary points)`; zero excess certifies.
type Score = (usize, usize);

#[derive(Clone)]
struct Tally {
    pos: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
}

impl Tally {
    fn new(classes: usize) -> Self {
        Tally { pos: alloc::vec![0; classes], neg: alloc::vec![0; classes], zero: 0 }
    }

    fn add(&mut self, class: usize, sign: Ordering, delta: isize) {
        let slot = match sign {
            Ordering::Greater => &mut self.pos[class],
            Ordering::Less => &mut self.neg[class],
            Ordering::Equal => &mut self.zero,
        };
        *slot = slot.checked_add_signed(delta).expect("tally underflow");
    }

    fn score(&self, halves: &[usize]) -> Score {
        let excess = halves
            .iter()
            .enumerate()
            .map(|(c, &h)| self.pos[c].saturating_sub(h) + self.neg[c].saturating_sub(h))
            .sum();
        (excess, self.zero)
    }
}

fn sign_of(r: &Rat) -> Ordering {
    r.cmp(&Rat::zero())
}

fn score_of(lifted: &Lifted, coef: &[Rat]) -> Score {
    let mut t = Tally::new(lifted.halves.len());
    for (v, &c) in lifted.values(coef).iter().zip(&lifted.class_of) {
        t.add(c, sign_of(v), 1);
    }
    t.score(&lifted.halves)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).try_fold(1u64, |acc, i| acc.checked_mul(n - i).map(|x| x / (i + 1))).unwrap_or(u64::MAX)
}

fn next_subset(idx: &mut [usize], n: usize) -> bool {
    let r = idx.len();
    for i in (0..r).rev() {
        if idx[i] < n - r + i {
            idx[i] += 1;
            for j in i + 1..r {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Hyperplanes through `dim - 1` lifted points (or all of them, if fewer),
/// in lexicographic subset order; the passing one with fewest boundary
/// points wins.
fn enumerate(lifted: &Lifted, budget: u64) -> Option<Vec<Rat>> {
    let n = lifted.vectors.len();
    let r = (lifted.dim - 1).min(n);
    if r == 0 || binomial(n as u64, r as u64) > budget {
        return None;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    let mut best: Option<(usize, Vec<Rat>)> = None;
    loop {
        let m = Matrix::from_rows(lifted.dim, idx.iter().map(|&i| lifted.vectors[i].clone()).collect());
        if let Some(coef) = nullspace_vector(&m) {
            if coef[..lifted.dim - 1].iter().any(|c| !c.is_zero()) {
                let (excess, zero) = score_of(lifted, &coef);
                if excess == 0 && best.as_ref().is_none_or(|(z, _)| zero < *z) {
                    best = Some((zero, coef));
                }
            }
        }
        if !next_subset(&mut idx, n) {
            break;
        }
    }
    best.map(|(_, c)| c)
}

/// Exact coefficients for a floating candidate found in coordinates
/// scaled by `1 / scale`: progressively finer roundings, then the exact
/// binary value.
fn exact_candidates(coef: &[f64], degree: u32, scale: &Rat) -> Vec<Vec<Rat>> {
    let degrees: Vec<u32> = lift_monomials(degree).iter().map(Monomial::degree).chain([0]).collect();
    let unscale = |c: Rat, k: u32| (0..k).fold(c, |acc, _| acc / scale);
    let binary: Vec<Rat> = coef.iter().map(|&c| Rat::from_float(c).unwrap_or_else(Rat::zero)).collect();
    let mut out: Vec<Vec<Rat>> = [1_000i64, 1_000_000, 1_000_000_000]
        .iter()
        .map(|&d| {
            let eps = Rat::new(1.into(), d.into());
            binary
                .iter()
                .zip(&degrees)
                .map(|(r, &k)| unscale(simplest_between(&(r - &eps), &(r + &eps)), k))
                .collect()
        })
        .collect();
    out.push(binary.into_iter().zip(&degrees).map(|(r, &k)| unscale(r, k)).collect());
    out
}

fn find_bisector(
    classes: &[Vec<Point3>],
    degree: u32,
    rng: &mut ChaCha8Rng,
    budget: &SearchBudget,
) -> Option<(MultiPoly, BisectStrategy)> {
    if classes.iter().all(|c| c.len() <= 1) {
        return Some((MultiPoly::var(3, 0), BisectStrategy::Trivial));
    }
    let certified = |coef: &[Rat]| {
        let g = poly_from_lifted(coef, degree);
        // Certify independently of the search bookkeeping.
        (bisects(&g, classes) && !g.is_constant()).then_some(g)
    };
    let scale = classes
        .iter()
        .flatten()
        .flat_map(|w| w.coords().iter().map(Signed::abs))
        .fold(Rat::one(), |m, c| if c > m { c } else { m });
    let scaled: Vec<Vec<Vec<Rat>>> = classes
        .iter()
        .map(|c| {
            c.iter()
                .map(|w| {
                    let p = Point3(core::array::from_fn(|i| &w.coords()[i] / &scale));
                    lift(&p, degree)
                })
                .collect()
        })
        .collect();
    if let Some(coef) = search::search(&search::FloatLifted::new(&scaled), rng, budget) {
        if let Some(g) = exact_candidates(&coef, degree, &scale).iter().find_map(|c| certified(c)) {
            return Some((g, BisectStrategy::Search));
        }
    }
    let lifted = Lifted::new(classes, degree);
    let coef = enumerate(&lifted, budget.enumeration)?;
    certified(&coef).map(|g| (g, BisectStrategy::Exhaustive))
}

/// A cell label: `true` where the factor is positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SignVector(pub Vec<bool>);

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(if s { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl SignVector {
    pub fn parse(s: &str) -> Option<SignVector> {
        s.chars()
            .map(|c| match c {
                '+' => Some(true),
                '-' => Some(false),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(SignVector)
    }
}

/// One bisection round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Round {
    /// Degree allowed by the schedule for this round's class count.
    pub scheduled_degree: u32,
    /// Degree of the factor actually found (may be lower than scheduled).
    pub degree: u32,
    pub classes: usize,
    pub strategy: BisectStrategy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionResult {
    pub factors: Vec<MultiPoly>,
    /// Sign vector of each input point, `None` for boundary points.
    pub signs: Vec<Option<SignVector>>,
    /// Indices of points on the zero set of some factor.
    pub boundary: Vec<usize>,
    pub total_degree: u32,
    pub target: usize,
    pub rounds: Vec<Round>,
}

impl PartitionResult {
    pub fn points(&self) -> usize {
        self.signs.len()
    }

    /// `⌈…⌈⌈M/2⌉/2⌉…⌉` over the rounds performed.
    pub fn class_bound(&self) -> usize {
        compounded_ceiling(self.points(), self.rounds.len())
    }

    /// Product of all factors.
    pub fn product(&self) -> MultiPoly {
        self.factors.iter().fold(MultiPoly::one(3), |acc, g| &acc * g)
    }

    pub fn sign_vector_at(&self, w: &Point3) -> Option<SignVector> {
        let mut out = Vec::with_capacity(self.factors.len());
        for g in &self.factors {
            let v = g.eval(w.coords()).expect("arity 3");
            if v.is_zero() {
                return None;
            }
            out.push(v.is_positive());
        }
        Some(SignVector(out))
    }
}

pub fn compounded_ceiling(m: usize, rounds: usize) -> usize {
    (0..rounds).fold(m, |b, _| b.div_ceil(2))
}

/// Total of the scheduled degrees for a target `s`.
pub fn scheduled_total_degree(s: usize) -> u32 {
    let rounds = s.trailing_zeros() as usize;
    (1..=rounds).map(|i| degree_for_classes(1 << (i - 1))).sum()
}

fn classes_of(points: &[Point3], signs: &[Option<SignVector>]) -> BTreeMap<SignVector, Vec<Point3>> {
    let mut out: BTreeMap<SignVector, Vec<Point3>> = BTreeMap::new();
    for (w, s) in points.iter().zip(signs) {
        if let Some(s) = s {
            out.entry(s.clone()).or_default().push(w.clone());
        }
    }
    out
}

pub fn partition(points: &[Point3], s: usize, seed: u64) -> Result<PartitionResult, PartitionError> {
    partition_with_budget(points, s, seed, &SearchBudget::default())
}

pub fn partition_with_budget(
    points: &[Point3],
    s: usize,
    seed: u64,
    budget: &SearchBudget,
) -> Result<PartitionResult, PartitionError> {
    if s < 2 || !s.is_power_of_two() {
        return Err(PartitionError::BadTarget(s));
    }
    let mut result = PartitionResult {
        factors: Vec::new(),
        signs: alloc::vec![Some(SignVector::default()); points.len()],
        boundary: Vec::new(),
        total_degree: 0,
        target: s,
        rounds: Vec::new(),
    };
    let rounds = s.trailing_zeros() as usize;
    for round in 1..=rounds {
        let classes: Vec<Vec<Point3>> = classes_of(points, &result.signs).into_values().filter(|c| c.len() >= 2).collect();
        let scheduled = degree_for_classes(1 << (round - 1));
        let mut found = None;
        for degree in 1..=scheduled {
            let (b, stream) = if degree < scheduled {
                (SearchBudget::probe(), 2 * round as u64)
            } else {
                (*budget, 2 * round as u64 + 1)
            };
            let mut rng = rng::stream(seed, (stream << 8) | u64::from(degree));
            if let Some((g, strategy)) = find_bisector(&classes, degree, &mut rng, &b) {
                found = Some((g, strategy));
                break;
            }
        }
        let Some((g, strategy)) = found else {
            return Err(PartitionError::BudgetExhausted { round, partial: Box::new(result) });
        };
        let degree = g.degree().expect("non-constant");
        for (i, w) in points.iter().enumerate() {
            let Some(sv) = &mut result.signs[i] else { continue };
            let v = g.eval(w.coords()).expect("arity 3");
            if v.is_zero() {
                result.signs[i] = None;
                result.boundary.push(i);
            } else {
                sv.0.push(v.is_positive());
            }
        }
        result.boundary.sort_unstable();
        result.factors.push(g);
        result.total_degree += degree;
        result.rounds.push(Round { scheduled_degree: scheduled, degree, classes: classes.len(), strategy });
    }
    Ok(result)
}

/// Exact class sizes, with boundary points counted separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCensus {
    pub classes: BTreeMap<SignVector, usize>,
    pub boundary: usize,
}

impl CellCensus {
    pub fn total(&self) -> usize {
        self.classes.values().sum::<usize>() + self.boundary
    }

    pub fn largest(&self) -> usize {
        self.classes.values().copied().max().unwrap_or(0)
    }
}

pub fn cell_census(result: &PartitionResult) -> CellCensus {
    let mut classes = BTreeMap::new();
    for s in result.signs.iter().flatten() {
        *classes.entry(s.clone()).or_insert(0) += 1;
    }
    CellCensus { classes, boundary: result.boundary.len() }
}

/// How a line meets the partition's zero set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Crossing {
    /// Distinct real parameters where some factor vanishes on the line.
    Count(usize),
    /// The line lies in the zero set of this factor.
    Contained { factor: usize },
}

impl Crossing {
    pub fn count(&self) -> Option<usize> {
        match self {
            Crossing::Count(n) => Some(*n),
            Crossing::Contained { .. } => None,
        }
    }
}

fn restrictions(l: &Line3, result: &PartitionResult) -> Result<Vec<crate::algebra::UniPoly>, usize> {
    result
        .factors
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let u = restrict_to_line(g, l).expect("arity 3");
            if u.is_zero() {
                Err(i)
            } else {
                Ok(u)
            }
        })
        .collect()
}

pub fn line_crossings(l: &Line3, result: &PartitionResult) -> Crossing {
    match restrictions(l, result) {
        Err(factor) => Crossing::Contained { factor },
        Ok(us) => {
            let q = us.iter().fold(crate::algebra::UniPoly::constant(Rat::one()), |acc, u| acc.mul(u));
            Crossing::Count(crate::algebra::real_root_count(&q).expect("nonzero product"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingReport {
    pub crossings: Vec<Crossing>,
    pub total_degree: u32,
}

impl CrossingReport {
    /// Every non-contained line crosses at most `total_degree` times.
    pub fn within_degree(&self) -> bool {
        self.crossings.iter().filter_map(Crossing::count).all(|n| n <= self.total_degree as usize)
    }

    pub fn contained(&self) -> usize {
        self.crossings.iter().filter(|c| c.count().is_none()).count()
    }
}

pub fn crossing_report(lines: &[Line3], result: &PartitionResult) -> CrossingReport {
    CrossingReport { crossings: lines.iter().map(|l| line_crossings(l, result)).collect(), total_degree: result.total_degree }
}

/// Cells visited by a line: sign vectors on the open intervals between
/// consecutive crossings. A contained line visits none.
pub fn cells_on_line(l: &Line3, result: &PartitionResult) -> BTreeSet<SignVector> {
    let Ok(us) = restrictions(l, result) else {
        return BTreeSet::new();
    };
    let q = us.iter().fold(crate::algebra::UniPoly::constant(Rat::one()), |acc, u| acc.mul(u));
    let intervals = isolate_real_roots(&q).expect("nonzero product");
    let mut samples: Vec<Rat> = intervals.iter().map(|(_, hi)| hi.clone()).collect();
    samples.push(intervals.first().map_or_else(Rat::zero, |(lo, _)| lo.clone()));
    samples
        .iter()
        .map(|t| SignVector(us.iter().map(|u| u.eval(t).is_positive()).collect()))
        .collect()
}

/// Incidences between lines and the nonempty cells of a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellIncidenceReport {
    pub incidences: usize,
    pub lines: usize,
    pub contained: usize,
    pub total_degree: u32,
}

impl CellIncidenceReport {
    /// `(total_degree + 1) * lines`.
    pub fn bound(&self) -> usize {
        (self.total_degree as usize + 1) * self.lines
    }
}

pub fn cell_incidences(lines: &[Line3], result: &PartitionResult) -> CellIncidenceReport {
    let occupied: BTreeSet<SignVector> = result.signs.iter().flatten().cloned().collect();
    let mut incidences = 0;
    let mut contained = 0;
    for l in lines {
        if restrictions(l, result).is_err() {
            contained += 1;
            continue;
        }
        incidences += cells_on_line(l, result).intersection(&occupied).count();
    }
    CellIncidenceReport { incidences, lines: lines.len(), contained, total_degree: result.total_degree }
}

/// `m` distinct seeded points with integer coordinates in `[-range, range]`.
pub fn random_points(m: usize, range: i64, seed: u64) -> Vec<Point3> {
    let mut rng = rng::stream(seed, 0);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(m);
    let side = 2 * range as u128 + 1;
    assert!(side * side * side >= m as u128, "range too small for {m} distinct points");
    while out.len() < m {
        let w = Point3::from_ints(rng.gen_range(-range..=range), rng.gen_range(-range..=range), rng.gen_range(-range..=range));
        if seen.insert(w.clone()) {
            out.push(w);
        }
    }
    out
}

/// Human-readable summary of a sign vector per point.
pub fn format_signs(result: &PartitionResult) -> Vec<String> {
    use alloc::string::ToString;
    result
        .signs
        .iter()
        .map(|s| s.as_ref().map_or_else(|| "0".into(), ToString::to_string))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use proptest::prelude::*;

    fn cube() -> Vec<Point3> {
        (0..8).map(|i| Point3::from_ints(i & 1, (i >> 1) & 1, (i >> 2) & 1)).collect()
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift(&Point3::from_ints(1, 1, 1), 1), [int(1), int(1), int(1)]);
        assert_eq!(lift(&Point3::from_ints(2, 0, 0), 2), [2, 0, 0, 4, 0, 0, 0, 0, 0].map(int));
        assert!(lift(&Point3::from_ints(0, 0, 0), 3).iter().all(Zero::is_zero));
        for d in 1..5 {
            assert_eq!(lift(&Point3::from_ints(1, 2, 3), d).len(), lifted_dimension(d));
        }
    }

    #[test]
    fn degree_schedule() {
        assert_eq!([1, 2, 4, 8, 16, 32].map(degree_for_classes), [1, 1, 2, 2, 3, 4]);
        assert_eq!(scheduled_total_degree(8), 4);
        for k in 1..=6 {
            let s = 1usize << k;
            assert!(f64::from(scheduled_total_degree(s)) <= 8.0 * (s as f64).cbrt() + 4.0);
        }
    }

    #[test]
    fn bisect_examples() {
        let two = alloc::vec![alloc::vec![Point3::from_ints(0, 0, 0), Point3::from_ints(1, 0, 0)]];
        let g = bisect_classes(&two, 1, 0).unwrap().unwrap();
        assert!(bisects(&g, &two));
        let axes: Vec<Vec<Point3>> = (0..3)
            .map(|i| {
                let mut a = [0, 0, 0];
                a[i] = 1;
                alloc::vec![Point3::from_ints(0, 0, 0), Point3::from_ints(a[0], a[1], a[2])]
            })
            .collect();
        let g = bisect_classes(&axes, 1, 0).unwrap().unwrap();
        assert!(bisects(&g, &axes) && g.degree() == Some(1));
        let one = alloc::vec![cube()];
        let g = bisect_classes(&one, 1, 0).unwrap().unwrap();
        assert!(bisects(&g, &one));
        let four = alloc::vec![cube(); 4];
        assert!(matches!(bisect_classes(&four, 1, 0), Err(PartitionError::DimensionTooSmall { .. })));
    }

    #[test]
    fn enumeration_finds_a_bisector() {
        let axes: Vec<Vec<Point3>> = (0..3)
            .map(|i| {
                let mut a = [0, 0, 0];
                a[i] = 2;
                alloc::vec![Point3::from_ints(1, 1, 1), Point3::from_ints(a[0], a[1], a[2])]
            })
            .collect();
        let lifted = Lifted::new(&axes, 1);
        let coef = enumerate(&lifted, 1000).unwrap();
        assert!(bisects(&poly_from_lifted(&coef, 1), &axes));
    }

    #[test]
    fn cube_partition() {
        let r = partition(&cube(), 8, 0).unwrap();
        assert_eq!(r.factors.len(), 3);
        let census = cell_census(&r);
        assert_eq!(census.total(), 8);
        assert!(census.classes.len() <= 8);
        assert!(census.largest() <= r.class_bound());
        assert!(r.total_degree <= scheduled_total_degree(8));
    }

    #[test]
    fn two_point_partition() {
        let pts = [Point3::from_ints(0, 0, 0), Point3::from_ints(3, 1, 4)];
        let r = partition(&pts, 2, 0).unwrap();
        assert_eq!(r.factors.len(), 1);
        let census = cell_census(&r);
        assert!(census.classes.values().all(|&n| n <= 1));
        assert_eq!(census.total(), 2);
        assert_eq!(partition(&pts, 3, 0), Err(PartitionError::BadTarget(3)));
    }

    #[test]
    fn random_partition_contract() {
        let pts = random_points(64, 50, 1);
        let r = partition(&pts, 4, 1).unwrap();
        let census = cell_census(&r);
        assert!(census.classes.len() <= 4);
        assert_eq!(r.class_bound(), 16);
        assert!(census.largest() <= 16);
        assert_eq!(census.total(), 64);
        for (i, w) in pts.iter().enumerate() {
            assert_eq!(r.sign_vector_at(w), r.signs[i]);
        }
    }

    fn result_with(factors: Vec<MultiPoly>) -> PartitionResult {
        PartitionResult {
            total_degree: factors.iter().map(|g| g.degree().unwrap_or(0)).sum(),
            factors,
            signs: Vec::new(),
            boundary: Vec::new(),
            target: 2,
            rounds: Vec::new(),
        }
    }

    #[test]
    fn crossing_examples() {
        let z = MultiPoly::var(3, 2);
        let quarter = |c: Rat| &z - &MultiPoly::constant(3, c);
        let r = result_with(alloc::vec![quarter(rat(1, 4)), quarter(rat(3, 4))]);
        let z_axis = Line3::new(Point3::from_ints(0, 0, 0), [int(0), int(0), int(1)]).unwrap();
        assert_eq!(line_crossings(&z_axis, &r), Crossing::Count(2));
        assert_eq!(cells_on_line(&z_axis, &r).len(), 3);

        let r = result_with(alloc::vec![&(&z * &z) + &MultiPoly::one(3)]);
        let x_axis = Line3::new(Point3::from_ints(0, 0, 0), [int(1), int(0), int(0)]).unwrap();
        assert_eq!(line_crossings(&x_axis, &r), Crossing::Count(0));

        let r = result_with(alloc::vec![z.clone()]);
        assert_eq!(line_crossings(&x_axis, &r), Crossing::Contained { factor: 0 });
        assert!(cells_on_line(&x_axis, &r).is_empty());

        let r = partition(&cube(), 8, 0).unwrap();
        let l = Line3::new(Point3::new(rat(1, 3), rat(-2, 7), int(5)), [int(3), int(1), int(-2)]).unwrap();
        let n = line_crossings(&l, &r).count().unwrap();
        assert!(n <= r.total_degree as usize);
    }

    #[test]
    fn sign_vector_text() {
        let s = SignVector(alloc::vec![true, false, true]);
        assert_eq!(alloc::format!("{s}"), "+-+");
        assert_eq!(SignVector::parse("+-+"), Some(s));
        assert_eq!(SignVector::parse("+x"), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn partition_contract(seed in 0u64..500, m in 2usize..40, k in 1u32..4) {
            let s = 1usize << k;
            let pts = random_points(m, 20, seed);
            let r = partition(&pts, s, seed).unwrap();
            let census = cell_census(&r);
            prop_assert!(census.classes.len() <= s);
            prop_assert!(census.largest() <= r.class_bound());
            prop_assert_eq!(census.total(), m);
            let lines = crate::census::make_configuration(crate::census::ConfigKind::RandomLines, 5, seed).unwrap().lines;
            prop_assert!(crossing_report(&lines, &r).within_degree());
            let inc = cell_incidences(&lines, &r);
            prop_assert!(inc.incidences <= inc.bound());
        }
    }
}
