//! Low-degree polynomials vanishing on finite point sets and line sets.
//!
//! A polynomial of degree at most `D` has `(D+1)(D+2)(D+3)/6` coefficients;
//! vanishing at a point is one linear condition on them. Fitting is a
//! nullspace computation on the evaluation matrix, and a line is covered by
//! imposing `D + 1` point conditions on it, after which the restriction of
//! the polynomial to the line has more roots than its degree.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::RngCore;

use crate::algebra::{monomials_up_to, nullspace_vector, rank, Matrix, Monomial, MultiPoly, Rat};
use crate::geometry::{line_on_surface, Line3, Point3};
use crate::rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FitError {
    #[error("no target points or lines supplied")]
    NoTargets,
    #[error("sampling probability must lie in (0, 1], got {0}")]
    BadProbability(Rat),
}

/// Number of monomials of degree at most `degree` in three variables.
pub fn monomial_count(degree: u32) -> usize {
    let d = degree as usize;
    (d + 1) * (d + 2) * (d + 3) / 6
}

fn monomial_values(monomials: &[Monomial], p: &Point3) -> Vec<Rat> {
    monomials
        .iter()
        .map(|m| {
            m.exponents()
                .iter()
                .zip(p.coords())
                .fold(Rat::one(), |acc, (&e, v)| acc * num_traits::pow(v.clone(), e as usize))
        })
        .collect()
}

/// Rows of monomial values at each point, in the order of
/// [`monomials_up_to`].
pub fn evaluation_matrix(points: &[Point3], degree: u32) -> Matrix {
    let monomials = monomials_up_to(3, degree);
    let mut m = Matrix::new(monomials.len());
    for p in points {
        m.push_row(monomial_values(&monomials, p));
    }
    m
}

fn poly_from_coeffs(degree: u32, coeffs: &[Rat]) -> MultiPoly {
    let mut p = MultiPoly::zero(3);
    for (m, c) in monomials_up_to(3, degree).into_iter().zip(coeffs) {
        p.add_term(m, c.clone());
    }
    p
}

fn canonical_points(points: &[Point3]) -> Vec<Point3> {
    points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
}

/// A nonzero polynomial of degree at most `degree` vanishing at every point,
/// or `None` when the evaluation matrix has full column rank.
///
/// Duplicate points are ignored. A witness always exists when the number
/// of distinct points is below [`monomial_count`].
pub fn fit_on_points(points: &[Point3], degree: u32) -> Option<MultiPoly> {
    let pts = canonical_points(points);
    let m = evaluation_matrix(&pts, degree);
    nullspace_vector(&m).map(|v| poly_from_coeffs(degree, &v))
}

/// Rank of the evaluation matrix of the distinct points at `degree`.
pub fn evaluation_rank(points: &[Point3], degree: u32) -> usize {
    rank(&evaluation_matrix(&canonical_points(points), degree))
}

/// Smallest degree admitting a vanishing polynomial, with a witness.
pub fn min_vanishing_degree(points: &[Point3]) -> Result<(u32, MultiPoly), FitError> {
    if points.is_empty() {
        return Err(FitError::NoTargets);
    }
    let pts = canonical_points(points);
    let mut degree = 0;
    loop {
        if let Some(p) = fit_on_points(&pts, degree) {
            return Ok((degree, p));
        }
        degree += 1;
    }
}

/// The `degree + 1` sample points `base + t * dir`, `t = 0..=degree`.
pub fn line_samples(l: &Line3, degree: u32) -> Vec<Point3> {
    (0..=degree as i64).map(|t| l.point_at(&Rat::from_integer(t.into()))).collect()
}

/// A nonzero polynomial of degree at most `degree` containing every line,
/// or `None` if the sampled conditions have full column rank.
pub fn fit_on_lines(lines: &[Line3], degree: u32) -> Option<MultiPoly> {
    let canonical: BTreeSet<&Line3> = lines.iter().collect();
    let samples: Vec<Point3> = canonical.into_iter().flat_map(|l| line_samples(l, degree)).collect();
    let p = fit_on_points(&samples, degree)?;
    debug_assert!(lines.iter().all(|l| line_on_surface(l, &p)));
    Some(p)
}

/// What to fit a polynomial to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FitTargets {
    Points(Vec<Point3>),
    Lines(Vec<Line3>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitRequest {
    pub targets: FitTargets,
    pub degree: u32,
}

impl FitRequest {
    pub fn solve(&self) -> Result<Option<MultiPoly>, FitError> {
        match &self.targets {
            FitTargets::Points(p) if p.is_empty() => Err(FitError::NoTargets),
            FitTargets::Lines(l) if l.is_empty() => Err(FitError::NoTargets),
            FitTargets::Points(p) => Ok(fit_on_points(p, self.degree)),
            FitTargets::Lines(l) => Ok(fit_on_lines(l, self.degree)),
        }
    }
}

/// Parameters of the sample-fit-verify loop in [`degree_reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReduceParams {
    probability: Rat,
    pub seed: u64,
    pub degree_cap: u32,
    pub retries: u32,
}

impl DegreeReduceParams {
    pub fn new(probability: Rat, seed: u64, degree_cap: u32, retries: u32) -> Result<Self, FitError> {
        if !probability.is_positive() || probability > Rat::one() {
            return Err(FitError::BadProbability(probability));
        }
        Ok(DegreeReduceParams { probability, seed, degree_cap, retries })
    }

    pub fn probability(&self) -> &Rat {
        &self.probability
    }
}

/// A certified output of [`degree_reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReduction {
    pub poly: MultiPoly,
    /// Zero-based attempt that succeeded.
    pub attempt: u32,
    /// Number of lines kept in the successful sample.
    pub sample_size: usize,
}

fn keep(rng: &mut impl RngCore, probability: &Rat) -> bool {
    // u / 2^64 < num / den
    let u = BigInt::from(rng.next_u64());
    u * probability.denom() < probability.numer() << 64
}

/// Samples lines of `l1` independently with the given probability, fits a
/// polynomial of degree at most the cap through the sample, and accepts it
/// only if every line of `l2` lies on its zero set. Retries with fresh
/// sub-streams of the seed; `None` once the retries are exhausted.
pub fn degree_reduce(l1: &[Line3], l2: &[Line3], params: &DegreeReduceParams) -> Option<DegreeReduction> {
    let ordered: Vec<&Line3> = l1.iter().collect::<BTreeSet<_>>().into_iter().collect();
    for attempt in 0..params.retries.max(1) {
        let mut rng = rng::stream(params.seed, attempt as u64);
        let sample: Vec<Line3> = ordered
            .iter()
            .filter(|_| keep(&mut rng, &params.probability))
            .map(|l| (*l).clone())
            .collect();
        let Some(poly) = fit_on_lines(&sample, params.degree_cap) else {
            continue;
        };
        if l2.iter().all(|l| line_on_surface(l, &poly)) {
            return Some(DegreeReduction { poly, attempt, sample_size: sample.len() });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::census::{hyperboloid_family, RulingFamily};

    use num_traits::Zero;

    fn is_zero_at_all(p: &MultiPoly, points: &[Point3]) -> bool {
        points.iter().all(|w| p.eval(w.coords()).map(|v| v.is_zero()).unwrap_or(false))
    }

    fn cube() -> Vec<Point3> {
        let mut v = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    v.push(Point3::from_ints(x, y, z));
                }
            }
        }
        v
    }

    fn line(b: [i64; 3], d: [i64; 3]) -> Line3 {
        Line3::new(Point3::from_ints(b[0], b[1], b[2]), d.map(int)).unwrap()
    }

    #[test]
    fn point_fit_examples() {
        let q = fit_on_points(&cube(), 2).unwrap();
        assert!(!q.is_zero() && q.degree().unwrap() <= 2);
        assert!(is_zero_at_all(&q, &cube()));
        let p = fit_on_points(&[Point3::from_ints(0, 0, 0)], 1).unwrap();
        assert_eq!(p.degree(), Some(1));
        let tetra = [
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(1, 0, 0),
            Point3::from_ints(0, 1, 0),
            Point3::from_ints(0, 0, 1),
        ];
        assert_eq!(fit_on_points(&tetra, 1), None);
        assert_eq!(evaluation_rank(&tetra, 1), 4);
    }

    #[test]
    fn minimal_degree_examples() {
        let collinear: Vec<Point3> = (0..3).map(|t| Point3::from_ints(t, 2 * t, 1 - t)).collect();
        assert_eq!(min_vanishing_degree(&collinear).unwrap().0, 1);
        assert_eq!(min_vanishing_degree(&cube()).unwrap().0, 2);
        let mut grid = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    grid.push(Point3::from_ints(x, y, z));
                }
            }
        }
        // Rank 10 at degree 2 means no quadric vanishes on the grid.
        assert_eq!(evaluation_rank(&grid, 2), 10);
        let (d, w) = min_vanishing_degree(&grid).unwrap();
        assert_eq!(d, 3);
        assert!(is_zero_at_all(&w, &grid));
        assert_eq!(min_vanishing_degree(&[]), Err(FitError::NoTargets));
    }

    #[test]
    fn line_fit_examples() {
        let rulings = [line([1, 0, 0], [0, 1, 1]), line([1, 0, 0], [0, -1, 1])];
        let q = fit_on_lines(&rulings, 2).unwrap();
        assert!(rulings.iter().all(|l| line_on_surface(l, &q)));
        let axes = [line([0, 0, 0], [1, 0, 0]), line([0, 0, 0], [0, 1, 0])];
        let p = fit_on_lines(&axes, 1).unwrap();
        assert_eq!(p.monic(), MultiPoly::var(3, 2));
        let skew = [
            line([0, 0, 0], [1, 0, 0]),
            line([0, 0, 1], [0, 1, 0]),
            line([0, 1, 2], [1, 0, 1]),
            line([2, 0, 3], [1, 1, 0]),
        ];
        assert_eq!(fit_on_lines(&skew, 1), None);
    }

    #[test]
    fn degree_reduce_examples() {
        let axes = [line([0, 0, 0], [1, 0, 0]), line([0, 0, 0], [0, 1, 0])];
        let params = DegreeReduceParams::new(int(1), 0, 1, 1).unwrap();
        let r = degree_reduce(&axes, &axes, &params).unwrap();
        assert_eq!(r.poly.monic(), MultiPoly::var(3, 2));

        let generic = [line([5, 7, 11], [1, 3, 2])];
        let params = DegreeReduceParams::new(int(1), 3, 1, 4).unwrap();
        assert_eq!(degree_reduce(&axes, &generic, &params), None);
        assert!(DegreeReduceParams::new(int(0), 0, 1, 1).is_err());
        assert!(DegreeReduceParams::new(int(2), 0, 1, 1).is_err());
    }

    #[test]
    fn degree_reduce_recovers_hyperboloid_and_is_reproducible() {
        let l1 = hyperboloid_family(RulingFamily::First, 60);
        let l2 = hyperboloid_family(RulingFamily::Second, 40);
        let params = DegreeReduceParams::new(crate::algebra::rat(1, 4), 0, 2, 5).unwrap();
        let r = degree_reduce(&l1, &l2, &params).unwrap();
        assert_eq!(r.poly.degree(), Some(2));
        assert!(l2.iter().all(|l| line_on_surface(l, &r.poly)));
        assert_eq!(degree_reduce(&l1, &l2, &params), Some(r));
    }
}
