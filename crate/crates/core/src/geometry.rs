//! Exact points, lines and planes, and the incidence predicates built on them.
//!
//! Lines are affine: parallel lines do not meet. Every type is stored in a
//! canonical form so that derived equality and ordering are geometric
//! equality, which lets them serve directly as map keys.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::algebra::{AlgebraError, MultiPoly, Rat, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("plane normal is zero")]
    ZeroNormal,
    #[error("lines are identical")]
    IdenticalLines,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type Vec3 = [Rat; 3];

pub(crate) fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub(crate) fn add(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

pub(crate) fn scale(a: &Vec3, s: &Rat) -> Vec3 {
    [&a[0] * s, &a[1] * s, &a[2] * s]
}

pub(crate) fn dot(a: &Vec3, b: &Vec3) -> Rat {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub(crate) fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub(crate) fn det3(a: &Vec3, b: &Vec3, c: &Vec3) -> Rat {
    dot(a, &cross(b, c))
}

fn is_zero3(a: &Vec3) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Point of 3-space.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point3(pub Vec3);

impl Point3 {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Self {
        Point3([x, y, z])
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Point3([x.into(), y.into(), z.into()].map(|v: num_bigint::BigInt| Rat::from_integer(v)))
    }

    pub fn coords(&self) -> &Vec3 {
        &self.0
    }
}

impl fmt::Debug for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Affine line `base + t * dir` in canonical form.
///
/// The direction is scaled so its first nonzero coordinate is 1 (the
/// pivot), and the base is the unique point of the line whose pivot
/// coordinate is 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line3 {
    base: Point3,
    dir: Vec3,
}

impl Line3 {
    pub fn new(base: Point3, dir: Vec3) -> Result<Self, GeometryError> {
        let pivot = dir.iter().position(|c| !c.is_zero()).ok_or(GeometryError::ZeroDirection)?;
        let dir = scale(&dir, &dir[pivot].recip());
        let shift = base.0[pivot].clone();
        let base = Point3(sub(&base.0, &scale(&dir, &shift)));
        Ok(Line3 { base, dir })
    }

    /// Line through two distinct points.
    pub fn through(p: &Point3, q: &Point3) -> Result<Self, GeometryError> {
        Line3::new(p.clone(), sub(&q.0, &p.0))
    }

    pub fn base(&self) -> &Point3 {
        &self.base
    }

    pub fn dir(&self) -> &Vec3 {
        &self.dir
    }

    pub fn point_at(&self, t: &Rat) -> Point3 {
        Point3(add(&self.base.0, &scale(&self.dir, t)))
    }

    pub fn contains(&self, p: &Point3) -> bool {
        is_zero3(&cross(&sub(&p.0, &self.base.0), &self.dir))
    }

    pub fn is_parallel_to(&self, other: &Line3) -> bool {
        self.dir == other.dir
    }
}

impl fmt::Debug for Line3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Line3{{{:?} + t({}, {}, {})}}", self.base, self.dir[0], self.dir[1], self.dir[2])
    }
}

/// Plane `a x + b y + c z = e`, scaled so the first nonzero of `(a, b, c)` is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Plane {
    normal: Vec3,
    offset: Rat,
}

impl Plane {
    pub fn new(normal: Vec3, offset: Rat) -> Result<Self, GeometryError> {
        let pivot = normal.iter().position(|c| !c.is_zero()).ok_or(GeometryError::ZeroNormal)?;
        let s = normal[pivot].recip();
        Ok(Plane { normal: scale(&normal, &s), offset: offset * s })
    }

    /// Plane through three points, if they are not collinear.
    pub fn through_points(p: &Point3, q: &Point3, r: &Point3) -> Option<Plane> {
        let n = cross(&sub(&q.0, &p.0), &sub(&r.0, &p.0));
        let e = dot(&n, &p.0);
        Plane::new(n, e).ok()
    }

    /// The plane containing two distinct coplanar lines.
    pub fn through_lines(l1: &Line3, l2: &Line3) -> Option<Plane> {
        if l1 == l2 {
            return None;
        }
        let p = l1.base();
        let q = l1.point_at(&Rat::one());
        let r = [l2.base().clone(), l2.point_at(&Rat::one())].into_iter().find(|c| !l1.contains(c))?;
        let plane = Plane::through_points(p, &q, &r)?;
        plane.contains_line(l2).then_some(plane)
    }

    pub fn normal(&self) -> &Vec3 {
        &self.normal
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn contains_point(&self, p: &Point3) -> bool {
        dot(&self.normal, &p.0) == self.offset
    }

    pub fn contains_line(&self, l: &Line3) -> bool {
        self.contains_point(l.base()) && dot(&self.normal, l.dir()).is_zero()
    }

    /// `a x + b y + c z - e` as a polynomial.
    pub fn to_poly(&self) -> MultiPoly {
        let mut p = MultiPoly::constant(3, -self.offset.clone());
        for (i, c) in self.normal.iter().enumerate() {
            p += &MultiPoly::var(3, i).scale(c);
        }
        p
    }
}

/// The unique common point of two distinct lines; `None` when they are
/// parallel or skew.
pub fn line_intersection(l1: &Line3, l2: &Line3) -> Result<Option<Point3>, GeometryError> {
    if l1 == l2 {
        return Err(GeometryError::IdenticalLines);
    }
    let n = cross(l1.dir(), l2.dir());
    if is_zero3(&n) {
        return Ok(None);
    }
    let w = sub(&l2.base().0, &l1.base().0);
    if !dot(&w, &n).is_zero() {
        return Ok(None);
    }
    // base1 + s dir1 = base2 + t dir2  =>  s = ((w x dir2) . n) / |n|^2
    let s = dot(&cross(&w, l2.dir()), &n) / dot(&n, &n);
    Ok(Some(l1.point_at(&s)))
}

/// True iff a single plane contains all three lines.
pub fn are_coplanar(l1: &Line3, l2: &Line3, l3: &Line3) -> bool {
    let origin = l1.base().0.clone();
    let spans: Vec<Vec3> = [l1, l2, l3]
        .iter()
        .flat_map(|l| [sub(&l.base().0, &origin), add(&sub(&l.base().0, &origin), l.dir())])
        .collect();
    affine_rank_at_most_two(&spans)
}

fn affine_rank_at_most_two(vs: &[Vec3]) -> bool {
    // rank <= 2 iff every triple of vectors has zero determinant.
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            for k in j + 1..vs.len() {
                if !det3(&vs[i], &vs[j], &vs[k]).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Three lines through `w` with linearly independent directions.
pub fn is_joint(l1: &Line3, l2: &Line3, l3: &Line3, w: &Point3) -> bool {
    l1.contains(w) && l2.contains(w) && l3.contains(w) && !det3(l1.dir(), l2.dir(), l3.dir()).is_zero()
}

/// `q(t) = p(base + t * dir)` for a trivariate `p`.
pub fn restrict_to_line(p: &MultiPoly, l: &Line3) -> Result<UniPoly, GeometryError> {
    Ok(p.restrict_to_ray(l.base().coords(), l.dir())?)
}

/// True iff `p` vanishes identically on `l`.
///
/// # Panics
/// If `p` is not trivariate.
pub fn line_on_surface(l: &Line3, p: &MultiPoly) -> bool {
    restrict_to_line(p, l).expect("trivariate polynomial").is_zero()
}

/// Point of the plane.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanarPoint(pub [Rat; 2]);

impl PlanarPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        PlanarPoint([x, y])
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        PlanarPoint([Rat::from_integer(x.into()), Rat::from_integer(y.into())])
    }

    pub fn x(&self) -> &Rat {
        &self.0[0]
    }

    pub fn y(&self) -> &Rat {
        &self.0[1]
    }

    pub fn dist2(&self, other: &PlanarPoint) -> Rat {
        let dx = &self.0[0] - &other.0[0];
        let dy = &self.0[1] - &other.0[1];
        &dx * &dx + &dy * &dy
    }
}

impl fmt::Debug for PlanarPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0[0], self.0[1])
    }
}

/// Line `a x + b y = c` in the plane, scaled so the first nonzero of `(a, b)` is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PlanarLine {
    coeffs: [Rat; 3],
}

impl PlanarLine {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Result<Self, GeometryError> {
        let s = if !a.is_zero() {
            a.recip()
        } else if !b.is_zero() {
            b.recip()
        } else {
            return Err(GeometryError::ZeroNormal);
        };
        Ok(PlanarLine { coeffs: [a * &s, b * &s, c * s] })
    }

    /// `y = slope * x + intercept`.
    pub fn graph(slope: Rat, intercept: Rat) -> Self {
        PlanarLine::new(-slope, Rat::one(), intercept).expect("b = 1")
    }

    pub fn coeffs(&self) -> &[Rat; 3] {
        &self.coeffs
    }

    pub fn contains(&self, p: &PlanarPoint) -> bool {
        &self.coeffs[0] * &p.0[0] + &self.coeffs[1] * &p.0[1] == self.coeffs[2]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn line(b: [i64; 3], d: [i64; 3]) -> Line3 {
        Line3::new(Point3::from_ints(b[0], b[1], b[2]), d.map(int)).unwrap()
    }

    fn axis(i: usize) -> Line3 {
        let mut d = [0, 0, 0];
        d[i] = 1;
        line([0, 0, 0], d)
    }

    #[test]
    fn canonical_form() {
        let l = line([3, 1, 2], [2, 4, 0]);
        assert_eq!(l.dir(), &[int(1), int(2), int(0)]);
        assert_eq!(l.base(), &Point3::from_ints(0, -5, 2));
        assert_eq!(l, line([5, -1 + 4 + 4 - 2, 2], [-1, -2, 0]));
        assert_eq!(Line3::new(Point3::from_ints(0, 0, 0), [int(0), int(0), int(0)]), Err(GeometryError::ZeroDirection));
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(line_intersection(&axis(0), &axis(1)).unwrap(), Some(Point3::from_ints(0, 0, 0)));
        assert_eq!(line_intersection(&axis(0), &line([0, 1, 0], [1, 0, 0])).unwrap(), None);
        assert_eq!(line_intersection(&axis(0), &line([0, 1, 1], [0, 0, 1])).unwrap(), None);
        assert_eq!(line_intersection(&axis(0), &axis(0)), Err(GeometryError::IdenticalLines));
        let p = line_intersection(&line([1, 1, 0], [1, -1, 0]), &line([0, 0, 0], [1, 1, 0])).unwrap().unwrap();
        assert_eq!(p, Point3::new(int(1), int(1), int(0)));
        let p = line_intersection(&line([0, 0, 0], [3, 1, 2]), &line([1, 5, 0], [1, -2, 1])).unwrap();
        let q = line_intersection(&line([1, 5, 0], [1, -2, 1]), &line([0, 0, 0], [3, 1, 2])).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn coplanarity_examples() {
        let concurrent = [line([0, 0, 0], [1, 0, 0]), line([0, 0, 0], [0, 1, 0]), line([0, 0, 0], [1, 1, 0])];
        assert!(are_coplanar(&concurrent[0], &concurrent[1], &concurrent[2]));
        assert!(!are_coplanar(&axis(0), &axis(1), &axis(2)));
        // Two parallel lines in z = 2 and a transversal in the same plane.
        let a = line([0, 0, 2], [1, 0, 0]);
        let b = line([0, 3, 2], [1, 0, 0]);
        let t = line([5, 0, 2], [1, 1, 0]);
        assert!(are_coplanar(&a, &b, &t));
        let plane = Plane::through_lines(&a, &b).unwrap();
        assert!(plane.contains_line(&t));
        assert_eq!(plane, Plane::new([int(0), int(0), int(1)], int(2)).unwrap());
    }

    #[test]
    fn joint_examples() {
        let o = Point3::from_ints(0, 0, 0);
        assert!(is_joint(&axis(0), &axis(1), &axis(2), &o));
        assert!(!is_joint(&axis(0), &axis(1), &axis(2), &Point3::from_ints(1, 1, 1)));
        let l3 = line([0, 0, 0], [1, 1, 0]);
        assert!(!is_joint(&axis(0), &axis(1), &l3, &o));
    }

    #[test]
    fn surface_containment_examples() {
        let x = MultiPoly::var(3, 0);
        let y = MultiPoly::var(3, 1);
        let z = MultiPoly::var(3, 2);
        let hyp = &(&(&x * &x) + &(&y * &y)) - &(&(&z * &z) + &MultiPoly::one(3));
        assert!(line_on_surface(&line([1, 0, 0], [0, 1, 1]), &hyp));
        assert!(!line_on_surface(&axis(2), &hyp));
        assert!(line_on_surface(&axis(0), &y));
        let q = restrict_to_line(&(&(&x * &y) - &z), &line([0, 0, 0], [1, 1, 1])).unwrap();
        assert_eq!(q.eval(&rat(1, 2)), rat(-1, 4));
    }

    #[test]
    fn planar_line_canonical() {
        let l = PlanarLine::new(int(0), int(2), int(4)).unwrap();
        assert_eq!(l, PlanarLine::graph(int(0), int(2)));
        assert!(l.contains(&PlanarPoint::from_ints(7, 2)));
    }
}
