//! Directional tangency forms, the flecnode eliminant and ruledness
//! certificates.
//!
//! A point `w` of `Z(p)` is flecnodal when some line through `w` meets the
//! surface to order three there, i.e. some direction `v != 0` satisfies
//! `F1(w, v) = F2(w, v) = F3(w, v) = 0`. Per chart, `F1 = 0` is solved for
//! one direction coordinate (after clearing the gradient denominator) and
//! the quadratic and cubic that remain are eliminated against each other.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{resultant_formal, sylvester_resultant, AlgebraError, MultiPoly, Rat};
use crate::geometry::{cross, line_on_surface, Line3, Point3, Vec3};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlecnodeError {
    #[error("expected a polynomial in 3 variables, got {0}")]
    Arity(usize),
    #[error("polynomial must have degree at least 1")]
    Constant,
    #[error("chart must be 1, 2 or 3, got {0}")]
    BadChart(usize),
    #[error("gradient component {0} vanishes identically; pick another chart")]
    InadmissibleChart(usize),
    #[error("point is not on the surface")]
    PointOffSurface,
    #[error("line {0} does not lie on the surface")]
    LineOffSurface(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn check_surface(p: &MultiPoly) -> Result<u32, FlecnodeError> {
    if p.arity() != 3 {
        return Err(FlecnodeError::Arity(p.arity()));
    }
    match p.degree() {
        Some(d) if d >= 1 => Ok(d),
        _ => Err(FlecnodeError::Constant),
    }
}

/// `F1 = Σ p_i v_i`, `F2 = Σ p_ij v_i v_j`, `F3 = Σ p_ijk v_i v_j v_k`
/// as polynomials in `(x, y, z, v1, v2, v3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionalForms {
    pub f1: MultiPoly,
    pub f2: MultiPoly,
    pub f3: MultiPoly,
}

impl DirectionalForms {
    pub fn forms(&self) -> [&MultiPoly; 3] {
        [&self.f1, &self.f2, &self.f3]
    }
}

pub fn directional_forms(p: &MultiPoly) -> Result<DirectionalForms, FlecnodeError> {
    check_surface(p)?;
    let q = p.embed(6);
    let v: Vec<MultiPoly> = (3..6).map(|i| MultiPoly::var(6, i)).collect();
    let mut f1 = MultiPoly::zero(6);
    let mut f2 = MultiPoly::zero(6);
    let mut f3 = MultiPoly::zero(6);
    for i in 0..3 {
        let qi = q.partial(i);
        f1 += &(&qi * &v[i]);
        for j in 0..3 {
            let qij = qi.partial(j);
            let vij = &v[i] * &v[j];
            f2 += &(&qij * &vij);
            for k in 0..3 {
                f3 += &(&(&qij.partial(k) * &vij) * &v[k]);
            }
        }
    }
    Ok(DirectionalForms { f1, f2, f3 })
}

/// A factor divided out of the raw resultant, with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovedFactor {
    pub factor: MultiPoly,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlecnodeResult {
    pub flec: MultiPoly,
    /// 1, 2 or 3: the gradient coordinate `F1 = 0` was solved against.
    pub chart: usize,
    pub removed_factors: Vec<RemovedFactor>,
    /// Degree of `flec`; `None` when it is identically zero.
    pub degree: Option<u32>,
    pub raw_degree: Option<u32>,
    /// Lowest-degree polynomial agreeing with `flec` on the surface, i.e.
    /// the lowest-degree member of `flec + (p)`.
    pub reduced: MultiPoly,
    pub reduced_degree: Option<u32>,
    /// `11d - 24` for the input degree `d`.
    pub bound: i64,
}

impl FlecnodeResult {
    pub fn is_zero(&self) -> bool {
        self.flec.is_zero()
    }

    /// Whether `p` divides `flec` (true when `flec` is zero).
    pub fn divisible_by(&self, p: &MultiPoly) -> bool {
        p.divides(&self.flec)
    }

    /// Whether the degree on the surface is at most `11d - 24`.
    pub fn within_bound(&self) -> bool {
        self.reduced_degree.is_none_or(|d| i64::from(d) <= self.bound)
    }

    /// `flec` times every removed factor, which is the raw resultant.
    pub fn reassemble(&self) -> MultiPoly {
        self.removed_factors
            .iter()
            .fold(self.flec.clone(), |acc, r| &acc * &r.factor.pow(r.multiplicity))
    }
}

fn chart_index(chart: usize) -> Result<usize, FlecnodeError> {
    if (1..=3).contains(&chart) {
        Ok(chart - 1)
    } else {
        Err(FlecnodeError::BadChart(chart))
    }
}

/// Gradient component `∂p/∂x_chart`.
pub fn chart_gradient(p: &MultiPoly, chart: usize) -> Result<MultiPoly, FlecnodeError> {
    Ok(p.partial(chart_index(chart)?))
}

/// Charts whose gradient component is not identically zero.
pub fn admissible_charts(p: &MultiPoly) -> Vec<usize> {
    (1..=3).filter(|&c| !p.partial(c - 1).is_zero()).collect()
}

/// Binary forms `G2(a, b)`, `G3(a, b)` obtained by restricting `F2`, `F3`
/// to the tangent directions `a u + b u'` of the chart. Coefficients are
/// listed by ascending power of `a`.
pub fn chart_binary_forms(p: &MultiPoly, chart: usize) -> Result<(Vec<MultiPoly>, Vec<MultiPoly>), FlecnodeError> {
    check_surface(p)?;
    let c = chart_index(chart)?;
    let g = p.partial(c);
    if g.is_zero() {
        return Err(FlecnodeError::InadmissibleChart(chart));
    }
    let forms = directional_forms(p)?;
    let (i, j) = match c {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    // Substitution into (x, y, z, a, b).
    let lift = |q: &MultiPoly| q.compose(&(0..3).map(|k| MultiPoly::var(5, k)).collect::<Vec<_>>());
    let (a, b) = (MultiPoly::var(5, 3), MultiPoly::var(5, 4));
    let gc = lift(&g);
    let mut dir: [MultiPoly; 3] = core::array::from_fn(|_| MultiPoly::zero(5));
    dir[i] = &a * &gc;
    dir[j] = &b * &gc;
    dir[c] = -(&(&a * &lift(&p.partial(i))) + &(&b * &lift(&p.partial(j))));
    let subs: Vec<MultiPoly> = (0..3).map(|k| MultiPoly::var(5, k)).chain(dir).collect();
    let back: Vec<MultiPoly> = (0..3)
        .map(|k| MultiPoly::var(3, k))
        .chain([MultiPoly::zero(3), MultiPoly::one(3)])
        .collect();
    let binary = |f: &MultiPoly, n: usize| -> Vec<MultiPoly> {
        let mut coeffs = f.compose(&subs).coefficients_in(3);
        coeffs.resize(n + 1, MultiPoly::zero(5));
        coeffs.iter().map(|q| q.compose(&back)).collect()
    };
    Ok((binary(&forms.f2, 2), binary(&forms.f3, 3)))
}

pub fn flecnode_polynomial(p: &MultiPoly, chart: usize) -> Result<FlecnodeResult, FlecnodeError> {
    let d = check_surface(p)?;
    let (g2, g3) = chart_binary_forms(p, chart)?;
    let bound = 11 * i64::from(d) - 24;
    let raw = if g2.iter().all(MultiPoly::is_zero) || g3.iter().all(MultiPoly::is_zero) {
        MultiPoly::zero(3)
    } else {
        sylvester_resultant(&g2, &g3)?
    };
    let raw_degree = raw.degree();
    let mut flec = raw;
    let mut removed = Vec::new();
    if !flec.is_zero() {
        let g = p.partial(chart - 1);
        let mut candidates = Vec::new();
        if !g.is_constant() {
            candidates.push(g.monic());
        }
        candidates.extend((0..3).map(|k| MultiPoly::var(3, k)).filter(|x| x.divides(&g)));
        for factor in candidates {
            let mut multiplicity = 0;
            while let Ok(q) = flec.exact_div(&factor) {
                flec = q;
                multiplicity += 1;
            }
            if multiplicity > 0 {
                removed.push(RemovedFactor { factor, multiplicity });
            }
        }
    }
    let reduced = reduce_on_surface(&flec, p);
    Ok(FlecnodeResult {
        degree: flec.degree(),
        flec,
        chart,
        removed_factors: removed,
        raw_degree,
        reduced_degree: reduced.degree(),
        reduced,
        bound,
    })
}

fn top_form(f: &MultiPoly) -> MultiPoly {
    let d = f.degree().unwrap_or(0);
    MultiPoly::from_terms(
        f.arity(),
        f.terms().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.exponents().to_vec(), c.clone())),
    )
}

/// Lowest-degree member of `f + (p)`.
///
/// `deg(f - h p) < deg f` forces the top form of `h p` to equal that of
/// `f`, so the top form of `h` is determined; peeling greedily while the
/// top form of `p` divides the top form of `f` reaches the minimum.
pub fn reduce_on_surface(f: &MultiPoly, p: &MultiPoly) -> MultiPoly {
    let p_top = top_form(p);
    let mut f = f.clone();
    while !f.is_zero() {
        let Ok(h) = top_form(&f).exact_div(&p_top) else {
            break;
        };
        f = &f - &(&h * p);
    }
    f
}

fn eval_form(f: &MultiPoly, w: &Point3) -> MultiPoly {
    let subs: Vec<MultiPoly> = w
        .coords()
        .iter()
        .map(|c| MultiPoly::constant(3, c.clone()))
        .chain((0..3).map(|k| MultiPoly::var(3, k)))
        .collect();
    f.compose(&subs)
}

fn binary_coeffs(f: &MultiPoly, u: &Vec3, u2: &Vec3, n: usize) -> Vec<Rat> {
    // f(a u + b u2) as a form in (a, b), listed by ascending power of a.
    let subs: Vec<MultiPoly> = (0..3)
        .map(|k| {
            &MultiPoly::term(crate::algebra::Monomial::new(alloc::vec![1, 0]), u[k].clone())
                + &MultiPoly::term(crate::algebra::Monomial::new(alloc::vec![0, 1]), u2[k].clone())
        })
        .collect();
    let sub = f.compose(&subs);
    (0..=n)
        .map(|k| sub.coeff(&crate::algebra::Monomial::new(alloc::vec![k as u32, (n - k) as u32])))
        .collect()
}

/// Whether some nonzero complex direction `v` has `F1 = F2 = F3 = 0` at `w`.
///
/// At a singular point the conic `F2 = 0` and cubic `F3 = 0` always meet in
/// the projective plane. Otherwise the two binary forms on the tangent plane
/// share a projective root exactly when their formal-degree resultant
/// vanishes, or when either form is identically zero.
pub fn flecnodal_at(p: &MultiPoly, w: &Point3) -> Result<bool, FlecnodeError> {
    check_surface(p)?;
    if !p.eval(w.coords())?.is_zero() {
        return Err(FlecnodeError::PointOffSurface);
    }
    let grad: Vec3 = core::array::from_fn(|k| p.partial(k).eval(w.coords()).expect("arity 3"));
    if grad.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    let forms = directional_forms(p)?;
    let q2 = eval_form(&forms.f2, w);
    let q3 = eval_form(&forms.f3, w);
    let (u, u2) = tangent_basis(&grad);
    let g2 = binary_coeffs(&q2, &u, &u2, 2);
    let g3 = binary_coeffs(&q3, &u, &u2, 3);
    if g2.iter().all(Zero::is_zero) || g3.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    Ok(resultant_formal(&g2, &g3).is_zero())
}

/// Two independent vectors orthogonal to `n`.
fn tangent_basis(n: &Vec3) -> (Vec3, Vec3) {
    let axes: [Vec3; 3] = core::array::from_fn(|i| core::array::from_fn(|k| if k == i { Rat::one() } else { Rat::zero() }));
    let u = axes
        .iter()
        .map(|e| cross(n, e))
        .find(|v| v.iter().any(|c| !c.is_zero()))
        .expect("nonzero normal");
    let u2 = cross(n, &u);
    (u, u2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    RuledCertified,
    NotRuledCertified,
    Inconclusive,
}

/// Evidence for one admissible chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartEvidence {
    pub chart: usize,
    /// `flec` is zero or divisible by `p`.
    pub divisible: bool,
    pub flec_degree: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuledVerdict {
    pub verdict: Verdict,
    /// Distinct supplied lines, all verified to lie on the surface.
    pub line_count: usize,
    /// `11d^2 - 24d` before clamping.
    pub threshold: i64,
    /// Per-chart evidence; empty when the line count alone decided.
    pub charts: Vec<ChartEvidence>,
    pub declared_irreducible: bool,
}

impl RuledVerdict {
    pub fn clamped_threshold(&self) -> i64 {
        self.threshold.max(0)
    }

    pub fn all_charts_divisible(&self) -> Option<bool> {
        (!self.charts.is_empty()).then(|| self.charts.iter().all(|c| c.divisible))
    }
}

pub fn ruled_certificate(p: &MultiPoly, lines: &[Line3], irreducible: bool) -> Result<RuledVerdict, FlecnodeError> {
    let d = i64::from(check_surface(p)?);
    if let Some(i) = lines.iter().position(|l| !line_on_surface(l, p)) {
        return Err(FlecnodeError::LineOffSurface(i));
    }
    let line_count = lines.iter().collect::<alloc::collections::BTreeSet<_>>().len();
    let threshold = 11 * d * d - 24 * d;
    let mut out = RuledVerdict {
        verdict: Verdict::Inconclusive,
        line_count,
        threshold,
        charts: Vec::new(),
        declared_irreducible: irreducible,
    };
    if line_count as i64 > threshold.max(0) {
        out.verdict = Verdict::RuledCertified;
        return Ok(out);
    }
    for chart in admissible_charts(p) {
        let r = flecnode_polynomial(p, chart)?;
        out.charts.push(ChartEvidence { chart, divisible: r.divisible_by(p), flec_degree: r.degree });
    }
    out.verdict = if out.charts.iter().all(|c| c.divisible) {
        Verdict::RuledCertified
    } else if irreducible {
        Verdict::NotRuledCertified
    } else {
        Verdict::Inconclusive
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::census::{cone, cone_family, hyperboloid, hyperboloid_family, RulingFamily};
    use crate::geometry::restrict_to_line;
    use proptest::prelude::*;

    fn vars3() -> [MultiPoly; 3] {
        [0, 1, 2].map(|i| MultiPoly::var(3, i))
    }

    fn sphere() -> MultiPoly {
        let [x, y, z] = vars3();
        &(&(&(&x * &x) + &(&y * &y)) + &(&z * &z)) - &MultiPoly::one(3)
    }

    fn saddle() -> MultiPoly {
        let [x, y, z] = vars3();
        &(&x * &y) - &z
    }

    fn fermat() -> MultiPoly {
        let [x, y, z] = vars3();
        &(&(&x.pow(3) + &y.pow(3)) + &z.pow(3)) - &MultiPoly::one(3)
    }

    fn v6(i: usize) -> MultiPoly {
        MultiPoly::var(6, i)
    }

    #[test]
    fn directional_form_examples() {
        let f = directional_forms(&sphere()).unwrap();
        let two = MultiPoly::constant(6, int(2));
        let f1 = &two * &(&(&(&v6(0) * &v6(3)) + &(&v6(1) * &v6(4))) + &(&v6(2) * &v6(5)));
        let f2 = &two * &(&(&(&v6(3) * &v6(3)) + &(&v6(4) * &v6(4))) + &(&v6(5) * &v6(5)));
        assert_eq!((f.f1, f.f2), (f1, f2));
        assert!(f.f3.is_zero());

        let f = directional_forms(&saddle()).unwrap();
        assert_eq!(f.f1, &(&(&v6(1) * &v6(3)) + &(&v6(0) * &v6(4))) - &v6(5));
        assert_eq!(f.f2, &MultiPoly::constant(6, int(2)) * &(&v6(3) * &v6(4)));
        assert!(f.f3.is_zero());

        let f = directional_forms(&vars3()[0].pow(3)).unwrap();
        assert_eq!(f.f1, &MultiPoly::constant(6, int(3)) * &(&v6(0).pow(2) * &v6(3)));
        assert_eq!(f.f2, &MultiPoly::constant(6, int(6)) * &(&v6(0) * &v6(3).pow(2)));
        assert_eq!(f.f3, &MultiPoly::constant(6, int(6)) * &v6(3).pow(3));
    }

    #[test]
    fn quadrics_have_zero_flec() {
        for p in [sphere(), saddle(), hyperboloid(), cone()] {
            for chart in admissible_charts(&p) {
                let r = flecnode_polynomial(&p, chart).unwrap();
                assert!(r.is_zero() || r.divisible_by(&p));
            }
        }
        assert_eq!(flecnode_polynomial(&saddle(), 3).unwrap().chart, 3);
    }

    #[test]
    fn fermat_cubic_flec_is_not_divisible() {
        let p = fermat();
        let r = flecnode_polynomial(&p, 1).unwrap();
        assert!(!r.is_zero());
        assert!(!r.divisible_by(&p));
        assert_eq!(r.reassemble(), {
            let (g2, g3) = chart_binary_forms(&p, 1).unwrap();
            sylvester_resultant(&g2, &g3).unwrap()
        });
        assert!(r.removed_factors.iter().all(|f| f.multiplicity > 0));
        assert!(p.divides(&(&r.flec - &r.reduced)));
        assert_eq!(r.reduced_degree, Some(9));
        assert!(r.within_bound());
        // On the surface the eliminant is the product of the three
        // sums of cubes, each vanishing on a plane section made of lines.
        let [x, y, z] = vars3();
        let (a, b, c) = (x.pow(3), y.pow(3), z.pow(3));
        let expected = &(&(&a + &b) * &(&b + &c)) * &(&c + &a);
        assert_eq!(r.reduced.monic(), expected.monic());
    }

    #[test]
    fn flec_vanishes_on_lines_of_the_surface() {
        let fixtures = [
            (hyperboloid(), hyperboloid_family(RulingFamily::First, 3)),
            (cone(), cone_family(3)),
            (fermat(), alloc::vec![Line3::new(Point3::from_ints(0, 0, 1), [int(1), int(-1), int(0)]).unwrap()]),
        ];
        for (p, lines) in fixtures {
            for chart in admissible_charts(&p) {
                let r = flecnode_polynomial(&p, chart).unwrap();
                for l in &lines {
                    assert!(line_on_surface(l, &p));
                    assert!(restrict_to_line(&r.flec, l).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn inadmissible_chart_is_rejected() {
        let [x, y, _] = vars3();
        let cylinder = &(&(&x * &x) + &(&y * &y)) - &MultiPoly::one(3);
        assert_eq!(admissible_charts(&cylinder), alloc::vec![1, 2]);
        assert_eq!(flecnode_polynomial(&cylinder, 3), Err(FlecnodeError::InadmissibleChart(3)));
        assert_eq!(flecnode_polynomial(&cylinder, 4), Err(FlecnodeError::BadChart(4)));
    }

    /// Graph surface `z = f(x, y)`: the eliminant of the slope equations
    /// `r + 2 s m + t m^2 = 0` and `α + 3β m + 3γ m^2 + δ m^3 = 0`.
    fn graph_eliminant_at(f: &MultiPoly, x: &Rat, y: &Rat) -> Rat {
        let at = |q: &MultiPoly| q.eval(&[x.clone(), y.clone()]).unwrap();
        let (fx, fy) = (f.partial(0), f.partial(1));
        let (r, s, t) = (at(&fx.partial(0)), at(&fx.partial(1)), at(&fy.partial(1)));
        let fxx = fx.partial(0);
        let fyy = fy.partial(1);
        let (alpha, beta) = (at(&fxx.partial(0)), at(&fxx.partial(1)));
        let (gamma, delta) = (at(&fyy.partial(0)), at(&fyy.partial(1)));
        // Slope m = b / a; forms in (a, b) listed by ascending power of a.
        let quad = [t, s * int(2), r];
        let cubic = [delta, gamma * int(3), beta * int(3), alpha];
        resultant_formal(&quad, &cubic)
    }

    #[test]
    fn graph_coordinates_reproduce_slope_eliminant() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        for f in [&x * &y, &(&x * &x) + &y.pow(3)] {
            let p = &MultiPoly::var(3, 2) - &f.embed(3);
            let r = flecnode_polynomial(&p, 3).unwrap();
            assert!(r.removed_factors.is_empty());
            for (a, b) in [(0, 0), (1, 2), (-3, 1), (2, 5)] {
                let pt = [int(a), int(b), int(0)];
                // F2, F3 of p are minus those of f, so the resultant flips sign once.
                let expected = -graph_eliminant_at(&f, &int(a), &int(b));
                assert_eq!(r.flec.eval(&pt).unwrap(), expected);
            }
        }
    }

    #[test]
    fn flecnodal_examples() {
        assert!(flecnodal_at(&sphere(), &Point3::from_ints(1, 0, 0)).unwrap());
        assert!(flecnodal_at(&hyperboloid(), &Point3::from_ints(1, 0, 0)).unwrap());
        // The ruling direction through (1,0,0) annihilates all three forms.
        let f = directional_forms(&hyperboloid()).unwrap();
        let at: Vec<Rat> = [1, 0, 0, 0, 1, 1].map(int).to_vec();
        assert!(f.forms().iter().all(|g| g.eval(&at).unwrap().is_zero()));
        assert_eq!(flecnodal_at(&sphere(), &Point3::from_ints(1, 1, 0)), Err(FlecnodeError::PointOffSurface));
        // (1,0,0) is on the line (1, t, -t) of the Fermat cubic.
        assert!(flecnodal_at(&fermat(), &Point3::from_ints(1, 0, 0)).unwrap());
        let w = off_line_fermat_point();
        assert!(!flecnodal_at(&fermat(), &w).unwrap());
    }

    /// Third intersection of the Fermat cubic with the chord through
    /// `(t, -t, 1)` and `(9, 10, -12)`, both on the surface.
    fn fermat_chord_point(t: i64) -> Point3 {
        let p0 = Point3::from_ints(t, -t, 1);
        // 9^3 + 10^3 = 12^3 + 1 puts this point on the surface, off the plane
        // x + y + z = 1 that holds the three rational lines.
        let p1 = Point3::from_ints(9, 10, -12);
        let dir = crate::geometry::sub(p1.coords(), p0.coords());
        let u = fermat().restrict_to_ray(p0.coords(), &dir).unwrap();
        let c = u.coeffs();
        // Roots 0 and 1 are known; the third is -c2/c3 - 1.
        let root = -(&c[2] / &c[3]) - Rat::one();
        p0.coords().iter().zip(&dir).map(|(b, d)| b + &root * d).collect::<Vec<_>>().try_into().map(Point3).unwrap()
    }

    fn off_line_fermat_point() -> Point3 {
        let w = fermat_chord_point(2);
        assert!(fermat().eval(w.coords()).unwrap().is_zero());
        w
    }

    #[test]
    fn flecnodal_matches_chart_flec() {
        let p = fermat();
        let charts: Vec<FlecnodeResult> = (1..=3).map(|c| flecnode_polynomial(&p, c).unwrap()).collect();
        let mut points: Vec<Point3> = (2..6).map(fermat_chord_point).collect();
        points.push(Point3::new(rat(1, 2), rat(-1, 2), int(1)));
        for w in &points {
            assert!(p.eval(w.coords()).unwrap().is_zero());
            let at = flecnodal_at(&p, w).unwrap();
            for r in &charts {
                if !p.partial(r.chart - 1).eval(w.coords()).unwrap().is_zero() {
                    assert_eq!(r.flec.eval(w.coords()).unwrap().is_zero(), at);
                }
            }
        }
    }

    #[test]
    fn verdict_examples() {
        let ruling = cone_family(1);
        let v = ruled_certificate(&cone(), &ruling, false).unwrap();
        assert_eq!((v.verdict, v.threshold, v.clamped_threshold()), (Verdict::RuledCertified, -4, 0));
        assert!(v.charts.is_empty());

        let v = ruled_certificate(&sphere(), &[], false).unwrap();
        assert_eq!(v.verdict, Verdict::RuledCertified);
        assert_eq!(v.all_charts_divisible(), Some(true));
        assert_eq!(ruled_certificate(&saddle(), &[], false).unwrap().verdict, Verdict::RuledCertified);

        let v = ruled_certificate(&fermat(), &[], true).unwrap();
        assert_eq!((v.verdict, v.threshold), (Verdict::NotRuledCertified, 27));
        assert_eq!(ruled_certificate(&fermat(), &[], false).unwrap().verdict, Verdict::Inconclusive);

        let off = Line3::new(Point3::from_ints(5, 5, 5), [int(1), int(0), int(0)]).unwrap();
        assert_eq!(ruled_certificate(&sphere(), &[off], false), Err(FlecnodeError::LineOffSurface(0)));
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn forms_are_homogeneous(w in prop::array::uniform3(small_rat()), v in prop::array::uniform3(small_rat()), lambda in small_rat()) {
            let f = directional_forms(&fermat()).unwrap();
            let pt = |s: &Rat| -> Vec<Rat> { w.iter().cloned().chain(v.iter().map(|c| c * s)).collect() };
            for (k, g) in f.forms().iter().enumerate() {
                let scaled = g.eval(&pt(&lambda)).unwrap();
                let base = g.eval(&pt(&Rat::one())).unwrap();
                let mut factor = Rat::one();
                for _ in 0..=k {
                    factor *= &lambda;
                }
                prop_assert_eq!(scaled, base * factor);
            }
        }
    }
}
