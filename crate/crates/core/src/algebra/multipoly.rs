use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Monomial, Rat, UniPoly};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map keyed by graded-lex [`Monomial`]s and never
/// store a zero coefficient, so the zero polynomial has no terms and
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: Rat) -> Self {
        Self::term(Monomial::one(arity), c)
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rat::one())
    }

    /// The coordinate function `x_index`.
    pub fn var(arity: usize, index: usize) -> Self {
        assert!(index < arity, "variable {index} out of range for arity {arity}");
        Self::term(Monomial::var(arity, index), Rat::one())
    }

    pub fn term(monomial: Monomial, coeff: Rat) -> Self {
        let arity = monomial.arity();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        MultiPoly { arity, terms }
    }

    /// Sums the given terms; repeated monomials accumulate.
    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rat)>,
    {
        let mut p = MultiPoly::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity, "exponent vector length must equal arity");
            p.add_term(Monomial::new(e), c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().unwrap_or(0) == 0
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest exponent of `var` appearing in any term.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[var]).max().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, monomial: &Monomial) -> Rat {
        self.terms.get(monomial).cloned().unwrap_or_else(Rat::zero)
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, monomial: Monomial, coeff: Rat) {
        debug_assert_eq!(monomial.arity(), self.arity);
        if coeff.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Exact value at `point`.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat, AlgebraError> {
        if point.len() != self.arity {
            return Err(AlgebraError::ArityMismatch { expected: self.arity, got: point.len() });
        }
        let max_deg = self.degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<Rat>> = point
            .iter()
            .map(|v| {
                let mut row = Vec::with_capacity(max_deg + 1);
                row.push(Rat::one());
                for k in 1..=max_deg {
                    let next = &row[k - 1] * v;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= &powers[i][e as usize];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to `x_var`.
    ///
    /// # Panics
    /// If `var >= arity`.
    pub fn partial(&self, var: usize) -> MultiPoly {
        assert!(var < self.arity, "variable {var} out of range for arity {}", self.arity);
        let mut out = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), c * Rat::from_integer(e.into()));
        }
        out
    }

    pub fn scale(&self, factor: &Rat) -> MultiPoly {
        if factor.is_zero() {
            return MultiPoly::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut result = MultiPoly::one(self.arity);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Substitutes `x_i := substitutes[i]`; the result has the substitutes' arity.
    ///
    /// # Panics
    /// If the number of substitutes differs from the arity, or the
    /// substitutes disagree on arity.
    pub fn compose(&self, substitutes: &[MultiPoly]) -> MultiPoly {
        assert_eq!(substitutes.len(), self.arity, "one substitute per variable");
        let target = substitutes.first().map_or(0, MultiPoly::arity);
        assert!(substitutes.iter().all(|s| s.arity == target), "substitutes must share arity");
        let max_deg = self.degree().unwrap_or(0);
        let powers: Vec<Vec<MultiPoly>> = substitutes
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let top = self.degree_in(i).min(max_deg) as usize;
                let mut row = Vec::with_capacity(top + 1);
                row.push(MultiPoly::one(target));
                for k in 1..=top {
                    let next = &row[k - 1] * s;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out += &t;
        }
        out
    }

    /// `q(t) = p(base + t * dir)`.
    pub fn restrict_to_ray(&self, base: &[Rat], dir: &[Rat]) -> Result<UniPoly, AlgebraError> {
        if base.len() != self.arity || dir.len() != self.arity {
            return Err(AlgebraError::ArityMismatch {
                expected: self.arity,
                got: base.len().max(dir.len()),
            });
        }
        let subs: Vec<MultiPoly> = base
            .iter()
            .zip(dir)
            .map(|(b, d)| {
                let mut s = MultiPoly::constant(1, b.clone());
                s.add_term(Monomial::new(alloc::vec![1]), d.clone());
                s
            })
            .collect();
        let q = self.compose(&subs);
        let deg = q.degree().unwrap_or(0) as usize;
        let mut coeffs = alloc::vec![Rat::zero(); deg + 1];
        for (m, c) in q.terms() {
            coeffs[m.exponents()[0] as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    /// Writes `self = Σ_k c_k x_var^k` and returns `[c_0, c_1, ...]`, each
    /// free of `x_var` but of the same arity.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let top = self.degree_in(var) as usize;
        let mut out = alloc::vec![MultiPoly::zero(self.arity); top + 1];
        for (m, c) in &self.terms {
            let mut exps = m.exponents().to_vec();
            let k = exps[var] as usize;
            exps[var] = 0;
            out[k].add_term(Monomial::new(exps), c.clone());
        }
        out
    }

    /// Same polynomial viewed in `new_arity >= arity` variables.
    pub fn embed(&self, new_arity: usize) -> MultiPoly {
        assert!(new_arity >= self.arity);
        MultiPoly {
            arity: new_arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e.resize(new_arity, 0);
                    (Monomial::new(e), c.clone())
                })
                .collect(),
        }
    }

    /// Division by a single polynomial under the graded-lex order:
    /// `self = q * divisor + r` with no term of `r` divisible by the
    /// leading monomial of `divisor`.
    ///
    /// # Panics
    /// If `divisor` is zero.
    pub fn div_rem(&self, divisor: &MultiPoly) -> (MultiPoly, MultiPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        assert_eq!(self.arity, divisor.arity);
        let (lead_m, lead_c) = divisor.leading_term().expect("nonzero");
        let lead_m = lead_m.clone();
        let lead_inv = lead_c.recip();
        let mut rest = self.terms.clone();
        let mut quotient = MultiPoly::zero(self.arity);
        let mut remainder = MultiPoly::zero(self.arity);
        while let Some((m, c)) = rest.pop_last() {
            match m.div(&lead_m) {
                Some(qm) => {
                    let t = &c * &lead_inv;
                    // The leading product cancels `c * m` exactly; skip it.
                    for (dm, dc) in divisor.terms.iter().rev().skip(1) {
                        let key = dm.mul(&qm);
                        let delta = dc * &t;
                        use alloc::collections::btree_map::Entry;
                        match rest.entry(key) {
                            Entry::Vacant(v) => {
                                v.insert(-delta);
                            }
                            Entry::Occupied(mut o) => {
                                *o.get_mut() -= delta;
                                if o.get().is_zero() {
                                    o.remove();
                                }
                            }
                        }
                    }
                    quotient.add_term(qm, t);
                }
                None => {
                    remainder.terms.insert(m, c);
                }
            }
        }
        (quotient, remainder)
    }

    /// True iff `self` divides `other` in `Q[x]`.
    pub fn divides(&self, other: &MultiPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// `self / divisor` when the division is exact.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::InexactDivision)
        }
    }

    /// Scaled so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Formats with the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [&'a str]) -> impl fmt::Display + 'a {
        Named { poly: self, names }
    }
}

struct Named<'a> {
    poly: &'a MultiPoly,
    names: &'a [&'a str],
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(alloc::format!("{mag}"));
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                let name = self.names.get(v).copied().unwrap_or("?");
                match e {
                    0 => {}
                    1 => factors.push(String::from(name)),
                    _ => factors.push(alloc::format!("{name}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Default variable names for an arity.
pub(crate) fn default_names(arity: usize) -> &'static [&'static str] {
    match arity {
        1 => &["t"],
        2 => &["x", "y"],
        3 => &["x", "y", "z"],
        6 => &["x", "y", "z", "v1", "v2", "v3"],
        _ => &["x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9"],
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.display_with(default_names(self.arity)), f)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.arity, self)
    }
}

impl<'a> AddAssign<&'a MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &'a MultiPoly) {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a> SubAssign<&'a MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &'a MultiPoly) {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = MultiPoly::zero(self.arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &'a MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);
