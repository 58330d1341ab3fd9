use alloc::vec::Vec;
use core::cmp::Ordering;

/// Exponent vector of a monomial.
///
/// Ordered graded-lexicographically: total degree first, then the
/// exponent of the first variable, then the second, and so on. So for
/// three variables `z < y < x < z^2 < yz < y^2 < xz < xy < x^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(arity: usize) -> Self {
        Monomial(alloc::vec![0; arity])
    }

    pub fn var(arity: usize, index: usize) -> Self {
        let mut e = alloc::vec![0; arity];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors in `arity` variables of total degree `0..=max_degree`,
/// by ascending degree and, within a degree, with the first variable's
/// exponent descending (`1, x, y, z, x^2, xy, xz, y^2, yz, z^2, ...`).
pub fn monomials_up_to(arity: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let mut current = alloc::vec![0u32; arity];
        push_of_degree(&mut out, &mut current, 0, d);
    }
    out
}

fn push_of_degree(out: &mut Vec<Monomial>, current: &mut Vec<u32>, index: usize, remaining: u32) {
    if index + 1 == current.len() {
        current[index] = remaining;
        out.push(Monomial(current.clone()));
        return;
    }
    if current.is_empty() {
        if remaining == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    for e in (0..=remaining).rev() {
        current[index] = e;
        push_of_degree(out, current, index + 1, remaining - e);
    }
    current[index] = 0;
}
