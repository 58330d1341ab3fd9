use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{det_poly, AlgebraError, MultiPoly, Rat};

/// Sylvester matrix of two coefficient lists (lowest degree first), using
/// the formal degrees `f.len() - 1` and `g.len() - 1`.
pub(crate) fn sylvester_matrix<T: Clone>(f: &[T], g: &[T], zero: &T) -> Vec<Vec<T>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = alloc::vec![zero.clone(); size];
        for (k, c) in f.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = alloc::vec![zero.clone(); size];
        for (k, c) in g.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of `f = Σ f_k m^k` and `g = Σ g_k m^k` whose coefficients are
/// polynomials in the remaining parameters.
///
/// Formal degrees are the slice lengths minus one; a vanishing leading
/// coefficient is kept, so the result is the homogeneous resultant of the
/// corresponding binary forms.
pub fn sylvester_resultant(f: &[MultiPoly], g: &[MultiPoly]) -> Result<MultiPoly, AlgebraError> {
    if f.iter().all(MultiPoly::is_zero) || g.iter().all(MultiPoly::is_zero) {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if f.len() < 2 || g.len() < 2 {
        return Err(AlgebraError::DegreeTooLow);
    }
    let arity = f[0].arity();
    if let Some(bad) = f.iter().chain(g).find(|c| c.arity() != arity) {
        return Err(AlgebraError::ArityMismatch { expected: arity, got: bad.arity() });
    }
    let s = sylvester_matrix(f, g, &MultiPoly::zero(arity));
    Ok(det_poly(&s, arity))
}

fn actual_degree(f: &[Rat]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

fn pow(base: &Rat, e: usize) -> Rat {
    (0..e).fold(Rat::one(), |acc, _| acc * base)
}

fn odd(n: usize) -> bool {
    n % 2 == 1
}

/// Resultant of two rational coefficient lists with formal degrees
/// `f.len() - 1` and `g.len() - 1`, equal to the Sylvester determinant,
/// computed by the Euclidean algorithm.
pub fn resultant_formal(f: &[Rat], g: &[Rat]) -> Rat {
    assert!(!f.is_empty() && !g.is_empty(), "coefficient lists must be nonempty");
    let m = f.len() - 1;
    let n = g.len() - 1;
    let (Some(df), Some(dg)) = (actual_degree(f), actual_degree(g)) else {
        // A zero polynomial of positive formal degree gives a zero column.
        return if (f.iter().all(Zero::is_zero) && n > 0) || (g.iter().all(Zero::is_zero) && m > 0) {
            Rat::zero()
        } else {
            Rat::one()
        };
    };
    if df < m && dg < n {
        return Rat::zero();
    }
    if df < m {
        // Expand along the first column: only lc(g) survives there.
        let sign = if odd(n * (m - df)) { -Rat::one() } else { Rat::one() };
        return sign * pow(&g[n], m - df) * resultant_formal(&f[..=df], g);
    }
    if dg < n {
        let sign = if odd(m * n) { -Rat::one() } else { Rat::one() };
        return sign * resultant_formal(g, f);
    }
    resultant_exact(f, g)
}

// Both leading coefficients nonzero.
fn resultant_exact(f: &[Rat], g: &[Rat]) -> Rat {
    let m = f.len() - 1;
    let n = g.len() - 1;
    if n == 0 {
        return pow(&g[0], m);
    }
    if m == 0 {
        return pow(&f[0], n);
    }
    if m < n {
        let sign = if odd(m * n) { -Rat::one() } else { Rat::one() };
        return sign * resultant_exact(g, f);
    }
    // r = f mod g; Res(f, g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r).
    let mut r = f.to_vec();
    let lead_inv = g[n].recip();
    for k in (0..=m - n).rev() {
        let t = &r[k + n] * &lead_inv;
        if t.is_zero() {
            continue;
        }
        for (j, c) in g.iter().enumerate() {
            r[k + j] -= &t * c;
        }
    }
    r.truncate(n);
    let Some(dr) = actual_degree(&r) else {
        return Rat::zero();
    };
    let sign = if odd(m * n) { -Rat::one() } else { Rat::one() };
    sign * pow(&g[n], m - dr) * resultant_exact(g, &r[..=dr])
}

/// True iff `p` and `q` share a non-constant factor.
///
/// For each variable appearing in both, the resultant with respect to that
/// variable is a polynomial in the other variables of total degree at most
/// `deg p * deg q`; it is identically zero iff it vanishes on a square grid
/// with `deg p * deg q + 1` values per axis. Grid values are obtained by
/// specializing the Sylvester matrix, which commutes with the determinant.
pub fn has_common_factor(p: &MultiPoly, q: &MultiPoly) -> bool {
    if p.is_zero() || q.is_zero() {
        let other = if p.is_zero() { q } else { p };
        return !other.is_constant() || other.is_zero();
    }
    if p.is_constant() || q.is_constant() {
        return false;
    }
    let arity = p.arity();
    let bound = (p.degree().unwrap_or(0) * q.degree().unwrap_or(0)) as usize;
    (0..arity).any(|var| {
        if p.degree_in(var) == 0 || q.degree_in(var) == 0 {
            return false;
        }
        resultant_vanishes_identically(p, q, var, bound)
    })
}

fn resultant_vanishes_identically(p: &MultiPoly, q: &MultiPoly, var: usize, bound: usize) -> bool {
    let pc = p.coefficients_in(var);
    let qc = q.coefficients_in(var);
    let others: Vec<usize> = (0..p.arity()).filter(|&v| v != var).collect();
    let values: Vec<Rat> = (0..=bound as i64).map(|v| Rat::from_integer(v.into())).collect();
    let mut point = alloc::vec![Rat::zero(); p.arity()];
    // Odometer over values^others.
    let mut idx = alloc::vec![0usize; others.len()];
    loop {
        for (k, &v) in others.iter().enumerate() {
            point[v] = values[idx[k]].clone();
        }
        let fs: Vec<Rat> = pc.iter().map(|c| c.eval(&point).expect("arity")).collect();
        let gs: Vec<Rat> = qc.iter().map(|c| c.eval(&point).expect("arity")).collect();
        if !resultant_formal(&fs, &gs).is_zero() {
            return false;
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return true;
            }
            idx[k] += 1;
            if idx[k] < values.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{det_rat, int, rat};
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn symbolic_example() {
        // f = m^2 - a, g = m - b over Q[a, b].
        let a = MultiPoly::var(2, 0);
        let b = MultiPoly::var(2, 1);
        let one = MultiPoly::one(2);
        let zero = MultiPoly::zero(2);
        let r = sylvester_resultant(&[-&a, zero, one.clone()], &[-&b, one]).unwrap();
        assert_eq!(r, &(&b * &b) - &a);
    }

    #[test]
    fn identical_and_shared_root() {
        let c = |v: &Rat| MultiPoly::constant(1, v.clone());
        let f: Vec<MultiPoly> = ints(&[1, 0, 1]).iter().map(c).collect();
        assert!(sylvester_resultant(&f, &f).unwrap().is_zero());
        // r + 2 s m + t m^2 with r=-1, s=0, t=1; alpha + 3 beta m + 3 gamma m^2 + delta m^3
        // with alpha=0, beta=-1/3, gamma=0, delta=1: both vanish at m = 1.
        let quad: Vec<MultiPoly> = ints(&[-1, 0, 1]).iter().map(c).collect();
        let cubic: Vec<MultiPoly> = [int(0), int(3) * rat(-1, 3), int(0), int(1)].iter().map(c).collect();
        assert!(sylvester_resultant(&quad, &cubic).unwrap().is_zero());
    }

    #[test]
    fn errors() {
        let z = MultiPoly::zero(1);
        let o = MultiPoly::one(1);
        assert_eq!(sylvester_resultant(&[z.clone(), z.clone()], &[o.clone(), o.clone()]), Err(AlgebraError::ZeroPolynomial));
        assert_eq!(sylvester_resultant(core::slice::from_ref(&o), &[o.clone(), o.clone()]), Err(AlgebraError::DegreeTooLow));
    }

    #[test]
    fn euclid_matches_determinant_including_degenerate_leads() {
        let cases: &[(&[i64], &[i64])] = &[
            (&[1, -3, 0, 2], &[5, 1, 4]),
            (&[2, 0, 7, 0], &[1, 3, -1]),
            (&[2, 5, 0], &[1, 3, 0, 0]),
            (&[0, 0, 0], &[1, 3]),
            (&[4], &[1, 2, 3]),
            (&[-1, 0, 1], &[0, -1, 0, 1]),
            (&[3, 1], &[0, 2, 0, 0, 1]),
        ];
        for (f, g) in cases {
            let (f, g) = (ints(f), ints(g));
            let s = sylvester_matrix(&f, &g, &int(0));
            let det = if s.is_empty() { int(1) } else { det_rat(s) };
            assert_eq!(resultant_formal(&f, &g), det, "f={f:?} g={g:?}");
        }
    }

    #[test]
    fn common_factor_examples() {
        let x = MultiPoly::var(3, 0);
        let y = MultiPoly::var(3, 1);
        let z = MultiPoly::var(3, 2);
        let s = &x + &y;
        assert!(has_common_factor(&(&s * &z), &(&s * &(&x - &z))));
        assert!(!has_common_factor(&x, &y));
        let sphere = &(&(&x * &x) + &(&y * &y)) + &(&(&z * &z) - &MultiPoly::one(3));
        let g = &(&x * &y) - &z;
        assert!(has_common_factor(&sphere, &(&sphere * &g)));
        assert!(!has_common_factor(&sphere, &g));
    }
}
