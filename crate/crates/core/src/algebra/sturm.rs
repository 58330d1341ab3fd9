use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{AlgebraError, Rat, UniPoly};

/// Sturm sequence `p0 = q, p1 = q', p_{k+1} = -rem(p_{k-1}, p_k)`.
pub fn sturm_sequence(q: &UniPoly) -> Vec<UniPoly> {
    let mut seq = alloc::vec![q.clone()];
    let d = q.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(r.neg());
    }
    seq
}

fn sign_changes(seq: &[UniPoly], t: &Rat) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| p.eval(t))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `q` in the open interval `(lo, hi)`.
pub fn sturm_count(q: &UniPoly, lo: &Rat, hi: &Rat) -> Result<usize, AlgebraError> {
    if q.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(AlgebraError::EmptyInterval);
    }
    if q.eval(lo).is_zero() || q.eval(hi).is_zero() {
        return Err(AlgebraError::EndpointRoot);
    }
    let seq = sturm_sequence(q);
    Ok(sign_changes(&seq, lo) - sign_changes(&seq, hi))
}

/// Number of distinct real roots of a nonzero `q`.
pub fn real_root_count(q: &UniPoly) -> Result<usize, AlgebraError> {
    if q.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if q.degree() == Some(0) {
        return Ok(0);
    }
    let b = q.root_bound();
    sturm_count(q, &-b.clone(), &b)
}

/// Disjoint open intervals `(lo, hi)`, sorted, each holding exactly one
/// real root of `q`; no endpoint is a root.
pub fn isolate_real_roots(q: &UniPoly) -> Result<Vec<(Rat, Rat)>, AlgebraError> {
    if q.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if q.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let seq = sturm_sequence(q);
    let b = q.root_bound();
    let mut out = Vec::new();
    let mut stack = alloc::vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match sign_changes(&seq, &lo) - sign_changes(&seq, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = split_point(q, &lo, &hi);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    Ok(out)
}

/// A non-root strictly inside `(lo, hi)`, as close to the middle as the
/// finitely many roots allow.
fn split_point(q: &UniPoly, lo: &Rat, hi: &Rat) -> Rat {
    let width = hi - lo;
    (2i64..)
        .flat_map(|k| (1..k).map(move |j| (j, k)))
        .map(|(j, k)| lo + &width * Rat::new(j.into(), k.into()))
        .find(|t| !q.eval(t).is_zero())
        .expect("a polynomial has finitely many roots")
}

#[cfg(test)]
mod tests {
    use super::super::{int, rat};
    use super::*;
    use alloc::vec;

    #[test]
    fn examples() {
        let q = UniPoly::new(vec![int(-1), int(0), int(1)]);
        assert_eq!(sturm_count(&q, &int(-2), &int(2)), Ok(2));
        let q = UniPoly::new(vec![int(1), int(0), int(1)]);
        assert_eq!(sturm_count(&q, &int(-10), &int(10)), Ok(0));
        // t^3 - 3t = t (t - √3)(t + √3)
        let q = UniPoly::new(vec![int(0), int(-3), int(0), int(1)]);
        assert_eq!(sturm_count(&q, &int(-2), &int(2)), Ok(3));
        assert_eq!(sturm_count(&q, &rat(1, 10), &int(2)), Ok(1));
    }

    #[test]
    fn isolation_separates_roots() {
        // (t - 0)(t - 1/3)(t - 1/2)^2 (t^2 + 1): roots at 0 and 1/2 fall on
        // natural bisection points.
        let factors = [UniPoly::linear(int(0)), UniPoly::linear(rat(1, 3)), UniPoly::linear(rat(1, 2)), UniPoly::linear(rat(1, 2))];
        let q = factors.iter().fold(UniPoly::new(vec![int(1), int(0), int(1)]), |acc, f| acc.mul(f));
        let iv = isolate_real_roots(&q).unwrap();
        assert_eq!(iv.len(), 3);
        for (w, root) in iv.windows(2).zip([int(0), rat(1, 3)]) {
            assert!(w[0].1 <= w[1].0);
            assert!(w[0].0 < root && root < w[0].1);
        }
        assert!(iv.iter().all(|(lo, hi)| !q.eval(lo).is_zero() && !q.eval(hi).is_zero()));
        assert!(isolate_real_roots(&UniPoly::constant(int(3))).unwrap().is_empty());
    }

    #[test]
    fn errors() {
        let q = UniPoly::new(vec![int(-1), int(0), int(1)]);
        assert_eq!(sturm_count(&q, &int(1), &int(2)), Err(AlgebraError::EndpointRoot));
        assert_eq!(sturm_count(&q, &int(2), &int(2)), Err(AlgebraError::EmptyInterval));
        assert_eq!(sturm_count(&UniPoly::zero(), &int(0), &int(1)), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn repeated_roots_count_once() {
        // (t - 1)^2 (t + 2)
        let q = UniPoly::linear(int(1)).mul(&UniPoly::linear(int(1))).mul(&UniPoly::linear(int(-2)));
        assert_eq!(real_root_count(&q), Ok(2));
    }
}
