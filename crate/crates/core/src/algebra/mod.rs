//! Exact arithmetic substrate.

mod linalg;
mod monomial;
mod multipoly;
mod resultant;
mod sturm;
mod unipoly;

pub use linalg::{det_poly, det_rat, nullspace_vector, rank, solve, Matrix};
pub use monomial::{monomials_up_to, Monomial};
pub use multipoly::MultiPoly;
pub use resultant::{has_common_factor, resultant_formal, sylvester_resultant};
pub use sturm::{isolate_real_roots, real_root_count, sturm_count, sturm_sequence};
pub use unipoly::UniPoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The rational `n / d`.
///
/// # Panics
/// If `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The simplest rational (smallest denominator, then smallest magnitude
/// numerator) strictly between `lo` and `hi`.
///
/// # Panics
/// If `lo >= hi`.
pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo < hi, "empty interval");
    if lo.is_negative() && hi.is_positive() {
        return Rat::zero();
    }
    if !lo.is_negative() {
        simplest_positive(lo, hi)
    } else {
        -simplest_positive(&-hi, &-lo)
    }
}

// Stern-Brocot descent on 0 <= lo < hi.
fn simplest_positive(lo: &Rat, hi: &Rat) -> Rat {
    let fl = lo.floor();
    let candidate = &fl + Rat::from_integer(1.into());
    if &candidate < hi {
        return candidate;
    }
    // lo and hi share the integer part fl, and hi <= fl + 1.
    let lo_frac = lo - &fl;
    let hi_frac = hi - &fl;
    if lo_frac.is_zero() {
        // Interval (fl, fl + hi_frac): pick fl + 1/n with 1/n < hi_frac.
        let n = (hi_frac.recip()).floor() + Rat::from_integer(1.into());
        return fl + n.recip();
    }
    // Recurse on reciprocals, which reverses the order.
    let inner = simplest_positive(&hi_frac.recip(), &lo_frac.recip());
    fl + inner.recip()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("arity mismatch: polynomial has {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("variable index {index} out of range for arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("polynomial must have degree at least 1 in the eliminated variable")]
    DegreeTooLow,
    #[error("interval is empty")]
    EmptyInterval,
    #[error("interval endpoint is a root; perturb the endpoint")]
    EndpointRoot,
    #[error("division is not exact")]
    InexactDivision,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplest_between_picks_small_denominators() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(2, 5));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(1, 7)), int(0));
        assert_eq!(simplest_between(&rat(3, 2), &rat(7, 2)), int(2));
        assert_eq!(simplest_between(&rat(-7, 3), &rat(-9, 4)), rat(-16, 7));
        assert_eq!(simplest_between(&int(0), &rat(1, 10)), rat(1, 11));
    }

    #[test]
    fn simplest_between_is_inside() {
        let cases = [(rat(5, 7), rat(8, 11)), (rat(101, 100), rat(102, 100)), (int(-3), rat(-29, 10))];
        for (lo, hi) in cases {
            let m = simplest_between(&lo, &hi);
            assert!(lo < m && m < hi, "{m} not in ({lo}, {hi})");
        }
    }
}
