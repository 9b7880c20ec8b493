//! Truncation indices for geometrically dominated series.

use num_traits::{One, Signed, Zero};

use crate::algebra::BigRat;

/// Smallest `N >= 0` with `scale · ratio^N <= tol`.
///
/// All three arguments are exact, so the returned index is certified. Needs
/// `scale >= 0`, `0 < ratio < 1` and `tol > 0`.
pub fn min_terms(scale: &BigRat, ratio: &BigRat, tol: &BigRat) -> usize {
    assert!(tol.is_positive(), "tolerance must be positive");
    assert!(ratio.is_positive() && ratio < &BigRat::one(), "ratio must lie in (0, 1)");
    if scale <= tol {
        return 0;
    }
    let fits = |n: usize| scale * num_traits::pow(ratio.clone(), n) <= *tol;
    let mut hi = 1usize;
    while !fits(hi) {
        hi *= 2;
    }
    let mut lo = hi / 2; // fits(lo) is false (or lo == 0, handled above)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `scale · ratio^n`.
pub fn geometric_bound(scale: &BigRat, ratio: &BigRat, n: usize) -> BigRat {
    if scale.is_zero() {
        return BigRat::zero();
    }
    scale * num_traits::pow(ratio.clone(), n)
}
