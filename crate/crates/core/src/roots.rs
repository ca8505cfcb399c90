//! Bracketing root finders shared by the fixed-point and continuation code.

/// Bisection on a bracket `[lo, hi]` where `f(lo)` and `f(hi)` have opposite
/// signs (or one of them is zero).
///
/// Stops once the bracket is no wider than `tol`, or when the midpoint can no
/// longer be separated from the endpoints in double precision. Returns the
/// midpoint of the final bracket, or an endpoint if `f` vanishes there.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return lo;
    }
    let f_hi = f(hi);
    if f_hi == 0.0 {
        return hi;
    }
    debug_assert!(
        f_lo.signum() != f_hi.signum(),
        "bisect called without a sign change on [{lo}, {hi}]"
    );
    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return mid;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
}

/// Real roots of `a x^2 + b x + c = 0`, ascending, computed without the
/// cancellation of the textbook formula. `None` when the discriminant is
/// negative or the equation is degenerate (`a == 0`).
pub fn quadratic_roots(a: f64, b: f64, c: f64) -> Option<(f64, f64)> {
    if a == 0.0 {
        return None;
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let t = -0.5 * (b + b.signum() * sq);
    if t == 0.0 {
        // b == 0 and c == 0
        return Some((0.0, 0.0));
    }
    let (x1, x2) = (t / a, c / t);
    Some(if x1 <= x2 { (x1, x2) } else { (x2, x1) })
}
