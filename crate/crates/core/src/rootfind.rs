//! Bracketed scalar root finding (Brent's method with bisection fallback).

use crate::error::{Error, Result};

pub const DEFAULT_TOL_X: f64 = 1e-13;
pub const DEFAULT_MAX_ITER: usize = 200;

/// An interval on which a continuous function changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
}

impl Bracket {
    /// Evaluates `f` at both ends and checks for a sign change.
    pub fn new(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<Self> {
        Self::from_values(lo, hi, f(lo), f(hi))
    }

    /// Builds a bracket from endpoint values already known (for instance
    /// analytically).
    pub fn from_values(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let ordered = lo < hi && lo.is_finite() && hi.is_finite();
        let opposite = (f_lo < 0.0 && f_hi > 0.0) || (f_lo > 0.0 && f_hi < 0.0);
        if ordered && opposite {
            Ok(Bracket { lo, hi, f_lo, f_hi })
        } else {
            Err(Error::NoSignChange { lo, hi, f_lo, f_hi })
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }
}

/// Finds a root of `f` inside `bracket`.
///
/// Stops once the root is located to within `tol_x` (plus a few ulps of
/// the root itself), or when `f` vanishes exactly. The result always lies
/// in `[lo, hi]`.
pub fn find_root(
    f: impl Fn(f64) -> f64,
    bracket: Bracket,
    tol_x: f64,
    max_iter: usize,
) -> Result<f64> {
    if tol_x.is_nan() || tol_x <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "root tolerance must be positive, got {tol_x}"
        )));
    }
    let Bracket {
        lo: mut a,
        hi: mut b,
        f_lo: mut fa,
        f_hi: mut fb,
    } = bracket;
    // b is the best estimate, a the previous one, c the opposite-sign end.
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..max_iter {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol_x;
        let half = 0.5 * (c - b);
        if half.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            // Inverse quadratic (or secant) step.
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * half * q - (tol * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(half) };
        fb = f(b);
    }
    Err(Error::MaxIterationsExceeded { max_iter })
}

/// [`find_root`] with the default tolerance and iteration cap.
pub fn find_root_default(f: impl Fn(f64) -> f64, bracket: Bracket) -> Result<f64> {
    find_root(f, bracket, DEFAULT_TOL_X, DEFAULT_MAX_ITER)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_of_two() {
        let f = |t: f64| t * t - 2.0;
        let r = find_root_default(f, Bracket::new(f, 1.0, 2.0).unwrap()).unwrap();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-13);
    }

    #[test]
    fn invalid_bracket_is_rejected() {
        let f = |t: f64| t + 10.0;
        assert!(matches!(
            Bracket::new(f, 1.0, 2.0),
            Err(Error::NoSignChange { .. })
        ));
        assert!(Bracket::from_values(2.0, 1.0, -1.0, 1.0).is_err());
        assert!(Bracket::from_values(1.0, 2.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn iteration_cap_is_reported() {
        let f = |t: f64| t.powi(3) - 0.3;
        let b = Bracket::new(f, -5.0, 7.0).unwrap();
        assert!(matches!(
            find_root(f, b, 1e-15, 2),
            Err(Error::MaxIterationsExceeded { max_iter: 2 })
        ));
    }

    #[test]
    fn exact_zero_at_first_step_is_accepted() {
        let f = |t: f64| t;
        let r = find_root_default(f, Bracket::new(f, -1.0, 1.0).unwrap()).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn very_small_tolerance_reaches_machine_precision() {
        let f = |t: f64| (t - 3e-5) * 1e4;
        let b = Bracket::new(f, 0.0, 19.0).unwrap();
        let r = find_root(f, b, f64::MIN_POSITIVE, DEFAULT_MAX_ITER).unwrap();
        assert!((r - 3e-5).abs() < 1e-19);
    }

    #[test]
    fn deterministic() {
        let f = |t: f64| t.exp() - 3.0;
        let b = Bracket::new(f, 0.0, 2.0).unwrap();
        let r1 = find_root_default(f, b).unwrap();
        let r2 = find_root_default(f, b).unwrap();
        assert_eq!(r1.to_bits(), r2.to_bits());
    }
}
