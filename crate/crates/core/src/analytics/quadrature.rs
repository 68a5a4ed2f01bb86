//! Adaptive Simpson quadrature and bisection.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 48;
const INITIAL_PANELS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Sum of the local Richardson error estimates.
    pub error: f64,
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    ok: &mut bool,
) -> (f64, f64) {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let diff = left + right - whole;
    if diff.abs() <= 15.0 * tol {
        return (left + right + diff / 15.0, diff.abs() / 15.0);
    }
    if depth >= MAX_DEPTH {
        *ok = false;
        return (left + right + diff / 15.0, diff.abs() / 15.0);
    }
    let (lv, le) = refine(f, a, m, fa, flm, fm, left, tol / 2.0, depth + 1, ok);
    let (rv, re) = refine(f, m, b, fm, frm, fb, right, tol / 2.0, depth + 1, ok);
    (lv + rv, le + re)
}

/// `∫_a^b f` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<Quadrature> {
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::param(format!("bad interval [{a}, {b}]")));
    }
    let width = (b - a) / INITIAL_PANELS as f64;
    let panel_tol = tol / INITIAL_PANELS as f64;
    let mut ok = true;
    let (mut value, mut error) = (0.0, 0.0);
    for i in 0..INITIAL_PANELS {
        let lo = a + i as f64 * width;
        let hi = if i + 1 == INITIAL_PANELS { b } else { lo + width };
        let (fa, fm, fb) = (f(lo), f(0.5 * (lo + hi)), f(hi));
        let whole = simpson(fa, fm, fb, hi - lo);
        let (v, e) = refine(&f, lo, hi, fa, fm, fb, whole, panel_tol, 0, &mut ok);
        value += v;
        error += e;
    }
    if !ok || !value.is_finite() {
        return Err(Error::Numerical(format!(
            "quadrature did not reach tolerance {tol:e}; estimated error {error:e}"
        )));
    }
    Ok(Quadrature { value, error })
}

/// Bisection for a sign change of `f` on `[lo, hi]` down to width `tol`.
pub fn bisect<F: FnMut(f64) -> Result<f64>>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Numerical(format!(
            "no sign change on [{lo}, {hi}]: f = {f_lo:e}, {f_hi:e}"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
