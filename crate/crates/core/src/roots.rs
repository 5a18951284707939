//! Bracketed scalar root finding used by the envelope solver.
//!
//! Bisection guarantees progress on any bracketed sign change; Newton or
//! secant steps are taken whenever they land inside the current bracket,
//! which restores superlinear convergence near the root. When the iterate
//! stops moving at floating point resolution the best point is returned and
//! the caller validates its own residuals.

use crate::error::{Error, Result};

pub(crate) struct Bracket {
    pub a: f64,
    pub b: f64,
    pub fa: f64,
    pub fb: f64,
}

impl Bracket {
    pub fn new(a: f64, b: f64, fa: f64, fb: f64) -> Result<Self> {
        if !(fa.is_finite() && fb.is_finite()) || fa * fb > 0.0 {
            return Err(Error::RootNotBracketed(format!(
                "f({a:e}) = {fa:e}, f({b:e}) = {fb:e}"
            )));
        }
        Ok(Bracket { a, b, fa, fb })
    }
}

/// Grow `hi` geometrically from `hi_init` until f changes sign against f(lo).
pub(crate) fn expand_bracket<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi_init: f64,
    what: &str,
) -> Result<Bracket> {
    let flo = f(lo);
    let mut hi = hi_init;
    for _ in 0..200 {
        let fhi = f(hi);
        if !fhi.is_finite() {
            break;
        }
        if flo * fhi <= 0.0 {
            return Bracket::new(lo, hi, flo, fhi);
        }
        hi *= 2.0;
    }
    Err(Error::RootNotBracketed(what.to_string()))
}

/// Scan geometrically spaced points in [lo, hi] for the first sign change.
pub(crate) fn scan_bracket<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    what: &str,
) -> Result<Bracket> {
    let mut x = lo;
    let mut fx = f(x);
    while x < hi {
        let xn = (x * 2.0).min(hi);
        let fxn = f(xn);
        if fx.is_finite() && fxn.is_finite() && fx * fxn <= 0.0 {
            return Bracket::new(x, xn, fx, fxn);
        }
        if xn >= hi {
            break;
        }
        x = xn;
        fx = fxn;
    }
    Err(Error::RootNotBracketed(what.to_string()))
}

/// Bisection refined by Newton steps.
///
/// Returns as soon as |f| <= tol_f, or when the iterate stops moving at
/// floating point resolution (tol_f = 0 therefore runs to the float floor).
pub(crate) fn newton_bisect<F, G>(
    f: &F,
    df: &G,
    bracket: Bracket,
    tol_f: f64,
    max_iter: usize,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let Bracket {
        mut a,
        mut b,
        mut fa,
        fb: _,
    } = bracket;
    let mut x = 0.5 * (a + b);
    let mut fx = f(x);
    for _ in 0..max_iter {
        if fx.abs() <= tol_f {
            return Ok(x);
        }
        if fa * fx <= 0.0 {
            b = x;
        } else {
            a = x;
            fa = fx;
        }
        let d = df(x);
        let newton = x - fx / d;
        let next = if d != 0.0 && newton.is_finite() && newton > a && newton < b {
            newton
        } else {
            0.5 * (a + b)
        };
        if next == x || next == a || next == b {
            return Ok(x);
        }
        x = next;
        fx = f(x);
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual: fx.abs(),
    })
}

/// Bisection refined by secant steps; derivative-free variant of
/// [`newton_bisect`] with the same termination contract.
pub(crate) fn secant_bisect<F>(f: &F, bracket: Bracket, tol_f: f64, max_iter: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let Bracket {
        mut a,
        mut b,
        mut fa,
        fb,
    } = bracket;
    let mut x_prev = a;
    let mut f_prev = fa;
    let mut x = b;
    let mut fx = fb;
    for _ in 0..max_iter {
        if fx.abs() <= tol_f {
            return Ok(x);
        }
        if fa * fx <= 0.0 {
            b = x;
        } else {
            a = x;
            fa = fx;
        }
        let denom = fx - f_prev;
        let secant = if denom != 0.0 {
            x - fx * (x - x_prev) / denom
        } else {
            f64::NAN
        };
        let next = if secant.is_finite() && secant > a && secant < b {
            secant
        } else {
            0.5 * (a + b)
        };
        if next == x || next == a || next == b {
            return Ok(x);
        }
        x_prev = x;
        f_prev = fx;
        x = next;
        fx = f(x);
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual: fx.abs(),
    })
}
