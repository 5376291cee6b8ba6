use super::ToleranceSpec;
use crate::error::{Error, Result};

/// Brent's method on a sign-changing bracket.
///
/// The bracket is normalized to `lo <= hi` first, so swapping the endpoints
/// yields bit-identical results. Terminates when the bracket half-width falls
/// below `2 eps |b| + tol.scaled(b) / 2`.
pub fn brent_root<F>(f: F, lo: f64, hi: f64, tol: &ToleranceSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    tol.validate()?;
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::EmptyRange { lo, hi });
    }
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = eval(&f, a)?;
    let mut fb = eval(&f, b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket {
            lo: a,
            hi: b,
            f_lo: fa,
            f_hi: fb,
        });
    }

    let mut c = b;
    let mut fc = fb;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..tol.max_iter {
        if fb.signum() == fc.signum() {
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
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol.scaled(b);
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                // secant
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                // inverse quadratic interpolation
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 {
            d
        } else {
            tol1.copysign(xm)
        };
        fb = eval(&f, b)?;
    }
    Err(Error::Convergence {
        method: "brent_root",
        iterations: tol.max_iter,
    })
}

fn eval<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let v = f(x);
    if v.is_nan() {
        return Err(Error::Domain {
            what: "root-finder function value (NaN)",
            value: x,
        });
    }
    Ok(v)
}
