use super::ToleranceSpec;
use crate::error::{Error, Result};

// 21-point Gauss–Kronrod abscissae and weights (QUADPACK qk21).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_425_750,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    for j in 0..10 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Globally adaptive Gauss–Kronrod quadrature on a finite interval.
///
/// The interval is seeded with `pieces` equal panels; the worst panel is
/// bisected until the summed error estimate meets `tol`. `tol.max_iter`
/// bounds the number of bisections. Returns `(value, error_estimate)`.
pub fn integrate<F>(f: F, a: f64, b: f64, pieces: usize, tol: &ToleranceSpec) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    tol.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Quadrature(format!("non-finite limits [{a}, {b}]")));
    }
    if a == b {
        return Ok((0.0, 0.0));
    }
    let pieces = pieces.max(1);
    let width = (b - a) / pieces as f64;
    let mut panels: Vec<Panel> = (0..pieces)
        .map(|i| {
            let lo = a + width * i as f64;
            let hi = if i + 1 == pieces { b } else { lo + width };
            gk21(&f, lo, hi)
        })
        .collect();

    for _ in 0..=tol.max_iter {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if !value.is_finite() {
            return Err(Error::Quadrature("integrand produced a non-finite value".into()));
        }
        if error <= tol.scaled(value) {
            return Ok((value, error));
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, p)| if p.error > acc.1 { (i, p.error) } else { acc });
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // panel cannot be split further in f64
            break;
        }
        panels.push(gk21(&f, p.a, mid));
        panels.push(gk21(&f, mid, p.b));
    }
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let error: f64 = panels.iter().map(|p| p.error).sum();
    Err(Error::Quadrature(format!(
        "no convergence after {} refinements (value {value:e}, error {error:e})",
        tol.max_iter
    )))
}

// Log-scale window of the integrand on [0, ∞) after u = e^y.
const GRID_STEP: f64 = 0.25;
const WINDOW_DEPTH: f64 = 50.0;
const Y_LIMIT: f64 = 700.0;

/// Locate the `y = ln u` window where `ln|f(e^y)| + y` lies within
/// `WINDOW_DEPTH` of its maximum. Returns `(y_lo, y_hi, peak)`.
fn log_window<G: Fn(f64) -> f64>(ln_h: &G, decay_scale: f64) -> Result<(f64, f64, f64)> {
    let centre = decay_scale.ln();
    let mut lo = centre - 60.0;
    let mut hi = centre + 60.0;
    loop {
        let n = ((hi - lo) / GRID_STEP).ceil() as usize;
        let ys: Vec<f64> = (0..=n).map(|i| lo + GRID_STEP * i as f64).collect();
        let vals: Vec<f64> = ys.iter().map(|&y| ln_h(y)).collect();
        let peak = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !peak.is_finite() {
            return Err(Error::Quadrature("integrand vanishes or diverges on the scan grid".into()));
        }
        let floor = peak - WINDOW_DEPTH;
        let first = vals.iter().position(|&v| v >= floor).unwrap_or(0);
        let last = vals.iter().rposition(|&v| v >= floor).unwrap_or(n);
        let open_left = first == 0;
        let open_right = last == n;
        if !open_left && !open_right {
            let y_lo = ys[first - 1];
            let y_hi = ys[last + 1];
            return Ok((y_lo, y_hi, peak));
        }
        if (open_left && lo <= -Y_LIMIT) || (open_right && hi >= Y_LIMIT) {
            return Err(Error::Quadrature("integrand does not decay on [0, inf)".into()));
        }
        if open_left {
            lo = (lo - 120.0).max(-Y_LIMIT);
        }
        if open_right {
            hi = (hi + 120.0).min(Y_LIMIT);
        }
    }
}

/// `∫_0^∞ f(u) du` for integrands with (stretched-)exponential decay.
///
/// Integrates `f(e^y) e^y` over the window of `y` that carries the mass;
/// `decay_scale` centres the initial scan. Relative accuracy is governed by
/// `tol.rel_tol` (at least 1e-9 with the defaults).
pub fn quad_semiinf<F>(f: F, decay_scale: f64, tol: &ToleranceSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    check_scale(decay_scale)?;
    let ln_h = |y: f64| {
        let u = y.exp();
        f(u).abs().ln() + y
    };
    let (y_lo, y_hi, _) = log_window(&ln_h, decay_scale)?;
    let h = |y: f64| {
        let u = y.exp();
        f(u) * u
    };
    let pieces = ((y_hi - y_lo) / 1.0).ceil() as usize;
    let tol = quad_tol(tol);
    integrate(h, y_lo, y_hi, pieces, &tol).map(|(v, _)| v)
}

/// `ln ∫_0^∞ exp(ln_f(u)) du`, for integrals whose value over- or underflows.
pub fn quad_semiinf_ln<F>(ln_f: F, decay_scale: f64, tol: &ToleranceSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    check_scale(decay_scale)?;
    let ln_h = |y: f64| ln_f(y.exp()) + y;
    let (y_lo, y_hi, peak) = log_window(&ln_h, decay_scale)?;
    let h = |y: f64| (ln_h(y) - peak).exp();
    let pieces = ((y_hi - y_lo) / 1.0).ceil() as usize;
    let tol = quad_tol(tol);
    let (v, _) = integrate(h, y_lo, y_hi, pieces, &tol)?;
    Ok(peak + v.ln())
}

fn check_scale(decay_scale: f64) -> Result<()> {
    if !(decay_scale > 0.0) || !decay_scale.is_finite() {
        return Err(Error::Domain {
            what: "quadrature decay scale",
            value: decay_scale,
        });
    }
    Ok(())
}

fn quad_tol(tol: &ToleranceSpec) -> ToleranceSpec {
    ToleranceSpec {
        rel_tol: tol.rel_tol.min(1e-10),
        abs_tol: 0.0,
        max_iter: tol.max_iter.max(500),
    }
}
