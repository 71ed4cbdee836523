//! Slow, independent reference evaluations: Fourier inversion of the
//! characteristic function, direct Mellin contour quadrature, and brute-force
//! moment quadrature. Used by the verification suites and as cross-checks for
//! the fast series paths.

use crate::error::{Error, Result};
use crate::green::reduced_green;
use crate::mellin_barnes::GammaFraction;
use crate::params::FractionalTriplet;
use crate::quad::{adaptive, euler_accelerate};
use crate::result::{EvaluationResult, Method};
use crate::specials::mittag_leffler::mittag_leffler_complex;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Reduced Green function by direct Fourier inversion:
/// K(x) = (1/pi) int_0^inf Re[e^{-i kappa x} E_beta(-psi(kappa))] d kappa,
/// using the Hermitian symmetry of the integrand. Independent of the
/// Mellin-Barnes machinery. Accepts any real x.
pub fn fourier_oracle(t: &FractionalTriplet, x: f64, tol: f64) -> Result<EvaluationResult> {
    if !(tol > 0.0 && tol <= 1e-2) {
        return Err(Error::Domain(format!(
            "tolerance = {tol} violates 0 < tolerance <= 1e-2"
        )));
    }
    let (alpha, beta) = (t.alpha(), t.beta());
    if alpha == 2.0 && beta == 2.0 {
        return Err(Error::WaveCase);
    }
    if beta == 2.0 {
        return Err(Error::Unsupported(
            "beta = 2: the Mittag-Leffler factor does not decay".into(),
        ));
    }
    let tol = tol.max(1e-13);
    let mut f = |kappa: f64| -> f64 {
        let e = match mittag_leffler_complex(beta, -t.symbol_psi(kappa)) {
            Ok(r) => r.value,
            Err(_) => return f64::NAN,
        };
        (Complex64::new(0.0, -kappa * x).exp() * e).re / PI
    };
    let cut = tol / (10.0 * (1.0 + x.abs()));

    let (value, err) = if beta == 1.0 {
        // exponential integrand decay exp(-kappa^alpha cos(theta pi/2))
        let c = (t.theta() * PI / 2.0).cos();
        if c < 1e-10 {
            return Err(Error::Accuracy {
                achieved: f64::INFINITY,
                requested: tol,
            });
        }
        let cutoff = ((1.0 / cut).ln() / c).powf(1.0 / alpha).max(4.0);
        let (v, e) = adaptive(&mut f, 0.0, cutoff, 0.25 * tol, 20_000);
        (v, e + cut)
    } else if x == 0.0 {
        // algebraic decay kappa^{-alpha}: convergent only for alpha > 1
        if alpha <= 1.0 {
            return Err(Error::Domain(format!(
                "Fourier integral diverges at x = 0 for alpha = {alpha} <= 1 with beta != 1"
            )));
        }
        let split = (2.0 * 33.0f64.powf(beta / alpha)).max(10.0);
        let (head, e1) = adaptive(&mut f, 0.0, split, 0.25 * tol, 20_000);
        // map the tail onto (0, 1] via kappa = split / v; the transformed
        // integrand vanishes like v^{alpha - 2} * v^2 at v = 0
        let (tail, e2) = adaptive(
            &mut |v: f64| f(split / v) * split / (v * v),
            0.0,
            1.0,
            0.25 * tol,
            20_000,
        );
        (head + tail, e1 + e2)
    } else {
        // oscillatory case: integrate between half-periods of e^{-i kappa x}
        // and accelerate the alternating panel sums
        let half = PI / x.abs();
        let start = 33.0f64.powf(beta / alpha).max(1.0);
        let n0 = (start / half).ceil().max(1.0);
        let (head, e1) = adaptive(&mut f, 0.0, n0 * half, 0.2 * tol, 20_000);
        const PANELS: usize = 44;
        let mut sums = Vec::with_capacity(PANELS);
        let mut running = 0.0;
        let mut panel_err = 0.0;
        for n in 0..PANELS {
            let a = (n0 + n as f64) * half;
            let (p, e) = adaptive(&mut f, a, a + half, 0.05 * tol / PANELS as f64, 64);
            running += p;
            panel_err += e;
            sums.push(running);
        }
        let (acc, step) = euler_accelerate(&sums);
        (head + acc, e1 + panel_err + 4.0 * step)
    };

    if !value.is_finite() || !err.is_finite() {
        return Err(Error::Accuracy {
            achieved: f64::INFINITY,
            requested: tol,
        });
    }
    let r = EvaluationResult::new(value, err, Method::Quadrature);
    Ok(if beta > 1.0 {
        // conditionally convergent oscillatory Mittag-Leffler factor
        r.flag_reduced_confidence()
    } else {
        r
    })
}

/// Reduced Green function by direct quadrature of the Mellin-Barnes kernel
/// along the vertical line Re s = gamma. Requires alpha != beta and
/// gamma strictly inside the analyticity strip.
pub fn mellin_oracle(
    t: &FractionalTriplet,
    x: f64,
    gamma: f64,
    tol: f64,
) -> Result<EvaluationResult> {
    let f = GammaFraction::for_green(t)?;
    f.contour_value(x, gamma, tol)
}

/// Fractional absolute moment int_0^inf x^delta K(x) dx by brute-force
/// quadrature of the reduced Green function, with a power-law tail correction
/// for alpha < 2 and plain truncation for alpha = 2.
pub fn quadrature_moment(t: &FractionalTriplet, delta: f64, tol: f64) -> Result<f64> {
    let (alpha, theta) = (t.alpha(), t.theta());
    if alpha == 2.0 && theta == 0.0 {
        if !(delta > -1.0) {
            return Err(Error::Domain(format!(
                "delta = {delta} violates delta > -1"
            )));
        }
    } else {
        let lower = -alpha.min(1.0);
        if !(delta > lower && delta < alpha) {
            return Err(Error::Domain(format!(
                "delta = {delta} outside the open strip ({lower}, {alpha})"
            )));
        }
    }
    let tol = tol.clamp(1e-12, 1e-2);
    let inner_tol = (0.01 * tol).clamp(1e-13, 1e-4);
    // absolute tolerance first; near a divergence of the density (alpha < 1,
    // x -> 0) fall back to relative accuracy so the integrand stays finite
    let k = |x: f64| -> f64 {
        let mut best = f64::NAN;
        for try_tol in [inner_tol, 1e-6, 1e-2] {
            if let Ok(r) = reduced_green(t, x, try_tol) {
                if r.abs_error_estimate <= inner_tol * (1.0 + r.value.abs()) {
                    return r.value;
                }
                best = r.value;
            }
        }
        best
    };
    // x = u^4 near the origin tames both the x^delta weight and any
    // integrable divergence of the density
    let (near, e1) = adaptive(
        &mut |u: f64| 4.0 * u.powf(4.0 * delta + 3.0) * k(u * u * u * u),
        0.0,
        1.0,
        0.2 * tol,
        20_000,
    );
    // grow the truncation point until the estimated tail is negligible
    let mut cutoff = 8.0f64;
    while cutoff < 1.3e5 {
        let kc = k(cutoff);
        if kc.is_nan() {
            break;
        }
        let tail_estimate = if alpha < 2.0 {
            kc * cutoff.powf(delta + 1.0) / (alpha - delta)
        } else {
            kc * cutoff.powf(delta) * cutoff
        };
        if tail_estimate.abs() < 20.0 * tol {
            break;
        }
        cutoff *= 2.0;
    }
    let (mid, e2) = adaptive(
        &mut |x: f64| x.powf(delta) * k(x),
        1.0,
        cutoff,
        0.2 * tol,
        20_000,
    );
    let (tail, e3) = if alpha < 2.0 {
        // two-term fit K(x) ~ c1 x^{-alpha-1} + c2 x^{-2 alpha - 1} from two
        // probes, integrated analytically past the cutoff
        let p1 = k(cutoff) * cutoff.powf(alpha + 1.0);
        let p2 = k(1.5 * cutoff) * (1.5 * cutoff).powf(alpha + 1.0);
        let w = cutoff.powf(-alpha);
        let w2 = (1.5 * cutoff).powf(-alpha);
        let c2 = (p1 - p2) / (w - w2);
        let c1 = p1 - c2 * w;
        let t1 = c1 * cutoff.powf(delta - alpha) / (alpha - delta);
        let t2 = c2 * cutoff.powf(delta - 2.0 * alpha) / (2.0 * alpha - delta);
        (t1 + t2, t2.abs() * cutoff.powf(-alpha) * 4.0 + 1e-14 * t1.abs())
    } else {
        let kc = k(cutoff);
        (0.0, kc.abs() * cutoff.powf(delta) * cutoff)
    };
    let value = near + mid + tail;
    let err = e1 + e2 + e3;
    if !value.is_finite() || err > 10.0 * tol {
        return Err(Error::Accuracy {
            achieved: err,
            requested: tol,
        });
    }
    Ok(value)
}
