//! The three named density families behind the reduced Green function:
//! strictly stable densities (beta = 1), time-fractional Wright densities
//! (alpha = 2) and the elementary neutral case (alpha = beta).

use crate::error::{Error, Result};
use crate::mellin_barnes::{ExpansionSide, GammaFraction, PowerSeriesExpansion};
use crate::params::FractionalTriplet;
use crate::result::{EvaluationResult, Method};
use crate::specials::wright::wright_table;
use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

/// Residue expansions for a triplet, with validity radii calibrated against
/// the vertical-line contour, cached per process. Shared by the stable
/// density path and the general space-time dispatch.
pub(crate) struct TripletExpansions {
    pub(crate) fraction: GammaFraction,
    pub(crate) near: Option<PowerSeriesExpansion>,
    pub(crate) far: Option<PowerSeriesExpansion>,
}

fn expansion_cache() -> &'static Mutex<HashMap<(u64, u64, u64), Arc<TripletExpansions>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64, u64), Arc<TripletExpansions>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

const CALIBRATION_POINTS: [f64; 8] = [0.05, 0.15, 0.4, 1.0, 2.5, 6.0, 15.0, 40.0];

pub(crate) fn expansions_for(t: &FractionalTriplet) -> Result<Arc<TripletExpansions>> {
    let key = (
        t.alpha().to_bits(),
        t.beta().to_bits(),
        t.theta().to_bits(),
    );
    if let Some(e) = expansion_cache().lock().expect("expansion cache").get(&key) {
        return Ok(e.clone());
    }
    let fraction = GammaFraction::for_green(t)?;
    let gamma = 0.5 * (fraction.strip().0 + fraction.strip().1);
    let reference = |x: f64| fraction.contour_value(x, gamma, 1e-9).ok();
    let good = |e: &PowerSeriesExpansion, x: f64| -> bool {
        let r = e.evaluate(x);
        if !(r.abs_error_estimate <= 1e-9 * r.value.abs().max(1e-3)) {
            return false;
        }
        match reference(x) {
            Some(c) => {
                (r.value - c.value).abs()
                    <= 3.0 * (r.abs_error_estimate + c.abs_error_estimate) + 1e-12
            }
            None => true,
        }
    };
    let near = fraction
        .residue_series(ExpansionSide::AtZero, 120)
        .ok()
        .filter(|e| !e.terms().is_empty())
        .map(|mut e| {
            let r = CALIBRATION_POINTS
                .iter()
                .copied()
                .take_while(|&x| good(&e, x))
                .last()
                .unwrap_or(0.0);
            e.set_radius_hint(r);
            e
        })
        .filter(|e| e.radius_hint() > 0.0);
    let far = fraction
        .residue_series(ExpansionSide::AtInfinity, 120)
        .ok()
        .filter(|e| !e.terms().is_empty())
        .map(|mut e| {
            let r = CALIBRATION_POINTS
                .iter()
                .rev()
                .copied()
                .take_while(|&x| good(&e, x))
                .last()
                .unwrap_or(f64::INFINITY);
            e.set_radius_hint(r);
            e
        })
        .filter(|e| e.radius_hint().is_finite());
    let entry = Arc::new(TripletExpansions {
        fraction,
        near,
        far,
    });
    expansion_cache()
        .lock()
        .expect("expansion cache")
        .insert(key, entry.clone());
    Ok(entry)
}

/// Strictly stable density L_alpha^theta at t = 1 (the beta = 1 Green
/// function). Negative x goes through the mirrored-skewness symmetry.
pub fn stable_density(alpha: f64, theta: f64, x: f64) -> Result<EvaluationResult> {
    let t = FractionalTriplet::new(alpha, 1.0, theta)?;
    stable_density_of(&t, x, 1e-10)
}

/// As [`stable_density`], on a validated triplet with an accuracy target.
pub fn stable_density_of(t: &FractionalTriplet, x: f64, tol: f64) -> Result<EvaluationResult> {
    debug_assert_eq!(t.beta(), 1.0);
    if x < 0.0 {
        return stable_density_of(&t.mirrored(), -x, tol);
    }
    let alpha = t.alpha();
    if alpha == 2.0 {
        let v = (-x * x / 4.0).exp() / (2.0 * PI.sqrt());
        return Ok(EvaluationResult::new(v, 4.0 * f64::EPSILON * v, Method::ClosedForm));
    }
    if alpha == 1.0 {
        // alpha = beta = 1: the neutral closed form covers every skewness
        return neutral_value(1.0, t.theta(), x);
    }
    if t.rho() == 0.0 {
        // all mass on the negative half-line
        return Ok(EvaluationResult::new(0.0, 0.0, Method::ClosedForm));
    }
    if x == 0.0 {
        return value_at_origin(t);
    }
    series_or_contour(t, x, tol)
}

/// Wright-type density of time-fractional diffusion, M_{beta/2}(|x|) / 2.
pub fn time_fractional_density(beta: f64, x: f64) -> Result<EvaluationResult> {
    if !(beta > 0.0 && beta < 2.0) {
        return Err(Error::Domain(format!(
            "beta = {beta} violates 0 < beta < 2"
        )));
    }
    let table = wright_table(beta / 2.0)?;
    Ok(table.eval(x.abs())?.with_scale(0.5))
}

/// Elementary closed form of the alpha = beta case on the positive half-line.
pub fn neutral_density(alpha: f64, theta: f64, x: f64) -> Result<EvaluationResult> {
    FractionalTriplet::new(alpha, alpha, theta)?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "neutral density closed form needs x > 0, got {x}"
        )));
    }
    neutral_value(alpha, theta, x)
}

/// (1/pi) x^{alpha-1} sin(c) / (1 + 2 x^alpha cos(c) + x^{2 alpha}) with
/// c = (pi/2)(alpha - theta). Accepts x = 0 where the limit is finite.
pub(crate) fn neutral_value(alpha: f64, theta: f64, x: f64) -> Result<EvaluationResult> {
    let c = FRAC_PI_2 * (alpha - theta);
    if x == 0.0 {
        if alpha < 1.0 {
            return Err(Error::Domain(format!(
                "density diverges at x = 0 for alpha = {alpha} < 1"
            )));
        }
        let v = if alpha == 1.0 { c.sin() / PI } else { 0.0 };
        return Ok(EvaluationResult::new(v, f64::EPSILON * v.abs(), Method::ClosedForm));
    }
    let xa = x.powf(alpha);
    let v = x.powf(alpha - 1.0) * c.sin() / (PI * (1.0 + 2.0 * xa * c.cos() + xa * xa));
    Ok(EvaluationResult::new(
        v,
        8.0 * f64::EPSILON * v.abs() + 1e-300,
        Method::ClosedForm,
    ))
}

/// Value at x = 0 from the leading residue (exponent zero) of the origin
/// expansion; errors when the density diverges there instead.
pub(crate) fn value_at_origin(t: &FractionalTriplet) -> Result<EvaluationResult> {
    let f = GammaFraction::for_green(t)?;
    let e = f.residue_series(ExpansionSide::AtZero, 1)?;
    match e.terms().first() {
        Some(term) if term.exponent.abs() < 1e-9 => {
            let v = term.coefficient();
            Ok(EvaluationResult::new(v, 4.0 * f64::EPSILON * v.abs(), Method::TaylorSeries))
        }
        Some(term) if term.exponent > 0.0 => {
            Ok(EvaluationResult::new(0.0, 0.0, Method::TaylorSeries))
        }
        _ => Err(Error::Domain(
            "density diverges at x = 0 for these parameters".into(),
        )),
    }
}

/// Residue series on whichever side serves x better, with the vertical-line
/// contour as fallback when neither expansion meets the tolerance.
pub(crate) fn series_or_contour(
    t: &FractionalTriplet,
    x: f64,
    tol: f64,
) -> Result<EvaluationResult> {
    let exps = expansions_for(t)?;
    let mut best: Option<EvaluationResult> = None;
    for e in [&exps.near, &exps.far].into_iter().flatten() {
        let r = e.evaluate(x);
        if r.abs_error_estimate.is_finite()
            && best
                .map(|b| r.abs_error_estimate < b.abs_error_estimate)
                .unwrap_or(true)
        {
            best = Some(r);
        }
    }
    if let Some(r) = best {
        if r.abs_error_estimate <= tol {
            return Ok(r);
        }
    }
    let (lo, hi) = exps.fraction.strip();
    let contour = exps.fraction.contour_value(x, 0.5 * (lo + hi), tol);
    match (contour, best) {
        (Ok(r), _) => Ok(r),
        (Err(_), Some(b)) => Ok(b),
        (Err(e), None) => Err(e),
    }
}
