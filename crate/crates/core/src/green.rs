//! Public evaluation surface: the reduced Green function, the full Green
//! function via self-similar scaling, the subordination integral and the
//! closed-form fractional moments.

use crate::densities::{self, expansions_for};
use crate::error::{Error, Result};
use crate::mellin_barnes::SeriesNature;
use crate::params::{DiffusionClass, FractionalTriplet};
use crate::quad::adaptive;
use crate::result::{EvaluationResult, Method};
use crate::specials::log_gamma::{log_gamma, recip_gamma};
use crate::specials::wright::wright_table;

/// A fully specified evaluation request.
#[derive(Debug, Clone, Copy)]
pub struct GreenRequest {
    pub triplet: FractionalTriplet,
    pub x: f64,
    pub t: f64,
    pub tolerance: f64,
}

impl GreenRequest {
    pub fn new(triplet: FractionalTriplet, x: f64) -> Self {
        GreenRequest {
            triplet,
            x,
            t: 1.0,
            tolerance: 1e-8,
        }
    }

    pub fn with_time(mut self, t: f64) -> Self {
        self.t = t;
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn evaluate(&self) -> Result<EvaluationResult> {
        green(&self.triplet, self.x, self.t, self.tolerance)
    }
}

fn check_tolerance(tol: f64) -> Result<()> {
    if !(1e-14..=1e-2).contains(&tol) {
        return Err(Error::Domain(format!(
            "tolerance = {tol} violates 1e-14 <= tolerance <= 1e-2"
        )));
    }
    Ok(())
}

/// Reduced Green function K at t = 1. Negative x is routed through the
/// symmetry relation K^theta(-x) = K^{-theta}(x).
pub fn reduced_green(t: &FractionalTriplet, x: f64, tol: f64) -> Result<EvaluationResult> {
    check_tolerance(tol)?;
    let r = reduced_green_inner(t, x, tol)?;
    Ok(if t.probabilistic() {
        r
    } else {
        r.flag_non_probabilistic()
    })
}

fn reduced_green_inner(t: &FractionalTriplet, x: f64, tol: f64) -> Result<EvaluationResult> {
    if x < 0.0 {
        return reduced_green_inner(&t.mirrored(), -x, tol);
    }
    match t.classify() {
        DiffusionClass::Wave => Err(Error::WaveCase),
        DiffusionClass::StandardGaussian | DiffusionClass::SpaceFractional => {
            densities::stable_density_of(t, x, tol)
        }
        DiffusionClass::TimeFractional => densities::time_fractional_density(t.beta(), x),
        DiffusionClass::Neutral => densities::neutral_value(t.alpha(), t.theta(), x),
        DiffusionClass::GeneralSpaceTime => {
            if t.alpha() == 2.0 {
                // 1 < beta < 2 keeps the Wright-type form
                return densities::time_fractional_density(t.beta(), x);
            }
            if t.rho() == 0.0 {
                return Ok(EvaluationResult::new(0.0, 0.0, Method::ClosedForm));
            }
            if x == 0.0 {
                return densities::value_at_origin(t);
            }
            general_space_time(t, x, tol)
        }
    }
}

/// Full Green function via the self-similarity law
/// G(x, t) = t^{-beta/alpha} K(x / t^{beta/alpha}).
pub fn green(t: &FractionalTriplet, x: f64, time: f64, tol: f64) -> Result<EvaluationResult> {
    if !(time > 0.0) {
        return Err(Error::Domain(format!("time = {time} violates time > 0")));
    }
    let scale = time.powf(-t.beta() / t.alpha());
    Ok(reduced_green(t, x * scale, tol)?.with_scale(scale))
}

/// General (alpha, beta) dispatch at x > 0: calibrated residue series first,
/// then the contour, then the subordination integral.
fn general_space_time(t: &FractionalTriplet, x: f64, tol: f64) -> Result<EvaluationResult> {
    fn better(best: Option<EvaluationResult>, r: EvaluationResult) -> Option<EvaluationResult> {
        match best {
            Some(b) if b.abs_error_estimate <= r.abs_error_estimate => Some(b),
            _ => Some(r),
        }
    }
    let exps = expansions_for(t)?;
    let mut best: Option<EvaluationResult> = None;
    if let Some(e) = &exps.near {
        if x <= e.radius_hint() {
            best = better(best, e.evaluate(x));
        }
    }
    if let Some(e) = &exps.far {
        // a convergent descending series is valid wherever its own error
        // estimate says so; only asymptotic ones need the calibrated radius
        if x >= e.radius_hint() || e.nature() == SeriesNature::Convergent {
            best = better(best, e.evaluate(x));
        }
    }
    if let Some(r) = best {
        if r.abs_error_estimate <= tol {
            return Ok(r);
        }
    }
    // the line integral is cheap when the integrand decays briskly along the
    // contour, so try it before the subordination fallback
    let gamma = 0.5 * (exps.fraction.strip().0 + exps.fraction.strip().1);
    if let Ok(r) = exps.fraction.contour_value(x, gamma, tol) {
        if r.abs_error_estimate <= tol {
            return Ok(r);
        }
        best = better(best, r);
    }
    if let Ok(r) = subordination_integral(t, x, tol) {
        if r.abs_error_estimate <= tol {
            return Ok(r);
        }
        best = better(best, r);
    }
    match best {
        Some(r) if r.abs_error_estimate <= tol => Ok(r),
        Some(r) => Err(Error::Accuracy {
            achieved: r.abs_error_estimate,
            requested: tol,
        }),
        None => Err(Error::Accuracy {
            achieved: f64::INFINITY,
            requested: tol,
        }),
    }
}

/// Integral mixture of a stable (or neutral) density against a Wright-M
/// directing density: branch 1 needs 0 < beta < 1, branch 2 needs
/// 0 < beta/alpha < 1 with alpha < 2 (the neutral kernel degenerates at
/// alpha = 2).
pub fn subordination_integral(t: &FractionalTriplet, x: f64, tol: f64) -> Result<EvaluationResult> {
    check_tolerance(tol)?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "subordination integral needs x > 0, got {x}"
        )));
    }
    let (alpha, beta) = (t.alpha(), t.beta());
    let branch1_ok = beta < 1.0;
    let branch2_ok = beta < alpha && alpha < 2.0;
    if !branch1_ok && !branch2_ok {
        return Err(Error::Domain(format!(
            "no subordination branch applies: beta = {beta} not in (0,1) and beta/alpha = {} not in (0,1) with alpha < 2",
            beta / alpha
        )));
    }
    // prefer the branch with the cheaper inner density
    let use_branch1 = branch1_ok && (alpha == 2.0 || (alpha == 1.0 && t.theta() == 0.0) || !branch2_ok);
    // pointwise accuracy of the inner densities; enters the result additively
    let inner = (0.05 * tol).clamp(1e-12, 1e-7);
    let value = if use_branch1 {
        let table = wright_table(beta)?;
        let stable = t_with_beta_one(t)?;
        log_substituted_integral(tol, &mut |u: f64| {
            let xi = u.exp();
            let m = match table.eval_tol(xi.powf(alpha), inner) {
                Ok(r) => r.value,
                Err(_) => return f64::NAN,
            };
            if m == 0.0 {
                return 0.0;
            }
            let l = match densities::stable_density_of(&stable, x / xi, inner) {
                Ok(r) => r.value,
                Err(_) => return f64::NAN,
            };
            alpha * xi.powf(alpha - 1.0) * m * l
        })
    } else {
        let table = wright_table(beta / alpha)?;
        log_substituted_integral(tol, &mut |u: f64| {
            let xi = u.exp();
            let m = match table.eval_tol(xi, inner) {
                Ok(r) => r.value,
                Err(_) => return f64::NAN,
            };
            if m == 0.0 {
                return 0.0;
            }
            let n = match densities::neutral_value(alpha, t.theta(), x / xi) {
                Ok(r) => r.value,
                Err(_) => return f64::NAN,
            };
            m * n
        })
    }?;
    Ok(EvaluationResult::new(
        value.0,
        value.1 + 3.0 * inner,
        Method::Subordination,
    ))
}

fn t_with_beta_one(t: &FractionalTriplet) -> Result<FractionalTriplet> {
    FractionalTriplet::new(t.alpha(), 1.0, t.theta())
}

/// Adaptive quadrature of f(u) du over the real line after the xi = e^u
/// substitution: a coarse scan brackets the region where the integrand is
/// non-negligible relative to its peak.
fn log_substituted_integral(
    tol: f64,
    f: &mut dyn FnMut(f64) -> f64,
) -> Result<(f64, f64)> {
    const SPAN: f64 = 34.0;
    const STEPS: i32 = 170;
    let h = 2.0 * SPAN / STEPS as f64;
    let mut peak = 0.0f64;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut samples = Vec::with_capacity(STEPS as usize + 1);
    for i in 0..=STEPS {
        let u = -SPAN + i as f64 * h;
        let v = f(u);
        samples.push((u, v));
        if v.is_nan() {
            continue;
        }
        peak = peak.max(v.abs());
    }
    if peak == 0.0 {
        return Ok((0.0, 0.0));
    }
    for &(u, v) in &samples {
        if v.is_nan() || v.abs() > 1e-18 * peak {
            lo = lo.min(u - h);
            hi = hi.max(u + h);
        }
    }
    let (v, err) = adaptive(&mut |u| f(u), lo, hi, (0.25 * tol).max(1e-14), 4000);
    if v.is_nan() || err.is_nan() {
        return Err(Error::Accuracy {
            achieved: f64::INFINITY,
            requested: tol,
        });
    }
    Ok((v, err + 1e-16 * peak))
}

/// Closed-form fractional absolute moment of the reduced Green function over
/// the positive half-line. The general formula holds on the open strip
/// -min(alpha, 1) < delta < alpha; for alpha = 2, theta = 0 every delta > -1
/// is admitted.
pub fn moment(t: &FractionalTriplet, delta: f64) -> Result<f64> {
    let (alpha, beta, rho) = (t.alpha(), t.beta(), t.rho());
    if alpha == 2.0 && t.theta() == 0.0 {
        if !(delta > -1.0) {
            return Err(Error::Domain(format!(
                "delta = {delta} violates delta > -1"
            )));
        }
        let num = log_gamma(1.0 + delta)?;
        let den = recip_gamma(1.0 + beta * delta / 2.0);
        return Ok(0.5 * num.sign * (num.log_abs).exp() * den);
    }
    let lower = -alpha.min(1.0);
    if !(delta > lower && delta < alpha) {
        return Err(Error::Domain(format!(
            "delta = {delta} outside the open strip ({lower}, {alpha})"
        )));
    }
    if rho == 0.0 {
        return Ok(0.0);
    }
    let g1 = log_gamma(1.0 - delta / alpha)?;
    let g2 = log_gamma(1.0 + delta / alpha)?;
    let g3 = log_gamma(1.0 + delta)?;
    let log_num = g1.log_abs + g2.log_abs + g3.log_abs;
    let sign_num = g1.sign * g2.sign * g3.sign;
    let d1 = recip_gamma(1.0 - rho * delta);
    let d2 = recip_gamma(1.0 + rho * delta);
    let d3 = recip_gamma(1.0 + beta * delta / alpha);
    Ok(rho * sign_num * log_num.exp() * d1 * d2 * d3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mellin_barnes::GammaFraction;
    use std::f64::consts::PI;

    fn triplet(a: f64, b: f64, th: f64) -> FractionalTriplet {
        FractionalTriplet::new(a, b, th).unwrap()
    }

    #[test]
    fn gaussian_point_values() {
        let t = triplet(2.0, 1.0, 0.0);
        let r = reduced_green(&t, 0.0, 1e-10).unwrap();
        assert!((r.value - 1.0 / (2.0 * PI.sqrt())).abs() < 1e-14);
        for (x, time) in [(0.5, 1.0), (1.0, 4.0), (2.0, 0.3)] {
            let g = green(&t, x, time, 1e-10).unwrap();
            let expected = (-x * x / (4.0 * time)).exp() / (2.0 * (PI * time).sqrt());
            assert!((g.value - expected).abs() < 1e-13, "x={x} t={time}");
        }
    }

    #[test]
    fn neutral_dispatch() {
        let t = triplet(1.5, 1.5, 0.3);
        let r = reduced_green(&t, 1.0, 1e-8).unwrap();
        let d = densities::neutral_density(1.5, 0.3, 1.0).unwrap();
        assert_eq!(r.value, d.value);
        assert_eq!(r.method, Method::ClosedForm);
    }

    #[test]
    fn symmetry_relation() {
        for (a, b, th, x) in [
            (1.2, 0.9, 0.1, 0.7),
            (1.5, 0.7, -0.4, 1.3),
            (0.8, 0.6, 0.2, 2.0),
            (1.5, 1.0, 0.5, 0.4),
        ] {
            let t = triplet(a, b, th);
            let lhs = reduced_green(&t, -x, 1e-8).unwrap();
            let rhs = reduced_green(&t.mirrored(), x, 1e-8).unwrap();
            assert!(
                (lhs.value - rhs.value).abs() < 1e-12,
                "({a},{b},{th}) x={x}"
            );
        }
    }

    #[test]
    fn wave_case_is_symbolic() {
        let t = triplet(2.0, 2.0, 0.0);
        assert!(matches!(reduced_green(&t, 0.5, 1e-8), Err(Error::WaveCase)));
        let msg = reduced_green(&t, 0.5, 1e-8).unwrap_err().to_string();
        assert!(msg.contains("delta"));
    }

    #[test]
    fn tolerance_validation() {
        let t = triplet(2.0, 1.0, 0.0);
        assert!(reduced_green(&t, 1.0, 1e-15).is_err());
        assert!(reduced_green(&t, 1.0, 0.5).is_err());
        assert!(green(&t, 1.0, 0.0, 1e-8).is_err());
        assert!(green(&t, 1.0, -2.0, 1e-8).is_err());
    }

    #[test]
    fn scaling_law() {
        let t = triplet(1.4, 0.8, -0.2);
        let scale_exp = t.beta() / t.alpha();
        for (x, time) in [(0.6, 2.0), (1.7, 0.5), (3.0, 7.0)] {
            let g = green(&t, x, time, 1e-9).unwrap();
            let k = reduced_green(&t, x * time.powf(-scale_exp), 1e-9).unwrap();
            let lhs = g.value * time.powf(scale_exp);
            assert!(
                (lhs - k.value).abs() < 1e-10 * (1.0 + k.value.abs()),
                "x={x} t={time}: {lhs} vs {}",
                k.value
            );
        }
    }

    #[test]
    fn subordination_reproduces_wright_density() {
        for beta in [0.5, 0.8] {
            let t = triplet(2.0, beta, 0.0);
            for x in [0.25, 1.0, 3.0] {
                let s = subordination_integral(&t, x, 1e-8).unwrap();
                let d = densities::time_fractional_density(beta, x).unwrap();
                assert!(
                    (s.value - d.value).abs() < 1e-6,
                    "beta={beta} x={x}: {} vs {}",
                    s.value,
                    d.value
                );
            }
        }
    }

    #[test]
    fn subordination_agrees_with_contour() {
        for (a, b, th) in [(1.5, 1.2, 0.0), (1.8, 1.5, 0.1)] {
            let t = triplet(a, b, th);
            let f = GammaFraction::for_green(&t).unwrap();
            let gamma = 0.5 * (f.strip().0 + f.strip().1);
            for x in [0.5, 1.0, 2.0] {
                let s = subordination_integral(&t, x, 1e-8).unwrap();
                let c = f.contour_value(x, gamma, 1e-9).unwrap();
                assert!(
                    (s.value - c.value).abs() < 1e-5,
                    "({a},{b},{th}) x={x}: {} vs {}",
                    s.value,
                    c.value
                );
            }
        }
    }

    #[test]
    fn subordination_branch_preconditions() {
        // beta = 1 exactly: branch 1 excluded, branch 2 only if beta < alpha
        let t = triplet(1.0, 1.0, 0.0);
        assert!(subordination_integral(&t, 1.0, 1e-8).is_err());
        // alpha = 2 with beta >= 1: the neutral kernel degenerates
        let t = triplet(2.0, 1.5, 0.0);
        assert!(subordination_integral(&t, 1.0, 1e-8).is_err());
    }

    #[test]
    fn moment_closed_forms() {
        let t = triplet(2.0, 1.0, 0.0);
        assert!((moment(&t, 2.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((moment(&t, 0.0).unwrap() - 0.5).abs() < 1e-15);

        let t = triplet(2.0, 0.5, 0.0);
        let expected = recip_gamma(1.5);
        assert!((moment(&t, 2.0).unwrap() - expected).abs() < 1e-14);
        assert!((moment(&t, 2.0).unwrap() - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-7);

        for (a, b, th) in [(1.5, 1.0, 0.0), (1.2, 0.7, 0.3), (0.8, 0.5, -0.2)] {
            let t = triplet(a, b, th);
            assert!((moment(&t, 0.0).unwrap() - t.rho()).abs() < 1e-14, "rho case");
        }
    }

    #[test]
    fn moment_strip_is_open() {
        let t = triplet(1.5, 1.0, 0.0);
        assert!(moment(&t, 1.6).is_err());
        assert!(moment(&t, 1.5).is_err());
        assert!(moment(&t, -1.0).is_err());
        assert!(moment(&t, 1.49).is_ok());
        let t = triplet(2.0, 1.0, 0.0);
        assert!(moment(&t, -1.0).is_err());
        assert!(moment(&t, 5.0).is_ok());
    }

    #[test]
    fn general_case_consistency() {
        let t = triplet(1.2, 0.9, 0.1);
        let f = GammaFraction::for_green(&t).unwrap();
        let gamma = 0.5 * (f.strip().0 + f.strip().1);
        for x in [0.2, 1.0, 5.0] {
            let r = reduced_green(&t, x, 1e-8).unwrap();
            let c = f.contour_value(x, gamma, 1e-9).unwrap();
            assert!(
                (r.value - c.value).abs()
                    < (r.abs_error_estimate + c.abs_error_estimate).max(1e-9),
                "x={x}: {} vs {} ({})",
                r.value,
                c.value,
                r.method
            );
            assert!(r.value >= 0.0);
        }
    }

    #[test]
    fn non_probabilistic_flagging() {
        let t = triplet(0.8, 1.1, 0.0);
        let r = reduced_green(&t, 1.0, 1e-6).unwrap();
        assert!(r.non_probabilistic);
        let t = triplet(1.8, 1.5, 0.1);
        let r = reduced_green(&t, 1.0, 1e-6).unwrap();
        assert!(!r.non_probabilistic);
    }
}
