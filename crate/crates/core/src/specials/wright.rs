//! The Wright-type function M_nu on the nonnegative real axis.
//!
//! M_nu(x) = sum_{n>=0} (-x)^n / (n! Gamma(1 - nu(n+1))), entire in x for
//! 0 < nu < 1. The alternating series loses digits once x is moderately
//! large, so mid-range arguments go through a vertical-line (saddle point)
//! contour for the Hankel representation
//! M_nu(x) = (1/2 pi i) int e^{sigma - x sigma^nu} sigma^{nu-1} d sigma,
//! and very large arguments use the stretched-exponential asymptotic form.

use crate::error::{Error, Result};
use crate::quad::adaptive;
use crate::result::{EvaluationResult, Method};
use crate::specials::log_gamma::log_gamma;
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

const MAX_TABLE: usize = 3200;

/// Precomputed series coefficients for a fixed nu. Coefficients are stored in
/// log space with signs; magnitudes span far beyond the f64 range.
#[derive(Debug)]
pub struct WrightM {
    nu: f64,
    log_coeff: Vec<f64>,
    sign: Vec<f64>,
}

impl WrightM {
    pub fn new(nu: f64) -> Result<Self> {
        if !(nu > 0.0 && nu < 1.0) {
            return Err(Error::Domain(format!("nu = {nu} violates 0 < nu < 1")));
        }
        let mut log_coeff = Vec::with_capacity(MAX_TABLE);
        let mut sign = Vec::with_capacity(MAX_TABLE);
        let mut log_fact = 0.0f64;
        for n in 0..MAX_TABLE {
            if n > 0 {
                log_fact += (n as f64).ln();
            }
            let y = 1.0 - nu * (n as f64 + 1.0);
            match log_gamma(y) {
                Ok(lg) => {
                    log_coeff.push(-lg.log_abs - log_fact);
                    sign.push(lg.sign);
                }
                Err(_) => {
                    // pole of Gamma: the coefficient vanishes
                    log_coeff.push(f64::NEG_INFINITY);
                    sign.push(1.0);
                }
            }
        }
        Ok(WrightM {
            nu,
            log_coeff,
            sign,
        })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// M_nu(x) to a default tight tolerance.
    pub fn eval(&self, x: f64) -> Result<EvaluationResult> {
        self.eval_tol(x, 1e-13)
    }

    /// M_nu(x), accepting the cheap series whenever its error estimate stays
    /// below `tol`; otherwise the saddle contour or the asymptotic form.
    pub fn eval_tol(&self, x: f64, tol: f64) -> Result<EvaluationResult> {
        if !(x >= 0.0) {
            return Err(Error::Domain(format!("wright_m argument {x} must be >= 0")));
        }
        if x == 0.0 {
            let v = self.sign[0] * self.log_coeff[0].exp();
            return Ok(EvaluationResult::new(v, f64::EPSILON * v, Method::ClosedForm));
        }

        let (v, err) = self.series(x);
        if err <= tol.max(1e-14 + 1e-12 * v.abs()) {
            return Ok(EvaluationResult::new(v, err, Method::TaylorSeries));
        }

        // exponent of the asymptotic decay; if it underflows, report the
        // asymptotic form directly
        let nu = self.nu;
        let saddle = (x * nu).powf(1.0 / (1.0 - nu));
        if saddle * (1.0 - nu) / nu > 700.0 {
            let (v, err) = self.asymptotic(x);
            return Ok(EvaluationResult::new(v, err, Method::AsymptoticSeries));
        }

        let (v, err) = self.saddle_contour(x, tol);
        Ok(EvaluationResult::new(v, err, Method::Quadrature))
    }

    fn series(&self, x: f64) -> (f64, f64) {
        let lx = x.ln();
        let mut sum = 0.0f64;
        let mut comp = 0.0f64; // Neumaier compensation
        let mut abs_sum = 0.0f64;
        let mut peak = 0.0f64;
        let mut tail = f64::INFINITY;
        let mut done = false;
        let mut small_streak = 0u32;
        for n in 0..self.log_coeff.len() {
            let lt = self.log_coeff[n] + n as f64 * lx;
            if lt == f64::NEG_INFINITY {
                // vanishing coefficient (Gamma pole), not genuine decay
                continue;
            }
            let mag = lt.exp();
            if n > 2 && mag < 1e-17 * abs_sum.max(1e-300) {
                small_streak += 1;
                if small_streak >= 2 {
                    tail = mag;
                    done = true;
                    break;
                }
            } else {
                small_streak = 0;
            }
            let term = self.sign[n] * if n % 2 == 0 { mag } else { -mag };
            let t = sum + term;
            comp += if sum.abs() >= term.abs() {
                (sum - t) + term
            } else {
                (term - t) + sum
            };
            sum = t;
            abs_sum += mag;
            peak = peak.max(mag);
        }
        let value = sum + comp;
        let err = if done {
            f64::EPSILON * abs_sum + tail
        } else {
            f64::INFINITY // table exhausted before the terms decayed
        };
        (value, err)
    }

    /// Hankel loop bent through the real saddle of sigma - x sigma^nu: two
    /// rays at angles +-omega from the saddle, so the integrand decays like
    /// exp(r cos omega) instead of oscillating along a vertical line.
    fn saddle_contour(&self, x: f64, tol: f64) -> (f64, f64) {
        let nu = self.nu;
        let saddle = (x * nu).powf(1.0 / (1.0 - nu));
        let omega = 0.75 * PI;
        let dir = Complex64::from_polar(1.0, omega);
        let mut integrand = |r: f64| -> f64 {
            let sigma = saddle + r * dir;
            let w = sigma - x * sigma.powf(nu);
            (w.exp() * sigma.powf(nu - 1.0) * dir).im
        };
        // the integrand peaks at exp(-peak); truncate and set tolerances
        // relative to that scale so deep-tail values keep relative accuracy
        let peak = saddle * (1.0 - nu) / nu;
        let scale = (-peak).exp();
        let cos_abs = -omega.cos();
        let mut r_max = 45.0 / cos_abs;
        for _ in 0..4 {
            r_max = (45.0 + peak + saddle + x * (saddle + r_max).powf(nu)) / cos_abs;
        }
        // absolute target, but never so loose that deep-tail values lose all
        // relative accuracy
        let quad_tol = (0.25 * tol * PI).min(1e-6 * scale).max(1e-14 * scale);
        let (v, err) = adaptive(&mut integrand, 0.0, r_max, quad_tol, 3000);
        let tail = scale * 3e-20;
        (v / PI, err / PI + 1e-16 * scale + tail)
    }

    /// Leading stretched-exponential term; relative accuracy O(1/Y) with
    /// Y the decay exponent, which is huge whenever this branch is taken.
    fn asymptotic(&self, x: f64) -> (f64, f64) {
        let nu = self.nu;
        let chi = x.powf(1.0 / (1.0 - nu));
        let b = (1.0 - nu) * nu.powf(nu / (1.0 - nu));
        let a = nu.powf((nu - 0.5) / (1.0 - nu)) / (2.0 * PI * (1.0 - nu)).sqrt();
        let v = a * x.powf((nu - 0.5) / (1.0 - nu)) * (-b * chi).exp();
        let y = b * chi;
        (v, v.abs() / y.max(1.0) + 1e-300)
    }
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<WrightM>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<WrightM>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared, cached evaluator for a given nu.
pub fn wright_table(nu: f64) -> Result<Arc<WrightM>> {
    let key = nu.to_bits();
    if let Some(t) = cache().lock().expect("wright cache").get(&key) {
        return Ok(t.clone());
    }
    let table = Arc::new(WrightM::new(nu)?);
    cache()
        .lock()
        .expect("wright cache")
        .insert(key, table.clone());
    Ok(table)
}

/// M_nu(x) for 0 < nu < 1 and x >= 0.
pub fn wright_m(nu: f64, x: f64) -> Result<EvaluationResult> {
    wright_table(nu)?.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_case_half() {
        // M_{1/2}(x) = exp(-x^2/4)/sqrt(pi)
        for i in 0..=100 {
            let x = i as f64 * 0.1;
            let expected = (-x * x / 4.0).exp() / PI.sqrt();
            let r = wright_m(0.5, x).unwrap();
            assert!(
                (r.value - expected).abs() < 1e-10,
                "x={x}: {} vs {expected} ({})",
                r.value,
                r.method
            );
        }
        let r = wright_m(0.5, 1.0).unwrap();
        assert!((r.value - 0.4393912894677224).abs() < 1e-12);
    }

    #[test]
    fn value_at_origin() {
        // M_nu(0) = 1/Gamma(1-nu)
        for nu in [0.1, 0.25, 0.5, 0.75, 0.9] {
            let expected = crate::specials::log_gamma::recip_gamma(1.0 - nu);
            let r = wright_m(nu, 0.0).unwrap();
            assert!((r.value - expected).abs() < 1e-14, "nu={nu}");
        }
        let r = wright_m(0.5, 0.0).unwrap();
        assert!((r.value - 1.0 / PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn nonnegative_and_normalized() {
        for nu in [0.2, 0.4, 0.6, 0.8] {
            let table = wright_table(nu).unwrap();
            // nonnegativity on a sample grid
            for i in 0..=200 {
                let x = i as f64 * 0.25;
                let v = table.eval(x).unwrap().value;
                assert!(v >= -1e-12, "nu={nu} x={x} v={v}");
            }
            // integral over the half-line is 1; truncate where the
            // stretched-exponential tail is below 1e-20
            let b = (1.0 - nu) * nu.powf(nu / (1.0 - nu));
            let upper = (50.0 / b).powf(1.0 - nu);
            let (integral, _) = adaptive(
                &mut |x: f64| table.eval_tol(x, 1e-11).map(|r| r.value).unwrap_or(0.0),
                0.0,
                upper,
                1e-10,
                4000,
            );
            assert!(
                (integral - 1.0).abs() < 1e-8,
                "nu={nu}: integral = {integral}"
            );
        }
    }

    #[test]
    fn saddle_matches_series_in_overlap() {
        // arguments where the plain series is still accurate
        for nu in [0.3, 0.5, 0.7] {
            let table = wright_table(nu).unwrap();
            for x in [1.0, 2.0, 3.0] {
                let (s, serr) = table.series(x);
                let (c, cerr) = table.saddle_contour(x, 1e-13);
                assert!(
                    (s - c).abs() < (serr + cerr).max(1e-10),
                    "nu={nu} x={x}: {s} vs {c}"
                );
            }
        }
    }

    #[test]
    fn large_argument_decay() {
        // values decay strictly and stay positive into the tail
        let table = wright_table(0.75).unwrap();
        let mut prev = f64::INFINITY;
        for x in [2.0, 3.0, 4.0, 5.0, 6.0, 8.0] {
            let v = table.eval(x).unwrap().value;
            assert!(v > 0.0 && v < prev, "x={x} v={v}");
            prev = v;
        }
        // far beyond the representable range the value underflows cleanly
        let v = table.eval(40.0).unwrap().value;
        assert!(v >= 0.0 && v < 1e-300);
    }

    #[test]
    fn domain_errors() {
        assert!(WrightM::new(0.0).is_err());
        assert!(WrightM::new(1.0).is_err());
        assert!(wright_m(0.5, -0.1).is_err());
    }
}
