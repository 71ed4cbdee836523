//! Log-Gamma on the real line (with sign tracking) and in the complex plane.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

// Lanczos approximation, g = 7, 9 terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LOG_TWO_PI: f64 = 0.918_938_533_204_672_74;

/// log |Gamma(x)| together with the sign of Gamma(x).
#[derive(Debug, Clone, Copy)]
pub struct LogGamma {
    pub log_abs: f64,
    /// +1.0 or -1.0
    pub sign: f64,
}

impl LogGamma {
    pub fn value(&self) -> f64 {
        self.sign * self.log_abs.exp()
    }
}

fn lanczos_positive(x: f64) -> f64 {
    // valid for x >= 0.5
    let z = x - 1.0;
    let base = z + LANCZOS_G + 0.5;
    let mut series = LANCZOS_COEFFS[0];
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + k as f64);
    }
    HALF_LOG_TWO_PI + (z + 0.5) * base.ln() - base + series.ln()
}

/// sin(pi x) with argument reduction, accurate for large |x|.
fn sin_pi(x: f64) -> f64 {
    let fl = x.floor();
    let r = x - fl; // in [0, 1)
    let s = if r <= 0.5 {
        (PI * r).sin()
    } else {
        (PI * (1.0 - r)).sin()
    };
    if (fl as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Natural log of |Gamma(x)| plus the sign of Gamma(x).
///
/// Errors with [`Error::Pole`] at nonpositive integers.
pub fn log_gamma(x: f64) -> Result<LogGamma> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma argument {x} not finite")));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::Pole(x));
    }
    if x >= 0.5 {
        return Ok(LogGamma {
            log_abs: lanczos_positive(x),
            sign: 1.0,
        });
    }
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x); 1 - x >= 0.5 here
    let s = sin_pi(x);
    let log_abs = PI.ln() - s.abs().ln() - lanczos_positive(1.0 - x);
    Ok(LogGamma {
        log_abs,
        sign: s.signum(),
    })
}

/// 1 / Gamma(x); exactly 0 at the poles of Gamma.
pub fn recip_gamma(x: f64) -> f64 {
    match log_gamma(x) {
        Ok(lg) => lg.sign * (-lg.log_abs).exp(),
        Err(_) => 0.0,
    }
}

/// Gamma(x); errors at the poles.
pub fn gamma(x: f64) -> Result<f64> {
    log_gamma(x).map(|lg| lg.value())
}

/// Principal-branch-free complex log-Gamma: the result is correct modulo
/// 2 pi i, which is enough for exponentiating sums of log-Gamma factors.
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        let zm = z - 1.0;
        let base = zm + LANCZOS_G + 0.5;
        let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
        for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            series += c / (zm + k as f64);
        }
        Complex64::new(HALF_LOG_TWO_PI, 0.0) + (zm + 0.5) * base.ln() - base + series.ln()
    } else {
        // reflection; ln sin(pi z) evaluated overflow-free
        Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma_complex(1.0 - z)
    }
}

/// log sin(pi z), stable for large |Im z| (modulo 2 pi i).
fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    let w = z * PI;
    if z.im < 20.0 {
        w.sin().ln()
    } else {
        // sin w = (i/2) e^{-iw} (1 - e^{2iw}); |e^{2iw}| = e^{-2 Im w} tiny
        let i = Complex64::new(0.0, 1.0);
        Complex64::new(-(2.0f64.ln()), 0.5 * PI) - i * w + (1.0 - (2.0 * i * w).exp()).ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_factorial_product_oracle() {
        // log Gamma(n) = sum of logs of 1..n-1
        let mut acc = 0.0f64;
        for n in 2..=170u64 {
            acc += ((n - 1) as f64).ln();
            let lg = log_gamma(n as f64).unwrap();
            assert!(
                (lg.log_abs - acc).abs() <= 1e-13 * acc.abs().max(1.0),
                "n={n}: {} vs {}",
                lg.log_abs,
                acc
            );
            assert_eq!(lg.sign, 1.0);
        }
    }

    #[test]
    fn half_integer_oracle() {
        // Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!)
        let log_fact = |m: u64| -> f64 { (2..=m).map(|k| (k as f64).ln()).sum() };
        for n in 0..=80u64 {
            let expected =
                log_fact(2 * n) + 0.5 * PI.ln() - (n as f64) * 4.0f64.ln() - log_fact(n);
            let lg = log_gamma(n as f64 + 0.5).unwrap();
            assert!(
                (lg.log_abs - expected).abs() <= 1e-12 * expected.abs().max(1.0),
                "n={n}"
            );
        }
    }

    #[test]
    fn known_values_and_reflection() {
        assert!(log_gamma(1.0).unwrap().log_abs.abs() < 1e-15);
        assert!((log_gamma(0.5).unwrap().log_abs - 0.5 * PI.ln()).abs() < 1e-14);
        // Gamma(-1.5) = 4 sqrt(pi) / 3
        let lg = log_gamma(-1.5).unwrap();
        let expected = (4.0 * PI.sqrt() / 3.0).ln();
        assert!((lg.log_abs - expected).abs() < 1e-13);
        assert_eq!(lg.sign, 1.0);
        // Gamma(-0.5) = -2 sqrt(pi)
        let lg = log_gamma(-0.5).unwrap();
        assert!((lg.log_abs - (2.0 * PI.sqrt()).ln()).abs() < 1e-13);
        assert_eq!(lg.sign, -1.0);
    }

    #[test]
    fn poles_rejected_and_recip_zero() {
        for x in [0.0, -1.0, -2.0, -37.0] {
            assert!(matches!(log_gamma(x), Err(Error::Pole(_))));
            assert_eq!(recip_gamma(x), 0.0);
        }
        assert!((recip_gamma(0.5) - 1.0 / PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn complex_agrees_with_real_axis() {
        for &x in &[0.3, 1.0, 2.5, 10.0, 55.5] {
            let c = ln_gamma_complex(Complex64::new(x, 0.0));
            let r = log_gamma(x).unwrap();
            assert!((c.re - r.log_abs).abs() < 1e-12 * r.log_abs.abs().max(1.0));
        }
    }

    #[test]
    fn complex_functional_equation() {
        // ln Gamma(z+1) - ln Gamma(z) = ln z  (modulo 2 pi i)
        for &(re, im) in &[(0.3, 4.0), (-2.2, 1.5), (0.5, 120.0), (-0.7, 60.0)] {
            let z = Complex64::new(re, im);
            let d = ln_gamma_complex(z + 1.0) - ln_gamma_complex(z) - z.ln();
            let two_pi = 2.0 * PI;
            let frac = (d.im / two_pi - (d.im / two_pi).round()).abs();
            assert!(d.re.abs() < 1e-10, "z={z}: d={d}");
            assert!(frac < 1e-10, "z={z}: d={d}");
        }
    }
}
