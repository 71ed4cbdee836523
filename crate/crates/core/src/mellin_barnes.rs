//! Mellin-Barnes machinery for the reduced Green function: the Gamma-fraction
//! kernel, its pole ladders on both sides of the strip of analyticity, and the
//! residue-generated power series expansions at the origin and at infinity.
//!
//! Poles are accounted with net order: a denominator Gamma pole at the same
//! location is a zero of the fraction and cancels one numerator pole. Net
//! order zero locations are regular points; net order two or more makes the
//! residue series refuse (callers fall back to contour quadrature).

use crate::error::{Error, Result};
use crate::params::FractionalTriplet;
use crate::result::{EvaluationResult, Method};
use crate::specials::log_gamma::{ln_gamma_complex, log_gamma};
use num_complex::Complex64;

/// Relative tolerance deciding when two pole locations coincide.
fn coincide(s1: f64, s2: f64) -> bool {
    (s1 - s2).abs() < 1e-9 * s1.abs().max(1.0)
}

/// A ratio of Gamma factors Gamma(a s + b), together with the vertical strip
/// of analyticity and the 1/alpha prefactor of the density kernel.
#[derive(Debug, Clone)]
pub struct GammaFraction {
    numerator: Vec<(f64, f64)>,
    denominator: Vec<(f64, f64)>,
    strip: (f64, f64),
    alpha: f64,
}

/// Which contour closure generated an expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionSide {
    /// right poles, powers ascending from the origin
    AtZero,
    /// left poles, powers descending at infinity
    AtInfinity,
}

/// Convergence character of an expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesNature {
    Convergent,
    Asymptotic,
}

/// A pole location with its net order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub location: f64,
    pub order: i32,
}

/// One residue term: coefficient stored in log space with a sign.
#[derive(Debug, Clone, Copy)]
pub struct SeriesTerm {
    pub exponent: f64,
    pub log_abs_coeff: f64,
    pub sign: f64,
}

impl SeriesTerm {
    pub fn coefficient(&self) -> f64 {
        self.sign * self.log_abs_coeff.exp()
    }
}

/// Residue-generated expansion of the reduced Green function.
#[derive(Debug, Clone)]
pub struct PowerSeriesExpansion {
    origin: ExpansionSide,
    terms: Vec<SeriesTerm>,
    nature: SeriesNature,
    radius_hint: f64,
}

impl GammaFraction {
    /// Kernel of the Mellin-Barnes representation of the reduced Green
    /// function: Gamma(s/a) Gamma(1 - s/a) Gamma(1 - s) over
    /// Gamma(1 - b s/a) Gamma(rho s) Gamma(1 - rho s), with exactly matching
    /// numerator/denominator factors cancelled.
    pub fn for_green(t: &FractionalTriplet) -> Result<Self> {
        let (a, b, rho) = (t.alpha(), t.beta(), t.rho());
        if a == b {
            return Err(Error::Unsupported(
                "alpha = beta: the kernel degenerates; use the elementary closed form".into(),
            ));
        }
        let mut numerator = vec![(1.0 / a, 0.0), (-1.0 / a, 1.0), (-1.0, 1.0)];
        let mut denominator = vec![(-b / a, 1.0), (rho, 0.0), (-rho, 1.0)];
        cancel_exact_pairs(&mut numerator, &mut denominator);
        Ok(GammaFraction {
            numerator,
            denominator,
            strip: (0.0, a.min(1.0)),
            alpha: a,
        })
    }

    pub fn numerator_factors(&self) -> &[(f64, f64)] {
        &self.numerator
    }

    pub fn denominator_factors(&self) -> &[(f64, f64)] {
        &self.denominator
    }

    pub fn strip(&self) -> (f64, f64) {
        self.strip
    }

    /// log of the kernel at a complex point (correct modulo 2 pi i, which is
    /// enough to exponentiate).
    pub fn log_kernel(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(a, b) in &self.numerator {
            acc += ln_gamma_complex(a * s + b);
        }
        for &(a, b) in &self.denominator {
            acc -= ln_gamma_complex(a * s + b);
        }
        acc
    }

    /// First `count` net poles to the right of the strip, ascending.
    pub fn poles_right(&self, count: usize) -> Vec<Pole> {
        self.poles(count, true)
    }

    /// First `count` net poles to the left of the strip, descending.
    pub fn poles_left(&self, count: usize) -> Vec<Pole> {
        self.poles(count, false)
    }

    fn poles(&self, count: usize, right: bool) -> Vec<Pole> {
        let mut per_factor = count.max(4);
        loop {
            let mut events: Vec<(f64, i32)> = Vec::new();
            for &(a, b) in &self.numerator {
                collect_factor_poles(a, b, right, per_factor, 1, &mut events);
            }
            for &(a, b) in &self.denominator {
                collect_factor_poles(a, b, right, per_factor, -1, &mut events);
            }
            events.sort_by(|p, q| p.0.abs().total_cmp(&q.0.abs()));

            // horizon below which every factor's ladder is fully enumerated,
            // so net orders there are final
            let horizon = self
                .numerator
                .iter()
                .chain(&self.denominator)
                .filter(|&&(a, _)| if right { a < 0.0 } else { a > 0.0 })
                .map(|&(a, b)| ((per_factor - 1) as f64 + b) / a.abs())
                .fold(f64::INFINITY, f64::min);

            let mut merged: Vec<Pole> = Vec::new();
            for (loc, weight) in events {
                if loc.abs() > horizon {
                    break;
                }
                match merged.last_mut() {
                    Some(p) if coincide(p.location, loc) => p.order += weight,
                    _ => merged.push(Pole {
                        location: loc,
                        order: weight,
                    }),
                }
            }
            merged.retain(|p| p.order >= 1);
            if merged.len() >= count || per_factor > 64 * count + 1024 {
                merged.truncate(count);
                return merged;
            }
            per_factor *= 2;
        }
    }

    /// Exponential decay rate of the kernel along a vertical line, from the
    /// Stirling modulus of each factor: (pi/2) (sum |a| over the numerator
    /// minus sum |a| over the denominator).
    pub fn line_decay_rate(&self) -> f64 {
        let n: f64 = self.numerator.iter().map(|&(a, _)| a.abs()).sum();
        let d: f64 = self.denominator.iter().map(|&(a, _)| a.abs()).sum();
        std::f64::consts::FRAC_PI_2 * (n - d)
    }

    /// Direct quadrature of the kernel against x^s along the vertical line
    /// Re s = gamma, exploiting conjugate symmetry (the result is real):
    /// K(x) = (1 / (alpha pi x)) Re int_0^T F(gamma + i t) x^{gamma + i t} dt.
    pub fn contour_value(&self, x: f64, gamma: f64, tol: f64) -> Result<EvaluationResult> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!(
                "contour evaluation needs x > 0, got {x}"
            )));
        }
        if !(gamma > self.strip.0 && gamma < self.strip.1) {
            return Err(Error::Domain(format!(
                "gamma = {gamma} outside the strip ({}, {})",
                self.strip.0, self.strip.1
            )));
        }
        let rate = self.line_decay_rate();
        let lx = x.ln();
        let mut integrand = |t: f64| -> f64 {
            let s = Complex64::new(gamma, t);
            (self.log_kernel(s) + s * lx).exp().re
        };
        // truncate where the Stirling decay has eaten ~50 e-folds; a floor on
        // the rate guards the slowly decaying beta -> 2 edge
        let eff_rate = rate.max(0.02);
        let t_max = 52.0 / eff_rate;
        let quad_tol = (0.1 * tol * self.alpha * x).max(1e-15);
        let (v, quad_err) = crate::quad::adaptive(&mut integrand, 0.0, t_max, quad_tol, 20_000);
        let scale = 1.0 / (self.alpha * std::f64::consts::PI * x);
        let tail = (-rate.max(1e-6) * t_max).exp() * (1.0 + v.abs());
        let err = (quad_err + tail) * scale + 1e-16 * v.abs() * scale;
        let value = v * scale;
        if err > tol {
            return Err(Error::Accuracy {
                achieved: err,
                requested: tol,
            });
        }
        Ok(EvaluationResult::new(value, err, Method::Quadrature))
    }

    /// Expansion over the first `n_terms` net-simple poles on the requested
    /// side. Refuses on any pole of net order two or more among them.
    pub fn residue_series(
        &self,
        side: ExpansionSide,
        n_terms: usize,
    ) -> Result<PowerSeriesExpansion> {
        let right = side == ExpansionSide::AtZero;
        let poles = self.poles(n_terms, right);
        let mut terms = Vec::with_capacity(poles.len());
        for p in &poles {
            if p.order >= 2 {
                return Err(Error::Collision {
                    location: p.location,
                });
            }
            terms.push(self.residue_term(p.location, right)?);
        }
        let nature = estimate_nature(&terms);
        let radius_hint = match nature {
            SeriesNature::Convergent => f64::INFINITY,
            SeriesNature::Asymptotic => f64::NAN,
        };
        Ok(PowerSeriesExpansion {
            origin: side,
            terms,
            nature,
            radius_hint,
        })
    }

    /// Residue of kernel * x^s / (alpha x) at a net-simple pole, as the
    /// coefficient of x^{s0 - 1}.
    fn residue_term(&self, s0: f64, right: bool) -> Result<SeriesTerm> {
        let mut log_abs = -self.alpha.ln();
        // closing the contour to the right walks the poles clockwise
        let mut sign = if right { -1.0 } else { 1.0 };
        let mut singular_net = 0i32;

        for &(a, b) in &self.numerator {
            let arg = a * s0 + b;
            match ladder_index(arg) {
                Some(n) => {
                    // Gamma(a s + b) ~ (-1)^n / (n! a (s - s0))
                    singular_net += 1;
                    log_abs -= log_gamma(n as f64 + 1.0)?.log_abs + a.abs().ln();
                    sign *= if n % 2 == 0 { 1.0 } else { -1.0 } * a.signum();
                }
                None => {
                    let lg = log_gamma(arg)?;
                    log_abs += lg.log_abs;
                    sign *= lg.sign;
                }
            }
        }
        for &(a, b) in &self.denominator {
            let arg = a * s0 + b;
            match ladder_index(arg) {
                Some(n) => {
                    // 1 / Gamma(a s + b) ~ (-1)^n n! a (s - s0)
                    singular_net -= 1;
                    log_abs += log_gamma(n as f64 + 1.0)?.log_abs + a.abs().ln();
                    sign *= if n % 2 == 0 { 1.0 } else { -1.0 } * a.signum();
                }
                None => {
                    let lg = log_gamma(arg)?;
                    log_abs -= lg.log_abs;
                    sign *= lg.sign;
                }
            }
        }
        if singular_net != 1 {
            return Err(Error::Collision { location: s0 });
        }
        Ok(SeriesTerm {
            exponent: s0 - 1.0,
            log_abs_coeff: log_abs,
            sign,
        })
    }
}

/// Remove exactly matching (a, b) pairs shared by numerator and denominator.
fn cancel_exact_pairs(num: &mut Vec<(f64, f64)>, den: &mut Vec<(f64, f64)>) {
    let mut i = 0;
    while i < num.len() {
        if let Some(j) = den.iter().position(|&d| d == num[i]) {
            num.remove(i);
            den.remove(j);
        } else {
            i += 1;
        }
    }
}

/// If `arg` sits (within tolerance) on the nonpositive-integer ladder, the
/// index n with arg ~ -n.
fn ladder_index(arg: f64) -> Option<u64> {
    let n = (-arg).round();
    if n >= 0.0 && (arg + n).abs() < 1e-9 * arg.abs().max(1.0) {
        Some(n as u64)
    } else {
        None
    }
}

/// Poles of Gamma(a s + b) at a s + b = -n, sorted outward from the strip.
/// `weight` is +1 for numerator factors, -1 for denominator factors.
fn collect_factor_poles(a: f64, b: f64, right: bool, count: usize, weight: i32, out: &mut Vec<(f64, i32)>) {
    if (right && a >= 0.0) || (!right && a <= 0.0) || a == 0.0 {
        return;
    }
    for n in 0..count {
        out.push((-(n as f64 + b) / a, weight));
    }
}

/// Crude convergence classification from the trend of log-coefficient per
/// unit exponent over the outermost terms.
fn estimate_nature(terms: &[SeriesTerm]) -> SeriesNature {
    let finite: Vec<&SeriesTerm> = terms
        .iter()
        .filter(|t| t.log_abs_coeff.is_finite())
        .collect();
    if finite.len() < 4 {
        return SeriesNature::Convergent;
    }
    let tail = &finite[finite.len() - 3..];
    let slope = |p: &SeriesTerm, q: &SeriesTerm| -> f64 {
        (q.log_abs_coeff - p.log_abs_coeff) / (q.exponent - p.exponent)
    };
    let s1 = slope(tail[0], tail[1]);
    let s2 = slope(tail[1], tail[2]);
    // growing log-coefficients per unit exponent (in the outward direction)
    // mean a divergent, asymptotic expansion
    let outward = if tail[1].exponent > tail[0].exponent {
        (s1, s2)
    } else {
        (-s1, -s2)
    };
    if outward.1 > outward.0.max(0.0) {
        SeriesNature::Asymptotic
    } else {
        SeriesNature::Convergent
    }
}

impl PowerSeriesExpansion {
    pub fn origin(&self) -> ExpansionSide {
        self.origin
    }

    pub fn terms(&self) -> &[SeriesTerm] {
        &self.terms
    }

    pub fn nature(&self) -> SeriesNature {
        self.nature
    }

    /// Empirical validity bound: |x| below it (at-zero) or above it
    /// (at-infinity) where the truncated expansion has been observed to meet
    /// its own error estimate.
    pub fn radius_hint(&self) -> f64 {
        self.radius_hint
    }

    pub fn set_radius_hint(&mut self, r: f64) {
        self.radius_hint = r;
    }

    /// Compensated summation of the truncated expansion at x > 0. Convergent
    /// expansions use every stored term and estimate the omitted tail by
    /// ratio extrapolation; asymptotic expansions stop at the smallest term.
    pub fn evaluate(&self, x: f64) -> EvaluationResult {
        let method = match self.nature {
            SeriesNature::Convergent => Method::TaylorSeries,
            SeriesNature::Asymptotic => Method::AsymptoticSeries,
        };
        if self.terms.is_empty() || x <= 0.0 {
            return EvaluationResult::new(0.0, f64::INFINITY, method);
        }
        let lx = x.ln();
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        let mut abs_sum = 0.0f64;
        let mut last_mag = f64::INFINITY;
        let mut prev_mag = f64::INFINITY;
        let mut smallest = f64::INFINITY;
        let mut omitted = f64::INFINITY;
        let mut tail_sum = 0.0f64;
        let mut truncated = false;
        for t in &self.terms {
            let mag = (t.log_abs_coeff + t.exponent * lx).exp();
            if mag == 0.0 {
                continue;
            }
            if truncated {
                // terms need not alternate, so the truncation error is the
                // omitted plateau around the smallest term, not just its head
                if mag <= 10.0 * omitted {
                    tail_sum += mag;
                    continue;
                }
                break;
            }
            if self.nature == SeriesNature::Asymptotic && mag > smallest {
                omitted = mag;
                tail_sum = mag;
                truncated = true;
                continue;
            }
            let term = t.sign * mag;
            let s = sum + term;
            comp += if sum.abs() >= term.abs() {
                (sum - s) + term
            } else {
                (term - s) + sum
            };
            sum = s;
            abs_sum += mag;
            smallest = smallest.min(mag);
            prev_mag = last_mag;
            last_mag = mag;
        }
        let value = sum + comp;
        let rounding = f64::EPSILON * abs_sum;
        let err = match self.nature {
            SeriesNature::Convergent => {
                // extrapolate the omitted tail from the last observed ratio
                let ratio = if prev_mag.is_finite() && prev_mag > 0.0 {
                    (last_mag / prev_mag).min(0.9)
                } else {
                    0.5
                };
                let tail = if last_mag.is_finite() {
                    last_mag * ratio / (1.0 - ratio)
                } else {
                    f64::INFINITY
                };
                rounding + tail
            }
            // first omitted term is the honest truncation bound; fall back to
            // the smallest kept term when the table ran out before growth
            SeriesNature::Asymptotic => rounding + if truncated { tail_sum } else { smallest },
        };
        EvaluationResult::new(value, err, method)
    }

    /// As [`evaluate`], demanding the error estimate meets `tol`.
    pub fn evaluate_to(&self, x: f64, tol: f64) -> Result<EvaluationResult> {
        let r = self.evaluate(x);
        if r.abs_error_estimate > tol {
            return Err(Error::Accuracy {
                achieved: r.abs_error_estimate,
                requested: tol,
            });
        }
        Ok(r)
    }
}
