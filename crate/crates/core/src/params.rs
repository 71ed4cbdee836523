//! Parameter validation, regime classification and the Fourier symbol of the
//! Riesz-Feller operator.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

/// Validated parameter triplet (alpha, beta, theta) of the space-time
/// fractional diffusion equation, with the derived skewness index
/// rho = (alpha - theta) / (2 alpha).
///
/// Admissible ranges: 0 < alpha <= 2, 0 < beta <= 2,
/// |theta| <= min(alpha, 2 - alpha). Boundary values are accepted.
/// Validation happens once here; downstream code assumes a valid triplet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalTriplet {
    alpha: f64,
    beta: f64,
    theta: f64,
    rho: f64,
}

/// Diffusion regime of a triplet. Wave and StandardGaussian take precedence,
/// then Neutral, SpaceFractional and TimeFractional; everything else is
/// GeneralSpaceTime. The classification is exhaustive and mutually exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffusionClass {
    /// alpha = 2, beta = 1: the heat kernel.
    StandardGaussian,
    /// beta = 1, alpha < 2: strictly stable densities.
    SpaceFractional,
    /// alpha = 2, beta < 1: Wright-type densities.
    TimeFractional,
    /// alpha = beta < 2: elementary closed form.
    Neutral,
    /// alpha = beta = 2: pair of delta distributions, never evaluated.
    Wave,
    /// every other admissible combination.
    GeneralSpaceTime,
}

impl FractionalTriplet {
    pub fn new(alpha: f64, beta: f64, theta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() || !theta.is_finite() {
            return Err(Error::Domain("parameters must be finite".into()));
        }
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::Domain(format!(
                "alpha = {alpha} violates 0 < alpha <= 2"
            )));
        }
        if !(beta > 0.0 && beta <= 2.0) {
            return Err(Error::Domain(format!(
                "beta = {beta} violates 0 < beta <= 2"
            )));
        }
        let theta_max = alpha.min(2.0 - alpha);
        if theta.abs() > theta_max {
            return Err(Error::Domain(format!(
                "theta = {theta} violates |theta| <= min(alpha, 2 - alpha) = {theta_max}"
            )));
        }
        Ok(FractionalTriplet {
            alpha,
            beta,
            theta,
            rho: (alpha - theta) / (2.0 * alpha),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Skewness index rho = (alpha - theta) / (2 alpha); the mass of the
    /// reduced Green function on the positive half-line.
    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// The triplet with mirrored skewness, used by the symmetry relation
    /// K^theta(-x) = K^{-theta}(x).
    pub fn mirrored(&self) -> Self {
        FractionalTriplet {
            alpha: self.alpha,
            beta: self.beta,
            theta: -self.theta,
            rho: (self.alpha + self.theta) / (2.0 * self.alpha),
        }
    }

    /// True when the probability interpretation of the Green function is
    /// established: {0 < beta <= 1} or {1 < beta <= alpha <= 2}.
    pub fn probabilistic(&self) -> bool {
        self.beta <= 1.0 || self.beta <= self.alpha
    }

    pub fn classify(&self) -> DiffusionClass {
        let (a, b) = (self.alpha, self.beta);
        if a == 2.0 && b == 2.0 {
            DiffusionClass::Wave
        } else if a == 2.0 && b == 1.0 {
            DiffusionClass::StandardGaussian
        } else if a == b {
            DiffusionClass::Neutral
        } else if b == 1.0 {
            DiffusionClass::SpaceFractional
        } else if a == 2.0 && b < 1.0 {
            DiffusionClass::TimeFractional
        } else {
            DiffusionClass::GeneralSpaceTime
        }
    }

    /// Fourier symbol of the Riesz-Feller operator:
    /// psi(kappa) = |kappa|^alpha exp(i sign(kappa) theta pi / 2).
    /// Returns exactly 0 for kappa = 0.
    pub fn symbol_psi(&self, kappa: f64) -> Complex64 {
        if kappa == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let modulus = kappa.abs().powf(self.alpha);
        let phase = kappa.signum() * self.theta * FRAC_PI_2;
        Complex64::from_polar(modulus, phase)
    }
}
