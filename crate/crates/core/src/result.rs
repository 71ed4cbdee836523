use num_complex::Complex64;
use std::fmt;

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    TaylorSeries,
    AsymptoticSeries,
    ClosedForm,
    Quadrature,
    Subordination,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::TaylorSeries => "taylor-series",
            Method::AsymptoticSeries => "asymptotic-series",
            Method::ClosedForm => "closed-form",
            Method::Quadrature => "quadrature",
            Method::Subordination => "subordination",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A numeric value together with an absolute error estimate and the method
/// that produced it.
#[derive(Debug, Clone, Copy)]
pub struct EvaluationResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub method: Method,
    /// Set when the parameters fall outside the ranges for which the Green
    /// function is known to be a probability density (beta > alpha with
    /// beta > 1).
    pub non_probabilistic: bool,
    /// Set when the method could not certify its usual accuracy (for example
    /// oscillatory Mittag-Leffler factors for beta > 1).
    pub reduced_confidence: bool,
}

impl EvaluationResult {
    pub fn new(value: f64, abs_error_estimate: f64, method: Method) -> Self {
        EvaluationResult {
            value,
            abs_error_estimate,
            method,
            non_probabilistic: false,
            reduced_confidence: false,
        }
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.value *= scale;
        self.abs_error_estimate *= scale.abs();
        self
    }

    pub fn flag_non_probabilistic(mut self) -> Self {
        self.non_probabilistic = true;
        self
    }

    pub fn flag_reduced_confidence(mut self) -> Self {
        self.reduced_confidence = true;
        self
    }
}

/// Complex-valued counterpart of [`EvaluationResult`].
#[derive(Debug, Clone, Copy)]
pub struct ComplexEvaluation {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub method: Method,
}

impl ComplexEvaluation {
    pub fn new(value: Complex64, abs_error_estimate: f64, method: Method) -> Self {
        ComplexEvaluation {
            value,
            abs_error_estimate,
            method,
        }
    }
}
