//! Verification suites: structured checks of the analytic invariants
//! (normalization, symmetry, subordination, moments, tail law, oracle
//! agreement), shared by the CLI verify command and the acceptance tests.

use crate::green::{moment, reduced_green, subordination_integral};
use crate::oracles::{fourier_oracle, mellin_oracle, quadrature_moment};
use crate::params::FractionalTriplet;
use crate::specials::log_gamma::recip_gamma;
use crate::specials::wright::wright_m;

/// One verified invariant: measured deviation against its tolerance.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn measure(name: String, deviation: f64, tolerance: f64) -> Self {
        CheckResult {
            name,
            passed: deviation.is_finite() && deviation <= tolerance,
            deviation,
            tolerance,
        }
    }

    fn failure(name: String, tolerance: f64, why: &str) -> Self {
        CheckResult {
            name: format!("{name} [{why}]"),
            deviation: f64::INFINITY,
            tolerance,
            passed: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Normalization,
    Symmetry,
    Subordination,
    Moments,
    Tails,
    Oracles,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "normalization" => Suite::Normalization,
            "symmetry" => Suite::Symmetry,
            "subordination" => Suite::Subordination,
            "moments" => Suite::Moments,
            "tails" => Suite::Tails,
            "oracles" => Suite::Oracles,
            "all" => Suite::All,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Normalization => "normalization",
            Suite::Symmetry => "symmetry",
            Suite::Subordination => "subordination",
            Suite::Moments => "moments",
            Suite::Tails => "tails",
            Suite::Oracles => "oracles",
            Suite::All => "all",
        }
    }
}

pub fn run_suite(suite: Suite) -> Vec<CheckResult> {
    match suite {
        Suite::Normalization => normalization_checks(),
        Suite::Symmetry => symmetry_checks(),
        Suite::Subordination => subordination_checks(),
        Suite::Moments => moment_checks(),
        Suite::Tails => tail_checks(),
        Suite::Oracles => oracle_checks(),
        Suite::All => {
            let mut all = Vec::new();
            for s in [
                Suite::Normalization,
                Suite::Symmetry,
                Suite::Subordination,
                Suite::Moments,
                Suite::Tails,
                Suite::Oracles,
            ] {
                all.extend(run_suite(s));
            }
            all
        }
    }
}

/// Sampling grid shared by the normalization checks: every combination of
/// alpha, beta and an admissible skewness (0 and half the extremal value).
pub fn normalization_grid() -> Vec<FractionalTriplet> {
    let mut grid = Vec::new();
    for alpha in [0.5f64, 1.0, 1.5, 2.0] {
        let top = alpha.min(2.0 - alpha);
        let mut thetas = vec![0.0];
        if top > 0.0 {
            thetas.push(top / 2.0);
            thetas.push(-top / 2.0);
        }
        for beta in [0.5, 0.8, 1.0] {
            for &theta in &thetas {
                grid.push(FractionalTriplet::new(alpha, beta, theta).expect("grid triplet"));
            }
        }
    }
    grid
}

fn normalization_checks() -> Vec<CheckResult> {
    let tol = 1e-6;
    let mut out = Vec::new();
    for t in normalization_grid() {
        let label = format!(
            "normalization({}, {}, {})",
            t.alpha(),
            t.beta(),
            t.theta()
        );
        let pos = quadrature_moment(&t, 0.0, 1e-7);
        let neg = quadrature_moment(&t.mirrored(), 0.0, 1e-7);
        match (pos, neg) {
            (Ok(p), Ok(n)) => {
                out.push(CheckResult::measure(
                    format!("{label}: total mass"),
                    (p + n - 1.0).abs(),
                    tol,
                ));
                out.push(CheckResult::measure(
                    format!("{label}: half-line mass vs rho"),
                    (p - t.rho()).abs(),
                    tol,
                ));
            }
            (Err(e), _) | (_, Err(e)) => {
                out.push(CheckResult::failure(label, tol, &e.to_string()));
            }
        }
    }
    out
}

/// Small deterministic generator so the random checks are reproducible
/// without an RNG dependency in the library crate.
struct SplitMix(u64);

impl SplitMix {
    fn next_unit(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z = z ^ (z >> 31);
        (z >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Reproducible stream of admissible triplets away from the degenerate edges.
pub fn sample_triplets(seed: u64, count: usize) -> Vec<FractionalTriplet> {
    let mut rng = SplitMix(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let alpha = 0.3 + 1.7 * rng.next_unit();
        let beta = 0.3 + 1.45 * rng.next_unit();
        let top: f64 = alpha.min(2.0 - alpha);
        let theta = (2.0 * rng.next_unit() - 1.0) * 0.8 * top;
        if beta > alpha && beta > 1.0 {
            continue; // keep to the probability-density ranges
        }
        if let Ok(t) = FractionalTriplet::new(alpha, beta, theta) {
            out.push(t);
        }
    }
    out
}

fn symmetry_checks() -> Vec<CheckResult> {
    let tol = 1e-12;
    let mut rng = SplitMix(0x5ca1ab1e);
    let mut out = Vec::new();
    for t in sample_triplets(0xfeedbeef, 12) {
        let x = 0.05 + 5.0 * rng.next_unit();
        let name = format!(
            "symmetry({:.3}, {:.3}, {:.3}) at x = {:.3}",
            t.alpha(),
            t.beta(),
            t.theta(),
            x
        );
        let lhs = reduced_green(&t, -x, 1e-8);
        let rhs = reduced_green(&t.mirrored(), x, 1e-8);
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                out.push(CheckResult::measure(name, (l.value - r.value).abs(), tol))
            }
            (Err(e), _) | (_, Err(e)) => out.push(CheckResult::failure(name, tol, &e.to_string())),
        }
    }
    out
}

fn subordination_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    // directing-density branch against the closed Wright form
    for beta in [0.5, 0.8] {
        let t = FractionalTriplet::new(2.0, beta, 0.0).expect("triplet");
        for x in [0.25, 1.0, 3.0] {
            let name = format!("subordination(2, {beta}, 0) vs Wright at x = {x}");
            match (
                subordination_integral(&t, x, 1e-8),
                wright_m(beta / 2.0, x),
            ) {
                (Ok(s), Ok(w)) => out.push(CheckResult::measure(
                    name,
                    (s.value - 0.5 * w.value).abs(),
                    1e-6,
                )),
                (Err(e), _) | (_, Err(e)) => {
                    out.push(CheckResult::failure(name, 1e-6, &e.to_string()))
                }
            }
        }
    }
    // general branch against the independent contour quadrature
    for (a, b, th) in [(1.5, 1.2, 0.0), (1.8, 1.5, 0.1)] {
        let t = FractionalTriplet::new(a, b, th).expect("triplet");
        let gamma = 0.5 * a.min(1.0);
        for x in [0.5, 1.0, 2.0] {
            let name = format!("subordination({a}, {b}, {th}) vs contour at x = {x}");
            match (
                subordination_integral(&t, x, 1e-8),
                mellin_oracle(&t, x, gamma, 1e-9),
            ) {
                (Ok(s), Ok(c)) => {
                    out.push(CheckResult::measure(name, (s.value - c.value).abs(), 1e-5))
                }
                (Err(e), _) | (_, Err(e)) => {
                    out.push(CheckResult::failure(name, 1e-5, &e.to_string()))
                }
            }
        }
    }
    out
}

fn moment_checks() -> Vec<CheckResult> {
    let tol = 1e-5;
    let mut out = Vec::new();
    let mut check = |t: &FractionalTriplet, delta: f64| {
        let name = format!(
            "moment({}, {}, {}) at delta = {delta}",
            t.alpha(),
            t.beta(),
            t.theta()
        );
        match (moment(t, delta), quadrature_moment(t, delta, 1e-7)) {
            (Ok(m), Ok(q)) => out.push(CheckResult::measure(name, (m - q).abs(), tol)),
            (Err(e), _) | (_, Err(e)) => out.push(CheckResult::failure(name, tol, &e.to_string())),
        }
    };
    let gauss = FractionalTriplet::new(2.0, 1.0, 0.0).expect("triplet");
    for delta in [1.0, 2.0, 3.0] {
        check(&gauss, delta);
    }
    let tf = FractionalTriplet::new(2.0, 0.5, 0.0).expect("triplet");
    check(&tf, 2.0);
    let stable = FractionalTriplet::new(1.5, 1.0, 0.0).expect("triplet");
    for delta in [0.25, 0.9] {
        check(&stable, delta);
    }
    for t in sample_triplets(0xabcdef, 4) {
        check(&t, 0.0);
    }
    // pinned closed-form anchor
    let m = moment(&tf, 2.0).expect("moment in strip");
    out.push(CheckResult::measure(
        "moment(2, 0.5, 0) at delta = 2 vs 1/Gamma(3/2)".into(),
        (m - recip_gamma(1.5)).abs(),
        1e-12,
    ));
    out
}

fn tail_checks() -> Vec<CheckResult> {
    let tol = 0.05;
    let mut out = Vec::new();
    for alpha in [0.8, 1.2, 1.6] {
        for beta in [0.7, 1.0] {
            let t = FractionalTriplet::new(alpha, beta, 0.0).expect("triplet");
            let name = format!("tail slope({alpha}, {beta}, 0) over [10, 100]");
            match tail_slope(&t) {
                Ok(slope) => {
                    out.push(CheckResult::measure(name, (slope + alpha + 1.0).abs(), tol))
                }
                Err(e) => out.push(CheckResult::failure(name, tol, &e)),
            }
        }
    }
    out
}

/// Asymptotic log-log slope of K on a log-spaced grid in [10, 100]. The tail
/// is a power law plus an O(x^{-alpha}) relative correction that visibly
/// bends the raw fit inside the window, so the fit model is
/// log K = A + s log x + B x^{-alpha} and s is reported.
pub fn tail_slope(t: &FractionalTriplet) -> std::result::Result<f64, String> {
    let n = 10;
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let x = 10.0 * 10.0f64.powf(i as f64 / (n - 1) as f64);
        let v = reduced_green(t, x, 1e-10).map_err(|e| e.to_string())?.value;
        if !(v > 0.0) {
            return Err(format!("nonpositive value {v} at x = {x}"));
        }
        rows.push(([1.0, x.ln(), x.powf(-t.alpha())], v.ln()));
    }
    // normal equations for the three-parameter least squares
    let mut m = [[0.0f64; 3]; 3];
    let mut rhs = [0.0f64; 3];
    for (r, y) in &rows {
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += r[i] * r[j];
            }
            rhs[i] += r[i] * y;
        }
    }
    let det3 = |a: &[[f64; 3]; 3]| -> f64 {
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    };
    let d = det3(&m);
    if d.abs() < 1e-12 {
        return Err("degenerate tail fit".into());
    }
    let mut ms = m;
    for row in ms.iter_mut().enumerate() {
        row.1[1] = rhs[row.0];
    }
    Ok(det3(&ms) / d)
}

fn oracle_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    // Fourier inversion vs Mellin contour
    for (a, b, th, x) in [
        (1.5, 0.8, 0.2, 0.5),
        (1.5, 0.8, 0.2, 2.0),
        (2.0, 0.6, 0.0, 1.0),
        (0.8, 0.5, 0.1, 1.5),
    ] {
        let t = FractionalTriplet::new(a, b, th).expect("triplet");
        let gamma = 0.5 * a.min(1.0);
        let name = format!("fourier vs mellin ({a}, {b}, {th}) at x = {x}");
        match (
            fourier_oracle(&t, x, 1e-9),
            mellin_oracle(&t, x, gamma, 1e-10),
        ) {
            (Ok(f), Ok(m)) => out.push(CheckResult::measure(
                name,
                (f.value - m.value).abs(),
                1e-6,
            )),
            (Err(e), _) | (_, Err(e)) => out.push(CheckResult::failure(name, 1e-6, &e.to_string())),
        }
    }
    // contour invariance under the choice of line
    for (a, b, th) in [
        (2.0, 1.0, 0.0),
        (1.5, 0.8, 0.2),
        (0.7, 0.5, -0.1),
        (1.8, 1.5, 0.1),
        (1.2, 0.9, 0.0),
    ] {
        let t = FractionalTriplet::new(a, b, th).expect("triplet");
        let top = a.min(1.0);
        let name = format!("contour invariance ({a}, {b}, {th})");
        match (
            mellin_oracle(&t, 1.3, 0.3 * top, 1e-10),
            mellin_oracle(&t, 1.3, 0.7 * top, 1e-10),
        ) {
            (Ok(r1), Ok(r2)) => out.push(CheckResult::measure(
                name,
                (r1.value - r2.value).abs(),
                1e-8,
            )),
            (Err(e), _) | (_, Err(e)) => out.push(CheckResult::failure(name, 1e-8, &e.to_string())),
        }
    }
    out
}
