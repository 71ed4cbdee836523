//! Adaptive Gauss-Kronrod quadrature used by the oracles, the subordination
//! integral and the verification suites.

use std::collections::BinaryHeap;

// 15-point Kronrod nodes on [-1, 1] (nonnegative half) and weights, with the
// embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss-Kronrod panel. Returns (kronrod, abs_error_estimate, resabs).
pub fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut res_kronrod = f_center * WGK[7];
    let mut res_gauss = f_center * WG[3];
    let mut resabs = f_center.abs() * WGK[7];

    let mut fv = [0.0f64; 15];
    fv[7] = f_center;
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        res_kronrod += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = res_kronrod * 0.5;
    let mut resasc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let result = res_kronrod * half;
    resabs *= half.abs();
    resasc *= half.abs();

    let mut err = ((res_kronrod - res_gauss) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let min_err = 50.0 * f64::EPSILON * resabs;
    if min_err > err {
        err = min_err;
    }
    (result, err, resabs)
}

#[derive(PartialEq)]
struct Interval {
    err: f64,
    a: f64,
    b: f64,
    value: f64,
}

impl Eq for Interval {}
impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Adaptive quadrature on a finite interval. Bisects the worst panel until
/// the summed error estimate drops below `tol` (absolute) or the panel budget
/// is exhausted; returns (value, error_estimate) either way.
pub fn adaptive<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    tol: f64,
    max_panels: usize,
) -> (f64, f64) {
    let (v, e, _) = gk15(f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Interval {
        err: e,
        a,
        b,
        value: v,
    });
    let mut total_err = e;
    let mut total_val = v;
    while total_err > tol && heap.len() < max_panels {
        let worst = heap.pop().expect("heap nonempty");
        if worst.b - worst.a < 1e-15 * (1.0 + worst.a.abs()) {
            // panel too narrow to split further
            heap.push(Interval {
                err: 0.0,
                ..worst
            });
            total_err -= worst.err;
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1, _) = gk15(f, worst.a, mid);
        let (v2, e2, _) = gk15(f, mid, worst.b);
        total_val += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Interval {
            err: e1,
            a: worst.a,
            b: mid,
            value: v1,
        });
        heap.push(Interval {
            err: e2,
            a: mid,
            b: worst.b,
            value: v2,
        });
    }
    (total_val, total_err.max(0.0))
}

/// Wynn epsilon acceleration of a sequence of partial sums of an (eventually)
/// alternating series of panel integrals. Returns the accelerated limit and a
/// crude error estimate from the final diagonal step.
pub fn euler_accelerate(partial_sums: &[f64]) -> (f64, f64) {
    assert!(!partial_sums.is_empty());
    let n = partial_sums.len();
    let mut eps_prev: Vec<f64> = vec![0.0; n + 1]; // epsilon_{-1}
    let mut eps_curr: Vec<f64> = partial_sums.to_vec(); // epsilon_0
    let mut best = *eps_curr.last().expect("nonempty");
    let mut best_step = f64::INFINITY;
    for _ in 0..n - 1 {
        let m = eps_curr.len() - 1;
        let mut next = Vec::with_capacity(m);
        for j in 0..m {
            let delta = eps_curr[j + 1] - eps_curr[j];
            if delta.abs() < 1e-300 {
                next.push(eps_prev[j + 1]);
            } else {
                next.push(eps_prev[j + 1] + 1.0 / delta);
            }
        }
        eps_prev = std::mem::replace(&mut eps_curr, next);
        // even columns of the epsilon table are the extrapolants
        if eps_curr.len() % 2 == n % 2 {
            let cand = *eps_curr.last().expect("nonempty");
            let step = (cand - best).abs();
            if step < best_step && cand.is_finite() {
                best_step = step;
                best = cand;
            }
        }
        if eps_curr.len() <= 2 {
            break;
        }
    }
    (best, best_step)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gk15_polynomial_exact() {
        // degree <= 22 is integrated exactly by the Kronrod rule
        let (v, e, _) = gk15(&mut |x: f64| x * x, 0.0, 3.0);
        assert!((v - 9.0).abs() < 1e-12, "v={v} e={e}");
    }

    #[test]
    fn gk15_smooth_near_machine_precision() {
        let (v, _, _) = gk15(&mut |x: f64| x.exp(), 0.0, 1.0);
        let exact = std::f64::consts::E - 1.0;
        assert!((v - exact).abs() < 1e-15, "v={v} exact={exact}");
    }

    #[test]
    fn adaptive_handles_peaks() {
        // integral of 1/(1e-4 + x^2) over [-1,1]
        let s = 1e-2f64;
        let exact = 2.0 * (1.0f64 / s).atan() / s;
        let (v, e) = adaptive(&mut |x: f64| 1.0 / (s * s + x * x), -1.0, 1.0, 1e-10, 2000);
        assert!((v - exact).abs() < 1e-7 * exact, "v={v} exact={exact} e={e}");
    }

    #[test]
    fn euler_accelerates_log2() {
        // 1 - 1/2 + 1/3 - ... = ln 2
        let mut s = 0.0;
        let sums: Vec<f64> = (1..=20)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        let (v, _) = euler_accelerate(&sums);
        assert!((v - std::f64::consts::LN_2).abs() < 1e-10);
    }
}
