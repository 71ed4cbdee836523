//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (run with --nocapture to see them alongside the
//! harness output).

use fracgreen_core::verify::{normalization_grid, sample_triplets, tail_slope};
use fracgreen_core::{
    fourier_oracle, green, mellin_oracle, moment, quadrature_moment, reduced_green,
    subordination_integral, ExpansionSide, FractionalTriplet, GammaFraction,
};
use std::f64::consts::PI;

fn report(criterion: &str, worst: f64, tol: f64) {
    let passed = worst.is_finite() && worst <= tol;
    println!(
        "{} {criterion}: worst deviation {worst:.3e} vs tolerance {tol:.1e}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "{criterion}: {worst:.3e} > {tol:.1e}");
}

#[test]
fn criterion_01_gaussian_reproduction() {
    let t = FractionalTriplet::new(2.0, 1.0, 0.0).unwrap();
    let mut worst = 0.0f64;
    for time in [1.0f64, 4.0] {
        for x in [0.0, 0.5, 1.0, 2.0, 4.0] {
            let expected = (-x * x / (4.0 * time)).exp() / (2.0 * (PI * time).sqrt());
            let g = green(&t, x, time, 1e-13).unwrap().value;
            worst = worst.max((g - expected).abs());
        }
    }
    report("gaussian closed form", worst, 1e-12);
    let mut worst = 0.0f64;
    for time in [1.0f64, 4.0] {
        for x in [0.0, 0.5, 1.0, 2.0, 4.0] {
            let expected = (-x * x / (4.0 * time)).exp() / (2.0 * (PI * time).sqrt());
            let scale = time.powf(-0.5);
            let f = fourier_oracle(&t, x * scale, 1e-10).unwrap().value * scale;
            worst = worst.max((f - expected).abs());
        }
    }
    report("gaussian fourier oracle", worst, 1e-8);
}

#[test]
fn criterion_02_cauchy_reproduction() {
    let t = FractionalTriplet::new(1.0, 1.0, 0.0).unwrap();
    let mut worst = 0.0f64;
    for i in 1..=100 {
        let x = 0.1 * i as f64;
        let expected = 1.0 / (PI * (1.0 + x * x));
        let v = reduced_green(&t, x, 1e-14).unwrap().value;
        worst = worst.max((v - expected).abs());
    }
    report("cauchy closed form", worst, 1e-14);
    let mut worst = 0.0f64;
    for x in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let expected = 1.0 / (PI * (1.0 + x * x));
        let f = fourier_oracle(&t, x, 1e-10).unwrap().value;
        worst = worst.max((f - expected).abs());
    }
    report("cauchy fourier oracle", worst, 1e-8);
}

#[test]
fn criterion_03_normalization_and_half_line_mass() {
    let mut worst = 0.0f64;
    for t in normalization_grid() {
        let pos = quadrature_moment(&t, 0.0, 1e-7).unwrap();
        let neg = quadrature_moment(&t.mirrored(), 0.0, 1e-7).unwrap();
        worst = worst.max((pos + neg - 1.0).abs());
        worst = worst.max((pos - t.rho()).abs());
    }
    report("normalization and half-line mass", worst, 1e-6);
}

#[test]
fn criterion_04_symmetry_relation() {
    let mut worst = 0.0f64;
    for (i, t) in sample_triplets(0x51de, 12).iter().enumerate() {
        let x = 0.1 + 0.4 * i as f64;
        let lhs = reduced_green(t, -x, 1e-13).unwrap().value;
        let rhs = reduced_green(&t.mirrored(), x, 1e-13).unwrap().value;
        worst = worst.max((lhs - rhs).abs());
    }
    report("skew mirror symmetry", worst, 1e-12);
}

#[test]
fn criterion_05_subordination_identity() {
    let mut worst = 0.0f64;
    for beta in [0.5, 0.8] {
        let t = FractionalTriplet::new(2.0, beta, 0.0).unwrap();
        for x in [0.25, 1.0, 3.0] {
            let s = subordination_integral(&t, x, 1e-8).unwrap().value;
            let w = fracgreen_core::specials::wright::wright_m(beta / 2.0, x)
                .unwrap()
                .value;
            worst = worst.max((s - 0.5 * w).abs());
        }
    }
    report("subordination vs Wright form", worst, 1e-6);
    let mut worst = 0.0f64;
    for (a, b, th) in [(1.5, 1.2, 0.0), (1.8, 1.5, 0.1)] {
        let t = FractionalTriplet::new(a, b, th).unwrap();
        for x in [0.25, 1.0, 3.0] {
            let s = subordination_integral(&t, x, 1e-8).unwrap().value;
            let m = mellin_oracle(&t, x, 0.5 * a.min(1.0), 1e-9).unwrap().value;
            worst = worst.max((s - m).abs());
        }
    }
    report("subordination vs contour", worst, 1e-5);
}

#[test]
fn criterion_06_moments() {
    let mut worst = 0.0f64;
    let check = |t: &FractionalTriplet, delta: f64| {
        let m = moment(t, delta).unwrap();
        let q = quadrature_moment(t, delta, 1e-7).unwrap();
        (m - q).abs()
    };
    let gauss = FractionalTriplet::new(2.0, 1.0, 0.0).unwrap();
    for delta in [1.0, 2.0, 3.0] {
        worst = worst.max(check(&gauss, delta));
    }
    let tf = FractionalTriplet::new(2.0, 0.5, 0.0).unwrap();
    worst = worst.max(check(&tf, 2.0));
    // pinned second moment 1/Gamma(3/2) = 2/sqrt(pi)
    worst = worst.max((moment(&tf, 2.0).unwrap() - std::f64::consts::FRAC_2_SQRT_PI).abs());
    let stable = FractionalTriplet::new(1.5, 1.0, 0.0).unwrap();
    for delta in [0.25, 0.9] {
        worst = worst.max(check(&stable, delta));
    }
    for t in sample_triplets(0xabcdef, 4) {
        worst = worst.max((quadrature_moment(&t, 0.0, 1e-7).unwrap() - t.rho()).abs());
    }
    report("closed-form vs quadrature moments", worst, 1e-5);
}

#[test]
fn criterion_07_series_vs_oracle() {
    let mut worst = 0.0f64;
    let mut used = 0;
    for t in sample_triplets(0x5e41e5, 60) {
        if used == 10 {
            break;
        }
        if (t.alpha() - t.beta()).abs() < 0.05 {
            continue;
        }
        let f = GammaFraction::for_green(&t).unwrap();
        let near = f.residue_series(ExpansionSide::AtZero, 90);
        let far = f.residue_series(ExpansionSide::AtInfinity, 60);
        let (near, far) = match (near, far) {
            (Ok(n), Ok(fr)) => (n, fr),
            _ => continue, // pole collision: excluded by the criterion
        };
        let gamma = 0.5 * (f.strip().0 + f.strip().1);
        let mut points = 0;
        for (series, candidates) in [
            (&near, &[0.05, 0.1, 0.2, 0.35, 0.5, 0.8, 1.2][..]),
            (&far, &[3.0, 5.0, 8.0, 12.0, 20.0, 35.0, 60.0][..]),
        ] {
            let mut taken = 0;
            for &x in candidates {
                if taken == 5 {
                    break;
                }
                let s = series.evaluate(x);
                if !(s.abs_error_estimate <= 1e-7 * (1.0 + s.value.abs())) {
                    continue; // outside the expansion's validity range
                }
                let m = mellin_oracle(&t, x, gamma, 1e-11).unwrap();
                let budget = s.abs_error_estimate + m.abs_error_estimate + 1e-13;
                worst = worst.max((s.value - m.value).abs() / budget);
                taken += 1;
                points += 1;
            }
        }
        if points > 0 {
            used += 1;
        }
    }
    assert_eq!(used, 10, "collected {used} admissible triplets");
    // deviations are in units of the combined error estimates
    report("residue series vs contour oracle", worst, 1.0);
}

#[test]
fn criterion_08_tail_exponent() {
    let mut worst = 0.0f64;
    for alpha in [0.8, 1.2, 1.6] {
        for beta in [0.7, 1.0] {
            let t = FractionalTriplet::new(alpha, beta, 0.0).unwrap();
            let slope = tail_slope(&t).unwrap();
            worst = worst.max((slope + alpha + 1.0).abs());
        }
    }
    report("tail exponent -(alpha+1)", worst, 0.05);
}

#[test]
fn criterion_09_non_negativity() {
    let triplets = [
        (0.6, 0.5, 0.15),
        (1.4, 0.9, -0.3),
        (2.0, 0.7, 0.0),
        (1.5, 1.2, 0.2),
        (1.8, 1.5, 0.0),
        (2.0, 1.5, 0.0),
    ];
    let mut most_negative = 0.0f64;
    for (a, b, th) in triplets {
        let t = FractionalTriplet::new(a, b, th).unwrap();
        for i in 0..200 {
            // signed log-spaced grid covering body and tails
            let u = (i / 2) as f64 / 99.0;
            let x = 1e-3 * (20.0 / 1e-3f64).powf(u) * if i % 2 == 0 { 1.0 } else { -1.0 };
            let v = reduced_green(&t, x, 1e-8).unwrap().value;
            most_negative = most_negative.max(-v);
        }
    }
    report("non-negativity of the density", most_negative, 1e-12);
}

#[test]
fn criterion_10_contour_invariance() {
    let mut worst = 0.0f64;
    for (a, b, th) in [
        (2.0, 1.0, 0.0),
        (1.5, 0.8, 0.2),
        (0.7, 0.5, -0.1),
        (1.8, 1.5, 0.1),
        (1.2, 0.9, 0.0),
    ] {
        let t = FractionalTriplet::new(a, b, th).unwrap();
        let top = a.min(1.0);
        let r1 = mellin_oracle(&t, 1.3, 0.3 * top, 1e-10).unwrap().value;
        let r2 = mellin_oracle(&t, 1.3, 0.7 * top, 1e-10).unwrap().value;
        worst = worst.max((r1 - r2).abs());
    }
    report("contour line invariance", worst, 1e-8);
}
