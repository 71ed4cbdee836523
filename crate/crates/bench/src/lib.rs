//! Shared fixtures for the benchmark suite: one representative triplet per
//! evaluation regime.

use fracgreen_core::FractionalTriplet;

pub fn regimes() -> Vec<(&'static str, FractionalTriplet)> {
    [
        ("gaussian", (2.0, 1.0, 0.0)),
        ("cauchy", (1.0, 1.0, 0.0)),
        ("stable", (1.5, 1.0, 0.3)),
        ("time-fractional", (2.0, 0.5, 0.0)),
        ("neutral", (1.5, 1.5, 0.2)),
        ("space-time", (1.6, 0.7, 0.0)),
        ("space-time-slow", (0.5, 0.8, 0.0)),
    ]
    .into_iter()
    .map(|(name, (a, b, th))| {
        (
            name,
            FractionalTriplet::new(a, b, th).expect("admissible fixture"),
        )
    })
    .collect()
}
