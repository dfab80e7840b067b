//! Named test functions for sweeps and Fourier recovery.

use std::f64::consts::{PI, TAU};

use crate::analysis::PeriodicFunction;
use crate::error::{Error, Result};

pub const NAMES: [&str; 5] = ["sin1", "cos1", "sin2", "mix13", "cubicodd"];

/// Looks up a registered function: `sin1` (sin t), `cos1` (cos t), `sin2`
/// (sin 2t), `mix13` (sin t + ½ cos 3t) and `cubicodd`, the periodic
/// extension of `t(π - t)(2π - t)/π³` from `[0, 2π)`.
pub fn named(name: &str) -> Option<PeriodicFunction> {
    let f = match name {
        "sin1" => PeriodicFunction::new(name, f64::sin, f64::cos),
        "cos1" => PeriodicFunction::new(name, f64::cos, |t: f64| -t.sin()),
        "sin2" => PeriodicFunction::new(
            name,
            |t: f64| (2.0 * t).sin(),
            |t: f64| 2.0 * (2.0 * t).cos(),
        ),
        "mix13" => PeriodicFunction::new(
            name,
            |t: f64| t.sin() + 0.5 * (3.0 * t).cos(),
            |t: f64| t.cos() - 1.5 * (3.0 * t).sin(),
        ),
        "cubicodd" => PeriodicFunction::new(name, cubic_odd, cubic_odd_derivative),
        _ => return None,
    };
    Some(f.expect("registered functions pass their probes"))
}

fn cubic_odd(t: f64) -> f64 {
    let s = t.rem_euclid(TAU);
    s * (PI - s) * (TAU - s) / PI.powi(3)
}

fn cubic_odd_derivative(t: f64) -> f64 {
    let s = t.rem_euclid(TAU);
    (3.0 * s * s - 6.0 * PI * s + 2.0 * PI * PI) / PI.powi(3)
}

/// `Σ_j (a_j cos jt + b_j sin jt)` from the flat list `a_1, b_1, a_2, b_2, ..`.
pub fn harmonics(coefficients: &[f64]) -> Result<PeriodicFunction> {
    if coefficients.is_empty() || !coefficients.len().is_multiple_of(2) {
        return Err(Error::InvalidFunction {
            label: "harmonics".into(),
            reason: format!(
                "expected pairs a1,b1,a2,b2,..; got {} values",
                coefficients.len()
            ),
        });
    }
    if coefficients.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite("harmonic coefficient".into()));
    }
    let pairs: Vec<(f64, f64)> = coefficients.chunks(2).map(|p| (p[0], p[1])).collect();
    let label = format!(
        "harmonics[{}]",
        coefficients
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    let for_value = pairs.clone();
    PeriodicFunction::new(
        label,
        move |t: f64| {
            for_value
                .iter()
                .enumerate()
                .map(|(i, (a, b))| {
                    let (s, c) = ((i + 1) as f64 * t).sin_cos();
                    a * c + b * s
                })
                .sum()
        },
        move |t: f64| {
            pairs
                .iter()
                .enumerate()
                .map(|(i, (a, b))| {
                    let j = (i + 1) as f64;
                    let (s, c) = (j * t).sin_cos();
                    j * (b * c - a * s)
                })
                .sum()
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_complete() {
        for name in NAMES {
            assert_eq!(named(name).unwrap().label(), name);
        }
        assert!(named("nosuch").is_none());
    }

    #[test]
    fn harmonics_match_named() {
        let h = harmonics(&[0.0, 1.0, 0.0, 0.0, 0.5, 0.0]).unwrap();
        let m = named("mix13").unwrap();
        for t in [0.0, 0.4, 2.2, 5.9] {
            assert!((h.value(t) - m.value(t)).abs() < 1e-15);
            assert!((h.derivative(t) - m.derivative(t)).abs() < 1e-14);
        }
        assert!(harmonics(&[1.0]).is_err());
        assert!(harmonics(&[]).is_err());
        assert!(harmonics(&[1.0, f64::NAN]).is_err());
    }

    #[test]
    fn cubic_odd_is_odd_and_c1() {
        let f = named("cubicodd").unwrap();
        for t in [0.3, 1.0, 2.5, 3.0] {
            assert!((f.value(-t) + f.value(t)).abs() < 1e-14);
        }
        assert!(f.value(0.0).abs() < 1e-15);
        assert!((f.derivative(0.0) - f.derivative(TAU - 1e-12)).abs() < 1e-9);
    }
}
