//! Acceptance suite: one `[PASS]` / `[FAIL]` line per criterion.
//!
//! Run with `cargo test --test acceptance`. The process exits non-zero if any
//! criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::{blind_integral, random_vector, rel_err, rng, segment_simpson};
use rand::Rng;
use wirtinger::analysis::{
    fourier_discrete, fourier_quadrature, l2_distance_sq, partial_sum, rayleigh_sweep,
    reference_energies, tail_energy, PeriodicFunction,
};
use wirtinger::functions::{self, harmonics, named};
use wirtinger::inequality::{
    bound_comparison, canonical_form_residual, check_inequality, discrete_bound, extremal_vector,
    oracle_max, random_conforming, taylor_margin_floor,
};
use wirtinger::pwl::{energy_h1, energy_l2, PiecewiseLinear};
use wirtinger::spectral::CyclicBasis;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn ac1_sharp_bound() -> Verdict {
    let start = Instant::now();
    let mut worst = (0.0f64, 0usize);
    for n in 4..=128 {
        let value = match oracle_max(n) {
            Ok(m) => m.value,
            Err(e) => return verdict(false, format!("oracle failed at n={n}: {e}")),
        };
        let d = (value - discrete_bound(n).unwrap()).abs();
        if d > worst.0 || d.is_nan() {
            worst = (d, n);
        }
    }
    let elapsed = start.elapsed();
    verdict(
        worst.0 <= 1e-10 && elapsed <= Duration::from_secs(60),
        format!(
            "max |oracle - cos(2π/n)| = {:.3e} at n={} (tol 1e-10), {:.2?} for n=4..128 (limit 60 s)",
            worst.0, worst.1, elapsed
        ),
    )
}

fn ac2_equality_clause() -> Verdict {
    let mut worst = 0.0f64;
    for n in 4..=64 {
        let r = (2.0 / n as f64).sqrt();
        for step in 0..63 {
            let theta = 0.1 * step as f64;
            let x = extremal_vector(n, r * theta.cos(), r * theta.sin()).unwrap();
            worst = worst.max(check_inequality(&x).unwrap().slack.abs());
        }
    }
    verdict(
        worst <= 1e-12,
        format!("max |slack| = {worst:.3e} over n=4..64 x 63 angles (tol 1e-12)"),
    )
}

fn ac3_random_vectors() -> Verdict {
    let mut rng = rng(0xac3);
    let mut min_slack = f64::INFINITY;
    let mut counterexamples = 0usize;
    for i in 0..100_000usize {
        let n = 4 + i % 61;
        let x = random_conforming(n, &mut rng).unwrap();
        let slack = check_inequality(&x).unwrap().slack;
        min_slack = min_slack.min(slack);
        if slack < -1e-12 {
            counterexamples += 1;
        }
    }
    verdict(
        counterexamples == 0,
        format!("1e5 vectors over n=4..64: {counterexamples} counterexamples, min slack {min_slack:.3e}"),
    )
}

fn ac4_energy_formulas() -> Verdict {
    let mut rng = rng(0xac4);
    let (mut simpson_rel, mut blind_err) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let n = rng.random_range(4..=64);
        let x = random_vector(n, &mut rng);
        let l = PiecewiseLinear::new(x.clone()).unwrap();
        let (el2, eh1) = (energy_l2(&x).unwrap(), energy_h1(&x).unwrap());
        let (sl2, sh1) = segment_simpson(&l);
        simpson_rel = simpson_rel.max(rel_err(el2, sl2)).max(rel_err(eh1, sh1));
        let bl2 = blind_integral(|t| l.eval(t).powi(2), 1e-11);
        let bh1 = blind_integral(|t| l.slope(t).powi(2), 1e-11);
        for (got, want) in [(el2, bl2), (eh1, bh1)] {
            blind_err = blind_err.max((got - want).abs() / want.abs().max(1.0));
        }
    }
    verdict(
        simpson_rel <= 1e-12 && blind_err <= 1e-9,
        format!(
            "200 interpolants: segment Simpson rel err {simpson_rel:.3e} (tol 1e-12), \
             adaptive quadrature err {blind_err:.3e} (tol 1e-9)"
        ),
    )
}

fn ac5_bound_comparison() -> Verdict {
    let nonpositive: Vec<usize> = (4..=2048)
        .filter(|&n| {
            let positive = bound_comparison(n).unwrap().margin > 0.0;
            !positive
        })
        .collect();
    let below_floor: Vec<usize> = (4..=512)
        .filter(|&n| bound_comparison(n).unwrap().margin < taylor_margin_floor(n))
        .collect();
    let m4 = bound_comparison(4).unwrap().margin;
    verdict(
        nonpositive.is_empty() && below_floor.is_empty(),
        format!(
            "margin > 0 fails at {nonpositive:?} (n=4..2048); margin >= (2π/n)^4/30 fails at {below_floor:?} \
             (n=4..512; at n=4 margin {m4:.6} vs floor {:.6})",
            taylor_margin_floor(4)
        ),
    )
}

fn test_family() -> Vec<PeriodicFunction> {
    let mut v: Vec<PeriodicFunction> = functions::NAMES.iter().map(|n| named(n).unwrap()).collect();
    v.push(harmonics(&[0.3, -0.7, 0.0, 0.0, 0.25, 0.1, -0.05, 0.0]).unwrap());
    v
}

fn ac6_energy_ordering() -> Verdict {
    let ns: Vec<usize> = (4..=128).chain([255, 256, 257, 512, 513]).collect();
    let mut failures = Vec::new();
    let mut cases = 0usize;
    for f in test_family() {
        let report = rayleigh_sweep(&f, &ns).unwrap();
        for row in &report.rows {
            cases += 1;
            if row.energy_h1 < row.energy_l2 || row.slack < -1e-12 * row.energy_h1 {
                failures.push(format!("{} n={}", f.label(), row.n));
            }
        }
    }
    verdict(
        failures.is_empty(),
        format!("{cases} (function, n) cases, failures: {failures:?}"),
    )
}

fn ac7_convergence() -> Verdict {
    let f = named("sin1").unwrap();
    let (l2_ref, h1_ref) = reference_energies(&f).unwrap();
    let report = rayleigh_sweep(&f, &[16, 32, 64, 128, 256]).unwrap();
    let ratios = |errs: Vec<f64>| errs.windows(2).map(|w| w[0] / w[1]).collect::<Vec<_>>();
    let l2 = ratios(
        report
            .rows
            .iter()
            .map(|r| (r.energy_l2 - l2_ref).abs())
            .collect(),
    );
    let h1 = ratios(
        report
            .rows
            .iter()
            .map(|r| (r.energy_h1 - h1_ref).abs())
            .collect(),
    );
    let ok = l2.iter().chain(&h1).all(|r| (3.5..=4.5).contains(r));
    verdict(
        ok,
        format!("error ratios per doubling, L2 {l2:.4?}, H1 {h1:.4?} (want [3.5, 4.5])"),
    )
}

fn ac8_dichotomy() -> Verdict {
    let cos = named("cos1").unwrap();
    let sin2 = named("sin2").unwrap();
    let ns = [33, 65, 129, 257];
    let cos_tail = ns
        .iter()
        .map(|&n| tail_energy(&cos, n).unwrap())
        .fold(0.0, f64::max);
    let sin2_tail = ns
        .iter()
        .map(|&n| tail_energy(&sin2, n).unwrap())
        .fold(f64::INFINITY, f64::min);
    verdict(
        cos_tail <= 1e-10 && sin2_tail >= 0.4,
        format!("max tail(cos t) = {cos_tail:.3e} (tol 1e-10), min tail(sin 2t) = {sin2_tail:.6} (want >= 0.4)"),
    )
}

fn ac9_fourier() -> Verdict {
    let f = named("mix13").unwrap();
    let d = fourier_discrete(&f, 513, 4).unwrap();
    let q = fourier_quadrature(&f, 4).unwrap();
    let coef_err = d
        .coefficients
        .iter()
        .zip(&q.coefficients)
        .map(|(x, y)| (x.a - y.a).abs().max((x.b - y.b).abs()))
        .fold(0.0, f64::max);
    let l2_err = l2_distance_sq(&f, &partial_sum(&d, 4).unwrap())
        .unwrap()
        .sqrt();
    verdict(
        coef_err <= 5e-4 && l2_err <= 1e-6,
        format!("max coefficient err {coef_err:.3e} (tol 5e-4), partial sum L2 err {l2_err:.3e} (tol 1e-6)"),
    )
}

fn ac10_spectral() -> Verdict {
    let (mut gram, mut action) = (0.0f64, 0.0f64);
    for n in 4..=512 {
        let basis = CyclicBasis::new(n).unwrap();
        gram = gram.max(basis.gram_residual());
        action = action.max(basis.verify_action().residual);
    }
    let mut rng = rng(0xac10);
    let canonical = [4, 5, 6, 7, 31, 32, 128]
        .iter()
        .map(|&n| canonical_form_residual(n, 200, &mut rng).unwrap())
        .fold(0.0, f64::max);
    verdict(
        gram <= 1e-12 && action <= 1e-12 && canonical <= 1e-11,
        format!(
            "n=4..512: gram {gram:.3e}, action {action:.3e} (tol 1e-12); canonical rel err {canonical:.3e} (tol 1e-11)"
        ),
    )
}

fn main() {
    type Criterion = (&'static str, &'static str, fn() -> Verdict);
    let criteria: [Criterion; 10] = [
        ("AC1", "sharp discrete bound", ac1_sharp_bound),
        ("AC2", "equality clause", ac2_equality_clause),
        ("AC3", "inequality on random vectors", ac3_random_vectors),
        ("AC4", "energy formula exactness", ac4_energy_formulas),
        ("AC5", "strict bound comparison", ac5_bound_comparison),
        ("AC6", "continuous inequality at desk scale", ac6_energy_ordering),
        ("AC7", "second-order energy convergence", ac7_convergence),
        ("AC8", "tail energy dichotomy", ac8_dichotomy),
        ("AC9", "Fourier coefficient recovery", ac9_fourier),
        ("AC10", "spectral structure", ac10_spectral),
    ];
    let mut failed = 0;
    for (id, title, check) in criteria {
        let start = Instant::now();
        let v = check();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {id} {title}: {} [{:.2?}]",
            v.detail,
            start.elapsed()
        );
        if !v.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
