mod common;

use std::f64::consts::PI;

use common::{
    blind_integral, random_vector, rel_err, rng, segment_simpson, segment_simpson_product,
};
use rand::Rng;
use wirtinger::inequality::{piecewise_bound, random_conforming};
use wirtinger::pwl::{basis_norm, energy_h1, energy_l2, inner_product, PiecewiseLinear};
use wirtinger::spectral::{Block, CyclicBasis};

#[test]
fn energies_match_segment_simpson() {
    let mut rng = rng(1);
    for trial in 0..200 {
        let n = rng.random_range(4..=64);
        let x = random_vector(n, &mut rng);
        let (l2, h1) = segment_simpson(&PiecewiseLinear::new(x.clone()).unwrap());
        let (el2, eh1) = (energy_l2(&x).unwrap(), energy_h1(&x).unwrap());
        assert!(
            rel_err(el2, l2) <= 1e-12,
            "trial {trial} n={n}: {el2} vs {l2}"
        );
        assert!(
            rel_err(eh1, h1) <= 1e-12,
            "trial {trial} n={n}: {eh1} vs {h1}"
        );
    }
}

#[test]
fn energies_match_blind_quadrature() {
    let mut rng = rng(2);
    for trial in 0..200 {
        let n = rng.random_range(4..=64);
        let x = random_vector(n, &mut rng);
        let l = PiecewiseLinear::new(x.clone()).unwrap();
        let l2 = blind_integral(|t| l.eval(t).powi(2), 1e-11);
        let h1 = blind_integral(|t| l.slope(t).powi(2), 1e-11);
        for (got, want) in [(energy_l2(&x).unwrap(), l2), (energy_h1(&x).unwrap(), h1)] {
            let tol = 1e-9f64.max(1e-9 * want.abs());
            assert!(
                (got - want).abs() <= tol,
                "trial {trial} n={n}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn inner_product_matches_quadrature() {
    let mut rng = rng(3);
    for n in [4, 5, 16, 32, 63] {
        let x = random_vector(n, &mut rng);
        let y = random_vector(n, &mut rng);
        let (lx, ly) = (
            PiecewiseLinear::new(x.clone()).unwrap(),
            PiecewiseLinear::new(y.clone()).unwrap(),
        );
        let ip = inner_product(&x, &y).unwrap();
        assert!((ip - segment_simpson_product(&lx, &ly)).abs() <= 1e-12);
        assert!((ip - blind_integral(|t| lx.eval(t) * ly.eval(t), 1e-11)).abs() <= 1e-9);
        assert!(rel_err(inner_product(&x, &x).unwrap(), energy_l2(&x).unwrap()) <= 1e-13);
    }
}

#[test]
fn h1_dominates_l2_on_centered_vectors() {
    let mut rng = rng(4);
    for n in 4..=64 {
        for _ in 0..10_000 {
            let x = random_vector(n, &mut rng).centered();
            let (l2, h1) = (energy_l2(&x).unwrap(), energy_h1(&x).unwrap());
            assert!(h1 >= l2, "n={n}: H1 {h1} < L2 {l2}");
        }
    }
}

#[test]
fn energy_gap_sign_follows_bound_gap() {
    let mut rng = rng(5);
    for n in 4..=64 {
        let pb = piecewise_bound(n).unwrap();
        let nf = n as f64;
        for _ in 0..500 {
            let x = random_conforming(n, &mut rng).unwrap();
            let c = x.cyclic_correlation();
            let gap = energy_h1(&x).unwrap() - energy_l2(&x).unwrap();
            // For a centered unit vector both energies are affine in c.
            let closed = nf / PI * (1.0 - c) - 2.0 * PI / (3.0 * nf) * (2.0 + c);
            assert!((gap - closed).abs() <= 1e-12 * nf);
            if (pb - c).abs() > 1e-12 {
                assert_eq!(gap > 0.0, pb > c, "n={n} c={c}");
            }
        }
    }
}

#[test]
fn interpolant_orthogonality_up_to_128() {
    for n in 4..=128 {
        let basis = CyclicBasis::new(n).unwrap();
        let v = basis.vectors();
        for i in 0..n {
            for j in i + 1..n {
                let ip = inner_product(&v[i], &v[j]).unwrap();
                assert!(ip.abs() <= 1e-12, "n={n} <L_e{i}, L_e{j}> = {ip}");
            }
        }
    }
}

#[test]
fn basis_norm_matches_energy_of_block_vectors() {
    for n in 4..=128 {
        let basis = CyclicBasis::new(n).unwrap();
        for block in basis.blocks() {
            if let Block::Rotation {
                cos_index,
                sin_index,
                k,
                ..
            } = *block
            {
                let want = basis_norm(n, k).unwrap();
                for idx in [cos_index, sin_index] {
                    let got = energy_l2(basis.vector(idx)).unwrap();
                    assert!((got - want).abs() <= 1e-12, "n={n} k={k}");
                }
            }
        }
    }
}
