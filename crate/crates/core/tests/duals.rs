mod common;

use common::*;
use gabor_core::dual::{
    frame_operator, generalized_dual, min_norm_dual, most_orthogonal_like_dual, LinearOperator,
    WexlerRazSystem,
};
use gabor_core::noise::NoiseGenerator;
use gabor_core::{dgt, idgt, wexler_raz_residual, Complex64, Window, WindowRole};
use nalgebra::{DMatrix, DVector};

fn max_diff(x: &Window, y: &[Complex64]) -> f64 {
    x.values()
        .iter()
        .zip(y)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

fn canonical_dual(p: &Window, lat: &gabor_core::Lattice) -> Vec<Complex64> {
    let s = frame_operator(p, lat).unwrap();
    let rhs = DVector::from_column_slice(p.values());
    s.lu().solve(&rhs).unwrap().iter().copied().collect()
}

fn random_operator(rng: &mut NoiseGenerator, len: usize) -> LinearOperator {
    LinearOperator::new(DMatrix::from_fn(len, len, |_, _| rng.complex_normal(1.0))).unwrap()
}

#[test]
fn solvers_agree_with_canonical_dual() {
    for dims in LATTICES {
        let lat = lattice(dims);
        for (name, p) in test_windows(&lat, 21) {
            let mn = min_norm_dual(&p, &lat).unwrap();
            let mo = most_orthogonal_like_dual(&p, &lat).unwrap();
            let canon = canonical_dual(&p, &lat);
            assert!(max_diff(&mo, mn.values()) < 1e-9, "{name} {dims:?}");
            assert!(max_diff(&mn, &canon) < 1e-9, "{name} {dims:?}");
            for g in [&mn, &mo] {
                assert!(wexler_raz_residual(&p, g, &lat).unwrap() < 1e-10);
                assert_eq!(g.role(), WindowRole::Analysis);
            }
        }
    }
}

#[test]
fn scalar_operators_leave_min_norm_dual() {
    let lat = lattice((48, 4, 8));
    let p = offset_gaussian(48, 6.0);
    let mn = min_norm_dual(&p, &lat).unwrap();
    for op in [
        LinearOperator::zero(48),
        LinearOperator::identity(48),
        LinearOperator::scaled_identity(48, Complex64::new(2.0, 0.0)),
        LinearOperator::scaled_identity(48, Complex64::new(-0.5, 3.0)),
    ] {
        let g = generalized_dual(&p, &lat, &op).unwrap();
        assert!(g.max_abs_diff(&mn) < 1e-9);
    }
}

#[test]
fn critical_sampling_dual_is_unique() {
    let mut rng = NoiseGenerator::new(4);
    let lat = lattice((16, 4, 4));
    let p = Window::from_signal(random_signal(&mut rng, 16), WindowRole::Synthesis);
    let system = WexlerRazSystem::new(&p, &lat).unwrap();
    assert_eq!(system.constraint_count(), 16);
    let mn = min_norm_dual(&p, &lat).unwrap();
    for _ in 0..5 {
        let g = generalized_dual(&p, &lat, &random_operator(&mut rng, 16)).unwrap();
        assert!(wexler_raz_residual(&p, &g, &lat).unwrap() < 1e-10);
        assert!(g.max_abs_diff(&mn) < 1e-9);
    }
}

#[test]
fn oversampled_duals_form_a_family() {
    let mut rng = NoiseGenerator::new(6);
    let lat = lattice((48, 4, 8));
    let p = offset_gaussian(48, 6.0);
    let mn = min_norm_dual(&p, &lat).unwrap();
    let other = generalized_dual(&p, &lat, &random_operator(&mut rng, 48)).unwrap();
    let deviation = other.max_abs_diff(&mn);
    println!("random-operator dual deviates from the min-norm dual by {deviation:.3e}");
    assert!(wexler_raz_residual(&p, &other, &lat).unwrap() < 1e-10);
    assert!(deviation > 1e-6);
    assert!(other.norm() > mn.norm());

    for _ in 0..5 {
        let s = random_signal(&mut rng, 48);
        let back = idgt(&dgt(&s, &other, &lat).unwrap(), &p, &lat).unwrap();
        assert!(back.max_abs_diff(&s) < 1e-10);
    }
}

#[test]
fn coefficient_round_trip_at_critical_sampling() {
    let mut rng = NoiseGenerator::new(7);
    for dims in [(16, 4, 4), (48, 8, 8), (48, 6, 6)] {
        let lat = lattice(dims);
        let p = Window::from_signal(random_signal(&mut rng, lat.len()), WindowRole::Synthesis);
        let gamma = min_norm_dual(&p, &lat).unwrap();
        let c = random_grid(&mut rng, lat.channels(), lat.shifts());
        let back = dgt(&idgt(&c, &p, &lat).unwrap(), &gamma, &lat).unwrap();
        assert!(back.max_abs_diff(&c) < 1e-10, "{dims:?}");
    }
}

#[test]
fn coefficient_round_trip_on_range_when_oversampled() {
    // Synthesis from MN > L coefficients is not injective; analysis grids
    // are reproduced exactly.
    let mut rng = NoiseGenerator::new(8);
    let lat = lattice((48, 4, 8));
    let p = offset_gaussian(48, 6.0);
    let gamma = min_norm_dual(&p, &lat).unwrap();
    let c = dgt(&random_signal(&mut rng, 48), &gamma, &lat).unwrap();
    let back = dgt(&idgt(&c, &p, &lat).unwrap(), &gamma, &lat).unwrap();
    assert!(back.max_abs_diff(&c) < 1e-10);

    let arbitrary = random_grid(&mut rng, 8, 12);
    let back = dgt(&idgt(&arbitrary, &p, &lat).unwrap(), &gamma, &lat).unwrap();
    assert!(back.max_abs_diff(&arbitrary) > 0.1);
}

#[test]
fn duals_of_scaled_window_scale_inversely() {
    let lat = lattice((48, 4, 8));
    let p = offset_gaussian(48, 6.0);
    let p3 = Window::synthesis(p.values().iter().map(|z| z * 3.0).collect()).unwrap();
    let g = min_norm_dual(&p, &lat).unwrap();
    let g3 = min_norm_dual(&p3, &lat).unwrap();
    let scaled: Vec<_> = g.values().iter().map(|z| z / 3.0).collect();
    assert!(max_diff(&g3, &scaled) < 1e-12);
}
