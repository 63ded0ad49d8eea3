mod common;

use common::*;
use nalgebra::DMatrix;
use pcimdr::data::*;
use pcimdr::transforms::VectorizationOrder;
use pcimdr::ObservationMask;
use proptest::prelude::*;

fn tail_energy_fraction(profile: &[f64], from: usize) -> f64 {
    let total: f64 = profile.iter().map(|c| c * c).sum();
    profile[from..].iter().map(|c| c * c).sum::<f64>() / total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn partition_invariants(rows in 1usize..12, cols in 1usize..12, p_present in 0.05f64..1.0, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let present = random_mask(&mut rng(seed), rows, cols, p_present);
        let available = present.count_observed();
        match simulate_missing(&present, p, seed) {
            Ok(part) => {
                let (m1, m2) = (part.original_missing(), part.simulated_missing());
                prop_assert_eq!(m1.len(), present.count_missing());
                prop_assert_eq!(m2.len(), (p * available as f64).round() as usize);
                prop_assert_eq!(part.observed_count() + m1.len() + m2.len(), rows * cols);
                prop_assert!(m2.windows(2).all(|w| w[0] < w[1]));
                for &k in m2 {
                    prop_assert!(present.as_slice()[k], "m2 cell {} was never present", k);
                    prop_assert!(m1.binary_search(&k).is_err());
                }
                let observed = part.observed_mask();
                prop_assert_eq!(observed.count_observed(), part.observed_count());
                for &k in m1.iter().chain(m2) {
                    prop_assert!(!observed.as_slice()[k]);
                }
                let pct = data_loss_percentage(&part).unwrap();
                prop_assert!((pct - 100.0 * p).abs() <= 50.0 / available as f64 + 1e-9);
            }
            Err(_) => prop_assert!(p > 0.0 && p * (available as f64) < 1.0),
        }
    }

    #[test]
    fn nmse_is_scale_invariant(seed in any::<u64>(), scale in 1e-3f64..1e3) {
        let mut r = rng(seed);
        let x = gaussian_vec(&mut r, 30);
        let y = gaussian_vec(&mut r, 30);
        let pos: Vec<usize> = (0..30).step_by(3).collect();
        prop_assert_eq!(nmse(&x, &x, &pos).unwrap(), 0.0);
        let xs: Vec<f64> = x.iter().map(|v| v * scale).collect();
        let ys: Vec<f64> = y.iter().map(|v| v * scale).collect();
        let (a, b) = (nmse(&x, &y, &pos).unwrap(), nmse(&xs, &ys, &pos).unwrap());
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
    }

    #[test]
    fn nmse_ignores_unscored_positions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = gaussian_vec(&mut r, 20);
        let mut y = gaussian_vec(&mut r, 20);
        let pos = [1usize, 4, 9];
        let before = nmse(&x, &y, &pos).unwrap();
        for (k, v) in y.iter_mut().enumerate() {
            if !pos.contains(&k) {
                *v = 1e9;
            }
        }
        prop_assert_eq!(nmse(&x, &y, &pos).unwrap(), before);
    }

    #[test]
    fn matrix_csv_round_trip(rows in 1usize..6, cols in 1usize..6, seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = gaussian_matrix(&mut r, rows, cols);
        let present = random_mask(&mut r, rows, cols, 0.7);
        let mut buf = Vec::new();
        write_matrix_csv(&mut buf, &x, Some(&present)).unwrap();
        let back = read_matrix_csv(buf.as_slice()).unwrap();
        prop_assert_eq!(&back.present, &present);
        for (i, j) in present.observed_cells() {
            prop_assert_eq!(back.values[(i, j)], x[(i, j)]);
        }
        let mut buf = Vec::new();
        write_mask_csv(&mut buf, &present).unwrap();
        prop_assert_eq!(read_mask_csv(buf.as_slice()).unwrap(), present);
    }
}

#[test]
fn lab_grid_counts() {
    // 53 × 200 grid, 2699 cells originally missing.
    let present = ObservationMask::from_fn(53, 200, |i, j| j * 53 + i >= 2699);
    assert_eq!(present.count_missing(), 2699);
    let half = simulate_missing(&present, 0.5, 1).unwrap();
    assert_eq!(half.simulated_missing().len(), 3951);
    let most = simulate_missing(&present, 0.9, 1).unwrap();
    assert_eq!(most.simulated_missing().len(), 7111);
    assert!((data_loss_percentage(&most).unwrap() - 90.0).abs() < 0.01);
    let none = simulate_missing(&present, 0.0, 1).unwrap();
    assert_eq!(data_loss_percentage(&none).unwrap(), 0.0);
    let all = simulate_missing(&present, 1.0, 1).unwrap();
    assert_eq!(all.observed_count(), 0);
    assert_eq!(data_loss_percentage(&all).unwrap(), 100.0);
    assert!(simulate_missing(&present, 1.5, 1).is_err());
    assert!(data_loss_percentage(&simulate_missing(&ObservationMask::empty(2, 2), 0.0, 1).unwrap()).is_err());
}

#[test]
fn nmse_hand_values() {
    assert_eq!(nmse(&[2.0, 0.0, 2.0], &[1.0, 0.0, 2.0], &[0, 2]).unwrap(), 0.125);
    assert_eq!(nmse(&[2.0, -1.0], &[0.0, 0.0], &[0, 1]).unwrap(), 1.0);
    assert!(nmse(&[0.0, 1.0], &[1.0, 1.0], &[0]).is_err());
    assert!(nmse(&[1.0], &[1.0], &[]).is_err());
}

#[test]
fn noise_hits_target_snr() {
    let x = generate_fgn_field(&SyntheticSpec::new(0.8, 53, 200, 3)).unwrap();
    for seed in 0..20 {
        let y = add_noise(&x, 10.0, seed).unwrap();
        let w = &y - &x;
        let snr = 10.0 * (x.norm_squared() / w.norm_squared()).log10();
        assert!((9.5..=10.5).contains(&snr), "seed {seed}: {snr} dB");
    }
    assert_eq!(add_noise(&x, 10.0, 4).unwrap(), add_noise(&x, 10.0, 4).unwrap());
    assert_ne!(add_noise(&x, 10.0, 4).unwrap(), add_noise(&x, 10.0, 5).unwrap());
    assert_eq!(add_noise(&x, f64::INFINITY, 4).unwrap(), x);
    assert!(add_noise(&DMatrix::zeros(3, 3), 10.0, 0).is_err());
}

#[test]
fn hurst_estimate_tracks_generator() {
    for (h, seed) in [(0.8, 1), (0.8, 2), (0.7, 3), (0.9, 4)] {
        let inc = fgn_increments(h, 4096, seed).unwrap();
        let est = estimate_hurst(&inc).unwrap();
        assert!((est - h).abs() < 0.1, "H {h}: estimated {est}");
        let path: Vec<f64> = inc
            .iter()
            .scan(0.0, |acc, v| {
                *acc += v;
                Some(*acc)
            })
            .collect();
        let from_path = estimate_hurst_of_path(&path).unwrap();
        assert!((from_path - h).abs() < 0.1, "H {h}: path estimate {from_path}");
    }
}

#[test]
fn smoother_fields_have_lighter_dct_tails() {
    let (n, t) = (20, 500);
    let tail = |h: f64| {
        let mut total = 0.0;
        for seed in 0..5 {
            let x = generate_fgn_field(&SyntheticSpec::new(h, n, t, seed)).unwrap();
            let profile = dct_coefficient_profile(&x, None, VectorizationOrder::TemporalSnake).unwrap();
            total += tail_energy_fraction(&profile, n * t / 10);
        }
        total / 5.0
    };
    let (smooth, rough) = (tail(0.9), tail(0.5));
    assert!(smooth < rough, "H=0.9 tail {smooth}, H=0.5 tail {rough}");
}

#[test]
fn white_noise_profile_is_flat() {
    let x = gaussian_matrix(&mut rng(9), 100, 120);
    let profile = dct_coefficient_profile(&x, None, VectorizationOrder::SpatialSnake).unwrap();
    let total: f64 = profile.iter().map(|c| c * c).sum();
    assert!(profile[0] * profile[0] / total < 0.01);
    assert!(profile.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn synthetic_fields_are_seeded() {
    let spec = SyntheticSpec::new(0.8, 4, 64, 11);
    assert_eq!(generate_fgn_field(&spec).unwrap(), generate_fgn_field(&spec).unwrap());
    let other = SyntheticSpec::new(0.8, 4, 64, 12);
    assert_ne!(generate_fgn_field(&spec).unwrap(), generate_fgn_field(&other).unwrap());
    assert!(generate_fgn_field(&SyntheticSpec::new(1.2, 4, 64, 0)).is_err());
}
