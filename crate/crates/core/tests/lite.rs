mod common;

use common::random_image;
use vevid_core::lite::{raw_response, vevid_lite_with};
use vevid_core::{rgb_to_hsv, vevid_lite, LiteParams, Normalization, Plane, ToneLut};

fn grid(n: usize, lo: f64, hi: f64) -> impl Iterator<Item = f64> + Clone {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

/// Every 8-bit level once, as a v plane would hold them.
fn all_levels() -> Plane {
    Plane::from_fn(16, 16, |r, c| (r * 16 + c) as f32 / 255.0).unwrap()
}

#[test]
fn strictly_increasing_on_a_million_point_grid() {
    let mut checked = 0usize;
    for g in (1..=100).map(|k| k as f32 * 0.05) {
        for b in (1..=100).map(|k| k as f32 * 0.01) {
            let p = LiteParams::new(g, b).unwrap();
            let mut prev = f32::NEG_INFINITY;
            for x in grid(100, 0.0, 1.0) {
                let y = raw_response(x as f32, &p);
                assert!(y > prev, "G={g} b={b} x={x}: {y} <= {prev}");
                prev = y;
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 1_000_000);
}

#[test]
fn raw_response_matches_closed_form() {
    for g in grid(17, 0.01, 5.0) {
        for b in grid(13, 0.01, 1.0) {
            let p = LiteParams::new(g as f32, b as f32).unwrap();
            for x in grid(101, 0.0, 1.0) {
                let (g, b, x) = (g as f32 as f64, b as f32 as f64, x as f32 as f64);
                let want = (g * x).atan2(x + b);
                assert!((raw_response(x as f32, &p) as f64 - want).abs() < 1e-6);
            }
        }
    }
}

#[test]
fn raw_response_is_concave() {
    for g in grid(11, 0.1, 5.0) {
        for b in grid(11, 0.01, 1.0) {
            let p = LiteParams::new(g as f32, b as f32).unwrap();
            let ys: Vec<f64> = grid(201, 0.0, 1.0)
                .map(|x| raw_response(x as f32, &p) as f64)
                .collect();
            for w in ys.windows(3) {
                assert!(w[0] + w[2] - 2.0 * w[1] <= 1e-6, "G={g} b={b}");
            }
        }
    }
}

#[test]
fn normalized_curve_dominates_identity_on_full_range_planes() {
    let levels = all_levels();
    for g in grid(20, 0.05, 5.0) {
        for b in grid(20, 0.01, 1.0) {
            let p = LiteParams::new(g as f32, b as f32).unwrap();
            let out = vevid_lite(&levels, &p);
            for (&y, &x) in out.data().iter().zip(levels.data()) {
                assert!(y >= x, "G={g} b={b}: {y} < {x}");
            }
            assert_eq!(out.data()[0], 0.0);
            assert_eq!(out.data()[255], 1.0);
        }
    }
}

#[test]
fn dominates_on_random_images_with_black_and_white() {
    let p = LiteParams::new(1.4, 0.16).unwrap();
    for seed in 0..10 {
        let mut data = random_image(40, 30, seed).into_data();
        data[..3].copy_from_slice(&[0, 0, 0]);
        data[3..6].copy_from_slice(&[255, 10, 10]);
        let v = rgb_to_hsv(&vevid_core::RgbImage::new(40, 30, data).unwrap()).v;
        let out = vevid_lite(&v, &p);
        assert!(out.data().iter().zip(v.data()).all(|(y, x)| y >= x));
    }
}

#[test]
fn table_matches_direct_evaluation() {
    let levels = all_levels();
    let bytes: Vec<u8> = (0..=255).collect();
    for (g, b) in [(1.4, 0.16), (0.2, 0.9), (4.5, 0.02)] {
        let p = LiteParams::new(g, b).unwrap();
        for norm in [Normalization::PerFrame, Normalization::Fixed] {
            let direct = vevid_lite_with(&levels, &p, norm).plane;
            let lut = ToneLut::spanning(p, 0, 255, norm);
            assert_eq!(lut.apply(16, 16, &bytes).unwrap(), direct);
        }
    }
}

#[test]
fn fixed_scale_stays_in_unit_interval() {
    let levels = all_levels();
    let p = LiteParams::new(2.0, 0.3).unwrap();
    let out = vevid_lite_with(&levels, &p, Normalization::Fixed);
    assert!(!out.degenerate);
    assert!(out.plane.data().iter().all(|&y| (0.0..=1.0).contains(&y)));
    // raw(1) / atan(G) = atan2(G, 1 + b) / atan(G)
    let want = (2.0f64).atan2(1.3) / 2.0f64.atan();
    assert!((out.plane.data()[255] as f64 - want).abs() < 1e-6);
}

#[test]
fn constant_plane_is_degenerate_under_frame_normalization() {
    let p = LiteParams::new(1.4, 0.16).unwrap();
    let flat = Plane::filled(5, 4, 0.3).unwrap();
    let out = vevid_lite_with(&flat, &p, Normalization::PerFrame);
    assert!(out.degenerate);
    assert!(out.plane.data().iter().all(|&y| y == 0.0));
}

#[test]
fn rejects_non_positive_parameters() {
    assert!(LiteParams::new(0.0, 0.1).is_err());
    assert!(LiteParams::new(1.0, 0.0).is_err());
    assert!(LiteParams::new(f32::NAN, 0.1).is_err());
}
