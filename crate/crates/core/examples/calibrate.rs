//! Scores parameter sets on the bundled corpus:
//! `cargo run -p vevid-core --release --example calibrate [S T G b]`.
//!
//! For each image prints mean `v` before and after both paths and the
//! Spearman correlation between the lite and full `v` outputs. A set is
//! acceptable when every image gets brighter on both paths and every
//! correlation is at least 0.9.

use std::path::PathBuf;

use vevid_core::io::read_image;
use vevid_core::stats::{mean, spearman};
use vevid_core::{default_params, rgb_to_hsv, EnhanceParams, Enhancer, Mode, PathKind};

fn main() -> vevid_core::Result<()> {
    let args: Vec<f32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut params = default_params(Mode::LowLight);
    if let [s, t, g, b] = args[..] {
        params = EnhanceParams {
            strength: s,
            variance: t,
            gain: g,
            bias: b,
            ..params
        };
    }
    println!("{params}");
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut paths: Vec<_> = std::fs::read_dir(&dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "ppm"))
        .collect();
    paths.sort();

    let enhancer = Enhancer::new();
    let mut ok = true;
    let mut worst = f64::INFINITY;
    for path in &paths {
        let (img, _) = read_image(path)?;
        let hsv = rgb_to_hsv(&img);
        let full = enhancer.enhance_plane(&hsv.v, &params)?.plane;
        let lite = enhancer
            .enhance_plane(&hsv.v, &params.with_path(PathKind::Lite))?
            .plane;
        let (m_in, m_full, m_lite) = (mean(hsv.v.data()), mean(full.data()), mean(lite.data()));
        let rho = spearman(full.data(), lite.data()).unwrap_or(f64::NAN);
        worst = worst.min(rho);
        ok &= m_full > m_in && m_lite > m_in && rho >= 0.9;
        println!(
            "{}: mean v {m_in:.3} -> full {m_full:.3} lite {m_lite:.3}; spearman {rho:.4}",
            path.file_name().unwrap().to_string_lossy()
        );
    }
    println!(
        "worst spearman {worst:.4}; {}",
        if ok { "ACCEPT" } else { "REJECT" }
    );
    Ok(())
}
