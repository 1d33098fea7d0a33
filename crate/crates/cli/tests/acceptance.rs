//! Acceptance suite. Each criterion prints one PASS or FAIL line with the
//! measured numbers; the process fails if any criterion fails.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Stdio};
use std::time::Instant;

use vevid_core::bench::{fit_scaling, run_sweep, ScalingModel, SweepConfig, DEFAULT_RESOLUTIONS};
use vevid_core::io::{encode, read_image, StillFormat};
use vevid_core::lite::raw_response;
use vevid_core::stats::spearman;
use vevid_core::{
    default_params, make_frequency_grid, make_phase_kernel, propagate, rgb_to_hsv, vevid_full,
    vevid_lite, EnhanceParams, Enhancer, FrameStream, LiteParams, Mode, PathKind, Plane, RgbImage,
};
use vevid_testkit::{corpus_files, oracle, random_bytes, random_values};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {{
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($fmt)+));
        }
    }};
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence", oracle_equivalence),
        ("unitarity", unitarity),
        ("analytic degeneracies", analytic_degeneracies),
        ("channel preservation", channel_preservation),
        ("lite tone curve", lite_tone_curve),
        ("lite/full agreement", lite_full_agreement),
        ("scaling", scaling),
        ("stream equivalence", stream_equivalence),
        ("cli determinism and raw stream", cli_protocol),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(format!("panicked: {}", panic_text(&p))));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} [{secs:.2} s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} [{secs:.2} s]");
            }
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

fn panic_text(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "unknown panic".into())
}

fn plane(width: usize, height: usize, seed: u64) -> Plane {
    Plane::new(width, height, random_values(width * height, seed)).unwrap()
}

fn image(width: usize, height: usize, seed: u64) -> RgbImage {
    RgbImage::new(width, height, random_bytes(width * height * 3, seed)).unwrap()
}

fn corpus() -> Vec<(String, RgbImage)> {
    corpus_files()
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, read_image(&p).expect("corpus image").0)
        })
        .collect()
}

fn all_settings() -> Vec<EnhanceParams> {
    let mut out = Vec::new();
    for mode in [Mode::LowLight, Mode::Color] {
        for path in [PathKind::Full, PathKind::Lite] {
            out.push(default_params(mode).with_path(path));
        }
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let base = default_params(Mode::LowLight);
    let sets = [
        (base.strength, base.variance, base.gain, base.bias),
        (0.3, 0.01, 1.4, 0.16),
        (0.8, 0.05, 1.0, 0.05),
        (1.5, 0.2, 3.0, 0.3),
        (0.1, 1.0, 0.5, 0.0),
    ];
    let mut per_set = [0.0f64; 5];
    let mut cases = 0;
    for size in [8, 16] {
        for k in 0..100 {
            let input = plane(size, size, 10_000 * size as u64 + k);
            for (&(s, t, g, b), worst) in sets.iter().zip(per_set.iter_mut()) {
                let params = EnhanceParams {
                    strength: s,
                    variance: t,
                    gain: g,
                    bias: b,
                    ..base
                };
                let got = vevid_full(&input, &params).map_err(|e| e.to_string())?;
                let want = oracle::pipeline(
                    input.data(),
                    size,
                    size,
                    s as f64,
                    t as f64,
                    g as f64,
                    b as f64,
                );
                for (&a, &w) in got.data().iter().zip(&want) {
                    *worst = worst.max((a as f64 - w).abs());
                }
                cases += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let worst = per_set.iter().cloned().fold(0.0, f64::max);
    let detail: Vec<String> = sets
        .iter()
        .zip(&per_set)
        .map(|((s, t, g, b), e)| format!("S={s} T={t} G={g} b={b}: {e:.2e}"))
        .collect();
    let summary = format!(
        "{cases} cases, max abs error {worst:.3e} ({}), {secs:.2} s",
        detail.join("; ")
    );
    ensure!(worst < 1e-5, "{summary}");
    ensure!(secs < 10.0, "{summary}");
    Ok(summary)
}

fn unitarity() -> Outcome {
    let params = default_params(Mode::LowLight);
    let mut worst = 0.0f64;
    let images = corpus();
    ensure!(
        images.len() >= 10,
        "corpus has only {} images",
        images.len()
    );
    for (name, img) in &images {
        let v = rgb_to_hsv(img).v;
        let kernel = make_phase_kernel(
            &make_frequency_grid(v.width(), v.height()),
            params.strength,
            params.variance,
        )
        .map_err(|e| e.to_string())?;
        let field = propagate(&v, &kernel, params.bias).map_err(|e| e.to_string())?;
        let expect: f64 = v
            .data()
            .iter()
            .map(|&x| (x as f64 + params.bias as f64).powi(2))
            .sum();
        let rel = (field.energy() - expect).abs() / expect;
        ensure!(rel < 1e-6, "{name}: relative energy error {rel:.3e}");
        worst = worst.max(rel);
    }
    Ok(format!(
        "{} images, worst relative error {worst:.3e}",
        images.len()
    ))
}

fn analytic_degeneracies() -> Outcome {
    let base = default_params(Mode::LowLight);
    let zero_s = EnhanceParams {
        strength: 0.0,
        ..base
    };
    for seed in 0..5 {
        let out = vevid_full(&plane(24, 18, seed), &zero_s).map_err(|e| e.to_string())?;
        ensure!(
            out.data().iter().all(|&x| x == 0.0),
            "S = 0 gave a non-zero output"
        );
    }
    for c in [0.0, 0.2, 0.5, 1.0] {
        let flat = Plane::filled(20, 12, c).unwrap();
        for params in [base, base.with_path(PathKind::Lite)] {
            let out = Enhancer::new()
                .enhance_plane(&flat, &params)
                .map_err(|e| e.to_string())?;
            ensure!(
                out.plane.data().iter().all(|&x| x == 0.0),
                "constant {c} on {} path gave a non-zero output",
                params.path
            );
        }
    }
    let mut worst = 0.0f64;
    for (w, h) in [(8, 8), (15, 9), (64, 48)] {
        for &(c, b) in &[(0.0f32, 0.16f32), (0.3, 0.16), (0.9, 0.5)] {
            for &(s, t) in &[(0.3f32, 0.001f32), (1.2, 0.05), (2.5, 5e-6)] {
                let kernel = make_phase_kernel(&make_frequency_grid(w, h), s, t).unwrap();
                let field = propagate(&Plane::filled(w, h, c).unwrap(), &kernel, b).unwrap();
                let amp = (c + b) as f64;
                let (re, im) = (amp * (s as f64).cos(), -amp * (s as f64).sin());
                for (&r, &i) in field.re().data().iter().zip(field.im().data()) {
                    worst = worst.max((r as f64 - re).abs()).max((i as f64 - im).abs());
                }
            }
        }
    }
    ensure!(
        worst < 1e-6,
        "constant-plane closed form off by {worst:.3e}"
    );
    Ok(format!(
        "S = 0 and constant inputs give zeros; closed form max error {worst:.3e}"
    ))
}

fn channel_preservation() -> Outcome {
    let enhancer = Enhancer::new();
    let mut images: Vec<RgbImage> = corpus().into_iter().map(|(_, img)| img).collect();
    images.extend((0..5).map(|s| image(37, 23, 70 + s)));
    let mut checks = 0;
    for img in &images {
        let hsv = rgb_to_hsv(img);
        for params in all_settings() {
            let (out, _) = enhancer
                .enhance_hsv(hsv.clone(), &params)
                .map_err(|e| e.to_string())?;
            ensure!(
                out.h == hsv.h,
                "h changed in {} {}",
                params.mode,
                params.path
            );
            match params.mode {
                Mode::LowLight => ensure!(out.s == hsv.s, "s changed in lowlight {}", params.path),
                Mode::Color => ensure!(out.v == hsv.v, "v changed in color {}", params.path),
            }
            checks += 1;
        }
    }
    Ok(format!(
        "{checks} image/mode/path combinations bit-identical"
    ))
}

fn lite_tone_curve() -> Outcome {
    let mut points = 0usize;
    for gi in 1..=100 {
        let g = gi as f32 * 0.05;
        for bi in 1..=100 {
            let b = bi as f32 * 0.01;
            let p = LiteParams::new(g, b).map_err(|e| e.to_string())?;
            let mut prev = f32::NEG_INFINITY;
            for xi in 0..100 {
                let x = xi as f32 / 99.0;
                let y = raw_response(x, &p);
                ensure!(y > prev, "not strictly increasing at G={g} b={b} x={x}");
                prev = y;
                points += 1;
            }
        }
    }
    let levels = Plane::from_fn(16, 16, |r, c| (r * 16 + c) as f32 / 255.0).unwrap();
    let mut planes = vec![levels];
    for seed in 0..4 {
        let mut data = random_bytes(48 * 32 * 3, 300 + seed);
        data[..6].copy_from_slice(&[0, 0, 0, 255, 255, 255]);
        planes.push(rgb_to_hsv(&RgbImage::new(48, 32, data).unwrap()).v);
    }
    let mut pairs = 0;
    for gi in 1..=20 {
        for bi in 1..=20 {
            let p = LiteParams::new(gi as f32 * 0.25, bi as f32 * 0.05).unwrap();
            for v in &planes {
                let out = vevid_lite(v, &p);
                ensure!(
                    out.data().iter().zip(v.data()).all(|(y, x)| y >= x),
                    "output below input for G={} b={}",
                    p.gain(),
                    p.bias()
                );
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "{points} grid points strictly increasing; out >= in for {pairs} (G, b) pairs on {} full-range planes",
        planes.len()
    ))
}

fn lite_full_agreement() -> Outcome {
    let enhancer = Enhancer::new();
    let params = default_params(Mode::LowLight);
    let images = corpus();
    ensure!(
        images.len() >= 10,
        "corpus has only {} images",
        images.len()
    );
    let mut values = Vec::new();
    for (name, img) in &images {
        let v = rgb_to_hsv(img).v;
        let full = enhancer
            .enhance_plane(&v, &params)
            .map_err(|e| e.to_string())?
            .plane;
        let lite = enhancer
            .enhance_plane(&v, &params.with_path(PathKind::Lite))
            .map_err(|e| e.to_string())?
            .plane;
        let rho =
            spearman(full.data(), lite.data()).ok_or(format!("{name}: undefined correlation"))?;
        values.push((name.clone(), rho));
    }
    let list: Vec<String> = values.iter().map(|(n, r)| format!("{n}={r:.4}")).collect();
    let worst = values.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
    let mean = values.iter().map(|v| v.1).sum::<f64>() / values.len() as f64;
    let summary = format!(
        "spearman min {worst:.4} mean {mean:.4} ({})",
        list.join(", ")
    );
    ensure!(worst >= 0.9, "{summary}");
    Ok(summary)
}

fn scaling() -> Outcome {
    let start = Instant::now();
    let mut config = SweepConfig::new(DEFAULT_RESOLUTIONS.to_vec(), default_params(Mode::LowLight));
    config.timed_iters = 20;
    let outcome = run_sweep(&config).map_err(|e| e.to_string())?;
    ensure!(
        outcome.failures.is_empty(),
        "sweep failures: {:?}",
        outcome.failures
    );
    let report = fit_scaling(&outcome.records).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();

    let mut timings = Vec::new();
    for &(w, h) in &DEFAULT_RESOLUTIONS {
        let ms = |path| {
            outcome
                .records
                .iter()
                .find(|r| r.width == w && r.height == h && r.path == path)
                .map(|r| r.mean_ms)
                .unwrap()
        };
        let (full, lite) = (ms(PathKind::Full), ms(PathKind::Lite));
        timings.push(format!("{w}x{h} full {full:.2} ms lite {lite:.2} ms"));
        ensure!(
            lite < full,
            "lite not faster at {w}x{h}: {lite:.2} vs {full:.2} ms"
        );
    }
    let ratio = report.full_over_lite.unwrap_or(0.0);
    let full = report.path(PathKind::Full).unwrap();
    let lite = report.path(PathKind::Lite).unwrap();
    let summary = format!(
        "{}; full/lite at 4K {ratio:.2}; full best {} (N {:.4} / NlogN {:.4}), lite best {} (N {:.4} / NlogN {:.4}); sweep {secs:.1} s",
        timings.join(", "),
        full.best(),
        full.linear.rms_relative_residual,
        full.nlogn.rms_relative_residual,
        lite.best(),
        lite.linear.rms_relative_residual,
        lite.nlogn.rms_relative_residual,
    );
    ensure!(ratio >= 3.0, "{summary}");
    ensure!(lite.best() == ScalingModel::Linear, "{summary}");
    ensure!(full.best() == ScalingModel::NLogN, "{summary}");
    ensure!(secs < 300.0, "{summary}");
    Ok(summary)
}

fn stream_equivalence() -> Outcome {
    let frames: Vec<Vec<u8>> = (0..10)
        .map(|s| random_bytes(64 * 48 * 3, 4_000 + s))
        .collect();
    let stream = FrameStream::from_frames(64, 48, frames.clone()).map_err(|e| e.to_string())?;
    let enhancer = Enhancer::new();
    for params in all_settings() {
        let out = enhancer
            .enhance_stream(&stream, &params)
            .map_err(|e| e.to_string())?;
        ensure!(out.len() == 10, "{} frames out", out.len());
        for (k, (got, frame)) in out.frames().iter().zip(&frames).enumerate() {
            let img = RgbImage::new(64, 48, frame.clone()).unwrap();
            let want = Enhancer::new()
                .enhance(&img, &params)
                .map_err(|e| e.to_string())?;
            ensure!(
                got == want.image.data(),
                "frame {k} differs for {} {}",
                params.mode,
                params.path
            );
        }
    }
    Ok("10-frame stream bit-identical to per-frame enhance in both modes and paths".into())
}

struct Run {
    code: Option<i32>,
    stdout: Vec<u8>,
    stderr: String,
}

fn vevid(args: &[&str], stdin: &[u8]) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_vevid"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn vevid");
    let mut input = child.stdin.take().unwrap();
    let data = stdin.to_vec();
    let writer = std::thread::spawn(move || {
        let _ = input.write_all(&data);
    });
    let out = child.wait_with_output().expect("wait for vevid");
    writer.join().unwrap();
    Run {
        code: out.status.code(),
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn cli_protocol() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (w, h) = (40, 30);
    let frames: Vec<Vec<u8>> = (0..3).map(|s| random_bytes(w * h * 3, 8_000 + s)).collect();
    let input = dir.path().join("frame.ppm");
    let img = RgbImage::new(w, h, frames[0].clone()).unwrap();
    std::fs::write(&input, encode(&img, StillFormat::Ppm).unwrap()).unwrap();
    let (ws, hs) = (w.to_string(), h.to_string());

    for flags in [&[][..], &["--lite"][..], &["--mode", "color"][..]] {
        let mut outputs = Vec::new();
        for k in 0..2 {
            let out = dir.path().join(format!("out{k}.ppm"));
            let mut args = vec!["enhance", input.to_str().unwrap(), out.to_str().unwrap()];
            args.extend_from_slice(flags);
            let run = vevid(&args, &[]);
            ensure!(
                run.code == Some(0),
                "enhance {flags:?} exited {:?}: {}",
                run.code,
                run.stderr
            );
            outputs.push(std::fs::read(&out).unwrap());
        }
        ensure!(
            outputs[0] == outputs[1],
            "enhance {flags:?} not deterministic"
        );

        let stream_in = frames.concat();
        let mut args = vec!["stream", "--width", &ws, "--height", &hs];
        args.extend_from_slice(flags);
        let a = vevid(&args, &stream_in);
        let b = vevid(&args, &stream_in);
        ensure!(
            a.code == Some(0),
            "stream {flags:?} exited {:?}: {}",
            a.code,
            a.stderr
        );
        ensure!(a.stdout == b.stdout, "stream {flags:?} not deterministic");
        ensure!(
            a.stdout.len() == stream_in.len(),
            "stream {flags:?} changed byte length"
        );
        let (first, _) = vevid_core::io::decode(&outputs[0]).unwrap();
        ensure!(
            &a.stdout[..w * h * 3] == first.data(),
            "stream frame 0 differs from enhance output for {flags:?}"
        );
    }

    let frame_len = w * h * 3;
    let mut truncated = frames.concat();
    truncated.truncate(2 * frame_len + frame_len / 2);
    let run = vevid(&["stream", "--width", &ws, "--height", &hs], &truncated);
    ensure!(
        run.code == Some(5),
        "truncated stream exited {:?}: {}",
        run.code,
        run.stderr
    );
    ensure!(
        run.stdout.len() == 2 * frame_len,
        "truncated stream wrote {} bytes before failing",
        run.stdout.len()
    );
    let empty = vevid(&["stream", "--width", &ws, "--height", &hs], &[]);
    ensure!(
        empty.code == Some(0) && empty.stdout.is_empty(),
        "empty stream misbehaved"
    );
    Ok("enhance and stream byte-identical across runs; truncated frame exits 5 after 2 whole frames".into())
}
