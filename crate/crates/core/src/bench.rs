//! Runtime-versus-frame-size sweeps for the full and lite paths.
//!
//! Each (resolution, path) pair gets a synthetic random frame, a few discarded
//! warm-up calls (which also fill the kernel cache) and at least ten timed
//! calls. Only the `enhance` call sits inside the timed region.

use std::io::{Read, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::color::RgbImage;
use crate::error::{Error, Result};
use crate::params::{EnhanceParams, PathKind};
use crate::pipeline::Enhancer;
use crate::synth::random_rgb;

pub const DEFAULT_WARMUP_ITERS: usize = 5;
pub const MIN_TIMED_ITERS: usize = 10;
/// Working-set estimate above which a resolution is skipped.
pub const DEFAULT_MEMORY_BUDGET: usize = 4 << 30;

pub const DEFAULT_RESOLUTIONS: [(usize, usize); 4] =
    [(640, 480), (1280, 720), (1920, 1080), (3840, 2160)];

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub width: usize,
    pub height: usize,
    pub megapixels: f64,
    pub path: PathKind,
    pub warmup_iters: usize,
    pub timed_iters: usize,
    pub mean_ms: f64,
    pub stddev_ms: f64,
    pub fps: f64,
}

impl BenchRecord {
    pub fn pixels(&self) -> usize {
        self.width * self.height
    }

    fn from_samples(
        width: usize,
        height: usize,
        path: PathKind,
        warmup_iters: usize,
        samples_ms: &[f64],
    ) -> Self {
        let n = samples_ms.len() as f64;
        let mean_ms = samples_ms.iter().sum::<f64>() / n;
        let var = samples_ms
            .iter()
            .map(|t| (t - mean_ms).powi(2))
            .sum::<f64>()
            / (n - 1.0).max(1.0);
        Self {
            width,
            height,
            megapixels: (width * height) as f64 / 1e6,
            path,
            warmup_iters,
            timed_iters: samples_ms.len(),
            mean_ms,
            stddev_ms: var.sqrt(),
            fps: 1000.0 / mean_ms,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub resolutions: Vec<(usize, usize)>,
    pub paths: Vec<PathKind>,
    pub params: EnhanceParams,
    pub warmup_iters: usize,
    pub timed_iters: usize,
    /// Time batches of concurrent frames and report per-frame cost.
    pub parallel: bool,
    pub memory_budget: usize,
    pub seed: u64,
}

impl SweepConfig {
    pub fn new(resolutions: Vec<(usize, usize)>, params: EnhanceParams) -> Self {
        Self {
            resolutions,
            paths: vec![PathKind::Full, PathKind::Lite],
            params,
            warmup_iters: DEFAULT_WARMUP_ITERS,
            timed_iters: MIN_TIMED_ITERS,
            parallel: false,
            memory_budget: DEFAULT_MEMORY_BUDGET,
            seed: 0,
        }
    }
}

/// A (resolution, path) pair that could not be measured.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepFailure {
    pub width: usize,
    pub height: usize,
    pub path: PathKind,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct SweepOutcome {
    pub records: Vec<BenchRecord>,
    pub failures: Vec<SweepFailure>,
    /// Soft-check findings, such as runtime dropping as frames grow.
    pub warnings: Vec<String>,
}

/// Rough peak working set of one enhance call, in bytes.
pub fn estimated_bytes(width: usize, height: usize, path: PathKind) -> usize {
    let per_pixel = match path {
        // rgb in/out, levels, v and output planes, two f64 complex buffers,
        // f64 phase, kernel phase and factor
        PathKind::Full => 6 + 1 + 8 + 32 + 8 + 4 + 16,
        PathKind::Lite => 6,
    };
    width * height * per_pixel
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutcome> {
    if config.resolutions.is_empty() {
        return Err(Error::Insufficient(
            "sweep needs at least one resolution".into(),
        ));
    }
    if config.timed_iters < MIN_TIMED_ITERS {
        return Err(Error::param(format!(
            "timed iterations must be at least {MIN_TIMED_ITERS}, got {}",
            config.timed_iters
        )));
    }
    let enhancer = Enhancer::new();
    let mut outcome = SweepOutcome::default();
    let mut jobs = Vec::new();
    for (i, &(width, height)) in config.resolutions.iter().enumerate() {
        for &path in &config.paths {
            let fail = |reason: String| SweepFailure {
                width,
                height,
                path,
                reason,
            };
            let need = estimated_bytes(width, height, path);
            if width == 0 || height == 0 {
                outcome.failures.push(fail("empty resolution".into()));
                continue;
            }
            if need > config.memory_budget {
                outcome.failures.push(fail(format!(
                    "estimated {need} bytes exceeds budget of {} bytes",
                    config.memory_budget
                )));
                continue;
            }
            let job = Job::new(
                width,
                height,
                config.params.with_path(path),
                config,
                config.seed + i as u64,
            );
            match job.and_then(|mut job| job.warm_up(&enhancer, config.warmup_iters).map(|_| job)) {
                Ok(job) => jobs.push(job),
                Err(e) => outcome.failures.push(fail(e.to_string())),
            }
        }
    }

    // Rounds visit every job once, so slow drift in machine load is shared
    // by all resolutions instead of biasing whichever ran during it.
    for _ in 0..config.timed_iters {
        for job in jobs.iter_mut().filter(|j| j.error.is_none()) {
            match job.run(&enhancer) {
                Ok(ms) => job.samples.push(ms),
                Err(e) => job.error = Some(e.to_string()),
            }
        }
    }
    for job in jobs {
        let (width, height, path) = (job.width, job.height, job.params.path);
        match job.error {
            Some(reason) => outcome.failures.push(SweepFailure {
                width,
                height,
                path,
                reason,
            }),
            None => outcome.records.push(BenchRecord::from_samples(
                width,
                height,
                path,
                config.warmup_iters,
                &job.samples,
            )),
        }
    }
    outcome.warnings = monotonicity_warnings(&outcome.records);
    Ok(outcome)
}

/// One (resolution, path) pair of a sweep with its synthetic input.
struct Job {
    width: usize,
    height: usize,
    params: EnhanceParams,
    images: Vec<RgbImage>,
    parallel: bool,
    samples: Vec<f64>,
    error: Option<String>,
    /// Output buffers recycled across iterations, as a video loop would.
    outputs: Vec<Vec<u8>>,
}

impl Job {
    fn new(
        width: usize,
        height: usize,
        params: EnhanceParams,
        config: &SweepConfig,
        seed: u64,
    ) -> Result<Self> {
        params.validate()?;
        let count = if config.parallel {
            rayon::current_num_threads()
        } else {
            1
        };
        let images = (0..count)
            .map(|k| random_rgb(width, height, seed.wrapping_add(k as u64 * 7919)))
            .collect();
        Ok(Self {
            width,
            height,
            params,
            images,
            parallel: config.parallel,
            samples: Vec::with_capacity(config.timed_iters),
            error: None,
            outputs: vec![Vec::new(); count],
        })
    }

    fn warm_up(&mut self, enhancer: &Enhancer, iters: usize) -> Result<()> {
        enhancer.warm(self.width, self.height, &self.params)?;
        for _ in 0..iters {
            self.run(enhancer)?;
        }
        Ok(())
    }

    /// Milliseconds per frame for one timed enhance call, or one batch in parallel mode.
    fn run(&mut self, enhancer: &Enhancer) -> Result<f64> {
        let params = &self.params;
        let start = Instant::now();
        if self.parallel {
            self.images
                .par_iter()
                .zip(self.outputs.par_iter_mut())
                .try_for_each(|(img, out)| enhancer.enhance_into(img, params, out).map(drop))?;
        } else {
            enhancer.enhance_into(&self.images[0], params, &mut self.outputs[0])?;
        }
        let ms = start.elapsed().as_secs_f64() * 1e3 / self.images.len() as f64;
        std::hint::black_box(&self.outputs);
        Ok(ms)
    }
}

fn monotonicity_warnings(records: &[BenchRecord]) -> Vec<String> {
    let mut warnings = Vec::new();
    for path in [PathKind::Full, PathKind::Lite] {
        let mut series: Vec<&BenchRecord> = records.iter().filter(|r| r.path == path).collect();
        series.sort_by_key(|r| r.pixels());
        for pair in series.windows(2) {
            if pair[1].mean_ms < pair[0].mean_ms {
                warnings.push(format!(
                    "{path}: {}x{} ran faster ({:.3} ms) than smaller {}x{} ({:.3} ms)",
                    pair[1].width,
                    pair[1].height,
                    pair[1].mean_ms,
                    pair[0].width,
                    pair[0].height,
                    pair[0].mean_ms
                ));
            }
        }
    }
    warnings
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingModel {
    /// `t = c * N`
    Linear,
    /// `t = c * N * log2(N)`
    NLogN,
}

impl ScalingModel {
    fn feature(self, pixels: f64) -> f64 {
        match self {
            ScalingModel::Linear => pixels,
            ScalingModel::NLogN => pixels * pixels.log2(),
        }
    }
}

impl std::fmt::Display for ScalingModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ScalingModel::Linear => "N",
            ScalingModel::NLogN => "N log N",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelFit {
    pub model: ScalingModel,
    pub coefficient: f64,
    /// Root-mean-square of `(t - fit) / t` over the points.
    pub rms_relative_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathScaling {
    pub path: PathKind,
    pub points: usize,
    pub linear: ModelFit,
    pub nlogn: ModelFit,
}

impl PathScaling {
    pub fn best(&self) -> ScalingModel {
        if self.linear.rms_relative_residual <= self.nlogn.rms_relative_residual {
            ScalingModel::Linear
        } else {
            ScalingModel::NLogN
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub paths: Vec<PathScaling>,
    /// `full mean_ms / lite mean_ms` at the largest resolution measured by both.
    pub full_over_lite: Option<f64>,
    pub largest: Option<(usize, usize)>,
}

impl ScalingReport {
    pub fn path(&self, path: PathKind) -> Option<&PathScaling> {
        self.paths.iter().find(|p| p.path == path)
    }
}

impl std::fmt::Display for ScalingReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for p in &self.paths {
            writeln!(
                f,
                "{}: best fit {} (rms rel. residual: N {:.4}, N log N {:.4})",
                p.path,
                p.best(),
                p.linear.rms_relative_residual,
                p.nlogn.rms_relative_residual
            )?;
        }
        if let (Some(ratio), Some((w, h))) = (self.full_over_lite, self.largest) {
            writeln!(f, "full/lite runtime ratio at {w}x{h}: {ratio:.2}")?;
        }
        Ok(())
    }
}

/// One-coefficient fit through the origin minimizing relative squared error.
fn fit_model(model: ScalingModel, points: &[(f64, f64)]) -> ModelFit {
    let (mut num, mut den) = (0.0, 0.0);
    for &(n, t) in points {
        let x = model.feature(n) / t;
        num += x;
        den += x * x;
    }
    let coefficient = num / den;
    let ss: f64 = points
        .iter()
        .map(|&(n, t)| ((t - coefficient * model.feature(n)) / t).powi(2))
        .sum();
    ModelFit {
        model,
        coefficient,
        rms_relative_residual: (ss / points.len() as f64).sqrt(),
    }
}

/// Fits `N` and `N log N` runtime models per path.
pub fn fit_scaling(records: &[BenchRecord]) -> Result<ScalingReport> {
    let mut paths = Vec::new();
    for path in [PathKind::Full, PathKind::Lite] {
        let mut points: Vec<(f64, f64)> = records
            .iter()
            .filter(|r| r.path == path)
            .map(|r| (r.pixels() as f64, r.mean_ms))
            .collect();
        if points.is_empty() {
            continue;
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        points.dedup_by(|a, b| a.0 == b.0);
        if points.len() < 3 {
            return Err(Error::Insufficient(format!(
                "{path} path has {} distinct resolutions, need at least 3",
                points.len()
            )));
        }
        paths.push(PathScaling {
            path,
            points: points.len(),
            linear: fit_model(ScalingModel::Linear, &points),
            nlogn: fit_model(ScalingModel::NLogN, &points),
        });
    }
    if paths.is_empty() {
        return Err(Error::Insufficient("no records to fit".into()));
    }

    let largest = records
        .iter()
        .filter(|r| r.path == PathKind::Full)
        .filter(|f| {
            records
                .iter()
                .any(|l| l.path == PathKind::Lite && l.pixels() == f.pixels())
        })
        .max_by_key(|r| r.pixels());
    let full_over_lite = largest.and_then(|full| {
        records
            .iter()
            .find(|l| l.path == PathKind::Lite && l.pixels() == full.pixels())
            .map(|lite| full.mean_ms / lite.mean_ms)
    });
    Ok(ScalingReport {
        paths,
        full_over_lite,
        largest: largest.map(|r| (r.width, r.height)),
    })
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    if records.is_empty() {
        w.write_record([
            "width",
            "height",
            "megapixels",
            "path",
            "warmup_iters",
            "timed_iters",
            "mean_ms",
            "stddev_ms",
            "fps",
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<BenchRecord>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

/// Line chart of mean runtime against megapixels, one series per path.
pub fn render_svg(records: &[BenchRecord]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const LEFT: f64 = 70.0;
    const RIGHT: f64 = 20.0;
    const TOP: f64 = 30.0;
    const BOTTOM: f64 = 50.0;

    let max_mp = records
        .iter()
        .map(|r| r.megapixels)
        .fold(0.0, f64::max)
        .max(1e-9);
    let max_ms = records
        .iter()
        .map(|r| r.mean_ms)
        .fold(0.0, f64::max)
        .max(1e-9);
    let x = |mp: f64| LEFT + mp / max_mp * (W - LEFT - RIGHT);
    let y = |ms: f64| H - BOTTOM - ms / max_ms * (H - TOP - BOTTOM);

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <line x1=\"{LEFT}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <line x1=\"{LEFT}\" y1=\"{TOP}\" x2=\"{LEFT}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <text x=\"{cx}\" y=\"{xl}\" text-anchor=\"middle\" font-size=\"14\">frame size (megapixels)</text>\n\
         <text x=\"18\" y=\"{cy}\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 {cy})\">runtime (ms)</text>\n",
        b = H - BOTTOM,
        r = W - RIGHT,
        cx = (LEFT + W - RIGHT) / 2.0,
        xl = H - 12.0,
        cy = (TOP + H - BOTTOM) / 2.0,
    );
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-size=\"11\">{:.2}</text>\n",
            x(f * max_mp),
            H - BOTTOM + 16.0,
            f * max_mp
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\" font-size=\"11\">{:.1}</text>\n",
            LEFT - 6.0,
            y(f * max_ms) + 4.0,
            f * max_ms
        ));
    }
    for (k, (path, color)) in [(PathKind::Full, "#c0392b"), (PathKind::Lite, "#2471a3")]
        .into_iter()
        .enumerate()
    {
        let mut series: Vec<&BenchRecord> = records.iter().filter(|r| r.path == path).collect();
        if series.is_empty() {
            continue;
        }
        series.sort_by_key(|r| r.pixels());
        let pts: Vec<String> = series
            .iter()
            .map(|r| format!("{:.1},{:.1}", x(r.megapixels), y(r.mean_ms)))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"2\" points=\"{}\"/>\n",
            pts.join(" ")
        ));
        for r in &series {
            svg.push_str(&format!(
                "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"3\" fill=\"{color}\"/>\n",
                x(r.megapixels),
                y(r.mean_ms)
            ));
        }
        let ly = TOP + 16.0 * k as f64;
        svg.push_str(&format!(
            "<line x1=\"{a:.1}\" y1=\"{ly:.1}\" x2=\"{b:.1}\" y2=\"{ly:.1}\" stroke=\"{color}\" stroke-width=\"2\"/>\
             <text x=\"{t:.1}\" y=\"{ty:.1}\" font-size=\"12\">{path}</text>\n",
            a = LEFT + 20.0,
            b = LEFT + 40.0,
            t = LEFT + 46.0,
            ty = ly + 4.0,
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
