//! `vevid`: still-image enhancement, raw RGB streaming and benchmarking.

use std::fs::File;
use std::io::{self, BufWriter, ErrorKind, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vevid_core::bench::{
    fit_scaling, render_svg, run_sweep, write_csv, SweepConfig, DEFAULT_RESOLUTIONS,
    DEFAULT_WARMUP_ITERS, MIN_TIMED_ITERS,
};
use vevid_core::io::{read_image, write_image, StillFormat};
use vevid_core::{
    EnhanceParams, Enhancer, Error, Mode, Normalization, ParamOverrides, PathKind, RgbImage,
};

const DEGENERATE_WARNING: &str =
    "warning: degenerate normalization: the phase image is constant, output channel set to 0";

#[derive(Parser, Debug)]
#[command(
    name = "vevid",
    version,
    about = "Low-light and color enhancement by virtual diffraction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enhance a PNG or binary PPM image.
    Enhance {
        input: PathBuf,
        /// Output path; its extension picks the format, otherwise the input's format is kept.
        output: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Enhance raw interleaved RGB24 frames from stdin to stdout.
    Stream {
        #[arg(long)]
        width: Option<usize>,
        #[arg(long)]
        height: Option<usize>,
        /// Frames enhanced concurrently per batch; defaults to the available cores.
        #[arg(long)]
        batch: Option<usize>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Time both paths over a resolution sweep.
    Bench {
        /// Comma-separated WIDTHxHEIGHT list.
        #[arg(long, value_delimiter = ',', value_parser = parse_resolution)]
        resolutions: Option<Vec<(usize, usize)>>,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Optional SVG chart of runtime against frame size.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_WARMUP_ITERS)]
        warmup: usize,
        #[arg(long, default_value_t = MIN_TIMED_ITERS)]
        iters: usize,
        /// Time concurrent frame batches instead of single frames.
        #[arg(long)]
        parallel: bool,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Args, Debug, Default)]
struct ParamArgs {
    /// lowlight enhances v, color enhances s.
    #[arg(long)]
    mode: Option<Mode>,
    /// Use the closed-form tone curve instead of the spectral path.
    #[arg(long, conflicts_with = "full")]
    lite: bool,
    /// Use the spectral path even if the config file selects lite.
    #[arg(long)]
    full: bool,
    /// Phase strength.
    #[arg(long = "S")]
    strength: Option<f32>,
    /// Phase kernel variance, in squared cycles per pixel.
    #[arg(long = "T")]
    variance: Option<f32>,
    /// Phase activation gain.
    #[arg(long = "G")]
    gain: Option<f32>,
    /// Bias added before propagation.
    #[arg(long = "b")]
    bias: Option<f32>,
    /// Output normalization: frame or fixed.
    #[arg(long)]
    norm: Option<Normalization>,
    /// TOML file of parameter defaults.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl ParamArgs {
    /// Flags over the config file over built-in defaults.
    fn resolve(&self) -> Result<EnhanceParams, Failure> {
        let path = match (self.lite, self.full) {
            (true, _) => Some(PathKind::Lite),
            (_, true) => Some(PathKind::Full),
            _ => None,
        };
        let flags = ParamOverrides {
            mode: self.mode,
            path,
            norm: self.norm,
            strength: self.strength,
            variance: self.variance,
            gain: self.gain,
            b: self.bias,
        };
        let file = match &self.config {
            Some(p) => ParamOverrides::from_file(p).map_err(Failure::params)?,
            None => ParamOverrides::default(),
        };
        let params = flags.or(file).resolve();
        params.validate().map_err(Failure::params)?;
        Ok(params)
    }
}

fn parse_resolution(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WIDTHxHEIGHT, got {s:?}"))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad dimension {v:?} in {s:?}: {e}"))
    };
    Ok((parse(w)?, parse(h)?))
}

/// A diagnostic with the process exit status it maps to.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    const UNREADABLE: u8 = 2;
    const INVALID: u8 = 3;
    const WRITE: u8 = 4;
    const TRUNCATED: u8 = 5;

    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn params(e: Error) -> Self {
        Self::new(Self::INVALID, e.to_string())
    }

    fn write(e: impl std::fmt::Display) -> Self {
        Self::new(Self::WRITE, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(Failure::INVALID)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Enhance {
            input,
            output,
            params,
        } => cmd_enhance(&input, &output, &params),
        Command::Stream {
            width,
            height,
            batch,
            params,
        } => cmd_stream(width, height, batch, &params),
        Command::Bench {
            resolutions,
            csv,
            svg,
            warmup,
            iters,
            parallel,
            params,
        } => cmd_bench(BenchArgs {
            resolutions,
            csv,
            svg,
            warmup,
            iters,
            parallel,
            params,
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("vevid: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn report_params(params: &EnhanceParams) {
    eprintln!("vevid: parameters: {params}");
}

fn cmd_enhance(input: &Path, output: &Path, args: &ParamArgs) -> Result<(), Failure> {
    let params = args.resolve()?;
    let (img, input_format) =
        read_image(input).map_err(|e| Failure::new(Failure::UNREADABLE, e.to_string()))?;
    report_params(&params);
    let out = Enhancer::new()
        .enhance(&img, &params)
        .map_err(Failure::params)?;
    if out.degenerate {
        eprintln!("{DEGENERATE_WARNING}");
    }
    let format = StillFormat::from_extension(output).unwrap_or(input_format);
    write_image(output, &out.image, format).map_err(Failure::write)
}

/// Reads up to one frame; returns the number of bytes filled.
fn read_frame(input: &mut impl Read, buf: &mut [u8]) -> io::Result<usize> {
    let mut filled = 0;
    while filled < buf.len() {
        match input.read(&mut buf[filled..]) {
            Ok(0) => break,
            Ok(n) => filled += n,
            Err(e) if e.kind() == ErrorKind::Interrupted => {}
            Err(e) => return Err(e),
        }
    }
    Ok(filled)
}

fn cmd_stream(
    width: Option<usize>,
    height: Option<usize>,
    batch: Option<usize>,
    args: &ParamArgs,
) -> Result<(), Failure> {
    let (Some(width), Some(height)) = (width, height) else {
        return Err(Failure::new(
            Failure::INVALID,
            "stream needs explicit --width and --height",
        ));
    };
    if width == 0 || height == 0 {
        return Err(Failure::new(
            Failure::INVALID,
            format!("frame size must be at least 1x1, got {width}x{height}"),
        ));
    }
    let params = args.resolve()?;
    report_params(&params);
    let batch = batch
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1);
    let frame_len = width * height * 3;
    let enhancer = Enhancer::new();
    let mut stdin = io::stdin().lock();
    let mut stdout = BufWriter::new(io::stdout().lock());
    let mut index = 0usize;
    let mut warned = false;

    loop {
        let mut frames = Vec::with_capacity(batch);
        let mut truncated = None;
        while frames.len() < batch {
            let mut buf = vec![0u8; frame_len];
            let n = read_frame(&mut stdin, &mut buf)
                .map_err(|e| Failure::new(Failure::UNREADABLE, format!("reading stdin: {e}")))?;
            if n == frame_len {
                frames.push(RgbImage::new(width, height, buf).map_err(Failure::params)?);
            } else {
                if n > 0 {
                    truncated = Some(n);
                }
                break;
            }
        }
        let at_end = frames.len() < batch;
        for out in enhancer
            .enhance_images(&frames, &params)
            .map_err(Failure::params)?
        {
            if out.degenerate && !warned {
                eprintln!("{DEGENERATE_WARNING} (first at frame {index})");
                warned = true;
            }
            stdout
                .write_all(out.image.data())
                .map_err(|e| Failure::write(format!("writing stdout: {e}")))?;
            index += 1;
        }
        if let Some(n) = truncated {
            stdout.flush().map_err(Failure::write)?;
            return Err(Failure::new(
                Failure::TRUNCATED,
                format!("truncated frame {index}: got {n} of {frame_len} bytes"),
            ));
        }
        if at_end {
            break;
        }
    }
    stdout
        .flush()
        .map_err(|e| Failure::write(format!("writing stdout: {e}")))
}

struct BenchArgs {
    resolutions: Option<Vec<(usize, usize)>>,
    csv: Option<PathBuf>,
    svg: Option<PathBuf>,
    warmup: usize,
    iters: usize,
    parallel: bool,
    params: ParamArgs,
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    let params = args.params.resolve()?;
    report_params(&params);
    let resolutions = args
        .resolutions
        .unwrap_or_else(|| DEFAULT_RESOLUTIONS.to_vec());
    let mut config = SweepConfig::new(resolutions, params);
    config.warmup_iters = args.warmup;
    config.timed_iters = args.iters;
    config.parallel = args.parallel;
    let outcome = run_sweep(&config).map_err(Failure::params)?;
    for f in &outcome.failures {
        eprintln!(
            "vevid: skipped {}x{} {}: {}",
            f.width, f.height, f.path, f.reason
        );
    }
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    if let Ok(report) = fit_scaling(&outcome.records) {
        eprint!("{report}");
    }

    match &args.csv {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Failure::write(format!("{}: {e}", path.display())))?;
            write_csv(&outcome.records, BufWriter::new(file))
                .map_err(|e| Failure::write(format!("{}: {e}", path.display())))?;
        }
        None => write_csv(&outcome.records, io::stdout().lock()).map_err(Failure::write)?,
    }
    if let Some(path) = &args.svg {
        std::fs::write(path, render_svg(&outcome.records))
            .map_err(|e| Failure::write(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}
