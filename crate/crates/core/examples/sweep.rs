//! Runs the default resolution sweep and prints the scaling report.

use vevid_core::bench::{fit_scaling, run_sweep, SweepConfig, DEFAULT_RESOLUTIONS};
use vevid_core::{default_params, Mode};

fn main() {
    let config = SweepConfig::new(DEFAULT_RESOLUTIONS.to_vec(), default_params(Mode::LowLight));
    let start = std::time::Instant::now();
    let outcome = run_sweep(&config).expect("sweep");
    for r in &outcome.records {
        println!(
            "{}x{} {}: {:.3} ms (sd {:.3})",
            r.width, r.height, r.path, r.mean_ms, r.stddev_ms
        );
    }
    for w in &outcome.warnings {
        println!("warning: {w}");
    }
    println!("{}", fit_scaling(&outcome.records).expect("fit"));
    println!("sweep took {:.1} s", start.elapsed().as_secs_f64());
}
