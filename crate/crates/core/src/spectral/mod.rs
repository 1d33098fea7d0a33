//! Virtual diffraction followed by coherent phase detection.
//!
//! A plane is biased, taken to the frequency domain, multiplied by the unit
//! modulus propagator `exp(-i * phi)` where `phi` is a Gaussian low-pass
//! spectral phase peaking at DC, and brought back. The output image is the
//! phase angle of the resulting complex field, with the imaginary part scaled
//! by the activation gain, min-max normalized onto `[0, 1]`.

mod engine;
mod fft;
mod grid;
mod kernel;

use std::f32::consts::PI;
use std::sync::OnceLock;

pub use engine::SpectralEngine;
pub use fft::Fft2d;
pub use grid::{make_frequency_grid, FrequencyGrid};
pub use kernel::{make_phase_kernel, PhaseKernel};

use crate::color::Plane;
use crate::error::{Error, Result};
use crate::params::{EnhanceParams, Normalization};

/// Relative range below which a plane is treated as constant by [`normalize`].
pub const DEGENERATE_RANGE: f32 = 1e-5;

/// Complex spatial or spectral field on a fixed grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    re: Plane,
    im: Plane,
}

impl ComplexField {
    pub fn new(re: Plane, im: Plane) -> Result<Self> {
        if !re.same_geometry(&im) {
            return Err(Error::Geometry {
                expected_width: re.width(),
                expected_height: re.height(),
                width: im.width(),
                height: im.height(),
            });
        }
        Ok(Self { re, im })
    }

    pub(crate) fn from_parts(re: Plane, im: Plane) -> Self {
        debug_assert!(re.same_geometry(&im));
        Self { re, im }
    }

    pub fn re(&self) -> &Plane {
        &self.re
    }

    pub fn im(&self) -> &Plane {
        &self.im
    }

    pub fn width(&self) -> usize {
        self.re.width()
    }

    pub fn height(&self) -> usize {
        self.re.height()
    }

    /// Sum of `|E|^2`, accumulated in f64.
    pub fn energy(&self) -> f64 {
        self.re
            .data()
            .iter()
            .zip(self.im.data())
            .map(|(&a, &b)| a as f64 * a as f64 + b as f64 * b as f64)
            .sum()
    }

    pub fn into_parts(self) -> (Plane, Plane) {
        (self.re, self.im)
    }
}

/// Result of phase detection after normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseOutput {
    pub plane: Plane,
    /// The detected phase was numerically constant and mapped to zeros.
    pub degenerate: bool,
}

fn shared_engine() -> &'static SpectralEngine {
    static ENGINE: OnceLock<SpectralEngine> = OnceLock::new();
    ENGINE.get_or_init(SpectralEngine::new)
}

/// Propagates `input + bias` through `kernel`, reusing process-wide FFT plans.
pub fn propagate(input: &Plane, kernel: &PhaseKernel, bias: f32) -> Result<ComplexField> {
    shared_engine().propagate(input, kernel, bias)
}

/// Per-pixel `atan2(G * im, re)`, in `(-pi, pi]`.
pub fn detect_phase(field: &ComplexField, gain: f32) -> Result<Plane> {
    if gain <= 0.0 || !gain.is_finite() {
        return Err(Error::param(format!("G must be > 0, got {gain}")));
    }
    let data = field
        .re
        .data()
        .iter()
        .zip(field.im.data())
        .map(|(&re, &im)| {
            let v = (gain * im).atan2(re);
            if v <= -PI {
                PI
            } else {
                v
            }
        })
        .collect();
    Ok(Plane::from_parts(field.width(), field.height(), data))
}

/// Min-max rescale onto `[0, 1]`; a constant plane maps to zeros.
pub fn normalize(p: &Plane) -> Plane {
    normalize_report(p).0
}

/// [`normalize`], also reporting whether the degenerate rule was applied.
pub fn normalize_report(p: &Plane) -> (Plane, bool) {
    let (min, max) = min_max(p.data());
    match unit_scale(min, max) {
        Some(range) => (p.map(|x| to_unit(x, min, range)), false),
        None => (p.map(|_| 0.0), true),
    }
}

pub(crate) fn min_max(data: &[f32]) -> (f32, f32) {
    data.iter()
        .fold((f32::INFINITY, f32::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

/// Range `max - min` if it is wide enough to normalize by.
#[inline]
pub(crate) fn unit_scale(min: f32, max: f32) -> Option<f32> {
    let range = max - min;
    let magnitude = 1.0f32.max(min.abs()).max(max.abs());
    (range > DEGENERATE_RANGE * magnitude).then_some(range)
}

#[inline]
pub(crate) fn to_unit(x: f32, min: f32, range: f32) -> f32 {
    (x - min) / range
}

/// Maps `-pi` onto `pi` so detected phase lies in `(-pi, pi]`.
#[inline]
pub(crate) fn wrap_phase(v: f64) -> f64 {
    if v <= -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        v
    }
}

/// Content-independent mapping of detected phase: `-pi/2 -> 0`, `0 -> 1`.
#[inline]
fn fixed_full_scale(v: f64) -> f32 {
    (1.0 + v / std::f64::consts::FRAC_PI_2).clamp(0.0, 1.0) as f32
}

/// Normalizes a double-precision phase image onto a unit-interval plane.
pub(crate) fn finish_phase_wide(
    width: usize,
    height: usize,
    phase: &[f64],
    norm: Normalization,
) -> PhaseOutput {
    let (data, degenerate) = match norm {
        Normalization::PerFrame => {
            let (min, max) = phase
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                    (lo.min(x), hi.max(x))
                });
            let magnitude = 1.0f64.max(min.abs()).max(max.abs());
            let range = max - min;
            if range > DEGENERATE_RANGE as f64 * magnitude {
                (
                    phase.iter().map(|&x| ((x - min) / range) as f32).collect(),
                    false,
                )
            } else {
                (vec![0.0; phase.len()], true)
            }
        }
        Normalization::Fixed => (phase.iter().map(|&v| fixed_full_scale(v)).collect(), false),
    };
    PhaseOutput {
        plane: Plane::from_parts(width, height, data),
        degenerate,
    }
}

/// The full spectral transform of one plane.
pub fn vevid_full(input: &Plane, params: &EnhanceParams) -> Result<Plane> {
    Ok(shared_engine().transform(input, params)?.plane)
}
