//! Closed-form spatial approximation of the spectral transform.
//!
//! For small phase the propagator is `1 - i*phi`, so the field keeps its real
//! part `x + b` and acquires an imaginary part that follows the low-passed
//! input. Taking that response as proportional to the pixel and folding the
//! constants into the gain leaves a per-pixel tone curve
//! `atan2(G * x, x + b)`, strictly increasing and concave on `[0, 1]`.

use crate::color::Plane;
use crate::error::{Error, Result};
use crate::params::{EnhanceParams, Normalization};
use crate::spectral::{min_max, to_unit, unit_scale, PhaseOutput};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiteParams {
    gain: f32,
    bias: f32,
}

impl LiteParams {
    pub fn new(gain: f32, bias: f32) -> Result<Self> {
        if gain <= 0.0 || !gain.is_finite() {
            return Err(Error::param(format!("G must be > 0, got {gain}")));
        }
        if bias <= 0.0 || !bias.is_finite() {
            return Err(Error::param(format!(
                "b must be > 0 on the lite path, got {bias}"
            )));
        }
        Ok(Self { gain, bias })
    }

    pub fn gain(&self) -> f32 {
        self.gain
    }

    pub fn bias(&self) -> f32 {
        self.bias
    }
}

impl TryFrom<&EnhanceParams> for LiteParams {
    type Error = Error;

    fn try_from(p: &EnhanceParams) -> Result<Self> {
        LiteParams::new(p.gain, p.bias)
    }
}

/// Un-normalized tone curve value for one sample.
#[inline]
pub fn raw_response(x: f32, params: &LiteParams) -> f32 {
    (params.gain * x).atan2(x + params.bias)
}

/// Scale used by [`Normalization::Fixed`]; bounds the raw curve for any `x >= 0`.
#[inline]
fn fixed_scale(params: &LiteParams) -> f32 {
    params.gain.atan()
}

/// Lite transform with per-frame normalization.
pub fn vevid_lite(input: &Plane, params: &LiteParams) -> Plane {
    vevid_lite_with(input, params, Normalization::PerFrame).plane
}

pub fn vevid_lite_with(input: &Plane, params: &LiteParams, norm: Normalization) -> PhaseOutput {
    let raw = input.map(|x| raw_response(x, params));
    match norm {
        Normalization::PerFrame => {
            let (min, max) = min_max(raw.data());
            match unit_scale(min, max) {
                Some(range) => PhaseOutput {
                    plane: raw.map(|r| to_unit(r, min, range)),
                    degenerate: false,
                },
                None => PhaseOutput {
                    plane: raw.map(|_| 0.0),
                    degenerate: true,
                },
            }
        }
        Normalization::Fixed => {
            let scale = fixed_scale(params);
            PhaseOutput {
                plane: raw.map(|r| r / scale),
                degenerate: false,
            }
        }
    }
}

/// Tone curve tabulated over the 256 input levels `k / 255`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToneLut {
    entries: [f32; 256],
    params: LiteParams,
    degenerate: bool,
}

impl ToneLut {
    /// Table normalized over the full 8-bit range.
    pub fn new(params: LiteParams) -> Self {
        Self::spanning(params, 0, 255, Normalization::PerFrame)
    }

    /// Table normalized as [`vevid_lite_with`] would normalize a plane whose
    /// darkest and brightest levels are `lo` and `hi`.
    ///
    /// Entries outside `lo..=hi` are extrapolated and only meaningful for
    /// levels absent from that plane.
    pub fn spanning(params: LiteParams, lo: u8, hi: u8, norm: Normalization) -> Self {
        let raw: [f32; 256] =
            std::array::from_fn(|k| raw_response(crate::color::value_of_level(k as u8), &params));
        let mut degenerate = false;
        let entries = match norm {
            Normalization::PerFrame => {
                let (min, max) = (raw[lo as usize], raw[hi as usize]);
                match unit_scale(min, max) {
                    Some(range) => raw.map(|r| to_unit(r, min, range)),
                    None => {
                        degenerate = true;
                        [0.0; 256]
                    }
                }
            }
            Normalization::Fixed => {
                let scale = fixed_scale(&params);
                raw.map(|r| r / scale)
            }
        };
        Self {
            entries,
            params,
            degenerate,
        }
    }

    pub fn entries(&self) -> &[f32; 256] {
        &self.entries
    }

    pub fn params(&self) -> LiteParams {
        self.params
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    #[inline]
    pub fn get(&self, level: u8) -> f32 {
        self.entries[level as usize]
    }

    /// Maps 8-bit levels to unit-interval outputs.
    pub fn apply(&self, width: usize, height: usize, levels: &[u8]) -> Result<Plane> {
        Plane::new(width, height, levels.iter().map(|&k| self.get(k)).collect())
    }

    /// Maps 8-bit levels to quantized 8-bit outputs.
    pub fn apply_u8(&self, levels: &[u8]) -> Vec<u8> {
        let q: [u8; 256] = self.entries.map(crate::color::quantize);
        levels.iter().map(|&k| q[k as usize]).collect()
    }
}

pub fn build_tone_lut(params: LiteParams) -> ToneLut {
    ToneLut::new(params)
}
