//! VEViD image enhancement.
//!
//! An input channel is treated as a light field: it is propagated through a
//! virtual diffractive medium that imparts a low-pass Gaussian spectral phase,
//! then coherently detected, and the detected phase becomes the new channel.
//! Applied to `v` of an HSV image this brightens dark scenes; applied to `s`
//! it boosts color.
//!
//! Two paths are provided. [`spectral`] performs the transform with forward
//! and inverse 2-D FFTs. [`lite`] evaluates a closed-form per-pixel tone curve
//! that approximates it without leaving the spatial domain.
//!
//! ```
//! use vevid_core::{default_params, enhance, Mode, PathKind};
//! use vevid_core::synth::low_light_scene;
//!
//! let frame = low_light_scene(64, 48, 1);
//! let params = default_params(Mode::LowLight).with_path(PathKind::Lite);
//! let out = enhance(&frame, &params).unwrap();
//! assert_eq!(out.width(), 64);
//! ```

pub mod bench;
pub mod color;
pub mod config;
pub mod error;
pub mod io;
pub mod lite;
pub mod params;
pub mod pipeline;
pub mod spectral;
pub mod stats;
pub mod synth;

pub use color::{hsv_to_rgb, plane_to_u8, rgb_to_hsv, HsvImage, Plane, RgbImage};
pub use config::{default_params, ParamOverrides};
pub use error::{Error, Result};
pub use lite::{build_tone_lut, vevid_lite, LiteParams, ToneLut};
pub use params::{EnhanceParams, Mode, Normalization, PathKind};
pub use pipeline::{enhance, enhance_stream, Enhanced, Enhancer, FrameStream};
pub use spectral::{
    detect_phase, make_frequency_grid, make_phase_kernel, normalize, propagate, vevid_full,
    ComplexField, FrequencyGrid, PhaseKernel, SpectralEngine,
};
