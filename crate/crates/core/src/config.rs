//! Parameter defaults and layered overrides.
//!
//! Built-in defaults live in `config/defaults.toml` and are compiled into the
//! crate. A user configuration file may override any subset of them, and
//! explicit command-line values override both.

use std::path::Path;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::params::{EnhanceParams, Mode, Normalization, PathKind};

const DEFAULTS_TOML: &str = include_str!("../config/defaults.toml");

#[derive(Debug, Deserialize)]
struct ModeDefaults {
    #[serde(rename = "S")]
    strength: f32,
    #[serde(rename = "T")]
    variance: f32,
    #[serde(rename = "G")]
    gain: f32,
    b: f32,
    #[serde(default)]
    norm: Normalization,
}

#[derive(Debug, Deserialize)]
struct DefaultsFile {
    lowlight: ModeDefaults,
    color: ModeDefaults,
}

fn defaults() -> &'static DefaultsFile {
    static DEFAULTS: OnceLock<DefaultsFile> = OnceLock::new();
    DEFAULTS.get_or_init(|| toml::from_str(DEFAULTS_TOML).expect("bundled defaults.toml is valid"))
}

/// Calibrated defaults for `mode`, on the full path.
pub fn default_params(mode: Mode) -> EnhanceParams {
    let d = match mode {
        Mode::LowLight => &defaults().lowlight,
        Mode::Color => &defaults().color,
    };
    EnhanceParams {
        strength: d.strength,
        variance: d.variance,
        gain: d.gain,
        bias: d.b,
        mode,
        path: PathKind::Full,
        norm: d.norm,
    }
}

/// A partial parameter set; `None` fields leave the lower layer untouched.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamOverrides {
    pub mode: Option<Mode>,
    pub path: Option<PathKind>,
    pub norm: Option<Normalization>,
    #[serde(rename = "S")]
    pub strength: Option<f32>,
    #[serde(rename = "T")]
    pub variance: Option<f32>,
    #[serde(rename = "G")]
    pub gain: Option<f32>,
    pub b: Option<f32>,
}

impl ParamOverrides {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// `self` on top of `lower`.
    pub fn or(self, lower: ParamOverrides) -> ParamOverrides {
        ParamOverrides {
            mode: self.mode.or(lower.mode),
            path: self.path.or(lower.path),
            norm: self.norm.or(lower.norm),
            strength: self.strength.or(lower.strength),
            variance: self.variance.or(lower.variance),
            gain: self.gain.or(lower.gain),
            b: self.b.or(lower.b),
        }
    }

    /// Resolves against the built-in defaults of the selected mode.
    pub fn resolve(&self) -> EnhanceParams {
        let mode = self.mode.unwrap_or(Mode::LowLight);
        let base = default_params(mode);
        EnhanceParams {
            strength: self.strength.unwrap_or(base.strength),
            variance: self.variance.unwrap_or(base.variance),
            gain: self.gain.unwrap_or(base.gain),
            bias: self.b.unwrap_or(base.bias),
            mode,
            path: self.path.unwrap_or(base.path),
            norm: self.norm.unwrap_or(base.norm),
        }
    }
}
