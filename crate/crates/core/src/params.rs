//! Model parameters and their validation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which HSV channel the transform replaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Enhance `v`, keep `h` and `s`.
    LowLight,
    /// Enhance `s`, keep `h` and `v`.
    Color,
}

/// Spectral transform or its closed-form spatial approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathKind {
    Full,
    Lite,
}

/// How the detected phase is mapped onto `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Normalization {
    /// Min-max over each frame.
    #[default]
    #[serde(rename = "frame")]
    PerFrame,
    /// Fixed scale that does not depend on frame content.
    #[serde(rename = "fixed")]
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnhanceParams {
    /// Phase strength: peak of the spectral phase, at DC (radians).
    pub strength: f32,
    /// Phase variance in squared cycles/pixel.
    pub variance: f32,
    /// Phase activation gain.
    pub gain: f32,
    /// Bias added to the processed channel before propagation.
    pub bias: f32,
    pub mode: Mode,
    pub path: PathKind,
    pub norm: Normalization,
}

impl EnhanceParams {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.strength, self.variance, self.gain, self.bias]
            .iter()
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::param("parameters must be finite"));
        }
        if self.strength < 0.0 {
            return Err(Error::param(format!(
                "S must be >= 0, got {}",
                self.strength
            )));
        }
        if self.variance <= 0.0 {
            return Err(Error::param(format!(
                "T must be > 0, got {}",
                self.variance
            )));
        }
        if self.gain <= 0.0 {
            return Err(Error::param(format!("G must be > 0, got {}", self.gain)));
        }
        if self.bias < 0.0 {
            return Err(Error::param(format!("b must be >= 0, got {}", self.bias)));
        }
        if self.path == PathKind::Lite && self.bias <= 0.0 {
            return Err(Error::param("the lite path requires b > 0"));
        }
        Ok(())
    }

    pub fn with_path(mut self, path: PathKind) -> Self {
        self.path = path;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }
}

impl fmt::Display for EnhanceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mode={} path={} S={} T={} G={} b={} norm={}",
            self.mode, self.path, self.strength, self.variance, self.gain, self.bias, self.norm
        )
    }
}

macro_rules! text_enum {
    ($ty:ty { $($variant:path => $name:literal),+ $(,)? }) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($variant => $name),+ })
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($variant),)+
                    other => Err(Error::param(format!(
                        concat!("unknown ", stringify!($ty), " {:?}"), other
                    ))),
                }
            }
        }
    };
}

text_enum!(Mode { Mode::LowLight => "lowlight", Mode::Color => "color" });
text_enum!(PathKind { PathKind::Full => "full", PathKind::Lite => "lite" });
text_enum!(Normalization { Normalization::PerFrame => "frame", Normalization::Fixed => "fixed" });

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::default_params;

    #[test]
    fn validation_boundaries() {
        let base = default_params(Mode::LowLight);
        assert!(base.validate().is_ok());
        assert!(EnhanceParams {
            strength: 0.0,
            ..base
        }
        .validate()
        .is_ok());
        assert!(EnhanceParams {
            strength: -0.1,
            ..base
        }
        .validate()
        .is_err());
        assert!(EnhanceParams {
            variance: 0.0,
            ..base
        }
        .validate()
        .is_err());
        assert!(EnhanceParams { gain: 0.0, ..base }.validate().is_err());
        assert!(EnhanceParams { bias: -1.0, ..base }.validate().is_err());
        assert!(EnhanceParams { bias: 0.0, ..base }.validate().is_ok());
        let lite = base.with_path(PathKind::Lite);
        assert!(EnhanceParams { bias: 0.0, ..lite }.validate().is_err());
        assert!(EnhanceParams {
            gain: f32::NAN,
            ..base
        }
        .validate()
        .is_err());
    }

    #[test]
    fn text_forms() {
        assert_eq!("lowlight".parse::<Mode>().unwrap(), Mode::LowLight);
        assert_eq!("lite".parse::<PathKind>().unwrap(), PathKind::Lite);
        assert_eq!(
            "fixed".parse::<Normalization>().unwrap(),
            Normalization::Fixed
        );
        assert!("sepia".parse::<Mode>().is_err());
        assert_eq!(Normalization::PerFrame.to_string(), "frame");
    }
}
