use rustfft::num_complex::Complex64;

use super::grid::FrequencyGrid;
use crate::color::Plane;
use crate::error::{Error, Result};

/// Gaussian spectral phase `phi = S * exp(-(kn^2 + km^2) / T)` for one geometry.
///
/// Besides the phase itself the kernel carries the propagator factor
/// `exp(-i * phi)` in column-major order, which is the layout the 2-D FFT
/// sees between its two passes.
#[derive(Debug, Clone)]
pub struct PhaseKernel {
    strength: f32,
    variance: f32,
    phi: Plane,
    factor_col_major: Vec<Complex64>,
}

impl PhaseKernel {
    pub fn new(grid: &FrequencyGrid, strength: f32, variance: f32) -> Result<Self> {
        if variance <= 0.0 || !variance.is_finite() {
            return Err(Error::param(format!("T must be > 0, got {variance}")));
        }
        if strength < 0.0 || !strength.is_finite() {
            return Err(Error::param(format!("S must be >= 0, got {strength}")));
        }
        let (width, height) = (grid.width(), grid.height());
        let s = strength as f64;
        let t = variance as f64;
        let mut phi = vec![0.0f32; width * height];
        let mut factor = vec![Complex64::new(1.0, 0.0); width * height];
        for (row, &kn) in grid.row_frequencies().iter().enumerate() {
            for (col, &km) in grid.col_frequencies().iter().enumerate() {
                let p = s * (-(kn * kn + km * km) / t).exp();
                phi[row * width + col] = p as f32;
                factor[col * height + row] = Complex64::new(p.cos(), -p.sin());
            }
        }
        Ok(Self {
            strength,
            variance,
            phi: Plane::from_parts(width, height, phi),
            factor_col_major: factor,
        })
    }

    pub fn width(&self) -> usize {
        self.phi.width()
    }

    pub fn height(&self) -> usize {
        self.phi.height()
    }

    pub fn strength(&self) -> f32 {
        self.strength
    }

    pub fn variance(&self) -> f32 {
        self.variance
    }

    pub fn phi(&self) -> &Plane {
        &self.phi
    }

    /// True when the propagator is exactly the identity.
    pub fn is_identity(&self) -> bool {
        self.strength == 0.0
    }

    pub(crate) fn factor_col_major(&self) -> &[Complex64] {
        &self.factor_col_major
    }
}

pub fn make_phase_kernel(
    grid: &FrequencyGrid,
    strength: f32,
    variance: f32,
) -> Result<PhaseKernel> {
    PhaseKernel::new(grid, strength, variance)
}
