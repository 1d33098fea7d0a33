use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::kernel::PhaseKernel;
use super::ComplexField;
use crate::color::Plane;
use crate::error::{Error, Result};

const TRANSPOSE_BLOCK: usize = 32;

/// Planned row and column transforms for one frame geometry.
pub struct Fft2d {
    width: usize,
    height: usize,
    row_forward: Arc<dyn Fft<f64>>,
    row_inverse: Arc<dyn Fft<f64>>,
    col_forward: Arc<dyn Fft<f64>>,
    col_inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Fft2d {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Fft2d")
            .field("width", &self.width)
            .field("height", &self.height)
            .finish()
    }
}

impl Fft2d {
    pub fn new(planner: &mut FftPlanner<f64>, width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            row_forward: planner.plan_fft_forward(width),
            row_inverse: planner.plan_fft_inverse(width),
            col_forward: planner.plan_fft_forward(height),
            col_inverse: planner.plan_fft_inverse(height),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// `IFFT{ exp(-i*phi) * FFT{ input + bias } }`, with the `1/(W*H)` factor on the inverse.
    pub fn propagate(
        &self,
        input: &Plane,
        kernel: &PhaseKernel,
        bias: f32,
    ) -> Result<ComplexField> {
        let field = self.propagate_wide(input, kernel, bias)?;
        let re = field.iter().map(|z| z.re as f32).collect();
        let im = field.iter().map(|z| z.im as f32).collect();
        Ok(ComplexField::from_parts(
            Plane::from_parts(self.width, self.height, re),
            Plane::from_parts(self.width, self.height, im),
        ))
    }

    /// [`Fft2d::propagate`] kept in double precision, row-major.
    ///
    /// Near-zero field values make the detected phase sensitive to absolute
    /// round-off, which in single precision scales with the whole frame's
    /// energy; the transforms therefore run in f64.
    pub(crate) fn propagate_wide(
        &self,
        input: &Plane,
        kernel: &PhaseKernel,
        bias: f32,
    ) -> Result<Vec<Complex64>> {
        let (width, height) = (self.width, self.height);
        for (w, h) in [
            (input.width(), input.height()),
            (kernel.width(), kernel.height()),
        ] {
            if w != width || h != height {
                return Err(Error::Geometry {
                    expected_width: width,
                    expected_height: height,
                    width: w,
                    height: h,
                });
            }
        }
        if bias.is_nan() || bias < 0.0 {
            return Err(Error::param(format!("b must be >= 0, got {bias}")));
        }
        let bias = bias as f64;
        let mut rows: Vec<Complex64> = input
            .data()
            .iter()
            .map(|&x| Complex64::new(x as f64 + bias, 0.0))
            .collect();
        if kernel.is_identity() {
            return Ok(rows);
        }

        let scratch_len = [
            &self.row_forward,
            &self.row_inverse,
            &self.col_forward,
            &self.col_inverse,
        ]
        .iter()
        .map(|f| f.get_inplace_scratch_len())
        .max()
        .unwrap_or(0);
        let mut scratch = vec![Complex64::default(); scratch_len];
        let mut cols = vec![Complex64::default(); rows.len()];

        self.row_forward
            .process_with_scratch(&mut rows, &mut scratch);
        transpose(&rows, &mut cols, height, width);
        self.col_forward
            .process_with_scratch(&mut cols, &mut scratch);
        for (z, h) in cols.iter_mut().zip(kernel.factor_col_major()) {
            *z *= h;
        }
        self.col_inverse
            .process_with_scratch(&mut cols, &mut scratch);
        transpose(&cols, &mut rows, width, height);
        self.row_inverse
            .process_with_scratch(&mut rows, &mut scratch);

        let scale = 1.0 / (width * height) as f64;
        for z in &mut rows {
            *z *= scale;
        }
        Ok(rows)
    }
}

/// Writes the `rows x cols` matrix `src` into `dst` as `cols x rows`.
fn transpose<T: Copy>(src: &[T], dst: &mut [T], rows: usize, cols: usize) {
    debug_assert_eq!(src.len(), rows * cols);
    debug_assert_eq!(dst.len(), rows * cols);
    for r0 in (0..rows).step_by(TRANSPOSE_BLOCK) {
        let r1 = (r0 + TRANSPOSE_BLOCK).min(rows);
        for c0 in (0..cols).step_by(TRANSPOSE_BLOCK) {
            let c1 = (c0 + TRANSPOSE_BLOCK).min(cols);
            for r in r0..r1 {
                for c in c0..c1 {
                    dst[c * rows + r] = src[r * cols + c];
                }
            }
        }
    }
}
