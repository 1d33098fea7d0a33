//! Brute-force reference pipeline in f64: direct O(N^2) 2-D DFT, Gaussian
//! phase evaluated from its own frequency table, atan2 detection, min-max.

use std::f64::consts::PI;

#[derive(Clone, Copy, Debug)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    fn mul(self, o: C64) -> C64 {
        C64::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

/// Direct 2-D DFT of a row-major `height x width` field. The inverse carries `1/(W*H)`.
pub fn naive_dft2(x: &[C64], width: usize, height: usize, inverse: bool) -> Vec<C64> {
    let sign = if inverse { 1.0 } else { -1.0 };
    let scale = if inverse {
        1.0 / (width * height) as f64
    } else {
        1.0
    };
    let mut out = vec![C64::new(0.0, 0.0); width * height];
    for k in 0..height {
        for l in 0..width {
            let mut acc = C64::new(0.0, 0.0);
            for n in 0..height {
                for m in 0..width {
                    let theta = sign
                        * 2.0
                        * PI
                        * ((k * n) as f64 / height as f64 + (l * m) as f64 / width as f64);
                    acc = {
                        let t = x[n * width + m].mul(C64::new(theta.cos(), theta.sin()));
                        C64::new(acc.re + t.re, acc.im + t.im)
                    };
                }
            }
            out[k * width + l] = C64::new(acc.re * scale, acc.im * scale);
        }
    }
    out
}

/// Signed frequency of DFT bin `i` on an axis of length `n`, cycles/sample.
pub fn bin_frequency(i: usize, n: usize) -> f64 {
    if 2 * i < n {
        i as f64 / n as f64
    } else {
        (i as f64 - n as f64) / n as f64
    }
}

pub fn phase(row: usize, col: usize, width: usize, height: usize, s: f64, t: f64) -> f64 {
    let kn = bin_frequency(row, height);
    let km = bin_frequency(col, width);
    s * (-(kn * kn + km * km) / t).exp()
}

/// `IFFT{exp(-i phi) FFT{x + b}}` by direct summation.
pub fn propagate(input: &[f32], width: usize, height: usize, s: f64, t: f64, b: f64) -> Vec<C64> {
    let field: Vec<C64> = input.iter().map(|&x| C64::new(x as f64 + b, 0.0)).collect();
    let mut spectrum = naive_dft2(&field, width, height, false);
    for r in 0..height {
        for c in 0..width {
            let p = phase(r, c, width, height, s, t);
            let i = r * width + c;
            spectrum[i] = spectrum[i].mul(C64::new(p.cos(), -p.sin()));
        }
    }
    naive_dft2(&spectrum, width, height, true)
}

/// Detected phase, min-max normalized; zeros when the phase is numerically flat.
pub fn pipeline(
    input: &[f32],
    width: usize,
    height: usize,
    s: f64,
    t: f64,
    g: f64,
    b: f64,
) -> Vec<f64> {
    let field = propagate(input, width, height, s, t, b);
    let v: Vec<f64> = field.iter().map(|z| (g * z.im).atan2(z.re)).collect();
    let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo <= 1e-9 {
        return vec![0.0; v.len()];
    }
    v.iter().map(|x| (x - lo) / (hi - lo)).collect()
}
