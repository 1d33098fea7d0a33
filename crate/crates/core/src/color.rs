//! Image containers and RGB ↔ HSV conversion.
//!
//! HSV follows the hexcone (max/min) model. Hue is stored as a fraction of a
//! full turn in `[0, 1)` and is defined as 0 for achromatic pixels; saturation
//! is 0 for black. The forward map is precise enough that
//! `hsv_to_rgb(rgb_to_hsv(x)) == x` for every 8-bit triple.

use crate::error::{Error, Result};

/// Single-channel image of `f32` samples in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane {
    width: usize,
    height: usize,
    data: Vec<f32>,
}

impl Plane {
    pub fn new(width: usize, height: usize, data: Vec<f32>) -> Result<Self> {
        check_dims(width, height)?;
        if data.len() != width * height {
            return Err(Error::Image(format!(
                "plane of {width}x{height} needs {} samples, got {}",
                width * height,
                data.len()
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, value: f32) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> f32,
    ) -> Result<Self> {
        check_dims(width, height)?;
        let mut data = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                data.push(f(row, col));
            }
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Builds a plane from a buffer whose length the caller already checked.
    pub(crate) fn from_parts(width: usize, height: usize, data: Vec<f32>) -> Self {
        debug_assert_eq!(data.len(), width * height);
        Self {
            width,
            height,
            data,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f32> {
        self.data
    }

    /// Sample at `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> f32 {
        self.data[row * self.width + col]
    }

    pub fn same_geometry(&self, other: &Plane) -> bool {
        self.width == other.width && self.height == other.height
    }

    pub fn map(&self, f: impl Fn(f32) -> f32) -> Plane {
        Plane::from_parts(
            self.width,
            self.height,
            self.data.iter().map(|&x| f(x)).collect(),
        )
    }
}

/// Interleaved 8-bit RGB image, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        check_dims(width, height)?;
        if data.len() != width * height * 3 {
            return Err(Error::Image(format!(
                "RGB image of {width}x{height} needs {} bytes, got {}",
                width * height * 3,
                data.len()
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub(crate) fn from_parts(width: usize, height: usize, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), width * height * 3);
        Self {
            width,
            height,
            data,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    pub fn pixel(&self, row: usize, col: usize) -> [u8; 3] {
        let i = (row * self.width + col) * 3;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }
}

/// Planar HSV image; every channel is in the unit interval.
#[derive(Debug, Clone, PartialEq)]
pub struct HsvImage {
    pub h: Plane,
    pub s: Plane,
    pub v: Plane,
}

impl HsvImage {
    pub fn new(h: Plane, s: Plane, v: Plane) -> Result<Self> {
        if !h.same_geometry(&s) || !h.same_geometry(&v) {
            return Err(Error::Geometry {
                expected_width: h.width(),
                expected_height: h.height(),
                width: if h.same_geometry(&s) {
                    v.width()
                } else {
                    s.width()
                },
                height: if h.same_geometry(&s) {
                    v.height()
                } else {
                    s.height()
                },
            });
        }
        Ok(Self { h, s, v })
    }

    pub fn width(&self) -> usize {
        self.h.width()
    }

    pub fn height(&self) -> usize {
        self.h.height()
    }
}

fn check_dims(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::Image(format!(
            "dimensions must be at least 1x1, got {width}x{height}"
        )));
    }
    Ok(())
}

/// Converts one 8-bit RGB triple to `(h, s, v)`.
#[inline]
pub fn rgb_pixel_to_hsv(r: u8, g: u8, b: u8) -> (f32, f32, f32) {
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let v = value_of_level(max);
    if max == 0 {
        return (0.0, 0.0, 0.0);
    }
    let delta = (max - min) as f32;
    let s = delta / max as f32;
    if max == min {
        return (0.0, s, v);
    }
    let (rf, gf, bf) = (r as f32, g as f32, b as f32);
    let sixths = if max == r {
        let h = (gf - bf) / delta;
        if h < 0.0 {
            h + 6.0
        } else {
            h
        }
    } else if max == g {
        2.0 + (bf - rf) / delta
    } else {
        4.0 + (rf - gf) / delta
    };
    let mut h = sixths / 6.0;
    if h >= 1.0 {
        h -= 1.0;
    }
    (h, s, v)
}

/// Unit-interval value of an 8-bit level, as used for the `v` channel.
#[inline]
pub fn value_of_level(level: u8) -> f32 {
    level as f32 / 255.0
}

/// Converts `(h, s, v)` back to an 8-bit triple with round-half-up quantization.
#[inline]
pub fn hsv_pixel_to_rgb(h: f32, s: f32, v: f32) -> [u8; 3] {
    if s <= 0.0 {
        let q = quantize(v);
        return [q, q, q];
    }
    let sixths = h * 6.0;
    let sector = (sixths.floor() as i32).rem_euclid(6);
    let frac = sixths - sixths.floor();
    let p = v * (1.0 - s);
    let q = v * (1.0 - s * frac);
    let t = v * (1.0 - s * (1.0 - frac));
    let (r, g, b) = match sector {
        0 => (v, t, p),
        1 => (q, v, p),
        2 => (p, v, t),
        3 => (p, q, v),
        4 => (t, p, v),
        _ => (v, p, q),
    };
    [quantize(r), quantize(g), quantize(b)]
}

/// Gives a pixel the value `value` while keeping its hue and saturation.
///
/// In the hexcone model every channel is proportional to `v` at fixed `h` and
/// `s`, so this is a rescale by `value / v`. The brightest channel lands on
/// exactly `quantize(value)`; an achromatic black pixel becomes gray.
#[inline]
pub fn rescale_value(px: [u8; 3], value: f32) -> [u8; 3] {
    let max = px[0].max(px[1]).max(px[2]);
    px.map(|c| rescale_channel(c, max, value))
}

/// One channel of [`rescale_value`] for a pixel whose brightest level is `max`.
#[inline]
pub fn rescale_channel(c: u8, max: u8, value: f32) -> u8 {
    if c == max {
        return quantize(value);
    }
    let scaled = value * 255.0 * (c as f32 / max as f32);
    (scaled + 0.5).floor().clamp(0.0, 255.0) as u8
}

/// Round-half-up quantization of a unit-interval sample; out-of-range input saturates.
#[inline]
pub fn quantize(x: f32) -> u8 {
    (x * 255.0 + 0.5).floor().clamp(0.0, 255.0) as u8
}

pub fn rgb_to_hsv(img: &RgbImage) -> HsvImage {
    let n = img.width * img.height;
    let mut h = Vec::with_capacity(n);
    let mut s = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    for px in img.data.chunks_exact(3) {
        let (ph, ps, pv) = rgb_pixel_to_hsv(px[0], px[1], px[2]);
        h.push(ph);
        s.push(ps);
        v.push(pv);
    }
    HsvImage {
        h: Plane::from_parts(img.width, img.height, h),
        s: Plane::from_parts(img.width, img.height, s),
        v: Plane::from_parts(img.width, img.height, v),
    }
}

pub fn hsv_to_rgb(img: &HsvImage) -> RgbImage {
    let (width, height) = (img.width(), img.height());
    let mut data = Vec::with_capacity(width * height * 3);
    for ((&h, &s), &v) in img.h.data.iter().zip(&img.s.data).zip(&img.v.data) {
        data.extend_from_slice(&hsv_pixel_to_rgb(h, s, v));
    }
    RgbImage {
        width,
        height,
        data,
    }
}

/// Quantizes a unit-interval plane to 8 bits.
pub fn plane_to_u8(p: &Plane) -> Result<Vec<u8>> {
    p.data
        .iter()
        .enumerate()
        .map(|(index, &value)| {
            if (0.0..=1.0).contains(&value) {
                Ok(quantize(value))
            } else {
                Err(Error::OutOfRange { index, value })
            }
        })
        .collect()
}
