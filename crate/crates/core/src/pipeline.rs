//! End-to-end enhancement of RGB images and raw frame streams.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::color::{
    hsv_to_rgb, rescale_channel, rgb_to_hsv, value_of_level, HsvImage, Plane, RgbImage,
};
use crate::error::{Error, Result};
use crate::lite::{vevid_lite_with, LiteParams, ToneLut};
use crate::params::{EnhanceParams, Mode, PathKind};
use crate::spectral::{PhaseOutput, SpectralEngine};

/// Enhanced image plus the degenerate-normalization flag of its channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enhanced {
    pub image: RgbImage,
    pub degenerate: bool,
}

/// Ordered frames of interleaved 8-bit RGB sharing one geometry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameStream {
    width: usize,
    height: usize,
    frames: Vec<Vec<u8>>,
}

impl FrameStream {
    pub fn new(width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Image(format!(
                "stream geometry must be at least 1x1, got {width}x{height}"
            )));
        }
        Ok(Self {
            width,
            height,
            frames: Vec::new(),
        })
    }

    pub fn from_frames(width: usize, height: usize, frames: Vec<Vec<u8>>) -> Result<Self> {
        let mut stream = Self::new(width, height)?;
        for frame in frames {
            stream.push(frame)?;
        }
        Ok(stream)
    }

    pub fn frame_len(&self) -> usize {
        self.width * self.height * 3
    }

    pub fn push(&mut self, frame: Vec<u8>) -> Result<()> {
        if frame.len() != self.frame_len() {
            return Err(Error::Image(format!(
                "frame {} has {} bytes, stream of {}x{} expects {}",
                self.frames.len(),
                frame.len(),
                self.width,
                self.height,
                self.frame_len()
            )));
        }
        self.frames.push(frame);
        Ok(())
    }

    pub fn push_image(&mut self, img: RgbImage) -> Result<()> {
        if img.width() != self.width || img.height() != self.height {
            return Err(Error::Geometry {
                expected_width: self.width,
                expected_height: self.height,
                width: img.width(),
                height: img.height(),
            });
        }
        self.push(img.into_data())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn frames(&self) -> &[Vec<u8>] {
        &self.frames
    }

    pub fn into_frames(self) -> Vec<Vec<u8>> {
        self.frames
    }
}

/// Enhancement front end holding the spectral plan and kernel caches.
#[derive(Default)]
pub struct Enhancer {
    engine: SpectralEngine,
}

impl Enhancer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn engine(&self) -> &SpectralEngine {
        &self.engine
    }

    /// Runs the selected path on a single unit-interval plane.
    pub fn enhance_plane(&self, plane: &Plane, params: &EnhanceParams) -> Result<PhaseOutput> {
        params.validate()?;
        match params.path {
            PathKind::Full => self.engine.transform(plane, params),
            PathKind::Lite => Ok(vevid_lite_with(
                plane,
                &LiteParams::try_from(params)?,
                params.norm,
            )),
        }
    }

    /// Replaces the mode's channel; the other two planes are moved through untouched.
    pub fn enhance_hsv(&self, hsv: HsvImage, params: &EnhanceParams) -> Result<(HsvImage, bool)> {
        let HsvImage { h, s, v } = hsv;
        Ok(match params.mode {
            Mode::LowLight => {
                let out = self.enhance_plane(&v, params)?;
                (HsvImage { h, s, v: out.plane }, out.degenerate)
            }
            Mode::Color => {
                let out = self.enhance_plane(&s, params)?;
                (HsvImage { h, s: out.plane, v }, out.degenerate)
            }
        })
    }

    pub fn enhance(&self, img: &RgbImage, params: &EnhanceParams) -> Result<Enhanced> {
        let mut data = Vec::new();
        let degenerate = self.enhance_into(img, params, &mut data)?;
        Ok(Enhanced {
            image: RgbImage::from_parts(img.width(), img.height(), data),
            degenerate,
        })
    }

    /// Like [`Enhancer::enhance`], writing the output pixels into `out`.
    ///
    /// `out` is cleared and refilled, so a video loop can recycle one buffer
    /// across frames. Returns the degenerate-normalization flag.
    pub fn enhance_into(
        &self,
        img: &RgbImage,
        params: &EnhanceParams,
        out: &mut Vec<u8>,
    ) -> Result<bool> {
        params.validate()?;
        out.clear();
        out.reserve(img.data().len());
        match (params.mode, params.path) {
            (Mode::LowLight, PathKind::Lite) => self.lowlight_lite_into(img, params, out),
            (Mode::LowLight, PathKind::Full) => {
                let levels: Vec<u8> = img.data().chunks_exact(3).map(max_level).collect();
                let v = Plane::from_parts(
                    img.width(),
                    img.height(),
                    levels.iter().map(|&l| value_of_level(l)).collect(),
                );
                let result = self.engine.transform(&v, params)?;
                for (px, (&max, &value)) in img
                    .data()
                    .chunks_exact(3)
                    .zip(levels.iter().zip(result.plane.data()))
                {
                    out.extend(px.iter().map(|&c| rescale_channel(c, max, value)));
                }
                Ok(result.degenerate)
            }
            (Mode::Color, _) => {
                let (hsv, degenerate) = self.enhance_hsv(rgb_to_hsv(img), params)?;
                out.extend_from_slice(hsv_to_rgb(&hsv).data());
                Ok(degenerate)
            }
        }
    }

    /// Low-light lite path as table lookups.
    ///
    /// `v` of an 8-bit image only takes the 256 values `k / 255`, so the tone
    /// curve normalized over the frame's darkest and brightest level is a
    /// 256-entry table, and every output channel depends only on the pixel's
    /// own level and its brightest level.
    fn lowlight_lite_into(
        &self,
        img: &RgbImage,
        params: &EnhanceParams,
        out: &mut Vec<u8>,
    ) -> Result<bool> {
        let lite = LiteParams::try_from(params)?;
        let (mut lo, mut hi) = (u8::MAX, u8::MIN);
        for px in img.data().chunks_exact(3) {
            let level = max_level(px);
            lo = lo.min(level);
            hi = hi.max(level);
        }
        let lut = ToneLut::spanning(lite, lo, hi, params.norm);
        let mut table = vec![0u8; 256 * 256];
        for max in lo..=hi {
            let row = &mut table[max as usize * 256..][..=max as usize];
            for (c, slot) in row.iter_mut().enumerate() {
                *slot = rescale_channel(c as u8, max, lut.get(max));
            }
        }
        for px in img.data().chunks_exact(3) {
            let row = &table[max_level(px) as usize * 256..][..256];
            out.extend_from_slice(&[
                row[px[0] as usize],
                row[px[1] as usize],
                row[px[2] as usize],
            ]);
        }
        Ok(lut.is_degenerate())
    }

    /// Enhances one raw frame of `width x height` interleaved RGB bytes.
    pub fn enhance_frame(
        &self,
        frame: &[u8],
        width: usize,
        height: usize,
        params: &EnhanceParams,
    ) -> Result<Vec<u8>> {
        let img = RgbImage::new(width, height, frame.to_vec())?;
        Ok(self.enhance(&img, params)?.image.into_data())
    }

    /// Prepares caches so concurrent frames of this geometry never rebuild them.
    pub fn warm(&self, width: usize, height: usize, params: &EnhanceParams) -> Result<()> {
        params.validate()?;
        if params.path == PathKind::Full {
            self.engine
                .kernel(width, height, params.strength, params.variance)?;
            self.engine.plan(width, height);
        }
        Ok(())
    }

    /// Enhances a batch of frames concurrently, keeping input order.
    pub fn enhance_frames(
        &self,
        frames: &[Vec<u8>],
        width: usize,
        height: usize,
        params: &EnhanceParams,
    ) -> Result<Vec<Vec<u8>>> {
        self.warm(width, height, params)?;
        frames
            .par_iter()
            .map(|f| self.enhance_frame(f, width, height, params))
            .collect()
    }

    /// Enhances a batch of images concurrently, keeping input order.
    pub fn enhance_images(
        &self,
        images: &[RgbImage],
        params: &EnhanceParams,
    ) -> Result<Vec<Enhanced>> {
        let Some(first) = images.first() else {
            return Ok(Vec::new());
        };
        self.warm(first.width(), first.height(), params)?;
        images
            .par_iter()
            .map(|img| self.enhance(img, params))
            .collect()
    }

    pub fn enhance_stream(
        &self,
        stream: &FrameStream,
        params: &EnhanceParams,
    ) -> Result<FrameStream> {
        let frames = self.enhance_frames(stream.frames(), stream.width, stream.height, params)?;
        Ok(FrameStream {
            width: stream.width,
            height: stream.height,
            frames,
        })
    }
}

#[inline]
fn max_level(px: &[u8]) -> u8 {
    px[0].max(px[1]).max(px[2])
}

fn shared() -> &'static Enhancer {
    static ENHANCER: OnceLock<Enhancer> = OnceLock::new();
    ENHANCER.get_or_init(Enhancer::new)
}

pub fn enhance(img: &RgbImage, params: &EnhanceParams) -> Result<RgbImage> {
    Ok(shared().enhance(img, params)?.image)
}

pub fn enhance_stream(stream: &FrameStream, params: &EnhanceParams) -> Result<FrameStream> {
    shared().enhance_stream(stream, params)
}
