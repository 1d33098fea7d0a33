//! Still-image codecs: PNG and binary PPM, 8-bit RGB.

use std::io::Cursor;
use std::path::Path;

use image::codecs::png::PngEncoder;
use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
use image::{ExtendedColorType, ImageEncoder, ImageError, ImageFormat, ImageReader};

use crate::color::RgbImage;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StillFormat {
    Png,
    Ppm,
}

impl StillFormat {
    pub fn from_extension(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "png" => Some(StillFormat::Png),
            "ppm" | "pnm" => Some(StillFormat::Ppm),
            _ => None,
        }
    }
}

pub fn decode(bytes: &[u8]) -> std::result::Result<(RgbImage, StillFormat), ImageError> {
    let reader = ImageReader::new(Cursor::new(bytes)).with_guessed_format()?;
    let format = match reader.format() {
        Some(ImageFormat::Png) => StillFormat::Png,
        Some(ImageFormat::Pnm) => StillFormat::Ppm,
        other => {
            return Err(ImageError::Unsupported(
                image::error::UnsupportedError::from_format_and_kind(
                    other
                        .map(Into::into)
                        .unwrap_or(image::error::ImageFormatHint::Unknown),
                    image::error::UnsupportedErrorKind::Format(
                        image::error::ImageFormatHint::Name("only PNG and PPM".into()),
                    ),
                ),
            ))
        }
    };
    let rgb = reader.decode()?.to_rgb8();
    let (w, h) = (rgb.width() as usize, rgb.height() as usize);
    let img = RgbImage::new(w, h, rgb.into_raw()).map_err(|e| {
        ImageError::Parameter(image::error::ParameterError::from_kind(
            image::error::ParameterErrorKind::Generic(e.to_string()),
        ))
    })?;
    Ok((img, format))
}

pub fn encode(img: &RgbImage, format: StillFormat) -> std::result::Result<Vec<u8>, ImageError> {
    let mut out = Vec::new();
    let (w, h) = (img.width() as u32, img.height() as u32);
    match format {
        StillFormat::Png => {
            PngEncoder::new(&mut out).write_image(img.data(), w, h, ExtendedColorType::Rgb8)?
        }
        StillFormat::Ppm => PnmEncoder::new(&mut out)
            .with_subtype(PnmSubtype::Pixmap(SampleEncoding::Binary))
            .write_image(img.data(), w, h, ExtendedColorType::Rgb8)?,
    }
    Ok(out)
}

pub fn read_image(path: &Path) -> Result<(RgbImage, StillFormat)> {
    let read_err = |source| Error::Read {
        path: path.to_path_buf(),
        source,
    };
    let bytes = std::fs::read(path).map_err(|e| read_err(ImageError::IoError(e)))?;
    decode(&bytes).map_err(read_err)
}

pub fn write_image(path: &Path, img: &RgbImage, format: StillFormat) -> Result<()> {
    let write_err = |source| Error::Write {
        path: path.to_path_buf(),
        source,
    };
    let bytes = encode(img, format).map_err(write_err)?;
    std::fs::write(path, bytes).map_err(|e| write_err(ImageError::IoError(e)))
}
