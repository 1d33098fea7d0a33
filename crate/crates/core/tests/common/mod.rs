#![allow(dead_code)]

use vevid_core::io::read_image;
use vevid_core::{Plane, RgbImage};
#[allow(unused_imports)]
pub use vevid_testkit::oracle;

/// The bundled low-light corpus, in file order.
pub fn corpus() -> Vec<(String, RgbImage)> {
    vevid_testkit::corpus_files()
        .into_iter()
        .map(|path| {
            let (img, _) = read_image(&path).expect("corpus image");
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, img)
        })
        .collect()
}

pub fn random_plane(width: usize, height: usize, seed: u64) -> Plane {
    Plane::new(
        width,
        height,
        vevid_testkit::random_values(width * height, seed),
    )
    .unwrap()
}

pub fn random_image(width: usize, height: usize, seed: u64) -> RgbImage {
    RgbImage::new(
        width,
        height,
        vevid_testkit::random_bytes(width * height * 3, seed),
    )
    .unwrap()
}
