//! Deterministic synthetic frames for tests, calibration and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::color::{hsv_pixel_to_rgb, RgbImage};

/// `(width, height, seed)` of each scene in the bundled corpus, in file order.
pub const CORPUS_SCENES: [(usize, usize, u64); 12] = [
    (160, 120, 101),
    (200, 150, 102),
    (240, 160, 103),
    (256, 192, 104),
    (320, 240, 105),
    (192, 192, 106),
    (300, 200, 107),
    (128, 96, 108),
    (240, 180, 109),
    (320, 180, 110),
    (224, 168, 111),
    (180, 240, 112),
];

/// File name of corpus scene `index`.
pub fn corpus_file_name(index: usize) -> String {
    format!("scene_{index:02}.ppm")
}

/// Uniformly random 8-bit RGB frame.
pub fn random_rgb(width: usize, height: usize, seed: u64) -> RgbImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = vec![0u8; width * height * 3];
    rng.fill(&mut data[..]);
    RgbImage::new(width, height, data).expect("non-empty geometry")
}

/// Bilinearly interpolated lattice noise, one octave.
struct Lattice {
    cells: usize,
    values: Vec<f32>,
}

impl Lattice {
    fn new(cells: usize, rng: &mut impl Rng) -> Self {
        let n = cells + 1;
        Self {
            cells,
            values: (0..n * n).map(|_| rng.gen()).collect(),
        }
    }

    /// `u`, `v` in `[0, 1]`.
    fn sample(&self, u: f32, v: f32) -> f32 {
        let n = self.cells + 1;
        let x = u * self.cells as f32;
        let y = v * self.cells as f32;
        let x0 = (x.floor() as usize).min(self.cells - 1);
        let y0 = (y.floor() as usize).min(self.cells - 1);
        let fx = smooth(x - x0 as f32);
        let fy = smooth(y - y0 as f32);
        let at = |cx: usize, cy: usize| self.values[cy * n + cx];
        let top = at(x0, y0) * (1.0 - fx) + at(x0 + 1, y0) * fx;
        let bottom = at(x0, y0 + 1) * (1.0 - fx) + at(x0 + 1, y0 + 1) * fx;
        top * (1.0 - fy) + bottom * fy
    }
}

fn smooth(t: f32) -> f32 {
    t * t * (3.0 - 2.0 * t)
}

struct Fractal(Vec<Lattice>);

impl Fractal {
    fn new(octaves: usize, base_cells: usize, rng: &mut impl Rng) -> Self {
        Self(
            (0..octaves)
                .map(|o| Lattice::new(base_cells << o, rng))
                .collect(),
        )
    }

    fn sample(&self, u: f32, v: f32) -> f32 {
        let mut total = 0.0;
        let mut norm = 0.0;
        let mut amp = 1.0;
        for octave in &self.0 {
            total += amp * octave.sample(u, v);
            norm += amp;
            amp *= 0.55;
        }
        total / norm
    }
}

enum Shape {
    Rect { x0: f32, y0: f32, x1: f32, y1: f32 },
    Disc { cx: f32, cy: f32, r: f32 },
}

struct Object {
    shape: Shape,
    hue: f32,
    saturation: f32,
    albedo: f32,
}

impl Object {
    fn contains(&self, u: f32, v: f32, aspect: f32) -> bool {
        match self.shape {
            Shape::Rect { x0, y0, x1, y1 } => (x0..x1).contains(&u) && (y0..y1).contains(&v),
            Shape::Disc { cx, cy, r } => {
                let dx = (u - cx) * aspect;
                let dy = v - cy;
                dx * dx + dy * dy < r * r
            }
        }
    }
}

struct Lamp {
    cx: f32,
    cy: f32,
    radius: f32,
    power: f32,
}

/// A dim scene: textured surfaces and objects under weak ambient light with
/// a few local light pools, plus sensor noise.
///
/// Mean brightness lands roughly in `0.05..0.25`.
pub fn low_light_scene(width: usize, height: usize, seed: u64) -> RgbImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let aspect = width as f32 / height as f32;
    let texture = Fractal::new(5, 3, &mut rng);
    let tint = Fractal::new(2, 2, &mut rng);
    let background_hue: f32 = rng.gen();

    let objects: Vec<Object> = (0..rng.gen_range(4..9))
        .map(|_| {
            let shape = if rng.gen_bool(0.5) {
                let (x0, y0) = (rng.gen_range(0.0..0.8), rng.gen_range(0.0..0.8));
                Shape::Rect {
                    x0,
                    y0,
                    x1: x0 + rng.gen_range(0.08..0.35),
                    y1: y0 + rng.gen_range(0.08..0.35),
                }
            } else {
                Shape::Disc {
                    cx: rng.gen(),
                    cy: rng.gen(),
                    r: rng.gen_range(0.05..0.2),
                }
            };
            Object {
                shape,
                hue: rng.gen(),
                saturation: rng.gen_range(0.2..0.9),
                albedo: rng.gen_range(0.3..1.0),
            }
        })
        .collect();

    let lamps: Vec<Lamp> = (0..rng.gen_range(1..4))
        .map(|_| Lamp {
            cx: rng.gen(),
            cy: rng.gen(),
            radius: rng.gen_range(0.08..0.3),
            power: rng.gen_range(0.3..0.9),
        })
        .collect();
    let ambient: f32 = rng.gen_range(0.04..0.12);
    let noise_sigma: f32 = rng.gen_range(0.002..0.01);

    let mut data = Vec::with_capacity(width * height * 3);
    for row in 0..height {
        let v = (row as f32 + 0.5) / height as f32;
        for col in 0..width {
            let u = (col as f32 + 0.5) / width as f32;
            let tex = texture.sample(u, v);
            let (mut hue, mut sat, mut albedo) = (
                (background_hue + 0.15 * tint.sample(u, v)).fract(),
                0.15 + 0.3 * tint.sample(v, u),
                0.25 + 0.5 * tex,
            );
            for obj in objects.iter().rev() {
                if obj.contains(u, v, aspect) {
                    hue = obj.hue;
                    sat = obj.saturation;
                    albedo = obj.albedo * (0.7 + 0.3 * tex);
                    break;
                }
            }
            let light = ambient
                + lamps
                    .iter()
                    .map(|l| {
                        let dx = (u - l.cx) * aspect;
                        let dy = v - l.cy;
                        l.power * (-(dx * dx + dy * dy) / (2.0 * l.radius * l.radius)).exp()
                    })
                    .sum::<f32>();
            let noise = noise_sigma * rng.sample::<f32, _>(StandardNormal);
            let value = (albedo * light + noise).clamp(0.0, 1.0);
            data.extend_from_slice(&hsv_pixel_to_rgb(hue, sat.clamp(0.0, 1.0), value));
        }
    }
    RgbImage::new(width, height, data).expect("non-empty geometry")
}
