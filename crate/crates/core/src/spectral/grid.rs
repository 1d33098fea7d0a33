/// Normalized spatial frequencies of a `width x height` DFT, in cycles/pixel.
///
/// Both axes use the unshifted FFT layout: index 0 is DC, positive
/// frequencies come first and the Nyquist bin of an even axis is `-0.5`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    width: usize,
    height: usize,
    /// One entry per row.
    kn: Vec<f64>,
    /// One entry per column.
    km: Vec<f64>,
}

impl FrequencyGrid {
    pub fn new(width: usize, height: usize) -> Self {
        assert!(
            width >= 1 && height >= 1,
            "grid needs at least one sample per axis"
        );
        Self {
            width,
            height,
            kn: frequency_axis(height),
            km: frequency_axis(width),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn row_frequencies(&self) -> &[f64] {
        &self.kn
    }

    pub fn col_frequencies(&self) -> &[f64] {
        &self.km
    }
}

pub fn make_frequency_grid(width: usize, height: usize) -> FrequencyGrid {
    FrequencyGrid::new(width, height)
}

fn frequency_axis(n: usize) -> Vec<f64> {
    let positive = n.div_ceil(2);
    (0..n)
        .map(|i| {
            let k = if i < positive {
                i as f64
            } else {
                i as f64 - n as f64
            };
            k / n as f64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_layouts() {
        assert_eq!(frequency_axis(4), vec![0.0, 0.25, -0.5, -0.25]);
        assert_eq!(frequency_axis(1), vec![0.0]);
        assert_eq!(frequency_axis(5), vec![0.0, 0.2, 0.4, -0.4, -0.2]);
    }

    #[test]
    fn grid_ranges() {
        for n in 1..40 {
            let g = FrequencyGrid::new(n, n + 3);
            for &k in g.row_frequencies().iter().chain(g.col_frequencies()) {
                assert!((-0.5..0.5).contains(&k));
            }
            assert_eq!(g.col_frequencies()[0], 0.0);
            assert_eq!(g.row_frequencies().len(), n + 3);
        }
    }
}
