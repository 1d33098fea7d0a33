use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use rustfft::FftPlanner;

use super::fft::Fft2d;
use super::grid::FrequencyGrid;
use super::kernel::PhaseKernel;
use super::{finish_phase_wide, wrap_phase, ComplexField, PhaseOutput};
use crate::color::Plane;
use crate::error::Result;
use crate::params::EnhanceParams;

/// Entries kept per cache before it is flushed.
const CACHE_CAPACITY: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct KernelKey {
    width: usize,
    height: usize,
    strength_bits: u32,
    variance_bits: u32,
}

/// Spectral transform with cached FFT plans and phase kernels.
///
/// Lookups take a shared lock; a miss builds the entry outside the lock and
/// inserts it under the write lock, keeping whichever entry landed first.
pub struct SpectralEngine {
    planner: Mutex<FftPlanner<f64>>,
    plans: RwLock<HashMap<(usize, usize), Arc<Fft2d>>>,
    kernels: RwLock<HashMap<KernelKey, Arc<PhaseKernel>>>,
    kernel_builds: AtomicUsize,
}

impl Default for SpectralEngine {
    fn default() -> Self {
        Self::new()
    }
}

impl SpectralEngine {
    pub fn new() -> Self {
        Self {
            planner: Mutex::new(FftPlanner::new()),
            plans: RwLock::new(HashMap::new()),
            kernels: RwLock::new(HashMap::new()),
            kernel_builds: AtomicUsize::new(0),
        }
    }

    /// Number of kernels computed so far (cache misses).
    pub fn kernel_builds(&self) -> usize {
        self.kernel_builds.load(Ordering::Relaxed)
    }

    pub fn kernel(
        &self,
        width: usize,
        height: usize,
        strength: f32,
        variance: f32,
    ) -> Result<Arc<PhaseKernel>> {
        let key = KernelKey {
            width,
            height,
            strength_bits: strength.to_bits(),
            variance_bits: variance.to_bits(),
        };
        if let Some(k) = self.kernels.read().unwrap().get(&key) {
            return Ok(Arc::clone(k));
        }
        let built = Arc::new(PhaseKernel::new(
            &FrequencyGrid::new(width, height),
            strength,
            variance,
        )?);
        self.kernel_builds.fetch_add(1, Ordering::Relaxed);
        let mut cache = self.kernels.write().unwrap();
        if cache.len() >= CACHE_CAPACITY && !cache.contains_key(&key) {
            cache.clear();
        }
        Ok(Arc::clone(cache.entry(key).or_insert(built)))
    }

    pub fn plan(&self, width: usize, height: usize) -> Arc<Fft2d> {
        if let Some(p) = self.plans.read().unwrap().get(&(width, height)) {
            return Arc::clone(p);
        }
        let built = Arc::new(Fft2d::new(&mut self.planner.lock().unwrap(), width, height));
        let mut cache = self.plans.write().unwrap();
        if cache.len() >= CACHE_CAPACITY && !cache.contains_key(&(width, height)) {
            cache.clear();
        }
        Arc::clone(cache.entry((width, height)).or_insert(built))
    }

    pub fn propagate(
        &self,
        input: &Plane,
        kernel: &PhaseKernel,
        bias: f32,
    ) -> Result<ComplexField> {
        self.plan(kernel.width(), kernel.height())
            .propagate(input, kernel, bias)
    }

    /// Full transform of one plane, reporting whether normalization degenerated.
    pub fn transform(&self, input: &Plane, params: &EnhanceParams) -> Result<PhaseOutput> {
        params.validate()?;
        let kernel = self.kernel(
            input.width(),
            input.height(),
            params.strength,
            params.variance,
        )?;
        let field =
            self.plan(input.width(), input.height())
                .propagate_wide(input, &kernel, params.bias)?;
        let gain = params.gain as f64;
        let phase: Vec<f64> = field
            .iter()
            .map(|z| wrap_phase((gain * z.im).atan2(z.re)))
            .collect();
        Ok(finish_phase_wide(
            input.width(),
            input.height(),
            &phase,
            params.norm,
        ))
    }
}
