//! Zero-padded FFT machinery for causal convolution and correlation.
//!
//! All products use a complex FFT of length >= 2L so linear convolution
//! never wraps. Plans and scratch are reused across channels.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

/// FFT plans of one padded size, reusable across channels and calls.
pub struct ConvEngine {
    pub n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
}

impl ConvEngine {
    /// Engine for signals of length `len` (padded to the next power of two >= 2*len).
    pub fn for_len(len: usize) -> Self {
        let n = (2 * len.max(1)).next_power_of_two();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let scratch_len = fwd
            .get_inplace_scratch_len()
            .max(inv.get_inplace_scratch_len());
        ConvEngine {
            n,
            fwd,
            inv,
            scratch: vec![Complex64::ZERO; scratch_len],
        }
    }

    /// Spectrum of a real signal zero-padded to the engine size.
    pub fn spectrum(&mut self, x: &[f64]) -> Vec<Complex64> {
        let mut buf = vec![Complex64::ZERO; self.n];
        for (b, &v) in buf.iter_mut().zip(x) {
            b.re = v;
        }
        self.fwd.process_with_scratch(&mut buf, &mut self.scratch);
        buf
    }

    /// First `out_len` samples of ifft(spec), real parts, 1/n normalized.
    fn inverse(&mut self, mut spec: Vec<Complex64>, out_len: usize) -> Vec<f64> {
        self.inv.process_with_scratch(&mut spec, &mut self.scratch);
        let scale = 1.0 / self.n as f64;
        spec[..out_len].iter().map(|c| c.re * scale).collect()
    }

    /// Causal convolution `y[t] = sum_{j<=t} k[j] x[t-j]` given the kernel spectrum.
    pub fn convolve(&mut self, k_spec: &[Complex64], x: &[f64], out_len: usize) -> Vec<f64> {
        let mut spec = self.spectrum(x);
        for (s, k) in spec.iter_mut().zip(k_spec) {
            *s *= k;
        }
        self.inverse(spec, out_len)
    }

    /// Cross-correlation `c[t] = sum_j k[j] g[t+j]` given the kernel spectrum.
    ///
    /// This is the adjoint of `convolve`: it backpropagates an output
    /// gradient `g` to the input, and with roles swapped to the kernel.
    pub fn correlate(&mut self, k_spec: &[Complex64], g: &[f64], out_len: usize) -> Vec<f64> {
        let mut spec = self.spectrum(g);
        for (s, k) in spec.iter_mut().zip(k_spec) {
            *s *= k.conj();
        }
        self.inverse(spec, out_len)
    }
}
