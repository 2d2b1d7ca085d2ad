//! Diagonal linear state-space memory module.
//!
//! A continuous-time diagonal system `dh/dt = diag(lambda) h + b x`,
//! `y = c h + d x` is discretized per channel by zero-order hold and
//! materialized either as a convolution kernel (parallel mode, FFT) or
//! run as a sequential scan. The two paths agree to float64 roundoff.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fftconv::ConvEngine;
use crate::seq::Seq;

/// Cumulative-powers path is used up to this length; beyond it powers are
/// taken in log space (`a^j = exp(j z)`) so decayed modes underflow
/// gracefully instead of losing phase accuracy.
const POWERS_LOG_SPACE_MIN_LEN: usize = 257;

/// Continuous-time diagonal SSM parameters for one layer.
///
/// The stored eigenvalue vector has `n_stored` entries; with `paired`
/// set, each entry stands for itself plus its complex conjugate, so the
/// logical state dimension doubles and kernels come out real by
/// doubling the real part of the readout sum. The real part of every
/// eigenvalue is stored as `log(-Re lambda)` so no gradient step can
/// push it out of the stable half-plane.
#[derive(Debug, Clone, PartialEq)]
pub struct SsmLayerParams {
    /// log(-Re lambda), length n_stored
    pub log_neg_re: Vec<f64>,
    /// Im lambda, length n_stored
    pub lambda_im: Vec<f64>,
    /// input map B, length n_stored
    pub b_re: Vec<f64>,
    pub b_im: Vec<f64>,
    /// readout C, `[channels x n_stored]` row-major
    pub c_re: Vec<f64>,
    pub c_im: Vec<f64>,
    /// feedthrough D, length channels
    pub d_skip: Vec<f64>,
    /// log discretization step, one per channel
    pub log_dt: Vec<f64>,
    pub channels: usize,
    pub n_stored: usize,
    pub paired: bool,
}

impl SsmLayerParams {
    /// Builds from explicit continuous-time values, rejecting unstable or
    /// singular eigenvalues. `c_out` is indexed `[channel][state]`.
    pub fn from_continuous(
        lambda: &[Complex64],
        b_in: &[Complex64],
        c_out: &[Vec<Complex64>],
        d_skip: Vec<f64>,
        log_dt: Vec<f64>,
        paired: bool,
    ) -> Result<Self> {
        let n = lambda.len();
        let h = c_out.len();
        if b_in.len() != n {
            return Err(Error::Shape(format!(
                "b_in has {} entries, expected {}",
                b_in.len(),
                n
            )));
        }
        if c_out.iter().any(|row| row.len() != n) || d_skip.len() != h || log_dt.len() != h {
            return Err(Error::Shape("inconsistent c/d/dt shapes".into()));
        }
        for (i, l) in lambda.iter().enumerate() {
            if l.re == 0.0 && l.im == 0.0 {
                return Err(Error::Singularity { index: i });
            }
            if l.re >= 0.0 {
                return Err(Error::Stability { index: i, re: l.re });
            }
        }
        let mut c_re = Vec::with_capacity(h * n);
        let mut c_im = Vec::with_capacity(h * n);
        for row in c_out {
            for c in row {
                c_re.push(c.re);
                c_im.push(c.im);
            }
        }
        Ok(SsmLayerParams {
            log_neg_re: lambda.iter().map(|l| (-l.re).ln()).collect(),
            lambda_im: lambda.iter().map(|l| l.im).collect(),
            b_re: b_in.iter().map(|b| b.re).collect(),
            b_im: b_in.iter().map(|b| b.im).collect(),
            c_re,
            c_im,
            d_skip,
            log_dt,
            channels: h,
            n_stored: n,
            paired,
        })
    }

    #[inline]
    pub fn lambda(&self, n: usize) -> Complex64 {
        Complex64::new(-self.log_neg_re[n].exp(), self.lambda_im[n])
    }

    #[inline]
    pub fn b_in(&self, n: usize) -> Complex64 {
        Complex64::new(self.b_re[n], self.b_im[n])
    }

    #[inline]
    pub fn c_out(&self, h: usize, n: usize) -> Complex64 {
        let i = h * self.n_stored + n;
        Complex64::new(self.c_re[i], self.c_im[i])
    }

    #[inline]
    pub fn dt(&self, h: usize) -> f64 {
        self.log_dt[h].exp()
    }

    /// Logical state dimension (doubled when conjugate pairs are implicit).
    pub fn state_dim(&self) -> usize {
        if self.paired {
            2 * self.n_stored
        } else {
            self.n_stored
        }
    }

    /// Factor applied to the real part of readout sums.
    #[inline]
    pub fn readout_scale(&self) -> f64 {
        if self.paired {
            2.0
        } else {
            1.0
        }
    }
}

/// One channel's ZOH-discretized system.
#[derive(Debug, Clone)]
pub struct DiscreteSsm {
    pub a_bar: Vec<Complex64>,
    pub b_bar: Vec<Complex64>,
}

/// Materialized convolution kernel, `[channels x len]`.
#[derive(Debug, Clone)]
pub struct SsmKernel {
    pub k: Seq,
}

/// Zero-order-hold discretization for one channel's step size:
/// `a_bar = exp(dt*lambda)`, `b_bar = lambda^-1 (exp(dt*lambda) - 1) b`.
///
/// Stability and invertibility are enforced when the parameters are
/// constructed, so this cannot fail afterwards.
pub fn discretize_zoh(params: &SsmLayerParams, channel: usize) -> DiscreteSsm {
    let dt = params.dt(channel);
    let n = params.n_stored;
    let mut a_bar = Vec::with_capacity(n);
    let mut b_bar = Vec::with_capacity(n);
    for i in 0..n {
        let lambda = params.lambda(i);
        let a = (lambda * dt).exp();
        a_bar.push(a);
        b_bar.push((a - 1.0) / lambda * params.b_in(i));
    }
    DiscreteSsm { a_bar, b_bar }
}

/// Writes `exp(j*z)` for j in [0, l) into `out`.
///
/// Short kernels use cumulative products of `exp(z)`; long ones evaluate
/// in log space so `|a|^j` underflows without polluting the phase.
pub(crate) fn power_sequence(z: Complex64, l: usize, out: &mut [Complex64]) {
    debug_assert_eq!(out.len(), l);
    if l == 0 {
        return;
    }
    if l < POWERS_LOG_SPACE_MIN_LEN {
        let a = z.exp();
        let mut p = Complex64::new(1.0, 0.0);
        for slot in out.iter_mut() {
            *slot = p;
            p *= a;
        }
    } else {
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = (z * j as f64).exp();
        }
    }
}

/// Materializes the length-`l` convolution kernel
/// `k[h][j] = scale * Re(sum_n c[h][n] a_bar[h][n]^j b_bar[h][n])`.
pub fn ssm_kernel(params: &SsmLayerParams, l: usize) -> Result<SsmKernel> {
    if l == 0 {
        return Err(Error::Config("kernel length must be >= 1".into()));
    }
    let h = params.channels;
    let scale = params.readout_scale();
    let mut k = Seq::zeros(h, l);
    let mut pows = vec![Complex64::ZERO; l];
    for ch in 0..h {
        let disc = discretize_zoh(params, ch);
        let dt = params.dt(ch);
        let row = k.row_mut(ch);
        for n in 0..params.n_stored {
            let z = params.lambda(n) * dt;
            power_sequence(z, l, &mut pows);
            let w = params.c_out(ch, n) * disc.b_bar[n] * scale;
            for (slot, p) in row.iter_mut().zip(&pows) {
                *slot += (w * p).re;
            }
        }
    }
    Ok(SsmKernel { k })
}

/// Causal FFT convolution of `input` with `kernel`, per channel.
/// Output at time t depends only on inputs at times <= t.
pub fn fft_convolve(kernel: &SsmKernel, input: &Seq) -> Result<Seq> {
    if kernel.k.channels != input.channels || kernel.k.len != input.len {
        return Err(Error::Shape(format!(
            "kernel [{}x{}] vs input [{}x{}]",
            kernel.k.channels, kernel.k.len, input.channels, input.len
        )));
    }
    let mut eng = ConvEngine::for_len(input.len);
    let mut out = Seq::zeros(input.channels, input.len);
    for h in 0..input.channels {
        let spec = eng.spectrum(kernel.k.row(h));
        let y = eng.convolve(&spec, input.row(h), input.len);
        out.row_mut(h).copy_from_slice(&y);
    }
    Ok(out)
}

/// Sequential scan on explicit discrete coefficients, starting from h=0.
/// Includes the `d*x` feedthrough.
pub fn scan_discrete(
    disc: &DiscreteSsm,
    c: &[Complex64],
    d: f64,
    scale: f64,
    x: &[f64],
) -> Vec<f64> {
    let n = disc.a_bar.len();
    let mut state = vec![Complex64::ZERO; n];
    let mut y = Vec::with_capacity(x.len());
    for &xt in x {
        let mut acc = Complex64::ZERO;
        for i in 0..n {
            state[i] = disc.a_bar[i] * state[i] + disc.b_bar[i] * xt;
            acc += c[i] * state[i];
        }
        y.push(scale * acc.re + d * xt);
    }
    y
}

/// Stepwise recurrence `h(t) = A h(t-1) + B x(t)`, `y = Re(C h) + D x`,
/// per channel, initial state zero. Equals `fft_convolve + D*x`.
pub fn recurrent_scan(params: &SsmLayerParams, input: &Seq) -> Result<Seq> {
    if input.channels != params.channels {
        return Err(Error::Shape(format!(
            "input has {} channels, params expect {}",
            input.channels, params.channels
        )));
    }
    let scale = params.readout_scale();
    let mut out = Seq::zeros(input.channels, input.len);
    for ch in 0..params.channels {
        let disc = discretize_zoh(params, ch);
        let c: Vec<Complex64> = (0..params.n_stored).map(|n| params.c_out(ch, n)).collect();
        let y = scan_discrete(&disc, &c, params.d_skip[ch], scale, input.row(ch));
        out.row_mut(ch).copy_from_slice(&y);
    }
    Ok(out)
}

/// S4D-Lin initialization: `lambda_n = -1/2 + i pi n` for the stored half
/// (conjugate pairs implicit), `b = 1`, `c ~ N(0,1)/sqrt(N)` complex,
/// `log dt ~ U[log 0.001, log 0.1]` per channel, `d = 1`.
pub fn init_s4d_lin(n: usize, h: usize, rng: &mut impl Rng) -> Result<SsmLayerParams> {
    if n == 0 || h == 0 {
        return Err(Error::Config("state and channel dims must be positive".into()));
    }
    if n % 2 != 0 {
        return Err(Error::Config(format!(
            "S4D-Lin init needs an even state dim for conjugate pairing, got {n}"
        )));
    }
    let nh = n / 2;
    let c_scale = 1.0 / (n as f64).sqrt();
    let normal = rand_distr::StandardNormal;
    let mut c_re = Vec::with_capacity(h * nh);
    let mut c_im = Vec::with_capacity(h * nh);
    for _ in 0..h * nh {
        c_re.push(rng.sample::<f64, _>(normal) * c_scale);
        c_im.push(rng.sample::<f64, _>(normal) * c_scale);
    }
    let (lo, hi) = ((0.001f64).ln(), (0.1f64).ln());
    let log_dt = (0..h).map(|_| rng.gen_range(lo..hi)).collect();
    Ok(SsmLayerParams {
        log_neg_re: vec![(0.5f64).ln(); nh],
        lambda_im: (0..nh).map(|i| std::f64::consts::PI * i as f64).collect(),
        b_re: vec![1.0; nh],
        b_im: vec![0.0; nh],
        c_re,
        c_im,
        d_skip: vec![1.0; h],
        log_dt,
        channels: h,
        n_stored: nh,
        paired: true,
    })
}
