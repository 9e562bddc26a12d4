//! Row-major 2-D FFT over `rustfft`.

use std::cell::RefCell;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

const BLOCK: usize = 16;

/// Planned forward and inverse transforms for one grid size.
///
/// Holds reusable work buffers, so a value is meant to stay on one thread.
pub struct Fft2 {
    width: usize,
    height: usize,
    row_fwd: Arc<dyn Fft<f64>>,
    row_inv: Arc<dyn Fft<f64>>,
    col_fwd: Arc<dyn Fft<f64>>,
    col_inv: Arc<dyn Fft<f64>>,
    work: RefCell<Vec<Complex64>>,
    scratch: RefCell<Vec<Complex64>>,
}

impl std::fmt::Debug for Fft2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Fft2")
            .field("width", &self.width)
            .field("height", &self.height)
            .finish()
    }
}

impl Fft2 {
    pub fn new(width: usize, height: usize) -> Self {
        let mut planner = FftPlanner::new();
        let row_fwd = planner.plan_fft_forward(width);
        let row_inv = planner.plan_fft_inverse(width);
        let col_fwd = planner.plan_fft_forward(height);
        let col_inv = planner.plan_fft_inverse(height);
        let scratch_len = [&row_fwd, &row_inv, &col_fwd, &col_inv]
            .iter()
            .map(|f| f.get_inplace_scratch_len())
            .max()
            .unwrap_or(0);
        Self {
            width,
            height,
            row_fwd,
            row_inv,
            col_fwd,
            col_inv,
            work: RefCell::new(vec![Complex64::default(); width * height]),
            scratch: RefCell::new(vec![Complex64::default(); scratch_len]),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Unnormalized forward transform in place.
    pub fn forward(&self, data: &mut [Complex64]) {
        self.run(data, &self.row_fwd, &self.col_fwd);
    }

    /// Inverse transform in place, scaled by `1 / (width * height)`.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.run(data, &self.row_inv, &self.col_inv);
        let scale = 1.0 / (self.width * self.height) as f64;
        for v in data.iter_mut() {
            *v *= scale;
        }
    }

    fn run(&self, data: &mut [Complex64], row: &Arc<dyn Fft<f64>>, col: &Arc<dyn Fft<f64>>) {
        assert_eq!(data.len(), self.width * self.height, "grid size mismatch");
        let mut scratch = self.scratch.borrow_mut();
        let mut work = self.work.borrow_mut();
        row.process_with_scratch(data, &mut scratch);
        transpose(data, &mut work, self.width, self.height);
        col.process_with_scratch(&mut work, &mut scratch);
        transpose(&work, data, self.height, self.width);
    }

    /// Frequency magnitude, cycles per pixel, of every bin in unshifted order.
    pub fn radial_frequencies(&self) -> Vec<f64> {
        let fx: Vec<f64> = (0..self.width).map(|i| fftfreq(i, self.width)).collect();
        let mut out = Vec::with_capacity(self.width * self.height);
        for y in 0..self.height {
            let fy = fftfreq(y, self.height);
            out.extend(fx.iter().map(|f| f.hypot(fy)));
        }
        out
    }

    /// Applies a real, radially symmetric transfer function of the frequency
    /// magnitude to a real grid.
    pub fn filter_real(&self, values: &[f64], transfer: impl Fn(f64) -> f64) -> Vec<f64> {
        let gains: Vec<f64> = self.radial_frequencies().into_iter().map(transfer).collect();
        self.filter_pair(values, &gains, values, &gains).0
    }

    /// Filters two real grids with two real, even gain grids using one
    /// complex transform pair: `a + ib` is transformed once and the two
    /// spectra are separated through Hermitian symmetry.
    pub fn filter_pair(&self, a: &[f64], gain_a: &[f64], b: &[f64], gain_b: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let (w, h) = (self.width, self.height);
        let mut buf: Vec<Complex64> = a.iter().zip(b).map(|(&x, &y)| Complex64::new(x, y)).collect();
        self.forward(&mut buf);
        let mut out = vec![Complex64::default(); w * h];
        for ky in 0..h {
            let my = (h - ky) % h;
            for kx in 0..w {
                let mx = (w - kx) % w;
                let k = ky * w + kx;
                let z = buf[k];
                let zc = buf[my * w + mx].conj();
                let spec_a = (z + zc) * 0.5;
                let spec_b = (z - zc) * Complex64::new(0.0, -0.5);
                out[k] = spec_a * gain_a[k] + Complex64::new(0.0, 1.0) * spec_b * gain_b[k];
            }
        }
        self.inverse(&mut out);
        out.into_iter().map(|c| (c.re, c.im)).unzip()
    }
}

fn transpose(src: &[Complex64], dst: &mut [Complex64], width: usize, height: usize) {
    for by in (0..height).step_by(BLOCK) {
        for bx in (0..width).step_by(BLOCK) {
            for y in by..(by + BLOCK).min(height) {
                for x in bx..(bx + BLOCK).min(width) {
                    dst[x * height + y] = src[y * width + x];
                }
            }
        }
    }
}

/// Signed frequency of bin `i` out of `n`, in cycles per sample.
pub fn fftfreq(i: usize, n: usize) -> f64 {
    let k = if i < n.div_ceil(2) {
        i as f64
    } else {
        i as f64 - n as f64
    };
    k / n as f64
}
