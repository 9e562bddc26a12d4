//! Reference implementations used as test oracles. They share no code with
//! the library beyond plain parameter accessors.
#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

/// Membrane constants in SI units.
#[derive(Debug, Clone, Copy)]
pub struct Membrane {
    pub r: f64,
    pub t: f64,
    pub c: f64,
    pub p_atm: f64,
    pub h: f64,
}

impl Membrane {
    pub fn table() -> Self {
        Self {
            r: 0.020,
            t: 0.002,
            c: 0.098e6,
            p_atm: 0.101e6,
            h: 0.002,
        }
    }
}

/// Adaptive Simpson quadrature to relative tolerance `tol`.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let scale = whole.abs().max(f64::MIN_POSITIVE);
    rec(f, a, b, fa, fm, fb, whole, tol * scale, 50)
}

/// Arc length of `z = w (1 - r²/R²)` across the diameter, by quadrature.
pub fn arc_by_quadrature(w: f64, r: f64) -> f64 {
    let slope = move |x: f64| (1.0 + (2.0 * w * x / (r * r)).powi(2)).sqrt();
    2.0 * simpson(&slope, 0.0, r, 1e-12)
}

/// Force balance residual in Pa, built from the model equations directly.
pub fn residual(m: &Membrane, w: f64, p_cavity: f64) -> f64 {
    let arc = arc_by_quadrature(w, m.r);
    let lambda = (arc / (2.0 * m.r)).max(1.0);
    let sigma = 2.0 * m.c * (lambda * lambda - lambda.powi(-4));
    let p_gap = m.p_atm * m.h / (m.h + w / 2.0);
    4.0 * m.t * sigma * w / (m.r * m.r) - (p_gap - p_cavity)
}

/// Scans `n` points on `[0, 2h]` for the first sign change, then bisects
/// inside that cell to `tol` metres.
pub fn grid_root(m: &Membrane, p_cavity: f64, n: usize, tol: f64) -> Option<f64> {
    let hi = 2.0 * m.h;
    let f = |w: f64| residual(m, w, p_cavity);
    let mut prev = (0.0, f(0.0));
    if prev.1 == 0.0 {
        return Some(0.0);
    }
    for i in 1..=n {
        let w = hi * i as f64 / n as f64;
        let fw = f(w);
        if fw == 0.0 {
            return Some(w);
        }
        if (fw > 0.0) != (prev.1 > 0.0) {
            let (mut a, mut b) = (prev.0, w);
            let fa_pos = prev.1 > 0.0;
            while b - a > tol {
                let mid = 0.5 * (a + b);
                if (f(mid) > 0.0) == fa_pos {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            return Some(0.5 * (a + b));
        }
        prev = (w, fw);
    }
    None
}

/// Direct O(N²) DFT power at one bin.
pub fn dft_power(values: &[f64], w: usize, h: usize, kx: usize, ky: usize) -> f64 {
    let (mut re, mut im) = (0.0, 0.0);
    for y in 0..h {
        for x in 0..w {
            let ph = -TAU * (kx as f64 * x as f64 / w as f64 + ky as f64 * y as f64 / h as f64);
            re += values[y * w + x] * ph.cos();
            im += values[y * w + x] * ph.sin();
        }
    }
    re * re + im * im
}

/// Smallest center distance over all pairs, by brute force.
pub fn min_pair_distance(centers: &[[f64; 2]]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..centers.len() {
        for j in i + 1..centers.len() {
            let d = (centers[i][0] - centers[j][0]).hypot(centers[i][1] - centers[j][1]);
            best = best.min(d);
        }
    }
    best
}

/// Conformity demand by dense sampling of each lobe between radius minima.
pub fn dense_demand(cycles: u32, r0: f64, amp: f64, wavelength: f64, per_lobe: usize) -> f64 {
    let height = |x: f64| 0.5 * (TAU * x / wavelength).cos();
    let lobes = cycles.max(1);
    let start = if cycles == 0 { 0.0 } else { 1.5 * PI / cycles as f64 };
    let width = TAU / lobes as f64;
    let mut worst: f64 = 0.0;
    for k in 0..lobes {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..=per_lobe {
            let s = start + width * (k as f64 + i as f64 / per_lobe as f64);
            let r = r0 + amp * (cycles as f64 * s).sin();
            let y = height(r * s.cos());
            lo = lo.min(y);
            hi = hi.max(y);
        }
        worst = worst.max(hi - lo);
    }
    worst
}
