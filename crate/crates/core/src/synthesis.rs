//! Synthetic surfaces and the tactile camera stand-in.
//!
//! Height maps are in micrometres on a regular pixel grid. Rendering maps a
//! height map to a 640×480 intensity image in `[0, 1]`:
//!
//! ```text
//! I = clamp(base + k_slope·|∇h_m| + k_depth·depth(F, p) + noise)
//! ```
//!
//! where `h_m` is the height map after the membrane's elastic low-pass
//! `exp(-2π f d)` and the noise is a smooth, seeded illumination field.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::fft::Fft2;
use crate::seed::stream_rng;

pub const WIDTH: usize = 640;
pub const HEIGHT: usize = 480;
/// Surface sampling pitch, micrometres per pixel.
pub const PITCH_UM: f64 = 25.0;
pub const DEFAULT_MASK_FRACTION: f64 = 0.45;
pub const TEXTURE_CLASSES: usize = 18;
pub const MESH_RANGE: (u32, u32) = (36, 600);
pub const PRESS_FORCE_RANGE_N: (f64, f64) = (3.0, 5.0);
pub const PRESSURE_RANGE_KPA: (f64, f64) = (5.0, 8.0);
/// Contact offsets are drawn from `0..MAX_OFFSET_PX` on each axis.
pub const MAX_OFFSET_PX: i32 = 64;

/// Capture used for the smooth-surface reference image.
pub const REFERENCE_FORCE_N: f64 = 4.0;
pub const REFERENCE_PRESSURE_KPA: f64 = 6.5;
pub const REFERENCE_SEED: u64 = 424_242;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthesisError {
    #[error("{name} = {value} outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("invalid height map: {0}")]
    InvalidMap(String),
    #[error("unknown texture class {0} (expected 0..{TEXTURE_CLASSES})")]
    UnknownClass(usize),
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("graymap: {0}")]
    Pgm(String),
    #[error("manifest: {0}")]
    Manifest(String),
}

pub type Result<T> = std::result::Result<T, SynthesisError>;

fn check_range(name: &'static str, value: f64, (lo, hi): (f64, f64)) -> Result<()> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(())
    } else {
        Err(SynthesisError::OutOfRange { name, value, lo, hi })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeightMap {
    width: usize,
    height: usize,
    pitch_um: f64,
    values: Vec<f64>,
}

impl HeightMap {
    pub fn new(width: usize, height: usize, pitch_um: f64, values: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(SynthesisError::InvalidMap("empty grid".into()));
        }
        if values.len() != width * height {
            return Err(SynthesisError::InvalidMap(format!(
                "{} values for a {width}x{height} grid",
                values.len()
            )));
        }
        if !(pitch_um.is_finite() && pitch_um > 0.0) {
            return Err(SynthesisError::InvalidMap(format!("pitch {pitch_um}")));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(SynthesisError::InvalidMap("non-finite height".into()));
        }
        Ok(Self {
            width,
            height,
            pitch_um,
            values,
        })
    }

    pub fn flat(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            pitch_um: PITCH_UM,
            values: vec![0.0; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pitch_um(&self) -> f64 {
        self.pitch_um
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.width + x]
    }

    pub fn variance(&self) -> f64 {
        variance(&self.values)
    }

    /// Cyclic shift so the value at `(x, y)` moves to `(x + dx, y + dy)`.
    pub fn rolled(&self, dx: i32, dy: i32) -> Self {
        let (w, h) = (self.width as i64, self.height as i64);
        let mut out = vec![0.0; self.values.len()];
        for y in 0..h {
            let ty = (y + dy as i64).rem_euclid(h);
            for x in 0..w {
                let tx = (x + dx as i64).rem_euclid(w);
                out[(ty * w + tx) as usize] = self.values[(y * w + x) as usize];
            }
        }
        Self {
            values: out,
            ..self.clone()
        }
    }

    /// Bilinear resample onto a `width`×`height` grid covering the same area.
    pub fn resampled(&self, width: usize, height: usize) -> Self {
        if width == self.width && height == self.height {
            return self.clone();
        }
        let sx = self.width as f64 / width as f64;
        let sy = self.height as f64 / height as f64;
        let coord = |o: usize, s: f64, n: usize| {
            let c = ((o as f64 + 0.5) * s - 0.5).clamp(0.0, (n - 1) as f64);
            let i = (c.floor() as usize).min(n.saturating_sub(2));
            (i, (c - i as f64).min(1.0))
        };
        let mut values = Vec::with_capacity(width * height);
        for y in 0..height {
            let (y0, fy) = coord(y, sy, self.height);
            let y1 = (y0 + 1).min(self.height - 1);
            for x in 0..width {
                let (x0, fx) = coord(x, sx, self.width);
                let x1 = (x0 + 1).min(self.width - 1);
                let top = self.get(x0, y0) * (1.0 - fx) + self.get(x1, y0) * fx;
                let bot = self.get(x0, y1) * (1.0 - fx) + self.get(x1, y1) * fx;
                values.push(top * (1.0 - fy) + bot * fy);
            }
        }
        Self {
            width,
            height,
            pitch_um: self.pitch_um * sx,
            values,
        }
    }
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn variance(v: &[f64]) -> f64 {
    let m = mean(v);
    v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / v.len() as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaptureParams {
    press_force_n: f64,
    pressure_kpa: f64,
    /// Contact position jitter in pixels, applied as a cyclic shift.
    offset: (i32, i32),
    /// Seed of the illumination noise stream.
    noise_seed: u64,
}

impl CaptureParams {
    pub fn new(press_force_n: f64, pressure_kpa: f64, offset: (i32, i32), noise_seed: u64) -> Result<Self> {
        check_range("press_force_n", press_force_n, PRESS_FORCE_RANGE_N)?;
        check_range("pressure_kpa", pressure_kpa, PRESSURE_RANGE_KPA)?;
        Ok(Self {
            press_force_n,
            pressure_kpa,
            offset,
            noise_seed,
        })
    }

    /// Uniform force, pressure and offset drawn from the seed's capture stream.
    pub fn random(seed: u64) -> Self {
        let mut rng = stream_rng(seed, "capture");
        let (f0, f1) = PRESS_FORCE_RANGE_N;
        let (p0, p1) = PRESSURE_RANGE_KPA;
        Self {
            press_force_n: rng.random_range(f0..=f1),
            pressure_kpa: rng.random_range(p0..=p1),
            offset: (rng.random_range(0..MAX_OFFSET_PX), rng.random_range(0..MAX_OFFSET_PX)),
            noise_seed: seed,
        }
    }

    pub fn reference() -> Self {
        Self {
            press_force_n: REFERENCE_FORCE_N,
            pressure_kpa: REFERENCE_PRESSURE_KPA,
            offset: (0, 0),
            noise_seed: REFERENCE_SEED,
        }
    }

    pub fn press_force_n(&self) -> f64 {
        self.press_force_n
    }

    pub fn pressure_kpa(&self) -> f64 {
        self.pressure_kpa
    }

    pub fn offset(&self) -> (i32, i32) {
        self.offset
    }

    pub fn noise_seed(&self) -> u64 {
        self.noise_seed
    }

    pub fn with_noise_seed(self, noise_seed: u64) -> Self {
        Self { noise_seed, ..self }
    }
}

/// Membrane indentation in millimetres; grows with force and chamber pressure.
pub fn contact_depth_mm(press_force_n: f64, pressure_kpa: f64) -> f64 {
    0.1 * press_force_n * (1.0 + 0.05 * (pressure_kpa - 5.0))
}

/// Shading constants. Defaults put mesh-36 renders across roughly
/// 0.5 to 0.9, about 80% of the usable range above the base level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderModel {
    pub base: f64,
    /// Intensity per unit surface slope.
    pub k_slope: f64,
    /// Intensity per millimetre of contact depth.
    pub k_depth: f64,
    /// Elastic layer low-pass length, pixels.
    pub elastic_px: f64,
    pub noise_amplitude: f64,
    /// Gaussian correlation length of the illumination noise, pixels.
    pub noise_correlation_px: f64,
}

impl Default for RenderModel {
    fn default() -> Self {
        Self {
            base: 0.5,
            k_slope: 0.4,
            k_depth: 0.2,
            elastic_px: 2.0,
            noise_amplitude: 0.04,
            noise_correlation_px: 16.0,
        }
    }
}

impl RenderModel {
    pub fn validate(&self) -> Result<()> {
        check_range("base", self.base, (0.0, 1.0))?;
        check_range("k_slope", self.k_slope, (0.0, 10.0))?;
        check_range("k_depth", self.k_depth, (0.0, 10.0))?;
        check_range("elastic_px", self.elastic_px, (0.0, 64.0))?;
        check_range("noise_amplitude", self.noise_amplitude, (0.0, 1.0))?;
        check_range("noise_correlation_px", self.noise_correlation_px, (0.0, 256.0))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImageMeta {
    pub press_force_n: f64,
    pub pressure_kpa: f64,
    pub mask_applied: bool,
    pub class_label: Option<usize>,
}

/// A 640×480 intensity image.
#[derive(Debug, Clone, PartialEq)]
pub struct TactileImage {
    pixels: Vec<f64>,
    pub meta: ImageMeta,
}

impl TactileImage {
    pub fn new(pixels: Vec<f64>, meta: ImageMeta) -> Result<Self> {
        if pixels.len() != WIDTH * HEIGHT {
            return Err(SynthesisError::DimensionMismatch(pixels.len(), 1, WIDTH, HEIGHT));
        }
        if pixels.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(SynthesisError::InvalidMap("pixel outside [0, 1]".into()));
        }
        Ok(Self { pixels, meta })
    }

    pub fn width(&self) -> usize {
        WIDTH
    }

    pub fn height(&self) -> usize {
        HEIGHT
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.pixels[y * WIDTH + x]
    }

    pub fn mean(&self) -> f64 {
        mean(&self.pixels)
    }

    pub fn variance(&self) -> f64 {
        variance(&self.pixels)
    }

    /// Quantized to 8 bits.
    pub fn to_gray(&self) -> GrayImage {
        GrayImage::from_unit(WIDTH, HEIGHT, &self.pixels)
    }

    pub fn from_gray(img: &GrayImage, meta: ImageMeta) -> Result<Self> {
        if img.width != WIDTH || img.height != HEIGHT {
            return Err(SynthesisError::DimensionMismatch(img.width, img.height, WIDTH, HEIGHT));
        }
        Self::new(img.to_unit(), meta)
    }
}

/// Signed pixelwise difference of two tactile images, in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceImage {
    width: usize,
    height: usize,
    values: Vec<f64>,
    mask_fraction: Option<f64>,
}

impl DifferenceImage {
    pub fn new(width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != width * height {
            return Err(SynthesisError::DimensionMismatch(values.len(), 1, width, height));
        }
        Ok(Self {
            width,
            height,
            values,
            mask_fraction: None,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mask_applied(&self) -> bool {
        self.mask_fraction.is_some()
    }

    pub fn mask_fraction(&self) -> Option<f64> {
        self.mask_fraction
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * factor).collect(),
            ..self.clone()
        }
    }

    /// Zeroes pixels outside the centred disk.
    pub fn masked(&self, radius_fraction: f64) -> Result<Self> {
        let mask = center_mask(self.width, self.height, radius_fraction)?;
        Ok(Self {
            values: self
                .values
                .iter()
                .zip(&mask)
                .map(|(&v, &m)| if m { v } else { 0.0 })
                .collect(),
            mask_fraction: Some(radius_fraction),
            ..self.clone()
        })
    }

    /// Offset-binary 8-bit encoding: `-1 → 0`, `0 → 127.5`, `1 → 255`.
    pub fn to_gray(&self) -> GrayImage {
        let unit: Vec<f64> = self.values.iter().map(|v| (v + 1.0) / 2.0).collect();
        GrayImage::from_unit(self.width, self.height, &unit)
    }

    /// Inverse of [`DifferenceImage::to_gray`], up to 8-bit quantization.
    pub fn from_gray(img: &GrayImage) -> Result<Self> {
        let values = img.to_unit().into_iter().map(|u| 2.0 * u - 1.0).collect();
        Self::new(img.width, img.height, values)
    }
}

pub fn difference_image(img: &TactileImage, reference: &TactileImage) -> DifferenceImage {
    DifferenceImage {
        width: WIDTH,
        height: HEIGHT,
        values: img.pixels.iter().zip(&reference.pixels).map(|(a, b)| a - b).collect(),
        mask_fraction: None,
    }
}

/// Pixels whose centres lie within `radius_fraction · min(width, height)` of
/// the image centre.
pub fn center_mask(width: usize, height: usize, radius_fraction: f64) -> Result<Vec<bool>> {
    check_range("radius_fraction", radius_fraction, (0.0, 0.5))?;
    let r = radius_fraction * width.min(height) as f64;
    let (cx, cy) = (width as f64 / 2.0, height as f64 / 2.0);
    let mut mask = Vec::with_capacity(width * height);
    for y in 0..height {
        let dy = y as f64 + 0.5 - cy;
        for x in 0..width {
            let dx = x as f64 + 0.5 - cx;
            mask.push(dx * dx + dy * dy <= r * r);
        }
    }
    Ok(mask)
}

pub fn apply_center_mask(img: &TactileImage, radius_fraction: f64) -> Result<TactileImage> {
    let mask = center_mask(WIDTH, HEIGHT, radius_fraction)?;
    Ok(TactileImage {
        pixels: img
            .pixels
            .iter()
            .zip(&mask)
            .map(|(&v, &m)| if m { v } else { 0.0 })
            .collect(),
        meta: ImageMeta {
            mask_applied: true,
            ..img.meta.clone()
        },
    })
}

/// Planned transforms and transfer functions for 640×480 rendering.
pub struct Renderer {
    model: RenderModel,
    fft: Fft2,
    elastic_gain: Vec<f64>,
    noise_gain: Vec<f64>,
}

impl std::fmt::Debug for Renderer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Renderer").field("model", &self.model).finish()
    }
}

impl Default for Renderer {
    fn default() -> Self {
        Self::build(RenderModel::default())
    }
}

impl Renderer {
    pub fn new(model: RenderModel) -> Result<Self> {
        model.validate()?;
        Ok(Self::build(model))
    }

    fn build(model: RenderModel) -> Self {
        let fft = Fft2::new(WIDTH, HEIGHT);
        let freq = fft.radial_frequencies();
        let d = model.elastic_px;
        let k = gaussian_gain_coefficient(model.noise_correlation_px);
        Self {
            model,
            elastic_gain: freq.iter().map(|f| (-TAU * f * d).exp()).collect(),
            noise_gain: freq.iter().map(|f| (-k * f * f).exp()).collect(),
            fft,
        }
    }

    pub fn model(&self) -> &RenderModel {
        &self.model
    }

    pub fn fft(&self) -> &Fft2 {
        &self.fft
    }

    /// Unit-variance Gaussian random field with correlation length `sigma_px`.
    pub fn smooth_noise(&self, rng: &mut ChaCha8Rng, sigma_px: f64) -> Vec<f64> {
        smooth_noise(&self.fft, rng, sigma_px)
    }

    fn white_noise(seed: u64) -> Vec<f64> {
        let mut rng = stream_rng(seed, "illumination");
        (0..WIDTH * HEIGHT).map(|_| rng.sample(StandardNormal)).collect()
    }

    fn scale_illumination(&self, mut field: Vec<f64>) -> Vec<f64> {
        let sd = variance(&field).sqrt();
        let gain = if sd > 0.0 { self.model.noise_amplitude / sd } else { 0.0 };
        for v in &mut field {
            *v *= gain;
        }
        field
    }

    /// Illumination field for `seed`: smooth noise scaled to the model amplitude.
    pub fn illumination(&self, seed: u64) -> Vec<f64> {
        let white = Self::white_noise(seed);
        let (field, _) = self.fft.filter_pair(&white, &self.noise_gain, &white, &self.noise_gain);
        self.scale_illumination(field)
    }

    pub fn render(&self, map: &HeightMap, params: &CaptureParams) -> TactileImage {
        let map = map.resampled(WIDTH, HEIGHT);
        let (dx, dy) = params.offset;
        let map = if (dx, dy) == (0, 0) { map } else { map.rolled(dx, dy) };
        let white = Self::white_noise(params.noise_seed);
        let (membrane, field) = self
            .fft
            .filter_pair(&map.values, &self.elastic_gain, &white, &self.noise_gain);
        let noise = self.scale_illumination(field);
        let slope = gradient_magnitude(&membrane, WIDTH, HEIGHT, map.pitch_um);
        self.compose(&slope, params, &noise)
    }

    /// As [`Renderer::render`] with a precomputed illumination field; the
    /// capture's noise seed is not used.
    pub fn render_lit(&self, map: &HeightMap, params: &CaptureParams, illumination: &[f64]) -> TactileImage {
        let map = map.resampled(WIDTH, HEIGHT);
        let (dx, dy) = params.offset;
        let map = if (dx, dy) == (0, 0) { map } else { map.rolled(dx, dy) };
        let slope = if map.values.iter().all(|&v| v == 0.0) {
            vec![0.0; WIDTH * HEIGHT]
        } else {
            let (membrane, _) = self
                .fft
                .filter_pair(&map.values, &self.elastic_gain, &map.values, &self.elastic_gain);
            gradient_magnitude(&membrane, WIDTH, HEIGHT, map.pitch_um)
        };
        self.compose(&slope, params, illumination)
    }

    fn compose(&self, slope: &[f64], params: &CaptureParams, noise: &[f64]) -> TactileImage {
        let depth = self.model.k_depth * contact_depth_mm(params.press_force_n, params.pressure_kpa);
        let pixels = slope
            .iter()
            .zip(noise)
            .map(|(s, n)| (self.model.base + self.model.k_slope * s + depth + n).clamp(0.0, 1.0))
            .collect();
        TactileImage {
            pixels,
            meta: ImageMeta {
                press_force_n: params.press_force_n,
                pressure_kpa: params.pressure_kpa,
                mask_applied: false,
                class_label: None,
            },
        }
    }

    /// No contact: base level plus the illumination field only.
    pub fn render_free_membrane(&self, noise_seed: u64) -> TactileImage {
        self.free_membrane_lit(&self.illumination(noise_seed))
    }

    pub fn free_membrane_lit(&self, illumination: &[f64]) -> TactileImage {
        let pixels = illumination
            .iter()
            .map(|n| (self.model.base + n).clamp(0.0, 1.0))
            .collect();
        TactileImage {
            pixels,
            meta: ImageMeta {
                press_force_n: 0.0,
                pressure_kpa: 0.0,
                mask_applied: false,
                class_label: None,
            },
        }
    }

    /// Smooth-surface reference capture.
    pub fn reference(&self) -> TactileImage {
        self.render(&HeightMap::flat(WIDTH, HEIGHT), &CaptureParams::reference())
    }
}

pub fn render_tactile(map: &HeightMap, params: &CaptureParams) -> TactileImage {
    Renderer::default().render(map, params)
}

/// Gaussian blur of width `sigma` in the frequency domain is `exp(-k f²)`.
fn gaussian_gain_coefficient(sigma_px: f64) -> f64 {
    2.0 * PI * PI * sigma_px * sigma_px
}

fn smooth_noise(fft: &Fft2, rng: &mut ChaCha8Rng, sigma_px: f64) -> Vec<f64> {
    let n = fft.width() * fft.height();
    let white: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    let k = gaussian_gain_coefficient(sigma_px);
    let mut field = fft.filter_real(&white, |f| (-k * f * f).exp());
    let sd = variance(&field).sqrt();
    if sd > 0.0 {
        for v in &mut field {
            *v /= sd;
        }
    }
    field
}

/// `|∇(h / pitch)|` with central differences inside and one-sided at the edges.
fn gradient_magnitude(h: &[f64], width: usize, height: usize, pitch: f64) -> Vec<f64> {
    let at = |x: usize, y: usize| h[y * width + x] / pitch;
    let diff = |a: f64, b: f64, span: usize| (b - a) / span as f64;
    let mut out = Vec::with_capacity(h.len());
    for y in 0..height {
        let (y0, y1) = (y.saturating_sub(1), (y + 1).min(height - 1));
        for x in 0..width {
            let (x0, x1) = (x.saturating_sub(1), (x + 1).min(width - 1));
            let gx = if x1 > x0 {
                diff(at(x0, y), at(x1, y), x1 - x0)
            } else {
                0.0
            };
            let gy = if y1 > y0 {
                diff(at(x, y0), at(x, y1), y1 - y0)
            } else {
                0.0
            };
            out.push(gx.hypot(gy));
        }
    }
    out
}

/// Mean grain diameter in micrometres for a sandpaper mesh number.
pub fn grain_diameter_um(mesh: u32) -> f64 {
    19_000.0 / mesh as f64
}

/// Fraction of the surface the grain disks are sized to cover.
pub const GRAIN_FILL: f64 = 0.55;

/// One abrasive grain; positions and diameter in pixels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grain {
    pub x: f64,
    pub y: f64,
    pub diameter: f64,
}

/// Jittered-grid grain placement: one grain per cell, cells sized so the
/// nominal disks cover `GRAIN_FILL` of the area.
pub fn sandpaper_grains(mesh: u32, seed: u64, width: usize, height: usize) -> Result<Vec<Grain>> {
    check_range("mesh", mesh as f64, (MESH_RANGE.0 as f64, MESH_RANGE.1 as f64))?;
    let g = grain_diameter_um(mesh) / PITCH_UM;
    let cell = g * (PI / 4.0 / GRAIN_FILL).sqrt();
    let nx = (width as f64 / cell).ceil() as usize;
    let ny = (height as f64 / cell).ceil() as usize;
    let mut rng = stream_rng(seed, "grains");
    let mut grains = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let x = (i as f64 + rng.random::<f64>()) * cell;
            let y = (j as f64 + rng.random::<f64>()) * cell;
            let diameter = g * rng.random_range(0.7..1.3);
            grains.push(Grain { x, y, diameter });
        }
    }
    Ok(grains)
}

/// Rounded grains composited by maximum; each grain is a paraboloid cap of
/// height half its radius.
pub fn sandpaper_heightmap(mesh: u32, seed: u64, size: (usize, usize)) -> Result<HeightMap> {
    let (w, h) = size;
    if w == 0 || h == 0 {
        return Err(SynthesisError::InvalidMap("empty grid".into()));
    }
    let grains = sandpaper_grains(mesh, seed, w, h)?;
    let mut values = vec![0.0; w * h];
    for g in &grains {
        stamp_paraboloid(
            &mut values,
            w,
            h,
            g.x,
            g.y,
            g.diameter / 2.0,
            0.5 * g.diameter / 2.0 * PITCH_UM,
        );
    }
    HeightMap::new(w, h, PITCH_UM, values)
}

/// Max-composites `peak · (1 - d²/r²)` for pixel centres within `r` of `(cx, cy)`.
fn stamp_paraboloid(values: &mut [f64], w: usize, h: usize, cx: f64, cy: f64, r: f64, peak: f64) {
    let x0 = (cx - r - 1.0).floor().max(0.0) as usize;
    let y0 = (cy - r - 1.0).floor().max(0.0) as usize;
    let x1 = ((cx + r + 1.0).ceil().max(0.0) as usize).min(w);
    let y1 = ((cy + r + 1.0).ceil().max(0.0) as usize).min(h);
    let r2 = r * r;
    for y in y0..y1 {
        let dy = y as f64 + 0.5 - cy;
        for x in x0..x1 {
            let dx = x as f64 + 0.5 - cx;
            let q = 1.0 - (dx * dx + dy * dy) / r2;
            if q > 0.0 {
                let v = &mut values[y * w + x];
                *v = v.max(peak * q);
            }
        }
    }
}

/// Procedural stand-ins for the 18 object surfaces.
///
/// | ids | family | scale parameter |
/// |---|---|---|
/// | 0–2 | grating along x | 5, 11, 17 cycles per width |
/// | 3–5 | grating along y | 8, 14, 20 cycles per height |
/// | 6–7 | dot lattice | 40, 24 px spacing |
/// | 8 | cross-hatch | 30 px period |
/// | 9–10 | cellular walls | 64, 32 px cells |
/// | 11–12 | random blobs | 20, 8 px radius |
/// | 13–14 | ridged noise | 12, 4 px correlation |
/// | 15 | smooth | |
/// | 16–17 | weave | 48, 20 px blocks |
///
/// Within a family the scale parameters differ by at least a factor 1.5;
/// gratings keep a fixed peak slope so their amplitude scales with period.
pub const TEXTURE_FAMILIES: [&str; TEXTURE_CLASSES] = [
    "grating-x-coarse",
    "grating-x-medium",
    "grating-x-fine",
    "grating-y-coarse",
    "grating-y-medium",
    "grating-y-fine",
    "dots-coarse",
    "dots-fine",
    "cross-hatch",
    "cells-coarse",
    "cells-fine",
    "blobs-coarse",
    "blobs-fine",
    "ridges-coarse",
    "ridges-fine",
    "smooth",
    "weave-coarse",
    "weave-fine",
];

/// Grating frequencies in cycles across the image, x gratings then y gratings.
pub const GRATING_CYCLES: [u32; 6] = [5, 11, 17, 8, 14, 20];
/// Peak surface slope of the gratings.
const GRATING_SLOPE: f64 = 0.6;
const DOT_SPACING_PX: [f64; 2] = [40.0, 24.0];
const HATCH_PERIOD_PX: f64 = 30.0;
const HATCH_AMPLITUDE_UM: f64 = 150.0;
const CELL_SIZE_PX: [f64; 2] = [64.0, 32.0];
const CELL_WALL_UM: f64 = 300.0;
const CELL_WALL_WIDTH_PX: f64 = 8.0;
const BLOB_RADIUS_PX: [f64; 2] = [20.0, 8.0];
const RIDGE_SCALE_PX: [f64; 2] = [12.0, 4.0];
const WEAVE_PERIOD_PX: [f64; 2] = [48.0, 20.0];
const WEAVE_GAIN: [f64; 2] = [1.0, 2.0];

pub fn texture_heightmap(class_id: usize, seed: u64) -> Result<HeightMap> {
    texture_heightmap_with(&Fft2::new(WIDTH, HEIGHT), class_id, seed)
}

/// As [`texture_heightmap`], reusing a planned 640×480 transform.
pub fn texture_heightmap_with(fft: &Fft2, class_id: usize, seed: u64) -> Result<HeightMap> {
    if class_id >= TEXTURE_CLASSES {
        return Err(SynthesisError::UnknownClass(class_id));
    }
    let (w, h) = (WIDTH, HEIGHT);
    let mut rng = stream_rng(seed, "texture");
    let phase = rng.random_range(0.0..TAU);
    let grid = |f: &dyn Fn(f64, f64) -> f64| -> Vec<f64> {
        let mut v = Vec::with_capacity(w * h);
        for y in 0..h {
            for x in 0..w {
                v.push(f(x as f64, y as f64));
            }
        }
        v
    };
    let values = match class_id {
        0..=2 => {
            let k = GRATING_CYCLES[class_id] as f64;
            let a = GRATING_SLOPE * w as f64 * PITCH_UM / (TAU * k);
            grid(&|x, _| a * (TAU * k * (x + 0.5) / w as f64 + phase).sin())
        }
        3..=5 => {
            let k = GRATING_CYCLES[class_id] as f64;
            let a = GRATING_SLOPE * h as f64 * PITCH_UM / (TAU * k);
            grid(&|_, y| a * (TAU * k * (y + 0.5) / h as f64 + phase).sin())
        }
        6 | 7 => {
            let s = DOT_SPACING_PX[class_id - 6];
            let (ox, oy) = (rng.random_range(0.0..s), rng.random_range(0.0..s));
            let r = 0.3 * s;
            grid(&|x, y| {
                let dx = (x + ox).rem_euclid(s) - s / 2.0;
                let dy = (y + oy).rem_euclid(s) - s / 2.0;
                let q = 1.0 - (dx * dx + dy * dy) / (r * r);
                if q > 0.0 {
                    r * PITCH_UM * q
                } else {
                    0.0
                }
            })
        }
        8 => {
            let k = TAU / (HATCH_PERIOD_PX * 2f64.sqrt());
            grid(&|x, y| HATCH_AMPLITUDE_UM * ((k * (x + y) + phase).sin() + (k * (x - y) + phase).sin()))
        }
        9 | 10 => cell_walls(&mut rng, CELL_SIZE_PX[class_id - 9], w, h),
        11 | 12 => {
            let r = BLOB_RADIUS_PX[class_id - 11];
            let n = (0.5 * (w * h) as f64 / (PI * r * r)) as usize;
            let mut v = vec![0.0; w * h];
            for _ in 0..n {
                let cx = rng.random_range(0.0..w as f64);
                let cy = rng.random_range(0.0..h as f64);
                stamp_paraboloid(&mut v, w, h, cx, cy, r, 0.75 * r * PITCH_UM);
            }
            v
        }
        13 | 14 => {
            let s = RIDGE_SCALE_PX[class_id - 13];
            smooth_noise(fft, &mut rng, s)
                .into_iter()
                .map(|n| 0.5 * s * PITCH_UM * (1.0 - n.abs()))
                .collect()
        }
        15 => vec![0.0; w * h],
        16 | 17 => {
            let p = WEAVE_PERIOD_PX[class_id - 16];
            let a = WEAVE_GAIN[class_id - 16] * 0.75 * p * PITCH_UM / PI;
            let (ox, oy) = (rng.random_range(0.0..2.0 * p), rng.random_range(0.0..2.0 * p));
            grid(&|x, y| {
                let (bx, by) = (((x + ox) / p).floor(), ((y + oy) / p).floor());
                if (bx + by).rem_euclid(2.0) == 0.0 {
                    a * (PI * (x + ox).rem_euclid(p) / p).sin()
                } else {
                    a * (PI * (y + oy).rem_euclid(p) / p).sin()
                }
            })
        }
        _ => unreachable!(),
    };
    HeightMap::new(w, h, PITCH_UM, values)
}

/// Raised walls along cell boundaries of a random Voronoi tessellation:
/// `A · clip(1 - (d2 - d1) / width, 0, 1)` with `d1`, `d2` the nearest and
/// second-nearest seed distances.
fn cell_walls(rng: &mut ChaCha8Rng, cell: f64, w: usize, h: usize) -> Vec<f64> {
    let n = ((w * h) as f64 / (cell * cell)) as usize;
    let points: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.random_range(0.0..w as f64), rng.random_range(0.0..h as f64)))
        .collect();
    let bucket = cell;
    let bw = (w as f64 / bucket).ceil() as usize;
    let bh = (h as f64 / bucket).ceil() as usize;
    let mut buckets = vec![Vec::new(); bw * bh];
    for &(px, py) in &points {
        let bx = ((px / bucket) as usize).min(bw - 1);
        let by = ((py / bucket) as usize).min(bh - 1);
        buckets[by * bw + bx].push((px, py));
    }
    let max_ring = bw.max(bh);
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h {
        let fy = y as f64 + 0.5;
        let by = ((fy / bucket) as usize).min(bh - 1) as i64;
        for x in 0..w {
            let fx = x as f64 + 0.5;
            let bx = ((fx / bucket) as usize).min(bw - 1) as i64;
            let (mut d1, mut d2) = (f64::INFINITY, f64::INFINITY);
            for ring in 0..=max_ring as i64 {
                for j in (by - ring)..=(by + ring) {
                    for i in (bx - ring)..=(bx + ring) {
                        let on_ring = (j - by).abs() == ring || (i - bx).abs() == ring;
                        if !on_ring || i < 0 || j < 0 || i >= bw as i64 || j >= bh as i64 {
                            continue;
                        }
                        for &(px, py) in &buckets[j as usize * bw + i as usize] {
                            let d = (fx - px).hypot(fy - py);
                            if d < d1 {
                                d2 = d1;
                                d1 = d;
                            } else if d < d2 {
                                d2 = d;
                            }
                        }
                    }
                }
                // Anything outside this ring is at least `ring · bucket` away.
                if d2 <= ring as f64 * bucket {
                    break;
                }
            }
            out.push(CELL_WALL_UM * (1.0 - (d2 - d1) / CELL_WALL_WIDTH_PX).clamp(0.0, 1.0));
        }
    }
    out
}

/// Generates masked texture difference images against one shared smooth reference.
#[derive(Debug)]
pub struct TextureSampler {
    renderer: Renderer,
    reference: TactileImage,
    mask_fraction: f64,
}

impl Default for TextureSampler {
    fn default() -> Self {
        let renderer = Renderer::default();
        let reference = renderer.reference();
        Self {
            renderer,
            reference,
            mask_fraction: DEFAULT_MASK_FRACTION,
        }
    }
}

/// One generated dataset item.
#[derive(Debug, Clone, PartialEq)]
pub struct TextureSample {
    pub class_id: usize,
    pub seed: u64,
    pub capture: CaptureParams,
    pub image: TactileImage,
    pub difference: DifferenceImage,
}

impl TextureSampler {
    pub fn new(model: RenderModel, mask_fraction: f64) -> Result<Self> {
        check_range("mask_fraction", mask_fraction, (0.0, 0.5))?;
        let renderer = Renderer::new(model)?;
        let reference = renderer.reference();
        Ok(Self {
            renderer,
            reference,
            mask_fraction,
        })
    }

    pub fn renderer(&self) -> &Renderer {
        &self.renderer
    }

    pub fn reference(&self) -> &TactileImage {
        &self.reference
    }

    /// Class surface from `seed`, random capture from `seed`, masked difference.
    pub fn sample(&self, class_id: usize, seed: u64) -> Result<TextureSample> {
        let map = texture_heightmap_with(self.renderer.fft(), class_id, seed)?;
        let capture = CaptureParams::random(seed);
        let mut image = self.renderer.render(&map, &capture);
        image.meta.class_label = Some(class_id);
        let difference = difference_image(&image, &self.reference).masked(self.mask_fraction)?;
        Ok(TextureSample {
            class_id,
            seed,
            capture,
            image,
            difference,
        })
    }

    /// Masked sandpaper difference image; map and illumination share `seed`.
    pub fn sandpaper(&self, mesh: u32, seed: u64) -> Result<DifferenceImage> {
        let map = sandpaper_heightmap(mesh, seed, (WIDTH, HEIGHT))?;
        let capture = CaptureParams::new(REFERENCE_FORCE_N, REFERENCE_PRESSURE_KPA, (0, 0), seed)?;
        let image = self.renderer.render(&map, &capture);
        difference_image(&image, &self.reference).masked(self.mask_fraction)
    }
}

/// 8-bit grayscale raster, stored as ASCII portable graymap (P2, maxval 255).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub data: Vec<u8>,
}

impl GrayImage {
    /// `round(255 · v)` with `v` clamped to `[0, 1]`.
    pub fn from_unit(width: usize, height: usize, values: &[f64]) -> Self {
        Self {
            width,
            height,
            data: values
                .iter()
                .map(|v| (v.clamp(0.0, 1.0) * 255.0).round() as u8)
                .collect(),
        }
    }

    /// Linear stretch of `values` from their min..max onto 0..255.
    pub fn from_stretched(width: usize, height: usize, values: &[f64]) -> Self {
        let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let span = if hi > lo { hi - lo } else { 1.0 };
        let unit: Vec<f64> = values.iter().map(|v| (v - lo) / span).collect();
        Self::from_unit(width, height, &unit)
    }

    pub fn to_unit(&self) -> Vec<f64> {
        self.data.iter().map(|&b| b as f64 / 255.0).collect()
    }

    /// One header line per field, then one text row per image row.
    pub fn to_p2(&self) -> String {
        let mut out = String::with_capacity(self.data.len() * 4 + 32);
        let _ = write!(out, "P2\n{} {}\n255\n", self.width, self.height);
        for row in self.data.chunks(self.width.max(1)) {
            let mut first = true;
            for v in row {
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_p2(text: &str) -> Result<Self> {
        let err = |m: &str| SynthesisError::Pgm(m.to_string());
        let mut tokens = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(str::split_whitespace);
        if tokens.next() != Some("P2") {
            return Err(err("missing P2 magic"));
        }
        let mut num = |what: &str| -> Result<usize> {
            tokens
                .next()
                .ok_or_else(|| err(&format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|_| err(&format!("bad {what}")))
        };
        let width = num("width")?;
        let height = num("height")?;
        let maxval = num("maxval")?;
        if maxval != 255 {
            return Err(err("maxval must be 255"));
        }
        let mut data = Vec::with_capacity(width * height);
        for _ in 0..width * height {
            let v = num("pixel")?;
            data.push(u8::try_from(v).map_err(|_| err("pixel above maxval"))?);
        }
        if tokens.next().is_some() {
            return Err(err("trailing data"));
        }
        Ok(Self { width, height, data })
    }
}

pub const MANIFEST_HEADER: &str = "path,class_id,press_force_n,pressure_kpa,seed";

#[derive(Debug, Clone, PartialEq)]
pub struct ManifestRow {
    pub path: String,
    pub class_id: usize,
    pub press_force_n: f64,
    pub pressure_kpa: f64,
    pub seed: u64,
}

pub fn manifest_to_csv(rows: &[ManifestRow]) -> String {
    let mut out = String::from(MANIFEST_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{:.6},{:.6},{}",
            r.path, r.class_id, r.press_force_n, r.pressure_kpa, r.seed
        );
    }
    out
}

pub fn manifest_from_csv(text: &str) -> Result<Vec<ManifestRow>> {
    let err = |line: usize, m: &str| SynthesisError::Manifest(format!("line {line}: {m}"));
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == MANIFEST_HEADER => {}
        _ => return Err(err(1, "missing header")),
    }
    lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 5 {
                return Err(err(i + 1, "expected 5 fields"));
            }
            Ok(ManifestRow {
                path: f[0].to_string(),
                class_id: f[1].parse().map_err(|_| err(i + 1, "bad class_id"))?,
                press_force_n: f[2].parse().map_err(|_| err(i + 1, "bad press_force_n"))?,
                pressure_kpa: f[3].parse().map_err(|_| err(i + 1, "bad pressure_kpa"))?,
                seed: f[4].parse().map_err(|_| err(i + 1, "bad seed"))?,
            })
        })
        .collect()
}
