//! Spectral texture features and a nearest-centroid texture classifier.
//!
//! Radial bands are measured in frequency bins from the centred DC bin and
//! normalized by [`BAND_RADIUS_BINS`]; the outermost band also collects
//! everything beyond that radius.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rustfft::num_complex::Complex64;
use thiserror::Error;

use crate::fft::Fft2;
use crate::seed::stream_rng;
use crate::synthesis::{center_mask, DifferenceImage, TactileImage, HEIGHT, WIDTH};

pub const BANDS: usize = 8;
/// Radius, in frequency bins, that maps to normalized radius 1.
pub const BAND_RADIUS_BINS: f64 = 48.0;
pub const FEATURES: usize = BANDS + 3;
/// Smooth-surface difference images stay below this roughness index.
pub const SMOOTH_ROUGHNESS_THRESHOLD: f64 = 0.03;
pub const TRAIN_FRACTION: f64 = 0.8;
pub const MIN_SAMPLES_PER_CLASS: usize = 5;
/// Non-DC power below this share of the total is transform round-off.
const LEAKAGE_FLOOR: f64 = 1e-20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("expected a {WIDTH}x{HEIGHT} image, got {0}x{1}")]
    DimensionMismatch(usize, usize),
    #[error("image has no non-DC spectral energy")]
    ZeroEnergy,
    #[error("features require a masked image")]
    Unmasked,
    #[error("need at least {need} {what}, got {got}")]
    TooFew {
        what: &'static str,
        need: usize,
        got: usize,
    },
    #[error("model has no trained classes")]
    Untrained,
    #[error("empty test set")]
    EmptyTestSet,
    #[error("label {0} not known to the model")]
    UnknownLabel(usize),
    #[error("model file line {line}: {reason}")]
    ModelFormat { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, SpectralError>;

/// Anything laid out as a row-major grid of intensities.
pub trait ImageGrid {
    fn grid_width(&self) -> usize;
    fn grid_height(&self) -> usize;
    fn grid_values(&self) -> &[f64];
}

impl ImageGrid for DifferenceImage {
    fn grid_width(&self) -> usize {
        self.width()
    }
    fn grid_height(&self) -> usize {
        self.height()
    }
    fn grid_values(&self) -> &[f64] {
        self.values()
    }
}

impl ImageGrid for TactileImage {
    fn grid_width(&self) -> usize {
        WIDTH
    }
    fn grid_height(&self) -> usize {
        HEIGHT
    }
    fn grid_values(&self) -> &[f64] {
        self.pixels()
    }
}

/// Per-thread transform plan plus cached band and mask layouts.
struct Workspace {
    fft: Fft2,
    /// Band of each unshifted bin for `BANDS` bands; `None` for DC.
    bands: Vec<Option<u8>>,
    masks: Vec<(u64, Vec<bool>)>,
}

impl Workspace {
    fn new() -> Self {
        let (w, h) = (WIDTH, HEIGHT);
        let mut bands = Vec::with_capacity(w * h);
        for y in 0..h {
            let dy = fftfreq_bin(y, h);
            for x in 0..w {
                let dx = fftfreq_bin(x, w);
                bands.push(if (dx, dy) == (0.0, 0.0) {
                    None
                } else {
                    Some(band_of(dx.hypot(dy), BANDS) as u8)
                });
            }
        }
        Self {
            fft: Fft2::new(w, h),
            bands,
            masks: Vec::new(),
        }
    }

    fn mask(&mut self, fraction: f64) -> &[bool] {
        let key = fraction.to_bits();
        let pos = match self.masks.iter().position(|(k, _)| *k == key) {
            Some(p) => p,
            None => {
                let m = center_mask(WIDTH, HEIGHT, fraction).unwrap_or_else(|_| vec![false; WIDTH * HEIGHT]);
                self.masks.push((key, m));
                self.masks.len() - 1
            }
        };
        &self.masks[pos].1
    }
}

thread_local! {
    static WORKSPACE: RefCell<Option<Workspace>> = const { RefCell::new(None) };
}

fn with_workspace<T>(f: impl FnOnce(&mut Workspace) -> T) -> T {
    WORKSPACE.with(|cell| {
        let mut slot = cell.borrow_mut();
        f(slot.get_or_insert_with(Workspace::new))
    })
}

fn with_fft<T>(f: impl FnOnce(&Fft2) -> T) -> T {
    with_workspace(|ws| f(&ws.fft))
}

/// Signed bin offset from DC along one axis of an unshifted spectrum; the
/// centred layout puts bin `n/2` at offset `-n/2`.
fn fftfreq_bin(i: usize, n: usize) -> f64 {
    if i < n.div_ceil(2) {
        i as f64
    } else {
        i as f64 - n as f64
    }
}

fn band_of(radius_bins: f64, bands: usize) -> usize {
    ((radius_bins / BAND_RADIUS_BINS * bands as f64) as usize).min(bands - 1)
}

/// Centred `log(1 + |X|)` magnitude spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    width: usize,
    height: usize,
    values: Vec<f64>,
    centered: bool,
}

impl Spectrum {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn centered(&self) -> bool {
        self.centered
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.width + x]
    }

    /// `|X|²`, recovered from the log magnitude.
    pub fn power(&self) -> Vec<f64> {
        self.values
            .iter()
            .map(|v| {
                let m = v.exp_m1();
                m * m
            })
            .collect()
    }

    /// Bin coordinates of the zero frequency.
    pub fn dc(&self) -> (usize, usize) {
        (self.width / 2, self.height / 2)
    }
}

pub fn fft2_log_spectrum(img: &impl ImageGrid) -> Result<Spectrum> {
    check_dims(img)?;
    Ok(log_spectrum(img.grid_values()))
}

fn check_dims(img: &impl ImageGrid) -> Result<()> {
    if img.grid_width() != WIDTH || img.grid_height() != HEIGHT {
        return Err(SpectralError::DimensionMismatch(img.grid_width(), img.grid_height()));
    }
    Ok(())
}

fn log_spectrum(values: &[f64]) -> Spectrum {
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    with_fft(|fft| fft.forward(&mut buf));
    let (w, h) = (WIDTH, HEIGHT);
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        let sy = (y + h / 2) % h;
        for x in 0..w {
            let sx = (x + w / 2) % w;
            out[sy * w + sx] = buf[y * w + x].norm().ln_1p();
        }
    }
    Spectrum {
        width: w,
        height: h,
        values: out,
        centered: true,
    }
}

/// `Σ|X|² / (N Σ|x|²)`; 1 up to rounding.
pub fn parseval_ratio(img: &impl ImageGrid) -> Result<f64> {
    let spectrum = fft2_log_spectrum(img)?;
    let spectral: f64 = spectrum.power().iter().sum();
    let spatial: f64 = img.grid_values().iter().map(|v| v * v).sum();
    let n = (WIDTH * HEIGHT) as f64;
    Ok(spectral / (n * spatial))
}

/// Fractions of non-DC power in `bands` equal-width rings of normalized
/// radius. All zeros when there is no non-DC power.
pub fn radial_band_energies(spec: &Spectrum, bands: usize) -> Vec<f64> {
    let energies = band_power(spec, bands);
    let total: f64 = energies.iter().sum();
    let (cx, cy) = spec.dc();
    let dc = spec.get(cx, cy).exp_m1().powi(2);
    if total > LEAKAGE_FLOOR * (total + dc) {
        energies.iter().map(|e| e / total).collect()
    } else {
        vec![0.0; bands]
    }
}

fn band_power(spec: &Spectrum, bands: usize) -> Vec<f64> {
    let (cx, cy) = spec.dc();
    let power = spec.power();
    let mut out = vec![0.0; bands.max(1)];
    for y in 0..spec.height {
        let dy = y as f64 - cy as f64;
        for x in 0..spec.width {
            if (x, y) == (cx, cy) {
                continue;
            }
            let r = (x as f64 - cx as f64).hypot(dy);
            out[band_of(r, bands)] += power[y * spec.width + x];
        }
    }
    out
}

/// Values inside the image's mask with the in-mask mean removed; zero outside.
fn centred_masked(img: &DifferenceImage) -> Result<(Vec<f64>, Vec<bool>)> {
    check_dims(img)?;
    let fraction = img.mask_fraction().ok_or(SpectralError::Unmasked)?;
    let mask = with_workspace(|ws| ws.mask(fraction).to_vec());
    let inside: Vec<f64> = img
        .values()
        .iter()
        .zip(&mask)
        .filter(|(_, &m)| m)
        .map(|(&v, _)| v)
        .collect();
    let m = if inside.is_empty() {
        0.0
    } else {
        inside.iter().sum::<f64>() / inside.len() as f64
    };
    let peak = inside.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let centred: Vec<f64> = img
        .values()
        .iter()
        .zip(&mask)
        .map(|(&v, &k)| if k { v - m } else { 0.0 })
        .collect();
    // A constant image leaves only rounding residue after the mean is removed.
    let spread = centred.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if spread <= 1e-9 * peak {
        return Ok((vec![0.0; centred.len()], mask));
    }
    Ok((centred, mask))
}

/// Band powers of the centred masked image, straight from the transform.
fn texture_bands(img: &DifferenceImage) -> Result<(Vec<f64>, f64)> {
    let (centred, _) = centred_masked(img)?;
    let power = with_workspace(|ws| {
        let mut buf: Vec<Complex64> = centred.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        ws.fft.forward(&mut buf);
        let mut out = vec![0.0; BANDS];
        for (z, band) in buf.iter().zip(&ws.bands) {
            if let Some(b) = band {
                out[*b as usize] += z.norm_sqr();
            }
        }
        out
    });
    let total: f64 = power.iter().sum();
    Ok((power, total))
}

/// Share of non-DC power in the upper half of the bands. Higher is rougher.
pub fn roughness_index(img: &DifferenceImage) -> Result<f64> {
    let (power, total) = texture_bands(img)?;
    if total.is_nan() || total <= 0.0 {
        return Err(SpectralError::ZeroEnergy);
    }
    Ok(power[BANDS / 2..].iter().sum::<f64>() / total)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureVector {
    pub band_energies: [f64; BANDS],
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
}

impl FeatureVector {
    pub fn as_array(&self) -> [f64; FEATURES] {
        let mut out = [0.0; FEATURES];
        out[..BANDS].copy_from_slice(&self.band_energies);
        out[BANDS] = self.mean;
        out[BANDS + 1] = self.variance;
        out[BANDS + 2] = self.skewness;
        out
    }
}

/// Band fractions of the mean-removed masked image plus moments of the
/// raw masked pixels.
pub fn extract_features(img: &DifferenceImage) -> Result<FeatureVector> {
    let (power, total) = texture_bands(img)?;
    let mut band_energies = [0.0; BANDS];
    if total > 0.0 {
        for (b, p) in band_energies.iter_mut().zip(&power) {
            *b = p / total;
        }
    }
    let fraction = img.mask_fraction().ok_or(SpectralError::Unmasked)?;
    let inside: Vec<f64> = with_workspace(|ws| {
        img.values()
            .iter()
            .zip(ws.mask(fraction))
            .filter(|(_, &m)| m)
            .map(|(&v, _)| v)
            .collect()
    });
    let n = inside.len().max(1) as f64;
    let mean = inside.iter().sum::<f64>() / n;
    let variance = inside.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let third = inside.iter().map(|v| (v - mean).powi(3)).sum::<f64>() / n;
    let skewness = third / variance.max(1e-12).powf(1.5);
    Ok(FeatureVector {
        band_energies,
        mean,
        variance,
        skewness,
    })
}

/// Which feature components the classifier uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureSet {
    All,
    /// Band fractions only; invariant to intensity scaling.
    BandsOnly,
}

impl FeatureSet {
    fn len(self) -> usize {
        match self {
            FeatureSet::All => FEATURES,
            FeatureSet::BandsOnly => BANDS,
        }
    }

    fn select(self, f: &FeatureVector) -> Vec<f64> {
        f.as_array()[..self.len()].to_vec()
    }
}

/// Z-normalized nearest-centroid model.
#[derive(Debug, Clone, PartialEq)]
pub struct CentroidModel {
    features: FeatureSet,
    offset: Vec<f64>,
    scale: Vec<f64>,
    labels: Vec<usize>,
    centroids: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub label: usize,
    /// Distance gap between the runner-up and the winning centroid.
    pub margin: f64,
}

pub fn fit_classifier(train: &[(FeatureVector, usize)]) -> Result<CentroidModel> {
    fit_classifier_with(train, FeatureSet::All)
}

pub fn fit_classifier_with(train: &[(FeatureVector, usize)], features: FeatureSet) -> Result<CentroidModel> {
    let mut by_class: BTreeMap<usize, Vec<Vec<f64>>> = BTreeMap::new();
    for (f, label) in train {
        by_class.entry(*label).or_default().push(features.select(f));
    }
    if by_class.len() < 2 {
        return Err(SpectralError::TooFew {
            what: "classes",
            need: 2,
            got: by_class.len(),
        });
    }
    if let Some(small) = by_class.values().map(Vec::len).min() {
        if small < MIN_SAMPLES_PER_CLASS {
            return Err(SpectralError::TooFew {
                what: "samples per class",
                need: MIN_SAMPLES_PER_CLASS,
                got: small,
            });
        }
    }
    let dim = features.len();
    let n = train.len() as f64;
    let rows: Vec<Vec<f64>> = train.iter().map(|(f, _)| features.select(f)).collect();
    let offset: Vec<f64> = (0..dim).map(|k| rows.iter().map(|r| r[k]).sum::<f64>() / n).collect();
    let scale: Vec<f64> = (0..dim)
        .map(|k| {
            let var = rows.iter().map(|r| (r[k] - offset[k]).powi(2)).sum::<f64>() / n;
            let sd = var.sqrt();
            if sd > 0.0 && sd.is_finite() {
                sd
            } else {
                1.0
            }
        })
        .collect();
    let mut model = CentroidModel {
        features,
        offset,
        scale,
        labels: Vec::new(),
        centroids: Vec::new(),
    };
    for (label, members) in by_class {
        let mut c = vec![0.0; dim];
        for m in &members {
            for (acc, z) in c.iter_mut().zip(model.normalize_raw(m)) {
                *acc += z;
            }
        }
        for v in &mut c {
            *v /= members.len() as f64;
        }
        model.labels.push(label);
        model.centroids.push(c);
    }
    Ok(model)
}

impl CentroidModel {
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn centroids(&self) -> &[Vec<f64>] {
        &self.centroids
    }

    pub fn feature_set(&self) -> FeatureSet {
        self.features
    }

    pub fn offset(&self) -> &[f64] {
        &self.offset
    }

    pub fn scale(&self) -> &[f64] {
        &self.scale
    }

    fn normalize_raw(&self, raw: &[f64]) -> Vec<f64> {
        raw.iter()
            .zip(self.offset.iter().zip(&self.scale))
            .map(|(v, (o, s))| (v - o) / s)
            .collect()
    }

    pub fn normalize(&self, f: &FeatureVector) -> Vec<f64> {
        self.normalize_raw(&self.features.select(f))
    }

    pub fn classify_features(&self, f: &FeatureVector) -> Result<Classification> {
        if self.labels.is_empty() {
            return Err(SpectralError::Untrained);
        }
        let z = self.normalize(f);
        let mut best = (f64::INFINITY, 0usize);
        let mut second = f64::INFINITY;
        for (i, c) in self.centroids.iter().enumerate() {
            let d = euclid(&z, c);
            // Strict comparison keeps the lowest label on ties.
            if d < best.0 {
                second = best.0;
                best = (d, i);
            } else if d < second {
                second = d;
            }
        }
        Ok(Classification {
            label: self.labels[best.1],
            margin: if second.is_finite() { second - best.0 } else { 0.0 },
        })
    }

    /// Plain-text model:
    ///
    /// ```text
    /// centroid-model 1
    /// features all|bands
    /// offset v1 .. vK
    /// scale v1 .. vK
    /// class <label> v1 .. vK
    /// ```
    ///
    /// Values use `{:.17e}` so a round trip is exact.
    pub fn to_text(&self) -> String {
        let mut out = String::from("centroid-model 1\n");
        let _ = writeln!(
            out,
            "features {}",
            match self.features {
                FeatureSet::All => "all",
                FeatureSet::BandsOnly => "bands",
            }
        );
        let row = |v: &[f64]| v.iter().map(|x| format!("{x:.17e}")).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "offset {}", row(&self.offset));
        let _ = writeln!(out, "scale {}", row(&self.scale));
        for (label, c) in self.labels.iter().zip(&self.centroids) {
            let _ = writeln!(out, "class {label} {}", row(c));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let fail = |line: usize, reason: &str| SpectralError::ModelFormat {
            line,
            reason: reason.to_string(),
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        match lines.next() {
            Some((_, "centroid-model 1")) => {}
            _ => return Err(fail(1, "expected `centroid-model 1`")),
        }
        let features = match lines.next() {
            Some((_, "features all")) => FeatureSet::All,
            Some((_, "features bands")) => FeatureSet::BandsOnly,
            _ => return Err(fail(2, "expected `features all|bands`")),
        };
        let dim = features.len();
        let parse_row = |line: usize, fields: &[&str]| -> Result<Vec<f64>> {
            if fields.len() != dim {
                return Err(fail(line, &format!("expected {dim} values")));
            }
            fields
                .iter()
                .map(|f| f.parse::<f64>().map_err(|_| fail(line, "bad number")))
                .collect()
        };
        let mut keyed = |key: &str| -> Result<Vec<f64>> {
            let (line, l) = lines.next().ok_or_else(|| fail(0, "truncated"))?;
            let fields: Vec<&str> = l.split_whitespace().collect();
            if fields.first() != Some(&key) {
                return Err(fail(line, &format!("expected `{key}`")));
            }
            parse_row(line, &fields[1..])
        };
        let offset = keyed("offset")?;
        let scale = keyed("scale")?;
        if scale.iter().any(|s| s.is_nan() || *s <= 0.0) {
            return Err(fail(4, "scale must be positive"));
        }
        let mut labels = Vec::new();
        let mut centroids = Vec::new();
        for (line, l) in lines.filter(|(_, l)| !l.is_empty()) {
            let fields: Vec<&str> = l.split_whitespace().collect();
            if fields.len() < 2 || fields[0] != "class" {
                return Err(fail(line, "expected `class`"));
            }
            labels.push(fields[1].parse().map_err(|_| fail(line, "bad label"))?);
            centroids.push(parse_row(line, &fields[2..])?);
        }
        Ok(Self {
            features,
            offset,
            scale,
            labels,
            centroids,
        })
    }
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn classify(model: &CentroidModel, img: &DifferenceImage) -> Result<Classification> {
    model.classify_features(&extract_features(img)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    labels: Vec<usize>,
    /// `counts[actual][predicted]`, indexed by position in `labels`.
    counts: Vec<Vec<usize>>,
}

impl ConfusionMatrix {
    pub fn new(labels: Vec<usize>) -> Self {
        let n = labels.len();
        Self {
            labels,
            counts: vec![vec![0; n]; n],
        }
    }

    fn index(&self, label: usize) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(SpectralError::UnknownLabel(label))
    }

    pub fn record(&mut self, actual: usize, predicted: usize) -> Result<()> {
        let (a, p) = (self.index(actual)?, self.index(predicted)?);
        self.counts[a][p] += 1;
        Ok(())
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn counts(&self) -> &[Vec<usize>] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.counts.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn accuracy(&self) -> f64 {
        let trace: usize = (0..self.labels.len()).map(|i| self.counts[i][i]).sum();
        trace as f64 / self.total().max(1) as f64
    }

    /// Per-class recall; `None` for classes absent from the test set.
    pub fn recall(&self) -> Vec<Option<f64>> {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let n: usize = row.iter().sum();
                (n > 0).then(|| row[i] as f64 / n as f64)
            })
            .collect()
    }

    /// Header `actual,<label>...`; one row per actual class.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("actual");
        for l in &self.labels {
            let _ = write!(out, ",{l}");
        }
        out.push('\n');
        for (l, row) in self.labels.iter().zip(&self.counts) {
            let _ = write!(out, "{l}");
            for c in row {
                let _ = write!(out, ",{c}");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let fail = |line: usize, reason: &str| SpectralError::ModelFormat {
            line,
            reason: reason.to_string(),
        };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| fail(1, "empty"))?;
        let mut head = header.split(',');
        if head.next() != Some("actual") {
            return Err(fail(1, "expected `actual` header"));
        }
        let labels: Vec<usize> = head
            .map(|f| f.parse().map_err(|_| fail(1, "bad label")))
            .collect::<Result<_>>()?;
        let mut counts = Vec::new();
        for (i, l) in lines {
            let fields: Vec<usize> = l
                .split(',')
                .map(|f| f.parse().map_err(|_| fail(i + 1, "bad count")))
                .collect::<Result<_>>()?;
            if fields.len() != labels.len() + 1 || labels.get(counts.len()) != Some(&fields[0]) {
                return Err(fail(i + 1, "row does not match header"));
            }
            counts.push(fields[1..].to_vec());
        }
        if counts.len() != labels.len() {
            return Err(fail(0, "row count does not match header"));
        }
        Ok(Self { labels, counts })
    }
}

pub fn evaluate(model: &CentroidModel, test: &[(FeatureVector, usize)]) -> Result<ConfusionMatrix> {
    if test.is_empty() {
        return Err(SpectralError::EmptyTestSet);
    }
    let mut cm = ConfusionMatrix::new(model.labels.clone());
    for (f, actual) in test {
        let predicted = model.classify_features(f)?.label;
        cm.record(*actual, predicted)?;
    }
    Ok(cm)
}

/// Class-stratified split of item indices. Each class keeps
/// `floor(TRAIN_FRACTION · n)` items for training, chosen by a seeded shuffle.
pub fn stratified_split(labels: &[usize], seed: u64) -> (Vec<usize>, Vec<usize>) {
    let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        by_class.entry(l).or_default().push(i);
    }
    let mut rng = stream_rng(seed, "split");
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for (_, mut idx) in by_class {
        idx.shuffle(&mut rng);
        let k = (idx.len() as f64 * TRAIN_FRACTION).floor() as usize;
        train.extend_from_slice(&idx[..k]);
        test.extend_from_slice(&idx[k..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    (train, test)
}

/// For each class, the distance to the nearest other centroid over the mean
/// distance of that class's samples to its own centroid, in the model's
/// normalized space.
pub fn separability_ratios(model: &CentroidModel, data: &[(FeatureVector, usize)]) -> Vec<f64> {
    model
        .labels
        .iter()
        .enumerate()
        .map(|(i, &label)| {
            let own = &model.centroids[i];
            let spread: Vec<f64> = data
                .iter()
                .filter(|(_, l)| *l == label)
                .map(|(f, _)| euclid(&model.normalize(f), own))
                .collect();
            let intra = spread.iter().sum::<f64>() / spread.len().max(1) as f64;
            let inter = model
                .centroids
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, c)| euclid(own, c))
                .fold(f64::INFINITY, f64::min);
            inter / intra
        })
        .collect()
}
