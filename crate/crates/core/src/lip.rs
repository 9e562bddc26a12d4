//! Corrugated lip contours, sinusoidal test substrates and the lip microhole array.
//!
//! Lengths are in millimetres. The lip contour is the polar curve
//! `r(s) = R0 + A sin(N s)`; the substrate is the cosine ridge
//! `y(x) = a cos(2πx / T)` with the lip centred over the crest at `x = 0`.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LipError {
    #[error("invalid lip: {0}")]
    InvalidLip(String),
    #[error("invalid substrate wavelength {0}")]
    InvalidSubstrate(f64),
    #[error("contour needs at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("invalid hole layout: {0}")]
    InvalidLayout(String),
    #[error("intra-ring overlap on ring {ring}: center spacing {spacing:.4} mm <= hole diameter {diameter} mm")]
    IntraRingOverlap { ring: usize, spacing: f64, diameter: f64 },
    #[error("inter-ring overlap: ring interval {interval} mm <= hole diameter {diameter} mm")]
    InterRingOverlap { interval: f64, diameter: f64 },
    #[error("ring {ring} at radius {radius} mm leaves the lip annulus [{inner}, {outer}] mm")]
    OutsideAnnulus {
        ring: usize,
        radius: f64,
        inner: f64,
        outer: f64,
    },
}

pub type Result<T> = std::result::Result<T, LipError>;

/// Outer diameter shared by the corrugated lips (mm).
pub const OUTER_DIAMETER_MM: f64 = 60.0;
pub const BASE_RADIUS_MM: f64 = 28.5;
pub const AMPLITUDE_MM: f64 = 1.5;
pub const INNER_DIAMETER_MM: f64 = 40.0;
pub const SUBSTRATE_AMPLITUDE_MM: f64 = 0.5;
pub const MIN_CONTOUR_SAMPLES: usize = 64;

/// How a circular (N = 0) lip is sized relative to the corrugated ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LipSizing {
    /// Every lip keeps `R0 = 28.5 mm`; the circle is 57 mm across.
    SharedBaseRadius,
    /// Every lip reaches the 60 mm outer diameter; the circle has radius 30 mm.
    SharedOuterDiameter,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LipSpec {
    pub cycles: u32,
    pub base_radius: f64,
    pub amplitude: f64,
    pub inner_diameter: f64,
}

impl LipSpec {
    pub fn new(cycles: u32, base_radius: f64, amplitude: f64, inner_diameter: f64) -> Result<Self> {
        let spec = Self {
            cycles,
            base_radius,
            amplitude,
            inner_diameter,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The fabricated lip family: `R0 = 28.5`, `A = 1.5`, inner diameter 40 mm.
    pub fn standard(cycles: u32) -> Self {
        Self::sized(cycles, LipSizing::SharedBaseRadius)
    }

    pub fn sized(cycles: u32, sizing: LipSizing) -> Self {
        let base_radius = match (sizing, cycles) {
            (LipSizing::SharedOuterDiameter, 0) => OUTER_DIAMETER_MM / 2.0,
            _ => BASE_RADIUS_MM,
        };
        Self {
            cycles,
            base_radius,
            amplitude: AMPLITUDE_MM,
            inner_diameter: INNER_DIAMETER_MM,
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = [self.base_radius, self.amplitude, self.inner_diameter]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(LipError::InvalidLip("non-finite dimension".into()));
        }
        if !(self.amplitude >= 0.0 && self.base_radius > self.amplitude) {
            return Err(LipError::InvalidLip(format!(
                "need R0 > A >= 0 (R0 = {}, A = {})",
                self.base_radius, self.amplitude
            )));
        }
        if !(self.inner_diameter >= 0.0 && self.inner_diameter < 2.0 * self.min_radius()) {
            return Err(LipError::InvalidLip(format!(
                "inner diameter {} must be below 2(R0 - A) = {}",
                self.inner_diameter,
                2.0 * self.min_radius()
            )));
        }
        Ok(())
    }

    /// Contour radius at angle `s`.
    pub fn radius_at(&self, s: f64) -> f64 {
        self.base_radius + self.amplitude * (self.cycles as f64 * s).sin()
    }

    pub fn max_radius(&self) -> f64 {
        if self.cycles == 0 {
            self.base_radius
        } else {
            self.base_radius + self.amplitude
        }
    }

    pub fn min_radius(&self) -> f64 {
        if self.cycles == 0 {
            self.base_radius
        } else {
            self.base_radius - self.amplitude
        }
    }
}

/// Closed contour sampled at `samples` uniform angles in `[0, 2π)`.
///
/// The last point connects back to the first; it is not repeated.
pub fn lip_contour(spec: &LipSpec, samples: usize) -> Result<Vec<[f64; 2]>> {
    spec.validate()?;
    if samples < MIN_CONTOUR_SAMPLES {
        return Err(LipError::TooFewSamples {
            min: MIN_CONTOUR_SAMPLES,
            got: samples,
        });
    }
    Ok((0..samples)
        .map(|i| {
            let s = TAU * i as f64 / samples as f64;
            let r = spec.radius_at(s);
            [r * s.cos(), r * s.sin()]
        })
        .collect())
}

/// Length of a closed polyline.
pub fn perimeter(points: &[[f64; 2]]) -> f64 {
    let n = points.len();
    (0..n)
        .map(|i| {
            let (a, b) = (points[i], points[(i + 1) % n]);
            (b[0] - a[0]).hypot(b[1] - a[1])
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubstrateSpec {
    /// `None` is the flat substrate.
    wavelength: Option<f64>,
    pub amplitude: f64,
}

impl SubstrateSpec {
    pub fn flat() -> Self {
        Self {
            wavelength: None,
            amplitude: SUBSTRATE_AMPLITUDE_MM,
        }
    }

    pub fn with_wavelength(wavelength: f64) -> Result<Self> {
        if !(wavelength.is_finite() && wavelength > 0.0) {
            return Err(LipError::InvalidSubstrate(wavelength));
        }
        Ok(Self {
            wavelength: Some(wavelength),
            amplitude: SUBSTRATE_AMPLITUDE_MM,
        })
    }

    /// Substrate for a diameter-to-wavelength ratio `D/T` with `D = 60 mm`; 0 is flat.
    pub fn from_ratio(d_over_t: f64) -> Result<Self> {
        if d_over_t == 0.0 {
            Ok(Self::flat())
        } else if d_over_t > 0.0 && d_over_t.is_finite() {
            Self::with_wavelength(OUTER_DIAMETER_MM / d_over_t)
        } else {
            Err(LipError::InvalidSubstrate(d_over_t))
        }
    }

    pub fn wavelength(&self) -> Option<f64> {
        self.wavelength
    }

    pub fn height(&self, x: f64) -> f64 {
        match self.wavelength {
            None => 0.0,
            Some(t) => self.amplitude * (TAU * x / t).cos(),
        }
    }
}

/// Substrate height at `x`: `0.5 cos(2πx/T)`, or 0 when flat.
pub fn substrate_height(spec: &SubstrateSpec, x: f64) -> f64 {
    spec.height(x)
}

/// Geometric sealing proxy: the largest substrate height range that any
/// single corrugation lobe of the lip edge has to bridge.
///
/// A lobe runs between consecutive minima of `r(s)`. A circular lip is one
/// lobe spanning the whole rim. Lower is easier to seal; this is a
/// geometric proxy, not a force prediction.
pub fn conformity_demand(lip: &LipSpec, substrate: &SubstrateSpec, samples: usize) -> Result<f64> {
    let contour = lip_contour(lip, samples)?;
    if substrate.wavelength.is_none() {
        return Ok(0.0);
    }
    let lobes = lip.cycles.max(1) as usize;
    let mut x_lo = vec![f64::INFINITY; lobes];
    let mut x_hi = vec![f64::NEG_INFINITY; lobes];
    // sin(N s) is minimal at s = 3π / 2N + 2πk / N.
    let first_min = if lip.cycles == 0 {
        0.0
    } else {
        1.5 * PI / lip.cycles as f64
    };
    let lobe_width = TAU / lobes as f64;
    for (i, p) in contour.iter().enumerate() {
        let s = TAU * i as f64 / samples as f64;
        let lobe = (((s - first_min).rem_euclid(TAU)) / lobe_width) as usize;
        let lobe = lobe.min(lobes - 1);
        x_lo[lobe] = x_lo[lobe].min(p[0]);
        x_hi[lobe] = x_hi[lobe].max(p[0]);
    }
    // Lobe ends are shared with the neighbours and rarely land on a sample.
    for k in 0..lobes {
        let s = first_min + lobe_width * k as f64;
        let x = lip.radius_at(s) * s.cos();
        for j in [k, (k + lobes - 1) % lobes] {
            x_lo[j] = x_lo[j].min(x);
            x_hi[j] = x_hi[j].max(x);
        }
    }
    // A lobe is a connected arc, so it covers every x between its extremes;
    // the substrate range over that interval is taken in closed form.
    Ok(x_lo
        .iter()
        .zip(&x_hi)
        .filter(|(l, _)| l.is_finite())
        .map(|(&l, &h)| substrate.range_over(l, h))
        .fold(0.0, f64::max))
}

impl SubstrateSpec {
    /// `max - min` of the height over `[a, b]`.
    pub fn range_over(&self, a: f64, b: f64) -> f64 {
        let Some(t) = self.wavelength else {
            return 0.0;
        };
        let (pa, pb) = (TAU * a / t, TAU * b / t);
        let hits = |offset: f64| ((pa - offset) / TAU).ceil() * TAU + offset <= pb;
        let hi = if hits(0.0) { 1.0 } else { pa.cos().max(pb.cos()) };
        let lo = if hits(PI) { -1.0 } else { pa.cos().min(pb.cos()) };
        self.amplitude * (hi - lo)
    }
}

/// Parameters for the microhole array on the lip's contact face.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoleLayoutSpec {
    pub holes_per_ring: usize,
    pub rings: usize,
    pub hole_diameter: f64,
    pub hole_depth: f64,
    pub ring_interval: f64,
    /// Radius of the innermost ring.
    pub base_radius: f64,
    /// Radial span of the lip face available to holes.
    pub annulus: (f64, f64),
}

impl HoleLayoutSpec {
    /// 0.5 mm holes, 0.3 mm deep, three rings 0.6 mm apart starting at 21 mm.
    pub fn standard(holes_per_ring: usize) -> Self {
        Self {
            holes_per_ring,
            rings: 3,
            hole_diameter: 0.5,
            hole_depth: 0.3,
            ring_interval: 0.6,
            base_radius: 21.0,
            annulus: (INNER_DIAMETER_MM / 2.0, BASE_RADIUS_MM - AMPLITUDE_MM),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HoleLayout {
    pub hole_diameter: f64,
    pub hole_depth: f64,
    pub ring_radii: Vec<f64>,
    pub holes_per_ring: usize,
    pub centers: Vec<[f64; 2]>,
}

/// Standard-depth layout inside the default lip annulus.
pub fn hole_layout(
    holes_per_ring: usize,
    rings: usize,
    hole_d: f64,
    ring_interval: f64,
    base_radius: f64,
) -> Result<HoleLayout> {
    let spec = HoleLayoutSpec {
        holes_per_ring,
        rings,
        hole_diameter: hole_d,
        ring_interval,
        base_radius,
        ..HoleLayoutSpec::standard(holes_per_ring)
    };
    spec.build()
}

impl HoleLayoutSpec {
    /// Places `holes_per_ring` holes at uniform angles on each ring.
    ///
    /// Rings share the same angular phase, so the closest cross-ring pair is
    /// radially aligned and separated by exactly the ring interval.
    pub fn build(&self) -> Result<HoleLayout> {
        let spec = self;
        let d = spec.hole_diameter;
        if spec.holes_per_ring == 0 || spec.rings == 0 {
            return Err(LipError::InvalidLayout("need at least one ring and one hole".into()));
        }
        if !(d > 0.0 && spec.ring_interval > 0.0 && spec.base_radius > 0.0 && spec.hole_depth > 0.0) {
            return Err(LipError::InvalidLayout("dimensions must be positive".into()));
        }
        let ring_radii: Vec<f64> = (0..spec.rings)
            .map(|k| spec.base_radius + k as f64 * spec.ring_interval)
            .collect();
        let (inner, outer) = spec.annulus;
        for (ring, &radius) in ring_radii.iter().enumerate() {
            if radius - d / 2.0 < inner || radius + d / 2.0 > outer {
                return Err(LipError::OutsideAnnulus {
                    ring,
                    radius,
                    inner,
                    outer,
                });
            }
        }
        let chord = |r: f64| 2.0 * r * (PI / spec.holes_per_ring as f64).sin();
        if spec.holes_per_ring > 1 {
            // The innermost ring has the tightest spacing.
            let spacing = chord(ring_radii[0]);
            if spacing <= d {
                return Err(LipError::IntraRingOverlap {
                    ring: 0,
                    spacing,
                    diameter: d,
                });
            }
        }
        if spec.rings > 1 && spec.ring_interval <= d {
            return Err(LipError::InterRingOverlap {
                interval: spec.ring_interval,
                diameter: d,
            });
        }
        let centers = ring_radii
            .iter()
            .flat_map(|&r| {
                (0..spec.holes_per_ring).map(move |j| {
                    let a = TAU * j as f64 / spec.holes_per_ring as f64;
                    [r * a.cos(), r * a.sin()]
                })
            })
            .collect();
        Ok(HoleLayout {
            hole_diameter: d,
            hole_depth: spec.hole_depth,
            ring_radii,
            holes_per_ring: spec.holes_per_ring,
            centers,
        })
    }
}

pub const POINTS_HEADER: &str = "x_mm,y_mm";

pub fn points_to_csv(points: &[[f64; 2]]) -> String {
    let mut out = String::from(POINTS_HEADER);
    out.push('\n');
    for p in points {
        let _ = writeln!(out, "{:.6},{:.6}", p[0], p[1]);
    }
    out
}

pub fn points_from_csv(text: &str) -> Result<Vec<[f64; 2]>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(POINTS_HEADER) {
        return Err(LipError::InvalidLayout(format!("missing `{POINTS_HEADER}` header")));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (x, y) = l
                .split_once(',')
                .ok_or_else(|| LipError::InvalidLayout(format!("bad row `{l}`")))?;
            let parse = |v: &str| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| LipError::InvalidLayout(format!("bad number `{v}`")))
            };
            Ok([parse(x)?, parse(y)?])
        })
        .collect()
}

/// SVG drawing of a lip outline and, optionally, its hole array.
///
/// Uses only `<svg>`, `<polygon>` (the contour), `<circle>` (one per hole and
/// one for the inner bore) and `<g>`; units are millimetres with the origin
/// at the lip centre.
pub fn lip_svg(contour: &[[f64; 2]], inner_diameter: f64, holes: Option<&HoleLayout>) -> String {
    let extent = contour
        .iter()
        .map(|p| p[0].abs().max(p[1].abs()))
        .fold(inner_diameter / 2.0, f64::max)
        + 1.0;
    let size = 2.0 * extent;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size:.3}mm" height="{size:.3}mm" viewBox="{:.3} {:.3} {size:.3} {size:.3}">"#,
        -extent, -extent
    );
    let pts: Vec<String> = contour.iter().map(|p| format!("{:.4},{:.4}", p[0], -p[1])).collect();
    let _ = writeln!(
        out,
        r#"  <polygon points="{}" fill="none" stroke="black" stroke-width="0.1"/>"#,
        pts.join(" ")
    );
    let _ = writeln!(
        out,
        r#"  <circle cx="0" cy="0" r="{:.4}" fill="none" stroke="gray" stroke-width="0.1"/>"#,
        inner_diameter / 2.0
    );
    if let Some(layout) = holes {
        out.push_str("  <g fill=\"none\" stroke=\"blue\" stroke-width=\"0.02\">\n");
        for c in &layout.centers {
            let _ = writeln!(
                out,
                r#"    <circle cx="{:.4}" cy="{:.4}" r="{:.4}"/>"#,
                c[0],
                -c[1],
                layout.hole_diameter / 2.0
            );
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}
