//! Membrane deflection and attachment force of a sealed suction cup.
//!
//! The flexible membrane is a clamped circular film of radius `R` and
//! thickness `t`. Pumping the cavity below atmospheric pressure pulls the
//! membrane into the cavity by a central deflection `w`, which enlarges the
//! sealed gap between membrane and substrate and lowers the gap pressure.
//! The gap pressure deficit times the sealed area is the attachment force.
//!
//! The deflection profile is a parabola, the edge stress follows an
//! incompressible neo-Hookean film with equal radial and hoop stretch, and
//! the gap gas is isothermal. `w` is measured as a magnitude (deflection into
//! the cavity is positive), so the solved branch always has a tensile edge
//! stress, a gap pressure at or below atmospheric and a nonnegative force.
//!
//! Everything in this module works in SI units (m, Pa, N). Conversions to
//! mm/kPa/MPa happen only in the constructors and accessors named for them.

use std::f64::consts::PI;
use std::fmt::Write as _;

use thiserror::Error;

/// Largest suction (Pa) for which the rigid-cap assumption holds.
pub const MAX_SUCTION_PA: f64 = 15_000.0;
/// Upper end of the deflection bracket as a multiple of the gap height.
pub const BRACKET_FACTOR: f64 = 2.0;
/// Bisection stops once the bracket is narrower than this (m).
pub const BISECTION_TOL_M: f64 = 1e-12;
/// Convergence target on the force-balance residual (Pa).
pub const RESIDUAL_TOL_PA: f64 = 1e-3;
/// Iteration cap shared by the bisection and polish stages.
pub const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MechanicsError {
    #[error("invalid membrane parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("radius {r} outside membrane span [0, {radius}]")]
    RadiusOutOfRange { r: f64, radius: f64 },
    #[error("arc length {arc} shorter than chord {chord}: compressive regime")]
    CompressiveArc { arc: f64, chord: f64 },
    #[error("cavity pressure {p_cavity} Pa exceeds atmospheric {p_atm} Pa")]
    PositiveGauge { p_cavity: f64, p_atm: f64 },
    #[error("suction {suction} Pa beyond the {limit} Pa validity limit")]
    BeyondValidity { suction: f64, limit: f64 },
    #[error("residual does not change sign on [{lo}, {hi}] m ({f_lo}, {f_hi})")]
    NoRootInBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("solver did not converge after {iterations} iterations (residual {residual} Pa)")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("detachment series needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("detachment displacements must strictly increase (index {index})")]
    Unordered { index: usize },
    #[error("csv: {0}")]
    Csv(String),
}

pub type Result<T> = std::result::Result<T, MechanicsError>;

/// Geometric and material constants of the membrane model, in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembraneParams {
    radius: f64,
    thickness: f64,
    neo_hookean_c: f64,
    atmospheric: f64,
    gap_height: f64,
}

impl MembraneParams {
    /// Thin-film requirement: `t / R` may not exceed this.
    pub const MAX_THICKNESS_RATIO: f64 = 0.2;

    pub fn new(
        radius_m: f64,
        thickness_m: f64,
        neo_hookean_c_pa: f64,
        atmospheric_pa: f64,
        gap_height_m: f64,
    ) -> Result<Self> {
        positive("R", radius_m)?;
        positive("t", thickness_m)?;
        positive("C", neo_hookean_c_pa)?;
        positive("P_atm", atmospheric_pa)?;
        positive("h", gap_height_m)?;
        if thickness_m / radius_m > Self::MAX_THICKNESS_RATIO {
            return Err(MechanicsError::InvalidParameter {
                name: "t",
                value: thickness_m,
                reason: "thin-film model needs t/R <= 0.2",
            });
        }
        Ok(Self {
            radius: radius_m,
            thickness: thickness_m,
            neo_hookean_c: neo_hookean_c_pa,
            atmospheric: atmospheric_pa,
            gap_height: gap_height_m,
        })
    }

    /// Builds parameters from the mm / MPa units used in tabulated data.
    pub fn from_table_units(
        radius_mm: f64,
        thickness_mm: f64,
        neo_hookean_c_mpa: f64,
        atmospheric_mpa: f64,
        gap_height_mm: f64,
    ) -> Result<Self> {
        Self::new(
            radius_mm * 1e-3,
            thickness_mm * 1e-3,
            neo_hookean_c_mpa * 1e6,
            atmospheric_mpa * 1e6,
            gap_height_mm * 1e-3,
        )
    }

    /// R = 20 mm, t = 2 mm, C = 0.098 MPa, P_atm = 0.101 MPa, h = 2 mm.
    pub fn reference() -> Self {
        Self::from_table_units(20.0, 2.0, 0.098, 0.101, 2.0).expect("reference parameters are valid")
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
    pub fn thickness(&self) -> f64 {
        self.thickness
    }
    pub fn neo_hookean_c(&self) -> f64 {
        self.neo_hookean_c
    }
    pub fn atmospheric(&self) -> f64 {
        self.atmospheric
    }
    pub fn gap_height(&self) -> f64 {
        self.gap_height
    }

    /// Sealed area `πR²` (m²).
    pub fn sealed_area(&self) -> f64 {
        PI * self.radius * self.radius
    }

    /// Absolute cavity pressure (Pa) for a gauge reading in kPa.
    pub fn cavity_from_gauge_kpa(&self, gauge_kpa: f64) -> f64 {
        self.atmospheric + gauge_kpa * 1e3
    }
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(MechanicsError::InvalidParameter {
            name,
            value,
            reason: "must be finite and positive",
        })
    }
}

/// Solved membrane state at one cavity pressure. SI units throughout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuctionSolution {
    /// Central deflection into the cavity (m).
    pub deflection: f64,
    /// Deformed arc length across the diameter (m).
    pub arc_length: f64,
    /// Radial edge stress (Pa).
    pub radial_stress: f64,
    /// Small-deformation edge tangent angle `2w/R` (rad).
    pub edge_angle: f64,
    /// Pressure in the membrane-substrate gap (Pa).
    pub gap_pressure: f64,
    /// Trans-membrane difference `P_gap - P_cavity` (Pa).
    pub pressure_difference: f64,
    /// Attachment force (N).
    pub force: f64,
    /// Force-balance residual at the returned deflection (Pa).
    pub residual: f64,
    pub iterations: usize,
}

impl SuctionSolution {
    pub fn deflection_mm(&self) -> f64 {
        self.deflection * 1e3
    }
    pub fn gap_pressure_mpa(&self) -> f64 {
        self.gap_pressure * 1e-6
    }
    pub fn radial_stress_mpa(&self) -> f64 {
        self.radial_stress * 1e-6
    }
    pub fn residual_mpa(&self) -> f64 {
        self.residual * 1e-6
    }
}

/// Parabolic deflection profile `z(r) = w (1 - r²/R²)`.
pub fn deflection_at(r: f64, w: f64, radius: f64) -> Result<f64> {
    if !(0.0..=radius).contains(&r) {
        return Err(MechanicsError::RadiusOutOfRange { r, radius });
    }
    Ok(w * (1.0 - (r * r) / (radius * radius)))
}

/// Arc length of the parabolic profile across the full diameter.
///
/// Closed form of `2 ∫₀ᴿ √(1 + (dz/dr)²) dr` with `u = 2w/R`:
/// `L = R √(1+u²) + R asinh(u) / u`.
pub fn arc_length(w: f64, radius: f64) -> f64 {
    let u = 2.0 * w / radius;
    radius * ((1.0 + u * u).sqrt() + asinh_over(u))
}

/// `dL/dw` for [`arc_length`].
fn arc_length_slope(w: f64, radius: f64) -> f64 {
    let u = 2.0 * w / radius;
    let s = (1.0 + u * u).sqrt();
    // d/du [asinh(u)/u] = (u/√(1+u²) - asinh u) / u²
    let tail = if u.abs() < 1e-4 {
        -u / 3.0 + 3.0 * u * u * u / 10.0
    } else {
        (u / s - u.asinh()) / (u * u)
    };
    2.0 * (u / s + tail)
}

fn asinh_over(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 6.0 + 3.0 * u2 * u2 / 40.0
    } else {
        u.asinh() / u
    }
}

/// Neo-Hookean edge stress `2C((L/2R)² - (2R/L)⁴)`.
pub fn radial_stress(arc: f64, radius: f64, c: f64) -> Result<f64> {
    let chord = 2.0 * radius;
    // Rounding in the closed-form arc can land a hair below the chord at w = 0.
    if arc < chord * (1.0 - 1e-14) {
        return Err(MechanicsError::CompressiveArc { arc, chord });
    }
    let stretch = (arc / chord).max(1.0);
    Ok(2.0 * c * (stretch * stretch - stretch.powi(-4)))
}

fn radial_stress_slope(arc: f64, radius: f64, c: f64) -> f64 {
    let chord = 2.0 * radius;
    let stretch = (arc / chord).max(1.0);
    2.0 * c * (2.0 * stretch + 4.0 * stretch.powi(-5)) / chord
}

/// Isothermal gap pressure `P_atm h / (h + w/2)`.
pub fn gap_pressure(w: f64, gap_height: f64, atmospheric: f64) -> f64 {
    atmospheric * gap_height / (gap_height + 0.5 * w)
}

/// Signed force-balance residual (Pa) at deflection `w`.
///
/// `4 t σ_r w / R² - (P_gap - P_cavity)`: the membrane's vertical edge
/// support minus the trans-membrane load. Negative means the membrane is
/// under-deflected for the applied load; the residual increases strictly
/// with `w`.
pub fn force_balance_residual(w: f64, params: &MembraneParams, p_cavity: f64) -> f64 {
    let r = params.radius;
    let arc = arc_length(w, r);
    let sigma = radial_stress(arc, r, params.neo_hookean_c).unwrap_or(0.0);
    let support = 4.0 * params.thickness * sigma * w / (r * r);
    support - (gap_pressure(w, params.gap_height, params.atmospheric) - p_cavity)
}

fn residual_slope(w: f64, params: &MembraneParams) -> f64 {
    let r = params.radius;
    let arc = arc_length(w, r);
    let sigma = radial_stress(arc, r, params.neo_hookean_c).unwrap_or(0.0);
    let dsigma = radial_stress_slope(arc, r, params.neo_hookean_c) * arc_length_slope(w, r);
    let k = 4.0 * params.thickness / (r * r);
    let h = params.gap_height;
    let dgap = -params.atmospheric * h * 0.5 / ((h + 0.5 * w) * (h + 0.5 * w));
    k * (sigma + w * dsigma) - dgap
}

fn check_suction(params: &MembraneParams, p_cavity: f64) -> Result<f64> {
    let suction = params.atmospheric - p_cavity;
    if !suction.is_finite() || suction < 0.0 {
        return Err(MechanicsError::PositiveGauge {
            p_cavity,
            p_atm: params.atmospheric,
        });
    }
    if suction > MAX_SUCTION_PA * (1.0 + 1e-12) {
        return Err(MechanicsError::BeyondValidity {
            suction,
            limit: MAX_SUCTION_PA,
        });
    }
    Ok(suction)
}

/// Solves for the membrane equilibrium at absolute cavity pressure `p_cavity` (Pa).
///
/// Bisection on `w ∈ [0, 2h]` narrows the root to [`BISECTION_TOL_M`], then
/// Newton steps restricted to the final bracket polish it.
pub fn solve_deflection(params: &MembraneParams, p_cavity: f64) -> Result<SuctionSolution> {
    let suction = check_suction(params, p_cavity)?;
    if suction == 0.0 {
        return Ok(state_at(params, p_cavity, 0.0, 0));
    }

    let f = |w: f64| force_balance_residual(w, params, p_cavity);
    let (mut lo, mut hi) = (0.0, BRACKET_FACTOR * params.gap_height);
    let (f_lo, f_hi) = (f(lo), f(hi));
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(MechanicsError::NoRootInBracket { lo, hi, f_lo, f_hi });
    }

    let mut iterations = 0;
    while hi - lo > BISECTION_TOL_M {
        if iterations >= MAX_ITERATIONS {
            let mid = 0.5 * (lo + hi);
            return Err(MechanicsError::NonConvergence {
                iterations,
                residual: f(mid),
            });
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }

    let mut w = 0.5 * (lo + hi);
    let mut fw = f(w);
    for _ in 0..8 {
        if fw == 0.0 || iterations >= MAX_ITERATIONS {
            break;
        }
        let slope = residual_slope(w, params);
        if slope.is_nan() || slope <= 0.0 {
            break;
        }
        let next = (w - fw / slope).clamp(lo, hi);
        let f_next = f(next);
        iterations += 1;
        if f_next.abs() >= fw.abs() {
            break;
        }
        w = next;
        fw = f_next;
    }

    if fw.abs() > RESIDUAL_TOL_PA {
        return Err(MechanicsError::NonConvergence {
            iterations,
            residual: fw,
        });
    }
    Ok(state_at(params, p_cavity, w, iterations))
}

fn state_at(params: &MembraneParams, p_cavity: f64, w: f64, iterations: usize) -> SuctionSolution {
    let r = params.radius;
    let arc = arc_length(w, r);
    let sigma = radial_stress(arc, r, params.neo_hookean_c).unwrap_or(0.0);
    let gap = gap_pressure(w, params.gap_height, params.atmospheric);
    SuctionSolution {
        deflection: w,
        arc_length: arc,
        radial_stress: sigma,
        edge_angle: 2.0 * w / r,
        gap_pressure: gap,
        pressure_difference: gap - p_cavity,
        force: params.sealed_area() * (params.atmospheric - gap),
        residual: force_balance_residual(w, params, p_cavity),
        iterations,
    }
}

/// Attachment force (N) at absolute cavity pressure `p_cavity` (Pa).
pub fn attachment_force(params: &MembraneParams, p_cavity: f64) -> Result<f64> {
    solve_deflection(params, p_cavity).map(|s| s.force)
}

/// Small-deflection solution: arc length to second order in `w/R` and the
/// gap pressure linearized in `w/h`.
///
/// The balance reduces to `a w³ + b w = s` with `a = 32 C t / R⁴`,
/// `b = P_atm / 2h` and `s` the suction, solved in closed form.
pub fn linearized_deflection(params: &MembraneParams, p_cavity: f64) -> Result<f64> {
    let suction = check_suction(params, p_cavity)?;
    let r2 = params.radius * params.radius;
    let a = 32.0 * params.neo_hookean_c * params.thickness / (r2 * r2);
    let b = params.atmospheric / (2.0 * params.gap_height);
    // w³ + p w + q = 0 with p > 0 has the single real root below.
    let p = b / a;
    let q = -suction / a;
    let k = (p / 3.0).sqrt();
    Ok(-2.0 * k * ((1.5 * q / (p * k)).asinh() / 3.0).sinh())
}

/// One point of a force curve: gauge cavity pressure (kPa) and force (N).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceSample {
    pub p_cavity_kpa: f64,
    pub force_n: f64,
}

/// Force curve over a pressure sweep, ordered from weakest to strongest suction.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ForceCurve {
    pub samples: Vec<ForceSample>,
    /// Sweep points the solver rejected, with the reason.
    pub failures: Vec<(f64, MechanicsError)>,
}

pub const FORCE_CURVE_HEADER: &str = "p_cavity_kpa,force_n";

impl ForceCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(FORCE_CURVE_HEADER);
        out.push('\n');
        for s in &self.samples {
            let _ = writeln!(out, "{:.6},{:.6}", s.p_cavity_kpa, s.force_n);
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let rows = parse_pairs(text, FORCE_CURVE_HEADER)?;
        Ok(Self {
            samples: rows
                .into_iter()
                .map(|(p, f)| ForceSample {
                    p_cavity_kpa: p,
                    force_n: f,
                })
                .collect(),
            failures: Vec::new(),
        })
    }
}

/// Solves every gauge pressure (kPa, ≤ 0) of `sweep_kpa`.
///
/// Points the solver rejects are kept in `failures`; the rest are sorted by
/// decreasing gauge pressure, so suction grows along the curve.
pub fn force_curve(params: &MembraneParams, sweep_kpa: &[f64]) -> ForceCurve {
    let mut curve = ForceCurve::default();
    for &gauge in sweep_kpa {
        match attachment_force(params, params.cavity_from_gauge_kpa(gauge)) {
            Ok(force) => curve.samples.push(ForceSample {
                p_cavity_kpa: gauge,
                force_n: force,
            }),
            Err(e) => curve.failures.push((gauge, e)),
        }
    }
    curve.samples.sort_by(|a, b| b.p_cavity_kpa.total_cmp(&a.p_cavity_kpa));
    curve
}

/// Uniform sweep `0, -step, -2 step, …` down to `min_kpa` (inclusive), `points` long.
pub fn uniform_sweep(min_kpa: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![min_kpa],
        n => (0..n).map(|i| min_kpa * i as f64 / (n - 1) as f64 + 0.0).collect(),
    }
}

/// A measured force-displacement series for one cup design.
#[derive(Debug, Clone, PartialEq)]
pub struct DetachmentRecord {
    pub label: String,
    /// (displacement mm, force N) pairs.
    pub series: Vec<(f64, f64)>,
    /// Trapezoidal integral of `series` (mJ).
    pub work: f64,
}

pub const DETACHMENT_HEADER: &str = "displacement_mm,force_n";

impl DetachmentRecord {
    pub fn new(label: impl Into<String>, series: Vec<(f64, f64)>) -> Result<Self> {
        let work = detachment_work(&series)?;
        Ok(Self {
            label: label.into(),
            series,
            work,
        })
    }

    pub fn from_csv(label: impl Into<String>, text: &str) -> Result<Self> {
        Self::new(label, parse_pairs(text, DETACHMENT_HEADER)?)
    }
}

/// Trapezoidal work under a force-displacement series. N·mm = mJ.
pub fn detachment_work(series: &[(f64, f64)]) -> Result<f64> {
    if series.len() < 2 {
        return Err(MechanicsError::TooFewPoints(series.len()));
    }
    let mut work = 0.0;
    for (i, pair) in series.windows(2).enumerate() {
        let ((x0, f0), (x1, f1)) = (pair[0], pair[1]);
        if x0.is_nan() || x1.is_nan() || x1 <= x0 {
            return Err(MechanicsError::Unordered { index: i + 1 });
        }
        work += 0.5 * (f0 + f1) * (x1 - x0);
    }
    Ok(work)
}

/// Records sorted by decreasing detachment work.
pub fn rank_by_work(records: &[DetachmentRecord]) -> Vec<&DetachmentRecord> {
    let mut ranked: Vec<_> = records.iter().collect();
    ranked.sort_by(|a, b| b.work.total_cmp(&a.work));
    ranked
}

fn parse_pairs(text: &str, header: &str) -> Result<Vec<(f64, f64)>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == header => {}
        other => {
            return Err(MechanicsError::Csv(format!(
                "expected header `{header}`, found {other:?}"
            )))
        }
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let mut cols = line.split(',');
            let mut next = || -> Result<f64> {
                cols.next()
                    .and_then(|c| c.trim().parse().ok())
                    .ok_or_else(|| MechanicsError::Csv(format!("bad row {}: `{line}`", i + 2)))
            };
            let pair = (next()?, next()?);
            if cols.next().is_some() {
                return Err(MechanicsError::Csv(format!("extra column in row {}", i + 2)));
            }
            Ok(pair)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const KPA: f64 = 1e3;

    #[test]
    fn parabola_profile() {
        assert_eq!(deflection_at(0.0, 3.0, 20.0).unwrap(), 3.0);
        assert_eq!(deflection_at(20.0, 3.0, 20.0).unwrap(), 0.0);
        assert!((deflection_at(10.0, 3.0, 20.0).unwrap() - 2.25).abs() < 1e-15);
        assert!(matches!(
            deflection_at(20.5, 3.0, 20.0),
            Err(MechanicsError::RadiusOutOfRange { .. })
        ));
        assert!(deflection_at(-1.0, 3.0, 20.0).is_err());
    }

    #[test]
    fn flat_arc_is_the_diameter() {
        assert_eq!(arc_length(0.0, 20.0), 40.0);
    }

    #[test]
    fn arc_slope_matches_finite_difference() {
        // Near zero the slope is 8w / 3R.
        let tiny = arc_length_slope(1e-7, 20.0);
        assert!((tiny - 8.0 * 1e-7 / 60.0).abs() < 1e-12 * 8e-7 / 60.0 * 1e3);
        // Series and closed form meet at the switch point u = 1e-4.
        let below = arc_length_slope(0.999e-3, 20.0);
        let above = arc_length_slope(1.001e-3, 20.0);
        assert!((above / below - 1.001 / 0.999).abs() < 1e-6);
        for &w in &[0.05f64, 0.5, 3.0, 10.0] {
            let h = 1e-5 * w;
            let fd = (arc_length(w + h, 20.0) - arc_length(w - h, 20.0)) / (2.0 * h);
            let an = arc_length_slope(w, 20.0);
            assert!((fd - an).abs() <= 1e-6 * an.abs().max(1e-6), "w={w} fd={fd} an={an}");
        }
    }

    #[test]
    fn stress_values() {
        assert_eq!(radial_stress(40.0, 20.0, 0.098).unwrap(), 0.0);
        let s44 = radial_stress(44.0, 20.0, 0.098).unwrap();
        let expected = 2.0 * 0.098 * (1.1f64.powi(2) - 1.1f64.powi(-4));
        assert!((s44 - expected).abs() < 1e-15);
        assert!(radial_stress(48.0, 20.0, 0.098).unwrap() > s44);
        assert!(matches!(
            radial_stress(39.0, 20.0, 0.098),
            Err(MechanicsError::CompressiveArc { .. })
        ));
    }

    #[test]
    fn gap_pressure_values() {
        assert_eq!(gap_pressure(0.0, 2.0, 0.101), 0.101);
        assert!((gap_pressure(2.0, 2.0, 0.101) - 0.101 * 2.0 / 3.0).abs() < 1e-15);
        assert!((gap_pressure(4.0, 2.0, 0.101) - 0.0505).abs() < 1e-15);
    }

    #[test]
    fn residual_at_rest_and_under_load() {
        let p = MembraneParams::reference();
        assert_eq!(force_balance_residual(0.0, &p, p.atmospheric()), 0.0);
        // Under suction the undeflected membrane cannot carry the load.
        let r = force_balance_residual(0.0, &p, p.atmospheric() - 10.0 * KPA);
        assert!((r + 10.0 * KPA).abs() < 1e-9);
    }

    #[test]
    fn residual_slope_matches_finite_difference() {
        let p = MembraneParams::reference();
        let pc = p.atmospheric() - 8.0 * KPA;
        for &w in &[1e-5, 3e-4, 1e-3, 3.9e-3] {
            let h = 1e-9;
            let fd = (force_balance_residual(w + h, &p, pc) - force_balance_residual(w - h, &p, pc)) / (2.0 * h);
            let an = residual_slope(w, &p);
            assert!((fd - an).abs() <= 1e-5 * an, "w={w}");
        }
    }

    #[test]
    fn no_suction_means_no_force() {
        let p = MembraneParams::reference();
        let s = solve_deflection(&p, p.atmospheric()).unwrap();
        assert_eq!(s.deflection, 0.0);
        assert_eq!(s.force, 0.0);
        assert_eq!(attachment_force(&p, p.atmospheric()).unwrap(), 0.0);
    }

    #[test]
    fn validity_guard() {
        let p = MembraneParams::reference();
        assert!(solve_deflection(&p, p.atmospheric() - 15.0 * KPA).is_ok());
        assert!(matches!(
            solve_deflection(&p, p.atmospheric() - 15.5 * KPA),
            Err(MechanicsError::BeyondValidity { .. })
        ));
        assert!(matches!(
            solve_deflection(&p, p.atmospheric() + 1.0 * KPA),
            Err(MechanicsError::PositiveGauge { .. })
        ));
    }

    #[test]
    fn solution_fields_are_consistent() {
        let p = MembraneParams::reference();
        let pc = p.atmospheric() - 10.0 * KPA;
        let s = solve_deflection(&p, pc).unwrap();
        assert!(s.residual.abs() <= RESIDUAL_TOL_PA);
        assert!((s.arc_length - arc_length(s.deflection, p.radius())).abs() < 1e-15);
        assert!(s.arc_length >= 2.0 * p.radius());
        assert!(s.radial_stress >= 0.0);
        assert!(s.gap_pressure > 0.0 && s.gap_pressure <= p.atmospheric());
        assert!((s.pressure_difference - (s.gap_pressure - pc)).abs() < 1e-9);
        assert!((s.edge_angle - 2.0 * s.deflection / p.radius()).abs() < 1e-15);
        assert!(s.force > 0.0 && s.force <= p.sealed_area() * 10.0 * KPA);
        assert!(s.iterations <= MAX_ITERATIONS);
    }

    #[test]
    fn bad_params_rejected() {
        assert!(MembraneParams::from_table_units(0.0, 2.0, 0.098, 0.101, 2.0).is_err());
        assert!(MembraneParams::from_table_units(20.0, 5.0, 0.098, 0.101, 2.0).is_err());
        assert!(MembraneParams::from_table_units(20.0, 2.0, -1.0, 0.101, 2.0).is_err());
        assert!(MembraneParams::from_table_units(20.0, 2.0, 0.098, 0.101, f64::NAN).is_err());
    }

    #[test]
    fn force_curve_edge_cases() {
        let p = MembraneParams::reference();
        assert!(force_curve(&p, &[]).samples.is_empty());
        let single = force_curve(&p, &[0.0]);
        assert_eq!(
            single.samples,
            vec![ForceSample {
                p_cavity_kpa: 0.0,
                force_n: 0.0
            }]
        );
        let mixed = force_curve(&p, &[-4.0, -20.0, -2.0]);
        assert_eq!(mixed.samples.len(), 2);
        assert_eq!(mixed.samples[0].p_cavity_kpa, -2.0);
        assert_eq!(mixed.failures.len(), 1);
        assert_eq!(mixed.failures[0].0, -20.0);
    }

    #[test]
    fn force_curve_csv() {
        let p = MembraneParams::reference();
        let curve = force_curve(&p, &[0.0, -2.0]);
        let csv = curve.to_csv();
        assert!(csv.starts_with("p_cavity_kpa,force_n\n0.000000,0.000000\n-2.000000,"));
        let back = ForceCurve::from_csv(&csv).unwrap();
        assert_eq!(back.to_csv(), csv);
    }

    #[test]
    fn sweep_spacing() {
        assert_eq!(uniform_sweep(-14.0, 0), Vec::<f64>::new());
        let s = uniform_sweep(-14.0, 8);
        assert_eq!(s.first(), Some(&0.0));
        assert_eq!(s.last(), Some(&-14.0));
        assert!((s[1] + 2.0).abs() < 1e-12);
    }

    #[test]
    fn detachment_work_examples() {
        assert_eq!(detachment_work(&[(0.0, 0.0), (1.0, 0.0)]).unwrap(), 0.0);
        assert_eq!(detachment_work(&[(0.0, 0.0), (1.0, 2.0), (2.0, 0.0)]).unwrap(), 2.0);
        assert!(matches!(
            detachment_work(&[(0.0, 0.0), (1.0, 2.0), (1.0, 0.0)]),
            Err(MechanicsError::Unordered { index: 2 })
        ));
        assert!(matches!(
            detachment_work(&[(0.0, 1.0)]),
            Err(MechanicsError::TooFewPoints(1))
        ));
    }

    #[test]
    fn detachment_ranking_from_csv() {
        let a = DetachmentRecord::from_csv("shape 1", "displacement_mm,force_n\n0,0\n1,4\n2,0\n").unwrap();
        let b = DetachmentRecord::from_csv("shape 2", "displacement_mm,force_n\n0,0\n1,2\n2,0\n").unwrap();
        assert_eq!(a.work, 4.0);
        let records = [b.clone(), a.clone()];
        let ranked = rank_by_work(&records);
        assert_eq!(ranked[0].label, "shape 1");
        assert!(DetachmentRecord::from_csv("x", "force_n,displacement_mm\n0,0\n1,1\n").is_err());
    }
}
