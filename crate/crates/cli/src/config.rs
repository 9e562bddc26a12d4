//! Run configuration, read from TOML and validated before any output is written.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use sucker_core::control::{ChannelBounds, GaitParams};
use sucker_core::lip::LipSizing;
use sucker_core::locomotion::Heading;
use sucker_core::mechanics::MembraneParams;
use sucker_core::synthesis::{RenderModel, MESH_RANGE, TEXTURE_CLASSES};

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_OUT: &str = "out";

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub membrane: MembraneSection,
    pub lip: LipSection,
    pub synthesis: SynthesisSection,
    pub perception: PerceptionSection,
    pub gait: GaitSection,
    pub world: WorldSection,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MembraneSection {
    pub radius_mm: f64,
    pub thickness_mm: f64,
    pub neo_hookean_c_mpa: f64,
    pub atmospheric_mpa: f64,
    pub gap_height_mm: f64,
    /// Deepest gauge pressure of the sweep, kPa.
    pub sweep_min_kpa: f64,
    pub sweep_points: usize,
}

impl Default for MembraneSection {
    fn default() -> Self {
        Self {
            radius_mm: 20.0,
            thickness_mm: 2.0,
            neo_hookean_c_mpa: 0.098,
            atmospheric_mpa: 0.101,
            gap_height_mm: 2.0,
            sweep_min_kpa: -14.0,
            sweep_points: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LipSection {
    pub cycles: Vec<u32>,
    pub samples: usize,
    /// `shared_base_radius` or `shared_outer_diameter`.
    pub sizing: String,
    pub d_over_t: Vec<f64>,
    pub holes_per_ring: Vec<usize>,
}

impl Default for LipSection {
    fn default() -> Self {
        Self {
            cycles: vec![0, 6, 8, 10],
            samples: 4096,
            sizing: "shared_base_radius".into(),
            d_over_t: vec![1.0, 2.0, 4.0],
            holes_per_ring: vec![60, 120, 180, 600],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthesisSection {
    pub images_per_class: usize,
    pub classes: usize,
    pub mask_fraction: f64,
    pub base: f64,
    pub k_slope: f64,
    pub k_depth: f64,
    pub elastic_px: f64,
    pub noise_amplitude: f64,
    pub noise_correlation_px: f64,
}

impl Default for SynthesisSection {
    fn default() -> Self {
        let m = RenderModel::default();
        Self {
            images_per_class: 100,
            classes: TEXTURE_CLASSES,
            mask_fraction: sucker_core::synthesis::DEFAULT_MASK_FRACTION,
            base: m.base,
            k_slope: m.k_slope,
            k_depth: m.k_depth,
            elastic_px: m.elastic_px,
            noise_amplitude: m.noise_amplitude,
            noise_correlation_px: m.noise_correlation_px,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PerceptionSection {
    pub meshes: Vec<u32>,
    pub seeds_per_mesh: usize,
    /// `all` or `bands_only`.
    pub features: String,
}

impl Default for PerceptionSection {
    fn default() -> Self {
        Self {
            meshes: vec![36, 60, 80, 120, 180, 240, 320, 400, 600],
            seeds_per_mesh: 10,
            features: "all".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaitSection {
    pub push_kpa: f64,
    pub anchor_kpa: f64,
    pub elongation_kpa: f64,
    pub dwell_s: f64,
    pub actuator_max_kpa: f64,
    pub cycles: usize,
    pub grasp_classes: usize,
}

impl Default for GaitSection {
    fn default() -> Self {
        let g = GaitParams::default();
        Self {
            push_kpa: g.push_kpa,
            anchor_kpa: g.anchor_kpa,
            elongation_kpa: g.elongation_kpa,
            dwell_s: g.dwell_s,
            actuator_max_kpa: g.bounds.actuator.1,
            cycles: 3,
            grasp_classes: TEXTURE_CLASSES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WorldSection {
    /// World file; the bundled demo world when absent.
    pub file: Option<PathBuf>,
    pub heading: String,
    pub max_steps: usize,
    /// Sandpaper mesh under the floor cells; smooth floor when absent.
    pub floor_mesh: Option<u32>,
    pub cell_size_mm: f64,
}

impl Default for WorldSection {
    fn default() -> Self {
        Self {
            file: None,
            heading: "E".into(),
            max_steps: 40,
            floor_mesh: None,
            cell_size_mm: sucker_core::locomotion::DEFAULT_CELL_MM,
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be finite and positive, got {v}")))
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| invalid(format!("config: {}", e.message())))
    }

    pub fn membrane_params(&self) -> Result<MembraneParams, CliError> {
        let m = &self.membrane;
        let p = MembraneParams::from_table_units(
            m.radius_mm,
            m.thickness_mm,
            m.neo_hookean_c_mpa,
            m.atmospheric_mpa,
            m.gap_height_mm,
        )
        .map_err(|e| invalid(format!("membrane: {e}")))?;
        if !(m.sweep_min_kpa.is_finite() && m.sweep_min_kpa <= 0.0) {
            return Err(invalid(format!(
                "membrane: sweep_min_kpa must be <= 0, got {}",
                m.sweep_min_kpa
            )));
        }
        if m.sweep_min_kpa * 1e3 < -sucker_core::mechanics::MAX_SUCTION_PA {
            return Err(invalid("membrane: sweep_min_kpa below the -15 kPa supply limit"));
        }
        Ok(p)
    }

    pub fn lip_sizing(&self) -> Result<LipSizing, CliError> {
        let l = &self.lip;
        if l.samples < sucker_core::lip::MIN_CONTOUR_SAMPLES {
            return Err(invalid(format!(
                "lip: samples must be at least {}",
                sucker_core::lip::MIN_CONTOUR_SAMPLES
            )));
        }
        if l.cycles.is_empty() {
            return Err(invalid("lip: cycles must not be empty"));
        }
        if l.cycles.iter().any(|&n| n > 64) {
            return Err(invalid("lip: cycles must be at most 64"));
        }
        for &r in &l.d_over_t {
            positive("lip: d_over_t", r)?;
        }
        match l.sizing.as_str() {
            "shared_base_radius" => Ok(LipSizing::SharedBaseRadius),
            "shared_outer_diameter" => Ok(LipSizing::SharedOuterDiameter),
            other => Err(invalid(format!("lip: unknown sizing `{other}`"))),
        }
    }

    pub fn render_model(&self) -> Result<RenderModel, CliError> {
        let s = &self.synthesis;
        let model = RenderModel {
            base: s.base,
            k_slope: s.k_slope,
            k_depth: s.k_depth,
            elastic_px: s.elastic_px,
            noise_amplitude: s.noise_amplitude,
            noise_correlation_px: s.noise_correlation_px,
        };
        model.validate().map_err(|e| invalid(format!("synthesis: {e}")))?;
        if !(s.mask_fraction > 0.0 && s.mask_fraction <= 0.5) {
            return Err(invalid(format!(
                "synthesis: mask_fraction must be in (0, 0.5], got {}",
                s.mask_fraction
            )));
        }
        Ok(model)
    }

    pub fn validate_dataset(&self) -> Result<(), CliError> {
        let s = &self.synthesis;
        if s.classes == 0 || s.classes > TEXTURE_CLASSES {
            return Err(invalid(format!("synthesis: classes must be in 1..={TEXTURE_CLASSES}")));
        }
        if s.images_per_class == 0 {
            return Err(invalid("synthesis: images_per_class must be positive"));
        }
        Ok(())
    }

    pub fn validate_perception(&self) -> Result<(), CliError> {
        let p = &self.perception;
        if let Some(m) = p.meshes.iter().find(|&&m| m < MESH_RANGE.0 || m > MESH_RANGE.1) {
            return Err(invalid(format!(
                "perception: mesh {m} outside {}..={}",
                MESH_RANGE.0, MESH_RANGE.1
            )));
        }
        if p.seeds_per_mesh == 0 {
            return Err(invalid("perception: seeds_per_mesh must be positive"));
        }
        Ok(())
    }

    pub fn feature_set(&self) -> Result<sucker_core::spectral::FeatureSet, CliError> {
        use sucker_core::spectral::FeatureSet;
        match self.perception.features.as_str() {
            "all" => Ok(FeatureSet::All),
            "bands_only" => Ok(FeatureSet::BandsOnly),
            other => Err(invalid(format!("perception: unknown feature set `{other}`"))),
        }
    }

    pub fn gait_params(&self) -> Result<GaitParams, CliError> {
        let g = &self.gait;
        let params = GaitParams {
            push_kpa: g.push_kpa,
            anchor_kpa: g.anchor_kpa,
            elongation_kpa: g.elongation_kpa,
            dwell_s: g.dwell_s,
            bounds: ChannelBounds {
                actuator: (0.0, g.actuator_max_kpa),
                ..ChannelBounds::default()
            },
        };
        params.validate().map_err(|e| invalid(format!("gait: {e}")))?;
        Ok(params)
    }

    pub fn heading(&self) -> Result<Heading, CliError> {
        let h = &self.world.heading;
        let mut chars = h.chars();
        match (chars.next().and_then(Heading::from_letter), chars.next()) {
            (Some(h), None) => Ok(h),
            _ => Err(invalid(format!("world: heading must be one of N, E, S, W, got `{h}`"))),
        }
    }

    pub fn validate_world(&self) -> Result<(), CliError> {
        let w = &self.world;
        positive("world: cell_size_mm", w.cell_size_mm)?;
        if let Some(m) = w.floor_mesh {
            if m < MESH_RANGE.0 || m > MESH_RANGE.1 {
                return Err(invalid(format!(
                    "world: floor_mesh {m} outside {}..={}",
                    MESH_RANGE.0, MESH_RANGE.1
                )));
            }
        }
        self.heading().map(|_| ())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_default() {
        assert_eq!(RunConfig::parse("").unwrap(), RunConfig::default());
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(RunConfig::parse("[membrane]\nradius = 3\n").is_err());
        assert!(RunConfig::parse("[extras]\n").is_err());
        assert!(RunConfig::parse("colour = 1\n").is_err());
    }

    #[test]
    fn sections_override_defaults() {
        let c = RunConfig::parse("seed = 3\n[membrane]\nradius_mm = 25.0\n[world]\nheading = \"N\"\n").unwrap();
        assert_eq!(c.seed, Some(3));
        assert_eq!(c.membrane.radius_mm, 25.0);
        assert_eq!(c.membrane.thickness_mm, 2.0);
        assert_eq!(c.heading().unwrap(), Heading::North);
    }

    #[test]
    fn bounds_checked() {
        let mut c = RunConfig::default();
        c.membrane.radius_mm = 0.0;
        assert!(c.membrane_params().is_err());
        let mut c = RunConfig::default();
        c.perception.meshes = vec![20];
        assert!(c.validate_perception().is_err());
        let mut c = RunConfig::default();
        c.gait.push_kpa = 12.0;
        assert!(c.gait_params().is_err());
        let mut c = RunConfig::default();
        c.world.heading = "NE".into();
        assert!(c.validate_world().is_err());
        let mut c = RunConfig::default();
        c.synthesis.classes = 19;
        assert!(c.validate_dataset().is_err());
        assert!(RunConfig::default().membrane_params().is_ok());
        assert!(RunConfig::default().render_model().is_ok());
    }
}
