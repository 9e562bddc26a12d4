//! One function per subcommand. Each validates everything it needs before
//! creating the output directory.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sucker_core::control::{
    check_plan, crawl_cycle_with, grasp_cycle_with, pressure_timeline, steer_with, DropPose, GaitPlan, Side,
};
use sucker_core::lip::{
    conformity_demand, lip_contour, lip_svg, perimeter, points_to_csv, HoleLayoutSpec, LipSpec, SubstrateSpec,
};
use sucker_core::locomotion::{run_episode_with, FloorTexture, GridWorld, TerrainSensor};
use sucker_core::mechanics::{force_curve, solve_deflection, uniform_sweep};
use sucker_core::seed::item_seed;
use sucker_core::spectral::{
    evaluate, extract_features, fft2_log_spectrum, fit_classifier_with, roughness_index, stratified_split,
    FeatureVector,
};
use sucker_core::synthesis::{
    manifest_from_csv, manifest_to_csv, DifferenceImage, GrayImage, ManifestRow, Renderer, TextureSampler,
};

use crate::config::RunConfig;
use crate::error::CliError;

pub const DEMO_WORLD: &str = include_str!("../worlds/demo.txt");

/// Seed and output directory after command-line overrides.
#[derive(Debug, Clone)]
pub struct Context {
    pub seed: u64,
    pub out: PathBuf,
    pub config: RunConfig,
}

impl Context {
    fn create_out(&self) -> Result<(), CliError> {
        fs::create_dir_all(&self.out).map_err(CliError::io(&self.out))
    }

    fn write(&self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        let path = self.out.join(name);
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).map_err(CliError::io(dir))?;
        }
        fs::write(&path, contents).map_err(CliError::io(&path))?;
        Ok(path)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(CliError::io(path))
}

pub fn model_curve(ctx: &Context) -> Result<(), CliError> {
    let params = ctx.config.membrane_params()?;
    let m = &ctx.config.membrane;
    let sweep = uniform_sweep(m.sweep_min_kpa, m.sweep_points);
    let curve = force_curve(&params, &sweep);
    ctx.create_out()?;
    ctx.write("force_curve.csv", &curve.to_csv())?;
    println!("{:>12} {:>12} {:>14} {:>10}", "p_gauge_kPa", "w_mm", "P_gap_MPa", "F_N");
    for s in &curve.samples {
        let sol = solve_deflection(&params, params.cavity_from_gauge_kpa(s.p_cavity_kpa)).map_err(CliError::runtime)?;
        println!(
            "{:>12.4} {:>12.6} {:>14.8} {:>10.4}",
            s.p_cavity_kpa,
            sol.deflection_mm(),
            sol.gap_pressure_mpa(),
            sol.force
        );
    }
    for (p, e) in &curve.failures {
        eprintln!("point {p} kPa failed: {e}");
    }
    if curve.samples.is_empty() && !curve.failures.is_empty() {
        return Err(CliError::Runtime("every sweep point failed".into()));
    }
    Ok(())
}

pub fn lip(ctx: &Context) -> Result<(), CliError> {
    let sizing = ctx.config.lip_sizing()?;
    let l = &ctx.config.lip;
    let substrates = l
        .d_over_t
        .iter()
        .map(|&r| SubstrateSpec::from_ratio(r).map_err(|e| CliError::Validation(format!("lip: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let mut files = Vec::new();
    let mut summary = String::from("cycles,max_radius_mm,min_radius_mm,perimeter_mm");
    for r in &l.d_over_t {
        let _ = write!(summary, ",demand_dt{r}");
    }
    summary.push('\n');
    let standard_holes = HoleLayoutSpec::standard(l.holes_per_ring.first().copied().unwrap_or(60))
        .build()
        .ok();
    for &n in &l.cycles {
        let spec = LipSpec::sized(n, sizing);
        let contour = lip_contour(&spec, l.samples).map_err(CliError::runtime)?;
        let _ = write!(
            summary,
            "{n},{:.6},{:.6},{:.6}",
            spec.max_radius(),
            spec.min_radius(),
            perimeter(&contour)
        );
        for s in &substrates {
            let d = conformity_demand(&spec, s, l.samples).map_err(CliError::runtime)?;
            let _ = write!(summary, ",{d:.6}");
        }
        summary.push('\n');
        files.push((format!("contour_n{n}.csv"), points_to_csv(&contour)));
        files.push((
            format!("lip_n{n}.svg"),
            lip_svg(&contour, spec.inner_diameter, standard_holes.as_ref()),
        ));
    }
    let mut holes = String::from("holes_per_ring,feasible,ring_radii_mm,detail\n");
    for &n in &l.holes_per_ring {
        match HoleLayoutSpec::standard(n).build() {
            Ok(layout) => {
                let radii: Vec<String> = layout.ring_radii.iter().map(|r| format!("{r:.3}")).collect();
                let _ = writeln!(holes, "{n},true,{},{} holes", radii.join(" "), layout.centers.len());
            }
            Err(e) => {
                let _ = writeln!(holes, "{n},false,,{}", e.to_string().replace(',', ";"));
            }
        }
    }
    ctx.create_out()?;
    for (name, body) in &files {
        ctx.write(name, body)?;
    }
    ctx.write("lip_summary.csv", &summary)?;
    ctx.write("hole_layouts.csv", &holes)?;
    print!("{summary}{holes}");
    Ok(())
}

pub fn dataset(ctx: &Context) -> Result<(), CliError> {
    ctx.config.validate_dataset()?;
    let model = ctx.config.render_model()?;
    let s = &ctx.config.synthesis;
    let sampler = TextureSampler::new(model, s.mask_fraction).map_err(CliError::runtime)?;
    ctx.create_out()?;
    let mut rows = Vec::with_capacity(s.classes * s.images_per_class);
    for class in 0..s.classes {
        for i in 0..s.images_per_class {
            let seed = item_seed(ctx.seed, (class * s.images_per_class + i) as u64);
            let sample = sampler.sample(class, seed).map_err(CliError::runtime)?;
            let path = format!("images/c{class:02}_{i:04}.pgm");
            ctx.write(&path, &sample.difference.to_gray().to_p2())?;
            rows.push(ManifestRow {
                path,
                class_id: class,
                press_force_n: sample.capture.press_force_n(),
                pressure_kpa: sample.capture.pressure_kpa(),
                seed,
            });
        }
        eprintln!("class {class}: {} images", s.images_per_class);
    }
    ctx.write("manifest.csv", &manifest_to_csv(&rows))?;
    println!("{} images, {} classes", rows.len(), s.classes);
    Ok(())
}

/// Loads a dataset directory written by `dataset`.
pub fn load_dataset(dir: &Path, mask_fraction: f64) -> Result<Vec<(FeatureVector, usize)>, CliError> {
    let manifest = manifest_from_csv(&read(&dir.join("manifest.csv"))?).map_err(CliError::runtime)?;
    manifest
        .iter()
        .map(|row| {
            let path = dir.join(&row.path);
            let gray =
                GrayImage::from_p2(&read(&path)?).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
            let diff = DifferenceImage::from_gray(&gray)
                .and_then(|d| d.masked(mask_fraction))
                .map_err(CliError::runtime)?;
            let f = extract_features(&diff).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
            Ok((f, row.class_id))
        })
        .collect()
}

pub fn classify_eval(ctx: &Context, dataset_dir: &Path) -> Result<(), CliError> {
    ctx.config.render_model()?;
    let features = ctx.config.feature_set()?;
    let data = load_dataset(dataset_dir, ctx.config.synthesis.mask_fraction)?;
    let labels: Vec<usize> = data.iter().map(|(_, l)| *l).collect();
    let (train_idx, test_idx) = stratified_split(&labels, ctx.seed);
    let pick = |idx: &[usize]| idx.iter().map(|&i| data[i]).collect::<Vec<_>>();
    let (train, test) = (pick(&train_idx), pick(&test_idx));
    let model = fit_classifier_with(&train, features).map_err(CliError::runtime)?;
    let cm = evaluate(&model, &test).map_err(CliError::runtime)?;
    ctx.create_out()?;
    ctx.write("confusion.csv", &cm.to_csv())?;
    ctx.write("model.txt", &model.to_text())?;
    ctx.write("accuracy.txt", &format!("{:.6}\n", cm.accuracy()))?;
    println!(
        "train {} test {} accuracy {:.4}",
        train.len(),
        test.len(),
        cm.accuracy()
    );
    Ok(())
}

pub fn roughness(ctx: &Context) -> Result<(), CliError> {
    ctx.config.validate_perception()?;
    let model = ctx.config.render_model()?;
    let p = &ctx.config.perception;
    let sampler = TextureSampler::new(model, ctx.config.synthesis.mask_fraction).map_err(CliError::runtime)?;
    let mut csv = String::from("mesh,median_index,min_index,max_index\n");
    let mut images = Vec::new();
    for (m, &mesh) in p.meshes.iter().enumerate() {
        let mut values = Vec::with_capacity(p.seeds_per_mesh);
        for k in 0..p.seeds_per_mesh {
            let seed = item_seed(ctx.seed, (m * p.seeds_per_mesh + k) as u64);
            let diff = sampler.sandpaper(mesh, seed).map_err(CliError::runtime)?;
            values.push(roughness_index(&diff).map_err(CliError::runtime)?);
            if k == 0 {
                let spec = fft2_log_spectrum(&diff).map_err(CliError::runtime)?;
                let w = diff.width();
                let h = diff.height();
                images.push((
                    mesh,
                    GrayImage::from_stretched(w, h, diff.values()),
                    GrayImage::from_stretched(w, h, spec.values()),
                ));
            }
        }
        values.sort_by(f64::total_cmp);
        let n = values.len();
        let median = if n % 2 == 1 {
            values[n / 2]
        } else {
            (values[n / 2 - 1] + values[n / 2]) / 2.0
        };
        let _ = writeln!(csv, "{mesh},{median:.6},{:.6},{:.6}", values[0], values[n - 1]);
    }
    ctx.create_out()?;
    for (mesh, diff, spec) in &images {
        ctx.write(&format!("difference_mesh{mesh}.pgm"), &diff.to_p2())?;
        ctx.write(&format!("spectrum_mesh{mesh}.pgm"), &spec.to_p2())?;
    }
    ctx.write("roughness.csv", &csv)?;
    print!("{csv}");
    Ok(())
}

/// Drop poses on a 6-wide rack, 40 mm pitch.
pub fn rack_destinations(classes: usize) -> BTreeMap<usize, DropPose> {
    (0..classes)
        .map(|c| {
            let pose = DropPose {
                x_mm: 100.0 + 40.0 * (c % 6) as f64,
                y_mm: 40.0 * (c / 6) as f64,
                z_mm: 20.0,
            };
            (c, pose)
        })
        .collect()
}

pub fn gait(ctx: &Context) -> Result<(), CliError> {
    let params = ctx.config.gait_params()?;
    let g = &ctx.config.gait;
    if g.grasp_classes == 0 {
        return Err(CliError::Validation("gait: grasp_classes must be positive".into()));
    }
    let crawl = crawl_cycle_with(&params);
    let left = steer_with(Side::Left, &params);
    let right = steer_with(Side::Right, &params);
    let grasp = grasp_cycle_with(&rack_destinations(g.grasp_classes), &params).map_err(CliError::runtime)?;
    let plans: [(&str, &GaitPlan); 4] = [
        ("crawl", &crawl),
        ("steer_left", &left),
        ("steer_right", &right),
        ("grasp", &grasp.plan),
    ];
    for (name, plan) in plans {
        check_plan(plan, &params.bounds).map_err(|e| CliError::Runtime(format!("{name}: {e}")))?;
    }
    let timeline = pressure_timeline(&crawl, g.cycles).map_err(CliError::runtime)?;
    ctx.create_out()?;
    ctx.write("crawl.plan", &crawl.to_text())?;
    ctx.write("steer_left.plan", &left.to_text())?;
    ctx.write("steer_right.plan", &right.to_text())?;
    ctx.write("grasp.plan", &grasp.to_text())?;
    ctx.write("crawl_timeline.csv", &timeline.to_csv())?;
    for (name, plan) in plans {
        println!("{name}: {} phases, {:.1} s", plan.phases.len(), plan.cycle_duration());
    }
    Ok(())
}

pub fn locomotion(ctx: &Context, world_file: Option<&Path>) -> Result<(), CliError> {
    ctx.config.validate_world()?;
    let gait = ctx.config.gait_params()?;
    let model = ctx.config.render_model()?;
    let w = &ctx.config.world;
    let heading = ctx.config.heading()?;
    let file = world_file.map(Path::to_path_buf).or_else(|| w.file.clone());
    let (source, text) = match &file {
        Some(path) => (
            path.display().to_string(),
            read(path).map_err(|e| CliError::Validation(e.to_string()))?,
        ),
        None => ("demo world".to_string(), DEMO_WORLD.to_string()),
    };
    let mut world = GridWorld::parse(&text).map_err(|e| CliError::Validation(format!("{source}: {e}")))?;
    world.cell_size_mm = w.cell_size_mm;
    world.floor = match w.floor_mesh {
        Some(mesh) => FloorTexture::Sandpaper(mesh),
        None => FloorTexture::Smooth,
    };
    let sensor = TerrainSensor::new(Renderer::new(model).map_err(CliError::runtime)?);
    let episode = run_episode_with(&sensor, &world, world.start(), heading, w.max_steps, ctx.seed, &gait)
        .map_err(CliError::runtime)?;
    ctx.create_out()?;
    ctx.write("trajectory.csv", &episode.trajectory_csv())?;
    ctx.write("timeline.csv", &episode.timeline.to_csv())?;
    ctx.write("world.txt", &world.to_text())?;
    let s = episode.final_state;
    println!(
        "{} steps, final cell ({}, {}) heading {}{}",
        episode.records.len(),
        s.cell.0,
        s.cell.1,
        s.heading,
        if episode.halted { ", halted" } else { "" }
    );
    Ok(())
}
