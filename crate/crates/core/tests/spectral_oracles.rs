mod common;

use std::f64::consts::TAU;

use proptest::prelude::*;
use sucker_core::spectral::*;
use sucker_core::synthesis::*;

fn sinusoid(kx: i64, ky: i64, phase: f64) -> DifferenceImage {
    let mut v = Vec::with_capacity(WIDTH * HEIGHT);
    for y in 0..HEIGHT {
        for x in 0..WIDTH {
            let arg = TAU * (kx as f64 * x as f64 / WIDTH as f64 + ky as f64 * y as f64 / HEIGHT as f64);
            v.push((arg + phase).cos());
        }
    }
    DifferenceImage::new(WIDTH, HEIGHT, v).unwrap()
}

fn argmax(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap()
}

fn assert_peak_at(spec: &Spectrum, kx: i64, ky: i64) {
    let (cx, cy) = spec.dc();
    let at = |dx: i64, dy: i64| {
        let x = (cx as i64 + dx).rem_euclid(WIDTH as i64) as usize;
        let y = (cy as i64 + dy).rem_euclid(HEIGHT as i64) as usize;
        y * WIDTH + x
    };
    let peak = argmax(spec.values());
    assert!(
        peak == at(kx, ky) || peak == at(-kx, -ky),
        "peak {peak} for ({kx}, {ky})"
    );
    let v = spec.values();
    assert!((v[at(kx, ky)] - v[at(-kx, -ky)]).abs() < 1e-9);
}

#[test]
fn sinusoid_peaks_land_on_their_bin() {
    for (kx, ky) in [(1, 0), (0, 1), (7, 3), (-12, 5), (100, -40), (319, 0), (0, 239)] {
        let img = sinusoid(kx, ky, 0.3);
        assert_peak_at(&fft2_log_spectrum(&img).unwrap(), kx, ky);
    }
}

#[test]
fn spectrum_bin_matches_direct_dft() {
    // A coarse DFT spot check of the library transform on a tiny region of support.
    let mut v = vec![0.0; WIDTH * HEIGHT];
    for (i, val) in [(0usize, 1.0), (1, -0.5), (WIDTH + 3, 2.0), (5 * WIDTH + 9, 0.25)] {
        v[i] = val;
    }
    let img = DifferenceImage::new(WIDTH, HEIGHT, v.clone()).unwrap();
    let spec = fft2_log_spectrum(&img).unwrap();
    let power = spec.power();
    let (cx, cy) = spec.dc();
    for (kx, ky) in [(0usize, 0usize), (1, 0), (5, 7), (200, 100)] {
        let direct = common::dft_power(&v, WIDTH, HEIGHT, kx, ky);
        let sx = (kx + cx) % WIDTH;
        let sy = (ky + cy) % HEIGHT;
        let got = power[sy * WIDTH + sx];
        assert!(
            (got - direct).abs() < 1e-9 * (1.0 + direct),
            "({kx}, {ky}) {got} vs {direct}"
        );
    }
}

#[test]
fn grating_textures_peak_at_their_cycle_count() {
    for (class, &cycles) in GRATING_CYCLES.iter().enumerate() {
        let map = texture_heightmap(class, 11).unwrap();
        let img = DifferenceImage::new(WIDTH, HEIGHT, map.values().to_vec()).unwrap();
        let k = cycles as i64;
        let (kx, ky) = if class < 3 { (k, 0) } else { (0, k) };
        assert_peak_at(&fft2_log_spectrum(&img).unwrap(), kx, ky);
    }
}

#[test]
fn parseval_on_rendered_images() {
    let s = TextureSampler::default();
    for class in [0, 8, 15] {
        let sample = s.sample(class, 3).unwrap();
        let r = parseval_ratio(&sample.difference).unwrap();
        assert!((r - 1.0).abs() < 1e-6, "class {class}: {r}");
        let r = parseval_ratio(&sample.image).unwrap();
        assert!((r - 1.0).abs() < 1e-6);
    }
}

#[test]
fn centred_spectrum_bands_match_feature_bands() {
    let s = TextureSampler::default();
    for class in [1, 9, 16] {
        let d = s.sample(class, 5).unwrap().difference;
        let fraction = d.mask_fraction().unwrap();
        let mask = center_mask(WIDTH, HEIGHT, fraction).unwrap();
        let inside: Vec<f64> = d
            .values()
            .iter()
            .zip(&mask)
            .filter(|(_, &m)| m)
            .map(|(&v, _)| v)
            .collect();
        let mean = inside.iter().sum::<f64>() / inside.len() as f64;
        let centred: Vec<f64> = d
            .values()
            .iter()
            .zip(&mask)
            .map(|(&v, &m)| if m { v - mean } else { 0.0 })
            .collect();
        let spec = fft2_log_spectrum(&DifferenceImage::new(WIDTH, HEIGHT, centred).unwrap()).unwrap();
        let bands = radial_band_energies(&spec, BANDS);
        let features = extract_features(&d).unwrap();
        for (a, b) in bands.iter().zip(&features.band_energies) {
            assert!((a - b).abs() < 1e-9, "class {class}: {a} vs {b}");
        }
        let rough: f64 = bands[BANDS / 2..].iter().sum();
        assert!((rough - roughness_index(&d).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn constant_images_have_no_texture_energy() {
    let d = DifferenceImage::new(WIDTH, HEIGHT, vec![0.3; WIDTH * HEIGHT])
        .unwrap()
        .masked(0.45)
        .unwrap();
    assert_eq!(roughness_index(&d), Err(SpectralError::ZeroEnergy));
    let flat = DifferenceImage::new(WIDTH, HEIGHT, vec![0.3; WIDTH * HEIGHT]).unwrap();
    let spec = fft2_log_spectrum(&flat).unwrap();
    assert!(radial_band_energies(&spec, BANDS).iter().all(|&v| v == 0.0));
    let unmasked = DifferenceImage::new(WIDTH, HEIGHT, vec![0.0; WIDTH * HEIGHT]).unwrap();
    assert_eq!(extract_features(&unmasked), Err(SpectralError::Unmasked));
}

#[test]
fn wrong_size_rejected() {
    let d = DifferenceImage::new(10, 10, vec![0.0; 100]).unwrap();
    assert_eq!(fft2_log_spectrum(&d), Err(SpectralError::DimensionMismatch(10, 10)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn band_fractions_partition_unity(seed in any::<u64>(), bands in 1usize..16) {
        let map = sandpaper_heightmap(120, seed, (WIDTH, HEIGHT)).unwrap();
        let img = DifferenceImage::new(WIDTH, HEIGHT, map.values().to_vec()).unwrap();
        let spec = fft2_log_spectrum(&img).unwrap();
        let f = radial_band_energies(&spec, bands);
        prop_assert_eq!(f.len(), bands);
        prop_assert!((f.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        prop_assert!(f.iter().all(|&v| v >= 0.0));
        prop_assert!((parseval_ratio(&img).unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn any_sinusoid_peaks_on_its_bin(kx in -300i64..300, ky in -200i64..200, phase in 0.0..TAU) {
        prop_assume!((kx, ky) != (0, 0));
        assert_peak_at(&fft2_log_spectrum(&sinusoid(kx, ky, phase)).unwrap(), kx, ky);
    }

    #[test]
    fn features_scale_invariant_in_bands(seed in 0u64..1000, gain in 0.2..5.0f64) {
        let s = TextureSampler::default();
        let d = s.sandpaper(180, seed).unwrap();
        let a = extract_features(&d).unwrap();
        let b = extract_features(&d.scaled(gain)).unwrap();
        for (x, y) in a.band_energies.iter().zip(&b.band_energies) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }
}
