//! Browser bindings for the demo page: filter a color image through the
//! convolution correspondences, look at left-qFT spectra, and run the
//! seeded identity suites.
//!
//! Images cross the boundary as RGBA byte buffers; pixels map to pure
//! quaternions (r, g, b as the i, j, k channels in [0, 1]). The exported
//! functions are thin wrappers over plain-Rust internals so everything is
//! unit-testable on the host target.

use qconv_core::verify::{SuiteSelection, VerifyConfig};
use qconv_core::{conv, io, qft, verify, QField, Quaternion, RootPair};
use wasm_bindgen::prelude::*;

fn field_from_rgba(rgba: &[u8], width: u32, height: u32) -> Result<QField, String> {
    let (w, h) = (width as usize, height as usize);
    if w == 0 || h == 0 || rgba.len() != w * h * 4 {
        return Err("pixel buffer does not match width*height*4".into());
    }
    Ok(QField::from_fn(h, w, |x1, x2| {
        let at = (x1 * w + x2) * 4;
        Quaternion::pure(
            rgba[at] as f64 / 255.0,
            rgba[at + 1] as f64 / 255.0,
            rgba[at + 2] as f64 / 255.0,
        )
    }))
}

fn rgba_from_field(f: &QField) -> Vec<u8> {
    let mut out = Vec::with_capacity(f.len() * 4);
    for q in f.data() {
        for channel in [q.x, q.y, q.z] {
            out.push((channel.clamp(0.0, 1.0) * 255.0).round() as u8);
        }
        out.push(255);
    }
    out
}

/// 3x3 real mask embedded at the origin of the cyclic grid.
fn kernel_field(name: &str, n1: usize, n2: usize) -> Result<QField, String> {
    if name == "identity" {
        return Ok(QField::delta(n1, n2));
    }
    let mask: [[f64; 3]; 3] = match name {
        "blur" => [
            [1.0 / 16.0, 2.0 / 16.0, 1.0 / 16.0],
            [2.0 / 16.0, 4.0 / 16.0, 2.0 / 16.0],
            [1.0 / 16.0, 2.0 / 16.0, 1.0 / 16.0],
        ],
        "sharpen" => [[0.0, -1.0, 0.0], [-1.0, 5.0, -1.0], [0.0, -1.0, 0.0]],
        "emboss" => [[-2.0, -1.0, 0.0], [-1.0, 1.5, 1.0], [0.0, 1.0, 2.0]],
        _ => return Err("unknown kernel; expected identity, blur, sharpen or emboss".into()),
    };
    if n1 < 3 || n2 < 3 {
        return Err("image too small for a 3x3 kernel".into());
    }
    let mut kernel = QField::zeros(n1, n2);
    for (i, row) in mask.iter().enumerate() {
        for (j, &w) in row.iter().enumerate() {
            kernel[((i + n1 - 1) % n1, (j + n2 - 1) % n2)] = Quaternion::real(w);
        }
    }
    Ok(kernel)
}

/// Direct cyclic convolution specialized to sparse kernels:
/// `(f * g)(x) = sum_z f(x - z) g(z)` over the non-zero samples of g,
/// keeping f on the left of every product.
fn sparse_spatial(f: &QField, g: &QField) -> QField {
    let (n1, n2) = f.shape();
    let support: Vec<(usize, usize, Quaternion)> = (0..n1)
        .flat_map(|z1| (0..n2).map(move |z2| (z1, z2)))
        .filter_map(|(z1, z2)| {
            let q = g[(z1, z2)];
            (q.abs_max() != 0.0).then_some((z1, z2, q))
        })
        .collect();
    QField::from_fn(n1, n2, |x1, x2| {
        let mut acc = Quaternion::ZERO;
        for &(z1, z2, w) in &support {
            acc += f[((x1 + n1 - z1) % n1, (x2 + n2 - z2) % n2)] * w;
        }
        acc
    })
}

fn convolve_with(method: &str, f: &QField, g: &QField, roots: RootPair) -> Result<QField, String> {
    let run = || -> qconv_core::Result<QField> {
        match method {
            "spatial" => Ok(sparse_spatial(f, g)),
            "mustard" => conv::mustard_convolve(f, g, roots),
            "thm31" => conv::classical_via_mustard_equal(f, g, roots.mu()),
            "thm32" => conv::classical_via_mustard_perp(f, g, roots),
            "thm41" => conv::classical_via_mustard_general(f, g, roots),
            "spectral51" => {
                let spectrum = conv::convolution_spectrum(f, g, roots)?;
                Ok(qft::fast_qft(&spectrum, roots, qft::Direction::Inverse))
            }
            other => Err(qconv_core::Error::ParseError(format!(
                "unknown method {other:?}"
            ))),
        }
    };
    run().map_err(|e| e.to_string())
}

/// Result of a filter run: display pixels plus numeric diagnostics.
#[wasm_bindgen]
pub struct FilterOutput {
    pixels: Vec<u8>,
    deviation: f64,
    scalar_leak: f64,
}

#[wasm_bindgen]
impl FilterOutput {
    /// Filtered image as RGBA bytes.
    #[wasm_bindgen(getter)]
    pub fn pixels(&self) -> Vec<u8> {
        self.pixels.clone()
    }

    /// Max abs deviation from the direct spatial convolution.
    #[wasm_bindgen(getter)]
    pub fn deviation(&self) -> f64 {
        self.deviation
    }

    /// Largest scalar part produced by the pipeline (discarded on display).
    #[wasm_bindgen(getter = scalarLeak)]
    pub fn scalar_leak(&self) -> f64 {
        self.scalar_leak
    }
}

fn filter_inner(
    rgba: &[u8],
    width: u32,
    height: u32,
    kernel: &str,
    method: &str,
    roots: &str,
) -> Result<FilterOutput, String> {
    let f = field_from_rgba(rgba, width, height)?;
    let g = kernel_field(kernel, f.n1(), f.n2())?;
    let roots = io::parse_roots(roots).map_err(|e| e.to_string())?;
    if method == "thm31" && roots.mu() != roots.nu() {
        return Err("thm31 needs a single root; pick an equal preset or one vector".into());
    }
    let result = convolve_with(method, &f, &g, roots)?;
    let deviation = if method == "spatial" {
        0.0
    } else {
        result.max_abs_diff(&sparse_spatial(&f, &g))
    };
    let scalar_leak = result.data().iter().map(|q| q.w.abs()).fold(0.0, f64::max);
    Ok(FilterOutput {
        pixels: rgba_from_field(&result),
        deviation,
        scalar_leak,
    })
}

/// Convolves the image with a named 3x3 kernel using the selected method
/// and reports how far the result is from the direct spatial sum.
#[wasm_bindgen]
pub fn filter_image(
    rgba: &[u8],
    width: u32,
    height: u32,
    kernel: &str,
    method: &str,
    roots: &str,
) -> Result<FilterOutput, JsValue> {
    filter_inner(rgba, width, height, kernel, method, roots).map_err(|e| JsValue::from_str(&e))
}

fn spectrum_inner(rgba: &[u8], width: u32, height: u32, roots: &str) -> Result<Vec<u8>, String> {
    let f = field_from_rgba(rgba, width, height)?;
    let roots = io::parse_roots(roots).map_err(|e| e.to_string())?;
    let spectrum = qft::fast_qft(&f, roots, qft::Direction::Forward);

    let (n1, n2) = spectrum.shape();
    let magnitudes: Vec<f64> = spectrum.data().iter().map(|q| q.norm()).collect();
    let peak = magnitudes.iter().fold(0.0_f64, |m, &v| m.max(v));
    let scale = if peak > 0.0 { (1.0 + peak).ln() } else { 1.0 };

    let mut out = vec![0u8; n1 * n2 * 4];
    for u1 in 0..n1 {
        for u2 in 0..n2 {
            // display position with the DC bin at the center
            let d1 = (u1 + n1 / 2) % n1;
            let d2 = (u2 + n2 / 2) % n2;
            let v = (1.0 + magnitudes[u1 * n2 + u2]).ln() / scale;
            let gray = (v.clamp(0.0, 1.0) * 255.0).round() as u8;
            let at = (d1 * n2 + d2) * 4;
            out[at] = gray;
            out[at + 1] = gray;
            out[at + 2] = gray;
            out[at + 3] = 255;
        }
    }
    Ok(out)
}

/// Log-scaled magnitude of the left qFT, quadrant-shifted so the DC bin
/// sits in the center; returned as a grayscale RGBA image.
#[wasm_bindgen]
pub fn spectrum_image(
    rgba: &[u8],
    width: u32,
    height: u32,
    roots: &str,
) -> Result<Vec<u8>, JsValue> {
    spectrum_inner(rgba, width, height, roots).map_err(|e| JsValue::from_str(&e))
}

fn verify_inner(seed: u32, size: u32, suite: &str) -> Result<String, String> {
    let selection: SuiteSelection = suite
        .parse()
        .map_err(|e: qconv_core::Error| e.to_string())?;
    let cfg = VerifyConfig::square(seed as u64, (size as usize).max(1));
    let reports = verify::run(selection, &cfg);
    let rows: Vec<serde_json::Value> = reports
        .iter()
        .map(|r| {
            serde_json::json!({
                "suite": r.suite.name(),
                "identity": r.name,
                "max_err": r.max_err,
                "tolerance": r.tolerance,
                "pass": r.passed(),
            })
        })
        .collect();
    Ok(serde_json::Value::Array(rows).to_string())
}

/// Runs an identity suite and returns a JSON array of per-identity rows.
#[wasm_bindgen]
pub fn verify_report(seed: u32, size: u32, suite: &str) -> Result<String, JsValue> {
    verify_inner(seed, size, suite).map_err(|e| JsValue::from_str(&e))
}

/// Synthetic color test card so the page works without an upload.
#[wasm_bindgen]
pub fn demo_image(width: u32, height: u32) -> Vec<u8> {
    let (w, h) = (width.max(1) as usize, height.max(1) as usize);
    let field = QField::from_fn(h, w, |y, x| {
        let fx = x as f64 / (w.max(2) - 1) as f64;
        let fy = y as f64 / (h.max(2) - 1) as f64;
        let mut r = fx;
        let mut g = fy;
        let mut b = 1.0 - 0.5 * (fx + fy);

        // two disks and a stripe give the filters edges to act on
        let disk = |cx: f64, cy: f64, radius: f64| {
            let (dx, dy) = (fx - cx, fy - cy);
            dx * dx + dy * dy < radius * radius
        };
        if disk(0.3, 0.35, 0.18) {
            r = 0.95;
            g = 0.15;
            b = 0.1;
        }
        if disk(0.7, 0.65, 0.22) {
            r = 0.1;
            g = 0.8;
            b = 0.9;
        }
        if ((fx - fy) * 8.0).rem_euclid(2.0) < 0.25 {
            r = 1.0 - r;
            g = 1.0 - g;
            b = 1.0 - b;
        }
        Quaternion::pure(r, g, b)
    });
    rgba_from_field(&field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rgba_round_trip() {
        let rgba = demo_image(16, 16);
        let field = field_from_rgba(&rgba, 16, 16).unwrap();
        assert_eq!(rgba_from_field(&field), rgba);
    }

    #[test]
    fn sparse_spatial_matches_dense_convolution() {
        let mut s = qconv_core::sample::Sampler::new(5);
        let f = s.field(8, 8);
        let g = kernel_field("sharpen", 8, 8).unwrap();
        let sparse = sparse_spatial(&f, &g);
        let dense = conv::classical_convolve(&f, &g).unwrap();
        assert!(sparse.max_abs_diff(&dense) <= 1e-12);
    }

    #[test]
    fn filter_methods_agree_on_the_demo_card() {
        let rgba = demo_image(32, 32);
        let spatial = filter_inner(&rgba, 32, 32, "blur", "spatial", "gray-line").unwrap();
        let thm41 = filter_inner(&rgba, 32, 32, "blur", "thm41", "gray-line").unwrap();
        assert_eq!(spatial.deviation, 0.0);
        assert!(thm41.deviation <= 1e-9, "deviation {}", thm41.deviation);
        // The dyadic blur weights can land exactly on quantization ties,
        // which the two methods may round apart; anything beyond one
        // display step would be a real disagreement.
        let worst_byte = spatial
            .pixels
            .iter()
            .zip(&thm41.pixels)
            .map(|(a, b)| (*a as i16 - *b as i16).abs())
            .max()
            .unwrap();
        assert!(worst_byte <= 1, "byte gap {worst_byte}");
    }

    #[test]
    fn kernels_and_methods_are_validated() {
        let rgba = demo_image(8, 8);
        assert!(filter_inner(&rgba, 8, 8, "boxcar", "spatial", "gray-line").is_err());
        assert!(filter_inner(&rgba, 8, 8, "blur", "thm31", "perp-ij").is_err());
        assert!(filter_inner(&rgba, 8, 8, "blur", "thm32", "equal-i").is_err());
        assert!(filter_inner(&rgba, 8, 8, "blur", "warp", "gray-line").is_err());
        assert!(filter_inner(&rgba, 4, 4, "blur", "spatial", "gray-line").is_err());
    }

    #[test]
    fn spectrum_of_flat_image_is_a_centered_peak() {
        let rgba = vec![200u8; 8 * 8 * 4];
        let pixels = spectrum_inner(&rgba, 8, 8, "perp-ij").unwrap();
        // DC bin shifted to the center (4, 4); everything else dark
        let at = |u1: usize, u2: usize| pixels[(u1 * 8 + u2) * 4];
        assert_eq!(at(4, 4), 255);
        assert_eq!(at(0, 0), 0);
    }

    #[test]
    fn verify_report_is_json() {
        let json = verify_inner(42, 2, "thm31").unwrap();
        let rows: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(rows.as_array().unwrap().iter().all(|r| r["pass"] == true));
    }
}
