//! Brute-force reference implementations for the test suites.
//!
//! Everything here trades speed for obviousness: plain double sums with
//! kernels rebuilt from cos/sin at every step, no factorization, no shared
//! code with the production transform or convolution paths. Tests compare
//! the fast implementations against these.

use num_complex::Complex;
use qconv_core::{QField, Quaternion, RootPair};

/// Kernel `cos(theta) + sign * sin(theta) * root`, built from scratch.
fn kernel(root: Quaternion, theta: f64, sign: f64) -> Quaternion {
    let (sin, cos) = theta.sin_cos();
    Quaternion::new(
        cos,
        sign * sin * root.x,
        sign * sin * root.y,
        sign * sin * root.z,
    )
}

/// Forward left transform as the literal quadruple sum
/// `1/sqrt(n1*n2) * sum exp(-mu a1) exp(-nu a2) f`, mu kernel leftmost.
pub fn qft_double_sum(f: &QField, roots: RootPair) -> QField {
    transform_double_sum(f, roots, -1.0, false)
}

/// Inverse left transform: positive angles, kernel order mirrored.
pub fn iqft_double_sum(f: &QField, roots: RootPair) -> QField {
    transform_double_sum(f, roots, 1.0, true)
}

fn transform_double_sum(f: &QField, roots: RootPair, sign: f64, mirrored: bool) -> QField {
    let (n1, n2) = (f.n1(), f.n2());
    let mu = roots.mu().as_quaternion();
    let nu = roots.nu().as_quaternion();
    let tau = std::f64::consts::TAU;
    let scale = 1.0 / ((n1 * n2) as f64).sqrt();
    QField::from_fn(n1, n2, |u1, u2| {
        let mut acc = Quaternion::ZERO;
        for x1 in 0..n1 {
            for x2 in 0..n2 {
                let k1 = kernel(mu, tau * (x1 * u1) as f64 / n1 as f64, sign);
                let k2 = kernel(nu, tau * (x2 * u2) as f64 / n2 as f64, sign);
                let product = if mirrored {
                    k2 * (k1 * f[(x1, x2)])
                } else {
                    k1 * (k2 * f[(x1, x2)])
                };
                acc += product;
            }
        }
        acc * scale
    })
}

/// Cyclic convolution as the literal double sum per output sample.
pub fn convolve_double_sum(f: &QField, g: &QField) -> QField {
    assert_eq!(f.shape(), g.shape());
    let (n1, n2) = (f.n1(), f.n2());
    QField::from_fn(n1, n2, |x1, x2| {
        let mut acc = Quaternion::ZERO;
        for y1 in 0..n1 {
            for y2 in 0..n2 {
                acc += f[(y1, y2)] * g[((x1 + n1 - y1) % n1, (x2 + n2 - y2) % n2)];
            }
        }
        acc
    })
}

/// Cross-correlation as the literal double sum.
pub fn correlate_double_sum(f: &QField, g: &QField) -> QField {
    assert_eq!(f.shape(), g.shape());
    let (n1, n2) = (f.n1(), f.n2());
    QField::from_fn(n1, n2, |y1, y2| {
        let mut acc = Quaternion::ZERO;
        for x1 in 0..n1 {
            for x2 in 0..n2 {
                acc += f[(x1, x2)] * g[((x1 + y1) % n1, (x2 + y2) % n2)];
            }
        }
        acc
    })
}

/// Unitary complex 2-D DFT as a plain double sum; `sign = -1` forward.
pub fn complex_dft2(data: &[Complex<f64>], n1: usize, n2: usize, sign: f64) -> Vec<Complex<f64>> {
    assert_eq!(data.len(), n1 * n2);
    let tau = std::f64::consts::TAU;
    let scale = 1.0 / ((n1 * n2) as f64).sqrt();
    let mut out = Vec::with_capacity(n1 * n2);
    for u1 in 0..n1 {
        for u2 in 0..n2 {
            let mut acc = Complex::new(0.0, 0.0);
            for x1 in 0..n1 {
                for x2 in 0..n2 {
                    let angle =
                        sign * tau * ((x1 * u1) as f64 / n1 as f64 + (x2 * u2) as f64 / n2 as f64);
                    acc += Complex::from_polar(1.0, angle) * data[x1 * n2 + x2];
                }
            }
            out.push(acc * scale);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use qconv_core::Root;

    #[test]
    fn delta_transforms_flat() {
        let spec = qft_double_sum(&QField::delta(4, 4), RootPair::new(Root::I, Root::J));
        let flat = QField::constant(4, 4, Quaternion::real(0.25));
        assert!(spec.max_abs_diff(&flat) < 1e-14);
    }

    #[test]
    fn oracle_round_trip() {
        let f = QField::from_fn(3, 3, |a, b| {
            Quaternion::new(a as f64, b as f64, 0.5, -(a as f64) * b as f64)
        });
        let roots = RootPair::new(Root::new(1.0, 1.0, 0.0).unwrap(), Root::K);
        let back = iqft_double_sum(&qft_double_sum(&f, roots), roots);
        assert!(back.max_abs_diff(&f) < 1e-12);
    }
}
