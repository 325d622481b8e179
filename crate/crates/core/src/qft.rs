//! The discrete left quaternion Fourier transform on cyclic grids, in a
//! direct reference form and a fast factorized form.
//!
//! Forward transform of an `n1 x n2` field `f`, with roots `(mu, nu)`:
//!
//! ```text
//! F(u1,u2) = 1/sqrt(n1*n2) * sum_{x1,x2} exp(-mu*2*pi*x1*u1/n1)
//!                                      * exp(-nu*2*pi*x2*u2/n2) * f(x1,x2)
//! ```
//!
//! Both kernels multiply from the left with the mu factor outermost. The
//! inverse uses positive angles with the kernel order mirrored (nu factor
//! outermost), so inverse-of-forward telescopes to the identity. The
//! 1/sqrt(n1*n2) normalization on both directions makes the transform
//! unitary; it is the discrete counterpart of a symmetric 2*pi factor, and
//! every convolution-theorem constant in [`crate::conv`] follows from it.

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::TAU;
use std::sync::Arc;

use crate::field::QField;
use crate::quat::{Quaternion, Root, RootPair};
use crate::threads;

/// Transform direction; `Inverse` mirrors kernel order and flips angle signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Direct evaluation of the forward transform (row pass with `nu`, then
/// column pass with `mu`, exactly the factored double sum).
pub fn dft_left(f: &QField, roots: RootPair) -> QField {
    direct_transform(f, roots, Direction::Forward)
}

/// Direct evaluation of the inverse transform.
pub fn idft_left(f: &QField, roots: RootPair) -> QField {
    direct_transform(f, roots, Direction::Inverse)
}

/// Fast transform for power-of-two grids; any other size falls back to the
/// direct form, so this is safe to call unconditionally.
///
/// Each 1-D pass splits the signal into the parts commuting and
/// anticommuting with that axis's root. The commuting part is a plain
/// complex FFT in the plane spanned by {1, root}; the anticommuting part
/// picks up a sign flip when the kernel moves past it, so it runs through
/// the conjugate-frequency FFT.
pub fn fast_qft(f: &QField, roots: RootPair, direction: Direction) -> QField {
    if f.n1().is_power_of_two() && f.n2().is_power_of_two() {
        fast_transform(f, roots, direction)
    } else {
        direct_transform(f, roots, direction)
    }
}

/// Dispatches to the fast path when available; used by the convolution layer.
pub(crate) fn transform(f: &QField, roots: RootPair, direction: Direction) -> QField {
    fast_qft(f, roots, direction)
}

fn unit_scale(f: &QField) -> f64 {
    1.0 / ((f.n1() * f.n2()) as f64).sqrt()
}

fn direct_transform(f: &QField, roots: RootPair, direction: Direction) -> QField {
    let scale = unit_scale(f);
    let out = match direction {
        Direction::Forward => {
            let mid = direct_pass_axis2(f, roots.nu(), -1.0);
            direct_pass_axis1(&mid, roots.mu(), -1.0)
        }
        Direction::Inverse => {
            let mid = direct_pass_axis1(f, roots.mu(), 1.0);
            direct_pass_axis2(&mid, roots.nu(), 1.0)
        }
    };
    out.scaled(scale)
}

/// One direct pass along the second axis: for every row,
/// `out[u] = sum_x exp(sign * root * 2*pi*(x*u mod n)/n) * row[x]`.
fn direct_pass_axis2(f: &QField, root: Root, sign: f64) -> QField {
    let (n1, n2) = f.shape();
    let table: Vec<Quaternion> = (0..n2)
        .map(|k| root.exp(sign * TAU * k as f64 / n2 as f64))
        .collect();

    let mut out = QField::zeros(n1, n2);
    threads::for_each_chunk(out.data_mut(), n2, |x1, out_row| {
        for (u, slot) in out_row.iter_mut().enumerate() {
            let mut acc = Quaternion::ZERO;
            for x in 0..n2 {
                acc += table[(x * u) % n2] * f[(x1, x)];
            }
            *slot = acc;
        }
    });
    out
}

fn direct_pass_axis1(f: &QField, root: Root, sign: f64) -> QField {
    direct_pass_axis2(&f.transposed(), root, sign).transposed()
}

/// Orthonormal frame adapted to a root: {1, r} spans the commuting plane,
/// {p, m} with m = r*p spans the anticommuting plane.
struct CommutingFrame {
    r: Quaternion,
    p: Quaternion,
    m: Quaternion,
}

impl CommutingFrame {
    fn new(root: Root) -> CommutingFrame {
        let r = root.as_quaternion();
        // Gram-Schmidt against the basis axis least aligned with r; the
        // choice is deterministic so repeated transforms are bit-identical.
        let e = [Quaternion::I, Quaternion::J, Quaternion::K]
            .into_iter()
            .min_by(|a, b| {
                a.vector_dot(r)
                    .abs()
                    .partial_cmp(&b.vector_dot(r).abs())
                    .expect("finite root components")
            })
            .expect("non-empty basis");
        let proj = e - r * e.vector_dot(r);
        let p = proj * (1.0 / proj.norm());
        CommutingFrame { r, p, m: r * p }
    }

    /// Embeds `re + im*r` back into the quaternion algebra.
    fn lift(&self, z: Complex<f64>) -> Quaternion {
        Quaternion::new(z.re, z.im * self.r.x, z.im * self.r.y, z.im * self.r.z)
    }
}

fn fast_transform(f: &QField, roots: RootPair, direction: Direction) -> QField {
    let scale = unit_scale(f);
    let out = match direction {
        Direction::Forward => {
            let mid = fast_pass_axis2(f, roots.nu(), -1.0);
            fast_pass_axis1(&mid, roots.mu(), -1.0)
        }
        Direction::Inverse => {
            let mid = fast_pass_axis1(f, roots.mu(), 1.0);
            fast_pass_axis2(&mid, roots.nu(), 1.0)
        }
    };
    out.scaled(scale)
}

fn fast_pass_axis2(f: &QField, root: Root, sign: f64) -> QField {
    let n2 = f.n2();
    let frame = CommutingFrame::new(root);

    let mut planner = FftPlanner::new();
    // Negative-angle kernels match rustfft's forward convention.
    let (plan_commuting, plan_anti): (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>) = if sign < 0.0 {
        (planner.plan_fft_forward(n2), planner.plan_fft_inverse(n2))
    } else {
        (planner.plan_fft_inverse(n2), planner.plan_fft_forward(n2))
    };

    let mut out = f.clone();
    threads::for_each_chunk(out.data_mut(), n2, |_, row| {
        let mut commuting: Vec<Complex<f64>> = Vec::with_capacity(n2);
        let mut anti: Vec<Complex<f64>> = Vec::with_capacity(n2);
        for q in row.iter() {
            // q = (w + b*r) + p*(c - d*r) with b, c, d the frame coordinates
            // of the vector part; the left factor p flips the kernel sign.
            commuting.push(Complex::new(q.w, q.vector_dot(frame.r)));
            anti.push(Complex::new(q.vector_dot(frame.p), -q.vector_dot(frame.m)));
        }
        plan_commuting.process(&mut commuting);
        plan_anti.process(&mut anti);
        for (slot, (zc, za)) in row.iter_mut().zip(commuting.iter().zip(&anti)) {
            *slot = frame.lift(*zc) + frame.p * frame.lift(*za);
        }
    });
    out
}

fn fast_pass_axis1(f: &QField, root: Root, sign: f64) -> QField {
    fast_pass_axis2(&f.transposed(), root, sign).transposed()
}
