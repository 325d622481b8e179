//! Classical cyclic convolution, Mustard convolution, and the expansions
//! that express each through the other.
//!
//! The Mustard convolution is defined spectrally: the left quaternion
//! Fourier transform maps it to the pointwise product of spectra, scaled by
//! `sqrt(n1*n2)` under the unitary normalization. The classical convolution
//! is the plain cyclic sum. The expansion evaluators below rewrite one as a
//! finite weighted sum of the other over reflected, root-multiplied copies
//! of the inputs, driven by the term tables in [`crate::expansion`].

use crate::error::Result;
use crate::expansion::{self, Block, Term};
use crate::field::{QField, ReflectionIndex};
use crate::qft::{self, Direction};
use crate::quat::{Quaternion, Root, RootPair};
use crate::threads;

/// Gate for identities that are only stated for anticommuting roots.
pub const PERPENDICULARITY_LIMIT: f64 = 1e-12;

/// `(f * g)(x) = sum_y f(y) g(x - y mod n)`; f stays on the left of every
/// product, g on the right.
pub fn classical_convolve(f: &QField, g: &QField) -> Result<QField> {
    f.ensure_same_shape(g)?;
    let (n1, n2) = f.shape();
    let mut out = QField::zeros(n1, n2);
    threads::for_each_chunk(out.data_mut(), n2, |x1, row| {
        for (x2, slot) in row.iter_mut().enumerate() {
            let mut acc = Quaternion::ZERO;
            for y1 in 0..n1 {
                let d1 = (x1 + n1 - y1) % n1;
                for y2 in 0..n2 {
                    let d2 = (x2 + n2 - y2) % n2;
                    acc += f[(y1, y2)] * g[(d1, d2)];
                }
            }
            *slot = acc;
        }
    });
    Ok(out)
}

/// `(f ⋆ g)(y) = sum_x f(x) g(x + y mod n)`; equals the classical
/// convolution of the doubly reflected f with g.
pub fn cross_correlate(f: &QField, g: &QField) -> Result<QField> {
    f.ensure_same_shape(g)?;
    let (n1, n2) = f.shape();
    let mut out = QField::zeros(n1, n2);
    threads::for_each_chunk(out.data_mut(), n2, |y1, row| {
        for (y2, slot) in row.iter_mut().enumerate() {
            let mut acc = Quaternion::ZERO;
            for x1 in 0..n1 {
                let s1 = (x1 + y1) % n1;
                for x2 in 0..n2 {
                    let s2 = (x2 + y2) % n2;
                    acc += f[(x1, x2)] * g[(s1, s2)];
                }
            }
            *slot = acc;
        }
    });
    Ok(out)
}

/// The Mustard convolution: `sqrt(n1*n2) * inverse(F(f) . F(g))` with the
/// pointwise product taking F(f) on the left. Its spectrum is therefore
/// exactly `sqrt(n1*n2) * F(f) . F(g)`.
pub fn mustard_convolve(f: &QField, g: &QField, roots: RootPair) -> Result<QField> {
    f.ensure_same_shape(g)?;
    let spec_f = qft::transform(f, roots, Direction::Forward);
    let spec_g = qft::transform(g, roots, Direction::Forward);
    let product = spec_f.pointwise_mul(&spec_g)?;
    let scale = ((f.n1() * f.n2()) as f64).sqrt();
    Ok(qft::transform(&product, roots, Direction::Inverse).scaled(scale))
}

/// How a sum of Mustard convolutions is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MustardEval {
    /// One full Mustard convolution per term.
    PerTerm,
    /// Transform each distinct (word, reflection) input variant once,
    /// accumulate the weighted spectral products, invert once.
    CachedSpectrum,
}

/// `word * field^refl`: the input variant a term acts on.
fn variant(
    field: &QField,
    word: expansion::RootWord,
    refl: ReflectionIndex,
    roots: &RootPair,
) -> QField {
    field.reflect(refl).left_mul(word.eval(roots))
}

/// Weighted sum of classical convolutions of term variants, in table order.
pub fn eval_classical_sum(
    f: &QField,
    g: &QField,
    roots: RootPair,
    terms: &[Term],
) -> Result<QField> {
    f.ensure_same_shape(g)?;
    let a = roots.anticommutator();
    let contributions = threads::map_collect(terms, |t| {
        let hf = variant(f, t.f_word, t.f_refl, &roots);
        let hg = variant(g, t.g_word, t.g_refl, &roots);
        classical_convolve(&hf, &hg).expect("shapes already verified")
    });
    let mut out = QField::zeros(f.n1(), f.n2());
    for (t, c) in terms.iter().zip(&contributions) {
        out.accumulate(c, t.weight.value(a));
    }
    Ok(out)
}

/// Weighted sum of Mustard convolutions of term variants, in table order.
pub fn eval_mustard_sum(
    f: &QField,
    g: &QField,
    roots: RootPair,
    terms: &[Term],
    mode: MustardEval,
) -> Result<QField> {
    f.ensure_same_shape(g)?;
    match mode {
        MustardEval::PerTerm => {
            let a = roots.anticommutator();
            let contributions = threads::map_collect(terms, |t| {
                let hf = variant(f, t.f_word, t.f_refl, &roots);
                let hg = variant(g, t.g_word, t.g_refl, &roots);
                mustard_convolve(&hf, &hg, roots).expect("shapes already verified")
            });
            let mut out = QField::zeros(f.n1(), f.n2());
            for (t, c) in terms.iter().zip(&contributions) {
                out.accumulate(c, t.weight.value(a));
            }
            Ok(out)
        }
        MustardEval::CachedSpectrum => {
            let acc = spectral_accumulator(f, g, roots, terms)?;
            let scale = ((f.n1() * f.n2()) as f64).sqrt();
            Ok(qft::transform(&acc, roots, Direction::Inverse).scaled(scale))
        }
    }
}

/// `sum_t weight_t * F(variant_f) . F(variant_g)` with each distinct input
/// variant transformed exactly once; accumulation stays in table order.
fn spectral_accumulator(f: &QField, g: &QField, roots: RootPair, terms: &[Term]) -> Result<QField> {
    f.ensure_same_shape(g)?;
    let a = roots.anticommutator();

    let mut f_keys: Vec<(expansion::RootWord, ReflectionIndex)> = Vec::new();
    let mut g_keys: Vec<(expansion::RootWord, ReflectionIndex)> = Vec::new();
    let mut f_index = Vec::with_capacity(terms.len());
    let mut g_index = Vec::with_capacity(terms.len());
    for t in terms {
        f_index.push(intern(&mut f_keys, (t.f_word, t.f_refl)));
        g_index.push(intern(&mut g_keys, (t.g_word, t.g_refl)));
    }

    let f_spectra = threads::map_collect(&f_keys, |&(word, refl)| {
        qft::transform(&variant(f, word, refl, &roots), roots, Direction::Forward)
    });
    let g_spectra = threads::map_collect(&g_keys, |&(word, refl)| {
        qft::transform(&variant(g, word, refl, &roots), roots, Direction::Forward)
    });

    let mut acc = QField::zeros(f.n1(), f.n2());
    for (t, (&fi, &gi)) in terms.iter().zip(f_index.iter().zip(&g_index)) {
        let product = f_spectra[fi].pointwise_mul(&g_spectra[gi])?;
        acc.accumulate(&product, t.weight.value(a));
    }
    Ok(acc)
}

fn intern(
    keys: &mut Vec<(expansion::RootWord, ReflectionIndex)>,
    key: (expansion::RootWord, ReflectionIndex),
) -> usize {
    match keys.iter().position(|&k| k == key) {
        Some(i) => i,
        None => {
            keys.push(key);
            keys.len() - 1
        }
    }
}

/// Weighted sum of pointwise spectral products scaled by `sqrt(n1*n2)`,
/// the discrete stand-in for the continuous prefactor of the spectrum
/// identities (table coefficients carry the remaining 1/4).
pub fn eval_spectrum_sum(
    f: &QField,
    g: &QField,
    roots: RootPair,
    terms: &[Term],
) -> Result<QField> {
    let acc = spectral_accumulator(f, g, roots, terms)?;
    let scale = ((f.n1() * f.n2()) as f64).sqrt();
    Ok(acc.scaled(scale))
}

/// The Mustard convolution rebuilt from 32 classical convolutions.
pub fn mustard_via_classical(f: &QField, g: &QField, roots: RootPair) -> Result<QField> {
    eval_classical_sum(f, g, roots, &expansion::mustard_from_classical_terms())
}

/// The classical convolution rebuilt from 4 Mustard convolutions for a
/// single root (`nu := mu`).
pub fn classical_via_mustard_equal(f: &QField, g: &QField, mu: Root) -> Result<QField> {
    eval_mustard_sum(
        f,
        g,
        RootPair::equal(mu),
        &expansion::equal_roots_terms(),
        MustardEval::CachedSpectrum,
    )
}

/// The classical convolution rebuilt from 16 Mustard convolutions;
/// requires anticommuting roots.
pub fn classical_via_mustard_perp(f: &QField, g: &QField, roots: RootPair) -> Result<QField> {
    roots.require_perpendicular(PERPENDICULARITY_LIMIT)?;
    eval_mustard_sum(
        f,
        g,
        roots,
        &expansion::perpendicular_roots_terms(),
        MustardEval::CachedSpectrum,
    )
}

/// The classical convolution rebuilt from 40 Mustard convolutions for
/// arbitrary roots.
pub fn classical_via_mustard_general(f: &QField, g: &QField, roots: RootPair) -> Result<QField> {
    classical_via_mustard_general_with(f, g, roots, MustardEval::CachedSpectrum)
}

pub fn classical_via_mustard_general_with(
    f: &QField,
    g: &QField,
    roots: RootPair,
    mode: MustardEval,
) -> Result<QField> {
    eval_mustard_sum(f, g, roots, &expansion::general_roots_terms(), mode)
}

/// Spectrum of the classical convolution as 16 spectral products; equals
/// `dft_left(classical_convolve(f, g))` for anticommuting roots.
pub fn convolution_spectrum(f: &QField, g: &QField, roots: RootPair) -> Result<QField> {
    roots.require_perpendicular(PERPENDICULARITY_LIMIT)?;
    eval_spectrum_sum(f, g, roots, &expansion::perpendicular_roots_terms())
}

/// Spectrum of the cross-correlation as 16 spectral products; equals
/// `dft_left(cross_correlate(f, g))` for anticommuting roots.
pub fn correlation_spectrum(f: &QField, g: &QField, roots: RootPair) -> Result<QField> {
    roots.require_perpendicular(PERPENDICULARITY_LIMIT)?;
    eval_spectrum_sum(f, g, roots, &expansion::correlation_spectrum_terms())
}

/// Contribution of one coefficient block of an expansion,
/// evaluated as a Mustard sum. Used to assert block-level cancellations.
pub fn mustard_block_contribution(
    f: &QField,
    g: &QField,
    roots: RootPair,
    terms: &[Term],
    block: Block,
    mode: MustardEval,
) -> Result<QField> {
    let subset: Vec<Term> = terms.iter().copied().filter(|t| t.block == block).collect();
    eval_mustard_sum(f, g, roots, &subset, mode)
}

/// Contribution of one coefficient block of a classical-convolution
/// expansion.
pub fn classical_block_contribution(
    f: &QField,
    g: &QField,
    roots: RootPair,
    terms: &[Term],
    block: Block,
) -> Result<QField> {
    let subset: Vec<Term> = terms.iter().copied().filter(|t| t.block == block).collect();
    eval_classical_sum(f, g, roots, &subset)
}
