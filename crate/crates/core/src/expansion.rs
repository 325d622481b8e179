//! Term tables for the convolution-correspondence expansions.
//!
//! Every expansion that rewrites one convolution product in terms of the
//! other (or in terms of spectra) is a weighted sum of shapes
//!
//! ```text
//! weight * (f_word * f^(f_refl))  <op>  (g_word * g^(g_refl))
//! ```
//!
//! where `<op>` is a classical convolution, a Mustard convolution, or a
//! pointwise spectral product depending on the identity. The tables below
//! list every term explicitly, in a fixed order, so individual terms
//! can be audited, dumped and selectively corrupted by tests. The
//! evaluators live in [`crate::conv`].

use crate::field::ReflectionIndex;
use crate::quat::{Quaternion, RootPair};

const R00: ReflectionIndex = ReflectionIndex::new(false, false);
const R01: ReflectionIndex = ReflectionIndex::new(false, true);
const R10: ReflectionIndex = ReflectionIndex::new(true, false);
const R11: ReflectionIndex = ReflectionIndex::new(true, true);

/// Left quaternion coefficient of a term: a short word in the roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootWord {
    One,
    Mu,
    Nu,
    MuNu,
    NuMu,
}

impl RootWord {
    pub fn eval(self, roots: &RootPair) -> Quaternion {
        let mu = roots.mu().as_quaternion();
        let nu = roots.nu().as_quaternion();
        match self {
            RootWord::One => Quaternion::ONE,
            RootWord::Mu => mu,
            RootWord::Nu => nu,
            RootWord::MuNu => mu * nu,
            RootWord::NuMu => nu * mu,
        }
    }
}

/// Real weight `coeff * a^a_power` where `a` is the roots' anticommutator.
/// Every `coeff` is an exact dyadic (+-1/2, +-1/4, +-1/8).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Weight {
    pub coeff: f64,
    pub a_power: u8,
}

impl Weight {
    pub const fn of(coeff: f64) -> Weight {
        Weight { coeff, a_power: 0 }
    }

    pub const fn times_a(coeff: f64) -> Weight {
        Weight { coeff, a_power: 1 }
    }

    pub const fn times_a_sq(coeff: f64) -> Weight {
        Weight { coeff, a_power: 2 }
    }

    pub fn value(&self, a: f64) -> f64 {
        match self.a_power {
            0 => self.coeff,
            1 => self.coeff * a,
            _ => self.coeff * a * a,
        }
    }
}

/// One term of an expansion; `block` labels the coefficient group the
/// term belongs to, for audits and block-level assertions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Term {
    pub weight: Weight,
    pub f_word: RootWord,
    pub f_refl: ReflectionIndex,
    pub g_word: RootWord,
    pub g_refl: ReflectionIndex,
    pub block: Block,
}

/// Coefficient group of a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    /// Plain 1/2 or 1/4 group (no anticommutator factor).
    Main,
    /// 1/8 group with a mu*nu coefficient pair.
    EighthMuNu,
    /// 1/8 group with a nu*mu coefficient pair.
    EighthNuMu,
    /// Group weighted by a/8.
    LinearA,
    /// Group weighted by a^2/8.
    QuadraticA,
}

const fn term(
    weight: Weight,
    f_word: RootWord,
    f_refl: ReflectionIndex,
    g_word: RootWord,
    g_refl: ReflectionIndex,
    block: Block,
) -> Term {
    Term {
        weight,
        f_word,
        f_refl,
        g_word,
        g_refl,
        block,
    }
}

use Block::{EighthMuNu, EighthNuMu, LinearA, Main, QuadraticA};
use RootWord::{Mu, MuNu, Nu, NuMu, One};

/// Expands the Mustard convolution as 32 classical convolutions.
///
/// When the anticommutator vanishes the `LinearA` block drops out and the
/// two eighth blocks merge, leaving 16 effective terms; for equal roots the
/// whole sum collapses to the four terms of [`equal_roots_terms`] with the
/// roles of the two convolutions exchanged.
pub fn mustard_from_classical_terms() -> Vec<Term> {
    const Q: Weight = Weight::of(0.25);
    const QN: Weight = Weight::of(-0.25);
    const E: Weight = Weight::of(0.125);
    const EN: Weight = Weight::of(-0.125);
    const A: Weight = Weight::times_a(0.125);
    const AN: Weight = Weight::times_a(-0.125);
    vec![
        term(Q, One, R00, One, R00, Main),
        term(Q, One, R00, One, R01, Main),
        term(Q, One, R00, One, R10, Main),
        term(Q, One, R00, One, R11, Main),
        term(QN, Nu, R00, Nu, R00, Main),
        term(Q, Nu, R00, Nu, R01, Main),
        term(QN, Nu, R00, Nu, R10, Main),
        term(Q, Nu, R00, Nu, R11, Main),
        term(QN, Mu, R01, Mu, R00, Main),
        term(QN, Mu, R01, Mu, R01, Main),
        term(Q, Mu, R01, Mu, R10, Main),
        term(Q, Mu, R01, Mu, R11, Main),
        term(EN, MuNu, R01, MuNu, R00, EighthMuNu),
        term(E, MuNu, R01, MuNu, R01, EighthMuNu),
        term(E, MuNu, R01, MuNu, R10, EighthMuNu),
        term(EN, MuNu, R01, MuNu, R11, EighthMuNu),
        term(E, NuMu, R01, MuNu, R00, EighthNuMu),
        term(EN, NuMu, R01, MuNu, R01, EighthNuMu),
        term(EN, NuMu, R01, MuNu, R10, EighthNuMu),
        term(E, NuMu, R01, MuNu, R11, EighthNuMu),
        term(A, One, R00, MuNu, R00, LinearA),
        term(AN, One, R00, MuNu, R01, LinearA),
        term(AN, One, R00, MuNu, R10, LinearA),
        term(A, One, R00, MuNu, R11, LinearA),
        term(A, Nu, R00, Mu, R00, LinearA),
        term(A, Nu, R00, Mu, R01, LinearA),
        term(AN, Nu, R00, Mu, R10, LinearA),
        term(AN, Nu, R00, Mu, R11, LinearA),
        term(AN, Nu, R01, Mu, R00, LinearA),
        term(AN, Nu, R01, Mu, R01, LinearA),
        term(A, Nu, R01, Mu, R10, LinearA),
        term(A, Nu, R01, Mu, R11, LinearA),
    ]
}

/// Four-term expansion connecting the two convolutions for a single root.
///
/// With Mustard terms on the right it expresses the classical convolution;
/// with classical terms it is the collapsed equal-roots form of
/// [`mustard_from_classical_terms`].
pub fn equal_roots_terms() -> Vec<Term> {
    const H: Weight = Weight::of(0.5);
    const HN: Weight = Weight::of(-0.5);
    vec![
        term(H, One, R00, One, R00, Main),
        term(HN, Mu, R00, Mu, R00, Main),
        term(H, One, R00, One, R11, Main),
        term(H, Mu, R00, Mu, R11, Main),
    ]
}

/// Sixteen-term expansion of the classical convolution as Mustard
/// convolutions for anticommuting (perpendicular) roots. Applying the
/// forward transform to it term by term also yields the spectrum of the
/// classical convolution, so [`crate::conv::convolution_spectrum`] shares
/// this table.
pub fn perpendicular_roots_terms() -> Vec<Term> {
    const Q: Weight = Weight::of(0.25);
    const QN: Weight = Weight::of(-0.25);
    vec![
        term(Q, One, R00, One, R00, Main),
        term(Q, One, R00, One, R01, Main),
        term(Q, One, R00, One, R10, Main),
        term(Q, One, R00, One, R11, Main),
        term(QN, Nu, R00, Nu, R00, Main),
        term(Q, Nu, R00, Nu, R01, Main),
        term(QN, Nu, R00, Nu, R10, Main),
        term(Q, Nu, R00, Nu, R11, Main),
        term(QN, Mu, R01, Mu, R00, Main),
        term(QN, Mu, R01, Mu, R01, Main),
        term(Q, Mu, R01, Mu, R10, Main),
        term(Q, Mu, R01, Mu, R11, Main),
        term(Q, NuMu, R01, MuNu, R00, Main),
        term(QN, NuMu, R01, MuNu, R01, Main),
        term(QN, NuMu, R01, MuNu, R10, Main),
        term(Q, NuMu, R01, MuNu, R11, Main),
    ]
}

/// Forty-term expansion of the classical convolution as Mustard
/// convolutions for arbitrary roots with anticommutator `a`.
///
/// The quarter block matches [`perpendicular_roots_terms`] except that its
/// last line carries `mu*nu` on the f side and `nu*mu` on the g side (the
/// opposite order); the two coincide when `a = 0` because the products then
/// differ only by sign on both sides at once.
pub fn general_roots_terms() -> Vec<Term> {
    const Q: Weight = Weight::of(0.25);
    const QN: Weight = Weight::of(-0.25);
    const A: Weight = Weight::times_a(0.125);
    const AN: Weight = Weight::times_a(-0.125);
    const A2: Weight = Weight::times_a_sq(0.125);
    const A2N: Weight = Weight::times_a_sq(-0.125);
    vec![
        term(Q, One, R00, One, R00, Main),
        term(Q, One, R00, One, R01, Main),
        term(Q, One, R00, One, R10, Main),
        term(Q, One, R00, One, R11, Main),
        term(QN, Nu, R00, Nu, R00, Main),
        term(Q, Nu, R00, Nu, R01, Main),
        term(QN, Nu, R00, Nu, R10, Main),
        term(Q, Nu, R00, Nu, R11, Main),
        term(QN, Mu, R01, Mu, R00, Main),
        term(QN, Mu, R01, Mu, R01, Main),
        term(Q, Mu, R01, Mu, R10, Main),
        term(Q, Mu, R01, Mu, R11, Main),
        term(Q, MuNu, R01, NuMu, R00, Main),
        term(QN, MuNu, R01, NuMu, R01, Main),
        term(QN, MuNu, R01, NuMu, R10, Main),
        term(Q, MuNu, R01, NuMu, R11, Main),
        term(AN, One, R00, MuNu, R00, LinearA),
        term(A, Nu, R00, Mu, R00, LinearA),
        term(A, One, R00, MuNu, R01, LinearA),
        term(A, Nu, R00, Mu, R01, LinearA),
        term(A, One, R00, MuNu, R10, LinearA),
        term(AN, Nu, R00, Mu, R10, LinearA),
        term(AN, One, R00, MuNu, R11, LinearA),
        term(AN, Nu, R00, Mu, R11, LinearA),
        term(A, One, R01, MuNu, R00, LinearA),
        term(AN, Nu, R01, Mu, R00, LinearA),
        term(AN, One, R01, MuNu, R01, LinearA),
        term(AN, Nu, R01, Mu, R01, LinearA),
        term(AN, One, R01, MuNu, R10, LinearA),
        term(A, Nu, R01, Mu, R10, LinearA),
        term(A, One, R01, MuNu, R11, LinearA),
        term(A, Nu, R01, Mu, R11, LinearA),
        term(A2, One, R00, One, R00, QuadraticA),
        term(A2N, One, R00, One, R01, QuadraticA),
        term(A2N, One, R00, One, R10, QuadraticA),
        term(A2, One, R00, One, R11, QuadraticA),
        term(A2N, One, R01, One, R00, QuadraticA),
        term(A2, One, R01, One, R01, QuadraticA),
        term(A2, One, R01, One, R10, QuadraticA),
        term(A2N, One, R01, One, R11, QuadraticA),
    ]
}

/// Spectrum of the cross-correlation as 16 pointwise spectral products,
/// for anticommuting roots. Identical to [`perpendicular_roots_terms`]
/// with the f-side reflections composed with (1,1), which is how the
/// correlation reduces to a convolution of the doubly reflected signal.
pub fn correlation_spectrum_terms() -> Vec<Term> {
    const Q: Weight = Weight::of(0.25);
    const QN: Weight = Weight::of(-0.25);
    vec![
        term(Q, One, R11, One, R00, Main),
        term(Q, One, R11, One, R01, Main),
        term(Q, One, R11, One, R10, Main),
        term(Q, One, R11, One, R11, Main),
        term(QN, Nu, R11, Nu, R00, Main),
        term(Q, Nu, R11, Nu, R01, Main),
        term(QN, Nu, R11, Nu, R10, Main),
        term(Q, Nu, R11, Nu, R11, Main),
        term(QN, Mu, R10, Mu, R00, Main),
        term(QN, Mu, R10, Mu, R01, Main),
        term(Q, Mu, R10, Mu, R10, Main),
        term(Q, Mu, R10, Mu, R11, Main),
        term(Q, NuMu, R10, MuNu, R00, Main),
        term(QN, NuMu, R10, MuNu, R01, Main),
        term(QN, NuMu, R10, MuNu, R10, Main),
        term(Q, NuMu, R10, MuNu, R11, Main),
    ]
}
