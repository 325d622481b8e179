//! Convolution products and their expansions against brute-force oracles
//! and against each other.

use qconv_core::expansion;
use qconv_core::sample::Sampler;
use qconv_core::{
    classical_convolve, classical_via_mustard_equal, classical_via_mustard_general,
    classical_via_mustard_perp, convolution_spectrum, correlation_spectrum, cross_correlate,
    dft_left, mustard_convolve, mustard_via_classical, MustardEval, QField, Quaternion,
    ReflectionIndex, Root, RootPair,
};
use qconv_oracle as oracle;

#[test]
fn classical_matches_four_term_oracle_on_2x2() {
    let mut s = Sampler::new(201);
    for _ in 0..20 {
        let f = s.field(2, 2);
        let g = s.field(2, 2);
        let got = classical_convolve(&f, &g).unwrap();
        assert!(got.max_abs_diff(&oracle::convolve_double_sum(&f, &g)) <= 1e-13);
    }
}

#[test]
fn correlation_matches_oracle_and_reflected_convolution() {
    let mut s = Sampler::new(202);
    for _ in 0..10 {
        let f = s.field(4, 4);
        let g = s.field(4, 4);
        let got = cross_correlate(&f, &g).unwrap();
        assert!(got.max_abs_diff(&oracle::correlate_double_sum(&f, &g)) <= 1e-13);
        let via = classical_convolve(&f.reflect(ReflectionIndex::BOTH), &g).unwrap();
        assert!(got.max_abs_diff(&via) <= 1e-13);
    }
}

#[test]
fn mustard_equals_its_classical_expansion_on_8x8() {
    let mut s = Sampler::new(203);
    for _ in 0..5 {
        let f = s.field(8, 8);
        let g = s.field(8, 8);
        let roots = s.pair();
        let direct = mustard_convolve(&f, &g, roots).unwrap();
        let expanded = mustard_via_classical(&f, &g, roots).unwrap();
        assert!(direct.max_abs_diff(&expanded) <= 1e-9);
    }
}

#[test]
fn equal_roots_expansion_reproduces_classical() {
    let mut s = Sampler::new(204);
    for _ in 0..5 {
        let f = s.field(8, 8);
        let g = s.field(8, 8);
        let mu = s.root();
        let got = classical_via_mustard_equal(&f, &g, mu).unwrap();
        let want = classical_convolve(&f, &g).unwrap();
        assert!(got.max_abs_diff(&want) <= 1e-9);
    }
}

#[test]
fn equal_roots_expansion_with_delta_returns_g() {
    let mut s = Sampler::new(205);
    let g = s.field(8, 8);
    let got = classical_via_mustard_equal(&QField::delta(8, 8), &g, s.root()).unwrap();
    assert!(got.max_abs_diff(&g) <= 1e-10);
}

#[test]
fn equal_roots_term_structure_for_real_fields() {
    // For real inputs the plain and mu-coefficient terms contribute
    // identically on the unreflected side and cancel pairwise on the
    // doubly reflected side.
    let mut s = Sampler::new(206);
    let f = s.field(4, 4).map(|q| Quaternion::real(q.w));
    let g = s.field(4, 4).map(|q| Quaternion::real(q.w));
    let pair = RootPair::equal(s.root());
    let terms = expansion::equal_roots_terms();
    let a = pair.anticommutator();

    let contribution = |idx: usize| {
        let t = &terms[idx];
        let hf = f.reflect(t.f_refl).left_mul(t.f_word.eval(&pair));
        let hg = g.reflect(t.g_refl).left_mul(t.g_word.eval(&pair));
        mustard_convolve(&hf, &hg, pair)
            .unwrap()
            .scaled(t.weight.value(a))
    };

    let plain = contribution(0);
    let mu_term = contribution(1);
    assert!(plain.max_abs_diff(&mu_term) <= 1e-10);

    let reflected = contribution(2);
    let mu_reflected = contribution(3);
    assert!(reflected.max_abs_diff(&mu_reflected.scaled(-1.0)) <= 1e-10);

    let mut total = plain;
    total.accumulate(&mu_term, 1.0);
    total.accumulate(&reflected, 1.0);
    total.accumulate(&mu_reflected, 1.0);
    assert!(total.max_abs_diff(&oracle::convolve_double_sum(&f, &g)) <= 1e-10);
}

#[test]
fn perpendicular_expansion_reproduces_classical() {
    let mut s = Sampler::new(207);
    for _ in 0..5 {
        let f = s.field(8, 8);
        let g = s.field(8, 8);
        let roots = RootPair::new(Root::I, Root::J);
        let got = classical_via_mustard_perp(&f, &g, roots).unwrap();
        let want = classical_convolve(&f, &g).unwrap();
        assert!(got.max_abs_diff(&want) <= 1e-9);
    }
}

#[test]
fn general_expansion_reproduces_classical_across_anticommutators() {
    let mut s = Sampler::new(208);
    for &a in &[0.0, 0.5, -1.0, 1.99] {
        let f = s.field(8, 8);
        let g = s.field(8, 8);
        let roots = s.pair_with_anticommutator(a);
        let got = classical_via_mustard_general(&f, &g, roots).unwrap();
        let want = classical_convolve(&f, &g).unwrap();
        assert!(got.max_abs_diff(&want) <= 1e-9, "a = {a}");
    }
}

#[test]
fn general_reduces_to_perpendicular_when_a_vanishes() {
    let mut s = Sampler::new(209);
    for _ in 0..5 {
        let f = s.field(8, 8);
        let g = s.field(8, 8);
        let roots = s.pair_with_anticommutator(0.0);
        let general = classical_via_mustard_general(&f, &g, roots).unwrap();
        let perp = classical_via_mustard_perp(&f, &g, roots).unwrap();
        assert!(general.max_abs_diff(&perp) <= 1e-12);
    }
}

#[test]
fn per_term_and_cached_modes_agree() {
    let mut s = Sampler::new(210);
    let f = s.field(8, 8);
    let g = s.field(8, 8);
    let roots = s.pair();
    let cached = qconv_core::conv::classical_via_mustard_general_with(
        &f,
        &g,
        roots,
        MustardEval::CachedSpectrum,
    )
    .unwrap();
    let naive =
        qconv_core::conv::classical_via_mustard_general_with(&f, &g, roots, MustardEval::PerTerm)
            .unwrap();
    assert!(cached.max_abs_diff(&naive) <= 1e-10);
}

#[test]
fn convolution_spectrum_matches_transformed_convolution() {
    let mut s = Sampler::new(211);
    for _ in 0..5 {
        let f = s.field(8, 8);
        let g = s.field(8, 8);
        let roots = RootPair::new(Root::I, Root::K);
        let got = convolution_spectrum(&f, &g, roots).unwrap();
        let want = dft_left(&classical_convolve(&f, &g).unwrap(), roots);
        assert!(got.max_abs_diff(&want) <= 1e-9);
    }
}

#[test]
fn convolution_spectrum_with_symmetric_real_input() {
    // f real and even in both axes; the identity must hold unchanged.
    let mut s = Sampler::new(212);
    let h = s.field(8, 8).map(|q| Quaternion::real(q.w));
    let mut f = QField::zeros(8, 8);
    for phi in ReflectionIndex::all() {
        f.accumulate(&h.reflect(phi), 0.25);
    }
    assert!(f.max_abs_diff(&f.reflect(ReflectionIndex::BOTH)) <= 1e-15);
    let g = s.field(8, 8);
    let roots = s.perpendicular_pair();
    let got = convolution_spectrum(&f, &g, roots).unwrap();
    let want = dft_left(&classical_convolve(&f, &g).unwrap(), roots);
    assert!(got.max_abs_diff(&want) <= 1e-9);
}

#[test]
fn correlation_spectrum_matches_transformed_correlation() {
    let mut s = Sampler::new(213);
    for _ in 0..5 {
        let f = s.field(8, 8);
        let g = s.field(8, 8);
        let roots = RootPair::new(Root::J, Root::K);
        let got = correlation_spectrum(&f, &g, roots).unwrap();
        let want = dft_left(&cross_correlate(&f, &g).unwrap(), roots);
        assert!(got.max_abs_diff(&want) <= 1e-9);
    }
}

#[test]
fn correlation_spectrum_of_delta_is_kernel_spectrum() {
    let mut s = Sampler::new(214);
    let g = s.field(8, 8);
    let roots = s.perpendicular_pair();
    let got = correlation_spectrum(&QField::delta(8, 8), &g, roots).unwrap();
    assert!(got.max_abs_diff(&dft_left(&g, roots)) <= 1e-10);
}
