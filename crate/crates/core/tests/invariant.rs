mod common;

use common::{conjugate_diagonal, eigen_unit_projector, mat, weight_product};
use margulis_core::invariant::{
    deflated_poly, deflated_poly_exact, invariant_form, invariant_in_frame, invariant_q,
    margulis_invariant, margulis_invariant_via_projector, shifted_char_poly,
    shifted_char_poly_exact, unit_projector, AffineElement, PolynomialProjector, Tolerances,
};
use margulis_core::linalg::rational::ratio;
use margulis_core::liegroup::{adjoint_rep, jordan_decompose, pi0};
use margulis_core::spectrum::sampling::{
    random_group_element, random_loxodromic_affine, random_ma, random_velement, rng_from_seed,
    LoxodromicSampler,
};
use margulis_core::{Error, GroupElement, ModelSpec, VElement};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::Rng;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn diag(d: &[f64]) -> GroupElement {
    GroupElement::diagonal(d).unwrap()
}

fn affine(g: GroupElement, x: VElement) -> AffineElement {
    AffineElement::new(g, x).unwrap()
}

fn coboundary_translation(g: &GroupElement, w: &VElement) -> VElement {
    w - &g.act(w)
}

#[test]
fn affine_product_law() {
    let g1 = diag(&[2.0, 0.5]);
    let g2 = diag(&[3.0, 1.0 / 3.0]);
    let e = VElement::e(2, 0, 1);
    let h = VElement::h(2, 0);
    let p = affine(g1.clone(), e.clone()).compose(&affine(g2, h.clone()));
    assert!((p.linear().mat() - diag(&[6.0, 1.0 / 6.0]).mat()).norm() < 1e-15);
    assert!((p.translation() - &(&e + &h)).norm() < 1e-15);
    let a = affine(g1, e);
    let back = a.compose(&a.inverse());
    assert!(back.distance(&AffineElement::identity(2)) < 1e-15);
}

#[test]
fn shifted_char_poly_examples() {
    for n in 2..=3 {
        let cp = shifted_char_poly(&GroupElement::identity(n));
        let mut expected = vec![0.0; n * n];
        expected[n * n - 1] = 1.0;
        assert_eq!(cp.coeffs(), &expected[..]);
    }
    let cp = shifted_char_poly(&diag(&[2.0, 0.5]));
    let expected = [0.0, -2.25, 2.25, 1.0];
    for (a, b) in cp.coeffs().iter().zip(expected) {
        assert!((a - b).abs() < 1e-14);
    }
}

#[test]
fn exact_spot_check_n2() {
    let cp = shifted_char_poly_exact(&diag(&[2.0, 0.5]));
    assert_eq!(cp.coeffs(), &[ratio(0, 1), ratio(-9, 4), ratio(9, 4), ratio(1, 1)]);
    let (p, at_zero) = deflated_poly_exact(&diag(&[2.0, 0.5])).unwrap();
    assert_eq!(p.coeffs(), &[ratio(-9, 4), ratio(9, 4), ratio(1, 1)]);
    assert_eq!(at_zero, ratio(-9, 4));
}

#[test]
fn weight_product_oracle_n3() {
    let d = [4.0, 1.0, 0.25];
    let oracle = weight_product(&d);
    assert_eq!(oracle, -71.19140625);
    let (_, exact) = deflated_poly_exact(&diag(&d)).unwrap();
    assert_eq!(exact, ratio(-18225, 256));
    let (_, at_zero) = deflated_poly(&diag(&d), &tol()).unwrap();
    assert!((at_zero - oracle).abs() <= 1e-12);
}

#[test]
fn weight_product_matches_on_random_diagonals() {
    let mut rng = rng_from_seed(31);
    let sampler = LoxodromicSampler::default();
    for n in 2..=4 {
        for _ in 0..20 {
            let c = sampler.sample_diagonal(&mut rng, n);
            let d: Vec<f64> = c.mat().diagonal().iter().copied().collect();
            let (_, at_zero) = deflated_poly(&c, &tol()).unwrap();
            let oracle = weight_product(&d);
            assert!((at_zero - oracle).abs() <= 1e-10 * oracle.abs(), "{at_zero} vs {oracle}");
        }
    }
}

#[test]
fn deflated_poly_n2() {
    let (p, at_zero) = deflated_poly(&diag(&[2.0, 0.5]), &tol()).unwrap();
    assert_eq!(p.degree(), 2);
    for (a, b) in p.coeffs().iter().zip([-2.25, 2.25, 1.0]) {
        assert!((a - b).abs() < 1e-14);
    }
    assert!((at_zero + 2.25).abs() < 1e-14);
}

#[test]
fn deflated_poly_rejects_non_loxodromic() {
    let rot = GroupElement::new(mat(&[&[0.0, -1.0], &[1.0, 0.0]])).unwrap();
    assert!(matches!(deflated_poly(&rot, &tol()), Err(Error::NotLoxodromic { .. })));
    assert!(matches!(
        unit_projector(&GroupElement::identity(3), &tol()),
        Err(Error::NotLoxodromic { .. })
    ));
}

#[test]
fn similarity_invariance_of_polynomials() {
    let mut rng = rng_from_seed(32);
    for n in 2..=4 {
        let g = LoxodromicSampler::default().sample(&mut rng, n);
        let h = random_group_element(&mut rng, n);
        let conj = &(&h * &g) * &h.inverse();
        let a = shifted_char_poly(&g);
        let b = shifted_char_poly(&conj);
        let scale = a.max_abs_coeff();
        for k in 0..=a.degree() {
            assert!((a.coeff(k) - b.coeff(k)).abs() <= 1e-9 * scale);
        }
        let (_, p0) = deflated_poly(&g, &tol()).unwrap();
        let (_, q0) = deflated_poly(&conj, &tol()).unwrap();
        assert!((p0 - q0).abs() <= 1e-9 * p0.abs());
    }
}

#[test]
fn projector_of_diagonal_element() {
    let pi = unit_projector(&diag(&[2.0, 0.5]), &tol()).unwrap();
    let expected = DMatrix::from_diagonal(&DVector::from_vec(vec![0.0, 0.0, 1.0]));
    assert!((pi - expected).norm() < 1e-14);
}

#[test]
fn projector_is_equivariant() {
    let mut rng = rng_from_seed(33);
    for n in 2..=4 {
        let g = LoxodromicSampler::default().sample(&mut rng, n);
        let h = random_group_element(&mut rng, n);
        let conj = &(&h * &g) * &h.inverse();
        let lhs = unit_projector(&conj, &tol()).unwrap();
        let adh = adjoint_rep(&h);
        let rhs = &adh * unit_projector(&g, &tol()).unwrap() * adjoint_rep(&h.inverse());
        assert!((&lhs - &rhs).norm() <= 1e-8 * (1.0 + adh.norm().powi(2)));
    }
}

#[test]
fn projector_matches_eigendecomposition() {
    let mut rng = rng_from_seed(34);
    for n in 2..=4 {
        for _ in 0..10 {
            let g = LoxodromicSampler::default().sample(&mut rng, n);
            let pi = unit_projector(&g, &tol()).unwrap();
            let oracle = eigen_unit_projector(&adjoint_rep(&g));
            assert!((&pi - &oracle).norm() <= 1e-8 * (1.0 + oracle.norm()));
        }
    }
}

#[test]
fn projector_fixes_frame_zero_weight_vectors() {
    let mut rng = rng_from_seed(35);
    for n in 2..=4 {
        let (g, h, _) = LoxodromicSampler::default().sample_with_frame(&mut rng, n);
        let m = DVector::from_fn(n - 1, |_, _| rng.random_range(-1.0..=1.0));
        let x = h.act(&margulis_core::liegroup::from_zero_weight(n, &m));
        let pi = unit_projector(&g, &tol()).unwrap();
        assert!((pi * x.coords() - x.coords()).norm() <= 1e-9 * x.norm());
    }
}

#[test]
fn invariant_examples_n2() {
    let g = diag(&[2.0, 0.5]);
    let h = VElement::h(2, 0);
    let e = VElement::e(2, 0, 1);
    let cases = [(&h + &e, 1.0), (e.clone(), 0.0), (h.clone(), 1.0)];
    for (x, expected) in cases {
        let a = affine(g.clone(), x);
        let m_a = margulis_invariant(&a, &tol()).unwrap();
        let m_b = margulis_invariant_via_projector(&a, &tol()).unwrap();
        assert!((m_a[0] - expected).abs() < 1e-14);
        assert!((m_b[0] - expected).abs() < 1e-14);
    }
    let q = invariant_q(&affine(g, &h + &e), &tol()).unwrap();
    assert!((q - 8.0).abs() < 1e-13);
}

#[test]
fn invariant_oracle_from_full_eigendecomposition() {
    // M(g, X) is the V^0 part of X in the frame; pulling back by the frame
    // and applying the eigen-decomposition projector must give the same.
    let mut rng = rng_from_seed(36);
    for n in 2..=4 {
        let a = random_loxodromic_affine(&mut rng, n);
        let frame = jordan_decompose(a.linear(), 1e-6).unwrap();
        let pi = eigen_unit_projector(&adjoint_rep(a.linear()));
        let projected = VElement::from_coords(n, &(pi * a.translation().coords()));
        let oracle = pi0(&frame.h().act_inverse(&projected));
        let m = margulis_invariant(&a, &tol()).unwrap();
        assert!((m - oracle).amax() <= 1e-8);
    }
}

#[test]
fn coboundaries_have_zero_invariant() {
    let mut rng = rng_from_seed(37);
    for n in 2..=4 {
        let g = LoxodromicSampler::default().sample(&mut rng, n);
        let w = random_velement(&mut rng, n, 1.0);
        let a = affine(g.clone(), coboundary_translation(&g, &w));
        assert!(margulis_invariant(&a, &tol()).unwrap().amax() < 1e-12);
        assert!(margulis_invariant_via_projector(&a, &tol()).unwrap().amax() < 1e-12);
        assert!(invariant_q(&a, &tol()).unwrap().abs() < 1e-20);
    }
}

#[test]
fn invariants_are_conjugation_invariant() {
    let mut rng = rng_from_seed(38);
    for n in 2..=4 {
        for _ in 0..20 {
            let a = random_loxodromic_affine(&mut rng, n);
            let c = affine(random_group_element(&mut rng, n), random_velement(&mut rng, n, 1.0));
            let b = a.conjugated_by(&c);
            let m_a = margulis_invariant(&a, &tol()).unwrap();
            let m_b = margulis_invariant(&b, &tol()).unwrap();
            assert!((&m_a - &m_b).amax() <= 1e-8 * (1.0 + m_a.amax()));
            let q_a = invariant_q(&a, &tol()).unwrap();
            let q_b = invariant_q(&b, &tol()).unwrap();
            assert!((q_a - q_b).abs() <= 1e-8 * (1.0 + q_a.abs()));
        }
    }
}

#[test]
fn invariant_form_examples() {
    let b2 = invariant_form(&ModelSpec::adjoint_sl(2).unwrap());
    let e = VElement::e(2, 0, 1);
    let f = VElement::e(2, 1, 0);
    let h = VElement::h(2, 0);
    assert_eq!(b2.pair(&h, &h), 8.0);
    assert_eq!(b2.pair(&e, &f), 4.0);
    assert_eq!(b2.pair(&e, &e), 0.0);
    assert_eq!(b2.gram(), &b2.gram().transpose());

    let b3 = invariant_form(&ModelSpec::adjoint_sl(3).unwrap());
    assert_eq!(b3.zero_weight_block(), mat(&[&[12.0, -6.0], &[-6.0, 12.0]]));
}

#[test]
fn invariant_form_is_ad_invariant() {
    let mut rng = rng_from_seed(39);
    for n in 2..=4 {
        let form = invariant_form(&ModelSpec::adjoint_sl(n).unwrap());
        for _ in 0..100 {
            let g = random_group_element(&mut rng, n);
            let r = form.invariance_residual(&g);
            assert!(r <= 1e-9, "residual {r:e}");
        }
        let det = form.zero_weight_block().determinant();
        assert!(det.abs() > 1.0, "zero-weight block determinant {det}");
    }
}

#[test]
fn ma_elements_fix_their_invariant_space() {
    // P_c(R_e - Ad_c) X = P_c(0) pi0(X) for diagonal c
    let mut rng = rng_from_seed(40);
    for n in 2..=4 {
        let mut tries = 0;
        while tries < 20 {
            let c = random_ma(&mut rng, n);
            if !margulis_core::liegroup::is_loxodromic(&c, 1e-6) {
                continue;
            }
            tries += 1;
            let x = random_velement(&mut rng, n, 1.0);
            let proj = PolynomialProjector::new(&c, &tol()).unwrap();
            let lhs = VElement::from_coords(n, &proj.apply_unnormalized(&x).map(|v| v.to_f64()));
            let expected = margulis_core::liegroup::from_zero_weight(n, &pi0(&x)).scale(proj.at_zero());
            assert!((&lhs - &expected).norm() <= 1e-9 * (expected.norm() + proj.at_zero().abs()));
        }
    }
}

#[test]
fn annihilation_identity() {
    let mut rng = rng_from_seed(41);
    for n in 2..=4 {
        for _ in 0..200 {
            let g = LoxodromicSampler::default().sample(&mut rng, n);
            let proj = PolynomialProjector::new(&g, &tol()).unwrap();
            let bound = 1e-8 * adjoint_rep(&g).norm().powi((n * n - 1) as i32);
            assert!(proj.annihilator().norm() <= bound);
        }
    }
}

#[test]
fn projector_laws() {
    let mut rng = rng_from_seed(42);
    for n in 2..=4 {
        for _ in 0..200 {
            let g = LoxodromicSampler::default().sample(&mut rng, n);
            let pi = unit_projector(&g, &tol()).unwrap();
            let ad = adjoint_rep(&g);
            assert!((&pi * &pi - &pi).norm() <= 1e-8);
            assert!((pi.trace() - (n - 1) as f64).abs() <= 1e-8);
            assert!((&pi * &ad - &ad * &pi).norm() <= 1e-8);
        }
    }
}

#[test]
fn algorithms_agree() {
    let mut rng = rng_from_seed(43);
    for i in 0..500 {
        let n = 2 + i % 3;
        let a = random_loxodromic_affine(&mut rng, n);
        let m_a = margulis_invariant(&a, &tol()).unwrap();
        let m_b = margulis_invariant_via_projector(&a, &tol()).unwrap();
        let scale = m_a.amax().max(a.translation().norm());
        assert!((&m_a - &m_b).amax() <= 1e-8 * scale);
    }
}

#[test]
fn frame_free_q_matches_framed_value() {
    let mut rng = rng_from_seed(44);
    for n in 2..=4 {
        let form = invariant_form(&ModelSpec::adjoint_sl(n).unwrap());
        for _ in 0..100 {
            let a = random_loxodromic_affine(&mut rng, n);
            let framed = form.zero_weight_quadratic(&margulis_invariant(&a, &tol()).unwrap());
            let free = invariant_q(&a, &tol()).unwrap();
            assert!((free - framed).abs() <= 1e-8 * framed.abs().max(a.translation().norm().powi(2)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn frame_ambiguity(n in 2usize..=4, seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let a = random_loxodromic_affine(&mut rng, n);
        let frame = jordan_decompose(a.linear(), 1e-6).unwrap();
        let reference = invariant_in_frame(&frame, a.translation());
        for _ in 0..5 {
            let scales: Vec<f64> = (0..n)
                .map(|_| {
                    let s: f64 = rng.random_range(0.2..=5.0);
                    if rng.random::<bool>() { s } else { -s }
                })
                .collect();
            let other = frame.rescaled(a.linear(), &scales).unwrap();
            let m = invariant_in_frame(&other, a.translation());
            prop_assert!((&m - &reference).amax() <= 1e-9);
        }
    }

    #[test]
    fn displacement(n in 2usize..=4, seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let a = random_loxodromic_affine(&mut rng, n);
        let y = random_velement(&mut rng, n, 1.0);
        let frame = jordan_decompose(a.linear(), 1e-6).unwrap();
        let moved = &a.act(&y) - &y;
        let lhs = pi0(&frame.h().act_inverse(&moved));
        let m = margulis_invariant(&a, &tol()).unwrap();
        prop_assert!((lhs - m).amax() <= 1e-9);
    }

    #[test]
    fn conjugating_by_diagonal_frames(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let u = DMatrix::from_fn(2, 2, |i, j| if i == j { 1.0 } else { rng.random_range(-0.5..=0.5) });
        let g = conjugate_diagonal(&u, &[2.0, 0.5]);
        let x = random_velement(&mut rng, 2, 1.0);
        let m = margulis_invariant(&affine(g, x.clone()), &tol()).unwrap();
        let back = VElement::project(u.clone().try_inverse().unwrap() * x.mat() * &u);
        prop_assert!((m[0] - pi0(&back)[0]).abs() <= 1e-9 * (1.0 + x.norm()));
    }
}
