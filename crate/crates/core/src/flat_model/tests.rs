use num_traits::Zero;
use proptest::prelude::*;

use super::*;
use crate::algebra::{gaussian, rat, rat_frac, GaussianRational};
use crate::error::Error;
use crate::lefschetz::Lefschetz;
use crate::multivector::{Blade, Form};
use crate::report::Status;
use crate::sampling::FormSampler;
use crate::symmetry::{FiniteGroup, GroupElement, Quaternion, UnitQuaternion};

fn unit_freq(dim: usize, hot: &[usize]) -> Freq {
    let mut v = vec![0; dim];
    for &h in hot {
        v[h] = 1;
    }
    v
}

fn one_mode(q: usize, xi: Freq, blade: &[usize], c: GaussianRational) -> FourierForm {
    let b = Blade::from_indices(blade).unwrap();
    FourierForm::from_terms(q, b.grade(), 1, [(xi, b, c)]).unwrap()
}

#[test]
fn constant_forms_are_closed_and_coclosed() {
    let mut s = FormSampler::new(3);
    let a = FourierForm::constant(&s.form(1, 2), 1);
    assert!(!a.is_zero());
    assert!(a.d().unwrap().is_zero());
    assert!(a.delta().unwrap().is_zero());
    assert!(a.laplacian().unwrap().is_zero());
}

#[test]
fn derivative_convention() {
    let xi = unit_freq(4, &[0]);
    let a = one_mode(1, xi.clone(), &[], gaussian(1, 0));
    let da = a.d().unwrap();
    assert_eq!(da, one_mode(1, xi.clone(), &[0], gaussian(0, 1)));
    // δ(i e_ξ e_0) = e_ξ
    assert_eq!(da.delta().unwrap(), a);
}

#[test]
fn laplacian_multiplier_example() {
    let xi = unit_freq(8, &[0, 1]);
    let a = one_mode(2, xi, &[2, 5], gaussian(3, -1));
    assert_eq!(a.laplacian().unwrap(), a.scale(&gaussian(2, 0)));
}

#[test]
fn construction_validates() {
    let b = Blade::from_indices(&[0]).unwrap();
    assert!(FourierForm::from_terms(1, 1, 1, [(vec![2, 0, 0, 0], b, gaussian(1, 0))]).is_err());
    assert!(FourierForm::from_terms(1, 1, 1, [(vec![0, 0, 0], b, gaussian(1, 0))]).is_err());
    assert!(FourierForm::from_terms(1, 2, 1, [(vec![0; 4], b, gaussian(1, 0))]).is_err());
    let f = FourierForm::from_terms(
        1,
        1,
        1,
        [(vec![0; 4], b, gaussian(1, 2)), (vec![0; 4], b, gaussian(-1, -2))],
    )
    .unwrap();
    assert!(f.is_zero());
    let top = FourierForm::zero(1, 4, 0).unwrap();
    assert!(matches!(top.d(), Err(Error::DegreeOverflow { .. })));
    let bottom = FourierForm::zero(1, 0, 0).unwrap();
    assert!(matches!(bottom.delta(), Err(Error::DegreeUnderflow { .. })));
}

#[test]
fn frequency_box_and_certificate_modes() {
    assert_eq!(frequency_box(4, 1).len(), 81);
    assert_eq!(frequency_box(2, 2).len(), 25);
    assert_eq!(quadratic_certificate_modes(8).len(), 1 + 8 + 28);
}

#[test]
fn sampled_forms_respect_the_box() {
    let mut s = FormSampler::new(11);
    let f = FourierForm::sample(&mut s, 2, 3, 1).unwrap();
    assert_eq!(f.len(), 20);
    assert!(f
        .terms()
        .all(|(xi, b, c)| { xi.iter().all(|x| x.abs() <= 1) && b.grade() == 3 && !c.is_zero() }));
    let tiny = FourierForm::sample(&mut s, 1, 4, 0).unwrap();
    assert_eq!(tiny.len(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn d_and_delta_square_to_zero(seed in any::<u64>(), q in 1usize..=2) {
        let mut s = FormSampler::new(seed);
        let p = s.degree(4 * q - 2);
        let a = FourierForm::sample(&mut s, q, p, 1).unwrap();
        prop_assert!(a.d().unwrap().d().unwrap().is_zero());
        let b = FourierForm::sample(&mut s, q, p + 2, 1).unwrap();
        prop_assert!(b.delta().unwrap().delta().unwrap().is_zero());
    }

    #[test]
    fn delta_is_adjoint_to_d(seed in any::<u64>(), q in 1usize..=2) {
        let mut s = FormSampler::new(seed);
        let p = s.degree(4 * q - 1);
        let a = FourierForm::sample(&mut s, q, p, 1).unwrap();
        let b = FourierForm::sample(&mut s, q, p + 1, 1).unwrap().add(&a.d().unwrap()).unwrap();
        prop_assert_eq!(a.d().unwrap().pairing(&b).unwrap(), a.pairing(&b.delta().unwrap()).unwrap());
    }

    #[test]
    fn laplacian_is_frequency_multiplier(seed in any::<u64>()) {
        let mut s = FormSampler::new(seed);
        let p = s.degree(8);
        let a = FourierForm::sample(&mut s, 2, p, 2).unwrap();
        prop_assert_eq!(a.laplacian().unwrap(), a.frequency_multiplier());
    }
}

#[test]
fn omega_wedge_commutes_with_laplacian_on_a_mode() {
    let lef = Lefschetz::new(2).unwrap();
    let omega = lef.kraines().omega();
    let xi = unit_freq(8, &[1, 4, 6]);
    let a = one_mode(2, xi, &[3], gaussian(2, 5));
    let lhs = a.wedge_constant(omega).unwrap().laplacian().unwrap();
    let rhs = a.laplacian().unwrap().wedge_constant(omega).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(lhs, a.wedge_constant(omega).unwrap().scale(&gaussian(3, 0)));
    assert!(!lhs.is_zero());
}

#[test]
fn apply_blade_map_checks_shape() {
    let a = FourierForm::zero(1, 2, 1).unwrap();
    let m = crate::algebra::RatMatrix::identity(5);
    assert!(a.apply_blade_map(&m, 2).is_err());
}

#[test]
fn hodge_checks_pass_for_q1() {
    let mut s = FormSampler::new(7);
    for c in [
        d_squared(&mut s, 1, 1, 30).unwrap(),
        delta_squared(&mut s, 1, 1, 30).unwrap(),
        adjointness(&mut s, 1, 1, 30).unwrap(),
        weitzenbock(&mut s, 1, 1, 10).unwrap(),
        harmonic_dimensions(1, 1).unwrap(),
    ] {
        assert_eq!(c.status, Status::Pass, "{c:?}");
    }
    let h = harmonic_dimensions(1, 1).unwrap();
    assert_eq!(h.witness["strategy"], "exhaustive");
    assert_eq!(h.witness["kernel_dims"], serde_json::json!([1, 4, 6, 4, 1]));
}

#[test]
fn harmonic_dimensions_q2_use_certificate_modes() {
    let h = harmonic_dimensions(2, 1).unwrap();
    assert_eq!(h.status, Status::Pass, "{h:?}");
    assert_eq!(h.witness["strategy"], "quadratic_certificate");
}

#[test]
fn mode_matrix_is_scalar() {
    let xi = vec![1, -1, 0, 1];
    let m = laplacian_mode_matrix(1, &xi, 2, 1).unwrap().unwrap();
    assert_eq!(m, crate::algebra::RatMatrix::identity(6).scale(&rat(3)));
    assert_eq!(laplacian_mode_scalar(1, &xi, 2, 1).unwrap(), Some(rat(3)));
    assert_eq!(laplacian_mode_scalar(1, &vec![0; 4], 4, 1).unwrap(), Some(rat(0)));
}

#[test]
fn commutation_for_every_selector() {
    let lef = Lefschetz::new(1).unwrap();
    let g = FiniteGroup::minus_one(1).unwrap();
    let mut s = FormSampler::new(5);
    for sel in [
        WSelector::Full,
        WSelector::EffectiveKernel,
        WSelector::LImage,
        WSelector::Invariants(&g),
    ] {
        let c = chern_commutation(&mut s, &lef, sel, 1, 50).unwrap();
        assert_eq!(c.status, Status::Pass, "{c:?}");
    }
}

#[test]
fn effective_and_image_projectors_are_complementary() {
    let lef = Lefschetz::new(2).unwrap();
    for p in 4..=8 {
        let dim = lef.basis(p).len();
        let e = WSelector::EffectiveKernel
            .projector(&lef, p)
            .unwrap()
            .to_matrix(dim);
        let l = WSelector::LImage.projector(&lef, p).unwrap().to_matrix(dim);
        assert_eq!(e.mul(&e).unwrap(), e);
        assert!(e.is_symmetric());
        assert_eq!(e.add(&l).unwrap(), crate::algebra::RatMatrix::identity(dim));
    }
}

#[test]
fn lichnerowicz_q2_degree_one() {
    let lef = Lefschetz::new(2).unwrap();
    let mut s = FormSampler::new(9);
    let c = lichnerowicz(&mut s, &lef, 1, 30, Some(1)).unwrap();
    assert_eq!(c.status, Status::Pass, "{c:?}");
    let q1 = Lefschetz::new(1).unwrap();
    assert!(lichnerowicz(&mut s, &q1, 1, 1, Some(1)).is_err());
}

#[test]
fn basic_betti_numbers_are_binomials() {
    assert_eq!(basic_betti_numbers(1), vec![1, 4, 6, 4, 1]);
    assert_eq!(basic_betti_numbers(2)[4], 70);
    let model = FlatModel::new(FlatFoliationSpec { leaf_dim: 1, q: 1 }).unwrap();
    let r = model.betti_report();
    assert!(r.passed());
    assert!(matches!(
        r.certificates[0],
        Certificate::Taut {
            top_degree: 4,
            top_betti: 1
        }
    ));
}

#[test]
fn injectivity_certificates() {
    let q2 = FlatModel::new(FlatFoliationSpec { leaf_dim: 0, q: 2 }).unwrap();
    let c0 = q2.l_injectivity(0).unwrap();
    assert!(matches!(
        c0,
        Certificate::LInjectivity {
            rank: 1,
            dim: 1,
            injective: true,
            ..
        }
    ));
    let c1 = q2.l_injectivity(1).unwrap();
    assert!(matches!(
        c1,
        Certificate::LInjectivity {
            rank: 8,
            dim: 8,
            injective: true,
            ..
        }
    ));
    // k = 4 ≥ q: reported, not asserted.
    let c4 = q2.l_injectivity(4).unwrap();
    assert!(matches!(c4, Certificate::LInjectivity { asserted: false, .. }));
    assert!(c4.holds());
    assert!(q2.l_injectivity(5).is_err());

    let q3 = FlatModel::new(FlatFoliationSpec { leaf_dim: 2, q: 3 }).unwrap();
    assert!(matches!(
        q3.l_injectivity(2).unwrap(),
        Certificate::LInjectivity {
            injective: true,
            asserted: true,
            ..
        }
    ));
}

#[test]
fn decomposition_certificates() {
    let q3 = FlatModel::new(FlatFoliationSpec { leaf_dim: 1, q: 3 }).unwrap();
    let c = q3.decomposition(4).unwrap();
    assert!(c.holds(), "{c:?}");
    assert!(matches!(
        c,
        Certificate::Decomposition {
            basis_size: 495,
            dim_effective: 494,
            image_rank: 1,
            ..
        }
    ));
    assert!(q3.decomposition(2).unwrap().holds());
    let q2 = FlatModel::new(FlatFoliationSpec { leaf_dim: 1, q: 2 }).unwrap();
    assert!(q2.decomposition(4).unwrap().holds());
    assert!(q2.decomposition(5).unwrap().holds());
    assert!(matches!(
        q2.decomposition(6),
        Err(Error::OutOfTheoremRange { .. })
    ));
}

#[test]
fn harmonic_decomposition_checks() {
    let q2 = FlatModel::new(FlatFoliationSpec { leaf_dim: 1, q: 2 }).unwrap();
    for k in [2, 5] {
        let c = harmonic_decomposition(&q2, k, 1).unwrap();
        assert_eq!(c.status, Status::Pass, "{c:?}");
    }
    assert!(harmonic_decomposition(&q2, 6, 1).is_err());
}

#[test]
fn kraines_chain_ranges() {
    let q3 = basic_betti_numbers(3);
    let chains = kraines_inequalities(&q3, 3);
    let in_range: Vec<_> = chains.iter().filter(|c| c.in_range).collect();
    assert_eq!(in_range.len(), 1);
    assert_eq!((in_range[0].i, in_range[0].r), (0, 1));
    assert_eq!(in_range[0].betti, vec![1, 495]);
    assert!(in_range[0].holds);
    // Out-of-range chains are still evaluated: 1 ≤ 495 ≤ 495 ≤ 1 fails.
    let long = chains.iter().find(|c| c.i == 0 && c.r == 3).unwrap();
    assert!(!long.holds && !long.in_range);
    // q = 2: nothing is in range.
    assert!(kraines_inequalities(&basic_betti_numbers(2), 2)
        .iter()
        .all(|c| !c.in_range));
}

#[test]
fn orbifold_minus_one_q2() {
    let quotient = OrbifoldQuotient::new(FiniteGroup::minus_one(2).unwrap()).unwrap();
    let r = quotient.betti_report().unwrap();
    assert_eq!(r.betti, vec![1, 0, 28, 0, 70, 0, 28, 0, 1]);
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.group_order, Some(2));
    let json = r.to_json();
    assert!(json.contains("\"certificates\""));
    assert!(json.contains("\"residue\": \"0\""));
}

#[test]
fn orbifold_trivial_group_gives_binomials() {
    let quotient = OrbifoldQuotient::new(FiniteGroup::trivial(1).unwrap()).unwrap();
    let r = quotient.betti_report().unwrap();
    assert_eq!(r.betti, basic_betti_numbers(1));
    assert!(r.passed());
}

#[test]
fn orbifold_rejects_non_integral_groups() {
    // Right multiplication by (1 + i + j + k)/2 has order 6 and half-integer entries.
    let h = rat_frac(1, 2);
    let u = UnitQuaternion::new(Quaternion::new(h.clone(), h.clone(), h.clone(), h)).unwrap();
    let g = GroupElement::right(1, u).unwrap();
    let group = FiniteGroup::closure(1, &[g], 24).unwrap();
    assert_eq!(group.order(), 6);
    assert!(matches!(
        OrbifoldQuotient::new(group),
        Err(Error::LatticeViolation { .. })
    ));
}

#[test]
fn pairing_is_hermitian() {
    let mut s = FormSampler::new(21);
    let a = FourierForm::sample(&mut s, 1, 2, 1).unwrap();
    let b = FourierForm::sample(&mut s, 1, 2, 1).unwrap().add(&a).unwrap();
    assert_eq!(a.pairing(&b).unwrap(), b.pairing(&a).unwrap().conj());
    let self_pair = a.pairing(&a).unwrap();
    assert!(self_pair.im.is_zero() && self_pair.re > rat(0));
}

#[test]
fn constant_embedding_of_a_form() {
    let f = Form::generator(1, 2).unwrap();
    let c = FourierForm::constant(&f, 2);
    assert!(c.is_constant());
    assert_eq!(c.coeff(&[0, 0, 0, 0], Blade::generator(2)), gaussian(1, 0));
    assert_eq!(c.cutoff(), 2);
}
