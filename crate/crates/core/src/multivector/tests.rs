use num_traits::Zero;
use proptest::prelude::*;

use super::*;
use crate::algebra::{rat, rat_frac, RatMatrix, Rational};
use crate::error::Error;

fn blade(ix: &[usize]) -> Blade {
    Blade::from_indices(ix).unwrap()
}

fn term(n: usize, ix: &[usize], c: i64) -> Form {
    Form::blade(n, blade(ix), rat(c)).unwrap()
}

#[test]
fn wedge_of_generators() {
    let e0 = Form::generator(1, 0).unwrap();
    let e1 = Form::generator(1, 1).unwrap();
    assert_eq!(e0.wedge(&e1).unwrap(), term(1, &[0, 1], 1));
    assert_eq!(e1.wedge(&e0).unwrap(), term(1, &[0, 1], -1));
}

#[test]
fn wedge_square_of_two_form() {
    // (e01 - e23)^2 = -2 e0123, by expanding the four products by hand:
    // e01∧e01 = 0, e23∧e23 = 0, -e01∧e23 = -e0123, -e23∧e01 = -e0123.
    let w = term(1, &[0, 1], 1).sub(&term(1, &[2, 3], 1)).unwrap();
    assert_eq!(w.wedge(&w).unwrap(), term(1, &[0, 1, 2, 3], -2));
}

#[test]
fn wedge_errors() {
    let v = Form::volume(1).unwrap();
    let e0 = Form::generator(1, 0).unwrap();
    assert!(matches!(
        v.wedge(&e0),
        Err(Error::DegreeOverflow { degree: 5, top: 4 })
    ));
    let f = Form::generator(2, 0).unwrap();
    assert!(matches!(e0.wedge(&f), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn star_examples() {
    let one = Form::scalar(1, rat(1)).unwrap();
    assert_eq!(one.hodge_star(), Form::volume(1).unwrap());
    assert_eq!(Form::volume(1).unwrap().hodge_star(), one);
    assert_eq!(
        Form::generator(1, 0).unwrap().hodge_star(),
        term(1, &[1, 2, 3], 1)
    );
    // e1 ∧ (−e0 e2 e3) = vol
    assert_eq!(
        Form::generator(1, 1).unwrap().hodge_star(),
        term(1, &[0, 2, 3], -1)
    );
}

#[test]
fn star_volume_identity_on_every_blade() {
    for n in 1..=2 {
        let vol = Form::volume(n).unwrap();
        for p in 0..=4 * n {
            for b in blade_basis(4 * n, p) {
                let e = Form::blade(n, b, rat(1)).unwrap();
                assert_eq!(e.wedge(&e.hodge_star()).unwrap(), vol);
            }
        }
    }
}

#[test]
fn star_parity_on_every_blade() {
    for n in 1..=2 {
        let dim = 4 * n;
        for p in 0..=dim {
            let sign = if (p * (dim - p)) % 2 == 0 { 1 } else { -1 };
            for b in blade_basis(dim, p) {
                let e = Form::blade(n, b, rat(1)).unwrap();
                assert_eq!(e.hodge_star().hodge_star(), e.scale(&rat(sign)));
            }
        }
    }
}

#[test]
fn inner_examples() {
    let a = term(1, &[0, 1], 1);
    let b = term(1, &[2, 3], 1);
    assert_eq!(a.inner(&a).unwrap(), rat(1));
    assert_eq!(a.inner(&b).unwrap(), rat(0));
    assert!(matches!(
        a.inner(&Form::generator(1, 0).unwrap()),
        Err(Error::DegreeMismatch { .. })
    ));
}

#[test]
fn interior_examples() {
    let e0 = Form::generator(1, 0).unwrap();
    assert_eq!(e0.interior(0).unwrap(), Form::scalar(1, rat(1)).unwrap());
    assert!(term(1, &[0, 1], 1).interior(2).unwrap().is_zero());
    assert_eq!(term(1, &[0, 1, 2], 1).interior(0).unwrap(), term(1, &[1, 2], 1));
    // slot evaluation: (e0∧e1∧e2)(e1, e0, e2) = -1, so i_{e1} gives -e0∧e2
    assert_eq!(term(1, &[0, 1, 2], 1).interior(1).unwrap(), term(1, &[0, 2], -1));
}

#[test]
fn pullback_examples() {
    let a = term(2, &[0, 3, 5], 7);
    assert_eq!(a.pullback(&LinearMap::identity(2).unwrap()).unwrap(), a);

    let mut m = RatMatrix::identity(4);
    m.set(0, 0, rat(2));
    let g = LinearMap::new(1, m).unwrap();
    let e0 = Form::generator(1, 0).unwrap();
    assert_eq!(e0.pullback(&g).unwrap(), e0.scale(&rat(2)));

    // A rotation in the (0,1) plane pulls e0∧e1 back to det · e0∧e1.
    let mut m = RatMatrix::identity(4);
    m.set(0, 0, rat_frac(3, 5));
    m.set(0, 1, rat_frac(-4, 5));
    m.set(1, 0, rat_frac(4, 5));
    m.set(1, 1, rat_frac(3, 5));
    let g = LinearMap::new(1, m).unwrap();
    let w = term(1, &[0, 1], 1);
    assert_eq!(w.pullback(&g).unwrap(), w);
}

#[test]
fn pullback_functorial() {
    let g = LinearMap::new(
        1,
        RatMatrix::from_i64_rows(&[&[1, 2, 0, 0], &[0, 1, 0, 3], &[1, 0, 1, 0], &[0, 0, 2, 1]]),
    )
    .unwrap();
    let h = LinearMap::new(
        1,
        RatMatrix::from_i64_rows(&[&[0, 1, 0, 0], &[1, 0, 0, 1], &[0, 0, -1, 0], &[2, 0, 0, 1]]),
    )
    .unwrap();
    let a = term(1, &[0, 2], 3).add(&term(1, &[1, 3], -2)).unwrap();
    let lhs = a.pullback(&g.compose(&h).unwrap()).unwrap();
    let rhs = a.pullback(&g).unwrap().pullback(&h).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn vector_roundtrip() {
    let basis = DegreeBasis::new(8, 3);
    let a = term(2, &[0, 4, 7], 5).add(&term(2, &[1, 2, 3], -1)).unwrap();
    let v = a.to_vector(&basis);
    assert_eq!(Form::from_vector(2, 3, &basis, &v), a);
}

fn form_strategy(n: usize, degree: usize) -> impl Strategy<Value = Form> {
    let basis = blade_basis(4 * n, degree);
    let len = basis.len();
    proptest::collection::vec((0..len, -9i64..=9), 0..8).prop_map(move |terms| {
        Form::from_terms(n, degree, terms.into_iter().map(|(i, c)| (basis[i], rat(c)))).unwrap()
    })
}

fn pair_strategy() -> impl Strategy<Value = (Form, Form)> {
    (0usize..=4, 0usize..=4).prop_flat_map(|(p, q)| (form_strategy(2, p), form_strategy(2, q)))
}

fn same_degree_pair() -> impl Strategy<Value = (Form, Form)> {
    (0usize..=8).prop_flat_map(|p| (form_strategy(2, p), form_strategy(2, p)))
}

proptest! {
    #[test]
    fn graded_anticommutativity((a, b) in pair_strategy()) {
        let sign = if (a.degree() * b.degree()) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale(&rat(sign)));
    }

    #[test]
    fn wedge_associative(
        a in form_strategy(2, 2), b in form_strategy(2, 1), c in form_strategy(2, 3)
    ) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inner_matches_star_formula((a, b) in same_degree_pair()) {
        prop_assert_eq!(a.inner(&b).unwrap(), a.inner_via_star(&b).unwrap());
    }

    #[test]
    fn interior_is_antiderivation((a, b) in pair_strategy(), v in 0usize..8) {
        let lhs = a.wedge(&b).unwrap();
        if lhs.degree() == 0 {
            return Ok(());
        }
        let lhs = lhs.interior(v).unwrap();
        let sign = if a.degree() % 2 == 0 { 1 } else { -1 };
        let mut rhs = Form::zero(2, lhs.degree()).unwrap();
        if a.degree() > 0 {
            rhs = rhs.add(&a.interior(v).unwrap().wedge(&b).unwrap()).unwrap();
        }
        if b.degree() > 0 {
            rhs = rhs.add(&a.wedge(&b.interior(v).unwrap()).unwrap().scale(&rat(sign))).unwrap();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_preserves_wedge(
        (a, b) in pair_strategy(),
        entries in proptest::collection::vec(-2i64..=2, 64),
    ) {
        let m = RatMatrix::from_vec(8, 8, entries.into_iter().map(rat).collect()).unwrap();
        let g = LinearMap::new(2, m).unwrap();
        let lhs = a.wedge(&b).unwrap().pullback(&g).unwrap();
        let rhs = a.pullback(&g).unwrap().wedge(&b.pullback(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn no_stored_zeros(a in form_strategy(2, 3)) {
        prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
        let z: Rational = rat(0);
        prop_assert!(a.scale(&z).is_zero());
    }
}
