use std::collections::{HashSet, VecDeque};

use num_traits::Zero;

use super::quaternion::{QuatMatrix, Quaternion, UnitQuaternion};
use crate::algebra::{rat, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::lefschetz::{Operator, OperatorMatrix};
use crate::multivector::{check_n, DegreeBasis, Form, LinearMap};
use crate::sampling::FormSampler;

/// Element `(A, q)` of `Sp(n)·Sp(1)` acting by `v ↦ A v q̄`.
#[derive(Clone, Debug)]
pub struct GroupElement {
    a: QuatMatrix,
    q: UnitQuaternion,
    realized: LinearMap,
}

impl PartialEq for GroupElement {
    /// Elements are compared by their action; `(A, q)` and `(−A, −q)` agree.
    fn eq(&self, other: &Self) -> bool {
        self.realized == other.realized
    }
}

impl Eq for GroupElement {}

impl GroupElement {
    pub fn new(a: QuatMatrix, q: UnitQuaternion) -> Result<GroupElement> {
        check_n(a.n())?;
        if !a.is_symplectic_unitary() {
            return Err(Error::InvalidGroupElement(
                "quaternion matrix is not in Sp(n)".into(),
            ));
        }
        let realized = realize_matrix(&a, &q)?;
        Ok(GroupElement { a, q, realized })
    }

    pub fn identity(n: usize) -> Result<GroupElement> {
        GroupElement::new(QuatMatrix::identity(n), UnitQuaternion::one())
    }

    /// Pure right multiplication `v ↦ v q̄`.
    pub fn right(n: usize, q: UnitQuaternion) -> Result<GroupElement> {
        GroupElement::new(QuatMatrix::identity(n), q)
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn quat_matrix(&self) -> &QuatMatrix {
        &self.a
    }

    pub fn unit(&self) -> &UnitQuaternion {
        &self.q
    }

    pub fn realized(&self) -> &LinearMap {
        &self.realized
    }

    pub fn matrix(&self) -> &RatMatrix {
        self.realized.matrix()
    }

    /// `(A₁A₂, q₁q₂)`, realized as the composition `g₁ ∘ g₂`.
    pub fn mul(&self, o: &GroupElement) -> GroupElement {
        let a = self.a.mul(&o.a);
        let q = self.q.mul(&o.q);
        let realized = self.realized.compose(&o.realized).expect("elements share n");
        GroupElement { a, q, realized }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            a: self.a.dagger(),
            q: self.q.conj(),
            realized: LinearMap::new(self.n(), self.matrix().transpose()).expect("square matrix"),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.realized.is_integral()
    }

    pub fn pullback(&self, f: &Form) -> Result<Form> {
        f.pullback(&self.realized)
    }
}

/// Real `4n × 4n` matrix of `v ↦ A v q̄` in the generator order `4α + c`.
pub fn realize_matrix(a: &QuatMatrix, q: &UnitQuaternion) -> Result<LinearMap> {
    let n = a.n();
    let qbar = q.get().conj();
    let mut m = RatMatrix::zeros(4 * n, 4 * n);
    for beta in 0..n {
        for c in 0..4 {
            let tail = &Quaternion::unit(c) * &qbar;
            for alpha in 0..n {
                let w = a.get(alpha, beta) * &tail;
                for (r, x) in w.components().into_iter().enumerate() {
                    if !x.is_zero() {
                        m.set(4 * alpha + r, 4 * beta + c, x.clone());
                    }
                }
            }
        }
    }
    LinearMap::new(n, m)
}

/// Random element from Cayley transforms of small rational parameters.
pub fn sample_element(s: &mut FormSampler, n: usize) -> Result<GroupElement> {
    let mut skew = QuatMatrix::zeros(n);
    for r in 0..n {
        skew.set(
            r,
            r,
            Quaternion::new(rat(0), s.small_rational(), s.small_rational(), s.small_rational()),
        );
        for c in r + 1..n {
            let x = Quaternion::new(
                s.small_rational(),
                s.small_rational(),
                s.small_rational(),
                s.small_rational(),
            );
            skew.set(c, r, -&x.conj());
            skew.set(r, c, x);
        }
    }
    let a = QuatMatrix::cayley(&skew)?;
    let u = Quaternion::new(rat(0), s.small_rational(), s.small_rational(), s.small_rational());
    let q = UnitQuaternion::cayley(&u)?;
    GroupElement::new(a, q)
}

/// Finite subgroup of `Sp(n)·Sp(1)`, identity first, in discovery order.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    n: usize,
    elements: Vec<GroupElement>,
}

impl FiniteGroup {
    /// Breadth-first closure of the generators under products.
    pub fn closure(n: usize, generators: &[GroupElement], max_order: usize) -> Result<FiniteGroup> {
        check_n(n)?;
        if let Some(g) = generators.iter().find(|g| g.n() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: g.n(),
            });
        }
        let id = GroupElement::identity(n)?;
        if max_order == 0 {
            return Err(Error::OrderExceeded { max_order });
        }
        let mut seen: HashSet<RatMatrix> = HashSet::from([id.matrix().clone()]);
        let mut elements = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let h = elements[i].mul(g);
                if seen.insert(h.matrix().clone()) {
                    if elements.len() == max_order {
                        return Err(Error::OrderExceeded { max_order });
                    }
                    elements.push(h);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Ok(FiniteGroup { n, elements })
    }

    pub fn trivial(n: usize) -> Result<FiniteGroup> {
        Self::closure(n, &[], 1)
    }

    /// `{±1}` acting by `v ↦ −v`.
    pub fn minus_one(n: usize) -> Result<FiniteGroup> {
        let g = GroupElement::new(QuatMatrix::scalar(n, -&Quaternion::one()), UnitQuaternion::one())?;
        Self::closure(n, &[g], 2)
    }

    /// The quaternion group `Q8` acting on the right, generated by `(1, i)` and `(1, j)`.
    pub fn quaternion_group(n: usize) -> Result<FiniteGroup> {
        let gens = [
            GroupElement::right(n, UnitQuaternion::new(Quaternion::i())?)?,
            GroupElement::right(n, UnitQuaternion::new(Quaternion::j())?)?,
        ];
        Self::closure(n, &gens, 8)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.iter().any(|h| h == g)
    }

    pub fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.contains(&a.inverse()) && self.elements.iter().all(|b| self.contains(&a.mul(b))))
    }

    pub fn is_invariant(&self, f: &Form) -> Result<bool> {
        for g in &self.elements {
            if &g.pullback(f)? != f {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `(1/|G|) Σ_g g*` on `Λ^p`.
    pub fn averaging_projector(&self, p: usize) -> Result<OperatorMatrix> {
        let dim = 4 * self.n;
        if p > dim {
            return Err(Error::DegreeOutOfRange { degree: p, max: dim });
        }
        let basis = DegreeBasis::new(dim, p);
        let mut sum = RatMatrix::zeros(basis.len(), basis.len());
        for g in &self.elements {
            for j in 0..basis.len() {
                let e = Form::blade(self.n, basis.blade(j), rat(1))?;
                for (b, c) in g.pullback(&e)?.terms() {
                    let i = basis.position(b).expect("pullback preserves degree");
                    let cur = sum.get(i, j) + c;
                    sum.set(i, j, cur);
                }
            }
        }
        let scale = Rational::new(1.into(), self.order().into());
        Ok(OperatorMatrix {
            operator: Operator::Average,
            source: p,
            target: p,
            matrix: sum.scale(&scale),
        })
    }

    /// Basis of the `G`-invariant `p`-forms (the image of the averaging projector).
    pub fn invariant_basis(&self, p: usize) -> Result<Vec<Form>> {
        let proj = self.averaging_projector(p)?.matrix;
        let basis = DegreeBasis::new(4 * self.n, p);
        Ok(proj
            .independent_columns()
            .into_iter()
            .map(|c| Form::from_vector(self.n, p, &basis, &proj.column(c)))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lefschetz::Lefschetz;
    use crate::quaternionic::{KrainesData, QuatFrame, Structure};
    use num_integer::binomial;

    #[test]
    fn realize_identity_and_minus_one() {
        let g = GroupElement::identity(2).unwrap();
        assert_eq!(g.matrix(), &RatMatrix::identity(8));
        let m = GroupElement::right(2, UnitQuaternion::new(-&Quaternion::one()).unwrap()).unwrap();
        assert_eq!(m.matrix(), &RatMatrix::identity(8).scale(&rat(-1)));
    }

    #[test]
    fn realize_right_i_is_minus_structure_i() {
        // v ↦ v·ī = −v·i
        let g = GroupElement::right(1, UnitQuaternion::new(Quaternion::i()).unwrap()).unwrap();
        let frame = QuatFrame::standard(1).unwrap();
        let i = frame.structure(Structure::I).matrix();
        assert_eq!(g.matrix(), &i.scale(&rat(-1)));
    }

    #[test]
    fn realization_is_orthogonal_homomorphism() {
        let mut s = FormSampler::new(3);
        for n in 1..=2 {
            for _ in 0..10 {
                let g = sample_element(&mut s, n).unwrap();
                let h = sample_element(&mut s, n).unwrap();
                assert!(g.realized().is_orthogonal());
                let gh =
                    GroupElement::new(g.quat_matrix().mul(h.quat_matrix()), g.unit().mul(h.unit())).unwrap();
                assert_eq!(gh.matrix(), &g.matrix().mul(h.matrix()).unwrap());
            }
        }
    }

    #[test]
    fn closure_examples() {
        let minus = FiniteGroup::minus_one(2).unwrap();
        assert_eq!(minus.order(), 2);
        let q8 = FiniteGroup::quaternion_group(2).unwrap();
        assert_eq!(q8.order(), 8);
        assert!(q8.is_closed());
        assert_eq!(FiniteGroup::trivial(1).unwrap().order(), 1);
        let gens = [GroupElement::right(1, UnitQuaternion::new(Quaternion::i()).unwrap()).unwrap()];
        assert_eq!(
            FiniteGroup::closure(1, &gens, 3).unwrap_err(),
            Error::OrderExceeded { max_order: 3 }
        );
    }

    #[test]
    fn projector_examples() {
        let trivial = FiniteGroup::trivial(1).unwrap();
        assert_eq!(
            trivial.averaging_projector(2).unwrap().matrix,
            RatMatrix::identity(6)
        );
        let minus = FiniteGroup::minus_one(1).unwrap();
        for p in 0..=4 {
            let m = minus.averaging_projector(p).unwrap().matrix;
            if p % 2 == 0 {
                assert_eq!(m, RatMatrix::identity(binomial(4, p)));
            } else {
                assert!(m.is_zero());
            }
        }
        let q8 = FiniteGroup::quaternion_group(2).unwrap();
        for p in 0..=8 {
            let m = q8.averaging_projector(p).unwrap().matrix;
            assert_eq!(m.mul(&m).unwrap(), m, "p = {p}");
        }
    }

    #[test]
    fn invariant_bases() {
        let minus = FiniteGroup::minus_one(2).unwrap();
        assert_eq!(minus.invariant_basis(2).unwrap().len(), 28);
        assert!(minus.invariant_basis(3).unwrap().is_empty());
        let trivial = FiniteGroup::trivial(2).unwrap();
        assert_eq!(trivial.invariant_basis(3).unwrap().len(), 56);
    }

    #[test]
    fn omega_lies_in_invariant_span() {
        let kd = KrainesData::new(2).unwrap();
        let q8 = FiniteGroup::quaternion_group(2).unwrap();
        assert!(q8.is_invariant(kd.omega()).unwrap());
        let basis = q8.invariant_basis(4).unwrap();
        let lef = Lefschetz::new(2).unwrap();
        let cols: Vec<Vec<Rational>> = basis.iter().map(|f| f.to_vector(lef.basis(4))).collect();
        let m = RatMatrix::from_columns(70, &cols).unwrap();
        let mut with_omega = cols.clone();
        with_omega.push(kd.omega().to_vector(lef.basis(4)));
        let m2 = RatMatrix::from_columns(70, &with_omega).unwrap();
        assert_eq!(m.rank(), m2.rank());
    }
}
