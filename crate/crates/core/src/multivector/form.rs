use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use super::blade::{merge_sign, Blade, DegreeBasis, MAX_DIM};
use crate::algebra::{RatMatrix, Rational};
use crate::error::{Error, Result};

/// Homogeneous element of `Λ^p (R^{4n})*` with orthonormal generators.
///
/// Terms are kept in canonical blade order with no stored zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    n: usize,
    degree: usize,
    terms: BTreeMap<Blade, Rational>,
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form(n={}, p={}; ", self.n, self.degree)?;
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{b:?}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n == 0 || 4 * n > MAX_DIM {
        return Err(Error::InvalidDimension(n));
    }
    Ok(())
}

impl Form {
    pub fn zero(n: usize, degree: usize) -> Result<Form> {
        check_n(n)?;
        if degree > 4 * n {
            return Err(Error::DegreeOverflow { degree, top: 4 * n });
        }
        Ok(Form {
            n,
            degree,
            terms: BTreeMap::new(),
        })
    }

    pub fn scalar(n: usize, c: Rational) -> Result<Form> {
        let mut f = Form::zero(n, 0)?;
        f.add_term(Blade::SCALAR, c);
        Ok(f)
    }

    /// The 1-form `e_i`.
    pub fn generator(n: usize, i: usize) -> Result<Form> {
        let mut f = Form::zero(n, 1)?;
        if i >= 4 * n {
            return Err(Error::DegreeOutOfRange {
                degree: i,
                max: 4 * n - 1,
            });
        }
        f.add_term(Blade::generator(i), Rational::one());
        Ok(f)
    }

    pub fn blade(n: usize, blade: Blade, c: Rational) -> Result<Form> {
        let mut f = Form::zero(n, blade.grade())?;
        f.check_blade(blade)?;
        f.add_term(blade, c);
        Ok(f)
    }

    /// The volume form `e0 ∧ … ∧ e_{4n-1}`.
    pub fn volume(n: usize) -> Result<Form> {
        Form::blade(n, Blade::volume(4 * n), Rational::one())
    }

    /// Sums coefficients of repeated blades.
    pub fn from_terms(
        n: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Blade, Rational)>,
    ) -> Result<Form> {
        let mut f = Form::zero(n, degree)?;
        for (b, c) in terms {
            f.check_blade(b)?;
            f.add_term(b, c);
        }
        Ok(f)
    }

    fn check_blade(&self, b: Blade) -> Result<()> {
        if b.grade() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: b.grade(),
            });
        }
        if b.span() > self.dim() {
            return Err(Error::Parse(format!(
                "blade {b:?} uses an index >= {}",
                self.dim()
            )));
        }
        Ok(())
    }

    pub(crate) fn add_term(&mut self, b: Blade, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(b) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Real dimension `4n`.
    pub fn dim(&self) -> usize {
        4 * self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Rational)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn coeff(&self, b: Blade) -> Rational {
        self.terms.get(&b).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_same_space(&self, other: &Form) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b, -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Form {
        if s.is_zero() {
            return Form {
                n: self.n,
                degree: self.degree,
                terms: BTreeMap::new(),
            };
        }
        Form {
            n: self.n,
            degree: self.degree,
            terms: self.terms.iter().map(|(b, c)| (*b, c * s)).collect(),
        }
    }

    pub fn neg(&self) -> Form {
        self.scale(&-Rational::one())
    }

    /// Exterior product; graded anticommutative with merge-parity signs.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let degree = self.degree + other.degree;
        if degree > self.dim() {
            return Err(Error::DegreeOverflow {
                degree,
                top: self.dim(),
            });
        }
        let mut acc: HashMap<Blade, Rational> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if !a.is_disjoint(*b) {
                    continue;
                }
                let mut c = ca * cb;
                if merge_sign(*a, *b) < 0 {
                    c = -c;
                }
                *acc.entry(a.union(*b)).or_insert_with(Rational::zero) += c;
            }
        }
        Ok(self.with_terms(degree, acc))
    }

    fn with_terms(&self, degree: usize, acc: HashMap<Blade, Rational>) -> Form {
        Form {
            n: self.n,
            degree,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Hodge star for the orientation `vol = e0 ∧ … ∧ e_{4n-1}`:
    /// `e_S ∧ *e_S = vol` on every blade.
    pub fn hodge_star(&self) -> Form {
        let dim = self.dim();
        let terms = self
            .terms
            .iter()
            .map(|(s, c)| {
                let comp = s.complement(dim);
                let c = if merge_sign(*s, comp) < 0 {
                    -c.clone()
                } else {
                    c.clone()
                };
                (comp, c)
            })
            .collect();
        Form {
            n: self.n,
            degree: dim - self.degree,
            terms,
        }
    }

    /// Pointwise inner product; blades are orthonormal.
    pub fn inner(&self, other: &Form) -> Result<Rational> {
        self.check_same_space(other)?;
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        Ok(small
            .terms
            .iter()
            .filter_map(|(b, c)| large.terms.get(b).map(|d| c * d))
            .sum())
    }

    /// The same pairing through the star formula `*(a ∧ *b)`.
    pub fn inner_via_star(&self, other: &Form) -> Result<Rational> {
        self.check_same_space(other)?;
        let top = self.wedge(&other.hodge_star())?;
        Ok(top.hodge_star().coeff(Blade::SCALAR))
    }

    /// Contraction `i_{e_v}` on the first slot.
    pub fn interior(&self, v: usize) -> Result<Form> {
        if v >= self.dim() {
            return Err(Error::DegreeOutOfRange {
                degree: v,
                max: self.dim() - 1,
            });
        }
        if self.degree == 0 {
            return Ok(Form {
                n: self.n,
                degree: 0,
                terms: BTreeMap::new(),
            });
        }
        let g = Blade::generator(v);
        let terms = self
            .terms
            .iter()
            .filter(|(s, _)| s.contains(v))
            .map(|(s, c)| {
                let rest = s.without(g);
                // e_v ∧ e_rest = sign · e_s
                let c = if merge_sign(g, rest) < 0 {
                    -c.clone()
                } else {
                    c.clone()
                };
                (rest, c)
            })
            .collect();
        Ok(Form {
            n: self.n,
            degree: self.degree - 1,
            terms,
        })
    }

    /// Coefficient vector in the canonical basis of this degree.
    pub fn to_vector(&self, basis: &DegreeBasis) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); basis.len()];
        for (b, c) in &self.terms {
            let i = basis
                .position(*b)
                .expect("basis must match the form's degree and dimension");
            v[i] = c.clone();
        }
        v
    }

    pub fn from_vector(n: usize, degree: usize, basis: &DegreeBasis, v: &[Rational]) -> Form {
        Form {
            n,
            degree,
            terms: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (basis.blade(i), c.clone()))
                .collect(),
        }
    }

    /// `(g* a)(v1, …, vp) = a(g v1, …, g vp)`.
    pub fn pullback(&self, g: &LinearMap) -> Result<Form> {
        if g.n != self.n {
            return Err(Error::DimensionMismatch {
                left: g.n,
                right: self.n,
            });
        }
        let dim = self.dim();
        // g* e^i = Σ_j g_ij e^j
        let images: Vec<Vec<(Blade, Rational)>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .filter(|&j| !g.matrix.get(i, j).is_zero())
                    .map(|j| (Blade::generator(j), g.matrix.get(i, j).clone()))
                    .collect()
            })
            .collect();
        let mut acc: HashMap<Blade, Rational> = HashMap::new();
        for (s, c) in &self.terms {
            let mut partial: HashMap<Blade, Rational> = HashMap::from([(Blade::SCALAR, c.clone())]);
            for i in s.indices() {
                let mut next: HashMap<Blade, Rational> = HashMap::new();
                for (b, cb) in &partial {
                    for (e, ce) in &images[i] {
                        if !b.is_disjoint(*e) {
                            continue;
                        }
                        let mut x = cb * ce;
                        if merge_sign(*b, *e) < 0 {
                            x = -x;
                        }
                        *next.entry(b.union(*e)).or_insert_with(Rational::zero) += x;
                    }
                }
                next.retain(|_, x| !x.is_zero());
                partial = next;
            }
            for (b, x) in partial {
                *acc.entry(b).or_insert_with(Rational::zero) += x;
            }
        }
        Ok(self.with_terms(self.degree, acc))
    }
}

/// Linear endomorphism of `R^{4n}` given by its `4n × 4n` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    n: usize,
    matrix: RatMatrix,
}

impl LinearMap {
    pub fn new(n: usize, matrix: RatMatrix) -> Result<Self> {
        check_n(n)?;
        if matrix.rows() != 4 * n || matrix.cols() != 4 * n {
            return Err(Error::Shape(format!(
                "expected a {0}x{0} matrix, got {1}x{2}",
                4 * n,
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(LinearMap { n, matrix })
    }

    pub fn identity(n: usize) -> Result<Self> {
        LinearMap::new(n, RatMatrix::identity(4 * n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        LinearMap::new(self.n, self.matrix.mul(&other.matrix)?)
    }

    pub fn is_orthogonal(&self) -> bool {
        self.matrix
            .transpose()
            .mul(&self.matrix)
            .map(|m| m == RatMatrix::identity(4 * self.n))
            .unwrap_or(false)
    }

    pub fn is_integral(&self) -> bool {
        self.matrix.entries().iter().all(|x| x.is_integer())
    }
}
