use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex;
use num_integer::binomial;
use num_traits::Zero;

use crate::algebra::{rat, GaussianRational, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::multivector::{blade_basis, check_n, merge_sign, Blade, DegreeBasis, Form};
use crate::sampling::{FormSampler, MAX_TERMS};

/// Integer frequency vector `ξ ∈ Z^{4q}`.
pub type Freq = Vec<i64>;

/// Basic `p`-form on the flat torus `T^{4q}` as a finite sum of
/// `c · e_ξ · e_S` with `∂_j e_ξ = i ξ_j e_ξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierForm {
    q: usize,
    degree: usize,
    cutoff: u32,
    terms: BTreeMap<(Freq, Blade), GaussianRational>,
}

fn times_i_xi(c: &GaussianRational, xi: i64) -> GaussianRational {
    let x = rat(xi);
    Complex::new(-(&c.im * &x), &c.re * &x)
}

fn real(c: &Rational) -> GaussianRational {
    Complex::new(c.clone(), Rational::zero())
}

impl FourierForm {
    pub fn zero(q: usize, degree: usize, cutoff: u32) -> Result<FourierForm> {
        check_n(q)?;
        if degree > 4 * q {
            return Err(Error::DegreeOverflow { degree, top: 4 * q });
        }
        Ok(FourierForm {
            q,
            degree,
            cutoff,
            terms: BTreeMap::new(),
        })
    }

    /// Sums duplicate keys and drops zero coefficients.
    pub fn from_terms(
        q: usize,
        degree: usize,
        cutoff: u32,
        terms: impl IntoIterator<Item = (Freq, Blade, GaussianRational)>,
    ) -> Result<FourierForm> {
        let mut f = FourierForm::zero(q, degree, cutoff)?;
        for (xi, b, c) in terms {
            f.check_key(&xi, b)?;
            f.add_term(xi, b, c);
        }
        Ok(f)
    }

    fn check_key(&self, xi: &[i64], b: Blade) -> Result<()> {
        if xi.len() != 4 * self.q {
            return Err(Error::Shape(format!(
                "frequency has {} entries, expected {}",
                xi.len(),
                4 * self.q
            )));
        }
        if let Some(x) = xi.iter().find(|x| x.unsigned_abs() > u64::from(self.cutoff)) {
            return Err(Error::Shape(format!(
                "frequency entry {x} exceeds the cutoff {}",
                self.cutoff
            )));
        }
        if b.grade() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: b.grade(),
            });
        }
        if b.mask() >> (4 * self.q) != 0 {
            return Err(Error::Shape(format!(
                "blade {b:?} uses generators beyond {}",
                4 * self.q
            )));
        }
        Ok(())
    }

    fn add_term(&mut self, xi: Freq, b: Blade, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let key = (xi, b);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    fn empty_like(&self, degree: usize) -> FourierForm {
        FourierForm {
            q: self.q,
            degree,
            cutoff: self.cutoff,
            terms: BTreeMap::new(),
        }
    }

    /// The real constant form `a` viewed at frequency zero.
    pub fn constant(a: &Form, cutoff: u32) -> FourierForm {
        FourierForm::mode(vec![0; a.dim()], a, cutoff).expect("zero frequency is in every box")
    }

    /// `e_ξ · a` for a real constant form `a`.
    pub fn mode(xi: Freq, a: &Form, cutoff: u32) -> Result<FourierForm> {
        FourierForm::from_terms(
            a.n(),
            a.degree(),
            cutoff,
            a.terms().map(|(b, c)| (xi.clone(), b, real(c))),
        )
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        4 * self.q
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
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

    pub fn terms(&self) -> impl Iterator<Item = (&Freq, Blade, &GaussianRational)> {
        self.terms.iter().map(|((xi, b), c)| (xi, *b, c))
    }

    pub fn coeff(&self, xi: &[i64], b: Blade) -> GaussianRational {
        self.terms
            .get(&(xi.to_vec(), b))
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    /// Frequencies carrying a nonzero term, in ascending order.
    pub fn frequencies(&self) -> BTreeSet<&Freq> {
        self.terms.keys().map(|(xi, _)| xi).collect()
    }

    /// True when every term sits at frequency zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|(xi, _)| xi.iter().all(|&x| x == 0))
    }

    fn check_same_space(&self, other: &FourierForm) -> Result<()> {
        if self.q != other.q {
            return Err(Error::DimensionMismatch {
                left: self.q,
                right: other.q,
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

    /// Sum; the cutoff of the result is the larger of the two.
    pub fn add(&self, other: &FourierForm) -> Result<FourierForm> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        out.cutoff = self.cutoff.max(other.cutoff);
        for ((xi, b), c) in &other.terms {
            out.add_term(xi.clone(), *b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FourierForm) -> Result<FourierForm> {
        self.add(&other.scale(&-GaussianRational::new(rat(1), rat(0))))
    }

    pub fn scale(&self, s: &GaussianRational) -> FourierForm {
        let mut out = self.empty_like(self.degree);
        for ((xi, b), c) in &self.terms {
            out.add_term(xi.clone(), *b, c * s);
        }
        out
    }

    /// `d(c e_ξ e_S) = Σ_j i ξ_j c e_ξ (e_j ∧ e_S)`.
    pub fn d(&self) -> Result<FourierForm> {
        if self.degree == self.dim() {
            return Err(Error::DegreeOverflow {
                degree: self.degree + 1,
                top: self.dim(),
            });
        }
        let mut out = self.empty_like(self.degree + 1);
        for ((xi, s), c) in &self.terms {
            for (j, &x) in xi.iter().enumerate() {
                if x == 0 || s.contains(j) {
                    continue;
                }
                let g = Blade::generator(j);
                let mut t = times_i_xi(c, x);
                if merge_sign(g, *s) < 0 {
                    t = -t;
                }
                out.add_term(xi.clone(), s.union(g), t);
            }
        }
        Ok(out)
    }

    /// `δ(c e_ξ e_S) = −Σ_j i ξ_j c e_ξ i_{e_j} e_S`, the adjoint of `d`.
    pub fn delta(&self) -> Result<FourierForm> {
        if self.degree == 0 {
            return Err(Error::DegreeUnderflow { degree: 0, min: 1 });
        }
        let mut out = self.empty_like(self.degree - 1);
        for ((xi, s), c) in &self.terms {
            for (j, &x) in xi.iter().enumerate() {
                if x == 0 || !s.contains(j) {
                    continue;
                }
                let g = Blade::generator(j);
                let rest = s.without(g);
                let mut t = -times_i_xi(c, x);
                if merge_sign(g, rest) < 0 {
                    t = -t;
                }
                out.add_term(xi.clone(), rest, t);
            }
        }
        Ok(out)
    }

    /// `Δ = dδ + δd`, with the terms that leave `0..=4q` omitted.
    pub fn laplacian(&self) -> Result<FourierForm> {
        let mut out = self.empty_like(self.degree);
        if self.degree > 0 {
            out = out.add(&self.delta()?.d()?)?;
        }
        if self.degree < self.dim() {
            out = out.add(&self.d()?.delta()?)?;
        }
        Ok(out)
    }

    /// Mode-wise multiplication by `|ξ|²`.
    pub fn frequency_multiplier(&self) -> FourierForm {
        let mut out = self.empty_like(self.degree);
        for ((xi, b), c) in &self.terms {
            let norm: i64 = xi.iter().map(|x| x * x).sum();
            out.add_term(xi.clone(), *b, c * real(&rat(norm)));
        }
        out
    }

    /// `Σ conj(a) · b` over matching terms.
    pub fn pairing(&self, other: &FourierForm) -> Result<GaussianRational> {
        self.check_same_space(other)?;
        let mut acc = GaussianRational::zero();
        for (key, c) in &self.terms {
            if let Some(o) = other.terms.get(key) {
                acc += c.conj() * o;
            }
        }
        Ok(acc)
    }

    /// `ω ∧ a` for a real constant form `ω`, mode by mode.
    pub fn wedge_constant(&self, omega: &Form) -> Result<FourierForm> {
        if omega.n() != self.q {
            return Err(Error::DimensionMismatch {
                left: omega.n(),
                right: self.q,
            });
        }
        let top = self.degree + omega.degree();
        if top > self.dim() {
            return Err(Error::DegreeOverflow {
                degree: top,
                top: self.dim(),
            });
        }
        let mut out = self.empty_like(top);
        for ((xi, s), c) in &self.terms {
            for (u, w) in omega.terms() {
                if !u.is_disjoint(*s) {
                    continue;
                }
                let mut t = c * real(w);
                if merge_sign(u, *s) < 0 {
                    t = -t;
                }
                out.add_term(xi.clone(), u.union(*s), t);
            }
        }
        Ok(out)
    }

    /// Applies a real matrix on blade coefficients, identically on every
    /// mode. `m` maps the canonical basis of `Λ^degree` to that of
    /// `Λ^target`.
    pub fn apply_blade_map(&self, m: &RatMatrix, target: usize) -> Result<FourierForm> {
        let (rows, cols) = (binomial(self.dim(), target), binomial(self.dim(), self.degree));
        if m.cols() != cols || m.rows() != rows {
            return Err(Error::Shape(format!(
                "{}x{} matrix on Λ^{} -> Λ^{}",
                m.rows(),
                m.cols(),
                self.degree,
                target
            )));
        }
        self.map_modes(target, |v| m.mul_vec(v).expect("shape checked"))
    }

    /// Applies a real linear map `f: Λ^degree → Λ^target`, given on
    /// coefficient vectors in the canonical bases, to every mode. Real and
    /// imaginary parts are mapped separately.
    pub fn map_modes(&self, target: usize, f: impl Fn(&[Rational]) -> Vec<Rational>) -> Result<FourierForm> {
        if target > self.dim() {
            return Err(Error::DegreeOverflow {
                degree: target,
                top: self.dim(),
            });
        }
        let src = DegreeBasis::new(self.dim(), self.degree);
        let dst = DegreeBasis::new(self.dim(), target);
        let mut out = self.empty_like(target);
        let mut modes: BTreeMap<&Freq, (Vec<Rational>, Vec<Rational>)> = BTreeMap::new();
        for ((xi, s), c) in &self.terms {
            let (re, im) = modes.entry(xi).or_insert_with(|| {
                (
                    vec![Rational::zero(); src.len()],
                    vec![Rational::zero(); src.len()],
                )
            });
            let j = src.position(*s).expect("blade has the form's degree");
            re[j] = c.re.clone();
            im[j] = c.im.clone();
        }
        for (xi, (re, im)) in modes {
            let (re, im) = (f(&re), f(&im));
            if re.len() != dst.len() || im.len() != dst.len() {
                return Err(Error::Shape(format!(
                    "mode map returned {} entries, expected {}",
                    re.len(),
                    dst.len()
                )));
            }
            for (i, (r, m)) in re.into_iter().zip(im).enumerate() {
                out.add_term(xi.clone(), dst.blade(i), Complex::new(r, m));
            }
        }
        Ok(out)
    }

    /// Random form with up to 20 distinct `(ξ, S)` keys and nonzero Gaussian
    /// integer coefficients in `[−9, 9] + i[−9, 9]`.
    pub fn sample(s: &mut FormSampler, q: usize, degree: usize, cutoff: u32) -> Result<FourierForm> {
        let mut out = FourierForm::zero(q, degree, cutoff)?;
        let dim = 4 * q;
        let blades = blade_basis(dim, degree);
        let side = 2 * u64::from(cutoff) + 1;
        let modes = side.checked_pow(dim as u32).unwrap_or(u64::MAX);
        let keys = (binomial(dim as u64, degree as u64)).saturating_mul(modes);
        let want = (MAX_TERMS as u64).min(keys) as usize;
        let c = i64::from(cutoff);
        while out.len() < want {
            let xi: Freq = (0..dim).map(|_| s.int_in(-c, c)).collect();
            let b = blades[s.index(blades.len())];
            if out.terms.contains_key(&(xi.clone(), b)) {
                continue;
            }
            let coeff = s.gaussian_coeff();
            out.add_term(xi, b, coeff);
        }
        Ok(out)
    }
}

/// All frequencies in the box `[−c, c]^dim`, in lexicographic order.
pub fn frequency_box(dim: usize, cutoff: u32) -> Vec<Freq> {
    let c = i64::from(cutoff);
    let mut out = vec![Vec::with_capacity(dim)];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (-c..=c).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// `0`, every `e_j` and every `e_j + e_k` (`j < k`). The mode symbol of `Δ`
/// is a quadratic form in `ξ`, so its values here determine it everywhere.
pub fn quadratic_certificate_modes(dim: usize) -> Vec<Freq> {
    let mut out = vec![vec![0; dim]];
    for j in 0..dim {
        let mut v = vec![0; dim];
        v[j] = 1;
        out.push(v);
    }
    for j in 0..dim {
        for k in j + 1..dim {
            let mut v = vec![0; dim];
            v[j] = 1;
            v[k] = 1;
            out.push(v);
        }
    }
    out
}
