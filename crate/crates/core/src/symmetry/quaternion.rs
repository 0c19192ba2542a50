use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::{rat, Rational};
use crate::error::{Error, Result};

/// Quaternion `w + x i + y j + z k` with rational components.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Quaternion {
    pub w: Rational,
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.w, self.x, self.y, self.z)
    }
}

impl Quaternion {
    pub fn new(w: Rational, x: Rational, y: Rational, z: Rational) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        Quaternion::new(rat(w), rat(x), rat(y), rat(z))
    }

    pub fn zero() -> Self {
        Quaternion::default()
    }

    pub fn one() -> Self {
        Quaternion::from_ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Quaternion::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quaternion::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quaternion::from_ints(0, 0, 0, 1)
    }

    /// Basis element `1, i, j, k` for `c = 0..4`.
    pub fn unit(c: usize) -> Self {
        match c {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::j(),
            3 => Self::k(),
            _ => panic!("quaternion component {c} out of range"),
        }
    }

    pub fn components(&self) -> [&Rational; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.w.clone(), -&self.x, -&self.y, -&self.z)
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.w * &self.w + &self.x * &self.x + &self.y * &self.y + &self.z * &self.z
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|c| c.is_zero())
    }

    pub fn is_pure(&self) -> bool {
        self.w.is_zero()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Quaternion::new(&self.w * s, &self.x * s, &self.y * s, &self.z * s)
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(self.conj().scale(&n.recip()))
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, o: &Quaternion) -> Quaternion {
        Quaternion::new(&self.w + &o.w, &self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }
}

impl Sub for &Quaternion {
    type Output = Quaternion;
    fn sub(self, o: &Quaternion) -> Quaternion {
        Quaternion::new(&self.w - &o.w, &self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.w, -&self.x, -&self.y, -&self.z)
    }
}

impl Mul for &Quaternion {
    type Output = Quaternion;
    fn mul(self, o: &Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (&self.w, &self.x, &self.y, &self.z);
        let (a2, b2, c2, d2) = (&o.w, &o.x, &o.y, &o.z);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

/// Element of `Sp(1)`: a quaternion of norm exactly one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitQuaternion(Quaternion);

impl UnitQuaternion {
    pub fn new(q: Quaternion) -> Result<Self> {
        if !q.norm_sqr().is_one() {
            return Err(Error::InvalidGroupElement(format!(
                "quaternion {q:?} does not have unit norm"
            )));
        }
        Ok(UnitQuaternion(q))
    }

    pub fn one() -> Self {
        UnitQuaternion(Quaternion::one())
    }

    pub fn get(&self) -> &Quaternion {
        &self.0
    }

    pub fn conj(&self) -> Self {
        UnitQuaternion(self.0.conj())
    }

    pub fn mul(&self, o: &UnitQuaternion) -> Self {
        UnitQuaternion(&self.0 * &o.0)
    }

    /// Cayley transform `(1 − u)(1 + u)⁻¹` of a pure quaternion.
    pub fn cayley(u: &Quaternion) -> Result<Self> {
        if !u.is_pure() {
            return Err(Error::InvalidGroupElement(format!(
                "Cayley parameter {u:?} is not pure"
            )));
        }
        let one = Quaternion::one();
        let inv = (&one + u).inverse().ok_or(Error::SingularCayley)?;
        UnitQuaternion::new(&(&one - u) * &inv)
    }
}

/// `n × n` matrix of quaternions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuatMatrix {
    n: usize,
    entries: Vec<Quaternion>,
}

impl QuatMatrix {
    pub fn from_entries(n: usize, entries: Vec<Quaternion>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Shape(format!(
                "{} quaternions for a {n}x{n} matrix",
                entries.len()
            )));
        }
        Ok(QuatMatrix { n, entries })
    }

    pub fn zeros(n: usize) -> Self {
        QuatMatrix {
            n,
            entries: vec![Quaternion::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Quaternion::one())
    }

    pub fn scalar(n: usize, q: Quaternion) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = q.clone();
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &Quaternion {
        &self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, q: Quaternion) {
        self.entries[r * self.n + c] = q;
    }

    pub fn mul(&self, o: &QuatMatrix) -> QuatMatrix {
        assert_eq!(self.n, o.n, "quaternion matrix size mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = Quaternion::zero();
                for k in 0..n {
                    acc = &acc + &(self.get(r, k) * o.get(k, c));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn add(&self, o: &QuatMatrix) -> QuatMatrix {
        QuatMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &QuatMatrix) -> QuatMatrix {
        QuatMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect(),
        }
    }

    /// Quaternionic conjugate transpose `A†`.
    pub fn dagger(&self) -> QuatMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn is_symplectic_unitary(&self) -> bool {
        self.mul(&self.dagger()) == Self::identity(self.n)
    }

    pub fn is_skew_hermitian(&self) -> bool {
        self.dagger() == self.scale_neg()
    }

    fn scale_neg(&self) -> QuatMatrix {
        QuatMatrix {
            n: self.n,
            entries: self.entries.iter().map(|q| -q).collect(),
        }
    }

    /// Gauss–Jordan inverse over the quaternions. Rows are only ever scaled
    /// and combined from the left, so the accumulated product is `M⁻¹`.
    pub fn inverse(&self) -> Option<QuatMatrix> {
        let n = self.n;
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.get(r, col).is_zero())?;
            if pivot != col {
                for c in 0..n {
                    m.entries.swap(pivot * n + c, col * n + c);
                    inv.entries.swap(pivot * n + c, col * n + c);
                }
            }
            let p_inv = m.get(col, col).inverse()?;
            for c in 0..n {
                let a = &p_inv * m.get(col, c);
                m.set(col, c, a);
                let b = &p_inv * inv.get(col, c);
                inv.set(col, c, b);
            }
            for r in 0..n {
                if r == col || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in 0..n {
                    let a = m.get(r, c) - &(&f * m.get(col, c));
                    m.set(r, c, a);
                    let b = inv.get(r, c) - &(&f * inv.get(col, c));
                    inv.set(r, c, b);
                }
            }
        }
        Some(inv)
    }

    /// Cayley transform `(I − s)(I + s)⁻¹` of a skew-Hermitian matrix.
    pub fn cayley(s: &QuatMatrix) -> Result<QuatMatrix> {
        if !s.is_skew_hermitian() {
            return Err(Error::InvalidGroupElement(
                "Cayley parameter is not skew-Hermitian".into(),
            ));
        }
        let id = Self::identity(s.n);
        let inv = id.add(s).inverse().ok_or(Error::SingularCayley)?;
        Ok(id.sub(s).mul(&inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_frac;

    #[test]
    fn multiplication_table() {
        let (i, j, k) = (Quaternion::i(), Quaternion::j(), Quaternion::k());
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&i * &i, -&Quaternion::one());
    }

    #[test]
    fn cayley_sp1_examples() {
        assert_eq!(
            UnitQuaternion::cayley(&Quaternion::zero()).unwrap(),
            UnitQuaternion::one()
        );
        let q = UnitQuaternion::cayley(&Quaternion::i()).unwrap();
        assert_eq!(q.get(), &-&Quaternion::i());
        let u = Quaternion::new(rat(0), rat_frac(1, 2), rat(0), rat(0));
        let q = UnitQuaternion::cayley(&u).unwrap();
        assert!(q.get().norm_sqr().is_one());
        // (1 − i/2)² / (5/4) = (3/5, −4/5, 0, 0)
        assert_eq!(
            q.get(),
            &Quaternion::new(rat_frac(3, 5), rat_frac(-4, 5), rat(0), rat(0))
        );
        assert!(UnitQuaternion::cayley(&Quaternion::one()).is_err());
    }

    #[test]
    fn cayley_spn_examples() {
        assert_eq!(
            QuatMatrix::cayley(&QuatMatrix::zeros(2)).unwrap(),
            QuatMatrix::identity(2)
        );
        let s = QuatMatrix::scalar(1, Quaternion::i());
        let a = QuatMatrix::cayley(&s).unwrap();
        assert_eq!(a.get(0, 0), &-&Quaternion::i());

        let mut s = QuatMatrix::zeros(2);
        s.set(0, 0, Quaternion::new(rat(0), rat(1), rat_frac(1, 3), rat(0)));
        s.set(0, 1, Quaternion::new(rat(2), rat(-1), rat(0), rat_frac(1, 2)));
        s.set(1, 0, -&s.get(0, 1).conj());
        s.set(1, 1, Quaternion::new(rat(0), rat(0), rat(0), rat(3)));
        assert!(s.is_skew_hermitian());
        let a = QuatMatrix::cayley(&s).unwrap();
        assert!(a.is_symplectic_unitary());
    }

    #[test]
    fn cayley_rejects_non_skew() {
        let s = QuatMatrix::scalar(1, Quaternion::one());
        assert!(QuatMatrix::cayley(&s).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let mut m = QuatMatrix::zeros(2);
        m.set(0, 0, Quaternion::from_ints(1, 2, 0, -1));
        m.set(0, 1, Quaternion::from_ints(0, 1, 1, 0));
        m.set(1, 0, Quaternion::from_ints(3, 0, 0, 1));
        m.set(1, 1, Quaternion::from_ints(0, 0, 2, 0));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QuatMatrix::identity(2));
        assert_eq!(inv.mul(&m), QuatMatrix::identity(2));
    }
}
