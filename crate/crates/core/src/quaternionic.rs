//! The quaternionic structure of `H^n = R^{4n}`: right multiplication by
//! `i`, `j`, `k`, the fundamental 2-forms, the Kraines 4-form `Ω`, and the
//! operators `L = Ω ∧ ·` and its adjoint `Λ`.
//!
//! Generator `4α + c` is component `c ∈ {a, b, c, d}` of coordinate `α`.

use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::algebra::{rat, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::multivector::{blade_basis, check_n, merge_sign, Blade, Form, LinearMap};

/// Which of the three complex structures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    I,
    J,
    K,
}

/// Right multiplication `x ↦ x·u` for `u ∈ {i, j, k}` as 4×4 blocks acting
/// on `(x0, x1, x2, x3)`, stored as `(row, col, sign)` entries.
fn block_entries(s: Structure) -> [(usize, usize, i64); 4] {
    match s {
        // (−x1, x0, x3, −x2)
        Structure::I => [(0, 1, -1), (1, 0, 1), (2, 3, 1), (3, 2, -1)],
        // (−x2, −x3, x0, x1)
        Structure::J => [(0, 2, -1), (1, 3, -1), (2, 0, 1), (3, 1, 1)],
        // (−x3, x2, −x1, x0)
        Structure::K => [(0, 3, -1), (1, 2, 1), (2, 1, -1), (3, 0, 1)],
    }
}

#[derive(Clone, Debug)]
pub struct QuatFrame {
    n: usize,
    i: LinearMap,
    j: LinearMap,
    k: LinearMap,
}

impl QuatFrame {
    pub fn standard(n: usize) -> Result<QuatFrame> {
        check_n(n)?;
        let build = |s: Structure| {
            let mut m = RatMatrix::zeros(4 * n, 4 * n);
            for alpha in 0..n {
                for (r, c, v) in block_entries(s) {
                    m.set(4 * alpha + r, 4 * alpha + c, rat(v));
                }
            }
            LinearMap::new(n, m)
        };
        Ok(QuatFrame {
            n,
            i: build(Structure::I)?,
            j: build(Structure::J)?,
            k: build(Structure::K)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn structure(&self, s: Structure) -> &LinearMap {
        match s {
            Structure::I => &self.i,
            Structure::J => &self.j,
            Structure::K => &self.k,
        }
    }

    /// `Ω_A(u, v) = ⟨A u, v⟩`, so the coefficient of `e_r ∧ e_c` (r < c) is `A[c][r]`.
    pub fn fundamental_two_form(&self, s: Structure) -> Form {
        let a = self.structure(s).matrix();
        let dim = 4 * self.n;
        let mut terms = Vec::new();
        for r in 0..dim {
            for c in r + 1..dim {
                let x = a.get(c, r);
                if !x.is_zero() {
                    terms.push((Blade::generator(r).union(Blade::generator(c)), x.clone()));
                }
            }
        }
        Form::from_terms(self.n, 2, terms).expect("indices are in range")
    }

    pub fn fundamental_two_forms(&self) -> (Form, Form, Form) {
        (
            self.fundamental_two_form(Structure::I),
            self.fundamental_two_form(Structure::J),
            self.fundamental_two_form(Structure::K),
        )
    }
}

/// The Kraines form together with its building blocks and the lazily
/// calibrated star-formula sign for `Λ` in each degree.
#[derive(Debug)]
pub struct KrainesData {
    frame: QuatFrame,
    omega_i: Form,
    omega_j: Form,
    omega_k: Form,
    omega: Form,
    star_signs: Vec<OnceLock<Result<i8>>>,
}

impl KrainesData {
    pub fn new(n: usize) -> Result<KrainesData> {
        Ok(Self::from_frame(QuatFrame::standard(n)?))
    }

    pub fn from_frame(frame: QuatFrame) -> KrainesData {
        let (omega_i, omega_j, omega_k) = frame.fundamental_two_forms();
        let square = |w: &Form| w.wedge(w).expect("4 <= 4n");
        let omega = square(&omega_i)
            .add(&square(&omega_j))
            .and_then(|s| s.add(&square(&omega_k)))
            .expect("same degree");
        let star_signs = (0..=4 * frame.n()).map(|_| OnceLock::new()).collect();
        KrainesData {
            frame,
            omega_i,
            omega_j,
            omega_k,
            omega,
            star_signs,
        }
    }

    pub fn n(&self) -> usize {
        self.frame.n()
    }

    pub fn dim(&self) -> usize {
        4 * self.n()
    }

    pub fn frame(&self) -> &QuatFrame {
        &self.frame
    }

    pub fn omega_i(&self) -> &Form {
        &self.omega_i
    }

    pub fn omega_j(&self) -> &Form {
        &self.omega_j
    }

    pub fn omega_k(&self) -> &Form {
        &self.omega_k
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    /// Coefficient of the volume blade in `Ω^n`.
    pub fn omega_power_volume_coeff(&self) -> Rational {
        let mut acc = Form::scalar(self.n(), Rational::one()).expect("valid n");
        for _ in 0..self.n() {
            acc = self.omega.wedge(&acc).expect("degree stays <= 4n");
        }
        acc.coeff(Blade::volume(self.dim()))
    }

    fn check(&self, a: &Form) -> Result<()> {
        if a.n() != self.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: a.n(),
            });
        }
        Ok(())
    }

    /// `L a = Ω ∧ a`.
    #[allow(non_snake_case)]
    pub fn L(&self, a: &Form) -> Result<Form> {
        self.check(a)?;
        self.omega.wedge(a)
    }

    /// Metric adjoint of `L`: `⟨L a, b⟩ = ⟨a, Λ b⟩`.
    ///
    /// `Λ e_T = Σ_{U ⊆ T} Ω_U · sign(U, T∖U) e_{T∖U}` over the blades `U` of `Ω`.
    #[allow(non_snake_case)]
    pub fn Lambda(&self, b: &Form) -> Result<Form> {
        self.check(b)?;
        if b.degree() < 4 {
            return Err(Error::DegreeUnderflow {
                degree: b.degree(),
                min: 4,
            });
        }
        let mut terms = Vec::new();
        for (t, ct) in b.terms() {
            for (u, cu) in self.omega.terms() {
                if !u.is_subset_of(t) {
                    continue;
                }
                let rest = t.without(u);
                let mut c = ct * cu;
                if merge_sign(u, rest) < 0 {
                    c = -c;
                }
                terms.push((rest, c));
            }
        }
        Form::from_terms(self.n(), b.degree() - 4, terms)
    }

    /// `*(Ω ∧ *a)`, the star expression that agrees with `Λ` up to a sign.
    pub fn lambda_star_formula(&self, a: &Form) -> Result<Form> {
        self.check(a)?;
        if a.degree() < 4 {
            return Err(Error::DegreeUnderflow {
                degree: a.degree(),
                min: 4,
            });
        }
        Ok(self.omega.wedge(&a.hodge_star())?.hodge_star())
    }

    /// The sign `ε(p)` with `Λ = ε(p) · *(Ω ∧ *·)` on degree `p`, checked on
    /// every basis blade.
    pub fn star_sign(&self, p: usize) -> Result<i8> {
        if p < 4 || p > self.dim() {
            return Err(Error::DegreeOutOfRange {
                degree: p,
                max: self.dim(),
            });
        }
        self.star_signs[p]
            .get_or_init(|| self.calibrate_star_sign(p))
            .clone()
    }

    fn calibrate_star_sign(&self, p: usize) -> Result<i8> {
        let mut sign: Option<i8> = None;
        for b in blade_basis(self.dim(), p) {
            let e = Form::blade(self.n(), b, Rational::one())?;
            let adj = self.Lambda(&e)?;
            let star = self.lambda_star_formula(&e)?;
            let this = if adj == star {
                if adj.is_zero() {
                    continue;
                }
                1
            } else if adj == star.neg() {
                -1
            } else {
                return Err(Error::SignInconsistent { degree: p });
            };
            match sign {
                None => sign = Some(this),
                Some(s) if s != this => return Err(Error::SignInconsistent { degree: p }),
                _ => {}
            }
        }
        Ok(sign.unwrap_or(1))
    }
}
