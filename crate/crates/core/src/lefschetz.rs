//! Operator matrices of `L` and `Λ`, effective forms, and the Lefschetz-type
//! decomposition `a = Σ_i L^i ω_e^{p−4i}` with each `ω_e` annihilated by `Λ`.
//!
//! The decomposition splits off the orthogonal complement of `L Λ^{p−4}` by
//! solving the normal equations `LᵀL η = Lᵀ a` exactly and recursing on `η`.

use std::sync::OnceLock;

use num_integer::binomial;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::multivector::{DegreeBasis, Form};
use crate::quaternionic::KrainesData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Operator {
    L,
    Lambda,
    /// Group-averaging projector (see `symmetry`).
    Average,
}

/// Matrix of `L` or `Λ` between canonical (lexicographic) blade bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    pub operator: Operator,
    pub source: usize,
    pub target: usize,
    pub matrix: RatMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub degree: usize,
    /// `[ω_e^p, ω_e^{p−4}, …]`; component `i` is multiplied by `L^i`.
    pub components: Vec<Form>,
    pub residual: Form,
    /// Degrees at which `LᵀL` was singular and the minimum-norm solution was used.
    pub singular_steps: Vec<usize>,
}

impl Decomposition {
    /// True when every step solved a nonsingular system, so the components
    /// are the unique ones.
    pub fn is_unique(&self) -> bool {
        self.singular_steps.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRow {
    pub degree: usize,
    pub dim: usize,
    pub rank_l: usize,
    pub dim_effective: usize,
    pub injective: bool,
    /// `dim_effective(p) + rank(L on Λ^{p−4}) == dim(p)`, with the two sides
    /// computed from independently assembled `Λ` and `L` matrices.
    pub bookkeeping: bool,
}

struct Step {
    /// `L: Λ^{p−4} → Λ^p`.
    l: RatMatrix,
    gram: RatMatrix,
    gram_inv: Option<RatMatrix>,
}

/// Kraines data plus per-degree bases and cached normal-equation solvers.
pub struct Lefschetz {
    kd: KrainesData,
    bases: Vec<DegreeBasis>,
    steps: Vec<OnceLock<Step>>,
}

impl Lefschetz {
    pub fn new(n: usize) -> Result<Lefschetz> {
        Ok(Self::from_kraines(KrainesData::new(n)?))
    }

    pub fn from_kraines(kd: KrainesData) -> Lefschetz {
        let dim = kd.dim();
        let bases = (0..=dim).map(|p| DegreeBasis::new(dim, p)).collect();
        let steps = (0..=dim).map(|_| OnceLock::new()).collect();
        Lefschetz { kd, bases, steps }
    }

    pub fn kraines(&self) -> &KrainesData {
        &self.kd
    }

    pub fn n(&self) -> usize {
        self.kd.n()
    }

    pub fn dim(&self) -> usize {
        self.kd.dim()
    }

    pub fn basis(&self, p: usize) -> &DegreeBasis {
        &self.bases[p]
    }

    pub fn basis_form(&self, p: usize, i: usize) -> Form {
        Form::blade(self.n(), self.bases[p].blade(i), Rational::from_integer(1.into()))
            .expect("basis blade is valid")
    }

    fn check_degree(&self, p: usize) -> Result<()> {
        if p > self.dim() {
            return Err(Error::DegreeOutOfRange {
                degree: p,
                max: self.dim(),
            });
        }
        Ok(())
    }

    pub fn operator_matrix(&self, op: Operator, p: usize) -> Result<OperatorMatrix> {
        self.check_degree(p)?;
        let target = match op {
            Operator::L if p + 4 <= self.dim() => p + 4,
            Operator::Lambda if p >= 4 => p - 4,
            Operator::Average => {
                return Err(Error::Shape("averaging projectors are built by a group".into()))
            }
            _ => {
                return Err(Error::DegreeOutOfRange {
                    degree: p,
                    max: self.dim(),
                })
            }
        };
        let src = &self.bases[p];
        let dst = &self.bases[target];
        let mut m = RatMatrix::zeros(dst.len(), src.len());
        for (j, _) in src.blades().iter().enumerate() {
            let e = self.basis_form(p, j);
            let image = match op {
                Operator::L => self.kd.L(&e)?,
                Operator::Lambda => self.kd.Lambda(&e)?,
                Operator::Average => unreachable!("rejected above"),
            };
            for (b, c) in image.terms() {
                let i = dst.position(b).expect("image lies in the target degree");
                m.set(i, j, c.clone());
            }
        }
        Ok(OperatorMatrix {
            operator: op,
            source: p,
            target,
            matrix: m,
        })
    }

    fn step(&self, p: usize) -> &Step {
        self.steps[p].get_or_init(|| {
            let l = self
                .operator_matrix(Operator::L, p - 4)
                .expect("p - 4 + 4 <= 4n")
                .matrix;
            let gram = l.transpose().mul(&l).expect("shapes agree");
            let gram_inv = gram.inverse();
            Step { l, gram, gram_inv }
        })
    }

    /// Basis of `ker Λ` in degree `p` (all of `Λ^p` when `p < 4`).
    pub fn effective_basis(&self, p: usize) -> Result<Vec<Form>> {
        self.check_degree(p)?;
        if p < 4 {
            return Ok((0..self.bases[p].len()).map(|i| self.basis_form(p, i)).collect());
        }
        let lambda = self.operator_matrix(Operator::Lambda, p)?.matrix;
        Ok(lambda
            .kernel_basis()
            .into_iter()
            .map(|v| Form::from_vector(self.n(), p, &self.bases[p], &v))
            .collect())
    }

    pub fn is_effective(&self, a: &Form) -> Result<bool> {
        if a.degree() < 4 {
            return Ok(true);
        }
        Ok(self.kd.Lambda(a)?.is_zero())
    }

    /// Highest degree covered by the decomposition theorem, `n + 1`.
    pub fn theorem_limit(&self) -> usize {
        self.n() + 1
    }

    pub fn decompose(&self, a: &Form, force: bool) -> Result<Decomposition> {
        if a.n() != self.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: a.n(),
            });
        }
        let p = a.degree();
        if p > self.theorem_limit() && !force {
            return Err(Error::OutOfTheoremRange {
                degree: p,
                limit: self.theorem_limit(),
            });
        }
        let mut components = Vec::new();
        let mut singular_steps = Vec::new();
        let mut current = a.clone();
        while current.degree() >= 4 {
            let q = current.degree();
            let step = self.step(q);
            let rhs = self.kd.Lambda(&current)?.to_vector(&self.bases[q - 4]);
            let eta = match &step.gram_inv {
                Some(inv) => inv.mul_vec(&rhs)?,
                None => {
                    singular_steps.push(q);
                    step.gram
                        .solve_min_norm(&rhs)
                        .ok_or(Error::SingularNormalEquations)?
                }
            };
            let eta = Form::from_vector(self.n(), q - 4, &self.bases[q - 4], &eta);
            let l_eta = Form::from_vector(
                self.n(),
                q,
                &self.bases[q],
                &step.l.mul_vec(&eta.to_vector(&self.bases[q - 4]))?,
            );
            components.push(current.sub(&l_eta)?);
            current = eta;
        }
        components.push(current);
        let residual = a.sub(&self.reconstruct(p, &components)?)?;
        Ok(Decomposition {
            degree: p,
            components,
            residual,
            singular_steps,
        })
    }

    /// `Σ_i L^i components[i]`.
    pub fn reconstruct(&self, degree: usize, components: &[Form]) -> Result<Form> {
        let mut total = Form::zero(self.n(), degree)?;
        for (i, c) in components.iter().enumerate() {
            let mut x = c.clone();
            for _ in 0..i {
                x = self.kd.L(&x)?;
            }
            if x.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: x.degree(),
                });
            }
            total = total.add(&x)?;
        }
        Ok(total)
    }

    pub fn rank_table(&self, max_degree: usize) -> Result<Vec<RankRow>> {
        self.check_degree(max_degree)?;
        let rank_l = |p: usize| -> Result<usize> {
            if p + 4 > self.dim() {
                return Ok(0);
            }
            Ok(self.operator_matrix(Operator::L, p)?.matrix.rank())
        };
        let mut rows = Vec::with_capacity(max_degree + 1);
        for p in 0..=max_degree {
            let dim = binomial(self.dim(), p);
            let rl = rank_l(p)?;
            let (dim_effective, bookkeeping) = if p < 4 {
                (dim, true)
            } else {
                let lambda_rank = self.operator_matrix(Operator::Lambda, p)?.matrix.rank();
                let eff = dim - lambda_rank;
                (eff, eff + rank_l(p - 4)? == dim)
            };
            rows.push(RankRow {
                degree: p,
                dim,
                rank_l: rl,
                dim_effective,
                injective: rl == dim,
                bookkeeping,
            });
        }
        Ok(rows)
    }
}

/// Renders rank rows as CSV: `degree,dim,rank_L,dim_effective,injective`.
pub fn rank_table_csv(rows: &[RankRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["degree", "dim", "rank_L", "dim_effective", "injective"])
        .expect("in-memory write");
    for r in rows {
        w.write_record([
            r.degree.to_string(),
            r.dim.to_string(),
            r.rank_l.to_string(),
            r.dim_effective.to_string(),
            r.injective.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush to Vec")).expect("ascii output")
}

/// Checks `⟨ω, L η⟩ = 0` for the given form against every basis element of
/// `Λ^{p−4}`.
pub fn orthogonal_to_l_image(lef: &Lefschetz, omega: &Form) -> Result<bool> {
    let p = omega.degree();
    if p < 4 {
        return Ok(true);
    }
    for i in 0..lef.basis(p - 4).len() {
        let l_eta = lef.kraines().L(&lef.basis_form(p - 4, i))?;
        if !omega.inner(&l_eta)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
