use num_integer::binomial;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::{RatMatrix, Rational, RationalString};
use crate::error::{Error, Result};
use crate::lefschetz::{Decomposition, Lefschetz};
use crate::multivector::{DegreeBasis, Form};
use crate::report::{Convention, CONVENTION};
use crate::symmetry::FiniteGroup;

/// Dense linear foliation of `T^{p+4q}` whose basic forms are the constant
/// forms on the transverse `R^{4q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FlatFoliationSpec {
    pub leaf_dim: usize,
    pub q: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Top basic Betti number is nonzero.
    Taut { top_degree: usize, top_betti: usize },
    /// Rank of `L: H^k → H^{k+4}`. Injectivity is asserted only when
    /// `asserted` is set (`k < q`).
    LInjectivity {
        degree: usize,
        dim: usize,
        rank: usize,
        injective: bool,
        asserted: bool,
        /// `L` maps the subcomplex into itself (always true without a group).
        preserves_subcomplex: bool,
    },
    /// Every basis element of `H^k` decomposed with zero residual.
    Decomposition {
        degree: usize,
        basis_size: usize,
        residual_free: bool,
        effective: bool,
        unique: bool,
        /// Components stay in the subcomplex (always true without a group).
        components_in_subcomplex: bool,
        dim_effective: usize,
        image_rank: usize,
        bookkeeping: bool,
    },
    /// `max |P² − P|` of the averaging projector.
    ProjectorIdempotence { degree: usize, residue: RationalString },
    /// `Ω` is invariant, so `B^4 ≥ 1 = B^0`.
    OmegaInvariant { invariant: bool, b0: usize, b4: usize },
}

impl Certificate {
    pub fn holds(&self) -> bool {
        match self {
            Certificate::Taut { top_betti, .. } => *top_betti != 0,
            Certificate::LInjectivity {
                injective,
                asserted,
                preserves_subcomplex,
                ..
            } => *preserves_subcomplex && (!asserted || *injective),
            Certificate::Decomposition {
                residual_free,
                effective,
                unique,
                components_in_subcomplex,
                bookkeeping,
                ..
            } => *residual_free && *effective && *unique && *components_in_subcomplex && *bookkeeping,
            Certificate::ProjectorIdempotence { residue, .. } => residue.0.is_zero(),
            Certificate::OmegaInvariant { invariant, b0, b4 } => *invariant && *b0 == 1 && *b4 >= 1,
        }
    }
}

/// `B^i ≤ B^{i+4} ≤ … ≤ B^{i+4r}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainCheck {
    pub i: usize,
    pub r: usize,
    pub betti: Vec<usize>,
    /// `i + 4r ≤ q + 1`; only these chains are asserted.
    pub in_range: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyReport {
    pub model: &'static str,
    pub q: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
    pub betti: Vec<usize>,
    pub inequalities: Vec<ChainCheck>,
    pub certificates: Vec<Certificate>,
    pub convention: Convention,
}

impl CohomologyReport {
    fn new(model: &'static str, q: usize, group_order: Option<usize>, betti: Vec<usize>) -> Self {
        let inequalities = kraines_inequalities(&betti, q);
        CohomologyReport {
            model,
            q,
            group_order,
            betti,
            inequalities,
            certificates: Vec::new(),
            convention: CONVENTION,
        }
    }

    /// Every certificate holds and every in-range chain holds.
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(Certificate::holds)
            && self.inequalities.iter().all(|c| !c.in_range || c.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}

/// Every chain `B^i ≤ … ≤ B^{i+4r}` with `i ∈ 0..4`, `r ≥ 1` that fits in the
/// Betti list, flagged by whether it lies in the range `i + 4r ≤ q + 1`.
pub fn kraines_inequalities(betti: &[usize], q: usize) -> Vec<ChainCheck> {
    let mut out = Vec::new();
    for i in 0..4 {
        let mut r = 1;
        while i + 4 * r < betti.len() {
            let chain: Vec<usize> = (0..=r).map(|s| betti[i + 4 * s]).collect();
            out.push(ChainCheck {
                i,
                r,
                holds: chain.windows(2).all(|w| w[0] <= w[1]),
                betti: chain,
                in_range: i + 4 * r <= q + 1,
            });
            r += 1;
        }
    }
    out
}

fn rank_of(forms: &[Form], basis: &DegreeBasis) -> usize {
    if forms.is_empty() {
        return 0;
    }
    let cols: Vec<Vec<Rational>> = forms.iter().map(|f| f.to_vector(basis)).collect();
    RatMatrix::from_columns(basis.len(), &cols)
        .expect("consistent lengths")
        .rank()
}

/// Per-degree bases of a subcomplex of constant forms, optionally the
/// invariants of a group.
struct Subcomplex<'a> {
    lef: &'a Lefschetz,
    bases: Vec<Vec<Form>>,
    group: Option<&'a FiniteGroup>,
}

impl Subcomplex<'_> {
    fn contains(&self, f: &Form) -> Result<bool> {
        match self.group {
            None => Ok(true),
            Some(g) => g.is_invariant(f),
        }
    }

    fn l_injectivity(&self, k: usize, q: usize) -> Result<Certificate> {
        let kd = self.lef.kraines();
        let images = self.bases[k]
            .iter()
            .map(|b| kd.L(b))
            .collect::<Result<Vec<_>>>()?;
        let mut preserves = true;
        for f in &images {
            preserves &= self.contains(f)?;
        }
        let rank = rank_of(&images, self.lef.basis(k + 4));
        Ok(Certificate::LInjectivity {
            degree: k,
            dim: self.bases[k].len(),
            rank,
            injective: rank == self.bases[k].len(),
            asserted: k < q,
            preserves_subcomplex: preserves,
        })
    }

    fn decompose_all(&self, k: usize) -> Result<Vec<Decomposition>> {
        self.bases[k]
            .iter()
            .map(|b| self.lef.decompose(b, true))
            .collect()
    }

    fn decomposition(&self, k: usize) -> Result<Certificate> {
        let decs = self.decompose_all(k)?;
        let mut residual_free = true;
        let mut effective = true;
        let mut unique = true;
        let mut inside = true;
        for d in &decs {
            residual_free &= d.residual.is_zero();
            unique &= d.is_unique();
            for c in &d.components {
                effective &= self.lef.is_effective(c)?;
                inside &= self.contains(c)?;
            }
        }
        let kd = self.lef.kraines();
        let (dim_effective, image_rank) = if k < 4 {
            (self.bases[k].len(), 0)
        } else {
            let lam = self.bases[k]
                .iter()
                .map(|b| kd.Lambda(b))
                .collect::<Result<Vec<_>>>()?;
            let lifted = self.bases[k - 4]
                .iter()
                .map(|b| kd.L(b))
                .collect::<Result<Vec<_>>>()?;
            (
                self.bases[k].len() - rank_of(&lam, self.lef.basis(k - 4)),
                rank_of(&lifted, self.lef.basis(k)),
            )
        };
        Ok(Certificate::Decomposition {
            degree: k,
            basis_size: decs.len(),
            residual_free,
            effective,
            unique,
            components_in_subcomplex: inside,
            dim_effective,
            image_rank,
            bookkeeping: dim_effective + image_rank == self.bases[k].len(),
        })
    }

    /// Injectivity for every `k` with `k + 4 ≤ 4q` and decompositions for
    /// every `k ≤ min(q + 3, 4q)`.
    fn certificates(&self, q: usize) -> Result<Vec<Certificate>> {
        let top = 4 * q;
        let mut out = Vec::new();
        for k in 0..=top.saturating_sub(4) {
            out.push(self.l_injectivity(k, q)?);
        }
        for k in 0..=(q + 3).min(top) {
            out.push(self.decomposition(k)?);
        }
        Ok(out)
    }
}

/// The basic cohomology of a flat quaternionic foliation: `H^k ≅ Λ^k` with
/// zero differential.
pub struct FlatModel {
    spec: FlatFoliationSpec,
    lef: Lefschetz,
}

impl FlatModel {
    pub fn new(spec: FlatFoliationSpec) -> Result<FlatModel> {
        Ok(FlatModel {
            spec,
            lef: Lefschetz::new(spec.q)?,
        })
    }

    pub fn spec(&self) -> FlatFoliationSpec {
        self.spec
    }

    pub fn lefschetz(&self) -> &Lefschetz {
        &self.lef
    }

    fn q(&self) -> usize {
        self.spec.q
    }

    pub fn basic_betti(&self) -> Vec<usize> {
        basic_betti_numbers(self.q())
    }

    fn subcomplex(&self) -> Subcomplex<'_> {
        let bases = (0..=4 * self.q())
            .map(|p| {
                (0..self.lef.basis(p).len())
                    .map(|i| self.lef.basis_form(p, i))
                    .collect()
            })
            .collect();
        Subcomplex {
            lef: &self.lef,
            bases,
            group: None,
        }
    }

    fn check_injectivity_degree(&self, k: usize) -> Result<()> {
        if k + 4 > 4 * self.q() {
            return Err(Error::DegreeOutOfRange {
                degree: k,
                max: 4 * self.q() - 4,
            });
        }
        Ok(())
    }

    fn check_theorem_degree(&self, k: usize) -> Result<()> {
        if k > self.q() + 3 || k > 4 * self.q() {
            return Err(Error::OutOfTheoremRange {
                degree: k,
                limit: (self.q() + 3).min(4 * self.q()),
            });
        }
        Ok(())
    }

    /// Betti numbers, the taut certificate and the inequality chains.
    pub fn betti_report(&self) -> CohomologyReport {
        let betti = self.basic_betti();
        let top = 4 * self.q();
        let mut report = CohomologyReport::new("flat_foliation", self.q(), None, betti.clone());
        report.certificates.push(Certificate::Taut {
            top_degree: top,
            top_betti: betti[top],
        });
        report
    }

    pub fn l_injectivity(&self, k: usize) -> Result<Certificate> {
        self.check_injectivity_degree(k)?;
        self.subcomplex().l_injectivity(k, self.q())
    }

    /// Decomposes every basis blade of `H^k`, `k ≤ q + 3`.
    pub fn decomposition(&self, k: usize) -> Result<Certificate> {
        self.check_theorem_degree(k)?;
        self.subcomplex().decomposition(k)
    }

    pub fn decompose_basis(&self, k: usize) -> Result<Vec<Decomposition>> {
        self.check_theorem_degree(k)?;
        self.subcomplex().decompose_all(k)
    }

    /// Betti report plus every injectivity and decomposition certificate.
    pub fn full_report(&self) -> Result<CohomologyReport> {
        let mut report = self.betti_report();
        report
            .certificates
            .extend(self.subcomplex().certificates(self.q())?);
        Ok(report)
    }
}

/// `C(4q, k)` for `k = 0..=4q`.
pub fn basic_betti_numbers(q: usize) -> Vec<usize> {
    (0..=4 * q).map(|k| binomial(4 * q, k)).collect()
}

/// Global quotient `T^{4q}/Γ` by a lattice-preserving finite group.
pub struct OrbifoldQuotient {
    group: FiniteGroup,
    lef: Lefschetz,
}

impl OrbifoldQuotient {
    /// Fails with `LatticeViolation` unless every element and its inverse
    /// has an integer matrix.
    pub fn new(group: FiniteGroup) -> Result<OrbifoldQuotient> {
        for (index, g) in group.elements().iter().enumerate() {
            if !g.is_integral() || !g.inverse().is_integral() {
                return Err(Error::LatticeViolation { index });
            }
        }
        let lef = Lefschetz::new(group.n())?;
        Ok(OrbifoldQuotient { group, lef })
    }

    pub fn q(&self) -> usize {
        self.group.n()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn lefschetz(&self) -> &Lefschetz {
        &self.lef
    }

    /// Betti numbers of the invariant constant forms with projector,
    /// `Ω`-invariance, injectivity and decomposition certificates.
    pub fn betti_report(&self) -> Result<CohomologyReport> {
        let q = self.q();
        let mut bases = Vec::with_capacity(4 * q + 1);
        let mut certificates = Vec::new();
        for p in 0..=4 * q {
            let proj = self.group.averaging_projector(p)?.matrix;
            certificates.push(Certificate::ProjectorIdempotence {
                degree: p,
                residue: RationalString(max_abs(&proj.mul(&proj)?.sub(&proj)?)),
            });
            bases.push(self.group.invariant_basis(p)?);
        }
        let betti: Vec<usize> = bases.iter().map(Vec::len).collect();
        certificates.push(Certificate::OmegaInvariant {
            invariant: self.group.is_invariant(self.lef.kraines().omega())?,
            b0: betti[0],
            b4: betti[4],
        });
        let sub = Subcomplex {
            lef: &self.lef,
            bases,
            group: Some(&self.group),
        };
        certificates.extend(sub.certificates(q)?);
        let mut report = CohomologyReport::new("orbifold", q, Some(self.group.order()), betti);
        report.certificates = certificates;
        Ok(report)
    }
}

fn max_abs(m: &RatMatrix) -> Rational {
    m.entries()
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(Rational::zero)
}
