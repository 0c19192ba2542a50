use num_integer::binomial;
use num_traits::Zero;
use serde_json::json;

use super::cohomology::{basic_betti_numbers, FlatModel};
use super::fourier::{frequency_box, quadratic_certificate_modes, FourierForm, Freq};

use crate::algebra::{rat, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::lefschetz::{Lefschetz, Operator};
use crate::multivector::{check_n, DegreeBasis, Form};
use crate::report::Check;
use crate::sampling::FormSampler;
use crate::symmetry::FiniteGroup;

/// Boxes with at most this many modes are checked mode by mode.
pub const EXHAUSTIVE_MODES: usize = 1000;

fn mode_count(dim: usize, cutoff: u32) -> usize {
    (2 * cutoff as usize + 1)
        .checked_pow(dim as u32)
        .unwrap_or(usize::MAX)
}

/// Sampled `d∘d = 0` on degrees `0..=4q−2`.
pub fn d_squared(s: &mut FormSampler, q: usize, cutoff: u32, samples: usize) -> Result<Check> {
    check_n(q)?;
    let mut failures = 0;
    for _ in 0..samples {
        let p = s.degree(4 * q - 2);
        let a = FourierForm::sample(s, q, p, cutoff)?;
        if !a.d()?.d()?.is_zero() {
            failures += 1;
        }
    }
    Ok(Check::new(
        "d_squared_zero",
        failures == 0,
        json!({ "q": q, "cutoff": cutoff, "samples": samples, "failures": failures }),
    ))
}

/// Sampled `δ∘δ = 0` on degrees `2..=4q`.
pub fn delta_squared(s: &mut FormSampler, q: usize, cutoff: u32, samples: usize) -> Result<Check> {
    check_n(q)?;
    let mut failures = 0;
    for _ in 0..samples {
        let p = 2 + s.degree(4 * q - 2);
        let a = FourierForm::sample(s, q, p, cutoff)?;
        if !a.delta()?.delta()?.is_zero() {
            failures += 1;
        }
    }
    Ok(Check::new(
        "delta_squared_zero",
        failures == 0,
        json!({ "q": q, "cutoff": cutoff, "samples": samples, "failures": failures }),
    ))
}

/// Sampled `⟨d a, b⟩ = ⟨a, δ b⟩`.
pub fn adjointness(s: &mut FormSampler, q: usize, cutoff: u32, samples: usize) -> Result<Check> {
    check_n(q)?;
    let mut failures = 0;
    let mut nonzero = 0;
    for _ in 0..samples {
        let p = s.degree(4 * q - 1);
        let a = FourierForm::sample(s, q, p, cutoff)?;
        let mut b = FourierForm::sample(s, q, p + 1, cutoff)?;
        // Pad b with d a so that the pairing is not trivially zero.
        b = b.add(&a.d()?)?;
        let lhs = a.d()?.pairing(&b)?;
        let rhs = a.pairing(&b.delta()?)?;
        if lhs != rhs {
            failures += 1;
        }
        if !lhs.is_zero() {
            nonzero += 1;
        }
    }
    Ok(Check::new(
        "d_delta_adjoint",
        failures == 0,
        json!({
            "q": q, "cutoff": cutoff, "samples": samples,
            "failures": failures, "nonzero_pairings": nonzero,
        }),
    ))
}

/// Matrix of `Δ` on mode `ξ` in degree `k` (columns are `Δ(e_ξ e_S)`),
/// or `None` if an entry has a nonzero imaginary part or leaves the mode.
pub fn laplacian_mode_matrix(q: usize, xi: &Freq, k: usize, cutoff: u32) -> Result<Option<RatMatrix>> {
    let basis = DegreeBasis::new(4 * q, k);
    let mut m = RatMatrix::zeros(basis.len(), basis.len());
    for j in 0..basis.len() {
        let e = Form::blade(q, basis.blade(j), rat(1))?;
        let lap = FourierForm::mode(xi.clone(), &e, cutoff)?.laplacian()?;
        for (x, b, c) in lap.terms() {
            if x != xi || !c.im.is_zero() {
                return Ok(None);
            }
            m.set(basis.position(b).expect("degree is preserved"), j, c.re.clone());
        }
    }
    Ok(Some(m))
}

/// `Some(λ)` when `Δ` acts on mode `ξ` in degree `k` as `λ` times the
/// identity, checked on every basis blade.
pub fn laplacian_mode_scalar(q: usize, xi: &Freq, k: usize, cutoff: u32) -> Result<Option<Rational>> {
    let basis = DegreeBasis::new(4 * q, k);
    let mut scalar: Option<Rational> = None;
    for &b in basis.blades() {
        let e = FourierForm::mode(xi.clone(), &Form::blade(q, b, rat(1))?, cutoff)?;
        let lap = e.laplacian()?;
        let c = lap.coeff(xi, b);
        if !c.im.is_zero() || lap.len() > usize::from(!c.is_zero()) {
            return Ok(None);
        }
        match &scalar {
            None => scalar = Some(c.re),
            Some(s) if *s == c.re => {}
            Some(_) => return Ok(None),
        }
    }
    Ok(scalar)
}

fn modes_for(q: usize, cutoff: u32) -> (Vec<Freq>, &'static str) {
    if mode_count(4 * q, cutoff) <= EXHAUSTIVE_MODES {
        (frequency_box(4 * q, cutoff), "exhaustive")
    } else if cutoff == 0 {
        (vec![vec![0; 4 * q]], "exhaustive")
    } else {
        (quadratic_certificate_modes(4 * q), "quadratic_certificate")
    }
}

fn norm_sqr(xi: &[i64]) -> Rational {
    rat(xi.iter().map(|x| x * x).sum())
}

/// `Δ = |ξ|²` on every blade of every degree at the chosen modes, and on
/// sampled forms.
///
/// Small boxes are checked mode by mode. Larger boxes use the modes `0`,
/// `e_j`, `e_j + e_k`: each entry of the mode matrix of `Δ` is a quadratic
/// form in `ξ`, so agreement there gives agreement on all of `Z^{4q}`.
pub fn weitzenbock(s: &mut FormSampler, q: usize, cutoff: u32, samples: usize) -> Result<Check> {
    check_n(q)?;
    let (modes, strategy) = modes_for(q, cutoff);
    let mut failures = Vec::new();
    for xi in &modes {
        let expected = norm_sqr(xi);
        for k in 0..=4 * q {
            if laplacian_mode_scalar(q, xi, k, cutoff)?.as_ref() != Some(&expected) {
                failures.push(json!({ "freq": xi, "degree": k }));
            }
        }
    }
    let mut sample_failures = 0;
    for _ in 0..samples {
        let p = s.degree(4 * q);
        let a = FourierForm::sample(s, q, p, cutoff)?;
        if a.laplacian()? != a.frequency_multiplier() {
            sample_failures += 1;
        }
    }
    Ok(Check::new(
        "weitzenbock_flat",
        failures.is_empty() && sample_failures == 0,
        json!({
            "q": q, "cutoff": cutoff, "strategy": strategy,
            "modes_checked": modes.len(), "mode_failures": failures,
            "samples": samples, "sample_failures": sample_failures,
        }),
    ))
}

/// `dim ker Δ` per degree at the given cutoff, compared to `C(4q, k)`.
///
/// Nullities are computed on the same modes as [`weitzenbock`]; any
/// remaining mode has symbol `|ξ|² ≠ 0` by that check. A mode on which `Δ`
/// is a verified scalar has nullity `dim` or `0`; otherwise the rank of its
/// matrix is computed.
pub fn harmonic_dimensions(q: usize, cutoff: u32) -> Result<Check> {
    check_n(q)?;
    let (modes, strategy) = modes_for(q, cutoff);
    let mut dims = vec![0usize; 4 * q + 1];
    let mut symbol_ok = true;
    for xi in &modes {
        for (k, d) in dims.iter_mut().enumerate() {
            match laplacian_mode_scalar(q, xi, k, cutoff)? {
                Some(l) if l.is_zero() => *d += binomial(4 * q, k),
                Some(_) => {}
                None => match laplacian_mode_matrix(q, xi, k, cutoff)? {
                    Some(m) => *d += m.cols() - m.rank(),
                    None => symbol_ok = false,
                },
            }
        }
    }
    let betti = basic_betti_numbers(q);
    Ok(Check::new(
        "harmonic_equals_constants",
        symbol_ok && dims == betti,
        json!({
            "q": q, "cutoff": cutoff, "strategy": strategy,
            "kernel_dims": dims, "basic_betti": betti,
        }),
    ))
}

/// Projector on blade coefficients, either an explicit matrix or the
/// orthogonal projector onto (or away from) the span of independent columns
/// `B`, applied as `B (BᵀB)⁻¹ Bᵀ v`.
#[derive(Clone, Debug)]
pub enum Projector {
    Matrix(RatMatrix),
    Span {
        basis: RatMatrix,
        gram_inv: RatMatrix,
        complement: bool,
    },
}

impl Projector {
    /// Orthogonal projector onto the column space of `m`, or onto its
    /// orthogonal complement.
    pub fn column_space(m: &RatMatrix, complement: bool) -> Projector {
        let cols: Vec<Vec<Rational>> = m.independent_columns().into_iter().map(|c| m.column(c)).collect();
        let basis = RatMatrix::from_columns(m.rows(), &cols).expect("consistent column lengths");
        let gram_inv = basis
            .transpose()
            .mul(&basis)
            .expect("shapes agree")
            .inverse()
            .expect("independent columns have an invertible Gram matrix");
        Projector::Span {
            basis,
            gram_inv,
            complement,
        }
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        match self {
            Projector::Matrix(m) => m.mul_vec(v).expect("square projector"),
            Projector::Span {
                basis,
                gram_inv,
                complement,
            } => {
                let coords = basis.transpose().mul_vec(v).expect("shapes agree");
                let onto = basis
                    .mul_vec(&gram_inv.mul_vec(&coords).expect("shapes agree"))
                    .expect("shapes agree");
                if *complement {
                    v.iter().zip(onto).map(|(a, b)| a - b).collect()
                } else {
                    onto
                }
            }
        }
    }

    /// Dense matrix, column by column.
    pub fn to_matrix(&self, dim: usize) -> RatMatrix {
        let cols: Vec<Vec<Rational>> = (0..dim)
            .map(|j| {
                let mut e = vec![Rational::zero(); dim];
                e[j] = rat(1);
                self.apply(&e)
            })
            .collect();
        RatMatrix::from_columns(dim, &cols).expect("square")
    }

    pub fn apply_to(&self, a: &FourierForm) -> Result<FourierForm> {
        a.map_modes(a.degree(), |v| self.apply(v))
    }
}

/// Subspaces `W ⊂ Λ^p` for the commutation check.
#[derive(Clone, Copy, Debug)]
pub enum WSelector<'a> {
    Full,
    EffectiveKernel,
    LImage,
    Invariants(&'a FiniteGroup),
}

impl WSelector<'_> {
    pub fn name(&self) -> &'static str {
        match self {
            WSelector::Full => "full",
            WSelector::EffectiveKernel => "effective_kernel",
            WSelector::LImage => "l_image",
            WSelector::Invariants(_) => "group_invariants",
        }
    }

    /// Projector onto `W` in degree `p` (orthogonal for the first three).
    pub fn projector(&self, lef: &Lefschetz, p: usize) -> Result<Projector> {
        let dim = lef.basis(p).len();
        match self {
            WSelector::Full => Ok(Projector::Matrix(RatMatrix::identity(dim))),
            WSelector::EffectiveKernel if p < 4 => Ok(Projector::Matrix(RatMatrix::identity(dim))),
            // ker Λ is the orthogonal complement of the row space of Λ.
            WSelector::EffectiveKernel => Ok(Projector::column_space(
                &lef.operator_matrix(Operator::Lambda, p)?.matrix.transpose(),
                true,
            )),
            WSelector::LImage if p < 4 => Ok(Projector::Matrix(RatMatrix::zeros(dim, dim))),
            WSelector::LImage => Ok(Projector::column_space(
                &lef.operator_matrix(Operator::L, p - 4)?.matrix,
                false,
            )),
            WSelector::Invariants(g) => {
                if g.n() != lef.n() {
                    return Err(Error::DimensionMismatch {
                        left: lef.n(),
                        right: g.n(),
                    });
                }
                Ok(Projector::Matrix(g.averaging_projector(p)?.matrix))
            }
        }
    }

    fn degree_range(&self, q: usize) -> (usize, usize) {
        match self {
            WSelector::LImage => (4, 4 * q),
            _ => (0, 4 * q),
        }
    }
}

/// `P_W Δ a = Δ P_W a` on sampled forms, and `Δ` of a form of type `W` is
/// again of type `W`.
pub fn chern_commutation(
    s: &mut FormSampler,
    lef: &Lefschetz,
    selector: WSelector<'_>,
    cutoff: u32,
    samples: usize,
) -> Result<Check> {
    let q = lef.n();
    let (lo, hi) = selector.degree_range(q);
    let mut projectors: Vec<Option<Projector>> = vec![None; 4 * q + 1];
    let mut commute_failures = 0;
    let mut type_failures = 0;
    let mut idempotent = true;
    for _ in 0..samples {
        let p = lo + s.degree(hi - lo);
        if projectors[p].is_none() {
            projectors[p] = Some(selector.projector(lef, p)?);
        }
        let pw = projectors[p].as_ref().expect("filled above");
        let a = FourierForm::sample(s, q, p, cutoff)?;
        let lap = a.laplacian()?;
        let typed = pw.apply_to(&a)?;
        let typed_lap = typed.laplacian()?;
        if pw.apply_to(&lap)? != typed_lap {
            commute_failures += 1;
        }
        if pw.apply_to(&typed_lap)? != typed_lap {
            type_failures += 1;
        }
        idempotent &= pw.apply_to(&typed)? == typed;
    }
    Ok(Check::new(
        format!("commutation_{}", selector.name()),
        commute_failures == 0 && type_failures == 0 && idempotent,
        json!({
            "q": q, "cutoff": cutoff, "selector": selector.name(), "samples": samples,
            "commute_failures": commute_failures, "type_failures": type_failures,
            "projectors_idempotent": idempotent,
        }),
    ))
}

/// `Δ(Ω ∧ a) = Ω ∧ Δa` on sampled forms of degree `0..=4q−4`.
pub fn lichnerowicz(
    s: &mut FormSampler,
    lef: &Lefschetz,
    cutoff: u32,
    samples: usize,
    degree: Option<usize>,
) -> Result<Check> {
    let q = lef.n();
    let omega = lef.kraines().omega();
    if let Some(p) = degree {
        if p + 4 > 4 * q {
            return Err(Error::DegreeOverflow {
                degree: p + 4,
                top: 4 * q,
            });
        }
    }
    let mut failures = 0;
    let mut nonzero = 0;
    for _ in 0..samples {
        let p = degree.unwrap_or_else(|| s.degree(4 * q - 4));
        let a = FourierForm::sample(s, q, p, cutoff)?;
        let lhs = a.wedge_constant(omega)?.laplacian()?;
        let rhs = a.laplacian()?.wedge_constant(omega)?;
        if lhs != rhs {
            failures += 1;
        }
        if !lhs.is_zero() {
            nonzero += 1;
        }
    }
    Ok(Check::new(
        "lichnerowicz_omega",
        failures == 0,
        json!({
            "q": q, "cutoff": cutoff, "samples": samples,
            "failures": failures, "nonzero_images": nonzero,
        }),
    ))
}

/// Decomposes a basis of the constant (harmonic) `k`-forms and checks that
/// every piece `L^i ω_e` is again harmonic.
pub fn harmonic_decomposition(model: &FlatModel, k: usize, cutoff: u32) -> Result<Check> {
    let decs = model.decompose_basis(k)?;
    let kd = model.lefschetz().kraines();
    let mut failures = 0;
    let mut pieces = 0;
    for d in &decs {
        if !d.residual.is_zero() {
            failures += 1;
        }
        for (i, c) in d.components.iter().enumerate() {
            let mut piece = c.clone();
            for _ in 0..i {
                piece = kd.L(&piece)?;
            }
            let f = FourierForm::constant(&piece, cutoff);
            if !f.laplacian()?.is_zero() || !f.is_constant() {
                failures += 1;
            }
            pieces += 1;
        }
    }
    Ok(Check::new(
        format!("harmonic_decomposition_k{k}"),
        failures == 0,
        json!({
            "q": model.spec().q, "degree": k, "basis_size": decs.len(),
            "pieces": pieces, "failures": failures,
        }),
    ))
}
