//! Verification suites that tie the modules together into reproducible,
//! seed-determined reports.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::rat;
use crate::error::{Error, Result};
use crate::flat_model::{
    self, Certificate, ChainCheck, CohomologyReport, FlatFoliationSpec, FlatModel, OrbifoldQuotient,
    WSelector,
};
use crate::lefschetz::Lefschetz;
use crate::multivector::{blade_basis, Form};
use crate::report::{Check, Status, SuiteReport};
use crate::sampling::FormSampler;
use crate::symmetry::{realize_matrix, sample_element, FiniteGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Kraines,
    Hodge,
    Orbifold,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "kraines" => Ok(Suite::Kraines),
            "hodge" => Ok(Suite::Hodge),
            "orbifold" => Ok(Suite::Orbifold),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Kraines => "kraines",
            Suite::Hodge => "hodge",
            Suite::Orbifold => "orbifold",
            Suite::All => "all",
        })
    }
}

/// Everything a suite run depends on.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Quaternionic dimension for the algebraic (`kraines`) checks.
    pub n: usize,
    /// Transverse quaternionic dimension for the `hodge` and `orbifold` checks.
    pub q: usize,
    pub seed: u64,
    pub samples: usize,
    pub cutoff: u32,
    /// Quotient group; `{±1}` when absent.
    pub group: Option<FiniteGroup>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n: 2,
            q: 2,
            seed: 42,
            samples: 50,
            cutoff: 1,
            group: None,
        }
    }
}

impl SuiteConfig {
    fn group(&self) -> Result<FiniteGroup> {
        match &self.group {
            Some(g) => {
                if g.n() != self.q {
                    return Err(Error::DimensionMismatch {
                        left: self.q,
                        right: g.n(),
                    });
                }
                Ok(g.clone())
            }
            None => FiniteGroup::minus_one(self.q),
        }
    }

    fn to_json(&self, suite: Suite) -> Value {
        let group_order = self.group.as_ref().map(FiniteGroup::order);
        json!({
            "suite": suite.to_string(),
            "n": self.n, "q": self.q, "seed": self.seed,
            "samples": self.samples, "cutoff": self.cutoff,
            "group_order": group_order.unwrap_or(2),
        })
    }
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Kraines => prefixed("kraines", kraines_checks(cfg)?),
        Suite::Hodge => prefixed("hodge", hodge_checks(cfg)?),
        Suite::Orbifold => prefixed("orbifold", orbifold_checks(cfg)?),
        Suite::All => {
            let mut all = prefixed("kraines", kraines_checks(cfg)?);
            all.extend(prefixed("hodge", hodge_checks(cfg)?));
            all.extend(prefixed("orbifold", orbifold_checks(cfg)?));
            all
        }
    };
    Ok(SuiteReport::new(suite.to_string(), cfg.to_json(suite), checks))
}

fn prefixed(prefix: &str, checks: Vec<Check>) -> Vec<Check> {
    checks
        .into_iter()
        .map(|mut c| {
            c.name = format!("{prefix}/{}", c.name);
            c
        })
        .collect()
}

/// Checks on `Ω`, `L`, `Λ` and the decomposition for `H^n`.
pub fn kraines_checks(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let n = cfg.n;
    let lef = Lefschetz::new(n)?;
    let kd = lef.kraines();
    let omega = kd.omega();
    let mut s = FormSampler::new(cfg.seed);
    let mut out = Vec::new();

    let mut not_invariant = 0;
    let mut not_orthogonal = 0;
    let mut not_homomorphic = 0;
    for _ in 0..cfg.samples {
        let g = sample_element(&mut s, n)?;
        let h = sample_element(&mut s, n)?;
        not_invariant += usize::from(&g.pullback(omega)? != omega);
        not_orthogonal += usize::from(!g.realized().is_orthogonal());
        let gh = g.mul(&h);
        let direct = realize_matrix(gh.quat_matrix(), gh.unit())?;
        not_homomorphic += usize::from(&direct != gh.realized());
    }
    out.push(Check::new(
        "omega_invariant_cayley",
        not_invariant == 0,
        json!({ "n": n, "samples": cfg.samples, "failures": not_invariant }),
    ));
    out.push(Check::new(
        "realization_orthogonal_homomorphism",
        not_orthogonal == 0 && not_homomorphic == 0,
        json!({
            "n": n, "samples": cfg.samples,
            "non_orthogonal": not_orthogonal, "non_homomorphic": not_homomorphic,
        }),
    ));
    let mut group_results = Vec::new();
    for (name, g) in [
        ("minus_one", FiniteGroup::minus_one(n)?),
        ("quaternion_group", FiniteGroup::quaternion_group(n)?),
    ] {
        group_results.push((name, g.order(), g.is_invariant(omega)?));
    }
    out.push(Check::new(
        "omega_invariant_finite_groups",
        group_results.iter().all(|r| r.2),
        json!(group_results
            .iter()
            .map(|(name, order, ok)| json!({ "group": name, "order": order, "invariant": ok }))
            .collect::<Vec<_>>()),
    ));

    let top = kd.omega_power_volume_coeff();
    out.push(Check::new(
        "omega_power_nonzero",
        !top.is_zero(),
        json!({ "n": n, "volume_coefficient": top.to_string() }),
    ));

    let dim = 4 * n;
    let mut parity_failures = 0;
    let mut blades = 0;
    for p in 0..=dim {
        let sign = if (p * (dim - p)).is_multiple_of(2) {
            rat(1)
        } else {
            rat(-1)
        };
        if dim <= 8 {
            for b in blade_basis(dim, p) {
                let e = Form::blade(n, b, rat(1))?;
                parity_failures += usize::from(e.hodge_star().hodge_star() != e.scale(&sign));
                blades += 1;
            }
        } else {
            let a = s.form(n, p);
            parity_failures += usize::from(a.hodge_star().hodge_star() != a.scale(&sign));
            blades += a.len();
        }
    }
    out.push(Check::new(
        "star_parity",
        parity_failures == 0,
        json!({ "n": n, "blades": blades, "failures": parity_failures }),
    ));

    let mut adjoint_failures = 0;
    for _ in 0..cfg.samples {
        let p = s.degree(dim - 4);
        let a = s.form(n, p);
        let b = s.form(n, p + 4);
        adjoint_failures += usize::from(kd.L(&a)?.inner(&b)? != a.inner(&kd.Lambda(&b)?)?);
    }
    out.push(Check::new(
        "l_lambda_adjoint",
        adjoint_failures == 0,
        json!({ "n": n, "samples": cfg.samples, "failures": adjoint_failures }),
    ));

    let mut signs = Vec::new();
    let mut formula_failures = 0;
    let mut consistent = true;
    for p in 4..=dim {
        match kd.star_sign(p) {
            Ok(e) => {
                signs.push(json!({ "degree": p, "sign": e }));
                let a = s.form(n, p);
                let via_star = kd.lambda_star_formula(&a)?;
                let expected = if e > 0 { via_star } else { via_star.neg() };
                formula_failures += usize::from(kd.Lambda(&a)? != expected);
            }
            Err(Error::SignInconsistent { .. }) => consistent = false,
            Err(e) => return Err(e),
        }
    }
    out.push(Check::new(
        "lambda_star_formula",
        consistent && formula_failures == 0,
        json!({ "n": n, "signs": signs, "failures": formula_failures }),
    ));

    let rows = lef.rank_table(dim)?;
    let low_effective = rows.iter().take(4).all(|r| r.dim_effective == r.dim);
    let bookkeeping = rows.iter().all(|r| r.bookkeeping);
    out.push(Check::new(
        "rank_bookkeeping",
        low_effective && bookkeeping,
        json!({
            "n": n,
            "rows": rows,
        }),
    ));

    let limit = lef.theorem_limit().min(dim);
    let mut residual_failures = 0;
    let mut effective_failures = 0;
    let mut non_unique = 0;
    let mut degrees = Vec::new();
    for _ in 0..cfg.samples {
        // Favor degree 4 when it is in range: lower degrees are trivial.
        let p = if limit >= 4 && s.degree(1) == 1 {
            4
        } else {
            s.degree(limit)
        };
        degrees.push(p);
        let a = s.form(n, p);
        let d = lef.decompose(&a, false)?;
        residual_failures += usize::from(!d.residual.is_zero());
        non_unique += usize::from(!d.is_unique());
        for c in &d.components {
            effective_failures += usize::from(!lef.is_effective(c)?);
        }
    }
    out.push(Check::new(
        "decomposition",
        residual_failures == 0 && effective_failures == 0 && non_unique == 0,
        json!({
            "n": n, "samples": cfg.samples, "theorem_limit": lef.theorem_limit(),
            "degree_four_samples": degrees.iter().filter(|&&p| p == 4).count(),
            "residual_failures": residual_failures,
            "effective_failures": effective_failures, "non_unique": non_unique,
        }),
    ));
    Ok(out)
}

/// Fourier Hodge checks, commutation, and flat cohomology certificates for
/// `T^{4q}`.
pub fn hodge_checks(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let (q, c, m) = (cfg.q, cfg.cutoff, cfg.samples);
    let model = FlatModel::new(FlatFoliationSpec { leaf_dim: 1, q })?;
    let lef = model.lefschetz();
    let group = cfg.group()?;
    let mut s = FormSampler::new(cfg.seed);
    let mut out = vec![
        flat_model::d_squared(&mut s, q, c, m)?,
        flat_model::delta_squared(&mut s, q, c, m)?,
        flat_model::adjointness(&mut s, q, c, m)?,
        flat_model::weitzenbock(&mut s, q, c, m)?,
        flat_model::harmonic_dimensions(q, c)?,
    ];
    for sel in [
        WSelector::Full,
        WSelector::EffectiveKernel,
        WSelector::LImage,
        WSelector::Invariants(&group),
    ] {
        out.push(flat_model::chern_commutation(&mut s, lef, sel, c, m)?);
    }
    out.push(flat_model::lichnerowicz(&mut s, lef, c, m, None)?);
    for k in 0..=(q + 3).min(4 * q) {
        out.push(flat_model::harmonic_decomposition(&model, k, c)?);
    }
    out.extend(report_checks("flat", &model.full_report()?));
    Ok(out)
}

/// Betti numbers and certificates of `T^{4q}/Γ`.
pub fn orbifold_checks(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let group = cfg.group()?;
    let quotient = match OrbifoldQuotient::new(group) {
        Ok(x) => x,
        Err(e @ Error::LatticeViolation { .. }) => {
            return Ok(vec![Check::new(
                "lattice_preserved",
                false,
                json!({ "error": e.to_string() }),
            )])
        }
        Err(e) => return Err(e),
    };
    let report = quotient.betti_report()?;
    let mut out = vec![Check::new(
        "lattice_preserved",
        true,
        json!({ "order": quotient.group().order() }),
    )];
    out.extend(report_checks("orbifold", &report));
    Ok(out)
}

/// One check per certificate and per inequality chain. Chains outside the
/// range `i + 4r ≤ q + 1` are recorded as skipped with their outcome.
pub fn report_checks(prefix: &str, report: &CohomologyReport) -> Vec<Check> {
    let mut out = vec![Check::new(
        format!("{prefix}_betti"),
        true,
        json!({ "q": report.q, "betti": report.betti, "group_order": report.group_order }),
    )];
    for cert in &report.certificates {
        out.push(Check::new(
            certificate_name(prefix, cert),
            cert.holds(),
            serde_json::to_value(cert).expect("certificate is serializable"),
        ));
    }
    for chain in &report.inequalities {
        out.push(chain_check(prefix, chain));
    }
    out
}

fn certificate_name(prefix: &str, cert: &Certificate) -> String {
    match cert {
        Certificate::Taut { .. } => format!("{prefix}_taut"),
        Certificate::LInjectivity { degree, .. } => format!("{prefix}_l_injective_k{degree}"),
        Certificate::Decomposition { degree, .. } => format!("{prefix}_decomposition_k{degree}"),
        Certificate::ProjectorIdempotence { degree, .. } => {
            format!("{prefix}_projector_idempotent_p{degree}")
        }
        Certificate::OmegaInvariant { .. } => format!("{prefix}_omega_invariant"),
    }
}

fn chain_check(prefix: &str, chain: &ChainCheck) -> Check {
    let name = format!("{prefix}_chain_i{}_r{}", chain.i, chain.r);
    let witness = serde_json::to_value(chain).expect("chain is serializable");
    if chain.in_range {
        Check::new(name, chain.holds, witness)
    } else {
        Check {
            name,
            status: Status::Skipped,
            witness,
        }
    }
}
