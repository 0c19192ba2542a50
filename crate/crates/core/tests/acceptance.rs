//! Acceptance criteria 1-9. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; the process exits nonzero if
//! any criterion fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_integer::binomial;
use num_traits::{One, Zero};
use serde_json::Value;

use qforms::algebra::{rat, RatMatrix, Rational};
use qforms::flat_model::{self, Certificate, FlatFoliationSpec, FlatModel, OrbifoldQuotient, WSelector};
use qforms::lefschetz::{Lefschetz, Operator};
use qforms::multivector::{blade_basis, Form};
use qforms::quaternionic::KrainesData;
use qforms::sampling::FormSampler;
use qforms::symmetry::{sample_element, FiniteGroup};

const SEED: u64 = 20240611;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

type Criterion = fn() -> Result<Outcome, qforms::Error>;

// Oracles. These only use coefficient access and wedge products, never the
// operators under test.

fn inner_oracle(a: &Form, b: &Form) -> Rational {
    a.terms().map(|(s, c)| c * b.coeff(s)).sum()
}

fn l_oracle(omega: &Form, a: &Form) -> Form {
    omega.wedge(a).expect("degree fits")
}

/// `tr(M^m)` for `m = 1..=k`.
fn power_traces(m: &RatMatrix, k: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(k);
    let mut power = m.clone();
    for _ in 0..k {
        out.push((0..m.rows()).map(|i| power.get(i, i).clone()).sum());
        power = power.mul(m).expect("square");
    }
    out
}

/// Elementary symmetric functions of the eigenvalues, `e_0..=e_d`, via
/// Newton's identities; `e_k = tr Λ^k M`.
fn exterior_traces(m: &RatMatrix) -> Vec<Rational> {
    let d = m.rows();
    let p = power_traces(m, d);
    let mut e = vec![Rational::one()];
    for k in 1..=d {
        let mut s = Rational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i - 1];
            if i % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        e.push(s / rat(k as i64));
    }
    e
}

/// Molien-type count: `dim (Λ^k)^Γ = |Γ|⁻¹ Σ_g tr Λ^k g`.
fn averaged_betti(group: &FiniteGroup) -> Vec<usize> {
    let d = 4 * group.n();
    let mut sums = vec![Rational::zero(); d + 1];
    for g in group.elements() {
        for (s, e) in sums.iter_mut().zip(exterior_traces(g.matrix())) {
            *s += e;
        }
    }
    let order = rat(group.order() as i64);
    sums.into_iter()
        .map(|s| {
            let b = s / &order;
            assert!(b.is_integer(), "averaged trace is not an integer");
            b.to_integer().try_into().expect("small nonnegative count")
        })
        .collect()
}

fn c1_omega_invariance() -> Result<Outcome, qforms::Error> {
    let mut s = FormSampler::new(SEED);
    let mut bad = 0;
    for n in [1, 2] {
        let omega = KrainesData::new(n)?.omega().clone();
        for _ in 0..50 {
            let g = sample_element(&mut s, n)?;
            if g.pullback(&omega)? != omega {
                bad += 1;
            }
        }
    }
    Ok(outcome(
        bad == 0,
        format!("100 Cayley samples over n=1,2, {bad} not fixing the 4-form"),
    ))
}

fn c2_star_parity() -> Result<Outcome, qforms::Error> {
    let mut checked = 0;
    let mut bad = 0;
    let mut odd_sign_flips = 0;
    for n in [1, 2] {
        let d = 4 * n;
        for p in 0..=d {
            let sign = if (p * (d - p)) % 2 == 0 { rat(1) } else { rat(-1) };
            for b in blade_basis(d, p) {
                let e = Form::blade(n, b, rat(1))?;
                let twice = e.hodge_star().hodge_star();
                checked += 1;
                if twice != e.scale(&sign) {
                    bad += 1;
                }
                if sign < rat(0) {
                    odd_sign_flips += 1;
                }
            }
        }
    }
    Ok(outcome(
        bad == 0,
        format!(
            "{checked} blades, {bad} mismatches; **=-1 on {odd_sign_flips} odd-degree blades (convention)"
        ),
    ))
}

fn c3_adjointness() -> Result<Outcome, qforms::Error> {
    let mut s = FormSampler::new(SEED + 3);
    let mut bad_pairs = 0;
    let mut bad_signs = Vec::new();
    let mut signs = Vec::new();
    for n in [1, 2, 3] {
        let kd = KrainesData::new(n)?;
        let omega = kd.omega();
        let top = 4 * n;
        // ε(p) observed per degree; Some(None) marks a conflict.
        let mut eps: Vec<Option<Option<i8>>> = vec![None; top + 1];
        for _ in 0..200 {
            let p = s.degree(top - 4);
            let a = s.form(n, p);
            let b = s.form(n, p + 4);
            if inner_oracle(&l_oracle(omega, &a), &b) != inner_oracle(&a, &kd.Lambda(&b)?) {
                bad_pairs += 1;
            }
            let lambda = kd.Lambda(&b)?;
            let star = omega.wedge(&b.hodge_star())?.hodge_star();
            let observed = if lambda.is_zero() && star.is_zero() {
                continue;
            } else if lambda == star {
                Some(1)
            } else if lambda == star.neg() {
                Some(-1)
            } else {
                None
            };
            let slot = &mut eps[p + 4];
            *slot = match (*slot, observed) {
                (None, o) => Some(o),
                (Some(prev), o) if prev == o => Some(prev),
                _ => Some(None),
            };
        }
        for (p, e) in eps.iter().enumerate() {
            match e {
                Some(Some(sign)) => signs.push(format!("n{n}p{p}:{sign:+}")),
                Some(None) => bad_signs.push(format!("n{n}p{p}")),
                None => {}
            }
        }
    }
    Ok(outcome(
        bad_pairs == 0 && bad_signs.is_empty(),
        format!(
            "600 pairs, {bad_pairs} failures; star-formula sign per degree [{}], inconsistent {:?}",
            signs.join(" "),
            bad_signs
        ),
    ))
}

fn c4_decomposition() -> Result<Outcome, qforms::Error> {
    let lef = Lefschetz::new(3)?;
    let kd = lef.kraines();
    let mut s = FormSampler::new(SEED + 4);
    let mut bad = 0;
    for _ in 0..25 {
        let a = s.form(3, 4);
        let dec = lef.decompose(&a, false)?;
        let mut sum = Form::zero(3, 4)?;
        for (i, c) in dec.components.iter().enumerate() {
            let mut lifted = c.clone();
            for _ in 0..i {
                lifted = l_oracle(kd.omega(), &lifted);
            }
            sum = sum.add(&lifted)?;
        }
        let effective = dec
            .components
            .iter()
            .all(|c| c.degree() < 4 || kd.Lambda(c).map(|x| x.is_zero()).unwrap_or(false));
        if !dec.residual.is_zero() || sum != a || !effective {
            bad += 1;
        }
    }
    let dim = binomial(12, 4);
    let lambda_rank = lef.operator_matrix(Operator::Lambda, 4)?.matrix.rank();
    let dim_effective = dim - lambda_rank;
    let image_rank = usize::from(!kd.omega().is_zero());
    let bookkeeping = dim == 495 && dim_effective == 494 && image_rank == 1;
    let mut low_ok = true;
    for n in 1..=3 {
        let lef = Lefschetz::new(n)?;
        for p in 0..=3 {
            low_ok &= lef.effective_basis(p)?.len() == binomial(4 * n, p);
        }
    }
    Ok(outcome(
        bad == 0 && bookkeeping && low_ok,
        format!(
            "25 forms, {bad} failures; {dim} = {dim_effective} + {image_rank}; ker Λ full for p<=3: {low_ok}"
        ),
    ))
}

fn c5_flat_model() -> Result<Outcome, qforms::Error> {
    let mut notes = Vec::new();
    let mut ok = true;
    for q in [2, 3] {
        let model = FlatModel::new(FlatFoliationSpec { leaf_dim: 1, q })?;
        let omega = model.lefschetz().kraines().omega().clone();
        for k in 0..q {
            let cols: Vec<Vec<Rational>> = blade_basis(4 * q, k)
                .into_iter()
                .map(|b| {
                    let image = l_oracle(&omega, &Form::blade(q, b, rat(1)).expect("valid blade"));
                    blade_basis(4 * q, k + 4)
                        .into_iter()
                        .map(|t| image.coeff(t))
                        .collect()
                })
                .collect();
            let rank = RatMatrix::from_columns(binomial(4 * q, k + 4), &cols)?.rank();
            let cert = model.l_injectivity(k)?;
            let cert_ok = matches!(cert, Certificate::LInjectivity { injective: true, .. }) && cert.holds();
            ok &= rank == binomial(4 * q, k) && cert_ok;
            notes.push(format!("q{q} L on H^{k}: rank {rank}/{}", binomial(4 * q, k)));
        }
        let mut bad = 0;
        for k in 0..=(q + 3).min(4 * q) {
            ok &= model.decomposition(k)?.holds();
            for (i, dec) in model.decompose_basis(k)?.iter().enumerate() {
                let target = model.lefschetz().basis_form(k, i);
                let mut sum = Form::zero(q, k)?;
                for (j, c) in dec.components.iter().enumerate() {
                    let mut lifted = c.clone();
                    for _ in 0..j {
                        lifted = l_oracle(&omega, &lifted);
                    }
                    sum = sum.add(&lifted)?;
                }
                if !dec.residual.is_zero() || sum != target {
                    bad += 1;
                }
            }
        }
        ok &= bad == 0;
        notes.push(format!(
            "q{q} decompositions k<={}: {bad} failures",
            (q + 3).min(4 * q)
        ));
    }
    Ok(outcome(ok, notes.join("; ")))
}

fn c6_orbifold() -> Result<Outcome, qforms::Error> {
    let mut notes = Vec::new();
    let mut ok = true;
    let cases: Vec<(&str, FiniteGroup)> = vec![
        ("trivial q2", FiniteGroup::trivial(2)?),
        ("±1 q2", FiniteGroup::minus_one(2)?),
        ("Q8 q2", FiniteGroup::quaternion_group(2)?),
        ("±1 q3", FiniteGroup::minus_one(3)?),
        ("Q8 q3", FiniteGroup::quaternion_group(3)?),
    ];
    for (name, group) in cases {
        let oracle = averaged_betti(&group);
        let report = OrbifoldQuotient::new(group)?.betti_report()?;
        let chains_ok = report.inequalities.iter().all(|c| !c.in_range || c.holds);
        let omega_ok = report
            .certificates
            .iter()
            .any(|c| matches!(c, Certificate::OmegaInvariant { .. }) && c.holds());
        ok &= report.betti == oracle && chains_ok && omega_ok && report.passed();
        let in_range = report.inequalities.iter().filter(|c| c.in_range).count();
        notes.push(format!("{name} {:?} ({in_range} chains in range)", report.betti));
        if name == "±1 q2" {
            ok &= report.betti == vec![1, 0, 28, 0, 70, 0, 28, 0, 1];
        }
        if name == "trivial q2" {
            ok &= report.betti == (0..=8).map(|k| binomial(8, k)).collect::<Vec<_>>();
        }
    }
    Ok(outcome(ok, notes.join("; ")))
}

fn c7_flat_hodge() -> Result<Outcome, qforms::Error> {
    let mut s = FormSampler::new(SEED + 7);
    let mut failed = Vec::new();
    for q in [1, 2] {
        let checks = [
            flat_model::d_squared(&mut s, q, 1, 100)?,
            flat_model::delta_squared(&mut s, q, 1, 100)?,
            flat_model::adjointness(&mut s, q, 1, 100)?,
            flat_model::weitzenbock(&mut s, q, 1, 50)?,
            flat_model::harmonic_dimensions(q, 1)?,
        ];
        for c in &checks {
            if !c.passed() {
                failed.push(format!("q{q}/{}", c.name));
            }
        }
        let expected: Vec<Value> = (0..=4 * q).map(|k| binomial(4 * q, k).into()).collect();
        if checks[4].witness["kernel_dims"] != Value::Array(expected) {
            failed.push(format!("q{q}/kernel_dims"));
        }
    }
    Ok(outcome(
        failed.is_empty(),
        format!("q=1,2 cutoff 1; failing: {failed:?}"),
    ))
}

fn c8_commutation() -> Result<Outcome, qforms::Error> {
    let mut s = FormSampler::new(SEED + 8);
    let lef = Lefschetz::new(2)?;
    let q8 = FiniteGroup::quaternion_group(2)?;
    let pm = FiniteGroup::minus_one(2)?;
    let checks = [
        flat_model::chern_commutation(&mut s, &lef, WSelector::EffectiveKernel, 1, 50)?,
        flat_model::chern_commutation(&mut s, &lef, WSelector::LImage, 1, 50)?,
        flat_model::chern_commutation(&mut s, &lef, WSelector::Invariants(&q8), 1, 50)?,
        flat_model::chern_commutation(&mut s, &lef, WSelector::Invariants(&pm), 1, 50)?,
        flat_model::lichnerowicz(&mut s, &lef, 1, 50, None)?,
    ];
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.name.as_str())
        .collect();
    Ok(outcome(
        failed.is_empty(),
        format!("q=2, {} checks, failing: {failed:?}", checks.len()),
    ))
}

fn strip_timing(path: &Path) -> Value {
    let text = std::fs::read_to_string(path).expect("report written");
    let mut v: Value = serde_json::from_str(&text).expect("report is JSON");
    v.as_object_mut().expect("report is an object").remove("timing");
    v
}

fn c9_determinism() -> Result<Outcome, qforms::Error> {
    let dir = tempfile::tempdir()?;
    let mut reports = Vec::new();
    for run in ["a", "b"] {
        let out = dir.path().join(run);
        let status = Command::new(env!("CARGO_BIN_EXE_qforms"))
            .args(["verify", "--suite", "all", "--seed", "7", "--out"])
            .arg(&out)
            .stderr(std::process::Stdio::null())
            .status()?;
        if !status.success() {
            return Ok(outcome(false, format!("run {run} exited with {status}")));
        }
        reports.push(strip_timing(&out.join("report.json")));
    }
    let same = reports[0] == reports[1];
    let a = serde_json::to_string_pretty(&reports[0])?;
    let b = serde_json::to_string_pretty(&reports[1])?;
    Ok(outcome(
        same && a == b,
        format!("two runs, seed 7, {} bytes each without timing", a.len()),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 9] = [
        ("omega invariance under Cayley samples", c1_omega_invariance),
        ("double star parity", c2_star_parity),
        ("L/Lambda adjointness and star formula", c3_adjointness),
        ("effective decomposition n=3 p=4", c4_decomposition),
        ("flat model injectivity and decomposition", c5_flat_model),
        ("orbifold Betti numbers and chains", c6_orbifold),
        ("flat Hodge suite", c7_flat_hodge),
        ("projector and Lefschetz commutation", c8_commutation),
        ("verify determinism", c9_determinism),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match run() {
            Ok(o) => (o.ok, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= ok;
        println!(
            "{} criterion {}: {name} ({detail}) [{:.1}s]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
