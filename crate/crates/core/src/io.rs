//! JSON file formats for forms, Fourier forms, decompositions and groups.
//!
//! Rationals are written as canonical `"p"` / `"p/q"` strings and terms are
//! emitted in canonical blade order, so writing is deterministic and reading
//! a written file gives back an equal value.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{GaussianRational, RationalString};
use crate::error::{Error, Result};
use crate::flat_model::{FourierForm, Freq};
use crate::lefschetz::Decomposition;
use crate::multivector::{Blade, Form};
use crate::symmetry::{FiniteGroup, GroupElement, QuatMatrix, Quaternion, UnitQuaternion};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormTerm {
    pub coeff: RationalString,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub n: usize,
    pub degree: usize,
    pub terms: Vec<FormTerm>,
}

impl From<&Form> for FormFile {
    fn from(f: &Form) -> Self {
        FormFile {
            n: f.n(),
            degree: f.degree(),
            terms: f
                .terms()
                .map(|(b, c)| FormTerm {
                    coeff: RationalString(c.clone()),
                    indices: b.index_vec(),
                })
                .collect(),
        }
    }
}

fn parse_blade(indices: &[usize], dim: usize, degree: usize) -> Result<Blade> {
    let b = Blade::from_indices(indices).map_err(|e| Error::Parse(format!("indices {indices:?}: {e}")))?;
    if indices.iter().any(|&i| i >= dim) {
        return Err(Error::Parse(format!(
            "indices {indices:?} exceed dimension {dim}"
        )));
    }
    if b.grade() != degree {
        return Err(Error::Parse(format!(
            "indices {indices:?} do not have degree {degree}"
        )));
    }
    Ok(b)
}

impl FormFile {
    pub fn to_form(&self) -> Result<Form> {
        let dim = 4 * self.n;
        let mut seen = HashSet::new();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let b = parse_blade(&t.indices, dim, self.degree)?;
            if !seen.insert(b) {
                return Err(Error::Parse(format!("duplicate blade {:?}", t.indices)));
            }
            terms.push((b, t.coeff.0.clone()));
        }
        Form::from_terms(self.n, self.degree, terms)
    }
}

pub fn form_to_json(f: &Form) -> String {
    serde_json::to_string_pretty(&FormFile::from(f)).expect("form file is serializable")
}

pub fn form_from_json(s: &str) -> Result<Form> {
    serde_json::from_str::<FormFile>(s)?.to_form()
}

pub fn read_form(path: &Path) -> Result<Form> {
    form_from_json(&fs::read_to_string(path)?)
}

pub fn write_form(path: &Path, f: &Form) -> Result<()> {
    fs::write(path, form_to_json(f) + "\n")?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianString {
    pub re: RationalString,
    pub im: RationalString,
}

impl From<&GaussianRational> for GaussianString {
    fn from(c: &GaussianRational) -> Self {
        GaussianString {
            re: RationalString(c.re.clone()),
            im: RationalString(c.im.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierTerm {
    pub freq: Freq,
    pub coeff: GaussianString,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierFile {
    pub q: usize,
    pub degree: usize,
    pub cutoff: u32,
    pub terms: Vec<FourierTerm>,
}

impl From<&FourierForm> for FourierFile {
    fn from(f: &FourierForm) -> Self {
        FourierFile {
            q: f.q(),
            degree: f.degree(),
            cutoff: f.cutoff(),
            terms: f
                .terms()
                .map(|(xi, b, c)| FourierTerm {
                    freq: xi.clone(),
                    coeff: c.into(),
                    indices: b.index_vec(),
                })
                .collect(),
        }
    }
}

impl FourierFile {
    pub fn to_fourier_form(&self) -> Result<FourierForm> {
        let dim = 4 * self.q;
        let mut seen = HashSet::new();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let b = parse_blade(&t.indices, dim, self.degree)?;
            if !seen.insert((t.freq.clone(), b)) {
                return Err(Error::Parse(format!(
                    "duplicate term at frequency {:?}, indices {:?}",
                    t.freq, t.indices
                )));
            }
            let c = GaussianRational::new(t.coeff.re.0.clone(), t.coeff.im.0.clone());
            terms.push((t.freq.clone(), b, c));
        }
        FourierForm::from_terms(self.q, self.degree, self.cutoff, terms)
            .map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn fourier_to_json(f: &FourierForm) -> String {
    serde_json::to_string_pretty(&FourierFile::from(f)).expect("fourier file is serializable")
}

pub fn fourier_from_json(s: &str) -> Result<FourierForm> {
    serde_json::from_str::<FourierFile>(s)?.to_fourier_form()
}

pub fn read_fourier(path: &Path) -> Result<FourierForm> {
    fourier_from_json(&fs::read_to_string(path)?)
}

pub fn write_fourier(path: &Path, f: &FourierForm) -> Result<()> {
    fs::write(path, fourier_to_json(f) + "\n")?;
    Ok(())
}

/// Components in the form file format plus the residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub degree: usize,
    pub components: Vec<FormFile>,
    pub residual: FormFile,
    pub singular_steps: Vec<usize>,
}

impl From<&Decomposition> for DecompositionFile {
    fn from(d: &Decomposition) -> Self {
        DecompositionFile {
            degree: d.degree,
            components: d.components.iter().map(FormFile::from).collect(),
            residual: (&d.residual).into(),
            singular_steps: d.singular_steps.clone(),
        }
    }
}

type QuatStrings = [RationalString; 4];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    #[serde(rename = "A")]
    pub a: Vec<Vec<QuatStrings>>,
    pub q: QuatStrings,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub n: usize,
    pub generators: Vec<GeneratorSpec>,
    pub max_order: usize,
}

fn quat(s: &QuatStrings) -> Quaternion {
    Quaternion::new(s[0].0.clone(), s[1].0.clone(), s[2].0.clone(), s[3].0.clone())
}

fn quat_strings(q: &Quaternion) -> QuatStrings {
    q.components().map(|c| RationalString(c.clone()))
}

impl GeneratorSpec {
    pub fn from_element(g: &GroupElement) -> GeneratorSpec {
        let a = g.quat_matrix();
        GeneratorSpec {
            a: (0..a.n())
                .map(|r| (0..a.n()).map(|c| quat_strings(a.get(r, c))).collect())
                .collect(),
            q: quat_strings(g.unit().get()),
        }
    }

    pub fn to_element(&self, n: usize) -> Result<GroupElement> {
        if self.a.len() != n || self.a.iter().any(|row| row.len() != n) {
            return Err(Error::Parse(format!("generator matrix A must be {n}x{n}")));
        }
        let entries = self.a.iter().flatten().map(quat).collect();
        let a = QuatMatrix::from_entries(n, entries)?;
        let q = UnitQuaternion::new(quat(&self.q))?;
        GroupElement::new(a, q)
    }
}

impl GroupFile {
    pub fn from_generators(n: usize, generators: &[GroupElement], max_order: usize) -> GroupFile {
        GroupFile {
            n,
            generators: generators.iter().map(GeneratorSpec::from_element).collect(),
            max_order,
        }
    }

    pub fn to_group(&self) -> Result<FiniteGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.to_element(self.n))
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::closure(self.n, &gens, self.max_order)
    }
}

pub fn group_from_json(s: &str) -> Result<GroupFile> {
    Ok(serde_json::from_str(s)?)
}

pub fn read_group(path: &Path) -> Result<GroupFile> {
    group_from_json(&fs::read_to_string(path)?)
}
