//! JSON input and output for algebras, modules and morphisms.
//!
//! Bracket values are the brackets `l_k` themselves (not the coderivation
//! components). Inputs are listed once, in canonical order: nondecreasing
//! generator ids, with repeats allowed only for generators of odd degree.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::scalar;
use crate::exactlin::{GenId, LinComb, Monomial};
use crate::linfty::complete_intersection::{from_complete_intersection, polynomial, Normalization};
use crate::linfty::{LInftyAlgebra, LInftyModule, LInftyMorphism};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub id: String,
    pub degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: String,
    pub monomial: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub arity: usize,
    pub inputs: Vec<String>,
    pub value: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub arity: usize,
    pub inputs: Vec<String>,
    pub module_input: String,
    pub value: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub actions: Vec<ActionSpec>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizationSpec {
    #[default]
    Derivatives,
    DividedPowers,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompleteIntersectionSpec {
    pub variables: Vec<String>,
    pub polynomials: Vec<Vec<TermSpec>>,
    #[serde(default)]
    pub normalization: NormalizationSpec,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<BracketSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete_intersection: Option<CompleteIntersectionSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub target: AlgebraSpec,
    pub components: Vec<BracketSpec>,
}

/// A whole input file: an algebra with an optional module over it and an
/// optional morphism out of it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<BracketSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete_intersection: Option<CompleteIntersectionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism: Option<MorphismSpec>,
}

impl InputSpec {
    pub fn algebra(&self) -> AlgebraSpec {
        AlgebraSpec {
            generators: self.generators.clone(),
            brackets: self.brackets.clone(),
            complete_intersection: self.complete_intersection.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Input {
    pub algebra: LInftyAlgebra,
    pub module: Option<LInftyModule>,
    pub morphism: Option<LInftyMorphism>,
}

fn value_of(terms: &[TermSpec], id_of: impl Fn(&str) -> Result<GenId>) -> Result<LinComb<GenId>> {
    let mut out = LinComb::new();
    for t in terms {
        let [g] = t.monomial.as_slice() else {
            return Err(Error::Invalid(format!(
                "output monomial {:?} must have length one",
                t.monomial
            )));
        };
        out.add_term(id_of(g)?, scalar::parse(&t.coeff)?);
    }
    Ok(out)
}

/// Resolves inputs and checks canonical order against `odd`.
fn canonical_inputs(
    names: &[String],
    arity: usize,
    id_of: impl Fn(&str) -> Result<GenId>,
    odd: impl Fn(GenId) -> bool,
) -> Result<Vec<GenId>> {
    if names.len() != arity {
        return Err(Error::LengthMismatch {
            expected: arity,
            got: names.len(),
        });
    }
    let ids = names.iter().map(|n| id_of(n)).collect::<Result<Vec<_>>>()?;
    for w in ids.windows(2) {
        if w[0] > w[1] || (w[0] == w[1] && !odd(w[0])) {
            return Err(Error::Invalid(format!(
                "inputs {names:?} are not in canonical order"
            )));
        }
    }
    Ok(ids)
}

fn check_unique<T: Ord>(seen: &mut BTreeSet<T>, key: T, what: &[String]) -> Result<()> {
    if !seen.insert(key) {
        return Err(Error::Invalid(format!("entry for {what:?} given twice")));
    }
    Ok(())
}

fn normalization(n: NormalizationSpec) -> Normalization {
    match n {
        NormalizationSpec::Derivatives => Normalization::Derivatives,
        NormalizationSpec::DividedPowers => Normalization::DividedPowers,
    }
}

pub fn build_algebra(spec: &AlgebraSpec) -> Result<LInftyAlgebra> {
    if let Some(ci) = &spec.complete_intersection {
        if !spec.generators.is_empty() || !spec.brackets.is_empty() {
            return Err(Error::Invalid(
                "give either generators and brackets or a complete intersection".into(),
            ));
        }
        let ws = ci
            .polynomials
            .iter()
            .map(|p| {
                let terms = p
                    .iter()
                    .map(|t| Ok((t.monomial.clone(), scalar::parse(&t.coeff)?)))
                    .collect::<Result<Vec<_>>>()?;
                polynomial(&ci.variables, &terms)
            })
            .collect::<Result<Vec<_>>>()?;
        return from_complete_intersection(&ci.variables, &ws, normalization(ci.normalization));
    }
    let names = spec.generators.iter().map(|g| g.id.clone()).collect();
    let degrees = spec.generators.iter().map(|g| g.degree).collect();
    let mut l = LInftyAlgebra::abelian(names, degrees)?;
    let mut seen = BTreeSet::new();
    for b in &spec.brackets {
        if b.arity == 0 {
            return Err(Error::Invalid("brackets need at least one input".into()));
        }
        let ids = canonical_inputs(&b.inputs, b.arity, |n| l.id_of(n), |g| l.degrees().odd(g))?;
        check_unique(&mut seen, ids.clone(), &b.inputs)?;
        let value = value_of(&b.value, |n| l.id_of(n))?;
        l.set_bracket(&ids, value)?;
    }
    Ok(l)
}

pub fn build_module(owner: &LInftyAlgebra, spec: &ModuleSpec) -> Result<LInftyModule> {
    let names = spec.generators.iter().map(|g| g.id.clone()).collect();
    let degrees = spec.generators.iter().map(|g| g.degree).collect();
    let mut m = LInftyModule::new(owner, names, degrees)?;
    let mut seen = BTreeSet::new();
    for a in &spec.actions {
        if a.arity == 0 {
            return Err(Error::Invalid(
                "actions need at least one input from the module".into(),
            ));
        }
        let ids = canonical_inputs(
            &a.inputs,
            a.arity - 1,
            |n| owner.id_of(n),
            |g| owner.degrees().odd(g),
        )?;
        let target = m.id_of(&a.module_input)?;
        let mut key = a.inputs.clone();
        key.push(a.module_input.clone());
        check_unique(&mut seen, (ids.clone(), target), &key)?;
        let value = value_of(&a.value, |n| m.id_of(n))?;
        m.set_action(&ids, target, value)?;
    }
    Ok(m)
}

pub fn build_morphism(source: &LInftyAlgebra, spec: &MorphismSpec) -> Result<LInftyMorphism> {
    let target = build_algebra(&spec.target)?;
    let mut phi = LInftyMorphism::zero(source, &target);
    let mut seen = BTreeSet::new();
    for c in &spec.components {
        if c.arity == 0 {
            return Err(Error::Invalid(
                "morphism components need at least one input".into(),
            ));
        }
        let ids = canonical_inputs(
            &c.inputs,
            c.arity,
            |n| source.id_of(n),
            |g| source.degrees().odd(g),
        )?;
        check_unique(&mut seen, ids.clone(), &c.inputs)?;
        let value = value_of(&c.value, |n| target.id_of(n))?;
        phi.set_phi(&ids, value)?;
    }
    Ok(phi)
}

pub fn build_input(spec: &InputSpec) -> Result<Input> {
    let algebra = build_algebra(&spec.algebra())?;
    let module = spec
        .module
        .as_ref()
        .map(|m| build_module(&algebra, m))
        .transpose()?;
    let morphism = spec
        .morphism
        .as_ref()
        .map(|m| build_morphism(&algebra, m))
        .transpose()?;
    Ok(Input {
        algebra,
        module,
        morphism,
    })
}

pub fn parse_input(json: &str) -> Result<Input> {
    build_input(&serde_json::from_str(json)?)
}

pub fn read_input(path: &Path) -> Result<Input> {
    parse_input(&std::fs::read_to_string(path)?)
}

fn terms_of(v: &LinComb<GenId>, name: impl Fn(GenId) -> String) -> Vec<TermSpec> {
    v.iter()
        .map(|(g, c)| TermSpec {
            coeff: scalar::format(c),
            monomial: vec![name(*g)],
        })
        .collect()
}

fn generators_of(names: &[String], degrees: &[i32]) -> Vec<GeneratorSpec> {
    names
        .iter()
        .zip(degrees)
        .map(|(n, d)| GeneratorSpec {
            id: n.clone(),
            degree: *d,
        })
        .collect()
}

/// Explicit generators and brackets, whatever the algebra was built from.
pub fn algebra_spec(l: &LInftyAlgebra) -> AlgebraSpec {
    let brackets = l
        .components()
        .keys()
        .map(|m: &Monomial| BracketSpec {
            arity: m.weight(),
            inputs: l.word_names(m.letters()),
            value: terms_of(&l.bracket(m.letters()), |g| l.name(g).to_string()),
        })
        .collect();
    AlgebraSpec {
        generators: generators_of(l.names(), &l.degrees().0),
        brackets,
        complete_intersection: None,
    }
}

pub fn module_spec(m: &LInftyModule) -> ModuleSpec {
    let off = m.offset();
    let semi = m.semidirect();
    let mut actions = Vec::new();
    for mono in semi.components().keys() {
        let letters = mono.letters();
        let Some((&last, rest)) = letters.split_last() else {
            continue;
        };
        if last < off || rest.iter().any(|&g| g >= off) {
            continue;
        }
        actions.push(ActionSpec {
            arity: letters.len(),
            inputs: m.owner.word_names(rest),
            module_input: m.names()[(last - off) as usize].clone(),
            value: terms_of(&m.action(rest, last - off), |g| {
                m.names()[g as usize].clone()
            }),
        });
    }
    ModuleSpec {
        generators: generators_of(m.names(), &m.degrees()),
        actions,
    }
}

pub fn morphism_spec(phi: &LInftyMorphism) -> MorphismSpec {
    let components = phi
        .components()
        .keys()
        .map(|m| BracketSpec {
            arity: m.weight(),
            inputs: phi.source.word_names(m.letters()),
            value: terms_of(&phi.phi(m.letters()), |g| phi.target.name(g).to_string()),
        })
        .collect();
    MorphismSpec {
        target: algebra_spec(&phi.target),
        components,
    }
}

pub fn input_spec(input: &Input) -> InputSpec {
    let a = algebra_spec(&input.algebra);
    InputSpec {
        generators: a.generators,
        brackets: a.brackets,
        complete_intersection: None,
        module: input.module.as_ref().map(module_spec),
        morphism: input.morphism.as_ref().map(morphism_spec),
    }
}

pub fn to_json(input: &Input) -> Result<String> {
    Ok(serde_json::to_string_pretty(&input_spec(input))?)
}
