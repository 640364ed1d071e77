//! Grounded and consequential arguments: inference chains, well-formedness,
//! ground-set consistency, and the rebut/undercut attack relations.

use crate::dictionaries::{ModalityDictionary, ValueAssignment};
use crate::lang::{neg_equivalent, satisfiable, LangError, Wff};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Built-in shape checks for declared inference rules. Mismatches are
/// reported as warnings only; rule soundness is never a legality condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Validator {
    ModusPonens,
    AndIntroduction,
    #[default]
    None,
}

/// A mode of inference registered in the dialogue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InferenceRule {
    pub id: String,
    pub description: String,
    pub strength: Option<String>,
    pub validator: Validator,
}

impl InferenceRule {
    pub fn new(id: impl Into<String>, description: impl Into<String>) -> Self {
        InferenceRule {
            id: id.into(),
            description: description.into(),
            strength: None,
            validator: Validator::None,
        }
    }
}

/// One application of an inference rule: premises ⊢ conclusion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InferenceStep {
    pub premises: Vec<Wff>,
    pub rule: String,
    pub conclusion: Wff,
}

/// An inference chain ending in a claim. Step k's premises must include
/// step k-1's conclusion; the last conclusion is the claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundedArgument {
    pub steps: Vec<InferenceStep>,
    pub claim: Wff,
}

/// An inference chain starting from a claim; every step conclusion is a
/// consequence of the source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsequentialArgument {
    pub source: Wff,
    pub steps: Vec<InferenceStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuedGroundedArgument {
    pub argument: GroundedArgument,
    pub values: ValueAssignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuedConsequentialArgument {
    pub argument: ConsequentialArgument,
    pub values: ValueAssignment,
}

/// Well-formedness report: hard violations plus validator warnings.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellFormedness {
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

impl WellFormedness {
    pub fn is_well_formed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ConsistencyMode {
    #[default]
    Syntactic,
    Classical,
}

fn check_steps(
    steps: &[InferenceStep],
    rules: &BTreeMap<String, InferenceRule>,
    report: &mut WellFormedness,
) {
    if steps.is_empty() {
        report.violations.push("argument has no inference steps".into());
        return;
    }
    for (i, step) in steps.iter().enumerate() {
        if step.premises.is_empty() {
            report
                .violations
                .push(format!("step {} has no premises", i + 1));
        }
        if i > 0 {
            let prev = &steps[i - 1].conclusion;
            if !step.premises.contains(prev) {
                report.violations.push(format!(
                    "step {} does not consume step {}'s conclusion {}",
                    i + 1,
                    i,
                    prev
                ));
            }
        }
        match rules.get(&step.rule) {
            None => report
                .warnings
                .push(format!("step {} uses unregistered rule {}", i + 1, step.rule)),
            Some(rule) => {
                if !validator_matches(rule.validator, &step.premises, &step.conclusion) {
                    report.warnings.push(format!(
                        "step {} does not match the declared shape of rule {}",
                        i + 1,
                        step.rule
                    ));
                }
            }
        }
    }
}

fn validator_matches(validator: Validator, premises: &[Wff], conclusion: &Wff) -> bool {
    match validator {
        Validator::None => true,
        Validator::ModusPonens => premises.iter().any(|p| {
            matches!(p, Wff::Implies(a, c)
                if premises.contains(a) && conclusion == c.as_ref())
        }),
        Validator::AndIntroduction => {
            matches!(conclusion, Wff::And(l, r)
                if premises.contains(l) && premises.contains(r))
        }
    }
}

impl GroundedArgument {
    pub fn well_formed(&self, rules: &BTreeMap<String, InferenceRule>) -> WellFormedness {
        let mut report = WellFormedness::default();
        check_steps(&self.steps, rules, &mut report);
        if let Some(last) = self.steps.last() {
            if last.conclusion != self.claim {
                report.violations.push(format!(
                    "final conclusion {} does not match claim {}",
                    last.conclusion, self.claim
                ));
            }
        }
        report
    }

    /// Premises that are not produced as an earlier step's conclusion;
    /// this set is what consistency and undercutting inspect.
    pub fn grounds(&self) -> Vec<&Wff> {
        grounds_of_steps(&self.steps)
    }

    pub fn is_consistent(
        &self,
        mode: ConsistencyMode,
        atom_budget: usize,
    ) -> Result<bool, LangError> {
        grounds_consistent(&self.grounds(), mode, atom_budget)
    }

    /// True iff the claims negate each other (attack on the claim).
    pub fn rebuts(&self, target: &GroundedArgument) -> bool {
        neg_equivalent(&self.claim, &target.claim)
    }

    /// True iff this claim negates one of the target's grounds
    /// (attack on the argument).
    pub fn undercuts(&self, target: &GroundedArgument) -> bool {
        target
            .grounds()
            .iter()
            .any(|ground| neg_equivalent(ground, &self.claim))
    }
}

impl ConsequentialArgument {
    pub fn well_formed(&self, rules: &BTreeMap<String, InferenceRule>) -> WellFormedness {
        let mut report = WellFormedness::default();
        check_steps(&self.steps, rules, &mut report);
        if let Some(first) = self.steps.first() {
            if !first.premises.contains(&self.source) {
                report.violations.push(format!(
                    "first step does not consume the source claim {}",
                    self.source
                ));
            }
        }
        report
    }

    /// Every step conclusion, in order.
    pub fn consequences(&self) -> Vec<&Wff> {
        self.steps.iter().map(|s| &s.conclusion).collect()
    }

    pub fn grounds(&self) -> Vec<&Wff> {
        grounds_of_steps(&self.steps)
    }
}

fn grounds_of_steps(steps: &[InferenceStep]) -> Vec<&Wff> {
    let mut grounds: Vec<&Wff> = Vec::new();
    for (i, step) in steps.iter().enumerate() {
        let earlier: Vec<&Wff> = steps[..i].iter().map(|s| &s.conclusion).collect();
        for p in &step.premises {
            if !earlier.contains(&p) && !grounds.contains(&p) {
                grounds.push(p);
            }
        }
    }
    grounds
}

fn grounds_consistent(
    grounds: &[&Wff],
    mode: ConsistencyMode,
    atom_budget: usize,
) -> Result<bool, LangError> {
    match mode {
        ConsistencyMode::Syntactic => Ok(!grounds
            .iter()
            .enumerate()
            .any(|(i, a)| grounds[i + 1..].iter().any(|b| neg_equivalent(a, b)))),
        ConsistencyMode::Classical => satisfiable(grounds, atom_budget),
    }
}

/// Checks that a value assignment has the shape Def 4 demands for the
/// given steps and that every label belongs to its dictionary.
pub fn check_value_shape(
    steps: &[InferenceStep],
    values: &ValueAssignment,
    claims: &ModalityDictionary,
    inference: &ModalityDictionary,
) -> Vec<String> {
    let mut errors = Vec::new();
    if values.ground_labels.len() != steps.len() {
        errors.push(format!(
            "expected {} ground-label vectors, got {}",
            steps.len(),
            values.ground_labels.len()
        ));
    }
    for (i, (step, labels)) in steps.iter().zip(&values.ground_labels).enumerate() {
        if labels.len() != step.premises.len() {
            errors.push(format!(
                "step {}: expected {} ground labels, got {}",
                i + 1,
                step.premises.len(),
                labels.len()
            ));
        }
        for l in labels {
            if !claims.contains(l) {
                errors.push(format!("unknown claims label '{l}'"));
            }
        }
    }
    if values.inference_labels.len() != steps.len() {
        errors.push(format!(
            "expected {} inference labels, got {}",
            steps.len(),
            values.inference_labels.len()
        ));
    }
    for l in &values.inference_labels {
        if !inference.contains(l) {
            errors.push(format!("unknown inference label '{l}'"));
        }
    }
    if !claims.contains(&values.claim_label) {
        errors.push(format!("unknown claims label '{}'", values.claim_label));
    }
    errors
}
