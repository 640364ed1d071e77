//! Nature's commitment store: modality assignment over exhibited
//! arguments, natural valuation, provisional proofs, attack queries and
//! the provisional-proof/valuation equivalence check.

use crate::arguments::{ConsistencyMode, GroundedArgument, InferenceRule};
use crate::lang::{is_tautology_with_budget, neg_equivalent, Wff};
use crate::protocol::{DialogueState, ExhibitedArgument, MoveId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const OPEN: &str = "Open";
pub const SUPPORTED: &str = "Supported";
pub const PLAUSIBLE: &str = "Plausible";
pub const PROBABLE: &str = "Probable";
pub const CONFIRMED: &str = "Confirmed";
pub const CERTAIN: &str = "Certain";

fn tier_rank(label: &str) -> u8 {
    match label {
        OPEN => 0,
        SUPPORTED => 1,
        PLAUSIBLE => 2,
        PROBABLE => 3,
        CONFIRMED => 4,
        CERTAIN => 5,
        _ => 0,
    }
}

/// Nature's store: one modality per tracked wff, in first-mention order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NatureStore {
    pub entries: Vec<(Wff, String)>,
}

impl NatureStore {
    pub fn get(&self, wff: &Wff) -> Option<&str> {
        let norm = wff.normalize();
        self.entries
            .iter()
            .find(|(w, _)| *w == norm)
            .map(|(_, l)| l.as_str())
    }

    /// From-scratch assignment over the tracked wffs (Rule 6 runs this
    /// after every legal move).
    pub fn recompute(
        tracked: &[Wff],
        exhibited: &[ExhibitedArgument],
        rules: &BTreeMap<String, InferenceRule>,
        mode: ConsistencyMode,
        atom_budget: usize,
    ) -> NatureStore {
        let entries = tracked
            .iter()
            .map(|w| {
                (
                    w.clone(),
                    modality(w, exhibited, rules, mode, atom_budget).to_string(),
                )
            })
            .collect();
        NatureStore { entries }
    }
}

/// The tier a single exhibited argument earns its claim. Exhibited
/// arguments are well-formed by move legality, so Supported is the floor.
fn tier(
    arg: &GroundedArgument,
    exhibited: &[ExhibitedArgument],
    mode: ConsistencyMode,
    atom_budget: usize,
) -> &'static str {
    let consistent = arg.is_consistent(mode, atom_budget).unwrap_or(false);
    if !consistent {
        return SUPPORTED;
    }
    let rebutted = exhibited
        .iter()
        .any(|e| neg_equivalent(&e.argument.claim, &arg.claim));
    if rebutted {
        return PLAUSIBLE;
    }
    let undercut = exhibited.iter().any(|e| e.argument.undercuts(arg));
    if undercut {
        return PROBABLE;
    }
    CONFIRMED
}

/// Rule 5: Certain for tautologies, otherwise the best tier earned by
/// any exhibited argument for the claim, Open when there is none.
pub fn modality(
    claim: &Wff,
    exhibited: &[ExhibitedArgument],
    _rules: &BTreeMap<String, InferenceRule>,
    mode: ConsistencyMode,
    atom_budget: usize,
) -> &'static str {
    // budget overflow forgoes the Certain ruling, never fails
    if is_tautology_with_budget(claim, atom_budget).unwrap_or(false) {
        return CERTAIN;
    }
    let norm = claim.normalize();
    exhibited
        .iter()
        .filter(|e| e.argument.claim.normalize() == norm)
        .map(|e| tier(&e.argument, exhibited, mode, atom_budget))
        .max_by_key(|label| tier_rank(label))
        .unwrap_or(OPEN)
}

/// Attack report for a claim: who rebuts it, and who undercuts each
/// exhibited argument for it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttackReport {
    pub claim: Wff,
    pub rebuttals: Vec<MoveId>,
    pub undercutters: Vec<(MoveId, Vec<MoveId>)>,
}

/// Theorem 2 equivalence: provisional proof exists iff valuation is 1,
/// for every tracked non-tautological wff.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem2Report {
    pub checked: usize,
    pub skipped_tautologies: usize,
    pub counterexamples: Vec<Theorem2Counterexample>,
    pub pending_obligations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem2Counterexample {
    pub wff: Wff,
    pub has_provisional_proof: bool,
    pub valuation: u8,
}

impl Theorem2Report {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl DialogueState {
    pub fn nature_modality(&self, claim: &Wff) -> &'static str {
        modality(
            claim,
            &self.exhibited,
            &self.rules,
            self.config.consistency_mode,
            self.config.atom_budget,
        )
    }

    /// 1 iff Nature's modality is Confirmed.
    pub fn natural_valuation(&self, claim: &Wff) -> u8 {
        (self.nature_modality(claim) == CONFIRMED) as u8
    }

    /// Some exhibited, consistent argument for the claim that nothing
    /// rebuts or undercuts.
    pub fn provisional_proof(&self, claim: &Wff) -> Option<&ExhibitedArgument> {
        let norm = claim.normalize();
        self.exhibited.iter().find(|e| {
            e.argument.claim.normalize() == norm
                && tier(
                    &e.argument,
                    &self.exhibited,
                    self.config.consistency_mode,
                    self.config.atom_budget,
                ) == CONFIRMED
        })
    }

    pub fn arguments_for(&self, claim: &Wff) -> Vec<&ExhibitedArgument> {
        let norm = claim.normalize();
        self.exhibited
            .iter()
            .filter(|e| e.argument.claim.normalize() == norm)
            .collect()
    }

    pub fn rebuttals_of(&self, claim: &Wff) -> Vec<&ExhibitedArgument> {
        self.exhibited
            .iter()
            .filter(|e| neg_equivalent(&e.argument.claim, claim))
            .collect()
    }

    pub fn undercutters_of(&self, argument: &GroundedArgument) -> Vec<&ExhibitedArgument> {
        self.exhibited
            .iter()
            .filter(|e| e.argument.undercuts(argument))
            .collect()
    }

    pub fn attackers(&self, claim: &Wff) -> AttackReport {
        let rebuttals = self.rebuttals_of(claim).iter().map(|e| e.move_id).collect();
        let undercutters = self
            .arguments_for(claim)
            .into_iter()
            .map(|e| {
                (
                    e.move_id,
                    self.undercutters_of(&e.argument)
                        .iter()
                        .map(|u| u.move_id)
                        .collect(),
                )
            })
            .collect();
        AttackReport {
            claim: claim.normalize(),
            rebuttals,
            undercutters,
        }
    }

    pub fn check_theorem2(&self) -> Theorem2Report {
        let mut report = Theorem2Report {
            checked: 0,
            skipped_tautologies: 0,
            counterexamples: Vec::new(),
            pending_obligations: self.obligations.len(),
        };
        for (wff, _) in &self.nature.entries {
            if is_tautology_with_budget(wff, self.config.atom_budget).unwrap_or(false) {
                report.skipped_tautologies += 1;
                continue;
            }
            report.checked += 1;
            let has_proof = self.provisional_proof(wff).is_some();
            let valuation = self.natural_valuation(wff);
            if has_proof != (valuation == 1) {
                report.counterexamples.push(Theorem2Counterexample {
                    wff: wff.clone(),
                    has_provisional_proof: has_proof,
                    valuation,
                });
            }
        }
        report
    }
}
