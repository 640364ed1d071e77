//! The move catalogue and dialogue state machine: per-move legality,
//! obligation tracking and participant commitment stores.

use crate::arguments::{
    check_value_shape, ConsistencyMode, GroundedArgument, InferenceRule, ValuedConsequentialArgument,
    ValuedGroundedArgument,
};
use crate::dictionaries::{
    default_inference_dictionary, krause_claims_dictionary, ModalityDictionary,
};
use crate::lang::{Wff, DEFAULT_ATOM_BUDGET};
use crate::nature::NatureStore;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

pub type ParticipantId = String;
pub type MoveId = u32;

/// One discourse move. Responsive kinds carry the id of the move they
/// answer; `@Mk` in the script syntax.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Move {
    pub id: MoveId,
    pub actor: ParticipantId,
    pub kind: MoveKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MoveKind {
    Pose { claim: Wff },
    Propose { claim: Wff, label: String },
    Assert { claim: Wff, label: String },
    Query { target: MoveId },
    ShowArg { argument: ValuedGroundedArgument },
    PoseCons { claim: Wff },
    ProposeCons { source: Wff, consequence: Wff, label: String },
    AssertCons { source: Wff, consequence: Wff, label: String },
    QueryCons { target: MoveId },
    ShowCons { argument: ValuedConsequentialArgument },
    ProposeInf { rule: String, strength: String },
    Contest { target: MoveId },
    ContestGround { target: MoveId, ground: Wff, label: String },
    ContestInf { target: MoveId, rule: String },
    ContestMod { target: MoveId },
    ContestCons { target: MoveId, consequence: Wff, label: String },
    AcceptProp { target: MoveId },
    AcceptAssert { target: MoveId },
    AcceptInf { target: MoveId },
    AcceptCons { target: MoveId },
    Prec { target: MoveId, argument: ValuedGroundedArgument },
    Retract { target: MoveId },
}

impl MoveKind {
    pub fn name(&self) -> &'static str {
        match self {
            MoveKind::Pose { .. } => "pose",
            MoveKind::Propose { .. } => "propose",
            MoveKind::Assert { .. } => "assert",
            MoveKind::Query { .. } => "query",
            MoveKind::ShowArg { .. } => "show_arg",
            MoveKind::PoseCons { .. } => "pose_cons",
            MoveKind::ProposeCons { .. } => "propose_cons",
            MoveKind::AssertCons { .. } => "assert_cons",
            MoveKind::QueryCons { .. } => "query_cons",
            MoveKind::ShowCons { .. } => "show_cons",
            MoveKind::ProposeInf { .. } => "propose_inf",
            MoveKind::Contest { .. } => "contest",
            MoveKind::ContestGround { .. } => "contest_ground",
            MoveKind::ContestInf { .. } => "contest_inf",
            MoveKind::ContestMod { .. } => "contest_mod",
            MoveKind::ContestCons { .. } => "contest_cons",
            MoveKind::AcceptProp { .. } => "accept_prop",
            MoveKind::AcceptAssert { .. } => "accept_assert",
            MoveKind::AcceptInf { .. } => "accept_inf",
            MoveKind::AcceptCons { .. } => "accept_cons",
            MoveKind::Prec { .. } => "prec",
            MoveKind::Retract { .. } => "retract",
        }
    }
}

/// How a store entry arose; Rule 3.8 and retraction only concern
/// asserted (or accepted-as-asserted) claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Proposed,
    Asserted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoreEntry {
    pub wff: Wff,
    pub label: String,
    pub provenance: Provenance,
}

/// A participant's commitment store: at most one entry per wff.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ParticipantStore {
    pub entries: Vec<StoreEntry>,
}

impl ParticipantStore {
    pub fn get(&self, wff: &Wff) -> Option<&StoreEntry> {
        let norm = wff.normalize();
        self.entries.iter().find(|e| e.wff == norm)
    }

    fn upsert(&mut self, wff: Wff, label: String, provenance: Provenance) {
        let norm = wff.normalize();
        if let Some(entry) = self.entries.iter_mut().find(|e| e.wff == norm) {
            entry.label = label;
            // an assertion over a proposal strengthens; never downgrade
            if provenance == Provenance::Asserted {
                entry.provenance = Provenance::Asserted;
            }
        } else {
            self.entries.push(StoreEntry {
                wff: norm,
                label,
                provenance,
            });
        }
    }

    fn remove(&mut self, wff: &Wff) -> bool {
        let norm = wff.normalize();
        let before = self.entries.len();
        self.entries.retain(|e| e.wff != norm);
        self.entries.len() != before
    }
}

/// What the obligated participant must do with their very next move.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Requirement {
    /// Show a valued grounded argument for the claim (Rule 1.4).
    ShowArgFor { claim: Wff },
    /// Show a valued consequential argument from the source (Rule 1.9).
    ShowConsFrom { source: Wff, consequence: Wff },
    /// Re-propose/assert the claim with a different modality, or
    /// propose/assert its negation (Rule 2.1).
    RespondToContest { claim: Wff, label: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Obligation {
    pub participant: ParticipantId,
    pub requirement: Requirement,
    pub source: MoveId,
}

/// A grounded argument made public by a show_arg (or accept/prec) move;
/// only these feed Nature's modality assignment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExhibitedArgument {
    pub argument: GroundedArgument,
    pub values: crate::dictionaries::ValueAssignment,
    pub by: ParticipantId,
    pub move_id: MoveId,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExhibitedConsequential {
    pub argument: ValuedConsequentialArgument,
    pub by: ParticipantId,
    pub move_id: MoveId,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    /// Enforce Rule 2.1's literal d' > d side condition on the negation
    /// branch, and reject retraction of merely proposed claims.
    pub strict: bool,
    pub consistency_mode: ConsistencyMode,
    pub atom_budget: usize,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        ProtocolConfig {
            strict: false,
            consistency_mode: ConsistencyMode::Syntactic,
            atom_budget: DEFAULT_ATOM_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    ObligationViolation,
    Contradiction,
    BadTarget,
    MalformedPayload,
    ContestResponseViolation,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::ObligationViolation => "obligation-violation",
            ViolationKind::Contradiction => "contradiction",
            ViolationKind::BadTarget => "bad-target",
            ViolationKind::MalformedPayload => "malformed-payload",
            ViolationKind::ContestResponseViolation => "contest-response-violation",
        };
        f.write_str(s)
    }
}

/// Why a move was rejected; the state is left unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub kind: ViolationKind,
    pub rule: String,
    pub message: String,
}

impl Rejection {
    fn new(kind: ViolationKind, rule: &str, message: impl Into<String>) -> Self {
        Rejection {
            kind,
            rule: rule.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}): {}", self.kind, self.rule, self.message)
    }
}

/// Outcome of a successfully applied move.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Applied {
    pub warnings: Vec<String>,
    /// Whether Nature's store differs from the pre-move store.
    pub nature_changed: bool,
}

/// The evolving dialogue: event-sourced, reconstructible by folding
/// `apply_move` over the move log from the initial state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DialogueState {
    pub config: ProtocolConfig,
    pub claims_dict: ModalityDictionary,
    pub inference_dict: ModalityDictionary,
    pub participants: Vec<ParticipantId>,
    pub rules: BTreeMap<String, InferenceRule>,
    pub moves: Vec<Move>,
    pub stores: BTreeMap<ParticipantId, ParticipantStore>,
    pub obligations: VecDeque<Obligation>,
    pub exhibited: Vec<ExhibitedArgument>,
    pub exhibited_cons: Vec<ExhibitedConsequential>,
    /// Wffs Nature tracks, in first-mention order, normalized.
    pub tracked: Vec<Wff>,
    /// Script-declared seed wffs; the default trace filter.
    pub track_seeds: Vec<Wff>,
    pub nature: NatureStore,
}

impl DialogueState {
    pub fn new(config: ProtocolConfig) -> Self {
        DialogueState {
            config,
            claims_dict: krause_claims_dictionary(),
            inference_dict: default_inference_dictionary(),
            participants: Vec::new(),
            rules: BTreeMap::new(),
            moves: Vec::new(),
            stores: BTreeMap::new(),
            obligations: VecDeque::new(),
            exhibited: Vec::new(),
            exhibited_cons: Vec::new(),
            tracked: Vec::new(),
            track_seeds: Vec::new(),
            nature: NatureStore::default(),
        }
    }

    pub fn with_dictionaries(
        mut self,
        claims: ModalityDictionary,
        inference: ModalityDictionary,
    ) -> Self {
        self.claims_dict = claims;
        self.inference_dict = inference;
        self
    }

    pub fn register_participant(&mut self, id: impl Into<String>) {
        let id = id.into();
        if !self.participants.contains(&id) {
            self.stores.entry(id.clone()).or_default();
            self.participants.push(id);
        }
    }

    pub fn register_rule(&mut self, rule: InferenceRule) {
        self.rules.insert(rule.id.clone(), rule);
    }

    /// Seeds Nature's tracking before any move (the negation is tracked too).
    pub fn track_seed(&mut self, wff: &Wff) {
        let norm = wff.normalize();
        if !self.track_seeds.contains(&norm) {
            self.track_seeds.push(norm.clone());
        }
        self.track(&norm);
        self.recompute_nature();
    }

    fn track(&mut self, wff: &Wff) {
        let norm = wff.normalize();
        let neg = norm.negated();
        if !self.tracked.contains(&norm) {
            self.tracked.push(norm);
        }
        if !self.tracked.contains(&neg) {
            self.tracked.push(neg);
        }
    }

    pub fn find_move(&self, id: MoveId) -> Option<&Move> {
        self.moves.iter().find(|m| m.id == id)
    }

    pub fn pending_obligations(&self) -> &VecDeque<Obligation> {
        &self.obligations
    }

    pub fn store(&self, participant: &str) -> Option<&ParticipantStore> {
        self.stores.get(participant)
    }

    pub fn next_move_id(&self) -> MoveId {
        self.moves.last().map(|m| m.id + 1).unwrap_or(1)
    }

    fn recompute_nature(&mut self) {
        self.nature = NatureStore::recompute(
            &self.tracked,
            &self.exhibited,
            &self.rules,
            self.config.consistency_mode,
            self.config.atom_budget,
        );
    }

    fn resolve_claims_label(&self, label: &str) -> Result<String, Rejection> {
        self.claims_dict
            .resolve(label)
            .map(|s| s.to_string())
            .ok_or_else(|| {
                Rejection::new(
                    ViolationKind::MalformedPayload,
                    "Def 3",
                    format!("unknown claims-dictionary label '{label}'"),
                )
            })
    }

    /// Applies one move, returning the successor state. The receiver is
    /// never mutated; rejection leaves the dialogue as it was.
    pub fn apply_move(&self, mv: &Move) -> Result<(DialogueState, Applied), Rejection> {
        if let Some(last) = self.moves.last() {
            if mv.id <= last.id {
                return Err(Rejection::new(
                    ViolationKind::MalformedPayload,
                    "Def 5",
                    format!("move id M{} is not after M{}", mv.id, last.id),
                ));
            }
        }

        let mut next = self.clone();
        next.register_participant(mv.actor.clone());
        let mut warnings = Vec::new();

        next.check_obligation(mv)?;
        next.check_and_apply(mv, &mut warnings)?;

        for wff in mentioned_wffs(&mv.kind) {
            next.track(&wff);
        }
        next.moves.push(mv.clone());
        let before = self.nature.clone();
        next.recompute_nature();
        let nature_changed = next.nature != before;
        Ok((next, Applied { warnings, nature_changed }))
    }

    /// The oldest pending obligation must be discharged by this move;
    /// pops it from the queue when it is.
    fn check_obligation(&mut self, mv: &Move) -> Result<(), Rejection> {
        let Some(obligation) = self.obligations.front().cloned() else {
            return Ok(());
        };
        let fail = |message: String| {
            Err(Rejection::new(
                ViolationKind::ObligationViolation,
                "Rule 1.4",
                message,
            ))
        };
        if mv.actor != obligation.participant {
            return fail(format!(
                "{} must respond immediately to M{} before any other move",
                obligation.participant, obligation.source
            ));
        }
        match &obligation.requirement {
            Requirement::ShowArgFor { claim } => match &mv.kind {
                MoveKind::ShowArg { argument }
                    if argument.argument.claim.normalize() == *claim =>
                {
                    self.obligations.pop_front();
                    Ok(())
                }
                _ => fail(format!(
                    "{} must show_arg a grounded argument for {} (queried at M{})",
                    obligation.participant, claim, obligation.source
                )),
            },
            Requirement::ShowConsFrom { source, consequence } => match &mv.kind {
                MoveKind::ShowCons { argument }
                    if argument.argument.source.normalize() == *source
                        && argument
                            .argument
                            .consequences()
                            .iter()
                            .any(|c| c.normalize() == *consequence) =>
                {
                    self.obligations.pop_front();
                    Ok(())
                }
                _ => fail(format!(
                    "{} must show_cons a consequential argument from {} yielding {}",
                    obligation.participant, source, consequence
                )),
            },
            Requirement::RespondToContest { claim, label } => {
                let (new_claim, new_label) = match &mv.kind {
                    MoveKind::Propose { claim, label } | MoveKind::Assert { claim, label } => {
                        (claim.normalize(), label.clone())
                    }
                    _ => {
                        return fail(format!(
                            "{} must respond to the contest of ({claim}, {label}) \
                             with a propose or assert",
                            obligation.participant
                        ))
                    }
                };
                let new_label = self.resolve_claims_label(&new_label)?;
                let response_error = |message: String| {
                    Err(Rejection::new(
                        ViolationKind::ContestResponseViolation,
                        "Rule 2.1",
                        message,
                    ))
                };
                if new_claim == *claim {
                    if new_label == *label {
                        return response_error(format!(
                            "re-proposal of {claim} must carry a modality other than {label}"
                        ));
                    }
                } else if new_claim == claim.negated() {
                    if self.config.strict {
                        use crate::dictionaries::LabelOrdering;
                        let ord = self
                            .claims_dict
                            .compare(&new_label, label)
                            .unwrap_or(LabelOrdering::Incomparable);
                        if ord != LabelOrdering::Greater {
                            return response_error(format!(
                                "negation response requires a modality stronger than {label}, \
                                 got {new_label}"
                            ));
                        }
                    }
                } else {
                    return response_error(format!(
                        "response must address {claim} or its negation, got {new_claim}"
                    ));
                }
                self.obligations.pop_front();
                Ok(())
            }
        }
    }

    fn check_and_apply(&mut self, mv: &Move, warnings: &mut Vec<String>) -> Result<(), Rejection> {
        match &mv.kind {
            MoveKind::Pose { .. } | MoveKind::PoseCons { .. } => Ok(()),

            MoveKind::Propose { claim, label } => {
                let label = self.resolve_claims_label(label)?;
                self.stores
                    .get_mut(&mv.actor)
                    .unwrap()
                    .upsert(claim.clone(), label, Provenance::Proposed);
                Ok(())
            }

            MoveKind::Assert { claim, label } => {
                let label = self.resolve_claims_label(label)?;
                self.check_no_contradiction(&mv.actor, claim)?;
                self.stores
                    .get_mut(&mv.actor)
                    .unwrap()
                    .upsert(claim.clone(), label, Provenance::Asserted);
                Ok(())
            }

            MoveKind::Query { target } => {
                let target_move = self.require_target(*target)?;
                match &target_move.kind {
                    MoveKind::Propose { claim, label } | MoveKind::Assert { claim, label } => {
                        if target_move.actor == mv.actor {
                            return Err(Rejection::new(
                                ViolationKind::BadTarget,
                                "Rule 1.4",
                                "only another participant may query a claim",
                            ));
                        }
                        let obligated = target_move.actor.clone();
                        let claim = claim.normalize();
                        let _ = label;
                        self.obligations.push_back(Obligation {
                            participant: obligated,
                            requirement: Requirement::ShowArgFor { claim },
                            source: mv.id,
                        });
                        Ok(())
                    }
                    MoveKind::Contest { target: contested } => {
                        let contested_move = self.require_target(*contested)?;
                        let (claim, label) = match &contested_move.kind {
                            MoveKind::Propose { claim, label }
                            | MoveKind::Assert { claim, label } => {
                                (claim.normalize(), self.resolve_claims_label(label)?)
                            }
                            _ => {
                                return Err(Rejection::new(
                                    ViolationKind::BadTarget,
                                    "Rule 2.1",
                                    "contest target is not a propose or assert",
                                ))
                            }
                        };
                        self.obligations.push_back(Obligation {
                            participant: target_move.actor.clone(),
                            requirement: Requirement::RespondToContest { claim, label },
                            source: mv.id,
                        });
                        Ok(())
                    }
                    other => Err(Rejection::new(
                        ViolationKind::BadTarget,
                        "Rule 1.4",
                        format!("query must target a propose, assert or contest, not {}", other.name()),
                    )),
                }
            }

            MoveKind::ShowArg { argument } => {
                self.check_grounded_payload(argument, warnings)?;
                self.exhibit_grounded(argument, &mv.actor, mv.id);
                // change-modalities: revise the mover's store entry in place
                let claim = argument.argument.claim.clone();
                let label = self
                    .claims_dict
                    .resolve(&argument.values.claim_label)
                    .unwrap_or(&argument.values.claim_label)
                    .to_string();
                let store = self.stores.get_mut(&mv.actor).unwrap();
                if let Some(entry) = store.get(&claim) {
                    let provenance = entry.provenance;
                    store.upsert(claim, label, provenance);
                }
                Ok(())
            }

            MoveKind::ProposeCons { label, .. } | MoveKind::AssertCons { label, .. } => {
                self.resolve_claims_label(label)?;
                Ok(())
            }

            MoveKind::QueryCons { target } => {
                let target_move = self.require_target(*target)?;
                match &target_move.kind {
                    MoveKind::ProposeCons { source, consequence, .. }
                    | MoveKind::AssertCons { source, consequence, .. } => {
                        if target_move.actor == mv.actor {
                            return Err(Rejection::new(
                                ViolationKind::BadTarget,
                                "Rule 1.9",
                                "only another participant may query a consequence",
                            ));
                        }
                        self.obligations.push_back(Obligation {
                            participant: target_move.actor.clone(),
                            requirement: Requirement::ShowConsFrom {
                                source: source.normalize(),
                                consequence: consequence.normalize(),
                            },
                            source: mv.id,
                        });
                        Ok(())
                    }
                    other => Err(Rejection::new(
                        ViolationKind::BadTarget,
                        "Rule 1.9",
                        format!(
                            "query_cons must target a propose_cons or assert_cons, not {}",
                            other.name()
                        ),
                    )),
                }
            }

            MoveKind::ShowCons { argument } => {
                let report = argument.argument.well_formed(&self.rules);
                if !report.is_well_formed() {
                    return Err(Rejection::new(
                        ViolationKind::MalformedPayload,
                        "Def 2",
                        report.violations.join("; "),
                    ));
                }
                warnings.extend(report.warnings);
                let shape_errors = check_value_shape(
                    &argument.argument.steps,
                    &argument.values,
                    &self.claims_dict,
                    &self.inference_dict,
                );
                if !shape_errors.is_empty() {
                    return Err(Rejection::new(
                        ViolationKind::MalformedPayload,
                        "Def 4",
                        shape_errors.join("; "),
                    ));
                }
                self.exhibited_cons.push(ExhibitedConsequential {
                    argument: argument.clone(),
                    by: mv.actor.clone(),
                    move_id: mv.id,
                });
                Ok(())
            }

            MoveKind::ProposeInf { rule, strength } => {
                let strength = self
                    .inference_dict
                    .resolve(strength)
                    .map(|s| s.to_string())
                    .ok_or_else(|| {
                        Rejection::new(
                            ViolationKind::MalformedPayload,
                            "Rule 1.11",
                            format!("unknown inference-dictionary label '{strength}'"),
                        )
                    })?;
                self.rules
                    .entry(rule.clone())
                    .or_insert_with(|| InferenceRule::new(rule.clone(), String::new()))
                    .strength = Some(strength);
                Ok(())
            }

            MoveKind::Contest { target } => {
                let target_move = self.require_target(*target)?;
                match &target_move.kind {
                    MoveKind::Propose { .. } | MoveKind::Assert { .. } => {
                        if target_move.actor == mv.actor {
                            return Err(Rejection::new(
                                ViolationKind::BadTarget,
                                "Rule 2.1",
                                "only another participant may contest a claim",
                            ));
                        }
                        Ok(())
                    }
                    other => Err(Rejection::new(
                        ViolationKind::BadTarget,
                        "Rule 2.1",
                        format!("contest must target a propose or assert, not {}", other.name()),
                    )),
                }
            }

            MoveKind::ContestGround { target, ground, label } => {
                let argument = self.require_shown_argument(*target, "Rule 2.2")?.clone();
                if self.find_move(*target).map(|m| m.actor.as_str()) == Some(mv.actor.as_str()) {
                    return Err(Rejection::new(
                        ViolationKind::BadTarget,
                        "Rule 2.2",
                        "only another participant may contest a ground",
                    ));
                }
                let norm = ground.normalize();
                let position = argument
                    .argument
                    .grounds_with_labels(&argument.values)
                    .into_iter()
                    .find(|(g, _)| g.normalize() == norm);
                match position {
                    None => Err(Rejection::new(
                        ViolationKind::MalformedPayload,
                        "Rule 2.2",
                        format!("{ground} is not a ground of the argument shown at M{target}"),
                    )),
                    Some((_, assigned)) => {
                        let assigned = self
                            .claims_dict
                            .resolve(&assigned)
                            .unwrap_or(&assigned)
                            .to_string();
                        let resolved = self.resolve_claims_label(label)?;
                        if assigned != resolved {
                            warnings.push(format!(
                                "contested ground {ground} carries label {assigned}, not {resolved}"
                            ));
                        }
                        Ok(())
                    }
                }
            }

            MoveKind::ContestInf { target, rule } => {
                let argument = self.require_shown_argument(*target, "Rule 2.3")?;
                if !argument.argument.steps.iter().any(|s| &s.rule == rule) {
                    return Err(Rejection::new(
                        ViolationKind::MalformedPayload,
                        "Rule 2.3",
                        format!("rule {rule} is not used by the argument shown at M{target}"),
                    ));
                }
                if self.find_move(*target).map(|m| m.actor.as_str()) == Some(mv.actor.as_str()) {
                    return Err(Rejection::new(
                        ViolationKind::BadTarget,
                        "Rule 2.3",
                        "only another participant may contest an inference",
                    ));
                }
                Ok(())
            }

            MoveKind::ContestMod { target } => {
                self.require_shown_argument(*target, "Rule 2.4")?;
                if self.find_move(*target).map(|m| m.actor.as_str()) == Some(mv.actor.as_str()) {
                    return Err(Rejection::new(
                        ViolationKind::BadTarget,
                        "Rule 2.4",
                        "only another participant may contest modalities",
                    ));
                }
                Ok(())
            }

            MoveKind::ContestCons { target, consequence, .. } => {
                let target_move = self.require_target(*target)?;
                let MoveKind::ShowCons { argument } = &target_move.kind else {
                    return Err(Rejection::new(
                        ViolationKind::BadTarget,
                        "Rule 2.5",
                        "contest_cons must target a show_cons",
                    ));
                };
                if target_move.actor == mv.actor {
                    return Err(Rejection::new(
                        ViolationKind::BadTarget,
                        "Rule 2.5",
                        "only another participant may contest a consequence",
                    ));
                }
                let norm = consequence.normalize();
                if !argument
                    .argument
                    .consequences()
                    .iter()
                    .any(|c| c.normalize() == norm)
                {
                    return Err(Rejection::new(
                        ViolationKind::MalformedPayload,
                        "Rule 2.5",
                        format!("{consequence} is not a consequence shown at M{target}"),
                    ));
                }
                Ok(())
            }

            MoveKind::AcceptProp { target } | MoveKind::AcceptAssert { target } => {
                let accepting_assert = matches!(mv.kind, MoveKind::AcceptAssert { .. });
                let target_move = self.require_target(*target)?;
                let MoveKind::ShowArg { argument } = &target_move.kind else {
                    return Err(Rejection::new(
                        ViolationKind::BadTarget,
                        "Rule 3.1",
                        "acceptance must target a show_arg",
                    ));
                };
                if target_move.actor == mv.actor {
                    return Err(Rejection::new(
                        ViolationKind::BadTarget,
                        "Rule 3.1",
                        "only another participant may accept a claim",
                    ));
                }
                let argument = argument.clone();
                let claim = argument.argument.claim.clone();
                if accepting_assert {
                    self.check_no_contradiction(&mv.actor, &claim)?;
                }
                // expansion: propose/assert + show_arg by the accepter
                let label = self.resolve_claims_label(&argument.values.claim_label)?;
                let provenance = if accepting_assert {
                    Provenance::Asserted
                } else {
                    Provenance::Proposed
                };
                self.stores
                    .get_mut(&mv.actor)
                    .unwrap()
                    .upsert(claim, label, provenance);
                self.exhibit_grounded(&argument, &mv.actor, mv.id);
                Ok(())
            }

            MoveKind::AcceptInf { target } => {
                let target_move = self.require_target(*target)?;
                match &target_move.kind {
                    MoveKind::ProposeInf { .. } if target_move.actor != mv.actor => Ok(()),
                    MoveKind::ProposeInf { .. } => Err(Rejection::new(
                        ViolationKind::BadTarget,
                        "Rule 3.4",
                        "only another participant may accept a mode of inference",
                    )),
                    other => Err(Rejection::new(
                        ViolationKind::BadTarget,
                        "Rule 3.4",
                        format!("accept_inf must target a propose_inf, not {}", other.name()),
                    )),
                }
            }

            MoveKind::AcceptCons { target } => {
                let target_move = self.require_target(*target)?;
                match &target_move.kind {
                    MoveKind::ShowCons { argument } if target_move.actor != mv.actor => {
                        let argument = argument.clone();
                        self.exhibited_cons.push(ExhibitedConsequential {
                            argument,
                            by: mv.actor.clone(),
                            move_id: mv.id,
                        });
                        Ok(())
                    }
                    MoveKind::ShowCons { .. } => Err(Rejection::new(
                        ViolationKind::BadTarget,
                        "Rule 3.5",
                        "only another participant may accept a consequence",
                    )),
                    other => Err(Rejection::new(
                        ViolationKind::BadTarget,
                        "Rule 3.5",
                        format!("accept_cons must target a show_cons, not {}", other.name()),
                    )),
                }
            }

            MoveKind::Prec { target, argument } => {
                let target_move = self.require_target(*target)?;
                if target_move.actor != mv.actor {
                    return Err(Rejection::new(
                        ViolationKind::BadTarget,
                        "Rule 3.6",
                        "a participant may only precizate her own argument",
                    ));
                }
                let old = match &target_move.kind {
                    MoveKind::ShowArg { argument } | MoveKind::Prec { argument, .. } => {
                        argument.clone()
                    }
                    other => {
                        return Err(Rejection::new(
                            ViolationKind::BadTarget,
                            "Rule 3.6",
                            format!("prec must target a show_arg, not {}", other.name()),
                        ))
                    }
                };
                self.check_precization(&old.argument, &argument.argument)?;
                self.check_grounded_payload(argument, warnings)?;
                // the qualified argument supersedes the original
                self.exhibited
                    .retain(|e| !(e.by == mv.actor && e.argument == old.argument));
                self.exhibited.push(ExhibitedArgument {
                    argument: argument.argument.clone(),
                    values: argument.values.clone(),
                    by: mv.actor.clone(),
                    move_id: mv.id,
                });
                Ok(())
            }

            MoveKind::Retract { target } => {
                let target_move = self.require_target(*target)?.clone();
                if target_move.actor != mv.actor {
                    return Err(Rejection::new(
                        ViolationKind::BadTarget,
                        "Rule 3.7",
                        "a participant may only retract her own claim",
                    ));
                }
                let claim = match &target_move.kind {
                    MoveKind::Assert { claim, .. } => claim.clone(),
                    MoveKind::Propose { claim, .. } => {
                        if self.config.strict {
                            return Err(Rejection::new(
                                ViolationKind::BadTarget,
                                "Rule 3.7",
                                "only asserted or accepted claims may be retracted",
                            ));
                        }
                        warnings.push(
                            "retracting a merely proposed claim (Rule 3.7 names asserts only)"
                                .to_string(),
                        );
                        claim.clone()
                    }
                    MoveKind::AcceptProp { target } | MoveKind::AcceptAssert { target } => {
                        let accepted = self.require_target(*target)?;
                        match &accepted.kind {
                            MoveKind::ShowArg { argument } => argument.argument.claim.clone(),
                            _ => {
                                return Err(Rejection::new(
                                    ViolationKind::BadTarget,
                                    "Rule 3.7",
                                    "accepted move does not carry a claim",
                                ))
                            }
                        }
                    }
                    other => {
                        return Err(Rejection::new(
                            ViolationKind::BadTarget,
                            "Rule 3.7",
                            format!("retract must target an assert or acceptance, not {}", other.name()),
                        ))
                    }
                };
                let removed = self.stores.get_mut(&mv.actor).unwrap().remove(&claim);
                if !removed {
                    return Err(Rejection::new(
                        ViolationKind::BadTarget,
                        "Rule 3.7",
                        format!("{} holds no commitment to {claim}", mv.actor),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Rule 3.8: an asserted commitment to the negation blocks this claim.
    fn check_no_contradiction(&self, actor: &str, claim: &Wff) -> Result<(), Rejection> {
        let neg = claim.negated();
        if let Some(store) = self.stores.get(actor) {
            if let Some(entry) = store.get(&neg) {
                if entry.provenance == Provenance::Asserted {
                    return Err(Rejection::new(
                        ViolationKind::Contradiction,
                        "Rule 3.8",
                        format!(
                            "{actor} has asserted {} and may not assert {} without retracting",
                            entry.wff, claim
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    fn require_target(&self, id: MoveId) -> Result<&Move, Rejection> {
        self.find_move(id).ok_or_else(|| {
            Rejection::new(
                ViolationKind::BadTarget,
                "Def 5",
                format!("no earlier move M{id}"),
            )
        })
    }

    fn require_shown_argument(
        &self,
        id: MoveId,
        rule: &str,
    ) -> Result<&ValuedGroundedArgument, Rejection> {
        let target = self.require_target(id)?;
        match &target.kind {
            MoveKind::ShowArg { argument } | MoveKind::Prec { argument, .. } => Ok(argument),
            other => Err(Rejection::new(
                ViolationKind::BadTarget,
                rule,
                format!("target M{id} is a {}, not a shown argument", other.name()),
            )),
        }
    }

    fn check_grounded_payload(
        &self,
        argument: &ValuedGroundedArgument,
        warnings: &mut Vec<String>,
    ) -> Result<(), Rejection> {
        let report = argument.argument.well_formed(&self.rules);
        if !report.is_well_formed() {
            return Err(Rejection::new(
                ViolationKind::MalformedPayload,
                "Def 1",
                report.violations.join("; "),
            ));
        }
        warnings.extend(report.warnings);
        let shape_errors = check_value_shape(
            &argument.argument.steps,
            &argument.values,
            &self.claims_dict,
            &self.inference_dict,
        );
        if !shape_errors.is_empty() {
            return Err(Rejection::new(
                ViolationKind::MalformedPayload,
                "Def 4",
                shape_errors.join("; "),
            ));
        }
        Ok(())
    }

    /// Repeating show_arg with the same structure revises the labels in
    /// place (Change Modalities); a new structure is a new exhibit.
    fn exhibit_grounded(
        &mut self,
        argument: &ValuedGroundedArgument,
        actor: &str,
        move_id: MoveId,
    ) {
        if let Some(existing) = self
            .exhibited
            .iter_mut()
            .find(|e| e.by == actor && e.argument == argument.argument)
        {
            existing.values = argument.values.clone();
            existing.move_id = move_id;
        } else {
            self.exhibited.push(ExhibitedArgument {
                argument: argument.argument.clone(),
                values: argument.values.clone(),
                by: actor.to_string(),
                move_id,
            });
        }
    }

    fn check_precization(
        &self,
        old: &GroundedArgument,
        new: &GroundedArgument,
    ) -> Result<(), Rejection> {
        let fail = |message: String| {
            Err(Rejection::new(
                ViolationKind::MalformedPayload,
                "Rule 3.6",
                message,
            ))
        };
        if new.claim != old.claim {
            return fail("precization must keep the claim".into());
        }
        if new.steps.len() != old.steps.len() {
            return fail("precization must keep the step structure".into());
        }
        for (i, (o, n)) in old.steps.iter().zip(&new.steps).enumerate().skip(1) {
            if o.premises != n.premises || o.rule != n.rule || o.conclusion != n.conclusion {
                return fail(format!("precization may only extend step 1, step {} differs", i + 1));
            }
        }
        let (o, n) = (&old.steps[0], &new.steps[0]);
        if o.rule != n.rule || o.conclusion != n.conclusion {
            return fail("precization must keep step 1's rule and conclusion".into());
        }
        if !o.premises.iter().all(|p| n.premises.contains(p)) {
            return fail("precization must keep step 1's original grounds".into());
        }
        let added: Vec<&Wff> = n
            .premises
            .iter()
            .filter(|p| !o.premises.contains(p))
            .collect();
        if added.is_empty() {
            return fail("precization must add at least one qualifying ground".into());
        }
        if added.len() == 1 && *added[0] == old.claim {
            return fail("the qualifying ground set may not be the claim itself".into());
        }
        let old_grounds = old.grounds();
        if added.iter().any(|p| old_grounds.contains(p)) {
            return fail("qualifying grounds must be new to the argument".into());
        }
        Ok(())
    }
}

impl GroundedArgument {
    /// Grounds paired with their assigned labels from the value vector
    /// (labels are per premise per step, in order).
    pub fn grounds_with_labels(
        &self,
        values: &crate::dictionaries::ValueAssignment,
    ) -> Vec<(Wff, String)> {
        let mut out: Vec<(Wff, String)> = Vec::new();
        for (i, (step, labels)) in self.steps.iter().zip(&values.ground_labels).enumerate() {
            let earlier: Vec<&Wff> = self.steps[..i].iter().map(|s| &s.conclusion).collect();
            for (premise, label) in step.premises.iter().zip(labels) {
                if !earlier.contains(&premise) && !out.iter().any(|(g, _)| g == premise) {
                    out.push((premise.clone(), label.clone()));
                }
            }
        }
        out
    }
}

/// Every wff a move puts in play: claims, consequences and grounds.
pub fn mentioned_wffs(kind: &MoveKind) -> Vec<Wff> {
    let mut out = Vec::new();
    let mut push = |w: &Wff| out.push(w.clone());
    match kind {
        MoveKind::Pose { claim } | MoveKind::PoseCons { claim } => push(claim),
        MoveKind::Propose { claim, .. } | MoveKind::Assert { claim, .. } => push(claim),
        MoveKind::ProposeCons { source, consequence, .. }
        | MoveKind::AssertCons { source, consequence, .. } => {
            push(source);
            push(consequence);
        }
        MoveKind::ShowArg { argument } | MoveKind::Prec { argument, .. } => {
            push(&argument.argument.claim);
            for step in &argument.argument.steps {
                for p in &step.premises {
                    push(p);
                }
                push(&step.conclusion);
            }
        }
        MoveKind::ShowCons { argument } => {
            push(&argument.argument.source);
            for step in &argument.argument.steps {
                for p in &step.premises {
                    push(p);
                }
                push(&step.conclusion);
            }
        }
        MoveKind::ContestGround { ground, .. } => push(ground),
        MoveKind::ContestCons { consequence, .. } => push(consequence),
        MoveKind::Query { .. }
        | MoveKind::QueryCons { .. }
        | MoveKind::ProposeInf { .. }
        | MoveKind::Contest { .. }
        | MoveKind::ContestInf { .. }
        | MoveKind::ContestMod { .. }
        | MoveKind::AcceptProp { .. }
        | MoveKind::AcceptAssert { .. }
        | MoveKind::AcceptInf { .. }
        | MoveKind::AcceptCons { .. }
        | MoveKind::Retract { .. } => {}
    }
    out
}
