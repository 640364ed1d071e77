//! Deterministic replay of a script: per-move records, commitment-store
//! deltas and numbered Nature-store snapshot lines.

use crate::dictionaries::krause_claims_dictionary;
use crate::lang::Wff;
use crate::protocol::{
    DialogueState, Obligation, ParticipantStore, ProtocolConfig, Rejection, Requirement,
};
use crate::script::Script;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Debug, Clone, Default)]
pub struct ReplayOptions {
    pub config: ProtocolConfig,
    /// Wffs whose Nature modalities the snapshot lines show; defaults to
    /// the script's `track` seeds (plus negations), or everything tracked
    /// when there are no seeds.
    pub focus: Option<Vec<Wff>>,
    /// Emit a snapshot after every move, not only on change.
    pub verbose: bool,
    pub halt_on_violation: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub index: usize,
    pub entries: Vec<(Wff, String)>,
}

impl Snapshot {
    pub fn line(&self) -> String {
        let claims = krause_claims_dictionary();
        let body = if self.entries.is_empty() {
            "(empty)".to_string()
        } else {
            self.entries
                .iter()
                .map(|(w, l)| format!("({}, {})", w, claims.display(l)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        format!("NCS{}: {}", self.index, body)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub move_id: u32,
    pub rendered: String,
    pub legal: bool,
    pub rejection: Option<Rejection>,
    pub warnings: Vec<String>,
    pub obligations_created: Vec<String>,
    pub obligations_discharged: Vec<String>,
    pub store_deltas: Vec<String>,
    pub snapshot: Option<Snapshot>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub initial_snapshot: Option<Snapshot>,
    pub records: Vec<MoveRecord>,
    pub unresolved_obligations: Vec<String>,
}

impl Trace {
    pub fn all_legal(&self) -> bool {
        self.records.iter().all(|r| r.legal)
    }

    pub fn clean(&self) -> bool {
        self.all_legal() && self.unresolved_obligations.is_empty()
    }

    /// Byte-stable rendering: same script, same bytes.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(s) = &self.initial_snapshot {
            let _ = writeln!(out, "{}", s.line());
        }
        for r in &self.records {
            let _ = writeln!(out, "M{}: {}", r.move_id, r.rendered);
            if let Some(rej) = &r.rejection {
                let _ = writeln!(out, "  REJECTED {rej}");
            }
            for w in &r.warnings {
                let _ = writeln!(out, "  warning: {w}");
            }
            for d in &r.store_deltas {
                let _ = writeln!(out, "  {d}");
            }
            for o in &r.obligations_discharged {
                let _ = writeln!(out, "  obligation discharged: {o}");
            }
            for o in &r.obligations_created {
                let _ = writeln!(out, "  obligation: {o}");
            }
            if let Some(s) = &r.snapshot {
                let _ = writeln!(out, "{}", s.line());
            }
        }
        for o in &self.unresolved_obligations {
            let _ = writeln!(out, "unresolved obligation: {o}");
        }
        out
    }
}

pub(crate) fn render_obligation(o: &Obligation) -> String {
    match &o.requirement {
        Requirement::ShowArgFor { claim } => {
            format!("{} must show_arg for {} (from M{})", o.participant, claim, o.source)
        }
        Requirement::ShowConsFrom { source, consequence } => format!(
            "{} must show_cons from {} yielding {} (from M{})",
            o.participant, source, consequence, o.source
        ),
        Requirement::RespondToContest { claim, label } => format!(
            "{} must respond to the contest of ({}, {}) (from M{})",
            o.participant,
            claim,
            krause_claims_dictionary().display(label),
            o.source
        ),
    }
}

/// Builds the pre-move dialogue state a script describes.
pub fn initial_state(script: &Script, config: ProtocolConfig) -> DialogueState {
    let mut state = DialogueState::new(config)
        .with_dictionaries(script.claims_dictionary(), script.inference_dictionary());
    for p in &script.participants {
        state.register_participant(p.clone());
    }
    for r in &script.rules {
        state.register_rule(r.clone());
    }
    for t in &script.tracks {
        state.track_seed(t);
    }
    state
}

pub(crate) fn display_set(state: &DialogueState, options: &ReplayOptions) -> Option<Vec<Wff>> {
    if let Some(focus) = &options.focus {
        let mut set = Vec::new();
        for w in focus {
            let norm = w.normalize();
            if !set.contains(&norm) {
                set.push(norm);
            }
        }
        return Some(set);
    }
    if state.track_seeds.is_empty() {
        return None; // show everything tracked
    }
    let mut set = Vec::new();
    for w in &state.track_seeds {
        for x in [w.normalize(), w.negated()] {
            if !set.contains(&x) {
                set.push(x);
            }
        }
    }
    Some(set)
}

pub(crate) fn snapshot(state: &DialogueState, options: &ReplayOptions, index: usize) -> Snapshot {
    let entries = match display_set(state, options) {
        None => state.nature.entries.clone(),
        Some(set) => set
            .iter()
            .filter_map(|w| state.nature.get(w).map(|l| (w.clone(), l.to_string())))
            .collect(),
    };
    Snapshot { index, entries }
}

pub(crate) fn store_deltas(before: &DialogueState, after: &DialogueState) -> Vec<String> {
    let mut deltas = Vec::new();
    let claims = &after.claims_dict;
    let empty = ParticipantStore::default();
    let names: Vec<&String> = after.participants.iter().collect();
    for name in names {
        let old = before.stores.get(name).unwrap_or(&empty);
        let new = after.stores.get(name).unwrap_or(&empty);
        for entry in &new.entries {
            match old.get(&entry.wff) {
                None => deltas.push(format!(
                    "CS({}) += ({}, {})",
                    name,
                    entry.wff,
                    claims.display(&entry.label)
                )),
                Some(prev) if prev.label != entry.label => deltas.push(format!(
                    "CS({}) ~= ({}, {})",
                    name,
                    entry.wff,
                    claims.display(&entry.label)
                )),
                Some(_) => {}
            }
        }
        for entry in &old.entries {
            if new.get(&entry.wff).is_none() {
                deltas.push(format!(
                    "CS({}) -= ({}, {})",
                    name,
                    entry.wff,
                    claims.display(&entry.label)
                ));
            }
        }
    }
    deltas
}

/// Replays every move of the script, producing the deterministic trace
/// and the final state. Illegal moves are recorded and skipped (or end
/// the replay under `halt_on_violation`).
pub fn emit_trace(script: &Script, options: &ReplayOptions) -> (Trace, DialogueState) {
    let mut state = initial_state(script, options.config.clone());
    let mut snapshot_index = 0usize;
    let initial_snapshot = if state.tracked.is_empty() {
        None
    } else {
        let s = snapshot(&state, options, snapshot_index);
        snapshot_index += 1;
        Some(s)
    };

    let mut records = Vec::new();
    for mv in &script.moves {
        let rendered = script.render_move_body(mv);
        match state.apply_move(mv) {
            Ok((next, applied)) => {
                let discharged: Vec<String> = state
                    .pending_obligations()
                    .iter()
                    .filter(|o| !next.pending_obligations().contains(o))
                    .map(render_obligation)
                    .collect();
                let created: Vec<String> = next
                    .pending_obligations()
                    .iter()
                    .filter(|o| !state.pending_obligations().contains(o))
                    .map(render_obligation)
                    .collect();
                let deltas = store_deltas(&state, &next);
                let snap = if applied.nature_changed || options.verbose {
                    let s = snapshot(&next, options, snapshot_index);
                    snapshot_index += 1;
                    Some(s)
                } else {
                    None
                };
                records.push(MoveRecord {
                    move_id: mv.id,
                    rendered,
                    legal: true,
                    rejection: None,
                    warnings: applied.warnings,
                    obligations_created: created,
                    obligations_discharged: discharged,
                    store_deltas: deltas,
                    snapshot: snap,
                });
                state = next;
            }
            Err(rejection) => {
                records.push(MoveRecord {
                    move_id: mv.id,
                    rendered,
                    legal: false,
                    rejection: Some(rejection),
                    warnings: Vec::new(),
                    obligations_created: Vec::new(),
                    obligations_discharged: Vec::new(),
                    store_deltas: Vec::new(),
                    snapshot: None,
                });
                if options.halt_on_violation {
                    break;
                }
            }
        }
    }
    let unresolved = state
        .pending_obligations()
        .iter()
        .map(render_obligation)
        .collect();
    (
        Trace {
            initial_snapshot,
            records,
            unresolved_obligations: unresolved,
        },
        state,
    )
}

/// Per-move legality report over a whole script (never halts early).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub moves_checked: usize,
    pub violations: Vec<(u32, Rejection)>,
    pub warnings: Vec<(u32, String)>,
    pub unresolved_obligations: Vec<String>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.unresolved_obligations.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "moves checked: {}", self.moves_checked);
        for (id, rej) in &self.violations {
            let _ = writeln!(out, "M{id}: REJECTED {rej}");
        }
        for (id, w) in &self.warnings {
            let _ = writeln!(out, "M{id}: warning: {w}");
        }
        for o in &self.unresolved_obligations {
            let _ = writeln!(out, "unresolved obligation: {o}");
        }
        let _ = writeln!(
            out,
            "verdict: {}",
            if self.is_clean() { "legal" } else { "violations found" }
        );
        out
    }
}

pub fn validate_dialogue(script: &Script, config: ProtocolConfig) -> ValidationReport {
    let options = ReplayOptions {
        config,
        ..ReplayOptions::default()
    };
    let (trace, _) = emit_trace(script, &options);
    let mut violations = Vec::new();
    let mut warnings = Vec::new();
    for r in &trace.records {
        if let Some(rej) = &r.rejection {
            violations.push((r.move_id, rej.clone()));
        }
        for w in &r.warnings {
            warnings.push((r.move_id, w.clone()));
        }
    }
    ValidationReport {
        moves_checked: trace.records.len(),
        violations,
        warnings,
        unresolved_obligations: trace.unresolved_obligations.clone(),
    }
}

/// Structured export of a script and its trace, for programmatic consumers.
#[derive(Debug, Clone, Serialize)]
pub struct Export<'a> {
    pub script: &'a Script,
    pub trace: &'a Trace,
}

pub fn export_json(script: &Script, trace: &Trace) -> String {
    serde_json::to_string_pretty(&Export { script, trace }).expect("export serializes")
}
