//! Interactive sessions: feed the engine one move at a time, inspect the
//! stores, undo, and save the accumulated script back to disk.

use crate::protocol::{DialogueState, ProtocolConfig};
use crate::script::{self, Script};
use crate::trace::{self, ReplayOptions};
use std::io::{self, BufRead, Write};

const HELP: &str = "\
commands:
  <move line>        e.g. `assert P1 (phi, Conf)` (an `M<k>:` prefix is optional)
  <setup line>       participant / rule / track / dictionary / arg / cons
  show               print Nature's store, commitment stores and obligations
  undo               take back the last move
  save <path>        write the session as a script
  help               this text
  quit               end the session
";

/// What a finished session did, for callers that want an exit code.
#[derive(Debug, Clone, Copy, Default)]
pub struct ReplOutcome {
    pub moves_applied: usize,
    pub rejections: usize,
}

struct Session {
    script: Script,
    options: ReplayOptions,
    /// One state per applied move, plus the initial state at the bottom.
    /// Each entry carries the next snapshot index so undo keeps the
    /// NCS numbering stable.
    states: Vec<(DialogueState, usize)>,
}

impl Session {
    fn new(script: Script, config: ProtocolConfig) -> Self {
        let options = ReplayOptions {
            config: config.clone(),
            ..ReplayOptions::default()
        };
        let state = trace::initial_state(&script, config);
        let snapshot_index = usize::from(!state.tracked.is_empty());
        Session {
            script,
            options,
            states: vec![(state, snapshot_index)],
        }
    }

    fn current(&self) -> &DialogueState {
        &self.states.last().expect("states never empty").0
    }

    fn snapshot_index(&self) -> usize {
        self.states.last().expect("states never empty").1
    }

    /// Applies one already-parsed move, echoing the same lines the trace
    /// renderer would emit. Returns whether the move was legal.
    fn apply(&mut self, mv: crate::protocol::Move, out: &mut impl Write) -> io::Result<bool> {
        let rendered = self.script.render_move_body(&mv);
        let before = self.current().clone();
        match before.apply_move(&mv) {
            Ok((next, applied)) => {
                writeln!(out, "M{}: {}", mv.id, rendered)?;
                for w in &applied.warnings {
                    writeln!(out, "  warning: {w}")?;
                }
                for d in trace::store_deltas(&before, &next) {
                    writeln!(out, "  {d}")?;
                }
                for o in before
                    .pending_obligations()
                    .iter()
                    .filter(|o| !next.pending_obligations().contains(o))
                {
                    writeln!(out, "  obligation discharged: {}", trace::render_obligation(o))?;
                }
                for o in next
                    .pending_obligations()
                    .iter()
                    .filter(|o| !before.pending_obligations().contains(o))
                {
                    writeln!(out, "  obligation: {}", trace::render_obligation(o))?;
                }
                let mut index = self.snapshot_index();
                if applied.nature_changed {
                    let snap = trace::snapshot(&next, &self.options, index);
                    index += 1;
                    writeln!(out, "{}", snap.line())?;
                }
                self.script.moves.push(mv);
                self.states.push((next, index));
                Ok(true)
            }
            Err(rejection) => {
                writeln!(out, "M{}: {}", mv.id, rendered)?;
                writeln!(out, "  REJECTED {rejection}")?;
                Ok(false)
            }
        }
    }

    /// Re-parses the setup with one extra declaration line and replays
    /// every move under it. Refuses (keeping the old session) if any
    /// previously-legal move becomes illegal.
    fn add_setup_line(&mut self, line: &str) -> Result<(), String> {
        let text = format!("{}{}\n", self.script.render_setup(), line);
        let mut new_script =
            script::parse_script(&text).map_err(|e| e.to_string())?;
        new_script.moves = self.script.moves.clone();
        let state = trace::initial_state(&new_script, self.options.config.clone());
        let mut states = vec![(state, usize::from(!new_script.tracks.is_empty()))];
        for mv in &new_script.moves {
            let (prev, index) = states.last().expect("states never empty");
            match prev.apply_move(mv) {
                Ok((next, applied)) => {
                    let index = index + usize::from(applied.nature_changed);
                    states.push((next, index));
                }
                Err(rejection) => {
                    return Err(format!(
                        "declaration makes M{} illegal: {rejection}",
                        mv.id
                    ));
                }
            }
        }
        self.script = new_script;
        self.states = states;
        Ok(())
    }

    fn show(&self, out: &mut impl Write) -> io::Result<()> {
        let state = self.current();
        let snap = trace::snapshot(state, &self.options, self.snapshot_index().saturating_sub(1));
        writeln!(out, "{}", snap.line())?;
        for p in &state.participants {
            let entries = state
                .store(p)
                .map(|s| s.entries.clone())
                .unwrap_or_default();
            let body = if entries.is_empty() {
                "(empty)".to_string()
            } else {
                entries
                    .iter()
                    .map(|e| format!("({}, {})", e.wff, state.claims_dict.display(&e.label)))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            writeln!(out, "CS({p}): {body}")?;
        }
        for o in state.pending_obligations() {
            writeln!(out, "obligation: {}", trace::render_obligation(o))?;
        }
        Ok(())
    }
}

fn is_setup_line(line: &str) -> bool {
    matches!(
        line.split_whitespace().next(),
        Some("participant" | "rule" | "track" | "dictionary" | "arg" | "cons")
    )
}

/// Drives a session over arbitrary reader/writer pairs, so the same loop
/// serves an interactive terminal and the tests.
pub fn run_repl(
    input: impl BufRead,
    mut out: impl Write,
    script: Option<Script>,
    config: ProtocolConfig,
) -> io::Result<ReplOutcome> {
    let preloaded = script.is_some();
    let mut script = script.unwrap_or_default();
    let moves = std::mem::take(&mut script.moves);
    let mut session = Session::new(script, config);
    let mut outcome = ReplOutcome::default();
    if preloaded {
        if !session.current().tracked.is_empty() {
            let snap = trace::snapshot(session.current(), &session.options, 0);
            writeln!(out, "{}", snap.line())?;
        }
        for mv in moves {
            if session.apply(mv, &mut out)? {
                outcome.moves_applied += 1;
            } else {
                outcome.rejections += 1;
            }
        }
    }
    write!(out, "agora> ")?;
    out.flush()?;
    for line in input.lines() {
        let line = line?;
        let line = line.trim();
        match line {
            "" => {}
            _ if line.starts_with('#') => {}
            "help" => write!(out, "{HELP}")?,
            "quit" | "exit" => break,
            "show" => session.show(&mut out)?,
            "undo" => {
                if session.states.len() > 1 {
                    session.states.pop();
                    let mv = session.script.moves.pop().expect("a move per state");
                    writeln!(out, "undid M{}", mv.id)?;
                } else {
                    writeln!(out, "nothing to undo")?;
                }
            }
            _ if line.starts_with("save ") => {
                let path = line["save ".len()..].trim();
                match std::fs::write(path, session.script.render()) {
                    Ok(()) => writeln!(out, "saved {path}")?,
                    Err(e) => writeln!(out, "error: {e}")?,
                }
            }
            _ if is_setup_line(line) => match session.add_setup_line(line) {
                Ok(()) => writeln!(out, "ok")?,
                Err(e) => writeln!(out, "error: {e}")?,
            },
            _ => {
                let next_id = session.current().next_move_id();
                match script::parse_move(line, &session.script, next_id) {
                    Ok(mv) => {
                        if session.apply(mv, &mut out)? {
                            outcome.moves_applied += 1;
                        } else {
                            outcome.rejections += 1;
                        }
                    }
                    Err(e) => writeln!(out, "error: {e}")?,
                }
            }
        }
        write!(out, "agora> ")?;
        out.flush()?;
    }
    writeln!(out)?;
    Ok(outcome)
}
