//! Parser and renderer for the `.agora` dialogue-script DSL: dictionary,
//! rule, participant, track, arg and cons blocks followed by move lines.

use crate::arguments::{
    ConsequentialArgument, GroundedArgument, InferenceRule, InferenceStep, Validator,
    ValuedConsequentialArgument, ValuedGroundedArgument,
};
use crate::dictionaries::{
    default_inference_dictionary, krause_claims_dictionary, ModalityDictionary, ValueAssignment,
};
use crate::lang::{parse_wff, Wff};
use crate::protocol::{Move, MoveId, MoveKind};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ScriptError {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate id '{id}'")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: forward or unknown reference '{reference}'")]
    ForwardReference { line: usize, reference: String },
}

fn syntax(line: usize, message: impl Into<String>) -> ScriptError {
    ScriptError::Syntax {
        line,
        message: message.into(),
    }
}

/// A declared dictionary: descending chains over its labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DictionaryDecl {
    pub name: String,
    pub chains: Vec<Vec<String>>,
}

impl DictionaryDecl {
    pub fn build(&self) -> Result<ModalityDictionary, crate::dictionaries::DictionaryError> {
        let mut labels: Vec<String> = Vec::new();
        let mut pairs = Vec::new();
        for chain in &self.chains {
            for label in chain {
                if !labels.contains(label) {
                    labels.push(label.clone());
                }
            }
            for pair in chain.windows(2) {
                pairs.push((pair[0].clone(), pair[1].clone()));
            }
        }
        ModalityDictionary::new(self.name.clone(), labels, pairs)
    }
}

/// A parsed dialogue script: setup blocks plus the ordered move list.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Script {
    pub dictionaries: Vec<DictionaryDecl>,
    pub participants: Vec<String>,
    pub rules: Vec<InferenceRule>,
    pub tracks: Vec<Wff>,
    pub args: Vec<(String, ValuedGroundedArgument)>,
    pub cons_args: Vec<(String, ValuedConsequentialArgument)>,
    pub moves: Vec<Move>,
}

impl Script {
    pub fn claims_dictionary(&self) -> ModalityDictionary {
        self.dictionaries
            .iter()
            .find(|d| d.name == "claims")
            .and_then(|d| d.build().ok())
            .unwrap_or_else(krause_claims_dictionary)
    }

    pub fn inference_dictionary(&self) -> ModalityDictionary {
        self.dictionaries
            .iter()
            .find(|d| d.name == "inference")
            .and_then(|d| d.build().ok())
            .unwrap_or_else(default_inference_dictionary)
    }

    fn arg_name(&self, argument: &ValuedGroundedArgument) -> Option<&str> {
        self.args
            .iter()
            .find(|(_, a)| a == argument)
            .map(|(n, _)| n.as_str())
    }

    fn cons_name(&self, argument: &ValuedConsequentialArgument) -> Option<&str> {
        self.cons_args
            .iter()
            .find(|(_, a)| a == argument)
            .map(|(n, _)| n.as_str())
    }

    /// Renders back to DSL text; `parse_script(render(s)) == s`.
    pub fn render(&self) -> String {
        let mut out = self.render_setup();
        for mv in &self.moves {
            let _ = writeln!(out, "M{}: {}", mv.id, self.render_move_body(mv));
        }
        out
    }

    /// The declaration blocks only, without move lines.
    pub fn render_setup(&self) -> String {
        let mut out = String::new();
        for d in &self.dictionaries {
            let chains: Vec<String> = d.chains.iter().map(|c| c.join(" > ")).collect();
            let _ = writeln!(out, "dictionary {} {{ {} }}", d.name, chains.join("; "));
        }
        for p in &self.participants {
            let _ = writeln!(out, "participant {p}");
        }
        for r in &self.rules {
            let mut line = format!("rule {} \"{}\"", r.id, r.description);
            match r.validator {
                Validator::ModusPonens => line.push_str(" validator modus-ponens"),
                Validator::AndIntroduction => line.push_str(" validator and-introduction"),
                Validator::None => {}
            }
            if let Some(s) = &r.strength {
                let _ = write!(line, " strength {s}");
            }
            let _ = writeln!(out, "{line}");
        }
        for t in &self.tracks {
            let _ = writeln!(out, "track {t}");
        }
        for (name, arg) in &self.args {
            let _ = writeln!(
                out,
                "arg {name} = grounded {{ {} }} values {{ {} }}",
                render_steps(&arg.argument.steps),
                render_values(&arg.values)
            );
        }
        for (name, arg) in &self.cons_args {
            let _ = writeln!(
                out,
                "cons {name} = from {} {{ {} }} values {{ {} }}",
                arg.argument.source,
                render_steps(&arg.argument.steps),
                render_values(&arg.values)
            );
        }
        out
    }

    pub fn render_move_body(&self, mv: &Move) -> String {
        let actor = &mv.actor;
        match &mv.kind {
            MoveKind::Pose { claim } => format!("pose {actor} {claim}"),
            MoveKind::Propose { claim, label } => format!("propose {actor} ({claim}, {label})"),
            MoveKind::Assert { claim, label } => format!("assert {actor} ({claim}, {label})"),
            MoveKind::Query { target } => format!("query {actor} @M{target}"),
            MoveKind::ShowArg { argument } => match self.arg_name(argument) {
                Some(name) => format!("show_arg {actor} {name}"),
                None => format!("show_arg {actor} {{ {} }}", render_steps(&argument.argument.steps)),
            },
            MoveKind::PoseCons { claim } => format!("pose_cons {actor} {claim}"),
            MoveKind::ProposeCons { source, consequence, label } => {
                format!("propose_cons {actor} ({source}, {consequence}, {label})")
            }
            MoveKind::AssertCons { source, consequence, label } => {
                format!("assert_cons {actor} ({source}, {consequence}, {label})")
            }
            MoveKind::QueryCons { target } => format!("query_cons {actor} @M{target}"),
            MoveKind::ShowCons { argument } => match self.cons_name(argument) {
                Some(name) => format!("show_cons {actor} {name}"),
                None => format!("show_cons {actor} {{ {} }}", render_steps(&argument.argument.steps)),
            },
            MoveKind::ProposeInf { rule, strength } => {
                format!("propose_inf {actor} ({rule}, {strength})")
            }
            MoveKind::Contest { target } => format!("contest {actor} @M{target}"),
            MoveKind::ContestGround { target, ground, label } => {
                format!("contest_ground {actor} @M{target} ({ground}, {label})")
            }
            MoveKind::ContestInf { target, rule } => {
                format!("contest_inf {actor} @M{target} {rule}")
            }
            MoveKind::ContestMod { target } => format!("contest_mod {actor} @M{target}"),
            MoveKind::ContestCons { target, consequence, label } => {
                format!("contest_cons {actor} @M{target} ({consequence}, {label})")
            }
            MoveKind::AcceptProp { target } => format!("accept_prop {actor} @M{target}"),
            MoveKind::AcceptAssert { target } => format!("accept_assert {actor} @M{target}"),
            MoveKind::AcceptInf { target } => format!("accept_inf {actor} @M{target}"),
            MoveKind::AcceptCons { target } => format!("accept_cons {actor} @M{target}"),
            MoveKind::Prec { target, argument } => match self.arg_name(argument) {
                Some(name) => format!("prec {actor} @M{target} {name}"),
                None => format!(
                    "prec {actor} @M{target} {{ {} }}",
                    render_steps(&argument.argument.steps)
                ),
            },
            MoveKind::Retract { target } => format!("retract {actor} @M{target}"),
        }
    }
}

fn render_steps(steps: &[InferenceStep]) -> String {
    steps
        .iter()
        .map(|s| {
            let premises: Vec<String> = s.premises.iter().map(|p| p.to_string()).collect();
            format!("{} |- {} |- {}", premises.join(", "), s.rule, s.conclusion)
        })
        .collect::<Vec<_>>()
        .join(" ; ")
}

fn render_values(values: &ValueAssignment) -> String {
    let grounds: Vec<String> = values.ground_labels.iter().flatten().cloned().collect();
    format!(
        "grounds: [{}]; infer: [{}]; claim: {}",
        grounds.join(", "),
        values.inference_labels.join(", "),
        values.claim_label
    )
}

pub fn parse_script(text: &str) -> Result<Script, ScriptError> {
    let mut script = Script::default();
    let mut last_move_id: Option<MoveId> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("dictionary ") {
            parse_dictionary(rest, line_no, &mut script)?;
        } else if let Some(rest) = line.strip_prefix("participant ") {
            let id = rest.trim();
            if !is_identifier(id) {
                return Err(syntax(line_no, format!("bad participant id '{id}'")));
            }
            if script.participants.iter().any(|p| p == id) {
                return Err(ScriptError::DuplicateId {
                    line: line_no,
                    id: id.to_string(),
                });
            }
            script.participants.push(id.to_string());
        } else if let Some(rest) = line.strip_prefix("rule ") {
            parse_rule(rest, line_no, &mut script)?;
        } else if let Some(rest) = line.strip_prefix("track ") {
            let wff = parse_wff(rest.trim())
                .map_err(|e| syntax(line_no, format!("bad track wff: {e}")))?;
            script.tracks.push(wff);
        } else if let Some(rest) = line.strip_prefix("arg ") {
            parse_arg_decl(rest, line_no, &mut script)?;
        } else if let Some(rest) = line.strip_prefix("cons ") {
            parse_cons_decl(rest, line_no, &mut script)?;
        } else if line.starts_with('M') {
            let mv = parse_move_line(line, line_no, &script, last_move_id)?;
            last_move_id = Some(mv.id);
            script.moves.push(mv);
        } else {
            return Err(syntax(line_no, format!("unrecognized statement: {line}")));
        }
    }
    Ok(script)
}

fn strip_comment(line: &str) -> &str {
    let mut in_quotes = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_quotes = !in_quotes,
            '#' if !in_quotes => return &line[..i],
            _ => {}
        }
    }
    line
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s.chars().next().map(|c| c.is_alphabetic() || c == '_').unwrap_or(false)
        && s.chars().all(|c| c.is_alphanumeric() || c == '_')
}

fn brace_block(text: &str, line_no: usize) -> Result<(&str, &str), ScriptError> {
    let text = text.trim_start();
    let Some(stripped) = text.strip_prefix('{') else {
        return Err(syntax(line_no, "expected '{'"));
    };
    let Some(end) = stripped.find('}') else {
        return Err(syntax(line_no, "missing '}'"));
    };
    Ok((&stripped[..end], stripped[end + 1..].trim_start()))
}

fn parse_dictionary(rest: &str, line_no: usize, script: &mut Script) -> Result<(), ScriptError> {
    let rest = rest.trim();
    let Some(space) = rest.find(|c: char| c.is_whitespace() || c == '{') else {
        return Err(syntax(line_no, "expected dictionary name and block"));
    };
    let name = rest[..space].trim();
    if !is_identifier(name) {
        return Err(syntax(line_no, format!("bad dictionary name '{name}'")));
    }
    if script.dictionaries.iter().any(|d| d.name == name) {
        return Err(ScriptError::DuplicateId {
            line: line_no,
            id: name.to_string(),
        });
    }
    let (body, tail) = brace_block(&rest[space..], line_no)?;
    if !tail.is_empty() {
        return Err(syntax(line_no, "unexpected text after dictionary block"));
    }
    let mut chains = Vec::new();
    for chain_text in body.split(';') {
        let chain: Vec<String> = chain_text
            .split('>')
            .map(|l| l.trim().to_string())
            .filter(|l| !l.is_empty())
            .collect();
        if chain.iter().any(|l| !is_identifier(l)) {
            return Err(syntax(line_no, "dictionary labels must be identifiers"));
        }
        if !chain.is_empty() {
            chains.push(chain);
        }
    }
    let decl = DictionaryDecl {
        name: name.to_string(),
        chains,
    };
    decl.build()
        .map_err(|e| syntax(line_no, format!("bad dictionary: {e}")))?;
    script.dictionaries.push(decl);
    Ok(())
}

fn parse_rule(rest: &str, line_no: usize, script: &mut Script) -> Result<(), ScriptError> {
    let rest = rest.trim();
    let Some(space) = rest.find(char::is_whitespace) else {
        return Err(syntax(line_no, "expected rule id and description"));
    };
    let id = &rest[..space];
    if !is_identifier(id) {
        return Err(syntax(line_no, format!("bad rule id '{id}'")));
    }
    if script.rules.iter().any(|r| r.id == id) {
        return Err(ScriptError::DuplicateId {
            line: line_no,
            id: id.to_string(),
        });
    }
    let rest = rest[space..].trim_start();
    let (description, rest) = if let Some(stripped) = rest.strip_prefix('"') {
        let Some(end) = stripped.find('"') else {
            return Err(syntax(line_no, "unterminated rule description"));
        };
        (stripped[..end].to_string(), stripped[end + 1..].trim_start())
    } else {
        (String::new(), rest)
    };
    let mut rule = InferenceRule::new(id, description);
    let mut tokens = rest.split_whitespace();
    while let Some(tok) = tokens.next() {
        match tok {
            "validator" => {
                let tag = tokens
                    .next()
                    .ok_or_else(|| syntax(line_no, "validator needs a tag"))?;
                rule.validator = match tag {
                    "modus-ponens" => Validator::ModusPonens,
                    "and-introduction" => Validator::AndIntroduction,
                    "none" => Validator::None,
                    other => return Err(syntax(line_no, format!("unknown validator '{other}'"))),
                };
            }
            "strength" => {
                let label = tokens
                    .next()
                    .ok_or_else(|| syntax(line_no, "strength needs a label"))?;
                rule.strength = Some(label.to_string());
            }
            other => return Err(syntax(line_no, format!("unexpected token '{other}'"))),
        }
    }
    script.rules.push(rule);
    Ok(())
}

fn parse_steps(body: &str, line_no: usize, script: &Script) -> Result<Vec<InferenceStep>, ScriptError> {
    let mut steps = Vec::new();
    for step_text in body.split(';') {
        let parts: Vec<&str> = step_text.split("|-").collect();
        if parts.len() != 3 {
            return Err(syntax(
                line_no,
                "each step must be 'premises |- rule |- conclusion'",
            ));
        }
        let premises = split_top_level(parts[0])
            .into_iter()
            .map(|p| parse_wff(p.trim()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| syntax(line_no, format!("bad premise: {e}")))?;
        let rule = parts[1].trim().to_string();
        if !script.rules.iter().any(|r| r.id == rule) {
            return Err(ScriptError::ForwardReference {
                line: line_no,
                reference: rule,
            });
        }
        let conclusion = parse_wff(parts[2].trim())
            .map_err(|e| syntax(line_no, format!("bad conclusion: {e}")))?;
        steps.push(InferenceStep {
            premises,
            rule,
            conclusion,
        });
    }
    Ok(steps)
}

/// Splits on commas not nested inside parentheses or brackets.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts.iter().map(|p| p.trim()).filter(|p| !p.is_empty()).collect()
}

fn parse_values(
    body: &str,
    steps: &[InferenceStep],
    line_no: usize,
) -> Result<ValueAssignment, ScriptError> {
    let mut grounds_flat: Option<Vec<String>> = None;
    let mut infer: Option<Vec<String>> = None;
    let mut claim: Option<String> = None;
    for field in body.split(';') {
        let field = field.trim();
        if field.is_empty() {
            continue;
        }
        let Some((key, value)) = field.split_once(':') else {
            return Err(syntax(line_no, format!("bad values field '{field}'")));
        };
        let value = value.trim();
        match key.trim() {
            "grounds" => grounds_flat = Some(parse_label_list(value, line_no)?),
            "infer" => infer = Some(parse_label_list(value, line_no)?),
            "claim" => claim = Some(value.to_string()),
            other => return Err(syntax(line_no, format!("unknown values field '{other}'"))),
        }
    }
    let grounds_flat =
        grounds_flat.ok_or_else(|| syntax(line_no, "values block needs 'grounds'"))?;
    let infer = infer.ok_or_else(|| syntax(line_no, "values block needs 'infer'"))?;
    let claim = claim.ok_or_else(|| syntax(line_no, "values block needs 'claim'"))?;
    // distribute the flat ground-label list across steps by premise count
    let total: usize = steps.iter().map(|s| s.premises.len()).sum();
    if grounds_flat.len() != total {
        return Err(syntax(
            line_no,
            format!("expected {total} ground labels, got {}", grounds_flat.len()),
        ));
    }
    let mut ground_labels = Vec::new();
    let mut cursor = grounds_flat.into_iter();
    for step in steps {
        ground_labels.push(cursor.by_ref().take(step.premises.len()).collect());
    }
    Ok(ValueAssignment {
        ground_labels,
        claim_label: claim,
        inference_labels: infer,
    })
}

fn parse_label_list(text: &str, line_no: usize) -> Result<Vec<String>, ScriptError> {
    let text = text.trim();
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| syntax(line_no, "expected [label, ...]"))?;
    Ok(inner
        .split(',')
        .map(|l| l.trim().to_string())
        .filter(|l| !l.is_empty())
        .collect())
}

fn parse_arg_decl(rest: &str, line_no: usize, script: &mut Script) -> Result<(), ScriptError> {
    let Some((name, rest)) = rest.trim().split_once('=') else {
        return Err(syntax(line_no, "expected 'arg <name> = grounded { ... }'"));
    };
    let name = name.trim();
    if !is_identifier(name) {
        return Err(syntax(line_no, format!("bad argument name '{name}'")));
    }
    if script.args.iter().any(|(n, _)| n == name)
        || script.cons_args.iter().any(|(n, _)| n == name)
    {
        return Err(ScriptError::DuplicateId {
            line: line_no,
            id: name.to_string(),
        });
    }
    let rest = rest.trim_start();
    let Some(rest) = rest.strip_prefix("grounded") else {
        return Err(syntax(line_no, "expected 'grounded { ... }'"));
    };
    let (steps_body, rest) = brace_block(rest, line_no)?;
    let steps = parse_steps(steps_body, line_no, script)?;
    let Some(rest) = rest.strip_prefix("values") else {
        return Err(syntax(line_no, "expected 'values { ... }'"));
    };
    let (values_body, tail) = brace_block(rest, line_no)?;
    if !tail.is_empty() {
        return Err(syntax(line_no, "unexpected text after values block"));
    }
    let values = parse_values(values_body, &steps, line_no)?;
    let claim = steps
        .last()
        .ok_or_else(|| syntax(line_no, "argument needs at least one step"))?
        .conclusion
        .clone();
    script.args.push((
        name.to_string(),
        ValuedGroundedArgument {
            argument: GroundedArgument { steps, claim },
            values,
        },
    ));
    Ok(())
}

fn parse_cons_decl(rest: &str, line_no: usize, script: &mut Script) -> Result<(), ScriptError> {
    let Some((name, rest)) = rest.trim().split_once('=') else {
        return Err(syntax(line_no, "expected 'cons <name> = from <wff> { ... }'"));
    };
    let name = name.trim();
    if !is_identifier(name) {
        return Err(syntax(line_no, format!("bad argument name '{name}'")));
    }
    if script.args.iter().any(|(n, _)| n == name)
        || script.cons_args.iter().any(|(n, _)| n == name)
    {
        return Err(ScriptError::DuplicateId {
            line: line_no,
            id: name.to_string(),
        });
    }
    let rest = rest.trim_start();
    let Some(rest) = rest.strip_prefix("from ") else {
        return Err(syntax(line_no, "expected 'from <wff> { ... }'"));
    };
    let Some(brace) = rest.find('{') else {
        return Err(syntax(line_no, "expected '{'"));
    };
    let source = parse_wff(rest[..brace].trim())
        .map_err(|e| syntax(line_no, format!("bad source wff: {e}")))?;
    let (steps_body, rest) = brace_block(&rest[brace..], line_no)?;
    let steps = parse_steps(steps_body, line_no, script)?;
    let Some(rest) = rest.strip_prefix("values") else {
        return Err(syntax(line_no, "expected 'values { ... }'"));
    };
    let (values_body, tail) = brace_block(rest, line_no)?;
    if !tail.is_empty() {
        return Err(syntax(line_no, "unexpected text after values block"));
    }
    let values = parse_values(values_body, &steps, line_no)?;
    script.cons_args.push((
        name.to_string(),
        ValuedConsequentialArgument {
            argument: ConsequentialArgument { source, steps },
            values,
        },
    ));
    Ok(())
}

/// Parses one move line against an already-parsed script context (the
/// REPL's entry point). Lines may omit the `M<k>:` prefix; the next free
/// id is assigned.
pub fn parse_move(
    line: &str,
    script: &Script,
    next_id: MoveId,
) -> Result<Move, ScriptError> {
    let line = line.trim();
    let prefixed;
    let line = if looks_like_move_id(line) {
        line
    } else {
        prefixed = format!("M{next_id}: {line}");
        &prefixed
    };
    parse_move_line(line, 1, script, script.moves.last().map(|m| m.id))
}

fn looks_like_move_id(line: &str) -> bool {
    let Some(colon) = line.find(':') else {
        return false;
    };
    let head = &line[..colon];
    head.strip_prefix('M')
        .map(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
        .unwrap_or(false)
}

fn parse_move_id(token: &str, line_no: usize) -> Result<MoveId, ScriptError> {
    token
        .strip_prefix('M')
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| syntax(line_no, format!("bad move id '{token}'")))
}

fn parse_move_line(
    line: &str,
    line_no: usize,
    script: &Script,
    last_id: Option<MoveId>,
) -> Result<Move, ScriptError> {
    let Some((id_text, rest)) = line.split_once(':') else {
        return Err(syntax(line_no, "expected 'M<k>: <kind> <actor> ...'"));
    };
    let id = parse_move_id(id_text.trim(), line_no)?;
    if let Some(last) = last_id {
        if id <= last {
            return Err(syntax(
                line_no,
                format!("move id M{id} must be greater than M{last}"),
            ));
        }
    }
    let mut tokens = rest.trim().splitn(3, char::is_whitespace);
    let kind_name = tokens
        .next()
        .ok_or_else(|| syntax(line_no, "missing move kind"))?;
    let actor = tokens
        .next()
        .ok_or_else(|| syntax(line_no, "missing actor"))?
        .to_string();
    if !script.participants.iter().any(|p| p == &actor) {
        return Err(ScriptError::ForwardReference {
            line: line_no,
            reference: actor,
        });
    }
    let payload = tokens.next().unwrap_or("").trim();

    let target = |payload: &str| -> Result<MoveId, ScriptError> {
        let token = payload
            .strip_prefix('@')
            .ok_or_else(|| syntax(line_no, "expected '@M<k>' target"))?;
        let target = parse_move_id(token, line_no)?;
        if !script.moves.iter().any(|m| m.id == target) {
            return Err(ScriptError::ForwardReference {
                line: line_no,
                reference: format!("@M{target}"),
            });
        }
        Ok(target)
    };
    let wff = |text: &str| {
        parse_wff(text).map_err(|e| syntax(line_no, format!("bad wff: {e}")))
    };
    // "(a, b, ...)" -> top-level comma-separated parts
    let tuple = |payload: &str, arity: usize| -> Result<Vec<String>, ScriptError> {
        let inner = payload
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| syntax(line_no, "expected parenthesized payload"))?;
        let parts: Vec<String> = split_top_level(inner)
            .into_iter()
            .map(|p| p.to_string())
            .collect();
        if parts.len() != arity {
            return Err(syntax(
                line_no,
                format!("expected {arity} payload fields, got {}", parts.len()),
            ));
        }
        Ok(parts)
    };
    let named_arg = |name: &str| -> Result<ValuedGroundedArgument, ScriptError> {
        script
            .args
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| a.clone())
            .ok_or_else(|| ScriptError::ForwardReference {
                line: line_no,
                reference: name.to_string(),
            })
    };

    let kind = match kind_name {
        "pose" => MoveKind::Pose { claim: wff(payload)? },
        "pose_cons" => MoveKind::PoseCons { claim: wff(payload)? },
        "propose" | "assert" => {
            let parts = tuple(payload, 2)?;
            let claim = wff(&parts[0])?;
            let label = parts[1].clone();
            if kind_name == "propose" {
                MoveKind::Propose { claim, label }
            } else {
                MoveKind::Assert { claim, label }
            }
        }
        "query" => MoveKind::Query { target: target(payload)? },
        "query_cons" => MoveKind::QueryCons { target: target(payload)? },
        "show_arg" => MoveKind::ShowArg { argument: named_arg(payload)? },
        "show_cons" => {
            let argument = script
                .cons_args
                .iter()
                .find(|(n, _)| n == payload)
                .map(|(_, a)| a.clone())
                .ok_or_else(|| ScriptError::ForwardReference {
                    line: line_no,
                    reference: payload.to_string(),
                })?;
            MoveKind::ShowCons { argument }
        }
        "propose_cons" | "assert_cons" => {
            let parts = tuple(payload, 3)?;
            let source = wff(&parts[0])?;
            let consequence = wff(&parts[1])?;
            let label = parts[2].clone();
            if kind_name == "propose_cons" {
                MoveKind::ProposeCons { source, consequence, label }
            } else {
                MoveKind::AssertCons { source, consequence, label }
            }
        }
        "propose_inf" => {
            let parts = tuple(payload, 2)?;
            MoveKind::ProposeInf {
                rule: parts[0].clone(),
                strength: parts[1].clone(),
            }
        }
        "contest" => MoveKind::Contest { target: target(payload)? },
        "contest_mod" => MoveKind::ContestMod { target: target(payload)? },
        "contest_ground" => {
            let (target_text, tuple_text) = payload
                .split_once(char::is_whitespace)
                .ok_or_else(|| syntax(line_no, "expected '@M<k> (ground, label)'"))?;
            let parts = tuple(tuple_text.trim(), 2)?;
            MoveKind::ContestGround {
                target: target(target_text)?,
                ground: wff(&parts[0])?,
                label: parts[1].clone(),
            }
        }
        "contest_inf" => {
            let (target_text, rule) = payload
                .split_once(char::is_whitespace)
                .ok_or_else(|| syntax(line_no, "expected '@M<k> <rule>'"))?;
            MoveKind::ContestInf {
                target: target(target_text)?,
                rule: rule.trim().to_string(),
            }
        }
        "contest_cons" => {
            let (target_text, tuple_text) = payload
                .split_once(char::is_whitespace)
                .ok_or_else(|| syntax(line_no, "expected '@M<k> (consequence, label)'"))?;
            let parts = tuple(tuple_text.trim(), 2)?;
            MoveKind::ContestCons {
                target: target(target_text)?,
                consequence: wff(&parts[0])?,
                label: parts[1].clone(),
            }
        }
        "accept_prop" => MoveKind::AcceptProp { target: target(payload)? },
        "accept_assert" => MoveKind::AcceptAssert { target: target(payload)? },
        "accept_inf" => MoveKind::AcceptInf { target: target(payload)? },
        "accept_cons" => MoveKind::AcceptCons { target: target(payload)? },
        "prec" => {
            let (target_text, name) = payload
                .split_once(char::is_whitespace)
                .ok_or_else(|| syntax(line_no, "expected '@M<k> <arg>'"))?;
            MoveKind::Prec {
                target: target(target_text)?,
                argument: named_arg(name.trim())?,
            }
        }
        "retract" => MoveKind::Retract { target: target(payload)? },
        other => return Err(syntax(line_no, format!("unknown move kind '{other}'"))),
    };
    Ok(Move { id, actor, kind })
}
