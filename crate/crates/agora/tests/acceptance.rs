//! The acceptance gate: one test (and one printed PASS line) per shipping
//! criterion. The modality and attack computations are cross-checked here
//! against deliberately independent brute-force re-implementations that
//! work from the raw move log, not from the engine's data structures.

use agora::arguments::{GroundedArgument, InferenceRule, InferenceStep};
use agora::dictionaries::ValueAssignment;
use agora::lang::{parse_wff, Wff};
use agora::protocol::{DialogueState, Move, MoveKind, ProtocolConfig, ViolationKind};
use agora::script::{parse_script, Script};
use agora::trace::{emit_trace, initial_state, ReplayOptions};
use agora::EXAMPLE_SCRIPT;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const GOLDEN: &str = include_str!("golden/risk-x.trace");

fn pass(line: &str) {
    println!("PASS: {line}");
}

// ---------------------------------------------------------------------
// criterion 1: golden replay, byte-exact, under a second

#[test]
fn criterion_1_golden_replay() {
    let script = parse_script(EXAMPLE_SCRIPT).unwrap();
    let start = Instant::now();
    let (trace, _) = emit_trace(&script, &ReplayOptions::default());
    let elapsed = start.elapsed();
    assert!(trace.clean());
    assert_eq!(trace.render(), GOLDEN, "replay must match the golden trace byte-for-byte");
    assert!(elapsed.as_secs_f64() < 1.0, "replay took {elapsed:?}");
    pass("criterion 1: golden example replays byte-exact against tests/golden/risk-x.trace");
}

// ---------------------------------------------------------------------
// criterion 2: valuation trajectory of phi

#[test]
fn criterion_2_valuation_trajectory() {
    let script = parse_script(EXAMPLE_SCRIPT).unwrap();
    let phi = parse_wff("phi").unwrap();
    let mut state = initial_state(&script, ProtocolConfig::default());
    assert_eq!(state.natural_valuation(&phi), 0);
    for mv in &script.moves {
        state = state.apply_move(mv).unwrap().0;
        let expected = if (3..8).contains(&mv.id) { 1 } else { 0 };
        assert_eq!(
            state.natural_valuation(&phi),
            expected,
            "valuation after M{}",
            mv.id
        );
    }
    pass("criterion 2: v(phi) is 0 initially, 1 after M3, 0 again after M8");
}

// ---------------------------------------------------------------------
// criterion 3: the ten participation properties

/// Builds a small running dialogue for the property checks.
fn base_script(extra: &str) -> Script {
    let text = format!(
        "participant P1\nparticipant P2\nrule R1 \"r\"\ntrack phi\n\
         arg A1 = grounded {{ k1 |- R1 |- phi }} values {{ grounds: [Conf]; infer: [Val]; claim: Conf }}\n\
         arg A1b = grounded {{ k1, k2 |- R1 |- phi }} values {{ grounds: [Conf, Conf]; infer: [Val]; claim: Prob }}\n\
         arg A2 = grounded {{ k3 |- R1 |- phi }} values {{ grounds: [Prob]; infer: [Val]; claim: Plaus }}\n\
         cons C1 = from phi {{ phi |- R1 |- psi }} values {{ grounds: [Conf]; infer: [Val]; claim: Conf }}\n\
         {extra}"
    );
    parse_script(&text).unwrap()
}

fn replay_clean(extra: &str) -> DialogueState {
    let script = base_script(extra);
    let (trace, state) = emit_trace(&script, &ReplayOptions::default());
    assert!(trace.clean(), "{}", trace.render());
    state
}

fn replay_rejects(extra: &str, kind: ViolationKind) {
    let script = base_script(extra);
    let (trace, _) = emit_trace(&script, &ReplayOptions::default());
    let rejection = trace
        .records
        .iter()
        .find_map(|r| r.rejection.clone())
        .expect("a move must be rejected");
    assert_eq!(rejection.kind, kind);
}

#[test]
fn criterion_3_property_checklist() {
    // p1: anyone may join at any time; a move by a never-registered
    // participant is legal and registers them.
    let newcomer = Move {
        id: 1,
        actor: "P9".to_string(),
        kind: MoveKind::Assert {
            claim: parse_wff("phi").unwrap(),
            label: "Conf".to_string(),
        },
    };
    let state = initial_state(&base_script(""), ProtocolConfig::default());
    let (state, _) = state.apply_move(&newcomer).unwrap();
    assert!(state.participants.contains(&"P9".to_string()));

    // p2: participation binds everyone to the shared dictionaries;
    // labels outside them are rejected outright.
    replay_rejects(
        "M1: assert P1 (phi, Extreme)\n",
        ViolationKind::MalformedPayload,
    );

    // p3: a claim may be asserted, and the backing argument is demanded
    // on challenge, so an assert is legal before any show_arg.
    let state = replay_clean("M1: assert P1 (phi, Conf)\n");
    assert_eq!(state.store("P1").unwrap().entries.len(), 1);

    // p4: any other participant may question or contest any claim.
    replay_clean("M1: assert P1 (phi, Conf)\nM2: query P2 @M1\nM3: show_arg P1 A1\nM4: contest P2 @M1\n");

    // p5: once queried, the asserter must produce the valued argument
    // immediately; anything else is rejected.
    replay_rejects(
        "M1: assert P1 (phi, Conf)\nM2: query P2 @M1\nM3: assert P1 (k1, Conf)\n",
        ViolationKind::ObligationViolation,
    );

    // p6: grounds, inference rules and modalities are each contestable.
    replay_clean(
        "M1: assert P1 (phi, Conf)\nM2: query P2 @M1\nM3: show_arg P1 A1\n\
         M4: contest_ground P2 @M3 (k1, Prob)\nM5: contest_inf P2 @M3 R1\nM6: contest_mod P2 @M3\n",
    );

    // p7: another participant may exhibit a differently-valued argument
    // for the same claim.
    let state = replay_clean(
        "M1: assert P1 (phi, Conf)\nM2: query P2 @M1\nM3: show_arg P1 A1\nM4: show_arg P2 A2\n",
    );
    assert_eq!(state.arguments_for(&parse_wff("phi").unwrap()).len(), 2);

    // p8: a challenged argument may be replaced by a precization.
    let state = replay_clean(
        "M1: assert P1 (phi, Conf)\nM2: query P2 @M1\nM3: show_arg P1 A1\n\
         M4: contest P2 @M1\nM5: prec P1 @M3 A1b\n",
    );
    let args = state.arguments_for(&parse_wff("phi").unwrap());
    assert_eq!(args.len(), 1);
    assert_eq!(args[0].argument.steps[0].premises.len(), 2);

    // p9: with no counter-argument, the exhibited argument stands and no
    // further defence is owed (no obligations remain).
    let state = replay_clean("M1: assert P1 (phi, Conf)\nM2: query P2 @M1\nM3: show_arg P1 A1\n");
    assert!(state.pending_obligations().is_empty());
    assert_eq!(state.natural_valuation(&parse_wff("phi").unwrap()), 1);

    // p10: self-contradiction is barred without an interim retraction...
    replay_rejects(
        "M1: assert P1 (phi, Conf)\nM2: assert P1 (~phi, Supp)\n",
        ViolationKind::Contradiction,
    );
    // ...and permitted with one.
    replay_clean("M1: assert P1 (phi, Conf)\nM2: retract P1 @M1\nM3: assert P1 (~phi, Supp)\n");

    pass("criterion 3: participation properties p1-p10 verified, 10/10");
}

// ---------------------------------------------------------------------
// independent brute-force oracle, written against the raw move log

mod oracle {
    use super::*;

    /// Double-negation stripping, written without the engine's helpers.
    pub fn norm(w: &Wff) -> Wff {
        match w {
            Wff::Atom(a) => Wff::Atom(a.clone()),
            Wff::Not(x) => match norm(x) {
                Wff::Not(inner) => *inner,
                other => Wff::Not(Box::new(other)),
            },
            Wff::And(a, b) => Wff::And(Box::new(norm(a)), Box::new(norm(b))),
            Wff::Or(a, b) => Wff::Or(Box::new(norm(a)), Box::new(norm(b))),
            Wff::Implies(a, b) => Wff::Implies(Box::new(norm(a)), Box::new(norm(b))),
        }
    }

    pub fn neg(w: &Wff) -> Wff {
        match norm(w) {
            Wff::Not(inner) => *inner,
            other => Wff::Not(Box::new(other)),
        }
    }

    pub fn neg_eq(a: &Wff, b: &Wff) -> bool {
        norm(a) == neg(b)
    }

    /// Grounds = premises not concluded by an earlier step.
    pub fn grounds(arg: &GroundedArgument) -> Vec<Wff> {
        let mut out: Vec<Wff> = Vec::new();
        for (i, step) in arg.steps.iter().enumerate() {
            for p in &step.premises {
                let produced = arg.steps[..i].iter().any(|s| s.conclusion == *p);
                if !produced && !out.contains(p) {
                    out.push(p.clone());
                }
            }
        }
        out
    }

    /// Exhibited argument structures, read straight off the move log.
    pub fn exhibits(moves: &[Move]) -> Vec<GroundedArgument> {
        let mut out = Vec::new();
        for mv in moves {
            if let MoveKind::ShowArg { argument } = &mv.kind {
                out.push(argument.argument.clone());
            }
        }
        out
    }

    fn eval(w: &Wff, names: &[String], mask: u32) -> bool {
        match w {
            Wff::Atom(a) => names
                .iter()
                .position(|n| n == a)
                .map(|i| mask & (1 << i) != 0)
                .unwrap_or(false),
            Wff::Not(x) => !eval(x, names, mask),
            Wff::And(a, b) => eval(a, names, mask) && eval(b, names, mask),
            Wff::Or(a, b) => eval(a, names, mask) || eval(b, names, mask),
            Wff::Implies(a, b) => !eval(a, names, mask) || eval(b, names, mask),
        }
    }

    pub fn tautology(w: &Wff) -> bool {
        let names: Vec<String> = w.atoms().into_iter().collect();
        assert!(names.len() <= 16);
        (0u32..(1 << names.len())).all(|mask| eval(w, &names, mask))
    }

    fn tier(arg: &GroundedArgument, all: &[GroundedArgument]) -> u8 {
        let gs = grounds(arg);
        let inconsistent = gs
            .iter()
            .enumerate()
            .any(|(i, a)| gs[i + 1..].iter().any(|b| neg_eq(a, b)));
        if inconsistent {
            return 1; // supported
        }
        if all.iter().any(|o| neg_eq(&o.claim, &arg.claim)) {
            return 2; // plausible
        }
        let undercut = all
            .iter()
            .any(|o| gs.iter().any(|g| neg_eq(g, &o.claim)));
        if undercut {
            return 3; // probable
        }
        4 // confirmed
    }

    /// Rule 5 recomputed from scratch: 0 open, 1 supported, 2 plausible,
    /// 3 probable, 4 confirmed, 5 certain.
    pub fn modality(claim: &Wff, moves: &[Move]) -> u8 {
        if tautology(claim) {
            return 5;
        }
        let all = exhibits(moves);
        let n = norm(claim);
        all.iter()
            .filter(|a| norm(&a.claim) == n)
            .map(|a| tier(a, &all))
            .max()
            .unwrap_or(0)
    }

    pub fn label_to_rank(label: &str) -> u8 {
        match label {
            "Open" => 0,
            "Supported" => 1,
            "Plausible" => 2,
            "Probable" => 3,
            "Confirmed" => 4,
            "Certain" => 5,
            other => panic!("unexpected modality {other}"),
        }
    }
}

// ---------------------------------------------------------------------
// fuzz harness: random legal dialogues, <= 8 atoms, <= 12 moves

struct Fuzzed {
    script: Script,
    state: DialogueState,
}

fn random_literal(rng: &mut ChaCha8Rng, atoms: &[&str]) -> Wff {
    let atom = Wff::atom(*atoms.choose(rng).unwrap());
    if rng.gen_bool(0.4) {
        Wff::not(atom)
    } else {
        atom
    }
}

fn random_claim(rng: &mut ChaCha8Rng, atoms: &[&str]) -> Wff {
    match rng.gen_range(0..10) {
        0 => Wff::and(random_literal(rng, atoms), random_literal(rng, atoms)),
        1 => Wff::or(random_literal(rng, atoms), random_literal(rng, atoms)),
        2 => {
            // occasionally a tautology, to exercise the Certain tier
            let a = random_literal(rng, atoms);
            Wff::or(a.clone(), Wff::not(a))
        }
        _ => random_literal(rng, atoms),
    }
}

fn random_label(rng: &mut ChaCha8Rng) -> String {
    ["Cert", "Conf", "Prob", "Plaus", "Supp"]
        .choose(rng)
        .unwrap()
        .to_string()
}

fn random_argument(rng: &mut ChaCha8Rng, atoms: &[&str], claim: &Wff) -> agora::arguments::ValuedGroundedArgument {
    let mut steps = Vec::new();
    let two_steps = rng.gen_bool(0.25);
    if two_steps {
        let mid = random_literal(rng, atoms);
        let mut premises = vec![random_literal(rng, atoms)];
        if rng.gen_bool(0.5) {
            premises.push(random_literal(rng, atoms));
        }
        steps.push(InferenceStep {
            premises,
            rule: "R1".to_string(),
            conclusion: mid.clone(),
        });
        steps.push(InferenceStep {
            premises: vec![mid, random_literal(rng, atoms)],
            rule: "R2".to_string(),
            conclusion: claim.clone(),
        });
    } else {
        let mut premises = vec![random_literal(rng, atoms)];
        if rng.gen_bool(0.5) {
            premises.push(random_literal(rng, atoms));
        }
        steps.push(InferenceStep {
            premises,
            rule: "R1".to_string(),
            conclusion: claim.clone(),
        });
    }
    let values = ValueAssignment {
        ground_labels: steps
            .iter()
            .map(|s| s.premises.iter().map(|_| random_label(rng)).collect())
            .collect(),
        inference_labels: steps.iter().map(|_| "Val".to_string()).collect(),
        claim_label: random_label(rng),
    };
    agora::arguments::ValuedGroundedArgument {
        argument: GroundedArgument {
            steps,
            claim: claim.clone(),
        },
        values,
    }
}

/// One random legal dialogue; every emitted move was accepted by the
/// engine, obligations are discharged immediately and none remain.
fn fuzz_dialogue(seed: u64) -> Fuzzed {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms: Vec<&str> = ["a", "b", "c", "d", "e", "f", "g", "h"]
        [..rng.gen_range(3..=8)]
        .to_vec();
    let participants = ["P1", "P2", "P3"];

    let mut script = Script::default();
    for p in participants {
        script.participants.push(p.to_string());
    }
    script.rules.push(InferenceRule::new("R1", "fuzz rule one"));
    script.rules.push(InferenceRule::new("R2", "fuzz rule two"));
    script.tracks.push(Wff::atom(atoms[0]));

    let mut state = initial_state(&script, ProtocolConfig::default());
    let max_moves = rng.gen_range(4..=12);
    let mut id = 1;
    while state.moves.len() < max_moves {
        let mv = if let Some(o) = state.pending_obligations().front() {
            // the obligated participant answers immediately
            let claim = match &o.requirement {
                agora::protocol::Requirement::ShowArgFor { claim } => claim.clone(),
                _ => unreachable!("fuzz emits no cons or contest queries"),
            };
            Move {
                id,
                actor: o.participant.clone(),
                kind: MoveKind::ShowArg {
                    argument: random_argument(&mut rng, &atoms, &claim),
                },
            }
        } else {
            let actor = participants.choose(&mut rng).unwrap().to_string();
            match rng.gen_range(0..10) {
                0..3 => Move {
                    id,
                    actor,
                    kind: MoveKind::Assert {
                        claim: random_claim(&mut rng, &atoms),
                        label: random_label(&mut rng),
                    },
                },
                3..5 => Move {
                    id,
                    actor,
                    kind: MoveKind::Propose {
                        claim: random_claim(&mut rng, &atoms),
                        label: random_label(&mut rng),
                    },
                },
                5..7 => {
                    let claim = random_claim(&mut rng, &atoms);
                    Move {
                        id,
                        actor,
                        kind: MoveKind::ShowArg {
                            argument: random_argument(&mut rng, &atoms, &claim),
                        },
                    }
                }
                7 => {
                    // query a prior claim by someone else, if any
                    let Some(target) = state
                        .moves
                        .iter()
                        .filter(|m| {
                            m.actor != actor
                                && matches!(m.kind, MoveKind::Assert { .. } | MoveKind::Propose { .. })
                        })
                        .choose(&mut rng)
                    else {
                        continue;
                    };
                    // never end the dialogue on an open obligation
                    if state.moves.len() + 2 > max_moves {
                        continue;
                    }
                    Move { id, actor, kind: MoveKind::Query { target: target.id } }
                }
                8 => {
                    let Some(target) = state
                        .moves
                        .iter()
                        .filter(|m| m.actor != actor && matches!(m.kind, MoveKind::Assert { .. }))
                        .choose(&mut rng)
                    else {
                        continue;
                    };
                    Move { id, actor, kind: MoveKind::Contest { target: target.id } }
                }
                _ => {
                    let Some(target) = state
                        .moves
                        .iter()
                        .filter(|m| m.actor == actor && matches!(m.kind, MoveKind::Assert { .. }))
                        .choose(&mut rng)
                    else {
                        continue;
                    };
                    Move { id, actor, kind: MoveKind::Retract { target: target.id } }
                }
            }
        };
        match state.apply_move(&mv) {
            Ok((next, _)) => {
                state = next;
                id += 1;
            }
            Err(_) => {
                // e.g. a random assert hit the self-contradiction bar;
                // roll the dice again
                continue;
            }
        }
    }
    assert!(
        state.pending_obligations().is_empty(),
        "fuzz dialogues end with all obligations discharged"
    );
    script.moves = state.moves.clone();
    Fuzzed { script, state }
}

// ---------------------------------------------------------------------
// criterion 4: theorem-2 equivalence across the fuzz corpus

#[test]
fn criterion_4_theorem2_over_fuzz_corpus() {
    let start = Instant::now();
    let mut dialogues = 0usize;
    let mut wffs_checked = 0usize;
    for seed in 0..1000u64 {
        let Fuzzed { state, .. } = fuzz_dialogue(seed);
        // engine-side equivalence
        let report = state.check_theorem2();
        assert!(report.holds(), "seed {seed}: {:?}", report.counterexamples);
        // oracle-side: recompute Rule 5 tiers from the raw move log and
        // compare modalities, valuations and provisional proofs
        for (wff, label) in &state.nature.entries {
            let expected = oracle::modality(wff, &state.moves);
            assert_eq!(
                oracle::label_to_rank(label),
                expected,
                "seed {seed}: modality of {wff} diverges from brute force"
            );
            if expected != 5 {
                let proof = state.provisional_proof(wff).is_some();
                assert_eq!(
                    proof,
                    expected == 4,
                    "seed {seed}: provisional proof for {wff}"
                );
                assert_eq!(state.natural_valuation(wff), u8::from(expected == 4));
            }
            wffs_checked += 1;
        }
        dialogues += 1;
    }
    let elapsed = start.elapsed();
    assert!(dialogues >= 1000);
    assert!(elapsed.as_secs() < 60, "corpus took {elapsed:?}");
    pass(&format!(
        "criterion 4: provisional-proof/valuation equivalence on {dialogues} fuzz dialogues \
         ({wffs_checked} tracked wffs, {elapsed:?}), zero counterexamples"
    ));
}

// ---------------------------------------------------------------------
// criterion 5: attack relations against the pairwise brute checker

#[test]
fn criterion_5_attack_relations() {
    let mut pairs = 0usize;
    for seed in 0..1000u64 {
        let Fuzzed { state, .. } = fuzz_dialogue(seed);
        let args: Vec<&GroundedArgument> = state.exhibited.iter().map(|e| &e.argument).collect();
        for a in &args {
            for b in &args {
                let rebut = oracle::neg_eq(&a.claim, &b.claim);
                assert_eq!(a.rebuts(b), rebut, "seed {seed}: rebuts");
                assert_eq!(a.rebuts(b), b.rebuts(a), "seed {seed}: rebuts symmetry");
                let undercut = oracle::grounds(b)
                    .iter()
                    .any(|g| oracle::neg_eq(g, &a.claim));
                assert_eq!(a.undercuts(b), undercut, "seed {seed}: undercuts");
                pairs += 1;
            }
        }
    }
    pass(&format!(
        "criterion 5: rebuts/undercuts agree with the brute-force pairwise checker \
         on {pairs} exhibited-argument pairs; rebuts symmetric throughout"
    ));
}

// ---------------------------------------------------------------------
// criterion 6: the Certain tier is exactly the tautologies

#[test]
fn criterion_6_tautology_tier() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a07);
    let atoms = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"];
    let state = {
        let script = Script::default();
        initial_state(&script, ProtocolConfig::default())
    };
    let mut corpus = Vec::new();
    for _ in 0..2000 {
        corpus.push(random_formula(&mut rng, &atoms, 4));
    }
    // plus hand-picked shapes on both sides of the line
    for text in ["a | ~a", "a -> a", "(a & b) -> a", "a -> (b -> a)", "a", "a | b", "~(a & ~a)"] {
        corpus.push(parse_wff(text).unwrap());
    }
    let mut tautologies = 0usize;
    for w in &corpus {
        assert!(w.atoms().len() <= 10);
        let certain = state.nature_modality(w) == "Certain";
        let is_taut = oracle::tautology(w);
        assert_eq!(certain, is_taut, "tier of {w}");
        tautologies += usize::from(is_taut);
    }
    pass(&format!(
        "criterion 6: Certain <=> truth-table tautology on {} wffs ({} tautologies)",
        corpus.len(),
        tautologies
    ));
}

fn random_formula(rng: &mut ChaCha8Rng, atoms: &[&str], depth: usize) -> Wff {
    if depth == 0 || rng.gen_bool(0.3) {
        return Wff::atom(*atoms.choose(rng).unwrap());
    }
    match rng.gen_range(0..4) {
        0 => Wff::not(random_formula(rng, atoms, depth - 1)),
        1 => Wff::and(
            random_formula(rng, atoms, depth - 1),
            random_formula(rng, atoms, depth - 1),
        ),
        2 => Wff::or(
            random_formula(rng, atoms, depth - 1),
            random_formula(rng, atoms, depth - 1),
        ),
        _ => Wff::implies(
            random_formula(rng, atoms, depth - 1),
            random_formula(rng, atoms, depth - 1),
        ),
    }
}

// ---------------------------------------------------------------------
// criterion 7: byte determinism over example and fuzz corpus

#[test]
fn criterion_7_determinism() {
    let mut scripts = vec![parse_script(EXAMPLE_SCRIPT).unwrap()];
    for seed in 0..200u64 {
        scripts.push(fuzz_dialogue(seed).script);
    }
    for (i, script) in scripts.iter().enumerate() {
        let (a, _) = emit_trace(script, &ReplayOptions::default());
        let (b, _) = emit_trace(script, &ReplayOptions::default());
        assert_eq!(a.render(), b.render(), "script {i} replays differently");
    }
    pass(&format!(
        "criterion 7: double replay of {} scripts produced identical trace bytes",
        scripts.len()
    ));
}

// ---------------------------------------------------------------------
// criterion 8: mutated example scripts fail where documented

#[test]
fn criterion_8_mutated_scripts() {
    // deleting M3 leaves P1's obligation from M2 open, so the next move
    // (M4, P2's contest) is rejected as an obligation violation
    let without_m3: String = EXAMPLE_SCRIPT
        .lines()
        .filter(|l| !l.starts_with("M3:"))
        .map(|l| format!("{l}\n"))
        .collect();
    let script = parse_script(&without_m3).unwrap();
    let (trace, _) = emit_trace(&script, &ReplayOptions::default());
    // the open obligation also poisons everything after M4; the first
    // rejection is the documented one
    let rejected: Vec<_> = trace.records.iter().filter(|r| !r.legal).collect();
    assert!(!rejected.is_empty());
    assert_eq!(rejected[0].move_id, 4);
    assert_eq!(
        rejected[0].rejection.as_ref().unwrap().kind,
        ViolationKind::ObligationViolation
    );

    // swapping M3 and M4 puts the contest where the demanded argument
    // belongs; it is rejected at position M3 for the same reason
    let swapped: String = EXAMPLE_SCRIPT
        .lines()
        .map(|l| {
            if let Some(rest) = l.strip_prefix("M3:") {
                format!("M4:{rest}\n")
            } else if let Some(rest) = l.strip_prefix("M4:") {
                format!("M3:{rest}\n")
            } else {
                format!("{l}\n")
            }
        })
        .collect();
    // reorder the two lines so ids still increase textually
    let mut lines: Vec<&str> = swapped.lines().collect();
    let i3 = lines.iter().position(|l| l.starts_with("M3:")).unwrap();
    let i4 = lines.iter().position(|l| l.starts_with("M4:")).unwrap();
    lines.swap(i3, i4);
    let swapped: String = lines.iter().map(|l| format!("{l}\n")).collect();
    let script = parse_script(&swapped).unwrap();
    let (trace, _) = emit_trace(&script, &ReplayOptions::default());
    let rejected: Vec<_> = trace.records.iter().filter(|r| !r.legal).collect();
    assert!(!rejected.is_empty());
    assert_eq!(rejected[0].move_id, 3);
    assert_eq!(
        rejected[0].rejection.as_ref().unwrap().kind,
        ViolationKind::ObligationViolation
    );

    pass(
        "criterion 8: M3-deleted rejected at M4, M3/M4-swapped rejected at M3, \
         both as obligation violations",
    );
}
