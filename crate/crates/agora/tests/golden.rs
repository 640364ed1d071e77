//! The bundled carcinogenicity dialogue replays to a frozen trace, byte
//! for byte, and its Nature snapshots move through the expected tiers.

use agora::script::parse_script;
use agora::trace::{emit_trace, ReplayOptions};
use agora::EXAMPLE_SCRIPT;

const GOLDEN: &str = include_str!("golden/risk-x.trace");

#[test]
fn example_replay_matches_golden_trace() {
    let script = parse_script(EXAMPLE_SCRIPT).unwrap();
    let (trace, _) = emit_trace(&script, &ReplayOptions::default());
    assert!(trace.clean());
    assert_eq!(trace.render(), GOLDEN);
}

#[test]
fn replay_is_byte_deterministic() {
    let script = parse_script(EXAMPLE_SCRIPT).unwrap();
    let (a, _) = emit_trace(&script, &ReplayOptions::default());
    let (b, _) = emit_trace(&script, &ReplayOptions::default());
    assert_eq!(a.render(), b.render());
}

#[test]
fn snapshot_sequence_tracks_the_debate() {
    let script = parse_script(EXAMPLE_SCRIPT).unwrap();
    let (trace, _) = emit_trace(&script, &ReplayOptions::default());
    let mut lines: Vec<String> = Vec::new();
    if let Some(s) = &trace.initial_snapshot {
        lines.push(s.line());
    }
    for r in &trace.records {
        if let Some(s) = &r.snapshot {
            lines.push(s.line());
        }
    }
    assert_eq!(
        lines,
        vec![
            "NCS0: (phi, Open), (~phi, Open)",
            "NCS1: (phi, Conf), (~phi, Open)",
            "NCS2: (phi, Plaus), (~phi, Plaus)",
            "NCS3: (phi, Plaus), (~phi, Plaus)",
        ]
    );
}

#[test]
fn script_render_round_trips_the_example() {
    let script = parse_script(EXAMPLE_SCRIPT).unwrap();
    let reparsed = parse_script(&script.render()).unwrap();
    assert_eq!(script, reparsed);
}
