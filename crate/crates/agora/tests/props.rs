//! Randomized invariants: parser/renderer round-trips, negation
//! equivalence, attack symmetry, and the tautology decision against an
//! independently written truth-table oracle.

use agora::arguments::{GroundedArgument, InferenceStep};
use agora::lang::{is_tautology, neg_equivalent, parse_wff, Wff};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn atom_name() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,4}".prop_filter("keywords excluded", |s| s != "values")
}

fn wff() -> impl Strategy<Value = Wff> {
    let leaf = atom_name().prop_map(Wff::atom);
    leaf.prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|w| Wff::not(w)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Wff::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Wff::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Wff::implies(a, b)),
        ]
    })
}

/// A second, deliberately naive evaluator used only as a test oracle.
fn oracle_eval(w: &Wff, assignment: &BTreeMap<String, bool>) -> bool {
    match w {
        Wff::Atom(a) => *assignment.get(a).unwrap_or(&false),
        Wff::Not(x) => !oracle_eval(x, assignment),
        Wff::And(a, b) => oracle_eval(a, assignment) && oracle_eval(b, assignment),
        Wff::Or(a, b) => oracle_eval(a, assignment) || oracle_eval(b, assignment),
        Wff::Implies(a, b) => !oracle_eval(a, assignment) || oracle_eval(b, assignment),
    }
}

fn oracle_is_tautology(w: &Wff) -> bool {
    let atoms: Vec<String> = w.atoms().into_iter().collect();
    assert!(atoms.len() <= 10, "oracle is exponential; keep wffs small");
    for mask in 0u32..(1 << atoms.len()) {
        let assignment: BTreeMap<String, bool> = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), mask & (1 << i) != 0))
            .collect();
        if !oracle_eval(w, &assignment) {
            return false;
        }
    }
    true
}

proptest! {
    #[test]
    fn parse_render_round_trip(w in wff()) {
        let text = w.to_string();
        let parsed = parse_wff(&text).unwrap();
        prop_assert_eq!(parsed, w);
    }

    #[test]
    fn normalize_is_idempotent(w in wff()) {
        let once = w.normalize();
        prop_assert_eq!(once.normalize(), once);
    }

    #[test]
    fn negated_flips(w in wff()) {
        prop_assert!(neg_equivalent(&w, &w.negated()));
        prop_assert!(neg_equivalent(&w.negated(), &w));
        prop_assert!(!neg_equivalent(&w, &w));
    }

    #[test]
    fn double_negation_is_equivalent_to_bare_negation(w in wff()) {
        let double = Wff::not(Wff::not(w.clone()));
        prop_assert_eq!(double.normalize(), w.normalize());
    }

    #[test]
    fn tautology_matches_truth_table_oracle(w in wff()) {
        prop_assume!(w.atoms().len() <= 10);
        prop_assert_eq!(is_tautology(&w).unwrap(), oracle_is_tautology(&w));
    }

    #[test]
    fn rebuts_is_symmetric(a in wff(), b in wff()) {
        let arg = |claim: &Wff| GroundedArgument {
            steps: vec![InferenceStep {
                premises: vec![Wff::atom("k")],
                rule: "R1".to_string(),
                conclusion: claim.clone(),
            }],
            claim: claim.clone(),
        };
        let (x, y) = (arg(&a), arg(&b));
        prop_assert_eq!(x.rebuts(&y), y.rebuts(&x));
        // a claim always rebuts its own negation
        let neg = arg(&a.negated());
        prop_assert!(x.rebuts(&neg));
    }

    #[test]
    fn undercut_on_negated_ground(g in wff(), c in wff()) {
        let target = GroundedArgument {
            steps: vec![InferenceStep {
                premises: vec![g.clone()],
                rule: "R1".to_string(),
                conclusion: c.clone(),
            }],
            claim: c.clone(),
        };
        let attacker = GroundedArgument {
            steps: vec![InferenceStep {
                premises: vec![Wff::atom("k")],
                rule: "R1".to_string(),
                conclusion: g.negated(),
            }],
            claim: g.negated(),
        };
        prop_assert!(attacker.undercuts(&target));
    }
}
