//! Serialization of input and output documents.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use sparsemult::commands::{instance_seed, oracle_check, verify_targets, Target, MAX_RESAMPLES};
use sparsemult::document::{OracleCheck, OracleSection};
use sparsemult::{exit, run, Command, InputDocument, Options, OutputDocument};
use sparsemult_core::SupportFamily;

fn keys_sorted(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Object(m) => {
            let keys: Vec<&String> = m.keys().collect();
            keys.windows(2).all(|w| w[0] < w[1]) && m.values().all(keys_sorted)
        }
        serde_json::Value::Array(a) => a.iter().all(keys_sorted),
        _ => true,
    }
}

fn family_text() -> impl Strategy<Value = String> {
    (1usize..=3).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(proptest::collection::vec(0i64..=3, n), 1..=3), n)
            .prop_map(move |supports| serde_json::json!({ "n": n, "supports": supports }).to_string())
    })
}

fn config() -> Config {
    Config { cases: 40, rng_seed: RngSeed::Fixed(0xd0c5), failure_persistence: None, ..Config::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn outputs_round_trip_with_sorted_keys(text in family_text(), which in 0usize..3) {
        let command = [Command::Check, Command::Mult0, Command::Census][which];
        let doc = run(command, &text, &Options::default());
        let json = doc.to_json();
        prop_assert!(keys_sorted(&serde_json::from_str(&json).unwrap()));
        let back = OutputDocument::from_json(&json).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_json(), json);
    }
}

#[test]
fn oracle_sections_round_trip() {
    let input = InputDocument::parse(r#"{"n": 2, "supports": [[[2, 0], [1, 1]], [[1, 1], [0, 2]]], "seed": 3}"#).unwrap();
    let doc = run(Command::Verify, &serde_json::to_string(&input).unwrap(), &Options { trials: Some(2), ..Default::default() });
    let o: &OracleSection = doc.oracle.as_ref().unwrap();
    assert_eq!(o.seed, 3);
    assert!(o.checks.iter().all(OracleCheck::is_match));
    assert_eq!(OutputDocument::from_json(&doc.to_json()).unwrap(), doc);
}

#[test]
fn input_documents_round_trip() {
    let text = r#"{"K_max": 30, "M": 5, "bound": 100, "n": 1, "seed": 9, "supports": [[[2], [3]]]}"#;
    let input = InputDocument::parse(text).unwrap();
    assert_eq!((input.m, input.k_max, input.bound, input.seed), (Some(5), Some(30), Some(100), Some(9)));
    let value: serde_json::Value = serde_json::from_str(text).unwrap();
    assert_eq!(serde_json::to_value(&input).unwrap(), value);
    let a: SupportFamily = input.family().unwrap();
    assert_eq!(InputDocument::from_family(&a).supports, input.supports);
}

#[test]
fn smaller_observations_are_not_resampled() {
    let a = InputDocument::parse(r#"{"n": 2, "supports": [[[2, 0], [1, 1]], [[1, 1], [0, 2]]]}"#).unwrap().family().unwrap();
    let c = oracle_check(&Target::Origin(a), "{1,2}", 5, 0, 0, 1000, 24).unwrap();
    assert_eq!(c.observed, Some(4));
    assert_eq!(c.resamples, 0);
    assert_eq!(c.verdict, "mismatch: expected 5, got 4");
    assert!(!c.is_match());
}

fn conics() -> SupportFamily {
    InputDocument::parse(r#"{"n": 2, "supports": [[[2, 0], [1, 1]], [[1, 1], [0, 2]]]}"#).unwrap().family().unwrap()
}

#[test]
fn the_cap_covers_the_expected_multiplicity() {
    let c = oracle_check(&Target::Origin(conics()), "{1,2}", 4, 0, 0, 1000, 2).unwrap();
    assert!(c.is_match(), "{c:?}");
}

#[test]
fn larger_observations_are_resampled() {
    let cube = InputDocument::parse(r#"{"n": 1, "supports": [[[3]]]}"#).unwrap().family().unwrap();
    let c = oracle_check(&Target::Origin(cube), "{1}", 2, 0, 0, 1000, 24).unwrap();
    assert_eq!(c.verdict, "mismatch: expected 2, got 3");
    assert_eq!(c.resamples, MAX_RESAMPLES);
    assert_eq!(c.seed, instance_seed(0, 0, MAX_RESAMPLES));

    let curve = InputDocument::parse(r#"{"n": 2, "supports": [[[1, 1]], [[1, 1]]]}"#).unwrap().family().unwrap();
    let c = oracle_check(&Target::Origin(curve), "{1,2}", 1, 0, 0, 1000, 6).unwrap();
    assert_eq!(c.verdict, "mismatch: expected 1, no stabilization by k = 6");
    assert_eq!(c.observed, None);
}

#[test]
fn mismatches_set_exit_status_4() {
    let targets = vec![
        ("{1,2}".to_string(), 4, Target::Origin(conics())),
        ("{1,2}".to_string(), 5, Target::Origin(conics())),
    ];
    let doc = OutputDocument::new("verify", None, Options::default());
    let doc = verify_targets(doc, &targets, 0, 1000, 2, 24).unwrap();
    let o = doc.oracle.as_ref().unwrap();
    assert_eq!((o.matches, o.mismatches), (2, 2));
    assert_eq!(doc.exit_status, exit::MISMATCH);
    assert_eq!(doc.error.as_deref(), Some("2 of 4 oracle checks failed"));
}
