use std::collections::BTreeSet;

use num_bigint::BigUint;
use tandem_core::code::{build_irreducible_code, decode, simulate_channel, verify_zero_error};
use tandem_core::descendants::{confusable, descendant_cone, is_descendant, max_nonconfusable_subset};
use tandem_core::enumeration::{enumerate_irreducible, CountTable, IrreducibleRanker};
use tandem_core::{Alphabet, DuplicationEvent, Limits, Word};

fn w(text: &str) -> Word {
    Word::parse(text, Alphabet::new(3).unwrap()).unwrap()
}

#[test]
fn ranker_matches_enumeration() {
    let ranker = IrreducibleRanker::new(4, 6, Limits::default()).unwrap();
    for (i, word) in enumerate_irreducible(4, 6).unwrap().enumerate() {
        let index = BigUint::from(i);
        assert_eq!(ranker.unrank(&index).as_ref(), Some(&word));
        assert_eq!(ranker.rank(&word), Some(index));
    }
    assert_eq!(ranker.total(), CountTable::new(Alphabet::new(4).unwrap(), 6).get(6).unwrap());
}

#[test]
fn small_irreducible_code_is_zero_error() {
    let code = build_irreducible_code(3, 4, Limits::default()).unwrap();
    assert_eq!(code.len(), 18);
    let report = verify_zero_error(&code, 14, Limits::default()).unwrap();
    assert_eq!(report.pairs, 153);
    assert!(report.is_zero_error());
}

#[test]
fn decoding_inverts_the_channel_on_codewords() {
    for (seed, x) in enumerate_irreducible(3, 7).unwrap().enumerate() {
        let trace = simulate_channel(&x, 4, seed as u64).unwrap();
        assert_eq!(decode(&trace.output), x);
    }
}

#[test]
fn descendant_traces_replay() {
    let x = w("01120210");
    let y = w("0011112022021210");
    let trace = is_descendant(&y, &x, Limits::default()).unwrap().unwrap();
    let replayed = trace.iter().try_fold(x.clone(), |cur, &e| cur.duplicate(e)).unwrap();
    assert_eq!(replayed, y);
    assert_eq!(is_descendant(&x, &y, Limits::default()).unwrap(), None);
}

#[test]
fn cone_is_closed_under_duplication() {
    let x = w("0120");
    let cone = descendant_cone(&x, 9, Limits::default()).unwrap();
    for v in &cone {
        for e in v.duplication_events() {
            let child = v.duplicate(e).unwrap();
            if child.len() <= 9 {
                assert!(cone.contains(&child), "{child} missing");
            }
        }
    }
    assert!(cone.contains(&x.duplicate(DuplicationEvent::new(4, 3)).unwrap()));
}

#[test]
fn witness_traces_reach_the_witness() {
    let (x, y) = (w("0120120"), w("01120"));
    let verdict = confusable(&x, &y, 12, Limits::default()).unwrap();
    let tandem_core::descendants::ConfusabilityVerdict::ConfusableWitness { witness, trace_x, trace_y } = verdict else {
        panic!("expected a witness");
    };
    let reach = |start: &Word, trace: &[DuplicationEvent]| {
        trace.iter().try_fold(start.clone(), |cur, &e| cur.duplicate(e)).unwrap()
    };
    assert_eq!(reach(&x, &trace_x), witness);
    assert_eq!(reach(&y, &trace_y), witness);
}

#[test]
fn subset_of_distinct_roots_keeps_everything() {
    let words: BTreeSet<Word> = ["010", "012", "021", "0120"].into_iter().map(w).collect();
    let subset = max_nonconfusable_subset(&words, 10, Limits::default()).unwrap();
    assert_eq!(subset, words);
}
