use proptest::prelude::*;
use sumqg::assemble::{is_subject, AssembleError};
use sumqg::synth::{sentences, SentenceShape};
use sumqg::{assemble_in_situ, decomp_verb, fixtures, post_edit, wh_move, WhKind, WhPhrase};

#[test]
fn s2_in_situ_splice() {
    let s = fixtures::s2();
    let a = &s.srl_frames[0].arguments[1];
    // Independent splice: tokens before, the wh-word, tokens after.
    let mut expected: Vec<String> = s.tokens[..a.start].iter().map(|t| t.surface.clone()).collect();
    expected.push("what".into());
    expected.extend(s.tokens[a.end..].iter().map(|t| t.surface.clone()));
    expected.push("?".into());
    let q = assemble_in_situ(&s, a, &WhPhrase::of_kind(WhKind::What)).unwrap();
    assert_eq!(q.tokens, expected);
}

#[test]
fn post_edit_examples() {
    assert_eq!(
        post_edit(["What", "did", "Stephen", "Hawking", "announce", "in", "the", "morning", "."]).unwrap(),
        ["what", "did", "stephen", "hawking", "announce", "in", "the", "morning", "?"]
    );
    assert_eq!(post_edit(["who", "announced", "the", "party", "?"]).unwrap(), ["who", "announced", "the", "party", "?"]);
    assert_eq!(post_edit(["what", "did", "u2", "announce", "after", "."]).unwrap(), ["what", "did", "u2", "announce", "?"]);
    assert_eq!(post_edit(Vec::<String>::new()), Err(AssembleError::EmptyAfterEdit));
}

proptest! {
    #[test]
    fn post_edit_closes_with_one_mark(tokens in prop::collection::vec("[A-Za-z?.!;,]{1,6}", 1..12)) {
        if let Ok(out) = post_edit(&tokens) {
            prop_assert_eq!(out.last().map(String::as_str), Some("?"));
            prop_assert_eq!(out.iter().filter(|t| t.contains('?')).count(), 1);
            prop_assert!(out.iter().all(|t| !t.chars().any(char::is_uppercase)));
        }
    }

    #[test]
    fn subject_questions_keep_order(seed in any::<u64>()) {
        for s in sentences(seed, 4, SentenceShape::default()) {
            for f in &s.srl_frames {
                let d = decomp_verb(&s, f.verb_index).ok();
                for a in &f.arguments {
                    if !is_subject(&s, f.verb_index, a) {
                        continue;
                    }
                    let Ok(q) = wh_move(&s, f.verb_index, a, &WhPhrase::of_kind(WhKind::Who), d.as_ref()) else { continue };
                    // The rest of the question is a subsequence of the
                    // sentence outside the answer, in order.
                    let rest: Vec<String> = (0..s.len())
                        .filter(|&i| !a.contains(i))
                        .map(|i| s.tokens[i].surface.to_lowercase().replace('?', ""))
                        .collect();
                    let mut it = rest.iter();
                    for t in q.tokens.iter().filter(|t| *t != "who" && *t != "?") {
                        prop_assert!(it.any(|r| r == t), "{} out of order", t);
                    }
                }
            }
        }
    }

    #[test]
    fn fronted_length_bound(seed in any::<u64>()) {
        for s in sentences(seed, 4, SentenceShape::default()) {
            for f in &s.srl_frames {
                for a in &f.arguments {
                    let wh = WhPhrase::of_kind(WhKind::What);
                    if let Ok(q) = wh_move(&s, f.verb_index, a, &wh, None) {
                        prop_assert!(q.tokens.len() <= s.len() - a.len() + wh.tokens.len() + 1);
                    }
                }
            }
        }
    }
}
