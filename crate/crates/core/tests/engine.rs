use std::collections::BTreeSet;

use proptest::prelude::*;
use sumqg::assemble::echoes;
use sumqg::synth::{sentences, SentenceShape};
use sumqg::wh::covering_entities;
use sumqg::{
    fixtures, generate_batch, generate_questions, identify_wh_word, AnnotatedSentence, Executor,
    HeuristicConfig, Ladder, WhKind,
};

fn questions(s: &AnnotatedSentence, ladder: Ladder) -> Vec<(String, String)> {
    generate_questions(s, &ladder.into())
        .into_iter()
        .map(|e| (e.answer_text, e.question.text()))
        .collect()
}

fn question_for(s: &AnnotatedSentence, ladder: Ladder, answer: &str) -> String {
    questions(s, ladder).into_iter().find(|(a, _)| a == answer).unwrap().1
}

#[test]
fn golden_s1() {
    let s = fixtures::s1();
    for ladder in Ladder::ALL {
        assert_eq!(question_for(&s, ladder, "stephen hawking"), "who announced the party in the morning ?");
    }
    assert_eq!(question_for(&s, Ladder::Naive, "the party"), "stephen hawking announced what in the morning ?");
    assert_eq!(question_for(&s, Ladder::WhMove, "the party"), "what stephen hawking announced in the morning ?");
    assert_eq!(question_for(&s, Ladder::Decomp, "the party"), "what did stephen hawking announce in the morning ?");
}

#[test]
fn golden_s2_full() {
    let s = fixtures::s2();
    let out = generate_questions(&s, &HeuristicConfig::default());
    assert_eq!(out.len(), 3);
    let kinds: Vec<WhKind> = out.iter().map(|e| e.wh.kind).collect();
    assert_eq!(kinds, [WhKind::Who, WhKind::What, WhKind::When]);
    let frame = &s.srl_frames[0];
    for (e, a) in out.iter().zip(&frame.arguments) {
        assert_eq!(e.answer_text, s.span_text(a.start, a.end));
        assert_eq!(e.answer_role, a.role);
    }
}

#[test]
fn ner_wh_descriptor() {
    let s = fixtures::nba_player();
    let on = generate_questions(&s, &Ladder::Full.into());
    assert_eq!(on[0].wh.tokens, ["which", "nba", "player"]);
    assert_eq!(on[0].question.text(), "which nba player signed a new contract ?");
    let off = generate_questions(&s, &Ladder::Decomp.into());
    assert_eq!(off[0].wh.kind, WhKind::Who);
}

fn answer_set(s: &AnnotatedSentence, cfg: &HeuristicConfig) -> Vec<(usize, usize, String)> {
    generate_questions(s, cfg).into_iter().map(|e| (e.answer_start, e.answer_end, e.answer_role)).collect()
}

fn check_draft_invariants(s: &AnnotatedSentence, cfg: &HeuristicConfig) -> Result<(), TestCaseError> {
    let out = generate_questions(s, cfg);
    let bound: usize = s
        .srl_frames
        .iter()
        .filter(|f| cfg.frame_selection == sumqg::FrameSelection::AllFrames || Ok(f.verb_index) == s.root_verb())
        .map(|f| f.arguments.len())
        .sum();
    prop_assert!(out.len() <= bound);
    for e in &out {
        let tokens = &e.question.tokens;
        prop_assert_eq!(tokens.last().map(String::as_str), Some("?"));
        prop_assert_eq!(tokens.iter().filter(|t| t.contains('?')).count(), 1);
        prop_assert!(!e.question.text().chars().any(char::is_uppercase));
        let answer: Vec<&str> = s.tokens[e.answer_start..e.answer_end].iter().map(|t| t.surface.as_str()).collect();
        prop_assert!(!echoes(tokens, &answer), "echo: {} / {}", e.question.text(), e.answer_text);
        prop_assert_eq!(&e.answer_text, &s.span_text(e.answer_start, e.answer_end));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn drafts_are_well_formed(seed in any::<u64>()) {
        for s in sentences(seed, 4, SentenceShape::default()) {
            for ladder in Ladder::ALL {
                check_draft_invariants(&s, &ladder.into())?;
            }
        }
    }

    #[test]
    fn ladder_rungs_keep_answers(seed in any::<u64>()) {
        for s in sentences(seed, 4, SentenceShape::default()) {
            let decomp = answer_set(&s, &Ladder::Decomp.into());
            prop_assert_eq!(&answer_set(&s, &Ladder::WhMove.into()), &decomp);
            prop_assert_eq!(&answer_set(&s, &Ladder::Full.into()), &decomp);
            let with = generate_questions(&s, &Ladder::Full.into());
            let without = generate_questions(&s, &Ladder::Decomp.into());
            for (a, b) in with.iter().zip(&without) {
                if a.wh.kind != WhKind::WhichX {
                    prop_assert_eq!(&a.question, &b.question);
                }
            }
        }
    }

    #[test]
    fn which_only_with_ner_wh(seed in any::<u64>()) {
        for s in sentences(seed, 4, SentenceShape::default()) {
            for ladder in [Ladder::Naive, Ladder::Summary, Ladder::MainVerb, Ladder::WhMove, Ladder::Decomp] {
                prop_assert!(generate_questions(&s, &ladder.into()).iter().all(|e| e.wh.kind != WhKind::WhichX));
            }
        }
    }

    #[test]
    fn wh_kind_depends_on_role_and_covering_labels(seed in any::<u64>()) {
        let cfg: HeuristicConfig = Ladder::Decomp.into();
        let mut seen: std::collections::HashMap<(String, BTreeSet<String>), WhKind> = Default::default();
        for s in sentences(seed, 8, SentenceShape::default()) {
            for f in &s.srl_frames {
                for a in &f.arguments {
                    let Ok(first) = identify_wh_word(a, &s, &cfg) else { continue };
                    prop_assert_eq!(identify_wh_word(a, &s, &cfg).unwrap(), first.clone());
                    let labels: BTreeSet<String> = covering_entities(&s, a.start, a.end, cfg.entity_coverage_min)
                        .into_iter()
                        .map(|o| o.span.label.clone())
                        .collect();
                    let prev = *seen.entry((a.role.clone(), labels)).or_insert(first.kind);
                    prop_assert_eq!(prev, first.kind);
                }
            }
        }
    }
}

#[test]
fn parallel_output_matches_sequential() {
    let corpus = sentences(2024, 1000, SentenceShape::default());
    let cfg = HeuristicConfig::default();
    let one = generate_batch(&corpus, &cfg, &Executor::new(1).unwrap());
    let eight = generate_batch(&corpus, &cfg, &Executor::new(8).unwrap());
    assert_eq!(one, eight);
    assert!(one.iter().map(Vec::len).sum::<usize>() > 100);
}

#[test]
fn empty_and_rootless_inputs() {
    let s = sumqg::fixtures::SentenceBuilder::new("x").token("hello", "INTJ", "root", None).build();
    assert!(generate_questions(&s, &HeuristicConfig::default()).is_empty());
}
