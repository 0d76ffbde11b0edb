use std::collections::HashMap;

use proptest::prelude::*;
use sumqg::dataset::{answer_overlap, build_qa_pairs, Outcome, ParagraphRecord, QuestionSource, TripleMeta};
use sumqg::synth::paragraph_corpus;
use sumqg::*;

fn article(tokens: usize) -> String {
    let base = "stephen hawking announced the party in the morning";
    let mut words: Vec<String> = base.split(' ').map(String::from).collect();
    words.extend((words.len()..tokens).map(|i| format!("filler{i}")));
    words.join(" ")
}

#[test]
fn summary_mode_uses_article() {
    let pair = DocumentPair::new("d1", &article(100), fixtures::s1()).unwrap();
    let out = build_qg_triples(&pair, &Ladder::Full.into());
    let accepted: Vec<&QgTriple> = out.iter().filter_map(Outcome::accepted).collect();
    assert_eq!(accepted.len(), 3);
    assert!(accepted.iter().all(|t| t.passage == article(100)));
}

#[test]
fn naive_mode_uses_summary() {
    let pair = DocumentPair::new("d1", &article(100), fixtures::s1()).unwrap();
    for o in build_qg_triples(&pair, &Ladder::Naive.into()).iter().filter_map(Outcome::accepted) {
        assert_eq!(o.passage, fixtures::s1().text());
    }
}

#[test]
fn long_article_rejects_everything() {
    let pair = DocumentPair::new("d1", &article(481), fixtures::s1()).unwrap();
    let out = build_qg_triples(&pair, &Ladder::Full.into());
    assert_eq!(out.len(), 3);
    assert!(out.iter().all(|o| o.rejected().is_some_and(|r| r.code == RejectCode::ArticleTooLong)));
}

fn triple(passage: String, answer: String, question: String) -> QgTriple {
    QgTriple {
        passage,
        answer,
        question,
        meta: TripleMeta {
            id: "t".into(),
            doc_id: "d".into(),
            sentence_id: "s".into(),
            answer_role: "ARG1".into(),
            ladder: "full".into(),
            wh: WhKind::What,
            wh_phrase: "what".into(),
            subject_question: false,
            answer_entities: vec![],
        },
    }
}

#[test]
fn qg_filter_examples() {
    let cfg = HeuristicConfig::default();
    let t = triple("a b c".into(), "a".into(), "what did a do ?".into());
    assert_eq!(filter_qg_triple(&t, &cfg).unwrap_err().code, RejectCode::QuestionTooShort);
    let answer = "a b c d e x1 x2 x3 x4 x5".to_string();
    let t = triple("a b c d e".into(), answer, "what did they see there ?".into());
    assert_eq!(filter_qg_triple(&t, &cfg).unwrap_err().code, RejectCode::LowAnswerOverlap);
    let passage = vec!["w"; 480].join(" ");
    let answer = [vec!["w"; 11], vec!["z"; 9]].concat().join(" ");
    assert_eq!(answer_overlap(&answer, &passage), 0.55);
    let t = triple(passage, answer, "what did they see there ?".into());
    assert!(filter_qg_triple(&t, &cfg).is_ok());
}

#[test]
fn candidate_extraction_examples() {
    let s = fixtures::SentenceBuilder::new("p")
        .token("Mattis", "PROPN", "nsubj", Some(2))
        .token("Malinen", "PROPN", "flat", Some(0))
        .token("retired", "VERB", "root", None)
        .token("in", "ADP", "prep", Some(2))
        .token("March", "PROPN", "pobj", Some(3))
        .token("1972", "NUM", "nummod", Some(4))
        .token("and", "CCONJ", "cc", Some(2))
        .token("he", "PRON", "nsubj", Some(8))
        .token("left", "VERB", "conj", Some(2))
        .entity(0, 2, "PERSON")
        .entity(4, 6, "DATE")
        .entity(7, 8, "PERSON")
        .build();
    let c = extract_answer_candidates(&s);
    let texts: Vec<&str> = c.iter().map(|c| c.text.as_str()).collect();
    assert_eq!(texts, ["Mattis Malinen", "March 1972", "he"]);
    let cfg = HeuristicConfig::default();
    let padded: Vec<String> = s.tokens.iter().map(|t| t.surface.clone()).chain((0..11).map(|i| format!("w{i}"))).collect();
    assert_eq!(filter_paragraph_answer(&padded, "he", &cfg).unwrap_err().code, RejectCode::AnswerSinglePronoun);
    assert!(filter_paragraph_answer(&padded, "march 1972", &cfg).is_ok());
}

#[test]
fn sep_is_not_escaped() {
    assert_eq!(emit_seq2seq_input("x <SEP> y", "z"), "x <SEP> y <SEP> z <SEP>");
}

#[test]
fn wiki_length_boundary() {
    let para = |n: usize| "x".repeat(n);
    assert!(clean_wiki_paragraphs(&para(499), 500).is_empty());
    assert!(clean_wiki_paragraphs(&para(500), 500).is_empty());
    assert_eq!(clean_wiki_paragraphs(&para(501), 500).len(), 1);
    let marked = format!("{}[12]", para(495));
    assert!(clean_wiki_paragraphs(&marked, 500).is_empty());
}

#[test]
fn squad_examples() {
    let pair = |id: &str, ctx: &str, ans: &str, start: usize| QaPair {
        pair_id: id.into(),
        paragraph_text: ctx.into(),
        answer_text: ans.into(),
        answer_start: start,
        question_text: "who ?".into(),
        answer_label: "PERSON".into(),
    };
    let one: serde_json::Value = serde_json::from_str(&build_squad_json(&[pair("a", "x y", "y", 2)], "d").unwrap()).unwrap();
    assert_eq!(one["version"], "1.1");
    assert_eq!(one["data"].as_array().unwrap().len(), 1);
    assert_eq!(one["data"][0]["paragraphs"][0]["qas"][0]["id"], "a");
    let two: serde_json::Value =
        serde_json::from_str(&build_squad_json(&[pair("a", "x y", "y", 2), pair("b", "x y", "x", 0)], "d").unwrap())
            .unwrap();
    assert_eq!(two["data"][0]["paragraphs"].as_array().unwrap().len(), 1);
    assert_eq!(two["data"][0]["paragraphs"][0]["qas"].as_array().unwrap().len(), 2);
    assert!(build_squad_json(&[pair("a", "x y", "y", 1)], "d").is_err());
}

#[test]
fn generated_paragraphs_keep_offsets_and_partition() {
    let cfg = HeuristicConfig::default();
    let mut accepted = 0;
    for line in paragraph_corpus(5, 300) {
        let rec = ParagraphRecord::from_json_line(&line).unwrap();
        let candidates = extract_answer_candidates(&rec.annotation).len();
        let out = build_qa_pairs(&rec, &cfg, QuestionSource::Heuristic);
        assert_eq!(out.len(), candidates.max(1));
        for o in &out {
            if let Some(p) = o.accepted() {
                assert!(p.offset_holds(), "{p:?}");
                accepted += 1;
            }
        }
    }
    assert!(accepted > 0);
}

#[test]
fn question_table_lookup() {
    let line = &paragraph_corpus(8, 50)[..];
    let cfg = HeuristicConfig::default();
    let mut table = HashMap::new();
    for l in line {
        let rec = ParagraphRecord::from_json_line(l).unwrap();
        for k in 0..6 {
            table.insert(format!("{}-{k}", rec.para_id), "what is it ?".to_string());
        }
        for o in build_qa_pairs(&rec, &cfg, QuestionSource::Table(&table)) {
            if let Some(r) = o.rejected() {
                assert_ne!(r.code, RejectCode::NoQuestion);
            }
        }
    }
}

proptest! {
    #[test]
    fn overlap_boundary(present in 0usize..40, absent in 0usize..40) {
        prop_assume!(present + absent > 0);
        let answer = [vec!["p"; present], vec!["q"; absent]].concat().join(" ");
        let t = triple("P r".into(), answer, "what did they see there ?".into());
        let frac = present as f64 / (present + absent) as f64;
        let verdict = filter_qg_triple(&t, &HeuristicConfig::default());
        prop_assert_eq!(verdict.is_ok(), frac >= 0.55);
    }

    #[test]
    fn paragraph_word_bounds(n in 1usize..600) {
        let para: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
        let verdict = filter_paragraph_answer(&para, "w0", &HeuristicConfig::default());
        let expected = if n < 20 {
            Some(RejectCode::ParaTooShort)
        } else if n > 480 {
            Some(RejectCode::ParaTooLong)
        } else {
            None
        };
        prop_assert_eq!(verdict.err().map(|r| r.code), expected);
    }
}
