use std::collections::HashMap;

use proptest::prelude::*;
use sumqg::fixtures::SentenceBuilder;
use sumqg::morph::REGULAR_HOMOGRAPHS;
use sumqg::{base_form, decomp_verb, AnnotatedSentence, Tense};

struct Row {
    base: String,
    past: String,
    third: String,
}

fn regular_verbs() -> Vec<Row> {
    include_str!("data/regular_verbs.tsv")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let cols: Vec<&str> = l.split('\t').collect();
            assert_eq!(cols.len(), 3, "bad row {l:?}");
            Row { base: cols[0].into(), past: cols[1].into(), third: cols[2].into() }
        })
        .collect()
}

/// "the company <verb> the plan"
fn clause(verb: &str) -> AnnotatedSentence {
    SentenceBuilder::new("m")
        .token("the", "DET", "det", Some(1))
        .token("company", "NOUN", "nsubj", Some(2))
        .token(verb, "VERB", "root", None)
        .token("the", "DET", "det", Some(4))
        .token("plan", "NOUN", "dobj", Some(2))
        .frame(2, &[("ARG0", 0, 2), ("ARG1", 3, 5)])
        .build()
}

/// Inflects a base by looking it up in the list, keyed by tense.
fn reinflect<'a>(table: &'a HashMap<&str, &Row>, base: &str, tense: Tense) -> Option<&'a str> {
    let row = table.get(base)?;
    match tense {
        Tense::Past => Some(&row.past),
        Tense::Pres3sg => Some(&row.third),
        Tense::PresOther => Some(&row.base),
        Tense::AlreadyDecomposed => None,
    }
}

#[test]
fn regular_list_has_two_hundred_entries() {
    assert_eq!(regular_verbs().len(), 200);
}

#[test]
fn decomposition_reinflects_to_surface() {
    let rows = regular_verbs();
    let table: HashMap<&str, &Row> = rows.iter().map(|r| (r.base.as_str(), r)).collect();
    let mut failures = Vec::new();
    for row in &rows {
        for (surface, aux, tense) in [(&row.past, "did", Tense::Past), (&row.third, "does", Tense::Pres3sg)] {
            let d = decomp_verb(&clause(surface), 2).unwrap();
            let back = reinflect(&table, &d.main_tokens[0], d.tense);
            if d.tense != tense || d.aux_tokens != [aux] || back != Some(surface.as_str()) {
                failures.push(format!("{surface}: {:?} {:?} {:?}", d.aux_tokens, d.main_tokens, d.tense));
            }
        }
    }
    assert!(failures.is_empty(), "{} failures:\n{}", failures.len(), failures.join("\n"));
}

#[test]
fn irregular_fixture_set() {
    let forms: &[(&str, &[&str])] = &[
        ("have", &["had", "has"]),
        ("do", &["did", "done", "does"]),
        ("go", &["went", "gone", "goes"]),
        ("say", &["said", "says"]),
        ("make", &["made", "makes"]),
        ("take", &["took", "taken", "takes"]),
        ("get", &["got", "gotten", "gets"]),
        ("come", &["came", "comes"]),
        ("see", &["saw", "seen", "sees"]),
        ("know", &["knew", "known", "knows"]),
    ];
    for (base, inflected) in forms {
        assert_eq!(base_form(base, None), *base);
        for form in *inflected {
            assert_eq!(base_form(form, None), *base, "{form}");
        }
    }
    let d = decomp_verb(&clause("went"), 2).unwrap();
    assert_eq!((d.aux_tokens[0].as_str(), d.main_tokens[0].as_str(), d.tense), ("did", "go", Tense::Past));
    let d = decomp_verb(&clause("says"), 2).unwrap();
    assert_eq!((d.aux_tokens[0].as_str(), d.main_tokens[0].as_str(), d.tense), ("does", "say", Tense::Pres3sg));
}

#[test]
fn lemma_wins_over_rules() {
    assert_eq!(base_form("Announced", Some("ANNOUNCE")), "announce");
    assert_eq!(base_form("studied", None), "study");
}

proptest! {
    #[test]
    fn base_form_is_idempotent(word in "[a-zA-Z]{1,10}(ed|es|s|ied|ing)?") {
        let once = base_form(&word, None);
        prop_assume!(!REGULAR_HOMOGRAPHS.contains(&once.as_str()));
        prop_assert_eq!(base_form(&once, None), once.clone());
        prop_assert!(!once.chars().any(char::is_uppercase));
    }

    #[test]
    fn auxiliary_never_invented(verb in prop::sample::select(vec!["announced", "signed", "had", "was", "opened"]),
                                aux in prop::sample::select(vec!["has", "had", "will", "was", "is"])) {
        let s = SentenceBuilder::new("a")
            .token("it", "PRON", "nsubj", Some(2))
            .token(aux, "AUX", "aux", Some(2))
            .token(verb, "VERB", "root", None)
            .build();
        let d = decomp_verb(&s, 2).unwrap();
        prop_assert_eq!(d.tense, Tense::AlreadyDecomposed);
        prop_assert_eq!(d.aux_tokens, vec![aux.to_string()]);
        prop_assert_eq!(d.fronted_index, Some(1));
    }
}
