//! Seeded generators for valid annotated sentences and small corpora, used
//! by property tests, benches and fixture builders.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::annotation::{AnnotatedSentence, DepEdge, Head, NerSpan, SrlArgument, SrlFrame, Token};

const NOUNS: &[&str] = &[
    "party", "morning", "singer", "surgery", "injury", "tour", "contract", "player", "council",
    "river", "market", "season", "album", "bridge", "parade", "museum", "league", "election",
    "city", "company", "festival", "school", "team", "minister", "court", "film", "storm",
    "village", "bank", "station", "coach", "hospital", "budget", "harbour", "strike",
];
const NAMES: &[&str] = &[
    "bono", "hawking", "jordan", "paris", "london", "malinen", "surrey", "motors", "fifa",
    "oxford", "march", "1972", "europe", "nasa", "u2", "tokyo", "chelsea", "kenya",
];
const ADJECTIVES: &[&str] = &["new", "old", "spinal", "local", "swedish", "national", "big", "early", "final"];
const DETERMINERS: &[&str] = &["the", "a", "an", "this", "its", "their"];
const PREPOSITIONS: &[&str] = &["in", "on", "after", "before", "near", "with", "during", "across"];
const VERBS: &[&str] = &[
    "announced", "signed", "opened", "visited", "reported", "suffered", "launched", "moved",
    "released", "approved", "hosted", "played", "closed", "joined", "rejected", "studied",
    "carried", "stopped", "planned", "wanted",
];
const PRONOUNS: &[&str] = &["he", "she", "they", "it"];
const LABELS: &[&str] = &["PERSON", "ORG", "GPE", "DATE", "CARDINAL", "MONEY", "LOC", "NORP", "WORK_OF_ART"];
const ROLES: &[&str] = &[
    "ARG0", "ARG1", "ARG2", "ARG3", "ARGM-TMP", "ARGM-LOC", "ARGM-MNR", "ARGM-CAU", "ARGM-NEG",
    "ARGM-DIR", "ARGM-EXT", "C-ARG1",
];
const DEP_LABELS: &[&str] = &["dep", "det", "amod", "dobj", "prep", "pobj", "compound", "conj"];

#[derive(Debug, Clone, Copy)]
pub struct SentenceShape {
    pub min_tokens: usize,
    pub max_tokens: usize,
    pub max_frames: usize,
    pub max_entities: usize,
}

impl Default for SentenceShape {
    fn default() -> Self {
        SentenceShape { min_tokens: 5, max_tokens: 40, max_frames: 3, max_entities: 4 }
    }
}

fn word(rng: &mut ChaCha8Rng) -> (String, &'static str) {
    let (w, pos) = match rng.gen_range(0..10) {
        0..=3 => (*NOUNS.choose(rng).unwrap(), "NOUN"),
        4 => (*NAMES.choose(rng).unwrap(), "PROPN"),
        5 => (*ADJECTIVES.choose(rng).unwrap(), "ADJ"),
        6 | 7 => (*DETERMINERS.choose(rng).unwrap(), "DET"),
        8 => (*PREPOSITIONS.choose(rng).unwrap(), "ADP"),
        _ => (*PRONOUNS.choose(rng).unwrap(), "PRON"),
    };
    // Mixed case and attached punctuation exercise normalization.
    let mut w = w.to_string();
    if rng.gen_bool(0.15) {
        let mut chars = w.chars();
        w = chars.next().map(|c| c.to_uppercase().chain(chars).collect()).unwrap_or(w);
    }
    if rng.gen_bool(0.03) {
        w.push('?');
    }
    (w, pos)
}

/// Picks a random span inside `[lo, hi)` of at most `max_len` tokens.
fn random_span(rng: &mut ChaCha8Rng, lo: usize, hi: usize, max_len: usize) -> Option<(usize, usize)> {
    if hi <= lo {
        return None;
    }
    let start = rng.gen_range(lo..hi);
    let len = rng.gen_range(1..=max_len.min(hi - start));
    Some((start, start + len))
}

fn overlaps(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 < b.1 && b.0 < a.1
}

/// A random sentence satisfying every annotation invariant. Frame verbs are
/// distinct surfaces; the root verb may carry one auxiliary, which no
/// argument covers.
pub fn random_sentence(rng: &mut ChaCha8Rng, id: &str, shape: SentenceShape) -> AnnotatedSentence {
    let n = rng.gen_range(shape.min_tokens..=shape.max_tokens);
    let mut tokens: Vec<Token> = (0..n)
        .map(|index| {
            let (surface, pos) = word(rng);
            Token { index, surface, lemma: None, pos: pos.into() }
        })
        .collect();
    if rng.gen_bool(0.3) {
        let last = tokens.last_mut().unwrap();
        last.surface = ".".into();
        last.pos = "PUNCT".into();
    }

    let content_end = if tokens[n - 1].surface == "." { n - 1 } else { n };
    let root = rng.gen_range(0..content_end);
    let frame_count = rng.gen_range(0..=shape.max_frames);
    let mut verbs: Vec<&str> = VERBS.to_vec();
    verbs.shuffle(rng);
    let mut frame_verbs = vec![root];
    let mut others: Vec<usize> = (0..content_end).filter(|&i| i != root).collect();
    others.shuffle(rng);
    frame_verbs.extend(others.into_iter().take(frame_count.saturating_sub(1)));
    for (k, &v) in frame_verbs.iter().enumerate() {
        tokens[v].surface = verbs[k].to_string();
        tokens[v].pos = "VERB".into();
    }

    let aux = (root > 0 && rng.gen_bool(0.25)).then(|| root - 1).filter(|a| !frame_verbs.contains(a));
    if let Some(a) = aux {
        tokens[a].surface = ["has", "was", "had"].choose(rng).unwrap().to_string();
        tokens[a].pos = "AUX".into();
    }

    // Dependency tree: attach nodes in random order to already attached ones.
    let mut order: Vec<usize> = (0..n).filter(|&i| i != root).collect();
    order.shuffle(rng);
    let mut attached = vec![root];
    let mut heads = vec![Head::Root; n];
    let mut labels = vec![String::from("root"); n];
    let subject = (0..root).filter(|&i| Some(i) != aux).collect::<Vec<_>>().choose(rng).copied();
    for i in order {
        let (head, label) = if Some(i) == aux {
            (root, "aux".to_string())
        } else if Some(i) == subject {
            (root, "nsubj".to_string())
        } else {
            (*attached.choose(rng).unwrap(), DEP_LABELS.choose(rng).unwrap().to_string())
        };
        heads[i] = Head::Token(head);
        labels[i] = label;
        attached.push(i);
    }
    let dep_edges = (0..n)
        .map(|i| DepEdge { dependent: i, head: heads[i], label: labels[i].clone() })
        .collect();

    let srl_frames = frame_verbs
        .iter()
        .take(frame_count)
        .map(|&v| {
            let mut spans: Vec<(usize, usize)> = Vec::new();
            for _ in 0..rng.gen_range(1..=6) {
                let Some(span) = random_span(rng, 0, content_end, 8) else { continue };
                let blocked = |i: usize| i == v || (v == root && Some(i) == aux);
                if (span.0..span.1).any(blocked) || spans.iter().any(|&s| overlaps(s, span)) {
                    continue;
                }
                spans.push(span);
            }
            spans.sort();
            let arguments = spans
                .into_iter()
                .map(|(s, e)| SrlArgument::new(*ROLES.choose(rng).unwrap(), s, e))
                .collect();
            SrlFrame { verb_index: v, arguments }
        })
        .collect();

    let mut ner: Vec<(usize, usize)> = Vec::new();
    for _ in 0..rng.gen_range(0..=shape.max_entities) {
        if let Some(span) = random_span(rng, 0, content_end, 3) {
            if !ner.iter().any(|&s| overlaps(s, span)) {
                ner.push(span);
            }
        }
    }
    ner.sort();
    let ner_spans = ner
        .into_iter()
        .map(|(start, end)| NerSpan { start, end, label: LABELS.choose(rng).unwrap().to_string() })
        .collect();

    AnnotatedSentence { sentence_id: id.into(), tokens, dep_edges, ner_spans, srl_frames }
}

/// `count` sentences from one seed.
pub fn sentences(seed: u64, count: usize, shape: SentenceShape) -> Vec<AnnotatedSentence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|i| random_sentence(&mut rng, &format!("s{i}"), shape)).collect()
}

/// JSON Lines records for the passage/summary pipeline. Articles embed the
/// summary among filler; some exceed the article length limit.
pub fn pair_corpus(seed: u64, count: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let summary = random_sentence(&mut rng, &format!("sum-{i}"), SentenceShape::default());
            let filler = rng.gen_range(20..520);
            let mut article: Vec<String> = (0..filler).map(|_| word(&mut rng).0).collect();
            let at = rng.gen_range(0..=article.len());
            article.insert(at, summary.text());
            json!({
                "doc_id": format!("doc-{i}"),
                "passage": article.join(" "),
                "summary_annotation": summary,
            })
            .to_string()
        })
        .collect()
}

/// Tags some short root-frame arguments as entities so that paragraph
/// answers can meet generated questions.
fn align_entities(rng: &mut ChaCha8Rng, s: &mut AnnotatedSentence) {
    let Ok(root) = s.root_verb() else { return };
    let Some(frame) = s.srl_frames.iter().find(|f| f.verb_index == root) else { return };
    for arg in &frame.arguments {
        let span = (arg.start, arg.end);
        if span.1 - span.0 > 3 || !rng.gen_bool(0.6) {
            continue;
        }
        if s.ner_spans.iter().any(|e| overlaps((e.start, e.end), span)) {
            continue;
        }
        let label = LABELS.choose(rng).unwrap().to_string();
        s.ner_spans.push(NerSpan { start: span.0, end: span.1, label });
    }
    s.ner_spans.sort_by_key(|e| (e.start, e.end));
}

/// JSON Lines records for the paragraph pipeline.
pub fn paragraph_corpus(seed: u64, count: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = SentenceShape { min_tokens: 12, max_tokens: 60, max_frames: 2, max_entities: 5 };
    (0..count)
        .map(|i| {
            let mut annotation = random_sentence(&mut rng, &format!("para-{i}"), shape);
            align_entities(&mut rng, &mut annotation);
            json!({ "para_id": format!("para-{i}"), "annotation": annotation }).to_string()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotation::Validation;

    #[test]
    fn generated_sentences_validate() {
        for s in sentences(7, 300, SentenceShape::default()) {
            s.validate(Validation::Sentence).unwrap();
            assert!((5..=40).contains(&s.len()));
            assert!(s.srl_frames.len() <= 3 && s.ner_spans.len() <= 4);
        }
    }

    #[test]
    fn generation_is_seeded() {
        assert_eq!(pair_corpus(3, 5), pair_corpus(3, 5));
        assert_ne!(pair_corpus(3, 5), pair_corpus(4, 5));
    }
}
