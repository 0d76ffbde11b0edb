//! Corpus pipelines: QG training triples from passage/summary pairs, and
//! synthetic extractive-QA pairs from NER-annotated paragraphs.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::annotation::{from_value, AnnotatedSentence, AnnotationError, Validation};
use crate::engine::{generate_questions, HeuristicConfig, PassageMode, QgExample};
use crate::wh::WhKind;

pub const SEP: &str = "<SEP>";

pub const PRONOUNS: &[&str] = &[
    "he", "she", "it", "they", "we", "you", "i", "him", "her", "them", "us", "me", "this", "that",
    "these", "those", "who", "whom",
];

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error("malformed record: {0}")]
    MalformedRecord(String),
    #[error("invalid annotation: {0}")]
    Annotation(#[from] AnnotationError),
    #[error("passage of {0} is empty")]
    EmptyPassage(String),
    #[error("pair {pair_id}: answer {answer:?} is not at offset {answer_start}")]
    InvalidOffset { pair_id: String, answer: String, answer_start: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RejectCode {
    ArticleTooLong,
    LowAnswerOverlap,
    QuestionTooShort,
    ParaTooShort,
    ParaTooLong,
    AnswerNotInParagraph,
    AnswerSinglePronoun,
    NoAnswerExtracted,
    /// A paragraph answer for which no question is available.
    NoQuestion,
}

impl RejectCode {
    pub fn as_str(self) -> &'static str {
        match self {
            RejectCode::ArticleTooLong => "ARTICLE_TOO_LONG",
            RejectCode::LowAnswerOverlap => "LOW_ANSWER_OVERLAP",
            RejectCode::QuestionTooShort => "QUESTION_TOO_SHORT",
            RejectCode::ParaTooShort => "PARA_TOO_SHORT",
            RejectCode::ParaTooLong => "PARA_TOO_LONG",
            RejectCode::AnswerNotInParagraph => "ANSWER_NOT_IN_PARAGRAPH",
            RejectCode::AnswerSinglePronoun => "ANSWER_SINGLE_PRONOUN",
            RejectCode::NoAnswerExtracted => "NO_ANSWER_EXTRACTED",
            RejectCode::NoQuestion => "NO_QUESTION",
        }
    }
}

impl fmt::Display for RejectCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectReason {
    pub code: RejectCode,
    pub detail: String,
}

impl RejectReason {
    fn new(code: RejectCode, detail: impl Into<String>) -> Self {
        RejectReason { code, detail: detail.into() }
    }
}

/// One line of the reject log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectRecord {
    pub id: String,
    pub code: RejectCode,
    pub detail: String,
}

impl RejectRecord {
    pub fn new(id: impl Into<String>, reason: RejectReason) -> Self {
        RejectRecord { id: id.into(), code: reason.code, detail: reason.detail }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome<T> {
    Accept(T),
    Reject(RejectRecord),
}

impl<T> Outcome<T> {
    pub fn accepted(&self) -> Option<&T> {
        match self {
            Outcome::Accept(t) => Some(t),
            Outcome::Reject(_) => None,
        }
    }

    pub fn rejected(&self) -> Option<&RejectRecord> {
        match self {
            Outcome::Accept(_) => None,
            Outcome::Reject(r) => Some(r),
        }
    }
}

fn words(text: &str) -> impl Iterator<Item = &str> {
    text.split_whitespace()
}

// ---------------------------------------------------------------------------
// QG triples

#[derive(Debug, Clone, PartialEq)]
pub struct DocumentPair {
    pub doc_id: String,
    pub passage_tokens: Vec<String>,
    pub summary: AnnotatedSentence,
}

impl DocumentPair {
    pub fn new(doc_id: impl Into<String>, passage: &str, summary: AnnotatedSentence) -> Result<Self, DatasetError> {
        let doc_id = doc_id.into();
        let passage_tokens: Vec<String> = words(passage).map(str::to_string).collect();
        if passage_tokens.is_empty() {
            return Err(DatasetError::EmptyPassage(doc_id));
        }
        Ok(DocumentPair { doc_id, passage_tokens, summary })
    }

    /// One line of the pairs corpus:
    /// `{"doc_id", "passage", "summary_annotation"}`.
    pub fn from_json_line(line: &str) -> Result<Self, DatasetError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Line {
            doc_id: String,
            passage: String,
            summary_annotation: Value,
        }
        let raw: Line = serde_json::from_str(line).map_err(|e| DatasetError::MalformedRecord(e.to_string()))?;
        let summary = from_value(raw.summary_annotation, Validation::Sentence)?;
        DocumentPair::new(raw.doc_id, &raw.passage, summary)
    }

    pub fn passage_text(&self) -> String {
        self.passage_tokens.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleMeta {
    pub id: String,
    pub doc_id: String,
    pub sentence_id: String,
    pub answer_role: String,
    pub ladder: String,
    pub wh: WhKind,
    pub wh_phrase: String,
    pub subject_question: bool,
    pub answer_entities: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QgTriple {
    pub passage: String,
    pub answer: String,
    pub question: String,
    pub meta: TripleMeta,
}

fn triple_from(pair: &DocumentPair, n: usize, passage: &str, ex: &QgExample, cfg: &HeuristicConfig) -> QgTriple {
    QgTriple {
        passage: passage.to_string(),
        answer: ex.answer_text.clone(),
        question: ex.question.text(),
        meta: TripleMeta {
            id: format!("{}-{}", pair.doc_id, n),
            doc_id: pair.doc_id.clone(),
            sentence_id: ex.source_sentence_id.clone(),
            answer_role: ex.answer_role.clone(),
            ladder: cfg.ladder_name().to_string(),
            wh: ex.wh.kind,
            wh_phrase: ex.wh.text(),
            subject_question: ex.subject_question,
            answer_entities: ex.answer_entities.clone(),
        },
    }
}

/// Questions from the summary, paired with the article (or with the summary
/// itself in naive mode) and filtered.
pub fn build_qg_triples(pair: &DocumentPair, cfg: &HeuristicConfig) -> Vec<Outcome<QgTriple>> {
    let passage = match cfg.mode {
        PassageMode::Naive => pair.summary.text(),
        PassageMode::Summary => pair.passage_text(),
    };
    generate_questions(&pair.summary, cfg)
        .iter()
        .enumerate()
        .map(|(n, ex)| {
            let triple = triple_from(pair, n, &passage, ex, cfg);
            match filter_qg_triple(&triple, cfg) {
                Ok(()) => Outcome::Accept(triple),
                Err(reason) => Outcome::Reject(RejectRecord::new(triple.meta.id, reason)),
            }
        })
        .collect()
}

/// Fraction of answer tokens (by position) that occur in the passage,
/// compared case-insensitively. An empty answer counts as fully present.
pub fn answer_overlap(answer: &str, passage: &str) -> f64 {
    let passage: HashSet<String> = words(passage).map(str::to_lowercase).collect();
    let answer: Vec<String> = words(answer).map(str::to_lowercase).collect();
    if answer.is_empty() {
        return 1.0;
    }
    let present = answer.iter().filter(|t| passage.contains(*t)).count();
    present as f64 / answer.len() as f64
}

pub fn filter_qg_triple(t: &QgTriple, cfg: &HeuristicConfig) -> Result<(), RejectReason> {
    let passage_len = words(&t.passage).count();
    if passage_len > cfg.max_article_tokens {
        return Err(RejectReason::new(
            RejectCode::ArticleTooLong,
            format!("{passage_len} tokens > {}", cfg.max_article_tokens),
        ));
    }
    let overlap = answer_overlap(&t.answer, &t.passage);
    if overlap < cfg.min_answer_overlap {
        return Err(RejectReason::new(
            RejectCode::LowAnswerOverlap,
            format!("overlap {overlap:.4} < {}", cfg.min_answer_overlap),
        ));
    }
    let question_len = words(&t.question).filter(|w| *w != "?").count();
    if question_len < cfg.min_question_tokens {
        return Err(RejectReason::new(
            RejectCode::QuestionTooShort,
            format!("{question_len} tokens < {}", cfg.min_question_tokens),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Synthetic QA

#[derive(Debug, Clone, PartialEq)]
pub struct ParagraphRecord {
    pub para_id: String,
    pub annotation: AnnotatedSentence,
}

impl ParagraphRecord {
    /// One line of the paragraph corpus: `{"para_id", "annotation"}`.
    pub fn from_json_line(line: &str) -> Result<Self, DatasetError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Line {
            para_id: String,
            annotation: Value,
        }
        let raw: Line = serde_json::from_str(line).map_err(|e| DatasetError::MalformedRecord(e.to_string()))?;
        let annotation = from_value(raw.annotation, Validation::Paragraph)?;
        Ok(ParagraphRecord { para_id: raw.para_id, annotation })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnswerCandidate {
    pub start: usize,
    pub end: usize,
    pub label: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QaPair {
    pub pair_id: String,
    pub paragraph_text: String,
    pub answer_text: String,
    /// Offset in characters, not bytes.
    pub answer_start: usize,
    pub question_text: String,
    pub answer_label: String,
}

impl QaPair {
    pub fn offset_holds(&self) -> bool {
        let n = self.answer_text.chars().count();
        self.paragraph_text.chars().skip(self.answer_start).take(n).eq(self.answer_text.chars())
    }
}

/// Every entity mention, deduplicated on (surface text, label) keeping the
/// first occurrence.
pub fn extract_answer_candidates(p: &AnnotatedSentence) -> Vec<AnswerCandidate> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for span in &p.ner_spans {
        let text = p.span_text(span.start, span.end);
        if seen.insert((text.clone(), span.label.clone())) {
            out.push(AnswerCandidate { start: span.start, end: span.end, label: span.label.clone(), text });
        }
    }
    out
}

fn contains_words(haystack: &[String], needle: &[String]) -> bool {
    !needle.is_empty() && haystack.windows(needle.len()).any(|w| w == needle)
}

pub fn filter_paragraph_answer<S: AsRef<str>>(
    paragraph_tokens: &[S],
    answer: &str,
    cfg: &HeuristicConfig,
) -> Result<(), RejectReason> {
    let para: Vec<String> = paragraph_tokens
        .iter()
        .flat_map(|t| words(t.as_ref()).map(str::to_lowercase).collect::<Vec<_>>())
        .collect();
    if para.len() < cfg.min_paragraph_words {
        return Err(RejectReason::new(
            RejectCode::ParaTooShort,
            format!("{} words < {}", para.len(), cfg.min_paragraph_words),
        ));
    }
    if para.len() > cfg.max_paragraph_words {
        return Err(RejectReason::new(
            RejectCode::ParaTooLong,
            format!("{} words > {}", para.len(), cfg.max_paragraph_words),
        ));
    }
    let answer_words: Vec<String> = words(answer).map(str::to_lowercase).collect();
    if !contains_words(&para, &answer_words) {
        return Err(RejectReason::new(RejectCode::AnswerNotInParagraph, answer.to_string()));
    }
    if let [single] = answer_words.as_slice() {
        if PRONOUNS.contains(&single.as_str()) {
            return Err(RejectReason::new(RejectCode::AnswerSinglePronoun, single.clone()));
        }
    }
    Ok(())
}

pub fn emit_seq2seq_input(paragraph: &str, answer: &str) -> String {
    format!("{paragraph} {SEP} {answer} {SEP}")
}

/// Character offset of token `index` in the single-space join of `s`.
fn char_offset(s: &AnnotatedSentence, index: usize) -> usize {
    s.tokens[..index].iter().map(|t| t.surface.chars().count() + 1).sum()
}

/// Question lookup for paragraph answers.
#[derive(Debug, Clone, Copy)]
pub enum QuestionSource<'a> {
    /// Questions keyed by pair id.
    Table(&'a HashMap<String, String>),
    /// Questions the heuristics derive from the paragraph's own frames,
    /// matched to candidates by exact span.
    Heuristic,
}

/// Candidates, filters and question lookup for one paragraph.
pub fn build_qa_pairs(
    rec: &ParagraphRecord,
    cfg: &HeuristicConfig,
    questions: QuestionSource<'_>,
) -> Vec<Outcome<QaPair>> {
    let p = &rec.annotation;
    let candidates = extract_answer_candidates(p);
    if candidates.is_empty() {
        return vec![Outcome::Reject(RejectRecord::new(
            rec.para_id.clone(),
            RejectReason::new(RejectCode::NoAnswerExtracted, "paragraph has no entity mentions"),
        ))];
    }
    let surfaces: Vec<&str> = p.tokens.iter().map(|t| t.surface.as_str()).collect();
    let paragraph_text = p.text();
    let generated: BTreeMap<(usize, usize), String> = match questions {
        QuestionSource::Heuristic => {
            let mut map = BTreeMap::new();
            for ex in generate_questions(p, cfg) {
                map.entry((ex.answer_start, ex.answer_end)).or_insert_with(|| ex.question.text());
            }
            map
        }
        QuestionSource::Table(_) => BTreeMap::new(),
    };

    candidates
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let pair_id = format!("{}-{}", rec.para_id, k);
            if let Err(reason) = filter_paragraph_answer(&surfaces, &c.text, cfg) {
                return Outcome::Reject(RejectRecord::new(pair_id, reason));
            }
            let question = match questions {
                QuestionSource::Table(table) => table.get(&pair_id).cloned(),
                QuestionSource::Heuristic => generated.get(&(c.start, c.end)).cloned(),
            };
            let Some(question_text) = question else {
                return Outcome::Reject(RejectRecord::new(
                    pair_id,
                    RejectReason::new(RejectCode::NoQuestion, c.text),
                ));
            };
            Outcome::Accept(QaPair {
                answer_start: char_offset(p, c.start),
                pair_id,
                paragraph_text: paragraph_text.clone(),
                answer_text: c.text,
                question_text,
                answer_label: c.label,
            })
        })
        .collect()
}

fn tag_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"<[^<>\n]*>").unwrap())
}

fn link_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\[\[(?:[^\[\]|]*\|)?([^\[\]|]*)\]\]").unwrap())
}

fn reference_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"(?i)\[(?:\d+|[a-z]|note\s*\d+|[^\[\]]*\bneeded|citation[^\[\]]*|clarification[^\[\]]*)\]")
            .unwrap()
    })
}

fn blank_line_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\n[ \t\r]*\n").unwrap())
}

/// Strip markup and reference markers, split on blank lines, and keep
/// paragraphs longer than `min_chars` characters.
pub fn clean_wiki_paragraphs(raw_text: &str, min_chars: usize) -> Vec<String> {
    let text = raw_text.replace("\r\n", "\n");
    let text = tag_re().replace_all(&text, "");
    let text = link_re().replace_all(&text, "$1");
    let text = reference_re().replace_all(&text, "");
    blank_line_re()
        .split(&text)
        .map(|p| p.split_whitespace().collect::<Vec<_>>().join(" "))
        .filter(|p| p.chars().count() > min_chars)
        .collect()
}

#[derive(Serialize)]
struct SquadAnswer<'a> {
    text: &'a str,
    answer_start: usize,
}

#[derive(Serialize)]
struct SquadQa<'a> {
    id: &'a str,
    question: &'a str,
    answers: Vec<SquadAnswer<'a>>,
}

#[derive(Serialize)]
struct SquadParagraph<'a> {
    context: &'a str,
    qas: Vec<SquadQa<'a>>,
}

#[derive(Serialize)]
struct SquadArticle<'a> {
    title: &'a str,
    paragraphs: Vec<SquadParagraph<'a>>,
}

#[derive(Serialize)]
struct SquadDocument<'a> {
    version: &'static str,
    data: Vec<SquadArticle<'a>>,
}

/// SQuAD 1.1 document with pairs grouped by context in first-seen order.
pub fn build_squad_json(pairs: &[QaPair], dataset_name: &str) -> Result<String, DatasetError> {
    let mut paragraphs: Vec<SquadParagraph<'_>> = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    for pair in pairs {
        if !pair.offset_holds() {
            return Err(DatasetError::InvalidOffset {
                pair_id: pair.pair_id.clone(),
                answer: pair.answer_text.clone(),
                answer_start: pair.answer_start,
            });
        }
        let slot = *index.entry(pair.paragraph_text.as_str()).or_insert_with(|| {
            paragraphs.push(SquadParagraph { context: &pair.paragraph_text, qas: Vec::new() });
            paragraphs.len() - 1
        });
        paragraphs[slot].qas.push(SquadQa {
            id: &pair.pair_id,
            question: &pair.question_text,
            answers: vec![SquadAnswer { text: &pair.answer_text, answer_start: pair.answer_start }],
        });
    }
    let doc = SquadDocument { version: "1.1", data: vec![SquadArticle { title: dataset_name, paragraphs }] };
    let mut text = serde_json::to_string_pretty(&doc).expect("squad document serializes");
    text.push('\n');
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Ladder;
    use crate::fixtures::{self, SentenceBuilder};

    fn triple(passage: &str, answer: &str, question: &str) -> QgTriple {
        QgTriple {
            passage: passage.into(),
            answer: answer.into(),
            question: question.into(),
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
    fn qg_filter_order() {
        let cfg = HeuristicConfig::default();
        let long = vec!["x"; 481].join(" ");
        let t = triple(&long, "nothing here", "a b ?");
        assert_eq!(filter_qg_triple(&t, &cfg).unwrap_err().code, RejectCode::ArticleTooLong);
        let t = triple("a b c", "a b c d e f g h i j", "what is it that was ?");
        assert_eq!(filter_qg_triple(&t, &cfg).unwrap_err().code, RejectCode::LowAnswerOverlap);
        let t = triple("a b c", "a", "what did a do ?");
        assert_eq!(filter_qg_triple(&t, &cfg).unwrap_err().code, RejectCode::QuestionTooShort);
    }

    #[test]
    fn overlap_boundary_is_inclusive() {
        let answer = [vec!["a"; 11], vec!["z"; 9]].concat().join(" ");
        assert_eq!(answer_overlap(&answer, "A b"), 0.55);
        let t = triple("a b", &answer, "what did they do then ?");
        assert!(filter_qg_triple(&t, &HeuristicConfig::default()).is_ok());
    }

    #[test]
    fn naive_passage_is_summary() {
        let pair = DocumentPair::new("d", "an unrelated article", fixtures::s1()).unwrap();
        let out = build_qg_triples(&pair, &Ladder::Naive.into());
        assert!(!out.is_empty());
        for o in out.iter().filter_map(Outcome::accepted) {
            assert_eq!(o.passage, "stephen hawking announced the party in the morning");
        }
    }

    #[test]
    fn paragraph_filters() {
        let cfg = HeuristicConfig::default();
        let p19: Vec<String> = (0..19).map(|i| format!("w{i}")).collect();
        assert_eq!(filter_paragraph_answer(&p19, "w1", &cfg).unwrap_err().code, RejectCode::ParaTooShort);
        let mut p20 = p19.clone();
        p20.push("he".into());
        assert_eq!(
            filter_paragraph_answer(&p20, "he", &cfg).unwrap_err().code,
            RejectCode::AnswerSinglePronoun
        );
        assert_eq!(
            filter_paragraph_answer(&p20, "w3 w2", &cfg).unwrap_err().code,
            RejectCode::AnswerNotInParagraph
        );
        assert!(filter_paragraph_answer(&p20, "W2 w3", &cfg).is_ok());
    }

    #[test]
    fn seq2seq_format() {
        assert_eq!(emit_seq2seq_input("abc", "x"), "abc <SEP> x <SEP>");
        assert_eq!(emit_seq2seq_input("a b", "c d"), "a b <SEP> c d <SEP>");
    }

    #[test]
    fn candidates_dedup_first_occurrence() {
        let s = SentenceBuilder::new("p")
            .token("Paris", "PROPN", "nsubj", Some(1))
            .token("met", "VERB", "root", None)
            .token("Paris", "PROPN", "dobj", Some(1))
            .token("in", "ADP", "prep", Some(1))
            .token("1972", "NUM", "pobj", Some(3))
            .entity(0, 1, "GPE")
            .entity(2, 3, "GPE")
            .entity(4, 5, "DATE")
            .build();
        let c = extract_answer_candidates(&s);
        assert_eq!(c.iter().map(|c| c.start).collect::<Vec<_>>(), [0, 4]);
    }

    #[test]
    fn wiki_cleaning() {
        assert_eq!(clean_wiki_paragraphs("<b>x</b>", 0), ["x"]);
        let body = "word ".repeat(120);
        let raw = format!("{body}[12] [citation needed] [[Target|shown]]\n\nshort one");
        let out = clean_wiki_paragraphs(&raw, 500);
        assert_eq!(out.len(), 1);
        assert!(out[0].ends_with("word shown"));
    }

    #[test]
    fn squad_grouping_and_offsets() {
        let pair = |id: &str, ctx: &str, ans: &str, start: usize| QaPair {
            pair_id: id.into(),
            paragraph_text: ctx.into(),
            answer_text: ans.into(),
            answer_start: start,
            question_text: "q ?".into(),
            answer_label: "X".into(),
        };
        let text = build_squad_json(&[pair("a", "ü b c", "b", 2), pair("b", "ü b c", "c", 4)], "t").unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["data"][0]["paragraphs"].as_array().unwrap().len(), 1);
        assert_eq!(v["data"][0]["paragraphs"][0]["qas"].as_array().unwrap().len(), 2);
        assert!(matches!(
            build_squad_json(&[pair("a", "ü b c", "b", 3)], "t"),
            Err(DatasetError::InvalidOffset { .. })
        ));
    }
}
