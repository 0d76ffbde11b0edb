//! Annotation data model: tokens, dependency edges, entity spans and
//! semantic-role frames for one sentence, plus the JSON interchange reader.
//!
//! Annotations arrive pre-tokenized from upstream parsers. Reading goes
//! through three stages: JSON syntax, schema shape, then structural
//! invariants. Each stage has its own error variant so callers can tell a
//! truncated line from an annotator bug.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Dependency label marking the sentence root.
pub const ROOT_LABEL: &str = "root";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub index: usize,
    pub surface: String,
    pub lemma: Option<String>,
    pub pos: String,
}

impl Token {
    pub fn lower(&self) -> String {
        self.surface.to_lowercase()
    }

    /// True for coarse or Penn-style verbal tags.
    pub fn is_verbal(&self) -> bool {
        let pos = self.pos.to_ascii_uppercase();
        pos == "VERB" || pos == "AUX" || pos == "MD" || pos.starts_with("VB")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Head {
    Root,
    Token(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepEdge {
    pub dependent: usize,
    pub head: Head,
    pub label: String,
}

impl DepEdge {
    pub fn is_root(&self) -> bool {
        self.label.eq_ignore_ascii_case(ROOT_LABEL)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NerSpan {
    pub start: usize,
    pub end: usize,
    pub label: String,
}

impl NerSpan {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn contains(&self, index: usize) -> bool {
        self.start <= index && index < self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SrlArgument {
    pub role: String,
    pub start: usize,
    pub end: usize,
}

impl SrlArgument {
    pub fn new(role: impl Into<String>, start: usize, end: usize) -> Self {
        SrlArgument { role: role.into(), start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn contains(&self, index: usize) -> bool {
        self.start <= index && index < self.end
    }

    pub fn is_modifier(&self) -> bool {
        self.role.to_ascii_uppercase().starts_with("ARGM")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrlFrame {
    pub verb_index: usize,
    pub arguments: Vec<SrlArgument>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedSentence {
    pub sentence_id: String,
    pub tokens: Vec<Token>,
    pub dep_edges: Vec<DepEdge>,
    pub ner_spans: Vec<NerSpan>,
    pub srl_frames: Vec<SrlFrame>,
}

/// An entity span together with the fraction of a query span it covers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntityOverlap<'a> {
    pub span: &'a NerSpan,
    pub coverage: f64,
}

/// How strictly the dependency layer is checked.
///
/// Summary sentences need a complete parse. Paragraph annotations used for
/// answer extraction often carry only entities, so the paragraph profile
/// accepts an empty `dep_edges` list (a non-empty one is still checked).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Validation {
    #[default]
    Sentence,
    Paragraph,
}

/// Names of the structural invariants checked after schema decoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariant {
    EmptySurface,
    WhitespaceInSurface,
    EdgeCount,
    DuplicateEdge,
    EdgeOutOfBounds,
    RootCount,
    NerOutOfBounds,
    NerOverlap,
    VerbOutOfBounds,
    ArgumentOutOfBounds,
    ArgumentOverlap,
    ArgumentCoversVerb,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Invariant::EmptySurface => "token surface is non-empty",
            Invariant::WhitespaceInSurface => "token surface contains no whitespace",
            Invariant::EdgeCount => "exactly one dependency edge per token",
            Invariant::DuplicateEdge => "no token has two dependency edges",
            Invariant::EdgeOutOfBounds => "dependency indices within sentence bounds",
            Invariant::RootCount => "exactly one edge labeled root",
            Invariant::NerOutOfBounds => "entity span within sentence bounds",
            Invariant::NerOverlap => "entity spans do not overlap",
            Invariant::VerbOutOfBounds => "frame verb index within sentence bounds",
            Invariant::ArgumentOutOfBounds => "argument span within sentence bounds",
            Invariant::ArgumentOverlap => "arguments of one frame do not overlap",
            Invariant::ArgumentCoversVerb => "arguments do not cover the frame verb",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnnotationError {
    #[error("malformed JSON: {0}")]
    MalformedJson(String),
    #[error("schema violation: {0}")]
    SchemaViolation(String),
    #[error("invariant violated ({invariant}): {detail}")]
    InvariantViolation { invariant: Invariant, detail: String },
    #[error("sentence has no root edge")]
    NoRoot,
}

fn violation(invariant: Invariant, detail: impl Into<String>) -> AnnotationError {
    AnnotationError::InvariantViolation { invariant, detail: detail.into() }
}

impl AnnotatedSentence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Tokens in `[start, end)` joined by single spaces, case preserved.
    pub fn span_text(&self, start: usize, end: usize) -> String {
        join_surfaces(&self.tokens[start..end])
    }

    pub fn text(&self) -> String {
        join_surfaces(&self.tokens)
    }

    pub fn edge_of(&self, index: usize) -> Option<&DepEdge> {
        self.dep_edges.iter().find(|e| e.dependent == index)
    }

    /// Dependents of `head`, in token order.
    pub fn dependents_of(&self, head: usize) -> impl Iterator<Item = &DepEdge> {
        let mut deps: Vec<&DepEdge> =
            self.dep_edges.iter().filter(|e| e.head == Head::Token(head)).collect();
        deps.sort_by_key(|e| e.dependent);
        deps.into_iter()
    }

    /// Index of the token whose dependency label is `root`.
    pub fn root_verb(&self) -> Result<usize, AnnotationError> {
        self.dep_edges
            .iter()
            .find(|e| e.is_root())
            .map(|e| e.dependent)
            .ok_or(AnnotationError::NoRoot)
    }

    /// Tokens of `[start, end)` whose dependency head lies outside the span.
    ///
    /// For a well-formed constituent this is a single token, the syntactic
    /// head. Returns nothing when the sentence carries no parse.
    pub fn span_heads(&self, start: usize, end: usize) -> Vec<usize> {
        (start..end)
            .filter(|&i| match self.edge_of(i).map(|e| e.head) {
                Some(Head::Root) => true,
                Some(Head::Token(h)) => h < start || h >= end,
                None => false,
            })
            .collect()
    }

    /// Entity spans overlapping `[start, end)` with their coverage fraction,
    /// ordered by start.
    pub fn entity_labels_in_span(&self, start: usize, end: usize) -> Vec<EntityOverlap<'_>> {
        if end <= start {
            return Vec::new();
        }
        let width = (end - start) as f64;
        let mut out: Vec<EntityOverlap<'_>> = self
            .ner_spans
            .iter()
            .filter_map(|span| {
                let lo = span.start.max(start);
                let hi = span.end.min(end);
                (hi > lo).then(|| EntityOverlap { span, coverage: (hi - lo) as f64 / width })
            })
            .collect();
        out.sort_by_key(|o| o.span.start);
        out
    }

    /// Labels of every entity overlapping `[start, end)`.
    pub fn entity_labels(&self, start: usize, end: usize) -> Vec<String> {
        self.entity_labels_in_span(start, end)
            .into_iter()
            .map(|o| o.span.label.clone())
            .collect()
    }

    pub fn validate(&self, profile: Validation) -> Result<(), AnnotationError> {
        let n = self.tokens.len();
        for (i, tok) in self.tokens.iter().enumerate() {
            if tok.surface.is_empty() {
                return Err(violation(Invariant::EmptySurface, format!("token {i}")));
            }
            if tok.surface.chars().any(char::is_whitespace) {
                return Err(violation(
                    Invariant::WhitespaceInSurface,
                    format!("token {i} {:?}", tok.surface),
                ));
            }
        }

        if !(profile == Validation::Paragraph && self.dep_edges.is_empty()) {
            self.validate_edges()?;
        }

        let mut prev_end = 0;
        for span in &self.ner_spans {
            if span.start >= span.end || span.end > n {
                return Err(violation(
                    Invariant::NerOutOfBounds,
                    format!("[{}, {}) in a {n}-token sentence", span.start, span.end),
                ));
            }
            if span.start < prev_end {
                return Err(violation(
                    Invariant::NerOverlap,
                    format!("span [{}, {}) overlaps its predecessor", span.start, span.end),
                ));
            }
            prev_end = span.end;
        }

        for frame in &self.srl_frames {
            if frame.verb_index >= n {
                return Err(violation(
                    Invariant::VerbOutOfBounds,
                    format!("verb index {} in a {n}-token sentence", frame.verb_index),
                ));
            }
            let mut prev_end = 0;
            for arg in &frame.arguments {
                if arg.start >= arg.end || arg.end > n {
                    return Err(violation(
                        Invariant::ArgumentOutOfBounds,
                        format!("{} [{}, {}) in a {n}-token sentence", arg.role, arg.start, arg.end),
                    ));
                }
                if arg.start < prev_end {
                    return Err(violation(
                        Invariant::ArgumentOverlap,
                        format!("{} [{}, {})", arg.role, arg.start, arg.end),
                    ));
                }
                if arg.contains(frame.verb_index) {
                    return Err(violation(
                        Invariant::ArgumentCoversVerb,
                        format!("{} [{}, {}) covers verb {}", arg.role, arg.start, arg.end, frame.verb_index),
                    ));
                }
                prev_end = arg.end;
            }
        }
        Ok(())
    }

    fn validate_edges(&self) -> Result<(), AnnotationError> {
        let n = self.tokens.len();
        if self.dep_edges.len() != n {
            return Err(violation(
                Invariant::EdgeCount,
                format!("{} edges for {n} tokens", self.dep_edges.len()),
            ));
        }
        let mut seen = vec![false; n];
        let mut roots = 0;
        for edge in &self.dep_edges {
            let head_ok = match edge.head {
                Head::Root => true,
                Head::Token(h) => h < n,
            };
            if edge.dependent >= n || !head_ok {
                return Err(violation(
                    Invariant::EdgeOutOfBounds,
                    format!("edge {} -> {:?}", edge.dependent, edge.head),
                ));
            }
            if std::mem::replace(&mut seen[edge.dependent], true) {
                return Err(violation(
                    Invariant::DuplicateEdge,
                    format!("token {} has more than one edge", edge.dependent),
                ));
            }
            if edge.is_root() {
                roots += 1;
            }
        }
        if roots != 1 {
            return Err(violation(Invariant::RootCount, format!("found {roots} root edges")));
        }
        Ok(())
    }

    /// Serializes to the single-line interchange JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&WireSentence::from(self)).expect("annotation serializes")
    }
}

pub(crate) fn join_surfaces(tokens: &[Token]) -> String {
    let mut out = String::new();
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&t.surface);
    }
    out
}

/// Parses and validates one interchange object describing a summary sentence.
pub fn parse_annotation(json_text: &str) -> Result<AnnotatedSentence, AnnotationError> {
    parse_annotation_with(json_text, Validation::Sentence)
}

pub fn parse_annotation_with(
    json_text: &str,
    profile: Validation,
) -> Result<AnnotatedSentence, AnnotationError> {
    let value: serde_json::Value = serde_json::from_str(json_text)
        .map_err(|e| AnnotationError::MalformedJson(e.to_string()))?;
    from_value(value, profile)
}

/// Decodes an already-parsed JSON value (used for wrapped corpus records).
pub fn from_value(
    value: serde_json::Value,
    profile: Validation,
) -> Result<AnnotatedSentence, AnnotationError> {
    let wire: WireSentence = serde_json::from_value(value)
        .map_err(|e| AnnotationError::SchemaViolation(e.to_string()))?;
    let sentence = AnnotatedSentence::from(wire);
    sentence.validate(profile)?;
    Ok(sentence)
}

// Interchange layout. Entity spans and frame arguments are sorted by start
// on the way in so that serialization is canonical.

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct WireSentence {
    sentence_id: String,
    tokens: Vec<WireToken>,
    dep_edges: Vec<WireEdge>,
    ner: Vec<NerSpan>,
    srl: Vec<WireFrame>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireToken {
    surface: String,
    #[serde(default)]
    lemma: Option<String>,
    pos: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireEdge {
    dependent: usize,
    head: i64,
    label: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireFrame {
    verb_index: usize,
    args: Vec<SrlArgument>,
}

impl From<WireSentence> for AnnotatedSentence {
    fn from(w: WireSentence) -> Self {
        let tokens = w
            .tokens
            .into_iter()
            .enumerate()
            .map(|(index, t)| Token { index, surface: t.surface, lemma: t.lemma, pos: t.pos })
            .collect();
        let dep_edges = w
            .dep_edges
            .into_iter()
            .map(|e| DepEdge {
                dependent: e.dependent,
                // Negative heads other than -1 map to an index that fails the
                // bounds check.
                head: match e.head {
                    -1 => Head::Root,
                    h if h < 0 => Head::Token(usize::MAX),
                    h => Head::Token(h as usize),
                },
                label: e.label,
            })
            .collect();
        let mut ner_spans = w.ner;
        ner_spans.sort_by_key(|s| (s.start, s.end));
        let srl_frames = w
            .srl
            .into_iter()
            .map(|f| {
                let mut arguments = f.args;
                arguments.sort_by_key(|a| (a.start, a.end));
                SrlFrame { verb_index: f.verb_index, arguments }
            })
            .collect();
        AnnotatedSentence { sentence_id: w.sentence_id, tokens, dep_edges, ner_spans, srl_frames }
    }
}

impl From<&AnnotatedSentence> for WireSentence {
    fn from(s: &AnnotatedSentence) -> Self {
        WireSentence {
            sentence_id: s.sentence_id.clone(),
            tokens: s
                .tokens
                .iter()
                .map(|t| WireToken { surface: t.surface.clone(), lemma: t.lemma.clone(), pos: t.pos.clone() })
                .collect(),
            dep_edges: s
                .dep_edges
                .iter()
                .map(|e| WireEdge {
                    dependent: e.dependent,
                    head: match e.head {
                        Head::Root => -1,
                        Head::Token(h) => i64::try_from(h).unwrap_or(-2),
                    },
                    label: e.label.clone(),
                })
                .collect(),
            ner: s.ner_spans.clone(),
            srl: s
                .srl_frames
                .iter()
                .map(|f| WireFrame { verb_index: f.verb_index, args: f.arguments.clone() })
                .collect(),
        }
    }
}

impl Serialize for AnnotatedSentence {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        WireSentence::from(self).serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn minimal_object_parses() {
        let json = r#"{"sentence_id":"m","tokens":[{"surface":"Go","lemma":null,"pos":"VERB"}],
            "dep_edges":[{"dependent":0,"head":-1,"label":"root"}],"ner":[],"srl":[]}"#;
        let s = parse_annotation(json).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.root_verb().unwrap(), 0);
    }

    #[test]
    fn s1_fixture_shape() {
        let s = parse_annotation(&fixtures::s1().to_json()).unwrap();
        assert_eq!(s.text(), "stephen hawking announced the party in the morning");
        assert_eq!(s.ner_spans, vec![NerSpan { start: 0, end: 2, label: "PERSON".into() }]);
        assert_eq!(s.root_verb().unwrap(), 2);
        let frame = &s.srl_frames[0];
        assert_eq!(frame.verb_index, 2);
        let roles: Vec<_> = frame.arguments.iter().map(|a| (a.role.as_str(), a.start, a.end)).collect();
        assert_eq!(roles, vec![("ARG0", 0, 2), ("ARG1", 3, 5), ("ARGM-TMP", 5, 8)]);
    }

    #[test]
    fn s2_root_is_had() {
        let s = fixtures::s2();
        let root = s.root_verb().unwrap();
        assert_eq!(s.tokens[root].surface, "had");
    }

    #[test]
    fn out_of_bounds_frame_index() {
        let mut v: serde_json::Value = serde_json::from_str(&fixtures::s1().to_json()).unwrap();
        v["srl"][0]["args"][0]["end"] = 99.into();
        let err = parse_annotation(&v.to_string()).unwrap_err();
        assert!(matches!(
            err,
            AnnotationError::InvariantViolation { invariant: Invariant::ArgumentOutOfBounds, .. }
        ));
    }

    #[test]
    fn error_stages_are_distinguished() {
        assert!(matches!(parse_annotation("{\"sentence_id\":"), Err(AnnotationError::MalformedJson(_))));
        assert!(matches!(parse_annotation("{\"sentence_id\":\"x\"}"), Err(AnnotationError::SchemaViolation(_))));
        let mut v: serde_json::Value = serde_json::from_str(&fixtures::s1().to_json()).unwrap();
        v["extra"] = 1.into();
        assert!(matches!(parse_annotation(&v.to_string()), Err(AnnotationError::SchemaViolation(_))));
    }

    #[test]
    fn overlapping_entities_rejected() {
        let mut v: serde_json::Value = serde_json::from_str(&fixtures::s1().to_json()).unwrap();
        v["ner"] = serde_json::json!([
            {"start":0,"end":2,"label":"PERSON"},
            {"start":1,"end":3,"label":"ORG"}
        ]);
        let err = parse_annotation(&v.to_string()).unwrap_err();
        assert!(matches!(err, AnnotationError::InvariantViolation { invariant: Invariant::NerOverlap, .. }));
    }

    #[test]
    fn missing_root_rejected_and_no_root_reported() {
        let mut v: serde_json::Value = serde_json::from_str(&fixtures::s1().to_json()).unwrap();
        v["dep_edges"][2]["label"] = "dep".into();
        let err = parse_annotation(&v.to_string()).unwrap_err();
        assert!(matches!(err, AnnotationError::InvariantViolation { invariant: Invariant::RootCount, .. }));

        let mut s = fixtures::s1();
        s.dep_edges[2].label = "dep".into();
        assert_eq!(s.root_verb(), Err(AnnotationError::NoRoot));
    }

    #[test]
    fn paragraph_profile_allows_missing_parse() {
        let mut v: serde_json::Value = serde_json::from_str(&fixtures::s1().to_json()).unwrap();
        v["dep_edges"] = serde_json::json!([]);
        v["srl"] = serde_json::json!([]);
        assert!(parse_annotation(&v.to_string()).is_err());
        assert!(parse_annotation_with(&v.to_string(), Validation::Paragraph).is_ok());
    }

    #[test]
    fn entity_coverage() {
        let s = fixtures::s1();
        let full = s.entity_labels_in_span(0, 2);
        assert_eq!(full.len(), 1);
        assert_eq!(full[0].span.label, "PERSON");
        assert_eq!(full[0].coverage, 1.0);
        assert!(s.entity_labels_in_span(3, 5).is_empty());
        let partial = s.entity_labels_in_span(0, 3);
        assert_eq!(partial.len(), 1);
        assert!((partial[0].coverage - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn span_heads_finds_syntactic_head() {
        let s = fixtures::s2();
        assert_eq!(s.span_heads(0, 5), vec![4]);
    }
}
