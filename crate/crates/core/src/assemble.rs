//! Turning a sentence plus a chosen answer span into question tokens.

use serde::{Deserialize, Serialize};

use crate::annotation::{AnnotatedSentence, SrlArgument};
use crate::morph::VerbDecomposition;
use crate::wh::{is_wh_word, WhPhrase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    InSitu,
    SubjectInPlace,
    WhFronted,
    AuxFronted,
    DoSupport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionDraft {
    pub tokens: Vec<String>,
    pub answer_role: String,
    pub mode_trace: Vec<Step>,
}

impl QuestionDraft {
    pub fn text(&self) -> String {
        self.tokens.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssembleError {
    #[error("answer span [{start}, {end}) covers the predicate")]
    AnswerIsVerb { start: usize, end: usize },
    #[error("answer text survives in the question")]
    AnswerEchoed,
    #[error("nothing left after post-editing")]
    EmptyAfterEdit,
}

const SUBJECT_LABELS: &[&str] = &["nsubj", "nsubjpass", "nsubj:pass", "csubj", "csubjpass"];

const FUNCTION_WORDS: &[&str] = &[
    "a", "an", "the", "of", "in", "on", "at", "to", "for", "by", "with", "from", "and", "or",
    "did", "does", "do", "is", "was", "are", "were", "has", "have", "had",
];

const DANGLING: &[&str] = &[
    "after", "before", "while", "during", "since", "until", "because", "although", "though",
    "when", "if", "as", "in", "on", "at", "to", "for", "by", "with", "from", "of", "into",
    "onto", "over", "under", "about", "against", "between", "through", "and", "or", "but", "that",
];

const AUXILIARIES: &[&str] = &[
    "do", "does", "did", "is", "was", "are", "were", "am", "be", "been", "has", "have", "had",
    "can", "could", "will", "would", "shall", "should", "may", "might", "must",
];

pub fn is_auxiliary(token: &str) -> bool {
    AUXILIARIES.contains(&token)
}

/// Naive question: the answer span is swapped for the wh-phrase in place.
pub fn assemble_in_situ(
    s: &AnnotatedSentence,
    answer: &SrlArgument,
    wh: &WhPhrase,
) -> Result<QuestionDraft, AssembleError> {
    finish(s, answer, splice_in_place(s, answer, wh), vec![Step::InSitu])
}

/// Fronted question. Subject answers are replaced in place; otherwise the
/// wh-phrase moves to the front, followed by the auxiliary when `decomp` is
/// given.
pub fn wh_move(
    s: &AnnotatedSentence,
    verb_index: usize,
    answer: &SrlArgument,
    wh: &WhPhrase,
    decomp: Option<&VerbDecomposition>,
) -> Result<QuestionDraft, AssembleError> {
    let (raw, trace) = wh_move_raw(s, verb_index, answer, wh, decomp)?;
    finish(s, answer, raw, trace)
}

pub(crate) fn wh_move_raw(
    s: &AnnotatedSentence,
    verb_index: usize,
    answer: &SrlArgument,
    wh: &WhPhrase,
    decomp: Option<&VerbDecomposition>,
) -> Result<(Vec<String>, Vec<Step>), AssembleError> {
    let covers = |i: usize| answer.contains(i);
    if covers(verb_index) || decomp.and_then(|d| d.fronted_index).is_some_and(covers) {
        return Err(AssembleError::AnswerIsVerb { start: answer.start, end: answer.end });
    }

    if is_subject(s, verb_index, answer) {
        return Ok((splice_in_place(s, answer, wh), vec![Step::SubjectInPlace]));
    }

    let mut out = wh.tokens.clone();
    let mut trace = vec![Step::WhFronted];
    let Some(d) = decomp else {
        out.extend(outside(s, answer).map(|i| s.tokens[i].surface.clone()));
        out.push("?".into());
        return Ok((out, trace));
    };

    out.extend(d.aux_tokens.iter().cloned());
    trace.push(if d.fronted_index.is_some() { Step::AuxFronted } else { Step::DoSupport });
    for i in outside(s, answer) {
        if Some(i) == d.fronted_index {
            continue;
        }
        if i == verb_index && d.fronted_index.is_none() {
            out.extend(d.main_tokens.iter().cloned());
        } else {
            out.push(s.tokens[i].surface.clone());
        }
    }
    out.push("?".into());
    Ok((out, trace))
}

fn outside<'a>(s: &'a AnnotatedSentence, answer: &'a SrlArgument) -> impl Iterator<Item = usize> + 'a {
    (0..s.tokens.len()).filter(move |&i| !answer.contains(i))
}

fn splice_in_place(s: &AnnotatedSentence, answer: &SrlArgument, wh: &WhPhrase) -> Vec<String> {
    let mut out: Vec<String> = s.tokens[..answer.start].iter().map(|t| t.surface.clone()).collect();
    out.extend(wh.tokens.iter().cloned());
    out.extend(s.tokens[answer.end..].iter().map(|t| t.surface.clone()));
    out.push("?".into());
    out
}

/// The span holds the verb's subject, or in the absence of a subject edge is
/// an agent that precedes the verb.
pub fn is_subject(s: &AnnotatedSentence, verb_index: usize, answer: &SrlArgument) -> bool {
    let mut subjects = s
        .dependents_of(verb_index)
        .filter(|e| SUBJECT_LABELS.iter().any(|l| e.label.eq_ignore_ascii_case(l)))
        .map(|e| e.dependent)
        .peekable();
    if subjects.peek().is_some() {
        return subjects.any(|i| answer.contains(i));
    }
    answer.role.eq_ignore_ascii_case("ARG0") && answer.end <= verb_index
}

fn finish(
    s: &AnnotatedSentence,
    answer: &SrlArgument,
    raw: Vec<String>,
    trace: Vec<Step>,
) -> Result<QuestionDraft, AssembleError> {
    let tokens = post_edit(raw)?;
    let answer_tokens: Vec<&str> = s.tokens[answer.start..answer.end].iter().map(|t| t.surface.as_str()).collect();
    if echoes(&tokens, &answer_tokens) {
        return Err(AssembleError::AnswerEchoed);
    }
    Ok(QuestionDraft { tokens, answer_role: answer.role.clone(), mode_trace: trace })
}

/// True when the answer tokens, normalized as `post_edit` would, occur
/// contiguously in `question`.
pub fn echoes<Q: AsRef<str>, A: AsRef<str>>(question: &[Q], answer: &[A]) -> bool {
    let answer: Vec<String> = answer
        .iter()
        .map(|a| a.as_ref().to_lowercase().replace('?', ""))
        .filter(|a| !a.is_empty())
        .collect();
    if answer.is_empty() || answer.len() > question.len() {
        return false;
    }
    question.windows(answer.len()).any(|w| w.iter().zip(&answer).all(|(q, a)| q.as_ref() == a))
}

fn is_trailing_punct(token: &str) -> bool {
    !token.is_empty() && token.chars().all(|c| matches!(c, '.' | '!' | ';' | ',' | ':'))
}

/// Normalize spliced tokens: lowercase, drop stray "?" and final
/// punctuation, collapse doubled function words, remove one dangling
/// function word at the end, then close with "?".
pub fn post_edit<S: AsRef<str>>(tokens: impl IntoIterator<Item = S>) -> Result<Vec<String>, AssembleError> {
    let mut out: Vec<String> = Vec::new();
    for token in tokens {
        let t: String = token.as_ref().to_lowercase().chars().filter(|&c| c != '?').collect();
        if t.is_empty() {
            continue;
        }
        if t == "," && out.last().is_some_and(|p| is_wh_word(p) || is_auxiliary(p)) {
            continue;
        }
        if out.last() == Some(&t) && FUNCTION_WORDS.contains(&t.as_str()) {
            continue;
        }
        out.push(t);
    }
    while out.last().is_some_and(|t| is_trailing_punct(t)) {
        out.pop();
    }
    if out.len() > 1 && out.last().is_some_and(|t| DANGLING.contains(&t.as_str())) {
        out.pop();
        while out.last().is_some_and(|t| is_trailing_punct(t)) {
            out.pop();
        }
    }
    if out.is_empty() {
        return Err(AssembleError::EmptyAfterEdit);
    }
    out.push("?".into());
    Ok(out)
}
