//! Question-type distribution, lexical overlap, and static lint checks.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::assemble::{echoes, is_auxiliary};
use crate::dataset::{QaPair, QgTriple, SEP};
use crate::morph::base_form;
use crate::wh::is_wh_word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QuestionType {
    What,
    When,
    Where,
    Who,
    Why,
    How,
    Other,
}

impl QuestionType {
    pub const ALL: [QuestionType; 7] = [
        QuestionType::What,
        QuestionType::When,
        QuestionType::Where,
        QuestionType::Who,
        QuestionType::Why,
        QuestionType::How,
        QuestionType::Other,
    ];

    fn of_token(token: &str) -> Option<QuestionType> {
        Some(match token {
            "who" | "whom" | "whose" => QuestionType::Who,
            "when" => QuestionType::When,
            "where" => QuestionType::Where,
            "why" => QuestionType::Why,
            "how" => QuestionType::How,
            "what" | "which" => QuestionType::What,
            _ => return None,
        })
    }
}

fn question_tokens(question: &str) -> impl Iterator<Item = String> + '_ {
    question
        .split_whitespace()
        .map(|t| t.trim_end_matches('?').to_lowercase())
        .filter(|t| !t.is_empty())
}

/// Type of the first wh-token anywhere in the question.
pub fn classify_question(question: &str) -> QuestionType {
    question_tokens(question).find_map(|t| QuestionType::of_token(&t)).unwrap_or(QuestionType::Other)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeDistribution {
    pub counts: BTreeMap<QuestionType, usize>,
    pub total: usize,
}

impl Default for TypeDistribution {
    fn default() -> Self {
        TypeDistribution { counts: QuestionType::ALL.iter().map(|&t| (t, 0)).collect(), total: 0 }
    }
}

impl TypeDistribution {
    pub fn add(&mut self, question: &str) {
        *self.counts.entry(classify_question(question)).or_default() += 1;
        self.total += 1;
    }

    pub fn merge(mut self, other: TypeDistribution) -> TypeDistribution {
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        self.total += other.total;
        self
    }

    pub fn get(&self, t: QuestionType) -> usize {
        self.counts.get(&t).copied().unwrap_or(0)
    }
}

pub fn question_type_distribution<S: AsRef<str>>(questions: &[S]) -> TypeDistribution {
    let mut d = TypeDistribution::default();
    for q in questions {
        d.add(q.as_ref());
    }
    d
}

fn normalized(token: &str) -> String {
    base_form(token, None)
}

/// Share of the question's content tokens found in the passage. Tokens are
/// compared lowercased and reduced to base form, so "announce" matches
/// "announced". Wh-words, do/does/did and "?" are not content.
pub fn lexical_overlap(question: &str, passage: &str) -> f64 {
    let content: HashSet<String> = question_tokens(question)
        .filter(|t| !is_wh_word(t) && !matches!(t.as_str(), "do" | "does" | "did"))
        .map(|t| normalized(&t))
        .collect();
    if content.is_empty() {
        return 1.0;
    }
    let passage: HashSet<String> = passage.split_whitespace().map(normalized).collect();
    content.iter().filter(|t| passage.contains(*t)).count() as f64 / content.len() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LintCode {
    NoWhWord,
    MissingAux,
    AnswerEchoed,
    SepInText,
    MismatchWhNer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LintIssue {
    pub id: String,
    pub code: LintCode,
}

/// What lint needs to know about a question, from either record kind.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LintInput {
    pub id: String,
    pub question: String,
    pub answer: String,
    pub passage: String,
    /// Length of the leading wh-phrase, when known.
    pub wh_len: Option<usize>,
    pub subject_question: Option<bool>,
    /// Entity labels on the answer; `None` when no NER is available.
    pub answer_entities: Option<Vec<String>>,
}

impl From<&QgTriple> for LintInput {
    fn from(t: &QgTriple) -> Self {
        LintInput {
            id: t.meta.id.clone(),
            question: t.question.clone(),
            answer: t.answer.clone(),
            passage: t.passage.clone(),
            wh_len: Some(t.meta.wh_phrase.split_whitespace().count()),
            subject_question: Some(t.meta.subject_question),
            answer_entities: Some(t.meta.answer_entities.clone()),
        }
    }
}

impl From<&QaPair> for LintInput {
    fn from(p: &QaPair) -> Self {
        LintInput {
            id: p.pair_id.clone(),
            question: p.question_text.clone(),
            answer: p.answer_text.clone(),
            passage: p.paragraph_text.clone(),
            wh_len: None,
            subject_question: None,
            answer_entities: Some(vec![p.answer_label.clone()]),
        }
    }
}

/// Wh-phrase length guessed from the surface when not recorded.
fn guess_wh_len(tokens: &[String]) -> Option<usize> {
    match tokens.first().map(String::as_str)? {
        "how" if matches!(tokens.get(1).map(String::as_str), Some("many" | "much")) => Some(2),
        "which" | "whose" => None,
        t if is_wh_word(t) => Some(1),
        _ => None,
    }
}

pub fn lint_question(input: &LintInput) -> Vec<LintIssue> {
    let tokens: Vec<String> = input.question.split_whitespace().map(str::to_lowercase).collect();
    let words: Vec<String> = question_tokens(&input.question).collect();
    let mut codes = Vec::new();

    if !words.iter().any(|t| is_wh_word(t)) {
        codes.push(LintCode::NoWhWord);
    }

    let fronted = words.first().is_some_and(|t| is_wh_word(t));
    if fronted {
        let subject = match input.subject_question {
            Some(s) => s,
            // Without a record of the subject, "who" and "which" questions
            // are given the benefit of the doubt.
            None => matches!(words[0].as_str(), "who" | "which" | "whose"),
        };
        let wh_len = input.wh_len.or_else(|| guess_wh_len(&words));
        if let (false, Some(n)) = (subject, wh_len) {
            if !words.get(n).is_some_and(|t| is_auxiliary(t)) {
                codes.push(LintCode::MissingAux);
            }
        }
    }

    let answer: Vec<&str> = input.answer.split_whitespace().collect();
    if echoes(&tokens, &answer) {
        codes.push(LintCode::AnswerEchoed);
    }

    if input.passage.contains(SEP) || input.answer.contains(SEP) {
        codes.push(LintCode::SepInText);
    }

    if let Some(labels) = &input.answer_entities {
        let asks_who = words.iter().find(|t| is_wh_word(t)).is_some_and(|t| matches!(t.as_str(), "who" | "whom" | "whose"));
        let person = labels.iter().any(|l| matches!(l.to_ascii_uppercase().as_str(), "PERSON" | "PER"));
        if asks_who && !person {
            codes.push(LintCode::MismatchWhNer);
        }
    }

    codes.into_iter().map(|code| LintIssue { id: input.id.clone(), code }).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub distribution: BTreeMap<QuestionType, usize>,
    pub total: usize,
    pub mean_overlap: f64,
    pub lint: Vec<LintIssue>,
}

impl StatsReport {
    pub fn build(records: &[LintInput]) -> Self {
        let mut distribution = TypeDistribution::default();
        let mut overlap_sum = 0.0;
        let mut lint = Vec::new();
        for r in records {
            distribution.add(&r.question);
            overlap_sum += lexical_overlap(&r.question, &r.passage);
            lint.extend(lint_question(r));
        }
        let mean_overlap = if records.is_empty() { 0.0 } else { overlap_sum / records.len() as f64 };
        StatsReport { distribution: distribution.counts, total: distribution.total, mean_overlap, lint }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn distribution_examples() {
        let d = question_type_distribution(&["who announced x ?", "what did y ?", "what is z ?"]);
        assert_eq!((d.get(QuestionType::Who), d.get(QuestionType::What), d.total), (1, 2, 3));
        let d = question_type_distribution(&["which nba player signed ?"]);
        assert_eq!(d.get(QuestionType::What), 1);
        let d = question_type_distribution::<&str>(&[]);
        assert_eq!(d.total, 0);
        assert!(d.counts.values().all(|&c| c == 0));
    }

    #[test]
    fn overlap_examples() {
        let q = "what did stephen hawking announce in the morning ?";
        assert_eq!(lexical_overlap(q, &fixtures::s1().text()), 1.0);
        let article = "stephen hawking announced the party in the evening";
        assert_eq!(lexical_overlap(q, article), 5.0 / 6.0);
        assert_eq!(lexical_overlap("what is red ?", "blue sky"), 0.0);
    }

    fn input(q: &str, a: &str, entities: Option<&[&str]>) -> LintInput {
        LintInput {
            id: "x".into(),
            question: q.into(),
            answer: a.into(),
            passage: "p".into(),
            answer_entities: entities.map(|e| e.iter().map(|s| s.to_string()).collect()),
            ..Default::default()
        }
    }

    #[test]
    fn lint_examples() {
        assert!(lint_question(&input("who announced the party in the morning ?", "stephen hawking", Some(&["PERSON"]))).is_empty());
        assert!(lint_question(&input("what have sold five cars in the uk this year ?", "Surrey Motors", None)).is_empty());
        let codes: Vec<LintCode> = lint_question(&input("stephen hawking announced the party ?", "x", None))
            .into_iter()
            .map(|i| i.code)
            .collect();
        assert_eq!(codes, [LintCode::NoWhWord]);
    }

    #[test]
    fn lint_flags() {
        let codes = |i: &LintInput| lint_question(i).into_iter().map(|i| i.code).collect::<Vec<_>>();
        assert_eq!(codes(&input("what stephen hawking announced ?", "the party", None)), [LintCode::MissingAux]);
        assert_eq!(codes(&input("who announced the party ?", "the party", None)), [LintCode::AnswerEchoed]);
        assert_eq!(codes(&input("who won ?", "u2", Some(&["ORG"]))), [LintCode::MismatchWhNer]);
        let mut sep = input("who won ?", "bono", None);
        sep.passage = "a <SEP> b".into();
        assert_eq!(codes(&sep), [LintCode::SepInText]);
    }
}
