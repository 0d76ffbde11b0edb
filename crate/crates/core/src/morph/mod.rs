//! Verb decomposition for question formation: reduce the main verb to its
//! base form and decide which auxiliary to front ("announced" becomes
//! "did ... announce", "has had" fronts "has").

mod irregular;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::annotation::AnnotatedSentence;

pub(crate) use irregular::{BE_FORMS, MODALS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Tense {
    Past,
    #[serde(rename = "PRES_3SG")]
    Pres3sg,
    PresOther,
    AlreadyDecomposed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbDecomposition {
    /// Auxiliaries to place after the wh-phrase.
    pub aux_tokens: Vec<String>,
    /// What remains of the verb group once the auxiliary is fronted.
    pub main_tokens: Vec<String>,
    pub tense: Tense,
    pub verb_index: usize,
    /// Sentence index of the auxiliary copied to the front, if it came from
    /// the sentence. `None` means do-support was synthesized.
    pub fronted_index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MorphError {
    #[error("token {index} ({pos}) is not a verb")]
    NotAVerb { index: usize, pos: String },
}

const AUX_LABELS: &[&str] = &["aux", "auxpass", "aux:pass", "cop"];
const SUBJECT_LABELS: &[&str] = &["nsubj", "nsubjpass", "nsubj:pass", "csubj"];

// Past forms in "-eed" whose base ends in "ee".
const EE_PAST: &[&str] = &["agreed", "disagreed", "freed", "decreed", "guaranteed", "refereed", "pureed", "emceed"];

// Bases that happen to end in "-ed".
const NO_STRIP: &[&str] = &["embed", "imbed", "shed", "shred", "sled", "wed", "bed"];

const WORD_EXCEPTIONS: &[(&str, &str)] = &[
    ("focuses", "focus"),
    ("focused", "focus"),
    ("focussed", "focus"),
    ("biased", "bias"),
    ("biases", "bias"),
    ("buses", "bus"),
    ("bused", "bus"),
    ("panicked", "panic"),
    ("mimicked", "mimic"),
    ("trafficked", "traffic"),
    ("frolicked", "frolic"),
    ("picnicked", "picnic"),
];

/// Regular verbs spelled like an irregular past ("found" a company, "saw"
/// wood). Their inflections keep the regular base, so for these words
/// `base_form` is not idempotent: "founded" gives "found", "found" gives "find".
pub const REGULAR_HOMOGRAPHS: &[&str] = &["found", "fell", "saw", "bound", "ground", "wound", "bore", "smelt"];

// Stems that take a restored "e" where the spelling rules would not add one.
const E_BASES: &[&str] = &[
    "create", "recreate", "procreate", "unite", "reunite", "invite", "cite", "recite", "excite",
    "incite", "ignite", "expedite", "compete", "complete", "delete", "deplete", "secrete",
    "excrete", "guide", "waste", "paste", "taste", "haste", "scale", "exhale", "inhale", "impale",
    "postpone", "condone", "enthrone", "intervene", "convene", "contravene", "interfere",
    "adhere", "persevere", "revere", "cohere", "snore",
];

// Stems the rules would otherwise change.
const KEEP_STEMS: &[&str] = &[
    "pivot", "pilot", "ballot", "develop", "redevelop", "envelop", "gallop", "wallop", "gossip",
    "blossom", "ransom", "pencil", "stencil", "instil", "fulfil", "distil", "imperil", "annul",
    "iron", "debut", "add", "err", "purr", "butt", "putt", "egg", "ebb", "boycott", "murmur",
];

// British double-l spellings and similar that do undouble.
const UNDOUBLE_STEMS: &[&str] = &[
    "controll", "patroll", "compell", "propell", "expell", "excell", "rebell", "cancell",
    "travell", "labell", "modell", "levell", "signall", "totall", "fuell", "diall", "counsell",
    "quarrell", "quizz",
];

const OR_E_ENDINGS: &[&str] = &["plor", "stor", "gnor", "scor", "ador"];

/// Irregular-table overrides layered over the compiled-in list.
#[derive(Debug, Clone, Copy, Default)]
pub struct VerbLexicon<'a> {
    overrides: Option<&'a BTreeMap<String, String>>,
}

impl<'a> VerbLexicon<'a> {
    pub fn with_overrides(overrides: &'a BTreeMap<String, String>) -> Self {
        VerbLexicon { overrides: (!overrides.is_empty()).then_some(overrides) }
    }

    pub fn base_form(&self, surface: &str, lemma: Option<&str>) -> String {
        if let Some(lemma) = lemma.filter(|l| !l.trim().is_empty()) {
            return lemma.to_lowercase();
        }
        let word = surface.to_lowercase();
        if let Some(base) = self.lookup(&word) {
            return base;
        }
        // Repeat the spelling rules until nothing changes; every rule
        // shortens the word. A stem that is itself an irregular form resolves
        // through the table, except for the homographs.
        let mut current = word;
        loop {
            match strip_suffix(&current) {
                Some(next) if next != current && !next.is_empty() => {
                    if !REGULAR_HOMOGRAPHS.contains(&next.as_str()) {
                        if let Some(base) = self.lookup(&next) {
                            return base;
                        }
                    }
                    current = next;
                }
                _ => return current,
            }
        }
    }

    fn lookup(&self, word: &str) -> Option<String> {
        if let Some(base) = self.overrides.and_then(|o| o.get(word)) {
            return Some(base.to_lowercase());
        }
        if let Some(base) = irregular::table().to_base.get(word) {
            return Some(base.to_string());
        }
        WORD_EXCEPTIONS.iter().find(|(w, _)| *w == word).map(|(_, b)| b.to_string())
    }

    fn is_irregular_past(&self, word: &str, base: &str) -> bool {
        word != base
            && (self.overrides.is_some_and(|o| o.contains_key(word))
                || irregular::table().to_base.contains_key(word))
            && !irregular::table().third_singular.contains_key(word)
    }

    pub fn decomp_verb(
        &self,
        s: &AnnotatedSentence,
        verb_index: usize,
    ) -> Result<VerbDecomposition, MorphError> {
        let verb = &s.tokens[verb_index];
        if !verb.is_verbal() {
            return Err(MorphError::NotAVerb { index: verb_index, pos: verb.pos.clone() });
        }

        let auxiliaries: Vec<usize> = s
            .dependents_of(verb_index)
            .filter(|e| AUX_LABELS.iter().any(|l| e.label.eq_ignore_ascii_case(l)))
            .map(|e| e.dependent)
            .collect();
        if let Some((&first, rest)) = auxiliaries.split_first() {
            let mut main_tokens: Vec<String> =
                rest.iter().map(|&i| s.tokens[i].surface.clone()).collect();
            main_tokens.push(verb.surface.clone());
            return Ok(VerbDecomposition {
                aux_tokens: vec![s.tokens[first].surface.clone()],
                main_tokens,
                tense: Tense::AlreadyDecomposed,
                verb_index,
                fronted_index: Some(first),
            });
        }

        let lower = verb.lower();
        if BE_FORMS.contains(&lower.as_str()) || MODALS.contains(&lower.as_str()) {
            return Ok(VerbDecomposition {
                aux_tokens: vec![verb.surface.clone()],
                main_tokens: Vec::new(),
                tense: Tense::AlreadyDecomposed,
                verb_index,
                fronted_index: Some(verb_index),
            });
        }

        let base = self.base_form(&verb.surface, verb.lemma.as_deref());
        let tense = self.tense_of(s, verb_index, &lower, &base);
        let aux = match tense {
            Tense::Past => "did",
            Tense::Pres3sg => "does",
            _ => "do",
        };
        Ok(VerbDecomposition {
            aux_tokens: vec![aux.to_string()],
            main_tokens: vec![base],
            tense,
            verb_index,
            fronted_index: None,
        })
    }

    fn tense_of(&self, s: &AnnotatedSentence, verb_index: usize, lower: &str, base: &str) -> Tense {
        let pos = s.tokens[verb_index].pos.to_ascii_uppercase();
        match pos.as_str() {
            "VBD" | "VBN" => return Tense::Past,
            "VBZ" => return Tense::Pres3sg,
            "VBP" => return Tense::PresOther,
            _ => {}
        }
        if lower == base {
            if subject_is_third_singular(s, verb_index) {
                // A bare form after a singular subject can only be a past
                // that shares its spelling with the base ("she cut").
                if irregular::table().same_past.contains(&base) {
                    return Tense::Past;
                }
                return Tense::Pres3sg;
            }
            return Tense::PresOther;
        }
        if irregular::table().third_singular.contains_key(lower) {
            return Tense::Pres3sg;
        }
        if self.is_irregular_past(lower, base) {
            return Tense::Past;
        }
        if lower.ends_with('s') {
            Tense::Pres3sg
        } else {
            Tense::Past
        }
    }
}

fn subject_is_third_singular(s: &AnnotatedSentence, verb_index: usize) -> bool {
    let Some(edge) = s
        .dependents_of(verb_index)
        .find(|e| SUBJECT_LABELS.iter().any(|l| e.label.eq_ignore_ascii_case(l)))
    else {
        return false;
    };
    let tok = &s.tokens[edge.dependent];
    let lower = tok.lower();
    match lower.as_str() {
        "he" | "she" | "it" | "this" | "that" => return true,
        "i" | "you" | "we" | "they" | "these" | "those" => return false,
        _ => {}
    }
    match tok.pos.to_ascii_uppercase().as_str() {
        "NN" | "NNP" => true,
        "NOUN" | "PROPN" => !lower.ends_with('s') || lower.ends_with("ss"),
        _ => false,
    }
}

/// Base form of a verb token; the annotator's lemma wins when present.
pub fn base_form(surface: &str, lemma: Option<&str>) -> String {
    VerbLexicon::default().base_form(surface, lemma)
}

pub fn decomp_verb(s: &AnnotatedSentence, verb_index: usize) -> Result<VerbDecomposition, MorphError> {
    VerbLexicon::default().decomp_verb(s, verb_index)
}

/// Number of entries in the compiled irregular table.
pub fn irregular_count() -> usize {
    irregular::len()
}

fn strip_suffix(word: &str) -> Option<String> {
    strip_ed(word).or_else(|| strip_s(word))
}

fn strip_s(word: &str) -> Option<String> {
    if !word.ends_with('s') || word.len() < 3 || !word.is_ascii() {
        return None;
    }
    if ["ss", "us", "is", "as"].iter().any(|e| word.ends_with(e)) {
        return None;
    }
    let n = word.len();
    if word.ends_with("ies") {
        return Some(if n == 4 { word[..3].to_string() } else { format!("{}y", &word[..n - 3]) });
    }
    if ["sses", "shes", "ches", "xes", "zzes", "oes"].iter().any(|e| word.ends_with(e)) {
        return Some(word[..n - 2].to_string());
    }
    Some(word[..n - 1].to_string())
}

fn strip_ed(word: &str) -> Option<String> {
    if !word.ends_with("ed") || word.len() < 4 || !word.is_ascii() || NO_STRIP.contains(&word) {
        return None;
    }
    let n = word.len();
    if word.ends_with("ied") {
        return Some(if n == 4 { word[..3].to_string() } else { format!("{}y", &word[..n - 3]) });
    }
    if word.ends_with("eed") {
        return EE_PAST.contains(&word).then(|| word[..n - 1].to_string());
    }
    if word.ends_with("ued") {
        return Some(word[..n - 1].to_string());
    }
    if word.ends_with("yed") || word.ends_with("oed") {
        return Some(word[..n - 2].to_string());
    }
    let stem = &word[..n - 2];
    if stem.len() < 2 {
        return None;
    }
    Some(restore_stem(stem))
}

fn is_vowel(c: u8) -> bool {
    matches!(c, b'a' | b'e' | b'i' | b'o' | b'u')
}

/// Vowel test at position `i`, treating "y" between consonants as a vowel
/// and the "u" of "qu" as a consonant.
fn vowel_at(b: &[u8], i: usize) -> bool {
    let c = b[i];
    if c == b'u' && i > 0 && b[i - 1] == b'q' {
        return false;
    }
    if c == b'y' {
        return i > 0 && !vowel_at(b, i - 1);
    }
    is_vowel(c)
}

/// Undo doubling or restore a silent "e" on a stem left by "-ed" removal.
fn restore_stem(stem: &str) -> String {
    if KEEP_STEMS.contains(&stem) {
        return stem.to_string();
    }
    let with_e = format!("{stem}e");
    if E_BASES.contains(&with_e.as_str()) {
        return with_e;
    }
    if UNDOUBLE_STEMS.contains(&stem) {
        return stem[..stem.len() - 1].to_string();
    }

    let b = stem.as_bytes();
    let n = b.len();
    let last = b[n - 1];
    let prev = b[n - 2];

    if last == prev && !is_vowel(last) {
        if matches!(last, b'l' | b's' | b'z' | b'f') {
            return stem.to_string();
        }
        return stem[..n - 1].to_string();
    }

    // consonant-vowel-consonant ending with a single vowel before `last`
    let single_vowel = vowel_at(b, n - 2) && (n < 3 || !vowel_at(b, n - 3));
    let vowel = prev;
    let keep = stem.to_string();

    let add_e = match last {
        b'c' | b'v' => true,
        b's' => true,
        b'z' => vowel_at(b, n - 2),
        b'g' => {
            matches!(prev, b'r' | b'd' | b'l')
                || (prev == b'n' && n > 4 && matches!(b[n - 3], b'a' | b'e'))
        }
        b'l' => {
            if !vowel_at(b, n - 2) {
                !matches!(prev, b'l' | b'r' | b'w')
            } else {
                single_vowel && matches!(vowel, b'i' | b'u')
            }
        }
        b'r' => {
            if !single_vowel {
                false
            } else {
                match vowel {
                    b'i' | b'u' | b'a' => true,
                    b'o' => OR_E_ENDINGS.iter().any(|e| stem.ends_with(e)),
                    _ => false,
                }
            }
        }
        b't' => match vowel {
            b'a' => n < 3 || !vowel_at(b, n - 3) || matches!(b[n - 3], b'i' | b'u'),
            b'o' | b'u' => single_vowel,
            _ => false,
        },
        b'd' => single_vowel || stem.ends_with("uad"),
        b'b' | b'k' | b'p' | b'm' => single_vowel,
        b'n' => {
            single_vowel
                && match vowel {
                    b'i' => true,
                    b'a' | b'o' | b'u' => n <= 5,
                    _ => false,
                }
        }
        _ => false,
    };
    if add_e {
        with_e
    } else {
        keep
    }
}
