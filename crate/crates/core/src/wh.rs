//! Choosing the interrogative phrase for an SRL argument.
//!
//! Modifier roles map straight to a wh-word. Core arguments look at the
//! entities that cover the span and pick the most specific question word
//! they license. With the NER-Wh refinement on, an entity headed by a
//! descriptor ("nba player michael jordan") becomes "which nba player".

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::annotation::{AnnotatedSentence, SrlArgument};
use crate::engine::HeuristicConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WhKind {
    Who,
    What,
    When,
    Where,
    Why,
    How,
    HowMany,
    HowMuch,
    WhichX,
}

impl WhKind {
    /// Fixed surface for every kind except `WhichX`.
    pub fn base_tokens(self) -> &'static [&'static str] {
        match self {
            WhKind::Who => &["who"],
            WhKind::What => &["what"],
            WhKind::When => &["when"],
            WhKind::Where => &["where"],
            WhKind::Why => &["why"],
            WhKind::How => &["how"],
            WhKind::HowMany => &["how", "many"],
            WhKind::HowMuch => &["how", "much"],
            WhKind::WhichX => &["which"],
        }
    }

    // Lower is more specific; used to pick among several covering entities.
    fn precedence(self) -> u8 {
        match self {
            WhKind::Who => 0,
            WhKind::When => 1,
            WhKind::HowMuch => 2,
            WhKind::HowMany => 3,
            WhKind::Where => 4,
            WhKind::Why => 5,
            WhKind::How => 6,
            WhKind::WhichX => 7,
            WhKind::What => 8,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            WhKind::Who => "WHO",
            WhKind::What => "WHAT",
            WhKind::When => "WHEN",
            WhKind::Where => "WHERE",
            WhKind::Why => "WHY",
            WhKind::How => "HOW",
            WhKind::HowMany => "HOW_MANY",
            WhKind::HowMuch => "HOW_MUCH",
            WhKind::WhichX => "WHICH_X",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhPhrase {
    pub tokens: Vec<String>,
    pub kind: WhKind,
}

impl WhPhrase {
    pub fn of_kind(kind: WhKind) -> Self {
        WhPhrase { tokens: kind.base_tokens().iter().map(|t| t.to_string()).collect(), kind }
    }

    pub fn text(&self) -> String {
        self.tokens.join(" ")
    }
}

/// First tokens a wh-phrase may start with.
pub const WH_WORDS: &[&str] = &["who", "what", "when", "where", "why", "how", "which", "whose", "whom"];

pub fn is_wh_word(token: &str) -> bool {
    WH_WORDS.contains(&token)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WhError {
    #[error("role {0} yields no question")]
    NoWhWord(String),
}

/// Replacement entries layered over the compiled-in table.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WhOverrides {
    /// Role (e.g. `ARGM-PNC`) to kind; wins over every other rule.
    pub roles: BTreeMap<String, WhKind>,
    /// Entity label to kind for covering entities.
    pub labels: BTreeMap<String, WhKind>,
}

#[derive(Debug, thiserror::Error)]
pub enum WhTableError {
    #[error("cannot parse wh table: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("WHICH_X needs a descriptor and cannot be assigned in a table ({0})")]
    WhichXEntry(String),
}

impl WhOverrides {
    pub fn from_json(text: &str) -> Result<Self, WhTableError> {
        let table: WhOverrides = serde_json::from_str(text)?;
        let mut normalized = WhOverrides::default();
        for (role, kind) in table.roles {
            if kind == WhKind::WhichX {
                return Err(WhTableError::WhichXEntry(role));
            }
            normalized.roles.insert(role.to_ascii_uppercase(), kind);
        }
        for (label, kind) in table.labels {
            if kind == WhKind::WhichX {
                return Err(WhTableError::WhichXEntry(label));
            }
            normalized.labels.insert(label.to_ascii_uppercase(), kind);
        }
        Ok(normalized)
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty() && self.labels.is_empty()
    }
}

fn modifier_kind(role: &str) -> Option<WhKind> {
    Some(match role {
        "ARGM-TMP" => WhKind::When,
        "ARGM-LOC" | "ARGM-DIR" | "ARGM-GOL" => WhKind::Where,
        "ARGM-CAU" | "ARGM-PRP" => WhKind::Why,
        "ARGM-MNR" => WhKind::How,
        "ARGM-EXT" => WhKind::HowMany,
        _ => return None,
    })
}

fn is_oblique_core(role: &str) -> bool {
    matches!(role, "ARG2" | "ARG3" | "ARG4" | "ARG5")
}

/// Kind licensed by one entity label, or `None` for labels carrying no
/// usable information.
pub fn label_kind(label: &str, role: &str, overrides: &WhOverrides) -> Option<WhKind> {
    let label = label.to_ascii_uppercase();
    if let Some(&kind) = overrides.labels.get(&label) {
        return Some(kind);
    }
    Some(match label.as_str() {
        "PERSON" | "PER" => WhKind::Who,
        "DATE" | "TIME" => WhKind::When,
        "MONEY" => WhKind::HowMuch,
        "CARDINAL" | "QUANTITY" | "PERCENT" => WhKind::HowMany,
        "GPE" | "LOC" | "FAC" if is_oblique_core(role) => WhKind::Where,
        "GPE" | "LOC" | "FAC" | "ORG" | "NORP" => WhKind::What,
        _ => return None,
    })
}

/// Entities that count as covering `[start, end)`: those over the coverage
/// threshold plus any entity containing the span's syntactic head.
pub fn covering_entities<'a>(
    s: &'a AnnotatedSentence,
    start: usize,
    end: usize,
    coverage_min: f64,
) -> Vec<crate::annotation::EntityOverlap<'a>> {
    let heads = s.span_heads(start, end);
    s.entity_labels_in_span(start, end)
        .into_iter()
        .filter(|o| o.coverage >= coverage_min || heads.iter().any(|&h| o.span.contains(h)))
        .collect()
}

pub fn identify_wh_word(
    arg: &SrlArgument,
    s: &AnnotatedSentence,
    cfg: &HeuristicConfig,
) -> Result<WhPhrase, WhError> {
    let role = arg.role.to_ascii_uppercase();
    if cfg.skip_roles.contains(&role) {
        return Err(WhError::NoWhWord(role));
    }
    if let Some(&kind) = cfg.wh_overrides.roles.get(&role) {
        return Ok(WhPhrase::of_kind(kind));
    }
    if cfg.ner_wh {
        if let Some(phrase) = descriptor_phrase(arg, s) {
            return Ok(phrase);
        }
    }
    if let Some(kind) = modifier_kind(&role) {
        return Ok(WhPhrase::of_kind(kind));
    }

    let best = covering_entities(s, arg.start, arg.end, cfg.entity_coverage_min)
        .into_iter()
        .filter_map(|o| label_kind(&o.span.label, &role, &cfg.wh_overrides).map(|k| (k, o)))
        .min_by(|(ka, a), (kb, b)| {
            ka.precedence()
                .cmp(&kb.precedence())
                .then(b.coverage.total_cmp(&a.coverage))
                .then(a.span.start.cmp(&b.span.start))
        });
    Ok(WhPhrase::of_kind(best.map_or(WhKind::What, |(k, _)| k)))
}

fn is_descriptor_pos(pos: &str) -> bool {
    let pos = pos.to_ascii_uppercase();
    matches!(pos.as_str(), "NOUN" | "PROPN" | "ADJ") || pos.starts_with("NN") || pos.starts_with("JJ")
}

fn is_determiner(pos: &str) -> bool {
    matches!(pos.to_ascii_uppercase().as_str(), "DET" | "DT")
}

/// "which <descriptor>" when the span is `[det] descriptor+ ENTITY` with a
/// PERSON/ORG entity at the head of the phrase.
fn descriptor_phrase(arg: &SrlArgument, s: &AnnotatedSentence) -> Option<WhPhrase> {
    let heads = s.span_heads(arg.start, arg.end);
    let parsed = !s.dep_edges.is_empty();
    let entity = s.ner_spans.iter().find(|e| {
        let label = e.label.to_ascii_uppercase();
        matches!(label.as_str(), "PERSON" | "PER" | "ORG")
            && e.start > arg.start
            && e.end <= arg.end
            && if parsed { heads.iter().any(|&h| e.contains(h)) } else { e.end == arg.end }
    })?;

    let mut first = arg.start;
    if is_determiner(&s.tokens[first].pos) {
        first += 1;
    }
    if first >= entity.start {
        return None;
    }
    let descriptor = &s.tokens[first..entity.start];
    let clean = descriptor.iter().all(|t| {
        is_descriptor_pos(&t.pos) && !s.ner_spans.iter().any(|e| e.contains(t.index))
    });
    if !clean {
        return None;
    }
    let mut tokens = vec!["which".to_string()];
    tokens.extend(descriptor.iter().map(|t| t.lower()));
    Some(WhPhrase { tokens, kind: WhKind::WhichX })
}
