//! Question generation over one annotated sentence, under a rung of the
//! heuristic ladder.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::annotation::{AnnotatedSentence, SrlArgument, SrlFrame};
use crate::assemble::{assemble_in_situ, is_subject, wh_move, QuestionDraft};
use crate::morph::VerbLexicon;
use crate::wh::{identify_wh_word, WhOverrides, WhPhrase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PassageMode {
    /// The summary sentence is its own passage.
    Naive,
    /// The source article is the passage.
    Summary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameSelection {
    RootOnly,
    AllFrames,
}

/// The six cumulative presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ladder {
    Naive,
    Summary,
    MainVerb,
    WhMove,
    Decomp,
    Full,
}

impl Ladder {
    pub const ALL: [Ladder; 6] =
        [Ladder::Naive, Ladder::Summary, Ladder::MainVerb, Ladder::WhMove, Ladder::Decomp, Ladder::Full];

    pub fn name(self) -> &'static str {
        match self {
            Ladder::Naive => "naive",
            Ladder::Summary => "summary",
            Ladder::MainVerb => "+main-verb",
            Ladder::WhMove => "+wh-move",
            Ladder::Decomp => "+decomp",
            Ladder::Full => "full",
        }
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown ladder preset {0:?} (expected naive, summary, +main-verb, +wh-move, +decomp or full)")]
pub struct UnknownLadder(pub String);

impl FromStr for Ladder {
    type Err = UnknownLadder;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ladder::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownLadder(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("decomp_verb requires wh_movement")]
    DecompWithoutMovement,
    #[error("{name} must lie in [0, 1], got {value}")]
    FractionOutOfRange { name: &'static str, value: f64 },
    #[error("min_paragraph_words ({min}) exceeds max_paragraph_words ({max})")]
    ParagraphBounds { min: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicConfig {
    pub mode: PassageMode,
    pub frame_selection: FrameSelection,
    pub wh_movement: bool,
    pub decomp_verb: bool,
    pub ner_wh: bool,
    pub entity_coverage_min: f64,
    pub skip_roles: BTreeSet<String>,
    pub min_question_tokens: usize,
    pub max_article_tokens: usize,
    pub min_answer_overlap: f64,
    pub min_paragraph_words: usize,
    pub max_paragraph_words: usize,
    pub min_paragraph_chars: usize,
    pub wh_overrides: WhOverrides,
    /// Surface to base form, consulted before the built-in irregular table.
    pub irregular_overrides: BTreeMap<String, String>,
}

pub const DEFAULT_SKIP_ROLES: &[&str] =
    &["ARGM-MOD", "ARGM-NEG", "ARGM-DIS", "ARGM-ADV", "ARGM-LVB", "ARGM-REC"];

impl From<Ladder> for HeuristicConfig {
    fn from(ladder: Ladder) -> Self {
        use Ladder::*;
        let mode = if ladder == Naive { PassageMode::Naive } else { PassageMode::Summary };
        let frame_selection =
            if matches!(ladder, Naive | Summary) { FrameSelection::AllFrames } else { FrameSelection::RootOnly };
        HeuristicConfig {
            mode,
            frame_selection,
            wh_movement: matches!(ladder, WhMove | Decomp | Full),
            decomp_verb: matches!(ladder, Decomp | Full),
            ner_wh: ladder == Full,
            entity_coverage_min: 0.5,
            skip_roles: DEFAULT_SKIP_ROLES.iter().map(|r| r.to_string()).collect(),
            min_question_tokens: 5,
            max_article_tokens: 480,
            min_answer_overlap: 0.55,
            min_paragraph_words: 20,
            max_paragraph_words: 480,
            min_paragraph_chars: 500,
            wh_overrides: WhOverrides::default(),
            irregular_overrides: BTreeMap::new(),
        }
    }
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        Ladder::Full.into()
    }
}

impl HeuristicConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.decomp_verb && !self.wh_movement {
            return Err(ConfigError::DecompWithoutMovement);
        }
        for (name, value) in
            [("entity_coverage_min", self.entity_coverage_min), ("min_answer_overlap", self.min_answer_overlap)]
        {
            if !(0.0..=1.0).contains(&value) {
                return Err(ConfigError::FractionOutOfRange { name, value });
            }
        }
        if self.min_paragraph_words > self.max_paragraph_words {
            return Err(ConfigError::ParagraphBounds {
                min: self.min_paragraph_words,
                max: self.max_paragraph_words,
            });
        }
        Ok(())
    }

    /// Preset name when the ladder switches match one, else "custom".
    pub fn ladder_name(&self) -> &'static str {
        Ladder::ALL
            .into_iter()
            .find(|&l| {
                let p = HeuristicConfig::from(l);
                p.mode == self.mode
                    && p.frame_selection == self.frame_selection
                    && p.wh_movement == self.wh_movement
                    && p.decomp_verb == self.decomp_verb
                    && p.ner_wh == self.ner_wh
            })
            .map_or("custom", Ladder::name)
    }

    pub fn lexicon(&self) -> VerbLexicon<'_> {
        VerbLexicon::with_overrides(&self.irregular_overrides)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QgExample {
    pub question: QuestionDraft,
    pub answer_text: String,
    pub answer_role: String,
    pub source_sentence_id: String,
    pub answer_start: usize,
    pub answer_end: usize,
    pub wh: WhPhrase,
    pub subject_question: bool,
    /// Labels of entities overlapping the answer span.
    pub answer_entities: Vec<String>,
}

fn selected_frames<'a>(s: &'a AnnotatedSentence, cfg: &HeuristicConfig) -> Vec<&'a SrlFrame> {
    match cfg.frame_selection {
        FrameSelection::AllFrames => s.srl_frames.iter().collect(),
        FrameSelection::RootOnly => match s.root_verb() {
            Ok(root) => s.srl_frames.iter().filter(|f| f.verb_index == root).collect(),
            Err(_) => Vec::new(),
        },
    }
}

/// Every question the configured heuristics derive from `s`, in frame then
/// argument order. Arguments that cannot yield a question are skipped.
pub fn generate_questions(s: &AnnotatedSentence, cfg: &HeuristicConfig) -> Vec<QgExample> {
    let lexicon = cfg.lexicon();
    let mut out = Vec::new();
    for frame in selected_frames(s, cfg) {
        let decomp = if cfg.wh_movement && cfg.decomp_verb {
            match lexicon.decomp_verb(s, frame.verb_index) {
                Ok(d) => Some(d),
                Err(_) => continue,
            }
        } else {
            None
        };
        for arg in &frame.arguments {
            if let Some(example) = question_for(s, frame, arg, decomp.as_ref(), cfg) {
                out.push(example);
            }
        }
    }
    out
}

fn question_for(
    s: &AnnotatedSentence,
    frame: &SrlFrame,
    arg: &SrlArgument,
    decomp: Option<&crate::morph::VerbDecomposition>,
    cfg: &HeuristicConfig,
) -> Option<QgExample> {
    let wh = identify_wh_word(arg, s, cfg).ok()?;
    let question = if cfg.wh_movement {
        wh_move(s, frame.verb_index, arg, &wh, decomp).ok()?
    } else {
        assemble_in_situ(s, arg, &wh).ok()?
    };
    Some(QgExample {
        question,
        answer_text: s.span_text(arg.start, arg.end),
        answer_role: arg.role.clone(),
        source_sentence_id: s.sentence_id.clone(),
        answer_start: arg.start,
        answer_end: arg.end,
        subject_question: is_subject(s, frame.verb_index, arg),
        answer_entities: s.entity_labels(arg.start, arg.end),
        wh,
    })
}
