//! Question generation from annotated summary sentences.
//!
//! A sentence arrives with a dependency parse, entity spans and semantic
//! role frames. For each argument of the main verb the engine picks a
//! wh-phrase, optionally fronts it with do-support, and tidies the result:
//!
//! ```
//! use sumqg::{fixtures, generate_questions, HeuristicConfig, Ladder};
//!
//! let out = generate_questions(&fixtures::s1(), &HeuristicConfig::from(Ladder::Full));
//! assert_eq!(out[1].question.text(), "what did stephen hawking announce in the morning ?");
//! ```
//!
//! The [`dataset`] module turns corpora into QG training triples and
//! SQuAD-style QA data; [`stats`] summarizes and lints the questions.

pub mod annotation;
pub mod assemble;
pub mod dataset;
pub mod engine;
pub mod fixtures;
pub mod morph;
pub mod par;
pub mod stats;
pub mod synth;
pub mod wh;

pub use annotation::{
    parse_annotation, parse_annotation_with, AnnotatedSentence, AnnotationError, DepEdge, Head, NerSpan,
    SrlArgument, SrlFrame, Token, Validation,
};
pub use assemble::{assemble_in_situ, post_edit, wh_move, AssembleError, QuestionDraft};
pub use dataset::{
    build_qg_triples, build_squad_json, clean_wiki_paragraphs, emit_seq2seq_input, extract_answer_candidates,
    filter_paragraph_answer, filter_qg_triple, DocumentPair, QaPair, QgTriple, RejectCode, RejectReason,
};
pub use engine::{generate_questions, FrameSelection, HeuristicConfig, Ladder, PassageMode, QgExample};
pub use morph::{base_form, decomp_verb, MorphError, Tense, VerbDecomposition, VerbLexicon};
pub use par::{generate_batch, Executor};
pub use stats::{lexical_overlap, lint_question, question_type_distribution, LintCode, TypeDistribution};
pub use wh::{identify_wh_word, WhError, WhKind, WhPhrase};
