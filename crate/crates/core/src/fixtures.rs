//! Hand-annotated reference sentences and a small builder for writing more.
//!
//! These mirror the worked examples used throughout the test suites:
//! the "party in the morning" sentence, the "emergency spinal surgery"
//! sentence, and the "nba player" descriptor sentence.

use crate::annotation::{AnnotatedSentence, DepEdge, Head, NerSpan, SrlArgument, SrlFrame, Token};

#[derive(Debug, Default)]
pub struct SentenceBuilder {
    id: String,
    tokens: Vec<Token>,
    edges: Vec<DepEdge>,
    ner: Vec<NerSpan>,
    frames: Vec<SrlFrame>,
}

impl SentenceBuilder {
    pub fn new(id: impl Into<String>) -> Self {
        SentenceBuilder { id: id.into(), ..Default::default() }
    }

    /// Appends a token with its dependency edge. `head` of `None` marks root.
    pub fn token(mut self, surface: &str, pos: &str, label: &str, head: Option<usize>) -> Self {
        let index = self.tokens.len();
        self.tokens.push(Token { index, surface: surface.into(), lemma: None, pos: pos.into() });
        self.edges.push(DepEdge {
            dependent: index,
            head: head.map_or(Head::Root, Head::Token),
            label: label.into(),
        });
        self
    }

    pub fn lemma(mut self, index: usize, lemma: &str) -> Self {
        self.tokens[index].lemma = Some(lemma.into());
        self
    }

    pub fn entity(mut self, start: usize, end: usize, label: &str) -> Self {
        self.ner.push(NerSpan { start, end, label: label.into() });
        self
    }

    pub fn frame(mut self, verb_index: usize, args: &[(&str, usize, usize)]) -> Self {
        self.frames.push(SrlFrame {
            verb_index,
            arguments: args.iter().map(|&(r, s, e)| SrlArgument::new(r, s, e)).collect(),
        });
        self
    }

    pub fn build(self) -> AnnotatedSentence {
        let mut s = AnnotatedSentence {
            sentence_id: self.id,
            tokens: self.tokens,
            dep_edges: self.edges,
            ner_spans: self.ner,
            srl_frames: self.frames,
        };
        s.ner_spans.sort_by_key(|n| n.start);
        for f in &mut s.srl_frames {
            f.arguments.sort_by_key(|a| a.start);
        }
        s
    }
}

/// "stephen hawking announced the party in the morning"
pub fn s1() -> AnnotatedSentence {
    SentenceBuilder::new("s1")
        .token("stephen", "PROPN", "compound", Some(1))
        .token("hawking", "PROPN", "nsubj", Some(2))
        .token("announced", "VERB", "root", None)
        .token("the", "DET", "det", Some(4))
        .token("party", "NOUN", "dobj", Some(2))
        .token("in", "ADP", "prep", Some(2))
        .token("the", "DET", "det", Some(7))
        .token("morning", "NOUN", "pobj", Some(5))
        .entity(0, 2, "PERSON")
        .frame(2, &[("ARG0", 0, 2), ("ARG1", 3, 5), ("ARGM-TMP", 5, 8)])
        .build()
}

/// "u2 's lead singer bono has had emergency spinal surgery after suffering
/// an injury while preparing for tour dates"
pub fn s2() -> AnnotatedSentence {
    SentenceBuilder::new("s2")
        .token("u2", "PROPN", "poss", Some(3))
        .token("'s", "PART", "case", Some(0))
        .token("lead", "NOUN", "compound", Some(3))
        .token("singer", "NOUN", "compound", Some(4))
        .token("bono", "PROPN", "nsubj", Some(6))
        .token("has", "AUX", "aux", Some(6))
        .token("had", "VERB", "root", None)
        .token("emergency", "NOUN", "compound", Some(9))
        .token("spinal", "ADJ", "amod", Some(9))
        .token("surgery", "NOUN", "dobj", Some(6))
        .token("after", "SCONJ", "mark", Some(11))
        .token("suffering", "VERB", "advcl", Some(6))
        .token("an", "DET", "det", Some(13))
        .token("injury", "NOUN", "dobj", Some(11))
        .token("while", "SCONJ", "mark", Some(15))
        .token("preparing", "VERB", "advcl", Some(11))
        .token("for", "ADP", "prep", Some(15))
        .token("tour", "NOUN", "compound", Some(18))
        .token("dates", "NOUN", "pobj", Some(16))
        .entity(0, 1, "ORG")
        .entity(4, 5, "PERSON")
        .frame(6, &[("ARG0", 0, 5), ("ARG1", 7, 10), ("ARGM-TMP", 10, 19)])
        .frame(11, &[("ARG0", 0, 5), ("ARG1", 12, 14), ("ARGM-TMP", 14, 19)])
        .frame(15, &[("ARG1", 16, 19)])
        .build()
}

/// "nba player michael jordan signed a new contract"
pub fn nba_player() -> AnnotatedSentence {
    SentenceBuilder::new("nba")
        .token("nba", "PROPN", "compound", Some(1))
        .token("player", "NOUN", "compound", Some(3))
        .token("michael", "PROPN", "compound", Some(3))
        .token("jordan", "PROPN", "nsubj", Some(4))
        .token("signed", "VERB", "root", None)
        .token("a", "DET", "det", Some(7))
        .token("new", "ADJ", "amod", Some(7))
        .token("contract", "NOUN", "dobj", Some(4))
        .entity(2, 4, "PERSON")
        .frame(4, &[("ARG0", 0, 4), ("ARG1", 5, 8)])
        .build()
}
