use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use serde::Deserialize;
use sumqg::engine::{FrameSelection, PassageMode};
use sumqg::wh::WhOverrides;
use sumqg::{HeuristicConfig, Ladder};

use crate::UsageError;

#[derive(Debug, Args, Clone, Default)]
pub struct HeuristicArgs {
    /// JSON config file; flags take precedence over it.
    #[arg(long, env = "QG_CONFIG")]
    pub config: Option<PathBuf>,
    /// naive | summary | +main-verb | +wh-move | +decomp | full
    #[arg(long, allow_hyphen_values = true)]
    pub ladder: Option<Ladder>,
    #[arg(long)]
    pub max_article_tokens: Option<usize>,
    #[arg(long)]
    pub min_answer_overlap: Option<f64>,
    #[arg(long)]
    pub min_question_tokens: Option<usize>,
    #[arg(long)]
    pub min_paragraph_words: Option<usize>,
    #[arg(long)]
    pub max_paragraph_words: Option<usize>,
    #[arg(long)]
    pub min_paragraph_chars: Option<usize>,
    #[arg(long)]
    pub entity_coverage_min: Option<f64>,
    /// Comma-separated roles that never yield a question.
    #[arg(long, value_delimiter = ',')]
    pub skip_roles: Option<Vec<String>>,
    /// JSON wh table overrides: {"roles": {...}, "labels": {...}}.
    #[arg(long)]
    pub wh_table: Option<PathBuf>,
    /// JSON map of verb surface to base form.
    #[arg(long)]
    pub irregular_verbs: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    ladder: Option<String>,
    mode: Option<PassageMode>,
    frame_selection: Option<FrameSelection>,
    wh_movement: Option<bool>,
    decomp_verb: Option<bool>,
    ner_wh: Option<bool>,
    max_article_tokens: Option<usize>,
    min_answer_overlap: Option<f64>,
    min_question_tokens: Option<usize>,
    min_paragraph_words: Option<usize>,
    max_paragraph_words: Option<usize>,
    min_paragraph_chars: Option<usize>,
    entity_coverage_min: Option<f64>,
    skip_roles: Option<Vec<String>>,
    wh_table: Option<PathBuf>,
    irregular_verbs: Option<PathBuf>,
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

macro_rules! layer {
    ($cfg:ident, $src:expr, $($field:ident),+) => {
        $(if let Some(v) = $src.$field.clone() { $cfg.$field = v; })+
    };
}

impl HeuristicArgs {
    pub fn resolve(&self) -> Result<HeuristicConfig> {
        let file: ConfigFile = match &self.config {
            Some(path) => serde_json::from_str(&read_text(path)?)
                .map_err(|e| UsageError(format!("config {}: {e}", path.display())))?,
            None => ConfigFile::default(),
        };
        let file_ladder = file
            .ladder
            .as_deref()
            .map(str::parse::<Ladder>)
            .transpose()
            .map_err(|e| UsageError(e.to_string()))?;

        let mut cfg = HeuristicConfig::from(self.ladder.or(file_ladder).unwrap_or(Ladder::Full));
        if self.ladder.is_none() {
            layer!(cfg, file, mode, frame_selection, wh_movement, decomp_verb, ner_wh);
        }
        layer!(
            cfg,
            file,
            max_article_tokens,
            min_answer_overlap,
            min_question_tokens,
            min_paragraph_words,
            max_paragraph_words,
            min_paragraph_chars,
            entity_coverage_min
        );
        layer!(
            cfg,
            self,
            max_article_tokens,
            min_answer_overlap,
            min_question_tokens,
            min_paragraph_words,
            max_paragraph_words,
            min_paragraph_chars,
            entity_coverage_min
        );
        if let Some(roles) = self.skip_roles.as_ref().or(file.skip_roles.as_ref()) {
            cfg.skip_roles =
                roles.iter().map(|r| r.trim().to_ascii_uppercase()).filter(|r| !r.is_empty()).collect::<BTreeSet<_>>();
        }
        if let Some(path) = self.wh_table.as_ref().or(file.wh_table.as_ref()) {
            cfg.wh_overrides =
                WhOverrides::from_json(&read_text(path)?).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        }
        if let Some(path) = self.irregular_verbs.as_ref().or(file.irregular_verbs.as_ref()) {
            let map: BTreeMap<String, String> = serde_json::from_str(&read_text(path)?)
                .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            cfg.irregular_overrides = map.into_iter().map(|(k, v)| (k.to_lowercase(), v.to_lowercase())).collect();
        }
        cfg.validate().map_err(|e| UsageError(e.to_string()))?;
        Ok(cfg)
    }
}
