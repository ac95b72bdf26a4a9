//! Text formats: the `group`/`action` grammar, the built-in catalog, and
//! JSON reports.

pub mod catalog;
pub mod parse;
pub mod report;

use serde::Serialize;

use crate::word::Word;

pub use catalog::{catalog_lookup, CatalogEntry, KnownFacts};
pub use parse::{format_action, parse_action, parse_file, parse_group, parse_word_list, resolve_action, ParsedFile, RawAction};
pub use report::{serialize_report, GroupSummary, OrderValue, Report, ReportStats};

/// Images of every target generator under every actor generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionSpec {
    pub name: String,
    pub actor: String,
    pub target: String,
    /// `generator_map[s][t]` is the image of target generator `t` under
    /// actor generator `s`.
    #[serde(skip)]
    pub generator_map: Vec<Vec<Word>>,
}
