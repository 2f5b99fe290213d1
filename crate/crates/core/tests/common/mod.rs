#![allow(dead_code)]

use std::path::PathBuf;

use trsiso::{parse_trs, Trs, TrsMode};

pub fn fixture_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(rel)
}

pub fn fixture_text(rel: &str) -> String {
    std::fs::read_to_string(fixture_path(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn load(rel: &str) -> Trs {
    parse_trs(&fixture_text(rel), TrsMode::Strict).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn trs(text: &str) -> Trs {
    parse_trs(text, TrsMode::Strict).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// Table rows: fixture stem, relation that holds, relation that fails.
pub const STRICTNESS: [(&str, &str, &str); 10] = [
    ("i", "lfe", "gfe"),
    ("ii", "ge", "gfe"),
    ("iii", "ge", "gve"),
    ("iv", "lve", "gve"),
    ("v", "sve", "lfe"),
    ("vi", "sve", "ge"),
    ("vii", "se", "ge"),
    ("viii", "se", "lve"),
    ("ix", "le", "sve"),
    ("x", "le", "se"),
];

pub fn strictness_pair(row: &str) -> (Trs, Trs) {
    (load(&format!("strictness/{row}_a.trs")), load(&format!("strictness/{row}_b.trs")))
}

/// Claims about the worked examples: (first, second, relation, holds).
pub const EXAMPLE_CLAIMS: [(&str, &str, &str, bool); 16] = [
    ("trs02", "trs03", "gve", true),
    ("trs02", "trs03", "gfe", false),
    ("trs02", "trs04", "gfe", true),
    ("trs02", "trs05", "ge", true),
    ("trs02", "trs05", "gve", false),
    ("trs02", "trs05", "gfe", false),
    ("trs02", "trs06", "ge", false),
    ("trs02", "trs06", "gfe", false),
    ("trs02", "trs06", "gve", false),
    ("trs02p", "trs06", "se", true),
    ("trs07", "trs08", "sve", true),
    ("trs09", "trs10", "le", true),
    ("trs09", "trs10", "lve", false),
    ("trs09", "trs10", "lfe", false),
    ("trs09", "trs12", "lfe", true),
    ("trs15", "trs16", "se", true),
];

pub fn example(name: &str) -> Trs {
    load(&format!("examples/{name}.trs"))
}
