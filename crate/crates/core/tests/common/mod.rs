#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;
use std::sync::Arc;

use blockcert::perm::{Group, GroupDef, Limits};

pub const CORPUS: [&str; 11] = [
    "C6", "S3", "S4", "A4", "A5", "D8", "D10", "Q8", "SL23", "C7xC3", "C5xC4",
];

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn load(name: &str) -> Arc<Group> {
    let def = GroupDef::load(&corpus_dir().join(format!("{name}.json"))).unwrap();
    Arc::new(def.build(&Limits::default()).unwrap())
}
