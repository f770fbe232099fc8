//! Every corpus file carries its expected label (and verdict, when it has
//! frozen rows) in header comments.

use std::fs;
use std::path::PathBuf;

use mutfin_cli::{matrix_file, run};
use mutfin_core::{classify, decide_admissible, SearchConfig, TypeLabel, VerdictKind};
use serde_json::Value;

fn corpus() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut files: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
}

fn header(text: &str, key: &str) -> Option<String> {
    text.lines().find_map(|l| l.strip_prefix(&format!("# {key}: ")).map(str::to_string))
}

fn cli_json(args: &[&str]) -> (i32, Value) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(args.iter().copied(), &mut std::io::empty(), &mut out, &mut err);
    let value = serde_json::from_slice(&out).unwrap_or_else(|_| panic!("{args:?}: {}", String::from_utf8_lossy(&err)));
    (code, value)
}

#[test]
fn corpus_covers_every_label() {
    let labels: Vec<TypeLabel> =
        corpus().iter().map(|p| header(&fs::read_to_string(p).unwrap(), "label").unwrap().parse().unwrap()).collect();
    assert!(labels.len() >= 30);
    let kinds = [
        |l: &TypeLabel| matches!(l, TypeLabel::FiniteType),
        |l: &TypeLabel| matches!(l, TypeLabel::AffineA(..)),
        |l: &TypeLabel| matches!(l, TypeLabel::AffineD(_)),
        |l: &TypeLabel| matches!(l, TypeLabel::AffineE(_)),
        |l: &TypeLabel| matches!(l, TypeLabel::ExtendedAffineE(_)),
        |l: &TypeLabel| matches!(l, TypeLabel::X6),
        |l: &TypeLabel| matches!(l, TypeLabel::X7),
        |l: &TypeLabel| matches!(l, TypeLabel::Rank2(_)),
        |l: &TypeLabel| matches!(l, TypeLabel::SurfaceOther),
        |l: &TypeLabel| matches!(l, TypeLabel::MutationInfinite),
    ];
    for (i, kind) in kinds.iter().enumerate() {
        assert!(labels.iter().any(kind), "no corpus file for label kind {i}");
    }
}

#[test]
fn cli_labels_match_library_and_corpus() {
    let cfg = SearchConfig::default();
    for path in corpus() {
        let text = fs::read_to_string(&path).unwrap();
        let m = matrix_file::parse(&text).unwrap();
        let expected = header(&text, "label").unwrap();
        let (code, json) = cli_json(&["mutfin", "classify", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{path:?}");
        assert_eq!(json["label"], expected, "{path:?}");
        assert_eq!(classify(&m, &cfg).unwrap().to_string(), expected, "{path:?}");
    }
}

#[test]
fn cli_verdicts_match_library_and_corpus() {
    let cfg = SearchConfig::default();
    let mut checked = 0;
    for path in corpus() {
        let text = fs::read_to_string(&path).unwrap();
        let Some(expected) = header(&text, "verdict") else { continue };
        let m = matrix_file::parse(&text).unwrap();
        let (code, json) = cli_json(&["mutfin", "admissible", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{path:?}");
        assert_eq!(json["verdict"], expected, "{path:?}");
        let library = match decide_admissible(&m, &cfg).unwrap().kind() {
            VerdictKind::Admissible => "admissible",
            VerdictKind::NotAdmissible => "not_admissible",
            VerdictKind::Undecided => "undecided",
        };
        assert_eq!(library, expected, "{path:?}");
        checked += 1;
    }
    assert!(checked >= 8);
}

#[test]
fn corpus_files_round_trip() {
    for path in corpus() {
        let m = matrix_file::parse(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(matrix_file::parse(&matrix_file::print(&m)).unwrap(), m, "{path:?}");
    }
}
