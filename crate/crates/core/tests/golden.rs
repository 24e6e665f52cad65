//! Pins the random tournament generator. Regenerate with `UPDATE_GOLDEN=1`
//! only when a change of the stream is intended.

use std::path::PathBuf;
use teq_core::{random_tournament, Tournament};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

#[test]
fn random_tournament_stream_is_pinned() {
    let path = golden("random_n5_seed42.txt");
    let text = random_tournament(5, 42).to_text();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let expected = std::fs::read_to_string(&path).expect("golden file present");
    assert_eq!(text, expected);
    assert_eq!(Tournament::parse(&expected).unwrap(), random_tournament(5, 42));
}
