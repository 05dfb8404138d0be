//! Catalog serializations are pinned by files under `tests/golden`.
//! Regenerate with `UPDATE_GOLDEN=1 cargo test -p orthoalg --test golden`.

use std::fs;
use std::path::PathBuf;

use orthoalg::catalog::{self, Payload};
use orthoalg::format::{parse_ioa, parse_olat, serialize_ioa, serialize_olat};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

#[test]
fn catalog_matches_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut checked = 0;
    for e in catalog::catalog() {
        let (file, text) = match &e.payload {
            Payload::Ortholattice(l) => (format!("{}.olat", e.name), serialize_olat(l)),
            Payload::Implication(t) => (format!("{}.ioa", e.name), serialize_ioa(t)),
            Payload::Orthosemilattice(_) => continue,
        };
        let path = golden_dir().join(&file);
        if update {
            fs::create_dir_all(golden_dir()).unwrap();
            fs::write(&path, &text).unwrap();
        }
        let expected = fs::read_to_string(&path).unwrap_or_else(|err| panic!("{}: {err}", path.display()));
        assert_eq!(text, expected, "{file} drifted");
        checked += 1;
    }
    assert_eq!(checked, 14);
}

#[test]
fn golden_files_parse_back_to_catalog() {
    for e in catalog::catalog() {
        match &e.payload {
            Payload::Ortholattice(l) => {
                let text = fs::read_to_string(golden_dir().join(format!("{}.olat", e.name))).unwrap();
                assert_eq!(&parse_olat(&text).unwrap(), l, "{}", e.name);
            }
            Payload::Implication(t) => {
                let text = fs::read_to_string(golden_dir().join(format!("{}.ioa", e.name))).unwrap();
                assert_eq!(&parse_ioa(&text).unwrap(), t, "{}", e.name);
            }
            Payload::Orthosemilattice(_) => {}
        }
    }
}

#[test]
fn catalog_is_stable_across_calls() {
    let names: Vec<&str> = catalog::names();
    assert_eq!(names, catalog::names());
    assert_eq!(names.len(), 17);
    assert_eq!(catalog::fig2_strong12(), catalog::fig2_strong12());
}
