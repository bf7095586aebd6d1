mod common;

use common::*;
use husr_core::datagen::{generate, GeneratorParams};
use husr_core::ingest::{parse_database, read_database, write_rules, write_sequences, write_utilities, IngestError};
use husr_core::{mine, Database, Preset, Sid};

fn round_trip(db: &Database) -> Database {
    let (mut seqs, mut eus) = (Vec::new(), Vec::new());
    write_sequences(db, &mut seqs).unwrap();
    write_utilities(db.external_utilities(), &mut eus).unwrap();
    parse_database(std::str::from_utf8(&seqs).unwrap(), std::str::from_utf8(&eus).unwrap()).unwrap()
}

#[test]
fn example_sequence_utilities() {
    let db = example_db();
    assert_eq!(db.len(), 4);
    assert_eq!(db.items().len(), 7);
    let su: Vec<u64> = (1..=4).map(|s| db.sequence_utility(Sid(s)).unwrap()).collect();
    assert_eq!(su, [9, 8, 10, 5]);
}

#[test]
fn generated_databases_round_trip() {
    for seed in 0..5 {
        let params = GeneratorParams { seed, num_patterns: 4, item_skew: 0.5, ..GeneratorParams::default() };
        let db: Database = generate(&params).unwrap();
        assert_eq!(round_trip(&db), db);
    }
    assert_eq!(round_trip(&example_db()), example_db());
}

#[test]
fn files_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let (seqs, eus) = (dir.path().join("db.txt"), dir.path().join("eu.txt"));
    std::fs::write(&seqs, EXAMPLE_SEQUENCES).unwrap();
    std::fs::write(&eus, EXAMPLE_UTILITIES).unwrap();
    assert_eq!(read_database::<u64>(&seqs, &eus).unwrap(), example_db());
    let missing = read_database::<u64>(&dir.path().join("nope.txt"), &eus).unwrap_err();
    assert!(matches!(missing, IngestError::Io { .. }), "{missing}");
}

#[test]
fn empty_file_mines_nothing() {
    let db: Database = parse_database("", EXAMPLE_UTILITIES).unwrap();
    assert!(db.is_empty());
    assert!(mine(&db, 1, conf(0.0), Preset::V4.config()).unwrap().rules.is_empty());
}

#[test]
fn duplicate_item_names_sequence_and_item() {
    let err = parse_database::<u64>("1:1 -1 -2\n1:1 1:2 -1 -2\n", EXAMPLE_UTILITIES).unwrap_err();
    let IngestError::DuplicateItemInSequence { line, sid, item } = err else { panic!("{err}") };
    assert_eq!((line, sid, item.id()), (2, Sid(2), 1));
}

#[test]
fn rule_lines() {
    let rules = mine(&example_db(), 10, conf(0.5), Preset::V1.config()).unwrap().rules;
    let mut out = Vec::new();
    write_rules(&rules, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "1 ==> 3 #SUP: 2 #CONF: 1.0000 #UTIL: 12");
    assert_eq!(lines[3], "2 4 ==> 7 #SUP: 1 #CONF: 1.0000 #UTIL: 10");
    let mut empty = Vec::new();
    write_rules::<u64>(&[], &mut empty).unwrap();
    assert!(empty.is_empty());
}
