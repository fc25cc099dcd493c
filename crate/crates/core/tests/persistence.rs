use chrono::{TimeZone, Utc};

use trustgate_core::ahp::{classify, sample};
use trustgate_core::history::append_jsonl;
use trustgate_core::{AuthEvent, Error, HistoryLog, Outcome, Rank, ServiceCatalog};

fn event(k: i64, user: &str, rank: Rank, outcome: Outcome) -> AuthEvent {
    AuthEvent::new(Utc.timestamp_opt(1_750_000_000 + k, 0).unwrap(), user, "E", rank, outcome)
}

#[test]
fn appended_file_replays_to_same_stats() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.jsonl");
    let mut log = HistoryLog::new();
    for k in 0..30 {
        let rank = [Rank::Low, Rank::Medium, Rank::High][k as usize % 3];
        let outcome = if rank != Rank::High && k % 4 == 0 { Outcome::Failure } else { Outcome::Success };
        let user = if k % 5 == 0 { "bob" } else { "alice" };
        let e = event(k, user, rank, outcome);
        append_jsonl(&path, &e).unwrap();
        log.record_event(e).unwrap();
    }
    let replayed = HistoryLog::load(&path).unwrap();
    assert_eq!(replayed, log);
    for user in ["alice", "bob"] {
        assert_eq!(replayed.compute_stats(user, None), log.compute_stats(user, None));
        assert_eq!(replayed.compute_stats(user, Some(7)), log.compute_stats(user, Some(7)));
    }
}

#[test]
fn unknown_fields_survive_rewrite() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.jsonl");
    std::fs::write(
        &path,
        "{\"ts\":\"2026-01-01T00:00:00Z\",\"user\":\"u\",\"level\":\"E\",\"rank\":\"medium\",\"method\":\"pin\",\"outcome\":\"success\",\"device\":\"phone\"}\n\n",
    )
    .unwrap();
    let log = HistoryLog::load(&path).unwrap();
    let mut out = Vec::new();
    log.write_jsonl(&mut out).unwrap();
    assert!(String::from_utf8(out).unwrap().contains("\"device\":\"phone\""));
}

#[test]
fn bad_line_is_reported_with_its_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.jsonl");
    let good = serde_json::to_string(&event(0, "u", Rank::High, Outcome::Success)).unwrap();
    std::fs::write(&path, format!("{good}\n{{not json}}\n")).unwrap();
    match HistoryLog::load(&path).unwrap_err() {
        Error::Parse(msg) => assert!(msg.starts_with("line 2"), "{msg}"),
        e => panic!("unexpected {e}"),
    }
    assert!(HistoryLog::load(dir.path().join("absent.jsonl")).unwrap().is_empty());
}

#[test]
fn catalog_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.json");
    let catalog = classify(&sample::nine_level_matrix(), &sample::nine_level_names()).unwrap();
    catalog.save(&path).unwrap();
    let back = ServiceCatalog::load(&path).unwrap();
    for (a, b) in back.entries().iter().zip(catalog.entries()) {
        assert_eq!(a.sensitive_value.to_bits(), b.sensitive_value.to_bits());
    }
    assert_eq!(back, catalog);

    std::fs::write(&path, r#"{"entries":[{"level":"A","name":"x","sensitive_value":0.4},{"level":"B","name":"y","sensitive_value":0.6}]}"#)
        .unwrap();
    assert!(ServiceCatalog::load(&path).is_err());
}
