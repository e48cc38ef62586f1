use classbound::report::{from_json, to_csv, to_json};
use classbound::{corpus_standard, emit_report, run_campaign, CorpusItem, Format, Suite};
use classbound_core::lemmas::ids;
use classbound_core::Relation;

fn small_corpus() -> Vec<CorpusItem> {
    let names = ["S3", "S4", "D8", "Q8", "ex0.3a", "C2-fpf", "lemd4-logW47-n2", "lemd4-logW18-n2", "corf3-constant"];
    corpus_standard().into_iter().filter(|i| names.contains(&i.name.as_str())).collect()
}

fn small_suite() -> Suite {
    Suite::parse("lemma-1.1,index-bound,lemma-2,affine-classes,expected,theorem-d4,noncoprime-bounds,fixed-oracle").unwrap()
}

#[test]
fn json_round_trip() {
    let r = run_campaign(&small_suite(), &small_corpus(), 3);
    assert!(!r.records.is_empty());
    let text = to_json(&r).unwrap();
    assert_eq!(from_json(&text).unwrap(), r);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["meta"]["seed"], 3);
    assert!(value["meta"]["version"].is_string());
    assert!(value["records"].is_array());
    assert!(value["summary"].is_object());
}

#[test]
fn csv_rows_and_header() {
    let r = run_campaign(&small_suite(), &small_corpus(), 3);
    let text = to_csv(&r).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("lemma,instance,lhs,rhs,holds,slack,mode"));
    assert_eq!(text.lines().count(), r.records.len() + 1);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.records().count(), r.records.len());
}

#[test]
fn summary_counts() {
    let r = run_campaign(&small_suite(), &small_corpus(), 3);
    for (lemma, s) in &r.summary {
        let recs: Vec<_> = r.records_for(lemma).collect();
        assert_eq!(s.records, recs.len());
        assert_eq!(s.holds, recs.iter().filter(|x| x.holds).count());
        assert_eq!(s.skips, r.skips.iter().filter(|x| &x.lemma == lemma).count());
    }
    assert_eq!(r.failures(), 0);
}

#[test]
fn every_suite_lemma_is_summarized() {
    let corpus: Vec<CorpusItem> = corpus_standard().into_iter().filter(|i| i.name == "C4").collect();
    let r = run_campaign(&Suite::parse("lemma-1.1,theorem-c,lemma-e2").unwrap(), &corpus, 0);
    assert_eq!(r.summary.len(), 3);
    assert_eq!(r.summary["theorem-c"].records, 0);
    assert!(r.summary["lemma-1.1"].records > 0);
}

#[test]
fn empty_corpus() {
    let r = run_campaign(&Suite::standard(), &[], 1);
    assert!(r.records.is_empty() && r.skips.is_empty());
    assert_eq!(r.summary.len(), classbound::STANDARD_SUITE.len());
    assert_eq!(to_csv(&r).unwrap(), "lemma,instance,lhs,rhs,holds,slack,mode\n");
    assert_eq!(from_json(&to_json(&r).unwrap()).unwrap(), r);
}

#[test]
fn lemma_1_1_is_an_equality() {
    let corpus: Vec<CorpusItem> = corpus_standard().into_iter().filter(|i| ["S4", "A5", "D12", "ex0.3a"].contains(&i.name.as_str())).collect();
    let r = run_campaign(&Suite::parse(ids::LEMMA_1_1).unwrap(), &corpus, 0);
    assert!(r.records.len() >= 10);
    for rec in &r.records {
        assert_eq!(rec.relation, Relation::Eq);
        assert_eq!(rec.slack, 0.0, "{}", rec.instance);
        assert!(rec.holds);
    }
}

#[test]
fn identical_seeds_give_identical_bytes() {
    let a = to_json(&run_campaign(&small_suite(), &small_corpus(), 9)).unwrap();
    let b = to_json(&run_campaign(&small_suite(), &small_corpus(), 9)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn expected_values_and_failing_threshold() {
    let r = run_campaign(&small_suite(), &small_corpus(), 0);
    let exp: Vec<_> = r.records_for(ids::EXPECTED).collect();
    assert!(exp.iter().all(|x| x.holds));
    assert!(exp.iter().any(|x| x.instance == "ex0.3a:fixed" && x.lhs == 4.0));
    assert!(exp.iter().any(|x| x.instance == "lemd4-logW18-n2:part-b-holds" && x.lhs == 0.0));
    assert_eq!(r.records_for(ids::THEOREM_D4).count(), 3);
}

#[test]
fn unknown_lemma_rejected() {
    assert!(Suite::parse("lemma-zz").is_err());
    assert!("xml".parse::<Format>().is_err());
}

#[test]
fn files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_campaign(&small_suite(), &small_corpus(), 0);
    let json = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    emit_report(&r, Format::Json, &json).unwrap();
    emit_report(&r, Format::Csv, &csv).unwrap();
    assert_eq!(from_json(&std::fs::read_to_string(json).unwrap()).unwrap(), r);
    assert_eq!(std::fs::read_to_string(csv).unwrap().lines().count(), r.records.len() + 1);
    assert!(emit_report(&r, Format::Json, &dir.path().join("missing/r.json")).is_err());
}
