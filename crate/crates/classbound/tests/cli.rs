use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_classbound"));
    c.env_remove("CLASSBOUND_CAP");
    c
}

fn run(c: &mut Command) -> Output {
    c.output().expect("binary runs")
}

#[test]
fn corpus_list() {
    let out = run(bin().args(["corpus", "list"]));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("ex0.3a") && l.contains("wreath")));
    assert_eq!(text.lines().count(), classbound::corpus_standard().len());

    let out = run(bin().args(["corpus", "list", "--json"]));
    let items: Vec<classbound::CorpusItem> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(items, classbound::corpus_standard());
}

#[test]
fn verify_matrix_spec() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("c4.json");
    std::fs::write(&spec, r#"{"kind":"matrix-gfp","p":5,"dim":2,"generators":[[2,0,0,2]]}"#).unwrap();
    let report = dir.path().join("out.json");
    let out = run(bin().args(["verify", "--lemma", "affine-classes", "--spec"]).arg(&spec).arg("--report").arg(&report));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = classbound::report::from_json(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(!r.records.is_empty());
    assert!(r.records.iter().all(|x| x.holds));
    assert!(r.records.iter().any(|x| x.lhs == 10.0));
}

#[test]
fn verify_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("s.json");
    std::fs::write(&spec, r#"{"kind":"symmetric","params":{"n":4}}"#).unwrap();
    assert_eq!(run(bin().args(["verify", "--lemma", "no-such", "--spec"]).arg(&spec)).status.code(), Some(2));
    assert_eq!(run(bin().args(["verify", "--lemma", "lemma-1.1", "--spec"]).arg(dir.path().join("missing.json"))).status.code(), Some(2));
    std::fs::write(&spec, "{not json").unwrap();
    assert_eq!(run(bin().args(["verify", "--lemma", "lemma-1.1", "--spec"]).arg(&spec)).status.code(), Some(2));
}

#[test]
fn lemd4_exit_codes() {
    let out = run(bin().args(["bounds", "lemd4", "--logW", "47", "--n", "2"]));
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("margin="));
    assert_eq!(run(bin().args(["bounds", "lemd4", "--logW", "18", "--n", "2"])).status.code(), Some(1));
    assert_eq!(run(bin().args(["bounds", "lemd4", "--logW", "0"])).status.code(), Some(2));
}

#[test]
fn small_campaign_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.csv");
    let out = run(bin().args(["campaign", "--suite", "lemma-1.1,index-bound", "--seed", "5", "--format", "csv", "--out"]).arg(&out_path));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("lemma,instance,lhs,rhs,holds,slack,mode\n"));
    assert!(text.lines().count() > 30);
    assert!(text.lines().skip(1).all(|l| l.starts_with("index-bound,") || l.starts_with("lemma-1.1,")));
    assert_eq!(run(bin().args(["campaign", "--format", "xml", "--out"]).arg(&out_path)).status.code(), Some(2));
}

#[test]
fn cap_override() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("s.json");
    std::fs::write(&spec, r#"{"kind":"symmetric","params":{"n":5}}"#).unwrap();
    let out = run(bin().env("CLASSBOUND_CAP", "50").args(["verify", "--lemma", "lemma-1.1", "--spec"]).arg(&spec));
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("skip lemma-1.1"), "{text}");
    assert_eq!(run(bin().env("CLASSBOUND_CAP", "lots").args(["corpus", "list"])).status.code(), Some(2));
}
