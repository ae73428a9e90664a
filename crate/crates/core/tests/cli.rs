use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kleinring")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn cohomology_of_a_at_three() {
    let (code, out, _) = run(&["cohomology", "A", "--from", "-4", "--to", "4", "--p", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let dims: Vec<usize> =
        doc["table"].as_array().unwrap().iter().map(|r| r["torsion"].as_array().unwrap().len()).collect();
    assert_eq!(dims, [4, 3, 2, 1, 1, 2, 3, 4, 5]);
    assert_eq!(doc["lattice"]["spec"], "A");
    assert_eq!(doc["config"]["p"], 3);
}

#[test]
fn table_and_json_carry_the_same_numbers() {
    let args = ["cohomology", "etube(l=0,i=2,n=3)", "--from", "-2", "--to", "2"];
    let (_, table, _) = run(&args);
    let (_, json, _) = run(&[&args[..], &["--format", "json"]].concat());
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    for row in doc["table"].as_array().unwrap() {
        let t: Vec<String> = row["torsion"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
        let line = format!("{:>4}  {:>4}  {:<16}", row["n"].as_i64().unwrap(), row["free_rank"].as_u64().unwrap(), format!("[{}]", t.join(",")));
        assert!(table.contains(&line), "{line}");
    }
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let path = std::env::temp_dir().join(format!("kleinring-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (c1, o1, _) = run(&["verify", "prop2.3", "--p", "3", "--format", "json", "--out", p]);
    let (c2, o2, _) = run(&["verify", "prop2.3", "--p", "3", "--format", "json"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(o1, o2);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), o1);
    let _ = std::fs::remove_file(path);
}

#[test]
fn ranks_reports_discrepancies_without_failing() {
    let (code, out, _) = run(&["verify", "ranks", "--p", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("[discrepancy] vector rank A^1"));
    assert!(out.contains("0 fail"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["cohomology", "R[px]"]).0, 2);
    assert_eq!(run(&["cohomology", "tube(f=t,n=1)"]).0, 2);
    assert_eq!(run(&["verify", "nope"]).0, 2);
    assert_eq!(run(&["--p", "4", "cohomology", "A"]).0, 2);
    assert_eq!(run(&["--precision", "6", "cohomology", "A"]).0, 2);
    assert_eq!(run(&["verify", "thm3.4", "--window", "-1", "1"]).0, 1);
}
