use std::io::Write;
use std::process::{Command, Output, Stdio};

fn qstirling(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qstirling"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = qstirling(args, "");
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn counts() {
    assert_eq!(stdout(&["count", "5", "--avoid", "132"]), "590\n");
    assert_eq!(stdout(&["count", "2"]), "4\n");
    assert_eq!(stdout(&["count", "4", "--universe", "stirling"]), "105\n");
    assert_eq!(stdout(&["count", "4", "--universe", "all", "--avoid", "212"]), "105\n");
    assert_eq!(stdout(&["--jobs", "1", "count", "6", "--avoid", "132,213"]), "265\n");
}

#[test]
fn listing() {
    assert_eq!(stdout(&["list", "2"]).lines().count(), 4);
    let mut words: Vec<String> = stdout(&["list", "2"]).lines().map(String::from).collect();
    words.sort();
    assert_eq!(words, ["1 1 2 2", "1 2 2 1", "2 1 1 2", "2 2 1 1"]);
    assert_eq!(stdout(&["list", "3", "--avoid", "123,321"]).lines().count(), 12);
    assert_eq!(stdout(&["list", "2", "--trees"]).lines().next(), Some("(1 (2))"));
}

#[test]
fn conversion() {
    let out = qstirling(&["convert", "--to-tree"], "3 4 6 6 9 9 4 3 5 5 1 7 7 2 2 8 8 1\n");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "(3 (4 (6) (9))) (5) (1 (7) (2) (8))\n");
    let out = qstirling(&["convert", "--to-perm"], "(1)\n");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1 1\n");
}

#[test]
fn conversion_errors() {
    let out = qstirling(&["convert", "--to-tree"], "1 1\n1 2 1 2\n2 2 1 1\n");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "(1)\n(2) (1)\n");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("line 2: not quasi-Stirling"), "{err}");
    let out = qstirling(&["convert", "--to-perm"], "(1 (1))\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("duplicate label"));
}

#[test]
fn roundtrip_through_pipes() {
    for n in 1..=5 {
        let words = stdout(&["list", &n.to_string()]);
        let trees = qstirling(&["convert", "--to-tree"], &words);
        assert_eq!(trees.status.code(), Some(0));
        let back = qstirling(&["convert", "--to-perm"], &String::from_utf8(trees.stdout).unwrap());
        assert_eq!(String::from_utf8(back.stdout).unwrap(), words);
    }
}

#[test]
fn statistics() {
    let out = qstirling(&["stats", "--trees"], "7 7 6 1 1 6 3 2 5 5 4 4 2 3\n1 1 2 2 3 3\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "des=6 asc=3 pl=4 leaves=4 ok\ndes=0 asc=2 pl=3 leaves=3 ok\n"
    );
    assert_eq!(qstirling(&["stats"], "1 2 3\n").status.code(), Some(2));
}

#[test]
fn verification() {
    let table = stdout(&["verify", "--theorem", "all", "--nmax", "5"]);
    assert!(table.ends_with("summary: 18/18 PASS\n"));
    assert!(stdout(&["verify", "--theorem", "plateaus", "--nmax", "6"]).ends_with("summary: 1/1 PASS\n"));
    let info = stdout(&["verify", "--theorem", "descent-conjecture", "--nmax", "5"]);
    assert_eq!(info.lines().filter(|l| l.starts_with("descent-conjecture") && l.ends_with("INFO")).count(), 5);
    let csv = stdout(&["verify", "--theorem", "132,321", "--nmax", "3", "--format", "csv"]);
    assert_eq!(csv, "n,lambda,formula,brute_force,match\n1,\"132,321\",1,1,skip\n2,\"132,321\",4,4,true\n3,\"132,321\",11,11,true\n");
    let json = stdout(&["verify", "--theorem", "bijection", "--nmax", "7", "--seed", "3", "--format", "json"]);
    assert_eq!(json.lines().count(), 7);
    assert!(json.lines().all(|l| l.contains("\"status\":\"PASS\"")));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--theorem", "all", "--nmax", "5", "--format", "json"];
    let a = stdout(&args);
    let b = stdout(&args);
    let mut seq = vec!["--jobs", "1"];
    seq.extend(args);
    assert_eq!(a, b);
    assert_eq!(a, stdout(&seq));
}

#[test]
fn sequences() {
    assert_eq!(stdout(&["sequence", "--total", "--nmax", "6"]), "1,4,30,336,5040,95040\n");
    assert_eq!(stdout(&["sequence", "--lambda", "123", "--nmax", "5"]), "1,4,19,96,510\n");
    assert_eq!(stdout(&["sequence", "--lambda", "132,213", "--nmax", "5"]), "1,4,11,32,92\n");
    assert_eq!(stdout(&["sequence", "--plateaus", "2", "--nmax", "4", "--csv"]), "n,value\n2,2\n3,18\n4,144\n");
}

#[test]
fn wilf_report() {
    let out = stdout(&["wilf", "--k", "1", "--nmax", "5"]);
    assert!(out.starts_with("k=1 n_max=5 subsets=6 orbits=2 classes=2\n"));
    assert!(out.contains("[1,4,19,102,590]"));
    for k in ["2", "3", "4", "5"] {
        assert!(stdout(&["wilf", "--k", k]).ends_with("table: match (groups compared on n >= 5)\n"));
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| qstirling(args, "").status.code();
    assert_eq!(code(&["count"]), Some(1));
    assert_eq!(code(&["count", "9"]), Some(1));
    assert_eq!(code(&["count", "3", "--avoid", "1a"]), Some(1));
    assert_eq!(code(&["count", "3", "--universe", "other"]), Some(1));
    assert_eq!(code(&["convert"]), Some(1));
    assert_eq!(code(&["verify", "--theorem", "nope"]), Some(1));
    assert_eq!(code(&["sequence", "--nmax", "3"]), Some(1));
    assert_eq!(code(&["--help"]), Some(0));
    assert_eq!(code(&["convert", "--to-perm", "/nonexistent/file"]), Some(2));
}
