use plreal::cli::{run, Outcome};
use plreal::format::read_pl;

fn go(args: &[&str]) -> Outcome {
    run(std::iter::once("plreal").chain(args.iter().copied()))
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(go(&["frobnicate"]).code, 64);
    assert_eq!(go(&["diverge", "--levels", "x"]).code, 64);
    assert_eq!(go(&["--cap", "5", "diverge"]).code, 64);
    assert_eq!(go(&["--format", "csv", "diverge", "--levels", "2"]).code, 64);
    assert_eq!(go(&["--help"]).code, 0);
}

#[test]
fn precondition_and_resource_codes() {
    assert_eq!(go(&["witness", "ornstein-g", "--interval", "1/2,1/4"]).code, 64);
    assert_eq!(go(&["construct", "fixed-h", "--depth", "2", "--x0", "3/2"]).code, 2);
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("h.is");
    std::fs::write(&set, "IS v1 1\n1/4 1/2\n").unwrap();
    let set = set.to_str().unwrap();
    assert_eq!(go(&["geps", set, "--interval", "0,1", "--epsilon", "1/3"]).code, 0);
    assert_eq!(go(&["geps", set, "--interval", "0,1", "--epsilon", "2"]).code, 2);
    assert_eq!(go(&["construct", "fixed-h", "--depth", "12"]).code, 3);
    assert_eq!(go(&["verify", "/nonexistent/file"]).code, 74);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        &["diverge", "--levels", "4", "--depth", "8"][..],
        &["seed", "show", "fixed-h"],
        &["gmax", "ornstein-g", "--depth", "6"],
        &["bprime", "--levels", "1", "--enclosure-depth", "12"],
    ] {
        let (a, b) = (go(args), go(args));
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.contains("elapsed"));
    }
}

#[test]
fn construct_writes_a_readable_function() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g1.pl");
    let o = go(&["--out", out.to_str().unwrap(), "construct", "ornstein-g", "--depth", "1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let f = read_pl(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(f.segment_count(), 25);
}

#[test]
fn csv_output_has_an_exact_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("div.csv");
    let o = go(&["--format", "csv", "--out", out.to_str().unwrap(), "diverge", "--levels", "3", "--depth", "4"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let csv = std::fs::read_to_string(&out).unwrap();
    let exact = std::fs::read_to_string(dir.path().join("div.csv.exact")).unwrap();
    assert!(csv.starts_with("# approximate"));
    assert!(exact.contains("-5/3"));
    assert_eq!(csv.lines().count(), exact.lines().count() + 1);
}

#[test]
fn written_artifacts_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in [
        ("cert.txt", &["gmax", "ornstein-g", "--depth", "5"][..]),
        ("bprime.txt", &["bprime", "--levels", "1", "--enclosure-depth", "12"]),
        ("game.txt", &["game", "--rounds", "1", "--samples", "5"]),
    ] {
        let path = dir.path().join(name);
        let mut argv = vec!["--out", path.to_str().unwrap()];
        argv.extend_from_slice(args);
        let o = go(&argv);
        assert_eq!(o.code, 0, "{name}: {}", o.stderr);
        let v = go(&["verify", path.to_str().unwrap(), "--samples", "5"]);
        assert_eq!(v.code, 0, "{name}: {}{}", v.stdout, v.stderr);
    }
}

#[test]
fn corrupted_artifacts_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "CERT v1 1\n0 1 x\n").unwrap();
    assert_eq!(go(&["verify", path.to_str().unwrap()]).code, 2);
    std::fs::write(&path, "NOPE\n").unwrap();
    assert_eq!(go(&["verify", path.to_str().unwrap()]).code, 2);
}

#[test]
fn shallow_enclosure_fails_honestly() {
    let o = go(&["bprime", "--levels", "1", "--enclosure-depth", "8"]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("inconclusive, needed depth = 9"));
}
