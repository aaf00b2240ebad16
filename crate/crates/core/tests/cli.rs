use std::process::{Command, Output};

fn yf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yf")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = yf(args);
    assert!(out.status.success(), "yf {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn scalar_commands() {
    assert_eq!(stdout(&["f", "21221", "0", "0"]), "1/720\n");
    assert_eq!(stdout(&["dcount", "eps", "21221", "--method", "both"]), "56 56 MATCH\n");
    assert_eq!(stdout(&["dcount", "21", "21221", "--method", "dp"]), stdout(&["dcount", "21", "21221"]));
    assert_eq!(stdout(&["g", "21221"]), "2 4 7\n");
    assert_eq!(stdout(&["q", "122"]), "1/40\n");
    assert_eq!(stdout(&["pi", "221"]), "3/8\n");
    assert_eq!(stdout(&["dprime", "eps", "--w", "212", "--beta", "1/3"]), "1\n");
}

#[test]
fn measure_sums_to_one() {
    let text = stdout(&["--format", "csv", "measure", "--w", "eps", "--beta", "1/2", "--n", "3"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("word,mass"));
    let masses: Vec<&str> = lines.map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(masses, vec!["1/3", "1/12", "7/12"]);
}

#[test]
fn level_and_dbeta_tables() {
    let text = stdout(&["--format", "csv", "level", "3"]);
    assert_eq!(text, "word,length\n111,3\n12,2\n21,2\n");
    let text = stdout(&["--format", "csv", "dbeta", "2"]);
    assert_eq!(text, "power,coefficient\n0,1/2\n1,0\n2,-1/2\n");
}

#[test]
fn magic_symbolic_csv() {
    let text = stdout(&["--format", "csv", "magic", "--w", "2", "--beta", "1/2", "--n", "5", "--symbolic"]);
    assert!(text.starts_with("word,0,1,2,3,4,5\n"));
    assert!(text.contains("\n122,(3/40;eps;0;3),0,(3/6;2;2;2),0,(3/1;22;4;1),(3/1;122;5;0)\n"), "{text}");
}

#[test]
fn sweep_rows() {
    let text = stdout(&[
        "--format", "csv", "sweep", "--mode", "suffix", "--w", "22", "--beta", "1/2", "--l", "0", "--n", "2..8..3",
    ]);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.ends_with(",0,1,exact")), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["f", "13", "0", "0"],
        vec!["f", "21", "9", "0"],
        vec!["dcount", "21", "2"],
        vec!["measure", "--w", "eps", "--beta", "0", "--n", "3"],
        vec!["measure", "--w", "eps", "--beta", "3/2", "--n", "3"],
        vec!["measure", "--w", "eps", "--beta", "0.5", "--n", "3"],
        vec!["sweep", "--mode", "pi", "--w", "eps", "--beta", "1/2", "--l", "1", "--n", "4"],
        vec!["sweep", "--mode", "suffix", "--w", "eps", "--beta", "1/2", "--l", "1", "--n", "8..4"],
        vec!["verify", "--max-rank", "99"],
        vec!["no-such-command"],
    ] {
        assert_eq!(yf(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_passes_small_rank() {
    let out = yf(&["verify", "--max-rank", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("evtuh5"));
    assert!(text.ends_with("0 failed\n"), "{text}");
}

#[test]
fn output_directory_from_environment() {
    let dir = std::env::temp_dir().join(format!("yf-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_yf"))
        .env("YF_OUT_DIR", &dir)
        .args(["--format", "csv", "--out", "level4.csv", "level", "4"])
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(dir.join("level4.csv")).unwrap();
    assert_eq!(text.lines().count(), 6);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn jobs_option_is_accepted() {
    assert_eq!(stdout(&["--jobs", "2", "q", "21"]), "1/3\n");
    assert_eq!(yf(&["--jobs", "0", "q", "21"]).status.code(), Some(2));
}
