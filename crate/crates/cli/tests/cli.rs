use std::path::Path;
use std::process::{Command, Output};

fn feasor(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_feasor"))
        .args(args)
        .env_remove("FEASOR_SEED")
        .current_dir(dir)
        .output()
        .expect("run feasor")
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn demo_2d_traces_the_geometric_rate() {
    let dir = tempfile::tempdir().unwrap();
    let out = feasor(
        &["demo-2d", "--max-iters", "30", "-o", "trace.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(
        stdout.starts_with("status=max-iterations iterations=30"),
        "{stdout}"
    );
    let (header, rows) = read_csv(&dir.path().join("trace.csv"));
    assert_eq!(header, ["k", "residual", "coord_0", "coord_1"]);
    assert_eq!(rows.len(), 31);
    for row in rows {
        let k: f64 = row[0].parse().unwrap();
        let (x, y): (f64, f64) = (row[2].parse().unwrap(), row[3].parse().unwrap());
        assert!((x.hypot(y) - 2f64.powf(-k / 2.0)).abs() <= 1e-12);
    }
}

#[test]
fn demo_2d_reports_divergence_for_parallel_lines() {
    let dir = tempfile::tempdir().unwrap();
    let out = feasor(
        &[
            "demo-2d",
            "--set-b",
            "line:0,1,1",
            "--x0",
            "0,0",
            "--divergence-radius",
            "10",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("status=diverging"), "{stdout}");
    assert!(stdout.contains("\n11,1,0,11\n"), "{stdout}");
}

#[test]
fn solve_queens_prints_a_verified_board() {
    let dir = tempfile::tempdir().unwrap();
    let out = feasor(
        &[
            "solve-queens",
            "--n",
            "8",
            "--seed",
            "1",
            "--format",
            "json",
            "-o",
            "q.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("status=solution-found"), "{stdout}");
    let board: Vec<&str> = stdout.lines().skip(1).collect();
    assert_eq!(board.len(), 8);
    for line in &board {
        assert_eq!(line.len(), 8);
        assert_eq!(line.matches('1').count(), 2);
    }
    let v: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("q.json")).unwrap()).unwrap();
    assert_eq!(v["meta"]["command"], "solve-queens");
    assert_eq!(v["meta"]["config"]["n"], 8);
    assert_eq!(v["meta"]["config"]["formulation"], 3);
    assert!(v["rows"].as_array().unwrap().len() > 1);
}

#[test]
fn seed_environment_variable_overrides_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let run = |seed_flag: &str, env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_feasor"));
        cmd.args([
            "solve-queens",
            "--n",
            "6",
            "--max-iters",
            "200",
            "--seed",
            seed_flag,
        ])
        .args(["--format", "json", "-o", "q.json"])
        .current_dir(dir.path())
        .env_remove("FEASOR_SEED");
        if let Some(e) = env {
            cmd.env("FEASOR_SEED", e);
        }
        let out = cmd.output().unwrap();
        let json = std::fs::read(dir.path().join("q.json")).ok();
        (
            out,
            json.map(|j| serde_json::from_slice::<serde_json::Value>(&j).unwrap()),
        )
    };
    let overridden = run("1", Some("42")).1.unwrap();
    assert_eq!(overridden["meta"]["config"]["seed"], 42);
    assert_eq!(overridden["rows"], run("42", None).1.unwrap()["rows"]);
    assert_ne!(overridden["rows"], run("1", None).1.unwrap()["rows"]);
    assert_eq!(run("1", Some("abc")).0.status.code(), Some(2));
}

#[test]
fn bench_csv_has_one_row_per_trial() {
    let dir = tempfile::tempdir().unwrap();
    let out = feasor(
        &[
            "bench-queens",
            "--sizes",
            "5,6",
            "--formulations",
            "1,4",
            "--trials",
            "3",
            "--max-iters",
            "2000",
            "-o",
            "b.csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = read_csv(&dir.path().join("b.csv"));
    assert_eq!(
        header,
        [
            "n",
            "formulation",
            "trial",
            "seed",
            "solved",
            "iterations",
            "seconds"
        ]
    );
    assert_eq!(rows.len(), 2 * 2 * 3);
    assert!(rows.iter().all(|r| r.len() == header.len()));
    let keys: Vec<(u64, u8, u64)> = rows
        .iter()
        .map(|r| {
            (
                r[0].parse().unwrap(),
                r[1].parse().unwrap(),
                r[2].parse().unwrap(),
            )
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(rows.iter().all(|r| r[4] == "true" || r[4] == "false"));
}

#[test]
fn solve_moments_writes_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let out = feasor(
        &[
            "solve-moments",
            "--mu",
            "0.5",
            "--var",
            "0.05",
            "--nodes",
            "51",
            "--trace-stride",
            "100",
            "--snapshot-dir",
            "snaps",
            "-o",
            "density.csv",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let (header, rows) = read_csv(&dir.path().join("density.csv"));
    assert_eq!(header, ["t", "value"]);
    assert_eq!(rows.len(), 51);
    let mut snaps: Vec<_> = std::fs::read_dir(dir.path().join("snaps"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    snaps.sort();
    assert_eq!(snaps[0], "density_00000000.csv");
    assert!(snaps.len() >= 2);
    assert_eq!(
        read_csv(&dir.path().join("snaps").join(&snaps[1])).1.len(),
        51
    );
}

#[test]
fn exit_codes_distinguish_failure_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // Configuration errors.
    assert_eq!(feasor(&["solve-queens"], d).status.code(), Some(2));
    assert_eq!(
        feasor(&["solve-queens", "--n", "2"], d).status.code(),
        Some(2)
    );
    assert_eq!(
        feasor(&["solve-moments", "--mu", "0.5", "--var", "-1"], d)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        feasor(
            &[
                "solve-moments",
                "--mu",
                "0.5",
                "--var",
                "0.05",
                "--algorithm",
                "magic"
            ],
            d
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        feasor(
            &[
                "solve-moments",
                "--mu",
                "0.5",
                "--var",
                "0.05",
                "--snapshot-dir",
                "s"
            ],
            d
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        feasor(&["demo-2d", "--set-a", "circle:1"], d).status.code(),
        Some(2)
    );
    // Solver failure: the iteration budget runs out.
    assert_eq!(
        feasor(&["solve-queens", "--n", "10", "--max-iters", "1"], d)
            .status
            .code(),
        Some(1)
    );
    // I/O failure.
    assert_eq!(
        feasor(&["demo-2d", "-o", "missing/dir/out.csv"], d)
            .status
            .code(),
        Some(3)
    );
    assert_eq!(feasor(&["--help"], d).status.code(), Some(0));
}
