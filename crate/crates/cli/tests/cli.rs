use std::path::Path;
use std::process::{Command, Output};

use qwalk_cli::{import_sequence, RunConfig};
use qwalk_core::{dense_oracle_evolve, evolve, make_local_state, QubitSpec};

fn qwalk(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn read(path: impl AsRef<Path>) -> String {
    std::fs::read_to_string(path).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn zero_steps_gives_single_zero_row() {
    let dir = tempfile::tempdir().unwrap();
    for extra in [&["--local"][..], &["--sigma0", "3"][..]] {
        let mut args = vec!["run", "--steps", "0", "--grid-step", "0.5", "--out", "o"];
        args.extend_from_slice(extra);
        let out = qwalk(dir.path(), &args);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(read(dir.path().join("o/run.csv")), "t,mean_SE\n0,0\n");
    }
}

#[test]
fn identical_configs_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = "scenario = twice\nschedule = sddinf\nsteps = 40\ngrid_step = 0.6\nseed = 9\nrealizations = 3\nsigma0 = 2\n";
    std::fs::write(dir.path().join("c.cfg"), cfg).unwrap();
    let mut outputs = Vec::new();
    for out_dir in ["a", "b"] {
        let out = qwalk(dir.path(), &["run", "--config", "c.cfg", "--out", out_dir]);
        assert!(out.status.success());
        outputs.push(read(dir.path().join(out_dir).join("twice.csv")));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert!(outputs[0].starts_with("t,mean_SE,stderr\n"));
    assert_eq!(outputs[0].lines().count(), 42);
    assert!(!outputs[0].contains('\r'));
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    for (threads, out_dir) in [("1", "one"), ("4", "four")] {
        let out = qwalk(
            dir.path(),
            &[
                "--threads",
                threads,
                "run",
                "--schedule",
                "sdd2",
                "--steps",
                "60",
                "--grid-step",
                "0.4",
                "--out",
                out_dir,
            ],
        );
        assert!(out.status.success());
    }
    assert_eq!(
        read(dir.path().join("one/run.csv")),
        read(dir.path().join("four/run.csv"))
    );
}

#[test]
fn meta_sidecar_echoes_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = qwalk(
        dir.path(),
        &[
            "run",
            "--schedule",
            "wdd",
            "--p",
            "0.03",
            "--steps",
            "5",
            "--grid-step",
            "1",
            "--out",
            "o",
        ],
    );
    assert!(out.status.success());
    let meta = read(dir.path().join("o/run.meta"));
    for line in [
        "schedule = wdd",
        "p = 0.029999999999999999",
        "steps = 5",
        "grid_size = 28",
        "code_version = ",
    ] {
        assert!(meta.contains(line), "missing {line:?} in\n{meta}");
    }
    let config: String = meta
        .lines()
        .take_while(|l| !l.starts_with("code_version"))
        .map(|l| format!("{l}\n"))
        .collect();
    let cfg = RunConfig::parse(&config, Path::new("run.meta")).unwrap();
    assert_eq!(cfg.schedule.p, 0.03);
}

#[test]
fn pscan_edge_values() {
    let dir = tempfile::tempdir().unwrap();
    let common = [
        "--grid-step",
        "0.5",
        "--tref",
        "30",
        "--seed",
        "4",
        "--out",
        "o",
    ];
    let mut args = vec!["pscan", "--p-list", "0,0.5", "--scenario", "scan"];
    args.extend(common);
    let out = qwalk(dir.path(), &args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("argmax p = "));
    let scan = read(dir.path().join("o/scan_pscan.csv"));
    assert!(scan.starts_with("p,mean_SE_at_tref\n"));
    let scan = rows(&scan);

    for (schedule, p) in [("hadamard", 0.0), ("sdd2", 0.5)] {
        let mut args = vec![
            "run",
            "--schedule",
            schedule,
            "--steps",
            "30",
            "--scenario",
            schedule,
        ];
        args.extend(common);
        assert!(qwalk(dir.path(), &args).status.success());
        let series = rows(&read(dir.path().join(format!("o/{schedule}.csv"))));
        let row = scan.iter().find(|r| r[0] == p).unwrap();
        assert_eq!(row[1], series[30][1], "{schedule}");
    }
}

#[test]
fn exported_sequence_replays_through_dense_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let out = qwalk(
        dir.path(),
        &[
            "export-sequence",
            "--schedule",
            "sddinf",
            "--steps",
            "10",
            "--seed",
            "77",
            "--file",
            "seq.txt",
        ],
    );
    assert!(out.status.success());
    let seq = import_sequence(&dir.path().join("seq.txt")).unwrap();
    assert_eq!(seq.len(), 10);

    let s0 = make_local_state::<f64>(QubitSpec::new(1.2, 4.0), 10).unwrap();
    let mut engine = s0.clone();
    evolve(&mut engine, &seq).unwrap();
    let dense = dense_oracle_evolve(&s0, &seq).unwrap();
    for j in s0.window() {
        let (a, b) = engine.amplitude(j);
        let (da, db) = dense.amplitude(j);
        assert!((a - da).norm() < 1e-12 && (b - db).norm() < 1e-12);
    }

    // replaying the shared realization reproduces the original run
    let grid = ["--grid-step", "0.5", "--out", "o"];
    let mut args = vec![
        "run",
        "--schedule",
        "sddinf",
        "--steps",
        "10",
        "--seed",
        "77",
        "--scenario",
        "orig",
    ];
    args.extend(grid);
    assert!(qwalk(dir.path(), &args).status.success());
    let mut args = vec!["replay", "--sequence", "seq.txt", "--scenario", "again"];
    args.extend(grid);
    assert!(qwalk(dir.path(), &args).status.success());
    assert_eq!(
        read(dir.path().join("o/orig.csv")),
        read(dir.path().join("o/again.csv"))
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| qwalk(dir.path(), args).status.code();
    assert_eq!(code(&["run", "fig99"]), Some(2));
    assert_eq!(code(&["run", "--schedule", "nope"]), Some(2));
    assert_eq!(code(&["run", "--grid-step", "-1"]), Some(2));
    assert_eq!(code(&["run", "--bogus-flag"]), Some(2));
    assert_eq!(code(&["pscan", "--p-list", "1.5"]), Some(2));
    std::fs::write(dir.path().join("bad.cfg"), "steps = 10\nnonsense\n").unwrap();
    let out = qwalk(dir.path(), &["run", "--config", "bad.cfg"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.cfg:2"));
    std::fs::write(dir.path().join("blocker"), "").unwrap();
    assert_eq!(
        code(&[
            "run",
            "--steps",
            "1",
            "--grid-step",
            "1",
            "--out",
            "blocker/sub"
        ]),
        Some(3)
    );
    assert_eq!(code(&["presets"]), Some(0));
}
