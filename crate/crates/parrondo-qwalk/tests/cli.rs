//! End-to-end tests of the compiled binary: exit codes, file outputs,
//! config merging and reproducibility.

use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_parrondo-qwalk");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Non-comment lines after the header row.
fn data_rows(csv: &str) -> Vec<&str> {
    csv.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .skip(1)
        .collect()
}

#[test]
fn run_reference_game_produces_full_series() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("abb.csv");
    let status = run(&[
        "run",
        "--sequence", "ABB",
        "--coin-a", "2.395,0.513,0.909",
        "--coin-b", "2.611,1.176,2.313",
        "--phi", "1.5707963267948966",
        "--theta", "0.7853981633974483",
        "--varphi", "4.71238898038469",
        "--steps", "100",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(status.status.success(), "{}", stderr(&status));
    let csv = std::fs::read_to_string(&out).unwrap();
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 100);
    let last: Vec<&str> = rows.last().unwrap().split(',').collect();
    assert_eq!(last[0], "100");
    let final_ex: f64 = last[1].parse().unwrap();
    assert!(final_ex > 0.0, "final E[x] = {final_ex}");
}

#[test]
fn missing_phi_exits_2_and_names_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let result = run(&[
        "run",
        "--sequence", "AB",
        "--coin-a", "1,1,1",
        "--coin-b", "1,1,1",
        "--theta", "0.5",
        "--varphi", "0.5",
        "--steps", "5",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(2));
    assert!(stderr(&result).contains("--phi"), "{}", stderr(&result));
    assert!(!out.exists());
}

#[test]
fn unknown_preset_exits_2_and_lists_valid_names() {
    let result = run(&["sweep", "--preset", "nonsense", "--out", "/tmp/x.csv"]);
    assert_eq!(result.status.code(), Some(2));
    let msg = stderr(&result);
    assert!(msg.contains("nonsense"));
    assert!(msg.contains("phase-scan"), "{msg}");
    assert!(msg.contains("beta-pair-scan"), "{msg}");
}

#[test]
fn bad_angle_and_bad_sequence_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let base = |seq: &str, phi: &str| {
        run(&[
            "run",
            "--sequence", seq,
            "--coin-a", "1,1,1",
            "--coin-b", "1,1,1",
            "--phi", phi,
            "--theta", "0.5",
            "--varphi", "0.5",
            "--steps", "5",
            "--out", out.to_str().unwrap(),
        ])
    };
    assert_eq!(base("AB", "oops").status.code(), Some(2));
    assert_eq!(base("AXB", "0").status.code(), Some(2));
}

#[test]
fn classical_analytic_prints_closed_form() {
    let result = run(&["classical", "--analytic", "--c", "0"]);
    assert!(result.status.success());
    let text = String::from_utf8_lossy(&result.stdout).into_owned();
    assert!(text.contains("stationary distribution"), "{text}");
    assert!(text.contains("0.38461538461538"), "{text}");
    assert!(text.contains("expected value"), "{text}");
}

#[test]
fn classical_bias_out_of_range_exits_2() {
    let result = run(&["classical", "--analytic", "--c", "0.2"]);
    assert_eq!(result.status.code(), Some(2));
    assert!(stderr(&result).contains("0.2"), "{}", stderr(&result));
}

#[test]
fn classical_monte_carlo_writes_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("mc.csv");
    let result = run(&[
        "classical",
        "--sequence", "A",
        "--c", "0.005",
        "--steps", "50",
        "--trials", "2000",
        "--seed", "11",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{}", stderr(&result));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.contains("step,mean_capital,stderr"));
    assert_eq!(data_rows(&csv).len(), 50);
}

#[test]
fn config_file_supplies_values_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("game.conf");
    let out_file = dir.path().join("from_config.csv");
    std::fs::write(
        &config,
        format!(
            "# reference ABB game\n\
             sequence = ABB\n\
             coin-a = 2.395,0.513,0.909\n\
             coin-b = 2.611,1.176,2.313\n\
             phi = 0\n\
             theta = 45d\n\
             varphi = 270d\n\
             steps = 10\n\
             out = {}\n",
            out_file.display()
        ),
    )
    .unwrap();

    let result = run(&["run", "--config", config.to_str().unwrap()]);
    assert!(result.status.success(), "{}", stderr(&result));
    let base = std::fs::read_to_string(&out_file).unwrap();
    assert_eq!(data_rows(&base).len(), 10);

    // --steps overrides the config value
    let result = run(&["run", "--config", config.to_str().unwrap(), "--steps", "4"]);
    assert!(result.status.success(), "{}", stderr(&result));
    let overridden = std::fs::read_to_string(&out_file).unwrap();
    assert_eq!(data_rows(&overridden).len(), 4);
}

#[test]
fn run_metadata_reconstructs_a_reproducing_command() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.csv");
    let result = run(&[
        "run",
        "--sequence", "AB",
        "--coin-a", "2.395,0.513,0.909",
        "--coin-b", "2.611,1.176,2.313",
        "--phi", "90d",
        "--theta", "45d",
        "--varphi", "270d",
        "--steps", "25",
        "--out", first.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{}", stderr(&result));
    let text = std::fs::read_to_string(&first).unwrap();
    let command_line = text
        .lines()
        .find_map(|l| l.strip_prefix("# command: "))
        .expect("command metadata present");
    let mut words = command_line.split_whitespace();
    assert_eq!(words.next(), Some("parrondo-qwalk"));
    let args: Vec<String> = words.map(String::from).collect();

    // rerun the echoed command with a fresh output path
    let second = dir.path().join("second.csv");
    let args: Vec<String> = args
        .iter()
        .map(|a| {
            if a == first.to_str().unwrap() {
                second.to_str().unwrap().to_string()
            } else {
                a.clone()
            }
        })
        .collect();
    let rerun = Command::new(BIN).args(&args).output().unwrap();
    assert!(rerun.status.success(), "{}", stderr(&rerun));

    let strip_command = |t: &str| -> String {
        t.lines()
            .filter(|l| !l.starts_with("# command:"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(
        strip_command(&text),
        strip_command(&std::fs::read_to_string(&second).unwrap())
    );
}

#[test]
fn custom_sweep_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grid.csv");
    let svg = dir.path().join("grid.svg");
    let result = run(&[
        "sweep",
        "--sequence", "ABB",
        "--coin-a", "2.395,0.513,0.909",
        "--coin-b", "2.611,1.176,2.313",
        "--phi", "0",
        "--theta", "45d",
        "--varphi", "270d",
        "--steps", "10",
        "--axis", "phi:0:6.283185307179586:8",
        "--axis", "theta:0:3.141592653589793:8",
        "--record", "final",
        "--out", out.to_str().unwrap(),
        "--svg", svg.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{}", stderr(&result));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.contains("phi,theta,expected_position,delta_p,entropy"));
    assert_eq!(data_rows(&csv).len(), 64);
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<svg"));
}

#[test]
fn preset_sweep_identical_across_thread_counts_and_runs() {
    let dir = tempfile::tempdir().unwrap();
    // the `# command:` metadata line embeds the per-render output path;
    // strip it so the comparison is over the physics payload bytes
    let render = |name: &str, threads: &str| -> Vec<(String, Vec<u8>)> {
        let sub = dir.path().join(name);
        std::fs::create_dir(&sub).unwrap();
        let out = sub.join("scan.csv");
        let result = run_env(
            &["sweep", "--preset", "beta-scan", "--out", out.to_str().unwrap()],
            &[("PARRONDO_QWALK_THREADS", threads)],
        );
        assert!(result.status.success(), "{}", stderr(&result));
        read_dir_sorted(&sub)
            .into_iter()
            .map(|(file, bytes)| {
                let text = String::from_utf8(bytes).unwrap();
                let kept: Vec<&str> = text
                    .lines()
                    .filter(|l| !l.starts_with("# command:"))
                    .collect();
                (file, kept.join("\n").into_bytes())
            })
            .collect()
    };
    let one = render("t1", "1");
    let four = render("t4", "4");
    let eight = render("t8", "8");
    let again = render("t4b", "4");
    assert_eq!(one, four);
    assert_eq!(four, eight);
    assert_eq!(four, again);
    assert_eq!(one.len(), 2, "beta-scan has a coin A and a coin B panel");
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut entries: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    entries.sort();
    entries
}

#[test]
fn threads_flag_overrides_env() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("line.csv");
    let result = run_env(
        &[
            "sweep",
            "--sequence", "A",
            "--coin-a", "2.395,0.513,0.909",
            "--coin-b", "2.611,1.176,2.313",
            "--phi", "0",
            "--theta", "45d",
            "--varphi", "270d",
            "--steps", "5",
            "--axis", "phi:0:6.28:4",
            "--out", out.to_str().unwrap(),
            "--threads", "2",
        ],
        &[("PARRONDO_QWALK_THREADS", "not-a-number")],
    );
    assert!(result.status.success(), "{}", stderr(&result));
    assert_eq!(data_rows(&std::fs::read_to_string(&out).unwrap()).len(), 4);
}

#[test]
fn report_generates_artifacts_for_every_preset() {
    let dir = tempfile::tempdir().unwrap();
    let result = run(&["report", "--out-dir", dir.path().to_str().unwrap(), "--threads", "0"]);
    assert!(result.status.success(), "{}", stderr(&result));
    let names: Vec<String> = read_dir_sorted(dir.path()).into_iter().map(|(n, _)| n).collect();
    for expected in [
        "phase-scan_abb.csv",
        "phase-scan_abb.svg",
        "phase-lines_abb_phi_pi2.csv",
        "initial-state-scan_abb.csv",
        "initial-state-scan_abb.svg",
        "beta-scan_coin_a.csv",
        "beta-pair-scan_abb.svg",
        "alpha-scan_coin_a.csv",
        "gamma-scan_coin_b.csv",
        "alpha-gamma-scan_coin_a.csv",
        "alpha-gamma-scan_coin_b.svg",
    ] {
        assert!(
            names.iter().any(|n| n == expected),
            "missing {expected}; have {names:?}"
        );
    }
}
