use std::path::Path;
use std::process::{Command, Output};

use rgsv::io::{read_report, ReportFormat};
use rgsv::{ComparativeReport, GsvSpectrum};

fn rgsv(args: &[&str], seed_env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rgsv"));
    cmd.args(args).env_remove("RGSV_SEED");
    if let Some(s) = seed_env {
        cmd.env("RGSV_SEED", s);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "failed: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn synth_then_gsv_recovers_the_truth() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = rgsv(&["synth", "--synth", "60,50,40", "--seed", "3", "--format", "json", "--out", d], None);
    stdout(&o);
    let g1 = dir.path().join("g1.mtx");
    let g2 = dir.path().join("g2.mtx");
    let truth: GsvSpectrum = read_report(dir.path().join("truth.json"), ReportFormat::Json).unwrap();

    let out = dir.path().join("gsv.json");
    let o = rgsv(
        &[
            "gsv",
            "--g1",
            g1.to_str().unwrap(),
            "--g2",
            g2.to_str().unwrap(),
            "--rel-tol",
            "1e-12",
            "--blocksize",
            "8",
            "--format",
            "json",
            "--out",
            out.to_str().unwrap(),
        ],
        None,
    );
    stdout(&o);
    let got: GsvSpectrum = read_report(&out, ReportFormat::Json).unwrap();
    assert!(got.max_deviation(&truth) <= 1e-8);

    let report = dir.path().join("cmp.csv");
    let o = rgsv(
        &[
            "compare",
            "--g1",
            g1.to_str().unwrap(),
            "--g2",
            g2.to_str().unwrap(),
            "--out",
            report.to_str().unwrap(),
        ],
        None,
    );
    stdout(&o);
    let r: ComparativeReport = read_report(&report, ReportFormat::Csv).unwrap();
    assert_eq!(r.n(), 40);
    assert!(r.spectrum.max_deviation(&truth) <= 1e-8);
}

#[test]
fn seed_from_environment_is_deterministic() {
    let args = ["compare", "--synth", "40,40,30", "--blocksize", "4", "--format", "json"];
    let a = stdout(&rgsv(&args, Some("11")));
    let b = stdout(&rgsv(&args, Some("11")));
    assert_eq!(a, b);
    let mut flagged = args.to_vec();
    flagged.extend(["--seed", "11"]);
    assert_eq!(stdout(&rgsv(&flagged, None)), a);
}

#[test]
fn every_subcommand_runs_on_a_synthetic_pair() {
    for sub in ["gsv", "compare", "extract", "bounds"] {
        let text = stdout(&rgsv(&[sub, "--synth", "30,25,20", "--seed", "1"], None));
        assert!(!text.trim().is_empty(), "{sub} printed nothing");
    }
    let text = stdout(&rgsv(&["bench", "--synth", "30,25,20", "--reps", "2"], None));
    assert_eq!(text.matches("randomized").count(), 2);
    assert_eq!(text.matches("direct").count(), 2);
}

#[test]
fn extract_writes_its_basis() {
    let dir = tempfile::tempdir().unwrap();
    let basis = dir.path().join("q.mtx");
    let o = rgsv(
        &["extract", "--synth", "30,25,20", "--which", "2", "--basis-out", basis.to_str().unwrap()],
        None,
    );
    stdout(&o);
    let text = std::fs::read_to_string(&basis).unwrap();
    assert!(text.starts_with("%%MatrixMarket matrix array real general"));
}

#[test]
fn exit_codes_follow_the_error_category() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_owned();

    let o = rgsv(&["gsv", "--g1", &p("none1.mtx"), "--g2", &p("none2.mtx")], None);
    assert_eq!(o.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[io]"));

    write(&dir.path().join("bad.mtx"), "%%MatrixMarket matrix array real general\n2 2\n1\n2\nx\n4\n");
    write(&dir.path().join("ok.mtx"), "%%MatrixMarket matrix array real general\n2 2\n1\n0\n0\n1\n");
    let o = rgsv(&["gsv", "--g1", &p("bad.mtx"), "--g2", &p("ok.mtx")], None);
    assert_eq!(o.status.code(), Some(4));

    write(&dir.path().join("wide.mtx"), "%%MatrixMarket matrix array real general\n1 3\n1\n2\n3\n");
    let o = rgsv(&["gsv", "--g1", &p("wide.mtx"), "--g2", &p("ok.mtx")], None);
    assert_eq!(o.status.code(), Some(2));

    write(&dir.path().join("zero.mtx"), "%%MatrixMarket matrix array real general\n2 2\n0\n0\n0\n0\n");
    let o = rgsv(&["gsv", "--g1", &p("zero.mtx"), "--g2", &p("zero.mtx")], None);
    assert_eq!(o.status.code(), Some(3));

    let o = rgsv(&["gsv"], None);
    assert_eq!(o.status.code(), Some(2));
    let o = rgsv(&["synth", "--synth", "5,5,20", "--out", &p("s")], None);
    assert_eq!(o.status.code(), Some(2));
}
