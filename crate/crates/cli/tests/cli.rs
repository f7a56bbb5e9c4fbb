use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const TINY: &str = "experiment_type_num = 4
pop_size = 8
num_generations = 2
elite_size = 4
s_xspan = 3
s_yspan = 3
min_s_xspan = 2
min_s_yspan = 2
prob_fusion = 0.3
num_runs = 2
rng_seed = 5
";

fn symlife(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symlife"))
        .args(args)
        .current_dir(cwd)
        .env_remove("SYMLIFE_OUTPUT_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_prints_canonical_config() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("a.cfg"), TINY).unwrap();
    let out = symlife(&["validate", "a.cfg"], tmp.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("pop_size = 8\n"));
    assert!(text.contains("symbiosis_flag = 0\n"));

    fs::write(tmp.path().join("b.cfg"), text).unwrap();
    assert_eq!(stdout(&symlife(&["validate", "b.cfg"], tmp.path())), stdout(&out));
}

#[test]
fn bad_input_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("bad.cfg"), "pop_size = many\n").unwrap();
    let out = symlife(&["validate", "bad.cfg"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pop_size"));

    assert_eq!(symlife(&["validate", "missing.cfg"], tmp.path()).status.code(), Some(2));
    assert_eq!(symlife(&["frobnicate"], tmp.path()).status.code(), Some(1));
    assert_eq!(symlife(&["--help"], tmp.path()).status.code(), Some(0));
}

#[test]
fn run_measure_report_pipeline() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    fs::write(dir.join("tiny.cfg"), TINY).unwrap();

    let run = symlife(&["run", "tiny.cfg", "--output-dir", "a", "-q"], dir);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(stdout(&run).trim(), Path::new("a").join("layer4-s5").display().to_string());
    let again = symlife(&["run", "tiny.cfg", "--output-dir", "a", "-q"], dir);
    assert_eq!(again.status.code(), Some(2));
    assert!(symlife(&["run", "tiny.cfg", "--output-dir", "b", "-q"], dir).status.success());
    for run in ["run-00", "run-01"] {
        for file in ["archive.csv", "fusion_events.csv", "metrics.csv", "champion.seed"] {
            let a = fs::read(dir.join("a/layer4-s5").join(run).join(file)).unwrap();
            let b = fs::read(dir.join("b/layer4-s5").join(run).join(file)).unwrap();
            assert_eq!(a, b, "{run}/{file}");
        }
    }

    let batch = "a/layer4-s5";
    let m = symlife(&["measure", batch, "--measure", "vs-random", "--opponents", "4", "-o", "vsr.csv"], dir);
    assert!(m.status.success(), "{}", String::from_utf8_lossy(&m.stderr));
    let m = symlife(&["measure", batch, "--measure", "vs-past-winners", "-o", "pw.csv"], dir);
    assert!(m.status.success());
    let m = symlife(&["measure", batch, "--measure", "vs-patterns", "--games", "2"], dir);
    assert!(m.status.success());
    assert!(stdout(&m).starts_with("pattern,area,layer,games,win_percent\n"));
    assert!(stdout(&m).contains("average,,layer4,"));
    let bad = symlife(&["measure", batch, "--measure", "vs-nobody"], dir);
    assert_eq!(bad.status.code(), Some(1));

    let r = symlife(
        &["report", "vsr.csv", "pw.csv", "a/layer4-s5/run-00/metrics.csv", "--out", "rep"],
        dir,
    );
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    assert!(fs::read_dir(dir.join("rep")).unwrap().any(|e| e.unwrap().path().extension().is_some_and(|x| x == "svg")));
}
