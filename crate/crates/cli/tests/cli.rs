//! Behavior of the qconv binary: exit codes, file handling, summary
//! formats, determinism.

use std::path::Path;
use std::process::{Command, Output};

use qconv_core::sample::Sampler;
use qconv_core::{io, QField, Quaternion};

fn qconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qconv"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn write_random_ppm(path: &Path, n: usize, seed: u64) {
    let mut s = Sampler::new(seed);
    let field = QField::from_fn(n, n, |_, _| {
        let byte = |v: f64| ((v + 1.0) * 127.5).floor().clamp(0.0, 255.0) / 255.0;
        Quaternion::pure(byte(s.uniform()), byte(s.uniform()), byte(s.uniform()))
    });
    let (bytes, _) = io::encode_ppm(&field);
    std::fs::write(path, bytes).unwrap();
}

#[test]
fn transform_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("input.ppm");
    let spec = dir.path().join("spectrum.qf01");
    let back = dir.path().join("back.qf01");
    write_random_ppm(&img, 16, 9001);

    let forward = qconv(&[
        "transform",
        "--input",
        img.to_str().unwrap(),
        "--output",
        spec.to_str().unwrap(),
        "--roots",
        "gray-line",
    ]);
    assert_eq!(code(&forward), 0, "stderr: {}", stderr_of(&forward));
    assert!(stdout_of(&forward).contains("transform n1=16 n2=16"));

    let inverse = qconv(&[
        "transform",
        "--inverse",
        "--input",
        spec.to_str().unwrap(),
        "--output",
        back.to_str().unwrap(),
        "--roots",
        "gray-line",
    ]);
    assert_eq!(code(&inverse), 0);

    let original = io::read_ppm(&img).unwrap();
    let recovered = io::read_field(&back).unwrap();
    assert!(recovered.max_abs_diff(&original) <= 1e-10);
}

#[test]
fn fast_and_direct_transform_agree() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("field.qf01");
    let direct = dir.path().join("direct.qf01");
    let fast = dir.path().join("fast.qf01");
    let mut s = Sampler::new(9002);
    io::write_field(&input, &s.field(16, 16)).unwrap();

    let args = |out: &Path, extra: &[&str]| {
        let mut v = vec![
            "transform".to_string(),
            "--input".into(),
            input.to_str().unwrap().into(),
            "--output".into(),
            out.to_str().unwrap().into(),
            "--roots".into(),
            "0.2,-0.5,1.0;1.0,0.3,0.0".into(),
        ];
        v.extend(extra.iter().map(|s| s.to_string()));
        v
    };
    let run_direct = qconv(
        &args(&direct, &[])
            .iter()
            .map(String::as_str)
            .collect::<Vec<_>>(),
    );
    let run_fast = qconv(
        &args(&fast, &["--fast"])
            .iter()
            .map(String::as_str)
            .collect::<Vec<_>>(),
    );
    assert_eq!(code(&run_direct), 0);
    assert_eq!(code(&run_fast), 0);

    let a = io::read_field(&direct).unwrap();
    let b = io::read_field(&fast).unwrap();
    assert!(a.max_abs_diff(&b) <= 1e-9);
}

#[test]
fn delta_input_transforms_to_constant_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("delta.qf01");
    let output = dir.path().join("spectrum.qf01");
    io::write_field(&input, &QField::delta(16, 16)).unwrap();

    let out = qconv(&[
        "transform",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
        "--roots",
        "perp-ij",
    ]);
    assert_eq!(code(&out), 0);
    let spectrum = io::read_field(&output).unwrap();
    let flat = QField::constant(16, 16, Quaternion::real(1.0 / 16.0));
    assert!(spectrum.max_abs_diff(&flat) <= 1e-12);
}

#[test]
fn spatial_convolution_with_delta_kernel_returns_the_image() {
    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("img.ppm");
    let kernel = dir.path().join("delta.qf01");
    let output = dir.path().join("out.ppm");
    write_random_ppm(&img, 8, 9003);
    io::write_field(&kernel, &QField::delta(8, 8)).unwrap();

    let out = qconv(&[
        "convolve",
        "--f",
        img.to_str().unwrap(),
        "--g",
        kernel.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
        "--method",
        "spatial",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let original = io::read_ppm(&img).unwrap();
    let convolved = io::read_ppm(&output).unwrap();
    assert_eq!(original, convolved);
}

#[test]
fn thm41_check_reports_tiny_deviation() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.qf01");
    let g = dir.path().join("g.qf01");
    let output = dir.path().join("out.qf01");
    let mut s = Sampler::new(9004);
    io::write_field(&f, &s.field(8, 8)).unwrap();
    io::write_field(&g, &s.field(8, 8)).unwrap();

    let out = qconv(&[
        "convolve",
        "--f",
        f.to_str().unwrap(),
        "--g",
        g.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
        "--method",
        "thm41",
        "--roots",
        "0.3,0.5,-0.8",
        "--check",
    ]);
    assert_eq!(code(&out), 0);
    let stdout = stdout_of(&out);
    let err_field = stdout
        .split_whitespace()
        .find_map(|kv| kv.strip_prefix("check_max_err="))
        .expect("check flag prints deviation");
    let deviation: f64 = err_field.parse().unwrap();
    assert!(deviation <= 1e-9, "deviation {deviation}");
}

#[test]
fn thm32_with_equal_roots_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.qf01");
    let mut s = Sampler::new(9005);
    io::write_field(&f, &s.field(4, 4)).unwrap();

    let out = qconv(&[
        "convolve",
        "--f",
        f.to_str().unwrap(),
        "--g",
        f.to_str().unwrap(),
        "--output",
        dir.path().join("out.qf01").to_str().unwrap(),
        "--method",
        "thm32",
        "--roots",
        "equal-i",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("not perpendicular"));
}

#[test]
fn thm31_with_two_distinct_roots_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.qf01");
    let mut s = Sampler::new(9006);
    io::write_field(&f, &s.field(4, 4)).unwrap();

    let out = qconv(&[
        "convolve",
        "--f",
        f.to_str().unwrap(),
        "--g",
        f.to_str().unwrap(),
        "--output",
        dir.path().join("out.qf01").to_str().unwrap(),
        "--method",
        "thm31",
        "--roots",
        "perp-ij",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("single root"));
}

#[test]
fn missing_and_malformed_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = qconv(&[
        "transform",
        "--input",
        dir.path().join("nope.qf01").to_str().unwrap(),
        "--output",
        dir.path().join("out.qf01").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);

    let junk = dir.path().join("junk.bin");
    std::fs::write(&junk, b"not a field").unwrap();
    let out = qconv(&[
        "transform",
        "--input",
        junk.to_str().unwrap(),
        "--output",
        dir.path().join("out.qf01").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("neither QF01 nor"));
}

#[test]
fn verify_algebra_ignores_grid_size_and_exits_0() {
    let out = qconv(&["verify", "--suite", "algebra", "--size", "1"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("result=pass"));
}

#[test]
fn verify_reports_are_deterministic() {
    let args = ["verify", "--suite", "thm31", "--seed", "7", "--size", "4"];
    let first = qconv(&args);
    let second = qconv(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(stdout_of(&first), stdout_of(&second));
}

#[test]
fn corrupted_term_fails_with_exit_1_and_names_the_term() {
    let out = qconv(&[
        "verify",
        "--suite",
        "thm41",
        "--size",
        "4",
        "--corrupt-term",
        "5",
    ]);
    assert_eq!(code(&out), 1);
    let stdout = stdout_of(&out);
    assert!(stdout.contains("status=fail"));
    assert!(stdout.contains("failing_term=5"));
}

#[test]
fn thread_cap_does_not_change_results() {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_qconv"))
            .args(["verify", "--suite", "thm32", "--seed", "11", "--size", "8"])
            .env("QCONV_THREADS", threads)
            .output()
            .expect("binary should run");
        assert_eq!(code(&out), 0);
        stdout_of(&out)
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn bench_csv_is_pinned_and_deterministic() {
    let errs = |stdout: &str| -> Vec<(String, String)> {
        stdout
            .lines()
            .skip(1)
            .map(|line| {
                let cols: Vec<&str> = line.split(',').collect();
                assert_eq!(cols.len(), 4, "line {line}");
                (format!("{},{}", cols[0], cols[1]), cols[3].to_string())
            })
            .collect()
    };

    let once = qconv(&["bench", "--sizes", "8", "--repeat", "1"]);
    let five = qconv(&["bench", "--sizes", "8", "--repeat", "5"]);
    assert_eq!(code(&once), 0);
    assert_eq!(code(&five), 0);

    let once_out = stdout_of(&once);
    let five_out = stdout_of(&five);
    assert_eq!(once_out.lines().next(), Some("size,method,mean_ns,max_err"));
    assert_eq!(five_out.lines().next(), Some("size,method,mean_ns,max_err"));
    // timing columns vary, error columns must not
    assert_eq!(errs(&once_out), errs(&five_out));

    let rows = errs(&once_out);
    let methods: Vec<&str> = rows.iter().map(|(k, _)| k.as_str()).collect();
    assert_eq!(
        methods,
        vec!["8,spatial", "8,thm41_naive", "8,thm41_cached"]
    );
    for (key, err) in &rows {
        let err: f64 = err.parse().unwrap();
        assert!(err <= 1e-9, "{key} deviates by {err}");
    }
}

#[test]
fn verify_all_suites_pass_at_default_gate() {
    let out = qconv(&["verify", "--suite", "all", "--seed", "42", "--size", "4"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let stdout = stdout_of(&out);
    assert!(stdout.contains("result=pass"));
    assert!(!stdout.contains("status=fail"));
}

#[test]
fn verify_rejects_bad_size_and_tolerance() {
    let out = qconv(&["verify", "--size", "0"]);
    assert_eq!(code(&out), 2);
    let out = qconv(&["verify", "--tolerance", "-1.0"]);
    assert_eq!(code(&out), 2);
}
