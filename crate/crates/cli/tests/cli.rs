use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn wiretap(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wiretap"))
        .args(args)
        .current_dir(dir)
        .env("RUST_LOG", "warn")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn header(path: &Path) -> String {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .to_string()
}

fn solve_into(tmp: &Path, name: &str, a: &str) -> Output {
    wiretap(
        &[
            "solve", "--sigma1", "1", "--sigma2", "2", "-A", a, "-o", name,
        ],
        tmp,
    )
}

#[test]
fn solve_writes_all_files() {
    let tmp = tempfile::tempdir().unwrap();
    let out = solve_into(tmp.path(), "s", "1.5");
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let d = tmp.path().join("s");
    assert_eq!(header(&d.join("xi_profile.csv")), "x,xi_nats");
    assert_eq!(header(&d.join("input_pmf.csv")), "x,probability");
    assert_eq!(
        header(&d.join("output_pdf.csv")),
        "y,pdf_legitimate,pdf_eavesdropper,pdf_gaussian_match"
    );

    let pmf = fs::read_to_string(d.join("input_pmf.csv")).unwrap();
    let rows: Vec<(f64, f64)> = pmf
        .lines()
        .skip(1)
        .map(|l| {
            let (x, p) = l.split_once(',').unwrap();
            (x.parse().unwrap(), p.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.first().unwrap().0, -1.5);
    assert_eq!(rows.last().unwrap().0, 1.5);
    let total: f64 = rows.iter().map(|r| r.1).sum();
    assert!((total - 1.0).abs() < 1e-10);

    let pdf_rows = fs::read_to_string(d.join("output_pdf.csv"))
        .unwrap()
        .lines()
        .count();
    assert_eq!(pdf_rows, 1 + 1201);

    let sol: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("solution.json")).unwrap()).unwrap();
    assert_eq!(sol["converged"], true);
    assert_eq!(
        sol["full_support_size"].as_u64().unwrap() as usize,
        rows.len()
    );
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "solve");
    assert_eq!(manifest["seed_free"], true);
}

#[test]
fn numbers_have_at_most_twelve_significant_digits() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(code(&solve_into(tmp.path(), "s", "2")), 0);
    let text = fs::read_to_string(tmp.path().join("s/output_pdf.csv")).unwrap();
    for field in text.lines().skip(1).flat_map(|l| l.split(',')) {
        let mantissa = field.split('e').next().unwrap();
        let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
        let significant = digits.trim_start_matches('0');
        assert!(significant.len() <= 12, "{field}");
        assert!(!field.contains(' '));
    }
}

#[test]
fn solve_is_byte_identical_across_runs() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(code(&solve_into(tmp.path(), "a", "2.5")), 0);
    assert_eq!(code(&solve_into(tmp.path(), "b", "2.5")), 0);
    for f in [
        "solution.json",
        "xi_profile.csv",
        "input_pmf.csv",
        "output_pdf.csv",
    ] {
        let a = fs::read(tmp.path().join("a").join(f)).unwrap();
        let b = fs::read(tmp.path().join("b").join(f)).unwrap();
        assert!(a == b, "{f} differs");
    }
}

#[test]
fn config_file_and_flag_precedence() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(
        tmp.path().join("cfg.json"),
        r#"{"epsilon": 0.001, "min_dist": 0.02}"#,
    )
    .unwrap();
    let out = wiretap(
        &[
            "solve",
            "--sigma1",
            "1",
            "--sigma2",
            "2",
            "-A",
            "1",
            "--config",
            "cfg.json",
            "--epsilon",
            "0.0002",
            "-o",
            "s",
        ],
        tmp.path(),
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let m: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("s/manifest.json")).unwrap())
            .unwrap();
    assert_eq!(m["config"]["epsilon"], 0.0002);
    assert_eq!(m["config"]["policy"]["min_dist"], 0.02);
    assert_eq!(m["overrides"]["min_dist"], 0.02);

    fs::write(tmp.path().join("bad.json"), r#"{"epsilom": 0.001}"#).unwrap();
    let out = wiretap(
        &[
            "solve", "--sigma1", "1", "--sigma2", "2", "-A", "1", "--config", "bad.json", "-o", "t",
        ],
        tmp.path(),
    );
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("epsilom"));
}

#[test]
fn usage_errors_exit_one() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(code(&wiretap(&["solve", "--sigma1", "1"], tmp.path())), 1);
    assert_eq!(code(&solve_into(tmp.path(), "s", "-1")), 1);
    assert_eq!(
        code(&wiretap(
            &[
                "sweep", "--sigma1", "1", "--sigma2", "2", "--a-from", "2", "--a-to", "1",
                "--a-step", "0.1", "-o", "w"
            ],
            tmp.path()
        )),
        1
    );
    assert_eq!(code(&wiretap(&["--help"], tmp.path())), 0);
    assert_eq!(code(&wiretap(&["frobnicate"], tmp.path())), 1);
}

#[test]
fn kkt_check_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let t = tmp.path();
    assert_eq!(code(&solve_into(t, "s", "1.5")), 0);
    let ok = wiretap(
        &[
            "kkt-check",
            "--pmf",
            "s/input_pmf.csv",
            "--sigma1",
            "1",
            "--sigma2",
            "2",
            "-o",
            "k",
        ],
        t,
    );
    assert_eq!(code(&ok), 0, "{}", stderr(&ok));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(t.join("k/kkt.json")).unwrap()).unwrap();
    assert_eq!(report["report"]["valid"], true);
    assert_eq!(report["amplitude"], 1.5);

    // Too few points for this amplitude.
    fs::write(t.join("anti.csv"), "x,probability\n-4,0.5\n4,0.5\n").unwrap();
    let bad = wiretap(
        &[
            "kkt-check",
            "--pmf",
            "anti.csv",
            "--sigma1",
            "1",
            "--sigma2",
            "2",
            "-o",
            "k2",
        ],
        t,
    );
    assert_eq!(code(&bad), 4);
    assert!(t.join("k2/kkt.json").exists());

    fs::write(t.join("asym.csv"), "x,probability\n-1,0.3\n0,0.3\n1,0.4\n").unwrap();
    let asym = wiretap(
        &[
            "kkt-check",
            "--pmf",
            "asym.csv",
            "--sigma1",
            "1",
            "--sigma2",
            "2",
        ],
        t,
    );
    assert_eq!(code(&asym), 2);
    assert!(stderr(&asym).contains("not symmetric"));

    fs::write(t.join("short.csv"), "x,probability\n-1,0.3\n0,0.3\n1,0.3\n").unwrap();
    let short = wiretap(
        &[
            "kkt-check",
            "--pmf",
            "short.csv",
            "--sigma1",
            "1",
            "--sigma2",
            "2",
        ],
        t,
    );
    assert_eq!(code(&short), 2);
    assert!(stderr(&short).contains("sum to"));

    let missing = wiretap(
        &[
            "kkt-check",
            "--pmf",
            "nope.csv",
            "--sigma1",
            "1",
            "--sigma2",
            "2",
        ],
        t,
    );
    assert_eq!(code(&missing), 1);
    assert!(stderr(&missing).contains("nope.csv"));
}

fn plot_area(svg: &str) -> (f64, f64) {
    let doc = roxmltree::Document::parse(svg).unwrap();
    let g = doc
        .descendants()
        .find(|n| n.attribute("class") == Some("plot-area"))
        .unwrap();
    let get = |k: &str| g.attribute(k).unwrap().parse::<f64>().unwrap();
    (get("data-x-min"), get("data-x-max"))
}

#[test]
fn sweep_and_plot() {
    let tmp = tempfile::tempdir().unwrap();
    let t = tmp.path();
    let out = wiretap(
        &[
            "sweep",
            "--sigma1",
            "1",
            "--sigma2",
            "1.5",
            "--a-from",
            "0.5",
            "--a-to",
            "1.5",
            "--a-step",
            "0.25",
            "--early-exit",
            "-o",
            "w",
        ],
        t,
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        header(&t.join("w/sweep.csv")),
        "A,capacity_nats,mi_legit,mi_eve,gaussian_mi_eve,support_size,card_lower_bound,converged,near_transition"
    );
    assert_eq!(header(&t.join("w/support.csv")), "A,half_point,weight");
    assert_eq!(header(&t.join("w/gaps.csv")), "A,gap_rank,gap_value");
    let sweep = fs::read_to_string(t.join("w/sweep.csv")).unwrap();
    let amps: Vec<&str> = sweep
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(amps, ["0.5", "0.75", "1", "1.25", "1.5"]);

    let out = wiretap(&["plot", "-i", "w", "-o", "figs"], t);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    for f in [
        "support_vs_amplitude.svg",
        "normalized_support.svg",
        "support_size.svg",
        "gaps.svg",
        "capacity.svg",
        "mutual_information.svg",
    ] {
        let svg = fs::read_to_string(t.join("figs").join(f)).unwrap();
        let (lo, hi) = plot_area(&svg);
        assert_eq!((lo, hi), (0.5, 1.5), "{f}");
    }
}

#[test]
fn pdf_overlay_covers_the_amplitude_window() {
    let tmp = tempfile::tempdir().unwrap();
    let t = tmp.path();
    assert_eq!(code(&solve_into(t, "s", "2")), 0);
    let out = wiretap(&["plot", "-i", "s", "-o", "figs"], t);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let svg = fs::read_to_string(t.join("figs/output_pdf.svg")).unwrap();
    assert_eq!(plot_area(&svg), (-8.0, 8.0));
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let labels: Vec<&str> = doc
        .descendants()
        .filter_map(|n| n.attribute("data-label"))
        .collect();
    assert_eq!(
        labels,
        ["legitimate", "eavesdropper", "Gaussian match", "input pmf"]
    );
}

#[test]
fn plot_reports_missing_inputs() {
    let tmp = tempfile::tempdir().unwrap();
    let t = tmp.path();
    let out = wiretap(&["plot", "-i", "nowhere", "-o", "figs"], t);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("nowhere"));

    fs::create_dir(t.join("empty")).unwrap();
    fs::write(
        t.join("empty/sweep.csv"),
        "A,capacity_nats,mi_legit,mi_eve,gaussian_mi_eve,support_size,card_lower_bound,converged,near_transition\n",
    )
    .unwrap();
    let out = wiretap(&["plot", "-i", "empty", "-o", "figs"], t);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("sweep.csv"));

    fs::create_dir(t.join("partial")).unwrap();
    fs::write(t.join("partial/sweep.csv"), "A,capacity_nats,mi_legit,mi_eve,gaussian_mi_eve,support_size,card_lower_bound,converged,near_transition\n1,0.1,0.2,0.1,0.1,2,1.1,true,false\n").unwrap();
    let out = wiretap(&["plot", "-i", "partial", "-o", "figs"], t);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("support.csv"));
}

#[test]
fn equal_noise_gives_zero_capacity() {
    let tmp = tempfile::tempdir().unwrap();
    let out = wiretap(
        &[
            "solve", "--sigma1", "1", "--sigma2", "1", "-A", "2", "-o", "z",
        ],
        tmp.path(),
    );
    assert_eq!(code(&out), 0);
    let sol: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("z/solution.json")).unwrap())
            .unwrap();
    assert_eq!(sol["capacity"], 0.0);
    assert_eq!(
        fs::read_to_string(tmp.path().join("z/input_pmf.csv")).unwrap(),
        "x,probability\n0,1\n"
    );
}
