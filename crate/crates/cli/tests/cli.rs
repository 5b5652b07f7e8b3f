use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use grover_gme::{gme_curve, CurveMode, Preset};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grover-gme")).args(args).output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    fn parse(text: &str) -> Self {
        assert!(!text.contains('\r'));
        let mut lines = text.lines();
        let header = lines.next().unwrap().split(',').map(String::from).collect();
        let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
        Csv { header, rows }
    }

    fn read(path: &Path) -> Self {
        Self::parse(&fs::read_to_string(path).unwrap())
    }

    fn column(&self, name: &str) -> Vec<Option<f64>> {
        let i = self.header.iter().position(|h| h == name).unwrap();
        self.rows.iter().map(|r| (!r[i].is_empty()).then(|| r[i].parse().unwrap())).collect()
    }

    fn values(&self, name: &str) -> Vec<f64> {
        self.column(name).into_iter().map(Option::unwrap).collect()
    }
}

fn argmax(values: &[f64]) -> usize {
    (0..values.len()).fold(0, |best, i| if values[i] > values[best] { i } else { best })
}

#[test]
fn two_qubit_curve() {
    let csv = Csv::parse(&run_ok(&["curve", "--n", "2", "--preset", "product", "--mode", "exact"]));
    assert_eq!(csv.header, ["k", "ratio", "theta_k", "gme_exact", "gme_asymptotic", "alpha_star"]);
    assert_eq!(csv.rows.len(), 2);
    assert_eq!(csv.values("gme_exact")[0], 0.0);
    assert!(csv.column("gme_asymptotic").iter().all(Option::is_none));
}

#[test]
fn product_curve_peaks_halfway() {
    let csv = Csv::parse(&run_ok(&["curve", "--n", "30", "--preset", "product", "--mode", "both"]));
    let asym = csv.values("gme_asymptotic");
    let peak = argmax(&asym);
    // k_T = k_opt / 2 falls between integers, so the grid peak sits just below 0.5
    assert!(asym[peak] < 0.5 && 0.5 - asym[peak] < 1e-4);
    assert!((csv.values("ratio")[peak] - 0.5).abs() < 1e-4);
}

#[test]
fn oracle_mode_matches_exact_mode() {
    let oracle = Csv::parse(&run_ok(&["curve", "--n", "12", "--preset", "w", "--mode", "oracle"]));
    let exact = Csv::parse(&run_ok(&["curve", "--n", "12", "--preset", "w", "--mode", "exact"]));
    assert_eq!(oracle.rows.len(), exact.rows.len());
    assert_eq!(oracle.values("theta_k"), exact.values("theta_k"));
    for (a, b) in oracle.values("gme_exact").iter().zip(exact.values("gme_exact")) {
        assert!((a - b).abs() < 1e-6, "{a} vs {b}");
    }
}

#[test]
fn explicit_bitstrings_reach_the_oracle() {
    let csv = Csv::parse(&run_ok(&["curve", "--n", "6", "--bits", "000000,000001", "--mode", "oracle"]));
    // the same curve as the 5-qubit product search
    let smaller = gme_curve(&Preset::Product.marked(5).unwrap(), CurveMode::Exact).unwrap();
    let got = csv.values("gme_exact");
    assert_eq!(got.len(), smaller.points.len());
    for (g, p) in got.iter().zip(&smaller.points) {
        assert!((g - p.gme()).abs() < 1e-9);
    }
}

#[test]
fn turning_records() {
    let record = |preset: &str, n: &str| {
        let csv = Csv::parse(&run_ok(&["turning", "--n", n, "--preset", preset]));
        assert_eq!(csv.rows.len(), 1);
        (csv.values("turning_theta")[0], csv.values("turning_k_ratio")[0], csv.values("peak_gme")[0])
    };
    let (theta, ratio, peak) = record("product", "30");
    assert_eq!((theta, ratio, peak), (FRAC_PI_4, 0.5, 0.5));
    for n in ["2", "9", "40"] {
        let (theta, ratio, peak) = record("ghz", n);
        assert!((theta - SQRT_2.atan()).abs() < 1e-15);
        assert!((ratio - 0.61).abs() < 0.005);
        assert!((peak - 2.0 / 3.0).abs() < 1e-15);
    }
    let (_, ratio, peak) = record("w", "35");
    assert!((ratio - 0.653).abs() < 0.01 && (peak - 0.73).abs() < 0.01);
}

#[test]
fn sweep_verdicts() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("sweep.csv");
    let out_str = out.to_str().unwrap();
    for (preset, range, verdict) in
        [("product", "15..30", true), ("ghz", "15..30", true), ("w", "15..35", false)]
    {
        let stdout = run_ok(&["sweep", "--preset", preset, "--n-range", range, "--out", out_str]);
        assert_eq!(stdout, format!("scale_invariant: {verdict}\n"));
        let csv = Csv::read(&out);
        assert_eq!(csv.rows.len(), if preset == "w" { 21 } else { 16 });
        if preset == "w" {
            let last = csv.values("final_gme");
            assert!(last.windows(2).all(|p| p[1] > p[0]));
            assert!(last.iter().all(|&v| v < 1.0 - (-1f64).exp()));
        }
    }
}

#[test]
fn profiles() {
    let csv = Csv::parse(&run_ok(&["profile", "--n", "100", "--preset", "dicke:1"]));
    assert_eq!(csv.header, ["alpha", "A", "B", "g"]);
    assert_eq!(csv.rows.len(), 2048);
    let alpha = csv.values("alpha");
    let mid = alpha.iter().position(|&a| a == FRAC_PI_2).expect("π/2 row");
    assert_eq!(csv.values("A")[mid], 1.0);

    let csv = Csv::parse(&run_ok(&["profile", "--n", "100", "--preset", "dicke:10"]));
    let peak = csv.values("alpha")[argmax(&csv.values("B"))];
    assert!((peak - 2.0 * 0.9f64.sqrt().acos()).abs() < 2e-3);

    // at half weight B(π/2) is far from negligible next to A
    let csv = Csv::parse(&run_ok(&["profile", "--n", "100", "--preset", "dicke:50"]));
    let (a, g) = (csv.values("A"), csv.values("g"));
    let worst = a.iter().zip(&g).map(|(a, g)| g - a).fold(0.0, f64::max);
    assert!(worst > 0.28);
}

#[test]
fn outputs_are_deterministic_and_round_trip() {
    let dir = TempDir::new().unwrap();
    let paths = [dir.path().join("a.csv"), dir.path().join("b.csv")];
    for p in &paths {
        run_ok(&[
            "curve",
            "--n",
            "18",
            "--preset",
            "dicke:2",
            "--mode",
            "both",
            "--out",
            p.to_str().unwrap(),
        ]);
    }
    let (a, b) = (fs::read(&paths[0]).unwrap(), fs::read(&paths[1]).unwrap());
    assert_eq!(a, b);

    let curve = gme_curve(&Preset::Dicke(2).marked(18).unwrap(), CurveMode::Both).unwrap();
    let csv = Csv::read(&paths[0]);
    let (exact, asym, alpha) =
        (csv.values("gme_exact"), csv.values("gme_asymptotic"), csv.values("alpha_star"));
    for (i, p) in curve.points.iter().enumerate() {
        assert_eq!(exact[i].to_bits(), p.gme_exact.unwrap().to_bits());
        assert_eq!(asym[i].to_bits(), p.gme_asymptotic.unwrap().to_bits());
        assert_eq!(alpha[i].to_bits(), p.alpha_star.unwrap().to_bits());
    }
}

#[test]
fn json_sidecar() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("curve.csv");
    run_ok(&["curve", "--n", "20", "--preset", "ghz", "--out", out.to_str().unwrap(), "--format", "json"]);
    assert!(out.exists());
    let text = fs::read_to_string(dir.path().join("curve.json")).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["n", "weights", "k_opt", "theta", "turning_theta", "turning_k_ratio", "peak_gme", "mode"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    assert_eq!(json["n"], 20);
    assert_eq!(json["weights"], serde_json::json!([[0, 1], [20, 1]]));
    assert_eq!(json["mode"], "both");
    assert!((json["turning_theta"].as_f64().unwrap() - SQRT_2.atan()).abs() < 1e-15);

    let clash = dir.path().join("curve.json");
    let status =
        run(&["curve", "--n", "4", "--preset", "w", "--out", clash.to_str().unwrap(), "--format", "json"]);
    assert_eq!(status.status.code(), Some(2));
}

#[test]
fn weights_flag() {
    let listed = run_ok(&["turning", "--n", "10", "--weights", "2,2,2,7"]);
    let counted = run_ok(&["turning", "--n", "10", "--weights", "2:3,7"]);
    assert_eq!(listed, counted);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["curve", "--n", "5", "--preset", "nope"]), Some(2));
    assert_eq!(code(&["curve", "--n", "5"]), Some(2));
    assert_eq!(code(&["curve", "--n", "5", "--preset", "w", "--weights", "1"]), Some(2));
    assert_eq!(code(&["curve", "--n", "5", "--weights", "1,2", "--mode", "exact"]), Some(2));
    assert_eq!(code(&["curve", "--n", "3", "--bits", "0101"]), Some(2));
    assert_eq!(code(&["sweep", "--preset", "w", "--n-range", "9..3"]), Some(2));
    assert_eq!(code(&["curve", "--n", "5", "--preset", "w", "--out", "/nonexistent/dir/x.csv"]), Some(3));
    assert_eq!(code(&["curve", "--n", "15", "--preset", "w", "--mode", "oracle"]), Some(4));
    assert_eq!(code(&["curve", "--n", "5", "--preset", "w"]), Some(0));
}
