//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

use sdfe_harness::config::VerifySection;
use sdfe_harness::output::MANIFEST_FILE;
use sdfe_harness::verify::{
    classical_checks, fbm_checks, operator_checks, picard_checks, solver_anchor_checks, specfun_checks,
    stochint_checks, Check,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn FnOnce() -> Outcome>);

fn summarize(checks: Vec<Check>) -> Outcome {
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{}: observed {:e} vs {:e}", c.name, c.observed, c.target))
        .collect();
    if failed.is_empty() {
        Ok(format!("{} checks", checks.len()))
    } else {
        Err(format!("{} of {} checks failed; {}", failed.len(), checks.len(), failed.join("; ")))
    }
}

fn run_checks(f: impl FnOnce() -> sdfe_harness::Result<Vec<Check>>) -> Outcome {
    f().map_err(|e| e.to_string()).and_then(summarize)
}

fn settings() -> VerifySection {
    VerifySection {
        fbm_paths: 2000,
        fbm_steps: 512,
        stochint_paths: 5000,
        classical_paths: 100,
        ..VerifySection::default()
    }
}

fn sdfe(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdfe"))
        .args(args)
        .env("SDFE_OUTPUT_DIR", out)
        .output()
        .expect("sdfe binary runs")
}

fn heat_config(alpha: f64, p: f64, n_paths: usize) -> String {
    format!(
        r#"{{
  "problem": {{
    "kind": "heat", "alpha": {alpha}, "hurst": 0.7, "n_modes": 8, "horizon": 1.0, "delay": 0.25,
    "drift": {{"kind": "bounded_sigmoid", "k": 0.5}},
    "noise": {{"kind": "polynomial", "amplitude": 1.0, "skew": 1.0}},
    "initial": {{"kind": "sine", "k": 1, "amplitude": 1.0}},
    "integrability_exponent": {p}, "output_points": 5
  }},
  "grid": {{"dt": "0.015625"}},
  "ensemble": {{"n_paths": {n_paths}, "master_seed": "987654321987654321"}},
  "output": {{"formats": ["csv", "json"], "write_paths": true}}
}}"#
    )
}

fn spectral_config(alpha: f64, p: f64) -> String {
    format!(
        r#"{{
  "problem": {{
    "kind": "spectral", "alpha": {alpha}, "hurst": 0.8, "decay_rates": [0.0, 2.0, 5.0],
    "growth": {{"m": 1.0, "omega": 0.0}}, "horizon": 0.5, "delay": 0.125,
    "drift": {{"kind": "scaled_identity", "k": 0.3}}, "noise": [1.0, 0.5, 0.25], "initial": [1.0, 0.0, -1.0],
    "integrability_exponent": {p}
  }},
  "grid": {{"dt": "0.015625"}},
  "ensemble": {{"n_paths": 2, "master_seed": "5"}}
}}"#
    )
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).expect("write config");
    path
}

fn hypothesis_gate() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let rejected = [
        ("heat a=0.6 p=2", heat_config(0.6, 2.0, 2)),
        ("heat a=0.75 p=2", heat_config(0.75, 2.0, 2)),
        ("spectral a=0.55 p=9", spectral_config(0.55, 9.0)),
    ];
    for (i, (label, text)) in rejected.iter().enumerate() {
        let cfg = write(tmp.path(), &format!("rejected_{i}.json"), text);
        let out = sdfe(&["simulate", "--config", cfg.to_str().unwrap()], &tmp.path().join(format!("r{i}")));
        let stdout = String::from_utf8_lossy(&out.stdout);
        if out.status.code() != Some(2) || !stdout.contains("\"reason\":\"h1_violation\"") {
            return Err(format!("{label}: exit {:?}, stdout {stdout}", out.status.code()));
        }
    }
    let accepted = [
        ("heat a=0.75 p=3", heat_config(0.75, 3.0, 2)),
        ("heat a=0.9 p=1.3", heat_config(0.9, 1.3, 2)),
        ("spectral a=0.6 p=5.5", spectral_config(0.6, 5.5)),
        ("spectral a=1 p=1.01", spectral_config(1.0, 1.01)),
    ];
    let mut bounds = Vec::new();
    for (i, (label, text)) in accepted.iter().enumerate() {
        let cfg = write(tmp.path(), &format!("accepted_{i}.json"), text);
        let dir = tmp.path().join(format!("a{i}"));
        let out = sdfe(&["simulate", "--config", cfg.to_str().unwrap()], &dir);
        if !out.status.success() {
            return Err(format!("{label}: exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
        }
        let report: serde_json::Value =
            serde_json::from_slice(&fs::read(dir.join("hypotheses.json")).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
        let bound = report["holder_bound"].as_f64().unwrap_or(f64::NAN);
        if !bound.is_finite() {
            return Err(format!("{label}: Hölder bound {bound}"));
        }
        bounds.push(format!("{bound:.3}"));
    }
    Ok(format!("3 rejected with exit 2, 4 accepted with finite bounds [{}]", bounds.join(", ")))
}

fn dir_contents(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).expect("read output dir") {
            let path = entry.expect("dir entry").path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(dir).unwrap().to_string_lossy().replace('\\', "/");
                files.push((rel, fs::read(&path).expect("read output file")));
            }
        }
    }
    files.sort();
    files
}

fn reproducibility() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = write(tmp.path(), "run.json", &heat_config(0.75, 3.0, 40));
    let mut runs = Vec::new();
    for workers in ["1", "4", "8"] {
        let dir = tmp.path().join(format!("w{workers}"));
        let out = sdfe(&["simulate", "--config", cfg.to_str().unwrap(), "--workers", workers], &dir);
        if !out.status.success() {
            return Err(format!("{workers} workers: {}", String::from_utf8_lossy(&out.stderr)));
        }
        runs.push(dir_contents(&dir));
    }
    if !runs[0].iter().any(|(name, _)| name == MANIFEST_FILE) {
        return Err("manifest missing".into());
    }
    for (i, w) in [(1, "4"), (2, "8")] {
        if runs[i] != runs[0] {
            return Err(format!("outputs with {w} workers differ from 1 worker"));
        }
    }
    Ok(format!("{} files byte-identical across 1, 4, 8 workers", runs[0].len()))
}

fn main() {
    let s = settings();
    let tol = s.tolerances;
    let criteria: Vec<Criterion> = vec![
        ("special-function identities", Box::new(move || run_checks(|| specfun_checks(&tol)))),
        ("fBm generator fidelity", Box::new({
            let s = s.clone();
            move || run_checks(|| fbm_checks(&s))
        })),
        ("Wiener integral inequality", Box::new({
            let s = s.clone();
            move || run_checks(|| stochint_checks(&s))
        })),
        ("solution operator identities", Box::new(move || run_checks(|| operator_checks(&tol)))),
        ("solver exactness anchors", Box::new(move || run_checks(|| solver_anchor_checks(&tol)))),
        ("Picard factorial envelope", Box::new(move || run_checks(|| picard_checks(&tol)))),
        ("alpha = 1 classical reduction", Box::new({
            let s = s.clone();
            move || run_checks(|| classical_checks(&s))
        })),
        ("hypothesis gate", Box::new(hypothesis_gate)),
        ("reproducibility across workers", Box::new(reproducibility)),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {} [{name}]: FAIL ({detail}; {secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
