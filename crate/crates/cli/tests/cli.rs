mod common;

use common::{run, run_json, schema_errors, system};
use serde_json::json;

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&["--version"]).code, 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&[]).code, 1);
    assert_eq!(run(&["frobnicate"]).code, 1);
    assert_eq!(run(&["bound", "/nonexistent/file.sys"]).code, 1);
    assert_eq!(run(&["bound", &system("vanderpol"), "--trials", "0"]).code, 1);
    let bad_p = run(&["check-elim", &system("vanderpol"), "--randomized", "-p", "1.5"]);
    assert_eq!(bad_p.code, 1);
    assert!(bad_p.stderr.contains("between 0 and 1"));
    assert_eq!(run(&["check-elim", &system("vanderpol")]).code, 1);
}

#[test]
fn parse_errors_exit_one() {
    let dir = std::env::temp_dir().join(format!("diffelim-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("bad.sys");
    std::fs::write(&file, "vars x\nx' = w\n").unwrap();
    let out = run(&["eliminate", file.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn inconclusive_exits_two() {
    let (code, v) = run_json(&["eliminate", &system("vanderpol"), "--max-depth", "0", "--seed", "1"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["verdict"], "INCONCLUSIVE");
    assert_eq!(v["result"]["inconclusive"]["kind"], "depth_limit");

    let (code, v) = run_json(&["eliminate", &system("pendulum_x"), "--augment-derivatives", "--max-pairs", "1", "--seed", "1"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["cutoff"]["kind"], "pairs");
}

#[test]
fn definite_verdicts_exit_zero() {
    let (code, v) = run_json(&["eliminate", &system("linear_chain"), "--seed", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["relations"], json!(["y"]));
    assert_eq!(v["result"]["depth"], 0);

    let (code, v) = run_json(&["bound", &system("lotka_volterra"), "--seed", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["bound"]["b"], "1");
}

#[test]
fn bound_examples() {
    for (name, aug, b) in [("lotka_volterra", false, "1"), ("pendulum_x", true, "5"), ("control_x1x3", false, "3")] {
        let mut args = vec!["bound", name, "--seed", "4"];
        let path = system(name);
        args[1] = &path;
        if aug {
            args.push("--augment-derivatives");
        }
        let (code, v) = run_json(&args);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["bound"]["b"], b, "{name}");
        let inputs = &v["result"]["bound"]["inputs"];
        for key in ["d", "d0", "abs_alpha", "abs_beta", "m"] {
            assert!(inputs[key].is_u64(), "{name}: {key}");
        }
    }
}

#[test]
fn randomized_examples() {
    let out = run(&["check-elim", &system("pendulum_x"), "--randomized", "-p", "0.99", "--seed", "2", "--augment-derivatives", "--modular"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.trim(), "impossible (p ≥ 0.99)");
    let out = run(&["check-elim", &system("control_x2x3"), "--randomized", "-p", "0.99", "--seed", "2"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.trim(), "possible, depth 1");
}

#[test]
fn seeded_replay_is_byte_identical() {
    let args = ["check-elim", &system("control_x1x3"), "--randomized", "-p", "3/4", "--seed", "77", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let args = ["bound", &system("pendulum_y"), "--augment-derivatives", "--seed", "5", "--json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn unseeded_runs_record_their_seed() {
    let (_, v) = run_json(&["check-elim", &system("control_x2x3"), "--randomized"]);
    let seed = v["seed"].as_u64().expect("seed recorded");
    assert_eq!(v["result"]["seed"].as_u64(), Some(seed));
    for d in v["result"]["per_depth"].as_array().unwrap() {
        assert_eq!(d["seed"].as_u64(), Some(seed));
        assert_eq!(d["generator"], "ChaCha8");
    }
}

#[test]
fn witness_subcommand() {
    let out = run(&["witness", "-d", "1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("P = -x + y - 1\n"), "{}", out.stdout);
    let (code, v) = run_json(&["witness", "-d", "2", "--search-depth", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["witness"]["polynomial"], "-2*x^2 - 8*x*y + y^2 - 10*x + 16*y - 17");
    assert_eq!(v["result"]["witness"]["certificate_holds"], true);
    assert_eq!(v["result"]["search"]["status"], "not_found");
}

#[test]
fn timings_are_opt_in() {
    let (_, v) = run_json(&["eliminate", &system("vanderpol"), "--seed", "1"]);
    assert!(v.get("timings").is_none());
    let (_, v) = run_json(&["eliminate", &system("vanderpol"), "--seed", "1", "--timings"]);
    assert_eq!(v["timings"]["per_depth_ms"].as_array().unwrap().len(), 2);
}

#[test]
fn every_fixture_produces_a_valid_bound_report() {
    let dir: std::path::PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "systems"].iter().collect();
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let (code, _) = run_json(&["bound", path.to_str().unwrap(), "--seed", "3"]);
        assert_eq!(code, 0, "{}", path.display());
    }
}

#[test]
fn schema_rejects_malformed_reports() {
    let (_, mut v) = run_json(&["bound", &system("vanderpol"), "--seed", "1"]);
    v["result"]["bound"]["b"] = json!(1);
    assert!(!schema_errors(&v).is_empty());
    let (_, mut v) = run_json(&["witness", "-d", "1"]);
    v["schema_version"] = json!(2);
    assert!(!schema_errors(&v).is_empty());
}
