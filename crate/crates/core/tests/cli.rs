use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fieldred"))
        .args(args)
        .env_remove("FIELDRED_SAMPLES")
        .output()
        .expect("binary runs")
}

#[test]
fn census_at_q3_exits_cleanly() {
    let out = run(&["census", "--q", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("hwise-fixed 5-space"));
    assert!(text.contains("0 failed"));
}

#[test]
fn json_report_has_the_documented_keys() {
    let out = run(&["verify", "--q", "3", "--suite", "figueroa", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["q"], 3);
    assert_eq!(v["suite"], "figueroa");
    let claims = v["claims"].as_array().unwrap();
    assert!(!claims.is_empty());
    for c in claims {
        let keys: Vec<&str> = c.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 4, "{c}");
        for k in ["anchor", "expected", "computed", "pass"] {
            assert!(keys.contains(&k), "{c}");
        }
        assert!(c["pass"].is_boolean());
    }
}

#[test]
fn q_two_and_non_prime_powers_are_usage_errors() {
    for q in ["2", "6", "x"] {
        let out = run(&["census", "--q", q]);
        assert_eq!(out.status.code(), Some(2), "q={q}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn scroll_is_rejected_when_q_is_one_mod_three() {
    let out = run(&["verify", "--q", "4", "--suite", "scroll"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("rejected:"));
}

#[test]
fn failing_claims_give_exit_one() {
    // the literal γ ∈ D claim of the scroll suite does not hold
    let out = run(&["verify", "--q", "3", "--suite", "scroll"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn identical_seed_gives_identical_bytes() {
    let args = ["verify", "--q", "4", "--suite", "linear-sets", "--samples", "5", "--seed", "7", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(a.stdout, b.stdout);
}
