//! End-to-end checks of the `bca` binary: exit codes, report shapes and
//! the user-catalog directory.

use std::process::Command;

fn bca() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bca"))
}

#[test]
fn groups_list_shows_builtins() {
    let out = bca().args(["groups", "list"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["C16", "Q8", "SL(2,3)", "A5", "M16"] {
        assert!(text.contains(name), "missing {name}");
    }
}

#[test]
fn unknown_group_exits_2() {
    let out = bca()
        .args(["analyze", "--group", "E8", "--prime", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("unknown group"));
}

#[test]
fn usage_error_exits_2() {
    let out = bca().args(["analyze", "--group", "S3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2)); // missing --prime
    let out = bca().args(["verify", "nosuchsuite"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_with_exit_0() {
    let out = bca()
        .args(["verify", "thm12", "--max-order", "8", "--seed", "7"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0 failed"), "{text}");
}

#[test]
fn verify_json_report_is_stable() {
    let dir = std::env::temp_dir().join("bca_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let p1 = dir.join("r1.json");
    let p2 = dir.join("r2.json");
    for p in [&p1, &p2] {
        let out = bca()
            .args([
                "verify",
                "decomp",
                "--max-order",
                "8",
                "--json",
                p.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(&p1).unwrap();
    let b = std::fs::read(&p2).unwrap();
    assert_eq!(a, b, "reports must be byte-identical across runs");
    let doc: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["suite"], "decomp");
}

#[test]
fn analyze_s3_report() {
    let out = bca()
        .args(["analyze", "--group", "S3", "--prime", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["order"], 6);
    assert_eq!(doc["m"], 2);
    assert_eq!(doc["p_perfect"], true);
    // single class (trivial multiplier), hh1 of F_3 S3 is 1
    let classes = doc["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0]["hh1_twisted"], 1);
    assert_eq!(classes[0]["oracles_agree"], true);
}

#[test]
fn analyze_c2_hh1_is_two() {
    let out = bca()
        .args(["analyze", "--group", "C2", "--prime", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["classes"][0]["hh1_twisted"], 2);
}

#[test]
fn analyze_a5_at_5() {
    let out = bca()
        .args(["analyze", "--group", "A5", "--prime", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // principal block has defect C5; the Sylow subgroup is metacyclic
    assert_eq!(doc["sufficient_conditions"]["sylow_metacyclic"], true);
    let blocks = doc["blocks"].as_array().unwrap();
    let principal = blocks.iter().find(|b| b["is_principal"] == true).unwrap();
    assert_eq!(principal["defect_order"], 5);
}

#[test]
fn blocks_sl23_report() {
    let out = bca()
        .args(["blocks", "--group", "SL(2,3)", "--prime", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["field_q"], 9);
    let blocks = doc["blocks"].as_array().unwrap();
    assert!(blocks.len() >= 2);
    let nonprincipal_full = blocks.iter().any(|b| {
        b["is_principal"] == false && b["defect_order"] == 3 && b["hh1"].as_u64().unwrap() >= 1
    });
    assert!(nonprincipal_full);
}

#[test]
fn cocycles_enumeration_and_truncation() {
    let out = bca()
        .args(["cocycles", "--group", "A4", "--m", "4", "--prime", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("2 classes"), "{text}");
    // char-0 count on the Klein group with even torsion, capped
    let out = bca()
        .args(["cocycles", "--group", "C2xC2", "--m", "2", "--cap", "1"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("2 classes") && text.contains("truncated"),
        "{text}"
    );
}

#[test]
fn user_catalog_dir_is_loaded() {
    let dir = std::env::temp_dir().join("bca_user_catalog");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("c20.json"),
        r#"{"name": "C20", "degree": 20, "generators": [[2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,1]]}"#,
    )
    .unwrap();
    let out = bca()
        .env("BCA_CATALOG_DIR", &dir)
        .args(["groups", "list"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("C20"), "{text}");
    // and the loaded group is analyzable
    let out = bca()
        .env("BCA_CATALOG_DIR", &dir)
        .args(["analyze", "--group", "C20", "--prime", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["order"], 20);
    // a malformed file is a usage-level error
    std::fs::write(dir.join("broken.json"), "{\"name\": \"X\"}").unwrap();
    let out = bca()
        .env("BCA_CATALOG_DIR", &dir)
        .args(["groups", "list"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
