use std::process::Command;

fn endscope(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_endscope"))
        .args(args)
        .env_remove("ENDSCOPE_DEPTH_DEFAULT")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn fan_ends_as_json() {
    let (code, out, _) = endscope(&["ends", "--example", "fan", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["data"][0]["topological"], false);
    assert_eq!(v["data"][0]["dominators"], serde_json::json!(["c0"]));
}

#[test]
fn double_ray_decomposition_has_two_branches() {
    let (code, out, _) = endscope(&["treedecomp", "--example", "double_ray", "--depth", "6", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph"));
    // two children of the root, then a path below each
    assert_eq!(out.matches("n0 ->").count(), 2);
    assert_eq!(out.matches("->").count(), 14);
}

#[test]
fn saved_documents_verify_and_doctored_ones_fail() {
    let dir = tempfile::tempdir().unwrap();
    let td = dir.path().join("td.json");
    let (code, out, _) = endscope(&["treedecomp", "--example", "ladder", "--depth", "5", "--format", "json"]);
    assert_eq!(code, 0);
    std::fs::write(&td, &out).unwrap();
    for what in ["td", "display"] {
        let (code, _, err) = endscope(&["verify", "--what", what, "--in", td.to_str().unwrap()]);
        assert_eq!(code, 0, "{what}: {err}");
    }

    let mut doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    doc["data"]["nodes"][1]["part"] = serde_json::json!("{c1}");
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let (code, out, _) = endscope(&["verify", "--what", "td", "--in", bad.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 1);
    let rep: serde_json::Value = serde_json::from_str(&out).unwrap();
    let failed: Vec<&serde_json::Value> = rep["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| !c["witness"].is_null()));

    let st = dir.path().join("st.json");
    let (_, out, _) = endscope(&["spanningtree", "--example", "comb", "--depth", "4", "--horizon", "20", "--format", "json"]);
    std::fs::write(&st, &out).unwrap();
    assert_eq!(endscope(&["verify", "--what", "tree", "--in", st.to_str().unwrap()]).0, 0);
    // a spanning tree is not a decomposition
    assert_eq!(endscope(&["verify", "--what", "td", "--in", st.to_str().unwrap()]).0, 2);
}

#[test]
fn graph_files_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.txt");
    let (_, text, _) = endscope(&["zoo", "twostrand"]);
    std::fs::write(&file, &text).unwrap();
    let (code, out, _) = endscope(&["ends", "--graph", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("2 end(s)"));

    std::fs::write(&file, "graph bad\ncore 1\nhub 0 0 0 0 0\n").unwrap();
    let (code, _, err) = endscope(&["info", "--graph", file.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");

    assert_eq!(endscope(&["frobnicate"]).0, 2);
    assert_eq!(endscope(&["ends", "--example", "fan", "--format", "svg"]).0, 2);
    assert_eq!(endscope(&["starcomb", "--example", "ray", "--set", "{c0}"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["envelope", "--example", "hubbed_ladder", "--seed", "5", "--format", "json"],
        vec!["spanningtree", "--example", "ladder", "--depth", "3", "--horizon", "12", "--format", "dot"],
        vec!["exhaustion", "--example", "comb", "--layers", "4"],
        vec!["unfold", "--example", "fan", "--depth", "3", "--format", "dot"],
    ] {
        let a = endscope(&args);
        assert_eq!(a.0, 0, "{args:?}: {}", a.2);
        assert_eq!(a, endscope(&args), "{args:?}");
    }
}

#[test]
fn default_horizon_comes_from_the_environment() {
    let run = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_endscope"));
        cmd.args(["treedecomp", "--example", "infstar", "--depth", "1", "--format", "json"]);
        match env {
            Some(v) => cmd.env("ENDSCOPE_DEPTH_DEFAULT", v),
            None => cmd.env_remove("ENDSCOPE_DEPTH_DEFAULT"),
        };
        let out = cmd.output().unwrap();
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        (v["data"]["horizon"].as_u64().unwrap(), v["data"]["nodes"].as_array().unwrap().len())
    };
    assert_eq!(run(None), (40, 42));
    assert_eq!(run(Some("7")), (7, 9));
}

#[test]
fn every_subcommand_runs_on_the_zoo() {
    let (_, names, _) = endscope(&["zoo"]);
    for name in names.lines() {
        for cmd in ["info", "ends", "dominators", "closure", "envelope", "exhaustion", "treedecomp", "spanningtree", "unfold"] {
            let (code, _, err) = endscope(&[cmd, "--example", name]);
            assert_eq!(code, 0, "{cmd} {name}: {err}");
        }
    }
}
