use std::fs;
use std::process::{Command, Output};

fn netrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netrel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn catalog_dump_lists_twelve_edges() {
    let out = netrel(&["catalog", "dump", "W"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "8 12");
    assert_eq!(lines.len(), 13);
    assert!(lines.contains(&"0 4  # 15"));
}

#[test]
fn catalog_list_and_edge_sets() {
    let text = stdout(&netrel(&["catalog", "list"]));
    assert!(text.lines().any(|l| l == "Q"));
    assert_eq!(
        stdout(&netrel(&["catalog", "dump", "X"])).trim(),
        "{23,56,78,81}"
    );
}

#[test]
fn counts_cuts_and_trees() {
    assert_eq!(stdout(&netrel(&["cuts", "W", "-k", "3"])).trim(), "8");
    assert_eq!(stdout(&netrel(&["cuts", "W", "-k", "5"])).trim(), "400");
    assert_eq!(stdout(&netrel(&["trees", "W"])).trim(), "392");
    let listed = stdout(&netrel(&["cuts", "G1", "-k", "3", "--list"]));
    assert!(listed.lines().any(|l| l == "{23,78,15}"));
    let census: serde_json::Value =
        serde_json::from_str(&stdout(&netrel(&["cuts", "W", "-k", "5", "--census"]))).unwrap();
    assert_eq!(census["V"], 276);
}

#[test]
fn reads_edge_list_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c4.g");
    fs::write(&path, "4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&netrel(&["trees", p])).trim(), "4");
    let csv = stdout(&netrel(&["spectrum", p]));
    assert_eq!(csv.lines().next(), Some("k,mu_k,binom_m_k"));
    assert!(csv.contains("2,6,6"));
    let rel = stdout(&netrel(&["reliability", p, "--rho", "1/2"]));
    assert!(rel.contains("R(1/2) = 5/16"), "{rel}");
}

#[test]
fn compare_near_one_prints_a_verdict() {
    let out = netrel(&["compare", "W^X_1", "W^M1_1", "--near", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "first_better");
    assert_eq!(v["first_diff_index"], 5);
    let near0: serde_json::Value = serde_json::from_str(&stdout(&netrel(&[
        "compare", "W^X_1", "W^M1_1", "--near", "0",
    ])))
    .unwrap();
    assert_eq!(near0["verdict"], "second_better");
}

#[test]
fn crossings_are_narrow() {
    let out = netrel(&["crossings", "W^X_1", "W^M1_1", "--tolerance", "1e-9"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let xs = v.as_array().unwrap();
    assert!(!xs.is_empty());
    for x in xs {
        let (lo, hi) = (
            x["lo_approx"].as_f64().unwrap(),
            x["hi_approx"].as_f64().unwrap(),
        );
        assert!(0.0 < lo && lo < hi && hi < 1.0 && hi - lo <= 1e-9);
    }
}

#[test]
fn chains_and_enlarge() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&netrel(&["chains", "W^M1_2"]))).unwrap();
    assert_eq!(v["chains"].as_array().unwrap().len(), 12);
    assert_eq!(v["fair"], true);
    let edges = stdout(&netrel(&["enlarge", "Q", "M4", "2"]));
    assert_eq!(edges.lines().next(), Some("28 32"));
}

#[test]
fn reliability_curve_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.csv");
    let out = netrel(&[
        "reliability",
        "W",
        "--curve",
        path.to_str().unwrap(),
        "--points",
        "11",
    ]);
    assert!(out.status.success());
    let csv = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[0], "rho,R");
    assert_eq!(lines[1], "0,1.00000000000");
    assert_eq!(lines[11], "1.00000000000,0");
}

#[test]
fn verification_report_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let out = netrel(&[
            "verify-paper",
            "--s",
            "1",
            "--no-meta",
            "--json",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: serde_json::Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["overall"], "pass");
    let main = v["sections"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["id"] == "main")
        .unwrap();
    assert!(main["scope"].as_str().unwrap().contains("only"));
}

#[test]
fn verification_writes_curves() {
    let dir = tempfile::tempdir().unwrap();
    let out = netrel(&[
        "verify-paper",
        "--s",
        "1",
        "--json",
        dir.path().join("r.json").to_str().unwrap(),
        "--curves",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    for name in ["W^M1_1", "W^X_1"] {
        let csv = fs::read_to_string(dir.path().join(format!("{name}.csv"))).unwrap();
        assert_eq!(csv.lines().count(), 1002);
    }
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert!(v["meta"]["total_ms"].is_number());
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(netrel(&["cuts", "nope", "-k", "3"]).status.code(), Some(2));
    assert_eq!(
        netrel(&["cuts", "W^M1_2", "-k", "6", "--budget", "1000"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(netrel(&["compare", "W", "Q"]).status.code(), Some(2));
    assert_eq!(netrel(&["verify-paper", "--s", "0"]).status.code(), Some(2));
    assert_eq!(
        netrel(&["reliability", "W", "--rho", "3/2"]).status.code(),
        Some(2)
    );
}
