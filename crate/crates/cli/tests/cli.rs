use std::process::{Command, Output};

use serde_json::Value;

fn rconf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rconf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn reconf_tsv_total() {
    let o = rconf(&["reconf", "--n", "4", "--dmax", "6", "--format", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let total = out.lines().find(|l| l.starts_with("total")).unwrap();
    assert_eq!(total.split('\t').nth(1), Some("15"));
}

#[test]
fn reconf_index_flag_shifts_h1() {
    let h1_at_2 = |index: &str| {
        let o = rconf(&[
            "reconf", "--n", "4", "--dmax", "4", "--index", index, "--format", "json",
        ]);
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["result"]["rows"][2]["h1"].as_u64().unwrap()
    };
    assert_eq!(h1_at_2("theorem"), 10);
    assert_eq!(h1_at_2("bundle"), 0);
}

#[test]
fn cech_h1_count() {
    let o = rconf(&["cech", "--n", "2", "--box", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["result"]["counts"][1], 1);
    let tsv = stdout(&rconf(&[
        "cech", "--n", "2", "--box", "1", "--format", "tsv",
    ]));
    let h1: Vec<&str> = tsv.lines().filter(|l| l.ends_with("\t1\t1")).collect();
    assert_eq!(h1, vec!["(-1,-1)\t1\t1"]);
}

#[test]
fn selftest_passes() {
    let o = rconf(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["reconf", "--n", "5", "--dmax", "8", "--format", "json"][..],
        &["continuity", "--dmax", "5", "--format", "pretty"][..],
        &[
            "ydq", "--n", "2", "--d", "3", "--oracle", "--seed", "7", "--format", "json",
        ][..],
    ] {
        assert_eq!(rconf(args).stdout, rconf(args).stdout, "{args:?}");
    }
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = ["reconf", "--n", "4", "--dmax", "8", "--format", "json"];
    let single = Command::new(env!("CARGO_BIN_EXE_rconf"))
        .args(args)
        .env("LIOUVILLE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(single.status.code(), Some(0));
    assert_eq!(single.stdout, rconf(&args).stdout);
}

#[test]
fn oracle_adds_checks_only() {
    let plain: Value =
        serde_json::from_slice(&rconf(&["ydq", "--n", "3", "--d", "2", "--format", "json"]).stdout)
            .unwrap();
    let checked: Value = serde_json::from_slice(
        &rconf(&[
            "ydq", "--n", "3", "--d", "2", "--oracle", "--format", "json",
        ])
        .stdout,
    )
    .unwrap();
    for key in ["ker", "coker", "rank"] {
        assert_eq!(plain["result"][key], checked["result"][key]);
    }
    assert_eq!(checked["result"]["checks"]["symmetrizer_agrees"], true);
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["reconf", "--n", "2"][..],
        &["reconf", "--n", "4", "--format", "xml"][..],
        &["cech", "--n", "0"][..],
        &["bott"][..],
        &["frobnicate"][..],
    ] {
        let o = rconf(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(rconf(&["--help"]).status.code(), Some(0));
}

#[test]
fn bott_and_sheaf() {
    let v: Value = serde_json::from_slice(
        &rconf(&["bott", "--weight", "0,0,-3,1", "--format", "json"]).stdout,
    )
    .unwrap();
    assert_eq!(v["result"]["cohomology"]["degree"], 1);
    assert_eq!(
        v["result"]["cohomology"]["weight"],
        serde_json::json!([0, 0, 0, -2])
    );
    let o = rconf(&[
        "sheaf", "--n", "4", "--d", "2", "--b", "1", "--format", "tsv",
    ]);
    assert_eq!(stdout(&o), "i\tdim\trep\n");
    let o = rconf(&[
        "sheaf",
        "--n",
        "4",
        "--d",
        "3",
        "--quadric",
        "--format",
        "tsv",
    ]);
    assert_eq!(stdout(&o), "i\tdim\trep\n1\t10\tdim 10\n");
}

#[test]
fn killing_report() {
    let o = rconf(&[
        "killing", "--n", "4", "--dmax", "3", "--oracle", "--format", "tsv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "d\tdim\n0\t4\n1\t7\n2\t4\n3\t0\n");
}
