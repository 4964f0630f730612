//! End-to-end runs of the binary: exit codes, JSON shapes, and a few
//! worked values that are independently pinned elsewhere in the suite.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn takahasi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_takahasi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.stderr.is_empty(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn experiment_list_names_every_driver() {
    let out = takahasi(&["experiment", "list"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    for name in takahasi_core::experiments::names() {
        assert!(text.contains(name), "missing {name}");
    }
}

#[test]
fn unknown_experiment_is_a_usage_error() {
    let out = takahasi(&["experiment", "no-such-sweep"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown experiment"));
}

#[test]
fn experiment_json_report_carries_seed_and_status() {
    let out = takahasi(&["--json", "experiment", "notts", "--n-max", "6"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["name"], "notts");
    assert_eq!(v["seed"], 2026);
    assert_eq!(v["passed"], true);
    assert_eq!(v["violations"], 0);

    let reseeded = takahasi(&[
        "--json",
        "--seed",
        "7",
        "experiment",
        "notts",
        "--n-max",
        "6",
    ]);
    assert_eq!(stdout_json(&reseeded)["seed"], 7);
}

#[test]
fn stallings_rank_sees_through_nielsen_collapses() {
    // ⟨aa, ab⁻¹, aba⟩ is all of F₂.
    let out = takahasi(&["--json", "stallings", "rank", "a a", "a b'", "a b a"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["basis"].as_array().unwrap().len(), 2);
}

#[test]
fn stallings_membership_sets_the_exit_code() {
    assert_eq!(
        code(&takahasi(&[
            "stallings",
            "member",
            "--word",
            "a b a b",
            "a b"
        ])),
        0
    );
    assert_eq!(
        code(&takahasi(&["stallings", "member", "--word", "a", "a b"])),
        1
    );
}

#[test]
fn stallings_chain_reports_stabilization() {
    let out = takahasi(&[
        "--json",
        "stallings",
        "chain",
        "--max-rank",
        "2",
        "a a",
        "a a, b",
        "a, b",
        "a, b",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["ranks"], serde_json::json!([1, 2, 2, 2]));
    assert_eq!(v["stabilized_at"], 3);
    assert_eq!(v["within_bound"], true);
}

#[test]
fn stallings_fold_and_pipeline_consume_automaton_files() {
    // Two a-edges leave the base, so one fold merges the vertices; the
    // result is the single a-loop automaton.
    let json = serde_json::json!({
        "alphabet": ["a"],
        "vertices": 2,
        "base": 0,
        "terminals": [0],
        "edges": [
            [0, "a", 0], [0, "a'", 0],
            [0, "a", 1], [1, "a'", 0],
            [1, "a", 1], [1, "a'", 1],
        ],
    });
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{json}").unwrap();
    let path = file.path().to_str().unwrap();

    let folded = takahasi(&["--json", "stallings", "fold", "--file", path]);
    assert_eq!(code(&folded), 0);
    let v = stdout_json(&folded);
    assert_eq!(v["vertices"], 1);
    assert_eq!(v["edges"], serde_json::json!([[0, "a", 0], [0, "a'", 0]]));

    let piped = takahasi(&["--json", "stallings", "pipeline", "--file", path]);
    assert_eq!(code(&piped), 0);
    let v = stdout_json(&piped);
    assert_eq!(v["rank_report"]["rank"], 1);
}

#[test]
fn numeric_profile_pins_three_five() {
    let out = takahasi(&["--json", "numeric", "profile", "3", "5"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["d"], 1);
    assert_eq!(v["p"], 8);
    assert_eq!(v["minimal_generators"], serde_json::json!([3, 5]));
}

#[test]
fn numeric_member_and_classify() {
    assert_eq!(
        code(&takahasi(&["numeric", "member", "--target", "8", "3", "5"])),
        0
    );
    assert_eq!(
        code(&takahasi(&["numeric", "member", "--target", "7", "3", "5"])),
        1
    );
    let v = stdout_json(&takahasi(&[
        "--json", "numeric", "classify", "--", "-2", "3",
    ]));
    assert_eq!(v["FullGroup"]["d"], 1);
}

#[test]
fn numeric_chain_profiles_each_term() {
    let out = takahasi(&["--json", "numeric", "chain", "4, 6", "2, 4, 6", "2, 3"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v[0]["d"], 2);
    assert_eq!(v[1]["d"], 2);
    assert_eq!(v[2]["p"], 2);
}

#[test]
fn rees_bound_holds_inline() {
    let out = takahasi(&[
        "--json", "rees", "bound", "--group", "S3", "--matrix", "0 1; 2 0", "--row", "0", "--col",
        "0", "0,1,0", "1,4,1",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["holds"], true);
    assert!(v["report"]["component_rank"].as_u64().unwrap() <= 5);
}

#[test]
fn rees_fix_lists_fixed_triples() {
    let out = takahasi(&[
        "--json", "rees", "fix", "--group", "C2", "--matrix", "0", "--map", "0 1",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["count"], 2);
}

#[test]
fn clifford_commands_consume_json_files() {
    use takahasi_core::clifford::CliffordSemigroup;
    use takahasi_core::groups::Group;

    let s = CliffordSemigroup::new(
        vec![vec![0, 0], vec![0, 1]],
        vec![Group::cyclic(2), Group::cyclic(2)],
        &[(1, 0, vec![0, 1])],
    )
    .unwrap();
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{}", serde_json::to_string(&s.to_json()).unwrap()).unwrap();
    let path = file.path().to_str().unwrap();

    let index = takahasi(&["--json", "clifford", "index", "--file", path, "1,0"]);
    assert_eq!(code(&index), 0);
    let v = stdout_json(&index);
    assert_eq!(v["sup"]["Finite"], 2);
    assert_eq!(v["green"], 4);

    let retraction = takahasi(&[
        "--json",
        "clifford",
        "retraction",
        "--file",
        path,
        "--level",
        "1",
        "1,0",
        "1,1",
    ]);
    assert_eq!(code(&retraction), 0);
    assert_eq!(stdout_json(&retraction)["holds"], true);

    // The level-0 retraction map is an endomorphism; its periodic part is
    // the bottom group.
    let per = takahasi(&[
        "--json", "clifford", "per", "--file", path, "--map", "0 1 0 1",
    ]);
    assert_eq!(code(&per), 0);
    let v = stdout_json(&per);
    assert_eq!(v["periodic"], serde_json::json!(["(0,0)", "(0,1)"]));

    // A transposition of the top level does not commute with the link.
    let bad = takahasi(&[
        "--json", "clifford", "fix", "--file", path, "--map", "0 1 3 2",
    ]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn monoid_word_problem_commands() {
    let p = ["-p", "monoid a b ; a b = b a"];
    let canon = takahasi(&["--json", "monoid", "canon", p[0], p[1], "b a"]);
    assert_eq!(stdout_json(&canon)["canonical"], "ab");

    assert_eq!(
        code(&takahasi(&[
            "monoid", "equal", p[0], p[1], "a b b", "b a b"
        ])),
        0
    );
    assert_eq!(
        code(&takahasi(&["monoid", "equal", p[0], p[1], "a", "b"])),
        1
    );

    let above = takahasi(&["--json", "monoid", "jabove", p[0], p[1], "a b"]);
    let v = stdout_json(&above);
    // Everything dividing ab: 1, a, b, ab.
    assert_eq!(v["count"], 4);
}

#[test]
fn monoid_fix_and_period_machinery() {
    let p = ["-p", "monoid a b ; a b = b a"];
    let e = ["-e", "a -> b ; b -> a"];
    let fix = takahasi(&[
        "--json", "monoid", "fix", p[0], p[1], e[0], e[1], "--length", "6",
    ]);
    let v = stdout_json(&fix);
    assert_eq!(v["indecomposables"], serde_json::json!(["ab"]));
    assert_eq!(v["rank_at_l"], 1);

    let per = takahasi(&[
        "--json", "monoid", "per", p[0], p[1], e[0], e[1], "--length", "4",
    ]);
    let v = stdout_json(&per);
    assert_eq!(v["indecomposables"], serde_json::json!(["a", "b"]));
    assert_eq!(v["period_bound"], 2);
    assert_eq!(v["stationary_at"], 2);

    let check = takahasi(&[
        "monoid",
        "period-check",
        p[0],
        p[1],
        e[0],
        e[1],
        "--length",
        "4",
    ]);
    assert_eq!(code(&check), 0);
}

#[test]
fn monoid_exth_and_rewrite() {
    assert_eq!(code(&takahasi(&["monoid", "exth", "--n-max", "2"])), 0);

    let rewrite = takahasi(&["--json", "monoid", "rewrite"]);
    assert_eq!(code(&rewrite), 0);
    let v = stdout_json(&rewrite);
    assert_eq!(v["critical_pairs"].as_array().unwrap().len(), 2);
    assert_eq!(v["locally_confluent"], true);
    assert_eq!(v["language_agrees"], true);

    // Dropping the second rule leaves the overlap bbb unjoinable.
    let broken = takahasi(&["--json", "monoid", "rewrite", "--rules", "a b ; bb -> ab"]);
    assert_eq!(code(&broken), 1);
    assert_eq!(stdout_json(&broken)["locally_confluent"], false);
}
