use std::process::Command;

use mutfin_cli::{matrix_file, run, EXIT_CAPS, EXIT_DOMAIN, EXIT_OK, EXIT_PARSE};
use mutfin_core::ExchangeMatrix;
use proptest::prelude::*;
use serde_json::Value;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn mutfin(args: &[&str], stdin: &str) -> Outcome {
    let mut all = vec!["mutfin"];
    all.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(all, &mut stdin.as_bytes(), &mut out, &mut err);
    Outcome { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap()
}

fn golden(name: &str) -> String {
    format!("{}/tests/golden/{name}.txt", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn mutate_one_vertex() {
    let o = mutfin(&["mutate", "-k", "1", "-"], "2 3\n0 3\n-3 0\n1 -2\n");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(o.stdout, "2 3\n0 -3\n3 0\n-1 1\n");
}

#[test]
fn mutate_sequence_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.txt");
    let o = mutfin(&["mutate", "-k", "1,2", "-k", "2,1", "-o", out.to_str().unwrap(), "-"], "2 2\n0 1\n-2 0\n");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(o.stdout, "");
    assert_eq!(std::fs::read_to_string(out).unwrap(), "2 2\n0 1\n-2 0\nd: 1 2\n");
}

#[test]
fn x6_vector_is_admissible() {
    let o = mutfin(&["admissible", &golden("x6_admissible")], "");
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "{\"verdict\":\"admissible\"}\n");
}

#[test]
fn rejection_reports_a_one_based_witness() {
    let o = mutfin(&["admissible", &golden("x7_rejected")], "");
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    assert_eq!(v["verdict"], "not_admissible");
    assert_eq!(v["violation"]["kind"], "annulus");
    let witness: Vec<usize> = serde_json::from_value(v["witness"].clone()).unwrap();
    assert!(witness.iter().all(|&k| (1..=7).contains(&k)));
    let fast = mutfin(&["admissible", "--fast", &golden("x7_rejected")], "");
    assert_eq!(fast.stdout, "{\"verdict\":\"not_admissible\"}\n");
}

#[test]
fn classify_x7() {
    let o = mutfin(&["classify", &golden("x7")], "");
    assert_eq!(o.stdout, "{\"label\":\"X7\"}\n");
}

#[test]
fn class_and_finite_reports() {
    let o = mutfin(&["class", &golden("a3")], "");
    assert_eq!(o.stdout, "{\"caps_hit\":false,\"members\":4}\n");
    let o = mutfin(&["finite", &golden("x6")], "");
    let v = json(&o);
    assert_eq!(
        (v["finite"].as_bool(), v["caps_hit"].as_bool(), v["members"].as_u64()),
        (Some(true), Some(false), Some(5))
    );
    let o = mutfin(&["finite", &golden("triple_arrow_path")], "");
    assert_eq!(json(&o)["finite"], false);
}

#[test]
fn caps_give_exit_three() {
    let o = mutfin(&["--max-members", "3", "class", &golden("e8")], "");
    assert_eq!(o.code, EXIT_CAPS);
    assert_eq!(json(&o)["caps_hit"], true);
    let o = mutfin(&["finite", "--max-members", "3", &golden("e8")], "");
    assert_eq!(o.code, EXIT_CAPS);
}

#[test]
fn member_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_mutfin"))
        .args(["class", &golden("d6")])
        .env("MUTFIN_MAX_MEMBERS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(EXIT_CAPS));
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "{\"caps_hit\":true,\"members\":2}\n");
}

#[test]
fn parse_errors_give_exit_one() {
    let o = mutfin(&["classify", "-"], "2 2\n0 1\n-1 zero\n");
    assert_eq!(o.code, EXIT_PARSE);
    assert!(o.stderr.contains("line 3"), "{}", o.stderr);
    assert_eq!(mutfin(&["classify", "/nonexistent/file"], "").code, EXIT_PARSE);
    assert_eq!(mutfin(&["frobnicate"], "").code, EXIT_PARSE);
    assert_eq!(mutfin(&["--help"], "").code, EXIT_OK);
}

#[test]
fn domain_errors_give_exit_two_with_the_error_name() {
    let o = mutfin(&["mutate", "-k", "3", "-"], "2 2\n0 1\n-1 0\n");
    assert_eq!(o.code, EXIT_DOMAIN);
    assert!(o.stderr.contains("FrozenIndex"), "{}", o.stderr);
    let o = mutfin(&["admissible", "-"], "2 2\n0 1\n-1 0\n");
    assert_eq!(o.code, EXIT_DOMAIN);
    assert!(o.stderr.contains("FrozenRowCount"), "{}", o.stderr);
    let o = mutfin(&["standard", "--boundary", "1", "--punctures", "1"], "");
    assert_eq!(o.code, EXIT_DOMAIN);
    assert!(o.stderr.contains("ExcludedSmallCase"), "{}", o.stderr);
    let o = mutfin(&["unfold", "nothing"], "");
    assert_eq!(o.code, EXIT_DOMAIN);
}

#[test]
fn standard_surface_report() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("q.txt");
    let o = mutfin(&["standard", "--genus", "1", "--boundary", "1", "-o", file.to_str().unwrap()], "");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(v["n"], 4);
    let q = matrix_file::parse(&std::fs::read_to_string(file).unwrap()).unwrap();
    let rows: Vec<Vec<i64>> = serde_json::from_value(v["matrix"].clone()).unwrap();
    assert_eq!(q, ExchangeMatrix::new(rows, None).unwrap());
    let o = mutfin(&["classify", "-"], &matrix_file::print(&q));
    assert_eq!(o.stdout, "{\"label\":\"SurfaceOther\"}\n");
}

#[test]
fn unfold_named_fixture() {
    let o = mutfin(&["unfold", "a14", "--b", "-2,1"], "");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let m = matrix_file::parse(&o.stdout).unwrap();
    assert_eq!(m.row(5), [2, -1, -1, -1, -1]);
    let o = mutfin(&["unfold", "g2_from_d4"], "");
    assert_eq!(json(&o)["name"], "g2_from_d4");
    let o = mutfin(&["unfold", "--list"], "");
    assert_eq!(json(&o)["fixtures"].as_array().unwrap().len(), 5);
}

#[test]
fn dot_shapes_and_labels() {
    let o = mutfin(&["export-dot", "-"], "2 3\n0 1\n-2 0\n1 -2\nd: 1 2\n");
    assert_eq!(
        o.stdout,
        "digraph quiver {\n  \"1\" [shape=circle];\n  \"2\" [shape=circle];\n  \"f1\" [shape=box];\n  \
         \"1\" -> \"2\" [label=\"(1,2)\"];\n  \"f1\" -> \"1\" [label=\"(1,1)\"];\n  \"2\" -> \"f1\" [label=\"(2,2)\"];\n}\n"
    );
}

#[test]
fn seed_does_not_change_results() {
    for seed in ["1", "77"] {
        let o = mutfin(&["--seed", seed, "class", &golden("affine_e6")], "");
        let base = mutfin(&["class", &golden("affine_e6")], "");
        assert_eq!(o.stdout, base.stdout);
    }
}

fn skew(n: usize, ks: &[i64], frozen: &[i64], big: &[bool]) -> ExchangeMatrix {
    let d: Vec<i64> = big.iter().take(n).map(|&b| if b { 2 } else { 1 }).collect();
    let f = frozen.len() / n;
    let mut rows = vec![vec![0i64; n]; n + f];
    for i in 0..n {
        for j in i + 1..n {
            let (si, sj) = if d[i] == d[j] { (1, 1) } else { (d[i], d[j]) };
            let k = ks[i * n + j].clamp(-1, 1);
            rows[i][j] = k * si;
            rows[j][i] = -k * sj;
        }
    }
    for r in 0..f {
        rows[n + r].copy_from_slice(&frozen[r * n..(r + 1) * n]);
    }
    ExchangeMatrix::new(rows, Some(d)).unwrap()
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(
        (n, ks, frozen, big) in (1usize..7, 0usize..3).prop_flat_map(|(n, f)| (
            Just(n),
            proptest::collection::vec(-3i64..=3, n * n),
            proptest::collection::vec(-9i64..=9, n * f),
            proptest::collection::vec(any::<bool>(), n),
        ))
    ) {
        let m = skew(n, &ks, &frozen, &big);
        let text = matrix_file::print(&m);
        prop_assert_eq!(matrix_file::parse(&text).unwrap(), m.clone());
        prop_assert_eq!(matrix_file::print(&matrix_file::parse(&text).unwrap()), text);
    }
}
