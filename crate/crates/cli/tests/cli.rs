use std::path::PathBuf;
use std::process::Command;

use nsp_cli::read_witness;
use nsp_eval::{eval_proc, Bounds};
use nsp_term::{alpha_eq_proc, parse_proc_in_env};

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

struct Out {
    stdout: String,
    stderr: String,
    code: i32,
}

fn nsp(args: &[&str]) -> Out {
    let o = Command::new(env!("CARGO_BIN_EXE_nsp")).args(args).current_dir(corpus()).output().expect("run nsp");
    Out { stdout: String::from_utf8(o.stdout).unwrap(), stderr: String::from_utf8(o.stderr).unwrap(), code: o.status.code().unwrap_or(-1) }
}

fn body(o: &Out) -> String {
    o.stdout.split_once('\n').map(|(_, b)| b.to_string()).unwrap_or_default()
}

#[test]
fn run_reports_value_divergence_and_stuck_oracles() {
    let o = nsp(&["run", "add.pcf", "--fuel", "1000"]);
    assert_eq!((body(&o).as_str(), o.code), ("Value 5\n", 0));
    let o = nsp(&["run", "bottom.pcf", "--fuel", "100"]);
    assert_eq!((body(&o).as_str(), o.code), ("Diverged(100)\n", 3));
    let o = nsp(&["run", "oracle_stuck.pcf"]);
    assert_eq!((body(&o).as_str(), o.code), ("StuckOracle(sq, 9)\n", 1));
}

#[test]
fn oracle_flag_overrides_directive() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("short.tsv");
    std::fs::write(&table, "0\t0\n1\t1\n2\t4\n").unwrap();
    let binding = format!("sq={}", table.display());
    let o = nsp(&["run", "oracle_sq.pcf", "--oracle", &binding]);
    assert_eq!((body(&o).as_str(), o.code), ("StuckOracle(sq, 3)\n", 1));
    assert!(o.stdout.starts_with("# nsp verb=run") && o.stdout.lines().next().unwrap().contains(&binding));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(nsp(&["run", "missing.pcf"]).code, 2);
    assert_eq!(nsp(&["run", "Y2.pcf"]).code, 2);
    assert_eq!(nsp(&["enumerate", "N->N", "--bounds", "1,1"]).code, 2);
    assert_eq!(nsp(&["frobnicate"]).code, 2);
    assert_eq!(nsp(&["denote", "add.pcf", "--depth", "0"]).code, 2);
    let o = nsp(&["run", "add.pcf", "--oracle", "nonsense"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("NAME=PATH"));
}

#[test]
fn sexpr_output_round_trips() {
    for (input, depth) in [("F2.nsp", "6"), ("Z2.pcf", "5"), ("fact.pcf", "3")] {
        let o = nsp(&["denote", input, "--depth", depth, "--format", "sexpr"]);
        assert_eq!(o.code, 0, "{input}: {}", o.stderr);
        assert!(o.stdout.starts_with("; nsp verb=denote"));
        let (_, p) = parse_proc_in_env(&o.stdout).unwrap();
        let again = nsp(&["denote", input, "--depth", depth, "--format", "sexpr"]);
        assert_eq!(o.stdout, again.stdout, "{input}");
        let d: usize = depth.parse().unwrap();
        let direct = nsp_cli::load::load(&corpus().join(input).to_string_lossy(), &[], &Bounds::new(d, 4, 1_000_000)).unwrap();
        assert!(alpha_eq_proc(&p, &direct.proc, d, 4), "{input}");
        assert!(alpha_eq_proc(&eval_proc(&p, &Bounds::new(d, 4, 1_000_000)).term, &direct.proc, d, 4), "{input}");
    }
}

#[test]
fn successor_denotation_shape() {
    let dir = tempfile::tempdir().unwrap();
    let suc = dir.path().join("suc.pcf");
    std::fs::write(&suc, "suc\n").unwrap();
    let o = nsp(&["denote", suc.to_str().unwrap(), "--depth", "2"]);
    assert_eq!(o.code, 0);
    let b = body(&o);
    assert!(b.starts_with("(lam (") && b.contains("(default affine 1)"), "{b}");
}

#[test]
fn rendering_matches_golden_files() {
    for f in ["Y3", "Z3"] {
        let o = nsp(&["render", &format!("{f}.pcf"), "--depth", "5", "--branch-bound", "2"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.starts_with("// nsp verb=render depth=5 branch_bound=2"));
        let golden = std::fs::read_to_string(corpus().join("golden").join(format!("{f}.dot"))).unwrap();
        assert_eq!(body(&o), golden, "{f}");
    }
}

#[test]
fn json_and_trace_outputs_parse() {
    let o = nsp(&["denote", "double.pcf", "--format", "json", "--trace", "--depth", "3"]);
    assert_eq!(o.code, 0);
    let v: serde_json::Value = serde_json::from_str(&body(&o)).unwrap();
    assert_eq!(v["proc"], "(lam () 8)");
    assert_eq!(v["fuel_exhausted"], false);
    let lines: Vec<serde_json::Value> = o.stderr.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(lines.len() > 3);
}

#[test]
fn fuel_exhaustion_exits_three() {
    let o = nsp(&["denote", "fact.pcf", "--fuel", "10"]);
    assert_eq!(o.code, 3);
    assert!(o.stderr.contains("fuel exhausted"));
}

#[test]
fn compare_archives_a_replayable_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.witness");
    let o = nsp(&["compare", "Y2.pcf", "Z2.pcf", "--depth", "4", "--fuel", "5000", "--witness", path.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(body(&o).starts_with("Distinguished left=bot right=0\n"));
    let text = std::fs::read_to_string(&path).unwrap();
    let golden = std::fs::read_to_string(corpus().join("golden/Y2_Z2.witness")).unwrap();
    assert_eq!(text, golden);
    let w = read_witness(&text).unwrap();
    let b = Bounds::new(4, 4, 5_000);
    let y2 = nsp_cli::load::load(&corpus().join("Y2.pcf").to_string_lossy(), &[], &b).unwrap();
    let z2 = nsp_cli::load::load(&corpus().join("Z2.pcf").to_string_lossy(), &[], &b).unwrap();
    assert!(w.replay(&y2.proc, &z2.proc, &b));
    assert!(!w.replay(&z2.proc, &y2.proc, &b));
}

#[test]
fn compare_and_leq_verdict_codes() {
    let o = nsp(&["compare", "Y2.pcf", "Y2.pcf", "--depth", "4", "--fuel", "5000"]);
    assert_eq!(o.code, 1);
    assert!(body(&o).starts_with("IndistinguishableUpTo(1,1,1,2)"));
    assert_eq!(nsp(&["leq", "Y2.pcf", "Y2.pcf", "--depth", "4", "--fuel", "5000"]).code, 0);
    // Neither is below the other: each has an argument where only it converges.
    let o = nsp(&["leq", "Y2.pcf", "Z2.pcf", "--depth", "4", "--fuel", "5000"]);
    assert_eq!(o.code, 1);
    assert!(body(&o).starts_with("NotLeq left=0 right=bot\n"));
    let o = nsp(&["leq", "Z2.pcf", "Y2.pcf", "--depth", "4", "--fuel", "5000", "--format", "csv"]);
    assert_eq!(o.code, 1);
    assert!(body(&o).starts_with("pair,verdict,bounds,left,right,witness\nZ2/Y2,NotLeq,,0,bot,"), "{}", body(&o));
}

#[test]
fn spinal_verdicts() {
    let o = nsp(&["spinal", "F2.nsp", "--depth", "4"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&body(&o)).unwrap();
    assert_eq!(v["depth"], 4);
    assert_eq!(v["mode"], "plain");
    let o = nsp(&["spinal", "byval.pcf"]);
    assert_eq!((body(&o).as_str(), o.code), ("no certificate (dict, d=5)\n", 1));
    assert_eq!(nsp(&["spinal", "gallery:p_n", "--depth", "4"]).code, 2);
    assert_eq!(nsp(&["spinal", "gallery:p_n", "--depth", "4", "--mode", "extended", "--fuel", "100000"]).code, 0);
    assert_eq!(nsp(&["spinal", "F2.nsp", "--mode", "sideways"]).code, 2);
}

#[test]
fn decompose_checks_p_n() {
    let o = nsp(&["decompose", "gallery:p_n:1:2", "--n", "2"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert_eq!(body(&o).matches("pass ").count(), 3);
    let o = nsp(&["decompose", "gallery:p_n:1:2", "--n", "1"]);
    assert_eq!(o.code, 1);
    let o = nsp(&["decompose", "gallery:p_n:1:0", "--chain", "3"]);
    assert_eq!(o.code, 0);
    assert_eq!(body(&o).matches("step ").count(), 3);
}

#[test]
fn enumerate_counts_and_ceiling() {
    let o = nsp(&["enumerate", "N->N"]);
    assert_eq!(o.code, 0);
    let b = body(&o);
    let count: usize = b.lines().next().unwrap().trim_start_matches("; count=").parse().unwrap();
    assert_eq!(b.lines().count(), count + 1);
    let o = nsp(&["enumerate", "((N->N)->N)->N", "--bounds", "3,3,3,4"]);
    assert!(o.code == 3 || o.code == 2, "{}", o.stderr);
    let o = nsp(&["enumerate", "(N->N)->N", "--bounds", "3,3,3,4"]);
    assert_eq!(o.code, 3, "{}", o.stderr);
    assert!(o.stderr.contains("exceeds the ceiling"));
}

#[test]
fn same_header_same_output() {
    for args in [&["spinal", "F2.nsp", "--depth", "3"][..], &["enumerate", "N->N", "--format", "json"], &["suite", "--only", "3,7"]] {
        let a = nsp(args);
        let b = nsp(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(a.stdout.lines().next().unwrap().contains("seed="));
    }
}
