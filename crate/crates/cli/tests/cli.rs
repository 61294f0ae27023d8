//! End-to-end runs of the `ncomp` binary.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

const C7: &str = "# C7 x| C3 over F7\np=7\nf=1\nq=3\nA=7\naction=2\n";
const F11C5: &str = "p=11\nf=1\nq=5\nA=11,11\naction=3,0;0,9\n";
const C19: &str = "p=19\nf=1\nq=3\nA=19\naction=7\n";
const C31: &str = "p=31\nf=1\nq=5\nA=31,31\naction=2,0;0,4\n";

fn config(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn ncomp(cfg: &NamedTempFile, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncomp"))
        .args(args)
        .arg("--config")
        .arg(cfg.path())
        .output()
        .unwrap()
}

fn json_ok(cfg: &NamedTempFile, args: &[&str]) -> Value {
    let mut args = args.to_vec();
    args.push("--json");
    let out = ncomp(cfg, &args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn exit_code(cfg: &NamedTempFile, args: &[&str]) -> i32 {
    ncomp(cfg, args).status.code().unwrap()
}

#[test]
fn certificate_c7() {
    let v = json_ok(&config(C7), &["certificate"]);
    assert_eq!(v["command"], "certificate");
    let r = &v["result"];
    assert_eq!(r["l"]["factored"], "2·7^9");
    assert_eq!(r["l"]["decimal"], "80707214");
    assert_eq!(r["l"]["cofactor"], "2");
    assert_eq!(r["l"]["exp"], 9);
    assert_eq!(r["r"]["factored"], "7^8");
    assert_eq!(r["r"]["decimal"], "5764801");
    assert_eq!(r["verdict"], "NoNormalComplement");
    assert_eq!(v["instance"]["omega"], "2");
    assert_eq!(v["provenance"]["seed"], 42);
}

#[test]
fn project_f11c5() {
    let cfg = config(F11C5);
    let v = json_ok(&cfg, &["project", "2*b+3*b^2+8*b^3+10*b^4"]);
    assert_eq!(v["result"]["projections"], serde_json::json!([1, 4, 9, 5, 3]));
    assert_eq!(v["instance"]["zeta"], "2");
    assert_eq!(v["instance"]["omega"], "4");
    let text = String::from_utf8(ncomp(&cfg, &["project", "2*b+3*b^2+8*b^3+10*b^4"]).stdout).unwrap();
    assert!(text.contains("projections: (1, 4, 9, 5, 3)"), "{text}");
    assert!(text.contains("zeta=2 omega=4"), "{text}");
}

#[test]
fn bpoly_f11c5_is_an_involution() {
    let v = json_ok(&config(F11C5), &["bpoly", "2*b+3*b^2+8*b^3+10*b^4"]);
    let r = &v["result"];
    assert_eq!(r["coefficients"], serde_json::json!([0, 2, 3, 8, 10]));
    assert_eq!(r["b_equals_p_of_u"], true);
    assert_eq!(r["u_equals_p_of_b"], true);
}

#[test]
fn idempotents_c7() {
    let v = json_ok(&config(C7), &["idempotents"]);
    let r = &v["result"];
    assert_eq!(r["all_verified"], true);
    let es = r["idempotents"].as_array().unwrap();
    let elements: Vec<&str> = es.iter().map(|e| e["element"].as_str().unwrap()).collect();
    assert_eq!(elements, ["5 + 5*b + 5*b^2", "5 + 6*b + 3*b^2", "5 + 3*b + 6*b^2"]);
    let eigen: Vec<u64> = es.iter().map(|e| e["b_eigenvalue"].as_u64().unwrap()).collect();
    assert_eq!(eigen, [1, 2, 4]);
}

#[test]
fn class_length_of_b() {
    let v = json_ok(&config(C7), &["class-length", "b", "--unitary"]);
    assert_eq!(v["result"]["class_length"], "7^12");
    assert_eq!(v["result"]["unitary_class_length"], "7^6");
}

#[test]
fn verify_branches() {
    let v = json_ok(&config(C19), &["verify"]);
    assert_eq!(v["result"]["analysis"]["branch"], "MGreaterOne");
    assert_eq!(v["result"]["m_gt_1"]["search"]["complement_count"], 0);
    assert_eq!(v["result"]["verdict"], "NoNormalComplement");
    let v = json_ok(&config(F11C5), &["verify"]);
    assert_eq!(v["result"]["analysis"]["branch"], "Silent");
    assert_eq!(v["result"]["verdict"], Value::Null);
}

#[test]
fn complements_and_distinct_unit_c31() {
    let cfg = config(C31);
    let v = json_ok(&cfg, &["complement-search"]);
    let s = &v["result"]["search"];
    assert_eq!(s["group_order"], 900);
    assert_eq!(s["every_complement_has_witness"], true);
    assert!(s["complement_count"].as_u64().unwrap() > 0);
    let v = json_ok(&cfg, &["distinct-unit"]);
    assert_eq!(v["result"]["distinct"], 5);
    assert_eq!(v["result"]["unitary"], true);
}

#[test]
fn cayley_round_trip() {
    let cfg = config(C7);
    let v = json_ok(&cfg, &["cayley", "a1 - a1^6"]);
    assert_eq!(v["result"]["unitary"], true);
    assert_eq!(v["result"]["round_trip"], true);
    let image = v["result"]["image"].as_str().unwrap().to_string();
    let back = json_ok(&cfg, &["cayley-inv", &image]);
    assert_eq!(back["result"]["image"], "a1 + 6*a1^6");
}

#[test]
fn sample_disjoint_has_no_hits() {
    let v = json_ok(&config(C7), &["sample-disjoint", "--trials", "300"]);
    for r in v["result"]["reports"].as_array().unwrap() {
        assert_eq!(r["hits"], 0);
        assert_eq!(r["lower_bound_holds"], true);
    }
}

#[test]
fn json_is_byte_identical_across_runs() {
    let cfg = config(C7);
    for args in [
        &["sample-disjoint", "--trials", "50", "--seed", "7", "--json"][..],
        &["certificate", "--json"][..],
        &["enumerate", "V*", "--json"][..],
    ] {
        let a = ncomp(&cfg, args);
        let b = ncomp(&cfg, args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn exit_codes() {
    let c7 = config(C7);
    assert_eq!(exit_code(&config("p=7\nq=3\n"), &["idempotents"]), 2);
    assert_eq!(
        exit_code(&config("p=7\nf=1\nq=5\nA=7\naction=2\n"), &["idempotents"]),
        1
    );
    assert_eq!(
        exit_code(&config("p=7\nf=1\nq=3\nA=7\naction=1\n"), &["idempotents"]),
        1
    );
    assert_eq!(
        exit_code(&config("p=7\nf=1\nq=3\nA=7\naction=2\nzeta=3\n"), &["idempotents"]),
        2
    );
    assert_eq!(exit_code(&c7, &["project", "2*"]), 2);
    assert_eq!(exit_code(&c7, &["project", "a2"]), 3);
    assert_eq!(exit_code(&c7, &["project", "a1"]), 3);
    assert_eq!(exit_code(&c7, &["cayley", "b"]), 3);
    assert_eq!(exit_code(&c7, &["bpoly", "1"]), 3);
    assert_eq!(exit_code(&c7, &["enumerate", "V", "--budget", "3"]), 4);
    assert_eq!(exit_code(&config(F11C5), &["certificate"]), 1);
    assert_eq!(exit_code(&config(C19), &["certificate"]), 1);
    assert_eq!(exit_code(&c7, &["no-such-command"]), 2);
}

#[test]
fn errors_go_to_stderr_as_json() {
    let out = ncomp(&config("p=7\nq=3\n"), &["idempotents", "--json"]);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["code"], 2);
    assert_eq!(v["error"]["kind"], "parse");
    assert!(v["error"]["message"].as_str().unwrap().contains("f, A, action"));
}
