use std::io::Write;
use std::process::{Command, Output};

const EXAMPLE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/workspaces/example.toml");

fn grpscheme(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grpscheme")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_workspace(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".toml").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

/// Functions on `C_2` over `F_3`, basis `d_1, d_g`.
fn c2_workspace(antipode: &str) -> String {
    format!(
        r#"
[field]
p = 3

[schemes.C2]
names = ["d_1", "d_g"]
unit = [1, 1]
mult = [[[0, 1]], [], [], [[1, 1]]]
comult = [[[0, 0, 1], [1, 1, 1]], [[0, 1, 1], [1, 0, 1]]]
counit = [1, 0]
antipode = {antipode}

[modules.k]
scheme = "C2"
kind = "trivial"
"#
    )
}

#[test]
fn example_validates() {
    let o = grpscheme(&["validate", EXAMPLE]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("0 failed\n"));
}

#[test]
fn raw_scheme_validates() {
    let f = temp_workspace(&c2_workspace("[[1, 0], [0, 1]]"));
    let o = grpscheme(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("C2           pairing            pass"));
}

#[test]
fn broken_antipode_fails_with_axiom_name() {
    let f = temp_workspace(&c2_workspace("[[0, 1], [1, 0]]"));
    let o = grpscheme(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.contains("antipode") && l.contains("FAIL")), "{out}");
    assert!(out.lines().any(|l| l.starts_with("k ") && l.contains("depends on broken `C2`")), "{out}");
}

#[test]
fn broken_workspace_refuses_to_run() {
    let f = temp_workspace(&c2_workspace("[[0, 1], [1, 0]]"));
    let o = grpscheme(&["run", f.path().to_str().unwrap(), "--suite", "integrals"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn missing_file_is_usage_error() {
    let o = grpscheme(&["validate", "/nonexistent/workspace.toml"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cannot read"));
}

#[test]
fn malformed_input_is_usage_error() {
    for text in [
        "[field]\np = 3\n[schemes.G]\nbuiltin = \"nope\"\n",
        "[field]\np = 4\n",
        "[field]\np = 3\n[embeddings.H]\nscheme = \"G\"\n",
        "[field]\np = 3\n[schemes.G]\nbuiltin = \"alpha_p\"\n[embeddings.H]\nscheme = \"G\"\nideal = [\"q\"]\n",
        "[field]\np = 3\nunknown_key = 1\n",
        "not toml at all [",
    ] {
        let f = temp_workspace(text);
        let o = grpscheme(&["validate", f.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{text}: {}", stderr(&o));
    }
}

#[test]
fn unknown_suite_is_usage_error() {
    let o = grpscheme(&["run", EXAMPLE, "--suite", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown suite"));
}

#[test]
fn clap_errors_and_help() {
    assert_eq!(grpscheme(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(grpscheme(&["run"]).status.code(), Some(2));
    assert_eq!(grpscheme(&["--help"]).status.code(), Some(0));
    assert_eq!(grpscheme(&["--version"]).status.code(), Some(0));
}

#[test]
fn mackey_example_passes() {
    let o = grpscheme(&["run", EXAMPLE, "--suite", "mackey-example"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().filter(|l| !l.ends_with("failed")).all(|l| l.starts_with("PASS mackey-example")));
}

#[test]
fn runs_are_deterministic() {
    let args = ["run", EXAMPLE, "--jobs", "2", "--json"];
    let (a, b) = (grpscheme(&args), grpscheme(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v.is_object());
    }
    let last: serde_json::Value = serde_json::from_str(out.lines().last().unwrap()).unwrap();
    assert_eq!(last["failed"], 0);
    let seeded = grpscheme(&["run", EXAMPLE, "--suite", "wirthmuller", "--seed", "11"]);
    assert_eq!(seeded.stdout, grpscheme(&["run", EXAMPLE, "--suite", "wirthmuller", "--seed", "11"]).stdout);
}

#[test]
fn norm_of_translation() {
    let o = grpscheme(&["norm", EXAMPLE, "--algebra", "translation", "--element", "v + 1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("norm        v^3 + 1\n"), "{out}");
    assert!(out.contains("(agrees)"));
}

#[test]
fn norm_of_permutation_is_product_of_orbit() {
    let o = grpscheme(&["norm", EXAMPLE, "--algebra", "perm", "--element", "x1", "--transversal", "last"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("norm        x1*x2*x3\n"));
    let m = grpscheme(&["mumford", EXAMPLE, "--algebra", "perm", "--element", "x1"]);
    assert_eq!(stdout(&m), "x1*x2*x3\n");
}

#[test]
fn norm_rejects_non_invariant_input() {
    let o = grpscheme(&["norm", EXAMPLE, "--algebra", "perm", "--element", "x1", "--subgroup", "H"]);
    assert_eq!(o.status.code(), Some(2));
    let o = grpscheme(&["norm", EXAMPLE, "--algebra", "perm", "--element", "x1", "--subgroup", "all_C3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not invariant"), "{}", stderr(&o));
    let o = grpscheme(&["norm", EXAMPLE, "--algebra", "perm", "--element", "x1 + x2 + x3", "--subgroup", "all_C3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("norm        x1 + x2 + x3\n"));
    let o = grpscheme(&["norm", EXAMPLE, "--algebra", "perm", "--element", "x1 +"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invariants_of_permutation() {
    let o = grpscheme(&["invariants", EXAMPLE, "--algebra", "perm"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("dim 4\n"));
}

#[test]
fn lambda_of_embeddings() {
    let h = stdout(&grpscheme(&["lambda", EXAMPLE, "--embedding", "H"]));
    assert!(h.contains("lambda                       0\n"));
    let m = grpscheme(&["lambda", EXAMPLE, "--embedding", "one_M3"]);
    assert_eq!(m.status.code(), Some(0));
    assert!(stdout(&m).contains("t split                      true\n"));
}

#[test]
fn ext_of_cyclic_group() {
    let o = grpscheme(&["ext", EXAMPLE, "--degree", "2", "--pair", "kC3,regC3"]);
    assert_eq!(stdout(&o), "Ext^0(kC3, regC3) = 1\nExt^1(kC3, regC3) = 0\nExt^2(kC3, regC3) = 0\n");
    let o = grpscheme(&["ext", EXAMPLE, "--degree", "3", "--pair", "kC3,kC3"]);
    assert!(stdout(&o).ends_with("Ext^3(kC3, kC3) = 1\n"));
    assert_eq!(grpscheme(&["ext", EXAMPLE, "--degree", "1", "--pair", "kC3,nope"]).status.code(), Some(2));
}
