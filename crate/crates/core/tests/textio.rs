mod common;

use std::path::{Path, PathBuf};
use std::process::Command;

use proptest::prelude::*;

use occob::calculus;
use occob::random::{self, Limits};
use occob::textio::json::{document_from_json, document_json, JsonDocument};
use occob::textio::{parse, serialize, Document, NamedCobordism};

use common::rng;

fn corpus(kind: &str) -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/corpus")
        .join(kind);
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "occ"))
        .collect();
    files.sort();
    files
}

fn occob(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_occob"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn random_document(seed: u64) -> Document {
    let mut r = rng(seed);
    let limits = Limits::default();
    let branes = common::branes(&mut r);
    let mut doc = Document::new(branes.clone());
    let x = random::object(&mut r, &branes, &limits);
    let y = random::object(&mut r, &branes, &limits);
    let c = random::cobordism(&mut r, &x, &y, &limits);
    doc.objects.push(("x".into(), x));
    doc.objects.push(("y".into(), y));
    doc.cobordisms.push(NamedCobordism {
        name: "C".into(),
        source: "x".into(),
        target: "y".into(),
        cobordism: random::shuffle(&mut r, &c),
    });
    doc
}

#[test]
fn corpus_round_trips() {
    let files = corpus("valid");
    assert!(files.len() >= 50);
    for f in files {
        let text = std::fs::read_to_string(&f).unwrap();
        let doc = parse(&text).unwrap_or_else(|d| panic!("{}: {d:?}", f.display()));
        let once = serialize(&doc);
        let back = parse(&once).unwrap();
        assert_eq!(back, doc.canonicalize(), "{}", f.display());
        assert_eq!(serialize(&back), once, "{}", f.display());
    }
}

#[test]
fn malformed_corpus_is_rejected_with_positions() {
    let files = corpus("malformed");
    assert!(files.len() >= 20);
    for f in files {
        let (code, _, err) = occob(&["check", f.to_str().unwrap()]);
        assert_eq!(code, 2, "{}: {err}", f.display());
        let prefix = format!("{}:", f.display());
        let rest = err
            .strip_prefix(&prefix)
            .expect("diagnostic names the file");
        let mut parts = rest.splitn(3, ':');
        let line: usize = parts.next().unwrap().parse().unwrap();
        let column: usize = parts.next().unwrap().parse().unwrap();
        assert!(line >= 1 && column >= 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn random_documents_round_trip(seed in any::<u64>()) {
        let doc = random_document(seed);
        let text = serialize(&doc);
        prop_assert_eq!(parse(&text).unwrap(), doc.canonicalize());
        prop_assert_eq!(serialize(&doc), text);
    }
}

#[test]
fn json_documents_round_trip() {
    for seed in 0..200 {
        let doc = random_document(seed);
        let json = serde_json::to_string(&document_json(&doc)).unwrap();
        let back: JsonDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(document_from_json(&back).unwrap(), doc.canonicalize());
    }
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

const T: &str =
    "object c = [O];\ncobordism T : c -> c { component { genus 1; in 1; out 1; window; } }\n";

#[test]
fn invariants_of_t() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "t.occ", T);
    let (code, out, _) = occob(&["invariants", &f, "T"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "component 1: g=1 w={*:1} chi=-3 c=2 b=true\ntotal: g=1 w={*:1} components=1 b=true\n"
    );
    let (code, out, _) = occob(&["invariants", &f, "T", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["format"], 1);
    assert_eq!(v["components"][0]["genus"], 1);
    assert_eq!(v["components"][0]["windows"]["*"], 1);
    assert_eq!(v["components"][0]["chi"], -3);
    assert_eq!(v["components"][0]["c"], 2);
    assert_eq!(v["components"][0]["b"], true);
}

#[test]
fn iso_of_shuffled_encodings() {
    let dir = tempfile::tempdir().unwrap();
    let text = "object n = [O, I(*,*), I(*,*)];\nobject c = [O];\n\
        cobordism A : n -> c { component { genus 1; in 1; mixed [in 2, arc, in 3, arc]; window; out 1; } }\n\
        cobordism B : n -> c { component { genus 1; window; out 1; mixed [in 3, arc, in 2, arc]; in 1; } }\n\
        cobordism C : n -> c { component { genus 1; in 1; mixed [in 2, arc]; mixed [in 3, arc]; out 1; } }\n";
    let f = write(dir.path(), "iso.occ", text);
    assert_eq!(occob(&["iso", &f, "A", "B"]).0, 0);
    let (code, out, _) = occob(&["iso", &f, "A", "C", "--json"]);
    assert_eq!(code, 1);
    assert_eq!(
        serde_json::from_str::<serde_json::Value>(&out).unwrap()["isomorphic"],
        false
    );
}

#[test]
fn classify_prints_rows_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c.occ", "object c = [O];\n");
    let csv = dir.path().join("rows.csv");
    let (code, out, _) = occob(&[
        "classify",
        &f,
        "c",
        "-G",
        "1",
        "-W",
        "1",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
    let table = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(
        table,
        "g,w_*,c,b_flag\n0,0,2,true\n0,1,2,true\n1,0,2,true\n1,1,2,true\n"
    );
}

#[test]
fn document_outputs_reparse() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "d.occ",
        &format!("{T}object n = [O, I(*,*), I(*,*), I(*,*)] sigma (2 3)(4);\nobject i = [I(*,*)];\n\
            cobordism R : n -> c {{ component {{ genus 0; in 1; mixed [in 2, arc, in 3, arc]; mixed [in 4, arc]; out 1; }} }}\n"),
    );
    let doc = parse(&std::fs::read_to_string(&f).unwrap()).unwrap();
    let t = &doc.cobordism("T").unwrap().cobordism;
    let r = &doc.cobordism("R").unwrap().cobordism;

    let expected = [
        (
            vec!["compose", &f, "T", "R"],
            calculus::compose(t, r).unwrap(),
            "T_R",
        ),
        (
            vec!["tensor", &f, "T", "R"],
            calculus::tensor(t, r).unwrap(),
            "T_x_R",
        ),
        (
            vec!["swap", &f, "n", "i"],
            calculus::swap(doc.object("n").unwrap(), doc.object("i").unwrap()).unwrap(),
            "swap_n_i",
        ),
        (
            vec!["stabilize", &f, "R", "-k", "2"],
            calculus::stabilize_n(r, 2).unwrap(),
            "R_stab2",
        ),
    ];
    for (args, want, name) in expected {
        let (code, text, err) = occob(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
        let got = parse(&text).unwrap();
        assert!(occob::is_isomorphic(&got.cobordism(name).unwrap().cobordism, &want).unwrap());

        let mut json_args = args.clone();
        json_args.push("--json");
        let (code, text, _) = occob(&json_args);
        assert_eq!(code, 0);
        let back = document_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert!(occob::is_isomorphic(&back.cobordism(name).unwrap().cobordism, &want).unwrap());
    }

    let (code, out, _) = occob(&["sigma", &f, "R"]);
    assert_eq!((code, out.as_str()), (0, "(2 3)(4)\n"));
    let (code, out, _) = occob(&["--json", "sigma", &f, "R"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["sigma"], serde_json::json!([[2, 3], [4]]));
    assert_eq!(
        occob(&["sigma", &f, "T"]),
        (0, "id\n".into(), String::new())
    );
    assert_eq!(occob(&["compose", &f, "R", "T"]).0, 1);
}

#[test]
fn pullback_command() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "p.occ",
        "object two = [I(*,*), I(*,*)];\nobject one = [I(*,*)];\n\
         cobordism P : two -> one { component { genus 0; mixed [in 1, arc, in 2, arc, out 1, arc]; } }\n",
    );
    let (code, out, _) = occob(&["pullback", &f, "P", "--tau", "(1)"]);
    assert_eq!((code, out.as_str()), (0, "(1 2)\n"));
    assert_eq!(occob(&["sigma", &f, "P"]).0, 1);
    assert_eq!(occob(&["pullback", &f, "P", "--tau", "(1"]).0, 2);
    assert_eq!(occob(&["pullback", &f, "P", "--tau", "(2)"]).0, 2);
}

#[test]
fn check_reports_validation_failures_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "bad.occ",
        "object c = [O];\ncobordism X : c -> c { component { genus 0; in 1; } }\n",
    );
    let (code, _, err) = occob(&["check", &f]);
    assert_eq!(code, 1);
    assert!(err.contains(":2:11: invalid: cobordism X"), "{err}");
    let (code, out, _) = occob(&["check", &f, "--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ok"], false);
    assert_eq!(v["diagnostics"][0]["line"], 2);
    assert_eq!(occob(&["check", "/nonexistent/file.occ"]).0, 2);
    assert_eq!(occob(&[]).0, 2);
}
