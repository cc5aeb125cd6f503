use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const SMALL: &str = "
category C { objects: a b; morphism f: a -> b }
category D { objects: x; morphism e: x -> x; compose e . e = e }
functor F: C -> D { object a => x; object b => x; morphism f => e }
het H: C ~> D {
  elems (a,x): s t
  elems (b,x): u
  post e . s = s; post e . t = t; post e . u = u
  pre u . f = t
}
";

fn hetcat(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hetcat"))
        .current_dir(dir)
        .env_remove("HETCAT_BUDGET")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn workspace(text: &str) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("w.hc"), text).unwrap();
    dir
}

#[test]
fn one_object_category_validates() {
    let dir = workspace("category One { objects: pt }");
    let o = hetcat(dir.path(), &["-f", "w.hc", "validate", "One"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("[pass] category `One` satisfies its laws"));
}

#[test]
fn missing_action_entry_is_reported_with_location() {
    let dir = workspace(
        "category C { objects: a b; morphism f: a -> b }
category D { objects: x }
het H: C ~> D {
  elems (a,x): s
  elems (b,x): u
}
",
    );
    let o = hetcat(dir.path(), &["-f", "w.hc", "validate", "H"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("incomplete action table"), "{out}");
    assert!(out.contains("w.hc:3:"), "{out}");
}

#[test]
fn broken_associativity_names_the_triple() {
    // (p.p).q = p but p.(p.q) = q
    let dir = workspace(
        "category M {
  objects: x
  morphism p: x -> x; morphism q: x -> x
  compose p . p = q; compose p . q = p; compose q . p = p; compose q . q = p
}
",
    );
    let o = hetcat(dir.path(), &["-f", "w.hc", "validate", "M"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{out}");
    assert!(out.contains("associativity fails at ("), "{out}");
}

#[test]
fn other_commands_refuse_an_invalid_workspace() {
    let dir = workspace(
        "category M {
  objects: x
  morphism p: x -> x; morphism q: x -> x
  compose p . p = q; compose p . q = p; compose q . p = p; compose q . q = p
}
category N { objects: y }
het H: M ~> N { elems (x,y): e; post id_y . e = e; pre e . p = e; pre e . q = e }
",
    );
    let o = hetcat(dir.path(), &["-f", "w.hc", "collage", "H"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("w.hc:"), "{}", stderr(&o));
}

#[test]
fn syntax_and_reference_errors_exit_2() {
    let dir = workspace("category C { objects: a; morphism f: a -> }\n");
    let o = hetcat(dir.path(), &["-f", "w.hc", "validate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("w.hc:1:"), "{}", stderr(&o));

    let dir = workspace(SMALL);
    let o = hetcat(dir.path(), &["-f", "w.hc", "collage", "Nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Nope"));
}

#[test]
fn budget_exceeded_exits_3_with_the_library_message() {
    let dir = workspace(SMALL);
    let o = hetcat(
        dir.path(),
        &["-f", "w.hc", "--budget", "objects=0", "find-rep", "H", "--at", "a", "--side", "left"],
    );
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stderr(&o).contains("search budget exceeded"), "{}", stderr(&o));

    let o = Command::new(env!("CARGO_BIN_EXE_hetcat"))
        .current_dir(dir.path())
        .env("HETCAT_BUDGET", "objects=0")
        .args(["-f", "w.hc", "find-rep", "H", "--at", "a", "--side", "left"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn find_rep_on_a_small_workspace() {
    let dir = workspace(
        "category C { objects: a b; morphism f: a -> b }
category D { objects: x }
het H: C ~> D {
  elems (a,x): s t
  elems (b,x): u
  pre u . f = t
}
",
    );
    let o = hetcat(dir.path(), &["-f", "w.hc", "find-rep", "H", "--at", "a", "--side", "left"]);
    // only identities act on (a,x), so s and t cannot reach each other
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("bounded search"));
    let o = hetcat(dir.path(), &["-f", "w.hc", "find-rep", "H", "--at", "b", "--side", "left"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("universal=u"));
}

#[test]
fn right_representation_of_cones_sits_at_the_product() {
    let dir = tempfile::tempdir().unwrap();
    let o = hetcat(
        dir.path(),
        &["--gallery", "product-diagonal", "find-rep", "cones_wide", "--at", "(2,2)", "--side", "right"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("object=4"), "{out}");
    assert!(!out.contains("object=3"), "{out}");
}

#[test]
fn json_report_has_the_documented_fields() {
    let dir = workspace(SMALL);
    let o = hetcat(dir.path(), &["-f", "w.hc", "--format", "json", "collage", "H"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["budget", "checks", "command", "counterexamples", "status", "witnesses"]);
    assert_eq!(v["command"], "collage H");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["checks"][0]["passed"], true);
    assert_eq!(v["witnesses"][0]["objects"], "3");
    for k in ["set", "objects", "morphisms", "het", "work"] {
        assert!(v["budget"][k].is_u64(), "{k}");
    }

    let o = hetcat(dir.path(), &["-f", "w.hc", "--format", "json", "--timing", "collage", "H"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["timing_ms"].is_u64());
}

#[test]
fn json_errors_carry_locations() {
    let dir = workspace("category C { objects: a a }\n");
    let o = hetcat(dir.path(), &["-f", "w.hc", "--format", "json", "validate"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "error");
    let loc = &v["counterexamples"][0]["location"];
    assert_eq!(loc["file"], "w.hc");
    assert_eq!(loc["line"], 1);
    assert_eq!(loc["col"], 25);
}

#[test]
fn collage_round_trips_through_files() {
    let dir = workspace(SMALL);
    let o = hetcat(dir.path(), &["-f", "w.hc", "collage", "H", "--dsl", "col.hc"]);
    assert_eq!(o.status.code(), Some(0));
    let o = hetcat(
        dir.path(),
        &["-f", "col.hc", "extract-collage", "Collage(H)", "--split", "x_a,x_b", "--dsl", "back.hc"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = hetcat(dir.path(), &["-f", "back.hc", "validate"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    // putting the target object on the source side makes hets point backwards
    let o = hetcat(dir.path(), &["-f", "col.hc", "extract-collage", "Collage(H)", "--split", "a_x"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("back to the X side"));
}

#[test]
fn adjunctions_in_the_gallery() {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| hetcat(dir.path(), args);
    let pd = ["--gallery", "product-diagonal"];
    let o = run(&[&pd[..], &["check-adjunction", "Delta", "Product", "--left-incl", "incl_FinSet2"]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&[&pd[..], &["check-adjunction", "Coproduct", "Delta", "--right-incl", "incl_FinSet2"]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&[&pd[..], &["check-adjunction", "Product", "Delta", "--right-incl", "incl_FinSet2"]].concat());
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));

    let fv = ["--gallery", "free-vector"];
    let o = run(&[&fv[..], &["check-adjunction", "Free", "Underlying", "--via", "set_to_space", "--left-incl", "incl_FinSet2"]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn brains_in_the_gallery() {
    let dir = tempfile::tempdir().unwrap();
    let o = hetcat(
        dir.path(),
        &["--gallery", "product-diagonal", "check-brain", "Delta", "--in", "cones", "--out", "cocones"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("alpha=[id_2,id_2] epsilon=[id_2,id_2] image=(2,2) object=2"));

    let o = hetcat(
        dir.path(),
        &["--gallery", "free-vector", "check-brain", "Underlying", "--in", "space_to_set", "--out", "set_to_space"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = hetcat(
        dir.path(),
        &["--gallery", "product-diagonal", "find-brains", "--in", "cones", "--out", "cocones"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("functor=B0"));
}

#[test]
fn gallery_commands() {
    let dir = tempfile::tempdir().unwrap();
    let o = hetcat(dir.path(), &["gallery", "list"]);
    assert_eq!(stdout(&o), "product-diagonal\nfree-vector\nbiproduct\ntensor\n");

    let o = hetcat(dir.path(), &["gallery", "run", "product-diagonal"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("base=(1,2) het=cones object=2 side=right"), "{out}");
    assert!(out.contains("base=1 het=cones object=(1,1) side=left universal=[id_1,id_1]"), "{out}");

    let o = hetcat(dir.path(), &["gallery", "run", "nonexistent"]);
    assert_eq!(o.status.code(), Some(2));

    let o = hetcat(dir.path(), &["gallery", "export", "tensor", "-o", "t.hc"]);
    assert_eq!(o.status.code(), Some(0));
    let o = hetcat(dir.path(), &["-f", "t.hc", "validate"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = hetcat(dir.path(), &["find-rep", "H"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hetcat(dir.path(), &["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}
