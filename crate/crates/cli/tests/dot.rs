use std::process::Command;

fn render(args: &[&str]) -> String {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hetcat"))
        .current_dir(dir.path())
        .env_remove("HETCAT_BUDGET")
        .args(args)
        .args(["--dot", "d.dot"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    std::fs::read_to_string(dir.path().join("d.dot")).unwrap()
}

fn nodes(dot: &str) -> usize {
    dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count()
}

fn edges(dot: &str, style: &str) -> usize {
    dot.lines().filter(|l| l.contains("->") && l.contains(style)).count()
}

#[test]
fn adjunctive_square_for_a_function_het() {
    let dot = render(&["--gallery", "free-vector", "check-square", "set_to_space", "--elem", "[f22_10]"]);
    assert_eq!(dot, include_str!("golden/square.dot"));
    assert_eq!(nodes(&dot), 4);
    assert_eq!(edges(&dot, "style=solid"), 3);
    assert_eq!(edges(&dot, "black:invis:black"), 2);
    assert!(dot.contains("label=\"f: [f22_10]\""));
}

#[test]
fn butterfly_for_the_diagonal() {
    let dot = render(&[
        "--gallery",
        "product-diagonal",
        "check-brain",
        "Delta",
        "--in",
        "cones",
        "--out",
        "cocones",
        "--at",
        "1",
    ]);
    assert_eq!(dot, include_str!("golden/butterfly.dot"));
    assert_eq!(nodes(&dot), 5);
    assert!(dot.contains("n2 [label=\"(1,1)\"]"));
    assert!(dot.contains("label=\"alpha: [id_1,id_1]\""));
    assert!(dot.contains("label=\"epsilon: [id_1,id_1]\""));
}

#[test]
fn representation_triangle_for_the_free_functor() {
    let dot = render(&[
        "--gallery",
        "free-vector",
        "find-rep",
        "set_to_space",
        "--at",
        "2",
        "--side",
        "left",
        "--elem",
        "[f22_10]",
    ]);
    assert_eq!(dot, include_str!("golden/triangle.dot"));
    assert_eq!(nodes(&dot), 3);
    assert_eq!(edges(&dot, "style=solid"), 2);
    assert_eq!(edges(&dot, "black:invis:black"), 1);
}

#[test]
fn square_requires_an_element() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hetcat"))
        .current_dir(dir.path())
        .args(["--gallery", "free-vector", "check-square", "set_to_space", "--dot", "d.dot"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
