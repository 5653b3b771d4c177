use super::*;
use std::path::Path;

fn run(args: &[&str], out: &Path) -> (i32, String) {
    let mut argv = vec!["rq"];
    argv.extend_from_slice(args);
    argv.extend(["--out", out.to_str().unwrap()]);
    let code = dispatch(argv);
    (code, std::fs::read_to_string(out).unwrap_or_default())
}

#[test]
fn mining_example_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("m.jsonl");
    let (code, text) =
        run(&["mine", "--spec", "1,2,4", "--alpha", "1", "--beta", "2", "--box", "4", "--order", "80"], &first);
    assert_eq!(code, 0);
    assert!(text.contains("u^4 - v^2 + 4*u^4*v^4"));
    let second = dir.path().join("r.jsonl");
    let (code, again) = run(&["replay", first.to_str().unwrap()], &second);
    assert_eq!(code, 0);
    assert_eq!(text, again);
}

#[test]
fn config_round_trips_through_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.jsonl");
    let (_, text) = run(&["check", "--id", "cubic-derivative", "--r", "2", "--digits", "30"], &out);
    let lines = parse_report(&text).unwrap();
    assert_eq!(lines.len(), 2);
    let o = execute(&lines[0].config).unwrap();
    assert_eq!(render(&lines[0].config, &o, false), text);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.jsonl");
    assert_eq!(run(&["check", "--id", "rgg-derivative", "--r", "1"], &out).0, 2);
    assert_eq!(run(&["check", "--id", "singular-modulus", "--r", "3"], &out).0, 0);
    assert_eq!(run(&["verify-identities", "--order", "40"], &out).0, 0);
    for bad in [
        &["series", "--spec", "1,2"][..],
        &["series", "--spec", "2,2,5"],
        &["series", "--spec", "1,2,5", "--nope"],
        &["mine", "--spec", "1,2,4"],
        &["eval", "--spec", "1,2,5"],
        &["check", "--id", "unknown"],
        &["recognize", "--value", "abc"],
        &["bogus"],
    ] {
        assert_eq!(run(bad, &out).0, 1, "{bad:?}");
    }
}

#[test]
fn shape_text_round_trips() {
    for s in [Shape::Box(4), Shape::Total(7)] {
        assert_eq!(parse_shape(&s.to_string()).unwrap(), s);
    }
    assert!(parse_shape("box(x)").is_err());
}
