use exkh::cli::{run_captured, EXIT_CAP, EXIT_INPUT, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    run_captured(std::iter::once("exkh").chain(args.iter().copied()))
}

#[test]
fn parse_prints_canonical_pd() {
    let (code, out, _) = run(&["parse", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"]);
    assert_eq!(code, 0);
    assert!(out.contains("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"));
}

#[test]
fn json_output_reads_back() {
    let (code, json, _) = run(&["--format", "json", "parse", "figure-eight"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["writhe"], 0);
    let path = std::env::temp_dir().join(format!("exkh-cli-{}.json", std::process::id()));
    std::fs::write(&path, &json).unwrap();
    let (code, out, _) = run(&["parse", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap(), value["pd"].as_str().unwrap());
}

#[test]
fn unknot_has_two_entries() {
    let (code, out, _) = run(&["--format", "json", "khovanov", "O"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    let text = value.to_string();
    assert!(text.contains("\"Z\""), "{text}");
    let (_, table, _) = run(&["khovanov", "O"]);
    assert_eq!(table.lines().filter(|l| l.trim_end().ends_with('Z')).count(), 2, "{table}");
}

#[test]
fn extreme_routes_agree_on_hexagon() {
    let (code, out, _) = run(&["extreme", "hexagon"]);
    assert_eq!(code, 0);
    assert!(out.contains("j=-13: i=-4: Z^2"));
    assert!(out.contains("agreement: OK"));
}

#[test]
fn rings_change_the_answer_format() {
    let (code, out, _) = run(&["--ring", "F2", "khovanov", "left-trefoil"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("Z/2"));
}

#[test]
fn malformed_input_exits_with_input_error() {
    let (code, out, err) = run(&["parse", "X(1,2"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.is_empty());
    assert!(err.starts_with("error:"));
    assert_eq!(run(&["lando", "no-such-entry-or-file"]).0, EXIT_INPUT);
}

#[test]
fn caps_exit_with_cap_code() {
    assert_eq!(run(&["--max-crossings", "3", "khovanov", "figure-eight"]).0, EXIT_CAP);
    assert_eq!(run(&["--max-faces", "10", "complex", "two-hexagons"]).0, EXIT_CAP);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(run(&["--max-crossings", "99", "parse", "O"]).0, EXIT_USAGE);
    assert_eq!(run(&[]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn verify_reports_success() {
    let (code, out, _) = run(&["verify", "left-trefoil", "hopf", "--count", "10", "--corpus-crossings", "6"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("ok left-trefoil"));
}

#[test]
fn families_subcommands() {
    let (code, out, _) = run(&["families", "join-power", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("Z^3"), "{out}");
    let (code, out, _) = run(&["families", "catalog"]);
    assert_eq!(code, 0);
    assert!(out.contains("two-hexagons"));
    let (code, out, _) = run(&["families", "knotify", "hexagon", "--all"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn corpus_is_seeded() {
    let a = run(&["--seed", "4", "families", "corpus", "--count", "3", "--crossings", "6"]);
    let b = run(&["--seed", "4", "families", "corpus", "--count", "3", "--crossings", "6"]);
    assert_eq!(a.0, 0, "{}", a.2);
    assert_eq!(a.1, b.1);
    assert_eq!(a.1.lines().count(), 3);
}

#[test]
fn argument_definitions_are_consistent() {
    use clap::CommandFactory;
    exkh::cli::Cli::command().debug_assert();
}
