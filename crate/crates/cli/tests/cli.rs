//! Golden outputs and the exit-code contract of the `vflie` binary.
//!
//! Run with `VFLIE_BLESS=1` to rewrite the golden files after an intended
//! output change.

mod support;

use std::process::Command;

use support::{vflie, GOLDEN};

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("VFLIE_BLESS").is_some();
    let mismatched = support::golden_mismatches(bless);
    assert!(
        mismatched.is_empty(),
        "golden mismatches:\n{}",
        mismatched.join("\n")
    );
}

#[test]
fn pinned_examples() {
    assert_eq!(
        vflie(&["bracket", "y*dx", "x*dy"]).stdout,
        b"-x*dx + y*dy\n"
    );
    let out = vflie(&[
        "decompose",
        "--d",
        "3",
        "--e",
        "2",
        "--a",
        "3",
        "--b",
        "0",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["c"], "-1/2");
    assert_eq!(v["verified"], true);
    let out = String::from_utf8(vflie(&["table-check", "--max", "8"]).stdout).unwrap();
    assert!(
        out.starts_with("all ") && out.trim_end().ends_with(" identities hold"),
        "{out}"
    );
}

#[test]
fn json_outputs_parse() {
    for (name, args) in GOLDEN.iter().filter(|(_, a)| a.contains(&"--json")) {
        let out = vflie(args);
        serde_json::from_slice::<serde_json::Value>(&out.stdout)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

/// Malformed input, bad parameters and usage errors exit 2 with a message on stderr.
#[test]
fn input_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["bracket", "y*dx", "x*"],
        &["bracket", "2x*dx", "dx"],
        &["bracket", "x*dx", "dx", "--order", "0"],
        &["divergence", "x^"],
        &["components", "x*dz"],
        &["table-check", "--max", "-1"],
        &["decompose", "--d", "4", "--e", "2", "--a", "1", "--b", "1"],
        &["decompose", "--d", "3", "--e", "2", "--a", "1", "--b", "0"],
        &["invariant-basis", "--d", "1", "--e", "1"],
        &["derived-series", "--alg", "nope", "--cap", "3"],
        &["derived-series", "--alg", "g_de", "--cap", "3"],
        &["member", "--alg", "j2plus", "x*dq"],
        &["member", "--alg", "u_de_plus", "--d", "3", "y^2*dx"],
        &["sl2-detect", "y*dx"],
        &["sl2-detect", "x^2*dx"],
        &["sl2-detect", "x*dx + x^2*dy"],
        &["special", "0"],
        &["special", "y^2"],
        &["ideal-check", "--d", "3", "--e", "2", "--box", "1"],
        &["veronese-check", "--max-d", "x"],
        &["triangular-extension-check", "--cap", "2"],
        &["probe-question2", "--d", "6", "--e", "3"],
        &["frobnicate"],
        &["bracket", "--no-such-flag", "dx", "dx"],
        &[],
    ];
    for args in cases {
        let out = vflie(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn every_subcommand_succeeds_on_valid_input() {
    let names: std::collections::BTreeSet<&str> = GOLDEN
        .iter()
        .map(|(_, a)| *a.iter().find(|s| !s.starts_with("--")).unwrap())
        .collect();
    for sub in [
        "bracket",
        "divergence",
        "components",
        "table-check",
        "decompose",
        "invariant-basis",
        "derived-series",
        "member",
        "sl2-detect",
        "special",
        "ideal-check",
        "veronese-check",
        "triangular-extension-check",
        "probe-question2",
    ] {
        assert!(names.contains(sub), "no golden case for {sub}");
    }
}

#[test]
fn max_degree_environment_override() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_vflie"));
        c.args(["invariant-basis", "--d", "3", "--e", "2"]);
        match env {
            Some(v) => c.env("VFLIE_MAX_DEGREE", v),
            None => c.env_remove("VFLIE_MAX_DEGREE"),
        };
        c.output().unwrap()
    };
    let capped = run(Some("3"));
    assert_eq!(capped.status.code(), Some(0));
    let explicit = vflie(&["invariant-basis", "--d", "3", "--e", "2", "--cap", "3"]);
    assert_eq!(capped.stdout, explicit.stdout);
    assert_ne!(run(None).stdout, capped.stdout);
    assert_eq!(run(Some("lots")).status.code(), Some(2));
}
