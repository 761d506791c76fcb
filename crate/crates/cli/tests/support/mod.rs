//! Helpers shared by the CLI test targets.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn vflie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vflie"))
        .args(args)
        .env_remove("VFLIE_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.out"))
}

/// `(golden file, arguments)`; every case must exit 0.
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("bracket", &["bracket", "y*dx", "x*dy"]),
    ("bracket_json", &["--json", "bracket", "y*dx", "x*dy"]),
    (
        "bracket_cyclotomic",
        &["bracket", "--order", "3", "(z)*y*dx", "x^2*dy"],
    ),
    ("divergence", &["divergence", "x^2*y*dx + x*y^2*dy + z*dz"]),
    (
        "components",
        &["components", "y*dx + x^2*dy - 3*x*dx + 3*y*dy"],
    ),
    (
        "components_json",
        &["components", "--json", "y*dx + x^2*dy"],
    ),
    ("table_check", &["table-check", "--max", "8"]),
    (
        "decompose_json",
        &[
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
        ],
    ),
    (
        "decompose",
        &["decompose", "--d", "8", "--e", "3", "--a", "5", "--b", "1"],
    ),
    (
        "invariant_basis",
        &["invariant-basis", "--d", "3", "--e", "2", "--cap", "4"],
    ),
    (
        "derived_series_json",
        &["derived-series", "--alg", "j2plus", "--cap", "5", "--json"],
    ),
    (
        "derived_series_sl2",
        &["derived-series", "--alg", "sl2_A1", "--cap", "2"],
    ),
    (
        "member_true",
        &["member", "--alg", "I_de", "--d", "3", "--e", "2", "x^5*dy"],
    ),
    (
        "member_json",
        &[
            "member",
            "--json",
            "--alg",
            "j3plus",
            "y*z*dx + z^2*dy + dz",
        ],
    ),
    ("sl2_detect", &["sl2-detect", "2*x^2*y*dx - 2*x*y^2*dy"]),
    ("sl2_detect_json", &["sl2-detect", "--json", "x*dy"]),
    (
        "special_json",
        &["special", "--json", "2*x^3 - 6*x^2 + 11*x - 7"],
    ),
    ("special_non", &["special", "x^3 + x^2"]),
    (
        "ideal_check",
        &["ideal-check", "--d", "4", "--e", "3", "--cap", "5"],
    ),
    ("veronese_check", &["veronese-check"]),
    (
        "triangular_extension",
        &["triangular-extension-check", "--cap", "4"],
    ),
    (
        "probe_question2_json",
        &[
            "probe-question2",
            "--d",
            "4",
            "--e",
            "3",
            "--cap",
            "6",
            "--json",
        ],
    ),
];

/// Runs every golden case and returns the names whose output differs.
/// With `bless`, rewrites the files instead.
pub fn golden_mismatches(bless: bool) -> Vec<String> {
    let mut mismatched = Vec::new();
    for (name, args) in GOLDEN {
        let out = vflie(args);
        if out.status.code() != Some(0) {
            mismatched.push(format!("{name}: exit {:?}", out.status.code()));
            continue;
        }
        let path = golden_path(name);
        if bless {
            std::fs::write(&path, &out.stdout).expect("golden directory is writable");
            continue;
        }
        match std::fs::read(&path) {
            Ok(want) if want == out.stdout => {}
            Ok(_) => mismatched.push(format!("{name}:\n{}", String::from_utf8_lossy(&out.stdout))),
            Err(_) => mismatched.push(format!("{name}: missing {path:?}")),
        }
    }
    mismatched
}
