//! `vflie`: command-line access to the vector-field Lie algebra library.
//!
//! A verification suite that finds a violated identity exits 1. Malformed
//! input and usage errors exit 2.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use vflie_core::generate::{
    build_dab_word, detect_sl2, question2_probe, verify_dab_word, verify_triangular_extension,
    veronese_ad_chain, veronese_identity,
};
use vflie_core::liealg::{derived_series, SpanBasis};
use vflie_core::parse::print_word;
use vflie_core::vecfield::table_check;
use vflie_core::{
    borel1, parse_poly, parse_vecfield, Error, Field, LatticeParams, NamedAlgebra, Tag, VecField,
};

const DEFAULT_CAP: u32 = 6;

#[derive(Parser)]
#[command(
    name = "vflie",
    version,
    about = "Exact Lie algebra computations with polynomial vector fields"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Ambient {
    /// Number of variables (x, y, z); inferred from the input when omitted.
    #[arg(long)]
    arity: Option<usize>,
    /// Work over Q(zeta_d) instead of Q.
    #[arg(long)]
    order: Option<u32>,
}

#[derive(Args, Clone, Copy)]
struct De {
    #[arg(long)]
    d: i64,
    #[arg(long)]
    e: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Lie bracket [X, Y] of two vector fields.
    Bracket {
        x: String,
        y: String,
        #[command(flatten)]
        ambient: Ambient,
    },
    /// Divergence of a vector field.
    Divergence {
        x: String,
        #[command(flatten)]
        ambient: Ambient,
    },
    /// Bigraded homogeneous components of a field on the plane.
    Components {
        x: String,
        #[arg(long)]
        order: Option<u32>,
    },
    /// Cross-check the closed-form commutator table against direct brackets.
    TableCheck {
        #[arg(long, default_value_t = 8)]
        max: u32,
    },
    /// Express D[a,b] through brackets of the two lowest roots.
    Decompose {
        #[command(flatten)]
        de: De,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Truncated basis of the invariant algebra for (d,e).
    InvariantBasis {
        #[command(flatten)]
        de: De,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Derived series of a truncated named algebra.
    DerivedSeries {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        e: Option<i64>,
        #[arg(long)]
        cap: Option<u32>,
        /// Degree cap for brackets; defaults to twice the truncation degree.
        #[arg(long)]
        bracket_cap: Option<u32>,
        #[arg(long, default_value_t = 16)]
        max_levels: usize,
    },
    /// Membership of a field in a named algebra.
    Member {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        e: Option<i64>,
        x: String,
        #[arg(long)]
        order: Option<u32>,
    },
    /// Find an sl(2)-triple generated by a homogeneous field and j2plus.
    Sl2Detect { x: String },
    /// Classify a polynomial in x as special or not.
    Special { f: String },
    /// Check the lattice inclusion and the ideal property of I_de.
    IdealCheck {
        #[command(flatten)]
        de: De,
        #[arg(long = "box", default_value_t = 12)]
        box_bound: i64,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Check the Veronese generation identities.
    VeroneseCheck {
        #[arg(long, default_value_t = 6)]
        max_d: u32,
        #[arg(long, default_value_t = 3)]
        max_kl: u32,
    },
    /// Check the solvable extension of j3plus by z(x dx - y dy).
    TriangularExtensionCheck {
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Compare the truncated Lie closure of the roots with the invariants.
    ProbeQuestion2 {
        #[command(flatten)]
        de: De,
        #[arg(long)]
        cap: Option<u32>,
    },
}

/// Outcome of a subcommand: text to print and whether every check passed.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, ok: true }
    }

    fn check(text: String, ok: bool) -> Output {
        Output { text, ok }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    match &result {
        Ok(out) => println!("{}", out.text),
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(exit_code(&result))
}

fn exit_code(result: &Result<Output, Error>) -> u8 {
    match result {
        Ok(out) if out.ok => 0,
        Ok(_) => 1,
        Err(_) => 2,
    }
}

fn default_cap(cap: Option<u32>) -> Result<u32, Error> {
    if let Some(c) = cap {
        return Ok(c);
    }
    match std::env::var("VFLIE_MAX_DEGREE") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::InvalidArgument(format!(
                "VFLIE_MAX_DEGREE must be a non-negative integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn field_of(order: Option<u32>) -> Result<Field, Error> {
    match order {
        None => Ok(Field::Rational),
        Some(d) => Field::cyclotomic(d),
    }
}

/// Highest coordinate mentioned outside parenthesized coefficients.
fn infer_arity(texts: &[&str]) -> usize {
    let mut arity = 1;
    for t in texts {
        let mut depth = 0usize;
        for c in t.chars() {
            match c {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                'y' if depth == 0 => arity = arity.max(2),
                'z' if depth == 0 => arity = arity.max(3),
                _ => {}
            }
        }
    }
    arity
}

fn fields(texts: &[&str], ambient: &Ambient) -> Result<Vec<VecField>, Error> {
    let arity = ambient.arity.unwrap_or_else(|| infer_arity(texts));
    let field = field_of(ambient.order)?;
    texts
        .iter()
        .map(|t| parse_vecfield(t, arity, field))
        .collect()
}

fn algebra(name: &str, d: Option<i64>, e: Option<i64>) -> Result<NamedAlgebra, Error> {
    let tag: Tag = name.parse()?;
    let params = match (d, e) {
        (Some(d), Some(e)) => Some(LatticeParams::new(d, e)?),
        (None, None) => None,
        _ => return Err(Error::InvalidArgument("--d and --e go together".into())),
    };
    NamedAlgebra::new(tag, params)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain json")
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let json = cli.json;
    match &cli.command {
        Command::Bracket { x, y, ambient } => {
            let v = fields(&[x, y], ambient)?;
            let r = v[0].bracket(&v[1])?;
            Ok(Output::ok(if json {
                to_json(&json!({ "result": r.to_string() }))
            } else {
                r.to_string()
            }))
        }
        Command::Divergence { x, ambient } => {
            let v = fields(&[x], ambient)?;
            let r = v[0].divergence();
            Ok(Output::ok(if json {
                to_json(&json!({ "result": r.to_string() }))
            } else {
                r.to_string()
            }))
        }
        Command::Components { x, order } => {
            let amb = Ambient {
                arity: Some(2),
                order: *order,
            };
            let v = fields(&[x], &amb)?;
            let comps = v[0].bidegree_components()?;
            if json {
                let list: Vec<_> = comps
                    .iter()
                    .map(|(bd, f)| json!({ "bidegree": [bd.a, bd.b], "field": f.to_string() }))
                    .collect();
                Ok(Output::ok(to_json(&list)))
            } else if comps.is_empty() {
                Ok(Output::ok("(no components)".into()))
            } else {
                let keys: Vec<String> = comps.keys().map(|k| k.to_string()).collect();
                let w = keys.iter().map(String::len).max().unwrap_or(0);
                let lines: Vec<String> = keys
                    .iter()
                    .zip(comps.values())
                    .map(|(k, f)| format!("{k:>w$}  {f}"))
                    .collect();
                Ok(Output::ok(lines.join("\n")))
            }
        }
        Command::TableCheck { max } => {
            let (count, bad) = table_check(*max);
            let ok = bad.is_empty();
            let text = if json {
                let failures: Vec<String> =
                    bad.iter().map(|(g, h)| format!("[{g}, {h}]")).collect();
                to_json(&json!({ "checked": count, "failures": failures }))
            } else if ok {
                format!("all {count} identities hold")
            } else {
                let mut lines = vec![format!("{} of {count} identities FAIL", bad.len())];
                lines.extend(bad.iter().map(|(g, h)| format!("  [{g}, {h}]")));
                lines.join("\n")
            };
            Ok(Output::check(text, ok))
        }
        Command::Decompose { de, a, b } => {
            let p = LatticeParams::new(de.d, de.e)?;
            let w = build_dab_word(&p, *a, *b)?;
            let verified = verify_dab_word(&p, &w)?;
            let text = if json {
                #[derive(Serialize)]
                struct Out<'a> {
                    word: &'a vflie_core::BracketWord,
                    c: String,
                    verified: bool,
                }
                to_json(&Out {
                    word: &w.word,
                    c: w.c.to_string(),
                    verified,
                })
            } else {
                format!(
                    "D[{a},{b}] = ({}) * {}\npath: {}\nverified: {verified}",
                    w.c,
                    w.word,
                    w.path.to_json()
                )
            };
            Ok(Output::check(text, verified))
        }
        Command::InvariantBasis { de, cap } => {
            let alg = NamedAlgebra::new(Tag::NDeInvariants, Some(LatticeParams::new(de.d, de.e)?))?;
            let basis: Vec<String> = alg
                .truncated_basis(default_cap(*cap)?)
                .iter()
                .map(|v| v.to_string())
                .collect();
            Ok(Output::ok(if json {
                to_json(&basis)
            } else {
                basis.join("\n")
            }))
        }
        Command::DerivedSeries {
            alg,
            d,
            e,
            cap,
            bracket_cap,
            max_levels,
        } => {
            let a = algebra(alg, *d, *e)?;
            let cap = default_cap(*cap)?;
            let basis = a.truncated_basis(cap);
            let span = SpanBasis::from_fields(a.arity(), Field::Rational, &basis)?;
            let r = derived_series(&span, bracket_cap.unwrap_or(cap), *max_levels)?;
            Ok(Output::ok(if json {
                r.to_json()
            } else {
                let levels: Vec<String> = r.levels.iter().map(|d| d.to_string()).collect();
                let length = match r.derived_length() {
                    Some(l) => l.to_string(),
                    None => "undecided".into(),
                };
                format!(
                    "truncation  {}\nlevels      {}\ndiscards    {}\nlength      {length}\nverdict     {}",
                    r.truncation,
                    levels.join(" "),
                    r.discards,
                    to_json(&r.verdict).trim_matches('"'),
                )
            }))
        }
        Command::Member {
            alg,
            d,
            e,
            x,
            order,
        } => {
            let a = algebra(alg, *d, *e)?;
            let amb = Ambient {
                arity: Some(a.arity()),
                order: *order,
            };
            let v = fields(&[x], &amb)?;
            let m = a.member(&v[0])?;
            Ok(Output::ok(if json {
                to_json(&json!({ "algebra": a.to_string(), "member": m }))
            } else {
                m.to_string()
            }))
        }
        Command::Sl2Detect { x } => {
            let v = parse_vecfield(x, 2, Field::Rational)?;
            let c = detect_sl2(&v)?;
            let ok = c.all_verified();
            let text = if json {
                to_json(&json!({
                    "E": c.e.to_string(),
                    "H": c.h.to_string(),
                    "F": c.f.to_string(),
                    "relations_verified": c.relations_verified,
                    "provenance": {
                        "E": c.words.e,
                        "H": c.words.h,
                        "F": c.words.f,
                    },
                }))
            } else {
                format!(
                    "E  {}\nH  {}\nF  {}\n[H,E] = 2E  {}\n[H,F] = -2F {}\n[E,F] = H   {}\nE <- {}\nH <- {}\nF <- {}",
                    c.e,
                    c.h,
                    c.f,
                    c.relations_verified[0],
                    c.relations_verified[1],
                    c.relations_verified[2],
                    print_word(&c.words.e),
                    print_word(&c.words.h),
                    print_word(&c.words.f),
                )
            };
            Ok(Output::check(text, ok))
        }
        Command::Special { f } => {
            let p = parse_poly(f, 1, Field::Rational)?;
            let s = borel1::special_form(&p)?;
            Ok(Output::ok(if json {
                s.to_json()
            } else {
                match &s.witness {
                    Some(w) => format!(
                        "{}  alpha={} lambda={} mu={} k={}",
                        to_json(&s.class).trim_matches('"'),
                        w.alpha,
                        w.lambda,
                        w.mu,
                        w.k
                    ),
                    None => to_json(&s.class).trim_matches('"').to_string(),
                }
            }))
        }
        Command::IdealCheck { de, box_bound, cap } => {
            let p = LatticeParams::new(de.d, de.e)?;
            let cap = default_cap(*cap)?;
            let monoid = p.monoid_ideal_check(*box_bound)?;
            let inv = NamedAlgebra::new(Tag::NDeInvariants, Some(p))?;
            let ideal = NamedAlgebra::new(Tag::IDe, Some(p))?;
            let xs = inv.truncated_basis(cap);
            let ys = ideal.truncated_basis(cap);
            let mut failures = Vec::new();
            for x in &xs {
                for y in &ys {
                    let z = x.bracket(y)?;
                    if !ideal.member(&z)? {
                        failures.push(format!("[{x}, {y}]"));
                    }
                }
            }
            let pairs = xs.len() * ys.len();
            let ok = monoid.holds && failures.is_empty();
            let text = if json {
                to_json(&json!({
                    "monoid": {
                        "holds": monoid.holds,
                        "checked": monoid.checked,
                        "violations": monoid.violations,
                    },
                    "ideal": { "pairs": pairs, "failures": failures },
                    "holds": ok,
                }))
            } else {
                let mut lines = vec![
                    format!(
                        "monoid inclusion  {}  ({} sums in [-1,{}]^2)",
                        pass(monoid.holds),
                        monoid.checked,
                        box_bound
                    ),
                    format!(
                        "ideal brackets    {}  ({pairs} pairs up to degree {cap})",
                        pass(failures.is_empty())
                    ),
                ];
                lines.extend(failures.iter().map(|f| format!("  not in I_de: {f}")));
                lines.join("\n")
            };
            Ok(Output::check(text, ok))
        }
        Command::VeroneseCheck { max_d, max_kl } => {
            let mut identities = 0;
            let mut chains = 0;
            let mut failures = Vec::new();
            for d in 2..=*max_d {
                for k in 0..=*max_kl {
                    for l in 0..=*max_kl {
                        identities += 1;
                        let (lhs, rhs) = veronese_identity(d, k, l)?;
                        if lhs != rhs {
                            failures.push(format!("identity d={d} k={k} l={l}"));
                        }
                    }
                }
                for l in 0..=*max_kl {
                    for s in 0..=l * d {
                        chains += 1;
                        let ok = veronese_ad_chain(d, l, s)
                            .map(|c| vflie_core::generate::is_positive(&c.alpha))
                            .unwrap_or(false);
                        if !ok {
                            failures.push(format!("chain d={d} l={l} s={s}"));
                        }
                    }
                }
            }
            let ok = failures.is_empty();
            let text = if json {
                to_json(
                    &json!({ "identities": identities, "chains": chains, "failures": failures }),
                )
            } else {
                let mut lines = vec![
                    format!("identities  {identities}"),
                    format!("chains      {chains}"),
                    format!("result      {}", pass(ok)),
                ];
                lines.extend(failures.iter().map(|f| format!("  {f}")));
                lines.join("\n")
            };
            Ok(Output::check(text, ok))
        }
        Command::TriangularExtensionCheck { cap } => {
            let r = verify_triangular_extension(default_cap(*cap)?)?;
            let ok = r.all_passed();
            let text = if json {
                to_json(&r)
            } else {
                let w = r.clauses.iter().map(|c| c.name.len()).max().unwrap_or(0);
                r.clauses
                    .iter()
                    .map(|c| {
                        let line = format!("{:<w$}  {}", c.name, pass(c.passed));
                        if c.detail.is_empty() {
                            line
                        } else {
                            format!("{line}  {}", c.detail)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok(Output::check(text, ok))
        }
        Command::ProbeQuestion2 { de, cap } => {
            let p = LatticeParams::new(de.d, de.e)?;
            let r = question2_probe(&p, default_cap(*cap)?)?;
            Ok(Output::ok(if json {
                to_json(&r)
            } else {
                let missing: Vec<String> = r
                    .missing
                    .iter()
                    .map(|[a, b]| format!("({a},{b})"))
                    .collect();
                format!(
                    "generated bidegrees  {}\ninvariant bidegrees  {}\nmissing              {}",
                    r.generated_support.len(),
                    r.invariant_support.len(),
                    if missing.is_empty() {
                        "none".to_string()
                    } else {
                        missing.join(" ")
                    }
                )
            }))
        }
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Ok(Output::ok(String::new()))), 0);
        assert_eq!(exit_code(&Ok(Output::check(String::new(), false))), 1);
        assert_eq!(exit_code(&Err(Error::InvalidArgument("x".into()))), 2);
    }

    #[test]
    fn arity_ignores_coefficients() {
        assert_eq!(infer_arity(&["x*dx"]), 1);
        assert_eq!(infer_arity(&["(1 - z^2)*x*dx", "y*dx"]), 2);
        assert_eq!(infer_arity(&["z*dz"]), 3);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
