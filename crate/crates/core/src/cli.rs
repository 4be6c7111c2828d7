//! The `vtangle` command line.
//!
//! Exit codes: 0 success, 2 parse or validation error, 3 singular input
//! given to a command that needs classical crossings, 4 fuzz
//! counterexample, 5 gluing incompatibility.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::diagram::TangleDiagram;
use crate::gauss::{parse, serialize};
use crate::invariants::{matrix_text, p_lk, p_lk_l, p_sc, vlk_matrix, Invariant, InvariantReport, PolyJson};
use crate::moves::{random_walk_with, MoveKind, WalkConfig, DEFAULT_CHORD_CAP};
use crate::ops::{connect, gen_vlk_link, is_string_link, GlueResult};
use crate::poly::{parse_rational, LaurentPoly, Rational};
use crate::singular::{derivative, singular_labels};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;
pub const EXIT_COUNTEREXAMPLE: i32 = 4;
pub const EXIT_GLUE: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "vtangle", about = "Index polynomial invariants of virtual tangles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Input file in Gauss-code format, or "-" for standard input.
    #[arg(short, long = "input", default_value = "-")]
    pub input: Vec<String>,
    /// Coefficient a, as an integer or p/q.
    #[arg(long = "a", default_value = "1", value_parser = rational_arg, allow_hyphen_values = true)]
    pub a: Rational,
    /// Coefficient b, as an integer or p/q.
    #[arg(long = "b", default_value = "1", value_parser = rational_arg, allow_hyphen_values = true)]
    pub b: Rational,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print p_sc, p_lk, p_lkL and the linking matrices.
    Compute(#[command(flatten)] Common),
    /// Check invariance along seeded random Reidemeister walks.
    Fuzz {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Largest chord count a walk may reach.
        #[arg(long, default_value_t = DEFAULT_CHORD_CAP)]
        cap: usize,
    },
    /// Stack the first input on the second and compare invariants.
    Sum(#[command(flatten)] Common),
    /// Alternating sum over resolutions of all double points.
    Derivative(#[command(flatten)] Common),
    /// Write a two-component link with vlk(L1,L2) = A and vlk(L2,L1) = -B.
    Gen {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
    },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn load(&mut self, path: &str) -> Result<TangleDiagram, i32> {
        let text = if path == "-" {
            let mut s = String::new();
            if let Err(e) = self.stdin.read_to_string(&mut s) {
                let _ = writeln!(self.err, "error: reading standard input: {e}");
                return Err(EXIT_PARSE);
            }
            s
        } else {
            match std::fs::read_to_string(path) {
                Ok(s) => s,
                Err(e) => {
                    let _ = writeln!(self.err, "error: {path}: {e}");
                    return Err(EXIT_PARSE);
                }
            }
        };
        parse(&text).map_err(|e| {
            let _ = writeln!(self.err, "error: {path}:{e}");
            EXIT_PARSE
        })
    }

    fn load_classical(&mut self, path: &str, hint: &str) -> Result<TangleDiagram, i32> {
        let d = self.load(path)?;
        if d.has_singular() {
            let _ = writeln!(self.err, "error: {path} has singular chords; {hint}");
            return Err(EXIT_SINGULAR);
        }
        Ok(d)
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
            } else {
                let _ = write!(out, "{}", e.render());
            }
            return e.exit_code();
        }
    };
    let mut io = Io { stdin, out, err };
    let code = match cli.command {
        Command::Compute(c) => cmd_compute(&mut io, &c),
        Command::Fuzz { common, seed, steps, trials, cap } => {
            cmd_fuzz(&mut io, &common, seed, steps, trials, cap)
        }
        Command::Sum(c) => cmd_sum(&mut io, &c),
        Command::Derivative(c) => cmd_derivative(&mut io, &c),
        Command::Gen { a, b } => cmd_gen(&mut io, a, b),
    };
    code.unwrap_or_else(|c| c)
}

fn emit(io: &mut Io<'_>, text: &str) -> Result<i32, i32> {
    let _ = io.out.write_all(text.as_bytes());
    Ok(EXIT_OK)
}

fn single_input<'a>(io: &mut Io<'_>, c: &'a Common) -> Result<&'a str, i32> {
    match c.input.as_slice() {
        [one] => Ok(one),
        _ => {
            let _ = writeln!(io.err, "error: expected exactly one --input");
            Err(EXIT_PARSE)
        }
    }
}

fn report_output(r: &InvariantReport, format: Format) -> String {
    match format {
        Format::Text => r.to_text(),
        Format::Json => serde_json::to_string_pretty(&r.to_json()).unwrap() + "\n",
    }
}

fn cmd_compute(io: &mut Io<'_>, c: &Common) -> Result<i32, i32> {
    let path = single_input(io, c)?;
    let d = io.load_classical(path, "use `vtangle derivative`")?;
    let r = InvariantReport::compute(&d, &c.a, &c.b).expect("classical diagram");
    emit(io, &report_output(&r, c.format))
}

// Values that must not change along a walk.
#[derive(Debug, PartialEq, Eq)]
struct Signature {
    p_sc: LaurentPoly,
    p_lk: LaurentPoly,
    p_lk_l: LaurentPoly,
    vlk: Vec<Vec<i64>>,
}

fn signature(d: &TangleDiagram, a: &Rational, b: &Rational) -> Signature {
    Signature {
        p_sc: p_sc(d).expect("classical"),
        p_lk: p_lk(d, a, b).expect("classical"),
        p_lk_l: p_lk_l(d, a, b).expect("classical"),
        vlk: vlk_matrix(d),
    }
}

fn kind_name(k: MoveKind) -> &'static str {
    match k {
        MoveKind::R1Insert => "R1+",
        MoveKind::R1Remove => "R1-",
        MoveKind::R2Insert => "R2+",
        MoveKind::R2Remove => "R2-",
        MoveKind::R3 => "R3",
    }
}

fn cmd_fuzz(
    io: &mut Io<'_>,
    c: &Common,
    seed: u64,
    steps: usize,
    trials: usize,
    cap: usize,
) -> Result<i32, i32> {
    let path = single_input(io, c)?;
    let d = io.load_classical(path, "fuzzing needs classical crossings")?;
    let base = signature(&d, &c.a, &c.b);
    let cfg = WalkConfig { steps, chord_cap: cap };
    let mut counts: BTreeMap<&'static str, usize> = MoveKind::ALL.iter().map(|&k| (kind_name(k), 0)).collect();
    let mut total = 0;
    for trial in 0..trials {
        let walk = random_walk_with(&d, &cfg, seed.wrapping_add(trial as u64));
        for (i, site) in walk.moves.iter().enumerate() {
            *counts.get_mut(kind_name(site.kind())).unwrap() += 1;
            total += 1;
            let after = &walk.diagrams[i + 1];
            if signature(after, &c.a, &c.b) != base {
                let before = &walk.diagrams[i];
                let msg = format!(
                    "counterexample in trial {trial}, step {}\nmove: {site:?}\n--- before\n{}--- after\n{}",
                    i + 1,
                    serialize(before),
                    serialize(after)
                );
                let text = match c.format {
                    Format::Text => msg,
                    Format::Json => {
                        let v = json!({
                            "result": "FAIL",
                            "trial": trial,
                            "step": i + 1,
                            "move": format!("{site:?}"),
                            "before": serialize(before),
                            "after": serialize(after),
                        });
                        serde_json::to_string_pretty(&v).unwrap() + "\n"
                    }
                };
                let _ = io.out.write_all(text.as_bytes());
                return Err(EXIT_COUNTEREXAMPLE);
            }
        }
    }
    let text = match c.format {
        Format::Text => {
            let by_kind: Vec<String> = counts.iter().map(|(k, n)| format!("{k} {n}")).collect();
            format!(
                "trials: {trials}\nsteps: {steps}\nseed: {seed}\nmoves: {total}\nby kind: {}\nresult: PASS\n",
                by_kind.join(", ")
            )
        }
        Format::Json => {
            let v = json!({
                "trials": trials,
                "steps": steps,
                "seed": seed,
                "moves": total,
                "by_kind": counts,
                "result": "PASS",
            });
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
    };
    emit(io, &text)
}

fn additivity(g: &GlueResult, t: &TangleDiagram, u: &TangleDiagram, invs: &[Invariant]) -> bool {
    invs.iter().all(|inv| {
        let whole = inv.eval(&g.diagram).expect("classical");
        let parts = &g.lift_upper(&inv.eval(t).expect("classical")) + &g.lift_lower(&inv.eval(u).expect("classical"));
        whole == parts
    })
}

fn cmd_sum(io: &mut Io<'_>, c: &Common) -> Result<i32, i32> {
    let [tp, up] = c.input.as_slice() else {
        let _ = writeln!(io.err, "error: sum needs exactly two --input files");
        return Err(EXIT_PARSE);
    };
    let t = io.load_classical(tp, "sum needs classical crossings")?;
    let u = io.load_classical(up, "sum needs classical crossings")?;
    let g = match connect(&t, &u) {
        Ok(g) => g,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            return Err(EXIT_GLUE);
        }
    };
    let invs = Invariant::all(&c.a, &c.b);
    let verdict = if is_string_link(&t) && is_string_link(&u) {
        let reverse = connect(&u, &t).expect("string links stack both ways");
        let commute = invs.iter().all(|inv| inv.eval(&g.diagram).unwrap() == inv.eval(&reverse.diagram).unwrap());
        if additivity(&g, &t, &u, &invs) && commute {
            "PASS"
        } else {
            "FAIL"
        }
    } else {
        "n/a"
    };
    let rt = InvariantReport::compute(&t, &c.a, &c.b).unwrap();
    let ru = InvariantReport::compute(&u, &c.a, &c.b).unwrap();
    let rs = InvariantReport::compute(&g.diagram, &c.a, &c.b).unwrap();
    let relations: Vec<String> = g.relations.pairs.iter().map(|(i, j)| format!("t{}=u{}", i + 1, j + 1)).collect();
    let text = match c.format {
        Format::Text => {
            let indent = |s: String| s.lines().map(|l| format!("  {l}\n")).collect::<String>();
            format!(
                "T:\n{}U:\n{}T#U:\n{}relations: {}\nadditivity: {verdict}\n",
                indent(rt.to_text()),
                indent(ru.to_text()),
                indent(rs.to_text()),
                relations.join(" ")
            )
        }
        Format::Json => {
            let v = json!({
                "T": rt.to_json(),
                "U": ru.to_json(),
                "T#U": rs.to_json(),
                "relations": relations,
                "additivity": verdict,
            });
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
    };
    emit(io, &text)
}

fn cmd_derivative(io: &mut Io<'_>, c: &Common) -> Result<i32, i32> {
    let path = single_input(io, c)?;
    let d = io.load(path)?;
    let k = singular_labels(&d).len();
    let mut values = Vec::new();
    for inv in Invariant::all(&c.a, &c.b) {
        let v = derivative(&d, &inv).expect("every resolution is classical");
        values.push((inv.name(), v));
    }
    let text = match c.format {
        Format::Text => {
            let mut s = format!("double points: {k}\na: {}\nb: {}\n", c.a, c.b);
            for (name, v) in &values {
                s += &format!("{name}: {v}\n");
            }
            if k == 0 {
                s += &matrix_text("vlk", &vlk_matrix(&d));
            }
            s
        }
        Format::Json => {
            let mut v = json!({ "double_points": k, "a": c.a.to_string(), "b": c.b.to_string() });
            for (name, p) in &values {
                v[*name] = serde_json::to_value(PolyJson::from(p)).unwrap();
            }
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
    };
    emit(io, &text)
}

fn cmd_gen(io: &mut Io<'_>, a: i64, b: i64) -> Result<i32, i32> {
    match gen_vlk_link(a, b) {
        Ok(d) => emit(io, &serialize(&d)),
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            Err(EXIT_PARSE)
        }
    }
}
