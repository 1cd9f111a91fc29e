//! The `aic` command line.
//!
//! Exit codes: 0 on success, 1 when a check finds violations or a predicate
//! is false, 2 on usage and parse errors. Document arguments accept `-` for
//! standard input.

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::io::Read;

use aic_core::coloring::{Color, Equivalence};
use aic_core::dehn_thurston::{self, Lemma1Report, ShiftDefect};
use aic_core::tree::{self, TreeLetter};
use aic_core::{Generator, StructuredColoring, TorusCurve, TreeWord};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::format::{self, FormatError};

/// Largest tree depth `tree` will print.
pub const MAX_TREE_DEPTH: u32 = 20;
/// Largest ball radius `verify` will scan.
pub const MAX_BALL: u32 = 10_000;
/// Longest window `dt string` will print.
pub const MAX_STRING_LEN: u64 = 1 << 20;

#[derive(Debug, Parser)]
#[command(name = "aic", version, about = "Almost invariant colorings of curves on surfaces")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenArg {
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "R", alias = "r")]
    R,
}

impl From<GenArg> for Generator {
    fn from(g: GenArg) -> Self {
        match g {
            GenArg::S => Generator::S,
            GenArg::R => Generator::R,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TreeFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DtFormat {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Canonical sign representative of a curve and its region.
    Canon {
        #[arg(allow_hyphen_values = true)]
        curve: String,
    },
    /// Tree word of a curve in the positive quadrant.
    Factor {
        #[arg(allow_hyphen_values = true)]
        curve: String,
        /// Print run lengths instead of the word.
        #[arg(long)]
        runs: bool,
    },
    /// Label of the vertex reached by a tree word.
    Eval { word: String },
    /// Dump the labelled tree to a given depth.
    Tree {
        #[arg(long)]
        depth: u32,
        #[arg(long, value_enum, default_value_t = TreeFormat::Json)]
        format: TreeFormat,
    },
    /// Build the coloring with one anchor color per level-k vertex.
    Mkcolor {
        #[arg(long)]
        level: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        palette: Vec<String>,
        /// JSON object mapping shallow vertex labels to colors.
        #[arg(long)]
        exceptions: Option<String>,
    },
    /// Color of a curve.
    Query {
        doc: String,
        #[arg(allow_hyphen_values = true)]
        curve: String,
    },
    /// Exact defect set of a generator.
    Defect {
        doc: String,
        #[arg(long = "gen", value_enum)]
        generator: GenArg,
    },
    /// Scan a ball and compare against the certified defects.
    Verify {
        doc: String,
        #[arg(long)]
        ball: u32,
        /// Fail if this generator changes any color in the ball.
        #[arg(long = "claim-invariant", value_enum)]
        claim_invariant: Vec<GenArg>,
    },
    /// Equivalent override-free, R-invariant coloring.
    Normalize { doc: String },
    /// Decide whether two colorings differ only finitely.
    Equiv { a: String, b: String },
    /// Decide whether a coloring is equivalent to a constant one.
    Trivial { doc: String },
    /// Recolor through `from=to` pairs; unlisted colors are kept.
    Simplify {
        doc: String,
        #[arg(long = "map", value_delimiter = ',', required = true)]
        map: Vec<String>,
    },
    /// Two-color simplification: the listed colors become "0", the rest "1".
    Binarize {
        doc: String,
        #[arg(long = "class", value_delimiter = ',', required = true)]
        class: Vec<String>,
    },
    /// Dehn-Thurston coordinates and lattice colorings.
    Dt {
        #[command(subcommand)]
        command: DtCommand,
    },
}

#[derive(Debug, Subcommand)]
enum DtCommand {
    /// Apply the n-th power of the twist about pants curve k.
    Twist {
        multicurve: String,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, value_enum, default_value_t = DtFormat::Json)]
        format: DtFormat,
    },
    /// Twist orbit through a multicurve over a window of exponents.
    String {
        multicurve: String,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
    },
    /// Whether the twist about curve k moves the multicurve.
    Info {
        multicurve: String,
        #[arg(long)]
        k: usize,
    },
    /// Multicurve at a point of the lattice spanned by commuting twists.
    Lattice {
        multicurve: String,
        #[arg(long, value_delimiter = ',', required = true)]
        axes: Vec<usize>,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Future/past consistency checks on a lattice coloring.
    Gridcheck { doc: String },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn verdict(pass: bool, stdout: String, stderr: String) -> Self {
        Outcome { code: if pass { 0 } else { 1 }, stdout, stderr }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] aic_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Inputs<'_> {
    fn read(&mut self, path: &str) -> Result<String, CliError> {
        if path == "-" {
            if self.stdin_used {
                return Err(CliError::Usage("standard input can only be read once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
            return Ok(s);
        }
        std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
    }

    fn coloring(&mut self, path: &str) -> Result<StructuredColoring, CliError> {
        Ok(format::parse_coloring(&self.read(path)?)?)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(text)
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let mut inputs = Inputs { stdin, stdin_used: false };
    match execute(cli.command, &mut inputs) {
        Ok(out) => out,
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn curve_list<'a>(xs: impl IntoIterator<Item = &'a TorusCurve>) -> Vec<String> {
    xs.into_iter().map(TorusCurve::to_string).collect()
}

fn execute(command: Command, inputs: &mut Inputs<'_>) -> Result<Outcome, CliError> {
    let line = format::to_line::<Value>;
    Ok(match command {
        Command::Canon { curve } => {
            let x: TorusCurve = curve.parse()?;
            Outcome::ok(line(&json!({
                "curve": x.to_string(),
                "region": format!("{:?}", x.region()),
            })))
        }
        Command::Factor { curve, runs } => {
            let x: TorusCurve = curve.parse()?;
            if runs {
                let r = tree::factorize_runs(&x)?;
                let list: Vec<Value> = r
                    .runs()
                    .iter()
                    .map(|&(l, n)| json!([if l == TreeLetter::Left { "1" } else { "2" }, n]))
                    .collect();
                Outcome::ok(line(&json!({ "length": r.len(), "runs": list })))
            } else {
                let w = tree::factorize(&x)?;
                Outcome::ok(line(&json!({ "word": w.to_string() })))
            }
        }
        Command::Eval { word } => {
            let w: TreeWord = word.parse()?;
            Outcome::ok(line(&json!({ "curve": tree::evaluate(&w)?.to_string() })))
        }
        Command::Tree { depth, format: fmt } => {
            if depth > MAX_TREE_DEPTH {
                return Err(CliError::Usage(format!("depth must be at most {MAX_TREE_DEPTH}")));
            }
            let vertices = tree::vertices_to_depth(depth)?;
            Outcome::ok(match fmt {
                TreeFormat::Json => format::tree_json(&vertices),
                TreeFormat::Dot => format::tree_dot(&vertices),
            })
        }
        Command::Mkcolor { level, palette, exceptions } => {
            let palette = palette.into_iter().map(Color::new).collect::<Result<Vec<_>, _>>()?;
            let exceptions = match exceptions {
                Some(path) => format::parse_curve_colors(&inputs.read(&path)?)?,
                None => BTreeMap::new(),
            };
            let c = StructuredColoring::construct(level, palette, &exceptions)?;
            Outcome::ok(format::emit_coloring(&c))
        }
        Command::Query { doc, curve } => {
            let c = inputs.coloring(&doc)?;
            let x: TorusCurve = curve.parse()?;
            Outcome::ok(line(&json!({ "color": c.color_of(&x).as_str() })))
        }
        Command::Defect { doc, generator } => {
            let c = inputs.coloring(&doc)?;
            let report = c.defect(generator.into())?;
            Outcome::ok(line(&json!({
                "certified": report.certified,
                "defect": curve_list(&report.defect),
            })))
        }
        Command::Verify { doc, ball, claim_invariant } => {
            if ball == 0 || ball > MAX_BALL {
                return Err(CliError::Usage(format!("--ball must be between 1 and {MAX_BALL}")));
            }
            let c = inputs.coloring(&doc)?;
            let report = c.verify_ball(ball)?;
            let claimed: BTreeSet<Generator> = claim_invariant.into_iter().map(Generator::from).collect();
            let mut problems = String::new();
            let mut checks = Vec::new();
            for check in &report.checks {
                let claim_broken = claimed.contains(&check.generator) && !check.violations.is_empty();
                if !check.consistent() {
                    problems.push_str(&format!(
                        "{}: ball scan disagrees with the certified defect\n",
                        check.generator
                    ));
                }
                if claim_broken {
                    problems.push_str(&format!(
                        "{} claimed invariant but changes {} colors: {}\n",
                        check.generator,
                        check.violations.len(),
                        curve_list(&check.violations).join(" ")
                    ));
                }
                checks.push(json!({
                    "certified": curve_list(&check.certified),
                    "claimed_invariant": claimed.contains(&check.generator),
                    "consistent": check.consistent(),
                    "generator": check.generator.to_string(),
                    "violations": curve_list(&check.violations),
                }));
            }
            let pass = problems.is_empty();
            Outcome::verdict(pass, line(&json!({ "ball": ball, "checks": checks, "ok": pass })), problems)
        }
        Command::Normalize { doc } => {
            let c = inputs.coloring(&doc)?;
            Outcome::ok(format::emit_coloring(&c.normalize()?))
        }
        Command::Equiv { a, b } => {
            let ca = inputs.coloring(&a)?;
            let cb = inputs.coloring(&b)?;
            match ca.equivalent(&cb)? {
                Equivalence::Equivalent { differences } => Outcome::ok(line(&json!({
                    "differences": curve_list(&differences),
                    "equivalent": true,
                }))),
                Equivalence::Inequivalent { word } => Outcome::verdict(
                    false,
                    line(&json!({ "equivalent": false, "word": word.to_string() })),
                    String::new(),
                ),
            }
        }
        Command::Trivial { doc } => {
            let c = inputs.coloring(&doc)?;
            let t = c.is_trivial();
            Outcome::verdict(t, line(&json!({ "trivial": t })), String::new())
        }
        Command::Simplify { doc, map } => {
            let c = inputs.coloring(&doc)?;
            // Colors not mentioned keep their name.
            let mut f: BTreeMap<Color, Color> = c.colors().into_iter().map(|x| (x.clone(), x.clone())).collect();
            for pair in &map {
                let (from, to) = pair
                    .split_once('=')
                    .ok_or_else(|| CliError::Usage(format!("bad color map entry {pair:?}, expected from=to")))?;
                f.insert(Color::new(from)?, Color::new(to)?);
            }
            Outcome::ok(format::emit_coloring(&c.simplify(&f)?))
        }
        Command::Binarize { doc, class } => {
            let c = inputs.coloring(&doc)?;
            let class0 = class.into_iter().map(Color::new).collect::<Result<BTreeSet<_>, _>>()?;
            Outcome::ok(format::emit_coloring(&c.binarize(&class0)?))
        }
        Command::Dt { command } => execute_dt(command, inputs)?,
    })
}

fn execute_dt(command: DtCommand, inputs: &mut Inputs<'_>) -> Result<Outcome, CliError> {
    let line = format::to_line::<Value>;
    Ok(match command {
        DtCommand::Twist { multicurve, k, n, format: fmt } => {
            let d = format::parse_dt(&multicurve)?.twist(k, n)?;
            let text = format::emit_dt(&d);
            Outcome::ok(match fmt {
                DtFormat::Json => line(&json!({ "multicurve": text })),
                DtFormat::Text => text + "\n",
            })
        }
        DtCommand::String { multicurve, k, from, to } => {
            let d = format::parse_dt(&multicurve)?;
            if from <= to && (to as i128 - from as i128) >= i128::from(MAX_STRING_LEN) {
                return Err(CliError::Usage(format!("window longer than {MAX_STRING_LEN}")));
            }
            let s = d.string(k, from, to)?;
            let distinct = s.iter().collect::<BTreeSet<_>>().len() == s.len();
            let list: Vec<String> = s.iter().map(format::emit_dt).collect();
            Outcome::ok(line(&json!({ "distinct": distinct, "multicurves": list })))
        }
        DtCommand::Info { multicurve, k } => {
            let d = format::parse_dt(&multicurve)?;
            Outcome::ok(line(&json!({
                "acts_trivially": d.acts_trivially(k)?,
                "interesting": d.is_interesting(k)?,
                "intersection": d.intersections()[k - 1],
            })))
        }
        DtCommand::Lattice { multicurve, axes, point } => {
            let d = format::parse_dt(&multicurve)?;
            let lattice = dehn_thurston::lattice_from_twists(&d, &axes)?;
            let z = format::parse_point(&point)?;
            Outcome::ok(line(&json!({ "multicurve": format::emit_dt(&lattice.point(&z)?) })))
        }
        DtCommand::Gridcheck { doc } => {
            let c = format::parse_lattice(&inputs.read(&doc)?)?;
            gridcheck(&c)?
        }
    })
}

fn gridcheck(c: &aic_core::LatticeColoring) -> Result<Outcome, CliError> {
    let mut defects = Vec::new();
    for axis in 1..=c.dimension() {
        defects.push(match c.shift_defect(axis)? {
            ShiftDefect::Finite(set) => json!({ "axis": axis, "finite": true, "size": set.len() }),
            ShiftDefect::Infinite { .. } => json!({ "axis": axis, "finite": false }),
        });
    }
    let report = c.lemma1_check()?;
    let (mut body, stderr) = match &report {
        Lemma1Report::Pass { region, axes } => {
            let axes: Vec<Value> = axes
                .iter()
                .map(|a| {
                    json!({
                        "axis": a.axis,
                        "future": a.future.as_str(),
                        "past": a.past.as_str(),
                        "path_len": a.path_len,
                    })
                })
                .collect();
            let cf = c.common_future_check()?;
            let futures: Vec<Value> =
                cf.futures.iter().map(|(axis, col)| json!({ "axis": axis, "color": col.as_str() })).collect();
            let violations: Vec<Value> = cf.violations.iter().map(|(i, j)| json!([i, j])).collect();
            let stderr = if cf.passed() {
                String::new()
            } else {
                format!("futures differ on {} axis pairs\n", cf.violations.len())
            };
            let body = json!({
                "axes": axes,
                "common_future": { "futures": futures, "passed": cf.passed(), "violations": violations },
                "lemma1": "pass",
                "passed": cf.passed(),
                "region": { "hi": region.hi, "lo": region.lo },
            });
            (body, stderr)
        }
        Lemma1Report::HypothesisFailure { axes } => {
            let body = json!({ "infinite_axes": axes, "lemma1": "hypothesis-failure", "passed": false });
            (body, format!("infinitely many color changes along axes {axes:?}\n"))
        }
        Lemma1Report::PathBroken { axis, at } => {
            let body = json!({ "at": at, "axis": axis, "lemma1": "path-broken", "passed": false });
            (body, format!("color changes outside the bounded region on axis {axis}\n"))
        }
    };
    let pass = body["passed"].as_bool() == Some(true);
    body["defects"] = Value::Array(defects);
    Ok(Outcome::verdict(pass, format::to_line(&body), stderr))
}
