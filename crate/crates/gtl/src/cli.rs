//! The `gtl` command line. [`run`] takes the arguments and the two output
//! streams so it can be driven from tests; it returns the exit code.
//!
//! Exit codes: 0 valid / certified / accepted, 1 falsifiable / not
//! certified / rejected, 2 usage or input error, 3 resource exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use crate::formula::{negative_translation, print, print_unicode, Formula};
use crate::proofcheck::{check_proof, Proof};
use crate::quasimodel::{bounded_unwind, quotient};
use crate::semantics::{eval_bi, eval_real, PeriodicBiModel, PeriodicRealModel};
use crate::solver::{brute_force_falsifiable, falsifiable_jobs, BruteBounds, SearchLimits, Verdict};
use crate::typespace::LabelledSystem;
use crate::witness::{certify_witness, Witness};
use crate::Error;

pub const OK: i32 = 0;
pub const NO: i32 = 1;
pub const INPUT: i32 = 2;
pub const EXHAUSTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gtl", version, about = "Decide, evaluate and check Goedel temporal logic formulas")]
struct Cli {
    /// Print formulas with logical glyphs instead of ASCII.
    #[arg(long, global = true)]
    unicode: bool,
    /// Wrap every result in a JSON object on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Decide validity; exit 0 when valid, 1 when falsifiable.
    Decide(DecideArgs),
    /// Check a falsifiability witness.
    Certify {
        #[arg(long)]
        witness: PathBuf,
        /// Also require the witness to be about this formula.
        #[arg(long)]
        formula: Option<String>,
    },
    /// Evaluate a formula on a real-valued or bi-relational model.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 0)]
        at: usize,
        /// World of a bi-relational model; 0 is the top.
        #[arg(long)]
        world: Option<usize>,
    },
    /// Print the negative translation.
    Translate { formula: String },
    /// Check a proof file; exit 0 when every step checks.
    CheckProof {
        #[arg(value_name = "PATH", required_unless_present = "proof")]
        path: Option<PathBuf>,
        #[arg(long, conflicts_with = "path")]
        proof: Option<PathBuf>,
    },
    /// Quotient a labelled system and report its size.
    Quotient {
        #[arg(value_name = "PATH", required_unless_present = "system")]
        path: Option<PathBuf>,
        #[arg(long, conflicts_with = "path")]
        system: Option<PathBuf>,
        /// Where to write the quotient system.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unwind a quasimodel into a finite grid of paths.
    Unwind {
        #[arg(long)]
        system: PathBuf,
        /// Start world id.
        #[arg(long)]
        from: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
}

#[derive(Args, Debug)]
struct DecideArgs {
    /// Formula text, or @path to read it from a file.
    formula: String,
    /// Print the witness on stdout when falsifiable.
    #[arg(long)]
    falsify: bool,
    /// Write the witness JSON here when falsifiable.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Cross-check against the brute-force enumerator; disagreement exits 2.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    max_loop: Option<usize>,
    #[arg(long)]
    max_segment: Option<usize>,
    /// State budget per worker; overrides GTL_MAX_STATES.
    #[arg(long)]
    max_states: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

/// A finished command: exit code, human lines and the JSON form.
struct Outcome {
    code: i32,
    text: Vec<String>,
    json: Json,
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Exhausted(_)) { EXHAUSTED } else { INPUT };
        Failure(code, e.to_string())
    }
}

type Res = std::result::Result<Outcome, Failure>;

fn read(p: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(p).map_err(|e| Failure(INPUT, format!("{}: {e}", p.display())))
}

fn write(p: &Path, s: &str) -> std::result::Result<(), Failure> {
    std::fs::write(p, s).map_err(|e| Failure(INPUT, format!("{}: {e}", p.display())))
}

fn formula(text: &str) -> std::result::Result<Formula, Failure> {
    let src = match text.strip_prefix('@') {
        Some(p) => read(Path::new(p))?,
        None => text.to_string(),
    };
    Ok(crate::parse(src.trim())?)
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INPUT } else { OK };
            let text = e.render().to_string();
            let _ = if code == OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let show = |f: &Formula| if cli.unicode { print_unicode(f) } else { print(f) };
    let result = match &cli.cmd {
        Cmd::Decide(a) => decide(a, &show),
        Cmd::Certify { witness, formula: f } => certify(witness, f.as_deref()),
        Cmd::Eval { model, formula: f, at, world } => eval(model, f, *at, *world),
        Cmd::Translate { formula: f } => translate(f, &show),
        Cmd::CheckProof { path, proof } => check(path.as_ref().or(proof.as_ref()).expect("clap requires one")),
        Cmd::Quotient { path, system, out } => {
            quotient_cmd(path.as_ref().or(system.as_ref()).expect("clap requires one"), out.as_deref())
        }
        Cmd::Unwind { system, from, steps } => unwind(system, from, *steps),
    };
    match result {
        Ok(o) => {
            if cli.json {
                let mut j = o.json;
                j["exit"] = json!(o.code);
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&j).expect("json"));
            } else {
                for line in &o.text {
                    let _ = writeln!(out, "{line}");
                }
            }
            o.code
        }
        Err(Failure(code, msg)) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({"error": msg, "exit": code}));
            } else {
                let _ = writeln!(err, "gtl: {msg}");
            }
            code
        }
    }
}

fn decide(a: &DecideArgs, show: &dyn Fn(&Formula) -> String) -> Res {
    let f = formula(&a.formula)?;
    let mut limits = SearchLimits::from_env();
    if let Some(n) = a.max_states {
        limits.max_states = n;
    }
    if let Some(n) = a.max_loop {
        limits.max_loop_length = n;
    }
    if let Some(n) = a.max_segment {
        limits.max_segment_length = n;
    }
    let verdict = falsifiable_jobs(&f, limits, a.jobs.max(1))?;
    if a.oracle {
        let o = brute_force_falsifiable(&f, BruteBounds::default())?;
        let agree = match (&verdict, &o) {
            (Verdict::ResourceExhausted(_), _) | (_, Verdict::ResourceExhausted(_)) => true,
            (x, y) => x.is_valid() == y.is_valid(),
        };
        if !agree {
            return Err(Failure(
                INPUT,
                format!("oracle disagrees: solver says {}, oracle says {}", word(&verdict), word(&o)),
            ));
        }
    }
    let mut text = vec![word(&verdict).to_string()];
    let mut j = json!({"formula": show(&f), "verdict": word(&verdict).to_lowercase()});
    let code = match &verdict {
        Verdict::Valid => OK,
        Verdict::Falsifiable(w) => {
            let s = w.to_json_string();
            if let Some(p) = &a.witness {
                write(p, &format!("{s}\n"))?;
            }
            if a.falsify {
                text.push(s);
            }
            j["witness"] = serde_json::to_value(w.to_json()).expect("witness json");
            NO
        }
        Verdict::ResourceExhausted(why) => {
            text[0] = format!("RESOURCE EXHAUSTED: {why}");
            j["reason"] = json!(why);
            EXHAUSTED
        }
    };
    Ok(Outcome { code, text, json: j })
}

fn word(v: &Verdict) -> &'static str {
    match v {
        Verdict::Valid => "VALID",
        Verdict::Falsifiable(_) => "FALSIFIABLE",
        Verdict::ResourceExhausted(_) => "EXHAUSTED",
    }
}

fn certify(path: &Path, f: Option<&str>) -> Res {
    let w = Witness::from_json_str(&read(path)?)?;
    let mut first = certify_witness(&w).first();
    if let Some(text) = f {
        let f = formula(text)?;
        if f != w.formula && first.is_none() {
            first = Some(format!("witness is for {}, not {}", w.formula, f));
        }
    }
    Ok(match first {
        None => Outcome { code: OK, text: vec!["CERTIFIED".into()], json: json!({"certified": true}) },
        Some(why) => Outcome {
            code: NO,
            text: vec![format!("NOT CERTIFIED: {why}")],
            json: json!({"certified": false, "reason": why}),
        },
    })
}

fn eval(path: &Path, f: &str, at: usize, world: Option<usize>) -> Res {
    let src = read(path)?;
    let f = formula(f)?;
    let j: Json = serde_json::from_str(&src).map_err(Error::from)?;
    if j.get("valuation").is_some() {
        if world.is_some() {
            return Err(Failure(INPUT, "--world applies to bi-relational models only".into()));
        }
        let m = PeriodicRealModel::from_json_str(&src)?;
        let v = eval_real(&m, &f, at)?;
        Ok(Outcome { code: OK, text: vec![v.to_string()], json: json!({"value": v.to_string()}) })
    } else if j.get("membership").is_some() {
        let m = PeriodicBiModel::from_json_str(&src)?;
        let v = eval_bi(&m, &f, world.unwrap_or(0), at)?;
        Ok(Outcome { code: OK, text: vec![v.to_string()], json: json!({"value": v}) })
    } else {
        Err(Failure(INPUT, "model has neither a valuation nor a membership".into()))
    }
}

fn translate(f: &str, show: &dyn Fn(&Formula) -> String) -> Res {
    let t = negative_translation(&formula(f)?)?;
    Ok(Outcome { code: OK, text: vec![show(&t)], json: json!({"translation": show(&t)}) })
}

fn check(path: &Path) -> Res {
    let p = Proof::from_json_str(&read(path)?)?;
    Ok(match check_proof(&p) {
        Ok(()) => {
            let concl = p.conclusion().map(|f| f.to_string()).unwrap_or_default();
            Outcome {
                code: OK,
                text: vec![format!("ACCEPTED: {} steps, proves {concl}", p.steps.len())],
                json: json!({"accepted": true, "steps": p.steps.len(), "conclusion": concl}),
            }
        }
        Err(e) => Outcome {
            code: NO,
            text: vec![format!("REJECTED: {e}")],
            json: json!({"accepted": false, "step": e.step, "reason": e.reason}),
        },
    })
}

fn quotient_cmd(path: &Path, out: Option<&Path>) -> Res {
    let sys = LabelledSystem::from_json_str(&read(path)?)?;
    let q = quotient(&sys)?;
    if let Some(p) = out {
        write(p, &format!("{}\n", q.to_json_string()))?;
    }
    let summary = format!("worlds={} height={}", q.len(), q.height());
    Ok(Outcome {
        code: OK,
        text: vec![summary],
        json: json!({"worlds": q.len(), "height": q.height(), "system": serde_json::to_value(q.to_json()).expect("json")}),
    })
}

fn unwind(path: &Path, from: &str, steps: usize) -> Res {
    let q = LabelledSystem::from_json_str(&read(path)?)?;
    let g = bounded_unwind(&q, from, steps)?;
    let grid = serde_json::to_value(g.to_json(&q)).expect("json");
    Ok(Outcome {
        code: OK,
        text: vec![serde_json::to_string(&grid).expect("json"), format!("residual={}", g.residual.len())],
        json: json!({"grid": grid, "residual": g.residual.len()}),
    })
}
