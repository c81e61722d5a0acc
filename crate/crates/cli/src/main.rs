//! `slink`: invariants of string links and checks of the μ/HOMFLYPT
//! identities from the command line.
//!
//! Exit status: 0 success or pass, 1 verification failure (including an
//! unmet hypothesis), 2 usage, parse or precondition error, 3 skein node
//! budget exceeded.

use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use slink::lab::{self, Constraint, Status, Theorem, VerificationReport};
use slink::milnor::{self, Milnor};
use slink::{Error, MultiIndex, SkeinEngine, TangleDiagram};

#[derive(Parser)]
#[command(
    name = "slink",
    version,
    about = "HOMFLYPT polynomials and Milnor invariants of string links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Skein recursion node cap
    #[arg(long, default_value_t = slink::skein::DEFAULT_BUDGET)]
    budget: u64,
    /// Emit a JSON document instead of text
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
struct Target {
    /// A `.tangle` file, `-` for standard input, or the diagram text itself
    /// (e.g. "braid 3: 1 -2 1 -2")
    target: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Homfly,
    Conway,
    A2,
    Lk,
    Mu,
    P0,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one invariant; polynomial invariants use the closure
    Invariant {
        which: Which,
        #[command(flatten)]
        target: Target,
        /// Index sequence for `lk` and `mu`, e.g. 312
        #[arg(long)]
        seq: Option<MultiIndex>,
        /// Magnus truncation degree for `mu` (default |I| - 1)
        #[arg(long)]
        truncation: Option<usize>,
        /// For `p0`: print the m-th derivative at t = 1 instead of P_0
        #[arg(long)]
        deriv: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Milnor invariant μ(I) of a string link
    Mu {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        seq: MultiIndex,
        #[arg(long)]
        truncation: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Check the general identity (n >= 4, needs vanishing μ of length <= n-2)
    VerifyThm1 {
        #[command(flatten)]
        target: Target,
        /// Permutation to check; all permutations of 1..n when omitted
        #[arg(long)]
        seq: Option<MultiIndex>,
        /// Permit |I| = 5 (slow)
        #[arg(long)]
        allow_n5: bool,
        /// Record wall-clock time in the report
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Check the length-3 identity (n = 3)
    VerifyThm2 {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        seq: Option<MultiIndex>,
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Verify an identity on a generated corpus
    Corpus {
        /// 1 (general identity) or 2 (length 3)
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
        /// Strand count (default 3 for theorem 2, 4 for theorem 1)
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// none, zero-linking or commutator-built (default none for
        /// theorem 2, commutator-built for theorem 1)
        #[arg(long)]
        constraint: Option<Constraint>,
        /// Crossing budget per sample (default 11 for theorem 2, 32 for theorem 1)
        #[arg(long)]
        length: Option<usize>,
        /// Check only the first k permutations of each sample
        #[arg(long)]
        indices: Option<usize>,
        #[arg(long)]
        allow_n5: bool,
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Print a diagram in canonical `.tangle` form
    Print {
        #[command(flatten)]
        target: Target,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn read_target(t: &Target) -> Result<TangleDiagram, Failure> {
    let text = if t.target == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(e.to_string()))?;
        s
    } else if Path::new(&t.target).is_file() {
        std::fs::read_to_string(&t.target)
            .map_err(|e| Failure::Usage(format!("{}: {e}", t.target)))?
    } else {
        t.target.clone()
    };
    Ok(slink::parse_tangle(&text)?)
}

fn render(json: bool, value: Value, text: String) -> String {
    if json {
        serde_json::to_string_pretty(&value).unwrap()
    } else {
        text
    }
}

fn invariant(
    which: Which,
    sigma: &TangleDiagram,
    seq: Option<&MultiIndex>,
    truncation: Option<usize>,
    deriv: Option<u32>,
    common: &Common,
) -> Outcome {
    let engine = SkeinEngine::with_budget(common.budget);
    let closed = || sigma.close();
    let (name, value) = match which {
        Which::Homfly => ("homfly", engine.homfly(&closed())?.to_string()),
        Which::Conway => ("conway", engine.conway(&closed())?.to_string()),
        Which::A2 => ("a2", engine.a2(&closed())?.to_string()),
        Which::P0 => match deriv {
            Some(m) => ("p0_deriv", engine.p0_deriv(&closed(), m)?.to_string()),
            None => ("p0", engine.p0(&closed())?.to_string()),
        },
        Which::Lk => {
            let seq = seq.ok_or_else(|| Failure::Usage("`lk` needs --seq ij".into()))?;
            let &[i, j] = seq.entries() else {
                return Err(Failure::Usage("`lk` needs a sequence of length 2".into()));
            };
            ("lk", milnor::linking_number(sigma, i, j)?.to_string())
        }
        Which::Mu => {
            let seq = seq.ok_or_else(|| Failure::Usage("`mu` needs --seq".into()))?;
            return mu(sigma, seq, truncation, common);
        }
    };
    let mut doc = json!({ "invariant": name, "value": value });
    if let (Which::Lk, Some(seq)) = (which, seq) {
        doc["I"] = json!(seq.to_string());
    }
    if let (Which::P0, Some(m)) = (which, deriv) {
        doc["m"] = json!(m.to_string());
    }
    Ok((render(common.json, doc, value), true))
}

fn mu(
    sigma: &TangleDiagram,
    seq: &MultiIndex,
    truncation: Option<usize>,
    common: &Common,
) -> Outcome {
    let q = truncation.unwrap_or(seq.len().saturating_sub(1)).max(1);
    let value = Milnor::new(sigma, q)?.mu(seq)?.to_string();
    let doc = json!({ "invariant": "mu", "I": seq.to_string(), "truncation": q.to_string(), "value": value });
    Ok((render(common.json, doc, value), true))
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::HypothesisViolated => "hypothesis violated",
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut out = format!(
        "theorem {}  I = {}  {}\n",
        r.theorem,
        r.index,
        status_word(r.status)
    );
    let show = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
    out += &format!("  mu     {}\n  right  {}\n", show(&r.left), show(&r.right));
    if let Some(c) = &r.correction {
        out += &format!("  correction {c}\n");
    }
    for t in &r.terms {
        out += &format!(
            "  J {:<6} crossings {:>3}  value {}\n",
            t.sub, t.crossings, t.value
        );
    }
    if let Some(d) = &r.detail {
        out += &format!("  {d}\n");
    }
    if let Some(ms) = r.timing_ms {
        out += &format!("  {ms} ms\n");
    }
    out
}

fn check_size(theorem: Theorem, n: usize, allow_n5: bool) -> Result<(), Failure> {
    if theorem == Theorem::General && n >= 5 && !allow_n5 {
        return Err(Failure::Usage(format!("|I| = {n} needs --allow-n5")));
    }
    Ok(())
}

fn verify_many(
    theorem: Theorem,
    sigma: &TangleDiagram,
    seq: Option<MultiIndex>,
    allow_n5: bool,
    timing: bool,
    common: &Common,
) -> Outcome {
    sigma.require_string_link()?;
    let indices = match seq {
        Some(i) => vec![i],
        None => MultiIndex::permutations(sigma.strand_count()),
    };
    for i in &indices {
        check_size(theorem, i.len(), allow_n5)?;
    }
    let engine = SkeinEngine::with_budget(common.budget);
    let reports = indices
        .iter()
        .map(|i| lab::verify(&engine, sigma, i, theorem, timing))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = reports.iter().all(|r| r.pass);
    let doc = if reports.len() == 1 {
        json!(reports[0])
    } else {
        json!(reports)
    };
    let text = reports.iter().map(report_text).collect::<String>();
    Ok((render(common.json, doc, text.trim_end().to_string()), pass))
}

#[allow(clippy::too_many_arguments)]
fn corpus(
    theorem: u8,
    n: Option<usize>,
    count: usize,
    seed: u64,
    constraint: Option<Constraint>,
    length: Option<usize>,
    indices: Option<usize>,
    allow_n5: bool,
    timing: bool,
    common: &Common,
) -> Outcome {
    let (theorem, n, constraint, length) = match theorem {
        2 => (
            Theorem::Length3,
            n.unwrap_or(3),
            constraint.unwrap_or(Constraint::None),
            length.unwrap_or(11),
        ),
        _ => (
            Theorem::General,
            n.unwrap_or(4),
            constraint.unwrap_or(Constraint::CommutatorBuilt),
            length.unwrap_or(32),
        ),
    };
    if theorem == Theorem::Length3 && n != 3 {
        return Err(Failure::Usage("theorem 2 needs --n 3".into()));
    }
    if theorem == Theorem::General && n < 4 {
        return Err(Failure::Usage("theorem 1 needs --n 4 or more".into()));
    }
    check_size(theorem, n, allow_n5)?;
    let mut perms = MultiIndex::permutations(n);
    perms.truncate(indices.unwrap_or(perms.len()));
    let engine = SkeinEngine::with_budget(common.budget);
    let samples: Vec<Vec<VerificationReport>> = (0..count as u64)
        .into_par_iter()
        .map(|k| {
            let sigma = lab::gen_string_link(n, length, seed + k, constraint);
            perms
                .iter()
                .map(|i| lab::verify(&engine, &sigma, i, theorem, timing))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let all: Vec<&VerificationReport> = samples.iter().flatten().collect();
    let tally = |s: Status| all.iter().filter(|r| r.status == s).count();
    let (pass, fail, hyp) = (
        tally(Status::Pass),
        tally(Status::Fail),
        tally(Status::HypothesisViolated),
    );
    let doc = json!({
        "theorem": theorem.id().to_string(),
        "n": n.to_string(),
        "seed": seed.to_string(),
        "count": count.to_string(),
        "pass": pass.to_string(),
        "fail": fail.to_string(),
        "hypothesis-violated": hyp.to_string(),
        "reports": all,
    });
    let mut text = String::new();
    for (k, reports) in samples.iter().enumerate() {
        for r in reports {
            let show = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
            text += &format!(
                "seed {:<6} I = {}  mu {:>4}  right {:>4}  {}\n",
                seed + k as u64,
                r.index,
                show(&r.left),
                show(&r.right),
                status_word(r.status)
            );
        }
    }
    text += &format!("{pass} pass, {fail} fail, {hyp} hypothesis violated");
    Ok((render(common.json, doc, text), fail == 0 && hyp == 0))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Invariant {
            which,
            target,
            seq,
            truncation,
            deriv,
            common,
        } => invariant(
            which,
            &read_target(&target)?,
            seq.as_ref(),
            truncation,
            deriv,
            &common,
        ),
        Command::Mu {
            target,
            seq,
            truncation,
            common,
        } => mu(&read_target(&target)?, &seq, truncation, &common),
        Command::VerifyThm1 {
            target,
            seq,
            allow_n5,
            timing,
            common,
        } => verify_many(
            Theorem::General,
            &read_target(&target)?,
            seq,
            allow_n5,
            timing,
            &common,
        ),
        Command::VerifyThm2 {
            target,
            seq,
            timing,
            common,
        } => verify_many(
            Theorem::Length3,
            &read_target(&target)?,
            seq,
            false,
            timing,
            &common,
        ),
        Command::Corpus {
            theorem,
            n,
            count,
            seed,
            constraint,
            length,
            indices,
            allow_n5,
            timing,
            common,
        } => corpus(
            theorem, n, count, seed, constraint, length, indices, allow_n5, timing, &common,
        ),
        Command::Print { target } => Ok((
            read_target(&target)?.to_string().trim_end().to_string(),
            true,
        )),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, pass)) => {
            println!("{out}");
            ExitCode::from(if pass { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
