use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use avoidance::detectors::{Detection, Pattern};
use avoidance::morphism::{self, Morphism};
use avoidance::number::{construct_peng, PengParams};
use avoidance::ramsey::{self, LemmaReport, Threshold, DEFAULT_CAP, DEFAULT_NODE_BUDGET};
use avoidance::report::{Check, Report};
use avoidance::search::{longest_avoiding_observed, Progress, SearchConfig};
use avoidance::table::{reproduce_table, RowStatus, TableRow};
use avoidance::{parse_word, render_word, Error, Style, Word};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Prefix length at which `--threads > 1` splits the search tree.
const SPLIT_DEPTH: usize = 6;

/// Default rows for `table`: the ones that finish in seconds.
const QUICK_ROWS: &str = "2:2,2:3,2:4,3:2";

#[derive(Parser)]
#[command(
    name = "avoid",
    version,
    about = "Detect, construct and search for words avoiding sum-squares and congruential powers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Look for a pattern occurrence in a word.
    Detect(DetectArgs),
    /// Longest word over 0..k-1 avoiding congruential r-powers mod k.
    Search(SearchArgs),
    /// Recompute rows of the table of longest avoiding words.
    Table(TableArgs),
    /// Word of length p^2-p-1 avoiding congruential squares mod a prime p.
    Construct(ConstructArgs),
    /// Iterate a morphism on the letter 0.
    Morphism(MorphismArgs),
    /// Run a verification report.
    Verify(VerifyArgs),
    /// Small Ramsey-type thresholds.
    Ramsey(RamseyArgs),
}

#[derive(Args)]
struct DetectArgs {
    /// square | abelian:R | sum-square | congruential:R:K | adjacent-equal-sum
    #[arg(long)]
    pattern: String,
    /// Compact digits (0102) or comma-separated integers (-1,0,1).
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    /// Exit 0 if the outcome matches, 1 otherwise.
    #[arg(long, value_enum)]
    expect: Option<Expect>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expect {
    Avoid,
    Found,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    max_len: Option<usize>,
    /// Maximum number of letter placements.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Only search words starting with 0 whose first nonzero letter divides k.
    #[arg(long)]
    symmetry: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TableArgs {
    /// Comma-separated r:k pairs.
    #[arg(long, default_value = QUICK_ROWS)]
    rows: String,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    symmetry: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    prime: u64,
    /// Re-check the word with the congruential detector and report.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["name", "seed_file"])))]
struct MorphismArgs {
    /// phi | zeta | psi
    #[arg(long)]
    name: Option<String>,
    /// File with one `letter -> image` rule per line.
    #[arg(long)]
    seed_file: Option<String>,
    #[arg(long)]
    power: usize,
    /// Keep only the first L letters.
    #[arg(long)]
    prefix: Option<usize>,
    /// Apply a coding to the result (tau).
    #[arg(long)]
    coding: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("target").required(true).args(["morphism", "zeta_lemma", "tau_phi_psi"])))]
struct VerifyArgs {
    /// Check a prefix of the fixed point of this morphism (psi).
    #[arg(long, requires = "length")]
    morphism: Option<String>,
    #[arg(long)]
    length: Option<usize>,
    /// Check phi^n(zeta(a)) = zeta^(n+1)(a) for n up to N.
    #[arg(long, value_name = "N")]
    zeta_lemma: Option<usize>,
    /// Check tau(phi^n(0)) = psi^n(0) for n up to N.
    #[arg(long, value_name = "N")]
    tau_phi_psi: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RamseyArgs {
    #[command(subcommand)]
    which: RamseyCommand,
}

#[derive(Subcommand)]
enum RamseyCommand {
    /// Least n such that every choice x_i in [(i-1)k+1, ik] has a t-term progression.
    Omega(ThresholdArgs),
    /// Least n such that every 2-coloring of [1, n] has a t-term progression
    /// in the first color or k consecutive integers in the second.
    W1(ThresholdArgs),
    /// Compare l(t, k) + 1 with Omega(t+1, floor(k/2)) - 1.
    CheckBounds(BoundsArgs),
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    t: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Node budget for the threshold computation.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Node budget for the word search; unlimited by default.
    #[arg(long)]
    search_budget: Option<u64>,
    #[arg(long)]
    json: bool,
}

/// Process outcome beyond plain success.
enum Status {
    Ok,
    /// Expectation or verification not met.
    Mismatch,
    /// A cap or budget stopped the computation early.
    Capped,
}

impl Status {
    fn code(&self) -> ExitCode {
        match self {
            Status::Ok => ExitCode::SUCCESS,
            Status::Mismatch => ExitCode::from(1),
            Status::Capped => ExitCode::from(3),
        }
    }
}

fn emit<T: Serialize>(value: &T) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn csv(w: &[i8]) -> Result<String, Error> {
    render_word(w, Style::Csv)
}

#[derive(Serialize)]
struct DetectOutput {
    pattern: String,
    word: String,
    found: bool,
    occurrence: Option<Detection>,
}

fn detect(args: DetectArgs) -> Result<Status, Error> {
    let pattern: Pattern = args.pattern.parse()?;
    let word = parse_word(&args.word)?;
    let hit = pattern.detect(&word)?;
    let found = hit.is_some();
    if args.json {
        emit(&DetectOutput {
            pattern: pattern.to_string(),
            word: word.to_string(),
            found,
            occurrence: hit,
        })?;
    } else {
        match &hit {
            None => println!("avoids"),
            Some(Detection::Blocks(o)) => println!(
                "found {pattern} at position {} with block length {} and block sums {:?}",
                o.start, o.m, o.sums
            ),
            Some(Detection::Pair(p)) => println!(
                "found {pattern}: w[{}..{}] and w[{}..{}] both sum to {}",
                p.i,
                p.j,
                p.j + 1,
                p.j_prime,
                p.common_sum
            ),
        }
    }
    Ok(match args.expect {
        Some(Expect::Avoid) if found => Status::Mismatch,
        Some(Expect::Found) if !found => Status::Mismatch,
        _ => Status::Ok,
    })
}

fn progress(p: Progress) {
    eprintln!("progress: {} nodes, best length {}", p.nodes, p.best_len);
}

fn split_depth(threads: usize) -> usize {
    if threads > 1 {
        SPLIT_DEPTH
    } else {
        0
    }
}

#[derive(Serialize)]
struct SearchOutput {
    r: usize,
    k: u32,
    l: usize,
    witness: Word,
    nodes: u64,
    complete: bool,
}

fn search(args: SearchArgs) -> Result<Status, Error> {
    let cfg = SearchConfig {
        max_len: args.max_len,
        node_budget: args.budget,
        parallel_depth: split_depth(args.threads),
        threads: args.threads,
        symmetry: args.symmetry,
        ..SearchConfig::new(args.r, args.k)
    };
    let res = longest_avoiding_observed(&cfg, Some(&progress))?;
    if args.json {
        emit(&SearchOutput {
            r: args.r,
            k: args.k,
            l: res.l,
            witness: res.witness.clone(),
            nodes: res.nodes_explored,
            complete: res.complete,
        })?;
    } else {
        println!("r = {}, k = {}", args.r, args.k);
        println!(
            "l = {}{}",
            res.l,
            if res.complete {
                ""
            } else {
                " (lower bound, search capped)"
            }
        );
        println!("witness = {}", res.witness);
        println!("nodes = {}", res.nodes_explored);
    }
    Ok(if res.complete {
        Status::Ok
    } else {
        Status::Capped
    })
}

fn parse_rows(text: &str) -> Result<Vec<(usize, u32)>, Error> {
    text.split(',')
        .map(|item| {
            let bad = || Error::Argument(format!("expected r:k, found {item:?}"));
            let (r, k) = item.trim().split_once(':').ok_or_else(bad)?;
            Ok((r.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?))
        })
        .collect()
}

fn table(args: TableArgs) -> Result<Status, Error> {
    let rows = parse_rows(&args.rows)?;
    let template = SearchConfig {
        node_budget: args.budget,
        parallel_depth: split_depth(args.threads),
        threads: args.threads,
        symmetry: args.symmetry,
        ..SearchConfig::new(2, 2)
    };
    let out: Vec<TableRow> = reproduce_table(&rows, &template)?;
    if args.json {
        emit(&out)?;
    } else {
        println!("{:>2} {:>3} {:>4}  {:<11} witness", "r", "k", "l", "status");
        for row in &out {
            let status = serde_json::to_value(row.status)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default();
            println!(
                "{:>2} {:>3} {:>4}  {:<11} {}",
                row.r, row.k, row.l, status, row.witness
            );
        }
    }
    Ok(if out.iter().any(|r| r.status == RowStatus::Mismatch) {
        Status::Mismatch
    } else if out.iter().any(|r| !r.complete) {
        Status::Capped
    } else {
        Status::Ok
    })
}

#[derive(Serialize)]
struct ConstructOutput {
    params: PengParams,
    word: String,
    verification: Option<Report>,
}

fn construct(args: ConstructArgs) -> Result<Status, Error> {
    let (params, word) = construct_peng(args.prime)?;
    let verification = args.verify.then(|| {
        let p = params.p;
        let want = p * p - p - 1;
        let len = if word.len() as u64 == want {
            Check::pass("length", format!("{} = p^2 - p - 1", word.len()))
        } else {
            Check::fail("length", format!("{} != {want}", word.len()), None)
        };
        let square = match avoidance::detectors::find_congruential_power(&word, 2, p as u32) {
            Ok(None) => Check::pass("no congruential square", format!("mod {p}")),
            Ok(Some(o)) => Check::fail(
                "no congruential square",
                format!("block length {} at {}", o.m, o.start),
                Some(o.start),
            ),
            Err(e) => Check::fail("no congruential square", e.to_string(), None),
        };
        Report::new(format!("construction for p = {p}"), vec![len, square])
    });
    let passed = verification.as_ref().is_none_or(|r| r.passed);
    if args.json {
        emit(&ConstructOutput {
            params,
            word: csv(&word)?,
            verification,
        })?;
    } else {
        println!(
            "{}",
            serde_json::to_string(&params).map_err(|e| Error::Internal(e.to_string()))?
        );
        println!("{}", csv(&word)?);
        if let Some(r) = &verification {
            print!("{r}");
        }
    }
    Ok(if passed { Status::Ok } else { Status::Mismatch })
}

#[derive(Serialize)]
struct MorphismOutput {
    morphism: String,
    power: usize,
    coding: Option<String>,
    length: usize,
    word: String,
}

fn load_morphism(args: &MorphismArgs) -> Result<Morphism, Error> {
    match (&args.seed_file, &args.name) {
        (Some(path), name) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Argument(format!("cannot read {path}: {e}")))?;
            morphism::parse_morphism(name.as_deref().unwrap_or(path), &text)
        }
        (None, Some(name)) => morphism::builtin(name),
        (None, None) => Err(Error::Usage("give --name or --seed-file".into())),
    }
}

fn morphism_cmd(args: MorphismArgs) -> Result<Status, Error> {
    let m = load_morphism(&args)?;
    let mut w = Word::new(vec![0]);
    m.image(0)?;
    for _ in 0..args.power {
        w = m.apply(&w)?;
        // the first L letters of m(w) depend only on the first L letters of w
        if let Some(l) = args.prefix {
            w.truncate(l);
        }
    }
    if let Some(l) = args.prefix {
        w.truncate(l);
    }
    let text = match &args.coding {
        Some(name) => {
            let coded = morphism::builtin_coding(name)?.apply(&w)?;
            w = coded;
            csv(&w)?
        }
        None => m.render(&w),
    };
    if args.json {
        emit(&MorphismOutput {
            morphism: m.name().to_string(),
            power: args.power,
            coding: args.coding,
            length: w.len(),
            word: text,
        })?;
    } else {
        println!("{text}");
    }
    Ok(Status::Ok)
}

fn verify(args: VerifyArgs) -> Result<Status, Error> {
    let report = if let Some(name) = &args.morphism {
        if name != "psi" {
            return Err(Error::Argument(format!(
                "prefix verification is defined for psi only, got {name:?}"
            )));
        }
        let n = args
            .length
            .ok_or_else(|| Error::Usage("--morphism needs --length".into()))?;
        morphism::verify_psi_prefix(n)?
    } else if let Some(n) = args.zeta_lemma {
        morphism::verify_zeta_lemma(n)
    } else if let Some(n) = args.tau_phi_psi {
        morphism::verify_tau_phi_psi(n)
    } else {
        return Err(Error::Usage("nothing to verify".into()));
    };
    if args.json {
        emit(&report)?;
    } else {
        print!("{report}");
    }
    Ok(if report.passed {
        Status::Ok
    } else {
        Status::Mismatch
    })
}

#[derive(Serialize)]
struct ThresholdOutput {
    quantity: &'static str,
    t: usize,
    k: usize,
    cap: usize,
    #[serde(flatten)]
    result: Threshold,
}

fn threshold(quantity: &'static str, args: ThresholdArgs) -> Result<Status, Error> {
    let result = match quantity {
        "omega" => ramsey::omega(args.t, args.k, args.cap, args.budget)?,
        _ => ramsey::w1(args.t, args.k, args.cap, args.budget)?,
    };
    if args.json {
        emit(&ThresholdOutput {
            quantity,
            t: args.t,
            k: args.k,
            cap: args.cap,
            result,
        })?;
    } else {
        match result.value {
            Some(v) => println!("{quantity}({}, {}) = {v}", args.t, args.k),
            None if result.budget_exhausted => println!(
                "{quantity}({}, {}) > {} (node budget exhausted)",
                args.t, args.k, result.longest_free
            ),
            None => println!(
                "{quantity}({}, {}) > {} (cap reached)",
                args.t, args.k, args.cap
            ),
        }
        println!("nodes = {}", result.nodes);
    }
    Ok(if result.value.is_some() {
        Status::Ok
    } else {
        Status::Capped
    })
}

fn check_bounds(args: BoundsArgs) -> Result<Status, Error> {
    let report: LemmaReport =
        ramsey::check_lemma_bounds(args.k, args.t, args.search_budget, args.cap, args.budget)?;
    if args.json {
        emit(&report)?;
    } else {
        let show = |v: Option<usize>| v.map_or("unknown".to_string(), |v| v.to_string());
        println!(
            "L({}, {}) = l + 1 = {}{}",
            report.k,
            report.t,
            report.big_l,
            if report.search_complete {
                ""
            } else {
                " (lower bound)"
            }
        );
        println!(
            "Omega({}, {}) - 1 = {}",
            report.omega_t,
            report.omega_k,
            show(report.bound)
        );
        println!(
            "{}",
            match report.holds {
                Some(true) => "inequality holds",
                Some(false) => "VIOLATION",
                None => "undetermined",
            }
        );
    }
    Ok(match report.holds {
        Some(true) => Status::Ok,
        Some(false) => Status::Mismatch,
        None => Status::Capped,
    })
}

fn run(cli: Cli) -> Result<Status, Error> {
    match cli.command {
        Command::Detect(a) => detect(a),
        Command::Search(a) => search(a),
        Command::Table(a) => table(a),
        Command::Construct(a) => construct(a),
        Command::Morphism(a) => morphism_cmd(a),
        Command::Verify(a) => verify(a),
        Command::Ramsey(a) => match a.which {
            RamseyCommand::Omega(t) => threshold("omega", t),
            RamseyCommand::W1(t) => threshold("w1", t),
            RamseyCommand::CheckBounds(b) => check_bounds(b),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(cli);
    let _ = io::stdout().flush();
    match outcome {
        Ok(status) => status.code(),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
