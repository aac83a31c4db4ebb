use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use itpda_core::automata::{accepts_contour_exact, accepts_fibonacci_exact, is_fibonacci, ContourParams};
use itpda_core::disc::{generate_tiles, to_svg, SvgOptions};
use itpda_core::fibonacci::fib;
use itpda_core::grammar::{contour_word, Grammar, Preset};
use itpda_core::pda::{parse_spec, run, RunLimits, Verdict};
use itpda_core::recurrence::{pair, Component, Family, LazyRecurrence};
use itpda_core::verify::{self, Scale, VerifyConfig};
use itpda_core::zeckendorf;

/// Iterated pushdown automata, contour words of hyperbolic tilings and
/// their word recurrences.
#[derive(Parser)]
#[command(name = "itpda", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a^M has Fibonacci length.
    Fib { m: u64 },
    /// Run an automaton definition file on a word.
    Run(RunArgs),
    /// Emit or decide contour words.
    Contour(ContourArgs),
    /// Print recurrence words or single letters of them.
    Words(WordsArgs),
    /// Zeckendorf codes.
    Zeck {
        #[command(subcommand)]
        op: ZeckOp,
    },
    /// Render a ball of a {p,q} tiling as SVG.
    Render(RenderArgs),
    /// Run the invariant suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RunArgs {
    file: PathBuf,
    /// Letters, `eps` for the empty word, or `@path` to read them from a file.
    word: String,
    #[arg(long, default_value_t = 1_000_000)]
    fuel: u64,
    /// Prune stores with more entries than this.
    #[arg(long)]
    cap: Option<usize>,
    /// Prune stores with an inner store longer than this.
    #[arg(long)]
    flag_cap: Option<usize>,
    /// Print the accepting path.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct ContourArgs {
    #[arg(long)]
    tree_p: usize,
    #[arg(long)]
    sectors: usize,
    #[command(flatten)]
    mode: ContourMode,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ContourMode {
    /// Print the contour word with this many tree levels.
    #[arg(long)]
    radius: Option<usize>,
    /// Decide a word (`@path` reads it from a file).
    #[arg(long)]
    check: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Uw,
    Xy,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum WhichArg {
    First,
    Second,
    Both,
}

#[derive(Args)]
struct WordsArgs {
    family: FamilyArg,
    #[arg(long)]
    n: usize,
    /// Print only the letter at this index.
    #[arg(long, conflicts_with = "offset")]
    index: Option<u128>,
    /// Print the letter at this offset from the separator inside the
    /// second word of level n+1.
    #[arg(long, allow_hyphen_values = true)]
    offset: Option<i128>,
    /// `first` is u or x, `second` is w or y.
    #[arg(long, value_enum, default_value_t = WhichArg::Both)]
    which: WhichArg,
}

#[derive(Subcommand)]
enum ZeckOp {
    Encode { m: u64 },
    Decode { bits: String },
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
    #[arg(long)]
    depth: usize,
    /// Fill the tiles at this distance.
    #[arg(long)]
    highlight: Option<usize>,
    #[arg(long)]
    out: PathBuf,
    /// Width and height in pixels.
    #[arg(long, default_value_t = 800)]
    size: u32,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    quick: bool,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Run only these checks (1 to 9).
    #[arg(long, value_delimiter = ',')]
    only: Vec<usize>,
}

/// Bad input rather than a failed computation.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl std::fmt::Display) -> anyhow::Error {
    Usage(msg.to_string()).into()
}

const LARGEST_PRINTED_LEVEL: usize = 25;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// `Ok(false)` means rejected or failed.
fn dispatch(command: Command) -> Result<bool> {
    match command {
        Command::Fib { m } => Ok(fib_command(m)),
        Command::Run(args) => run_command(args),
        Command::Contour(args) => contour_command(args),
        Command::Words(args) => words_command(args),
        Command::Zeck { op } => zeck_command(op),
        Command::Render(args) => render_command(args),
        Command::Verify(args) => verify_command(args),
    }
}

fn read_word(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)
            .with_context(|| format!("reading word from {path}"))?
            .trim()
            .to_owned()),
        None => Ok(arg.to_owned()),
    }
}

fn verdict_line(verdict: Verdict) -> &'static str {
    match verdict {
        Verdict::Accepted => "accepted",
        Verdict::Rejected => "rejected",
        Verdict::BudgetExhausted => "budget exhausted",
    }
}

fn fib_command(m: u64) -> bool {
    let verdict = accepts_fibonacci_exact(m);
    match is_fibonacci(m) {
        Some(n) if verdict == Verdict::Accepted => println!("accepted (f_{n} = {m})"),
        _ => {
            let above = (0..).find(|&i| fib(i).is_some_and(|f| f > u128::from(m))).unwrap_or(0);
            if above == 0 {
                println!("{} (below f_0 = 1)", verdict_line(verdict));
            } else {
                let (lo, hi) = (fib(above - 1).unwrap_or(0), fib(above).unwrap_or(0));
                println!("{} (f_{} = {lo} < {m} < f_{above} = {hi})", verdict_line(verdict), above - 1);
            }
        }
    }
    verdict == Verdict::Accepted
}

fn run_command(args: RunArgs) -> Result<bool> {
    let text = std::fs::read_to_string(&args.file).with_context(|| format!("reading {}", args.file.display()))?;
    let pda = parse_spec(&text).map_err(|e| usage(format!("{}: {e}", args.file.display())))?;
    let word = pda.parse_word(&read_word(&args.word)?).map_err(usage)?;
    let limits = RunLimits { fuel: args.fuel, store_cap: args.cap, flag_cap: args.flag_cap };
    let outcome = run(&pda, &word, &limits);
    println!("{} ({} configurations expanded)", verdict_line(outcome.verdict), outcome.expanded);
    if args.trace {
        if let Some(trace) = &outcome.trace {
            for (i, config) in trace.configs.iter().enumerate() {
                if i > 0 {
                    let t = trace.transitions[i - 1];
                    println!("  |- {}", pda.transition_text(t).unwrap_or_default());
                }
                println!("{}", config.display(&pda, &word));
            }
        }
    }
    Ok(outcome.verdict == Verdict::Accepted)
}

fn contour_command(args: ContourArgs) -> Result<bool> {
    let cp = ContourParams::new(args.tree_p, args.sectors).map_err(usage)?;
    if let Some(n) = args.mode.radius {
        let g = Grammar::preset(Preset::Gp { p: args.tree_p, sectors: args.sectors }).map_err(usage)?;
        let letters = cp.contour_length(n).ok_or_else(|| usage("contour word length overflows"))?;
        if letters > 1 << 32 {
            return Err(usage(format!("the radius-{n} contour word has {letters} letters")));
        }
        println!("{}", contour_word(&g, n));
        return Ok(true);
    }
    let word = read_word(args.mode.check.as_deref().unwrap_or_default())?;
    if let Some(bad) = word.chars().find(|c| !matches!(c, 'b' | 'w')) {
        return Err(usage(format!("`{bad}` is not a contour letter (b or w)")));
    }
    let verdict = accepts_contour_exact(&cp, &word);
    match cp.level_for_length(word.len()) {
        Some(n) => println!("{} (radius {n}, {} letters)", verdict_line(verdict), word.len()),
        None => println!("{} ({} letters is not a contour length)", verdict_line(verdict), word.len()),
    }
    Ok(verdict == Verdict::Accepted)
}

fn words_command(args: WordsArgs) -> Result<bool> {
    let family = match args.family {
        FamilyArg::Uw => Family::Uw,
        FamilyArg::Xy => Family::Xy,
    };
    let names = match family {
        Family::Uw => ("u", "w"),
        Family::Xy => ("x", "y"),
    };
    let components: Vec<(Component, &str)> = match args.which {
        WhichArg::First => vec![(Component::First, names.0)],
        WhichArg::Second => vec![(Component::Second, names.1)],
        WhichArg::Both => vec![(Component::First, names.0), (Component::Second, names.1)],
    };

    if let Some(offset) = args.offset {
        let table = LazyRecurrence::new(family, args.n + 1).map_err(usage)?;
        let letter = table.separator_letter(args.n, offset).map_err(usage)?;
        println!("{}", letter.map_or('-', |c| c.letter()));
        return Ok(letter.is_some());
    }
    if let Some(index) = args.index {
        let table = LazyRecurrence::new(family, args.n).map_err(usage)?;
        let mut all_found = true;
        for (which, name) in components {
            let letter = table.letter_at(args.n, which, index).map_err(usage)?;
            all_found &= letter.is_some();
            println!("{name}_{}[{index}] = {}", args.n, letter.map_or('-', |c| c.letter()));
        }
        return Ok(all_found);
    }
    if args.n > LARGEST_PRINTED_LEVEL {
        return Err(usage(format!(
            "level {} is too long to print (max {LARGEST_PRINTED_LEVEL}); use --index or --offset",
            args.n
        )));
    }
    let words = pair(family, args.n);
    for (which, _) in components {
        println!("{}", words.get(which));
    }
    Ok(true)
}

fn zeck_command(op: ZeckOp) -> Result<bool> {
    match op {
        ZeckOp::Encode { m } => println!("{}", zeckendorf::encode(m).map_err(usage)?),
        ZeckOp::Decode { bits } => println!("{}", zeckendorf::decode(&bits).map_err(usage)?),
    }
    Ok(true)
}

fn render_command(args: RenderArgs) -> Result<bool> {
    let tiling = generate_tiles(args.p, args.q, args.depth).map_err(usage)?;
    let options = SvgOptions { highlight: args.highlight, size: args.size, ..SvgOptions::default() };
    let svg = to_svg(tiling.tiles(), &options);
    std::fs::write(&args.out, svg).with_context(|| format!("writing {}", args.out.display()))?;
    println!("wrote {} tiles to {}", tiling.len(), args.out.display());
    Ok(true)
}

#[derive(Serialize)]
struct Record<'a> {
    property: &'a str,
    status: &'a str,
    details: &'a str,
}

fn verify_command(args: VerifyArgs) -> Result<bool> {
    let scale = if args.quick { Scale::quick() } else { Scale::full() };
    let cfg = VerifyConfig { scale, seed: args.seed };
    let ids: Vec<usize> = if args.only.is_empty() {
        verify::CHECKS.iter().map(|(id, _)| *id).collect()
    } else {
        args.only
    };
    let mut reports = Vec::new();
    for id in ids {
        let report = verify::check(id, &cfg).ok_or_else(|| usage(format!("no check numbered {id}")))?;
        if !args.json {
            println!("{report}");
        }
        reports.push(report);
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    if args.json {
        let records: Vec<Record> = reports
            .iter()
            .map(|r| Record { property: r.title, status: if r.passed { "pass" } else { "fail" }, details: &r.detail })
            .collect();
        println!("{}", serde_json::to_string_pretty(&records)?);
    } else {
        println!("{} passed, {failed} failed", reports.len() - failed);
    }
    Ok(failed == 0)
}
