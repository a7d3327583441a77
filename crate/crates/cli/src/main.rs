//! `qstirling`: counting, listing, conversion, statistics and verification
//! for quasi-Stirling permutations.
//!
//! Exit codes: 0 success, 1 usage error, 2 bad input data, 3 verification
//! mismatch.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use quasi_stirling::generate::{count_filtered, count_universe, gen_all, gen_quasi_stirling, gen_trees, Universe};
use quasi_stirling::pattern::{avoids_all, is_stirling};
use quasi_stirling::verify::{self, Format, SeqTable};
use quasi_stirling::wilf::{compare_with_table, wilf_classify};
use quasi_stirling::{Execution, MultisetPerm, OrderedTree, PatternSet};

const USAGE: u8 = 1;
const DATA: u8 = 2;
const MISMATCH: u8 = 3;

/// Default exhaustive cap on `n`; `--force` lifts it.
const ORDER_CAP: usize = 8;

#[derive(Parser)]
#[command(name = "qstirling", version, about = "Quasi-Stirling permutations: count, list, convert, verify")]
struct Cli {
    /// Worker threads (1 runs everything on the calling thread).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the number of words of order N avoiding a pattern set.
    Count {
        n: usize,
        /// Comma-separated patterns, e.g. 132,213.
        #[arg(long)]
        avoid: Option<PatternSet>,
        #[arg(long, default_value = "quasi")]
        universe: Universe,
        #[arg(long)]
        force: bool,
    },
    /// Print every word of order N, one per line.
    List {
        n: usize,
        #[arg(long)]
        avoid: Option<PatternSet>,
        #[arg(long, default_value = "quasi")]
        universe: Universe,
        /// Print the corresponding trees instead of words.
        #[arg(long)]
        trees: bool,
        #[arg(long)]
        force: bool,
    },
    /// Convert words to trees or trees to words, line by line.
    #[command(group(ArgGroup::new("direction").required(true).args(["to_tree", "to_perm"])))]
    Convert {
        #[arg(long)]
        to_tree: bool,
        #[arg(long)]
        to_perm: bool,
        /// Input file; standard input when absent.
        input: Option<PathBuf>,
    },
    /// Print des, asc and pl of each word.
    Stats {
        /// Also compare plateaus with the leaves of the corresponding tree.
        #[arg(long)]
        trees: bool,
        input: Option<PathBuf>,
    },
    /// Check formulas against exhaustive counts.
    Verify {
        /// `all`, `plateaus`, `descent-conjecture`, `bijection`, a theorem id
        /// or a pattern set.
        #[arg(long, default_value = "all")]
        theorem: String,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long, default_value = "table")]
        format: Format,
        /// Include per-row timings (output is then no longer reproducible).
        #[arg(long)]
        timing: bool,
        /// Seed for the randomized bijection roundtrips.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        force: bool,
    },
    /// Print an integer sequence.
    #[command(group(ArgGroup::new("which").required(true).args(["lambda", "total", "plateaus"])))]
    Sequence {
        /// Avoiders of a pattern set, counted exhaustively.
        #[arg(long)]
        lambda: Option<PatternSet>,
        /// n! C_n.
        #[arg(long)]
        total: bool,
        /// Words with exactly K plateaus.
        #[arg(long, value_name = "K")]
        plateaus: Option<usize>,
        #[arg(long)]
        nmax: usize,
        /// Print `n,value` rows instead of one comma-separated line.
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        force: bool,
    },
    /// Group the pattern sets of size K by symmetry and by counts.
    Wilf {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        #[arg(long)]
        force: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: USAGE, message: message.into() }
}

fn check_cap(n: usize, force: bool) -> Result<(), Failure> {
    if n > ORDER_CAP && !force {
        return Err(usage(format!("n = {n} exceeds the exhaustive cap {ORDER_CAP}; pass --force to run anyway")));
    }
    Ok(())
}

fn nonempty(set: Option<PatternSet>) -> Result<Option<PatternSet>, Failure> {
    match set {
        Some(s) if s.is_empty() => Err(usage("empty pattern set")),
        other => Ok(other),
    }
}

fn input_lines(path: Option<&PathBuf>) -> Result<Box<dyn BufRead>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufReader::new(
            File::open(p).map_err(|e| Failure { code: DATA, message: format!("{}: {e}", p.display()) })?,
        )),
        None => Box::new(io::stdin().lock()),
    })
}

/// Runs `f` on each nonblank line, reporting failures as `line N: ...` on
/// standard error. Returns whether every line succeeded.
fn per_line(
    input: Box<dyn BufRead>,
    out: &mut impl Write,
    mut f: impl FnMut(&str) -> Result<String, String>,
) -> io::Result<bool> {
    let mut ok = true;
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match f(line.trim()) {
            Ok(s) => writeln!(out, "{s}")?,
            Err(e) => {
                ok = false;
                eprintln!("line {}: {e}", i + 1);
            }
        }
    }
    Ok(ok)
}

fn run(cli: Cli, exec: Execution) -> Result<u8, Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let io_err = |e: io::Error| Failure { code: DATA, message: e.to_string() };
    let mut code = 0;
    match cli.command {
        Command::Count { n, avoid, universe, force } => {
            check_cap(n, force)?;
            let count = match nonempty(avoid)? {
                Some(set) => count_filtered(n, &set, universe, exec).map_err(|e| usage(e.to_string()))?,
                None => count_universe(n, universe, exec),
            };
            writeln!(out, "{count}").map_err(io_err)?;
        }
        Command::List { n, avoid, universe, trees, force } => {
            check_cap(n, force)?;
            if trees && universe != Universe::QuasiStirling {
                return Err(usage("--trees lists quasi-Stirling words only"));
            }
            let avoid = nonempty(avoid)?;
            let words: Box<dyn Iterator<Item = MultisetPerm>> = match universe {
                Universe::QuasiStirling => Box::new(gen_quasi_stirling(n)),
                Universe::Stirling => Box::new(gen_quasi_stirling(n).filter(is_stirling)),
                Universe::All => Box::new(gen_all(n)),
            };
            let keep = |w: &MultisetPerm| avoid.as_ref().is_none_or(|s| avoids_all(w, s).unwrap_or(false));
            if trees {
                for tree in gen_trees(n).filter(|t| keep(&t.phi())) {
                    writeln!(out, "{tree}").map_err(io_err)?;
                }
            } else {
                for word in words.filter(keep) {
                    writeln!(out, "{word}").map_err(io_err)?;
                }
            }
        }
        Command::Convert { to_tree, input, .. } => {
            let input = input_lines(input.as_ref())?;
            let ok = per_line(input, &mut out, |line| {
                if to_tree {
                    let word: MultisetPerm = line.parse().map_err(|e: quasi_stirling::perm::PermError| e.to_string())?;
                    OrderedTree::phi_inverse(&word).map(|t| t.to_string()).map_err(|e| e.to_string())
                } else {
                    line.parse::<OrderedTree>().map(|t| t.phi().to_string()).map_err(|e| e.to_string())
                }
            })
            .map_err(io_err)?;
            if !ok {
                code = DATA;
            }
        }
        Command::Stats { trees, input } => {
            let input = input_lines(input.as_ref())?;
            let mut audit_failed = false;
            let ok = per_line(input, &mut out, |line| {
                let word: MultisetPerm = line.parse().map_err(|e: quasi_stirling::perm::PermError| e.to_string())?;
                let stats = word.stats();
                if !trees {
                    return Ok(stats.to_string());
                }
                let leaves = OrderedTree::phi_inverse(&word).map_err(|e| e.to_string())?.leaves();
                audit_failed |= leaves != stats.pl;
                Ok(format!("{stats} leaves={leaves} {}", if leaves == stats.pl { "ok" } else { "MISMATCH" }))
            })
            .map_err(io_err)?;
            if !ok {
                code = DATA;
            } else if audit_failed {
                code = MISMATCH;
            }
        }
        Command::Verify { theorem, nmax, format, timing, seed, force } => {
            check_cap(nmax, force)?;
            let report = verify::run(&theorem, nmax, seed, exec).map_err(|e| usage(e.to_string()))?;
            write!(out, "{}", report.render(format, timing)).map_err(io_err)?;
            if !report.passed() {
                code = MISMATCH;
            }
        }
        Command::Sequence { lambda, total, plateaus, nmax, csv, force } => {
            check_cap(nmax, force || total || plateaus.is_some())?;
            let table = if let Some(set) = nonempty(lambda)? {
                SeqTable::avoiders(&set, nmax, exec).map_err(|e| usage(e.to_string()))?
            } else if total {
                SeqTable::total(nmax)
            } else {
                match plateaus {
                    Some(0) | None => return Err(usage("--plateaus needs K >= 1")),
                    Some(k) => SeqTable::plateaus(k, nmax),
                }
            };
            if csv {
                write!(out, "{}", table.render_csv()).map_err(io_err)?;
            } else {
                writeln!(out, "{}", table.terms()).map_err(io_err)?;
            }
        }
        Command::Wilf { k, nmax, force } => {
            if !(1..=5).contains(&k) {
                return Err(usage("--k must be between 1 and 5"));
            }
            if nmax == 0 {
                return Err(usage("--nmax must be at least 1"));
            }
            check_cap(nmax, force)?;
            let report = wilf_classify(k, nmax, exec);
            write!(out, "{}", report.render()).map_err(io_err)?;
            if !report.symmetry_consistent() {
                code = MISMATCH;
            }
            if k >= 2 {
                let cmp = compare_with_table(&report);
                writeln!(
                    out,
                    "table: {} (groups compared on n >= {})",
                    if cmp.matches() { "match" } else { "MISMATCH" },
                    cmp.from
                )
                .map_err(io_err)?;
                if !cmp.matches() {
                    code = MISMATCH;
                }
            }
        }
    }
    out.flush().map_err(io_err)?;
    Ok(code)
}

fn execution(jobs: Option<usize>) -> Result<Execution, Failure> {
    match jobs {
        Some(0) => Err(usage("--jobs must be at least 1")),
        Some(1) => Ok(Execution::Sequential),
        #[cfg(feature = "parallel")]
        Some(j) => {
            rayon::ThreadPoolBuilder::new().num_threads(j).build_global().map_err(|e| usage(e.to_string()))?;
            Ok(Execution::Parallel)
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(Execution::Sequential),
        None => Ok(Execution::default()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    let result = execution(cli.jobs).and_then(|exec| run(cli, exec));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
