//! Batch front door: corpus analysis, verification runs, and search
//! campaigns over word spaces.
//!
//! Exit codes: 0 all checks clean; 1 at least one finding (a counterexample
//! to an unproven claim); 2 usage, input or budget errors; 3 internal
//! invariant violation (a proven fact failed, or the two k-power counters
//! disagreed).

use clap::{Parser, Subcommand, ValueEnum};
use std::collections::BTreeSet;
use std::io::Read;
use wordpower::parallel::map_ordered;
use wordpower::report::{
    analyze_csv_row, analyze_records, outcome_json, to_json_line, verify_csv_row, verify_records,
    AnalyzeRecord, ANALYZE_CSV_HEADER, VERIFY_CSV_HEADER,
};
use wordpower::search::{
    exhaustive_search, random_search, CheckId, RandomConfig, SearchConfig, SearchOutcome,
};
use wordpower::verify::{verify_word, VerificationReport};
use wordpower::{Error, Word};

const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "wordpower",
    version,
    about = "Count distinct k-powers in finite words and stress-test the bounds that govern them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-word quantities: complexity profiles, top exponents, k-power counts
    Analyze {
        /// k values, comma separated (k >= 2)
        #[arg(long = "k", value_delimiter = ',', default_values_t = [3u32, 4, 5])]
        k: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Reject words longer than this many letters
        #[arg(long, default_value_t = 10_000)]
        max_word_len: usize,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        /// Input corpus, one word per line; '-' reads stdin
        input: String,
    },
    /// Run every lemma, bound and conjecture check per word
    Verify {
        /// k values, comma separated (k >= 3)
        #[arg(long = "k", value_delimiter = ',', default_values_t = [3u32, 4, 5])]
        k: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = 10_000)]
        max_word_len: usize,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        /// Corrupt one proven check to exercise the exit-3 path
        #[arg(long, hide = true)]
        inject_fault: bool,
        /// Input corpus, one word per line; '-' reads stdin
        input: String,
    },
    /// Check every canonical word of a space exhaustively
    Search {
        #[arg(long)]
        alphabet: u32,
        #[arg(long)]
        max_len: usize,
        /// Check groups: theorem, corollary, conjecture, lemmas (default all)
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        #[arg(long = "k", value_delimiter = ',', default_values_t = [3u32, 4, 5])]
        k: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
    },
    /// Check seeded random words; fully reproducible from the seed
    Rand {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: u64,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        alphabet: u32,
        /// Check groups: theorem, corollary, conjecture, lemmas (default all)
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        #[arg(long = "k", value_delimiter = ',', default_values_t = [3u32, 4, 5])]
        k: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            let msg = match &failure {
                Failure::Usage(m) | Failure::Internal(m) => m,
            };
            eprintln!("error: {msg}");
            failure.code()
        }
    };
    std::process::exit(code);
}

fn run(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Analyze { k, format, max_word_len, workers, input } => {
            run_analyze(&k, format, max_word_len, workers, &input)
        }
        Command::Verify { k, format, max_word_len, workers, inject_fault, input } => {
            run_verify(&k, format, max_word_len, workers, inject_fault, &input)
        }
        Command::Search { alphabet, max_len, checks, k, format, workers } => {
            let cfg = SearchConfig {
                alphabet_size: validate_alphabet(alphabet)?,
                max_len,
                checks: parse_checks(&checks)?,
                ks: validate_ks(&k, 3)?,
                budget: budget_from_env()?,
                workers,
            };
            let outcome = exhaustive_search(&cfg).map_err(map_search_err)?;
            emit_outcome(&outcome, format)
        }
        Command::Rand { seed, count, len, alphabet, checks, k, format, workers } => {
            let cfg = RandomConfig {
                seed,
                count,
                len,
                alphabet_size: validate_alphabet(alphabet)?,
                checks: parse_checks(&checks)?,
                ks: validate_ks(&k, 3)?,
                workers,
            };
            let outcome = random_search(&cfg).map_err(map_search_err)?;
            emit_outcome(&outcome, format)
        }
    }
}

fn validate_alphabet(alphabet: u32) -> Result<u32, Failure> {
    if (1..=26).contains(&alphabet) {
        Ok(alphabet)
    } else {
        Err(Failure::Usage(format!("alphabet size must be 1..=26, got {alphabet}")))
    }
}

fn validate_ks(ks: &[u32], min: u32) -> Result<Vec<u32>, Failure> {
    if ks.is_empty() {
        return Err(Failure::Usage("at least one k value is required".into()));
    }
    match ks.iter().find(|&&k| k < min) {
        Some(k) => Err(Failure::Usage(format!("k must be at least {min}, got {k}"))),
        None => Ok(ks.to_vec()),
    }
}

fn parse_checks(checks: &[String]) -> Result<BTreeSet<CheckId>, Failure> {
    if checks.is_empty() {
        return Ok(CheckId::ALL.into_iter().collect());
    }
    checks
        .iter()
        .map(|s| s.parse::<CheckId>().map_err(Failure::Usage))
        .collect()
}

fn budget_from_env() -> Result<u64, Failure> {
    match std::env::var("WORDPOWER_BUDGET") {
        Err(_) => Ok(DEFAULT_BUDGET),
        Ok(raw) => raw
            .parse::<u64>()
            .map_err(|_| Failure::Usage(format!("WORDPOWER_BUDGET must be an integer, got {raw:?}"))),
    }
}

fn map_search_err(e: Error) -> Failure {
    match e {
        Error::BudgetExceeded { .. } | Error::InvalidK { .. } => Failure::Usage(e.to_string()),
        other => Failure::Internal(other.to_string()),
    }
}

fn emit_outcome(outcome: &SearchOutcome, format: Format) -> Result<i32, Failure> {
    match format {
        Format::Json => println!("{}", outcome_json(outcome)),
        Format::Text => print!("{}", render_outcome_text(outcome)),
        Format::Csv => {
            return Err(Failure::Usage("csv output is not defined for search outcomes".into()))
        }
    }
    if !outcome.hard_violations.is_empty() {
        eprintln!("internal invariant violations: {}", outcome.hard_violations.len());
        return Ok(3);
    }
    if !outcome.counterexamples.is_empty() {
        return Ok(1);
    }
    Ok(0)
}

fn render_outcome_text(outcome: &SearchOutcome) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "space: {} alphabet={} max_len={}{}\n",
        outcome.space.mode,
        outcome.space.alphabet_size,
        outcome.space.max_len,
        outcome
            .space
            .seed
            .map(|s| format!(" seed={s} count={}", outcome.space.count.unwrap_or(0)))
            .unwrap_or_default()
    ));
    out.push_str(&format!(
        "words examined: {}  findings: {}  hard violations: {}\n",
        outcome.stats.words_examined, outcome.stats.findings, outcome.stats.hard_violations
    ));
    for v in &outcome.hard_violations {
        out.push_str(&format!("HARD {} {} {}\n", v.check, v.word, v.detail));
    }
    for v in &outcome.counterexamples {
        let k = v.k.map(|k| format!(" k={k}")).unwrap_or_default();
        out.push_str(&format!("finding {}{} {}: {}\n", v.check, k, v.word, v.detail));
    }
    if !outcome.extremal.is_empty() {
        out.push_str("tightest words (N_k * (k-2) / (n - |Alph|)):\n");
        for e in &outcome.extremal {
            out.push_str(&format!(
                "  {} k={} N_k={} ratio={}/{}\n",
                e.word, e.k, e.n_k, e.ratio_num, e.ratio_den
            ));
        }
    }
    out
}

fn read_corpus(input: &str, max_word_len: usize) -> Result<Vec<Word>, Failure> {
    let raw = if input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(input)
            .map_err(|e| Failure::Usage(format!("cannot read {input}: {e}")))?
    };
    let mut words = Vec::new();
    for (lineno, line) in raw.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let word = Word::from_text(trimmed);
        if word.len() > max_word_len {
            return Err(Failure::Usage(format!(
                "line {}: word of {} letters exceeds --max-word-len {}",
                lineno + 1,
                word.len(),
                max_word_len
            )));
        }
        words.push(word);
    }
    Ok(words)
}

fn run_analyze(
    ks: &[u32],
    format: Format,
    max_word_len: usize,
    workers: usize,
    input: &str,
) -> Result<i32, Failure> {
    if ks.is_empty() || ks.iter().any(|&k| k < 2) {
        return Err(Failure::Usage("analyze needs k values >= 2".into()));
    }
    let words = read_corpus(input, max_word_len)?;
    let per_word = map_ordered(&words, workers, |word| {
        analyze_records(word, ks).expect("corpus words carry no sentinel")
    });
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str(ANALYZE_CSV_HEADER);
        out.push('\n');
    }
    for records in &per_word {
        match format {
            Format::Json => {
                for r in records {
                    out.push_str(&to_json_line(r));
                    out.push('\n');
                }
            }
            Format::Csv => {
                for r in records {
                    out.push_str(&analyze_csv_row(r));
                    out.push('\n');
                }
            }
            Format::Text => render_analyze_text(records, &mut out),
        }
    }
    print!("{out}");
    Ok(0)
}

fn render_analyze_text(records: &[AnalyzeRecord], out: &mut String) {
    let Some(first) = records.first() else { return };
    out.push_str(&format!(
        "{}  n={} |Alph|={}  M(w*)={}  distinct={} primitive={}\n",
        first.word, first.n, first.alph, first.m, first.distinct_factors, first.primitive_factors
    ));
    out.push_str(&format!("  C(w):  {}\n", join(&first.c_profile)));
    out.push_str(&format!("  C(w*): {}\n", join(&first.c_star_profile)));
    out.push_str(&format!("  s(w*): {}\n", join(&first.s_star_profile)));
    let tops: Vec<String> = first
        .top_exponents
        .iter()
        .map(|t| {
            if t.num % t.den == 0 {
                format!("m({})={}", t.root, t.num / t.den)
            } else {
                let g = gcd(t.num, t.den);
                format!("m({})={}/{}", t.root, t.num / g, t.den / g)
            }
        })
        .collect();
    out.push_str(&format!("  top exponents: {}\n", tops.join(", ")));
    for r in records {
        match (r.bound_num, r.bound_den, r.holds) {
            (Some(num), Some(den), Some(holds)) => {
                let within = if holds { "yes" } else { "NO" };
                out.push_str(&format!(
                    "  k={}: N_{}={}  bound={}/{}  within={}\n",
                    r.k, r.k, r.n_k, num, den, within
                ));
            }
            _ => out.push_str(&format!("  k={}: N_{}={}\n", r.k, r.k, r.n_k)),
        }
    }
}

fn join(counts: &[u64]) -> String {
    counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn run_verify(
    ks: &[u32],
    format: Format,
    max_word_len: usize,
    workers: usize,
    inject_fault: bool,
    input: &str,
) -> Result<i32, Failure> {
    let ks = validate_ks(ks, 3)?;
    let words = read_corpus(input, max_word_len)?;
    let mut reports: Vec<VerificationReport> = map_ordered(&words, workers, |word| {
        verify_word(word, &ks).expect("ks validated and corpus words carry no sentinel")
    });
    if inject_fault {
        if let Some(report) = reports.first_mut() {
            report.corollary.marker_count_holds = false;
        }
    }

    let mut out = String::new();
    if format == Format::Csv {
        out.push_str(VERIFY_CSV_HEADER);
        out.push('\n');
    }
    let mut finding_count = 0usize;
    let mut hard_failures = Vec::new();
    for report in &reports {
        let findings = report.findings();
        finding_count += findings.len();
        if !report.hard_checks_pass() {
            hard_failures.push(report.word.to_text());
        }
        match format {
            Format::Json => {
                for r in verify_records(report) {
                    out.push_str(&to_json_line(&r));
                    out.push('\n');
                }
            }
            Format::Csv => {
                for r in verify_records(report) {
                    out.push_str(&verify_csv_row(&r));
                    out.push('\n');
                }
            }
            Format::Text => render_verify_text(report, &findings, &mut out),
        }
    }
    print!("{out}");
    eprintln!(
        "verified {} words: {} findings, {} internal violations",
        reports.len(),
        finding_count,
        hard_failures.len()
    );
    if !hard_failures.is_empty() {
        eprintln!("internal invariant violation on: {}", hard_failures.join(", "));
        return Ok(3);
    }
    if finding_count > 0 {
        return Ok(1);
    }
    Ok(0)
}

fn render_verify_text(report: &VerificationReport, findings: &[String], out: &mut String) {
    out.push_str(&format!(
        "{}  n={} |Alph|={}  M={}  S_int={}  S_real={}  sum(m-1)={}  |s|={}\n",
        report.word,
        report.n,
        report.alph,
        report.m_special,
        report.corollary.s_int,
        report.corollary.s_real,
        report.summary.s_minus_one,
        report.corollary.s_cardinality
    ));
    for (t, c) in report.theorem.iter().zip(&report.conjecture) {
        out.push_str(&format!(
            "  k={}: N_{}={} (oracle {})  theorem <= {} {}  conjecture <= {} {}\n",
            t.k,
            t.k,
            t.n_k,
            t.n_k_oracle,
            t.bound,
            if t.holds { "ok" } else { "VIOLATED" },
            c.bound,
            if c.holds { "ok" } else { "finding" }
        ));
    }
    out.push_str(&format!(
        "  proven checks: {}\n",
        if report.hard_checks_pass() { "ok" } else { "VIOLATED" }
    ));
    if findings.is_empty() {
        out.push_str("  findings: none\n");
    } else {
        for f in findings {
            out.push_str(&format!("  finding: {f}\n"));
        }
    }
}
