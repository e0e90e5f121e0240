//! The `tandem` command.
//!
//! Exit status is 0 on success, 1 on a domain or IO error (one line on the
//! error stream) and 2 on a usage error. Output is a deterministic function
//! of the arguments, standard input and the caps.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::{BufRead, Write};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use tandem_core::capacity::{beta_bar, iota, verify_lemma1};
use tandem_core::code::{
    build_irreducible_code, decode, end_to_end, rate_table, simulate_channel, verify_zero_error, Code,
    EndToEndParams,
};
use tandem_core::descendants::{
    classify_sibling_pair, confusable, default_max_len, descendant_cone, descendants_t, lemma2_check,
};
use tandem_core::enumeration::{count_irreducible, enumerate_irreducible, growth_rate_with_limits, GrowthMethod};
use tandem_core::{Alphabet, DuplicationEvent, Limits, Symbol, Word};

use crate::input::{limits_from_env, parse_word, parse_words, read_words};
use crate::records::{
    CapacityRecord, DescendantRecord, EndToEndRecord, EventRecord, Lemma1Record, Lemma2Record, PairClassRecord,
    RateRow, TraceRecord, VerdictRecord, ZeroErrorRecord,
};
use crate::Failure;

#[derive(Debug, Parser)]
#[command(name = "tandem", version, about = "Words, roots and zero-error codes under tandem duplications of length at most 3")]
pub struct Cli {
    /// Alphabet size; inferred from the word arguments when omitted.
    #[arg(short = 'q', long = "q", global = true, value_parser = clap::value_parser!(u32).range(3..=65536))]
    pub q: Option<u32>,
    /// Output mode.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Same as `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Duplication root of a word.
    Root {
        word: String,
        /// Also list the removed sites as `j,k`, one per line.
        #[arg(long)]
        trace: bool,
    },
    /// Whether a word avoids aa, abab and abcabc.
    Irreducible { word: String },
    /// Number of irreducible words of length n.
    Count {
        #[arg(short)]
        n: usize,
        /// Count by filtering all q^n words instead.
        #[arg(long)]
        brute_force: bool,
    },
    /// Irreducible words of length n in lexicographic order.
    Enum {
        #[arg(short)]
        n: usize,
    },
    /// Capacity exponent: the root r and iota = log2 r.
    Capacity {
        /// Also report the spectral and ratio growth estimates.
        #[arg(long)]
        estimates: bool,
    },
    /// Maximizer of the entropy-rate bound.
    BetaBar,
    /// Words reachable by exactly t duplications.
    Descendants {
        word: String,
        #[arg(short)]
        t: usize,
    },
    /// Descendants of every length up to --max-len.
    Cone {
        word: String,
        #[arg(long)]
        max_len: usize,
    },
    /// Bounded common-descendant search.
    Confusable {
        x: String,
        y: String,
        /// Defaults to |x| + |y| + 6.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Applies the given events `j,k` in order and prints every word.
    Duplicate {
        word: String,
        #[arg(value_parser = parse_event, required = true)]
        events: Vec<DuplicationEvent>,
    },
    /// Classifies two duplication events on the same word.
    Classify {
        word: String,
        #[arg(value_parser = parse_event)]
        first: DuplicationEvent,
        #[arg(value_parser = parse_event)]
        second: DuplicationEvent,
    },
    /// Sends a word through t random duplications.
    Simulate {
        word: String,
        #[arg(short)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Root-extraction decoder.
    Decode { word: String },
    /// Checks that a code is zero-error.
    VerifyCode(VerifyCodeArgs),
    /// Rates of the irreducible codes for n = 1..=n_max.
    RateTable {
        #[arg(long)]
        n_max: usize,
    },
    /// Checks the entropy-rate bound on a grid of beta values.
    Lemma1 {
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
    },
    /// Largest pairwise non-confusable subset of t-descendants.
    Lemma2 {
        word: String,
        #[arg(short)]
        t: usize,
        /// Restrict to descendants with b length-3 duplications.
        #[arg(short)]
        b: Option<usize>,
        /// Defaults to |x| + 3t + 6.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Random codewords through the channel and back through the decoder.
    EndToEnd {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        t_max: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Roots of random words under random de-duplication orders.
    Confluence {
        #[arg(long, default_value_t = 1000)]
        words: usize,
        #[arg(long, default_value_t = 20)]
        max_len: usize,
        #[arg(long, default_value_t = 10)]
        orders: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group(ArgGroup::new("source").required(true).args(["stdin", "irreducible", "words"])))]
pub struct VerifyCodeArgs {
    /// Read codewords from standard input, one per line.
    #[arg(long)]
    stdin: bool,
    /// Check all irreducible words of this length.
    #[arg(long, value_name = "N")]
    irreducible: Option<usize>,
    /// Codewords given as arguments.
    words: Vec<String>,
    /// Common-descendant search bound; defaults to 2n + 6.
    #[arg(long)]
    max_len: Option<usize>,
}

fn parse_event(text: &str) -> Result<DuplicationEvent, String> {
    let (j, k) = text.split_once(',').ok_or_else(|| format!("expected j,k, got {text:?}"))?;
    let j = j.trim().parse().map_err(|_| format!("bad position in {text:?}"))?;
    let k = k.trim().parse().map_err(|_| format!("bad length in {text:?}"))?;
    Ok(DuplicationEvent::new(j, k))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code.clamp(0, 255) as u8;
        }
    };
    match execute(&cli, stdin, out) {
        Ok(()) => 0,
        Err(e) => {
            let line = e.to_string().replace('\n', " ");
            let _ = writeln!(err, "error: {line}");
            1
        }
    }
}

struct Output<'a> {
    format: Format,
    out: &'a mut dyn Write,
}

impl Output<'_> {
    fn structured(&self) -> bool {
        self.format == Format::Json
    }

    fn json<T: Serialize + ?Sized>(&mut self, value: &T) -> Result<(), Failure> {
        serde_json::to_writer_pretty(&mut *self.out, value)?;
        writeln!(self.out)?;
        Ok(())
    }

    fn line(&mut self, text: impl std::fmt::Display) -> Result<(), Failure> {
        writeln!(self.out, "{text}")?;
        Ok(())
    }

    /// `value` as JSON, or `text` in the other modes.
    fn either<T: Serialize + ?Sized>(&mut self, value: &T, text: impl std::fmt::Display) -> Result<(), Failure> {
        if self.structured() {
            self.json(value)
        } else {
            self.line(text)
        }
    }

    fn words<'w>(&mut self, words: impl IntoIterator<Item = &'w Word>) -> Result<(), Failure> {
        let texts: Vec<String> = words.into_iter().map(Word::to_text).collect();
        if self.structured() {
            return self.json(&texts);
        }
        for t in texts {
            self.line(t)?;
        }
        Ok(())
    }
}

fn events_text(events: &[DuplicationEvent]) -> String {
    let parts: Vec<String> = events.iter().map(|e| format!("{},{}", e.j, e.k)).collect();
    parts.join(" ")
}

fn by_length(words: &mut [Word]) {
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

fn execute(cli: &Cli, stdin: &mut dyn BufRead, out: &mut dyn Write) -> Result<(), Failure> {
    let format = if cli.json { Format::Json } else { cli.format };
    let mut o = Output { format, out };
    let limits = limits_from_env()?;
    let word = |text: &str| parse_word(text, cli.q);
    let q = cli.q.unwrap_or(3);

    match &cli.command {
        Command::Root { word: text, trace } => {
            let (root, sites) = word(text)?.root_with_trace();
            if o.structured() {
                let sites: Vec<EventRecord> = sites.iter().map(|s| EventRecord::from(s.as_event())).collect();
                o.json(&serde_json::json!({ "root": root.to_text(), "sites": sites }))?;
            } else {
                o.line(&root)?;
                if *trace {
                    for s in sites {
                        o.line(format_args!("{},{}", s.j, s.k))?;
                    }
                }
            }
        }
        Command::Irreducible { word: text } => {
            let w = word(text)?;
            let sites: Vec<EventRecord> =
                w.deduplication_sites().iter().map(|s| EventRecord::from(s.as_event())).collect();
            let value = serde_json::json!({ "word": w.to_text(), "irreducible": sites.is_empty(), "sites": sites });
            o.either(&value, sites.is_empty())?;
        }
        Command::Count { n, brute_force } => {
            let count = if *brute_force { brute_force_count(q, *n, limits)? } else { count_irreducible(q, *n)?.to_string() };
            o.either(&serde_json::json!({ "q": q, "n": n, "count": count }), &count)?;
        }
        Command::Enum { n } => {
            let words: Vec<Word> = enumerate_irreducible(q, *n)?.take(limits.max_set_size.saturating_add(1)).collect();
            if words.len() > limits.max_set_size {
                return Err(tandem_core::Error::CapExceeded { what: "enumeration", cap: limits.max_set_size }.into());
            }
            o.words(&words)?;
        }
        Command::Capacity { estimates } => {
            let mut record = CapacityRecord::new(&iota(q)?, beta_bar());
            if *estimates {
                record.spectral = Some(growth_rate_with_limits(q, GrowthMethod::Spectral, limits)?);
                record.ratio = Some(growth_rate_with_limits(q, GrowthMethod::Ratio, limits)?);
            }
            if o.structured() {
                o.json(&record)?;
            } else {
                o.line(record.iota)?;
                if let (Some(s), Some(r)) = (record.spectral, record.ratio) {
                    o.line(format_args!("spectral {s}"))?;
                    o.line(format_args!("ratio {r}"))?;
                }
            }
        }
        Command::BetaBar => {
            let b = beta_bar();
            o.either(&serde_json::json!({ "beta_bar": b }), b)?;
        }
        Command::Descendants { word: text, t } => {
            let set = descendants_t(&word(text)?, *t, limits)?;
            let sorted = set.sorted_by_length();
            if o.structured() {
                let records: Vec<DescendantRecord> = sorted
                    .iter()
                    .map(|w| DescendantRecord::new(w, &set.derivation(w).expect("member").trace))
                    .collect();
                o.json(&records)?;
            } else {
                o.words(sorted)?;
            }
        }
        Command::Cone { word: text, max_len } => {
            let mut words: Vec<Word> = descendant_cone(&word(text)?, *max_len, limits)?.into_iter().collect();
            by_length(&mut words);
            o.words(&words)?;
        }
        Command::Confusable { x, y, max_len } => {
            let words = parse_words(&[x, y], cli.q)?;
            let (x, y) = (&words[0], &words[1]);
            let bound = max_len.unwrap_or_else(|| default_max_len(x, y));
            let record = VerdictRecord::from(&confusable(x, y, bound, limits)?);
            if o.structured() {
                o.json(&record)?;
            } else {
                o.line(&record.kind)?;
                if let Some(w) = &record.witness {
                    o.line(format_args!("witness {w}"))?;
                }
                for (name, trace) in [("trace_x", &record.trace_x), ("trace_y", &record.trace_y)] {
                    if let Some(trace) = trace {
                        let events: Vec<DuplicationEvent> = trace.iter().map(|&e| e.into()).collect();
                        o.line(format_args!("{name} {}", events_text(&events)))?;
                    }
                }
                if let (Some(a), Some(b)) = (&record.root_x, &record.root_y) {
                    o.line(format_args!("roots {a} {b}"))?;
                }
                if let Some(b) = record.bound {
                    o.line(format_args!("max_len {b}"))?;
                }
            }
        }
        Command::Duplicate { word: text, events } => {
            let mut chain = vec![word(text)?];
            for &e in events {
                let next = chain.last().expect("non-empty").duplicate(e)?;
                chain.push(next);
            }
            o.words(&chain)?;
        }
        Command::Classify { word: text, first, second } => {
            let record = PairClassRecord::from(&classify_sibling_pair(&word(text)?, *first, *second, limits)?);
            let text = match (&record.certificate, record.depth) {
                (Some(c), Some(d)) => format!("{} {c} depth {d}", record.kind),
                _ => record.kind.clone(),
            };
            o.either(&record, text)?;
        }
        Command::Simulate { word: text, t, seed } => {
            let trace = simulate_channel(&word(text)?, *t, *seed)?;
            if o.structured() {
                o.json(&TraceRecord::from(&trace))?;
            } else {
                o.line(&trace.output)?;
                o.line(format_args!("events {}", events_text(&trace.events)))?;
            }
        }
        Command::Decode { word: text } => {
            let decoded = decode(&word(text)?);
            o.either(&serde_json::json!({ "decoded": decoded.to_text() }), &decoded)?;
        }
        Command::VerifyCode(args) => verify_code(&mut o, args, cli.q, stdin, limits)?,
        Command::RateTable { n_max } => {
            let rows: Vec<RateRow> = rate_table(q, *n_max)?.iter().map(RateRow::from).collect();
            if o.structured() {
                o.json(&rows)?;
            } else {
                let mut writer = csv::Writer::from_writer(&mut *o.out);
                for row in &rows {
                    writer.serialize(row)?;
                }
                writer.flush()?;
            }
        }
        Command::Lemma1 { grid } => {
            let record = Lemma1Record::from(&verify_lemma1(q, *grid)?);
            let text = format!(
                "{} q={} max={} argmax={} iota={} beta_bar={} min_slack={}",
                if record.pass { "pass" } else { "fail" },
                record.q,
                record.max_value,
                record.argmax,
                record.iota,
                record.beta_bar,
                record.min_slack
            );
            o.either(&record, text)?;
        }
        Command::Lemma2 { word: text, t, b, max_len } => {
            let x = word(text)?;
            let bound = max_len.unwrap_or(x.len() + 3 * t + 6);
            let record = Lemma2Record::from(&lemma2_check(&x, *t, *b, bound, limits)?);
            if o.structured() {
                o.json(&record)?;
            } else {
                o.line(format_args!(
                    "{} subset {} bound {} candidates {}",
                    if record.holds { "holds" } else { "violated" },
                    record.subset.len(),
                    record.bound,
                    record.candidates
                ))?;
                for w in &record.subset {
                    o.line(w)?;
                }
            }
        }
        Command::EndToEnd { n, t_max, trials, seed } => {
            let params = EndToEndParams { q, n: *n, t_max: *t_max, trials: *trials, seed: *seed };
            let record = EndToEndRecord::from(&end_to_end(params, limits)?);
            let text = format!(
                "{}/{} decoded, {} duplications, {} length violations",
                record.successes, record.trials, record.total_duplications, record.length_violations
            );
            o.either(&record, text)?;
        }
        Command::Confluence { words, max_len, orders, seed } => {
            let disagreements = confluence(q, *words, *max_len, *orders, *seed)?;
            let value = serde_json::json!({
                "q": q, "words": words, "max_len": max_len, "orders": orders, "seed": seed,
                "disagreements": disagreements,
            });
            let text = if disagreements.is_empty() {
                format!("confluent: {words} words x {orders} orders")
            } else {
                format!("not confluent: {}", disagreements.join(" "))
            };
            o.either(&value, text)?;
        }
    }
    Ok(())
}

fn verify_code(
    o: &mut Output<'_>,
    args: &VerifyCodeArgs,
    q: Option<u32>,
    stdin: &mut dyn BufRead,
    limits: Limits,
) -> Result<(), Failure> {
    let code = if let Some(n) = args.irreducible {
        build_irreducible_code(q.unwrap_or(3), n, limits)?
    } else {
        let words = if args.stdin { read_words(stdin, q)? } else { parse_words(&args.words, q)? };
        Code::from_words(words)?
    };
    let max_len = args.max_len.unwrap_or(2 * code.n() + 6);
    let report = verify_zero_error(&code, max_len, limits)?;
    let record = ZeroErrorRecord::new(code.len(), code.n(), max_len, &report);
    if o.structured() {
        return o.json(&record);
    }
    o.line(format_args!(
        "{} size {} pairs {} distinct_roots {} witnesses {} unknown {}",
        if record.zero_error { "zero-error" } else { "not zero-error" },
        record.size,
        record.pairs,
        record.distinct_roots,
        record.witnesses.len(),
        record.unknown
    ))?;
    for w in &record.witnesses {
        o.line(format_args!("{} {} {}", w.x, w.y, w.witness))?;
    }
    Ok(())
}

fn brute_force_count(q: u32, n: usize, limits: Limits) -> Result<String, Failure> {
    let alphabet = Alphabet::new(q)?;
    let total = u64::from(q)
        .checked_pow(n as u32)
        .filter(|&t| t <= limits.max_set_size as u64)
        .ok_or(tandem_core::Error::CapExceeded { what: "brute-force count", cap: limits.max_set_size })?;
    let mut count = 0u64;
    let mut symbols = vec![0 as Symbol; n];
    for mut index in 0..total {
        for slot in symbols.iter_mut().rev() {
            *slot = (index % u64::from(q)) as Symbol;
            index /= u64::from(q);
        }
        if Word::new(symbols.clone(), alphabet)?.is_irreducible() {
            count += 1;
        }
    }
    Ok(count.to_string())
}

/// Words whose randomized de-duplication disagreed with the root.
fn confluence(q: u32, words: usize, max_len: usize, orders: usize, seed: u64) -> Result<Vec<String>, Failure> {
    let alphabet = Alphabet::new(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = BTreeSet::new();
    for _ in 0..words {
        let len = rng.random_range(0..=max_len);
        let symbols: Vec<Symbol> = (0..len).map(|_| rng.random_range(0..q) as Symbol).collect();
        let w = Word::new(symbols, alphabet)?;
        let root = w.root();
        for _ in 0..orders {
            let mut cur = w.clone();
            loop {
                let sites = cur.deduplication_sites();
                if sites.is_empty() {
                    break;
                }
                cur = cur.deduplicate(sites[rng.random_range(0..sites.len())])?;
            }
            if cur != root {
                bad.insert(w.to_text());
            }
        }
    }
    Ok(bad.into_iter().collect())
}
