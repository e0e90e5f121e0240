//! Irreducible zero-error codes, the channel simulator and the decoder.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigUint;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::capacity::iota;
use crate::descendants::{confusable, ConfusabilityVerdict};
use crate::enumeration::{enumerate_irreducible, log2_biguint, CountTable, IrreducibleRanker};
use crate::word::{DuplicationEvent, MAX_DUPLICATION_LENGTH};
use crate::{Alphabet, Error, Limits, Result, Word};

/// A block code: a set of words of common length `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    alphabet: Alphabet,
    n: usize,
    words: BTreeSet<Word>,
}

impl Code {
    pub fn new(alphabet: Alphabet, n: usize, words: BTreeSet<Word>) -> Result<Self> {
        if let Some(w) = words.iter().find(|w| w.alphabet() != alphabet) {
            return Err(Error::AlphabetMismatch { left: alphabet.size(), right: w.alphabet().size() });
        }
        if let Some(w) = words.iter().find(|w| w.len() != n) {
            return Err(Error::OutOfRange { name: "codeword length", value: w.len() as f64 });
        }
        Ok(Self { alphabet, n, words })
    }

    /// Collects `words` into a code, taking `n` from the first word.
    pub fn from_words(words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let words: BTreeSet<Word> = words.into_iter().collect();
        let first = words.first().ok_or(Error::OutOfRange { name: "code size", value: 0.0 })?;
        Self::new(first.alphabet(), first.len(), words.clone())
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `log2 |C| / n` bits per symbol.
    pub fn rate(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        log2_biguint(&BigUint::from(self.words.len())) / self.n as f64
    }
}

/// `Irr_q(n)` as a code.
pub fn build_irreducible_code(q: u32, n: usize, limits: Limits) -> Result<Code> {
    let alphabet = Alphabet::new(q)?;
    if n == 0 {
        return Err(Error::OutOfRange { name: "n", value: 0.0 });
    }
    let count = CountTable::new(alphabet, n).values()[n].clone();
    if count > BigUint::from(limits.max_set_size) {
        return Err(Error::CapExceeded {
            what: "irreducible code (use the count instead)",
            cap: limits.max_set_size,
        });
    }
    Code::new(alphabet, n, enumerate_irreducible(q, n)?.collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfusablePair {
    pub x: Word,
    pub y: Word,
    pub witness: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZeroErrorReport {
    pub pairs: u64,
    pub distinct_roots: u64,
    pub witnesses: Vec<ConfusablePair>,
    pub unknown: u64,
}

impl ZeroErrorReport {
    /// No pair was shown confusable and none was left undecided.
    pub fn is_zero_error(&self) -> bool {
        self.witnesses.is_empty() && self.unknown == 0
    }
}

/// Checks every unordered pair of codewords; pairs that share a root are
/// searched for common descendants up to `max_len`.
pub fn verify_zero_error(code: &Code, max_len: usize, limits: Limits) -> Result<ZeroErrorReport> {
    let n = code.words.len() as u64;
    let mut report = ZeroErrorReport { pairs: n * n.saturating_sub(1) / 2, ..Default::default() };
    let mut same_root_pairs = 0;
    for block in group_by_root(code.words.iter().cloned()).values() {
        let block: Vec<&Word> = block.iter().collect();
        for (i, x) in block.iter().enumerate() {
            for y in &block[i + 1..] {
                same_root_pairs += 1;
                match confusable(x, y, max_len, limits)? {
                    ConfusabilityVerdict::ConfusableWitness { witness, .. } => report.witnesses.push(
                        ConfusablePair { x: (*x).clone(), y: (*y).clone(), witness },
                    ),
                    ConfusabilityVerdict::UnknownUpToBound { .. } => report.unknown += 1,
                    ConfusabilityVerdict::NonConfusableDistinctRoots { .. } => {
                        unreachable!("block members share a root")
                    }
                }
            }
        }
    }
    report.distinct_roots = report.pairs - same_root_pairs;
    Ok(report)
}

/// Root-extraction decoder: exact for every irreducible code.
pub fn decode(y: &Word) -> Word {
    y.root()
}

/// Partition of `words` by duplication root.
pub fn group_by_root(words: impl IntoIterator<Item = Word>) -> BTreeMap<Word, BTreeSet<Word>> {
    let mut blocks: BTreeMap<Word, BTreeSet<Word>> = BTreeMap::new();
    for w in words {
        blocks.entry(w.root()).or_default().insert(w);
    }
    blocks
}

/// Identifier of the generator behind [`simulate_channel`].
pub const GENERATOR: &str = "ChaCha8Rng";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationTrace {
    pub input: Word,
    pub events: Vec<DuplicationEvent>,
    pub output: Word,
    pub seed: u64,
    /// Stream of the generator; trial index in [`end_to_end`], 0 otherwise.
    pub stream: u64,
    pub generator: &'static str,
}

impl SimulationTrace {
    /// Applies the recorded events to the input again.
    pub fn replay(&self) -> Result<Word> {
        self.events.iter().try_fold(self.input.clone(), |w, &e| w.duplicate(e))
    }

    pub fn length3_events(&self) -> usize {
        self.events.iter().filter(|e| e.k == 3).count()
    }
}

/// Applies `t` random duplications: `j` uniform on the current positions,
/// then `k` uniform on `1..=min(j, 3)`.
pub fn simulate_with_rng<R: Rng + ?Sized>(x: &Word, t: usize, rng: &mut R) -> Result<(Word, Vec<DuplicationEvent>)> {
    if x.is_empty() && t > 0 {
        return Err(Error::OutOfRange { name: "input length", value: 0.0 });
    }
    let mut cur = x.clone();
    let mut events = Vec::with_capacity(t);
    for _ in 0..t {
        let j = rng.random_range(1..=cur.len());
        let k = rng.random_range(1..=j.min(MAX_DUPLICATION_LENGTH));
        let e = DuplicationEvent::new(j, k);
        cur = cur.duplicate(e)?;
        events.push(e);
    }
    Ok((cur, events))
}

pub fn simulate_channel(x: &Word, t: usize, seed: u64) -> Result<SimulationTrace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (output, events) = simulate_with_rng(x, t, &mut rng)?;
    Ok(SimulationTrace { input: x.clone(), events, output, seed, stream: 0, generator: GENERATOR })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EndToEndParams {
    pub q: u32,
    pub n: usize,
    /// Each trial draws its duplication count uniformly from `0..=t_max`.
    pub t_max: usize,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndToEndReport {
    pub params: EndToEndParams,
    pub successes: usize,
    pub total_duplications: usize,
    /// Traces whose decoded output differed from the input.
    pub failures: Vec<SimulationTrace>,
    /// Traces that broke `|out| = |in| + Σk` or `|out| ≥ |in| + t + 2b`.
    pub length_violations: usize,
}

impl EndToEndReport {
    pub fn success_fraction(&self) -> f64 {
        if self.params.trials == 0 {
            return 1.0;
        }
        self.successes as f64 / self.params.trials as f64
    }
}

/// Generator for one trial: stream `trial` of the seeded generator.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform integer in `0..bound` by rejection sampling; `bound > 0`.
pub fn random_below<R: RngCore + ?Sized>(rng: &mut R, bound: &BigUint) -> BigUint {
    let bits = bound.bits();
    let digits = bits.div_ceil(32) as usize;
    let top_bits = bits - 32 * (digits as u64 - 1);
    let top_mask = if top_bits == 32 { u32::MAX } else { (1u32 << top_bits) - 1 };
    loop {
        let mut raw: Vec<u32> = (0..digits).map(|_| rng.next_u32()).collect();
        if let Some(top) = raw.last_mut() {
            *top &= top_mask;
        }
        let candidate = BigUint::from_slice(&raw);
        if candidate < *bound {
            return candidate;
        }
    }
}

/// Sends random codewords of `Irr_q(n)` through the channel and decodes.
/// Codewords are drawn by unranking a uniform index, so `Irr_q(n)` is never
/// materialized.
pub fn end_to_end(params: EndToEndParams, limits: Limits) -> Result<EndToEndReport> {
    if params.n == 0 {
        return Err(Error::OutOfRange { name: "n", value: 0.0 });
    }
    let ranker = IrreducibleRanker::new(params.q, params.n, limits)?;
    let mut report = EndToEndReport {
        params,
        successes: 0,
        total_duplications: 0,
        failures: Vec::new(),
        length_violations: 0,
    };
    for trial in 0..params.trials as u64 {
        let trace = run_trial(&ranker, params, trial)?;
        report.total_duplications += trace.events.len();
        if !length_accounting_holds(&trace) {
            report.length_violations += 1;
        }
        if decode(&trace.output) == trace.input {
            report.successes += 1;
        } else {
            report.failures.push(trace);
        }
    }
    Ok(report)
}

fn run_trial(ranker: &IrreducibleRanker, params: EndToEndParams, trial: u64) -> Result<SimulationTrace> {
    let mut rng = trial_rng(params.seed, trial);
    let index = random_below(&mut rng, ranker.total());
    let input = ranker.unrank(&index).expect("index below the count");
    let t = rng.random_range(0..=params.t_max);
    let (output, events) = simulate_with_rng(&input, t, &mut rng)?;
    Ok(SimulationTrace { input, events, output, seed: params.seed, stream: trial, generator: GENERATOR })
}

/// `|out| = |in| + Σk` and `|out| ≥ |in| + t + 2b` for `b` length-3 events.
pub fn length_accounting_holds(trace: &SimulationTrace) -> bool {
    let (n_in, n_out) = (trace.input.len(), trace.output.len());
    let sum: usize = trace.events.iter().map(|e| e.k).sum();
    n_out == n_in + sum && n_out >= n_in + trace.events.len() + 2 * trace.length3_events()
}

#[derive(Clone, Debug, PartialEq)]
pub struct RateReport {
    pub n: usize,
    pub size: BigUint,
    pub rate: f64,
    /// `ι_q - rate`; negative at small `n`.
    pub capacity_gap: f64,
}

/// Rates `log2 I_q(n) / n` of the irreducible codes for `n = 1..=n_max`.
pub fn rate_table(q: u32, n_max: usize) -> Result<Vec<RateReport>> {
    let alphabet = Alphabet::new(q)?;
    let capacity = iota(q)?.iota;
    let table = CountTable::new(alphabet, n_max);
    Ok((1..=n_max)
        .map(|n| {
            let size = table.values()[n].clone();
            let rate = log2_biguint(&size) / n as f64;
            RateReport { n, size, rate, capacity_gap: capacity - rate }
        })
        .collect())
}
