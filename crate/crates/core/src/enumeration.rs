//! Counting, enumerating and ranking irreducible words.
//!
//! `I_q(n) = |Irr_q(n)|` obeys
//! `I_q(n) = (q-2) I_q(n-1) + (q-3) I_q(n-2) + (q-2) I_q(n-3)` from `n = 6`
//! on. The six seeds `I_q(0..=5)` are closed forms derived by
//! inclusion-exclusion over the forbidden squares that fit in such short
//! words (only `aa` below length 4, and `abab` up to length 5).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::capacity::TOLERANCES;
use crate::word::{has_forbidden_suffix, Alphabet, Symbol, Word};
use crate::{Error, Limits, Result};

/// Window kept by the automaton; `abcabc` is the longest forbidden pattern.
pub const AUTOMATON_WINDOW: usize = 5;

/// Number of leading values that seed the recurrence.
pub const RECURRENCE_SEEDS: usize = 6;

fn seed_count(q: u32, n: usize) -> BigUint {
    let q = BigUint::from(q);
    let q1 = &q - 1u32;
    let q2 = &q - 2u32;
    match n {
        0 => BigUint::one(),
        1 => q,
        2 => &q * &q1,
        3 => &q * &q1 * &q1,
        4 => &q * &q * &q1 * &q2,
        // q(q-1)^4 - 2q(q-1)^2 + q(q-1)
        5 => {
            let sq = &q1 * &q1;
            &q * &sq * &sq + &q * &q1 - BigUint::from(2u32) * &q * &sq
        }
        _ => unreachable!("only the first six counts are seeds"),
    }
}

/// Exact values `I_q(0..=n_max)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    alphabet: Alphabet,
    values: Vec<BigUint>,
}

impl CountTable {
    pub fn new(alphabet: Alphabet, n_max: usize) -> Self {
        let q = alphabet.size();
        let (c1, c2, c3) = (q - 2, q - 3, q - 2);
        let mut values = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let v = if n < RECURRENCE_SEEDS {
                seed_count(q, n)
            } else {
                &values[n - 1] * c1 + &values[n - 2] * c2 + &values[n - 3] * c3
            };
            values.push(v);
        }
        Self { alphabet, values }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.values.get(n)
    }
}

/// `I_q(n)`, the number of irreducible words of length `n`.
pub fn count_irreducible(q: u32, n: usize) -> Result<BigUint> {
    let alphabet = Alphabet::new(q)?;
    Ok(CountTable::new(alphabet, n).values.swap_remove(n))
}

/// `log2` of a big integer from its bit length and top 64 bits.
pub fn log2_biguint(value: &BigUint) -> f64 {
    if value.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = value.bits();
    if bits <= 64 {
        return libm::log2(value.to_u64().unwrap_or(u64::MAX) as f64);
    }
    let shift = bits - 64;
    let top = (value >> shift).to_u64().unwrap_or(u64::MAX);
    shift as f64 + libm::log2(top as f64)
}

/// Lexicographic stream of `Irr_q(n)` by pruned depth-first search.
#[derive(Clone, Debug)]
pub struct IrreducibleWords {
    alphabet: Alphabet,
    n: usize,
    prefix: Vec<Symbol>,
    started: bool,
    done: bool,
}

impl IrreducibleWords {
    /// Advances to the next irreducible word of length `n`, trying symbols
    /// from `candidate` at the current depth.
    fn search(&mut self, mut candidate: u32) -> bool {
        let q = self.alphabet.size();
        loop {
            if candidate >= q {
                match self.prefix.pop() {
                    Some(s) => candidate = u32::from(s) + 1,
                    None => return false,
                }
                continue;
            }
            self.prefix.push(candidate as Symbol);
            if has_forbidden_suffix(&self.prefix) {
                self.prefix.pop();
                candidate += 1;
                continue;
            }
            if self.prefix.len() == self.n {
                return true;
            }
            candidate = 0;
        }
    }
}

impl Iterator for IrreducibleWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let found = if !self.started {
            self.started = true;
            self.n == 0 || self.search(0)
        } else if self.n == 0 {
            false
        } else {
            let last = self.prefix.pop().map_or(0, |s| u32::from(s) + 1);
            self.search(last)
        };
        if found {
            Some(Word::from_trusted(self.prefix.clone(), self.alphabet))
        } else {
            self.done = true;
            None
        }
    }
}

pub fn enumerate_irreducible(q: u32, n: usize) -> Result<IrreducibleWords> {
    Ok(IrreducibleWords {
        alphabet: Alphabet::new(q)?,
        n,
        prefix: Vec::with_capacity(n),
        started: false,
        done: false,
    })
}

/// Deterministic automaton over suffix windows of length ≤ 5 that spells
/// exactly the irreducible words. State 0 is the empty window; a transition
/// on `s` exists iff appending `s` creates no forbidden suffix.
#[derive(Clone, Debug)]
pub struct ConstrainedAutomaton {
    alphabet: Alphabet,
    states: Vec<Vec<Symbol>>,
    /// `transitions[state * q + symbol]`
    transitions: Vec<Option<u32>>,
}

impl ConstrainedAutomaton {
    pub const START: usize = 0;

    pub fn build(q: u32, limits: Limits) -> Result<Self> {
        let alphabet = Alphabet::new(q)?;
        let expected: BigUint = CountTable::new(alphabet, AUTOMATON_WINDOW).values.iter().sum();
        if expected > BigUint::from(limits.max_set_size) {
            return Err(Error::CapExceeded { what: "constraint automaton", cap: limits.max_set_size });
        }
        let q = q as usize;
        let mut index: BTreeMap<Vec<Symbol>, u32> = BTreeMap::new();
        let mut states: Vec<Vec<Symbol>> = vec![Vec::new()];
        index.insert(Vec::new(), 0);
        let mut transitions = Vec::new();
        let mut buf = Vec::with_capacity(AUTOMATON_WINDOW + 1);
        let mut next = 0;
        while next < states.len() {
            for s in alphabet.symbols() {
                buf.clear();
                buf.extend_from_slice(&states[next]);
                buf.push(s);
                if has_forbidden_suffix(&buf) {
                    transitions.push(None);
                    continue;
                }
                let window = buf[buf.len().saturating_sub(AUTOMATON_WINDOW)..].to_vec();
                let id = match index.get(&window) {
                    Some(&id) => id,
                    None => {
                        let id = states.len() as u32;
                        index.insert(window.clone(), id);
                        states.push(window);
                        id
                    }
                };
                transitions.push(Some(id));
            }
            next += 1;
        }
        debug_assert_eq!(transitions.len(), states.len() * q);
        Ok(Self { alphabet, states, transitions })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn window(&self, state: usize) -> &[Symbol] {
        &self.states[state]
    }

    pub fn next_state(&self, state: usize, symbol: Symbol) -> Option<usize> {
        let q = self.alphabet.size() as usize;
        self.transitions[state * q + symbol as usize].map(|s| s as usize)
    }

    fn successors(&self, state: usize) -> impl Iterator<Item = usize> + '_ {
        let q = self.alphabet.size() as usize;
        self.transitions[state * q..(state + 1) * q].iter().filter_map(|t| t.map(|s| s as usize))
    }

    /// Runs the automaton on `symbols`; `None` if the word is reducible.
    pub fn run(&self, symbols: &[Symbol]) -> Option<usize> {
        symbols.iter().try_fold(Self::START, |st, &s| self.next_state(st, s))
    }

    /// Number of length-`n` paths from the start state, for `n = 0..=n_max`.
    pub fn path_counts(&self, n_max: usize) -> Vec<BigUint> {
        let mut level = vec![BigUint::zero(); self.num_states()];
        level[Self::START] = BigUint::one();
        let mut out = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            out.push(level.iter().sum());
            if n == n_max {
                break;
            }
            let mut next = vec![BigUint::zero(); self.num_states()];
            for (st, c) in level.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for to in self.successors(st) {
                    next[to] += c;
                }
            }
            level = next;
        }
        out
    }

    /// `table[r][s]`: irreducible continuations of length `r` from state `s`.
    pub fn completion_counts(&self, r_max: usize) -> Vec<Vec<BigUint>> {
        let mut table = vec![vec![BigUint::one(); self.num_states()]];
        for _ in 0..r_max {
            let prev = table.last().expect("non-empty");
            let row = (0..self.num_states())
                .map(|st| self.successors(st).map(|to| &prev[to]).sum())
                .collect();
            table.push(row);
        }
        table
    }

    /// Spectral radius of the adjacency matrix by power iteration.
    pub fn spectral_radius(&self, tolerance: f64, max_iterations: usize) -> Result<f64> {
        let n = self.num_states();
        let mut v = vec![1.0f64; n];
        let mut next = vec![0.0f64; n];
        let mut norm: f64 = v.iter().sum();
        let mut last = f64::NAN;
        for _ in 0..max_iterations {
            for (st, slot) in next.iter_mut().enumerate() {
                *slot = self.successors(st).map(|to| v[to]).sum();
            }
            let new_norm: f64 = next.iter().sum();
            let lambda = new_norm / norm;
            for (a, b) in v.iter_mut().zip(&next) {
                *a = b / new_norm;
            }
            norm = 1.0;
            if (lambda - last).abs() < tolerance {
                return Ok(lambda);
            }
            last = lambda;
        }
        Err(Error::DidNotConverge { method: "power iteration", last })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthMethod {
    /// `log2(I_q(N) / I_q(N-1))` by normalized floating-point iteration.
    Ratio,
    /// `log2` of the automaton's spectral radius.
    Spectral,
}

/// Default number of recurrence steps for [`GrowthMethod::Ratio`].
pub const RATIO_TERMS: usize = 1000;

/// Estimate of `ι_q` in bits per symbol.
pub fn growth_rate(q: u32, method: GrowthMethod) -> Result<f64> {
    growth_rate_with_limits(q, method, Limits::default())
}

pub fn growth_rate_with_limits(q: u32, method: GrowthMethod, limits: Limits) -> Result<f64> {
    let alphabet = Alphabet::new(q)?;
    match method {
        GrowthMethod::Ratio => ratio_growth(alphabet, RATIO_TERMS).map(libm::log2),
        GrowthMethod::Spectral => ConstrainedAutomaton::build(q, limits)?
            .spectral_radius(TOLERANCES.power_iteration, TOLERANCES.power_iteration_cap)
            .map(libm::log2),
    }
}

/// Limit of `I_q(n) / I_q(n-1)` from `terms` recurrence steps, renormalizing
/// every step to stay in range.
fn ratio_growth(alphabet: Alphabet, terms: usize) -> Result<f64> {
    let q = f64::from(alphabet.size());
    let seeds = CountTable::new(alphabet, RECURRENCE_SEEDS - 1);
    let seeds: Vec<f64> = seeds.values[3..].iter().map(|v| v.to_f64().unwrap_or(f64::MAX)).collect();
    let scale = seeds[2];
    let (mut a, mut b, mut c) = (seeds[0] / scale, seeds[1] / scale, seeds[2] / scale);
    let mut ratio = c / b;
    let mut previous = f64::NAN;
    for _ in RECURRENCE_SEEDS..terms.max(RECURRENCE_SEEDS + 1) {
        let d = (q - 2.0) * c + (q - 3.0) * b + (q - 2.0) * a;
        previous = ratio;
        ratio = d / c;
        (a, b, c) = (b / d, c / d, 1.0);
    }
    if (ratio - previous).abs() <= TOLERANCES.power_iteration * ratio {
        Ok(ratio)
    } else {
        Err(Error::DidNotConverge { method: "ratio iteration", last: ratio })
    }
}

/// Bijection between `Irr_q(n)` and `0..I_q(n)` in lexicographic order.
#[derive(Clone, Debug)]
pub struct IrreducibleRanker {
    automaton: ConstrainedAutomaton,
    n: usize,
    completions: Vec<Vec<BigUint>>,
}

impl IrreducibleRanker {
    pub fn new(q: u32, n: usize, limits: Limits) -> Result<Self> {
        let automaton = ConstrainedAutomaton::build(q, limits)?;
        let completions = automaton.completion_counts(n);
        Ok(Self { automaton, n, completions })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.total().is_zero()
    }

    pub fn total(&self) -> &BigUint {
        &self.completions[self.n][ConstrainedAutomaton::START]
    }

    pub fn unrank(&self, index: &BigUint) -> Option<Word> {
        if index >= self.total() {
            return None;
        }
        let mut index = index.clone();
        let mut state = ConstrainedAutomaton::START;
        let mut symbols = Vec::with_capacity(self.n);
        for remaining in (0..self.n).rev() {
            let mut chosen = None;
            for s in self.automaton.alphabet.symbols() {
                let Some(to) = self.automaton.next_state(state, s) else { continue };
                let block = &self.completions[remaining][to];
                if index < *block {
                    chosen = Some((s, to));
                    break;
                }
                index -= block;
            }
            let (s, to) = chosen?;
            symbols.push(s);
            state = to;
        }
        Some(Word::from_trusted(symbols, self.automaton.alphabet))
    }

    /// `None` unless `word` is an irreducible word of the ranked length.
    pub fn rank(&self, word: &Word) -> Option<BigUint> {
        if word.len() != self.n || word.alphabet() != self.automaton.alphabet {
            return None;
        }
        let mut rank = BigUint::zero();
        let mut state = ConstrainedAutomaton::START;
        for (i, &sym) in word.symbols().iter().enumerate() {
            let remaining = self.n - i - 1;
            for s in 0..sym {
                if let Some(to) = self.automaton.next_state(state, s) {
                    rank += &self.completions[remaining][to];
                }
            }
            state = self.automaton.next_state(state, sym)?;
        }
        Some(rank)
    }
}
