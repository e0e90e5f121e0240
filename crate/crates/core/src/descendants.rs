//! Descendant sets, descendant cones and confusability.
//!
//! Two words are confusable when their descendant cones meet. Words with
//! different duplication roots never are; inside one root's cone this module
//! only semi-decides confusability by exploring cones up to a length bound
//! and reports [`ConfusabilityVerdict::UnknownUpToBound`] when nothing is
//! found.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::mis::maximum_independent_set;
use crate::packed::{ConeKey, Packer, Plain};
use crate::word::{duplication_events, Alphabet, DeduplicationSite, DuplicationEvent, Symbol, Word};
use crate::{Error, Limits, Result};

/// How a member of a [`DescendantSet`] was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    /// The first derivation found in breadth-first order.
    pub trace: Vec<DuplicationEvent>,
    /// Bit `b` is set iff some derivation uses exactly `b` length-3 events.
    length3_counts: u64,
}

impl Derivation {
    pub fn has_length3_count(&self, b: usize) -> bool {
        b < 64 && self.length3_counts >> b & 1 == 1
    }

    pub fn length3_counts(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64).filter(|&b| self.has_length3_count(b))
    }
}

/// `D^t(x)`: every word reachable from `origin` by exactly `t` duplications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendantSet {
    origin: Word,
    t: usize,
    members: BTreeMap<Word, Derivation>,
}

/// Largest `t` for which length-3 counts are tracked.
pub const MAX_LEVELS: usize = 63;

impl DescendantSet {
    pub fn origin(&self) -> &Word {
        &self.origin
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.contains_key(w)
    }

    pub fn derivation(&self, w: &Word) -> Option<&Derivation> {
        self.members.get(w)
    }

    /// Members in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Derivation)> {
        self.members.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.members.keys()
    }

    /// Members sorted by length, then lexicographically.
    pub fn sorted_by_length(&self) -> Vec<&Word> {
        let mut out: Vec<&Word> = self.members.keys().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Members with at least one derivation using exactly `b` length-3
    /// duplications.
    pub fn with_length3_count(&self, b: usize) -> BTreeSet<Word> {
        self.members
            .iter()
            .filter(|(_, d)| d.has_length3_count(b))
            .map(|(w, _)| w.clone())
            .collect()
    }
}

pub fn descendants_t(x: &Word, t: usize, limits: Limits) -> Result<DescendantSet> {
    if t > MAX_LEVELS {
        return Err(Error::OutOfRange { name: "t", value: t as f64 });
    }
    let mut level = BTreeMap::new();
    level.insert(x.clone(), Derivation { trace: Vec::new(), length3_counts: 1 });
    for _ in 0..t {
        let mut next: BTreeMap<Word, Derivation> = BTreeMap::new();
        for (w, d) in &level {
            for e in w.duplication_events() {
                let child = w.duplicate(e)?;
                let counts = if e.k == 3 { d.length3_counts << 1 } else { d.length3_counts };
                match next.get_mut(&child) {
                    Some(existing) => existing.length3_counts |= counts,
                    None => {
                        let mut trace = d.trace.clone();
                        trace.push(e);
                        next.insert(child, Derivation { trace, length3_counts: counts });
                        if next.len() > limits.max_set_size {
                            return Err(Error::CapExceeded {
                                what: "descendant set",
                                cap: limits.max_set_size,
                            });
                        }
                    }
                }
            }
        }
        level = next;
    }
    Ok(DescendantSet { origin: x.clone(), t, members: level })
}

/// Breadth-first exploration of the union of several descendant cones,
/// layer by length. Each reached word carries the bitset of seeds whose cone
/// contains it.
struct Layers<K> {
    layers: Vec<BTreeMap<K, u128>>,
}

impl<K: ConeKey> Layers<K> {
    /// Explores up to `max_len`; `stop` sees each completed layer and may end
    /// the search early.
    fn explore(
        seeds: Vec<(K, u128)>,
        max_len: usize,
        limits: Limits,
        mut stop: impl FnMut(&BTreeMap<K, u128>) -> bool,
    ) -> Result<Self> {
        let mut layers: Vec<BTreeMap<K, u128>> = (0..=max_len).map(|_| BTreeMap::new()).collect();
        let mut stored = 0usize;
        for (key, mask) in seeds {
            if key.key_len() <= max_len {
                let slot = layers[key.key_len()].entry(key).or_insert(0);
                if *slot == 0 {
                    stored += 1;
                }
                *slot |= mask;
            }
        }
        let start = layers.iter().position(|l| !l.is_empty()).unwrap_or(max_len + 1);
        for len in start..=max_len {
            if stop(&layers[len]) {
                layers.truncate(len + 1);
                break;
            }
            let (done, rest) = layers.split_at_mut(len + 1);
            for (key, &mask) in &done[len] {
                for e in duplication_events(len) {
                    let child_len = len + e.k;
                    if child_len > max_len {
                        continue;
                    }
                    let slot = rest[child_len - len - 1].entry(key.duplicated(e.j, e.k)).or_insert(0);
                    if *slot == 0 {
                        stored += 1;
                        if stored > limits.max_set_size {
                            return Err(Error::CapExceeded {
                                what: "descendant cone",
                                cap: limits.max_set_size,
                            });
                        }
                    }
                    *slot |= mask;
                }
            }
        }
        Ok(Self { layers })
    }
}

enum Keyed {
    Packed(Packer),
    Plain,
}

impl Keyed {
    fn for_search(alphabet: Alphabet, max_len: usize) -> Self {
        Packer::new(alphabet, max_len).map_or(Keyed::Plain, Keyed::Packed)
    }
}

/// Words of one length with the seeds reaching them.
type MaskedLayer = Vec<(Vec<Symbol>, u128)>;

/// Runs [`Layers::explore`] with the most compact key type available and
/// hands back every reached word as symbols with its mask. `stop` receives a
/// lookup of the current layer's words carrying exactly a given mask.
fn explore_words(
    alphabet: Alphabet,
    seeds: &[(&[Symbol], u128)],
    max_len: usize,
    limits: Limits,
    stop: impl FnMut(&dyn Fn(u128) -> Vec<Vec<Symbol>>) -> bool,
) -> Result<Vec<MaskedLayer>> {
    fn run<K: ConeKey>(
        seeds: Vec<(K, u128)>,
        max_len: usize,
        limits: Limits,
        decode: impl Fn(&K) -> Vec<Symbol>,
        mut stop: impl FnMut(&dyn Fn(u128) -> Vec<Vec<Symbol>>) -> bool,
    ) -> Result<Vec<MaskedLayer>> {
        let layers = Layers::explore(seeds, max_len, limits, |layer| {
            stop(&|mask| layer.iter().filter(|(_, &m)| m == mask).map(|(k, _)| decode(k)).collect())
        })?;
        Ok(layers
            .layers
            .into_iter()
            .map(|l| l.into_iter().map(|(k, m)| (decode(&k), m)).collect())
            .collect())
    }
    match Keyed::for_search(alphabet, max_len) {
        Keyed::Packed(p) => {
            let seeds = seeds.iter().map(|&(s, m)| (p.pack(s), m)).collect();
            run(seeds, max_len, limits, |k| k.symbols(), stop)
        }
        Keyed::Plain => {
            let seeds = seeds.iter().map(|&(s, m)| (Plain(s.to_vec()), m)).collect();
            run(seeds, max_len, limits, |k| k.0.clone(), stop)
        }
    }
}

/// Adjacency bitsets of the "share a descendant of length ≤ max_len" graph.
fn shared_descendant_graph(
    alphabet: Alphabet,
    seeds: &[(&[Symbol], u128)],
    n: usize,
    max_len: usize,
    limits: Limits,
) -> Result<Vec<u128>> {
    fn collect<K: ConeKey>(
        seeds: Vec<(K, u128)>,
        n: usize,
        max_len: usize,
        limits: Limits,
    ) -> Result<Vec<u128>> {
        let layers = Layers::explore(seeds, max_len, limits, |_| false)?;
        let masks: BTreeSet<u128> =
            layers.layers.iter().flat_map(|l| l.values().copied()).filter(|m| m.count_ones() > 1).collect();
        let mut adj = alloc::vec![0u128; n];
        for m in masks {
            let mut rest = m;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                adj[v] |= m & !(1u128 << v);
            }
        }
        Ok(adj)
    }
    match Keyed::for_search(alphabet, max_len) {
        Keyed::Packed(p) => collect(seeds.iter().map(|&(s, m)| (p.pack(s), m)).collect(), n, max_len, limits),
        Keyed::Plain => collect(seeds.iter().map(|&(s, m)| (Plain(s.to_vec()), m)).collect(), n, max_len, limits),
    }
}

/// `D^*(x)` restricted to words of length at most `max_len`.
pub fn descendant_cone(x: &Word, max_len: usize, limits: Limits) -> Result<BTreeSet<Word>> {
    if max_len < x.len() {
        return Err(Error::OutOfRange { name: "max_len", value: max_len as f64 });
    }
    let layers = explore_words(x.alphabet(), &[(x.symbols(), 1)], max_len, limits, |_| false)?;
    Ok(layers
        .into_iter()
        .flatten()
        .map(|(s, _)| Word::from_trusted(s, x.alphabet()))
        .collect())
}

/// Decides `y ∈ D^*(x)` exactly by de-duplicating `y` breadth first. On
/// success returns a shortest event sequence turning `x` into `y`.
pub fn is_descendant(y: &Word, x: &Word, limits: Limits) -> Result<Option<Vec<DuplicationEvent>>> {
    if y.alphabet() != x.alphabet() {
        return Err(Error::AlphabetMismatch { left: y.alphabet().size(), right: x.alphabet().size() });
    }
    if y.len() < x.len() || y.root() != x.root() {
        return Ok(None);
    }
    let target = x.symbols();
    // ancestor -> (its child one step closer to y, site removed from the child)
    let mut parent: BTreeMap<Vec<Symbol>, (Vec<Symbol>, DeduplicationSite)> = BTreeMap::new();
    let mut frontier: Vec<Vec<Symbol>> = alloc::vec![y.symbols().to_vec()];
    let mut found = y.symbols() == target;
    while !found && !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for site in Word::from_trusted(w.clone(), y.alphabet()).deduplication_sites() {
                if w.len() - site.k < target.len() {
                    continue;
                }
                let mut a = w.clone();
                a.drain(site.j..site.j + site.k);
                if parent.contains_key(&a) {
                    continue;
                }
                parent.insert(a.clone(), (w.clone(), site));
                if parent.len() > limits.max_set_size {
                    return Err(Error::CapExceeded { what: "ancestor search", cap: limits.max_set_size });
                }
                if a == target {
                    found = true;
                }
                next.push(a);
            }
            if found {
                break;
            }
        }
        frontier = next;
    }
    if !found {
        return Ok(None);
    }
    let mut trace = Vec::new();
    let mut cur = target.to_vec();
    while let Some((child, site)) = parent.get(&cur) {
        trace.push(site.as_event());
        cur = child.clone();
    }
    Ok(Some(trace))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfusabilityVerdict {
    /// The roots differ, so the cones are disjoint.
    NonConfusableDistinctRoots { root_x: Word, root_y: Word },
    /// `witness` descends from both words via the given traces.
    ConfusableWitness {
        witness: Word,
        trace_x: Vec<DuplicationEvent>,
        trace_y: Vec<DuplicationEvent>,
    },
    /// Same root, but no common descendant of length at most `max_len`.
    UnknownUpToBound { max_len: usize },
}

impl ConfusabilityVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::NonConfusableDistinctRoots { .. } => "NonConfusableDistinctRoots",
            Self::ConfusableWitness { .. } => "ConfusableWitness",
            Self::UnknownUpToBound { .. } => "UnknownUpToBound",
        }
    }

    pub fn is_confusable(&self) -> bool {
        matches!(self, Self::ConfusableWitness { .. })
    }
}

/// Default search bound for [`confusable`].
pub fn default_max_len(x: &Word, y: &Word) -> usize {
    x.len() + y.len() + 6
}

/// Exact when the roots differ; otherwise searches for a shortest common
/// descendant (lexicographically least among the shortest) up to `max_len`.
pub fn confusable(x: &Word, y: &Word, max_len: usize, limits: Limits) -> Result<ConfusabilityVerdict> {
    if x.alphabet() != y.alphabet() {
        return Err(Error::AlphabetMismatch { left: x.alphabet().size(), right: y.alphabet().size() });
    }
    let (root_x, root_y) = (x.root(), y.root());
    if root_x != root_y {
        return Ok(ConfusabilityVerdict::NonConfusableDistinctRoots { root_x, root_y });
    }
    let mut witness: Option<Vec<Symbol>> = None;
    explore_words(x.alphabet(), &[(x.symbols(), 0b01), (y.symbols(), 0b10)], max_len, limits, |layer| {
        witness = layer(0b11).into_iter().min();
        witness.is_some()
    })?;
    let Some(witness) = witness else {
        return Ok(ConfusabilityVerdict::UnknownUpToBound { max_len });
    };
    let witness = Word::from_trusted(witness, x.alphabet());
    let trace_x = is_descendant(&witness, x, limits)?.expect("witness lies in the cone of x");
    let trace_y = is_descendant(&witness, y, limits)?.expect("witness lies in the cone of y");
    Ok(ConfusabilityVerdict::ConfusableWitness { witness, trace_x, trace_y })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DuplicationPairClass {
    /// One event copies a segment `abc` of pairwise distinct symbols whole,
    /// the other copies its middle symbol.
    TypeIVersusTypeII,
    /// The children imitate each other; `certificate` is a common
    /// descendant reached within `depth` further duplications of each.
    Imitable { certificate: Word, depth: usize },
}

/// Deepest imitation search in [`classify_sibling_pair`].
pub const MAX_IMITATION_DEPTH: usize = 3;

pub fn classify_sibling_pair(
    parent: &Word,
    e1: DuplicationEvent,
    e2: DuplicationEvent,
    limits: Limits,
) -> Result<DuplicationPairClass> {
    let c1 = parent.duplicate(e1)?;
    let c2 = parent.duplicate(e2)?;
    if is_type_pair(parent, e1, e2) || is_type_pair(parent, e2, e1) {
        return Ok(DuplicationPairClass::TypeIVersusTypeII);
    }
    let mut reach1: BTreeSet<Word> = BTreeSet::from([c1.clone()]);
    let mut reach2: BTreeSet<Word> = BTreeSet::from([c2.clone()]);
    let (mut front1, mut front2) = (reach1.clone(), reach2.clone());
    for depth in 1..=MAX_IMITATION_DEPTH {
        front1 = expand(&front1, &mut reach1, limits)?;
        front2 = expand(&front2, &mut reach2, limits)?;
        let certificate = reach1
            .intersection(&reach2)
            .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        if let Some(c) = certificate {
            return Ok(DuplicationPairClass::Imitable { certificate: c.clone(), depth });
        }
    }
    Err(Error::NoImitationCertificate { depth: MAX_IMITATION_DEPTH })
}

fn is_type_pair(parent: &Word, whole: DuplicationEvent, middle: DuplicationEvent) -> bool {
    if whole.k != 3 || middle.k != 1 || middle.j + 1 != whole.j {
        return false;
    }
    let s = &parent.symbols()[whole.j - 3..whole.j];
    s[0] != s[1] && s[1] != s[2] && s[0] != s[2]
}

fn expand(front: &BTreeSet<Word>, reach: &mut BTreeSet<Word>, limits: Limits) -> Result<BTreeSet<Word>> {
    let mut next = BTreeSet::new();
    for w in front {
        for e in w.duplication_events() {
            let child = w.duplicate(e)?;
            if reach.insert(child.clone()) {
                next.insert(child);
            }
        }
        if reach.len() > limits.max_set_size {
            return Err(Error::CapExceeded { what: "imitation search", cap: limits.max_set_size });
        }
    }
    Ok(next)
}

/// Largest number of words [`max_nonconfusable_subset`] accepts.
pub const MAX_SUBSET_INPUT: usize = 128;

/// Largest subset with no two words sharing a descendant of length at most
/// `max_len`, by exact branch and bound. Pairs left undecided by the bound
/// count as non-confusable.
pub fn max_nonconfusable_subset(
    words: &BTreeSet<Word>,
    max_len: usize,
    limits: Limits,
) -> Result<BTreeSet<Word>> {
    if words.len() > MAX_SUBSET_INPUT {
        return Err(Error::TooManyWords {
            what: "candidate set",
            count: words.len(),
            max: MAX_SUBSET_INPUT,
        });
    }
    let list: Vec<&Word> = words.iter().collect();
    let Some(first) = list.first() else { return Ok(BTreeSet::new()) };
    let alphabet = first.alphabet();
    if let Some(w) = list.iter().find(|w| w.alphabet() != alphabet) {
        return Err(Error::AlphabetMismatch { left: alphabet.size(), right: w.alphabet().size() });
    }
    let adj = confusability_graph(&list, max_len, limits)?;
    let chosen = maximum_independent_set(&adj);
    Ok((0..list.len()).filter(|&i| chosen >> i & 1 == 1).map(|i| list[i].clone()).collect())
}

/// Adjacency rows for `words`; one cone exploration per distinct root.
fn confusability_graph(words: &[&Word], max_len: usize, limits: Limits) -> Result<Vec<u128>> {
    let mut by_root: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
    for (i, w) in words.iter().enumerate() {
        by_root.entry(w.root()).or_default().push(i);
    }
    let mut adj = alloc::vec![0u128; words.len()];
    for members in by_root.values().filter(|m| m.len() > 1) {
        let seeds: Vec<(&[Symbol], u128)> =
            members.iter().enumerate().map(|(local, &i)| (words[i].symbols(), 1u128 << local)).collect();
        let local = shared_descendant_graph(words[0].alphabet(), &seeds, members.len(), max_len, limits)?;
        for (a, &row) in local.iter().enumerate() {
            for (b, &j) in members.iter().enumerate() {
                if row >> b & 1 == 1 {
                    adj[members[a]] |= 1u128 << j;
                }
            }
        }
    }
    Ok(adj)
}

/// Desk-scale check of the bound on zero-error codes inside `D^t(x)`:
/// at most `2^t` codewords, or `C(t, b)` when exactly `b` of the `t`
/// duplications have length 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma2Report {
    pub origin: Word,
    pub t: usize,
    pub b: Option<usize>,
    pub max_len: usize,
    pub candidates: usize,
    pub subset: BTreeSet<Word>,
    pub bound: BigUint,
    pub holds: bool,
}

pub fn lemma2_check(
    x: &Word,
    t: usize,
    b: Option<usize>,
    max_len: usize,
    limits: Limits,
) -> Result<Lemma2Report> {
    let set = descendants_t(x, t, limits)?;
    let (candidates, bound) = match b {
        None => (set.words().cloned().collect::<BTreeSet<_>>(), BigUint::from(1u32) << t),
        Some(b) => (set.with_length3_count(b), binomial(t, b)),
    };
    let subset = max_nonconfusable_subset(&candidates, max_len, limits)?;
    let holds = BigUint::from(subset.len()) <= bound;
    Ok(Lemma2Report { origin: x.clone(), t, b, max_len, candidates: candidates.len(), subset, bound, holds })
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn alphabet(q: u32) -> Alphabet {
        Alphabet::new(q).unwrap()
    }

    fn w(text: &str) -> Word {
        Word::parse(text, alphabet(3)).unwrap()
    }

    fn set(texts: &[&str]) -> BTreeSet<Word> {
        texts.iter().map(|t| w(t)).collect()
    }

    /// Naive cone: repeated one-step expansion with owned words.
    fn naive_cone(x: &Word, max_len: usize) -> BTreeSet<Word> {
        let mut seen = BTreeSet::from([x.clone()]);
        let mut front = vec![x.clone()];
        while let Some(cur) = front.pop() {
            for e in cur.duplication_events() {
                let c = cur.duplicate(e).unwrap();
                if c.len() <= max_len && seen.insert(c.clone()) {
                    front.push(c);
                }
            }
        }
        seen
    }

    #[test]
    fn descendant_set_examples() {
        let lim = Limits::default();
        let d0 = descendants_t(&w("012"), 0, lim).unwrap();
        assert_eq!(d0.words().cloned().collect::<BTreeSet<_>>(), set(&["012"]));
        let d1 = descendants_t(&w("012"), 1, lim).unwrap();
        assert_eq!(
            d1.words().cloned().collect::<BTreeSet<_>>(),
            set(&["0012", "0112", "01012", "0122", "01212", "012012"])
        );
        assert!(descendants_t(&w("011"), 1, lim).unwrap().contains(&w("01111")));
        let d2 = descendants_t(&w("011"), 2, lim).unwrap();
        assert!(d2.contains(&w("01111")));
    }

    #[test]
    fn descendant_set_invariants() {
        let x = w("0120");
        let root = x.root();
        for t in 0..=3 {
            let d = descendants_t(&x, t, Limits::default()).unwrap();
            for (y, der) in d.iter() {
                assert!(y.len() >= x.len() + t && y.len() <= x.len() + 3 * t);
                assert_eq!(y.root(), root);
                let mut cur = x.clone();
                for &e in &der.trace {
                    cur = cur.duplicate(e).unwrap();
                }
                assert_eq!(&cur, y);
                assert_eq!(der.trace.len(), t);
                for b in der.length3_counts() {
                    assert!(y.len() >= x.len() + t + 2 * b);
                }
            }
        }
    }

    #[test]
    fn descendant_set_cap() {
        let err = descendants_t(&w("0120"), 3, Limits::new(20)).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 20, .. }));
    }

    #[test]
    fn cone_examples() {
        let lim = Limits::default();
        assert_eq!(descendant_cone(&w("012"), 3, lim).unwrap(), set(&["012"]));
        assert_eq!(descendant_cone(&w("012"), 4, lim).unwrap(), set(&["012", "0012", "0112", "0122"]));
        let cone = descendant_cone(&w("012"), 9, lim).unwrap();
        assert!(cone.iter().all(|y| y.root() == w("012")));
        assert_eq!(cone, naive_cone(&w("012"), 9));
        assert!(descendant_cone(&w("012"), 2, lim).is_err());
    }

    #[test]
    fn cone_plain_keys_match_packed() {
        // q = 2^16 needs 16 bits per symbol, so length 9 falls back to vectors.
        let big = alphabet(65536);
        let x = Word::parse("0,65535,7", big).unwrap();
        let cone = descendant_cone(&x, 9, Limits::default()).unwrap();
        assert_eq!(cone, naive_cone(&x, 9));
    }

    #[test]
    fn descendant_test_examples() {
        let lim = Limits::default();
        let trace = is_descendant(&w("0011112022021210"), &w("01120210"), lim).unwrap().unwrap();
        let mut cur = w("01120210");
        for e in trace {
            cur = cur.duplicate(e).unwrap();
        }
        assert_eq!(cur, w("0011112022021210"));
        assert_eq!(is_descendant(&w("012"), &w("0012"), lim).unwrap(), None);
        assert!(is_descendant(&w("01120120"), &w("01120"), lim).unwrap().is_some());
        assert_eq!(is_descendant(&w("0121"), &w("012"), lim).unwrap(), None);
        let x = w("012");
        assert_eq!(is_descendant(&x, &x, lim).unwrap(), Some(vec![]));
    }

    #[test]
    fn descendant_test_agrees_with_cone() {
        let x = w("0120");
        let cone = naive_cone(&x, 9);
        for len in 4..=8 {
            for code in 0..3u32.pow(len) {
                let mut c = code;
                let symbols: Vec<Symbol> = (0..len).map(|_| { let s = (c % 3) as Symbol; c /= 3; s }).collect();
                let y = Word::new(symbols, alphabet(3)).unwrap();
                let got = is_descendant(&y, &x, Limits::default()).unwrap().is_some();
                assert_eq!(got, cone.contains(&y), "{y}");
            }
        }
    }

    #[test]
    fn confusability_examples() {
        let lim = Limits::default();
        let v = confusable(&w("012012"), &w("0112"), 14, lim).unwrap();
        assert_eq!(v, ConfusabilityVerdict::UnknownUpToBound { max_len: 14 });
        match confusable(&w("0120120"), &w("01120"), 12, lim).unwrap() {
            ConfusabilityVerdict::ConfusableWitness { witness, trace_x, trace_y } => {
                assert_eq!(witness, w("01120120"));
                assert_eq!(trace_x.len(), 1);
                assert_eq!(trace_y.len(), 1);
            }
            other => panic!("{other:?}"),
        }
        let v = confusable(&w("0120"), &w("0112"), 10, lim).unwrap();
        assert_eq!(v.kind(), "NonConfusableDistinctRoots");
        let v = confusable(&w("012"), &w("0012"), 13, lim).unwrap();
        assert!(matches!(v, ConfusabilityVerdict::ConfusableWitness { ref witness, .. } if *witness == w("0012")));
        let other = Word::parse("012", alphabet(4)).unwrap();
        assert!(confusable(&w("012"), &other, 10, lim).is_err());
    }

    #[test]
    fn witness_is_shortest_then_least() {
        let (x, y) = (w("0120120"), w("01120"));
        let common: BTreeSet<Word> = naive_cone(&x, 10).intersection(&naive_cone(&y, 10)).cloned().collect();
        let best = common.iter().min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b))).unwrap();
        match confusable(&x, &y, 10, Limits::default()).unwrap() {
            ConfusabilityVerdict::ConfusableWitness { witness, .. } => assert_eq!(&witness, best),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sibling_pair_examples() {
        let lim = Limits::default();
        let (whole, middle) = (DuplicationEvent::new(3, 3), DuplicationEvent::new(2, 1));
        assert_eq!(classify_sibling_pair(&w("012"), whole, middle, lim).unwrap(), DuplicationPairClass::TypeIVersusTypeII);
        assert_eq!(classify_sibling_pair(&w("012"), middle, whole, lim).unwrap(), DuplicationPairClass::TypeIVersusTypeII);
        assert_eq!(classify_sibling_pair(&w("0120"), whole, middle, lim).unwrap(), DuplicationPairClass::TypeIVersusTypeII);
        // Same shape in the class sense, yet the children share a descendant.
        let c1 = w("0120").duplicate(whole).unwrap();
        let c2 = w("0120").duplicate(middle).unwrap();
        assert!(confusable(&c1, &c2, 12, lim).unwrap().is_confusable());

        let five = Word::parse("01234", alphabet(5)).unwrap();
        let class = classify_sibling_pair(&five, DuplicationEvent::new(1, 1), DuplicationEvent::new(5, 1), lim).unwrap();
        assert_eq!(
            class,
            DuplicationPairClass::Imitable { certificate: Word::parse("0012344", alphabet(5)).unwrap(), depth: 1 }
        );
        assert!(classify_sibling_pair(&w("012"), DuplicationEvent::new(4, 1), middle, lim).is_err());
    }

    #[test]
    fn aba_segments_are_imitable_in_two_steps() {
        let lim = Limits::default();
        let class = classify_sibling_pair(&w("010"), DuplicationEvent::new(2, 1), DuplicationEvent::new(3, 3), lim).unwrap();
        assert!(matches!(class, DuplicationPairClass::Imitable { depth: 2, .. }));
    }

    #[test]
    fn every_non_exception_pair_has_a_certificate() {
        let lim = Limits::default();
        for len in 1..=5u32 {
            for code in 0..3u32.pow(len) {
                let mut c = code;
                let symbols: Vec<Symbol> = (0..len).map(|_| { let s = (c % 3) as Symbol; c /= 3; s }).collect();
                let parent = Word::new(symbols, alphabet(3)).unwrap();
                let events: Vec<_> = parent.duplication_events().collect();
                for (i, &e1) in events.iter().enumerate() {
                    for &e2 in &events[i..] {
                        if let DuplicationPairClass::Imitable { certificate, .. } =
                            classify_sibling_pair(&parent, e1, e2, lim).unwrap()
                        {
                            let c1 = parent.duplicate(e1).unwrap();
                            let c2 = parent.duplicate(e2).unwrap();
                            assert!(is_descendant(&certificate, &c1, lim).unwrap().is_some());
                            assert!(is_descendant(&certificate, &c2, lim).unwrap().is_some());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn subset_examples() {
        let lim = Limits::default();
        let single = set(&["0120"]);
        assert_eq!(max_nonconfusable_subset(&single, 10, lim).unwrap(), single);
        assert!(max_nonconfusable_subset(&BTreeSet::new(), 10, lim).unwrap().is_empty());
        let d1: BTreeSet<Word> = descendants_t(&w("012"), 1, lim).unwrap().words().cloned().collect();
        let subset = max_nonconfusable_subset(&d1, 14, lim).unwrap();
        assert!(subset.len() <= 2);
        // Different roots are never confusable.
        let mixed = set(&["012", "021", "0120", "0112"]);
        let subset = max_nonconfusable_subset(&mixed, 10, lim).unwrap();
        assert_eq!(subset.len(), 3);
        assert!(subset.contains(&w("021")) && subset.contains(&w("0120")));
    }

    #[test]
    fn subset_graph_matches_pairwise_verdicts() {
        let lim = Limits::default();
        let d1: Vec<Word> = descendants_t(&w("0120"), 1, lim).unwrap().words().cloned().collect();
        let refs: Vec<&Word> = d1.iter().collect();
        let adj = confusability_graph(&refs, 11, lim).unwrap();
        for (a, x) in d1.iter().enumerate() {
            for (b, y) in d1.iter().enumerate().skip(a + 1) {
                let pair = confusable(x, y, 11, lim).unwrap().is_confusable();
                assert_eq!(adj[a] >> b & 1 == 1, pair, "{x} {y}");
            }
        }
    }

    #[test]
    fn descendant_subset_bounds_small() {
        let lim = Limits::default();
        let r = lemma2_check(&w("012"), 1, None, 12, lim).unwrap();
        assert!(r.holds && r.subset.len() <= 2);
        let r = lemma2_check(&w("012"), 2, Some(1), 15, lim).unwrap();
        assert!(r.holds && r.subset.len() <= 2);
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(2, 3), BigUint::from(0u32));
    }
}
