//! Serializable records for the JSON and CSV outputs.
//!
//! Words are stored in the shared textual format, big counts as decimal
//! strings. Every record deserializes back to an equal value.

use serde::{Deserialize, Serialize};
use tandem_core::capacity::{CapacityResult, Lemma1Report, TOLERANCES};
use tandem_core::code::{EndToEndReport, RateReport, SimulationTrace, ZeroErrorReport};
use tandem_core::descendants::{ConfusabilityVerdict, DuplicationPairClass, Lemma2Report};
use tandem_core::DuplicationEvent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventRecord {
    pub j: usize,
    pub k: usize,
}

impl From<DuplicationEvent> for EventRecord {
    fn from(e: DuplicationEvent) -> Self {
        Self { j: e.j, k: e.k }
    }
}

impl From<EventRecord> for DuplicationEvent {
    fn from(e: EventRecord) -> Self {
        DuplicationEvent::new(e.j, e.k)
    }
}

fn events(list: &[DuplicationEvent]) -> Vec<EventRecord> {
    list.iter().copied().map(EventRecord::from).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// `|r³ - (q-2)r² - (q-3)r - (q-2)|`.
    pub polynomial: f64,
    /// `|(1 - β̄)³ - β̄|`.
    pub beta_bar: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityRecord {
    pub q: u32,
    pub r: f64,
    pub iota: f64,
    pub beta_bar: f64,
    pub residuals: Residuals,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

impl CapacityRecord {
    pub fn new(c: &CapacityResult, beta_bar: f64) -> Self {
        let y = 1.0 - beta_bar;
        Self {
            q: c.q,
            r: c.r,
            iota: c.iota,
            beta_bar,
            residuals: Residuals { polynomial: c.residual(), beta_bar: (y * y * y - beta_bar).abs() },
            spectral: None,
            ratio: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_x: Option<Vec<EventRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_y: Option<Vec<EventRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_y: Option<String>,
}

impl From<&ConfusabilityVerdict> for VerdictRecord {
    fn from(v: &ConfusabilityVerdict) -> Self {
        let mut r = Self {
            kind: v.kind().into(),
            witness: None,
            trace_x: None,
            trace_y: None,
            bound: None,
            root_x: None,
            root_y: None,
        };
        match v {
            ConfusabilityVerdict::NonConfusableDistinctRoots { root_x, root_y } => {
                r.root_x = Some(root_x.to_text());
                r.root_y = Some(root_y.to_text());
            }
            ConfusabilityVerdict::ConfusableWitness { witness, trace_x, trace_y } => {
                r.witness = Some(witness.to_text());
                r.trace_x = Some(events(trace_x));
                r.trace_y = Some(events(trace_y));
            }
            ConfusabilityVerdict::UnknownUpToBound { max_len } => r.bound = Some(*max_len),
        }
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairClassRecord {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

impl From<&DuplicationPairClass> for PairClassRecord {
    fn from(c: &DuplicationPairClass) -> Self {
        match c {
            DuplicationPairClass::TypeIVersusTypeII => {
                Self { kind: "TypeIVersusTypeII".into(), certificate: None, depth: None }
            }
            DuplicationPairClass::Imitable { certificate, depth } => Self {
                kind: "Imitable".into(),
                certificate: Some(certificate.to_text()),
                depth: Some(*depth),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub input: String,
    pub events: Vec<EventRecord>,
    pub output: String,
    pub seed: u64,
    pub stream: u64,
    pub generator: String,
    pub length3_events: usize,
    pub length_accounting: bool,
}

impl From<&SimulationTrace> for TraceRecord {
    fn from(t: &SimulationTrace) -> Self {
        Self {
            input: t.input.to_text(),
            events: events(&t.events),
            output: t.output.to_text(),
            seed: t.seed,
            stream: t.stream,
            generator: t.generator.into(),
            length3_events: t.length3_events(),
            length_accounting: tandem_core::code::length_accounting_holds(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EndToEndRecord {
    pub q: u32,
    pub n: usize,
    pub t_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub successes: usize,
    pub success_fraction: f64,
    pub total_duplications: usize,
    pub length_violations: usize,
    pub failures: Vec<TraceRecord>,
}

impl From<&EndToEndReport> for EndToEndRecord {
    fn from(r: &EndToEndReport) -> Self {
        Self {
            q: r.params.q,
            n: r.params.n,
            t_max: r.params.t_max,
            trials: r.params.trials,
            seed: r.params.seed,
            successes: r.successes,
            success_fraction: r.success_fraction(),
            total_duplications: r.total_duplications,
            length_violations: r.length_violations,
            failures: r.failures.iter().map(TraceRecord::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub x: String,
    pub y: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroErrorRecord {
    pub size: usize,
    pub n: usize,
    pub max_len: usize,
    pub pairs: u64,
    pub distinct_roots: u64,
    pub unknown: u64,
    pub witnesses: Vec<WitnessRecord>,
    pub zero_error: bool,
}

impl ZeroErrorRecord {
    pub fn new(size: usize, n: usize, max_len: usize, r: &ZeroErrorReport) -> Self {
        Self {
            size,
            n,
            max_len,
            pairs: r.pairs,
            distinct_roots: r.distinct_roots,
            unknown: r.unknown,
            witnesses: r
                .witnesses
                .iter()
                .map(|p| WitnessRecord { x: p.x.to_text(), y: p.y.to_text(), witness: p.witness.to_text() })
                .collect(),
            zero_error: r.is_zero_error(),
        }
    }
}

/// One CSV row of `rate-table`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateRow {
    pub n: usize,
    pub count: String,
    pub rate: f64,
    pub capacity_gap: f64,
}

impl From<&RateReport> for RateRow {
    fn from(r: &RateReport) -> Self {
        Self { n: r.n, count: r.size.to_string(), rate: r.rate, capacity_gap: r.capacity_gap }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Record {
    pub q: u32,
    pub grid_size: usize,
    pub iota: f64,
    pub beta_bar: f64,
    pub max_value: f64,
    pub argmax: f64,
    pub min_slack: f64,
    pub bound_holds: bool,
    pub tight: Option<bool>,
    pub argmax_near_beta_bar: Option<bool>,
    pub pass: bool,
    pub slack_tolerance: f64,
}

impl From<&Lemma1Report> for Lemma1Record {
    fn from(r: &Lemma1Report) -> Self {
        Self {
            q: r.q,
            grid_size: r.grid_size,
            iota: r.iota,
            beta_bar: r.beta_bar,
            max_value: r.max_value,
            argmax: r.argmax,
            min_slack: r.min_slack,
            bound_holds: r.bound_holds,
            tight: r.tight,
            argmax_near_beta_bar: r.argmax_near_beta_bar,
            pass: r.pass,
            slack_tolerance: TOLERANCES.entropy_bound_slack,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma2Record {
    pub origin: String,
    pub t: usize,
    pub b: Option<usize>,
    pub max_len: usize,
    pub candidates: usize,
    pub subset: Vec<String>,
    pub bound: String,
    pub holds: bool,
}

impl From<&Lemma2Report> for Lemma2Record {
    fn from(r: &Lemma2Report) -> Self {
        Self {
            origin: r.origin.to_text(),
            t: r.t,
            b: r.b,
            max_len: r.max_len,
            candidates: r.candidates,
            subset: r.subset.iter().map(|w| w.to_text()).collect(),
            bound: r.bound.to_string(),
            holds: r.holds,
        }
    }
}

/// A descendant with one derivation from the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescendantRecord {
    pub word: String,
    pub trace: Vec<EventRecord>,
}

impl DescendantRecord {
    pub fn new(word: &tandem_core::Word, trace: &[DuplicationEvent]) -> Self {
        Self { word: word.to_text(), trace: events(trace) }
    }
}
