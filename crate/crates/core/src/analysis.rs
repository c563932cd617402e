//! Evaluation breakdowns over gold records joined with model predictions.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::Serialize;

use crate::lexicon::{Gender, Government};
use crate::patterns::{classify_number, NumberClass, Pattern};
use crate::record::{HeadKind, HypKind, Label, PairRecord};

#[derive(Debug, Clone, PartialEq)]
pub enum AnalysisError {
    MissingPrediction { id: String },
    RaggedRuns { id: String, expected: usize, found: usize },
    RunOutOfRange { id: String, run: usize, runs: usize },
    DuplicatePrediction { id: String, run: usize },
    Tie { id: String },
    NoRuns,
    EmptySample,
    InvalidCounts,
    MissingScore { id: String },
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::MissingPrediction { id } => write!(f, "no prediction for {id}"),
            AnalysisError::RaggedRuns { id, expected, found } => {
                write!(f, "{id}: {found} runs, expected {expected}")
            }
            AnalysisError::RunOutOfRange { id, run, runs } => write!(f, "{id}: run {run} not below {runs}"),
            AnalysisError::DuplicatePrediction { id, run } => write!(f, "{id}: run {run} given twice"),
            AnalysisError::Tie { id } => write!(f, "{id}: vote tied and no tie-break policy set"),
            AnalysisError::NoRuns => f.write_str("run count must be at least 1"),
            AnalysisError::EmptySample => f.write_str("sample size must be at least 1"),
            AnalysisError::InvalidCounts => f.write_str("successes exceed sample size"),
            AnalysisError::MissingScore { id } => write!(f, "no score for sentence {id}"),
        }
    }
}

impl core::error::Error for AnalysisError {}

/// Predicted labels per pair id, one per run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictionSet {
    runs: usize,
    labels: BTreeMap<String, Vec<Option<Label>>>,
}

impl PredictionSet {
    pub fn new(runs: usize) -> Result<Self, AnalysisError> {
        if runs == 0 {
            return Err(AnalysisError::NoRuns);
        }
        Ok(PredictionSet { runs, labels: BTreeMap::new() })
    }

    /// Builds a set from complete label lists.
    pub fn from_lists<I, S>(runs: usize, lists: I) -> Result<Self, AnalysisError>
    where
        I: IntoIterator<Item = (S, Vec<Label>)>,
        S: Into<String>,
    {
        let mut set = PredictionSet::new(runs)?;
        for (id, labels) in lists {
            let id = id.into();
            if labels.len() != runs {
                return Err(AnalysisError::RaggedRuns { id, expected: runs, found: labels.len() });
            }
            for (run, label) in labels.into_iter().enumerate() {
                set.insert(&id, run, label)?;
            }
        }
        Ok(set)
    }

    pub fn insert(&mut self, id: &str, run: usize, label: Label) -> Result<(), AnalysisError> {
        if run >= self.runs {
            return Err(AnalysisError::RunOutOfRange { id: id.to_string(), run, runs: self.runs });
        }
        let slots = self.labels.entry(id.to_string()).or_insert_with(|| alloc::vec![None; self.runs]);
        if slots[run].replace(label).is_some() {
            return Err(AnalysisError::DuplicatePrediction { id: id.to_string(), run });
        }
        Ok(())
    }

    /// Fails unless every id has a label for every run.
    pub fn check_complete(&self) -> Result<(), AnalysisError> {
        for (id, slots) in &self.labels {
            let found = slots.iter().filter(|s| s.is_some()).count();
            if found != self.runs {
                return Err(AnalysisError::RaggedRuns { id: id.clone(), expected: self.runs, found });
            }
        }
        Ok(())
    }

    pub fn runs(&self) -> usize {
        self.runs
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.labels.keys().map(String::as_str)
    }

    /// All runs for `id`, if complete.
    pub fn get(&self, id: &str) -> Option<Vec<Label>> {
        self.labels.get(id)?.iter().copied().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TiePolicy {
    #[default]
    Error,
    NotEntailedWins,
}

/// Collapses the runs into one by majority.
pub fn majority_vote(preds: &PredictionSet, tie: TiePolicy) -> Result<PredictionSet, AnalysisError> {
    let mut out = PredictionSet::new(1)?;
    for id in preds.ids() {
        let labels = preds.get(id).ok_or_else(|| AnalysisError::RaggedRuns {
            id: id.to_string(),
            expected: preds.runs,
            found: preds.labels[id].iter().flatten().count(),
        })?;
        let entailed = labels.iter().filter(|&&l| l == Label::Entailed).count();
        let other = labels.len() - entailed;
        let label = match entailed.cmp(&other) {
            core::cmp::Ordering::Greater => Label::Entailed,
            core::cmp::Ordering::Less => Label::NotEntailed,
            core::cmp::Ordering::Equal => match tie {
                TiePolicy::Error => return Err(AnalysisError::Tie { id: id.to_string() }),
                TiePolicy::NotEntailedWins => Label::NotEntailed,
            },
        };
        out.insert(id, 0, label)?;
    }
    Ok(out)
}

/// A named subset of records.
pub struct GroupSpec {
    pub name: String,
    pub predicate: Box<dyn Fn(&PairRecord) -> bool + Send + Sync>,
}

impl GroupSpec {
    pub fn new(name: impl Into<String>, predicate: impl Fn(&PairRecord) -> bool + Send + Sync + 'static) -> Self {
        GroupSpec { name: name.into(), predicate: Box::new(predicate) }
    }

    pub fn all() -> Self {
        GroupSpec::new("all", |_| true)
    }

    pub fn matches(&self, r: &PairRecord) -> bool {
        (self.predicate)(r)
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupSpec").field("name", &self.name).finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SdKind {
    #[default]
    Population,
    Sample,
}

/// Mean and standard deviation. The sample SD of a single value is 0.
pub fn mean_sd(values: &[f64], kind: SdKind) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    let denom = match kind {
        SdKind::Population => n,
        SdKind::Sample if values.len() > 1 => n - 1.0,
        SdKind::Sample => return (mean, 0.0),
    };
    (mean, libm::sqrt(ss / denom))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccuracyReport {
    pub group: String,
    pub n: usize,
    /// Correct predictions per run.
    pub correct: Vec<usize>,
    pub per_run: Vec<f64>,
    pub mean: f64,
    pub sd: f64,
}

/// Accuracy of each run on the records selected by `group`. An empty group
/// reports NaN accuracies.
pub fn accuracy(
    gold: &[PairRecord],
    preds: &PredictionSet,
    group: &GroupSpec,
    sd: SdKind,
) -> Result<AccuracyReport, AnalysisError> {
    let mut correct = alloc::vec![0usize; preds.runs];
    let mut n = 0;
    for r in gold.iter().filter(|r| group.matches(r)) {
        let labels = preds.get(&r.id).ok_or_else(|| AnalysisError::MissingPrediction { id: r.id.clone() })?;
        n += 1;
        for (c, l) in correct.iter_mut().zip(labels) {
            *c += usize::from(l == r.label);
        }
    }
    let per_run: Vec<f64> = correct.iter().map(|&c| c as f64 / n as f64).collect();
    let (mean, sd) = mean_sd(&per_run, sd);
    Ok(AccuracyReport { group: group.name.clone(), n, correct, per_run, mean, sd })
}

fn is_accusative_so(r: &PairRecord) -> bool {
    r.hyp_kind == HypKind::H1So && r.meta.is_some()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Definiteness {
    Preferred,
    Dispreferred,
}

/// Article order in the swapped hypothesis: the premise object comes first
/// there. Indefinite before definite is dispreferred. Only subject-object
/// records of the accusative sets are classified.
pub fn definiteness_class(r: &PairRecord) -> Option<Definiteness> {
    if !is_accusative_so(r) {
        return None;
    }
    let m = r.meta.as_ref()?;
    if !m.object.definite && m.subject.definite {
        Some(Definiteness::Dispreferred)
    } else {
        Some(Definiteness::Preferred)
    }
}

pub fn number_class(r: &PairRecord) -> Option<NumberClass> {
    Pattern::parse(&r.pattern, Government::Accusative).map(|p| classify_number(&p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Subject,
    Object,
}

/// Gender of the premise subject or object of a subject-object record,
/// when that argument has head kind `kind`.
pub fn gender_class(r: &PairRecord, role: Role, kind: HeadKind) -> Option<Gender> {
    if !is_accusative_so(r) {
        return None;
    }
    let m = r.meta.as_ref()?;
    let arg = match role {
        Role::Subject => &m.subject,
        Role::Object => &m.object,
    };
    (arg.kind == kind).then_some(arg.gender)
}

/// Groups records by a classifier; unclassified records are dropped.
pub fn partition<'r, K: Ord>(
    gold: &'r [PairRecord],
    classify: impl Fn(&PairRecord) -> Option<K>,
) -> BTreeMap<K, Vec<&'r PairRecord>> {
    let mut out: BTreeMap<K, Vec<&PairRecord>> = BTreeMap::new();
    for r in gold {
        if let Some(k) = classify(r) {
            out.entry(k).or_default().push(r);
        }
    }
    out
}

pub fn definiteness_groups(gold: &[PairRecord]) -> BTreeMap<Definiteness, Vec<&PairRecord>> {
    partition(gold, definiteness_class)
}

pub fn number_groups(gold: &[PairRecord]) -> BTreeMap<NumberClass, Vec<&PairRecord>> {
    partition(gold, number_class)
}

pub fn gender_groups(gold: &[PairRecord], role: Role, kind: HeadKind) -> BTreeMap<Gender, Vec<&PairRecord>> {
    partition(gold, |r| gender_class(r, role, kind))
}

/// Named group families understood by report builders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupFamily {
    All,
    Gender,
    Definiteness,
    Number,
}

impl GroupFamily {
    pub fn parse(s: &str) -> Option<GroupFamily> {
        match s {
            "all" => Some(GroupFamily::All),
            "gender" => Some(GroupFamily::Gender),
            "definiteness" => Some(GroupFamily::Definiteness),
            "number" => Some(GroupFamily::Number),
            _ => None,
        }
    }
}

fn order_groups() -> Vec<GroupSpec> {
    let mut specs = alloc::vec![GroupSpec::all()];
    for kind in HypKind::ALL {
        specs.push(GroupSpec::new(kind.name(), move |r| r.hyp_kind == kind));
    }
    specs
}

/// Group specs for a family. Every family starts with the overall and
/// per-hypothesis-kind groups.
pub fn group_specs(family: GroupFamily) -> Vec<GroupSpec> {
    let mut specs = order_groups();
    let gender = || {
        let mut v = Vec::new();
        for (role, rname) in [(Role::Subject, "subj"), (Role::Object, "obj")] {
            for (kind, kname) in [(HeadKind::Common, "cnoun"), (HeadKind::Proper, "pnoun")] {
                for (g, gname) in [(Gender::Masc, "masc"), (Gender::Fem, "fem")] {
                    let name = alloc::format!("SO/{rname}/{kname}/{gname}");
                    v.push(GroupSpec::new(name, move |r| gender_class(r, role, kind) == Some(g)));
                }
            }
        }
        v
    };
    let definiteness = || {
        [(Definiteness::Preferred, "SO/preferred"), (Definiteness::Dispreferred, "SO/dispreferred")]
            .into_iter()
            .map(|(d, name)| GroupSpec::new(name, move |r| definiteness_class(r) == Some(d)))
            .collect::<Vec<_>>()
    };
    let number = || {
        let mut v = Vec::new();
        for (c, cname) in [(NumberClass::AllSingular, "all-singular"), (NumberClass::SingularPlural, "singular-plural")]
        {
            for kind in [HypKind::H1So, HypKind::H2Os] {
                let name = alloc::format!("{}/{cname}", kind.name());
                v.push(GroupSpec::new(name, move |r| r.hyp_kind == kind && number_class(r) == Some(c)));
            }
        }
        v
    };
    match family {
        GroupFamily::All => {
            specs.extend(gender());
            specs.extend(definiteness());
            specs.extend(number());
        }
        GroupFamily::Gender => specs.extend(gender()),
        GroupFamily::Definiteness => specs.extend(definiteness()),
        GroupFamily::Number => specs.extend(number()),
    }
    specs
}

/// Two-sided p value of a standard normal statistic.
pub fn normal_two_sided_p(z: f64) -> f64 {
    libm::erfc(libm::fabs(z) / core::f64::consts::SQRT_2)
}

/// Pooled two-proportion z test. Returns `(z, two-sided p)`; when the pooled
/// proportion is 0 or 1 the samples are indistinguishable and `(0, 1)` is
/// returned.
pub fn two_proportion_ztest(k1: u64, n1: u64, k2: u64, n2: u64) -> Result<(f64, f64), AnalysisError> {
    if n1 == 0 || n2 == 0 {
        return Err(AnalysisError::EmptySample);
    }
    if k1 > n1 || k2 > n2 {
        return Err(AnalysisError::InvalidCounts);
    }
    let (k1f, n1f, k2f, n2f) = (k1 as f64, n1 as f64, k2 as f64, n2 as f64);
    let pooled = (k1f + k2f) / (n1f + n2f);
    let var = pooled * (1.0 - pooled) * (1.0 / n1f + 1.0 / n2f);
    if var <= 0.0 {
        return Ok((0.0, 1.0));
    }
    let z = (k1f / n1f - k2f / n2f) / libm::sqrt(var);
    Ok((z, normal_two_sided_p(z)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PllSummary {
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
}

/// Mean and SD of pseudo-log-likelihood scores per sentence group:
/// `premise` (keyed by premise id, each premise once) and one group per
/// hypothesis kind (keyed by pair id).
pub fn pll_aggregate(
    scores: &BTreeMap<String, f64>,
    gold: &[PairRecord],
    sd: SdKind,
) -> Result<BTreeMap<String, PllSummary>, AnalysisError> {
    let mut groups: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    let mut premises = BTreeSet::new();
    let lookup = |id: &str| scores.get(id).copied().ok_or_else(|| AnalysisError::MissingScore { id: id.to_string() });
    for r in gold {
        let pid = r.premise_key();
        if premises.insert(pid.to_string()) {
            groups.entry("premise".to_string()).or_default().push(lookup(pid)?);
        }
        groups.entry(r.hyp_kind.name().to_string()).or_default().push(lookup(&r.id)?);
    }
    Ok(groups
        .into_iter()
        .map(|(name, values)| {
            let (mean, sd) = mean_sd(&values, sd);
            (name, PllSummary { n: values.len(), mean, sd })
        })
        .collect())
}
