//! Constrained subset sampling for training augmentation, and merging of
//! the sampled pairs into a three-class NLI training file.
//!
//! Sampling starts from a uniformly random selection of the requested size
//! in each pattern and then improves it with random within-pattern swaps.
//! A swap is kept when it does not increase the constraint violation, so
//! every intermediate state is still a uniform-per-pattern-size selection
//! and the pattern quota never changes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lexicon::Lexicon;
use crate::morphology::{inflect_noun, Case};
use crate::record::{ArgMeta, HeadKind, Label, PairRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AugmentationPlan {
    pub premises_per_pattern: usize,
    pub verb_min: usize,
    pub verb_max: usize,
    pub require_all_noun_forms: bool,
    pub seed: u64,
    /// Maximum number of swap proposals.
    pub retry_budget: usize,
}

pub const DEFAULT_RETRY_BUDGET: usize = 10_000;

impl AugmentationPlan {
    /// 61 premises per pattern, every verb 18 to 25 times, every noun form
    /// present.
    pub fn large(seed: u64) -> Self {
        AugmentationPlan {
            premises_per_pattern: 61,
            verb_min: 18,
            verb_max: 25,
            require_all_noun_forms: true,
            seed,
            retry_budget: DEFAULT_RETRY_BUDGET,
        }
    }

    /// 6 premises per pattern, every verb 1 to 4 times.
    pub fn small(seed: u64) -> Self {
        AugmentationPlan {
            premises_per_pattern: 6,
            verb_min: 1,
            verb_max: 4,
            require_all_noun_forms: false,
            seed,
            retry_budget: DEFAULT_RETRY_BUDGET,
        }
    }

    /// No verb or noun constraint.
    pub fn unconstrained(premises_per_pattern: usize, seed: u64) -> Self {
        AugmentationPlan {
            premises_per_pattern,
            verb_min: 0,
            verb_max: usize::MAX,
            require_all_noun_forms: false,
            seed,
            retry_budget: DEFAULT_RETRY_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AugmentError {
    InvalidPlan(&'static str),
    MissingMetadata { id: String },
    UnknownNoun { id: String, lemma: String },
    PatternTooSmall { pattern: String, available: usize, requested: usize },
    /// The swap budget ran out with these constraints still violated.
    Infeasible { verb_range: bool, noun_forms: bool },
}

impl fmt::Display for AugmentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AugmentError::InvalidPlan(why) => write!(f, "invalid plan: {why}"),
            AugmentError::MissingMetadata { id } => write!(f, "record {id} has no generation metadata"),
            AugmentError::UnknownNoun { id, lemma } => write!(f, "record {id}: noun `{lemma}` not in lexicon"),
            AugmentError::PatternTooSmall { pattern, available, requested } => {
                write!(f, "pattern {pattern} has {available} premises, {requested} requested")
            }
            AugmentError::Infeasible { verb_range, noun_forms } => {
                f.write_str("constraint not satisfied within retry budget:")?;
                if *verb_range {
                    f.write_str(" verb-range")?;
                }
                if *noun_forms {
                    f.write_str(" noun-forms")?;
                }
                Ok(())
            }
        }
    }
}

impl core::error::Error for AugmentError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentationSplit {
    pub augmentation: Vec<PairRecord>,
    pub remainder: Vec<PairRecord>,
    /// Selected premise keys.
    pub premises: BTreeSet<String>,
}

struct Premise {
    key: String,
    verb: usize,
    forms: Vec<usize>,
}

struct Interner(BTreeMap<String, usize>);

impl Interner {
    fn id(&mut self, s: &str) -> usize {
        let next = self.0.len();
        *self.0.entry(s.to_string()).or_insert(next)
    }
}

fn arg_forms(lex: &Lexicon, arg: &ArgMeta, id: &str, out: &mut Vec<String>) -> Result<(), AugmentError> {
    match arg.kind {
        HeadKind::Pronoun => {}
        HeadKind::Proper => out.push(arg.lemma.clone()),
        HeadKind::Common => {
            let noun = lex
                .find_noun(&arg.lemma)
                .ok_or_else(|| AugmentError::UnknownNoun { id: id.to_string(), lemma: arg.lemma.clone() })?;
            for case in [Case::Nom, Case::Acc] {
                out.push(inflect_noun(noun, arg.number, case));
            }
        }
    }
    Ok(())
}

/// Noun forms exhibited by a premise and its swapped hypothesis: each
/// argument in nominative and accusative at its own number.
pub fn premise_noun_forms(lex: &Lexicon, record: &PairRecord) -> Result<Vec<String>, AugmentError> {
    let meta = record.meta.as_ref().ok_or_else(|| AugmentError::MissingMetadata { id: record.id.clone() })?;
    let mut forms = Vec::new();
    arg_forms(lex, &meta.subject, &record.id, &mut forms)?;
    arg_forms(lex, &meta.object, &record.id, &mut forms)?;
    Ok(forms)
}

struct Search<'p> {
    premises: &'p [Premise],
    verb_count: Vec<usize>,
    form_count: Vec<usize>,
    verb_min: usize,
    verb_max: usize,
    forms_required: bool,
}

impl Search<'_> {
    fn verb_cost(&self, count: usize) -> usize {
        if count < self.verb_min {
            self.verb_min - count
        } else {
            count.saturating_sub(self.verb_max)
        }
    }

    fn verb_penalty(&self) -> usize {
        self.verb_count.iter().map(|&c| self.verb_cost(c)).sum()
    }

    fn form_penalty(&self) -> usize {
        if self.forms_required {
            self.form_count.iter().filter(|&&c| c == 0).count()
        } else {
            0
        }
    }

    fn add(&mut self, idx: usize) {
        let p = &self.premises[idx];
        self.verb_count[p.verb] += 1;
        for &f in &p.forms {
            self.form_count[f] += 1;
        }
    }

    fn remove(&mut self, idx: usize) {
        let p = &self.premises[idx];
        self.verb_count[p.verb] -= 1;
        for &f in &p.forms {
            self.form_count[f] -= 1;
        }
    }

    /// Objective change if `out` leaves the selection and `inn` joins it.
    fn swap_delta(&mut self, out: usize, inn: usize) -> isize {
        let before = (self.verb_penalty() + self.form_penalty()) as isize;
        self.remove(out);
        self.add(inn);
        let after = (self.verb_penalty() + self.form_penalty()) as isize;
        self.remove(inn);
        self.add(out);
        after - before
    }
}

/// Samples a stratified augmentation subset from `input`.
///
/// `pool` restricts which premises may be chosen (for nested plans); the
/// remainder is always relative to the whole input.
pub fn sample_augmentation(
    input: &[PairRecord],
    pool: Option<&BTreeSet<String>>,
    plan: &AugmentationPlan,
    lex: &Lexicon,
) -> Result<AugmentationSplit, AugmentError> {
    if plan.verb_min > plan.verb_max {
        return Err(AugmentError::InvalidPlan("verb_min exceeds verb_max"));
    }
    let mut verbs = Interner(BTreeMap::new());
    let mut forms = Interner(BTreeMap::new());
    let mut premises: Vec<Premise> = Vec::new();
    let mut by_pattern: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    let mut pattern_order: Vec<&str> = Vec::new();
    let mut seen = BTreeSet::new();
    for record in input {
        let meta = record.meta.as_ref().ok_or_else(|| AugmentError::MissingMetadata { id: record.id.clone() })?;
        let key = meta.premise_id.as_str();
        if pool.is_some_and(|p| !p.contains(key)) || !seen.insert(key) {
            continue;
        }
        let form_ids = premise_noun_forms(lex, record)?.iter().map(|f| forms.id(f)).collect();
        let idx = premises.len();
        premises.push(Premise { key: key.to_string(), verb: verbs.id(&meta.verb_lemma), forms: form_ids });
        let slot = by_pattern.entry(record.pattern.as_str()).or_insert_with(|| {
            pattern_order.push(record.pattern.as_str());
            Vec::new()
        });
        slot.push(idx);
    }

    let k = plan.premises_per_pattern;
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    // Per pattern: candidates shuffled, the first k are selected.
    let mut strata: Vec<Vec<usize>> = Vec::with_capacity(pattern_order.len());
    for name in &pattern_order {
        let mut candidates = by_pattern.remove(name).unwrap_or_default();
        if candidates.len() < k {
            return Err(AugmentError::PatternTooSmall {
                pattern: name.to_string(),
                available: candidates.len(),
                requested: k,
            });
        }
        candidates.shuffle(&mut rng);
        strata.push(candidates);
    }

    let mut search = Search {
        premises: &premises,
        verb_count: alloc::vec![0; verbs.0.len()],
        form_count: alloc::vec![0; forms.0.len()],
        verb_min: plan.verb_min,
        verb_max: plan.verb_max,
        forms_required: plan.require_all_noun_forms,
    };
    for stratum in &strata {
        for &idx in &stratum[..k] {
            search.add(idx);
        }
    }

    let swappable: Vec<usize> = (0..strata.len()).filter(|&s| k > 0 && strata[s].len() > k).collect();
    let mut budget = plan.retry_budget;
    while search.verb_penalty() + search.form_penalty() > 0 && budget > 0 && !swappable.is_empty() {
        budget -= 1;
        let s = swappable[rng.gen_range(0..swappable.len())];
        let i = rng.gen_range(0..k);
        let j = rng.gen_range(k..strata[s].len());
        let (out, inn) = (strata[s][i], strata[s][j]);
        if search.swap_delta(out, inn) <= 0 {
            search.remove(out);
            search.add(inn);
            strata[s].swap(i, j);
        }
    }
    let verb_range = search.verb_penalty() > 0;
    let noun_forms = search.form_penalty() > 0;
    if verb_range || noun_forms {
        return Err(AugmentError::Infeasible { verb_range, noun_forms });
    }

    let chosen: BTreeSet<String> =
        strata.iter().flat_map(|s| s[..k].iter().map(|&i| premises[i].key.clone())).collect();
    let (augmentation, remainder) = input.iter().cloned().partition(|r| chosen.contains(r.premise_key()));
    Ok(AugmentationSplit { augmentation, remainder, premises: chosen })
}

/// Three-class label used for non-entailed pairs when merging.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NeLabel {
    #[default]
    Neutral,
    Contradiction,
}

impl NeLabel {
    pub fn name(self) -> &'static str {
        match self {
            NeLabel::Neutral => "neutral",
            NeLabel::Contradiction => "contradiction",
        }
    }

    pub fn parse(s: &str) -> Option<NeLabel> {
        match s {
            "neutral" => Some(NeLabel::Neutral),
            "contradiction" => Some(NeLabel::Contradiction),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NliRow {
    pub premise: String,
    pub hypothesis: String,
    pub label: String,
}

pub const NLI_LABELS: [&str; 3] = ["entailment", "neutral", "contradiction"];

/// Appends the augmentation pairs to `base` with three-class labels and
/// shuffles the result.
pub fn merge_training(base: Vec<NliRow>, augmentation: &[PairRecord], ne_label: NeLabel, seed: u64) -> Vec<NliRow> {
    let mut rows = base;
    rows.reserve(augmentation.len());
    for r in augmentation {
        let label = match r.label {
            Label::Entailed => "entailment",
            Label::NotEntailed => ne_label.name(),
        };
        rows.push(NliRow { premise: r.premise.clone(), hypothesis: r.hypothesis.clone(), label: label.to_string() });
    }
    rows.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    rows
}

/// Per-verb premise counts of a record list.
pub fn verb_counts(records: &[PairRecord]) -> BTreeMap<String, usize> {
    let mut seen = BTreeSet::new();
    let mut counts = BTreeMap::new();
    for r in records {
        if let Some(m) = &r.meta {
            if seen.insert(m.premise_id.as_str()) {
                *counts.entry(m.verb_lemma.clone()).or_insert(0) += 1;
            }
        }
    }
    counts
}

/// Noun forms covered by a record list.
pub fn covered_noun_forms(records: &[PairRecord], lex: &Lexicon) -> Result<BTreeSet<String>, AugmentError> {
    let mut out = BTreeSet::new();
    for r in records {
        out.extend(premise_noun_forms(lex, r)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{generate_set, GenerationConfig, SetName};

    fn wogli(lex: &Lexicon, per_pattern: usize) -> Vec<PairRecord> {
        generate_set(SetName::Wogli, lex, &GenerationConfig::new(21, per_pattern)).unwrap().records()
    }

    #[test]
    fn zero_plan_keeps_everything() {
        let lex = Lexicon::bundled();
        let input = wogli(&lex, 4);
        let split = sample_augmentation(&input, None, &AugmentationPlan::unconstrained(0, 1), &lex).unwrap();
        assert!(split.augmentation.is_empty());
        assert_eq!(split.remainder, input);
    }

    #[test]
    fn quota_per_pattern() {
        let lex = Lexicon::bundled();
        let input = wogli(&lex, 10);
        let split = sample_augmentation(&input, None, &AugmentationPlan::unconstrained(3, 9), &lex).unwrap();
        assert_eq!(split.augmentation.len(), 17 * 3 * 2);
        let mut per: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for r in &split.augmentation {
            per.entry(&r.pattern).or_default().insert(r.premise_key());
        }
        assert!(per.values().all(|s| s.len() == 3));
        assert_eq!(split.augmentation.len() + split.remainder.len(), input.len());
    }

    #[test]
    fn too_small_pattern() {
        let lex = Lexicon::bundled();
        let input = wogli(&lex, 2);
        let err = sample_augmentation(&input, None, &AugmentationPlan::unconstrained(3, 9), &lex).unwrap_err();
        assert!(matches!(err, AugmentError::PatternTooSmall { available: 2, requested: 3, .. }));
    }

    #[test]
    fn impossible_verb_range_reports_constraint() {
        let lex = Lexicon::bundled();
        let input = wogli(&lex, 4);
        let mut plan = AugmentationPlan::unconstrained(1, 3);
        plan.verb_min = 5;
        plan.verb_max = 6;
        plan.retry_budget = 50;
        let err = sample_augmentation(&input, None, &plan, &lex).unwrap_err();
        assert_eq!(err, AugmentError::Infeasible { verb_range: true, noun_forms: false });
    }

    #[test]
    fn merge_is_additive_and_deterministic() {
        let lex = Lexicon::bundled();
        let aug = wogli(&lex, 1);
        let base = alloc::vec![NliRow { premise: "a".into(), hypothesis: "b".into(), label: "neutral".into() }];
        let a = merge_training(base.clone(), &aug, NeLabel::Neutral, 4);
        let b = merge_training(base, &aug, NeLabel::Neutral, 4);
        assert_eq!(a.len(), 1 + aug.len());
        assert_eq!(a, b);
        let entail = a.iter().filter(|r| r.label == "entailment").count();
        assert_eq!(entail, aug.len() / 2);
        let c = merge_training(Vec::new(), &aug, NeLabel::Contradiction, 4);
        assert_eq!(c.iter().filter(|r| r.label == "contradiction").count(), aug.len() / 2);
    }
}
