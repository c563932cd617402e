use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use wogli_core::augment::{merge_training, sample_augmentation, verb_counts, AugmentationPlan, NeLabel, NliRow};
use wogli_core::generator::{generate_set, Sampling};
use wogli_core::{GenerationConfig, HypKind, Lexicon, PairRecord, SetName};

fn records(set: SetName, seed: u64, per_pattern: usize) -> Vec<PairRecord> {
    generate_set(set, &Lexicon::bundled(), &GenerationConfig::new(seed, per_pattern)).unwrap().records()
}

#[test]
fn p_subject_collapses_duplicate_pronoun_premises() {
    let lex = Lexicon::bundled();
    let config = GenerationConfig::new(21, 1000);
    let wogli = generate_set(SetName::Wogli, &lex, &config).unwrap();
    let p = generate_set(SetName::PSubject, &lex, &config).unwrap();
    assert!(p.premise_count() < wogli.premise_count());
    let texts: BTreeSet<_> = p.records().iter().map(|r| r.premise.clone()).collect();
    assert_eq!(texts.len(), p.premise_count());
    for r in p.records() {
        let first = r.premise.split(' ').next().unwrap();
        assert!(["Er", "Sie"].contains(&first), "{}", r.premise);
    }
}

#[test]
fn with_replacement_keeps_first_occurrences_only() {
    let lex = Lexicon::bundled();
    let mut config = GenerationConfig::new(4, 1000);
    config.sampling = Sampling::WithReplacementDedup;
    let set = generate_set(SetName::Wogli, &lex, &config).unwrap();
    let premises: BTreeSet<_> = set.records().iter().map(|r| r.premise.clone()).collect();
    assert_eq!(premises.len(), set.premise_count());
    assert!(set.premise_count() < 17_000);
}

#[test]
fn os_hard_hypotheses_are_non_entailed_h3() {
    let rs = records(SetName::OsHard, 8, 20);
    assert_eq!(rs.len(), 17 * 20);
    assert!(rs.iter().all(|r| r.hyp_kind == HypKind::H3Os && r.label == wogli_core::Label::NotEntailed));
}

#[test]
fn augmentation_splits_are_disjoint_and_complete() {
    let lex = Lexicon::bundled();
    let input = records(SetName::Wogli, 6, 80);
    let plan = AugmentationPlan::small(9);
    let split = sample_augmentation(&input, None, &plan, &lex).unwrap();
    assert_eq!(split.augmentation.len() + split.remainder.len(), input.len());
    let aug: BTreeSet<_> = split.augmentation.iter().map(|r| r.id.clone()).collect();
    assert!(split.remainder.iter().all(|r| !aug.contains(&r.id)));
    let mut per_premise: BTreeMap<&str, usize> = BTreeMap::new();
    for r in &split.augmentation {
        *per_premise.entry(r.premise_key()).or_default() += 1;
    }
    assert!(per_premise.values().all(|&n| n == 2));
    assert!(verb_counts(&split.augmentation).values().all(|c| (1..=4).contains(c)));
}

#[test]
fn augmentation_rejects_an_impossible_verb_range() {
    let lex = Lexicon::bundled();
    let input = records(SetName::Wogli, 6, 10);
    let mut plan = AugmentationPlan::small(1);
    plan.verb_min = 30;
    plan.verb_max = 40;
    assert!(sample_augmentation(&input, None, &plan, &lex).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn merge_keeps_every_row(seed in any::<u64>(), ne_contradiction in any::<bool>()) {
        let aug = records(SetName::Wogli, 2, 2);
        let base: Vec<NliRow> = (0..10)
            .map(|i| NliRow { premise: format!("P{i}"), hypothesis: format!("H{i}"), label: "neutral".into() })
            .collect();
        let ne = if ne_contradiction { NeLabel::Contradiction } else { NeLabel::Neutral };
        let merged = merge_training(base.clone(), &aug, ne, seed);
        prop_assert_eq!(merged.len(), base.len() + aug.len());
        let e = merged.iter().filter(|r| r.label == "entailment").count();
        prop_assert_eq!(e, aug.iter().filter(|r| r.hyp_kind == HypKind::H2Os).count());
        prop_assert_eq!(merged.clone(), merge_training(base.clone(), &aug, ne, seed));
    }

    #[test]
    fn generation_is_a_function_of_the_seed(seed in any::<u64>()) {
        prop_assert_eq!(records(SetName::Dative, seed, 3), records(SetName::Dative, seed, 3));
    }
}

#[test]
fn empty_plan_keeps_everything_in_the_remainder() {
    let lex = Lexicon::bundled();
    let input = records(SetName::Wogli, 6, 5);
    let split = sample_augmentation(&input, None, &AugmentationPlan::unconstrained(0, 1), &lex).unwrap();
    assert!(split.augmentation.is_empty());
    assert_eq!(split.remainder, input);
}
