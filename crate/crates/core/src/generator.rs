//! Premise sampling, hypothesis derivation and dataset assembly.
//!
//! Each pattern draws from its own ChaCha stream keyed by `(seed,
//! government, pattern index)`, so patterns can be sampled in any order or
//! in parallel and still produce identical output. The p-subject and
//! OS-hard sets reuse the accusative streams and therefore see the same
//! premises as the base set.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lexicon::{Gender, Government, Lexicon, NounKind, Number, VerbEntry};
use crate::morphology::{agree_verb, render_np_tokens, ArticleKind, Case, Head, Lemma, MorphError, NpSpec, Token};
use crate::patterns::{patterns_for, NpClass, Pattern};
use crate::record::{ArgMeta, HeadKind, HypKind, PairMeta, PairRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetName {
    Wogli,
    PSubject,
    Dative,
    Ditransitive,
    OsHard,
}

impl SetName {
    pub const ALL: [SetName; 5] =
        [SetName::Wogli, SetName::PSubject, SetName::Dative, SetName::Ditransitive, SetName::OsHard];

    pub fn name(self) -> &'static str {
        match self {
            SetName::Wogli => "wogli",
            SetName::PSubject => "p-subject",
            SetName::Dative => "dative",
            SetName::Ditransitive => "ditransitive",
            SetName::OsHard => "os-hard",
        }
    }

    pub fn parse(s: &str) -> Option<SetName> {
        Self::ALL.into_iter().find(|n| n.name() == s)
    }

    pub fn government(self) -> Government {
        match self {
            SetName::Dative => Government::Dative,
            SetName::Ditransitive => Government::Ditransitive,
            _ => Government::Accusative,
        }
    }

    pub fn patterns(self) -> Vec<Pattern> {
        patterns_for(self.government())
    }

    /// Premises drawn per pattern by default. The ditransitive set has 24
    /// patterns and 12,000 premises, so each pattern contributes 500
    /// premises (1,000 pairs).
    pub fn default_per_pattern(self) -> usize {
        match self {
            SetName::Dative => 150,
            SetName::Ditransitive => 500,
            _ => 1000,
        }
    }

    pub fn hypothesis_kinds(self) -> &'static [HypKind] {
        match self {
            SetName::Ditransitive => &[HypKind::H1Sio, HypKind::H2Ios],
            SetName::OsHard => &[HypKind::H3Os],
            _ => &[HypKind::H1So, HypKind::H2Os],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampling {
    /// Exactly `per_pattern` distinct premises per pattern.
    #[default]
    WithoutReplacement,
    /// `per_pattern` independent draws per pattern, then a global
    /// first-occurrence dedup on the premise text. Output size depends on
    /// the seed.
    WithReplacementDedup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Punctuation {
    /// `Der Arzt warnt den Kunden.`
    #[default]
    Attached,
    /// `Der Arzt warnt den Kunden .`
    Spaced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerationConfig {
    pub seed: u64,
    pub per_pattern: usize,
    pub sampling: Sampling,
    pub punctuation: Punctuation,
}

impl GenerationConfig {
    pub fn new(seed: u64, per_pattern: usize) -> Self {
        GenerationConfig { seed, per_pattern, sampling: Sampling::default(), punctuation: Punctuation::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct SeedPath {
    pub pattern_index: usize,
    pub draw_index: usize,
}

/// One lexicalized premise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PremiseInstance<'a> {
    pub pattern: Pattern,
    pub subject: NpSpec<'a>,
    pub object: NpSpec<'a>,
    pub verb: &'a VerbEntry,
    /// Ditransitive only; always definite.
    pub direct_object: Option<NpSpec<'a>>,
    pub seed_path: SeedPath,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenError {
    Morph(MorphError),
    Exhausted { pattern: String, requested: usize, available: u128 },
    ZeroPerPattern,
    WrongGovernment { expected: Government, found: Government },
    DirectObject,
    Record { id: String, reason: String },
}

impl From<MorphError> for GenError {
    fn from(e: MorphError) -> Self {
        GenError::Morph(e)
    }
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::Morph(e) => write!(f, "morphology: {e}"),
            GenError::Exhausted { pattern, requested, available } => write!(
                f,
                "pattern {pattern}: requested {requested} distinct premises but only {available} lexicalizations exist"
            ),
            GenError::ZeroPerPattern => f.write_str("per-pattern count must be at least 1"),
            GenError::WrongGovernment { expected, found } => {
                write!(f, "expected {} government, found {}", expected.code(), found.code())
            }
            GenError::DirectObject => {
                f.write_str("a definite direct object is required exactly for ditransitive premises")
            }
            GenError::Record { id, reason } => write!(f, "record {id}: {reason}"),
        }
    }
}

impl core::error::Error for GenError {}

fn object_case(government: Government) -> Case {
    match government {
        Government::Accusative => Case::Acc,
        Government::Dative | Government::Ditransitive => Case::Dat,
    }
}

impl<'a> PremiseInstance<'a> {
    pub fn check(&self) -> Result<(), GenError> {
        self.subject.check()?;
        self.object.check()?;
        if self.verb.government != self.pattern.government {
            return Err(GenError::WrongGovernment { expected: self.pattern.government, found: self.verb.government });
        }
        let wants = self.pattern.government == Government::Ditransitive;
        match self.direct_object {
            Some(d) if wants && d.article == ArticleKind::Def => d.check()?,
            None if !wants => {}
            _ => return Err(GenError::DirectObject),
        }
        Ok(())
    }
}

/// A rendered sentence; tokens keep the lowercase-article form and the
/// first word is capitalized on output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub tokens: Vec<Token>,
}

fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

impl Sentence {
    pub fn words(&self) -> Vec<String> {
        self.tokens
            .iter()
            .enumerate()
            .map(|(i, t)| if i == 0 { capitalize(&t.surface) } else { t.surface.clone() })
            .collect()
    }

    pub fn text(&self, punctuation: Punctuation) -> String {
        let mut out = self.words().join(" ");
        if punctuation == Punctuation::Spaced {
            out.push(' ');
        }
        out.push('.');
        out
    }

    pub fn word_count(&self) -> usize {
        self.tokens.len()
    }

    /// Sorted lemma multiset.
    pub fn lemmas(&self) -> Vec<Lemma> {
        let mut lemmas: Vec<Lemma> = self.tokens.iter().map(|t| t.lemma.clone()).collect();
        lemmas.sort();
        lemmas
    }

    /// Sorted multiset of lowercased surface tokens.
    pub fn folded_tokens(&self) -> Vec<String> {
        let mut words: Vec<String> = self.tokens.iter().map(|t| t.surface.to_lowercase()).collect();
        words.sort();
        words
    }

    pub fn verb_form(&self) -> Option<&str> {
        self.tokens.iter().find(|t| matches!(t.lemma, Lemma::Verb(_))).map(|t| t.surface.as_str())
    }
}

fn verb_token(verb: &VerbEntry, number: Number) -> Token {
    Token { surface: agree_verb(verb, number).to_string(), lemma: Lemma::Verb(verb.lemma.clone()) }
}

fn append_direct_object(tokens: &mut Vec<Token>, p: &PremiseInstance<'_>) -> Result<(), GenError> {
    if let Some(d) = &p.direct_object {
        tokens.extend(render_np_tokens(d, Case::Acc)?);
    }
    Ok(())
}

/// Subject, verb, object (and direct object).
pub fn realize_premise(p: &PremiseInstance<'_>) -> Result<Sentence, GenError> {
    p.check()?;
    let mut tokens = render_np_tokens(&p.subject, Case::Nom)?;
    tokens.push(verb_token(p.verb, p.subject.number));
    tokens.extend(render_np_tokens(&p.object, object_case(p.pattern.government))?);
    append_direct_object(&mut tokens, p)?;
    Ok(Sentence { tokens })
}

/// Exchanges the roles of subject and (indirect) object.
pub fn swap_arguments<'a>(p: &PremiseInstance<'a>) -> PremiseInstance<'a> {
    PremiseInstance {
        pattern: Pattern::new(p.pattern.object, p.pattern.subject, p.pattern.government),
        subject: p.object,
        object: p.subject,
        ..*p
    }
}

/// Non-entailed: arguments swapped, canonical order, verb re-agreed.
pub fn derive_h1(p: &PremiseInstance<'_>) -> Result<Sentence, GenError> {
    realize_premise(&swap_arguments(p))
}

/// Entailed: same marking as the premise, object first.
pub fn derive_h2(p: &PremiseInstance<'_>) -> Result<Sentence, GenError> {
    p.check()?;
    let mut tokens = render_np_tokens(&p.object, object_case(p.pattern.government))?;
    tokens.push(verb_token(p.verb, p.subject.number));
    tokens.extend(render_np_tokens(&p.subject, Case::Nom)?);
    append_direct_object(&mut tokens, p)?;
    Ok(Sentence { tokens })
}

/// Non-entailed in marked order: the swapped meaning, object first.
pub fn derive_h3(p: &PremiseInstance<'_>) -> Result<Sentence, GenError> {
    if p.pattern.government != Government::Accusative {
        return Err(GenError::WrongGovernment { expected: Government::Accusative, found: p.pattern.government });
    }
    derive_h2(&swap_arguments(p))
}

/// Replaces the subject by a personal pronoun of the same gender and number.
pub fn pronominalize<'a>(p: &PremiseInstance<'a>) -> Result<PremiseInstance<'a>, GenError> {
    if p.pattern.government != Government::Accusative {
        return Err(GenError::WrongGovernment { expected: Government::Accusative, found: p.pattern.government });
    }
    Ok(PremiseInstance { subject: NpSpec::pronoun(p.subject.gender, p.subject.number), ..*p })
}

fn slot_options(lex: &Lexicon, class: NpClass) -> u128 {
    match class.gender() {
        None => (lex.masc_proper.len() + lex.fem_proper.len()) as u128,
        Some(g) => (lex.common(g).len() * ArticleKind::admissible(class.number()).len()) as u128,
    }
}

fn same_inventory(a: NpClass, b: NpClass) -> bool {
    a.gender() == b.gender()
}

/// Number of distinct valid lexicalizations of a pattern. Subject and
/// object never share a lemma.
pub fn lexicalization_count(lex: &Lexicon, pattern: &Pattern) -> u128 {
    let s = slot_options(lex, pattern.subject);
    let o = slot_options(lex, pattern.object);
    let overlap = if same_inventory(pattern.subject, pattern.object) {
        match pattern.subject.gender() {
            None => (lex.masc_proper.len() + lex.fem_proper.len()) as u128,
            Some(g) => {
                (lex.common(g).len()
                    * ArticleKind::admissible(pattern.subject.number()).len()
                    * ArticleKind::admissible(pattern.object.number()).len()) as u128
            }
        }
    } else {
        0
    };
    let pairs = s * o - overlap;
    let verbs = lex.verbs(pattern.government);
    match pattern.government {
        Government::Ditransitive => verbs
            .iter()
            .map(|v| {
                let cat = v.category.expect("ditransitive verb has a category");
                lex.thing_nouns.iter().filter(|t| t.categories.contains(cat)).count() as u128
            })
            .sum::<u128>()
            * pairs,
        _ => verbs.len() as u128 * pairs,
    }
}

fn pick<'s, T, R: Rng>(items: &'s [T], rng: &mut R) -> Option<&'s T> {
    if items.is_empty() {
        None
    } else {
        Some(&items[rng.gen_range(0..items.len())])
    }
}

fn draw_np<'a, R: Rng>(lex: &'a Lexicon, class: NpClass, rng: &mut R) -> Option<NpSpec<'a>> {
    match class.gender() {
        None => {
            let gender = if rng.gen_bool(0.5) { Gender::Masc } else { Gender::Fem };
            let names = if lex.proper(gender).is_empty() {
                lex.proper(if gender == Gender::Masc { Gender::Fem } else { Gender::Masc })
            } else {
                lex.proper(gender)
            };
            pick(names, rng).map(NpSpec::proper)
        }
        Some(g) => {
            let noun = pick(lex.common(g), rng)?;
            let number = class.number();
            let article = *pick(ArticleKind::admissible(number), rng)?;
            Some(NpSpec::common(noun, number, article))
        }
    }
}

/// One uniform draw; `None` when the draw is invalid and must be retried.
fn draw_instance<'a, R: Rng>(lex: &'a Lexicon, pattern: Pattern, rng: &mut R) -> Option<PremiseInstance<'a>> {
    let subject = draw_np(lex, pattern.subject, rng)?;
    let verb = pick(lex.verbs(pattern.government), rng)?;
    let object = draw_np(lex, pattern.object, rng)?;
    let direct_object = match verb.category {
        Some(cat) if pattern.government == Government::Ditransitive => {
            let compatible: Vec<_> = lex.thing_nouns.iter().filter(|t| t.categories.contains(cat)).collect();
            Some(NpSpec::thing(pick(&compatible, rng)?, ArticleKind::Def))
        }
        _ => None,
    };
    if subject.head_lemma() == object.head_lemma() {
        return None;
    }
    Some(PremiseInstance { pattern, subject, object, verb, direct_object, seed_path: SeedPath::default() })
}

fn instance_key(p: &PremiseInstance<'_>) -> String {
    format!(
        "{}|{:?}|{}|{}|{:?}|{}",
        p.subject.head_lemma(),
        p.subject.article,
        p.verb.lemma,
        p.object.head_lemma(),
        p.object.article,
        p.direct_object.map(|d| d.head_lemma()).unwrap_or_default()
    )
}

fn stream_id(government: Government, pattern_index: usize) -> u64 {
    let g = match government {
        Government::Accusative => 0u64,
        Government::Dative => 1,
        Government::Ditransitive => 2,
    };
    (g << 32) | pattern_index as u64
}

/// Random stream owned by one pattern.
pub fn pattern_rng(seed: u64, government: Government, pattern_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id(government, pattern_index));
    rng
}

/// Draws the premises of one pattern of `set`.
pub fn sample_pattern<'a>(
    lex: &'a Lexicon,
    set: SetName,
    pattern_index: usize,
    config: &GenerationConfig,
) -> Result<Vec<PremiseInstance<'a>>, GenError> {
    if config.per_pattern == 0 {
        return Err(GenError::ZeroPerPattern);
    }
    let pattern = set.patterns()[pattern_index];
    let available = lexicalization_count(lex, &pattern);
    let exhausted = match config.sampling {
        Sampling::WithoutReplacement => config.per_pattern as u128 > available,
        Sampling::WithReplacementDedup => available == 0,
    };
    if exhausted {
        return Err(GenError::Exhausted { pattern: pattern.name(), requested: config.per_pattern, available });
    }

    let mut rng = pattern_rng(config.seed, pattern.government, pattern_index);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(config.per_pattern);
    while out.len() < config.per_pattern {
        let Some(mut instance) = draw_instance(lex, pattern, &mut rng) else {
            continue;
        };
        if config.sampling == Sampling::WithoutReplacement && !seen.insert(instance_key(&instance)) {
            continue;
        }
        instance.seed_path = SeedPath { pattern_index, draw_index: out.len() };
        out.push(instance);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedPremise<'a> {
    pub instance: PremiseInstance<'a>,
    pub premise: Sentence,
    pub hypotheses: Vec<(HypKind, Sentence)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedSet<'a> {
    pub set: SetName,
    pub punctuation: Punctuation,
    pub items: Vec<GeneratedPremise<'a>>,
}

fn dedup_by_premise<'a>(
    instances: Vec<PremiseInstance<'a>>,
    punctuation: Punctuation,
) -> Result<Vec<PremiseInstance<'a>>, GenError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(instances.len());
    for instance in instances {
        if seen.insert(realize_premise(&instance)?.text(punctuation)) {
            out.push(instance);
        }
    }
    Ok(out)
}

/// Builds a set from premise draws given in (pattern index, draw index)
/// order.
pub fn assemble<'a>(
    set: SetName,
    draws: Vec<PremiseInstance<'a>>,
    config: &GenerationConfig,
) -> Result<GeneratedSet<'a>, GenError> {
    let mut instances = draws;
    if config.sampling == Sampling::WithReplacementDedup {
        instances = dedup_by_premise(instances, config.punctuation)?;
    }
    if set == SetName::PSubject {
        let pronominal = instances.iter().map(pronominalize).collect::<Result<Vec<_>, _>>()?;
        instances = dedup_by_premise(pronominal, config.punctuation)?;
    }
    let mut items = Vec::with_capacity(instances.len());
    for instance in instances {
        let premise = realize_premise(&instance)?;
        let hypotheses = set
            .hypothesis_kinds()
            .iter()
            .map(|&kind| {
                let sentence = match kind {
                    HypKind::H1So | HypKind::H1Sio => derive_h1(&instance)?,
                    HypKind::H2Os | HypKind::H2Ios => derive_h2(&instance)?,
                    HypKind::H3Os => derive_h3(&instance)?,
                };
                Ok((kind, sentence))
            })
            .collect::<Result<Vec<_>, GenError>>()?;
        items.push(GeneratedPremise { instance, premise, hypotheses });
    }
    Ok(GeneratedSet { set, punctuation: config.punctuation, items })
}

/// Sequential generation of a whole set.
pub fn generate_set<'a>(set: SetName, lex: &'a Lexicon, config: &GenerationConfig) -> Result<GeneratedSet<'a>, GenError> {
    let mut draws = Vec::new();
    for pattern_index in 0..set.patterns().len() {
        draws.extend(sample_pattern(lex, set, pattern_index, config)?);
    }
    assemble(set, draws, config)
}

fn arg_meta(np: &NpSpec<'_>) -> ArgMeta {
    let kind = match np.head {
        Head::Noun(n) if n.kind == NounKind::Proper => HeadKind::Proper,
        Head::Noun(_) | Head::Thing(_) => HeadKind::Common,
        Head::Pronoun => HeadKind::Pronoun,
    };
    ArgMeta {
        lemma: np.head_lemma(),
        kind,
        gender: np.gender,
        number: np.number,
        article: np.article,
        definite: np.article.is_definite(),
    }
}

pub fn premise_id(set: SetName, path: SeedPath) -> String {
    format!("{}-{:02}-{:05}", set.name(), path.pattern_index, path.draw_index)
}

impl<'a> GeneratedSet<'a> {
    pub fn premise_count(&self) -> usize {
        self.items.len()
    }

    pub fn pair_count(&self) -> usize {
        self.items.iter().map(|i| i.hypotheses.len()).sum()
    }

    pub fn records(&self) -> Vec<PairRecord> {
        let mut out = Vec::with_capacity(self.pair_count());
        for item in &self.items {
            let p = &item.instance;
            let pid = premise_id(self.set, p.seed_path);
            let meta = PairMeta {
                premise_id: pid.clone(),
                pattern_index: p.seed_path.pattern_index,
                draw_index: p.seed_path.draw_index,
                subject: arg_meta(&p.subject),
                object: arg_meta(&p.object),
                verb_lemma: p.verb.lemma.clone(),
                direct_object_lemma: p.direct_object.map(|d| d.head_lemma()),
            };
            let premise = item.premise.text(self.punctuation);
            for (kind, sentence) in &item.hypotheses {
                out.push(PairRecord {
                    id: format!("{pid}-{}", kind.tag()),
                    subset: self.set.name().to_string(),
                    premise: premise.clone(),
                    hypothesis: sentence.text(self.punctuation),
                    label: kind.label(),
                    hyp_kind: *kind,
                    pattern: p.pattern.name(),
                    meta: Some(meta.clone()),
                });
            }
        }
        out
    }
}

fn np_from_meta<'a>(lex: &'a Lexicon, arg: &ArgMeta, id: &str) -> Result<NpSpec<'a>, GenError> {
    let missing = || GenError::Record { id: id.to_string(), reason: format!("unknown noun `{}`", arg.lemma) };
    Ok(match arg.kind {
        HeadKind::Pronoun => NpSpec::pronoun(arg.gender, arg.number),
        HeadKind::Proper => NpSpec::proper(lex.find_noun(&arg.lemma).ok_or_else(missing)?),
        HeadKind::Common => NpSpec::common(lex.find_noun(&arg.lemma).ok_or_else(missing)?, arg.number, arg.article),
    })
}

/// Rebuilds premise instances from generated records, one per premise, in
/// order of first appearance.
pub fn instances_from_records<'a>(
    records: &[PairRecord],
    lex: &'a Lexicon,
) -> Result<Vec<PremiseInstance<'a>>, GenError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for record in records {
        let err = |reason: &str| GenError::Record { id: record.id.clone(), reason: reason.to_string() };
        let meta = record.meta.as_ref().ok_or_else(|| err("metadata missing; row-json input required"))?;
        if !seen.insert(meta.premise_id.clone()) {
            continue;
        }
        let set = SetName::parse(&record.subset).ok_or_else(|| err("unknown subset"))?;
        let pattern = Pattern::parse(&record.pattern, set.government()).ok_or_else(|| err("unknown pattern"))?;
        let verb = lex.find_verb(&meta.verb_lemma).ok_or_else(|| err("unknown verb"))?;
        let direct_object = match &meta.direct_object_lemma {
            Some(l) => Some(NpSpec::thing(lex.find_thing(l).ok_or_else(|| err("unknown direct object"))?, ArticleKind::Def)),
            None => None,
        };
        let instance = PremiseInstance {
            pattern,
            subject: np_from_meta(lex, &meta.subject, &record.id)?,
            object: np_from_meta(lex, &meta.object, &record.id)?,
            verb,
            direct_object,
            seed_path: SeedPath { pattern_index: meta.pattern_index, draw_index: meta.draw_index },
        };
        instance.check()?;
        out.push(instance);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex() -> Lexicon {
        Lexicon::bundled()
    }

    fn common<'a>(lex: &'a Lexicon, lemma: &str, number: Number, article: ArticleKind) -> NpSpec<'a> {
        NpSpec::common(lex.find_noun(lemma).unwrap(), number, article)
    }

    fn instance<'a>(
        lex: &'a Lexicon,
        pattern: &str,
        gov: Government,
        subject: NpSpec<'a>,
        verb: &str,
        object: NpSpec<'a>,
    ) -> PremiseInstance<'a> {
        PremiseInstance {
            pattern: Pattern::parse(pattern, gov).unwrap(),
            subject,
            object,
            verb: lex.find_verb(verb).unwrap(),
            direct_object: None,
            seed_path: SeedPath::default(),
        }
    }

    fn text(s: Result<Sentence, GenError>) -> String {
        s.unwrap().text(Punctuation::Attached)
    }

    #[test]
    fn warn_example() {
        let lex = lex();
        let p = instance(
            &lex,
            "sing_masc_v_sing_masc",
            Government::Accusative,
            common(&lex, "Arzt", Number::Sg, ArticleKind::Def),
            "warnen",
            common(&lex, "Kunde", Number::Sg, ArticleKind::Def),
        );
        assert_eq!(text(realize_premise(&p)), "Der Arzt warnt den Kunden.");
        assert_eq!(text(derive_h1(&p)), "Der Kunde warnt den Arzt.");
        assert_eq!(text(derive_h2(&p)), "Den Kunden warnt der Arzt.");
        assert_eq!(text(derive_h3(&p)), "Den Arzt warnt der Kunde.");
        assert_eq!(realize_premise(&p).unwrap().text(Punctuation::Spaced), "Der Arzt warnt den Kunden .");
    }

    #[test]
    fn pronoun_subject() {
        let lex = lex();
        let p = instance(
            &lex,
            "sing_masc_v_sing_masc",
            Government::Accusative,
            common(&lex, "Arzt", Number::Sg, ArticleKind::Def),
            "warnen",
            common(&lex, "Gast", Number::Sg, ArticleKind::Def),
        );
        let q = pronominalize(&p).unwrap();
        assert_eq!(text(realize_premise(&q)), "Er warnt den Gast.");
        assert_eq!(text(derive_h1(&q)), "Der Gast warnt ihn.");
        assert_eq!(text(derive_h2(&q)), "Den Gast warnt er.");
    }

    #[test]
    fn h3_needs_accusative() {
        let lex = lex();
        let p = instance(
            &lex,
            "sing_masc_v_plural_masc",
            Government::Dative,
            common(&lex, "Richter", Number::Sg, ArticleKind::Indef),
            "gratulieren",
            common(&lex, "Berater", Number::Pl, ArticleKind::Dem),
        );
        assert_eq!(text(realize_premise(&p)), "Ein Richter gratuliert diesen Beratern.");
        assert!(matches!(derive_h3(&p), Err(GenError::WrongGovernment { .. })));
        assert!(pronominalize(&p).is_err());
    }

    #[test]
    fn instance_checks() {
        let lex = lex();
        let mut p = instance(
            &lex,
            "sing_masc_v_sing_masc",
            Government::Accusative,
            common(&lex, "Arzt", Number::Sg, ArticleKind::Def),
            "helfen",
            common(&lex, "Gast", Number::Sg, ArticleKind::Def),
        );
        assert!(matches!(realize_premise(&p), Err(GenError::WrongGovernment { .. })));
        p.verb = lex.find_verb("warnen").unwrap();
        p.direct_object = Some(NpSpec::thing(lex.find_thing("Kuchen").unwrap(), ArticleKind::Def));
        assert_eq!(realize_premise(&p), Err(GenError::DirectObject));
    }

    #[test]
    fn counts_match_enumeration_on_toy_lexicon() {
        let src = "class\tlemma\tform2\tform3\tattr1\tattr2\tattr3\n\
                   verb\twarnen\twarnt\twarnen\tACC\t-\tfalse\n\
                   verb\tlieben\tliebt\tlieben\tACC\t-\tfalse\n\
                   noun\tArzt\tÄrzte\tstrong\tMASC\tCOMMON\ttrue\n\
                   noun\tKunde\tKunden\tweak\tMASC\tCOMMON\ttrue\n\
                   noun\tLehrerin\tLehrerinnen\tstrong\tFEM\tCOMMON\ttrue\n\
                   noun\tPeter\t-\t-\tMASC\tPROPER\ttrue\n\
                   noun\tMaria\t-\t-\tFEM\tPROPER\ttrue\n";
        let lex = crate::lexicon::load_lexicon(src).unwrap();
        for (idx, pattern) in SetName::Wogli.patterns().iter().enumerate() {
            let available = lexicalization_count(&lex, pattern) as usize;
            if available == 0 {
                let config = GenerationConfig::new(3, 1);
                assert!(matches!(sample_pattern(&lex, SetName::Wogli, idx, &config), Err(GenError::Exhausted { .. })));
                continue;
            }
            let mut config = GenerationConfig::new(3, available);
            let draws = sample_pattern(&lex, SetName::Wogli, idx, &config).unwrap();
            let keys: BTreeSet<String> = draws.iter().map(instance_key).collect();
            assert_eq!(keys.len(), available, "{}", pattern.name());
            config.per_pattern = available + 1;
            let err = sample_pattern(&lex, SetName::Wogli, idx, &config).unwrap_err();
            assert!(matches!(err, GenError::Exhausted { .. }));
        }
    }

    #[test]
    fn zero_per_pattern_rejected() {
        let lex = lex();
        let config = GenerationConfig::new(1, 0);
        assert_eq!(generate_set(SetName::Wogli, &lex, &config).unwrap_err(), GenError::ZeroPerPattern);
    }

    #[test]
    fn records_roundtrip_to_instances() {
        let lex = lex();
        let config = GenerationConfig::new(11, 5);
        let set = generate_set(SetName::Ditransitive, &lex, &config).unwrap();
        let records = set.records();
        let rebuilt = instances_from_records(&records, &lex).unwrap();
        let original: Vec<_> = set.items.iter().map(|i| i.instance).collect();
        assert_eq!(rebuilt, original);
    }

    #[test]
    fn stream_independent_of_order() {
        let lex = lex();
        let config = GenerationConfig::new(5, 20);
        let a = sample_pattern(&lex, SetName::Wogli, 7, &config).unwrap();
        let _ = sample_pattern(&lex, SetName::Wogli, 3, &config).unwrap();
        let b = sample_pattern(&lex, SetName::Wogli, 7, &config).unwrap();
        assert_eq!(a, b);
        let c = sample_pattern(&lex, SetName::OsHard, 7, &config).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn capitalization() {
        assert_eq!(capitalize("einem"), "Einem");
        assert_eq!(capitalize("ärzte"), "Ärzte");
        assert_eq!(capitalize(""), "");
    }
}
