//! Subject/object pattern inventories and the ambiguity check behind them.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::generator::{derive_h1, derive_h2, PremiseInstance, Punctuation, SeedPath};
use crate::lexicon::{Gender, Government, Lexicon, NounEntry, Number};
use crate::morphology::{ArticleKind, NpSpec};

/// Argument slot of a pattern. Proper names are singular and carry their
/// gender per instance, so the slot itself has none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NpClass {
    ProperNoun,
    SingMasc,
    SingFem,
    PluralMasc,
    PluralFem,
}

impl NpClass {
    pub const ALL: [NpClass; 5] =
        [NpClass::ProperNoun, NpClass::SingMasc, NpClass::SingFem, NpClass::PluralMasc, NpClass::PluralFem];

    pub fn name(self) -> &'static str {
        match self {
            NpClass::ProperNoun => "pnoun",
            NpClass::SingMasc => "sing_masc",
            NpClass::SingFem => "sing_fem",
            NpClass::PluralMasc => "plural_masc",
            NpClass::PluralFem => "plural_fem",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }

    pub fn number(self) -> Number {
        match self {
            NpClass::PluralMasc | NpClass::PluralFem => Number::Pl,
            _ => Number::Sg,
        }
    }

    /// Gender of common-noun slots; `None` for proper names.
    pub fn gender(self) -> Option<Gender> {
        match self {
            NpClass::ProperNoun => None,
            NpClass::SingMasc | NpClass::PluralMasc => Some(Gender::Masc),
            NpClass::SingFem | NpClass::PluralFem => Some(Gender::Fem),
        }
    }

    pub fn is_proper(self) -> bool {
        self == NpClass::ProperNoun
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub subject: NpClass,
    pub object: NpClass,
    pub government: Government,
}

impl Pattern {
    pub const fn new(subject: NpClass, object: NpClass, government: Government) -> Self {
        Pattern { subject, object, government }
    }

    /// Canonical `<subject>_v_<object>` name.
    pub fn name(&self) -> String {
        format!("{}_v_{}", self.subject.name(), self.object.name())
    }

    pub fn parse(name: &str, government: Government) -> Option<Pattern> {
        let (subject, object) = name.split_once("_v_")?;
        Some(Pattern::new(NpClass::from_name(subject)?, NpClass::from_name(object)?, government))
    }

    pub fn with_government(self, government: Government) -> Pattern {
        Pattern { government, ..self }
    }
}

use NpClass::{PluralFem as PF, PluralMasc as PM, ProperNoun as PN, SingFem as SF, SingMasc as SM};

/// All 24 two-argument combinations except `pnoun_v_pnoun`, in canonical
/// table order. The flag marks the accusative patterns.
const EXTENDED: [(NpClass, NpClass, bool); 24] = [
    (PN, SM, true),
    (PN, PM, true),
    (PN, PF, true),
    (PN, SF, false),
    (PM, PN, true),
    (PM, SM, true),
    (PM, SF, true),
    (PM, PF, false),
    (PM, PM, false),
    (PF, SM, true),
    (PF, SF, true),
    (PF, PN, true),
    (PF, PF, false),
    (PF, PM, false),
    (SM, SM, true),
    (SM, PM, true),
    (SM, PF, true),
    (SM, SF, true),
    (SM, PN, true),
    (SF, SM, true),
    (SF, PF, true),
    (SF, PM, true),
    (SF, PN, false),
    (SF, SF, false),
];

const EXCLUDED: [(NpClass, NpClass); 8] =
    [(SF, PN), (PN, SF), (PN, PN), (SF, SF), (PF, PF), (PM, PM), (PM, PF), (PF, PM)];

/// The 17 accusative patterns.
pub fn wogli_patterns() -> Vec<Pattern> {
    EXTENDED
        .iter()
        .filter(|(_, _, acc)| *acc)
        .map(|&(s, o, _)| Pattern::new(s, o, Government::Accusative))
        .collect()
}

/// The 24 dative or ditransitive patterns.
///
/// # Panics
/// If called with [`Government::Accusative`].
pub fn extended_patterns(government: Government) -> Vec<Pattern> {
    assert!(government != Government::Accusative, "extended patterns are dative or ditransitive");
    EXTENDED.iter().map(|&(s, o, _)| Pattern::new(s, o, government)).collect()
}

/// The 8 accusative patterns left out because they yield ambiguous hypotheses.
pub fn excluded_patterns() -> Vec<Pattern> {
    EXCLUDED.iter().map(|&(s, o)| Pattern::new(s, o, Government::Accusative)).collect()
}

pub fn patterns_for(government: Government) -> Vec<Pattern> {
    match government {
        Government::Accusative => wogli_patterns(),
        g => extended_patterns(g),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NumberClass {
    AllSingular,
    SingularPlural,
}

pub fn classify_number(p: &Pattern) -> NumberClass {
    if p.subject.number() == Number::Sg && p.object.number() == Number::Sg {
        NumberClass::AllSingular
    } else {
        NumberClass::SingularPlural
    }
}

/// Ambiguity predicted from marking alone: under accusative government only
/// masculine singular common nouns mark case and only a number mismatch
/// changes the verb. Under dative government every determiner changes, so
/// only two bare proper names stay unmarked.
pub fn closed_form_ambiguous(p: &Pattern) -> bool {
    if p.government != Government::Accusative {
        return p.subject.is_proper() && p.object.is_proper();
    }
    p.subject.number() == p.object.number() && p.subject != NpClass::SingMasc && p.object != NpClass::SingMasc
}

/// How many representative lexicalizations of a pattern produce identical
/// swapped and reordered hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AmbiguityProfile {
    pub collisions: usize,
    pub lexicalizations: usize,
}

fn representatives(lex: &Lexicon, class: NpClass) -> Vec<NpSpec<'_>> {
    fn pick(list: &[NounEntry]) -> impl Iterator<Item = &NounEntry> {
        let strong = list.iter().filter(|n| !n.weak_declension).take(2);
        let weak = list.iter().filter(|n| n.weak_declension).take(2);
        strong.chain(weak)
    }
    match class {
        NpClass::ProperNoun => pick(&lex.masc_proper).chain(pick(&lex.fem_proper)).map(NpSpec::proper).collect(),
        _ => {
            let gender = class.gender().expect("common slot");
            let number = class.number();
            pick(lex.common(gender))
                .flat_map(|n| ArticleKind::admissible(number).iter().map(move |&a| NpSpec::common(n, number, a)))
                .collect()
        }
    }
}

/// Enumerates article kinds over a representative noun subset (strong and
/// weak heads of each inventory) with one verb of the pattern's government.
/// Every lexicon verb has distinct 3sg and 3pl forms, so one verb stands
/// for all.
pub fn ambiguity_profile(p: &Pattern, lex: &Lexicon) -> AmbiguityProfile {
    let mut profile = AmbiguityProfile { collisions: 0, lexicalizations: 0 };
    let Some(verb) = lex.verbs(p.government).first() else {
        return profile;
    };
    let direct_object = match p.government {
        Government::Ditransitive => {
            let category = verb.category.expect("ditransitive verbs carry a category");
            match lex.thing_nouns.iter().find(|t| t.categories.contains(category)) {
                Some(t) => Some(NpSpec::thing(t, ArticleKind::Def)),
                None => return profile,
            }
        }
        _ => None,
    };
    let subjects = representatives(lex, p.subject);
    let objects = representatives(lex, p.object);
    for subject in &subjects {
        for object in &objects {
            if subject.head_lemma() == object.head_lemma() {
                continue;
            }
            let instance = PremiseInstance {
                pattern: *p,
                subject: *subject,
                object: *object,
                verb,
                direct_object,
                seed_path: SeedPath::default(),
            };
            let (Ok(h1), Ok(h2)) = (derive_h1(&instance), derive_h2(&instance)) else {
                continue;
            };
            profile.lexicalizations += 1;
            if h1.text(Punctuation::Attached) == h2.text(Punctuation::Attached) {
                profile.collisions += 1;
            }
        }
    }
    profile
}

/// True when every lexicalization makes the swapped (non-entailed) and the
/// reordered (entailed) hypothesis identical strings.
pub fn is_ambiguous(p: &Pattern, lex: &Lexicon) -> bool {
    let profile = ambiguity_profile(p, lex);
    profile.lexicalizations > 0 && profile.collisions == profile.lexicalizations
}

/// One `name<TAB>government` line per pattern.
pub fn export_patterns(patterns: &[Pattern]) -> String {
    let mut out = String::new();
    for p in patterns {
        out.push_str(&p.name());
        out.push('\t');
        out.push_str(p.government.code());
        out.push('\n');
    }
    out
}
