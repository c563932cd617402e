//! Word inventories that drive generation.
//!
//! The on-disk encoding is a tab-separated document with a header line and
//! `#` comments. Each row starts with a class column (`verb`, `noun`,
//! `thing`); the remaining columns depend on the class:
//!
//! ```text
//! verb   lemma  form_3sg    form_3pl     ACC|DAT|DITRANS  category|-  symmetric
//! noun   lemma  plural|-    weak|strong|-  MASC|FEM       COMMON|PROPER  human
//! thing  lemma  SG|PL       -            MASC|FEM|NEUT    cat,cat,...
//! ```

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

/// The lexicon shipped with the crate.
pub const BUNDLED_LEXICON: &str = include_str!("../data/lexicon.tsv");

/// Header line expected as the first non-comment row.
pub const HEADER: &str = "class\tlemma\tform2\tform3\tattr1\tattr2\tattr3";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Government {
    Accusative,
    Dative,
    Ditransitive,
}

impl Government {
    pub fn code(self) -> &'static str {
        match self {
            Government::Accusative => "ACC",
            Government::Dative => "DAT",
            Government::Ditransitive => "DITRANS",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        match s {
            "ACC" | "ACCUSATIVE" => Some(Government::Accusative),
            "DAT" | "DATIVE" => Some(Government::Dative),
            "DITRANS" | "DITRANSITIVE" => Some(Government::Ditransitive),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemanticCategory {
    Giving,
    Taking,
    Sending,
    Communication,
    Secret,
}

impl SemanticCategory {
    pub const ALL: [SemanticCategory; 5] = [
        SemanticCategory::Giving,
        SemanticCategory::Taking,
        SemanticCategory::Sending,
        SemanticCategory::Communication,
        SemanticCategory::Secret,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemanticCategory::Giving => "giving",
            SemanticCategory::Taking => "taking",
            SemanticCategory::Sending => "sending",
            SemanticCategory::Communication => "communication",
            SemanticCategory::Secret => "secret",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

/// Set of semantic categories, stored as a bitmask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CategorySet(u8);

impl CategorySet {
    pub fn insert(&mut self, c: SemanticCategory) {
        self.0 |= c.bit();
    }

    pub fn contains(self, c: SemanticCategory) -> bool {
        self.0 & c.bit() != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = SemanticCategory> {
        SemanticCategory::ALL.into_iter().filter(move |c| self.contains(*c))
    }
}

impl FromIterator<SemanticCategory> for CategorySet {
    fn from_iter<I: IntoIterator<Item = SemanticCategory>>(iter: I) -> Self {
        let mut set = CategorySet::default();
        for c in iter {
            set.insert(c);
        }
        set
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Masc,
    Fem,
    Neut,
}

impl Gender {
    pub fn code(self) -> &'static str {
        match self {
            Gender::Masc => "MASC",
            Gender::Fem => "FEM",
            Gender::Neut => "NEUT",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        match s {
            "MASC" => Some(Gender::Masc),
            "FEM" => Some(Gender::Fem),
            "NEUT" => Some(Gender::Neut),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Number {
    Sg,
    Pl,
}

impl Number {
    pub fn code(self) -> &'static str {
        match self {
            Number::Sg => "SG",
            Number::Pl => "PL",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NounKind {
    Common,
    Proper,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbEntry {
    pub lemma: String,
    pub form_3sg: String,
    pub form_3pl: String,
    pub government: Government,
    pub category: Option<SemanticCategory>,
    pub symmetric: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NounEntry {
    /// Nominative singular.
    pub lemma: String,
    pub gender: Gender,
    /// `None` for proper names.
    pub plural_nom: Option<String>,
    pub weak_declension: bool,
    pub kind: NounKind,
    pub human: bool,
}

/// Direct object of a ditransitive verb.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThingNounEntry {
    pub lemma: String,
    pub gender: Gender,
    pub number: Number,
    pub categories: CategorySet,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    pub verbs_acc: Vec<VerbEntry>,
    pub verbs_dat: Vec<VerbEntry>,
    pub verbs_ditrans: Vec<VerbEntry>,
    pub masc_common: Vec<NounEntry>,
    pub fem_common: Vec<NounEntry>,
    pub masc_proper: Vec<NounEntry>,
    pub fem_proper: Vec<NounEntry>,
    pub thing_nouns: Vec<ThingNounEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LexiconErrorKind {
    MissingHeader,
    MissingField,
    TooManyFields,
    UnknownClass(String),
    InvalidValue(String),
    MissingCategory,
    UnexpectedCategory,
    DuplicateLemma(String),
}

/// Parse failure with its 1-based line number and column name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconError {
    pub line: usize,
    pub field: &'static str,
    pub kind: LexiconErrorKind,
}

impl fmt::Display for LexiconError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, field `{}`: ", self.line, self.field)?;
        match &self.kind {
            LexiconErrorKind::MissingHeader => write!(f, "expected header `{}`", HEADER.replace('\t', " ")),
            LexiconErrorKind::MissingField => f.write_str("missing field"),
            LexiconErrorKind::TooManyFields => f.write_str("too many fields"),
            LexiconErrorKind::UnknownClass(c) => write!(f, "unknown row class `{c}`"),
            LexiconErrorKind::InvalidValue(v) => write!(f, "invalid value `{v}`"),
            LexiconErrorKind::MissingCategory => f.write_str("ditransitive verb needs a semantic category"),
            LexiconErrorKind::UnexpectedCategory => {
                f.write_str("semantic category only allowed on ditransitive verbs")
            }
            LexiconErrorKind::DuplicateLemma(l) => write!(f, "duplicate lemma `{l}` in inventory"),
        }
    }
}

impl core::error::Error for LexiconError {}

const VERB_FIELDS: [&str; 7] = ["class", "lemma", "form_3sg", "form_3pl", "government", "category", "symmetric"];
const NOUN_FIELDS: [&str; 7] = ["class", "lemma", "plural_nom", "declension", "gender", "kind", "human"];
const THING_FIELDS: [&str; 6] = ["class", "lemma", "number", "form3", "gender", "categories"];

struct Row<'a> {
    line: usize,
    cols: Vec<&'a str>,
    names: &'static [&'static str],
}

impl<'a> Row<'a> {
    fn get(&self, i: usize) -> Result<&'a str, LexiconError> {
        match self.cols.get(i) {
            Some(v) if !v.is_empty() => Ok(v),
            _ => Err(self.err(i, LexiconErrorKind::MissingField)),
        }
    }

    fn err(&self, i: usize, kind: LexiconErrorKind) -> LexiconError {
        LexiconError { line: self.line, field: self.names[i], kind }
    }

    fn invalid(&self, i: usize) -> LexiconError {
        let v = self.cols.get(i).copied().unwrap_or_default();
        self.err(i, LexiconErrorKind::InvalidValue(v.to_string()))
    }

    fn check_width(&self) -> Result<(), LexiconError> {
        if self.cols.len() > self.names.len() {
            return Err(LexiconError {
                line: self.line,
                field: self.names[self.names.len() - 1],
                kind: LexiconErrorKind::TooManyFields,
            });
        }
        Ok(())
    }

    fn bool(&self, i: usize) -> Result<bool, LexiconError> {
        match self.get(i)? {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(self.invalid(i)),
        }
    }
}

/// Parses a lexicon document. No count or structural validation is run;
/// see [`validate_lexicon`].
pub fn load_lexicon(source: &str) -> Result<Lexicon, LexiconError> {
    let mut lex = Lexicon::default();
    let mut header_seen = false;
    let mut seen: BTreeSet<(u8, String)> = BTreeSet::new();

    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        let text = raw.trim_end_matches('\r');
        if text.trim().is_empty() || text.trim_start().starts_with('#') {
            continue;
        }
        if !header_seen {
            if text.split('\t').next() != Some("class") {
                return Err(LexiconError { line, field: "class", kind: LexiconErrorKind::MissingHeader });
            }
            header_seen = true;
            continue;
        }
        let cols: Vec<&str> = text.split('\t').map(str::trim).collect();
        let (inventory, lemma) = match cols[0] {
            "verb" => {
                let row = Row { line, cols, names: &VERB_FIELDS };
                let verb = parse_verb(&row)?;
                let slot = match verb.government {
                    Government::Accusative => 0,
                    Government::Dative => 1,
                    Government::Ditransitive => 2,
                };
                let lemma = verb.lemma.clone();
                match verb.government {
                    Government::Accusative => lex.verbs_acc.push(verb),
                    Government::Dative => lex.verbs_dat.push(verb),
                    Government::Ditransitive => lex.verbs_ditrans.push(verb),
                }
                ((slot, row), lemma)
            }
            "noun" => {
                let row = Row { line, cols, names: &NOUN_FIELDS };
                let noun = parse_noun(&row)?;
                let lemma = noun.lemma.clone();
                let slot = match (noun.gender, noun.kind) {
                    (Gender::Masc, NounKind::Common) => {
                        lex.masc_common.push(noun);
                        3
                    }
                    (Gender::Fem, NounKind::Common) => {
                        lex.fem_common.push(noun);
                        4
                    }
                    (Gender::Masc, NounKind::Proper) => {
                        lex.masc_proper.push(noun);
                        5
                    }
                    _ => {
                        lex.fem_proper.push(noun);
                        6
                    }
                };
                ((slot, row), lemma)
            }
            "thing" => {
                let row = Row { line, cols, names: &THING_FIELDS };
                let thing = parse_thing(&row)?;
                let lemma = thing.lemma.clone();
                lex.thing_nouns.push(thing);
                ((7, row), lemma)
            }
            other => {
                return Err(LexiconError {
                    line,
                    field: "class",
                    kind: LexiconErrorKind::UnknownClass(other.to_string()),
                })
            }
        };
        let (slot, row) = inventory;
        if !seen.insert((slot, lemma.clone())) {
            return Err(row.err(1, LexiconErrorKind::DuplicateLemma(lemma)));
        }
    }
    Ok(lex)
}

fn parse_verb(row: &Row<'_>) -> Result<VerbEntry, LexiconError> {
    row.check_width()?;
    let government = Government::from_code(row.get(4)?).ok_or_else(|| row.invalid(4))?;
    let category = match row.get(5)? {
        "-" => None,
        c => Some(SemanticCategory::from_name(c).ok_or_else(|| row.invalid(5))?),
    };
    match (government, category) {
        (Government::Ditransitive, None) => return Err(row.err(5, LexiconErrorKind::MissingCategory)),
        (Government::Accusative | Government::Dative, Some(_)) => {
            return Err(row.err(5, LexiconErrorKind::UnexpectedCategory))
        }
        _ => {}
    }
    Ok(VerbEntry {
        lemma: row.get(1)?.to_string(),
        form_3sg: row.get(2)?.to_string(),
        form_3pl: row.get(3)?.to_string(),
        government,
        category,
        symmetric: row.bool(6)?,
    })
}

fn parse_noun(row: &Row<'_>) -> Result<NounEntry, LexiconError> {
    row.check_width()?;
    let gender = match Gender::from_code(row.get(4)?) {
        Some(g @ (Gender::Masc | Gender::Fem)) => g,
        _ => return Err(row.invalid(4)),
    };
    let kind = match row.get(5)? {
        "COMMON" => NounKind::Common,
        "PROPER" => NounKind::Proper,
        _ => return Err(row.invalid(5)),
    };
    let plural_nom = match row.get(2)? {
        "-" => None,
        p => Some(p.to_string()),
    };
    let weak_declension = match row.get(3)? {
        "weak" => true,
        "strong" | "-" => false,
        _ => return Err(row.invalid(3)),
    };
    Ok(NounEntry {
        lemma: row.get(1)?.to_string(),
        gender,
        plural_nom,
        weak_declension,
        kind,
        human: row.bool(6)?,
    })
}

fn parse_thing(row: &Row<'_>) -> Result<ThingNounEntry, LexiconError> {
    row.check_width()?;
    let number = match row.get(2)? {
        "SG" => Number::Sg,
        "PL" => Number::Pl,
        _ => return Err(row.invalid(2)),
    };
    let gender = Gender::from_code(row.get(4)?).ok_or_else(|| row.invalid(4))?;
    let mut categories = CategorySet::default();
    for name in row.get(5)?.split(',') {
        categories.insert(SemanticCategory::from_name(name.trim()).ok_or_else(|| row.invalid(5))?);
    }
    Ok(ThingNounEntry { lemma: row.get(1)?.to_string(), gender, number, categories })
}

/// Writes the lexicon back out in the tab-separated encoding.
pub fn serialize_lexicon(lex: &Lexicon) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for v in lex.verbs_acc.iter().chain(&lex.verbs_dat).chain(&lex.verbs_ditrans) {
        out.push_str(&format!(
            "verb\t{}\t{}\t{}\t{}\t{}\t{}\n",
            v.lemma,
            v.form_3sg,
            v.form_3pl,
            v.government.code(),
            v.category.map_or("-", SemanticCategory::name),
            v.symmetric
        ));
    }
    for n in lex.masc_common.iter().chain(&lex.fem_common).chain(&lex.masc_proper).chain(&lex.fem_proper) {
        let declension = match (n.kind, n.weak_declension) {
            (_, true) => "weak",
            (NounKind::Common, false) => "strong",
            (NounKind::Proper, false) => "-",
        };
        out.push_str(&format!(
            "noun\t{}\t{}\t{}\t{}\t{}\t{}\n",
            n.lemma,
            n.plural_nom.as_deref().unwrap_or("-"),
            declension,
            n.gender.code(),
            match n.kind {
                NounKind::Common => "COMMON",
                NounKind::Proper => "PROPER",
            },
            n.human
        ));
    }
    for t in &lex.thing_nouns {
        let cats: Vec<&str> = t.categories.iter().map(SemanticCategory::name).collect();
        out.push_str(&format!(
            "thing\t{}\t{}\t-\t{}\t{}\n",
            t.lemma,
            t.number.code(),
            t.gender.code(),
            cats.join(",")
        ));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationProfile {
    /// Structural invariants plus the inventory sizes of the bundled lexicon.
    Full,
    /// Structural invariants only.
    Toy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SymmetricVerb { lemma: String },
    IdenticalVerbForms { lemma: String },
    CategoryMismatch { lemma: String },
    WeakNonMascCommon { lemma: String },
    ProperWithPlural { lemma: String },
    ProperWithArticleDeclension { lemma: String },
    CommonWithoutPlural { lemma: String },
    NonHuman { lemma: String },
    WrongInventory { lemma: String },
    EmptyCategories { lemma: String },
    VerbInTwoGovernments { lemma: String },
    NoDirectObject { lemma: String },
    Count { what: &'static str, expected: usize, found: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SymmetricVerb { lemma } => write!(f, "symmetric verb forbidden: {lemma}"),
            Violation::IdenticalVerbForms { lemma } => {
                write!(f, "verb {lemma} has identical 3sg and 3pl forms")
            }
            Violation::CategoryMismatch { lemma } => {
                write!(f, "verb {lemma}: semantic category must be present iff ditransitive")
            }
            Violation::WeakNonMascCommon { lemma } => {
                write!(f, "noun {lemma}: weak declension only for masculine common nouns")
            }
            Violation::ProperWithPlural { lemma } => write!(f, "proper name {lemma} has a plural form"),
            Violation::ProperWithArticleDeclension { lemma } => {
                write!(f, "proper name {lemma} is marked weak")
            }
            Violation::CommonWithoutPlural { lemma } => write!(f, "common noun {lemma} has no plural form"),
            Violation::NonHuman { lemma } => write!(f, "noun {lemma} in the human inventory is not human"),
            Violation::WrongInventory { lemma } => {
                write!(f, "noun {lemma} is filed under the wrong gender/kind inventory")
            }
            Violation::EmptyCategories { lemma } => {
                write!(f, "thing noun {lemma} has no compatible categories")
            }
            Violation::VerbInTwoGovernments { lemma } => {
                write!(f, "verb {lemma} appears in two government classes")
            }
            Violation::NoDirectObject { lemma } => {
                write!(f, "ditransitive verb {lemma} has no thing noun of its category")
            }
            Violation::Count { what, expected, found } => {
                write!(f, "expected {expected} {what}, found {found}")
            }
        }
    }
}

/// Result of [`validate_lexicon`]; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub const FULL_VERBS_ACC: usize = 50;
pub const FULL_VERBS_DAT: usize = 22;
pub const FULL_VERBS_DITRANS: usize = 21;
pub const FULL_MASC_COMMON: usize = 38;
pub const FULL_FEM_COMMON: usize = 24;
pub const FULL_MASC_PROPER: usize = 41;
pub const FULL_FEM_PROPER: usize = 41;
pub const FULL_NOUN_TYPES: usize = 144;
pub const FULL_SURFACE_FORMS: usize = 181;
pub const FULL_WEAK_NOUNS: usize = 6;
pub const FULL_THING_NOUNS: usize = 54;

pub fn validate_lexicon(lex: &Lexicon, profile: ValidationProfile) -> ValidationReport {
    let mut violations = Vec::new();

    let verb_lists = [
        (&lex.verbs_acc, Government::Accusative),
        (&lex.verbs_dat, Government::Dative),
        (&lex.verbs_ditrans, Government::Ditransitive),
    ];
    let mut verb_lemmas: BTreeSet<&str> = BTreeSet::new();
    for (list, government) in verb_lists {
        let mut local: BTreeSet<&str> = BTreeSet::new();
        for v in list.iter() {
            if v.symmetric {
                violations.push(Violation::SymmetricVerb { lemma: v.lemma.clone() });
            }
            if v.form_3sg == v.form_3pl {
                violations.push(Violation::IdenticalVerbForms { lemma: v.lemma.clone() });
            }
            let wants_category = government == Government::Ditransitive;
            if v.category.is_some() != wants_category || v.government != government {
                violations.push(Violation::CategoryMismatch { lemma: v.lemma.clone() });
            }
            local.insert(&v.lemma);
        }
        for lemma in &local {
            if !verb_lemmas.insert(lemma) {
                violations.push(Violation::VerbInTwoGovernments { lemma: (*lemma).to_string() });
            }
        }
    }

    let noun_lists = [
        (&lex.masc_common, Gender::Masc, NounKind::Common),
        (&lex.fem_common, Gender::Fem, NounKind::Common),
        (&lex.masc_proper, Gender::Masc, NounKind::Proper),
        (&lex.fem_proper, Gender::Fem, NounKind::Proper),
    ];
    for (list, gender, kind) in noun_lists {
        for n in list.iter() {
            let lemma = || n.lemma.clone();
            if n.gender != gender || n.kind != kind {
                violations.push(Violation::WrongInventory { lemma: lemma() });
            }
            if n.weak_declension && !(n.gender == Gender::Masc && n.kind == NounKind::Common) {
                violations.push(match n.kind {
                    NounKind::Proper => Violation::ProperWithArticleDeclension { lemma: lemma() },
                    NounKind::Common => Violation::WeakNonMascCommon { lemma: lemma() },
                });
            }
            match (n.kind, &n.plural_nom) {
                (NounKind::Proper, Some(_)) => violations.push(Violation::ProperWithPlural { lemma: lemma() }),
                (NounKind::Common, None) => violations.push(Violation::CommonWithoutPlural { lemma: lemma() }),
                _ => {}
            }
            if !n.human {
                violations.push(Violation::NonHuman { lemma: lemma() });
            }
        }
    }
    for t in &lex.thing_nouns {
        if t.categories.is_empty() {
            violations.push(Violation::EmptyCategories { lemma: t.lemma.clone() });
        }
    }
    for v in &lex.verbs_ditrans {
        let covered = v.category.is_some_and(|c| lex.thing_nouns.iter().any(|t| t.categories.contains(c)));
        if v.category.is_some() && !covered {
            violations.push(Violation::NoDirectObject { lemma: v.lemma.clone() });
        }
    }

    if profile == ValidationProfile::Full {
        let weak = lex.masc_common.iter().filter(|n| n.weak_declension).count();
        let noun_types =
            lex.masc_common.len() + lex.fem_common.len() + lex.masc_proper.len() + lex.fem_proper.len();
        let counts = [
            ("accusative verbs", FULL_VERBS_ACC, lex.verbs_acc.len()),
            ("dative verbs", FULL_VERBS_DAT, lex.verbs_dat.len()),
            ("ditransitive verbs", FULL_VERBS_DITRANS, lex.verbs_ditrans.len()),
            ("masculine common nouns", FULL_MASC_COMMON, lex.masc_common.len()),
            ("feminine common nouns", FULL_FEM_COMMON, lex.fem_common.len()),
            ("masculine proper names", FULL_MASC_PROPER, lex.masc_proper.len()),
            ("feminine proper names", FULL_FEM_PROPER, lex.fem_proper.len()),
            ("noun types", FULL_NOUN_TYPES, noun_types),
            ("noun surface forms", FULL_SURFACE_FORMS, surface_form_count(lex)),
            ("weak-declension nouns", FULL_WEAK_NOUNS, weak),
            ("thing nouns", FULL_THING_NOUNS, lex.thing_nouns.len()),
        ];
        for (what, expected, found) in counts {
            if expected != found {
                violations.push(Violation::Count { what, expected, found });
            }
        }
    }

    ValidationReport { violations }
}

/// Every distinct noun string a human argument can surface as in nominative
/// or accusative, singular or plural.
pub fn noun_surface_forms(lex: &Lexicon) -> BTreeSet<String> {
    use crate::morphology::{inflect_noun, Case};
    let mut forms = BTreeSet::new();
    for n in lex.masc_common.iter().chain(&lex.fem_common) {
        for number in [Number::Sg, Number::Pl] {
            for case in [Case::Nom, Case::Acc] {
                forms.insert(inflect_noun(n, number, case));
            }
        }
    }
    for n in lex.masc_proper.iter().chain(&lex.fem_proper) {
        forms.insert(n.lemma.clone());
    }
    forms
}

pub fn surface_form_count(lex: &Lexicon) -> usize {
    noun_surface_forms(lex).len()
}

impl Lexicon {
    /// Parses the bundled lexicon.
    pub fn bundled() -> Lexicon {
        load_lexicon(BUNDLED_LEXICON).expect("bundled lexicon parses")
    }

    pub fn verbs(&self, government: Government) -> &[VerbEntry] {
        match government {
            Government::Accusative => &self.verbs_acc,
            Government::Dative => &self.verbs_dat,
            Government::Ditransitive => &self.verbs_ditrans,
        }
    }

    pub fn common(&self, gender: Gender) -> &[NounEntry] {
        match gender {
            Gender::Masc => &self.masc_common,
            _ => &self.fem_common,
        }
    }

    pub fn proper(&self, gender: Gender) -> &[NounEntry] {
        match gender {
            Gender::Masc => &self.masc_proper,
            _ => &self.fem_proper,
        }
    }

    pub fn find_verb(&self, lemma: &str) -> Option<&VerbEntry> {
        self.verbs_acc.iter().chain(&self.verbs_dat).chain(&self.verbs_ditrans).find(|v| v.lemma == lemma)
    }

    pub fn find_noun(&self, lemma: &str) -> Option<&NounEntry> {
        self.masc_common
            .iter()
            .chain(&self.fem_common)
            .chain(&self.masc_proper)
            .chain(&self.fem_proper)
            .find(|n| n.lemma == lemma)
    }

    pub fn find_thing(&self, lemma: &str) -> Option<&ThingNounEntry> {
        self.thing_nouns.iter().find(|t| t.lemma == lemma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(rows: &[&str]) -> String {
        let mut s = String::from(HEADER);
        for r in rows {
            s.push('\n');
            s.push_str(r);
        }
        s
    }

    #[test]
    fn single_verb_row() {
        let lex = load_lexicon(&doc(&["verb\twarnen\twarnt\twarnen\tACC\t-\tfalse"])).unwrap();
        assert_eq!(lex.verbs_acc.len(), 1);
        assert_eq!(lex.verbs_acc[0].form_3sg, "warnt");
        assert!(lex.verbs_dat.is_empty());
    }

    #[test]
    fn empty_document_is_empty_lexicon() {
        assert_eq!(load_lexicon("").unwrap(), Lexicon::default());
        assert_eq!(load_lexicon("# only a comment\n\n").unwrap(), Lexicon::default());
        let report = validate_lexicon(&Lexicon::default(), ValidationProfile::Full);
        assert!(!report.is_valid());
    }

    #[test]
    fn ditransitive_without_category_fails() {
        let err = load_lexicon(&doc(&["verb\tgeben\tgibt\tgeben\tDITRANSITIVE\t-\tfalse"])).unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.field, "category");
        assert_eq!(err.kind, LexiconErrorKind::MissingCategory);
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = load_lexicon(&doc(&["# c", "noun\tArzt\tÄrzte\tstrong\tXX\tCOMMON\ttrue"])).unwrap_err();
        assert_eq!((err.line, err.field), (3, "gender"));
        let err = load_lexicon("verb\twarnen\twarnt\twarnen\tACC\t-\tfalse").unwrap_err();
        assert_eq!(err.kind, LexiconErrorKind::MissingHeader);
        let err = load_lexicon(&doc(&["adverb\toft"])).unwrap_err();
        assert!(matches!(err.kind, LexiconErrorKind::UnknownClass(_)));
    }

    #[test]
    fn duplicate_lemma_rejected_within_inventory() {
        let err = load_lexicon(&doc(&[
            "verb\twarnen\twarnt\twarnen\tACC\t-\tfalse",
            "verb\twarnen\twarnt\twarnen\tACC\t-\tfalse",
        ]))
        .unwrap_err();
        assert_eq!(err.line, 3);
        assert!(matches!(err.kind, LexiconErrorKind::DuplicateLemma(_)));
    }

    #[test]
    fn bundled_lexicon_is_valid() {
        let lex = Lexicon::bundled();
        let report = validate_lexicon(&lex, ValidationProfile::Full);
        assert!(report.is_valid(), "{:?}", report.violations);
        assert_eq!(surface_form_count(&lex), 181);
    }

    #[test]
    fn symmetric_verb_reported() {
        let lex = load_lexicon(&doc(&["verb\theiraten\theiratet\theiraten\tACC\t-\ttrue"])).unwrap();
        let report = validate_lexicon(&lex, ValidationProfile::Toy);
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].to_string().starts_with("symmetric verb forbidden"));
    }

    #[test]
    fn full_profile_counts() {
        let mut lex = Lexicon::bundled();
        lex.verbs_acc.pop();
        let report = validate_lexicon(&lex, ValidationProfile::Full);
        let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        assert_eq!(msgs, ["expected 50 accusative verbs, found 49"]);
        assert!(validate_lexicon(&lex, ValidationProfile::Toy).is_valid());
    }

    #[test]
    fn verb_in_two_governments() {
        let lex = load_lexicon(&doc(&[
            "verb\tfolgen\tfolgt\tfolgen\tACC\t-\tfalse",
            "verb\tfolgen\tfolgt\tfolgen\tDAT\t-\tfalse",
        ]))
        .unwrap();
        let report = validate_lexicon(&lex, ValidationProfile::Toy);
        assert_eq!(report.violations, [Violation::VerbInTwoGovernments { lemma: "folgen".into() }]);
    }

    #[test]
    fn ditransitive_verb_needs_a_direct_object() {
        let verb = "verb\tverraten\tverrät\tverraten\tDITRANS\tsecret\tfalse";
        let lex = load_lexicon(&doc(&[verb, "thing\tKuchen\tSG\t-\tMASC\tgiving"])).unwrap();
        let report = validate_lexicon(&lex, ValidationProfile::Toy);
        assert_eq!(report.violations, [Violation::NoDirectObject { lemma: "verraten".into() }]);
        let lex = load_lexicon(&doc(&[verb, "thing\tGeheimnis\tSG\t-\tNEUT\tsecret"])).unwrap();
        assert!(validate_lexicon(&lex, ValidationProfile::Toy).is_valid());
    }

    #[test]
    fn surface_forms_small_cases() {
        let lex = load_lexicon(&doc(&["noun\tMaria\t-\t-\tFEM\tPROPER\ttrue"])).unwrap();
        assert_eq!(surface_form_count(&lex), 1);
        let lex = load_lexicon(&doc(&["noun\tKunde\tKunden\tweak\tMASC\tCOMMON\ttrue"])).unwrap();
        // Kunde (nom sg), Kunden (acc sg, nom pl, acc pl)
        assert_eq!(surface_form_count(&lex), 2);
    }

    #[test]
    fn serialize_roundtrip_bundled() {
        let lex = Lexicon::bundled();
        assert_eq!(load_lexicon(&serialize_lexicon(&lex)).unwrap(), lex);
    }

    #[test]
    fn validation_is_pure() {
        let mut lex = Lexicon::bundled();
        lex.verbs_dat[0].symmetric = true;
        let a = validate_lexicon(&lex, ValidationProfile::Full);
        let b = validate_lexicon(&lex, ValidationProfile::Full);
        assert_eq!(a, b);
    }
}
