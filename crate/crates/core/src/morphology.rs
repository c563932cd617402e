//! Articles, nouns, pronouns and verb agreement.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::lexicon::{Gender, NounEntry, NounKind, Number, ThingNounEntry, VerbEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Nom,
    Acc,
    Dat,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::Nom, Case::Acc, Case::Dat];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArticleKind {
    Def,
    Indef,
    Dem,
    /// Proper names and pronouns.
    None,
}

impl ArticleKind {
    /// Kinds available for a common noun of the given number.
    pub fn admissible(number: Number) -> &'static [ArticleKind] {
        match number {
            Number::Sg => &[ArticleKind::Def, ArticleKind::Indef, ArticleKind::Dem],
            Number::Pl => &[ArticleKind::Def, ArticleKind::Dem],
        }
    }

    /// Definite and demonstrative articles mark definiteness; so do proper
    /// names and pronouns, which carry no article.
    pub fn is_definite(self) -> bool {
        !matches!(self, ArticleKind::Indef)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphError {
    /// German has no plural indefinite article.
    IndefinitePlural,
    /// Dative personal pronouns are never generated.
    DativePronoun,
    ArticleOnProperName,
    PluralProperName,
    PronounWithArticle,
    MissingArticle,
}

impl fmt::Display for MorphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphError::IndefinitePlural => "indefinite article has no plural form",
            MorphError::DativePronoun => "dative personal pronouns are not supported",
            MorphError::ArticleOnProperName => "proper names take no article",
            MorphError::PluralProperName => "proper names are singular only",
            MorphError::PronounWithArticle => "pronouns take no article",
            MorphError::MissingArticle => "common nouns need an article",
        })
    }
}

impl core::error::Error for MorphError {}

/// One cell of the article paradigm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArticleCell {
    pub kind: ArticleKind,
    pub gender: Gender,
    pub number: Number,
    pub case: Case,
    pub form: &'static str,
}

macro_rules! cells {
    ($($kind:ident $gender:ident $number:ident: $nom:literal $acc:literal $dat:literal;)*) => {
        &[$(
            ArticleCell { kind: ArticleKind::$kind, gender: Gender::$gender, number: Number::$number, case: Case::Nom, form: $nom },
            ArticleCell { kind: ArticleKind::$kind, gender: Gender::$gender, number: Number::$number, case: Case::Acc, form: $acc },
            ArticleCell { kind: ArticleKind::$kind, gender: Gender::$gender, number: Number::$number, case: Case::Dat, form: $dat },
        )*]
    };
}

/// Full article paradigm. Plural forms do not depend on gender and are
/// listed once under `Masc`.
pub const ARTICLE_TABLE: &[ArticleCell] = cells! {
    Def Masc Sg: "der" "den" "dem";
    Def Fem Sg: "die" "die" "der";
    Def Neut Sg: "das" "das" "dem";
    Def Masc Pl: "die" "die" "den";
    Indef Masc Sg: "ein" "einen" "einem";
    Indef Fem Sg: "eine" "eine" "einer";
    Indef Neut Sg: "ein" "ein" "einem";
    Dem Masc Sg: "dieser" "diesen" "diesem";
    Dem Fem Sg: "diese" "diese" "dieser";
    Dem Neut Sg: "dieses" "dieses" "diesem";
    Dem Masc Pl: "diese" "diese" "diesen";
};

/// Personal pronoun paradigm, `(gender, number, case, form)`.
pub const PRONOUN_TABLE: &[(Gender, Number, Case, &str)] = &[
    (Gender::Masc, Number::Sg, Case::Nom, "er"),
    (Gender::Masc, Number::Sg, Case::Acc, "ihn"),
    (Gender::Fem, Number::Sg, Case::Nom, "sie"),
    (Gender::Fem, Number::Sg, Case::Acc, "sie"),
    (Gender::Neut, Number::Sg, Case::Nom, "es"),
    (Gender::Neut, Number::Sg, Case::Acc, "es"),
    (Gender::Masc, Number::Pl, Case::Nom, "sie"),
    (Gender::Masc, Number::Pl, Case::Acc, "sie"),
];

/// Returns `Ok(None)` for [`ArticleKind::None`].
pub fn inflect_article(
    kind: ArticleKind,
    gender: Gender,
    number: Number,
    case: Case,
) -> Result<Option<&'static str>, MorphError> {
    if kind == ArticleKind::None {
        return Ok(None);
    }
    if kind == ArticleKind::Indef && number == Number::Pl {
        return Err(MorphError::IndefinitePlural);
    }
    let gender = if number == Number::Pl { Gender::Masc } else { gender };
    let cell = ARTICLE_TABLE
        .iter()
        .find(|c| c.kind == kind && c.gender == gender && c.number == number && c.case == case)
        .expect("article table is total");
    Ok(Some(cell.form))
}

pub fn inflect_noun(noun: &NounEntry, number: Number, case: Case) -> String {
    if noun.kind == NounKind::Proper {
        return noun.lemma.clone();
    }
    match number {
        Number::Sg => {
            if noun.weak_declension && case != Case::Nom {
                let suffix = if noun.lemma.ends_with('e') { "n" } else { "en" };
                let mut form = noun.lemma.clone();
                form.push_str(suffix);
                form
            } else {
                noun.lemma.clone()
            }
        }
        Number::Pl => {
            let plural = noun.plural_nom.clone().unwrap_or_else(|| noun.lemma.clone());
            if case == Case::Dat && !plural.ends_with('n') {
                let mut form = plural;
                form.push('n');
                form
            } else {
                plural
            }
        }
    }
}

pub fn inflect_pronoun(gender: Gender, number: Number, case: Case) -> Result<&'static str, MorphError> {
    if case == Case::Dat {
        return Err(MorphError::DativePronoun);
    }
    let gender = if number == Number::Pl { Gender::Masc } else { gender };
    Ok(PRONOUN_TABLE
        .iter()
        .find(|(g, n, c, _)| *g == gender && *n == number && *c == case)
        .map(|cell| cell.3)
        .expect("pronoun table covers nom/acc"))
}

pub fn agree_verb(verb: &VerbEntry, subject_number: Number) -> &str {
    match subject_number {
        Number::Sg => &verb.form_3sg,
        Number::Pl => &verb.form_3pl,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Head<'a> {
    Noun(&'a NounEntry),
    Thing(&'a ThingNounEntry),
    Pronoun,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NpSpec<'a> {
    pub head: Head<'a>,
    pub gender: Gender,
    pub number: Number,
    pub article: ArticleKind,
}

impl<'a> NpSpec<'a> {
    pub fn proper(noun: &'a NounEntry) -> Self {
        NpSpec { head: Head::Noun(noun), gender: noun.gender, number: Number::Sg, article: ArticleKind::None }
    }

    pub fn common(noun: &'a NounEntry, number: Number, article: ArticleKind) -> Self {
        NpSpec { head: Head::Noun(noun), gender: noun.gender, number, article }
    }

    pub fn thing(thing: &'a ThingNounEntry, article: ArticleKind) -> Self {
        NpSpec { head: Head::Thing(thing), gender: thing.gender, number: thing.number, article }
    }

    pub fn pronoun(gender: Gender, number: Number) -> Self {
        NpSpec { head: Head::Pronoun, gender, number, article: ArticleKind::None }
    }

    pub fn check(&self) -> Result<(), MorphError> {
        match self.head {
            Head::Pronoun if self.article != ArticleKind::None => Err(MorphError::PronounWithArticle),
            Head::Noun(n) if n.kind == NounKind::Proper => {
                if self.article != ArticleKind::None {
                    Err(MorphError::ArticleOnProperName)
                } else if self.number != Number::Sg {
                    Err(MorphError::PluralProperName)
                } else {
                    Ok(())
                }
            }
            Head::Noun(_) | Head::Thing(_) if self.article == ArticleKind::None => Err(MorphError::MissingArticle),
            _ => Ok(()),
        }
    }

    /// Lemma of the head, or the nominative pronoun.
    pub fn head_lemma(&self) -> String {
        match self.head {
            Head::Noun(n) => n.lemma.clone(),
            Head::Thing(t) => t.lemma.clone(),
            Head::Pronoun => inflect_pronoun(self.gender, self.number, Case::Nom).unwrap_or("sie").to_string(),
        }
    }
}

/// What a surface token is an inflection of.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lemma {
    Article(ArticleKind),
    Noun(String),
    Verb(String),
    Pronoun(Gender, Number),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub lemma: Lemma,
}

/// Renders a noun phrase as lemma-annotated tokens.
pub fn render_np_tokens(spec: &NpSpec<'_>, case: Case) -> Result<Vec<Token>, MorphError> {
    spec.check()?;
    match spec.head {
        Head::Pronoun => Ok(vec![Token {
            surface: inflect_pronoun(spec.gender, spec.number, case)?.to_string(),
            lemma: Lemma::Pronoun(spec.gender, spec.number),
        }]),
        Head::Noun(noun) => {
            let mut tokens = Vec::with_capacity(2);
            if let Some(article) = inflect_article(spec.article, spec.gender, spec.number, case)? {
                tokens.push(Token { surface: article.to_string(), lemma: Lemma::Article(spec.article) });
            }
            tokens.push(Token {
                surface: inflect_noun(noun, spec.number, case),
                lemma: Lemma::Noun(noun.lemma.clone()),
            });
            Ok(tokens)
        }
        Head::Thing(thing) => {
            let article = inflect_article(spec.article, spec.gender, spec.number, case)?
                .ok_or(MorphError::MissingArticle)?;
            Ok(vec![
                Token { surface: article.to_string(), lemma: Lemma::Article(spec.article) },
                Token { surface: thing.lemma.clone(), lemma: Lemma::Noun(thing.lemma.clone()) },
            ])
        }
    }
}

pub fn render_np(spec: &NpSpec<'_>, case: Case) -> Result<Vec<String>, MorphError> {
    Ok(render_np_tokens(spec, case)?.into_iter().map(|t| t.surface).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::Lexicon;

    fn noun<'a>(lex: &'a Lexicon, lemma: &str) -> &'a NounEntry {
        lex.find_noun(lemma).unwrap()
    }

    #[test]
    fn article_cells() {
        use ArticleKind::*;
        let a = |k, g, n, c| inflect_article(k, g, n, c).unwrap().unwrap();
        assert_eq!(a(Def, Gender::Masc, Number::Sg, Case::Acc), "den");
        assert_eq!(a(Dem, Gender::Masc, Number::Sg, Case::Acc), "diesen");
        assert_eq!(a(Indef, Gender::Masc, Number::Sg, Case::Acc), "einen");
        assert_eq!(a(Indef, Gender::Masc, Number::Sg, Case::Dat), "einem");
        assert_eq!(a(Dem, Gender::Masc, Number::Pl, Case::Dat), "diesen");
        assert_eq!(a(Def, Gender::Fem, Number::Pl, Case::Dat), "den");
        assert_eq!(a(Def, Gender::Fem, Number::Sg, Case::Nom), "die");
        assert_eq!(a(Def, Gender::Fem, Number::Sg, Case::Acc), "die");
        assert_eq!(a(Def, Gender::Fem, Number::Sg, Case::Dat), "der");
        assert_eq!(a(Indef, Gender::Fem, Number::Sg, Case::Dat), "einer");
        assert_eq!(a(Def, Gender::Neut, Number::Sg, Case::Acc), "das");
        assert_eq!(inflect_article(None, Gender::Masc, Number::Sg, Case::Nom), Ok(Option::None));
        assert_eq!(
            inflect_article(Indef, Gender::Fem, Number::Pl, Case::Nom),
            Err(MorphError::IndefinitePlural)
        );
    }

    #[test]
    fn plural_articles_ignore_gender() {
        for kind in [ArticleKind::Def, ArticleKind::Dem] {
            for case in Case::ALL {
                let m = inflect_article(kind, Gender::Masc, Number::Pl, case).unwrap();
                let f = inflect_article(kind, Gender::Fem, Number::Pl, case).unwrap();
                assert_eq!(m, f);
            }
        }
    }

    #[test]
    fn noun_inflection() {
        let lex = Lexicon::bundled();
        assert_eq!(inflect_noun(noun(&lex, "Kunde"), Number::Sg, Case::Acc), "Kunden");
        assert_eq!(inflect_noun(noun(&lex, "Kunde"), Number::Sg, Case::Nom), "Kunde");
        assert_eq!(inflect_noun(noun(&lex, "Kunde"), Number::Pl, Case::Dat), "Kunden");
        assert_eq!(inflect_noun(noun(&lex, "Student"), Number::Sg, Case::Dat), "Studenten");
        assert_eq!(inflect_noun(noun(&lex, "Zeuge"), Number::Sg, Case::Acc), "Zeugen");
        assert_eq!(inflect_noun(noun(&lex, "Berater"), Number::Pl, Case::Dat), "Beratern");
        assert_eq!(inflect_noun(noun(&lex, "Arzt"), Number::Sg, Case::Acc), "Arzt");
        assert_eq!(inflect_noun(noun(&lex, "Arzt"), Number::Pl, Case::Dat), "Ärzten");
        assert_eq!(inflect_noun(noun(&lex, "Lehrerin"), Number::Pl, Case::Dat), "Lehrerinnen");
        assert_eq!(inflect_noun(noun(&lex, "Maria"), Number::Sg, Case::Dat), "Maria");
    }

    #[test]
    fn pronouns() {
        assert_eq!(inflect_pronoun(Gender::Masc, Number::Sg, Case::Nom), Ok("er"));
        assert_eq!(inflect_pronoun(Gender::Masc, Number::Sg, Case::Acc), Ok("ihn"));
        assert_eq!(inflect_pronoun(Gender::Fem, Number::Sg, Case::Nom), Ok("sie"));
        assert_eq!(inflect_pronoun(Gender::Fem, Number::Sg, Case::Acc), Ok("sie"));
        assert_eq!(inflect_pronoun(Gender::Masc, Number::Pl, Case::Nom), Ok("sie"));
        assert_eq!(inflect_pronoun(Gender::Fem, Number::Pl, Case::Acc), Ok("sie"));
        assert_eq!(inflect_pronoun(Gender::Masc, Number::Sg, Case::Dat), Err(MorphError::DativePronoun));
    }

    #[test]
    fn verb_agreement() {
        let lex = Lexicon::bundled();
        let v = |l| lex.find_verb(l).unwrap();
        assert_eq!(agree_verb(v("empfehlen"), Number::Sg), "empfiehlt");
        assert_eq!(agree_verb(v("empfehlen"), Number::Pl), "empfehlen");
        assert_eq!(agree_verb(v("warnen"), Number::Sg), "warnt");
        assert_eq!(agree_verb(v("geben"), Number::Pl), "geben");
        assert_eq!(agree_verb(v("geben"), Number::Sg), "gibt");
    }

    #[test]
    fn noun_phrases() {
        let lex = Lexicon::bundled();
        let arzt = NpSpec::common(noun(&lex, "Arzt"), Number::Sg, ArticleKind::Def);
        assert_eq!(render_np(&arzt, Case::Nom).unwrap(), ["der", "Arzt"]);
        let er = NpSpec::pronoun(Gender::Masc, Number::Sg);
        assert_eq!(render_np(&er, Case::Nom).unwrap(), ["er"]);
        let berater = NpSpec::common(noun(&lex, "Berater"), Number::Pl, ArticleKind::Dem);
        assert_eq!(render_np(&berater, Case::Dat).unwrap(), ["diesen", "Beratern"]);
        let maria = NpSpec::proper(noun(&lex, "Maria"));
        assert_eq!(render_np(&maria, Case::Acc).unwrap(), ["Maria"]);
        let kuchen = NpSpec::thing(lex.find_thing("Kuchen").unwrap(), ArticleKind::Def);
        assert_eq!(render_np(&kuchen, Case::Acc).unwrap(), ["den", "Kuchen"]);
    }

    #[test]
    fn invalid_specs() {
        let lex = Lexicon::bundled();
        let mut maria = NpSpec::proper(noun(&lex, "Maria"));
        maria.article = ArticleKind::Def;
        assert_eq!(render_np(&maria, Case::Nom), Err(MorphError::ArticleOnProperName));
        let bad = NpSpec::common(noun(&lex, "Arzt"), Number::Pl, ArticleKind::Indef);
        assert_eq!(render_np(&bad, Case::Nom), Err(MorphError::IndefinitePlural));
        let mut pron = NpSpec::pronoun(Gender::Fem, Number::Sg);
        pron.article = ArticleKind::Def;
        assert_eq!(render_np(&pron, Case::Nom), Err(MorphError::PronounWithArticle));
    }
}
