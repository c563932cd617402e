//! Dataset rows and their labels.

use alloc::string::String;

use serde::{Deserialize, Serialize};

use crate::lexicon::{Gender, Number};
use crate::morphology::ArticleKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "entailed")]
    Entailed,
    #[serde(rename = "non-entailed")]
    NotEntailed,
}

impl Label {
    pub fn name(self) -> &'static str {
        match self {
            Label::Entailed => "entailed",
            Label::NotEntailed => "non-entailed",
        }
    }

    /// Accepts both the two-class and the three-class vocabulary; neutral
    /// and contradiction collapse to non-entailed.
    pub fn parse(s: &str) -> Option<Label> {
        match s {
            "entailed" | "entailment" => Some(Label::Entailed),
            "non-entailed" | "not_entailed" | "neutral" | "contradiction" => Some(Label::NotEntailed),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HypKind {
    #[serde(rename = "H1-SO")]
    H1So,
    #[serde(rename = "H2-OS")]
    H2Os,
    #[serde(rename = "H3-OS")]
    H3Os,
    #[serde(rename = "H1-SiO")]
    H1Sio,
    #[serde(rename = "H2-iOS")]
    H2Ios,
}

impl HypKind {
    pub const ALL: [HypKind; 5] = [HypKind::H1So, HypKind::H2Os, HypKind::H3Os, HypKind::H1Sio, HypKind::H2Ios];

    pub fn name(self) -> &'static str {
        match self {
            HypKind::H1So => "H1-SO",
            HypKind::H2Os => "H2-OS",
            HypKind::H3Os => "H3-OS",
            HypKind::H1Sio => "H1-SiO",
            HypKind::H2Ios => "H2-iOS",
        }
    }

    pub fn parse(s: &str) -> Option<HypKind> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Short tag used in record ids.
    pub fn tag(self) -> &'static str {
        match self {
            HypKind::H1So => "h1",
            HypKind::H2Os => "h2",
            HypKind::H3Os => "h3",
            HypKind::H1Sio => "h1",
            HypKind::H2Ios => "h2",
        }
    }

    pub fn label(self) -> Label {
        match self {
            HypKind::H2Os | HypKind::H2Ios => Label::Entailed,
            _ => Label::NotEntailed,
        }
    }

    /// Hypotheses in canonical subject-first order.
    pub fn is_subject_first(self) -> bool {
        matches!(self, HypKind::H1So | HypKind::H1Sio)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeadKind {
    Common,
    Proper,
    Pronoun,
}

/// One premise argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgMeta {
    pub lemma: String,
    pub kind: HeadKind,
    pub gender: Gender,
    pub number: Number,
    pub article: ArticleKind,
    pub definite: bool,
}

/// Generation metadata. `subject` and `object` always refer to the roles in
/// the premise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairMeta {
    pub premise_id: String,
    pub pattern_index: usize,
    pub draw_index: usize,
    pub subject: ArgMeta,
    pub object: ArgMeta,
    pub verb_lemma: String,
    pub direct_object_lemma: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub id: String,
    pub subset: String,
    pub premise: String,
    pub hypothesis: String,
    pub label: Label,
    pub hyp_kind: HypKind,
    pub pattern: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<PairMeta>,
}

impl PairRecord {
    /// Identifier shared by all hypotheses of one premise.
    pub fn premise_key(&self) -> &str {
        match &self.meta {
            Some(m) => &m.premise_id,
            None => &self.premise,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_follow_kind() {
        for k in HypKind::ALL {
            let entailed = matches!(k, HypKind::H2Os | HypKind::H2Ios);
            assert_eq!(k.label() == Label::Entailed, entailed);
            assert_eq!(HypKind::parse(k.name()), Some(k));
        }
    }

    #[test]
    fn label_collapse() {
        assert_eq!(Label::parse("contradiction"), Some(Label::NotEntailed));
        assert_eq!(Label::parse("neutral"), Some(Label::NotEntailed));
        assert_eq!(Label::parse("entailment"), Some(Label::Entailed));
        assert_eq!(Label::parse("maybe"), None);
        for l in [Label::Entailed, Label::NotEntailed] {
            assert_eq!(Label::parse(l.name()), Some(l));
        }
    }
}
