//! Serialized forms of decompositions.
//!
//! JSON: `{"s": <int|"inf">, "instance": "ahs"|"ao"|"au",
//! "terms": [{"word": [..], "mult": "<decimal>"}, ..]}` with terms in
//! lexicographic word order. CSV: one `word,mult` row per term, the word
//! written with `;` between letters.

use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::Decomposition;
use crate::word::{Alphabet, Letter, Modulus, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModulusField {
    Finite(u64),
    Named(String),
}

impl From<Modulus> for ModulusField {
    fn from(m: Modulus) -> Self {
        match m {
            Modulus::Finite(s) => ModulusField::Finite(s),
            Modulus::Infinite => ModulusField::Named("inf".into()),
        }
    }
}

impl TryFrom<&ModulusField> for Modulus {
    type Error = Error;

    fn try_from(f: &ModulusField) -> Result<Modulus> {
        match f {
            ModulusField::Finite(s) => Modulus::finite(*s as i64),
            ModulusField::Named(t) => Modulus::from_str(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub word: Vec<Letter>,
    pub mult: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub s: ModulusField,
    pub instance: String,
    pub terms: Vec<TermRecord>,
}

impl DecompositionRecord {
    /// `s` is the configured modulus; it is recorded as given even for the
    /// instances that do not use it.
    pub fn new(d: &Decomposition, s: Modulus, alphabet: &Alphabet) -> Self {
        DecompositionRecord {
            s: s.into(),
            instance: alphabet.tag().to_string(),
            terms: d
                .iter()
                .map(|(w, m)| TermRecord {
                    word: w.letters().to_vec(),
                    mult: m.to_string(),
                })
                .collect(),
        }
    }

    pub fn modulus(&self) -> Result<Modulus> {
        Modulus::try_from(&self.s)
    }

    pub fn decomposition(&self) -> Result<Decomposition> {
        let mut d = Decomposition::new();
        for t in &self.terms {
            let mult = BigUint::from_str(&t.mult).map_err(|_| Error::Parse {
                what: "multiplicity",
                input: t.mult.clone(),
                reason: "expected a nonnegative decimal integer".into(),
            })?;
            d.add(Word::new(t.word.clone()), mult);
        }
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            what: "decomposition JSON",
            input: text.chars().take(80).collect(),
            reason: e.to_string(),
        })
    }
}

/// Word cell for CSV output: letters joined by `;`, empty for the unit.
pub fn csv_word(w: &Word) -> String {
    w.letters().iter().map(i64::to_string).collect::<Vec<_>>().join(";")
}

/// Multi-line human-readable rendering, one term per line.
pub fn pretty(d: &Decomposition) -> String {
    let mut out = String::new();
    for (w, m) in d.iter() {
        out.push_str(&format!("{m} x ({w})\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::FusionEngine;

    #[test]
    fn json_shape() {
        let s3 = Modulus::Finite(3);
        let d = FusionEngine::reflection(s3).fuse(&Word::new([1]), &Word::new([2]));
        let rec = DecompositionRecord::new(&d, s3, &Alphabet::Reflection(s3));
        assert_eq!(
            rec.to_json(),
            r#"{"s":3,"instance":"ahs","terms":[{"word":[],"mult":"1"},{"word":[0],"mult":"1"},{"word":[1,2],"mult":"1"}]}"#
        );
        let inf = DecompositionRecord::new(&d, Modulus::Infinite, &Alphabet::Orthogonal);
        assert!(inf.to_json().starts_with(r#"{"s":"inf","instance":"ao""#));
    }

    #[test]
    fn round_trip() {
        let m = Modulus::Finite(2);
        let e = FusionEngine::reflection(m);
        let d = e
            .basic_tensor(&[1, 1, 0, 1, 0])
            .unwrap()
            .scaled(&BigUint::from(10u32).pow(30));
        let rec = DecompositionRecord::new(&d, m, e.alphabet());
        let back = DecompositionRecord::from_json(&rec.to_json()).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.decomposition().unwrap(), d);
        assert_eq!(back.modulus().unwrap(), m);
        let inf = DecompositionRecord::new(&d, Modulus::Infinite, e.alphabet());
        assert_eq!(
            DecompositionRecord::from_json(&inf.to_json())
                .unwrap()
                .modulus()
                .unwrap(),
            Modulus::Infinite
        );
        assert!(DecompositionRecord::from_json("{\"s\":2}").is_err());
    }

    #[test]
    fn text_cells() {
        assert_eq!(csv_word(&Word::new([1, -2])), "1;-2");
        assert_eq!(csv_word(&Word::empty()), "");
        let d = FusionEngine::reflection(Modulus::Finite(1)).fuse(&Word::new([0]), &Word::new([0]));
        assert_eq!(pretty(&d), "1 x ()\n1 x (0)\n1 x (0,0)\n");
    }
}
