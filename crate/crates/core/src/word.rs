//! Words over a fusion alphabet.
//!
//! A [`Word`] labels an irreducible corepresentation. The alphabet decides
//! which letters exist, how a single letter is conjugated, and whether two
//! boundary letters fuse into one. Three alphabets are provided through
//! [`Alphabet`]: the reflection alphabet `Z_s` (or `Z`), the one-letter
//! orthogonal alphabet and the two-letter unitary alphabet.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Letter = i64;

/// Order of the cyclic group the letters live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Modulus {
    Finite(u64),
    Infinite,
}

impl Modulus {
    pub fn finite(s: i64) -> Result<Self> {
        if s >= 1 {
            Ok(Modulus::Finite(s as u64))
        } else {
            Err(Error::InvalidModulus(s))
        }
    }

    /// Canonical residue of `raw`: in `0..s` for finite moduli, unchanged otherwise.
    pub fn normalize(self, raw: i64) -> Letter {
        match self {
            Modulus::Finite(s) => raw.rem_euclid(s as i64),
            Modulus::Infinite => raw,
        }
    }

    /// Whether `value` vanishes in `Z_s` (exactly zero when infinite).
    pub fn divides(self, value: i128) -> bool {
        match self {
            Modulus::Finite(s) => value.rem_euclid(s as i128) == 0,
            Modulus::Infinite => value == 0,
        }
    }

    pub fn contains(self, letter: Letter) -> bool {
        match self {
            Modulus::Finite(s) => letter >= 0 && (letter as u64) < s,
            Modulus::Infinite => true,
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Finite(s) => write!(f, "{s}"),
            Modulus::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Modulus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(Modulus::Infinite);
        }
        let v: i64 = t.parse().map_err(|e: std::num::ParseIntError| Error::Parse {
            what: "modulus",
            input: s.to_string(),
            reason: e.to_string(),
        })?;
        Modulus::finite(v)
    }
}

/// Letter data of a free fusion semiring: a set with an involution and a
/// partial fusion map.
pub trait FusionAlphabet {
    fn contains(&self, letter: Letter) -> bool;

    fn involute_letter(&self, letter: Letter) -> Letter;

    /// `None` plays the role of the empty fusion.
    fn fuse_letters(&self, left: Letter, right: Letter) -> Option<Letter>;

    fn name(&self) -> &'static str;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `Z_s` with `r -> -r` and `(r, t) -> r + t`.
    Reflection(Modulus),
    /// A single letter `1`, self-conjugate, never fusing.
    Orthogonal,
    /// `Z_2` with `r -> 1 - r`, never fusing.
    Unitary,
}

/// The only letter of the orthogonal alphabet.
pub const ORTHOGONAL_LETTER: Letter = 1;

impl Alphabet {
    pub fn reflection(m: Modulus) -> Self {
        Alphabet::Reflection(m)
    }

    pub fn modulus(&self) -> Option<Modulus> {
        match self {
            Alphabet::Reflection(m) => Some(*m),
            _ => None,
        }
    }

    /// Short instance tag used by the JSON schema and the CLI.
    pub fn tag(&self) -> &'static str {
        match self {
            Alphabet::Reflection(_) => "ahs",
            Alphabet::Orthogonal => "ao",
            Alphabet::Unitary => "au",
        }
    }

    /// Letters to draw from when sampling words. For `Z` this is the window
    /// `-radius..=radius`.
    pub fn sample_letters(&self, radius: i64) -> Vec<Letter> {
        match self {
            Alphabet::Reflection(Modulus::Finite(s)) => (0..*s as i64).collect(),
            Alphabet::Reflection(Modulus::Infinite) => (-radius..=radius).collect(),
            Alphabet::Orthogonal => vec![ORTHOGONAL_LETTER],
            Alphabet::Unitary => vec![0, 1],
        }
    }

    /// Validates raw parsed integers, normalizing residues for `Z_s`.
    pub fn word_from_raw(&self, raw: &[i64]) -> Result<Word> {
        let letters = raw
            .iter()
            .map(|&r| match self {
                Alphabet::Reflection(m) => Ok(m.normalize(r)),
                _ if self.contains(r) => Ok(r),
                _ => Err(Error::InvalidLetter {
                    letter: r,
                    alphabet: self.name(),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word(letters))
    }
}

impl FusionAlphabet for Alphabet {
    fn contains(&self, letter: Letter) -> bool {
        match self {
            Alphabet::Reflection(m) => m.contains(letter),
            Alphabet::Orthogonal => letter == ORTHOGONAL_LETTER,
            Alphabet::Unitary => letter == 0 || letter == 1,
        }
    }

    fn involute_letter(&self, letter: Letter) -> Letter {
        match self {
            Alphabet::Reflection(m) => m.normalize(-letter),
            Alphabet::Orthogonal => letter,
            Alphabet::Unitary => 1 - letter,
        }
    }

    fn fuse_letters(&self, left: Letter, right: Letter) -> Option<Letter> {
        match self {
            Alphabet::Reflection(m) => Some(m.normalize(left + right)),
            Alphabet::Orthogonal | Alphabet::Unitary => None,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Alphabet::Reflection(_) => "reflection",
            Alphabet::Orthogonal => "orthogonal",
            Alphabet::Unitary => "unitary",
        }
    }
}

pub fn normalize_letter(raw: i64, m: Modulus) -> Letter {
    m.normalize(raw)
}

/// A finite word; the empty word labels the trivial corepresentation.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

/// One way of writing `x = v z` and `y = involute(z) w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub v: Word,
    pub z: Word,
    pub w: Word,
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: impl Into<Vec<Letter>>) -> Self {
        Word(letters.into())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_valid_for(&self, a: &impl FusionAlphabet) -> bool {
        self.0.iter().all(|&l| a.contains(l))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Reverses the word and conjugates every letter.
    pub fn involute(&self, a: &impl FusionAlphabet) -> Word {
        Word(self.0.iter().rev().map(|&l| a.involute_letter(l)).collect())
    }

    /// Fuses the last letter of `self` with the first letter of `other`.
    pub fn dot(&self, other: &Word, a: &impl FusionAlphabet) -> Option<Word> {
        let (&last, head) = self.0.split_last()?;
        let (&first, tail) = other.0.split_first()?;
        let fused = a.fuse_letters(last, first)?;
        let mut v = Vec::with_capacity(self.len() + other.len() - 1);
        v.extend_from_slice(head);
        v.push(fused);
        v.extend_from_slice(tail);
        Some(Word(v))
    }

    /// All splittings `x = v z`, `y = involute(z) w`, by increasing `|z|`.
    pub fn splittings(&self, y: &Word, a: &impl FusionAlphabet) -> Vec<Splitting> {
        let x = &self.0;
        let mut out = Vec::new();
        for len in 0..=x.len().min(y.len()) {
            let cut = x.len() - len;
            // involute(z) is a prefix of y iff y[t] = conj(z[len-1-t])
            let matches = (0..len).all(|t| y.0[t] == a.involute_letter(x[x.len() - 1 - t]));
            if !matches {
                // the involute of any longer suffix starts with involute(z)
                break;
            }
            out.push(Splitting {
                v: Word(x[..cut].to_vec()),
                z: Word(x[cut..].to_vec()),
                w: Word(y.0[len..].to_vec()),
            });
        }
        out
    }
}

pub fn enumerate_splittings(x: &Word, y: &Word, a: &impl FusionAlphabet) -> Vec<Splitting> {
    x.splittings(y, a)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses comma-separated integers; the empty string is the empty word.
/// Letters are not normalized; see [`Alphabet::word_from_raw`].
pub fn parse_letters(text: &str) -> Result<Vec<i64>> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|part| {
            part.trim().parse::<i64>().map_err(|e| Error::Parse {
                what: "word",
                input: text.to_string(),
                reason: e.to_string(),
            })
        })
        .collect()
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_letters(s).map(Word)
    }
}
