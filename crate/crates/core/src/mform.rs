//! The `a`/`z` monoid formulation of the fusion rules.
//!
//! A word `i_1 … i_k` is sent to `a z^{i_1} a · a z^{i_2} a ⋯`, with `z^0`
//! removed and adjacent `a`-runs merged. On that monoid the fusion rule is
//!
//! ```text
//! v a z^i ⊗ z^j a w = v a z^{i+j} a w + δ_{s | i+j} v ⊗ w
//! ```
//!
//! which is unrolled iteratively here, since each step produces at most one
//! recursive call.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fusion::fuse_irreducibles;
use crate::word::{Alphabet, Letter, Modulus, Word};

/// Normal form `a^{e_0} z^{j_1} a^{e_1} ⋯ z^{j_m} a^{e_m}` with nonzero
/// twists `j_t`. The unit is `a^0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MForm {
    runs: Vec<u64>,
    twists: Vec<Letter>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    A,
    Z(Letter),
}

impl MForm {
    pub fn unit() -> Self {
        MForm {
            runs: vec![0],
            twists: Vec::new(),
        }
    }

    pub fn power(e: u64) -> Self {
        MForm {
            runs: vec![e],
            twists: Vec::new(),
        }
    }

    /// Builds a normal form from raw runs and twists, dropping zero twists
    /// (modulo `m`) and merging the runs around them.
    pub fn new(runs: Vec<u64>, twists: Vec<Letter>, m: Modulus) -> Result<Self> {
        if runs.len() != twists.len() + 1 {
            return Err(Error::ArityMismatch(format!(
                "{} a-runs for {} twists",
                runs.len(),
                twists.len()
            )));
        }
        let mut toks = Vec::new();
        for (t, &e) in runs.iter().enumerate() {
            toks.extend(std::iter::repeat_n(Tok::A, e as usize));
            if let Some(&j) = twists.get(t) {
                toks.push(Tok::Z(j));
            }
        }
        Ok(Self::from_tokens(&toks, m))
    }

    pub fn runs(&self) -> &[u64] {
        &self.runs
    }

    pub fn twists(&self) -> &[Letter] {
        &self.twists
    }

    pub fn is_unit(&self) -> bool {
        self.runs == [0]
    }

    pub fn a_count(&self) -> u64 {
        self.runs.iter().sum()
    }

    fn from_tokens(toks: &[Tok], m: Modulus) -> Self {
        let mut runs = vec![0u64];
        let mut twists = Vec::new();
        let mut pending: Option<Letter> = None;
        for &t in toks {
            match t {
                Tok::A => {
                    if let Some(j) = pending.take() {
                        let j = m.normalize(j);
                        if j != 0 {
                            twists.push(j);
                            runs.push(0);
                        }
                    }
                    *runs.last_mut().unwrap() += 1;
                }
                Tok::Z(j) => pending = Some(pending.unwrap_or(0) + j),
            }
        }
        if let Some(j) = pending {
            let j = m.normalize(j);
            if j != 0 {
                twists.push(j);
                runs.push(0);
            }
        }
        MForm { runs, twists }
    }

    fn tokens(&self) -> Vec<Tok> {
        let mut toks = Vec::new();
        for (t, &e) in self.runs.iter().enumerate() {
            toks.extend(std::iter::repeat_n(Tok::A, e as usize));
            if let Some(&j) = self.twists.get(t) {
                toks.push(Tok::Z(j));
            }
        }
        toks
    }

    /// Inverse of [`to_mform`]: reads the form as a product of `a z^i a`
    /// blocks. `None` when the form is not in that submonoid.
    pub fn to_word(&self) -> Option<Word> {
        let toks = self.tokens();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < toks.len() {
            if toks[i] != Tok::A {
                return None;
            }
            i += 1;
            let twist = match toks.get(i) {
                Some(Tok::Z(j)) => {
                    i += 1;
                    *j
                }
                _ => 0,
            };
            if toks.get(i) != Some(&Tok::A) {
                return None;
            }
            i += 1;
            letters.push(twist);
        }
        Some(Word(letters))
    }
}

impl fmt::Display for MForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("a^0");
        }
        let mut first = true;
        for (t, &e) in self.runs.iter().enumerate() {
            if e > 0 {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "a^{e}")?;
                first = false;
            }
            if let Some(j) = self.twists.get(t) {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "z^{j}")?;
                first = false;
            }
        }
        Ok(())
    }
}

pub fn to_mform(x: &Word, m: Modulus) -> MForm {
    let mut toks = Vec::with_capacity(3 * x.len());
    for &i in x.letters() {
        toks.push(Tok::A);
        toks.push(Tok::Z(i));
        toks.push(Tok::A);
    }
    MForm::from_tokens(&toks, m)
}

fn check_in_submonoid(p: &MForm) -> Result<()> {
    if p.is_unit() || p.to_word().is_some() {
        Ok(())
    } else {
        Err(Error::NotInSubmonoid(p.to_string()))
    }
}

/// Fusion on normal forms.
pub fn m_fuse(p: &MForm, q: &MForm, m: Modulus) -> Result<BTreeMap<MForm, BigUint>> {
    check_in_submonoid(p)?;
    check_in_submonoid(q)?;
    let mut out: BTreeMap<MForm, BigUint> = BTreeMap::new();
    let mut emit = |f: MForm| *out.entry(f).or_default() += BigUint::one();

    let mut left = p.tokens();
    let mut right: VecDeque<Tok> = q.tokens().into();
    loop {
        if left.is_empty() {
            emit(MForm::from_tokens(right.make_contiguous(), m));
            break;
        }
        if right.is_empty() {
            emit(MForm::from_tokens(&left, m));
            break;
        }
        let i = match left.last() {
            Some(Tok::Z(i)) => {
                let i = *i;
                left.pop();
                i
            }
            _ => 0,
        };
        let j = match right.front() {
            Some(Tok::Z(j)) => {
                let j = *j;
                right.pop_front();
                j
            }
            _ => 0,
        };
        if left.pop() != Some(Tok::A) || right.pop_front() != Some(Tok::A) {
            return Err(Error::NotInSubmonoid(format!("{p} ⊗ {q}")));
        }
        let twist = m.normalize(i + j);
        let mut term = left.clone();
        term.push(Tok::A);
        term.push(Tok::Z(twist));
        term.push(Tok::A);
        term.extend(right.iter().copied());
        emit(MForm::from_tokens(&term, m));
        if twist != 0 {
            break;
        }
    }
    Ok(out)
}

/// Outcome of comparing the word fusion rule with the normal-form rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulationReport {
    pub x: Word,
    pub y: Word,
    pub word_terms: usize,
    pub form_terms: usize,
    /// Distinct words of the word-side decomposition sharing one normal form.
    pub collisions: Vec<(Word, Word)>,
    /// Normal forms whose multiplicities differ between the two sides.
    pub mismatches: Vec<MForm>,
}

impl FormulationReport {
    pub fn matches(&self) -> bool {
        self.collisions.is_empty() && self.mismatches.is_empty()
    }
}

pub fn cross_check_formulations(x: &Word, y: &Word, m: Modulus) -> Result<FormulationReport> {
    let alphabet = Alphabet::Reflection(m);
    let by_words = fuse_irreducibles(x, y, &alphabet);
    let by_forms = m_fuse(&to_mform(x, m), &to_mform(y, m), m)?;

    let mut mapped: BTreeMap<MForm, (Word, BigUint)> = BTreeMap::new();
    let mut collisions = Vec::new();
    for (w, mult) in by_words.iter() {
        let f = to_mform(w, m);
        match mapped.get(&f) {
            Some((prev, _)) => collisions.push((prev.clone(), w.clone())),
            None => {
                mapped.insert(f, (w.clone(), mult.clone()));
            }
        }
    }
    let mut mismatches = Vec::new();
    for (f, (_, mult)) in &mapped {
        if by_forms.get(f) != Some(mult) {
            mismatches.push(f.clone());
        }
    }
    for f in by_forms.keys() {
        if !mapped.contains_key(f) {
            mismatches.push(f.clone());
        }
    }
    Ok(FormulationReport {
        x: x.clone(),
        y: y.clone(),
        word_terms: by_words.len(),
        form_terms: by_forms.len(),
        collisions,
        mismatches,
    })
}
