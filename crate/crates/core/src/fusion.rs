//! Tensor-product decomposition of irreducibles.
//!
//! For words `x` and `y` the product is
//!
//! ```text
//! r_x ⊗ r_y = Σ_{x = v z, y = z̄ w}  r_{vw} + r_{v·w}
//! ```
//!
//! where the second term is dropped whenever `v·w` is undefined. The
//! reflection alphabet additionally ties irreducibles to the basic
//! corepresentations through `u_i = r_i + δ_{i0}·1`, which gives the
//! expansions of `u_{i_1} ⊗ … ⊗ u_{i_k}` used for trivial multiplicities and
//! Hom dimensions.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::word::{Alphabet, FusionAlphabet, Letter, Modulus, Word};

/// A direct sum of irreducibles: word → positive multiplicity, in
/// lexicographic word order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    terms: BTreeMap<Word, BigUint>,
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(x: Word) -> Self {
        let mut d = Self::new();
        d.add(x, BigUint::one());
        d
    }

    pub fn trivial() -> Self {
        Self::single(Word::empty())
    }

    pub fn add(&mut self, x: Word, mult: BigUint) {
        if mult.is_zero() {
            return;
        }
        *self.terms.entry(x).or_default() += mult;
    }

    pub fn add_decomposition(&mut self, other: &Decomposition) {
        for (x, m) in &other.terms {
            self.add(x.clone(), m.clone());
        }
    }

    pub fn mult(&self, x: &Word) -> BigUint {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn trivial_mult(&self) -> BigUint {
        self.mult(&Word::empty())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &BigUint)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all multiplicities.
    pub fn total_mult(&self) -> BigUint {
        self.terms.values().sum()
    }

    pub fn scaled(&self, k: &BigUint) -> Decomposition {
        let mut out = Decomposition::new();
        for (x, m) in &self.terms {
            out.add(x.clone(), m * k);
        }
        out
    }
}

impl FromIterator<(Word, BigUint)> for Decomposition {
    fn from_iter<I: IntoIterator<Item = (Word, BigUint)>>(iter: I) -> Self {
        let mut d = Decomposition::new();
        for (x, m) in iter {
            d.add(x, m);
        }
        d
    }
}

/// Signed combination of tensor products `u_{i_1} ⊗ … ⊗ u_{i_l}`, keyed by
/// the index sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VirtualDecomposition {
    terms: BTreeMap<Vec<Letter>, BigInt>,
}

impl VirtualDecomposition {
    pub fn add(&mut self, indices: Vec<Letter>, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(indices.clone()).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&indices);
        }
    }

    pub fn coeff(&self, indices: &[Letter]) -> BigInt {
        self.terms.get(indices).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Letter>, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of negative coefficients.
    pub fn negative_terms(&self) -> usize {
        self.terms.values().filter(|c| c.is_negative()).count()
    }
}

pub fn fuse_irreducibles(x: &Word, y: &Word, a: &impl FusionAlphabet) -> Decomposition {
    let mut out = Decomposition::new();
    for sp in x.splittings(y, a) {
        out.add(sp.v.concat(&sp.w), BigUint::one());
        if let Some(d) = sp.v.dot(&sp.w, a) {
            out.add(d, BigUint::one());
        }
    }
    out
}

/// Bilinear extension of [`fuse_irreducibles`].
pub fn fuse_decompositions(p: &Decomposition, q: &Decomposition, a: &impl FusionAlphabet) -> Decomposition {
    let mut out = Decomposition::new();
    for (x, mx) in p.iter() {
        for (y, my) in q.iter() {
            let k = mx * my;
            for (t, mt) in fuse_irreducibles(x, y, a).iter() {
                out.add(t.clone(), mt * &k);
            }
        }
    }
    out
}

/// Fusion engine for one alphabet, with a prefix cache for the
/// basic-corepresentation expansions.
#[derive(Debug)]
pub struct FusionEngine {
    alphabet: Alphabet,
    basic_cache: Mutex<HashMap<Vec<Letter>, Decomposition>>,
}

impl Clone for FusionEngine {
    fn clone(&self) -> Self {
        FusionEngine::new(self.alphabet)
    }
}

impl FusionEngine {
    pub fn new(alphabet: Alphabet) -> Self {
        FusionEngine {
            alphabet,
            basic_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn reflection(m: Modulus) -> Self {
        Self::new(Alphabet::Reflection(m))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn modulus(&self) -> Result<Modulus> {
        self.alphabet
            .modulus()
            .ok_or(Error::NotReflection(self.alphabet.name()))
    }

    pub fn fuse(&self, x: &Word, y: &Word) -> Decomposition {
        fuse_irreducibles(x, y, &self.alphabet)
    }

    pub fn fuse_all(&self, p: &Decomposition, q: &Decomposition) -> Decomposition {
        fuse_decompositions(p, q, &self.alphabet)
    }

    /// `u_i` as a decomposition: `r_i`, plus the trivial summand when `i ≡ 0`.
    pub fn basic(&self, index: Letter) -> Result<Decomposition> {
        let m = self.modulus()?;
        let i = m.normalize(index);
        let mut d = Decomposition::single(Word::new([i]));
        if i == 0 {
            d.add(Word::empty(), BigUint::one());
        }
        Ok(d)
    }

    /// Decomposition of `u_{i_1} ⊗ … ⊗ u_{i_k}` into irreducibles.
    pub fn basic_tensor(&self, indices: &[Letter]) -> Result<Decomposition> {
        let m = self.modulus()?;
        let key: Vec<Letter> = indices.iter().map(|&i| m.normalize(i)).collect();
        self.basic_tensor_normalized(&key)
    }

    fn basic_tensor_normalized(&self, key: &[Letter]) -> Result<Decomposition> {
        let Some((&last, prefix)) = key.split_last() else {
            return Ok(Decomposition::trivial());
        };
        if let Some(hit) = self.basic_cache.lock().unwrap().get(key) {
            return Ok(hit.clone());
        }
        let head = self.basic_tensor_normalized(prefix)?;
        let result = self.fuse_all(&head, &self.basic(last)?);
        self.basic_cache.lock().unwrap().insert(key.to_vec(), result.clone());
        Ok(result)
    }

    /// `#(1 ∈ u_{i_1} ⊗ … ⊗ u_{i_k})`.
    pub fn trivial_multiplicity(&self, indices: &[Letter]) -> Result<BigUint> {
        Ok(self.basic_tensor(indices)?.trivial_mult())
    }

    /// `dim Hom(u_upper, u_lower)`, computed through Frobenius duality and
    /// cross-checked against `Σ_z mult_z(upper)·mult_z(lower)`.
    pub fn hom_dimension(&self, upper: &[Letter], lower: &[Letter]) -> Result<BigUint> {
        let m = self.modulus()?;
        let mut rotated: Vec<Letter> = upper.to_vec();
        rotated.extend(lower.iter().rev().map(|&j| m.normalize(-j)));
        let via_duality = self.trivial_multiplicity(&rotated)?;

        let up = self.basic_tensor(upper)?;
        let low = self.basic_tensor(lower)?;
        let via_pairing: BigUint = up.iter().map(|(z, mz)| mz * low.mult(z)).sum();
        if via_duality != via_pairing {
            return Err(Error::Disagreement(format!(
                "Hom({upper:?}, {lower:?}): duality gives {via_duality}, pairing gives {via_pairing}"
            )));
        }
        Ok(via_duality)
    }

    /// Expresses `r_x` as a signed combination of tensor products of basic
    /// corepresentations.
    ///
    /// Uses `r_{i_1} ⊗ r_{i_2…i_k} = r_x + r_{(i_1+i_2) i_3…i_k} + δ_{i_1+i_2,0} r_{i_3…i_k}`
    /// to write `r_x` over tensor products of the `r_i`, then substitutes
    /// `r_i = u_i − δ_{i0}·1`.
    pub fn irreducible_in_tensor_basis(&self, x: &Word) -> Result<VirtualDecomposition> {
        let m = self.modulus()?;
        let letters: Vec<Letter> = x.letters().iter().map(|&i| m.normalize(i)).collect();
        let mut memo = HashMap::new();
        let over_r = r_tensor_expansion(&letters, m, &mut memo);

        let mut out = VirtualDecomposition::default();
        for (seq, coeff) in over_r {
            let zeros: Vec<usize> = (0..seq.len()).filter(|&t| seq[t] == 0).collect();
            // each r_0 factor is u_0 − 1: pick a subset of zero slots to drop
            for mask in 0u64..(1u64 << zeros.len()) {
                let dropped = mask.count_ones();
                let kept: Vec<Letter> = seq
                    .iter()
                    .enumerate()
                    .filter(|(t, _)| match zeros.iter().position(|z| z == t) {
                        Some(bit) => mask & (1 << bit) == 0,
                        None => true,
                    })
                    .map(|(_, &l)| l)
                    .collect();
                let sign = if dropped % 2 == 0 {
                    coeff.clone()
                } else {
                    -coeff.clone()
                };
                out.add(kept, sign);
            }
        }
        Ok(out)
    }

    /// Expands a virtual decomposition back into irreducibles. Returns the
    /// signed multiplicities.
    pub fn expand_virtual(&self, v: &VirtualDecomposition) -> Result<BTreeMap<Word, BigInt>> {
        let mut acc: BTreeMap<Word, BigInt> = BTreeMap::new();
        for (seq, coeff) in v.iter() {
            for (w, m) in self.basic_tensor(seq)?.iter() {
                *acc.entry(w.clone()).or_default() += coeff * BigInt::from(m.clone());
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(acc)
    }
}

/// `r_x` as a signed combination of `r_{j_1} ⊗ … ⊗ r_{j_l}`.
fn r_tensor_expansion(
    x: &[Letter],
    m: Modulus,
    memo: &mut HashMap<Vec<Letter>, BTreeMap<Vec<Letter>, BigInt>>,
) -> BTreeMap<Vec<Letter>, BigInt> {
    if x.len() <= 1 {
        return BTreeMap::from([(x.to_vec(), BigInt::one())]);
    }
    if let Some(hit) = memo.get(x) {
        return hit.clone();
    }
    let mut out: BTreeMap<Vec<Letter>, BigInt> = BTreeMap::new();
    let mut push = |seq: Vec<Letter>, c: BigInt| {
        let e = out.entry(seq).or_default();
        *e += c;
    };

    for (seq, c) in r_tensor_expansion(&x[1..], m, memo) {
        let mut s = Vec::with_capacity(seq.len() + 1);
        s.push(x[0]);
        s.extend(seq);
        push(s, c);
    }
    let head = m.normalize(x[0] + x[1]);
    let mut merged = vec![head];
    merged.extend_from_slice(&x[2..]);
    for (seq, c) in r_tensor_expansion(&merged, m, memo) {
        push(seq, -c);
    }
    if head == 0 {
        for (seq, c) in r_tensor_expansion(&x[2..], m, memo) {
            push(seq, -c);
        }
    }
    out.retain(|_, c| !c.is_zero());
    memo.insert(x.to_vec(), out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[i64]) -> Word {
        Word::new(l.to_vec())
    }

    fn dec(terms: &[(&[i64], u32)]) -> Decomposition {
        terms.iter().map(|(x, m)| (w(x), BigUint::from(*m))).collect()
    }

    fn z(s: u64) -> Alphabet {
        Alphabet::Reflection(Modulus::Finite(s))
    }

    #[test]
    fn fuse_examples() {
        assert_eq!(
            fuse_irreducibles(&w(&[0]), &w(&[0]), &z(1)),
            dec(&[(&[0, 0], 1), (&[0], 1), (&[], 1)])
        );
        assert_eq!(
            fuse_irreducibles(&w(&[1]), &w(&[2]), &z(3)),
            dec(&[(&[1, 2], 1), (&[0], 1), (&[], 1)])
        );
        assert_eq!(fuse_irreducibles(&w(&[]), &w(&[1, 2]), &z(3)), dec(&[(&[1, 2], 1)]));
    }

    #[test]
    fn bilinear_examples() {
        let q = dec(&[(&[1, 2], 1), (&[0], 3)]);
        assert_eq!(fuse_decompositions(&Decomposition::trivial(), &q, &z(3)), q);
        assert_eq!(
            fuse_decompositions(&dec(&[(&[0], 2)]), &dec(&[(&[0], 1)]), &z(1)),
            dec(&[(&[0, 0], 2), (&[0], 2), (&[], 2)])
        );
        assert_eq!(
            fuse_decompositions(&dec(&[(&[1], 1), (&[], 1)]), &dec(&[(&[2], 1)]), &z(3)),
            dec(&[(&[1, 2], 1), (&[0], 1), (&[], 1), (&[2], 1)])
        );
    }

    #[test]
    fn basic_tensor_examples() {
        for s in [1, 2, 3, 7] {
            let e = FusionEngine::reflection(Modulus::Finite(s));
            assert_eq!(e.basic_tensor(&[0]).unwrap(), dec(&[(&[0], 1), (&[], 1)]));
            assert_eq!(e.basic_tensor(&[]).unwrap(), Decomposition::trivial());
        }
        let e3 = FusionEngine::reflection(Modulus::Finite(3));
        assert_eq!(e3.basic_tensor(&[1]).unwrap(), dec(&[(&[1], 1)]));
        let e2 = FusionEngine::reflection(Modulus::Finite(2));
        assert_eq!(
            e2.basic_tensor(&[1, 1]).unwrap(),
            dec(&[(&[1, 1], 1), (&[0], 1), (&[], 1)])
        );
        // indices are read modulo s
        assert_eq!(e3.basic_tensor(&[4]).unwrap(), dec(&[(&[1], 1)]));
    }

    #[test]
    fn trivial_multiplicity_examples() {
        let e3 = FusionEngine::reflection(Modulus::Finite(3));
        assert_eq!(e3.trivial_multiplicity(&[1]).unwrap(), BigUint::zero());
        assert_eq!(e3.trivial_multiplicity(&[0]).unwrap(), BigUint::one());
        let e2 = FusionEngine::reflection(Modulus::Finite(2));
        assert_eq!(e2.trivial_multiplicity(&[1, 1, 1, 1]).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn hom_dimension_table() {
        for s in [2u64, 3, 5] {
            let e = FusionEngine::reflection(Modulus::Finite(s));
            for i in 0..s as i64 {
                for j in 0..s as i64 {
                    let want = if i != j {
                        0u32
                    } else if i != 0 {
                        1
                    } else {
                        2
                    };
                    assert_eq!(e.hom_dimension(&[i], &[j]).unwrap(), BigUint::from(want));
                }
            }
        }
    }

    #[test]
    fn non_reflection_rejected() {
        let e = FusionEngine::new(Alphabet::Orthogonal);
        assert!(matches!(e.basic_tensor(&[1]), Err(Error::NotReflection(_))));
        assert!(e.irreducible_in_tensor_basis(&w(&[1])).is_err());
    }

    #[test]
    fn tensor_basis_examples() {
        let e2 = FusionEngine::reflection(Modulus::Finite(2));
        let v = e2.irreducible_in_tensor_basis(&w(&[1])).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v.coeff(&[1]), BigInt::one());

        let v = e2.irreducible_in_tensor_basis(&w(&[0])).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v.coeff(&[0]), BigInt::one());
        assert_eq!(v.coeff(&[]), -BigInt::one());

        let v = e2.irreducible_in_tensor_basis(&w(&[1, 1])).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v.coeff(&[1, 1]), BigInt::one());
        assert_eq!(v.coeff(&[0]), -BigInt::one());
    }

    #[test]
    fn tensor_basis_round_trip() {
        for s in [1u64, 2, 3] {
            let e = FusionEngine::reflection(Modulus::Finite(s));
            let letters: Vec<i64> = (0..s as i64).collect();
            let mut words = vec![vec![]];
            for _ in 0..4 {
                let next: Vec<Vec<i64>> = words
                    .iter()
                    .flat_map(|x| letters.iter().map(move |&l| [x.clone(), vec![l]].concat()))
                    .collect();
                words.extend(next.into_iter().filter(|x| x.len() <= 4));
                words.sort();
                words.dedup();
            }
            for x in words {
                let x = Word(x);
                let v = e.irreducible_in_tensor_basis(&x).unwrap();
                let back = e.expand_virtual(&v).unwrap();
                assert_eq!(back, BTreeMap::from([(x.clone(), BigInt::one())]), "s={s} x={x}");
            }
        }
    }
}
