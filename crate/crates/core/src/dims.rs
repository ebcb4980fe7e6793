//! Exact arithmetic in `Z[√n]` and dimensions of irreducibles.
//!
//! The sequence `d_0 = 1`, `d_1 = √n`, `d_{k+1} = √n·d_k − d_{k−1}` lives in
//! `Z[√n]`: even terms are integers and odd terms integer multiples of `√n`.
//! The dimension of `r_x` is the product of `d_e` over the `a`-run exponents
//! `e` of the normal form of `x`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Roots;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fusion::Decomposition;
use crate::mform::to_mform;
use crate::word::{Modulus, Word};

/// `a + b·√n`.
#[derive(Clone, Debug, Eq)]
pub struct RootInt {
    pub a: BigInt,
    pub b: BigInt,
    n: u64,
}

impl RootInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, n: u64) -> Self {
        RootInt {
            a: a.into(),
            b: b.into(),
            n,
        }
    }

    pub fn integer(a: impl Into<BigInt>, n: u64) -> Self {
        Self::new(a, 0, n)
    }

    pub fn sqrt_n(n: u64) -> Self {
        Self::new(0, 1, n)
    }

    pub fn ambient(&self) -> u64 {
        self.n
    }

    fn check(&self, other: &RootInt) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// `(a + b√n)(c + d√n) = (ac + n·bd) + (ad + bc)√n`.
    pub fn mul(&self, other: &RootInt) -> Result<RootInt> {
        self.check(other)?;
        let n = BigInt::from(self.n);
        Ok(RootInt {
            a: &self.a * &other.a + n * &self.b * &other.b,
            b: &self.a * &other.b + &self.b * &other.a,
            n: self.n,
        })
    }

    pub fn try_add(&self, other: &RootInt) -> Result<RootInt> {
        self.check(other)?;
        Ok(RootInt {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            n: self.n,
        })
    }

    pub fn try_sub(&self, other: &RootInt) -> Result<RootInt> {
        self.check(other)?;
        Ok(RootInt {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            n: self.n,
        })
    }

    /// Multiplication by `√n`.
    pub fn times_root(&self) -> RootInt {
        RootInt {
            a: &self.b * BigInt::from(self.n),
            b: self.a.clone(),
            n: self.n,
        }
    }

    /// Integer square root of `n` when `n` is a perfect square.
    pub fn exact_root(&self) -> Option<u64> {
        let r = self.n.sqrt();
        (r * r == self.n).then_some(r)
    }

    /// Value with `√n` collapsed to an integer, when `n` is a perfect square.
    pub fn collapsed(&self) -> Option<BigInt> {
        self.exact_root().map(|r| &self.a + &self.b * BigInt::from(r))
    }

    /// Sign of the real number `a + b√n`, decided exactly by comparing
    /// `a²` with `b²n`.
    pub fn signum(&self) -> Sign {
        let sa = self.a.sign();
        let sb = self.b.sign();
        if sb == Sign::NoSign || sa == sb {
            return if sa == Sign::NoSign { sb } else { sa };
        }
        if sa == Sign::NoSign {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2n = &self.b * &self.b * BigInt::from(self.n);
        match a2.cmp(&b2n) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => Sign::NoSign,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Sign::Plus
    }

    /// `a + b*sqrt(n)` rendering.
    pub fn symbolic(&self) -> String {
        format!("{} + {}*sqrt({})", self.a, self.b, self.n)
    }
}

/// Equal as real numbers. For non-square `n` this is componentwise; for a
/// perfect square the collapsed integers are compared.
impl PartialEq for RootInt {
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        match (self.collapsed(), other.collapsed()) {
            (Some(x), Some(y)) => x == y,
            _ => self.a == other.a && self.b == other.b,
        }
    }
}

impl Add for &RootInt {
    type Output = RootInt;

    fn add(self, rhs: &RootInt) -> RootInt {
        self.try_add(rhs).expect("RootInt ambients differ")
    }
}

impl Sub for &RootInt {
    type Output = RootInt;

    fn sub(self, rhs: &RootInt) -> RootInt {
        self.try_sub(rhs).expect("RootInt ambients differ")
    }
}

impl Neg for &RootInt {
    type Output = RootInt;

    fn neg(self) -> RootInt {
        RootInt {
            a: -&self.a,
            b: -&self.b,
            n: self.n,
        }
    }
}

impl fmt::Display for RootInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b.is_one() => write!(f, "sqrt({})", self.n),
            (true, false) => write!(f, "{}*sqrt({})", self.b, self.n),
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}*sqrt({})", self.a, sign, self.b.abs(), self.n)
            }
        }
    }
}

fn check_n(n: u64) -> Result<()> {
    if n < 4 {
        return Err(Error::DimensionRange(n));
    }
    Ok(())
}

/// Memoized `d_0, d_1, …` for one `n`.
#[derive(Debug)]
pub struct DSequence {
    n: u64,
    terms: Mutex<Vec<RootInt>>,
}

impl DSequence {
    pub fn new(n: u64) -> Result<Self> {
        check_n(n)?;
        Ok(DSequence {
            n,
            terms: Mutex::new(vec![RootInt::integer(1, n), RootInt::sqrt_n(n)]),
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn get(&self, k: usize) -> RootInt {
        let mut terms = self.terms.lock().unwrap();
        while terms.len() <= k {
            let len = terms.len();
            let next = &terms[len - 1].times_root() - &terms[len - 2];
            terms.push(next);
        }
        terms[k].clone()
    }
}

pub fn d_seq(k: usize, n: u64) -> Result<RootInt> {
    Ok(DSequence::new(n)?.get(k))
}

/// Dimension calculator for the reflection alphabet at a fixed `n`.
#[derive(Debug)]
pub struct Dimensions {
    modulus: Modulus,
    d: DSequence,
}

impl Dimensions {
    pub fn new(modulus: Modulus, n: u64) -> Result<Self> {
        Ok(Dimensions {
            modulus,
            d: DSequence::new(n)?,
        })
    }

    pub fn n(&self) -> u64 {
        self.d.n()
    }

    pub fn d(&self, k: usize) -> RootInt {
        self.d.get(k)
    }

    pub fn of_word(&self, x: &Word) -> Result<BigUint> {
        let form = to_mform(x, self.modulus);
        let mut acc = RootInt::integer(1, self.n());
        for &e in form.runs() {
            acc = acc.mul(&self.d.get(e as usize))?;
        }
        if !acc.b.is_zero() {
            return Err(Error::NonIntegralDimension(format!("{x}: {}", acc.symbolic())));
        }
        acc.a
            .to_biguint()
            .ok_or_else(|| Error::NonIntegralDimension(format!("{x}: negative value {}", acc.a)))
    }

    pub fn of_decomposition(&self, p: &Decomposition) -> Result<BigUint> {
        let mut total = BigUint::zero();
        for (x, m) in p.iter() {
            total += m * self.of_word(x)?;
        }
        Ok(total)
    }
}

pub fn dimension_of_word(x: &Word, m: Modulus, n: u64) -> Result<BigUint> {
    Dimensions::new(m, n)?.of_word(x)
}

pub fn dimension_of_decomposition(p: &Decomposition, m: Modulus, n: u64) -> Result<BigUint> {
    Dimensions::new(m, n)?.of_decomposition(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::FusionEngine;

    #[test]
    fn ring_arithmetic() {
        let r5 = RootInt::sqrt_n(5);
        assert_eq!(r5.mul(&r5).unwrap(), RootInt::integer(5, 5));
        let x = RootInt::new(3, -2, 7);
        assert_eq!(RootInt::integer(1, 7).mul(&x).unwrap(), x);
        assert_eq!(
            RootInt::integer(3, 4).mul(&RootInt::sqrt_n(4)).unwrap(),
            RootInt::new(0, 3, 4)
        );
        assert!(matches!(
            r5.mul(&RootInt::sqrt_n(6)),
            Err(Error::AmbientMismatch { .. })
        ));
        // at n = 4, √n collapses to 2
        assert_eq!(RootInt::new(0, 1, 4), RootInt::integer(2, 4));
        assert_ne!(RootInt::new(0, 1, 5), RootInt::integer(2, 5));
        assert_eq!(RootInt::new(1, -1, 5).to_string(), "1 - 1*sqrt(5)");
    }

    #[test]
    fn signs() {
        assert!(RootInt::new(3, -1, 5).is_positive());
        assert!(!RootInt::new(2, -1, 5).is_positive());
        assert_eq!(RootInt::new(2, -1, 4).signum(), Sign::NoSign);
        assert_eq!(RootInt::new(-3, 1, 5).signum(), Sign::Minus);
        assert_eq!(RootInt::new(-2, 1, 5).signum(), Sign::Plus);
        assert_eq!(RootInt::integer(0, 5).signum(), Sign::NoSign);
    }

    #[test]
    fn sequence_values() {
        for n in [4u64, 5, 7, 10] {
            let ni = n as i64;
            assert_eq!(d_seq(2, n).unwrap(), RootInt::integer(ni - 1, n));
            assert_eq!(d_seq(3, n).unwrap(), RootInt::new(0, ni - 2, n));
            assert_eq!(d_seq(4, n).unwrap(), RootInt::integer(ni * ni - 3 * ni + 1, n));
        }
        assert_eq!(d_seq(7, 4).unwrap(), RootInt::integer(8, 4));
        assert!(d_seq(2, 3).is_err());
    }

    #[test]
    fn word_dimensions() {
        let s3 = Modulus::Finite(3);
        assert_eq!(dimension_of_word(&Word::new([1]), s3, 5).unwrap(), BigUint::from(5u32));
        assert_eq!(dimension_of_word(&Word::new([0]), s3, 5).unwrap(), BigUint::from(4u32));
        assert_eq!(
            dimension_of_word(&Word::new([0, 0]), s3, 5).unwrap(),
            BigUint::from(11u32)
        );
        assert_eq!(
            dimension_of_word(&Word::new([1, 2]), s3, 5).unwrap(),
            BigUint::from(20u32)
        );
        assert_eq!(dimension_of_word(&Word::empty(), s3, 5).unwrap(), BigUint::one());
        assert!(dimension_of_word(&Word::new([1]), s3, 3).is_err());
    }

    #[test]
    fn decomposition_dimensions() {
        let s3 = Modulus::Finite(3);
        let e = FusionEngine::reflection(s3);
        assert_eq!(
            dimension_of_decomposition(&e.basic_tensor(&[1]).unwrap(), s3, 6).unwrap(),
            BigUint::from(6u32)
        );
        assert_eq!(
            dimension_of_decomposition(&e.basic_tensor(&[0]).unwrap(), s3, 6).unwrap(),
            BigUint::from(6u32)
        );
        let prod = e.fuse(&Word::new([1]), &Word::new([2]));
        assert_eq!(dimension_of_decomposition(&prod, s3, 5).unwrap(), BigUint::from(25u32));
    }
}
