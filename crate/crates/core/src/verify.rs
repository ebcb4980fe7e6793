//! Property suites over the whole crate.
//!
//! Each property builds its case list up front from a seeded ChaCha stream
//! (or by exhaustive enumeration), evaluates the cases through [`Exec`], and
//! aggregates the outcome. Results never depend on evaluation order.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dims::{d_seq, DSequence, Dimensions, RootInt};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fusion::{Decomposition, FusionEngine};
use crate::linalg::DEFAULT_MAX_ENTRIES;
use crate::mform::cross_check_formulations;
use crate::partition::{count_nc_s, enumerate_nc, LabeledTuple, SetPartition, DEFAULT_MAX_POINTS};
use crate::tannaka::{span_rank, verify_functoriality, verify_involution, verify_tensor, ShapeOracle};
use crate::word::{Alphabet, Letter, Modulus, Word, ORTHOGONAL_LETTER};

/// Failures kept verbatim per property; the rest are only counted.
const KEPT_FAILURES: usize = 5;

#[derive(Clone, Debug)]
pub struct PropertyOutcome {
    pub name: String,
    pub cases: u64,
    pub failed: u64,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for PropertyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<44} {:>7} cases {:>9.3}s",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.elapsed.as_secs_f64()
        )?;
        for note in &self.notes {
            write!(f, "\n     note: {note}")?;
        }
        for fail in &self.failures {
            write!(f, "\n     fail: {fail}")?;
        }
        if self.failed as usize > self.failures.len() {
            write!(f, "\n     ... {} failures in total", self.failed)?;
        }
        Ok(())
    }
}

type Check = std::result::Result<(), String>;

/// Runs `check` over every case and folds the results.
pub fn check_cases<C, F>(name: impl Into<String>, cases: &[C], exec: Exec, check: F) -> PropertyOutcome
where
    C: Sync,
    F: Fn(&C) -> Check + Sync + Send,
{
    let start = Instant::now();
    let results = exec.map(cases, check);
    let mut failed = 0;
    let mut failures = Vec::new();
    for r in results {
        if let Err(msg) = r {
            failed += 1;
            if failures.len() < KEPT_FAILURES {
                failures.push(msg);
            }
        }
    }
    PropertyOutcome {
        name: name.into(),
        cases: cases.len() as u64,
        failed,
        failures,
        notes: Vec::new(),
        elapsed: start.elapsed(),
    }
}

fn expect_eq<T: PartialEq + fmt::Debug>(got: T, want: T, ctx: impl FnOnce() -> String) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("{}: got {got:?}, want {want:?}", ctx()))
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Deterministic generator for one property; `salt` separates properties
/// sharing a seed.
pub fn rng_for(seed: u64, salt: &str) -> ChaCha8Rng {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for b in salt.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(h)
}

/// Letters sampled for `Z` range over `-RADIUS..=RADIUS`.
pub const RADIUS: i64 = 3;

pub fn random_word(a: &Alphabet, len: usize, rng: &mut impl Rng) -> Word {
    let letters = a.sample_letters(RADIUS);
    Word((0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect())
}

/// Lengths `(l_1, …, l_parts)` with sum at most `max_total`, uniform over
/// such compositions by rejection.
pub fn random_lengths(parts: usize, max_total: usize, rng: &mut impl Rng) -> Vec<usize> {
    loop {
        let ls: Vec<usize> = (0..parts).map(|_| rng.gen_range(0..=max_total)).collect();
        if ls.iter().sum::<usize>() <= max_total {
            return ls;
        }
    }
}

pub fn random_words(a: &Alphabet, parts: usize, max_total: usize, rng: &mut impl Rng) -> Vec<Word> {
    random_lengths(parts, max_total, rng)
        .into_iter()
        .map(|l| random_word(a, l, rng))
        .collect()
}

/// Every word of length `len` over `letters`, in lexicographic order.
pub fn all_words(letters: &[Letter], len: usize) -> Vec<Word> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<Letter>| {
                letters.iter().map(move |&l| {
                    let mut next = w.clone();
                    next.push(l);
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(Word).collect()
}

fn instance_label(a: &Alphabet) -> String {
    match a.modulus() {
        Some(m) => format!("ahs s={m}"),
        None => a.tag().to_string(),
    }
}

fn involute_decomposition(d: &Decomposition, a: &Alphabet) -> Decomposition {
    d.iter().map(|(w, m)| (w.involute(a), m.clone())).collect()
}

// ---- fusion -------------------------------------------------------------

pub fn associativity(a: &Alphabet, cases: usize, max_total: usize, seed: u64, exec: Exec) -> PropertyOutcome {
    let mut rng = rng_for(seed, "assoc");
    let triples: Vec<Vec<Word>> = (0..cases).map(|_| random_words(a, 3, max_total, &mut rng)).collect();
    let e = FusionEngine::new(*a);
    check_cases(format!("associativity [{}]", instance_label(a)), &triples, exec, |t| {
        let left = e.fuse_all(&e.fuse(&t[0], &t[1]), &Decomposition::single(t[2].clone()));
        let right = e.fuse_all(&Decomposition::single(t[0].clone()), &e.fuse(&t[1], &t[2]));
        expect_eq(left, right, || format!("({})({})({})", t[0], t[1], t[2]))
    })
}

pub fn conjugation(a: &Alphabet, cases: usize, max_total: usize, seed: u64, exec: Exec) -> PropertyOutcome {
    let mut rng = rng_for(seed, "conj");
    let pairs: Vec<Vec<Word>> = (0..cases).map(|_| random_words(a, 2, max_total, &mut rng)).collect();
    let e = FusionEngine::new(*a);
    check_cases(
        format!("conjugation symmetry [{}]", instance_label(a)),
        &pairs,
        exec,
        |p| {
            let direct = involute_decomposition(&e.fuse(&p[0], &p[1]), a);
            let swapped = e.fuse(&p[1].involute(a), &p[0].involute(a));
            expect_eq(direct, swapped, || format!("({}) x ({})", p[0], p[1]))
        },
    )
}

/// `mult(z ∈ r_x ⊗ r_y) = #(1 ∈ r_z̄ ⊗ r_x ⊗ r_y)`, for every `z` in the
/// support and one random `z` per case.
pub fn frobenius(a: &Alphabet, cases: usize, max_total: usize, seed: u64, exec: Exec) -> PropertyOutcome {
    let mut rng = rng_for(seed, "frob");
    let items: Vec<Vec<Word>> = (0..cases)
        .map(|_| {
            let mut ws = random_words(a, 2, max_total, &mut rng);
            let zl = rng.gen_range(0..=ws[0].len() + ws[1].len());
            ws.push(random_word(a, zl, &mut rng));
            ws
        })
        .collect();
    let e = FusionEngine::new(*a);
    check_cases(
        format!("Frobenius reciprocity [{}]", instance_label(a)),
        &items,
        exec,
        |c| {
            let (x, y) = (&c[0], &c[1]);
            let prod = e.fuse(x, y);
            let zs: Vec<Word> = prod.iter().map(|(z, _)| z.clone()).chain([c[2].clone()]).collect();
            for z in zs {
                let triple = e.fuse_all(&e.fuse(&z.involute(a), x), &Decomposition::single(y.clone()));
                expect_eq(triple.trivial_mult(), prod.mult(&z), || {
                    format!("z=({z}) in ({x}) x ({y})")
                })?;
            }
            Ok(())
        },
    )
}

pub fn irreducibility(a: &Alphabet, cases: usize, max_len: usize, seed: u64, exec: Exec) -> PropertyOutcome {
    let mut rng = rng_for(seed, "irr");
    let words: Vec<Word> = (0..cases)
        .map(|_| {
            let l = rng.gen_range(0..=max_len);
            random_word(a, l, &mut rng)
        })
        .collect();
    let e = FusionEngine::new(*a);
    check_cases(
        format!("irreducibility witness [{}]", instance_label(a)),
        &words,
        exec,
        |x| {
            expect_eq(e.fuse(x, &x.involute(a)).trivial_mult(), BigUint::one(), || {
                format!("({x})")
            })
        },
    )
}

/// Expanding the tensor-basis form of `r_x` recovers `{x: 1}`.
pub fn tensor_basis_round_trip(m: Modulus, cases: usize, max_len: usize, seed: u64, exec: Exec) -> PropertyOutcome {
    let a = Alphabet::Reflection(m);
    let mut rng = rng_for(seed, "dround");
    let words: Vec<Word> = (0..cases)
        .map(|_| {
            let l = rng.gen_range(0..=max_len);
            random_word(&a, l, &mut rng)
        })
        .collect();
    let e = FusionEngine::reflection(m);
    let negatives = std::sync::atomic::AtomicU64::new(0);
    let terms = std::sync::atomic::AtomicU64::new(0);
    let mut out = check_cases(
        format!("tensor basis round trip [{}]", instance_label(&a)),
        &words,
        exec,
        |x| {
            let v = lift(e.irreducible_in_tensor_basis(x))?;
            negatives.fetch_add(v.negative_terms() as u64, std::sync::atomic::Ordering::Relaxed);
            terms.fetch_add(v.len() as u64, std::sync::atomic::Ordering::Relaxed);
            let back = lift(e.expand_virtual(&v))?;
            let want = std::collections::BTreeMap::from([(x.clone(), BigInt::one())]);
            expect_eq(back, want, || format!("({x})"))
        },
    );
    out.notes.push(format!(
        "observed coefficient signs: {} negative among {} terms",
        negatives.into_inner(),
        terms.into_inner()
    ));
    out
}

/// `r_k ⊗ r_l = Σ_{m=0}^{min(k,l)} r_{k+l-2m}` for the orthogonal alphabet.
pub fn orthogonal_rule(max_k: usize, exec: Exec) -> PropertyOutcome {
    let a = Alphabet::Orthogonal;
    let e = FusionEngine::new(a);
    let w = |k: usize| Word(vec![ORTHOGONAL_LETTER; k]);
    let pairs: Vec<(usize, usize)> = (0..=max_k).flat_map(|k| (0..=max_k).map(move |l| (k, l))).collect();
    check_cases("orthogonal SU_2-type rule", &pairs, exec, |&(k, l)| {
        let want: Decomposition = (0..=k.min(l)).map(|m| (w(k + l - 2 * m), BigUint::one())).collect();
        expect_eq(e.fuse(&w(k), &w(l)), want, || format!("k={k} l={l}"))
    })
}

/// At `s = 1`, `r_k ⊗ r_l = r_{k+l} + r_{k+l-1} + … + r_{|k-l|}` with `r_k`
/// the word `0^k`.
pub fn clebsch_gordan(max_k: usize, exec: Exec) -> PropertyOutcome {
    let e = FusionEngine::reflection(Modulus::Finite(1));
    let w = |k: usize| Word(vec![0; k]);
    let pairs: Vec<(usize, usize)> = (0..=max_k).flat_map(|k| (0..=max_k).map(move |l| (k, l))).collect();
    check_cases("s=1 Clebsch-Gordan rule", &pairs, exec, |&(k, l)| {
        let want: Decomposition = (k.abs_diff(l)..=k + l).map(|m| (w(m), BigUint::one())).collect();
        expect_eq(e.fuse(&w(k), &w(l)), want, || format!("k={k} l={l}"))
    })
}

/// `dim Hom(u_i, u_j)` is 0 off the diagonal, 1 for `i = j ≠ 0`, 2 for `i = j = 0`.
pub fn hom_table(s: u64, exec: Exec) -> PropertyOutcome {
    let e = FusionEngine::reflection(Modulus::Finite(s));
    let pairs: Vec<(i64, i64)> = (0..s as i64).flat_map(|i| (0..s as i64).map(move |j| (i, j))).collect();
    check_cases(format!("Hom(u_i, u_j) table [s={s}]"), &pairs, exec, |&(i, j)| {
        let want = if i != j {
            0u32
        } else if i != 0 {
            1
        } else {
            2
        };
        expect_eq(lift(e.hom_dimension(&[i], &[j]))?, BigUint::from(want), || {
            format!("i={i} j={j}")
        })
    })
}

/// The worked examples for decompositions of basic tensor products.
pub fn fusion_examples(exec: Exec) -> PropertyOutcome {
    let s2 = FusionEngine::reflection(Modulus::Finite(2));
    let s3 = FusionEngine::reflection(Modulus::Finite(3));
    let cases: Vec<(&FusionEngine, Vec<Letter>, u32)> = vec![
        (&s2, vec![1, 1, 1, 1], 3),
        (&s3, vec![1], 0),
        (&s3, vec![0], 1),
        (&s2, vec![], 1),
    ];
    check_cases("trivial multiplicity examples", &cases, exec, |(e, idx, want)| {
        expect_eq(lift(e.trivial_multiplicity(idx))?, BigUint::from(*want), || {
            format!("{idx:?}")
        })
    })
}

// ---- dims ---------------------------------------------------------------

/// `d_2 = n-1`, `d_3 = (n-2)√n`, `d_4 = n²-3n+1`, and positivity up to `k = 12`.
pub fn d_table(n: u64) -> PropertyOutcome {
    let ni = n as i64;
    let mut checks: Vec<(usize, Option<RootInt>)> = vec![
        (0, Some(RootInt::integer(1, n))),
        (1, Some(RootInt::sqrt_n(n))),
        (2, Some(RootInt::integer(ni - 1, n))),
        (3, Some(RootInt::new(0, ni - 2, n))),
        (4, Some(RootInt::integer(ni * ni - 3 * ni + 1, n))),
    ];
    checks.extend((5..=12).map(|k| (k, None)));
    check_cases(
        format!("d_k symbolic values and positivity [n={n}]"),
        &checks,
        Exec::Sequential,
        |(k, want)| {
            let got = lift(d_seq(*k, n))?;
            if let Some(w) = want {
                if (&got.a, &got.b) != (&w.a, &w.b) {
                    return Err(format!("d_{k}: got {}, want {}", got.symbolic(), w.symbolic()));
                }
            }
            let parity_ok = if k % 2 == 0 { got.b.is_zero() } else { got.a.is_zero() };
            if !parity_ok {
                return Err(format!("d_{k} = {} mixes parts", got.symbolic()));
            }
            if !got.is_positive() {
                return Err(format!("d_{k} = {} is not positive", got.symbolic()));
            }
            Ok(())
        },
    )
}

/// At `n = 4`, `d_k = k + 1`.
pub fn d_linear_at_four(max_k: usize) -> PropertyOutcome {
    let ks: Vec<usize> = (0..=max_k).collect();
    check_cases("d_k = k+1 at n=4", &ks, Exec::Sequential, |&k| {
        expect_eq(lift(d_seq(k, 4))?.collapsed(), Some(BigInt::from(k + 1)), || {
            format!("k={k}")
        })
    })
}

/// `d_k d_l = d_{k+l} + d_{k-1} d_{l-1}` for `1 ≤ k, l ≤ max_k`.
pub fn d_product_identity(n: u64, max_k: usize) -> PropertyOutcome {
    let pairs: Vec<(usize, usize)> = (1..=max_k).flat_map(|k| (1..=max_k).map(move |l| (k, l))).collect();
    let d = match DSequence::new(n) {
        Ok(d) => d,
        Err(e) => return failed_outcome(format!("d_k d_l product identity [n={n}]"), e),
    };
    check_cases(
        format!("d_k d_l product identity [n={n}]"),
        &pairs,
        Exec::Sequential,
        |&(k, l)| {
            let lhs = lift(d.get(k).mul(&d.get(l)))?;
            let rhs = &d.get(k + l) + &lift(d.get(k - 1).mul(&d.get(l - 1)))?;
            if (&lhs.a, &lhs.b) == (&rhs.a, &rhs.b) {
                Ok(())
            } else {
                Err(format!("k={k} l={l}: {} vs {}", lhs.symbolic(), rhs.symbolic()))
            }
        },
    )
}

/// `dim` is additive and multiplicative across fusion.
pub fn dimension_morphism(
    m: Modulus,
    n: u64,
    cases: usize,
    max_total: usize,
    seed: u64,
    exec: Exec,
) -> PropertyOutcome {
    let name = format!("dimension morphism [s={m}, n={n}]");
    let d = match Dimensions::new(m, n) {
        Ok(d) => d,
        Err(e) => return failed_outcome(name, e),
    };
    let a = Alphabet::Reflection(m);
    let mut rng = rng_for(seed, &format!("dimmorph{n}"));
    let pairs: Vec<Vec<Word>> = (0..cases).map(|_| random_words(&a, 2, max_total, &mut rng)).collect();
    let e = FusionEngine::reflection(m);
    check_cases(name, &pairs, exec, |p| {
        let lhs = lift(d.of_decomposition(&e.fuse(&p[0], &p[1])))?;
        let rhs = lift(d.of_word(&p[0]))? * lift(d.of_word(&p[1]))?;
        expect_eq(lhs, rhs, || format!("({}) x ({})", p[0], p[1]))
    })
}

fn failed_outcome(name: String, e: Error) -> PropertyOutcome {
    PropertyOutcome {
        name,
        cases: 1,
        failed: 1,
        failures: vec![e.to_string()],
        notes: Vec::new(),
        elapsed: Duration::ZERO,
    }
}

// ---- formulations ---------------------------------------------------------

fn formulation_check(pair: &(Word, Word), m: Modulus) -> Check {
    let report = lift(cross_check_formulations(&pair.0, &pair.1, m))?;
    if report.matches() {
        Ok(())
    } else {
        Err(format!(
            "({}) x ({}): {} collisions, mismatched forms {:?}",
            pair.0,
            pair.1,
            report.collisions.len(),
            report.mismatches.iter().map(ToString::to_string).collect::<Vec<_>>()
        ))
    }
}

/// Every pair of words over `Z_s` of total length at most `max_total`.
pub fn formulations_exhaustive(s: u64, max_total: usize, exec: Exec) -> PropertyOutcome {
    let m = Modulus::Finite(s);
    let letters: Vec<Letter> = (0..s as i64).collect();
    let mut pairs = Vec::new();
    for total in 0..=max_total {
        for lx in 0..=total {
            let ys = all_words(&letters, total - lx);
            for x in all_words(&letters, lx) {
                pairs.extend(ys.iter().map(|y| (x.clone(), y.clone())));
            }
        }
    }
    check_cases(
        format!("word rule vs a/z rule, exhaustive [s={s}]"),
        &pairs,
        exec,
        |p| formulation_check(p, m),
    )
}

pub fn formulations_random(m: Modulus, cases: usize, max_total: usize, seed: u64, exec: Exec) -> PropertyOutcome {
    let a = Alphabet::Reflection(m);
    let mut rng = rng_for(seed, "forms");
    let pairs: Vec<(Word, Word)> = (0..cases)
        .map(|_| {
            let ws = random_words(&a, 2, max_total, &mut rng);
            (ws[0].clone(), ws[1].clone())
        })
        .collect();
    check_cases(format!("word rule vs a/z rule, random [s={m}]"), &pairs, exec, |p| {
        formulation_check(p, m)
    })
}

// ---- tannaka --------------------------------------------------------------

/// `#(1 ∈ u_{i_1} ⊗ … ⊗ u_{i_k}) = #NC_s(i_1 … i_k)` for every tuple of
/// length at most `max_len`.
pub fn trivial_count_agreement(m: Modulus, max_len: usize, max_points: usize, exec: Exec) -> PropertyOutcome {
    let letters: Vec<Letter> = match m {
        Modulus::Finite(s) => (0..s as i64).collect(),
        Modulus::Infinite => (-2..=2).collect(),
    };
    let tuples: Vec<Word> = (0..=max_len).flat_map(|l| all_words(&letters, l)).collect();
    let e = FusionEngine::reflection(m);
    // warm the prefix cache in order so parallel workers mostly hit it
    for t in &tuples {
        if t.len() + 1 < max_len {
            let _ = e.basic_tensor(t.letters());
        }
    }
    check_cases(
        format!("trivial multiplicity = NC_s count [s={m}]"),
        &tuples,
        exec,
        |t| {
            let engine = lift(e.trivial_multiplicity(t.letters()))?;
            let count = lift(count_nc_s(&LabeledTuple::one_row(t.letters().to_vec()), m, max_points))?;
            expect_eq(engine, BigUint::from(count), || format!("({t})"))
        },
    )
}

/// For every two-row shape with `k + l ≤ max_total` and every labelling
/// over `Z_s`: engine Hom dimension = NC_s count = rank of the admissible maps.
pub fn hom_triple_agreement(
    s: u64,
    n: u64,
    max_total: usize,
    max_points: usize,
    max_entries: u128,
    exec: Exec,
) -> PropertyOutcome {
    let m = Modulus::Finite(s);
    let name = format!("Hom triple agreement [s={s}, n={n}]");
    let start = Instant::now();
    let e = FusionEngine::reflection(m);
    let letters: Vec<Letter> = (0..s as i64).collect();
    let mut total = PropertyOutcome {
        name: name.clone(),
        cases: 0,
        failed: 0,
        failures: Vec::new(),
        notes: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for k in 0..=max_total {
        for l in 0..=max_total - k {
            let oracle = match ShapeOracle::new(k, l, n, max_points, max_entries, exec) {
                Ok(o) => o,
                Err(err) => return failed_outcome(name, err),
            };
            let mut tuples = Vec::new();
            for up in all_words(&letters, k) {
                for low in all_words(&letters, l) {
                    tuples.push(LabeledTuple::new(up.0.clone(), low.0));
                }
            }
            let part = check_cases(&name, &tuples, exec, |t| {
                let engine = lift(e.hom_dimension(&t.upper, &t.lower))?;
                let (count, rank) = oracle.hom_dim(t, m, Exec::Sequential);
                let ctx = || format!("{:?} -> {:?}", t.upper, t.lower);
                expect_eq(engine.clone(), BigUint::from(count), ctx)?;
                expect_eq(engine, BigUint::from(rank), ctx)
            });
            total.cases += part.cases;
            total.failed += part.failed;
            let room = KEPT_FAILURES.saturating_sub(total.failures.len());
            total.failures.extend(part.failures.into_iter().take(room));
        }
    }
    total.elapsed = start.elapsed();
    total
}

/// `(q, p)` with `q` of shape `(a, k)` and `p` of shape `(k, b)`,
/// `a + k + b ≤ max_points`.
pub fn composable_pairs(max_points: usize) -> Vec<(SetPartition, SetPartition)> {
    let mut out = Vec::new();
    for k in 0..=max_points {
        for a in 0..=max_points - k {
            for b in 0..=max_points - k - a {
                let qs = enumerate_nc(a, k, max_points).expect("within the limit");
                let ps = enumerate_nc(k, b, max_points).expect("within the limit");
                for q in &qs {
                    out.extend(ps.iter().map(|p| (q.clone(), p.clone())));
                }
            }
        }
    }
    out
}

/// Every partition of every shape with at most `max_points` points.
pub fn all_shapes(max_points: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    for t in 0..=max_points {
        for k in 0..=t {
            out.extend(enumerate_nc(k, t - k, max_points).expect("within the limit"));
        }
    }
    out
}

pub fn functoriality(n: u64, max_points: usize, max_entries: u128, exec: Exec) -> PropertyOutcome {
    let pairs = composable_pairs(max_points);
    check_cases(format!("T_p T_q = n^b T_pq [n={n}]"), &pairs, exec, |(q, p)| {
        let r = lift(verify_functoriality(p, q, n, max_entries))?;
        if r.holds {
            Ok(())
        } else {
            Err(format!("p={p} q={q} b={}", r.closed_blocks))
        }
    })
}

pub fn tensor_identity(n: u64, max_points: usize, max_entries: u128, exec: Exec) -> PropertyOutcome {
    let shapes = all_shapes(max_points);
    let mut pairs = Vec::new();
    for p in &shapes {
        for q in &shapes {
            if p.points() + q.points() <= max_points {
                pairs.push((p.clone(), q.clone()));
            }
        }
    }
    check_cases(format!("T_(p x q) = T_p x T_q [n={n}]"), &pairs, exec, |(p, q)| {
        if lift(verify_tensor(p, q, n, max_entries))? {
            Ok(())
        } else {
            Err(format!("p={p} q={q}"))
        }
    })
}

pub fn involution_identity(n: u64, max_points: usize, max_entries: u128, exec: Exec) -> PropertyOutcome {
    let shapes = all_shapes(max_points);
    check_cases(format!("T_(p*) = T_p^t [n={n}]"), &shapes, exec, |p| {
        if lift(verify_involution(p, n, max_entries))? {
            Ok(())
        } else {
            Err(format!("p={p}"))
        }
    })
}

fn catalan(m: usize) -> u64 {
    let mut c = vec![1u64; m + 1];
    for i in 1..=m {
        c[i] = (0..i).map(|j| c[j] * c[i - 1 - j]).sum();
    }
    c[m]
}

/// Rank of all of `NC(k, l)`: the Catalan number `C_{k+l}` when `n ≥ 4`,
/// at most that otherwise (observed ranks go to the notes).
pub fn independence(n: u64, max_total: usize, max_points: usize, max_entries: u128, exec: Exec) -> PropertyOutcome {
    let shapes: Vec<(usize, usize)> = (0..=max_total)
        .flat_map(|k| (0..=max_total - k).map(move |l| (k, l)))
        .collect();
    let ranks = std::sync::Mutex::new(Vec::new());
    let mut out = check_cases(
        format!("rank of NC(k,l) maps [n={n}]"),
        &shapes,
        Exec::Sequential,
        |&(k, l)| {
            let ps = lift(enumerate_nc(k, l, max_points))?;
            let rank = lift(span_rank(&ps, n, max_entries, exec))?;
            ranks.lock().unwrap().push((k, l, rank, ps.len()));
            let c = catalan(k + l) as usize;
            expect_eq(ps.len(), c, || format!("|NC({k},{l})|"))?;
            if n >= 4 {
                expect_eq(rank, c, || format!("rank NC({k},{l})"))
            } else if rank <= c {
                Ok(())
            } else {
                Err(format!("rank NC({k},{l}) = {rank} exceeds {c}"))
            }
        },
    );
    if n < 4 {
        let mut by_total: Vec<String> = Vec::new();
        let ranks = ranks.into_inner().unwrap();
        for t in 0..=max_total {
            if let Some(&(_, _, r, c)) = ranks.iter().find(|x| x.0 + x.1 == t) {
                let uniform = ranks.iter().filter(|x| x.0 + x.1 == t).all(|x| x.2 == r);
                by_total.push(format!("k+l={t}: {r}/{c}{}", if uniform { "" } else { " (varies)" }));
            }
        }
        out.notes.push(format!("observed rank/count: {}", by_total.join(", ")));
    }
    out
}

// ---- suites -------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Fusion,
    Tannaka,
    Dims,
    Formulations,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "fusion" => Ok(Suite::Fusion),
            "tannaka" => Ok(Suite::Tannaka),
            "dims" => Ok(Suite::Dims),
            "formulations" => Ok(Suite::Formulations),
            _ => Err(Error::Parse {
                what: "suite",
                input: s.to_string(),
                reason: "expected all|fusion|tannaka|dims|formulations".into(),
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub modulus: Modulus,
    /// The instance whose fusion properties are exercised.
    pub alphabet: Alphabet,
    pub n: Option<u64>,
    pub seed: u64,
    pub cases: usize,
    pub max_points: usize,
    pub max_entries: u128,
    pub exec: Exec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            modulus: Modulus::Finite(2),
            alphabet: Alphabet::Reflection(Modulus::Finite(2)),
            n: None,
            seed: 0,
            cases: 500,
            max_points: DEFAULT_MAX_POINTS,
            max_entries: DEFAULT_MAX_ENTRIES,
            exec: Exec::default(),
        }
    }
}

/// Largest diagram size the tannaka suite sweeps.
pub const TANNAKA_POINTS: usize = 6;

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<PropertyOutcome> {
    let mut out = Vec::new();
    let (seed, cases, exec) = (cfg.seed, cfg.cases, cfg.exec);
    let m = cfg.modulus;
    if matches!(suite, Suite::All | Suite::Fusion) {
        let a = &cfg.alphabet;
        out.push(associativity(a, cases, 9, seed, exec));
        out.push(conjugation(a, cases, 8, seed, exec));
        out.push(frobenius(a, cases, 6, seed, exec));
        out.push(irreducibility(a, cases, 8, seed, exec));
        match a {
            Alphabet::Reflection(am) => {
                out.push(tensor_basis_round_trip(*am, cases, 5, seed, exec));
                if let Modulus::Finite(s) = am {
                    out.push(hom_table(*s, exec));
                }
            }
            Alphabet::Orthogonal => out.push(orthogonal_rule(8, exec)),
            Alphabet::Unitary => {}
        }
        out.push(clebsch_gordan(8, exec));
        out.push(fusion_examples(exec));
    }
    if matches!(suite, Suite::All | Suite::Dims) {
        let ns: Vec<u64> = match cfg.n {
            Some(n) => vec![n],
            None => vec![4, 5, 7],
        };
        out.push(d_linear_at_four(12));
        for &n in &ns {
            out.push(d_table(n));
            out.push(d_product_identity(n, 10));
            out.push(dimension_morphism(m, n, cases.min(200), 8, seed, exec));
        }
    }
    if matches!(suite, Suite::All | Suite::Formulations) {
        match m {
            Modulus::Finite(s) => out.push(formulations_exhaustive(s, 5, exec)),
            Modulus::Infinite => {}
        }
        out.push(formulations_random(Modulus::Infinite, cases.min(100), 8, seed, exec));
    }
    if matches!(suite, Suite::All | Suite::Tannaka) {
        let n = cfg.n.unwrap_or(4);
        out.push(trivial_count_agreement(m, 6, cfg.max_points, exec));
        out.push(functoriality(n, TANNAKA_POINTS, cfg.max_entries, exec));
        out.push(tensor_identity(n, TANNAKA_POINTS, cfg.max_entries, exec));
        out.push(involution_identity(n, TANNAKA_POINTS, cfg.max_entries, exec));
        out.push(independence(n, TANNAKA_POINTS, cfg.max_points, cfg.max_entries, exec));
        if let (Modulus::Finite(s), true) = (m, n >= 2) {
            out.push(hom_triple_agreement(s, n, 4, cfg.max_points, cfg.max_entries, exec));
        }
    }
    out
}

pub fn all_passed(outcomes: &[PropertyOutcome]) -> bool {
    outcomes.iter().all(PropertyOutcome::passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let a = Alphabet::Reflection(Modulus::Infinite);
        let w1: Vec<Word> = random_words(&a, 3, 9, &mut rng_for(7, "x"));
        let w2: Vec<Word> = random_words(&a, 3, 9, &mut rng_for(7, "x"));
        assert_eq!(w1, w2);
        assert!(w1.iter().map(Word::len).sum::<usize>() <= 9);
        assert!(w1.iter().flat_map(|w| w.letters()).all(|l| l.abs() <= RADIUS));
    }

    #[test]
    fn word_enumeration() {
        assert_eq!(all_words(&[0, 1], 0), vec![Word::empty()]);
        assert_eq!(all_words(&[0, 1, 2], 3).len(), 27);
        assert_eq!(all_words(&[0, 1], 2)[1], Word::new([0, 1]));
    }

    #[test]
    fn pair_counts() {
        // (a,k,b) ∈ {(0,0,0), (1,0,0), (0,0,1), (0,1,0)}
        assert_eq!(composable_pairs(1).len(), 4);
        assert_eq!(all_shapes(2).len(), 1 + 2 + 3 * 2);
        assert_eq!(catalan(6), 132);
    }

    #[test]
    fn failures_are_reported() {
        let out = check_cases("odd", &[1, 2, 3, 4], Exec::Parallel, |&x| {
            if x % 2 == 0 {
                Ok(())
            } else {
                Err(format!("{x}"))
            }
        });
        assert_eq!((out.cases, out.failed), (4, 2));
        assert_eq!(out.failures, vec!["1", "3"]);
        assert!(!out.passed());
        assert!(out.to_string().starts_with("FAIL odd"));
    }

    #[test]
    fn small_suites_pass() {
        let cfg = VerifyConfig {
            cases: 40,
            n: Some(5),
            ..VerifyConfig::default()
        };
        for suite in [Suite::Fusion, Suite::Dims, Suite::Formulations] {
            let out = run_suite(suite, &cfg);
            assert!(
                all_passed(&out),
                "{suite:?}: {}",
                out.iter().map(|o| o.to_string()).collect::<Vec<_>>().join("\n")
            );
        }
        let ao = VerifyConfig {
            alphabet: Alphabet::Orthogonal,
            cases: 40,
            ..VerifyConfig::default()
        };
        assert!(all_passed(&run_suite(Suite::Fusion, &ao)));
    }
}
