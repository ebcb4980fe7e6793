//! Partitions as linear maps on tensor powers of `C^n`.
//!
//! `T_p` sends `e_{i_1} ⊗ … ⊗ e_{i_k}` to the sum of all `e_{j_1} ⊗ … ⊗ e_{j_l}`
//! whose combined index assignment is constant on every block of `p`.
//! Basis vectors are numbered big-endian in base `n`: `(i_1, …, i_k)` with
//! 0-based digits sits at `Σ i_t n^{k-t}`. This numbering is part of the
//! contract, so maps built independently compare entry by entry.
//!
//! Composition follows the picture: `p ∘ q` stacks `q` on top of `p`, so the
//! lower row of `q` is glued to the upper row of `p`, and
//! `T_p · T_q = n^b · T_{p∘q}` with `b` the number of closed blocks.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{self, check_entries, ExactMatrix, SparseMatrix};
use crate::partition::{enumerate_nc, satisfies_label_condition, LabeledTuple, Point, SetPartition};
use crate::word::Modulus;

/// 1 iff the index assignment is constant on every block. Indices are 0-based.
pub fn delta(p: &SetPartition, upper: &[usize], lower: &[usize]) -> u8 {
    assert_eq!((upper.len(), lower.len()), (p.upper(), p.lower()));
    let mut seen: Vec<Option<usize>> = vec![None; p.num_blocks()];
    let points = upper
        .iter()
        .enumerate()
        .map(|(i, &v)| (p.upper_block(i), v))
        .chain(lower.iter().enumerate().map(|(j, &v)| (p.lower_block(j), v)));
    for (b, v) in points {
        match seen[b] {
            Some(prev) if prev != v => return 0,
            _ => seen[b] = Some(v),
        }
    }
    1
}

fn check_dimension(n: u64) -> Result<usize> {
    if n < 2 {
        return Err(Error::TensorRange(n));
    }
    Ok(n as usize)
}

/// Positions `(row, col)` of the ones of `T_p`, in row-major order. Each one
/// comes from a choice of index per block.
fn support(p: &SetPartition, n: usize) -> Vec<(usize, usize)> {
    let (k, l) = (p.upper(), p.lower());
    let up: Vec<usize> = (0..k).map(|i| p.upper_block(i)).collect();
    let low: Vec<usize> = (0..l).map(|j| p.lower_block(j)).collect();
    let nb = p.num_blocks();
    let mut values = vec![0usize; nb];
    let mut out = Vec::with_capacity(n.pow(nb as u32));
    loop {
        let c = up.iter().fold(0, |acc, &b| acc * n + values[b]);
        let r = low.iter().fold(0, |acc, &b| acc * n + values[b]);
        out.push((r, c));
        let mut t = 0;
        while t < nb && values[t] + 1 == n {
            values[t] = 0;
            t += 1;
        }
        if t == nb {
            break;
        }
        values[t] += 1;
    }
    out.sort_unstable();
    out
}

/// `T_p` as a dense matrix with `n^l` rows and `n^k` columns.
pub fn build_map(p: &SetPartition, n: u64, max_entries: u128) -> Result<ExactMatrix> {
    let nn = check_dimension(n)?;
    let rows = (n as u128).pow(p.lower() as u32);
    let cols = (n as u128).pow(p.upper() as u32);
    check_entries(rows, cols, max_entries)?;
    let mut m = ExactMatrix::zeros(rows as usize, cols as usize);
    for (r, c) in support(p, nn) {
        m.set(r, c, BigInt::one());
    }
    Ok(m)
}

/// `T_p` in sparse form. `max_entries` bounds the number of stored ones,
/// `n^{#blocks}`.
pub fn sparse_map(p: &SetPartition, n: u64, max_entries: u128) -> Result<SparseMatrix> {
    let nn = check_dimension(n)?;
    check_entries((n as u128).pow(p.num_blocks() as u32), 1, max_entries)?;
    Ok(SparseMatrix::from_ones(
        nn.pow(p.lower() as u32),
        nn.pow(p.upper() as u32),
        support(p, nn),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionResult {
    pub partition: SetPartition,
    pub closed_blocks: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Stacks `q` on top of `p`; requires `q.lower() == p.upper()`.
pub fn compose(p: &SetPartition, q: &SetPartition) -> Result<CompositionResult> {
    if q.lower() != p.upper() {
        return Err(Error::ArityMismatch(format!(
            "cannot stack NC({},{}) on top of NC({},{})",
            q.upper(),
            q.lower(),
            p.upper(),
            p.lower()
        )));
    }
    // rows: q's upper row, the shared middle row, p's lower row
    let (top, mid, bot) = (q.upper(), p.upper(), p.lower());
    let top_id = |i: usize| i;
    let mid_id = |i: usize| top + i;
    let bot_id = |j: usize| top + mid + j;
    let mut uf = UnionFind::new(top + mid + bot);

    for block in q.blocks() {
        let ids: Vec<usize> = block
            .iter()
            .map(|&pt| match pt {
                Point::Upper(i) => top_id(i),
                Point::Lower(j) => mid_id(j),
            })
            .collect();
        for w in ids.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    for block in p.blocks() {
        let ids: Vec<usize> = block
            .iter()
            .map(|&pt| match pt {
                Point::Upper(i) => mid_id(i),
                Point::Lower(j) => bot_id(j),
            })
            .collect();
        for w in ids.windows(2) {
            uf.union(w[0], w[1]);
        }
    }

    let mut outer_roots = std::collections::HashSet::new();
    let mut ids = Vec::with_capacity(top + bot);
    for i in 0..top {
        let r = uf.find(top_id(i));
        outer_roots.insert(r);
    }
    for j in 0..bot {
        let r = uf.find(bot_id(j));
        outer_roots.insert(r);
    }
    let mut mid_roots = std::collections::HashSet::new();
    for i in 0..mid {
        mid_roots.insert(uf.find(mid_id(i)));
    }
    let closed_blocks = mid_roots.difference(&outer_roots).count();

    let mut blocks: HashMap<usize, Vec<Point>> = HashMap::new();
    for i in 0..top {
        blocks.entry(uf.find(top_id(i))).or_default().push(Point::Upper(i));
    }
    for j in 0..bot {
        blocks.entry(uf.find(bot_id(j))).or_default().push(Point::Lower(j));
    }
    ids.extend(blocks.into_values());
    let partition = SetPartition::from_blocks(top, bot, &ids)?;
    Ok(CompositionResult {
        partition,
        closed_blocks,
    })
}

/// Exact check of `T_p · T_q = n^b · T_{p∘q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorialityReport {
    pub closed_blocks: usize,
    pub scalar: BigInt,
    pub holds: bool,
}

pub fn verify_functoriality(
    p: &SetPartition,
    q: &SetPartition,
    n: u64,
    max_entries: u128,
) -> Result<FunctorialityReport> {
    let comp = compose(p, q)?;
    let tp = sparse_map(p, n, max_entries)?;
    let tq = sparse_map(q, n, max_entries)?;
    let product = tp.mul(&tq)?;
    let scalar = BigInt::from(n).pow(comp.closed_blocks as u32);
    let expected = sparse_map(&comp.partition, n, max_entries)?.scale(&scalar);
    Ok(FunctorialityReport {
        closed_blocks: comp.closed_blocks,
        scalar,
        holds: product == expected,
    })
}

/// Exact check of `T_{p⊗q} = T_p ⊗ T_q`.
pub fn verify_tensor(p: &SetPartition, q: &SetPartition, n: u64, max_entries: u128) -> Result<bool> {
    let lhs = sparse_map(&p.tensor(q), n, max_entries)?;
    let rhs = sparse_map(p, n, max_entries)?.kron(&sparse_map(q, n, max_entries)?);
    Ok(lhs == rhs)
}

/// Exact check of `T_{p*} = T_pᵀ`.
pub fn verify_involution(p: &SetPartition, n: u64, max_entries: u128) -> Result<bool> {
    Ok(sparse_map(&p.involution(), n, max_entries)? == sparse_map(p, n, max_entries)?.transpose())
}

fn same_shape(ps: &[SetPartition]) -> Result<()> {
    if let Some(first) = ps.first() {
        if ps
            .iter()
            .any(|p| (p.upper(), p.lower()) != (first.upper(), first.lower()))
        {
            return Err(Error::ArityMismatch("partitions of different shapes".into()));
        }
    }
    Ok(())
}

fn sparse_vector(p: &SetPartition, n: usize) -> Vec<(usize, BigInt)> {
    let cols = n.pow(p.upper() as u32);
    support(p, n)
        .into_iter()
        .map(|(r, c)| (r * cols + c, BigInt::one()))
        .collect()
}

/// Rank over Q of `{T_p}` viewed as vectors.
pub fn span_rank(ps: &[SetPartition], n: u64, max_entries: u128, exec: Exec) -> Result<usize> {
    same_shape(ps)?;
    let nn = check_dimension(n)?;
    let Some(first) = ps.first() else { return Ok(0) };
    check_entries(
        (n as u128).pow(first.lower() as u32),
        (n as u128).pow(first.upper() as u32),
        max_entries,
    )?;
    let vectors = exec.map(ps, |p| sparse_vector(p, nn));
    Ok(linalg::span_rank_sparse(&vectors, exec))
}

/// `dim Hom(u_upper, u_lower)` as the rank of the label-admissible `T_p`.
pub fn hom_dim_oracle(
    t: &LabeledTuple,
    n: u64,
    m: Modulus,
    max_points: usize,
    max_entries: u128,
    exec: Exec,
) -> Result<usize> {
    let admissible: Vec<SetPartition> = enumerate_nc(t.upper.len(), t.lower.len(), max_points)?
        .into_iter()
        .filter(|p| satisfies_label_condition(p, t, m))
        .collect();
    span_rank(&admissible, n, max_entries, exec)
}

/// Gram matrix of all of `NC(k, l)` at a fixed `n`, reused for every label
/// tuple of that shape: the rank for an admissible subset is the rank of the
/// matching principal submatrix.
#[derive(Clone, Debug)]
pub struct ShapeOracle {
    n: u64,
    partitions: Vec<SetPartition>,
    gram: Vec<Vec<BigInt>>,
}

impl ShapeOracle {
    pub fn new(upper: usize, lower: usize, n: u64, max_points: usize, max_entries: u128, exec: Exec) -> Result<Self> {
        let nn = check_dimension(n)?;
        check_entries(
            (n as u128).pow(lower as u32),
            (n as u128).pow(upper as u32),
            max_entries,
        )?;
        let partitions = enumerate_nc(upper, lower, max_points)?;
        let vectors = exec.map(&partitions, |p| sparse_vector(p, nn));
        let gram = linalg::gram_matrix(&vectors, exec);
        Ok(ShapeOracle { n, partitions, gram })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn partitions(&self) -> &[SetPartition] {
        &self.partitions
    }

    pub fn full_rank(&self, exec: Exec) -> usize {
        linalg::bareiss_rank(self.gram.clone(), exec)
    }

    /// Returns `(admissible count, rank of their maps)`.
    pub fn hom_dim(&self, t: &LabeledTuple, m: Modulus, exec: Exec) -> (usize, usize) {
        let idx: Vec<usize> = (0..self.partitions.len())
            .filter(|&i| satisfies_label_condition(&self.partitions[i], t, m))
            .collect();
        let sub: Vec<Vec<BigInt>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.gram[i][j].clone()).collect())
            .collect();
        let rank = if sub.is_empty() {
            0
        } else {
            linalg::bareiss_rank(sub, exec)
        };
        (idx.len(), rank)
    }
}

/// `T` of the one-block partition on `l` lower points, as a column vector.
pub fn one_block_vector(l: usize, n: u64, max_entries: u128) -> Result<ExactMatrix> {
    build_map(&crate::partition::one_block(l), n, max_entries)
}
