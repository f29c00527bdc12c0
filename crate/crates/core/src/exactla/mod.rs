//! Exact linear algebra over the rationals.
//!
//! Everything downstream reduces to ranks and kernels of graded linear maps.
//! Those maps are extremely sparse and, for curves with a diagonal symmetry,
//! split into many independent blocks; [`SparseMatrix`] finds the connected
//! components of the row/column incidence graph and eliminates each block
//! densely. The rank of a block-diagonal matrix is the sum of the block ranks
//! and its reduced kernel basis is the union of the block kernel bases, so the
//! split never changes a result.

mod elim;
pub mod modular;
mod ring;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use self::elim::{echelon_exact, integer_rows, rank_exact, IntRows};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rat = num_rational::BigRational;

/// Sparse vector as `(index, value)` pairs, sorted by index, no zero values.
pub type SparseVec = Vec<(usize, Rat)>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// How ranks are obtained.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithmeticMode {
    /// Fraction-free elimination over the integers.
    #[default]
    Exact,
    /// Modular rank, then an exact kernel certificate for the upper bound.
    Verify,
    /// Modular rank only; results are probabilistic.
    Trust,
}

impl ArithmeticMode {
    pub fn is_probabilistic(self) -> bool {
        self == ArithmeticMode::Trust
    }
}

impl fmt::Display for ArithmeticMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArithmeticMode::Exact => "exact",
            ArithmeticMode::Verify => "verify",
            ArithmeticMode::Trust => "trust",
        })
    }
}

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rat>>) -> Result<Self, LinAlgError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinAlgError::DimensionMismatch { expected: cols, got: row.len() });
            }
            data.extend(row);
        }
        Ok(QMatrix { rows: nrows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        QMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).fold(Rat::zero(), |acc, (a, b)| acc + a * b))
            .collect())
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let mut s = SparseMatrix::new(self.rows);
        for c in 0..self.cols {
            s.push_column((0..self.rows).filter(|&r| !self.get(r, c).is_zero()).map(|r| (r, self.get(r, c).clone())).collect());
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rank_with(ArithmeticMode::Exact)
    }

    pub fn rank_with(&self, mode: ArithmeticMode) -> usize {
        self.to_sparse().rank(mode)
    }

    /// Reduced kernel basis: one vector per non-pivot column `c`, with a 1 at
    /// `c`, zeros at the other non-pivot columns, ordered by `c`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        self.to_sparse().kernel_basis().into_iter().map(|v| densify(&v, self.cols)).collect()
    }

    /// Reduced row echelon basis of the row space, each row scaled to a
    /// leading 1.
    pub fn row_space_basis(&self) -> Vec<Vec<Rat>> {
        let rows: Vec<Vec<Rat>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let e = echelon_exact(&rows, self.cols, true);
        e.pivots
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let lead = e.rows[i][p].clone();
                e.rows[i].iter().map(|x| Rat::new(x.clone(), lead.clone())).collect()
            })
            .collect()
    }

    /// Some `x` with `M x = v` when `v` lies in the column span. Non-pivot
    /// coordinates of `x` are zero.
    pub fn solve_membership(&self, v: &[Rat]) -> Result<Option<Vec<Rat>>, LinAlgError> {
        if v.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, got: v.len() });
        }
        let augmented: Vec<Vec<Rat>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(v[r].clone());
                row
            })
            .collect();
        let e = echelon_exact(&augmented, self.cols + 1, true);
        if e.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (i, &p) in e.pivots.iter().enumerate() {
            x[p] = Rat::new(e.rows[i][self.cols].clone(), e.rows[i][p].clone());
        }
        Ok(Some(x))
    }
}

pub fn densify(v: &SparseVec, len: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn sparsify(v: &[Rat]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Column-major sparse matrix.
#[derive(Debug, Clone, Default)]
pub struct SparseMatrix {
    nrows: usize,
    columns: Vec<SparseVec>,
}

#[derive(Debug)]
struct Block {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl SparseMatrix {
    pub fn new(nrows: usize) -> Self {
        SparseMatrix { nrows, columns: Vec::new() }
    }

    /// Appends a column; zero entries are dropped and duplicates summed.
    pub fn push_column(&mut self, mut col: SparseVec) {
        col.sort_by_key(|(i, _)| *i);
        let mut merged: SparseVec = Vec::with_capacity(col.len());
        for (i, v) in col {
            assert!(i < self.nrows, "row index {i} out of range {}", self.nrows);
            match merged.last_mut() {
                Some((j, acc)) if *j == i => *acc += v,
                _ => merged.push((i, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        self.columns.push(merged);
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.columns[c]
    }

    pub fn to_dense(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.nrows, self.ncols());
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                m.set(*r, c, v.clone());
            }
        }
        m
    }

    /// `M v` as a sparse vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = vec![Rat::zero(); self.nrows];
        for (c, x) in v {
            for (r, m) in &self.columns[*c] {
                acc[*r] += m * x;
            }
        }
        sparsify(&acc)
    }

    /// Connected components of the bipartite row/column incidence graph,
    /// ordered by smallest column. Empty rows are omitted.
    fn blocks(&self) -> Vec<Block> {
        let n = self.nrows + self.ncols();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (c, col) in self.columns.iter().enumerate() {
            let cn = self.nrows + c;
            for (r, _) in col {
                let (a, b) = (find(&mut parent, cn), find(&mut parent, *r));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut index_of_root = vec![usize::MAX; n];
        let mut blocks: Vec<Block> = Vec::new();
        for c in 0..self.ncols() {
            let root = find(&mut parent, self.nrows + c);
            if index_of_root[root] == usize::MAX {
                index_of_root[root] = blocks.len();
                blocks.push(Block { rows: Vec::new(), cols: Vec::new() });
            }
            blocks[index_of_root[root]].cols.push(c);
        }
        for r in 0..self.nrows {
            let root = find(&mut parent, r);
            if index_of_root[root] != usize::MAX {
                blocks[index_of_root[root]].rows.push(r);
            }
        }
        blocks
    }

    fn block_rows(&self, block: &Block) -> Vec<Vec<Rat>> {
        let mut local = vec![usize::MAX; self.nrows];
        for (i, &r) in block.rows.iter().enumerate() {
            local[r] = i;
        }
        let mut rows = vec![vec![Rat::zero(); block.cols.len()]; block.rows.len()];
        for (j, &c) in block.cols.iter().enumerate() {
            for (r, v) in &self.columns[c] {
                rows[local[*r]][j] = v.clone();
            }
        }
        rows
    }

    pub fn rank(&self, mode: ArithmeticMode) -> usize {
        self.blocks()
            .par_iter()
            .map(|b| {
                if b.rows.is_empty() {
                    return 0;
                }
                let rows = self.block_rows(b);
                match mode {
                    ArithmeticMode::Exact => rank_exact(&rows, b.cols.len()),
                    ArithmeticMode::Trust => modular_rank(&rows, b.cols.len()).0,
                    ArithmeticMode::Verify => verified_rank(&rows, b.cols.len()),
                }
            })
            .sum()
    }

    pub fn nullity(&self, mode: ArithmeticMode) -> usize {
        self.ncols() - self.rank(mode)
    }

    /// Reduced kernel basis (see [`QMatrix::kernel_basis`]), always exact.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let mut keyed: Vec<(usize, SparseVec)> = self
            .blocks()
            .par_iter()
            .flat_map_iter(|b| {
                let rows = self.block_rows(b);
                block_kernel(&rows, b.cols.len())
                    .into_iter()
                    .map(|(free, v)| {
                        let mut g: SparseVec = v.into_iter().map(|(i, x)| (b.cols[i], x)).collect();
                        g.sort_by_key(|(i, _)| *i);
                        (b.cols[free], g)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        keyed.sort_by_key(|(free, _)| *free);
        keyed.into_iter().map(|(_, v)| v).collect()
    }
}

/// Kernel of a dense block, keyed by free column; indices are block-local.
fn block_kernel(rows: &[Vec<Rat>], ncols: usize) -> Vec<(usize, SparseVec)> {
    if rows.is_empty() {
        return (0..ncols).map(|c| (c, vec![(c, Rat::one())])).collect();
    }
    let e = echelon_exact(rows, ncols, true);
    let mut is_pivot = vec![false; ncols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|c| {
            let mut v: SparseVec = vec![(c, Rat::one())];
            for (i, &p) in e.pivots.iter().enumerate() {
                let entry = &e.rows[i][c];
                if !entry.is_zero() {
                    v.push((p, -Rat::new(entry.clone(), e.rows[i][p].clone())));
                }
            }
            (c, v)
        })
        .collect()
}

fn big_rows(rows: &[Vec<Rat>]) -> Vec<Vec<BigInt>> {
    match integer_rows(rows) {
        IntRows::Small(s) => s.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect(),
        IntRows::Big(b) => b,
    }
}

/// Best modular rank over several primes, with the winning pivot data.
fn modular_rank(rows: &[Vec<Rat>], ncols: usize) -> (usize, Vec<usize>) {
    let ints = big_rows(rows);
    modular::word_primes()
        .iter()
        .take(modular::PRIMES_PER_RANK)
        .map(|&p| {
            let (r, _, pivot_rows) = modular::rank_mod_p(&ints, ncols, p);
            (r, pivot_rows)
        })
        .max_by_key(|(r, _)| *r)
        .expect("at least one prime")
}

/// Modular lower bound, then an exact certificate that the kernel has the
/// complementary dimension: the reduced kernel of the modular pivot rows must
/// annihilate every other row. Falls back to full exact elimination when the
/// certificate fails.
fn verified_rank(rows: &[Vec<Rat>], ncols: usize) -> usize {
    let (r, pivot_rows) = modular_rank(rows, ncols);
    let mut chosen = pivot_rows.clone();
    chosen.sort_unstable();
    let sub: Vec<Vec<Rat>> = chosen.iter().map(|&i| rows[i].clone()).collect();
    let kernel = block_kernel(&sub, ncols);
    if kernel.len() + r != ncols {
        return rank_exact(rows, ncols);
    }
    let mut in_sub = vec![false; rows.len()];
    for &i in &chosen {
        in_sub[i] = true;
    }
    let certified = rows.iter().enumerate().filter(|(i, _)| !in_sub[*i]).all(|(_, row)| {
        kernel
            .iter()
            .all(|(_, v)| v.iter().fold(Rat::zero(), |acc, (j, x)| if row[*j].is_zero() { acc } else { acc + &row[*j] * x }).is_zero())
    });
    if certified {
        r
    } else {
        rank_exact(rows, ncols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ones(n: usize) -> QMatrix {
        QMatrix::from_fn(n, n, |_, _| rat(1))
    }

    #[test]
    fn identity_rank_and_kernel() {
        let id = QMatrix::identity(2);
        assert_eq!(id.rank(), 2);
        assert!(id.kernel_basis().is_empty());
        let v = vec![rat(3), rat_frac(-1, 7)];
        assert_eq!(id.solve_membership(&v).unwrap(), Some(v));
    }

    #[test]
    fn all_ones_has_rank_one() {
        assert_eq!(ones(3).rank(), 1);
        assert_eq!(ones(3).kernel_basis().len(), 2);
    }

    #[test]
    fn zero_row_vector_kernel_is_everything() {
        let z = QMatrix::zeros(1, 3);
        let k = z.kernel_basis();
        assert_eq!(k.len(), 3);
        assert_eq!(k[0], vec![rat(1), rat(0), rat(0)]);
        assert_eq!(k[2], vec![rat(0), rat(0), rat(1)]);
    }

    #[test]
    fn empty_matrix() {
        let m = QMatrix::zeros(0, 0);
        assert_eq!(m.rank(), 0);
        assert!(m.kernel_basis().is_empty());
        assert_eq!(SparseMatrix::new(4).rank(ArithmeticMode::Exact), 0);
    }

    #[test]
    fn membership_outside_rank_one_span() {
        let m = QMatrix::from_rows(2, vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]]).unwrap();
        assert_eq!(m.solve_membership(&[rat(1), rat(0)]).unwrap(), None);
        let x = m.solve_membership(&[rat(3), rat(6)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![rat(3), rat(6)]);
    }

    #[test]
    fn membership_dimension_mismatch() {
        let m = QMatrix::identity(2);
        assert_eq!(m.solve_membership(&[rat(1)]), Err(LinAlgError::DimensionMismatch { expected: 2, got: 1 }));
        assert!(QMatrix::from_rows(2, vec![vec![rat(1)]]).is_err());
    }

    #[test]
    fn kernel_is_reduced() {
        // x + 2y + 3z = 0, free columns y and z
        let m = QMatrix::from_rows(3, vec![vec![rat(1), rat(2), rat(3)]]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![rat(-2), rat(1), rat(0)], vec![rat(-3), rat(0), rat(1)]]);
    }

    #[test]
    fn block_split_matches_dense() {
        // two disjoint blocks plus an empty column and an empty row
        let mut s = SparseMatrix::new(4);
        s.push_column(vec![(0, rat(1)), (2, rat(2))]);
        s.push_column(vec![(1, rat(5))]);
        s.push_column(vec![]);
        s.push_column(vec![(0, rat(2)), (2, rat(4))]);
        assert_eq!(s.rank(ArithmeticMode::Exact), 2);
        let k = s.kernel_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![(2, rat(1))]);
        assert_eq!(k[1], vec![(0, rat(-2)), (3, rat(1))]);
        for v in &k {
            assert!(s.apply(v).is_empty());
        }
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        prop_oneof![
            3 => Just(rat(0)),
            4 => (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat_frac(n, d)),
        ]
    }

    fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = QMatrix> {
        (0..=max_rows, 0..=max_cols)
            .prop_flat_map(|(r, c)| proptest::collection::vec(small_rat(), r * c).prop_map(move |data| QMatrix { rows: r, cols: c, data }))
    }

    /// Low-rank product of random factors, so rank deficiency actually occurs.
    fn low_rank(n: usize, m: usize) -> impl Strategy<Value = QMatrix> {
        (1..=n.min(m)).prop_flat_map(move |k| {
            (proptest::collection::vec(small_rat(), n * k), proptest::collection::vec(small_rat(), k * m))
                .prop_map(move |(a, b)| QMatrix::from_fn(n, m, |i, j| (0..k).fold(rat(0), |acc, t| acc + &a[i * k + t] * &b[t * m + j])))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn rank_nullity(m in matrix(8, 9)) {
            prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn kernel_residual_is_exactly_zero(m in low_rank(20, 30)) {
            let k = m.kernel_basis();
            prop_assert_eq!(k.len() + m.rank(), 30);
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn rank_of_transpose(m in matrix(10, 12)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn modular_modes_agree_with_exact(m in low_rank(12, 15)) {
            let exact = m.rank();
            prop_assert_eq!(m.rank_with(ArithmeticMode::Verify), exact);
            prop_assert_eq!(m.rank_with(ArithmeticMode::Trust), exact);
        }

        #[test]
        fn membership_of_image(m in matrix(7, 6), x in proptest::collection::vec(small_rat(), 6)) {
            prop_assume!(m.cols() == 6);
            let v = m.mul_vec(&x).unwrap();
            let sol = m.solve_membership(&v).unwrap();
            prop_assert!(sol.is_some());
            prop_assert_eq!(m.mul_vec(&sol.unwrap()).unwrap(), v);
        }
    }
}
