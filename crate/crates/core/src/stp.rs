// SPDX-License-Identifier: Apache-2.0

//! Canonical vectors, logical matrices, Boolean-semiring matrices and the
//! left semi-tensor product.
//!
//! Every index exposed by this module is 1-based, so `LogicalVector::new(k, i)`
//! is the canonical vector δ_k^i. Storage is 0-based internally.

use std::fmt;

use crate::error::{Error, Result};

/// The canonical vector δ_k^i: the i-th column of the k×k identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogicalVector {
    dim: usize,
    index: usize,
}

impl LogicalVector {
    pub fn new(dim: usize, index: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if index == 0 || index > dim {
            return Err(Error::IndexOutOfRange {
                what: "canonical vector",
                index,
                bound: dim,
            });
        }
        Ok(LogicalVector { dim, index })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// δ_M^i ⋉ δ_N^j = δ_{MN}^{(i-1)N+j}.
    pub fn stp(&self, other: &LogicalVector) -> LogicalVector {
        LogicalVector {
            dim: self.dim * other.dim,
            index: (self.index - 1) * other.dim + other.index,
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.dim, 1);
        m.set(self.index - 1, 0, 1);
        m
    }
}

impl fmt::Display for LogicalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "δ_{}^{}", self.dim, self.index)
    }
}

/// Maps a Boolean vector X ∈ {0,1}^n to the canonical vector obtained as the
/// semi-tensor product of the per-bit vectors [X_j, ¬X_j]ᵀ.
///
/// A bit equal to 1 selects δ_2^1, a bit equal to 0 selects δ_2^2, so the
/// all-ones vector maps to δ_{2^n}^1 and the all-zeros vector to δ_{2^n}^{2^n}.
pub fn encode_boolean_vector(bits: &[i64]) -> Result<LogicalVector> {
    if bits.is_empty() {
        return Err(Error::ZeroDimension);
    }
    let mut acc: Option<LogicalVector> = None;
    for &b in bits {
        let factor = match b {
            1 => LogicalVector { dim: 2, index: 1 },
            0 => LogicalVector { dim: 2, index: 2 },
            other => return Err(Error::NotBoolean(other)),
        };
        acc = Some(match acc {
            None => factor,
            Some(prev) => prev.stp(&factor),
        });
    }
    Ok(acc.expect("nonempty input"))
}

/// Inverse of [`encode_boolean_vector`] for a vector of dimension 2^n.
pub fn decode_logical_vector(v: &LogicalVector, n: u32) -> Result<Vec<i64>> {
    let expected = 1usize
        .checked_shl(n)
        .filter(|_| n < usize::BITS)
        .ok_or(Error::DimensionMismatch {
            context: "Boolean decoding",
            expected: usize::MAX,
            found: v.dim,
        })?;
    if v.dim != expected || n == 0 {
        return Err(Error::DimensionMismatch {
            context: "Boolean decoding",
            expected,
            found: v.dim,
        });
    }
    let offset = v.index - 1;
    Ok((0..n)
        .map(|j| {
            let bit = (offset >> (n - 1 - j)) & 1;
            1 - bit as i64
        })
        .collect())
}

/// A k×q matrix whose columns are all canonical vectors, stored as the array
/// of (1-based) row positions of the nonzero entry in each column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LogicalMatrix {
    rows: usize,
    col_index: Vec<usize>,
}

impl LogicalMatrix {
    pub fn new(rows: usize, col_index: Vec<usize>) -> Result<Self> {
        if rows == 0 || col_index.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(&bad) = col_index.iter().find(|&&c| c == 0 || c > rows) {
            return Err(Error::IndexOutOfRange {
                what: "logical matrix entry",
                index: bad,
                bound: rows,
            });
        }
        Ok(LogicalMatrix { rows, col_index })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.col_index.len()
    }

    pub fn col_index(&self) -> &[usize] {
        &self.col_index
    }

    /// Column `c` (1-based) as a canonical vector.
    pub fn column(&self, c: usize) -> Result<LogicalVector> {
        if c == 0 || c > self.cols() {
            return Err(Error::IndexOutOfRange {
                what: "column",
                index: c,
                bound: self.cols(),
            });
        }
        Ok(LogicalVector {
            dim: self.rows,
            index: self.col_index[c - 1],
        })
    }

    /// A ⋉ v for a canonical vector v whose dimension divides the column count.
    ///
    /// With q = n·s, A ⋉ δ_n^j = A (δ_n^j ⊗ I_s), which selects the j-th block of
    /// s consecutive columns.
    pub fn stp_vector(&self, v: &LogicalVector) -> Result<LogicalMatrix> {
        if !self.cols().is_multiple_of(v.dim) {
            return Err(Error::DimensionMismatch {
                context: "logical semi-tensor product",
                expected: self.cols(),
                found: v.dim,
            });
        }
        let block = self.cols() / v.dim;
        let start = (v.index - 1) * block;
        Ok(LogicalMatrix {
            rows: self.rows,
            col_index: self.col_index[start..start + block].to_vec(),
        })
    }

    /// Ordinary product A·x with a canonical vector of matching dimension.
    pub fn apply(&self, x: &LogicalVector) -> Result<LogicalVector> {
        if self.cols() != x.dim {
            return Err(Error::DimensionMismatch {
                context: "logical matrix-vector product",
                expected: self.cols(),
                found: x.dim,
            });
        }
        Ok(LogicalVector {
            dim: self.rows,
            index: self.col_index[x.index - 1],
        })
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.rows, self.cols());
        for (c, &r) in self.col_index.iter().enumerate() {
            m.set(r - 1, c, 1);
        }
        m
    }
}

/// A ⋉ u ⋉ x for logical A, i.e. column (i-1)N + j of A where u = δ_M^i and
/// x = δ_N^j.
pub fn stp_logical(a: &LogicalMatrix, u: &LogicalVector, x: &LogicalVector) -> Result<LogicalVector> {
    if a.cols() != u.dim * x.dim {
        return Err(Error::DimensionMismatch {
            context: "logical semi-tensor product",
            expected: a.cols(),
            found: u.dim * x.dim,
        });
    }
    Ok(LogicalVector {
        dim: a.rows,
        index: a.col_index[(u.index - 1) * x.dim + x.index - 1],
    })
}

const WORD: usize = 64;

fn words_for(dim: usize) -> usize {
    dim.div_ceil(WORD)
}

/// A {0,1} vector stored as a bitset. Positions are 1-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanVector {
    dim: usize,
    words: Vec<u64>,
}

impl BooleanVector {
    pub fn zeros(dim: usize) -> Self {
        BooleanVector {
            dim,
            words: vec![0; words_for(dim)],
        }
    }

    pub fn ones(dim: usize) -> Self {
        let mut v = Self::zeros(dim);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.clear_tail();
        v
    }

    pub fn from_bits(bits: &[i64]) -> Result<Self> {
        let mut v = Self::zeros(bits.len());
        for (p, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => v.words[p / WORD] |= 1 << (p % WORD),
                other => return Err(Error::NotBoolean(other)),
            }
        }
        Ok(v)
    }

    /// Indicator vector of a set of 1-based positions.
    pub fn from_support(dim: usize, support: &[usize]) -> Result<Self> {
        let mut v = Self::zeros(dim);
        for &j in support {
            v.check(j)?;
            v.insert(j);
        }
        Ok(v)
    }

    fn check(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.dim {
            return Err(Error::IndexOutOfRange {
                what: "Boolean vector",
                index: j,
                bound: self.dim,
            });
        }
        Ok(())
    }

    fn clear_tail(&mut self) {
        let rem = self.dim % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Panics if `j` is outside [1, dim].
    pub fn contains(&self, j: usize) -> bool {
        assert!(j >= 1 && j <= self.dim, "position {j} outside [1, {}]", self.dim);
        let p = j - 1;
        self.words[p / WORD] >> (p % WORD) & 1 == 1
    }

    /// Panics if `j` is outside [1, dim].
    pub fn insert(&mut self, j: usize) {
        assert!(j >= 1 && j <= self.dim, "position {j} outside [1, {}]", self.dim);
        let p = j - 1;
        self.words[p / WORD] |= 1 << (p % WORD);
    }

    pub fn remove(&mut self, j: usize) {
        assert!(j >= 1 && j <= self.dim, "position {j} outside [1, {}]", self.dim);
        let p = j - 1;
        self.words[p / WORD] &= !(1 << (p % WORD));
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_all_ones(&self) -> bool {
        *self == Self::ones(self.dim)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Sorted 1-based positions of the nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b + 1)
            })
        })
    }

    pub fn to_bits(&self) -> Vec<i64> {
        (1..=self.dim).map(|j| self.contains(j) as i64).collect()
    }

    fn same_dim(&self, other: &Self, context: &'static str) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Entry-wise AND.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.same_dim(other, "Hadamard product")?;
        Ok(BooleanVector {
            dim: self.dim,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        })
    }

    /// Entry-wise OR.
    pub fn or(&self, other: &Self) -> Result<Self> {
        self.same_dim(other, "Boolean sum")?;
        Ok(BooleanVector {
            dim: self.dim,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        })
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for BooleanVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for j in 1..=self.dim {
            write!(f, "{}", self.contains(j) as u8)?;
        }
        write!(f, "]")
    }
}

/// A dense {0,1} matrix multiplied in the Boolean semiring (AND/OR).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanMatrix {
    cols: usize,
    rows: Vec<BooleanVector>,
}

impl BooleanMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BooleanMatrix {
            cols,
            rows: vec![BooleanVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for j in 1..=n {
            m.rows[j - 1].insert(j);
        }
        m
    }

    /// Row-major 0/1 entries.
    pub fn from_bits(rows: usize, cols: usize, bits: &[i64]) -> Result<Self> {
        if bits.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "Boolean matrix entries",
                expected: rows * cols,
                found: bits.len(),
            });
        }
        let rows = if cols == 0 {
            vec![BooleanVector::zeros(0); rows]
        } else {
            bits.chunks(cols)
                .map(BooleanVector::from_bits)
                .collect::<Result<Vec<_>>>()?
        };
        Ok(BooleanMatrix { cols, rows })
    }

    pub fn from_logical(l: &LogicalMatrix) -> Self {
        let mut m = Self::zeros(l.rows(), l.cols());
        for (c, &r) in l.col_index().iter().enumerate() {
            m.rows[r - 1].insert(c + 1);
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    /// Entry at 1-based (row, col).
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r - 1].contains(c)
    }

    pub fn set(&mut self, r: usize, c: usize) {
        self.rows[r - 1].insert(c);
    }

    pub fn row(&self, r: usize) -> &BooleanVector {
        &self.rows[r - 1]
    }

    pub fn column(&self, c: usize) -> BooleanVector {
        let mut v = BooleanVector::zeros(self.n_rows());
        for (r, row) in self.rows.iter().enumerate() {
            if row.contains(c) {
                v.insert(r + 1);
            }
        }
        v
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.n_rows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.rows[c - 1].insert(r + 1);
            }
        }
        t
    }

    pub fn or(&self, other: &Self) -> Result<Self> {
        if self.n_rows() != other.n_rows() || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "Boolean matrix sum",
                expected: self.n_rows() * self.cols,
                found: other.n_rows() * other.cols,
            });
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.or(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(BooleanMatrix { cols: self.cols, rows })
    }

    /// Entry j of the result is OR_i (M[j,i] AND v[i]).
    pub fn matvec(&self, v: &BooleanVector) -> Result<BooleanVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                context: "Boolean matrix-vector product",
                expected: self.cols,
                found: v.dim(),
            });
        }
        let mut out = BooleanVector::zeros(self.n_rows());
        for (r, row) in self.rows.iter().enumerate() {
            if row.intersects(v) {
                out.insert(r + 1);
            }
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.n_rows() {
            return Err(Error::DimensionMismatch {
                context: "Boolean matrix product",
                expected: self.cols,
                found: other.n_rows(),
            });
        }
        let mut out = Self::zeros(self.n_rows(), other.cols);
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc = BooleanVector::zeros(other.cols);
            for i in row.iter_ones() {
                acc = acc.or(&other.rows[i - 1])?;
            }
            out.rows[r] = acc;
        }
        Ok(out)
    }
}

/// Dense integer matrix. Exists to cross-check the index arithmetic of the
/// logical types against the Kronecker definition of the semi-tensor product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Row-major entries.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ZeroDimension);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "dense matrix entries",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 0-based access.
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.data[r * self.cols + c] = value;
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Left semi-tensor product A ⋉ B = (A ⊗ I_{l/n})(B ⊗ I_{l/p}) with
    /// n = cols(A), p = rows(B), l = lcm(n, p).
    pub fn stp(&self, other: &Self) -> Result<Self> {
        if self.rows == 0 || self.cols == 0 || other.rows == 0 || other.cols == 0 {
            return Err(Error::ZeroDimension);
        }
        let n = self.cols;
        let p = other.rows;
        let l = n / gcd(n, p) * p;
        let left = self.kron(&Self::identity(l / n));
        let right = other.kron(&Self::identity(l / p));
        left.matmul(&right)
    }

    /// Interprets the matrix as logical if every column is canonical.
    pub fn to_logical(&self) -> Option<LogicalMatrix> {
        let mut col_index = Vec::with_capacity(self.cols);
        for c in 0..self.cols {
            let mut hit = None;
            for r in 0..self.rows {
                match self.get(r, c) {
                    0 => {}
                    1 if hit.is_none() => hit = Some(r + 1),
                    _ => return None,
                }
            }
            col_index.push(hit?);
        }
        LogicalMatrix::new(self.rows, col_index).ok()
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
