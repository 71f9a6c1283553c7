//! Bitset and dense matrix arithmetic over GF(2).
//!
//! A [`VertexSet`] is a subset of at most 64 vertices packed in one machine word. It is
//! the currency of the whole crate: supports of Pauli operators, members of coding
//! cliques, neighbourhoods of vertex sets. [`Gf2Matrix`] stores rows of up to 128 bits,
//! enough for `[G_x | G_z]` check matrices on 64 qubits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, BitXorAssign, Not};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of the vertex range `0..n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: u64,
    n: u8,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        Self { bits: 0, n: n as u8 }
    }

    pub fn full(n: usize) -> Self {
        Self { bits: low_mask(n), ..Self::empty(n) }
    }

    pub fn singleton(n: usize, v: usize) -> Result<Self> {
        Self::from_elements(n, [v])
    }

    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Unsupported { what: "VertexSet", n, max: MAX_VERTICES });
        }
        if bits & !low_mask(n) != 0 {
            return Err(Error::VertexOutOfRange { vertex: 63 - bits.leading_zeros() as usize, n });
        }
        Ok(Self { bits, n: n as u8 })
    }

    /// Builds a set from 0-indexed vertices; repeated vertices are kept once.
    pub fn from_elements(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = Self::empty(n);
        for v in elements {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            set.bits |= 1 << v;
        }
        Ok(set)
    }

    /// Builds a set from the 1-indexed labels used in all external formats.
    pub fn from_labels(n: usize, labels: &[usize]) -> Result<Self> {
        let mut zero_based = Vec::with_capacity(labels.len());
        for &l in labels {
            if l == 0 || l > n {
                return Err(Error::VertexOutOfRange { vertex: l, n });
            }
            zero_based.push(l - 1);
        }
        Self::from_elements(n, zero_based)
    }

    /// Internal constructor for hot loops where the mask is known to be in range.
    #[inline]
    pub(crate) fn raw(n: usize, bits: u64) -> Self {
        debug_assert!(bits & !low_mask(n) == 0);
        Self { bits, n: n as u8 }
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn n(self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < self.n() && self.bits >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n(), "vertex {v} out of range");
        self.bits |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.n() {
            self.bits &= !(1 << v);
        }
    }

    pub fn toggle(&mut self, v: usize) {
        assert!(v < self.n(), "vertex {v} out of range");
        self.bits ^= 1 << v;
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.bits & !other.bits == 0
    }

    /// Ascending 0-indexed elements.
    pub fn iter(self) -> Elements {
        Elements(self.bits)
    }

    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }

    fn check_dim(self, other: VertexSet) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n(), right: other.n() });
        }
        Ok(())
    }

    /// `A ∪ B − A ∩ B`.
    pub fn sym_diff(self, other: VertexSet) -> Result<VertexSet> {
        self.check_dim(other)?;
        Ok(Self { bits: self.bits ^ other.bits, n: self.n })
    }

    /// `|A ∩ B| mod 2`.
    pub fn parity_intersect(self, other: VertexSet) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.odd_overlap(other))
    }

    #[inline]
    pub fn odd_overlap(self, other: VertexSet) -> bool {
        (self.bits & other.bits).count_ones() & 1 == 1
    }

    /// All `2^n` subsets of `0..n` in increasing bitmask order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
        assert!(n < 64, "subset enumeration needs n < 64");
        (0..1u64 << n).map(move |bits| VertexSet::raw(n, bits))
    }
}

/// Iterator over set elements, lowest first.
#[derive(Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

impl BitXor for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitxor(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "vertex set dimension mismatch");
        Self { bits: self.bits ^ rhs.bits, n: self.n }
    }
}

impl BitXorAssign for VertexSet {
    #[inline]
    fn bitxor_assign(&mut self, rhs: Self) {
        *self = *self ^ rhs;
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitand(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "vertex set dimension mismatch");
        Self { bits: self.bits & rhs.bits, n: self.n }
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitor(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "vertex set dimension mismatch");
        Self { bits: self.bits | rhs.bits, n: self.n }
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> Self {
        Self { bits: !self.bits & low_mask(self.n()), n: self.n }
    }
}

/// Lexicographic order on the ascending element lists, so `{} < {1,2,4} < {1,3} < {2}`.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_cmp(self.bits, other.bits).then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn lex_cmp(a: u64, b: u64) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let p = diff.trailing_zeros();
    let above = |x: u64| if p == 63 { 0 } else { x >> (p + 1) };
    if a >> p & 1 == 1 {
        // `a` continues with p; `b` is either exhausted or continues with something larger.
        if above(b) != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    } else if above(a) != 0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexSet{self}")
    }
}

/// Elementary row operation recorded during elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowOp {
    Swap(usize, usize),
    /// `row[to] ^= row[from]`
    Add {
        from: usize,
        to: usize,
    },
}

/// Dense matrix over GF(2) with at most 128 columns; column `j` is bit `j` of a row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: Vec<u128>,
    cols: usize,
}

pub const MAX_COLS: usize = 128;

#[inline]
fn col_mask(cols: usize) -> u128 {
    if cols >= 128 {
        u128::MAX
    } else {
        (1u128 << cols) - 1
    }
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(cols <= MAX_COLS, "at most {MAX_COLS} columns");
        Self { rows: vec![0; rows], cols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        m
    }

    pub fn from_bit_rows(rows: Vec<u128>, cols: usize) -> Result<Self> {
        if cols > MAX_COLS {
            return Err(Error::Unsupported { what: "Gf2Matrix", n: cols, max: MAX_COLS });
        }
        if rows.iter().any(|r| r & !col_mask(cols) != 0) {
            return Err(Error::DimensionMismatch { left: cols, right: MAX_COLS });
        }
        Ok(Self { rows, cols })
    }

    /// From a row-major 0/1 table.
    pub fn from_table(table: &[Vec<u8>]) -> Result<Self> {
        let cols = table.first().map_or(0, Vec::len);
        let mut rows = Vec::with_capacity(table.len());
        for r in table {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { left: r.len(), right: cols });
            }
            let mut bits = 0u128;
            for (j, &e) in r.iter().enumerate() {
                if e & 1 == 1 {
                    bits |= 1 << j;
                }
            }
            rows.push(bits);
        }
        Self::from_bit_rows(rows, cols)
    }

    pub fn to_table(&self) -> Vec<Vec<u8>> {
        (0..self.nrows()).map(|i| (0..self.cols).map(|j| self.get(i, j) as u8).collect()).collect()
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(j < self.cols);
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    #[inline]
    pub fn row(&self, i: usize) -> u128 {
        self.rows[i]
    }

    pub fn rows(&self) -> &[u128] {
        &self.rows
    }

    pub fn push_row(&mut self, row: u128) {
        assert!(row & !col_mask(self.cols) == 0);
        self.rows.push(row);
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.nrows());
        for i in 0..self.nrows() {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.rows[j] |= 1 << i;
                }
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != rhs.nrows() {
            return Err(Error::DimensionMismatch { left: self.cols, right: rhs.nrows() });
        }
        let mut out = Self::zeros(self.nrows(), rhs.cols);
        for (i, &row) in self.rows.iter().enumerate() {
            let mut acc = 0u128;
            let mut bits = row;
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                acc ^= rhs.rows[k];
                bits &= bits - 1;
            }
            out.rows[i] = acc;
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != rhs.cols || self.nrows() != rhs.nrows() {
            return Err(Error::DimensionMismatch { left: self.nrows(), right: rhs.nrows() });
        }
        Ok(Self { rows: self.rows.iter().zip(&rhs.rows).map(|(a, b)| a ^ b).collect(), cols: self.cols })
    }

    pub fn is_symmetric(&self) -> bool {
        self.nrows() == self.cols && *self == self.transpose()
    }

    /// Columns `start..start+width` as a new matrix.
    pub fn column_block(&self, start: usize, width: usize) -> Gf2Matrix {
        assert!(start + width <= self.cols);
        let mask = col_mask(width);
        Self { rows: self.rows.iter().map(|r| (r >> start) & mask).collect(), cols: width }
    }

    /// Rows `start..start+height` as a new matrix.
    pub fn row_block(&self, start: usize, height: usize) -> Gf2Matrix {
        Self { rows: self.rows[start..start + height].to_vec(), cols: self.cols }
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.nrows() != rhs.nrows() {
            return Err(Error::DimensionMismatch { left: self.nrows(), right: rhs.nrows() });
        }
        let cols = self.cols + rhs.cols;
        if cols > MAX_COLS {
            return Err(Error::Unsupported { what: "Gf2Matrix", n: cols, max: MAX_COLS });
        }
        Ok(Self { rows: self.rows.iter().zip(&rhs.rows).map(|(a, b)| a | b << self.cols).collect(), cols })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch { left: self.cols, right: rhs.cols });
        }
        let mut rows = self.rows.clone();
        rows.extend_from_slice(&rhs.rows);
        Ok(Self { rows, cols: self.cols })
    }

    pub fn apply_row_op(&mut self, op: RowOp) {
        match op {
            RowOp::Swap(a, b) => self.rows.swap(a, b),
            RowOp::Add { from, to } => {
                let r = self.rows[from];
                self.rows[to] ^= r;
            }
        }
    }

    pub fn apply_row_ops(&mut self, ops: &[RowOp]) {
        for &op in ops {
            self.apply_row_op(op);
        }
    }

    /// Reduced row echelon form over GF(2), pivoting on the lowest column first.
    pub fn rref(&self) -> Rref {
        self.rref_on_columns(&(0..self.cols).collect::<Vec<_>>())
    }

    /// Row reduction that only looks for pivots among `columns`, in the given order.
    pub fn rref_on_columns(&self, columns: &[usize]) -> Rref {
        let mut m = self.clone();
        let mut ops = Vec::new();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for &c in columns {
            if rank == m.nrows() {
                break;
            }
            let Some(p) = (rank..m.nrows()).find(|&i| m.get(i, c)) else {
                continue;
            };
            if p != rank {
                ops.push(RowOp::Swap(p, rank));
                m.apply_row_op(RowOp::Swap(p, rank));
            }
            for i in 0..m.nrows() {
                if i != rank && m.get(i, c) {
                    let op = RowOp::Add { from: rank, to: i };
                    ops.push(op);
                    m.apply_row_op(op);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        Rref { matrix: m, rank, pivots, ops }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : M x = 0}` as bit vectors over the columns.
    pub fn nullspace(&self) -> Vec<u128> {
        let r = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = 1u128 << f;
                for (i, &p) in r.pivots.iter().enumerate() {
                    if r.matrix.get(i, f) {
                        v |= 1 << p;
                    }
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.nrows(), self.cols)?;
        for i in 0..self.nrows() {
            let s: String = (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "  {s}")?;
        }
        write!(f, "]")
    }
}

/// Result of [`Gf2Matrix::rref`]: the reduced matrix and the row operations that produce it.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Gf2Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub ops: Vec<RowOp>,
}

/// Basis of `{S ⊆ V : |S ∩ C| even for every constraint C}`.
pub fn solve_even_overlap(constraints: &[VertexSet], n: usize) -> Result<Vec<VertexSet>> {
    for c in constraints {
        if c.n() != n {
            return Err(Error::DimensionMismatch { left: c.n(), right: n });
        }
    }
    let m = Gf2Matrix::from_bit_rows(constraints.iter().map(|c| c.bits() as u128).collect(), n)?;
    Ok(m.nullspace().into_iter().map(|v| VertexSet::raw(n, v as u64)).collect())
}

/// Every element of the span of `generators` (duplicates removed, sorted by bitmask).
pub fn span(generators: &[VertexSet], n: usize) -> Vec<VertexSet> {
    let mut elems = vec![0u64];
    for g in generators {
        if elems.contains(&g.bits()) {
            continue;
        }
        let shifted: Vec<u64> = elems.iter().map(|e| e ^ g.bits()).collect();
        elems.extend(shifted);
    }
    elems.sort_unstable();
    elems.dedup();
    elems.into_iter().map(|b| VertexSet::raw(n, b)).collect()
}
