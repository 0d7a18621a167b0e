//! Prime-field arithmetic and the dense linear algebra used by every other
//! module.
//!
//! Elements are stored as canonical residues `0..q` in a `u16`; products are
//! formed in `u32` so no intermediate can overflow for `q < 2^16`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::{checked_span_size, span_cap};

/// The prime field GF(q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Field {
    q: u16,
}

impl Field {
    /// Builds GF(q), rejecting composite or out-of-range moduli.
    pub fn new(q: u32) -> Result<Self> {
        if !(2..1 << 16).contains(&q) || !is_prime(q) {
            return Err(Error::NonPrimeModulus(q));
        }
        Ok(Field { q: q as u16 })
    }

    pub fn q(self) -> u16 {
        self.q
    }

    /// Canonical residue of an arbitrary integer.
    pub fn reduce(self, v: i64) -> u16 {
        v.rem_euclid(self.q as i64) as u16
    }

    pub fn elem(self, v: i64) -> FieldElement {
        FieldElement { value: self.reduce(v), field: self }
    }

    #[inline]
    pub fn add(self, a: u16, b: u16) -> u16 {
        let s = a as u32 + b as u32;
        let q = self.q as u32;
        (if s >= q { s - q } else { s }) as u16
    }

    #[inline]
    pub fn sub(self, a: u16, b: u16) -> u16 {
        if a >= b {
            a - b
        } else {
            (a as u32 + self.q as u32 - b as u32) as u16
        }
    }

    #[inline]
    pub fn neg(self, a: u16) -> u16 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(self, a: u16, b: u16) -> u16 {
        ((a as u32 * b as u32) % self.q as u32) as u16
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u16) -> Option<u16> {
        if a == 0 {
            return None;
        }
        // extended Euclid on (a, q)
        let (mut r0, mut r1) = (self.q as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce(t0))
    }

    /// `a * x + y` for vectors, written into `y`.
    pub fn axpy(self, a: u16, x: &[u16], y: &mut [u16]) {
        if a == 0 {
            return;
        }
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi = self.add(*yi, self.mul(a, xi));
        }
    }

    pub fn dot(self, x: &[u16], y: &[u16]) -> u16 {
        let q = self.q as u64;
        let mut acc: u64 = 0;
        for (&a, &b) in x.iter().zip(y) {
            acc += a as u64 * b as u64;
            if acc >= 1 << 62 {
                acc %= q;
            }
        }
        (acc % q) as u16
    }

    pub fn scale(self, a: u16, x: &[u16]) -> Vec<u16> {
        x.iter().map(|&v| self.mul(a, v)).collect()
    }
}

impl TryFrom<u32> for Field {
    type Error = Error;

    fn try_from(q: u32) -> Result<Self> {
        Field::new(q)
    }
}

impl From<Field> for u32 {
    fn from(f: Field) -> u32 {
        f.q as u32
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A single element of GF(q) bundled with its field, for ergonomic scalar
/// arithmetic. Bulk data lives in [`Matrix`] as raw residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u16,
    field: Field,
}

impl FieldElement {
    pub fn value(self) -> u16 {
        self.value
    }

    pub fn field(self) -> Field {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<FieldElement> {
        self.field.inv(self.value).map(|value| FieldElement { value, field: self.field })
    }

    fn same_field(self, rhs: FieldElement) -> Field {
        assert_eq!(self.field, rhs.field, "mixed-field arithmetic");
        self.field
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        let f = self.same_field(rhs);
        FieldElement { value: f.add(self.value, rhs.value), field: f }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        let f = self.same_field(rhs);
        FieldElement { value: f.sub(self.value, rhs.value), field: f }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        let f = self.same_field(rhs);
        FieldElement { value: f.mul(self.value, rhs.value), field: f }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { value: self.field.neg(self.value), field: self.field }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Dense row-major matrix over GF(q).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u16>,
}

/// Reduced row-echelon form together with its rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod q.
    /// `cols` fixes the width so that zero-row matrices keep their shape.
    pub fn from_rows<R: AsRef<[i64]>>(field: Field, cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    cols
                )));
            }
            data.extend(row.iter().map(|&v| field.reduce(v)));
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    /// Builds a matrix from rows of canonical residues.
    pub fn from_vectors(field: Field, cols: usize, rows: &[Vec<u16>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    cols
                )));
            }
            data.extend(row.iter().map(|&v| field.reduce(v as i64)));
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    /// Wraps row-major residues; entries are reduced mod q.
    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vec<u16>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {}x{} matrix", data.len(), rows, cols)));
        }
        let data = data.into_iter().map(|v| field.reduce(v as i64)).collect();
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn as_flat(&self) -> &[u16] {
        &self.data
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn get(&self, r: usize, c: usize) -> u16 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u16) {
        let v = self.field.reduce(v as i64);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u16] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn row_mut(&mut self, r: usize) -> &mut [u16] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u16]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_nested(&self) -> Vec<Vec<u16>> {
        self.iter_rows().map(<[u16]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {}x{} over {} on {}x{} over {}",
                other.rows, other.cols, other.field, self.rows, self.cols, self.field
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Appends one row.
    pub fn with_row(&self, v: &[u16]) -> Result<Matrix> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} appended to matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut m = self.clone();
        m.data.extend(v.iter().map(|&x| self.field.reduce(x as i64)));
        m.rows += 1;
        Ok(m)
    }

    /// `self · vᵀ`.
    pub fn mul_vec(&self, v: &[u16]) -> Result<Vec<u16>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self.iter_rows().map(|r| self.field.dot(r, v)).collect())
    }

    /// `v · self`, a combination of rows.
    pub fn combine_rows(&self, coeffs: &[u16]) -> Result<Vec<u16>> {
        if coeffs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("{} coefficients for {} rows", coeffs.len(), self.rows)));
        }
        let mut out = vec![0; self.cols];
        for (r, &c) in coeffs.iter().enumerate() {
            self.field.axpy(c, self.row(r), &mut out);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = vec![0u16; other.cols];
            for k in 0..self.cols {
                self.field.axpy(self.get(r, k), other.row(k), &mut acc);
            }
            out.row_mut(r).copy_from_slice(&acc);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Gauss-Jordan elimination. The row space is preserved; zero rows sink
    /// to the bottom.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            if p != lead {
                for k in 0..m.cols {
                    m.data.swap(p * m.cols + k, lead * m.cols + k);
                }
            }
            let inv = f.inv(m.get(lead, c)).expect("pivot is nonzero");
            for v in m.row_mut(lead) {
                *v = f.mul(*v, inv);
            }
            let pivot_row = m.row(lead).to_vec();
            for r in 0..m.rows {
                if r != lead {
                    let factor = m.get(r, c);
                    if factor != 0 {
                        let neg = f.neg(factor);
                        f.axpy(neg, &pivot_row, m.row_mut(r));
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Rref { matrix: m, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Nonzero rows of the RREF: a basis of the row space.
    pub fn row_basis(&self) -> Matrix {
        let r = self.rref();
        let mut m = r.matrix;
        m.data.truncate(r.rank * m.cols);
        m.rows = r.rank;
        m
    }

    /// A basis of `{v : self · vᵀ = 0}`, one basis vector per row.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { matrix: r, pivots, .. } = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u16; self.cols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        Matrix::from_vectors(f, self.cols, &basis).expect("kernel vectors have full width")
    }

    /// Enumerates the row space, subject to the process-wide cap.
    pub fn row_space(&self) -> Result<RowSpace> {
        self.row_space_capped(span_cap())
    }

    pub fn row_space_capped(&self, cap: u64) -> Result<RowSpace> {
        RowSpace::new(self.row_basis(), cap)
    }

    /// Solution set of `self · x = b`.
    pub fn solve(&self, b: &[u16]) -> Result<SolutionSet> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} equations",
                b.len(),
                self.rows
            )));
        }
        let f = self.field;
        let n = self.cols;
        let mut aug = Matrix::zeros(f, self.rows, n + 1);
        for (r, &rhs) in b.iter().enumerate() {
            aug.row_mut(r)[..n].copy_from_slice(self.row(r));
            aug.data[r * (n + 1) + n] = f.reduce(rhs as i64);
        }
        let Rref { matrix: red, pivots, .. } = aug.rref();
        if pivots.last() == Some(&n) {
            return Err(Error::Inconsistent);
        }
        let mut particular = vec![0u16; n];
        for (i, &p) in pivots.iter().enumerate() {
            particular[p] = red.get(i, n);
        }
        Ok(SolutionSet { particular, nullspace: self.kernel_basis() })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for r in self.iter_rows() {
            write!(f, "\n  {r:?}")?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_nested().serialize(s)
    }
}

/// Particular solution plus a nullspace basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub particular: Vec<u16>,
    pub nullspace: Matrix,
}

impl SolutionSet {
    /// Dimension of the affine solution space.
    pub fn dim(&self) -> usize {
        self.nullspace.rows()
    }

    /// Every solution, particular plus each nullspace combination.
    pub fn iter(&self) -> Result<impl Iterator<Item = Vec<u16>> + '_> {
        let f = self.nullspace.field();
        let space = RowSpace::new(self.nullspace.clone(), span_cap())?;
        Ok(space.map(move |mut v| {
            for (x, &p) in v.iter_mut().zip(&self.particular) {
                *x = f.add(*x, p);
            }
            v
        }))
    }
}

/// Iterator over all `q^k` combinations of `k` independent rows.
///
/// Advances as a base-q counter: bumping digit `i` adds basis row `i`, and a
/// digit wrapping from `q-1` to `0` adds the row once more, so the running
/// vector always equals the combination named by the counter.
#[derive(Clone, Debug)]
pub struct RowSpace {
    basis: Matrix,
    digits: Vec<u16>,
    current: Vec<u16>,
    remaining: u64,
}

impl RowSpace {
    /// `basis` must have independent rows; callers pass an RREF basis.
    pub fn new(basis: Matrix, cap: u64) -> Result<Self> {
        let q = basis.field().q();
        let dim = basis.rows();
        let total = checked_span_size(q, dim, cap).ok_or(Error::SpanTooLarge { q, dim, cap })?;
        Ok(RowSpace { digits: vec![0; dim], current: vec![0; basis.cols()], remaining: total, basis })
    }

    pub fn len(&self) -> u64 {
        self.remaining
    }

    pub fn is_empty(&self) -> bool {
        self.remaining == 0
    }

    /// Calls `visit` with the coefficient vector and the combination, without
    /// allocating per element.
    pub fn visit(mut self, mut visit: impl FnMut(&[u16], &[u16])) {
        while self.remaining > 0 {
            visit(&self.digits, &self.current);
            self.advance();
        }
    }

    fn advance(&mut self) {
        self.remaining -= 1;
        if self.remaining == 0 {
            return;
        }
        let f = self.basis.field();
        let q = f.q();
        for i in 0..self.digits.len() {
            f.axpy(1, self.basis.row(i), &mut self.current);
            self.digits[i] += 1;
            if self.digits[i] < q {
                break;
            }
            self.digits[i] = 0;
        }
    }
}

impl Iterator for RowSpace {
    type Item = Vec<u16>;

    fn next(&mut self) -> Option<Vec<u16>> {
        if self.remaining == 0 {
            return None;
        }
        let out = self.current.clone();
        self.advance();
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

/// Support of a vector as a bitmask, bit `i` set iff `v[i] != 0`.
pub fn support_mask(v: &[u16]) -> u64 {
    v.iter().enumerate().filter(|(_, &x)| x != 0).fold(0u64, |m, (i, _)| m | 1 << i)
}

/// Number of nonzero coordinates.
pub fn weight(v: &[u16]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}
