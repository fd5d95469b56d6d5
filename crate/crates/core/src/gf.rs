//! Exact linear algebra over the prime field Z_d.
//!
//! Everything here works on small dense matrices with `u32` entries that are
//! kept reduced modulo a validated prime. Elimination always pivots on the
//! first row with a nonzero entry in the current column, so echelon forms and
//! nullspace bases are reproducible bit for bit.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
}

/// Trial-division primality test; moduli in this crate are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut f = 3;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// A validated prime modulus `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(d: u64) -> Result<Self, GfError> {
        if d > u32::MAX as u64 || !is_prime(d) {
            return Err(GfError::NotPrime(d));
        }
        Ok(Modulus(d as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.0 as u64 - b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn pow(self, base: u32, mut exp: u64) -> u32 {
        let m = self.0 as u64;
        let mut acc = 1 % m;
        let mut b = base as u64 % m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            exp >>= 1;
        }
        acc as u32
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(self, a: u32) -> Result<u32, GfError> {
        let a = a % self.0;
        if a == 0 {
            return Err(GfError::ZeroInverse);
        }
        Ok(self.pow(a, self.0 as u64 - 2))
    }

    /// Maps a residue to its symmetric representative in (-d/2, d/2].
    pub fn signed(self, a: u32) -> i64 {
        let a = a as i64;
        let d = self.0 as i64;
        if a > d / 2 {
            a - d
        } else {
            a
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of Z_d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GfScalar {
    value: u32,
    modulus: Modulus,
}

impl GfScalar {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        GfScalar {
            value: modulus.reduce(value),
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for GfScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn field_inverse(a: GfScalar) -> Result<GfScalar, GfError> {
    let inv = a.modulus.inv(a.value)?;
    Ok(GfScalar {
        value: inv,
        modulus: a.modulus,
    })
}

/// Dense row-major matrix over Z_d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GfMatrix {
    rows: usize,
    cols: usize,
    modulus: Modulus,
    entries: Vec<u32>,
}

impl GfMatrix {
    pub fn zeros(modulus: Modulus, rows: usize, cols: usize) -> Self {
        GfMatrix {
            rows,
            cols,
            modulus,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: Modulus, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing every entry.
    pub fn from_rows<R: AsRef<[i64]>>(modulus: Modulus, rows: &[R]) -> Result<Self, GfError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(GfError::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            entries.extend(r.iter().map(|&v| modulus.reduce(v)));
        }
        Ok(GfMatrix {
            rows: rows.len(),
            cols,
            modulus,
            entries,
        })
    }

    pub fn from_entries(
        modulus: Modulus,
        rows: usize,
        cols: usize,
        entries: Vec<u32>,
    ) -> Result<Self, GfError> {
        if entries.len() != rows * cols {
            return Err(GfError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|v| v % modulus.get()).collect();
        Ok(GfMatrix {
            rows,
            cols,
            modulus,
            entries,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(modulus: Modulus, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(modulus, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.cols + c] = v % self.modulus.get();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Rows rendered with symmetric representatives, e.g. `d-1` as `-1`.
    pub fn to_signed_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|&v| self.modulus.signed(v))
                    .collect()
            })
            .collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    /// `M^T = -M` and zero diagonal.
    pub fn is_antisymmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let m = self.modulus;
        (0..self.rows)
            .all(|i| self.get(i, i) == 0 && (0..i).all(|j| self.get(i, j) == m.neg(self.get(j, i))))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.modulus, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &GfMatrix) -> Result<GfMatrix, GfError> {
        if self.modulus != other.modulus {
            return Err(GfError::ModulusMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ));
        }
        if self.cols != other.rows {
            return Err(GfError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let d = self.modulus.get() as u64;
        let mut out = Self::zeros(self.modulus, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0u64;
                for t in 0..self.cols {
                    acc = (acc + self.get(r, t) as u64 * other.get(t, c) as u64) % d;
                }
                out.entries[r * other.cols + c] = acc as u32;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>, GfError> {
        if v.len() != self.cols {
            return Err(GfError::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let d = self.modulus.get() as u64;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % d)
                    as u32
            })
            .collect())
    }

    /// `u^T M v`.
    pub fn bilinear(&self, u: &[u32], v: &[u32]) -> u32 {
        let mv = self.mul_vec(v).expect("bilinear: shape");
        let d = self.modulus.get() as u64;
        u.iter()
            .zip(&mv)
            .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % d) as u32
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (GfMatrix, Vec<usize>) {
        let mut m = self.clone();
        let md = self.modulus;
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = md.inv(m.get(lead, c)).expect("nonzero pivot");
            m.scale_row(lead, inv);
            for r in 0..m.rows {
                if r != lead {
                    let f = m.get(r, c);
                    if f != 0 {
                        m.add_row_multiple(r, lead, md.neg(f));
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the right kernel. Free variables are set to unit vectors in
    /// increasing column order.
    pub fn nullspace_basis(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let md = self.modulus;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = md.neg(r.get(row, free));
                }
                v
            })
            .collect()
    }

    pub fn invert(&self) -> Result<GfMatrix, GfError> {
        if !self.is_square() {
            return Err(GfError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.modulus, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(GfError::Singular);
        }
        let mut inv = Self::zeros(self.modulus, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c));
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, f: u32) {
        let md = self.modulus;
        for c in 0..self.cols {
            let i = r * self.cols + c;
            self.entries[i] = md.mul(self.entries[i], f);
        }
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, f: u32) {
        let md = self.modulus;
        for c in 0..self.cols {
            let s = self.entries[source * self.cols + c];
            let i = target * self.cols + c;
            self.entries[i] = md.add(self.entries[i], md.mul(s, f));
        }
    }
}

impl fmt::Display for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.to_signed_rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            write!(f, "[{}]", cells.join(""))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(d: u64) -> Modulus {
        Modulus::new(d).unwrap()
    }

    #[test]
    fn primality_check() {
        assert!(Modulus::new(2).is_ok());
        assert!(Modulus::new(97).is_ok());
        assert_eq!(Modulus::new(4), Err(GfError::NotPrime(4)));
        assert_eq!(Modulus::new(1), Err(GfError::NotPrime(1)));
        assert_eq!(Modulus::new(0), Err(GfError::NotPrime(0)));
    }

    #[test]
    fn field_inverse_examples() {
        assert_eq!(field_inverse(GfScalar::new(2, m(5))).unwrap().value(), 3);
        assert_eq!(field_inverse(GfScalar::new(1, m(7))).unwrap().value(), 1);
        assert_eq!(
            field_inverse(GfScalar::new(0, m(3))),
            Err(GfError::ZeroInverse)
        );
    }

    #[test]
    fn field_inverse_exhaustive() {
        for d in (2..=97).filter(|&d| is_prime(d)) {
            let md = m(d);
            for a in 1..d as u32 {
                let b = field_inverse(GfScalar::new(a as i64, md)).unwrap();
                assert_eq!(md.mul(a, b.value()), 1, "a={a} d={d}");
            }
        }
    }

    #[test]
    fn rank_of_printed_matrices() {
        let g1 = GfMatrix::from_rows(
            m(2),
            &[[0, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, -1], [1, 0, 1, 0]],
        )
        .unwrap();
        assert_eq!(g1.rank(), 2);
        let g12 = GfMatrix::from_rows(
            m(2),
            &[[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
        )
        .unwrap();
        assert_eq!(g12.rank(), 4);
        assert_eq!(GfMatrix::zeros(m(2), 4, 4).rank(), 0);

        let basis = g1.nullspace_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(g1.mul_vec(v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn nullspace_examples() {
        let full = GfMatrix::from_rows(m(3), &[[0, -1], [1, 0]]).unwrap();
        assert!(full.nullspace_basis().is_empty());
        let zero = GfMatrix::zeros(m(2), 2, 2);
        assert_eq!(zero.nullspace_basis(), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn invert_examples() {
        let id = GfMatrix::identity(m(5), 3);
        assert_eq!(id.invert().unwrap(), id);
        let perm = GfMatrix::from_rows(m(3), &[[0, 1], [1, 0]]).unwrap();
        assert_eq!(perm.invert().unwrap(), perm);
        assert_eq!(GfMatrix::zeros(m(2), 2, 2).invert(), Err(GfError::Singular));
        let rect = GfMatrix::zeros(m(2), 2, 3);
        assert!(matches!(rect.invert(), Err(GfError::NotSquare { .. })));
    }

    #[test]
    fn antisymmetry_check() {
        let g = GfMatrix::from_rows(m(3), &[[0, 1], [-1, 0]]).unwrap();
        assert!(g.is_antisymmetric());
        let s = GfMatrix::from_rows(m(3), &[[0, 1], [1, 0]]).unwrap();
        assert!(!s.is_antisymmetric());
        // over Z_2 symmetric and antisymmetric coincide off the diagonal
        let s2 = GfMatrix::from_rows(m(2), &[[0, 1], [1, 0]]).unwrap();
        assert!(s2.is_antisymmetric());
        let diag = GfMatrix::from_rows(m(2), &[[1, 0], [0, 0]]).unwrap();
        assert!(!diag.is_antisymmetric());
    }
}
