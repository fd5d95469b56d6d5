use std::f64::consts::PI;

use num_complex::Complex64;

use crate::pauli::{phase_modulus, PauliOperator};

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        DenseOperator {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul dimension");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for t in 0..n {
                let a = self.entries[r * n + t];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.entries[t * n..(t + 1) * n];
                let dst = &mut out.entries[r * n..(r + 1) * n];
                for (o, &b) in dst.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        let mut out = Self::zeros(a * b);
        for r1 in 0..a {
            for c1 in 0..a {
                let x = self[(r1, c1)];
                if x == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for r2 in 0..b {
                    for c2 in 0..b {
                        out[(r1 * b + r2, c1 * b + c2)] = x * other[(r2, c2)];
                    }
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "add dimension");
        DenseOperator {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        DenseOperator {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim;
        (0..n)
            .map(|r| {
                self.entries[r * n..(r + 1) * n]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn expectation(&self, v: &[Complex64]) -> Complex64 {
        inner(v, &self.apply(v))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) < tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.adjoint()
            .matmul(self)
            .max_abs_diff(&Self::identity(self.dim))
            < tol
    }
}

impl std::ops::Index<(usize, usize)> for DenseOperator {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r * self.dim + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseOperator {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r * self.dim + c]
    }
}

/// `<u|v>`.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalize(v: &mut [Complex64]) -> f64 {
    let n = norm(v);
    if n > 0.0 {
        for a in v.iter_mut() {
            *a /= n;
        }
    }
    n
}

pub fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| x * y))
        .collect()
}

/// A Pauli operator as a monomial matrix: column `j` holds `coeff[j]` in row
/// `target[j]`. Site 1 is the most significant digit of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialOperator {
    target: Vec<usize>,
    coeff: Vec<Complex64>,
}

impl MonomialOperator {
    pub fn from_pauli(p: &PauliOperator) -> Self {
        let d = p.modulus().get() as usize;
        let n = p.n_sites();
        let dim = d.pow(n as u32);
        let omega =
            |k: u64| Complex64::from_polar(1.0, 2.0 * PI * (k % d as u64) as f64 / d as f64);
        let pm = phase_modulus(p.modulus()) as f64;
        let global = Complex64::from_polar(1.0, 2.0 * PI * p.phase_exp() as f64 / pm);
        let (xs, zs) = (p.x_exponents(), p.z_exponents());
        let mut target = Vec::with_capacity(dim);
        let mut coeff = Vec::with_capacity(dim);
        let mut digits = vec![0usize; n];
        for j in 0..dim {
            let mut rem = j;
            for s in (0..n).rev() {
                digits[s] = rem % d;
                rem /= d;
            }
            // X^a Z^b |j> = omega^(b j) |j + a>
            let mut row = 0;
            let mut z_phase = 0u64;
            for s in 0..n {
                row = row * d + (digits[s] + xs[s] as usize) % d;
                z_phase += zs[s] as u64 * digits[s] as u64;
            }
            target.push(row);
            coeff.push(global * omega(z_phase));
        }
        MonomialOperator { target, coeff }
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for (j, (&t, &c)) in self.target.iter().zip(&self.coeff).enumerate() {
            out[t] += c * v[j];
        }
        out
    }

    /// `<v|A|v>`.
    pub fn expectation(&self, v: &[Complex64]) -> Complex64 {
        self.target
            .iter()
            .zip(&self.coeff)
            .enumerate()
            .map(|(j, (&t, &c))| v[t].conj() * c * v[j])
            .sum()
    }

    pub fn add_to(&self, m: &mut DenseOperator, scale: Complex64) {
        for (j, (&t, &c)) in self.target.iter().zip(&self.coeff).enumerate() {
            m[(t, j)] += scale * c;
        }
    }

    pub fn to_dense(&self) -> DenseOperator {
        let mut m = DenseOperator::zeros(self.dim());
        self.add_to(&mut m, Complex64::new(1.0, 0.0));
        m
    }
}
