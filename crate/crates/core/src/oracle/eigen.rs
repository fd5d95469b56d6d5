//! Cyclic Jacobi eigensolver for small complex Hermitian matrices.

use num_complex::Complex64;

use super::dense::DenseOperator;

const MAX_SWEEPS: usize = 100;
/// Sweeps stop once the off-diagonal Frobenius mass drops below this
/// fraction of the matrix norm.
pub const JACOBI_RELATIVE_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Eigenvectors, `vectors[i]` belongs to `values[i]`.
    pub vectors: Vec<Vec<Complex64>>,
    pub sweeps: usize,
}

impl HermitianEigen {
    pub fn top(&self) -> (f64, &[Complex64]) {
        let i = self.values.len() - 1;
        (self.values[i], &self.vectors[i])
    }
}

fn off_diagonal_mass(a: &DenseOperator) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes a Hermitian matrix. The input is symmetrized first, so tiny
/// non-Hermitian noise is tolerated.
pub fn hermitian_eigen(h: &DenseOperator) -> HermitianEigen {
    let n = h.dim();
    let mut a = h.add(&h.adjoint()).scale(Complex64::new(0.5, 0.0));
    let mut v = DenseOperator::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut sweeps = 0;

    while sweeps < MAX_SWEEPS && off_diagonal_mass(&a) > JACOBI_RELATIVE_TOL * scale {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= f64::EPSILON * 1e-3 * scale {
                    continue;
                }
                // make a_pq real by a phase on basis vector q
                let phase = apq / mag;
                let (ph, ph_conj) = (phase, phase.conj());
                for k in 0..n {
                    a[(k, q)] *= ph_conj;
                    v[(k, q)] *= ph_conj;
                }
                for k in 0..n {
                    a[(q, k)] *= ph;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * c - akq * s;
                    a[(k, q)] = akp * s + akq * c;
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * c - vkq * s;
                    v[(k, q)] = vkp * s + vkq * c;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = apk * c - aqk * s;
                    a[(q, k)] = apk * s + aqk * c;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    HermitianEigen {
        values: order.iter().map(|&i| a[(i, i)].re).collect(),
        vectors: order
            .iter()
            .map(|&i| (0..n).map(|k| v[(k, i)]).collect())
            .collect(),
        sweeps,
    }
}
