#![allow(dead_code)]

use num_complex::Complex64;
use qudit_frustration::gf::{GfMatrix, Modulus};
use qudit_frustration::oracle::DenseOperator;
use qudit_frustration::pauli::PauliOperator;
use rand::Rng;

pub fn m(d: u64) -> Modulus {
    Modulus::new(d).unwrap()
}

/// Shift `X|j> = |j+1>` built straight from its definition.
pub fn shift(d: usize) -> DenseOperator {
    DenseOperator::from_fn(d, |r, c| {
        if r == (c + 1) % d {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Clock `Z|j> = w^j |j>`.
pub fn clock(d: usize) -> DenseOperator {
    let w = 2.0 * std::f64::consts::PI / d as f64;
    DenseOperator::from_fn(d, |r, c| {
        if r == c {
            Complex64::from_polar(1.0, w * r as f64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn mat_pow(a: &DenseOperator, e: u32) -> DenseOperator {
    (0..e).fold(DenseOperator::identity(a.dim()), |acc, _| acc.matmul(a))
}

/// Reference matrix of a Pauli operator: phase times the tensor product of
/// `X^a Z^b`, assembled from `shift` and `clock` only.
pub fn reference_dense(p: &PauliOperator) -> DenseOperator {
    let d = p.modulus().get() as usize;
    let (x, z) = (shift(d), clock(d));
    let mut out = DenseOperator::identity(1);
    for (&a, &b) in p.x_exponents().iter().zip(p.z_exponents()) {
        out = out.kron(&mat_pow(&x, a).matmul(&mat_pow(&z, b)));
    }
    // phase unit is i for qubits and w otherwise
    let unit = if d == 2 { 4.0 } else { d as f64 };
    let phase = Complex64::from_polar(
        1.0,
        2.0 * std::f64::consts::PI * p.phase_exp() as f64 / unit,
    );
    out.scale(phase)
}

pub fn random_pauli<R: Rng>(rng: &mut R, d: Modulus, n_sites: usize) -> PauliOperator {
    let dv = d.get() as i64;
    let x: Vec<i64> = (0..n_sites).map(|_| rng.gen_range(0..dv)).collect();
    let z: Vec<i64> = (0..n_sites).map(|_| rng.gen_range(0..dv)).collect();
    PauliOperator::new(d, &x, &z, rng.gen_range(0..dv)).unwrap()
}

/// Uniform antisymmetric matrix with zero diagonal.
pub fn random_gamma<R: Rng>(rng: &mut R, d: Modulus, k: usize) -> GfMatrix {
    let mut g = GfMatrix::zeros(d, k, k);
    for i in 0..k {
        for j in i + 1..k {
            let v = rng.gen_range(0..d.get());
            g.set(i, j, v);
            g.set(j, i, d.neg(v));
        }
    }
    g
}
