//! Dense brute-force checks of the closed forms.
//!
//! Everything here realizes operators as explicit complex matrices (or
//! monomial matrices for Paulis) and works by exhaustive summation,
//! diagonalization, or randomized local optimization. Optimizer runs are
//! seeded and reproducible: restart `r` draws from a ChaCha stream `r` keyed
//! by the configured seed.

mod dense;
mod eigen;

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use dense::{inner, kron_vec, norm, normalize, DenseOperator, MonomialOperator};
pub use eigen::{hermitian_eigen, HermitianEigen, JACOBI_RELATIVE_TOL};

use crate::gf::Modulus;
use crate::group::{GroupElementIndex, GroupError, GroupSpec};
use crate::pauli::{PauliOperator, SiteSubset};
use crate::stabilizer::{Stabilizer, StabilizerError};
use crate::symplectic::{self, SymplecticError};

/// Largest Hilbert-space dimension realized as a dense matrix.
pub const DENSE_DIM_CAP: usize = 4096;
/// Largest dimension handed to the eigensolver or the product-state search.
pub const EIGEN_DIM_CAP: usize = 1024;
/// Largest group enumerated element by element.
pub const ELEMENT_CAP: usize = 1 << 16;
pub const SWAP_MAX_D: u32 = 11;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("dimension {dim} exceeds the cap of {cap}")]
    TooLarge { dim: u128, cap: usize },
    #[error("this check needs an odd prime dimension")]
    EvenDimension,
    #[error("this check needs concrete generators")]
    NeedsGenerators,
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 32,
            max_iters: 500,
            tol: 1e-9,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<(), OracleError> {
        if self.restarts == 0 {
            return Err(OracleError::InvalidConfig(
                "restarts must be at least 1".into(),
            ));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(OracleError::InvalidConfig("tol must be positive".into()));
        }
        Ok(())
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    normalize(&mut v);
    v
}

fn hilbert_dim(d: Modulus, n_sites: usize, cap: usize) -> Result<usize, OracleError> {
    match (d.get() as u128).checked_pow(n_sites as u32) {
        Some(dim) if dim <= cap as u128 => Ok(dim as usize),
        Some(dim) => Err(OracleError::TooLarge { dim, cap }),
        None => Err(OracleError::TooLarge {
            dim: u128::MAX,
            cap,
        }),
    }
}

/// Exact matrix of a Pauli operator, including its phase.
pub fn dense_pauli(p: &PauliOperator) -> Result<DenseOperator, OracleError> {
    hilbert_dim(p.modulus(), p.n_sites(), DENSE_DIM_CAP)?;
    Ok(MonomialOperator::from_pauli(p).to_dense())
}

/// Max entrywise deviation between the swap of two qudits and
/// `(1/d) sum_ij X^i Z^j ⊗ (X^i Z^j)^dagger`.
pub fn verify_swap_identity(d: Modulus) -> Result<f64, OracleError> {
    let dv = d.get();
    if dv > SWAP_MAX_D {
        return Err(OracleError::TooLarge {
            dim: dv as u128,
            cap: SWAP_MAX_D as usize,
        });
    }
    let n = dv as usize;
    let swap = DenseOperator::from_fn(n * n, |r, c| {
        let (a, b) = (c / n, c % n);
        if r == b * n + a {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let mut sum = DenseOperator::zeros(n * n);
    for i in 0..n as i64 {
        for j in 0..n as i64 {
            let w = dense_pauli(&PauliOperator::single(d, i, j))?;
            sum.add_assign(&w.kron(&w.adjoint()));
        }
    }
    let sum = sum.scale(Complex64::new(1.0 / n as f64, 0.0));
    Ok(sum.max_abs_diff(&swap))
}

fn group_monomials(spec: &GroupSpec) -> Result<(usize, Vec<MonomialOperator>), OracleError> {
    let n_sites = spec.n_sites().ok_or(OracleError::NeedsGenerators)?;
    spec.generators().ok_or(OracleError::NeedsGenerators)?;
    let dim = hilbert_dim(spec.modulus(), n_sites, DENSE_DIM_CAP)?;
    let elements = spec.elements(ELEMENT_CAP)?;
    Ok((
        dim,
        elements.iter().map(MonomialOperator::from_pauli).collect(),
    ))
}

fn sum_of_squares(ops: &[MonomialOperator], psi: &[Complex64]) -> f64 {
    ops.iter().map(|a| a.expectation(psi).norm_sqr()).sum()
}

#[derive(Debug, Clone)]
pub struct SosResult {
    /// Larger of the two routes below.
    pub value: f64,
    /// Best value of the self-consistent iteration over all restarts.
    pub iterated: f64,
    /// Value at a joint eigenvector of a maximal commuting subgroup.
    pub witness: f64,
    /// State attaining `value`.
    pub maximizer: Vec<Complex64>,
}

/// Numerical maximum of `sum_A |<psi|A|psi>|^2` over the group.
pub fn max_sos(spec: &GroupSpec, cfg: &OptimizerConfig) -> Result<SosResult, OracleError> {
    cfg.validate()?;
    let (dim, ops) = group_monomials(spec)?;

    let mut best_iter = (f64::NEG_INFINITY, Vec::new());
    for r in 0..cfg.restarts {
        let mut rng = cfg.rng(r as u64);
        let mut psi = random_state(&mut rng, dim);
        let mut value = sum_of_squares(&ops, &psi);
        for _ in 0..cfg.max_iters {
            let mut next = vec![Complex64::new(0.0, 0.0); dim];
            for a in &ops {
                let e = a.expectation(&psi).conj();
                for (n, x) in next.iter_mut().zip(a.apply(&psi)) {
                    *n += e * x;
                }
            }
            if normalize(&mut next) < 1e-300 {
                break;
            }
            let nv = sum_of_squares(&ops, &next);
            let done = (nv - value).abs() < cfg.tol;
            psi = next;
            value = nv;
            if done {
                break;
            }
        }
        if value > best_iter.0 {
            best_iter = (value, psi);
        }
    }

    let witness_state = commuting_witness(spec, cfg)?;
    let witness = sum_of_squares(&ops, &witness_state);
    let (value, maximizer) = if witness >= best_iter.0 {
        (witness, witness_state)
    } else {
        best_iter.clone()
    };
    Ok(SosResult {
        value,
        iterated: best_iter.0,
        witness,
        maximizer,
    })
}

/// Generators of a maximal commuting subgroup: one member of every
/// symplectic pair plus the kernel directions.
pub fn maximal_commuting_generators(spec: &GroupSpec) -> Result<Vec<PauliOperator>, OracleError> {
    spec.generators().ok_or(OracleError::NeedsGenerators)?;
    if spec.k() == 0 {
        return Ok(Vec::new());
    }
    let cf = symplectic::canonical_form(spec.gamma())?;
    let columns = cf.pairs().map(|(a, _)| a).chain(cf.kernel_columns());
    Ok(columns
        .map(|c| {
            let idx = GroupElementIndex(cf.o.column(c));
            spec.element(&idx).expect("concrete generators")
        })
        .collect())
}

/// Projects a random state onto a joint eigenspace of commuting generators,
/// each satisfying `g^d = 1`.
fn commuting_witness(
    spec: &GroupSpec,
    cfg: &OptimizerConfig,
) -> Result<Vec<Complex64>, OracleError> {
    let d = spec.modulus().get() as usize;
    let n_sites = spec.n_sites().ok_or(OracleError::NeedsGenerators)?;
    let dim = hilbert_dim(spec.modulus(), n_sites, DENSE_DIM_CAP)?;
    let mut rng = cfg.rng(u64::MAX);
    let mut psi = random_state(&mut rng, dim);
    for g in maximal_commuting_generators(spec)? {
        let mono = MonomialOperator::from_pauli(&g);
        let mut powers = vec![psi.clone()];
        for m in 1..d {
            powers.push(mono.apply(&powers[m - 1]));
        }
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for j in 0..d {
            let mut comp = vec![Complex64::new(0.0, 0.0); dim];
            for (m, pm) in powers.iter().enumerate() {
                let w = Complex64::from_polar(1.0, -2.0 * PI * ((j * m) % d) as f64 / d as f64);
                for (c, x) in comp.iter_mut().zip(pm) {
                    *c += w * x;
                }
            }
            let nrm = norm(&comp);
            if best.as_ref().is_none_or(|(b, _)| nrm > *b) {
                best = Some((nrm, comp));
            }
        }
        psi = best.expect("d >= 2").1;
        normalize(&mut psi);
    }
    Ok(psi)
}

#[derive(Debug, Clone)]
pub struct SumEigenResult {
    pub lambda_max: f64,
    pub eigenvector: Vec<Complex64>,
    /// `||H v - lambda v||` for the returned pair.
    pub residual: f64,
    pub hamiltonian_norm: f64,
}

/// Largest eigenvalue of `sum_A (A + A^dagger)` over all group elements.
pub fn max_sum_eigenvalue(spec: &GroupSpec) -> Result<SumEigenResult, OracleError> {
    if spec.modulus().get() == 2 {
        return Err(OracleError::EvenDimension);
    }
    let n_sites = spec.n_sites().ok_or(OracleError::NeedsGenerators)?;
    hilbert_dim(spec.modulus(), n_sites, EIGEN_DIM_CAP)?;
    let (dim, ops) = group_monomials(spec)?;
    let mut h = DenseOperator::zeros(dim);
    for a in &ops {
        a.add_to(&mut h, Complex64::new(1.0, 0.0));
    }
    let h = h.add(&h.adjoint());
    let eig = hermitian_eigen(&h);
    let (lambda, v) = eig.top();
    let hv = h.apply(v);
    let res: Vec<Complex64> = hv.iter().zip(v).map(|(a, b)| a - b * lambda).collect();
    Ok(SumEigenResult {
        lambda_max: lambda,
        eigenvector: v.to_vec(),
        residual: norm(&res),
        hamiltonian_norm: h.frobenius_norm(),
    })
}

/// Projector onto the stabilized subspace, `d^-k sum_{s in S} s`.
pub fn stabilizer_projector(s: &Stabilizer) -> Result<DenseOperator, OracleError> {
    let dim = hilbert_dim(s.modulus(), s.n_sites(), EIGEN_DIM_CAP)?;
    let mut p = DenseOperator::zeros(dim);
    let count = (s.modulus().get() as usize).pow(s.k() as u32);
    let w = Complex64::new(1.0 / count as f64, 0.0);
    for idx in GroupElementIndex::enumerate(s.modulus(), s.k()) {
        MonomialOperator::from_pauli(&s.product(&idx.0)).add_to(&mut p, w);
    }
    Ok(p)
}

/// `full[i * dr + j]`: basis index of `|i>_Q ⊗ |j>_Q̄`.
fn split_index(d: usize, q: &SiteSubset) -> Result<(usize, usize, Vec<usize>), OracleError> {
    let n = q.n_sites();
    let comp = q.complement().map_err(StabilizerError::from)?;
    let (qs, rs) = (q.zero_based(), comp.zero_based());
    let dq = d.pow(qs.len() as u32);
    let dr = d.pow(rs.len() as u32);
    let mut full = vec![0usize; dq * dr];
    let mut digits = vec![0usize; n];
    for i in 0..dq {
        for j in 0..dr {
            let (mut a, mut b) = (i, j);
            for &s in qs.iter().rev() {
                digits[s] = a % d;
                a /= d;
            }
            for &s in rs.iter().rev() {
                digits[s] = b % d;
                b /= d;
            }
            full[i * dr + j] = digits.iter().fold(0, |acc, &x| acc * d + x);
        }
    }
    Ok((dq, dr, full))
}

#[derive(Debug, Clone)]
pub struct OverlapResult {
    /// Best `<psi|P_V|psi>` found over product states.
    pub overlap: f64,
    pub q_factor: Vec<Complex64>,
    pub complement_factor: Vec<Complex64>,
}

/// Alternating maximization of `<phi ⊗ chi| P_V |phi ⊗ chi>`. The result is a
/// lower bound on the true maximum over product states.
pub fn max_product_overlap(
    s: &Stabilizer,
    q: &SiteSubset,
    cfg: &OptimizerConfig,
) -> Result<OverlapResult, OracleError> {
    cfg.validate()?;
    if q.n_sites() != s.n_sites() || !q.is_proper() {
        return Err(StabilizerError::BadSubset(format!("{q} is not a proper cut")).into());
    }
    let p = stabilizer_projector(s)?;
    let d = s.modulus().get() as usize;
    let (dq, dr, full) = split_index(d, q)?;
    let at = |i: usize, j: usize, i2: usize, j2: usize| p[(full[i * dr + j], full[i2 * dr + j2])];

    let contract_right = |chi: &[Complex64]| {
        DenseOperator::from_fn(dq, |i, i2| {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..dr {
                for j2 in 0..dr {
                    acc += chi[j].conj() * at(i, j, i2, j2) * chi[j2];
                }
            }
            acc
        })
    };
    let contract_left = |phi: &[Complex64]| {
        DenseOperator::from_fn(dr, |j, j2| {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..dq {
                for i2 in 0..dq {
                    acc += phi[i].conj() * at(i, j, i2, j2) * phi[i2];
                }
            }
            acc
        })
    };

    let mut best = OverlapResult {
        overlap: f64::NEG_INFINITY,
        q_factor: Vec::new(),
        complement_factor: Vec::new(),
    };
    for r in 0..cfg.restarts {
        let mut rng = cfg.rng(r as u64);
        let mut chi = random_state(&mut rng, dr);
        let mut phi = Vec::new();
        let mut value = f64::NEG_INFINITY;
        for _ in 0..cfg.max_iters {
            let eq = hermitian_eigen(&contract_right(&chi));
            phi = eq.top().1.to_vec();
            let er = hermitian_eigen(&contract_left(&phi));
            let (v, c) = er.top();
            chi = c.to_vec();
            let done = (v - value).abs() < cfg.tol;
            value = v;
            if done {
                break;
            }
        }
        if value > best.overlap {
            best = OverlapResult {
                overlap: value,
                q_factor: phi,
                complement_factor: chi,
            };
        }
    }
    Ok(best)
}

/// `(1 + 1/sqrt d) / 2`, the closed-form maximum that
/// [`lagrange_extremum`] approximates.
pub fn lagrange_closed_form(d: Modulus) -> f64 {
    0.5 * (1.0 + 1.0 / (d.get() as f64).sqrt())
}

/// Numerical maximum of `(1/sqrt d) sum_i |a_i| |a_0|` over unit vectors.
pub fn lagrange_extremum(d: Modulus, cfg: &OptimizerConfig) -> Result<f64, OracleError> {
    cfg.validate()?;
    if d.get() == 2 {
        return Err(OracleError::EvenDimension);
    }
    let n = d.get() as usize;
    let inv_sqrt = 1.0 / (n as f64).sqrt();
    let objective = |a: &[f64]| inv_sqrt * a[0].abs() * a.iter().map(|x| x.abs()).sum::<f64>();
    let mut best = f64::NEG_INFINITY;
    for r in 0..cfg.restarts {
        let mut rng = cfg.rng(r as u64);
        let mut a: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut value = f64::NEG_INFINITY;
        for _ in 0..cfg.max_iters {
            // only moduli matter; ascend along the gradient of the
            // quadratic form on |a|, shifted to keep the step monotone
            let m: Vec<f64> = a.iter().map(|x| x.abs()).collect();
            let rest: f64 = m[1..].iter().sum();
            let mut g: Vec<f64> = m.iter().map(|&x| x + inv_sqrt * m[0] * 0.5).collect();
            g[0] = m[0] + inv_sqrt * (m[0] + 0.5 * rest);
            let nrm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            if nrm == 0.0 {
                break;
            }
            a = g.iter().map(|x| x / nrm).collect();
            let v = objective(&a);
            let done = (v - value).abs() < cfg.tol * 1e-3;
            value = v;
            if done {
                break;
            }
        }
        best = best.max(value);
    }
    Ok(best)
}

/// The single-qudit state whose coefficients attain the Lagrange extremum.
pub fn theta_state(d: Modulus) -> Result<Vec<Complex64>, OracleError> {
    if d.get() == 2 {
        return Err(OracleError::EvenDimension);
    }
    let sd = (d.get() as f64).sqrt();
    let head = ((1.0 + sd) / (2.0 * sd)).sqrt();
    let tail = 1.0 / (2.0 * sd * (1.0 + sd)).sqrt();
    let mut v = vec![Complex64::new(tail, 0.0); d.get() as usize];
    v[0] = Complex64::new(head, 0.0);
    debug_assert!((norm(&v) - 1.0).abs() < 1e-12);
    Ok(v)
}

/// `sum_{i,j} <theta| X^i Z^j |theta>` on one qudit.
pub fn theta_pauli_sum(d: Modulus) -> Result<Complex64, OracleError> {
    let theta = theta_state(d)?;
    let n = d.get() as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let p = PauliOperator::single(d, i, j).canonical_unit_phase();
            acc += MonomialOperator::from_pauli(&p).expectation(&theta);
        }
    }
    Ok(acc)
}

/// Exact value of `sum_A (<A> + <A^dagger>)` at `psi`.
pub fn sum_expectation(spec: &GroupSpec, psi: &[Complex64]) -> Result<f64, OracleError> {
    let (_, ops) = group_monomials(spec)?;
    Ok(ops.iter().map(|a| 2.0 * a.expectation(psi).re).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(d: u64) -> Modulus {
        Modulus::new(d).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn xz(d: u64) -> GroupSpec {
        GroupSpec::from_generators(vec![
            PauliOperator::single(m(d), 1, 0),
            PauliOperator::single(m(d), 0, 1),
        ])
        .unwrap()
    }

    #[test]
    fn dense_pauli_examples() {
        let x = dense_pauli(&PauliOperator::single(m(2), 1, 0)).unwrap();
        let expected =
            DenseOperator::from_fn(2, |r, cc| if r != cc { c(1.0, 0.0) } else { c(0.0, 0.0) });
        assert!(x.max_abs_diff(&expected) < 1e-15);

        let z = dense_pauli(&PauliOperator::single(m(3), 0, 1)).unwrap();
        for j in 0..3 {
            let w = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / 3.0);
            assert!((z[(j, j)] - w).norm() < 1e-15);
        }

        let y = dense_pauli(&PauliOperator::single(m(2), 1, 1).canonical_unit_phase()).unwrap();
        assert!((y[(0, 1)] - c(0.0, -1.0)).norm() < 1e-15);
        assert!((y[(1, 0)] - c(0.0, 1.0)).norm() < 1e-15);
        assert!(y.is_unitary(1e-12) && y.is_hermitian(1e-12));

        let big = PauliOperator::identity(m(3), 8);
        assert!(matches!(
            dense_pauli(&big),
            Err(OracleError::TooLarge { .. })
        ));
    }

    #[test]
    fn swap_identity() {
        for d in [2, 3, 5, 7] {
            assert!(verify_swap_identity(m(d)).unwrap() < 1e-12);
        }
        assert!(verify_swap_identity(m(13)).is_err());
    }

    #[test]
    fn sos_examples() {
        let cfg = OptimizerConfig::default();
        let r = max_sos(&xz(2), &cfg).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9);
        assert!(r.iterated <= 2.0 + 1e-9);

        let t = GroupSpec::trivial(m(2), 1);
        assert!((max_sos(&t, &cfg).unwrap().value - 1.0).abs() < 1e-12);

        let abstract_spec = GroupSpec::from_gamma(xz(2).gamma().clone()).unwrap();
        assert!(matches!(
            max_sos(&abstract_spec, &cfg),
            Err(OracleError::NeedsGenerators)
        ));
    }

    #[test]
    fn sum_eigenvalue_examples() {
        for d in [3u64, 5] {
            let r = max_sum_eigenvalue(&xz(d)).unwrap();
            let bound = crate::group::sum_bound(&xz(d)).unwrap();
            assert!((r.lambda_max - bound).abs() < 1e-9, "d={d}");
            assert!(r.residual < 1e-9 * r.hamiltonian_norm);
        }
        let zonly = GroupSpec::from_generators(vec![PauliOperator::single(m(3), 0, 1)]).unwrap();
        assert!((max_sum_eigenvalue(&zonly).unwrap().lambda_max - 6.0).abs() < 1e-9);
        assert!(matches!(
            max_sum_eigenvalue(&xz(2)),
            Err(OracleError::EvenDimension)
        ));
    }

    #[test]
    fn theta_examples() {
        let t = theta_state(m(3)).unwrap();
        for (got, want) in t.iter().zip([0.8881, 0.3251, 0.3251]) {
            assert!((got.re - want).abs() < 1e-4);
        }
        for d in [3, 5, 7, 11] {
            assert!((norm(&theta_state(m(d)).unwrap()) - 1.0).abs() < 1e-12);
        }
        let s = theta_pauli_sum(m(3)).unwrap();
        assert!((s.re - 1.5 * (1.0 + 3f64.sqrt())).abs() < 1e-12);
        assert!(s.im.abs() < 1e-12);
        assert!(theta_state(m(2)).is_err());
    }

    #[test]
    fn lagrange_examples() {
        let cfg = OptimizerConfig::default();
        for (d, want) in [(3, 0.7886751), (5, 0.7236068), (7, 0.6889822)] {
            let got = lagrange_extremum(m(d), &cfg).unwrap();
            assert!((got - lagrange_closed_form(m(d))).abs() < 1e-6);
            assert!((got - want).abs() < 1e-6);
        }
        assert!(matches!(
            lagrange_extremum(m(2), &cfg),
            Err(OracleError::EvenDimension)
        ));
    }

    #[test]
    fn config_validation() {
        let bad = OptimizerConfig {
            restarts: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = OptimizerConfig {
            tol: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
