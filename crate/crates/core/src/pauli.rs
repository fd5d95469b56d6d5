//! Symbolic generalized Pauli (Weyl) operators on `n` qudits.
//!
//! An operator is stored as `zeta^phase * (X^a_1 Z^b_1) ⊗ ... ⊗ (X^a_n Z^b_n)`
//! with X written to the left of Z on every site. For odd `d` the phase unit
//! is `zeta = omega = exp(2 pi i / d)` and phases live in Z_d; for `d = 2` the
//! unit is `zeta = i` and phases live in Z_4, so `omega = -1 = zeta^2`.
//! All arithmetic is exact.

use std::fmt;

use thiserror::Error;

use crate::gf::{GfScalar, Modulus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bad site subset: {0}")]
    BadSubset(String),
}

/// Modulus of the phase exponent: 4 for qubits, `d` otherwise.
#[inline]
pub fn phase_modulus(d: Modulus) -> u32 {
    if d.get() == 2 {
        4
    } else {
        d.get()
    }
}

/// How many `zeta` steps make one `omega`.
#[inline]
pub fn omega_step(d: Modulus) -> u32 {
    if d.get() == 2 {
        2
    } else {
        1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    modulus: Modulus,
    x: Vec<u32>,
    z: Vec<u32>,
    phase: u32,
}

impl PauliOperator {
    pub fn identity(modulus: Modulus, n_sites: usize) -> Self {
        PauliOperator {
            modulus,
            x: vec![0; n_sites],
            z: vec![0; n_sites],
            phase: 0,
        }
    }

    /// Builds `omega^omega_power * ⊗ X^x Z^z`; exponents are reduced.
    pub fn new(
        modulus: Modulus,
        x: &[i64],
        z: &[i64],
        omega_power: i64,
    ) -> Result<Self, PauliError> {
        if x.len() != z.len() {
            return Err(PauliError::DimensionMismatch(format!(
                "{} X exponents but {} Z exponents",
                x.len(),
                z.len()
            )));
        }
        let pm = phase_modulus(modulus) as i64;
        Ok(PauliOperator {
            modulus,
            x: x.iter().map(|&v| modulus.reduce(v)).collect(),
            z: z.iter().map(|&v| modulus.reduce(v)).collect(),
            phase: (omega_power * omega_step(modulus) as i64).rem_euclid(pm) as u32,
        })
    }

    /// `X^a Z^b` acting on a single qudit.
    pub fn single(modulus: Modulus, a: i64, b: i64) -> Self {
        Self::new(modulus, &[a], &[b], 0).expect("single site")
    }

    /// `X^a Z^b` on `site` (0-based), identity elsewhere.
    pub fn local(modulus: Modulus, n_sites: usize, site: usize, a: i64, b: i64) -> Self {
        let mut p = Self::identity(modulus, n_sites);
        p.x[site] = modulus.reduce(a);
        p.z[site] = modulus.reduce(b);
        p
    }

    /// Replaces the phase exponent (in units of `zeta`).
    pub fn with_phase_exp(mut self, phase_exp: i64) -> Self {
        self.phase = phase_exp.rem_euclid(phase_modulus(self.modulus) as i64) as u32;
        self
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn n_sites(&self) -> usize {
        self.x.len()
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.x
    }

    pub fn z_exponents(&self) -> &[u32] {
        &self.z
    }

    /// Phase exponent in units of `zeta`.
    pub fn phase_exp(&self) -> u32 {
        self.phase
    }

    /// True when the Pauli part is the identity (any phase).
    pub fn is_identity_pauli(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&v| v == 0)
    }

    /// Identity Pauli part and trivial phase.
    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.is_identity_pauli()
    }

    /// The `(a | b)` exponent row used for independence checks.
    pub fn symplectic_row(&self) -> Vec<u32> {
        self.x.iter().chain(&self.z).copied().collect()
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .filter(|(&a, &b)| a != 0 || b != 0)
            .count()
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PauliError> {
        if self.modulus != other.modulus {
            return Err(PauliError::DimensionMismatch(format!(
                "d={} vs d={}",
                self.modulus, other.modulus
            )));
        }
        if self.n_sites() != other.n_sites() {
            return Err(PauliError::DimensionMismatch(format!(
                "{} sites vs {} sites",
                self.n_sites(),
                other.n_sites()
            )));
        }
        Ok(())
    }

    fn dot(&self, u: &[u32], v: &[u32]) -> u64 {
        let d = self.modulus.get() as u64;
        u.iter()
            .zip(v)
            .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % d)
    }

    /// Exact product `self · other`, using `Z^b X^a' = omega^(b a') X^a' Z^b`.
    pub fn multiply(&self, other: &Self) -> Result<Self, PauliError> {
        self.check_compatible(other)?;
        let md = self.modulus;
        let pm = phase_modulus(md) as u64;
        let cross = self.dot(&self.z, &other.x);
        let phase = (self.phase as u64 + other.phase as u64 + omega_step(md) as u64 * cross) % pm;
        Ok(PauliOperator {
            modulus: md,
            x: self
                .x
                .iter()
                .zip(&other.x)
                .map(|(&a, &b)| md.add(a, b))
                .collect(),
            z: self
                .z
                .iter()
                .zip(&other.z)
                .map(|(&a, &b)| md.add(a, b))
                .collect(),
            phase: phase as u32,
        })
    }

    /// `sigma` with `P Q P^-1 Q^-1 = omega^sigma`, i.e. `b_P·a_Q - a_P·b_Q`.
    pub fn commutator_exponent(&self, other: &Self) -> Result<GfScalar, PauliError> {
        self.check_compatible(other)?;
        let md = self.modulus;
        let forward = self.dot(&self.z, &other.x) as u32;
        let backward = self.dot(&self.x, &other.z) as u32;
        Ok(GfScalar::new(md.sub(forward, backward) as i64, md))
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool, PauliError> {
        Ok(self.commutator_exponent(other)?.is_zero())
    }

    /// Exact `m`-th power; negative `m` gives inverse powers.
    ///
    /// Per site `(X^a Z^b)^m = omega^(a b m(m-1)/2) X^(ma) Z^(mb)`.
    pub fn power(&self, m: i64) -> Self {
        let md = self.modulus;
        let d = md.get() as i128;
        let pm = phase_modulus(md) as i128;
        // P^(d * pm) is the identity, so the exponent can be reduced first.
        let m = (m as i128).rem_euclid(d * pm);
        let ab = self.dot(&self.x, &self.z) as i128;
        let tri = m * (m - 1) / 2;
        let phase = (self.phase as i128 * m + omega_step(md) as i128 * ab * tri).rem_euclid(pm);
        let mm = (m % d) as u32;
        PauliOperator {
            modulus: md,
            x: self.x.iter().map(|&a| md.mul(a, mm)).collect(),
            z: self.z.iter().map(|&b| md.mul(b, mm)).collect(),
            phase: phase as u32,
        }
    }

    pub fn inverse(&self) -> Self {
        self.power(-1)
    }

    /// Replaces the phase by the allowed choice making the `d`-th power the
    /// identity: phase 1 for odd `d`, and for qubits a factor `i` exactly when
    /// the number of sites carrying both X and Z is odd.
    pub fn canonical_unit_phase(&self) -> Self {
        let phase = if self.modulus.get() == 2 {
            self.dot(&self.x, &self.z) as u32 % 2
        } else {
            0
        };
        PauliOperator {
            phase,
            ..self.clone()
        }
    }

    /// Keeps the exponents on the sites of `subset` and fixes the phase with
    /// [`canonical_unit_phase`](Self::canonical_unit_phase). The result acts
    /// on `subset.len()` sites, in the subset's order.
    pub fn restrict(&self, subset: &SiteSubset) -> Result<Self, PauliError> {
        if subset.n_sites() != self.n_sites() {
            return Err(PauliError::BadSubset(format!(
                "subset over {} sites applied to a {}-site operator",
                subset.n_sites(),
                self.n_sites()
            )));
        }
        let idx = subset.zero_based();
        let restricted = PauliOperator {
            modulus: self.modulus,
            x: idx.iter().map(|&i| self.x[i]).collect(),
            z: idx.iter().map(|&i| self.z[i]).collect(),
            phase: 0,
        };
        Ok(restricted.canonical_unit_phase())
    }

    /// Text form used by the input grammar, e.g. `X Z^2 I` or `w^1 X Z`.
    /// Qubit phases that are odd powers of `i` are written `i^1` / `i^3`.
    pub fn to_grammar_string(&self) -> String {
        let mut parts = Vec::with_capacity(self.n_sites() + 1);
        if self.phase != 0 {
            let step = omega_step(self.modulus);
            if self.phase.is_multiple_of(step) {
                parts.push(format!("w^{}", self.phase / step));
            } else {
                parts.push(format!("i^{}", self.phase));
            }
        }
        for (&a, &b) in self.x.iter().zip(&self.z) {
            parts.push(site_token(a, b));
        }
        parts.join(" ")
    }
}

fn site_token(a: u32, b: u32) -> String {
    let x = match a {
        0 => String::new(),
        1 => "X".to_owned(),
        a => format!("X^{a}"),
    };
    let z = match b {
        0 => String::new(),
        1 => "Z".to_owned(),
        b => format!("Z^{b}"),
    };
    if x.is_empty() && z.is_empty() {
        "I".to_owned()
    } else {
        x + &z
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_grammar_string())
    }
}

/// A non-empty set of 1-based site labels out of `n_sites`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SiteSubset {
    n_sites: usize,
    indices: Vec<usize>,
}

impl SiteSubset {
    pub fn new(n_sites: usize, indices: &[usize]) -> Result<Self, PauliError> {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.is_empty() {
            return Err(PauliError::BadSubset("empty subset".into()));
        }
        if sorted[0] == 0 || *sorted.last().unwrap() > n_sites {
            return Err(PauliError::BadSubset(format!(
                "site labels must lie in 1..={n_sites}, got {indices:?}"
            )));
        }
        Ok(SiteSubset {
            n_sites,
            indices: sorted,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, site: usize) -> bool {
        self.indices.binary_search(&site).is_ok()
    }

    pub fn is_proper(&self) -> bool {
        self.indices.len() < self.n_sites
    }

    pub fn zero_based(&self) -> Vec<usize> {
        self.indices.iter().map(|&i| i - 1).collect()
    }

    pub fn complement(&self) -> Result<SiteSubset, PauliError> {
        let rest: Vec<usize> = (1..=self.n_sites).filter(|&s| !self.contains(s)).collect();
        SiteSubset::new(self.n_sites, &rest)
    }
}

impl fmt::Display for SiteSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(d: u64) -> Modulus {
        Modulus::new(d).unwrap()
    }

    fn op(d: u64, x: &[i64], z: &[i64]) -> PauliOperator {
        PauliOperator::new(m(d), x, z, 0).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let z = PauliOperator::single(m(3), 0, 1);
        let x = PauliOperator::single(m(3), 1, 0);
        let zx = z.multiply(&x).unwrap();
        assert_eq!(zx, PauliOperator::new(m(3), &[1], &[1], 1).unwrap());

        let x2 = PauliOperator::single(m(2), 1, 0);
        assert!(x2.multiply(&x2).unwrap().is_identity());

        let xz = PauliOperator::single(m(2), 1, 1);
        let sq = xz.multiply(&xz).unwrap();
        assert!(sq.is_identity_pauli());
        // omega = -1 = zeta^2
        assert_eq!(sq.phase_exp(), 2);

        let other = PauliOperator::identity(m(2), 2);
        assert!(matches!(
            x2.multiply(&other),
            Err(PauliError::DimensionMismatch(_))
        ));
        assert!(x2.multiply(&PauliOperator::single(m(3), 1, 0)).is_err());
    }

    #[test]
    fn commutator_examples() {
        for d in [2, 3, 5, 7] {
            let x = PauliOperator::single(m(d), 1, 0);
            let z = PauliOperator::single(m(d), 0, 1);
            assert_eq!(x.commutator_exponent(&z).unwrap().value(), d as u32 - 1);
            assert_eq!(x.commutator_exponent(&x).unwrap().value(), 0);
        }
    }

    #[test]
    fn power_examples() {
        for d in [2, 3, 5] {
            let x = PauliOperator::single(m(d), 1, 0);
            assert!(x.power(d as i64).is_identity());
            assert!(x.power(0).is_identity());
            let p = op(d, &[1, 2], &[0, 1]);
            assert_eq!(
                p.power(-1).multiply(&p).unwrap(),
                PauliOperator::identity(m(d), 2)
            );
        }
        let xz = PauliOperator::single(m(2), 1, 1);
        let sq = xz.power(2);
        assert!(sq.is_identity_pauli());
        assert_eq!(sq.phase_exp(), 2);
    }

    #[test]
    fn canonical_phase_examples() {
        let y = PauliOperator::single(m(2), 1, 1).canonical_unit_phase();
        assert_eq!(y.phase_exp(), 1);
        assert!(y.power(2).is_identity());

        for d in [2, 3, 5] {
            let x = PauliOperator::single(m(d), 1, 0);
            assert_eq!(x.canonical_unit_phase(), x);
        }
        let xz3 = PauliOperator::single(m(3), 1, 1);
        assert_eq!(xz3.canonical_unit_phase(), xz3);
        // two Y-like sites: i * i = -1 squared is already fine with phase 1
        let yy = op(2, &[1, 1], &[1, 1]).canonical_unit_phase();
        assert_eq!(yy.phase_exp(), 0);
    }

    #[test]
    fn restrict_examples() {
        let g1 = op(2, &[1, 0, 0, 0, 0], &[0, 1, 1, 1, 0]);
        let q = SiteSubset::new(5, &[1]).unwrap();
        assert_eq!(g1.restrict(&q).unwrap(), PauliOperator::single(m(2), 1, 0));

        let all = SiteSubset::new(5, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(g1.restrict(&all).unwrap(), g1.canonical_unit_phase());

        let id = PauliOperator::identity(m(3), 4);
        let q = SiteSubset::new(4, &[2, 4]).unwrap();
        assert!(id.restrict(&q).unwrap().is_identity());

        let wrong = SiteSubset::new(3, &[1]).unwrap();
        assert!(matches!(g1.restrict(&wrong), Err(PauliError::BadSubset(_))));
    }

    #[test]
    fn subset_validation() {
        assert!(SiteSubset::new(3, &[]).is_err());
        assert!(SiteSubset::new(3, &[0]).is_err());
        assert!(SiteSubset::new(3, &[4]).is_err());
        let q = SiteSubset::new(4, &[3, 1, 3]).unwrap();
        assert_eq!(q.indices(), &[1, 3]);
        assert_eq!(q.complement().unwrap().indices(), &[2, 4]);
        assert!(SiteSubset::new(2, &[1, 2]).unwrap().complement().is_err());
    }

    #[test]
    fn grammar_string() {
        let p = PauliOperator::new(m(3), &[1, 0, 2], &[0, 0, 1], 2).unwrap();
        assert_eq!(p.to_grammar_string(), "w^2 X I X^2Z");
        let y = PauliOperator::single(m(2), 1, 1).canonical_unit_phase();
        assert_eq!(y.to_grammar_string(), "i^1 XZ");
    }

    fn arb_pair() -> impl Strategy<Value = (PauliOperator, PauliOperator, PauliOperator)> {
        (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..5).prop_flat_map(|(d, n)| {
            let one = (
                prop::collection::vec(0i64..d as i64, n),
                prop::collection::vec(0i64..d as i64, n),
                0i64..4,
            )
                .prop_map(move |(x, z, ph)| {
                    PauliOperator::new(Modulus::new(d).unwrap(), &x, &z, 0)
                        .unwrap()
                        .with_phase_exp(ph)
                });
            (one.clone(), one.clone(), one)
        })
    }

    proptest! {
        #[test]
        fn commutator_is_antisymmetric((p, q, _) in arb_pair()) {
            let md = p.modulus();
            let pq = p.commutator_exponent(&q).unwrap().value();
            let qp = q.commutator_exponent(&p).unwrap().value();
            prop_assert_eq!(pq, md.neg(qp));
        }

        #[test]
        fn commutator_is_bilinear((p, p2, q) in arb_pair()) {
            let md = p.modulus();
            let lhs = p.multiply(&p2).unwrap().commutator_exponent(&q).unwrap().value();
            let rhs = md.add(
                p.commutator_exponent(&q).unwrap().value(),
                p2.commutator_exponent(&q).unwrap().value(),
            );
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn group_commutator_matches_exponent((p, q, _) in arb_pair()) {
            let md = p.modulus();
            let c = p
                .multiply(&q).unwrap()
                .multiply(&p.inverse()).unwrap()
                .multiply(&q.inverse()).unwrap();
            prop_assert!(c.is_identity_pauli());
            let sigma = p.commutator_exponent(&q).unwrap().value();
            prop_assert_eq!(c.phase_exp(), sigma * omega_step(md));
        }

        #[test]
        fn canonical_power_is_identity((p, _, _) in arb_pair()) {
            let d = p.modulus().get() as i64;
            prop_assert!(p.canonical_unit_phase().power(d).is_identity());
        }

        #[test]
        fn power_matches_repeated_product((p, _, _) in arb_pair(), k in 0i64..9) {
            let mut acc = PauliOperator::identity(p.modulus(), p.n_sites());
            for _ in 0..k {
                acc = acc.multiply(&p).unwrap();
            }
            prop_assert_eq!(p.power(k), acc);
        }

        #[test]
        fn restriction_splits_commutator((p, q, _) in arb_pair(), mask in 1u32..16) {
            let n = p.n_sites();
            let md = p.modulus();
            let sites: Vec<usize> = (1..=n).filter(|s| mask & (1 << (s - 1)) != 0).collect();
            prop_assume!(!sites.is_empty() && sites.len() < n);
            let sub = SiteSubset::new(n, &sites).unwrap();
            let comp = sub.complement().unwrap();
            let a = p.restrict(&sub).unwrap().commutator_exponent(&q.restrict(&sub).unwrap()).unwrap().value();
            let b = p.restrict(&comp).unwrap().commutator_exponent(&q.restrict(&comp).unwrap()).unwrap().value();
            let full = p.commutator_exponent(&q).unwrap().value();
            prop_assert_eq!(md.add(a, b), full);
            if full == 0 {
                prop_assert_eq!(b, md.neg(a));
            }
        }
    }
}
