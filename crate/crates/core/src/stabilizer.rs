//! Qudit stabilizers and the geometric entanglement of their code spaces.
//!
//! For a bipartition `Q | Q̄` the restricted generators `g_i^(Q)` have a
//! reduced generating graph `gamma_Q`; the subspace is product across the cut
//! exactly when `gamma_Q = 0`, and its geometric measure across the cut is
//! `1 - d^(-rank(gamma_Q) / 2)`. Values are kept as exact rationals.

use thiserror::Error;

use crate::gf::{GfMatrix, Modulus};
use crate::group::{self, GroupError, GroupSpec};
use crate::pauli::{PauliError, PauliOperator, SiteSubset};

pub const DEFAULT_SITE_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilizerError {
    #[error("generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("generators are not independent")]
    DependentGenerators,
    #[error("a nontrivial multiple of the identity lies in the group")]
    PhaseViolation,
    #[error("no generators given")]
    Empty,
    #[error("bad site subset: {0}")]
    BadSubset(String),
    #[error("{count} bipartitions exceed the cap of {cap}")]
    TooManyBipartitions { count: u128, cap: usize },
    #[error("unknown code {0:?}")]
    UnknownCode(String),
    #[error("invalid code parameters: {0}")]
    BadParameters(String),
    #[error("inconsistent entanglement value: {0}")]
    Internal(String),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Exact non-negative rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// `1 - d^(-e)` as an exact fraction.
fn one_minus_inverse_power(d: u32, e: usize) -> Ratio {
    let den = (d as u64).pow(e as u32);
    Ratio::new(den - 1, den)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilizer {
    modulus: Modulus,
    n_sites: usize,
    generators: Vec<PauliOperator>,
}

impl Stabilizer {
    /// Builds and validates a stabilizer.
    pub fn new(generators: Vec<PauliOperator>) -> Result<Self, StabilizerError> {
        let s = Self::new_unchecked(generators)?;
        s.validate()?;
        Ok(s)
    }

    /// Shape checks only; call [`validate`](Self::validate) separately.
    pub fn new_unchecked(generators: Vec<PauliOperator>) -> Result<Self, StabilizerError> {
        let first = generators.first().ok_or(StabilizerError::Empty)?;
        let modulus = first.modulus();
        let n_sites = first.n_sites();
        for g in &generators {
            if g.modulus() != modulus || g.n_sites() != n_sites {
                return Err(PauliError::DimensionMismatch(format!(
                    "generator {g} does not match d={modulus}, n={n_sites}"
                ))
                .into());
            }
        }
        Ok(Stabilizer {
            modulus,
            n_sites,
            generators,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn k(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// Checks commutation, the identity-phase rule and independence, in that
    /// order.
    pub fn validate(&self) -> Result<(), StabilizerError> {
        let k = self.k();
        for i in 0..k {
            for j in i + 1..k {
                if !self.generators[i].commutes_with(&self.generators[j])? {
                    return Err(StabilizerError::NonCommuting(i + 1, j + 1));
                }
            }
        }
        let d = self.modulus.get() as i64;
        // each g^d must be exactly 1, otherwise the group holds a phase
        if self.generators.iter().any(|g| !g.power(d).is_identity()) {
            return Err(StabilizerError::PhaseViolation);
        }
        // with commuting generators and g^d = 1 the exponent map is a
        // homomorphism, so checking a kernel basis covers every combination
        let rows: Vec<Vec<u32>> = self.generators.iter().map(|g| g.symplectic_row()).collect();
        let stacked_t = GfMatrix::from_columns(self.modulus, 2 * self.n_sites, &rows);
        let relations = stacked_t.nullspace_basis();
        for c in &relations {
            if !self.product(c).is_identity() {
                return Err(StabilizerError::PhaseViolation);
            }
        }
        if !relations.is_empty() {
            return Err(StabilizerError::DependentGenerators);
        }
        Ok(())
    }

    /// `prod_i g_i^{c_i}` in generator order.
    pub fn product(&self, exponents: &[u32]) -> PauliOperator {
        self.generators.iter().zip(exponents).fold(
            PauliOperator::identity(self.modulus, self.n_sites),
            |acc, (g, &e)| acc.multiply(&g.power(e as i64)).expect("validated shape"),
        )
    }

    fn check_cut(&self, q: &SiteSubset) -> Result<(), StabilizerError> {
        if q.n_sites() != self.n_sites || !q.is_proper() {
            return Err(StabilizerError::BadSubset(format!(
                "{q} is not a proper subset of {} sites",
                self.n_sites
            )));
        }
        Ok(())
    }

    pub fn restricted_generators(
        &self,
        q: &SiteSubset,
    ) -> Result<Vec<PauliOperator>, StabilizerError> {
        self.generators
            .iter()
            .map(|g| g.restrict(q).map_err(StabilizerError::from))
            .collect()
    }
}

pub fn validate(s: &Stabilizer) -> Result<(), StabilizerError> {
    s.validate()
}

/// `tau_{ij;Q}`: commutator exponents of the generators restricted to `q`.
pub fn reduced_generating_graph(
    s: &Stabilizer,
    q: &SiteSubset,
) -> Result<GfMatrix, StabilizerError> {
    s.check_cut(q)?;
    Ok(group::generating_graph(&s.restricted_generators(q)?)?)
}

/// All bipartitions with site 1 on the `Q` side, in increasing bitmask order
/// over sites `2..=n`.
pub fn bipartitions(n_sites: usize, cap: usize) -> Result<Vec<SiteSubset>, StabilizerError> {
    if n_sites < 2 {
        return Ok(Vec::new());
    }
    let count = (1u128 << (n_sites - 1)) - 1;
    if n_sites > 64 || count > cap as u128 {
        return Err(StabilizerError::TooManyBipartitions { count, cap });
    }
    let rest = n_sites - 1;
    let mut out = Vec::with_capacity(count as usize);
    for mask in 0u64..(1u64 << rest) - 1 {
        let mut sites = vec![1];
        sites.extend((0..rest).filter(|b| mask >> b & 1 == 1).map(|b| b + 2));
        out.push(SiteSubset::new(n_sites, &sites)?);
    }
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.indices().cmp(b.indices()))
    });
    Ok(out)
}

/// Default bipartition cap: every cut of a 16-site system.
pub fn default_bipartition_cap() -> usize {
    (1usize << (DEFAULT_SITE_CAP - 1)) - 1
}

pub fn is_gme(s: &Stabilizer, bipartition_cap: usize) -> Result<bool, StabilizerError> {
    for q in bipartitions(s.n_sites, bipartition_cap)? {
        if reduced_generating_graph(s, &q)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(s.n_sites >= 2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitionReport {
    pub q: SiteSubset,
    pub gamma_q: GfMatrix,
    pub rank_q: usize,
    /// `1 - d^(-rank_q / 2)`.
    pub gm: Ratio,
    /// `1 - d^-k * clique(G_Q)`; always equal to `gm`.
    pub gm_clique_form: Ratio,
}

impl BipartitionReport {
    pub fn gm_value(&self) -> f64 {
        self.gm.to_f64()
    }
}

pub fn gm_measure(s: &Stabilizer, q: &SiteSubset) -> Result<BipartitionReport, StabilizerError> {
    let gamma_q = reduced_generating_graph(s, q)?;
    let rank_q = gamma_q.rank();
    if rank_q % 2 != 0 {
        return Err(StabilizerError::Internal(format!("odd rank {rank_q}")));
    }
    let d = s.modulus.get();
    let gm = one_minus_inverse_power(d, rank_q / 2);

    let spec = GroupSpec::from_gamma(gamma_q.clone())?;
    let clique = group::clique_number(&spec)?;
    let dk = (d as u64).pow(s.k() as u32);
    let gm_clique_form = Ratio::new(dk - clique, dk);
    if gm != gm_clique_form {
        return Err(StabilizerError::Internal(format!(
            "closed form {gm} disagrees with clique form {gm_clique_form}"
        )));
    }
    Ok(BipartitionReport {
        q: q.clone(),
        gamma_q,
        rank_q,
        gm,
        gm_clique_form,
    })
}

/// Every bipartition report in enumeration order.
pub fn gm_reports(s: &Stabilizer, cap: usize) -> Result<Vec<BipartitionReport>, StabilizerError> {
    bipartitions(s.n_sites, cap)?
        .iter()
        .map(|q| gm_measure(s, q))
        .collect()
}

/// Minimum of the bipartite measure over all cuts; `(d-1)/d` for GME codes.
pub fn ggm_measure(s: &Stabilizer, cap: usize) -> Result<Ratio, StabilizerError> {
    let reports = gm_reports(s, cap)?;
    let min = reports
        .iter()
        .map(|r| r.gm)
        .min()
        .unwrap_or(Ratio::new(0, 1));
    let gme = reports.iter().all(|r| r.rank_q > 0) && !reports.is_empty();
    let d = s.modulus.get() as u64;
    if gme && min != Ratio::new(d - 1, d) {
        return Err(StabilizerError::Internal(format!(
            "GME stabilizer with minimum {min}, expected ({d}-1)/{d}"
        )));
    }
    Ok(min)
}

/// Built-in codes: `ghz` (any `n >= 2`) and `five_qudit` (`n = 5`).
pub fn builtin_code(name: &str, d: Modulus, n: usize) -> Result<Stabilizer, StabilizerError> {
    let gens = match name {
        "ghz" => {
            if n < 2 {
                return Err(StabilizerError::BadParameters("ghz needs n >= 2".into()));
            }
            let mut gens = vec![PauliOperator::new(d, &vec![1; n], &vec![0; n], 0)?];
            for i in 0..n - 1 {
                let mut z = vec![0i64; n];
                z[i] = 1;
                z[i + 1] = -1;
                gens.push(PauliOperator::new(d, &vec![0; n], &z, 0)?);
            }
            gens
        }
        "five_qudit" => {
            if n != 5 {
                return Err(StabilizerError::BadParameters(format!(
                    "five_qudit has 5 sites, got n = {n}"
                )));
            }
            // cyclic shifts of X Z Z^-1 X^-1 I
            let base_x = [1i64, 0, 0, -1, 0];
            let base_z = [0i64, 1, -1, 0, 0];
            (0..4)
                .map(|shift| {
                    let rot = |v: &[i64; 5]| -> Vec<i64> {
                        (0..5).map(|i| v[(i + 5 - shift) % 5]).collect()
                    };
                    PauliOperator::new(d, &rot(&base_x), &rot(&base_z), 0)
                })
                .collect::<Result<Vec<_>, _>>()?
        }
        other => return Err(StabilizerError::UnknownCode(other.to_owned())),
    };
    Stabilizer::new(gens)
}
