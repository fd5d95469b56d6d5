//! Groups generated by operators with scalar group commutators.
//!
//! A [`GroupSpec`] is the prime `d` plus the generating-graph matrix `gamma`
//! (pairwise commutator exponents of the generators), optionally with concrete
//! Pauli generators. Elements are addressed by exponent vectors `I` in
//! `Z_d^k`, enumerated lexicographically, and the commutator exponent of two
//! elements is the bilinear form `I^T gamma J`.

mod search;

use thiserror::Error;

use crate::gf::{GfError, GfMatrix, GfScalar, Modulus};
use crate::pauli::{PauliError, PauliOperator};

pub use search::VertexSet;

pub const CLIQUE_VERTEX_LIMIT: usize = 256;
pub const CHROMATIC_VERTEX_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generating graph is not antisymmetric with zero diagonal")]
    NotAntisymmetric,
    #[error("group has {size} elements, above the cap of {cap}")]
    TooLarge { size: u128, cap: usize },
    #[error("null(gamma) + k = {0} is odd; gamma cannot be antisymmetric")]
    InternalParity(usize),
    #[error("the sum bound needs an odd prime dimension")]
    EvenDimension,
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// Exponent vector `I` naming the element `alpha_I * prod_i T_i^{I_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElementIndex(pub Vec<u32>);

impl GroupElementIndex {
    pub fn identity(k: usize) -> Self {
        GroupElementIndex(vec![0; k])
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    /// All `d^k` indices in lexicographic order (last coordinate fastest).
    pub fn enumerate(d: Modulus, k: usize) -> impl Iterator<Item = GroupElementIndex> {
        let d = d.get();
        let total = (d as u128).pow(k as u32);
        (0..total).map(move |mut n| {
            let mut v = vec![0u32; k];
            for slot in v.iter_mut().rev() {
                *slot = (n % d as u128) as u32;
                n /= d as u128;
            }
            GroupElementIndex(v)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    modulus: Modulus,
    gamma: GfMatrix,
    generators: Option<Vec<PauliOperator>>,
    n_sites: Option<usize>,
}

impl GroupSpec {
    /// Abstract group given only by its generating graph.
    pub fn from_gamma(gamma: GfMatrix) -> Result<Self, GroupError> {
        if !gamma.is_antisymmetric() {
            return Err(GroupError::NotAntisymmetric);
        }
        Ok(GroupSpec {
            modulus: gamma.modulus(),
            gamma,
            generators: None,
            n_sites: None,
        })
    }

    pub fn from_generators(generators: Vec<PauliOperator>) -> Result<Self, GroupError> {
        let first = generators.first().ok_or_else(|| {
            GroupError::DimensionMismatch("at least one generator is required".into())
        })?;
        let modulus = first.modulus();
        let n_sites = first.n_sites();
        let gamma = generating_graph(&generators)?;
        Ok(GroupSpec {
            modulus,
            gamma,
            generators: Some(generators),
            n_sites: Some(n_sites),
        })
    }

    /// The group `{1}` realized on `n_sites` qudits.
    pub fn trivial(modulus: Modulus, n_sites: usize) -> Self {
        GroupSpec {
            modulus,
            gamma: GfMatrix::zeros(modulus, 0, 0),
            generators: Some(Vec::new()),
            n_sites: Some(n_sites),
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn k(&self) -> usize {
        self.gamma.rows()
    }

    pub fn gamma(&self) -> &GfMatrix {
        &self.gamma
    }

    pub fn generators(&self) -> Option<&[PauliOperator]> {
        self.generators.as_deref()
    }

    pub fn n_sites(&self) -> Option<usize> {
        self.n_sites
    }

    pub fn rank(&self) -> usize {
        self.gamma.rank()
    }

    pub fn nullity(&self) -> usize {
        self.k() - self.rank()
    }

    /// `d^k`, or `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        (self.modulus.get() as u128).checked_pow(self.k() as u32)
    }

    /// Concrete element `A_I` with the phase fixed so that `A_I^d = 1`.
    pub fn element(&self, index: &GroupElementIndex) -> Option<PauliOperator> {
        let gens = self.generators.as_ref()?;
        let n = self.n_sites?;
        let mut acc = PauliOperator::identity(self.modulus, n);
        for (g, &e) in gens.iter().zip(&index.0) {
            if e != 0 {
                acc = acc
                    .multiply(&g.power(e as i64))
                    .expect("generators share shape");
            }
        }
        Some(acc.canonical_unit_phase())
    }

    /// All concrete elements in lexicographic index order.
    pub fn elements(&self, cap: usize) -> Result<Vec<PauliOperator>, GroupError> {
        self.check_size(cap)?;
        Ok(GroupElementIndex::enumerate(self.modulus, self.k())
            .map(|i| self.element(&i).expect("concrete generators"))
            .collect())
    }

    pub(crate) fn check_size(&self, cap: usize) -> Result<usize, GroupError> {
        match self.order() {
            Some(size) if size <= cap as u128 => Ok(size as usize),
            Some(size) => Err(GroupError::TooLarge { size, cap }),
            None => Err(GroupError::TooLarge {
                size: u128::MAX,
                cap,
            }),
        }
    }
}

/// Matrix of pairwise commutator exponents `gamma_ij`.
pub fn generating_graph(generators: &[PauliOperator]) -> Result<GfMatrix, GroupError> {
    let Some(first) = generators.first() else {
        return Err(GroupError::DimensionMismatch("no generators".into()));
    };
    let k = generators.len();
    let mut gamma = GfMatrix::zeros(first.modulus(), k, k);
    for i in 0..k {
        for j in 0..k {
            if i != j {
                let s = generators[i].commutator_exponent(&generators[j])?;
                gamma.set(i, j, s.value());
            }
        }
    }
    Ok(gamma)
}

/// `Gamma_{I,J} = sum_ij I_i J_j gamma_ij mod d`.
pub fn frustration_exponent(
    i: &GroupElementIndex,
    j: &GroupElementIndex,
    gamma: &GfMatrix,
) -> Result<GfScalar, GroupError> {
    let k = gamma.rows();
    if i.0.len() != k || j.0.len() != k {
        return Err(GroupError::DimensionMismatch(format!(
            "index lengths {} and {} against k = {k}",
            i.0.len(),
            j.0.len()
        )));
    }
    Ok(GfScalar::new(
        gamma.bilinear(&i.0, &j.0) as i64,
        gamma.modulus(),
    ))
}

/// Simple graph joining distinct commuting elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationGraph {
    labels: Vec<GroupElementIndex>,
    adjacency: Vec<VertexSet>,
}

impl CommutationGraph {
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[GroupElementIndex] {
        &self.labels
    }

    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adjacency
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(b)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Graph built from explicit edges; used for oracle checks.
    pub fn from_edges(labels: Vec<GroupElementIndex>, edges: &[(usize, usize)]) -> Self {
        let n = labels.len();
        let mut adjacency = vec![VertexSet::empty(n); n];
        for &(a, b) in edges {
            if a != b {
                adjacency[a].insert(b);
                adjacency[b].insert(a);
            }
        }
        CommutationGraph { labels, adjacency }
    }
}

pub fn commutation_graph(
    spec: &GroupSpec,
    vertex_cap: usize,
) -> Result<CommutationGraph, GroupError> {
    let n = spec.check_size(vertex_cap)?;
    let labels: Vec<_> = GroupElementIndex::enumerate(spec.modulus, spec.k()).collect();
    // gamma^T I for each I, so each pair costs one dot product
    let gamma_t = spec.gamma.transpose();
    let projected: Vec<Vec<u32>> = labels
        .iter()
        .map(|i| gamma_t.mul_vec(&i.0).expect("shape"))
        .collect();
    let md = spec.modulus;
    let mut adjacency = vec![VertexSet::empty(n); n];
    for a in 0..n {
        for b in a + 1..n {
            let f = projected[a]
                .iter()
                .zip(&labels[b].0)
                .fold(0u32, |acc, (&x, &y)| md.add(acc, md.mul(x, y)));
            if f == 0 {
                adjacency[a].insert(b);
                adjacency[b].insert(a);
            }
        }
    }
    Ok(CommutationGraph { labels, adjacency })
}

/// Elements commuting with the whole group: the span of `ker(gamma)`.
pub fn central_subgroup_indices(spec: &GroupSpec) -> Vec<GroupElementIndex> {
    let basis = spec.gamma.nullspace_basis();
    let md = spec.modulus;
    let k = spec.k();
    let mut out: Vec<GroupElementIndex> = GroupElementIndex::enumerate(md, basis.len())
        .map(|coeffs| {
            let mut v = vec![0u32; k];
            for (c, b) in coeffs.0.iter().zip(&basis) {
                for (slot, &x) in v.iter_mut().zip(b) {
                    *slot = md.add(*slot, md.mul(*c, x));
                }
            }
            GroupElementIndex(v)
        })
        .collect();
    out.sort();
    out
}

fn checked_pow(d: Modulus, e: usize) -> Result<u64, GroupError> {
    (d.get() as u64)
        .checked_pow(e as u32)
        .ok_or(GroupError::TooLarge {
            size: u128::MAX,
            cap: usize::MAX,
        })
}

/// Clique number of the commutation graph in closed form,
/// `d^((null(gamma) + k) / 2)`.
pub fn clique_number(spec: &GroupSpec) -> Result<u64, GroupError> {
    let e = spec.nullity() + spec.k();
    if !e.is_multiple_of(2) {
        return Err(GroupError::InternalParity(e));
    }
    checked_pow(spec.modulus, e / 2)
}

pub fn clique_number_bruteforce(graph: &CommutationGraph) -> Result<u64, GroupError> {
    if graph.vertex_count() > CLIQUE_VERTEX_LIMIT {
        return Err(GroupError::TooLarge {
            size: graph.vertex_count() as u128,
            cap: CLIQUE_VERTEX_LIMIT,
        });
    }
    Ok(search::max_clique(&graph.adjacency) as u64)
}

pub fn chromatic_number_exact(graph: &CommutationGraph) -> Result<u64, GroupError> {
    if graph.vertex_count() > CHROMATIC_VERTEX_LIMIT {
        return Err(GroupError::TooLarge {
            size: graph.vertex_count() as u128,
            cap: CHROMATIC_VERTEX_LIMIT,
        });
    }
    let lower = search::max_clique(&graph.adjacency);
    Ok(search::chromatic_number(&graph.adjacency, lower) as u64)
}

/// Upper bound on `sum_A |<A>|^2` over the group; equals the clique number.
pub fn sos_bound(spec: &GroupSpec) -> Result<u64, GroupError> {
    clique_number(spec)
}

/// Upper bound on `sum_A <A> + <A^dagger>` for odd `d`:
/// `2 * clique * ((1 + sqrt d) / 2)^(rank / 2)`.
pub fn sum_bound(spec: &GroupSpec) -> Result<f64, GroupError> {
    let d = spec.modulus.get();
    if d == 2 {
        return Err(GroupError::EvenDimension);
    }
    let clique = clique_number(spec)? as f64;
    let half_rank = (spec.rank() / 2) as i32;
    Ok(2.0 * clique * ((1.0 + (d as f64).sqrt()) / 2.0).powi(half_rank))
}
