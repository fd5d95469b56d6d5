//! Canonical forms of antisymmetric matrices over Z_d.
//!
//! [`canonical_form`] finds an invertible `O` with
//! `O^T gamma O = J ⊕ ... ⊕ J ⊕ 0`, `J = [[0, -1], [1, 0]]`, by symplectic
//! Gram–Schmidt on the columns of `O`. [`block_reduce`] reorders the same
//! basis into the `[[0, D], [-D^T, E]]` shape with a zero `n x n` corner.

use thiserror::Error;

use crate::gf::{GfError, GfMatrix, Modulus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error("matrix is not antisymmetric with zero diagonal")]
    NotAntisymmetric,
    #[error("canonical form check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Gf(#[from] GfError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Change of basis; its columns are the new generators' exponent vectors.
    pub o: GfMatrix,
    /// Number of `[[0,-1],[1,0]]` blocks.
    pub blocks: usize,
    pub residual_dim: usize,
}

impl CanonicalForm {
    /// Column indices `(2i, 2i+1)` of each block.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        (0..self.blocks).map(|i| (2 * i, 2 * i + 1))
    }

    /// Columns spanning the kernel of gamma.
    pub fn kernel_columns(&self) -> std::ops::Range<usize> {
        2 * self.blocks..2 * self.blocks + self.residual_dim
    }
}

/// The target matrix `J ⊕ ... ⊕ J ⊕ 0` of size `k`.
pub fn standard_form(modulus: Modulus, k: usize, blocks: usize) -> GfMatrix {
    let mut s = GfMatrix::zeros(modulus, k, k);
    for b in 0..blocks {
        s.set(2 * b, 2 * b + 1, modulus.neg(1));
        s.set(2 * b + 1, 2 * b, 1);
    }
    s
}

pub fn canonical_form(gamma: &GfMatrix) -> Result<CanonicalForm, SymplecticError> {
    if !gamma.is_antisymmetric() {
        return Err(SymplecticError::NotAntisymmetric);
    }
    let md = gamma.modulus();
    let k = gamma.rows();
    let form = |u: &[u32], v: &[u32]| gamma.bilinear(u, v);

    let mut pool: Vec<Vec<u32>> = (0..k)
        .map(|i| {
            let mut e = vec![0u32; k];
            e[i] = 1;
            e
        })
        .collect();
    let mut paired: Vec<Vec<u32>> = Vec::new();

    loop {
        let found = (0..pool.len()).find_map(|i| {
            (0..pool.len())
                .find(|&j| j != i && form(&pool[i], &pool[j]) != 0)
                .map(|j| (i, j))
        });
        let Some((i, j)) = found else { break };
        // orient the pair so that form(u, w) = -1, swapping before rescaling
        let s = form(&pool[i], &pool[j]);
        let (u, w) = if s == md.neg(1) {
            (pool[i].clone(), pool[j].clone())
        } else if s == 1 {
            (pool[j].clone(), pool[i].clone())
        } else {
            let scale = md.neg(md.inv(s)?);
            let w = pool[j].iter().map(|&x| md.mul(x, scale)).collect();
            (pool[i].clone(), w)
        };
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        pool.remove(hi);
        pool.remove(lo);
        // x <- x + form(x, w) u - form(x, u) w makes x orthogonal to u and w
        for x in pool.iter_mut() {
            let a = form(x, &w);
            let b = form(x, &u);
            for t in 0..k {
                let v = md.add(x[t], md.mul(a, u[t]));
                x[t] = md.sub(v, md.mul(b, w[t]));
            }
        }
        paired.push(u);
        paired.push(w);
    }

    let blocks = paired.len() / 2;
    let residual_dim = pool.len();
    paired.extend(pool);
    let o = GfMatrix::from_columns(md, k, &paired);

    let reduced = o.transpose().mul(gamma)?.mul(&o)?;
    if reduced != standard_form(md, k, blocks) {
        return Err(SymplecticError::Internal(format!(
            "O^T gamma O does not have {blocks} standard blocks"
        )));
    }
    if o.rank() != k {
        return Err(SymplecticError::Internal(
            "change of basis is singular".into(),
        ));
    }
    Ok(CanonicalForm {
        o,
        blocks,
        residual_dim,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockReduction {
    pub o: GfMatrix,
    /// Size of the zero top-left block.
    pub n: usize,
    /// Full-rank `n x m` top-right block.
    pub d_block: GfMatrix,
    /// `m x m` bottom-right block.
    pub e_block: GfMatrix,
}

impl BlockReduction {
    pub fn m(&self) -> usize {
        self.d_block.cols()
    }
}

/// `O^T gamma O = [[0_{n x n}, D], [-D^T, E]]` with `D` of full column rank
/// and `n - m = null(gamma)`.
pub fn block_reduce(gamma: &GfMatrix) -> Result<BlockReduction, SymplecticError> {
    let cf = canonical_form(gamma)?;
    let md = gamma.modulus();
    let k = gamma.rows();
    let m = cf.blocks;
    let n = k - m;
    // first member of every pair, then the kernel, then the partners
    let order: Vec<usize> = cf
        .pairs()
        .map(|(a, _)| a)
        .chain(cf.kernel_columns())
        .chain(cf.pairs().map(|(_, b)| b))
        .collect();
    let cols: Vec<Vec<u32>> = order.iter().map(|&c| cf.o.column(c)).collect();
    let o = GfMatrix::from_columns(md, k, &cols);
    let reduced = o.transpose().mul(gamma)?.mul(&o)?;

    let mut d_block = GfMatrix::zeros(md, n, m);
    let mut e_block = GfMatrix::zeros(md, m, m);
    for r in 0..k {
        for c in 0..k {
            let v = reduced.get(r, c);
            if r < n && c < n && v != 0 {
                return Err(SymplecticError::Internal(
                    "top-left block is not zero".into(),
                ));
            }
            if r < n && c >= n {
                d_block.set(r, c - n, v);
            }
            if r >= n && c >= n {
                e_block.set(r - n, c - n, v);
            }
        }
    }
    if d_block.rank() != m {
        return Err(SymplecticError::Internal("D is not full rank".into()));
    }
    Ok(BlockReduction {
        o,
        n,
        d_block,
        e_block,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(d: u64) -> Modulus {
        Modulus::new(d).unwrap()
    }

    fn gamma_1() -> GfMatrix {
        GfMatrix::from_rows(
            m(2),
            &[[0, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, -1], [1, 0, 1, 0]],
        )
        .unwrap()
    }

    #[test]
    fn canonical_examples() {
        let g = GfMatrix::from_rows(m(3), &[[0, 1], [-1, 0]]).unwrap();
        let cf = canonical_form(&g).unwrap();
        assert_eq!(cf.blocks, 1);
        assert_eq!(cf.o, GfMatrix::from_rows(m(3), &[[0, 1], [1, 0]]).unwrap());

        let zero = GfMatrix::zeros(m(5), 3, 3);
        let cf = canonical_form(&zero).unwrap();
        assert_eq!(cf.blocks, 0);
        assert_eq!(cf.o, GfMatrix::identity(m(5), 3));

        let g12 = GfMatrix::from_rows(
            m(2),
            &[[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
        )
        .unwrap();
        let cf = canonical_form(&g12).unwrap();
        assert_eq!((cf.blocks, cf.residual_dim), (2, 0));
    }

    #[test]
    fn rejects_non_antisymmetric() {
        let g = GfMatrix::from_rows(m(3), &[[0, 1], [1, 0]]).unwrap();
        assert_eq!(canonical_form(&g), Err(SymplecticError::NotAntisymmetric));
        assert!(matches!(
            block_reduce(&g),
            Err(SymplecticError::NotAntisymmetric)
        ));
    }

    #[test]
    fn block_reduce_examples() {
        let g = GfMatrix::from_rows(m(3), &[[0, -1], [1, 0]]).unwrap();
        let br = block_reduce(&g).unwrap();
        assert_eq!((br.n, br.m()), (1, 1));
        assert_eq!(br.d_block, GfMatrix::from_rows(m(3), &[[-1]]).unwrap());

        let zero = GfMatrix::zeros(m(2), 4, 4);
        let br = block_reduce(&zero).unwrap();
        assert_eq!((br.n, br.m()), (4, 0));
        assert_eq!(br.d_block.cols(), 0);

        let br = block_reduce(&gamma_1()).unwrap();
        assert_eq!((br.n, br.m()), (3, 1));
        assert_eq!(br.d_block.rank(), 1);
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let g = gamma_1();
        let cf = canonical_form(&g).unwrap();
        let s = standard_form(m(2), 4, cf.blocks);
        assert_eq!(canonical_form(&s).unwrap().blocks, cf.blocks);
    }
}
