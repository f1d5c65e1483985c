//! Nilpotent representations of the cyclic quiver with `n` vertices.
//!
//! The arrows go `v -> v-1` (indices mod `n`), so the simple at vertex `v`
//! extends the simple at `v-1`, matching `tau S_v = S_{v-1}`. This is the
//! linear-algebra oracle behind every Hom/Ext dimension in a tube.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::arc::Arc;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpRep {
    rank: u32,
    dims: Vec<usize>,
    /// `maps[v]` is the matrix of the arrow `v -> v-1`, shape `dims[v-1] x dims[v]`.
    maps: Vec<Matrix>,
}

/// A morphism of representations, one matrix per vertex.
pub type Morphism = Vec<Matrix>;

impl NilpRep {
    pub fn new(rank: u32, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let n = rank as usize;
        if rank == 0 || dims.len() != n || maps.len() != n {
            return Err(Error::DimensionMismatch(n, dims.len().min(maps.len())));
        }
        for v in 0..n {
            let prev = (v + n - 1) % n;
            if maps[v].rows() != dims[prev] || maps[v].cols() != dims[v] {
                return Err(Error::DimensionMismatch(maps[v].rows(), dims[prev]));
            }
        }
        let rep = NilpRep { rank, dims, maps };
        if !rep.is_nilpotent() {
            return Err(Error::NotNilpotent);
        }
        Ok(rep)
    }

    pub fn zero(rank: u32) -> Self {
        let n = rank as usize;
        NilpRep {
            rank,
            dims: vec![0; n],
            maps: vec![Matrix::zeros(0, 0); n],
        }
    }

    /// The uniserial representation of an arc: basis `e_0..e_{len-1}` with `e_k` at
    /// vertex `socle + k`, each arrow sending `e_k` to `e_{k-1}`.
    pub fn of_arc(a: &Arc) -> Self {
        let n = a.rank() as usize;
        let mut slots: Vec<Vec<usize>> = vec![Vec::new(); n];
        for k in 0..a.len() as usize {
            slots[(a.socle() as usize + k) % n].push(k);
        }
        let dims: Vec<usize> = slots.iter().map(Vec::len).collect();
        let maps = (0..n)
            .map(|v| {
                let prev = (v + n - 1) % n;
                Matrix::from_fn(dims[prev], dims[v], |r, c| {
                    if slots[v][c] >= 1 && slots[prev][r] == slots[v][c] - 1 {
                        Q::one()
                    } else {
                        Q::zero()
                    }
                })
            })
            .collect();
        NilpRep {
            rank: a.rank(),
            dims,
            maps,
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn map(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    fn n(&self) -> usize {
        self.rank as usize
    }

    fn prev(&self, v: usize) -> usize {
        (v + self.n() - 1) % self.n()
    }

    /// Matrix of the path of length `len` starting at vertex `v`.
    pub fn path(&self, v: usize, len: usize) -> Matrix {
        let mut acc = Matrix::identity(self.dims[v]);
        let mut cur = v;
        for _ in 0..len {
            acc = self.maps[cur].mul(&acc);
            cur = self.prev(cur);
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        let d = self.total_dim();
        (0..self.n()).all(|v| self.dims[v] == 0 || self.path(v, d).is_zero())
    }

    pub fn direct_sum(&self, other: &NilpRep) -> Result<NilpRep> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        let n = self.n();
        let dims = (0..n).map(|v| self.dims[v] + other.dims[v]).collect();
        let maps = (0..n)
            .map(|v| {
                let p = self.prev(v);
                Matrix::block(
                    &self.maps[v],
                    &Matrix::zeros(self.dims[p], other.dims[v]),
                    &Matrix::zeros(other.dims[p], self.dims[v]),
                    &other.maps[v],
                )
            })
            .collect();
        Ok(NilpRep {
            rank: self.rank,
            dims,
            maps,
        })
    }

    /// The differential `d(f) = (f_{v-1} M_v - N_v f_v)_v` whose kernel is `Hom(M, N)`
    /// and whose cokernel is `Ext^1(M, N)`.
    pub fn differential(m: &NilpRep, nrep: &NilpRep) -> Result<Matrix> {
        if m.rank != nrep.rank {
            return Err(Error::RankMismatch(m.rank, nrep.rank));
        }
        let n = m.n();
        let src_off = offsets((0..n).map(|v| nrep.dims[v] * m.dims[v]));
        let tgt_off = offsets((0..n).map(|v| nrep.dims[m.prev(v)] * m.dims[v]));
        let mut d = Matrix::zeros(tgt_off[n], src_off[n]);
        for v in 0..n {
            let p = m.prev(v);
            let (rows, cols) = (nrep.dims[p], m.dims[v]);
            let mv = &m.maps[v];
            let nv = &nrep.maps[v];
            for i in 0..rows {
                for j in 0..cols {
                    let eq = tgt_off[v] + i * cols + j;
                    // + sum_k f_{p}[i,k] M_v[k,j]
                    for k in 0..m.dims[p] {
                        let c = mv[(k, j)];
                        if !c.is_zero() {
                            let var = src_off[p] + i * m.dims[p] + k;
                            d[(eq, var)] += c;
                        }
                    }
                    // - sum_k N_v[i,k] f_v[k,j]
                    for k in 0..nrep.dims[v] {
                        let c = nv[(i, k)];
                        if !c.is_zero() {
                            let var = src_off[v] + k * m.dims[v] + j;
                            d[(eq, var)] -= c;
                        }
                    }
                }
            }
        }
        Ok(d)
    }

    pub fn hom_dim(m: &NilpRep, nrep: &NilpRep) -> Result<usize> {
        let d = Self::differential(m, nrep)?;
        Ok(d.cols() - d.rank())
    }

    pub fn ext_dim(m: &NilpRep, nrep: &NilpRep) -> Result<usize> {
        let d = Self::differential(m, nrep)?;
        Ok(d.rows() - d.rank())
    }

    /// A basis of `Hom(M, N)`.
    pub fn hom_basis(m: &NilpRep, nrep: &NilpRep) -> Result<Vec<Morphism>> {
        let d = Self::differential(m, nrep)?;
        let n = m.n();
        let src_off = offsets((0..n).map(|v| nrep.dims[v] * m.dims[v]));
        Ok(d.nullspace()
            .into_iter()
            .map(|x| {
                (0..n)
                    .map(|v| {
                        Matrix::from_fn(nrep.dims[v], m.dims[v], |r, c| {
                            x[src_off[v] + r * m.dims[v] + c]
                        })
                    })
                    .collect()
            })
            .collect())
    }

    /// Cocycles `g = (g_v : M_v -> N_{v-1})` whose classes form a basis of `Ext^1(M, N)`.
    pub fn ext_basis(m: &NilpRep, nrep: &NilpRep) -> Result<Vec<Vec<Matrix>>> {
        let d = Self::differential(m, nrep)?;
        let n = m.n();
        let tgt_off = offsets((0..n).map(|v| nrep.dims[m.prev(v)] * m.dims[v]));
        Ok(d.cokernel_complement()
            .into_iter()
            .map(|idx| {
                (0..n)
                    .map(|v| {
                        let p = m.prev(v);
                        Matrix::from_fn(nrep.dims[p], m.dims[v], |r, c| {
                            if tgt_off[v] + r * m.dims[v] + c == idx {
                                Q::one()
                            } else {
                                Q::zero()
                            }
                        })
                    })
                    .collect()
            })
            .collect())
    }

    /// Middle term of the extension `0 -> N -> E -> M -> 0` given by the cocycle `g`.
    pub fn extension(m: &NilpRep, nrep: &NilpRep, g: &[Matrix]) -> Result<NilpRep> {
        if m.rank != nrep.rank {
            return Err(Error::RankMismatch(m.rank, nrep.rank));
        }
        let n = m.n();
        let dims = (0..n).map(|v| nrep.dims[v] + m.dims[v]).collect();
        let maps = (0..n)
            .map(|v| {
                let p = m.prev(v);
                Matrix::block(
                    &nrep.maps[v],
                    &g[v],
                    &Matrix::zeros(m.dims[p], nrep.dims[v]),
                    &m.maps[v],
                )
            })
            .collect();
        NilpRep::new(m.rank, dims, maps)
    }

    /// Kernel of `f: self -> target` as a representation.
    pub fn kernel(&self, f: &[Matrix]) -> NilpRep {
        let n = self.n();
        let bases: Vec<Matrix> = (0..n)
            .map(|v| Matrix::from_columns(self.dims[v], &f[v].nullspace()))
            .collect();
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let maps = (0..n)
            .map(|v| {
                let p = self.prev(v);
                let image = self.maps[v].mul(&bases[v]);
                let cols: Vec<Vec<Q>> = (0..image.cols())
                    .map(|c| {
                        bases[p]
                            .solve(&image.column(c))
                            .expect("kernel is a subrepresentation")
                    })
                    .collect();
                Matrix::from_columns(dims[p], &cols)
            })
            .collect();
        NilpRep {
            rank: self.rank,
            dims,
            maps,
        }
    }

    /// Cokernel of `f: source -> self` as a representation.
    pub fn cokernel(&self, f: &[Matrix]) -> NilpRep {
        let n = self.n();
        // projection onto a complement of im f_v spanned by standard vectors
        let mut comps = Vec::with_capacity(n);
        let mut projs = Vec::with_capacity(n);
        for v in 0..n {
            let img = f[v].column_space();
            let comp = f[v].cokernel_complement();
            let mut cols = img.clone();
            for &c in &comp {
                let mut e = vec![Q::zero(); self.dims[v]];
                e[c] = Q::one();
                cols.push(e);
            }
            let b = Matrix::from_columns(self.dims[v], &cols);
            let inv = b.inverse().expect("image plus complement is a basis");
            let k = img.len();
            projs.push(Matrix::from_fn(comp.len(), self.dims[v], |r, c| {
                inv[(k + r, c)]
            }));
            comps.push(comp);
        }
        let dims: Vec<usize> = comps.iter().map(Vec::len).collect();
        let maps = (0..n)
            .map(|v| {
                let p = self.prev(v);
                let incl = Matrix::from_fn(self.dims[v], dims[v], |r, c| {
                    if comps[v][c] == r {
                        Q::one()
                    } else {
                        Q::zero()
                    }
                });
                projs[p].mul(&self.maps[v]).mul(&incl)
            })
            .collect();
        NilpRep {
            rank: self.rank,
            dims,
            maps,
        }
    }

    /// Krull-Schmidt decomposition into arcs with multiplicities.
    ///
    /// Uses ranks of paths: with `r_l(t)` the rank of the length-`l` path out of
    /// vertex `t`, the multiplicity of the arc with top `t` and length `l` is
    /// `[r_{l-1}(t) - r_l(t)] - [r_l(t+1) - r_{l+1}(t+1)]`.
    pub fn decompose(&self) -> Result<BTreeMap<Arc, usize>> {
        if !self.is_nilpotent() {
            return Err(Error::NotNilpotent);
        }
        let n = self.n();
        let total = self.total_dim();
        let mut ranks = vec![vec![0i64; total + 2]; n];
        for (t, row) in ranks.iter_mut().enumerate() {
            for (l, slot) in row.iter_mut().enumerate() {
                *slot = if self.dims[t] == 0 {
                    0
                } else {
                    self.path(t, l).rank() as i64
                };
            }
        }
        let r = |t: usize, l: usize| ranks[t % n][l];
        let mut out = BTreeMap::new();
        let mut covered = 0usize;
        for t in 0..n {
            for l in 1..=total {
                let m = (r(t, l - 1) - r(t, l)) - (r(t + 1, l) - r(t + 1, l + 1));
                if m < 0 {
                    return Err(Error::Invariant(format!(
                        "negative multiplicity at top {t}, length {l}"
                    )));
                }
                if m > 0 {
                    let arc = Arc::with_top(self.rank, t as i64, l as u32)?;
                    out.insert(arc, m as usize);
                    covered += m as usize * l;
                }
            }
        }
        if covered != total {
            return Err(Error::Invariant(format!(
                "decomposition covers {covered} of {total} dimensions"
            )));
        }
        Ok(out)
    }
}

fn offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for s in sizes {
        out.push(out.last().unwrap() + s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn rep(n: u32, s: i64, l: u32) -> NilpRep {
        NilpRep::of_arc(&Arc::new(n, s, l).unwrap())
    }

    #[test]
    fn arc_reps_are_nilpotent_and_indecomposable() {
        for n in 1..5 {
            for a in Arc::all(n, 2 * n) {
                let r = NilpRep::of_arc(&a);
                assert!(r.is_nilpotent());
                assert_eq!(r.total_dim(), a.len() as usize);
                let d = r.decompose().unwrap();
                assert_eq!(d.into_iter().collect::<Vec<_>>(), vec![(a, 1)]);
            }
        }
    }

    #[test]
    fn direct_sum_decomposes() {
        let a = Arc::new(3, 0, 2).unwrap();
        let b = Arc::new(3, 2, 4).unwrap();
        let s = NilpRep::of_arc(&a)
            .direct_sum(&NilpRep::of_arc(&b))
            .unwrap();
        let d = s.decompose().unwrap();
        assert_eq!(d.get(&a), Some(&1));
        assert_eq!(d.get(&b), Some(&1));
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn hom_examples() {
        assert_eq!(NilpRep::hom_dim(&rep(2, 0, 2), &rep(2, 1, 2)).unwrap(), 1);
        assert_eq!(NilpRep::hom_dim(&rep(2, 0, 1), &rep(2, 1, 1)).unwrap(), 0);
        assert_eq!(NilpRep::hom_dim(&rep(2, 0, 4), &rep(2, 0, 4)).unwrap(), 2);
    }

    #[test]
    fn nonsplit_extension_of_simples() {
        let m = rep(2, 1, 1);
        let nrep = rep(2, 0, 1);
        let basis = NilpRep::ext_basis(&m, &nrep).unwrap();
        assert_eq!(basis.len(), 1);
        let e = NilpRep::extension(&m, &nrep, &basis[0]).unwrap();
        let d = e.decompose().unwrap();
        assert_eq!(
            d.into_iter().collect::<Vec<_>>(),
            vec![(Arc::new(2, 0, 2).unwrap(), 1)]
        );
    }

    #[test]
    fn kernel_and_cokernel_of_inclusion() {
        // Arc(0,1) includes into Arc(0,3) in rank 3; cokernel is Arc(1,2)
        let sub = rep(3, 0, 1);
        let big = rep(3, 0, 3);
        let basis = NilpRep::hom_basis(&sub, &big).unwrap();
        assert_eq!(basis.len(), 1);
        let f = &basis[0];
        assert_eq!(sub.kernel(f).total_dim(), 0);
        let c = big.cokernel(f).decompose().unwrap();
        assert_eq!(
            c.into_iter().collect::<Vec<_>>(),
            vec![(Arc::new(3, 1, 2).unwrap(), 1)]
        );
    }

    #[test]
    fn rejects_non_nilpotent() {
        let m = Matrix::from_fn(1, 1, |_, _| q(1));
        assert_eq!(NilpRep::new(1, vec![1], vec![m]), Err(Error::NotNilpotent));
    }
}
