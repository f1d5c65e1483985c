//! Grothendieck group, Euler form, reflections and the absolute order.
//!
//! Basis: `[O]`, `[O(c)]` and `[S_{i,j}]` for `1 <= j < p_i`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::WeightData;
use crate::linalg::{q, Matrix, Q};
use crate::sheaves::{self, IndecSheaf};

pub type K0Vector = Vec<i64>;

/// An integral matrix acting on `K_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement(Matrix);

impl WeylElement {
    pub fn identity(m: usize) -> Self {
        WeylElement(Matrix::identity(m))
    }

    pub fn from_matrix(m: Matrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::DimensionMismatch(m.rows(), m.cols()));
        }
        if m.to_ints().is_none() {
            return Err(Error::Invariant("Weyl group elements are integral".into()));
        }
        Ok(WeylElement(m))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        WeylElement(self.0.mul(&other.0))
    }

    pub fn inverse(&self) -> Result<WeylElement> {
        let inv = self.0.inverse().ok_or(Error::NotInvertible)?;
        if inv.to_ints().is_none() {
            return Err(Error::NotInvertible);
        }
        Ok(WeylElement(inv))
    }

    pub fn is_identity(&self) -> bool {
        self.0 == Matrix::identity(self.dim())
    }

    pub fn apply(&self, x: &[i64]) -> K0Vector {
        (0..self.dim())
            .map(|r| {
                x.iter()
                    .enumerate()
                    .map(|(c, &v)| to_i64(self.0[(r, c)]) * v)
                    .sum()
            })
            .collect()
    }

    pub fn to_ints(&self) -> Vec<Vec<i64>> {
        self.0.to_ints().expect("integral by construction")
    }
}

fn to_i64(v: Q) -> i64 {
    assert!(v.is_integer(), "non-integral entry {v}");
    i64::try_from(*v.numer()).expect("entry fits in i64")
}

/// Serializable form of the lattice data.
#[derive(Clone, Debug, Serialize)]
pub struct K0Json {
    pub basis: Vec<String>,
    pub euler: Vec<Vec<i64>>,
}

/// `K_0(coh X)` with its Euler form.
#[derive(Clone, Debug)]
pub struct K0 {
    w: WeightData,
    /// `(point, j)` for the torsion basis vectors, after `[O]` and `[O(c)]`.
    torsion: Vec<(usize, u32)>,
    euler: Matrix,
}

impl K0 {
    pub fn new(w: &WeightData) -> Result<K0> {
        if w.weighted_point_count() > 2 {
            return Err(Error::Unsupported(
                "K_0 computations need line bundles, so at most two weighted points".into(),
            ));
        }
        let mut torsion = Vec::new();
        for i in 0..w.len() {
            for j in 1..w.weight(i) {
                torsion.push((i, j));
            }
        }
        let mut k = K0 {
            w: w.clone(),
            torsion,
            euler: Matrix::zeros(0, 0),
        };
        let objs = k.basis_objects();
        let m = objs.len();
        let mut e = Matrix::zeros(m, m);
        for (u, a) in objs.iter().enumerate() {
            for (v, b) in objs.iter().enumerate() {
                e[(u, v)] =
                    q(sheaves::hom_dim(w, a, b)? as i64 - sheaves::ext_dim(w, a, b)? as i64);
            }
        }
        k.euler = e;
        Ok(k)
    }

    pub fn weights(&self) -> &WeightData {
        &self.w
    }

    pub fn rank(&self) -> usize {
        2 + self.torsion.len()
    }

    /// `O`, `O(c)` and the simples `S_{i,j}`, `1 <= j < p_i`.
    ///
    /// Simples at padded points never occur since those have weight one.
    pub fn basis_objects(&self) -> Vec<IndecSheaf> {
        let mut out = vec![
            IndecSheaf::structure(&self.w),
            IndecSheaf::LineBundle(self.w.c()),
        ];
        out.extend(
            self.torsion
                .iter()
                .map(|&(i, j)| IndecSheaf::simple(&self.w, i, j as i64)),
        );
        out
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.basis_objects()
            .iter()
            .map(|x| format!("[{}]", x.display(&self.w)))
            .collect()
    }

    pub fn euler_matrix(&self) -> &Matrix {
        &self.euler
    }

    pub fn to_json(&self) -> K0Json {
        K0Json {
            basis: self.basis_labels(),
            euler: self.euler.to_ints().expect("integral"),
        }
    }

    /// `delta = [O(c)] - [O]`, the class of an ordinary simple.
    pub fn delta(&self) -> K0Vector {
        let mut v = vec![0; self.rank()];
        v[0] = -1;
        v[1] = 1;
        v
    }

    fn unit(&self, k: usize) -> K0Vector {
        let mut v = vec![0; self.rank()];
        v[k] = 1;
        v
    }

    fn simple_class(&self, point: usize, j: u32) -> K0Vector {
        let p = self.w.weight(point);
        let j = j % p;
        let pos = |jj: u32| {
            2 + self
                .torsion
                .iter()
                .position(|&t| t == (point, jj))
                .expect("basis simple")
        };
        if j != 0 {
            return self.unit(pos(j));
        }
        let mut v = self.delta();
        for jj in 1..p {
            v[pos(jj)] -= 1;
        }
        v
    }

    pub fn class_of(&self, s: &IndecSheaf) -> Result<K0Vector> {
        s.validate(&self.w)?;
        Ok(match s {
            IndecSheaf::LineBundle(l) => {
                // O -> O(c) -> ... -> O(l c) adds delta per step, then each x_i step adds a simple
                let mut v = self.unit(0);
                let d = self.delta();
                for (x, dx) in v.iter_mut().zip(&d) {
                    *x += l.c_coeff() * dx;
                }
                for i in 0..self.w.len() {
                    for j in 1..=l.coeff(i) {
                        add(&mut v, &self.simple_class(i, j));
                    }
                }
                v
            }
            IndecSheaf::TorsionArc { point, arc } => {
                let mut v = vec![0; self.rank()];
                for j in arc.cf() {
                    add(&mut v, &self.simple_class(*point, j));
                }
                v
            }
            IndecSheaf::OrdinaryTorsion { len, .. } => {
                self.delta().iter().map(|x| x * *len as i64).collect()
            }
        })
    }

    pub fn euler_form(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        let m = self.rank();
        if x.len() != m || y.len() != m {
            return Err(Error::DimensionMismatch(m, x.len().max(y.len())));
        }
        let mut s = 0i64;
        for (u, &a) in x.iter().enumerate() {
            for (v, &b) in y.iter().enumerate() {
                s += a * to_i64(self.euler[(u, v)]) * b;
            }
        }
        Ok(s)
    }

    /// `s_e(x) = x - (<x, e> + <e, x>) e`.
    pub fn reflection(&self, e: &IndecSheaf) -> Result<WeylElement> {
        if !sheaves::is_exceptional(&self.w, e)? {
            return Err(Error::NotExceptional(format!("{}", e.display(&self.w))));
        }
        let v = self.class_of(e)?;
        let m = self.rank();
        let sym = self.euler.add(&self.euler.transpose());
        let col = Matrix::from_fn(m, 1, |r, _| q(v[r]));
        let proj = col.mul(&col.transpose()).mul(&sym);
        Ok(WeylElement(Matrix::identity(m).sub(&proj)))
    }

    /// `s_{E_1} ... s_{E_r}`.
    pub fn cox_of(&self, seq: &[IndecSheaf]) -> Result<WeylElement> {
        if !sheaves::is_exceptional_sequence(&self.w, seq)? {
            return Err(Error::NotExceptional("not an exceptional sequence".into()));
        }
        seq.iter()
            .try_fold(WeylElement::identity(self.rank()), |acc, e| {
                Ok(acc.mul(&self.reflection(e)?))
            })
    }

    /// Line bundles `O(l)` with `0 <= l <= c`, ordered by degree and then coefficients.
    pub fn canonical_sequence(&self) -> Vec<IndecSheaf> {
        let mut ls = sheaves::window::bundles_between(&self.w, &self.w.zero(), &self.w.c());
        ls.sort_by_key(|x| match x {
            IndecSheaf::LineBundle(l) => (l.degree(), l.c_coeff(), l.coeffs().to_vec()),
            _ => unreachable!("bundles only"),
        });
        ls
    }

    /// Coxeter element from the canonical sequence; checked against `E C = -E^T`.
    pub fn coxeter_element(&self) -> Result<WeylElement> {
        let c = self.cox_of(&self.canonical_sequence())?;
        if self.euler.mul(c.matrix()) != self.euler.transpose().scale(q(-1)) {
            return Err(Error::Invariant("Coxeter identity E C = -E^T fails".into()));
        }
        Ok(c)
    }

    /// `w^T (E + E^T) w = E + E^T`. Reflections do not preserve the non-symmetric form.
    pub fn preserves_form(&self, w: &WeylElement) -> bool {
        let sym = self.euler.add(&self.euler.transpose());
        w.dim() == self.rank() && w.matrix().transpose().mul(&sym).mul(w.matrix()) == sym
    }

    /// `w^T E w = E`, which holds for the Coxeter element.
    pub fn preserves_euler_form(&self, w: &WeylElement) -> bool {
        w.dim() == self.rank()
            && w.matrix().transpose().mul(&self.euler).mul(w.matrix()) == self.euler
    }

    /// `rank(w - 1)`, plus one when `delta` lies in the image of `w - 1`.
    pub fn abs_length(&self, w: &WeylElement) -> Result<usize> {
        if !self.preserves_form(w) {
            return Err(Error::Invariant(
                "element does not preserve the Euler form".into(),
            ));
        }
        let moved = w.matrix().sub(&Matrix::identity(self.rank()));
        let delta: Vec<Q> = self.delta().into_iter().map(q).collect();
        Ok(moved.rank() + usize::from(moved.in_column_space(&delta)))
    }

    /// `u <= v` in the absolute order.
    pub fn nc_leq(&self, u: &WeylElement, v: &WeylElement) -> Result<bool> {
        let rest = u.inverse()?.mul(v);
        Ok(self.abs_length(u)? + self.abs_length(&rest)? == self.abs_length(v)?)
    }
}

fn add(v: &mut [i64], w: &[i64]) {
    for (x, y) in v.iter_mut().zip(w) {
        *x += y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(ws: &[u32]) -> K0 {
        K0::new(&WeightData::new(ws).unwrap()).unwrap()
    }

    #[test]
    fn classes() {
        let k = k(&[2]);
        let w = k.weights().clone();
        assert_eq!(
            k.class_of(&IndecSheaf::structure(&w)).unwrap(),
            vec![1, 0, 0]
        );
        assert_eq!(
            k.class_of(&IndecSheaf::ordinary("5", 1)).unwrap(),
            vec![-1, 1, 0]
        );
        assert_eq!(
            k.class_of(&IndecSheaf::LineBundle(w.x(0))).unwrap(),
            vec![1, 0, 1]
        );
        assert_eq!(
            k.class_of(&IndecSheaf::simple(&w, 0, 0)).unwrap(),
            vec![-1, 1, -1]
        );
    }

    #[test]
    fn euler_values() {
        let k = k(&[2]);
        let w = k.weights().clone();
        let o = k.class_of(&IndecSheaf::structure(&w)).unwrap();
        let sl = k.delta();
        let s1 = k.class_of(&IndecSheaf::simple(&w, 0, 1)).unwrap();
        assert_eq!(k.euler_form(&o, &o).unwrap(), 1);
        assert_eq!(k.euler_form(&o, &sl).unwrap(), 1);
        assert_eq!(k.euler_form(&s1, &s1).unwrap(), 1);
        assert!(k.euler_form(&o, &[1]).is_err());
    }

    #[test]
    fn coxeter_identity() {
        for ws in [&[1u32, 1][..], &[2], &[2, 3], &[2, 2]] {
            let k = k(ws);
            let c = k.coxeter_element().unwrap();
            assert_eq!(k.abs_length(&c).unwrap(), k.rank());
            assert_eq!(c.apply(&k.delta()), k.delta());
            assert!(k.preserves_euler_form(&c));
        }
    }

    #[test]
    fn reflections() {
        let k = k(&[2]);
        let w = k.weights().clone();
        let id = WeylElement::identity(3);
        assert_eq!(k.abs_length(&id).unwrap(), 0);
        for e in k
            .canonical_sequence()
            .into_iter()
            .chain([IndecSheaf::simple(&w, 0, 0)])
        {
            let s = k.reflection(&e).unwrap();
            assert!(s.mul(&s).is_identity());
            assert!(k.preserves_form(&s));
            let v = k.class_of(&e).unwrap();
            assert_eq!(s.apply(&v), v.iter().map(|x| -x).collect::<Vec<_>>());
            assert_eq!(k.abs_length(&s).unwrap(), 1);
            assert!(k.nc_leq(&id, &s).unwrap());
            assert!(k.nc_leq(&s, &s).unwrap());
        }
        assert!(k.reflection(&IndecSheaf::ordinary("5", 1)).is_err());
    }

    #[test]
    fn rejects_three_points() {
        assert!(matches!(
            K0::new(&WeightData::new(&[2, 2, 2]).unwrap()),
            Err(Error::Unsupported(_))
        ));
    }
}
