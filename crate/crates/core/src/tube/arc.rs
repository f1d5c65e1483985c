use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An indecomposable object of the rank-`n` tube.
///
/// Composition factors, read from the socle upwards, are
/// `S_socle, S_{socle+1}, ..., S_{socle+len-1}` (indices mod `rank`).
/// The derived order compares `(rank, socle, len)` and is the tie-break used
/// throughout for deterministic output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    rank: u32,
    socle: u32,
    len: u32,
}

/// Wire form of an arc; the rank travels separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcJson {
    pub socle: u32,
    pub len: u32,
}

impl Arc {
    pub fn new(rank: u32, socle: i64, len: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidArc("rank must be positive".into()));
        }
        if len == 0 {
            return Err(Error::InvalidArc("length must be positive".into()));
        }
        Ok(Arc {
            rank,
            socle: socle.rem_euclid(rank as i64) as u32,
            len,
        })
    }

    /// The simple `S_i`.
    pub fn simple(rank: u32, i: i64) -> Self {
        Self::new(rank, i, 1).expect("positive rank")
    }

    /// The arc with top `S_top` and length `len`, often written `S^{[len]}`.
    pub fn with_top(rank: u32, top: i64, len: u32) -> Result<Self> {
        Self::new(rank, top - len as i64 + 1, len)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn socle(&self) -> u32 {
        self.socle
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the top composition factor.
    pub fn top(&self) -> u32 {
        ((self.socle as u64 + self.len as u64 - 1) % self.rank as u64) as u32
    }

    /// Index of the socle; same as [`Arc::socle`].
    pub fn soc(&self) -> u32 {
        self.socle
    }

    pub fn tau(&self) -> Arc {
        self.tau_pow(1)
    }

    pub fn tau_inv(&self) -> Arc {
        self.tau_pow(-1)
    }

    pub fn tau_pow(&self, k: i64) -> Arc {
        Arc::new(self.rank, self.socle as i64 - k, self.len).expect("valid arc")
    }

    /// Composition factors bottom-up, with multiplicity.
    pub fn cf(&self) -> Vec<u32> {
        (0..self.len)
            .map(|k| (self.socle + k) % self.rank)
            .collect()
    }

    /// Multiplicity of `S_i` as a composition factor.
    pub fn cf_count(&self, i: u32) -> u32 {
        let i = i % self.rank;
        let offset = (i + self.rank - self.socle) % self.rank;
        if offset >= self.len {
            0
        } else {
            (self.len - offset - 1) / self.rank + 1
        }
    }

    pub fn cf_contains(&self, i: u32) -> bool {
        self.cf_count(i) > 0
    }

    /// Exceptional iff shorter than the rank.
    pub fn is_exceptional(&self) -> bool {
        self.len < self.rank
    }

    /// Nonvanishing of `Hom(self, other)` by the top/socle criterion.
    pub fn hom_nonzero(&self, other: &Arc) -> bool {
        other.cf_contains(self.top()) && self.cf_contains(other.soc())
    }

    /// Same arc with socle rotated so that `self.socle() == 0`, plus the rotation applied.
    pub fn normalized_with(&self, other: &Arc) -> (Arc, Arc) {
        let shift = self.socle as i64;
        (self.tau_pow(shift), other.tau_pow(shift))
    }

    pub fn check_rank(&self, other: &Arc) -> Result<()> {
        if self.rank != other.rank {
            Err(Error::RankMismatch(self.rank, other.rank))
        } else {
            Ok(())
        }
    }

    pub fn to_json(&self) -> ArcJson {
        ArcJson {
            socle: self.socle,
            len: self.len,
        }
    }

    pub fn from_json(rank: u32, a: ArcJson) -> Result<Arc> {
        Arc::new(rank, a.socle as i64, a.len)
    }

    /// All arcs of the given rank with length at most `max_len`, in `(socle, len)` order.
    pub fn all(rank: u32, max_len: u32) -> Vec<Arc> {
        let mut out = Vec::with_capacity((rank * max_len) as usize);
        for s in 0..rank {
            for l in 1..=max_len {
                out.push(Arc {
                    rank,
                    socle: s,
                    len: l,
                });
            }
        }
        out
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Arc({},{})", self.socle, self.len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_examples() {
        assert_eq!(Arc::simple(2, 0).tau(), Arc::simple(2, 1));
        let a = Arc::new(3, 0, 2).unwrap();
        assert_eq!(a.cf(), vec![0, 1]);
        assert_eq!(a.top(), 1);
        for n in 1..6 {
            for a in Arc::all(n, 2 * n) {
                assert_eq!(a.tau_pow(n as i64), a);
                assert_eq!(a.tau().tau_inv(), a);
                assert_eq!(a.cf().len() as u32, a.len());
            }
        }
    }

    #[test]
    fn cf_count_matches_list() {
        for n in 1..5 {
            for a in Arc::all(n, 3 * n) {
                for i in 0..n {
                    let c = a.cf().iter().filter(|&&x| x == i).count() as u32;
                    assert_eq!(a.cf_count(i), c, "{a} S_{i}");
                }
            }
        }
    }

    #[test]
    fn invalid_arcs() {
        assert!(Arc::new(0, 0, 1).is_err());
        assert!(Arc::new(2, 0, 0).is_err());
        assert_eq!(Arc::new(3, -1, 1).unwrap().socle(), 2);
    }

    #[test]
    fn with_top_inverts_top() {
        let a = Arc::with_top(4, 1, 3).unwrap();
        assert_eq!(a.top(), 1);
        assert_eq!(a.socle(), 3);
    }

    #[test]
    fn json_shape() {
        let a = Arc::new(4, 1, 3).unwrap();
        let s = serde_json::to_string(&a.to_json()).unwrap();
        assert_eq!(s, r#"{"socle":1,"len":3}"#);
        let back: ArcJson = serde_json::from_str(&s).unwrap();
        assert_eq!(Arc::from_json(4, back).unwrap(), a);
    }
}
