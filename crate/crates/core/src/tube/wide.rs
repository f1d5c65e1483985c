//! Wide subcategories of a tube, represented by their short members.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{orthogonal, pair_data, Arc, ArcJson};
use crate::error::{Error, Result};

/// Default largest rank accepted by [`enumerate_wide`].
pub const DEFAULT_RANK_BOUND: u32 = 6;

/// A wide subcategory of `U_n`, stored as its member arcs of length at most `n`.
///
/// Longer members are implied: `Arc(s, L)` with `L > n` belongs to the subcategory
/// exactly when `Arc(s, n)` and `Arc(s, L - n)` do.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TubeWideFingerprint {
    rank: u32,
    arcs: BTreeSet<Arc>,
    exc: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingerprintJson {
    pub rank: u32,
    pub exc: bool,
    pub arcs: Vec<ArcJson>,
}

impl TubeWideFingerprint {
    /// Builds a fingerprint from arcs; arcs longer than the rank are dropped.
    pub fn from_arcs(rank: u32, arcs: impl IntoIterator<Item = Arc>) -> Self {
        let arcs: BTreeSet<Arc> = arcs.into_iter().filter(|a| a.len() <= rank).collect();
        let exc = !arcs.iter().any(|a| a.len() == rank);
        TubeWideFingerprint { rank, arcs, exc }
    }

    pub fn zero(rank: u32) -> Self {
        Self::from_arcs(rank, [])
    }

    pub fn whole(rank: u32) -> Self {
        Self::from_arcs(rank, Arc::all(rank, rank))
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn arcs(&self) -> &BTreeSet<Arc> {
        &self.arcs
    }

    /// Generated by an exceptional sequence, i.e. no member of length `n`.
    pub fn is_exc(&self) -> bool {
        self.exc
    }

    pub fn is_zero(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.arcs.len() == (self.rank * self.rank) as usize
    }

    pub fn contains(&self, a: &Arc) -> bool {
        if a.rank() != self.rank {
            return false;
        }
        if a.len() <= self.rank {
            return self.arcs.contains(a);
        }
        let head = Arc::new(self.rank, a.socle() as i64, self.rank).expect("valid");
        let rest = Arc::new(self.rank, a.socle() as i64, a.len() - self.rank).expect("valid");
        self.arcs.contains(&head) && self.contains(&rest)
    }

    pub fn is_subset(&self, other: &TubeWideFingerprint) -> bool {
        self.rank == other.rank && self.arcs.is_subset(&other.arcs)
    }

    /// Composition factors of all members.
    pub fn support(&self) -> BTreeSet<u32> {
        self.arcs.iter().flat_map(|a| a.cf()).collect()
    }

    pub fn to_json(&self) -> FingerprintJson {
        FingerprintJson {
            rank: self.rank,
            exc: self.exc,
            arcs: self.arcs.iter().map(Arc::to_json).collect(),
        }
    }

    pub fn from_json(j: &FingerprintJson) -> Result<Self> {
        let arcs = j
            .arcs
            .iter()
            .map(|a| Arc::from_json(j.rank, *a))
            .collect::<Result<Vec<_>>>()?;
        if let Some(a) = arcs.iter().find(|a| a.len() > j.rank) {
            return Err(Error::InvalidArc(format!("{a} is longer than the rank")));
        }
        Ok(Self::from_arcs(j.rank, arcs))
    }
}

/// Arcs of length at most `n` right-orthogonal to every generator.
pub fn right_perp(rank: u32, gens: &BTreeSet<Arc>) -> BTreeSet<Arc> {
    Arc::all(rank, rank)
        .into_iter()
        .filter(|a| gens.iter().all(|g| orthogonal(g, a).expect("same rank")))
        .collect()
}

/// Arcs of length at most `n` left-orthogonal to every generator.
pub fn left_perp(rank: u32, gens: &BTreeSet<Arc>) -> BTreeSet<Arc> {
    Arc::all(rank, rank)
        .into_iter()
        .filter(|a| gens.iter().all(|g| orthogonal(a, g).expect("same rank")))
        .collect()
}

/// `W -> W^perp` on Exc fingerprints and `V -> perp V` on NExc fingerprints.
pub fn perp_pair(f: &TubeWideFingerprint) -> TubeWideFingerprint {
    let arcs = if f.exc {
        right_perp(f.rank, &f.arcs)
    } else {
        left_perp(f.rank, &f.arcs)
    };
    TubeWideFingerprint::from_arcs(f.rank, arcs)
}

/// All members of length at most `cap` of the wide subcategory generated by `gens`.
pub fn closure_members(rank: u32, gens: &BTreeSet<Arc>, cap: u32) -> Result<BTreeSet<Arc>> {
    let mut members: BTreeSet<Arc> = BTreeSet::new();
    let mut frontier: Vec<Arc> = Vec::new();
    for g in gens {
        if g.rank() != rank {
            return Err(Error::RankMismatch(rank, g.rank()));
        }
        if g.len() > cap {
            return Err(Error::InvalidArc(format!(
                "generator {g} is longer than the cap {cap}"
            )));
        }
        if members.insert(*g) {
            frontier.push(*g);
        }
    }
    while let Some(x) = frontier.pop() {
        let snapshot: Vec<Arc> = members.iter().copied().collect();
        let mut found = Vec::new();
        for y in snapshot {
            for (a, b) in [(x, y), (y, x)] {
                let d = pair_data(&a, &b)?;
                found.extend(d.ker_coker.into_iter().chain(d.ext_middles));
            }
        }
        for z in found {
            if z.len() <= cap && members.insert(z) {
                frontier.push(z);
            }
        }
    }
    Ok(members)
}

/// The fingerprint of the wide subcategory generated by `gens`.
///
/// Closes under kernels, cokernels and extension middles among members of length at
/// most `cap`, then repeats with `cap + n` and requires the same fingerprint.
pub fn wide_closure(rank: u32, gens: &BTreeSet<Arc>, cap: u32) -> Result<TubeWideFingerprint> {
    if cap < 2 * rank {
        return Err(Error::CapTooSmall { cap, min: 2 * rank });
    }
    let small = TubeWideFingerprint::from_arcs(rank, closure_members(rank, gens, cap)?);
    let bigger = cap + rank;
    let large = TubeWideFingerprint::from_arcs(rank, closure_members(rank, gens, bigger)?);
    if small != large {
        return Err(Error::UnstableClosure { cap, bigger });
    }
    Ok(small)
}

fn closure_default(rank: u32, gens: &BTreeSet<Arc>) -> Result<TubeWideFingerprint> {
    wide_closure(rank, gens, 2 * rank)
}

/// Every wide subcategory of `U_n`, sorted.
///
/// Exc members are reached by extending exceptional sequences one object at a time;
/// NExc members are their right perpendiculars.
pub fn enumerate_wide(rank: u32) -> Result<Vec<TubeWideFingerprint>> {
    enumerate_wide_bounded(rank, DEFAULT_RANK_BOUND)
}

pub fn enumerate_wide_bounded(rank: u32, bound: u32) -> Result<Vec<TubeWideFingerprint>> {
    let exc = enumerate_exc(rank, bound)?;
    let mut all: BTreeSet<TubeWideFingerprint> = exc.iter().cloned().collect();
    all.extend(exc.par_iter().map(perp_pair).collect::<Vec<_>>());
    Ok(sorted(all))
}

/// The Exc half of [`enumerate_wide`].
pub fn enumerate_exc(rank: u32, bound: u32) -> Result<Vec<TubeWideFingerprint>> {
    if rank == 0 {
        return Err(Error::InvalidArc("rank must be positive".into()));
    }
    if rank > bound {
        return Err(Error::BoundExceeded(format!(
            "rank {rank} exceeds bound {bound}"
        )));
    }
    let exceptional: Vec<Arc> = Arc::all(rank, rank - 1);
    let zero = TubeWideFingerprint::zero(rank);
    let mut seen: HashSet<TubeWideFingerprint> = HashSet::from([zero.clone()]);
    let mut level = vec![zero];
    while !level.is_empty() {
        let candidates: Vec<(TubeWideFingerprint, Arc)> = level
            .iter()
            .flat_map(|f| {
                exceptional
                    .iter()
                    .filter(|e| {
                        !f.arcs.contains(e)
                            && f.arcs.iter().all(|x| orthogonal(e, x).expect("same rank"))
                    })
                    .map(move |e| (f.clone(), *e))
            })
            .collect();
        let results: Vec<TubeWideFingerprint> = candidates
            .par_iter()
            .map(|(f, e)| {
                let mut gens = f.arcs.clone();
                gens.insert(*e);
                closure_default(rank, &gens)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut next = Vec::new();
        for r in results {
            if !r.exc {
                return Err(Error::Invariant(format!(
                    "exceptional sequence generated a non-Exc subcategory {r:?}"
                )));
            }
            if seen.insert(r.clone()) {
                next.push(r);
            }
        }
        level = next;
    }
    Ok(sorted(seen))
}

/// Exhaustive scan: every set of short arcs that is a fixpoint of [`wide_closure`].
pub fn brute_force_wide(rank: u32) -> Result<Vec<TubeWideFingerprint>> {
    let arcs = Arc::all(rank, rank);
    if arcs.len() > 16 {
        return Err(Error::BoundExceeded(format!(
            "brute force over {} arcs",
            arcs.len()
        )));
    }
    let found: Vec<TubeWideFingerprint> = (0u32..(1 << arcs.len()))
        .into_par_iter()
        .map(|mask| {
            let gens: BTreeSet<Arc> = arcs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, a)| *a)
                .collect();
            let c = closure_default(rank, &gens)?;
            Ok((c.arcs == gens).then_some(c))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(sorted(found))
}

fn sorted(items: impl IntoIterator<Item = TubeWideFingerprint>) -> Vec<TubeWideFingerprint> {
    let mut v: Vec<_> = items.into_iter().collect();
    v.sort_by(|a, b| (a.arcs.len(), &a.arcs).cmp(&(b.arcs.len(), &b.arcs)));
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(n: u32, s: i64, l: u32) -> Arc {
        Arc::new(n, s, l).unwrap()
    }

    fn set(arcs: &[Arc]) -> BTreeSet<Arc> {
        arcs.iter().copied().collect()
    }

    #[test]
    fn closure_examples() {
        let whole = wide_closure(2, &set(&[arc(2, 0, 1), arc(2, 1, 1)]), 4).unwrap();
        assert!(whole.is_whole());
        let single = wide_closure(3, &set(&[arc(3, 1, 1)]), 6).unwrap();
        assert_eq!(single.arcs(), &set(&[arc(3, 1, 1)]));
        let long = wide_closure(2, &set(&[arc(2, 0, 2)]), 4).unwrap();
        assert_eq!(long.arcs(), &set(&[arc(2, 0, 2)]));
        assert!(long.contains(&arc(2, 0, 4)));
        assert!(!long.contains(&arc(2, 0, 3)));
        assert!(!long.is_exc());
    }

    #[test]
    fn cap_too_small() {
        assert_eq!(
            wide_closure(3, &BTreeSet::new(), 5),
            Err(Error::CapTooSmall { cap: 5, min: 6 })
        );
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_wide(1).unwrap().len(), 2);
        assert_eq!(enumerate_wide(2).unwrap().len(), 6);
        assert_eq!(enumerate_wide(3).unwrap().len(), 20);
    }

    #[test]
    fn bound_enforced() {
        assert!(matches!(
            enumerate_wide_bounded(4, 3),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn perp_of_long_arc_and_zero() {
        // perp of <S^{[n]}> with top S_0 is <S_0, tau S_0, ..., tau^{n-2} S_0>
        let n = 4;
        let v = TubeWideFingerprint::from_arcs(n, [Arc::with_top(n, 0, n).unwrap()]);
        let w = perp_pair(&v);
        let expected = wide_closure(
            n,
            &(0..n as i64 - 1).map(|k| arc(n, -k, 1)).collect(),
            2 * n,
        )
        .unwrap();
        assert_eq!(w, expected);
        assert_eq!(
            perp_pair(&TubeWideFingerprint::zero(3)),
            TubeWideFingerprint::whole(3)
        );
    }

    #[test]
    fn fingerprint_json_roundtrip() {
        let f = TubeWideFingerprint::from_arcs(2, [arc(2, 1, 2)]);
        let j = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(j, r#"{"rank":2,"exc":false,"arcs":[{"socle":1,"len":2}]}"#);
        let back: FingerprintJson = serde_json::from_str(&j).unwrap();
        assert_eq!(TubeWideFingerprint::from_json(&back).unwrap(), f);
    }
}
