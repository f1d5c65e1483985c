//! Wide subcategories of `coh X`: membership, `c`-invariance and the order.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::sheaf::{is_exceptional, is_exceptional_sequence, orthogonal, perp_membership};
use super::window::{bundles_between, exceptional_torsion};
use super::{IndecSheaf, SheafJson};
use crate::error::{Error, Result};
use crate::grading::WeightData;
use crate::tube::wide::{enumerate_exc, FingerprintJson, DEFAULT_RANK_BOUND};
use crate::tube::{
    self, enumerate_wide, extract_exc_sequence, perp_pair, wide_closure, Arc, ArcJson,
    TubeWideFingerprint,
};

/// Stand-in id for ordinary points outside the declared universe.
pub const GENERIC_POINT: &str = "~generic";

/// Default largest ordinary universe accepted by [`enumerate_wid_c`].
pub const DEFAULT_UNIVERSE_BOUND: usize = 12;

/// Rank of the Grothendieck group: `2 + sum (p_i - 1)`.
pub fn k0_rank(w: &WeightData) -> usize {
    2 + w.weights().iter().map(|&p| p as usize - 1).sum::<usize>()
}

/// A `c`-invariant wide subcategory described by its stalks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CInvariant {
    /// One fingerprint per declared point.
    pub points: Vec<TubeWideFingerprint>,
    /// Ordinary points of the universe whose tube is contained. Ignored when a bundle is contained,
    /// since then every ordinary tube is.
    pub ordinary: BTreeSet<String>,
    pub contains_bundle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WideSubcat {
    Zero,
    Whole,
    ExcGenerated(Vec<IndecSheaf>),
    CInvariant(CInvariant),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WideSubcatJson {
    Zero,
    Whole,
    Exc {
        sequence: Vec<SheafJson>,
    },
    CInvariant {
        points: Vec<FingerprintJson>,
        ordinary: Vec<String>,
        contains_bundle: bool,
    },
}

impl WideSubcat {
    /// Collapses trivial descriptions to `Zero` or `Whole`.
    pub fn canonical(self) -> WideSubcat {
        match self {
            WideSubcat::ExcGenerated(s) if s.is_empty() => WideSubcat::Zero,
            WideSubcat::CInvariant(c)
                if c.contains_bundle && c.points.iter().all(|f| f.is_whole()) =>
            {
                WideSubcat::Whole
            }
            WideSubcat::CInvariant(c)
                if !c.contains_bundle
                    && c.ordinary.is_empty()
                    && c.points.iter().all(|f| f.is_zero()) =>
            {
                WideSubcat::Zero
            }
            other => other,
        }
    }

    pub fn contains_bundle(&self) -> bool {
        match self {
            WideSubcat::Zero => false,
            WideSubcat::Whole => true,
            WideSubcat::ExcGenerated(s) => s.iter().any(IndecSheaf::is_bundle),
            WideSubcat::CInvariant(c) => c.contains_bundle,
        }
    }

    pub fn to_json(&self, w: &WeightData) -> WideSubcatJson {
        match self {
            WideSubcat::Zero => WideSubcatJson::Zero,
            WideSubcat::Whole => WideSubcatJson::Whole,
            WideSubcat::ExcGenerated(s) => WideSubcatJson::Exc {
                sequence: s.iter().map(|x| x.to_json(w)).collect(),
            },
            WideSubcat::CInvariant(c) => WideSubcatJson::CInvariant {
                points: c.points.iter().map(TubeWideFingerprint::to_json).collect(),
                ordinary: c.ordinary.iter().cloned().collect(),
                contains_bundle: c.contains_bundle,
            },
        }
    }

    pub fn from_json(w: &WeightData, j: &WideSubcatJson) -> Result<WideSubcat> {
        Ok(match j {
            WideSubcatJson::Zero => WideSubcat::Zero,
            WideSubcatJson::Whole => WideSubcat::Whole,
            WideSubcatJson::Exc { sequence } => WideSubcat::ExcGenerated(
                sequence
                    .iter()
                    .map(|x| IndecSheaf::from_json(w, x))
                    .collect::<Result<_>>()?,
            ),
            WideSubcatJson::CInvariant {
                points,
                ordinary,
                contains_bundle,
            } => WideSubcat::CInvariant(CInvariant {
                points: points
                    .iter()
                    .map(TubeWideFingerprint::from_json)
                    .collect::<Result<_>>()?,
                ordinary: ordinary.iter().cloned().collect(),
                contains_bundle: *contains_bundle,
            }),
        })
    }

    pub fn display<'a>(&'a self, w: &'a WeightData) -> impl fmt::Display + 'a {
        WideDisplay { s: self, w }
    }
}

struct WideDisplay<'a> {
    s: &'a WideSubcat,
    w: &'a WeightData,
}

impl fmt::Display for WideDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.s {
            WideSubcat::Zero => write!(f, "0"),
            WideSubcat::Whole => write!(f, "coh"),
            WideSubcat::ExcGenerated(s) => {
                let xs: Vec<String> = s.iter().map(|x| x.display(self.w).to_string()).collect();
                write!(f, "<{}>", xs.join(","))
            }
            WideSubcat::CInvariant(c) => {
                let mut parts = Vec::new();
                for (i, fp) in c.points.iter().enumerate() {
                    let arcs: Vec<String> = fp
                        .arcs()
                        .iter()
                        .map(|a| format!("{},{}", a.socle(), a.len()))
                        .collect();
                    parts.push(format!("{}:[{}]", self.w.label(i), arcs.join(" ")));
                }
                if c.contains_bundle {
                    write!(f, "cinv{{{}; bundles}}", parts.join("; "))
                } else {
                    let ord: Vec<&str> = c.ordinary.iter().map(String::as_str).collect();
                    write!(f, "tor{{{}; ord:[{}]}}", parts.join("; "), ord.join(" "))
                }
            }
        }
    }
}

/// Exceptional sequence generating `gens^perp`, searched among exceptional probes near the
/// bundles of `gens` (or near `O` when there are none).
pub fn perp_generating_sequence(w: &WeightData, gens: &[IndecSheaf]) -> Result<Vec<IndecSheaf>> {
    let k = k0_rank(w)
        .checked_sub(gens.len())
        .ok_or_else(|| Error::NotExceptional("sequence longer than the rank of K_0".into()))?;
    if k == 0 {
        return Ok(Vec::new());
    }
    let mut anchors: Vec<_> = gens
        .iter()
        .filter_map(|g| match g {
            IndecSheaf::LineBundle(l) => Some(l.clone()),
            _ => None,
        })
        .collect();
    if anchors.is_empty() {
        anchors.push(w.zero());
    }
    let spread = w.c().scale(2);
    let mut probes: BTreeSet<IndecSheaf> = exceptional_torsion(w).into_iter().collect();
    for a in &anchors {
        probes.extend(bundles_between(
            w,
            &(a.clone() - spread.clone()),
            &(a.clone() + spread.clone()),
        ));
    }
    let mut cands = Vec::new();
    for x in probes {
        if is_exceptional(w, &x)? && perp_membership(w, &x, gens)? {
            cands.push(x);
        }
    }
    let n = cands.len();
    let mut ok = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            ok[a][b] = a != b && orthogonal(w, &cands[a], &cands[b])?;
        }
    }
    let mut seq = Vec::new();
    if search(&ok, k, &mut seq) {
        return Ok(seq.into_iter().map(|i| cands[i].clone()).collect());
    }
    Err(Error::WindowTooSmall(format!(
        "no exceptional sequence of length {k} found in the perpendicular category"
    )))
}

fn search(ok: &[Vec<bool>], k: usize, seq: &mut Vec<usize>) -> bool {
    if seq.len() == k {
        return true;
    }
    for x in 0..ok.len() {
        if seq.iter().all(|&y| ok[x][y]) {
            seq.push(x);
            if search(ok, k, seq) {
                return true;
            }
            seq.pop();
        }
    }
    false
}

#[derive(Clone, Debug)]
enum How {
    Zero,
    Whole,
    /// Torsion-only exceptional: closure inside each tube.
    Tubes(Vec<TubeWideFingerprint>),
    /// `<E> = perp(E^perp)`; holds a generating sequence of `E^perp`.
    DoublePerp(Vec<IndecSheaf>),
    /// Bundle membership is tested against the torsion sequences whose right perp this is.
    CInv {
        data: CInvariant,
        perp_gens: Vec<IndecSheaf>,
    },
}

/// A wide subcategory prepared for repeated membership queries.
#[derive(Clone, Debug)]
pub struct Resolved {
    sub: WideSubcat,
    how: How,
    exc_gens: Option<Vec<IndecSheaf>>,
}

impl Resolved {
    pub fn new(w: &WeightData, sub: &WideSubcat) -> Result<Resolved> {
        let sub = sub.clone().canonical();
        let (how, exc_gens) = match &sub {
            WideSubcat::Zero => (How::Zero, Some(Vec::new())),
            WideSubcat::Whole => (How::Whole, None),
            WideSubcat::ExcGenerated(seq) => {
                for x in seq {
                    x.validate(w)?;
                }
                if !is_exceptional_sequence(w, seq)? {
                    return Err(Error::NotExceptional(
                        "generators do not form an exceptional sequence".into(),
                    ));
                }
                let how = if seq.iter().all(IndecSheaf::is_torsion) {
                    How::Tubes(tube_closures(w, seq)?)
                } else {
                    How::DoublePerp(perp_generating_sequence(w, seq)?)
                };
                (how, Some(seq.clone()))
            }
            WideSubcat::CInvariant(data) => {
                check_shape(w, data)?;
                let mut perp_gens = Vec::new();
                if data.contains_bundle {
                    for (i, fp) in data.points.iter().enumerate() {
                        if fp.is_exc() {
                            return Err(Error::Invariant(format!(
                                "stalk at {} of a subcategory with bundles must be non-exceptional",
                                w.label(i)
                            )));
                        }
                        let e = extract_exc_sequence(&perp_pair(fp))?;
                        perp_gens.extend(
                            e.into_iter()
                                .map(|arc| IndecSheaf::TorsionArc { point: i, arc }),
                        );
                    }
                }
                let exc_gens = if data.contains_bundle {
                    Some(perp_generating_sequence(w, &perp_gens)?)
                } else if data.ordinary.is_empty() && data.points.iter().all(|f| f.is_exc()) {
                    let mut seq = Vec::new();
                    for (i, fp) in data.points.iter().enumerate() {
                        seq.extend(
                            extract_exc_sequence(fp)?
                                .into_iter()
                                .map(|arc| IndecSheaf::TorsionArc { point: i, arc }),
                        );
                    }
                    Some(seq)
                } else {
                    None
                };
                (
                    How::CInv {
                        data: data.clone(),
                        perp_gens,
                    },
                    exc_gens,
                )
            }
        };
        Ok(Resolved { sub, how, exc_gens })
    }

    pub fn subcat(&self) -> &WideSubcat {
        &self.sub
    }

    /// A generating exceptional sequence, if the subcategory is exceptional.
    ///
    /// `Whole` computes one on demand.
    pub fn exc_generators(&self, w: &WeightData) -> Result<Option<Vec<IndecSheaf>>> {
        match (&self.how, &self.exc_gens) {
            (How::Whole, _) => Ok(Some(perp_generating_sequence(w, &[])?)),
            (_, g) => Ok(g.clone()),
        }
    }

    pub fn is_exc(&self) -> bool {
        matches!(self.how, How::Whole) || self.exc_gens.is_some()
    }

    /// `c`-invariant description, if the subcategory is stored as one.
    pub fn c_invariant(&self) -> Option<&CInvariant> {
        match &self.how {
            How::CInv { data, .. } => Some(data),
            _ => None,
        }
    }

    pub fn contains(&self, w: &WeightData, x: &IndecSheaf) -> Result<bool> {
        match &self.how {
            How::Zero => Ok(false),
            How::Whole => Ok(true),
            How::Tubes(fps) => Ok(match x {
                IndecSheaf::TorsionArc { point, arc } => fps[*point].contains(arc),
                _ => false,
            }),
            How::DoublePerp(f) => {
                for y in f {
                    if !orthogonal(w, x, y)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            How::CInv { data, perp_gens } => Ok(match x {
                IndecSheaf::LineBundle(_) => {
                    data.contains_bundle && perp_membership(w, x, perp_gens)?
                }
                IndecSheaf::TorsionArc { point, arc } => data.points[*point].contains(arc),
                IndecSheaf::OrdinaryTorsion { point, .. } => {
                    data.contains_bundle || data.ordinary.contains(point)
                }
            }),
        }
    }

    /// Objects generating the subcategory as a wide subcategory (not necessarily exceptional).
    fn generators(&self, w: &WeightData) -> Result<Vec<IndecSheaf>> {
        if let Some(g) = self.exc_generators(w)? {
            return Ok(g);
        }
        let How::CInv { data, .. } = &self.how else {
            return Err(Error::Invariant("subcategory without generators".into()));
        };
        let mut out = Vec::new();
        for (i, fp) in data.points.iter().enumerate() {
            out.extend(
                fp.arcs()
                    .iter()
                    .map(|&arc| IndecSheaf::TorsionArc { point: i, arc }),
            );
        }
        out.extend(
            data.ordinary
                .iter()
                .map(|p| IndecSheaf::ordinary(p.clone(), 1)),
        );
        Ok(out)
    }
}

fn check_shape(w: &WeightData, data: &CInvariant) -> Result<()> {
    if data.points.len() != w.declared() {
        return Err(Error::LengthMismatch {
            expected: w.declared(),
            got: data.points.len(),
        });
    }
    for (i, fp) in data.points.iter().enumerate() {
        if fp.rank() != w.weight(i) {
            return Err(Error::RankMismatch(fp.rank(), w.weight(i)));
        }
    }
    Ok(())
}

fn tube_closures(w: &WeightData, seq: &[IndecSheaf]) -> Result<Vec<TubeWideFingerprint>> {
    (0..w.declared())
        .map(|i| {
            let p = w.weight(i);
            let gens: BTreeSet<Arc> = seq
                .iter()
                .filter_map(|x| match x {
                    IndecSheaf::TorsionArc { point, arc } if *point == i => Some(*arc),
                    _ => None,
                })
                .collect();
            if gens.is_empty() {
                Ok(TubeWideFingerprint::zero(p))
            } else {
                wide_closure(p, &gens, 2 * p)
            }
        })
        .collect()
}

/// `x` belongs to the wide subcategory.
pub fn membership(w: &WeightData, sub: &WideSubcat, x: &IndecSheaf) -> Result<bool> {
    Resolved::new(w, sub)?.contains(w, x)
}

/// Stalk-wise comparison of two `c`-invariant subcategories.
pub fn c_inv_leq(a: &CInvariant, b: &CInvariant) -> bool {
    if a.contains_bundle && !b.contains_bundle {
        return false;
    }
    let points = a.points.iter().zip(&b.points).all(|(x, y)| x.is_subset(y));
    let ordinary = b.contains_bundle || (!a.contains_bundle && a.ordinary.is_subset(&b.ordinary));
    points && ordinary
}

/// `a <= b` as wide subcategories.
pub fn leq(w: &WeightData, a: &Resolved, b: &Resolved) -> Result<bool> {
    match (&a.how, &b.how) {
        (How::Zero, _) | (_, How::Whole) => return Ok(true),
        (_, How::Zero) => return Ok(false),
        (How::CInv { data: x, .. }, How::CInv { data: y, .. }) => return Ok(c_inv_leq(x, y)),
        _ => {}
    }
    for g in a.generators(w)? {
        if !b.contains(w, &g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the subcategory is closed under the shift by `c`.
///
/// Exceptional subcategories with bundles are `c`-invariant exactly when they contain a
/// non-exceptional indecomposable torsion sheaf; tube stalks of such are non-exceptional,
/// so probing arcs of length `p_i` and an ordinary simple suffices.
pub fn is_c_invariant(w: &WeightData, sub: &WideSubcat) -> Result<bool> {
    let r = Resolved::new(w, sub)?;
    if !matches!(r.how, How::DoublePerp(_)) {
        return Ok(true);
    }
    let mut probes = vec![IndecSheaf::ordinary(GENERIC_POINT, 1)];
    for i in 0..w.declared() {
        let p = w.weight(i);
        probes.extend((0..p as i64).map(|s| IndecSheaf::TorsionArc {
            point: i,
            arc: Arc::new(p, s, p).expect("valid"),
        }));
    }
    for x in &probes {
        if r.contains(w, x)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `(E^1, ..., E^n)^perp` for exceptional sequences `E^i` in the tubes at the declared points.
pub fn c_inv_from_torsion_exc(w: &WeightData, seqs: &[Vec<Arc>]) -> Result<WideSubcat> {
    if seqs.len() != w.declared() {
        return Err(Error::LengthMismatch {
            expected: w.declared(),
            got: seqs.len(),
        });
    }
    let mut points = Vec::new();
    for (i, seq) in seqs.iter().enumerate() {
        let p = w.weight(i);
        if let Some(a) = seq.iter().find(|a| a.rank() != p) {
            return Err(Error::RankMismatch(a.rank(), p));
        }
        if !tube::is_exceptional_sequence(seq)? {
            return Err(Error::NotExceptional(format!(
                "sequence at {} is not exceptional",
                w.label(i)
            )));
        }
        let gens: BTreeSet<Arc> = seq.iter().copied().collect();
        let fp = if gens.is_empty() {
            TubeWideFingerprint::zero(p)
        } else {
            wide_closure(p, &gens, 2 * p)?
        };
        points.push(perp_pair(&fp));
    }
    Ok(WideSubcat::CInvariant(CInvariant {
        points,
        ordinary: BTreeSet::new(),
        contains_bundle: true,
    })
    .canonical())
}

fn check_universe(w: &WeightData, universe: &[String], bound: usize) -> Result<()> {
    if universe.len() > bound {
        return Err(Error::BoundExceeded(format!(
            "universe of {} points exceeds bound {bound}",
            universe.len()
        )));
    }
    let distinct: BTreeSet<&String> = universe.iter().collect();
    if distinct.len() != universe.len() {
        return Err(Error::Parse("duplicate ordinary point".into()));
    }
    for u in universe {
        IndecSheaf::ordinary(u.clone(), 1).validate(w)?;
    }
    Ok(())
}

fn product(factors: &[Vec<TubeWideFingerprint>]) -> Vec<Vec<TubeWideFingerprint>> {
    factors.iter().fold(vec![Vec::new()], |acc, f| {
        acc.iter()
            .flat_map(|prefix| {
                f.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect()
    })
}

/// All `c`-invariant wide subcategories: the torsion ones supported on declared points and
/// the universe, followed by the right perps of torsion exceptional data.
pub fn enumerate_wid_c(
    w: &WeightData,
    universe: &[String],
    bound: usize,
) -> Result<Vec<WideSubcat>> {
    check_universe(w, universe, bound)?;
    let tubes: Vec<Vec<TubeWideFingerprint>> = (0..w.declared())
        .map(|i| enumerate_wide(w.weight(i)))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for points in product(&tubes) {
        for mask in 0u64..(1 << universe.len()) {
            let ordinary = universe
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, u)| u.clone())
                .collect();
            out.push(
                WideSubcat::CInvariant(CInvariant {
                    points: points.clone(),
                    ordinary,
                    contains_bundle: false,
                })
                .canonical(),
            );
        }
    }
    let excs: Vec<Vec<TubeWideFingerprint>> = (0..w.declared())
        .map(|i| enumerate_exc(w.weight(i), DEFAULT_RANK_BOUND))
        .collect::<Result<_>>()?;
    for points in product(&excs) {
        let points = points.iter().map(perp_pair).collect();
        out.push(
            WideSubcat::CInvariant(CInvariant {
                points,
                ordinary: BTreeSet::new(),
                contains_bundle: true,
            })
            .canonical(),
        );
    }
    Ok(out)
}

/// Splitting of `e^perp` for an exceptional torsion arc `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionPerpReport {
    pub point: String,
    pub socle: u32,
    pub len: u32,
    /// Members of the uniserial block `closure(tau S, ..., tau^{m-1} S)`.
    pub block_b: Vec<ArcJson>,
    /// Weight type of the other block.
    pub reduced_weights: Vec<u32>,
    pub checked_pairs: usize,
    pub violations: Vec<String>,
}

/// Decomposes `e^perp` and checks that the two blocks are mutually orthogonal on `probes`.
pub fn exc_torsion_perp_decompose(
    w: &WeightData,
    e: &IndecSheaf,
    probes: &[IndecSheaf],
) -> Result<TorsionPerpReport> {
    let IndecSheaf::TorsionArc { point, arc } = e else {
        return Err(Error::Unsupported(
            "perp decomposition needs a torsion arc at a weighted point".into(),
        ));
    };
    e.validate(w)?;
    let d = tube::exc_perp_decompose(arc)?;
    let block_b: Vec<IndecSheaf> = d
        .block2
        .iter()
        .map(|&a| IndecSheaf::TorsionArc {
            point: *point,
            arc: a,
        })
        .collect();
    let mut block_a = Vec::new();
    for x in probes {
        if perp_membership(w, x, std::slice::from_ref(e))? && !block_b.contains(x) {
            block_a.push(x.clone());
        }
    }
    let mut checked = 0;
    let mut violations = Vec::new();
    for x in &block_a {
        for y in &block_b {
            checked += 1;
            if !orthogonal(w, x, y)? || !orthogonal(w, y, x)? {
                violations.push(format!("{} / {}", x.display(w), y.display(w)));
            }
        }
    }
    let mut reduced_weights = w.declared_weights().to_vec();
    reduced_weights[*point] -= arc.len();
    Ok(TorsionPerpReport {
        point: w.label(*point).to_string(),
        socle: arc.socle(),
        len: arc.len(),
        block_b: d.block2.iter().map(Arc::to_json).collect(),
        reduced_weights,
        checked_pairs: checked,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w2() -> WeightData {
        WeightData::new(&[2]).unwrap()
    }

    fn o(w: &WeightData, k: i64) -> IndecSheaf {
        IndecSheaf::LineBundle(w.x(0).scale(k))
    }

    fn s(w: &WeightData, j: i64) -> IndecSheaf {
        IndecSheaf::simple(w, 0, j)
    }

    #[test]
    fn k0_ranks() {
        assert_eq!(k0_rank(&WeightData::new(&[1, 1]).unwrap()), 2);
        assert_eq!(k0_rank(&w2()), 3);
        assert_eq!(k0_rank(&WeightData::new(&[2, 3]).unwrap()), 5);
    }

    #[test]
    fn t1_contains_its_simple() {
        let w = w2();
        let t1 = Resolved::new(&w, &WideSubcat::ExcGenerated(vec![o(&w, 0), o(&w, 1)])).unwrap();
        assert!(t1.contains(&w, &s(&w, 1)).unwrap());
        assert!(!t1.contains(&w, &s(&w, 0)).unwrap());
        assert!(!t1.contains(&w, &o(&w, 2)).unwrap());
        assert!(t1.contains(&w, &o(&w, 1)).unwrap());
    }

    #[test]
    fn t2_is_perp_of_simple() {
        let w = w2();
        let t2 = WideSubcat::ExcGenerated(vec![o(&w, 0), o(&w, 2)]);
        let p = c_inv_from_torsion_exc(&w, &[vec![Arc::simple(2, 0)]]).unwrap();
        let a = Resolved::new(&w, &t2).unwrap();
        let b = Resolved::new(&w, &p).unwrap();
        assert!(leq(&w, &a, &b).unwrap() && leq(&w, &b, &a).unwrap());
        for k in -4..6 {
            assert_eq!(b.contains(&w, &o(&w, k)).unwrap(), k % 2 == 0);
            assert_eq!(a.contains(&w, &o(&w, k)).unwrap(), k % 2 == 0);
        }
        assert!(is_c_invariant(&w, &t2).unwrap());
        assert!(!is_c_invariant(&w, &WideSubcat::ExcGenerated(vec![o(&w, 0)])).unwrap());
        assert!(is_c_invariant(&w, &WideSubcat::ExcGenerated(vec![s(&w, 0)])).unwrap());
    }

    #[test]
    fn shifted_perp() {
        let w = w2();
        let p = c_inv_from_torsion_exc(&w, &[vec![Arc::simple(2, 1)]]).unwrap();
        let r = Resolved::new(&w, &p).unwrap();
        assert!(r.contains(&w, &o(&w, 1)).unwrap());
        assert!(!r.contains(&w, &o(&w, 0)).unwrap());
        assert_eq!(
            c_inv_from_torsion_exc(&w, &[vec![]]).unwrap(),
            WideSubcat::Whole
        );
    }

    #[test]
    fn wid_c_counts() {
        let w = w2();
        let u: Vec<String> = vec!["0".into(), "1".into()];
        let all = enumerate_wid_c(&w, &u, DEFAULT_UNIVERSE_BOUND).unwrap();
        assert_eq!(all.len(), 27);
        assert_eq!(all.iter().filter(|x| x.contains_bundle()).count(), 3);
        let distinct: BTreeSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 27);
        let w11 = WeightData::new(&[1, 1]).unwrap();
        let all = enumerate_wid_c(&w11, &[], DEFAULT_UNIVERSE_BOUND).unwrap();
        assert_eq!(all.len(), 5);
        assert_eq!(all.last(), Some(&WideSubcat::Whole));
        assert!(enumerate_wid_c(&w, &["inf".into()], 4).is_err());
    }

    #[test]
    fn order_basics() {
        let w = w2();
        let r = |x: WideSubcat| Resolved::new(&w, &x).unwrap();
        let t0 = r(WideSubcat::ExcGenerated(vec![o(&w, 0)]));
        let t1 = r(WideSubcat::ExcGenerated(vec![o(&w, 0), o(&w, 1)]));
        let t1m = r(WideSubcat::ExcGenerated(vec![o(&w, -1), o(&w, 0)]));
        let sinf1 = r(WideSubcat::ExcGenerated(vec![s(&w, 1)]));
        assert!(leq(&w, &t0, &t1).unwrap());
        assert!(leq(&w, &t0, &t1m).unwrap());
        assert!(!leq(&w, &t1, &t0).unwrap());
        assert!(leq(&w, &sinf1, &t1).unwrap());
        assert!(!leq(&w, &sinf1, &t1m).unwrap());
        let whole = r(WideSubcat::Whole);
        assert!(leq(&w, &t1, &whole).unwrap());
        assert!(!leq(&w, &whole, &t1).unwrap());
    }

    #[test]
    fn perp_decomposition_report() {
        let w = WeightData::new(&[2, 3]).unwrap();
        let e = IndecSheaf::torsion(&w, 1, 0, 2).unwrap();
        let mut probes =
            super::super::window::bundles_between(&w, &w.c().scale(-1), &w.c().scale(2));
        probes.extend(super::super::window::torsion_arcs(&w, 1));
        let rep = exc_torsion_perp_decompose(&w, &e, &probes).unwrap();
        assert_eq!(rep.reduced_weights, vec![2, 1]);
        assert_eq!(rep.block_b.len(), 1);
        assert!(rep.violations.is_empty());
        assert!(rep.checked_pairs > 0);
        let e1 = IndecSheaf::simple(&w, 1, 0);
        let rep = exc_torsion_perp_decompose(&w, &e1, &probes).unwrap();
        assert_eq!(rep.reduced_weights, vec![2, 2]);
        assert!(rep.block_b.is_empty());
    }
}
