//! Indecomposable coherent sheaves and their Hom/Ext dimensions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::{GradeElement, WeightData};
use crate::tube::{self, Arc};

/// An indecomposable sheaf on a weighted projective line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndecSheaf {
    /// `O(l)`.
    LineBundle(GradeElement),
    /// Torsion at a declared point `i`; the arc lives in the tube of rank `p_i`.
    /// The simple `S_{i,j}` is `Arc(j, 1)`.
    TorsionArc { point: usize, arc: Arc },
    /// Torsion of the given length at an ordinary point.
    OrdinaryTorsion { point: String, len: u32 },
}

use IndecSheaf::*;

/// JSON form of a sheaf.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SheafJson {
    LineBundle { coeffs: Vec<i64>, c: i64 },
    Torsion { point: String, socle: u32, len: u32 },
    Ordinary { point: String, len: u32 },
}

impl IndecSheaf {
    pub fn line_bundle(l: GradeElement) -> Self {
        LineBundle(l)
    }

    pub fn structure(w: &WeightData) -> Self {
        LineBundle(w.zero())
    }

    /// `S_{i,j}` at declared point `i`.
    pub fn simple(w: &WeightData, point: usize, j: i64) -> Self {
        TorsionArc {
            point,
            arc: Arc::simple(w.weight(point), j),
        }
    }

    pub fn torsion(w: &WeightData, point: usize, socle: i64, len: u32) -> Result<Self> {
        if point >= w.declared() {
            return Err(Error::Parse(format!(
                "point index {point} is not a declared weighted point"
            )));
        }
        Ok(TorsionArc {
            point,
            arc: Arc::new(w.weight(point), socle, len)?,
        })
    }

    pub fn ordinary(point: impl Into<String>, len: u32) -> Self {
        OrdinaryTorsion {
            point: point.into(),
            len,
        }
    }

    pub fn is_bundle(&self) -> bool {
        matches!(self, LineBundle(_))
    }

    pub fn is_torsion(&self) -> bool {
        !self.is_bundle()
    }

    /// Checks the sheaf against the weight data.
    pub fn validate(&self, w: &WeightData) -> Result<()> {
        match self {
            LineBundle(l) => {
                if l.weights() != w.weights() {
                    return Err(Error::MixedWeights);
                }
                if w.weighted_point_count() > 2 {
                    return Err(Error::Unsupported(
                        "line bundle computations need at most two weighted points".into(),
                    ));
                }
            }
            TorsionArc { point, arc } => {
                if *point >= w.declared() {
                    return Err(Error::InvalidArc(format!(
                        "point index {point} is not declared"
                    )));
                }
                if arc.rank() != w.weight(*point) {
                    return Err(Error::RankMismatch(arc.rank(), w.weight(*point)));
                }
            }
            OrdinaryTorsion { point, len } => {
                if *len == 0 {
                    return Err(Error::InvalidArc("ordinary torsion of length 0".into()));
                }
                if w.labels()[..w.declared()].iter().any(|l| l == point) {
                    return Err(Error::Parse(format!(
                        "{point} is a weighted point, not an ordinary one"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Grading shift `F(l)`.
    pub fn shift(&self, l: &GradeElement) -> IndecSheaf {
        match self {
            LineBundle(m) => LineBundle(m.clone() + l.clone()),
            TorsionArc { point, arc } => TorsionArc {
                point: *point,
                arc: arc.tau_pow(-(l.coeff(*point) as i64)),
            },
            OrdinaryTorsion { .. } => self.clone(),
        }
    }

    /// Length for torsion sheaves, `None` for bundles.
    pub fn length(&self) -> Option<u32> {
        match self {
            LineBundle(_) => None,
            TorsionArc { arc, .. } => Some(arc.len()),
            OrdinaryTorsion { len, .. } => Some(*len),
        }
    }

    /// Tube arc of a torsion sheaf; ordinary torsion lives in a rank-one tube.
    fn tube_arc(&self) -> Option<Arc> {
        match self {
            LineBundle(_) => None,
            TorsionArc { arc, .. } => Some(*arc),
            OrdinaryTorsion { len, .. } => Some(Arc::new(1, 0, *len).expect("positive length")),
        }
    }

    fn same_support(&self, other: &IndecSheaf) -> bool {
        match (self, other) {
            (TorsionArc { point: a, .. }, TorsionArc { point: b, .. }) => a == b,
            (OrdinaryTorsion { point: a, .. }, OrdinaryTorsion { point: b, .. }) => a == b,
            _ => false,
        }
    }

    pub fn to_json(&self, w: &WeightData) -> SheafJson {
        match self {
            LineBundle(l) => SheafJson::LineBundle {
                coeffs: l.coeffs().iter().map(|&x| x as i64).collect(),
                c: l.c_coeff(),
            },
            TorsionArc { point, arc } => SheafJson::Torsion {
                point: w.label(*point).to_string(),
                socle: arc.socle(),
                len: arc.len(),
            },
            OrdinaryTorsion { point, len } => SheafJson::Ordinary {
                point: point.clone(),
                len: *len,
            },
        }
    }

    pub fn from_json(w: &WeightData, j: &SheafJson) -> Result<Self> {
        let s = match j {
            SheafJson::LineBundle { coeffs, c } => LineBundle(w.element(coeffs, *c)?),
            SheafJson::Torsion { point, socle, len } => {
                let i = declared_index(w, point)?;
                Self::torsion(w, i, *socle as i64, *len)?
            }
            SheafJson::Ordinary { point, len } => Self::ordinary(point.clone(), *len),
        };
        s.validate(w)?;
        Ok(s)
    }

    /// Parses `O`, `O(l1,...,lk;c)`, `S(point,socle[,len])` or `T(point[,len])`.
    pub fn parse(w: &WeightData, text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("cannot parse sheaf {text:?}"));
        let s = if t == "O" {
            LineBundle(w.zero())
        } else if let Some(body) = t.strip_prefix("O(").and_then(|b| b.strip_suffix(')')) {
            let (coeffs, c) = match body.split_once(';') {
                Some((xs, c)) => (xs, c.parse::<i64>().map_err(|_| bad())?),
                None => (body, 0),
            };
            let coeffs = if coeffs.is_empty() {
                Vec::new()
            } else {
                coeffs
                    .split(',')
                    .map(|x| x.parse::<i64>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?
            };
            LineBundle(w.element(&coeffs, c)?)
        } else if let Some(body) = t.strip_prefix("S(").and_then(|b| b.strip_suffix(')')) {
            let parts: Vec<&str> = body.split(',').collect();
            if parts.len() < 2 || parts.len() > 3 {
                return Err(bad());
            }
            let i = declared_index(w, parts[0])?;
            let socle = parts[1].parse::<i64>().map_err(|_| bad())?;
            let len = parts
                .get(2)
                .map_or(Ok(1), |x| x.parse::<u32>().map_err(|_| bad()))?;
            Self::torsion(w, i, socle, len)?
        } else if let Some(body) = t.strip_prefix("T(").and_then(|b| b.strip_suffix(')')) {
            let parts: Vec<&str> = body.split(',').collect();
            if parts.is_empty() || parts.len() > 2 || parts[0].is_empty() {
                return Err(bad());
            }
            let len = parts
                .get(1)
                .map_or(Ok(1), |x| x.parse::<u32>().map_err(|_| bad()))?;
            Self::ordinary(parts[0], len)
        } else {
            return Err(bad());
        };
        s.validate(w)?;
        Ok(s)
    }

    pub fn display<'a>(&'a self, w: &'a WeightData) -> impl fmt::Display + 'a {
        SheafDisplay { s: self, w }
    }
}

fn declared_index(w: &WeightData, label: &str) -> Result<usize> {
    w.labels()[..w.declared()]
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::Parse(format!("{label} is not a declared weighted point")))
}

struct SheafDisplay<'a> {
    s: &'a IndecSheaf,
    w: &'a WeightData,
}

impl fmt::Display for SheafDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.s {
            LineBundle(l) => {
                let xs: Vec<String> = l.coeffs().iter().map(|x| x.to_string()).collect();
                write!(f, "O({};{})", xs.join(","), l.c_coeff())
            }
            TorsionArc { point, arc } => {
                if arc.len() == 1 {
                    write!(f, "S({},{})", self.w.label(*point), arc.socle())
                } else {
                    write!(
                        f,
                        "S({},{},{})",
                        self.w.label(*point),
                        arc.socle(),
                        arc.len()
                    )
                }
            }
            OrdinaryTorsion { point, len } => {
                if *len == 1 {
                    write!(f, "T({point})")
                } else {
                    write!(f, "T({point},{len})")
                }
            }
        }
    }
}

/// `dim Hom(O(l), S)` for a simple at declared point `i` with index `j`: one iff `j = l_i mod p_i`.
fn hom_lb_simple(l: &GradeElement, point: usize, j: u32) -> u32 {
    u32::from(l.coeff(point) == j)
}

/// `dim Hom(a, b)`.
pub fn hom_dim(w: &WeightData, a: &IndecSheaf, b: &IndecSheaf) -> Result<u32> {
    a.validate(w)?;
    b.validate(w)?;
    Ok(match (a, b) {
        (LineBundle(l), LineBundle(m)) => w.dim_s(&(m.clone() - l.clone())) as u32,
        (LineBundle(l), TorsionArc { point, arc }) => {
            arc.cf().iter().map(|&j| hom_lb_simple(l, *point, j)).sum()
        }
        (LineBundle(_), OrdinaryTorsion { len, .. }) => *len,
        (_, LineBundle(_)) => 0,
        _ => {
            if a.same_support(b) {
                tube::hom_dim(&a.tube_arc().unwrap(), &b.tube_arc().unwrap())?
            } else {
                0
            }
        }
    })
}

/// `dim Ext^1(a, b)` through Serre duality: `dim Hom(b, a(omega))`.
pub fn ext_dim(w: &WeightData, a: &IndecSheaf, b: &IndecSheaf) -> Result<u32> {
    hom_dim(w, b, &a.shift(&w.omega()))
}

/// `dim Ext^1(a, b)` computed without shifting by `omega`.
///
/// Line bundles use the dual degree, torsion pairs use the cokernel of the tube
/// differential, and torsion-to-bundle Ext follows from the defining sequences of
/// the simples.
pub fn ext_dim_direct(w: &WeightData, a: &IndecSheaf, b: &IndecSheaf) -> Result<u32> {
    a.validate(w)?;
    b.validate(w)?;
    let lb_ext = |l: &GradeElement, m: &GradeElement| -> i64 {
        w.dim_s(&(l.clone() + w.omega() - m.clone())) as i64
    };
    let lb_hom =
        |l: &GradeElement, m: &GradeElement| -> i64 { w.dim_s(&(m.clone() - l.clone())) as i64 };
    Ok(match (a, b) {
        (LineBundle(l), LineBundle(m)) => lb_ext(l, m) as u32,
        (LineBundle(_), _) => 0,
        (TorsionArc { point, arc }, LineBundle(m)) => {
            let x = w.x(*point);
            let total: i64 = arc
                .cf()
                .iter()
                .map(|&j| {
                    let hi = x.scale(j as i64);
                    let lo = x.scale(j as i64 - 1);
                    lb_hom(&lo, m) - lb_hom(&hi, m) + lb_ext(&hi, m) - lb_ext(&lo, m)
                })
                .sum();
            u32::try_from(total).map_err(|_| Error::Invariant("negative Ext dimension".into()))?
        }
        (OrdinaryTorsion { len, .. }, LineBundle(m)) => {
            let zero = w.zero();
            let c = w.c();
            let one = lb_hom(&zero, m) - lb_hom(&c, m) + lb_ext(&c, m) - lb_ext(&zero, m);
            u32::try_from(one * *len as i64)
                .map_err(|_| Error::Invariant("negative Ext dimension".into()))?
        }
        _ => {
            if a.same_support(b) {
                tube::ext_dim_direct(&a.tube_arc().unwrap(), &b.tube_arc().unwrap())?
            } else {
                0
            }
        }
    })
}

/// Self-extensions vanish and the endomorphism ring is one-dimensional.
pub fn is_exceptional(w: &WeightData, a: &IndecSheaf) -> Result<bool> {
    Ok(ext_dim(w, a, a)? == 0 && hom_dim(w, a, a)? == 1)
}

/// `Hom(a, b) = 0 = Ext^1(a, b)`.
pub fn orthogonal(w: &WeightData, a: &IndecSheaf, b: &IndecSheaf) -> Result<bool> {
    Ok(hom_dim(w, a, b)? == 0 && ext_dim(w, a, b)? == 0)
}

/// Members exceptional, no Hom or Ext from later to earlier members.
pub fn is_exceptional_sequence(w: &WeightData, seq: &[IndecSheaf]) -> Result<bool> {
    for (i, a) in seq.iter().enumerate() {
        if !is_exceptional(w, a)? {
            return Ok(false);
        }
        for b in &seq[..i] {
            if !orthogonal(w, a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `x` lies in the right perpendicular category of `gens`.
pub fn perp_membership(w: &WeightData, x: &IndecSheaf, gens: &[IndecSheaf]) -> Result<bool> {
    for g in gens {
        if !orthogonal(w, g, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}
