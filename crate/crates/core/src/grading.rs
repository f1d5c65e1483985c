//! The rank-one grading group `L(p)` of a weighted projective line.
//!
//! `L(p)` is generated by `x_1, ..., x_n` subject to `p_1 x_1 = ... = p_n x_n =: c`.
//! Every element has a unique normal form `sum l_i x_i + l c` with `0 <= l_i < p_i`,
//! which is what [`GradeElement`] stores.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Labels of the first three points of the projective line.
const FIXED_LABELS: [&str; 3] = ["inf", "0", "1"];

/// Weight type together with the (symbolic) positions of the weighted points.
///
/// Weight lists shorter than two are padded with weight-one points; the padding
/// is invisible to every dimension count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightData {
    weights: Vec<u32>,
    declared: usize,
    labels: Vec<String>,
    lcm: i64,
}

/// Domestic / tubular / wild trichotomy, decided by the sign of `deg(omega)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineType {
    Domestic,
    Tubular,
    Wild,
}

impl fmt::Display for LineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineType::Domestic => "domestic",
            LineType::Tubular => "tubular",
            LineType::Wild => "wild",
        })
    }
}

/// Canonical element, dualizing element and type of a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineInvariants {
    pub c: GradeElement,
    pub omega: GradeElement,
    pub kind: LineType,
}

impl WeightData {
    pub fn new(weights: &[u32]) -> Result<Self> {
        let labels: Vec<String> = (0..weights.len().max(2)).map(default_label).collect();
        Self::with_labels(weights, labels)
    }

    /// Builds weight data with explicit point labels (one per declared weight,
    /// padded points receive default labels).
    pub fn with_labels(weights: &[u32], mut labels: Vec<String>) -> Result<Self> {
        if let Some(bad) = weights.iter().find(|&&w| w == 0) {
            return Err(Error::InvalidWeights(format!(
                "weight {bad} is not positive"
            )));
        }
        let declared = weights.len();
        let mut padded = weights.to_vec();
        while padded.len() < 2 {
            padded.push(1);
        }
        while labels.len() < padded.len() {
            labels.push(default_label(labels.len()));
        }
        labels.truncate(padded.len());
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::InvalidWeights(format!("point label {a} repeated")));
            }
        }
        let lcm = padded.iter().fold(1i64, |acc, &w| acc.lcm(&(w as i64)));
        Ok(WeightData {
            weights: padded,
            declared,
            labels,
            lcm,
        })
    }

    /// Parses a comma separated list such as `"2,3,5"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Self::new(&[]);
        }
        let weights = spec
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("weight {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&weights)
    }

    /// Padded weights `p_1..p_n`, `n >= 2`.
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// The weights as given by the caller, without padding.
    pub fn declared_weights(&self) -> &[u32] {
        &self.weights[..self.declared]
    }

    pub fn declared(&self) -> usize {
        self.declared
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn point_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `p = lcm(p_1, ..., p_n)`.
    pub fn lcm(&self) -> i64 {
        self.lcm
    }

    /// Number of points carrying a weight of at least two.
    pub fn weighted_point_count(&self) -> usize {
        self.weights.iter().filter(|&&w| w >= 2).count()
    }

    pub fn normalize(&self, raw: &[i64], c: i64) -> Result<GradeElement> {
        if raw.len() != self.weights.len() {
            return Err(Error::LengthMismatch {
                expected: self.weights.len(),
                got: raw.len(),
            });
        }
        let mut coeffs = Vec::with_capacity(raw.len());
        let mut c = c;
        for (&l, &p) in raw.iter().zip(&self.weights) {
            let (q, r) = l.div_mod_floor(&(p as i64));
            c += q;
            coeffs.push(r as u32);
        }
        Ok(GradeElement {
            weights: self.weights.clone(),
            coeffs,
            c,
        })
    }

    /// Normalizes a coefficient list that may be shorter than `n` (missing entries are zero).
    pub fn element(&self, raw: &[i64], c: i64) -> Result<GradeElement> {
        if raw.len() > self.weights.len() {
            return Err(Error::LengthMismatch {
                expected: self.weights.len(),
                got: raw.len(),
            });
        }
        let mut full = raw.to_vec();
        full.resize(self.weights.len(), 0);
        self.normalize(&full, c)
    }

    pub fn zero(&self) -> GradeElement {
        GradeElement {
            weights: self.weights.clone(),
            coeffs: vec![0; self.weights.len()],
            c: 0,
        }
    }

    /// The generator `x_i` (0-based index).
    pub fn x(&self, i: usize) -> GradeElement {
        let mut raw = vec![0i64; self.weights.len()];
        raw[i] = 1;
        self.normalize(&raw, 0).expect("length matches")
    }

    pub fn c(&self) -> GradeElement {
        let mut e = self.zero();
        e.c = 1;
        e
    }

    /// `omega = (n - 2) c - sum x_i`.
    pub fn omega(&self) -> GradeElement {
        let n = self.weights.len() as i64;
        let raw = vec![-1i64; self.weights.len()];
        self.normalize(&raw, n - 2).expect("length matches")
    }

    pub fn line_invariants(&self) -> LineInvariants {
        let omega = self.omega();
        let kind = match omega.degree().cmp(&0) {
            Ordering::Less => LineType::Domestic,
            Ordering::Equal => LineType::Tubular,
            Ordering::Greater => LineType::Wild,
        };
        LineInvariants {
            c: self.c(),
            omega,
            kind,
        }
    }

    /// Dimension of the degree-`a` component of the graded coordinate ring.
    ///
    /// Counts monomials `X_1^a X_2^b prod_{i>=3} X_i^{c_i}` with `0 <= c_i < p_i`.
    pub fn dim_s(&self, a: &GradeElement) -> u64 {
        debug_assert_eq!(a.weights, self.weights);
        if a.c < 0 {
            return 0;
        }
        let p1 = self.weights[0] as i64;
        let p2 = self.weights[1] as i64;
        // exponent of X_1 ranges over l_1, l_1 + p_1, ... while the rest stays effective
        let mut count = 0u64;
        let mut exp1 = a.coeffs[0] as i64;
        let bound = a.coeffs[0] as i64 + p1 * a.c;
        while exp1 <= bound {
            let mut raw = vec![0i64; self.weights.len()];
            raw[0] = -exp1;
            let rest = a.clone() + self.normalize(&raw, 0).expect("length matches");
            // rest must be X_2^b times the fixed X_i^{c_i}, i >= 3
            if rest.coeffs[0] == 0 {
                let exp2 = rest.coeffs[1] as i64 + p2 * rest.c;
                if exp2 >= 0 {
                    count += 1;
                }
            }
            exp1 += p1;
        }
        count
    }
}

fn default_label(i: usize) -> String {
    FIXED_LABELS
        .get(i)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("l{}", i + 1))
}

/// An element of `L(p)` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradeElement {
    weights: Vec<u32>,
    coeffs: Vec<u32>,
    c: i64,
}

impl GradeElement {
    /// Torsion coefficient `l_i`, `0 <= l_i < p_i`.
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn c_coeff(&self) -> i64 {
        self.c
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn is_zero(&self) -> bool {
        self.c == 0 && self.coeffs.iter().all(|&l| l == 0)
    }

    /// `l >= 0` in the partial order of `L(p)`, i.e. the element is a sum of generators.
    pub fn is_effective(&self) -> bool {
        self.c >= 0
    }

    pub fn degree(&self) -> i64 {
        let p = self
            .weights
            .iter()
            .fold(1i64, |acc, &w| acc.lcm(&(w as i64)));
        let torsion: i64 = self
            .coeffs
            .iter()
            .zip(&self.weights)
            .map(|(&l, &w)| l as i64 * (p / w as i64))
            .sum();
        torsion + self.c * p
    }

    pub fn checked_add(&self, other: &GradeElement) -> Result<GradeElement> {
        if self.weights != other.weights {
            return Err(Error::MixedWeights);
        }
        let mut c = self.c + other.c;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .zip(&self.weights)
            .map(|((&a, &b), &p)| {
                let s = a + b;
                if s >= p {
                    c += 1;
                    s - p
                } else {
                    s
                }
            })
            .collect();
        Ok(GradeElement {
            weights: self.weights.clone(),
            coeffs,
            c,
        })
    }

    pub fn checked_sub(&self, other: &GradeElement) -> Result<GradeElement> {
        self.checked_add(&-other.clone())
    }

    pub fn scale(&self, k: i64) -> GradeElement {
        let raw: Vec<i64> = self.coeffs.iter().map(|&l| l as i64 * k).collect();
        let mut out = GradeElement {
            weights: self.weights.clone(),
            coeffs: vec![0; raw.len()],
            c: self.c * k,
        };
        for (i, (&l, &p)) in raw.iter().zip(&self.weights).enumerate() {
            let (q, r) = l.div_mod_floor(&(p as i64));
            out.c += q;
            out.coeffs[i] = r as u32;
        }
        out
    }

    /// `self <= other` in the partial order of `L(p)`.
    pub fn le(&self, other: &GradeElement) -> bool {
        (other.clone() - self.clone()).is_effective()
    }
}

impl Add for GradeElement {
    type Output = GradeElement;

    /// Panics on mixed weight data; use [`GradeElement::checked_add`] to handle it.
    fn add(self, rhs: GradeElement) -> GradeElement {
        self.checked_add(&rhs)
            .expect("grade elements over different weights")
    }
}

impl Sub for GradeElement {
    type Output = GradeElement;

    fn sub(self, rhs: GradeElement) -> GradeElement {
        self.checked_sub(&rhs)
            .expect("grade elements over different weights")
    }
}

impl Neg for GradeElement {
    type Output = GradeElement;

    fn neg(self) -> GradeElement {
        let mut c = -self.c;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&self.weights)
            .map(|(&l, &p)| {
                if l == 0 {
                    0
                } else {
                    c -= 1;
                    p - l
                }
            })
            .collect();
        GradeElement {
            weights: self.weights,
            coeffs,
            c,
        }
    }
}

impl PartialOrd for GradeElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for deterministic output: degree, then coefficients.
impl Ord for GradeElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.c.cmp(&other.c))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
            .then_with(|| self.weights.cmp(&other.weights))
    }
}

impl fmt::Display for GradeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.coeffs.iter().map(|l| l.to_string()).collect();
        write!(f, "({};{})", coeffs.join(","), self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wd(w: &[u32]) -> WeightData {
        WeightData::new(w).unwrap()
    }

    #[test]
    fn normalize_negative_generator() {
        let w = wd(&[2]);
        let e = w.normalize(&[-1, 0], 0).unwrap();
        assert_eq!(e.coeffs(), &[1, 0]);
        assert_eq!(e.c_coeff(), -1);
    }

    #[test]
    fn omega_of_235() {
        let w = wd(&[2, 3, 5]);
        let o = w.omega();
        assert_eq!(o.coeffs(), &[1, 2, 4]);
        assert_eq!(o.c_coeff(), -2);
        assert_eq!(o.degree(), -1);
    }

    #[test]
    fn zero_input() {
        let w = wd(&[2, 3]);
        assert!(w.normalize(&[0, 0], 0).unwrap().is_zero());
        assert!(matches!(
            w.normalize(&[0], 0),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn group_law_examples() {
        let w = wd(&[2]);
        assert_eq!(w.x(0) + w.x(0), w.c());
        let w23 = wd(&[2, 3]);
        let s = w23.x(0) + w23.x(1);
        assert_eq!(s.coeffs(), &[1, 1]);
        assert_eq!(s.c_coeff(), 0);
        let a = w23.normalize(&[5, -7], 3).unwrap();
        assert!((a.clone() + -a).is_zero());
    }

    #[test]
    fn mixed_weights_rejected() {
        let a = wd(&[2]).x(0);
        let b = wd(&[3]).x(0);
        assert_eq!(a.checked_add(&b), Err(Error::MixedWeights));
    }

    #[test]
    fn degrees() {
        let w = wd(&[2, 3]);
        assert_eq!(w.x(0).degree(), 3);
        assert_eq!(w.c().degree(), 6);
        assert_eq!(wd(&[2]).omega().degree(), -3);
    }

    #[test]
    fn trichotomy() {
        assert_eq!(wd(&[2, 3, 5]).line_invariants().kind, LineType::Domestic);
        assert_eq!(wd(&[2, 3, 6]).line_invariants().kind, LineType::Tubular);
        assert_eq!(wd(&[2, 3, 7]).line_invariants().kind, LineType::Wild);
        let p1 = wd(&[1, 1]).line_invariants();
        assert_eq!(p1.kind, LineType::Domestic);
        assert_eq!(p1.omega, wd(&[1, 1]).c().scale(-2));
    }

    #[test]
    fn dim_s_examples() {
        let p1 = wd(&[1, 1]);
        for m in 0..6 {
            assert_eq!(p1.dim_s(&p1.c().scale(m)), m as u64 + 1);
        }
        let w = wd(&[2]);
        assert_eq!(w.dim_s(&w.x(0)), 1);
        assert_eq!(w.dim_s(&-w.x(0)), 0);
        assert_eq!(w.dim_s(&w.zero()), 1);
    }

    #[test]
    fn padding_preserves_invariants() {
        let a = wd(&[2]);
        let b = wd(&[2, 1]);
        let c = wd(&[2, 1, 1]);
        assert_eq!(a.omega().degree(), b.omega().degree());
        assert_eq!(a.omega().degree(), c.omega().degree());
        for k in -3..6 {
            let ea = a.element(&[k], 0).unwrap();
            let ec = c.element(&[k], 0).unwrap();
            assert_eq!(a.dim_s(&ea), c.dim_s(&ec));
        }
    }

    #[test]
    fn parse_weights() {
        let w = WeightData::parse("2,3,5").unwrap();
        assert_eq!(w.weights(), &[2, 3, 5]);
        assert!(WeightData::parse("2,0").is_err());
        assert_eq!(WeightData::parse("2").unwrap().weights(), &[2, 1]);
    }
}
