//! Finite families of indecomposables used as probes.

use super::IndecSheaf;
use crate::grading::{GradeElement, WeightData};
use crate::tube::Arc;

/// Line bundles `O(l)` with `lo <= l <= hi`, ordered by grade.
pub fn bundles_between(w: &WeightData, lo: &GradeElement, hi: &GradeElement) -> Vec<IndecSheaf> {
    let mut out = Vec::new();
    if w.weighted_point_count() > 2 {
        return out;
    }
    let mut coeffs = vec![0i64; w.len()];
    loop {
        for c in lo.c_coeff()..=hi.c_coeff() {
            let l = w.normalize(&coeffs, c).expect("length matches");
            if lo.le(&l) && l.le(hi) {
                out.push(IndecSheaf::LineBundle(l));
            }
        }
        // odometer over torsion coefficients
        let mut i = 0;
        loop {
            if i == w.len() {
                out.sort();
                return out;
            }
            coeffs[i] += 1;
            if coeffs[i] < w.weight(i) as i64 {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// `-2c <= l <= 3c`.
pub fn default_bounds(w: &WeightData) -> (GradeElement, GradeElement) {
    (w.c().scale(-2), w.c().scale(3))
}

/// Line bundles `O(k x_1)` for `a <= k <= b`.
pub fn bundles_along_x1(w: &WeightData, a: i64, b: i64) -> Vec<IndecSheaf> {
    (a..=b)
        .map(|k| IndecSheaf::LineBundle(w.x(0).scale(k)))
        .collect()
}

/// Exceptional arcs at every declared point.
pub fn exceptional_torsion(w: &WeightData) -> Vec<IndecSheaf> {
    arcs_up_to(w, |p| p.saturating_sub(1))
}

/// All arcs at declared points of length at most `factor * p_i`.
pub fn torsion_arcs(w: &WeightData, factor: u32) -> Vec<IndecSheaf> {
    arcs_up_to(w, |p| p * factor)
}

fn arcs_up_to(w: &WeightData, max_len: impl Fn(u32) -> u32) -> Vec<IndecSheaf> {
    let mut out = Vec::new();
    for i in 0..w.declared() {
        let p = w.weight(i);
        out.extend(
            Arc::all(p, max_len(p))
                .into_iter()
                .map(|arc| IndecSheaf::TorsionArc { point: i, arc }),
        );
    }
    out
}

/// Ordinary torsion of lengths `1..=max_len` at each listed point.
pub fn ordinary_torsion(points: &[String], max_len: u32) -> Vec<IndecSheaf> {
    points
        .iter()
        .flat_map(|p| (1..=max_len).map(move |k| IndecSheaf::ordinary(p.clone(), k)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundle_box_sizes() {
        let w = WeightData::new(&[2]).unwrap();
        let (lo, hi) = default_bounds(&w);
        // -4x1 .. 6x1
        assert_eq!(bundles_between(&w, &lo, &hi).len(), 11);
        let w = WeightData::new(&[1, 1]).unwrap();
        let (lo, hi) = default_bounds(&w);
        assert_eq!(bundles_between(&w, &lo, &hi).len(), 6);
        let w = WeightData::new(&[2, 3]).unwrap();
        let b = bundles_between(&w, &w.zero(), &w.c());
        // 0 <= l <= c: 0, x1, x2, 2x2, c
        assert_eq!(b.len(), 5);
    }

    #[test]
    fn torsion_families() {
        let w = WeightData::new(&[2, 3]).unwrap();
        assert_eq!(exceptional_torsion(&w).len(), 2 + 6);
        assert_eq!(torsion_arcs(&w, 1).len(), 4 + 9);
        assert_eq!(ordinary_torsion(&["a".into(), "b".into()], 2).len(), 4);
    }
}
