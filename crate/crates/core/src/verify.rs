//! Self-checks reproducing the worked examples and structural properties.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::grading::WeightData;
use crate::ktheory::K0;
use crate::sheaves::poset::{wid_poset_window, PosetConfig, Scope};
use crate::sheaves::wide::{enumerate_wid_c, Resolved, DEFAULT_UNIVERSE_BOUND};
use crate::sheaves::window::{bundles_between, default_bounds, ordinary_torsion, torsion_arcs};
use crate::sheaves::{self, c_inv_from_torsion_exc, IndecSheaf, WideSubcat};
use crate::tube::algorithms::is_rigid;
use crate::tube::wide::left_perp;
use crate::tube::{
    bongartz_complete, brute_force_wide, enumerate_wide, extract_exc_sequence,
    is_exceptional_sequence, order_exc_sequence, perp_pair, wide_closure, Arc, TubeWideFingerprint,
};
use crate::Error;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: u32,
    pub title: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(id: u32, title: &str, res: Result<(bool, String)>) -> Check {
        let (pass, detail) = match res {
            Ok(x) => x,
            Err(e) => (false, format!("error: {e}")),
        };
        Check {
            id,
            title: title.to_string(),
            pass,
            detail,
        }
    }
}

/// Number of type-B noncrossing partitions of `{1..n, -1..-n}` by exhaustive search.
pub fn count_nc_b(n: usize) -> u64 {
    // positions 0..2n on a circle; position k < n is k+1, position n+k is -(k+1)
    let m = 2 * n;
    let neg = |p: usize| if p < n { p + n } else { p - n };
    let mut blocks = vec![0usize; m];
    let mut count = 0;
    fn rec(
        i: usize,
        used: usize,
        blocks: &mut Vec<usize>,
        check: &dyn Fn(&[usize]) -> bool,
        count: &mut u64,
    ) {
        if i == blocks.len() {
            if check(blocks) {
                *count += 1;
            }
            return;
        }
        for b in 0..=used {
            blocks[i] = b;
            rec(i + 1, used.max(b + 1), blocks, check, count);
        }
    }
    let check = |bl: &[usize]| -> bool {
        // symmetric: negation maps blocks to blocks
        for a in 0..m {
            for b in 0..m {
                if (bl[a] == bl[b]) != (bl[neg(a)] == bl[neg(b)]) {
                    return false;
                }
            }
        }
        // noncrossing in circular order
        for a in 0..m {
            for b in (a + 1)..m {
                for c in (b + 1)..m {
                    for d in (c + 1)..m {
                        if bl[a] == bl[c] && bl[b] == bl[d] && bl[a] != bl[b] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    };
    if m == 0 {
        return 1;
    }
    blocks[0] = 0;
    rec(1, 1, &mut blocks, &check, &mut count);
    count
}

fn c1_lattice_counts() -> Result<(bool, String)> {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 1..=5u32 {
        let got = enumerate_wide(n)?.len() as u64;
        let nc = count_nc_b(n as usize);
        ok &= got == nc;
        parts.push(format!("n={n}: {got}/{nc}"));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs <= 60.0;
    Ok((ok, format!("{} ({secs:.1}s)", parts.join(", "))))
}

fn c2_rank_two_list() -> Result<(bool, String)> {
    let gens: Vec<Vec<Arc>> = vec![
        vec![],
        vec![Arc::simple(2, 0)],
        vec![Arc::simple(2, 1)],
        vec![Arc::with_top(2, 0, 2)?],
        vec![Arc::with_top(2, 1, 2)?],
        vec![Arc::simple(2, 0), Arc::simple(2, 1)],
    ];
    let expected: BTreeSet<TubeWideFingerprint> = gens
        .into_iter()
        .map(|g| {
            let set: BTreeSet<Arc> = g.into_iter().collect();
            if set.is_empty() {
                Ok(TubeWideFingerprint::zero(2))
            } else {
                wide_closure(2, &set, 4)
            }
        })
        .collect::<Result<_>>()?;
    let got: BTreeSet<TubeWideFingerprint> = enumerate_wide(2)?.into_iter().collect();
    Ok((
        got == expected && expected.len() == 6,
        format!("{} subcategories", got.len()),
    ))
}

fn c3_perp_bijection() -> Result<(bool, String)> {
    let start = Instant::now();
    let mut ok = true;
    for n in 1..=4 {
        let all = enumerate_wide(n)?;
        let exc: BTreeSet<_> = all.iter().filter(|f| f.is_exc()).cloned().collect();
        let nexc: BTreeSet<_> = all.iter().filter(|f| !f.is_exc()).cloned().collect();
        let image: BTreeSet<_> = exc.iter().map(perp_pair).collect();
        ok &= image == nexc;
        ok &= all
            .iter()
            .all(|f| perp_pair(&perp_pair(f)) == *f && perp_pair(f).is_exc() != f.is_exc());
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((ok && secs <= 10.0, format!("n <= 4 ({secs:.2}s)")))
}

fn c4_brute_force() -> Result<(bool, String)> {
    let mut ok = true;
    for n in 1..=3 {
        ok &= brute_force_wide(n)? == enumerate_wide(n)?;
    }
    Ok((ok, "n <= 3".into()))
}

/// Bundles in the default window, arcs up to length `p_i`, ordinary torsion of lengths 1 and 2.
pub fn sample_objects(w: &WeightData) -> Vec<IndecSheaf> {
    let (lo, hi) = default_bounds(w);
    let mut v = bundles_between(w, &lo, &hi);
    v.extend(torsion_arcs(w, 1));
    v.extend(ordinary_torsion(&["a".to_string()], 2));
    v
}

fn c5_serre() -> Result<(bool, String)> {
    let mut pairs = 0;
    let mut bad = 0;
    for ws in [&[2u32][..], &[2, 3]] {
        let w = WeightData::new(ws)?;
        let objs = sample_objects(&w);
        for a in &objs {
            for b in &objs {
                pairs += 1;
                if sheaves::ext_dim(&w, a, b)? != sheaves::ext_dim_direct(&w, a, b)? {
                    bad += 1;
                }
            }
        }
    }
    Ok((
        bad == 0 && pairs >= 200,
        format!("{pairs} pairs, {bad} mismatches"),
    ))
}

fn c6_euler() -> Result<(bool, String)> {
    let mut pairs = 0;
    let mut bad = 0;
    for ws in [&[2u32][..], &[2, 3]] {
        let w = WeightData::new(ws)?;
        let k = K0::new(&w)?;
        let objs = sample_objects(&w);
        let classes: Vec<_> = objs.iter().map(|x| k.class_of(x)).collect::<Result<_>>()?;
        for (a, ca) in objs.iter().zip(&classes) {
            for (b, cb) in objs.iter().zip(&classes) {
                pairs += 1;
                let lhs = k.euler_form(ca, cb)?;
                let rhs = sheaves::hom_dim(&w, a, b)? as i64 - sheaves::ext_dim(&w, a, b)? as i64;
                if lhs != rhs {
                    bad += 1;
                }
            }
        }
    }
    Ok((
        bad == 0 && pairs >= 200,
        format!("{pairs} pairs, {bad} mismatches"),
    ))
}

fn c7_coxeter() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for ws in [&[1u32, 1][..], &[2], &[2, 3]] {
        let w = WeightData::new(ws)?;
        let k = K0::new(&w)?;
        let c = k.coxeter_element()?;
        let len = k.abs_length(&c)?;
        ok &= len == k.rank();
        parts.push(format!("{ws:?}: l(C)={len}, rank={}", k.rank()));
    }
    Ok((ok, parts.join("; ")))
}

fn c8_cox_iso() -> Result<(bool, String)> {
    let w = WeightData::new(&[2])?;
    let k = K0::new(&w)?;
    let mut cfg = PosetConfig::new((-2, 3));
    cfg.scope = Scope::Full;
    let p = wid_poset_window(&w, &cfg)?;
    let exc: Vec<usize> = (0..p.nodes.len())
        .filter(|&i| p.nodes[i].is_exc())
        .collect();
    let cox: Vec<_> = exc
        .iter()
        .map(|&i| k.cox_of(p.nodes[i].exc.as_ref().expect("exc")))
        .collect::<Result<_>>()?;
    let mut bad = 0;
    for (x, &i) in exc.iter().enumerate() {
        for (y, &j) in exc.iter().enumerate() {
            if p.order[i][j] != k.nc_leq(&cox[x], &cox[y])? {
                bad += 1;
            }
        }
    }
    let distinct: BTreeSet<_> = cox.iter().map(|c| c.to_ints()).collect();
    let injective = distinct.len() == cox.len();
    Ok((
        bad == 0 && injective,
        format!(
            "{} Exc nodes, {bad} order mismatches, injective={injective}",
            exc.len()
        ),
    ))
}

/// Cover relations of the type (2) window `-2..3`, written out family by family.
pub fn expected_covers_weight_two() -> BTreeSet<(String, String)> {
    let t0 = |n: i64| format!("T0({n:+})");
    let t1 = |n: i64| format!("T1({n:+})");
    let mut out = BTreeSet::new();
    for n in -2..=3 {
        out.insert((t0(n), t1(n)));
        out.insert((t0(n), t1(n - 1)));
        let t2 = format!("T2({:+})", n.rem_euclid(2));
        out.insert((t0(n), t2));
    }
    for n in -3..=3i64 {
        let s = if n.rem_euclid(2) == 0 {
            "<S_inf,1>"
        } else {
            "<S_inf,0>"
        };
        out.insert((s.to_string(), t1(n)));
    }
    out
}

fn c9_hasse() -> Result<(bool, String)> {
    let w = WeightData::new(&[2])?;
    let p = wid_poset_window(&w, &PosetConfig::new((-2, 3)))?;
    let got: BTreeSet<(String, String)> = p.cover_names().into_iter().collect();
    let want = expected_covers_weight_two();
    let missing = want.difference(&got).count();
    let extra = got.difference(&want).count();
    Ok((
        missing == 0 && extra == 0,
        format!("{} covers, {missing} missing, {extra} extra", got.len()),
    ))
}

fn c10_trivial_weights() -> Result<(bool, String)> {
    let w = WeightData::new(&[1, 1])?;
    let mut cfg = PosetConfig::new((-2, 3));
    cfg.scope = Scope::Full;
    cfg.universe = vec!["a".into(), "b".into()];
    let p = wid_poset_window(&w, &cfg)?;
    let n = p.nodes.len();
    let bundles: Vec<usize> = (0..n)
        .filter(|&i| p.nodes[i].name.starts_with("<O("))
        .collect();
    let zero = p.index_of("0");
    let whole = p.index_of("coh");
    let (Some(zero), Some(whole)) = (zero, whole) else {
        return Ok((false, "missing 0 or coh".into()));
    };
    let mut ok = bundles.len() == 6;
    for &i in &bundles {
        for j in 0..n {
            if j == i {
                continue;
            }
            let expect_below = j == zero;
            let expect_above = j == whole;
            ok &= p.order[j][i] == expect_below && p.order[i][j] == expect_above;
        }
    }
    // the c-invariant part is the lattice of finite subsets of {inf, 0, a, b} plus coh
    let tors: Vec<usize> = (0..n)
        .filter(|&i| !bundles.contains(&i) && i != whole)
        .collect();
    ok &= tors.len() == 16;
    let support = |i: usize| -> Result<BTreeSet<String>> {
        let mut s = BTreeSet::new();
        for x in [IndecSheaf::simple(&w, 0, 0), IndecSheaf::simple(&w, 1, 0)]
            .into_iter()
            .chain(ordinary_torsion(&cfg.universe, 1))
        {
            if p.nodes[i].contains(&w, &x)? {
                s.insert(x.display(&w).to_string());
            }
        }
        Ok(s)
    };
    for &i in &tors {
        for &j in &tors {
            ok &= p.order[i][j] == support(i)?.is_subset(&support(j)?);
        }
    }
    Ok((
        ok,
        format!("{} nodes, {} line bundle nodes", n, bundles.len()),
    ))
}

fn c11_pushout() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    let configs: Vec<(Vec<u32>, Scope, Vec<String>)> = vec![
        (vec![2], Scope::Core, vec![]),
        (vec![2], Scope::Full, vec!["0".into(), "1".into()]),
        (vec![1, 1], Scope::Full, vec!["a".into()]),
    ];
    for (ws, scope, universe) in configs {
        let w = WeightData::new(&ws)?;
        let mut cfg = PosetConfig::new((-2, 3));
        cfg.scope = scope;
        cfg.universe = universe;
        let p = wid_poset_window(&w, &cfg)?;
        ok &= p.certificate.ok();
        parts.push(format!("{ws:?}/{scope:?}: {} pairs tagged", p.tags.len()));
    }
    Ok((ok, parts.join("; ")))
}

fn c12_round_trip() -> Result<(bool, String)> {
    let w = WeightData::new(&[2])?;
    let universe: Vec<String> = vec!["0".into(), "1".into()];
    let mut probes = sample_objects(&w);
    probes.extend(ordinary_torsion(&universe, 1));
    let mut checked = 0;
    let mut ok = true;
    for sub in enumerate_wid_c(&w, &universe, DEFAULT_UNIVERSE_BOUND)? {
        if !sub.contains_bundle() {
            continue;
        }
        checked += 1;
        let fps: Vec<TubeWideFingerprint> = match &sub {
            WideSubcat::Whole => (0..w.declared())
                .map(|i| TubeWideFingerprint::whole(w.weight(i)))
                .collect(),
            WideSubcat::CInvariant(c) => c.points.clone(),
            _ => return Err(Error::Invariant("unexpected variant".into())),
        };
        let mut seqs = Vec::new();
        let mut torsion = Vec::new();
        for (i, fp) in fps.iter().enumerate() {
            let e = extract_exc_sequence(&perp_pair(fp))?;
            // left perp inside the tube regenerates <E^i>
            let lp = TubeWideFingerprint::from_arcs(fp.rank(), left_perp(fp.rank(), fp.arcs()));
            let gen: BTreeSet<Arc> = e.iter().copied().collect();
            let closure = if gen.is_empty() {
                TubeWideFingerprint::zero(fp.rank())
            } else {
                wide_closure(fp.rank(), &gen, 2 * fp.rank())?
            };
            ok &= lp == closure;
            torsion.extend(
                e.iter()
                    .map(|&arc| IndecSheaf::TorsionArc { point: i, arc }),
            );
            seqs.push(e);
        }
        ok &= c_inv_from_torsion_exc(&w, &seqs)? == sub;
        // right perp of the torsion data against membership through exceptional generators
        let r = Resolved::new(&w, &sub)?;
        let gens = r
            .exc_generators(&w)?
            .ok_or_else(|| Error::Invariant("no exceptional generators".into()))?;
        let via_gens = Resolved::new(&w, &WideSubcat::ExcGenerated(gens))?;
        for x in &probes {
            ok &= sheaves::perp_membership(&w, x, &torsion)? == via_gens.contains(&w, x)?;
        }
    }
    Ok((
        ok && checked == 3,
        format!("{checked} subcategories with bundles"),
    ))
}

fn c13_bongartz() -> Result<(bool, String)> {
    let start = Instant::now();
    let mut cases = 0;
    let mut ok = true;
    for n in 1..=4u32 {
        let exc = Arc::all(n, n - 1);
        let mut rigid: Vec<BTreeSet<Arc>> = Vec::new();
        for (i, a) in exc.iter().enumerate() {
            rigid.push([*a].into_iter().collect());
            for b in &exc[i + 1..] {
                let s: BTreeSet<Arc> = [*a, *b].into_iter().collect();
                if is_rigid(&s)? {
                    rigid.push(s);
                }
            }
        }
        for a in &rigid {
            for b in &rigid {
                match bongartz_complete(a, b) {
                    Ok(t) => {
                        cases += 1;
                        ok &= is_rigid(&t)?;
                        let seq = order_exc_sequence(&t)?;
                        ok &= is_exceptional_sequence(&seq)?;
                    }
                    Err(Error::Hypothesis(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((ok && secs <= 30.0, format!("{cases} pairs ({secs:.1}s)")))
}

/// Runs every check.
pub fn run_all() -> Vec<Check> {
    vec![
        Check::new(1, "tube lattice counts", c1_lattice_counts()),
        Check::new(2, "rank-2 tube list", c2_rank_two_list()),
        Check::new(3, "Exc/NExc perp bijection", c3_perp_bijection()),
        Check::new(4, "brute-force wideness", c4_brute_force()),
        Check::new(5, "Serre duality double computation", c5_serre()),
        Check::new(6, "Euler form consistency", c6_euler()),
        Check::new(7, "Coxeter identity", c7_coxeter()),
        Check::new(8, "cox order isomorphism", c8_cox_iso()),
        Check::new(9, "type (2) Hasse diagram", c9_hasse()),
        Check::new(10, "type (1,1) poset", c10_trivial_weights()),
        Check::new(11, "pushout certificate", c11_pushout()),
        Check::new(12, "c-invariant round trip", c12_round_trip()),
        Check::new(13, "Bongartz completion and ordering", c13_bongartz()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nc_b_small() {
        assert_eq!(count_nc_b(1), 2);
        assert_eq!(count_nc_b(2), 6);
        assert_eq!(count_nc_b(3), 20);
    }
}
