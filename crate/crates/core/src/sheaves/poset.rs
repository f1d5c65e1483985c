//! The poset of wide subcategories over a window of line bundles.
//!
//! Exceptional nodes are generated by exceptional sequences whose bundles are
//! `O(k x_1)` with `k` in the window; `c`-invariant nodes come from
//! [`enumerate_wid_c`]. Nodes are identified by membership on a probe family and
//! confirmed by mutual inclusion.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::sheaf::{is_exceptional, orthogonal};
use super::wide::{
    enumerate_wid_c, k0_rank, leq, Resolved, WideSubcatJson, DEFAULT_UNIVERSE_BOUND, GENERIC_POINT,
};
use super::window::{
    bundles_along_x1, bundles_between, exceptional_torsion, ordinary_torsion, torsion_arcs,
};
use super::{IndecSheaf, WideSubcat};
use crate::error::{Error, Result};
use crate::grading::WeightData;
use crate::ktheory::K0;
use crate::linalg::{q, Matrix};

/// Which nodes to report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    /// Exceptional subcategories other than `0` and `coh`.
    Core,
    /// Every node: both halves, `0` and `coh`.
    Full,
}

#[derive(Clone, Debug)]
pub struct PosetConfig {
    /// Window `[a, b]` for bundles `O(k x_1)`.
    pub window: (i64, i64),
    pub universe: Vec<String>,
    pub scope: Scope,
    /// Largest number of exceptional-sequence extensions explored.
    pub max_candidates: usize,
}

impl PosetConfig {
    pub fn new(window: (i64, i64)) -> Self {
        PosetConfig {
            window,
            universe: Vec::new(),
            scope: Scope::Core,
            max_candidates: 200_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Node {
    pub name: String,
    /// Rank of the class lattice of the subcategory.
    pub level: usize,
    /// A generating exceptional sequence, for exceptional nodes.
    pub exc: Option<Vec<IndecSheaf>>,
    /// The `c`-invariant description, for `c`-invariant nodes.
    pub cinv: Option<WideSubcat>,
    exc_res: Option<Resolved>,
    cinv_res: Option<Resolved>,
    sort_key: (usize, usize, i64, String),
}

impl Node {
    pub fn is_exc(&self) -> bool {
        self.exc.is_some()
    }

    pub fn is_cinv(&self) -> bool {
        self.cinv.is_some()
    }

    /// Whether `x` lies in the subcategory of this node.
    pub fn contains(&self, w: &WeightData, x: &IndecSheaf) -> Result<bool> {
        self.target().contains(w, x)
    }

    /// Best description for membership queries: stalks when available.
    fn target(&self) -> &Resolved {
        self.cinv_res
            .as_ref()
            .or(self.exc_res.as_ref())
            .expect("node has a description")
    }

    /// Best description as a source: exceptional generators when available.
    fn source(&self) -> &Resolved {
        self.exc_res
            .as_ref()
            .or(self.cinv_res.as_ref())
            .expect("node has a description")
    }

    fn subcat(&self) -> WideSubcat {
        match (&self.exc, &self.cinv) {
            (_, Some(c)) => c.clone(),
            (Some(e), None) => WideSubcat::ExcGenerated(e.clone()).canonical(),
            (None, None) => unreachable!("node has a description"),
        }
    }
}

/// Which halves witness an ordered pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrdTag {
    pub lower: String,
    pub upper: String,
    pub exc: bool,
    pub c_inv: bool,
}

/// Evidence that the square `Exc cap Wid^c -> Exc, Wid^c -> Wid` is a pushout.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// Every node is exceptional or `c`-invariant.
    pub union_covers_nodes: bool,
    /// Every ordered pair is ordered inside one of the halves.
    pub untagged_pairs: Vec<(String, String)>,
    /// Both halves are full subposets.
    pub halves_full: bool,
    /// The order generated by the two halves is the order of the whole poset.
    pub pushout: bool,
}

impl Certificate {
    pub fn ok(&self) -> bool {
        self.union_covers_nodes
            && self.untagged_pairs.is_empty()
            && self.halves_full
            && self.pushout
    }
}

#[derive(Clone, Debug)]
pub struct Poset {
    pub nodes: Vec<Node>,
    /// `order[i][j]` iff node `i <= node j`.
    pub order: Vec<Vec<bool>>,
    pub covers: Vec<(usize, usize)>,
    pub tags: Vec<OrdTag>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeJson {
    pub name: String,
    pub level: usize,
    pub exc: bool,
    pub c_invariant: bool,
    pub generators: Option<Vec<String>>,
    pub subcat: WideSubcatJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetJson {
    pub nodes: Vec<NodeJson>,
    pub covers: Vec<(String, String)>,
    pub ord_tags: Vec<OrdTag>,
    pub certificate: Certificate,
}

struct Builder<'a> {
    w: &'a WeightData,
    probes: Vec<IndecSheaf>,
    nodes: Vec<Node>,
    by_sig: HashMap<Vec<bool>, Vec<usize>>,
}

impl<'a> Builder<'a> {
    fn signature(&self, r: &Resolved) -> Result<Vec<bool>> {
        self.probes.iter().map(|x| r.contains(self.w, x)).collect()
    }

    fn same(&self, a: &Resolved, b: &Resolved) -> Result<bool> {
        Ok(leq(self.w, a, b)? && leq(self.w, b, a)?)
    }

    /// Index of an existing node equal to `r`, if any.
    fn find(&self, sig: &[bool], r: &Resolved) -> Result<Option<usize>> {
        if let Some(ids) = self.by_sig.get(sig) {
            for &i in ids {
                if self.same(r, self.nodes[i].source())? {
                    return Ok(Some(i));
                }
            }
        }
        Ok(None)
    }

    fn push(&mut self, sig: Vec<bool>, node: Node) -> usize {
        let i = self.nodes.len();
        self.nodes.push(node);
        self.by_sig.entry(sig).or_default().push(i);
        i
    }

    fn new_node(
        exc: Option<Vec<IndecSheaf>>,
        cinv: Option<WideSubcat>,
        exc_res: Option<Resolved>,
        cinv_res: Option<Resolved>,
    ) -> Node {
        Node {
            name: String::new(),
            level: 0,
            exc,
            cinv,
            exc_res,
            cinv_res,
            sort_key: (0, 0, 0, String::new()),
        }
    }
}

/// Builds the poset of wide subcategories for the configured window.
pub fn wid_poset_window(w: &WeightData, cfg: &PosetConfig) -> Result<Poset> {
    let k0 = K0::new(w)?;
    let (a, b) = cfg.window;
    if a > b {
        return Err(Error::Parse(format!("empty window {a}..{b}")));
    }
    let m = k0_rank(w);

    let mut probes = bundles_between(
        w,
        &(w.x(0).scale(a) - w.c().scale(2)),
        &(w.x(0).scale(b) + w.c().scale(2)),
    );
    probes.extend(torsion_arcs(w, 1));
    probes.extend(ordinary_torsion(&cfg.universe, 1));
    probes.push(IndecSheaf::ordinary(GENERIC_POINT, 1));
    let mut bld = Builder {
        w,
        probes,
        nodes: Vec::new(),
        by_sig: HashMap::new(),
    };

    // exceptional half, level by level
    let mut gen_probes = bundles_along_x1(w, a, b);
    gen_probes.extend(exceptional_torsion(w));
    let mut exc_gen = Vec::new();
    for x in &gen_probes {
        if is_exceptional(w, x)? {
            exc_gen.push(x.clone());
        }
    }
    let zero = Resolved::new(w, &WideSubcat::Zero)?;
    let sig = bld.signature(&zero)?;
    bld.push(
        sig,
        Builder::new_node(Some(Vec::new()), None, Some(zero), None),
    );
    let mut level: Vec<usize> = vec![0];
    let mut explored = 0usize;
    for _ in 0..m {
        let mut next = Vec::new();
        for &i in &level {
            let seq = bld.nodes[i].exc.clone().expect("exceptional node");
            for x in &exc_gen {
                let mut ok = true;
                for s in &seq {
                    if !orthogonal(w, x, s)? {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                explored += 1;
                if explored > cfg.max_candidates {
                    return Err(Error::BoundExceeded(format!(
                        "more than {} candidate sequences",
                        cfg.max_candidates
                    )));
                }
                let mut ext = seq.clone();
                ext.push(x.clone());
                let r = Resolved::new(w, &WideSubcat::ExcGenerated(ext.clone()))?;
                let sig = bld.signature(&r)?;
                if bld.find(&sig, &r)?.is_none() {
                    let j = bld.push(sig, Builder::new_node(Some(ext), None, Some(r), None));
                    next.push(j);
                }
            }
        }
        level = next;
    }

    // c-invariant half
    for sub in enumerate_wid_c(w, &cfg.universe, DEFAULT_UNIVERSE_BOUND)? {
        let r = Resolved::new(w, &sub)?;
        let sig = bld.signature(&r)?;
        match bld.find(&sig, &r)? {
            Some(i) => {
                let n = &mut bld.nodes[i];
                n.cinv = Some(sub);
                n.cinv_res = Some(r);
            }
            None => {
                let exc = r.exc_generators(w)?;
                let exc_res = match &exc {
                    Some(e) => Some(Resolved::new(w, &WideSubcat::ExcGenerated(e.clone()))?),
                    None => None,
                };
                bld.push(sig, Builder::new_node(exc, Some(sub), exc_res, Some(r)));
            }
        }
    }

    let mut nodes = bld.nodes;
    if cfg.scope == Scope::Core {
        nodes.retain(|n| n.is_exc() && !matches!(n.subcat(), WideSubcat::Zero | WideSubcat::Whole));
    }
    for n in nodes.iter_mut() {
        n.level = node_level(&k0, n)?;
    }
    name_nodes(w, &mut nodes, cfg)?;
    nodes.sort_by(|x, y| x.sort_key.cmp(&y.sort_key));

    let n = nodes.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let rel: Vec<(bool, bool, bool)> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<(bool, bool, bool)> {
            let (x, y) = (&nodes[i], &nodes[j]);
            let full = i == j || leq(w, x.source(), y.target())?;
            let exc = match (&x.exc_res, &y.exc_res) {
                (Some(p), Some(q)) => i == j || leq(w, p, q)?,
                _ => false,
            };
            let cinv = match (&x.cinv_res, &y.cinv_res) {
                (Some(p), Some(q)) => i == j || leq(w, p, q)?,
                _ => false,
            };
            Ok((full, exc, cinv))
        })
        .collect::<Result<_>>()?;
    let mut order = vec![vec![false; n]; n];
    let mut exc_ord = vec![vec![false; n]; n];
    let mut cinv_ord = vec![vec![false; n]; n];
    for (&(i, j), &(f, e, c)) in pairs.iter().zip(&rel) {
        order[i][j] = f;
        exc_ord[i][j] = e;
        cinv_ord[i][j] = c;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if order[i][j] && order[j][i] {
                return Err(Error::Invariant(format!(
                    "nodes {} and {} coincide",
                    nodes[i].name, nodes[j].name
                )));
            }
        }
    }
    let covers = cover_relations(&order);

    let mut tags = Vec::new();
    let mut cert = Certificate {
        union_covers_nodes: nodes.iter().all(|x| x.is_exc() || x.is_cinv()),
        halves_full: true,
        ..Default::default()
    };
    for i in 0..n {
        for j in 0..n {
            if (exc_ord[i][j] || cinv_ord[i][j]) && !order[i][j] {
                cert.halves_full = false;
            }
            let both_exc = nodes[i].is_exc() && nodes[j].is_exc();
            let both_cinv = nodes[i].is_cinv() && nodes[j].is_cinv();
            if (both_exc && exc_ord[i][j] != order[i][j])
                || (both_cinv && cinv_ord[i][j] != order[i][j])
            {
                cert.halves_full = false;
            }
            if !order[i][j] || i == j {
                continue;
            }
            let tag = OrdTag {
                lower: nodes[i].name.clone(),
                upper: nodes[j].name.clone(),
                exc: exc_ord[i][j],
                c_inv: cinv_ord[i][j],
            };
            if !tag.exc && !tag.c_inv {
                cert.untagged_pairs
                    .push((tag.lower.clone(), tag.upper.clone()));
            }
            tags.push(tag);
        }
    }
    let union: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| exc_ord[i][j] || cinv_ord[i][j]).collect())
        .collect();
    cert.pushout = transitive_closure(&union) == order;

    Ok(Poset {
        nodes,
        order,
        covers,
        tags,
        certificate: cert,
    })
}

fn node_level(k0: &K0, n: &Node) -> Result<usize> {
    if let Some(e) = &n.exc {
        return Ok(e.len());
    }
    let gens: Vec<IndecSheaf> = match n.cinv.as_ref() {
        Some(WideSubcat::CInvariant(c)) => {
            let mut g: Vec<IndecSheaf> = Vec::new();
            for (i, fp) in c.points.iter().enumerate() {
                g.extend(
                    fp.arcs()
                        .iter()
                        .map(|&arc| IndecSheaf::TorsionArc { point: i, arc }),
                );
            }
            g.extend(
                c.ordinary
                    .iter()
                    .map(|p| IndecSheaf::ordinary(p.clone(), 1)),
            );
            g
        }
        _ => return Err(Error::Invariant("node without generators".into())),
    };
    let cols: Vec<Vec<_>> = gens
        .iter()
        .map(|g| k0.class_of(g).map(|v| v.into_iter().map(q).collect()))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(k0.rank(), &cols).rank())
}

/// Strict covers of a reflexive order.
pub fn cover_relations(order: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = order.len();
    let lt = |i: usize, j: usize| i != j && order[i][j] && !order[j][i];
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn transitive_closure(rel: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = rel.len();
    let mut r = rel.to_vec();
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

fn bundle_k(w: &WeightData, k: i64) -> IndecSheaf {
    IndecSheaf::LineBundle(w.x(0).scale(k))
}

/// Names follow the families `T0(n)`, `T1(n)`, `T2(n)` of bundles `O(n x_1)` and the
/// simples `<S_label,j>`; anything else is named by its description.
fn name_nodes(w: &WeightData, nodes: &mut [Node], cfg: &PosetConfig) -> Result<()> {
    let (a, b) = cfg.window;
    let span = (a - 6)..=(b + 6);
    let single_point = w.declared_weights() == [2];
    let trivial = w.weighted_point_count() == 0;
    let whole_level = k0_rank(w);
    for n in nodes.iter_mut() {
        let sub = n.subcat();
        let r = n.target();
        let has = |k: i64| r.contains(w, &bundle_k(w, k));
        let mut key = None;
        match &sub {
            WideSubcat::Zero => key = Some((0, 0, "0".to_string())),
            WideSubcat::Whole => key = Some((9, 0, "coh".to_string())),
            _ => {}
        }
        if key.is_none() && n.is_exc() && (single_point || trivial) {
            let mut found = Vec::new();
            for k in span.clone() {
                if has(k)? {
                    found.push(k);
                }
            }
            let seq = n.exc.as_ref().expect("exceptional");
            key = match (seq.len(), found.as_slice()) {
                (1, [k]) if trivial => Some((1, *k, format!("<O({k:+})>"))),
                (1, [k]) => Some((1, *k, format!("T0({k:+})"))),
                (1, []) => match &seq[0] {
                    IndecSheaf::TorsionArc { point, arc } if arc.len() == 1 => Some((
                        4,
                        arc.socle() as i64,
                        format!("<S_{},{}>", w.label(*point), arc.socle()),
                    )),
                    _ => None,
                },
                (2, fs) if single_point && fs.len() >= 2 => {
                    if fs.windows(2).all(|p| p[1] - p[0] == 1) && fs.len() == 2 {
                        Some((2, fs[0], format!("T1({:+})", fs[0])))
                    } else if fs.windows(2).all(|p| p[1] - p[0] == 2) {
                        let r = fs[0].rem_euclid(2);
                        Some((3, r, format!("T2({r:+})")))
                    } else {
                        None
                    }
                }
                _ => None,
            };
        }
        let (family, num, name) = key.unwrap_or_else(|| (8, 0, sub.display(w).to_string()));
        let level = if matches!(sub, WideSubcat::Whole) {
            whole_level
        } else {
            n.level
        };
        n.name = name.clone();
        n.sort_key = (level, family, num, name);
    }
    // keep names unique
    let mut seen: HashMap<String, usize> = HashMap::new();
    for n in nodes.iter_mut() {
        let c = seen.entry(n.name.clone()).or_insert(0);
        *c += 1;
        if *c > 1 {
            n.name = format!("{}#{}", n.name, c);
        }
    }
    Ok(())
}

impl Poset {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.name == name)
    }

    pub fn cover_names(&self) -> Vec<(String, String)> {
        self.covers
            .iter()
            .map(|&(i, j)| (self.nodes[i].name.clone(), self.nodes[j].name.clone()))
            .collect()
    }

    /// Hasse diagram: edges point from the smaller to the larger node, one rank group per level.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph wid {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        let mut levels: Vec<usize> = self.nodes.iter().map(|n| n.sort_key.0).collect();
        levels.dedup();
        for l in levels {
            let names: Vec<String> = self
                .nodes
                .iter()
                .filter(|n| n.sort_key.0 == l)
                .map(|n| format!("\"{}\";", n.name))
                .collect();
            let _ = writeln!(s, "  {{ rank=same; {} }}", names.join(" "));
        }
        for (x, y) in self.cover_names() {
            let _ = writeln!(s, "  \"{x}\" -> \"{y}\";");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, w: &WeightData) -> PosetJson {
        PosetJson {
            nodes: self
                .nodes
                .iter()
                .map(|n| NodeJson {
                    name: n.name.clone(),
                    level: n.level,
                    exc: n.is_exc(),
                    c_invariant: n.is_cinv(),
                    generators: n
                        .exc
                        .as_ref()
                        .map(|e| e.iter().map(|x| x.display(w).to_string()).collect()),
                    subcat: n.subcat().to_json(w),
                })
                .collect(),
            covers: self.cover_names(),
            ord_tags: self.tags.clone(),
            certificate: self.certificate.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covers_of_chain_and_diamond() {
        let t = true;
        let f = false;
        let chain = vec![vec![t, t, t], vec![f, t, t], vec![f, f, t]];
        assert_eq!(cover_relations(&chain), vec![(0, 1), (1, 2)]);
        let diamond = vec![
            vec![t, t, t, t],
            vec![f, t, f, t],
            vec![f, f, t, t],
            vec![f, f, f, t],
        ];
        assert_eq!(
            cover_relations(&diamond),
            vec![(0, 1), (0, 2), (1, 3), (2, 3)]
        );
        let rel = vec![vec![t, t, f], vec![f, t, t], vec![f, f, t]];
        assert_eq!(transitive_closure(&rel), chain);
    }

    #[test]
    fn weights_two_core_nodes() {
        let w = WeightData::new(&[2]).unwrap();
        let p = wid_poset_window(&w, &PosetConfig::new((-2, 3))).unwrap();
        let names: Vec<&str> = p.nodes.iter().map(|n| n.name.as_str()).collect();
        assert_eq!(names.len(), 6 + 7 + 2 + 2, "{names:?}");
        for x in [
            "T0(-2)",
            "T0(+3)",
            "T1(-3)",
            "T1(+3)",
            "T2(+0)",
            "T2(+1)",
            "<S_inf,0>",
            "<S_inf,1>",
        ] {
            assert!(names.contains(&x), "{x} missing from {names:?}");
        }
        assert!(p.certificate.ok(), "{:?}", p.certificate);
        assert_eq!(p.covers.len(), 12 + 3 + 4 + 6);
    }

    #[test]
    fn trivial_weights_exc_nodes_incomparable() {
        let w = WeightData::new(&[1, 1]).unwrap();
        let mut cfg = PosetConfig::new((-1, 2));
        cfg.scope = Scope::Full;
        cfg.universe = vec!["a".into()];
        let p = wid_poset_window(&w, &cfg).unwrap();
        let bundles: Vec<usize> = (0..p.nodes.len())
            .filter(|&i| p.nodes[i].name.starts_with("<O("))
            .collect();
        assert_eq!(bundles.len(), 4);
        for &i in &bundles {
            for &j in &bundles {
                assert_eq!(p.order[i][j], i == j);
            }
        }
        assert!(p.certificate.ok());
    }
}
