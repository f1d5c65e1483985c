use widecat::grading::{LineType, WeightData};
use widecat::sheaves::poset::{wid_poset_window, PosetConfig, Scope};
use widecat::sheaves::wide::{is_c_invariant, membership, WideSubcatJson};
use widecat::sheaves::{self, k0_rank, IndecSheaf, WideSubcat};
use widecat::Error;

fn w2() -> WeightData {
    WeightData::new(&[2]).unwrap()
}

fn o(w: &WeightData, k: i64) -> IndecSheaf {
    IndecSheaf::line_bundle(w.x(0).scale(k))
}

#[test]
fn classification_by_degree_of_omega() {
    let inv = WeightData::parse("2,3,5").unwrap().line_invariants();
    assert_eq!(inv.kind, LineType::Domestic);
    assert_eq!(inv.omega.degree(), -1);
    assert_eq!(
        WeightData::parse("2,3,6").unwrap().line_invariants().kind,
        LineType::Tubular
    );
    assert_eq!(
        WeightData::parse("2,3,7").unwrap().line_invariants().kind,
        LineType::Wild
    );
    assert_eq!(
        WeightData::parse("3,3,3").unwrap().line_invariants().kind,
        LineType::Tubular
    );
}

#[test]
fn grothendieck_ranks() {
    assert_eq!(k0_rank(&WeightData::new(&[]).unwrap()), 2);
    assert_eq!(k0_rank(&w2()), 3);
    assert_eq!(k0_rank(&WeightData::new(&[2, 3]).unwrap()), 5);
    assert_eq!(k0_rank(&WeightData::new(&[2, 3, 5]).unwrap()), 9);
}

#[test]
fn line_bundle_dimensions() {
    let w = w2();
    let c = IndecSheaf::line_bundle(w.c());
    assert_eq!(sheaves::hom_dim(&w, &o(&w, 0), &o(&w, 1)).unwrap(), 1);
    assert_eq!(sheaves::hom_dim(&w, &o(&w, 0), &c).unwrap(), 2);
    assert_eq!(sheaves::hom_dim(&w, &o(&w, 1), &o(&w, 0)).unwrap(), 0);
    // omega = x1 - 2c, so Ext(O(kc), O) = dim S(x1 - (2 - k)c)
    assert_eq!(sheaves::ext_dim(&w, &c, &o(&w, 0)).unwrap(), 0);
    assert_eq!(
        sheaves::ext_dim(&w, &IndecSheaf::line_bundle(w.c().scale(2)), &o(&w, 0)).unwrap(),
        1
    );
}

#[test]
fn torsion_dimensions() {
    let w = w2();
    let t = IndecSheaf::ordinary("a", 3);
    assert_eq!(sheaves::hom_dim(&w, &o(&w, 5), &t).unwrap(), 3);
    assert_eq!(sheaves::hom_dim(&w, &t, &o(&w, 5)).unwrap(), 0);
    assert_eq!(sheaves::ext_dim(&w, &t, &o(&w, 5)).unwrap(), 3);
    let s0 = IndecSheaf::simple(&w, 0, 0);
    let s1 = IndecSheaf::simple(&w, 0, 1);
    assert_eq!(sheaves::hom_dim(&w, &o(&w, 0), &s0).unwrap(), 1);
    assert_eq!(sheaves::hom_dim(&w, &o(&w, 0), &s1).unwrap(), 0);
    assert_eq!(sheaves::hom_dim(&w, &o(&w, 3), &s1).unwrap(), 1);
    // S(omega) = tau S
    assert_eq!(s1.shift(&w.omega()), s0);
}

#[test]
fn exceptional_objects_and_sequences() {
    let w = w2();
    assert!(sheaves::is_exceptional(&w, &o(&w, 7)).unwrap());
    assert!(sheaves::is_exceptional(&w, &IndecSheaf::simple(&w, 0, 1)).unwrap());
    assert!(!sheaves::is_exceptional(&w, &IndecSheaf::torsion(&w, 0, 0, 2).unwrap()).unwrap());
    assert!(!sheaves::is_exceptional(&w, &IndecSheaf::ordinary("a", 1)).unwrap());
    assert!(sheaves::is_exceptional_sequence(&w, &[o(&w, 0), o(&w, 1)]).unwrap());
    assert!(!sheaves::is_exceptional_sequence(&w, &[o(&w, 1), o(&w, 0)]).unwrap());
}

#[test]
fn text_and_json_round_trips() {
    let w = WeightData::new(&[2, 3]).unwrap();
    for text in ["O", "O(1,2;-1)", "S(inf,1)", "S(0,2,2)", "T(p)", "T(p,3)"] {
        let x = IndecSheaf::parse(&w, text).unwrap();
        let again = IndecSheaf::parse(&w, &x.display(&w).to_string()).unwrap();
        assert_eq!(again, x);
        assert_eq!(IndecSheaf::from_json(&w, &x.to_json(&w)).unwrap(), x);
    }
    assert!(matches!(
        IndecSheaf::parse(&w, "S(7,0)"),
        Err(Error::Parse(_))
    ));
}

#[test]
fn wide_subcategory_json_round_trip() {
    let w = w2();
    let sub = WideSubcat::ExcGenerated(vec![o(&w, 0), o(&w, 1)]);
    let j: WideSubcatJson = sub.to_json(&w);
    let text = serde_json::to_string(&j).unwrap();
    let back: WideSubcatJson = serde_json::from_str(&text).unwrap();
    assert_eq!(WideSubcat::from_json(&w, &back).unwrap(), sub);
}

#[test]
fn membership_in_small_subcategories() {
    let w = w2();
    let t = WideSubcat::ExcGenerated(vec![IndecSheaf::simple(&w, 0, 0)]);
    assert!(membership(&w, &t, &IndecSheaf::simple(&w, 0, 0)).unwrap());
    assert!(!membership(&w, &t, &IndecSheaf::simple(&w, 0, 1)).unwrap());
    assert!(!membership(&w, &t, &o(&w, 0)).unwrap());
    let torsion_free = WideSubcat::ExcGenerated(vec![o(&w, 0)]);
    assert!(!is_c_invariant(&w, &torsion_free).unwrap());
    assert!(is_c_invariant(&w, &WideSubcat::Whole).unwrap());
}

#[test]
fn poset_documents_are_deterministic() {
    let w = w2();
    let cfg = PosetConfig::new((-2, 3));
    let a = wid_poset_window(&w, &cfg).unwrap();
    let b = wid_poset_window(&w, &cfg).unwrap();
    assert_eq!(a.to_dot(), b.to_dot());
    let ja = serde_json::to_string(&a.to_json(&w)).unwrap();
    assert_eq!(ja, serde_json::to_string(&b.to_json(&w)).unwrap());
    assert_eq!(a.nodes.len(), 17);
}

#[test]
fn full_scope_adds_the_bounds() {
    let w = w2();
    let mut cfg = PosetConfig::new((0, 1));
    cfg.scope = Scope::Full;
    let p = wid_poset_window(&w, &cfg).unwrap();
    let zero = p.index_of("0").unwrap();
    let whole = p.index_of("coh").unwrap();
    assert!((0..p.nodes.len()).all(|i| p.order[zero][i] && p.order[i][whole]));
    assert!(p.certificate.ok());
}

#[test]
fn bundles_need_at_most_two_weighted_points() {
    let w = WeightData::new(&[2, 2, 2]).unwrap();
    let s = IndecSheaf::simple(&w, 2, 0);
    assert_eq!(
        sheaves::ext_dim(&w, &s, &IndecSheaf::simple(&w, 2, 1)).unwrap(),
        1
    );
    let o = IndecSheaf::line_bundle(w.zero());
    assert!(matches!(
        sheaves::hom_dim(&w, &o, &s),
        Err(Error::Unsupported(_))
    ));
}
