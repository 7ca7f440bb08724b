mod common;

use std::collections::BTreeMap;

use mixint::forbidden::{complete_k, ids_up_to};
use mixint::graph::Graph;
use mixint::{find_forbidden, generate, generate_h, recognize_interval, validate_certificate, ForbiddenCertificate, ForbiddenId};

fn small_ids() -> Vec<ForbiddenId> {
    let mut ids = vec![ForbiddenId::K14, ForbiddenId::K23Star, ForbiddenId::K24Star, ForbiddenId::A, ForbiddenId::B];
    for k in 1..=3 {
        ids.extend([ForbiddenId::Fam1(k), ForbiddenId::Fam2(k), ForbiddenId::Fam3(k), ForbiddenId::Fam4(k)]);
    }
    for k in 1..=2 {
        for n in 1..=2 {
            ids.push(ForbiddenId::Fam5(k, n));
        }
    }
    ids
}

/// Fam5(k, n) and Fam5(n, k) are isomorphic; search meets the smaller k first.
fn first_isomorph(id: ForbiddenId) -> ForbiddenId {
    match id {
        ForbiddenId::Fam5(k, n) if n < k => ForbiddenId::Fam5(n, k),
        other => other,
    }
}

#[test]
fn fam5_is_symmetric() {
    let a = generate(ForbiddenId::Fam5(1, 2)).unwrap();
    let b = generate(ForbiddenId::Fam5(2, 1)).unwrap();
    assert!(mixint::is_induced_isomorphic(&a, &b).is_some());
}

#[test]
fn template_sizes_and_edges() {
    let expect = [
        (ForbiddenId::K14, 5, 4),
        (ForbiddenId::K23Star, 5, 7),
        (ForbiddenId::K24Star, 6, 7),
        (ForbiddenId::A, 6, 8),
        (ForbiddenId::B, 6, 8),
    ];
    for (id, n, m) in expect {
        let g = generate(id).unwrap();
        assert_eq!((g.n(), g.edge_count()), (n, m), "{id}");
    }
    for k in 1..=5 {
        let h = generate_h(k).unwrap();
        assert_eq!((h.n(), h.edge_count()), (2 * k + 3, 3 * k + 2));
        assert!(h.is_connected());
    }
    let f3 = generate(ForbiddenId::Fam3(2)).unwrap();
    assert_eq!(f3.n(), 9);
    let f5 = generate(ForbiddenId::Fam5(1, 2)).unwrap();
    assert_eq!(f5.n(), 12);
    for l in ["a_2'", "d_2'", "b_0'", "v'", "c_1"] {
        assert!(f5.index_of(l).is_some(), "{l}");
    }
    assert!(generate(ForbiddenId::Fam2(0)).is_err());
    assert!(generate_h(0).is_err());
}

#[test]
fn every_member_is_an_interval_graph() {
    for id in small_ids() {
        let g = generate(id).unwrap();
        assert!(recognize_interval(&g).is_some(), "{id}");
        assert!(g.is_connected(), "{id}");
    }
}

#[test]
fn h_twins_are_the_last_pair() {
    for k in 1..=5 {
        let h = generate_h(k).unwrap();
        let red = h.reduce_twins();
        let classes = red.nontrivial_classes(&h);
        let want = vec![vec![format!("a_{k}"), format!("c_{k}")]];
        assert_eq!(classes, want, "H_{k}");
    }
}

#[test]
fn ids_round_trip_through_strings() {
    for id in ids_up_to(30, 4) {
        let s = id.to_string();
        assert_eq!(s.parse::<ForbiddenId>().unwrap(), id);
    }
    assert_eq!(ForbiddenId::Fam5(1, 2).to_string(), "Fam5(1,2)");
    assert_eq!("K23star".parse::<ForbiddenId>().unwrap(), ForbiddenId::K23Star);
    for bad in ["Fam1", "Fam1(0)", "Fam5(1)", "K14(2)x", "Q"] {
        assert!(bad.parse::<ForbiddenId>().is_err(), "{bad}");
    }
}

#[test]
fn search_order_is_by_size() {
    let ids = ids_up_to(10, 2);
    assert_eq!(ids[0], ForbiddenId::K14);
    assert!(ids.windows(2).all(|w| w[0].search_key() <= w[1].search_key()));
    assert!(ids.iter().all(|id| id.size() <= 10));
    assert!(ids.contains(&ForbiddenId::Fam5(1, 1)));
    assert!(!ids.contains(&ForbiddenId::Fam5(1, 2)));
}

#[test]
fn members_are_found() {
    for id in small_ids() {
        let g = generate(id).unwrap();
        let c = find_forbidden(&g, complete_k(&g)).unwrap_or_else(|| panic!("{id} not found"));
        assert!(validate_certificate(&g, &c), "{id}");
        assert_eq!(c.id.size(), g.n(), "{id} found as {}", c.id);
        // Inside its twin-free host the same member is reported.
        let host = common::twin_free_host(id);
        let hc = find_forbidden(&host, complete_k(&host)).unwrap();
        assert_eq!(hc.id, first_isomorph(id));
        assert!(validate_certificate(&host, &hc));
    }
}

#[test]
fn h_graphs_and_the_claw_are_clean() {
    for k in 1..=4 {
        let h = generate_h(k).unwrap();
        assert_eq!(find_forbidden(&h, complete_k(&h)), None, "H_{k}");
    }
    let claw = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    assert_eq!(find_forbidden(&claw, 4), None);
    assert_eq!(find_forbidden(&Graph::new(0), 1), None);
}

#[test]
fn certificates_validate() {
    let g = generate(ForbiddenId::K14).unwrap();
    let c = find_forbidden(&g, 1).unwrap();
    assert!(validate_certificate(&g, &c));

    let mut missing = c.clone();
    missing.embedding.remove("p3");
    assert!(!validate_certificate(&g, &missing));

    let mut clash = c.clone();
    let p2 = clash.embedding["p2"];
    clash.embedding.insert("p3".into(), p2);
    assert!(!validate_certificate(&g, &clash));

    let mut out_of_range = c.clone();
    out_of_range.embedding.insert("p5".into(), 99);
    assert!(!validate_certificate(&g, &out_of_range));

    let mut wrong_family = c.clone();
    wrong_family.id = ForbiddenId::K23Star;
    assert!(!validate_certificate(&g, &wrong_family));

    // Extra edge between two leaves breaks inducedness.
    let mut g2 = g.clone();
    g2.add_edge(c.embedding["p2"], c.embedding["p3"]).unwrap();
    assert!(!validate_certificate(&g2, &c));
}

#[test]
fn certificate_json_round_trip() {
    let host = common::twin_free_host(ForbiddenId::Fam5(1, 1));
    let c = find_forbidden(&host, complete_k(&host)).unwrap();
    let json = c.to_json(&host);
    assert!(json.starts_with("{\"family\":\"Fam5\",\"k\":1,\"n\":1,\"embedding\":{"), "{json}");
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["family"], "Fam5");
    assert_eq!((v["k"].as_u64(), v["n"].as_u64()), (Some(1), Some(1)));
    assert_eq!(v["embedding"].as_object().unwrap().len(), 10);
    assert_eq!(ForbiddenCertificate::from_json(&json, &host).unwrap(), c);

    let plain = ForbiddenCertificate { id: ForbiddenId::A, embedding: BTreeMap::new() };
    let v: serde_json::Value = serde_json::from_str(&plain.to_json(&host)).unwrap();
    assert!(v.get("k").is_none());
    assert!(ForbiddenCertificate::from_json("{\"family\":\"Fam1\",\"embedding\":{}}", &host).is_err());
    assert!(ForbiddenCertificate::from_json("{\"family\":\"A\",\"embedding\":{\"p30\":\"nope\"}}", &host).is_err());
    assert!(ForbiddenCertificate::from_json("not json", &host).is_err());
}
