mod common;

use mixint::forbidden::ForbiddenId;
use mixint::graph::Graph;
use mixint::interval::{MixedInterval, Representation};
use mixint::sweep::{find_ab_pair, identify_base, run_sweep, sweep_all, End, Kind, Side, SweepConfig, SweepError, SweepOutcome};
use mixint::{check_hypothesis, decide, generate, generate_h, initial_representation, recognize_interval, Rational, Verdict};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn ci(l: Rational, r: Rational) -> MixedInterval {
    MixedInterval::closed(l, r)
}

fn initial(g: &Graph) -> Representation {
    initial_representation(g, &recognize_interval(g).unwrap()).unwrap()
}

fn golden_host() -> Graph {
    Graph::from_labelled_edges(
        &["x", "u", "v", "x1", "x1'", "w"],
        &[("x", "u"), ("x", "v"), ("x", "x1"), ("x", "x1'"), ("x1", "x1'"), ("w", "x1")],
    )
    .unwrap()
}

fn claw() -> Graph {
    Graph::from_labelled_edges(&["c", "x", "y", "z"], &[("c", "x"), ("c", "y"), ("c", "z")]).unwrap()
}

/// Replays every event from the initial representation, checking that
/// each event starts from the current interval and that red endpoints
/// never change.
fn replay(initial: &Representation, out: &SweepOutcome) -> Representation {
    let mut cur = initial.clone();
    for t in &out.traces {
        for e in &t.events {
            let now = cur.intervals[e.vertex];
            assert_eq!(now, e.from, "event {} starts elsewhere", e.step);
            for (old, new) in [(now.left, e.to.left), (now.right, e.to.right)] {
                if old.is_red() {
                    assert!(new.is_red() && old.same_place(&new), "red endpoint moved at {}", e.step);
                }
            }
            cur.intervals[e.vertex] = e.to;
        }
    }
    cur
}

#[test]
fn ab_pair_examples() {
    let strict = Representation::new(vec![ci(0.into(), 1.into()), ci(2.into(), 3.into())]);
    assert_eq!(find_ab_pair(&strict).unwrap(), None);
    let nested = Representation::new(vec![ci(0.into(), 10.into()), ci(1.into(), 2.into())]);
    assert_eq!(find_ab_pair(&nested).unwrap(), Some((0, 1)));
    let g = golden_host();
    assert_eq!(find_ab_pair(&initial(&g)).unwrap(), Some((g.vertex("x").unwrap(), g.vertex("v").unwrap())));
    // Leftmost containing interval wins.
    let two = Representation::new(vec![
        ci(5.into(), 9.into()),
        ci(6.into(), 7.into()),
        ci(0.into(), 4.into()),
        ci(1.into(), 2.into()),
    ]);
    assert_eq!(find_ab_pair(&two).unwrap(), Some((2, 3)));
    let double = Representation::new(vec![ci(0.into(), 10.into()), ci(1.into(), 2.into()), ci(3.into(), 4.into())]);
    assert!(matches!(find_ab_pair(&double), Err(SweepError::ForbiddenStructure { .. })));
}

#[test]
fn base_roles_of_the_claw() {
    let g = claw();
    let r = initial(&g);
    let (a0, b0) = find_ab_pair(&r).unwrap().unwrap();
    assert_eq!(a0, g.vertex("c").unwrap());
    let roles = identify_base(&g, &r, a0, b0).unwrap();
    assert_eq!((roles.c0, roles.d0, roles.c1, roles.d1p), (None, None, None, None));
    let mut outer = vec![roles.a1, roles.a1p];
    outer.sort_unstable();
    let mut expected: Vec<usize> = (1..4).filter(|&v| v != b0).collect();
    expected.sort_unstable();
    assert_eq!(outer, expected);
    assert!(r.intervals[roles.a1].r() < r.intervals[roles.a1p].r());
    assert!(identify_base(&g, &r, b0, a0).is_err());
}

#[test]
fn base_roles_of_the_golden_host() {
    let g = golden_host();
    let r = initial(&g);
    let id = |s: &str| g.vertex(s).unwrap();
    let roles = identify_base(&g, &r, id("x"), id("v")).unwrap();
    assert_eq!(roles.a1, id("u"));
    assert_eq!(roles.a1p, id("x1"));
    assert_eq!(roles.d1p, Some(id("x1'")));
    assert_eq!((roles.c0, roles.d0, roles.c1, roles.b1, roles.b1p), (None, None, None, None, None));
}

#[test]
fn claw_takes_one_sweep() {
    let g = claw();
    let r = initial(&g);
    let out = sweep_all(&g, &r, SweepConfig::default()).unwrap();
    assert_eq!(out.traces.len(), 1);
    let f = &out.representation;
    assert!(f.verify(&g).unwrap() && f.is_strict());
    let open: Vec<&MixedInterval> = f.intervals.iter().filter(|i| !i.left.closed && !i.right.closed).collect();
    assert_eq!(open.len(), 1);
    let c = f.intervals[g.vertex("c").unwrap()];
    assert!(c.is_closed() && open[0].same_values(&c));
    assert_eq!(f.intervals.iter().filter(|i| i.is_closed()).count(), 3);
}

#[test]
fn golden_trace() {
    let g = golden_host();
    let r = initial(&g);
    let out = sweep_all(&g, &r, SweepConfig::default()).unwrap();
    let f = &out.representation;
    let want = [
        ("x", q(4, 5), true, q(16, 5), true),
        ("u", q(2, 3), true, q(4, 5), true),
        ("v", q(4, 5), false, q(16, 5), false),
        ("x1", q(16, 5), true, q(17, 4), true),
        ("x1'", q(16, 5), true, q(17, 4), false),
        ("w", q(17, 4), true, q(13, 3), true),
    ];
    for (v, l, lc, r, rc) in want {
        let i = f.intervals[g.vertex(v).unwrap()];
        assert_eq!((i.l(), i.left.closed, i.r(), i.right.closed), (l, lc, r, rc), "{v}");
    }
    let t = &out.traces[0];
    let json = t.to_json_lines(g.labels());
    let lines: Vec<&str> = json.lines().collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(
        lines[0],
        r#"{"step":"[0.5]","sweep":1,"v":"v","from":{"l":"5/3","lc":true,"r":"7/3","rc":true},"to":{"l":"4/5","lc":false,"r":"16/5","rc":false},"reddened":[]}"#
    );
    assert_eq!(
        lines[6],
        r#"{"step":"[1.4']","sweep":1,"v":"x1'","from":{"l":"8/3","lc":true,"r":"10/3","rc":true},"to":{"l":"16/5","lc":true,"r":"17/4","rc":false},"reddened":["L","R"]}"#
    );
    let steps: Vec<&str> = t.events.iter().map(|e| e.step.as_str()).collect();
    assert_eq!(steps, ["[0.5]", "[0.6]", "[0.6]", "[1.1]", "[1.1']", "[1.2']", "[1.4']", "[2.1']"]);
    let role = |v: &str| t.roles.iter().find(|(u, _)| *u == g.vertex(v).unwrap()).unwrap().1;
    assert_eq!(role("u").to_string(), "a_1");
    assert!(role("u").terminal);
    assert_eq!((role("x1'").kind, role("x1'").side), (Kind::D, Side::Right));
    assert!(role("w").terminal);
    let zones: Vec<Rational> = t.zone_lines.iter().map(|z| z.position).collect();
    assert_eq!(zones, vec![q(4, 5), q(16, 5), q(17, 4)]);
    assert_eq!(replay(&r, &out), out.representation);
}

#[test]
fn base_step_moves_d0() {
    // a0 = [0,10] holds b0 = [4,5]; x peeks from the left, y from the
    // right, and d0 sees everything a0 sees except y.
    let g = Graph::from_labelled_edges(
        &["a0", "b0", "x", "y", "d0"],
        &[("a0", "b0"), ("a0", "x"), ("a0", "y"), ("a0", "d0"), ("d0", "b0"), ("d0", "x")],
    )
    .unwrap();
    let r = Representation::new(vec![
        ci(0.into(), 10.into()),
        ci(4.into(), 5.into()),
        ci((-3).into(), 2.into()),
        ci(7.into(), 13.into()),
        ci((-1).into(), q(9, 2)),
    ]);
    assert!(check_hypothesis(&g, &r));
    let roles = identify_base(&g, &r, 0, 1).unwrap();
    assert_eq!(roles.d0, Some(4));
    let (f, trace) = run_sweep(&g, &r, SweepConfig::default()).unwrap().unwrap();
    let d0 = f.intervals[4];
    assert_eq!((d0.l(), d0.left.closed, d0.r(), d0.right.closed), (0.into(), true, 10.into(), false));
    assert!(d0.left.is_red() && d0.right.is_red());
    let b0 = f.intervals[1];
    assert_eq!((b0.l(), b0.left.closed, b0.r(), b0.right.closed), (0.into(), false, 10.into(), false));
    let e = trace.events.iter().find(|e| e.vertex == 4).unwrap();
    assert_eq!((e.step.as_str(), e.reddened.as_slice()), ("[0.5]", &[End::L, End::R][..]));
    assert!(f.verify(&g).unwrap() && f.is_strict());
}

#[test]
fn h_graphs_get_coinciding_pairs() {
    for k in 1..=4 {
        let h = generate_h(k).unwrap();
        let d = decide(&h, SweepConfig::default()).unwrap();
        let Verdict::UnitMixed(acc) = d.verdict else { panic!("H_{k} rejected") };
        for rep in [&acc.strict, &acc.unit] {
            for j in 1..=k {
                let (a, c) = (h.vertex(&format!("a_{j}")).unwrap(), h.vertex(&format!("c_{j}")).unwrap());
                assert!(rep.intervals[a].same_values(&rep.intervals[c]), "H_{k}: a_{j} and c_{j}");
            }
        }
    }
}

#[test]
fn k14_is_rejected_with_witnesses() {
    let g = generate(ForbiddenId::K14).unwrap();
    match sweep_all(&g, &initial(&g), SweepConfig::default()) {
        Err(SweepError::ForbiddenStructure { witnesses, .. }) => {
            assert!(witnesses.len() >= 3);
            assert!(witnesses.contains(&g.vertex("p1").unwrap()));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn forbidden_members_fail_the_sweep() {
    let mut ids = vec![ForbiddenId::K14, ForbiddenId::K23Star, ForbiddenId::K24Star, ForbiddenId::A, ForbiddenId::B];
    for k in 1..=3 {
        ids.extend([ForbiddenId::Fam1(k), ForbiddenId::Fam2(k), ForbiddenId::Fam3(k), ForbiddenId::Fam4(k)]);
    }
    for k in 1..=2 {
        for n in 1..=2 {
            ids.push(ForbiddenId::Fam5(k, n));
        }
    }
    for id in ids {
        let g = common::twin_free_host(id);
        assert!(g.is_twin_free(), "{id}");
        let r = initial(&g);
        assert!(sweep_all(&g, &r, SweepConfig::default()).is_err(), "{id} was accepted");
    }
}

#[test]
fn preconditions_are_checked() {
    let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
    let r = Representation::new(vec![ci(0.into(), 2.into()), ci(1.into(), 3.into())]);
    assert!(matches!(sweep_all(&k2, &r, SweepConfig::default()), Err(SweepError::Precondition(_))));
    let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    let bad = Representation::new(vec![ci(0.into(), 2.into()), ci(1.into(), 4.into()), ci(2.into(), 5.into())]);
    assert!(matches!(sweep_all(&p3, &bad, SweepConfig::default()), Err(SweepError::Precondition(_))));
}

#[test]
fn strict_input_needs_no_sweep() {
    let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    let r = initial(&p3);
    let out = sweep_all(&p3, &r, SweepConfig::default()).unwrap();
    assert!(out.traces.is_empty());
    assert_eq!(out.representation, r);
    assert_eq!(run_sweep(&p3, &r, SweepConfig::default()).unwrap(), None);
}

#[test]
fn sweeps_are_deterministic() {
    let h = generate_h(3).unwrap().reduce_twins().reduced;
    let r = initial(&h);
    let a = sweep_all(&h, &r, SweepConfig::default()).unwrap();
    let b = sweep_all(&h, &r, SweepConfig::default()).unwrap();
    assert_eq!(a.traces, b.traces);
    assert_eq!(a.representation, b.representation);
    assert_eq!(a.ops, b.ops);
    let quiet = sweep_all(&h, &r, SweepConfig { check_invariants: false, record_trace: false }).unwrap();
    assert_eq!(quiet.representation, a.representation);
    assert!(quiet.traces.is_empty());
}

#[test]
fn nested_chain_replays() {
    let g = common::nested_chain(30);
    let r = initial(&g);
    let before = r.strict_inclusion_count();
    assert!(before >= 10);
    let out = sweep_all(&g, &r, SweepConfig::default()).unwrap();
    assert!(out.traces.len() <= before);
    assert_eq!(replay(&r, &out), out.representation);
}

#[test]
fn traces_do_not_depend_on_checks() {
    let mut graphs = vec![golden_host(), common::nested_chain(12)];
    for k in 2..=4 {
        graphs.push(generate_h(k).unwrap().reduce_twins().reduced);
    }
    for g in graphs {
        let r = initial(&g);
        let on = sweep_all(&g, &r, SweepConfig::default()).unwrap();
        let off = sweep_all(&g, &r, SweepConfig { check_invariants: false, record_trace: true }).unwrap();
        assert_eq!(on.traces, off.traces);
        assert_eq!(on.representation, off.representation);
    }
}
