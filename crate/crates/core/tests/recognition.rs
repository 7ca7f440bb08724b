use mixint::graph::Graph;
use mixint::interval::{MixedInterval, Representation};
use mixint::oracle::enumerate_graphs;
use mixint::recognition::{check_hypothesis, initial_representation, recognize_interval};
use mixint::{generate_h, Error, Rational};

fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let clique = set.iter().all(|&u| set.iter().all(|&v| u == v || g.has_edge(u, v)));
        let maximal = (0..n).all(|w| set.contains(&w) || set.iter().any(|&u| !g.has_edge(u, w)));
        if clique && maximal {
            out.push(set);
        }
    }
    out
}

/// Tries every ordering of maximal cliques, pruning when a vertex would
/// reappear after its run of cliques ended.
fn brute_interval(g: &Graph) -> bool {
    let cliques = maximal_cliques(g);
    fn go(cliques: &[Vec<usize>], used: &mut Vec<bool>, last: &[usize], closed: &mut Vec<bool>, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        for i in 0..cliques.len() {
            if used[i] || cliques[i].iter().any(|&v| closed[v]) {
                continue;
            }
            let ended: Vec<usize> = last.iter().copied().filter(|v| !cliques[i].contains(v)).collect();
            for &v in &ended {
                closed[v] = true;
            }
            used[i] = true;
            if go(cliques, used, &cliques[i], closed, left - 1) {
                return true;
            }
            used[i] = false;
            for &v in &ended {
                closed[v] = false;
            }
        }
        false
    }
    let mut used = vec![false; cliques.len()];
    let mut closed = vec![false; g.n()];
    go(&cliques, &mut used, &[], &mut closed, cliques.len())
}

#[test]
fn recognition_examples() {
    let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    assert!(recognize_interval(&c4).is_none());
    let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    let c = recognize_interval(&p4).unwrap();
    assert_eq!(c.cliques.len(), 3);
    assert!(c.is_valid_for(&p4));
    let h1 = generate_h(1).unwrap();
    assert!(recognize_interval(&h1).unwrap().is_valid_for(&h1));
}

#[test]
fn recognition_matches_brute_force() {
    for n in 1..=7 {
        for g in enumerate_graphs(n).unwrap() {
            let fast = recognize_interval(&g);
            assert_eq!(fast.is_some(), brute_interval(&g), "{:?}", g);
            if let Some(c) = fast {
                assert!(c.is_valid_for(&g));
            }
        }
    }
}

#[test]
fn initial_representation_examples() {
    let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    let c = recognize_interval(&p3).unwrap();
    let r = initial_representation(&p3, &c).unwrap();
    let middle = r.intervals[1];
    let end = if c.span[0] == (1, 1) { r.intervals[0] } else { r.intervals[2] };
    assert_eq!((middle.l(), middle.r()), (Rational::new(3, 4), Rational::new(9, 4)));
    assert_eq!((end.l(), end.r()), (Rational::new(2, 3), Rational::new(4, 3)));
    assert!(r.intervals.iter().all(|i| i.is_closed() && !i.left.is_red() && !i.right.is_red()));

    let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
    let c = recognize_interval(&k2).unwrap();
    assert!(matches!(initial_representation(&k2, &c), Err(Error::HasTwins(_))));
}

#[test]
fn hypothesis_examples() {
    let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
    let nested = Representation::new(vec![MixedInterval::closed(0.into(), 10.into()), MixedInterval::closed(1.into(), 2.into())]);
    assert!(!check_hypothesis(&k2, &nested));
    let shared = Representation::new(vec![MixedInterval::closed(0.into(), 2.into()), MixedInterval::closed(2.into(), 3.into())]);
    assert!(!check_hypothesis(&k2, &shared));
    let fine = Representation::new(vec![MixedInterval::closed(0.into(), 2.into()), MixedInterval::closed(1.into(), 3.into())]);
    assert!(check_hypothesis(&k2, &fine));
}

#[test]
fn initial_representation_on_all_small_graphs() {
    for n in 1..=7 {
        for g in enumerate_graphs(n).unwrap() {
            if !g.is_twin_free() {
                continue;
            }
            let Some(c) = recognize_interval(&g) else { continue };
            let r = initial_representation(&g, &c).unwrap();
            assert!(check_hypothesis(&g, &r), "{:?}", g);
            // Strict inclusion of intervals matches spans nested at both ends.
            for u in 0..n {
                for v in 0..n {
                    let (su, sv) = (c.span[u], c.span[v]);
                    let span_inside = sv.0 > su.0 && sv.1 < su.1;
                    assert_eq!(r.intervals[u].strictly_contains(&r.intervals[v]), span_inside);
                }
            }
        }
    }
}
