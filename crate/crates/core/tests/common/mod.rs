#![allow(dead_code)]

use mixint::forbidden::{generate, ForbiddenId};
use mixint::graph::Graph;
use rand::Rng;

fn with_extra(mut g: Graph, extra: &[(&str, &[&str])]) -> Graph {
    for (name, nbrs) in extra {
        let w = g.add_vertex(*name).unwrap();
        for n in *nbrs {
            let u = g.vertex(n).unwrap();
            g.add_edge(w, u).unwrap();
        }
    }
    g
}

/// A twin-free interval graph containing the given member of the forbidden
/// set as an induced subgraph. Members without twins are returned as is;
/// the others get a few extra vertices that separate their twins.
pub fn twin_free_host(id: ForbiddenId) -> Graph {
    let t = generate(id).unwrap();
    match id {
        ForbiddenId::K23Star => with_extra(t, &[("z", &["p6", "p7"])]),
        ForbiddenId::B => with_extra(t, &[("w1", &["p17"]), ("w2", &["p17", "p19"])]),
        ForbiddenId::Fam1(_) => with_extra(t, &[("w1", &["x"]), ("w2", &["x", "y"])]),
        _ => t,
    }
}

/// Intersection graph of random integer spans over `cliques` positions,
/// with twins collapsed.
pub fn random_interval_graph<R: Rng>(rng: &mut R, n: usize, cliques: usize) -> Graph {
    let spans: Vec<(usize, usize)> = (0..n)
        .map(|_| {
            let a = rng.gen_range(0..cliques);
            let len = rng.gen_range(0..=(cliques / 2).max(1));
            (a, (a + len).min(cliques - 1))
        })
        .collect();
    span_graph(&spans)
}

/// A path `p_1 .. p_m` where every `p_i` carries a pendant tooth `t_i`,
/// plus a leaf `l` on `p_1` and, for even `n`, a leaf `r` on `p_m`. The
/// initial representation nests each inner tooth inside its path vertex.
pub fn nested_chain(n: usize) -> Graph {
    assert!(n >= 5);
    let m = (n - 1) / 2;
    let mut labels: Vec<String> = vec!["l".into()];
    for i in 1..=m {
        labels.push(format!("p{i}"));
        labels.push(format!("t{i}"));
    }
    if n.is_multiple_of(2) {
        labels.push("r".into());
    }
    let mut g = Graph::with_labels(labels).unwrap();
    let mut edge = |a: String, b: String| {
        let (u, v) = (g.vertex(&a).unwrap(), g.vertex(&b).unwrap());
        g.add_edge(u, v).unwrap();
    };
    edge("l".into(), "p1".into());
    for i in 1..=m {
        edge(format!("p{i}"), format!("t{i}"));
        if i > 1 {
            edge(format!("p{i}"), format!("p{}", i - 1));
        }
    }
    if n.is_multiple_of(2) {
        edge("r".into(), format!("p{m}"));
    }
    g
}

/// Mostly equal-length spans with a quarter of them shorter, so the graph
/// is close to a unit interval graph but has several nestings.
pub fn near_unit_interval_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let width = rng.gen_range(3..=6);
    let cliques = n + width;
    let spans: Vec<(usize, usize)> = (0..n)
        .map(|_| {
            let a = rng.gen_range(0..cliques);
            let len = if rng.gen_bool(0.3) { rng.gen_range(0..width) } else { width };
            (a, (a + len).min(cliques - 1))
        })
        .collect();
    span_graph(&spans)
}

fn span_graph(spans: &[(usize, usize)]) -> Graph {
    let n = spans.len();
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if spans[u].0 <= spans[v].1 && spans[v].0 <= spans[u].1 {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g.reduce_twins().reduced
}
