//! Interval graph recognition and the initial closed representation.
//!
//! Recognition runs LexBFS to test chordality and collect the maximal
//! cliques, then transitively orients the complement. By Gilmore and
//! Hoffman, a chordal graph with a comparability complement is an interval
//! graph, and any transitive orientation of the complement orders its
//! maximal cliques consecutively. The resulting ordering is re-checked
//! explicitly before it is returned.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::interval::{MixedInterval, Representation};
use crate::rational::Rational;

/// Maximal cliques in an order where the cliques containing any vertex are
/// consecutive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueOrdering {
    /// Sorted vertex lists.
    pub cliques: Vec<Vec<usize>>,
    /// First and last 1-based clique position containing each vertex.
    pub span: Vec<(usize, usize)>,
}

impl CliqueOrdering {
    /// Checks maximality, consecutiveness and edge coverage against `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let n = g.n();
        let m = self.cliques.len();
        let member: Vec<Vec<bool>> = self
            .cliques
            .iter()
            .map(|c| {
                let mut b = vec![false; n];
                for &v in c {
                    b[v] = true;
                }
                b
            })
            .collect();
        for c in &self.cliques {
            if c.is_empty() || c.iter().any(|&v| v >= n) {
                return false;
            }
            for (i, &u) in c.iter().enumerate() {
                if c[i + 1..].iter().any(|&v| !g.has_edge(u, v)) {
                    return false;
                }
            }
            let extendable = (0..n).any(|w| !c.contains(&w) && c.iter().all(|&u| g.has_edge(u, w)));
            if extendable {
                return false;
            }
        }
        if self.span.len() != n {
            return false;
        }
        for (v, &span) in self.span.iter().enumerate() {
            let pos: Vec<usize> = (0..m).filter(|&j| member[j][v]).map(|j| j + 1).collect();
            let (Some(&first), Some(&last)) = (pos.first(), pos.last()) else {
                return false;
            };
            if last - first + 1 != pos.len() || span != (first, last) {
                return false;
            }
        }
        g.edges()
            .all(|(u, v)| member.iter().any(|c| c[u] && c[v]))
    }
}

/// Lexicographic breadth-first search; returns the visit order.
pub fn lex_bfs(g: &Graph) -> Vec<usize> {
    let n = g.n();
    // Partition refinement over an ordered list of cells.
    let mut cells: Vec<Vec<usize>> = if n == 0 { Vec::new() } else { vec![(0..n).collect()] };
    let mut order = Vec::with_capacity(n);
    while let Some(first) = cells.first_mut() {
        let v = first.remove(0);
        if first.is_empty() {
            cells.remove(0);
        }
        order.push(v);
        let mut next = Vec::with_capacity(cells.len() * 2);
        for cell in cells {
            let (inside, outside): (Vec<usize>, Vec<usize>) = cell.into_iter().partition(|&u| g.has_edge(v, u));
            if !inside.is_empty() {
                next.push(inside);
            }
            if !outside.is_empty() {
                next.push(outside);
            }
        }
        cells = next;
    }
    order
}

/// Maximal cliques when `peo` is a perfect elimination ordering, or `None`
/// when it is not one.
fn peo_cliques(g: &Graph, peo: &[usize]) -> Option<Vec<Vec<usize>>> {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(n);
    for &v in peo {
        let later: Vec<usize> = (0..n).filter(|&u| g.has_edge(v, u) && pos[u] > pos[v]).collect();
        if let Some(&parent) = later.iter().min_by_key(|&&u| pos[u]) {
            if later.iter().any(|&u| u != parent && !g.has_edge(parent, u)) {
                return None;
            }
        }
        let mut c = later;
        c.push(v);
        c.sort_unstable();
        candidates.push(c);
    }
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        let dominated = candidates.iter().enumerate().any(|(j, d)| {
            j != i && d.len() >= c.len() && (d.len() > c.len() || j < i) && c.iter().all(|x| d.binary_search(x).is_ok())
        });
        if !dominated {
            cliques.push(c.clone());
        }
    }
    Some(cliques)
}

pub fn is_chordal(g: &Graph) -> bool {
    let mut peo = lex_bfs(g);
    peo.reverse();
    peo_cliques(g, &peo).is_some()
}

/// A transitive orientation of `g` as a boolean matrix (`o[u*n+v]` means
/// `u → v`), or `None` if `g` is not a comparability graph. Implication
/// classes are peeled off one at a time as in Golumbic's TRO scheme.
pub fn transitive_orientation(g: &Graph) -> Option<Vec<bool>> {
    let n = g.n();
    let mut active: Vec<bool> = (0..n * n).map(|k| g.has_edge(k / n, k % n)).collect();
    let mut orient = vec![false; n * n];
    let mut mark = vec![u32::MAX; n * n];
    let mut phase: u32 = 0;
    let mut cursor = 0;
    loop {
        while cursor < n * n && !active[cursor] {
            cursor += 1;
        }
        if cursor == n * n {
            break;
        }
        let (x, y) = (cursor / n, cursor % n);
        let mut class = vec![(x, y)];
        mark[x * n + y] = phase;
        let mut head = 0;
        while head < class.len() {
            let (a, b) = class[head];
            head += 1;
            // (a,b) forces (a,b') when b' ~ a but b' ≁ b, and (a',b) when a' ~ b but a' ≁ a.
            for w in 0..n {
                if w != b && active[a * n + w] && !active[b * n + w] {
                    if mark[w * n + a] == phase {
                        return None;
                    }
                    if mark[a * n + w] != phase {
                        mark[a * n + w] = phase;
                        class.push((a, w));
                    }
                }
                if w != a && active[w * n + b] && !active[a * n + w] {
                    if mark[b * n + w] == phase {
                        return None;
                    }
                    if mark[w * n + b] != phase {
                        mark[w * n + b] = phase;
                        class.push((w, b));
                    }
                }
            }
        }
        for &(a, b) in &class {
            if mark[b * n + a] == phase {
                return None;
            }
        }
        for &(a, b) in &class {
            orient[a * n + b] = true;
            active[a * n + b] = false;
            active[b * n + a] = false;
        }
        phase += 1;
    }
    Some(orient)
}

/// A consecutive ordering of the maximal cliques, or `None` when `g` is not
/// an interval graph.
pub fn recognize_interval(g: &Graph) -> Option<CliqueOrdering> {
    let n = g.n();
    if n == 0 {
        return Some(CliqueOrdering {
            cliques: Vec::new(),
            span: Vec::new(),
        });
    }
    let mut peo = lex_bfs(g);
    peo.reverse();
    let cliques = peo_cliques(g, &peo)?;
    let orient = transitive_orientation(&g.complement())?;

    let m = cliques.len();
    let member: Vec<Vec<bool>> = cliques
        .iter()
        .map(|c| {
            let mut b = vec![false; n];
            for &v in c {
                b[v] = true;
            }
            b
        })
        .collect();
    // before[i][j]: clique i precedes clique j.
    let precedes = |i: usize, j: usize| -> Option<bool> {
        for x in (0..n).filter(|&x| member[i][x] && !member[j][x]) {
            for y in (0..n).filter(|&y| member[j][y] && !member[i][y]) {
                if !g.has_edge(x, y) {
                    return Some(orient[x * n + y]);
                }
            }
        }
        None
    };
    let mut rank = vec![0usize; m];
    for (i, r) in rank.iter_mut().enumerate() {
        for j in 0..m {
            if i != j && precedes(j, i)? {
                *r += 1;
            }
        }
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| rank[i]);
    if order.iter().enumerate().any(|(p, &i)| rank[i] != p) {
        return None;
    }
    let cliques: Vec<Vec<usize>> = order.iter().map(|&i| cliques[i].clone()).collect();
    let mut span = vec![(usize::MAX, 0); n];
    for (j, c) in cliques.iter().enumerate() {
        for &v in c {
            let s = &mut span[v];
            s.0 = s.0.min(j + 1);
            s.1 = s.1.max(j + 1);
        }
    }
    let ordering = CliqueOrdering { cliques, span };
    ordering.is_valid_for(g).then_some(ordering)
}

/// Vertex spanning cliques `j..=j+k` gets `[j - 1/(k+3), j + k + 1/(k+3)]`.
pub fn initial_representation(g: &Graph, c: &CliqueOrdering) -> Result<Representation> {
    let t = g.reduce_twins();
    if t.has_twins() {
        return Err(Error::HasTwins(t.nontrivial_classes(g)));
    }
    if c.span.len() != g.n() {
        return Err(Error::Precondition("clique ordering does not cover the graph".into()));
    }
    let intervals = c
        .span
        .iter()
        .map(|&(first, last)| {
            let j = first as i64;
            let k = (last - first) as i64;
            let off = Rational::new(1, k + 3);
            MixedInterval::closed(Rational::integer(j) - off, Rational::integer(j + k) + off)
        })
        .collect();
    Ok(Representation::new(intervals))
}

/// All closed, all endpoint values distinct, represents `g`, and every
/// proper inclusion has a left and a right peeker.
pub fn check_hypothesis(g: &Graph, r: &Representation) -> bool {
    if r.len() != g.n() || !r.is_all_closed() {
        return false;
    }
    let mut values: Vec<Rational> = r.intervals.iter().flat_map(|i| [i.l(), i.r()]).collect();
    values.sort_unstable();
    if values.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    if !matches!(r.verify(g), Ok(true)) {
        return false;
    }
    let n = g.n();
    r.strict_inclusions().into_iter().all(|(v, u)| {
        let has = |side| (0..n).any(|x| x != v && x != u && r.peek(x, v, u) == side);
        has(crate::interval::Peek::Left) && has(crate::interval::Peek::Right)
    })
}
