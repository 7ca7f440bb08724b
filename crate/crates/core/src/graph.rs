//! Undirected simple graphs with labelled vertices, twin reduction,
//! induced subgraphs and small-scale isomorphism utilities.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::format::encode_graph6;

/// Default vertex-count bound for [`canonical_form`].
pub const CANONICAL_BOUND: usize = 8;

/// An undirected simple graph. Vertices are `0..n`; each carries an opaque
/// label that survives twin reduction and subgraph extraction.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<bool>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let edges: Vec<(&str, &str)> = self
            .edges()
            .map(|(u, v)| (self.label(u), self.label(v)))
            .collect();
        f.debug_struct("Graph")
            .field("labels", &self.labels)
            .field("edges", &edges)
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices labelled `"0"`, `"1"`, ...
    pub fn new(n: usize) -> Self {
        Graph {
            labels: (0..n).map(|i| i.to_string()).collect(),
            adj: vec![false; n * n],
        }
    }

    /// Edgeless graph with the given labels, which must be distinct.
    pub fn with_labels<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        Ok(Graph {
            labels,
            adj: vec![false; n * n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from labelled edges; vertex order follows `labels`.
    pub fn from_labelled_edges(labels: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let mut g = Graph::with_labels(labels.iter().copied())?;
        for &(a, b) in edges {
            let u = g.index_of(a).ok_or_else(|| Error::UnknownVertex(a.into()))?;
            let v = g.index_of(b).ok_or_else(|| Error::UnknownVertex(b.into()))?;
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(self.labels[u].clone()));
        }
        let n = self.n();
        self.adj[u * n + v] = true;
        self.adj[v * n + u] = true;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        let n = self.n();
        if u < n && v < n {
            self.adj[u * n + v] = false;
            self.adj[v * n + u] = false;
        }
    }

    /// Appends a vertex and returns its index.
    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<usize> {
        let label = label.into();
        if self.index_of(&label).is_some() {
            return Err(Error::DuplicateLabel(label));
        }
        let n = self.n();
        let mut adj = vec![false; (n + 1) * (n + 1)];
        for u in 0..n {
            adj[u * (n + 1)..u * (n + 1) + n].copy_from_slice(&self.adj[u * n..u * n + n]);
        }
        self.adj = adj;
        self.labels.push(label);
        Ok(n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n() + v]
    }

    /// Adjacency in the closed-neighborhood sense: `u == v` counts.
    #[inline]
    pub fn closed_adj(&self, u: usize, v: usize) -> bool {
        u == v || self.has_edge(u, v)
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Index lookup by label that reports unknown labels as errors.
    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&u| self.has_edge(v, u)).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v * self.n()..(v + 1) * self.n()]
            .iter()
            .filter(|&&b| b)
            .count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |u| ((u + 1)..n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
    }

    /// `{v} ∪ {u : uv ∈ E}`, sorted.
    pub fn closed_neighborhood(&self, v: usize) -> Result<Vec<usize>> {
        self.check(v)?;
        Ok((0..self.n()).filter(|&u| self.closed_adj(v, u)).collect())
    }

    pub fn same_closed_neighborhood(&self, u: usize, v: usize) -> bool {
        (0..self.n()).all(|w| self.closed_adj(u, w) == self.closed_adj(v, w))
    }

    /// The subgraph induced by `s`, keeping labels, in the order given.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<Graph> {
        for &v in s {
            self.check(v)?;
        }
        let mut g = Graph::with_labels(s.iter().map(|&v| self.labels[v].clone()))?;
        for (i, &u) in s.iter().enumerate() {
            for (j, &v) in s.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    /// Same graph with vertex `v` of the result being vertex `order[v]` here.
    pub fn permuted(&self, order: &[usize]) -> Graph {
        self.induced_subgraph(order)
            .expect("permutation of existing vertices")
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Graph {
            labels: self.labels.clone(),
            adj: vec![false; n * n],
        };
        for u in 0..n {
            for v in 0..n {
                g.adj[u * n + v] = u != v && !self.has_edge(u, v);
            }
        }
        g
    }

    /// Disjoint union; labels of `other` get `suffix` appended.
    pub fn disjoint_union(&self, other: &Graph, suffix: &str) -> Result<Graph> {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|l| format!("{l}{suffix}")));
        let mut g = Graph::with_labels(labels)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        let off = self.n();
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off)?;
        }
        Ok(g)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_twin_free(&self) -> bool {
        self.reduce_twins().classes.len() == self.n()
    }

    /// Groups vertices by closed neighborhood. The representative of each
    /// class is its smallest member; classes are ordered by representative.
    pub fn reduce_twins(&self) -> TwinReduction {
        let n = self.n();
        let mut by_row: HashMap<Vec<bool>, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let class_of: Vec<usize> = (0..n)
            .map(|v| {
                let row: Vec<bool> = (0..n).map(|u| self.closed_adj(v, u)).collect();
                let c = *by_row.entry(row).or_insert_with(|| {
                    classes.push(Vec::new());
                    classes.len() - 1
                });
                classes[c].push(v);
                c
            })
            .collect();
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let reduced = self
            .induced_subgraph(&reps)
            .expect("representatives are vertices");
        TwinReduction {
            reduced,
            class_of,
            classes,
        }
    }
}

/// Result of collapsing each twin class to one representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinReduction {
    /// Induced subgraph on the representatives; its vertex `i` stands for
    /// `classes[i]`.
    pub reduced: Graph,
    /// Original vertex to reduced vertex.
    pub class_of: Vec<usize>,
    /// Reduced vertex to its original members, ascending.
    pub classes: Vec<Vec<usize>>,
}

impl TwinReduction {
    pub fn has_twins(&self) -> bool {
        self.classes.iter().any(|c| c.len() > 1)
    }

    /// Original representative of reduced vertex `i`.
    pub fn representative(&self, i: usize) -> usize {
        self.classes[i][0]
    }

    /// Twin classes with more than one member, as label lists.
    pub fn nontrivial_classes(&self, original: &Graph) -> Vec<Vec<String>> {
        self.classes
            .iter()
            .filter(|c| c.len() > 1)
            .map(|c| c.iter().map(|&v| original.label(v).to_string()).collect())
            .collect()
    }

    /// Rebuilds the original graph shape by cloning every representative
    /// as mutually adjacent copies. Labels are those of `original`.
    pub fn restore(&self, original_labels: &[String]) -> Graph {
        let n = self.class_of.len();
        let mut g = Graph::with_labels(original_labels.iter().cloned()).expect("distinct labels");
        for u in 0..n {
            for v in (u + 1)..n {
                let (cu, cv) = (self.class_of[u], self.class_of[v]);
                if cu == cv || self.reduced.has_edge(cu, cv) {
                    g.add_edge(u, v).expect("valid vertices");
                }
            }
        }
        g
    }

    /// Maps a per-reduced-vertex value back to every original vertex.
    pub fn expand<T: Clone>(&self, values: &[T]) -> Vec<T> {
        self.class_of.iter().map(|&c| values[c].clone()).collect()
    }
}

/// Searches for an induced copy of `pattern` in `host`. On success,
/// element `i` of the result is the host vertex playing pattern vertex `i`.
pub fn is_induced_isomorphic(host: &Graph, pattern: &Graph) -> Option<Vec<usize>> {
    let p = pattern.n();
    if p > host.n() {
        return None;
    }
    if p == 0 {
        return Some(Vec::new());
    }
    let pdeg: Vec<usize> = (0..p).map(|v| pattern.degree(v)).collect();
    let hdeg: Vec<usize> = (0..host.n()).map(|v| host.degree(v)).collect();

    // Match order: start from the highest degree, then repeatedly take the
    // vertex with most already-ordered neighbors.
    let mut order = Vec::with_capacity(p);
    let mut placed = vec![false; p];
    while order.len() < p {
        let next = (0..p)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = order.iter().filter(|&&u| pattern.has_edge(u, v)).count();
                (links, pdeg[v], std::cmp::Reverse(v))
            })
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
    }

    let mut map = vec![usize::MAX; p];
    let mut used = vec![false; host.n()];
    if extend(host, pattern, &order, 0, &pdeg, &hdeg, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    host: &Graph,
    pattern: &Graph,
    order: &[usize],
    depth: usize,
    pdeg: &[usize],
    hdeg: &[usize],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let pv = order[depth];
    for hv in 0..host.n() {
        if used[hv] || hdeg[hv] < pdeg[pv] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&pu| pattern.has_edge(pu, pv) == host.has_edge(map[pu], hv));
        if !consistent {
            continue;
        }
        map[pv] = hv;
        used[hv] = true;
        if extend(host, pattern, order, depth + 1, pdeg, hdeg, map, used) {
            return true;
        }
        used[hv] = false;
    }
    map[pv] = usize::MAX;
    false
}

/// Checks that `embedding` is an injective induced-subgraph isomorphism.
pub fn is_induced_embedding(host: &Graph, pattern: &Graph, embedding: &[usize]) -> bool {
    if embedding.len() != pattern.n() || embedding.iter().any(|&v| v >= host.n()) {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    if !embedding.iter().all(|v| seen.insert(*v)) {
        return false;
    }
    let p = pattern.n();
    (0..p).all(|u| {
        ((u + 1)..p).all(|v| pattern.has_edge(u, v) == host.has_edge(embedding[u], embedding[v]))
    })
}

/// A string that is equal for two graphs exactly when they are isomorphic:
/// the graph6 encoding of the lexicographically smallest relabelling found
/// by individualization-refinement. Bounded by [`CANONICAL_BOUND`].
pub fn canonical_form(g: &Graph) -> Result<String> {
    canonical_form_bounded(g, CANONICAL_BOUND)
}

pub fn canonical_form_bounded(g: &Graph, bound: usize) -> Result<String> {
    let n = g.n();
    if n > bound {
        return Err(Error::TooLarge { n, bound });
    }
    let colors = refine(g, vec![0; n]);
    let mut best: Option<Vec<bool>> = None;
    search_leaves(g, colors, &mut best);
    let bits = best.unwrap_or_default();
    let mut canon = Graph::new(n);
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            if bits[idx] {
                canon.add_edge(u, v).expect("valid vertices");
            }
            idx += 1;
        }
    }
    Ok(encode_graph6(&canon))
}

/// Equitable refinement: a vertex's new color is determined by its old
/// color and the multiset of its neighbors' colors. Colors are dense
/// `0..k`, ordered by those keys, so the result is relabelling-invariant.
fn refine(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    let n = g.n();
    let mut count = distinct(&colors);
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&u| g.has_edge(v, u)).map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted: Vec<&(usize, Vec<usize>)> = keys.iter().collect();
        sorted.sort();
        sorted.dedup();
        let rank: BTreeMap<&(usize, Vec<usize>), usize> =
            sorted.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        colors = keys.iter().map(|k| rank[k]).collect();
        let next = distinct(&colors);
        if next == count {
            return colors;
        }
        count = next;
    }
}

fn distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search_leaves(g: &Graph, colors: Vec<usize>, best: &mut Option<Vec<bool>>) {
    let n = g.n();
    // First non-singleton cell, by color.
    let mut size = vec![0usize; n.max(1)];
    for &c in &colors {
        size[c] += 1;
    }
    let target = (0..n).find(|&c| size[c] > 1);
    match target {
        None => {
            // Discrete: vertex v goes to position colors[v].
            let mut at = vec![0; n];
            for v in 0..n {
                at[colors[v]] = v;
            }
            let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
            for j in 1..n {
                for i in 0..j {
                    bits.push(g.has_edge(at[i], at[j]));
                }
            }
            if best.as_ref().is_none_or(|b| bits < *b) {
                *best = Some(bits);
            }
        }
        Some(cell) => {
            for v in 0..n {
                if colors[v] != cell {
                    continue;
                }
                let split: Vec<usize> = (0..n)
                    .map(|u| 2 * colors[u] + usize::from(u != v))
                    .collect();
                search_leaves(g, refine(g, split), best);
            }
        }
    }
}
