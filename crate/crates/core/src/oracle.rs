//! Ground truth for small graphs: isomorphism-free enumeration, an
//! exhaustive search for strict mixed representations, and the census that
//! compares the sweep, the forbidden catalog and the exhaustive search.

use std::collections::{BTreeMap, HashSet};
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forbidden::{complete_k, find_forbidden};
use crate::format::decode_graph6;
use crate::graph::{canonical_form, Graph, CANONICAL_BOUND};
use crate::interval::{MixedInterval, Representation};
use crate::pipeline::{sweep_twin_free, SweepResult};
use crate::rational::Rational;
use crate::sweep::SweepConfig;
use crate::unit::to_unit;

/// Largest graph the exhaustive search accepts.
pub const ORACLE_BOUND: usize = 5;

/// One representative per isomorphism class on `n` vertices, sorted by
/// canonical string. Representatives are the canonical graphs themselves.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > CANONICAL_BOUND {
        return Err(Error::TooLarge { n, bound: CANONICAL_BOUND });
    }
    let mut level: Vec<Graph> = vec![Graph::new(1)];
    for m in 2..=n {
        let prev = m - 1;
        let forms: Vec<String> = level
            .par_iter()
            .flat_map_iter(|g| {
                (0u32..1 << prev).map(move |mask| {
                    let mut h = Graph::new(m);
                    for (u, v) in g.edges() {
                        h.add_edge(u, v).expect("edge of a smaller graph");
                    }
                    for u in 0..prev {
                        if mask >> u & 1 == 1 {
                            h.add_edge(u, prev).expect("new edge");
                        }
                    }
                    canonical_form(&h).expect("within bound")
                })
            })
            .collect();
        let unique: std::collections::BTreeSet<String> = forms.into_iter().collect();
        level = unique
            .into_iter()
            .map(|s| decode_graph6(&s).expect("canonical forms decode"))
            .collect();
    }
    Ok(level)
}

#[derive(Clone, Copy, Debug)]
struct Mark {
    level: usize,
    closed: bool,
}

/// Exhaustive search state: endpoints are placed level by level, left to
/// right; an unplaced endpoint lies beyond every placed one.
struct Search<'g> {
    g: &'g Graph,
    left: Vec<Option<Mark>>,
    right: Vec<Option<Mark>>,
}

enum Status {
    Ok,
    Bad,
    Open,
}

/// Whether endpoint `a` bounds no later than `b`, both left or both right.
fn before_or_at(a: Mark, b: Mark, left: bool) -> bool {
    if a.level != b.level {
        return a.level < b.level;
    }
    if left {
        a.closed || !b.closed
    } else {
        b.closed || !a.closed
    }
}

impl Search<'_> {
    fn adjacency(&self, u: usize, v: usize) -> Option<bool> {
        let (lu, lv, ru, rv) = (self.left[u], self.left[v], self.right[u], self.right[v]);
        match (lu, lv) {
            (Some(lu), Some(lv)) => {
                let rs: Vec<Mark> = [ru, rv].into_iter().flatten().collect();
                if rs.is_empty() {
                    return Some(true);
                }
                let q = rs.iter().map(|m| m.level).min().expect("nonempty");
                let p = lu.level.max(lv.level);
                if p < q {
                    return Some(true);
                }
                if p > q {
                    return Some(false);
                }
                let ls_closed = [lu, lv].iter().filter(|m| m.level == p).all(|m| m.closed);
                let rs_closed = rs.iter().filter(|m| m.level == q).all(|m| m.closed);
                Some(ls_closed && rs_closed)
            }
            // The vertex with a placed right end lies wholly before the
            // unplaced left end.
            (Some(_), None) if ru.is_some() => Some(false),
            (None, Some(_)) if rv.is_some() => Some(false),
            _ => None,
        }
    }

    /// Whether `I(v)` is strictly contained in `I(u)`.
    fn inside(&self, v: usize, u: usize) -> Option<bool> {
        let (lu, lv, ru, rv) = (self.left[u], self.left[v], self.right[u], self.right[v]);
        match (ru, rv) {
            (Some(ru), Some(rv)) => {
                let (lu, lv) = (lu.expect("placed"), lv.expect("placed"));
                let contains = before_or_at(lu, lv, true) && before_or_at(rv, ru, false);
                let same = lu.level == lv.level && ru.level == rv.level;
                Some(contains && !same)
            }
            (None, Some(_)) => match lu {
                None => Some(false),
                Some(lu) => Some(before_or_at(lu, lv.expect("placed"), true)),
            },
            (Some(_), None) => Some(false),
            (None, None) => None,
        }
    }

    fn status(&self) -> Status {
        let n = self.g.n();
        let mut open = false;
        for u in 0..n {
            for v in (u + 1)..n {
                match self.adjacency(u, v) {
                    Some(a) if a != self.g.has_edge(u, v) => return Status::Bad,
                    None => open = true,
                    _ => {}
                }
                for (x, y) in [(u, v), (v, u)] {
                    match self.inside(x, y) {
                        Some(true) => return Status::Bad,
                        None => open = true,
                        _ => {}
                    }
                }
            }
        }
        if open {
            Status::Open
        } else {
            Status::Ok
        }
    }

    fn done(&self) -> bool {
        self.right.iter().all(Option::is_some)
    }

    fn dfs(&mut self, level: usize) -> bool {
        if self.done() {
            return matches!(self.status(), Status::Ok);
        }
        let n = self.g.n();
        // Symbols 0..n are left ends, n..2n right ends.
        let avail: Vec<usize> = (0..n)
            .filter(|&v| self.left[v].is_none())
            .chain((0..n).filter(|&v| self.left[v].is_some() && self.right[v].is_none()).map(|v| v + n))
            .collect();
        let pending_right: Vec<usize> = (0..n).filter(|&v| self.left[v].is_none()).map(|v| v + n).collect();
        let cand: Vec<usize> = avail.iter().copied().chain(pending_right).collect();
        let k = cand.len();
        // Each candidate symbol is absent, open, or closed at this level.
        let total = 3usize.pow(k as u32);
        for code in 1..total {
            let mut c = code;
            let mut chosen = Vec::new();
            for &s in &cand {
                let t = c % 3;
                c /= 3;
                if t > 0 {
                    chosen.push((s, t == 1));
                }
            }
            if !self.valid_choice(&chosen, n) {
                continue;
            }
            for &(s, closed) in &chosen {
                let m = Some(Mark { level, closed });
                if s < n {
                    self.left[s] = m;
                } else {
                    self.right[s - n] = m;
                }
            }
            let keep = !matches!(self.status(), Status::Bad);
            if keep && self.dfs(level + 1) {
                return true;
            }
            for &(s, _) in &chosen {
                if s < n {
                    self.left[s] = None;
                } else {
                    self.right[s - n] = None;
                }
            }
        }
        false
    }

    fn valid_choice(&self, chosen: &[(usize, bool)], n: usize) -> bool {
        chosen.iter().all(|&(s, closed)| {
            if s < n {
                return true;
            }
            let v = s - n;
            if self.left[v].is_some() {
                return true;
            }
            // Right end placed with its left end: a single point, both closed.
            closed && chosen.iter().any(|&(t, c)| t == v && c)
        })
    }
}

/// Searches every weak order of the `2n` endpoints with every choice of
/// open and closed ends for a strict mixed representation of `g`.
pub fn brute_strict_mixed(g: &Graph) -> Result<Option<Representation>> {
    let n = g.n();
    if n > ORACLE_BOUND {
        return Err(Error::TooLarge { n, bound: ORACLE_BOUND });
    }
    let mut s = Search {
        g,
        left: vec![None; n],
        right: vec![None; n],
    };
    if !s.dfs(0) {
        return Ok(None);
    }
    let intervals = (0..n)
        .map(|v| {
            let (l, r) = (s.left[v].expect("placed"), s.right[v].expect("placed"));
            MixedInterval::new(Rational::integer(l.level as i64), l.closed, Rational::integer(r.level as i64), r.closed)
        })
        .collect::<Result<Vec<_>>>()?;
    let rep = Representation::new(intervals);
    if !rep.verify(g)? || !rep.is_strict() {
        return Err(Error::Internal("exhaustive search accepted an invalid representation".into()));
    }
    Ok(Some(rep))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub canonical: String,
    pub n: usize,
    pub is_interval: bool,
    pub is_twin_free: bool,
    pub sweep_ok: Option<bool>,
    #[serde(rename = "forbidden_id")]
    pub forbidden: Option<String>,
    pub oracle_ok: Option<bool>,
}

/// A disagreement between the three deciders, or a bad representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub canonical: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct CensusReport {
    pub rows: Vec<CensusRow>,
    pub violations: Vec<Violation>,
    /// Rows taken from an existing output file instead of recomputed.
    pub resumed: usize,
}

impl CensusReport {
    pub fn ensure_consistent(&self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::Internal(format!(
                "{} equivalence violation(s); first at {}: {}",
                self.violations.len(),
                v.canonical,
                v.detail
            ))),
        }
    }
}

/// Classifies one graph. Errors in the deciders are reported as violations.
pub fn classify(g: &Graph, canonical: String, oracle_max: usize) -> (CensusRow, Option<Violation>) {
    let is_twin_free = g.is_twin_free();
    let mut row = CensusRow {
        canonical: canonical.clone(),
        n: g.n(),
        is_interval: crate::recognition::recognize_interval(g).is_some(),
        is_twin_free,
        sweep_ok: None,
        forbidden: None,
        oracle_ok: None,
    };
    let violation = |detail: String| Violation {
        canonical: canonical.clone(),
        detail,
    };
    if !(row.is_interval && is_twin_free) {
        return (row, None);
    }
    let cfg = SweepConfig {
        check_invariants: true,
        record_trace: false,
    };
    let sweep = match sweep_twin_free(g, cfg) {
        Ok(Some(s)) => s,
        Ok(None) => return (row, Some(violation("recognition disagrees with itself".into()))),
        Err(e) => return (row, Some(violation(format!("initial representation failed: {e}")))),
    };
    let mut problems = Vec::new();
    let sweep_ok = match &sweep {
        SweepResult::Strict(out) => {
            if let Err(e) = check_output(g, &out.representation) {
                problems.push(e);
            }
            true
        }
        SweepResult::Rejected(crate::sweep::SweepError::Precondition(e)) => {
            problems.push(format!("sweep precondition failed: {e}"));
            false
        }
        SweepResult::Rejected(_) => false,
    };
    row.sweep_ok = Some(sweep_ok);
    let cert = find_forbidden(g, complete_k(g));
    row.forbidden = cert.as_ref().map(|c| c.id.to_string());
    if sweep_ok == cert.is_some() {
        problems.push(match &cert {
            Some(c) => format!("sweep succeeded but {} is induced", c.id),
            None => match &sweep {
                SweepResult::Rejected(e) => format!("sweep rejected a forbidden-free graph: {e}"),
                SweepResult::Strict(_) => unreachable!("sweep_ok is false"),
            },
        });
    }
    if g.n() <= oracle_max.min(ORACLE_BOUND) {
        match brute_strict_mixed(g) {
            Ok(found) => {
                row.oracle_ok = Some(found.is_some());
                if found.is_some() != sweep_ok {
                    problems.push(format!("exhaustive search says {}, sweep says {sweep_ok}", found.is_some()));
                }
            }
            Err(e) => problems.push(format!("exhaustive search failed: {e}")),
        }
    }
    let v = (!problems.is_empty()).then(|| violation(problems.join("; ")));
    (row, v)
}

fn check_output(g: &Graph, r: &Representation) -> std::result::Result<(), String> {
    if !matches!(r.verify(g), Ok(true)) || !r.is_strict() {
        return Err("sweep output is not a strict representation".into());
    }
    match to_unit(g, r) {
        Ok(u) if matches!(u.verify(g), Ok(true)) && u.is_unit() => Ok(()),
        Ok(_) => Err("unit conversion output is wrong".into()),
        Err(e) => Err(format!("unit conversion failed: {e}")),
    }
}

const CHUNK: usize = 256;

/// Classifies `graphs` in parallel, appending rows to `out` in input order
/// as each chunk completes. Graphs whose canonical form already appears in
/// `out` are skipped.
pub fn census_graphs(graphs: &[Graph], oracle_max: usize, out: Option<&Path>) -> Result<CensusReport> {
    let mut report = CensusReport::default();
    let mut done: HashSet<String> = HashSet::new();
    let mut writer = match out {
        None => None,
        Some(path) => {
            let exists = path.exists() && std::fs::metadata(path).map(|m| m.len() > 0).unwrap_or(false);
            if exists {
                let mut rdr = csv::Reader::from_path(path).map_err(|e| Error::Internal(e.to_string()))?;
                for row in rdr.deserialize::<CensusRow>() {
                    let row = row.map_err(|e| Error::Internal(format!("cannot resume from {}: {e}", path.display())))?;
                    done.insert(row.canonical.clone());
                    report.rows.push(row);
                }
                report.resumed = report.rows.len();
            }
            let file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| Error::Internal(format!("cannot open {}: {e}", path.display())))?;
            Some(csv::WriterBuilder::new().has_headers(!exists).from_writer(file))
        }
    };
    let keyed: Vec<(String, &Graph)> = graphs
        .par_iter()
        .map(|g| canonical_form(g).map(|c| (c, g)))
        .collect::<Result<_>>()?;
    let todo: Vec<&(String, &Graph)> = keyed.iter().filter(|(c, _)| !done.contains(c)).collect();
    for chunk in todo.chunks(CHUNK) {
        let results: Vec<(CensusRow, Option<Violation>)> = chunk
            .par_iter()
            .map(|(c, g)| classify(g, c.clone(), oracle_max))
            .collect();
        for (row, v) in results {
            if let Some(w) = writer.as_mut() {
                w.serialize(&row).map_err(|e| Error::Internal(e.to_string()))?;
            }
            report.rows.push(row);
            report.violations.extend(v);
        }
        if let Some(w) = writer.as_mut() {
            w.flush().map_err(|e| Error::Internal(e.to_string()))?;
        }
    }
    Ok(report)
}

/// Census over every isomorphism class with `1..=n_max` vertices.
pub fn census(n_max: usize, oracle_max: usize, out: Option<&Path>) -> Result<CensusReport> {
    if oracle_max > ORACLE_BOUND {
        return Err(Error::TooLarge {
            n: oracle_max,
            bound: ORACLE_BOUND,
        });
    }
    let mut graphs = Vec::new();
    for n in 1..=n_max {
        graphs.extend(enumerate_graphs(n)?);
    }
    census_graphs(&graphs, oracle_max, out)
}

/// Class counts per vertex number, for summaries.
pub fn count_by_n(rows: &[CensusRow]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for r in rows {
        *m.entry(r.n).or_insert(0) += 1;
    }
    m
}

/// Writes the CSV header and rows to any writer.
pub fn write_csv<W: Write>(rows: &[CensusRow], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for r in rows {
        wr.serialize(r).map_err(|e| Error::Internal(e.to_string()))?;
    }
    wr.flush().map_err(|e| Error::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
        assert!(enumerate_graphs(0).is_err());
        assert!(enumerate_graphs(9).is_err());
    }

    #[test]
    fn oracle_small_cases() {
        let k1 = Graph::new(1);
        let r = brute_strict_mixed(&k1).unwrap().unwrap();
        assert!(r.intervals[0].is_degenerate() || r.intervals[0].l() < r.intervals[0].r());
        let claw = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(brute_strict_mixed(&claw).unwrap().is_some());
        let k14 = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(brute_strict_mixed(&k14).unwrap().is_none());
        assert!(brute_strict_mixed(&Graph::new(6)).is_err());
    }
}
