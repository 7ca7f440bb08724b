//! Mixed intervals (each endpoint open or closed) with exact endpoints,
//! and representations of graphs by them.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Rational;

/// Sweep bookkeeping color. Intersection semantics ignore it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Color {
    #[default]
    White,
    Red,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Endpoint {
    pub value: Rational,
    pub closed: bool,
    pub color: Color,
}

impl Endpoint {
    pub fn new(value: Rational, closed: bool) -> Self {
        Endpoint {
            value,
            closed,
            color: Color::White,
        }
    }

    pub fn is_red(&self) -> bool {
        self.color == Color::Red
    }

    /// Same position and open/closed status, whatever the colors.
    pub fn same_place(&self, other: &Endpoint) -> bool {
        self.value == other.value && self.closed == other.closed
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MixedInterval {
    pub left: Endpoint,
    pub right: Endpoint,
}

impl MixedInterval {
    /// Validating constructor. Degenerate intervals must be closed points.
    pub fn new(l: Rational, lc: bool, r: Rational, rc: bool) -> Result<Self> {
        let i = MixedInterval {
            left: Endpoint::new(l, lc),
            right: Endpoint::new(r, rc),
        };
        i.validate()?;
        Ok(i)
    }

    pub fn closed(l: Rational, r: Rational) -> Self {
        MixedInterval::new(l, true, r, true).expect("closed interval with l <= r")
    }

    pub fn validate(&self) -> Result<()> {
        match self.left.value.cmp(&self.right.value) {
            Ordering::Greater => Err(Error::InvalidInterval(format!("{self}: left end exceeds right end"))),
            Ordering::Equal if !(self.left.closed && self.right.closed) => {
                Err(Error::InvalidInterval(format!("{self}: empty point interval")))
            }
            _ => Ok(()),
        }
    }

    pub fn l(&self) -> Rational {
        self.left.value
    }

    pub fn r(&self) -> Rational {
        self.right.value
    }

    pub fn length(&self) -> Rational {
        self.r() - self.l()
    }

    pub fn is_closed(&self) -> bool {
        self.left.closed && self.right.closed
    }

    pub fn is_degenerate(&self) -> bool {
        self.l() == self.r()
    }

    /// Equal endpoint values and statuses; colors are ignored.
    pub fn same_shape(&self, other: &MixedInterval) -> bool {
        self.left.same_place(&other.left) && self.right.same_place(&other.right)
    }

    pub fn same_values(&self, other: &MixedInterval) -> bool {
        self.l() == other.l() && self.r() == other.r()
    }

    /// Whether the point set of `other` is a subset of this one.
    pub fn contains(&self, other: &MixedInterval) -> bool {
        let left_ok = self.l() < other.l()
            || (self.l() == other.l() && (self.left.closed || !other.left.closed));
        let right_ok = other.r() < self.r()
            || (other.r() == self.r() && (self.right.closed || !other.right.closed));
        left_ok && right_ok
    }

    /// `other` is contained in this interval and the two do not have
    /// identical endpoint values.
    pub fn strictly_contains(&self, other: &MixedInterval) -> bool {
        self.contains(other) && !self.same_values(other)
    }

    /// The closure `[l, r]`.
    pub fn closure(&self) -> MixedInterval {
        MixedInterval {
            left: Endpoint { closed: true, ..self.left },
            right: Endpoint { closed: true, ..self.right },
        }
    }
}

impl fmt::Display for MixedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.left.closed { '[' } else { '(' },
            self.l(),
            self.r(),
            if self.right.closed { ']' } else { ')' }
        )
    }
}

impl fmt::Debug for MixedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)?;
        let c = |e: &Endpoint| if e.is_red() { 'R' } else { 'W' };
        write!(f, "{}{}", c(&self.left), c(&self.right))
    }
}

/// Lower end of `i ∩ j` as (value, closed).
fn meet_low(i: &MixedInterval, j: &MixedInterval) -> (Rational, bool) {
    match i.l().cmp(&j.l()) {
        Ordering::Greater => (i.l(), i.left.closed),
        Ordering::Less => (j.l(), j.left.closed),
        Ordering::Equal => (i.l(), i.left.closed && j.left.closed),
    }
}

fn meet_high(i: &MixedInterval, j: &MixedInterval) -> (Rational, bool) {
    match i.r().cmp(&j.r()) {
        Ordering::Less => (i.r(), i.right.closed),
        Ordering::Greater => (j.r(), j.right.closed),
        Ordering::Equal => (i.r(), i.right.closed && j.right.closed),
    }
}

/// Whether the point sets meet. Touching ends meet only when both are closed.
pub fn intersects(i: &MixedInterval, j: &MixedInterval) -> bool {
    let (lo, lc) = meet_low(i, j);
    let (hi, hc) = meet_high(i, j);
    lo < hi || (lo == hi && lc && hc)
}

/// A point of `i ∩ j`, assuming they intersect: the single shared point
/// when the intersection is degenerate, otherwise its midpoint.
pub fn meeting_point(i: &MixedInterval, j: &MixedInterval) -> Rational {
    let (lo, _) = meet_low(i, j);
    let (hi, _) = meet_high(i, j);
    if lo == hi {
        lo
    } else {
        Rational::midpoint(lo, hi)
    }
}

/// How `x` relates to the pair `(a, b)`: it peeks into `ab` when it meets
/// `a` but misses `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Peek {
    No,
    Left,
    Right,
    Other,
}

pub fn peek(x: &MixedInterval, a: &MixedInterval, b: &MixedInterval) -> Peek {
    if !intersects(x, a) || intersects(x, b) {
        Peek::No
    } else if x.r() <= b.l() {
        Peek::Left
    } else if b.r() <= x.l() {
        Peek::Right
    } else {
        Peek::Other
    }
}

/// An interval for every vertex, indexed like the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub intervals: Vec<MixedInterval>,
}

/// JSON record for one vertex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub v: String,
    pub l: Rational,
    pub lc: bool,
    pub r: Rational,
    pub rc: bool,
}

impl IntervalRecord {
    pub fn interval(&self) -> Result<MixedInterval> {
        MixedInterval::new(self.l, self.lc, self.r, self.rc)
    }
}

impl Representation {
    pub fn new(intervals: Vec<MixedInterval>) -> Self {
        Representation { intervals }
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn get(&self, v: usize) -> &MixedInterval {
        &self.intervals[v]
    }

    fn cover(&self, g: &Graph) -> Result<()> {
        if self.len() != g.n() {
            return Err(Error::CoverMismatch {
                expected: g.n(),
                found: self.len(),
            });
        }
        Ok(())
    }

    /// `uv ∈ E ⟺ I(u) ∩ I(v) ≠ ∅` for every pair of distinct vertices.
    pub fn verify(&self, g: &Graph) -> Result<bool> {
        self.cover(g)?;
        let n = g.n();
        for u in 0..n {
            for v in (u + 1)..n {
                if g.has_edge(u, v) != intersects(&self.intervals[u], &self.intervals[v]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// First pair whose adjacency disagrees with intersection, if any.
    pub fn first_mismatch(&self, g: &Graph) -> Option<(usize, usize)> {
        let n = g.n().min(self.len());
        for u in 0..n {
            for v in (u + 1)..n {
                if g.has_edge(u, v) != intersects(&self.intervals[u], &self.intervals[v]) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// Ordered pairs `(a, b)` with `I(b)` strictly inside `I(a)`.
    pub fn strict_inclusions(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.intervals[a].strictly_contains(&self.intervals[b]) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn strict_inclusion_count(&self) -> usize {
        self.strict_inclusions().len()
    }

    pub fn is_strict(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| a == b || !self.intervals[a].strictly_contains(&self.intervals[b])))
    }

    /// All lengths equal and positive.
    pub fn is_unit(&self) -> bool {
        match self.intervals.first() {
            None => true,
            Some(first) => {
                let len = first.length();
                len > Rational::zero() && self.intervals.iter().all(|i| i.length() == len)
            }
        }
    }

    pub fn is_all_closed(&self) -> bool {
        self.intervals.iter().all(MixedInterval::is_closed)
    }

    pub fn peek(&self, x: usize, a: usize, b: usize) -> Peek {
        peek(&self.intervals[x], &self.intervals[a], &self.intervals[b])
    }

    /// Closed representation built from one point per edge: each vertex
    /// gets the hull of the points chosen on its edges. Isolated vertices
    /// get a point of their own interval (the left end when it is closed).
    pub fn mixed_to_closed(&self, g: &Graph) -> Result<Representation> {
        if !self.verify(g)? {
            return Err(Error::Precondition("representation does not match the graph".into()));
        }
        let n = g.n();
        let mut lo: Vec<Option<Rational>> = vec![None; n];
        let mut hi: Vec<Option<Rational>> = vec![None; n];
        for (u, v) in g.edges() {
            let x = meeting_point(&self.intervals[u], &self.intervals[v]);
            for w in [u, v] {
                lo[w] = Some(lo[w].map_or(x, |m| m.min(x)));
                hi[w] = Some(hi[w].map_or(x, |m| m.max(x)));
            }
        }
        let intervals = (0..n)
            .map(|v| match (lo[v], hi[v]) {
                (Some(a), Some(b)) => MixedInterval::closed(a, b),
                _ => {
                    let i = &self.intervals[v];
                    let p = if i.left.closed { i.l() } else { Rational::midpoint(i.l(), i.r()) };
                    MixedInterval::closed(p, p)
                }
            })
            .collect();
        let out = Representation { intervals };
        if !out.verify(g)? {
            return Err(Error::Internal("closed conversion changed the graph".into()));
        }
        Ok(out)
    }

    pub fn to_records(&self, labels: &[String]) -> Vec<IntervalRecord> {
        self.intervals
            .iter()
            .zip(labels)
            .map(|(i, v)| IntervalRecord {
                v: v.clone(),
                l: i.l(),
                lc: i.left.closed,
                r: i.r(),
                rc: i.right.closed,
            })
            .collect()
    }

    /// Compact JSON array of `{"v","l","lc","r","rc"}` records.
    pub fn to_json(&self, labels: &[String]) -> String {
        serde_json::to_string(&self.to_records(labels)).expect("records serialize")
    }

    /// Parses the JSON form without reference to a graph.
    pub fn parse_records(json: &str) -> Result<Vec<IntervalRecord>> {
        let records: Vec<IntervalRecord> =
            serde_json::from_str(json).map_err(|e| Error::Json(e.to_string()))?;
        for r in &records {
            r.interval()?;
        }
        Ok(records)
    }

    /// Parses the JSON form and orders it by the vertices of `g`.
    pub fn from_json(json: &str, g: &Graph) -> Result<Representation> {
        let records = Self::parse_records(json)?;
        let mut slots: Vec<Option<MixedInterval>> = vec![None; g.n()];
        for r in &records {
            let v = g.vertex(&r.v)?;
            if slots[v].replace(r.interval()?).is_some() {
                return Err(Error::Json(format!("vertex `{}` listed twice", r.v)));
            }
        }
        let intervals = slots
            .into_iter()
            .enumerate()
            .map(|(v, s)| s.ok_or_else(|| Error::Json(format!("vertex `{}` missing", g.label(v)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Representation { intervals })
    }
}
