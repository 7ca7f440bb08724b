//! The sweep engine: turns a closed representation with the inclusion
//! property into a strict mixed representation of the same graph.
//!
//! Each complete sweep starts from an interval `a_0` strictly containing
//! `b_0`, walks left through the chain `a_1, a_2, ...` of peeking
//! intervals, then right through `a_1', a_2', ...`, snapping intervals onto
//! zone lines and coloring the moved endpoints red. The right part is run
//! as the left part on the mirrored representation.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::interval::{Color, Endpoint, MixedInterval, Peek, Representation};
use crate::rational::Rational;
use crate::recognition::check_hypothesis;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Base,
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    A,
    B,
    C,
    D,
}

/// The part a vertex plays in one sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Role {
    pub kind: Kind,
    pub index: usize,
    pub side: Side,
    pub terminal: bool,
    pub merging: bool,
    pub ntm: bool,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::A => 'a',
            Kind::B => 'b',
            Kind::C => 'c',
            Kind::D => 'd',
        };
        let prime = if self.side == Side::Right { "'" } else { "" };
        write!(f, "{k}_{}{prime}", self.index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum End {
    L,
    R,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    /// Step label such as `[0.5]`, `[2.4]` or `[1.1']`.
    pub step: String,
    /// 1-based sweep number.
    pub sweep: usize,
    pub vertex: usize,
    pub from: MixedInterval,
    pub to: MixedInterval,
    /// Endpoints that turned red in this event.
    pub reddened: Vec<End>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZoneLine {
    pub position: Rational,
    pub sweep: usize,
    pub side: Side,
}

/// Everything one complete sweep did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepTrace {
    pub sweep: usize,
    /// The starting pair `(a_0, b_0)`.
    pub pair: (usize, usize),
    pub zone_lines: Vec<ZoneLine>,
    pub roles: Vec<(usize, Role)>,
    pub events: Vec<TraceEvent>,
}

impl SweepTrace {
    /// JSON lines, one event per line.
    pub fn to_json_lines(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&event_json(e, labels));
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize)]
struct IntervalJson {
    l: String,
    lc: bool,
    r: String,
    rc: bool,
}

impl From<&MixedInterval> for IntervalJson {
    fn from(i: &MixedInterval) -> Self {
        IntervalJson {
            l: i.l().to_string(),
            lc: i.left.closed,
            r: i.r().to_string(),
            rc: i.right.closed,
        }
    }
}

#[derive(Serialize)]
struct EventJson<'a> {
    step: &'a str,
    sweep: usize,
    v: &'a str,
    from: IntervalJson,
    to: IntervalJson,
    reddened: Vec<&'static str>,
}

/// One trace event as a JSON object with keys in a fixed order.
pub fn event_json(e: &TraceEvent, labels: &[String]) -> String {
    let ev = EventJson {
        step: &e.step,
        sweep: e.sweep,
        v: &labels[e.vertex],
        from: (&e.from).into(),
        to: (&e.to).into(),
        reddened: e
            .reddened
            .iter()
            .map(|x| match x {
                End::L => "L",
                End::R => "R",
            })
            .collect(),
    };
    serde_json::to_string(&ev).expect("trace event serializes")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The input cannot satisfy the rule; the witnesses come from the
    /// identification that failed.
    #[error("forbidden structure at {step} ({rule}), witnesses {witnesses:?}")]
    ForbiddenStructure {
        step: String,
        rule: &'static str,
        witnesses: Vec<usize>,
    },
    #[error("invariant violated at {step}: {detail}")]
    InvariantViolation { step: String, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    /// Run the per-sweep runtime assertions (not counted as operations).
    pub check_invariants: bool,
    pub record_trace: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            check_invariants: true,
            record_trace: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub representation: Representation,
    pub traces: Vec<SweepTrace>,
    /// Elementary operations performed by the engine.
    pub ops: u64,
}

/// Roles identified before the base step changes anything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseRoles {
    pub a0: usize,
    pub b0: usize,
    pub c0: Option<usize>,
    pub d0: Option<usize>,
    pub a1: usize,
    pub c1: Option<usize>,
    pub b1: Option<usize>,
    pub a1p: usize,
    pub d1p: Option<usize>,
    pub b1p: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Move {
    Left,
    Right,
    Stay,
}

/// The strictly containing interval with leftmost left end (ties: smaller
/// right end, then smaller vertex index) and the interval inside it.
pub fn find_ab_pair(r: &Representation) -> Result<Option<(usize, usize)>, SweepError> {
    let mut ops = 0;
    find_ab_pair_counted(r, &mut ops)
}

fn rkey(i: &MixedInterval) -> (Rational, bool) {
    (i.r(), i.right.closed)
}

fn find_ab_pair_counted(r: &Representation, ops: &mut u64) -> Result<Option<(usize, usize)>, SweepError> {
    let n = r.len();
    let iv = &r.intervals;
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&x, &y| {
        *ops += 1;
        (iv[x].l(), iv[x].r(), x).cmp(&(iv[y].l(), iv[y].r(), y))
    });
    // Walk groups of equal left end from the right, keeping the smallest
    // right key among intervals starting strictly further right.
    let mut best: Option<(Rational, bool)> = None;
    let mut chosen: Option<usize> = None;
    let mut end = n;
    while end > 0 {
        let mut start = end - 1;
        while start > 0 && iv[idx[start - 1]].l() == iv[idx[end - 1]].l() {
            start -= 1;
        }
        let group = &idx[start..end];
        *ops += group.len() as u64;
        let min_all = group.iter().map(|&v| iv[v].r()).min();
        let min_open = group.iter().filter(|&&v| !iv[v].left.closed).map(|&v| iv[v].r()).min();
        for &a in group {
            let outer = best.is_some_and(|b| b <= rkey(&iv[a]));
            let same_start = if iv[a].left.closed {
                min_all.is_some_and(|m| m < iv[a].r())
            } else {
                min_open.is_some_and(|m| m < iv[a].r())
            };
            if outer || same_start {
                // Groups are visited right to left, so later hits win ties on L.
                let better = match chosen {
                    None => true,
                    Some(c) => (iv[a].l(), iv[a].r(), a) < (iv[c].l(), iv[c].r(), c),
                };
                if better {
                    chosen = Some(a);
                }
            }
        }
        let group_min = group.iter().map(|&v| rkey(&iv[v])).min();
        best = match (best, group_min) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        end = start;
    }
    let Some(a) = chosen else {
        return Ok(None);
    };
    *ops += n as u64;
    let inside: Vec<usize> = (0..n).filter(|&b| b != a && iv[a].strictly_contains(&iv[b])).collect();
    match inside.as_slice() {
        [b] => Ok(Some((a, *b))),
        [] => Err(SweepError::InvariantViolation {
            step: "[0.1]".into(),
            detail: "pair search found no contained interval".into(),
        }),
        more => Err(SweepError::ForbiddenStructure {
            step: "[0.1]".into(),
            rule: "interval strictly contains two others",
            witnesses: std::iter::once(a).chain(more.iter().copied()).collect(),
        }),
    }
}

fn reflect(i: &MixedInterval) -> MixedInterval {
    MixedInterval {
        left: Endpoint {
            value: -i.right.value,
            ..i.right
        },
        right: Endpoint {
            value: -i.left.value,
            ..i.left
        },
    }
}

fn ep(value: Rational, closed: bool, red: bool) -> Endpoint {
    Endpoint {
        value,
        closed,
        color: if red { Color::Red } else { Color::White },
    }
}

fn red_interval(l: Rational, lc: bool, r: Rational, rc: bool) -> MixedInterval {
    MixedInterval {
        left: ep(l, lc, true),
        right: ep(r, rc, true),
    }
}

/// Chain data of one part, in the frame the part ran in.
struct PartRecord {
    a: Vec<usize>,
    b: Vec<Option<usize>>,
    d: Vec<Option<usize>>,
}

struct PartStart {
    a_prev: usize,
    b_prev: Option<usize>,
    d_prev: Option<usize>,
    m_prev: Rational,
    m_prev2: Rational,
    a: usize,
    b: Option<usize>,
    c: Option<usize>,
}

struct Engine<'g> {
    g: &'g Graph,
    cfg: SweepConfig,
    rep: Representation,
    initial: Representation,
    reflected: bool,
    ops: u64,
    vhash: Vec<u64>,
    nhash: Vec<u64>,
    by_hash: HashMap<u64, Vec<usize>>,
    sweep: usize,
    trace: SweepTrace,
    /// Reddened endpoints allowed off this sweep's zone lines.
    off_zone: Vec<(usize, End)>,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

impl<'g> Engine<'g> {
    fn new(g: &'g Graph, rep: Representation, cfg: SweepConfig) -> Self {
        let n = g.n();
        let vhash: Vec<u64> = (0..n as u64).map(splitmix).collect();
        let nhash: Vec<u64> = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&u| g.closed_adj(v, u))
                    .fold(0u64, |acc, u| acc.wrapping_add(vhash[u]))
            })
            .collect();
        let mut by_hash: HashMap<u64, Vec<usize>> = HashMap::new();
        for (v, &h) in nhash.iter().enumerate() {
            by_hash.entry(h).or_default().push(v);
        }
        Engine {
            g,
            cfg,
            initial: rep.clone(),
            rep,
            reflected: false,
            ops: (n * n) as u64,
            vhash,
            nhash,
            by_hash,
            sweep: 0,
            trace: SweepTrace {
                sweep: 0,
                pair: (0, 0),
                zone_lines: Vec::new(),
                roles: Vec::new(),
                events: Vec::new(),
            },
            off_zone: Vec::new(),
        }
    }

    fn n(&self) -> usize {
        self.g.n()
    }

    fn iv(&self, v: usize) -> MixedInterval {
        self.rep.intervals[v]
    }

    fn label(&self, v: usize) -> &str {
        self.g.label(v)
    }

    fn step(&self, k: usize, s: u32) -> String {
        if self.reflected {
            format!("[{k}.{s}']")
        } else {
            format!("[{k}.{s}]")
        }
    }

    fn violation(&self, step: &str, detail: impl Into<String>) -> SweepError {
        SweepError::InvariantViolation {
            step: step.to_string(),
            detail: detail.into(),
        }
    }

    fn flip(&mut self) {
        for i in &mut self.rep.intervals {
            *i = reflect(i);
        }
        self.reflected = !self.reflected;
        self.ops += self.n() as u64;
    }

    fn orig_end(&self, e: End) -> End {
        match (self.reflected, e) {
            (false, e) => e,
            (true, End::L) => End::R,
            (true, End::R) => End::L,
        }
    }

    fn orig_value(&self, x: Rational) -> Rational {
        if self.reflected {
            -x
        } else {
            x
        }
    }

    fn add_zone(&mut self, position: Rational, side: Side) {
        let position = self.orig_value(position);
        self.trace.zone_lines.push(ZoneLine {
            position,
            sweep: self.sweep,
            side,
        });
    }

    fn add_role(&mut self, v: usize, kind: Kind, index: usize, side: Side) {
        let kind = match (self.reflected, kind) {
            (true, Kind::C) => Kind::D,
            (true, Kind::D) => Kind::C,
            (_, k) => k,
        };
        self.trace.roles.push((
            v,
            Role {
                kind,
                index,
                side,
                terminal: false,
                merging: false,
                ntm: false,
            },
        ));
    }

    fn mark_role(&mut self, v: usize, f: impl Fn(&mut Role)) {
        if let Some((_, r)) = self.trace.roles.iter_mut().rev().find(|(u, _)| *u == v) {
            f(r);
        }
    }

    /// Replaces `I(v)`, refusing to move a red endpoint.
    fn set(&mut self, step: &str, v: usize, to: MixedInterval, moves: (Move, Move)) -> Result<(), SweepError> {
        let from = self.iv(v);
        for (old, new, end) in [(from.left, to.left, "left"), (from.right, to.right, "right")] {
            if old.is_red() && !(old.same_place(&new) && new.is_red()) {
                return Err(self.violation(step, format!("red {end} endpoint of {} would change", self.label(v))));
            }
        }
        to.validate()
            .map_err(|e| self.violation(step, format!("{}: {e}", self.label(v))))?;
        if self.cfg.check_invariants {
            for (old, new, mv, end) in [(from.left, to.left, moves.0, "left"), (from.right, to.right, moves.1, "right")] {
                let ok = match mv {
                    Move::Left => new.value <= old.value,
                    Move::Right => new.value >= old.value,
                    Move::Stay => new.value == old.value,
                };
                if !ok {
                    return Err(self.violation(
                        step,
                        format!("{end} endpoint of {} moved against its direction", self.label(v)),
                    ));
                }
            }
        }
        let mut reddened = Vec::new();
        if !from.left.is_red() && to.left.is_red() {
            reddened.push(self.orig_end(End::L));
        }
        if !from.right.is_red() && to.right.is_red() {
            reddened.push(self.orig_end(End::R));
        }
        reddened.sort_by_key(|e| *e == End::R);
        self.rep.intervals[v] = to;
        self.ops += 1;
        if self.cfg.record_trace || self.cfg.check_invariants {
            let (from, to) = if self.reflected { (reflect(&from), reflect(&to)) } else { (from, to) };
            self.trace.events.push(TraceEvent {
                step: step.to_string(),
                sweep: self.sweep,
                vertex: v,
                from,
                to,
                reddened,
            });
        }
        Ok(())
    }

    /// Vertices `x` peeking into `a t` from `side` for some `t` in `targets`.
    fn peekers(&mut self, a: usize, targets: &[usize], side: Peek) -> Vec<usize> {
        let n = self.n();
        self.ops += (n * targets.len().max(1)) as u64;
        (0..n)
            .filter(|&x| x != a && !targets.contains(&x))
            .filter(|&x| targets.iter().any(|&t| self.rep.peek(x, a, t) == side))
            .collect()
    }

    fn inside(&mut self, a: usize) -> Vec<usize> {
        let n = self.n();
        self.ops += n as u64;
        let outer = self.iv(a);
        (0..n)
            .filter(|&b| b != a && outer.strictly_contains(&self.rep.intervals[b]))
            .collect()
    }

    fn unique_inside(&mut self, step: &str, a: usize) -> Result<Option<usize>, SweepError> {
        let found = self.inside(a);
        match found.as_slice() {
            [] => Ok(None),
            [b] => Ok(Some(*b)),
            more => Err(SweepError::ForbiddenStructure {
                step: step.to_string(),
                rule: "interval strictly contains two others",
                witnesses: std::iter::once(a).chain(more.iter().copied()).collect(),
            }),
        }
    }

    /// The vertex `w != a` with `N[w] = N[a] \ excluded`.
    fn find_neighborhood(&mut self, a: usize, excluded: &[usize]) -> Option<usize> {
        let n = self.n();
        let mut ex: Vec<usize> = excluded.iter().copied().filter(|&p| self.g.closed_adj(a, p)).collect();
        ex.sort_unstable();
        ex.dedup();
        self.ops += ex.len() as u64 + 1;
        let target = ex
            .iter()
            .fold(self.nhash[a], |acc, &p| acc.wrapping_sub(self.vhash[p]));
        let candidates = self.by_hash.get(&target).cloned().unwrap_or_default();
        for w in candidates {
            if w == a {
                continue;
            }
            self.ops += n as u64;
            let matches = (0..n).all(|u| self.g.closed_adj(w, u) == (self.g.closed_adj(a, u) && ex.binary_search(&u).is_err()));
            if matches {
                return Some(w);
            }
        }
        None
    }

    /// Splits one or two leftward peekers into `(a, c)` with `R(a) < R(c)`.
    fn split_left(&self, step: &str, a: usize, targets: &[usize], peekers: &[usize]) -> Result<(usize, Option<usize>), SweepError> {
        match *peekers {
            [] => Err(self.violation(step, format!("nothing peeks into the pair at {} from the left", self.label(a)))),
            [x] => Ok((x, None)),
            [x, y] => {
                let (p, q) = (self.iv(x), self.iv(y));
                if rkey(&p) == rkey(&q) {
                    return Err(self.violation(step, "two peekers share a right endpoint"));
                }
                let (lo, hi) = if rkey(&p) < rkey(&q) { (x, y) } else { (y, x) };
                if self.iv(lo).l() >= self.iv(hi).l() {
                    return Err(SweepError::ForbiddenStructure {
                        step: step.to_string(),
                        rule: "one peeker contains the other",
                        witnesses: vec![a, lo, hi],
                    });
                }
                Ok((lo, Some(hi)))
            }
            _ => Err(SweepError::ForbiddenStructure {
                step: step.to_string(),
                rule: "three or more peekers from one side",
                witnesses: std::iter::once(a)
                    .chain(targets.iter().copied())
                    .chain(peekers.iter().copied())
                    .collect(),
            }),
        }
    }

    fn union(mut a: Vec<usize>, b: Vec<usize>) -> Vec<usize> {
        for x in b {
            if !a.contains(&x) {
                a.push(x);
            }
        }
        a.sort_unstable();
        a
    }

    fn identify_base(&mut self, a0: usize, b0: usize) -> Result<BaseRoles, SweepError> {
        let pl = self.peekers(a0, &[b0], Peek::Left);
        let pr = self.peekers(a0, &[b0], Peek::Right);
        let d0 = self.find_neighborhood(a0, &pr);
        let c0 = self.find_neighborhood(a0, &pl);

        let left_targets: Vec<usize> = std::iter::once(b0).chain(c0).collect();
        let left = match c0 {
            Some(c) => {
                let extra = self.peekers(a0, &[c], Peek::Left);
                Self::union(pl, extra)
            }
            None => pl,
        };
        let right_targets: Vec<usize> = std::iter::once(b0).chain(d0).collect();
        let right = match d0 {
            Some(d) => {
                let extra = self.peekers(a0, &[d], Peek::Right);
                Self::union(pr, extra)
            }
            None => pr,
        };
        let (a1, c1) = self.split_left("[0.3]", a0, &left_targets, &left)?;
        // Mirror rule on the right: a_1' has the larger left end.
        self.flip();
        let split = self.split_left("[0.3]", a0, &right_targets, &right);
        self.flip();
        let (a1p, d1p) = split?;
        let b1 = self.unique_inside("[0.4]", a1)?;
        let b1p = self.unique_inside("[0.4]", a1p)?;
        Ok(BaseRoles {
            a0,
            b0,
            c0,
            d0,
            a1,
            c1,
            b1,
            a1p,
            d1p,
            b1p,
        })
    }

    fn check_sweep_start(&self) -> Result<(), SweepError> {
        for (v, (now, init)) in self.rep.intervals.iter().zip(&self.initial.intervals).enumerate() {
            for (e, i, end) in [(now.left, init.left, "left"), (now.right, init.right, "right")] {
                if !e.is_red() && !(e.closed && e.value == i.value) {
                    return Err(self.violation(
                        "[0.1]",
                        format!("white {end} endpoint of {} left its initial closed position", self.label(v)),
                    ));
                }
            }
        }
        Ok(())
    }

    fn run_sweep(&mut self, a0: usize, b0: usize) -> Result<(), SweepError> {
        self.sweep += 1;
        self.trace = SweepTrace {
            sweep: self.sweep,
            pair: (a0, b0),
            zone_lines: Vec::new(),
            roles: Vec::new(),
            events: Vec::new(),
        };
        self.off_zone.clear();
        let checks = self.cfg.check_invariants;
        let start = self.rep.clone();
        let start_count = if checks { start.strict_inclusion_count() } else { 0 };
        if checks {
            self.check_sweep_start()?;
            let (l, r) = (start.intervals[a0], start.intervals[b0]);
            if [l.left, l.right, r.left, r.right].iter().any(Endpoint::is_red) {
                return Err(self.violation("[0.1]", "starting pair has a red endpoint"));
            }
        }

        // [0.1]
        let m0 = self.iv(a0).l();
        let m0p = self.iv(a0).r();
        self.add_zone(m0, Side::Base);
        self.add_zone(m0p, Side::Base);
        self.add_role(a0, Kind::A, 0, Side::Base);
        self.add_role(b0, Kind::B, 0, Side::Base);
        // [0.2]-[0.4]
        let roles = self.identify_base(a0, b0)?;
        if let Some(c0) = roles.c0 {
            self.add_role(c0, Kind::C, 0, Side::Base);
        }
        if let Some(d0) = roles.d0 {
            self.add_role(d0, Kind::D, 0, Side::Base);
        }
        // [0.5]
        self.set("[0.5]", b0, MixedInterval { left: ep(m0, false, false), right: ep(m0p, false, false) }, (Move::Left, Move::Right))?;
        if let Some(d0) = roles.d0 {
            let i = self.iv(d0);
            if !i.left.is_red() && !i.right.is_red() {
                self.set("[0.5]", d0, red_interval(m0, true, m0p, false), (Move::Right, Move::Right))?;
            }
        }
        if let Some(c0) = roles.c0 {
            let i = self.iv(c0);
            if !i.left.is_red() && !i.right.is_red() {
                self.set("[0.5]", c0, red_interval(m0, false, m0p, true), (Move::Left, Move::Left))?;
            }
        }
        // [0.6]
        for v in [a0, b0] {
            let i = self.iv(v);
            self.set("[0.6]", v, red_interval(i.l(), i.left.closed, i.r(), i.right.closed), (Move::Stay, Move::Stay))?;
        }

        let left = self.part(
            Side::Left,
            PartStart {
                a_prev: a0,
                b_prev: Some(b0),
                d_prev: roles.d0,
                m_prev: m0,
                m_prev2: m0p,
                a: roles.a1,
                b: roles.b1,
                c: roles.c1,
            },
        )?;
        let ntm_pass = checks || self.cfg.record_trace;
        if ntm_pass {
            self.check_ntm(&start, &left)?;
        }

        self.flip();
        let right = self.part(
            Side::Right,
            PartStart {
                a_prev: a0,
                b_prev: Some(b0),
                d_prev: roles.c0,
                m_prev: -m0p,
                m_prev2: -m0,
                a: roles.a1p,
                b: roles.b1p,
                c: roles.d1p,
            },
        );
        let right = match right {
            Ok(r) => r,
            Err(e) => {
                self.flip();
                return Err(e);
            }
        };
        if ntm_pass {
            let mirrored = Representation::new(start.intervals.iter().map(reflect).collect());
            let res = self.check_ntm(&mirrored, &right);
            self.flip();
            res?;
        } else {
            self.flip();
        }

        if checks {
            self.check_sweep_end(&start, start_count)?;
        }
        Ok(())
    }

    /// One part of a sweep, walking left in the current frame.
    fn part(&mut self, side: Side, s: PartStart) -> Result<PartRecord, SweepError> {
        let n = self.n();
        let mut rec = PartRecord {
            a: vec![s.a_prev],
            b: vec![s.b_prev],
            d: vec![s.d_prev],
        };
        let (mut a_prev, mut d_prev) = (s.a_prev, s.d_prev);
        let (mut m_prev, mut m_prev2) = (s.m_prev, s.m_prev2);
        let (mut a, mut b, mut c) = (s.a, s.b, s.c);
        let mut k = 1;
        loop {
            if k > n + 1 {
                return Err(self.violation(&self.step(k, 1), "sweep part does not terminate"));
            }
            rec.a.push(a);
            rec.b.push(b);
            self.add_role(a, Kind::A, k, side);
            if let Some(b) = b {
                self.add_role(b, Kind::B, k, side);
            }
            if let Some(c) = c {
                self.add_role(c, Kind::C, k, side);
            }

            // [k.1]
            let st = self.step(k, 1);
            let cur = self.iv(a);
            if cur.right.is_red() {
                return Err(self.violation(&st, format!("right endpoint of {} is already red", self.label(a))));
            }
            let to = MixedInterval {
                left: cur.left,
                right: ep(m_prev, true, true),
            };
            self.set(&st, a, to, (Move::Stay, Move::Left))?;
            let merging = c.is_some() && cur.left.is_red();
            if let (true, Some(cv)) = (merging, c) {
                self.set(&st, cv, red_interval(cur.l(), false, m_prev, true), (Move::Left, Move::Left))?;
                let off = self.orig_end(End::L);
                self.off_zone.push((cv, off));
                self.mark_role(a, |r| r.merging = true);
                self.mark_role(cv, |r| r.merging = true);
                rec.d.push(None);
                break;
            }
            if b.is_none() && c.is_none() {
                self.mark_role(a, |r| r.terminal = true);
                rec.d.push(None);
                break;
            }

            // [k.2]
            let st = self.step(k, 2);
            let cur = self.iv(a);
            self.set(&st, a, MixedInterval { left: ep(cur.l(), cur.left.closed, true), right: cur.right }, (Move::Stay, Move::Stay))?;
            let m_k = cur.l();
            self.add_zone(m_k, side);
            let excluded: Vec<usize> = std::iter::once(a_prev).chain(d_prev).collect();
            let d = self.find_neighborhood(a, &excluded);
            if let Some(d) = d {
                self.add_role(d, Kind::D, k, side);
            }
            rec.d.push(d);

            // [k.3]
            let st = self.step(k, 3);
            let targets: Vec<usize> = b.into_iter().chain(c).collect();
            let peekers = self.peekers(a, &targets, Peek::Left);
            let (a_next, c_next) = self.split_left(&st, a, &targets, &peekers)?;
            let b_next = self.unique_inside(&st, a_next)?;

            // [k.4]
            let st = self.step(k, 4);
            if let Some(bv) = b {
                self.set(&st, bv, red_interval(m_k, false, m_prev, false), (Move::Left, Move::Right))?;
            }
            if let Some(cv) = c {
                self.set(&st, cv, red_interval(m_k, false, m_prev, true), (Move::Left, Move::Left))?;
            }

            // [k.5]
            let st = self.step(k, 5);
            if let Some(dv) = d {
                let i = self.iv(dv);
                let white = !i.left.is_red() && !i.right.is_red();
                let prev_matches = match d_prev {
                    None => true,
                    Some(p) => self.iv(p).same_shape(&MixedInterval {
                        left: Endpoint::new(m_prev, true),
                        right: Endpoint::new(m_prev2, false),
                    }),
                };
                if white && prev_matches {
                    self.set(&st, dv, red_interval(m_k, true, m_prev, false), (Move::Right, Move::Right))?;
                }
            }

            a_prev = a;
            d_prev = d;
            m_prev2 = m_prev;
            m_prev = m_k;
            a = a_next;
            b = b_next;
            c = c_next;
            k += 1;
        }
        Ok(rec)
    }

    /// Marks the `d` vertices that need to move. With invariant checks on,
    /// each must still be white when its sweep starts.
    fn check_ntm(&mut self, start: &Representation, rec: &PartRecord) -> Result<(), SweepError> {
        let len = rec.d.len();
        let mut ntm = vec![false; len + 1];
        for j in (0..len).rev() {
            let Some(d) = rec.d[j] else { continue };
            let by_peek = match (rec.a.get(j + 1), rec.b.get(j + 1).copied().flatten()) {
                (Some(&a), Some(b)) => start.peek(d, a, b) == Peek::Right,
                _ => false,
            };
            let by_chain = rec.d.get(j + 1).copied().flatten().is_some() && ntm[j + 1];
            ntm[j] = by_peek || by_chain;
            if ntm[j] {
                self.mark_role(d, |r| r.ntm = true);
                let i = start.intervals[d];
                if self.cfg.check_invariants && (i.left.is_red() || i.right.is_red()) {
                    return Err(self.violation(
                        &self.step(j.max(1), 5),
                        format!("vertex {} needs to move but was already red", self.label(d)),
                    ));
                }
            }
        }
        Ok(())
    }

    fn check_sweep_end(&self, start: &Representation, start_count: usize) -> Result<(), SweepError> {
        let step = format!("sweep {}", self.sweep);
        for (v, (old, new)) in start.intervals.iter().zip(&self.rep.intervals).enumerate() {
            for (o, e) in [(old.left, new.left), (old.right, new.right)] {
                if o.is_red() && !(e.is_red() && o.same_place(&e)) {
                    return Err(self.violation(&step, format!("red endpoint of {} moved", self.label(v))));
                }
            }
        }
        match self.rep.verify(self.g) {
            Ok(true) => {}
            _ => {
                let detail = match self.rep.first_mismatch(self.g) {
                    Some((u, v)) => format!("adjacency of {} and {} no longer matches", self.label(u), self.label(v)),
                    None => "representation no longer matches the graph".into(),
                };
                return Err(self.violation(&step, detail));
            }
        }
        let count = self.rep.strict_inclusion_count();
        if count >= start_count {
            return Err(self.violation(&step, format!("strict inclusions went from {start_count} to {count}")));
        }
        let zones: Vec<Rational> = self.trace.zone_lines.iter().map(|z| z.position).collect();
        for e in &self.trace.events {
            for &end in &e.reddened {
                if self.off_zone.contains(&(e.vertex, end)) {
                    continue;
                }
                let value = match end {
                    End::L => e.to.l(),
                    End::R => e.to.r(),
                };
                if !zones.contains(&value) {
                    return Err(self.violation(
                        &e.step,
                        format!("endpoint of {} reddened off the zone lines", self.label(e.vertex)),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// One complete sweep from the pair chosen by [`find_ab_pair`].
/// Returns `Ok(None)` when the representation is already strict.
pub fn run_sweep(
    g: &Graph,
    r: &Representation,
    cfg: SweepConfig,
) -> Result<Option<(Representation, SweepTrace)>, SweepError> {
    let mut engine = Engine::new(g, r.clone(), cfg);
    let Some((a, b)) = find_ab_pair_counted(&engine.rep, &mut engine.ops)? else {
        return Ok(None);
    };
    engine.run_sweep(a, b)?;
    Ok(Some((engine.rep, engine.trace)))
}

/// Base-step roles for the pair `(a0, b0)` without changing anything.
pub fn identify_base(g: &Graph, r: &Representation, a0: usize, b0: usize) -> Result<BaseRoles, SweepError> {
    if !r.intervals[a0].strictly_contains(&r.intervals[b0]) {
        return Err(SweepError::Precondition("not an ab-pair".into()));
    }
    let mut engine = Engine::new(g, r.clone(), SweepConfig::default());
    engine.identify_base(a0, b0)
}

/// Sweeps until no strict inclusion is left.
pub fn sweep_all(g: &Graph, r: &Representation, cfg: SweepConfig) -> Result<SweepOutcome, SweepError> {
    if !g.is_twin_free() {
        return Err(SweepError::Precondition("graph has twins".into()));
    }
    if !check_hypothesis(g, r) {
        return Err(SweepError::Precondition(
            "representation is not closed with distinct endpoints and the inclusion property".into(),
        ));
    }
    let bound = r.strict_inclusion_count();
    let mut engine = Engine::new(g, r.clone(), cfg);
    let mut traces = Vec::new();
    while let Some((a, b)) = find_ab_pair_counted(&engine.rep, &mut engine.ops)? {
        if engine.sweep >= bound {
            return Err(SweepError::InvariantViolation {
                step: "[0.1]".into(),
                detail: format!("more than {bound} sweeps"),
            });
        }
        engine.run_sweep(a, b)?;
        if cfg.record_trace {
            traces.push(std::mem::replace(
                &mut engine.trace,
                SweepTrace {
                    sweep: 0,
                    pair: (0, 0),
                    zone_lines: Vec::new(),
                    roles: Vec::new(),
                    events: Vec::new(),
                },
            ));
        }
    }
    let ok = engine.rep.is_strict() && matches!(engine.rep.verify(g), Ok(true));
    if !ok {
        return Err(SweepError::InvariantViolation {
            step: "end".into(),
            detail: "final representation is not a strict representation of the graph".into(),
        });
    }
    Ok(SweepOutcome {
        representation: engine.rep,
        traces,
        ops: engine.ops,
    })
}
