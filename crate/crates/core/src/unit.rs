//! Conversion of a strict mixed representation into a unit one.
//!
//! Closures of a strict representation may still nest when an open end
//! shares its value with a closed end of a shorter interval, as with
//! `(2, 5)` and `[3, 5]`. Such open ends are first pulled inward by less
//! than half the smallest gap between endpoint values, which changes no
//! intersection. The closures are then deduplicated and each distinct
//! closure `[L, R]` gets a new left end `x`, with right end `x + 1`. For every ordered pair of
//! closures the sign of `R(u) - L(v)` is kept, which preserves both
//! intersections and exact touching. These sign conditions form a system of
//! difference constraints, solved exactly by Bellman-Ford. The original
//! open/closed statuses are then put back on every vertex.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::interval::{Endpoint, MixedInterval, Representation};
use crate::rational::Rational;

/// Distinct closures of a representation and the closure index of each
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closures {
    pub distinct: Vec<(Rational, Rational)>,
    pub of_vertex: Vec<usize>,
}

pub fn closures(r: &Representation) -> Closures {
    let mut distinct: Vec<(Rational, Rational)> = Vec::new();
    let mut of_vertex = Vec::with_capacity(r.len());
    for i in &r.intervals {
        let key = (i.l(), i.r());
        let idx = match distinct.iter().position(|k| *k == key) {
            Some(p) => p,
            None => {
                distinct.push(key);
                distinct.len() - 1
            }
        };
        of_vertex.push(idx);
    }
    Closures { distinct, of_vertex }
}

/// Checks `R(u) = L(v) ⟺ R'(u) = L'(v)` over all pairs of distinct
/// closures, where `before` and `after` list the same closures in order.
pub fn touching_preserved(before: &[(Rational, Rational)], after: &[(Rational, Rational)]) -> bool {
    before.len() == after.len()
        && (0..before.len()).all(|u| {
            (0..before.len()).all(|v| u == v || (before[u].1 == before[v].0) == (after[u].1 == after[v].0))
        })
}

/// Pulls in every open end that makes one closure nest in another.
/// Intersections and open/closed flags are unchanged.
pub fn separate_closures(r: &Representation) -> Representation {
    let mut values: Vec<Rational> = r.intervals.iter().flat_map(|i| [i.l(), i.r()]).collect();
    values.sort_unstable();
    values.dedup();
    let Some(gap) = values.windows(2).map(|w| w[1] - w[0]).min() else {
        return r.clone();
    };
    let delta = gap / Rational::integer(4);
    let iv = &r.intervals;
    let intervals = iv
        .iter()
        .map(|u| {
            let mut out = *u;
            // An open right end at p over a shorter interval closed at p.
            if !u.right.closed && iv.iter().any(|v| v.right.closed && v.r() == u.r() && u.l() < v.l()) {
                out.right.value = u.r() - delta;
            }
            if !u.left.closed && iv.iter().any(|v| v.left.closed && v.l() == u.l() && v.r() < u.r()) {
                out.left.value = u.l() + delta;
            }
            out
        })
        .collect();
    Representation::new(intervals)
}

/// No closure lies inside another unless they are equal.
pub fn closures_proper(r: &Representation) -> bool {
    let c = closures(r).distinct;
    c.iter()
        .all(|a| c.iter().all(|b| a == b || !(b.0 <= a.0 && a.1 <= b.1)))
}

struct Constraint {
    // x[to] - x[from] <= w
    from: usize,
    to: usize,
    w: Rational,
}

pub fn to_unit(g: &Graph, r: &Representation) -> Result<Representation> {
    if !r.verify(g)? {
        return Err(Error::Precondition("representation does not match the graph".into()));
    }
    if !r.is_strict() {
        return Err(Error::NotStrict);
    }
    if let Some(i) = r.intervals.iter().find(|i| i.is_degenerate()) {
        return Err(Error::Precondition(format!("degenerate interval {i} cannot be made unit")));
    }
    let r = &separate_closures(r);
    if !r.verify(g)? || !closures_proper(r) {
        return Err(Error::Internal("closures could not be separated".into()));
    }
    let c = closures(r);
    let m = c.distinct.len();
    let eps = Rational::new(1, 2 * m as i64 + 2);
    let one = Rational::one();

    let mut cons = Vec::new();
    for u in 0..m {
        for v in 0..m {
            if u == v {
                continue;
            }
            let (ru, lv) = (c.distinct[u].1, c.distinct[v].0);
            match ru.cmp(&lv) {
                // x_u + 1 < x_v
                std::cmp::Ordering::Less => cons.push(Constraint { from: v, to: u, w: -one - eps }),
                std::cmp::Ordering::Equal => {
                    cons.push(Constraint { from: v, to: u, w: -one });
                    cons.push(Constraint { from: u, to: v, w: one });
                }
                // x_u + 1 > x_v
                std::cmp::Ordering::Greater => cons.push(Constraint { from: u, to: v, w: one - eps }),
            }
        }
    }

    // Bellman-Ford from a virtual source joined to every variable at 0.
    let mut x = vec![Rational::zero(); m];
    let mut stable = false;
    for _ in 0..=m {
        let mut changed = false;
        for k in &cons {
            let cand = x[k.from] + k.w;
            if cand < x[k.to] {
                x[k.to] = cand;
                changed = true;
            }
        }
        if !changed {
            stable = true;
            break;
        }
    }
    if !stable {
        return Err(Error::Internal("unit constraint system is infeasible".into()));
    }

    let after: Vec<(Rational, Rational)> = x.iter().map(|&a| (a, a + one)).collect();
    if !touching_preserved(&c.distinct, &after) {
        return Err(Error::Internal("unit conversion broke endpoint touching".into()));
    }

    let intervals = r
        .intervals
        .iter()
        .zip(&c.of_vertex)
        .map(|(orig, &k)| MixedInterval {
            left: Endpoint::new(after[k].0, orig.left.closed),
            right: Endpoint::new(after[k].1, orig.right.closed),
        })
        .collect();
    let out = Representation::new(intervals);
    if !out.verify(g)? || !out.is_unit() {
        return Err(Error::Internal("unit conversion produced a wrong representation".into()));
    }
    Ok(out)
}
