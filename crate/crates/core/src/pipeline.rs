//! End-to-end decision: twin reduction, interval recognition, sweeps, and
//! either a strict and unit representation or a forbidden certificate.

use crate::error::{Error, Result};
use crate::forbidden::{complete_k, find_forbidden, ForbiddenCertificate};
use crate::graph::{Graph, TwinReduction};
use crate::interval::Representation;
use crate::recognition::{initial_representation, recognize_interval};
use crate::sweep::{sweep_all, SweepConfig, SweepError, SweepTrace};
use crate::unit::to_unit;

#[derive(Debug, Clone)]
pub struct Accepted {
    /// Strict mixed representation of the input graph; twins share intervals.
    pub strict: Representation,
    pub unit: Representation,
    /// Traces over the twin-free reduced graph.
    pub traces: Vec<SweepTrace>,
    pub ops: u64,
}

#[derive(Debug, Clone)]
pub enum Verdict {
    NotInterval,
    UnitMixed(Box<Accepted>),
    /// The certificate embeds into the input graph.
    NotUnitMixed(ForbiddenCertificate),
}

#[derive(Debug, Clone)]
pub struct Decision {
    pub reduction: TwinReduction,
    pub verdict: Verdict,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self.verdict, Verdict::UnitMixed(_))
    }
}

/// Outcome of the sweeps on a twin-free interval graph.
pub enum SweepResult {
    Strict(crate::sweep::SweepOutcome),
    Rejected(SweepError),
}

/// Runs recognition and the sweeps on a twin-free graph. `None` when the
/// graph is not an interval graph.
pub fn sweep_twin_free(g: &Graph, cfg: SweepConfig) -> Result<Option<SweepResult>> {
    let Some(order) = recognize_interval(g) else {
        return Ok(None);
    };
    let r0 = initial_representation(g, &order)?;
    Ok(Some(match sweep_all(g, &r0, cfg) {
        Ok(out) => SweepResult::Strict(out),
        Err(e) => SweepResult::Rejected(e),
    }))
}

pub fn decide(g: &Graph, cfg: SweepConfig) -> Result<Decision> {
    let reduction = g.reduce_twins();
    let rg = &reduction.reduced;
    let verdict = match sweep_twin_free(rg, cfg)? {
        None => Verdict::NotInterval,
        Some(SweepResult::Strict(out)) => {
            let strict = Representation::new(reduction.expand(&out.representation.intervals));
            if !strict.verify(g)? || !strict.is_strict() {
                return Err(Error::Internal("restored representation does not match the graph".into()));
            }
            let unit = to_unit(g, &strict)?;
            Verdict::UnitMixed(Box::new(Accepted {
                strict,
                unit,
                traces: out.traces,
                ops: out.ops,
            }))
        }
        Some(SweepResult::Rejected(SweepError::Precondition(e))) => return Err(Error::Internal(e)),
        // A graph containing a forbidden template may also break a runtime
        // check instead of an identification rule; either way the catalog
        // must confirm the rejection.
        Some(SweepResult::Rejected(e)) => {
            let cert = find_forbidden(rg, complete_k(rg)).ok_or_else(|| {
                Error::Internal(format!("sweep rejected a graph with no forbidden template: {e}"))
            })?;
            let embedding = cert
                .embedding
                .into_iter()
                .map(|(t, h)| (t, reduction.representative(h)))
                .collect();
            Verdict::NotUnitMixed(ForbiddenCertificate { id: cert.id, embedding })
        }
    };
    Ok(Decision { reduction, verdict })
}
