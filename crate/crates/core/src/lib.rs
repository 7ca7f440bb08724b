//! Deciding mixed unit interval graphs.
//!
//! A twin-free interval graph gets a closed representation from a clique
//! ordering; repeated sweeps then remove every strict inclusion using open
//! and half-open intervals. The result converts to a unit representation.
//! When the sweeps fail, the graph contains one of the forbidden graphs
//! and a certificate naming it is produced.

pub mod error;
pub mod forbidden;
pub mod format;
pub mod graph;
pub mod interval;
pub mod oracle;
pub mod pipeline;
pub mod rational;
pub mod recognition;
pub mod sweep;
pub mod unit;

pub use error::{Error, Result};
pub use forbidden::{find_forbidden, generate, generate_h, validate_certificate, ForbiddenCertificate, ForbiddenId};
pub use graph::{canonical_form, is_induced_isomorphic, Graph, TwinReduction};
pub use interval::{intersects, Color, Endpoint, MixedInterval, Peek, Representation};
pub use pipeline::{decide, Decision, Verdict};
pub use rational::Rational;
pub use recognition::{check_hypothesis, initial_representation, recognize_interval, CliqueOrdering};
pub use sweep::{find_ab_pair, run_sweep, sweep_all, SweepConfig, SweepError, SweepOutcome, SweepTrace};
pub use unit::to_unit;
