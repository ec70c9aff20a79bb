//! System actor model: actors and environments with acquaintance-constrained
//! messaging, an action algebra with void actions, local-clock temporal
//! relations over exact rationals, actor classification and equivalence, a
//! deterministic discrete-event engine, and an executable law registry.
//!
//! Every axiom and proposition of the model is a witness-producing check:
//! a failed law names the concrete elements that break it.

pub mod action;
pub mod engine;
pub mod equivalence;
pub mod generate;
pub mod ids;
pub mod laws;
pub mod model;
pub mod rational;
pub mod spec_doc;
pub mod temporal;
pub mod trace_fmt;
pub mod witness;

pub use action::{Action, ActionTerm, CompositionOp, Direction, DurationKind, Organization};
pub use ids::{ActionId, ActorName, ClockId, EventId, RelationId};
pub use model::{ActorSpec, Environment, LawConfig};
pub use rational::Rat;
pub use temporal::{EventRecord, SyncGraph, TimeSet};
pub use witness::{ValidationReport, Witness};
