//! The `.sam` specification document: a JSON-compatible, human-writable
//! description of one environment, its simulation configuration and its
//! initial events. Rationals are written as `"p/q"` strings. Parsing is
//! strict: unknown fields, duplicate names and broken invariants are
//! reported with a path to the offender.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::action::{Action, ModalityAssertion};
use crate::engine::SimConfig;
use crate::ids::{ActionId, ActorName, ClockId, EventId, RelationId};
use crate::model::{ActorSpec, Environment, LawConfig};
use crate::rational::Rat;
use crate::temporal::{Clock, ClockMap, EventKind, EventRecord, TimeSet};
use crate::witness::ValidationReport;

pub const FORMAT_VERSION: u32 = 1;

/// An initial event as written in a document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocEvent {
    pub id: EventId,
    pub actor: ActorName,
    pub action: ActionId,
    pub clock: ClockId,
    /// Closed intervals as `[lo, hi]` rational pairs.
    pub time: Vec<(Rat, Rat)>,
    #[serde(default = "initial_kind")]
    pub kind: EventKind,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub depends_on: BTreeSet<EventId>,
}

fn initial_kind() -> EventKind {
    EventKind::Initial
}

/// The serialized form of one environment specification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub version: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub clocks: Vec<Clock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sync: Vec<ClockMap>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub actions: Vec<Action>,
    /// Relation universe; defaults to every relation id used.
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub relp: BTreeSet<RelationId>,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub trn: BTreeSet<ActionId>,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub ereact: BTreeSet<(ActionId, ActionId)>,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub eproact: BTreeSet<(RelationId, ActionId)>,
    #[serde(default)]
    pub laws: LawConfig,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub modalities: BTreeSet<ModalityAssertion>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub actors: Vec<ActorSpec>,
    #[serde(default)]
    pub sim: SimConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub events: Vec<DocEvent>,
}

/// A fully built specification: environment, simulation configuration and
/// initial events.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedSpec {
    pub env: Environment,
    pub sim: SimConfig,
    pub events: Vec<EventRecord>,
}

/// Errors raised while loading a document.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Semantic { path: String, message: String },
    #[error("document violates type invariants:\n{0}")]
    Invalid(ValidationReport),
}

impl SpecError {
    fn semantic(path: impl Into<String>, message: impl Into<String>) -> Self {
        SpecError::Semantic {
            path: path.into(),
            message: message.into(),
        }
    }
}

/// Parses document text into its serialized form, with line/column
/// diagnostics on malformed input.
pub fn parse_document(text: &str) -> Result<SpecDocument, SpecError> {
    serde_json::from_str(text).map_err(|err| SpecError::Syntax {
        line: err.line(),
        column: err.column(),
        message: err.to_string(),
    })
}

impl SpecDocument {
    /// Builds the environment, simulation configuration and initial events.
    /// Structural problems (duplicate names, unresolvable references,
    /// malformed time sets) are reported with a path; type invariants are
    /// not checked here.
    pub fn build(&self) -> Result<ParsedSpec, SpecError> {
        if self.version != FORMAT_VERSION {
            return Err(SpecError::semantic(
                "version",
                format!("unsupported version {}, expected {FORMAT_VERSION}", self.version),
            ));
        }
        let mut env = Environment::new(self.name.clone());
        env.laws = self.laws;
        env.trn = self.trn.clone();
        env.ereact = self.ereact.clone();
        env.eproact = self.eproact.clone();
        env.modalities = self.modalities.clone();
        env.sync = self.sync.clone();

        for clock in &self.clocks {
            check_id(&clock.id.0, &format!("clocks.{}", clock.id))?;
            if env.clocks.insert(clock.id.clone(), clock.clone()).is_some() {
                return Err(SpecError::semantic(
                    format!("clocks.{}", clock.id),
                    "duplicate clock id",
                ));
            }
        }

        for action in &self.actions {
            check_id(&action.id.0, &format!("actions.{}", action.id))?;
            if env
                .actions
                .insert(action.id.clone(), action.clone())
                .is_some()
            {
                return Err(SpecError::semantic(
                    format!("actions.{}", action.id),
                    "duplicate action id",
                ));
            }
        }

        for actor in &self.actors {
            check_id(&actor.name.0, &format!("actors.{}", actor.name))?;
            if env
                .actors
                .insert(actor.name.clone(), actor.clone())
                .is_some()
            {
                return Err(SpecError::semantic(
                    format!("actors.{}", actor.name),
                    "duplicate actor name",
                ));
            }
        }

        env.relp = if self.relp.is_empty() {
            let mut relp: BTreeSet<RelationId> = BTreeSet::new();
            for actor in env.actors.values() {
                relp.extend(actor.rel_ids());
            }
            relp.extend(self.eproact.iter().map(|(r, _)| r.clone()));
            relp
        } else {
            self.relp.clone()
        };

        let mut events = Vec::with_capacity(self.events.len());
        let mut seen = BTreeSet::new();
        for doc_event in &self.events {
            let path = format!("events.{}", doc_event.id);
            check_id(&doc_event.id.0, &path)?;
            if !seen.insert(doc_event.id.clone()) {
                return Err(SpecError::semantic(path, "duplicate event id"));
            }
            if !env.clocks.contains_key(&doc_event.clock) {
                return Err(SpecError::semantic(
                    format!("{path}.clock"),
                    format!("unknown clock {}", doc_event.clock),
                ));
            }
            if !env.actors.contains_key(&doc_event.actor) {
                return Err(SpecError::semantic(
                    format!("{path}.actor"),
                    format!("unknown actor {}", doc_event.actor),
                ));
            }
            if !env.actions.contains_key(&doc_event.action) {
                return Err(SpecError::semantic(
                    format!("{path}.action"),
                    format!("unknown action {}", doc_event.action),
                ));
            }
            let time = TimeSet::new(doc_event.clock.clone(), doc_event.time.clone())
                .map_err(|e| SpecError::semantic(format!("{path}.time"), e.to_string()))?;
            if time.is_empty() {
                return Err(SpecError::semantic(
                    format!("{path}.time"),
                    "time set is empty",
                ));
            }
            events.push(EventRecord {
                id: doc_event.id.clone(),
                actor: doc_event.actor.clone(),
                action: doc_event.action.clone(),
                time,
                depends_on: doc_event.depends_on.clone(),
                kind: doc_event.kind.clone(),
            });
        }
        for event in &events {
            for dep in &event.depends_on {
                if !seen.contains(dep) {
                    return Err(SpecError::semantic(
                        format!("events.{}.depends_on", event.id),
                        format!("unknown event {dep}"),
                    ));
                }
            }
            if let EventKind::Reaction { trigger, .. } = &event.kind {
                if !seen.contains(trigger) {
                    return Err(SpecError::semantic(
                        format!("events.{}.kind", event.id),
                        format!("unknown trigger event {trigger}"),
                    ));
                }
            }
        }

        Ok(ParsedSpec {
            env,
            sim: self.sim.clone(),
            events,
        })
    }

    /// Rebuilds the serialized form from built objects.
    pub fn from_parts(env: &Environment, sim: &SimConfig, events: &[EventRecord]) -> Self {
        SpecDocument {
            version: FORMAT_VERSION,
            name: env.name.clone(),
            clocks: env.clocks.values().cloned().collect(),
            sync: env.sync.clone(),
            actions: env.actions.values().cloned().collect(),
            relp: env.relp.clone(),
            trn: env.trn.clone(),
            ereact: env.ereact.clone(),
            eproact: env.eproact.clone(),
            laws: env.laws,
            modalities: env.modalities.clone(),
            actors: env.actors.values().cloned().collect(),
            sim: sim.clone(),
            events: events
                .iter()
                .map(|e| DocEvent {
                    id: e.id.clone(),
                    actor: e.actor.clone(),
                    action: e.action.clone(),
                    clock: e.time.clock.clone(),
                    time: e.time.pieces().to_vec(),
                    kind: e.kind.clone(),
                    depends_on: e.depends_on.clone(),
                })
                .collect(),
        }
    }
}

/// Identifiers appear in tab-separated trace files and dotted paths, so
/// whitespace and control characters are rejected up front.
fn check_id(id: &str, path: &str) -> Result<(), SpecError> {
    if id.is_empty() {
        return Err(SpecError::semantic(path, "identifier is empty"));
    }
    if id.chars().any(|c| c.is_control() || c == '\t' || c == '\n') {
        return Err(SpecError::semantic(
            path,
            "identifier contains control characters",
        ));
    }
    Ok(())
}

/// Parses, builds and validates a document in one step.
pub fn parse_spec(text: &str) -> Result<ParsedSpec, SpecError> {
    let document = parse_document(text)?;
    let parsed = document.build()?;
    let report = crate::model::validate_environment(&parsed.env);
    if !report.is_empty() {
        return Err(SpecError::Invalid(report));
    }
    Ok(parsed)
}

/// Serializes a specification to pretty-printed document text.
pub fn serialize_spec(env: &Environment, sim: &SimConfig, events: &[EventRecord]) -> String {
    let document = SpecDocument::from_parts(env, sim, events);
    let mut text = serde_json::to_string_pretty(&document).expect("document serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "version": 1,
        "name": "tiny",
        "actors": [{"name": "A"}]
    }"#;

    #[test]
    fn minimal_document_builds_one_actor() {
        let parsed = parse_spec(MINIMAL).unwrap();
        assert_eq!(parsed.env.actors.len(), 1);
        assert!(parsed.events.is_empty());
    }

    #[test]
    fn syntax_errors_carry_a_location() {
        let err = parse_document("{ \"version\": 1,, }").unwrap_err();
        assert!(matches!(err, SpecError::Syntax { line: 1, .. }));
    }

    #[test]
    fn unknown_react_reference_is_a_validation_failure() {
        let text = r#"{
            "version": 1,
            "name": "bad",
            "actions": [
                {"id": "t1", "term": {"atomic": "t1"}, "direction": "internal",
                 "duration_kind": "regular", "organization": "direct"}
            ],
            "actors": [{"name": "A", "trn": ["t1"], "react": [["t1", "ghost"]]}]
        }"#;
        let err = parse_spec(text).unwrap_err();
        let SpecError::Invalid(report) = err else {
            panic!("expected invariant failure, got {err:?}");
        };
        assert!(report
            .violations
            .iter()
            .any(|v| v.path.contains("react[t1→ghost]")));
    }

    #[test]
    fn duplicate_actor_names_are_rejected() {
        let text = r#"{
            "version": 1,
            "name": "dup",
            "actors": [{"name": "A"}, {"name": "A"}]
        }"#;
        assert!(matches!(
            parse_spec(text),
            Err(SpecError::Semantic { .. })
        ));
    }

    #[test]
    fn round_trip_is_identity() {
        let parsed = parse_spec(MINIMAL).unwrap();
        let text = serialize_spec(&parsed.env, &parsed.sim, &parsed.events);
        let reparsed = parse_spec(&text).unwrap();
        assert_eq!(parsed.env, reparsed.env);
        assert_eq!(parsed.sim, reparsed.sim);
        assert_eq!(parsed.events, reparsed.events);
        // A second trip is byte-identical.
        let again = serialize_spec(&reparsed.env, &reparsed.sim, &reparsed.events);
        assert_eq!(text, again);
    }

    #[test]
    fn unsupported_version_is_rejected() {
        let err = parse_spec(r#"{"version": 2, "name": "x"}"#).unwrap_err();
        assert!(matches!(err, SpecError::Semantic { .. }));
    }
}
