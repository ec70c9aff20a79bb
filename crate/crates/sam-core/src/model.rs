//! Actors, environments, acquaintance axioms, relation kinds and rank.
//!
//! An actor is a named five-component tuple: properties/relations, possible
//! actions, transactions (actions aimed at the actor), a reaction relation
//! from transactions to actions, and a proaction relation from relations to
//! actions. The environment is the top-rank system holding the actor
//! registry, the action and relation universes, local clocks with their
//! synchronization maps, and the law configuration.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::action::{Action, ActionTable, ActionTerm, ModalityAssertion};
use crate::ids::{ActionId, ActorName, ClockId, RelationId};
use crate::temporal::{Clock, ClockMap, SyncGraph};
use crate::witness::{ValidationReport, Witness};

/// Actualization and acknowledgement flags of one element of an actor
/// component. Declared elements default to actualized and acknowledged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementMark {
    #[serde(default = "yes")]
    pub actualized: bool,
    #[serde(default = "yes")]
    pub acknowledged: bool,
}

fn yes() -> bool {
    true
}

impl Default for ElementMark {
    fn default() -> Self {
        ElementMark {
            actualized: true,
            acknowledged: true,
        }
    }
}

/// The five relation categories, plus unary properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    /// Between parts and elements of the owner.
    Inner,
    /// Between the owner and its parts.
    Internal,
    /// From the owner to other actors or the environment.
    Outer,
    /// From parts of the owner to other actors.
    Intermediate,
    /// Of other actors, with the owner included.
    External,
    /// A unary property of one subject.
    Property,
}

/// A property or relation item owned by an actor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelationItem {
    pub id: RelationId,
    pub kind: RelationKind,
    /// Actor names or part identifiers.
    pub endpoints: Vec<String>,
}

/// A formal actor: name, three set components and two relation components,
/// plus acquaintance lists, nesting and element marks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActorSpec {
    pub name: ActorName,
    #[serde(default)]
    pub rel: Vec<RelationItem>,
    #[serde(default)]
    pub act: BTreeSet<ActionId>,
    #[serde(default)]
    pub trn: BTreeSet<ActionId>,
    /// Reaction relation: multivalued, from `trn` to `act`.
    #[serde(default)]
    pub react: BTreeSet<(ActionId, ActionId)>,
    /// Proaction relation: multivalued, from `rel` to `act`.
    #[serde(default)]
    pub proact: BTreeSet<(RelationId, ActionId)>,
    /// Forward acquaintances: actors this actor may send messengers to.
    #[serde(default)]
    pub facq: Vec<ActorName>,
    /// Backward acquaintances: actors this actor may receive messengers from.
    #[serde(default)]
    pub bacq: Vec<ActorName>,
    /// Sub-actors and parts. Names not registered in the environment are
    /// parts that are not actors.
    #[serde(default)]
    pub components: BTreeSet<ActorName>,
    /// Per-element modality flags, keyed by relation or action id.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub marks: BTreeMap<String, ElementMark>,
    /// Virtual reaction relation over the environment's whole action
    /// universe. Empty unless the actor uses the extended representation.
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub vreact: BTreeSet<(ActionId, ActionId)>,
    /// Virtual proaction relation over the environment's whole relation
    /// universe.
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub vproact: BTreeSet<(RelationId, ActionId)>,
}

impl ActorSpec {
    pub fn new(name: impl Into<ActorName>) -> Self {
        ActorSpec {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn rel_ids(&self) -> BTreeSet<RelationId> {
        self.rel.iter().map(|r| r.id.clone()).collect()
    }

    /// Reactions to one transaction.
    pub fn reactions_to(&self, transaction: &ActionId) -> Vec<&ActionId> {
        self.react
            .iter()
            .filter(|(t, _)| t == transaction)
            .map(|(_, a)| a)
            .collect()
    }

    /// Proactions instigated by one relation.
    pub fn proactions_of(&self, relation: &RelationId) -> Vec<&ActionId> {
        self.proact
            .iter()
            .filter(|(r, _)| r == relation)
            .map(|(_, a)| a)
            .collect()
    }

    pub fn mark_of(&self, element: &str) -> ElementMark {
        self.marks.get(element).copied().unwrap_or_default()
    }
}

/// The extended actor representation: the base tuple plus the virtual
/// reaction and proaction relations over the environment universes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedActorSpec {
    pub base: ActorSpec,
    pub env_name: String,
    pub vreact: BTreeSet<(ActionId, ActionId)>,
    pub vproact: BTreeSet<(RelationId, ActionId)>,
}

impl ExtendedActorSpec {
    /// Builds the extended representation of a registered actor. The base
    /// relations are completed into the virtual ones, so the restriction
    /// laws hold by construction: restricting `vreact` to the actor's
    /// transactions gives back `react`, and restricting `vproact` to the
    /// actor's relations gives back `proact`.
    pub fn of(env: &Environment, name: &ActorName) -> Result<Self, ModelError> {
        let actor = env.actor(name)?;
        let mut vreact = actor.vreact.clone();
        vreact.extend(actor.react.iter().cloned());
        let mut vproact = actor.vproact.clone();
        vproact.extend(actor.proact.iter().cloned());
        Ok(ExtendedActorSpec {
            base: actor.clone(),
            env_name: env.name.clone(),
            vreact,
            vproact,
        })
    }

    pub fn react_is_restriction(&self) -> bool {
        let restricted: BTreeSet<_> = self
            .vreact
            .iter()
            .filter(|(t, _)| self.base.trn.contains(t))
            .cloned()
            .collect();
        restricted == self.base.react
    }

    pub fn proact_is_restriction(&self) -> bool {
        let rel_ids = self.base.rel_ids();
        let restricted: BTreeSet<_> = self
            .vproact
            .iter()
            .filter(|(r, _)| rel_ids.contains(r))
            .cloned()
            .collect();
        restricted == self.base.proact
    }
}

/// What to do when a law violation is met.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LawPolicy {
    #[default]
    Reject,
    Warn,
}

/// Which axioms the environment asserts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawConfig {
    #[serde(default = "yes")]
    pub sm: bool,
    #[serde(default = "yes")]
    pub rm: bool,
    #[serde(default = "yes")]
    pub ca: bool,
    #[serde(default = "yes")]
    pub ea: bool,
    #[serde(default = "yes")]
    pub ma: bool,
    #[serde(default)]
    pub policy: LawPolicy,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            sm: true,
            rm: true,
            ca: true,
            ea: true,
            ma: true,
            policy: LawPolicy::Reject,
        }
    }
}

impl LawConfig {
    pub fn asserts(&self, law: &str) -> bool {
        match law {
            "SM" => self.sm,
            "RM" => self.rm,
            "CA" => self.ca,
            "EA" => self.ea,
            "MA" => self.ma,
            _ => false,
        }
    }
}

/// The environment: the top-rank system containing all actors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Environment {
    pub name: String,
    pub actors: BTreeMap<ActorName, ActorSpec>,
    /// Definitions of every possible action; the key set is the action
    /// universe.
    pub actions: ActionTable,
    /// The relation universe.
    pub relp: BTreeSet<RelationId>,
    /// Environment-level transactions.
    pub trn: BTreeSet<ActionId>,
    /// Environment-level reaction relation.
    pub ereact: BTreeSet<(ActionId, ActionId)>,
    /// Environment-level proaction relation.
    pub eproact: BTreeSet<(RelationId, ActionId)>,
    pub clocks: BTreeMap<ClockId, Clock>,
    pub sync: Vec<ClockMap>,
    pub laws: LawConfig,
    /// Declared modality assertions, closed and checked by the law suite.
    pub modalities: BTreeSet<ModalityAssertion>,
}

/// Errors raised by model queries.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("unknown actor {0}")]
    UnknownActor(ActorName),
    #[error("modeling axiom is not asserted for environment {0}")]
    ModelingAxiomOff(String),
}

/// Outcome of a rank comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankOrder {
    Lower,
    Equal,
    Higher,
    Incomparable,
}

impl Environment {
    pub fn new(name: impl Into<String>) -> Self {
        Environment {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn actor(&self, name: &ActorName) -> Result<&ActorSpec, ModelError> {
        self.actors
            .get(name)
            .ok_or_else(|| ModelError::UnknownActor(name.clone()))
    }

    pub fn insert_actor(&mut self, actor: ActorSpec) {
        self.actors.insert(actor.name.clone(), actor);
    }

    /// The action universe.
    pub fn actp(&self) -> BTreeSet<ActionId> {
        self.actions.keys().cloned().collect()
    }

    pub fn is_void_action(&self, id: &ActionId) -> bool {
        self.actions.get(id).is_some_and(Action::is_void)
    }

    pub fn sync_graph(&self) -> SyncGraph {
        SyncGraph::new(self.clocks.keys().cloned(), &self.sync)
    }

    /// All parts of an actor, transitively: registered components recurse,
    /// unregistered names are leaf parts.
    pub fn parts_of(&self, name: &ActorName) -> BTreeSet<ActorName> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<ActorName> = match self.actors.get(name) {
            Some(a) => a.components.iter().cloned().collect(),
            None => Vec::new(),
        };
        while let Some(part) = stack.pop() {
            if part == *name || !out.insert(part.clone()) {
                continue;
            }
            if let Some(sub) = self.actors.get(&part) {
                stack.extend(sub.components.iter().cloned());
            }
        }
        out
    }

    /// Whether `inner` occurs in the component graph below `outer`.
    pub fn is_part_of(&self, inner: &ActorName, outer: &ActorName) -> bool {
        self.parts_of(outer).contains(inner)
    }
}

/// Axiom SM: an actor can send messengers exactly to its forward
/// acquaintances.
pub fn can_send(env: &Environment, from: &ActorName, to: &ActorName) -> Result<bool, ModelError> {
    let sender = env.actor(from)?;
    env.actor(to)?;
    Ok(sender.facq.contains(to))
}

/// Axiom RM: an actor can receive messengers exactly from its backward
/// acquaintances.
pub fn can_receive(
    env: &Environment,
    from: &ActorName,
    to: &ActorName,
) -> Result<bool, ModelError> {
    env.actor(from)?;
    let receiver = env.actor(to)?;
    Ok(receiver.bacq.contains(from))
}

/// Axiom CA: every ordered pair where exactly one side of the
/// forward/backward biconditional holds.
pub fn check_connectivity(env: &Environment) -> Vec<Witness> {
    let mut forward = BTreeSet::new();
    let mut backward = BTreeSet::new();
    for (name, actor) in &env.actors {
        for c in &actor.facq {
            forward.insert((name.clone(), c.clone()));
        }
        for c in &actor.bacq {
            backward.insert((c.clone(), name.clone()));
        }
    }
    let mut witnesses = Vec::new();
    for pair in forward.union(&backward) {
        let fwd = forward.contains(pair);
        let bwd = backward.contains(pair);
        if fwd != bwd {
            let (a, c) = pair;
            let detail = if fwd {
                format!("{c} is a forward acquaintance of {a}, but {a} is not a backward acquaintance of {c}")
            } else {
                format!("{a} is a backward acquaintance of {c}, but {c} is not a forward acquaintance of {a}")
            };
            witnesses.push(Witness::new(
                "CA",
                [a.to_string(), c.to_string()],
                detail,
            ));
        }
    }
    witnesses
}

/// Friends: acquaintances on both lists.
pub fn friends(env: &Environment, name: &ActorName) -> Result<BTreeSet<ActorName>, ModelError> {
    let actor = env.actor(name)?;
    let fwd: BTreeSet<_> = actor.facq.iter().cloned().collect();
    let bwd: BTreeSet<_> = actor.bacq.iter().cloned().collect();
    Ok(fwd.intersection(&bwd).cloned().collect())
}

/// Uniform depth of an actor's component tree: leaves have rank class 0,
/// an actor whose components all share rank class `k` has class `k + 1`,
/// and mixed-rank component sets have no class.
fn rank_class(env: &Environment, name: &ActorName) -> Option<u64> {
    let Some(actor) = env.actors.get(name) else {
        // Unregistered parts are rank-0 elements.
        return Some(0);
    };
    if actor.components.is_empty() {
        return Some(0);
    }
    let mut class = None;
    for part in &actor.components {
        let sub = rank_class(env, part)?;
        match class {
            None => class = Some(sub),
            Some(c) if c != sub => return None,
            _ => {}
        }
    }
    class.map(|c| c + 1)
}

/// Rank comparison over the component forest. Containment ranks lower;
/// actors built from equal-rank elements rank equally; the environment
/// name outranks every actor.
pub fn rank_compare(
    env: &Environment,
    a: &ActorName,
    b: &ActorName,
) -> Result<RankOrder, ModelError> {
    let a_is_env = a.as_str() == env.name;
    let b_is_env = b.as_str() == env.name;
    match (a_is_env, b_is_env) {
        (true, true) => return Ok(RankOrder::Equal),
        (true, false) => {
            env.actor(b)?;
            return Ok(RankOrder::Higher);
        }
        (false, true) => {
            env.actor(a)?;
            return Ok(RankOrder::Lower);
        }
        (false, false) => {}
    }
    env.actor(a)?;
    env.actor(b)?;
    if a == b {
        return Ok(RankOrder::Equal);
    }
    if env.is_part_of(a, b) {
        return Ok(RankOrder::Lower);
    }
    if env.is_part_of(b, a) {
        return Ok(RankOrder::Higher);
    }
    match (rank_class(env, a), rank_class(env, b)) {
        (Some(ca), Some(cb)) if ca == cb => Ok(RankOrder::Equal),
        _ => Ok(RankOrder::Incomparable),
    }
}

/// Checks that a mapping embeds the actors of one environment into another
/// injectively.
pub fn check_domain_embedding(
    env_e: &Environment,
    env_d: &Environment,
    mapping: &BTreeMap<ActorName, ActorName>,
) -> (bool, Vec<Witness>) {
    let mut witnesses = Vec::new();
    let mut seen: BTreeMap<&ActorName, &ActorName> = BTreeMap::new();
    for name in env_d.actors.keys() {
        match mapping.get(name) {
            None => witnesses.push(Witness::new(
                "embedding",
                [name.to_string()],
                "actor is not covered by the mapping",
            )),
            Some(target) => {
                if !env_e.actors.contains_key(target) {
                    witnesses.push(Witness::new(
                        "embedding",
                        [name.to_string(), target.to_string()],
                        "mapping target is not registered",
                    ));
                }
                if let Some(prev) = seen.insert(target, name) {
                    witnesses.push(Witness::new(
                        "embedding",
                        [prev.to_string(), name.to_string(), target.to_string()],
                        "two actors map to one target",
                    ));
                }
            }
        }
    }
    (witnesses.is_empty(), witnesses)
}

/// Modeling Axiom MA: every object of the modeled domain is modeled by a
/// registered actor.
pub fn check_modeling_axiom(
    env: &Environment,
    domain_objects: &BTreeSet<String>,
    model_map: &BTreeMap<String, ActorName>,
) -> (bool, Vec<Witness>) {
    let mut witnesses = Vec::new();
    for object in domain_objects {
        match model_map.get(object) {
            None => witnesses.push(Witness::new(
                "MA",
                [object.clone()],
                "domain object is not modeled by any actor",
            )),
            Some(actor) if !env.actors.contains_key(actor) => witnesses.push(Witness::new(
                "MA",
                [object.clone(), actor.to_string()],
                "domain object maps to an unregistered actor",
            )),
            _ => {}
        }
    }
    (witnesses.is_empty(), witnesses)
}

/// Checks every type invariant of the environment and reports each breach
/// with a path to the offending element.
pub fn validate_environment(env: &Environment) -> ValidationReport {
    let mut report = ValidationReport::default();
    if env.name.is_empty() {
        report.push("name", "environment name is empty");
    }
    let actp = env.actp();

    for id in &env.trn {
        if !actp.contains(id) {
            report.push(format!("trn[{id}]"), "references an action outside the universe");
        }
    }
    for (t, a) in &env.ereact {
        if !env.trn.contains(t) || !actp.contains(a) {
            report.push(
                format!("ereact[{t}→{a}]"),
                "pair references elements outside trn × actp",
            );
        }
    }
    for (r, a) in &env.eproact {
        if !env.relp.contains(r) || !actp.contains(a) {
            report.push(
                format!("eproact[{r}→{a}]"),
                "pair references elements outside relp × actp",
            );
        }
    }

    for (id, action) in &env.actions {
        validate_action(env, &format!("actions.{id}"), action, &mut report);
    }

    for (name, actor) in &env.actors {
        validate_actor(env, name, actor, &actp, &mut report);
    }

    validate_component_graph(env, &mut report);
    validate_clocks(env, &mut report);
    report
}

fn validate_action(env: &Environment, path: &str, action: &Action, report: &mut ValidationReport) {
    match &action.term {
        ActionTerm::Composed { op, parts } => {
            if parts.len() != op.arity {
                report.push(
                    path,
                    format!(
                        "operator {} has arity {}, term has {} parts",
                        op.name,
                        op.arity,
                        parts.len()
                    ),
                );
            }
            if parts.is_empty() {
                report.push(path, "composed parts list is empty");
            }
            for (i, part) in parts.iter().enumerate() {
                validate_action(env, &format!("{path}.parts[{i}]"), part, report);
            }
        }
        ActionTerm::Negation(inner) => {
            validate_action(env, &format!("{path}.negation"), inner, report);
        }
        ActionTerm::TotalInaction => {
            if action.organization != crate::action::Organization::Void {
                report.push(path, "total inaction must have void organization");
            }
        }
        ActionTerm::Atomic(_) => {}
    }
    if action.is_void() && action.organization != crate::action::Organization::Void {
        report.push(path, "void term declared with non-void organization");
    }
    if let Some(crate::action::CommKind::Send { to, delivers, .. }) = &action.comm {
        if !env.actors.contains_key(to) {
            report.push(format!("{path}.comm.to"), format!("unknown actor {to}"));
        }
        if !env.actions.contains_key(delivers) {
            report.push(
                format!("{path}.comm.delivers"),
                format!("unknown action {delivers}"),
            );
        }
    }
}

fn validate_actor(
    env: &Environment,
    name: &ActorName,
    actor: &ActorSpec,
    actp: &BTreeSet<ActionId>,
    report: &mut ValidationReport,
) {
    let path = format!("actors.{name}");
    if name.as_str().is_empty() {
        report.push(&path, "actor name is empty");
    }
    if actor.name != *name {
        report.push(&path, "registry key differs from the actor's name");
    }

    for a in &actor.act {
        if !actp.contains(a) {
            report.push(format!("{path}.act[{a}]"), "references an unknown action");
        }
    }
    for t in &actor.trn {
        if !actp.contains(t) {
            report.push(format!("{path}.trn[{t}]"), "references an unknown action");
        }
    }

    let rel_ids = actor.rel_ids();
    let mut seen_rel = BTreeSet::new();
    for item in &actor.rel {
        let rpath = format!("{path}.rel[{}]", item.id);
        if !seen_rel.insert(item.id.clone()) {
            report.push(&rpath, "duplicate relation id");
        }
        if !env.relp.contains(&item.id) {
            report.push(&rpath, "relation id outside the environment universe");
        }
        validate_relation_kind(env, name, item, &rpath, report);
    }

    for (t, a) in &actor.react {
        if !actor.trn.contains(t) || !actor.act.contains(a) {
            report.push(
                format!("{path}.react[{t}→{a}]"),
                "pair references elements outside trn × act",
            );
        }
    }
    for (r, a) in &actor.proact {
        if !rel_ids.contains(r) || !actor.act.contains(a) {
            report.push(
                format!("{path}.proact[{r}→{a}]"),
                "pair references elements outside rel × act",
            );
        }
    }

    for acq in actor.facq.iter().chain(&actor.bacq) {
        if !env.actors.contains_key(acq) {
            report.push(
                format!("{path}.acquaintances[{acq}]"),
                "references an unregistered actor",
            );
        }
    }

    if actor.components.contains(name) {
        report.push(format!("{path}.components"), "actor contains itself");
    }

    for key in actor.marks.keys() {
        let known = rel_ids.contains(&RelationId::new(key.clone()))
            || actor.act.contains(&ActionId::new(key.clone()))
            || actor.trn.contains(&ActionId::new(key.clone()));
        if !known {
            report.push(
                format!("{path}.marks[{key}]"),
                "mark references no element of this actor",
            );
        }
    }

    if !actor.vreact.is_empty() {
        for (t, a) in &actor.vreact {
            if !actp.contains(t) || !actor.act.contains(a) {
                report.push(
                    format!("{path}.vreact[{t}→{a}]"),
                    "pair references elements outside actp × act",
                );
            }
        }
        let restricted: BTreeSet<_> = actor
            .vreact
            .iter()
            .filter(|(t, _)| actor.trn.contains(t))
            .cloned()
            .collect();
        if restricted != actor.react {
            report.push(
                format!("{path}.vreact"),
                "restriction to trn does not reproduce react",
            );
        }
    }
    if !actor.vproact.is_empty() {
        for (r, a) in &actor.vproact {
            if !env.relp.contains(r) || !actor.act.contains(a) {
                report.push(
                    format!("{path}.vproact[{r}→{a}]"),
                    "pair references elements outside relp × act",
                );
            }
        }
        let restricted: BTreeSet<_> = actor
            .vproact
            .iter()
            .filter(|(r, _)| rel_ids.contains(r))
            .cloned()
            .collect();
        if restricted != actor.proact {
            report.push(
                format!("{path}.vproact"),
                "restriction to rel does not reproduce proact",
            );
        }
    }
}

fn validate_relation_kind(
    env: &Environment,
    owner: &ActorName,
    item: &RelationItem,
    path: &str,
    report: &mut ValidationReport,
) {
    let parts = env.parts_of(owner);
    let is_part = |e: &String| parts.contains(&ActorName::new(e.clone()));
    let is_owner = |e: &String| e == owner.as_str();
    let is_foreign = |e: &String| !is_part(e) && !is_owner(e);
    let endpoints = &item.endpoints;
    let ok = match item.kind {
        RelationKind::Inner => !endpoints.is_empty() && endpoints.iter().all(is_part),
        RelationKind::Internal => {
            endpoints.iter().any(is_owner) && endpoints.iter().any(is_part)
        }
        RelationKind::Outer | RelationKind::External => {
            endpoints.iter().any(is_owner) && endpoints.iter().any(is_foreign)
        }
        RelationKind::Intermediate => {
            !endpoints.iter().any(is_owner)
                && endpoints.iter().any(is_part)
                && endpoints.iter().any(is_foreign)
        }
        RelationKind::Property => endpoints.len() == 1,
    };
    if !ok {
        report.push(
            path,
            format!("endpoints violate the {:?} kind constraint", item.kind),
        );
    }
}

fn validate_component_graph(env: &Environment, report: &mut ValidationReport) {
    // Cycle detection over registered actors only; unregistered parts are
    // leaves by definition.
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Visiting,
        Done,
    }
    fn visit(
        env: &Environment,
        name: &ActorName,
        marks: &mut BTreeMap<ActorName, Mark>,
        report: &mut ValidationReport,
    ) {
        match marks.get(name) {
            Some(Mark::Done) => return,
            Some(Mark::Visiting) => {
                report.push(
                    format!("actors.{name}.components"),
                    "component graph has a cycle through this actor",
                );
                return;
            }
            None => {}
        }
        marks.insert(name.clone(), Mark::Visiting);
        if let Some(actor) = env.actors.get(name) {
            for part in &actor.components {
                if env.actors.contains_key(part) {
                    visit(env, part, marks, report);
                }
            }
        }
        marks.insert(name.clone(), Mark::Done);
    }
    let mut marks = BTreeMap::new();
    for name in env.actors.keys() {
        visit(env, name, &mut marks, report);
    }
}

fn validate_clocks(env: &Environment, report: &mut ValidationReport) {
    for (idx, map) in env.sync.iter().enumerate() {
        let path = format!("sync[{idx}]");
        if !env.clocks.contains_key(&map.from) {
            report.push(&path, format!("unknown clock {}", map.from));
        }
        if !env.clocks.contains_key(&map.to) {
            report.push(&path, format!("unknown clock {}", map.to));
        }
        if !map.rate.is_positive() {
            report.push(&path, "clock map rate must be positive");
        }
    }
    let graph = env.sync_graph();
    for witness in graph.check_cycle_consistency() {
        report.push("sync", witness.detail);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{Direction, DurationKind};

    fn atomic(id: &str) -> Action {
        Action::atomic(id, Direction::Internal, DurationKind::Regular)
    }

    fn env_with_actors(names: &[&str]) -> Environment {
        let mut env = Environment::new("test");
        for n in names {
            env.insert_actor(ActorSpec::new(*n));
        }
        env
    }

    #[test]
    fn can_send_follows_forward_acquaintances() {
        let mut env = env_with_actors(&["A", "B", "C"]);
        env.actors.get_mut(&"A".into()).unwrap().facq = vec!["B".into(), "C".into()];
        assert!(can_send(&env, &"A".into(), &"C".into()).unwrap());
        assert!(!can_send(&env, &"B".into(), &"A".into()).unwrap());
        assert_eq!(
            can_send(&env, &"A".into(), &"X".into()),
            Err(ModelError::UnknownActor("X".into()))
        );
    }

    #[test]
    fn can_receive_follows_backward_acquaintances() {
        let mut env = env_with_actors(&["A", "B", "C"]);
        env.actors.get_mut(&"A".into()).unwrap().bacq = vec!["B".into()];
        assert!(can_receive(&env, &"B".into(), &"A".into()).unwrap());
        assert!(!can_receive(&env, &"C".into(), &"A".into()).unwrap());
    }

    #[test]
    fn self_acquaintance_is_permitted() {
        let mut env = env_with_actors(&["A"]);
        env.actors.get_mut(&"A".into()).unwrap().bacq = vec!["A".into()];
        assert!(can_receive(&env, &"A".into(), &"A".into()).unwrap());
    }

    #[test]
    fn connectivity_finds_the_one_sided_edge() {
        let mut env = env_with_actors(&["A", "B"]);
        env.actors.get_mut(&"A".into()).unwrap().facq = vec!["B".into()];
        let witnesses = check_connectivity(&env);
        assert_eq!(witnesses.len(), 1);
        assert_eq!(witnesses[0].subjects, vec!["A".to_string(), "B".to_string()]);

        env.actors.get_mut(&"B".into()).unwrap().bacq = vec!["A".into()];
        assert!(check_connectivity(&env).is_empty());
    }

    #[test]
    fn friends_is_the_intersection() {
        let mut env = env_with_actors(&["A", "B", "C", "D"]);
        {
            let a = env.actors.get_mut(&"A".into()).unwrap();
            a.facq = vec!["B".into(), "C".into()];
            a.bacq = vec!["B".into(), "D".into()];
        }
        assert_eq!(
            friends(&env, &"A".into()).unwrap(),
            BTreeSet::from(["B".into()])
        );
        assert!(friends(&env, &"B".into()).unwrap().is_empty());
    }

    #[test]
    fn components_rank_lower_and_leaves_rank_equal() {
        let mut env = env_with_actors(&["A", "B", "C"]);
        env.actors.get_mut(&"A".into()).unwrap().components = ["B".into()].into();
        assert_eq!(
            rank_compare(&env, &"B".into(), &"A".into()).unwrap(),
            RankOrder::Lower
        );
        assert_eq!(
            rank_compare(&env, &"A".into(), &"B".into()).unwrap(),
            RankOrder::Higher
        );
        assert_eq!(
            rank_compare(&env, &"B".into(), &"C".into()).unwrap(),
            RankOrder::Equal
        );
    }

    #[test]
    fn environment_outranks_every_actor() {
        let env = env_with_actors(&["A"]);
        assert_eq!(
            rank_compare(&env, &"test".into(), &"A".into()).unwrap(),
            RankOrder::Higher
        );
        assert_eq!(
            rank_compare(&env, &"A".into(), &"test".into()).unwrap(),
            RankOrder::Lower
        );
    }

    #[test]
    fn disjoint_trees_of_unequal_depth_are_incomparable() {
        let mut env = env_with_actors(&["A", "B", "C", "D"]);
        env.actors.get_mut(&"A".into()).unwrap().components = ["B".into()].into();
        // A has depth 1, C and D are leaves: A vs C incomparable, C vs D equal.
        assert_eq!(
            rank_compare(&env, &"A".into(), &"C".into()).unwrap(),
            RankOrder::Incomparable
        );
        assert_eq!(
            rank_compare(&env, &"C".into(), &"D".into()).unwrap(),
            RankOrder::Equal
        );
    }

    #[test]
    fn validation_reports_react_outside_act() {
        let mut env = env_with_actors(&["A"]);
        env.actions.insert("a1".into(), atomic("a1"));
        env.actions.insert("t1".into(), atomic("t1"));
        {
            let a = env.actors.get_mut(&"A".into()).unwrap();
            a.trn = ["t1".into()].into();
            a.react = [("t1".into(), "a1".into())].into();
        }
        let report = validate_environment(&env);
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].path.contains("react[t1→a1]"));
    }

    #[test]
    fn empty_environment_validates_clean() {
        let env = Environment::new("empty");
        assert!(validate_environment(&env).is_empty());
    }

    #[test]
    fn embedding_detects_collisions() {
        let env_e = env_with_actors(&["X", "Y"]);
        let env_d = env_with_actors(&["A", "B"]);
        let mut mapping = BTreeMap::new();
        mapping.insert(ActorName::new("A"), ActorName::new("X"));
        mapping.insert(ActorName::new("B"), ActorName::new("X"));
        let (ok, witnesses) = check_domain_embedding(&env_e, &env_d, &mapping);
        assert!(!ok);
        assert_eq!(witnesses.len(), 1);
    }

    #[test]
    fn identity_embedding_holds() {
        let env = env_with_actors(&["A", "B"]);
        let mapping: BTreeMap<_, _> = env
            .actors
            .keys()
            .map(|k| (k.clone(), k.clone()))
            .collect();
        let (ok, witnesses) = check_domain_embedding(&env, &env, &mapping);
        assert!(ok);
        assert!(witnesses.is_empty());
    }

    #[test]
    fn modeling_axiom_reports_unmapped_objects() {
        let env = env_with_actors(&["A"]);
        let objects: BTreeSet<String> = ["x".to_string(), "y".to_string()].into();
        let mut map = BTreeMap::new();
        map.insert("x".to_string(), ActorName::new("A"));
        let (ok, witnesses) = check_modeling_axiom(&env, &objects, &map);
        assert!(!ok);
        assert_eq!(witnesses.len(), 1);
        assert_eq!(witnesses[0].subjects, vec!["y".to_string()]);
    }

    #[test]
    fn extended_actor_restrictions_hold_by_construction() {
        let mut env = env_with_actors(&["A"]);
        for id in ["a1", "t1", "t2"] {
            env.actions.insert(id.into(), atomic(id));
        }
        {
            let a = env.actors.get_mut(&"A".into()).unwrap();
            a.act = ["a1".into()].into();
            a.trn = ["t1".into()].into();
            a.react = [("t1".into(), "a1".into())].into();
            a.vreact = [("t2".into(), "a1".into())].into();
        }
        let ext = ExtendedActorSpec::of(&env, &"A".into()).unwrap();
        assert!(ext.react_is_restriction());
        assert!(ext.proact_is_restriction());
        assert!(ext.vreact.contains(&("t1".into(), "a1".into())));
    }
}
