//! The algebra of actions.
//!
//! Actions are algebraic terms: atomic, composed through an operator, the
//! negation (void form) of another action, or the total inaction. Negation
//! is an involution; composition derives direction and organization from
//! its parts; inclusion is the sub-term order extended with the void laws.
//!
//! Whether a composition of inactions collapses to an inaction is a
//! per-operator property (`ea_compliant`): the algebra also supports
//! operators with complement semantics, where combining the negations of
//! all-but-one member of a finite action universe resolves to the remaining
//! member, which is a proper action.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ids::{ActionId, ActorName, RelationId};
use crate::model::ActorSpec;
use crate::witness::Witness;

/// Scope an action is directed at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Self-action, directed at the acting actor.
    Internal,
    /// Directed at other actors.
    External,
    /// Directed both inward and outward.
    Combined,
}

impl Direction {
    /// Direction of a composition: equal parts keep their direction, mixed
    /// parts widen to the union of target scopes.
    pub fn join(self, other: Direction) -> Direction {
        if self == other {
            self
        } else {
            Direction::Combined
        }
    }
}

/// Whether an action happens at one moment or over an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DurationKind {
    /// Performed at one moment of time; events carry momentary time sets.
    Singular,
    /// Demands an interval of time; events carry non-degenerate time sets.
    Regular,
}

/// How an action is organized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Organization {
    /// Includes no further operations.
    Direct,
    /// Includes additional operations or actions.
    Mediated,
    /// An inaction.
    Void,
}

/// Dependency class of an action within one actor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DependencyClass {
    /// Direct action depending on a single axis: input actions only, or
    /// properties/relations only.
    Primitive,
    /// Direct action depending on both axes.
    Automatic,
    /// Mediated action; outside the primitive/automatic taxonomy.
    MediatedDep,
    /// Appears in no reaction or proaction pair.
    Unclassified,
}

/// Message capability attached to an action definition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommKind {
    /// Sending a messenger: performing this action delivers the transaction
    /// `delivers` to the actor `to`.
    Send {
        to: ActorName,
        delivers: ActionId,
        #[serde(default)]
        requesting: bool,
    },
    /// A transaction that arrives as a messenger from another actor.
    Receive,
}

/// An n-ary operation on actions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionOp {
    pub name: String,
    pub arity: usize,
    /// Whether composing inactions through this operator is itself an
    /// inaction. Operators with complement semantics refute this.
    #[serde(default)]
    pub ea_compliant: bool,
    /// Complement semantics: when every part is the negation of a distinct
    /// universe member and exactly one member remains, the composition
    /// resolves to that member.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement_universe: Option<Vec<Action>>,
}

impl CompositionOp {
    pub fn new(name: impl Into<String>, arity: usize, ea_compliant: bool) -> Self {
        CompositionOp {
            name: name.into(),
            arity,
            ea_compliant,
            complement_universe: None,
        }
    }
}

/// The term structure of an action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionTerm {
    Atomic(ActionId),
    Composed {
        op: CompositionOp,
        parts: Vec<Action>,
    },
    Negation(Box<Action>),
    TotalInaction,
}

/// An action: a term together with its structural characteristics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Action {
    pub id: ActionId,
    pub term: ActionTerm,
    pub direction: Direction,
    pub duration_kind: DurationKind,
    pub organization: Organization,
    #[serde(default = "default_dependency")]
    pub dependency: DependencyClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comm: Option<CommKind>,
}

fn default_dependency() -> DependencyClass {
    DependencyClass::Unclassified
}

impl Action {
    /// A proper atomic action.
    pub fn atomic(id: impl Into<ActionId>, direction: Direction, duration: DurationKind) -> Self {
        let id = id.into();
        Action {
            term: ActionTerm::Atomic(id.clone()),
            id,
            direction,
            duration_kind: duration,
            organization: Organization::Direct,
            dependency: DependencyClass::Unclassified,
            comm: None,
        }
    }

    /// The total inaction: doing nothing at all.
    pub fn total_inaction(id: impl Into<ActionId>) -> Self {
        Action {
            id: id.into(),
            term: ActionTerm::TotalInaction,
            direction: Direction::Internal,
            duration_kind: DurationKind::Regular,
            organization: Organization::Void,
            dependency: DependencyClass::Unclassified,
            comm: None,
        }
    }

    pub fn with_comm(mut self, comm: CommKind) -> Self {
        self.comm = Some(comm);
        self
    }

    pub fn with_id(mut self, id: impl Into<ActionId>) -> Self {
        self.id = id.into();
        self
    }

    /// Void actions are inactions: negations and the total inaction.
    pub fn is_void(&self) -> bool {
        matches!(self.term, ActionTerm::Negation(_) | ActionTerm::TotalInaction)
    }

    pub fn is_proper(&self) -> bool {
        !self.is_void()
    }

    /// Marker for send-capable actions.
    pub fn is_send(&self) -> bool {
        matches!(self.comm, Some(CommKind::Send { .. }))
    }

    pub fn is_requesting_send(&self) -> bool {
        matches!(
            self.comm,
            Some(CommKind::Send {
                requesting: true,
                ..
            })
        )
    }

    pub fn is_receive(&self) -> bool {
        matches!(self.comm, Some(CommKind::Receive))
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.term {
            ActionTerm::Atomic(id) => write!(f, "{id}"),
            ActionTerm::Composed { op, parts } => {
                write!(f, "{}(", op.name)?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
            ActionTerm::Negation(inner) => write!(f, "not({inner})"),
            ActionTerm::TotalInaction => f.write_str("total_inaction"),
        }
    }
}

/// Errors raised by algebra operations.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error("operator {op} has arity {expected}, got {got} parts")]
    ArityMismatch {
        op: String,
        expected: usize,
        got: usize,
    },
    #[error("the total inaction has no negation")]
    NegateTotalInaction,
    #[error("actor {actor} does not own action {action}")]
    NotOwned { actor: ActorName, action: ActionId },
}

/// The twelve modality classes, grouped by sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Modality {
    Possible,
    Tolerable,
    Permitted,
    Performed,
    Impossible,
    Intolerable,
    Prohibited,
    NotPerformed,
    Unknown,
    Unidentified,
    Unspecified,
    Indefinite,
}

impl Modality {
    /// The direct contrary, if this modality has one.
    pub fn contrary(self) -> Option<Modality> {
        use Modality::*;
        match self {
            Possible => Some(Impossible),
            Impossible => Some(Possible),
            Tolerable => Some(Intolerable),
            Intolerable => Some(Tolerable),
            Permitted => Some(Prohibited),
            Prohibited => Some(Permitted),
            Performed => Some(NotPerformed),
            NotPerformed => Some(Performed),
            _ => None,
        }
    }
}

/// A modality asserted of one action.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModalityAssertion {
    pub action: ActionId,
    pub modality: Modality,
}

impl ModalityAssertion {
    pub fn new(action: impl Into<ActionId>, modality: Modality) -> Self {
        ModalityAssertion {
            action: action.into(),
            modality,
        }
    }
}

/// Result of closing a modality set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModalityClosure {
    pub assertions: BTreeSet<ModalityAssertion>,
    /// Pairs of direct contraries present after closure.
    pub contradictions: Vec<(ModalityAssertion, ModalityAssertion)>,
}

/// Normalizes an action term.
///
/// Two rewrites apply, repeatedly:
/// - a double negation cancels;
/// - a composition of negations through an `ea_compliant` operator is the
///   negation of the composition of the underlying actions.
pub fn normalize(action: Action) -> Action {
    match action.term {
        ActionTerm::Negation(inner) => {
            let inner = normalize(*inner);
            match inner.term {
                ActionTerm::Negation(core) => *core,
                _ => Action {
                    term: ActionTerm::Negation(Box::new(inner)),
                    organization: Organization::Void,
                    ..action
                },
            }
        }
        ActionTerm::Composed { op, parts } => {
            let parts: Vec<Action> = parts.into_iter().map(normalize).collect();
            let all_negations = !parts.is_empty()
                && parts
                    .iter()
                    .all(|p| matches!(p.term, ActionTerm::Negation(_)));
            if op.ea_compliant && all_negations {
                let inners: Vec<Action> = parts
                    .into_iter()
                    .map(|p| match p.term {
                        ActionTerm::Negation(core) => *core,
                        _ => unreachable!(),
                    })
                    .collect();
                let direction = derive_direction(&inners);
                let composed = Action {
                    id: action.id.clone(),
                    term: ActionTerm::Composed { op, parts: inners },
                    direction,
                    duration_kind: action.duration_kind,
                    organization: Organization::Mediated,
                    dependency: action.dependency,
                    comm: None,
                };
                Action {
                    id: action.id,
                    term: ActionTerm::Negation(Box::new(composed)),
                    direction,
                    duration_kind: action.duration_kind,
                    organization: Organization::Void,
                    dependency: action.dependency,
                    comm: action.comm,
                }
            } else if let Some(resolved) = resolve_complement(&op, &parts) {
                resolved
            } else {
                let direction = derive_direction(&parts);
                Action {
                    term: ActionTerm::Composed { op, parts },
                    direction,
                    organization: Organization::Mediated,
                    ..action
                }
            }
        }
        _ => action,
    }
}

fn derive_direction(parts: &[Action]) -> Direction {
    parts
        .iter()
        .map(|p| p.direction)
        .reduce(Direction::join)
        .unwrap_or(Direction::Internal)
}

/// Complement resolution: all parts are negations of distinct universe
/// members and exactly one member remains.
fn resolve_complement(op: &CompositionOp, parts: &[Action]) -> Option<Action> {
    let universe = op.complement_universe.as_ref()?;
    let mut remaining: Vec<&Action> = universe.iter().collect();
    for part in parts {
        let ActionTerm::Negation(inner) = &part.term else {
            return None;
        };
        let pos = remaining.iter().position(|u| u.id == inner.id)?;
        remaining.remove(pos);
    }
    if remaining.len() == 1 {
        Some(remaining[0].clone())
    } else {
        None
    }
}

/// Negation of an action, normalized so that negation is an involution.
pub fn negate(action: Action) -> Result<Action, ActionError> {
    let normalized = normalize(action);
    match normalized.term {
        ActionTerm::TotalInaction => Err(ActionError::NegateTotalInaction),
        ActionTerm::Negation(inner) => Ok(*inner),
        _ => Ok(Action {
            id: ActionId::new(format!("not_{}", normalized.id)),
            direction: normalized.direction,
            duration_kind: normalized.duration_kind,
            organization: Organization::Void,
            dependency: normalized.dependency,
            comm: None,
            term: ActionTerm::Negation(Box::new(normalized)),
        }),
    }
}

/// Composes actions through an operator and normalizes the result.
pub fn compose(op: CompositionOp, parts: Vec<Action>) -> Result<Action, ActionError> {
    if parts.len() != op.arity {
        return Err(ActionError::ArityMismatch {
            op: op.name,
            expected: op.arity,
            got: parts.len(),
        });
    }
    let id = ActionId::new(format!(
        "{}({})",
        op.name,
        parts
            .iter()
            .map(|p| p.id.as_str())
            .collect::<Vec<_>>()
            .join(",")
    ));
    let direction = derive_direction(&parts);
    let duration_kind = if parts
        .iter()
        .all(|p| p.duration_kind == DurationKind::Singular)
    {
        DurationKind::Singular
    } else {
        DurationKind::Regular
    };
    Ok(normalize(Action {
        id,
        term: ActionTerm::Composed { op, parts },
        direction,
        duration_kind,
        organization: Organization::Mediated,
        dependency: DependencyClass::Unclassified,
        comm: None,
    }))
}

/// The inclusion order: `includes(a, b)` holds when performing `a` includes
/// performing `b`.
///
/// Sub-terms of a composition are included; inclusion is antitone under
/// negation; every inaction is included in the total inaction. Inclusion
/// does not look through a negation node except by the antitone rule.
pub fn includes(a: &Action, b: &Action) -> bool {
    if a.term == b.term {
        return true;
    }
    match (&a.term, &b.term) {
        (ActionTerm::Composed { parts, .. }, _) => parts.iter().any(|p| includes(p, b)),
        (ActionTerm::Negation(x), ActionTerm::Negation(y)) => includes(y, x),
        (ActionTerm::TotalInaction, ActionTerm::Negation(_)) => true,
        _ => false,
    }
}

/// Closes a set of modality assertions under the derivation rules and
/// reports direct contraries present in the closure.
///
/// Rules: unknown implies unidentified; unidentified implies unspecified;
/// performed implies possible; an unknown, possible and permitted action is
/// not performed.
pub fn modality_closure(assertions: &BTreeSet<ModalityAssertion>) -> ModalityClosure {
    let mut closed = assertions.clone();
    loop {
        let mut added = Vec::new();
        let mut by_action: BTreeMap<&ActionId, BTreeSet<Modality>> = BTreeMap::new();
        for a in &closed {
            by_action.entry(&a.action).or_default().insert(a.modality);
        }
        for (action, mods) in &by_action {
            let mut derive = |m: Modality| {
                if !mods.contains(&m) {
                    added.push(ModalityAssertion {
                        action: (*action).clone(),
                        modality: m,
                    });
                }
            };
            if mods.contains(&Modality::Unknown) {
                derive(Modality::Unidentified);
            }
            if mods.contains(&Modality::Unidentified) {
                derive(Modality::Unspecified);
            }
            if mods.contains(&Modality::Performed) {
                derive(Modality::Possible);
            }
            if mods.contains(&Modality::Unknown)
                && mods.contains(&Modality::Possible)
                && mods.contains(&Modality::Permitted)
            {
                derive(Modality::NotPerformed);
            }
        }
        if added.is_empty() {
            break;
        }
        closed.extend(added);
    }

    let mut contradictions = Vec::new();
    for a in &closed {
        if let Some(contrary) = a.modality.contrary() {
            let other = ModalityAssertion {
                action: a.action.clone(),
                modality: contrary,
            };
            if a.modality < contrary && closed.contains(&other) {
                contradictions.push((a.clone(), other));
            }
        }
    }
    ModalityClosure {
        assertions: closed,
        contradictions,
    }
}

/// An axis value in the combined-action function: a concrete element or the
/// void padding.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Padded<T> {
    Void,
    Item(T),
}

/// The combined-action function of one actor: reactions and proactions
/// unified over the padded axes `(Trn ∪ {void}) × (Rel ∪ {void})`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Combact {
    pub entries: BTreeMap<(Padded<ActionId>, Padded<RelationId>), BTreeSet<ActionId>>,
}

impl Combact {
    /// Restriction to the transaction axis (void relation) reproduces the
    /// reaction relation.
    pub fn react_restriction(&self) -> BTreeSet<(ActionId, ActionId)> {
        self.entries
            .iter()
            .filter_map(|((t, r), acts)| match (t, r) {
                (Padded::Item(t), Padded::Void) => Some((t, acts)),
                _ => None,
            })
            .flat_map(|(t, acts)| acts.iter().map(move |a| (t.clone(), a.clone())))
            .collect()
    }

    /// Restriction to the relation axis (void transaction) reproduces the
    /// proaction relation.
    pub fn proact_restriction(&self) -> BTreeSet<(RelationId, ActionId)> {
        self.entries
            .iter()
            .filter_map(|((t, r), acts)| match (t, r) {
                (Padded::Void, Padded::Item(r)) => Some((r, acts)),
                _ => None,
            })
            .flat_map(|(r, acts)| acts.iter().map(move |a| (r.clone(), a.clone())))
            .collect()
    }
}

/// Builds the combined-action function of an actor by padding reactions
/// with a void relation and proactions with a void transaction.
pub fn build_combact(actor: &ActorSpec) -> Combact {
    let mut entries: BTreeMap<(Padded<ActionId>, Padded<RelationId>), BTreeSet<ActionId>> =
        BTreeMap::new();
    for (t, a) in &actor.react {
        entries
            .entry((Padded::Item(t.clone()), Padded::Void))
            .or_default()
            .insert(a.clone());
    }
    for (r, a) in &actor.proact {
        entries
            .entry((Padded::Void, Padded::Item(r.clone())))
            .or_default()
            .insert(a.clone());
    }
    Combact { entries }
}

/// A lookup table from action id to its definition.
pub type ActionTable = BTreeMap<ActionId, Action>;

/// Dependency classification of one action within one actor.
///
/// Mediated actions fall outside the primitive/automatic taxonomy. Void
/// actions carry the class of the action they negate. Direct actions are
/// primitive when they occur on a single axis (reactions only or proactions
/// only), automatic when they occur on both, and unclassified when they
/// occur on neither.
pub fn classify_dependency(
    actor: &ActorSpec,
    table: &ActionTable,
    action: &ActionId,
) -> Result<DependencyClass, ActionError> {
    if !actor.act.contains(action) {
        return Err(ActionError::NotOwned {
            actor: actor.name.clone(),
            action: action.clone(),
        });
    }
    Ok(dependency_of(actor, table, action))
}

pub(crate) fn dependency_of(
    actor: &ActorSpec,
    table: &ActionTable,
    action: &ActionId,
) -> DependencyClass {
    let Some(core) = strip_negations(table, action) else {
        return DependencyClass::Unclassified;
    };
    if core.organization == Organization::Mediated
        || matches!(core.term, ActionTerm::Composed { .. })
    {
        return DependencyClass::MediatedDep;
    }
    if matches!(core.term, ActionTerm::TotalInaction) {
        return DependencyClass::Unclassified;
    }
    // Occurrences are counted at the core level: an action and its inaction
    // share all occurrences, so they always classify alike.
    let target = Some(core.id.clone());
    let occurs = |id: &ActionId| strip_negations(table, id).map(|a| a.id) == target;
    let in_react = actor.react.iter().any(|(_, a)| occurs(a));
    let in_proact = actor.proact.iter().any(|(_, a)| occurs(a));
    match (in_react, in_proact) {
        (true, true) => DependencyClass::Automatic,
        (true, false) | (false, true) => DependencyClass::Primitive,
        (false, false) => DependencyClass::Unclassified,
    }
}

/// Follows negation wrappers down to the underlying action, resolving
/// atomic cores through the table so attributes are canonical.
fn strip_negations(table: &ActionTable, id: &ActionId) -> Option<Action> {
    let mut visited = BTreeSet::new();
    let mut current = table.get(id)?.clone();
    loop {
        match current.term {
            ActionTerm::Negation(inner) => current = *inner,
            ActionTerm::Atomic(ref atom) => match table.get(atom) {
                Some(canonical) if canonical != &current && visited.insert(atom.clone()) => {
                    current = canonical.clone();
                }
                _ => return Some(current),
            },
            _ => return Some(current),
        }
    }
}

/// Checks Axiom EA over a set of action definitions: every composition
/// whose parts are all void must itself resolve to a void action.
pub fn check_emptiness_axiom(table: &ActionTable) -> Vec<Witness> {
    let mut witnesses = Vec::new();
    for action in table.values() {
        check_ea_term(action, &mut witnesses);
    }
    witnesses
}

fn check_ea_term(action: &Action, witnesses: &mut Vec<Witness>) {
    match &action.term {
        ActionTerm::Composed { op, parts } => {
            for p in parts {
                check_ea_term(p, witnesses);
            }
            if !parts.is_empty() && parts.iter().all(Action::is_void) {
                let resolved = normalize(action.clone());
                if !resolved.is_void() {
                    witnesses.push(Witness::new(
                        "EA",
                        [action.id.to_string(), op.name.clone()],
                        format!(
                            "composition of inactions resolves to the proper action {}",
                            resolved.id
                        ),
                    ));
                }
            }
        }
        ActionTerm::Negation(inner) => check_ea_term(inner, witnesses),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walk() -> Action {
        Action::atomic("walk", Direction::Internal, DurationKind::Regular)
    }

    fn run() -> Action {
        Action::atomic("run", Direction::Internal, DurationKind::Regular)
    }

    fn stand() -> Action {
        Action::atomic("stand", Direction::Internal, DurationKind::Regular)
    }

    fn seq2() -> CompositionOp {
        CompositionOp::new("seq2", 2, true)
    }

    #[test]
    fn negation_is_an_involution() {
        let w = walk();
        let once = negate(w.clone()).unwrap();
        assert!(once.is_void());
        assert_eq!(once.organization, Organization::Void);
        let twice = negate(once).unwrap();
        assert_eq!(twice, w);
    }

    #[test]
    fn negating_total_inaction_is_rejected() {
        assert_eq!(
            negate(Action::total_inaction("tia")),
            Err(ActionError::NegateTotalInaction)
        );
    }

    #[test]
    fn composition_of_negations_through_compliant_op_is_a_negation() {
        let a = negate(walk()).unwrap();
        let b = negate(run()).unwrap();
        let composed = compose(seq2(), vec![a, b]).unwrap();
        assert!(matches!(composed.term, ActionTerm::Negation(_)));
        let ActionTerm::Negation(inner) = &composed.term else {
            unreachable!()
        };
        assert!(matches!(inner.term, ActionTerm::Composed { .. }));
    }

    #[test]
    fn complement_operator_refutes_emptiness_axiom() {
        let mut op = CompositionOp::new("L", 2, false);
        op.complement_universe = Some(vec![run(), walk(), stand()]);
        let composed = compose(
            op,
            vec![negate(run()).unwrap(), negate(walk()).unwrap()],
        )
        .unwrap();
        assert_eq!(composed, stand());
        assert!(composed.is_proper());
    }

    #[test]
    fn composition_direction_follows_parts() {
        let internal = compose(seq2(), vec![walk(), run()]).unwrap();
        assert_eq!(internal.direction, Direction::Internal);

        let ext = Action::atomic("wave", Direction::External, DurationKind::Singular);
        let mixed = compose(seq2(), vec![walk(), ext]).unwrap();
        assert_eq!(mixed.direction, Direction::Combined);
    }

    #[test]
    fn composition_of_proper_actions_is_mediated() {
        let composed = compose(seq2(), vec![walk(), run()]).unwrap();
        assert_eq!(composed.organization, Organization::Mediated);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        assert!(matches!(
            compose(seq2(), vec![walk()]),
            Err(ActionError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn includes_direct_parts_and_is_reflexive() {
        let composed = compose(seq2(), vec![walk(), run()]).unwrap();
        assert!(includes(&composed, &walk()));
        assert!(includes(&composed, &run()));
        assert!(includes(&composed, &composed));
        assert!(!includes(&walk(), &composed));
    }

    #[test]
    fn every_inaction_is_included_in_total_inaction() {
        let tia = Action::total_inaction("tia");
        assert!(includes(&tia, &negate(walk()).unwrap()));
        assert!(includes(&tia, &negate(run()).unwrap()));
        assert!(!includes(&tia, &walk()));
    }

    #[test]
    fn inclusion_is_antitone_under_negation() {
        let composed = compose(seq2(), vec![walk(), run()]).unwrap();
        assert!(includes(&composed, &walk()));
        let not_composed = negate(composed).unwrap();
        let not_walk = negate(walk()).unwrap();
        assert!(includes(&not_walk, &not_composed));
        assert!(!includes(&not_composed, &not_walk));
    }

    #[test]
    fn modality_closure_derives_the_neutral_chain() {
        let set: BTreeSet<_> = [ModalityAssertion::new("a", Modality::Unknown)].into();
        let closure = modality_closure(&set);
        assert!(closure
            .assertions
            .contains(&ModalityAssertion::new("a", Modality::Unidentified)));
        assert!(closure
            .assertions
            .contains(&ModalityAssertion::new("a", Modality::Unspecified)));
        assert!(closure.contradictions.is_empty());
    }

    #[test]
    fn modality_closure_finds_the_performed_contradiction() {
        let set: BTreeSet<_> = [
            ModalityAssertion::new("a", Modality::Unknown),
            ModalityAssertion::new("a", Modality::Possible),
            ModalityAssertion::new("a", Modality::Permitted),
            ModalityAssertion::new("a", Modality::Performed),
        ]
        .into();
        let closure = modality_closure(&set);
        assert_eq!(closure.contradictions.len(), 1);
        let (lhs, rhs) = &closure.contradictions[0];
        assert_eq!(lhs.modality, Modality::Performed);
        assert_eq!(rhs.modality, Modality::NotPerformed);
    }

    #[test]
    fn modality_closure_is_idempotent() {
        let set: BTreeSet<_> = [
            ModalityAssertion::new("a", Modality::Unknown),
            ModalityAssertion::new("b", Modality::Performed),
        ]
        .into();
        let once = modality_closure(&set);
        let twice = modality_closure(&once.assertions);
        assert_eq!(once.assertions, twice.assertions);
    }
}
