//! Inter-actor relations and actor classification.
//!
//! Identity compares the five structural components for equality; dynamic
//! equivalence compares the action components after void-normalization, so
//! an actor with only void actions is equivalent to one with none.
//! Homology searches for a witnessing isomorphism between components that
//! carries the reaction and proaction pairs exactly; dynamic homology
//! restricts the search to the action components. The searches are exact
//! backtracking over bijections, sized for desk-scale components.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::action::{dependency_of, ActionTable, DependencyClass};
use crate::ids::{ActionId, ActorName, RelationId};
use crate::model::{ActorSpec, Environment, ModelError};
use crate::witness::Witness;

/// Which components a witnessing isomorphism spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoScope {
    /// All five components.
    Structural,
    /// Action components only; the relation map covers just the proaction
    /// support.
    Dynamic,
}

/// A witnessing isomorphism between the components of two actors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentIsomorphism {
    pub scope: IsoScope,
    pub rel_map: BTreeMap<RelationId, RelationId>,
    pub act_map: BTreeMap<ActionId, ActionId>,
    pub trn_map: BTreeMap<ActionId, ActionId>,
}

/// Behavioral class of an actor, from the dependency classes of its
/// actions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BehavioralClass {
    /// Only primitive actions.
    Primitive,
    /// Only primitive or automatic actions.
    Automatic,
    General,
}

/// Structural class of an actor, from the component forest. The three
/// values partition actors; the paper's four overlapping classes are
/// recovered through the predicate methods.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructuralClass {
    /// No parts at all.
    Prime,
    /// Has parts, none of which are registered actors.
    Primitive,
    /// Has parts that are registered actors.
    Compound,
}

impl StructuralClass {
    pub fn is_prime(self) -> bool {
        self == StructuralClass::Prime
    }

    /// No parts that are actors.
    pub fn is_primitive(self) -> bool {
        matches!(self, StructuralClass::Prime | StructuralClass::Primitive)
    }

    /// Has parts.
    pub fn is_composite(self) -> bool {
        matches!(self, StructuralClass::Primitive | StructuralClass::Compound)
    }

    pub fn is_compound(self) -> bool {
        self == StructuralClass::Compound
    }
}

/// Communication classes; every class that holds is reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommClass {
    Closed,
    Inactive,
    NonReceptive,
    Open,
    Undemanding,
    Active,
    Receptive,
}

/// Full classification of one actor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub actor: ActorName,
    pub behavioral: BehavioralClass,
    pub structural: StructuralClass,
    pub communication: BTreeSet<CommClass>,
    /// Not a part or component of any other actor.
    pub primary: bool,
}

impl ClassificationReport {
    pub fn is_behaviorally_primitive(&self) -> bool {
        self.behavioral == BehavioralClass::Primitive
    }

    pub fn is_behaviorally_automatic(&self) -> bool {
        matches!(
            self.behavioral,
            BehavioralClass::Primitive | BehavioralClass::Automatic
        )
    }
}

/// Strips void actions from the action components: void members leave
/// `act`, and pairs whose response is void leave the relations.
pub fn void_normalize(table: &ActionTable, actor: &ActorSpec) -> ActorSpec {
    let is_void =
        |id: &ActionId| table.get(id).is_some_and(crate::action::Action::is_void);
    let mut normalized = actor.clone();
    normalized.act = actor.act.iter().filter(|a| !is_void(a)).cloned().collect();
    normalized.react = actor
        .react
        .iter()
        .filter(|(_, a)| !is_void(a))
        .cloned()
        .collect();
    normalized.proact = actor
        .proact
        .iter()
        .filter(|(_, a)| !is_void(a))
        .cloned()
        .collect();
    normalized
}

fn sorted_rel(actor: &ActorSpec) -> Vec<&crate::model::RelationItem> {
    let mut rel: Vec<_> = actor.rel.iter().collect();
    rel.sort();
    rel
}

/// Identity: equality of all five structural components, names excluded.
pub fn identical(a: &ActorSpec, b: &ActorSpec) -> bool {
    sorted_rel(a) == sorted_rel(b)
        && a.act == b.act
        && a.trn == b.trn
        && a.react == b.react
        && a.proact == b.proact
}

/// Dynamic equivalence: equality of the action components after
/// void-normalization.
pub fn dyn_equivalent(table: &ActionTable, a: &ActorSpec, b: &ActorSpec) -> bool {
    let na = void_normalize(table, a);
    let nb = void_normalize(table, b);
    na.act == nb.act && na.trn == nb.trn && na.react == nb.react && na.proact == nb.proact
}

/// Search options for the homology witnesses.
#[derive(Clone, Copy, Debug, Default)]
pub struct IsoOptions {
    /// Require the action map to preserve voidness and the dependency
    /// classes that drive behavioral classification.
    pub preserve_classes: bool,
}

struct IsoSearch<'a> {
    table: &'a ActionTable,
    a: &'a ActorSpec,
    b: &'a ActorSpec,
    options: IsoOptions,
}

impl<'a> IsoSearch<'a> {
    /// Backtracking over bijections of one axis. `candidates[i]` lists the
    /// indices of `right` that may match `left[i]`; `check` validates a
    /// complete assignment.
    fn match_axis<T: Ord + Clone>(
        left: &[T],
        right: &[T],
        candidate: impl Fn(&T, &T) -> bool,
        check: impl Fn(&BTreeMap<T, T>) -> bool,
        mut accept: impl FnMut(BTreeMap<T, T>) -> bool,
    ) -> bool {
        if left.len() != right.len() {
            return false;
        }
        fn backtrack<T: Ord + Clone>(
            left: &[T],
            right: &[T],
            used: &mut Vec<bool>,
            assignment: &mut BTreeMap<T, T>,
            depth: usize,
            candidate: &impl Fn(&T, &T) -> bool,
            check: &impl Fn(&BTreeMap<T, T>) -> bool,
            accept: &mut impl FnMut(BTreeMap<T, T>) -> bool,
        ) -> bool {
            if depth == left.len() {
                return check(assignment) && accept(assignment.clone());
            }
            for (j, r) in right.iter().enumerate() {
                if used[j] || !candidate(&left[depth], r) {
                    continue;
                }
                used[j] = true;
                assignment.insert(left[depth].clone(), r.clone());
                if backtrack(
                    left, right, used, assignment, depth + 1, candidate, check, accept,
                ) {
                    return true;
                }
                assignment.remove(&left[depth]);
                used[j] = false;
            }
            false
        }
        let mut used = vec![false; right.len()];
        let mut assignment = BTreeMap::new();
        backtrack(
            left,
            right,
            &mut used,
            &mut assignment,
            0,
            &candidate,
            &check,
            &mut accept,
        )
    }

    fn run(&self, scope: IsoScope) -> Option<ComponentIsomorphism> {
        let (a, b) = (self.a, self.b);
        if a.act.len() != b.act.len()
            || a.trn.len() != b.trn.len()
            || a.react.len() != b.react.len()
            || a.proact.len() != b.proact.len()
        {
            return None;
        }

        let act_a: Vec<ActionId> = a.act.iter().cloned().collect();
        let act_b: Vec<ActionId> = b.act.iter().cloned().collect();
        let trn_a: Vec<ActionId> = a.trn.iter().cloned().collect();
        let trn_b: Vec<ActionId> = b.trn.iter().cloned().collect();

        let (rel_a, rel_b): (Vec<RelationId>, Vec<RelationId>) = match scope {
            IsoScope::Structural => (
                a.rel_ids().into_iter().collect(),
                b.rel_ids().into_iter().collect(),
            ),
            IsoScope::Dynamic => (
                a.proact.iter().map(|(r, _)| r.clone()).collect::<BTreeSet<_>>().into_iter().collect(),
                b.proact.iter().map(|(r, _)| r.clone()).collect::<BTreeSet<_>>().into_iter().collect(),
            ),
        };
        if rel_a.len() != rel_b.len() {
            return None;
        }

        // Degree profiles prune the action axis; they are invariant under
        // any commuting bijection. Class preservation constrains the map by
        // voidness and the dependency class in the void-normalized actor.
        let normalized = self
            .options
            .preserve_classes
            .then(|| (void_normalize(self.table, a), void_normalize(self.table, b)));
        let profile = |actor: &ActorSpec, norm: Option<&ActorSpec>, id: &ActionId| {
            let react_deg = actor.react.iter().filter(|(_, x)| x == id).count();
            let proact_deg = actor.proact.iter().filter(|(_, x)| x == id).count();
            let semantics = norm.map(|n| {
                let void = self
                    .table
                    .get(id)
                    .is_some_and(crate::action::Action::is_void);
                (void, dependency_of(n, self.table, id))
            });
            (react_deg, proact_deg, semantics)
        };
        let (norm_a, norm_b) = match &normalized {
            Some((na, nb)) => (Some(na), Some(nb)),
            None => (None, None),
        };

        let mut found = None;
        Self::match_axis(
            &act_a,
            &act_b,
            |x, y| profile(a, norm_a, x) == profile(b, norm_b, y),
            |_| true,
            |act_map| {
                // Transactions must carry their reaction sets exactly.
                let react_image = |t: &ActionId| -> BTreeSet<ActionId> {
                    a.react
                        .iter()
                        .filter(|(tt, _)| tt == t)
                        .map(|(_, x)| act_map[x].clone())
                        .collect()
                };
                let react_of_b = |t: &ActionId| -> BTreeSet<ActionId> {
                    b.react
                        .iter()
                        .filter(|(tt, _)| tt == t)
                        .map(|(_, x)| x.clone())
                        .collect()
                };
                let mut found_trn = None;
                Self::match_axis(
                    &trn_a,
                    &trn_b,
                    |t, u| react_image(t) == react_of_b(u),
                    |_| true,
                    |trn_map| {
                        found_trn = Some(trn_map);
                        true
                    },
                );
                let Some(trn_map) = found_trn else {
                    return false;
                };

                let proact_image = |r: &RelationId| -> BTreeSet<ActionId> {
                    a.proact
                        .iter()
                        .filter(|(rr, _)| rr == r)
                        .map(|(_, x)| act_map[x].clone())
                        .collect()
                };
                let proact_of_b = |r: &RelationId| -> BTreeSet<ActionId> {
                    b.proact
                        .iter()
                        .filter(|(rr, _)| rr == r)
                        .map(|(_, x)| x.clone())
                        .collect()
                };
                let mut found_rel = None;
                Self::match_axis(
                    &rel_a,
                    &rel_b,
                    |r, s| proact_image(r) == proact_of_b(s),
                    |_| true,
                    |rel_map| {
                        found_rel = Some(rel_map);
                        true
                    },
                );
                let Some(rel_map) = found_rel else {
                    return false;
                };

                found = Some(ComponentIsomorphism {
                    scope,
                    rel_map,
                    act_map: act_map.clone(),
                    trn_map,
                });
                true
            },
        );
        found
    }
}

/// Searches for a structural isomorphism between two actors: bijections of
/// relations, actions and transactions carrying the reaction and proaction
/// pairs exactly.
pub fn homological(
    table: &ActionTable,
    a: &ActorSpec,
    b: &ActorSpec,
    options: IsoOptions,
) -> Option<ComponentIsomorphism> {
    IsoSearch {
        table,
        a,
        b,
        options,
    }
    .run(IsoScope::Structural)
}

/// Searches for an isomorphism of the action components only.
pub fn dyn_homological(
    table: &ActionTable,
    a: &ActorSpec,
    b: &ActorSpec,
    options: IsoOptions,
) -> Option<ComponentIsomorphism> {
    IsoSearch {
        table,
        a,
        b,
        options,
    }
    .run(IsoScope::Dynamic)
}

/// Behavioral class over the void-normalized action set. Computed on
/// normalized components, so dynamically equivalent actors always classify
/// alike.
pub fn behavioral_class(table: &ActionTable, actor: &ActorSpec) -> BehavioralClass {
    let normalized = void_normalize(table, actor);
    let mut all_primitive = true;
    let mut all_automatic = true;
    for action in &normalized.act {
        match dependency_of(&normalized, table, action) {
            DependencyClass::Primitive => {}
            DependencyClass::Automatic => all_primitive = false,
            DependencyClass::MediatedDep | DependencyClass::Unclassified => {
                all_primitive = false;
                all_automatic = false;
            }
        }
    }
    if all_primitive {
        BehavioralClass::Primitive
    } else if all_automatic {
        BehavioralClass::Automatic
    } else {
        BehavioralClass::General
    }
}

/// Classifies one registered actor along the behavioral, structural and
/// communication dimensions.
pub fn classify(env: &Environment, name: &ActorName) -> Result<ClassificationReport, ModelError> {
    let actor = env.actor(name)?;
    let behavioral = behavioral_class(&env.actions, actor);

    let structural = if actor.components.is_empty() {
        StructuralClass::Prime
    } else if actor
        .components
        .iter()
        .any(|c| env.actors.contains_key(c))
    {
        StructuralClass::Compound
    } else {
        StructuralClass::Primitive
    };

    let active = actor
        .act
        .iter()
        .any(|a| env.actions.get(a).is_some_and(|d| d.is_send()));
    let receptive = actor
        .trn
        .iter()
        .any(|t| env.actions.get(t).is_some_and(|d| d.is_receive()));
    let demanding = actor
        .act
        .iter()
        .any(|a| env.actions.get(a).is_some_and(|d| d.is_requesting_send()));
    let mut communication = BTreeSet::new();
    if active {
        communication.insert(CommClass::Active);
    } else {
        communication.insert(CommClass::Inactive);
    }
    if receptive {
        communication.insert(CommClass::Receptive);
    } else {
        communication.insert(CommClass::NonReceptive);
    }
    if active && receptive {
        communication.insert(CommClass::Open);
    }
    if !active && !receptive {
        communication.insert(CommClass::Closed);
    }
    if !demanding {
        communication.insert(CommClass::Undemanding);
    }

    let primary = !env
        .actors
        .values()
        .any(|other| other.name != *name && other.components.contains(name));

    Ok(ClassificationReport {
        actor: name.clone(),
        behavioral,
        structural,
        communication,
        primary,
    })
}

/// The claimed relation of an actor pair under preservation checking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairRelation {
    DynEquivalent,
    Homological,
    DynHomological,
}

/// Verifies that the claimed relations hold and carry the behavioral
/// classes across each pair. Homology witnesses are searched with class
/// preservation required, matching the hypothesis under which the
/// preservation laws are stated.
pub fn check_preservation(
    table: &ActionTable,
    pairs: &[(&ActorSpec, &ActorSpec, PairRelation)],
) -> Vec<Witness> {
    let mut witnesses = Vec::new();
    for (a, b, relation) in pairs {
        let holds = match relation {
            PairRelation::DynEquivalent => dyn_equivalent(table, a, b),
            PairRelation::Homological => homological(
                table,
                a,
                b,
                IsoOptions {
                    preserve_classes: true,
                },
            )
            .is_some(),
            PairRelation::DynHomological => dyn_homological(
                table,
                a,
                b,
                IsoOptions {
                    preserve_classes: true,
                },
            )
            .is_some(),
        };
        if !holds {
            witnesses.push(Witness::new(
                "preservation",
                [a.name.to_string(), b.name.to_string()],
                format!("claimed relation {relation:?} does not hold"),
            ));
            continue;
        }
        let ca = behavioral_class(table, a);
        let cb = behavioral_class(table, b);
        let primitive_carried =
            (ca == BehavioralClass::Primitive) == (cb == BehavioralClass::Primitive);
        let automatic_carried = matches!(ca, BehavioralClass::Primitive | BehavioralClass::Automatic)
            == matches!(cb, BehavioralClass::Primitive | BehavioralClass::Automatic);
        if !primitive_carried || !automatic_carried {
            witnesses.push(Witness::new(
                "preservation",
                [a.name.to_string(), b.name.to_string()],
                format!("behavioral classes differ: {ca:?} vs {cb:?} under {relation:?}"),
            ));
        }
    }
    witnesses
}

/// Consequences of the Modeling Axiom: with MA asserted every part is a
/// registered actor, so structurally primitive actors are prime and
/// composite actors are compound.
pub fn check_modeling_consequences(env: &Environment) -> Result<Vec<Witness>, ModelError> {
    if !env.laws.ma {
        return Err(ModelError::ModelingAxiomOff(env.name.clone()));
    }
    let mut witnesses = Vec::new();
    for (name, actor) in &env.actors {
        for part in &actor.components {
            if !env.actors.contains_key(part) {
                witnesses.push(Witness::new(
                    "MA",
                    [name.to_string(), part.to_string()],
                    "part is not modeled by a registered actor",
                ));
            }
        }
    }
    Ok(witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{Action, CommKind, Direction, DurationKind};

    fn atomic(id: &str) -> Action {
        Action::atomic(id, Direction::Internal, DurationKind::Regular)
    }

    fn table(ids: &[&str]) -> ActionTable {
        ids.iter().map(|id| ((*id).into(), atomic(id))).collect()
    }

    fn actor(name: &str) -> ActorSpec {
        ActorSpec::new(name)
    }

    /// Deterministic one-letter automaton over two states, per-alphabet.
    fn automaton(name: &str, letters: [&str; 2]) -> ActorSpec {
        let mut a = actor(name);
        a.trn = [letters[0].into(), letters[1].into()].into();
        a.act = ["go_s_t".into(), "go_t_s".into()].into();
        a.react = [
            (letters[0].into(), "go_s_t".into()),
            (letters[1].into(), "go_t_s".into()),
        ]
        .into();
        a
    }

    #[test]
    fn identical_ignores_the_name() {
        let t = table(&["x"]);
        let mut a = actor("A");
        a.act = ["x".into()].into();
        let mut b = a.clone();
        b.name = "B".into();
        assert!(identical(&a, &b));
        assert!(dyn_equivalent(&t, &a, &b));
        b.act.insert("y".into());
        assert!(!identical(&a, &b));
    }

    #[test]
    fn void_only_actor_is_dyn_equivalent_to_empty() {
        let mut t = table(&["x"]);
        let not_x = crate::action::negate(atomic("x")).unwrap();
        t.insert(not_x.id.clone(), not_x.clone());
        let empty = actor("A");
        let mut voids = actor("B");
        voids.act = [not_x.id.clone()].into();
        assert!(dyn_equivalent(&t, &empty, &voids));
        assert!(!identical(&empty, &voids));
    }

    #[test]
    fn automata_with_renamed_alphabets_are_homological() {
        let t = table(&["0", "1", "a", "b", "go_s_t", "go_t_s"]);
        let first = automaton("A", ["0", "1"]);
        let second = automaton("B", ["a", "b"]);
        let iso = homological(&t, &first, &second, IsoOptions::default()).unwrap();
        assert_eq!(iso.trn_map[&"0".into()], "a".into());
        assert_eq!(iso.trn_map[&"1".into()], "b".into());
        assert_eq!(iso.act_map[&"go_s_t".into()], "go_s_t".into());
    }

    #[test]
    fn cardinality_mismatch_has_no_witness() {
        let t = table(&["x", "y"]);
        let mut a = actor("A");
        a.act = ["x".into()].into();
        let mut b = actor("B");
        b.act = ["x".into(), "y".into()].into();
        assert!(homological(&t, &a, &b, IsoOptions::default()).is_none());
        assert!(dyn_homological(&t, &a, &b, IsoOptions::default()).is_none());
    }

    #[test]
    fn homological_projects_to_dyn_homological() {
        let t = table(&["0", "1", "a", "b", "go_s_t", "go_t_s"]);
        let first = automaton("A", ["0", "1"]);
        let second = automaton("B", ["a", "b"]);
        assert!(homological(&t, &first, &second, IsoOptions::default()).is_some());
        assert!(dyn_homological(&t, &first, &second, IsoOptions::default()).is_some());
    }

    #[test]
    fn dyn_equivalent_pair_has_identity_witness() {
        let t = table(&["x", "t"]);
        let mut a = actor("A");
        a.act = ["x".into()].into();
        a.trn = ["t".into()].into();
        a.react = [("t".into(), "x".into())].into();
        let mut b = a.clone();
        b.name = "B".into();
        let iso = dyn_homological(&t, &a, &b, IsoOptions::default()).unwrap();
        assert_eq!(iso.act_map[&"x".into()], "x".into());
        assert_eq!(iso.trn_map[&"t".into()], "t".into());
    }

    fn env_with(table: ActionTable, actors: Vec<ActorSpec>) -> Environment {
        let mut env = Environment::new("e");
        env.actions = table;
        for a in actors {
            env.insert_actor(a);
        }
        env
    }

    #[test]
    fn one_state_automaton_is_behaviorally_primitive() {
        let mut a = actor("M");
        a.trn = ["in0".into()].into();
        a.act = ["out0".into()].into();
        a.react = [("in0".into(), "out0".into())].into();
        let env = env_with(table(&["in0", "out0"]), vec![a]);
        let report = classify(&env, &"M".into()).unwrap();
        assert_eq!(report.behavioral, BehavioralClass::Primitive);
        assert!(report.is_behaviorally_automatic());
    }

    #[test]
    fn receptor_is_inactive_hence_undemanding() {
        let mut t = table(&["accept"]);
        t.get_mut(&"accept".into()).unwrap().comm = Some(CommKind::Receive);
        let mut a = actor("R");
        a.trn = ["accept".into()].into();
        let env = env_with(t, vec![a]);
        let report = classify(&env, &"R".into()).unwrap();
        assert!(report.communication.contains(&CommClass::Inactive));
        assert!(report.communication.contains(&CommClass::Undemanding));
        assert!(report.communication.contains(&CommClass::Receptive));
        assert!(!report.communication.contains(&CommClass::Closed));
    }

    #[test]
    fn generator_is_non_receptive() {
        let mut t = table(&["emit", "out"]);
        t.get_mut(&"emit".into()).unwrap().comm = Some(CommKind::Send {
            to: "G".into(),
            delivers: "out".into(),
            requesting: false,
        });
        let mut a = actor("G");
        a.act = ["emit".into()].into();
        let env = env_with(t, vec![a]);
        let report = classify(&env, &"G".into()).unwrap();
        assert!(report.communication.contains(&CommClass::NonReceptive));
        assert!(report.communication.contains(&CommClass::Active));
        assert!(!report.communication.contains(&CommClass::Open));
    }

    #[test]
    fn closed_actor_satisfies_the_lattice() {
        let env = env_with(table(&[]), vec![actor("C")]);
        let report = classify(&env, &"C".into()).unwrap();
        for class in [
            CommClass::Closed,
            CommClass::Inactive,
            CommClass::NonReceptive,
            CommClass::Undemanding,
        ] {
            assert!(report.communication.contains(&class), "{class:?}");
        }
    }

    #[test]
    fn structural_partition_follows_the_component_forest() {
        let mut top = actor("Top");
        top.components = ["Mid".into()].into();
        let mut mid = actor("Mid");
        mid.components = ["organ".into()].into();
        let env = env_with(table(&[]), vec![top, mid, actor("Leaf")]);
        assert_eq!(
            classify(&env, &"Top".into()).unwrap().structural,
            StructuralClass::Compound
        );
        let mid_report = classify(&env, &"Mid".into()).unwrap();
        assert_eq!(mid_report.structural, StructuralClass::Primitive);
        assert!(mid_report.structural.is_composite());
        assert!(!mid_report.primary);
        let leaf = classify(&env, &"Leaf".into()).unwrap();
        assert_eq!(leaf.structural, StructuralClass::Prime);
        assert!(leaf.primary);
    }

    #[test]
    fn preservation_holds_for_renamed_copies() {
        let t = table(&["0", "1", "a", "b", "go_s_t", "go_t_s"]);
        let first = automaton("A", ["0", "1"]);
        let second = automaton("B", ["a", "b"]);
        let witnesses = check_preservation(
            &t,
            &[
                (&first, &second, PairRelation::Homological),
                (&first, &second, PairRelation::DynHomological),
            ],
        );
        assert!(witnesses.is_empty(), "{witnesses:?}");
    }

    #[test]
    fn preservation_reports_a_broken_claim() {
        let t = table(&["x", "y"]);
        let mut a = actor("A");
        a.act = ["x".into()].into();
        let mut b = actor("B");
        b.act = ["x".into(), "y".into()].into();
        let witnesses = check_preservation(&t, &[(&a, &b, PairRelation::DynEquivalent)]);
        assert_eq!(witnesses.len(), 1);
    }

    #[test]
    fn modeling_consequences_flag_non_actor_parts() {
        let mut a = actor("A");
        a.components = ["ghost".into()].into();
        let mut env = env_with(table(&[]), vec![a]);
        let witnesses = check_modeling_consequences(&env).unwrap();
        assert_eq!(witnesses.len(), 1);
        assert_eq!(
            witnesses[0].subjects,
            vec!["A".to_string(), "ghost".to_string()]
        );

        env.laws.ma = false;
        assert!(matches!(
            check_modeling_consequences(&env),
            Err(ModelError::ModelingAxiomOff(_))
        ));
    }
}
