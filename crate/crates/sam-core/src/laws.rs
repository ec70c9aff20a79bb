//! The law registry: every axiom and proposition of the model as a named,
//! witness-producing check.
//!
//! Checks that hold by representation (connectivity-based comparability,
//! equality-based identity) are still registered and exercised, so a
//! regression in the representation surfaces as a failed law. Selecting a
//! law by id forces its check even when the environment does not assert
//! the corresponding axiom; running the whole registry respects the
//! environment's law configuration and reports gated checks as not
//! applicable.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::action::{
    build_combact, check_emptiness_axiom, dependency_of, includes, modality_closure, negate,
    normalize, Action, ActionTerm, DependencyClass, Direction,
};
use crate::equivalence::{
    behavioral_class, classify, dyn_equivalent, dyn_homological, homological, identical,
    void_normalize, BehavioralClass, CommClass, IsoOptions, StructuralClass,
};
use crate::ids::ActorName;
use crate::model::{
    can_receive, can_send, check_connectivity, check_domain_embedding, friends, rank_compare,
    Environment, RankOrder,
};
use crate::temporal::{
    comparable, independent, parallel, sequential, strictly_parallel, strictly_sequential,
    EventKind, EventRecord, SyncGraph, TimingClass,
};
use crate::witness::Witness;

/// Outcome of one law check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LawStatus {
    Pass,
    Fail,
    NotApplicable,
}

/// Result of one registered check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawCheckResult {
    pub law: String,
    pub status: LawStatus,
    pub witnesses: Vec<Witness>,
}

/// Which checks to run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawSelection {
    /// The whole registry, respecting the environment's law configuration.
    All,
    /// Named checks, forced regardless of the configuration.
    Ids(BTreeSet<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LawError {
    #[error("unknown law id {0:?}")]
    UnknownLaw(String),
}

/// Registry order: axioms, propositions, lemmas, corollaries.
pub fn law_ids() -> Vec<String> {
    let mut ids = vec![
        "SM".to_owned(),
        "RM".to_owned(),
        "CA".to_owned(),
        "EA".to_owned(),
        "MA".to_owned(),
    ];
    for n in 1..=34 {
        ids.push(format!("Prop3.{n}"));
    }
    for n in 1..=15 {
        ids.push(format!("Lemma3.{n}"));
    }
    for n in 1..=3 {
        ids.push(format!("Cor3.{n}"));
    }
    ids
}

/// Axiom required for a check to apply when running the whole registry.
fn gate(law: &str) -> Option<&'static str> {
    match law {
        "SM" | "Prop3.1" => Some("SM"),
        "RM" | "Prop3.2" => Some("RM"),
        "CA" | "Prop3.3" => Some("CA"),
        "EA" => Some("EA"),
        "MA" | "Prop3.33" | "Cor3.2" => Some("MA"),
        _ => None,
    }
}

enum Outcome {
    Checked(Vec<Witness>),
    NotApplicable,
}

struct Ctx<'a> {
    env: &'a Environment,
    events: &'a [EventRecord],
    sync: SyncGraph,
}

impl<'a> Ctx<'a> {
    fn actors(&self) -> Vec<&'a crate::model::ActorSpec> {
        self.env.actors.values().collect()
    }

    /// Action definitions plus their sub-terms, deduplicated, bounded for
    /// the cubic inclusion checks.
    fn collected_terms(&self) -> Vec<Action> {
        fn walk(action: &Action, out: &mut Vec<Action>) {
            if out.len() >= 12 {
                return;
            }
            if !out.contains(action) {
                out.push(action.clone());
            }
            match &action.term {
                ActionTerm::Composed { parts, .. } => {
                    for part in parts {
                        walk(part, out);
                    }
                }
                ActionTerm::Negation(inner) => walk(inner, out),
                _ => {}
            }
        }
        let mut out = Vec::new();
        for action in self.env.actions.values() {
            walk(action, &mut out);
        }
        out
    }

    fn reaction_pairs(
        &self,
        class: TimingClass,
    ) -> Vec<(&'a EventRecord, &'a EventRecord, bool)> {
        let mut pairs = Vec::new();
        for event in self.events {
            let EventKind::Reaction { trigger, timing } = &event.kind else {
                continue;
            };
            if *timing != class {
                continue;
            }
            let found = self.events.iter().find(|e| e.id == *trigger);
            match found {
                Some(trigger_event) => pairs.push((trigger_event, event, true)),
                None => pairs.push((event, event, false)),
            }
        }
        pairs
    }
}

fn run_check(ctx: &Ctx, law: &str) -> Outcome {
    match law {
        "SM" | "Prop3.1" => acquaintance_biconditional(ctx, law, true),
        "RM" | "Prop3.2" => acquaintance_biconditional(ctx, law, false),
        "CA" => Outcome::Checked(check_connectivity(ctx.env)),
        "EA" => Outcome::Checked(check_emptiness_axiom(&ctx.env.actions)),
        "MA" => Outcome::Checked(unregistered_parts(ctx, "MA")),
        "Prop3.3" => friends_symmetry(ctx),
        "Prop3.4" => friendly_environment_satisfies_ca(ctx),
        "Prop3.5" => reaction_class_check(ctx, TimingClass::Sharp, law),
        "Prop3.6" => reaction_class_check(ctx, TimingClass::Reserved, law),
        "Prop3.7" => reaction_class_check(ctx, TimingClass::Delayed, law),
        "Prop3.8" => dependence_transitive(ctx),
        "Prop3.9" => comparability_transitive(ctx),
        "Prop3.10" => momentary_parallel_transitive(ctx),
        "Prop3.11" => interval_helly(ctx),
        "Prop3.12" => strictly_parallel_transitive(ctx),
        "Prop3.13" => sequential_transitive(ctx),
        "Prop3.14" => strict_subsequence_gap(ctx),
        "Prop3.15" => modality_consistency(ctx),
        "Prop3.16" => inclusion_transitive(ctx),
        "Prop3.17" => composition_direction(ctx),
        "Prop3.18" => double_negation_normalized(ctx),
        "Prop3.19" => compliant_void_compositions(ctx),
        "Prop3.20" => inclusion_antitone(ctx),
        "Prop3.21" => inactions_in_total_inaction(ctx),
        "Prop3.22" => proper_compositions_mediated(ctx),
        "Prop3.23" => negation_preserves_dependency(ctx),
        "Prop3.24" => combact_restrictions(ctx),
        "Prop3.25" => void_normal_form_equivalent(ctx),
        "Prop3.26" => preservation(ctx, law, Relation::DynEquivalent, Transfer::Primitive),
        "Prop3.27" => preservation(ctx, law, Relation::DynEquivalent, Transfer::Automatic),
        "Prop3.28" => preservation(ctx, law, Relation::Homological, Transfer::Primitive),
        "Prop3.29" => preservation(ctx, law, Relation::Homological, Transfer::Automatic),
        "Prop3.30" => preservation(ctx, law, Relation::DynHomological, Transfer::Primitive),
        "Prop3.31" => preservation(ctx, law, Relation::DynHomological, Transfer::Automatic),
        "Prop3.32" => identity_embedding(ctx),
        "Prop3.33" => Outcome::Checked(unregistered_parts(ctx, law)),
        "Prop3.34" => components_rank_lower(ctx),
        "Lemma3.1" => equivalence_laws(ctx, law, |_, a, b| identical(a, b)),
        "Lemma3.2" => equivalence_laws(ctx, law, |t, a, b| dyn_equivalent(t, a, b)),
        "Lemma3.3" => implication_pairs(ctx, law, |t, a, b| {
            !identical(a, b) || dyn_equivalent(t, a, b)
        }),
        "Lemma3.4" => equivalence_laws(ctx, law, |t, a, b| {
            homological(t, a, b, IsoOptions::default()).is_some()
        }),
        "Lemma3.5" => implication_pairs(ctx, law, |t, a, b| {
            !identical(a, b) || homological(t, a, b, IsoOptions::default()).is_some()
        }),
        "Lemma3.6" => equivalence_laws(ctx, law, |t, a, b| {
            dyn_homological(t, a, b, IsoOptions::default()).is_some()
        }),
        "Lemma3.7" => implication_pairs(ctx, law, |t, a, b| {
            !dyn_equivalent(t, a, b) || dyn_homological(t, a, b, IsoOptions::default()).is_some()
        }),
        "Lemma3.8" => comm_lattice(ctx, law, |c| {
            !c.contains(&CommClass::Closed) || c.contains(&CommClass::Inactive)
        }),
        "Lemma3.9" => comm_lattice(ctx, law, |c| {
            !c.contains(&CommClass::Closed) || c.contains(&CommClass::NonReceptive)
        }),
        "Lemma3.10" => comm_lattice(ctx, law, |c| {
            !(c.contains(&CommClass::NonReceptive) && c.contains(&CommClass::Inactive))
                || c.contains(&CommClass::Closed)
        }),
        "Lemma3.11" => comm_lattice(ctx, law, |c| {
            !c.contains(&CommClass::Open) || c.contains(&CommClass::Active)
        }),
        "Lemma3.12" => comm_lattice(ctx, law, |c| {
            !(c.contains(&CommClass::Receptive) && c.contains(&CommClass::Active))
                || c.contains(&CommClass::Open)
        }),
        "Lemma3.13" => comm_lattice(ctx, law, |c| {
            !c.contains(&CommClass::Inactive) || c.contains(&CommClass::Undemanding)
        }),
        "Lemma3.14" => extended_restriction(ctx, law, true),
        "Lemma3.15" => extended_restriction(ctx, law, false),
        "Cor3.1" => behavioral_primitive_implies_automatic(ctx),
        "Cor3.2" => Outcome::Checked(no_middle_structural_cell(ctx, law)),
        "Cor3.3" => comm_lattice(ctx, "Cor3.3", |c| {
            !c.contains(&CommClass::Closed) || c.contains(&CommClass::Undemanding)
        }),
        _ => unreachable!("unknown law reached the dispatcher"),
    }
}

/// Runs the selected law checks over one environment and its events.
pub fn run_law_suite(
    env: &Environment,
    events: &[EventRecord],
    selection: &LawSelection,
) -> Result<Vec<LawCheckResult>, LawError> {
    let known = law_ids();
    let selected: Vec<String> = match selection {
        LawSelection::All => known,
        LawSelection::Ids(ids) => {
            for id in ids {
                if !known.contains(id) {
                    return Err(LawError::UnknownLaw(id.clone()));
                }
            }
            known.into_iter().filter(|id| ids.contains(id)).collect()
        }
    };
    let forced = matches!(selection, LawSelection::Ids(_));
    let ctx = Ctx {
        env,
        events,
        sync: env.sync_graph(),
    };
    let mut results = Vec::with_capacity(selected.len());
    for law in selected {
        if !forced {
            if let Some(axiom) = gate(&law) {
                if !env.laws.asserts(axiom) {
                    results.push(LawCheckResult {
                        law,
                        status: LawStatus::NotApplicable,
                        witnesses: Vec::new(),
                    });
                    continue;
                }
            }
        }
        let (status, witnesses) = match run_check(&ctx, &law) {
            Outcome::NotApplicable => (LawStatus::NotApplicable, Vec::new()),
            Outcome::Checked(witnesses) if witnesses.is_empty() => (LawStatus::Pass, witnesses),
            Outcome::Checked(witnesses) => (LawStatus::Fail, witnesses),
        };
        results.push(LawCheckResult {
            law,
            status,
            witnesses,
        });
    }
    Ok(results)
}

/// Whether a suite reported no failures.
pub fn suite_passes(results: &[LawCheckResult]) -> bool {
    results.iter().all(|r| r.status != LawStatus::Fail)
}

/// Runs the full registry over a batch of environments, in parallel when
/// the `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub fn run_law_suite_batch(
    subjects: &[(Environment, Vec<EventRecord>)],
) -> Vec<Vec<LawCheckResult>> {
    use rayon::prelude::*;
    subjects
        .par_iter()
        .map(|(env, events)| {
            run_law_suite(env, events, &LawSelection::All).expect("registry ids are known")
        })
        .collect()
}

/// Sequential fallback of [`run_law_suite_batch`].
#[cfg(not(feature = "parallel"))]
pub fn run_law_suite_batch(
    subjects: &[(Environment, Vec<EventRecord>)],
) -> Vec<Vec<LawCheckResult>> {
    run_law_suite_batch_seq(subjects)
}

/// Always-sequential batch runner, kept for benchmarking against the
/// parallel path.
pub fn run_law_suite_batch_seq(
    subjects: &[(Environment, Vec<EventRecord>)],
) -> Vec<Vec<LawCheckResult>> {
    subjects
        .iter()
        .map(|(env, events)| {
            run_law_suite(env, events, &LawSelection::All).expect("registry ids are known")
        })
        .collect()
}

fn acquaintance_biconditional(ctx: &Ctx, law: &str, forward: bool) -> Outcome {
    let mut witnesses = Vec::new();
    for a in ctx.env.actors.keys() {
        for c in ctx.env.actors.keys() {
            let (capability, listed) = if forward {
                (
                    can_send(ctx.env, a, c).unwrap_or(false),
                    ctx.env.actors[a].facq.contains(c),
                )
            } else {
                (
                    can_receive(ctx.env, a, c).unwrap_or(false),
                    ctx.env.actors[c].bacq.contains(a),
                )
            };
            if capability != listed {
                witnesses.push(Witness::new(
                    law,
                    [a.to_string(), c.to_string()],
                    "messaging capability disagrees with the acquaintance list",
                ));
            }
        }
    }
    Outcome::Checked(witnesses)
}

fn friends_symmetry(ctx: &Ctx) -> Outcome {
    let mut witnesses = Vec::new();
    for a in ctx.env.actors.keys() {
        let friends_of_a = friends(ctx.env, a).unwrap_or_default();
        for b in &friends_of_a {
            let reciprocal = friends(ctx.env, b)
                .map(|f| f.contains(a))
                .unwrap_or(false);
            if !reciprocal {
                witnesses.push(Witness::new(
                    "Prop3.3",
                    [a.to_string(), b.to_string()],
                    "friendship is not symmetric",
                ));
            }
        }
    }
    Outcome::Checked(witnesses)
}

fn friendly_environment_satisfies_ca(ctx: &Ctx) -> Outcome {
    let all_friends = ctx.env.actors.values().all(|actor| {
        let fwd: BTreeSet<_> = actor.facq.iter().collect();
        let bwd: BTreeSet<_> = actor.bacq.iter().collect();
        fwd == bwd
            && actor.facq.iter().all(|b| {
                ctx.env
                    .actors
                    .get(b)
                    .is_some_and(|other| other.facq.contains(&actor.name))
            })
    });
    if !all_friends {
        return Outcome::NotApplicable;
    }
    let witnesses = check_connectivity(ctx.env)
        .into_iter()
        .map(|w| Witness::new("Prop3.4", w.subjects, w.detail))
        .collect();
    Outcome::Checked(witnesses)
}

fn reaction_class_check(ctx: &Ctx, class: TimingClass, law: &str) -> Outcome {
    let pairs = ctx.reaction_pairs(class);
    if pairs.is_empty() {
        return Outcome::NotApplicable;
    }
    let mut witnesses = Vec::new();
    for (trigger, reaction, resolved) in pairs {
        if !resolved {
            witnesses.push(Witness::new(
                law,
                [reaction.id.to_string()],
                "reaction references a missing trigger",
            ));
            continue;
        }
        let Ok(mapped) =
            crate::temporal::map_to_clock(&reaction.time, &trigger.time.clock, &ctx.sync)
        else {
            witnesses.push(Witness::new(
                law,
                [trigger.id.to_string(), reaction.id.to_string()],
                "reaction clock is not comparable with its trigger",
            ));
            continue;
        };
        let (Some(t_start), Some(t_end), Some(r_start)) =
            (trigger.time.start(), trigger.time.end(), mapped.start())
        else {
            continue;
        };
        let ok = match class {
            TimingClass::Sharp => {
                let starts_together = r_start == t_start;
                let parallel_when_lasting = trigger.time.is_momentary()
                    || parallel(&[trigger, reaction], &ctx.sync).unwrap_or(false);
                starts_together && parallel_when_lasting
            }
            TimingClass::Reserved => {
                strictly_sequential(trigger, reaction, &ctx.sync).unwrap_or(false)
            }
            TimingClass::Delayed => {
                sequential(trigger, reaction, &ctx.sync).unwrap_or(false) && r_start > t_end
            }
        };
        if !ok {
            witnesses.push(Witness::new(
                law,
                [trigger.id.to_string(), reaction.id.to_string()],
                format!("{class} reaction breaks its timing relation"),
            ));
        }
    }
    Outcome::Checked(witnesses)
}

fn dependence_transitive(ctx: &Ctx) -> Outcome {
    let mut witnesses = Vec::new();
    let ids: Vec<_> = ctx.events.iter().map(|e| e.id.clone()).collect();
    for a in &ids {
        for b in &ids {
            for c in &ids {
                let dep_ab = !independent(ctx.events, a, b).unwrap_or(true);
                let dep_bc = !independent(ctx.events, b, c).unwrap_or(true);
                let dep_ac = !independent(ctx.events, a, c).unwrap_or(true);
                if dep_ab && dep_bc && !dep_ac && a != c {
                    witnesses.push(Witness::new(
                        "Prop3.8",
                        [a.to_string(), b.to_string(), c.to_string()],
                        "temporal dependence is not transitive",
                    ));
                }
            }
        }
    }
    Outcome::Checked(witnesses)
}

fn comparability_transitive(ctx: &Ctx) -> Outcome {
    let mut witnesses = Vec::new();
    let clocks: Vec<_> = ctx.env.clocks.keys().collect();
    for a in &clocks {
        for b in &clocks {
            for c in &clocks {
                if ctx.sync.comparable_clocks(a, b)
                    && ctx.sync.comparable_clocks(b, c)
                    && !ctx.sync.comparable_clocks(a, c)
                {
                    witnesses.push(Witness::new(
                        "Prop3.9",
                        [a.to_string(), b.to_string(), c.to_string()],
                        "temporal comparability is not transitive",
                    ));
                }
            }
        }
    }
    Outcome::Checked(witnesses)
}

fn event_triples<'e>(
    events: &'e [EventRecord],
    filter: impl Fn(&EventRecord) -> bool,
) -> Vec<[&'e EventRecord; 3]> {
    let picked: Vec<_> = events.iter().filter(|e| filter(e)).collect();
    let mut out = Vec::new();
    for &a in &picked {
        for &b in &picked {
            for &c in &picked {
                if a.id != b.id && b.id != c.id && a.id != c.id {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

fn momentary_parallel_transitive(ctx: &Ctx) -> Outcome {
    let triples = event_triples(ctx.events, |e| e.time.is_momentary());
    if triples.is_empty() {
        return Outcome::NotApplicable;
    }
    let mut witnesses = Vec::new();
    for [a, b, c] in triples {
        if !(comparable(a, b, &ctx.sync) && comparable(b, c, &ctx.sync)) {
            continue;
        }
        let ab = parallel(&[a, b], &ctx.sync).unwrap_or(false);
        let bc = parallel(&[b, c], &ctx.sync).unwrap_or(false);
        let all = parallel(&[a, b, c], &ctx.sync).unwrap_or(false);
        if ab && bc && !all {
            witnesses.push(Witness::new(
                "Prop3.10",
                [a.id.to_string(), b.id.to_string(), c.id.to_string()],
                "momentary parallelism is not transitive",
            ));
        }
    }
    Outcome::Checked(witnesses)
}

fn interval_helly(ctx: &Ctx) -> Outcome {
    let triples = event_triples(ctx.events, |e| e.time.is_interval());
    if triples.is_empty() {
        return Outcome::NotApplicable;
    }
    let mut witnesses = Vec::new();
    for [a, b, c] in triples {
        if !(comparable(a, b, &ctx.sync) && comparable(b, c, &ctx.sync)) {
            continue;
        }
        let pairwise = parallel(&[a, b], &ctx.sync).unwrap_or(false)
            && parallel(&[b, c], &ctx.sync).unwrap_or(false)
            && parallel(&[a, c], &ctx.sync).unwrap_or(false);
        let all = parallel(&[a, b, c], &ctx.sync).unwrap_or(false);
        if pairwise && !all {
            witnesses.push(Witness::new(
                "Prop3.11",
                [a.id.to_string(), b.id.to_string(), c.id.to_string()],
                "pairwise parallel interval events have no common point",
            ));
        }
    }
    Outcome::Checked(witnesses)
}

fn strictly_parallel_transitive(ctx: &Ctx) -> Outcome {
    let mut witnesses = Vec::new();
    for [a, b, c] in event_triples(ctx.events, |_| true) {
        if !(comparable(a, b, &ctx.sync) && comparable(b, c, &ctx.sync)) {
            continue;
        }
        let ab = strictly_parallel(a, b, &ctx.sync).unwrap_or(false);
        let bc = strictly_parallel(b, c, &ctx.sync).unwrap_or(false);
        let ac = strictly_parallel(a, c, &ctx.sync).unwrap_or(false);
        if ab && bc && !ac {
            witnesses.push(Witness::new(
                "Prop3.12",
                [a.id.to_string(), b.id.to_string(), c.id.to_string()],
                "strict parallelism is not transitive",
            ));
        }
    }
    Outcome::Checked(witnesses)
}

fn sequential_transitive(ctx: &Ctx) -> Outcome {
    let mut witnesses = Vec::new();
    for [a, b, c] in event_triples(ctx.events, |_| true) {
        if !(comparable(a, b, &ctx.sync) && comparable(b, c, &ctx.sync)) {
            continue;
        }
        let ab = sequential(a, b, &ctx.sync).unwrap_or(false);
        let bc = sequential(b, c, &ctx.sync).unwrap_or(false);
        let ac = sequential(a, c, &ctx.sync).unwrap_or(false);
        if ab && bc && !ac {
            witnesses.push(Witness::new(
                "Prop3.13",
                [a.id.to_string(), b.id.to_string(), c.id.to_string()],
                "sequentiality is not transitive",
            ));
        }
    }
    Outcome::Checked(witnesses)
}

fn strict_subsequence_gap(ctx: &Ctx) -> Outcome {
    if ctx.events.len() < 3 {
        return Outcome::NotApplicable;
    }
    let mut witnesses = Vec::new();
    for [e3, e2, e1] in event_triples(ctx.events, |_| true) {
        if !(comparable(e3, e2, &ctx.sync) && comparable(e2, e1, &ctx.sync)) {
            continue;
        }
        let first = strictly_sequential(e3, e2, &ctx.sync).unwrap_or(false);
        let positive = !e2.time.is_momentary();
        let second = strictly_sequential(e2, e1, &ctx.sync).unwrap_or(false);
        let skip = strictly_sequential(e3, e1, &ctx.sync).unwrap_or(false);
        if first && positive && second && skip {
            witnesses.push(Witness::new(
                "Prop3.14",
                [e1.id.to_string(), e2.id.to_string(), e3.id.to_string()],
                "strict subsequence crosses a positive-duration event",
            ));
        }
    }
    Outcome::Checked(witnesses)
}

fn modality_consistency(ctx: &Ctx) -> Outcome {
    if ctx.env.modalities.is_empty() {
        return Outcome::NotApplicable;
    }
    let closure = modality_closure(&ctx.env.modalities);
    let witnesses = closure
        .contradictions
        .iter()
        .map(|(a, b)| {
            Witness::new(
                "Prop3.15",
                [a.action.to_string()],
                format!("{:?} contradicts {:?}", a.modality, b.modality),
            )
        })
        .collect();
    Outcome::Checked(witnesses)
}

fn inclusion_transitive(ctx: &Ctx) -> Outcome {
    let terms = ctx.collected_terms();
    let mut witnesses = Vec::new();
    for a in &terms {
        for b in &terms {
            for c in &terms {
                if includes(a, b) && includes(b, c) && !includes(a, c) {
                    witnesses.push(Witness::new(
                        "Prop3.16",
                        [a.id.to_string(), b.id.to_string(), c.id.to_string()],
                        "inclusion is not transitive",
                    ));
                }
            }
        }
    }
    Outcome::Checked(witnesses)
}

fn composition_direction(ctx: &Ctx) -> Outcome {
    fn walk(action: &Action, witnesses: &mut Vec<Witness>) {
        if let ActionTerm::Composed { parts, .. } = &action.term {
            let derived = parts
                .iter()
                .map(|p| p.direction)
                .reduce(Direction::join)
                .unwrap_or(Direction::Internal);
            if action.direction != derived {
                witnesses.push(Witness::new(
                    "Prop3.17",
                    [action.id.to_string()],
                    format!(
                        "declared direction {:?} differs from the parts' {:?}",
                        action.direction, derived
                    ),
                ));
            }
            for part in parts {
                walk(part, witnesses);
            }
        }
        if let ActionTerm::Negation(inner) = &action.term {
            walk(inner, witnesses);
        }
    }
    let mut witnesses = Vec::new();
    for action in ctx.env.actions.values() {
        walk(action, &mut witnesses);
    }
    Outcome::Checked(witnesses)
}

fn double_negation_normalized(ctx: &Ctx) -> Outcome {
    fn walk(action: &Action, witnesses: &mut Vec<Witness>) {
        match &action.term {
            ActionTerm::Negation(inner) => {
                if matches!(inner.term, ActionTerm::Negation(_)) {
                    witnesses.push(Witness::new(
                        "Prop3.18",
                        [action.id.to_string()],
                        "double negation is not normalized away",
                    ));
                }
                walk(inner, witnesses);
            }
            ActionTerm::Composed { parts, .. } => {
                for part in parts {
                    walk(part, witnesses);
                }
            }
            _ => {}
        }
    }
    let mut witnesses = Vec::new();
    for action in ctx.env.actions.values() {
        walk(action, &mut witnesses);
    }
    Outcome::Checked(witnesses)
}

fn compliant_void_compositions(ctx: &Ctx) -> Outcome {
    fn walk(action: &Action, witnesses: &mut Vec<Witness>) {
        if let ActionTerm::Composed { op, parts } = &action.term {
            if op.ea_compliant && !parts.is_empty() && parts.iter().all(Action::is_void) {
                let resolved = normalize(action.clone());
                if !resolved.is_void() {
                    witnesses.push(Witness::new(
                        "Prop3.19",
                        [action.id.to_string()],
                        "composition of inactions fails to normalize to an inaction",
                    ));
                }
            }
            for part in parts {
                walk(part, witnesses);
            }
        }
    }
    let mut witnesses = Vec::new();
    for action in ctx.env.actions.values() {
        walk(action, &mut witnesses);
    }
    Outcome::Checked(witnesses)
}

fn inclusion_antitone(ctx: &Ctx) -> Outcome {
    let terms = ctx.collected_terms();
    let mut witnesses = Vec::new();
    for a in &terms {
        for b in &terms {
            // a ⊆ b, so the negations must include in the other order.
            if !includes(b, a) {
                continue;
            }
            let (Ok(not_a), Ok(not_b)) = (negate(a.clone()), negate(b.clone())) else {
                continue;
            };
            if !includes(&not_a, &not_b) {
                witnesses.push(Witness::new(
                    "Prop3.20",
                    [a.id.to_string(), b.id.to_string()],
                    "inclusion is not antitone under negation",
                ));
            }
        }
    }
    Outcome::Checked(witnesses)
}

fn inactions_in_total_inaction(ctx: &Ctx) -> Outcome {
    let total = Action::total_inaction("total_inaction");
    let mut witnesses = Vec::new();
    for term in ctx.collected_terms() {
        let inaction = if term.is_void() {
            if matches!(term.term, ActionTerm::TotalInaction) {
                continue;
            }
            term.clone()
        } else {
            match negate(term.clone()) {
                Ok(n) => n,
                Err(_) => continue,
            }
        };
        if !includes(&total, &inaction) {
            witnesses.push(Witness::new(
                "Prop3.21",
                [term.id.to_string()],
                "inaction is not included in the total inaction",
            ));
        }
    }
    Outcome::Checked(witnesses)
}

fn proper_compositions_mediated(ctx: &Ctx) -> Outcome {
    fn walk(action: &Action, witnesses: &mut Vec<Witness>) {
        if let ActionTerm::Composed { parts, .. } = &action.term {
            if parts.iter().all(Action::is_proper)
                && action.organization != crate::action::Organization::Mediated
            {
                witnesses.push(Witness::new(
                    "Prop3.22",
                    [action.id.to_string()],
                    "composition of proper actions is not mediated",
                ));
            }
            for part in parts {
                walk(part, witnesses);
            }
        }
    }
    let mut witnesses = Vec::new();
    for action in ctx.env.actions.values() {
        walk(action, &mut witnesses);
    }
    Outcome::Checked(witnesses)
}

fn negation_preserves_dependency(ctx: &Ctx) -> Outcome {
    let mut witnesses = Vec::new();
    for actor in ctx.actors() {
        for id in &actor.act {
            let Some(def) = ctx.env.actions.get(id) else {
                continue;
            };
            let ActionTerm::Negation(inner) = &def.term else {
                continue;
            };
            if !actor.act.contains(&inner.id) {
                continue;
            }
            let of_void = dependency_of(actor, &ctx.env.actions, id);
            let of_core = dependency_of(actor, &ctx.env.actions, &inner.id);
            if of_void != of_core {
                witnesses.push(Witness::new(
                    "Prop3.23",
                    [actor.name.to_string(), id.to_string()],
                    format!("inaction classifies {of_void:?} but its action classifies {of_core:?}"),
                ));
            }
        }
    }
    Outcome::Checked(witnesses)
}

fn combact_restrictions(ctx: &Ctx) -> Outcome {
    let mut witnesses = Vec::new();
    for actor in ctx.actors() {
        let combact = build_combact(actor);
        if combact.react_restriction() != actor.react {
            witnesses.push(Witness::new(
                "Prop3.24",
                [actor.name.to_string()],
                "combact restriction does not reproduce the reaction relation",
            ));
        }
        if combact.proact_restriction() != actor.proact {
            witnesses.push(Witness::new(
                "Prop3.24",
                [actor.name.to_string()],
                "combact restriction does not reproduce the proaction relation",
            ));
        }
        for id in &actor.act {
            if dependency_of(actor, &ctx.env.actions, id) == DependencyClass::Primitive {
                let occurs = actor.react.iter().any(|(_, a)| a == id)
                    || actor.proact.iter().any(|(_, a)| a == id)
                    || ctx.env.actions.get(id).is_some_and(|d| {
                        matches!(&d.term, ActionTerm::Negation(inner)
                            if actor.react.iter().any(|(_, a)| *a == inner.id)
                                || actor.proact.iter().any(|(_, a)| *a == inner.id))
                    });
                if !occurs {
                    witnesses.push(Witness::new(
                        "Prop3.24",
                        [actor.name.to_string(), id.to_string()],
                        "primitive action does not appear in the combined-action function",
                    ));
                }
            }
        }
    }
    Outcome::Checked(witnesses)
}

fn void_normal_form_equivalent(ctx: &Ctx) -> Outcome {
    let mut witnesses = Vec::new();
    for actor in ctx.actors() {
        let stripped = void_normalize(&ctx.env.actions, actor);
        if !dyn_equivalent(&ctx.env.actions, actor, &stripped) {
            witnesses.push(Witness::new(
                "Prop3.25",
                [actor.name.to_string()],
                "actor is not dynamically equivalent to its void-stripped form",
            ));
        }
    }
    Outcome::Checked(witnesses)
}

#[derive(Clone, Copy)]
enum Relation {
    DynEquivalent,
    Homological,
    DynHomological,
}

#[derive(Clone, Copy)]
enum Transfer {
    Primitive,
    Automatic,
}

fn preservation(ctx: &Ctx, law: &str, relation: Relation, transfer: Transfer) -> Outcome {
    let actors = ctx.actors();
    let table = &ctx.env.actions;
    let class_preserving = IsoOptions {
        preserve_classes: true,
    };
    let mut witnesses = Vec::new();
    for (i, a) in actors.iter().enumerate() {
        for b in actors.iter().skip(i + 1) {
            let related = match relation {
                Relation::DynEquivalent => dyn_equivalent(table, a, b),
                Relation::Homological => homological(table, a, b, class_preserving).is_some(),
                Relation::DynHomological => {
                    dyn_homological(table, a, b, class_preserving).is_some()
                }
            };
            if !related {
                continue;
            }
            let ca = behavioral_class(table, a);
            let cb = behavioral_class(table, b);
            let carried = match transfer {
                Transfer::Primitive => {
                    (ca == BehavioralClass::Primitive) == (cb == BehavioralClass::Primitive)
                }
                Transfer::Automatic => {
                    matches!(ca, BehavioralClass::Primitive | BehavioralClass::Automatic)
                        == matches!(cb, BehavioralClass::Primitive | BehavioralClass::Automatic)
                }
            };
            if !carried {
                witnesses.push(Witness::new(
                    law,
                    [a.name.to_string(), b.name.to_string()],
                    format!("behavioral classes {ca:?} and {cb:?} do not transfer"),
                ));
            }
        }
    }
    Outcome::Checked(witnesses)
}

fn identity_embedding(ctx: &Ctx) -> Outcome {
    let mapping: BTreeMap<ActorName, ActorName> = ctx
        .env
        .actors
        .keys()
        .map(|k| (k.clone(), k.clone()))
        .collect();
    let (ok, raw) = check_domain_embedding(ctx.env, ctx.env, &mapping);
    let witnesses = if ok {
        Vec::new()
    } else {
        raw.into_iter()
            .map(|w| Witness::new("Prop3.32", w.subjects, w.detail))
            .collect()
    };
    Outcome::Checked(witnesses)
}

/// Parts that are not registered actors; the common scan behind the MA
/// consequence checks.
fn unregistered_parts(ctx: &Ctx, law: &str) -> Vec<Witness> {
    let mut witnesses = Vec::new();
    for (name, actor) in &ctx.env.actors {
        for part in &actor.components {
            if !ctx.env.actors.contains_key(part) {
                witnesses.push(Witness::new(
                    law,
                    [name.to_string(), part.to_string()],
                    "part is not modeled by a registered actor",
                ));
            }
        }
    }
    witnesses
}

fn components_rank_lower(ctx: &Ctx) -> Outcome {
    let mut witnesses = Vec::new();
    for (name, actor) in &ctx.env.actors {
        for part in &actor.components {
            if !ctx.env.actors.contains_key(part) {
                continue;
            }
            match rank_compare(ctx.env, part, name) {
                Ok(RankOrder::Lower) => {}
                other => witnesses.push(Witness::new(
                    "Prop3.34",
                    [part.to_string(), name.to_string()],
                    format!("component does not rank lower: {other:?}"),
                )),
            }
        }
    }
    Outcome::Checked(witnesses)
}

fn equivalence_laws(
    ctx: &Ctx,
    law: &str,
    relation: impl Fn(&crate::action::ActionTable, &crate::model::ActorSpec, &crate::model::ActorSpec) -> bool,
) -> Outcome {
    let actors = ctx.actors();
    let table = &ctx.env.actions;
    let n = actors.len();
    let mut matrix = vec![vec![false; n]; n];
    for (i, a) in actors.iter().enumerate() {
        for (j, b) in actors.iter().enumerate() {
            matrix[i][j] = relation(table, a, b);
        }
    }
    let mut witnesses = Vec::new();
    for i in 0..n {
        if !matrix[i][i] {
            witnesses.push(Witness::new(
                law,
                [actors[i].name.to_string()],
                "relation is not reflexive",
            ));
        }
        for j in 0..n {
            if matrix[i][j] != matrix[j][i] {
                witnesses.push(Witness::new(
                    law,
                    [actors[i].name.to_string(), actors[j].name.to_string()],
                    "relation is not symmetric",
                ));
            }
            for k in 0..n {
                if matrix[i][j] && matrix[j][k] && !matrix[i][k] {
                    witnesses.push(Witness::new(
                        law,
                        [
                            actors[i].name.to_string(),
                            actors[j].name.to_string(),
                            actors[k].name.to_string(),
                        ],
                        "relation is not transitive",
                    ));
                }
            }
        }
    }
    Outcome::Checked(witnesses)
}

fn implication_pairs(
    ctx: &Ctx,
    law: &str,
    holds: impl Fn(&crate::action::ActionTable, &crate::model::ActorSpec, &crate::model::ActorSpec) -> bool,
) -> Outcome {
    let actors = ctx.actors();
    let table = &ctx.env.actions;
    let mut witnesses = Vec::new();
    for a in &actors {
        for b in &actors {
            if !holds(table, a, b) {
                witnesses.push(Witness::new(
                    law,
                    [a.name.to_string(), b.name.to_string()],
                    "implication between actor relations fails",
                ));
            }
        }
    }
    Outcome::Checked(witnesses)
}

fn comm_lattice(
    ctx: &Ctx,
    law: &str,
    holds: impl Fn(&BTreeSet<CommClass>) -> bool,
) -> Outcome {
    let mut witnesses = Vec::new();
    for name in ctx.env.actors.keys() {
        let Ok(report) = classify(ctx.env, name) else {
            continue;
        };
        if !holds(&report.communication) {
            witnesses.push(Witness::new(
                law,
                [name.to_string()],
                format!("communication classes break the lattice: {:?}", report.communication),
            ));
        }
    }
    Outcome::Checked(witnesses)
}

fn extended_restriction(ctx: &Ctx, law: &str, react_side: bool) -> Outcome {
    let mut witnesses = Vec::new();
    for name in ctx.env.actors.keys() {
        let Ok(extended) = crate::model::ExtendedActorSpec::of(ctx.env, name) else {
            continue;
        };
        let ok = if react_side {
            extended.react_is_restriction()
        } else {
            extended.proact_is_restriction()
        };
        if !ok {
            witnesses.push(Witness::new(
                law,
                [name.to_string()],
                "virtual relation does not restrict to the base relation",
            ));
        }
    }
    Outcome::Checked(witnesses)
}

fn behavioral_primitive_implies_automatic(ctx: &Ctx) -> Outcome {
    let mut witnesses = Vec::new();
    for name in ctx.env.actors.keys() {
        let Ok(report) = classify(ctx.env, name) else {
            continue;
        };
        if report.is_behaviorally_primitive() && !report.is_behaviorally_automatic() {
            witnesses.push(Witness::new(
                "Cor3.1",
                [name.to_string()],
                "behaviorally primitive actor is not behaviorally automatic",
            ));
        }
    }
    Outcome::Checked(witnesses)
}

/// Structural classes actually emitted under the Modeling Axiom: with every
/// part registered, the middle cell (parts but no actor parts) is empty.
fn no_middle_structural_cell(ctx: &Ctx, law: &str) -> Vec<Witness> {
    let mut witnesses = Vec::new();
    for name in ctx.env.actors.keys() {
        if let Ok(report) = classify(ctx.env, name) {
            if report.structural == StructuralClass::Primitive {
                witnesses.push(Witness::new(
                    law,
                    [name.to_string()],
                    "actor has parts that are not registered actors",
                ));
            }
        }
    }
    witnesses
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{CompositionOp, DurationKind};
    use crate::model::ActorSpec;

    fn base_env() -> Environment {
        let mut env = Environment::new("laws");
        let mut a = ActorSpec::new("A");
        a.facq = vec!["B".into()];
        let mut b = ActorSpec::new("B");
        b.bacq = vec!["A".into()];
        env.insert_actor(a);
        env.insert_actor(b);
        env
    }

    #[test]
    fn full_registry_passes_on_a_compliant_environment() {
        let env = base_env();
        let results = run_law_suite(&env, &[], &LawSelection::All).unwrap();
        assert_eq!(results.len(), law_ids().len());
        assert!(suite_passes(&results), "{:#?}", results
            .iter()
            .filter(|r| r.status == LawStatus::Fail)
            .collect::<Vec<_>>());
    }

    #[test]
    fn broken_connectivity_fails_ca_with_a_witness() {
        let mut env = base_env();
        env.actors.get_mut(&"B".into()).unwrap().bacq.clear();
        let results =
            run_law_suite(&env, &[], &LawSelection::Ids(["CA".to_owned()].into())).unwrap();
        assert_eq!(results.len(), 1);
        assert_eq!(results[0].status, LawStatus::Fail);
        assert!(!results[0].witnesses.is_empty());
    }

    #[test]
    fn unasserted_laws_are_not_applicable_in_full_runs() {
        let mut env = base_env();
        env.laws.ca = false;
        env.actors.get_mut(&"B".into()).unwrap().bacq.clear();
        let results = run_law_suite(&env, &[], &LawSelection::All).unwrap();
        let ca = results.iter().find(|r| r.law == "CA").unwrap();
        assert_eq!(ca.status, LawStatus::NotApplicable);
        assert!(suite_passes(&results));
    }

    #[test]
    fn selection_forces_unasserted_laws() {
        let mut env = base_env();
        env.laws.ca = false;
        env.actors.get_mut(&"B".into()).unwrap().bacq.clear();
        let results =
            run_law_suite(&env, &[], &LawSelection::Ids(["CA".to_owned()].into())).unwrap();
        assert_eq!(results[0].status, LawStatus::Fail);
    }

    #[test]
    fn unknown_law_id_is_an_error() {
        let env = base_env();
        assert!(matches!(
            run_law_suite(&env, &[], &LawSelection::Ids(["Prop9.9".to_owned()].into())),
            Err(LawError::UnknownLaw(_))
        ));
    }

    #[test]
    fn complement_operator_fails_ea() {
        let mut env = base_env();
        let run = Action::atomic("run", Direction::Internal, DurationKind::Regular);
        let walk = Action::atomic("walk", Direction::Internal, DurationKind::Regular);
        let stand = Action::atomic("stand", Direction::Internal, DurationKind::Regular);
        let mut op = CompositionOp::new("L", 2, false);
        op.complement_universe = Some(vec![run.clone(), walk.clone(), stand.clone()]);
        let not_run = negate(run.clone()).unwrap();
        let not_walk = negate(walk.clone()).unwrap();
        let combined = Action {
            id: "combined".into(),
            term: ActionTerm::Composed {
                op,
                parts: vec![not_run.clone(), not_walk.clone()],
            },
            direction: Direction::Internal,
            duration_kind: DurationKind::Regular,
            organization: crate::action::Organization::Mediated,
            dependency: DependencyClass::Unclassified,
            comm: None,
        };
        for action in [run, walk, stand, not_run, not_walk, combined] {
            env.actions.insert(action.id.clone(), action);
        }
        let results =
            run_law_suite(&env, &[], &LawSelection::Ids(["EA".to_owned()].into())).unwrap();
        assert_eq!(results[0].status, LawStatus::Fail);
        assert!(results[0].witnesses[0].detail.contains("stand"));
    }

    #[test]
    fn modality_contradictions_fail_prop_3_15() {
        use crate::action::{Modality, ModalityAssertion};
        let mut env = base_env();
        env.modalities = [
            ModalityAssertion::new("a", Modality::Possible),
            ModalityAssertion::new("a", Modality::Impossible),
        ]
        .into();
        let results = run_law_suite(
            &env,
            &[],
            &LawSelection::Ids(["Prop3.15".to_owned()].into()),
        )
        .unwrap();
        assert_eq!(results[0].status, LawStatus::Fail);
    }

    #[test]
    fn batch_runners_agree() {
        let subjects: Vec<(Environment, Vec<EventRecord>)> =
            (0..4).map(|_| (base_env(), Vec::new())).collect();
        let par = run_law_suite_batch(&subjects);
        let seq = run_law_suite_batch_seq(&subjects);
        assert_eq!(par, seq);
    }
}
