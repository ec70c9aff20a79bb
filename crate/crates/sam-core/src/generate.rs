//! Seeded random generators for environments, actor pairs and interval
//! events, plus a mutator that injects one detectable law violation.
//!
//! Generated environments satisfy every type invariant and every asserted
//! law by construction: acquaintance lists are built symmetrically,
//! component forests are acyclic by index order, compositions are produced
//! through the algebra so they arrive normalized, and synchronization maps
//! form a tree. The same seed always produces the same structures.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{
    compose, negate, Action, ActionTable, ActionTerm, CommKind, CompositionOp, Direction,
    DurationKind, Modality, ModalityAssertion, Organization,
};
use crate::engine::SimConfig;
use crate::ids::{ActionId, ActorName, ClockId, EventId, RelationId};
use crate::model::{
    ActorSpec, ElementMark, Environment, LawConfig, RelationItem, RelationKind,
};
use crate::rational::Rat;
use crate::temporal::{Clock, ClockMap, ClockOwner, EventKind, EventRecord, TimeSet, TimingClass};

/// Size bounds for generated environments.
#[derive(Clone, Copy, Debug)]
pub struct GenParams {
    pub max_actors: usize,
    pub max_actions: usize,
    pub max_relations: usize,
    pub with_events: bool,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            max_actors: 6,
            max_actions: 5,
            max_relations: 5,
            with_events: true,
        }
    }
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    &items[rng.random_range(0..items.len())]
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    let numer = rng.random_range(-6i64..=12);
    let denom = *pick(rng, &[1i64, 1, 2, 3]);
    Rat::new(numer, denom)
}

fn positive_rat(rng: &mut ChaCha8Rng) -> Rat {
    let numer = rng.random_range(1i64..=8);
    let denom = *pick(rng, &[1i64, 2]);
    Rat::new(numer, denom)
}

/// Builds a well-formed environment and an event set on its clocks.
pub fn well_formed_env(seed: u64, params: &GenParams) -> (Environment, Vec<EventRecord>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut env = Environment::new(format!("gen{seed}"));
    env.laws = LawConfig::default();

    let n_actors = rng.random_range(1..=params.max_actors.max(1));
    let names: Vec<ActorName> = (1..=n_actors)
        .map(|i| ActorName::new(format!("A{i}")))
        .collect();
    for name in &names {
        env.insert_actor(ActorSpec::new(name.clone()));
    }

    // Clocks form a tree of affine maps, so every cycle is trivially
    // consistent.
    let n_clocks = rng.random_range(1..=3);
    let clock_ids: Vec<ClockId> = (1..=n_clocks)
        .map(|i| ClockId::new(format!("c{i}")))
        .collect();
    for (i, id) in clock_ids.iter().enumerate() {
        let owner = if i == 0 || rng.random_bool(0.5) {
            ClockOwner::Environment
        } else {
            ClockOwner::Actor(pick(&mut rng, &names).clone())
        };
        env.clocks.insert(
            id.clone(),
            Clock {
                id: id.clone(),
                owner,
            },
        );
    }
    for i in 1..n_clocks {
        if rng.random_bool(0.7) {
            env.sync.push(ClockMap {
                from: clock_ids[i - 1].clone(),
                to: clock_ids[i].clone(),
                rate: Rat::new(*pick(&mut rng, &[1i64, 1, 2, 3]), *pick(&mut rng, &[1i64, 2])),
                offset: Rat::integer(rng.random_range(-2..=2)),
            });
        }
    }

    // Proper atomic actions; the first is regular and the second singular,
    // so events of both duration kinds are always expressible.
    let n_actions = rng.random_range(1..=params.max_actions.max(1)).max(2);
    let mut atomics: Vec<Action> = Vec::new();
    for i in 1..=n_actions {
        let direction = *pick(
            &mut rng,
            &[Direction::Internal, Direction::External, Direction::Combined],
        );
        let duration = match i {
            1 => DurationKind::Regular,
            2 => DurationKind::Singular,
            _ => {
                if rng.random_bool(0.5) {
                    DurationKind::Regular
                } else {
                    DurationKind::Singular
                }
            }
        };
        atomics.push(Action::atomic(format!("a{i}"), direction, duration));
    }
    // Transaction atoms, aimed at actors.
    for i in 1..=2 {
        atomics.push(Action::atomic(
            format!("t{i}"),
            Direction::External,
            DurationKind::Regular,
        ));
    }
    for action in &atomics {
        env.actions.insert(action.id.clone(), action.clone());
    }

    if rng.random_bool(0.6) {
        let void = negate(pick(&mut rng, &atomics).clone()).expect("atomics negate");
        env.actions.insert(void.id.clone(), void);
    }
    if rng.random_bool(0.25) {
        let total = Action::total_inaction("tia");
        env.actions.insert(total.id.clone(), total);
    }
    if rng.random_bool(0.5) {
        let op = CompositionOp::new("seq2", 2, true);
        let x = pick(&mut rng, &atomics).clone();
        let y = pick(&mut rng, &atomics).clone();
        let composed = compose(op, vec![x, y]).expect("arity matches");
        env.actions.insert(composed.id.clone(), composed);
    }
    if rng.random_bool(0.3) {
        let op = CompositionOp::new("seq2", 2, true);
        let x = negate(pick(&mut rng, &atomics).clone()).expect("atomics negate");
        let y = negate(pick(&mut rng, &atomics).clone()).expect("atomics negate");
        let voided = compose(op, vec![x, y]).expect("arity matches");
        env.actions.insert(voided.id.clone(), voided);
    }

    // Component forest: children point at strictly later indices.
    for i in 0..n_actors {
        for j in (i + 1)..n_actors {
            if rng.random_bool(0.2) {
                let child = names[j].clone();
                env.actors
                    .get_mut(&names[i])
                    .expect("registered")
                    .components
                    .insert(child);
            }
        }
    }

    // Symmetric acquaintance construction keeps the Connectivity Axiom.
    let mut edges: Vec<(ActorName, ActorName)> = Vec::new();
    for a in &names {
        for b in &names {
            if rng.random_bool(0.25) {
                edges.push((a.clone(), b.clone()));
            }
        }
    }
    for (a, b) in &edges {
        let sender = env.actors.get_mut(a).expect("registered");
        if !sender.facq.contains(b) {
            sender.facq.push(b.clone());
        }
        let receiver = env.actors.get_mut(b).expect("registered");
        if !receiver.bacq.contains(a) {
            receiver.bacq.push(a.clone());
        }
    }

    // Messenger actions over a few acquaintance edges.
    let mut send_count = 0;
    for (a, b) in edges.iter().take(4) {
        if send_count >= 2 || !rng.random_bool(0.6) {
            continue;
        }
        send_count += 1;
        let message = Action::atomic(
            format!("m_{a}_{b}_{send_count}"),
            Direction::External,
            DurationKind::Regular,
        )
        .with_comm(CommKind::Receive);
        let send = Action::atomic(
            format!("send_{a}_{b}_{send_count}"),
            Direction::External,
            DurationKind::Regular,
        )
        .with_comm(CommKind::Send {
            to: b.clone(),
            delivers: message.id.clone(),
            requesting: rng.random_bool(0.3),
        });
        env.actors
            .get_mut(a)
            .expect("registered")
            .act
            .insert(send.id.clone());
        env.actors
            .get_mut(b)
            .expect("registered")
            .trn
            .insert(message.id.clone());
        env.actions.insert(message.id.clone(), message);
        env.actions.insert(send.id.clone(), send);
    }

    // Per-actor action components and relations.
    let action_pool: Vec<ActionId> = env.actions.keys().cloned().collect();
    let mut relation_counter = 0usize;
    for name in &names {
        let mut act: BTreeSet<ActionId> = env.actors[name].act.clone();
        let mut trn: BTreeSet<ActionId> = env.actors[name].trn.clone();
        for id in &action_pool {
            if rng.random_bool(0.35) {
                act.insert(id.clone());
            }
        }
        for id in &action_pool {
            if rng.random_bool(0.2) {
                trn.insert(id.clone());
            }
        }
        let mut react = BTreeSet::new();
        for t in &trn {
            for a in &act {
                if rng.random_bool(0.3) {
                    react.insert((t.clone(), a.clone()));
                }
            }
        }

        let parts: Vec<ActorName> = env.parts_of(name).into_iter().collect();
        // Outer and external relations need a foreign endpoint: neither the
        // owner nor one of its parts.
        let others: Vec<&ActorName> = names
            .iter()
            .filter(|n| *n != name && !parts.contains(n))
            .collect();
        let mut rel = Vec::new();
        let n_rel = rng.random_range(0..=params.max_relations);
        for _ in 0..n_rel {
            relation_counter += 1;
            let id = RelationId::new(format!("r{relation_counter}"));
            let choice = rng.random_range(0..4);
            let item = match choice {
                0 => RelationItem {
                    id,
                    kind: RelationKind::Property,
                    endpoints: vec![name.to_string()],
                },
                1 if !others.is_empty() => RelationItem {
                    id,
                    kind: if rng.random_bool(0.5) {
                        RelationKind::Outer
                    } else {
                        RelationKind::External
                    },
                    endpoints: vec![name.to_string(), pick(&mut rng, &others).to_string()],
                },
                2 if !parts.is_empty() => RelationItem {
                    id,
                    kind: RelationKind::Internal,
                    endpoints: vec![name.to_string(), pick(&mut rng, &parts).to_string()],
                },
                3 if !parts.is_empty() => RelationItem {
                    id,
                    kind: RelationKind::Inner,
                    endpoints: vec![pick(&mut rng, &parts).to_string()],
                },
                _ => RelationItem {
                    id,
                    kind: RelationKind::Property,
                    endpoints: vec![name.to_string()],
                },
            };
            rel.push(item);
        }
        let mut proact = BTreeSet::new();
        for item in &rel {
            for a in &act {
                if rng.random_bool(0.25) {
                    proact.insert((item.id.clone(), a.clone()));
                }
            }
        }
        let mut marks = std::collections::BTreeMap::new();
        for item in &rel {
            if rng.random_bool(0.3) {
                marks.insert(
                    item.id.to_string(),
                    ElementMark {
                        actualized: false,
                        acknowledged: rng.random_bool(0.5),
                    },
                );
            }
        }

        // Occasionally extend the actor with a virtual reaction over a
        // transaction outside its own set.
        let mut vreact = BTreeSet::new();
        if rng.random_bool(0.3) {
            let outside: Vec<&ActionId> =
                action_pool.iter().filter(|id| !trn.contains(id)).collect();
            if let (Some(t), Some(a)) = (outside.first(), act.iter().next()) {
                vreact = react.clone();
                vreact.insert(((*t).clone(), a.clone()));
            }
        }

        env.relp.extend(rel.iter().map(|r| r.id.clone()));
        let actor = env.actors.get_mut(name).expect("registered");
        actor.act = act;
        actor.trn = trn;
        actor.react = react;
        actor.rel = rel;
        actor.proact = proact;
        actor.marks = marks;
        actor.vreact = vreact;
    }

    // Environment-level relations over the same universes.
    for t in env.actors.values().flat_map(|a| a.trn.clone()).take(2) {
        env.trn.insert(t);
    }
    let trn_pool: Vec<ActionId> = env.trn.iter().cloned().collect();
    for t in &trn_pool {
        if rng.random_bool(0.5) {
            env.ereact.insert((t.clone(), pick(&mut rng, &action_pool).clone()));
        }
    }
    let relp_pool: Vec<RelationId> = env.relp.iter().cloned().collect();
    for r in relp_pool.iter().take(2) {
        if rng.random_bool(0.5) {
            env.eproact
                .insert((r.clone(), pick(&mut rng, &action_pool).clone()));
        }
    }

    // Consistent modality assertions: one safe class per sampled action.
    for id in action_pool.iter().take(3) {
        if rng.random_bool(0.4) {
            let modality = *pick(
                &mut rng,
                &[
                    Modality::Possible,
                    Modality::Performed,
                    Modality::Unknown,
                    Modality::Prohibited,
                    Modality::Tolerable,
                    Modality::Indefinite,
                ],
            );
            env.modalities
                .insert(ModalityAssertion::new(id.clone(), modality));
        }
    }

    let events = if params.with_events {
        generate_events(&mut rng, &env)
    } else {
        Vec::new()
    };
    (env, events)
}

/// A trigger with one tagged reaction per timing class, plus a few free
/// events of both duration kinds.
fn generate_events(rng: &mut ChaCha8Rng, env: &Environment) -> Vec<EventRecord> {
    let clock_ids: Vec<ClockId> = env.clocks.keys().cloned().collect();
    if clock_ids.is_empty() || env.actors.is_empty() {
        return Vec::new();
    }
    let names: Vec<ActorName> = env.actors.keys().cloned().collect();
    let regular: Vec<ActionId> = env
        .actions
        .values()
        .filter(|a| a.duration_kind == DurationKind::Regular && a.is_proper())
        .map(|a| a.id.clone())
        .collect();
    let singular: Vec<ActionId> = env
        .actions
        .values()
        .filter(|a| a.duration_kind == DurationKind::Singular && a.is_proper())
        .map(|a| a.id.clone())
        .collect();
    if regular.is_empty() {
        return Vec::new();
    }

    let mut events = Vec::new();
    let mut counter = 0usize;
    let mut fresh = |events: &mut Vec<EventRecord>, record: EventRecord| {
        events.push(record);
    };
    let mut next_id = || {
        counter += 1;
        EventId::new(format!("E{counter}"))
    };

    let chain_clock = pick(rng, &clock_ids).clone();
    let actor = pick(rng, &names).clone();
    let start = small_rat(rng);
    let end = &start + &positive_rat(rng);
    let trigger_id = next_id();
    fresh(
        &mut events,
        EventRecord {
            id: trigger_id.clone(),
            actor: actor.clone(),
            action: pick(rng, &regular).clone(),
            time: TimeSet::new(chain_clock.clone(), vec![(start.clone(), end.clone())])
                .expect("ordered"),
            depends_on: BTreeSet::new(),
            kind: EventKind::Initial,
        },
    );
    for timing in [TimingClass::Sharp, TimingClass::Reserved, TimingClass::Delayed] {
        if !rng.random_bool(0.7) {
            continue;
        }
        let r_start = match timing {
            TimingClass::Sharp => start.clone(),
            TimingClass::Reserved => end.clone(),
            TimingClass::Delayed => &end + &positive_rat(rng),
        };
        let r_end = &r_start + &positive_rat(rng);
        let id = next_id();
        fresh(
            &mut events,
            EventRecord {
                id,
                actor: actor.clone(),
                action: pick(rng, &regular).clone(),
                time: TimeSet::new(chain_clock.clone(), vec![(r_start, r_end)]).expect("ordered"),
                depends_on: [trigger_id.clone()].into(),
                kind: EventKind::Reaction {
                    trigger: trigger_id.clone(),
                    timing,
                },
            },
        );
    }

    let n_free = rng.random_range(0..=3);
    for _ in 0..n_free {
        let clock = pick(rng, &clock_ids).clone();
        let momentary = !singular.is_empty() && rng.random_bool(0.4);
        let (action, time) = if momentary {
            let t = small_rat(rng);
            (
                pick(rng, &singular).clone(),
                TimeSet::new(clock, vec![(t.clone(), t)]).expect("degenerate"),
            )
        } else {
            let lo = small_rat(rng);
            let hi = &lo + &positive_rat(rng);
            let mut pieces = vec![(lo, hi.clone())];
            if rng.random_bool(0.3) {
                let lo2 = &hi + &positive_rat(rng);
                let hi2 = &lo2 + &positive_rat(rng);
                pieces.push((lo2, hi2));
            }
            (
                pick(rng, &regular).clone(),
                TimeSet::new(clock, pieces).expect("ordered"),
            )
        };
        let id = next_id();
        fresh(
            &mut events,
            EventRecord {
                id,
                actor: pick(rng, &names).clone(),
                action,
                time,
                depends_on: BTreeSet::new(),
                kind: EventKind::Initial,
            },
        );
    }
    events
}

/// A mutation applied to a well-formed environment, with the law check it
/// must trip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub law: String,
    pub description: String,
}

/// Injects one law violation; the returned mutation names the registry
/// check that must fail with a witness.
pub fn mutate_env(
    seed: u64,
    env: &Environment,
    events: &[EventRecord],
) -> (Environment, Vec<EventRecord>, Mutation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut env = env.clone();
    let mut events = events.to_vec();

    let has_reserved_reaction = events.iter().any(|e| {
        matches!(
            e.kind,
            EventKind::Reaction {
                timing: TimingClass::Reserved,
                ..
            }
        )
    });
    let mut kinds = vec!["CA", "EA", "MA", "Prop3.17", "Prop3.18", "Prop3.22", "Prop3.15"];
    if has_reserved_reaction {
        kinds.push("Prop3.6");
    }
    let kind = *pick(&mut rng, &kinds);

    let mutation = match kind {
        "CA" => {
            let names: Vec<ActorName> = env.actors.keys().cloned().collect();
            let sender = pick(&mut rng, &names).clone();
            let target = pick(&mut rng, &names).clone();
            // One-sided edge: forward without the backward entry.
            {
                let actor = env.actors.get_mut(&sender).expect("registered");
                if !actor.facq.contains(&target) {
                    actor.facq.push(target.clone());
                }
            }
            let receiver = env.actors.get_mut(&target).expect("registered");
            receiver.bacq.retain(|n| n != &sender);
            Mutation {
                law: "CA".to_owned(),
                description: format!("{sender} may send to {target} without the backward edge"),
            }
        }
        "EA" => {
            let mk = |id: &str| Action::atomic(id, Direction::Internal, DurationKind::Regular);
            let (mx, my, mz) = (mk("mx"), mk("my"), mk("mz"));
            let mut op = CompositionOp::new("infer", 2, false);
            op.complement_universe = Some(vec![mx.clone(), my.clone(), mz.clone()]);
            let nx = negate(mx.clone()).expect("atomic");
            let ny = negate(my.clone()).expect("atomic");
            let term = Action {
                id: ActionId::new("void_combination"),
                term: ActionTerm::Composed {
                    op,
                    parts: vec![nx.clone(), ny.clone()],
                },
                direction: Direction::Internal,
                duration_kind: DurationKind::Regular,
                organization: Organization::Mediated,
                dependency: crate::action::DependencyClass::Unclassified,
                comm: None,
            };
            for action in [mx, my, mz, nx, ny, term] {
                env.actions.insert(action.id.clone(), action);
            }
            Mutation {
                law: "EA".to_owned(),
                description: "composition of inactions resolves to a proper action".to_owned(),
            }
        }
        "MA" => {
            let names: Vec<ActorName> = env.actors.keys().cloned().collect();
            let host = pick(&mut rng, &names).clone();
            env.actors
                .get_mut(&host)
                .expect("registered")
                .components
                .insert(ActorName::new("unmodeled_part"));
            Mutation {
                law: "MA".to_owned(),
                description: format!("{host} gains a part that is not an actor"),
            }
        }
        "Prop3.17" => {
            let x = Action::atomic("d1", Direction::Internal, DurationKind::Regular);
            let y = Action::atomic("d2", Direction::Internal, DurationKind::Regular);
            let bad = Action {
                id: ActionId::new("misdirected"),
                term: ActionTerm::Composed {
                    op: CompositionOp::new("seq2", 2, true),
                    parts: vec![x.clone(), y.clone()],
                },
                direction: Direction::External,
                duration_kind: DurationKind::Regular,
                organization: Organization::Mediated,
                dependency: crate::action::DependencyClass::Unclassified,
                comm: None,
            };
            for action in [x, y, bad] {
                env.actions.insert(action.id.clone(), action);
            }
            Mutation {
                law: "Prop3.17".to_owned(),
                description: "composed action declares a direction its parts do not have"
                    .to_owned(),
            }
        }
        "Prop3.18" => {
            let x = Action::atomic("dn", Direction::Internal, DurationKind::Regular);
            let once = negate(x.clone()).expect("atomic");
            let twice = Action {
                id: ActionId::new("double_negation"),
                term: ActionTerm::Negation(Box::new(once.clone())),
                direction: Direction::Internal,
                duration_kind: DurationKind::Regular,
                organization: Organization::Void,
                dependency: crate::action::DependencyClass::Unclassified,
                comm: None,
            };
            for action in [x, once, twice] {
                env.actions.insert(action.id.clone(), action);
            }
            Mutation {
                law: "Prop3.18".to_owned(),
                description: "stored term carries an unnormalized double negation".to_owned(),
            }
        }
        "Prop3.22" => {
            let x = Action::atomic("p1", Direction::Internal, DurationKind::Regular);
            let y = Action::atomic("p2", Direction::Internal, DurationKind::Regular);
            let bad = Action {
                id: ActionId::new("flat_composition"),
                term: ActionTerm::Composed {
                    op: CompositionOp::new("seq2", 2, true),
                    parts: vec![x.clone(), y.clone()],
                },
                direction: Direction::Internal,
                duration_kind: DurationKind::Regular,
                organization: Organization::Direct,
                dependency: crate::action::DependencyClass::Unclassified,
                comm: None,
            };
            for action in [x, y, bad] {
                env.actions.insert(action.id.clone(), action);
            }
            Mutation {
                law: "Prop3.22".to_owned(),
                description: "composition of proper actions declared direct".to_owned(),
            }
        }
        "Prop3.15" => {
            let id = env
                .actions
                .keys()
                .next()
                .cloned()
                .unwrap_or_else(|| ActionId::new("phantom"));
            env.modalities
                .insert(ModalityAssertion::new(id.clone(), Modality::Possible));
            env.modalities
                .insert(ModalityAssertion::new(id, Modality::Impossible));
            Mutation {
                law: "Prop3.15".to_owned(),
                description: "action asserted both possible and impossible".to_owned(),
            }
        }
        "Prop3.6" => {
            let target = events
                .iter()
                .position(|e| {
                    matches!(
                        e.kind,
                        EventKind::Reaction {
                            timing: TimingClass::Reserved,
                            ..
                        }
                    )
                })
                .expect("reserved reaction present");
            let event = &mut events[target];
            let shifted: Vec<(Rat, Rat)> = event
                .time
                .pieces()
                .iter()
                .map(|(lo, hi)| (lo + &Rat::one(), hi + &Rat::one()))
                .collect();
            event.time = TimeSet::new(event.time.clock.clone(), shifted).expect("ordered");
            Mutation {
                law: "Prop3.6".to_owned(),
                description: "reserved reaction shifted off its trigger's end".to_owned(),
            }
        }
        _ => unreachable!(),
    };
    (env, events, mutation)
}

/// How a generated actor pair is derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairShape {
    /// Consistent renaming of every component id: isomorphic by
    /// construction.
    Renamed,
    /// One structural edit away from a renamed copy.
    Perturbed,
    /// Independently generated.
    Independent,
}

/// A pair of actors over a shared action table, sized for exhaustive
/// permutation checking.
pub fn actor_pair(seed: u64) -> (ActionTable, ActorSpec, ActorSpec, PairShape) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = rng.random_range(1..=5usize);

    let mut table = ActionTable::new();
    let mut x_ids = Vec::new();
    let mut y_ids = Vec::new();
    for i in 0..size {
        let x = Action::atomic(
            format!("x{i}"),
            Direction::Internal,
            DurationKind::Regular,
        );
        let y = Action::atomic(
            format!("y{i}"),
            Direction::Internal,
            DurationKind::Regular,
        );
        x_ids.push(x.id.clone());
        y_ids.push(y.id.clone());
        table.insert(x.id.clone(), x);
        table.insert(y.id.clone(), y);
    }

    let mut first = ActorSpec::new("P");
    for id in &x_ids {
        if rng.random_bool(0.7) {
            first.act.insert(id.clone());
        }
        if rng.random_bool(0.4) {
            first.trn.insert(id.clone());
        }
    }
    let n_rel = rng.random_range(0..=3usize);
    for i in 0..n_rel {
        first.rel.push(RelationItem {
            id: RelationId::new(format!("pr{i}")),
            kind: RelationKind::Property,
            endpoints: vec!["P".to_owned()],
        });
    }
    for t in first.trn.clone() {
        for a in first.act.clone() {
            if rng.random_bool(0.4) {
                first.react.insert((t.clone(), a.clone()));
            }
        }
    }
    for r in first.rel_ids() {
        for a in first.act.clone() {
            if rng.random_bool(0.3) {
                first.proact.insert((r.clone(), a.clone()));
            }
        }
    }

    let shape = *pick(
        &mut rng,
        &[PairShape::Renamed, PairShape::Perturbed, PairShape::Independent],
    );
    let rename = |id: &ActionId| -> ActionId {
        let idx = x_ids.iter().position(|x| x == id).expect("pool id");
        y_ids[idx].clone()
    };
    let mut second = match shape {
        PairShape::Renamed | PairShape::Perturbed => {
            let mut other = ActorSpec::new("Q");
            other.act = first.act.iter().map(&rename).collect();
            other.trn = first.trn.iter().map(&rename).collect();
            other.react = first
                .react
                .iter()
                .map(|(t, a)| (rename(t), rename(a)))
                .collect();
            other.rel = first
                .rel
                .iter()
                .map(|item| RelationItem {
                    id: RelationId::new(format!("q{}", item.id)),
                    kind: item.kind,
                    endpoints: vec!["Q".to_owned()],
                })
                .collect();
            other.proact = first
                .proact
                .iter()
                .map(|(r, a)| (RelationId::new(format!("q{r}")), rename(a)))
                .collect();
            other
        }
        PairShape::Independent => {
            let mut other = ActorSpec::new("Q");
            for id in &y_ids {
                if rng.random_bool(0.7) {
                    other.act.insert(id.clone());
                }
                if rng.random_bool(0.4) {
                    other.trn.insert(id.clone());
                }
            }
            for t in other.trn.clone() {
                for a in other.act.clone() {
                    if rng.random_bool(0.4) {
                        other.react.insert((t.clone(), a.clone()));
                    }
                }
            }
            other
        }
    };
    if shape == PairShape::Perturbed {
        // One edit: toggle a reaction pair or grow the action set.
        let ts: Vec<ActionId> = second.trn.iter().cloned().collect();
        let acts: Vec<ActionId> = second.act.iter().cloned().collect();
        match (ts.first(), acts.first()) {
            (Some(t), Some(a)) if rng.random_bool(0.5) => {
                let pair = (t.clone(), a.clone());
                if !second.react.remove(&pair) {
                    second.react.insert(pair);
                }
            }
            _ => {
                let extra = Action::atomic("y_extra", Direction::Internal, DurationKind::Regular);
                second.act.insert(extra.id.clone());
                // Extra id joins the shared table.
                let _ = extra;
            }
        }
    }
    if !table.contains_key(&ActionId::new("y_extra")) {
        let extra = Action::atomic("y_extra", Direction::Internal, DurationKind::Regular);
        table.insert(extra.id.clone(), extra);
    }
    (table, first, second, shape)
}

/// Three single-interval events on one clock, with endpoints drawn from a
/// range dense enough that pairwise overlaps are common.
pub fn single_interval_triple(seed: u64) -> [EventRecord; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut make = |idx: usize| {
        let lo = small_rat(&mut rng);
        let hi = &lo + &Rat::new(rng.random_range(0i64..=8), *pick(&mut rng, &[1i64, 2]));
        EventRecord {
            id: EventId::new(format!("H{idx}")),
            actor: "A".into(),
            action: "a".into(),
            time: TimeSet::new("c".into(), vec![(lo, hi)]).expect("ordered"),
            depends_on: BTreeSet::new(),
            kind: EventKind::Initial,
        }
    };
    [make(1), make(2), make(3)]
}

/// Default simulation configuration for generated environments.
pub fn default_sim(seed: u64) -> SimConfig {
    SimConfig {
        seed,
        ..SimConfig::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::{run_law_suite, suite_passes, LawSelection, LawStatus};
    use crate::model::validate_environment;

    #[test]
    fn generated_environments_are_well_formed() {
        for seed in 0..50 {
            let (env, _) = well_formed_env(seed, &GenParams::default());
            let report = validate_environment(&env);
            assert!(report.is_empty(), "seed {seed}: {report}");
        }
    }

    #[test]
    fn generated_environments_pass_the_registry() {
        for seed in 0..25 {
            let (env, events) = well_formed_env(seed, &GenParams::default());
            let results = run_law_suite(&env, &events, &LawSelection::All).unwrap();
            assert!(
                suite_passes(&results),
                "seed {seed}: {:#?}",
                results
                    .iter()
                    .filter(|r| r.status == LawStatus::Fail)
                    .collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let (a, ea) = well_formed_env(42, &GenParams::default());
        let (b, eb) = well_formed_env(42, &GenParams::default());
        assert_eq!(a, b);
        assert_eq!(ea, eb);
    }

    #[test]
    fn mutations_trip_their_law() {
        for seed in 0..30 {
            let (env, events) = well_formed_env(seed, &GenParams::default());
            let (mutant, mutant_events, mutation) = mutate_env(seed ^ 0x5eed, &env, &events);
            let results = run_law_suite(&mutant, &mutant_events, &LawSelection::All).unwrap();
            let result = results
                .iter()
                .find(|r| r.law == mutation.law)
                .expect("law registered");
            assert_eq!(
                result.status,
                LawStatus::Fail,
                "seed {seed}, mutation {mutation:?}"
            );
            assert!(!result.witnesses.is_empty());
        }
    }

    #[test]
    fn renamed_pairs_are_homological() {
        use crate::equivalence::{homological, IsoOptions};
        let mut seen_renamed = false;
        for seed in 0..40 {
            let (table, a, b, shape) = actor_pair(seed);
            if shape == PairShape::Renamed {
                seen_renamed = true;
                assert!(
                    homological(&table, &a, &b, IsoOptions::default()).is_some(),
                    "seed {seed}"
                );
            }
        }
        assert!(seen_renamed);
    }
}
