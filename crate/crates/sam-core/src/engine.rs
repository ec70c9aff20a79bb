//! Discrete-event execution over unsynchronized local clocks.
//!
//! A run fires proactions for actualized relations, delivers messengers
//! along acquaintance-legal edges, and fires reactions to received
//! transactions under the three timing classes. There is no global time:
//! within each synchronization component pending events fire in mapped
//! time order, and across components the scheduler interleaves by a
//! deterministic round-robin. Multivalued reaction and proaction choices
//! are the only nondeterminism; a seeded generator resolves them in
//! sampled mode and an exhaustive branch search resolves them in
//! enumerate-all mode, so identical inputs always produce identical
//! traces.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::CommKind;
use crate::ids::{ActionId, ActorName, ClockId, EventId};
use crate::model::{can_receive, can_send, validate_environment, Environment};
use crate::rational::Rat;
use crate::temporal::{
    map_to_clock, reaction_timing_check, sequential, EventKind, EventRecord, SyncGraph, TimeSet,
    TimingClass,
};
use crate::witness::{ValidationReport, Witness};

/// How multivalued choices are resolved.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimMode {
    #[default]
    Sampled,
    EnumerateAll,
}

/// What to do with a messenger on an edge that violates the acquaintance
/// axioms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnginePolicy {
    /// The send is recorded, the messenger is not delivered.
    #[default]
    Drop,
    /// The run fails with a witness.
    Error,
}

/// Timing rule for reactions and proactions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReactionTiming {
    Sharp,
    Reserved,
    /// Starts the given positive delay after the trigger ends.
    Delayed(Rat),
}

impl ReactionTiming {
    fn class(&self) -> TimingClass {
        match self {
            ReactionTiming::Sharp => TimingClass::Sharp,
            ReactionTiming::Reserved => TimingClass::Reserved,
            ReactionTiming::Delayed(_) => TimingClass::Delayed,
        }
    }
}

/// Delivery delay for one (sender, receiver) pair, in the receiver's clock.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelayRule {
    pub from: ActorName,
    pub to: ActorName,
    pub delay: Rat,
}

/// Timing rule for one (actor, trigger) pair; the trigger is a transaction
/// action id or a relation id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimingRule {
    pub actor: ActorName,
    pub trigger: String,
    pub timing: ReactionTiming,
}

/// Configuration of one run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub mode: SimMode,
    #[serde(default = "default_max_steps")]
    pub max_steps: usize,
    #[serde(default)]
    pub violation_policy: EnginePolicy,
    /// Delivery delay when no rule matches.
    #[serde(default = "rat_one")]
    pub default_delivery_delay: Rat,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub delivery_delay: Vec<DelayRule>,
    /// Reaction timing when no rule matches.
    #[serde(default = "default_timing")]
    pub default_reaction_timing: ReactionTiming,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reaction_timing: Vec<TimingRule>,
    /// Duration of regular-action events.
    #[serde(default = "rat_one")]
    pub default_duration: Rat,
}

fn default_max_steps() -> usize {
    1000
}

fn rat_one() -> Rat {
    Rat::one()
}

fn default_timing() -> ReactionTiming {
    ReactionTiming::Reserved
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            seed: 0,
            mode: SimMode::Sampled,
            max_steps: default_max_steps(),
            violation_policy: EnginePolicy::Drop,
            default_delivery_delay: Rat::one(),
            delivery_delay: Vec::new(),
            default_reaction_timing: ReactionTiming::Reserved,
            reaction_timing: Vec::new(),
            default_duration: Rat::one(),
        }
    }
}

impl SimConfig {
    fn delay_for(&self, from: &ActorName, to: &ActorName) -> Rat {
        self.delivery_delay
            .iter()
            .find(|r| r.from == *from && r.to == *to)
            .map(|r| r.delay.clone())
            .unwrap_or_else(|| self.default_delivery_delay.clone())
    }

    fn timing_for(&self, actor: &ActorName, trigger: &str) -> ReactionTiming {
        self.reaction_timing
            .iter()
            .find(|r| r.actor == *actor && r.trigger == trigger)
            .map(|r| r.timing.clone())
            .unwrap_or_else(|| self.default_reaction_timing.clone())
    }
}

/// The result of one run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    /// Decision path in enumerate-all mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch_id: Option<String>,
    pub events: Vec<EventRecord>,
    /// (send event, receive event) pairs.
    #[serde(default)]
    pub messages: Vec<(EventId, EventId)>,
}

/// Errors raised by a run.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("environment failed validation:\n{0}")]
    Invalid(ValidationReport),
    #[error("no clock resolves for actor {0}")]
    NoClock(ActorName),
    #[error("initial event {0} is malformed: {1}")]
    BadInitialEvent(EventId, String),
    #[error("messenger from {from} to {to} violates the acquaintance axioms")]
    AcquaintanceViolation { from: ActorName, to: ActorName },
}

/// First difference between a trace and its replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub index: usize,
    pub expected: Option<EventRecord>,
    pub got: Option<EventRecord>,
}

enum Decider {
    Sampled(ChaCha8Rng),
    Scripted {
        script: Vec<usize>,
        /// (chosen, option count) at each choice point met.
        log: Vec<(usize, usize)>,
    },
}

impl Decider {
    /// Resolves a multivalued choice among `n` options. Only real choice
    /// points (`n > 1`) consume randomness or script positions.
    fn choose(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        if n == 1 {
            return 0;
        }
        match self {
            Decider::Sampled(rng) => rng.random_range(0..n),
            Decider::Scripted { script, log } => {
                let position = log.len();
                let chosen = script.get(position).copied().unwrap_or(0);
                log.push((chosen, n));
                chosen
            }
        }
    }
}

struct Engine<'a> {
    env: &'a Environment,
    config: &'a SimConfig,
    sync: SyncGraph,
    clock_of: BTreeMap<ActorName, ClockId>,
    /// Pending events per synchronization component, ordered by start time
    /// mapped to the component representative.
    queues: BTreeMap<usize, BTreeMap<(Rat, u64), EventRecord>>,
    component_of: BTreeMap<ClockId, usize>,
    seq: u64,
    used_ids: BTreeSet<EventId>,
    next_id: u64,
    /// Latest end time seen per actor, on its own clock.
    local_now: BTreeMap<ActorName, Rat>,
    trace: Trace,
}

impl<'a> Engine<'a> {
    fn new(env: &'a Environment, config: &'a SimConfig) -> Result<Self, EngineError> {
        let report = validate_environment(env);
        if !report.is_empty() {
            return Err(EngineError::Invalid(report));
        }
        let sync = env.sync_graph();
        let mut component_of = BTreeMap::new();
        let clock_ids: Vec<ClockId> = env.clocks.keys().cloned().collect();
        for id in &clock_ids {
            // Stable component numbering: index of the first clock in the
            // same component.
            let idx = clock_ids
                .iter()
                .position(|other| sync.comparable_clocks(id, other))
                .unwrap_or(0);
            component_of.insert(id.clone(), idx);
        }
        let mut clock_of = BTreeMap::new();
        for name in env.actors.keys() {
            let owned = env.clocks.values().find(|c| {
                matches!(&c.owner, crate::temporal::ClockOwner::Actor(a) if a == name)
            });
            let fallback = env
                .clocks
                .values()
                .find(|c| c.owner == crate::temporal::ClockOwner::Environment);
            if let Some(clock) = owned.or(fallback) {
                clock_of.insert(name.clone(), clock.id.clone());
            }
        }
        Ok(Engine {
            env,
            config,
            sync,
            clock_of,
            queues: BTreeMap::new(),
            component_of,
            seq: 0,
            used_ids: BTreeSet::new(),
            next_id: 1,
            local_now: BTreeMap::new(),
            trace: Trace::default(),
        })
    }

    fn clock_for(&self, actor: &ActorName) -> Result<ClockId, EngineError> {
        self.clock_of
            .get(actor)
            .cloned()
            .ok_or_else(|| EngineError::NoClock(actor.clone()))
    }

    fn fresh_id(&mut self) -> EventId {
        loop {
            let candidate = EventId::new(format!("e{}", self.next_id));
            self.next_id += 1;
            if self.used_ids.insert(candidate.clone()) {
                return candidate;
            }
        }
    }

    fn schedule(&mut self, event: EventRecord) {
        let component = self
            .component_of
            .get(&event.time.clock)
            .copied()
            .unwrap_or(usize::MAX);
        let key_time = self
            .sync
            .map_between(&event.time.clock, self.component_root(component))
            .map(|m| m.apply(event.time.start().unwrap_or(&Rat::zero())))
            .unwrap_or_else(|| event.time.start().cloned().unwrap_or_else(Rat::zero));
        let seq = self.seq;
        self.seq += 1;
        self.queues
            .entry(component)
            .or_default()
            .insert((key_time, seq), event);
    }

    fn component_root(&self, component: usize) -> &ClockId {
        static FALLBACK: std::sync::OnceLock<ClockId> = std::sync::OnceLock::new();
        self.component_of
            .iter()
            .find(|(_, idx)| **idx == component)
            .map(|(id, _)| id)
            .unwrap_or_else(|| FALLBACK.get_or_init(|| ClockId::new("")))
    }

    /// Event time for a scheduled action: start per timing rule relative to
    /// the trigger span, duration per the action's duration kind.
    fn action_time(
        &self,
        action: &ActionId,
        clock: &ClockId,
        trigger_start: &Rat,
        trigger_end: &Rat,
        timing: &ReactionTiming,
    ) -> TimeSet {
        let start = match timing {
            ReactionTiming::Sharp => trigger_start.clone(),
            ReactionTiming::Reserved => trigger_end.clone(),
            ReactionTiming::Delayed(d) => trigger_end + d,
        };
        self.timed(action, clock, start)
    }

    fn timed(&self, action: &ActionId, clock: &ClockId, start: Rat) -> TimeSet {
        let singular = self
            .env
            .actions
            .get(action)
            .map(|a| a.duration_kind == crate::action::DurationKind::Singular)
            .unwrap_or(false);
        if singular {
            TimeSet::moment(clock.clone(), start)
        } else {
            let end = &start + &self.config.default_duration;
            TimeSet::new(clock.clone(), vec![(start, end)]).expect("ordered endpoints")
        }
    }

    fn fire_initial_proactions(&mut self, decider: &mut Decider) -> Result<(), EngineError> {
        let actors: Vec<ActorName> = self.env.actors.keys().cloned().collect();
        for name in actors {
            let actor = &self.env.actors[&name];
            let relations: Vec<_> = actor
                .rel
                .iter()
                .filter(|item| actor.mark_of(item.id.as_str()).actualized)
                .map(|item| item.id.clone())
                .collect();
            for relation in relations {
                let actor = &self.env.actors[&name];
                let mut options: Vec<ActionId> =
                    actor.proactions_of(&relation).into_iter().cloned().collect();
                options.sort();
                if options.is_empty() {
                    continue;
                }
                let chosen = options[decider.choose(options.len())].clone();
                let clock = self.clock_for(&name)?;
                let timing = self.config.timing_for(&name, relation.as_str());
                let zero = Rat::zero();
                let time = self.action_time(&chosen, &clock, &zero, &zero, &timing);
                let id = self.fresh_id();
                self.schedule(EventRecord {
                    id,
                    actor: name.clone(),
                    action: chosen,
                    time,
                    depends_on: BTreeSet::new(),
                    kind: EventKind::Proaction { relation: relation.clone() },
                });
            }
        }
        Ok(())
    }

    fn deliver(
        &mut self,
        send_event: &EventRecord,
        to: &ActorName,
        delivers: &ActionId,
    ) -> Result<(), EngineError> {
        let from = &send_event.actor;
        let legal = can_send(self.env, from, to).unwrap_or(false)
            && can_receive(self.env, from, to).unwrap_or(false);
        if !legal {
            return match self.config.violation_policy {
                EnginePolicy::Drop => Ok(()),
                EnginePolicy::Error => Err(EngineError::AcquaintanceViolation {
                    from: from.clone(),
                    to: to.clone(),
                }),
            };
        }
        let receiver_clock = self.clock_for(to)?;
        let delay = self.config.delay_for(from, to);
        let start = match map_to_clock(&send_event.time, &receiver_clock, &self.sync) {
            Ok(mapped) => &mapped.end().cloned().unwrap_or_else(Rat::zero) + &delay,
            // Incomparable clocks: the receiver schedules on its own local
            // time; the pair stays causally ordered but never time-ordered.
            Err(_) => {
                let now = self.local_now.get(to).cloned().unwrap_or_else(Rat::zero);
                &now + &delay
            }
        };
        let id = self.fresh_id();
        let receive = EventRecord {
            id: id.clone(),
            actor: to.clone(),
            action: delivers.clone(),
            time: self.timed(delivers, &receiver_clock, start),
            depends_on: [send_event.id.clone()].into(),
            kind: EventKind::Receive {
                send: send_event.id.clone(),
            },
        };
        self.trace.messages.push((send_event.id.clone(), id));
        self.schedule(receive);
        Ok(())
    }

    fn react_to(&mut self, trigger: &EventRecord, decider: &mut Decider) -> Result<(), EngineError> {
        let actor = &self.env.actors[&trigger.actor];
        if !actor.trn.contains(&trigger.action) {
            return Ok(());
        }
        let mut options: Vec<ActionId> = actor
            .reactions_to(&trigger.action)
            .into_iter()
            .cloned()
            .collect();
        options.sort();
        if options.is_empty() {
            return Ok(());
        }
        let chosen = options[decider.choose(options.len())].clone();
        let timing = self
            .config
            .timing_for(&trigger.actor, trigger.action.as_str());
        let (Some(t_start), Some(t_end)) = (trigger.time.start(), trigger.time.end()) else {
            return Ok(());
        };
        let time = self.action_time(
            &chosen,
            &trigger.time.clock,
            &t_start.clone(),
            &t_end.clone(),
            &timing,
        );
        let id = self.fresh_id();
        self.schedule(EventRecord {
            id,
            actor: trigger.actor.clone(),
            action: chosen,
            time,
            depends_on: [trigger.id.clone()].into(),
            kind: EventKind::Reaction {
                trigger: trigger.id.clone(),
                timing: timing.class(),
            },
        });
        Ok(())
    }

    fn run(mut self, initial: &[EventRecord], decider: &mut Decider) -> Result<Trace, EngineError> {
        for event in initial {
            if !self.env.actors.contains_key(&event.actor) {
                return Err(EngineError::BadInitialEvent(
                    event.id.clone(),
                    format!("unknown actor {}", event.actor),
                ));
            }
            if !self.env.actions.contains_key(&event.action) {
                return Err(EngineError::BadInitialEvent(
                    event.id.clone(),
                    format!("unknown action {}", event.action),
                ));
            }
            if event.time.is_empty() {
                return Err(EngineError::BadInitialEvent(
                    event.id.clone(),
                    "empty time set".to_owned(),
                ));
            }
            if !self.used_ids.insert(event.id.clone()) {
                return Err(EngineError::BadInitialEvent(
                    event.id.clone(),
                    "duplicate event id".to_owned(),
                ));
            }
            self.schedule(event.clone());
        }
        self.fire_initial_proactions(decider)?;

        let mut round_robin = 0usize;
        let mut steps = 0usize;
        while steps < self.config.max_steps {
            let components: Vec<usize> = self
                .queues
                .iter()
                .filter(|(_, q)| !q.is_empty())
                .map(|(c, _)| *c)
                .collect();
            if components.is_empty() {
                break;
            }
            let component = components[round_robin % components.len()];
            round_robin += 1;
            let queue = self.queues.get_mut(&component).expect("non-empty component");
            let key = queue.keys().next().cloned().expect("non-empty queue");
            let event = queue.remove(&key).expect("present key");

            if let Some(end) = event.time.end() {
                let now = self
                    .local_now
                    .entry(event.actor.clone())
                    .or_insert_with(Rat::zero);
                if *end > *now {
                    *now = end.clone();
                }
            }
            self.trace.events.push(event.clone());
            steps += 1;

            if let Some(CommKind::Send { to, delivers, .. }) = self
                .env
                .actions
                .get(&event.action)
                .and_then(|a| a.comm.clone())
            {
                self.deliver(&event, &to, &delivers)?;
            }
            self.react_to(&event, decider)?;
        }
        Ok(self.trace)
    }
}

/// Runs the environment in sampled mode with the configured seed.
pub fn run(
    env: &Environment,
    config: &SimConfig,
    initial: &[EventRecord],
) -> Result<Trace, EngineError> {
    let engine = Engine::new(env, config)?;
    let mut decider = Decider::Sampled(ChaCha8Rng::seed_from_u64(config.seed));
    engine.run(initial, &mut decider)
}

/// Runs every resolution of the multivalued choices and returns one trace
/// per decision path, ordered by branch id.
pub fn enumerate_all(
    env: &Environment,
    config: &SimConfig,
    initial: &[EventRecord],
) -> Result<Vec<Trace>, EngineError> {
    let mut pending: Vec<Vec<usize>> = vec![Vec::new()];
    let mut traces = Vec::new();
    while let Some(script) = pending.pop() {
        let engine = Engine::new(env, config)?;
        let mut decider = Decider::Scripted {
            script: script.clone(),
            log: Vec::new(),
        };
        let mut trace = engine.run(initial, &mut decider)?;
        let Decider::Scripted { log, .. } = decider else {
            unreachable!()
        };
        trace.branch_id = Some(branch_id(&log));
        traces.push(trace);
        // Siblings of every default-first choice beyond the script prefix.
        for position in script.len()..log.len() {
            let (_, count) = log[position];
            for alternative in 1..count {
                let mut sibling: Vec<usize> =
                    log[..position].iter().map(|(chosen, _)| *chosen).collect();
                sibling.push(alternative);
                pending.push(sibling);
            }
        }
    }
    traces.sort_by(|a, b| a.branch_id.cmp(&b.branch_id));
    Ok(traces)
}

fn branch_id(log: &[(usize, usize)]) -> String {
    if log.is_empty() {
        "root".to_owned()
    } else {
        log.iter()
            .map(|(chosen, _)| chosen.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Replays a run and reports the first differing event, if any.
pub fn replay(
    env: &Environment,
    config: &SimConfig,
    initial: &[EventRecord],
    recorded: &Trace,
) -> Result<Result<(), Divergence>, EngineError> {
    let fresh = match &recorded.branch_id {
        None => run(env, config, initial)?,
        Some(id) => enumerate_all(env, config, initial)?
            .into_iter()
            .find(|t| t.branch_id.as_deref() == Some(id.as_str()))
            .unwrap_or_default(),
    };
    for (index, expected) in recorded.events.iter().enumerate() {
        match fresh.events.get(index) {
            Some(got) if got == expected => {}
            got => {
                return Ok(Err(Divergence {
                    index,
                    expected: Some(expected.clone()),
                    got: got.cloned(),
                }))
            }
        }
    }
    if fresh.events.len() > recorded.events.len() {
        let index = recorded.events.len();
        return Ok(Err(Divergence {
            index,
            expected: None,
            got: fresh.events.get(index).cloned(),
        }));
    }
    Ok(Ok(()))
}

/// Independent verification of a trace against the environment: message
/// legality and ordering, reaction timing classes, and duration-kind
/// consistency.
pub fn check_trace(env: &Environment, trace: &Trace, sync: &SyncGraph) -> Vec<Witness> {
    let mut witnesses = Vec::new();
    let mut seen = BTreeSet::new();
    for event in &trace.events {
        if !seen.insert(&event.id) {
            witnesses.push(Witness::new(
                "trace-ids",
                [event.id.to_string()],
                "duplicate event id",
            ));
        }
    }

    let find = |id: &EventId| trace.events.iter().find(|e| e.id == *id);

    for event in &trace.events {
        // Duration-kind consistency.
        match env.actions.get(&event.action) {
            None => witnesses.push(Witness::new(
                "trace-actions",
                [event.id.to_string(), event.action.to_string()],
                "event references an action outside the universe",
            )),
            Some(def) => {
                let momentary = event.time.is_momentary();
                match def.duration_kind {
                    crate::action::DurationKind::Singular if !momentary => {
                        witnesses.push(Witness::new(
                            "duration-kind",
                            [event.id.to_string()],
                            "singular action with a non-momentary time set",
                        ))
                    }
                    crate::action::DurationKind::Regular if momentary => {
                        witnesses.push(Witness::new(
                            "duration-kind",
                            [event.id.to_string()],
                            "regular action with a momentary time set",
                        ))
                    }
                    _ => {}
                }
            }
        }

        if let EventKind::Receive { send } = &event.kind {
            let Some(send_event) = find(send) else {
                witnesses.push(Witness::new(
                    "message",
                    [event.id.to_string(), send.to_string()],
                    "receive references a missing send event",
                ));
                continue;
            };
            if !event.depends_on.contains(send) {
                witnesses.push(Witness::new(
                    "message",
                    [send.to_string(), event.id.to_string()],
                    "receive does not causally depend on its send",
                ));
            }
            let from = &send_event.actor;
            let to = &event.actor;
            let legal = can_send(env, from, to).unwrap_or(false)
                && can_receive(env, from, to).unwrap_or(false);
            if !legal {
                witnesses.push(Witness::new(
                    "message",
                    [from.to_string(), to.to_string(), event.id.to_string()],
                    "message edge violates the acquaintance axioms",
                ));
            }
            if sync.comparable_clocks(&send_event.time.clock, &event.time.clock) {
                match sequential(send_event, event, sync) {
                    Ok(true) => {}
                    _ => witnesses.push(Witness::new(
                        "message",
                        [send.to_string(), event.id.to_string()],
                        "receive is not sequential to its send",
                    )),
                }
            }
        }
    }

    match reaction_timing_check(&trace.events, sync) {
        Ok(mut timing) => witnesses.append(&mut timing),
        Err(err) => witnesses.push(Witness::new("reaction-timing", [], err.to_string())),
    }

    for (send, receive) in &trace.messages {
        let matches = trace.events.iter().any(|e| {
            e.id == *receive
                && matches!(&e.kind, EventKind::Receive { send: s } if s == send)
        });
        if !matches {
            witnesses.push(Witness::new(
                "message",
                [send.to_string(), receive.to_string()],
                "message pair does not match a receive event",
            ));
        }
    }
    witnesses
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{Action, CommKind, Direction, DurationKind};
    use crate::model::ActorSpec;
    use crate::temporal::{Clock, ClockOwner};

    fn atomic(id: &str) -> Action {
        Action::atomic(id, Direction::External, DurationKind::Regular)
    }

    /// Two actors on one clock; A's initial send delivers `ping` to B, and
    /// B reacts with `pong`.
    fn two_actor_env() -> Environment {
        let mut env = Environment::new("pair");
        env.clocks.insert(
            "c".into(),
            Clock {
                id: "c".into(),
                owner: ClockOwner::Environment,
            },
        );
        let send = atomic("send_ping").with_comm(CommKind::Send {
            to: "B".into(),
            delivers: "ping".into(),
            requesting: false,
        });
        env.actions.insert("send_ping".into(), send);
        let mut ping = atomic("ping");
        ping.comm = Some(CommKind::Receive);
        env.actions.insert("ping".into(), ping);
        env.actions.insert("pong".into(), atomic("pong"));

        let mut a = ActorSpec::new("A");
        a.act = ["send_ping".into()].into();
        a.facq = vec!["B".into()];
        let mut b = ActorSpec::new("B");
        b.trn = ["ping".into()].into();
        b.act = ["pong".into()].into();
        b.bacq = vec!["A".into()];
        b.react = [("ping".into(), "pong".into())].into();
        env.insert_actor(a);
        env.insert_actor(b);
        env
    }

    fn initial_send() -> Vec<EventRecord> {
        vec![EventRecord {
            id: "E1".into(),
            actor: "A".into(),
            action: "send_ping".into(),
            time: TimeSet::interval("c", Rat::zero(), Rat::one()).unwrap(),
            depends_on: BTreeSet::new(),
            kind: EventKind::Initial,
        }]
    }

    #[test]
    fn single_message_is_causally_ordered() {
        let env = two_actor_env();
        let config = SimConfig::default();
        let trace = run(&env, &config, &initial_send()).unwrap();
        assert_eq!(trace.events.len(), 3);
        assert_eq!(trace.messages.len(), 1);
        let receive = &trace.events[1];
        assert!(matches!(receive.kind, EventKind::Receive { .. }));
        assert!(receive.depends_on.contains(&"E1".into()));
        let reaction = &trace.events[2];
        assert!(matches!(reaction.kind, EventKind::Reaction { .. }));
        assert!(check_trace(&env, &trace, &env.sync_graph()).is_empty());
    }

    #[test]
    fn drop_policy_keeps_the_send_and_skips_the_receive() {
        let mut env = two_actor_env();
        env.actors.get_mut(&"B".into()).unwrap().bacq = vec![];
        let config = SimConfig::default();
        let trace = run(&env, &config, &initial_send()).unwrap();
        assert_eq!(trace.events.len(), 1);
        assert!(trace.messages.is_empty());
    }

    #[test]
    fn error_policy_rejects_the_illegal_edge() {
        let mut env = two_actor_env();
        env.actors.get_mut(&"B".into()).unwrap().bacq = vec![];
        let config = SimConfig {
            violation_policy: EnginePolicy::Error,
            ..SimConfig::default()
        };
        assert!(matches!(
            run(&env, &config, &initial_send()),
            Err(EngineError::AcquaintanceViolation { .. })
        ));
    }

    #[test]
    fn identical_inputs_replay_identically() {
        let env = two_actor_env();
        let config = SimConfig {
            seed: 7,
            ..SimConfig::default()
        };
        let trace = run(&env, &config, &initial_send()).unwrap();
        let verdict = replay(&env, &config, &initial_send(), &trace).unwrap();
        assert!(verdict.is_ok());
    }

    #[test]
    fn quiescence_with_nothing_to_do() {
        let mut env = two_actor_env();
        // Mark every relation tentative (there are none) and give no
        // initial events.
        env.actors.values_mut().for_each(|a| a.rel.clear());
        let trace = run(&env, &SimConfig::default(), &[]).unwrap();
        assert!(trace.events.is_empty());
    }

    fn nondet_env() -> Environment {
        let mut env = two_actor_env();
        env.actions.insert("nod".into(), atomic("nod"));
        let b = env.actors.get_mut(&"B".into()).unwrap();
        b.act.insert("nod".into());
        b.react.insert(("ping".into(), "nod".into()));
        env
    }

    #[test]
    fn enumerate_all_branches_on_the_binary_choice() {
        let env = nondet_env();
        let config = SimConfig {
            mode: SimMode::EnumerateAll,
            ..SimConfig::default()
        };
        let traces = enumerate_all(&env, &config, &initial_send()).unwrap();
        assert_eq!(traces.len(), 2);
        let ids: Vec<_> = traces.iter().map(|t| t.branch_id.clone().unwrap()).collect();
        assert_eq!(ids, vec!["0".to_string(), "1".to_string()]);
        let chosen: BTreeSet<_> = traces
            .iter()
            .map(|t| t.events.last().unwrap().action.clone())
            .collect();
        assert_eq!(chosen, ["nod".into(), "pong".into()].into());
    }

    #[test]
    fn different_seeds_diverge_at_the_choice_point() {
        let env = nondet_env();
        let mut seeds = BTreeSet::new();
        for seed in 0..16 {
            let config = SimConfig {
                seed,
                ..SimConfig::default()
            };
            let trace = run(&env, &config, &initial_send()).unwrap();
            seeds.insert(trace.events.last().unwrap().action.clone());
        }
        assert_eq!(seeds.len(), 2);
    }

    #[test]
    fn proactions_fire_for_actualized_relations_only() {
        let mut env = Environment::new("pro");
        env.clocks.insert(
            "c".into(),
            Clock {
                id: "c".into(),
                owner: ClockOwner::Environment,
            },
        );
        env.actions.insert("tick".into(), atomic("tick"));
        env.relp = ["warm".into(), "cold".into()].into();
        let mut a = ActorSpec::new("A");
        a.rel = vec![
            crate::model::RelationItem {
                id: "warm".into(),
                kind: crate::model::RelationKind::Property,
                endpoints: vec!["A".into()],
            },
            crate::model::RelationItem {
                id: "cold".into(),
                kind: crate::model::RelationKind::Property,
                endpoints: vec!["A".into()],
            },
        ];
        a.act = ["tick".into()].into();
        a.proact = [
            ("warm".into(), "tick".into()),
            ("cold".into(), "tick".into()),
        ]
        .into();
        a.marks.insert(
            "cold".to_owned(),
            crate::model::ElementMark {
                actualized: false,
                acknowledged: true,
            },
        );
        env.insert_actor(a);
        let trace = run(&env, &SimConfig::default(), &[]).unwrap();
        assert_eq!(trace.events.len(), 1);
        assert!(
            matches!(&trace.events[0].kind, EventKind::Proaction { relation } if relation == &"warm".into())
        );
    }

    #[test]
    fn check_trace_flags_a_corrupted_reaction() {
        let env = two_actor_env();
        let config = SimConfig::default();
        let mut trace = run(&env, &config, &initial_send()).unwrap();
        // Pull the reserved reaction before its trigger ends.
        let reaction = trace.events.last_mut().unwrap();
        reaction.time = TimeSet::interval("c", Rat::zero(), Rat::one()).unwrap();
        let witnesses = check_trace(&env, &trace, &env.sync_graph());
        assert!(witnesses.iter().any(|w| w.check == "reaction-timing"));
    }
}
