//! Local clocks, multi-interval time sets and temporal relations.
//!
//! There is no global time: every time set lives on a named local clock,
//! and two clocks are comparable only when a path of affine synchronization
//! maps connects them. Comparability is connectivity in the synchronization
//! graph and dependence is reachability in the causal graph, so the
//! transitivity of both relations holds by construction.
//!
//! All endpoints are exact rationals; equality relations (strictly
//! parallel, strictly sequential) are decided without tolerances.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ids::{ActionId, ActorName, ClockId, EventId, RelationId};
use crate::rational::Rat;
use crate::witness::Witness;

/// Who a clock belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClockOwner {
    Actor(ActorName),
    Environment,
}

/// A local clock.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clock {
    pub id: ClockId,
    pub owner: ClockOwner,
}

/// An affine synchronization map between two clocks: `t ↦ rate·t + offset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClockMap {
    pub from: ClockId,
    pub to: ClockId,
    pub rate: Rat,
    pub offset: Rat,
}

/// A composed affine transformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub rate: Rat,
    pub offset: Rat,
}

impl Affine {
    pub fn identity() -> Self {
        Affine {
            rate: Rat::one(),
            offset: Rat::zero(),
        }
    }

    pub fn apply(&self, t: &Rat) -> Rat {
        &(&self.rate * t) + &self.offset
    }

    /// `self` followed by `then`.
    pub fn and_then(&self, then: &Affine) -> Affine {
        Affine {
            rate: &then.rate * &self.rate,
            offset: then.apply(&self.offset),
        }
    }

    pub fn inverse(&self) -> Affine {
        let rate = self.rate.recip();
        Affine {
            offset: -&(&rate * &self.offset),
            rate,
        }
    }
}

/// The synchronization graph over local clocks. Two clocks are comparable
/// when they lie in the same connected component; the exact affine map
/// between comparable clocks is composed along a spanning tree.
#[derive(Clone, Debug)]
pub struct SyncGraph {
    component: BTreeMap<ClockId, usize>,
    /// Map from each clock to its component representative.
    to_root: BTreeMap<ClockId, Affine>,
    edges: Vec<ClockMap>,
}

impl SyncGraph {
    pub fn new(clocks: impl IntoIterator<Item = ClockId>, maps: &[ClockMap]) -> Self {
        let mut nodes: BTreeSet<ClockId> = clocks.into_iter().collect();
        for map in maps {
            nodes.insert(map.from.clone());
            nodes.insert(map.to.clone());
        }
        let mut adjacency: BTreeMap<&ClockId, Vec<(&ClockId, Affine)>> = BTreeMap::new();
        for map in maps {
            if !map.rate.is_positive() {
                continue;
            }
            let fwd = Affine {
                rate: map.rate.clone(),
                offset: map.offset.clone(),
            };
            adjacency
                .entry(&map.from)
                .or_default()
                .push((&map.to, fwd.inverse()));
            adjacency.entry(&map.to).or_default().push((&map.from, fwd));
        }

        let mut component = BTreeMap::new();
        let mut to_root = BTreeMap::new();
        let mut next_component = 0usize;
        for root in &nodes {
            if component.contains_key(root) {
                continue;
            }
            let idx = next_component;
            next_component += 1;
            component.insert(root.clone(), idx);
            to_root.insert(root.clone(), Affine::identity());
            let mut queue = VecDeque::from([root]);
            while let Some(current) = queue.pop_front() {
                let current_map = to_root[current].clone();
                for (neighbor, into_current) in adjacency.get(current).into_iter().flatten() {
                    if component.contains_key(*neighbor) {
                        continue;
                    }
                    component.insert((*neighbor).clone(), idx);
                    to_root.insert((*neighbor).clone(), into_current.and_then(&current_map));
                    queue.push_back(neighbor);
                }
            }
        }
        SyncGraph {
            component,
            to_root,
            edges: maps.to_vec(),
        }
    }

    pub fn comparable_clocks(&self, a: &ClockId, b: &ClockId) -> bool {
        match (self.component.get(a), self.component.get(b)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }

    /// The exact affine map carrying times on `from` to times on `to`.
    pub fn map_between(&self, from: &ClockId, to: &ClockId) -> Option<Affine> {
        if !self.comparable_clocks(from, to) {
            return None;
        }
        let forward = self.to_root.get(from)?;
        let backward = self.to_root.get(to)?.inverse();
        Some(forward.and_then(&backward))
    }

    /// Every synchronization edge must agree with the spanning-tree maps;
    /// a disagreeing edge closes an inconsistent cycle.
    pub fn check_cycle_consistency(&self) -> Vec<Witness> {
        let mut witnesses = Vec::new();
        for map in &self.edges {
            if !map.rate.is_positive() {
                witnesses.push(Witness::new(
                    "sync-consistency",
                    [map.from.to_string(), map.to.to_string()],
                    "clock map rate is not positive",
                ));
                continue;
            }
            let edge = Affine {
                rate: map.rate.clone(),
                offset: map.offset.clone(),
            };
            let (Some(from_root), Some(to_root)) =
                (self.to_root.get(&map.from), self.to_root.get(&map.to))
            else {
                continue;
            };
            // Going from→to via the edge and then to the root must equal
            // going from→root directly.
            let via_edge = edge.and_then(to_root);
            if via_edge != *from_root {
                witnesses.push(Witness::new(
                    "sync-consistency",
                    [map.from.to_string(), map.to.to_string()],
                    "synchronization cycle through this map is not the identity",
                ));
            }
        }
        witnesses
    }
}

/// A finite union of disjoint closed rational intervals on one clock.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TimeSet {
    pub clock: ClockId,
    pieces: Vec<(Rat, Rat)>,
}

impl<'de> Deserialize<'de> for TimeSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            clock: ClockId,
            pieces: Vec<(Rat, Rat)>,
        }
        let raw = Raw::deserialize(deserializer)?;
        TimeSet::new(raw.clock, raw.pieces).map_err(serde::de::Error::custom)
    }
}

impl TimeSet {
    /// Builds a normalized time set: pieces sorted ascending, overlapping
    /// or touching pieces merged.
    pub fn new(clock: ClockId, mut pieces: Vec<(Rat, Rat)>) -> Result<Self, TemporalError> {
        for (lo, hi) in &pieces {
            if lo > hi {
                return Err(TemporalError::InvertedInterval {
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                });
            }
        }
        pieces.sort();
        let mut merged: Vec<(Rat, Rat)> = Vec::with_capacity(pieces.len());
        for (lo, hi) in pieces {
            match merged.last_mut() {
                Some((_, prev_hi)) if lo <= *prev_hi => {
                    if hi > *prev_hi {
                        *prev_hi = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        Ok(TimeSet {
            clock,
            pieces: merged,
        })
    }

    pub fn moment(clock: impl Into<ClockId>, t: Rat) -> Self {
        TimeSet {
            clock: clock.into(),
            pieces: vec![(t.clone(), t)],
        }
    }

    pub fn interval(clock: impl Into<ClockId>, lo: Rat, hi: Rat) -> Result<Self, TemporalError> {
        TimeSet::new(clock.into(), vec![(lo, hi)])
    }

    pub fn pieces(&self) -> &[(Rat, Rat)] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// A single degenerate piece.
    pub fn is_momentary(&self) -> bool {
        matches!(self.pieces.as_slice(), [(lo, hi)] if lo == hi)
    }

    /// Exactly one piece.
    pub fn is_interval(&self) -> bool {
        self.pieces.len() == 1
    }

    /// Least point of the set.
    pub fn start(&self) -> Option<&Rat> {
        self.pieces.first().map(|(lo, _)| lo)
    }

    /// Greatest point of the set.
    pub fn end(&self) -> Option<&Rat> {
        self.pieces.last().map(|(_, hi)| hi)
    }

    /// Image under an affine map onto another clock. Positive rates
    /// preserve interval order, so normalization is preserved.
    pub fn mapped(&self, map: &Affine, target: ClockId) -> TimeSet {
        TimeSet {
            clock: target,
            pieces: self
                .pieces
                .iter()
                .map(|(lo, hi)| (map.apply(lo), map.apply(hi)))
                .collect(),
        }
    }

    /// Intersection of two sets on the same clock.
    pub fn intersect(&self, other: &TimeSet) -> TimeSet {
        debug_assert_eq!(self.clock, other.clock);
        let mut out = Vec::new();
        for (a_lo, a_hi) in &self.pieces {
            for (b_lo, b_hi) in &other.pieces {
                let lo = if a_lo >= b_lo { a_lo } else { b_lo };
                let hi = if a_hi <= b_hi { a_hi } else { b_hi };
                if lo <= hi {
                    out.push((lo.clone(), hi.clone()));
                }
            }
        }
        TimeSet {
            clock: self.clock.clone(),
            pieces: out,
        }
    }
}

impl fmt::Display for TimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return f.write_str("empty");
        }
        for (i, (lo, hi)) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "[{lo},{hi}]")?;
        }
        Ok(())
    }
}

/// Timing class of a reaction or proaction, as recorded in traces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimingClass {
    /// Starts immediately with the triggering action.
    Sharp,
    /// Starts when the triggering action ends.
    Reserved,
    /// Starts some positive time after the triggering action ends.
    Delayed,
}

impl fmt::Display for TimingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TimingClass::Sharp => "sharp",
            TimingClass::Reserved => "reserved",
            TimingClass::Delayed => "delayed",
        })
    }
}

/// What produced an event.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    /// Seeded by the specification document.
    Initial,
    /// Fired by the actualization of a relation.
    Proaction { relation: RelationId },
    /// Receipt of a messenger created by a send event.
    Receive { send: EventId },
    /// Response to a received transaction.
    Reaction { trigger: EventId, timing: TimingClass },
}

/// An occurrence of an action by an actor, with a time set on a local
/// clock and causal coupling edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventRecord {
    pub id: EventId,
    pub actor: ActorName,
    pub action: ActionId,
    pub time: TimeSet,
    #[serde(default)]
    pub depends_on: BTreeSet<EventId>,
    #[serde(default = "initial_kind")]
    pub kind: EventKind,
}

fn initial_kind() -> EventKind {
    EventKind::Initial
}

/// Errors raised by temporal queries.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TemporalError {
    #[error("interval endpoints inverted: [{lo}, {hi}]")]
    InvertedInterval { lo: String, hi: String },
    #[error("clocks {from} and {to} are not comparable")]
    Incomparable { from: ClockId, to: ClockId },
    #[error("unknown event {0}")]
    UnknownEvent(EventId),
    #[error("event {0} has an empty time set")]
    EmptyTimeSet(EventId),
    #[error("event {event} references missing trigger {trigger}")]
    DanglingReference { event: EventId, trigger: EventId },
}

/// Maps a time set onto a target clock through the synchronization graph.
pub fn map_to_clock(
    ts: &TimeSet,
    target: &ClockId,
    sync: &SyncGraph,
) -> Result<TimeSet, TemporalError> {
    if ts.clock == *target {
        return Ok(ts.clone());
    }
    let map = sync
        .map_between(&ts.clock, target)
        .ok_or(TemporalError::Incomparable {
            from: ts.clock.clone(),
            to: target.clone(),
        })?;
    Ok(ts.mapped(&map, target.clone()))
}

/// Temporal comparability: the events' clocks lie in one synchronization
/// component.
pub fn comparable(e1: &EventRecord, e2: &EventRecord, sync: &SyncGraph) -> bool {
    sync.comparable_clocks(&e1.time.clock, &e2.time.clock)
}

/// Undirected connectivity over the causal coupling edges of a collection
/// of events. Two events are dependent when connected, independent
/// otherwise.
pub fn independent(
    events: &[EventRecord],
    a: &EventId,
    b: &EventId,
) -> Result<bool, TemporalError> {
    let ids: BTreeSet<&EventId> = events.iter().map(|e| &e.id).collect();
    if !ids.contains(a) {
        return Err(TemporalError::UnknownEvent(a.clone()));
    }
    if !ids.contains(b) {
        return Err(TemporalError::UnknownEvent(b.clone()));
    }
    if a == b {
        return Ok(false);
    }
    let mut adjacency: BTreeMap<&EventId, BTreeSet<&EventId>> = BTreeMap::new();
    for event in events {
        for dep in &event.depends_on {
            adjacency.entry(&event.id).or_default().insert(dep);
            adjacency.entry(dep).or_default().insert(&event.id);
        }
    }
    let mut seen = BTreeSet::from([a]);
    let mut queue = VecDeque::from([a]);
    while let Some(current) = queue.pop_front() {
        if current == b {
            return Ok(false);
        }
        for next in adjacency.get(current).into_iter().flatten() {
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(true)
}

/// Concurrency: temporal independence and/or temporal incomparability.
pub fn concurrent(
    events: &[EventRecord],
    a: &EventId,
    b: &EventId,
    sync: &SyncGraph,
) -> Result<bool, TemporalError> {
    let ea = find_event(events, a)?;
    let eb = find_event(events, b)?;
    Ok(independent(events, a, b)? || !comparable(ea, eb, sync))
}

pub fn find_event<'a>(
    events: &'a [EventRecord],
    id: &EventId,
) -> Result<&'a EventRecord, TemporalError> {
    events
        .iter()
        .find(|e| e.id == *id)
        .ok_or_else(|| TemporalError::UnknownEvent(id.clone()))
}

/// Parallelism: the time sets of all given events, mapped to a common
/// clock, have a common point. Momentary events are parallel exactly when
/// their moments coincide.
pub fn parallel(events: &[&EventRecord], sync: &SyncGraph) -> Result<bool, TemporalError> {
    let Some(first) = events.first() else {
        return Ok(true);
    };
    let target = &first.time.clock;
    let mut intersection = first.time.clone();
    for event in &events[1..] {
        let mapped = map_to_clock(&event.time, target, sync)?;
        intersection = intersection.intersect(&mapped);
        if intersection.is_empty() {
            return Ok(false);
        }
    }
    Ok(!intersection.is_empty())
}

/// Strict parallelism: the mapped time sets are equal.
pub fn strictly_parallel(
    e1: &EventRecord,
    e2: &EventRecord,
    sync: &SyncGraph,
) -> Result<bool, TemporalError> {
    let mapped = map_to_clock(&e2.time, &e1.time.clock, sync)?;
    Ok(e1.time == mapped)
}

/// Sequentiality: `e2` starts at or after the end of `e1`.
pub fn sequential(
    e1: &EventRecord,
    e2: &EventRecord,
    sync: &SyncGraph,
) -> Result<bool, TemporalError> {
    let mapped = map_to_clock(&e2.time, &e1.time.clock, sync)?;
    let end1 = e1
        .time
        .end()
        .ok_or_else(|| TemporalError::EmptyTimeSet(e1.id.clone()))?;
    let start2 = mapped
        .start()
        .ok_or_else(|| TemporalError::EmptyTimeSet(e2.id.clone()))?;
    Ok(start2 >= end1)
}

/// Strict sequentiality: `e2` starts exactly at the moment `e1` ends.
pub fn strictly_sequential(
    e1: &EventRecord,
    e2: &EventRecord,
    sync: &SyncGraph,
) -> Result<bool, TemporalError> {
    let mapped = map_to_clock(&e2.time, &e1.time.clock, sync)?;
    let end1 = e1
        .time
        .end()
        .ok_or_else(|| TemporalError::EmptyTimeSet(e1.id.clone()))?;
    let start2 = mapped
        .start()
        .ok_or_else(|| TemporalError::EmptyTimeSet(e2.id.clone()))?;
    Ok(start2 == end1)
}

/// Checks every tagged reaction in a trace against its timing class:
/// sharp reactions start with their trigger, reserved reactions start when
/// the trigger ends, delayed reactions start strictly after.
pub fn reaction_timing_check(
    events: &[EventRecord],
    sync: &SyncGraph,
) -> Result<Vec<Witness>, TemporalError> {
    let mut witnesses = Vec::new();
    for event in events {
        let EventKind::Reaction { trigger, timing } = &event.kind else {
            continue;
        };
        let trigger_event =
            events
                .iter()
                .find(|e| e.id == *trigger)
                .ok_or_else(|| TemporalError::DanglingReference {
                    event: event.id.clone(),
                    trigger: trigger.clone(),
                })?;
        let Ok(mapped) = map_to_clock(&event.time, &trigger_event.time.clock, sync) else {
            witnesses.push(Witness::new(
                "reaction-timing",
                [trigger_event.id.to_string(), event.id.to_string()],
                "reaction clock is not comparable with its trigger's clock",
            ));
            continue;
        };
        let (Some(t_start), Some(t_end), Some(r_start)) =
            (trigger_event.time.start(), trigger_event.time.end(), mapped.start())
        else {
            witnesses.push(Witness::new(
                "reaction-timing",
                [trigger_event.id.to_string(), event.id.to_string()],
                "empty time set",
            ));
            continue;
        };
        let ok = match timing {
            TimingClass::Sharp => r_start == t_start,
            TimingClass::Reserved => r_start == t_end,
            TimingClass::Delayed => r_start > t_end,
        };
        if !ok {
            witnesses.push(Witness::new(
                "reaction-timing",
                [trigger_event.id.to_string(), event.id.to_string()],
                format!(
                    "{timing} reaction starts at {r_start}, trigger spans [{t_start}, {t_end}]"
                ),
            ));
        }
    }
    Ok(witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::integer(n)
    }

    fn ev(id: &str, clock: &str, pieces: &[(i64, i64)]) -> EventRecord {
        EventRecord {
            id: id.into(),
            actor: "A".into(),
            action: "a".into(),
            time: TimeSet::new(
                clock.into(),
                pieces.iter().map(|(lo, hi)| (r(*lo), r(*hi))).collect(),
            )
            .unwrap(),
            depends_on: BTreeSet::new(),
            kind: EventKind::Initial,
        }
    }

    fn one_clock() -> SyncGraph {
        SyncGraph::new([ClockId::new("c")], &[])
    }

    #[test]
    fn normalization_merges_touching_pieces() {
        let ts = TimeSet::new("c".into(), vec![(r(4), r(7)), (r(0), r(2)), (r(2), r(3))]).unwrap();
        assert_eq!(ts.pieces(), &[(r(0), r(3)), (r(4), r(7))]);
        let again = TimeSet::new("c".into(), ts.pieces().to_vec()).unwrap();
        assert_eq!(again, ts);
    }

    #[test]
    fn inverted_intervals_are_rejected() {
        assert!(TimeSet::new("c".into(), vec![(r(3), r(1))]).is_err());
    }

    #[test]
    fn affine_image_is_exact() {
        let ts = TimeSet::interval("c1", r(0), r(3)).unwrap();
        let sync = SyncGraph::new(
            [ClockId::new("c1"), ClockId::new("c2")],
            &[ClockMap {
                from: "c1".into(),
                to: "c2".into(),
                rate: r(2),
                offset: r(1),
            }],
        );
        let mapped = map_to_clock(&ts, &"c2".into(), &sync).unwrap();
        assert_eq!(mapped.pieces(), &[(r(1), r(7))]);
        let back = map_to_clock(&mapped, &"c1".into(), &sync).unwrap();
        assert_eq!(back, ts);
    }

    #[test]
    fn three_clock_cycle_round_trips() {
        let maps = vec![
            ClockMap {
                from: "c1".into(),
                to: "c2".into(),
                rate: r(2),
                offset: r(1),
            },
            ClockMap {
                from: "c2".into(),
                to: "c3".into(),
                rate: Rat::new(1, 2),
                offset: r(0),
            },
            // Consistent closing edge: c1→c3 must equal the composition.
            ClockMap {
                from: "c1".into(),
                to: "c3".into(),
                rate: r(1),
                offset: Rat::new(1, 2),
            },
        ];
        let sync = SyncGraph::new(["c1".into(), "c2".into(), "c3".into()], &maps);
        assert!(sync.check_cycle_consistency().is_empty());
        let ts = TimeSet::new("c1".into(), vec![(r(0), r(3)), (r(5), r(5))]).unwrap();
        let through = map_to_clock(
            &map_to_clock(&ts, &"c3".into(), &sync).unwrap(),
            &"c1".into(),
            &sync,
        )
        .unwrap();
        assert_eq!(through, ts);
    }

    #[test]
    fn inconsistent_cycle_is_reported() {
        let maps = vec![
            ClockMap {
                from: "c1".into(),
                to: "c2".into(),
                rate: r(1),
                offset: r(1),
            },
            ClockMap {
                from: "c2".into(),
                to: "c1".into(),
                rate: r(1),
                offset: r(1),
            },
        ];
        let sync = SyncGraph::new(["c1".into(), "c2".into()], &maps);
        assert!(!sync.check_cycle_consistency().is_empty());
    }

    #[test]
    fn comparability_is_component_connectivity() {
        let sync = SyncGraph::new(
            ["c1".into(), "c2".into(), "c3".into(), "d1".into()],
            &[
                ClockMap {
                    from: "c1".into(),
                    to: "c2".into(),
                    rate: r(1),
                    offset: r(0),
                },
                ClockMap {
                    from: "c2".into(),
                    to: "c3".into(),
                    rate: r(1),
                    offset: r(0),
                },
            ],
        );
        let e1 = ev("E1", "c1", &[(0, 1)]);
        let e3 = ev("E3", "c3", &[(0, 1)]);
        let d = ev("D", "d1", &[(0, 1)]);
        assert!(comparable(&e1, &e3, &sync));
        assert!(!comparable(&e1, &d, &sync));
        assert!(concurrent(&[e1.clone(), d.clone()], &"E1".into(), &"D".into(), &sync).unwrap());
    }

    #[test]
    fn dependence_is_undirected_reachability() {
        let mut e1 = ev("E1", "c", &[(0, 1)]);
        let mut e2 = ev("E2", "c", &[(2, 3)]);
        let e3 = ev("E3", "c", &[(4, 5)]);
        e2.depends_on = ["E1".into()].into();
        e1.depends_on = BTreeSet::new();
        let events = vec![e1, e2, e3];
        assert!(!independent(&events, &"E1".into(), &"E2".into()).unwrap());
        assert!(independent(&events, &"E1".into(), &"E3".into()).unwrap());

        // Three-event chain: dependence is transitive.
        let mut f1 = ev("F1", "c", &[(0, 1)]);
        let f2 = ev("F2", "c", &[(0, 1)]);
        let mut f3 = ev("F3", "c", &[(0, 1)]);
        f1.depends_on = ["F2".into()].into();
        f3.depends_on = ["F2".into()].into();
        let chain = vec![f1, f2, f3];
        assert!(!independent(&chain, &"F1".into(), &"F3".into()).unwrap());
    }

    #[test]
    fn interval_counterexample_breaks_parallel_transitivity() {
        let sync = one_clock();
        let e1 = ev("E1", "c", &[(0, 3)]);
        let e2 = ev("E2", "c", &[(2, 5)]);
        let e3 = ev("E3", "c", &[(4, 7)]);
        assert!(parallel(&[&e1, &e2], &sync).unwrap());
        assert!(parallel(&[&e2, &e3], &sync).unwrap());
        assert!(!parallel(&[&e1, &e3], &sync).unwrap());
    }

    #[test]
    fn split_interval_breaks_triple_parallelism() {
        let sync = one_clock();
        let e1 = ev("E1", "c", &[(0, 3)]);
        let e2 = ev("E2", "c", &[(2, 5)]);
        let e3 = ev("E3", "c", &[(0, 1), (4, 7)]);
        assert!(parallel(&[&e1, &e2], &sync).unwrap());
        assert!(parallel(&[&e2, &e3], &sync).unwrap());
        assert!(parallel(&[&e1, &e3], &sync).unwrap());
        assert!(!parallel(&[&e1, &e2, &e3], &sync).unwrap());
    }

    #[test]
    fn momentary_parallelism_is_coincidence() {
        let sync = one_clock();
        let e1 = ev("E1", "c", &[(2, 2)]);
        let e2 = ev("E2", "c", &[(2, 2)]);
        let e3 = ev("E3", "c", &[(3, 3)]);
        assert!(parallel(&[&e1, &e2], &sync).unwrap());
        assert!(!parallel(&[&e1, &e3], &sync).unwrap());
    }

    #[test]
    fn strict_parallelism_is_set_equality() {
        let sync = one_clock();
        let e1 = ev("E1", "c", &[(0, 3)]);
        let e2 = ev("E2", "c", &[(0, 3)]);
        let e3 = ev("E3", "c", &[(0, 3), (5, 5)]);
        assert!(strictly_parallel(&e1, &e2, &sync).unwrap());
        assert!(!strictly_parallel(&e1, &e3, &sync).unwrap());
    }

    #[test]
    fn sequential_admits_the_shared_boundary() {
        let sync = one_clock();
        let e1 = ev("E1", "c", &[(0, 3)]);
        let e2 = ev("E2", "c", &[(4, 7)]);
        let e3 = ev("E3", "c", &[(3, 5)]);
        assert!(sequential(&e1, &e2, &sync).unwrap());
        assert!(sequential(&e1, &e3, &sync).unwrap());
        assert!(strictly_sequential(&e1, &e3, &sync).unwrap());
        assert!(!strictly_sequential(&e1, &e2, &sync).unwrap());
    }

    #[test]
    fn strict_subsequence_fails_across_positive_duration() {
        let sync = one_clock();
        let e3 = ev("E3", "c", &[(0, 2)]);
        let e2 = ev("E2", "c", &[(2, 4)]);
        let e1 = ev("E1", "c", &[(4, 6)]);
        assert!(strictly_sequential(&e3, &e2, &sync).unwrap());
        assert!(strictly_sequential(&e2, &e1, &sync).unwrap());
        assert!(!strictly_sequential(&e3, &e1, &sync).unwrap());
    }

    #[test]
    fn reaction_timing_classes_are_checked() {
        let sync = one_clock();
        let action = ev("T", "c", &[(0, 4)]);
        let mut sharp = ev("R1", "c", &[(0, 2)]);
        sharp.kind = EventKind::Reaction {
            trigger: "T".into(),
            timing: TimingClass::Sharp,
        };
        let mut reserved = ev("R2", "c", &[(4, 6)]);
        reserved.kind = EventKind::Reaction {
            trigger: "T".into(),
            timing: TimingClass::Reserved,
        };
        let mut delayed_bad = ev("R3", "c", &[(4, 6)]);
        delayed_bad.kind = EventKind::Reaction {
            trigger: "T".into(),
            timing: TimingClass::Delayed,
        };
        let events = vec![action, sharp, reserved, delayed_bad];
        let witnesses = reaction_timing_check(&events, &sync).unwrap();
        assert_eq!(witnesses.len(), 1);
        assert_eq!(witnesses[0].subjects, vec!["T".to_string(), "R3".to_string()]);
    }

    #[test]
    fn dangling_trigger_is_a_reference_error() {
        let sync = one_clock();
        let mut reaction = ev("R", "c", &[(0, 1)]);
        reaction.kind = EventKind::Reaction {
            trigger: "missing".into(),
            timing: TimingClass::Sharp,
        };
        assert!(matches!(
            reaction_timing_check(&[reaction], &sync),
            Err(TemporalError::DanglingReference { .. })
        ));
    }
}
