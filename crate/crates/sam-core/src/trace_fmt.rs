//! Line-oriented trace files.
//!
//! One record per line, tab-separated, UTF-8, LF endings — byte-exact for
//! replay comparison. Event lines carry
//! `E  event-id  actor  action  clock  time-set  kind  depends-on`;
//! message lines carry `M  send-id  receive-id`. Time sets print as
//! `[lo,hi]` pieces joined by `+`, with rationals reduced and integer
//! denominators omitted. An enumerate-all file holds one `#branch` block
//! per decision path.

use std::fmt::Write as _;

use crate::engine::Trace;
use crate::ids::{ClockId, EventId};
use crate::rational::Rat;
use crate::temporal::{EventKind, EventRecord, TimeSet, TimingClass};

pub const HEADER: &str = "#sam-trace 1";

/// Errors raised while reading a trace file.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TraceFormatError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing `{HEADER}` header")]
    MissingHeader,
    #[error("expected exactly one trace, found {0}")]
    NotSingular(usize),
}

fn fmt_time_set(ts: &TimeSet) -> String {
    let mut out = String::new();
    for (i, (lo, hi)) in ts.pieces().iter().enumerate() {
        if i > 0 {
            out.push('+');
        }
        let _ = write!(out, "[{lo},{hi}]");
    }
    out
}

fn fmt_kind(kind: &EventKind) -> String {
    match kind {
        EventKind::Initial => "initial".to_owned(),
        EventKind::Proaction { relation } => format!("proaction:{relation}"),
        EventKind::Receive { send } => format!("receive:{send}"),
        EventKind::Reaction { trigger, timing } => format!("reaction:{timing}:{trigger}"),
    }
}

fn fmt_event(event: &EventRecord) -> String {
    let deps = if event.depends_on.is_empty() {
        "-".to_owned()
    } else {
        event
            .depends_on
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        "E\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        event.id,
        event.actor,
        event.action,
        event.time.clock,
        fmt_time_set(&event.time),
        fmt_kind(&event.kind),
        deps
    )
}

fn write_block(out: &mut String, trace: &Trace) {
    if let Some(branch) = &trace.branch_id {
        let _ = writeln!(out, "#branch {branch}");
    }
    for event in &trace.events {
        let _ = writeln!(out, "{}", fmt_event(event));
    }
    for (send, receive) in &trace.messages {
        let _ = writeln!(out, "M\t{send}\t{receive}");
    }
}

/// Serializes a single trace.
pub fn write_trace(trace: &Trace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    write_block(&mut out, trace);
    out
}

/// Serializes a set of branch traces as one file.
pub fn write_traces(traces: &[Trace]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    for trace in traces {
        write_block(&mut out, trace);
    }
    out
}

fn parse_time_set(text: &str, clock: &ClockId, line: usize) -> Result<TimeSet, TraceFormatError> {
    let malformed = |message: String| TraceFormatError::Malformed { line, message };
    let mut pieces = Vec::new();
    for piece in text.split('+') {
        let inner = piece
            .strip_prefix('[')
            .and_then(|p| p.strip_suffix(']'))
            .ok_or_else(|| malformed(format!("bad interval {piece:?}")))?;
        let (lo, hi) = inner
            .split_once(',')
            .ok_or_else(|| malformed(format!("bad interval {piece:?}")))?;
        let lo: Rat = lo
            .parse()
            .map_err(|e| malformed(format!("bad rational: {e}")))?;
        let hi: Rat = hi
            .parse()
            .map_err(|e| malformed(format!("bad rational: {e}")))?;
        pieces.push((lo, hi));
    }
    TimeSet::new(clock.clone(), pieces).map_err(|e| malformed(e.to_string()))
}

fn parse_kind(text: &str, line: usize) -> Result<EventKind, TraceFormatError> {
    let malformed = |message: String| TraceFormatError::Malformed { line, message };
    if text == "initial" {
        return Ok(EventKind::Initial);
    }
    if let Some(relation) = text.strip_prefix("proaction:") {
        return Ok(EventKind::Proaction {
            relation: relation.into(),
        });
    }
    if let Some(send) = text.strip_prefix("receive:") {
        return Ok(EventKind::Receive { send: send.into() });
    }
    if let Some(rest) = text.strip_prefix("reaction:") {
        let (timing, trigger) = rest
            .split_once(':')
            .ok_or_else(|| malformed(format!("bad reaction kind {text:?}")))?;
        let timing = match timing {
            "sharp" => TimingClass::Sharp,
            "reserved" => TimingClass::Reserved,
            "delayed" => TimingClass::Delayed,
            other => return Err(malformed(format!("unknown timing class {other:?}"))),
        };
        return Ok(EventKind::Reaction {
            trigger: trigger.into(),
            timing,
        });
    }
    Err(malformed(format!("unknown event kind {text:?}")))
}

fn parse_event(fields: &[&str], line: usize) -> Result<EventRecord, TraceFormatError> {
    let malformed = |message: &str| TraceFormatError::Malformed {
        line,
        message: message.to_owned(),
    };
    let [id, actor, action, clock, time, kind, deps] = fields else {
        return Err(malformed("event line needs 7 fields"));
    };
    let clock: ClockId = (*clock).into();
    let depends_on = if *deps == "-" {
        Default::default()
    } else {
        deps.split(',').map(EventId::from).collect()
    };
    Ok(EventRecord {
        id: (*id).into(),
        actor: (*actor).into(),
        action: (*action).into(),
        time: parse_time_set(time, &clock, line)?,
        depends_on,
        kind: parse_kind(kind, line)?,
    })
}

/// Reads every trace block in a file.
pub fn read_traces(text: &str) -> Result<Vec<Trace>, TraceFormatError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == HEADER => {}
        _ => return Err(TraceFormatError::MissingHeader),
    }
    let mut traces = Vec::new();
    let mut current: Option<Trace> = None;
    for (index, raw) in lines {
        let line = index + 1;
        if raw.is_empty() {
            continue;
        }
        if let Some(branch) = raw.strip_prefix("#branch ") {
            if let Some(done) = current.take() {
                traces.push(done);
            }
            current = Some(Trace {
                branch_id: Some(branch.to_owned()),
                ..Trace::default()
            });
            continue;
        }
        let trace = current.get_or_insert_with(Trace::default);
        let fields: Vec<&str> = raw.split('\t').collect();
        match fields.split_first() {
            Some((&"E", rest)) => trace.events.push(parse_event(rest, line)?),
            Some((&"M", [send, receive])) => trace
                .messages
                .push(((*send).into(), (*receive).into())),
            _ => {
                return Err(TraceFormatError::Malformed {
                    line,
                    message: format!("unrecognized record {raw:?}"),
                })
            }
        }
    }
    if let Some(done) = current.take() {
        traces.push(done);
    }
    Ok(traces)
}

/// Reads a file holding exactly one trace.
pub fn read_trace(text: &str) -> Result<Trace, TraceFormatError> {
    let mut traces = read_traces(text)?;
    match traces.len() {
        1 => Ok(traces.remove(0)),
        n => Err(TraceFormatError::NotSingular(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn sample_trace() -> Trace {
        Trace {
            branch_id: None,
            events: vec![
                EventRecord {
                    id: "E1".into(),
                    actor: "A".into(),
                    action: "send_ping".into(),
                    time: TimeSet::new("c".into(), vec![(Rat::zero(), Rat::one())]).unwrap(),
                    depends_on: BTreeSet::new(),
                    kind: EventKind::Initial,
                },
                EventRecord {
                    id: "e1".into(),
                    actor: "B".into(),
                    action: "ping".into(),
                    time: TimeSet::new(
                        "c".into(),
                        vec![(Rat::new(3, 2), Rat::new(5, 2)), (Rat::integer(4), Rat::integer(4))],
                    )
                    .unwrap(),
                    depends_on: ["E1".into()].into(),
                    kind: EventKind::Receive { send: "E1".into() },
                },
                EventRecord {
                    id: "e2".into(),
                    actor: "B".into(),
                    action: "pong".into(),
                    time: TimeSet::new("c".into(), vec![(Rat::integer(4), Rat::integer(5))])
                        .unwrap(),
                    depends_on: ["e1".into()].into(),
                    kind: EventKind::Reaction {
                        trigger: "e1".into(),
                        timing: TimingClass::Reserved,
                    },
                },
            ],
            messages: vec![("E1".into(), "e1".into())],
        }
    }

    #[test]
    fn trace_round_trips_byte_exactly() {
        let trace = sample_trace();
        let text = write_trace(&trace);
        let parsed = read_trace(&text).unwrap();
        assert_eq!(parsed, trace);
        assert_eq!(write_trace(&parsed), text);
    }

    #[test]
    fn rational_endpoints_stay_exact() {
        let text = write_trace(&sample_trace());
        assert!(text.contains("[3/2,5/2]+[4,4]"));
    }

    #[test]
    fn branch_blocks_split_into_traces() {
        let mut first = sample_trace();
        first.branch_id = Some("0".to_owned());
        let mut second = sample_trace();
        second.branch_id = Some("1".to_owned());
        let text = write_traces(&[first.clone(), second.clone()]);
        let parsed = read_traces(&text).unwrap();
        assert_eq!(parsed, vec![first, second]);
    }

    #[test]
    fn missing_header_is_rejected() {
        assert_eq!(
            read_traces("E\tx\tA\ta\tc\t[0,1]\tinitial\t-"),
            Err(TraceFormatError::MissingHeader)
        );
    }

    #[test]
    fn malformed_lines_carry_the_line_number() {
        let text = format!("{HEADER}\nE\tonly\tthree\tfields\n");
        let err = read_traces(&text).unwrap_err();
        assert!(matches!(err, TraceFormatError::Malformed { line: 2, .. }));
    }
}
