//! Discrete-event signals on a bounded horizon `[0, horizon)` with exact
//! rational timestamps, prefix meet and the Cantor-style distance
//! `2^-t`, `t` the earliest time of disagreement.

use std::fmt;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distance::Distance;
use crate::gus::{ChainError, UltrametricSemilattice};
use crate::time::{RationalTime, TimeParseError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Event {
    pub time: RationalTime,
    pub value: String,
}

impl Event {
    pub fn new(time: RationalTime, value: impl Into<String>) -> Self {
        Event {
            time,
            value: value.into(),
        }
    }
}

/// A finite, strictly time-ordered list of events, all before the horizon.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventSignal {
    events: Vec<Event>,
    horizon: RationalTime,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DesignalError {
    #[error("signals have different horizons ({0} and {1})")]
    HorizonMismatch(RationalTime, RationalTime),
    #[error("horizon must be positive, got {0}")]
    NonPositiveHorizon(RationalTime),
    #[error("event time {time} outside [0, {horizon})")]
    OutOfRange {
        time: RationalTime,
        horizon: RationalTime,
    },
    #[error("event times must be strictly increasing ({prev} then {next})")]
    Unsorted {
        prev: RationalTime,
        next: RationalTime,
    },
    #[error("not an ascending chain: element {index} is not a prefix of the next")]
    NotAChain { index: usize },
    #[error("empty chain")]
    EmptyChain,
    #[error(transparent)]
    Time(#[from] TimeParseError),
    #[error("malformed signal JSON: {0}")]
    Json(String),
}

impl EventSignal {
    /// Validates the ordering and range invariants.
    pub fn new(horizon: RationalTime, events: Vec<Event>) -> Result<Self, DesignalError> {
        if !horizon.is_positive() {
            return Err(DesignalError::NonPositiveHorizon(horizon));
        }
        for e in &events {
            if e.time.is_negative() || e.time >= horizon {
                return Err(DesignalError::OutOfRange {
                    time: e.time,
                    horizon,
                });
            }
        }
        for w in events.windows(2) {
            if w[0].time >= w[1].time {
                return Err(DesignalError::Unsorted {
                    prev: w[0].time,
                    next: w[1].time,
                });
            }
        }
        Ok(EventSignal { events, horizon })
    }

    /// Builds a signal from `(time, value)` pairs with integer-or-rational
    /// times given as `(num, den)`.
    pub fn from_pairs(
        horizon: RationalTime,
        pairs: &[((i64, i64), &str)],
    ) -> Result<Self, DesignalError> {
        let events = pairs
            .iter()
            .map(|&((n, d), v)| Event::new(RationalTime::new(n, d), v))
            .collect();
        EventSignal::new(horizon, events)
    }

    pub fn empty(horizon: RationalTime) -> Self {
        assert!(horizon.is_positive(), "horizon must be positive");
        EventSignal {
            events: Vec::new(),
            horizon,
        }
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn horizon(&self) -> RationalTime {
        self.horizon
    }

    pub fn value_at(&self, t: RationalTime) -> Option<&str> {
        self.events
            .binary_search_by(|e| e.time.cmp(&t))
            .ok()
            .map(|i| self.events[i].value.as_str())
    }

    /// Events strictly before `t`.
    pub fn restrict_before(&self, t: RationalTime) -> EventSignal {
        EventSignal {
            events: self.events.iter().filter(|e| e.time < t).cloned().collect(),
            horizon: self.horizon,
        }
    }

    /// Builds a signal from events that may be unsorted, out of range or
    /// colliding: out-of-range events are dropped, and on a collision the
    /// earlier entry in `events` wins.
    pub fn from_unordered(horizon: RationalTime, events: Vec<Event>) -> EventSignal {
        let mut kept: Vec<Event> = Vec::with_capacity(events.len());
        for e in events {
            if e.time.is_negative() || e.time >= horizon {
                continue;
            }
            if !kept.iter().any(|k| k.time == e.time) {
                kept.push(e);
            }
        }
        kept.sort_by_key(|e| e.time);
        EventSignal {
            events: kept,
            horizon,
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self, DesignalError> {
        let raw: SignalJson =
            serde_json::from_str(text).map_err(|e| DesignalError::Json(e.to_string()))?;
        raw.into_signal()
    }

    pub fn to_json(&self) -> SignalJson {
        SignalJson {
            horizon: self.horizon.to_string(),
            events: self
                .events
                .iter()
                .map(|e| EventJson {
                    t: e.time.to_string(),
                    v: e.value.clone(),
                })
                .collect(),
        }
    }

    /// Compact single-line JSON; times rendered as `num/den`.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("signal JSON always serializes")
    }
}

impl fmt::Display for EventSignal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.events.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", e.time, e.value)?;
        }
        write!(f, "]@{}", self.horizon)
    }
}

/// Wire form: `{"horizon": "num/den", "events": [{"t": "num/den", "v": "a"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalJson {
    pub horizon: String,
    #[serde(default)]
    pub events: Vec<EventJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventJson {
    pub t: String,
    pub v: String,
}

impl SignalJson {
    pub fn into_signal(self) -> Result<EventSignal, DesignalError> {
        let horizon: RationalTime = self.horizon.parse()?;
        let events = self
            .events
            .into_iter()
            .map(|e| Ok(Event::new(e.t.parse()?, e.v)))
            .collect::<Result<Vec<_>, DesignalError>>()?;
        EventSignal::new(horizon, events)
    }
}

fn check_horizons(s1: &EventSignal, s2: &EventSignal) -> Result<(), DesignalError> {
    if s1.horizon != s2.horizon {
        return Err(DesignalError::HorizonMismatch(s1.horizon, s2.horizon));
    }
    Ok(())
}

/// Length of the common event prefix and the earliest disagreement time,
/// `None` when the signals are equal.
fn first_disagreement(s1: &EventSignal, s2: &EventSignal) -> (usize, Option<RationalTime>) {
    let common = s1
        .events
        .iter()
        .zip(&s2.events)
        .take_while(|(a, b)| a == b)
        .count();
    let t = match (s1.events.get(common), s2.events.get(common)) {
        (Some(a), Some(b)) => Some(a.time.min(b.time)),
        (Some(a), None) => Some(a.time),
        (None, Some(b)) => Some(b.time),
        (None, None) => None,
    };
    (common, t)
}

/// Events strictly before the earliest disagreement.
pub fn sig_meet(s1: &EventSignal, s2: &EventSignal) -> Result<EventSignal, DesignalError> {
    check_horizons(s1, s2)?;
    let (common, _) = first_disagreement(s1, s2);
    Ok(EventSignal {
        events: s1.events[..common].to_vec(),
        horizon: s1.horizon,
    })
}

/// `Zero` if equal, otherwise `Level(t*)` at the earliest disagreement time.
pub fn sig_distance(s1: &EventSignal, s2: &EventSignal) -> Result<Distance, DesignalError> {
    check_horizons(s1, s2)?;
    Ok(match first_disagreement(s1, s2).1 {
        None => Distance::Zero,
        Some(t) => Distance::time(t),
    })
}

fn is_event_prefix(s1: &EventSignal, s2: &EventSignal) -> bool {
    s2.events.starts_with(&s1.events)
}

/// Maximum of a finite prefix chain.
pub fn sig_sup_chain(chain: &[EventSignal]) -> Result<EventSignal, DesignalError> {
    for (index, w) in chain.windows(2).enumerate() {
        check_horizons(&w[0], &w[1])?;
        if !is_event_prefix(&w[0], &w[1]) {
            return Err(DesignalError::NotAChain { index });
        }
    }
    chain.last().cloned().ok_or(DesignalError::EmptyChain)
}

/// Signals on a fixed horizon. The sampler draws up to `max_events` events
/// on the grid `k · grid_step` inside the horizon.
#[derive(Clone, Debug)]
pub struct DesignalSpace {
    horizon: RationalTime,
    values: Vec<String>,
    grid_step: RationalTime,
    max_events: usize,
}

impl DesignalSpace {
    /// Grid step `1/2`, up to 5 events per sample.
    pub fn new(horizon: RationalTime, values: &[&str]) -> Result<Self, DesignalError> {
        DesignalSpace::with_grid(horizon, values, RationalTime::new(1, 2), 5)
    }

    pub fn with_grid(
        horizon: RationalTime,
        values: &[&str],
        grid_step: RationalTime,
        max_events: usize,
    ) -> Result<Self, DesignalError> {
        if !horizon.is_positive() {
            return Err(DesignalError::NonPositiveHorizon(horizon));
        }
        assert!(grid_step.is_positive(), "grid step must be positive");
        assert!(!values.is_empty(), "value alphabet must be non-empty");
        Ok(DesignalSpace {
            horizon,
            values: values.iter().map(|v| v.to_string()).collect(),
            grid_step,
            max_events,
        })
    }

    pub fn horizon(&self) -> RationalTime {
        self.horizon
    }

    pub fn values(&self) -> &[String] {
        &self.values
    }

    fn grid(&self) -> Vec<RationalTime> {
        let mut points = Vec::new();
        let mut t = RationalTime::ZERO;
        while t < self.horizon {
            points.push(t);
            t = t + self.grid_step;
        }
        points
    }
}

impl UltrametricSemilattice for DesignalSpace {
    type Elem = EventSignal;

    /// # Panics
    ///
    /// On signals with a different horizon than this space.
    fn meet(&self, a: &EventSignal, b: &EventSignal) -> EventSignal {
        sig_meet(a, b).expect("signals from this space share its horizon")
    }

    fn distance(&self, a: &EventSignal, b: &EventSignal) -> Distance {
        sig_distance(a, b).expect("signals from this space share its horizon")
    }

    fn sample(&self, rng: &mut dyn RngCore) -> EventSignal {
        let grid = self.grid();
        let n = rng.random_range(0..=self.max_events.min(grid.len()));
        let mut times: Vec<RationalTime> = Vec::with_capacity(n);
        while times.len() < n {
            let t = grid[rng.random_range(0..grid.len())];
            if !times.contains(&t) {
                times.push(t);
            }
        }
        times.sort();
        let events = times
            .into_iter()
            .map(|t| {
                Event::new(
                    t,
                    self.values[rng.random_range(0..self.values.len())].clone(),
                )
            })
            .collect();
        EventSignal {
            events,
            horizon: self.horizon,
        }
    }

    fn bottom(&self) -> EventSignal {
        EventSignal::empty(self.horizon)
    }

    fn contains(&self, a: &EventSignal) -> bool {
        a.horizon == self.horizon
    }

    fn render(&self, a: &EventSignal) -> String {
        a.to_json_string()
    }

    fn sup_chain(&self, chain: &[EventSignal]) -> Result<EventSignal, ChainError> {
        sig_sup_chain(chain).map_err(|e| match e {
            DesignalError::NotAChain { index } => ChainError::NotAChain { index },
            _ => ChainError::Empty,
        })
    }
}
