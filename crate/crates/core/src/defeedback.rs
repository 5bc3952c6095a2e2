//! Discrete-event components on bounded-horizon signals and their
//! solution in feedback.
//!
//! A feedback loop closes a component's output onto its own input; its
//! behaviour is the fixed point `s = C(s)`. When `C` is strictly causal (a
//! delay somewhere on the loop suffices) the fixed point exists, is unique
//! and the solver reaches it from any starting signal.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::designal::{DesignalError, DesignalSpace, Event, EventJson, EventSignal};
use crate::solver::{
    check_strictly_contracting, sample_pairs, solve_fixed_point, ContractionViolation,
    Endofunction, FixResult, SolveConfig, SolveError,
};
use crate::time::RationalTime;

type Transfer = Arc<dyn Fn(&EventSignal) -> EventSignal + Send + Sync>;

#[derive(Clone)]
pub struct Component {
    name: String,
    transfer: Transfer,
    declared_delay: Option<RationalTime>,
    causal: bool,
}

impl fmt::Debug for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Component")
            .field("name", &self.name)
            .field("declared_delay", &self.declared_delay)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Error)]
pub enum DefeedbackError {
    #[error("delay must be positive, got {0}")]
    NonPositiveDelay(RationalTime),
    #[error(transparent)]
    Signal(#[from] DesignalError),
    #[error("malformed network JSON: {0}")]
    Json(String),
    #[error(
        "component `{component}` is not strictly causal: signals at distance {} map to distance {}",
        .witness.before, .witness.after
    )]
    NotStrictlyCausal {
        component: String,
        witness: Box<ContractionViolation<EventSignal>>,
    },
    #[error("solver failed: {0}")]
    Solver(Box<SolveError<EventSignal>>),
}

impl Component {
    /// An arbitrary transfer function. `declared_delay` is trusted: a
    /// positive value skips the sampled strict-causality check in
    /// [`feedback_solve`].
    pub fn new(
        name: impl Into<String>,
        declared_delay: Option<RationalTime>,
        transfer: impl Fn(&EventSignal) -> EventSignal + Send + Sync + 'static,
    ) -> Self {
        Component {
            name: name.into(),
            transfer: Arc::new(transfer),
            declared_delay: declared_delay.filter(|d| d.is_positive()),
            causal: declared_delay.is_some(),
        }
    }

    /// A causal component without a delay guarantee. Composing it with a
    /// delay yields a declared delay.
    pub fn causal(
        name: impl Into<String>,
        transfer: impl Fn(&EventSignal) -> EventSignal + Send + Sync + 'static,
    ) -> Self {
        Component {
            name: name.into(),
            transfer: Arc::new(transfer),
            declared_delay: None,
            causal: true,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn declared_delay(&self) -> Option<RationalTime> {
        self.declared_delay
    }

    pub fn apply(&self, s: &EventSignal) -> EventSignal {
        (self.transfer)(s)
    }

    /// `self` first, then `next`. Delays add up as long as both sides are
    /// known to be causal.
    pub fn then(&self, next: &Component) -> Component {
        let (a, b) = (Arc::clone(&self.transfer), Arc::clone(&next.transfer));
        let causal = self.causal && next.causal;
        let declared_delay = match (self.declared_delay, next.declared_delay) {
            _ if !causal => None,
            (None, None) => None,
            (x, y) => Some(x.unwrap_or(RationalTime::ZERO) + y.unwrap_or(RationalTime::ZERO)),
        };
        Component {
            name: format!("{} ; {}", self.name, next.name),
            transfer: Arc::new(move |s| b(&a(s))),
            declared_delay,
            causal,
        }
    }

    pub fn endofunction(&self) -> Endofunction<EventSignal> {
        let transfer = Arc::clone(&self.transfer);
        Endofunction::new(self.name.clone(), move |s: &EventSignal| transfer(s))
    }
}

pub fn identity_component() -> Component {
    Component::causal("id", EventSignal::clone)
}

/// Shifts every event by `delta`, dropping events pushed to or past the
/// horizon.
pub fn delay_component(delta: RationalTime) -> Result<Component, DefeedbackError> {
    if !delta.is_positive() {
        return Err(DefeedbackError::NonPositiveDelay(delta));
    }
    Ok(Component::new(
        format!("delay({delta})"),
        Some(delta),
        move |s: &EventSignal| {
            let shifted = s
                .events()
                .iter()
                .map(|e| Event::new(e.time + delta, e.value.clone()))
                .collect();
            EventSignal::from_unordered(s.horizon(), shifted)
        },
    ))
}

/// Rewrites event values; times are unchanged.
pub fn map_component(
    name: impl Into<String>,
    f: impl Fn(&str) -> String + Send + Sync + 'static,
) -> Component {
    Component::causal(name, move |s: &EventSignal| {
        let events: Vec<Event> = s
            .events()
            .iter()
            .map(|e| Event::new(e.time, f(&e.value)))
            .collect();
        EventSignal::new(s.horizon(), events).expect("times unchanged")
    })
}

/// Merges a fixed stimulus into the input; on a time collision the
/// stimulus wins.
pub fn inject_component(stimulus: EventSignal) -> Component {
    let label = format!("inject({})", stimulus.to_json_string());
    Component::causal(label, move |s: &EventSignal| {
        let merged = stimulus
            .events()
            .iter()
            .chain(s.events())
            .cloned()
            .collect();
        EventSignal::from_unordered(s.horizon(), merged)
    })
}

/// Pairs sampled for the strict-causality check.
pub const CAUSALITY_SAMPLES: usize = 64;

/// Solves `s = C(s)` on `[0, horizon)` starting from the empty signal.
pub fn feedback_solve(
    component: &Component,
    horizon: RationalTime,
    budget: usize,
) -> Result<FixResult<EventSignal>, DefeedbackError> {
    let space = DesignalSpace::new(horizon, &["a", "b"])?;
    feedback_solve_from(
        component,
        &space,
        &EventSignal::empty(horizon),
        SolveConfig::with_budget(budget),
    )
}

/// As [`feedback_solve`] with an explicit space (whose sampler drives the
/// strict-causality check), starting signal and solver configuration.
pub fn feedback_solve_from(
    component: &Component,
    space: &DesignalSpace,
    seed: &EventSignal,
    config: SolveConfig,
) -> Result<FixResult<EventSignal>, DefeedbackError> {
    let f = component.endofunction();
    if component.declared_delay.is_none() {
        let pairs = sample_pairs(space, CAUSALITY_SAMPLES, 0);
        let report = check_strictly_contracting(space, &f, &pairs).expect("non-empty sample");
        if let Some(v) = report.violations.into_iter().next() {
            return Err(DefeedbackError::NotStrictlyCausal {
                component: component.name.clone(),
                witness: Box::new(v),
            });
        }
    }
    solve_fixed_point(space, &f, seed, config).map_err(|e| DefeedbackError::Solver(Box::new(e)))
}

/// A pipeline closed in feedback, as read from JSON:
///
/// ```json
/// {"horizon": "4", "pipeline": [
///   {"kind": "inject", "events": [{"t": "0", "v": "a"}]},
///   {"kind": "map", "table": {}, "default": "a"},
///   {"kind": "delay", "delta": "1"}]}
/// ```
///
/// Stages apply left to right. A `map` sends values found in `table` to
/// their entry, others to `default` when given and unchanged otherwise.
#[derive(Clone, Debug)]
pub struct Network {
    pub horizon: RationalTime,
    pub component: Component,
    values: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkJson {
    horizon: String,
    pipeline: Vec<StageJson>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum StageJson {
    Delay {
        delta: String,
    },
    Map {
        table: BTreeMap<String, String>,
        #[serde(default)]
        default: Option<String>,
    },
    Inject {
        events: Vec<EventJson>,
    },
}

impl Network {
    pub fn from_json_str(text: &str) -> Result<Network, DefeedbackError> {
        let raw: NetworkJson =
            serde_json::from_str(text).map_err(|e| DefeedbackError::Json(e.to_string()))?;
        let horizon: RationalTime = raw.horizon.parse().map_err(DesignalError::from)?;
        if !horizon.is_positive() {
            return Err(DesignalError::NonPositiveHorizon(horizon).into());
        }
        let mut component = identity_component();
        let mut values = Vec::new();
        for stage in raw.pipeline {
            let next = match stage {
                StageJson::Delay { delta } => {
                    delay_component(delta.parse().map_err(DesignalError::from)?)?
                }
                StageJson::Map { table, default } => {
                    values.extend(table.iter().flat_map(|(k, v)| [k.clone(), v.clone()]));
                    values.extend(default.clone());
                    let label = match &default {
                        Some(d) => format!("map({} entries, default {d})", table.len()),
                        None => format!("map({} entries)", table.len()),
                    };
                    map_component(label, move |v: &str| match table.get(v) {
                        Some(w) => w.clone(),
                        None => default.clone().unwrap_or_else(|| v.to_string()),
                    })
                }
                StageJson::Inject { events } => {
                    let events = events
                        .into_iter()
                        .map(|e| Ok(Event::new(e.t.parse()?, e.v)))
                        .collect::<Result<Vec<_>, DesignalError>>()?;
                    values.extend(events.iter().map(|e| e.value.clone()));
                    inject_component(EventSignal::new(horizon, events)?)
                }
            };
            component = if component.name == "id" {
                next
            } else {
                component.then(&next)
            };
        }
        values.sort();
        values.dedup();
        Ok(Network {
            horizon,
            component,
            values,
        })
    }

    /// Signal space over the values the network mentions (`a` and `b` when
    /// it mentions none).
    pub fn space(&self) -> DesignalSpace {
        let mut values: Vec<&str> = self.values.iter().map(String::as_str).collect();
        if values.len() < 2 {
            values.extend(
                ["a", "b"]
                    .into_iter()
                    .filter(|v| !self.values.iter().any(|x| x == v)),
            );
        }
        DesignalSpace::new(self.horizon, &values).expect("horizon validated")
    }

    pub fn solve(&self, config: SolveConfig) -> Result<FixResult<EventSignal>, DefeedbackError> {
        feedback_solve_from(
            &self.component,
            &self.space(),
            &EventSignal::empty(self.horizon),
            config,
        )
    }
}
