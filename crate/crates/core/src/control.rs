//! Pneumatic phase plans for grasping, crawling and steering.
//!
//! Pressures are gauge kPa. A plan starts from a declared channel state and
//! each phase overrides some channel targets; channels it does not mention
//! hold their previous value.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ControlError {
    #[error("invalid gait parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("destination map is empty")]
    EmptyDestinations,
    #[error("no destination for class {0}")]
    NoDestination(usize),
    #[error("cycles must be at least 1")]
    NoCycles,
    #[error("unknown channel `{0}`")]
    UnknownChannel(String),
    #[error("plan text line {line}: {reason}")]
    Format { line: usize, reason: String },
    #[error("safety: {0}")]
    Safety(#[from] SafetyViolation),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SafetyViolation {
    #[error("phase `{phase}`: {channel} at {pressure} kPa outside [{lo}, {hi}]")]
    OutOfBounds {
        phase: String,
        channel: Channel,
        pressure: f64,
        lo: f64,
        hi: f64,
    },
    #[error("phase `{phase}` targets undeclared channel {channel}")]
    Undeclared { phase: String, channel: Channel },
    #[error("phase `{phase}` has non-positive dwell {dwell}")]
    Dwell { phase: String, dwell: f64 },
    #[error("phase `{phase}` moves actuators with no sucker anchored")]
    Unanchored { phase: String },
    #[error("cyclic plan `{plan}` does not return to its initial state")]
    OpenCycle { plan: String },
}

pub type Result<T> = std::result::Result<T, ControlError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Channel {
    HeadSucker,
    TailSucker,
    /// Actuators 1 and 2 sit on the left flank, 3 and 4 on the right.
    Actuator(u8),
}

impl Channel {
    pub const ALL: [Channel; 6] = [
        Channel::HeadSucker,
        Channel::TailSucker,
        Channel::Actuator(1),
        Channel::Actuator(2),
        Channel::Actuator(3),
        Channel::Actuator(4),
    ];

    pub fn is_sucker(self) -> bool {
        matches!(self, Channel::HeadSucker | Channel::TailSucker)
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Channel::HeadSucker => f.write_str("head_sucker"),
            Channel::TailSucker => f.write_str("tail_sucker"),
            Channel::Actuator(i) => write!(f, "actuator_{i}"),
        }
    }
}

impl FromStr for Channel {
    type Err = ControlError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "head_sucker" => Ok(Channel::HeadSucker),
            "tail_sucker" => Ok(Channel::TailSucker),
            _ => s
                .strip_prefix("actuator_")
                .and_then(|i| i.parse::<u8>().ok())
                .filter(|i| (1..=4).contains(i))
                .map(Channel::Actuator)
                .ok_or_else(|| ControlError::UnknownChannel(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn actuators(self) -> [Channel; 2] {
        match self {
            Side::Left => [Channel::Actuator(1), Channel::Actuator(2)],
            Side::Right => [Channel::Actuator(3), Channel::Actuator(4)],
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Allowed pressure envelopes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelBounds {
    pub sucker: (f64, f64),
    pub actuator: (f64, f64),
}

impl Default for ChannelBounds {
    fn default() -> Self {
        Self {
            sucker: (-15.0, 10.0),
            actuator: (0.0, 40.0),
        }
    }
}

impl ChannelBounds {
    pub fn for_channel(&self, c: Channel) -> (f64, f64) {
        if c.is_sucker() {
            self.sucker
        } else {
            self.actuator
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Phase {
    pub name: String,
    pub targets: Vec<(Channel, f64)>,
    pub dwell_s: f64,
    pub observation: Option<String>,
}

impl Phase {
    fn new(name: &str, targets: &[(Channel, f64)], dwell_s: f64) -> Self {
        Self {
            name: name.to_string(),
            targets: targets.to_vec(),
            dwell_s,
            observation: None,
        }
    }

    fn observe(mut self, tag: &str) -> Self {
        self.observation = Some(tag.to_string());
        self
    }

    pub fn target(&self, c: Channel) -> Option<f64> {
        self.targets.iter().rev().find(|(ch, _)| *ch == c).map(|(_, p)| *p)
    }
}

pub type ChannelState = BTreeMap<Channel, f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct GaitPlan {
    pub name: String,
    pub initial: ChannelState,
    pub phases: Vec<Phase>,
    pub cyclic: bool,
}

impl GaitPlan {
    /// Channel state after each phase.
    pub fn states(&self) -> Vec<ChannelState> {
        let mut state = self.initial.clone();
        self.phases
            .iter()
            .map(|p| {
                for (c, v) in &p.targets {
                    state.insert(*c, *v);
                }
                state.clone()
            })
            .collect()
    }

    pub fn final_state(&self) -> ChannelState {
        self.states().pop().unwrap_or_else(|| self.initial.clone())
    }

    pub fn cycle_duration(&self) -> f64 {
        self.phases.iter().map(|p| p.dwell_s).sum()
    }

    /// One line per item:
    ///
    /// ```text
    /// plan <name>
    /// cyclic true|false
    /// initial <channel>=<kPa> ...
    /// phase <name> dwell=<s> [observe=<tag>] <channel>=<kPa> ...
    /// ```
    ///
    /// Numbers use the shortest exact decimal form, so parsing the text back
    /// yields identical values.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "plan {}", self.name);
        let _ = writeln!(out, "cyclic {}", self.cyclic);
        out.push_str("initial");
        for (c, v) in &self.initial {
            let _ = write!(out, " {c}={v}");
        }
        out.push('\n');
        for p in &self.phases {
            let _ = write!(out, "phase {} dwell={}", p.name, p.dwell_s);
            if let Some(tag) = &p.observation {
                let _ = write!(out, " observe={tag}");
            }
            for (c, v) in &p.targets {
                let _ = write!(out, " {c}={v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let fail = |line: usize, reason: &str| ControlError::Format {
            line,
            reason: reason.to_string(),
        };
        let num = |line: usize, v: &str| v.parse::<f64>().map_err(|_| fail(line, &format!("bad number `{v}`")));
        let mut name = None;
        let mut cyclic = None;
        let mut initial = None;
        let mut phases = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let mut words = raw.split_whitespace();
            let Some(key) = words.next() else { continue };
            let words: Vec<&str> = words.collect();
            match key {
                "plan" => name = Some(words.join(" ")),
                "cyclic" => {
                    cyclic = Some(match words.as_slice() {
                        ["true"] => true,
                        ["false"] => false,
                        _ => return Err(fail(line, "expected true or false")),
                    })
                }
                "initial" => {
                    let mut state = ChannelState::new();
                    for w in words {
                        let (c, v) = w.split_once('=').ok_or_else(|| fail(line, "expected channel=value"))?;
                        state.insert(c.parse()?, num(line, v)?);
                    }
                    initial = Some(state);
                }
                "phase" => {
                    let (pname, rest) = words.split_first().ok_or_else(|| fail(line, "missing phase name"))?;
                    let mut phase = Phase::new(pname, &[], 0.0);
                    let mut dwell = None;
                    for w in rest {
                        let (k, v) = w.split_once('=').ok_or_else(|| fail(line, "expected key=value"))?;
                        match k {
                            "dwell" => dwell = Some(num(line, v)?),
                            "observe" => phase.observation = Some(v.to_string()),
                            _ => phase.targets.push((k.parse()?, num(line, v)?)),
                        }
                    }
                    phase.dwell_s = dwell.ok_or_else(|| fail(line, "missing dwell"))?;
                    phases.push(phase);
                }
                _ => return Err(fail(line, &format!("unknown key `{key}`"))),
            }
        }
        Ok(Self {
            name: name.ok_or_else(|| fail(0, "missing plan line"))?,
            cyclic: cyclic.ok_or_else(|| fail(0, "missing cyclic line"))?,
            initial: initial.ok_or_else(|| fail(0, "missing initial line"))?,
            phases,
        })
    }
}

/// Pressures and timing shared by the gait generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaitParams {
    /// Head sucker pressure while sensing or sliding forward.
    pub push_kpa: f64,
    /// Sucker pressure when anchored.
    pub anchor_kpa: f64,
    pub elongation_kpa: f64,
    pub dwell_s: f64,
    pub bounds: ChannelBounds,
}

impl Default for GaitParams {
    fn default() -> Self {
        Self {
            push_kpa: 8.0,
            anchor_kpa: -10.0,
            elongation_kpa: 20.0,
            dwell_s: 1.0,
            bounds: ChannelBounds::default(),
        }
    }
}

impl GaitParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |name, value, reason| Err(ControlError::InvalidParameter { name, value, reason });
        let (slo, shi) = self.bounds.sucker;
        let (alo, ahi) = self.bounds.actuator;
        if !(slo < 0.0 && shi > 0.0 && slo >= -15.0 && shi <= 10.0) {
            return bad("sucker bounds", slo, "must lie within [-15, 10] kPa and straddle 0");
        }
        if !(alo == 0.0 && ahi > 0.0 && ahi <= 40.0) {
            return bad("actuator bounds", ahi, "must be [0, max] with max in (0, 40] kPa");
        }
        if !(self.push_kpa > 0.0 && self.push_kpa <= shi) {
            return bad("push_kpa", self.push_kpa, "must be positive and within sucker bounds");
        }
        if !(self.anchor_kpa < 0.0 && self.anchor_kpa >= slo) {
            return bad(
                "anchor_kpa",
                self.anchor_kpa,
                "must be negative and within sucker bounds",
            );
        }
        if !(self.elongation_kpa > 0.0 && self.elongation_kpa <= ahi) {
            return bad(
                "elongation_kpa",
                self.elongation_kpa,
                "must be positive and within actuator bounds",
            );
        }
        if !(self.dwell_s > 0.0 && self.dwell_s.is_finite()) {
            return bad("dwell_s", self.dwell_s, "must be positive");
        }
        Ok(())
    }

    /// Resting state between locomotion cycles: head anchored, tail free, body relaxed.
    fn rest_state(&self) -> ChannelState {
        let mut s: ChannelState = Channel::ALL.iter().map(|&c| (c, 0.0)).collect();
        s.insert(Channel::HeadSucker, self.anchor_kpa);
        s
    }

    fn locomotion_cycle(&self, name: &str, pair: &[Channel]) -> GaitPlan {
        use Channel::*;
        let d = self.dwell_s;
        let stretch: Vec<(Channel, f64)> = pair.iter().map(|&c| (c, self.elongation_kpa)).collect();
        let relax: Vec<(Channel, f64)> = pair.iter().map(|&c| (c, 0.0)).collect();
        GaitPlan {
            name: name.to_string(),
            initial: self.rest_state(),
            phases: vec![
                Phase::new(
                    "anchor-tail",
                    &[(TailSucker, self.anchor_kpa), (HeadSucker, self.push_kpa)],
                    d,
                ),
                Phase::new("elongate", &stretch, d),
                Phase::new("anchor-head", &[(HeadSucker, self.anchor_kpa), (TailSucker, 0.0)], d),
                Phase::new("contract", &relax, d),
            ],
            cyclic: true,
        }
    }
}

/// Four-step inchworm cycle: anchor tail while the head slides, elongate,
/// anchor head and release tail, contract.
pub fn crawl_cycle_sequence() -> GaitPlan {
    crawl_cycle_with(&GaitParams::default())
}

pub fn crawl_cycle_with(params: &GaitParams) -> GaitPlan {
    let all: Vec<Channel> = (1..=4).map(Channel::Actuator).collect();
    params.locomotion_cycle("crawl", &all)
}

/// The crawl skeleton with only the outer flank elongating: turning left
/// stretches the right-hand pair and vice versa.
pub fn steer_sequence(direction: Side) -> GaitPlan {
    steer_with(direction, &GaitParams::default())
}

pub fn steer_with(direction: Side, params: &GaitParams) -> GaitPlan {
    let name = match direction {
        Side::Left => "steer-left",
        Side::Right => "steer-right",
    };
    params.locomotion_cycle(name, &direction.opposite().actuators())
}

/// Drop pose for a sorted object, millimetres in the workcell frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DropPose {
    pub x_mm: f64,
    pub y_mm: f64,
    pub z_mm: f64,
}

/// Grasp-and-sort plan for the head sucker on a manipulator.
#[derive(Debug, Clone, PartialEq)]
pub struct GraspPlan {
    pub plan: GaitPlan,
    pub destinations: BTreeMap<usize, DropPose>,
}

impl GraspPlan {
    /// Where the transport phase goes once the object is classified.
    pub fn destination_for(&self, class: usize) -> Result<DropPose> {
        self.destinations
            .get(&class)
            .copied()
            .ok_or(ControlError::NoDestination(class))
    }

    pub fn to_text(&self) -> String {
        let mut out = self.plan.to_text();
        for (class, p) in &self.destinations {
            let _ = writeln!(out, "destination {class} {} {} {}", p.x_mm, p.y_mm, p.z_mm);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut plan_lines = String::new();
        let mut destinations = BTreeMap::new();
        for (i, l) in text.lines().enumerate() {
            if let Some(rest) = l.strip_prefix("destination ") {
                let fail = |reason: &str| ControlError::Format {
                    line: i + 1,
                    reason: reason.to_string(),
                };
                let f: Vec<&str> = rest.split_whitespace().collect();
                if f.len() != 4 {
                    return Err(fail("expected class x y z"));
                }
                let n = |v: &str| v.parse::<f64>().map_err(|_| fail("bad number"));
                let class = f[0].parse().map_err(|_| fail("bad class"))?;
                destinations.insert(
                    class,
                    DropPose {
                        x_mm: n(f[1])?,
                        y_mm: n(f[2])?,
                        z_mm: n(f[3])?,
                    },
                );
            } else {
                // Keep line numbering aligned for error messages.
                plan_lines.push_str(l);
                plan_lines.push('\n');
            }
        }
        Ok(Self {
            plan: GaitPlan::from_text(&plan_lines)?,
            destinations,
        })
    }
}

pub const CLASSIFY_TAG: &str = "classify";
pub const TRANSPORT_TAG: &str = "transport";

/// approach → press (+push) → classify → attach (anchor) → transport → release (0) → retract.
pub fn grasp_cycle_plan(destinations: &BTreeMap<usize, DropPose>) -> Result<GraspPlan> {
    grasp_cycle_with(destinations, &GaitParams::default())
}

pub fn grasp_cycle_with(destinations: &BTreeMap<usize, DropPose>, params: &GaitParams) -> Result<GraspPlan> {
    if destinations.is_empty() {
        return Err(ControlError::EmptyDestinations);
    }
    params.validate()?;
    let head = Channel::HeadSucker;
    let d = params.dwell_s;
    let plan = GaitPlan {
        name: "grasp".into(),
        initial: [(head, 0.0)].into_iter().collect(),
        phases: vec![
            Phase::new("approach", &[(head, 0.0)], d),
            Phase::new("press", &[(head, params.push_kpa)], d),
            Phase::new("capture", &[(head, params.push_kpa)], d).observe(CLASSIFY_TAG),
            Phase::new("attach", &[(head, params.anchor_kpa)], d),
            Phase::new("transport", &[(head, params.anchor_kpa)], d).observe(TRANSPORT_TAG),
            Phase::new("release", &[(head, 0.0)], d),
            Phase::new("retract", &[(head, 0.0)], d),
        ],
        cyclic: true,
    };
    Ok(GraspPlan {
        plan,
        destinations: destinations.clone(),
    })
}

/// Checks bounds, declared channels, dwell, anchoring and cyclic closure.
pub fn check_plan(plan: &GaitPlan, bounds: &ChannelBounds) -> std::result::Result<(), SafetyViolation> {
    let within = |phase: &str, c: Channel, p: f64| {
        let (lo, hi) = bounds.for_channel(c);
        if p >= lo && p <= hi {
            Ok(())
        } else {
            Err(SafetyViolation::OutOfBounds {
                phase: phase.to_string(),
                channel: c,
                pressure: p,
                lo,
                hi,
            })
        }
    };
    for (&c, &p) in &plan.initial {
        within("initial", c, p)?;
    }
    let mut previous = plan.initial.clone();
    for (phase, state) in plan.phases.iter().zip(plan.states()) {
        if !(phase.dwell_s > 0.0 && phase.dwell_s.is_finite()) {
            return Err(SafetyViolation::Dwell {
                phase: phase.name.clone(),
                dwell: phase.dwell_s,
            });
        }
        for (c, p) in &phase.targets {
            if !plan.initial.contains_key(c) {
                return Err(SafetyViolation::Undeclared {
                    phase: phase.name.clone(),
                    channel: *c,
                });
            }
            within(&phase.name, *c, *p)?;
        }
        let moves_actuators = state.iter().any(|(c, p)| !c.is_sucker() && previous.get(c) != Some(p));
        let anchored = state.iter().any(|(c, p)| c.is_sucker() && *p < 0.0);
        if moves_actuators && !anchored {
            return Err(SafetyViolation::Unanchored {
                phase: phase.name.clone(),
            });
        }
        previous = state;
    }
    if plan.cyclic && plan.final_state() != plan.initial {
        return Err(SafetyViolation::OpenCycle {
            plan: plan.name.clone(),
        });
    }
    Ok(())
}

/// A constant-pressure interval on one channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub channel: Channel,
    pub start_s: f64,
    pub end_s: f64,
    pub pressure_kpa: f64,
}

/// Piecewise-constant per-channel pressure series.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PressureTimeline {
    pub segments: Vec<Segment>,
}

impl PressureTimeline {
    pub fn duration(&self) -> f64 {
        self.segments.iter().map(|s| s.end_s).fold(0.0, f64::max)
    }

    pub fn channel(&self, c: Channel) -> Vec<Segment> {
        self.segments.iter().filter(|s| s.channel == c).copied().collect()
    }

    /// Pressure on `c` at time `t`; segments are half-open `[start, end)`.
    pub fn pressure_at(&self, c: Channel, t: f64) -> Option<f64> {
        self.segments
            .iter()
            .find(|s| s.channel == c && s.start_s <= t && t < s.end_s)
            .map(|s| s.pressure_kpa)
    }

    /// Appends `other` shifted to start where this timeline ends.
    pub fn append(&mut self, other: &PressureTimeline) {
        let t0 = self.duration();
        self.segments.extend(other.segments.iter().map(|s| Segment {
            start_s: s.start_s + t0,
            end_s: s.end_s + t0,
            ..*s
        }));
    }

    /// `t_s,channel,pressure_kpa`: one row per segment start, ordered by
    /// time then channel, and a closing row per channel at the end time
    /// carrying its final pressure.
    pub fn to_csv(&self) -> String {
        let mut rows: Vec<&Segment> = self.segments.iter().collect();
        rows.sort_by(|a, b| a.start_s.total_cmp(&b.start_s).then(a.channel.cmp(&b.channel)));
        let mut out = String::from("t_s,channel,pressure_kpa\n");
        for s in &rows {
            let _ = writeln!(out, "{},{},{}", s.start_s, s.channel, s.pressure_kpa);
        }
        let mut last: BTreeMap<Channel, &Segment> = BTreeMap::new();
        for s in &rows {
            let e = last.entry(s.channel).or_insert(s);
            if s.end_s >= e.end_s {
                *e = s;
            }
        }
        for (c, s) in last {
            let _ = writeln!(out, "{},{},{}", s.end_s, c, s.pressure_kpa);
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let fail = |line: usize, reason: &str| ControlError::Format {
            line,
            reason: reason.to_string(),
        };
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, "t_s,channel,pressure_kpa")) => {}
            _ => return Err(fail(1, "missing header")),
        }
        let mut per_channel: BTreeMap<Channel, Vec<(f64, f64)>> = BTreeMap::new();
        for (i, l) in lines.filter(|(_, l)| !l.trim().is_empty()) {
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 3 {
                return Err(fail(i + 1, "expected 3 fields"));
            }
            let t = f[0].parse::<f64>().map_err(|_| fail(i + 1, "bad time"))?;
            let p = f[2].parse::<f64>().map_err(|_| fail(i + 1, "bad pressure"))?;
            per_channel.entry(f[1].parse()?).or_default().push((t, p));
        }
        let mut segments = Vec::new();
        for (c, rows) in per_channel {
            for w in rows.windows(2) {
                segments.push(Segment {
                    channel: c,
                    start_s: w[0].0,
                    end_s: w[1].0,
                    pressure_kpa: w[0].1,
                });
            }
        }
        segments.sort_by(|a, b| a.start_s.total_cmp(&b.start_s).then(a.channel.cmp(&b.channel)));
        Ok(Self { segments })
    }
}

/// One segment per declared channel per phase, repeated `cycles` times.
pub fn pressure_timeline(plan: &GaitPlan, cycles: usize) -> Result<PressureTimeline> {
    if cycles == 0 {
        return Err(ControlError::NoCycles);
    }
    let states = plan.states();
    let mut segments = Vec::with_capacity(cycles * states.len() * plan.initial.len());
    let mut t = 0.0;
    for _ in 0..cycles {
        for (phase, state) in plan.phases.iter().zip(&states) {
            let end = t + phase.dwell_s;
            for (&channel, &pressure_kpa) in state {
                segments.push(Segment {
                    channel,
                    start_s: t,
                    end_s: end,
                    pressure_kpa,
                });
            }
            t = end;
        }
    }
    Ok(PressureTimeline { segments })
}

pub fn check_timeline(timeline: &PressureTimeline, bounds: &ChannelBounds) -> std::result::Result<(), SafetyViolation> {
    for s in &timeline.segments {
        let (lo, hi) = bounds.for_channel(s.channel);
        if !(s.pressure_kpa >= lo && s.pressure_kpa <= hi) {
            return Err(SafetyViolation::OutOfBounds {
                phase: format!("t={}", s.start_s),
                channel: s.channel,
                pressure: s.pressure_kpa,
                lo,
                hi,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use Channel::*;

    fn dest() -> BTreeMap<usize, DropPose> {
        (0..3)
            .map(|c| {
                (
                    c,
                    DropPose {
                        x_mm: 100.0 * c as f64,
                        y_mm: -50.0,
                        z_mm: 20.5,
                    },
                )
            })
            .collect()
    }

    #[test]
    fn channel_names_round_trip() {
        for c in Channel::ALL {
            assert_eq!(c.to_string().parse::<Channel>().unwrap(), c);
        }
        assert!("actuator_5".parse::<Channel>().is_err());
        assert!("wing".parse::<Channel>().is_err());
    }

    #[test]
    fn crawl_anchoring_pattern() {
        let plan = crawl_cycle_sequence();
        assert_eq!(plan.phases.len(), 4);
        let s = plan.states();
        assert!(s[0][&TailSucker] < 0.0 && s[0][&HeadSucker] > 0.0);
        assert!((1..=4).all(|i| s[1][&Actuator(i)] > 0.0));
        assert!(s[2][&HeadSucker] < 0.0 && s[2][&TailSucker] == 0.0);
        assert_eq!(s[3], plan.initial);
        check_plan(&plan, &ChannelBounds::default()).unwrap();
    }

    #[test]
    fn steering_uses_outer_pair() {
        let left = steer_sequence(Side::Left);
        let right = steer_sequence(Side::Right);
        let elongated = |p: &GaitPlan| -> Vec<Channel> {
            p.states()[1]
                .iter()
                .filter(|(c, v)| !c.is_sucker() && **v != 0.0)
                .map(|(c, _)| *c)
                .collect()
        };
        assert_eq!(elongated(&left), vec![Actuator(3), Actuator(4)]);
        assert_eq!(elongated(&right), vec![Actuator(1), Actuator(2)]);
        let crawl = crawl_cycle_sequence();
        for i in [0, 2] {
            assert_eq!(left.phases[i], crawl.phases[i]);
        }
    }

    #[test]
    fn grasp_order_and_lookup() {
        let g = grasp_cycle_plan(&dest()).unwrap();
        let head: Vec<f64> = g.plan.states().iter().map(|s| s[&HeadSucker]).collect();
        assert_eq!(head, vec![0.0, 8.0, 8.0, -10.0, -10.0, 0.0, 0.0]);
        assert_eq!(g.plan.phases[2].observation.as_deref(), Some(CLASSIFY_TAG));
        assert_eq!(g.destination_for(1).unwrap().x_mm, 100.0);
        assert_eq!(g.destination_for(9).unwrap_err(), ControlError::NoDestination(9));
        assert_eq!(
            grasp_cycle_plan(&BTreeMap::new()).unwrap_err(),
            ControlError::EmptyDestinations
        );
        check_plan(&g.plan, &ChannelBounds::default()).unwrap();
    }

    #[test]
    fn text_round_trip() {
        let g = grasp_cycle_plan(&dest()).unwrap();
        let text = g.to_text();
        let back = GraspPlan::from_text(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_text(), text);
        let crawl = crawl_cycle_sequence();
        assert_eq!(GaitPlan::from_text(&crawl.to_text()).unwrap(), crawl);
        assert!(GaitPlan::from_text("plan x\ncyclic maybe\n").is_err());
    }

    #[test]
    fn timeline_shape() {
        let crawl = crawl_cycle_sequence();
        let one = pressure_timeline(&crawl, 1).unwrap();
        for c in Channel::ALL {
            assert_eq!(one.channel(c).len(), 4);
        }
        let three = pressure_timeline(&crawl, 3).unwrap();
        assert_eq!(three.duration(), 3.0 * one.duration());
        assert_eq!(one.pressure_at(HeadSucker, 0.5), Some(8.0));
        assert_eq!(pressure_timeline(&crawl, 0).unwrap_err(), ControlError::NoCycles);
        let back = PressureTimeline::from_csv(&three.to_csv()).unwrap();
        assert_eq!(back, three);
    }

    #[test]
    fn checker_catches_violations() {
        let mut p = crawl_cycle_sequence();
        p.phases[1].targets[0].1 = 55.0;
        assert!(matches!(
            check_plan(&p, &ChannelBounds::default()),
            Err(SafetyViolation::OutOfBounds { .. })
        ));
        let mut p = crawl_cycle_sequence();
        p.phases[0].targets[0].1 = 0.0;
        assert!(matches!(
            check_plan(&p, &ChannelBounds::default()),
            Err(SafetyViolation::Unanchored { .. })
        ));
        let mut p = crawl_cycle_sequence();
        p.phases.pop();
        assert!(matches!(
            check_plan(&p, &ChannelBounds::default()),
            Err(SafetyViolation::OpenCycle { .. })
        ));
        let mut p = crawl_cycle_sequence();
        p.phases[2].dwell_s = 0.0;
        assert!(matches!(
            check_plan(&p, &ChannelBounds::default()),
            Err(SafetyViolation::Dwell { .. })
        ));
    }

    #[test]
    fn params_validation() {
        let ok = GaitParams::default();
        ok.validate().unwrap();
        for bad in [
            GaitParams { push_kpa: 12.0, ..ok },
            GaitParams {
                anchor_kpa: -20.0,
                ..ok
            },
            GaitParams {
                elongation_kpa: 45.0,
                ..ok
            },
            GaitParams { dwell_s: 0.0, ..ok },
        ] {
            assert!(bad.validate().is_err());
        }
    }
}
