//! Grid-world crawler with tactile hole sensing and a right-then-left
//! avoidance policy.
//!
//! Coordinates are `(x, y)` with `x` growing east and `y` growing south, so
//! the first line of a world file is the northern edge.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use rand::Rng;
use thiserror::Error;

use crate::control::{
    check_plan, crawl_cycle_with, pressure_timeline, steer_with, ChannelBounds, ControlError, GaitParams, GaitPlan,
    PressureTimeline, SafetyViolation, Side,
};
use crate::seed::{item_seed, stream_rng};
use crate::synthesis::{
    difference_image, sandpaper_heightmap, CaptureParams, DifferenceImage, HeightMap, Renderer, SynthesisError,
    DEFAULT_MASK_FRACTION, HEIGHT, WIDTH,
};

/// Pixels with `|difference|` below this show no contact.
pub const NULL_SIGNAL: f64 = 0.02;
/// A cell is a hole when at least this share of masked pixels show no contact.
pub const HOLE_FRACTION: f64 = 0.2;
pub const DEFAULT_CELL_MM: f64 = 60.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LocomotionError {
    #[error("world line {line}, column {column}: {reason}")]
    Parse { line: usize, column: usize, reason: String },
    #[error("invalid world: {0}")]
    InvalidWorld(String),
    #[error("cell ({0}, {1}) is outside the world")]
    OutOfBounds(i64, i64),
    #[error("moving forward from ({x}, {y}) would enter a hole")]
    IntoHole { x: usize, y: usize },
    #[error("robot has halted")]
    Halted,
    #[error(transparent)]
    Synthesis(#[from] SynthesisError),
    #[error(transparent)]
    Control(#[from] ControlError),
    #[error("emitted plan failed safety check: {0}")]
    Safety(#[from] SafetyViolation),
}

pub type Result<T> = std::result::Result<T, LocomotionError>;

/// Surface under the floor cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FloorTexture {
    Smooth,
    /// Sandpaper of this mesh, regenerated per sensing event.
    Sandpaper(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridWorld {
    width: usize,
    height: usize,
    holes: BTreeSet<(usize, usize)>,
    start: (usize, usize),
    goal: Option<(usize, usize)>,
    pub cell_size_mm: f64,
    pub floor: FloorTexture,
}

impl GridWorld {
    pub fn new(
        width: usize,
        height: usize,
        holes: BTreeSet<(usize, usize)>,
        start: (usize, usize),
        goal: Option<(usize, usize)>,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(LocomotionError::InvalidWorld("empty grid".into()));
        }
        let inside = |(x, y): (usize, usize)| x < width && y < height;
        if let Some(h) = holes.iter().find(|&&h| !inside(h)) {
            return Err(LocomotionError::InvalidWorld(format!("hole {h:?} outside grid")));
        }
        if !inside(start) || holes.contains(&start) {
            return Err(LocomotionError::InvalidWorld("start must be a floor cell".into()));
        }
        if let Some(g) = goal {
            if !inside(g) || holes.contains(&g) {
                return Err(LocomotionError::InvalidWorld("goal must be a floor cell".into()));
            }
        }
        Ok(Self {
            width,
            height,
            holes,
            start,
            goal,
            cell_size_mm: DEFAULT_CELL_MM,
            floor: FloorTexture::Smooth,
        })
    }

    /// `.` floor, `#` hole, `S` start (exactly one), `G` goal (at most one).
    /// Rows must have equal length; blank trailing lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<&str> = text.trim_end_matches(['\n', '\r']).lines().collect();
        let mut holes = BTreeSet::new();
        let mut start = None;
        let mut goal = None;
        let width = rows
            .first()
            .map(|r| r.trim_end_matches('\r').chars().count())
            .unwrap_or(0);
        for (y, row) in rows.iter().enumerate() {
            let row = row.trim_end_matches('\r');
            let fail = |column: usize, reason: String| LocomotionError::Parse {
                line: y + 1,
                column,
                reason,
            };
            let mut count = 0;
            for (x, ch) in row.chars().enumerate() {
                count += 1;
                match ch {
                    '.' => {}
                    '#' => {
                        holes.insert((x, y));
                    }
                    'S' => {
                        if start.replace((x, y)).is_some() {
                            return Err(fail(x + 1, "second start cell".into()));
                        }
                    }
                    'G' => {
                        if goal.replace((x, y)).is_some() {
                            return Err(fail(x + 1, "second goal cell".into()));
                        }
                    }
                    other => return Err(fail(x + 1, format!("unexpected character `{other}`"))),
                }
            }
            if count != width {
                return Err(fail(
                    count.min(width) + 1,
                    format!("row has {count} cells, expected {width}"),
                ));
            }
        }
        if rows.is_empty() || width == 0 {
            return Err(LocomotionError::Parse {
                line: 1,
                column: 1,
                reason: "empty world".into(),
            });
        }
        let start = start.ok_or_else(|| LocomotionError::Parse {
            line: rows.len(),
            column: 1,
            reason: "no start cell `S`".into(),
        })?;
        Self::new(width, rows.len(), holes, start, goal)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for y in 0..self.height {
            for x in 0..self.width {
                out.push(if (x, y) == self.start {
                    'S'
                } else if Some((x, y)) == self.goal {
                    'G'
                } else if self.holes.contains(&(x, y)) {
                    '#'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        out
    }

    /// Holes placed independently with probability `density`, start kept clear.
    pub fn random(width: usize, height: usize, density: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&density) {
            return Err(LocomotionError::InvalidWorld(format!("hole density {density}")));
        }
        if width == 0 || height == 0 {
            return Err(LocomotionError::InvalidWorld("empty grid".into()));
        }
        let mut rng = stream_rng(seed, "world");
        let start = (rng.random_range(0..width), rng.random_range(0..height));
        let mut holes = BTreeSet::new();
        for y in 0..height {
            for x in 0..width {
                if (x, y) != start && rng.random_bool(density) {
                    holes.insert((x, y));
                }
            }
        }
        Self::new(width, height, holes, start, None)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn start(&self) -> (usize, usize) {
        self.start
    }

    pub fn goal(&self) -> Option<(usize, usize)> {
        self.goal
    }

    pub fn holes(&self) -> &BTreeSet<(usize, usize)> {
        &self.holes
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        x >= 0 && y >= 0 && (x as usize) < self.width && (y as usize) < self.height
    }

    pub fn is_hole(&self, cell: (usize, usize)) -> bool {
        self.holes.contains(&cell)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heading {
    North,
    East,
    South,
    West,
}

impl Heading {
    pub fn delta(self) -> (i64, i64) {
        match self {
            Heading::North => (0, -1),
            Heading::East => (1, 0),
            Heading::South => (0, 1),
            Heading::West => (-1, 0),
        }
    }

    pub fn right(self) -> Self {
        match self {
            Heading::North => Heading::East,
            Heading::East => Heading::South,
            Heading::South => Heading::West,
            Heading::West => Heading::North,
        }
    }

    pub fn left(self) -> Self {
        self.right().right().right()
    }

    pub fn letter(self) -> char {
        match self {
            Heading::North => 'N',
            Heading::East => 'E',
            Heading::South => 'S',
            Heading::West => 'W',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'N' => Some(Heading::North),
            'E' => Some(Heading::East),
            'S' => Some(Heading::South),
            'W' => Some(Heading::West),
            _ => None,
        }
    }
}

impl fmt::Display for Heading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    Forward,
    TurnRight,
    TurnLeft,
    Halt,
}

impl Action {
    pub fn name(self) -> &'static str {
        match self {
            Action::Forward => "forward",
            Action::TurnRight => "turn_right",
            Action::TurnLeft => "turn_left",
            Action::Halt => "halt",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Action::Forward, Action::TurnRight, Action::TurnLeft, Action::Halt]
            .into_iter()
            .find(|a| a.name() == s)
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Direction of a sensing query relative to the current heading.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Look {
    Ahead,
    Right,
    Left,
}

impl Look {
    pub fn heading(self, h: Heading) -> Heading {
        match self {
            Look::Ahead => h,
            Look::Right => h.right(),
            Look::Left => h.left(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TerrainObservation {
    /// Masked difference between the contact render and a free-membrane render.
    pub image: DifferenceImage,
    pub hole_detected: bool,
    /// Share of masked pixels on the detected side of the null-signal test.
    pub confidence: f64,
}

/// Share of masked pixels with `|difference| < NULL_SIGNAL`.
pub fn null_fraction(img: &DifferenceImage) -> f64 {
    let fraction = img.mask_fraction().unwrap_or(DEFAULT_MASK_FRACTION);
    let mask = crate::synthesis::center_mask(img.width(), img.height(), fraction).unwrap_or_default();
    let (mut null, mut total) = (0usize, 0usize);
    for (v, m) in img.values().iter().zip(&mask) {
        if *m {
            total += 1;
            if v.abs() < NULL_SIGNAL {
                null += 1;
            }
        }
    }
    null as f64 / total.max(1) as f64
}

pub fn detect_hole(img: &DifferenceImage) -> (bool, f64) {
    let f = null_fraction(img);
    let hole = f >= HOLE_FRACTION;
    (hole, if hole { f } else { 1.0 - f })
}

/// Renders what the head sucker feels at a cell.
///
/// Each sensing event renders the contact and a free-membrane reference
/// with the same illumination seed, so the illumination cancels in the
/// difference. A hole gives no contact and therefore a null difference.
#[derive(Debug, Default)]
pub struct TerrainSensor {
    renderer: Renderer,
}

impl TerrainSensor {
    pub fn new(renderer: Renderer) -> Self {
        Self { renderer }
    }

    pub fn sense_cell(&self, world: &GridWorld, cell: Option<(usize, usize)>, seed: u64) -> Result<TerrainObservation> {
        let illumination = self.renderer.illumination(seed);
        let reference = self.renderer.free_membrane_lit(&illumination);
        let contact = match cell {
            Some(c) if !world.is_hole(c) => {
                let map = match world.floor {
                    FloorTexture::Smooth => HeightMap::flat(WIDTH, HEIGHT),
                    FloorTexture::Sandpaper(mesh) => sandpaper_heightmap(mesh, seed, (WIDTH, HEIGHT))?,
                };
                let capture = CaptureParams::random(seed);
                self.renderer.render_lit(&map, &capture, &illumination)
            }
            _ => reference.clone(),
        };
        let image = difference_image(&contact, &reference).masked(DEFAULT_MASK_FRACTION)?;
        let (hole_detected, confidence) = detect_hole(&image);
        Ok(TerrainObservation {
            image,
            hole_detected,
            confidence,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RobotState {
    pub cell: (usize, usize),
    pub heading: Heading,
    pub step_count: usize,
}

impl RobotState {
    pub fn new(world: &GridWorld, cell: (usize, usize), heading: Heading) -> Result<Self> {
        if !world.contains(cell.0 as i64, cell.1 as i64) {
            return Err(LocomotionError::OutOfBounds(cell.0 as i64, cell.1 as i64));
        }
        if world.is_hole(cell) {
            return Err(LocomotionError::IntoHole { x: cell.0, y: cell.1 });
        }
        Ok(Self {
            cell,
            heading,
            step_count: 0,
        })
    }

    /// Neighbour in direction `h`, if inside the world.
    pub fn neighbour(&self, world: &GridWorld, h: Heading) -> Option<(usize, usize)> {
        let (dx, dy) = h.delta();
        let (x, y) = (self.cell.0 as i64 + dx, self.cell.1 as i64 + dy);
        world.contains(x, y).then_some((x as usize, y as usize))
    }
}

/// Observation of the cell in direction `look`; outside the world counts as a hole.
pub fn sense_ahead(
    sensor: &TerrainSensor,
    world: &GridWorld,
    state: &RobotState,
    look: Look,
    seed: u64,
) -> Result<TerrainObservation> {
    let cell = state.neighbour(world, look.heading(state.heading));
    sensor.sense_cell(world, cell, seed)
}

/// Which cells were sensed, in order, and what they showed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub action: Action,
    pub queries: Vec<(Look, bool)>,
}

/// Forward if ahead is clear, else right if clear, else left if clear, else halt.
/// `sense` is called lazily and returns whether the queried cell is a hole.
pub fn decide<E>(mut sense: impl FnMut(Look) -> std::result::Result<bool, E>) -> std::result::Result<Decision, E> {
    let mut queries = Vec::with_capacity(3);
    for (look, action) in [
        (Look::Ahead, Action::Forward),
        (Look::Right, Action::TurnRight),
        (Look::Left, Action::TurnLeft),
    ] {
        let hole = sense(look)?;
        queries.push((look, hole));
        if !hole {
            return Ok(Decision { action, queries });
        }
    }
    Ok(Decision {
        action: Action::Halt,
        queries,
    })
}

/// Gait emitted for an action; `None` for halt.
pub fn plan_for(action: Action, params: &GaitParams) -> Option<GaitPlan> {
    match action {
        Action::Forward => Some(crawl_cycle_with(params)),
        Action::TurnRight => Some(steer_with(Side::Right, params)),
        Action::TurnLeft => Some(steer_with(Side::Left, params)),
        Action::Halt => None,
    }
}

/// Applies an action; moving forward into a hole or off the grid is refused.
pub fn step(world: &GridWorld, state: &RobotState, action: Action) -> Result<RobotState> {
    let mut next = RobotState {
        step_count: state.step_count + 1,
        ..*state
    };
    match action {
        Action::Forward => {
            let (dx, dy) = state.heading.delta();
            let (x, y) = (state.cell.0 as i64 + dx, state.cell.1 as i64 + dy);
            if !world.contains(x, y) {
                return Err(LocomotionError::OutOfBounds(x, y));
            }
            let cell = (x as usize, y as usize);
            if world.is_hole(cell) {
                return Err(LocomotionError::IntoHole {
                    x: state.cell.0,
                    y: state.cell.1,
                });
            }
            next.cell = cell;
        }
        Action::TurnRight => next.heading = state.heading.right(),
        Action::TurnLeft => next.heading = state.heading.left(),
        Action::Halt => return Err(LocomotionError::Halted),
    }
    Ok(next)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub step: usize,
    /// State in which the decision was made.
    pub state: RobotState,
    pub action: Action,
    pub hole_ahead: bool,
    pub queries: Vec<(Look, bool)>,
    pub confidences: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Episode {
    pub records: Vec<StepRecord>,
    pub final_state: RobotState,
    pub timeline: PressureTimeline,
    pub halted: bool,
}

pub const TRAJECTORY_HEADER: &str = "step,x,y,heading,action,hole_ahead";

impl Episode {
    pub fn trajectory_csv(&self) -> String {
        let mut out = String::from(TRAJECTORY_HEADER);
        out.push('\n');
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.step, r.state.cell.0, r.state.cell.1, r.state.heading, r.action, r.hole_ahead
            );
        }
        out
    }

    /// Cells occupied over the episode, starting position included.
    pub fn visited(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self.records.iter().map(|r| r.state.cell).collect();
        v.push(self.final_state.cell);
        v
    }
}

/// A trajectory row parsed back from CSV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryRow {
    pub step: usize,
    pub x: usize,
    pub y: usize,
    pub heading: Heading,
    pub action: Action,
    pub hole_ahead: bool,
}

pub fn parse_trajectory(text: &str) -> Result<Vec<TrajectoryRow>> {
    let fail = |line: usize, reason: &str| LocomotionError::Parse {
        line,
        column: 1,
        reason: reason.to_string(),
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == TRAJECTORY_HEADER => {}
        _ => return Err(fail(1, "missing trajectory header")),
    }
    lines
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| {
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 6 {
                return Err(fail(i + 1, "expected 6 fields"));
            }
            let n = |v: &str| v.parse::<usize>().map_err(|_| fail(i + 1, "bad integer"));
            Ok(TrajectoryRow {
                step: n(f[0])?,
                x: n(f[1])?,
                y: n(f[2])?,
                heading: f[3]
                    .chars()
                    .next()
                    .and_then(Heading::from_letter)
                    .filter(|_| f[3].len() == 1)
                    .ok_or_else(|| fail(i + 1, "bad heading"))?,
                action: Action::from_name(f[4]).ok_or_else(|| fail(i + 1, "bad action"))?,
                hole_ahead: f[5].parse().map_err(|_| fail(i + 1, "bad flag"))?,
            })
        })
        .collect()
}

/// Seed for query `look` at step `step`.
fn query_seed(seed: u64, step: usize, look: Look) -> u64 {
    let k = match look {
        Look::Ahead => 0,
        Look::Right => 1,
        Look::Left => 2,
    };
    item_seed(seed, (step * 3 + k) as u64)
}

/// Sense, decide and act until `max_steps` actions or a halt.
pub fn run_episode(
    sensor: &TerrainSensor,
    world: &GridWorld,
    start: (usize, usize),
    heading: Heading,
    max_steps: usize,
    seed: u64,
) -> Result<Episode> {
    run_episode_with(sensor, world, start, heading, max_steps, seed, &GaitParams::default())
}

pub fn run_episode_with(
    sensor: &TerrainSensor,
    world: &GridWorld,
    start: (usize, usize),
    heading: Heading,
    max_steps: usize,
    seed: u64,
    gait: &GaitParams,
) -> Result<Episode> {
    gait.validate()?;
    let bounds: ChannelBounds = gait.bounds;
    let mut state = RobotState::new(world, start, heading)?;
    let mut records = Vec::new();
    let mut timeline = PressureTimeline::default();
    let mut halted = false;
    for i in 0..max_steps {
        let mut confidences = Vec::new();
        let decision = decide(|look| -> Result<bool> {
            let obs = sense_ahead(sensor, world, &state, look, query_seed(seed, i, look))?;
            confidences.push(obs.confidence);
            Ok(obs.hole_detected)
        })?;
        records.push(StepRecord {
            step: i,
            state,
            action: decision.action,
            hole_ahead: decision.queries[0].1,
            queries: decision.queries,
            confidences,
        });
        let Some(plan) = plan_for(decision.action, gait) else {
            halted = true;
            break;
        };
        check_plan(&plan, &bounds)?;
        timeline.append(&pressure_timeline(&plan, 1)?);
        state = step(world, &state, decision.action)?;
    }
    Ok(Episode {
        records,
        final_state: state,
        timeline,
        halted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_world() {
        let w = GridWorld::parse("..#\nS.G\n").unwrap();
        assert_eq!((w.width(), w.height()), (3, 2));
        assert_eq!(w.start(), (0, 1));
        assert_eq!(w.goal(), Some((2, 1)));
        assert!(w.is_hole((2, 0)));
        assert_eq!(GridWorld::parse(&w.to_text()).unwrap(), w);
    }

    #[test]
    fn parse_errors_carry_position() {
        match GridWorld::parse("...\n.x.\nS..").unwrap_err() {
            LocomotionError::Parse { line, column, .. } => assert_eq!((line, column), (2, 2)),
            e => panic!("{e}"),
        }
        match GridWorld::parse("...\n..\nS..").unwrap_err() {
            LocomotionError::Parse { line, .. } => assert_eq!(line, 2),
            e => panic!("{e}"),
        }
        assert!(GridWorld::parse("...\n...").is_err());
        assert!(GridWorld::parse("S.S").is_err());
        assert!(GridWorld::parse("").is_err());
    }

    #[test]
    fn headings_compose() {
        for h in [Heading::North, Heading::East, Heading::South, Heading::West] {
            assert_eq!(h.left().left().right().right(), h);
            assert_eq!(h.right().left(), h);
        }
    }

    #[test]
    fn forward_moves_one_cell() {
        let w = GridWorld::new(5, 5, BTreeSet::new(), (2, 3), None).unwrap();
        let s = RobotState::new(&w, (2, 3), Heading::East).unwrap();
        assert_eq!(step(&w, &s, Action::Forward).unwrap().cell, (3, 3));
        let edge = RobotState::new(&w, (4, 3), Heading::East).unwrap();
        assert!(matches!(
            step(&w, &edge, Action::Forward),
            Err(LocomotionError::OutOfBounds(5, 3))
        ));
    }

    #[test]
    fn forward_into_hole_refused() {
        let holes: BTreeSet<_> = [(1, 0)].into_iter().collect();
        let w = GridWorld::new(3, 1, holes, (0, 0), None).unwrap();
        let s = RobotState::new(&w, (0, 0), Heading::East).unwrap();
        assert!(matches!(
            step(&w, &s, Action::Forward),
            Err(LocomotionError::IntoHole { .. })
        ));
    }

    #[test]
    fn decide_is_lazy_and_ordered() {
        let run = |ahead, right, left| {
            let mut asked = Vec::new();
            let d = decide(|look| -> std::result::Result<bool, ()> {
                asked.push(look);
                Ok(match look {
                    Look::Ahead => ahead,
                    Look::Right => right,
                    Look::Left => left,
                })
            })
            .unwrap();
            (d.action, asked)
        };
        assert_eq!(run(false, true, true), (Action::Forward, vec![Look::Ahead]));
        assert_eq!(
            run(true, false, true),
            (Action::TurnRight, vec![Look::Ahead, Look::Right])
        );
        assert_eq!(
            run(true, true, false),
            (Action::TurnLeft, vec![Look::Ahead, Look::Right, Look::Left])
        );
        assert_eq!(run(true, true, true).0, Action::Halt);
    }

    #[test]
    fn null_image_is_hole() {
        let img = DifferenceImage::new(WIDTH, HEIGHT, vec![0.0; WIDTH * HEIGHT])
            .unwrap()
            .masked(DEFAULT_MASK_FRACTION)
            .unwrap();
        assert_eq!(detect_hole(&img), (true, 1.0));
        let floor = DifferenceImage::new(WIDTH, HEIGHT, vec![0.07; WIDTH * HEIGHT])
            .unwrap()
            .masked(DEFAULT_MASK_FRACTION)
            .unwrap();
        assert_eq!(detect_hole(&floor), (false, 1.0));
    }

    #[test]
    fn trajectory_round_trip() {
        let text = "step,x,y,heading,action,hole_ahead\n0,1,2,E,forward,false\n1,2,2,E,halt,true\n";
        let rows = parse_trajectory(text).unwrap();
        assert_eq!(rows[1].action, Action::Halt);
        assert!(rows[1].hole_ahead);
        assert!(parse_trajectory("step\n").is_err());
    }

    #[test]
    fn random_worlds_keep_start_clear() {
        for s in 0..20 {
            let w = GridWorld::random(6, 6, 0.3, s).unwrap();
            assert!(!w.is_hole(w.start()));
        }
    }
}
