use sucker_core::locomotion::*;

fn policy_respected(e: &Episode) -> bool {
    e.records.iter().all(|r| {
        let q = &r.queries;
        let ahead_first = q.first().map(|x| x.0) == Some(Look::Ahead);
        let right_ok = q.len() < 2 || (q[0].1 && q[1].0 == Look::Right);
        let left_ok = q.len() < 3 || (q[1].1 && q[2].0 == Look::Left);
        let action_ok = match r.action {
            Action::Forward => q.len() == 1 && !q[0].1,
            Action::TurnRight => q.len() == 2 && !q[1].1,
            Action::TurnLeft => q.len() == 3 && !q[2].1,
            Action::Halt => q.len() == 3 && q.iter().all(|x| x.1),
        };
        ahead_first && right_ok && left_ok && action_ok && q.len() <= 3
    })
}

#[test]
fn random_worlds_are_safe_and_follow_the_policy() {
    let sensor = TerrainSensor::default();
    for k in 0..12 {
        let mut world = GridWorld::random(7, 7, 0.3, 500 + k).unwrap();
        if k % 3 == 1 {
            world.floor = FloorTexture::Sandpaper(60);
        }
        let e = run_episode(&sensor, &world, world.start(), Heading::East, 12, k).unwrap();
        assert!(e.visited().iter().all(|&c| !world.is_hole(c)), "world {k}");
        assert!(policy_respected(&e), "world {k}");
    }
}

#[test]
fn reruns_are_identical() {
    let sensor = TerrainSensor::default();
    let world = GridWorld::random(6, 6, 0.25, 99).unwrap();
    let a = run_episode(&sensor, &world, world.start(), Heading::North, 10, 3).unwrap();
    let b = run_episode(&sensor, &world, world.start(), Heading::North, 10, 3).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.trajectory_csv(), b.trajectory_csv());
    assert_eq!(a.timeline.to_csv(), b.timeline.to_csv());
}

#[test]
fn trajectory_round_trip() {
    let sensor = TerrainSensor::default();
    let world = GridWorld::parse("S..#\n.#..\n....\n").unwrap();
    let e = run_episode(&sensor, &world, world.start(), Heading::East, 8, 1).unwrap();
    let text = e.trajectory_csv();
    let rows = parse_trajectory(&text).unwrap();
    assert_eq!(rows.len(), e.records.len());
    for (row, rec) in rows.iter().zip(&e.records) {
        assert_eq!((row.x, row.y), rec.state.cell);
        assert_eq!(row.heading, rec.state.heading);
        assert_eq!(row.action, rec.action);
        assert_eq!(row.hole_ahead, rec.hole_ahead);
    }
    assert!(parse_trajectory("step,x\n").is_err());
}

#[test]
fn boxed_in_robot_halts() {
    let sensor = TerrainSensor::default();
    let world = GridWorld::parse("###\n#S#\n###\n").unwrap();
    let e = run_episode(&sensor, &world, world.start(), Heading::East, 5, 0).unwrap();
    assert!(e.halted);
    assert_eq!(e.records.len(), 1);
    assert_eq!(e.records[0].action, Action::Halt);
    // The grid edge reads as a drop too.
    let edge = GridWorld::parse("S\n").unwrap();
    let e = run_episode(&sensor, &edge, edge.start(), Heading::South, 5, 0).unwrap();
    assert!(e.halted);
}

#[test]
fn corridor_turns_at_the_wall() {
    let sensor = TerrainSensor::default();
    let world = GridWorld::parse("S..\n##.\n").unwrap();
    let e = run_episode(&sensor, &world, world.start(), Heading::East, 4, 2).unwrap();
    let actions: Vec<Action> = e.records.iter().map(|r| r.action).collect();
    assert_eq!(
        actions,
        vec![Action::Forward, Action::Forward, Action::TurnRight, Action::Forward]
    );
    assert_eq!(e.final_state.cell, (2, 1));
}

#[test]
fn hole_images_read_as_null_signal() {
    let sensor = TerrainSensor::default();
    let mut world = GridWorld::parse("S#\n").unwrap();
    for floor in [
        FloorTexture::Smooth,
        FloorTexture::Sandpaper(36),
        FloorTexture::Sandpaper(400),
    ] {
        world.floor = floor;
        let hole = sensor.sense_cell(&world, Some((1, 0)), 4).unwrap();
        assert!(hole.hole_detected);
        let floor_obs = sensor.sense_cell(&world, Some((0, 0)), 4).unwrap();
        assert!(!floor_obs.hole_detected, "{floor:?}");
        assert!(null_fraction(&floor_obs.image) < HOLE_FRACTION);
    }
    assert!(sensor.sense_cell(&world, None, 4).unwrap().hole_detected);
}

#[test]
fn world_text_round_trip() {
    for seed in 0..20 {
        let w = GridWorld::random(9, 5, 0.3, seed).unwrap();
        assert_eq!(GridWorld::parse(&w.to_text()).unwrap(), w);
    }
}
