//! Droplet growth dynamics driven by unit-density Poisson nucleations in
//! space-time.  Islands spread deterministically at unit speed, merge on
//! contact within a level, and nucleations on top of existing plateaus
//! start the next level, so the height profile is a stack of nested
//! plateaus.  The height above the origin at the final time equals the
//! longest increasing chain through the nucleation events in light-cone
//! coordinates, which ties the growth model to the point-process samplers.

use super::{trial_rng, unit};
use crate::combinat::SymmetryClass;
use crate::montecarlo::points::PointConfig;
use crate::{Error, Result};
use rand_chacha::ChaCha8Rng;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Largest supported growth time; beyond this the event count (about
/// T^2 / 2) makes exact event-driven simulation needlessly slow.
pub const MAX_TIME: f64 = 40.0;

/// The state of one droplet simulation at its final time.
#[derive(Debug, Clone, PartialEq)]
pub struct PngSurface {
    /// Final time of the evolution.
    pub time: f64,
    /// Nucleation events (position, time), sorted by time then position.
    pub nucleations: Vec<(f64, f64)>,
    /// Height at the origin at the final time.
    pub height_at_origin: u64,
    /// Height profile at the final time: `(x, h)` breakpoints, giving the
    /// height on `[x, next x)`; the profile starts at `(-time, 0)` level
    /// changes and is 0 outside `[-time, time]`.
    pub profile: Vec<(f64, u64)>,
}

impl PngSurface {
    /// Height at position x at the final time, from the stored profile.
    pub fn height_at(&self, x: f64) -> u64 {
        if x.abs() > self.time {
            return 0;
        }
        let mut h = 0;
        for &(bx, bh) in &self.profile {
            if bx > x {
                break;
            }
            h = bh;
        }
        h
    }

    /// The nucleation events mapped to the unit square by light-cone
    /// coordinates u = (t + x) / T, v = (t - x) / T.  The height at the
    /// origin is the longest increasing chain through this configuration.
    pub fn light_cone_square(&self) -> PointConfig {
        let pts = self
            .nucleations
            .iter()
            .map(|&(x, t)| ((t + x) / self.time, (t - x) / self.time))
            .collect();
        PointConfig::from_parts(SymmetryClass::Plain, pts, 0, 0)
    }
}

pub(crate) fn validate_time(t_max: f64) -> Result<()> {
    if !t_max.is_finite() || t_max <= 0.0 || t_max > MAX_TIME {
        return Err(Error::Domain(format!(
            "growth time must lie in (0, {MAX_TIME}], got {t_max}"
        )));
    }
    Ok(())
}

/// One island on a level: covers [a - (t - t0), b + (t - t0)] at time t,
/// recorded through the invariant edges A = a and B = b with
/// left edge x = A - t and right edge x = B + t.
#[derive(Debug, Clone)]
struct Island {
    a: f64,
    b: f64,
    alive: bool,
    left: Option<usize>,
    right: Option<usize>,
}

#[derive(Debug, Default)]
struct Level {
    islands: Vec<Island>,
    first: Option<usize>,
}

impl Level {
    fn covers(&self, x: f64, t: f64) -> bool {
        let mut cur = self.first;
        while let Some(i) = cur {
            let isl = &self.islands[i];
            if isl.a - t > x {
                return false;
            }
            if isl.b + t >= x {
                return true;
            }
            cur = isl.right;
        }
        false
    }
}

/// A scheduled merge of two adjacent islands on one level.
#[derive(Debug, PartialEq)]
struct Collision {
    time: f64,
    level: usize,
    left: usize,
    right: usize,
}

impl Eq for Collision {}

impl Ord for Collision {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.time
            .total_cmp(&other.time)
            .then(self.level.cmp(&other.level))
            .then(self.left.cmp(&other.left))
            .then(self.right.cmp(&other.right))
    }
}

impl PartialOrd for Collision {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Runs the growth dynamics to time `t_max` for the given nucleation
/// events.  Events must satisfy |x| <= t <= t_max (nucleations happen on
/// the spreading droplet).  Intended for crafted deterministic inputs;
/// random surfaces come from `png_simulate`.
pub fn png_from_events(t_max: f64, events: &[(f64, f64)]) -> Result<PngSurface> {
    validate_time(t_max)?;
    for &(x, t) in events {
        if !x.is_finite() || !t.is_finite() || x.abs() > t || t > t_max {
            return Err(Error::Domain(format!(
                "nucleation ({x}, {t}) outside the droplet region |x| <= t <= {t_max}"
            )));
        }
    }
    let mut sorted: Vec<(f64, f64)> = events.to_vec();
    sorted.sort_by(|p, q| (p.1, p.0).partial_cmp(&(q.1, q.0)).expect("finite events"));
    Ok(evolve(t_max, sorted))
}

/// Samples Poisson nucleations in the backward light cone of the origin at
/// time `t_max` and runs the growth dynamics.
pub fn png_simulate(t_max: f64, seed: u64) -> Result<PngSurface> {
    validate_time(t_max)?;
    let mut rng = trial_rng(seed, 0);
    Ok(png_simulate_with(&mut rng, t_max))
}

pub(crate) fn png_simulate_with(rng: &mut ChaCha8Rng, t_max: f64) -> PngSurface {
    // Unit-density Poisson points in the backward light cone of (0, t_max):
    // a square of side t_max / sqrt(2) in the rotated coordinates
    // u = (t + x) / sqrt(2), v = (t - x) / sqrt(2).
    let side = t_max / std::f64::consts::SQRT_2;
    let n = super::poisson(rng, side * side);
    let mut events = Vec::with_capacity(n);
    for _ in 0..n {
        let u = unit(rng) * side;
        let v = unit(rng) * side;
        let x = (u - v) / std::f64::consts::SQRT_2;
        let t = (u + v) / std::f64::consts::SQRT_2;
        events.push((x, t));
    }
    events.sort_by(|p, q| (p.1, p.0).partial_cmp(&(q.1, q.0)).expect("finite events"));
    evolve(t_max, events)
}

fn evolve(t_max: f64, events: Vec<(f64, f64)>) -> PngSurface {
    let mut levels: Vec<Level> = Vec::new();
    let mut heap: BinaryHeap<Reverse<Collision>> = BinaryHeap::new();
    let mut next_event = 0usize;

    loop {
        let coll_time = heap.peek().map(|Reverse(c)| c.time);
        let nucl_time = events.get(next_event).map(|e| e.1);
        match (coll_time, nucl_time) {
            (None, None) => break,
            (Some(ct), nt) if nt.is_none() || ct <= nt.unwrap() => {
                let Reverse(c) = heap.pop().expect("peeked");
                merge_if_current(&mut levels, &mut heap, c, t_max);
            }
            _ => {
                let (x, t) = events[next_event];
                next_event += 1;
                nucleate(&mut levels, &mut heap, x, t, t_max);
            }
        }
    }

    let height_at_origin = height_query(&levels, 0.0, t_max);
    let profile = build_profile(&levels, t_max);
    PngSurface {
        time: t_max,
        nucleations: events,
        height_at_origin,
        profile,
    }
}

fn merge_if_current(
    levels: &mut [Level],
    heap: &mut BinaryHeap<Reverse<Collision>>,
    c: Collision,
    t_max: f64,
) {
    let level = &mut levels[c.level];
    let (li, ri) = (c.left, c.right);
    let current = level.islands[li].alive
        && level.islands[ri].alive
        && level.islands[li].right == Some(ri);
    if !current {
        return;
    }
    level.islands[li].b = level.islands[ri].b;
    level.islands[ri].alive = false;
    let rr = level.islands[ri].right;
    level.islands[li].right = rr;
    if let Some(rr) = rr {
        level.islands[rr].left = Some(li);
        let t = (level.islands[rr].a - level.islands[li].b) / 2.0;
        if t <= t_max {
            heap.push(Reverse(Collision {
                time: t,
                level: c.level,
                left: li,
                right: rr,
            }));
        }
    }
}

fn height_query(levels: &[Level], x: f64, t: f64) -> u64 {
    let mut h = 0;
    while (h as usize) < levels.len() && levels[h as usize].covers(x, t) {
        h += 1;
    }
    h
}

fn nucleate(
    levels: &mut Vec<Level>,
    heap: &mut BinaryHeap<Reverse<Collision>>,
    x: f64,
    t: f64,
    t_max: f64,
) {
    // The new island sits one level above the current local height.
    let h = height_query(levels, x, t) as usize;
    if h == levels.len() {
        levels.push(Level::default());
    }
    let level = &mut levels[h];
    let id = level.islands.len();
    // Find the neighbours: alive islands strictly left and right of x.
    let mut prev = None;
    let mut cur = level.first;
    while let Some(i) = cur {
        if level.islands[i].b + t < x {
            prev = cur;
            cur = level.islands[i].right;
        } else {
            break;
        }
    }
    level.islands.push(Island {
        a: x + t,
        b: x - t,
        alive: true,
        left: prev,
        right: cur,
    });
    match prev {
        Some(p) => {
            level.islands[p].right = Some(id);
            let ct = (level.islands[id].a - level.islands[p].b) / 2.0;
            if ct <= t_max {
                heap.push(Reverse(Collision {
                    time: ct,
                    level: h,
                    left: p,
                    right: id,
                }));
            }
        }
        None => level.first = Some(id),
    }
    if let Some(n) = cur {
        level.islands[n].left = Some(id);
        let ct = (level.islands[n].a - level.islands[id].b) / 2.0;
        if ct <= t_max {
            heap.push(Reverse(Collision {
                time: ct,
                level: h,
                left: id,
                right: n,
            }));
        }
    }
}

fn build_profile(levels: &[Level], t: f64) -> Vec<(f64, u64)> {
    // Island footprints are nested across levels, so sweeping all edges and
    // counting covering levels gives the height.
    let mut edges: Vec<(f64, i64)> = Vec::new();
    for level in levels {
        let mut cur = level.first;
        while let Some(i) = cur {
            let isl = &level.islands[i];
            edges.push((isl.a - t, 1));
            edges.push((isl.b + t, -1));
            cur = isl.right;
        }
    }
    edges.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)));
    let mut profile = vec![(-t, 0u64)];
    let mut h = 0i64;
    let mut i = 0;
    while i < edges.len() {
        let x = edges[i].0;
        while i < edges.len() && edges[i].0 == x {
            h += edges[i].1;
            i += 1;
        }
        let last = profile.last_mut().expect("sentinel present");
        if last.0 == x {
            last.1 = h as u64;
        } else if last.1 != h as u64 {
            profile.push((x, h as u64));
        }
    }
    profile
}
