//! Event-driven step dynamics: nucleated islands spread at unit speed,
//! colliding up/down step pairs annihilate. This is the direct simulation
//! of the growth rule, used as an independent route against the RSK
//! construction. Cost is quadratic in the point count; fine for the
//! small configurations it cross-checks.

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Up,   // moves left
    Down, // moves right
}

#[derive(Debug, Clone, Copy)]
struct Step {
    kind: Kind,
    x0: f64,
    t0: f64,
}

impl Step {
    fn pos(&self, t: f64) -> f64 {
        match self.kind {
            Kind::Up => self.x0 - (t - self.t0),
            Kind::Down => self.x0 + (t - self.t0),
        }
    }
}

/// Result of running the dynamics to a horizon: the annihilation events
/// (space-time points where a down step met an up step) and the surviving
/// steps frozen at the horizon.
#[derive(Debug, Clone)]
pub struct StepRun {
    pub annihilations: Vec<(f64, f64)>,
    survivors: Vec<Step>,
    horizon: f64,
}

impl StepRun {
    /// Height at `(x, t)` for `t` at the run horizon: number of up steps
    /// to the left of `x` minus down steps to the left of `x`.
    pub fn height_at(&self, x: f64) -> i64 {
        let mut h = 0i64;
        for s in &self.survivors {
            if s.pos(self.horizon) < x {
                h += match s.kind {
                    Kind::Up => 1,
                    Kind::Down => -1,
                };
            }
        }
        h
    }
}

/// Run the step dynamics for nucleations `points = [(x, t), ...]` up to
/// time `t_end`. Nucleations after `t_end` are ignored.
pub fn run_steps(points: &[(f64, f64)], t_end: f64) -> StepRun {
    let mut nucleations: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(_, t)| t <= t_end)
        .collect();
    nucleations.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());

    // steps kept sorted by current position; relative order only changes
    // at events
    let mut steps: Vec<Step> = Vec::new();
    let mut annihilations = Vec::new();
    let mut now = 0.0f64;
    let mut next_nuc = 0usize;

    loop {
        // earliest adjacent (down, up) collision after `now`
        let mut coll: Option<(f64, usize)> = None;
        for i in 0..steps.len().saturating_sub(1) {
            if steps[i].kind == Kind::Down && steps[i + 1].kind == Kind::Up {
                let gap = steps[i + 1].pos(now) - steps[i].pos(now);
                let tc = now + 0.5 * gap;
                if coll.map_or(true, |(t, _)| tc < t) {
                    coll = Some((tc, i));
                }
            }
        }
        let nuc_time = nucleations.get(next_nuc).map(|&(_, t)| t);

        match (coll, nuc_time) {
            (Some((tc, i)), nt) if tc <= t_end && nt.map_or(true, |t| tc <= t) => {
                let xc = 0.5 * (steps[i].pos(tc) + steps[i + 1].pos(tc));
                annihilations.push((xc, tc));
                steps.drain(i..i + 2);
                now = tc;
            }
            (_, Some(nt)) if nt <= t_end => {
                let (x, t) = nucleations[next_nuc];
                next_nuc += 1;
                now = t;
                let idx = steps
                    .iter()
                    .position(|s| s.pos(now) > x)
                    .unwrap_or(steps.len());
                steps.insert(idx, Step { kind: Kind::Down, x0: x, t0: t });
                steps.insert(idx, Step { kind: Kind::Up, x0: x, t0: t });
            }
            _ => break,
        }
    }

    StepRun { annihilations, survivors: steps, horizon: t_end }
}

/// Height at a generic point `(x, t)` by direct simulation.
pub fn height_by_steps(points: &[(f64, f64)], x: f64, t: f64) -> i64 {
    run_steps(points, t).height_at(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_island() {
        let pts = [(0.0, 1.0)];
        assert_eq!(height_by_steps(&pts, 0.1, 2.0), 1);
        assert_eq!(height_by_steps(&pts, 1.5, 2.0), 0);
        assert_eq!(height_by_steps(&pts, -0.9, 2.0), 1);
        assert_eq!(height_by_steps(&pts, 0.0, 0.5), 0);
    }

    #[test]
    fn two_islands_merge() {
        // nucleations at x = -1 and x = 1 at time 0.25; fronts meet at
        // x = 0, t = 1.25
        let pts = [(-1.0, 0.25), (1.0, 0.25)];
        let run = run_steps(&pts, 3.0);
        assert_eq!(run.annihilations.len(), 1);
        let (xc, tc) = run.annihilations[0];
        assert!((xc - 0.0).abs() < 1e-12);
        assert!((tc - 1.25).abs() < 1e-12);
        // after the merge the profile is a single island of height 1
        assert_eq!(run.height_at(0.0), 1);
    }

    #[test]
    fn stacked_nucleation_gives_height_two() {
        // second nucleation lands on top of the first island
        let pts = [(0.0, 0.5), (0.05, 1.0)];
        assert_eq!(height_by_steps(&pts, 0.05, 1.2), 2);
        // first island spans [-0.7, 0.7] at t = 1.2
        assert_eq!(height_by_steps(&pts, 0.6, 1.2), 1);
        assert_eq!(height_by_steps(&pts, 0.8, 1.2), 0);
    }

    #[test]
    fn height_matches_longest_chain_dp() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.gen_range(1..=7);
            let pts: Vec<(f64, f64)> = (0..n)
                .map(|_| (rng.gen_range(-2.0..2.0), rng.gen_range(0.0..2.0)))
                .collect();
            let x = rng.gen_range(-0.5..0.5);
            let t = 2.5;
            let direct = height_by_steps(&pts, x, t);
            let chain = crate::png_sim::height(&pts, x, t);
            assert_eq!(direct, chain, "points {pts:?} at ({x}, {t})");
        }
    }
}
