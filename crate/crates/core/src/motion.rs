//! The planar motion with four orthogonal directions.
//!
//! Paths are simulated exactly: only the switch epochs and the directions
//! taken are stored, positions are integrated on demand.

use crate::error::{domain, invalid, Result};
use crate::rng::{exponential, uniform};
use crate::telegraph::Telegraph;
use rand::Rng;
use serde::Serialize;
use std::fmt;

/// `(lambda, p, c)`: switching intensity, turning probability and speed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    pub lambda: f64,
    pub p: f64,
    pub c: f64,
}

impl ModelParams {
    pub fn new(lambda: f64, p: f64, c: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(invalid(format!("lambda must be positive, got {lambda}")));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(invalid(format!("p must lie in (0, 1), got {p}")));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(invalid(format!("c must be positive, got {c}")));
        }
        Ok(Self { lambda, p, c })
    }

    /// `U`, rate `lambda (1 - p)`, speed `c / 2`; `X + Y = 2U`.
    pub fn diagonal_component(&self) -> Telegraph {
        Telegraph {
            rate: self.lambda * (1.0 - self.p),
            speed: 0.5 * self.c,
        }
    }

    /// `V`, rate `lambda p`, speed `c / 2`; `X - Y = 2V`.
    pub fn antidiagonal_component(&self) -> Telegraph {
        Telegraph {
            rate: self.lambda * self.p,
            speed: 0.5 * self.c,
        }
    }
}

/// One of the directions `d_j = (cos(pi j / 2), sin(pi j / 2))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Direction(u8);

impl Direction {
    pub const EAST: Direction = Direction(0);
    pub const NORTH: Direction = Direction(1);
    pub const WEST: Direction = Direction(2);
    pub const SOUTH: Direction = Direction(3);
    pub const ALL: [Direction; 4] = [Self::EAST, Self::NORTH, Self::WEST, Self::SOUTH];

    pub fn from_index(j: usize) -> Direction {
        Direction((j % 4) as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_horizontal(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn counterclockwise(self) -> Direction {
        Direction((self.0 + 1) % 4)
    }

    pub fn clockwise(self) -> Direction {
        Direction((self.0 + 3) % 4)
    }

    /// Unit vector; exact integers, no trigonometry.
    pub fn unit(self) -> (f64, f64) {
        match self.0 {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Direction after a switch, driven by a uniform `u` in `[0, 1)`.
///
/// From a horizontal direction `u < p` turns counterclockwise, otherwise
/// clockwise; from a vertical direction `u < p` turns clockwise.
pub fn next_direction(current: Direction, u: f64, p: f64) -> Direction {
    let first = u < p;
    if current.is_horizontal() == first {
        current.counterclockwise()
    } else {
        current.clockwise()
    }
}

/// A point of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    /// `(x + y, x - y)`
    pub fn rotated(&self) -> (f64, f64) {
        (self.x + self.y, self.x - self.y)
    }

    /// Membership in `{|x + y| <= r, |x - y| <= r}` with slack `tol`.
    pub fn in_square(&self, r: f64, tol: f64) -> bool {
        let (xi, eta) = self.rotated();
        xi.abs() <= r + tol && eta.abs() <= r + tol
    }
}

/// Where a path ends relative to the support square.
///
/// `Side(k)` is the open side reached by alternating `d_k` and `d_{k+1}`:
/// 0 is `x + y = ct`, 1 is `y - x = ct`, 2 is `x + y = -ct`, 3 is `x - y = ct`.
/// `Vertex(k)` is `c t d_k`, reached when no switch occurs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BoundaryClass {
    Interior,
    Side(u8),
    Vertex(u8),
}

/// A simulated trajectory on `[0, horizon]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSample {
    pub horizon: f64,
    pub initial_direction: Direction,
    /// Strictly increasing, all in `(0, horizon)`.
    pub switch_times: Vec<f64>,
    /// Direction taken at the corresponding switch.
    pub directions_after: Vec<Direction>,
}

impl PathSample {
    pub fn switch_count(&self) -> usize {
        self.switch_times.len()
    }

    /// `(start, end, direction)` for each run up to `tau`.
    pub fn segments(&self, tau: f64) -> impl Iterator<Item = (f64, f64, Direction)> + '_ {
        let n = self.switch_times.len();
        (0..=n).map_while(move |i| {
            let start = if i == 0 { 0.0 } else { self.switch_times[i - 1] };
            if start >= tau && i > 0 {
                return None;
            }
            let end = if i == n { tau } else { self.switch_times[i].min(tau) };
            let dir = if i == 0 {
                self.initial_direction
            } else {
                self.directions_after[i - 1]
            };
            Some((start, end, dir))
        })
    }

    /// Time spent in each of the four directions up to `tau`.
    pub fn time_per_direction(&self, tau: f64) -> [f64; 4] {
        let mut acc = [0.0; 4];
        for (start, end, dir) in self.segments(tau) {
            acc[dir.index()] += end - start;
        }
        acc
    }

    /// Position at time `tau` in `[0, horizon]`.
    pub fn position_at(&self, params: &ModelParams, tau: f64) -> Result<PlanarPoint> {
        if !(0.0..=self.horizon).contains(&tau) {
            return Err(domain(format!(
                "tau = {tau} outside [0, {}]",
                self.horizon
            )));
        }
        let d = self.time_per_direction(tau);
        Ok(PlanarPoint {
            x: params.c * (d[0] - d[2]),
            y: params.c * (d[1] - d[3]),
        })
    }

    /// Total time spent moving vertically.
    pub fn occupation_vertical(&self) -> f64 {
        let d = self.time_per_direction(self.horizon);
        d[1] + d[3]
    }

    pub fn classify_boundary(&self) -> BoundaryClass {
        if self.switch_times.is_empty() {
            return BoundaryClass::Vertex(self.initial_direction.0);
        }
        let mut used = [false; 4];
        used[self.initial_direction.index()] = true;
        for d in &self.directions_after {
            used[d.index()] = true;
        }
        if used.iter().filter(|&&u| u).count() != 2 {
            return BoundaryClass::Interior;
        }
        // two directions used without reversals are contiguous: {k, k + 1}
        (0..4u8)
            .find(|&k| used[k as usize] && used[((k + 1) % 4) as usize])
            .map(BoundaryClass::Side)
            .unwrap_or(BoundaryClass::Interior)
    }
}

/// Exact simulation of the direction process on `[0, t]`.
pub fn sample_path<R: Rng + ?Sized>(params: &ModelParams, t: f64, rng: &mut R) -> PathSample {
    let initial = Direction::from_index((uniform(rng) * 4.0) as usize);
    let mut switch_times = Vec::new();
    let mut directions_after = Vec::new();
    let mut current = initial;
    let mut clock = 0.0;
    loop {
        clock += exponential(rng, params.lambda);
        if clock >= t {
            break;
        }
        current = next_direction(current, uniform(rng), params.p);
        switch_times.push(clock);
        directions_after.push(current);
    }
    PathSample {
        horizon: t,
        initial_direction: initial,
        switch_times,
        directions_after,
    }
}

/// Position at `t` of a directly simulated path.
pub fn sample_planar_direct<R: Rng + ?Sized>(
    params: &ModelParams,
    t: f64,
    rng: &mut R,
) -> PlanarPoint {
    let path = sample_path(params, t, rng);
    path.position_at(params, t).expect("t is the path horizon")
}

/// `(U + V, U - V)` with independent telegraph components, each simulated
/// event by event.
pub fn sample_planar_decomposed<R: Rng + ?Sized>(
    params: &ModelParams,
    t: f64,
    rng: &mut R,
) -> PlanarPoint {
    let u = params.diagonal_component().sample(t, rng).position;
    let v = params.antidiagonal_component().sample(t, rng).position;
    PlanarPoint { x: u + v, y: u - v }
}

/// Same law as [`sample_planar_decomposed`], with the components drawn by
/// the O(1) spacings sampler. Meant for large `lambda t`.
pub fn sample_planar_decomposed_fast<R: Rng + ?Sized>(
    params: &ModelParams,
    t: f64,
    rng: &mut R,
) -> PlanarPoint {
    let u = params.diagonal_component().sample_by_spacings(t, rng).position;
    let v = params.antidiagonal_component().sample_by_spacings(t, rng).position;
    PlanarPoint { x: u + v, y: u - v }
}

/// Writes paths in the `path_id,event_index,time,direction` CSV format.
///
/// Event 0 is the initial direction at time 0.
pub fn write_paths_csv<W: std::io::Write + ?Sized>(
    out: &mut W,
    paths: impl IntoIterator<Item = (u64, PathSample)>,
) -> std::io::Result<()> {
    writeln!(out, "path_id,event_index,time,direction")?;
    for (id, path) in paths {
        writeln!(out, "{id},0,{:.16e},{}", 0.0, path.initial_direction)?;
        for (i, (time, dir)) in path
            .switch_times
            .iter()
            .zip(&path.directions_after)
            .enumerate()
        {
            writeln!(out, "{id},{},{time:.16e},{dir}", i + 1)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{derive_stream, scripted::ScriptedRng};

    fn params(lambda: f64, p: f64, c: f64) -> ModelParams {
        ModelParams::new(lambda, p, c).unwrap()
    }

    fn path(initial: usize, steps: &[(f64, usize)], horizon: f64) -> PathSample {
        PathSample {
            horizon,
            initial_direction: Direction::from_index(initial),
            switch_times: steps.iter().map(|s| s.0).collect(),
            directions_after: steps.iter().map(|s| Direction::from_index(s.1)).collect(),
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(ModelParams::new(0.0, 0.5, 1.0).is_err());
        assert!(ModelParams::new(1.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, 0.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, 0.5, -1.0).is_err());
    }

    #[test]
    fn switching_rule() {
        let d = Direction::from_index;
        assert_eq!(next_direction(d(0), 0.3, 0.9), d(1));
        assert_eq!(next_direction(d(1), 0.3, 0.9), d(0));
        assert_eq!(next_direction(d(2), 0.95, 0.9), d(1));
        assert_eq!(next_direction(d(2), 0.3, 0.9), d(3));
        assert_eq!(next_direction(d(3), 0.3, 0.9), d(2));
        assert_eq!(next_direction(d(3), 0.95, 0.9), d(0));
        assert_eq!(next_direction(d(0), 0.95, 0.9), d(3));
    }

    #[test]
    fn empirical_transitions_match_generator_rows() {
        // Row j of the generator divided by lambda gives the jump probabilities.
        let p = 0.3;
        let q = 1.0 - p;
        let jump = [
            [0.0, p, 0.0, q],
            [p, 0.0, q, 0.0],
            [0.0, q, 0.0, p],
            [q, 0.0, p, 0.0],
        ];
        let n = 1_000_000;
        let mut rng = derive_stream(3, 0);
        for (j, row) in jump.iter().enumerate() {
            let mut counts = [0usize; 4];
            for _ in 0..n {
                counts[next_direction(Direction::from_index(j), uniform(&mut rng), p).index()] += 1;
            }
            for k in 0..4 {
                let f = counts[k] as f64 / n as f64;
                let sd = (row[k] * (1.0 - row[k]) / n as f64).sqrt();
                assert!((f - row[k]).abs() <= 4.0 * sd + 1e-12, "{j}->{k}");
            }
        }
    }

    #[test]
    fn no_switch_path_ends_on_vertex() {
        // initial direction u = 0.3 -> d1, waiting time -ln(0.01) > t
        let mut rng = ScriptedRng::from_uniforms(&[0.3, 0.99]);
        let pr = params(1.0, 0.5, 2.0);
        let path = sample_path(&pr, 1.0, &mut rng);
        assert!(path.switch_times.is_empty());
        assert_eq!(path.initial_direction, Direction::NORTH);
        let end = path.position_at(&pr, 1.0).unwrap();
        assert_eq!((end.x, end.y), (0.0, 2.0));
        assert_eq!(path.classify_boundary(), BoundaryClass::Vertex(1));
    }

    #[test]
    fn sampling_is_deterministic() {
        let pr = params(2.0, 0.3, 1.0);
        let a = sample_path(&pr, 1.5, &mut derive_stream(42, 17));
        let b = sample_path(&pr, 1.5, &mut derive_stream(42, 17));
        assert_eq!(a, b);
        let a = sample_planar_decomposed(&pr, 1.5, &mut derive_stream(42, 17));
        let b = sample_planar_decomposed(&pr, 1.5, &mut derive_stream(42, 17));
        assert_eq!(a, b);
    }

    #[test]
    fn positions_of_simple_paths() {
        let pr = params(1.0, 0.5, 1.0);
        let p = path(0, &[(0.2, 1), (0.5, 0), (0.7, 1)], 1.0);
        let origin = p.position_at(&pr, 0.0).unwrap();
        assert_eq!((origin.x, origin.y), (0.0, 0.0));
        for &tau in &[0.1, 0.3, 0.6, 0.8, 1.0] {
            let pt = p.position_at(&pr, tau).unwrap();
            assert!((pt.x + pt.y - tau).abs() < 1e-12);
        }
        assert_eq!(p.classify_boundary(), BoundaryClass::Side(0));
        assert!(p.position_at(&pr, 1.5).is_err());
        assert!(p.position_at(&pr, -0.1).is_err());
        let p = path(2, &[], 1.0);
        assert_eq!(p.classify_boundary(), BoundaryClass::Vertex(2));
        let p = path(3, &[(0.4, 0), (0.6, 1)], 1.0);
        assert_eq!(p.classify_boundary(), BoundaryClass::Interior);
        let p = path(0, &[(0.4, 3)], 1.0);
        assert_eq!(p.classify_boundary(), BoundaryClass::Side(3));
    }

    #[test]
    fn occupation_of_trivial_paths() {
        assert_eq!(path(0, &[], 2.0).occupation_vertical(), 0.0);
        assert_eq!(path(3, &[], 2.0).occupation_vertical(), 2.0);
        let p = path(0, &[(0.5, 1), (1.25, 2)], 2.0);
        assert!((p.occupation_vertical() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn decomposed_corner() {
        // U and V both at +ct/2 give the right vertex (ct, 0)
        let c = 2.0;
        let t = 1.0;
        let u = c * t / 2.0;
        let v = c * t / 2.0;
        let pt = PlanarPoint { x: u + v, y: u - v };
        assert_eq!((pt.x, pt.y), (c * t, 0.0));
    }

    #[test]
    fn paths_respect_structure_and_support() {
        let pr = params(3.0, 0.7, 1.5);
        let t = 2.0;
        let mut rng = derive_stream(8, 0);
        for _ in 0..20_000 {
            let path = sample_path(&pr, t, &mut rng);
            let mut prev = path.initial_direction;
            let mut last = 0.0;
            for (&s, &d) in path.switch_times.iter().zip(&path.directions_after) {
                assert!(s > last && s < t);
                let diff = (d.index() + 4 - prev.index()) % 4;
                assert!(diff == 1 || diff == 3, "reversal or no-op");
                prev = d;
                last = s;
            }
            let end = path.position_at(&pr, t).unwrap();
            assert!(end.in_square(pr.c * t, 1e-12));
            let (xi, eta) = end.rotated();
            let ct = pr.c * t;
            match path.classify_boundary() {
                BoundaryClass::Side(0) => assert!((xi - ct).abs() < 1e-12),
                BoundaryClass::Side(1) => assert!((-eta - ct).abs() < 1e-12),
                BoundaryClass::Side(2) => assert!((xi + ct).abs() < 1e-12),
                BoundaryClass::Side(3) => assert!((eta - ct).abs() < 1e-12),
                BoundaryClass::Vertex(k) => {
                    let (ux, uy) = Direction::from_index(k as usize).unit();
                    assert_eq!((end.x, end.y), (ct * ux, ct * uy));
                }
                BoundaryClass::Interior => {
                    assert!(xi.abs() < ct - 1e-12 && eta.abs() < ct - 1e-12)
                }
                BoundaryClass::Side(_) => unreachable!(),
            }
            let occ = path.occupation_vertical();
            assert!((0.0..=t).contains(&occ));
            let dec = sample_planar_decomposed(&pr, t, &mut rng);
            assert!(dec.in_square(pr.c * t, 1e-12));
        }
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_paths_csv(&mut buf, [(4, path(1, &[(0.5, 2)], 1.0))]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "path_id,event_index,time,direction");
        assert_eq!(lines[1], "4,0,0.0000000000000000e0,1");
        assert_eq!(lines[2], "4,1,5.0000000000000000e-1,2");
    }
}
