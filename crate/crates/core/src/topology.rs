//! Ball membership, closure membership and the exterior limit-point test.
//!
//! "No" answers always rest on a certificate (isolation, an exact domain, or a
//! space-specific analytic argument); sampling can only ever produce "Yes".

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::number::{REPORT_BITS, decide, format_rational, int, round_bits, BoundedReal, Cmp3, Decision, Expr, Rational};
use crate::point::Point;
use crate::space::{require_member, rng_for, sample_near_with, Certificate, Metric, SpaceRng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BallKind {
    Open,
    Closed,
}

/// `B(center, radius)` or `B[center, radius]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BallQuery {
    pub center: Point,
    pub radius: Expr,
    pub kind: BallKind,
}

impl BallQuery {
    pub fn new(center: Point, radius: Expr, kind: BallKind) -> Result<Self> {
        if !radius.bounds(round_bits(0)).lo().is_positive() {
            return Err(Error::InvalidParameter("ball radius must be certified positive".into()));
        }
        Ok(Self { center, radius, kind })
    }

    pub fn open(center: Point, radius: Expr) -> Result<Self> {
        Self::new(center, radius, BallKind::Open)
    }

    pub fn closed(center: Point, radius: Expr) -> Result<Self> {
        Self::new(center, radius, BallKind::Closed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

/// One step of a witness sequence: a point and its distance to the target.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessStep {
    pub point: Point,
    pub distance: BoundedReal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopoWitness {
    Sequence(Vec<WitnessStep>),
    Separation {
        #[serde(with = "crate::serde_util")]
        eps: Rational,
        reason: String,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Effort {
    pub samples: usize,
    pub refinements: u32,
}

impl Effort {
    pub fn absorb(&mut self, other: Effort) {
        self.samples += other.samples;
        self.refinements = self.refinements.max(other.refinements);
    }

    fn note(&mut self, d: &Decision) {
        self.refinements = self.refinements.max(d.rounds);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TopoAnswer {
    pub verdict: Answer,
    pub witness: Option<TopoWitness>,
    pub effort: Effort,
}

impl TopoAnswer {
    fn unknown(effort: Effort) -> Self {
        Self { verdict: Answer::Unknown, witness: None, effort }
    }

    fn separated(eps: Rational, reason: impl Into<String>, effort: Effort) -> Self {
        Self {
            verdict: Answer::No,
            witness: Some(TopoWitness::Separation { eps, reason: reason.into() }),
            effort,
        }
    }

    /// The certified radius of a "No".
    pub fn separation(&self) -> Option<&Rational> {
        match &self.witness {
            Some(TopoWitness::Separation { eps, .. }) => Some(eps),
            _ => None,
        }
    }
}

fn cmp_with(space: &dyn Metric, a: &Point, b: &Point, r: &Expr, cap: u32) -> Result<Decision> {
    decide(cap, |l| Ok((space.distance_at(a, b, l)?, r.clone())))
}

/// Whether `y` lies in the ball.
pub fn ball_member(space: &dyn Metric, q: &BallQuery, y: &Point, cfg: &ToleranceConfig) -> Result<TopoAnswer> {
    require_member(space, &q.center)?;
    require_member(space, y)?;
    let d = cmp_with(space, &q.center, y, &q.radius, cfg.precision_cap)?;
    let mut effort = Effort::default();
    effort.note(&d);
    let verdict = match (d.ord, q.kind) {
        (Cmp3::Unknown, _) => Answer::Unknown,
        (Cmp3::Less, _) | (Cmp3::Equal, BallKind::Closed) => Answer::Yes,
        _ => Answer::No,
    };
    Ok(TopoAnswer { verdict, witness: None, effort })
}

/// What a witness point must satisfy, besides approaching the target.
#[derive(Clone, Debug, PartialEq)]
pub enum Requirement {
    /// `d(center, z) < radius`
    Inside { center: Point, radius: Expr },
    /// `d(center, z) > d(center, target)`
    Beyond { center: Point },
}

impl Requirement {
    fn holds(&self, space: &dyn Metric, target: &Point, z: &Point, cap: u32, effort: &mut Effort) -> bool {
        let d = match self {
            Requirement::Inside { center, radius } => cmp_with(space, center, z, radius, cap),
            Requirement::Beyond { center } => {
                decide(cap, |l| Ok((space.distance_at(center, z, l)?, space.distance_at(center, target, l)?)))
            }
        };
        match d {
            Ok(d) => {
                effort.note(&d);
                d.ord == match self {
                    Requirement::Inside { .. } => Cmp3::Less,
                    Requirement::Beyond { .. } => Cmp3::Greater,
                }
            }
            Err(_) => false,
        }
    }

    fn anchor(&self) -> (&Point, bool) {
        match self {
            Requirement::Inside { center, .. } => (center, true),
            Requirement::Beyond { center } => (center, false),
        }
    }
}

fn dyadic(k: usize) -> Rational {
    Rational::one() / Rational::from_integer(num_bigint::BigInt::one() << k)
}

/// Builds points approaching `target` that satisfy `req`, with distances below
/// `2^-(1+3j)` at step `j` and strictly decreasing.
pub fn search_sequence(
    space: &dyn Metric,
    target: &Point,
    req: &Requirement,
    cfg: &ToleranceConfig,
    rng: &mut SpaceRng,
) -> (Option<Vec<WitnessStep>>, Effort) {
    let cap = cfg.precision_cap;
    let per_level = (cfg.budget / 20).clamp(8, 48);
    let mut effort = Effort::default();
    let mut steps: Vec<WitnessStep> = Vec::new();
    let (anchor, toward) = req.anchor();
    // upper bound on d(anchor, target), for scaling radial steps
    let spread = space
        .distance_at(anchor, target, 0)
        .map(|e| e.bounds(round_bits(0)).hi().clone())
        .ok()
        .filter(|s| s.is_positive());
    let mut previous: Option<Expr> = None;
    for j in 0..cfg.witness_steps() {
        let tau = dyadic(1 + 3 * j);
        let tau_e = Expr::rat(tau.clone());
        let mut candidates: Vec<Point> = Vec::new();
        if let Some(spread) = &spread {
            for extra in 1..=3 {
                let s = &tau / spread * dyadic(extra);
                let sigma = if toward { s } else { -s };
                if let Some(z) = target.lin_comb(&(Rational::one() - &sigma), anchor, &sigma) {
                    candidates.push(z);
                }
            }
        }
        // stay strictly inside the previous step so decreasing distances are cheap to find
        let window = match &previous {
            Some(prev) => {
                let lo = prev.bounds(round_bits(2)).lo().clone();
                if lo.is_positive() && lo < tau { lo } else { tau.clone() }
            }
            None => tau.clone(),
        };
        let mut found = None;
        let mut drawn = 0;
        let mut batch = candidates;
        // sampled points are already members strictly inside the window
        let mut vetted = false;
        loop {
            for z in batch.drain(..) {
                effort.samples += 1;
                if &z == target {
                    continue;
                }
                if !vetted && space.contains(&z) != Ok(true) {
                    continue;
                }
                let close = vetted || cmp_with(space, &z, target, &tau_e, cap).map(|d| d.ord == Cmp3::Less).unwrap_or(false);
                if !close {
                    continue;
                }
                if let (false, Some(prev)) = (vetted, &previous) {
                    if cmp_with(space, &z, target, prev, cap).map(|d| d.ord) != Ok(Cmp3::Less) {
                        continue;
                    }
                }
                if req.holds(space, target, &z, cap, &mut effort) {
                    found = Some(z);
                    break;
                }
            }
            if found.is_some() || drawn >= per_level {
                break;
            }
            // draw lazily: most levels succeed within the first few samples
            let n = 4.min(per_level - drawn);
            drawn += n;
            batch = sample_near_with(space, target, &window, n, rng);
            vetted = true;
            if batch.is_empty() {
                break;
            }
        }
        let Some(z) = found else { return (None, effort) };
        let Ok(dz) = space.distance_at(&z, target, cap) else { return (None, effort) };
        steps.push(WitnessStep { point: z, distance: dz.bounds(REPORT_BITS) });
        previous = Some(dz);
    }
    (Some(steps), effort)
}

/// Re-checks a witness sequence: membership, the requirement, and strictly shrinking distances
/// ending below the grid resolution.
pub fn verify_sequence(
    space: &dyn Metric,
    target: &Point,
    req: &Requirement,
    steps: &[WitnessStep],
    cfg: &ToleranceConfig,
) -> bool {
    let cap = cfg.precision_cap;
    let mut effort = Effort::default();
    let mut previous: Option<Expr> = None;
    for s in steps {
        if space.contains(&s.point) != Ok(true) || !req.holds(space, target, &s.point, cap, &mut effort) {
            return false;
        }
        let Ok(d) = space.distance_at(&s.point, target, cap) else { return false };
        if !d.bounds(REPORT_BITS).intersects(&s.distance) {
            return false;
        }
        if let Some(p) = &previous {
            if crate::number::compare_exprs(&d, p, cap) != Cmp3::Less {
                return false;
            }
        }
        previous = Some(d);
    }
    match previous {
        Some(last) => crate::number::compare_exprs(&last, &Expr::rat(cfg.grid_delta.clone()), cap) == Cmp3::Less,
        None => false,
    }
}

fn accept_certificate(c: Option<Certificate>, cfg: &ToleranceConfig) -> Option<Certificate> {
    c.filter(|c| c.eps > cfg.sep_eps)
}

/// Whether `y` is in the closure of the open ball `q`.
pub fn closure_contains(space: &dyn Metric, q: &BallQuery, y: &Point, cfg: &ToleranceConfig) -> TopoAnswer {
    closure_contains_with(space, q, y, cfg, &mut rng_for(cfg.seed, 10))
}

pub fn closure_contains_with(
    space: &dyn Metric,
    q: &BallQuery,
    y: &Point,
    cfg: &ToleranceConfig,
    rng: &mut SpaceRng,
) -> TopoAnswer {
    let mut effort = Effort::default();
    if q.kind == BallKind::Closed {
        // a closed ball is closed
        return ball_member(space, q, y, cfg).unwrap_or_else(|_| TopoAnswer::unknown(effort));
    }
    if space.contains(y) != Ok(true) || space.contains(&q.center) != Ok(true) {
        return TopoAnswer::unknown(effort);
    }
    let cap = cfg.precision_cap;
    let Ok(d) = cmp_with(space, &q.center, y, &q.radius, cap) else { return TopoAnswer::unknown(effort) };
    effort.note(&d);
    match d.ord {
        Cmp3::Less => {
            let dist = space.distance_at(y, y, 0).map(|e| e.bounds(32)).unwrap_or_else(|_| BoundedReal::exact(int(0)));
            TopoAnswer {
                verdict: Answer::Yes,
                witness: Some(TopoWitness::Sequence(vec![WitnessStep { point: y.clone(), distance: dist }])),
                effort,
            }
        }
        Cmp3::Greater => {
            let bits = round_bits(d.rounds);
            let gap = space
                .distance_at(&q.center, y, d.rounds)
                .map(|e| e.bounds(bits).lo() - q.radius.bounds(bits).hi())
                .unwrap_or_else(|_| int(0));
            if gap.is_positive() {
                TopoAnswer::separated(gap, "outside the closed ball", effort)
            } else {
                TopoAnswer::unknown(effort)
            }
        }
        Cmp3::Unknown => TopoAnswer::unknown(effort),
        Cmp3::Equal => {
            if let Some(e) = space.isolation_radius(y).filter(|e| e > &cfg.sep_eps) {
                return TopoAnswer::separated(e, "isolated point on the sphere", effort);
            }
            if let Some(c) = accept_certificate(space.closure_gap(&q.center, y), cfg) {
                return TopoAnswer::separated(c.eps, c.reason, effort);
            }
            let req = Requirement::Inside { center: q.center.clone(), radius: q.radius.clone() };
            let (steps, e) = search_sequence(space, y, &req, cfg, rng);
            effort.absorb(e);
            match steps {
                Some(s) => TopoAnswer { verdict: Answer::Yes, witness: Some(TopoWitness::Sequence(s)), effort },
                None => TopoAnswer::unknown(effort),
            }
        }
    }
}

/// Whether `y` is a limit of points outside `B[x, d(x, y)]`.
///
/// "No" means `y` is an interior point of that closed ball, with the certified radius.
pub fn exterior_limit_point(space: &dyn Metric, x: &Point, y: &Point, cfg: &ToleranceConfig) -> TopoAnswer {
    exterior_limit_point_with(space, x, y, cfg, &mut rng_for(cfg.seed, 11))
}

pub fn exterior_limit_point_with(
    space: &dyn Metric,
    x: &Point,
    y: &Point,
    cfg: &ToleranceConfig,
    rng: &mut SpaceRng,
) -> TopoAnswer {
    let mut effort = Effort::default();
    if space.contains(x) != Ok(true) || space.contains(y) != Ok(true) {
        return TopoAnswer::unknown(effort);
    }
    let cap = cfg.precision_cap;
    let Ok(pos) = cmp_with(space, x, y, &Expr::zero(), cap) else { return TopoAnswer::unknown(effort) };
    effort.note(&pos);
    if pos.ord != Cmp3::Greater {
        return TopoAnswer::unknown(effort);
    }
    // the sphere condition is an equality: reject radii we cannot pin down
    let width = space.distance_at(x, y, cap).map(|e| e.bounds(REPORT_BITS).width());
    if !matches!(width, Ok(w) if w <= cfg.sep_eps) {
        return TopoAnswer::unknown(effort);
    }
    if let Some(diam) = space.diameter() {
        let Ok(d) = decide(cap, |l| Ok((Expr::rat(diam.clone()), space.distance_at(x, y, l)?))) else {
            return TopoAnswer::unknown(effort);
        };
        effort.note(&d);
        if matches!(d.ord, Cmp3::Less | Cmp3::Equal) {
            return TopoAnswer::separated(
                int(1) + diam.clone(),
                format!("diameter {} is at most the radius: the closed ball is everything", format_rational(&diam)),
                effort,
            );
        }
    }
    if let Some(e) = space.isolation_radius(y).filter(|e| e > &cfg.sep_eps) {
        return TopoAnswer::separated(e, "isolated point", effort);
    }
    if let Some(c) = accept_certificate(space.interior_radius(x, y), cfg) {
        return TopoAnswer::separated(c.eps, c.reason, effort);
    }
    let req = Requirement::Beyond { center: x.clone() };
    let (steps, e) = search_sequence(space, y, &req, cfg, rng);
    effort.absorb(e);
    match steps {
        Some(s) => TopoAnswer { verdict: Answer::Yes, witness: Some(TopoWitness::Sequence(s)), effort },
        None => TopoAnswer::unknown(effort),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_union::{Interval, IntervalUnion};
    use crate::number::rat;
    use crate::region::Region;
    use crate::space::{subspace, Euclidean};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn gap_union_sphere_point_is_not_in_the_closure() {
        let iu = IntervalUnion::new(vec![Interval::closed(int(0), int(1)), Interval::closed(int(2), int(3))]);
        let x = subspace(Euclidean::new(1), Region::intervals(iu)).unwrap();
        let q = BallQuery::open(Point::Scalar(int(1)), Expr::rat(int(1))).unwrap();
        let a = closure_contains(&x, &q, &Point::Scalar(int(2)), &cfg());
        assert_eq!(a.verdict, Answer::No);
        assert_eq!(a.separation(), Some(&int(1)));
    }

    #[test]
    fn disk_boundary_is_approached_radially() {
        let disk = subspace(Euclidean::new(2), Region::disk([int(0), int(0)], int(1), true)).unwrap();
        let o = Point::vec2(int(0), int(0));
        let y = Point::vec2(int(1), int(0));
        let q = BallQuery::open(o.clone(), Expr::rat(int(1))).unwrap();
        let a = closure_contains(&disk, &q, &y, &cfg());
        assert_eq!(a.verdict, Answer::Yes);
        let Some(TopoWitness::Sequence(steps)) = &a.witness else { panic!() };
        assert_eq!(steps.len(), cfg().witness_steps());
        let req = Requirement::Inside { center: o, radius: Expr::rat(int(1)) };
        assert!(verify_sequence(&disk, &y, &req, steps, &cfg()));
    }

    #[test]
    fn quadrant_corner_is_interior() {
        let quad = subspace(
            Euclidean::new(2),
            Region::Intersection {
                members: vec![
                    Region::half_plane([int(1), int(0)], int(0), true),
                    Region::half_plane([int(0), int(-1)], int(0), true),
                ],
            },
        )
        .unwrap();
        let a = exterior_limit_point(&quad, &Point::vec2(int(1), int(-1)), &Point::vec2(int(0), int(0)), &cfg());
        assert_eq!(a.verdict, Answer::No);
        let eps = a.separation().unwrap();
        // B(0, eps) inside B[(1,-1), sqrt 2] within the quadrant forces eps <= 2 cos(pi/4) * 1
        assert!(eps <= &rat(1415, 1000));
    }

    #[test]
    fn line_points_are_exterior_limits() {
        let r1 = Euclidean::new(1);
        let a = exterior_limit_point(&*r1, &Point::Scalar(int(0)), &Point::Scalar(int(1)), &cfg());
        assert_eq!(a.verdict, Answer::Yes);
        let Some(TopoWitness::Sequence(steps)) = &a.witness else { panic!() };
        for s in steps {
            let Point::Scalar(z) = &s.point else { panic!() };
            assert!(z > &int(1));
        }
    }

    #[test]
    fn membership_and_centers() {
        let r2 = Euclidean::new(2);
        let c = Point::vec2(int(0), int(0));
        for kind in [BallKind::Open, BallKind::Closed] {
            let q = BallQuery::new(c.clone(), Expr::rat(rat(1, 2)), kind).unwrap();
            assert_eq!(ball_member(&*r2, &q, &c, &cfg()).unwrap().verdict, Answer::Yes);
        }
        let q = BallQuery::open(c.clone(), Expr::rat(int(5))).unwrap();
        let bad = ball_member(&*r2, &q, &Point::Scalar(int(0)), &cfg());
        assert!(matches!(bad, Err(Error::DomainMismatch { .. })));
        assert!(BallQuery::open(c, Expr::zero()).is_err());
    }
}
