//! Metric spaces: a domain, a distance oracle, samplers and optional exact knowledge.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::interval_union::IntervalUnion;
use crate::number::{decide, int, rat, round_bits, BoundedReal, Cmp3, Expr, Rational};
use crate::point::Point;
use crate::region::Region;

/// Deterministic generator used by every sampler.
pub type SpaceRng = ChaCha8Rng;

pub fn rng_for(seed: u64, stream: u64) -> SpaceRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A rigorous radius: the stated ball about `y` behaves as the certificate claims.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub eps: Rational,
    pub reason: String,
}

impl Certificate {
    pub fn new(eps: Rational, reason: impl Into<String>) -> Self {
        Self { eps, reason: reason.into() }
    }
}

/// Distance oracle plus everything the searches need to know about a space.
///
/// `distance_at` may return a coarser enclosure at low `level`; spaces whose
/// distances are finite closed forms ignore the level.
pub trait Metric: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    /// `Err(DomainMismatch)` when the point has the wrong shape for this space.
    fn contains(&self, p: &Point) -> Result<bool>;

    fn distance_at(&self, p: &Point, q: &Point, level: u32) -> Result<Expr>;

    /// Candidates near `p`; callers filter by membership and distance.
    fn propose_near(&self, p: &Point, radius: &Rational, count: usize, rng: &mut SpaceRng) -> Vec<Point>;

    fn propose_global(&self, count: usize, rng: &mut SpaceRng) -> Vec<Point>;

    /// Distinguished points worth testing first (corners, endpoints, axis points).
    fn landmarks(&self) -> Vec<Point> {
        Vec::new()
    }

    /// Rigorous upper bound on the supremum of all distances.
    fn diameter(&self) -> Option<Rational> {
        None
    }

    /// `Some(eps)` when the open ball `B(y, eps)` is `{y}`.
    fn isolation_radius(&self, _y: &Point) -> Option<Rational> {
        None
    }

    /// `eps` with `B(y, eps)` disjoint from `B(x, d(x, y))`.
    fn closure_gap(&self, _x: &Point, _y: &Point) -> Option<Certificate> {
        None
    }

    /// `eps` with `B(y, eps)` inside `B[x, d(x, y)]`.
    fn interior_radius(&self, _x: &Point, _y: &Point) -> Option<Certificate> {
        None
    }

    /// The domain as an exact subset of the line under the usual metric.
    fn interval_union(&self) -> Option<&IntervalUnion> {
        None
    }

    /// `Some(n)` when the metric is the Euclidean metric on scalar/vector points of `R^n`.
    fn euclidean_dim(&self) -> Option<usize> {
        None
    }

    /// Origin of a linear space (points support `lin_comb`).
    fn origin(&self) -> Option<Point> {
        None
    }

    /// The region carved out of an ambient space, for drawing.
    fn region(&self) -> Option<&Region> {
        None
    }
}

pub type MetricSpace = Arc<dyn Metric>;

pub(crate) fn mismatch(space: &dyn Metric, p: &Point) -> Error {
    Error::DomainMismatch { space: space.name(), point: p.to_string() }
}

/// Checks that `p` is a member of the space.
pub fn require_member(space: &dyn Metric, p: &Point) -> Result<()> {
    if space.contains(p)? {
        Ok(())
    } else {
        Err(mismatch(space, p))
    }
}

/// Enclosure of `d(p, q)` at refinement round 0.
pub fn eval_distance(space: &dyn Metric, p: &Point, q: &Point) -> Result<BoundedReal> {
    eval_distance_refined(space, p, q, 0)
}

/// Enclosure of `d(p, q)` after `rounds` refinements; never wider than earlier rounds.
pub fn eval_distance_refined(space: &dyn Metric, p: &Point, q: &Point, rounds: u32) -> Result<BoundedReal> {
    require_member(space, p)?;
    require_member(space, q)?;
    let mut b = space.distance_at(p, q, 0)?.bounds(round_bits(0));
    for r in 1..=rounds {
        b = b.refine(&space.distance_at(p, q, r)?.bounds(round_bits(r)));
    }
    Ok(b)
}

/// Three-valued comparison of `d(a, b)` with `d(c, e)`.
pub fn compare_distances(space: &dyn Metric, a: &Point, b: &Point, c: &Point, e: &Point, cap: u32) -> Result<Cmp3> {
    Ok(decide(cap, |l| Ok((space.distance_at(a, b, l)?, space.distance_at(c, e, l)?)))?.ord)
}

/// Three-valued comparison of `d(a, b)` with a fixed number.
pub fn compare_distance_to(space: &dyn Metric, a: &Point, b: &Point, r: &Expr, cap: u32) -> Result<Cmp3> {
    Ok(decide(cap, |l| Ok((space.distance_at(a, b, l)?, r.clone())))?.ord)
}

/// Points of the space strictly within `radius` of `p`.
pub fn sample_near_with(space: &dyn Metric, p: &Point, radius: &Rational, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
    let r = Expr::rat(radius.clone());
    let mut out = Vec::with_capacity(count);
    for _ in 0..4 {
        for z in space.propose_near(p, radius, count, rng) {
            if out.len() >= count {
                return out;
            }
            if space.contains(&z) == Ok(true)
                && compare_distance_to(space, p, &z, &r, 2) == Ok(Cmp3::Less)
                && !out.contains(&z)
            {
                out.push(z);
            }
        }
        if out.len() >= count {
            break;
        }
    }
    out
}

pub fn sample_near(space: &dyn Metric, p: &Point, radius: &Rational, count: usize, seed: u64) -> Vec<Point> {
    sample_near_with(space, p, radius, count, &mut rng_for(seed, 1))
}

/// Points of the space spread over its domain.
pub fn sample_global_with(space: &dyn Metric, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..4 {
        for z in space.propose_global(count, rng) {
            if out.len() >= count {
                return out;
            }
            if space.contains(&z) == Ok(true) {
                out.push(z);
            }
        }
        if out.len() >= count {
            break;
        }
    }
    out
}

pub fn sample_global(space: &dyn Metric, count: usize, seed: u64) -> Vec<Point> {
    sample_global_with(space, count, &mut rng_for(seed, 2))
}

/// Landmarks that are members of the space.
pub fn member_landmarks(space: &dyn Metric) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    for p in space.landmarks() {
        if space.contains(&p) == Ok(true) && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Identity,
    Positivity,
    NonNegativity,
    Symmetry,
    Triangle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub points: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    /// Certified violation, if any was found.
    pub violation: Option<AxiomViolation>,
    pub triples: usize,
    /// Comparisons left undecided at the precision cap.
    pub unknown: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Fuzzes the metric axioms on `budget` sampled triples.
pub fn verify_metric_axioms(space: &dyn Metric, cfg: &ToleranceConfig) -> AxiomReport {
    let mut rng = rng_for(cfg.seed, 3);
    let mut pool = member_landmarks(space);
    pool.extend(sample_global_with(space, cfg.budget.max(3), &mut rng));
    let cap = cfg.precision_cap;
    let mut report = AxiomReport { violation: None, triples: 0, unknown: 0 };
    if pool.is_empty() {
        return report;
    }
    let zero = Expr::zero();
    for _ in 0..cfg.budget {
        let pick = |rng: &mut SpaceRng| pool[rng.gen_range(0..pool.len())].clone();
        let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        report.triples += 1;
        let mut fail = |axiom, pts: Vec<&Point>| {
            report.violation = Some(AxiomViolation { axiom, points: pts.into_iter().cloned().collect() });
        };
        let cmp = |a: &Point, b: &Point, c: &Point, e: &Point| -> Cmp3 {
            compare_distances(space, a, b, c, e, cap).unwrap_or(Cmp3::Unknown)
        };
        let vs_zero = |a: &Point, b: &Point| -> Cmp3 {
            compare_distance_to(space, a, b, &zero, cap).unwrap_or(Cmp3::Unknown)
        };
        let self_dist = vs_zero(&x, &x);
        if self_dist == Cmp3::Greater || self_dist == Cmp3::Less {
            fail(Axiom::Identity, vec![&x]);
            return report;
        }
        let sym = cmp(&x, &y, &y, &x);
        if matches!(sym, Cmp3::Less | Cmp3::Greater) {
            fail(Axiom::Symmetry, vec![&x, &y]);
            return report;
        }
        let sign = vs_zero(&x, &y);
        if sign == Cmp3::Less {
            fail(Axiom::NonNegativity, vec![&x, &y]);
            return report;
        }
        if x != y && sign == Cmp3::Equal {
            fail(Axiom::Positivity, vec![&x, &y]);
            return report;
        }
        let tri = decide(cap, |l| {
            let lhs = space.distance_at(&x, &z, l)?;
            let rhs = Expr::Sum(vec![space.distance_at(&x, &y, l)?, space.distance_at(&y, &z, l)?]);
            Ok((lhs, rhs))
        })
        .map(|d| d.ord)
        .unwrap_or(Cmp3::Unknown);
        if tri == Cmp3::Greater {
            fail(Axiom::Triangle, vec![&x, &y, &z]);
            return report;
        }
        for c in [self_dist, sym, sign, tri] {
            if c == Cmp3::Unknown {
                report.unknown += 1;
            }
        }
    }
    report
}

fn unit<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-4095..=4095), 4096)
}

/// `R^n` with the Euclidean metric; scalar points when `n = 1`.
#[derive(Clone, Debug)]
pub struct Euclidean {
    pub dim: usize,
}

impl Euclidean {
    pub fn new(dim: usize) -> MetricSpace {
        Arc::new(Euclidean { dim })
    }

    fn point(&self, v: Vec<Rational>) -> Point {
        if self.dim == 1 {
            Point::Scalar(v.into_iter().next().expect("one coordinate"))
        } else {
            Point::Vector(v)
        }
    }
}

/// Euclidean distance between two coordinate vectors, exact when rational.
pub fn euclid_expr(a: &[Rational], b: &[Rational]) -> Expr {
    if a.len() == 1 {
        return Expr::rat((&a[0] - &b[0]).abs());
    }
    let s = a.iter().zip(b).fold(Rational::zero(), |s, (x, y)| s + (x - y) * (x - y));
    Expr::sqrt(Expr::rat(s))
}

impl Metric for Euclidean {
    fn name(&self) -> String {
        format!("R^{}", self.dim)
    }

    fn contains(&self, p: &Point) -> Result<bool> {
        match (p, self.dim) {
            (Point::Scalar(_), 1) => Ok(true),
            (Point::Vector(v), d) if d > 1 && v.len() == d => Ok(true),
            _ => Err(mismatch(self, p)),
        }
    }

    fn distance_at(&self, p: &Point, q: &Point, _level: u32) -> Result<Expr> {
        match (p.coords(), q.coords()) {
            (Some(a), Some(b)) if a.len() == self.dim && b.len() == self.dim => Ok(euclid_expr(&a, &b)),
            (Some(_), _) => Err(mismatch(self, q)),
            _ => Err(mismatch(self, p)),
        }
    }

    fn propose_near(&self, p: &Point, radius: &Rational, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        let Some(c) = p.coords() else { return Vec::new() };
        let step = radius / int(self.dim as i64);
        (0..count)
            .map(|_| self.point(c.iter().map(|x| x + &step * unit(rng)).collect()))
            .collect()
    }

    fn propose_global(&self, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        (0..count)
            .map(|_| self.point((0..self.dim).map(|_| unit(rng) * int(3)).collect()))
            .collect()
    }

    fn landmarks(&self) -> Vec<Point> {
        let zero = vec![Rational::zero(); self.dim];
        let mut e = zero.clone();
        e[0] = int(1);
        vec![self.point(zero), self.point(e)]
    }

    fn euclidean_dim(&self) -> Option<usize> {
        Some(self.dim)
    }

    fn origin(&self) -> Option<Point> {
        Some(self.point(vec![Rational::zero(); self.dim]))
    }
}

/// Carrier of a discrete space.
#[derive(Clone, Debug, PartialEq)]
pub enum DiscreteCarrier {
    Reals,
    Labels(Vec<String>),
}

/// Any set with the 0/1 metric.
#[derive(Clone, Debug)]
pub struct Discrete {
    pub carrier: DiscreteCarrier,
}

impl Discrete {
    pub fn reals() -> MetricSpace {
        Arc::new(Discrete { carrier: DiscreteCarrier::Reals })
    }

    pub fn labels<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> MetricSpace {
        Arc::new(Discrete { carrier: DiscreteCarrier::Labels(labels.into_iter().map(Into::into).collect()) })
    }
}

impl Metric for Discrete {
    fn name(&self) -> String {
        match &self.carrier {
            DiscreteCarrier::Reals => "R_dis".into(),
            DiscreteCarrier::Labels(l) => format!("discrete{{{}}}", l.join(",")),
        }
    }

    fn contains(&self, p: &Point) -> Result<bool> {
        match (&self.carrier, p) {
            (DiscreteCarrier::Reals, Point::Scalar(_)) => Ok(true),
            (DiscreteCarrier::Labels(l), Point::Label(s)) => Ok(l.contains(s)),
            _ => Err(mismatch(self, p)),
        }
    }

    fn distance_at(&self, p: &Point, q: &Point, _level: u32) -> Result<Expr> {
        self.contains(p)?;
        self.contains(q)?;
        Ok(Expr::rat(if p == q { Rational::zero() } else { int(1) }))
    }

    fn propose_near(&self, p: &Point, radius: &Rational, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        if radius > &int(1) {
            let mut v = vec![p.clone()];
            v.extend(self.propose_global(count.saturating_sub(1), rng));
            v
        } else {
            vec![p.clone()]
        }
    }

    fn propose_global(&self, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        match &self.carrier {
            DiscreteCarrier::Reals => (0..count).map(|_| Point::Scalar(unit(rng) * int(3))).collect(),
            DiscreteCarrier::Labels(l) => {
                (0..count.min(4 * l.len())).map(|_| Point::Label(l[rng.gen_range(0..l.len())].clone())).collect()
            }
        }
    }

    fn landmarks(&self) -> Vec<Point> {
        match &self.carrier {
            DiscreteCarrier::Reals => vec![Point::Scalar(Rational::zero()), Point::Scalar(int(1))],
            DiscreteCarrier::Labels(l) => l.iter().map(|s| Point::Label(s.clone())).collect(),
        }
    }

    fn diameter(&self) -> Option<Rational> {
        Some(int(1))
    }

    fn isolation_radius(&self, y: &Point) -> Option<Rational> {
        (self.contains(y) == Ok(true)).then(|| int(1))
    }
}

/// A space restricted to a region of its domain.
#[derive(Debug)]
pub struct Subspace {
    pub ambient: MetricSpace,
    pub region: Region,
    label: String,
    extra_landmarks: Vec<Point>,
    exact: Option<IntervalUnion>,
}

impl Subspace {
    pub fn with_landmarks(mut self, points: Vec<Point>) -> Self {
        let mut extra = points;
        extra.append(&mut self.extra_landmarks);
        self.extra_landmarks = extra;
        self
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.label = name.into();
        self
    }

    fn euclidean(&self) -> bool {
        self.ambient.euclidean_dim().is_some()
    }
}

/// Restricts `ambient` to `region`; exact line/circle intersections are resolved.
pub fn subspace(ambient: MetricSpace, region: Region) -> Result<Subspace> {
    let region = region.simplify();
    let exact = match (&region, ambient.euclidean_dim()) {
        (Region::Intervals { intervals }, Some(1)) => Some(intervals.clone()),
        _ => None,
    };
    let label = format!("{} restricted", ambient.name());
    let sub = Subspace { ambient, region, label, extra_landmarks: Vec::new(), exact };
    let mut rng = rng_for(0, 4);
    let mut probes = sub.region.landmarks();
    probes.extend(sub.region.propose_global(64, &mut rng));
    if !probes.iter().any(|p| sub.contains(p) == Ok(true)) {
        return Err(Error::EmptyRegion(format!("{:?}", sub.region)));
    }
    Ok(sub)
}

impl Metric for Subspace {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn contains(&self, p: &Point) -> Result<bool> {
        if !self.ambient.contains(p)? {
            return Ok(false);
        }
        self.region.contains(p).ok_or_else(|| mismatch(self, p))
    }

    fn distance_at(&self, p: &Point, q: &Point, level: u32) -> Result<Expr> {
        self.ambient.distance_at(p, q, level)
    }

    fn propose_near(&self, p: &Point, radius: &Rational, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        let mut v = self.region.propose_near(p, radius, count, rng);
        if matches!(self.region, Region::FullSpace { .. } | Region::LabelSet { .. }) || v.is_empty() {
            v.extend(self.ambient.propose_near(p, radius, count, rng));
        }
        v
    }

    fn propose_global(&self, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        self.region.propose_global(count, rng)
    }

    fn landmarks(&self) -> Vec<Point> {
        let mut v = self.extra_landmarks.clone();
        v.extend(self.region.landmarks());
        v
    }

    fn diameter(&self) -> Option<Rational> {
        let own = if self.euclidean() { self.region.diameter_bound() } else { None };
        match (own, self.ambient.diameter()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn isolation_radius(&self, y: &Point) -> Option<Rational> {
        if self.euclidean() {
            if let Some(e) = self.region.isolation_radius(y) {
                return Some(e);
            }
        }
        self.ambient.isolation_radius(y)
    }

    fn closure_gap(&self, x: &Point, y: &Point) -> Option<Certificate> {
        let iu = self.exact.as_ref()?;
        let (Point::Scalar(a), Point::Scalar(b)) = (x, y) else { return None };
        iu.closure_gap(a, b).map(|e| Certificate::new(e, "gap in the interval union next to a closed endpoint"))
    }

    fn interior_radius(&self, x: &Point, y: &Point) -> Option<Certificate> {
        if let Some(iu) = &self.exact {
            let (Point::Scalar(a), Point::Scalar(b)) = (x, y) else { return None };
            return iu
                .interior_radius(a, b)
                .map(|e| Certificate::new(e, "closed endpoint facing away from the center"));
        }
        if self.ambient.euclidean_dim() == Some(2) {
            return self
                .region
                .corner_interior_radius(x, y)
                .map(|e| Certificate::new(e, "corner cone points back toward the center"));
        }
        None
    }

    fn interval_union(&self) -> Option<&IntervalUnion> {
        self.exact.as_ref()
    }

    fn region(&self) -> Option<&Region> {
        Some(&self.region)
    }

    fn euclidean_dim(&self) -> Option<usize> {
        self.ambient.euclidean_dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_union::Interval;

    #[test]
    fn distances_are_exact_where_rational() {
        let r1 = Euclidean::new(1);
        let z = Point::Scalar(int(0));
        assert_eq!(eval_distance(&*r1, &z, &z).unwrap(), BoundedReal::exact(int(0)));
        let d = Discrete::labels(["u", "v"]);
        let b = eval_distance(&*d, &Point::Label("u".into()), &Point::Label("v".into())).unwrap();
        assert_eq!(b, BoundedReal::exact(int(1)));
        let r2 = Euclidean::new(2);
        let b = eval_distance(&*r2, &Point::vec2(int(0), int(0)), &Point::vec2(rat(1, 2), int(1))).unwrap();
        assert!(b.contains(&rat(1118, 1000)) || (b.lo() < &rat(1119, 1000) && b.hi() > &rat(1118, 1000)));
    }

    #[test]
    fn wrong_shape_is_a_domain_mismatch() {
        let r2 = Euclidean::new(2);
        let e = eval_distance(&*r2, &Point::Scalar(int(0)), &Point::vec2(int(0), int(0)));
        assert!(matches!(e, Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn refinement_narrows() {
        let r2 = Euclidean::new(2);
        let (p, q) = (Point::vec2(int(0), int(0)), Point::vec2(int(1), int(1)));
        let a = eval_distance_refined(&*r2, &p, &q, 0).unwrap();
        let b = eval_distance_refined(&*r2, &p, &q, 3).unwrap();
        assert!(b.lo() >= a.lo() && b.hi() <= a.hi() && b.width() < a.width());
    }

    #[test]
    fn samples_stay_in_domain_and_ball() {
        let disk = subspace(Euclidean::new(2), Region::disk([int(0), int(0)], int(1), true)).unwrap();
        let c = Point::vec2(rat(9, 10), int(0));
        let pts = sample_near(&disk, &c, &rat(1, 5), 30, 7);
        assert!(!pts.is_empty());
        for p in &pts {
            assert_eq!(disk.contains(p), Ok(true));
            assert_eq!(compare_distance_to(&disk, &c, p, &Expr::rat(rat(1, 5)), 4).unwrap(), Cmp3::Less);
        }
        assert_eq!(sample_near(&disk, &c, &rat(1, 5), 30, 7), pts);
    }

    #[test]
    fn empty_region_is_rejected() {
        let empty = Region::Intersection {
            members: vec![
                Region::half_plane([int(1), int(0)], int(1), true),
                Region::half_plane([int(-1), int(0)], int(1), true),
            ],
        };
        assert!(matches!(subspace(Euclidean::new(2), empty), Err(Error::EmptyRegion(_))));
    }

    #[test]
    fn identity_restriction_keeps_distances() {
        let full = subspace(Euclidean::new(1), Region::FullSpace { dim: 1 }).unwrap();
        let (p, q) = (Point::Scalar(int(-2)), Point::Scalar(rat(1, 3)));
        assert_eq!(eval_distance(&full, &p, &q).unwrap(), eval_distance(&*Euclidean::new(1), &p, &q).unwrap());
        let iu = IntervalUnion::new(vec![Interval::open(int(0), int(1))]);
        let s = subspace(Euclidean::new(1), Region::intervals(iu)).unwrap();
        assert!(s.interval_union().is_some());
    }

    #[test]
    fn euclidean_axioms_pass() {
        let cfg = ToleranceConfig::default().with_budget(1000);
        let disk = subspace(Euclidean::new(2), Region::disk([int(0), int(0)], int(1), true)).unwrap();
        let rep = verify_metric_axioms(&disk, &cfg);
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.triples, 1000);
    }

    #[derive(Debug)]
    struct Signed1;

    impl Metric for Signed1 {
        fn name(&self) -> String {
            "signed".into()
        }
        fn contains(&self, p: &Point) -> Result<bool> {
            Ok(matches!(p, Point::Scalar(_)))
        }
        fn distance_at(&self, p: &Point, q: &Point, _: u32) -> Result<Expr> {
            let (Point::Scalar(a), Point::Scalar(b)) = (p, q) else { unreachable!() };
            Ok(Expr::rat(a - b))
        }
        fn propose_near(&self, p: &Point, _: &Rational, _: usize, _: &mut SpaceRng) -> Vec<Point> {
            vec![p.clone()]
        }
        fn propose_global(&self, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
            (0..count).map(|_| Point::Scalar(unit(rng))).collect()
        }
    }

    #[test]
    fn corrupted_oracle_breaks_symmetry() {
        let rep = verify_metric_axioms(&Signed1, &ToleranceConfig::default());
        let v = rep.violation.expect("violation");
        assert_eq!(v.axiom, Axiom::Symmetry);
        assert_eq!(v.points.len(), 2);
    }
}
