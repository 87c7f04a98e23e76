//! Property deciders: roundness, sleekness, and the convexity family.
//!
//! Sampled checks can only *fail* with a certificate; a pass is always reported as
//! `HoldsAtBudget`, never as a proof. Interval-union domains of the line are decided
//! exactly.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::interval_union::{decide_round_interval_union, decide_sleek_interval_union, IntervalUnion};
use crate::number::{REPORT_BITS, format_rational, int, rat, BoundedReal, Cmp3, Expr, Rational};
use crate::point::Point;
use crate::region::Region;
use crate::space::{member_landmarks, rng_for, sample_global_with, sample_near_with, subspace, Metric, MetricSpace, SpaceRng};
use crate::topology::{closure_contains_with, exterior_limit_point_with, Answer, BallQuery, Effort, TopoAnswer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    HoldsExact,
    HoldsAtBudget,
    Violated,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// `d(x, .)` restricted to `B(y, eps)` is minimised at `y`: not round.
    MinOnOpenSet,
    /// `d(x, .)` restricted to `B(y, eps)` is maximised at `y`: not sleek.
    MaxOnOpenSet,
    /// `y` is an isolated point of the sphere around `x`.
    SphereNotLimit,
    ConvexityGap,
    StrictConvexityGap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConvexityKind {
    Lambda {
        #[serde(with = "crate::serde_util")]
        lambda: Rational,
    },
    Metric,
    External,
    StrongExternal {
        #[serde(with = "crate::serde_util")]
        s: Rational,
    },
}

impl ConvexityKind {
    pub fn validate(&self) -> Result<()> {
        match self {
            ConvexityKind::Lambda { lambda: l } if !(l.is_positive() && l < &Rational::one()) => {
                Err(Error::InvalidParameter(format!("lambda {} is not in (0, 1)", format_rational(l))))
            }
            ConvexityKind::StrongExternal { s } if !s.is_positive() => {
                Err(Error::InvalidParameter(format!("s = {} must be positive", format_rational(s))))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub kind: WitnessKind,
    pub x: Point,
    pub y: Point,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Point>,
    /// The distance (or gap) the witness is about.
    pub value: BoundedReal,
    /// Certified radius, or the resolution for sampled convexity gaps.
    pub separation: BoundedReal,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convexity: Option<ConvexityKind>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckVerdict {
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    pub effort: Effort,
}

impl CheckVerdict {
    fn exact(holds: bool, witness: Option<WitnessRecord>) -> Self {
        Self {
            verdict: if holds { Verdict::HoldsExact } else { Verdict::Violated },
            witness,
            effort: Effort::default(),
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self.verdict, Verdict::HoldsExact | Verdict::HoldsAtBudget)
    }
}

enum Outcome {
    Pass,
    Unknown,
    Skip,
    Fail(WitnessRecord),
}

/// Tallies outcomes: first failure wins, too many unknowns is inconclusive.
struct Tally {
    effort: Effort,
    evaluated: usize,
    unknown: usize,
}

impl Tally {
    fn new() -> Self {
        Self { effort: Effort::default(), evaluated: 0, unknown: 0 }
    }

    fn finish(self) -> CheckVerdict {
        let verdict = if self.evaluated == 0 || 2 * self.unknown > self.evaluated {
            Verdict::Inconclusive
        } else {
            Verdict::HoldsAtBudget
        };
        CheckVerdict { verdict, witness: None, effort: self.effort }
    }

    /// Returns a verdict once a failure is seen.
    fn push(&mut self, o: Outcome) -> Option<CheckVerdict> {
        match o {
            Outcome::Skip => None,
            Outcome::Pass => {
                self.evaluated += 1;
                None
            }
            Outcome::Unknown => {
                self.evaluated += 1;
                self.unknown += 1;
                None
            }
            Outcome::Fail(w) => {
                self.evaluated += 1;
                Some(CheckVerdict { verdict: Verdict::Violated, witness: Some(w), effort: self.effort })
            }
        }
    }
}

/// Candidate pairs, boundary-heavy first: landmark pairs, then mixed, then global and near pairs.
pub fn candidate_pairs(space: &dyn Metric, cfg: &ToleranceConfig, rng: &mut SpaceRng) -> Vec<(Point, Point)> {
    let budget = cfg.budget;
    let mut landmarks = member_landmarks(space);
    landmarks.truncate(24);
    let globals = sample_global_with(space, budget.min(64), rng);
    let mut out: Vec<(Point, Point)> = Vec::new();
    let push = |out: &mut Vec<(Point, Point)>, a: &Point, b: &Point| {
        if a != b && out.len() < budget {
            out.push((a.clone(), b.clone()));
        }
    };
    for a in &landmarks {
        for b in &landmarks {
            push(&mut out, a, b);
        }
    }
    for (i, g) in globals.iter().enumerate() {
        for l in landmarks.iter().skip(i % 3).step_by(3) {
            push(&mut out, g, l);
            push(&mut out, l, g);
        }
    }
    for w in globals.windows(2) {
        push(&mut out, &w[0], &w[1]);
    }
    let mut k = 0;
    while out.len() < budget && k < 4 * budget {
        let src = if landmarks.is_empty() || k % 2 == 1 { &globals } else { &landmarks };
        if src.is_empty() {
            break;
        }
        let a = &src[(k / 2) % src.len()];
        let radius = rat(1, 1 << (1 + k % 6));
        for z in sample_near_with(space, a, &radius, 1, rng) {
            push(&mut out, a, &z);
        }
        if out.len() < budget && globals.len() > 1 {
            let b = &globals[(k * 7 + 3) % globals.len()];
            push(&mut out, a, b);
        }
        k += 1;
    }
    out
}

fn distance_bounds(space: &dyn Metric, a: &Point, b: &Point, cfg: &ToleranceConfig) -> BoundedReal {
    space
        .distance_at(a, b, cfg.precision_cap)
        .map(|e| e.bounds(REPORT_BITS))
        .unwrap_or_else(|_| BoundedReal::new(int(0), int(0)))
}

fn scalar_witness(kind: WitnessKind, iu_w: crate::interval_union::EndpointWitness) -> WitnessRecord {
    let dist = (&iu_w.x - &iu_w.y).abs();
    WitnessRecord {
        kind,
        x: Point::Scalar(iu_w.x),
        y: Point::Scalar(iu_w.y),
        z: None,
        value: BoundedReal::exact(dist),
        separation: BoundedReal::exact(iu_w.eps),
        convexity: None,
    }
}

fn exact_domain(space: &dyn Metric) -> Option<&IntervalUnion> {
    space.interval_union().filter(|_| space.euclidean_dim() == Some(1))
}

fn sphere_query(space: &dyn Metric, x: &Point, y: &Point) -> Option<BallQuery> {
    BallQuery::open(x.clone(), space.distance_at(x, y, 0).ok()?).ok()
}

fn round_outcome(space: &dyn Metric, x: &Point, y: &Point, cfg: &ToleranceConfig, rng: &mut SpaceRng, effort: &mut Effort) -> Outcome {
    let Some(q) = sphere_query(space, x, y) else { return Outcome::Skip };
    let a = closure_contains_with(space, &q, y, cfg, rng);
    effort.absorb(a.effort);
    to_outcome(space, &a, x, y, cfg, |reason| {
        if reason.contains("isolated") { WitnessKind::SphereNotLimit } else { WitnessKind::MinOnOpenSet }
    })
}

fn sleek_outcome(space: &dyn Metric, x: &Point, y: &Point, cfg: &ToleranceConfig, rng: &mut SpaceRng, effort: &mut Effort) -> Outcome {
    let a = exterior_limit_point_with(space, x, y, cfg, rng);
    effort.absorb(a.effort);
    to_outcome(space, &a, x, y, cfg, |_| WitnessKind::MaxOnOpenSet)
}

fn to_outcome(
    space: &dyn Metric,
    a: &TopoAnswer,
    x: &Point,
    y: &Point,
    cfg: &ToleranceConfig,
    kind: impl Fn(&str) -> WitnessKind,
) -> Outcome {
    match a.verdict {
        Answer::Yes => Outcome::Pass,
        Answer::Unknown => Outcome::Unknown,
        Answer::No => {
            let Some(crate::topology::TopoWitness::Separation { eps, reason }) = &a.witness else {
                return Outcome::Unknown;
            };
            Outcome::Fail(WitnessRecord {
                kind: kind(reason),
                x: x.clone(),
                y: y.clone(),
                z: None,
                value: distance_bounds(space, x, y, cfg),
                separation: BoundedReal::exact(eps.clone()),
                convexity: None,
            })
        }
    }
}

fn run_pairs(
    space: &dyn Metric,
    cfg: &ToleranceConfig,
    stream: u64,
    f: fn(&dyn Metric, &Point, &Point, &ToleranceConfig, &mut SpaceRng, &mut Effort) -> Outcome,
) -> CheckVerdict {
    let mut rng = rng_for(cfg.seed, stream);
    let pairs = candidate_pairs(space, cfg, &mut rng);
    let mut tally = Tally::new();
    for (x, y) in &pairs {
        tally.effort.samples += 1;
        let o = f(space, x, y, cfg, &mut rng, &mut tally.effort);
        if let Some(v) = tally.push(o) {
            return v;
        }
    }
    tally.finish()
}

/// Whether the closure of every open ball is the closed ball.
pub fn check_round(space: &dyn Metric, cfg: &ToleranceConfig) -> CheckVerdict {
    if let Some(iu) = exact_domain(space) {
        let w = iu.round_witness();
        debug_assert_eq!(w.is_none(), decide_round_interval_union(iu));
        let kind = |w: &crate::interval_union::EndpointWitness| {
            if iu.locate(&w.y).map(|i| iu.components()[i].is_singleton()) == Some(true) {
                WitnessKind::SphereNotLimit
            } else {
                WitnessKind::MinOnOpenSet
            }
        };
        return match w {
            None => CheckVerdict::exact(true, None),
            Some(w) => CheckVerdict::exact(false, Some(scalar_witness(kind(&w), w))),
        };
    }
    run_pairs(space, cfg, 20, round_outcome)
}

/// Whether the interior of every closed ball is the open ball.
pub fn check_sleek(space: &dyn Metric, cfg: &ToleranceConfig) -> CheckVerdict {
    if let Some(iu) = exact_domain(space) {
        let w = iu.sleek_witness();
        debug_assert_eq!(w.is_none(), decide_sleek_interval_union(iu));
        return match w {
            None => CheckVerdict::exact(true, None),
            Some(w) => CheckVerdict::exact(false, Some(scalar_witness(WitnessKind::MaxOnOpenSet, w))),
        };
    }
    run_pairs(space, cfg, 21, sleek_outcome)
}

/// Re-derives the certified "No" behind a violation.
pub fn replay_witness(space: &dyn Metric, w: &WitnessRecord, cfg: &ToleranceConfig) -> bool {
    let mut rng = rng_for(cfg.seed, 22);
    let member = |p: &Point| space.contains(p) == Ok(true);
    if !member(&w.x) || !member(&w.y) {
        return false;
    }
    match w.kind {
        WitnessKind::MinOnOpenSet | WitnessKind::SphereNotLimit => sphere_query(space, &w.x, &w.y)
            .map(|q| closure_contains_with(space, &q, &w.y, cfg, &mut rng).verdict == Answer::No)
            .unwrap_or(false),
        WitnessKind::MaxOnOpenSet => exterior_limit_point_with(space, &w.x, &w.y, cfg, &mut rng).verdict == Answer::No,
        WitnessKind::StrictConvexityGap => {
            let (Some(z), Some(o)) = (&w.z, space.origin()) else { return false };
            let d = |p: &Point| space.distance_at(p, &o, cfg.precision_cap);
            let (Ok(dz), Ok(dx), Ok(dy)) = (d(z), d(&w.x), d(&w.y)) else { return false };
            let cmp = |a: &Expr, b: &Expr| crate::number::compare_exprs(a, b, cfg.precision_cap);
            if Some(z) == w.x.midpoint(&w.y).as_ref() {
                let r = if cmp(&dx, &dy) == Cmp3::Less { dy } else { dx };
                matches!(cmp(&dz, &r), Cmp3::Greater | Cmp3::Equal)
            } else {
                // a combination on the sphere that is a limit of exterior points
                let r = ball_radius_expr(&w.separation);
                match cmp(&dz, &r) {
                    Cmp3::Greater => true,
                    Cmp3::Equal => exterior_limit_point_with(space, &o, z, cfg, &mut rng).verdict == Answer::Yes,
                    _ => false,
                }
            }
        }
        WitnessKind::ConvexityGap => match &w.convexity {
            Some(kind) => matches!(
                convexity_outcome(space, kind, &w.x, &w.y, cfg, &mut rng, &mut Effort::default()),
                Ok(Outcome::Fail(_))
            ),
            None => false,
        },
    }
}

fn residual_gap(pairs: &[(Expr, Expr)], cap: u32) -> (bool, Rational, Rational) {
    let mut exact = true;
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for (l, r) in pairs {
        if crate::number::compare_exprs(l, r, cap) != Cmp3::Equal {
            exact = false;
        }
        let (bl, br) = (l.bounds(64), r.bounds(64));
        let (a, c) = (bl.lo() - br.hi(), bl.hi() - br.lo());
        hi += a.abs().max(c.abs());
        if a.is_positive() {
            lo += a;
        } else if c.is_negative() {
            lo += -c;
        }
    }
    (exact, lo, hi)
}

fn approx(e: &Expr) -> Rational {
    if let Some(q) = e.exact().as_ref().and_then(|f| f.as_rational().cloned()) {
        return q;
    }
    let b = e.bounds(64);
    (b.lo() + b.hi()) / int(2)
}

fn convexity_outcome(
    space: &dyn Metric,
    kind: &ConvexityKind,
    x: &Point,
    y: &Point,
    cfg: &ToleranceConfig,
    rng: &mut SpaceRng,
    effort: &mut Effort,
) -> Result<Outcome> {
    let cap = cfg.precision_cap;
    let dxy = space.distance_at(x, y, cap)?;
    if let ConvexityKind::StrongExternal { s } = kind {
        if crate::number::compare_exprs(&dxy, &Expr::rat(s.clone()), cap) != Cmp3::Less {
            return Err(Error::InvalidParameter(format!("s = {} does not exceed d(x, y)", format_rational(s))));
        }
    }
    let fail = |value: BoundedReal, separation: BoundedReal, z: Option<Point>| {
        Outcome::Fail(WitnessRecord {
            kind: WitnessKind::ConvexityGap,
            x: x.clone(),
            y: y.clone(),
            z,
            value,
            separation,
            convexity: Some(kind.clone()),
        })
    };
    if let (Some(iu), Point::Scalar(a), Point::Scalar(b)) = (exact_domain(space), x, y) {
        let d = (a - b).abs();
        let dir = if b > a { int(1) } else { int(-1) };
        let ok = match kind {
            ConvexityKind::Lambda { lambda: l } => iu.contains(&(l * a + (int(1) - l) * b)),
            ConvexityKind::Metric => iu.meets_open(a, b),
            ConvexityKind::External => iu.meets_beyond(a, b),
            ConvexityKind::StrongExternal { s } => iu.contains(&(b + (s - &d) * dir)),
        };
        return Ok(if ok {
            Outcome::Pass
        } else {
            fail(BoundedReal::exact(d), BoundedReal::exact(int(0)), None)
        });
    }
    let dt = approx(&dxy);
    let one = Rational::one();
    let mut locus: Vec<Point> = Vec::new();
    match kind {
        ConvexityKind::Lambda { lambda: l } => locus.extend(x.lin_comb(l, y, &(&one - l))),
        ConvexityKind::Metric => {
            for t in [rat(1, 2), rat(1, 4), rat(3, 4)] {
                locus.extend(x.lerp(y, &t));
            }
        }
        ConvexityKind::External => {
            for t in [int(1), rat(1, 2), rat(1, 4), int(2)] {
                locus.extend(y.lin_comb(&(&one + &t), x, &-t));
            }
        }
        ConvexityKind::StrongExternal { s } => {
            if dt.is_positive() {
                let t = (s - &dt) / &dt;
                locus.extend(y.lin_comb(&(&one + &t), x, &-t));
            }
        }
    }
    let radius = if dt.is_positive() { (&dt / int(4)).min(int(1)) } else { rat(1, 4) };
    let center = locus.first().cloned().unwrap_or_else(|| y.clone());
    let mut candidates = locus;
    candidates.extend(sample_near_with(space, &center, &radius, 16, rng));
    let (mut best_hi, mut best_lo, mut best_z): (Option<Rational>, Option<Rational>, Option<Point>) = (None, None, None);
    for z in candidates {
        effort.samples += 1;
        if space.contains(&z) != Ok(true) {
            continue;
        }
        let distinct = match kind {
            ConvexityKind::Metric => &z != x && &z != y,
            ConvexityKind::External | ConvexityKind::StrongExternal { .. } => &z != y,
            ConvexityKind::Lambda { .. } => true,
        };
        if !distinct {
            continue;
        }
        let d = |p: &Point, q: &Point| space.distance_at(p, q, cap);
        let residuals = match kind {
            ConvexityKind::Lambda { lambda: l } => vec![
                (d(&z, x)?, Expr::scale(&one - l, dxy.clone())),
                (d(&z, y)?, Expr::scale(l.clone(), dxy.clone())),
            ],
            ConvexityKind::Metric => vec![(Expr::Sum(vec![d(x, &z)?, d(&z, y)?]), dxy.clone())],
            ConvexityKind::External => vec![(Expr::Sum(vec![dxy.clone(), d(y, &z)?]), d(x, &z)?)],
            ConvexityKind::StrongExternal { s } => vec![
                (Expr::Sum(vec![dxy.clone(), d(y, &z)?]), Expr::rat(s.clone())),
                (d(x, &z)?, Expr::rat(s.clone())),
            ],
        };
        let (exact, lo, hi) = residual_gap(&residuals, cap);
        if exact {
            return Ok(Outcome::Pass);
        }
        if best_hi.as_ref().map_or(true, |b| &hi < b) {
            best_hi = Some(hi);
            best_z = Some(z);
        }
        if best_lo.as_ref().map_or(true, |b| &lo < b) {
            best_lo = Some(lo);
        }
    }
    Ok(match (best_hi, best_lo) {
        (Some(h), _) if h < cfg.sep_eps => Outcome::Pass,
        (Some(h), Some(l)) if l >= cfg.sep_eps => fail(BoundedReal::new(l, h), BoundedReal::exact(cfg.sep_eps.clone()), best_z),
        (None, _) => fail(
            BoundedReal::new(int(0), int(0)),
            BoundedReal::exact(cfg.sep_eps.clone()),
            None,
        ),
        _ => Outcome::Unknown,
    })
}

/// Searches each sampled pair for the point the convexity notion asks for.
///
/// Outside exact domains a violation means "no such point found at resolution", never a proof.
pub fn check_convexity(space: &dyn Metric, kind: &ConvexityKind, cfg: &ToleranceConfig) -> Result<CheckVerdict> {
    kind.validate()?;
    let mut rng = rng_for(cfg.seed, 23);
    let pairs = candidate_pairs(space, cfg, &mut rng);
    let mut tally = Tally::new();
    let mut admissible = 0;
    for (x, y) in &pairs {
        tally.effort.samples += 1;
        let o = match convexity_outcome(space, kind, x, y, cfg, &mut rng, &mut tally.effort) {
            Ok(o) => {
                admissible += 1;
                o
            }
            Err(Error::InvalidParameter(_)) => Outcome::Skip,
            Err(_) => Outcome::Unknown,
        };
        if let Some(v) = tally.push(o) {
            return Ok(v);
        }
    }
    if admissible == 0 && matches!(kind, ConvexityKind::StrongExternal { .. }) && !pairs.is_empty() {
        return Err(Error::InvalidParameter("s does not exceed d(x, y) for any sampled pair".into()));
    }
    Ok(tally.finish())
}

/// The convexity search for one explicit pair.
pub fn check_convexity_pair(
    space: &dyn Metric,
    kind: &ConvexityKind,
    x: &Point,
    y: &Point,
    cfg: &ToleranceConfig,
) -> Result<CheckVerdict> {
    kind.validate()?;
    let mut tally = Tally::new();
    let mut effort = Effort::default();
    let o = convexity_outcome(space, kind, x, y, cfg, &mut rng_for(cfg.seed, 24), &mut effort)?;
    tally.effort = effort;
    Ok(tally.push(o).unwrap_or_else(|| tally.finish()))
}

/// Pool of points for the linear-space checks: landmarks, samples, and far multiples of samples.
fn linear_pool(space: &dyn Metric, origin: &Point, cfg: &ToleranceConfig, rng: &mut SpaceRng) -> Vec<Point> {
    let mut pool = member_landmarks(space);
    let globals = sample_global_with(space, cfg.budget.clamp(8, 48), rng);
    for g in &globals {
        for s in [int(1), int(4), int(16)] {
            if let Some(p) = g.lin_comb(&s, origin, &int(0)) {
                if space.contains(&p) == Ok(true) && !pool.contains(&p) {
                    pool.push(p);
                }
            }
        }
    }
    pool
}

fn require_linear(space: &dyn Metric, cfg: &ToleranceConfig, rng: &mut SpaceRng) -> Result<(Point, Vec<Point>)> {
    let origin = space
        .origin()
        .filter(|o| space.contains(o) == Ok(true))
        .ok_or_else(|| Error::NotLinear(format!("{} has no origin", space.name())))?;
    let pool = linear_pool(space, &origin, cfg, rng);
    let cap = cfg.precision_cap;
    let n = pool.len();
    for i in 0..n.min(20) {
        let (x, y, t) = (&pool[i], &pool[(i * 5 + 1) % n], &pool[(i * 11 + 2) % n]);
        let (Some(xt), Some(yt)) = (x.add(t), y.add(t)) else {
            return Err(Error::NotLinear(format!("{}: points cannot be translated", space.name())));
        };
        if space.contains(&xt) != Ok(true) || space.contains(&yt) != Ok(true) {
            return Err(Error::NotLinear(format!("{} is not closed under translation", space.name())));
        }
        let c = crate::space::compare_distances(space, &xt, &yt, x, y, cap).unwrap_or(Cmp3::Unknown);
        if matches!(c, Cmp3::Less | Cmp3::Greater) {
            return Err(Error::NotLinear(format!("{}: distance is not translation invariant at {x}, {y}, {t}", space.name())));
        }
    }
    Ok((origin, pool))
}

/// `d((x+y)/2, 0) < r` whenever `x != y` lie in `B[0, r]`.
pub fn check_strict_convexity(space: &dyn Metric, cfg: &ToleranceConfig) -> Result<CheckVerdict> {
    let mut rng = rng_for(cfg.seed, 25);
    let (origin, pool) = require_linear(space, cfg, &mut rng)?;
    let cap = cfg.precision_cap;
    let mut tally = Tally::new();
    let n = pool.len();
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            if tally.effort.samples >= cfg.budget {
                break 'outer;
            }
            tally.effort.samples += 1;
            let (x, y) = (&pool[i], &pool[j]);
            let Some(m) = x.midpoint(y) else { continue };
            let d = |p: &Point| space.distance_at(p, &origin, cap);
            let (Ok(dx), Ok(dy), Ok(dm)) = (d(x), d(y), d(&m)) else { continue };
            let o = match crate::number::compare_exprs(&dx, &dy, cap) {
                Cmp3::Unknown => Outcome::Unknown,
                c => {
                    let r = if c == Cmp3::Less { dy } else { dx };
                    match crate::number::compare_exprs(&dm, &r, cap) {
                        Cmp3::Less => Outcome::Pass,
                        Cmp3::Unknown => Outcome::Unknown,
                        _ => Outcome::Fail(WitnessRecord {
                            kind: WitnessKind::StrictConvexityGap,
                            x: x.clone(),
                            y: y.clone(),
                            z: Some(m),
                            value: dm.bounds(REPORT_BITS),
                            separation: r.bounds(REPORT_BITS),
                            convexity: None,
                        }),
                    }
                }
            };
            if let Some(v) = tally.push(o) {
                return Ok(v);
            }
        }
    }
    Ok(tally.finish())
}

fn ball_radius_expr(r: &BoundedReal) -> Expr {
    if r.is_exact() {
        Expr::rat(r.lo().clone())
    } else {
        Expr::Interval(r.lo().clone(), r.hi().clone())
    }
}

/// Every proper combination of distinct points of `B[0, r]` is interior to it.
pub fn check_strict_ball_convexity(space: &dyn Metric, r: &BoundedReal, cfg: &ToleranceConfig) -> Result<CheckVerdict> {
    if !r.lo().is_positive() {
        return Err(Error::InvalidParameter("radius must be positive".into()));
    }
    let mut rng = rng_for(cfg.seed, 26);
    let (origin, pool) = require_linear(space, cfg, &mut rng)?;
    let cap = cfg.precision_cap;
    let re = ball_radius_expr(r);
    // sphere points first: rescale points whose norm is rational
    let mut ball: Vec<Point> = Vec::new();
    if r.is_exact() {
        for v in &pool {
            let norm = space.distance_at(v, &origin, 0).ok().and_then(|e| e.exact()).and_then(|f| f.as_rational().cloned());
            if let Some(q) = norm.filter(|q| q.is_positive()) {
                if let Some(p) = v.lin_comb(&(r.lo() / q), &origin, &int(0)) {
                    if space.contains(&p) == Ok(true) && !ball.contains(&p) {
                        ball.push(p);
                    }
                }
            }
        }
    }
    for v in &pool {
        let inside = crate::space::compare_distance_to(space, v, &origin, &re, cap);
        if matches!(inside, Ok(Cmp3::Less | Cmp3::Equal)) && !ball.contains(v) {
            ball.push(v.clone());
        }
    }
    let mut tally = Tally::new();
    let n = ball.len();
    let lambdas = [rat(1, 2), rat(1, 4), rat(3, 4), rat(1, 3)];
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            for l in &lambdas {
                if tally.effort.samples >= cfg.budget {
                    break 'outer;
                }
                tally.effort.samples += 1;
                let (x, y) = (&ball[i], &ball[j]);
                let Some(w) = x.lerp(y, l) else { continue };
                if space.contains(&w) != Ok(true) {
                    continue;
                }
                let c = crate::space::compare_distance_to(space, &w, &origin, &re, cap).unwrap_or(Cmp3::Unknown);
                let gap = |sep| {
                    Outcome::Fail(WitnessRecord {
                        kind: WitnessKind::StrictConvexityGap,
                        x: x.clone(),
                        y: y.clone(),
                        z: Some(w.clone()),
                        value: distance_bounds(space, &w, &origin, cfg),
                        separation: sep,
                        convexity: None,
                    })
                };
                let o = match c {
                    Cmp3::Less => Outcome::Pass,
                    Cmp3::Unknown => Outcome::Unknown,
                    Cmp3::Greater => gap(r.clone()),
                    Cmp3::Equal => {
                        let a = exterior_limit_point_with(space, &origin, &w, cfg, &mut rng);
                        tally.effort.absorb(a.effort);
                        match a.verdict {
                            Answer::No => Outcome::Pass,
                            Answer::Yes => gap(r.clone()),
                            Answer::Unknown => Outcome::Unknown,
                        }
                    }
                };
                if let Some(v) = tally.push(o) {
                    return Ok(v);
                }
            }
        }
    }
    Ok(tally.finish())
}

/// Verdicts for pairwise unions and the full union of several subspaces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnionSleekReport {
    pub pairwise: Vec<((usize, usize), CheckVerdict)>,
    pub full: CheckVerdict,
    /// Every pairwise union passed but the full union failed.
    pub contradiction: bool,
}

/// Checks sleekness of every pairwise union and of the whole union.
pub fn check_union_sleekness(regions: &[Region], ambient: &MetricSpace, cfg: &ToleranceConfig) -> Result<UnionSleekReport> {
    if regions.is_empty() {
        return Err(Error::EmptyRegion("no regions given".into()));
    }
    let union = |members: Vec<Region>| -> Result<CheckVerdict> {
        let region = if members.len() == 1 { members[0].clone() } else { Region::Union { members } };
        let s = subspace(ambient.clone(), region)?;
        Ok(check_sleek(&s, cfg))
    };
    let mut pairwise = Vec::new();
    for i in 0..regions.len() {
        for j in (i + 1)..regions.len() {
            pairwise.push(((i, j), union(vec![regions[i].clone(), regions[j].clone()])?));
        }
    }
    let full = union(regions.to_vec())?;
    let contradiction = !pairwise.is_empty()
        && pairwise.iter().all(|(_, v)| v.holds())
        && full.verdict == Verdict::Violated;
    Ok(UnionSleekReport { pairwise, full, contradiction })
}
