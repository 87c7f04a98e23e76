//! Named example spaces with their known verdicts, plus exact ball descriptions for
//! the two spaces whose balls need a case analysis.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::{bounded_transform, euclidean_product, product_metric_d, ProductWeights};
use crate::error::{Error, Result};
use crate::interval_union::{Interval, IntervalUnion};
use crate::number::{int, rat, sqrt_bounds, BoundedReal, Cmp3, Expr, Rational};
use crate::point::Point;
use crate::region::Region;
use crate::space::{mismatch, subspace, Certificate, Discrete, Euclidean, Metric, MetricSpace, SpaceRng, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    True,
    False,
    Unverified,
}

impl Expected {
    pub fn known(self) -> Option<bool> {
        match self {
            Expected::True => Some(true),
            Expected::False => Some(false),
            Expected::Unverified => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub space: MetricSpace,
    pub expected_round: Expected,
    pub expected_sleek: Expected,
    /// Why the expected verdicts are what they are.
    pub provenance: &'static str,
}

/// Every registered gallery name, in display order.
pub const GALLERY_NAMES: &[&str] = &[
    "open-interval",
    "closed-interval",
    "half-open-interval",
    "gap-union",
    "rationals-sample",
    "circle",
    "segment",
    "two-point",
    "arc-x1",
    "arc-x2",
    "arcs-z",
    "halfplane-y1",
    "halfplane-y2",
    "quadrant",
    "two-lines",
    "strip-closed",
    "strip-half-open",
    "product-D",
    "product-D-factor",
    "dictionary-plane",
    "closed-disk",
    "R1",
    "R2",
    "R3",
];

fn line_subspace(parts: Vec<Interval>, name: &str) -> Result<MetricSpace> {
    Ok(Arc::new(subspace(Euclidean::new(1), Region::intervals(IntervalUnion::new(parts)))?.named(name)))
}

fn plane_subspace(region: Region, name: &str) -> Result<Subspace> {
    Ok(subspace(Euclidean::new(2), region)?.named(name))
}

fn arc_x1() -> Region {
    Region::arc([int(0), int(0)], int(1), [int(1), int(-1)], [int(1), int(1)], false)
}

fn arc_x2() -> Region {
    Region::arc([int(0), int(0)], int(1), [int(-1), int(1)], [int(-1), int(-1)], false)
}

fn y1() -> Region {
    Region::half_plane([int(0), int(-1)], int(0), true)
}

fn y2() -> Region {
    Region::half_plane([int(1), int(0)], int(0), true)
}

/// The two-point factor `{0, 1}` of the product example.
pub fn binary_factor() -> Result<MetricSpace> {
    line_subspace(vec![Interval::singleton(int(0)), Interval::singleton(int(1))], "{0,1}")
}

/// `{0,1} x R x R x ...` with `d_1 = |.|` and `d_n = t / (1 + t)` afterwards, tail based at 0.
pub fn product_d_space(truncation_k: usize) -> Result<MetricSpace> {
    let factor = binary_factor()?;
    let tail = bounded_transform(Euclidean::new(1));
    let w = ProductWeights::from_diameters(&[factor.clone()], Some(&tail), truncation_k);
    product_metric_d(vec![factor], Some((tail, Point::Scalar(int(0)))), w)
}

pub fn gallery_space(name: &str) -> Result<GalleryEntry> {
    use Expected::*;
    let (space, expected_round, expected_sleek, provenance): (MetricSpace, _, _, _) = match name {
        "open-interval" => (
            line_subspace(vec![Interval::open(int(0), int(1))], name)?,
            True,
            True,
            "the usual metric is round and sleek on (0,1)",
        ),
        "closed-interval" => (
            line_subspace(vec![Interval::closed(int(0), int(1))], name)?,
            True,
            False,
            "the usual metric is round but not sleek on [0,1]",
        ),
        "half-open-interval" => (
            line_subspace(vec![Interval::new(int(0), int(1), false, true)], name)?,
            Unverified,
            False,
            "the usual metric is not sleek on (0,1]",
        ),
        "gap-union" => (
            line_subspace(vec![Interval::closed(int(0), int(1)), Interval::closed(int(2), int(3))], name)?,
            False,
            False,
            "no equivalent metric is round on [0,1] u [2,3], and it is neither round nor sleek",
        ),
        "rationals-sample" => (
            Arc::new(RationalsSample::new(1 << 16)),
            Unverified,
            Unverified,
            "bounded-denominator stand-in for Q n [0,1]; density cannot be confirmed by sampling",
        ),
        "circle" => (
            Arc::new(plane_subspace(Region::circle([int(0), int(0)], int(1)), name)?),
            True,
            Unverified,
            "the Euclidean metric is round on the unit circle",
        ),
        "segment" => (
            Arc::new(plane_subspace(Region::segment([int(-1), int(0)], [int(1), int(0)], true), name)?),
            True,
            Unverified,
            "the Euclidean metric is round on [-1,1] x {0}",
        ),
        "two-point" => (
            Arc::new(plane_subspace(
                Region::Intersection {
                    members: vec![
                        Region::circle([int(0), int(0)], int(1)),
                        Region::segment([int(-1), int(0)], [int(1), int(0)], true),
                    ],
                },
                name,
            )?),
            False,
            False,
            "circle meets segment in two points; a space with an isolated point is neither round nor sleek",
        ),
        "arc-x1" => (Arc::new(plane_subspace(arc_x1(), name)?), Unverified, True, "the open arc (-pi/4, pi/4) is sleek"),
        "arc-x2" => (Arc::new(plane_subspace(arc_x2(), name)?), Unverified, True, "the open arc (3pi/4, 5pi/4) is sleek"),
        "arcs-z" => (
            Arc::new(plane_subspace(Region::Union { members: vec![arc_x1(), arc_x2()] }, name)?),
            Unverified,
            False,
            "the union of the opposite arcs is not sleek: the closed ball of radius 2 about (1,0) is the whole \
             union while the open ball is not (the displayed set equation has a typo; this is the intended claim)",
        ),
        "halfplane-y1" => (Arc::new(plane_subspace(y1(), name)?), Unverified, True, "R x (-inf, 0] is sleek"),
        "halfplane-y2" => (Arc::new(plane_subspace(y2(), name)?), Unverified, True, "[0, inf) x R is sleek"),
        "quadrant" => (
            Arc::new(
                plane_subspace(Region::Intersection { members: vec![y1(), y2()] }, name)?
                    .with_landmarks(vec![Point::vec2(int(1), int(-1)), Point::vec2(int(0), int(0))]),
            ),
            Unverified,
            False,
            "[0, inf) x (-inf, 0] is not sleek: the origin is interior to the closed ball about (1,-1) of radius sqrt 2",
        ),
        "two-lines" => (TwoLines::space()?, False, True, "R x {0,1} is sleek but not round"),
        "strip-closed" => (
            Arc::new(plane_subspace(
                Region::Intersection {
                    members: vec![
                        Region::half_plane([int(0), int(1)], int(0), true),
                        Region::half_plane([int(0), int(-1)], int(-1), true),
                    ],
                },
                name,
            )?),
            Unverified,
            True,
            "R x [0,1] is sleek although [0,1] is not",
        ),
        "strip-half-open" => (
            Arc::new(plane_subspace(
                Region::Intersection {
                    members: vec![
                        Region::half_plane([int(0), int(1)], int(0), false),
                        Region::half_plane([int(0), int(-1)], int(-1), true),
                    ],
                },
                name,
            )?),
            Unverified,
            True,
            "R x (0,1] is sleek although (0,1] is not",
        ),
        "product-D" => (
            product_d_space(32)?,
            Unverified,
            True,
            "the series metric on {0,1} x R^inf is sleek even though the factor {0,1} is not",
        ),
        "product-D-factor" => (binary_factor()?, False, False, "{0,1} has isolated points"),
        "dictionary-plane" => (
            euclidean_product(vec![Discrete::reals(), Euclidean::new(1)])?,
            Unverified,
            True,
            "R_dis x R is sleek: every pair of vertical lines is",
        ),
        "closed-disk" => (
            Arc::new(plane_subspace(Region::disk([int(0), int(0)], int(1), true), name)?),
            True,
            False,
            "the disk is convex, hence round; it is compact with two points, hence not sleek",
        ),
        "R1" => (Euclidean::new(1), True, True, "the real line is round and strongly externally convex"),
        "R2" => (Euclidean::new(2), True, True, "the plane is round and strongly externally convex"),
        "R3" => (Euclidean::new(3), True, True, "3-space is round and strongly externally convex"),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    let name = GALLERY_NAMES.iter().find(|n| **n == name).copied().unwrap_or("unknown");
    Ok(GalleryEntry { name, space, expected_round, expected_sleek, provenance })
}

/// All entries, in registry order.
pub fn gallery() -> Result<Vec<GalleryEntry>> {
    GALLERY_NAMES.iter().map(|n| gallery_space(n)).collect()
}

/// `R x {0, 1}` with the Euclidean metric, on vector points.
#[derive(Debug)]
pub struct TwoLines {
    inner: Subspace,
}

impl TwoLines {
    pub fn new() -> Result<Self> {
        let lines = Region::Union {
            members: vec![
                Region::line([int(0), int(0)], [int(1), int(0)]),
                Region::line([int(0), int(1)], [int(1), int(0)]),
            ],
        };
        Ok(Self { inner: subspace(Euclidean::new(2), lines)?.named("two-lines") })
    }

    pub fn space() -> Result<MetricSpace> {
        Ok(Arc::new(Self::new()?))
    }
}

impl Metric for TwoLines {
    fn name(&self) -> String {
        "two-lines".into()
    }

    fn contains(&self, p: &Point) -> Result<bool> {
        self.inner.contains(p)
    }

    fn distance_at(&self, p: &Point, q: &Point, level: u32) -> Result<Expr> {
        self.inner.distance_at(p, q, level)
    }

    fn propose_near(&self, p: &Point, radius: &Rational, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        self.inner.propose_near(p, radius, count, rng)
    }

    fn propose_global(&self, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        self.inner.propose_global(count, rng)
    }

    fn landmarks(&self) -> Vec<Point> {
        let mut v = vec![Point::vec2(int(0), int(0)), Point::vec2(int(0), int(1))];
        v.extend(self.inner.landmarks());
        v
    }

    fn closure_gap(&self, x: &Point, y: &Point) -> Option<Certificate> {
        let (Point::Vector(a), Point::Vector(b)) = (x, y) else { return None };
        // the nearest point of the other line: every other point of that line is farther
        (a.len() == 2 && b.len() == 2 && a[0] == b[0] && a[1] != b[1]).then(|| {
            Certificate::new(rat(1, 2), "the other line touches the sphere only at the foot of the perpendicular")
        })
    }

    fn euclidean_dim(&self) -> Option<usize> {
        None
    }

    fn region(&self) -> Option<&Region> {
        Some(&self.inner.region)
    }
}

/// Rationals of `[0, 1]` with denominator at most `max_den`: a finite stand-in for `Q n [0,1]`.
#[derive(Debug)]
pub struct RationalsSample {
    max_den: i64,
}

impl RationalsSample {
    pub fn new(max_den: i64) -> Self {
        Self { max_den }
    }

    fn nearby<R: Rng>(&self, c: &Rational, radius: &Rational, rng: &mut R) -> Point {
        let den = rng.gen_range(1..=self.max_den);
        let offset = Rational::new((rng.gen_range(-1000..=1000)).into(), 1000.into()) * radius;
        let target = c + offset;
        let num = (target * Rational::from_integer(den.into())).round();
        Point::Scalar((num / Rational::from_integer(den.into())).max(Rational::zero()).min(Rational::one()))
    }
}

impl Metric for RationalsSample {
    fn name(&self) -> String {
        format!("rationals in [0,1] with denominator <= {}", self.max_den)
    }

    fn contains(&self, p: &Point) -> Result<bool> {
        match p {
            Point::Scalar(q) => Ok(!q.is_negative() && q <= &Rational::one() && q.denom() <= &self.max_den.into()),
            _ => Err(mismatch(self, p)),
        }
    }

    fn distance_at(&self, p: &Point, q: &Point, _level: u32) -> Result<Expr> {
        match (p, q) {
            (Point::Scalar(a), Point::Scalar(b)) => Ok(Expr::rat((a - b).abs())),
            (Point::Scalar(_), _) => Err(mismatch(self, q)),
            _ => Err(mismatch(self, p)),
        }
    }

    fn propose_near(&self, p: &Point, radius: &Rational, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        let Point::Scalar(c) = p else { return Vec::new() };
        (0..count).map(|_| self.nearby(c, radius, rng)).collect()
    }

    fn propose_global(&self, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        (0..count).map(|_| self.nearby(&rat(1, 2), &rat(1, 2), rng)).collect()
    }

    fn landmarks(&self) -> Vec<Point> {
        vec![Point::Scalar(int(0)), Point::Scalar(rat(1, 2)), Point::Scalar(int(1))]
    }

    fn diameter(&self) -> Option<Rational> {
        Some(int(1))
    }
}

fn r_squared(r: &BoundedReal) -> BoundedReal {
    let lo = r.lo().max(&Rational::zero()).clone();
    BoundedReal::new(&lo * &lo, r.hi() * r.hi())
}

/// `q <= b`, three-valued.
fn at_most(q: &Rational, b: &BoundedReal) -> Option<bool> {
    if q <= b.lo() {
        Some(true)
    } else if q > b.hi() {
        Some(false)
    } else {
        None
    }
}

/// A horizontal piece `{(x, level) : (x - center)^2 <= half_width_sq}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripSegment {
    pub level: u8,
    #[serde(with = "crate::serde_util")]
    pub center: Rational,
    pub half_width_sq: BoundedReal,
    /// Enclosure of the square root, for display.
    pub half_width: BoundedReal,
}

/// The closed ball of `R x {0,1}` about `(a, b)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XPrimeBall {
    pub segments: Vec<StripSegment>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isolated: Option<Point>,
}

impl XPrimeBall {
    /// Membership of a point of `R x {0,1}`; `None` when the radius is too loose to tell.
    pub fn contains(&self, p: &Point) -> Option<bool> {
        let Point::Vector(v) = p else { return Some(false) };
        if v.len() != 2 {
            return Some(false);
        }
        if self.isolated.as_ref() == Some(p) {
            return Some(true);
        }
        let mut undecided = false;
        for s in &self.segments {
            if v[1] != Rational::from_integer(s.level.into()) {
                continue;
            }
            let dx = &v[0] - &s.center;
            match at_most(&(&dx * &dx), &s.half_width_sq) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => undecided = true,
            }
        }
        if undecided {
            None
        } else {
            Some(false)
        }
    }
}

/// Closed ball of `R x {0,1}` about `(a, b)` of radius `r`, by the three cases
/// `r < 1`, `r = 1`, `r > 1`.
pub fn xprime_ball_oracle(a: &Rational, b: u8, r: &BoundedReal) -> XPrimeBall {
    let b = b.min(1);
    let r2 = r_squared(r);
    let own = StripSegment { level: b, center: a.clone(), half_width_sq: r2.clone(), half_width: r.clone() };
    let other = 1 - b;
    match r.cmp3(&BoundedReal::exact(int(1))) {
        Cmp3::Less => XPrimeBall { segments: vec![own], isolated: None },
        Cmp3::Equal => XPrimeBall {
            segments: vec![own],
            isolated: Some(Point::vec2(a.clone(), Rational::from_integer(other.into()))),
        },
        _ => {
            let sq = BoundedReal::new((r2.lo() - int(1)).max(Rational::zero()), r2.hi() - int(1));
            let half_width = BoundedReal::new(sqrt_bounds(sq.lo(), 64).lo().clone(), sqrt_bounds(sq.hi(), 64).hi().clone());
            let far = StripSegment { level: other, center: a.clone(), half_width_sq: sq, half_width };
            XPrimeBall { segments: vec![own, far], isolated: None }
        }
    }
}

/// `A_{rho, c}`: points with first coordinate `c` whose tail sum to the center is at most `rho`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ASet {
    #[serde(with = "crate::serde_util")]
    pub first: Rational,
    pub radius: BoundedReal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum ProductDBall {
    /// `0 < r < 1/2`
    Single { set: ASet },
    /// `r = 1/2`: the set plus the point with the first coordinate flipped.
    WithFlippedPoint { set: ASet, point: Point },
    /// `1/2 < r < 1`
    Double { set: ASet, flipped: ASet },
    /// `r >= 1`
    Whole,
}

fn product_d_coords(p: &Point) -> Option<(Rational, Vec<Rational>)> {
    let Point::Seq { prefix, tail_base } = p else { return None };
    if tail_base.as_deref() != Some(&Point::Scalar(Rational::zero())) {
        return None;
    }
    let mut it = prefix.iter().map(|c| match c {
        Point::Scalar(q) => Some(q.clone()),
        _ => None,
    });
    let first = it.next()??;
    if !(first.is_zero() || first.is_one()) {
        return None;
    }
    let rest: Option<Vec<Rational>> = it.collect();
    Some((first, rest?))
}

/// `sum_{n >= 2} t_n / (1 + t_n) 2^{-n}` with `t_n = |p_n - q_n|`; exact since prefixes are finite.
fn tail_sum(p: &[Rational], q: &[Rational]) -> Rational {
    let n = p.len().max(q.len());
    let zero = Rational::zero();
    let mut w = rat(1, 4);
    let mut s = Rational::zero();
    for k in 0..n {
        let t = (p.get(k).unwrap_or(&zero) - q.get(k).unwrap_or(&zero)).abs();
        s += &w * &t / (Rational::one() + &t);
        w /= int(2);
    }
    s
}

impl ProductDBall {
    /// Membership of a point of `{0,1} x R^inf`, relative to the ball's center.
    pub fn contains(&self, center: &Point, p: &Point) -> Result<Option<bool>> {
        let (a1, a) = product_d_coords(center).ok_or_else(|| Error::DomainMismatch {
            space: "product-D".into(),
            point: center.to_string(),
        })?;
        let (z1, z) = product_d_coords(p).ok_or_else(|| Error::DomainMismatch {
            space: "product-D".into(),
            point: p.to_string(),
        })?;
        let t = tail_sum(&z, &a);
        let in_set = |s: &ASet| if z1 == s.first { at_most(&t, &s.radius) } else { Some(false) };
        Ok(match self {
            ProductDBall::Whole => Some(true),
            ProductDBall::Single { set } => in_set(set),
            ProductDBall::WithFlippedPoint { set, .. } => match in_set(set) {
                Some(true) => Some(true),
                other => {
                    let flipped = z1 != a1 && t.is_zero();
                    if flipped {
                        Some(true)
                    } else {
                        other
                    }
                }
            },
            ProductDBall::Double { set, flipped } => match (in_set(set), in_set(flipped)) {
                (Some(true), _) | (_, Some(true)) => Some(true),
                (Some(false), Some(false)) => Some(false),
                _ => None,
            },
        })
    }
}

/// Closed ball of the product-D gallery space about `a`, by the three cases around `1/2`.
pub fn product_d_ball_oracle(a: &Point, r: &BoundedReal) -> Result<ProductDBall> {
    let (a1, rest) = product_d_coords(a).ok_or_else(|| Error::DomainMismatch {
        space: "product-D".into(),
        point: a.to_string(),
    })?;
    if !r.lo().is_positive() {
        return Err(Error::InvalidParameter("radius must be positive".into()));
    }
    let set = ASet { first: a1.clone(), radius: r.clone() };
    let half = BoundedReal::exact(rat(1, 2));
    let flipped_first = Rational::one() - &a1;
    if r.cmp3(&BoundedReal::exact(int(1))) != Cmp3::Less && r.lo() >= &int(1) {
        return Ok(ProductDBall::Whole);
    }
    Ok(match r.cmp3(&half) {
        Cmp3::Less => ProductDBall::Single { set },
        Cmp3::Equal => {
            let mut prefix = vec![Point::Scalar(flipped_first)];
            prefix.extend(rest.into_iter().map(Point::Scalar));
            ProductDBall::WithFlippedPoint { set, point: Point::seq(prefix, Some(Point::Scalar(Rational::zero()))) }
        }
        _ => {
            let radius = BoundedReal::new(r.lo() - rat(1, 2), r.hi() - rat(1, 2));
            ProductDBall::Double { set, flipped: ASet { first: flipped_first, radius } }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::compare_distance_to;

    #[test]
    fn registry_resolves_every_name() {
        for name in GALLERY_NAMES {
            let e = gallery_space(name).unwrap();
            assert_eq!(&e.name, name);
        }
        assert!(matches!(gallery_space("moebius"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn xprime_cases() {
        let zero = Rational::zero();
        let half = xprime_ball_oracle(&zero, 0, &BoundedReal::exact(rat(1, 2)));
        assert_eq!(half.segments.len(), 1);
        assert!(half.isolated.is_none());
        let one = xprime_ball_oracle(&zero, 0, &BoundedReal::exact(int(1)));
        assert_eq!(one.isolated, Some(Point::vec2(int(0), int(1))));
        let two = xprime_ball_oracle(&zero, 0, &BoundedReal::exact(int(2)));
        assert_eq!(two.segments[1].half_width_sq, BoundedReal::exact(int(3)));
        assert_eq!(two.contains(&Point::vec2(rat(17, 10), int(1))), Some(true));
        assert_eq!(two.contains(&Point::vec2(rat(18, 10), int(1))), Some(false));
    }

    #[test]
    fn product_d_cases_match_distances() {
        let space = product_d_space(32).unwrap();
        let a = Point::seq(vec![Point::Scalar(int(0)), Point::Scalar(int(1))], Some(Point::Scalar(int(0))));
        let probes = [
            Point::seq(vec![Point::Scalar(int(1)), Point::Scalar(int(1))], Some(Point::Scalar(int(0)))),
            Point::seq(vec![Point::Scalar(int(1)), Point::Scalar(int(2))], Some(Point::Scalar(int(0)))),
            Point::seq(vec![Point::Scalar(int(0)), Point::Scalar(int(5))], Some(Point::Scalar(int(0)))),
        ];
        for r in [rat(1, 4), rat(1, 2), rat(3, 4), int(1)] {
            let ball = product_d_ball_oracle(&a, &BoundedReal::exact(r.clone())).unwrap();
            for p in &probes {
                let direct = compare_distance_to(&*space, &a, p, &Expr::rat(r.clone()), 6).unwrap();
                let expect = matches!(direct, Cmp3::Less | Cmp3::Equal);
                assert_eq!(ball.contains(&a, p).unwrap(), Some(expect), "r={r} p={p}");
            }
        }
        assert!(matches!(product_d_ball_oracle(&Point::Scalar(int(0)), &BoundedReal::exact(int(1))), Err(Error::DomainMismatch { .. })));
    }
}
