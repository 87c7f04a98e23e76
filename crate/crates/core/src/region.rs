//! Subsets of the line and the plane with exactly decidable membership.

use std::f64::consts::PI;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::interval_union::IntervalUnion;
use crate::number::{exact_sqrt, from_f64_grid, int, rat, sqrt_bounds, to_f64, Rational};
use crate::point::Point;

type V2 = [Rational; 2];

fn v2(p: &[Rational]) -> V2 {
    [p[0].clone(), p[1].clone()]
}

fn sub(a: &V2, b: &V2) -> V2 {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

fn dot(a: &V2, b: &V2) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1]
}

fn cross(a: &V2, b: &V2) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn norm2(a: &V2) -> Rational {
    dot(a, a)
}

fn pt(a: V2) -> Point {
    Point::Vector(a.to_vec())
}

fn as_v2(p: &Point) -> Option<V2> {
    match p {
        Point::Vector(v) if v.len() == 2 => Some(v2(v)),
        _ => None,
    }
}

/// Rational lower bound on a square root.
fn sqrt_lo(q: &Rational) -> Rational {
    sqrt_bounds(q, 40).lo().clone()
}

fn sqrt_hi(q: &Rational) -> Rational {
    sqrt_bounds(q, 40).hi().clone()
}

/// Uniform rational in `(-1, 1)` on a fine grid.
fn unit<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-4095..=4095), 4096)
}

/// A region of `R`, `R^2`, a product, or a label set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    Intervals {
        intervals: IntervalUnion,
    },
    Disk {
        #[serde(with = "crate::serde_util::vec")]
        center: Vec<Rational>,
        #[serde(with = "crate::serde_util")]
        radius: Rational,
        closed: bool,
    },
    /// Arc swept counterclockwise from direction `from` to direction `to`; the whole
    /// circle when both are absent. Directions need not be unit vectors.
    CircleArc {
        #[serde(with = "crate::serde_util::vec")]
        center: Vec<Rational>,
        #[serde(with = "crate::serde_util")]
        radius: Rational,
        #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::serde_util::option_vec")]
        from: Option<Vec<Rational>>,
        #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::serde_util::option_vec")]
        to: Option<Vec<Rational>>,
        #[serde(default = "yes")]
        closed: bool,
    },
    Segment {
        #[serde(with = "crate::serde_util::vec")]
        p: Vec<Rational>,
        #[serde(with = "crate::serde_util::vec")]
        q: Vec<Rational>,
        closed: bool,
    },
    Line {
        #[serde(with = "crate::serde_util::vec")]
        point: Vec<Rational>,
        #[serde(with = "crate::serde_util::vec")]
        direction: Vec<Rational>,
    },
    /// `normal . z >= offset` (or `>` when open).
    HalfPlane {
        #[serde(with = "crate::serde_util::vec")]
        normal: Vec<Rational>,
        #[serde(with = "crate::serde_util")]
        offset: Rational,
        closed: bool,
    },
    ProductRegion {
        factors: Vec<Region>,
    },
    Union {
        members: Vec<Region>,
    },
    Intersection {
        members: Vec<Region>,
    },
    FullSpace {
        dim: usize,
    },
    LabelSet {
        labels: Vec<String>,
    },
    Points {
        points: Vec<Point>,
    },
}

fn yes() -> bool {
    true
}

impl Region {
    pub fn intervals(u: IntervalUnion) -> Self {
        Region::Intervals { intervals: u }
    }

    pub fn circle(center: V2, radius: Rational) -> Self {
        Region::CircleArc { center: center.to_vec(), radius, from: None, to: None, closed: true }
    }

    pub fn arc(center: V2, radius: Rational, from: V2, to: V2, closed: bool) -> Self {
        Region::CircleArc {
            center: center.to_vec(),
            radius,
            from: Some(from.to_vec()),
            to: Some(to.to_vec()),
            closed,
        }
    }

    pub fn disk(center: V2, radius: Rational, closed: bool) -> Self {
        Region::Disk { center: center.to_vec(), radius, closed }
    }

    pub fn segment(p: V2, q: V2, closed: bool) -> Self {
        Region::Segment { p: p.to_vec(), q: q.to_vec(), closed }
    }

    pub fn line(point: V2, direction: V2) -> Self {
        Region::Line { point: point.to_vec(), direction: direction.to_vec() }
    }

    pub fn half_plane(normal: V2, offset: Rational, closed: bool) -> Self {
        Region::HalfPlane { normal: normal.to_vec(), offset, closed }
    }

    /// Ambient dimension for Euclidean regions; `None` for products and labels.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Region::Intervals { .. } => Some(1),
            Region::FullSpace { dim } => Some(*dim),
            Region::Disk { .. }
            | Region::CircleArc { .. }
            | Region::Segment { .. }
            | Region::Line { .. }
            | Region::HalfPlane { .. } => Some(2),
            Region::Union { members } | Region::Intersection { members } => {
                members.first().and_then(|m| m.dim())
            }
            Region::Points { points } => points.first().and_then(|p| p.coords()).map(|c| c.len()),
            Region::ProductRegion { .. } | Region::LabelSet { .. } => None,
        }
    }

    /// Exact membership; `None` when the point has the wrong shape.
    pub fn contains(&self, p: &Point) -> Option<bool> {
        Some(match self {
            Region::Intervals { intervals } => match p {
                Point::Scalar(x) => intervals.contains(x),
                _ => return None,
            },
            Region::FullSpace { dim } => match (p, dim) {
                (Point::Scalar(_), 1) => true,
                (Point::Vector(v), d) => v.len() == *d,
                _ => return None,
            },
            Region::Disk { center, radius, closed } => {
                let z = as_v2(p)?;
                let d2 = norm2(&sub(&z, &v2(center)));
                let r2 = radius * radius;
                if *closed { d2 <= r2 } else { d2 < r2 }
            }
            Region::CircleArc { center, radius, from, to, closed } => {
                let z = as_v2(p)?;
                let w = sub(&z, &v2(center));
                if norm2(&w) != radius * radius {
                    return Some(false);
                }
                match (from, to) {
                    (Some(u), Some(v)) => in_sweep(&v2(u), &v2(v), &w, *closed),
                    _ => true,
                }
            }
            Region::Segment { p: a, q: b, closed } => {
                let z = as_v2(p)?;
                let (a, b) = (v2(a), v2(b));
                let d = sub(&b, &a);
                let w = sub(&z, &a);
                if !cross(&d, &w).is_zero() {
                    return Some(false);
                }
                let t = dot(&d, &w);
                let len2 = norm2(&d);
                if *closed {
                    !t.is_negative() && t <= len2
                } else {
                    t.is_positive() && t < len2
                }
            }
            Region::Line { point, direction } => {
                let z = as_v2(p)?;
                cross(&v2(direction), &sub(&z, &v2(point))).is_zero()
            }
            Region::HalfPlane { normal, offset, closed } => {
                let z = as_v2(p)?;
                let s = dot(&v2(normal), &z);
                if *closed { &s >= offset } else { &s > offset }
            }
            Region::ProductRegion { factors } => {
                let parts = unpair(p, factors.len())?;
                let mut all = true;
                for (f, q) in factors.iter().zip(parts) {
                    all &= f.contains(q)?;
                }
                all
            }
            Region::Union { members } => {
                let mut any = false;
                for m in members {
                    any |= m.contains(p)?;
                }
                any
            }
            Region::Intersection { members } => {
                let mut all = true;
                for m in members {
                    all &= m.contains(p)?;
                }
                all
            }
            Region::LabelSet { labels } => match p {
                Point::Label(l) => labels.contains(l),
                _ => return None,
            },
            Region::Points { points } => points.contains(p),
        })
    }

    /// Replaces exactly solvable line/circle intersections by their point sets.
    pub fn simplify(self) -> Region {
        match self {
            Region::Intersection { members } => {
                let members: Vec<Region> = members.into_iter().map(Region::simplify).collect();
                if let Some(points) = line_circle_points(&members) {
                    let kept = points
                        .into_iter()
                        .filter(|p| members.iter().all(|m| m.contains(p) == Some(true)))
                        .collect();
                    return Region::Points { points: kept };
                }
                if let Some(Region::Points { points }) =
                    members.iter().find(|m| matches!(m, Region::Points { .. }))
                {
                    let kept = points
                        .iter()
                        .filter(|p| members.iter().all(|m| m.contains(p) == Some(true)))
                        .cloned()
                        .collect();
                    return Region::Points { points: kept };
                }
                Region::Intersection { members }
            }
            Region::Union { members } => {
                Region::Union { members: members.into_iter().map(Region::simplify).collect() }
            }
            other => other,
        }
    }

    /// Candidate points near `p` (not necessarily members, not necessarily within `radius`).
    pub fn propose_near<R: Rng>(&self, p: &Point, radius: &Rational, count: usize, rng: &mut R) -> Vec<Point> {
        let mut out = Vec::with_capacity(count);
        match self {
            Region::Intervals { intervals } => {
                let Point::Scalar(x) = p else { return out };
                let lo = x - radius;
                let hi = x + radius;
                let windows: Vec<(Rational, Rational)> = intervals
                    .components()
                    .iter()
                    .filter_map(|c| {
                        let a = c.lo.clone().map_or(lo.clone(), |a| a.max(lo.clone()));
                        let b = c.hi.clone().map_or(hi.clone(), |b| b.min(hi.clone()));
                        (a <= b).then_some((a, b))
                    })
                    .collect();
                for i in 0..count {
                    if i % 2 == 0 || windows.is_empty() {
                        out.push(Point::Scalar(x + radius * unit(rng)));
                    } else {
                        let (a, b) = &windows[rng.gen_range(0..windows.len())];
                        let t = rat(rng.gen_range(0..=4096), 4096);
                        out.push(Point::Scalar(a + (b - a) * t));
                    }
                }
            }
            Region::FullSpace { .. } | Region::Disk { .. } => box_near(p, radius, count, rng, &mut out),
            Region::HalfPlane { normal, offset, .. } => {
                let Some(z) = as_v2(p) else { return out };
                let n = v2(normal);
                let foot = project_to_line(&z, &n, offset);
                let tangent = [-n[1].clone(), n[0].clone()];
                let scale = radius / (n[0].abs() + n[1].abs());
                for i in 0..count {
                    if i % 2 == 0 {
                        box_near(p, radius, 1, rng, &mut out);
                    } else {
                        let t = unit(rng) * &scale;
                        out.push(pt([&foot[0] + &tangent[0] * &t, &foot[1] + &tangent[1] * &t]));
                    }
                }
            }
            Region::Segment { p: a, q: b, .. } => {
                let Some(z) = as_v2(p) else { return out };
                let (a, b) = (v2(a), v2(b));
                line_near(&z, &a, &sub(&b, &a), radius, count, rng, &mut out);
            }
            Region::Line { point, direction } => {
                let Some(z) = as_v2(p) else { return out };
                line_near(&z, &v2(point), &v2(direction), radius, count, rng, &mut out);
            }
            Region::CircleArc { center, radius: r, .. } => {
                let Some(z) = as_v2(p) else { return out };
                let c = v2(center);
                let w = sub(&z, &c);
                let theta0 = to_f64(&w[1]).atan2(to_f64(&w[0]));
                let spread = (to_f64(radius) / to_f64(r)).min(PI);
                for _ in 0..count {
                    let theta = theta0 + spread * to_f64(&unit(rng));
                    out.push(pt(circle_point(&c, r, theta, spread)));
                }
            }
            Region::ProductRegion { factors } => {
                let Some(parts) = unpair(p, factors.len()) else { return out };
                let per: Vec<Vec<Point>> = factors
                    .iter()
                    .zip(&parts)
                    .map(|(f, q)| {
                        let mut v = f.propose_near(q, radius, count, rng);
                        if v.is_empty() {
                            v.push((*q).clone());
                        }
                        v
                    })
                    .collect();
                for i in 0..count {
                    let coords: Vec<Point> = per.iter().map(|v| v[i % v.len()].clone()).collect();
                    out.push(repair(coords));
                }
            }
            Region::Union { members } | Region::Intersection { members } => {
                let share = count.div_ceil(members.len().max(1));
                for m in members {
                    out.extend(m.propose_near(p, radius, share, rng));
                }
            }
            Region::LabelSet { labels } => {
                out.extend(labels.iter().take(count).map(|l| Point::Label(l.clone())));
            }
            Region::Points { points } => out.extend(points.iter().cloned()),
        }
        out
    }

    /// Candidate points spread over the region (or a box around the origin).
    pub fn propose_global<R: Rng>(&self, count: usize, rng: &mut R) -> Vec<Point> {
        let mut out = Vec::with_capacity(count);
        match self {
            Region::Intervals { intervals } => {
                let comps = intervals.components();
                for _ in 0..count {
                    if comps.is_empty() {
                        break;
                    }
                    let c = &comps[rng.gen_range(0..comps.len())];
                    let a = c.lo.clone().unwrap_or_else(|| c.hi.clone().map_or(int(-3), |h| h - int(3)));
                    let b = c.hi.clone().unwrap_or_else(|| &a + int(3));
                    let t = rat(rng.gen_range(0..=4096), 4096);
                    out.push(Point::Scalar(&a + (&b - &a) * t));
                }
            }
            Region::FullSpace { dim } => {
                for _ in 0..count {
                    let v: Vec<Rational> = (0..*dim).map(|_| unit(rng) * int(3)).collect();
                    out.push(if *dim == 1 { Point::Scalar(v[0].clone()) } else { Point::Vector(v) });
                }
            }
            Region::Disk { center, radius, .. } => {
                let c = Point::Vector(center.clone());
                box_near(&c, radius, count, rng, &mut out);
            }
            Region::CircleArc { center, radius, .. } => {
                let c = v2(center);
                for _ in 0..count {
                    let theta = PI * to_f64(&unit(rng));
                    out.push(pt(circle_point(&c, radius, theta, 0.05)));
                }
            }
            Region::Segment { p, q, .. } => {
                let (a, b) = (v2(p), v2(q));
                for _ in 0..count {
                    let t = rat(rng.gen_range(0..=4096), 4096);
                    out.push(pt([&a[0] + (&b[0] - &a[0]) * &t, &a[1] + (&b[1] - &a[1]) * &t]));
                }
            }
            Region::Line { point, direction } => {
                let (a, d) = (v2(point), v2(direction));
                let s = int(3) / (d[0].abs() + d[1].abs());
                for _ in 0..count {
                    let t = unit(rng) * &s;
                    out.push(pt([&a[0] + &d[0] * &t, &a[1] + &d[1] * &t]));
                }
            }
            Region::HalfPlane { normal, offset, .. } => {
                let o = Point::vec2(Rational::zero(), Rational::zero());
                box_near(&o, &int(3), count, rng, &mut out);
                let n = v2(normal);
                let foot = project_to_line(&[Rational::zero(), Rational::zero()], &n, offset);
                let tangent = [-n[1].clone(), n[0].clone()];
                let s = int(3) / (n[0].abs() + n[1].abs());
                for _ in 0..count / 4 {
                    let t = unit(rng) * &s;
                    out.push(pt([&foot[0] + &tangent[0] * &t, &foot[1] + &tangent[1] * &t]));
                }
            }
            Region::ProductRegion { factors } => {
                let per: Vec<Vec<Point>> = factors.iter().map(|f| f.propose_global(count, rng)).collect();
                if per.iter().any(|v| v.is_empty()) {
                    return out;
                }
                for i in 0..count {
                    let coords: Vec<Point> = per.iter().map(|v| v[(i * 7 + 3) % v.len()].clone()).collect();
                    out.push(repair(coords));
                }
            }
            Region::Union { members } | Region::Intersection { members } => {
                let share = count.div_ceil(members.len().max(1));
                for m in members {
                    out.extend(m.propose_global(share, rng));
                }
            }
            Region::LabelSet { labels } => {
                for _ in 0..count.min(4 * labels.len()) {
                    out.push(Point::Label(labels[rng.gen_range(0..labels.len())].clone()));
                }
            }
            Region::Points { points } => out.extend(points.iter().cloned()),
        }
        out
    }

    /// Distinguished candidate points: endpoints, corners, axis points. Not filtered.
    pub fn landmarks(&self) -> Vec<Point> {
        let zero = Rational::zero;
        match self {
            Region::Intervals { intervals } => {
                let mut v = Vec::new();
                for c in intervals.components() {
                    v.extend(c.lo.clone().map(Point::Scalar));
                    v.push(Point::Scalar(c.interior_point()));
                    v.extend(c.hi.clone().map(Point::Scalar));
                }
                v
            }
            Region::FullSpace { dim } => {
                if *dim == 1 {
                    vec![Point::Scalar(zero()), Point::Scalar(int(1))]
                } else {
                    let o = vec![zero(); *dim];
                    let mut e = o.clone();
                    e[0] = int(1);
                    vec![Point::Vector(o), Point::Vector(e)]
                }
            }
            Region::Disk { center, radius, .. } | Region::CircleArc { center, radius, .. } => {
                let c = v2(center);
                let mut v = vec![];
                if matches!(self, Region::Disk { .. }) {
                    v.push(pt(c.clone()));
                }
                for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    v.push(pt([&c[0] + radius * int(dx), &c[1] + radius * int(dy)]));
                }
                v
            }
            Region::Segment { p, q, .. } => {
                let (a, b) = (v2(p), v2(q));
                let m = [(&a[0] + &b[0]) / int(2), (&a[1] + &b[1]) / int(2)];
                vec![pt(a), pt(m), pt(b)]
            }
            Region::Line { point, .. } => vec![Point::Vector(point.clone())],
            Region::HalfPlane { normal, offset, .. } => {
                let n = v2(normal);
                let foot = project_to_line(&[zero(), zero()], &n, offset);
                let inside = [&foot[0] + &n[0], &foot[1] + &n[1]];
                vec![pt(foot), pt(inside), Point::vec2(zero(), zero())]
            }
            Region::ProductRegion { factors } => {
                let per: Vec<Vec<Point>> = factors.iter().map(|f| f.landmarks()).collect();
                if per.iter().any(|v| v.is_empty()) {
                    return Vec::new();
                }
                let n = per.iter().map(|v| v.len()).max().unwrap_or(0);
                (0..n)
                    .map(|i| repair(per.iter().map(|v| v[i % v.len()].clone()).collect()))
                    .collect()
            }
            Region::Union { members } => members.iter().flat_map(|m| m.landmarks()).collect(),
            Region::Intersection { members } => {
                let mut v: Vec<Point> = members.iter().flat_map(|m| m.landmarks()).collect();
                let lines: Vec<(V2, Rational)> = members.iter().filter_map(boundary_line).collect();
                for i in 0..lines.len() {
                    for j in i + 1..lines.len() {
                        if let Some(c) = intersect_lines(&lines[i], &lines[j]) {
                            v.push(pt(c));
                        }
                    }
                }
                v
            }
            Region::LabelSet { labels } => labels.iter().map(|l| Point::Label(l.clone())).collect(),
            Region::Points { points } => points.clone(),
        }
    }

    /// A rigorous upper bound on the Euclidean diameter, when bounded.
    pub fn diameter_bound(&self) -> Option<Rational> {
        match self {
            Region::Intervals { intervals } => intervals.span(),
            Region::Disk { radius, .. } | Region::CircleArc { radius, .. } => Some(radius * int(2)),
            Region::Segment { p, q, .. } => Some(sqrt_hi(&norm2(&sub(&v2(q), &v2(p))))),
            Region::Points { points } => {
                let mut best = Rational::zero();
                for a in points {
                    for b in points {
                        let d2 = euclid2(a, b)?;
                        best = best.max(sqrt_hi(&d2));
                    }
                }
                Some(best)
            }
            Region::Union { members } => {
                if let Some((c, r)) = common_circle(members) {
                    let _ = c;
                    return Some(r * int(2));
                }
                let (lo, hi) = self.bbox()?;
                Some(sqrt_hi(&norm2(&sub(&hi, &lo))))
            }
            Region::Intersection { members } => members.iter().filter_map(|m| m.diameter_bound()).min(),
            _ => None,
        }
    }

    fn bbox(&self) -> Option<(V2, V2)> {
        match self {
            Region::Disk { center, radius, .. } | Region::CircleArc { center, radius, .. } => {
                let c = v2(center);
                Some(([&c[0] - radius, &c[1] - radius], [&c[0] + radius, &c[1] + radius]))
            }
            Region::Segment { p, q, .. } => {
                let (a, b) = (v2(p), v2(q));
                Some((
                    [a[0].clone().min(b[0].clone()), a[1].clone().min(b[1].clone())],
                    [a[0].clone().max(b[0].clone()), a[1].clone().max(b[1].clone())],
                ))
            }
            Region::Points { points } => {
                let vs: Vec<V2> = points.iter().filter_map(as_v2).collect();
                let first = vs.first()?.clone();
                Some(vs.iter().fold((first.clone(), first), |(lo, hi), v| {
                    (
                        [lo[0].clone().min(v[0].clone()), lo[1].clone().min(v[1].clone())],
                        [hi[0].clone().max(v[0].clone()), hi[1].clone().max(v[1].clone())],
                    )
                }))
            }
            Region::Union { members } => {
                let boxes: Option<Vec<(V2, V2)>> = members.iter().map(|m| m.bbox()).collect();
                let boxes = boxes?;
                let first = boxes.first()?.clone();
                Some(boxes.iter().fold(first, |(lo, hi), (a, b)| {
                    (
                        [lo[0].clone().min(a[0].clone()), lo[1].clone().min(a[1].clone())],
                        [hi[0].clone().max(b[0].clone()), hi[1].clone().max(b[1].clone())],
                    )
                }))
            }
            Region::Intersection { members } => members.iter().find_map(|m| m.bbox()),
            _ => None,
        }
    }

    /// `Some(eps)` when `B(y, eps)` meets the region only in `y`.
    pub fn isolation_radius(&self, y: &Point) -> Option<Rational> {
        match self {
            Region::Intervals { intervals } => {
                let Point::Scalar(v) = y else { return None };
                let i = intervals.locate(v)?;
                let comps = intervals.components();
                if !comps[i].is_singleton() {
                    return None;
                }
                let before = (i > 0).then(|| comps[i - 1].hi.clone().map(|h| v - h)).flatten();
                let after = comps.get(i + 1).and_then(|c| c.lo.clone()).map(|l| l - v);
                [before, after].into_iter().flatten().min().or(Some(int(1)))
            }
            Region::Points { points } => {
                if !points.contains(y) {
                    return None;
                }
                let mut best: Option<Rational> = None;
                for q in points.iter().filter(|q| *q != y) {
                    let d = sqrt_lo(&euclid2(y, q)?);
                    best = Some(best.map_or(d.clone(), |b| b.min(d)));
                }
                best.or(Some(int(1)))
            }
            Region::LabelSet { labels } => match y {
                Point::Label(l) if labels.contains(l) => Some(int(1)),
                _ => None,
            },
            _ => None,
        }
    }

    /// The closed half-planes cutting out this region, when it is a polygon of that kind.
    fn closed_half_planes(&self) -> Option<Vec<(V2, Rational)>> {
        match self {
            Region::HalfPlane { normal, offset, closed: true } => Some(vec![(v2(normal), offset.clone())]),
            Region::FullSpace { dim: 2 } => Some(Vec::new()),
            Region::Intersection { members } => {
                let mut all = Vec::new();
                for m in members {
                    all.extend(m.closed_half_planes()?);
                }
                Some(all)
            }
            _ => None,
        }
    }

    /// For a polygonal region of the plane with the Euclidean metric: `Some(eps)` when
    /// `B(y, eps)` stays inside the closed ball about `x` through `y`.
    ///
    /// Near a corner the region is the cone spanned by the two edge directions; the
    /// ball condition holds once both generators point strictly back toward `x`.
    /// Only meaningful for an ambient Euclidean plane.
    pub fn corner_interior_radius(&self, x: &Point, y: &Point) -> Option<Rational> {
        let planes = self.closed_half_planes()?;
        let (xv, yv) = (as_v2(x)?, as_v2(y)?);
        let mut active = Vec::new();
        let mut slack = Vec::new();
        for (n, off) in &planes {
            let s = dot(n, &yv) - off;
            if s.is_zero() {
                active.push(n.clone());
            } else if s.is_positive() {
                slack.push(s / sqrt_hi(&norm2(n)));
            } else {
                return None;
            }
        }
        if active.len() != 2 {
            return None;
        }
        let (n1, n2) = (&active[0], &active[1]);
        let gen = |n: &V2, other: &V2| -> Option<V2> {
            let e = [-n[1].clone(), n[0].clone()];
            let s = dot(other, &e);
            if s.is_zero() {
                None
            } else if s.is_positive() {
                Some(e)
            } else {
                Some([-e[0].clone(), -e[1].clone()])
            }
        };
        let (e1, e2) = (gen(n1, n2)?, gen(n2, n1)?);
        let g = sub(&yv, &xv);
        let mut c: Option<Rational> = None;
        for e in [&e1, &e2] {
            let ip = -dot(e, &g);
            if !ip.is_positive() {
                return None;
            }
            let ci = ip / sqrt_hi(&norm2(e));
            c = Some(c.map_or(ci.clone(), |c| c.min(ci)));
        }
        // a cone point at distance t from y has generator weights summing to at most
        // t / cos(theta/2), theta the opening angle
        let ip = dot(&e1, &e2);
        let n12 = norm2(&e1) * norm2(&e2);
        let root = if ip.is_negative() { sqrt_lo(&n12) } else { sqrt_hi(&n12) };
        if !root.is_positive() {
            return None;
        }
        let half_cos = sqrt_lo(&((Rational::one() + ip / root) / int(2)));
        let mut eps = c? * int(2) * half_cos;
        for s in slack {
            eps = eps.min(s);
        }
        eps.is_positive().then_some(eps)
    }
}

/// Squared Euclidean distance between scalar/vector points.
pub fn euclid2(a: &Point, b: &Point) -> Option<Rational> {
    let (a, b) = (a.coords()?, b.coords()?);
    if a.len() != b.len() {
        return None;
    }
    Some(a.iter().zip(&b).map(|(x, y)| (x - y) * (x - y)).fold(Rational::zero(), |s, t| s + t))
}

fn in_sweep(u: &V2, v: &V2, w: &V2, closed: bool) -> bool {
    let ok = |s: Rational| if closed { !s.is_negative() } else { s.is_positive() };
    if cross(u, v).is_positive() {
        ok(cross(u, w)) && ok(cross(w, v))
    } else {
        // complement of the short sweep from v back to u
        let strict = |s: Rational| if closed { s.is_positive() } else { !s.is_negative() };
        !(strict(cross(v, w)) && strict(cross(w, u)))
    }
}

/// Splits a right-nested pair into `n` coordinates.
pub fn unpair(p: &Point, n: usize) -> Option<Vec<&Point>> {
    if n == 1 {
        return Some(vec![p]);
    }
    match p {
        Point::Pair(a, b) => {
            let mut v = vec![a.as_ref()];
            v.extend(unpair(b, n - 1)?);
            Some(v)
        }
        _ => None,
    }
}

/// Right-nested pair of coordinates.
pub fn repair(mut coords: Vec<Point>) -> Point {
    let last = coords.pop().expect("at least one coordinate");
    coords.into_iter().rev().fold(last, |acc, c| Point::pair(c, acc))
}

fn box_near<R: Rng>(p: &Point, radius: &Rational, count: usize, rng: &mut R, out: &mut Vec<Point>) {
    match p {
        Point::Scalar(x) => {
            for _ in 0..count {
                out.push(Point::Scalar(x + radius * unit(rng)));
            }
        }
        Point::Vector(v) => {
            for _ in 0..count {
                out.push(Point::Vector(v.iter().map(|c| c + radius * unit(rng)).collect()));
            }
        }
        _ => {}
    }
}

fn line_near<R: Rng>(z: &V2, a: &V2, d: &V2, radius: &Rational, count: usize, rng: &mut R, out: &mut Vec<Point>) {
    let len2 = norm2(d);
    if len2.is_zero() {
        out.push(pt(a.clone()));
        return;
    }
    let t0 = dot(&sub(z, a), d) / &len2;
    let s = radius / (d[0].abs() + d[1].abs());
    for _ in 0..count {
        let t = &t0 + unit(rng) * &s;
        out.push(pt([&a[0] + &d[0] * &t, &a[1] + &d[1] * &t]));
    }
}

fn project_to_line(z: &V2, n: &V2, offset: &Rational) -> V2 {
    let k = (dot(n, z) - offset) / norm2(n);
    [&z[0] - &n[0] * &k, &z[1] - &n[1] * &k]
}

/// A rational point on the circle near angle `theta`, via the half-angle tangent.
fn circle_point(c: &V2, r: &Rational, theta: f64, spread: f64) -> V2 {
    let den = (32.0 / spread.max(1e-9)).clamp(64.0, 1e12) as i64;
    let flip = theta.cos() < 0.0;
    let phi = if flip { theta - PI } else { theta };
    let t = from_f64_grid((phi / 2.0).tan(), den);
    let one = Rational::one();
    let t2 = &t * &t;
    let cos = (&one - &t2) / (&one + &t2);
    let sin = (&t * int(2)) / (&one + &t2);
    let (cos, sin) = if flip { (-cos, -sin) } else { (cos, sin) };
    [&c[0] + r * cos, &c[1] + r * sin]
}

fn boundary_line(r: &Region) -> Option<(V2, Rational)> {
    match r {
        Region::HalfPlane { normal, offset, .. } => Some((v2(normal), offset.clone())),
        _ => None,
    }
}

fn intersect_lines(a: &(V2, Rational), b: &(V2, Rational)) -> Option<V2> {
    let det = cross(&a.0, &b.0);
    if det.is_zero() {
        return None;
    }
    let x = (&a.1 * &b.0[1] - &b.1 * &a.0[1]) / &det;
    let y = (&a.0[0] * &b.1 - &b.0[0] * &a.1) / &det;
    Some([x, y])
}

fn common_circle(members: &[Region]) -> Option<(V2, Rational)> {
    let mut found: Option<(V2, Rational)> = None;
    for m in members {
        let (c, r) = match m {
            Region::CircleArc { center, radius, .. } | Region::Disk { center, radius, .. } => {
                (v2(center), radius.clone())
            }
            _ => return None,
        };
        match &found {
            None => found = Some((c, r)),
            Some((c0, r0)) if *c0 == c && *r0 == r => {}
            _ => return None,
        }
    }
    found
}

/// Points of a line/segment meeting a full circle, when the solution is rational.
fn line_circle_points(members: &[Region]) -> Option<Vec<Point>> {
    let (a, d) = members.iter().find_map(|m| match m {
        Region::Segment { p, q, .. } => Some((v2(p), sub(&v2(q), &v2(p)))),
        Region::Line { point, direction } => Some((v2(point), v2(direction))),
        _ => None,
    })?;
    let (c, r) = members.iter().find_map(|m| match m {
        Region::CircleArc { center, radius, .. } => Some((v2(center), radius.clone())),
        _ => None,
    })?;
    let qa = norm2(&d);
    let ac = sub(&a, &c);
    let qb = dot(&d, &ac) * int(2);
    let qc = norm2(&ac) - &r * &r;
    let disc = &qb * &qb - int(4) * &qa * &qc;
    if disc.is_negative() {
        return Some(Vec::new());
    }
    let s = exact_sqrt(&disc)?;
    let mut out = Vec::new();
    for sign in [-1, 1] {
        let t = (-&qb + &s * int(sign)) / (&qa * int(2));
        let p = pt([&a[0] + &d[0] * &t, &a[1] + &d[1] * &t]);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Some(out)
}
