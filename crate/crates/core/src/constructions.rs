//! Combinators building new metric spaces from old ones.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number::{int, log1p_bounds, round_bits, sqrt_bounds, BoundedReal, Cmp3, Expr, Rational};
use crate::point::Point;
use crate::region::{repair, unpair};
use crate::space::{compare_distance_to, mismatch, Certificate, Metric, MetricSpace, SpaceRng};

fn two_pow(k: usize) -> Rational {
    Rational::from_integer(num_bigint::BigInt::one() << k)
}

/// Square of a distance as a number: exact when the distance is `q` or `sqrt(q)`.
fn squared(e: &Expr, bits: u32) -> Expr {
    if let Some(f) = e.exact() {
        if let Some(q) = f.as_rational() {
            return Expr::rat(q * q);
        }
        if f.rational.is_zero() && f.roots.len() == 1 {
            return Expr::rat(f.roots[0].clone());
        }
    }
    let b = e.bounds(bits);
    let lo = if b.lo().is_negative() { Rational::zero() } else { b.lo() * b.lo() };
    Expr::Interval(lo, b.hi() * b.hi())
}

/// Finite product with `d = sqrt(sum d_i^2)`; points are right-nested pairs.
#[derive(Debug)]
pub struct EuclidProduct {
    pub factors: Vec<MetricSpace>,
}

/// The Euclidean combination of finitely many spaces; one factor is returned unchanged.
pub fn euclidean_product(factors: Vec<MetricSpace>) -> Result<MetricSpace> {
    match factors.len() {
        0 => Err(Error::InvalidParameter("a product needs at least one factor".into())),
        1 => Ok(factors.into_iter().next().expect("one factor")),
        _ => Ok(Arc::new(EuclidProduct { factors })),
    }
}

impl EuclidProduct {
    fn split<'a>(&self, p: &'a Point) -> Result<Vec<&'a Point>> {
        unpair(p, self.factors.len()).ok_or_else(|| mismatch(self, p))
    }
}

impl Metric for EuclidProduct {
    fn name(&self) -> String {
        let names: Vec<String> = self.factors.iter().map(|f| f.name()).collect();
        names.join(" x ")
    }

    fn contains(&self, p: &Point) -> Result<bool> {
        let parts = self.split(p)?;
        let mut all = true;
        for (f, q) in self.factors.iter().zip(parts) {
            all &= f.contains(q)?;
        }
        Ok(all)
    }

    fn distance_at(&self, p: &Point, q: &Point, level: u32) -> Result<Expr> {
        let (a, b) = (self.split(p)?, self.split(q)?);
        let bits = round_bits(level);
        let mut terms = Vec::with_capacity(a.len());
        for ((f, x), y) in self.factors.iter().zip(a).zip(b) {
            terms.push(squared(&f.distance_at(x, y, level)?, bits));
        }
        Ok(Expr::sqrt(Expr::Sum(terms)))
    }

    fn propose_near(&self, p: &Point, radius: &Rational, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        let Ok(parts) = self.split(p) else { return Vec::new() };
        let n = self.factors.len();
        let per: Vec<Vec<Point>> = self
            .factors
            .iter()
            .zip(&parts)
            .map(|(f, q)| {
                let mut v = f.propose_near(q, &(radius / int(n as i64)), count, rng);
                if v.is_empty() {
                    v.push((*q).clone());
                }
                v
            })
            .collect();
        (0..count)
            .map(|i| {
                // every other candidate moves a single coordinate
                let moving = rng.gen_range(0..n);
                let coords = (0..n)
                    .map(|k| {
                        if i % 2 == 0 && k != moving {
                            parts[k].clone()
                        } else {
                            per[k][i % per[k].len()].clone()
                        }
                    })
                    .collect();
                repair(coords)
            })
            .collect()
    }

    fn propose_global(&self, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        let per: Vec<Vec<Point>> = self.factors.iter().map(|f| f.propose_global(count, rng)).collect();
        if per.iter().any(|v| v.is_empty()) {
            return Vec::new();
        }
        (0..count)
            .map(|_| repair(per.iter().map(|v| v[rng.gen_range(0..v.len())].clone()).collect()))
            .collect()
    }

    fn landmarks(&self) -> Vec<Point> {
        let per: Vec<Vec<Point>> = self.factors.iter().map(|f| f.landmarks()).collect();
        if per.iter().any(|v| v.is_empty()) {
            return Vec::new();
        }
        let mut out: Vec<Vec<Point>> = vec![Vec::new()];
        for v in &per {
            let mut next = Vec::new();
            for prefix in &out {
                for q in v.iter().take(4) {
                    let mut c = prefix.clone();
                    c.push(q.clone());
                    next.push(c);
                }
            }
            out = next;
        }
        out.into_iter().take(32).map(repair).collect()
    }

    fn diameter(&self) -> Option<Rational> {
        let mut s = Rational::zero();
        for f in &self.factors {
            let d = f.diameter()?;
            s += &d * &d;
        }
        Some(sqrt_bounds(&s, 40).hi().clone())
    }

    fn isolation_radius(&self, y: &Point) -> Option<Rational> {
        let parts = self.split(y).ok()?;
        let mut best: Option<Rational> = None;
        for (f, q) in self.factors.iter().zip(parts) {
            let e = f.isolation_radius(q)?;
            best = Some(best.map_or(e.clone(), |b| b.min(e)));
        }
        best
    }

    fn origin(&self) -> Option<Point> {
        let o: Option<Vec<Point>> = self.factors.iter().map(|f| f.origin()).collect();
        Some(repair(o?))
    }
}

/// Weights of the series metric: `lambda_k` per coordinate and the truncation depth.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductWeights {
    pub lambdas: Vec<BoundedReal>,
    pub truncation_k: usize,
}

impl ProductWeights {
    /// `lambda_k = diam(X_k)` when finite, else 1; the tail factor's weight comes last.
    pub fn from_diameters(factors: &[MetricSpace], tail: Option<&MetricSpace>, truncation_k: usize) -> Self {
        let lam = |f: &MetricSpace| BoundedReal::exact(f.diameter().unwrap_or_else(|| int(1)));
        let mut lambdas: Vec<BoundedReal> = factors.iter().map(lam).collect();
        lambdas.extend(tail.map(lam));
        Self { lambdas, truncation_k }
    }
}

/// Countable product with `D = sum_k d_k / (lambda_k 2^k)` on sequence points.
///
/// The first `factors.len()` coordinates belong to the listed factors; every later
/// coordinate belongs to the tail factor and equals its base point outside the prefix.
#[derive(Debug)]
pub struct ProductD {
    pub factors: Vec<MetricSpace>,
    pub tail: Option<(MetricSpace, Point)>,
    pub weights: ProductWeights,
}

/// Builds the series product. Coordinates past the listed factors need a finite diameter.
pub fn product_metric_d(
    factors: Vec<MetricSpace>,
    tail: Option<(MetricSpace, Point)>,
    weights: ProductWeights,
) -> Result<MetricSpace> {
    if factors.is_empty() && tail.is_none() {
        return Err(Error::InvalidParameter("a product needs at least one factor".into()));
    }
    if weights.truncation_k < 1 {
        return Err(Error::InvalidParameter("truncation K must be at least 1".into()));
    }
    let need = factors.len() + usize::from(tail.is_some());
    if weights.lambdas.len() != need {
        return Err(Error::InvalidParameter(format!("expected {need} weights, got {}", weights.lambdas.len())));
    }
    if weights.lambdas.iter().any(|l| !l.lo().is_positive()) {
        return Err(Error::InvalidParameter("weights must be positive".into()));
    }
    if let Some((t, base)) = &tail {
        if t.diameter().is_none() {
            return Err(Error::MissingDiameter { index: factors.len() + 1 });
        }
        if !t.contains(base)? {
            return Err(mismatch(&**t, base));
        }
    }
    Ok(Arc::new(ProductD { factors, tail, weights }))
}

impl ProductD {
    fn factor(&self, k: usize) -> Option<&MetricSpace> {
        self.factors.get(k).or(self.tail.as_ref().map(|(t, _)| t))
    }

    fn lambda(&self, k: usize) -> &BoundedReal {
        let i = k.min(self.weights.lambdas.len() - 1);
        &self.weights.lambdas[i]
    }

    fn base(&self) -> Option<&Point> {
        self.tail.as_ref().map(|(_, b)| b)
    }

    fn coord<'a>(&'a self, p: &'a Point, k: usize) -> Option<&'a Point> {
        p.seq_coord(k)
    }

    /// Contribution `d_k / (lambda_k 2^(k+1))` of 0-based coordinate `k`.
    fn term(&self, k: usize, x: &Point, y: &Point, level: u32) -> Result<Expr> {
        let f = self.factor(k).expect("coordinate has a factor");
        let d = f.distance_at(x, y, level)?;
        let lam = self.lambda(k);
        let w = two_pow(k + 1);
        if lam.is_exact() {
            return Ok(Expr::scale(Rational::one() / (lam.lo() * &w), d));
        }
        let b = d.bounds(round_bits(level));
        Ok(Expr::Interval(b.lo() / (lam.hi() * &w), b.hi() / (lam.lo() * &w)))
    }

    /// Upper bound on the part of the series past 0-based coordinate `k`.
    fn tail_bound(&self, k: usize) -> Rational {
        let (t, _) = self.tail.as_ref().expect("tail");
        let lam = self.lambda(self.factors.len());
        t.diameter().expect("checked at construction") / lam.lo() / two_pow(k)
    }

    fn seq_parts<'a>(&self, p: &'a Point) -> Result<(&'a [Point], Option<&'a Point>)> {
        match p {
            Point::Seq { prefix, tail_base } => Ok((prefix, tail_base.as_deref())),
            _ => Err(mismatch(self, p)),
        }
    }
}

impl Metric for ProductD {
    fn name(&self) -> String {
        let mut names: Vec<String> = self.factors.iter().map(|f| f.name()).collect();
        if let Some((t, _)) = &self.tail {
            names.push(format!("{}^inf", t.name()));
        }
        format!("D({})", names.join(", "))
    }

    fn contains(&self, p: &Point) -> Result<bool> {
        let (prefix, tail_base) = self.seq_parts(p)?;
        if prefix.len() < self.factors.len() || tail_base != self.base() {
            return Err(mismatch(self, p));
        }
        if self.tail.is_none() && prefix.len() != self.factors.len() {
            return Err(mismatch(self, p));
        }
        for (k, c) in prefix.iter().enumerate() {
            if !self.factor(k).expect("factor").contains(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn distance_at(&self, p: &Point, q: &Point, level: u32) -> Result<Expr> {
        let (a, _) = self.seq_parts(p)?;
        let (b, _) = self.seq_parts(q)?;
        let n = a.len().max(b.len());
        let k_eff = self.weights.truncation_k + 32 * level as usize;
        let upto = n.min(k_eff.max(self.factors.len()));
        let mut terms = Vec::with_capacity(upto + 1);
        for k in 0..upto {
            let (x, y) = (self.coord(p, k), self.coord(q, k));
            let (Some(x), Some(y)) = (x, y) else { return Err(mismatch(self, p)) };
            if x != y {
                terms.push(self.term(k, x, y, level)?);
            }
        }
        // coordinates past both prefixes agree, so the series stops there
        let differs_later = (upto..n).any(|k| self.coord(p, k) != self.coord(q, k));
        if differs_later {
            terms.push(Expr::Interval(Rational::zero(), self.tail_bound(upto)));
        }
        Ok(if terms.is_empty() { Expr::zero() } else { Expr::Sum(terms) })
    }

    fn propose_near(&self, p: &Point, radius: &Rational, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        let Ok((prefix, tail_base)) = self.seq_parts(p) else { return Vec::new() };
        let span = prefix.len().max(self.factors.len()) + 2;
        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            let mut coords: Vec<Point> = prefix.to_vec();
            let moves = if i % 3 == 2 { 2 } else { 1 };
            for _ in 0..moves {
                let k = rng.gen_range(0..span);
                let Some(f) = self.factor(k) else { continue };
                while coords.len() <= k {
                    coords.push(tail_base.cloned().expect("tail base past the prefix"));
                }
                let local = radius * self.lambda(k).lo() * two_pow(k + 1);
                let cands = f.propose_near(&coords[k], &local, 2, rng);
                if let Some(c) = cands.into_iter().next() {
                    coords[k] = c;
                }
            }
            out.push(Point::seq(coords, tail_base.cloned()));
        }
        out
    }

    fn propose_global(&self, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        let m = self.factors.len();
        let extra = if self.tail.is_some() { 3 } else { 0 };
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let len = m + if extra > 0 { rng.gen_range(0..=extra) } else { 0 };
            let mut coords = Vec::with_capacity(len);
            for k in 0..len {
                let f = self.factor(k).expect("factor");
                match f.propose_global(1, rng).into_iter().next() {
                    Some(c) => coords.push(c),
                    None => return out,
                }
            }
            out.push(Point::seq(coords, self.base().cloned()));
        }
        out
    }

    fn landmarks(&self) -> Vec<Point> {
        let per: Vec<Vec<Point>> = self.factors.iter().map(|f| f.landmarks()).collect();
        if per.iter().any(|v| v.is_empty()) {
            return Vec::new();
        }
        let n = per.iter().map(|v| v.len()).max().unwrap_or(1);
        let mut out = Vec::new();
        for i in 0..n {
            let coords: Vec<Point> = per.iter().map(|v| v[i % v.len()].clone()).collect();
            out.push(Point::seq(coords.clone(), self.base().cloned()));
            if let (Some((t, _)), Some(b)) = (&self.tail, self.base()) {
                // one nonbase tail coordinate
                if let Some(q) = t.landmarks().into_iter().find(|q| q != b) {
                    let mut c = coords;
                    c.push(q);
                    out.push(Point::seq(c, Some(b.clone())));
                }
            }
        }
        out
    }

    fn diameter(&self) -> Option<Rational> {
        let mut s = Rational::zero();
        for (k, f) in self.factors.iter().enumerate() {
            s += f.diameter()? / self.lambda(k).lo() / two_pow(k + 1);
        }
        if self.tail.is_some() {
            s += self.tail_bound(self.factors.len());
        }
        Some(s)
    }

    fn isolation_radius(&self, y: &Point) -> Option<Rational> {
        if self.tail.is_some() {
            return None;
        }
        let (prefix, _) = self.seq_parts(y).ok()?;
        let mut best: Option<Rational> = None;
        for (k, (f, c)) in self.factors.iter().zip(prefix).enumerate() {
            let e = f.isolation_radius(c)? / self.lambda(k).hi() / two_pow(k + 1);
            best = Some(best.map_or(e.clone(), |b| b.min(e)));
        }
        best
    }

    fn origin(&self) -> Option<Point> {
        let o: Option<Vec<Point>> = self.factors.iter().map(|f| f.origin()).collect();
        if let Some((t, b)) = &self.tail {
            if t.origin().as_ref() != Some(b) {
                return None;
            }
        }
        Some(Point::seq(o?, self.base().cloned()))
    }
}

/// Registered increasing, subadditive functions with `phi(0) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phi {
    /// `t / (1 + t)`
    Ratio1p,
    /// `ln(1 + t)`
    Log1p,
}

impl Phi {
    pub const REGISTRY: [(&'static str, Phi); 2] = [("ratio1p", Phi::Ratio1p), ("log1p", Phi::Log1p)];

    pub fn by_name(name: &str) -> Result<Phi> {
        Self::REGISTRY
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, p)| *p)
            .ok_or_else(|| Error::UnknownTransform(name.to_string()))
    }

    pub fn name(self) -> &'static str {
        match self {
            Phi::Ratio1p => "ratio1p",
            Phi::Log1p => "log1p",
        }
    }

    pub fn apply(self, e: Expr) -> Expr {
        match self {
            Phi::Ratio1p => Expr::ratio1p(e),
            Phi::Log1p => Expr::log1p(e),
        }
    }

    /// Rational lower bound on `phi(t)`.
    pub fn lower(self, t: &Rational) -> Rational {
        match self {
            Phi::Ratio1p => t / (Rational::one() + t),
            Phi::Log1p => log1p_bounds(t, 48).lo().clone(),
        }
    }

    pub fn upper(self, t: &Rational) -> Rational {
        match self {
            Phi::Ratio1p => t / (Rational::one() + t),
            Phi::Log1p => log1p_bounds(t, 48).hi().clone(),
        }
    }

    /// A radius `s` with `phi(d) < rho` whenever `d < s`.
    fn inverse_radius(self, rho: &Rational) -> Rational {
        match self {
            Phi::Ratio1p if rho < &Rational::one() => rho / (Rational::one() - rho),
            Phi::Ratio1p => rho * int(8),
            // ln(1 + t) <= t
            Phi::Log1p => rho.clone(),
        }
    }

    /// Supremum of `phi` on `[0, inf)`, when finite.
    fn sup(self) -> Option<Rational> {
        match self {
            Phi::Ratio1p => Some(Rational::one()),
            Phi::Log1p => None,
        }
    }
}

/// `phi o d` for a registered `phi`.
#[derive(Debug)]
pub struct Transformed {
    pub inner: MetricSpace,
    pub phi: Phi,
}

/// `d' = d / (1 + d)`.
pub fn bounded_transform(space: MetricSpace) -> MetricSpace {
    Arc::new(Transformed { inner: space, phi: Phi::Ratio1p })
}

/// `phi o d` for a function from the registry.
pub fn monotone_transform(space: MetricSpace, phi: &str) -> Result<MetricSpace> {
    Ok(Arc::new(Transformed { inner: space, phi: Phi::by_name(phi)? }))
}

impl Metric for Transformed {
    fn name(&self) -> String {
        format!("{}({})", self.phi.name(), self.inner.name())
    }

    fn contains(&self, p: &Point) -> Result<bool> {
        self.inner.contains(p)
    }

    fn distance_at(&self, p: &Point, q: &Point, level: u32) -> Result<Expr> {
        Ok(self.phi.apply(self.inner.distance_at(p, q, level)?))
    }

    fn propose_near(&self, p: &Point, radius: &Rational, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        self.inner.propose_near(p, &self.phi.inverse_radius(radius), count, rng)
    }

    fn propose_global(&self, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        self.inner.propose_global(count, rng)
    }

    fn landmarks(&self) -> Vec<Point> {
        self.inner.landmarks()
    }

    fn diameter(&self) -> Option<Rational> {
        match self.inner.diameter() {
            Some(d) => Some(self.phi.upper(&d)),
            None => self.phi.sup(),
        }
    }

    fn isolation_radius(&self, y: &Point) -> Option<Rational> {
        self.inner.isolation_radius(y).map(|e| self.phi.lower(&e))
    }

    // phi is increasing, so balls of radius phi(e) are the inner balls of radius e
    fn closure_gap(&self, x: &Point, y: &Point) -> Option<Certificate> {
        let c = self.inner.closure_gap(x, y)?;
        Some(Certificate::new(self.phi.lower(&c.eps), c.reason))
    }

    fn interior_radius(&self, x: &Point, y: &Point) -> Option<Certificate> {
        let c = self.inner.interior_radius(x, y)?;
        Some(Certificate::new(self.phi.lower(&c.eps), c.reason))
    }

    fn origin(&self) -> Option<Point> {
        self.inner.origin()
    }
}

/// `d' = min(d, r)`.
#[derive(Debug)]
pub struct Truncated {
    pub inner: MetricSpace,
    pub r: Rational,
}

pub fn truncate_transform(space: MetricSpace, r: Rational) -> Result<MetricSpace> {
    if !r.is_positive() {
        return Err(Error::InvalidParameter("truncation level must be positive".into()));
    }
    Ok(Arc::new(Truncated { inner: space, r }))
}

impl Truncated {
    fn versus_r(&self, x: &Point, y: &Point) -> (Cmp3, Option<Rational>) {
        let r = Expr::rat(self.r.clone());
        let ord = compare_distance_to(&*self.inner, x, y, &r, 6).unwrap_or(Cmp3::Unknown);
        let gap = (ord == Cmp3::Greater).then(|| {
            let b = self.inner.distance_at(x, y, 6).map(|e| e.bounds(round_bits(6)));
            b.map(|b| b.lo() - &self.r).unwrap_or_else(|_| Rational::zero())
        });
        (ord, gap)
    }

    fn cap(&self, c: Certificate) -> Certificate {
        Certificate::new(c.eps.min(self.r.clone()), c.reason)
    }
}

impl Metric for Truncated {
    fn name(&self) -> String {
        format!("min({}, {})", self.inner.name(), crate::number::format_rational(&self.r))
    }

    fn contains(&self, p: &Point) -> Result<bool> {
        self.inner.contains(p)
    }

    fn distance_at(&self, p: &Point, q: &Point, level: u32) -> Result<Expr> {
        Ok(Expr::min(self.inner.distance_at(p, q, level)?, Expr::rat(self.r.clone())))
    }

    fn propose_near(&self, p: &Point, radius: &Rational, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        let mut v = self.inner.propose_near(p, radius, count, rng);
        if radius > &self.r {
            v.extend(self.inner.propose_global(count, rng));
        }
        v
    }

    fn propose_global(&self, count: usize, rng: &mut SpaceRng) -> Vec<Point> {
        self.inner.propose_global(count, rng)
    }

    fn landmarks(&self) -> Vec<Point> {
        self.inner.landmarks()
    }

    fn diameter(&self) -> Option<Rational> {
        Some(self.inner.diameter().map_or(self.r.clone(), |d| d.min(self.r.clone())))
    }

    fn isolation_radius(&self, y: &Point) -> Option<Rational> {
        self.inner.isolation_radius(y).map(|e| e.min(self.r.clone()))
    }

    // below the plateau, balls of radius at most r are the inner balls
    fn closure_gap(&self, x: &Point, y: &Point) -> Option<Certificate> {
        match self.versus_r(x, y) {
            (Cmp3::Greater, Some(gap)) if gap.is_positive() => Some(Certificate::new(
                gap.min(self.r.clone()),
                "beyond the truncation level the open ball is the inner ball of radius r",
            )),
            (Cmp3::Less | Cmp3::Equal, _) => self.inner.closure_gap(x, y).map(|c| self.cap(c)),
            _ => None,
        }
    }

    fn interior_radius(&self, x: &Point, y: &Point) -> Option<Certificate> {
        match self.versus_r(x, y) {
            (Cmp3::Greater | Cmp3::Equal, _) => {
                Some(Certificate::new(self.r.clone(), "the closed ball at the truncation level is everything"))
            }
            (Cmp3::Less, _) => self.inner.interior_radius(x, y).map(|c| self.cap(c)),
            _ => None,
        }
    }

    fn origin(&self) -> Option<Point> {
        self.inner.origin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ToleranceConfig;
    use crate::interval_union::{Interval, IntervalUnion};
    use crate::number::rat;
    use crate::region::Region;
    use crate::space::{eval_distance, subspace, verify_metric_axioms, Euclidean};

    fn s(q: Rational) -> Point {
        Point::Scalar(q)
    }

    fn binary_times_reals() -> MetricSpace {
        let two = IntervalUnion::new(vec![Interval::singleton(int(0)), Interval::singleton(int(1))]);
        let x1: MetricSpace = Arc::new(subspace(Euclidean::new(1), Region::intervals(two)).unwrap());
        let tail = bounded_transform(Euclidean::new(1));
        let w = ProductWeights::from_diameters(std::slice::from_ref(&x1), Some(&tail), 32);
        product_metric_d(vec![x1], Some((tail, s(int(0)))), w).unwrap()
    }

    #[test]
    fn euclidean_product_of_lines_is_the_plane() {
        let p = euclidean_product(vec![Euclidean::new(1), Euclidean::new(1)]).unwrap();
        let a = Point::pair(s(int(0)), s(int(0)));
        let b = Point::pair(s(int(3)), s(int(4)));
        assert_eq!(eval_distance(&*p, &a, &b).unwrap(), BoundedReal::exact(int(5)));
        let one = euclidean_product(vec![Euclidean::new(2)]).unwrap();
        assert_eq!(one.name(), "R^2");
        let dict = euclidean_product(vec![crate::space::Discrete::reals(), Euclidean::new(1)]).unwrap();
        let d = eval_distance(&*dict, &Point::pair(s(int(0)), s(int(0))), &Point::pair(s(int(1)), s(int(0)))).unwrap();
        assert_eq!(d, BoundedReal::exact(int(1)));
    }

    #[test]
    fn series_distance_matches_closed_forms() {
        let x = binary_times_reals();
        let a = Point::seq(vec![s(int(0)), s(int(0))], Some(s(int(0))));
        // flip the first coordinate only
        let b = Point::seq(vec![s(int(1))], Some(s(int(0))));
        assert_eq!(eval_distance(&*x, &a, &b).unwrap(), BoundedReal::exact(rat(1, 2)));
        // flip the first coordinate and move the second by eps = 1
        let z = Point::seq(vec![s(int(1)), s(int(1))], Some(s(int(0))));
        let expect = rat(1, 2) + rat(1, 8);
        assert!(eval_distance(&*x, &a, &z).unwrap().contains(&expect));
        let d = eval_distance(&*x, &a, &a).unwrap();
        assert!(d.contains(&Rational::zero()) && d.hi() <= &(Rational::one() / two_pow(32)));
    }

    #[test]
    fn long_prefixes_get_a_tail_interval() {
        let x = binary_times_reals();
        let mut c: Vec<Point> = vec![s(int(0))];
        c.extend((0..40).map(|_| s(int(1))));
        let a = Point::seq(c, Some(s(int(0))));
        let o = Point::seq(vec![s(int(0))], Some(s(int(0))));
        let b0 = eval_distance(&*x, &a, &o).unwrap();
        assert!(!b0.is_exact());
        assert!(b0.width() <= Rational::one() / two_pow(32));
        let b1 = crate::space::eval_distance_refined(&*x, &a, &o, 1).unwrap();
        assert!(b1.is_exact());
    }

    #[test]
    fn unbounded_tail_is_rejected() {
        let w = ProductWeights { lambdas: vec![BoundedReal::exact(int(1))], truncation_k: 8 };
        let e = product_metric_d(vec![], Some((Euclidean::new(1), s(int(0)))), w);
        assert!(matches!(e, Err(Error::MissingDiameter { index: 1 })));
    }

    #[test]
    fn transforms_follow_their_formulas() {
        let r1 = Euclidean::new(1);
        let b = bounded_transform(r1.clone());
        assert_eq!(eval_distance(&*b, &s(int(0)), &s(int(1))).unwrap(), BoundedReal::exact(rat(1, 2)));
        assert_eq!(eval_distance(&*b, &s(int(3)), &s(int(3))).unwrap(), BoundedReal::exact(int(0)));
        let l = monotone_transform(r1.clone(), "log1p").unwrap();
        assert_eq!(eval_distance(&*l, &s(int(2)), &s(int(2))).unwrap(), BoundedReal::exact(int(0)));
        let ln2 = eval_distance(&*l, &s(int(0)), &s(int(1))).unwrap();
        assert!(ln2.lo() < &rat(6932, 10000) && ln2.hi() > &rat(6931, 10000));
        assert!(matches!(monotone_transform(r1.clone(), "sqrt"), Err(Error::UnknownTransform(_))));
        let t = truncate_transform(r1, int(1)).unwrap();
        assert_eq!(eval_distance(&*t, &s(int(0)), &s(int(5))).unwrap(), BoundedReal::exact(int(1)));
        assert_eq!(eval_distance(&*t, &s(int(0)), &s(rat(1, 2))).unwrap(), BoundedReal::exact(rat(1, 2)));
        assert_eq!(eval_distance(&*t, &s(int(4)), &s(int(4))).unwrap(), BoundedReal::exact(int(0)));
    }

    #[test]
    fn constructions_satisfy_the_axioms() {
        let cfg = ToleranceConfig::default().with_budget(1000);
        let spaces: Vec<MetricSpace> = vec![
            truncate_transform(Euclidean::new(1), int(1)).unwrap(),
            bounded_transform(Euclidean::new(2)),
            monotone_transform(Euclidean::new(2), "log1p").unwrap(),
            euclidean_product(vec![crate::space::Discrete::reals(), Euclidean::new(1)]).unwrap(),
            binary_times_reals(),
        ];
        for sp in spaces {
            let rep = verify_metric_axioms(&*sp, &cfg);
            assert!(rep.passed(), "{}: {rep:?}", sp.name());
        }
    }
}
