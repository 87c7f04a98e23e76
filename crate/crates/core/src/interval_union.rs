//! Finite unions of intervals of the real line, with exact roundness and
//! sleekness decisions for the usual metric `|x - y|`.
//!
//! Both deciders reduce to endpoint inspection: a point `y` of the union fails
//! to be in the closure of `B(x, |x - y|)` exactly when the union does not
//! accumulate at `y` from the side facing `x`, and it fails to be a limit of the
//! complement of `B[x, |x - y|]` exactly when the union does not accumulate at `y`
//! from the side facing away from `x`.

use std::cmp::Ordering;

use rand::Rng;

use crate::number::{ExactScalar, Rational};

/// One interval; `None` endpoints are infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval<S = Rational> {
    pub lo: Option<S>,
    pub hi: Option<S>,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl<S: ExactScalar> Interval<S> {
    pub fn closed(lo: S, hi: S) -> Self {
        Self { lo: Some(lo), hi: Some(hi), lo_closed: true, hi_closed: true }
    }

    pub fn open(lo: S, hi: S) -> Self {
        Self { lo: Some(lo), hi: Some(hi), lo_closed: false, hi_closed: false }
    }

    pub fn new(lo: S, hi: S, lo_closed: bool, hi_closed: bool) -> Self {
        Self { lo: Some(lo), hi: Some(hi), lo_closed, hi_closed }
    }

    pub fn singleton(v: S) -> Self {
        Self::closed(v.clone(), v)
    }

    pub fn real_line() -> Self {
        Self { lo: None, hi: None, lo_closed: false, hi_closed: false }
    }

    pub fn is_empty(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Some(a), Some(b)) => a > b || (a == b && !(self.lo_closed && self.hi_closed)),
            _ => false,
        }
    }

    pub fn is_singleton(&self) -> bool {
        matches!((&self.lo, &self.hi), (Some(a), Some(b)) if a == b)
    }

    pub fn contains(&self, x: &S) -> bool {
        let above = match &self.lo {
            None => true,
            Some(a) => x > a || (self.lo_closed && x == a),
        };
        let below = match &self.hi {
            None => true,
            Some(b) => x < b || (self.hi_closed && x == b),
        };
        above && below
    }

    fn closed_lo(&self) -> Option<&S> {
        self.lo.as_ref().filter(|_| self.lo_closed)
    }

    fn closed_hi(&self) -> Option<&S> {
        self.hi.as_ref().filter(|_| self.hi_closed)
    }

    /// A member point, preferring closed endpoints, then the midpoint.
    pub fn representative(&self) -> S {
        let two = S::one() + S::one();
        if let Some(a) = self.closed_lo() {
            return a.clone();
        }
        if let Some(b) = self.closed_hi() {
            return b.clone();
        }
        match (&self.lo, &self.hi) {
            (Some(a), Some(b)) => (a.clone() + b.clone()) / two,
            (Some(a), None) => a.clone() + S::one(),
            (None, Some(b)) => b.clone() - S::one(),
            (None, None) => S::zero(),
        }
    }

    /// A member point strictly inside (or the single point of a singleton).
    pub fn interior_point(&self) -> S {
        let two = S::one() + S::one();
        match (&self.lo, &self.hi) {
            (Some(a), Some(b)) => (a.clone() + b.clone()) / two,
            (Some(a), None) => a.clone() + S::one(),
            (None, Some(b)) => b.clone() - S::one(),
            (None, None) => S::zero(),
        }
    }
}

/// A counterexample pair for one of the two properties, with a certified radius:
/// `B(y, eps)` misses the open ball (roundness) or lies inside the closed ball
/// (sleekness) around `x` of radius `|x - y|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointWitness<S = Rational> {
    pub x: S,
    pub y: S,
    pub eps: S,
}

/// Disjoint, sorted, non-mergeable intervals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalUnion<S = Rational> {
    intervals: Vec<Interval<S>>,
}

fn cmp_lo<S: ExactScalar>(a: &Interval<S>, b: &Interval<S>) -> Ordering {
    match (&a.lo, &b.lo) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
        (Some(x), Some(y)) => x.cmp(y).then(b.lo_closed.cmp(&a.lo_closed)),
    }
}

impl<S: ExactScalar> IntervalUnion<S> {
    /// Normal form: empty pieces dropped, overlapping or touching pieces merged.
    pub fn new(intervals: impl IntoIterator<Item = Interval<S>>) -> Self {
        let mut v: Vec<Interval<S>> = intervals.into_iter().filter(|i| !i.is_empty()).collect();
        v.sort_by(cmp_lo);
        let mut out: Vec<Interval<S>> = Vec::with_capacity(v.len());
        for iv in v {
            if let Some(last) = out.last_mut() {
                let joins = match (&last.hi, &iv.lo) {
                    (None, _) | (_, None) => true,
                    (Some(h), Some(l)) => l < h || (l == h && (last.hi_closed || iv.lo_closed)),
                };
                if joins {
                    let extend = match (&last.hi, &iv.hi) {
                        (None, _) => false,
                        (_, None) => true,
                        (Some(h), Some(h2)) => h2 > h || (h2 == h && iv.hi_closed),
                    };
                    if extend {
                        last.hi = iv.hi.clone();
                        last.hi_closed = iv.hi_closed;
                    }
                    continue;
                }
            }
            out.push(iv);
        }
        Self { intervals: out }
    }

    pub fn components(&self) -> &[Interval<S>] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &S) -> bool {
        self.locate(x).is_some()
    }

    /// Index of the component containing `x`.
    pub fn locate(&self, x: &S) -> Option<usize> {
        self.intervals.iter().position(|i| i.contains(x))
    }

    pub fn has_two_points(&self) -> bool {
        self.intervals.len() >= 2 || self.intervals.iter().any(|i| !i.is_singleton())
    }

    pub fn is_bounded(&self) -> bool {
        match (self.intervals.first(), self.intervals.last()) {
            (Some(f), Some(l)) => f.lo.is_some() && l.hi.is_some(),
            _ => true,
        }
    }

    /// `hi - lo` of the hull, when bounded.
    pub fn span(&self) -> Option<S> {
        let lo = self.intervals.first()?.lo.clone()?;
        let hi = self.intervals.last()?.hi.clone()?;
        Some(hi - lo)
    }

    /// Whether some member lies strictly between `a` and `b`.
    pub fn meets_open(&self, a: &S, b: &S) -> bool {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        if a == b {
            return false;
        }
        let probe = Interval::open(a.clone(), b.clone());
        self.intervals.iter().any(|c| intervals_meet(c, &probe))
    }

    /// Whether some member lies strictly beyond `y` in the direction away from `x`.
    pub fn meets_beyond(&self, x: &S, y: &S) -> bool {
        let probe = if y > x {
            Interval { lo: Some(y.clone()), hi: None, lo_closed: false, hi_closed: false }
        } else {
            Interval { lo: None, hi: Some(y.clone()), lo_closed: false, hi_closed: false }
        };
        self.intervals.iter().any(|c| intervals_meet(c, &probe))
    }

    fn gap_before(&self, i: usize) -> Option<S> {
        let prev = self.intervals.get(i.checked_sub(1)?)?;
        Some(self.intervals[i].lo.clone()? - prev.hi.clone()?)
    }

    fn gap_after(&self, i: usize) -> Option<S> {
        let next = self.intervals.get(i + 1)?;
        Some(next.lo.clone()? - self.intervals[i].hi.clone()?)
    }

    /// `Some(eps)` when `B(y, eps)` misses `B(x, |x - y|)`: `y` is not in the closure.
    pub fn closure_gap(&self, x: &S, y: &S) -> Option<S> {
        let i = self.locate(y)?;
        self.locate(x)?;
        let c = &self.intervals[i];
        match x.cmp(y) {
            Ordering::Less if c.closed_lo() == Some(y) => self.gap_before(i),
            Ordering::Greater if c.closed_hi() == Some(y) => self.gap_after(i),
            _ => None,
        }
    }

    /// `Some(eps)` when `B(y, eps)` lies inside `B[x, |x - y|]`: `y` is interior.
    pub fn interior_radius(&self, x: &S, y: &S) -> Option<S> {
        let i = self.locate(y)?;
        self.locate(x)?;
        let c = &self.intervals[i];
        let dist = if x < y { y.clone() - x.clone() } else { x.clone() - y.clone() };
        let gap = match x.cmp(y) {
            Ordering::Less if c.closed_hi() == Some(y) => {
                if i + 1 == self.intervals.len() { None } else { Some(self.gap_after(i)?) }
            }
            Ordering::Greater if c.closed_lo() == Some(y) => {
                if i == 0 { None } else { Some(self.gap_before(i)?) }
            }
            _ => return None,
        };
        Some(match gap {
            Some(g) if g < dist => g,
            _ => dist,
        })
    }

    /// A roundness counterexample, if one exists.
    pub fn round_witness(&self) -> Option<EndpointWitness<S>> {
        let n = self.intervals.len();
        for (i, c) in self.intervals.iter().enumerate() {
            if let (Some(y), true) = (c.closed_lo(), i > 0) {
                return Some(EndpointWitness {
                    x: self.intervals[i - 1].representative(),
                    y: y.clone(),
                    eps: self.gap_before(i)?,
                });
            }
            if let (Some(y), true) = (c.closed_hi(), i + 1 < n) {
                return Some(EndpointWitness {
                    x: self.intervals[i + 1].representative(),
                    y: y.clone(),
                    eps: self.gap_after(i)?,
                });
            }
        }
        None
    }

    /// A sleekness counterexample, if one exists.
    pub fn sleek_witness(&self) -> Option<EndpointWitness<S>> {
        let n = self.intervals.len();
        for (i, c) in self.intervals.iter().enumerate() {
            if let Some(y) = c.closed_hi() {
                let x = if !c.is_singleton() {
                    Some(c.interior_point())
                } else if i > 0 {
                    Some(self.intervals[i - 1].representative())
                } else {
                    None
                };
                if let Some(x) = x {
                    let eps = self.interior_radius(&x, y)?;
                    return Some(EndpointWitness { x, y: y.clone(), eps });
                }
            }
            if let Some(y) = c.closed_lo() {
                let x = if !c.is_singleton() {
                    Some(c.interior_point())
                } else if i + 1 < n {
                    Some(self.intervals[i + 1].representative())
                } else {
                    None
                };
                if let Some(x) = x {
                    let eps = self.interior_radius(&x, y)?;
                    return Some(EndpointWitness { x, y: y.clone(), eps });
                }
            }
        }
        None
    }
}

fn intervals_meet<S: ExactScalar>(a: &Interval<S>, b: &Interval<S>) -> bool {
    // the later-starting interval must start before the other ends
    let (first, second) = if cmp_lo(a, b) == Ordering::Greater { (b, a) } else { (a, b) };
    match (&first.hi, &second.lo) {
        (None, _) | (_, None) => true,
        (Some(h), Some(l)) => l < h || (l == h && first.hi_closed && second.lo_closed),
    }
}

/// Whether the usual metric is round on `x` (closures of open balls are closed balls).
pub fn decide_round_interval_union<S: ExactScalar>(x: &IntervalUnion<S>) -> bool {
    x.round_witness().is_none()
}

/// Whether the usual metric is sleek on `x` (interiors of closed balls are open balls).
pub fn decide_sleek_interval_union<S: ExactScalar>(x: &IntervalUnion<S>) -> bool {
    x.sleek_witness().is_none()
}

/// A seeded random union of at most `max_components` intervals inside `[0, span]`,
/// with endpoints of denominator at most `max_den`. Singletons and open, closed
/// and half-open pieces all occur. Always has at least two points.
pub fn random_interval_union<R: Rng>(
    rng: &mut R,
    max_components: usize,
    max_den: i64,
    span: i64,
) -> IntervalUnion<Rational> {
    loop {
        let k = rng.gen_range(1..=max_components);
        let mut ends: Vec<Rational> = (0..2 * k)
            .map(|_| {
                let d = rng.gen_range(1..=max_den);
                let n = rng.gen_range(0..=span * d);
                Rational::new(n.into(), d.into())
            })
            .collect();
        // occasional singletons
        for j in 0..k {
            if rng.gen_ratio(1, 6) {
                ends[2 * j + 1] = ends[2 * j].clone();
            }
        }
        ends.sort();
        let pieces = ends.chunks(2).map(|c| {
            let (lo, hi) = (c[0].clone(), c[1].clone());
            if lo == hi {
                Interval::singleton(lo)
            } else {
                Interval::new(lo, hi, rng.gen_bool(0.5), rng.gen_bool(0.5))
            }
        });
        let u = IntervalUnion::new(pieces.collect::<Vec<_>>());
        if u.has_two_points() {
            return u;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{int, rat};
    use num_rational::Rational64;
    use proptest::prelude::*;

    fn u(v: Vec<Interval<Rational>>) -> IntervalUnion {
        IntervalUnion::new(v)
    }

    #[test]
    fn normal_form_merges_touching() {
        let x = u(vec![Interval::new(int(0), int(1), true, false), Interval::new(int(1), int(2), true, true)]);
        assert_eq!(x.components().len(), 1);
        // a puncture stays two components
        let y = u(vec![Interval::open(int(0), int(1)), Interval::open(int(1), int(2))]);
        assert_eq!(y.components().len(), 2);
        assert!(!y.contains(&int(1)));
    }

    #[test]
    fn named_examples() {
        let unit_open = u(vec![Interval::open(int(0), int(1))]);
        let unit_closed = u(vec![Interval::closed(int(0), int(1))]);
        let half_open = u(vec![Interval::new(int(0), int(1), false, true)]);
        let gap = u(vec![Interval::closed(int(0), int(1)), Interval::closed(int(2), int(3))]);
        assert!(decide_round_interval_union(&unit_open));
        assert!(decide_sleek_interval_union(&unit_open));
        assert!(decide_round_interval_union(&unit_closed));
        assert!(!decide_sleek_interval_union(&unit_closed));
        assert!(!decide_sleek_interval_union(&half_open));
        assert!(!decide_round_interval_union(&gap));
        assert!(!decide_sleek_interval_union(&gap));
        let w = gap.round_witness().unwrap();
        assert_eq!(w.eps, int(1));
        assert!(gap.closure_gap(&w.x, &w.y).is_some());
    }

    #[test]
    fn generic_over_scalar() {
        let x = IntervalUnion::new(vec![
            Interval::closed(Rational64::new(0, 1), Rational64::new(1, 2)),
            Interval::singleton(Rational64::new(3, 1)),
        ]);
        assert!(!decide_round_interval_union(&x));
        assert!(!decide_sleek_interval_union(&x));
        let line = IntervalUnion::new(vec![Interval::<i64>::real_line()]);
        assert!(decide_round_interval_union(&line) && decide_sleek_interval_union(&line));
    }

    #[test]
    fn interior_radius_respects_distance() {
        let x = u(vec![Interval::closed(int(0), int(1))]);
        assert_eq!(x.interior_radius(&rat(9, 10), &int(1)), Some(rat(1, 10)));
        assert_eq!(x.interior_radius(&int(1), &rat(1, 2)), None);
    }

    proptest! {
        #[test]
        fn sleek_implies_round(seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let x = random_interval_union(&mut rng, 6, 20, 3);
            if decide_sleek_interval_union(&x) {
                prop_assert!(decide_round_interval_union(&x));
            }
        }

        #[test]
        fn normal_form_is_idempotent(seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let x = random_interval_union(&mut rng, 6, 20, 3);
            let again = IntervalUnion::new(x.components().to_vec());
            prop_assert_eq!(again, x);
        }
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct IntervalDto {
    #[serde(with = "crate::serde_util::option")]
    lo: Option<Rational>,
    #[serde(with = "crate::serde_util::option")]
    hi: Option<Rational>,
    lo_closed: bool,
    hi_closed: bool,
}

impl serde::Serialize for IntervalUnion<Rational> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.intervals.len()))?;
        for i in &self.intervals {
            seq.serialize_element(&IntervalDto {
                lo: i.lo.clone(),
                hi: i.hi.clone(),
                lo_closed: i.lo_closed,
                hi_closed: i.hi_closed,
            })?;
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for IntervalUnion<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<IntervalDto>::deserialize(d)?;
        Ok(IntervalUnion::new(v.into_iter().map(|i| Interval {
            lo: i.lo,
            hi: i.hi,
            lo_closed: i.lo_closed,
            hi_closed: i.hi_closed,
        })))
    }
}
