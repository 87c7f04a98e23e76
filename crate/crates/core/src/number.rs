//! Exact rationals, interval bounds, and distance expressions.
//!
//! Every order decision in the crate goes through [`decide`], which first tries an
//! exact comparison of sums of square roots and otherwise refines interval bounds
//! up to a round cap. It never reports a strict inequality from rounding noise.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};

use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The exact scalar used throughout the toolkit.
pub type Rational = BigRational;

/// Scalars usable as exact interval endpoints: ordered fields with exact arithmetic.
pub trait ExactScalar:
    Clone + Ord + fmt::Debug + num_traits::Num + Signed + Send + Sync + 'static
{
}

impl<T> ExactScalar for T where
    T: Clone + Ord + fmt::Debug + num_traits::Num + Signed + Send + Sync + 'static
{
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational \"p/q\": {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Rational approximation of a float on the grid `1/den`, rounded to nearest.
pub fn from_f64_grid(x: f64, den: i64) -> Rational {
    let n = (x * den as f64).round();
    Rational::new(BigInt::from(n as i64), BigInt::from(den))
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

/// Largest multiple of `2^-bits` not above `q`.
pub fn floor_dyadic(q: &Rational, bits: u32) -> Rational {
    let scaled = q * Rational::from_integer(pow2(bits));
    Rational::new(scaled.floor().to_integer(), pow2(bits))
}

/// Smallest multiple of `2^-bits` not below `q`.
pub fn ceil_dyadic(q: &Rational, bits: u32) -> Rational {
    let scaled = q * Rational::from_integer(pow2(bits));
    Rational::new(scaled.ceil().to_integer(), pow2(bits))
}

/// Exact square root when `q` is the square of a rational.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// Dyadic enclosure of `sqrt(q)` with width at most `2^-bits`.
pub fn sqrt_bounds(q: &Rational, bits: u32) -> Bounds {
    if q.is_negative() || q.is_zero() {
        return Bounds::exact(Rational::zero());
    }
    if let Some(r) = exact_sqrt(q) {
        return Bounds::exact(r);
    }
    let n = (q.numer() << (2 * bits as usize)) / q.denom();
    let s = n.sqrt();
    let lo = Rational::new(s.clone(), pow2(bits));
    let hi = Rational::new(s + 1, pow2(bits));
    Bounds::new(lo, hi)
}

/// `n / d` rounded down or up, for positive `d`.
fn div_round(n: &BigInt, d: &BigInt, up: bool) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    if up && !r.is_zero() {
        q + 1
    } else {
        q
    }
}

/// Fixed-point bound on `atanh(u) * 2^f` for `u = u_num / 2^f` in `[0, 1/3]`:
/// a lower bound when `up` is false, an upper bound otherwise.
fn atanh_fixed(u_num: &BigInt, f: u32, up: bool) -> BigInt {
    let scale = pow2(2 * f);
    let u2 = u_num * u_num;
    let mut p = u_num.clone();
    let mut sum = BigInt::zero();
    let mut k = 0i64;
    while p.is_positive() {
        sum += div_round(&p, &BigInt::from(2 * k + 1), up);
        if up && p <= BigInt::one() {
            // u^(2k+1) <= 2^-f, and the rest of the series is below 9/8 of that
            return sum + 2;
        }
        p = div_round(&(&p * &u2), &scale, up);
        k += 1;
    }
    sum
}

/// Dyadic enclosure of `ln(1 + t)` for `t >= 0`.
pub fn log1p_bounds(t: &Rational, bits: u32) -> Bounds {
    if t.is_zero() || t.is_negative() {
        return Bounds::exact(Rational::zero());
    }
    let x = Rational::one() + t;
    // x = 2^m * y with y in [1, 2)
    let mut m: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = int(2);
    let mut y = &x / pow_rat(&two, m);
    while y >= two {
        m += 1;
        y /= &two;
    }
    while y < Rational::one() {
        m -= 1;
        y *= &two;
    }
    let f = bits + 16;
    let one_f = Rational::from_integer(pow2(f));
    let u = (&y - Rational::one()) / (&y + Rational::one()) * &one_f;
    let third = Rational::new(pow2(f), BigInt::from(3));
    let ly_lo = atanh_fixed(&u.floor().to_integer(), f, false);
    let ly_hi = atanh_fixed(&u.ceil().to_integer(), f, true);
    let l2_lo = atanh_fixed(&third.floor().to_integer(), f, false);
    let l2_hi = atanh_fixed(&third.ceil().to_integer(), f, true);
    let m_b = BigInt::from(m);
    let lo = Rational::new((&m_b * l2_lo + ly_lo) * 2, pow2(f));
    let hi = Rational::new((&m_b * l2_hi + ly_hi) * 2, pow2(f));
    Bounds::new(floor_dyadic(&lo, bits), ceil_dyadic(&hi, bits))
}

fn pow_rat(base: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// A closed interval `[lo, hi]` with exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bounds<S = Rational> {
    lo: S,
    hi: S,
}

/// A real number carried by rational lower and upper bounds.
pub type BoundedReal = Bounds<Rational>;

impl<S: ExactScalar> Bounds<S> {
    pub fn new(lo: S, hi: S) -> Self {
        assert!(lo <= hi, "bounds out of order: {lo:?} > {hi:?}");
        Self { lo, hi }
    }

    pub fn exact(v: S) -> Self {
        Self { lo: v.clone(), hi: v }
    }

    pub fn lo(&self) -> &S {
        &self.lo
    }

    pub fn hi(&self) -> &S {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> S {
        self.hi.clone() - self.lo.clone()
    }

    pub fn contains(&self, v: &S) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Intersection with a tighter enclosure of the same number; never loosens.
    pub fn refine(&self, other: &Self) -> Self {
        let lo = if other.lo > self.lo { other.lo.clone() } else { self.lo.clone() };
        let hi = if other.hi < self.hi { other.hi.clone() } else { self.hi.clone() };
        if lo <= hi {
            Self { lo, hi }
        } else {
            self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.lo.clone() + other.lo.clone(),
            self.hi.clone() + other.hi.clone(),
        )
    }

    /// Scaling by a nonnegative factor.
    pub fn scale(&self, c: &S) -> Self {
        debug_assert!(!c.is_negative());
        Self::new(self.lo.clone() * c.clone(), self.hi.clone() * c.clone())
    }

    /// Three-valued order: `Some` only when the intervals are separated or both exact.
    pub fn cmp3(&self, other: &Self) -> Cmp3 {
        if self.hi < other.lo {
            Cmp3::Less
        } else if self.lo > other.hi {
            Cmp3::Greater
        } else if self.is_exact() && other.is_exact() && self.lo == other.lo {
            Cmp3::Equal
        } else {
            Cmp3::Unknown
        }
    }
}

/// Exact values serialize as `"p/q"`, others as `["lo", "hi"]`.
impl serde::Serialize for Bounds<Rational> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        if self.is_exact() {
            s.serialize_str(&format_rational(&self.lo))
        } else {
            [format_rational(&self.lo), format_rational(&self.hi)].serialize(s)
        }
    }
}

impl<'de> serde::Deserialize<'de> for Bounds<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            One(String),
            Two([String; 2]),
        }
        let p = |t: &str| parse_rational(t).map_err(serde::de::Error::custom);
        match Repr::deserialize(d)? {
            Repr::One(v) => Ok(Bounds::exact(p(&v)?)),
            Repr::Two([lo, hi]) => {
                let (lo, hi) = (p(&lo)?, p(&hi)?);
                if lo > hi {
                    return Err(serde::de::Error::custom("bounds out of order"));
                }
                Ok(Bounds::new(lo, hi))
            }
        }
    }
}

impl fmt::Display for Bounds<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", format_rational(&self.lo))
        } else {
            write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
        }
    }
}

/// Outcome of an order comparison between two real numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cmp3 {
    Less,
    Equal,
    Greater,
    Unknown,
}

impl Cmp3 {
    pub fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Cmp3::Less,
            Ordering::Equal => Cmp3::Equal,
            Ordering::Greater => Cmp3::Greater,
        }
    }

    pub fn reverse(self) -> Self {
        match self {
            Cmp3::Less => Cmp3::Greater,
            Cmp3::Greater => Cmp3::Less,
            o => o,
        }
    }

    pub fn is_decided(self) -> bool {
        self != Cmp3::Unknown
    }
}

/// `rational + sum of sqrt(root)`: the closed form of most distances in the toolkit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactForm {
    pub rational: Rational,
    pub roots: Vec<Rational>,
}

impl ExactForm {
    pub fn rational(q: Rational) -> Self {
        Self { rational: q, roots: Vec::new() }
    }

    fn sqrt_of(q: &Rational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        Some(match exact_sqrt(q) {
            Some(r) => Self::rational(r),
            None => Self { rational: Rational::zero(), roots: vec![q.clone()] },
        })
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.roots.is_empty().then_some(&self.rational)
    }

    fn add(mut self, other: Self) -> Self {
        self.rational += other.rational;
        for r in other.roots {
            match self.roots.iter().position(|x| *x == r) {
                // sqrt(r) + sqrt(r) = sqrt(4r)
                Some(i) => self.roots[i] = &self.roots[i] * int(4),
                None => self.roots.push(r),
            }
        }
        self
    }

    fn scale(self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::rational(Rational::zero());
        }
        let c2 = c * c;
        Self {
            rational: self.rational * c,
            roots: self.roots.into_iter().map(|r| r * &c2).collect(),
        }
    }

    /// Exact ordering when it can be settled by repeated squaring.
    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        let mut pos: Vec<Rational> = self.roots.clone();
        let mut neg: Vec<Rational> = other.roots.clone();
        let r = &self.rational - &other.rational;
        match r.numer().sign() {
            Sign::Plus => pos.push(&r * &r),
            Sign::Minus => neg.push(&r * &r),
            Sign::NoSign => {}
        }
        compare_root_sums(pos, neg)
    }
}

/// Sign of `sum sqrt(pos) - sum sqrt(neg)`, all radicands nonnegative.
fn compare_root_sums(pos: Vec<Rational>, neg: Vec<Rational>) -> Option<Ordering> {
    let mut pos: Vec<Rational> = pos.into_iter().filter(|q| !q.is_zero()).collect();
    let mut neg: Vec<Rational> = neg.into_iter().filter(|q| !q.is_zero()).collect();
    // cancel identical radicands
    let mut i = 0;
    while i < pos.len() {
        if let Some(j) = neg.iter().position(|q| *q == pos[i]) {
            pos.swap_remove(i);
            neg.swap_remove(j);
        } else {
            i += 1;
        }
    }
    match (pos.len(), neg.len()) {
        (0, 0) => Some(Ordering::Equal),
        (_, 0) => Some(Ordering::Greater),
        (0, _) => Some(Ordering::Less),
        (1, 1) => Some(pos[0].cmp(&neg[0])),
        (1, 2) => Some(single_vs_pair(&pos[0], &neg[0], &neg[1])),
        (2, 1) => Some(single_vs_pair(&neg[0], &pos[0], &pos[1]).reverse()),
        (2, 2) => {
            // both sides nonnegative: compare squares
            let r = &pos[0] + &pos[1] - &neg[0] - &neg[1];
            let mut p2 = vec![&pos[0] * &pos[1] * int(4)];
            let mut n2 = vec![&neg[0] * &neg[1] * int(4)];
            match r.numer().sign() {
                Sign::Plus => p2.push(&r * &r),
                Sign::Minus => n2.push(&r * &r),
                Sign::NoSign => {}
            }
            if p2.len() + n2.len() > 3 {
                return None;
            }
            compare_root_sums(p2, n2)
        }
        _ => None,
    }
}

/// Ordering of `sqrt(a)` against `sqrt(b) + sqrt(c)`.
fn single_vs_pair(a: &Rational, b: &Rational, c: &Rational) -> Ordering {
    let t = a - b - c;
    if t.is_negative() {
        return Ordering::Less;
    }
    (&t * &t).cmp(&(b * c * int(4)))
}

/// A symbolic real number: distances are built from these nodes.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Rat(Rational),
    Sqrt(Box<Expr>),
    Sum(Vec<Expr>),
    /// Nonnegative rational multiple.
    Scale(Rational, Box<Expr>),
    /// `t / (1 + t)`
    Ratio1p(Box<Expr>),
    /// `ln(1 + t)`
    Log1p(Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    /// An irreducible enclosure, e.g. a series tail.
    Interval(Rational, Rational),
}

impl Expr {
    pub fn zero() -> Self {
        Expr::Rat(Rational::zero())
    }

    pub fn rat(q: Rational) -> Self {
        Expr::Rat(q)
    }

    pub fn sqrt(e: Expr) -> Self {
        Expr::Sqrt(Box::new(e))
    }

    pub fn scale(c: Rational, e: Expr) -> Self {
        Expr::Scale(c, Box::new(e))
    }

    pub fn ratio1p(e: Expr) -> Self {
        Expr::Ratio1p(Box::new(e))
    }

    pub fn log1p(e: Expr) -> Self {
        Expr::Log1p(Box::new(e))
    }

    pub fn min(a: Expr, b: Expr) -> Self {
        Expr::Min(Box::new(a), Box::new(b))
    }

    /// Drops exactly-zero summands and flattens nested sums.
    pub fn simplify(&self) -> Expr {
        match self {
            Expr::Sum(terms) => {
                let mut out = Vec::with_capacity(terms.len());
                for t in terms {
                    match t.simplify() {
                        Expr::Sum(inner) => out.extend(inner),
                        t if t.exact().and_then(|f| f.as_rational().map(|q| q.is_zero())) == Some(true) => {}
                        t => out.push(t),
                    }
                }
                match out.len() {
                    0 => Expr::zero(),
                    1 => out.pop().expect("one term"),
                    _ => Expr::Sum(out),
                }
            }
            Expr::Sqrt(e) => Expr::sqrt(e.simplify()),
            Expr::Scale(c, e) => Expr::scale(c.clone(), e.simplify()),
            Expr::Ratio1p(e) => Expr::ratio1p(e.simplify()),
            Expr::Log1p(e) => Expr::log1p(e.simplify()),
            Expr::Min(a, b) => Expr::min(a.simplify(), b.simplify()),
            other => other.clone(),
        }
    }

    /// True when some node is an opaque enclosure rather than a definite number.
    pub fn has_interval(&self) -> bool {
        match self {
            Expr::Interval(lo, hi) => lo != hi,
            Expr::Rat(_) => false,
            Expr::Sum(terms) => terms.iter().any(Expr::has_interval),
            Expr::Sqrt(e) | Expr::Scale(_, e) | Expr::Ratio1p(e) | Expr::Log1p(e) => e.has_interval(),
            Expr::Min(a, b) => a.has_interval() || b.has_interval(),
        }
    }

    /// Closed form, when the expression has one.
    pub fn exact(&self) -> Option<ExactForm> {
        match self {
            Expr::Rat(q) => Some(ExactForm::rational(q.clone())),
            Expr::Sqrt(e) => {
                let inner = e.exact()?;
                ExactForm::sqrt_of(inner.as_rational()?)
            }
            Expr::Sum(terms) => terms
                .iter()
                .try_fold(ExactForm::rational(Rational::zero()), |acc, t| {
                    Some(acc.add(t.exact()?))
                }),
            Expr::Scale(c, e) => Some(e.exact()?.scale(c)),
            Expr::Ratio1p(e) => {
                let q = e.exact()?.as_rational()?.clone();
                let den = Rational::one() + &q;
                (!den.is_zero()).then(|| ExactForm::rational(q / den))
            }
            Expr::Log1p(e) => {
                let f = e.exact()?;
                (f.as_rational()?.is_zero()).then(|| ExactForm::rational(Rational::zero()))
            }
            Expr::Min(a, b) => {
                let (fa, fb) = (a.exact()?, b.exact()?);
                Some(match fa.compare(&fb)? {
                    Ordering::Greater => fb,
                    _ => fa,
                })
            }
            Expr::Interval(lo, hi) => (lo == hi).then(|| ExactForm::rational(lo.clone())),
        }
    }

    /// Rigorous enclosure; sqrt and log are resolved to `2^-bits`.
    pub fn bounds(&self, bits: u32) -> BoundedReal {
        match self {
            Expr::Rat(q) => Bounds::exact(q.clone()),
            Expr::Sqrt(e) => {
                let b = e.bounds(bits);
                let lo = sqrt_bounds(b.lo(), bits);
                let hi = sqrt_bounds(b.hi(), bits);
                Bounds::new(lo.lo().clone(), hi.hi().clone())
            }
            Expr::Sum(terms) => terms
                .iter()
                .fold(Bounds::exact(Rational::zero()), |acc, t| acc.add(&t.bounds(bits))),
            Expr::Scale(c, e) => e.bounds(bits).scale(c),
            Expr::Ratio1p(e) => {
                let b = e.bounds(bits);
                let f = |t: &Rational| t / (Rational::one() + t);
                Bounds::new(f(b.lo()), f(b.hi()))
            }
            Expr::Log1p(e) => {
                let b = e.bounds(bits);
                let lo = log1p_bounds(b.lo(), bits);
                let hi = log1p_bounds(b.hi(), bits);
                Bounds::new(lo.lo().clone(), hi.hi().clone())
            }
            Expr::Min(a, b) => {
                let (ba, bb) = (a.bounds(bits), b.bounds(bits));
                Bounds::new(
                    ba.lo().min(bb.lo()).clone(),
                    ba.hi().min(bb.hi()).clone(),
                )
            }
            Expr::Interval(lo, hi) => Bounds::new(lo.clone(), hi.clone()),
        }
    }
}

impl From<Rational> for Expr {
    fn from(q: Rational) -> Self {
        Expr::Rat(q)
    }
}

/// Resolution of enclosures recorded in witnesses and reports.
pub const REPORT_BITS: u32 = 64;

/// Bits of resolution used at refinement round `round`.
pub fn round_bits(round: u32) -> u32 {
    32u32 << round.min(8)
}

/// Result of a refined comparison, with the number of rounds it took.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decision {
    pub ord: Cmp3,
    pub rounds: u32,
}

/// Compares two numbers produced at increasing refinement levels.
///
/// `pair(level)` may depend on the level (e.g. a product series truncated deeper at
/// higher levels). Exact closed forms are tried first; otherwise bounds are refined
/// up to `cap` rounds and `Unknown` is returned if they still overlap.
pub fn decide<F>(cap: u32, mut pair: F) -> Result<Decision>
where
    F: FnMut(u32) -> Result<(Expr, Expr)>,
{
    for round in 0..=cap {
        let (a, b) = pair(round)?;
        if round == 0 && !a.has_interval() && !b.has_interval() && a.simplify() == b.simplify() {
            return Ok(Decision { ord: Cmp3::Equal, rounds: 0 });
        }
        if let (Some(ea), Some(eb)) = (a.exact(), b.exact()) {
            if let Some(o) = ea.compare(&eb) {
                return Ok(Decision { ord: Cmp3::from_ordering(o), rounds: round });
            }
        }
        let bits = round_bits(round);
        let ord = a.bounds(bits).cmp3(&b.bounds(bits));
        if ord.is_decided() {
            return Ok(Decision { ord, rounds: round });
        }
    }
    Ok(Decision { ord: Cmp3::Unknown, rounds: cap })
}

/// Compares two level-independent expressions.
pub fn compare_exprs(a: &Expr, b: &Expr, cap: u32) -> Cmp3 {
    decide(cap, |_| Ok((a.clone(), b.clone())))
        .map(|d| d.ord)
        .unwrap_or(Cmp3::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn sqrt_bounds_enclose() {
        let b = sqrt_bounds(&int(2), 40);
        assert!(b.lo() * b.lo() < int(2) && b.hi() * b.hi() > int(2));
        assert!(b.width() <= Rational::new(BigInt::one(), pow2(40)));
        assert!(sqrt_bounds(&rat(9, 4), 10).is_exact());
    }

    #[test]
    fn log1p_matches_float() {
        for (n, d) in [(1, 1), (1, 3), (5, 1), (1000, 7), (1, 1000)] {
            let t = rat(n, d);
            let b = log1p_bounds(&t, 48);
            let f = (to_f64(&t)).ln_1p();
            assert!(to_f64(b.lo()) <= f + 1e-12 && f - 1e-12 <= to_f64(b.hi()), "{n}/{d}");
            assert!(to_f64(&b.width()) < 1e-12);
        }
    }

    #[test]
    fn refine_never_loosens() {
        let a = Bounds::new(int(0), int(4));
        let b = Bounds::new(int(1), int(6));
        let r = a.refine(&b);
        assert_eq!((r.lo(), r.hi()), (&int(1), &int(4)));
    }

    #[test]
    fn exact_sqrt_sum_comparisons() {
        let s = |q: i64| Expr::sqrt(Expr::rat(int(q)));
        // sqrt(2) + sqrt(8) = sqrt(18)
        let lhs = Expr::Sum(vec![s(2), s(8)]);
        assert_eq!(compare_exprs(&lhs, &s(18), 4), Cmp3::Equal);
        assert_eq!(compare_exprs(&lhs, &s(17), 4), Cmp3::Greater);
        // sqrt(2) + sqrt(3) vs sqrt(1) + sqrt(5)
        let a = Expr::Sum(vec![s(2), s(3)]);
        let b = Expr::Sum(vec![s(1), s(5)]);
        let expected = if 2f64.sqrt() + 3f64.sqrt() > 1.0 + 5f64.sqrt() { Cmp3::Greater } else { Cmp3::Less };
        assert_eq!(compare_exprs(&a, &b, 4), expected);
        // 1 + sqrt(5/4) vs 2 via scale
        let c = Expr::Sum(vec![Expr::rat(int(1)), Expr::sqrt(Expr::rat(rat(5, 4)))]);
        assert_eq!(compare_exprs(&c, &Expr::rat(int(2)), 4), Cmp3::Greater);
    }

    #[test]
    fn overlapping_inexact_is_unknown() {
        let a = Expr::Interval(int(0), int(1));
        assert_eq!(compare_exprs(&a, &Expr::rat(rat(1, 2)), 3), Cmp3::Unknown);
    }

    #[test]
    fn min_and_ratio_are_exact_on_rationals() {
        let e = Expr::min(Expr::rat(int(5)), Expr::rat(int(1)));
        assert_eq!(e.exact().unwrap().as_rational(), Some(&int(1)));
        let r = Expr::ratio1p(Expr::rat(int(1)));
        assert_eq!(r.exact().unwrap().as_rational(), Some(&rat(1, 2)));
    }
}
