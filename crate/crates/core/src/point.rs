use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::number::{format_rational, to_f64, Rational};

/// A point of one of the toolkit's spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Point {
    Scalar(#[serde(with = "crate::serde_util")] Rational),
    Vector(#[serde(with = "crate::serde_util::vec")] Vec<Rational>),
    Label(String),
    Pair(Box<Point>, Box<Point>),
    /// Finite prefix of a sequence; every later coordinate equals `tail_base`.
    Seq {
        prefix: Vec<Point>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tail_base: Option<Box<Point>>,
    },
}

impl Point {
    pub fn scalar(q: Rational) -> Self {
        Point::Scalar(q)
    }

    pub fn vec2(x: Rational, y: Rational) -> Self {
        Point::Vector(vec![x, y])
    }

    pub fn pair(a: Point, b: Point) -> Self {
        Point::Pair(Box::new(a), Box::new(b))
    }

    pub fn seq(prefix: Vec<Point>, tail_base: Option<Point>) -> Self {
        Point::Seq { prefix, tail_base: tail_base.map(Box::new) }
    }

    /// Coordinates of a scalar or vector point, as a slice-like vector.
    pub fn coords(&self) -> Option<Vec<Rational>> {
        match self {
            Point::Scalar(q) => Some(vec![q.clone()]),
            Point::Vector(v) => Some(v.clone()),
            _ => None,
        }
    }

    /// `k`-th coordinate (0-based) of a sequence point, reading the tail past the prefix.
    pub fn seq_coord(&self, k: usize) -> Option<&Point> {
        match self {
            Point::Seq { prefix, tail_base } => {
                prefix.get(k).or(tail_base.as_deref())
            }
            _ => None,
        }
    }

    pub fn seq_len(&self) -> usize {
        match self {
            Point::Seq { prefix, .. } => prefix.len(),
            _ => 0,
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Point::Scalar(q) => vec![to_f64(q)],
            Point::Vector(v) => v.iter().map(to_f64).collect(),
            Point::Pair(a, b) => {
                let mut v = a.to_f64();
                v.extend(b.to_f64());
                v
            }
            Point::Seq { prefix, .. } => prefix.iter().flat_map(|p| p.to_f64()).collect(),
            Point::Label(_) => Vec::new(),
        }
    }

    /// Coordinate-wise combination `a*self + b*other` for linear points.
    pub fn lin_comb(&self, a: &Rational, other: &Point, b: &Rational) -> Option<Point> {
        Some(match (self, other) {
            (Point::Scalar(x), Point::Scalar(y)) => Point::Scalar(a * x + b * y),
            (Point::Vector(x), Point::Vector(y)) if x.len() == y.len() => {
                Point::Vector(x.iter().zip(y).map(|(x, y)| a * x + b * y).collect())
            }
            (Point::Pair(x1, x2), Point::Pair(y1, y2)) => Point::pair(
                x1.lin_comb(a, y1, b)?,
                x2.lin_comb(a, y2, b)?,
            ),
            (Point::Seq { prefix: p, tail_base: t }, Point::Seq { prefix: q, tail_base: u }) => {
                let n = p.len().max(q.len());
                let mut out = Vec::with_capacity(n);
                for k in 0..n {
                    out.push(self.seq_coord(k)?.lin_comb(a, other.seq_coord(k)?, b)?);
                }
                let tail = match (t, u) {
                    (Some(t), Some(u)) => Some(t.lin_comb(a, u, b)?),
                    (None, None) => None,
                    _ => return None,
                };
                Point::seq(out, tail)
            }
            _ => return None,
        })
    }

    pub fn add(&self, other: &Point) -> Option<Point> {
        let one = Rational::from_integer(1.into());
        self.lin_comb(&one, other, &one)
    }

    pub fn sub(&self, other: &Point) -> Option<Point> {
        let one = Rational::from_integer(1.into());
        self.lin_comb(&one, other, &-one.clone())
    }

    /// `(1 - t) * self + t * other`
    pub fn lerp(&self, other: &Point, t: &Rational) -> Option<Point> {
        let one = Rational::from_integer(1.into());
        self.lin_comb(&(&one - t), other, t)
    }

    pub fn midpoint(&self, other: &Point) -> Option<Point> {
        self.lerp(other, &Rational::new(1.into(), 2.into()))
    }

    /// Zero of the same shape.
    pub fn zero_like(&self) -> Option<Point> {
        let z = Rational::zero();
        self.lin_comb(&z, self, &z)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Scalar(q) => write!(f, "{}", format_rational(q)),
            Point::Vector(v) => {
                let parts: Vec<String> = v.iter().map(format_rational).collect();
                write!(f, "({})", parts.join(", "))
            }
            Point::Label(s) => write!(f, "{s}"),
            Point::Pair(a, b) => write!(f, "{a}x{b}"),
            Point::Seq { prefix, tail_base } => {
                let parts: Vec<String> = prefix.iter().map(|p| p.to_string()).collect();
                match tail_base {
                    Some(t) => write!(f, "({}, {t}, ...)", parts.join(", ")),
                    None => write!(f, "({})", parts.join(", ")),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{int, rat};

    #[test]
    fn seq_reads_tail() {
        let p = Point::seq(vec![Point::Scalar(int(1))], Some(Point::Scalar(int(0))));
        assert_eq!(p.seq_coord(0), Some(&Point::Scalar(int(1))));
        assert_eq!(p.seq_coord(7), Some(&Point::Scalar(int(0))));
    }

    #[test]
    fn midpoints_and_json() {
        let a = Point::vec2(int(0), int(2));
        let b = Point::vec2(int(1), int(0));
        assert_eq!(a.midpoint(&b).unwrap(), Point::vec2(rat(1, 2), int(1)));
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"vector":["0","2"]}"#);
        let back: Point = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(a.add(&Point::Scalar(int(1))).is_none());
    }
}
