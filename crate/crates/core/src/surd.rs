//! Exact arithmetic in the quadratic field ℚ[√57].
//!
//! Every irrational constant the bound checks need (α, γ, 2+α, …) lives in
//! this field, so inequalities are decided by sign analysis instead of
//! floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = Ratio<i128>;

const RADICAND: i128 = 57;

/// `a + b·√57` with rational `a`, `b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    pub a: Rational,
    pub b: Rational,
}

impl Surd {
    pub const fn new(a: Rational, b: Rational) -> Self {
        Surd { a, b }
    }

    pub fn int(n: i128) -> Self {
        Surd::new(Rational::from_integer(n), Rational::zero())
    }

    pub fn rational(numer: i128, denom: i128) -> Self {
        Surd::new(Rational::new(numer, denom), Rational::zero())
    }

    /// `(a_num/a_den) + (b_num/b_den)·√57`
    pub fn from_parts(a_num: i128, a_den: i128, b_num: i128, b_den: i128) -> Self {
        Surd::new(Rational::new(a_num, a_den), Rational::new(b_num, b_den))
    }

    pub fn zero() -> Self {
        Surd::default()
    }

    /// Sign of the value; exact because √57 is irrational.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            _ => {
                let lhs = self.a * self.a;
                let rhs = self.b * self.b * Rational::from_integer(RADICAND);
                if lhs > rhs {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: Rational| *r.numer() as f64 / *r.denom() as f64;
        f(self.a) + f(self.b) * (RADICAND as f64).sqrt()
    }

    pub fn scale(self, k: Rational) -> Self {
        Surd::new(self.a * k, self.b * k)
    }

    /// `1/(a + b√57) = (a − b√57)/(a² − 57b²)`; `None` for zero.
    pub fn recip(self) -> Option<Self> {
        let norm = self.a * self.a - self.b * self.b * Rational::from_integer(RADICAND);
        if norm.is_zero() {
            return None;
        }
        Some(Surd::new(self.a / norm, -self.b / norm))
    }

    pub fn abs(self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self
        }
    }
}

impl From<i64> for Surd {
    fn from(n: i64) -> Self {
        Surd::int(n as i128)
    }
}

impl From<usize> for Surd {
    fn from(n: usize) -> Self {
        Surd::int(n as i128)
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        Surd::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        Surd::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::new(-self.a, -self.b)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        let r = Rational::from_integer(RADICAND);
        Surd::new(self.a * o.a + self.b * o.b * r, self.a * o.b + self.b * o.a)
    }
}

impl Mul<usize> for Surd {
    type Output = Surd;
    fn mul(self, k: usize) -> Surd {
        self.scale(Rational::from_integer(k as i128))
    }
}

impl std::iter::Sum for Surd {
    fn sum<I: Iterator<Item = Surd>>(iter: I) -> Surd {
        iter.fold(Surd::zero(), Add::add)
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum()
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i128 = d.trim().parse().ok()?;
            let n: i128 = n.trim().parse().ok()?;
            (d != 0).then(|| Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.trim().parse().ok()?)),
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return f.write_str(&fmt_rational(&self.a));
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{} {} {}*sqrt57",
            fmt_rational(&self.a),
            sign,
            fmt_rational(&self.b.abs())
        )
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (~{:.6})", self.to_f64())
    }
}

#[derive(Serialize, Deserialize)]
struct SurdRepr {
    a: String,
    b: String,
}

impl Serialize for Surd {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SurdRepr {
            a: fmt_rational(&self.a),
            b: fmt_rational(&self.b),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Surd {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = SurdRepr::deserialize(d)?;
        let bad = |x: &str| serde::de::Error::custom(format!("bad rational `{x}`"));
        Ok(Surd::new(
            parse_rational(&repr.a).ok_or_else(|| bad(&repr.a))?,
            parse_rational(&repr.b).ok_or_else(|| bad(&repr.b))?,
        ))
    }
}

/// α = (1 + √57)/6
pub fn alpha() -> Surd {
    Surd::from_parts(1, 6, 1, 6)
}

/// γ = (31 + 3√57)/14
pub fn gamma() -> Surd {
    Surd::from_parts(31, 14, 3, 14)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn signs() {
        assert_eq!(Surd::from_parts(8, 1, -1, 1).signum(), Ordering::Greater); // 8 > √57
        assert_eq!(Surd::from_parts(7, 1, -1, 1).signum(), Ordering::Less); // 7 < √57
        assert_eq!(Surd::from_parts(-8, 1, 1, 1).signum(), Ordering::Less);
        assert_eq!(Surd::zero().signum(), Ordering::Equal);
        assert_eq!(Surd::from_parts(0, 1, -2, 3).signum(), Ordering::Less);
    }

    #[test]
    fn constants_are_exact() {
        let (a, g) = (alpha(), gamma());
        // (3 - 2α)·γ = 2 - α
        assert_eq!((Surd::int(3) - a * 2usize) * g, Surd::int(2) - a);
        // 3·(α - 2/(γ-2)) = 1, with 2/(γ-2) = (√57 - 1)/6
        let two_over = Surd::from_parts(-1, 6, 1, 6);
        assert_eq!((g - Surd::int(2)) * two_over, Surd::int(2));
        assert_eq!((a - two_over) * 3usize, Surd::int(1));
    }

    #[test]
    fn reciprocal() {
        let x = alpha() - Surd::int(1);
        assert_eq!(x * x.recip().unwrap(), Surd::int(1));
        assert_eq!(x.recip().unwrap(), Surd::from_parts(15, 16, 3, 16));
        assert!(Surd::zero().recip().is_none());
    }

    #[test]
    fn serde_round_trip() {
        let g = gamma() * 5usize - Surd::int(3);
        let json = serde_json::to_string(&g).unwrap();
        let back: Surd = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
    }

    proptest! {
        #[test]
        fn sign_agrees_with_float(a in -2000i128..2000, b in -300i128..300, d in 1i128..50) {
            let s = Surd::from_parts(a, d, b, d);
            let f = s.to_f64();
            if f.abs() > 1e-6 {
                prop_assert_eq!(s.signum(), f.partial_cmp(&0.0).unwrap());
            }
        }
    }
}
