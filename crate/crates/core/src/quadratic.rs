//! Numbers of the form `a + b·√d` with rational `a`, `b` and a fixed positive
//! integer `d`. Just enough arithmetic to evaluate feasibility screens on
//! conference-type parameter sets without leaving exact arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exactlin::{fmt_rat, int, Rat};

/// Integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt() as i64;
    (r.saturating_sub(2)..=r + 2).find(|&c| c >= 0 && c * c == n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quad {
    pub a: Rat,
    pub b: Rat,
    pub d: i64,
}

impl Quad {
    pub fn rational(a: Rat, d: i64) -> Self {
        Quad {
            a,
            b: Rat::zero(),
            d,
        }
    }

    pub fn new(a: Rat, b: Rat, d: i64) -> Self {
        match exact_sqrt(d) {
            Some(root) => Quad::rational(a + b * int(root), d),
            None => Quad { a, b, d },
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rat::zero());
        let sb = self.b.cmp(&Rat::zero());
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // opposite signs: compare a² with b²·d
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rat::from_integer(BigInt::from(self.d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.signum() != Ordering::Less
    }
}

impl Add for Quad {
    type Output = Quad;
    fn add(self, o: Quad) -> Quad {
        debug_assert_eq!(self.d, o.d);
        Quad {
            a: self.a + o.a,
            b: self.b + o.b,
            d: self.d,
        }
    }
}

impl Sub for Quad {
    type Output = Quad;
    fn sub(self, o: Quad) -> Quad {
        self + (-o)
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Mul for Quad {
    type Output = Quad;
    fn mul(self, o: Quad) -> Quad {
        debug_assert_eq!(self.d, o.d);
        let d = Rat::from_integer(BigInt::from(self.d));
        Quad {
            a: &self.a * &o.a + &self.b * &o.b * d,
            b: &self.a * &o.b + &self.b * &o.a,
            d: self.d,
        }
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        let mag = self.b.abs();
        if self.a.is_zero() {
            write!(f, "{}{}√{}", if sign == '-' { "-" } else { "" }, coef(&mag), self.d)
        } else {
            write!(f, "{} {} {}√{}", fmt_rat(&self.a), sign, coef(&mag), self.d)
        }
    }
}

fn coef(r: &Rat) -> String {
    if *r == int(1) {
        String::new()
    } else {
        format!("({})", fmt_rat(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    #[test]
    fn square_detection() {
        assert_eq!(exact_sqrt(81), Some(9));
        assert_eq!(exact_sqrt(5), None);
        assert_eq!(exact_sqrt(0), Some(0));
        assert_eq!(exact_sqrt(-4), None);
    }

    #[test]
    fn sign_of_mixed_terms() {
        // 2 - √5 < 0, 3 - √5 > 0, 1/2·√4 folds to 1
        assert_eq!(Quad::new(int(2), int(-1), 5).signum(), Ordering::Less);
        assert_eq!(Quad::new(int(3), int(-1), 5).signum(), Ordering::Greater);
        assert_eq!(Quad::new(int(0), rat(1, 2), 4), Quad::rational(int(1), 4));
    }

    #[test]
    fn golden_ratio_squares() {
        // φ = (1 + √5)/2 satisfies φ² = φ + 1
        let phi = Quad::new(rat(1, 2), rat(1, 2), 5);
        let lhs = phi.clone() * phi.clone();
        let rhs = phi + Quad::rational(int(1), 5);
        assert_eq!(lhs, rhs);
    }
}
