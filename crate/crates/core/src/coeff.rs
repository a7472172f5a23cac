//! Exact arithmetic in `Q(√q)`.
//!
//! Every scalar produced by the algebras in this crate is a rational
//! combination `a + b·v` with `v = √q`. When `q` is a perfect square the
//! surd part is folded into the rational part, so [`Coeff`] is always an
//! element of a field.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field cardinality together with its square-root data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundParams {
    q: u32,
    sqrt_q_int: Option<u32>,
}

impl GroundParams {
    pub fn new(q: u32) -> Result<Self> {
        if q < 2 || prime_power(q).is_none() {
            return Err(Error::InvalidGround(q));
        }
        let r = q.sqrt();
        let sqrt_q_int = (r * r == q).then_some(r);
        Ok(GroundParams { q, sqrt_q_int })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_square(&self) -> bool {
        self.sqrt_q_int.is_some()
    }

    pub fn sqrt_q_int(&self) -> Option<u32> {
        self.sqrt_q_int
    }

    /// `(p, k)` with `q = p^k`.
    pub fn prime_power(&self) -> (u32, u32) {
        prime_power(self.q).expect("validated at construction")
    }
}

/// Returns `(p, k)` when `n = p^k` for a prime `p` and `k ≥ 1`.
pub fn prime_power(n: u32) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        p = n;
    }
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// An element `a + b·√q` of `Q(√q)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coeff {
    a: BigRational,
    b: BigRational,
    ground: GroundParams,
}

fn ratio(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Coeff {
    /// Builds `a + b·√q`, folding the surd when `q` is a square.
    pub fn new(ground: GroundParams, a: BigRational, b: BigRational) -> Self {
        match ground.sqrt_q_int {
            Some(r) if !b.is_zero() => Coeff {
                a: a + b * ratio(r as i64),
                b: BigRational::zero(),
                ground,
            },
            _ => Coeff { a, b, ground },
        }
    }

    pub fn zero(ground: GroundParams) -> Self {
        Coeff {
            a: BigRational::zero(),
            b: BigRational::zero(),
            ground,
        }
    }

    pub fn one(ground: GroundParams) -> Self {
        Coeff::from_int(ground, 1)
    }

    pub fn from_int(ground: GroundParams, n: i64) -> Self {
        Coeff {
            a: ratio(n),
            b: BigRational::zero(),
            ground,
        }
    }

    pub fn from_big(ground: GroundParams, n: BigInt) -> Self {
        Coeff::from_ratio(ground, BigRational::from_integer(n))
    }

    pub fn from_ratio(ground: GroundParams, r: BigRational) -> Self {
        Coeff {
            a: r,
            b: BigRational::zero(),
            ground,
        }
    }

    pub fn from_frac(ground: GroundParams, num: i64, den: i64) -> Self {
        Coeff::from_ratio(ground, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `(√q)^k`.
    pub fn vpow(ground: GroundParams, k: i64) -> Self {
        if let Some(r) = ground.sqrt_q_int {
            return Coeff::from_ratio(ground, rational_pow(&ratio(r as i64), k));
        }
        let q = ratio(ground.q as i64);
        if k.rem_euclid(2) == 0 {
            Coeff::from_ratio(ground, rational_pow(&q, k / 2))
        } else {
            Coeff {
                a: BigRational::zero(),
                b: rational_pow(&q, (k - 1).div_euclid(2)),
                ground,
            }
        }
    }

    pub fn ground(&self) -> GroundParams {
        self.ground
    }

    /// Rational part.
    pub fn a(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of `√q`.
    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// The rational value, if the surd part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn inv(&self) -> Result<Coeff> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Coeff::from_ratio(self.ground, self.a.recip()));
        }
        let q = ratio(self.ground.q as i64);
        let norm = &self.a * &self.a - &self.b * &self.b * q;
        Ok(Coeff {
            a: &self.a / &norm,
            b: -(&self.b / &norm),
            ground: self.ground,
        })
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, k: i64) -> Result<Coeff> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Coeff::one(self.ground);
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale_int(&self, n: i64) -> Coeff {
        self * &Coeff::from_int(self.ground, n)
    }

    fn check(&self, other: &Coeff) {
        debug_assert_eq!(
            self.ground, other.ground,
            "mixing coefficients over different ground fields"
        );
    }
}

fn rational_pow(base: &BigRational, k: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= base;
    }
    if k < 0 {
        acc.recip()
    } else {
        acc
    }
}

impl Add<&Coeff> for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        self.check(rhs);
        Coeff {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            ground: self.ground,
        }
    }
}

impl Sub<&Coeff> for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self.check(rhs);
        Coeff {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            ground: self.ground,
        }
    }
}

impl Mul<&Coeff> for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        self.check(rhs);
        if self.b.is_zero() && rhs.b.is_zero() {
            return Coeff {
                a: &self.a * &rhs.a,
                b: BigRational::zero(),
                ground: self.ground,
            };
        }
        let q = ratio(self.ground.q as i64);
        Coeff {
            a: &self.a * &rhs.a + &self.b * &rhs.b * q,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            ground: self.ground,
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            a: -&self.a,
            b: -&self.b,
            ground: self.ground,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Coeff> for Coeff {
            type Output = Coeff;
            fn $m(self, rhs: Coeff) -> Coeff {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Coeff> for Coeff {
            type Output = Coeff;
            fn $m(self, rhs: &Coeff) -> Coeff {
                (&self).$m(rhs)
            }
        }
        impl $tr<Coeff> for &Coeff {
            type Output = Coeff;
            fn $m(self, rhs: Coeff) -> Coeff {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, rhs: &Coeff) {
        self.check(rhs);
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&Coeff> for Coeff {
    fn sub_assign(&mut self, rhs: &Coeff) {
        self.check(rhs);
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&Coeff> for Coeff {
    fn mul_assign(&mut self, rhs: &Coeff) {
        *self = &*self * rhs;
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Renders as `a + b*v`, omitting vanishing parts.
impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*v", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}*v", self.a, -&self.b)
                } else {
                    write!(f, "{} + {}*v", self.a, self.b)
                }
            }
        }
    }
}

impl Coeff {
    /// Parses the textual coefficient syntax: sums of terms such as `3/2`,
    /// `v`, `v^-2`, `q`, `1/2*v`.
    pub fn parse(ground: GroundParams, src: &str) -> Result<Coeff> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty coefficient".into(),
            });
        }
        let mut total = Coeff::zero(ground);
        let bytes = s.as_bytes();
        let mut start = 0;
        let mut i = 0;
        while i <= bytes.len() {
            let boundary =
                i == bytes.len() || (i > start && (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^');
            if boundary {
                total += &parse_coeff_term(ground, &s[start..i], start)?;
                start = i;
            }
            i += 1;
        }
        Ok(total)
    }
}

fn parse_coeff_term(ground: GroundParams, term: &str, offset: usize) -> Result<Coeff> {
    let err = |msg: &str| Error::Parse {
        pos: offset,
        msg: format!("{msg} in coefficient term `{term}`"),
    };
    let (sign, body) = match term.as_bytes().first() {
        Some(b'-') => (-1, &term[1..]),
        Some(b'+') => (1, &term[1..]),
        _ => (1, term),
    };
    if body.is_empty() {
        return Err(err("missing term"));
    }
    let mut acc = Coeff::from_int(ground, sign);
    for factor in body.split('*') {
        let value = if let Some(rest) = factor.strip_prefix('v') {
            Coeff::vpow(ground, parse_exponent(rest).ok_or_else(|| err("bad exponent"))?)
        } else if let Some(rest) = factor.strip_prefix('q') {
            let e = parse_exponent(rest).ok_or_else(|| err("bad exponent"))?;
            Coeff::vpow(ground, 2 * e)
        } else {
            let r = BigRational::from_str(factor).map_err(|_| err("bad rational"))?;
            Coeff::from_ratio(ground, r)
        };
        acc = &acc * &value;
    }
    Ok(acc)
}

fn parse_exponent(rest: &str) -> Option<i64> {
    if rest.is_empty() {
        Some(1)
    } else {
        rest.strip_prefix('^')?.parse().ok()
    }
}

/// JSON form `{"a": "p/q", "b": "r/s"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffRecord {
    pub a: String,
    pub b: String,
}

impl From<&Coeff> for CoeffRecord {
    fn from(c: &Coeff) -> Self {
        CoeffRecord {
            a: c.a.to_string(),
            b: c.b.to_string(),
        }
    }
}

impl CoeffRecord {
    pub fn to_coeff(&self, ground: GroundParams) -> Result<Coeff> {
        let parse = |s: &str| {
            BigRational::from_str(s).map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad rational `{s}`"),
            })
        };
        Ok(Coeff::new(ground, parse(&self.a)?, parse(&self.b)?))
    }
}
