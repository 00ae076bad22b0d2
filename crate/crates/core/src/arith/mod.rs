//! Scalar arithmetic: arbitrary-precision integers and rationals, the
//! coefficient-field abstraction used by the polynomial solver, and a fixed
//! word-size prime field for the modular Gröbner path.

mod intpoly;
mod ratfunc;

pub use intpoly::IntPoly;
pub use ratfunc::RatFunc;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Int = BigInt;
pub type Rat = num_rational::BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(int(p), int(q))
}

/// Parse "p/q" or "p" into a rational.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("cannot parse rational from {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| bad())?;
            let q: Int = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => {
            let p: Int = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(p))
        }
    }
}

/// Render a rational as "p" or "p/q".
pub fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // good enough for informational output at desk scale
    let scale = |x: &Int| -> f64 {
        let s = x.to_string();
        s.parse::<f64>().unwrap_or(f64::NAN)
    };
    scale(num) / scale(den)
}

/// Coefficient field of the polynomial solver. Implemented for ℚ, for the
/// rational function field ℚ(t) and for the word-size prime field used by
/// the modular Gröbner path.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn neg(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rat(r: &Rat) -> Self;

    /// A factor `g` such that `g * coeffs` is in canonical "primitive" form
    /// (integer coefficients with unit content for ℚ, cleared and content-free
    /// for ℚ(t), monic leading coefficient for prime fields). Used to keep
    /// coefficient growth in check during polynomial reduction. `coeffs` is
    /// nonempty and its first element nonzero.
    fn primitive_scale(coeffs: &[Self]) -> Self;

    /// Bring a context-free constant into the same representation as an
    /// existing element. Identity for true fields; the runtime prime field
    /// uses it to attach its modulus to integer literals.
    fn adapt(&self, _exemplar: &Self) -> Self {
        self.clone()
    }
}

impl Field for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_i64(n: i64) -> Self {
        rat(n)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn primitive_scale(coeffs: &[Self]) -> Self {
        let mut den_lcm = Int::one();
        let mut num_gcd = Int::zero();
        for c in coeffs {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        if num_gcd.is_zero() {
            return <Rat as One>::one();
        }
        let mut scale = Rat::new(den_lcm, num_gcd);
        if (&coeffs[0] * &scale).is_negative() {
            scale = -scale;
        }
        scale
    }
}

/// Prime field with the fixed Mersenne modulus 2^61 - 1.
pub const FP_MODULUS: u64 = 2_305_843_009_213_693_951;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp(pub u64);

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(v % FP_MODULUS)
    }

    pub fn from_int(v: &Int) -> Self {
        let m = Int::from(FP_MODULUS);
        let mut r = v % &m;
        if r.is_negative() {
            r += &m;
        }
        let digits = r.to_u64_digits().1;
        Fp(digits.first().copied().unwrap_or(0))
    }

    /// Reduce a rational mod p. Fails when the denominator vanishes mod p.
    pub fn try_from_rat(r: &Rat) -> Option<Self> {
        let den = Self::from_int(r.denom());
        if den.0 == 0 {
            return None;
        }
        Some(Self::from_int(r.numer()).mul(&den.inv()))
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            Fp(0)
        } else {
            Fp(FP_MODULUS - self.0)
        }
    }
    fn add(&self, rhs: &Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= FP_MODULUS { s - FP_MODULUS } else { s })
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % FP_MODULUS as u128) as u64)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(FP_MODULUS - 2)
    }
    fn from_i64(n: i64) -> Self {
        if n < 0 {
            Fp::new(n.unsigned_abs()).neg()
        } else {
            Fp::new(n as u64)
        }
    }
    fn from_rat(r: &Rat) -> Self {
        Self::try_from_rat(r).expect("denominator vanishes mod p")
    }

    fn primitive_scale(coeffs: &[Self]) -> Self {
        coeffs[0].inv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing_round_trips() {
        assert_eq!(parse_rat("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rat("-5").unwrap(), rat(-5));
        assert_eq!(rat_string(&ratio(6, 4)), "3/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn primitive_scale_clears_rationals() {
        let coeffs = vec![ratio(-3, 4), ratio(9, 2), rat(6)];
        let s = <Rat as Field>::primitive_scale(&coeffs);
        let scaled: Vec<Rat> = coeffs.iter().map(|c| c * &s).collect();
        assert!(scaled.iter().all(|c| c.denom().is_one()));
        assert!(scaled[0].is_positive());
        let g = scaled
            .iter()
            .fold(Int::zero(), |acc, c| acc.gcd(c.numer()));
        assert!(g.is_one());
    }

    #[test]
    fn prime_field_inverse() {
        let a = Fp::new(123456789);
        assert!(a.mul(&a.inv()).is_one());
        assert_eq!(Fp::from_i64(-1), Fp(FP_MODULUS - 1));
        let r = ratio(7, 3);
        let x = Fp::try_from_rat(&r).unwrap();
        assert_eq!(x.mul(&Fp::new(3)), Fp::new(7));
    }
}
