//! The rational function field ℚ(t).
//!
//! Elements are kept in a canonical form: numerator and denominator are
//! integer polynomials with no common factor, the pair carries no common
//! integer content, and the denominator has a positive leading coefficient.
//! (A monic integer denominator is not always possible; this primitive
//! normalization is the exact-arithmetic analogue.)

use std::fmt;

use num_traits::{One, Signed};

use super::{Field, Int, IntPoly, Rat};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in Q(t)");
        let mut r = RatFunc { num, den };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = IntPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.exact_div(&g).expect("gcd divides");
            self.den = self.den.exact_div(&g).expect("gcd divides");
        }
        if self.den.leading().is_negative() {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }

    pub fn from_int_poly(p: IntPoly) -> Self {
        RatFunc {
            num: p,
            den: IntPoly::one(),
        }
    }

    pub fn from_integer(c: Int) -> Self {
        RatFunc::from_int_poly(IntPoly::constant(c))
    }

    /// The variable t.
    pub fn t() -> Self {
        RatFunc::from_int_poly(IntPoly::monomial(Int::one(), 1))
    }

    /// c * t^k for rational c and integer k (k may be negative).
    pub fn monomial(c: &Rat, k: i64) -> Self {
        let num;
        let den;
        if k >= 0 {
            num = IntPoly::monomial(c.numer().clone(), k as usize);
            den = IntPoly::constant(c.denom().clone());
        } else {
            num = IntPoly::constant(c.numer().clone());
            den = IntPoly::monomial(c.denom().clone(), (-k) as usize);
        }
        RatFunc::new(num, den)
    }

    pub fn numer(&self) -> &IntPoly {
        &self.num
    }

    pub fn denom(&self) -> &IntPoly {
        &self.den
    }

    /// t-adic valuation: order of vanishing at 0 (negative for poles).
    pub fn valuation(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        let vd = self.den.valuation().expect("denominator nonzero") as i64;
        Some(vn - vd)
    }

    /// Evaluate at a rational point; None when the denominator vanishes.
    pub fn eval(&self, t0: &Rat) -> Option<Rat> {
        let d = self.den.eval_rat(t0);
        if num_traits::Zero::is_zero(&d) {
            return None;
        }
        Some(self.num.eval_rat(t0) / d)
    }

    /// Substitute t -> t^n.
    pub fn subst_power(&self, n: usize) -> Self {
        RatFunc::new(self.num.subst_power(n), self.den.subst_power(n))
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::from_int_poly(IntPoly::zero())
    }

    fn one() -> Self {
        RatFunc::from_int_poly(IntPoly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        RatFunc::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        // cancel across before multiplying to keep degrees down
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = self.num.exact_div(&g1).expect("gcd divides");
        let d = rhs.den.exact_div(&g1).expect("gcd divides");
        let b = rhs.num.exact_div(&g2).expect("gcd divides");
        let c = self.den.exact_div(&g2).expect("gcd divides");
        RatFunc::new(a.mul(&b), c.mul(&d))
    }

    fn inv(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of zero in Q(t)");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    fn from_i64(n: i64) -> Self {
        RatFunc::from_integer(Int::from(n))
    }

    fn from_rat(r: &Rat) -> Self {
        RatFunc::new(
            IntPoly::constant(r.numer().clone()),
            IntPoly::constant(r.denom().clone()),
        )
    }

    fn primitive_scale(coeffs: &[Self]) -> Self {
        let mut den_lcm = IntPoly::one();
        let mut num_gcd = IntPoly::zero();
        for c in coeffs {
            den_lcm = den_lcm.lcm(&c.den);
            num_gcd = num_gcd.gcd(&c.num);
        }
        if num_gcd.is_zero() {
            return RatFunc::one();
        }
        let mut scale = RatFunc::new(den_lcm, num_gcd);
        let lead = coeffs[0].mul(&scale);
        if lead.num.leading().is_negative() {
            scale = scale.neg();
        }
        scale
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn tp(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn arithmetic_normalizes() {
        // (t^2-1)/(t+1) = t-1
        let x = RatFunc::new(tp(&[-1, 0, 1]), tp(&[1, 1]));
        assert_eq!(x, RatFunc::from_int_poly(tp(&[-1, 1])));

        let a = RatFunc::new(tp(&[1]), tp(&[0, 2])); // 1/(2t)
        let b = RatFunc::new(tp(&[1]), tp(&[0, 0, 2])); // 1/(2t^2)
        let s = a.add(&b); // (t+1)/(2t^2)
        assert_eq!(s, RatFunc::new(tp(&[1, 1]), tp(&[0, 0, 2])));
        assert!(s.mul(&s.inv()).is_one());
    }

    #[test]
    fn valuation_and_eval() {
        let x = RatFunc::new(tp(&[0, 0, 3]), tp(&[0, 1, 1])); // 3t^2/(t+t^2) = 3t/(1+t)
        assert_eq!(x.valuation(), Some(1));
        assert_eq!(x.eval(&rat(1)).unwrap(), ratio(3, 2));
        assert_eq!(x.eval(&rat(-1)), None);
    }

    #[test]
    fn primitive_scale_clears_everything() {
        let coeffs = vec![
            RatFunc::new(tp(&[0, -2]), tp(&[1, 1])),
            RatFunc::new(tp(&[4]), tp(&[1])),
        ];
        let s = RatFunc::primitive_scale(&coeffs);
        let scaled: Vec<RatFunc> = coeffs.iter().map(|c| c.mul(&s)).collect();
        assert!(scaled.iter().all(|c| c.den.is_one()));
        let g = scaled
            .iter()
            .fold(IntPoly::zero(), |acc, c| acc.gcd(c.numer()));
        assert!(g.is_one());
        assert!(!scaled[0].numer().leading().is_negative());
    }
}
