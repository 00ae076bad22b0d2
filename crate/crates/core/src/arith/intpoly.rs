//! Dense univariate polynomials over ℤ.
//!
//! These carry the numerators/denominators of ℚ(t) elements and the
//! eliminants handed to real root isolation. The gcd is a primitive
//! pseudo-remainder sequence, which is entirely adequate at the degrees
//! that occur here.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Int, Rat};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct IntPoly {
    /// Coefficient of t^i at index i; no trailing zeros.
    coeffs: Vec<Int>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::constant(Int::one())
    }

    pub fn constant(c: Int) -> Self {
        let mut p = IntPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// c * t^k
    pub fn monomial(c: Int, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![Int::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Int>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn leading(&self) -> Int {
        self.coeffs.last().cloned().unwrap_or_else(Int::zero)
    }

    /// Order of vanishing at t = 0; None for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![Int::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn mul_scalar(&self, c: &Int) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Positive gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> Int {
        self.coeffs
            .iter()
            .fold(Int::zero(), |acc, c| acc.gcd(c))
    }

    /// Divide out the content, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Pseudo-remainder: lc(d)^(deg a - deg d + 1) * a = q*d + r with
    /// deg r < deg d. Returns r.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "pseudo-division by zero");
        let dd = d.degree().unwrap();
        let lc = d.leading();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let shift = dr - dd;
            let top = r.leading();
            r = r.mul_scalar(&lc).sub(&d.mul(&IntPoly::monomial(top, shift)));
        }
        r
    }

    /// Exact division; None if the division does not come out exact over ℤ.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dd = d.degree().unwrap();
        let mut r = self.clone();
        let mut q = vec![Int::zero(); self.coeffs.len()];
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let (c, rem) = r.leading().div_rem(&d.leading());
            if !rem.is_zero() {
                return None;
            }
            let shift = dr - dd;
            q[shift] = c.clone();
            r = r.sub(&d.mul(&IntPoly::monomial(c, shift)));
        }
        Some(IntPoly::from_coeffs(q))
    }

    /// Gcd including integer content, normalized to a positive leading
    /// coefficient.
    pub fn gcd(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.abs_normalized();
        }
        if rhs.is_zero() {
            return self.abs_normalized();
        }
        let content = self.content().gcd(&rhs.content());
        let mut a = self.primitive_part();
        let mut b = rhs.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.abs_normalized().mul_scalar(&content)
    }

    fn abs_normalized(&self) -> Self {
        if self.leading().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn lcm(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let g = self.gcd(rhs);
        self.mul(rhs).exact_div(&g).expect("gcd divides product")
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Int::from(i))
            .collect();
        IntPoly::from_coeffs(coeffs)
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    /// Substitute t -> t^n.
    pub fn subst_power(&self, n: usize) -> Self {
        assert!(n >= 1);
        if n == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Int::zero(); (self.coeffs.len() - 1) * n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * n] = c.clone();
        }
        IntPoly::from_coeffs(coeffs)
    }

    /// Squarefree part (primitive, positive leading coefficient).
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        if self.degree() == Some(0) {
            return IntPoly::one();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div_rational(&g)
    }

    /// Divide by a polynomial that divides self over ℚ, then re-normalize to
    /// a primitive result. Used where only the divisor class matters.
    fn exact_div_rational(&self, d: &Self) -> Self {
        // self = d * q over ℚ; over ℤ, content(d)*primitive gives exactness
        // after scaling self suitably.
        let a = self.primitive_part();
        let b = d.primitive_part();
        // primitive * primitive: Gauss's lemma makes the quotient integral
        a.exact_div(&b)
            .or_else(|| {
                // fall back to scaling if necessary
                a.mul_scalar(&b.leading()).exact_div(&b)
            })
            .expect("divisor does not divide")
            .primitive_part()
            .abs_normalized()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{i}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn gcd_of_products() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = IntPoly::from_i64(&[-2, 1, 1]).mul(&IntPoly::from_i64(&[1]));
        let a = a.mul(&IntPoly::one());
        let b = IntPoly::from_i64(&[-1, 1]).mul(&IntPoly::from_i64(&[-3, 1]));
        let a2 = IntPoly::from_i64(&[-1, 1]).mul(&IntPoly::from_i64(&[2, 1]));
        assert_eq!(a, a2.clone().mul(&IntPoly::one()));
        let g = a2.gcd(&b);
        assert_eq!(g, IntPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn gcd_includes_content() {
        let a = IntPoly::from_i64(&[2, 4]); // 2(2t+1)
        let b = IntPoly::from_i64(&[6]); // 6
        assert_eq!(a.gcd(&b), IntPoly::from_i64(&[2]));
    }

    #[test]
    fn squarefree_part_drops_multiplicity() {
        // (t-1)^2 (t+1)
        let p = IntPoly::from_i64(&[-1, 1])
            .mul(&IntPoly::from_i64(&[-1, 1]))
            .mul(&IntPoly::from_i64(&[1, 1]));
        let sf = p.squarefree_part();
        assert_eq!(
            sf,
            IntPoly::from_i64(&[-1, 1]).mul(&IntPoly::from_i64(&[1, 1]))
        );
    }

    #[test]
    fn evaluation_and_derivative() {
        let p = IntPoly::from_i64(&[1, -2, 3]); // 3t^2 - 2t + 1
        assert_eq!(p.eval_rat(&ratio(1, 2)), ratio(3, 4));
        assert_eq!(p.derivative(), IntPoly::from_i64(&[-2, 6]));
        assert_eq!(p.subst_power(2), IntPoly::from_i64(&[1, 0, -2, 0, 3]));
    }

    #[test]
    fn display_reads_naturally() {
        let p = IntPoly::from_i64(&[-6, 0, -14, 0, 9]);
        assert_eq!(p.to_string(), "9*t^4 - 14*t^2 - 6");
    }
}
