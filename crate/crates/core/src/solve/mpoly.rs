//! Multivariate polynomials over a coefficient field.
//!
//! Terms are stored in a canonical map keyed by exponent vector; the
//! Gröbner machinery re-sorts into order-specific form internally. Zero
//! coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{Field, Rat};

use super::mono::Monomial;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly<F: Field> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, F>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, F::one())
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.add_term(exps, F::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, F)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> F {
        self.terms.get(exps).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: F) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, exps: &[u32], c: &F) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| {
                    (
                        e.iter().zip(exps).map(|(a, b)| a + b).collect(),
                        x.mul(c),
                    )
                })
                .collect(),
        }
    }

    /// The Euler derivative x_i * d/dx_i: multiplies each term by its
    /// exponent in variable i, leaving exponents unchanged.
    pub fn euler_derivative(&self, i: usize) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[i] > 0)
                .map(|(e, c)| (e.clone(), c.mul(&F::from_i64(e[i] as i64))))
                .collect(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.mul(&point[i]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Relabel variables: position i of the result reads variable map[i]
    /// of the original.
    pub fn reorder_vars(&self, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let ne: Vec<u32> = map.iter().map(|&old| e[old]).collect();
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Insert a fresh variable (exponent zero) at the given position.
    pub fn insert_var(&self, at: usize) -> Self {
        let mut out = MultiPoly::zero(self.nvars + 1);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.insert(at, 0);
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Remove a variable that does not occur.
    pub fn drop_var(&self, at: usize) -> Self {
        let mut out = MultiPoly::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            assert_eq!(e[at], 0, "variable occurs");
            let mut ne = e.clone();
            ne.remove(at);
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Restrict to a subset of variables, all others must not occur.
    pub fn restrict_vars(&self, keep: &[usize]) -> Self {
        let mut out = MultiPoly::zero(keep.len());
        for (e, c) in &self.terms {
            for (i, &x) in e.iter().enumerate() {
                assert!(keep.contains(&i) || x == 0, "dropped variable occurs");
            }
            let ne: Vec<u32> = keep.iter().map(|&i| e[i]).collect();
            out.add_term(ne, c.clone());
        }
        out
    }

    /// True when only variable i occurs.
    pub fn is_univariate_in(&self, i: usize) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().enumerate().all(|(j, &x)| j == i || x == 0))
    }

    /// Coefficients of a univariate polynomial in variable i, constant first.
    pub fn univariate_coeffs(&self, i: usize) -> Vec<F> {
        assert!(self.is_univariate_in(i));
        let deg = self.degree_in(i) as usize;
        let mut out = vec![F::zero(); deg + 1];
        for (e, c) in &self.terms {
            out[e[i] as usize] = c.clone();
        }
        out
    }

    pub fn leading_by(&self, order: super::mono::Order) -> Option<(Monomial, F)> {
        self.terms
            .iter()
            .map(|(e, c)| (Monomial::from_exps(e.clone()), c.clone()))
            .max_by(|a, b| super::mono::cmp_mono(order, &a.0, &b.0))
    }

    pub fn to_string_with(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        // display highest total degree first for readability
        let mut terms: Vec<(&Vec<u32>, &F)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            (db, b.0).cmp(&(da, a.0))
        });
        let mut s = String::new();
        for (i, (e, c)) in terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let mono: String = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        names[v].to_string()
                    } else {
                        format!("{}^{}", names[v], k)
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            if mono.is_empty() {
                s.push_str(&format!("({c})"));
            } else if c.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("({c})*{mono}"));
            }
        }
        s
    }
}

impl MultiPoly<Rat> {
    pub fn from_i64_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        MultiPoly::from_terms(
            nvars,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), Rat::from_integer((*c).into()))),
        )
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.to_string_with(&refs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    #[test]
    fn arithmetic_cancels() {
        let x = MultiPoly::<Rat>::var(0, 2);
        let y = MultiPoly::<Rat>::var(1, 2);
        let p = x.add(&y).mul(&x.sub(&y)); // x^2 - y^2
        let expected =
            MultiPoly::from_i64_terms(2, &[(&[2, 0], 1), (&[0, 2], -1)]);
        assert_eq!(p, expected);
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn euler_derivative_scales_terms() {
        // f = 3x^2 y + y
        let f = MultiPoly::from_i64_terms(2, &[(&[2, 1], 3), (&[0, 1], 1)]);
        let fx = f.euler_derivative(0);
        assert_eq!(fx, MultiPoly::from_i64_terms(2, &[(&[2, 1], 6)]));
        let fy = f.euler_derivative(1);
        assert_eq!(fy, f);
    }

    #[test]
    fn eval_and_reorder() {
        let f = MultiPoly::from_i64_terms(2, &[(&[1, 2], 2), (&[0, 0], -1)]);
        assert_eq!(f.eval(&[rat(3), ratio(1, 2)]), ratio(1, 2));
        let g = f.reorder_vars(&[1, 0]);
        assert_eq!(g, MultiPoly::from_i64_terms(2, &[(&[2, 1], 2), (&[0, 0], -1)]));
    }

    #[test]
    fn variable_insertion_round_trip() {
        let f = MultiPoly::from_i64_terms(2, &[(&[1, 2], 5)]);
        let g = f.insert_var(0);
        assert_eq!(g.nvars(), 3);
        assert_eq!(g.drop_var(0), f);
    }

    #[test]
    fn display_is_readable() {
        let f = MultiPoly::from_i64_terms(2, &[(&[2, 0], 1), (&[0, 0], -1)]);
        assert_eq!(f.to_string_with(&["x", "y"]), "x^2 + (-1)");
    }
}
