//! Real root isolation by Sturm sequences and the rational univariate
//! representation used to count and certify real positive solutions.

use num_traits::{One, Signed, Zero};

use crate::arith::{Int, IntPoly, Rat};
use crate::error::Error;
use crate::rng::Rng;

use super::buchberger::GroebnerBasis;
use super::count::{minimal_polynomial_with_krylov, standard_monomials};
use super::mpoly::MultiPoly;
use super::saturate::saturated_basis;
use super::SolveOpts;

/// Signed remainder chain of a squarefree polynomial.
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(q: &IntPoly) -> Self {
        let to_rat = |p: &IntPoly| -> Vec<Rat> {
            p.coeffs()
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect()
        };
        // clear a rational remainder to an integer polynomial by a strictly
        // positive scalar, preserving all signs
        let clear_positive = |coeffs: &[Rat]| -> IntPoly {
            let mut lcm = Int::one();
            for c in coeffs {
                lcm = num_integer::Integer::lcm(&lcm, c.denom());
            }
            let ints: Vec<Int> = coeffs
                .iter()
                .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
                .collect();
            let p = IntPoly::from_coeffs(ints);
            let content = p.content();
            if content.is_zero() || content.is_one() {
                p
            } else {
                p.mul_scalar(&Int::one())
                    .exact_div(&IntPoly::constant(content))
                    .expect("content divides")
            }
        };
        let mut chain = vec![q.clone(), q.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = super::count::upoly_gcd_rem_only(&to_rat(&chain[n - 2]), &to_rat(&chain[n - 1]));
            if r.is_empty() {
                break;
            }
            let neg: Vec<Rat> = r.iter().map(|c| -c).collect();
            chain.push(clear_positive(&neg));
        }
        SturmChain { chain }
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut prev = 0i32;
        let mut count = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rat) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let v = p.eval_rat(x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        }))
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    pub fn count_in(&self, a: &Rat, b: &Rat) -> usize {
        assert!(a <= b);
        self.variations_at(a) - self.variations_at(b)
    }
}

/// Cauchy bound: all real roots lie in (-B, B).
pub fn root_bound(q: &IntPoly) -> Rat {
    let lead = Rat::from_integer(q.leading().abs());
    let max = q
        .coeffs()
        .iter()
        .map(|c| Rat::from_integer(c.abs()))
        .fold(Rat::zero(), |a, b| if b > a { b } else { a });
    Rat::one() + max / lead
}

/// Isolating intervals for the real roots of a squarefree polynomial,
/// sorted in increasing order. Point intervals [r, r] are exact rational
/// roots; open intervals (a, b) have q(a), q(b) nonzero and contain exactly
/// one root.
pub fn isolate_real_roots(q: &IntPoly) -> Vec<(Rat, Rat)> {
    if q.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let chain = SturmChain::new(q);
    let bound = root_bound(q);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound.clone())];
    while let Some((a, b)) = stack.pop() {
        let n = chain.count_in(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 && !q.eval_rat(&b).is_zero() {
            // root is interior: endpoints are never roots here
            out.push((a, b));
            continue;
        }
        let mid = (&a + &b) / Rat::from_integer(2.into());
        if q.eval_rat(&mid).is_zero() {
            out.push((mid.clone(), mid.clone()));
            // nudge the split points off the root
            let mut width = (&b - &a) / Rat::from_integer(4.into());
            loop {
                let left = &mid - &width;
                let right = &mid + &width;
                if !q.eval_rat(&left).is_zero() && !q.eval_rat(&right).is_zero() {
                    stack.push((a.clone(), left));
                    stack.push((right, b.clone()));
                    break;
                }
                width = width / Rat::from_integer(2.into());
            }
        } else {
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Shrink an isolating interval below the given width.
pub fn refine_root(q: &IntPoly, interval: (Rat, Rat), width: &Rat) -> (Rat, Rat) {
    let (mut a, mut b) = interval;
    if a == b {
        return (a, b);
    }
    let chain = SturmChain::new(q);
    while &(&b - &a) > width {
        let mid = (&a + &b) / Rat::from_integer(2.into());
        if q.eval_rat(&mid).is_zero() {
            return (mid.clone(), mid);
        }
        if chain.count_in(&a, &mid) == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
    (a, b)
}

/// Sign of h at the root of q isolated by `interval` (0 when h vanishes
/// there). Both polynomials are integer; q is squarefree.
pub fn sign_at_root(q: &IntPoly, interval: &(Rat, Rat), h: &IntPoly) -> i32 {
    let sign_of = |v: &Rat| -> i32 {
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    };
    if h.is_zero() {
        return 0;
    }
    let (mut a, mut b) = interval.clone();
    if a == b {
        return sign_of(&h.eval_rat(&a));
    }
    let g = q.gcd(h);
    if g.degree().unwrap_or(0) > 0 {
        let gchain = SturmChain::new(&g);
        if gchain.count_in(&a, &b) > 0 {
            return 0;
        }
    }
    let qchain = SturmChain::new(q);
    let hchain = SturmChain::new(&h.squarefree_part());
    loop {
        let ha = h.eval_rat(&a);
        let hb = h.eval_rat(&b);
        if !ha.is_zero() && !hb.is_zero() && sign_of(&ha) == sign_of(&hb) {
            if hchain.count_in(&a, &b) == 0 {
                return sign_of(&ha);
            }
        }
        let mid = (&a + &b) / Rat::from_integer(2.into());
        if q.eval_rat(&mid).is_zero() {
            return sign_of(&h.eval_rat(&mid));
        }
        if qchain.count_in(&a, &mid) == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
}

/// Rational univariate representation of a zero-dimensional quotient in
/// shape position: a squarefree minimal polynomial q of a separating linear
/// form, and for each variable a polynomial giving that coordinate as a
/// function of the form's value.
pub struct Rur {
    pub minpoly: IntPoly,
    /// coords[j] are the coefficients (constant first) of h_j with
    /// x_j = h_j(form value) at every solution.
    pub coords: Vec<Vec<Rat>>,
}

pub(crate) fn rational_univariate_representation(
    gb: &GroebnerBasis<Rat>,
    rng: &mut Rng,
    max_tries: usize,
    opts: &SolveOpts,
) -> Result<Rur, Error> {
    let std_monos =
        standard_monomials(&gb.leading_monomials(), gb.nvars).ok_or(Error::NotZeroDimensional)?;
    let dim = std_monos.len();
    if dim == 0 {
        return Err(Error::Invalid("empty variety".into()));
    }
    for _ in 0..max_tries {
        let mut form = MultiPoly::zero(gb.nvars);
        for i in 0..gb.nvars {
            let mut e = vec![0u32; gb.nvars];
            e[i] = 1;
            form.add_term(e, crate::arith::rat(rng.int_in(1, 10_000)));
        }
        let (coeffs, krylov) = minimal_polynomial_with_krylov(gb, &std_monos, &form, opts)?;
        if coeffs.len() - 1 < dim {
            continue; // not in shape position for this form
        }
        // integer form of the minimal polynomial, same roots
        let minpoly = clear_rational_poly(&coeffs);
        if minpoly.gcd(&minpoly.derivative()).degree().unwrap_or(0) > 0 {
            continue; // not squarefree: quotient not reduced or form unlucky
        }
        // coordinates in the Krylov basis
        let mut span = super::count::FSpan::new(dim);
        for v in &krylov {
            let dep = span.insert(v);
            debug_assert!(dep.is_none());
        }
        let index: std::collections::HashMap<&[u32], usize> = std_monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.exps(), i))
            .collect();
        let mut coords = Vec::with_capacity(gb.nvars);
        let mut ok = true;
        for j in 0..gb.nvars {
            let nf = gb.reduce(&MultiPoly::var(j, gb.nvars));
            let mut v = vec![Rat::zero(); dim];
            for (e, c) in nf.terms() {
                v[*index.get(e.as_slice()).expect("standard monomial")] = c.clone();
            }
            match span.insert(&v) {
                Some(combo) => coords.push(combo),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        return Ok(Rur { minpoly, coords });
    }
    Err(Error::GenericityFailure(max_tries))
}

fn clear_rational_poly(coeffs: &[Rat]) -> IntPoly {
    let mut lcm = Int::one();
    for c in coeffs {
        lcm = num_integer::Integer::lcm(&lcm, c.denom());
    }
    IntPoly::from_coeffs(
        coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
            .collect(),
    )
}

pub(crate) fn rational_poly_to_int(coeffs: &[Rat]) -> IntPoly {
    clear_rational_poly(coeffs)
}

/// Number of real solutions of the torus-saturated system with every
/// coordinate strictly positive.
pub fn real_positive_count(
    gens: &[MultiPoly<Rat>],
    vars: &[usize],
    rng: &mut Rng,
    opts: &SolveOpts,
) -> Result<usize, Error> {
    let gb = saturated_basis(gens, vars, opts)?;
    if gb.contains_one() {
        return Ok(0);
    }
    let rur = rational_univariate_representation(&gb, rng, 5, opts)?;
    let roots = isolate_real_roots(&rur.minpoly);
    let mut count = 0;
    for interval in &roots {
        let all_positive = rur.coords.iter().all(|h| {
            sign_at_root(&rur.minpoly, interval, &rational_poly_to_int(h)) > 0
        });
        if all_positive {
            count += 1;
        }
    }
    Ok(count)
}

/// Exact interval evaluation of a rational-coefficient polynomial over an
/// interval, by Horner's rule with interval arithmetic.
pub fn eval_interval(coeffs: &[Rat], lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    assert!(lo <= hi);
    let mut acc_lo = Rat::zero();
    let mut acc_hi = Rat::zero();
    for c in coeffs.iter().rev() {
        // acc * [lo, hi] + c
        let candidates = [
            &acc_lo * lo,
            &acc_lo * hi,
            &acc_hi * lo,
            &acc_hi * hi,
        ];
        let mut new_lo = candidates[0].clone();
        let mut new_hi = candidates[0].clone();
        for cand in &candidates[1..] {
            if cand < &new_lo {
                new_lo = cand.clone();
            }
            if cand > &new_hi {
                new_hi = cand.clone();
            }
        }
        acc_lo = new_lo + c;
        acc_hi = new_hi + c;
    }
    (acc_lo, acc_hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    #[test]
    fn isolates_sqrt_two() {
        let q = IntPoly::from_i64(&[-2, 0, 1]); // x^2 - 2
        let roots = isolate_real_roots(&q);
        assert_eq!(roots.len(), 2);
        assert!(roots[0].1 <= Rat::zero());
        assert!(roots[1].0 >= Rat::zero());
        let refined = refine_root(&q, roots[1].clone(), &ratio(1, 1000));
        let mid = (&refined.0 + &refined.1) / rat(2);
        let err = (&mid * &mid - rat(2)).abs();
        assert!(err < ratio(1, 100));
    }

    #[test]
    fn no_real_roots() {
        let q = IntPoly::from_i64(&[1, 0, 1]); // x^2 + 1
        assert!(isolate_real_roots(&q).is_empty());
    }

    #[test]
    fn rational_roots_are_exact() {
        // (2x - 1)(x + 3)
        let q = IntPoly::from_i64(&[-3, 5, 2]);
        let roots = isolate_real_roots(&q);
        assert_eq!(roots.len(), 2);
        // the sign of x at each root
        let x = IntPoly::from_i64(&[0, 1]);
        assert_eq!(sign_at_root(&q, &roots[0], &x), -1);
        assert_eq!(sign_at_root(&q, &roots[1], &x), 1);
    }

    #[test]
    fn positive_count_of_univariate_systems() {
        let mut rng = Rng::new(3);
        let opts = SolveOpts::default();
        // x^2 - 2: one positive root
        let f = MultiPoly::from_i64_terms(1, &[(&[2], 1), (&[0], -2)]);
        assert_eq!(real_positive_count(&[f], &[0], &mut rng, &opts).unwrap(), 1);
        // x^2 + 1: none
        let g = MultiPoly::from_i64_terms(1, &[(&[2], 1), (&[0], 1)]);
        assert_eq!(real_positive_count(&[g], &[0], &mut rng, &opts).unwrap(), 0);
    }

    #[test]
    fn interval_evaluation_encloses() {
        // h(x) = x^2 - x on [0, 1/2]
        let h = vec![rat(0), rat(-1), rat(1)];
        let (lo, hi) = eval_interval(&h, &rat(0), &ratio(1, 2));
        assert!(lo <= ratio(-1, 4) && hi >= Rat::zero());
    }
}
