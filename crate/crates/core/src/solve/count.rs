//! Solution counting for torus-saturated ideals.
//!
//! The quotient dimension is the number of standard monomials of a
//! degrevlex basis; the number of distinct solutions is the degree of the
//! squarefree part of the minimal polynomial of a random linear form acting
//! on the quotient, confirmed with a second independent form.

use std::collections::HashMap;

use crate::arith::{Field, Rat};
use crate::error::Error;
use crate::rng::Rng;

use super::buchberger::GroebnerBasis;
use super::modular::{self, Mp};
use super::mono::{Monomial, Order};
use super::mpoly::MultiPoly;
use super::saturate::{restrict_elim_basis, saturated_basis_direct, shifted_with_relation};
use super::SolveOpts;

/// Result of exact solving over the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionCount {
    /// No solutions at all.
    Empty,
    /// Finitely many; `distinct` points, `quotient_dim` counted with
    /// multiplicity.
    Finite {
        distinct: usize,
        quotient_dim: usize,
    },
    /// A positive-dimensional solution set.
    Infinite,
}

impl SolutionCount {
    /// Rendering used by tables: finite counts as numbers, "inf" otherwise.
    pub fn display_count(&self) -> String {
        match self {
            SolutionCount::Empty => "0".to_string(),
            SolutionCount::Finite { distinct, .. } => distinct.to_string(),
            SolutionCount::Infinite => "inf".to_string(),
        }
    }

    pub fn distinct(&self) -> Option<usize> {
        match self {
            SolutionCount::Empty => Some(0),
            SolutionCount::Finite { distinct, .. } => Some(*distinct),
            SolutionCount::Infinite => None,
        }
    }
}

/// Count the solutions of `gens` having all listed variables nonzero.
///
/// Rational systems are routed through the modular engine: the saturated
/// basis is reconstructed over ℚ and certified whenever its coefficients
/// are within reach, and otherwise the count is established by agreement
/// of two independent primes. Other coefficient fields compute directly.
pub fn count_torus_solutions<F: Field>(
    gens: &[MultiPoly<F>],
    vars: &[usize],
    rng: &mut Rng,
    opts: &SolveOpts,
) -> Result<SolutionCount, Error> {
    if let Some(rat_gens) = modular::downcast_system::<F>(gens) {
        return count_torus_solutions_rat(&rat_gens, vars, rng, opts);
    }
    let gb = saturated_basis_direct(gens, vars, opts)?;
    count_from_saturated(&gb, rng, opts)
}

fn count_torus_solutions_rat(
    gens: &[MultiPoly<Rat>],
    vars: &[usize],
    rng: &mut Rng,
    opts: &SolveOpts,
) -> Result<SolutionCount, Error> {
    let shifted = shifted_with_relation(gens, vars);
    match modular::reconstruct_verified(&shifted, Order::ElimFirst, opts, 48)? {
        Some(elim_gb) => {
            let gb = restrict_elim_basis(&elim_gb);
            count_exact_rat(&gb, rng, opts)
        }
        None => two_prime_count(&shifted, rng, opts),
    }
}

/// Exact counting over a certified rational basis. The distinct count is
/// first attempted by the mod-p squeeze: for a good prime, the squarefree
/// degree of the minimal polynomial mod p is a lower bound for the number
/// of distinct points, so hitting the quotient dimension settles the count
/// without rational linear algebra. Multiplicity cases fall back to the
/// exact rational protocol.
fn count_exact_rat(
    gb: &GroebnerBasis<Rat>,
    rng: &mut Rng,
    opts: &SolveOpts,
) -> Result<SolutionCount, Error> {
    if gb.gens.iter().all(|g| g.is_zero()) {
        return Ok(SolutionCount::Infinite);
    }
    if gb.contains_one() {
        return Ok(SolutionCount::Empty);
    }
    let Some(std_monos) = standard_monomials(&gb.leading_monomials(), gb.nvars) else {
        return Ok(SolutionCount::Infinite);
    };
    let quotient_dim = std_monos.len();

    for prime_idx in 0..3 {
        let p = modular::nth_prime(prime_idx);
        let Some(gens_p) = modular::reduce_monic_basis(gb, p) else {
            continue; // prime divides a denominator
        };
        let gb_p = GroebnerBasis {
            gens: gens_p,
            nvars: gb.nvars,
            order: gb.order,
        };
        let exemplar = basis_exemplar(&gb_p);
        let form = random_linear_form::<Mp>(gb.nvars, rng, exemplar.as_ref());
        let (minpoly, _) = minimal_polynomial_with_krylov(&gb_p, &std_monos, &form, opts)?;
        if squarefree_degree(&minpoly) == quotient_dim {
            return Ok(SolutionCount::Finite {
                distinct: quotient_dim,
                quotient_dim,
            });
        }
        break; // genuine multiplicities (or an unlucky form): go exact
    }
    count_from_saturated(gb, rng, opts)
}

/// Counting by agreement of two independent primes, for systems whose
/// rational basis cannot be reconstructed. A wrong answer requires both
/// primes to be unlucky for the same system.
fn two_prime_count(
    shifted: &[MultiPoly<Rat>],
    rng: &mut Rng,
    opts: &SolveOpts,
) -> Result<SolutionCount, Error> {
    let base = (rng.next_u64() % 4) as usize;
    let mut results: Vec<SolutionCount> = Vec::new();
    let mut prime_idx = base;
    let mut attempts = 0;
    while attempts < 8 {
        attempts += 1;
        let p = modular::nth_prime(prime_idx);
        prime_idx += 1;
        let Some(mapped) = modular::reduce_system(shifted, p) else {
            continue;
        };
        let gb = super::buchberger::groebner_basis(&mapped, Order::ElimFirst, opts)?;
        let sat = restrict_elim_basis(&gb);
        let count = count_from_saturated(&sat, rng, opts)?;
        if let Some(prev) = results.last() {
            if *prev == count {
                return Ok(count);
            }
        }
        results.push(count);
    }
    Err(Error::ModularVerification)
}

pub(crate) fn count_from_saturated<F: Field>(
    gb: &GroebnerBasis<F>,
    rng: &mut Rng,
    opts: &SolveOpts,
) -> Result<SolutionCount, Error> {
    if gb.gens.iter().all(|g| g.is_zero()) {
        return Ok(SolutionCount::Infinite);
    }
    if gb.contains_one() {
        return Ok(SolutionCount::Empty);
    }
    let Some(std_monos) = standard_monomials(&gb.leading_monomials(), gb.nvars) else {
        return Ok(SolutionCount::Infinite);
    };
    let quotient_dim = std_monos.len();

    let exemplar = basis_exemplar(gb);
    let draw = |rng: &mut Rng| -> Result<usize, Error> {
        let form = random_linear_form::<F>(gb.nvars, rng, exemplar.as_ref());
        let minpoly = minimal_polynomial(gb, &std_monos, &form, opts)?;
        Ok(squarefree_degree(&minpoly))
    };
    let c1 = draw(rng)?;
    let c2 = draw(rng)?;
    let distinct = if c1 == c2 {
        c1
    } else {
        // a non-separating form can only undercount distinct values
        let c3 = draw(rng)?;
        c1.max(c2).max(c3)
    };
    Ok(SolutionCount::Finite {
        distinct,
        quotient_dim,
    })
}

/// Random linear form with coefficients adapted to the representation of
/// the basis coefficients (relevant for the runtime prime field).
fn random_linear_form<F: Field>(
    nvars: usize,
    rng: &mut Rng,
    exemplar: Option<&F>,
) -> MultiPoly<F> {
    let mut form = MultiPoly::zero(nvars);
    for i in 0..nvars {
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        let c = F::from_i64(rng.int_in(1, 10_000));
        let c = match exemplar {
            Some(x) => c.adapt(x),
            None => c,
        };
        form.add_term(e, c);
    }
    form
}

fn basis_exemplar<F: Field>(gb: &GroebnerBasis<F>) -> Option<F> {
    gb.gens
        .iter()
        .flat_map(|g| g.terms())
        .map(|(_, c)| c.clone())
        .next()
}

/// Monomials outside the leading term ideal, or None when there are
/// infinitely many (no pure power of some variable among the leads).
pub fn standard_monomials(lms: &[Monomial], nvars: usize) -> Option<Vec<Monomial>> {
    let mut bounds = vec![None::<u32>; nvars];
    for lm in lms {
        if lm.total_deg() == 0 {
            return Some(vec![]); // ideal contains a unit
        }
        let nz: Vec<usize> = (0..nvars).filter(|&i| lm.exp(i) > 0).collect();
        if nz.len() == 1 {
            let i = nz[0];
            let e = lm.exp(i);
            if bounds[i].map_or(true, |b| e < b) {
                bounds[i] = Some(e);
            }
        }
    }
    let bounds: Option<Vec<u32>> = bounds.into_iter().collect();
    let bounds = bounds?;

    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    loop {
        let m = Monomial::from_exps(exps.clone());
        if !lms.iter().any(|lm| lm.divides(&m)) {
            out.push(m);
        }
        // odometer over the box [0, bounds)
        let mut i = 0;
        loop {
            if i == nvars {
                return Some(out);
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Incremental echelon over an arbitrary field with dependency reporting.
pub(crate) struct FSpan<F: Field> {
    dim: usize,
    inserted: usize,
    rows: Vec<(Vec<F>, Vec<F>, usize)>,
}

impl<F: Field> FSpan<F> {
    pub(crate) fn new(dim: usize) -> Self {
        FSpan {
            dim,
            inserted: 0,
            rows: Vec::new(),
        }
    }

    /// None when independent, Some(coeffs over previously inserted vectors)
    /// when dependent.
    pub(crate) fn insert(&mut self, v: &[F]) -> Option<Vec<F>> {
        let mut vec = v.to_vec();
        let mut combo = vec![F::zero(); self.inserted + 1];
        combo[self.inserted] = F::one();
        for (row, rcombo, pivot) in &self.rows {
            if vec[*pivot].is_zero() {
                continue;
            }
            let f = vec[*pivot].clone();
            for j in 0..self.dim {
                vec[j] = vec[j].sub(&row[j].mul(&f));
            }
            for (j, rc) in rcombo.iter().enumerate() {
                combo[j] = combo[j].sub(&rc.mul(&f));
            }
        }
        let pivot = vec.iter().position(|x| !x.is_zero());
        self.inserted += 1;
        for r in self.rows.iter_mut() {
            r.1.resize(self.inserted, F::zero());
        }
        match pivot {
            Some(p) => {
                let inv = vec[p].inv();
                for x in vec.iter_mut() {
                    *x = x.mul(&inv);
                }
                for x in combo.iter_mut() {
                    *x = x.mul(&inv);
                }
                combo.resize(self.inserted, F::zero());
                self.rows.push((vec, combo, p));
                None
            }
            None => Some(
                combo[..self.inserted - 1]
                    .iter()
                    .map(|c| c.neg())
                    .collect(),
            ),
        }
    }
}

/// Monic minimal polynomial (constant coefficient first) of a polynomial
/// acting by multiplication on the quotient ring.
pub(crate) fn minimal_polynomial<F: Field>(
    gb: &GroebnerBasis<F>,
    std_monos: &[Monomial],
    form: &MultiPoly<F>,
    opts: &SolveOpts,
) -> Result<Vec<F>, Error> {
    let (coeffs, _) = minimal_polynomial_with_krylov(gb, std_monos, form, opts)?;
    Ok(coeffs)
}

/// As above, returning the Krylov normal forms NF(form^k) for reuse.
pub(crate) fn minimal_polynomial_with_krylov<F: Field>(
    gb: &GroebnerBasis<F>,
    std_monos: &[Monomial],
    form: &MultiPoly<F>,
    opts: &SolveOpts,
) -> Result<(Vec<F>, Vec<Vec<F>>), Error> {
    let dim = std_monos.len();
    let index: HashMap<&[u32], usize> = std_monos
        .iter()
        .enumerate()
        .map(|(i, m)| (m.exps(), i))
        .collect();
    let to_vec = |p: &MultiPoly<F>| -> Vec<F> {
        let mut v = vec![F::zero(); dim];
        for (e, c) in p.terms() {
            let i = *index
                .get(e.as_slice())
                .expect("normal form supported on standard monomials");
            v[i] = c.clone();
        }
        v
    };

    // prepare the reducer basis once; the loop reduces dim+1 products
    let basis: Vec<super::buchberger::GPoly<F>> = gb
        .gens
        .iter()
        .map(|g| super::buchberger::GPoly::from_mpoly(g, gb.order))
        .collect();
    let reduce = |p: &MultiPoly<F>| -> Result<MultiPoly<F>, Error> {
        let nf = super::buchberger::normal_form(
            super::buchberger::GPoly::from_mpoly(p, gb.order),
            &basis,
            gb.order,
            opts,
        )?;
        Ok(nf.to_mpoly(gb.nvars))
    };

    let exemplar = basis_exemplar(gb);
    let mut span = FSpan::new(dim);
    let mut krylov: Vec<Vec<F>> = Vec::new();
    let mut current = MultiPoly::one(gb.nvars);
    loop {
        opts.check()?;
        let v = to_vec(&current);
        match span.insert(&v) {
            Some(combo) => {
                // minpoly = T^m - sum combo[k] T^k
                let mut coeffs: Vec<F> = combo.iter().map(|c| c.neg()).collect();
                coeffs.push(F::one());
                if let Some(ex) = &exemplar {
                    for c in coeffs.iter_mut() {
                        *c = c.adapt(ex);
                    }
                }
                return Ok((coeffs, krylov));
            }
            None => {
                krylov.push(v);
            }
        }
        current = reduce(&current.mul(form))?;
    }
}

/// Degree of the squarefree part of a univariate polynomial over a field
/// (constant coefficient first, nonzero leading coefficient).
pub(crate) fn squarefree_degree<F: Field>(q: &[F]) -> usize {
    let deg = q.len() - 1;
    if deg == 0 {
        return 0;
    }
    let deriv: Vec<F> = q
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul(&F::from_i64(i as i64)))
        .collect();
    let g = upoly_gcd(q.to_vec(), deriv);
    deg - (g.len() - 1)
}

fn upoly_trim<F: Field>(p: &mut Vec<F>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

/// Monic univariate gcd over a field by the Euclidean algorithm.
pub(crate) fn upoly_gcd<F: Field>(mut a: Vec<F>, mut b: Vec<F>) -> Vec<F> {
    upoly_trim(&mut a);
    upoly_trim(&mut b);
    while !b.is_empty() {
        let r = upoly_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lc) = a.last().cloned() {
        let inv = lc.inv();
        for c in a.iter_mut() {
            *c = c.mul(&inv);
        }
    }
    a
}

/// Remainder of a by b over the rationals, exposed for the Sturm chain.
pub(crate) fn upoly_gcd_rem_only(a: &[crate::arith::Rat], b: &[crate::arith::Rat]) -> Vec<crate::arith::Rat> {
    upoly_rem(a, b)
}

fn upoly_rem<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut r = a.to_vec();
    upoly_trim(&mut r);
    let db = b.len() - 1;
    let lb = b.last().expect("nonzero divisor");
    while r.len() > db {
        let lr = r.last().expect("nonempty").clone();
        let shift = r.len() - 1 - db;
        let f = lr.mul(&lb.inv());
        for (i, c) in b.iter().enumerate() {
            let t = c.mul(&f);
            r[shift + i] = r[shift + i].sub(&t);
        }
        upoly_trim(&mut r);
        if r.len() <= shift {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;

    fn p(nvars: usize, terms: &[(&[u32], i64)]) -> MultiPoly<Rat> {
        MultiPoly::from_i64_terms(nvars, terms)
    }

    #[test]
    fn simple_counts() {
        let mut rng = Rng::new(0);
        // x^2 - 1: two simple roots
        let f = p(1, &[(&[2], 1), (&[0], -1)]);
        assert_eq!(
            count_torus_solutions(&[f], &[0], &mut rng, &SolveOpts::default()).unwrap(),
            SolutionCount::Finite {
                distinct: 2,
                quotient_dim: 2
            }
        );
        // (x-1)^2: one double root
        let g = p(1, &[(&[2], 1), (&[1], -2), (&[0], 1)]);
        assert_eq!(
            count_torus_solutions(&[g], &[0], &mut rng, &SolveOpts::default()).unwrap(),
            SolutionCount::Finite {
                distinct: 1,
                quotient_dim: 2
            }
        );
    }

    #[test]
    fn empty_and_infinite() {
        let mut rng = Rng::new(1);
        let f = p(2, &[(&[1, 1], 1)]); // xy = 0 has no torus points
        assert_eq!(
            count_torus_solutions(&[f], &[0, 1], &mut rng, &SolveOpts::default()).unwrap(),
            SolutionCount::Empty
        );
        let g = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]); // x = y: a curve
        assert_eq!(
            count_torus_solutions(&[g], &[0, 1], &mut rng, &SolveOpts::default()).unwrap(),
            SolutionCount::Infinite
        );
    }

    #[test]
    fn two_variable_system() {
        let mut rng = Rng::new(2);
        // x^2 = 1, y = x: two points
        let f = p(2, &[(&[2, 0], 1), (&[0, 0], -1)]);
        let g = p(2, &[(&[0, 1], 1), (&[1, 0], -1)]);
        assert_eq!(
            count_torus_solutions(&[f, g], &[0, 1], &mut rng, &SolveOpts::default()).unwrap(),
            SolutionCount::Finite {
                distinct: 2,
                quotient_dim: 2
            }
        );
    }

    #[test]
    fn standard_monomial_box() {
        // lms x^2, y^3 -> 6 standard monomials
        let lms = vec![
            Monomial::from_exps(vec![2, 0]),
            Monomial::from_exps(vec![0, 3]),
        ];
        assert_eq!(standard_monomials(&lms, 2).unwrap().len(), 6);
        // missing pure power in y -> infinite
        let lms = vec![Monomial::from_exps(vec![2, 0])];
        assert!(standard_monomials(&lms, 2).is_none());
    }

    #[test]
    fn squarefree_degree_counts_distinct_roots() {
        use crate::arith::rat;
        // (T-1)^2 (T-2) = T^3 - 4T^2 + 5T - 2
        let q = vec![rat(-2), rat(5), rat(-4), rat(1)];
        assert_eq!(squarefree_degree(&q), 2);
    }
}
