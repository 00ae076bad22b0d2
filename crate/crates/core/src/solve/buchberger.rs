//! Buchberger's algorithm with the Gebauer-Möller pair criteria.
//!
//! Reduction is fraction-free: the reducee is rescaled by the reducer's
//! leading coefficient instead of dividing, and the whole polynomial is
//! periodically renormalized to primitive form. Over ℚ this keeps all
//! intermediate coefficients integral, which is what makes the larger
//! likelihood systems tractable.

use std::cmp::Ordering;

use crate::arith::Field;
use crate::error::Error;

use super::mono::{cmp_mono, Monomial, Order};
use super::mpoly::MultiPoly;
use super::SolveOpts;

/// Order-sorted polynomial used internally (terms descending).
#[derive(Clone, Debug)]
pub(crate) struct GPoly<F: Field> {
    pub terms: Vec<(Monomial, F)>,
}

impl<F: Field> GPoly<F> {
    pub fn from_mpoly(p: &MultiPoly<F>, order: Order) -> Self {
        let mut terms: Vec<(Monomial, F)> = p
            .terms()
            .map(|(e, c)| (Monomial::from_exps(e.clone()), c.clone()))
            .collect();
        terms.sort_by(|a, b| cmp_mono(order, &b.0, &a.0));
        GPoly { terms }
    }

    pub fn to_mpoly(&self, nvars: usize) -> MultiPoly<F> {
        MultiPoly::from_terms(
            nvars,
            self.terms
                .iter()
                .map(|(m, c)| (m.exps().to_vec(), c.clone())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &F {
        &self.terms[0].1
    }

    fn scale(&mut self, c: &F) {
        if c.is_one() {
            return;
        }
        for (_, x) in self.terms.iter_mut() {
            *x = x.mul(c);
        }
    }

    fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let coeffs: Vec<F> = self.terms.iter().map(|(_, c)| c.clone()).collect();
        let s = F::primitive_scale(&coeffs);
        self.scale(&s);
    }

    fn make_monic(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let inv = self.lc().inv();
        self.scale(&inv);
    }
}

/// a*p - b*(m*g), merging the sorted term lists.
fn combine<F: Field>(
    a: &F,
    p: &GPoly<F>,
    b: &F,
    m: &Monomial,
    g: &GPoly<F>,
    order: Order,
) -> GPoly<F> {
    let one = a.is_one();
    let scale_p = |c: &F| if one { c.clone() } else { c.mul(a) };
    let mut out = Vec::with_capacity(p.terms.len() + g.terms.len());
    let mut i = 0;
    let mut j = 0;
    while i < p.terms.len() && j < g.terms.len() {
        let gm = g.terms[j].0.mul(m);
        match cmp_mono(order, &p.terms[i].0, &gm) {
            Ordering::Greater => {
                out.push((p.terms[i].0.clone(), scale_p(&p.terms[i].1)));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, g.terms[j].1.mul(b).neg()));
                j += 1;
            }
            Ordering::Equal => {
                let c = scale_p(&p.terms[i].1).sub(&g.terms[j].1.mul(b));
                if !c.is_zero() {
                    out.push((gm, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    while i < p.terms.len() {
        out.push((p.terms[i].0.clone(), scale_p(&p.terms[i].1)));
        i += 1;
    }
    while j < g.terms.len() {
        out.push((g.terms[j].0.mul(m), g.terms[j].1.mul(b).neg()));
        j += 1;
    }
    GPoly { terms: out }
}

/// Exact normal form of `p` against `basis`. Reduction uses true field
/// division (work -= (lc_w / lc_g) * m * g), which keeps coefficient sizes
/// near the natural size of the result; the basis is kept primitive
/// separately. When sugar degrees are supplied the sugar of the result is
/// tracked alongside.
fn normal_form_tracked<F: Field>(
    p: GPoly<F>,
    p_sugar: u32,
    basis: &[GPoly<F>],
    sugars: Option<&[u32]>,
    order: Order,
    opts: &SolveOpts,
) -> Result<(GPoly<F>, u32), Error> {
    let mut work = p;
    let mut sugar = p_sugar;
    let mut head: Vec<(Monomial, F)> = Vec::new();
    let mut steps = 0usize;
    while !work.is_zero() {
        let reducer = basis
            .iter()
            .enumerate()
            .find(|(_, g)| !g.is_zero() && g.lm().divides(work.lm()));
        match reducer {
            Some((gi, g)) => {
                let m = g.lm().div_into(work.lm());
                let c = work.lc().mul(&g.lc().inv());
                if let Some(sugars) = sugars {
                    sugar = sugar.max(m.total_deg() + sugars[gi]);
                }
                work = combine(&F::one(), &work, &c, &m, g, order);
                steps += 1;
                if steps % 64 == 0 {
                    opts.check()?;
                }
            }
            None => {
                head.push(work.terms.remove(0));
            }
        }
    }
    Ok((GPoly { terms: head }, sugar))
}

pub(crate) fn normal_form<F: Field>(
    p: GPoly<F>,
    basis: &[GPoly<F>],
    order: Order,
    opts: &SolveOpts,
) -> Result<GPoly<F>, Error> {
    Ok(normal_form_tracked(p, 0, basis, None, order, opts)?.0)
}

/// The S-polynomial, balanced to keep integral coefficients integral.
fn s_poly<F: Field>(f: &GPoly<F>, g: &GPoly<F>, order: Order) -> GPoly<F> {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().div_into(&l);
    let mg = g.lm().div_into(&l);
    // lc(g) * (mf*f) - lc(f) * (mg*g)
    let shifted: GPoly<F> = GPoly {
        terms: f
            .terms
            .iter()
            .map(|(m, c)| (m.mul(&mf), c.clone()))
            .collect(),
    };
    combine(g.lc(), &shifted, f.lc(), &mg, g, order)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    /// virtual homogenized degree of the S-polynomial (sugar strategy)
    sugar: u32,
}

/// A reduced Gröbner basis: inter-reduced generators with unit leading
/// coefficients, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    pub gens: Vec<MultiPoly<F>>,
    pub nvars: usize,
    pub order: Order,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens
            .iter()
            .map(|g| g.leading_by(self.order).expect("nonzero").0)
            .collect()
    }

    pub fn contains_one(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].total_degree() == 0
    }

    /// The exact normal form of a polynomial modulo this basis.
    pub fn reduce(&self, p: &MultiPoly<F>) -> MultiPoly<F> {
        let basis: Vec<GPoly<F>> = self
            .gens
            .iter()
            .map(|g| GPoly::from_mpoly(g, self.order))
            .collect();
        let nf = normal_form(
            GPoly::from_mpoly(p, self.order),
            &basis,
            self.order,
            &SolveOpts::default(),
        )
        .expect("no deadline");
        nf.to_mpoly(self.nvars)
    }
}

/// Buchberger's algorithm, returning the reduced basis.
pub fn groebner_basis<F: Field>(
    gens: &[MultiPoly<F>],
    order: Order,
    opts: &SolveOpts,
) -> Result<GroebnerBasis<F>, Error> {
    let nvars = gens.first().map(|g| g.nvars()).unwrap_or(0);
    assert!(gens.iter().all(|g| g.nvars() == nvars));

    let mut basis: Vec<GPoly<F>> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let add = |h: GPoly<F>,
               h_sugar: u32,
               basis: &mut Vec<GPoly<F>>,
               sugars: &mut Vec<u32>,
               pairs: &mut Vec<Pair>| {
        let t = basis.len();
        let mut fresh: Vec<Pair> = (0..t)
            .map(|i| {
                let lcm = basis[i].lm().lcm(h.lm());
                let sugar = (sugars[i] + lcm.total_deg() - basis[i].lm().total_deg())
                    .max(h_sugar + lcm.total_deg() - h.lm().total_deg());
                Pair { i, j: t, lcm, sugar }
            })
            .collect();
        // Gebauer-Möller: discard a new pair whose lcm is a proper multiple
        // of another new pair's lcm
        let mut keep = vec![true; fresh.len()];
        for a in 0..fresh.len() {
            if !keep[a] {
                continue;
            }
            for b in 0..fresh.len() {
                if a != b
                    && keep[b]
                    && fresh[b].lcm.divides(&fresh[a].lcm)
                    && fresh[b].lcm != fresh[a].lcm
                {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut filtered: Vec<Pair> = Vec::new();
        for (p, k) in fresh.drain(..).zip(keep) {
            if !k {
                continue;
            }
            if filtered.iter().any(|q| q.lcm == p.lcm) {
                continue; // keep one pair per lcm
            }
            filtered.push(p);
        }
        // product criterion
        filtered.retain(|p| !basis[p.i].lm().is_coprime(h.lm()));
        // prune old pairs dominated by the new leading monomial
        pairs.retain(|p| {
            !(h.lm().divides(&p.lcm)
                && basis[p.i].lm().lcm(h.lm()) != p.lcm
                && basis[p.j].lm().lcm(h.lm()) != p.lcm)
        });
        pairs.extend(filtered);
        basis.push(h);
        sugars.push(h_sugar);
    };

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let mut gp = GPoly::from_mpoly(g, order);
        gp.make_primitive();
        let sugar = gp.terms.iter().map(|(m, _)| m.total_deg()).max().unwrap_or(0);
        add(gp, sugar, &mut basis, &mut sugars, &mut pairs);
    }

    let mut iterations = 0usize;
    while !pairs.is_empty() {
        iterations += 1;
        if iterations % 16 == 0 {
            opts.check()?;
        }
        // sugar selection: lowest virtual degree first, then the usual
        // normal strategy on the lcm
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                (a.sugar, a.lcm.total_deg())
                    .cmp(&(b.sugar, b.lcm.total_deg()))
                    .then_with(|| cmp_mono(order, &a.lcm, &b.lcm))
            })
            .map(|(k, _)| k)
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        let s = s_poly(&basis[pair.i], &basis[pair.j], order);
        let (mut nf, nf_sugar) =
            normal_form_tracked(s, pair.sugar, &basis, Some(&sugars), order, opts)?;
        if !nf.is_zero() {
            nf.make_primitive();
            add(nf, nf_sugar, &mut basis, &mut sugars, &mut pairs);
        }
    }

    // minimal basis: drop elements whose leading monomial is divisible by
    // another's
    let mut alive: Vec<bool> = vec![true; basis.len()];
    for a in 0..basis.len() {
        if !alive[a] {
            continue;
        }
        for b in 0..basis.len() {
            if a != b
                && alive[b]
                && basis[b].lm().divides(basis[a].lm())
                && (basis[b].lm() != basis[a].lm() || b < a)
            {
                alive[a] = false;
                break;
            }
        }
    }
    let minimal: Vec<GPoly<F>> = basis
        .into_iter()
        .zip(alive)
        .filter_map(|(g, a)| a.then_some(g))
        .collect();

    // inter-reduce tails and normalize
    let mut reduced: Vec<GPoly<F>> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<GPoly<F>> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| (j != i).then(|| g.clone()))
            .collect();
        let mut nf = normal_form(minimal[i].clone(), &others, order, opts)?;
        debug_assert!(!nf.is_zero());
        nf.make_monic();
        reduced.push(nf);
    }
    reduced.sort_by(|a, b| cmp_mono(order, a.lm(), b.lm()));

    Ok(GroebnerBasis {
        gens: reduced.iter().map(|g| g.to_mpoly(nvars)).collect(),
        nvars,
        order,
    })
}

/// Buchberger criterion: every S-polynomial reduces to zero. Used by tests
/// and by the modular verification path.
pub fn is_groebner_basis<F: Field>(gb: &GroebnerBasis<F>) -> bool {
    is_groebner_basis_with(gb, &SolveOpts::default()).unwrap_or(false)
}

/// Deadline-aware Buchberger criterion; pairs with coprime leading
/// monomials are skipped (their S-polynomials always reduce to zero).
pub(crate) fn is_groebner_basis_with<F: Field>(
    gb: &GroebnerBasis<F>,
    opts: &SolveOpts,
) -> Result<bool, Error> {
    let basis: Vec<GPoly<F>> = gb
        .gens
        .iter()
        .map(|g| GPoly::from_mpoly(g, gb.order))
        .collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if basis[i].lm().is_coprime(basis[j].lm()) {
                continue;
            }
            opts.check()?;
            let s = s_poly(&basis[i], &basis[j], gb.order);
            let nf = normal_form(s, &basis, gb.order, opts)?;
            if !nf.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;

    fn p(nvars: usize, terms: &[(&[u32], i64)]) -> MultiPoly<Rat> {
        MultiPoly::from_i64_terms(nvars, terms)
    }

    #[test]
    fn lex_basis_of_simple_ideal() {
        // {x^2 - 1, xy - 1} under lex y > x: reverse variable roles so the
        // solver sees lex x0 > x1 with x0 = y, x1 = x
        // original vars (x, y) -> reorder to (y, x)
        let f = p(2, &[(&[0, 2], 1), (&[0, 0], -1)]); // x^2 - 1 in (y, x)
        let g = p(2, &[(&[1, 1], 1), (&[0, 0], -1)]); // yx - 1
        let gb = groebner_basis(&[f, g], Order::Lex, &SolveOpts::default()).unwrap();
        // expected reduced basis: {x^2 - 1, y - x}
        let expect_1 = p(2, &[(&[0, 2], 1), (&[0, 0], -1)]);
        let expect_2 = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(gb.gens, vec![expect_1, expect_2]);
        assert!(is_groebner_basis(&gb));
    }

    #[test]
    fn inconsistent_system_gives_one() {
        let f = p(1, &[(&[1], 1), (&[0], -1)]); // x - 1
        let g = p(1, &[(&[1], 1), (&[0], -2)]); // x - 2
        let gb = groebner_basis(&[f, g], Order::DegRevLex, &SolveOpts::default()).unwrap();
        assert!(gb.contains_one());
    }

    #[test]
    fn single_generator_passes_through() {
        let f = p(2, &[(&[1, 0], 1)]);
        let gb = groebner_basis(&[f.clone()], Order::DegRevLex, &SolveOpts::default()).unwrap();
        assert_eq!(gb.gens, vec![f]);
    }

    #[test]
    fn reduction_gives_normal_form() {
        // basis {x^2 - 1}: x^3 + x reduces to 2x
        let f = p(1, &[(&[2], 1), (&[0], -1)]);
        let gb = groebner_basis(&[f], Order::DegRevLex, &SolveOpts::default()).unwrap();
        let q = p(1, &[(&[3], 1), (&[1], 1)]);
        assert_eq!(gb.reduce(&q), p(1, &[(&[1], 2)]));
    }

    #[test]
    fn katsura_like_system_is_consistent() {
        // a small dense system: x+2y+2z-1, x^2+2y^2+2z^2-x, 2xy+2yz-y
        let f1 = p(3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 2), (&[0, 0, 1], 2), (&[0, 0, 0], -1)]);
        let f2 = p(
            3,
            &[(&[2, 0, 0], 1), (&[0, 2, 0], 2), (&[0, 0, 2], 2), (&[1, 0, 0], -1)],
        );
        let f3 = p(3, &[(&[1, 1, 0], 2), (&[0, 1, 1], 2), (&[0, 1, 0], -1)]);
        let gb = groebner_basis(&[f1, f2, f3], Order::DegRevLex, &SolveOpts::default()).unwrap();
        assert!(!gb.contains_one());
        assert!(is_groebner_basis(&gb));
    }
}
