//! Modular Gröbner engine for ℚ.
//!
//! The reduced Gröbner basis is computed modulo word-size primes, combined
//! by incremental CRT, rationally reconstructed, and certified over ℚ by
//! re-reducing all S-polynomials and the original generators. For the
//! heaviest systems the fully reduced rational basis has coefficients too
//! large to reconstruct in reasonable time; counting then falls back to a
//! two-prime agreement protocol (implemented in the counting layer), which
//! is the standard modular practice when Hilbert-driven certificates are
//! unavailable.

use std::any::Any;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::arith::{Field, Int, Rat};
use crate::error::Error;

use super::buchberger::{groebner_basis, is_groebner_basis_with, GroebnerBasis};
use super::mono::{Monomial, Order};
use super::mpoly::MultiPoly;
use super::SolveOpts;

/// Word-size prime field with a runtime modulus. Elements created by the
/// context-free `Field` constructors carry no modulus and behave as small
/// integer literals (two's complement in `v`) until they meet a reduced
/// element, at which point they are lifted.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Mp {
    v: u64,
    p: u64,
}

impl Mp {
    pub(crate) fn from_int(x: &Int, p: u64) -> Self {
        let m = Int::from(p);
        let mut r = x % &m;
        if r.is_negative() {
            r += &m;
        }
        let digits = r.to_u64_digits().1;
        Mp {
            v: digits.first().copied().unwrap_or(0),
            p,
        }
    }

    pub(crate) fn try_from_rat(x: &Rat, p: u64) -> Option<Self> {
        let den = Self::from_int(x.denom(), p);
        if den.v == 0 {
            return None;
        }
        Some(Self::from_int(x.numer(), p).mul(&den.inv()))
    }

    fn lift(&self, p: u64) -> Mp {
        if self.p != 0 || p == 0 {
            return *self;
        }
        let s = self.v as i64;
        let m = p as i128;
        let mut r = (s as i128) % m;
        if r < 0 {
            r += m;
        }
        Mp { v: r as u64, p }
    }
}

impl std::fmt::Display for Mp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.p == 0 {
            write!(f, "{}", self.v as i64)
        } else {
            write!(f, "{}", self.v)
        }
    }
}

impl Field for Mp {
    fn zero() -> Self {
        Mp { v: 0, p: 0 }
    }
    fn one() -> Self {
        Mp { v: 1, p: 0 }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
    fn neg(&self) -> Self {
        if self.p == 0 {
            Mp {
                v: (self.v as i64).wrapping_neg() as u64,
                p: 0,
            }
        } else if self.v == 0 {
            *self
        } else {
            Mp {
                v: self.p - self.v,
                p: self.p,
            }
        }
    }
    fn add(&self, rhs: &Self) -> Self {
        let p = self.p.max(rhs.p);
        if p == 0 {
            return Mp {
                v: (self.v as i64).wrapping_add(rhs.v as i64) as u64,
                p: 0,
            };
        }
        let a = self.lift(p);
        let b = rhs.lift(p);
        let s = a.v + b.v;
        Mp {
            v: if s >= p { s - p } else { s },
            p,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        let p = self.p.max(rhs.p);
        if p == 0 {
            return Mp {
                v: (self.v as i64).wrapping_mul(rhs.v as i64) as u64,
                p: 0,
            };
        }
        let a = self.lift(p);
        let b = rhs.lift(p);
        Mp {
            v: ((a.v as u128 * b.v as u128) % p as u128) as u64,
            p,
        }
    }
    fn inv(&self) -> Self {
        assert!(self.v != 0, "inverse of zero");
        if self.p == 0 {
            let s = self.v as i64;
            assert!(s == 1 || s == -1, "inverse of an unreduced literal");
            return *self;
        }
        let mut base = *self;
        let mut acc = Mp { v: 1, p: self.p };
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
    fn from_i64(n: i64) -> Self {
        Mp { v: n as u64, p: 0 }
    }
    fn from_rat(_: &Rat) -> Self {
        unreachable!("use Mp::try_from_rat with an explicit modulus")
    }
    fn primitive_scale(coeffs: &[Self]) -> Self {
        coeffs[0].inv()
    }
    fn adapt(&self, exemplar: &Self) -> Self {
        self.lift(exemplar.p)
    }
}

/// Deterministic Miller-Rabin, exact for 64-bit inputs.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = 1u64;
        let mut base = a % n;
        let mut e = d;
        while e > 0 {
            if e & 1 == 1 {
                x = ((x as u128 * base as u128) % n as u128) as u64;
            }
            base = ((base as u128 * base as u128) % n as u128) as u64;
            e >>= 1;
        }
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The k-th prime below 2^62, counting down (cached).
pub(crate) fn nth_prime(k: usize) -> u64 {
    const COUNT: usize = 384;
    static PRIMES: std::sync::OnceLock<Vec<u64>> = std::sync::OnceLock::new();
    let primes = PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(COUNT);
        let mut n: u64 = (1 << 62) - 1;
        while out.len() < COUNT {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    });
    primes[k]
}

/// Map a monic reduced basis into the prime field. Leading coefficients
/// are 1 and survive; tail coefficients may legitimately vanish. None when
/// the prime divides a denominator.
pub(crate) fn reduce_monic_basis(
    gb: &GroebnerBasis<Rat>,
    prime: u64,
) -> Option<Vec<MultiPoly<Mp>>> {
    let mut out = Vec::with_capacity(gb.gens.len());
    for g in &gb.gens {
        let mut h = MultiPoly::zero(gb.nvars);
        for (e, c) in g.terms() {
            let v = Mp::try_from_rat(c, prime)?;
            h.add_term(e.clone(), v);
        }
        if h.is_zero() {
            return None;
        }
        out.push(h);
    }
    Some(out)
}

/// Map a rational system into the prime field; None when the prime divides
/// a denominator or kills a coefficient.
pub(crate) fn reduce_system(gens: &[MultiPoly<Rat>], prime: u64) -> Option<Vec<MultiPoly<Mp>>> {
    let nvars = gens.first().map(|g| g.nvars()).unwrap_or(0);
    let mut mapped: Vec<MultiPoly<Mp>> = Vec::with_capacity(gens.len());
    for g in gens {
        let mut h = MultiPoly::zero(nvars);
        for (e, c) in g.terms() {
            let v = Mp::try_from_rat(c, prime)?;
            if v.is_zero() {
                return None;
            }
            h.add_term(e.clone(), v);
        }
        mapped.push(h);
    }
    Some(mapped)
}

struct ModBasis {
    prime: u64,
    gens: Vec<MultiPoly<Mp>>,
    lms: Vec<Monomial>,
}

fn gb_mod_prime(
    gens: &[MultiPoly<Rat>],
    order: Order,
    prime: u64,
    opts: &SolveOpts,
) -> Result<Option<ModBasis>, Error> {
    let Some(mapped) = reduce_system(gens, prime) else {
        return Ok(None);
    };
    let gb = groebner_basis(&mapped, order, opts)?;
    let lms = gb.leading_monomials();
    Ok(Some(ModBasis {
        prime,
        gens: gb.gens,
        lms,
    }))
}

/// Incremental CRT accumulator over matching reduced bases.
struct CrtState {
    modulus: Int,
    /// per generator: exponent -> combined residue
    gens: Vec<BTreeMap<Vec<u32>, Int>>,
    lms: Vec<Monomial>,
    primes: usize,
}

impl CrtState {
    fn new(b: &ModBasis) -> Self {
        let gens = b
            .gens
            .iter()
            .map(|g| {
                g.terms()
                    .map(|(e, c)| (e.clone(), Int::from(c.v)))
                    .collect()
            })
            .collect();
        CrtState {
            modulus: Int::from(b.prime),
            gens,
            lms: b.lms.clone(),
            primes: 1,
        }
    }

    fn push(&mut self, b: &ModBasis) {
        debug_assert_eq!(self.lms, b.lms);
        let p = Int::from(b.prime);
        let minv = mod_inverse(&self.modulus, &p).expect("distinct primes");
        for (acc, g) in self.gens.iter_mut().zip(&b.gens) {
            // union of supports: a residue may be zero on either side
            let mut keys: Vec<Vec<u32>> = acc.keys().cloned().collect();
            for (e, _) in g.terms() {
                if !acc.contains_key(e) {
                    keys.push(e.clone());
                }
            }
            for e in keys {
                let x = acc.get(&e).cloned().unwrap_or_else(Int::zero);
                let r = Int::from(g.coefficient(&e).v);
                let mut t = ((&r - &x) * &minv) % &p;
                if t.is_negative() {
                    t += &p;
                }
                let combined = &x + &self.modulus * t;
                acc.insert(e, combined);
            }
        }
        self.modulus *= p;
        self.primes += 1;
    }

    fn try_reconstruct(&self, nvars: usize, order: Order) -> Option<GroebnerBasis<Rat>> {
        let bound = sqrt_floor(&(&self.modulus / Int::from(2)));
        let mut gens: Vec<MultiPoly<Rat>> = Vec::with_capacity(self.gens.len());
        for acc in &self.gens {
            let mut poly = MultiPoly::zero(nvars);
            for (e, r) in acc {
                let rat = rational_reconstruct_big(r, &self.modulus, &bound)?;
                poly.add_term(e.clone(), rat);
            }
            gens.push(poly);
        }
        Some(GroebnerBasis { gens, nvars, order })
    }
}

fn mod_inverse(a: &Int, p: &Int) -> Option<Int> {
    let (mut r0, mut r1) = (p.clone(), ((a % p) + p) % p);
    let (mut t0, mut t1) = (Int::zero(), Int::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if !r0.is_one() {
        return None;
    }
    let mut inv = t0 % p;
    if inv.is_negative() {
        inv += p;
    }
    Some(inv)
}

fn sqrt_floor(n: &Int) -> Int {
    if n.is_zero() {
        return Int::zero();
    }
    let bits = n.bits();
    let mut hi: Int = Int::one() << ((bits / 2) + 1);
    let mut lo = Int::zero();
    while lo < hi {
        let mid: Int = (&lo + &hi + Int::one()) / Int::from(2);
        if &(&mid * &mid) <= n {
            lo = mid;
        } else {
            hi = mid - Int::one();
        }
    }
    lo
}

/// Rational reconstruction with explicit modulus and bound.
fn rational_reconstruct_big(a: &Int, modulus: &Int, bound: &Int) -> Option<Rat> {
    let (mut r0, mut r1) = (modulus.clone(), a.clone());
    let (mut t0, mut t1) = (Int::zero(), Int::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound {
        return None;
    }
    if t1.is_negative() {
        return Some(Rat::new(-r1, -t1));
    }
    Some(Rat::new(r1, t1))
}

/// Certification over ℚ: the candidate is a Gröbner basis and contains the
/// inputs.
fn verify_over_q(
    candidate: &GroebnerBasis<Rat>,
    gens: &[MultiPoly<Rat>],
    opts: &SolveOpts,
) -> Result<bool, Error> {
    if !is_groebner_basis_with(candidate, opts)? {
        return Ok(false);
    }
    for g in gens {
        opts.check()?;
        if !candidate.reduce(g).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reconstruct a certified rational Gröbner basis through however many
/// primes the coefficients demand, up to `max_primes`; None when the
/// reconstruction stays out of reach.
pub(crate) fn reconstruct_verified(
    gens: &[MultiPoly<Rat>],
    order: Order,
    opts: &SolveOpts,
    max_primes: usize,
) -> Result<Option<GroebnerBasis<Rat>>, Error> {
    let nvars = gens.first().map(|g| g.nvars()).unwrap_or(0);
    let mut prime_index = 0usize;
    let mut state: Option<CrtState> = None;
    let mut failed_verifications = 0usize;

    while prime_index < max_primes {
        opts.check()?;
        let p = nth_prime(prime_index);
        prime_index += 1;
        let Some(basis) = gb_mod_prime(gens, order, p, opts)? else {
            continue;
        };
        match &mut state {
            None => state = Some(CrtState::new(&basis)),
            Some(st) => {
                if st.lms != basis.lms {
                    continue; // unlucky prime: different leading structure
                }
                st.push(&basis);
            }
        }
        let st = state.as_ref().expect("just set");
        // reconstruction attempts on a sparse schedule to avoid quadratic
        // rework while the modulus is still too small
        let k = st.primes;
        let attempt = k <= 4 || (k <= 32 && k % 4 == 0) || k % 8 == 0;
        if !attempt {
            continue;
        }
        if let Some(candidate) = st.try_reconstruct(nvars, order) {
            if opts.modular {
                // trusted mode: primes agree, spot-check membership only
                let ok = gens.iter().all(|g| candidate.reduce(g).is_zero());
                if ok {
                    return Ok(Some(candidate));
                }
            } else if verify_over_q(&candidate, gens, opts)? {
                return Ok(Some(candidate));
            }
            failed_verifications += 1;
            if failed_verifications >= 3 {
                return Ok(None);
            }
        }
    }
    Ok(None)
}

/// Modular-first Gröbner basis for any coefficient field: certified
/// modular over ℚ with a direct fallback, direct elsewhere.
pub(crate) fn groebner_basis_checked<F: Field>(
    gens: &[MultiPoly<F>],
    order: Order,
    opts: &SolveOpts,
) -> Result<GroebnerBasis<F>, Error> {
    if let Some(rat_gens) = downcast_system::<F>(gens) {
        if let Some(gb) = reconstruct_verified(&rat_gens, order, opts, 64)? {
            return Ok(upcast_basis(gb));
        }
    }
    groebner_basis(gens, order, opts)
}

pub(crate) fn downcast_system<F: Field>(gens: &[MultiPoly<F>]) -> Option<Vec<MultiPoly<Rat>>> {
    gens.iter()
        .map(|g| (g as &dyn Any).downcast_ref::<MultiPoly<Rat>>().cloned())
        .collect()
}

pub(crate) fn upcast_basis<F: Field>(gb: GroebnerBasis<Rat>) -> GroebnerBasis<F> {
    let gens: Vec<MultiPoly<F>> = gb
        .gens
        .iter()
        .map(|g| {
            (g as &dyn Any)
                .downcast_ref::<MultiPoly<F>>()
                .expect("caller checked F == Rat")
                .clone()
        })
        .collect();
    GroebnerBasis {
        gens,
        nvars: gb.nvars,
        order: gb.order,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn primality_and_prime_list() {
        assert!(is_prime_u64(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64((1 << 62) - 1));
        let p0 = nth_prime(0);
        let p1 = nth_prime(1);
        assert!(p0 > p1 && is_prime_u64(p0) && is_prime_u64(p1));
    }

    #[test]
    fn literal_lifting_arithmetic() {
        let p = nth_prime(0);
        let a = Mp::from_int(&Int::from(5), p);
        let neg_one = Mp::one().neg();
        assert_eq!(a.mul(&neg_one), a.neg());
        assert!(neg_one.add(&Mp::one()).is_zero());
        assert!(a.mul(&a.inv()).is_one());
    }

    #[test]
    fn reconstruction_round_trips() {
        let r = ratio(-355, 113);
        let p0 = nth_prime(0);
        let p1 = nth_prime(1);
        let m0 = Mp::try_from_rat(&r, p0).unwrap();
        let m1 = Mp::try_from_rat(&r, p1).unwrap();
        let modulus = Int::from(p0) * Int::from(p1);
        let minv = mod_inverse(&Int::from(p0), &Int::from(p1)).unwrap();
        let mut t = ((Int::from(m1.v) - Int::from(m0.v)) * minv) % Int::from(p1);
        if t.is_negative() {
            t += Int::from(p1);
        }
        let combined = Int::from(m0.v) + Int::from(p0) * t;
        let bound = sqrt_floor(&(&modulus / Int::from(2)));
        assert_eq!(
            rational_reconstruct_big(&combined, &modulus, &bound).unwrap(),
            r
        );
    }

    #[test]
    fn modular_basis_matches_direct() {
        let f = MultiPoly::from_i64_terms(2, &[(&[2, 0], 1), (&[0, 2], 3), (&[0, 0], -4)]);
        let g = MultiPoly::from_i64_terms(2, &[(&[1, 1], 1), (&[0, 0], -1)]);
        let direct = groebner_basis(
            &[f.clone(), g.clone()],
            Order::DegRevLex,
            &SolveOpts::default(),
        )
        .unwrap();
        let modular = reconstruct_verified(&[f, g], Order::DegRevLex, &SolveOpts::default(), 8)
            .unwrap()
            .unwrap();
        assert_eq!(direct.gens, modular.gens);
    }

    #[test]
    fn fractional_inputs_reconstruct() {
        // (x - 1/3)(x - 1/5) expanded
        let f = MultiPoly::from_terms(
            1,
            [
                (vec![2], ratio(1, 1)),
                (vec![1], ratio(-8, 15)),
                (vec![0], ratio(1, 15)),
            ],
        );
        let gb = reconstruct_verified(&[f.clone()], Order::DegRevLex, &SolveOpts::default(), 8)
            .unwrap()
            .unwrap();
        assert_eq!(gb.gens, vec![f]);
    }
}
