//! Eliminants of zero-dimensional ideals via lex Gröbner bases.

use crate::arith::Field;
use crate::error::Error;

use super::buchberger::groebner_basis;
use super::count::standard_monomials;
use super::mono::Order;
use super::mpoly::MultiPoly;
use super::SolveOpts;

/// Generator of the elimination ideal in `keep`, computed from a lex basis
/// with `keep` last. `priority` lists the variables from most to least
/// significant and must end with `keep`; the default eliminates the other
/// variables in ascending order.
pub fn eliminant<F: Field>(
    gens: &[MultiPoly<F>],
    keep: usize,
    priority: Option<&[usize]>,
    opts: &SolveOpts,
) -> Result<MultiPoly<F>, Error> {
    let nvars = gens.first().map(|g| g.nvars()).unwrap_or(0);
    assert!(keep < nvars, "variable out of range");
    let default: Vec<usize> = (0..nvars).filter(|&v| v != keep).chain([keep]).collect();
    let perm: Vec<usize> = match priority {
        Some(p) => p.to_vec(),
        None => default,
    };
    {
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (0..nvars).collect::<Vec<_>>() || perm.last() != Some(&keep) {
            return Err(Error::Invalid(
                "priority must be a permutation ending in the kept variable".into(),
            ));
        }
    }

    let remapped: Vec<MultiPoly<F>> = gens.iter().map(|g| g.reorder_vars(&perm)).collect();
    let gb = groebner_basis(&remapped, Order::Lex, opts)?;
    if gb.contains_one() {
        return Err(Error::NotZeroDimensional);
    }
    if standard_monomials(&gb.leading_monomials(), nvars).is_none() {
        return Err(Error::NotZeroDimensional);
    }

    let last = nvars - 1;
    let univ = gb
        .gens
        .iter()
        .filter(|g| g.is_univariate_in(last))
        .min_by_key(|g| g.degree_in(last))
        .ok_or(Error::NotZeroDimensional)?;

    // invert the relabelling
    let mut inv = vec![0usize; nvars];
    for (i, &v) in perm.iter().enumerate() {
        inv[v] = i;
    }
    Ok(univ.reorder_vars(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;

    fn p(nvars: usize, terms: &[(&[u32], i64)]) -> MultiPoly<Rat> {
        MultiPoly::from_i64_terms(nvars, terms)
    }

    #[test]
    fn eliminate_to_kept_variable() {
        // {x^2 - 1, y - x}, keep y: y^2 - 1
        let f = p(2, &[(&[2, 0], 1), (&[0, 0], -1)]);
        let g = p(2, &[(&[0, 1], 1), (&[1, 0], -1)]);
        let e = eliminant(&[f, g], 1, None, &SolveOpts::default()).unwrap();
        assert_eq!(e, p(2, &[(&[0, 2], 1), (&[0, 0], -1)]));
    }

    #[test]
    fn positive_dimensional_input_is_rejected() {
        let f = p(2, &[(&[1, 1], 1), (&[0, 0], -1)]); // xy = 1: a curve
        assert!(matches!(
            eliminant(&[f], 0, None, &SolveOpts::default()),
            Err(Error::NotZeroDimensional)
        ));
    }

    #[test]
    fn explicit_priority_is_respected() {
        // same ideal, explicit order x > y with keep y
        let f = p(2, &[(&[2, 0], 1), (&[0, 0], -1)]);
        let g = p(2, &[(&[0, 1], 1), (&[1, 0], -1)]);
        let e = eliminant(&[f, g], 1, Some(&[0, 1]), &SolveOpts::default()).unwrap();
        assert_eq!(e, p(2, &[(&[0, 2], 1), (&[0, 0], -1)]));
        assert!(eliminant(
            &[p(2, &[(&[1, 0], 1)])],
            1,
            Some(&[1, 0]),
            &SolveOpts::default()
        )
        .is_err());
    }
}
