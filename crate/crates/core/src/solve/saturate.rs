//! Torus saturation by the Rabinowitsch trick: adjoin y with the relation
//! y * prod(vars) - 1 and eliminate y. The solutions of the saturated ideal
//! are exactly the solutions with every listed variable nonzero.

use crate::arith::Field;
use crate::error::Error;

use super::buchberger::{groebner_basis, GroebnerBasis};
use super::mono::Order;
use super::mpoly::MultiPoly;
use super::SolveOpts;

/// Generators of the saturation of `gens` with respect to the product of
/// the listed variables.
pub fn saturate_torus<F: Field>(
    gens: &[MultiPoly<F>],
    vars: &[usize],
    opts: &SolveOpts,
) -> Result<Vec<MultiPoly<F>>, Error> {
    Ok(saturated_basis(gens, vars, opts)?.gens)
}

/// The input system with the auxiliary variable adjoined at position 0 and
/// the relation y * prod(vars) - 1 appended.
pub(crate) fn shifted_with_relation<F: Field>(
    gens: &[MultiPoly<F>],
    vars: &[usize],
) -> Vec<MultiPoly<F>> {
    let nvars = gens.first().map(|g| g.nvars()).unwrap_or(0);
    assert!(vars.iter().all(|&v| v < nvars), "variable out of range");
    let mut shifted: Vec<MultiPoly<F>> = gens.iter().map(|g| g.insert_var(0)).collect();
    let mut exps = vec![0u32; nvars + 1];
    exps[0] = 1;
    for &v in vars {
        exps[v + 1] += 1;
    }
    let mut relation = MultiPoly::zero(nvars + 1);
    relation.add_term(exps, F::one());
    relation.add_term(vec![0; nvars + 1], F::one().neg());
    shifted.push(relation);
    shifted
}

/// Restrict an elimination-order basis to the elements free of the
/// auxiliary variable; these form a degrevlex basis of the saturation.
pub(crate) fn restrict_elim_basis<F: Field>(gb: &GroebnerBasis<F>) -> GroebnerBasis<F> {
    let nvars = gb.nvars - 1;
    let kept: Vec<MultiPoly<F>> = gb
        .gens
        .iter()
        .filter(|g| g.degree_in(0) == 0)
        .map(|g| g.drop_var(0))
        .collect();
    let kept = if kept.is_empty() {
        vec![MultiPoly::zero(nvars)]
    } else {
        kept
    };
    GroebnerBasis {
        gens: kept,
        nvars,
        order: Order::DegRevLex,
    }
}

/// Degrevlex Gröbner basis of the saturated ideal. Rational systems go
/// through the certified modular engine (with a direct fallback); other
/// coefficient fields compute directly.
pub(crate) fn saturated_basis<F: Field>(
    gens: &[MultiPoly<F>],
    vars: &[usize],
    opts: &SolveOpts,
) -> Result<GroebnerBasis<F>, Error> {
    let shifted = shifted_with_relation(gens, vars);
    let gb = super::modular::groebner_basis_checked(&shifted, Order::ElimFirst, opts)?;
    Ok(restrict_elim_basis(&gb))
}

/// Test-only exposure of the saturated basis pipeline.
pub fn saturated_basis_public<F: Field>(
    gens: &[MultiPoly<F>],
    vars: &[usize],
    opts: &SolveOpts,
) -> Result<GroebnerBasis<F>, Error> {
    saturated_basis(gens, vars, opts)
}

/// Purely direct variant, free of the modular machinery; used by the
/// function-field paths and anywhere a basis over the field itself is
/// required and the system is small.
pub(crate) fn saturated_basis_direct<F: Field>(
    gens: &[MultiPoly<F>],
    vars: &[usize],
    opts: &SolveOpts,
) -> Result<GroebnerBasis<F>, Error> {
    let shifted = shifted_with_relation(gens, vars);
    let gb = groebner_basis(&shifted, Order::ElimFirst, opts)?;
    Ok(restrict_elim_basis(&gb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;

    fn p(nvars: usize, terms: &[(&[u32], i64)]) -> MultiPoly<Rat> {
        MultiPoly::from_i64_terms(nvars, terms)
    }

    #[test]
    fn monomial_ideal_saturates_to_unit() {
        // <x0*x1> has no torus solutions
        let f = p(2, &[(&[1, 1], 1)]);
        let sat = saturate_torus(&[f], &[0, 1], &SolveOpts::default()).unwrap();
        assert_eq!(sat, vec![p(2, &[(&[0, 0], 1)])]);
    }

    #[test]
    fn zero_branch_is_removed() {
        // <x^2 - x> : x = <x - 1>
        let f = p(1, &[(&[2], 1), (&[1], -1)]);
        let sat = saturate_torus(&[f], &[0], &SolveOpts::default()).unwrap();
        assert_eq!(sat, vec![p(1, &[(&[1], 1), (&[0], -1)])]);
    }

    #[test]
    fn saturation_keeps_torus_points() {
        // <x*(x-2), x*y - x> : x = <x - 2, y - 1>
        let f = p(2, &[(&[2, 0], 1), (&[1, 0], -2)]);
        let g = p(2, &[(&[1, 1], 1), (&[1, 0], -1)]);
        let sat = saturate_torus(&[f, g], &[0, 1], &SolveOpts::default()).unwrap();
        assert_eq!(
            sat,
            vec![
                p(2, &[(&[0, 1], 1), (&[0, 0], -1)]),
                p(2, &[(&[1, 0], 1), (&[0, 0], -2)]),
            ]
        );
    }
}
