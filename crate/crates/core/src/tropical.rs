//! One-parameter degenerations of the likelihood system: the polynomial f
//! and the data are deformed by powers of t so that t = 1 recovers the
//! original system and t = 0 the facial one. Coefficients live in the
//! rational function field ℚ(t); eliminants are reproduced exactly, and
//! the Cayley-subdivision criterion for the system to be a tropical basis
//! is evaluated on the induced lifts.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Field, Int, IntPoly, Rat, RatFunc};
use crate::error::Error;
use crate::models::ScaledModel;
use crate::polytope::{
    cayley_configuration, is_triangulation, regular_subdivision, FaceDescriptor,
    PointConfiguration, Subdivision,
};
use crate::solve::{eliminant, MultiPoly, SolveOpts};

/// Strictly positive weights for the off-face columns: exponents of t on
/// the monomial coefficients (w) and on the data entries (w').
#[derive(Clone, Debug)]
pub struct TropicalWeights {
    pub monomial: BTreeMap<usize, Rat>,
    pub data: BTreeMap<usize, Rat>,
}

impl TropicalWeights {
    /// Seeded integer weights in [1, 1000] for every off-face column.
    pub fn random(
        model: &ScaledModel,
        face: &FaceDescriptor,
        rng: &mut crate::rng::Rng,
    ) -> Self {
        let off: Vec<usize> = (0..model.n_cols())
            .filter(|j| !face.members.contains(j))
            .collect();
        let mut monomial = BTreeMap::new();
        let mut data = BTreeMap::new();
        for j in off {
            monomial.insert(j, crate::arith::rat(rng.int_in(1, 1000)));
            data.insert(j, crate::arith::rat(rng.int_in(1, 1000)));
        }
        TropicalWeights { monomial, data }
    }

    fn validate(&self, n_cols: usize, face: &FaceDescriptor) -> Result<(), Error> {
        let off: Vec<usize> = (0..n_cols)
            .filter(|j| !face.members.contains(j))
            .collect();
        let keys_m: Vec<usize> = self.monomial.keys().copied().collect();
        let keys_d: Vec<usize> = self.data.keys().copied().collect();
        if keys_m != off || keys_d != off {
            return Err(Error::WeightDomainMismatch);
        }
        if self
            .monomial
            .values()
            .chain(self.data.values())
            .any(|w| !w.is_positive())
        {
            return Err(Error::Invalid("weights must be strictly positive".into()));
        }
        Ok(())
    }
}

/// The deformed likelihood system over ℚ(t).
#[derive(Clone, Debug)]
pub struct TropicalSystem {
    pub model: ScaledModel,
    pub face: FaceDescriptor,
    pub data: Vec<Rat>,
    /// deformed polynomial sum c_a t^(w_a) theta^a (theta_0 excluded)
    pub f_hat: MultiPoly<RatFunc>,
    /// deformed data
    pub u_hat: Vec<RatFunc>,
    /// the d+1 deformed likelihood equations in theta_0..theta_d
    pub equations: Vec<MultiPoly<RatFunc>>,
    /// global substitution t -> t^N applied to clear fractional weights
    pub weight_denominator: usize,
}

/// Build the deformed system: off-face monomials gain t^(w_a), off-face
/// data entries gain t^(w'_a); substituting t = 1 recovers the original
/// likelihood system and t = 0 the facial one.
pub fn tropical_system(
    model: &ScaledModel,
    u: &[Rat],
    face: &FaceDescriptor,
    weights: &TropicalWeights,
) -> Result<TropicalSystem, Error> {
    let n = model.n_cols();
    if u.len() != n {
        return Err(Error::LengthMismatch(format!(
            "expected {n} data entries, got {}",
            u.len()
        )));
    }
    weights.validate(n, face)?;
    // the facial system at t = 0 needs data mass on the face
    let face_sum: Rat = face.members.iter().map(|&j| u[j].clone()).sum();
    if num_traits::Zero::is_zero(&face_sum) {
        return Err(Error::ZeroDataSum);
    }

    // clear fractional weights by a global substitution t -> t^N
    let mut denom = Int::one();
    for w in weights.monomial.values().chain(weights.data.values()) {
        denom = denom.lcm(w.denom());
    }
    let n_sub: usize = denom.to_string().parse().map_err(|_| {
        Error::Invalid("weight denominators too large".into())
    })?;
    let exponent_of = |w: &Rat| -> i64 {
        let scaled = w * Rat::from_integer(denom.clone());
        debug_assert!(scaled.denom().is_one());
        let (sign, digits) = scaled.numer().to_u64_digits();
        let mag = digits.first().copied().unwrap_or(0) as i64;
        match sign {
            num_bigint::Sign::Minus => -mag,
            _ => mag,
        }
    };

    let d = model.dim();
    let nv = d + 1;
    let exps_of = |j: usize, with_theta0: bool| -> Vec<u32> {
        let mut e = vec![0u32; nv];
        if with_theta0 {
            e[0] = 1;
        }
        for i in 0..d {
            let a = model.matrix.get(i + 1, j);
            let (sign, digits) = a.to_u64_digits();
            assert!(
                !matches!(sign, num_bigint::Sign::Minus),
                "tropical systems expect nonnegative exponents"
            );
            e[i + 1] = digits.first().copied().unwrap_or(0) as u32;
        }
        e
    };

    // f_hat in theta_1..theta_d (no homogenizing variable)
    let mut f_hat = MultiPoly::zero(nv);
    for j in 0..n {
        let coeff = match weights.monomial.get(&j) {
            Some(w) => RatFunc::monomial(&model.scaling[j], exponent_of(w)),
            None => RatFunc::from_rat(&model.scaling[j]),
        };
        f_hat.add_term(exps_of(j, false), coeff);
    }

    let u_hat: Vec<RatFunc> = (0..n)
        .map(|j| match weights.data.get(&j) {
            Some(w) => RatFunc::monomial(&u[j], exponent_of(w)),
            None => RatFunc::from_rat(&u[j]),
        })
        .collect();
    let u_hat_plus = u_hat
        .iter()
        .fold(RatFunc::zero(), |acc, x| acc.add(x));
    if u_hat_plus.is_zero() {
        return Err(Error::ZeroDataSum);
    }

    let au_hat = |i: usize| -> RatFunc {
        (0..n).fold(RatFunc::zero(), |acc, j| {
            let a = model.matrix.get(i, j);
            if a.is_zero() {
                return acc;
            }
            acc.add(&u_hat[j].mul(&RatFunc::from_integer(a.clone())))
        })
    };

    let mut equations = Vec::with_capacity(nv);
    let mut eq0 = MultiPoly::zero(nv);
    for j in 0..n {
        let coeff = match weights.monomial.get(&j) {
            Some(w) => RatFunc::monomial(&model.scaling[j], exponent_of(w)),
            None => RatFunc::from_rat(&model.scaling[j]),
        };
        eq0.add_term(exps_of(j, true), coeff);
    }
    eq0.add_term(vec![0; nv], RatFunc::one().neg());
    equations.push(eq0);

    let inv_u_plus = u_hat_plus.inv();
    for i in 0..d {
        let mut eq = MultiPoly::zero(nv);
        for j in 0..n {
            let a = model.matrix.get(i + 1, j);
            if a.is_zero() {
                continue;
            }
            let coeff = match weights.monomial.get(&j) {
                Some(w) => RatFunc::monomial(&model.scaling[j], exponent_of(w)),
                None => RatFunc::from_rat(&model.scaling[j]),
            };
            eq.add_term(exps_of(j, true), coeff.mul(&RatFunc::from_integer(a.clone())));
        }
        eq.add_term(vec![0; nv], au_hat(i + 1).mul(&inv_u_plus).neg());
        equations.push(eq);
    }

    Ok(TropicalSystem {
        model: model.clone(),
        face: face.clone(),
        data: u.to_vec(),
        f_hat,
        u_hat,
        equations,
        weight_denominator: n_sub,
    })
}

impl TropicalSystem {
    /// Specialize every equation at a rational t-value; Err when a
    /// denominator vanishes there.
    pub fn specialize(&self, t0: &Rat) -> Result<Vec<MultiPoly<Rat>>, Error> {
        self.equations
            .iter()
            .map(|eq| {
                let mut out = MultiPoly::zero(eq.nvars());
                for (e, c) in eq.terms() {
                    let v = c.eval(t0).ok_or_else(|| {
                        Error::Invalid(format!("denominator vanishes at t = {t0}"))
                    })?;
                    out.add_term(e.clone(), v);
                }
                Ok(out)
            })
            .collect()
    }

    /// The t = 0 limit restricted to the variables that still occur: the
    /// likelihood system of the facial submodel in the surviving
    /// coordinates. Identically-zero equations are dropped.
    pub fn facial_limit(&self) -> Result<(Vec<MultiPoly<Rat>>, Vec<usize>), Error> {
        let at_zero = self.specialize(&<Rat as num_traits::Zero>::zero())?;
        let nonzero: Vec<MultiPoly<Rat>> =
            at_zero.into_iter().filter(|eq| !eq.is_zero()).collect();
        let mut used: Vec<usize> = Vec::new();
        for eq in &nonzero {
            for v in eq.support_vars() {
                if !used.contains(&v) {
                    used.push(v);
                }
            }
        }
        used.sort_unstable();
        let restricted: Vec<MultiPoly<Rat>> = nonzero
            .iter()
            .map(|eq| eq.restrict_vars(&used))
            .collect();
        Ok((restricted, used))
    }
}

/// Univariate eliminant of the deformed system in the kept variable,
/// normalized so that the θ-coefficients are coprime integer polynomials
/// in t with a positive leading coefficient.
pub fn tropical_eliminant(
    system: &TropicalSystem,
    keep: usize,
    priority: Option<&[usize]>,
    opts: &SolveOpts,
) -> Result<MultiPoly<RatFunc>, Error> {
    let nv = system.equations[0].nvars();
    let vars: Vec<usize> = (0..nv).collect();
    let saturated =
        crate::solve::saturate_torus(&system.equations, &vars, opts)?;
    let elim = eliminant(&saturated, keep, priority, opts)?;
    Ok(normalize_unit(&elim, keep))
}

/// Clear a univariate-over-ℚ(t) polynomial to primitive ℤ[t] coefficients
/// with positive leading coefficient: the canonical representative of its
/// class up to units of ℚ(t).
pub fn normalize_unit(p: &MultiPoly<RatFunc>, keep: usize) -> MultiPoly<RatFunc> {
    assert!(p.is_univariate_in(keep));
    let coeffs = p.univariate_coeffs(keep);
    let nonzero: Vec<RatFunc> = coeffs.iter().filter(|c| !c.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return p.clone();
    }
    let mut scale = RatFunc::primitive_scale(&nonzero);
    // orient by the leading theta-coefficient's leading t-coefficient
    let lead = coeffs.last().expect("nonzero").mul(&scale);
    if lead.numer().leading().is_negative() {
        scale = scale.neg();
    }
    p.map_coeffs(|c| c.mul(&scale))
}

/// The t-coefficient polynomials of a normalized eliminant, constant term
/// of theta first.
pub fn eliminant_int_coeffs(p: &MultiPoly<RatFunc>, keep: usize) -> Vec<IntPoly> {
    p.univariate_coeffs(keep)
        .iter()
        .map(|c| {
            debug_assert!(c.denom().is_one());
            c.numer().clone()
        })
        .collect()
}

/// Outcome of the Cayley subdivision criterion.
#[derive(Clone, Debug)]
pub struct CayleyCheck {
    pub is_triangulation: bool,
    pub cayley: PointConfiguration,
    pub subdivision: Subdivision,
    pub max_cell_size: usize,
}

/// Build the Cayley configuration of the Newton polytopes of the Euler
/// derivatives of f_hat, lift each point by the t-valuation of its
/// coefficient, and test whether the induced regular subdivision is a
/// triangulation (the sufficient criterion for the system to be a tropical
/// basis).
pub fn cayley_subdivision_check(
    model: &ScaledModel,
    face: &FaceDescriptor,
    weights: &TropicalWeights,
) -> Result<CayleyCheck, Error> {
    weights.validate(model.n_cols(), face)?;
    let d = model.dim();
    // Euler derivatives share the exponent support {a : a_i != 0}; the
    // lifts are the t-valuations w_a (0 on the face)
    let mut configs = Vec::with_capacity(d);
    let mut lifts: Vec<Rat> = Vec::new();
    for i in 0..d {
        let mut points = Vec::new();
        for j in 0..model.n_cols() {
            if model.matrix.get(i + 1, j).is_zero() {
                continue;
            }
            let a: Vec<Int> = model.matrix.col(j)[1..].to_vec();
            points.push(a);
            lifts.push(
                weights
                    .monomial
                    .get(&j)
                    .cloned()
                    .unwrap_or_else(<Rat as num_traits::Zero>::zero),
            );
        }
        if points.is_empty() {
            return Err(Error::Invalid(format!(
                "variable {} does not occur in the deformed polynomial",
                i + 1
            )));
        }
        configs.push(PointConfiguration::new(d, points));
    }
    let cayley = cayley_configuration(&configs, false)?;
    let subdivision = regular_subdivision(&cayley, &lifts)?;
    let tri = is_triangulation(&subdivision, &cayley);
    let max_cell_size = subdivision.cells.iter().map(|c| c.len()).max().unwrap_or(0);
    Ok(CayleyCheck {
        is_triangulation: tri,
        cayley: cayley,
        subdivision,
        max_cell_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use crate::likelihood::likelihood_system;
    use crate::models::{dilated_cube_model, ScaledModel};
    use crate::lattice::IntMatrix;
    use crate::polytope::face_lattice;
    use crate::rng::Rng;

    /// The Segre square with scalings (1, 1, 3, 7), bottom edge as the
    /// distinguished face, weights w = (1, 3) and w' = (2, 4) on the two
    /// off-face columns, and data (1, 2, 3, 4).
    pub fn segre_demo() -> (ScaledModel, FaceDescriptor, TropicalWeights, Vec<Rat>) {
        let a = IntMatrix::from_rows(&[
            vec![1, 1, 1, 1],
            vec![0, 1, 0, 1],
            vec![0, 0, 1, 1],
        ]);
        let model = ScaledModel::new(
            a,
            vec![rat(1), rat(1), rat(3), rat(7)],
            "Segre square, scalings (1,1,3,7)",
        )
        .unwrap();
        let faces = face_lattice(&model.config()).unwrap();
        let face = faces
            .iter()
            .find(|f| f.members == vec![0, 1])
            .expect("bottom edge is a face")
            .clone();
        let weights = TropicalWeights {
            monomial: [(2usize, rat(1)), (3usize, rat(3))].into_iter().collect(),
            data: [(2usize, rat(2)), (3usize, rat(4))].into_iter().collect(),
        };
        let u = vec![rat(1), rat(2), rat(3), rat(4)];
        (model, face, weights, u)
    }

    #[test]
    fn deformed_system_shape() {
        let (model, face, weights, u) = segre_demo();
        let sys = tropical_system(&model, &u, &face, &weights).unwrap();
        assert_eq!(sys.equations.len(), 3);
        // f_hat = 1 + theta1 + 3t*theta2 + 7t^3*theta1*theta2
        let c11 = sys.f_hat.coefficient(&[0, 1, 1]);
        assert_eq!(c11.numer(), &IntPoly::from_i64(&[0, 0, 0, 7]));
        let c01 = sys.f_hat.coefficient(&[0, 0, 1]);
        assert_eq!(c01.numer(), &IntPoly::from_i64(&[0, 3]));
        // u_hat = (1, 2, 3t^2, 4t^4)
        assert_eq!(sys.u_hat[2].numer(), &IntPoly::from_i64(&[0, 0, 3]));
        assert_eq!(sys.u_hat[3].numer(), &IntPoly::from_i64(&[0, 0, 0, 0, 4]));
    }

    #[test]
    fn t_equal_one_recovers_likelihood_system() {
        let (model, face, weights, u) = segre_demo();
        let sys = tropical_system(&model, &u, &face, &weights).unwrap();
        let specialized = sys.specialize(&rat(1)).unwrap();
        let direct = likelihood_system(&model, &u).unwrap();
        assert_eq!(specialized, direct.equations);
    }

    #[test]
    fn t_equal_zero_gives_facial_system() {
        let (model, face, weights, u) = segre_demo();
        let sys = tropical_system(&model, &u, &face, &weights).unwrap();
        let (limit, kept) = sys.facial_limit().unwrap();
        // the bottom edge lives in theta_0, theta_1
        assert_eq!(kept, vec![0, 1]);
        // facial model: unit segment with data (1, 2)
        let seg = dilated_cube_model(1, 1, None).unwrap();
        let expected = likelihood_system(&seg, &[rat(1), rat(2)]).unwrap();
        assert_eq!(limit, expected.equations);
        // hand-solved: theta0 = 1/3, theta1 = 2
        for eq in &limit {
            assert!(Field::is_zero(&eq.eval(&[ratio(1, 3), rat(2)])));
        }
    }

    #[test]
    fn fractional_weights_are_cleared() {
        let (model, face, _, u) = segre_demo();
        let weights = TropicalWeights {
            monomial: [(2usize, ratio(1, 2)), (3usize, ratio(3, 2))]
                .into_iter()
                .collect(),
            data: [(2usize, rat(1)), (3usize, rat(2))].into_iter().collect(),
        };
        let sys = tropical_system(&model, &u, &face, &weights).unwrap();
        assert_eq!(sys.weight_denominator, 2);
        // t -> t^2: the half weight becomes t^1
        let c01 = sys.f_hat.coefficient(&[0, 0, 1]);
        assert_eq!(c01.numer(), &IntPoly::from_i64(&[0, 3]));
        let c11 = sys.f_hat.coefficient(&[0, 1, 1]);
        assert_eq!(c11.numer(), &IntPoly::from_i64(&[0, 0, 0, 7]));
        // and the data weights double
        assert_eq!(sys.u_hat[2].numer(), &IntPoly::from_i64(&[0, 0, 3]));
    }

    #[test]
    fn weight_domain_is_validated() {
        let (model, face, mut weights, u) = segre_demo();
        weights.monomial.remove(&2);
        assert!(matches!(
            tropical_system(&model, &u, &face, &weights),
            Err(Error::WeightDomainMismatch)
        ));
    }

    #[test]
    fn segre_cayley_check_runs() {
        let (model, face, weights, _) = segre_demo();
        let check = cayley_subdivision_check(&model, &face, &weights).unwrap();
        // two Euler derivatives with two monomials each: four Cayley points
        assert_eq!(check.cayley.len(), 4);
        assert!(check.max_cell_size >= 3);
    }

    #[test]
    fn segment_vertex_face_is_trivially_triangulated() {
        let seg = dilated_cube_model(1, 1, None).unwrap();
        let faces = face_lattice(&seg.config()).unwrap();
        let vertex = faces.iter().find(|f| f.dim == 0).unwrap();
        let mut rng = Rng::new(4);
        let weights = TropicalWeights::random(&seg, vertex, &mut rng);
        let check = cayley_subdivision_check(&seg, vertex, &weights).unwrap();
        assert!(check.is_triangulation);
    }
}
