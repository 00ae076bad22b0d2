//! Toric likelihood equations and everything computed from them: ML
//! degrees, solution counts under data zeros, certificates for the unique
//! positive critical point, and per-face reports over the face poset.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::arith::{rat, rat_to_f64, Int, IntPoly, Rat};
use crate::error::Error;
use crate::models::{facial_submodel, ScaledModel};
use crate::polytope::{face_lattice, normalized_volume, FaceDescriptor};
use crate::rng::Rng;
use crate::solve::{
    count_torus_solutions,
    realroots::{
        eval_interval, isolate_real_roots, rational_poly_to_int,
        rational_univariate_representation, refine_root, sign_at_root,
    },
    saturate::saturated_basis,
    MultiPoly, SolutionCount, SolveOpts,
};

#[cfg(not(target_arch = "wasm32"))]
fn clock() -> Option<std::time::Instant> {
    Some(std::time::Instant::now())
}

#[cfg(target_arch = "wasm32")]
fn clock() -> Option<std::time::Instant> {
    None
}

fn elapsed_ms(start: &Option<std::time::Instant>) -> u128 {
    start.map(|s| s.elapsed().as_millis()).unwrap_or(0)
}

/// The d+1 critical equations of the log-likelihood on a scaled toric
/// model, as polynomials in the parameters (variable 0 is the
/// homogenizing one). When exponent vectors have negative entries the
/// equations are cleared by the minimal monomial; only torus solutions are
/// ever counted, so this changes nothing downstream.
#[derive(Clone, Debug)]
pub struct LikelihoodSystem {
    pub model: ScaledModel,
    pub data: Vec<Rat>,
    pub equations: Vec<MultiPoly<Rat>>,
    pub u_plus: Rat,
}

impl LikelihoodSystem {
    pub fn nvars(&self) -> usize {
        self.model.dim() + 1
    }
}

/// Build the likelihood system of a model for a data vector: the equations
/// are theta_0 f - 1 and theta_0 theta_i d_i f - (Au)_{i+1}/u_+ for the
/// Euler derivatives d_i = theta_i d/d theta_i.
pub fn likelihood_system(model: &ScaledModel, u: &[Rat]) -> Result<LikelihoodSystem, Error> {
    let n = model.n_cols();
    if u.len() != n {
        return Err(Error::LengthMismatch(format!(
            "expected {n} data entries, got {}",
            u.len()
        )));
    }
    let u_plus: Rat = u.iter().sum();
    if u_plus.is_zero() {
        return Err(Error::ZeroDataSum);
    }
    let d = model.dim();
    let nv = d + 1;

    // per-variable clearing shift for negative exponents
    let mut shift = vec![0i64; d];
    for j in 0..n {
        for i in 0..d {
            let e = model.matrix.get(i + 1, j);
            if e.is_negative() {
                let v = -int_to_i64(e);
                shift[i] = shift[i].max(v);
            }
        }
    }
    let shift_exps: Vec<u32> = shift.iter().map(|&s| s as u32).collect();

    let exps_of = |j: usize, with_theta0: bool| -> Vec<u32> {
        let mut e = vec![0u32; nv];
        if with_theta0 {
            e[0] = 1;
        }
        for i in 0..d {
            let a = int_to_i64(model.matrix.get(i + 1, j));
            e[i + 1] = (a + shift[i]) as u32;
        }
        e
    };
    let shift_mono = |_: ()| -> Vec<u32> {
        let mut e = vec![0u32; nv];
        for i in 0..d {
            e[i + 1] = shift_exps[i];
        }
        e
    };

    let au: Vec<Rat> = (0..nv)
        .map(|i| {
            (0..n)
                .map(|j| Rat::from_integer(model.matrix.get(i, j).clone()) * &u[j])
                .sum()
        })
        .collect();

    let mut equations = Vec::with_capacity(nv);
    // theta_0 * f - 1, cleared
    let mut eq0 = MultiPoly::zero(nv);
    for j in 0..n {
        eq0.add_term(exps_of(j, true), model.scaling[j].clone());
    }
    eq0.add_term(shift_mono(()), -Rat::one());
    equations.push(eq0);

    for i in 0..d {
        let mut eq = MultiPoly::zero(nv);
        for j in 0..n {
            let a = Rat::from_integer(model.matrix.get(i + 1, j).clone());
            if a.is_zero() {
                continue;
            }
            eq.add_term(exps_of(j, true), &model.scaling[j] * &a);
        }
        eq.add_term(shift_mono(()), -(&au[i + 1] / &u_plus));
        equations.push(eq);
    }

    Ok(LikelihoodSystem {
        model: model.clone(),
        data: u.to_vec(),
        equations,
        u_plus,
    })
}

fn int_to_i64(x: &Int) -> i64 {
    let (sign, digits) = x.to_u64_digits();
    let mag = digits.first().copied().unwrap_or(0) as i64;
    match sign {
        num_bigint::Sign::Minus => -mag,
        _ => mag,
    }
}

/// ML degree: the count of distinct torus critical points for seeded
/// generic data, confirmed by a second independent draw. Zero-dimensional
/// models (a single column) have ML degree one by definition.
pub fn ml_degree(model: &ScaledModel, seed: u64) -> Result<usize, Error> {
    ml_degree_opt(model, seed, &SolveOpts::default())
}

pub fn ml_degree_opt(model: &ScaledModel, seed: u64, opts: &SolveOpts) -> Result<usize, Error> {
    if model.n_cols() == 1 || model.dim() == 0 {
        return Ok(1);
    }
    let draw = |k: u64, hi: i64| -> Result<Option<usize>, Error> {
        let mut data_rng = Rng::derive(seed, &format!("ml-degree data {k}"));
        let u: Vec<Rat> = (0..model.n_cols())
            .map(|_| rat(data_rng.int_in(1, hi)))
            .collect();
        let sys = likelihood_system(model, &u)?;
        let vars: Vec<usize> = (0..sys.nvars()).collect();
        let mut solver_rng = Rng::derive(seed, &format!("ml-degree solver {k}"));
        let count = count_torus_solutions(&sys.equations, &vars, &mut solver_rng, opts)?;
        Ok(count.distinct().filter(|_| {
            matches!(count, SolutionCount::Finite { .. })
        }))
    };
    let c1 = draw(0, 10_000)?;
    let c2 = draw(1, 10_000)?;
    if c1.is_some() && c1 == c2 {
        return Ok(c1.expect("checked"));
    }
    let c3 = draw(2, 100_000_000)?;
    if c3.is_some() && (c3 == c1 || c3 == c2) {
        return Ok(c3.expect("checked"));
    }
    Err(Error::GenericityFailure(3))
}

/// Count the solutions of the likelihood equations for explicit data
/// (zeros allowed, the total must be nonzero).
///
/// The log-likelihood only involves the coordinates on the data support,
/// so a critical point may legitimately have p_i = 0 where u_i = 0. The
/// system is therefore saturated by exactly the parameters forced nonzero
/// by the support: variable k must be nonzero when it occurs in the
/// monomial of some supported column (for fully supported data this is
/// every variable, recovering the torus count of the ML degree).
pub fn count_solutions(
    model: &ScaledModel,
    u: &[Rat],
    seed: u64,
    opts: &SolveOpts,
) -> Result<SolutionCount, Error> {
    let sys = likelihood_system(model, u)?;
    let d = model.dim();
    let mut forced = vec![false; d + 1];
    forced[0] = true;
    for j in 0..model.n_cols() {
        if u[j].is_zero() {
            continue;
        }
        for i in 0..d {
            if !model.matrix.get(i + 1, j).is_zero() {
                forced[i + 1] = true;
            }
        }
    }
    // clearing monomials of Laurent exponents also need their variables
    // saturated away
    for j in 0..model.n_cols() {
        for i in 0..d {
            if model.matrix.get(i + 1, j).is_negative() {
                forced[i + 1] = true;
            }
        }
    }
    let vars: Vec<usize> = (0..=d).filter(|&v| forced[v]).collect();
    let mut rng = Rng::derive(seed, "count-solutions");
    count_torus_solutions(&sys.equations, &vars, &mut rng, opts)
}

/// The log-likelihood sum u_i log p_i - u_+ log p_+, as floating point.
pub fn log_likelihood(p: &[Rat], u: &[Rat]) -> Result<f64, Error> {
    if p.len() != u.len() {
        return Err(Error::LengthMismatch(
            "probability and data vectors differ in length".into(),
        ));
    }
    if p.iter().any(|x| !x.is_positive()) {
        return Err(Error::NonpositiveProbability);
    }
    let u_plus: Rat = u.iter().sum();
    if u_plus.is_zero() {
        return Err(Error::ZeroDataSum);
    }
    let p_plus: Rat = p.iter().sum();
    let mut acc = 0.0;
    for (ui, pi) in u.iter().zip(p) {
        acc += rat_to_f64(ui) * rat_to_f64(pi).ln();
    }
    acc -= rat_to_f64(&u_plus) * rat_to_f64(&p_plus).ln();
    Ok(acc)
}

/// The maximum likelihood estimate of a Birch certificate: exact when the
/// critical parameters are rational, otherwise enclosed in intervals.
#[derive(Clone, Debug)]
pub enum MleEstimate {
    Exact(Vec<Rat>),
    Boxed(Vec<(Rat, Rat)>),
}

/// Certificate that positive data admits exactly one positive critical
/// point, that it matches the sufficient statistics, and that no other
/// real positive critical point has higher likelihood.
#[derive(Clone, Debug)]
pub struct BirchCertificate {
    pub real_count: usize,
    pub positive_count: usize,
    pub mle: MleEstimate,
    pub sufficient_stats_ok: bool,
    pub log_likelihood: f64,
    /// log-likelihoods of any other positive critical points (empty when
    /// the certificate holds)
    pub other_positive_log_likelihoods: Vec<f64>,
}

/// Verify Birch's theorem for positive data: exactly one real critical
/// point maps to a strictly positive distribution, and its image satisfies
/// A p = A u / u_+ (exactly for rational solutions, to isolating-interval
/// precision otherwise).
pub fn verify_birch(
    model: &ScaledModel,
    u: &[Rat],
    seed: u64,
    opts: &SolveOpts,
) -> Result<BirchCertificate, Error> {
    if u.iter().any(|x| !x.is_positive()) {
        return Err(Error::Invalid("data must be strictly positive".into()));
    }
    let sys = likelihood_system(model, u)?;
    let nv = sys.nvars();
    let vars: Vec<usize> = (0..nv).collect();
    let gb = saturated_basis(&sys.equations, &vars, opts)?;
    if gb.contains_one() {
        return Err(Error::Invalid("no critical points".into()));
    }
    let mut rng = Rng::derive(seed, "birch");
    let rur = rational_univariate_representation(&gb, &mut rng, 5, opts)?;
    let roots = isolate_real_roots(&rur.minpoly);
    let real_count = roots.len();

    let d = model.dim();
    let n = model.n_cols();
    // sign of p_i at a root from the parameter signs
    let coord_polys: Vec<IntPoly> = rur
        .coords
        .iter()
        .map(|h| rational_poly_to_int(h))
        .collect();
    let p_signs = |root: &(Rat, Rat)| -> Option<Vec<i32>> {
        let theta_signs: Vec<i32> = coord_polys
            .iter()
            .map(|h| sign_at_root(&rur.minpoly, root, h))
            .collect();
        if theta_signs.iter().any(|&s| s == 0) {
            return None; // torus-saturated: cannot happen
        }
        Some(
            (0..n)
                .map(|j| {
                    let mut s: i32 = if model.scaling[j].is_negative() { -1 } else { 1 };
                    if theta_signs[0] < 0 {
                        s = -s;
                    }
                    for i in 0..d {
                        let a = int_to_i64(model.matrix.get(i + 1, j));
                        if a.rem_euclid(2) == 1 && theta_signs[i + 1] < 0 {
                            s = -s;
                        }
                    }
                    s
                })
                .collect(),
        )
    };

    let mut positive_roots = Vec::new();
    for root in &roots {
        if let Some(signs) = p_signs(root) {
            if signs.iter().all(|&s| s > 0) {
                positive_roots.push(root.clone());
            }
        }
    }
    let positive_count = positive_roots.len();
    if positive_count == 0 {
        return Err(Error::Invalid(
            "no positive critical point found".into(),
        ));
    }

    let au: Vec<Rat> = (0..nv)
        .map(|i| {
            (0..n)
                .map(|j| Rat::from_integer(model.matrix.get(i, j).clone()) * &u[j])
                .sum::<Rat>()
                / &sys.u_plus
        })
        .collect();

    // evaluate p at the first (expected unique) positive root
    let root = &positive_roots[0];
    let exact_root = if root.0 == root.1 {
        Some(root.0.clone())
    } else if rur.minpoly.degree() == Some(1) {
        let c0 = rur.minpoly.coeff(0);
        let c1 = rur.minpoly.coeff(1);
        Some(Rat::new(-c0, c1))
    } else {
        None
    };

    let (mle, stats_ok, loglik) = match exact_root {
        Some(r) => {
            let theta: Vec<Rat> = rur
                .coords
                .iter()
                .map(|h| eval_rat_poly(h, &r))
                .collect();
            let p: Vec<Rat> = (0..n)
                .map(|j| {
                    let mut v = model.scaling[j].clone() * &theta[0];
                    for i in 0..d {
                        let a = int_to_i64(model.matrix.get(i + 1, j));
                        v = v * rat_pow(&theta[i + 1], a);
                    }
                    v
                })
                .collect();
            let ok = (0..nv).all(|i| {
                let api: Rat = (0..n)
                    .map(|j| Rat::from_integer(model.matrix.get(i, j).clone()) * &p[j])
                    .sum();
                api == au[i]
            });
            let ll = log_likelihood(&p, u)?;
            (MleEstimate::Exact(p), ok, ll)
        }
        None => {
            // refine until every coordinate interval is sign-definite and
            // narrow, then push intervals through the monomials
            let width = Rat::new(Int::one(), Int::from(10u64).pow(30));
            let tight = refine_root(&rur.minpoly, root.clone(), &width);
            let theta_boxes: Vec<(Rat, Rat)> = rur
                .coords
                .iter()
                .map(|h| eval_interval(h, &tight.0, &tight.1))
                .collect();
            if theta_boxes.iter().any(|(lo, hi)| lo.is_zero() || hi.is_zero() || (lo.is_negative() != hi.is_negative())) {
                return Err(Error::GenericityFailure(1));
            }
            let p_boxes: Vec<(Rat, Rat)> = (0..n)
                .map(|j| {
                    let mut acc = interval_const(&model.scaling[j]);
                    acc = interval_mul(&acc, &theta_boxes[0]);
                    for i in 0..d {
                        let a = int_to_i64(model.matrix.get(i + 1, j));
                        acc = interval_mul(&acc, &interval_pow(&theta_boxes[i + 1], a));
                    }
                    acc
                })
                .collect();
            let ok = (0..nv).all(|i| {
                let mut lo = Rat::zero();
                let mut hi = Rat::zero();
                for j in 0..n {
                    let a = Rat::from_integer(model.matrix.get(i, j).clone());
                    let (l, h) = scale_interval(&p_boxes[j], &a);
                    lo += l;
                    hi += h;
                }
                lo <= au[i] && au[i] <= hi
            });
            let mid: Vec<Rat> = p_boxes
                .iter()
                .map(|(lo, hi)| (lo + hi) / rat(2))
                .collect();
            let ll = log_likelihood(&mid, u)?;
            (MleEstimate::Boxed(p_boxes), ok, ll)
        }
    };

    // likelihood comparison against any additional positive points
    let mut others = Vec::new();
    for extra in positive_roots.iter().skip(1) {
        let width = Rat::new(Int::one(), Int::from(10u64).pow(12));
        let tight = refine_root(&rur.minpoly, extra.clone(), &width);
        let theta_mid: Vec<Rat> = rur
            .coords
            .iter()
            .map(|h| {
                let (lo, hi) = eval_interval(h, &tight.0, &tight.1);
                (lo + hi) / rat(2)
            })
            .collect();
        let p_mid: Vec<Rat> = (0..n)
            .map(|j| {
                let mut v = model.scaling[j].clone() * &theta_mid[0];
                for i in 0..d {
                    let a = int_to_i64(model.matrix.get(i + 1, j));
                    v = v * rat_pow(&theta_mid[i + 1], a);
                }
                v
            })
            .collect();
        if let Ok(ll) = log_likelihood(&p_mid, u) {
            others.push(ll);
        }
    }

    Ok(BirchCertificate {
        real_count,
        positive_count,
        mle,
        sufficient_stats_ok: stats_ok,
        log_likelihood: loglik,
        other_positive_log_likelihoods: others,
    })
}

fn eval_rat_poly(coeffs: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn rat_pow(x: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut acc = Rat::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

fn interval_const(c: &Rat) -> (Rat, Rat) {
    (c.clone(), c.clone())
}

fn scale_interval(x: &(Rat, Rat), c: &Rat) -> (Rat, Rat) {
    if c.is_negative() {
        (&x.1 * c, &x.0 * c)
    } else {
        (&x.0 * c, &x.1 * c)
    }
}

fn interval_mul(a: &(Rat, Rat), b: &(Rat, Rat)) -> (Rat, Rat) {
    let cands = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let mut lo = cands[0].clone();
    let mut hi = cands[0].clone();
    for c in &cands[1..] {
        if c < &lo {
            lo = c.clone();
        }
        if c > &hi {
            hi = c.clone();
        }
    }
    (lo, hi)
}

/// Power of a sign-definite interval; negative exponents invert.
fn interval_pow(x: &(Rat, Rat), e: i64) -> (Rat, Rat) {
    if e == 0 {
        return (Rat::one(), Rat::one());
    }
    let base = if e < 0 {
        // sign-definite: safe to invert endpoint-wise
        (x.1.recip(), x.0.recip())
    } else {
        x.clone()
    };
    let mut acc = (Rat::one(), Rat::one());
    for _ in 0..e.unsigned_abs() {
        acc = interval_mul(&acc, &base);
    }
    acc
}

/// One face row of an ML report.
#[derive(Clone, Debug)]
pub struct ReportRow {
    pub label: String,
    pub dim: usize,
    /// original column labels on the face
    pub members: Vec<usize>,
    pub ml_degree: Result<usize, String>,
    pub degree: Result<Int, String>,
    pub millis: u128,
}

/// Per-face ML degrees and degrees, plus any monotonicity violations
/// (always empty unless something is deeply wrong).
#[derive(Clone, Debug)]
pub struct MLReport {
    pub rows: Vec<ReportRow>,
    pub top_ml_degree: Option<usize>,
    pub seed: u64,
    pub millis: u128,
    pub monotonicity_violations: Vec<String>,
}

fn label_of(members: &[usize]) -> String {
    let inner: Vec<String> = members.iter().map(|m| format!("a_{}", m + 1)).collect();
    format!("conv({})", inner.join(", "))
}

/// Restrict a model to a set of column labels and re-express it in
/// full-rank, index-one form.
fn submodel_on_columns(model: &ScaledModel, labels: &[usize]) -> Result<ScaledModel, Error> {
    let sub_rows: Vec<Vec<Int>> = (0..model.matrix.nrows())
        .map(|i| {
            labels
                .iter()
                .map(|&j| model.matrix.get(i, j).clone())
                .collect()
        })
        .collect();
    let raw = crate::lattice::IntMatrix::from_int_rows(sub_rows);
    let matrix = crate::models::reduce_to_design_matrix(&raw)?;
    let scaling: Vec<Rat> = labels.iter().map(|&j| model.scaling[j].clone()).collect();
    ScaledModel::new(matrix, scaling, format!("{} restricted", model.provenance))
}

fn face_row(
    model: &ScaledModel,
    members: &[usize],
    dim: usize,
    seed: u64,
    opts: &SolveOpts,
) -> ReportRow {
    let start = clock();
    let label = label_of(members);
    let (mldeg, degree) = match submodel_on_columns(model, members) {
        Ok(sub) => {
            let face_seed_label = format!("face {members:?}");
            let mut _rng = Rng::derive(seed, &face_seed_label);
            let mldeg = ml_degree_opt(&sub, seed ^ fnv(&face_seed_label), opts)
                .map_err(|e| e.to_string());
            let degree = if sub.dim() == 0 {
                Ok(Int::one())
            } else {
                normalized_volume(&sub.config()).map_err(|e| e.to_string())
            };
            (mldeg, degree)
        }
        Err(e) => (Err(e.to_string()), Err(e.to_string())),
    };
    ReportRow {
        label,
        dim,
        members: members.to_vec(),
        ml_degree: mldeg,
        degree,
        millis: elapsed_ms(&start),
    }
}

fn fnv(label: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in label.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn check_monotonicity(rows: &[ReportRow]) -> Vec<String> {
    let mut violations = Vec::new();
    for a in rows {
        for b in rows {
            if a.members.len() < b.members.len()
                && a.members.iter().all(|m| b.members.contains(m))
            {
                if let (Ok(ma), Ok(mb)) = (&a.ml_degree, &b.ml_degree) {
                    if ma > mb {
                        violations.push(format!(
                            "{} has ML degree {} > {} of {}",
                            a.label, ma, mb, b.label
                        ));
                    }
                }
            }
        }
    }
    violations
}

/// ML degrees of the model and of every face down to the given
/// codimension. Per-face failures become row-level errors, not aborts.
pub fn monotonicity_report(
    model: &ScaledModel,
    depth: usize,
    seed: u64,
    opts: &SolveOpts,
) -> Result<MLReport, Error> {
    let start = clock();
    let config = model.config();
    let top_dim = model.dim();
    if depth > top_dim {
        return Err(Error::Invalid("depth exceeds the dimension".into()));
    }
    let faces = face_lattice(&config)?;
    let mut rows = Vec::new();
    let mut selected: Vec<&FaceDescriptor> = faces
        .iter()
        .filter(|f| f.dim + depth >= top_dim)
        .collect();
    selected.sort_by(|a, b| (b.dim, &a.members).cmp(&(a.dim, &b.members)));
    for face in selected {
        let members: Vec<usize> = face.members.iter().map(|&i| config.labels[i]).collect();
        rows.push(face_row(model, &members, face.dim, seed, opts));
    }
    let top_ml_degree = rows
        .iter()
        .find(|r| r.dim == top_dim)
        .and_then(|r| r.ml_degree.clone().ok());
    let monotonicity_violations = check_monotonicity(&rows);
    Ok(MLReport {
        rows,
        top_ml_degree,
        seed,
        millis: elapsed_ms(&start),
        monotonicity_violations,
    })
}

/// ML degrees and degrees along a flag of faces given by 0-based column
/// label sets, outermost first. Each set must be a face of the convex hull
/// of the previous one.
pub fn flag_report(
    model: &ScaledModel,
    flag: &[Vec<usize>],
    seed: u64,
    opts: &SolveOpts,
) -> Result<MLReport, Error> {
    let start = clock();
    if flag.is_empty() {
        return Err(Error::NotAFlag("empty flag".into()));
    }
    let config = model.config();
    let all: BTreeSet<usize> = config.labels.iter().copied().collect();

    // validate the chain: every step is a face of the previous hull
    let mut prev: Vec<usize> = all.iter().copied().collect();
    for (step, set) in flag.iter().enumerate() {
        let sorted: Vec<usize> = {
            let s: BTreeSet<usize> = set.iter().copied().collect();
            s.iter().copied().collect()
        };
        if sorted.len() != set.len() {
            return Err(Error::NotAFlag(format!("duplicate column in step {step}")));
        }
        if !sorted.iter().all(|m| prev.contains(m)) {
            return Err(Error::NotAFlag(format!(
                "step {step} is not contained in the previous face"
            )));
        }
        if sorted != prev {
            // positions of prev's members in the configuration
            let positions: Vec<usize> = (0..config.len())
                .filter(|&i| prev.contains(&config.labels[i]))
                .collect();
            let sub = config.sub_configuration(&positions);
            let sub_faces = face_lattice(&sub)?;
            let is_face = sub_faces.iter().any(|f| {
                let labels: Vec<usize> = f.members.iter().map(|&i| sub.labels[i]).collect();
                labels == sorted
            });
            if !is_face {
                return Err(Error::NotAFlag(format!(
                    "step {step} is not a face of the previous polytope"
                )));
            }
        }
        prev = sorted;
    }

    let mut rows = Vec::new();
    for set in flag {
        let sorted: Vec<usize> = {
            let s: BTreeSet<usize> = set.iter().copied().collect();
            s.iter().copied().collect()
        };
        let positions: Vec<usize> = (0..config.len())
            .filter(|&i| sorted.contains(&config.labels[i]))
            .collect();
        let dim = config.sub_configuration(&positions).affine_dim();
        rows.push(face_row(model, &sorted, dim, seed, opts));
    }
    let top_ml_degree = rows.first().and_then(|r| r.ml_degree.clone().ok());
    let monotonicity_violations = check_monotonicity(&rows);
    Ok(MLReport {
        rows,
        top_ml_degree,
        seed,
        millis: elapsed_ms(&start),
        monotonicity_violations,
    })
}

/// Facets of the model and their facial submodels' ML degrees.
pub fn facet_report(model: &ScaledModel, seed: u64, opts: &SolveOpts) -> Result<MLReport, Error> {
    monotonicity_report(model, 1, seed, opts)
}

/// Convenience: the facial submodel for a face of the model's polytope.
pub fn face_submodel(model: &ScaledModel, face: &FaceDescriptor) -> Result<ScaledModel, Error> {
    facial_submodel(model, face)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::models::{dilated_cube_model, independence_model, scaling_preset};

    fn ones(n: usize) -> Vec<Rat> {
        vec![Rat::one(); n]
    }

    #[test]
    fn unit_segment_system_and_solution() {
        let seg = dilated_cube_model(1, 1, None).unwrap();
        let sys = likelihood_system(&seg, &ones(2)).unwrap();
        assert_eq!(sys.equations.len(), 2);
        // theta0*(1 + theta1) - 1 and theta0*theta1 - 1/2 vanish at (1/2, 1)
        let point = vec![ratio(1, 2), rat(1)];
        for eq in &sys.equations {
            assert!(eq.eval(&point).is_zero());
        }
        assert_eq!(ml_degree(&seg, 0).unwrap(), 1);
    }

    #[test]
    fn independence_system_shape() {
        let m = independence_model(3, 3).unwrap();
        let mut rng = Rng::new(5);
        let u: Vec<Rat> = (0..9).map(|_| rat(rng.int_in(1, 100))).collect();
        let sys = likelihood_system(&m, &u).unwrap();
        // the displayed matrix is 5x9, so d = 4: five equations in five
        // unknowns including the homogenizing one
        assert_eq!(sys.equations.len(), 5);
        assert_eq!(sys.nvars(), 5);
    }

    #[test]
    fn zero_data_sum_is_rejected() {
        let seg = dilated_cube_model(1, 1, None).unwrap();
        assert!(matches!(
            likelihood_system(&seg, &[rat(1), rat(-1)]),
            Err(Error::ZeroDataSum)
        ));
    }

    #[test]
    fn independence_c1_has_ml_degree_one() {
        let m = independence_model(3, 3).unwrap();
        assert_eq!(ml_degree(&m, 0).unwrap(), 1);
    }

    #[test]
    fn independence_c4_has_ml_degree_four() {
        let mut m = independence_model(3, 3).unwrap();
        m.scaling = scaling_preset("c4", 9).unwrap();
        assert_eq!(ml_degree(&m, 0).unwrap(), 4);
    }

    #[test]
    fn log_likelihood_values() {
        let two = vec![ratio(1, 2), ratio(1, 2)];
        let ll = log_likelihood(&two, &[rat(1), rat(1)]).unwrap();
        assert!((ll + 2.0 * 2.0_f64.ln()).abs() < 1e-12);
        let ll = log_likelihood(&[rat(1), rat(1)], &[rat(2), rat(0)]).unwrap();
        assert!((ll + 2.0 * 2.0_f64.ln()).abs() < 1e-12);
        let nine = vec![ratio(1, 9); 9];
        let ll = log_likelihood(&nine, &ones(9)).unwrap();
        assert!((ll + 9.0 * 9.0_f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn birch_on_the_unit_segment() {
        let seg = dilated_cube_model(1, 1, None).unwrap();
        let cert = verify_birch(&seg, &ones(2), 0, &SolveOpts::default()).unwrap();
        assert_eq!(cert.positive_count, 1);
        assert!(cert.sufficient_stats_ok);
        match &cert.mle {
            MleEstimate::Exact(p) => {
                assert_eq!(p, &vec![ratio(1, 2), ratio(1, 2)]);
            }
            MleEstimate::Boxed(_) => panic!("rational MLE expected"),
        }
    }

    #[test]
    fn birch_uniform_for_uniform_data() {
        let m = independence_model(3, 3).unwrap();
        let cert = verify_birch(&m, &ones(9), 0, &SolveOpts::default()).unwrap();
        assert_eq!(cert.positive_count, 1);
        assert!(cert.sufficient_stats_ok);
        match &cert.mle {
            MleEstimate::Exact(p) => assert_eq!(p, &vec![ratio(1, 9); 9]),
            MleEstimate::Boxed(_) => panic!("rational MLE expected"),
        }
    }

    #[test]
    fn counting_with_data_zeros() {
        let m = independence_model(3, 3).unwrap();
        // all-ones scaling with data supported on one row of the table:
        // no critical points off the hyperplane arrangement
        let u = vec![
            rat(3),
            rat(5),
            rat(7),
            rat(2),
            rat(0),
            rat(0),
            rat(0),
            rat(0),
            rat(0),
        ];
        let c = count_solutions(&m, &u, 0, &SolveOpts::default()).unwrap();
        assert_eq!(c.display_count(), "0");
    }

    #[test]
    fn trivial_report_depth_zero() {
        let seg = dilated_cube_model(1, 1, None).unwrap();
        let report = monotonicity_report(&seg, 0, 0, &SolveOpts::default()).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.rows[0].ml_degree.clone().unwrap(), 1);
        assert_eq!(report.top_ml_degree, Some(1));
        assert!(report.monotonicity_violations.is_empty());
    }
}
