use mldeg_core::arith::{rat, IntPoly, Rat};
use mldeg_core::lattice::IntMatrix;
use mldeg_core::models::ScaledModel;
use mldeg_core::polytope::face_lattice;
use mldeg_core::rng::Rng;
use mldeg_core::solve::{count_torus_solutions, SolutionCount, SolveOpts};
use mldeg_core::tropical::{
    eliminant_int_coeffs, tropical_eliminant, tropical_system, TropicalWeights,
};

fn segre_demo() -> (
    ScaledModel,
    mldeg_core::polytope::FaceDescriptor,
    TropicalWeights,
    Vec<Rat>,
) {
    let a = IntMatrix::from_rows(&[vec![1, 1, 1, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1]]);
    let model = ScaledModel::new(
        a,
        vec![rat(1), rat(1), rat(3), rat(7)],
        "Segre square, scalings (1,1,3,7)",
    )
    .unwrap();
    let faces = face_lattice(&model.config()).unwrap();
    let face = faces.iter().find(|f| f.members == vec![0, 1]).unwrap().clone();
    let weights = TropicalWeights {
        monomial: [(2usize, rat(1)), (3usize, rat(3))].into_iter().collect(),
        data: [(2usize, rat(2)), (3usize, rat(4))].into_iter().collect(),
    };
    let u = vec![rat(1), rat(2), rat(3), rat(4)];
    (model, face, weights, u)
}

#[test]
fn quadratic_eliminant_in_theta_one() {
    let (model, face, weights, u) = segre_demo();
    let sys = tropical_system(&model, &u, &face, &weights).unwrap();
    // lex theta0 > theta2 > theta1, keep theta1
    let elim = tropical_eliminant(&sys, 1, Some(&[0, 2, 1]), &SolveOpts::default()).unwrap();
    let coeffs = eliminant_int_coeffs(&elim, 1);
    println!("eliminant t-coefficients, constant theta term first:");
    for c in &coeffs {
        println!("  {c}");
    }
    // expected (up to a unit): (21t^4 + 7t^2) x^2 + (9t^4 - 14t^2 + 3) x - 12t^4 - 6
    let expected = [
        IntPoly::from_i64(&[-6, 0, 0, 0, -12]),
        IntPoly::from_i64(&[3, 0, -14, 0, 9]),
        IntPoly::from_i64(&[0, 0, 7, 0, 21]),
    ];
    assert_eq!(coeffs.len(), 3);
    let matches_directly = coeffs.iter().zip(&expected).all(|(a, b)| a == b);
    let matches_negated = coeffs
        .iter()
        .zip(&expected)
        .all(|(a, b)| a == &b.neg());
    assert!(matches_directly || matches_negated);
}

#[test]
fn two_torus_solutions_over_qt() {
    let (model, face, weights, u) = segre_demo();
    let sys = tropical_system(&model, &u, &face, &weights).unwrap();
    let mut rng = Rng::new(0);
    let count =
        count_torus_solutions(&sys.equations, &[0, 1, 2], &mut rng, &SolveOpts::default())
            .unwrap();
    assert_eq!(
        count,
        SolutionCount::Finite {
            distinct: 2,
            quotient_dim: 2
        }
    );
}
