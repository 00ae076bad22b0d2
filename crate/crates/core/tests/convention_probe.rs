use mldeg_core::arith::{rat, Rat};
use mldeg_core::likelihood::count_solutions;
use mldeg_core::models::independence_model;
use mldeg_core::rng::Rng;
use mldeg_core::solve::{SolutionCount, SolveOpts};

const TABLE: &[(&str, [&str; 6])] = &[
    ("uuuu00000", ["0", "0", "0", "1", "2", "3"]),
    ("uuu000000", ["0", "i", "i", "1", "2", "3"]),
    ("uu0u00000", ["0", "0", "0", "1", "1", "2"]),
    ("u0uu00000", ["0", "0", "0", "1", "2", "3"]),
    ("0uuu00000", ["0", "0", "0", "1", "2", "3"]),
    ("uu0000000", ["0", "i", "i", "0", "1", "2"]),
    ("u0u000000", ["0", "i", "i", "1", "2", "3"]),
    ("0uu000000", ["0", "i", "i", "1", "2", "3"]),
    ("u00u00000", ["0", "0", "0", "1", "2", "2"]),
    ("0u0u00000", ["0", "0", "0", "0", "1", "2"]),
    ("00uu00000", ["0", "0", "0", "1", "2", "3"]),
    ("u00000000", ["0", "i", "i", "0", "1", "2"]),
    ("0u0000000", ["0", "i", "i", "i", "1", "2"]),
    ("00u000000", ["0", "i", "i", "1", "2", "3"]),
    ("000u00000", ["0", "0", "0", "i", "1", "2"]),
    ("000uuuu00", ["1", "2", "3", "4", "5", "6"]),
    ("000uuu000", ["0", "0", "0", "1", "2", "3"]),
    ("000uu0u00", ["0", "1", "1", "2", "2", "3"]),
    ("000u0uu00", ["1", "2", "3", "4", "5", "6"]),
    ("0000uuu00", ["1", "2", "3", "4", "5", "6"]),
    ("000uu0000", ["0", "0", "0", "1", "1", "2"]),
    ("000u0u000", ["0", "0", "0", "i", "2", "3"]),
    ("0000uu000", ["0", "0", "0", "1", "2", "3"]),
    ("000u00u00", ["0", "1", "1", "2", "2", "3"]),
    ("0000u0u00", ["0", "1", "1", "2", "2", "3"]),
    ("00000uu00", ["1", "2", "3", "4", "5", "6"]),
    ("000u00000", ["0", "0", "0", "i", "1", "2"]),
    ("0000u0000", ["0", "0", "0", "1", "1", "2"]),
    ("00000u000", ["0", "0", "0", "i", "2", "3"]),
    ("000000u00", ["0", "1", "1", "2", "2", "3"]),
];

const GRIDS: [[i64; 9]; 6] = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 2, 1, 1, 2],
    [1, 1, 1, 1, 2, 3, 1, 2, 3],
    [1, 1, 1, 1, 2, 3, 1, 2, 1],
    [1, 1, 1, 1, 2, 3, 1, 3, 5],
    [1, 1, 1, 1, 2, 3, 2, 3, 1],
];

fn transpose9(g: &[i64; 9]) -> [i64; 9] {
    let mut out = [0i64; 9];
    for k in 0..9 {
        out[k] = g[(k % 3) * 3 + k / 3];
    }
    out
}

#[test]
fn probe_conventions() {
    let base = independence_model(3, 3).unwrap();
    // convention: (transpose grid?, transpose pattern positions?)
    for (tg, tp) in [(false, false), (true, false), (false, true), (true, true)] {
        let mut mismatches = 0;
        let mut first = String::new();
        for (pattern, expected) in TABLE {
            let sym: Vec<bool> = pattern.chars().map(|c| c == 'u').collect();
            // map pattern position -> model column
            let mask: Vec<bool> = (0..9)
                .map(|col| {
                    let pos = if tp { (col % 3) * 3 + col / 3 } else { col };
                    sym[pos]
                })
                .collect();
            for (k, grid) in GRIDS.iter().enumerate() {
                let g = if tg { transpose9(grid) } else { *grid };
                let mut model = base.clone();
                model.scaling = g.iter().map(|&x| rat(x)).collect::<Vec<Rat>>();
                let mut rng = Rng::derive(7, &format!("probe {pattern} {k}"));
                let u: Vec<Rat> = mask
                    .iter()
                    .map(|&s| if s { rat(rng.int_in(1, 10_000)) } else { rat(0) })
                    .collect();
                let count = count_solutions(&model, &u, 7, &SolveOpts::default()).unwrap();
                let shown = match count {
                    SolutionCount::Infinite => "i".to_string(),
                    other => other.display_count(),
                };
                if shown != expected[k] {
                    mismatches += 1;
                    if first.is_empty() {
                        first = format!("{pattern} c{} got {shown} want {}", k + 1, expected[k]);
                    }
                }
            }
        }
        println!("grid_transposed={tg} pattern_transposed={tp}: {mismatches} mismatches; first: {first}");
    }
}
