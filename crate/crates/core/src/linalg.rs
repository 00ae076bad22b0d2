//! Dense exact linear algebra over ℚ, used for rank computations, nullspaces
//! and affine-span bookkeeping throughout the polytope and solver code.

use num_traits::Zero;

use crate::arith::Rat;

/// Row echelon reduction in place; returns pivot column indices.
fn echelonize(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let mut pivots = Vec::new();
    if rows.is_empty() {
        return pivots;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..cols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    echelonize(&mut m).len()
}

/// Basis of the right nullspace { x : M x = 0 }.
pub fn nullspace(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if rows.is_empty() {
        return vec![];
    }
    let cols = rows[0].len();
    let mut m = rows.to_vec();
    let pivots = echelonize(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Rat::zero(); cols];
        v[f] = Rat::from_integer(1.into());
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[r][f].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve sum_j x_j * cols[j] = b exactly; None if inconsistent.
pub fn solve_columns(cols: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = cols.len();
    let m = b.len();
    // augmented rows of the transposed system
    let mut rows: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = echelonize(&mut rows);
    if pivots.contains(&n) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = rows[r][n].clone();
    }
    Some(x)
}

/// Incremental echelon form that reports, for a dependent insertion, the
/// coefficients expressing the new vector over the previously inserted ones.
pub struct SpanSolver {
    dim: usize,
    inserted: usize,
    /// (reduced vector, combination over inserted originals, pivot column)
    rows: Vec<(Vec<Rat>, Vec<Rat>, usize)>,
}

impl SpanSolver {
    pub fn new(dim: usize) -> Self {
        SpanSolver {
            dim,
            inserted: 0,
            rows: Vec::new(),
        }
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Insert a vector. Returns None if it was independent (and is now part
    /// of the span), or Some(coeffs) with `v = sum coeffs[k] * original_k`.
    pub fn insert(&mut self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.dim);
        let mut vec = v.to_vec();
        let mut combo = vec![Rat::zero(); self.inserted + 1];
        combo[self.inserted] = Rat::from_integer(1.into());
        for (row, rcombo, pivot) in &self.rows {
            if vec[*pivot].is_zero() {
                continue;
            }
            let f = vec[*pivot].clone();
            for j in 0..self.dim {
                let t = &row[j] * &f;
                vec[j] -= t;
            }
            for (j, rc) in rcombo.iter().enumerate() {
                let t = rc * &f;
                combo[j] -= t;
            }
        }
        let pivot = vec.iter().position(|x| !x.is_zero());
        self.inserted += 1;
        for c in self.rows.iter_mut() {
            c.1.resize(self.inserted, Rat::zero());
        }
        match pivot {
            Some(p) => {
                let inv = vec[p].recip();
                for x in vec.iter_mut() {
                    *x *= &inv;
                }
                for x in combo.iter_mut() {
                    *x *= &inv;
                }
                combo.resize(self.inserted, Rat::zero());
                self.rows.push((vec, combo, p));
                None
            }
            None => {
                // v - sum(previous contributions) = 0, so v = -(combo without last)
                let mut coeffs: Vec<Rat> = combo[..self.inserted - 1]
                    .iter()
                    .map(|c| -c.clone())
                    .collect();
                coeffs.truncate(self.inserted - 1);
                Some(coeffs)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        let ns = nullspace(&rows);
        assert_eq!(ns.len(), 1);
        for row in &rows {
            let dot: Rat = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_in_column_span() {
        let cols = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        let x = solve_columns(&cols, &v(&[2, 3, 5])).unwrap();
        assert_eq!(x, v(&[2, 3]));
        assert!(solve_columns(&cols, &v(&[1, 0, 0])).is_none());
    }

    #[test]
    fn span_solver_reports_dependencies() {
        let mut s = SpanSolver::new(3);
        assert!(s.insert(&v(&[1, 0, 0])).is_none());
        assert!(s.insert(&v(&[1, 1, 0])).is_none());
        let dep = s.insert(&v(&[3, 2, 0])).unwrap();
        // 3,2,0 = 1*(1,0,0) + 2*(1,1,0)
        assert_eq!(dep, v(&[1, 2]));
        assert_eq!(s.rank(), 2);
    }
}
