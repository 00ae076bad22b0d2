//! Exact integer matrix algebra over the lattice: Smith and Hermite normal
//! forms, determinants, unimodular completions of primitive vectors, the
//! standing-assumption checks on design matrices, and the affine unimodular
//! change of coordinates that moves a facet into the last coordinate
//! hyperplane.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Int, Rat};
use crate::error::Error;
use crate::linalg;
use crate::polytope::FaceDescriptor;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Int>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        IntMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows.iter().flatten().map(|&x| Int::from(x)).collect(),
        }
    }

    pub fn from_int_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut m = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * rhs.get(k, j);
                    m.set(i, j, m.get(i, j) + t);
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn rat_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| Rat::from_integer(x.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.rat_rows())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m: Vec<Vec<Int>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = &t / &prev;
                }
                m[i][k] = Int::zero();
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    /// Inverse of a matrix with determinant ±1; Err otherwise.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix, Error> {
        if !self.is_unimodular() {
            return Err(Error::Invalid("matrix is not unimodular".into()));
        }
        let n = self.rows;
        // rational Gauss-Jordan; entries of the inverse are integers
        let mut aug: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rat> = self
                    .row(i)
                    .iter()
                    .map(|x| Rat::from_integer(x.clone()))
                    .collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                }));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&i| !aug[i][c].is_zero())
                .expect("unimodular matrix is invertible");
            aug.swap(c, p);
            let inv = aug[c][c].recip();
            for x in aug[c].iter_mut() {
                *x *= &inv;
            }
            for i in 0..n {
                if i != c && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    for j in 0..2 * n {
                        let t = &aug[c][j] * &f;
                        aug[i][j] -= t;
                    }
                }
            }
        }
        let mut out = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &aug[i][n + j];
                debug_assert!(v.denom().is_one());
                out.set(i, j, v.numer().clone());
            }
        }
        Ok(out)
    }

    /// Canonical Hermite normal form of the row lattice: row echelon with
    /// positive pivots and entries above each pivot reduced into [0, pivot).
    /// Zero rows are dropped.
    pub fn hnf_rows(&self) -> IntMatrix {
        let mut m: Vec<Vec<Int>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            loop {
                let nz: Vec<usize> = (pivot_row..m.len())
                    .filter(|&i| !m[i][col].is_zero())
                    .collect();
                match nz.len() {
                    0 => break,
                    1 => {
                        m.swap(pivot_row, nz[0]);
                        break;
                    }
                    _ => {
                        let best = *nz
                            .iter()
                            .min_by_key(|&&i| m[i][col].abs())
                            .expect("nonempty");
                        m.swap(pivot_row, best);
                        for i in pivot_row + 1..m.len() {
                            if !m[i][col].is_zero() {
                                let q = m[i][col].div_floor(&m[pivot_row][col]);
                                for j in 0..self.cols {
                                    let t = &m[pivot_row][j] * &q;
                                    m[i][j] -= t;
                                }
                            }
                        }
                    }
                }
            }
            if pivot_row < m.len() && !m[pivot_row][col].is_zero() {
                if m[pivot_row][col].is_negative() {
                    for x in m[pivot_row].iter_mut() {
                        *x = -x.clone();
                    }
                }
                for i in 0..pivot_row {
                    let q = m[i][col].div_floor(&m[pivot_row][col]);
                    if !q.is_zero() {
                        for j in 0..self.cols {
                            let t = &m[pivot_row][j] * &q;
                            m[i][j] -= t;
                        }
                    }
                }
                pivot_row += 1;
                if pivot_row == m.len() {
                    break;
                }
            }
        }
        m.truncate(pivot_row);
        IntMatrix::from_int_rows(m)
    }

    /// Smith normal form: U * M * V = D with D diagonal, d1 | d2 | ... and
    /// U, V unimodular. Pivots are chosen as the smallest nonzero entry of
    /// the remaining submatrix, which keeps intermediate growth modest.
    pub fn smith_normal_form(&self) -> Snf {
        let (r, c) = (self.rows, self.cols);
        let mut d: Vec<Vec<Int>> = (0..r).map(|i| self.row(i).to_vec()).collect();
        let mut u: Vec<Vec<Int>> = identity_rows(r);
        let mut v: Vec<Vec<Int>> = identity_rows(c);

        let mut k = 0;
        'stage: while k < r.min(c) {
            // smallest nonzero entry of the trailing submatrix
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..r {
                for j in k..c {
                    if !d[i][j].is_zero()
                        && pivot.map_or(true, |(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break; // trailing submatrix is zero
            };
            if pi != k {
                d.swap(k, pi);
                u.swap(k, pi);
            }
            if pj != k {
                swap_cols(&mut d, k, pj);
                swap_cols(&mut v, k, pj);
            }

            let mut clean = true;
            for i in k + 1..r {
                if !d[i][k].is_zero() {
                    let q = &d[i][k] / &d[k][k];
                    row_sub(&mut d, i, k, &q);
                    row_sub(&mut u, i, k, &q);
                    if !d[i][k].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in k + 1..c {
                if !d[k][j].is_zero() {
                    let q = &d[k][j] / &d[k][k];
                    col_sub(&mut d, j, k, &q);
                    col_sub(&mut v, j, k, &q);
                    if !d[k][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue 'stage; // remainders are smaller; re-pick pivot
            }

            // enforce divisibility of the trailing block by the pivot
            for i in k + 1..r {
                for j in k + 1..c {
                    if !(&d[i][j] % &d[k][k]).is_zero() {
                        row_add(&mut d, k, i);
                        row_add(&mut u, k, i);
                        continue 'stage;
                    }
                }
            }

            if d[k][k].is_negative() {
                row_neg(&mut d, k);
                row_neg(&mut u, k);
            }
            k += 1;
        }

        Snf {
            d: IntMatrix::from_int_rows(d),
            u: IntMatrix::from_int_rows(u),
            v: IntMatrix::from_int_rows(v),
        }
    }

    /// Nonzero diagonal entries of the Smith normal form.
    pub fn elementary_divisors(&self) -> Vec<Int> {
        let snf = self.smith_normal_form();
        (0..self.rows.min(self.cols))
            .map(|i| snf.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

fn identity_rows(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect()
}

fn swap_cols(m: &mut [Vec<Int>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row_i -= q * row_k
fn row_sub(m: &mut [Vec<Int>], i: usize, k: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    let krow = m[k].clone();
    for (x, y) in m[i].iter_mut().zip(krow.iter()) {
        *x -= q * y;
    }
}

/// col_j -= q * col_k
fn col_sub(m: &mut [Vec<Int>], j: usize, k: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let t = q * &row[k];
        row[j] -= t;
    }
}

/// row_k += row_i
fn row_add(m: &mut [Vec<Int>], k: usize, i: usize) {
    let irow = m[i].clone();
    for (x, y) in m[k].iter_mut().zip(irow.iter()) {
        *x += y;
    }
}

fn row_neg(m: &mut [Vec<Int>], k: usize) {
    for x in m[k].iter_mut() {
        *x = -x.clone();
    }
}

/// Result of a Smith normal form computation: `u * m * v = d`.
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

/// Extend a primitive integer vector to a unimodular matrix having it as its
/// first or last row. The construction is deterministic and returns the
/// identity when the vector already is the corresponding unit vector.
pub fn complete_unimodular(v: &[Int], place_last: bool) -> IntMatrix {
    let d = v.len();
    assert!(d > 0);
    let target = if place_last { d - 1 } else { 0 };
    let mut w = v.to_vec();
    let mut m = identity_rows(d); // tracks V^{-1}; ends with row `target` = v

    for i in 0..d {
        if i == target {
            continue;
        }
        while !w[i].is_zero() {
            if w[target].is_zero() {
                w.swap(i, target);
                m.swap(i, target);
                continue;
            }
            let q = &w[i] / &w[target];
            // column op col_i -= q*col_target; inverse row op on m
            w[i] = &w[i] - &q * &w[target];
            row_sub_add(&mut m, target, i, &q);
            if !w[i].is_zero() {
                w.swap(i, target);
                m.swap(i, target);
            }
        }
    }
    if w[target].is_negative() {
        row_neg(&mut m, target);
        w[target] = -w[target].clone();
    }
    assert!(w[target].is_one(), "vector is not primitive");
    debug_assert_eq!(m[target], v.to_vec());
    IntMatrix::from_int_rows(m)
}

/// row_k += q * row_i
fn row_sub_add(m: &mut [Vec<Int>], k: usize, i: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    let irow = m[i].clone();
    for (x, y) in m[k].iter_mut().zip(irow.iter()) {
        *x += q * y;
    }
}

/// Outcome of the standing-assumption checks on a design matrix. Failures
/// are reported, not raised.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub first_row_ones: bool,
    pub full_rank: bool,
    pub lattice_index_one: bool,
    /// Index of the affine column lattice in the ambient lattice, when the
    /// differences have full rank.
    pub lattice_index: Option<Int>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.first_row_ones && self.full_rank && self.lattice_index_one
    }
}

/// Check the standing assumptions: all-ones first row, full row rank, and
/// the affine lattice spanned by the columns equal to the full lattice.
pub fn validate_design_matrix(a: &IntMatrix) -> ValidationReport {
    let first_row_ones = a.nrows() > 0 && a.row(0).iter().all(|x| x.is_one());
    let full_rank = a.nrows() > 0 && a.rank() == a.nrows();
    let d = a.nrows().saturating_sub(1);

    // affine lattice: differences of columns against the first column
    let (lattice_index_one, lattice_index) = if a.ncols() == 0 {
        (false, None)
    } else if d == 0 {
        (true, Some(Int::one()))
    } else if a.ncols() == 1 {
        (false, None)
    } else {
        let c0 = a.col(0);
        let diff_rows: Vec<Vec<Int>> = (1..a.ncols())
            .map(|j| {
                a.col(j)
                    .iter()
                    .zip(&c0)
                    .map(|(x, y)| x - y)
                    .collect()
            })
            .collect();
        let diffs = IntMatrix::from_int_rows(diff_rows);
        let divisors = diffs.elementary_divisors();
        if divisors.len() == d {
            let index: Int = divisors.iter().product();
            (index.is_one(), Some(index))
        } else {
            (false, None)
        }
    };

    ValidationReport {
        first_row_ones,
        full_rank,
        lattice_index_one,
        lattice_index,
    }
}

/// An affine map x -> Ux + v with U unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularAffineMap {
    pub linear: IntMatrix,
    pub translation: Vec<Int>,
}

impl UnimodularAffineMap {
    pub fn identity(d: usize) -> Self {
        UnimodularAffineMap {
            linear: IntMatrix::identity(d),
            translation: vec![Int::zero(); d],
        }
    }

    pub fn apply(&self, p: &[Int]) -> Vec<Int> {
        self.linear
            .mul_vec(p)
            .iter()
            .zip(&self.translation)
            .map(|(x, t)| x + t)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.linear == IntMatrix::identity(self.linear.nrows())
            && self.translation.iter().all(|t| t.is_zero())
    }
}

/// Affine unimodular change of coordinates moving a facet of the point
/// configuration of `a` into the hyperplane where the last coordinate is
/// zero, with every column mapped into the nonnegative orthant. The ML
/// degree of the model is invariant under the returned map.
pub fn facet_normalization(
    a: &IntMatrix,
    face: &FaceDescriptor,
) -> Result<UnimodularAffineMap, Error> {
    let d = a.nrows().saturating_sub(1);
    if d == 0 || face.dim + 1 != d {
        return Err(Error::NotAFacet);
    }
    let points: Vec<Vec<Int>> = (0..a.ncols())
        .map(|j| a.col(j)[1..].to_vec())
        .collect();
    if face.normal.len() != d {
        return Err(Error::FaceMismatch);
    }

    // primitive inward normal of the facet
    let g = face
        .normal
        .iter()
        .fold(Int::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::FaceMismatch);
    }
    let normal: Vec<Int> = face.normal.iter().map(|x| x / &g).collect();

    // supporting value and tightness must match the declared members
    let values: Vec<Int> = points
        .iter()
        .map(|p| normal.iter().zip(p).map(|(n, x)| n * x).sum())
        .collect();
    let offset = values.iter().min().cloned().expect("nonempty");
    let tight: Vec<usize> = (0..points.len())
        .filter(|&j| values[j] == offset)
        .collect();
    if tight != face.members {
        return Err(Error::FaceMismatch);
    }

    let linear = complete_unimodular(&normal, true);
    let images: Vec<Vec<Int>> = points.iter().map(|p| linear.mul_vec(p)).collect();
    let translation: Vec<Int> = (0..d)
        .map(|i| {
            let min = images.iter().map(|p| p[i].clone()).min().expect("nonempty");
            -min
        })
        .collect();

    Ok(UnimodularAffineMap {
        linear,
        translation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    fn diag(entries: &[i64]) -> IntMatrix {
        let n = entries.len();
        let mut m = IntMatrix::zero(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, Int::from(e));
        }
        m
    }

    #[test]
    fn snf_identity_is_identity() {
        let m = IntMatrix::identity(3);
        let snf = m.smith_normal_form();
        assert_eq!(snf.d, IntMatrix::identity(3));
        assert_eq!(snf.u, IntMatrix::identity(3));
        assert_eq!(snf.v, IntMatrix::identity(3));
    }

    #[test]
    fn snf_fixes_divisibility() {
        let snf = diag(&[2, 3]).smith_normal_form();
        assert_eq!(snf.d, diag(&[1, 6]));
        let snf = diag(&[2, 4]).smith_normal_form();
        assert_eq!(snf.d, diag(&[2, 4]));
    }

    #[test]
    fn snf_round_trip_randomized() {
        let mut rng = Rng::new(2024);
        for _ in 0..40 {
            let r = rng.int_in(1, 8) as usize;
            let c = rng.int_in(1, 16) as usize;
            let mut m = IntMatrix::zero(r, c);
            for i in 0..r {
                for j in 0..c {
                    m.set(i, j, Int::from(rng.int_in(-5, 5)));
                }
            }
            let snf = m.smith_normal_form();
            assert!(snf.u.is_unimodular());
            assert!(snf.v.is_unimodular());
            assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
            // diagonal, nonnegative, divisibility chain
            let k = r.min(c);
            for i in 0..r {
                for j in 0..c {
                    if i != j {
                        assert!(snf.d.get(i, j).is_zero());
                    }
                }
            }
            for i in 0..k.saturating_sub(1) {
                let a = snf.d.get(i, i);
                let b = snf.d.get(i + 1, i + 1);
                assert!(!a.is_negative() && !b.is_negative());
                if !a.is_zero() {
                    assert!((b % a).is_zero());
                } else {
                    assert!(b.is_zero());
                }
            }
        }
    }

    #[test]
    fn hnf_is_canonical_basis() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let h = m.hnf_rows();
        let h2 = h.hnf_rows();
        assert_eq!(h, h2);
        // same row lattice: each is integrally expressible in the other
        assert_eq!(m.rank(), h.nrows());
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = IntMatrix::from_rows(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]);
        // 2*(3-2) - 0 + 1*(1-3) = 0
        assert_eq!(m.determinant(), Int::zero());
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(m.determinant(), Int::one());
    }

    #[test]
    fn unimodular_completion_places_vector() {
        let v: Vec<Int> = vec![Int::from(0), Int::from(0), Int::from(1)];
        let u = complete_unimodular(&v, true);
        assert_eq!(u, IntMatrix::identity(3));

        let v: Vec<Int> = vec![Int::from(0), Int::from(0), Int::from(-1)];
        let u = complete_unimodular(&v, true);
        assert!(u.is_unimodular());
        assert_eq!(u.row(2), &v[..]);

        let mut rng = Rng::new(7);
        for _ in 0..30 {
            let d = rng.int_in(1, 6) as usize;
            let mut v: Vec<Int> = (0..d).map(|_| Int::from(rng.int_in(-9, 9))).collect();
            let g = v.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
            if g.is_zero() {
                v[0] = Int::one();
            } else if !g.is_one() {
                for x in v.iter_mut() {
                    *x = x.clone() / &g;
                }
            }
            for &last in &[true, false] {
                let u = complete_unimodular(&v, last);
                assert!(u.is_unimodular());
                let row = if last { u.row(d - 1) } else { u.row(0) };
                assert_eq!(row, &v[..]);
            }
        }
    }

    #[test]
    fn validation_checks_lattice_index() {
        let ok = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        let rep = validate_design_matrix(&ok);
        assert!(rep.all_pass());
        assert_eq!(rep.lattice_index, Some(Int::one()));

        let bad = IntMatrix::from_rows(&[vec![1, 1], vec![0, 2]]);
        let rep = validate_design_matrix(&bad);
        assert!(rep.first_row_ones && rep.full_rank);
        assert!(!rep.lattice_index_one);
        assert_eq!(rep.lattice_index, Some(Int::from(2)));
    }

    #[test]
    fn inverse_of_unimodular_is_integral() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![1, 3]]);
        let inv = m.inverse_unimodular().unwrap();
        assert_eq!(m.mul(&inv), IntMatrix::identity(2));
    }
}
