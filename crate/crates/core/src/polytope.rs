//! Lattice polytope combinatorics for point configurations: face lattices,
//! lattice points of faces, normalized volumes via placing triangulations,
//! Cayley embeddings, and regular subdivisions of weighted configurations.
//!
//! Everything is exact. Face enumeration is the simple exhaustive method
//! (candidate hyperplanes from point subsets) which is robust and fast at
//! the configuration sizes that occur here; subdivisions are computed by
//! rotating supporting hyperplanes across lower-hull ridges.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Int, Rat};
use crate::error::Error;
use crate::lattice::IntMatrix;
use crate::linalg::{self, SpanSolver};

/// A finite set of labelled integer points (the columns of a design matrix
/// with the homogenizing ones stripped).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    pub dim: usize,
    pub points: Vec<Vec<Int>>,
    /// Original column indices of the points.
    pub labels: Vec<usize>,
}

impl PointConfiguration {
    pub fn new(dim: usize, points: Vec<Vec<Int>>) -> Self {
        assert!(points.iter().all(|p| p.len() == dim));
        let labels = (0..points.len()).collect();
        PointConfiguration { dim, points, labels }
    }

    pub fn with_labels(dim: usize, points: Vec<Vec<Int>>, labels: Vec<usize>) -> Self {
        assert!(points.iter().all(|p| p.len() == dim));
        assert_eq!(points.len(), labels.len());
        let mut seen = BTreeSet::new();
        assert!(labels.iter().all(|l| seen.insert(*l)), "labels not distinct");
        PointConfiguration { dim, points, labels }
    }

    /// Strip the all-ones row of a design matrix and take the columns.
    pub fn from_design_matrix(a: &IntMatrix) -> Self {
        let dim = a.nrows().saturating_sub(1);
        let points = (0..a.ncols()).map(|j| a.col(j)[1..].to_vec()).collect();
        PointConfiguration::new(dim, points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Affine dimension of the configuration.
    pub fn affine_dim(&self) -> usize {
        affine_rank(&self.points, &(0..self.len()).collect::<Vec<_>>())
    }

    /// Restriction to a subset of the points, keeping their labels.
    pub fn sub_configuration(&self, members: &[usize]) -> PointConfiguration {
        PointConfiguration {
            dim: self.dim,
            points: members.iter().map(|&i| self.points[i].clone()).collect(),
            labels: members.iter().map(|&i| self.labels[i]).collect(),
        }
    }
}

/// A face of the convex hull, carried by a supporting functional: every
/// configuration point satisfies `<normal, p> >= offset` with equality
/// exactly on `members` (indices into the configuration's point list).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDescriptor {
    pub normal: Vec<Int>,
    pub offset: Int,
    pub members: Vec<usize>,
    pub dim: usize,
}

impl FaceDescriptor {
    pub fn is_full(&self) -> bool {
        self.normal.iter().all(|x| x.is_zero())
    }
}

fn affine_rank(points: &[Vec<Int>], members: &[usize]) -> usize {
    if members.is_empty() {
        return 0;
    }
    let dim = points[members[0]].len();
    if dim == 0 {
        return 0;
    }
    let mut solver = SpanSolver::new(dim);
    let base = &points[members[0]];
    let mut rank = 0;
    for &i in &members[1..] {
        let diff: Vec<Rat> = points[i]
            .iter()
            .zip(base)
            .map(|(a, b)| Rat::from_integer(a - b))
            .collect();
        if solver.insert(&diff).is_none() {
            rank += 1;
        }
    }
    rank
}

/// Rational coordinates of all points with respect to an affine basis of
/// their span: returns (affine dimension k, coordinate vectors in ℚ^k, the
/// ambient basis columns, base point index).
struct LocalCoords {
    k: usize,
    coords: Vec<Vec<Rat>>,
    basis: Vec<Vec<Int>>,
    base: usize,
}

fn local_coords(points: &[Vec<Int>]) -> LocalCoords {
    assert!(!points.is_empty());
    let dim = points[0].len();
    let base = 0usize;
    let mut solver = SpanSolver::new(dim);
    let mut basis: Vec<Vec<Int>> = Vec::new();
    for p in &points[1..] {
        let diff_int: Vec<Int> = p.iter().zip(&points[base]).map(|(a, b)| a - b).collect();
        let diff: Vec<Rat> = diff_int
            .iter()
            .map(|x| Rat::from_integer(x.clone()))
            .collect();
        if solver.insert(&diff).is_none() {
            basis.push(diff_int);
        }
    }
    let k = basis.len();
    let basis_rat: Vec<Vec<Rat>> = basis
        .iter()
        .map(|b| b.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let coords = points
        .iter()
        .map(|p| {
            let rhs: Vec<Rat> = p
                .iter()
                .zip(&points[base])
                .map(|(a, b)| Rat::from_integer(a - b))
                .collect();
            linalg::solve_columns(&basis_rat, &rhs).expect("point lies in affine span")
        })
        .collect();
    LocalCoords {
        k,
        coords,
        basis,
        base,
    }
}

fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // advance odometer
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Supporting hyperplanes of the convex hull of full-dimensional rational
/// points: returns (inward normal, offset, members) with `<n, x> >= offset`
/// for all points, equality exactly on members.
fn enumerate_facets_local(xs: &[Vec<Rat>], k: usize) -> Vec<(Vec<Rat>, Rat, Vec<usize>)> {
    let n = xs.len();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    for_each_combination(n, k, &mut |subset| {
        let diffs: Vec<Vec<Rat>> = subset[1..]
            .iter()
            .map(|&i| {
                xs[i]
                    .iter()
                    .zip(&xs[subset[0]])
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        let ns = if diffs.is_empty() {
            // k == 1: hyperplanes are points, normal spans the line
            vec![vec![Rat::one()]]
        } else {
            linalg::nullspace(&diffs)
        };
        if ns.len() != 1 {
            return; // degenerate subset or not a hyperplane spanner
        }
        let normal = &ns[0];
        let value = |i: usize| -> Rat {
            normal
                .iter()
                .zip(&xs[i])
                .map(|(a, b)| a * b)
                .sum()
        };
        let c = value(subset[0]);
        let mut above = false;
        let mut below = false;
        let mut vals = Vec::with_capacity(n);
        for i in 0..n {
            let v = value(i);
            if v > c {
                above = true;
            } else if v < c {
                below = true;
            }
            vals.push(v);
        }
        if above && below {
            return;
        }
        let (normal, c) = if below {
            (normal.iter().map(|x| -x).collect::<Vec<Rat>>(), -c)
        } else {
            (normal.clone(), c)
        };
        let members: Vec<usize> = (0..n)
            .filter(|&i| {
                if below {
                    -&vals[i] == c
                } else {
                    vals[i] == c
                }
            })
            .collect();
        if seen.insert(members.clone()) {
            out.push((normal, c, members));
        }
    });
    out
}

/// Lift a functional on the affine span back to an integer ambient
/// functional with the same values up to a positive scale.
fn ambient_functional(
    lc: &LocalCoords,
    points: &[Vec<Int>],
    local_normal: &[Rat],
    local_offset: &Rat,
) -> (Vec<Int>, Int) {
    // alpha = B mu with (B^T B) mu = local_normal
    let k = lc.k;
    let gram: Vec<Vec<Rat>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    lc.basis[i]
                        .iter()
                        .zip(&lc.basis[j])
                        .map(|(a, b)| Rat::from_integer(a * b))
                        .sum()
                })
                .collect()
        })
        .collect();
    let gram_cols: Vec<Vec<Rat>> = (0..k)
        .map(|j| (0..k).map(|i| gram[i][j].clone()).collect())
        .collect();
    let mu = linalg::solve_columns(&gram_cols, local_normal).expect("Gram matrix invertible");
    let dim = points[0].len();
    let alpha: Vec<Rat> = (0..dim)
        .map(|c| {
            (0..k)
                .map(|i| Rat::from_integer(lc.basis[i][c].clone()) * &mu[i])
                .sum()
        })
        .collect();
    let base_val: Rat = alpha
        .iter()
        .zip(&points[lc.base])
        .map(|(a, b)| a * Rat::from_integer(b.clone()))
        .sum();
    let beta = local_offset + base_val;

    // clear denominators, divide by common content
    let mut den_lcm = Int::one();
    for x in alpha.iter().chain(std::iter::once(&beta)) {
        den_lcm = den_lcm.lcm(x.denom());
    }
    let mut ints: Vec<Int> = alpha
        .iter()
        .map(|x| (x * Rat::from_integer(den_lcm.clone())).to_integer())
        .collect();
    let off = (&beta * Rat::from_integer(den_lcm.clone())).to_integer();
    let mut g = ints
        .iter()
        .fold(Int::zero(), |acc, x| acc.gcd(x));
    g = g.gcd(&off);
    if !g.is_zero() && !g.is_one() {
        for x in ints.iter_mut() {
            *x = x.clone() / &g;
        }
        return (ints, off / g);
    }
    (ints, off)
}

/// All nonempty proper faces plus the full polytope. Member lists contain
/// every configuration point lying on the face, not just vertices.
pub fn face_lattice(p: &PointConfiguration) -> Result<Vec<FaceDescriptor>, Error> {
    if p.is_empty() {
        return Err(Error::Invalid("empty configuration".into()));
    }
    let n = p.len();
    let all: Vec<usize> = (0..n).collect();
    let full = FaceDescriptor {
        normal: vec![Int::zero(); p.dim],
        offset: Int::zero(),
        members: all.clone(),
        dim: affine_rank(&p.points, &all),
    };
    if n == 1 {
        return Ok(vec![full]);
    }

    let lc = local_coords(&p.points);
    let facets_local = enumerate_facets_local(&lc.coords, lc.k);
    let facets: Vec<(Vec<Int>, Int, Vec<usize>)> = facets_local
        .iter()
        .map(|(nrm, off, members)| {
            let (an, ao) = ambient_functional(&lc, &p.points, nrm, off);
            (an, ao, members.clone())
        })
        .collect();

    // close the facet member sets under intersection
    let mut sets: BTreeSet<Vec<usize>> = facets.iter().map(|f| f.2.clone()).collect();
    let mut queue: Vec<Vec<usize>> = sets.iter().cloned().collect();
    while let Some(s) = queue.pop() {
        for f in &facets {
            let inter: Vec<usize> = s.iter().copied().filter(|i| f.2.contains(i)).collect();
            if !inter.is_empty() && inter != s && sets.insert(inter.clone()) {
                queue.push(inter);
            }
        }
    }

    let mut out = vec![full];
    for members in sets {
        let mut normal = vec![Int::zero(); p.dim];
        let mut offset = Int::zero();
        for (fnrm, foff, fmem) in &facets {
            if members.iter().all(|i| fmem.contains(i)) {
                for (a, b) in normal.iter_mut().zip(fnrm) {
                    *a += b;
                }
                offset += foff;
            }
        }
        let dim = affine_rank(&p.points, &members);
        out.push(FaceDescriptor {
            normal,
            offset,
            members,
            dim,
        });
    }
    out.sort_by(|a, b| (a.dim, &a.members).cmp(&(b.dim, &b.members)));
    Ok(out)
}

/// Check a face descriptor against the configuration and return the labels
/// of the configuration points on the face.
pub fn lattice_points_of_face(
    p: &PointConfiguration,
    f: &FaceDescriptor,
) -> Result<Vec<usize>, Error> {
    if f.normal.len() != p.dim {
        return Err(Error::FaceMismatch);
    }
    let mut tight = Vec::new();
    for (i, pt) in p.points.iter().enumerate() {
        let v: Int = f.normal.iter().zip(pt).map(|(a, b)| a * b).sum();
        if v < f.offset {
            return Err(Error::FaceMismatch);
        }
        if v == f.offset {
            tight.push(i);
        }
    }
    if tight != f.members {
        return Err(Error::FaceMismatch);
    }
    Ok(f.members.iter().map(|&i| p.labels[i]).collect())
}

/// Placing triangulation of a full-dimensional configuration: insert points
/// in the given order, coning each new point over the visible part of the
/// hull built so far. Returns simplices as sorted index sets of size dim+1.
pub fn placing_triangulation(
    p: &PointConfiguration,
    order: &[usize],
) -> Result<Vec<Vec<usize>>, Error> {
    let d = p.dim;
    if p.affine_dim() != d || d == 0 {
        return Err(Error::DegenerateConfiguration);
    }
    assert_eq!(order.len(), p.len());

    // greedy affinely independent seed simplex
    let mut solver = SpanSolver::new(d);
    let mut seed = vec![order[0]];
    let base = order[0];
    for &i in &order[1..] {
        if seed.len() == d + 1 {
            break;
        }
        let diff: Vec<Rat> = p.points[i]
            .iter()
            .zip(&p.points[base])
            .map(|(a, b)| Rat::from_integer(a - b))
            .collect();
        if solver.insert(&diff).is_none() {
            seed.push(i);
        }
    }
    debug_assert_eq!(seed.len(), d + 1);

    let facet_support = |facet: &[usize], apex: usize| -> (Vec<Int>, Int) {
        let diffs: Vec<Vec<Rat>> = facet[1..]
            .iter()
            .map(|&i| {
                p.points[i]
                    .iter()
                    .zip(&p.points[facet[0]])
                    .map(|(a, b)| Rat::from_integer(a - b))
                    .collect()
            })
            .collect();
        let ns = if diffs.is_empty() {
            vec![vec![Rat::one()]]
        } else {
            linalg::nullspace(&diffs)
        };
        debug_assert_eq!(ns.len(), 1);
        // primitive integer normal
        let mut den_lcm = Int::one();
        for x in &ns[0] {
            den_lcm = den_lcm.lcm(x.denom());
        }
        let mut normal: Vec<Int> = ns[0]
            .iter()
            .map(|x| (x * Rat::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let g = normal.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            for x in normal.iter_mut() {
                *x = x.clone() / &g;
            }
        }
        let offset: Int = normal
            .iter()
            .zip(&p.points[facet[0]])
            .map(|(a, b)| a * b)
            .sum();
        let apex_val: Int = normal
            .iter()
            .zip(&p.points[apex])
            .map(|(a, b)| a * b)
            .sum();
        debug_assert!(apex_val != offset);
        // outward orientation: apex strictly below the facet hyperplane
        if apex_val > offset {
            (normal.iter().map(|x| -x).collect(), -offset)
        } else {
            (normal, offset)
        }
    };

    let mut simplices: Vec<Vec<usize>> = Vec::new();
    let mut boundary: BTreeMap<Vec<usize>, (Vec<Int>, Int)> = BTreeMap::new();
    let add_simplex =
        |simplex: Vec<usize>,
         simplices: &mut Vec<Vec<usize>>,
         boundary: &mut BTreeMap<Vec<usize>, (Vec<Int>, Int)>| {
            for drop in 0..simplex.len() {
                let mut facet = simplex.clone();
                let apex = facet.remove(drop);
                if boundary.remove(&facet).is_none() {
                    let support = facet_support(&facet, apex);
                    boundary.insert(facet, support);
                }
            }
            simplices.push(simplex);
        };

    let mut first = seed.clone();
    first.sort_unstable();
    add_simplex(first, &mut simplices, &mut boundary);

    for &q in order.iter().filter(|i| !seed.contains(i)) {
        let visible: Vec<Vec<usize>> = boundary
            .iter()
            .filter(|(_, (normal, offset))| {
                let v: Int = normal
                    .iter()
                    .zip(&p.points[q])
                    .map(|(a, b)| a * b)
                    .sum();
                v > *offset
            })
            .map(|(facet, _)| facet.clone())
            .collect();
        for facet in visible {
            let mut simplex = facet.clone();
            simplex.push(q);
            simplex.sort_unstable();
            add_simplex(simplex, &mut simplices, &mut boundary);
        }
    }
    Ok(simplices)
}

/// d! times the Euclidean volume of the convex hull, as an exact integer.
pub fn normalized_volume(p: &PointConfiguration) -> Result<Int, Error> {
    let order: Vec<usize> = (0..p.len()).collect();
    let simplices = placing_triangulation(p, &order)?;
    let mut total = Int::zero();
    for s in &simplices {
        total += simplex_det(p, s).abs();
    }
    Ok(total)
}

fn simplex_det(p: &PointConfiguration, simplex: &[usize]) -> Int {
    let d = p.dim;
    let rows: Vec<Vec<Int>> = simplex[1..]
        .iter()
        .map(|&i| {
            p.points[i]
                .iter()
                .zip(&p.points[simplex[0]])
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    debug_assert_eq!(rows.len(), d);
    IntMatrix::from_int_rows(rows).determinant()
}

/// Cayley embedding: the i-th configuration is appended with the i-th unit
/// block coordinate. With `drop_last_block`, the final block coordinate is
/// omitted, which keeps a two-or-more-factor embedding full-dimensional.
pub fn cayley_configuration(
    ps: &[PointConfiguration],
    drop_last_block: bool,
) -> Result<PointConfiguration, Error> {
    if ps.is_empty() {
        return Err(Error::Invalid("no configurations given".into()));
    }
    let dim = ps[0].dim;
    if ps.iter().any(|p| p.dim != dim) {
        return Err(Error::DimensionMismatch);
    }
    let m = ps.len();
    let block = if drop_last_block { m - 1 } else { m };
    let mut points = Vec::new();
    for (i, p) in ps.iter().enumerate() {
        for pt in &p.points {
            let mut v = pt.clone();
            for b in 0..block {
                v.push(if b == i { Int::one() } else { Int::zero() });
            }
            points.push(v);
        }
    }
    Ok(PointConfiguration::new(dim + block, points))
}

/// A polyhedral subdivision of a weighted configuration. Each cell carries
/// the affine support `(alpha, beta)` certifying it: `<alpha, p_i> + beta
/// <= w_i` for every point, with equality exactly on the cell.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub cells: Vec<Vec<usize>>,
    pub supports: Vec<(Vec<Rat>, Rat)>,
}

/// Regular subdivision induced by lifting point i to height w[i] and
/// projecting the lower hull back down.
pub fn regular_subdivision(p: &PointConfiguration, w: &[Rat]) -> Result<Subdivision, Error> {
    let n = p.len();
    if w.len() != n {
        return Err(Error::WeightLengthMismatch {
            expected: n,
            got: w.len(),
        });
    }
    if n == 0 {
        return Err(Error::Invalid("empty configuration".into()));
    }
    if n == 1 {
        return Ok(Subdivision {
            cells: vec![vec![0]],
            supports: vec![(vec![Rat::zero(); p.dim], w[0].clone())],
        });
    }

    let lc = local_coords(&p.points);
    let k = lc.k;
    let xs = &lc.coords;

    let height = |alpha: &[Rat], beta: &Rat, i: usize| -> Rat {
        alpha.iter().zip(&xs[i]).map(|(a, b)| a * b).sum::<Rat>() + beta
    };
    let tight_set = |alpha: &[Rat], beta: &Rat| -> Vec<usize> {
        (0..n).filter(|&i| height(alpha, beta, i) == w[i]).collect()
    };

    // Rotate a supporting functional in the positive direction of a wall
    // (gamma, delta) that vanishes on the current tight span, until new
    // points become tight. False when that direction is unbounded.
    let rotate_pos = |alpha: &mut Vec<Rat>, beta: &mut Rat, gamma: &[Rat], delta: &Rat| -> bool {
        let mut bound: Option<Rat> = None;
        for i in 0..n {
            let g: Rat =
                gamma.iter().zip(&xs[i]).map(|(a, b)| a * b).sum::<Rat>() + delta;
            if g > Rat::zero() {
                let slack = &w[i] - height(alpha, beta, i);
                let ratio = &slack / &g;
                if bound.as_ref().map_or(true, |b| &ratio < b) {
                    bound = Some(ratio);
                }
            }
        }
        let Some(s) = bound else {
            return false;
        };
        for (a, g) in alpha.iter_mut().zip(gamma) {
            *a += &s * g;
        }
        *beta += &s * delta;
        true
    };

    // initial lower facet: start flat at the minimum weight and rotate up
    let mut alpha = vec![Rat::zero(); k];
    let mut beta = w.iter().min().expect("nonempty").clone();
    loop {
        let tight = tight_set(&alpha, &beta);
        if affine_rank_local(xs, &tight) == k {
            break;
        }
        let (gamma, delta) = wall_functional(xs, k, &tight);
        if !rotate_pos(&mut alpha, &mut beta, &gamma, &delta) {
            let neg_gamma: Vec<Rat> = gamma.iter().map(|x| -x).collect();
            let moved = rotate_pos(&mut alpha, &mut beta, &neg_gamma, &-delta);
            debug_assert!(moved, "configuration spans, some direction is bounded");
        }
    }

    // walk the lower hull cell-to-cell across ridges
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut cells: Vec<(Vec<usize>, Vec<Rat>, Rat)> = Vec::new();
    let first = tight_set(&alpha, &beta);
    seen.insert(first.clone());
    let mut queue = vec![(first, alpha, beta)];
    while let Some((members, alpha, beta)) = queue.pop() {
        let cell_coords: Vec<Vec<Rat>> = members.iter().map(|&i| xs[i].clone()).collect();
        for (rn, roff, _ridge) in enumerate_facets_local(&cell_coords, k) {
            // wall leaving the cell through this ridge: the cell satisfies
            // <rn, x> >= roff with equality on the ridge, so its negation
            // vanishes on the ridge and is negative on the rest of the cell
            let gamma: Vec<Rat> = rn.iter().map(|x| -x).collect();
            let delta = roff.clone();
            let mut a2 = alpha.clone();
            let mut b2 = beta.clone();
            if !rotate_pos(&mut a2, &mut b2, &gamma, &delta) {
                continue; // boundary ridge of the configuration
            }
            let next = tight_set(&a2, &b2);
            if seen.insert(next.clone()) {
                queue.push((next, a2, b2));
            }
        }
        cells.push((members, alpha, beta));
    }

    cells.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out_cells = Vec::with_capacity(cells.len());
    let mut supports = Vec::with_capacity(cells.len());
    for (members, alpha, beta) in cells {
        let (aa, ab) = ambient_support(&lc, &p.points, &alpha, &beta);
        out_cells.push(members);
        supports.push((aa, ab));
    }
    Ok(Subdivision {
        cells: out_cells,
        supports,
    })
}

fn affine_rank_local(xs: &[Vec<Rat>], members: &[usize]) -> usize {
    if members.is_empty() {
        return 0;
    }
    let k = xs[members[0]].len();
    if k == 0 {
        return 0;
    }
    let mut solver = SpanSolver::new(k);
    let mut rank = 0;
    for &i in &members[1..] {
        let diff: Vec<Rat> = xs[i]
            .iter()
            .zip(&xs[members[0]])
            .map(|(a, b)| a - b)
            .collect();
        if solver.insert(&diff).is_none() {
            rank += 1;
        }
    }
    rank
}

/// A nonzero affine functional vanishing on the affine span of `tight`.
fn wall_functional(xs: &[Vec<Rat>], k: usize, tight: &[usize]) -> (Vec<Rat>, Rat) {
    assert!(!tight.is_empty());
    let diffs: Vec<Vec<Rat>> = tight[1..]
        .iter()
        .map(|&i| {
            xs[i]
                .iter()
                .zip(&xs[tight[0]])
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    let ns = if diffs.is_empty() {
        (0..k)
            .map(|i| {
                let mut v = vec![Rat::zero(); k];
                v[i] = Rat::one();
                v
            })
            .collect::<Vec<_>>()
    } else {
        linalg::nullspace(&diffs)
    };
    let gamma = ns.into_iter().next().expect("tight span is proper");
    let delta = -gamma
        .iter()
        .zip(&xs[tight[0]])
        .map(|(a, b)| a * b)
        .sum::<Rat>();
    (gamma, delta)
}

/// Rational ambient support with the same values as the local one.
fn ambient_support(
    lc: &LocalCoords,
    points: &[Vec<Int>],
    alpha_local: &[Rat],
    beta_local: &Rat,
) -> (Vec<Rat>, Rat) {
    let k = lc.k;
    if k == 0 {
        return (vec![Rat::zero(); points[0].len()], beta_local.clone());
    }
    let gram_cols: Vec<Vec<Rat>> = (0..k)
        .map(|j| {
            (0..k)
                .map(|i| {
                    lc.basis[i]
                        .iter()
                        .zip(&lc.basis[j])
                        .map(|(a, b)| Rat::from_integer(a * b))
                        .sum()
                })
                .collect()
        })
        .collect();
    let mu = linalg::solve_columns(&gram_cols, alpha_local).expect("Gram matrix invertible");
    let dim = points[0].len();
    let alpha: Vec<Rat> = (0..dim)
        .map(|c| {
            (0..k)
                .map(|i| Rat::from_integer(lc.basis[i][c].clone()) * &mu[i])
                .sum()
        })
        .collect();
    let base_val: Rat = alpha
        .iter()
        .zip(&points[lc.base])
        .map(|(a, b)| a * Rat::from_integer(b.clone()))
        .sum();
    (alpha, beta_local - base_val)
}

/// True when every cell is a simplex.
pub fn is_triangulation(s: &Subdivision, p: &PointConfiguration) -> bool {
    s.cells
        .iter()
        .all(|c| c.len() == affine_rank(&p.points, c) + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use crate::rng::Rng;

    fn cube_points(dilation: i64, dim: usize) -> Vec<Vec<Int>> {
        let mut points = vec![vec![]];
        for _ in 0..dim {
            let mut next = Vec::new();
            for p in &points {
                for v in 0..=dilation {
                    let mut q: Vec<Int> = p.clone();
                    q.push(Int::from(v));
                    next.push(q);
                }
            }
            points = next;
        }
        points
    }

    #[test]
    fn cube_face_counts() {
        let p = PointConfiguration::new(3, cube_points(2, 3));
        assert_eq!(p.len(), 27);
        let faces = face_lattice(&p).unwrap();
        let count = |d: usize| faces.iter().filter(|f| f.dim == d && !f.is_full()).count();
        assert_eq!(count(0), 8);
        assert_eq!(count(1), 12);
        assert_eq!(count(2), 6);
        assert_eq!(faces.len(), 8 + 12 + 6 + 1);
        // facets of the dilated cube contain 9 lattice points each
        for f in faces.iter().filter(|f| f.dim == 2 && !f.is_full()) {
            assert_eq!(f.members.len(), 9);
            assert_eq!(lattice_points_of_face(&p, f).unwrap().len(), 9);
        }
        for f in faces.iter().filter(|f| f.dim == 1) {
            assert_eq!(f.members.len(), 3);
        }
    }

    #[test]
    fn segment_faces() {
        let p = PointConfiguration::new(1, vec![vec![Int::from(0)], vec![Int::from(1)]]);
        let faces = face_lattice(&p).unwrap();
        assert_eq!(faces.len(), 3);
        assert_eq!(faces.iter().filter(|f| f.dim == 0).count(), 2);
    }

    #[test]
    fn face_support_is_tight_exactly_on_members() {
        let p = PointConfiguration::new(3, cube_points(2, 3));
        for f in face_lattice(&p).unwrap() {
            let tight: Vec<usize> = (0..p.len())
                .filter(|&i| {
                    let v: Int = f.normal.iter().zip(&p.points[i]).map(|(a, b)| a * b).sum();
                    assert!(v >= f.offset);
                    v == f.offset
                })
                .collect();
            assert_eq!(tight, f.members);
        }
    }

    #[test]
    fn cube_volume_is_48() {
        let p = PointConfiguration::new(3, cube_points(2, 3));
        assert_eq!(normalized_volume(&p).unwrap(), Int::from(48));
    }

    #[test]
    fn segment_volume_is_one() {
        let p = PointConfiguration::new(1, vec![vec![Int::from(0)], vec![Int::from(1)]]);
        assert_eq!(normalized_volume(&p).unwrap(), Int::from(1));
    }

    #[test]
    fn volume_independent_of_insertion_order() {
        let p = PointConfiguration::new(2, cube_points(2, 2));
        let mut rng = Rng::new(5);
        for _ in 0..5 {
            let mut order: Vec<usize> = (0..p.len()).collect();
            // Fisher-Yates
            for i in (1..order.len()).rev() {
                let j = rng.int_in(0, i as i64) as usize;
                order.swap(i, j);
            }
            let tri = placing_triangulation(&p, &order).unwrap();
            let total: Int = tri.iter().map(|s| simplex_det(&p, s).abs()).sum();
            assert_eq!(total, Int::from(8));
        }
    }

    #[test]
    fn degenerate_configuration_is_an_error() {
        let p = PointConfiguration::new(
            2,
            vec![
                vec![Int::from(0), Int::from(0)],
                vec![Int::from(1), Int::from(1)],
                vec![Int::from(2), Int::from(2)],
            ],
        );
        assert!(matches!(
            normalized_volume(&p),
            Err(Error::DegenerateConfiguration)
        ));
    }

    #[test]
    fn cayley_of_two_segments_is_a_square() {
        let seg = PointConfiguration::new(1, vec![vec![Int::from(0)], vec![Int::from(1)]]);
        let c = cayley_configuration(&[seg.clone(), seg.clone()], true).unwrap();
        assert_eq!(c.dim, 2);
        assert_eq!(c.len(), 4);
        assert_eq!(normalized_volume(&c).unwrap(), Int::from(2));
        let keep = cayley_configuration(&[seg], false).unwrap();
        assert_eq!(keep.dim, 2);
        assert!(keep.points.iter().all(|p| p[1].is_one()));
    }

    #[test]
    fn square_subdivision_with_one_lifted_vertex() {
        let p = PointConfiguration::new(
            2,
            vec![
                vec![Int::from(0), Int::from(0)],
                vec![Int::from(1), Int::from(0)],
                vec![Int::from(0), Int::from(1)],
                vec![Int::from(1), Int::from(1)],
            ],
        );
        let w = vec![rat(0), rat(0), rat(0), rat(1)];
        let s = regular_subdivision(&p, &w).unwrap();
        assert_eq!(s.cells, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert!(is_triangulation(&s, &p));

        let flat = regular_subdivision(&p, &vec![rat(0); 4]).unwrap();
        assert_eq!(flat.cells, vec![vec![0, 1, 2, 3]]);
        assert!(!is_triangulation(&flat, &p));
    }

    #[test]
    fn subdivision_supports_certify_cells() {
        let p = PointConfiguration::new(2, cube_points(2, 2));
        let mut rng = Rng::new(11);
        let w: Vec<Rat> = (0..p.len()).map(|_| ratio(rng.int_in(1, 1000), 7)).collect();
        let s = regular_subdivision(&p, &w).unwrap();
        // generic weights triangulate
        assert!(is_triangulation(&s, &p));
        // supports are global certificates
        for (cell, (alpha, beta)) in s.cells.iter().zip(&s.supports) {
            for i in 0..p.len() {
                let h: Rat = alpha
                    .iter()
                    .zip(&p.points[i])
                    .map(|(a, b)| a * Rat::from_integer(b.clone()))
                    .sum::<Rat>()
                    + beta.clone();
                if cell.contains(&i) {
                    assert_eq!(h, w[i]);
                } else {
                    assert!(h <= w[i]);
                }
            }
        }
        // cells cover the hull: volumes add up
        let total: Int = s
            .cells
            .iter()
            .map(|c| {
                normalized_volume(&p.sub_configuration(c)).unwrap()
            })
            .sum();
        assert_eq!(total, Int::from(8));
    }

    #[test]
    fn weight_length_is_checked() {
        let p = PointConfiguration::new(1, vec![vec![Int::from(0)], vec![Int::from(1)]]);
        assert!(matches!(
            regular_subdivision(&p, &[rat(1)]),
            Err(Error::WeightLengthMismatch { .. })
        ));
    }
}
